//! Internal equivalence of 0-cells and external equivalence of j-functors
//! for finite, strict j-categories with `j <= 2`.
//!
//! A j-category is stored recursively: a 0-category is a finite set, and a
//! j-category has objects, a hom (j-1)-category for every ordered pair of
//! objects, identity 1-cells and a composition of 1-cells. Composition is a
//! closure so that large universes need not materialize composition tables.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::category::FiniteCategory;
use crate::report::{EquivalenceReport, ValidationReport};

/// `compose(x, y, z, g, f)` is `g ∘ f` for `f` in `hom(x, y)` and `g` in
/// `hom(y, z)`, as an index into `hom(x, z)`.
pub type ComposeFn = Arc<dyn Fn(usize, usize, usize, usize, usize) -> usize + Send + Sync>;

#[derive(Clone)]
pub struct FiniteJCategory {
    dim: usize,
    labels: Vec<Value>,
    homs: Vec<Vec<FiniteJCategory>>,
    identities: Vec<usize>,
    compose: Option<ComposeFn>,
}

impl std::fmt::Debug for FiniteJCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteJCategory")
            .field("dim", &self.dim)
            .field("objects", &self.labels.len())
            .finish()
    }
}

impl FiniteJCategory {
    /// A 0-category: a finite set of labelled elements.
    pub fn set(labels: Vec<Value>) -> Self {
        Self {
            dim: 0,
            labels,
            homs: Vec::new(),
            identities: Vec::new(),
            compose: None,
        }
    }

    /// A j-category for `j >= 1`. Every hom must have dimension `dim - 1`.
    pub fn new(
        dim: usize,
        labels: Vec<Value>,
        homs: Vec<Vec<FiniteJCategory>>,
        identities: Vec<usize>,
        compose: ComposeFn,
    ) -> Self {
        assert!(dim >= 1, "use FiniteJCategory::set for dimension 0");
        let n = labels.len();
        assert_eq!(homs.len(), n, "one row of homs per object");
        assert!(homs.iter().all(|row| row.len() == n), "homs must be square");
        assert!(
            homs.iter().flatten().all(|h| h.dim == dim - 1),
            "hom dimension mismatch"
        );
        assert_eq!(identities.len(), n, "one identity per object");
        Self {
            dim,
            labels,
            homs,
            identities,
            compose: Some(compose),
        }
    }

    /// The discrete j-category on a set: only identity cells in every
    /// dimension.
    pub fn discrete(dim: usize, labels: Vec<Value>) -> Self {
        if dim == 0 {
            return Self::set(labels);
        }
        let n = labels.len();
        let homs = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let cells = if x == y {
                            vec![json!({"id": labels[x].clone()})]
                        } else {
                            vec![]
                        };
                        Self::discrete(dim - 1, cells)
                    })
                    .collect()
            })
            .collect();
        Self::new(dim, labels, homs, vec![0; n], Arc::new(|_, _, _, _, _| 0))
    }

    /// A finite category viewed as a 1-category.
    pub fn from_category(c: &FiniteCategory) -> Self {
        let n = c.object_count();
        let homs_idx: Vec<Vec<Vec<usize>>> = (0..n).map(|x| (0..n).map(|y| c.hom(x, y)).collect()).collect();
        let homs = homs_idx
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| Self::set(h.iter().map(|&f| json!(f)).collect()))
                    .collect()
            })
            .collect();
        let identities = (0..n)
            .map(|x| {
                homs_idx[x][x]
                    .iter()
                    .position(|&f| f == c.identity(x))
                    .expect("identity in hom")
            })
            .collect();
        let cat = c.clone();
        let idx = homs_idx.clone();
        let compose: ComposeFn = Arc::new(move |x, y, z, g, f| {
            let h = cat.compose(idx[y][z][g], idx[x][y][f]).expect("composable");
            idx[x][z].iter().position(|&k| k == h).expect("composite in hom")
        });
        Self::new(1, (0..n).map(|x| json!(x)).collect(), homs, identities, compose)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn object_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &Value {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[Value] {
        &self.labels
    }

    pub fn hom(&self, x: usize, y: usize) -> &FiniteJCategory {
        &self.homs[x][y]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn compose(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize {
        (self.compose.as_ref().expect("dimension >= 1"))(x, y, z, g, f)
    }

    /// Check the strict category laws for 1-cells and, recursively, inside
    /// every hom.
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.dim == 0 {
            return r;
        }
        let n = self.object_count();
        for x in 0..n {
            r.expect(
                self.identities[x] < self.homs[x][x].object_count(),
                "identity_in_hom",
                &[x],
                || format!("identity of {x} out of range"),
            );
        }
        if !r.is_valid() {
            return r;
        }
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.homs[x][y].object_count() {
                    r.expect(
                        self.compose(x, x, y, f, self.identities[x]) == f,
                        "right_identity",
                        &[x, y, f],
                        || format!("{f} ∘ id({x}) != {f}"),
                    );
                    r.expect(
                        self.compose(x, y, y, self.identities[y], f) == f,
                        "left_identity",
                        &[x, y, f],
                        || format!("id({y}) ∘ {f} != {f}"),
                    );
                }
                r.merge(self.homs[x][y].check().scoped(&format!("hom({x},{y})")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for f in 0..self.homs[x][y].object_count() {
                            for g in 0..self.homs[y][z].object_count() {
                                for h in 0..self.homs[z][w].object_count() {
                                    let lhs = self.compose(x, z, w, h, self.compose(x, y, z, g, f));
                                    let rhs = self.compose(x, y, w, self.compose(y, z, w, h, g), f);
                                    r.expect(lhs == rhs, "associativity", &[x, y, z, w, f, g, h], || {
                                        format!("(h∘g)∘f = {rhs} but h∘(g∘f) = {lhs}")
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }
}

type Cells<M> = Vec<Vec<Vec<M>>>;
type CellIndex<M> = Vec<Vec<HashMap<M, usize>>>;

/// Materialize the hom sets of 1-cells, deduplicated by value, with a
/// reverse index per hom.
fn index_homs<O, M: Clone + Eq + Hash>(objects: &[O], hom: impl Fn(&O, &O) -> Vec<M>) -> (Cells<M>, CellIndex<M>) {
    let mut cells = Vec::with_capacity(objects.len());
    let mut index = Vec::with_capacity(objects.len());
    for x in objects {
        let mut row = Vec::with_capacity(objects.len());
        let mut irow = Vec::with_capacity(objects.len());
        for y in objects {
            let mut h = hom(x, y);
            let mut seen = HashMap::new();
            h.retain(|m| {
                let fresh = !seen.contains_key(m);
                if fresh {
                    seen.insert(m.clone(), seen.len());
                }
                fresh
            });
            row.push(h);
            irow.push(seen);
        }
        cells.push(row);
        index.push(irow);
    }
    (cells, index)
}

fn assemble<O, M>(
    objects: &[O],
    cells: Cells<M>,
    index: CellIndex<M>,
    homs: Vec<Vec<FiniteJCategory>>,
    identity: impl Fn(&O) -> M,
    compose: impl Fn(&M, &M) -> M + Send + Sync + 'static,
    describe_object: impl Fn(&O) -> Value,
) -> FiniteJCategory
where
    M: Clone + Eq + Hash + Send + Sync + 'static,
{
    let dim = homs.first().and_then(|r| r.first()).map_or(1, |h| h.dim + 1);
    let identities = objects
        .iter()
        .enumerate()
        .map(|(x, o)| *index[x][x].get(&identity(o)).expect("identity must lie in its hom set"))
        .collect();
    let compose: ComposeFn = Arc::new(move |x, y, z, g, f| {
        let h = compose(&cells[y][z][g], &cells[x][y][f]);
        *index[x][z].get(&h).expect("composite must lie in its hom set")
    });
    FiniteJCategory::new(
        dim,
        objects.iter().map(describe_object).collect(),
        homs,
        identities,
        compose,
    )
}

/// Build a 1-category from concrete objects and morphisms. Morphisms are
/// deduplicated by value within each hom set. `compose(g, f)` is `g ∘ f`.
pub fn build_1category<O, M>(
    objects: &[O],
    hom: impl Fn(&O, &O) -> Vec<M>,
    identity: impl Fn(&O) -> M,
    compose: impl Fn(&M, &M) -> M + Send + Sync + 'static,
    describe_object: impl Fn(&O) -> Value,
    describe_morphism: impl Fn(&M) -> Value,
) -> FiniteJCategory
where
    M: Clone + Eq + Hash + Send + Sync + 'static,
{
    let (cells, index) = index_homs(objects, hom);
    let homs = cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|h| FiniteJCategory::set(h.iter().map(&describe_morphism).collect()))
                .collect()
        })
        .collect();
    assemble(objects, cells, index, homs, identity, compose, describe_object)
}

/// Concrete data of a strict 2-category. 2-cells are listed per pair of
/// parallel 1-cells by `hom2(x, y, f, g)`, for `f, g: x -> y`.
pub struct TwoCategoryData<'a, O, M, C> {
    pub objects: &'a [O],
    pub hom1: &'a dyn Fn(&O, &O) -> Vec<M>,
    pub hom2: &'a dyn Fn(&O, &O, &M, &M) -> Vec<C>,
    pub identity1: &'a dyn Fn(&O) -> M,
    pub identity2: &'a dyn Fn(&M) -> C,
    pub describe_object: &'a dyn Fn(&O) -> Value,
    pub describe_1cell: &'a dyn Fn(&M) -> Value,
    pub describe_2cell: &'a dyn Fn(&C) -> Value,
}

/// Build a strict 2-category. `compose1(g, f)` composes 1-cells and
/// `vcompose2(b, a)` composes 2-cells vertically. Horizontal composition
/// of 2-cells is not needed by the equivalence criteria and is not stored.
pub fn build_2category<O, M, C>(
    data: TwoCategoryData<'_, O, M, C>,
    compose1: impl Fn(&M, &M) -> M + Send + Sync + 'static,
    vcompose2: impl Fn(&C, &C) -> C + Send + Sync + 'static,
) -> FiniteJCategory
where
    M: Clone + Eq + Hash + Send + Sync + 'static,
    C: Clone + Eq + Hash + Send + Sync + 'static,
{
    let (cells, index) = index_homs(data.objects, data.hom1);
    let vcompose2 = Arc::new(vcompose2);
    let homs = data
        .objects
        .iter()
        .enumerate()
        .map(|(x, ox)| {
            data.objects
                .iter()
                .enumerate()
                .map(|(y, oy)| {
                    let vc = Arc::clone(&vcompose2);
                    build_1category(
                        &cells[x][y],
                        |f, g| (data.hom2)(ox, oy, f, g),
                        data.identity2,
                        move |b, a| vc(b, a),
                        data.describe_1cell,
                        data.describe_2cell,
                    )
                })
                .collect()
        })
        .collect();
    assemble(
        data.objects,
        cells,
        index,
        homs,
        data.identity1,
        compose1,
        data.describe_object,
    )
}

/// Witness that two 0-cells are internally equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InternalEquivalence {
    /// The two 0-cells are the same.
    Identical,
    /// 1-cells `forward: x1 -> x2` and `backward: x2 -> x1` whose composites
    /// are internally equivalent to identities in the hom categories.
    Via {
        forward: usize,
        backward: usize,
        unit: Box<InternalEquivalence>,
        counit: Box<InternalEquivalence>,
    },
}

/// Decide internal equivalence of `x1` and `x2` by exhaustive search.
pub fn internally_equivalent(c: &FiniteJCategory, x1: usize, x2: usize) -> Option<InternalEquivalence> {
    if x1 == x2 {
        return Some(InternalEquivalence::Identical);
    }
    if c.dim == 0 {
        return None;
    }
    let forward = c.hom(x1, x2);
    let backward = c.hom(x2, x1);
    for f in 0..forward.object_count() {
        for g in 0..backward.object_count() {
            let gf = c.compose(x1, x2, x1, g, f);
            let Some(unit) = internally_equivalent(c.hom(x1, x1), gf, c.identity(x1)) else {
                continue;
            };
            let fg = c.compose(x2, x1, x2, f, g);
            if let Some(counit) = internally_equivalent(c.hom(x2, x2), fg, c.identity(x2)) {
                return Some(InternalEquivalence::Via {
                    forward: f,
                    backward: g,
                    unit: Box::new(unit),
                    counit: Box::new(counit),
                });
            }
        }
    }
    None
}

/// A strict j-functor between finite j-categories, stored as an object map
/// and one local (j-1)-functor per ordered pair of source objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JFunctor {
    dim: usize,
    objects: Vec<usize>,
    local: Vec<Vec<JFunctor>>,
}

impl JFunctor {
    /// A map of sets.
    pub fn map(objects: Vec<usize>) -> Self {
        Self {
            dim: 0,
            objects,
            local: Vec::new(),
        }
    }

    pub fn new(objects: Vec<usize>, local: Vec<Vec<JFunctor>>) -> Self {
        let dim = local.first().and_then(|r| r.first()).map_or(1, |l| l.dim + 1);
        Self { dim, objects, local }
    }

    /// Build a 1-functor from an object map and a map on morphisms
    /// `(x1, x2, f) -> index in hom(F x1, F x2)`.
    pub fn from_fn(
        source: &FiniteJCategory,
        objects: Vec<usize>,
        mut on_morphism: impl FnMut(usize, usize, usize) -> usize,
    ) -> Self {
        let n = source.object_count();
        let mut local = Vec::with_capacity(n);
        for x1 in 0..n {
            let mut row = Vec::with_capacity(n);
            for x2 in 0..n {
                let cells = source.hom(x1, x2).object_count();
                row.push(JFunctor::map((0..cells).map(|f| on_morphism(x1, x2, f)).collect()));
            }
            local.push(row);
        }
        Self { dim: 1, objects, local }
    }

    pub fn identity(c: &FiniteJCategory) -> Self {
        let n = c.object_count();
        if c.dim == 0 {
            return Self::map((0..n).collect());
        }
        let local = (0..n)
            .map(|x| (0..n).map(|y| Self::identity(c.hom(x, y))).collect())
            .collect();
        Self {
            dim: c.dim,
            objects: (0..n).collect(),
            local,
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &JFunctor) -> JFunctor {
        let objects = first.objects.iter().map(|&x| self.objects[x]).collect();
        if self.dim == 0 {
            return Self::map(objects);
        }
        let n = first.objects.len();
        let local = (0..n)
            .map(|x1| {
                (0..n)
                    .map(|x2| self.local[first.objects[x1]][first.objects[x2]].after(&first.local[x1][x2]))
                    .collect()
            })
            .collect();
        Self {
            dim: self.dim,
            objects,
            local,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn local(&self, x1: usize, x2: usize) -> &JFunctor {
        &self.local[x1][x2]
    }

    /// Check ranges and strict functoriality, recursively.
    pub fn check(&self, source: &FiniteJCategory, target: &FiniteJCategory) -> ValidationReport {
        let mut r = ValidationReport::new();
        let n = source.object_count();
        r.expect(
            self.dim == source.dim && self.dim == target.dim,
            "dimension",
            &[],
            || {
                format!(
                    "functor of dimension {} between {} and {}",
                    self.dim, source.dim, target.dim
                )
            },
        );
        r.expect(self.objects.len() == n, "object_map_size", &[], || {
            "object map has wrong length".into()
        });
        r.expect(
            self.objects.iter().all(|&y| y < target.object_count()),
            "object_map_range",
            &[],
            || "object map leaves the target".into(),
        );
        if !r.is_valid() || self.dim == 0 {
            return r;
        }
        for x1 in 0..n {
            for x2 in 0..n {
                let sub = self.local[x1][x2].check(source.hom(x1, x2), target.hom(self.objects[x1], self.objects[x2]));
                r.merge(sub.scoped(&format!("local({x1},{x2})")));
            }
        }
        if !r.is_valid() {
            return r;
        }
        for x in 0..n {
            let fx = self.objects[x];
            r.expect(
                self.local[x][x].objects[source.identity(x)] == target.identity(fx),
                "preserves_identity",
                &[x],
                || format!("identity of {x} is not sent to an identity"),
            );
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in 0..source.hom(x, y).object_count() {
                        for g in 0..source.hom(y, z).object_count() {
                            let lhs = self.local[x][z].objects[source.compose(x, y, z, g, f)];
                            let rhs = target.compose(
                                self.objects[x],
                                self.objects[y],
                                self.objects[z],
                                self.local[y][z].objects[g],
                                self.local[x][y].objects[f],
                            );
                            r.expect(lhs == rhs, "preserves_composition", &[x, y, z, f, g], || {
                                format!("F(g∘f) = {lhs} but Fg∘Ff = {rhs}")
                            });
                        }
                    }
                }
            }
        }
        r
    }
}

/// Check whether `functor` is an external equivalence using the unravelled
/// criteria: essentially surjective on 0-cells, locally essentially
/// surjective at every dimension, and locally faithful at the top dimension.
/// Each criterion records the first witness of failure.
pub fn check_external_equivalence(
    subject: &str,
    bound: Option<usize>,
    source: &FiniteJCategory,
    target: &FiniteJCategory,
    functor: &JFunctor,
) -> EquivalenceReport {
    let top = source.dim;
    let mut surj: Vec<Option<Value>> = vec![None; top + 1];
    let mut faithful: Option<Value> = None;
    walk(source, target, functor, &mut Vec::new(), &mut surj, &mut faithful);
    let mut report = EquivalenceReport::new(subject, bound);
    for (k, witness) in surj.into_iter().enumerate() {
        let name = if k == 0 {
            "essentially_surjective"
        } else {
            "locally_essentially_surjective"
        };
        report.record(name, k, witness.is_none(), witness);
    }
    report.record("locally_faithful", top, faithful.is_none(), faithful);
    report
}

fn walk(
    source: &FiniteJCategory,
    target: &FiniteJCategory,
    functor: &JFunctor,
    path: &mut Vec<Value>,
    surj: &mut [Option<Value>],
    faithful: &mut Option<Value>,
) {
    let depth = path.len() / 2;
    if surj[depth].is_none() {
        let mut image: Vec<usize> = functor.objects.clone();
        image.sort_unstable();
        image.dedup();
        let missed = (0..target.object_count())
            .find(|&y| !image.iter().any(|&fx| internally_equivalent(target, fx, y).is_some()));
        if let Some(y) = missed {
            surj[depth] = Some(json!({"between": path.clone(), "missed": target.label(y)}));
        }
    }
    if source.dim == 0 {
        if faithful.is_none() {
            let mut first_preimage: HashMap<usize, usize> = HashMap::new();
            for (x, &y) in functor.objects.iter().enumerate() {
                if let Some(&x0) = first_preimage.get(&y) {
                    *faithful = Some(json!({
                        "between": path.clone(),
                        "cells": [source.label(x0), source.label(x)],
                        "image": target.label(y),
                    }));
                    break;
                }
                first_preimage.insert(y, x);
            }
        }
        return;
    }
    let n = source.object_count();
    for x1 in 0..n {
        for x2 in 0..n {
            path.push(source.label(x1).clone());
            path.push(source.label(x2).clone());
            walk(
                source.hom(x1, x2),
                target.hom(functor.objects[x1], functor.objects[x2]),
                &functor.local[x1][x2],
                path,
                surj,
                faithful,
            );
            path.truncate(path.len() - 2);
            if surj.iter().all(Option::is_some) && faithful.is_some() {
                return;
            }
        }
    }
}

/// The recursive form of the definition: a 0-functor is an equivalence iff
/// it is a bijection, and a j-functor is one iff it is essentially
/// surjective on 0-cells and every local functor is a (j-1)-equivalence.
pub fn is_external_equivalence_recursive(
    source: &FiniteJCategory,
    target: &FiniteJCategory,
    functor: &JFunctor,
) -> bool {
    let n = source.object_count();
    if source.dim == 0 {
        let mut hit = vec![false; target.object_count()];
        for &y in &functor.objects {
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
        return hit.into_iter().all(|h| h);
    }
    let ess_surj = (0..target.object_count()).all(|y| {
        functor
            .objects
            .iter()
            .any(|&fx| internally_equivalent(target, fx, y).is_some())
    });
    ess_surj
        && (0..n).all(|x1| {
            (0..n).all(|x2| {
                is_external_equivalence_recursive(
                    source.hom(x1, x2),
                    target.hom(functor.objects[x1], functor.objects[x2]),
                    &functor.local[x1][x2],
                )
            })
        })
}
