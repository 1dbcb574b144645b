//! Finite categories given by explicit composition tables, functors between
//! them and natural transformations. This is the substrate for monoidal
//! categories and monads.

use serde::{Deserialize, Serialize};

use crate::error::{structure, Result};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

/// A finite category. `comp[g][f]` is `g ∘ f` and is `None` exactly when
/// `tgt(f) != src(g)`. Construction checks only the shape; [`check`] checks
/// the axioms.
///
/// [`check`]: FiniteCategory::check
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: usize,
    morphisms: Vec<Arrow>,
    identities: Vec<usize>,
    comp: Vec<Option<usize>>,
}

impl FiniteCategory {
    pub fn new(
        objects: usize,
        morphisms: Vec<Arrow>,
        identities: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let m = morphisms.len();
        if let Some((i, a)) = morphisms
            .iter()
            .enumerate()
            .find(|(_, a)| a.src >= objects || a.tgt >= objects)
        {
            return structure(format!("morphism {i} has endpoint out of range: {a:?}"));
        }
        if identities.len() != objects {
            return structure(format!("{} identities for {objects} objects", identities.len()));
        }
        if let Some(&i) = identities.iter().find(|&&i| i >= m) {
            return structure(format!("identity {i} out of range"));
        }
        if comp.len() != m || comp.iter().any(|row| row.len() != m) {
            return structure(format!("comp must be {m}x{m}"));
        }
        let mut flat = Vec::with_capacity(m * m);
        for (g, row) in comp.iter().enumerate() {
            for (f, entry) in row.iter().enumerate() {
                let composable = morphisms[f].tgt == morphisms[g].src;
                match entry {
                    Some(h) if *h >= m => return structure(format!("comp[{g}][{f}] = {h} out of range")),
                    Some(_) if !composable => {
                        return structure(format!("comp[{g}][{f}] defined but {g} and {f} are not composable"))
                    }
                    None if composable => return structure(format!("comp[{g}][{f}] missing for composable pair")),
                    _ => {}
                }
                flat.push(*entry);
            }
        }
        Ok(Self {
            objects,
            morphisms,
            identities,
            comp: flat,
        })
    }

    /// Build from a composition function; `compose(g, f)` is called only on
    /// composable pairs.
    pub fn from_fn(
        objects: usize,
        morphisms: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let m = morphisms.len();
        let comp = (0..m)
            .map(|g| {
                (0..m)
                    .map(|f| (morphisms[f].tgt == morphisms[g].src).then(|| compose(g, f)))
                    .collect()
            })
            .collect();
        Self::new(objects, morphisms, identities, comp)
    }

    /// The one-object category whose morphisms compose by the given table.
    pub fn one_object(rows: &[Vec<usize>], unit: usize) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return structure("table is not square");
        }
        Self::from_fn(1, vec![Arrow { src: 0, tgt: 0 }; n], vec![unit], |g, f| rows[g][f])
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> Self {
        let morphisms = (0..n).map(|i| Arrow { src: i, tgt: i }).collect();
        Self::from_fn(n, morphisms, (0..n).collect(), |g, _| g).expect("well-formed")
    }

    /// The walking arrow `0 -> 1`: morphisms `id0, id1, f`.
    pub fn arrow() -> Self {
        let morphisms = vec![
            Arrow { src: 0, tgt: 0 },
            Arrow { src: 1, tgt: 1 },
            Arrow { src: 0, tgt: 1 },
        ];
        Self::from_fn(2, morphisms, vec![0, 1], |g, f| if g == 2 || f == 2 { 2 } else { g }).expect("well-formed")
    }

    /// `n` objects with exactly one morphism between any two. Morphism
    /// `a -> b` has index `a * n + b`.
    pub fn codiscrete(n: usize) -> Self {
        let morphisms = (0..n * n).map(|k| Arrow { src: k / n, tgt: k % n }).collect();
        let identities = (0..n).map(|a| a * n + a).collect();
        Self::from_fn(n, morphisms, identities, |g, f| (f / n) * n + g % n).expect("well-formed")
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Arrow] {
        &self.morphisms
    }

    pub fn arrow_of(&self, f: usize) -> Arrow {
        self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    /// `g ∘ f`, or `None` if not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + f]
    }

    /// Composite of a path given in application order (first morphism first).
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn comp_rows(&self) -> Vec<Vec<Option<usize>>> {
        self.comp.chunks(self.morphisms.len()).map(<[_]>::to_vec).collect()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].src == a && self.morphisms[f].tgt == b)
            .collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let Arrow { src, tgt } = self.morphisms[f];
        self.hom(tgt, src).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identities[src]) && self.compose(f, g) == Some(self.identities[tgt])
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// An isomorphism `a -> b` with its inverse, by exhaustive search.
    pub fn find_iso(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.hom(a, b).into_iter().find_map(|f| self.inverse(f).map(|g| (f, g)))
    }

    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let m = self.morphisms.len();
        for (a, &i) in self.identities.iter().enumerate() {
            r.expect(
                self.morphisms[i] == Arrow { src: a, tgt: a },
                "identity_endpoints",
                &[a],
                || format!("identity {i} of object {a} is {:?}", self.morphisms[i]),
            );
        }
        if !r.is_valid() {
            return r;
        }
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose(g, f) {
                    let want = Arrow {
                        src: self.src(f),
                        tgt: self.tgt(g),
                    };
                    r.expect(self.morphisms[h] == want, "composite_endpoints", &[g, f], || {
                        format!("{g}∘{f} = {h} has endpoints {:?}, expected {want:?}", self.morphisms[h])
                    });
                }
            }
        }
        for f in 0..m {
            let Arrow { src, tgt } = self.morphisms[f];
            r.expect(
                self.compose(f, self.identities[src]) == Some(f),
                "right_identity",
                &[f],
                || format!("{f}∘id({src}) != {f}"),
            );
            r.expect(
                self.compose(self.identities[tgt], f) == Some(f),
                "left_identity",
                &[f],
                || format!("id({tgt})∘{f} != {f}"),
            );
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = self.compose(h, g) else { continue };
                for f in 0..m {
                    let Some(gf) = self.compose(g, f) else { continue };
                    let lhs = self.compose(hg, f);
                    let rhs = self.compose(h, gf);
                    r.expect(lhs == rhs, "associativity", &[h, g, f], || {
                        format!("({h}∘{g})∘{f} = {lhs:?} but {h}∘({g}∘{f}) = {rhs:?}")
                    });
                }
            }
        }
        r
    }
}

/// A functor between finite categories, as raw maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Self {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// Constant functor at object `b` of the target.
    pub fn constant(source: &FiniteCategory, target: &FiniteCategory, b: usize) -> Self {
        Self {
            objects: vec![b; source.object_count()],
            morphisms: vec![target.identity(b); source.morphism_count()],
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&a| self.objects[a]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }

    pub fn check(&self, source: &FiniteCategory, target: &FiniteCategory) -> Result<ValidationReport> {
        if self.objects.len() != source.object_count() || self.morphisms.len() != source.morphism_count() {
            return structure("functor map sizes do not match the source category");
        }
        if self.objects.iter().any(|&b| b >= target.object_count())
            || self.morphisms.iter().any(|&g| g >= target.morphism_count())
        {
            return structure("functor maps outside the target category");
        }
        let mut r = ValidationReport::new();
        for (f, &g) in self.morphisms.iter().enumerate() {
            let want = Arrow {
                src: self.objects[source.src(f)],
                tgt: self.objects[source.tgt(f)],
            };
            r.expect(target.arrow_of(g) == want, "endpoints", &[f], || {
                format!("F({f}) = {g} has endpoints {:?}, expected {want:?}", target.arrow_of(g))
            });
        }
        if !r.is_valid() {
            return Ok(r);
        }
        for a in 0..source.object_count() {
            r.expect(
                self.morphisms[source.identity(a)] == target.identity(self.objects[a]),
                "preserves_identity",
                &[a],
                || format!("F(id {a}) is not an identity"),
            );
        }
        for g in 0..source.morphism_count() {
            for f in 0..source.morphism_count() {
                if let Some(gf) = source.compose(g, f) {
                    let lhs = Some(self.morphisms[gf]);
                    let rhs = target.compose(self.morphisms[g], self.morphisms[f]);
                    r.expect(lhs == rhs, "preserves_composition", &[g, f], || {
                        format!("F({g}∘{f}) = {lhs:?} but F{g}∘F{f} = {rhs:?}")
                    });
                }
            }
        }
        Ok(r)
    }
}

/// Every functor `source -> target`, by backtracking over morphism images.
pub fn enumerate_functors(source: &FiniteCategory, target: &FiniteCategory) -> Vec<Functor> {
    let mut out = Vec::new();
    let n = source.object_count();
    let m = source.morphism_count();
    let mut objects = vec![0; n];
    loop {
        let mut morphisms = Vec::with_capacity(m);
        extend_morphisms(source, target, &objects, &mut morphisms, &mut out);
        // Next object assignment, odometer style.
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            objects[k] += 1;
            if objects[k] < target.object_count() {
                break;
            }
            objects[k] = 0;
        }
    }
}

fn extend_morphisms(
    source: &FiniteCategory,
    target: &FiniteCategory,
    objects: &[usize],
    morphisms: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    let k = morphisms.len();
    if k == source.morphism_count() {
        out.push(Functor {
            objects: objects.to_vec(),
            morphisms: morphisms.clone(),
        });
        return;
    }
    let Arrow { src, tgt } = source.arrow_of(k);
    let is_identity = source.identity(src) == k;
    for g in target.hom(objects[src], objects[tgt]) {
        if is_identity && g != target.identity(objects[src]) {
            continue;
        }
        morphisms.push(g);
        let ok = (0..=k).all(|x| {
            (0..=k).all(|y| match source.compose(x, y) {
                Some(xy) if xy <= k => target.compose(morphisms[x], morphisms[y]) == Some(morphisms[xy]),
                _ => true,
            })
        });
        if ok {
            extend_morphisms(source, target, objects, morphisms, out);
        }
        morphisms.pop();
    }
}

/// Check that `components` (one morphism `F a -> G a` per object) form a
/// natural transformation `F ⇒ G`.
pub fn check_natural(
    source: &FiniteCategory,
    target: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    components: &[usize],
) -> Result<ValidationReport> {
    if components.len() != source.object_count() {
        return structure("one component per source object required");
    }
    if components.iter().any(|&c| c >= target.morphism_count()) {
        return structure("component out of range");
    }
    let mut r = ValidationReport::new();
    for (a, &c) in components.iter().enumerate() {
        let want = Arrow {
            src: f.objects[a],
            tgt: g.objects[a],
        };
        r.expect(target.arrow_of(c) == want, "component_endpoints", &[a], || {
            format!(
                "component at {a} has endpoints {:?}, expected {want:?}",
                target.arrow_of(c)
            )
        });
    }
    if !r.is_valid() {
        return Ok(r);
    }
    for h in 0..source.morphism_count() {
        let Arrow { src, tgt } = source.arrow_of(h);
        let lhs = target.compose(components[tgt], f.morphisms[h]);
        let rhs = target.compose(g.morphisms[h], components[src]);
        r.expect(lhs == rhs, "naturality", &[h], || {
            format!("naturality square at {h}: {lhs:?} vs {rhs:?}")
        });
    }
    Ok(r)
}

/// All natural transformations `F ⇒ G` as component lists.
pub fn enumerate_natural(
    source: &FiniteCategory,
    target: &FiniteCategory,
    f: &Functor,
    g: &Functor,
) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = (0..source.object_count())
        .map(|a| target.hom(f.objects[a], g.objects[a]))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(choices: &[Vec<usize>], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == choices.len() {
            out.push(current.clone());
            return;
        }
        for &c in &choices[current.len()] {
            current.push(c);
            go(choices, current, out);
            current.pop();
        }
    }
    go(&choices, &mut current, &mut out);
    out.retain(|c| {
        check_natural(source, target, f, g, c)
            .map(|r| r.is_valid())
            .unwrap_or(false)
    });
    out
}
