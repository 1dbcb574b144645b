//! Transformations between monoidal functors seen as weak functors of
//! one-object bicategories, their modifications, and ordinary monoidal
//! transformations.
//!
//! A transformation `F ⇒ G` has a distinguished object `α` and components
//! `α_A: GA⊗α → α⊗FA` (weak and lax) or `α_A: α⊗FA → GA⊗α` (oplax).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::functor::{cartesian, MonoidalFunctor};
use super::{expect_eq, FinMonoidalCategory};
use crate::category::Arrow;
use crate::error::{structure, Error, Result};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    /// Invertible components `GA⊗α → α⊗FA`.
    Weak,
    /// Components `GA⊗α → α⊗FA`, not necessarily invertible.
    Lax,
    /// Components `α⊗FA → GA⊗α`.
    Oplax,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegTransformation {
    pub variance: Variance,
    pub source: MonoidalFunctor,
    pub target: MonoidalFunctor,
    pub dist: usize,
    pub components: Vec<usize>,
}

impl DegTransformation {
    pub fn to_json(&self) -> Value {
        json!({"variance": self.variance, "dist": self.dist, "components": self.components})
    }

    /// Expected endpoints of the component at `A`.
    fn component_arrow(&self, y: &FinMonoidalCategory, a: usize) -> Arrow {
        let (fa, ga) = (self.source.on_object(a), self.target.on_object(a));
        match self.variance {
            Variance::Weak | Variance::Lax => Arrow {
                src: y.obj(ga, self.dist),
                tgt: y.obj(self.dist, fa),
            },
            Variance::Oplax => Arrow {
                src: y.obj(self.dist, fa),
                tgt: y.obj(ga, self.dist),
            },
        }
    }
}

/// Check naturality, associativity and unit diagrams of a transformation
/// `F ⇒ G` between monoidal functors `x → y`. On the `G` side the diagrams
/// use `G`'s constraints, on the `F` side `F`'s.
pub fn check_deg_transformation(
    x: &FinMonoidalCategory,
    y: &FinMonoidalCategory,
    t: &DegTransformation,
) -> Result<ValidationReport> {
    let n = x.object_count();
    if t.components.len() != n {
        return structure(format!("{} components for {n} objects", t.components.len()));
    }
    if t.dist >= y.object_count() || t.components.iter().any(|&c| c >= y.morphism_count()) {
        return structure("transformation data out of range");
    }
    let mut r = ValidationReport::new();
    for a in 0..n {
        let want = t.component_arrow(y, a);
        let got = y.arrow(t.components[a]);
        r.expect(got == want, "component_endpoints", &[a], || {
            format!("component at {a} has endpoints {got:?}, expected {want:?}")
        });
    }
    if !r.is_valid() {
        return Ok(r);
    }
    if t.variance == Variance::Weak {
        for (a, &c) in t.components.iter().enumerate() {
            r.expect(y.base.is_iso(c), "component_invertible", &[a], || {
                format!("component at {a} is not invertible")
            });
        }
    }

    let (f, g, d) = (&t.source, &t.target, t.dist);
    let comp = |a: usize| t.components[a];
    let (fo, go) = (|a: usize| f.on_object(a), |a: usize| g.on_object(a));
    let id = |o: usize| y.id(o);
    let ainv = |p: usize, q: usize, s: usize| y.inverse(y.a(p, q, s));
    let oplax = t.variance == Variance::Oplax;

    for h in 0..x.morphism_count() {
        let ah = x.arrow(h);
        let (fh, gh) = (f.on_morphism(h), g.on_morphism(h));
        let (lhs, rhs) = if oplax {
            (
                y.path(&[comp(ah.src), y.mor(gh, id(d))]),
                y.path(&[y.mor(id(d), fh), comp(ah.tgt)]),
            )
        } else {
            (
                y.path(&[y.mor(gh, id(d)), comp(ah.tgt)]),
                y.path(&[comp(ah.src), y.mor(id(d), fh)]),
            )
        };
        expect_eq(&mut r, "naturality", &[h], lhs, rhs);
    }

    for a in 0..n {
        for b in 0..n {
            let ab = x.obj(a, b);
            let (lhs, rhs) = if oplax {
                (
                    y.path(&[y.mor(id(d), f.phi[a][b]), comp(ab)]),
                    y.path_opt(&[
                        ainv(d, fo(a), fo(b)),
                        Some(y.mor(comp(a), id(fo(b)))),
                        Some(y.a(go(a), d, fo(b))),
                        Some(y.mor(id(go(a)), comp(b))),
                        ainv(go(a), go(b), d),
                        Some(y.mor(g.phi[a][b], id(d))),
                    ]),
                )
            } else {
                (
                    y.path(&[y.mor(g.phi[a][b], id(d)), comp(ab)]),
                    y.path_opt(&[
                        Some(y.a(go(a), go(b), d)),
                        Some(y.mor(id(go(a)), comp(b))),
                        ainv(go(a), d, fo(b)),
                        Some(y.mor(comp(a), id(fo(b)))),
                        Some(y.a(d, fo(a), fo(b))),
                        Some(y.mor(id(d), f.phi[a][b])),
                    ]),
                )
            };
            expect_eq(&mut r, "associativity", &[a, b], lhs, rhs);
        }
    }

    let i = x.unit;
    let (lhs, rhs) = if oplax {
        (
            y.path(&[y.mor(id(d), f.phi0), comp(i)]),
            y.path_opt(&[Some(y.r(d)), y.inverse(y.l(d)), Some(y.mor(g.phi0, id(d)))]),
        )
    } else {
        (
            y.path(&[y.mor(g.phi0, id(d)), comp(i)]),
            y.path_opt(&[Some(y.l(d)), y.inverse(y.r(d)), Some(y.mor(id(d), f.phi0))]),
        )
    };
    expect_eq(&mut r, "unit", &[], lhs, rhs);
    Ok(r)
}

/// The identity transformation on `F`: distinguished object `I`, components
/// built from the unitors (`l⁻¹ ∘ r`, or `r⁻¹ ∘ l` when oplax).
pub fn identity_transformation(
    y: &FinMonoidalCategory,
    f: &MonoidalFunctor,
    variance: Variance,
) -> Result<DegTransformation> {
    let components = f
        .functor
        .objects
        .iter()
        .map(|&fa| match variance {
            Variance::Oplax => y.path_opt(&[Some(y.l(fa)), y.inverse(y.r(fa))]),
            _ => y.path_opt(&[Some(y.r(fa)), y.inverse(y.l(fa))]),
        })
        .collect::<Option<Vec<usize>>>();
    match components {
        Some(components) => Ok(DegTransformation {
            variance,
            source: f.clone(),
            target: f.clone(),
            dist: y.unit,
            components,
        }),
        None => structure("unitors are not invertible"),
    }
}

/// Vertical composite `second · first` of `first: F ⇒ G` and
/// `second: G ⇒ H`, with distinguished object `β⊗α` and the standard
/// pasting of components through associators.
pub fn compose_deg_transformations(
    y: &FinMonoidalCategory,
    second: &DegTransformation,
    first: &DegTransformation,
) -> Result<DegTransformation> {
    if first.target != second.source || first.variance != second.variance {
        return Err(Error::Mismatch("transformations are not composable".into()));
    }
    let (alpha, beta) = (first.dist, second.dist);
    let ainv = |p: usize, q: usize, s: usize| y.inverse(y.a(p, q, s));
    let components = (0..first.components.len())
        .map(|a| {
            let fa = first.source.on_object(a);
            let ga = first.target.on_object(a);
            let ha = second.target.on_object(a);
            let (ca, cb) = (first.components[a], second.components[a]);
            match first.variance {
                Variance::Oplax => y.path_opt(&[
                    Some(y.a(beta, alpha, fa)),
                    Some(y.mor(y.id(beta), ca)),
                    ainv(beta, ga, alpha),
                    Some(y.mor(cb, y.id(alpha))),
                    Some(y.a(ha, beta, alpha)),
                ]),
                _ => y.path_opt(&[
                    ainv(ha, beta, alpha),
                    Some(y.mor(cb, y.id(alpha))),
                    Some(y.a(beta, ga, alpha)),
                    Some(y.mor(y.id(beta), ca)),
                    ainv(beta, alpha, fa),
                ]),
            }
        })
        .collect::<Option<Vec<usize>>>();
    match components {
        Some(components) => Ok(DegTransformation {
            variance: first.variance,
            source: first.source.clone(),
            target: second.target.clone(),
            dist: y.obj(beta, alpha),
            components,
        }),
        None => structure("components do not compose"),
    }
}

/// All transformations `F ⇒ G` of the given variance.
pub fn enumerate_deg_transformations(
    x: &FinMonoidalCategory,
    y: &FinMonoidalCategory,
    f: &MonoidalFunctor,
    g: &MonoidalFunctor,
    variance: Variance,
) -> Vec<DegTransformation> {
    let mut out = Vec::new();
    for dist in 0..y.object_count() {
        let template = DegTransformation {
            variance,
            source: f.clone(),
            target: g.clone(),
            dist,
            components: Vec::new(),
        };
        let choices: Vec<Vec<usize>> = (0..x.object_count())
            .map(|a| {
                let arr = template.component_arrow(y, a);
                y.base
                    .hom(arr.src, arr.tgt)
                    .into_iter()
                    .filter(|&c| variance != Variance::Weak || y.base.is_iso(c))
                    .collect()
            })
            .collect();
        for components in cartesian(&choices) {
            let t = DegTransformation {
                components,
                ..template.clone()
            };
            if check_deg_transformation(x, y, &t)
                .map(|r| r.is_valid())
                .unwrap_or(false)
            {
                out.push(t);
            }
        }
    }
    out
}

/// Check that `gamma: α → β` is a modification between parallel
/// transformations.
pub fn check_deg_modification(
    y: &FinMonoidalCategory,
    source: &DegTransformation,
    target: &DegTransformation,
    gamma: usize,
) -> Result<ValidationReport> {
    if source.source != target.source || source.target != target.target || source.variance != target.variance {
        return Err(Error::Mismatch("transformations are not parallel".into()));
    }
    if gamma >= y.morphism_count() {
        return structure("modification component out of range");
    }
    let mut r = ValidationReport::new();
    let want = Arrow {
        src: source.dist,
        tgt: target.dist,
    };
    r.expect(y.arrow(gamma) == want, "endpoints", &[], || {
        format!("Γ has endpoints {:?}, expected {want:?}", y.arrow(gamma))
    });
    if !r.is_valid() {
        return Ok(r);
    }
    for a in 0..source.components.len() {
        let fa = source.source.on_object(a);
        let ga = source.target.on_object(a);
        let (ca, cb) = (source.components[a], target.components[a]);
        let (lhs, rhs) = match source.variance {
            Variance::Oplax => (
                y.path(&[ca, y.mor(y.id(ga), gamma)]),
                y.path(&[y.mor(gamma, y.id(fa)), cb]),
            ),
            _ => (
                y.path(&[y.mor(y.id(ga), gamma), cb]),
                y.path(&[ca, y.mor(gamma, y.id(fa))]),
            ),
        };
        expect_eq(&mut r, "modification_square", &[a], lhs, rhs);
    }
    Ok(r)
}

/// An ordinary monoidal natural transformation with components
/// `θ_A: FA → GA`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidalTransformation {
    pub source: MonoidalFunctor,
    pub target: MonoidalFunctor,
    pub components: Vec<usize>,
}

pub fn check_monoidal_transformation(
    x: &FinMonoidalCategory,
    y: &FinMonoidalCategory,
    t: &MonoidalTransformation,
) -> Result<ValidationReport> {
    let n = x.object_count();
    if t.components.len() != n || t.components.iter().any(|&c| c >= y.morphism_count()) {
        return structure("monoidal transformation components do not match");
    }
    let (f, g) = (&t.source, &t.target);
    let mut r = ValidationReport::new();
    for a in 0..n {
        let want = Arrow {
            src: f.on_object(a),
            tgt: g.on_object(a),
        };
        r.expect(y.arrow(t.components[a]) == want, "component_endpoints", &[a], || {
            format!("θ_{a} has endpoints {:?}, expected {want:?}", y.arrow(t.components[a]))
        });
    }
    if !r.is_valid() {
        return Ok(r);
    }
    for h in 0..x.morphism_count() {
        let ah = x.arrow(h);
        let lhs = y.path(&[f.on_morphism(h), t.components[ah.tgt]]);
        let rhs = y.path(&[t.components[ah.src], g.on_morphism(h)]);
        expect_eq(&mut r, "naturality", &[h], lhs, rhs);
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = y.path(&[f.phi[a][b], t.components[x.obj(a, b)]]);
            let rhs = y.path(&[y.mor(t.components[a], t.components[b]), g.phi[a][b]]);
            expect_eq(&mut r, "monoidal", &[a, b], lhs, rhs);
        }
    }
    let lhs = y.path(&[f.phi0, t.components[x.unit]]);
    expect_eq(&mut r, "monoidal_unit", &[], lhs, Some(g.phi0));
    Ok(r)
}

pub fn enumerate_monoidal_transformations(
    x: &FinMonoidalCategory,
    y: &FinMonoidalCategory,
    f: &MonoidalFunctor,
    g: &MonoidalFunctor,
) -> Vec<MonoidalTransformation> {
    let choices: Vec<Vec<usize>> = (0..x.object_count())
        .map(|a| y.base.hom(f.on_object(a), g.on_object(a)))
        .collect();
    cartesian(&choices)
        .into_iter()
        .map(|components| MonoidalTransformation {
            source: f.clone(),
            target: g.clone(),
            components,
        })
        .filter(|t| {
            check_monoidal_transformation(x, y, t)
                .map(|r| r.is_valid())
                .unwrap_or(false)
        })
        .collect()
}

/// Send a monoidal transformation `θ` to the oplax transformation with
/// distinguished object `I` and components `r⁻¹ ∘ θ_A ∘ l: I⊗FA → GA⊗I`.
pub fn embed_monoidal_transformation(y: &FinMonoidalCategory, t: &MonoidalTransformation) -> Result<DegTransformation> {
    let components = t
        .components
        .iter()
        .enumerate()
        .map(|(a, &theta)| {
            let (fa, ga) = (t.source.on_object(a), t.target.on_object(a));
            y.path_opt(&[Some(y.l(fa)), Some(theta), y.inverse(y.r(ga))])
        })
        .collect::<Option<Vec<usize>>>();
    match components {
        Some(components) => Ok(DegTransformation {
            variance: Variance::Oplax,
            source: t.source.clone(),
            target: t.target.clone(),
            dist: y.unit,
            components,
        }),
        None => structure("components do not compose"),
    }
}

/// Vertical composite `second ∘ first` of monoidal transformations.
pub fn compose_monoidal_transformations(
    y: &FinMonoidalCategory,
    second: &MonoidalTransformation,
    first: &MonoidalTransformation,
) -> Result<MonoidalTransformation> {
    if first.target != second.source {
        return Err(Error::Mismatch("monoidal transformations are not composable".into()));
    }
    let components = first
        .components
        .iter()
        .zip(&second.components)
        .map(|(&a, &b)| y.base.compose(b, a))
        .collect::<Option<Vec<usize>>>();
    match components {
        Some(components) => Ok(MonoidalTransformation {
            source: first.source.clone(),
            target: second.target.clone(),
            components,
        }),
        None => structure("components do not compose"),
    }
}

/// Compare the embedding of `second ∘ first` with the composite of the
/// embeddings. Returns `None` when they agree, otherwise the two results.
pub fn embedding_composite_discrepancy(
    y: &FinMonoidalCategory,
    second: &MonoidalTransformation,
    first: &MonoidalTransformation,
) -> Result<Option<Value>> {
    let of_composite = embed_monoidal_transformation(y, &compose_monoidal_transformations(y, second, first)?)?;
    let composite = compose_deg_transformations(
        y,
        &embed_monoidal_transformation(y, second)?,
        &embed_monoidal_transformation(y, first)?,
    )?;
    Ok((of_composite != composite).then(
        || json!({"embedding_of_composite": of_composite.to_json(), "composite_of_embeddings": composite.to_json()}),
    ))
}

/// If two transformations both have distinguished object `I` but their
/// composite does not, return a witness: transformations with unit
/// distinguished object are then not closed under composition.
pub fn unit_dist_closure_failure(
    y: &FinMonoidalCategory,
    second: &DegTransformation,
    first: &DegTransformation,
) -> Result<Option<Value>> {
    if first.dist != y.unit || second.dist != y.unit {
        return Ok(None);
    }
    let c = compose_deg_transformations(y, second, first)?;
    Ok((c.dist != y.unit).then(
        || json!({"unit": y.unit, "composite_dist": c.dist, "first": first.to_json(), "second": second.to_json()}),
    ))
}
