//! Finite monoidal categories, i.e. bicategories with one object after the
//! dimension shift: objects are the 1-cells, morphisms the 2-cells and the
//! tensor product is composition of 1-cells.
//!
//! Conventions: `a_{A,B,C}: (A⊗B)⊗C → A⊗(B⊗C)`, `l_A: I⊗A → A`,
//! `r_A: A⊗I → A`. Paths of morphisms are written in application order.

mod bicat;
mod coherence;
mod functor;
mod stock;
mod transformation;

pub use bicat::{
    check_bicat_functor, check_xi_equivalence, enumerate_bicat_functors, shift_from_bicat, shift_to_bicat,
    BicatFunctor, DegenerateBicategory,
};
pub use coherence::{check_coherence, Bracketing, CoherenceReport};
pub use functor::{
    cartesian, check_monoidal_functor, compose_monoidal_functors, enumerate_monoidal_functors,
    identity_monoidal_functor, MonoidalFunctor,
};
pub use stock::{codiscrete_twisted, discrete, sign_category, stock_universe, trivial};
pub use transformation::{
    check_deg_modification, check_deg_transformation, check_monoidal_transformation, compose_deg_transformations,
    compose_monoidal_transformations, embed_monoidal_transformation, embedding_composite_discrepancy,
    enumerate_deg_transformations, enumerate_monoidal_transformations, identity_transformation,
    unit_dist_closure_failure, DegTransformation, MonoidalTransformation, Variance,
};

use crate::category::{Arrow, FiniteCategory};
use crate::doubly_degenerate::DDBicat;
use crate::error::{structure, Result};
use crate::report::ValidationReport;

/// Raw monoidal category data over a finite base category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinMonoidalCategory {
    pub base: FiniteCategory,
    /// `tensor_obj[A][B] = A⊗B`.
    pub tensor_obj: Vec<Vec<usize>>,
    /// `tensor_mor[f][g] = f⊗g`.
    pub tensor_mor: Vec<Vec<usize>>,
    pub unit: usize,
    /// `assoc[A][B][C] = a_{A,B,C}`.
    pub assoc: Vec<Vec<Vec<usize>>>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
}

impl FinMonoidalCategory {
    pub fn object_count(&self) -> usize {
        self.base.object_count()
    }

    pub fn morphism_count(&self) -> usize {
        self.base.morphism_count()
    }

    pub fn obj(&self, a: usize, b: usize) -> usize {
        self.tensor_obj[a][b]
    }

    pub fn mor(&self, f: usize, g: usize) -> usize {
        self.tensor_mor[f][g]
    }

    pub fn id(&self, a: usize) -> usize {
        self.base.identity(a)
    }

    pub fn a(&self, x: usize, y: usize, z: usize) -> usize {
        self.assoc[x][y][z]
    }

    pub fn l(&self, x: usize) -> usize {
        self.lunit[x]
    }

    pub fn r(&self, x: usize) -> usize {
        self.runit[x]
    }

    pub fn arrow(&self, f: usize) -> Arrow {
        self.base.arrow_of(f)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.base.inverse(f)
    }

    /// Composite of a path in application order; `None` if some step is
    /// not composable.
    pub fn path(&self, steps: &[usize]) -> Option<usize> {
        self.base.compose_path(steps)
    }

    /// Path whose steps may be missing (e.g. a non-invertible constraint).
    pub fn path_opt(&self, steps: &[Option<usize>]) -> Option<usize> {
        let steps: Option<Vec<usize>> = steps.iter().copied().collect();
        self.path(&steps?)
    }

    pub fn check_structure(&self) -> Result<()> {
        let n = self.object_count();
        let m = self.morphism_count();
        if self.tensor_obj.len() != n || self.tensor_obj.iter().any(|r| r.len() != n) {
            return structure(format!("tensor_obj must be {n}x{n}"));
        }
        if self.tensor_obj.iter().flatten().any(|&x| x >= n) {
            return structure("tensor_obj entry out of range");
        }
        if self.tensor_mor.len() != m || self.tensor_mor.iter().any(|r| r.len() != m) {
            return structure(format!("tensor_mor must be {m}x{m}"));
        }
        if self.tensor_mor.iter().flatten().any(|&x| x >= m) {
            return structure("tensor_mor entry out of range");
        }
        if self.unit >= n {
            return structure("unit object out of range");
        }
        if self.assoc.len() != n
            || self
                .assoc
                .iter()
                .any(|p| p.len() != n || p.iter().any(|q| q.len() != n))
        {
            return structure(format!("assoc must be {n}x{n}x{n}"));
        }
        if self.assoc.iter().flatten().flatten().any(|&x| x >= m) {
            return structure("assoc component out of range");
        }
        for (name, comps) in [("lunit", &self.lunit), ("runit", &self.runit)] {
            if comps.len() != n || comps.iter().any(|&x| x >= m) {
                return structure(format!("{name} must have one in-range component per object"));
            }
        }
        Ok(())
    }
}

fn expect_eq(r: &mut ValidationReport, axiom: &str, at: &[usize], lhs: Option<usize>, rhs: Option<usize>) {
    r.expect(lhs.is_some() && lhs == rhs, axiom, at, || match (lhs, rhs) {
        (Some(x), Some(y)) => format!("sides differ: {x} vs {y}"),
        _ => "a path in the diagram is not composable".to_string(),
    });
}

/// Check every axiom instance: base category laws, bifunctoriality of the
/// tensor, endpoints, invertibility and naturality of the constraints,
/// pentagon and triangle.
pub fn check_monoidal(mc: &FinMonoidalCategory) -> Result<ValidationReport> {
    mc.check_structure()?;
    let mut r = mc.base.check().scoped("base");
    if !r.is_valid() {
        return Ok(r);
    }
    let n = mc.object_count();
    let m = mc.morphism_count();
    let c = &mc.base;

    for f in 0..m {
        for g in 0..m {
            let (af, ag) = (c.arrow_of(f), c.arrow_of(g));
            let want = Arrow {
                src: mc.obj(af.src, ag.src),
                tgt: mc.obj(af.tgt, ag.tgt),
            };
            r.expect(c.arrow_of(mc.mor(f, g)) == want, "tensor_endpoints", &[f, g], || {
                format!(
                    "{f}⊗{g} has endpoints {:?}, expected {want:?}",
                    c.arrow_of(mc.mor(f, g))
                )
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            r.expect(
                mc.mor(mc.id(a), mc.id(b)) == mc.id(mc.obj(a, b)),
                "tensor_identity",
                &[a, b],
                || format!("id{a}⊗id{b} is not the identity of {}", mc.obj(a, b)),
            );
        }
    }
    if !r.is_valid() {
        return Ok(r);
    }
    for f in 0..m {
        for f2 in 0..m {
            let Some(ff) = c.compose(f2, f) else { continue };
            for g in 0..m {
                for g2 in 0..m {
                    let Some(gg) = c.compose(g2, g) else { continue };
                    let lhs = Some(mc.mor(ff, gg));
                    let rhs = c.compose(mc.mor(f2, g2), mc.mor(f, g));
                    expect_eq(&mut r, "tensor_interchange", &[f, f2, g, g2], lhs, rhs);
                }
            }
        }
    }

    let i = mc.unit;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let want = Arrow {
                    src: mc.obj(mc.obj(x, y), z),
                    tgt: mc.obj(x, mc.obj(y, z)),
                };
                r.expect(mc.arrow(mc.a(x, y, z)) == want, "assoc_endpoints", &[x, y, z], || {
                    format!(
                        "a_{{{x},{y},{z}}} has endpoints {:?}, expected {want:?}",
                        mc.arrow(mc.a(x, y, z))
                    )
                });
            }
        }
        let want = Arrow {
            src: mc.obj(i, x),
            tgt: x,
        };
        r.expect(mc.arrow(mc.l(x)) == want, "lunit_endpoints", &[x], || {
            format!("l_{x} has endpoints {:?}, expected {want:?}", mc.arrow(mc.l(x)))
        });
        let want = Arrow {
            src: mc.obj(x, i),
            tgt: x,
        };
        r.expect(mc.arrow(mc.r(x)) == want, "runit_endpoints", &[x], || {
            format!("r_{x} has endpoints {:?}, expected {want:?}", mc.arrow(mc.r(x)))
        });
    }
    if !r.is_valid() {
        return Ok(r);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                r.expect(c.is_iso(mc.a(x, y, z)), "assoc_invertible", &[x, y, z], || {
                    format!("a_{{{x},{y},{z}}} is not invertible")
                });
            }
        }
        r.expect(c.is_iso(mc.l(x)), "lunit_invertible", &[x], || {
            format!("l_{x} is not invertible")
        });
        r.expect(c.is_iso(mc.r(x)), "runit_invertible", &[x], || {
            format!("r_{x} is not invertible")
        });
    }

    for f in 0..m {
        let af = c.arrow_of(f);
        for g in 0..m {
            let ag = c.arrow_of(g);
            for h in 0..m {
                let ah = c.arrow_of(h);
                let lhs = mc.path(&[mc.mor(mc.mor(f, g), h), mc.a(af.tgt, ag.tgt, ah.tgt)]);
                let rhs = mc.path(&[mc.a(af.src, ag.src, ah.src), mc.mor(f, mc.mor(g, h))]);
                expect_eq(&mut r, "assoc_naturality", &[f, g, h], lhs, rhs);
            }
        }
        let lhs = mc.path(&[mc.mor(mc.id(i), f), mc.l(af.tgt)]);
        let rhs = mc.path(&[mc.l(af.src), f]);
        expect_eq(&mut r, "lunit_naturality", &[f], lhs, rhs);
        let lhs = mc.path(&[mc.mor(f, mc.id(i)), mc.r(af.tgt)]);
        let rhs = mc.path(&[mc.r(af.src), f]);
        expect_eq(&mut r, "runit_naturality", &[f], lhs, rhs);
    }

    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // ((wx)y)z → (wx)(yz) → w(x(yz))
                    let lhs = mc.path(&[mc.a(mc.obj(w, x), y, z), mc.a(w, x, mc.obj(y, z))]);
                    // ((wx)y)z → (w(xy))z → w((xy)z) → w(x(yz))
                    let rhs = mc.path(&[
                        mc.mor(mc.a(w, x, y), mc.id(z)),
                        mc.a(w, mc.obj(x, y), z),
                        mc.mor(mc.id(w), mc.a(x, y, z)),
                    ]);
                    expect_eq(&mut r, "pentagon", &[w, x, y, z], lhs, rhs);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = mc.path(&[mc.a(x, i, y), mc.mor(mc.id(x), mc.l(y))]);
            let rhs = Some(mc.mor(mc.r(x), mc.id(y)));
            expect_eq(&mut r, "triangle", &[x, y], lhs, rhs);
        }
    }
    Ok(r)
}

/// Whether two objects are isomorphic, by exhaustive search of hom-sets.
pub fn objects_isomorphic(mc: &FinMonoidalCategory, a: usize, b: usize) -> bool {
    a == b || mc.base.find_iso(a, b).is_some()
}

/// A doubly degenerate bicategory as a monoidal category with one object.
/// The stored inverse witnesses are not used; invertibility is searched.
pub fn from_ddbicat(b: &DDBicat) -> Result<FinMonoidalCategory> {
    let mc = FinMonoidalCategory {
        base: FiniteCategory::one_object(&b.vcomp, b.id2)?,
        tensor_obj: vec![vec![0]],
        tensor_mor: b.hcomp.clone(),
        unit: 0,
        assoc: vec![vec![vec![b.assoc]]],
        lunit: vec![b.lunit],
        runit: vec![b.runit],
    };
    mc.check_structure()?;
    Ok(mc)
}
