//! Strong monoidal functors `(F, φ, φ₀)` with `φ_{A,B}: FA⊗FB → F(A⊗B)`
//! and `φ₀: I → FI`.

use serde::{Deserialize, Serialize};

use super::{expect_eq, FinMonoidalCategory};
use crate::category::{enumerate_functors, Arrow, Functor};
use crate::error::{structure, Result};
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalFunctor {
    pub functor: Functor,
    /// `phi[A][B] = φ_{A,B}`.
    pub phi: Vec<Vec<usize>>,
    pub phi0: usize,
}

impl MonoidalFunctor {
    pub fn on_object(&self, a: usize) -> usize {
        self.functor.objects[a]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.functor.morphisms[f]
    }
}

pub fn identity_monoidal_functor(x: &FinMonoidalCategory) -> MonoidalFunctor {
    let n = x.object_count();
    MonoidalFunctor {
        functor: Functor::identity(&x.base),
        phi: (0..n).map(|a| (0..n).map(|b| x.id(x.obj(a, b))).collect()).collect(),
        phi0: x.id(x.unit),
    }
}

/// `G ∘ F` with `φ^{GF}_{A,B} = G(φ^F_{A,B}) ∘ φ^G_{FA,FB}` and
/// `φ₀^{GF} = G(φ₀^F) ∘ φ₀^G`.
pub fn compose_monoidal_functors(
    z: &FinMonoidalCategory,
    g: &MonoidalFunctor,
    f: &MonoidalFunctor,
) -> Result<MonoidalFunctor> {
    let phi = f
        .phi
        .iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, &p)| {
                    let inner = g.phi[f.on_object(a)][f.on_object(b)];
                    z.path(&[inner, g.on_morphism(p)])
                })
                .collect::<Option<Vec<usize>>>()
        })
        .collect::<Option<Vec<_>>>();
    let phi0 = z.path(&[g.phi0, g.on_morphism(f.phi0)]);
    match (phi, phi0) {
        (Some(phi), Some(phi0)) => Ok(MonoidalFunctor {
            functor: g.functor.after(&f.functor),
            phi,
            phi0,
        }),
        _ => structure("monoidal functors are not composable"),
    }
}

/// Check the functor laws, endpoints and invertibility of the constraints,
/// their naturality, the associativity hexagon and both unit axioms.
pub fn check_monoidal_functor(
    x: &FinMonoidalCategory,
    y: &FinMonoidalCategory,
    f: &MonoidalFunctor,
) -> Result<ValidationReport> {
    let n = x.object_count();
    if f.phi.len() != n || f.phi.iter().any(|r| r.len() != n) {
        return structure(format!("phi must be {n}x{n}"));
    }
    if f.phi
        .iter()
        .flatten()
        .chain([&f.phi0])
        .any(|&p| p >= y.morphism_count())
    {
        return structure("constraint component out of range");
    }
    let mut r = f.functor.check(&x.base, &y.base)?.scoped("functor");
    if !r.is_valid() {
        return Ok(r);
    }
    let fo = |a: usize| f.on_object(a);
    let fm = |g: usize| f.on_morphism(g);
    for a in 0..n {
        for b in 0..n {
            let want = Arrow {
                src: y.obj(fo(a), fo(b)),
                tgt: fo(x.obj(a, b)),
            };
            let got = y.arrow(f.phi[a][b]);
            r.expect(got == want, "phi_endpoints", &[a, b], || {
                format!("φ_{{{a},{b}}} has endpoints {got:?}, expected {want:?}")
            });
        }
    }
    let want = Arrow {
        src: y.unit,
        tgt: fo(x.unit),
    };
    r.expect(y.arrow(f.phi0) == want, "phi0_endpoints", &[], || {
        format!("φ₀ has endpoints {:?}, expected {want:?}", y.arrow(f.phi0))
    });
    if !r.is_valid() {
        return Ok(r);
    }
    for a in 0..n {
        for b in 0..n {
            r.expect(y.base.is_iso(f.phi[a][b]), "phi_invertible", &[a, b], || {
                format!("φ_{{{a},{b}}} is not invertible")
            });
        }
    }
    r.expect(y.base.is_iso(f.phi0), "phi0_invertible", &[], || {
        "φ₀ is not invertible".to_string()
    });

    let m = x.morphism_count();
    for g in 0..m {
        let ag = x.arrow(g);
        for h in 0..m {
            let ah = x.arrow(h);
            let lhs = y.path(&[f.phi[ag.src][ah.src], fm(x.mor(g, h))]);
            let rhs = y.path(&[y.mor(fm(g), fm(h)), f.phi[ag.tgt][ah.tgt]]);
            expect_eq(&mut r, "phi_naturality", &[g, h], lhs, rhs);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = y.path(&[y.mor(f.phi[a][b], y.id(fo(c))), f.phi[x.obj(a, b)][c], fm(x.a(a, b, c))]);
                let rhs = y.path(&[
                    y.a(fo(a), fo(b), fo(c)),
                    y.mor(y.id(fo(a)), f.phi[b][c]),
                    f.phi[a][x.obj(b, c)],
                ]);
                expect_eq(&mut r, "associativity", &[a, b, c], lhs, rhs);
            }
        }
        let lhs = y.path(&[y.mor(f.phi0, y.id(fo(a))), f.phi[x.unit][a], fm(x.l(a))]);
        expect_eq(&mut r, "left_unit", &[a], lhs, Some(y.l(fo(a))));
        let lhs = y.path(&[y.mor(y.id(fo(a)), f.phi0), f.phi[a][x.unit], fm(x.r(a))]);
        expect_eq(&mut r, "right_unit", &[a], lhs, Some(y.r(fo(a))));
    }
    Ok(r)
}

/// All strong monoidal functors `x → y`.
pub fn enumerate_monoidal_functors(x: &FinMonoidalCategory, y: &FinMonoidalCategory) -> Vec<MonoidalFunctor> {
    let n = x.object_count();
    let isos =
        |s: usize, t: usize| -> Vec<usize> { y.base.hom(s, t).into_iter().filter(|&g| y.base.is_iso(g)).collect() };
    let mut out = Vec::new();
    for functor in enumerate_functors(&x.base, &y.base) {
        let fo = |a: usize| functor.objects[a];
        let mut choices: Vec<Vec<usize>> = Vec::with_capacity(n * n + 1);
        for a in 0..n {
            for b in 0..n {
                choices.push(isos(y.obj(fo(a), fo(b)), fo(x.obj(a, b))));
            }
        }
        choices.push(isos(y.unit, fo(x.unit)));
        for pick in cartesian(&choices) {
            let candidate = MonoidalFunctor {
                functor: functor.clone(),
                phi: pick[..n * n].chunks(n).map(|c| c.to_vec()).collect(),
                phi0: pick[n * n],
            };
            if check_monoidal_functor(x, y, &candidate)
                .map(|r| r.is_valid())
                .unwrap_or(false)
            {
                out.push(candidate);
            }
        }
    }
    out
}

/// All tuples picking one entry from each list.
pub fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for &o in options {
                let mut t = prefix.clone();
                t.push(o);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::stock::*;
    use super::*;
    use crate::algebra::FiniteMonoid;

    #[test]
    fn identities_are_monoidal() {
        for (name, mc) in stock_universe() {
            let id = identity_monoidal_functor(&mc);
            assert!(check_monoidal_functor(&mc, &mc, &id).unwrap().is_valid(), "{name}");
        }
    }

    #[test]
    fn discrete_functors_are_homomorphisms() {
        // Oracle: monoidal functors between discrete categories are exactly
        // the monoid homomorphisms, with identity constraints.
        let z2 = FiniteMonoid::cyclic(2);
        let or = FiniteMonoid::bool_or();
        for (a, b) in [(&z2, &z2), (&z2, &or), (&or, &z2), (&or, &or)] {
            let fs = enumerate_monoidal_functors(&discrete(a), &discrete(b));
            let homs = crate::algebra::enumerate_homs(a, b);
            let maps: Vec<Vec<usize>> = fs.iter().map(|f| f.functor.objects.clone()).collect();
            assert_eq!(maps, homs);
        }
    }

    #[test]
    fn sign_endofunctors_compose() {
        let s = sign_category();
        let fs = enumerate_monoidal_functors(&s, &s);
        assert!(!fs.is_empty());
        for g in &fs {
            for f in &fs {
                let gf = compose_monoidal_functors(&s, g, f).unwrap();
                assert!(check_monoidal_functor(&s, &s, &gf).unwrap().is_valid());
                assert!(fs.contains(&gf));
            }
        }
    }

    #[test]
    fn constraint_tamper_is_caught() {
        let s = sign_category();
        let mut f = identity_monoidal_functor(&s);
        f.phi[0][1] ^= 1;
        let r = check_monoidal_functor(&s, &s, &f).unwrap();
        assert!(!r.is_valid());
    }
}
