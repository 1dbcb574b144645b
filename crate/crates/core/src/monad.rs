//! Monads on finite categories, monad functors `(U, φ: TU ⇒ US)` and monad
//! functor transformations.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{all_monoids_up_to, check_hom, check_monoid, enumerate_homs, MonoidHom};
use crate::category::{Arrow, FiniteCategory, Functor};
use crate::degenerate_cat::check_nat_trans;
use crate::error::{structure, Error, Result};
use crate::report::ValidationReport;

/// A monad `(T, η, μ)` on a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonad {
    pub base: FiniteCategory,
    pub endofunctor: Functor,
    /// `η_a: a → Ta`.
    pub unit: Vec<usize>,
    /// `μ_a: TTa → Ta`.
    pub multiplication: Vec<usize>,
}

impl FinMonad {
    pub fn identity(base: &FiniteCategory) -> Self {
        Self {
            endofunctor: Functor::identity(base),
            unit: base.identities().to_vec(),
            multiplication: base.identities().to_vec(),
            base: base.clone(),
        }
    }

    /// On the walking arrow `0 → 1`, the idempotent monad sending everything
    /// to the terminal object `1`.
    pub fn constant_to_terminal() -> Self {
        let base = FiniteCategory::arrow();
        Self {
            endofunctor: Functor::constant(&base, &base, 1),
            unit: vec![2, 1],
            multiplication: vec![1, 1],
            base,
        }
    }

    fn t(&self, a: usize) -> usize {
        self.endofunctor.objects[a]
    }

    fn tm(&self, f: usize) -> usize {
        self.endofunctor.morphisms[f]
    }
}

fn expect_path(r: &mut ValidationReport, c: &FiniteCategory, axiom: &str, at: &[usize], lhs: &[usize], rhs: &[usize]) {
    let (l, rr) = (c.compose_path(lhs), c.compose_path(rhs));
    r.expect(l.is_some() && l == rr, axiom, at, || match (l, rr) {
        (Some(x), Some(y)) => format!("sides differ: {x} vs {y}"),
        _ => "a path in the diagram is not composable".to_string(),
    });
}

fn expect_components(
    r: &mut ValidationReport,
    c: &FiniteCategory,
    axiom: &str,
    comps: &[usize],
    want: impl Fn(usize) -> Arrow,
) {
    for (a, &k) in comps.iter().enumerate() {
        let w = want(a);
        r.expect(c.arrow_of(k) == w, axiom, &[a], || {
            format!("component at {a} has endpoints {:?}, expected {w:?}", c.arrow_of(k))
        });
    }
}

/// Naturality of `η` and `μ`, both unit laws and associativity.
pub fn check_monad(m: &FinMonad) -> Result<ValidationReport> {
    let c = &m.base;
    let n = c.object_count();
    if m.unit.len() != n || m.multiplication.len() != n {
        return structure(format!("monad needs {n} unit and multiplication components"));
    }
    if m.unit.iter().chain(&m.multiplication).any(|&k| k >= c.morphism_count()) {
        return structure("monad component out of range");
    }
    let mut r = c.check().scoped("base");
    if !r.is_valid() {
        return Ok(r);
    }
    r.merge(m.endofunctor.check(c, c)?.scoped("endofunctor"));
    if !r.is_valid() {
        return Ok(r);
    }
    expect_components(&mut r, c, "unit_endpoints", &m.unit, |a| Arrow { src: a, tgt: m.t(a) });
    expect_components(&mut r, c, "multiplication_endpoints", &m.multiplication, |a| Arrow {
        src: m.t(m.t(a)),
        tgt: m.t(a),
    });
    if !r.is_valid() {
        return Ok(r);
    }
    for f in 0..c.morphism_count() {
        let Arrow { src, tgt } = c.arrow_of(f);
        expect_path(
            &mut r,
            c,
            "unit_naturality",
            &[f],
            &[f, m.unit[tgt]],
            &[m.unit[src], m.tm(f)],
        );
        expect_path(
            &mut r,
            c,
            "multiplication_naturality",
            &[f],
            &[m.tm(m.tm(f)), m.multiplication[tgt]],
            &[m.multiplication[src], m.tm(f)],
        );
    }
    for a in 0..n {
        let (ta, mu) = (m.t(a), m.multiplication[a]);
        expect_path(&mut r, c, "left_unit", &[a], &[m.tm(m.unit[a]), mu], &[c.identity(ta)]);
        expect_path(&mut r, c, "right_unit", &[a], &[m.unit[ta], mu], &[c.identity(ta)]);
        expect_path(
            &mut r,
            c,
            "associativity",
            &[a],
            &[m.tm(mu), mu],
            &[m.multiplication[ta], mu],
        );
    }
    Ok(r)
}

/// A monad functor from `S` on `C` to `T` on `D`: a functor `U: C → D`
/// with components `φ_c: TUc → USc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadFunctor {
    pub source: FinMonad,
    pub target: FinMonad,
    pub functor: Functor,
    pub phi: Vec<usize>,
}

impl MonadFunctor {
    pub fn identity(m: &FinMonad) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            functor: Functor::identity(&m.base),
            phi: (0..m.base.object_count()).map(|a| m.base.identity(m.t(a))).collect(),
        }
    }

    fn u(&self, a: usize) -> usize {
        self.functor.objects[a]
    }

    fn um(&self, f: usize) -> usize {
        self.functor.morphisms[f]
    }
}

/// Naturality of `φ`, compatibility with the units
/// (`φ ∘ η^T U = U η^S`) and with the multiplications
/// (`φ ∘ μ^T U = U μ^S ∘ φS ∘ Tφ`).
pub fn check_monad_functor(f: &MonadFunctor) -> Result<ValidationReport> {
    let (s, t) = (&f.source, &f.target);
    let (c, d) = (&s.base, &t.base);
    if f.phi.len() != c.object_count() || f.phi.iter().any(|&k| k >= d.morphism_count()) {
        return structure("phi components do not match the source category");
    }
    let mut r = f.functor.check(c, d)?.scoped("functor");
    if !r.is_valid() {
        return Ok(r);
    }
    expect_components(&mut r, d, "phi_endpoints", &f.phi, |a| Arrow {
        src: t.t(f.u(a)),
        tgt: f.u(s.t(a)),
    });
    if !r.is_valid() {
        return Ok(r);
    }
    for g in 0..c.morphism_count() {
        let Arrow { src, tgt } = c.arrow_of(g);
        expect_path(
            &mut r,
            d,
            "phi_naturality",
            &[g],
            &[t.tm(f.um(g)), f.phi[tgt]],
            &[f.phi[src], f.um(s.tm(g))],
        );
    }
    for a in 0..c.object_count() {
        let ua = f.u(a);
        expect_path(
            &mut r,
            d,
            "unit_compatibility",
            &[a],
            &[t.unit[ua], f.phi[a]],
            &[f.um(s.unit[a])],
        );
        expect_path(
            &mut r,
            d,
            "multiplication_compatibility",
            &[a],
            &[t.multiplication[ua], f.phi[a]],
            &[t.tm(f.phi[a]), f.phi[s.t(a)], f.um(s.multiplication[a])],
        );
    }
    Ok(r)
}

/// `(V, ψ) ∘ (U, φ) = (VU, Vφ ∘ ψU)`.
pub fn compose_monad_functors(second: &MonadFunctor, first: &MonadFunctor) -> Result<MonadFunctor> {
    if first.target != second.source {
        return Err(Error::Mismatch("monad functors are not composable".into()));
    }
    let e = &second.target.base;
    let phi = (0..first.source.base.object_count())
        .map(|a| e.compose_path(&[second.phi[first.u(a)], second.um(first.phi[a])]))
        .collect::<Option<Vec<usize>>>();
    match phi {
        Some(phi) => Ok(MonadFunctor {
            source: first.source.clone(),
            target: second.target.clone(),
            functor: second.functor.after(&first.functor),
            phi,
        }),
        None => structure("phi components do not compose"),
    }
}

/// A natural transformation `Γ: U ⇒ U'` between parallel monad functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadFunctorTransformation {
    pub source: MonadFunctor,
    pub target: MonadFunctor,
    pub gamma: Vec<usize>,
}

/// Naturality of `Γ` and the square `φ' ∘ TΓ = ΓS ∘ φ` at every object.
pub fn check_monad_transformation(t: &MonadFunctorTransformation) -> Result<ValidationReport> {
    let (f, g) = (&t.source, &t.target);
    if f.source != g.source || f.target != g.target {
        return Err(Error::Mismatch("monad functors are not parallel".into()));
    }
    let (s, tm) = (&f.source, &f.target);
    let (c, d) = (&s.base, &tm.base);
    if t.gamma.len() != c.object_count() || t.gamma.iter().any(|&k| k >= d.morphism_count()) {
        return structure("gamma components do not match the source category");
    }
    let mut r = ValidationReport::new();
    expect_components(&mut r, d, "gamma_endpoints", &t.gamma, |a| Arrow {
        src: f.u(a),
        tgt: g.u(a),
    });
    if !r.is_valid() {
        return Ok(r);
    }
    for h in 0..c.morphism_count() {
        let Arrow { src, tgt } = c.arrow_of(h);
        expect_path(
            &mut r,
            d,
            "naturality",
            &[h],
            &[f.um(h), t.gamma[tgt]],
            &[t.gamma[src], g.um(h)],
        );
    }
    for a in 0..c.object_count() {
        expect_path(
            &mut r,
            d,
            "square",
            &[a],
            &[tm.tm(t.gamma[a]), g.phi[a]],
            &[f.phi[a], t.gamma[s.t(a)]],
        );
    }
    Ok(r)
}

/// Vertical composite `second ∘ first`.
pub fn compose_monad_transformations(
    second: &MonadFunctorTransformation,
    first: &MonadFunctorTransformation,
) -> Result<MonadFunctorTransformation> {
    if first.target != second.source {
        return Err(Error::Mismatch(
            "monad functor transformations are not composable".into(),
        ));
    }
    let d = &first.source.target.base;
    let gamma = first
        .gamma
        .iter()
        .zip(&second.gamma)
        .map(|(&a, &b)| d.compose(b, a))
        .collect::<Option<Vec<usize>>>();
    match gamma {
        Some(gamma) => Ok(MonadFunctorTransformation {
            source: first.source.clone(),
            target: second.target.clone(),
            gamma,
        }),
        None => structure("gamma components do not compose"),
    }
}

/// All monad functors `S → T`.
pub fn enumerate_monad_functors(s: &FinMonad, t: &FinMonad) -> Vec<MonadFunctor> {
    let mut out = Vec::new();
    for functor in crate::category::enumerate_functors(&s.base, &t.base) {
        let choices: Vec<Vec<usize>> = (0..s.base.object_count())
            .map(|a| t.base.hom(t.t(functor.objects[a]), functor.objects[s.t(a)]))
            .collect();
        for phi in crate::monoidal::cartesian(&choices) {
            let candidate = MonadFunctor {
                source: s.clone(),
                target: t.clone(),
                functor: functor.clone(),
                phi,
            };
            if check_monad_functor(&candidate).map(|r| r.is_valid()).unwrap_or(false) {
                out.push(candidate);
            }
        }
    }
    out
}

/// The identity monad on the one-object category with the given table,
/// which need not be a monoid. Over one-object bases the monad, monad
/// functor and transformation checks collapse to the monoid, homomorphism
/// and naturality-element checks.
pub fn one_object_identity_monad(rows: &[Vec<usize>], unit: usize) -> Result<FinMonad> {
    Ok(FinMonad::identity(&FiniteCategory::one_object(rows, unit)?))
}

/// The monad functor between one-object identity monads given by a map of
/// elements, with `φ` the unit of the target.
pub fn one_object_monad_functor(source: &FinMonad, target: &FinMonad, map: &[usize]) -> MonadFunctor {
    MonadFunctor {
        source: source.clone(),
        target: target.clone(),
        functor: Functor {
            objects: vec![0],
            morphisms: map.to_vec(),
        },
        phi: vec![target.base.identity(0)],
    }
}

/// One comparison between a one-object monad check and the corresponding
/// monoid, homomorphism or naturality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseCase {
    pub kind: &'static str,
    pub data: Value,
    pub degenerate_verdict: bool,
    pub monad_verdict: bool,
}

impl CollapseCase {
    pub fn agrees(&self) -> bool {
        self.degenerate_verdict == self.monad_verdict
    }
}

/// Generate `count` seeded cases cycling through monads, monad functors and
/// transformations over one-object bases, about half of them valid.
pub fn collapse_cases(seed: u64, count: usize) -> Result<Vec<CollapseCase>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let monoids = all_monoids_up_to(3, false)?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let a = &monoids[rng.gen_range(0..monoids.len())];
        let b = &monoids[rng.gen_range(0..monoids.len())];
        let honest = rng.gen_bool(0.5);
        let case = match i % 3 {
            0 => {
                let (rows, unit) = if honest {
                    (a.rows(), a.unit())
                } else {
                    let n = a.size();
                    (
                        (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect()).collect(),
                        rng.gen_range(0..n),
                    )
                };
                CollapseCase {
                    kind: "monad",
                    data: json!({"mul": rows, "unit": unit}),
                    degenerate_verdict: check_monoid(&rows, unit)?.is_valid(),
                    monad_verdict: check_monad(&one_object_identity_monad(&rows, unit)?)?.is_valid(),
                }
            }
            1 => {
                let homs = enumerate_homs(a, b);
                let map: Vec<usize> = if honest {
                    homs[rng.gen_range(0..homs.len())].clone()
                } else {
                    (0..a.size()).map(|_| rng.gen_range(0..b.size())).collect()
                };
                let (ma, mb) = (
                    one_object_identity_monad(&a.rows(), a.unit())?,
                    one_object_identity_monad(&b.rows(), b.unit())?,
                );
                CollapseCase {
                    kind: "monad_functor",
                    data: json!({"source": a.rows(), "target": b.rows(), "map": map}),
                    degenerate_verdict: check_hom(a, b, &map)?.is_valid(),
                    monad_verdict: check_monad_functor(&one_object_monad_functor(&ma, &mb, &map))?.is_valid(),
                }
            }
            _ => {
                let homs = enumerate_homs(a, b);
                let f = &homs[rng.gen_range(0..homs.len())];
                let g = if honest { f } else { &homs[rng.gen_range(0..homs.len())] };
                let d = if honest { b.unit() } else { rng.gen_range(0..b.size()) };
                let (ma, mb) = (
                    one_object_identity_monad(&a.rows(), a.unit())?,
                    one_object_identity_monad(&b.rows(), b.unit())?,
                );
                let t = MonadFunctorTransformation {
                    source: one_object_monad_functor(&ma, &mb, f),
                    target: one_object_monad_functor(&ma, &mb, g),
                    gamma: vec![d],
                };
                let nat = check_nat_trans(
                    &MonoidHom::new(a.clone(), b.clone(), f.clone())?,
                    &MonoidHom::new(a.clone(), b.clone(), g.clone())?,
                    d,
                )?;
                CollapseCase {
                    kind: "monad_transformation",
                    data: json!({"source": a.rows(), "target": b.rows(), "F": f, "G": g, "d": d}),
                    degenerate_verdict: nat.is_valid(),
                    monad_verdict: check_monad_transformation(&t)?.is_valid(),
                }
            }
        };
        out.push(case);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteMonoid;

    #[test]
    fn identity_and_terminal_monads() {
        for base in [
            FiniteCategory::arrow(),
            FiniteCategory::codiscrete(2),
            FiniteCategory::discrete(3),
        ] {
            assert!(check_monad(&FinMonad::identity(&base)).unwrap().is_valid());
        }
        let m = FinMonad::constant_to_terminal();
        let r = check_monad(&m).unwrap();
        assert!(r.is_valid(), "{r}");
        let id = MonadFunctor::identity(&m);
        assert!(check_monad_functor(&id).unwrap().is_valid());
    }

    #[test]
    fn tampered_multiplication_is_localized() {
        // On the one-object category of Z/2 under the identity functor,
        // μ = g breaks the unit laws; with a non-idempotent table it breaks
        // associativity at the single object.
        let z2 = FiniteMonoid::cyclic(2);
        let mut m = one_object_identity_monad(&z2.rows(), 0).unwrap();
        m.multiplication[0] = 1;
        let r = check_monad(&m).unwrap();
        assert!(r.count("left_unit") == 1 && r.count("right_unit") == 1);
        assert_eq!(r.count("associativity"), 0);
        let mut m = FinMonad::constant_to_terminal();
        m.unit[0] = 0;
        let r = check_monad(&m).unwrap();
        assert_eq!(r.failed_axioms(), vec!["unit_endpoints"]);
    }

    #[test]
    fn monad_functors_on_the_arrow_example() {
        let m = FinMonad::constant_to_terminal();
        let fs = enumerate_monad_functors(&m, &m);
        // Oracle: U must send 1 to 1 (φ_1: T U1 = 1 → U1 needs a morphism
        // out of 1), so U is the identity or constant at 1; φ is forced.
        let maps: Vec<Vec<usize>> = fs.iter().map(|f| f.functor.objects.clone()).collect();
        assert_eq!(maps, vec![vec![0, 1], vec![1, 1]]);
        let constant = MonadFunctor {
            functor: Functor::constant(&m.base, &m.base, 0),
            phi: vec![0, 0],
            ..MonadFunctor::identity(&m)
        };
        let r = check_monad_functor(&constant).unwrap();
        assert_eq!(r.failed_axioms(), vec!["phi_endpoints"]);
        for g in &fs {
            for f in &fs {
                let gf = compose_monad_functors(g, f).unwrap();
                assert!(check_monad_functor(&gf).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn transformations_and_their_composites() {
        let m = FinMonad::constant_to_terminal();
        let id = MonadFunctor::identity(&m);
        let fs = enumerate_monad_functors(&m, &m);
        let mut valid = Vec::new();
        for f in &fs {
            for g in &fs {
                let choices: Vec<Vec<usize>> = (0..2).map(|a| m.base.hom(f.u(a), g.u(a))).collect();
                for gamma in crate::monoidal::cartesian(&choices) {
                    let t = MonadFunctorTransformation {
                        source: f.clone(),
                        target: g.clone(),
                        gamma,
                    };
                    if check_monad_transformation(&t).unwrap().is_valid() {
                        valid.push(t);
                    }
                }
            }
        }
        assert!(valid.iter().any(|t| t.source == id && t.target != id));
        for a in &valid {
            for b in valid.iter().filter(|b| b.source == a.target) {
                assert!(
                    check_monad_transformation(&compose_monad_transformations(b, a).unwrap())
                        .unwrap()
                        .is_valid()
                );
            }
        }
        let tampered = MonadFunctorTransformation {
            source: id.clone(),
            target: id.clone(),
            gamma: vec![2, 1],
        };
        let r = check_monad_transformation(&tampered).unwrap();
        assert_eq!(r.failed_axioms(), vec!["gamma_endpoints"]);
    }

    #[test]
    fn generated_collapse_cases_agree() {
        let cases = collapse_cases(5, 30).unwrap();
        assert!(cases.iter().all(CollapseCase::agrees));
        assert!(cases.iter().any(|c| c.degenerate_verdict) && cases.iter().any(|c| !c.degenerate_verdict));
    }

    #[test]
    fn one_object_collapse_matches_degenerate_categories() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=3);
            let rows: Vec<Vec<usize>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect()).collect();
            let unit = rng.gen_range(0..n);
            let monoid = check_monoid(&rows, unit).unwrap().is_valid();
            let monad = check_monad(&one_object_identity_monad(&rows, unit).unwrap())
                .unwrap()
                .is_valid();
            assert_eq!(monoid, monad, "{rows:?}");
        }
        let z2 = FiniteMonoid::cyclic(2);
        let or = FiniteMonoid::bool_or();
        for (a, b) in [(&z2, &z2), (&or, &z2), (&z2, &or), (&or, &or)] {
            let (ma, mb) = (
                one_object_identity_monad(&a.rows(), a.unit()).unwrap(),
                one_object_identity_monad(&b.rows(), b.unit()).unwrap(),
            );
            for map in crate::monoidal::cartesian(&vec![b.elements().collect(); a.size()]) {
                let hom = check_hom(a, b, &map).unwrap().is_valid();
                let f = one_object_monad_functor(&ma, &mb, &map);
                assert_eq!(hom, check_monad_functor(&f).unwrap().is_valid());
            }
            let homs = enumerate_homs(a, b);
            for f in &homs {
                for g in &homs {
                    for d in b.elements() {
                        let eq1 = check_nat_trans(
                            &MonoidHom::new(a.clone(), b.clone(), f.clone()).unwrap(),
                            &MonoidHom::new(a.clone(), b.clone(), g.clone()).unwrap(),
                            d,
                        )
                        .unwrap()
                        .is_valid();
                        let t = MonadFunctorTransformation {
                            source: one_object_monad_functor(&ma, &mb, f),
                            target: one_object_monad_functor(&ma, &mb, g),
                            gamma: vec![d],
                        };
                        assert_eq!(eq1, check_monad_transformation(&t).unwrap().is_valid());
                    }
                }
            }
        }
    }
}
