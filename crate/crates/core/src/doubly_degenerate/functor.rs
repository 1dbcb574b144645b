//! Weak and lax functors, transformations and modifications between doubly
//! degenerate bicategories, in raw and reduced form.
//!
//! A weak functor is a homomorphism `F` of the vertical monoids together
//! with the composition constraint `m2` and the unit constraint `m0`. The
//! unit axioms force `d_Y = F(d_X) · m2 · m0`, so `m0` is determined by
//! `m_F = m2`.

use serde_json::{json, Value};

use super::{extract_cmon_die, DDBicat};
use crate::algebra::{check_hom, enumerate_homs, CMonDIE, MonoidHom};
use crate::error::{structure, Error, Result};
use crate::report::ValidationReport;

/// A weak functor `(F, m_F)`; `m0` is stored as derived from the unit
/// equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DDFunctor {
    source: CMonDIE,
    target: CMonDIE,
    hom: MonoidHom,
    m_f: usize,
    m0: usize,
}

/// `m0 = d_Y · m2⁻¹ · (F d_X)⁻¹`, if the inverses exist.
pub fn unit_constraint(source: &CMonDIE, target: &CMonDIE, map: &[usize], m2: usize) -> Option<usize> {
    let y = target.monoid();
    let fd_inv = y.invert(map[source.die()])?;
    let m2_inv = y.invert(m2)?;
    Some(y.product(&[target.die(), m2_inv, fd_inv]))
}

impl DDFunctor {
    pub fn new(source: CMonDIE, target: CMonDIE, map: Vec<usize>, m_f: usize) -> Result<Self> {
        let hom = MonoidHom::new(source.monoid().clone(), target.monoid().clone(), map)?;
        if m_f >= target.monoid().size() {
            return structure(format!("m_F = {m_f} out of range"));
        }
        let m0 = unit_constraint(&source, &target, hom.map(), m_f)
            .ok_or_else(|| Error::Axioms(invertibility_report(m_f)))?;
        Ok(Self {
            source,
            target,
            hom,
            m_f,
            m0,
        })
    }

    pub fn identity(s: &CMonDIE) -> Self {
        Self::new(s.clone(), s.clone(), s.monoid().elements().collect(), s.monoid().unit())
            .expect("identity data is valid")
    }

    pub fn source(&self) -> &CMonDIE {
        &self.source
    }

    pub fn target(&self) -> &CMonDIE {
        &self.target
    }

    pub fn hom(&self) -> &MonoidHom {
        &self.hom
    }

    pub fn map(&self) -> &[usize] {
        self.hom.map()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.hom.apply(x)
    }

    pub fn m_f(&self) -> usize {
        self.m_f
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    pub fn to_json(&self) -> Value {
        json!({"map": self.map(), "m2": self.m_f, "m0": self.m0})
    }
}

fn invertibility_report(m: usize) -> ValidationReport {
    let mut r = ValidationReport::new();
    r.push("m2_invertible", vec![m], format!("{m} has no inverse"));
    r
}

/// The raw lax functor axioms, evaluated on the bicategory tables:
/// homomorphism of vertical monoids, naturality of the composition
/// constraint, associativity and both unit axioms.
pub fn lax_functor_report(b1: &DDBicat, b2: &DDBicat, map: &[usize], m2: usize, m0: usize) -> Result<ValidationReport> {
    b1.check_structure()?;
    b2.check_structure()?;
    let x = b1.vertical_monoid()?;
    let y = b2.vertical_monoid()?;
    if m2 >= b2.cells || m0 >= b2.cells {
        return structure("constraint cell out of range");
    }
    let mut r = check_hom(&x, &y, map)?.scoped("hom");
    if !r.is_valid() {
        return Ok(r);
    }
    let f = |c: usize| map[c];
    let one = b2.id2;
    for a in 0..b1.cells {
        for b in 0..b1.cells {
            let lhs = b2.v(f(b1.h(a, b)), m2);
            let rhs = b2.v(m2, b2.h(f(a), f(b)));
            r.expect(lhs == rhs, "constraint_naturality", &[a, b], || {
                format!("F({a}∗{b})∘m2 = {lhs} but m2∘(F{a}∗F{b}) = {rhs}")
            });
        }
    }
    let lhs = b2.vchain(&[f(b1.assoc), m2, b2.h(m2, one)]);
    let rhs = b2.vchain(&[m2, b2.h(one, m2), b2.assoc]);
    r.expect(lhs == rhs, "associativity", &[m2], || {
        format!("F(a)∘m2∘(m2∗1) = {lhs} but m2∘(1∗m2)∘a = {rhs}")
    });
    let lhs = b2.vchain(&[f(b1.lunit), m2, b2.h(m0, one)]);
    r.expect(lhs == b2.lunit, "lunit_axiom", &[m2, m0], || {
        format!("F(l)∘m2∘(m0∗1) = {lhs} but l = {}", b2.lunit)
    });
    let lhs = b2.vchain(&[f(b1.runit), m2, b2.h(one, m0)]);
    r.expect(lhs == b2.runit, "runit_axiom", &[m2, m0], || {
        format!("F(r)∘m2∘(1∗m0) = {lhs} but r = {}", b2.runit)
    });
    Ok(r)
}

/// Outcome of analysing raw weak functor data.
#[derive(Clone, Debug)]
pub struct FunctorAnalysis {
    pub report: ValidationReport,
    /// The reduced functor `(F, m_F = m2)` when the data is a weak functor.
    pub functor: Option<DDFunctor>,
    /// `d_Y · m2⁻¹ · (F d_X)⁻¹`, when defined.
    pub derived_m0: Option<usize>,
}

impl FunctorAnalysis {
    pub fn is_weak_functor(&self) -> bool {
        self.report.is_valid()
    }
}

/// Check raw weak functor data `(F, m2, m0)` between two valid doubly
/// degenerate bicategories.
pub fn analyze_weak_functor(
    b1: &DDBicat,
    b2: &DDBicat,
    map: &[usize],
    m2: usize,
    m0: usize,
) -> Result<FunctorAnalysis> {
    let x = extract_cmon_die(b1)?;
    let y = extract_cmon_die(b2)?;
    let mut report = lax_functor_report(b1, b2, map, m2, m0)?;
    let ym = y.monoid();
    report.expect(ym.is_invertible(m2), "m2_invertible", &[m2], || {
        format!("m2 = {m2} has no inverse")
    });
    report.expect(ym.is_invertible(m0), "m0_invertible", &[m0], || {
        format!("m0 = {m0} has no inverse")
    });
    if !report.is_valid() {
        let derived_m0 = if report.failed_axioms().iter().any(|a| a.starts_with("hom.")) {
            None
        } else {
            unit_constraint(&x, &y, map, m2)
        };
        return Ok(FunctorAnalysis {
            report,
            functor: None,
            derived_m0,
        });
    }
    let functor = DDFunctor::new(x, y, map.to_vec(), m2)?;
    report.expect(functor.m0 == m0, "m0_formula", &[m0, functor.m0], || {
        format!("supplied m0 = {m0} but d_Y·m2⁻¹·(Fd_X)⁻¹ = {}", functor.m0)
    });
    let derived_m0 = Some(functor.m0);
    Ok(FunctorAnalysis {
        functor: report.is_valid().then_some(functor),
        report,
        derived_m0,
    })
}

/// `(G, m_G) ∘ (F, m_F) = (GF, G(m_F) · m_G)`.
pub fn compose_dd_functors(g: &DDFunctor, f: &DDFunctor) -> Result<DDFunctor> {
    if f.target != g.source {
        return Err(Error::Mismatch(
            "target of the first functor is not the source of the second".into(),
        ));
    }
    let hom = g.hom.after(&f.hom)?;
    let z = g.target.monoid();
    let m = z.mul(g.apply(f.m_f), g.m_f);
    DDFunctor::new(f.source.clone(), g.target.clone(), hom.map().to_vec(), m)
}

/// Turn lax functor data into a weak functor by exhibiting the inverses
/// `m0⁻¹ = d_Y⁻¹ · F d_X · m2` and `m2⁻¹ = d_Y⁻¹ · F d_X · m0`.
pub fn promote_lax(b1: &DDBicat, b2: &DDBicat, map: &[usize], m2: usize, m0: usize) -> Result<DDFunctor> {
    let x = extract_cmon_die(b1)?;
    let y = extract_cmon_die(b2)?;
    let report = lax_functor_report(b1, b2, map, m2, m0)?;
    if !report.is_valid() {
        return Err(Error::Axioms(report));
    }
    let ym = y.monoid();
    let fd = map[x.die()];
    let m0_inv = ym.product(&[y.die_inv(), fd, m2]);
    let m2_inv = ym.product(&[y.die_inv(), fd, m0]);
    for (name, c, inv) in [("m0", m0, m0_inv), ("m2", m2, m2_inv)] {
        if ym.mul(c, inv) != ym.unit() || ym.mul(inv, c) != ym.unit() {
            return Err(Error::Refutation(format!("{name} = {c} is not inverted by {inv}")));
        }
    }
    let f = DDFunctor::new(x, y, map.to_vec(), m2)?;
    if f.m0 != m0 {
        return Err(Error::Refutation(format!(
            "m0 = {m0} disagrees with the derived {}",
            f.m0
        )));
    }
    Ok(f)
}

/// All weak functors `(F, m_F)` between two structures.
pub fn enumerate_weak_functors(source: &CMonDIE, target: &CMonDIE) -> Vec<DDFunctor> {
    let mut out = Vec::new();
    for map in enumerate_homs(source.monoid(), target.monoid()) {
        for m in target.monoid().invertibles() {
            out.push(DDFunctor::new(source.clone(), target.clone(), map.clone(), m).expect("enumerated data is valid"));
        }
    }
    out
}

/// A transformation between weak functors, given by its single 2-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DDTransformation {
    source: DDFunctor,
    target: DDFunctor,
    sigma: usize,
}

/// The reduced transformation axioms: naturality `Fα · σ = σ · Gα`, the
/// associator axiom `σ² · m_F = σ · m_G` and the unit axiom
/// `σ · m_F · F d_X = m_G · G d_X`.
pub fn transformation_axioms(f: &DDFunctor, g: &DDFunctor, sigma: usize) -> Result<ValidationReport> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::Mismatch("functors are not parallel".into()));
    }
    let y = f.target.monoid();
    if sigma >= y.size() {
        return structure(format!("sigma = {sigma} out of range"));
    }
    let mut r = ValidationReport::new();
    for a in f.source.monoid().elements() {
        let lhs = y.mul(f.apply(a), sigma);
        let rhs = y.mul(sigma, g.apply(a));
        r.expect(lhs == rhs, "naturality", &[a], || {
            format!("F{a}·σ = {lhs} but σ·G{a} = {rhs}")
        });
    }
    let lhs = y.product(&[sigma, sigma, f.m_f]);
    let rhs = y.mul(sigma, g.m_f);
    r.expect(lhs == rhs, "associator_axiom", &[sigma], || {
        format!("σ²·m_F = {lhs} but σ·m_G = {rhs}")
    });
    let d = f.source.die();
    let lhs = y.product(&[sigma, f.m_f, f.apply(d)]);
    let rhs = y.mul(g.m_f, g.apply(d));
    r.expect(lhs == rhs, "unit_axiom", &[sigma], || {
        format!("σ·m_F·Fd = {lhs} but m_G·Gd = {rhs}")
    });
    Ok(r)
}

/// Every `σ` satisfying the transformation axioms, invertible or not.
pub fn enumerate_lax_transformations(f: &DDFunctor, g: &DDFunctor) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for s in f.target.monoid().elements() {
        if transformation_axioms(f, g, s)?.is_valid() {
            out.push(s);
        }
    }
    Ok(out)
}

/// The unique transformation `f ⇒ g`, `σ = m_G · m_F⁻¹`, when the
/// underlying homomorphisms agree.
pub fn transformation_between(f: &DDFunctor, g: &DDFunctor) -> Option<DDTransformation> {
    if f.source != g.source || f.target != g.target || f.hom != g.hom {
        return None;
    }
    let y = f.target.monoid();
    let sigma = y.mul(g.m_f, y.invert(f.m_f)?);
    Some(DDTransformation {
        source: f.clone(),
        target: g.clone(),
        sigma,
    })
}

impl DDTransformation {
    pub fn new(source: DDFunctor, target: DDFunctor, sigma: usize) -> Result<Self> {
        let mut r = transformation_axioms(&source, &target, sigma)?;
        r.expect(
            source.target.monoid().is_invertible(sigma),
            "sigma_invertible",
            &[sigma],
            || format!("σ = {sigma} has no inverse"),
        );
        r.into_result(Self { source, target, sigma })
    }

    pub fn identity(f: &DDFunctor) -> Self {
        Self {
            source: f.clone(),
            target: f.clone(),
            sigma: f.target.monoid().unit(),
        }
    }

    pub fn source(&self) -> &DDFunctor {
        &self.source
    }

    pub fn target(&self) -> &DDFunctor {
        &self.target
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn check(&self) -> ValidationReport {
        transformation_axioms(&self.source, &self.target, self.sigma).expect("parallel by construction")
    }

    /// Vertical composite `other ∘ self`, with component `σ' · σ`.
    pub fn then(&self, other: &DDTransformation) -> Result<DDTransformation> {
        if self.target != other.source {
            return Err(Error::Mismatch("transformations are not composable".into()));
        }
        let y = self.source.target.monoid();
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            sigma: y.mul(other.sigma, self.sigma),
        })
    }
}

/// A modification of a transformation to itself, given by any element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DDModification {
    boundary: DDTransformation,
    gamma: usize,
}

impl DDModification {
    pub fn new(boundary: DDTransformation, gamma: usize) -> Result<Self> {
        if gamma >= boundary.source.target.monoid().size() {
            return structure(format!("gamma = {gamma} out of range"));
        }
        Ok(Self { boundary, gamma })
    }

    pub fn boundary(&self) -> &DDTransformation {
        &self.boundary
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }
}

/// `σ · Γ = Γ · σ`.
pub fn check_modification(m: &DDModification) -> ValidationReport {
    let y = m.boundary.source.target.monoid();
    let (s, g) = (m.boundary.sigma, m.gamma);
    let mut r = ValidationReport::new();
    r.expect(y.mul(s, g) == y.mul(g, s), "modification_square", &[s, g], || {
        format!("σ·Γ = {} but Γ·σ = {}", y.mul(s, g), y.mul(g, s))
    });
    r
}

#[cfg(test)]
mod tests {
    use super::super::build_ddbicat;
    use super::*;
    use crate::algebra::{enumerate_cmon_dies, FiniteMonoid};

    fn z2(d: usize) -> CMonDIE {
        CMonDIE::new(FiniteMonoid::cyclic(2), d).unwrap()
    }

    #[test]
    fn identity_functor_analysis() {
        let b = build_ddbicat(&z2(0));
        assert!(super::super::check_ddbicat(&b).unwrap().is_valid());
        let a = analyze_weak_functor(&b, &b, &[0, 1], 0, 0).unwrap();
        assert!(a.is_weak_functor(), "{}", a.report);
        assert_eq!(a.functor.unwrap(), DDFunctor::identity(&z2(0)));
    }

    #[test]
    fn m0_is_forced_by_the_unit_equation() {
        let b = build_ddbicat(&z2(1));
        let a = analyze_weak_functor(&b, &b, &[0, 1], 1, 1).unwrap();
        assert!(a.is_weak_functor(), "{}", a.report);
        assert_eq!(a.functor.unwrap().m0(), 1);
        let bad = analyze_weak_functor(&b, &b, &[0, 1], 1, 0).unwrap();
        assert!(!bad.is_weak_functor());
        assert!(bad.report.count("lunit_axiom") == 1 && bad.report.count("runit_axiom") == 1);
        assert_eq!(bad.derived_m0, Some(1));
    }

    #[test]
    fn composition_law() {
        let s = z2(1);
        let f = DDFunctor::new(s.clone(), s.clone(), vec![0, 1], 1).unwrap();
        let id = DDFunctor::identity(&s);
        assert_eq!(compose_dd_functors(&f, &f).unwrap().m_f(), 0);
        assert_eq!(compose_dd_functors(&id, &f).unwrap(), f);
        assert_eq!(compose_dd_functors(&f, &id).unwrap(), f);
        let other = DDFunctor::identity(&z2(0));
        assert!(matches!(compose_dd_functors(&other, &f), Err(Error::Mismatch(_))));
    }

    #[test]
    fn lax_promotion() {
        let b = build_ddbicat(&z2(0));
        let f = promote_lax(&b, &b, &[0, 1], 1, 1).unwrap();
        assert_eq!((f.m_f(), f.m0()), (1, 1));
        let id = promote_lax(&b, &b, &[0, 1], 0, 0).unwrap();
        assert_eq!(id, DDFunctor::identity(&z2(0)));
        // Into the boolean OR monoid, m0 = 1 can never satisfy the unit
        // equation.
        let or = build_ddbicat(&CMonDIE::with_unit_die(FiniteMonoid::bool_or()).unwrap());
        for map in [[0usize, 0], [0, 1]] {
            for m2 in 0..2 {
                assert!(matches!(promote_lax(&b, &or, &map, m2, 1), Err(Error::Axioms(_))));
            }
        }
    }

    #[test]
    fn transformations_exist_iff_homs_agree() {
        let s = z2(1);
        let f = DDFunctor::new(s.clone(), s.clone(), vec![0, 1], 1).unwrap();
        let g = DDFunctor::new(s.clone(), s.clone(), vec![0, 1], 0).unwrap();
        assert_eq!(transformation_between(&f, &f).unwrap().sigma(), 0);
        let t = transformation_between(&f, &g).unwrap();
        assert_eq!(t.sigma(), 1);
        assert!(t.check().is_valid());
        let k = DDFunctor::new(s.clone(), s.clone(), vec![0, 0], 1).unwrap();
        assert!(transformation_between(&f, &k).is_none());
        assert!(enumerate_lax_transformations(&f, &k).unwrap().is_empty());
    }

    #[test]
    fn lax_transformations_are_unique_and_invertible() {
        let dies = enumerate_cmon_dies(3).unwrap();
        for x in &dies {
            for y in &dies {
                let fs = enumerate_weak_functors(x, y);
                for f in &fs {
                    for g in &fs {
                        let all = enumerate_lax_transformations(f, g).unwrap();
                        match transformation_between(f, g) {
                            Some(t) => assert_eq!(all, vec![t.sigma()]),
                            None => assert!(all.is_empty()),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn modifications() {
        let s = z2(0);
        let t = DDTransformation::identity(&DDFunctor::identity(&s));
        for gamma in 0..2 {
            assert!(check_modification(&DDModification::new(t.clone(), gamma).unwrap()).is_valid());
        }
        let or = CMonDIE::with_unit_die(FiniteMonoid::bool_or()).unwrap();
        let t = DDTransformation::identity(&DDFunctor::identity(&or));
        assert!(check_modification(&DDModification::new(t, 1).unwrap()).is_valid());
    }
}
