//! Categories with a single object. Composition of the endomorphisms of the
//! object is a monoid, functors are monoid homomorphisms, and a natural
//! transformation between two functors is an element `d` of the target with
//! `d · Fx = Gx · d` for every `x`.

use serde_json::{json, Value};

use crate::algebra::{enumerate_homs, enumerate_monoids, FiniteMonoid, MonoidHom};
use crate::category::{enumerate_functors, FiniteCategory, Functor};
use crate::equiv::{build_1category, check_external_equivalence, JFunctor};
use crate::error::{Error, Result};
use crate::report::{EquivalenceReport, ValidationReport};

/// Label of the single object.
pub const OBJECT_LABEL: &str = "∗";

/// A one-object category; its morphisms under composition form `hom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegenerateCategory {
    hom: FiniteMonoid,
}

impl DegenerateCategory {
    pub fn object_label(&self) -> &'static str {
        OBJECT_LABEL
    }

    pub fn hom(&self) -> &FiniteMonoid {
        &self.hom
    }

    pub fn morphism_count(&self) -> usize {
        self.hom.size()
    }

    /// The same data as a general finite category.
    pub fn as_category(&self) -> FiniteCategory {
        FiniteCategory::one_object(&self.hom.rows(), self.hom.unit()).expect("square table")
    }
}

/// Forget the single object.
pub fn cat_to_monoid(c: &DegenerateCategory) -> FiniteMonoid {
    c.hom.clone()
}

/// The one-object category on `∗` whose composition is `m`.
pub fn monoid_to_cat(m: FiniteMonoid) -> DegenerateCategory {
    DegenerateCategory { hom: m }
}

/// A natural transformation `F ⇒ G` between functors of degenerate
/// categories, given by its single component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegNatTrans {
    source_functor: MonoidHom,
    target_functor: MonoidHom,
    component: usize,
}

/// Check `d · Fx = Gx · d` for every `x`.
pub fn check_nat_trans(f: &MonoidHom, g: &MonoidHom, d: usize) -> Result<ValidationReport> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Mismatch("functors are not parallel".into()));
    }
    let y = f.target();
    if d >= y.size() {
        return Err(Error::Structure(format!("component {d} out of range 0..{}", y.size())));
    }
    let mut report = ValidationReport::new();
    for x in f.source().elements() {
        let lhs = y.mul(d, f.apply(x));
        let rhs = y.mul(g.apply(x), d);
        report.expect(lhs == rhs, "naturality", &[x], || {
            format!("d·F({x}) = {lhs} but G({x})·d = {rhs}")
        });
    }
    Ok(report)
}

impl DegNatTrans {
    pub fn new(f: MonoidHom, g: MonoidHom, d: usize) -> Result<Self> {
        check_nat_trans(&f, &g, d)?.into_result(Self {
            source_functor: f,
            target_functor: g,
            component: d,
        })
    }

    /// The identity transformation on `f`.
    pub fn identity(f: &MonoidHom) -> Self {
        Self {
            source_functor: f.clone(),
            target_functor: f.clone(),
            component: f.target().unit(),
        }
    }

    pub fn source_functor(&self) -> &MonoidHom {
        &self.source_functor
    }

    pub fn target_functor(&self) -> &MonoidHom {
        &self.target_functor
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn is_identity(&self) -> bool {
        self.source_functor == self.target_functor && self.component == self.source_functor.target().unit()
    }

    /// Vertical composite `other ∘ self`; the component is `d' · d`.
    pub fn then(&self, other: &DegNatTrans) -> Result<DegNatTrans> {
        if self.target_functor != other.source_functor {
            return Err(Error::Mismatch("transformations are not composable".into()));
        }
        let d = self.source_functor.target().mul(other.component, self.component);
        Ok(Self {
            source_functor: self.source_functor.clone(),
            target_functor: other.target_functor.clone(),
            component: d,
        })
    }
}

/// A transformation `id ⇒ id` on `m` with a non-unit component, if `m` has
/// a central element other than the unit.
pub fn find_nonidentity_nat_trans(m: &FiniteMonoid) -> Option<DegNatTrans> {
    let id = MonoidHom::identity(m);
    m.center().into_iter().find(|&d| d != m.unit()).map(|d| DegNatTrans {
        source_functor: id.clone(),
        target_functor: id,
        component: d,
    })
}

fn describe_monoid(m: &FiniteMonoid) -> Value {
    json!({"unit": m.unit(), "mul": m.rows()})
}

/// Check that forgetting the object is an equivalence from the category of
/// the sampled degenerate categories to the category of monoids of the
/// represented sizes, and that it is bijective on objects.
///
/// Functors on the category side are enumerated as functors of finite
/// categories, independently of the homomorphism enumeration on the monoid
/// side.
pub fn phi1_check(sample: &[DegenerateCategory]) -> Result<EquivalenceReport> {
    let mut cats: Vec<DegenerateCategory> = sample.to_vec();
    cats.sort();
    cats.dedup();
    let mut monoids: Vec<FiniteMonoid> = cats.iter().map(cat_to_monoid).collect();
    let mut sizes: Vec<usize> = monoids.iter().map(FiniteMonoid::size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for n in sizes {
        monoids.extend(enumerate_monoids(n, false)?);
    }
    monoids.sort();
    monoids.dedup();
    let bound = monoids.iter().map(FiniteMonoid::size).max();

    let as_cats: Vec<FiniteCategory> = cats.iter().map(DegenerateCategory::as_category).collect();
    let functors: Vec<Vec<Vec<Functor>>> = as_cats
        .iter()
        .map(|a| as_cats.iter().map(|b| enumerate_functors(a, b)).collect())
        .collect();
    let homs: Vec<Vec<Vec<Vec<usize>>>> = monoids
        .iter()
        .map(|a| monoids.iter().map(|b| enumerate_homs(a, b)).collect())
        .collect();

    let idx: Vec<usize> = (0..cats.len()).collect();
    let source = build_1category(
        &idx,
        |&x, &y| functors[x][y].clone(),
        |&x| Functor::identity(&as_cats[x]),
        |g, f| g.after(f),
        |&x| json!({"object": OBJECT_LABEL, "hom": describe_monoid(&cats[x].hom)}),
        |f| json!(f.morphisms),
    );
    let tdx: Vec<usize> = (0..monoids.len()).collect();
    let target = build_1category(
        &tdx,
        |&x, &y| homs[x][y].clone(),
        |&x| monoids[x].elements().collect::<Vec<_>>(),
        |g: &Vec<usize>, f: &Vec<usize>| f.iter().map(|&x| g[x]).collect(),
        |&x| describe_monoid(&monoids[x]),
        |f| json!(f),
    );

    let on_objects: Vec<usize> = cats
        .iter()
        .map(|c| monoids.binary_search(&c.hom).expect("image is in the target"))
        .collect();
    let mut unmatched: Option<Value> = None;
    let functor = JFunctor::from_fn(&source, on_objects.clone(), |x1, x2, k| {
        let image = &functors[x1][x2][k].morphisms;
        match homs[on_objects[x1]][on_objects[x2]].iter().position(|h| h == image) {
            Some(i) => i,
            None => {
                unmatched.get_or_insert_with(|| json!({"functor": image}));
                usize::MAX
            }
        }
    });
    let mut report = EquivalenceReport::new("phi1", bound);
    report.record("functors_are_homomorphisms", 1, unmatched.is_none(), unmatched.clone());
    if unmatched.is_some() {
        return Ok(report);
    }
    let round_trip = cats.iter().find(|c| monoid_to_cat(cat_to_monoid(c)) != **c);
    report.record(
        "strict_inverse",
        0,
        round_trip.is_none(),
        round_trip.map(|c| describe_monoid(&c.hom)),
    );
    let missed = (0..monoids.len()).find(|y| !on_objects.contains(y));
    report.record(
        "surjective_on_objects",
        0,
        missed.is_none(),
        missed.map(|y| json!({"missed": describe_monoid(&monoids[y])})),
    );
    report.merge(check_external_equivalence("phi1", bound, &source, &target, &functor));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::all_monoids_up_to;

    fn z2() -> FiniteMonoid {
        FiniteMonoid::cyclic(2)
    }

    #[test]
    fn projection_and_inverse() {
        for m in [FiniteMonoid::trivial(), z2(), FiniteMonoid::bool_or()] {
            let c = monoid_to_cat(m.clone());
            assert_eq!(c.object_label(), "∗");
            assert_eq!(c.morphism_count(), m.size());
            assert!(c.as_category().check().is_valid());
            assert_eq!(cat_to_monoid(&c), m);
        }
        let t = monoid_to_cat(FiniteMonoid::trivial()).as_category();
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
    }

    #[test]
    fn naturality_equation() {
        let id = MonoidHom::identity(&z2());
        let unit = MonoidHom::to_unit(&z2(), &z2());
        assert!(check_nat_trans(&id, &id, 0).unwrap().is_valid());
        assert!(check_nat_trans(&id, &id, 1).unwrap().is_valid());
        let r = check_nat_trans(&id, &unit, 0).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].at, vec![1]);
        let other = MonoidHom::identity(&FiniteMonoid::bool_or());
        assert!(matches!(check_nat_trans(&id, &other, 0), Err(Error::Mismatch(_))));
    }

    #[test]
    fn nonidentity_transformations() {
        let t = find_nonidentity_nat_trans(&z2()).unwrap();
        assert_eq!(t.component(), 1);
        assert!(!t.is_identity());
        assert!(find_nonidentity_nat_trans(&FiniteMonoid::trivial()).is_none());
        assert!(find_nonidentity_nat_trans(&FiniteMonoid::left_zero_with_unit(2)).is_none());
    }

    #[test]
    fn every_nontrivial_commutative_monoid_has_a_nonidentity_transformation() {
        for m in all_monoids_up_to(4, true).unwrap() {
            let found = find_nonidentity_nat_trans(&m);
            assert_eq!(found.is_some(), m.size() > 1, "{m:?}");
            if let Some(t) = found {
                let report = check_nat_trans(t.source_functor(), t.target_functor(), t.component()).unwrap();
                assert!(report.is_valid());
            }
        }
    }

    #[test]
    fn vertical_composition_multiplies_components() {
        let id = MonoidHom::identity(&z2());
        let g = DegNatTrans::new(id.clone(), id.clone(), 1).unwrap();
        let gg = g.then(&g).unwrap();
        assert!(gg.is_identity());
        assert_eq!(DegNatTrans::identity(&id).then(&g).unwrap(), g);
    }

    #[test]
    fn phi1_on_small_universes() {
        let sample: Vec<DegenerateCategory> = all_monoids_up_to(3, false)
            .unwrap()
            .into_iter()
            .map(monoid_to_cat)
            .collect();
        let report = phi1_check(&sample).unwrap();
        assert!(report.is_equivalence(), "{report}");
        assert!(report.holds("surjective_on_objects"));
        let single = phi1_check(&[monoid_to_cat(FiniteMonoid::trivial())]).unwrap();
        assert!(single.is_equivalence(), "{single}");
    }

    #[test]
    fn phi1_reports_missing_objects_for_an_unclosed_sample() {
        // Z/2 alone misses the boolean OR monoid of the same size.
        let report = phi1_check(&[monoid_to_cat(z2())]).unwrap();
        assert!(!report.holds("surjective_on_objects"));
        assert!(!report.holds("essentially_surjective"));
        assert!(report.holds("locally_faithful"));
    }
}
