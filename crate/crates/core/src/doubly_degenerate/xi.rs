//! The comparison functors `ξ_j` from doubly degenerate bicategories to
//! commutative monoids, which forget every distinguished element.

use serde_json::{json, Value};

use super::functor::{enumerate_weak_functors, transformation_between};
use super::{compose_dd_functors, DDFunctor, DDModification, DDTransformation};
use crate::algebra::{enumerate_cmon_dies, enumerate_homs, enumerate_monoids, CMonDIE, FiniteMonoid, MonoidHom};
use crate::equiv::{
    build_1category, build_2category, check_external_equivalence, FiniteJCategory, JFunctor, TwoCategoryData,
};
use crate::error::{structure, Result};
use crate::report::EquivalenceReport;

/// A cell of the totality of doubly degenerate bicategories.
#[derive(Clone, Copy, Debug)]
pub enum BicatCell<'a> {
    Object(&'a CMonDIE),
    Functor(&'a DDFunctor),
    Transformation(&'a DDTransformation),
    Modification(&'a DDModification),
}

/// Image of a cell under `ξ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiImage {
    Monoid(FiniteMonoid),
    Hom(MonoidHom),
    /// The identity 2-cell on a homomorphism.
    Identity2(MonoidHom),
    /// The identity 3-cell on the identity 2-cell of a homomorphism.
    Identity3(MonoidHom),
}

/// Apply `ξ_j` to a cell of dimension at most `j`.
pub fn xi(j: usize, cell: BicatCell<'_>) -> Result<XiImage> {
    let dim = match cell {
        BicatCell::Object(_) => 0,
        BicatCell::Functor(_) => 1,
        BicatCell::Transformation(_) => 2,
        BicatCell::Modification(_) => 3,
    };
    if !(1..=3).contains(&j) {
        return structure(format!("ξ_j is defined for j = 1, 2, 3, not {j}"));
    }
    if dim > j {
        return structure(format!("a {dim}-cell has no image under ξ_{j}"));
    }
    Ok(match cell {
        BicatCell::Object(s) => XiImage::Monoid(s.monoid().clone()),
        BicatCell::Functor(f) => XiImage::Hom(f.hom().clone()),
        BicatCell::Transformation(t) => XiImage::Identity2(t.source().hom().clone()),
        BicatCell::Modification(m) => XiImage::Identity3(m.boundary().source().hom().clone()),
    })
}

/// Two distinct cells with the same image under `ξ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiUnfaithful {
    Functors(DDFunctor, DDFunctor),
    Modifications(DDModification, DDModification),
}

impl XiUnfaithful {
    pub fn to_json(&self) -> Value {
        match self {
            XiUnfaithful::Functors(a, b) => json!({"functors": [a.to_json(), b.to_json()]}),
            XiUnfaithful::Modifications(a, b) => json!({
                "transformation": {"functor": a.boundary().source().to_json(), "sigma": a.boundary().sigma()},
                "gammas": [a.gamma(), b.gamma()],
            }),
        }
    }
}

/// A pair of cells witnessing that `ξ_1` is not faithful (two functors
/// `Y -> Y` differing only in `m_F`) or that `ξ_3` is not locally faithful
/// (two modifications of the identity transformation differing in `Γ`).
pub fn witness_xi_unfaithful(j: usize, y: &CMonDIE) -> Result<Option<XiUnfaithful>> {
    let m = y.monoid();
    let id = DDFunctor::identity(y);
    match j {
        1 => {
            let Some(g) = m.invertibles().into_iter().find(|&g| g != m.unit()) else {
                return Ok(None);
            };
            let twisted = DDFunctor::new(y.clone(), y.clone(), m.elements().collect(), g)?;
            Ok(Some(XiUnfaithful::Functors(id, twisted)))
        }
        3 => {
            let Some(g) = m.elements().find(|&g| g != m.unit()) else {
                return Ok(None);
            };
            let t = DDTransformation::identity(&id);
            Ok(Some(XiUnfaithful::Modifications(
                DDModification::new(t.clone(), m.unit())?,
                DDModification::new(t, g)?,
            )))
        }
        _ => structure(format!(
            "faithfulness witnesses are produced for j = 1 and j = 3, not {j}"
        )),
    }
}

fn describe_die(s: &CMonDIE) -> Value {
    json!({"unit": s.monoid().unit(), "mul": s.monoid().rows(), "die": s.die()})
}

fn describe_monoid(m: &FiniteMonoid) -> Value {
    json!({"unit": m.unit(), "mul": m.rows()})
}

struct Universe {
    dies: Vec<CMonDIE>,
    functors: Vec<Vec<Vec<DDFunctor>>>,
    monoids: Vec<FiniteMonoid>,
    homs: Vec<Vec<Vec<Vec<usize>>>>,
}

impl Universe {
    fn new(bound: usize, keep: impl Fn(&DDFunctor) -> bool) -> Result<Self> {
        let dies = enumerate_cmon_dies(bound)?;
        let functors = dies
            .iter()
            .map(|x| {
                dies.iter()
                    .map(|y| enumerate_weak_functors(x, y).into_iter().filter(&keep).collect())
                    .collect()
            })
            .collect();
        let mut monoids = Vec::new();
        for n in 1..=bound {
            monoids.extend(enumerate_monoids(n, true)?);
        }
        let homs = monoids
            .iter()
            .map(|a| monoids.iter().map(|b| enumerate_homs(a, b)).collect())
            .collect();
        Ok(Self {
            dies,
            functors,
            monoids,
            homs,
        })
    }

    fn monoid_index(&self, s: &CMonDIE) -> usize {
        self.monoids
            .iter()
            .position(|m| m == s.monoid())
            .expect("enumerations share canonical forms")
    }

    fn object_map(&self) -> Vec<usize> {
        self.dies.iter().map(|s| self.monoid_index(s)).collect()
    }

    fn hom_index(&self, x1: usize, x2: usize, f: &DDFunctor) -> usize {
        let (y1, y2) = (self.monoid_index(&self.dies[x1]), self.monoid_index(&self.dies[x2]));
        self.homs[y1][y2]
            .iter()
            .position(|h| h == f.map())
            .expect("a homomorphism")
    }

    /// Doubly degenerate bicategories and weak functors.
    fn source_1category(&self) -> FiniteJCategory {
        let idx: Vec<usize> = (0..self.dies.len()).collect();
        build_1category(
            &idx,
            |&x, &y| self.functors[x][y].clone(),
            |&x| DDFunctor::identity(&self.dies[x]),
            |g, f| compose_dd_functors(g, f).expect("composable within a hom"),
            |&x| describe_die(&self.dies[x]),
            DDFunctor::to_json,
        )
    }

    /// Additionally with transformations as 2-cells.
    fn source_2category(&self) -> FiniteJCategory {
        let idx: Vec<usize> = (0..self.dies.len()).collect();
        build_2category(
            TwoCategoryData {
                objects: &idx,
                hom1: &|&x, &y| self.functors[x][y].clone(),
                hom2: &|_, _, f, g| transformation_between(f, g).into_iter().collect(),
                identity1: &|&x| DDFunctor::identity(&self.dies[x]),
                identity2: &DDTransformation::identity,
                describe_object: &|&x| describe_die(&self.dies[x]),
                describe_1cell: &DDFunctor::to_json,
                describe_2cell: &|t| json!({"sigma": t.sigma()}),
            },
            |g, f| compose_dd_functors(g, f).expect("composable within a hom"),
            |b: &DDTransformation, a: &DDTransformation| a.then(b).expect("composable within a hom"),
        )
    }

    fn target_category(&self, dim: usize) -> FiniteJCategory {
        let idx: Vec<usize> = (0..self.monoids.len()).collect();
        let one = build_1category(
            &idx,
            |&x, &y| self.homs[x][y].clone(),
            |&x| self.monoids[x].elements().collect::<Vec<_>>(),
            |g: &Vec<usize>, f: &Vec<usize>| f.iter().map(|&x| g[x]).collect(),
            |&x| describe_monoid(&self.monoids[x]),
            |f| json!(f),
        );
        if dim == 1 {
            return one;
        }
        // The discrete 2-category: only identity 2-cells.
        let homs = (0..idx.len())
            .map(|x| {
                (0..idx.len())
                    .map(|y| {
                        let h = one.hom(x, y);
                        FiniteJCategory::discrete(1, h.labels().to_vec())
                    })
                    .collect()
            })
            .collect();
        let identities = (0..idx.len()).map(|x| one.identity(x)).collect();
        let cat = one.clone();
        FiniteJCategory::new(
            2,
            one.labels().to_vec(),
            homs,
            identities,
            std::sync::Arc::new(move |x, y, z, g, f| cat.compose(x, y, z, g, f)),
        )
    }

    fn xi1(&self, source: &FiniteJCategory) -> JFunctor {
        JFunctor::from_fn(source, self.object_map(), |x1, x2, k| {
            self.hom_index(x1, x2, &self.functors[x1][x2][k])
        })
    }

    fn xi2(&self, source: &FiniteJCategory) -> JFunctor {
        let n = self.dies.len();
        let local = (0..n)
            .map(|x1| {
                (0..n)
                    .map(|x2| {
                        let fs = &self.functors[x1][x2];
                        let objects: Vec<usize> = fs.iter().map(|f| self.hom_index(x1, x2, f)).collect();
                        let hom = source.hom(x1, x2);
                        // Every 2-cell goes to the unique (identity) 2-cell.
                        JFunctor::from_fn(hom, objects, |_, _, _| 0)
                    })
                    .collect()
            })
            .collect();
        JFunctor::new(self.object_map(), local)
    }

    fn record_surjective_on_objects(&self, report: &mut EquivalenceReport) {
        let missed = self
            .monoids
            .iter()
            .find(|m| !self.dies.iter().any(|s| s.monoid() == *m));
        report.record(
            "surjective_on_objects",
            0,
            missed.is_none(),
            missed.map(|m| json!({"missed": describe_monoid(m)})),
        );
    }
}

/// The category of doubly degenerate bicategories with at most `bound`
/// cells and weak functors.
pub fn bicat2_1(bound: usize) -> Result<FiniteJCategory> {
    Ok(Universe::new(bound, |_| true)?.source_1category())
}

/// The strict 2-category of doubly degenerate bicategories with at most
/// `bound` cells, weak functors and transformations.
pub fn bicat2_2(bound: usize) -> Result<FiniteJCategory> {
    Ok(Universe::new(bound, |_| true)?.source_2category())
}

/// Check that `ξ_2` is a 2-equivalence over all structures of size at most
/// `bound`.
pub fn check_xi2_equivalence(bound: usize) -> Result<EquivalenceReport> {
    let u = Universe::new(bound, |_| true)?;
    let source = u.source_2category();
    let target = u.target_category(2);
    let functor = u.xi2(&source);
    let mut report = EquivalenceReport::new("xi2", Some(bound));
    let valid = functor.check(&source, &target);
    report.record(
        "strict_2functor",
        2,
        valid.is_valid(),
        (!valid.is_valid()).then(|| json!(valid.to_string())),
    );
    u.record_surjective_on_objects(&mut report);
    report.merge(check_external_equivalence(
        "xi2",
        Some(bound),
        &source,
        &target,
        &functor,
    ));
    Ok(report)
}

/// Check `ξ_1` over all structures of size at most `bound`; faithfulness
/// fails as soon as some target has a non-unit invertible element.
pub fn check_xi1_equivalence(bound: usize) -> Result<EquivalenceReport> {
    let u = Universe::new(bound, |_| true)?;
    let source = u.source_1category();
    let target = u.target_category(1);
    let functor = u.xi1(&source);
    Ok(check_external_equivalence(
        "xi1",
        Some(bound),
        &source,
        &target,
        &functor,
    ))
}

/// Keep only functors with `m_F` the unit, check that they are closed
/// under composition, and check that `ξ_1` restricted to them is an
/// equivalence. Returns the retained functors of the universe.
pub fn restrict_identity_constraint(bound: usize) -> Result<(Vec<DDFunctor>, EquivalenceReport)> {
    let full = Universe::new(bound, |_| true)?;
    let retained: Vec<DDFunctor> = full
        .functors
        .iter()
        .flatten()
        .flatten()
        .filter(|f| f.m_f() == f.target().monoid().unit())
        .cloned()
        .collect();
    let mut report = EquivalenceReport::new("xi1_restricted", Some(bound));
    let mut leak = None;
    'outer: for f in &retained {
        for g in retained.iter().filter(|g| g.source() == f.target()) {
            let gf = compose_dd_functors(g, f)?;
            if gf.m_f() != gf.target().monoid().unit() {
                leak = Some(json!({"first": f.to_json(), "second": g.to_json(), "composite": gf.to_json()}));
                break 'outer;
            }
        }
    }
    report.record("closed_under_composition", 1, leak.is_none(), leak);
    let u = Universe::new(bound, |f| f.m_f() == f.target().monoid().unit())?;
    let source = u.source_1category();
    let target = u.target_category(1);
    let functor = u.xi1(&source);
    u.record_surjective_on_objects(&mut report);
    report.merge(check_external_equivalence(
        "xi1_restricted",
        Some(bound),
        &source,
        &target,
        &functor,
    ));
    Ok((retained, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(d: usize) -> CMonDIE {
        CMonDIE::new(FiniteMonoid::cyclic(2), d).unwrap()
    }

    #[test]
    fn images_forget_the_distinguished_elements() {
        let s = z2(1);
        assert_eq!(
            xi(1, BicatCell::Object(&s)).unwrap(),
            XiImage::Monoid(FiniteMonoid::cyclic(2))
        );
        let f = DDFunctor::new(s.clone(), s.clone(), vec![0, 1], 1).unwrap();
        assert_eq!(
            xi(1, BicatCell::Functor(&f)).unwrap(),
            XiImage::Hom(MonoidHom::identity(s.monoid()))
        );
        let t = DDTransformation::identity(&f);
        assert!(xi(1, BicatCell::Transformation(&t)).is_err());
        let m = DDModification::new(t, 1).unwrap();
        assert!(matches!(
            xi(3, BicatCell::Modification(&m)).unwrap(),
            XiImage::Identity3(_)
        ));
    }

    #[test]
    fn faithfulness_witnesses() {
        match witness_xi_unfaithful(1, &z2(0)).unwrap().unwrap() {
            XiUnfaithful::Functors(a, b) => {
                assert_eq!((a.m_f(), b.m_f()), (0, 1));
                assert_eq!(
                    xi(1, BicatCell::Functor(&a)).unwrap(),
                    xi(1, BicatCell::Functor(&b)).unwrap()
                );
            }
            other => panic!("{other:?}"),
        }
        let or = CMonDIE::with_unit_die(FiniteMonoid::bool_or()).unwrap();
        assert!(witness_xi_unfaithful(1, &or).unwrap().is_none());
        match witness_xi_unfaithful(3, &z2(0)).unwrap().unwrap() {
            XiUnfaithful::Modifications(a, b) => assert_eq!((a.gamma(), b.gamma()), (0, 1)),
            other => panic!("{other:?}"),
        }
        assert!(
            witness_xi_unfaithful(3, &CMonDIE::with_unit_die(FiniteMonoid::trivial()).unwrap())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn xi2_is_an_equivalence_at_small_bounds() {
        for bound in 1..=2 {
            let r = check_xi2_equivalence(bound).unwrap();
            assert!(r.is_equivalence(), "{r}");
        }
    }

    #[test]
    fn bicat2_2_is_a_strict_2_category() {
        assert!(bicat2_2(2).unwrap().check().is_valid());
    }

    #[test]
    fn xi1_is_not_faithful() {
        let r = check_xi1_equivalence(2).unwrap();
        assert!(!r.holds("locally_faithful"));
        assert!(r.holds("essentially_surjective"));
        assert!(check_xi1_equivalence(1).unwrap().is_equivalence());
    }

    #[test]
    fn identity_constraint_restriction() {
        let (kept, r) = restrict_identity_constraint(2).unwrap();
        assert!(r.is_equivalence(), "{r}");
        let s = z2(1);
        assert!(kept.contains(&DDFunctor::identity(&s)));
        assert!(!kept.contains(&DDFunctor::new(s.clone(), s, vec![0, 1], 1).unwrap()));
    }
}
