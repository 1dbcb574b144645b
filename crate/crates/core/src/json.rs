//! JSON documents for every structure the tools read or write, each tagged
//! with a `kind`, plus validation of a document into a verdict and
//! canonical serialization (sorted keys, compact, trailing LF).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{check_cmon_die, check_hom, check_monoid, CMonDIE, FiniteMonoid, MonoidHom};
use crate::category::{Arrow, FiniteCategory, Functor};
use crate::degenerate_cat::check_nat_trans;
use crate::doubly_degenerate::{
    analyze_weak_functor, build_ddbicat, check_ddbicat, check_modification, eckmann_hilton_report, DDBicat, DDFunctor,
    DDModification, DDTransformation,
};
use crate::error::{structure, Error, Result};
use crate::monad::{check_monad, FinMonad};
use crate::monoidal::{
    check_coherence, check_deg_transformation, check_monoidal, check_monoidal_functor, compose_deg_transformations,
    objects_isomorphic, shift_from_bicat, DegTransformation, DegenerateBicategory, FinMonoidalCategory,
    MonoidalFunctor, Variance,
};
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidBody {
    pub size: usize,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
}

impl MonoidBody {
    fn check_size(&self) -> Result<()> {
        if self.mul.len() != self.size {
            return structure(format!("size {} but mul has {} rows", self.size, self.mul.len()));
        }
        Ok(())
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid> {
        self.check_size()?;
        FiniteMonoid::new(self.unit, self.mul.clone())
    }
}

impl From<&FiniteMonoid> for MonoidBody {
    fn from(m: &FiniteMonoid) -> Self {
        Self {
            size: m.size(),
            unit: m.unit(),
            mul: m.rows(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmonDieBody {
    pub size: usize,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
    pub die: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub die_inv: Option<usize>,
}

impl CmonDieBody {
    pub fn to_cmon_die(&self) -> Result<CMonDIE> {
        let monoid = MonoidBody {
            size: self.size,
            unit: self.unit,
            mul: self.mul.clone(),
        }
        .to_monoid()?;
        match self.die_inv {
            Some(inv) => CMonDIE::with_witness(monoid, self.die, inv),
            None => CMonDIE::new(monoid, self.die),
        }
    }
}

impl From<&CMonDIE> for CmonDieBody {
    fn from(s: &CMonDIE) -> Self {
        let m = s.monoid();
        Self {
            size: m.size(),
            unit: m.unit(),
            mul: m.rows(),
            die: s.die(),
            die_inv: Some(s.die_inv()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerateCategoryBody {
    pub hom: MonoidBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatTransBody {
    pub source: MonoidBody,
    pub target: MonoidBody,
    #[serde(rename = "F")]
    pub f: Vec<usize>,
    #[serde(rename = "G")]
    pub g: Vec<usize>,
    pub d: usize,
}

/// `(F, m2, m0)` without its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdFunctorData {
    pub map: Vec<usize>,
    pub m2: usize,
    pub m0: usize,
}

impl From<&DDFunctor> for DdFunctorData {
    fn from(f: &DDFunctor) -> Self {
        Self {
            map: f.map().to_vec(),
            m2: f.m_f(),
            m0: f.m0(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdFunctorBody {
    pub source: CmonDieBody,
    pub target: CmonDieBody,
    pub map: Vec<usize>,
    pub m2: usize,
    pub m0: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdFunctorPairBody {
    pub source: CmonDieBody,
    pub target: CmonDieBody,
    pub first: DdFunctorData,
    pub second: DdFunctorData,
}

/// Two modifications of the identity transformation on `functor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdModificationPairBody {
    pub source: CmonDieBody,
    pub target: CmonDieBody,
    pub functor: DdFunctorData,
    pub gammas: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryBody {
    pub objects: usize,
    pub morphisms: Vec<Arrow>,
    pub identities: Vec<usize>,
    pub comp: Vec<Vec<Option<usize>>>,
}

impl CategoryBody {
    pub fn to_category(&self) -> Result<FiniteCategory> {
        FiniteCategory::new(
            self.objects,
            self.morphisms.clone(),
            self.identities.clone(),
            self.comp.clone(),
        )
    }
}

impl From<&FiniteCategory> for CategoryBody {
    fn from(c: &FiniteCategory) -> Self {
        Self {
            objects: c.object_count(),
            morphisms: c.morphisms().to_vec(),
            identities: c.identities().to_vec(),
            comp: c.comp_rows(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoncatBody {
    pub objects: usize,
    pub morphisms: Vec<Arrow>,
    pub identities: Vec<usize>,
    pub comp: Vec<Vec<Option<usize>>>,
    pub tensor_obj: Vec<Vec<usize>>,
    pub tensor_mor: Vec<Vec<usize>>,
    pub unit: usize,
    pub assoc: Vec<Vec<Vec<usize>>>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
}

impl MoncatBody {
    pub fn to_moncat(&self) -> Result<FinMonoidalCategory> {
        let mc = FinMonoidalCategory {
            base: FiniteCategory::new(
                self.objects,
                self.morphisms.clone(),
                self.identities.clone(),
                self.comp.clone(),
            )?,
            tensor_obj: self.tensor_obj.clone(),
            tensor_mor: self.tensor_mor.clone(),
            unit: self.unit,
            assoc: self.assoc.clone(),
            lunit: self.lunit.clone(),
            runit: self.runit.clone(),
        };
        mc.check_structure()?;
        Ok(mc)
    }
}

impl From<&FinMonoidalCategory> for MoncatBody {
    fn from(mc: &FinMonoidalCategory) -> Self {
        Self {
            objects: mc.object_count(),
            morphisms: mc.base.morphisms().to_vec(),
            identities: mc.base.identities().to_vec(),
            comp: mc.base.comp_rows(),
            tensor_obj: mc.tensor_obj.clone(),
            tensor_mor: mc.tensor_mor.clone(),
            unit: mc.unit,
            assoc: mc.assoc.clone(),
            lunit: mc.lunit.clone(),
            runit: mc.runit.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalFunctorBody {
    pub source: MoncatBody,
    pub target: MoncatBody,
    pub functor: MonoidalFunctor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationData {
    pub dist: usize,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegTransformationBody {
    pub source: MoncatBody,
    pub target: MoncatBody,
    #[serde(rename = "F")]
    pub f: MonoidalFunctor,
    #[serde(rename = "G")]
    pub g: MonoidalFunctor,
    pub variance: Variance,
    pub dist: usize,
    pub components: Vec<usize>,
}

impl DegTransformationBody {
    pub fn new(x: &FinMonoidalCategory, y: &FinMonoidalCategory, t: &DegTransformation) -> Self {
        Self {
            source: x.into(),
            target: y.into(),
            f: t.source.clone(),
            g: t.target.clone(),
            variance: t.variance,
            dist: t.dist,
            components: t.components.clone(),
        }
    }
}

/// Two composable transformations `first: F ⇒ G`, `second: G ⇒ H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegCompositeBody {
    pub source: MoncatBody,
    pub target: MoncatBody,
    #[serde(rename = "F")]
    pub f: MonoidalFunctor,
    #[serde(rename = "G")]
    pub g: MonoidalFunctor,
    #[serde(rename = "H")]
    pub h: MonoidalFunctor,
    pub variance: Variance,
    pub first: TransformationData,
    pub second: TransformationData,
}

impl DegCompositeBody {
    pub fn new(
        x: &FinMonoidalCategory,
        y: &FinMonoidalCategory,
        second: &DegTransformation,
        first: &DegTransformation,
    ) -> Self {
        Self {
            source: x.into(),
            target: y.into(),
            f: first.source.clone(),
            g: first.target.clone(),
            h: second.target.clone(),
            variance: first.variance,
            first: TransformationData {
                dist: first.dist,
                components: first.components.clone(),
            },
            second: TransformationData {
                dist: second.dist,
                components: second.components.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadBody {
    pub category: CategoryBody,
    pub endofunctor: Functor,
    pub unit: Vec<usize>,
    pub multiplication: Vec<usize>,
}

/// Every document kind read or written by the tools.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Monoid(MonoidBody),
    CmonDie(CmonDieBody),
    DegenerateCategory(DegenerateCategoryBody),
    NatTrans(NatTransBody),
    Ddbicat(DDBicat),
    DdFunctor(DdFunctorBody),
    DdFunctorPair(DdFunctorPairBody),
    DdModificationPair(DdModificationPairBody),
    Moncat(MoncatBody),
    DegenerateBicategory(DegenerateBicategory),
    MonoidalFunctor(MonoidalFunctorBody),
    DegTransformation(DegTransformationBody),
    DegComposite(DegCompositeBody),
    Monad(MonadBody),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::CmonDie(_) => "cmon_die",
            Document::DegenerateCategory(_) => "degenerate_category",
            Document::NatTrans(_) => "nat_trans",
            Document::Ddbicat(_) => "ddbicat",
            Document::DdFunctor(_) => "dd_functor",
            Document::DdFunctorPair(_) => "dd_functor_pair",
            Document::DdModificationPair(_) => "dd_modification_pair",
            Document::Moncat(_) => "moncat",
            Document::DegenerateBicategory(_) => "degenerate_bicategory",
            Document::MonoidalFunctor(_) => "monoidal_functor",
            Document::DegTransformation(_) => "deg_transformation",
            Document::DegComposite(_) => "deg_composite",
            Document::Monad(_) => "monad",
        }
    }

    /// Parse a document. Schema errors name the offending key path.
    pub fn parse(text: &str) -> Result<Self> {
        let mut v: Value = serde_json::from_str(text)?;
        let Some(obj) = v.as_object_mut() else {
            return structure("document is not a JSON object");
        };
        let kind = match obj.remove("kind") {
            Some(Value::String(k)) => k,
            Some(_) => return structure("at `kind`: expected a string"),
            None => return structure("missing field `kind`"),
        };
        fn body<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
            serde_path_to_error::deserialize(v).map_err(|e| {
                let path = e.path().to_string();
                Error::Structure(format!("at `{path}`: {}", e.into_inner()))
            })
        }
        Ok(match kind.as_str() {
            "monoid" => Document::Monoid(body(v)?),
            "cmon_die" => Document::CmonDie(body(v)?),
            "degenerate_category" => Document::DegenerateCategory(body(v)?),
            "nat_trans" => Document::NatTrans(body(v)?),
            "ddbicat" => Document::Ddbicat(body(v)?),
            "dd_functor" => Document::DdFunctor(body(v)?),
            "dd_functor_pair" => Document::DdFunctorPair(body(v)?),
            "dd_modification_pair" => Document::DdModificationPair(body(v)?),
            "moncat" => Document::Moncat(body(v)?),
            "degenerate_bicategory" => Document::DegenerateBicategory(body(v)?),
            "monoidal_functor" => Document::MonoidalFunctor(body(v)?),
            "deg_transformation" => Document::DegTransformation(body(v)?),
            "deg_composite" => Document::DegComposite(body(v)?),
            "monad" => Document::Monad(body(v)?),
            other => return structure(format!("at `kind`: unknown document kind `{other}`")),
        })
    }

    pub fn to_canonical(&self) -> Result<String> {
        to_canonical(self)
    }
}

/// Sorted keys, no insignificant whitespace, one trailing LF.
pub fn to_canonical(value: &impl Serialize) -> Result<String> {
    // serde_json's default map is ordered by key.
    let v = serde_json::to_value(value)?;
    Ok(format!("{}\n", serde_json::to_string(&v)?))
}

fn verdict(kind: &str, report: &ValidationReport) -> Value {
    json!({"kind": kind, "valid": report.is_valid(), "violations": report.violations})
}

fn with(mut v: Value, key: &str, extra: Value) -> Value {
    v[key] = extra;
    v
}

fn hom_report(source: &FiniteMonoid, target: &FiniteMonoid, map: &[usize], scope: &str) -> Result<ValidationReport> {
    if map.len() != source.size() {
        return structure(format!(
            "{scope} has {} entries for {} elements",
            map.len(),
            source.size()
        ));
    }
    Ok(check_hom(source, target, map)?.scoped(scope))
}

/// Check a document and summarize the verdict as JSON. Structural problems
/// are errors; axiom failures give `"valid": false` with the violations.
pub fn validate(doc: &Document) -> Result<Value> {
    let kind = doc.kind();
    match doc {
        Document::Monoid(m) | Document::DegenerateCategory(DegenerateCategoryBody { hom: m }) => {
            m.check_size()?;
            Ok(verdict(kind, &check_monoid(&m.mul, m.unit)?))
        }
        Document::CmonDie(s) => {
            if s.mul.len() != s.size {
                return structure("size does not match mul");
            }
            Ok(verdict(kind, &check_cmon_die(&s.mul, s.unit, s.die, s.die_inv)?))
        }
        Document::NatTrans(t) => {
            let (a, b) = (t.source.to_monoid()?, t.target.to_monoid()?);
            if t.d >= b.size() {
                return structure("d out of range");
            }
            let mut r = hom_report(&a, &b, &t.f, "F")?;
            r.merge(hom_report(&a, &b, &t.g, "G")?);
            if r.is_valid() {
                let f = MonoidHom::new(a.clone(), b.clone(), t.f.clone())?;
                let g = MonoidHom::new(a, b, t.g.clone())?;
                r.merge(check_nat_trans(&f, &g, t.d)?);
            }
            Ok(verdict(kind, &r))
        }
        Document::Ddbicat(b) => {
            let r = check_ddbicat(b)?;
            let eh = if r.is_valid() {
                Some(eckmann_hilton_report(b)?.is_valid())
            } else {
                None
            };
            Ok(with(verdict(kind, &r), "eckmann_hilton", json!(eh)))
        }
        Document::DdFunctor(f) => {
            let (x, y) = (f.source.to_cmon_die()?, f.target.to_cmon_die()?);
            let a = analyze_weak_functor(&build_ddbicat(&x), &build_ddbicat(&y), &f.map, f.m2, f.m0)?;
            Ok(with(verdict(kind, &a.report), "derived_m0", json!(a.derived_m0)))
        }
        Document::DdFunctorPair(p) => {
            let (x, y) = (p.source.to_cmon_die()?, p.target.to_cmon_die()?);
            let (bx, by) = (build_ddbicat(&x), build_ddbicat(&y));
            let mut r = ValidationReport::new();
            for (name, d) in [("first", &p.first), ("second", &p.second)] {
                r.merge(analyze_weak_functor(&bx, &by, &d.map, d.m2, d.m0)?.report.scoped(name));
            }
            Ok(json!({
                "kind": kind,
                "valid": r.is_valid(),
                "violations": r.violations,
                "same_image": p.first.map == p.second.map,
                "distinct": p.first != p.second,
            }))
        }
        Document::DdModificationPair(p) => {
            let (x, y) = (p.source.to_cmon_die()?, p.target.to_cmon_die()?);
            let f = DDFunctor::new(x, y, p.functor.map.clone(), p.functor.m2)?;
            let mut r = ValidationReport::new();
            r.expect(f.m0() == p.functor.m0, "m0_formula", &[p.functor.m0], || {
                "m0 does not match the unit equation".into()
            });
            let t = DDTransformation::identity(&f);
            for (i, &g) in p.gammas.iter().enumerate() {
                r.merge(check_modification(&DDModification::new(t.clone(), g)?).scoped(["first", "second"][i]));
            }
            Ok(json!({
                "kind": kind,
                "valid": r.is_valid(),
                "violations": r.violations,
                "same_image": true,
                "distinct": p.gammas[0] != p.gammas[1],
            }))
        }
        Document::Moncat(m) => moncat_verdict(kind, &m.to_moncat()?),
        Document::DegenerateBicategory(b) => moncat_verdict(kind, &shift_from_bicat(b)?),
        Document::MonoidalFunctor(f) => {
            let (x, y) = (f.source.to_moncat()?, f.target.to_moncat()?);
            Ok(verdict(kind, &check_monoidal_functor(&x, &y, &f.functor)?))
        }
        Document::DegTransformation(t) => {
            let (x, y) = (t.source.to_moncat()?, t.target.to_moncat()?);
            let dt = DegTransformation {
                variance: t.variance,
                source: t.f.clone(),
                target: t.g.clone(),
                dist: t.dist,
                components: t.components.clone(),
            };
            let r = functors_then(&x, &y, &[&t.f, &t.g], || check_deg_transformation(&x, &y, &dt))?;
            let iso = dt.dist < y.object_count() && objects_isomorphic(&y, dt.dist, y.unit);
            Ok(with(verdict(kind, &r), "dist_isomorphic_to_unit", json!(iso)))
        }
        Document::DegComposite(c) => {
            let (x, y) = (c.source.to_moncat()?, c.target.to_moncat()?);
            let make = |s: &MonoidalFunctor, t: &MonoidalFunctor, d: &TransformationData| DegTransformation {
                variance: c.variance,
                source: s.clone(),
                target: t.clone(),
                dist: d.dist,
                components: d.components.clone(),
            };
            let first = make(&c.f, &c.g, &c.first);
            let second = make(&c.g, &c.h, &c.second);
            let r = functors_then(&x, &y, &[&c.f, &c.g, &c.h], || {
                let mut r = check_deg_transformation(&x, &y, &first)?.scoped("first");
                r.merge(check_deg_transformation(&x, &y, &second)?.scoped("second"));
                Ok(r)
            })?;
            let composite = if r.is_valid() {
                Some(compose_deg_transformations(&y, &second, &first)?)
            } else {
                None
            };
            let composite_valid = match &composite {
                Some(t) => Some(check_deg_transformation(&x, &y, t)?.is_valid()),
                None => None,
            };
            Ok(json!({
                "kind": kind,
                "valid": r.is_valid(),
                "violations": r.violations,
                "unit": y.unit,
                "first_dist": c.first.dist,
                "second_dist": c.second.dist,
                "composite_dist": composite.map(|t| t.dist),
                "composite_valid": composite_valid,
            }))
        }
        Document::Monad(m) => {
            let monad = FinMonad {
                base: m.category.to_category()?,
                endofunctor: m.endofunctor.clone(),
                unit: m.unit.clone(),
                multiplication: m.multiplication.clone(),
            };
            Ok(verdict(kind, &check_monad(&monad)?))
        }
    }
}

fn moncat_verdict(kind: &str, mc: &FinMonoidalCategory) -> Result<Value> {
    let r = check_monoidal(mc)?;
    let coherent = r.is_valid().then(|| check_coherence(mc, 4, true).report.is_valid());
    Ok(with(verdict(kind, &r), "coherent", json!(coherent)))
}

/// Check the functors first; only when they are valid run `rest`.
fn functors_then(
    x: &FinMonoidalCategory,
    y: &FinMonoidalCategory,
    functors: &[&MonoidalFunctor],
    rest: impl FnOnce() -> Result<ValidationReport>,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    for (i, f) in functors.iter().enumerate() {
        r.merge(check_monoidal_functor(x, y, f)?.scoped(["F", "G", "H"][i]));
    }
    if !r.is_valid() {
        return Ok(r);
    }
    rest()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_cmon_dies;
    use crate::monoidal::{sign_category, stock_universe};

    #[test]
    fn schema_errors_name_the_key() {
        let e = Document::parse(r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[1,"x"]]}"#).unwrap_err();
        assert!(e.to_string().contains("mul[1][1]"), "{e}");
        let e = Document::parse(r#"{"kind":"monoid","size":1,"unit":0,"mul":[[0]],"extra":1}"#).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
        let e = Document::parse(r#"{"kind":"group"}"#).unwrap_err();
        assert!(e.to_string().contains("kind"), "{e}");
    }

    #[test]
    fn canonical_round_trip() {
        let docs = vec![
            Document::Monoid((&FiniteMonoid::cyclic(3)).into()),
            Document::Moncat((&sign_category()).into()),
            Document::Ddbicat(build_ddbicat(&enumerate_cmon_dies(2).unwrap()[1])),
        ];
        for d in docs {
            let text = d.to_canonical().unwrap();
            assert!(text.ends_with("}\n") && !text.contains(": ") && !text.contains("\r"));
            let back = Document::parse(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.to_canonical().unwrap(), text);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = to_canonical(&json!({"b": 1, "a": {"d": 2, "c": 3}})).unwrap();
        assert_eq!(text, "{\"a\":{\"c\":3,\"d\":2},\"b\":1}\n");
    }

    #[test]
    fn unknown_fields_and_kinds_are_rejected() {
        assert!(Document::parse(r#"{"kind":"monoid","size":1,"unit":0,"mul":[[0]],"extra":1}"#).is_err());
        assert!(Document::parse(r#"{"kind":"group","size":1,"unit":0,"mul":[[0]]}"#).is_err());
        assert!(Document::parse(r#"{"kind":"monoid","size":1,"unit":0,"mul":[[0]]}"#).is_ok());
    }

    #[test]
    fn validation_verdicts() {
        let bad = Document::parse(r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[1,1]]}"#).unwrap();
        assert_eq!(validate(&bad).unwrap()["valid"], json!(true));
        let bad = Document::parse(r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[0,1]]}"#).unwrap();
        assert_eq!(validate(&bad).unwrap()["valid"], json!(false));
        for (_, mc) in stock_universe() {
            let v = validate(&Document::Moncat((&mc).into())).unwrap();
            assert_eq!(v["valid"], json!(true));
            assert_eq!(v["coherent"], json!(true));
        }
        let ragged = Document::parse(r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[1]]}"#).unwrap();
        assert!(validate(&ragged).is_err());
    }
}
