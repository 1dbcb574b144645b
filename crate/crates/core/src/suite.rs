//! Named theorem suites. Each suite runs a set of claims over enumerated or
//! stock structures; a claim can be expected to hold or to fail (for
//! instance non-faithfulness of a comparison functor). Witnesses are full
//! documents with the verdict `validate` must reproduce.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    all_monoids_up_to, enumerate_cmon_dies, enumerate_homs, max_enumeration_size, CMonDIE, FiniteMonoid,
};
use crate::category::enumerate_functors;
use crate::degenerate_cat::{cat_to_monoid, find_nonidentity_nat_trans, monoid_to_cat, phi1_check};
use crate::doubly_degenerate::{
    analyze_weak_functor, build_ddbicat, check_ddbicat, check_xi1_equivalence, check_xi2_equivalence,
    compose_dd_functors, eckmann_hilton_report, enumerate_weak_functors, extract_cmon_die, is_rejected,
    lax_functor_report, promote_lax, random_tamper, restrict_identity_constraint, transformation_between,
    witness_xi_unfaithful, DDFunctor, XiUnfaithful,
};
use crate::error::{structure, Error, Result};
use crate::json::{
    DdFunctorBody, DdFunctorData, DdFunctorPairBody, DdModificationPairBody, DegCompositeBody, DegTransformationBody,
    Document, MonoidBody, NatTransBody,
};
use crate::monad::collapse_cases;
use crate::monoidal::{
    check_coherence, check_deg_transformation, check_monoidal, check_xi_equivalence, codiscrete_twisted,
    compose_deg_transformations, discrete, embed_monoidal_transformation, enumerate_deg_transformations,
    enumerate_monoidal_functors, enumerate_monoidal_transformations, identity_monoidal_functor,
    identity_transformation, objects_isomorphic, sign_category, stock_universe, unit_dist_closure_failure, Variance,
};
use crate::report::EquivalenceReport;

pub const SUITES: [&str; 6] = ["thm-dc", "thm-dce", "thm-vdb", "thm-vdbe", "thm-db", "thm-moncat-xi"];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Size bound; each suite has its own default.
    pub bound: Option<usize>,
    pub seed: u64,
    pub tamperings: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            bound: None,
            seed: 0,
            tamperings: 1000,
        }
    }
}

/// A document together with the verdict fields `validate` must report.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub document: Document,
    pub expect: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub claim: String,
    pub expected: bool,
    pub observed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Finding {
    pub fn ok(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: usize,
    pub seed: u64,
    pub passed: bool,
    pub findings: Vec<Finding>,
}

impl SuiteReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.findings.iter().filter_map(|f| f.witness.as_ref())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(
            f,
            "{} (bound {}, seed {}): {verdict}",
            self.suite, self.bound, self.seed
        )?;
        for c in &self.findings {
            let status = if c.observed { "pass" } else { "FAIL" };
            write!(f, "\n  {}: {status}", c.claim)?;
            if !c.expected {
                write!(f, ", expected")?;
            }
            if !c.ok() {
                write!(f, " [UNEXPECTED]")?;
            }
            if c.witness.is_some() {
                write!(f, " (witness attached)")?;
            }
        }
        Ok(())
    }
}

struct Findings(Vec<Finding>);

impl Findings {
    fn claim(&mut self, claim: &str, expected: bool, observed: bool) -> &mut Finding {
        self.0.push(Finding {
            claim: claim.to_string(),
            expected,
            observed,
            detail: None,
            witness: None,
        });
        self.0.last_mut().expect("just pushed")
    }

    fn holds(&mut self, claim: &str, observed: bool) -> &mut Finding {
        self.claim(claim, true, observed)
    }

    /// One finding for a whole equivalence report; the criteria go in the detail.
    fn equivalence(&mut self, subject: &str, report: &EquivalenceReport) {
        let detail = serde_json::to_value(report).expect("report serializes");
        self.holds(&format!("{subject} equivalence"), report.is_equivalence())
            .detail = Some(detail);
    }
}

impl Finding {
    fn with_detail(&mut self, detail: Value) -> &mut Self {
        self.detail = Some(detail);
        self
    }

    fn with_witness(&mut self, document: Document, expect: Value) -> &mut Self {
        self.witness = Some(Witness { document, expect });
        self
    }
}

/// Run a suite by name.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let default_bound = match name {
        "thm-dc" | "thm-dce" | "thm-vdb" => 4,
        "thm-vdbe" => 3,
        "thm-db" | "thm-moncat-xi" => 2,
        _ => return structure(format!("unknown suite {name}; expected one of {}", SUITES.join(", "))),
    };
    let bound = opts.bound.unwrap_or(default_bound);
    let limit = max_enumeration_size();
    if bound > limit && !matches!(name, "thm-db" | "thm-moncat-xi") {
        return Err(Error::BoundExceeded {
            requested: bound,
            limit,
        });
    }
    let mut f = Findings(Vec::new());
    match name {
        "thm-dc" => thm_dc(&mut f, bound)?,
        "thm-dce" => thm_dce(&mut f, bound)?,
        "thm-vdb" => thm_vdb(&mut f, bound, opts)?,
        "thm-vdbe" => thm_vdbe(&mut f, bound)?,
        "thm-db" => thm_db(&mut f, opts)?,
        _ => thm_moncat_xi(&mut f, bound)?,
    }
    let passed = f.0.iter().all(Finding::ok);
    Ok(SuiteReport {
        suite: name.to_string(),
        bound,
        seed: opts.seed,
        passed,
        findings: f.0,
    })
}

fn thm_dc(f: &mut Findings, bound: usize) -> Result<()> {
    let monoids = all_monoids_up_to(bound, false)?;
    let broken = monoids
        .iter()
        .find(|m| cat_to_monoid(&monoid_to_cat((*m).clone())) != **m);
    f.holds(
        "monoid -> degenerate category -> monoid is the identity",
        broken.is_none(),
    )
    .with_detail(json!({"monoids": monoids.len()}));

    let small: Vec<&FiniteMonoid> = monoids.iter().filter(|m| m.size() <= bound.min(3)).collect();
    let mut mismatch = None;
    for a in &small {
        for b in &small {
            let mut functors: Vec<Vec<usize>> = enumerate_functors(
                &monoid_to_cat((*a).clone()).as_category(),
                &monoid_to_cat((*b).clone()).as_category(),
            )
            .into_iter()
            .map(|g| g.morphisms)
            .collect();
            let mut homs = enumerate_homs(a, b);
            functors.sort();
            homs.sort();
            if functors != homs && mismatch.is_none() {
                mismatch = Some(json!({"source": MonoidBody::from(*a), "target": MonoidBody::from(*b)}));
            }
        }
    }
    let finding = f.holds(
        "functors between degenerate categories are the monoid homomorphisms",
        mismatch.is_none(),
    );
    if let Some(m) = mismatch {
        finding.with_detail(m);
    }

    let comm: Vec<&FiniteMonoid> = monoids.iter().filter(|m| m.is_commutative() && m.size() > 1).collect();
    let missing = comm.iter().find(|m| find_nonidentity_nat_trans(m).is_none());
    let finding = f.holds(
        "every commutative monoid with more than one element has a non-identity transformation id => id",
        missing.is_none(),
    );
    if let Some(t) = comm.first().and_then(|m| find_nonidentity_nat_trans(m)) {
        let m = t.source_functor().source();
        let doc = Document::NatTrans(NatTransBody {
            source: m.into(),
            target: m.into(),
            f: t.source_functor().map().to_vec(),
            g: t.target_functor().map().to_vec(),
            d: t.component(),
        });
        finding.with_witness(doc, json!({"valid": true}));
    }
    Ok(())
}

fn thm_dce(f: &mut Findings, bound: usize) -> Result<()> {
    let sample: Vec<_> = all_monoids_up_to(bound, false)?
        .into_iter()
        .map(monoid_to_cat)
        .collect();
    f.equivalence("φ₁", &phi1_check(&sample)?);
    Ok(())
}

fn tamper_expectation(b: &crate::doubly_degenerate::DDBicat) -> Value {
    match check_ddbicat(b) {
        Ok(r) if r.is_valid() => json!({"valid": true, "eckmann_hilton": false}),
        _ => json!({"valid": false}),
    }
}

fn thm_vdb(f: &mut Findings, bound: usize, opts: &SuiteOptions) -> Result<()> {
    let dies = enumerate_cmon_dies(bound)?;
    let built: Vec<_> = dies.iter().map(build_ddbicat).collect();
    let invalid = built
        .iter()
        .position(|b| !check_ddbicat(b).map(|r| r.is_valid()).unwrap_or(false));
    f.holds(
        "every (X, d) builds a valid doubly degenerate bicategory",
        invalid.is_none(),
    )
    .with_detail(json!({"instances": dies.len()}));
    let eh = built
        .iter()
        .position(|b| !eckmann_hilton_report(b).map(|r| r.is_valid()).unwrap_or(false));
    f.holds(
        "Eckmann-Hilton: vertical = horizontal, commutative, l = r, a = 1",
        eh.is_none(),
    );
    let round = dies
        .iter()
        .zip(&built)
        .position(|(s, b)| extract_cmon_die(b).ok().as_ref() != Some(s));
    f.holds("extraction inverts construction", round.is_none());

    let mut rng = StdRng::seed_from_u64(opts.seed);
    let candidates: Vec<_> = built.iter().filter(|b| b.cells >= 2).collect();
    let mut escaped = None;
    let mut sample = None;
    for i in 0..opts.tamperings {
        let b = candidates[rng.gen_range(0..candidates.len())];
        let (t, site) = random_tamper(b, &mut rng);
        if !is_rejected(&t) && escaped.is_none() {
            escaped = Some(json!({"index": i, "site": site}));
        }
        if sample.is_none() && check_ddbicat(&t).is_ok() {
            sample = Some(t);
        }
    }
    let finding = f.holds(
        &format!("{} random single-entry tamperings are all rejected", opts.tamperings),
        escaped.is_none(),
    );
    if let Some(e) = escaped {
        finding.with_detail(e);
    }
    if let Some(t) = sample {
        let expect = tamper_expectation(&t);
        finding.with_witness(Document::Ddbicat(t), expect);
    }

    let small: Vec<&CMonDIE> = dies.iter().filter(|d| d.monoid().size() <= bound.min(3)).collect();
    let mut law = true;
    let mut strict = true;
    for x in &small {
        for y in &small {
            for z in &small {
                for g in enumerate_weak_functors(y, z) {
                    for h in enumerate_weak_functors(x, y) {
                        let c = compose_dd_functors(&g, &h)?;
                        let map: Vec<usize> = h.map().iter().map(|&e| g.apply(e)).collect();
                        let m = z.monoid().mul(g.apply(h.m_f()), g.m_f());
                        law &= c.map() == map.as_slice() && c.m_f() == m;
                        strict &= compose_dd_functors(&DDFunctor::identity(z), &c)? == c
                            && compose_dd_functors(&c, &DDFunctor::identity(x))? == c;
                    }
                }
            }
        }
    }
    f.holds("composite of (F, m_F) and (G, m_G) is (GF, G(m_F) m_G)", law);
    f.holds("composition of weak functors is strictly unital", strict);
    let mut assoc = true;
    for w in &small {
        for x in &small {
            for y in &small {
                for z in &small {
                    for a in enumerate_weak_functors(w, x) {
                        for b in enumerate_weak_functors(x, y) {
                            for c in enumerate_weak_functors(y, z) {
                                let l = compose_dd_functors(&c, &compose_dd_functors(&b, &a)?)?;
                                let r = compose_dd_functors(&compose_dd_functors(&c, &b)?, &a)?;
                                assoc &= l == r;
                            }
                        }
                    }
                }
            }
        }
    }
    f.holds("composition of weak functors is strictly associative", assoc);

    let (mut promoted, mut failed) = (0usize, None);
    for x in &dies {
        for y in &dies {
            let (bx, by) = (build_ddbicat(x), build_ddbicat(y));
            for map in enumerate_homs(x.monoid(), y.monoid()) {
                for m2 in y.monoid().elements() {
                    for m0 in y.monoid().elements() {
                        if !lax_functor_report(&bx, &by, &map, m2, m0)?.is_valid() {
                            continue;
                        }
                        match promote_lax(&bx, &by, &map, m2, m0) {
                            Ok(_) => promoted += 1,
                            Err(e) => {
                                failed.get_or_insert_with(
                                    || json!({"map": map, "m2": m2, "m0": m0, "error": e.to_string()}),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let finding = f.holds("every lax functor is a weak functor", failed.is_none());
    finding.with_detail(failed.unwrap_or(json!({"promoted": promoted})));

    let mut unique = true;
    for x in &small {
        for y in &small {
            let fs = enumerate_weak_functors(x, y);
            for a in &fs {
                for b in &fs {
                    let t = transformation_between(a, b);
                    unique &= t.is_some() == (a.map() == b.map());
                    if let Some(t) = t {
                        let ym = y.monoid();
                        unique &= t.sigma() == ym.mul(b.m_f(), ym.invert(a.m_f()).expect("invertible"));
                    }
                }
            }
        }
    }
    f.holds("a transformation exists iff F = G, and then sigma = m_G m_F^-1", unique);

    if let Some(z2) = dies
        .iter()
        .find(|d| d.monoid().size() == 2 && d.monoid().invertibles().len() == 2 && d.die() != d.monoid().unit())
    {
        // On (Z/2, g) with F = id and m2 = 1 the unit equation gives m0 = g·1·g = 1.
        let (e, g) = (z2.monoid().unit(), z2.die());
        let b = build_ddbicat(z2);
        let map: Vec<usize> = z2.monoid().elements().collect();
        let rejected = !analyze_weak_functor(&b, &b, &map, e, g)?.is_weak_functor();
        let body = DdFunctorBody {
            source: z2.into(),
            target: z2.into(),
            map,
            m2: e,
            m0: g,
        };
        f.holds(
            "on (Z/2, g) the identity with m0 = g is rejected; the unit equation forces m0 = 1",
            rejected,
        )
        .with_witness(Document::DdFunctor(body), json!({"valid": false, "derived_m0": e}));
    }
    Ok(())
}

fn thm_vdbe(f: &mut Findings, bound: usize) -> Result<()> {
    f.equivalence("ξ₂", &check_xi2_equivalence(bound)?);
    let xi1 = check_xi1_equivalence(bound)?;
    let z2e = CMonDIE::with_unit_die(FiniteMonoid::cyclic(2))?;
    let xi1_pair = witness_xi_unfaithful(1, &z2e)?;
    let finding = f
        .claim(
            "ξ₁ faithful",
            false,
            xi1.holds("locally_faithful") && xi1_pair.is_none(),
        )
        .with_detail(json!(xi1.criterion("locally_faithful")));
    if let Some(XiUnfaithful::Functors(a, b)) = xi1_pair {
        let body = DdFunctorPairBody {
            source: (&z2e).into(),
            target: (&z2e).into(),
            first: (&a).into(),
            second: (&b).into(),
        };
        finding.with_witness(
            Document::DdFunctorPair(body),
            json!({"valid": true, "same_image": true, "distinct": true}),
        );
    }
    let xi3 = witness_xi_unfaithful(3, &z2e)?;
    let finding = f.claim("ξ₃ locally faithful", false, xi3.is_none());
    if let Some(XiUnfaithful::Modifications(a, b)) = xi3 {
        let body = DdModificationPairBody {
            source: (&z2e).into(),
            target: (&z2e).into(),
            functor: DdFunctorData::from(a.boundary().source()),
            gammas: [a.gamma(), b.gamma()],
        };
        finding.with_witness(
            Document::DdModificationPair(body),
            json!({"valid": true, "same_image": true, "distinct": true}),
        );
    }
    let (_, restricted) = restrict_identity_constraint(bound)?;
    f.equivalence("ξ₁ restricted to m_F = 1", &restricted);
    Ok(())
}

fn thm_db(f: &mut Findings, opts: &SuiteOptions) -> Result<()> {
    let sign = sign_category();
    let r = check_monoidal(&sign)?;
    f.holds("the sign category with associator (-1)^{xyz} is monoidal", r.is_valid());
    let oracle = check_coherence(&sign, 4, false);
    f.holds(
        "all 16 pentagon quadruples commute by the coherence oracle",
        oracle.report.is_valid(),
    )
    .with_detail(json!({"pairs": oracle.pairs}));
    let mut tampered = sign.clone();
    tampered.assoc[1][1][0] ^= 1;
    let tr = check_monoidal(&tampered)?;
    let caught = tr.count("pentagon") > 0 && !check_coherence(&tampered, 4, false).report.is_valid();
    f.holds(
        "a tampered associator component fails the pentagon and the oracle",
        caught,
    )
    .with_witness(Document::Moncat((&tampered).into()), json!({"valid": false}));

    let mut all_ok = true;
    for (_, mc) in stock_universe() {
        all_ok &= check_monoidal(&mc)?.is_valid() && check_coherence(&mc, 3, true).report.is_valid();
        for fun in enumerate_monoidal_functors(&mc, &mc) {
            for v in [Variance::Weak, Variance::Lax, Variance::Oplax] {
                let t = identity_transformation(&mc, &fun, v)?;
                all_ok &= check_deg_transformation(&mc, &mc, &t)?.is_valid();
            }
        }
    }
    f.holds(
        "stock examples are coherent and identity transformations are valid",
        all_ok,
    );

    let mut embedded = 0;
    let mut embed_ok = true;
    for (_, mc) in stock_universe() {
        let fs = enumerate_monoidal_functors(&mc, &mc);
        for a in &fs {
            for b in &fs {
                for theta in enumerate_monoidal_transformations(&mc, &mc, a, b) {
                    let e = embed_monoidal_transformation(&mc, &theta)?;
                    embed_ok &= e.dist == mc.unit && check_deg_transformation(&mc, &mc, &e)?.is_valid();
                    embedded += 1;
                }
            }
        }
    }
    f.holds(
        "embedded monoidal transformations have distinguished object I and are valid",
        embed_ok,
    )
    .with_detail(json!({"embedded": embedded}));

    let d = discrete(&FiniteMonoid::cyclic(2));
    let id = identity_monoidal_functor(&d);
    let outside = enumerate_deg_transformations(&d, &d, &id, &id, Variance::Weak)
        .into_iter()
        .find(|t| t.dist != d.unit);
    let only_identity = enumerate_monoidal_transformations(&d, &d, &id, &id).len() == 1;
    let observed = outside
        .as_ref()
        .is_some_and(|t| !objects_isomorphic(&d, t.dist, d.unit))
        && only_identity;
    let finding = f.holds(
        "on discrete Z/2 a transformation with distinguished object g is outside the essential image",
        observed,
    );
    if let Some(t) = outside {
        finding.with_witness(
            Document::DegTransformation(DegTransformationBody::new(&d, &d, &t)),
            json!({"valid": true, "dist_isomorphic_to_unit": false}),
        );
    }

    let cases = collapse_cases(opts.seed, 20)?;
    let disagree = cases.iter().find(|c| !c.agrees());
    let finding = f.holds(
        "monads over one-object categories reproduce the monoid, homomorphism and naturality verdicts",
        disagree.is_none(),
    );
    finding.with_detail(match disagree {
        Some(c) => serde_json::to_value(c)?,
        None => json!({"cases": cases.len(), "valid": cases.iter().filter(|c| c.degenerate_verdict).count()}),
    });
    Ok(())
}

fn thm_moncat_xi(f: &mut Findings, bound: usize) -> Result<()> {
    f.equivalence("ξ", &check_xi_equivalence(bound)?);

    let mc = codiscrete_twisted();
    let id = identity_monoidal_functor(&mc);
    let unit = identity_transformation(&mc, &id, Variance::Weak)?;
    let ts = enumerate_deg_transformations(&mc, &mc, &id, &id, Variance::Weak);
    let t0 = ts.iter().find(|t| t.dist == 0).expect("exists").clone();
    let t1 = ts.iter().find(|t| t.dist == 1).expect("exists").clone();

    let left = compose_deg_transformations(&mc, &unit, &t0)?;
    f.holds("identity . t has distinguished object I (x) a, not a", left.dist != t0.dist)
        .with_witness(
            Document::DegComposite(DegCompositeBody::new(&mc, &mc, &unit, &t0)),
            json!({"valid": true, "composite_valid": true, "first_dist": t0.dist, "second_dist": unit.dist, "composite_dist": left.dist}),
        );
    let right = compose_deg_transformations(&mc, &t1, &unit)?;
    f.holds("t . identity has distinguished object a (x) I, not a", right.dist != t1.dist)
        .with_witness(
            Document::DegComposite(DegCompositeBody::new(&mc, &mc, &t1, &unit)),
            json!({"valid": true, "composite_valid": true, "first_dist": unit.dist, "second_dist": t1.dist, "composite_dist": right.dist}),
        );
    let ab = compose_deg_transformations(&mc, &t1, &t0)?;
    let bc = compose_deg_transformations(&mc, &t0, &t1)?;
    let lhs = compose_deg_transformations(&mc, &ab, &t1)?;
    let rhs = compose_deg_transformations(&mc, &t1, &bc)?;
    f.holds("the two bracketings of a triple composite differ", lhs.dist != rhs.dist)
        .with_detail(json!({"left_bracketing": lhs.dist, "right_bracketing": rhs.dist}));

    let closure = unit_dist_closure_failure(&mc, &unit, &unit)?;
    let finding = f.holds(
        "transformations with distinguished object I are not closed under composition",
        closure.is_some(),
    );
    if closure.is_some() {
        finding.with_witness(
            Document::DegComposite(DegCompositeBody::new(&mc, &mc, &unit, &unit)),
            json!({"valid": true, "first_dist": mc.unit, "second_dist": mc.unit, "composite_dist": mc.obj(mc.unit, mc.unit)}),
        );
    }

    let s = sign_category();
    let sid = identity_monoidal_functor(&s);
    let sts = enumerate_deg_transformations(&s, &s, &sid, &sid, Variance::Weak);
    let mut agree = true;
    for a in &sts {
        for b in &sts {
            for c in &sts {
                let l = compose_deg_transformations(&s, &compose_deg_transformations(&s, c, b)?, a)?;
                let r = compose_deg_transformations(&s, c, &compose_deg_transformations(&s, b, a)?)?;
                agree &= l.dist == r.dist;
            }
        }
    }
    f.holds("in the object-strict sign category both bracketings agree", agree);
    Ok(())
}
