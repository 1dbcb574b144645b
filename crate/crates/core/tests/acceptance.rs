//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use deglab::algebra::{all_monoids_up_to, enumerate_cmon_dies, enumerate_homs, CMonDIE, FiniteMonoid};
use deglab::degenerate_cat::{cat_to_monoid, monoid_to_cat, phi1_check};
use deglab::doubly_degenerate::{
    build_ddbicat, check_ddbicat, check_xi2_equivalence, compose_dd_functors, eckmann_hilton_report,
    enumerate_weak_functors, is_rejected, lax_functor_report, promote_lax, random_tamper, restrict_identity_constraint,
    witness_xi_unfaithful, DDFunctor, XiUnfaithful,
};
use deglab::json::{
    validate, DdFunctorPairBody, DdModificationPairBody, DegCompositeBody, DegTransformationBody, Document,
};
use deglab::monad::collapse_cases;
use deglab::monoidal::{
    check_coherence, check_deg_transformation, check_monoidal, check_xi_equivalence, codiscrete_twisted,
    compose_deg_transformations, discrete, embed_monoidal_transformation, enumerate_deg_transformations,
    enumerate_monoidal_functors, enumerate_monoidal_transformations, identity_monoidal_functor,
    identity_transformation, objects_isomorphic, sign_category, stock_universe, FinMonoidalCategory, Variance,
};
use deglab::suite::{run_suite, SuiteOptions, SUITES};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, format!("took {elapsed:?}, limit {limit:?}"))
}

fn ac1() -> Outcome {
    let t = Instant::now();
    let monoids = all_monoids_up_to(4, false).map_err(e)?;
    for m in &monoids {
        ensure(
            cat_to_monoid(&monoid_to_cat(m.clone())) == *m,
            format!("round trip changed {m:?}"),
        )?;
    }
    let cats: Vec<_> = monoids.iter().cloned().map(monoid_to_cat).collect();
    let report = phi1_check(&cats).map_err(e)?;
    ensure(report.is_equivalence(), report.to_string())?;
    within(Duration::from_secs(10), t.elapsed())?;
    Ok(format!("{} monoids round trip; phi1 passes", monoids.len()))
}

fn ac2() -> Outcome {
    let t = Instant::now();
    let dies = enumerate_cmon_dies(4).map_err(e)?;
    let built: Vec<_> = dies.iter().map(build_ddbicat).collect();
    for b in &built {
        ensure(check_ddbicat(b).map_err(e)?.is_valid(), "built bicategory invalid")?;
        ensure(eckmann_hilton_report(b).map_err(e)?.is_valid(), "Eckmann-Hilton failed")?;
        // Independent of the report: the two tables agree and are commutative, l = r, a = 1.
        ensure(b.vcomp == b.hcomp, "vertical and horizontal tables differ")?;
        for x in 0..b.cells {
            for y in 0..b.cells {
                ensure(b.vcomp[x][y] == b.vcomp[y][x], "not commutative")?;
            }
        }
        ensure(b.lunit == b.runit && b.assoc == b.id2, "constraint cells")?;
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let candidates: Vec<_> = built.iter().filter(|b| b.cells >= 2).collect();
    for i in 0..1000 {
        let b = candidates[i % candidates.len()];
        let (tampered, site) = random_tamper(b, &mut rng);
        ensure(is_rejected(&tampered), format!("tampering {i} at {site:?} escaped"))?;
    }
    within(Duration::from_secs(60), t.elapsed())?;
    Ok(format!(
        "{} instances satisfy Eckmann-Hilton; 1000/1000 tamperings caught",
        dies.len()
    ))
}

fn ac3() -> Outcome {
    let t = Instant::now();
    let dies = enumerate_cmon_dies(3).map_err(e)?;
    let mut pairs = 0;
    let mut triples = 0;
    for x in &dies {
        for y in &dies {
            for z in &dies {
                let zm = z.monoid();
                for g in enumerate_weak_functors(y, z) {
                    for f in enumerate_weak_functors(x, y) {
                        let gf = compose_dd_functors(&g, &f).map_err(e)?;
                        let map: Vec<usize> = f.map().iter().map(|&a| g.map()[a]).collect();
                        let m = zm.mul(g.map()[f.m_f()], g.m_f());
                        ensure(gf.map() == map.as_slice() && gf.m_f() == m, "composition law")?;
                        ensure(
                            compose_dd_functors(&DDFunctor::identity(z), &gf).map_err(e)? == gf,
                            "left unit",
                        )?;
                        ensure(
                            compose_dd_functors(&gf, &DDFunctor::identity(x)).map_err(e)? == gf,
                            "right unit",
                        )?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    for w in &dies {
        for x in &dies {
            let fs = enumerate_weak_functors(w, x);
            for y in &dies {
                let gs = enumerate_weak_functors(x, y);
                for z in &dies {
                    let hs = enumerate_weak_functors(y, z);
                    for f in &fs {
                        for g in &gs {
                            let gf = compose_dd_functors(g, f).map_err(e)?;
                            for h in &hs {
                                let l = compose_dd_functors(h, &gf).map_err(e)?;
                                let r = compose_dd_functors(&compose_dd_functors(h, g).map_err(e)?, f).map_err(e)?;
                                ensure(l == r, "associativity")?;
                                triples += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    within(Duration::from_secs(30), t.elapsed())?;
    Ok(format!("{pairs} composable pairs, {triples} triples"))
}

fn ac4() -> Outcome {
    let dies = enumerate_cmon_dies(4).map_err(e)?;
    let mut lax = 0;
    for x in &dies {
        for y in &dies {
            let (bx, by) = (build_ddbicat(x), build_ddbicat(y));
            let ym = y.monoid();
            for map in enumerate_homs(x.monoid(), y.monoid()) {
                for m2 in ym.elements() {
                    for m0 in ym.elements() {
                        if !lax_functor_report(&bx, &by, &map, m2, m0).map_err(e)?.is_valid() {
                            continue;
                        }
                        lax += 1;
                        ensure(
                            ym.is_invertible(m2) && ym.is_invertible(m0),
                            "non-invertible lax constraint",
                        )?;
                        let f = promote_lax(&bx, &by, &map, m2, m0).map_err(e)?;
                        ensure(
                            f.m_f() == m2 && f.m0() == m0 && f.map() == map.as_slice(),
                            "promotion changed data",
                        )?;
                    }
                }
            }
        }
    }
    Ok(format!("{lax} lax functors promoted, 0 failures"))
}

fn ac5() -> Outcome {
    let xi2 = check_xi2_equivalence(3).map_err(e)?;
    ensure(xi2.is_equivalence(), xi2.to_string())?;
    let z2e = CMonDIE::with_unit_die(FiniteMonoid::cyclic(2)).map_err(e)?;
    let Some(XiUnfaithful::Functors(a, b)) = witness_xi_unfaithful(1, &z2e).map_err(e)? else {
        return Err("no xi1 witness on (Z/2, e)".into());
    };
    let v = validate(&Document::DdFunctorPair(DdFunctorPairBody {
        source: (&z2e).into(),
        target: (&z2e).into(),
        first: (&a).into(),
        second: (&b).into(),
    }))
    .map_err(e)?;
    ensure(
        v["valid"] == json!(true) && v["same_image"] == json!(true) && v["distinct"] == json!(true),
        v.to_string(),
    )?;
    let mut targets = 0;
    for y in enumerate_cmon_dies(3)
        .map_err(e)?
        .iter()
        .filter(|y| y.monoid().size() >= 2)
    {
        let Some(XiUnfaithful::Modifications(a, b)) = witness_xi_unfaithful(3, y).map_err(e)? else {
            return Err(format!("no xi3 witness on {y:?}"));
        };
        let v = validate(&Document::DdModificationPair(DdModificationPairBody {
            source: y.into(),
            target: y.into(),
            functor: a.boundary().source().into(),
            gammas: [a.gamma(), b.gamma()],
        }))
        .map_err(e)?;
        ensure(v["valid"] == json!(true) && v["distinct"] == json!(true), v.to_string())?;
        targets += 1;
    }
    let (_, restricted) = restrict_identity_constraint(3).map_err(e)?;
    ensure(restricted.is_equivalence(), restricted.to_string())?;
    Ok(format!(
        "xi2 passes; xi1 and xi3 witnesses validated ({targets} targets); restriction passes"
    ))
}

/// Sign bit of the associator on objects `x, y, z`.
fn sign(mc: &FinMonoidalCategory, x: usize, y: usize, z: usize) -> usize {
    mc.assoc[x][y][z] % 2
}

/// Pentagon for a sign-valued associator on `Z/2` reduces to the 3-cocycle
/// condition on the sign bits.
fn cocycle_failures(mc: &FinMonoidalCategory) -> usize {
    let mut bad = 0;
    for w in 0..2 {
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let lhs = sign(mc, x, y, z) ^ sign(mc, w, x ^ y, z) ^ sign(mc, w, x, y);
                    let rhs = sign(mc, w, x, y ^ z) ^ sign(mc, w ^ x, y, z);
                    bad += usize::from(lhs != rhs);
                }
            }
        }
    }
    bad
}

fn ac6() -> Outcome {
    let t = Instant::now();
    let s = sign_category();
    let r = check_monoidal(&s).map_err(e)?;
    ensure(r.is_valid(), r.to_string())?;
    ensure(cocycle_failures(&s) == 0, "cocycle oracle")?;
    let oracle = check_coherence(&s, 4, false);
    ensure(oracle.report.is_valid(), oracle.report.to_string())?;
    let mut tampered = s.clone();
    tampered.assoc[1][1][0] ^= 1;
    let tr = check_monoidal(&tampered).map_err(e)?;
    ensure(tr.count("pentagon") > 0, "checker missed the tampering")?;
    ensure(
        !check_coherence(&tampered, 4, false).report.is_valid(),
        "oracle missed the tampering",
    )?;
    ensure(cocycle_failures(&tampered) > 0, "cocycle oracle missed the tampering")?;
    within(Duration::from_secs(5), t.elapsed())?;
    Ok(format!(
        "16 quadruples pass checker and oracle ({} bracketing pairs); tampered a_110 caught ({} pentagon violations)",
        oracle.pairs,
        tr.count("pentagon")
    ))
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_deglab"))
        .args(args)
        .output()
        .map_err(e)?;
    let code = out.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn replay(dir: &Path, name: &str, doc: &Document) -> Result<(i32, Value), String> {
    let path = dir.join(name);
    std::fs::write(&path, doc.to_canonical().map_err(e)?).map_err(e)?;
    let (code, out) = run_cli(&["validate", path.to_str().expect("utf-8 path")])?;
    Ok((code, serde_json::from_str(&out).map_err(|err| format!("{err}: {out}"))?))
}

fn ac7() -> Outcome {
    let xi = check_xi_equivalence(2).map_err(e)?;
    ensure(xi.is_equivalence(), xi.to_string())?;
    let mc = codiscrete_twisted();
    let id = identity_monoidal_functor(&mc);
    let unit = identity_transformation(&mc, &id, Variance::Weak).map_err(e)?;
    let t = enumerate_deg_transformations(&mc, &mc, &id, &id, Variance::Weak)
        .into_iter()
        .next()
        .ok_or("no transformation")?;
    let c = compose_deg_transformations(&mc, &unit, &t).map_err(e)?;
    // Objects of the twisted example: x (x) y = 1 - x, so I (x) a = 1 - I.
    ensure(
        c.dist == 1 - mc.unit && c.dist != t.dist,
        format!("composite dist {} vs {}", c.dist, t.dist),
    )?;
    let dir = tempfile::tempdir().map_err(e)?;
    let doc = Document::DegComposite(DegCompositeBody::new(&mc, &mc, &unit, &t));
    let (code, v) = replay(dir.path(), "unitality.json", &doc)?;
    ensure(code == 0, format!("validate exit {code}"))?;
    ensure(
        v["composite_dist"] == json!(c.dist) && v["first_dist"] == json!(t.dist),
        v.to_string(),
    )?;
    Ok(format!(
        "xi passes on the stock universe; I (x) {} = {} replayed via CLI",
        t.dist, c.dist
    ))
}

fn ac8() -> Outcome {
    let mut embedded = 0;
    for (name, mc) in stock_universe() {
        let fs = enumerate_monoidal_functors(&mc, &mc);
        for f in &fs {
            for g in &fs {
                for theta in enumerate_monoidal_transformations(&mc, &mc, f, g) {
                    let t = embed_monoidal_transformation(&mc, &theta).map_err(e)?;
                    ensure(t.dist == mc.unit, format!("{name}: dist {}", t.dist))?;
                    let r = check_deg_transformation(&mc, &mc, &t).map_err(e)?;
                    ensure(r.is_valid(), format!("{name}: {r}"))?;
                    embedded += 1;
                }
            }
        }
    }
    let d = discrete(&FiniteMonoid::cyclic(2));
    let id = identity_monoidal_functor(&d);
    let t = enumerate_deg_transformations(&d, &d, &id, &id, Variance::Weak)
        .into_iter()
        .find(|t| t.dist != d.unit)
        .ok_or("no transformation with dist g")?;
    let v = validate(&Document::DegTransformation(DegTransformationBody::new(&d, &d, &t))).map_err(e)?;
    ensure(v["valid"] == json!(true), v.to_string())?;
    let any_iso = d.base.hom(t.dist, d.unit).into_iter().any(|f| d.base.is_iso(f));
    ensure(
        !any_iso && !objects_isomorphic(&d, t.dist, d.unit),
        "g is isomorphic to I",
    )?;
    Ok(format!(
        "{embedded} embeddings valid with dist I; dist g certified outside the image"
    ))
}

fn ac9() -> Outcome {
    let cases = collapse_cases(9, 20).map_err(e)?;
    ensure(cases.len() == 20, "case count")?;
    for kind in ["monad", "monad_functor", "monad_transformation"] {
        ensure(cases.iter().any(|c| c.kind == kind), format!("no {kind} case"))?;
    }
    if let Some(c) = cases.iter().find(|c| !c.agrees()) {
        return Err(format!("disagreement: {}", serde_json::to_string(c).map_err(e)?));
    }
    let valid = cases.iter().filter(|c| c.degenerate_verdict).count();
    Ok(format!("20/20 agree ({valid} valid, {} invalid)", 20 - valid))
}

fn ac10() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let mut replayed = 0;
    for name in SUITES {
        let report = run_suite(name, &SuiteOptions::default()).map_err(e)?;
        for (i, w) in report.witnesses().enumerate() {
            let (code, v) = replay(dir.path(), &format!("{name}-{i}.json"), &w.document)?;
            ensure(code == 0 || code == 1, format!("{name}: exit {code}"))?;
            ensure(
                (code == 0) == (v["valid"] == json!(true)),
                format!("{name}: exit code disagrees with verdict"),
            )?;
            for (k, x) in w.expect.as_object().ok_or("expectation is not an object")? {
                ensure(
                    &v[k] == x,
                    format!("{name} witness {i}: {k} = {} but expected {x}", v[k]),
                )?;
            }
            replayed += 1;
        }
    }
    // Canonical form is a fixed point of parse and serialize, and shifts round trip byte-exactly.
    let mut shifted = 0;
    let shifts: [(&str, &str, Vec<Document>); 3] = [
        (
            "--to-category",
            "--to-monoid",
            all_monoids_up_to(3, false)
                .map_err(e)?
                .iter()
                .map(|m| Document::Monoid(m.into()))
                .collect(),
        ),
        (
            "--to-ddbicat",
            "--to-cmon",
            enumerate_cmon_dies(3)
                .map_err(e)?
                .iter()
                .map(|s| Document::CmonDie(s.into()))
                .collect(),
        ),
        (
            "--to-bicat",
            "--to-moncat",
            stock_universe()
                .iter()
                .map(|(_, m)| Document::Moncat(m.into()))
                .collect(),
        ),
    ];
    for (there, back, docs) in shifts {
        for (i, doc) in docs.iter().enumerate() {
            let text = doc.to_canonical().map_err(e)?;
            ensure(
                Document::parse(&text).map_err(e)?.to_canonical().map_err(e)? == text,
                "canonical fixed point",
            )?;
            let a = dir.path().join(format!("shift-{i}.json"));
            std::fs::write(&a, &text).map_err(e)?;
            let (code, mid) = run_cli(&["shift", there, a.to_str().expect("utf-8")])?;
            ensure(code == 0, format!("shift {there} exit {code}"))?;
            let b = dir.path().join(format!("shifted-{i}.json"));
            std::fs::write(&b, &mid).map_err(e)?;
            let (code, round) = run_cli(&["shift", back, b.to_str().expect("utf-8")])?;
            ensure(code == 0, format!("shift {back} exit {code}"))?;
            ensure(
                round == text,
                format!("{there}/{back} round trip changed bytes:\n{text}{round}"),
            )?;
            shifted += 1;
        }
    }
    Ok(format!(
        "{replayed} witnesses replayed; {shifted} shift round trips byte-exact"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 monoid round trip and phi1", ac1),
        ("AC2 Eckmann-Hilton and tamperings", ac2),
        ("AC3 weak functor composition law", ac3),
        ("AC4 lax promotion", ac4),
        ("AC5 xi2 equivalence and faithfulness witnesses", ac5),
        ("AC6 sign category pentagon", ac6),
        ("AC7 xi and unitality failure", ac7),
        ("AC8 embedding and essential image", ac8),
        ("AC9 one-object monad collapse", ac9),
        ("AC10 replayability and canonical round trips", ac10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let result = check();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS {name} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {msg}");
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
