//! Command-line front end. `run` maps a parsed command onto library calls
//! and returns the exit status with the text to print; `main` only does I/O.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{all_monoids_up_to, enumerate_cmon_dies, isomorphism, isomorphism_fixing, max_enumeration_size};
use crate::degenerate_cat::monoid_to_cat;
use crate::doubly_degenerate::{
    analyze_weak_functor, build_ddbicat, check_ddbicat, eckmann_hilton_report, extract_cmon_die, lax_functor_report,
    promote_lax, search_ddbicats, witness_xi_unfaithful, XiUnfaithful,
};
use crate::error::{structure, Error, Result};
use crate::json::{
    to_canonical, validate, CmonDieBody, DdFunctorData, DdFunctorPairBody, DdModificationPairBody, DegCompositeBody,
    DegTransformationBody, DegenerateCategoryBody, Document, MoncatBody, MonoidBody,
};
use crate::monoidal::{
    compose_deg_transformations, enumerate_deg_transformations, from_ddbicat, identity_monoidal_functor,
    identity_transformation, objects_isomorphic, shift_from_bicat, shift_to_bicat, stock_universe, Variance,
};
use crate::suite::{run_suite, SuiteOptions, SUITES};

#[derive(Debug, Parser)]
#[command(
    name = "deglab",
    version,
    about = "Check degenerate categories and bicategories on finite table data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; suites default to text, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a document.
    Validate { file: PathBuf },
    /// Perform a dimension shift and print the resulting document.
    Shift {
        #[command(flatten)]
        to: ShiftTarget,
        file: PathBuf,
    },
    /// Analyze weak functor data (F, m2, m0) between doubly degenerate bicategories.
    AnalyzeFunctor {
        file: PathBuf,
        /// Check only the lax axioms, then promote to a weak functor.
        #[arg(long)]
        lax: bool,
    },
    /// Decide whether two monoids, (X, d) pairs or doubly degenerate bicategories are isomorphic.
    Compare { first: PathBuf, second: PathBuf },
    /// Search for a counterexample and print it as a replayable document.
    Search {
        #[arg(value_enum)]
        target: SearchTarget,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// List every structure of a kind up to a size bound.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumerateKind,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Run a named theorem suite.
    Suite {
        name: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random tamperings (thm-vdb).
        #[arg(long, default_value_t = 1000)]
        tamperings: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ShiftTarget {
    /// ddbicat -> cmon_die
    #[arg(long)]
    pub to_cmon: bool,
    /// cmon_die -> ddbicat
    #[arg(long)]
    pub to_ddbicat: bool,
    /// degenerate_category -> monoid
    #[arg(long)]
    pub to_monoid: bool,
    /// monoid -> degenerate_category
    #[arg(long)]
    pub to_category: bool,
    /// moncat -> degenerate_bicategory
    #[arg(long)]
    pub to_bicat: bool,
    /// degenerate_bicategory or ddbicat -> moncat
    #[arg(long)]
    pub to_moncat: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchTarget {
    /// Two distinct weak functors with the same underlying homomorphism.
    Xi1Unfaithful,
    /// Two distinct modifications of one transformation.
    Xi3Unfaithful,
    /// A composite with the identity whose distinguished object moved.
    UnitalityFailure,
    /// A transformation whose distinguished object is not isomorphic to the unit.
    OutsideEssentialImage,
    /// A raw doubly degenerate bicategory violating Eckmann-Hilton.
    EckmannHilton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Monoids,
    CommutativeMonoids,
    CmonDies,
    Ddbicats,
}

/// Exit status and standard output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Exit status for a library error: axiom and claim failures are 1,
/// malformed input and refused operations are 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Axioms(_) | Error::Refutation(_) => 1,
        _ => 2,
    }
}

fn read_doc(path: &Path) -> Result<Document> {
    Document::parse(&std::fs::read_to_string(path)?)
}

fn render(format: Format, value: &Value, text: impl FnOnce() -> String) -> Result<String> {
    match format {
        Format::Json => to_canonical(value),
        Format::Text => Ok(text()),
    }
}

/// Run a command. Errors come back as `Err` and map to exit codes with
/// [`exit_code`].
pub fn run(cli: &Cli) -> Result<Outcome> {
    let json_default = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Validate { file } => {
            let v = validate(&read_doc(file)?)?;
            let ok = v["valid"] == json!(true);
            let output = render(json_default, &v, || verdict_text(&v))?;
            Ok(Outcome {
                code: if ok { 0 } else { 1 },
                output,
            })
        }
        Command::Shift { to, file } => {
            let doc = shift(to, read_doc(file)?)?;
            Ok(Outcome {
                code: 0,
                output: doc.to_canonical()?,
            })
        }
        Command::AnalyzeFunctor { file, lax } => analyze(json_default, &read_doc(file)?, *lax),
        Command::Compare { first, second } => compare(json_default, &read_doc(first)?, &read_doc(second)?),
        Command::Search { target, bound } => search(json_default, *target, *bound),
        Command::Enumerate { kind, bound } => enumerate(json_default, *kind, *bound),
        Command::Suite {
            name,
            bound,
            seed,
            tamperings,
        } => {
            if !SUITES.contains(&name.as_str()) {
                return structure(format!("unknown suite {name}; expected one of {}", SUITES.join(", ")));
            }
            let opts = SuiteOptions {
                bound: *bound,
                seed: *seed,
                tamperings: *tamperings,
            };
            let report = run_suite(name, &opts)?;
            let output = match cli.format.unwrap_or(Format::Text) {
                Format::Json => to_canonical(&report)?,
                Format::Text => format!("{report}\n"),
            };
            Ok(Outcome {
                code: if report.passed { 0 } else { 1 },
                output,
            })
        }
    }
}

fn verdict_text(v: &Value) -> String {
    let mut s = format!(
        "{}: {}\n",
        v["kind"].as_str().unwrap_or("?"),
        if v["valid"] == json!(true) { "valid" } else { "INVALID" }
    );
    if let Some(obj) = v.as_object() {
        for (k, x) in obj
            .iter()
            .filter(|(k, _)| !matches!(k.as_str(), "kind" | "valid" | "violations"))
        {
            let _ = writeln!(s, "  {k}: {x}");
        }
    }
    for x in v["violations"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "  violation {}", x);
    }
    s
}

fn shift(to: &ShiftTarget, doc: Document) -> Result<Document> {
    let wrong = |want: &str, doc: &Document| structure(format!("expected a {want} document, got {}", doc.kind()));
    if to.to_cmon {
        let Document::Ddbicat(b) = &doc else {
            return wrong("ddbicat", &doc);
        };
        return Ok(Document::CmonDie(CmonDieBody::from(&extract_cmon_die(b)?)));
    }
    if to.to_ddbicat {
        let Document::CmonDie(s) = &doc else {
            return wrong("cmon_die", &doc);
        };
        return Ok(Document::Ddbicat(build_ddbicat(&s.to_cmon_die()?)));
    }
    if to.to_monoid {
        let Document::DegenerateCategory(c) = &doc else {
            return wrong("degenerate_category", &doc);
        };
        return Ok(Document::Monoid(MonoidBody::from(&c.hom.to_monoid()?)));
    }
    if to.to_category {
        let Document::Monoid(m) = &doc else {
            return wrong("monoid", &doc);
        };
        let c = monoid_to_cat(m.to_monoid()?);
        return Ok(Document::DegenerateCategory(DegenerateCategoryBody {
            hom: c.hom().into(),
        }));
    }
    if to.to_bicat {
        let Document::Moncat(m) = &doc else {
            return wrong("moncat", &doc);
        };
        return Ok(Document::DegenerateBicategory(shift_to_bicat(&m.to_moncat()?)));
    }
    let mc = match &doc {
        Document::DegenerateBicategory(b) => shift_from_bicat(b)?,
        Document::Ddbicat(b) => from_ddbicat(b)?,
        _ => return wrong("degenerate_bicategory or ddbicat", &doc),
    };
    Ok(Document::Moncat(MoncatBody::from(&mc)))
}

fn analyze(format: Format, doc: &Document, lax: bool) -> Result<Outcome> {
    let Document::DdFunctor(f) = doc else {
        return structure(format!("expected a dd_functor document, got {}", doc.kind()));
    };
    let (x, y) = (f.source.to_cmon_die()?, f.target.to_cmon_die()?);
    let (bx, by) = (build_ddbicat(&x), build_ddbicat(&y));
    let v = if lax {
        let report = lax_functor_report(&bx, &by, &f.map, f.m2, f.m0)?;
        let promoted = if report.is_valid() {
            Some(DdFunctorData::from(&promote_lax(&bx, &by, &f.map, f.m2, f.m0)?))
        } else {
            None
        };
        json!({"lax": report.is_valid(), "violations": report.violations, "promoted": promoted})
    } else {
        let a = analyze_weak_functor(&bx, &by, &f.map, f.m2, f.m0)?;
        json!({
            "weak": a.is_weak_functor(),
            "violations": a.report.violations,
            "derived_m0": a.derived_m0,
        })
    };
    let holds = v["lax"] == json!(true) || v["weak"] == json!(true);
    let output = render(format, &v, || {
        let mut s = String::new();
        match (lax, holds) {
            (true, true) => {
                let _ = writeln!(s, "lax functor: pass; promoted to weak functor {}", v["promoted"]);
            }
            (true, false) => s.push_str("lax functor: FAIL\n"),
            (false, _) => {
                let _ = writeln!(
                    s,
                    "weak functor: {}; derived m0 = {}",
                    if holds { "pass" } else { "FAIL" },
                    v["derived_m0"]
                );
            }
        }
        for x in v["violations"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "  violation {x}");
        }
        s
    })?;
    Ok(Outcome {
        code: if holds { 0 } else { 1 },
        output,
    })
}

fn compare(format: Format, a: &Document, b: &Document) -> Result<Outcome> {
    let monoid = |d: &Document| -> Result<Option<crate::algebra::FiniteMonoid>> {
        Ok(match d {
            Document::Monoid(m) => Some(m.to_monoid()?),
            Document::DegenerateCategory(c) => Some(c.hom.to_monoid()?),
            _ => None,
        })
    };
    let die = |d: &Document| -> Result<Option<crate::algebra::CMonDIE>> {
        Ok(match d {
            Document::CmonDie(s) => Some(s.to_cmon_die()?),
            Document::Ddbicat(b) => Some(extract_cmon_die(b)?),
            _ => None,
        })
    };
    let iso = match (monoid(a)?, monoid(b)?, die(a)?, die(b)?) {
        (Some(x), Some(y), _, _) => isomorphism(&x, &y),
        (_, _, Some(x), Some(y)) => isomorphism_fixing(x.monoid(), y.monoid(), &[(x.die(), y.die())]),
        _ => {
            return structure(format!(
                "compare takes two monoid-like or two (X, d)-like documents, got {} and {}",
                a.kind(),
                b.kind()
            ))
        }
    };
    let v = json!({"isomorphic": iso.is_some(), "isomorphism": iso});
    let output = render(format, &v, || match &iso {
        Some(p) => format!("isomorphic via {p:?}\n"),
        None => "not isomorphic\n".to_string(),
    })?;
    Ok(Outcome {
        code: if iso.is_some() { 0 } else { 1 },
        output,
    })
}

fn check_bound(bound: usize) -> Result<()> {
    let limit = max_enumeration_size();
    if bound > limit {
        return Err(Error::BoundExceeded {
            requested: bound,
            limit,
        });
    }
    Ok(())
}

fn search(format: Format, target: SearchTarget, bound: usize) -> Result<Outcome> {
    check_bound(bound)?;
    let found: Option<Document> = match target {
        SearchTarget::Xi1Unfaithful | SearchTarget::Xi3Unfaithful => {
            let j = if target == SearchTarget::Xi1Unfaithful { 1 } else { 3 };
            let mut found = None;
            for y in enumerate_cmon_dies(bound)? {
                let doc = match witness_xi_unfaithful(j, &y)? {
                    Some(XiUnfaithful::Functors(a, b)) => Document::DdFunctorPair(DdFunctorPairBody {
                        source: (&y).into(),
                        target: (&y).into(),
                        first: (&a).into(),
                        second: (&b).into(),
                    }),
                    Some(XiUnfaithful::Modifications(a, b)) => Document::DdModificationPair(DdModificationPairBody {
                        source: (&y).into(),
                        target: (&y).into(),
                        functor: a.boundary().source().into(),
                        gammas: [a.gamma(), b.gamma()],
                    }),
                    None => continue,
                };
                found = Some(doc);
                break;
            }
            found
        }
        SearchTarget::UnitalityFailure => {
            let mut found = None;
            'outer: for (_, mc) in stock_universe().into_iter().filter(|(_, m)| m.object_count() <= bound) {
                let id = identity_monoidal_functor(&mc);
                let unit = identity_transformation(&mc, &id, Variance::Weak)?;
                for t in enumerate_deg_transformations(&mc, &mc, &id, &id, Variance::Weak) {
                    if compose_deg_transformations(&mc, &unit, &t)?.dist != t.dist {
                        found = Some(Document::DegComposite(DegCompositeBody::new(&mc, &mc, &unit, &t)));
                        break 'outer;
                    }
                }
            }
            found
        }
        SearchTarget::OutsideEssentialImage => {
            let mut found = None;
            'outer: for (_, mc) in stock_universe().into_iter().filter(|(_, m)| m.object_count() <= bound) {
                let id = identity_monoidal_functor(&mc);
                for t in enumerate_deg_transformations(&mc, &mc, &id, &id, Variance::Weak) {
                    if !objects_isomorphic(&mc, t.dist, mc.unit) {
                        found = Some(Document::DegTransformation(DegTransformationBody::new(&mc, &mc, &t)));
                        break 'outer;
                    }
                }
            }
            found
        }
        SearchTarget::EckmannHilton => {
            let monoids = all_monoids_up_to(bound, false)?;
            let mut found = None;
            'outer: for n in 1..=bound {
                for b in search_ddbicats(n, &monoids) {
                    if !eckmann_hilton_report(&b)?.is_valid() {
                        found = Some(Document::Ddbicat(b));
                        break 'outer;
                    }
                }
            }
            found
        }
    };
    let v = json!({"found": found.is_some(), "bound": bound, "witness": found});
    let output = render(format, &v, || match &found {
        Some(d) => format!(
            "found {} witness within bound {bound}\n{}",
            d.kind(),
            d.to_canonical().unwrap_or_default()
        ),
        None => format!("no witness within bound {bound}\n"),
    })?;
    Ok(Outcome {
        code: if found.is_some() { 0 } else { 1 },
        output,
    })
}

fn enumerate(format: Format, kind: EnumerateKind, bound: usize) -> Result<Outcome> {
    check_bound(bound)?;
    let docs: Vec<Document> = match kind {
        EnumerateKind::Monoids | EnumerateKind::CommutativeMonoids => {
            all_monoids_up_to(bound, kind == EnumerateKind::CommutativeMonoids)?
                .iter()
                .map(|m| Document::Monoid(m.into()))
                .collect()
        }
        EnumerateKind::CmonDies => enumerate_cmon_dies(bound)?
            .iter()
            .map(|s| Document::CmonDie(s.into()))
            .collect(),
        EnumerateKind::Ddbicats => {
            let monoids = all_monoids_up_to(bound, false)?;
            let mut out = Vec::new();
            for n in 1..=bound {
                for b in search_ddbicats(n, &monoids) {
                    if check_ddbicat(&b)?.is_valid() {
                        out.push(Document::Ddbicat(b));
                    }
                }
            }
            out
        }
    };
    let v = serde_json::to_value(&docs)?;
    let output = render(format, &v, || format!("{} structures up to size {bound}\n", docs.len()))?;
    Ok(Outcome { code: 0, output })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("deglab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn shift_flags_are_exclusive_and_required() {
        assert!(Cli::try_parse_from(["deglab", "shift", "x.json"]).is_err());
        assert!(Cli::try_parse_from(["deglab", "shift", "--to-cmon", "--to-monoid", "x.json"]).is_err());
        assert!(matches!(
            parse(&["shift", "--to-cmon", "x.json"]).command,
            Command::Shift { .. }
        ));
    }

    #[test]
    fn searches_find_witnesses() {
        for target in [
            SearchTarget::Xi1Unfaithful,
            SearchTarget::Xi3Unfaithful,
            SearchTarget::UnitalityFailure,
            SearchTarget::OutsideEssentialImage,
        ] {
            let out = search(Format::Json, target, 2).unwrap();
            assert_eq!(out.code, 0, "{target:?}");
            let v: Value = serde_json::from_str(&out.output).unwrap();
            let doc: Document = serde_json::from_value(v["witness"].clone()).unwrap();
            assert_eq!(validate(&doc).unwrap()["valid"], json!(true), "{target:?}");
        }
        assert_eq!(search(Format::Json, SearchTarget::EckmannHilton, 3).unwrap().code, 1);
    }

    #[test]
    fn enumerate_counts() {
        // 1 + 2 + 7 monoids up to isomorphism of orders 1, 2, 3.
        let out = enumerate(Format::Json, EnumerateKind::Monoids, 3).unwrap();
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 10);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Structure("x".into())), 2);
        assert_eq!(exit_code(&Error::BoundExceeded { requested: 9, limit: 5 }), 2);
        assert_eq!(exit_code(&Error::Refutation("x".into())), 1);
    }
}
