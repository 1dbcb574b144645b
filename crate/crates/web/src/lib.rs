//! Browser bindings for three interactive checks. Every function takes and
//! returns JSON text so the page needs no generated type glue.

use deglab::algebra::{CMonDIE, FiniteMonoid};
use deglab::doubly_degenerate::{build_ddbicat, check_ddbicat, eckmann_hilton_report, eh_chain, DDBicat};
use deglab::json::{validate, Document, MonoidBody};
use deglab::monoidal::{check_monoidal, sign_category};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error(msg: impl std::fmt::Display) -> String {
    json!({"error": msg.to_string()}).to_string()
}

/// Check a Cayley table given as `{"unit": u, "mul": [[...], ...]}`.
#[wasm_bindgen]
pub fn check_monoid_table(input: &str) -> String {
    let parsed: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => return error(e),
    };
    let mut body = parsed.clone();
    body["kind"] = json!("monoid");
    body["size"] = json!(parsed["mul"].as_array().map_or(0, Vec::len));
    let doc = match Document::parse(&body.to_string()) {
        Ok(d) => d,
        Err(e) => return error(e),
    };
    let mut verdict = match validate(&doc) {
        Ok(v) => v,
        Err(e) => return error(e),
    };
    if let Document::Monoid(MonoidBody { unit, mul, .. }) = &doc {
        if let Ok(m) = FiniteMonoid::new(*unit, mul.clone()) {
            verdict["commutative"] = json!(m.is_commutative());
            verdict["invertibles"] = json!(m.invertibles());
        }
    }
    verdict.to_string()
}

fn cyclic_die(n: usize, d: usize) -> Result<CMonDIE, String> {
    if !(1..=8).contains(&n) {
        return Err("n must be between 1 and 8".into());
    }
    CMonDIE::new(FiniteMonoid::cyclic(n), d % n).map_err(|e| e.to_string())
}

/// Apply one edit `{"table": "vcomp"|"hcomp", "x", "y", "value"}` or
/// `{"cell": "assoc"|"lunit"|..., "value"}`.
fn apply_tamper(b: &mut DDBicat, t: &Value) -> Result<(), String> {
    let value = t["value"].as_u64().ok_or("tamper needs a value")? as usize;
    if let Some(table) = t["table"].as_str() {
        let x = t["x"].as_u64().ok_or("tamper needs x")? as usize;
        let y = t["y"].as_u64().ok_or("tamper needs y")? as usize;
        let rows = match table {
            "vcomp" => &mut b.vcomp,
            "hcomp" => &mut b.hcomp,
            other => return Err(format!("unknown table {other}")),
        };
        let slot = rows.get_mut(x).and_then(|r| r.get_mut(y)).ok_or("cell out of range")?;
        *slot = value;
        return Ok(());
    }
    let slot = match t["cell"].as_str().ok_or("tamper needs table or cell")? {
        "id2" => &mut b.id2,
        "assoc" => &mut b.assoc,
        "assoc_inv" => &mut b.assoc_inv,
        "lunit" => &mut b.lunit,
        "lunit_inv" => &mut b.lunit_inv,
        "runit" => &mut b.runit,
        "runit_inv" => &mut b.runit_inv,
        other => return Err(format!("unknown cell {other}")),
    };
    *slot = value;
    Ok(())
}

/// Build the doubly degenerate bicategory of `(Z/n, d)`, apply the
/// tamperings in `tamper` (a JSON array, possibly empty), and report the
/// axiom check, the Eckmann-Hilton check and the commutativity chain for
/// `(alpha, beta)`.
#[wasm_bindgen]
pub fn eckmann_hilton(n: usize, d: usize, tamper: &str, alpha: usize, beta: usize) -> String {
    let s = match cyclic_die(n, d) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let mut b = build_ddbicat(&s);
    let edits: Vec<Value> = match serde_json::from_str(if tamper.trim().is_empty() { "[]" } else { tamper }) {
        Ok(v) => v,
        Err(e) => return error(e),
    };
    for t in &edits {
        if let Err(e) = apply_tamper(&mut b, t) {
            return error(e);
        }
    }
    let axioms = match check_ddbicat(&b) {
        Ok(r) => r,
        Err(e) => return json!({"bicategory": b, "structure_error": e.to_string()}).to_string(),
    };
    let eh = match eckmann_hilton_report(&b) {
        Ok(r) => r,
        Err(e) => return error(e),
    };
    let chain = (alpha < b.cells && beta < b.cells).then(|| eh_chain(&b, alpha, beta).to_vec());
    json!({
        "bicategory": b,
        "valid": axioms.is_valid(),
        "violations": axioms.violations,
        "eckmann_hilton": eh.is_valid(),
        "eh_violations": eh.violations,
        "chain": chain,
    })
    .to_string()
}

/// Pentagon status of the sign category on each of the 16 quadruples after
/// flipping the associator signs selected by the bits of `flips` (bit
/// `4x + 2y + z` flips `a_{x,y,z}`).
#[wasm_bindgen]
pub fn sign_pentagon(flips: u8) -> String {
    let mut mc = sign_category();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                if flips >> (4 * x + 2 * y + z) & 1 == 1 {
                    mc.assoc[x][y][z] ^= 1;
                }
            }
        }
    }
    let report = match check_monoidal(&mc) {
        Ok(r) => r,
        Err(e) => return error(e),
    };
    let grid: Vec<Value> = (0..16usize)
        .map(|q| {
            let at = vec![q >> 3 & 1, q >> 2 & 1, q >> 1 & 1, q & 1];
            let ok = !report.violations_of("pentagon").any(|v| v.at == at);
            json!({"at": at, "commutes": ok})
        })
        .collect();
    let signs: Vec<i32> = (0..8usize)
        .map(|k| {
            if mc.assoc[k >> 2][k >> 1 & 1][k & 1] % 2 == 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    json!({
        "signs": signs,
        "pentagon": grid,
        "triangle_failures": report.count("triangle"),
        "valid": report.is_valid(),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn monoid_table_checker() {
        let v = parse(check_monoid_table(r#"{"unit":0,"mul":[[0,1],[1,0]]}"#));
        assert_eq!(v["valid"], json!(true));
        assert_eq!(v["commutative"], json!(true));
        assert_eq!(v["invertibles"], json!([0, 1]));
        let v = parse(check_monoid_table(r#"{"unit":0,"mul":[[0,1],[0,1]]}"#));
        assert_eq!(v["valid"], json!(false));
        assert!(parse(check_monoid_table("{")).get("error").is_some());
    }

    #[test]
    fn eckmann_hilton_explorer() {
        let v = parse(eckmann_hilton(3, 1, "", 1, 2));
        assert_eq!(v["valid"], json!(true));
        assert_eq!(v["eckmann_hilton"], json!(true));
        assert_eq!(v["chain"].as_array().unwrap().len(), 11);
        let v = parse(eckmann_hilton(
            3,
            1,
            r#"[{"table":"hcomp","x":1,"y":2,"value":1}]"#,
            1,
            2,
        ));
        assert_eq!(v["valid"], json!(false));
        let v = parse(eckmann_hilton(
            3,
            1,
            r#"[{"cell":"lunit","value":1}, {"cell":"runit","value":2}]"#,
            0,
            0,
        ));
        assert_eq!(v["valid"], json!(false));
    }

    #[test]
    fn sign_pentagon_grid() {
        let v = parse(sign_pentagon(0));
        assert_eq!(v["valid"], json!(true));
        assert_eq!(v["signs"][7], json!(-1));
        // Flipping a_{111} undoes the cocycle: still valid.
        assert_eq!(parse(sign_pentagon(1 << 7))["valid"], json!(true));
        let v = parse(sign_pentagon(1 << 6));
        assert_eq!(v["valid"], json!(false));
        assert!(v["pentagon"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["commutes"] == json!(false)));
    }
}
