//! Bicategories with one 0-cell and one 1-cell, stored as raw finite data.
//!
//! All 2-cells are endomorphisms of the single 1-cell `I`, so vertical
//! composition `∘` and horizontal composition `∗` are both binary operations
//! on one finite set, and the associator and unitors are single cells.
//! Conventions: `x ∘ y` applies `y` first; `l: I∗f ⇒ f`, `r: f∗I ⇒ f`,
//! `a: (h∗g)∗f ⇒ h∗(g∗f)`.
//!
//! Nothing about the relation between `∘` and `∗` is assumed: both tables
//! are stored and the checker derives their equality.

mod functor;
mod xi;

pub use functor::{
    analyze_weak_functor, check_modification, compose_dd_functors, enumerate_lax_transformations,
    enumerate_weak_functors, lax_functor_report, promote_lax, transformation_axioms, transformation_between,
    unit_constraint, DDFunctor, DDModification, DDTransformation, FunctorAnalysis,
};
pub use xi::{
    bicat2_1, bicat2_2, check_xi1_equivalence, check_xi2_equivalence, restrict_identity_constraint,
    witness_xi_unfaithful, xi, BicatCell, XiImage, XiUnfaithful,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_monoid, CMonDIE, FiniteMonoid};
use crate::error::{structure, Error, Result};
use crate::report::ValidationReport;

/// Raw doubly degenerate bicategory data. `vcomp[x][y] = x ∘ y` and
/// `hcomp[x][y] = x ∗ y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DDBicat {
    pub cells: usize,
    pub id2: usize,
    pub vcomp: Vec<Vec<usize>>,
    pub hcomp: Vec<Vec<usize>>,
    pub assoc: usize,
    pub assoc_inv: usize,
    pub lunit: usize,
    pub lunit_inv: usize,
    pub runit: usize,
    pub runit_inv: usize,
}

impl DDBicat {
    /// `x ∘ y`.
    pub fn v(&self, x: usize, y: usize) -> usize {
        self.vcomp[x][y]
    }

    /// `x ∗ y`.
    pub fn h(&self, x: usize, y: usize) -> usize {
        self.hcomp[x][y]
    }

    /// `x1 ∘ x2 ∘ … ∘ xk`, bracketed to the left.
    pub fn vchain(&self, xs: &[usize]) -> usize {
        xs.iter().copied().reduce(|acc, x| self.v(acc, x)).unwrap_or(self.id2)
    }

    pub fn check_structure(&self) -> Result<()> {
        let n = self.cells;
        if n == 0 {
            return structure("a doubly degenerate bicategory has at least the identity 2-cell");
        }
        for (name, table) in [("vcomp", &self.vcomp), ("hcomp", &self.hcomp)] {
            if table.len() != n || table.iter().any(|r| r.len() != n) {
                return structure(format!("{name} must be {n}x{n}"));
            }
            if table.iter().flatten().any(|&x| x >= n) {
                return structure(format!("{name} has an entry out of range 0..{n}"));
            }
        }
        for (name, x) in self.constraint_cells() {
            if x >= n {
                return structure(format!("{name} = {x} out of range 0..{n}"));
            }
        }
        Ok(())
    }

    fn constraint_cells(&self) -> [(&'static str, usize); 7] {
        [
            ("id2", self.id2),
            ("assoc", self.assoc),
            ("assoc_inv", self.assoc_inv),
            ("lunit", self.lunit),
            ("lunit_inv", self.lunit_inv),
            ("runit", self.runit),
            ("runit_inv", self.runit_inv),
        ]
    }

    /// The underlying vertical monoid, if the vertical table is one.
    pub fn vertical_monoid(&self) -> Result<FiniteMonoid> {
        self.check_structure()?;
        FiniteMonoid::new(self.id2, self.vcomp.clone())
    }
}

/// Check every axiom instance. Structural problems are an `Err`; axiom
/// failures are listed in the report, grouped by axiom name.
pub fn check_ddbicat(b: &DDBicat) -> Result<ValidationReport> {
    b.check_structure()?;
    let n = b.cells;
    let one = b.id2;
    let mut r = check_monoid(&b.vcomp, one)?.scoped("vcomp");

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = b.h(b.v(x, y), b.v(z, w));
                    let rhs = b.v(b.h(x, z), b.h(y, w));
                    r.expect(lhs == rhs, "interchange", &[x, y, z, w], || {
                        format!("({x}∘{y})∗({z}∘{w}) = {lhs} but ({x}∗{z})∘({y}∗{w}) = {rhs}")
                    });
                }
            }
        }
    }
    r.expect(b.h(one, one) == one, "hcomp_identity", &[one], || {
        format!("1∗1 = {}", b.h(one, one))
    });

    for (name, x, inv) in [
        ("assoc_invertible", b.assoc, b.assoc_inv),
        ("lunit_invertible", b.lunit, b.lunit_inv),
        ("runit_invertible", b.runit, b.runit_inv),
    ] {
        r.expect(b.v(x, inv) == one && b.v(inv, x) == one, name, &[x, inv], || {
            format!("{x}∘{inv} = {}, {inv}∘{x} = {}", b.v(x, inv), b.v(inv, x))
        });
    }

    let (a, l, rr) = (b.assoc, b.lunit, b.runit);
    for x in 0..n {
        let lhs = b.v(l, b.h(one, x));
        let rhs = b.v(x, l);
        r.expect(lhs == rhs, "lunit_naturality", &[x], || {
            format!("l∘(1∗{x}) = {lhs} but {x}∘l = {rhs}")
        });
        let lhs = b.v(rr, b.h(x, one));
        let rhs = b.v(x, rr);
        r.expect(lhs == rhs, "runit_naturality", &[x], || {
            format!("r∘({x}∗1) = {lhs} but {x}∘r = {rhs}")
        });
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b.v(a, b.h(b.h(x, y), z));
                let rhs = b.v(b.h(x, b.h(y, z)), a);
                r.expect(lhs == rhs, "assoc_naturality", &[x, y, z], || {
                    format!("a∘(({x}∗{y})∗{z}) = {lhs} but ({x}∗({y}∗{z}))∘a = {rhs}")
                });
            }
        }
    }

    let lhs = b.vchain(&[b.h(one, a), a, b.h(a, one)]);
    let rhs = b.v(a, a);
    r.expect(lhs == rhs, "pentagon", &[a], || {
        format!("(1∗a)∘a∘(a∗1) = {lhs} but a∘a = {rhs}")
    });
    let lhs = b.v(b.h(one, l), a);
    let rhs = b.h(rr, one);
    r.expect(lhs == rhs, "triangle", &[a, l, rr], || {
        format!("(1∗l)∘a = {lhs} but r∗1 = {rhs}")
    });
    Ok(r)
}

/// Number of expressions in the commutativity calculation, from `β∘α` to
/// `α∘β`.
pub const EH_CHAIN_LEN: usize = 11;

/// The expressions of the commutativity calculation for a pair `(α, β)`,
/// evaluated on the raw tables. Consecutive entries are equal on valid
/// input; the first and last are `β∘α` and `α∘β`.
pub fn eh_chain(b: &DDBicat, alpha: usize, beta: usize) -> [usize; EH_CHAIN_LEN] {
    let one = b.id2;
    let (l, li, r, ri) = (b.lunit, b.lunit_inv, b.runit, b.runit_inv);
    let conj_l = |x: usize| b.vchain(&[l, x, li]);
    let conj_r = |x: usize| b.vchain(&[r, x, ri]);
    [
        b.v(beta, alpha),
        b.v(conj_l(b.h(one, beta)), conj_r(b.h(alpha, one))),
        b.v(conj_l(b.h(one, beta)), conj_l(b.h(alpha, one))),
        b.vchain(&[l, b.h(one, beta), b.h(alpha, one), li]),
        conj_l(b.h(b.v(one, alpha), b.v(beta, one))),
        conj_l(b.h(alpha, beta)),
        conj_l(b.h(b.v(alpha, one), b.v(one, beta))),
        b.vchain(&[l, b.h(alpha, one), b.h(one, beta), li]),
        b.v(conj_l(b.h(alpha, one)), conj_l(b.h(one, beta))),
        b.v(conj_r(b.h(alpha, one)), conj_l(b.h(one, beta))),
        b.v(alpha, beta),
    ]
}

/// `α ⊙ β = l ∘ (α∗β) ∘ l⁻¹`.
pub fn odot(b: &DDBicat, alpha: usize, beta: usize) -> usize {
    b.vchain(&[b.lunit, b.h(alpha, beta), b.lunit_inv])
}

/// Verify, on every pair and triple, the consequences of the axioms: the
/// commutativity calculation step by step, `∘` commutative, `∗ = ∘ = ⊙`,
/// `l = r`, `a³ = a²` and `a = 1`. Any violation on input that passed
/// [`check_ddbicat`] refutes the characterization for that instance.
pub fn eckmann_hilton_report(b: &DDBicat) -> Result<ValidationReport> {
    b.check_structure()?;
    let n = b.cells;
    let mut r = ValidationReport::new();
    for alpha in 0..n {
        for beta in 0..n {
            let chain = eh_chain(b, alpha, beta);
            if let Some(step) = (1..EH_CHAIN_LEN).find(|&k| chain[k] != chain[k - 1]) {
                r.push(
                    "eh_chain",
                    vec![alpha, beta, step],
                    format!(
                        "step {step} changes the value from {} to {}",
                        chain[step - 1],
                        chain[step]
                    ),
                );
            }
            r.expect(
                b.v(alpha, beta) == b.v(beta, alpha),
                "vcomp_commutative",
                &[alpha, beta],
                || {
                    format!(
                        "{alpha}∘{beta} = {} but {beta}∘{alpha} = {}",
                        b.v(alpha, beta),
                        b.v(beta, alpha)
                    )
                },
            );
            r.expect(
                b.h(alpha, beta) == b.v(alpha, beta),
                "hcomp_equals_vcomp",
                &[alpha, beta],
                || {
                    format!(
                        "{alpha}∗{beta} = {} but {alpha}∘{beta} = {}",
                        b.h(alpha, beta),
                        b.v(alpha, beta)
                    )
                },
            );
            let o = odot(b, alpha, beta);
            r.expect(
                o == b.v(alpha, beta) && o == b.h(alpha, beta),
                "odot_agrees",
                &[alpha, beta],
                || format!("{alpha}⊙{beta} = {o}"),
            );
            let o_r = b.vchain(&[b.runit, b.h(alpha, beta), b.runit_inv]);
            r.expect(o_r == o, "odot_r_agrees", &[alpha, beta], || {
                format!("r∘({alpha}∗{beta})∘r⁻¹ = {o_r} but {alpha}⊙{beta} = {o}")
            });
        }
    }
    r.expect(b.lunit == b.runit, "l_equals_r", &[b.lunit, b.runit], || {
        format!("l = {} but r = {}", b.lunit, b.runit)
    });
    let a = b.assoc;
    let (a2, a3) = (b.v(a, a), b.vchain(&[a, a, a]));
    r.expect(a3 == a2, "assoc_cube_equals_square", &[a], || {
        format!("a³ = {a3} but a² = {a2}")
    });
    r.expect(a == b.id2, "assoc_is_identity", &[a], || {
        format!("a = {a} is not the identity {}", b.id2)
    });
    Ok(r)
}

/// Read off `(X, d_X)`: the vertical monoid and the common value of the
/// unitors.
pub fn extract_cmon_die(b: &DDBicat) -> Result<CMonDIE> {
    let report = check_ddbicat(b)?;
    if !report.is_valid() {
        return Err(Error::Axioms(report));
    }
    let eh = eckmann_hilton_report(b)?;
    if !eh.is_valid() {
        return Err(Error::Refutation(format!(
            "valid input violates the Eckmann–Hilton consequences: {eh}"
        )));
    }
    let monoid = FiniteMonoid::new(b.id2, b.vcomp.clone())?;
    CMonDIE::with_witness(monoid, b.lunit, b.lunit_inv)
}

/// The doubly degenerate bicategory with both compositions the monoid
/// product, trivial associator and both unitors `d`.
pub fn build_ddbicat(s: &CMonDIE) -> DDBicat {
    let m = s.monoid();
    DDBicat {
        cells: m.size(),
        id2: m.unit(),
        vcomp: m.rows(),
        hcomp: m.rows(),
        assoc: m.unit(),
        assoc_inv: m.unit(),
        lunit: s.die(),
        lunit_inv: s.die_inv(),
        runit: s.die(),
        runit_inv: s.die_inv(),
    }
}

/// Every valid raw doubly degenerate bicategory with `n` cells whose
/// vertical monoid is one of the given tables. Horizontal tables are found
/// by backtracking with interchange pruning; constraint cells range over
/// all invertible elements.
pub fn search_ddbicats(n: usize, vertical: &[FiniteMonoid]) -> Vec<DDBicat> {
    let mut out = Vec::new();
    for m in vertical.iter().filter(|m| m.size() == n) {
        let rows = m.rows();
        let mut h = vec![usize::MAX; n * n];
        let mut tables = Vec::new();
        fill_hcomp(m, 0, &mut h, &mut tables);
        let inv = m.invertibles();
        for table in tables {
            let hcomp: Vec<Vec<usize>> = table.chunks(n).map(<[_]>::to_vec).collect();
            for &a in &inv {
                for &l in &inv {
                    for &r in &inv {
                        let b = DDBicat {
                            cells: n,
                            id2: m.unit(),
                            vcomp: rows.clone(),
                            hcomp: hcomp.clone(),
                            assoc: a,
                            assoc_inv: m.invert(a).unwrap(),
                            lunit: l,
                            lunit_inv: m.invert(l).unwrap(),
                            runit: r,
                            runit_inv: m.invert(r).unwrap(),
                        };
                        if check_ddbicat(&b).map(|r| r.is_valid()).unwrap_or(false) {
                            out.push(b);
                        }
                    }
                }
            }
        }
    }
    out
}

fn fill_hcomp(m: &FiniteMonoid, k: usize, h: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let n = m.size();
    if k == n * n {
        out.push(h.clone());
        return;
    }
    for v in 0..n {
        h[k] = v;
        if interchange_consistent(m, h) {
            fill_hcomp(m, k + 1, h, out);
        }
    }
    h[k] = usize::MAX;
}

fn interchange_consistent(m: &FiniteMonoid, h: &[usize]) -> bool {
    let n = m.size();
    let get = |x: usize, y: usize| h[x * n + y];
    let u = m.unit();
    if get(u, u) != usize::MAX && get(u, u) != u {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let (lhs, xz, yw) = (get(m.mul(x, y), m.mul(z, w)), get(x, z), get(y, w));
                    if lhs != usize::MAX && xz != usize::MAX && yw != usize::MAX && lhs != m.mul(xz, yw) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Where a random tampering changed the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TamperSite {
    Vcomp { x: usize, y: usize },
    Hcomp { x: usize, y: usize },
    Constraint { name: String },
}

/// Change exactly one table entry or constraint cell to a different value.
/// Requires at least two cells.
pub fn random_tamper(b: &DDBicat, rng: &mut impl Rng) -> (DDBicat, TamperSite) {
    let n = b.cells;
    assert!(n >= 2, "tampering needs at least two cells");
    let mut t = b.clone();
    let fresh = |rng: &mut dyn rand::RngCore, old: usize| {
        let v = rng.gen_range(0..n - 1);
        if v >= old {
            v + 1
        } else {
            v
        }
    };
    let site = match rng.gen_range(0..3) {
        0 => {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            t.vcomp[x][y] = fresh(rng, t.vcomp[x][y]);
            TamperSite::Vcomp { x, y }
        }
        1 => {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            t.hcomp[x][y] = fresh(rng, t.hcomp[x][y]);
            TamperSite::Hcomp { x, y }
        }
        _ => {
            let names = ["id2", "assoc", "assoc_inv", "lunit", "lunit_inv", "runit", "runit_inv"];
            let name = names[rng.gen_range(0..names.len())];
            let slot = match name {
                "id2" => &mut t.id2,
                "assoc" => &mut t.assoc,
                "assoc_inv" => &mut t.assoc_inv,
                "lunit" => &mut t.lunit,
                "lunit_inv" => &mut t.lunit_inv,
                "runit" => &mut t.runit,
                _ => &mut t.runit_inv,
            };
            *slot = fresh(rng, *slot);
            TamperSite::Constraint { name: name.to_string() }
        }
    };
    (t, site)
}

/// Whether the checker or the Eckmann–Hilton report rejects `b`.
pub fn is_rejected(b: &DDBicat) -> bool {
    match check_ddbicat(b) {
        Err(_) => true,
        Ok(r) if !r.is_valid() => true,
        Ok(_) => !eckmann_hilton_report(b).map(|r| r.is_valid()).unwrap_or(false),
    }
}
