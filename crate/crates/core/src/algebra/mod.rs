//! Finite monoids given by Cayley tables, their homomorphisms, and commutative
//! monoids carrying a distinguished invertible element.
//!
//! Elements are dense indices `0..size`; tables are row-major with
//! `mul(x, y) = table[x * size + y]`. The unit is an explicit index and need
//! not be `0`.

mod enumerate;

pub use enumerate::{
    all_monoids_up_to, canonical_form, enumerate_cmon_dies, enumerate_homs, enumerate_monoids,
    enumerate_monoids_with_limit, isomorphism, isomorphism_fixing, max_enumeration_size, DEFAULT_MAX_SIZE,
    MAX_SIZE_ENV,
};

use std::fmt;

use crate::error::{structure, Error, Result};
use crate::report::ValidationReport;

/// A finite monoid. Values of this type always satisfy the monoid axioms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMonoid {
    size: usize,
    unit: usize,
    table: Vec<usize>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid(unit={}, {:?})", self.unit, self.rows())
    }
}

/// Structural check of a square table; returns the flattened table.
fn flatten_square(rows: &[Vec<usize>], what: &str) -> Result<Vec<usize>> {
    let n = rows.len();
    if n == 0 {
        return structure(format!("{what}: empty table"));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return structure(format!("{what}: row {i} has length {}, expected {n}", row.len()));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return structure(format!("{what}: entry [{i}][{j}] = {v} out of range 0..{n}"));
            }
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

fn monoid_axioms(n: usize, unit: usize, table: &[usize]) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mul = |x: usize, y: usize| table[x * n + y];
    for x in 0..n {
        report.expect(mul(unit, x) == x, "left_unit", &[x], || {
            format!("mul(unit, {x}) = {} != {x}", mul(unit, x))
        });
        report.expect(mul(x, unit) == x, "right_unit", &[x], || {
            format!("mul({x}, unit) = {} != {x}", mul(x, unit))
        });
    }
    for x in 0..n {
        for y in 0..n {
            let xy = mul(x, y);
            for z in 0..n {
                let lhs = mul(xy, z);
                let rhs = mul(x, mul(y, z));
                report.expect(lhs == rhs, "associativity", &[x, y, z], || {
                    format!("({x}*{y})*{z} = {lhs} but {x}*({y}*{z}) = {rhs}")
                });
            }
        }
    }
    report
}

/// Check the monoid axioms on raw table data. Structural problems (ragged or
/// out-of-range tables, unit out of range) are errors; axiom failures are
/// listed in the report.
pub fn check_monoid(rows: &[Vec<usize>], unit: usize) -> Result<ValidationReport> {
    let table = flatten_square(rows, "mul")?;
    let n = rows.len();
    if unit >= n {
        return structure(format!("unit {unit} out of range 0..{n}"));
    }
    Ok(monoid_axioms(n, unit, &table))
}

impl FiniteMonoid {
    pub fn new(unit: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let report = check_monoid(&rows, unit)?;
        let table = flatten_square(&rows, "mul")?;
        report.into_result(Self {
            size: rows.len(),
            unit,
            table,
        })
    }

    pub fn from_flat(size: usize, unit: usize, table: Vec<usize>) -> Result<Self> {
        if size == 0 || table.len() != size * size {
            return structure(format!("table of length {} is not {size}x{size}", table.len()));
        }
        if unit >= size || table.iter().any(|&v| v >= size) {
            return structure("index out of range");
        }
        monoid_axioms(size, unit, &table).into_result(Self { size, unit, table })
    }

    /// Caller guarantees the axioms (used by enumeration and relabelling).
    pub(crate) fn from_flat_unchecked(size: usize, unit: usize, table: Vec<usize>) -> Self {
        debug_assert!(monoid_axioms(size, unit, &table).is_valid());
        Self { size, unit, table }
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, 0, vec![0])
    }

    /// Additive integers modulo `n`, unit `0`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic monoid needs n > 0");
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat_unchecked(n, 0, table)
    }

    /// `{0, 1}` under boolean OR, unit `0`.
    pub fn bool_or() -> Self {
        Self::from_flat_unchecked(2, 0, vec![0, 1, 1, 1])
    }

    /// A left-zero semigroup on `k` elements with an adjoined unit `0`:
    /// `x * y = x` for `x, y >= 1`.
    pub fn left_zero_with_unit(k: usize) -> Self {
        let n = k + 1;
        let table = (0..n * n)
            .map(|idx| {
                let (x, y) = (idx / n, idx % n);
                if x == 0 {
                    y
                } else {
                    x
                }
            })
            .collect();
        Self::from_flat_unchecked(n, 0, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// Product of a sequence, left to right; the empty product is the unit.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.unit, |acc, &x| self.mul(acc, x))
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_commutative(&self) -> bool {
        check_commutative(self).is_empty()
    }

    pub fn invert(&self, x: usize) -> Option<usize> {
        invert(self, x)
    }

    pub fn is_invertible(&self, x: usize) -> bool {
        invert(self, x).is_some()
    }

    pub fn invertibles(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_invertible(x)).collect()
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&c| self.elements().all(|x| self.mul(c, x) == self.mul(x, c)))
            .collect()
    }

    /// Relabel elements along the bijection `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        Self::from_flat_unchecked(n, perm[self.unit], table)
    }
}

/// Unordered pairs `(x, y)` with `x < y` and `x*y != y*x`.
pub fn check_commutative(m: &FiniteMonoid) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in m.elements() {
        for y in x + 1..m.size() {
            if m.mul(x, y) != m.mul(y, x) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Two-sided inverse of `x`, if one exists.
pub fn invert(m: &FiniteMonoid, x: usize) -> Option<usize> {
    m.elements()
        .find(|&y| m.mul(x, y) == m.unit() && m.mul(y, x) == m.unit())
}

/// Check the homomorphism laws for a raw map between two monoids.
pub fn check_hom(source: &FiniteMonoid, target: &FiniteMonoid, map: &[usize]) -> Result<ValidationReport> {
    if map.len() != source.size() {
        return structure(format!(
            "map has {} entries but the source has {} elements",
            map.len(),
            source.size()
        ));
    }
    if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= target.size()) {
        return structure(format!("map[{i}] = {v} out of range 0..{}", target.size()));
    }
    let mut report = ValidationReport::new();
    report.expect(
        map[source.unit()] == target.unit(),
        "preserves_unit",
        &[source.unit()],
        || {
            format!(
                "unit {} maps to {}, target unit is {}",
                source.unit(),
                map[source.unit()],
                target.unit()
            )
        },
    );
    for x in source.elements() {
        for y in source.elements() {
            let lhs = map[source.mul(x, y)];
            let rhs = target.mul(map[x], map[y]);
            report.expect(lhs == rhs, "preserves_mul", &[x, y], || {
                format!("F({x}*{y}) = {lhs} but F{x}*F{y} = {rhs}")
            });
        }
    }
    Ok(report)
}

/// A monoid homomorphism. Values of this type satisfy the hom laws.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidHom {
    source: FiniteMonoid,
    target: FiniteMonoid,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: FiniteMonoid, target: FiniteMonoid, map: Vec<usize>) -> Result<Self> {
        let report = check_hom(&source, &target, &map)?;
        report.into_result(Self { source, target, map })
    }

    pub(crate) fn new_unchecked(source: FiniteMonoid, target: FiniteMonoid, map: Vec<usize>) -> Self {
        Self { source, target, map }
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), m.elements().collect())
    }

    /// The homomorphism sending everything to the unit.
    pub fn to_unit(source: &FiniteMonoid, target: &FiniteMonoid) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), vec![target.unit(); source.size()])
    }

    pub fn source(&self) -> &FiniteMonoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &MonoidHom) -> Result<MonoidHom> {
        if first.target != self.source {
            return Err(Error::Mismatch(
                "target of the first hom is not the source of the second".into(),
            ));
        }
        let map = first.map.iter().map(|&x| self.map[x]).collect();
        Ok(Self::new_unchecked(first.source.clone(), self.target.clone(), map))
    }

    pub fn check(&self) -> ValidationReport {
        check_hom(&self.source, &self.target, &self.map).expect("validated at construction")
    }
}

/// Commutative monoid with a distinguished invertible element and a witness
/// for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CMonDIE {
    monoid: FiniteMonoid,
    die: usize,
    die_inv: usize,
}

/// Check a raw (monoid table, die, inverse witness) triple. When the witness
/// is absent the inverse is searched for.
pub fn check_cmon_die(
    rows: &[Vec<usize>],
    unit: usize,
    die: usize,
    die_inv: Option<usize>,
) -> Result<ValidationReport> {
    let mut report = check_monoid(rows, unit)?.scoped("monoid");
    let n = rows.len();
    if die >= n || die_inv.is_some_and(|d| d >= n) {
        return structure(format!("distinguished element out of range 0..{n}"));
    }
    if !report.is_valid() {
        return Ok(report);
    }
    let m = FiniteMonoid::from_flat_unchecked(n, unit, rows.concat());
    for (x, y) in check_commutative(&m) {
        report.push(
            "commutativity",
            vec![x, y],
            format!("{x}*{y} = {} but {y}*{x} = {}", m.mul(x, y), m.mul(y, x)),
        );
    }
    match die_inv {
        Some(inv) => {
            let ok = m.mul(die, inv) == unit && m.mul(inv, die) == unit;
            report.expect(ok, "inverse_witness", &[die, inv], || {
                format!(
                    "{die}*{inv} = {}, {inv}*{die} = {}, unit is {unit}",
                    m.mul(die, inv),
                    m.mul(inv, die)
                )
            });
        }
        None => {
            report.expect(m.is_invertible(die), "invertible", &[die], || {
                format!("{die} has no inverse")
            });
        }
    }
    Ok(report)
}

impl CMonDIE {
    pub fn new(monoid: FiniteMonoid, die: usize) -> Result<Self> {
        let report = check_cmon_die(&monoid.rows(), monoid.unit(), die, None)?;
        if !report.is_valid() {
            return Err(Error::Axioms(report));
        }
        let die_inv = monoid.invert(die).expect("checked invertible");
        Ok(Self { monoid, die, die_inv })
    }

    pub fn with_witness(monoid: FiniteMonoid, die: usize, die_inv: usize) -> Result<Self> {
        let report = check_cmon_die(&monoid.rows(), monoid.unit(), die, Some(die_inv))?;
        report.into_result(Self { monoid, die, die_inv })
    }

    /// The distinguished element is the unit.
    pub fn with_unit_die(monoid: FiniteMonoid) -> Result<Self> {
        let u = monoid.unit();
        Self::new(monoid, u)
    }

    pub(crate) fn new_unchecked(monoid: FiniteMonoid, die: usize, die_inv: usize) -> Self {
        Self { monoid, die, die_inv }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn die(&self) -> usize {
        self.die
    }

    pub fn die_inv(&self) -> usize {
        self.die_inv
    }

    pub fn check(&self) -> ValidationReport {
        check_cmon_die(&self.monoid.rows(), self.monoid.unit(), self.die, Some(self.die_inv))
            .expect("well-formed by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteMonoid {
        FiniteMonoid::cyclic(2)
    }

    #[test]
    fn stock_monoids_are_valid() {
        assert!(check_monoid(&[vec![0]], 0).unwrap().is_valid());
        assert!(check_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap().is_valid());
        assert!(check_monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap().is_valid());
        for k in 1..4 {
            assert!(FiniteMonoid::left_zero_with_unit(k).check_axioms().is_valid());
        }
    }

    impl FiniteMonoid {
        fn check_axioms(&self) -> ValidationReport {
            check_monoid(&self.rows(), self.unit()).unwrap()
        }
    }

    #[test]
    fn unit_law_failure_is_located() {
        let r = check_monoid(&[vec![0, 1], vec![0, 0]], 0).unwrap();
        assert!(!r.is_valid());
        let right: Vec<_> = r.violations_of("right_unit").collect();
        assert_eq!(right.len(), 1);
        assert_eq!(right[0].at, vec![1]);
        assert_eq!(r.count("left_unit"), 0);
    }

    #[test]
    fn structural_errors_are_not_axiom_failures() {
        assert!(matches!(
            check_monoid(&[vec![0, 1], vec![1]], 0),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            check_monoid(&[vec![0, 2], vec![1, 0]], 0),
            Err(Error::Structure(_))
        ));
        assert!(matches!(check_monoid(&[vec![0]], 1), Err(Error::Structure(_))));
        assert!(matches!(check_monoid(&[], 0), Err(Error::Structure(_))));
    }

    #[test]
    fn commutativity() {
        assert!(check_commutative(&z2()).is_empty());
        assert!(check_commutative(&FiniteMonoid::bool_or()).is_empty());
        assert_eq!(check_commutative(&FiniteMonoid::left_zero_with_unit(2)), vec![(1, 2)]);
    }

    #[test]
    fn inverses() {
        assert_eq!(invert(&z2(), 1), Some(1));
        for m in [z2(), FiniteMonoid::bool_or(), FiniteMonoid::cyclic(5)] {
            assert_eq!(invert(&m, m.unit()), Some(m.unit()));
        }
        assert_eq!(invert(&FiniteMonoid::bool_or(), 1), None);
    }

    #[test]
    fn homs() {
        let id = MonoidHom::identity(&z2());
        assert!(id.check().is_valid());
        assert!(MonoidHom::to_unit(&FiniteMonoid::bool_or(), &z2()).check().is_valid());
        let swap = check_hom(&z2(), &z2(), &[1, 0]).unwrap();
        assert!(swap.count("preserves_unit") == 1);
        assert!(matches!(check_hom(&z2(), &z2(), &[0]), Err(Error::Structure(_))));
    }

    #[test]
    fn cmon_die_checks() {
        let rows = z2().rows();
        assert!(check_cmon_die(&rows, 0, 1, Some(1)).unwrap().is_valid());
        let bad = check_cmon_die(&rows, 0, 1, Some(0)).unwrap();
        assert_eq!(bad.failed_axioms(), vec!["inverse_witness"]);
        let or = check_cmon_die(&FiniteMonoid::bool_or().rows(), 0, 1, None).unwrap();
        assert_eq!(or.failed_axioms(), vec!["invertible"]);
        let nc = FiniteMonoid::left_zero_with_unit(2);
        let r = check_cmon_die(&nc.rows(), 0, 0, None).unwrap();
        assert_eq!(r.failed_axioms(), vec!["commutativity"]);
    }

    #[test]
    fn relabel_is_an_isomorphism() {
        let m = FiniteMonoid::left_zero_with_unit(2);
        let r = m.relabel(&[2, 0, 1]);
        assert_eq!(r.unit(), 2);
        assert!(r.check_axioms().is_valid());
        assert!(check_hom(&m, &r, &[2, 0, 1]).unwrap().is_valid());
    }
}
