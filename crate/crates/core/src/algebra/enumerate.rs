use std::collections::BTreeSet;

use super::{CMonDIE, FiniteMonoid};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SIZE: usize = 5;
pub const MAX_SIZE_ENV: &str = "DEGLAB_MAX_SIZE";

/// Enumeration cap: `DEGLAB_MAX_SIZE` if set and parseable, else 5.
pub fn max_enumeration_size() -> usize {
    std::env::var(MAX_SIZE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_SIZE)
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn relabelled_table(m: &FiniteMonoid, perm: &[usize], buf: &mut [usize]) {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            buf[perm[x] * n + perm[y]] = perm[m.mul(x, y)];
        }
    }
}

/// Lexicographically least relabelling of `m`. The unit always lands on `0`,
/// so only permutations sending the unit to `0` are tried.
pub fn canonical_form(m: &FiniteMonoid) -> FiniteMonoid {
    let n = m.size();
    let mut best: Option<Vec<usize>> = None;
    let mut buf = vec![0; n * n];
    for rest in permutations(n - 1) {
        // Place the unit at 0 and the remaining elements in the order given by `rest`.
        let others: Vec<usize> = (0..n).filter(|&x| x != m.unit()).collect();
        let mut perm = vec![0; n];
        for (k, &x) in others.iter().enumerate() {
            perm[x] = rest[k] + 1;
        }
        relabelled_table(m, &perm, &mut buf);
        if best.as_ref().is_none_or(|b| buf[..] < b[..]) {
            best = Some(buf.clone());
        }
    }
    FiniteMonoid::from_flat_unchecked(n, 0, best.expect("at least one permutation"))
}

/// A bijection `perm` (index in `a` -> index in `b`) that is a monoid
/// isomorphism, found by exhaustive search.
pub fn isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<usize>> {
    isomorphism_fixing(a, b, &[])
}

/// Like [`isomorphism`], restricted to bijections with `p[x] = y` for every
/// `(x, y)` in `fixed`.
pub fn isomorphism_fixing(a: &FiniteMonoid, b: &FiniteMonoid, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    permutations(a.size()).into_iter().find(|p| {
        p[a.unit()] == b.unit()
            && fixed.iter().all(|&(x, y)| p[x] == y)
            && a.elements()
                .all(|x| a.elements().all(|y| p[a.mul(x, y)] == b.mul(p[x], p[y])))
    })
}

struct Search {
    n: usize,
    commutative: bool,
    table: Vec<usize>,
    cells: Vec<(usize, usize)>,
    found: BTreeSet<Vec<usize>>,
    perms: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl Search {
    fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    fn associative_so_far(&self) -> bool {
        let n = self.n;
        for x in 1..n {
            for y in 1..n {
                let xy = self.get(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 1..n {
                    let yz = self.get(y, z);
                    if yz == UNSET {
                        continue;
                    }
                    let l = self.get(xy, z);
                    let r = self.get(x, yz);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.cells.len() {
            self.record();
            return;
        }
        let (i, j) = self.cells[k];
        for v in 0..self.n {
            self.table[i * self.n + j] = v;
            if self.commutative {
                self.table[j * self.n + i] = v;
            }
            if self.associative_so_far() {
                self.run(k + 1);
            }
        }
        self.table[i * self.n + j] = UNSET;
        if self.commutative {
            self.table[j * self.n + i] = UNSET;
        }
    }

    fn record(&mut self) {
        let n = self.n;
        let mut best: Option<Vec<usize>> = None;
        let mut buf = vec![0; n * n];
        for perm in &self.perms {
            for x in 0..n {
                for y in 0..n {
                    buf[perm[x] * n + perm[y]] = perm[self.table[x * n + y]];
                }
            }
            if best.as_ref().is_none_or(|b| buf[..] < b[..]) {
                best = Some(buf.clone());
            }
        }
        self.found.insert(best.expect("nonempty"));
    }
}

/// Every monoid of order `n` up to isomorphism, each in canonical form
/// (unit `0`, lexicographically least table), sorted by table.
pub fn enumerate_monoids_with_limit(n: usize, commutative_only: bool, limit: usize) -> Result<Vec<FiniteMonoid>> {
    if n > limit {
        return Err(Error::BoundExceeded { requested: n, limit });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
    }
    let cells = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !commutative_only || i <= j)
        .collect();
    // Permutations fixing the unit.
    let perms = permutations(n - 1)
        .into_iter()
        .map(|p| std::iter::once(0).chain(p.into_iter().map(|v| v + 1)).collect())
        .collect();
    let mut search = Search {
        n,
        commutative: commutative_only,
        table,
        cells,
        found: BTreeSet::new(),
        perms,
    };
    search.run(0);
    Ok(search
        .found
        .into_iter()
        .map(|t| FiniteMonoid::from_flat_unchecked(n, 0, t))
        .collect())
}

/// [`enumerate_monoids_with_limit`] capped by [`max_enumeration_size`].
pub fn enumerate_monoids(n: usize, commutative_only: bool) -> Result<Vec<FiniteMonoid>> {
    enumerate_monoids_with_limit(n, commutative_only, max_enumeration_size())
}

/// All monoids of order `1..=max_size`, smallest first.
pub fn all_monoids_up_to(max_size: usize, commutative_only: bool) -> Result<Vec<FiniteMonoid>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(enumerate_monoids(n, commutative_only)?);
    }
    Ok(out)
}

/// Every `(X, d)` with `X` a canonical commutative monoid of order at most
/// `max_size` and `d` any invertible element of `X`.
pub fn enumerate_cmon_dies(max_size: usize) -> Result<Vec<CMonDIE>> {
    let mut out = Vec::new();
    for m in all_monoids_up_to(max_size, true)? {
        for d in m.invertibles() {
            let inv = m.invert(d).expect("invertible");
            out.push(CMonDIE::new_unchecked(m.clone(), d, inv));
        }
    }
    Ok(out)
}

/// All homomorphisms `source -> target`, as maps, in lexicographic order.
pub fn enumerate_homs(source: &FiniteMonoid, target: &FiniteMonoid) -> Vec<Vec<usize>> {
    fn go(s: &FiniteMonoid, t: &FiniteMonoid, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = map.len();
        if k == s.size() {
            out.push(map.clone());
            return;
        }
        for v in t.elements() {
            if k == s.unit() && v != t.unit() {
                continue;
            }
            map.push(v);
            // Check every product whose factors and result are already mapped.
            let ok = (0..=k).all(|x| {
                (0..=k).all(|y| {
                    let xy = s.mul(x, y);
                    xy > k || map[xy] == t.mul(map[x], map[y])
                })
            });
            if ok {
                go(s, t, map, out);
            }
            map.pop();
        }
    }
    let mut out = Vec::new();
    go(source, target, &mut Vec::with_capacity(source.size()), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_hom;

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_monoids_with_limit(1, false, 5).unwrap().len(), 1);
        let two = enumerate_monoids_with_limit(2, false, 5).unwrap();
        assert_eq!(two.len(), 2);
        let z2 = canonical_form(&FiniteMonoid::cyclic(2));
        let or = canonical_form(&FiniteMonoid::bool_or());
        assert!(two.contains(&z2));
        assert!(two.contains(&or));
        assert_ne!(z2, or);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_monoids_with_limit(6, false, 5),
            Err(Error::BoundExceeded { requested: 6, limit: 5 })
        ));
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let m = FiniteMonoid::left_zero_with_unit(2);
        for p in permutations(3) {
            assert_eq!(canonical_form(&m.relabel(&p)), canonical_form(&m));
        }
    }

    #[test]
    fn hom_enumeration_matches_brute_force() {
        let ms = all_monoids_up_to(3, false).unwrap();
        for a in &ms {
            for b in &ms {
                let mut brute = Vec::new();
                let total = b.size().pow(a.size() as u32);
                for code in 0..total {
                    let map: Vec<usize> = (0..a.size())
                        .map(|i| code / b.size().pow((a.size() - 1 - i) as u32) % b.size())
                        .collect();
                    if check_hom(a, b, &map).unwrap().is_valid() {
                        brute.push(map);
                    }
                }
                assert_eq!(enumerate_homs(a, b), brute);
            }
        }
    }
}
