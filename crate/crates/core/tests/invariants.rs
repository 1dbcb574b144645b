use std::sync::OnceLock;

use deglab::algebra::{
    all_monoids_up_to, canonical_form, check_hom, check_monoid, enumerate_cmon_dies, CMonDIE, FiniteMonoid,
};
use deglab::doubly_degenerate::{
    build_ddbicat, compose_dd_functors, enumerate_weak_functors, extract_cmon_die, is_rejected, random_tamper,
};
use deglab::json::Document;
use deglab::monad::collapse_cases;
use deglab::monoidal::{check_monoidal, sign_category};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn monoids() -> &'static [FiniteMonoid] {
    static M: OnceLock<Vec<FiniteMonoid>> = OnceLock::new();
    M.get_or_init(|| all_monoids_up_to(4, false).unwrap())
}

fn dies() -> &'static [CMonDIE] {
    static D: OnceLock<Vec<CMonDIE>> = OnceLock::new();
    D.get_or_init(|| enumerate_cmon_dies(3).unwrap())
}

fn relabelled_monoid() -> impl Strategy<Value = (FiniteMonoid, Vec<usize>)> {
    prop::sample::select(monoids()).prop_flat_map(|m| {
        let perm = Just((0..m.size()).collect::<Vec<usize>>()).prop_shuffle();
        (Just(m), perm)
    })
}

fn brute_is_monoid(rows: &[Vec<usize>], unit: usize) -> bool {
    let n = rows.len();
    (0..n).all(|x| rows[unit][x] == x && rows[x][unit] == x)
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| rows[rows[x][y]][z] == rows[x][rows[y][z]])))
}

fn random_table() -> impl Strategy<Value = (Vec<Vec<usize>>, usize)> {
    (1usize..=3).prop_flat_map(|n| (prop::collection::vec(prop::collection::vec(0..n, n), n), 0..n))
}

proptest! {
    #[test]
    fn monoid_checker_matches_brute_force((rows, unit) in random_table()) {
        prop_assert_eq!(check_monoid(&rows, unit).unwrap().is_valid(), brute_is_monoid(&rows, unit));
    }

    #[test]
    fn relabelling_preserves_the_canonical_form((m, perm) in relabelled_monoid()) {
        let r = m.relabel(&perm);
        prop_assert!(check_monoid(&r.rows(), r.unit()).unwrap().is_valid());
        prop_assert!(check_hom(&m, &r, &perm).unwrap().is_valid());
        prop_assert_eq!(canonical_form(&r), canonical_form(&m));
    }

    #[test]
    fn canonical_json_is_a_fixed_point((m, perm) in relabelled_monoid()) {
        let doc = Document::Monoid((&m.relabel(&perm)).into());
        let text = doc.to_canonical().unwrap();
        prop_assert!(text.ends_with('\n') && !text.contains(' '));
        prop_assert_eq!(Document::parse(&text).unwrap().to_canonical().unwrap(), text);
    }

    #[test]
    fn build_then_extract_is_the_identity(s in prop::sample::select(dies())) {
        prop_assert_eq!(extract_cmon_die(&build_ddbicat(&s)).unwrap(), s);
    }

    #[test]
    fn tamperings_are_rejected(s in prop::sample::select(dies()), seed in any::<u64>()) {
        prop_assume!(s.monoid().size() >= 2);
        let mut rng = StdRng::seed_from_u64(seed);
        let (t, site) = random_tamper(&build_ddbicat(&s), &mut rng);
        prop_assert!(is_rejected(&t), "{:?}", site);
    }

    #[test]
    fn weak_functor_composition_is_associative(
        x in prop::sample::select(dies()),
        y in prop::sample::select(dies()),
        z in prop::sample::select(dies()),
        w in prop::sample::select(dies()),
        pick in any::<[usize; 3]>(),
    ) {
        let (fs, gs, hs) = (enumerate_weak_functors(&x, &y), enumerate_weak_functors(&y, &z), enumerate_weak_functors(&z, &w));
        prop_assume!(!fs.is_empty() && !gs.is_empty() && !hs.is_empty());
        let (f, g, h) = (&fs[pick[0] % fs.len()], &gs[pick[1] % gs.len()], &hs[pick[2] % hs.len()]);
        let l = compose_dd_functors(h, &compose_dd_functors(g, f).unwrap()).unwrap();
        let r = compose_dd_functors(&compose_dd_functors(h, g).unwrap(), f).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn sign_associators_are_valid_exactly_when_they_are_cocycles(bits in 0u8..=255) {
        let mut mc = sign_category();
        let sign = |x: usize, y: usize, z: usize| usize::from(bits >> (4 * x + 2 * y + z) & 1);
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    mc.assoc[x][y][z] = 2 * (x ^ y ^ z) + sign(x, y, z);
                }
            }
        }
        let cocycle = (0..16).all(|q: usize| {
            let (w, x, y, z) = (q >> 3 & 1, q >> 2 & 1, q >> 1 & 1, q & 1);
            sign(x, y, z) ^ sign(w, x ^ y, z) ^ sign(w, x, y) == sign(w, x, y ^ z) ^ sign(w ^ x, y, z)
        });
        // Unitors are trivial, so the triangle needs a_{x,0,y} = +1.
        let normalized = (0..2).all(|x| (0..2).all(|y| sign(x, 0, y) == 0));
        let r = check_monoidal(&mc).unwrap();
        prop_assert_eq!(r.count("pentagon") == 0, cocycle);
        prop_assert_eq!(r.is_valid(), cocycle && normalized);
    }

    #[test]
    fn monad_collapse_agrees_for_any_seed(seed in any::<u64>()) {
        for c in collapse_cases(seed, 6).unwrap() {
            prop_assert!(c.agrees(), "{:?}", c);
        }
    }
}
