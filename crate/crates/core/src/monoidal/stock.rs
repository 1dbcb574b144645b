//! Small monoidal categories used as examples and test universes.

use super::FinMonoidalCategory;
use crate::algebra::FiniteMonoid;
use crate::category::{Arrow, FiniteCategory};

/// One object, one morphism.
pub fn trivial() -> FinMonoidalCategory {
    discrete(&FiniteMonoid::trivial())
}

/// The discrete monoidal category on a monoid: objects are the elements,
/// only identity morphisms, tensor is the product, all constraints are
/// identities.
pub fn discrete(m: &FiniteMonoid) -> FinMonoidalCategory {
    let n = m.size();
    let base = FiniteCategory::discrete(n);
    FinMonoidalCategory {
        tensor_obj: m.rows(),
        tensor_mor: m.rows(),
        unit: m.unit(),
        assoc: (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).map(|z| m.product(&[x, y, z])).collect())
                    .collect()
            })
            .collect(),
        lunit: (0..n).collect(),
        runit: (0..n).collect(),
        base,
    }
}

/// Objects `Z/2`, each with endomorphisms `{+1, -1}` (morphism `2x + s`
/// is the sign `(-1)^s` on object `x`), tensor adding objects and
/// multiplying signs, and associator `a_{x,y,z} = (-1)^{xyz}`.
pub fn sign_category() -> FinMonoidalCategory {
    let morphisms: Vec<Arrow> = (0..4).map(|k| Arrow { src: k / 2, tgt: k / 2 }).collect();
    let base = FiniteCategory::from_fn(2, morphisms, vec![0, 2], |g, f| 2 * (g / 2) + ((g % 2) ^ (f % 2)))
        .expect("well-formed");
    let tensor = |f: usize, g: usize| 2 * ((f / 2) ^ (g / 2)) + ((f % 2) ^ (g % 2));
    FinMonoidalCategory {
        tensor_obj: (0..2).map(|x| (0..2).map(|y| x ^ y).collect()).collect(),
        tensor_mor: (0..4).map(|f| (0..4).map(|g| tensor(f, g)).collect()).collect(),
        unit: 0,
        assoc: (0..2)
            .map(|x| {
                (0..2)
                    .map(|y| (0..2).map(|z| 2 * (x ^ y ^ z) + (x & y & z)).collect())
                    .collect()
            })
            .collect(),
        lunit: vec![0, 2],
        runit: vec![0, 2],
        base,
    }
}

/// Two uniquely isomorphic objects with tensor `x ⊗ y = 1 - x` and unit
/// `0`. All diagrams commute because every hom-set is a singleton, but the
/// tensor is neither associative nor unital on objects: `(x⊗y)⊗z = x`
/// while `x⊗(y⊗z) = 1 - x`, and `I⊗I = 1`.
pub fn codiscrete_twisted() -> FinMonoidalCategory {
    let base = FiniteCategory::codiscrete(2);
    let tensor_obj: Vec<Vec<usize>> = (0..2).map(|x| (0..2).map(|_| 1 - x).collect()).collect();
    let arrow = |a: usize, b: usize| a * 2 + b;
    let tensor_mor = (0..4)
        .map(|f| {
            (0..4)
                .map(|g| {
                    let (fa, fb, ga, gb) = (f / 2, f % 2, g / 2, g % 2);
                    arrow(tensor_obj[fa][ga], tensor_obj[fb][gb])
                })
                .collect()
        })
        .collect();
    let t = |x: usize, y: usize| tensor_obj[x][y];
    FinMonoidalCategory {
        assoc: (0..2)
            .map(|x| {
                (0..2)
                    .map(|y| (0..2).map(|z| arrow(t(t(x, y), z), t(x, t(y, z)))).collect())
                    .collect()
            })
            .collect(),
        lunit: (0..2).map(|x| arrow(t(0, x), x)).collect(),
        runit: (0..2).map(|x| arrow(t(x, 0), x)).collect(),
        tensor_obj,
        tensor_mor,
        unit: 0,
        base,
    }
}

/// The stock examples with names: trivial, discrete `Z/2`, discrete
/// boolean OR, sign category, twisted codiscrete.
pub fn stock_universe() -> Vec<(&'static str, FinMonoidalCategory)> {
    vec![
        ("trivial", trivial()),
        ("discrete_z2", discrete(&FiniteMonoid::cyclic(2))),
        ("discrete_or", discrete(&FiniteMonoid::bool_or())),
        ("sign", sign_category()),
        ("codiscrete_twisted", codiscrete_twisted()),
    ]
}

#[cfg(test)]
mod tests {
    use super::super::{check_monoidal, objects_isomorphic};
    use super::*;

    #[test]
    fn stock_examples_are_monoidal() {
        for (name, mc) in stock_universe() {
            let r = check_monoidal(&mc).unwrap();
            assert!(r.is_valid(), "{name}: {r}");
        }
    }

    #[test]
    fn sign_associator_tamperings() {
        // Flipping a_{1,1,1} multiplies by the cocycle itself and gives the
        // strict structure, which is still valid.
        let mut strict = sign_category();
        strict.assoc[1][1][1] ^= 1;
        assert!(check_monoidal(&strict).unwrap().is_valid());
        let mut mc = sign_category();
        mc.assoc[1][1][0] ^= 1;
        let r = check_monoidal(&mc).unwrap();
        assert!(r.count("pentagon") > 0, "{r}");
        assert!(r
            .violations_of("pentagon")
            .all(|v| v.at.iter().filter(|&&x| x == 1).count() >= 2));
    }

    #[test]
    fn twisted_example_is_not_strict_on_objects() {
        let mc = codiscrete_twisted();
        assert_eq!(mc.obj(mc.unit, mc.unit), 1);
        assert_ne!(mc.obj(mc.obj(0, 0), 0), mc.obj(0, mc.obj(0, 0)));
        assert!(objects_isomorphic(&mc, 0, 1));
        let d = discrete(&FiniteMonoid::cyclic(2));
        assert!(!objects_isomorphic(&d, 0, 1));
    }
}
