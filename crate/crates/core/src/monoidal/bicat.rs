//! One-object bicategories, the shift to monoidal categories and back, and
//! the comparison functor from one-object bicategories with weak functors
//! to monoidal categories with strong monoidal functors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::functor::{
    cartesian, compose_monoidal_functors, enumerate_monoidal_functors, identity_monoidal_functor, MonoidalFunctor,
};
use super::{stock_universe, FinMonoidalCategory};
use crate::category::{enumerate_functors, Arrow, FiniteCategory, Functor};
use crate::equiv::{build_1category, check_external_equivalence, JFunctor};
use crate::error::{structure, Result};
use crate::report::{EquivalenceReport, ValidationReport};

/// A bicategory with a single object, in bicategorical vocabulary:
/// 1-cells, 2-cells, vertical and horizontal composition.
/// `compose_1cells[g][f] = g ∘ f`; `associator[h][g][f]: (h∘g)∘f ⇒ h∘(g∘f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerateBicategory {
    pub one_cells: usize,
    pub two_cells: Vec<Arrow>,
    pub identity_2cells: Vec<usize>,
    pub vertical: Vec<Vec<Option<usize>>>,
    pub compose_1cells: Vec<Vec<usize>>,
    pub horizontal: Vec<Vec<usize>>,
    pub identity_1cell: usize,
    pub associator: Vec<Vec<Vec<usize>>>,
    pub left_unitor: Vec<usize>,
    pub right_unitor: Vec<usize>,
}

impl DegenerateBicategory {
    fn hom_category(&self) -> Result<FiniteCategory> {
        FiniteCategory::new(
            self.one_cells,
            self.two_cells.clone(),
            self.identity_2cells.clone(),
            self.vertical.clone(),
        )
    }

    fn vchain(&self, cells: &[usize]) -> Option<usize> {
        let (&first, rest) = cells.split_first()?;
        rest.iter().try_fold(first, |acc, &next| self.vertical[next][acc])
    }

    fn is_invertible(&self, cell: usize) -> bool {
        let a = self.two_cells[cell];
        (0..self.two_cells.len()).any(|k| {
            self.vertical[k][cell] == Some(self.identity_2cells[a.src])
                && self.vertical[cell][k] == Some(self.identity_2cells[a.tgt])
        })
    }
}

/// 1-cells become objects, 2-cells morphisms, composition of 1-cells the
/// tensor product.
pub fn shift_to_bicat(mc: &FinMonoidalCategory) -> DegenerateBicategory {
    DegenerateBicategory {
        one_cells: mc.object_count(),
        two_cells: mc.base.morphisms().to_vec(),
        identity_2cells: mc.base.identities().to_vec(),
        vertical: mc.base.comp_rows(),
        compose_1cells: mc.tensor_obj.clone(),
        horizontal: mc.tensor_mor.clone(),
        identity_1cell: mc.unit,
        associator: mc.assoc.clone(),
        left_unitor: mc.lunit.clone(),
        right_unitor: mc.runit.clone(),
    }
}

pub fn shift_from_bicat(b: &DegenerateBicategory) -> Result<FinMonoidalCategory> {
    let mc = FinMonoidalCategory {
        base: b.hom_category()?,
        tensor_obj: b.compose_1cells.clone(),
        tensor_mor: b.horizontal.clone(),
        unit: b.identity_1cell,
        assoc: b.associator.clone(),
        lunit: b.left_unitor.clone(),
        runit: b.right_unitor.clone(),
    };
    mc.check_structure()?;
    Ok(mc)
}

/// A weak functor of one-object bicategories: maps on 1- and 2-cells,
/// composition constraints `m_{g,f}: Fg ∘ Ff ⇒ F(g∘f)` and unit
/// constraint `m₀: 1 ⇒ F1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicatFunctor {
    pub on_1cells: Vec<usize>,
    pub on_2cells: Vec<usize>,
    pub composition: Vec<Vec<usize>>,
    pub unit: usize,
}

impl BicatFunctor {
    pub fn identity(b: &DegenerateBicategory) -> Self {
        let n = b.one_cells;
        Self {
            on_1cells: (0..n).collect(),
            on_2cells: (0..b.two_cells.len()).collect(),
            composition: (0..n)
                .map(|g| (0..n).map(|f| b.identity_2cells[b.compose_1cells[g][f]]).collect())
                .collect(),
            unit: b.identity_2cells[b.identity_1cell],
        }
    }

    /// The monoidal functor with the same data.
    pub fn to_monoidal(&self) -> MonoidalFunctor {
        MonoidalFunctor {
            functor: Functor {
                objects: self.on_1cells.clone(),
                morphisms: self.on_2cells.clone(),
            },
            phi: self.composition.clone(),
            phi0: self.unit,
        }
    }

    fn to_json(&self) -> Value {
        json!({"on_1cells": self.on_1cells, "on_2cells": self.on_2cells, "composition": self.composition, "unit": self.unit})
    }
}

/// `G ∘ F` with `m^{GF}_{g,f} = G(m^F_{g,f}) · m^G_{Fg,Ff}`.
fn compose_bicat_functors(c: &DegenerateBicategory, g: &BicatFunctor, f: &BicatFunctor) -> Option<BicatFunctor> {
    let composition = f
        .composition
        .iter()
        .enumerate()
        .map(|(k, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &m)| c.vchain(&[g.composition[f.on_1cells[k]][f.on_1cells[j]], g.on_2cells[m]]))
                .collect::<Option<Vec<usize>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(BicatFunctor {
        on_1cells: f.on_1cells.iter().map(|&x| g.on_1cells[x]).collect(),
        on_2cells: f.on_2cells.iter().map(|&x| g.on_2cells[x]).collect(),
        composition,
        unit: c.vchain(&[g.unit, g.on_2cells[f.unit]])?,
    })
}

/// Weak functor axioms, stated for bicategories: local functoriality,
/// naturality and invertibility of the constraints, the associativity
/// coherence and the two unit coherences.
pub fn check_bicat_functor(
    b1: &DegenerateBicategory,
    b2: &DegenerateBicategory,
    f: &BicatFunctor,
) -> Result<ValidationReport> {
    let (n1, n2) = (b1.one_cells, b2.one_cells);
    let (c1, c2) = (b1.two_cells.len(), b2.two_cells.len());
    if f.on_1cells.len() != n1 || f.on_2cells.len() != c1 || f.composition.len() != n1 {
        return structure("functor data does not match the source bicategory");
    }
    if f.on_1cells.iter().any(|&x| x >= n2)
        || f.on_2cells
            .iter()
            .chain(f.composition.iter().flatten())
            .chain([&f.unit])
            .any(|&x| x >= c2)
        || f.composition.iter().any(|r| r.len() != n1)
    {
        return structure("functor data out of range");
    }
    let mut r = ValidationReport::new();
    let cell = |k: usize| b2.two_cells[k];
    for (k, &img) in f.on_2cells.iter().enumerate() {
        let want = Arrow {
            src: f.on_1cells[b1.two_cells[k].src],
            tgt: f.on_1cells[b1.two_cells[k].tgt],
        };
        r.expect(cell(img) == want, "local_endpoints", &[k], || {
            format!("2-cell {k} goes to {img} with wrong boundary")
        });
    }
    for g in 0..n1 {
        for h in 0..n1 {
            let want = Arrow {
                src: b2.compose_1cells[f.on_1cells[g]][f.on_1cells[h]],
                tgt: f.on_1cells[b1.compose_1cells[g][h]],
            };
            r.expect(
                cell(f.composition[g][h]) == want,
                "composition_endpoints",
                &[g, h],
                || format!("m_{{{g},{h}}} has the wrong boundary"),
            );
        }
    }
    let want = Arrow {
        src: b2.identity_1cell,
        tgt: f.on_1cells[b1.identity_1cell],
    };
    r.expect(cell(f.unit) == want, "unit_endpoints", &[], || {
        "m₀ has the wrong boundary".to_string()
    });
    if !r.is_valid() {
        return Ok(r);
    }
    for (x, &i) in b1.identity_2cells.iter().enumerate() {
        r.expect(
            f.on_2cells[i] == b2.identity_2cells[f.on_1cells[x]],
            "local_identity",
            &[x],
            || format!("identity 2-cell of {x} is not preserved"),
        );
    }
    for p in 0..c1 {
        for q in 0..c1 {
            if let Some(qp) = b1.vertical[q][p] {
                let lhs = Some(f.on_2cells[qp]);
                let rhs = b2.vertical[f.on_2cells[q]][f.on_2cells[p]];
                r.expect(lhs == rhs, "local_composition", &[p, q], || {
                    format!("F({q}·{p}) differs from F{q}·F{p}")
                });
            }
        }
    }
    for g in 0..n1 {
        for h in 0..n1 {
            r.expect(
                b2.is_invertible(f.composition[g][h]),
                "composition_invertible",
                &[g, h],
                || format!("m_{{{g},{h}}} is not invertible"),
            );
        }
    }
    r.expect(b2.is_invertible(f.unit), "unit_invertible", &[], || {
        "m₀ is not invertible".to_string()
    });

    let fo = |x: usize| f.on_1cells[x];
    let fm = |x: usize| f.on_2cells[x];
    let id2 = |x: usize| b2.identity_2cells[x];
    let hz = |p: usize, q: usize| b2.horizontal[p][q];
    for p in 0..c1 {
        let ap = b1.two_cells[p];
        for q in 0..c1 {
            let aq = b1.two_cells[q];
            let lhs = b2.vchain(&[f.composition[ap.src][aq.src], fm(b1.horizontal[p][q])]);
            let rhs = b2.vchain(&[hz(fm(p), fm(q)), f.composition[ap.tgt][aq.tgt]]);
            r.expect(lhs.is_some() && lhs == rhs, "constraint_naturality", &[p, q], || {
                format!("m is not natural at ({p}, {q})")
            });
        }
    }
    for h in 0..n1 {
        for g in 0..n1 {
            for k in 0..n1 {
                let lhs = b2.vchain(&[
                    hz(f.composition[h][g], id2(fo(k))),
                    f.composition[b1.compose_1cells[h][g]][k],
                    fm(b1.associator[h][g][k]),
                ]);
                let rhs = b2.vchain(&[
                    b2.associator[fo(h)][fo(g)][fo(k)],
                    hz(id2(fo(h)), f.composition[g][k]),
                    f.composition[h][b1.compose_1cells[g][k]],
                ]);
                r.expect(lhs.is_some() && lhs == rhs, "associativity", &[h, g, k], || {
                    format!("associativity coherence fails at ({h}, {g}, {k})")
                });
            }
        }
        let i1 = b1.identity_1cell;
        let lhs = b2.vchain(&[hz(f.unit, id2(fo(h))), f.composition[i1][h], fm(b1.left_unitor[h])]);
        r.expect(lhs == Some(b2.left_unitor[fo(h)]), "left_unit", &[h], || {
            format!("left unit coherence fails at {h}")
        });
        let lhs = b2.vchain(&[hz(id2(fo(h)), f.unit), f.composition[h][i1], fm(b1.right_unitor[h])]);
        r.expect(lhs == Some(b2.right_unitor[fo(h)]), "right_unit", &[h], || {
            format!("right unit coherence fails at {h}")
        });
    }
    Ok(r)
}

/// All weak functors `b1 → b2`: local functors of the hom categories,
/// then every choice of invertible constraints.
pub fn enumerate_bicat_functors(b1: &DegenerateBicategory, b2: &DegenerateBicategory) -> Result<Vec<BicatFunctor>> {
    let (h1, h2) = (b1.hom_category()?, b2.hom_category()?);
    let n = b1.one_cells;
    let invertible = |s: usize, t: usize| -> Vec<usize> {
        (0..b2.two_cells.len())
            .filter(|&k| b2.two_cells[k] == Arrow { src: s, tgt: t } && b2.is_invertible(k))
            .collect()
    };
    let mut out = Vec::new();
    for local in enumerate_functors(&h1, &h2) {
        let fo = |x: usize| local.objects[x];
        let mut choices = Vec::with_capacity(n * n + 1);
        for g in 0..n {
            for f in 0..n {
                choices.push(invertible(b2.compose_1cells[fo(g)][fo(f)], fo(b1.compose_1cells[g][f])));
            }
        }
        choices.push(invertible(b2.identity_1cell, fo(b1.identity_1cell)));
        for pick in cartesian(&choices) {
            let candidate = BicatFunctor {
                on_1cells: local.objects.clone(),
                on_2cells: local.morphisms.clone(),
                composition: pick[..n * n].chunks(n).map(|c| c.to_vec()).collect(),
                unit: pick[n * n],
            };
            if check_bicat_functor(b1, b2, &candidate)?.is_valid() {
                out.push(candidate);
            }
        }
    }
    Ok(out)
}

fn describe(name: &str, mc: &FinMonoidalCategory) -> Value {
    json!({"name": name, "objects": mc.object_count(), "morphisms": mc.morphism_count()})
}

/// Check that the shift is an equivalence between one-object bicategories
/// with weak functors and monoidal categories with strong monoidal
/// functors, over the stock examples with at most `bound` objects.
pub fn check_xi_equivalence(bound: usize) -> Result<EquivalenceReport> {
    let universe: Vec<(&str, FinMonoidalCategory)> = stock_universe()
        .into_iter()
        .filter(|(_, mc)| mc.object_count() <= bound)
        .collect();
    let names: Vec<&str> = universe.iter().map(|(n, _)| *n).collect();
    let moncats: Arc<Vec<FinMonoidalCategory>> = Arc::new(universe.into_iter().map(|(_, mc)| mc).collect());
    let bicats: Arc<Vec<DegenerateBicategory>> = Arc::new(moncats.iter().map(shift_to_bicat).collect());
    let k = moncats.len();
    let idx: Vec<usize> = (0..k).collect();

    let mut bicat_homs = vec![vec![Vec::new(); k]; k];
    let mut mon_homs = vec![vec![Vec::new(); k]; k];
    for x in 0..k {
        for y in 0..k {
            bicat_homs[x][y] = enumerate_bicat_functors(&bicats[x], &bicats[y])?;
            mon_homs[x][y] = enumerate_monoidal_functors(&moncats[x], &moncats[y]);
        }
    }

    let round_trip = moncats
        .iter()
        .zip(bicats.iter())
        .position(|(mc, b)| shift_from_bicat(b).ok().as_ref() != Some(mc));
    let mut report = EquivalenceReport::new("xi_moncat", Some(bound));
    report.record(
        "shift_round_trip",
        0,
        round_trip.is_none(),
        round_trip.map(|i| json!({"category": names[i]})),
    );

    let b_cats = Arc::clone(&bicats);
    let source = build_1category(
        &idx,
        |&x, &y| bicat_homs[x][y].iter().map(|f| (x, y, f.clone())).collect(),
        |&x| (x, x, BicatFunctor::identity(&bicats[x])),
        move |g: &(usize, usize, BicatFunctor), f: &(usize, usize, BicatFunctor)| {
            let h = compose_bicat_functors(&b_cats[g.1], &g.2, &f.2).expect("composable");
            (f.0, g.1, h)
        },
        |&x| describe(names[x], &moncats[x]),
        |f| f.2.to_json(),
    );
    let m_cats = Arc::clone(&moncats);
    let target = build_1category(
        &idx,
        |&x, &y| mon_homs[x][y].iter().map(|f| (x, y, f.clone())).collect(),
        |&x| (x, x, identity_monoidal_functor(&moncats[x])),
        move |g: &(usize, usize, MonoidalFunctor), f: &(usize, usize, MonoidalFunctor)| {
            let h = compose_monoidal_functors(&m_cats[g.1], &g.2, &f.2).expect("composable");
            (f.0, g.1, h)
        },
        |&x| describe(names[x], &moncats[x]),
        |f| serde_json::to_value(&f.2).unwrap_or(Value::Null),
    );

    let mut unmatched = None;
    let functor = JFunctor::from_fn(&source, idx.clone(), |x, y, i| {
        let image = bicat_homs[x][y][i].to_monoidal();
        match mon_homs[x][y].iter().position(|g| *g == image) {
            Some(j) => j,
            None => {
                unmatched.get_or_insert_with(
                    || json!({"between": [names[x], names[y]], "functor": bicat_homs[x][y][i].to_json()}),
                );
                0
            }
        }
    });
    report.record("weak_functors_are_monoidal", 1, unmatched.is_none(), unmatched);
    let valid = functor.check(&source, &target);
    report.record(
        "strict_functor",
        1,
        valid.is_valid(),
        (!valid.is_valid()).then(|| json!(valid.to_string())),
    );
    report.merge(check_external_equivalence(
        "xi_moncat",
        Some(bound),
        &source,
        &target,
        &functor,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::stock::*;
    use super::*;

    #[test]
    fn shift_round_trips() {
        for (name, mc) in stock_universe() {
            let b = shift_to_bicat(&mc);
            assert_eq!(shift_from_bicat(&b).unwrap(), mc, "{name}");
            assert_eq!(shift_to_bicat(&shift_from_bicat(&b).unwrap()), b);
        }
    }

    #[test]
    fn bicategorical_and_monoidal_functors_agree() {
        let u = stock_universe();
        for (_, x) in &u {
            for (_, y) in &u {
                let bf = enumerate_bicat_functors(&shift_to_bicat(x), &shift_to_bicat(y)).unwrap();
                let mf = enumerate_monoidal_functors(x, y);
                let converted: Vec<MonoidalFunctor> = bf.iter().map(BicatFunctor::to_monoidal).collect();
                assert_eq!(converted, mf);
            }
        }
    }

    #[test]
    fn xi_is_an_equivalence_on_the_stock_universe() {
        let r = check_xi_equivalence(2).unwrap();
        assert!(r.is_equivalence(), "{r}");
    }

    #[test]
    fn tampered_bicategory_constraint_is_rejected() {
        let s = shift_to_bicat(&sign_category());
        let mut f = BicatFunctor::identity(&s);
        f.unit ^= 1;
        assert!(!check_bicat_functor(&s, &s, &f).unwrap().is_valid());
    }
}
