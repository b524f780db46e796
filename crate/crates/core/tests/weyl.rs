//! Weyl-layer invariants over enumerated group elements.

use minw_core::lattice::Lattice;
use minw_core::rootsys::AlgebraSpec;
use minw_core::weights::{q, qi, BasisLabel};
use minw_core::weyl::{
    circ_action, enumerate, finite_group, in_q_sharp, is_positive_affine, q_prime_basis, shifted_action, translation,
    wmu_expand, Subgroup, WeylElement,
};
use minw_core::Weight;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const WORD_CAP: usize = 4;
const M_CAP: u32 = 3;

fn spec(id: &str) -> AlgebraSpec {
    AlgebraSpec::from_id(id).unwrap()
}

/// A weight over the labels of `s` with small rational coefficients.
fn weight_from(s: &AlgebraSpec, coeffs: &[(i64, i64)], l0: i64, d: i64) -> Weight {
    let mut w = Weight::zero();
    for (l, (n, den)) in s.form.labels().iter().zip(coeffs) {
        w.add_term(*l, &q(*n, *den));
    }
    w.add_term(BasisLabel::Lambda0, &qi(l0));
    w.add_term(BasisLabel::DeltaIm, &qi(d));
    w
}

fn coeff_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), 8)
}

const IDS: [&str; 5] = ["lie:A2", "sl:2|1", "psl:2|2", "spo:2|3", "d21a:2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn elements_preserve_the_form(which in 0usize..IDS.len(), a in coeff_strategy(), b in coeff_strategy(),
                                 la in -3i64..4, lb in -3i64..4, da in -3i64..4, db in -3i64..4) {
        let s = spec(IDS[which]);
        let x = weight_from(&s, &a, la, da);
        let y = weight_from(&s, &b, lb, db);
        for w in enumerate(&s, Subgroup::W, 3).unwrap() {
            prop_assert_eq!(s.pair(&w.apply(&s, &x), &w.apply(&s, &y)), s.pair(&x, &y));
        }
    }

    #[test]
    fn shifted_action_preserves_norm(which in 0usize..IDS.len(), a in coeff_strategy(), k in -2i64..5) {
        let s = spec(IDS[which]);
        let rho = s.weyl_vector();
        let lam = weight_from(&s, &a, k, 0);
        let n0 = s.norm2(&(&lam + &rho));
        for w in enumerate(&s, Subgroup::W, WORD_CAP).unwrap() {
            let img = shifted_action(&s, &w, &lam, &rho);
            prop_assert_eq!(s.norm2(&(&img + &rho)), n0.clone());
        }
    }

    #[test]
    fn translations_are_additive(c1 in prop::collection::vec(-3i64..=3, 2), c2 in prop::collection::vec(-3i64..=3, 2),
                                 a in coeff_strategy(), m in -2i64..4) {
        let s = spec("lie:A2");
        let basis = q_prime_basis(&s);
        let mk = |c: &[i64]| basis.iter().zip(c).fold(Weight::zero(), |acc, (b, &k)| &acc + &b.scale(&qi(k)));
        let (mu, nu) = (mk(&c1), mk(&c2));
        let lam = weight_from(&s, &a, m, 1);
        let lhs = translation(&s, &mu, &translation(&s, &nu, &lam).unwrap()).unwrap();
        let rhs = translation(&s, &(&mu + &nu), &lam).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(s.norm2(&lhs), s.norm2(&lam));
        prop_assert_eq!(translation(&s, &mu, &Weight::delta()).unwrap(), Weight::delta());
    }

    #[test]
    fn component_action_identity(which in 0usize..IDS.len(), a in coeff_strategy(), k in -2i64..5) {
        // ||η+ρ||² − ||w∘η+ρ||² = 2(ρ−ρ_l, η−w∘η)
        let s = spec(IDS[which]);
        let rho = s.weyl_vector();
        let eta = weight_from(&s, &a, k, 0);
        for comp in s.affine_components() {
            let gens: Vec<WeylElement> = comp.affine_simple().iter().map(|r| WeylElement::reflection(&s, r).unwrap()).collect();
            let mut elems = vec![WeylElement::identity(&s)];
            for _ in 0..3 {
                let next: Vec<WeylElement> = elems.iter().flat_map(|e| gens.iter().map(move |g| e.compose(g))).collect();
                elems.extend(next);
                elems.truncate(40);
            }
            for w in &elems {
                let img = circ_action(&s, &comp, w, &eta).unwrap();
                let lhs = s.norm2(&(&eta + &rho)) - s.norm2(&(&img + &rho));
                let rhs = qi(2) * s.pair(&(&rho - &comp.rho()), &(&eta - &img));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn circ_equals_dot_on_common_simple_roots() {
    for id in IDS {
        let s = spec(id);
        let rho = s.weyl_vector();
        let eta = weight_from(&s, &[(1, 2), (-3, 1), (2, 3), (5, 1)], 3, 1);
        let affine: Vec<Weight> = s.affine_base();
        for comp in s.affine_components() {
            for a in comp.affine_simple().iter().filter(|a| affine.contains(a)) {
                let w = WeylElement::reflection(&s, a).unwrap();
                assert_eq!(circ_action(&s, &comp, &w, &eta).unwrap(), shifted_action(&s, &w, &eta, &rho), "{id} {a}");
            }
        }
    }
}

#[test]
fn circ_actions_of_distinct_components_commute() {
    let s = spec("d21a:2");
    let comps = s.affine_components();
    let eta = weight_from(&s, &[(1, 2), (-3, 1), (2, 3)], 2, 0);
    for (i, ci) in comps.iter().enumerate() {
        for cj in comps.iter().skip(i + 1) {
            for a in ci.affine_simple() {
                for b in cj.affine_simple() {
                    let sa = WeylElement::reflection(&s, &a).unwrap();
                    let sb = WeylElement::reflection(&s, &b).unwrap();
                    let x = circ_action(&s, ci, &sa, &circ_action(&s, cj, &sb, &eta).unwrap()).unwrap();
                    let y = circ_action(&s, cj, &sb, &circ_action(&s, ci, &sa, &eta).unwrap()).unwrap();
                    assert_eq!(x, y);
                }
            }
        }
    }
    let w = WeylElement::reflection(&s, &comps[1].simple[0]).unwrap();
    assert!(circ_action(&s, &comps[0], &w, &eta).is_err());
}

fn all_mu(len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=M_CAP).map(move |m| {
                    let mut v = v.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}

fn in_affine_positive_cone(s: &AlgebraSpec, x: &Weight) -> bool {
    let j = x.coeff(BasisLabel::DeltaIm);
    let c = match s.lattice.coords(x) {
        Some(c) => c,
        None => return false,
    };
    let th = s.lattice.coords(&s.theta_max).unwrap();
    !j.is_negative() && c.iter().zip(&th).all(|(ci, ti)| !(ci + &j * ti).is_negative())
}

#[test]
fn wmu_properties_exhaustive() {
    for id in ["sl:2|1", "psl:2|2", "sl:2|3", "spo:2|3", "d21a:2", "sl:3|1"] {
        let s = spec(id);
        assert!(s.iso.len() <= 2);
        let s_lat = Lattice::new(s.iso.clone(), &s.form).unwrap();
        for w in enumerate(&s, Subgroup::W, WORD_CAP).unwrap() {
            let winv = w.inverse();
            let mut images = std::collections::BTreeMap::new();
            for mu in all_mu(s.iso.len()) {
                let x = wmu_expand(&s, &w, &mu).unwrap();
                // (i)
                assert!(in_affine_positive_cone(&s, &x), "{id}: |wμ| = {x}");
                let back = winv.apply(&s, &x);
                assert!(back.coeff(BasisLabel::DeltaIm).is_zero() && s_lat.int_coords(&back).is_some(), "{id}");
                // (ii)
                if let Some(prev) = images.insert(x.clone(), mu.clone()) {
                    panic!("{id}: |wμ| collides for {prev:?} and {mu:?}");
                }
                // (iii)
                if in_q_sharp(&s, &x) {
                    assert!(x.is_zero(), "{id}");
                    assert!(mu.iter().all(|&m| m == 0), "{id}");
                    assert!(s.iso.iter().all(|b| is_positive_affine(&s, &w.apply(&s, b))), "{id}");
                }
            }
            if s.iso.iter().all(|b| is_positive_affine(&s, &w.apply(&s, b))) {
                let mu: Vec<u32> = (0..s.iso.len() as u32).map(|i| i + 1).collect();
                let direct = s.iso.iter().zip(&mu).fold(Weight::zero(), |acc, (b, &m)| &acc + &w.apply(&s, b).scale(&qi(m as i64)));
                assert_eq!(wmu_expand(&s, &w, &mu).unwrap(), direct);
            }
        }
    }
}

#[test]
fn denominator_sign_sum_over_stabilizer() {
    // entries whose base has only non-negative square lengths
    let mut checked = 0;
    for id in ["sl:2|1", "sl:3|1", "sl:4|2", "spo:2|3", "spo:4|3", "psl:2|2", "osp:5|2", "osp:6|2", "lie:A3", "lie:G2"] {
        let s = spec(id);
        if s.base.iter().any(|a| s.norm2(a).is_negative()) {
            continue;
        }
        checked += 1;
        let g = finite_group(&s, Subgroup::WdotSharp).unwrap();
        let total: i64 = g
            .iter()
            .filter(|y| y.apply(&s, &s.rho_dot) == s.rho_dot)
            .filter(|y| s.iso.iter().all(|b| is_positive_affine(&s, &y.apply(&s, b))))
            .map(|y| y.sign as i64)
            .sum();
        assert_eq!(total, 1, "{id}");
    }
    assert!(checked >= 4, "only {checked} entries had a non-negative base");
}

#[test]
fn subgroup_sizes_and_signs() {
    let s = spec("lie:A2");
    let g = finite_group(&s, Subgroup::Wdot).unwrap();
    let signs: i64 = g.iter().map(|w| w.sign as i64).sum();
    assert_eq!(signs, 0);
    for w in &g {
        assert_eq!(w.sign as i64, if w.length() % 2 == 0 { 1 } else { -1 });
        assert!(w.compose(&w.inverse()).is_identity());
    }
    let t = enumerate(&s, Subgroup::T, 1).unwrap();
    assert_eq!(t.len(), 7);
    assert!(t[0].is_identity());
    let sl23 = spec("sl:2|3");
    assert_eq!(finite_group(&sl23, Subgroup::WdotPrime).unwrap().len(), 6);
    assert_eq!(finite_group(&sl23, Subgroup::WdotSharp).unwrap().len(), 2);
    assert!(!Zero::is_zero(&sl23.h_dual));
}
