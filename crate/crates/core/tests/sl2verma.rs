//! Closed-form maximal submodules against Gram-matrix ranks.

use minw_core::charser::{key_of, Bounds};
use minw_core::rootsys::AlgebraSpec;
use minw_core::sl2verma::*;
use minw_core::vacuum::kw_vacuum_character;
use minw_core::weights::qi;
use minw_core::Weight;
use proptest::prelude::*;

const GRID_DEPTH: i64 = 3;

#[test]
fn closed_form_matches_oracle_on_grid() {
    let mut nonzero = 0;
    for k in -1..=3 {
        for label in 0..=6 {
            let c = compare_with_oracle(k, label, GRID_DEPTH).unwrap();
            assert!(c.agree, "k={k} (λ,α)={label}: {c:?}");
            if c.r == 0 {
                assert_eq!(c.radical_total, 0, "k={k} (λ,α)={label}");
            } else if c.j * c.r <= GRID_DEPTH {
                assert!(c.radical_total > 0, "k={k} (λ,α)={label}");
                nonzero += 1;
            }
        }
    }
    assert!(nonzero >= 10, "only {nonzero} grid points see N′ within the depth");
}

#[test]
fn level_minus_one_has_no_submodule() {
    for label in 0..=6 {
        assert_eq!(jr(&Sl2HatWeight::new(-1, label)).unwrap().1, 0);
    }
}

#[test]
fn gram_ranks_reproduce_the_vacuum_character() {
    let s = AlgebraSpec::from_id("lie:A1").unwrap();
    for k in 1..=2 {
        let ch = kw_vacuum_character(&s, &qi(k), Bounds::new(3, 8)).unwrap();
        let v = VermaModule::new(&Sl2HatWeight::new(k, 0));
        for d in 0..=3 {
            for a in 0..=d {
                // kΛ₀ − dδ + aα
                let w = &Weight::delta().scale(&qi(d)) - &s.theta_max.scale(&qi(a));
                let key = key_of(&s, &w).unwrap();
                assert_eq!(ch.coeff(&key), v.simple_dim(d, a) as i128, "k={k} d={d} a={a}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jr_bounds_and_reflection(k in -1i64..8, label in 0i64..40) {
        let lam = Sl2HatWeight::new(k, label);
        let (j, r) = jr(&lam).unwrap();
        prop_assert!(j >= 1);
        prop_assert!((0..=k + 1).contains(&r));
        prop_assert_eq!(shifted_reflection(&lam, j), lam.minus_real_root(r, j));
        let p = lambda1_pairing(&lam).unwrap();
        // at (λ,α) = k+2 one has j = 2 and r = k+1, so the pairing is k+1, not 0
        if label <= k + 1 {
            prop_assert_eq!(p, 0);
        } else {
            prop_assert!(p < label);
        }
    }
}
