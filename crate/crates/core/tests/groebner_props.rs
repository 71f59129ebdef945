mod common;

use common::checks;
use fsplit_core::groebner::{buchberger, eliminate, normal_form};
use fsplit_core::{GbLimits, Ideal, Polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_agrees_with_linear_algebra() {
    let summary = checks::groebner_corpus(0x5eed, 500).unwrap();
    println!("{summary}");
}

proptest! {
    #![proptest_config(common::proptest_config(64))]

    #[test]
    fn normal_forms_unique_modulo_ideal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = common::random_small_ideal(&mut rng);
        let r = ideal.ring().clone();
        let gb = ideal.groebner_basis().unwrap().to_vec();
        let f = common::random_poly(&mut rng, &r, 3, 5);
        let mut g = f.clone();
        for gen in ideal.generators() {
            g = &g + &(&common::random_poly(&mut rng, &r, 2, 3) * gen);
        }
        prop_assert_eq!(normal_form(&f, &gb).unwrap(), normal_form(&g, &gb).unwrap());
    }

    #[test]
    fn reduced_basis_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = common::random_small_ideal(&mut rng);
        let r = ideal.ring().clone();
        let a = buchberger(&r, ideal.generators(), GbLimits::UNLIMITED).unwrap();
        let mut reversed = ideal.generators().to_vec();
        reversed.reverse();
        let b = buchberger(&r, &reversed, GbLimits::UNLIMITED).unwrap();
        let text = |v: &[Polynomial]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>();
        prop_assert_eq!(text(&a), text(&b));
        prop_assert_eq!(text(&a), text(ideal.groebner_basis().unwrap()));
    }

    #[test]
    fn elimination_keeps_only_kept_variables(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = common::ring(3, 3);
        let gens = (0..2).map(|_| common::random_poly(&mut rng, &r, 2, 3)).collect();
        let ideal = Ideal::new(&r, gens).unwrap();
        let elim = eliminate(&ideal, &[1, 2]).unwrap();
        for g in elim.generators() {
            prop_assert!(!g.involves(0));
            prop_assert!(ideal.contains(g).unwrap());
        }
    }
}

#[test]
fn unit_ideal_has_basis_one() {
    let r = common::ring(5, 2);
    let i = common::ideal(&r, &["x*y - 1", "x"]);
    assert!(i.is_unit().unwrap());
    assert_eq!(i.groebner_basis().unwrap().len(), 1);
}
