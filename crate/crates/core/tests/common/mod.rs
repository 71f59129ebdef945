#![allow(dead_code)]

pub mod checks;
pub mod oracles;

use std::sync::Arc;

use fsplit_core::{Ideal, Monomial, PolyRing, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use oracles::Exps;

pub const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

pub fn ring(p: u64, nvars: usize) -> Arc<PolyRing> {
    PolyRing::new(p, &VAR_NAMES[..nvars]).unwrap()
}

pub fn mono(exps: &[u32]) -> Monomial {
    Monomial::from_exponents(exps).unwrap()
}

pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = ring.nvars();
    let p = ring.characteristic() as i64;
    let count = rng.gen_range(1..=max_terms);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        terms.push((rng.gen_range(1..p), mono(&e)));
    }
    Polynomial::from_terms(ring, terms)
}

/// A random ideal with at most three generators of degree at most two in at
/// most three variables over F_2, F_3 or F_5.
pub fn random_small_ideal(rng: &mut ChaCha8Rng) -> Ideal {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let n = rng.gen_range(1..=3);
    let r = ring(p, n);
    let count = rng.gen_range(1..=3);
    let gens = (0..count).map(|_| random_poly(rng, &r, 2, 4)).collect();
    Ideal::new(&r, gens).unwrap()
}

/// Exponent vectors of a random nonzero monomial ideal in two variables.
pub fn random_monomial_gens(rng: &mut ChaCha8Rng, max_gens: usize, max_exp: u32) -> Vec<Exps> {
    let count = rng.gen_range(1..=max_gens);
    (0..count)
        .map(|_| vec![rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp)])
        .collect()
}

pub fn monomial_ideal(ring: &Arc<PolyRing>, gens: &[Exps]) -> Ideal {
    let polys = gens.iter().map(|e| Polynomial::monomial(ring, 1, mono(e))).collect();
    Ideal::new(ring, polys).unwrap()
}

pub fn ideal(ring: &Arc<PolyRing>, texts: &[&str]) -> Ideal {
    Ideal::parse(ring, texts).unwrap()
}

pub fn assert_same_ideal(a: &Ideal, b: &Ideal) {
    assert!(
        a.equals(b).unwrap(),
        "ideals differ:\n  {:?}\n  {:?}",
        a.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        b.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()
    );
}

pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}
