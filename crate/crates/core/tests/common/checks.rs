//! Corpus-level checks shared by the per-crate tests and the acceptance run.
//! Each returns a short summary on success and the first disagreement on failure.

#![allow(dead_code)]

use fsplit_core::frobenius::{root_ideal, PairTestIdealResult, test_ideal_of_power, test_ideal_pair, DEFAULT_TEST_IDEAL_E_MAX};
use fsplit_core::groebner::{normal_form, s_polynomial};
use fsplit_core::ideal_ops::{bracket_power, ideal_power, ideal_product};
use fsplit_core::rational::Rational;
use fsplit_core::{Ideal, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracles::{self, Exps};
use super::{mono, monomial_ideal, random_monomial_gens, random_poly, random_small_ideal, ring};

fn texts(i: &Ideal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

/// Reduced bases are closed under S-polynomials, and `contains` agrees with
/// the linear-algebra oracle on members built from the generators and on
/// random elements.
pub fn groebner_corpus(seed: u64, count: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut members, mut non_members) = (0usize, 0usize);
    for case in 0..count {
        let ideal = random_small_ideal(&mut rng);
        let r = ideal.ring().clone();
        let p = r.characteristic() as u64;
        let n = r.nvars();
        let gb = ideal.groebner_basis().map_err(|e| e.to_string())?.to_vec();
        for (a, f) in gb.iter().enumerate() {
            for g in &gb[a + 1..] {
                let s = s_polynomial(f, g).map_err(|e| e.to_string())?;
                if !normal_form(&s, &gb).map_err(|e| e.to_string())?.is_zero() {
                    return Err(format!("case {case}: S({f}, {g}) does not reduce to 0 in {:?}", texts(&ideal)));
                }
            }
        }
        let gens: Vec<_> = ideal.generators().iter().map(oracles::to_sparse).collect();
        let max_gen_deg = ideal.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(0);

        // a combination Σ h_i g_i is a member by construction
        let mut comb = Polynomial::zero(&r);
        for g in ideal.generators() {
            comb = &comb + &(&random_poly(&mut rng, &r, 2, 3) * g);
        }
        let mut candidates = vec![comb];
        for _ in 0..2 {
            candidates.push(random_poly(&mut rng, &r, 3, 4));
        }
        for f in candidates {
            let gb_says = ideal.contains(&f).map_err(|e| e.to_string())?;
            let fd = f.degree().unwrap_or(0);
            let start = fd.max(max_gen_deg);
            let oracle = oracles::member_by_linear_algebra(&oracles::to_sparse(&f), &gens, n, start, start + 6, p);
            match (gb_says, oracle) {
                (true, Some(true)) => members += 1,
                (false, Some(false)) | (false, None) => non_members += 1,
                (false, Some(true)) => {
                    return Err(format!("case {case}: {f} lies in the span of {:?} but contains() said no", texts(&ideal)))
                }
                (true, Some(false)) => {
                    return Err(format!("case {case}: graded oracle rejects {f} for {:?}", texts(&ideal)))
                }
                (true, None) => {
                    return Err(format!(
                        "case {case}: {f} reported in {:?} but no certificate up to degree {}",
                        texts(&ideal),
                        start + 6
                    ))
                }
            }
        }
    }
    Ok(format!("{count} ideals, {members} member and {non_members} non-member checks"))
}

fn box_membership(i: &Ideal, b: u32) -> Result<Vec<Exps>, String> {
    let r = i.ring();
    let mut out = Vec::new();
    for a in 0..=b {
        for c in 0..=b {
            let m = Polynomial::monomial(r, 1, mono(&[a, c]));
            if i.contains(&m).map_err(|e| e.to_string())? {
                out.push(vec![a, c]);
            }
        }
    }
    Ok(out)
}

fn monomial_generators_within(i: &Ideal, b: u32) -> Result<bool, String> {
    let gb = i.groebner_basis().map_err(|e| e.to_string())?;
    Ok(gb.iter().all(|g| g.is_monomial() && g.terms()[0].mono.exponents().iter().all(|&e| e as u32 <= b)))
}

/// `J ⊆ (J^{[1/q]})^{[q]}`, and `J^{[1/q]}` equals the intersection of all
/// monomial ideals `K` with `J ⊆ K^{[q]}`.
pub fn root_adjunction_corpus(seed: u64, count: usize) -> Result<String, String> {
    const BOX: u32 = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let e = rng.gen_range(1..=2u32);
        let q = p.pow(e) as u32;
        let gens = random_monomial_gens(&mut rng, 4, 9);
        let r = ring(p, 2);
        let j = monomial_ideal(&r, &gens);
        let root = root_ideal(&j, e).map_err(|e| e.to_string())?;
        let bracket = bracket_power(&root, q as u64).map_err(|e| e.to_string())?;
        if !bracket.contains_ideal(&j).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: J = {:?} not inside the bracket of its root", texts(&j)));
        }
        if !monomial_generators_within(&root, BOX)? {
            return Err(format!("case {case}: root {:?} not monomial within the box", texts(&root)));
        }
        let expected = oracles::brute_force_monomial_root(&gens, q, BOX);
        let got = box_membership(&root, BOX)?;
        if got != expected {
            return Err(format!("case {case}: p = {p}, e = {e}, J = {gens:?}: root {:?} vs oracle {expected:?}", texts(&root)));
        }
    }
    Ok(format!("{count} monomial ideals"))
}

pub fn monomial_corpus(seed: u64, count: usize) -> Vec<Vec<Exps>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_monomial_gens(&mut rng, 3, 4)).collect()
}

pub const TAUS: [(i64, i64); 4] = [(1, 2), (1, 1), (3, 2), (2, 1)];

fn tau_result(a: &Ideal, n: u32, t: Rational) -> Result<PairTestIdealResult, String> {
    test_ideal_of_power(a, n, t, DEFAULT_TEST_IDEAL_E_MAX)
        .map_err(|e| e.to_string())?
        .determined()
        .ok_or_else(|| format!("test ideal of {:?} at t = {t} undetermined", texts(a)))
}

fn tau(a: &Ideal, n: u32, t: Rational) -> Result<Ideal, String> {
    tau_result(a, n, t).map(|r| r.ideal)
}

/// `τ(a^t)` from the root chain equals the Newton polygon description.
pub fn newton_agreement(corpus: &[Vec<Exps>], primes: &[u64]) -> Result<String, String> {
    let (mut checks, mut certified) = (0, 0);
    for (case, gens) in corpus.iter().enumerate() {
        let max_exp = gens.iter().flatten().copied().max().unwrap_or(0);
        for &p in primes {
            let r = ring(p, 2);
            let a = monomial_ideal(&r, gens);
            for (num, den) in TAUS {
                let t = Rational::new(num, den);
                let b = ((num * max_exp as i64 + den - 1) / den) as u32 + 1;
                let result = tau_result(&a, 1, t)?;
                certified += result.certified as usize;
                let computed = result.ideal;
                if !monomial_generators_within(&computed, b)? {
                    return Err(format!("case {case}: τ({gens:?}^{t}) over F_{p} = {:?} leaves the box", texts(&computed)));
                }
                let expected = oracles::newton_test_ideal_box(gens, t, b);
                let got = box_membership(&computed, b)?;
                if got != expected {
                    return Err(format!(
                        "case {case}: τ({gens:?}^{t}) over F_{p} = {:?}, Newton oracle gives {expected:?}",
                        texts(&computed)
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} test ideals, {certified} certified by the upper bound"))
}

/// `τ((a^n)^t) = τ(a^{nt})` for n = 2, and `τ(a^{t+n}) = a^n τ(a^t)` for
/// t ≥ 1 and n ∈ {1, 2}: in two variables every ideal has a reduction with
/// two generators after a field extension, which test ideals commute with.
pub fn identity_suite(corpus: &[Vec<Exps>], primes: &[u64]) -> Result<String, String> {
    let mut checks = 0;
    for (case, gens) in corpus.iter().enumerate() {
        for &p in primes {
            let r = ring(p, 2);
            let a = monomial_ideal(&r, gens);
            for (num, den) in TAUS {
                let t = Rational::new(num, den);
                let lhs = tau(&a, 2, t)?;
                let rhs = tau(&a, 1, t * Rational::from_integer(2))?;
                if !lhs.equals(&rhs).map_err(|e| e.to_string())? {
                    return Err(format!("case {case}: τ((a^2)^{t}) ≠ τ(a^{}) for a = {gens:?} over F_{p}", t * 2));
                }
                checks += 1;
                if t >= Rational::from_integer(1) {
                    let base = tau(&a, 1, t)?;
                    for n in 1..=2u32 {
                        let lhs = tau(&a, 1, t + Rational::from_integer(n as i64))?;
                        let rhs = ideal_product(&ideal_power(&a, n).map_err(|e| e.to_string())?, &base)
                            .map_err(|e| e.to_string())?;
                        if !lhs.equals(&rhs).map_err(|e| e.to_string())? {
                            return Err(format!("case {case}: τ(a^{}) ≠ a^{n}·τ(a^{t}) for a = {gens:?} over F_{p}", t + n as i64));
                        }
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} identities"))
}

/// `τ(a^t)` computed for a monomial ideal, for callers that compare against other data.
pub fn monomial_tau(p: u64, gens: &[Exps], t: Rational) -> Result<Ideal, String> {
    let r = ring(p, 2);
    tau(&monomial_ideal(&r, gens), 1, t)
}

pub fn pair_tau(a: &Ideal, t: Rational) -> Result<Ideal, String> {
    test_ideal_pair(a, t, DEFAULT_TEST_IDEAL_E_MAX)
        .map_err(|e| e.to_string())?
        .determined()
        .map(|r| r.ideal)
        .ok_or_else(|| format!("test ideal of {:?} at t = {t} undetermined", texts(a)))
}
