//! Frobenius roots, test ideals of pairs, and Fedder-type splitting checks.
//!
//! Everything here works in the ambient polynomial ring `S = F_p[x_1..x_n]`,
//! which is free over `S^q` on the monomials with all exponents below `q`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{doubled_ring, RingPresentation};
use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::{bracket_power, ideal_colon, ideal_intersect, ideal_power, interreduce, linear_basis};
use crate::poly::{Monomial, PolyRing, Polynomial, Term};
use crate::rational::{self, Rational};

/// `q = p^e` checked against overflow of the exponent range.
pub fn frobenius_q(ring: &PolyRing, e: u32) -> Result<u64> {
    let p = ring.characteristic() as u64;
    p.checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| AlgebraError::Overflow(format!("{p}^{e}")))
}

/// `f = Σ_μ g_μ^q · μ` over monomials `μ` with all exponents below `q`.
#[derive(Clone, Debug)]
pub struct RootBasisDecomposition {
    q: u64,
    parts: BTreeMap<Monomial, Polynomial>,
}

impl RootBasisDecomposition {
    pub fn new(f: &Polynomial, q: u64) -> Result<Self> {
        let ring = f.ring();
        if ring.field().log_char(q).is_none() {
            return Err(AlgebraError::NotCharacteristicPower(q, ring.characteristic()));
        }
        let q32 = u32::try_from(q).map_err(|_| AlgebraError::Overflow(format!("q = {q}")))?;
        let mut buckets: BTreeMap<Monomial, Vec<Term>> = BTreeMap::new();
        for t in f.terms() {
            let (quot, rem) = t.mono.split_by(q32);
            // c^{1/q} = c over the prime field
            buckets.entry(rem).or_default().push(Term {
                coeff: t.coeff,
                mono: quot,
            });
        }
        let parts = buckets
            .into_iter()
            .map(|(mu, terms)| (mu, Polynomial::from_term_list(ring, terms)))
            .collect();
        Ok(RootBasisDecomposition { q, parts })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.parts.iter()
    }

    pub fn into_coefficients(self) -> impl Iterator<Item = Polynomial> {
        self.parts.into_values()
    }

    /// `Σ g_μ^q · μ`.
    pub fn reconstruct(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        for (mu, g) in &self.parts {
            acc = acc.try_add(&g.frobenius_power(self.q)?.mul_monomial(1, mu)?)?;
        }
        Ok(acc)
    }
}

fn root_generators(gens: impl IntoIterator<Item = Polynomial>, q: u64) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for g in gens {
        out.extend(RootBasisDecomposition::new(&g, q)?.into_coefficients());
    }
    Ok(out)
}

/// `J^{[1/p^e]}`: the smallest ideal `K` with `J ⊆ K^{[p^e]}`.
pub fn root_ideal(j: &Ideal, e: u32) -> Result<Ideal> {
    let ring = j.ring();
    if e == 0 {
        return Ok(j.clone());
    }
    let q = frobenius_q(ring, e)?;
    let gens = root_generators(j.generators().iter().cloned(), q)?;
    Ideal::new(ring, interreduce(ring, gens))
}

fn count_exponent_vectors(r: usize, bound: u64, total: u64, q: u64) -> u128 {
    // vectors in [0, bound]^r with sum ≤ total and sum ≡ total mod q
    let mut ways = vec![0u128; total as usize + 1];
    ways[0] = 1;
    for _ in 0..r {
        let mut next = vec![0u128; total as usize + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for d in 0..=bound.min(total - s as u64) {
                next[s + d as usize] += w;
            }
        }
        ways = next;
    }
    ways.iter()
        .enumerate()
        .filter(|(s, _)| (total - *s as u64).is_multiple_of(q))
        .map(|(_, &w)| w)
        .sum()
}

fn binomial_count(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `(a^k)^{[1/p^e]}` without expanding `a^k` when that is cheaper: with
/// generators `f_i` and `k = q·|β| + |δ|`, every `f^{qβ + δ}` has root
/// `f^β · (f^δ)^{[1/q]}`, so the root is `Σ_δ a^{(k−|δ|)/q} (f^δ)^{[1/q]}`
/// over `δ ∈ [0, q−1]^r` with `|δ| ≤ k` and `|δ| ≡ k mod q`.
pub fn root_of_power(a: &Ideal, k: u64, e: u32) -> Result<Ideal> {
    let ring = a.ring();
    if k == 0 {
        return Ok(Ideal::unit(ring));
    }
    if a.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let q = frobenius_q(ring, e)?;
    let gens = interreduce(ring, a.generators().to_vec());
    let r = gens.len();
    let delta_count = count_exponent_vectors(r, q - 1, k, q);
    let direct_count = binomial_count(k + r as u64 - 1, r as u64 - 1);
    if direct_count <= delta_count {
        let k32 = u32::try_from(k).map_err(|_| AlgebraError::Overflow(format!("power {k}")))?;
        return root_ideal(&ideal_power(&Ideal::new(ring, gens)?, k32)?, e);
    }

    let base = Ideal::new(ring, gens.clone())?;
    let mut powers_cache: Vec<Vec<Polynomial>> = vec![gens.iter().map(|_| Polynomial::one(ring)).collect()];
    for j in 1..q.min(k + 1) {
        let prev = &powers_cache[j as usize - 1];
        let row = prev
            .iter()
            .zip(&gens)
            .map(|(p, g)| p.try_mul(g))
            .collect::<Result<Vec<_>>>()?;
        powers_cache.push(row);
    }
    let mut ideal_powers: BTreeMap<u64, Vec<Polynomial>> = BTreeMap::new();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut delta = vec![0u64; r];
    loop {
        let s: u64 = delta.iter().sum();
        if s <= k && (k - s).is_multiple_of(q) {
            let mut fd = Polynomial::one(ring);
            for (i, &d) in delta.iter().enumerate() {
                if d > 0 {
                    fd = fd.try_mul(&powers_cache[d as usize][i])?;
                }
            }
            let roots = linear_basis(ring, RootBasisDecomposition::new(&fd, q)?.into_coefficients());
            let m = (k - s) / q;
            if let std::collections::btree_map::Entry::Vacant(e) = ideal_powers.entry(m) {
                let m32 = u32::try_from(m).map_err(|_| AlgebraError::Overflow(format!("power {m}")))?;
                e.insert(ideal_power(&base, m32)?.generators().to_vec());
            }
            for pg in &ideal_powers[&m] {
                for rt in &roots {
                    out.push(pg.try_mul(rt)?);
                }
            }
            out = linear_basis(ring, out);
        }
        // next δ in [0, min(q−1, k)]^r
        let top = (q - 1).min(k);
        let mut i = 0;
        loop {
            if i == r {
                return Ideal::new(ring, interreduce(ring, out));
            }
            if delta[i] < top {
                delta[i] += 1;
                break;
            }
            delta[i] = 0;
            i += 1;
        }
    }
}

/// Stable value of the chain `I_e = (a^{⌈t p^e⌉})^{[1/p^e]}`.
#[derive(Clone, Debug)]
pub struct PairTestIdealResult {
    pub ideal: Ideal,
    pub stabilized_at_e: u32,
    pub t: Rational,
    /// True when the chain met the upper bound of [`test_ideal_bounds`],
    /// which pins the test ideal exactly; false when only `I_e = I_{e+1}` was seen.
    pub certified: bool,
    /// Upper bound from the last level computed; equal to `ideal` when certified.
    pub upper: Ideal,
}

#[derive(Clone, Debug)]
pub enum TestIdealVerdict {
    Determined(PairTestIdealResult),
    Undetermined { e_max: u32 },
}

impl TestIdealVerdict {
    pub fn determined(self) -> Option<PairTestIdealResult> {
        match self {
            TestIdealVerdict::Determined(r) => Some(r),
            TestIdealVerdict::Undetermined { .. } => None,
        }
    }
}

pub const DEFAULT_TEST_IDEAL_E_MAX: u32 = 4;

/// `τ(a^t)` in the polynomial ring.
pub fn test_ideal_pair(a: &Ideal, t: Rational, e_max: u32) -> Result<TestIdealVerdict> {
    test_ideal_of_power(a, 1, t, e_max)
}

/// Ideals `lower ⊆ τ((b^n)^t) ⊆ upper` computed at one Frobenius level.
#[derive(Clone, Debug)]
pub struct TestIdealBounds {
    pub e: u32,
    pub lower: Ideal,
    pub upper: Ideal,
}

/// Bounds for `τ((b^n)^t)` at level `e`, `q = p^e`.
///
/// The lower bound is the chain value `(b^{n⌈tq⌉})^{[1/q]}`. For the upper
/// bound, `τ((b^n)^t) = τ(b^{nt})` is the `q`-th root of `τ(b^{ntq})`, and by
/// Skoda `τ(b^s) ⊆ b^{⌊s⌋ − r + 1}` when `b` has a reduction with `r`
/// generators; `r` is at most the number of generators and at most the
/// number of variables.
pub fn test_ideal_bounds(b: &Ideal, n: u32, t: Rational, e: u32) -> Result<TestIdealBounds> {
    let ring = b.ring();
    if b.is_zero() {
        return Err(AlgebraError::precondition("test ideal of the zero ideal"));
    }
    if !rational::is_positive(&t) {
        return Err(AlgebraError::precondition("test ideal exponent must be positive"));
    }
    let r = reduction_size(b);
    let q = frobenius_q(ring, e)? as i64;
    let tq = t * Rational::from_integer(q);
    let lower = root_of_power(b, n as u64 * rational::ceil(&tq) as u64, e)?;
    let skoda = (rational::floor(&(tq * Rational::from_integer(n as i64))) - r + 1).max(0);
    let upper = root_of_power(b, skoda as u64, e)?;
    Ok(TestIdealBounds { e, lower, upper })
}

/// `τ((b^n)^t)`, with chain exponents `n·⌈t p^e⌉` taken on the base `b`.
pub fn test_ideal_of_power(b: &Ideal, n: u32, t: Rational, e_max: u32) -> Result<TestIdealVerdict> {
    let ring = b.ring();
    if b.is_zero() {
        return Err(AlgebraError::precondition("test ideal of the zero ideal"));
    }
    if rational::is_zero(&t) {
        return Ok(TestIdealVerdict::Determined(PairTestIdealResult {
            ideal: Ideal::unit(ring),
            stabilized_at_e: 0,
            t,
            certified: true,
            upper: Ideal::unit(ring),
        }));
    }
    let mut prev: Option<Ideal> = None;
    for e in 1..=e_max {
        let TestIdealBounds { lower, upper, .. } = test_ideal_bounds(b, n, t, e)?;
        if let Some(p) = &prev {
            if !lower.contains_ideal(p)? {
                return Err(AlgebraError::Internal(format!("test ideal chain not ascending at e = {e}")));
            }
        }
        if lower.contains_ideal(&upper)? {
            return Ok(TestIdealVerdict::Determined(PairTestIdealResult {
                ideal: lower.clone(),
                stabilized_at_e: e,
                t,
                certified: true,
                upper: lower,
            }));
        }
        if let Some(p) = &prev {
            if p.contains_ideal(&lower)? {
                return Ok(TestIdealVerdict::Determined(PairTestIdealResult {
                    ideal: lower,
                    stabilized_at_e: e - 1,
                    t,
                    certified: false,
                    upper,
                }));
            }
        }
        prev = Some(lower);
    }
    Ok(TestIdealVerdict::Undetermined { e_max })
}

fn reduction_size(b: &Ideal) -> i64 {
    let gens = interreduce(b.ring(), b.generators().to_vec()).len() as i64;
    gens.min(b.ring().nvars() as i64)
}

// ---------------------------------------------------------------------------
// splittings

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Fsplit,
    Compatible,
    Diagonal,
}

/// Fedder element `u` at level `e`: `u ∈ (I^{[q]} : I)`, `u ∉ m^{[q]}`, and for
/// compatible kinds `u·J ⊆ J^{[q]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingCertificate {
    pub kind: CertificateKind,
    pub e: u32,
    pub u: Polynomial,
}

/// JSON form `{kind, e, u}` with `u` in canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub kind: CertificateKind,
    pub e: u32,
    pub u: String,
}

/// Whether `u ∉ (x_1^q, ..., x_n^q)`: some term has every exponent below `q`.
pub fn outside_frobenius_maximal(u: &Polynomial, q: u64) -> bool {
    u.terms().iter().any(|t| t.mono.all_below(q.min(u32::MAX as u64) as u32))
}

fn proper_in_maximal(i: &Ideal) -> bool {
    i.generators().iter().all(|g| g.coefficient_of(&Monomial::one(g.ring().nvars())) == 0)
}

impl SplittingCertificate {
    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            kind: self.kind,
            e: self.e,
            u: self.u.to_string(),
        }
    }

    /// Parses and re-validates against `i` (and `j` for compatible kinds).
    pub fn load(record: &CertificateRecord, i: &Ideal, j: Option<&Ideal>) -> Result<Self> {
        let cert = SplittingCertificate {
            kind: record.kind,
            e: record.e,
            u: i.ring().parse(&record.u)?,
        };
        if !cert.validate(i, j)? {
            return Err(AlgebraError::precondition(format!(
                "certificate u = {} does not validate at e = {}",
                record.u, record.e
            )));
        }
        Ok(cert)
    }

    pub fn validate(&self, i: &Ideal, j: Option<&Ideal>) -> Result<bool> {
        if self.e == 0 {
            return Ok(false);
        }
        let q = frobenius_q(i.ring(), self.e)?;
        if !outside_frobenius_maximal(&self.u, q) {
            return Ok(false);
        }
        if !multiplies_into_bracket(&self.u, i, q)? {
            return Ok(false);
        }
        match (self.kind, j) {
            (CertificateKind::Fsplit, _) => Ok(true),
            (_, Some(j)) => multiplies_into_bracket(&self.u, j, q),
            (_, None) => Err(AlgebraError::precondition("compatible certificate needs its ideal")),
        }
    }
}

/// `u·I ⊆ I^{[q]}`.
fn multiplies_into_bracket(u: &Polynomial, i: &Ideal, q: u64) -> Result<bool> {
    let bracket = bracket_power(&Ideal::new(i.ring(), i.compact_generators())?, q)?;
    for g in i.generators() {
        if !bracket.contains(&u.try_mul(g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(I^{[q]} : I)`, using the smaller of the generator list and the reduced basis.
pub fn fedder_colon(i: &Ideal, q: u64) -> Result<Ideal> {
    let ring = i.ring();
    if i.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let _ = i.groebner_basis()?;
    let small = Ideal::new(ring, i.compact_generators())?;
    ideal_colon(&bracket_power(&small, q)?, &small)
}

fn first_outside(c: &Ideal, q: u64) -> Option<Polynomial> {
    c.generators().iter().find(|g| outside_frobenius_maximal(g, q)).cloned()
}

fn check_in_maximal(i: &Ideal, what: &str) -> Result<()> {
    if !proper_in_maximal(i) {
        return Err(AlgebraError::precondition(format!(
            "{what} must lie in the ideal of the variables"
        )));
    }
    Ok(())
}

/// Fedder's criterion at `e = 1`: `S/I` is F-split iff `(I^{[p]} : I) ⊄ m^{[p]}`.
pub fn fedder_fsplit(i: &Ideal) -> Result<Option<SplittingCertificate>> {
    check_in_maximal(i, "I")?;
    let q = frobenius_q(i.ring(), 1)?;
    let colon = fedder_colon(i, q)?;
    let Some(u) = first_outside(&colon, q) else {
        return Ok(None);
    };
    let cert = SplittingCertificate {
        kind: CertificateKind::Fsplit,
        e: 1,
        u,
    };
    if !cert.validate(i, None)? {
        return Err(AlgebraError::Internal("F-splitting certificate failed to validate".into()));
    }
    Ok(Some(cert))
}

/// Searches `(I^{[q]} : I) ∩ (J^{[q]} : J)` for an element outside `m^{[q]}`,
/// for `q = p, ..., p^{e_max}`.
pub fn compatible_splitting_exists(i: &Ideal, j: &Ideal, e_max: u32) -> Result<Option<SplittingCertificate>> {
    compatible_search(i, j, e_max, CertificateKind::Compatible)
}

fn compatible_search(i: &Ideal, j: &Ideal, e_max: u32, kind: CertificateKind) -> Result<Option<SplittingCertificate>> {
    check_in_maximal(i, "I")?;
    check_in_maximal(j, "J")?;
    if !j.contains_ideal(i)? {
        return Err(AlgebraError::precondition("I must be contained in J"));
    }
    let same = i.contains_ideal(j)?;
    for e in 1..=e_max {
        let q = frobenius_q(i.ring(), e)?;
        let ci = fedder_colon(i, q)?;
        let c = if same { ci } else { ideal_intersect(&ci, &fedder_colon(j, q)?)? };
        if let Some(u) = first_outside(&c, q) {
            let cert = SplittingCertificate { kind, e, u };
            if !cert.validate(i, Some(j))? {
                return Err(AlgebraError::Internal("compatible certificate failed to validate".into()));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

pub const DEFAULT_DIAG_E_MAX: u32 = 1;
pub const DEFAULT_PROBE_E_MAX: u32 = 2;

/// Diagonal F-splitting of `R = S/I`: a splitting of the doubled ring
/// compatible with the diagonal ideal. The certificate lives in the doubled ring.
pub fn diag_fsplit_check(r: &RingPresentation, e_max: u32) -> Result<(RingPresentation, Ideal, Option<SplittingCertificate>)> {
    let (doubled, diagonal) = doubled_ring(r)?;
    let cert = compatible_search(doubled.defining(), &diagonal, e_max, CertificateKind::Diagonal)?;
    Ok((doubled, diagonal, cert))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SfrVerdict {
    /// `c·u ∉ m^{[q]}` for the recorded `u ∈ (I^{[q]} : I)`, `q = p^e`.
    Certified { e: u32, u: Polynomial },
    Undetermined { e_max: u32 },
}

/// Strong F-regularity probe: certifies when `c·(I^{[q]} : I) ⊄ m^{[q]}` for
/// some `e ≤ e_max`. Regularity of `R_c` is the caller's assumption.
pub fn strong_freg_probe(i: &Ideal, c: &Polynomial, e_max: u32) -> Result<SfrVerdict> {
    check_in_maximal(i, "I")?;
    if i.contains(c)? {
        return Err(AlgebraError::precondition(format!("c = {c} lies in I")));
    }
    for e in 1..=e_max {
        let q = frobenius_q(i.ring(), e)?;
        let colon = fedder_colon(i, q)?;
        for g in colon.generators() {
            let u = c.try_mul(g)?;
            if outside_frobenius_maximal(&u, q) {
                return Ok(SfrVerdict::Certified { e, u: g.clone() });
            }
        }
    }
    Ok(SfrVerdict::Undetermined { e_max })
}
