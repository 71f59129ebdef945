use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::TermOrder;
use super::ring::{same_ring, PolyRing};
use crate::error::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// A polynomial in canonical form: nonzero coefficients, monomials strictly
/// descending in the ring's active order. Zero is the empty term list.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// ---------------------------------------------------------------------------
// term-list kernels shared with the Groebner engine

/// Sorts, merges duplicate monomials and drops zeros.
pub(crate) fn canonicalize(mut terms: Vec<Term>, field: &PrimeField, order: &TermOrder) -> Vec<Term> {
    terms.retain(|t| t.coeff != 0);
    terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.mono == t.mono => {
                last.coeff = field.add(last.coeff, t.coeff);
                if last.coeff == 0 {
                    out.pop();
                }
            }
            _ => out.push(t),
        }
    }
    out
}

pub(crate) fn merge_add(a: &[Term], b: &[Term], field: &PrimeField, order: &TermOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = field.add(a[i].coeff, b[j].coeff);
                if c != 0 {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `h - c * m * g`, all lists canonical.
pub(crate) fn sub_scaled(
    h: &[Term],
    c: u32,
    m: &Monomial,
    g: &[Term],
    field: &PrimeField,
    order: &TermOrder,
) -> Vec<Term> {
    let negc = field.neg(c);
    let mut out = Vec::with_capacity(h.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|t| Term {
        coeff: field.mul(negc, t.coeff),
        mono: t.mono.mul(m),
    });
    let mut pending = gi.next();
    while let Some(gt) = pending.take() {
        while i < h.len() && order.cmp(&h[i].mono, &gt.mono) == Ordering::Greater {
            out.push(h[i].clone());
            i += 1;
        }
        if i < h.len() && h[i].mono == gt.mono {
            let s = field.add(h[i].coeff, gt.coeff);
            if s != 0 {
                out.push(Term { coeff: s, mono: gt.mono });
            }
            i += 1;
        } else if gt.coeff != 0 {
            out.push(gt);
        }
        pending = gi.next();
    }
    out.extend_from_slice(&h[i..]);
    out
}

pub(crate) fn mul_terms(a: &[Term], b: &[Term], field: &PrimeField, order: &TermOrder) -> Result<Vec<Term>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.len() == 1 {
        let t = &small[0];
        let mut out = Vec::with_capacity(big.len());
        for s in big {
            out.push(Term {
                coeff: field.mul(t.coeff, s.coeff),
                mono: t.mono.try_mul(&s.mono)?,
            });
        }
        return Ok(out);
    }
    let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
    acc.reserve(small.len() * big.len());
    for s in small {
        for t in big {
            let m = s.mono.try_mul(&t.mono)?;
            let c = field.mul(s.coeff, t.coeff);
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c);
        }
    }
    let terms: Vec<Term> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(mono, coeff)| Term { coeff, mono })
        .collect();
    let mut terms = terms;
    terms.sort_by(|x, y| order.cmp(&y.mono, &x.mono));
    Ok(terms)
}

// ---------------------------------------------------------------------------

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, 1, Monomial::var(ring.nvars(), i))
    }

    /// `c * m`; `c` must already be a canonical residue.
    pub fn monomial(ring: &Arc<PolyRing>, c: u32, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![Term { coeff: c, mono: m }] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds the canonical form of an arbitrary term list.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(i64, Monomial)>) -> Self {
        let field = *ring.field();
        let terms = terms
            .into_iter()
            .map(|(c, m)| {
                assert_eq!(m.nvars(), ring.nvars());
                Term {
                    coeff: field.from_i64(c),
                    mono: m,
                }
            })
            .collect();
        Self::from_term_list(ring, terms)
    }

    pub(crate) fn from_term_list(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        let terms = canonicalize(terms, ring.field(), ring.order());
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps an already canonical term list.
    pub(crate) fn from_canonical(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Index of the variable if this is `c * x_i`.
    pub fn as_variable(&self) -> Option<usize> {
        match self.terms.as_slice() {
            [t] if t.mono.degree() == 1 => t.mono.support().next(),
            _ => None,
        }
    }

    pub fn coefficient_of(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| &t.mono == m).map_or(0, |t| t.coeff)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let terms = merge_add(&self.terms, &other.terms, self.ring.field(), self.ring.order());
        Ok(Polynomial::from_canonical(&self.ring, terms))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let neg = other.neg();
        let terms = merge_add(&self.terms, &neg.terms, self.ring.field(), self.ring.order());
        Ok(Polynomial::from_canonical(&self.ring, terms))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let terms = mul_terms(&self.terms, &other.terms, self.ring.field(), self.ring.order())?;
        Ok(Polynomial::from_canonical(&self.ring, terms))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: f.mul(c, t.coeff),
                mono: t.mono.clone(),
            })
            .collect();
        Polynomial::from_canonical(&self.ring, terms)
    }

    pub fn mul_monomial(&self, c: u32, m: &Monomial) -> Result<Polynomial> {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: f.mul(c, t.coeff),
                mono: t.mono.try_mul(m)?,
            });
        }
        Ok(Polynomial::from_canonical(&self.ring, terms))
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Result<Polynomial> {
        if let Some(d) = self.degree() {
            if d as u64 * n > super::monomial::MAX_DEGREE {
                return Err(AlgebraError::Overflow(format!("degree {d} * {n}")));
            }
        }
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^q` for `q` a power of the characteristic, via additivity of Frobenius.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial> {
        let field = *self.ring.field();
        if field.log_char(q).is_none() {
            return Err(AlgebraError::NotCharacteristicPower(q, field.characteristic()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            // c^q = c in F_p
            terms.push(Term {
                coeff: t.coeff,
                mono: t.mono.try_pow(q)?,
            });
        }
        Ok(Polynomial::from_canonical(&self.ring, terms))
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    /// The same polynomial viewed in a ring with the same variables under another order.
    pub fn reorder(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        if !self.ring.same_variables(ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.ring.order() == ring.order() {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.order().cmp(&b.mono, &a.mono));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Moves into `target`, sending variable `i` to variable `map[i]`.
    pub fn remap(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        assert_eq!(self.ring.field(), target.field());
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                mono: t.mono.remap(map, target.nvars()),
            })
            .collect();
        Polynomial::from_term_list(target, terms)
    }

    /// Whether the variable occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exponent(var) > 0)
    }

    /// Largest power of `x_var` dividing every term.
    pub fn var_content(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.mono.exponent(var)).min().unwrap_or(0)
    }

    /// Divides every term by `x_var^k` (caller guarantees divisibility).
    pub(crate) fn strip_var(&self, var: usize, k: u16) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                mono: t.mono.with_exponent(var, t.mono.exponent(var) - k),
            })
            .collect();
        Polynomial::from_term_list(&self.ring, terms)
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(g)?;
        let Some(lt) = g.leading_term() else {
            return Err(AlgebraError::precondition("division by zero polynomial"));
        };
        let field = *self.ring.field();
        let order = self.ring.order().clone();
        let lc_inv = field.inv(lt.coeff);
        let mut rem = self.terms.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some(h) = rem.first() {
            let Some(m) = lt.mono.quotient_of(&h.mono) else {
                return Ok(None);
            };
            let c = field.mul(h.coeff, lc_inv);
            rem = sub_scaled(&rem, c, &m, &g.terms, &field, &order);
            quot.push(Term { coeff: c, mono: m });
        }
        Ok(Some(Polynomial::from_canonical(&self.ring, quot)))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: f.neg(t.coeff),
                mono: t.mono.clone(),
            })
            .collect();
        Polynomial::from_canonical(&self.ring, terms)
    }
}

impl Polynomial {
    pub fn neg(&self) -> Polynomial {
        -self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial ring mismatch or exponent overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(p, vars).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(5, &["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let prod = &(&x + &y) * &(&x - &y);
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expected);
        assert!((&x * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn freshmans_dream_binomial() {
        let r = ring(5, &["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let lhs = (&x + &y).pow(5).unwrap();
        let rhs = &x.pow(5).unwrap() + &y.pow(5).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_edge_cases() {
        let r = ring(3, &["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        assert_eq!((&x + &y).pow(0).unwrap(), Polynomial::one(&r));
        let x9 = x.pow(9).unwrap();
        assert_eq!(x9.leading_monomial().unwrap().exponents(), &[9, 0]);
        assert_eq!(x9.len(), 1);
        let big = Polynomial::monomial(&r, 1, Monomial::from_exponents(&[30000u32, 0]).unwrap());
        assert!(matches!(big.pow(3), Err(AlgebraError::Overflow(_))));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = ring(5, &["x", "y"]);
        let s = ring(7, &["x", "y"]);
        assert_eq!(
            Polynomial::var(&r, 0).try_mul(&Polynomial::var(&s, 0)),
            Err(AlgebraError::RingMismatch)
        );
    }

    #[test]
    fn exact_division() {
        let r = ring(7, &["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let f = &(&x + &y) * &(&x * &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap().unwrap(), &x * &y);
        assert!(f.div_exact(&(&x - &y)).unwrap().is_none());
    }
}
