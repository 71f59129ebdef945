//! Buchberger's algorithm with the Gebauer–Möller criteria, normal forms,
//! ideal membership and elimination.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashSet;

use crate::error::{AlgebraError, Result};
use crate::poly::{same_ring, sub_scaled, Monomial, PolyRing, Polynomial, PrimeField, Term, TermOrder};

static DEFAULT_MAX_PAIRS: AtomicUsize = AtomicUsize::new(20_000_000);
static DEFAULT_MAX_BASIS: AtomicUsize = AtomicUsize::new(200_000);

/// Resource limits for one Groebner computation. Exceeding either aborts with
/// [`AlgebraError::ResourceExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    /// S-pairs reduced before giving up.
    pub max_pairs: usize,
    /// Basis elements (active or not) before giving up.
    pub max_basis: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_pairs: DEFAULT_MAX_PAIRS.load(AtomicOrdering::Relaxed),
            max_basis: DEFAULT_MAX_BASIS.load(AtomicOrdering::Relaxed),
        }
    }
}

impl GbLimits {
    pub const UNLIMITED: GbLimits = GbLimits {
        max_pairs: usize::MAX,
        max_basis: usize::MAX,
    };

    /// Process-wide defaults used by [`Ideal::groebner_basis`].
    pub fn set_default(limits: GbLimits) {
        DEFAULT_MAX_PAIRS.store(limits.max_pairs, AtomicOrdering::Relaxed);
        DEFAULT_MAX_BASIS.store(limits.max_basis, AtomicOrdering::Relaxed);
    }
}

// ---------------------------------------------------------------------------
// reduction kernels on raw term lists

struct Reducers<'a> {
    lms: Vec<&'a Monomial>,
    polys: Vec<&'a [Term]>,
}

impl<'a> Reducers<'a> {
    fn new(polys: impl IntoIterator<Item = &'a [Term]>) -> Self {
        let polys: Vec<&[Term]> = polys.into_iter().filter(|p| !p.is_empty()).collect();
        Reducers {
            lms: polys.iter().map(|p| &p[0].mono).collect(),
            polys,
        }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<usize> {
        self.lms.iter().position(|lm| lm.divides(m))
    }
}

/// Reduces `h` by `red`. With `full == false` only the leading term is made
/// irreducible; otherwise every term is.
fn reduce(mut h: Vec<Term>, red: &Reducers<'_>, field: &PrimeField, order: &TermOrder, full: bool) -> Vec<Term> {
    let mut i = 0;
    while i < h.len() {
        match red.find(&h[i].mono) {
            Some(k) => {
                let g = red.polys[k];
                let m = g[0].mono.quotient_of(&h[i].mono).expect("divisor found");
                let c = field.div(h[i].coeff, g[0].coeff);
                let tail = sub_scaled(&h[i..], c, &m, g, field, order);
                h.truncate(i);
                h.extend(tail);
            }
            None if full => i += 1,
            None => break,
        }
    }
    h
}

fn make_monic(h: &mut [Term], field: &PrimeField) {
    if let Some(lc) = h.first().map(|t| t.coeff) {
        if lc != 1 {
            let inv = field.inv(lc);
            for t in h.iter_mut() {
                t.coeff = field.mul(t.coeff, inv);
            }
        }
    }
}

fn spoly_terms(f: &[Term], g: &[Term], field: &PrimeField, order: &TermOrder) -> Vec<Term> {
    let lcm = f[0].mono.lcm(&g[0].mono);
    let mf = f[0].mono.quotient_of(&lcm).expect("lcm");
    let mg = g[0].mono.quotient_of(&lcm).expect("lcm");
    let cf = field.inv(f[0].coeff);
    let cg = field.inv(g[0].coeff);
    let scaled_f: Vec<Term> = f
        .iter()
        .map(|t| Term {
            coeff: field.mul(cf, t.coeff),
            mono: t.mono.mul(&mf),
        })
        .collect();
    sub_scaled(&scaled_f, cg, &mg, g, field, order)
}

// ---------------------------------------------------------------------------
// Buchberger

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: u32,
    order_key: Vec<i32>,
    i: u32,
    j: u32,
}

struct Engine<'a> {
    field: &'a PrimeField,
    order: &'a TermOrder,
    limits: GbLimits,
    basis: Vec<Vec<Term>>,
    active: Vec<bool>,
    heap: BinaryHeap<Reverse<PairKey>>,
    lcms: rustc_hash::FxHashMap<(u32, u32), Monomial>,
    dead: FxHashSet<(u32, u32)>,
}

impl<'a> Engine<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.basis[i][0].mono
    }

    fn add(&mut self, h: Vec<Term>) -> Result<()> {
        if self.basis.len() >= self.limits.max_basis {
            return Err(AlgebraError::ResourceExceeded(format!(
                "basis size exceeded {}",
                self.limits.max_basis
            )));
        }
        let k = self.basis.len();
        let lm_h = h[0].mono.clone();

        // candidate pairs (i, k)
        struct Cand {
            i: usize,
            lcm: Monomial,
            coprime: bool,
            keep: bool,
        }
        let mut cands: Vec<Cand> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| {
                let lm_i = self.lm(i);
                Cand {
                    i,
                    lcm: lm_i.lcm(&lm_h),
                    coprime: lm_i.is_coprime(&lm_h),
                    keep: true,
                }
            })
            .collect();
        // chain criterion among the new pairs: drop (i,k) when some (j,k) has a proper divisor lcm
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && cands[b].lcm.divides(&cands[a].lcm) && cands[b].lcm != cands[a].lcm {
                    cands[a].keep = false;
                    break;
                }
            }
        }
        // among equal lcms keep one, none if any of them is coprime
        for a in 0..cands.len() {
            if !cands[a].keep {
                continue;
            }
            let mut any_coprime = cands[a].coprime;
            for b in (a + 1)..cands.len() {
                if cands[b].keep && cands[b].lcm == cands[a].lcm {
                    any_coprime |= cands[b].coprime;
                    cands[b].keep = false;
                }
            }
            if any_coprime {
                cands[a].keep = false;
            }
        }

        // chain criterion on old pairs
        let old: Vec<(u32, u32)> = self
            .heap
            .iter()
            .map(|Reverse(p)| (p.i, p.j))
            .filter(|ij| !self.dead.contains(ij))
            .collect();
        for (i, j) in old {
            let lcm = &self.lcms[&(i, j)];
            if lm_h.divides(lcm) {
                let lik = self.lm(i as usize).lcm(&lm_h);
                let ljk = self.lm(j as usize).lcm(&lm_h);
                if &lik != lcm && &ljk != lcm {
                    self.dead.insert((i, j));
                }
            }
        }

        for i in 0..k {
            if self.active[i] && lm_h.divides(self.lm(i)) {
                self.active[i] = false;
            }
        }

        self.basis.push(h);
        self.active.push(true);
        for c in cands.into_iter().filter(|c| c.keep) {
            let key = PairKey {
                degree: c.lcm.degree(),
                order_key: self.order.sort_key(&c.lcm),
                i: c.i as u32,
                j: k as u32,
            };
            self.lcms.insert((c.i as u32, k as u32), c.lcm);
            self.heap.push(Reverse(key));
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let mut processed = 0usize;
        while let Some(Reverse(pair)) = self.heap.pop() {
            let ij = (pair.i, pair.j);
            self.lcms.remove(&ij);
            if self.dead.remove(&ij) {
                continue;
            }
            processed += 1;
            if processed > self.limits.max_pairs {
                return Err(AlgebraError::ResourceExceeded(format!(
                    "S-pair count exceeded {}",
                    self.limits.max_pairs
                )));
            }
            let (i, j) = (pair.i as usize, pair.j as usize);
            let s = spoly_terms(&self.basis[i], &self.basis[j], self.field, self.order);
            let h = {
                let red = Reducers::new(self.basis.iter().map(|p| p.as_slice()));
                reduce(s, &red, self.field, self.order, true)
            };
            if !h.is_empty() {
                let mut h = h;
                make_monic(&mut h, self.field);
                self.add(h)?;
            }
        }
        Ok(())
    }

    fn reduced_basis(self) -> Vec<Vec<Term>> {
        let active: Vec<&[Term]> = self
            .basis
            .iter()
            .zip(self.active.iter())
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.as_slice())
            .collect();
        let mut out: Vec<Vec<Term>> = Vec::with_capacity(active.len());
        for (k, g) in active.iter().enumerate() {
            let red = Reducers::new(active.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| *p));
            let mut r = reduce(g.to_vec(), &red, self.field, self.order, true);
            debug_assert_eq!(r[0].mono, g[0].mono);
            make_monic(&mut r, self.field);
            out.push(r);
        }
        out.sort_by(|a, b| self.order.cmp(&a[0].mono, &b[0].mono));
        out
    }
}

/// Reduced Groebner basis of the term lists under `order`, sorted by leading monomial ascending.
pub(crate) fn groebner_terms(
    input: Vec<Vec<Term>>,
    field: &PrimeField,
    order: &TermOrder,
    limits: GbLimits,
) -> Result<Vec<Vec<Term>>> {
    let mut input: Vec<Vec<Term>> = input.into_iter().filter(|p| !p.is_empty()).collect();
    input.sort_by(|a, b| order.cmp(&a[0].mono, &b[0].mono).then_with(|| a.len().cmp(&b.len())));
    let mut engine = Engine {
        field,
        order,
        limits,
        basis: Vec::new(),
        active: Vec::new(),
        heap: BinaryHeap::new(),
        lcms: Default::default(),
        dead: Default::default(),
    };
    for f in input {
        let h = {
            let red = Reducers::new(engine.basis.iter().map(|p| p.as_slice()));
            reduce(f, &red, field, order, true)
        };
        if !h.is_empty() {
            let mut h = h;
            make_monic(&mut h, field);
            if h[0].mono.is_one() {
                return Ok(vec![h]);
            }
            engine.add(h)?;
        }
    }
    engine.run()?;
    Ok(engine.reduced_basis())
}

// ---------------------------------------------------------------------------
// public polynomial-level API

fn check_all_same_ring<'a>(ring: &Arc<PolyRing>, polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<()> {
    for p in polys {
        if !same_ring(ring, p.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
    }
    Ok(())
}

/// Remainder of multivariate division of `f` by `basis`: no term of the
/// result is divisible by a leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring();
    check_all_same_ring(ring, basis)?;
    let red = Reducers::new(basis.iter().map(|g| g.terms()));
    let terms = reduce(f.terms().to_vec(), &red, ring.field(), ring.order(), true);
    Ok(Polynomial::from_canonical(ring, terms))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    check_all_same_ring(f.ring(), [g])?;
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(f.ring()));
    }
    let ring = f.ring();
    let terms = spoly_terms(f.terms(), g.terms(), ring.field(), ring.order());
    Ok(Polynomial::from_canonical(ring, terms))
}

/// Reduced Groebner basis of the polynomials in their ring's active order.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial], limits: GbLimits) -> Result<Vec<Polynomial>> {
    check_all_same_ring(ring, gens)?;
    let basis = groebner_terms(
        gens.iter().map(|g| g.terms().to_vec()).collect(),
        ring.field(),
        ring.order(),
        limits,
    )?;
    Ok(basis
        .into_iter()
        .map(|t| Polynomial::from_canonical(ring, t))
        .collect())
}

/// Whether `basis` is a Groebner basis: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> Result<bool> {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j])?;
            if !normal_form(&s, basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// ideals

/// An ideal given by generators in a polynomial ring, with a write-once cache
/// of its reduced Groebner basis in the ring's active order.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Ideal {
    /// Drops zero and repeated generators; all generators must live in `ring`.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        check_all_same_ring(ring, &gens)?;
        let mut seen = FxHashSet::default();
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .filter(|g| seen.insert(g.clone()))
            .collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceLock::from(Arc::new(Vec::new())),
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        let one = Polynomial::one(ring);
        Ideal {
            ring: ring.clone(),
            gens: vec![one.clone()],
            gb: OnceLock::from(Arc::new(vec![one])),
        }
    }

    /// Ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal::new(ring, gens).expect("same ring")
    }

    pub fn parse(ring: &Arc<PolyRing>, texts: &[impl AsRef<str>]) -> Result<Ideal> {
        let gens = texts
            .iter()
            .map(|t| ring.parse(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Trusts `basis` to be the reduced Groebner basis in `ring`'s order.
    pub(crate) fn from_reduced_basis(ring: &Arc<PolyRing>, basis: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: basis.clone(),
            gb: OnceLock::from(Arc::new(basis)),
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn has_cached_basis(&self) -> bool {
        self.gb.get().is_some()
    }

    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        self.groebner_basis_with(GbLimits::default())
    }

    /// Reduced Groebner basis, computed at most once per ideal value. Concurrent
    /// callers may both compute it; the results coincide and the first one is kept.
    pub fn groebner_basis_with(&self, limits: GbLimits) -> Result<&[Polynomial]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.as_slice());
        }
        let gb = buchberger(&self.ring, &self.gens, limits)?;
        let _ = self.gb.set(Arc::new(gb));
        Ok(self.gb.get().expect("just set").as_slice())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_unit()))
    }

    fn check_ring(&self, other: &Arc<PolyRing>) -> Result<()> {
        if same_ring(&self.ring, other) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f.ring())?;
        normal_form(f, self.groebner_basis()?)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// First generator of `other` outside `self`, if any.
    pub fn first_non_member(&self, other: &Ideal) -> Result<Option<Polynomial>> {
        self.check_ring(&other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.first_non_member(other)?.is_none())
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// The same ideal in a ring with the same variables under another order.
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        let gens = self.gens.iter().map(|g| g.reorder(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn in_order(&self, order: TermOrder) -> Result<Ideal> {
        let ring = self.ring.with_order(order)?;
        self.in_ring(&ring)
    }

    /// Generating set with fewer elements: the reduced basis when it is not
    /// larger than the generator list.
    pub fn compact_generators(&self) -> Vec<Polynomial> {
        match self.gb.get() {
            Some(gb) if gb.len() <= self.gens.len() => gb.as_ref().clone(),
            _ => self.gens.clone(),
        }
    }
}

/// `I ∩ k[keep]`, via a Groebner basis in a block order with the dropped variables first.
pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let dropped: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
    if dropped.is_empty() {
        return Ok(ideal.clone());
    }
    let elim_ring = ring.with_order(TermOrder::elimination(n, &dropped))?;
    let elim = ideal.in_ring(&elim_ring)?;
    let gb = elim.groebner_basis()?;
    let kept: Vec<Polynomial> = gb
        .iter()
        .filter(|g| dropped.iter().all(|&v| !g.involves(v)))
        .map(|g| g.reorder(ring))
        .collect::<Result<_>>()?;
    // Restricted to the kept variables the second block is grevlex in declared
    // order; when that is the ring's order the selection is already reduced.
    let kept_order_matches = *ring.order() == TermOrder::grevlex(n);
    if kept_order_matches {
        let mut basis = kept;
        basis.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        return Ok(Ideal::from_reduced_basis(ring, basis));
    }
    Ideal::new(ring, kept)
}
