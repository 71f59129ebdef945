//! Symbolic powers of primes: a saturation engine for arbitrary primes and a
//! combinatorial engine for generic determinantal ideals.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{minors, MatrixOfVariables, RingPresentation};
use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::{height_in, ideal_power, ideal_sum, interreduce, saturate};
use crate::poly::{same_ring, PolyRing, Polynomial};

/// How far a computed symbolic power can be trusted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Exactness {
    /// Equal to the symbolic power by construction.
    Exact,
    /// Saturation output that matched an independent engine.
    CrossValidated,
    /// Treated as exact on a stated argument that is not machine-checked.
    Asserted(String),
    /// Only known to lie between the ordinary and the symbolic power.
    Unvalidated,
}

impl Exactness {
    pub fn is_trusted(&self) -> bool {
        !matches!(self, Exactness::Unvalidated)
    }
}

/// A prime `p` of `R = S/I`, given by its lift `Q ⊇ I` in `S`.
#[derive(Clone, Debug)]
pub struct PrimeSpec {
    ambient: RingPresentation,
    lift: Ideal,
    witness: Option<Polynomial>,
    witness_exactness: Exactness,
}

impl PrimeSpec {
    /// `lift` need not contain the defining ideal's generators; they are added.
    pub fn new(ambient: RingPresentation, lift: Ideal, witness: Option<Polynomial>) -> Result<Self> {
        if !same_ring(ambient.ring(), lift.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        let lift = if ambient.is_polynomial_ring() || lift.contains_ideal(ambient.defining())? {
            lift
        } else {
            ideal_sum(&lift, ambient.defining())?
        };
        if lift.is_unit()? {
            return Err(AlgebraError::precondition("prime lift is the unit ideal"));
        }
        if let Some(f) = &witness {
            if lift.contains(f)? {
                return Err(AlgebraError::precondition(format!("witness {f} lies in the prime")));
            }
        }
        let witness_exactness = if ambient.is_polynomial_ring() && generated_by_variables(&lift) {
            Exactness::Exact
        } else {
            Exactness::Unvalidated
        };
        Ok(PrimeSpec {
            ambient,
            lift,
            witness,
            witness_exactness,
        })
    }

    /// Records an argument that the witness lies in every embedded prime of every `p^n`.
    pub fn assert_witness_exact(mut self, reason: impl Into<String>) -> Self {
        if self.witness_exactness != Exactness::Exact {
            self.witness_exactness = Exactness::Asserted(reason.into());
        }
        self
    }

    pub fn ambient(&self) -> &RingPresentation {
        &self.ambient
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ambient.ring()
    }

    pub fn lift(&self) -> &Ideal {
        &self.lift
    }

    pub fn witness(&self) -> Option<&Polynomial> {
        self.witness.as_ref()
    }

    pub fn witness_exactness(&self) -> &Exactness {
        &self.witness_exactness
    }

    /// Height of `p` in `R`.
    pub fn height(&self) -> Result<usize> {
        height_in(self.ambient.defining(), &self.lift)
    }

    /// `p^n` as an ideal of `S` containing `I`.
    pub fn ordinary_power(&self, n: u32) -> Result<Ideal> {
        let pow = ideal_power(&self.lift, n)?;
        if self.ambient.is_polynomial_ring() {
            Ok(pow)
        } else {
            ideal_sum(&pow, self.ambient.defining())
        }
    }
}

/// Whether every generator is a variable (up to a unit).
fn generated_by_variables(i: &Ideal) -> bool {
    i.groebner_basis()
        .map(|gb| gb.iter().all(|g| g.as_variable().is_some()))
        .unwrap_or(false)
}

#[derive(Clone, Debug)]
pub struct SymbolicPower {
    pub ideal: Ideal,
    pub exactness: Exactness,
}

/// `((Q^n + I) : f^∞)`, which lies between `p^n` and `p^{(n)}`.
pub fn symbolic_power_saturation(p: &PrimeSpec, n: u32) -> Result<SymbolicPower> {
    let ring = p.ring();
    if n == 0 {
        return Ok(SymbolicPower {
            ideal: Ideal::unit(ring),
            exactness: Exactness::Exact,
        });
    }
    if p.ambient.is_polynomial_ring() && generated_by_variables(&p.lift) {
        // powers of primes generated by variables are primary
        return Ok(SymbolicPower {
            ideal: ideal_power(&p.lift, n)?,
            exactness: Exactness::Exact,
        });
    }
    let f = p
        .witness
        .as_ref()
        .ok_or_else(|| AlgebraError::precondition("saturation engine needs a witness outside the prime"))?;
    let base = p.ordinary_power(n)?;
    let ideal = if n == 1 { p.lift.clone() } else { saturate(&base, f)? };
    let exactness = if n == 1 {
        Exactness::Exact
    } else {
        p.witness_exactness.clone()
    };
    Ok(SymbolicPower { ideal, exactness })
}

/// Generators of `I_t^{(power)}` for a generic matrix, kept as products of minors.
#[derive(Clone, Debug)]
pub struct DepIdeal {
    ring: Arc<PolyRing>,
    t: usize,
    power: u32,
    /// `minors[k]` are the minors of size `t + k`.
    minors: Vec<Vec<Polynomial>>,
    /// Each product: list of (size offset, index) pairs.
    products: Vec<Vec<(usize, usize)>>,
}

/// Weight of a minor of size `a`: `max(a − t + 1, 0)`.
pub fn dep_weight(a: usize, t: usize) -> usize {
    (a + 1).saturating_sub(t)
}

/// Minimal multisets of minor sizes in `[t, max]`, sorted descending, whose
/// weights sum to at least `power`.
fn size_multisets(t: usize, max: usize, power: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(t: usize, hi: usize, need: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (t..=hi).rev() {
            cur.push(a);
            rec(t, a, need.saturating_sub(dep_weight(a, t)), cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(t, max, power, &mut cur, &mut out);
    out.retain(|s| {
        let total: usize = s.iter().map(|&a| dep_weight(a, t)).sum();
        s.iter().all(|&a| total - dep_weight(a, t) < power)
    });
    out
}

fn multichoose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether the product-of-minors description is known to give `I_t^{(k)}`
/// over `F_p` for an `m × n` generic matrix: `p` exceeds `min(t, m − t, n − t)`.
pub fn dep_is_exact(p: u32, m: usize, n: usize, t: usize) -> bool {
    let bound = t.min(m.saturating_sub(t)).min(n.saturating_sub(t));
    p as usize > bound
}

/// Products of minors of sizes `a_i ∈ [t, min(m, n)]` with `Σ (a_i − t + 1) ≥ power`.
pub fn dep_determinantal_symbolic(
    ring: &Arc<PolyRing>,
    x: &MatrixOfVariables,
    t: usize,
    power: u32,
) -> Result<DepIdeal> {
    let max = x.rows().min(x.cols());
    if t == 0 || t > max {
        return Err(AlgebraError::precondition(format!("minor size {t} outside [1, {max}]")));
    }
    let minors_by_size = (t..=max)
        .map(|a| minors(ring, x, a, None, None))
        .collect::<Result<Vec<_>>>()?;
    let mut products = Vec::new();
    if power == 0 {
        products.push(Vec::new());
    } else {
        for sizes in size_multisets(t, max, power as usize) {
            // group equal sizes, choose a multiset of minors within each group
            let mut groups: Vec<(usize, usize)> = Vec::new();
            for &a in &sizes {
                match groups.last_mut() {
                    Some((b, c)) if *b == a => *c += 1,
                    _ => groups.push((a, 1)),
                }
            }
            let mut partial: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
            for (a, count) in groups {
                let k = a - t;
                let choices = multichoose(minors_by_size[k].len(), count);
                let mut next = Vec::with_capacity(partial.len() * choices.len());
                for p in &partial {
                    for c in &choices {
                        let mut q = p.clone();
                        q.extend(c.iter().map(|&i| (k, i)));
                        next.push(q);
                    }
                }
                partial = next;
            }
            products.extend(partial);
        }
    }
    Ok(DepIdeal {
        ring: ring.clone(),
        t,
        power,
        minors: minors_by_size,
        products,
    })
}

impl DepIdeal {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn product_count(&self) -> usize {
        self.products.len()
    }

    fn expand(&self, product: &[(usize, usize)]) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for &(k, i) in product {
            acc = acc.try_mul(&self.minors[k][i])?;
        }
        Ok(acc)
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        let gens = self
            .products
            .iter()
            .map(|p| self.expand(p))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, interreduce(&self.ring, gens))
    }

    /// First generator outside `I_t^n`, if any. A product of at least `n`
    /// minors of size `≥ t` lies in `I_t^n` without computation; the rest are
    /// expanded and tested against `ordinary` (which must be `I_t^n`).
    pub fn first_outside_power(&self, ordinary: &Ideal, n: u32) -> Result<Option<Polynomial>> {
        for p in &self.products {
            if p.len() >= n as usize {
                continue;
            }
            let g = self.expand(p)?;
            if !ordinary.contains(&g)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

/// Least `c` in `[n, upper]` with `symbolic(c) ⊆ ordinary`, assuming the
/// symbolic powers decrease in `c`; `None` if even `upper` fails.
pub fn smallest_symbolic_exponent(
    n: u32,
    upper: u32,
    mut contained: impl FnMut(u32) -> Result<bool>,
) -> Result<Option<u32>> {
    if upper < n || !contained(upper)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (n, upper);
    // invariant: contained(hi); every c < lo fails (c < n fails or is untested-below-n)
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if contained(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(hi))
}

/// One row of the sharpness table for `p^{(c)} ⊆ p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallestC {
    pub n: u32,
    pub c: Option<u32>,
    pub bound: u32,
}

/// For `n = 1..=n_max`, the least `c ≤ 2hn` with `p^{(c)} ⊆ p^n`, using the
/// saturation engine. Refuses primes whose engine output is not trusted.
pub fn thm_b_smallest_c(p: &PrimeSpec, n_max: u32) -> Result<Vec<SmallestC>> {
    if !p.witness_exactness.is_trusted() {
        return Err(AlgebraError::precondition(
            "symbolic powers of this prime are not certified exact",
        ));
    }
    let h = p.height()? as u32;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let ordinary = p.ordinary_power(n)?;
        let bound = 2 * h * n;
        let c = smallest_symbolic_exponent(n, bound, |c| {
            let s = symbolic_power_saturation(p, c)?;
            ordinary.contains_ideal(&s.ideal)
        })?;
        rows.push(SmallestC { n, c, bound });
    }
    Ok(rows)
}

/// The same table for a generic determinantal `I_t` via the combinatorial engine.
pub fn dep_smallest_c(
    ring: &Arc<PolyRing>,
    x: &MatrixOfVariables,
    t: usize,
    h: u32,
    n_max: u32,
) -> Result<Vec<SmallestC>> {
    let it = Ideal::new(ring, minors(ring, x, t, None, None)?)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let ordinary = ideal_power(&it, n)?;
        let bound = 2 * h * n;
        let c = smallest_symbolic_exponent(n, bound, |c| {
            let dep = dep_determinantal_symbolic(ring, x, t, c)?;
            Ok(dep.first_outside_power(&ordinary, n)?.is_none())
        })?;
        rows.push(SmallestC { n, c, bound });
    }
    Ok(rows)
}
