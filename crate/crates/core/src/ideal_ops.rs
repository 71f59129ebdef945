//! Sums, products, powers, bracket powers, intersections, colons,
//! saturations, dimension and height.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::poly::{same_ring, sub_scaled, Monomial, PolyRing, Polynomial, Term, TermOrder};

fn check_same(i: &Ideal, j: &Ideal) -> Result<()> {
    if same_ring(i.ring(), j.ring()) {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch)
    }
}

/// Row echelon form of the linear span: monic rows with pairwise distinct
/// leading monomials.
pub(crate) fn linear_basis(ring: &Arc<PolyRing>, polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let field = ring.field();
    let order = ring.order();
    let one = Monomial::one(ring.nvars());
    let mut rows: Vec<Vec<Term>> = Vec::new();
    let mut pivots: FxHashMap<Monomial, usize> = FxHashMap::default();
    for f in polys {
        let mut h = f.into_terms();
        while let Some(lead) = h.first() {
            match pivots.get(&lead.mono) {
                Some(&k) => {
                    let c = field.div(lead.coeff, rows[k][0].coeff);
                    h = sub_scaled(&h, c, &one, &rows[k], field, order);
                }
                None => {
                    let inv = field.inv(lead.coeff);
                    for t in h.iter_mut() {
                        t.coeff = field.mul(t.coeff, inv);
                    }
                    pivots.insert(h[0].mono.clone(), rows.len());
                    rows.push(h);
                    break;
                }
            }
        }
    }
    rows.into_iter().map(|r| Polynomial::from_canonical(ring, r)).collect()
}

/// Minimal generators of a monomial ideal given by monomials.
fn minimal_monomials(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by_key(|m| m.degree());
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Shrinks a generator list without changing the ideal: minimal generators
/// for monomial lists, a basis of the linear span otherwise.
pub fn interreduce(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    if gens.iter().any(|g| g.is_unit()) {
        return vec![Polynomial::one(ring)];
    }
    if gens.iter().all(|g| g.is_monomial()) {
        let monos = gens.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
        let mut out: Vec<Polynomial> = minimal_monomials(monos)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, 1, m))
            .collect();
        out.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        return out;
    }
    linear_basis(ring, gens)
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    let gens = i.generators().iter().chain(j.generators()).cloned().collect();
    Ideal::new(i.ring(), gens)
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    let ring = i.ring();
    let mut gens = Vec::with_capacity(i.generators().len() * j.generators().len());
    for f in i.generators() {
        for g in j.generators() {
            gens.push(f.try_mul(g)?);
        }
    }
    Ideal::new(ring, interreduce(ring, gens))
}

/// `I^n`, interreducing generators after every multiplication; `I^0 = (1)`.
pub fn ideal_power(i: &Ideal, n: u32) -> Result<Ideal> {
    let ring = i.ring();
    if n == 0 {
        return Ok(Ideal::unit(ring));
    }
    let base = Ideal::new(ring, interreduce(ring, i.generators().to_vec()))?;
    let mut acc = base.clone();
    for _ in 1..n {
        acc = ideal_product(&acc, &base)?;
    }
    Ok(acc)
}

/// `I^{[q]}`, generated by the `q`-th powers of the generators.
pub fn bracket_power(i: &Ideal, q: u64) -> Result<Ideal> {
    let ring = i.ring();
    let field = ring.field();
    if field.log_char(q).is_none() {
        return Err(AlgebraError::NotCharacteristicPower(q, field.characteristic()));
    }
    let gens = i
        .generators()
        .iter()
        .map(|g| g.frobenius_power(q))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// Eliminates the trailing `ext.nvars() - target.nvars()` variables of `gens`
/// and returns the result in `target`, which must share the leading variables.
fn eliminate_trailing(ext: &Arc<PolyRing>, gens: Vec<Polynomial>, target: &Arc<PolyRing>) -> Result<Ideal> {
    let n = target.nvars();
    let total = ext.nvars();
    let dropped: Vec<usize> = (n..total).collect();
    let elim_ring = ext.with_order(TermOrder::elimination(total, &dropped))?;
    let gens = gens.iter().map(|g| g.reorder(&elim_ring)).collect::<Result<Vec<_>>>()?;
    let elim = Ideal::new(&elim_ring, gens)?;
    let mut map: Vec<usize> = (0..n).collect();
    map.extend(std::iter::repeat_n(0, total - n));
    let mut kept: Vec<Polynomial> = elim
        .groebner_basis()?
        .iter()
        .filter(|g| dropped.iter().all(|&v| !g.involves(v)))
        .map(|g| g.remap(target, &map))
        .collect();
    if *target.order() == TermOrder::grevlex(n) {
        // the second block of the elimination order is exactly this order
        kept.sort_by(|a, b| target.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        return Ok(Ideal::from_reduced_basis(target, kept));
    }
    Ideal::new(target, kept)
}

/// `I ∩ J` via `t·I + (1 − t)·J` and elimination of the fresh variable `t`.
pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if i.is_unit()? {
        return Ok(j.clone());
    }
    if j.is_unit()? {
        return Ok(i.clone());
    }
    let n = ring.nvars();
    let ext = ring.extended(&[ring.fresh_name("t")])?;
    let embed: Vec<usize> = (0..n).collect();
    let t = Polynomial::var(&ext, n);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::with_capacity(i.generators().len() + j.generators().len());
    for f in i.generators() {
        gens.push(&f.remap(&ext, &embed) * &t);
    }
    for g in j.generators() {
        gens.push(&g.remap(&ext, &embed) * &one_minus_t);
    }
    eliminate_trailing(&ext, gens, ring)
}

/// `(I : g)` as `(I ∩ (g)) / g`.
pub fn colon_element(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let ring = i.ring();
    if !same_ring(ring, g.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if i.contains(g)? {
        return Ok(Ideal::unit(ring));
    }
    if g.is_unit() {
        return Ok(i.clone());
    }
    let principal = Ideal::new(ring, vec![g.clone()])?;
    let meet = ideal_intersect(i, &principal)?;
    let mut quotients = Vec::with_capacity(meet.generators().len());
    for h in meet.generators() {
        match h.div_exact(g)? {
            Some(q) => quotients.push(q),
            None => {
                return Err(AlgebraError::Internal(format!(
                    "element {h} of I ∩ ({g}) is not divisible by {g}"
                )))
            }
        }
    }
    Ideal::new(ring, quotients)
}

/// `(I : J) = ⋂_{g ∈ gens J} (I : g)`.
pub fn ideal_colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    if j.is_zero() {
        return Err(AlgebraError::precondition("colon by the zero ideal"));
    }
    let mut acc: Option<Ideal> = None;
    for g in j.generators() {
        let c = colon_element(i, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => ideal_intersect(&a, &c)?,
        });
    }
    Ok(acc.expect("nonzero J"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SaturationMethod {
    /// Homogeneous ideal saturated by a monomial: one reverse-lex basis per variable.
    /// Anything else: Rabinowitsch.
    #[default]
    Auto,
    Rabinowitsch,
    /// Colon by `f` until the chain stabilizes.
    IteratedColon,
}

pub fn saturate(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    saturate_with(i, f, SaturationMethod::Auto)
}

/// `(I : f^∞)`.
pub fn saturate_with(i: &Ideal, f: &Polynomial, method: SaturationMethod) -> Result<Ideal> {
    let ring = i.ring();
    if !same_ring(ring, f.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if f.is_zero() {
        return Err(AlgebraError::precondition("saturation by zero"));
    }
    if i.is_zero() || f.is_unit() {
        return Ok(i.clone());
    }
    match method {
        SaturationMethod::Auto => {
            let homogeneous = i.generators().iter().all(|g| g.is_homogeneous());
            if homogeneous && f.is_monomial() {
                let m = f.leading_monomial().expect("nonzero").clone();
                let mut acc = i.clone();
                for v in m.support().collect::<Vec<_>>() {
                    acc = saturate_by_variable(&acc, v)?;
                }
                Ok(acc)
            } else {
                rabinowitsch(i, f)
            }
        }
        SaturationMethod::Rabinowitsch => rabinowitsch(i, f),
        SaturationMethod::IteratedColon => {
            let mut cur = i.clone();
            loop {
                let next = colon_element(&cur, f)?;
                if cur.contains_ideal(&next)? {
                    return Ok(cur);
                }
                cur = next;
            }
        }
    }
}

fn rabinowitsch(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = i.ring();
    let n = ring.nvars();
    let ext = ring.extended(&[ring.fresh_name("y")])?;
    let embed: Vec<usize> = (0..n).collect();
    let y = Polynomial::var(&ext, n);
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| g.remap(&ext, &embed)).collect();
    gens.push(&Polynomial::one(&ext) - &(&y * &f.remap(&ext, &embed)));
    eliminate_trailing(&ext, gens, ring)
}

/// `(I : x_v^∞)` for homogeneous `I`: in grevlex with `x_v` last, strip the
/// largest power of `x_v` from each basis element.
pub fn saturate_by_variable(i: &Ideal, v: usize) -> Result<Ideal> {
    let ring = i.ring();
    if !i.generators().iter().all(|g| g.is_homogeneous()) {
        return Err(AlgebraError::precondition("variable saturation needs a homogeneous ideal"));
    }
    let order = TermOrder::grevlex_with_last(ring.nvars(), v);
    let gens: Vec<Polynomial> = if *ring.order() == order {
        i.groebner_basis()?.to_vec()
    } else {
        i.in_order(order)?.groebner_basis()?.to_vec()
    };
    let stripped = gens
        .iter()
        .map(|g| g.strip_var(v, g.var_content(v)).reorder(ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, stripped)
}

/// Krull dimension of `S/I`: the largest set of variables containing the
/// support of no leading monomial of a Groebner basis.
pub fn dimension(i: &Ideal) -> Result<usize> {
    let ring = i.ring();
    let n = ring.nvars();
    if n > 128 {
        return Err(AlgebraError::precondition("dimension supports at most 128 variables"));
    }
    let gb = i.groebner_basis()?;
    if gb.iter().any(|g| g.is_unit()) {
        return Err(AlgebraError::UnitIdeal);
    }
    let mut supports: Vec<u128> = gb
        .iter()
        .map(|g| {
            g.leading_monomial()
                .expect("nonzero")
                .support()
                .fold(0u128, |acc, v| acc | (1u128 << v))
        })
        .collect();
    supports.sort_unstable();
    supports.dedup();

    fn search(v: usize, n: usize, chosen: u128, size: usize, supports: &[u128], best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if v == n || size + (n - v) <= *best {
            return;
        }
        let with = chosen | (1u128 << v);
        if !supports.iter().any(|&s| s & !with == 0) {
            search(v + 1, n, with, size + 1, supports, best);
        }
        search(v + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    search(0, n, 0, 0, &supports, &mut best);
    Ok(best)
}

/// Height of `P / I` in `S / I`, as `dim(S/I) − dim(S/P)`. Valid for
/// catenary equidimensional quotients such as the domains in scope.
pub fn height_in(ring_mod: &Ideal, p: &Ideal) -> Result<usize> {
    check_same(ring_mod, p)?;
    if !p.contains_ideal(ring_mod)? {
        return Err(AlgebraError::precondition("prime does not contain the defining ideal"));
    }
    let d_ring = dimension(ring_mod)?;
    let d_p = dimension(p)?;
    Ok(d_ring - d_p)
}
