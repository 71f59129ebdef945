//! Reference computations that share no code with the algebra kernel beyond
//! reading exponent vectors and coefficients.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::Ratio;

pub type Exps = Vec<u32>;
/// Sparse polynomial: exponent vector -> coefficient in [0, p).
pub type Sparse = BTreeMap<Exps, u64>;

pub fn to_sparse(f: &fsplit_core::Polynomial) -> Sparse {
    f.terms()
        .iter()
        .map(|t| (t.mono.exponents().iter().map(|&e| e as u32).collect(), t.coeff as u64))
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exps>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

fn degree(e: &Exps) -> u32 {
    e.iter().sum()
}

fn shift(f: &Sparse, m: &Exps) -> Sparse {
    f.iter()
        .map(|(e, &c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c))
        .collect()
}

/// Whether `f` is an F_p-linear combination of `m·g_i` with `deg(m·g_i) ≤ bound`.
pub fn in_degree_span(f: &Sparse, gens: &[Sparse], nvars: usize, bound: u32, p: u64) -> bool {
    // Gaussian elimination; rows kept with distinct pivot columns.
    let mut pivots: BTreeMap<Exps, Sparse> = BTreeMap::new();
    let reduce = |mut v: Sparse, pivots: &BTreeMap<Exps, Sparse>| -> Sparse {
        loop {
            let hit = v.keys().rev().find(|k| pivots.contains_key(*k)).cloned();
            let Some(k) = hit else { return v };
            let row = &pivots[&k];
            let c = v[&k];
            for (e, &rc) in row {
                let entry = v.entry(e.clone()).or_insert(0);
                *entry = (*entry + p - c * rc % p) % p;
                if *entry == 0 {
                    v.remove(e);
                }
            }
        }
    };
    for g in gens {
        let dg = g.keys().map(degree).max().unwrap_or(0);
        if dg > bound {
            continue;
        }
        for m in monomials_up_to(nvars, bound - dg) {
            let v = reduce(shift(g, &m), &pivots);
            if let Some(k) = v.keys().next_back().cloned() {
                let inv = inv_mod(v[&k], p);
                let v: Sparse = v.into_iter().map(|(e, c)| (e, c * inv % p)).collect();
                pivots.insert(k, v);
            }
        }
    }
    reduce(f.clone(), &pivots).is_empty()
}

/// Membership with escalating degree bound; `None` when undecided up to `max_bound`.
pub fn member_by_linear_algebra(f: &Sparse, gens: &[Sparse], nvars: usize, start: u32, max_bound: u32, p: u64) -> Option<bool> {
    if f.is_empty() {
        return Some(true);
    }
    let homogeneous = |g: &Sparse| {
        let mut it = g.keys().map(degree);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    };
    if gens.iter().all(homogeneous) {
        // graded: each homogeneous component of f lies in the ideal iff it lies in the span in its own degree
        let mut by_deg: BTreeMap<u32, Sparse> = BTreeMap::new();
        for (e, &c) in f {
            by_deg.entry(degree(e)).or_default().insert(e.clone(), c);
        }
        return Some(by_deg.iter().all(|(&d, part)| in_degree_span(part, gens, nvars, d, p)));
    }
    for bound in start..=max_bound {
        if in_degree_span(f, gens, nvars, bound, p) {
            return Some(true);
        }
    }
    None
}

/// Minimal generators of the root ideal of a monomial ideal `J` in two
/// variables, found by intersecting all staircase ideals `K` in the box
/// `[0, b]^2` with `J ⊆ K^{[q]}`. Returns the set of box monomials in the root.
pub fn brute_force_monomial_root(j: &[Exps], q: u32, b: u32) -> Vec<Exps> {
    // K ∩ box is given by a nonincreasing height h(i) ∈ [0, b+1]: x^i y^k ∈ K iff k ≥ h(i)
    let width = (b + 1) as usize;
    let mut in_all = vec![vec![true; width]; width];
    let mut h = vec![b + 1; width];
    loop {
        let member = |e: &Exps, h: &[u32]| -> bool {
            // x^{e0} y^{e1} ∈ K; exponents beyond the box are saturated at the box edge
            let i = e[0].min(b) as usize;
            e[1] >= h[i]
        };
        let contains_j = j.iter().all(|a| {
            let w = vec![a[0] / q, a[1] / q];
            member(&w, &h)
        });
        if contains_j {
            for (i, row) in in_all.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    if !member(&vec![i as u32, k as u32], &h) {
                        *cell = false;
                    }
                }
            }
        }
        // next nonincreasing sequence with values in [0, b+1]
        let mut idx = width;
        loop {
            if idx == 0 {
                let mut out = Vec::new();
                for i in 0..width {
                    for k in 0..width {
                        if in_all[i][k] {
                            out.push(vec![i as u32, k as u32]);
                        }
                    }
                }
                return out;
            }
            idx -= 1;
            if h[idx] > 0 {
                h[idx] -= 1;
                let v = h[idx];
                for slot in h.iter_mut().skip(idx + 1) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

type Q = Ratio<i64>;

/// `x^u ∈ τ(a^t)` for a monomial ideal `a` in two variables: `u + (1,1)` lies in
/// the interior of `t·Newt(a)`, i.e. some point of `t·conv(gens)` is strictly
/// below it in both coordinates. In the plane the lower boundary of the hull is
/// made of segments, so pairs of generators suffice.
pub fn newton_member(u: &[u32], gens: &[Exps], t: Q) -> bool {
    let v = [Q::from_integer(u[0] as i64 + 1), Q::from_integer(u[1] as i64 + 1)];
    for g1 in gens {
        for g2 in gens {
            // λ ∈ [0,1] with t(λ g1 + (1−λ) g2)_i < v_i for i = 0, 1
            let mut lo = Q::from_integer(0);
            let mut hi = Q::from_integer(1);
            let mut lo_open = false;
            let mut hi_open = false;
            let mut feasible = true;
            for i in 0..2 {
                let a = t * Q::from_integer(g1[i] as i64 - g2[i] as i64);
                let b = v[i] - t * Q::from_integer(g2[i] as i64);
                // a·λ < b
                if a == Q::from_integer(0) {
                    if b <= Q::from_integer(0) {
                        feasible = false;
                    }
                } else if a > Q::from_integer(0) {
                    let bound = b / a;
                    if bound < hi || (bound == hi && !hi_open) {
                        hi = bound;
                        hi_open = true;
                    }
                } else {
                    let bound = b / a;
                    if bound > lo || (bound == lo && !lo_open) {
                        lo = bound;
                        lo_open = true;
                    }
                }
            }
            if feasible && (lo < hi || (lo == hi && !lo_open && !hi_open)) {
                return true;
            }
        }
    }
    false
}

/// Monomials of `τ(a^t)` in the box `[0, b]^2` by the Newton polygon rule.
pub fn newton_test_ideal_box(gens: &[Exps], t: Q, b: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    for i in 0..=b {
        for k in 0..=b {
            if newton_member(&[i, k], gens, t) {
                out.push(vec![i, k]);
            }
        }
    }
    out
}

/// Coefficient of `(xyz)^{p−1}` in `(x^3 + y^3 + z^3)^{p−1}` mod p: the
/// multinomial `(p−1)! / (a!)^3` with `a = (p−1)/3`, or zero when 3 ∤ p−1.
pub fn fermat_cubic_coefficient(p: u64) -> u64 {
    if !(p - 1).is_multiple_of(3) {
        return 0;
    }
    let a = (p - 1) / 3;
    let fact = |n: u64| (1..=n).fold(1u64, |acc, k| acc * k % p);
    let denom = fact(a) * fact(a) % p * fact(a) % p;
    fact(p - 1) * inv_mod(denom, p) % p
}

/// Expansion of `f^k` on the sparse representation.
pub fn sparse_pow(f: &Sparse, k: u32, p: u64) -> Sparse {
    let mut acc: Sparse = BTreeMap::new();
    acc.insert(vec![0; f.keys().next().map_or(0, |e| e.len())], 1);
    for _ in 0..k {
        let mut next: Sparse = BTreeMap::new();
        for (ea, &ca) in &acc {
            for (eb, &cb) in f {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = next.entry(e).or_insert(0);
                *entry = (*entry + ca * cb) % p;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}
