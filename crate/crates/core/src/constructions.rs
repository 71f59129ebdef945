//! Ring presentations and the ideal families used in experiments:
//! generic determinantal ideals, row/column restricted minors, doubled rings.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::ideal_sum;
use crate::poly::{same_ring, PolyRing, Polynomial, PrimeField, TermOrder};

/// Hypotheses about a presentation that are asserted rather than computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFlags {
    #[serde(default)]
    pub asserted_domain: bool,
    #[serde(default)]
    pub asserted_sfr: bool,
}

/// `S / I` for a polynomial ring `S`; quotient elements are handled by lifts to `S`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    defining: Ideal,
    pub flags: PresentationFlags,
}

/// JSON form: `{p, variables, defining: [texts], flags}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingRecord {
    pub p: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub defining: Vec<String>,
    #[serde(default)]
    pub flags: PresentationFlags,
}

impl RingPresentation {
    pub fn new(defining: Ideal, flags: PresentationFlags) -> Result<Self> {
        if defining.is_unit()? {
            return Err(AlgebraError::precondition("defining ideal is the unit ideal"));
        }
        Ok(RingPresentation {
            ring: defining.ring().clone(),
            defining,
            flags,
        })
    }

    /// The polynomial ring itself, which is a strongly F-regular domain.
    pub fn polynomial(ring: &Arc<PolyRing>) -> Self {
        RingPresentation {
            ring: ring.clone(),
            defining: Ideal::zero(ring),
            flags: PresentationFlags {
                asserted_domain: true,
                asserted_sfr: true,
            },
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_zero()
    }

    pub fn from_record(record: &RingRecord) -> Result<Self> {
        let ring = PolyRing::new(record.p, &record.variables)?;
        let defining = Ideal::parse(&ring, &record.defining)?;
        Self::new(defining, record.flags)
    }

    pub fn to_record(&self) -> RingRecord {
        RingRecord {
            p: self.ring.characteristic() as u64,
            variables: self.ring.variables().to_vec(),
            defining: self.defining.generators().iter().map(|g| g.to_string()).collect(),
            flags: self.flags,
        }
    }
}

/// An `m × n` grid of distinct variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOfVariables {
    m: usize,
    n: usize,
    entries: Vec<usize>,
}

impl MatrixOfVariables {
    /// `entries` in row-major order.
    pub fn new(ring: &PolyRing, m: usize, n: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != m * n || m == 0 || n == 0 {
            return Err(AlgebraError::precondition(format!("{m}x{n} matrix needs {} entries", m * n)));
        }
        let mut seen = vec![false; ring.nvars()];
        for &v in &entries {
            if v >= ring.nvars() || seen[v] {
                return Err(AlgebraError::precondition(format!("matrix entry {v} repeated or out of range")));
            }
            seen[v] = true;
        }
        Ok(MatrixOfVariables { m, n, entries })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    /// Variable index at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j]
    }
}

/// `F_p[x1_1, ..., xm_n]` in grevlex, row-major.
pub fn generic_matrix(m: usize, n: usize, p: u64) -> Result<(Arc<PolyRing>, MatrixOfVariables)> {
    if m == 0 || n == 0 {
        return Err(AlgebraError::precondition("matrix dimensions must be positive"));
    }
    let names: Vec<String> = (1..=m)
        .flat_map(|i| (1..=n).map(move |j| format!("x{i}_{j}")))
        .collect();
    let ring = PolyRing::with_field(PrimeField::new(p)?, &names, TermOrder::grevlex(m * n))?;
    let x = MatrixOfVariables::new(&ring, m, n, (0..m * n).collect())?;
    Ok((ring, x))
}

/// Determinant of the submatrix on the given 0-based rows and columns.
pub fn minor(ring: &Arc<PolyRing>, x: &MatrixOfVariables, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    assert!(cols.len() <= 64);
    let mut memo = FxHashMap::default();
    let all = if cols.len() == 64 { u64::MAX } else { (1u64 << cols.len()) - 1 };
    laplace(ring, x, rows, cols, all, &mut memo)
}

/// Expansion along the first unused row; `avail` marks the columns left.
fn laplace(
    ring: &Arc<PolyRing>,
    x: &MatrixOfVariables,
    rows: &[usize],
    cols: &[usize],
    avail: u64,
    memo: &mut FxHashMap<u64, Polynomial>,
) -> Polynomial {
    let k = rows.len() - avail.count_ones() as usize;
    if k == rows.len() {
        return Polynomial::one(ring);
    }
    if let Some(p) = memo.get(&avail) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(ring);
    let mut sign_neg = false;
    for (c, &col) in cols.iter().enumerate() {
        if avail & (1 << c) == 0 {
            continue;
        }
        let sub = laplace(ring, x, rows, cols, avail & !(1 << c), memo);
        let term = &Polynomial::var(ring, x.entry(rows[k], col)) * &sub;
        acc = if sign_neg { &acc - &term } else { &acc + &term };
        sign_neg = !sign_neg;
    }
    memo.insert(avail, acc.clone());
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `t × t` minors of the matrix, as generators taken over sorted index tuples.
/// Restricting to the first `u` rows or first `v` columns; `t` beyond the
/// submatrix size gives no minors.
pub fn minors(
    ring: &Arc<PolyRing>,
    x: &MatrixOfVariables,
    t: usize,
    row_limit: Option<usize>,
    col_limit: Option<usize>,
) -> Result<Vec<Polynomial>> {
    if t == 0 {
        return Err(AlgebraError::precondition("minor size must be at least 1"));
    }
    let u = row_limit.unwrap_or(x.rows());
    let v = col_limit.unwrap_or(x.cols());
    if u > x.rows() || v > x.cols() {
        return Err(AlgebraError::precondition(format!(
            "limits {u}x{v} exceed the {}x{} matrix",
            x.rows(),
            x.cols()
        )));
    }
    if t > u.min(v) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for rows in combinations(u, t) {
        for cols in combinations(v, t) {
            out.push(minor(ring, x, &rows, &cols));
        }
    }
    Ok(out)
}

pub fn minors_ideal(
    ring: &Arc<PolyRing>,
    x: &MatrixOfVariables,
    t: usize,
    row_limit: Option<usize>,
    col_limit: Option<usize>,
) -> Result<Ideal> {
    Ideal::new(ring, minors(ring, x, t, row_limit, col_limit)?)
}

fn strictly_increasing(seq: impl Iterator<Item = usize>) -> bool {
    let v: Vec<usize> = seq.collect();
    v.windows(2).all(|w| w[0] < w[1])
}

/// Sum of the size `r_i` minors of the first `u_i` rows and the size `s_j`
/// minors of the first `v_j` columns.
pub fn thm51_ideal(
    ring: &Arc<PolyRing>,
    x: &MatrixOfVariables,
    rows: &[(usize, usize)],
    cols: &[(usize, usize)],
) -> Result<Ideal> {
    let (m, n) = (x.rows(), x.cols());
    let ok_rows = strictly_increasing(rows.iter().map(|r| r.0))
        && strictly_increasing(rows.iter().map(|r| r.1))
        && rows.iter().all(|&(u, r)| (1..=m).contains(&u) && (1..=m).contains(&r));
    let ok_cols = strictly_increasing(cols.iter().map(|c| c.0))
        && strictly_increasing(cols.iter().map(|c| c.1))
        && cols.iter().all(|&(v, s)| (1..=n).contains(&v) && (1..=n).contains(&s));
    if !ok_rows || !ok_cols || rows.len() > m || cols.len() > n {
        return Err(AlgebraError::precondition(
            "row and column limits and minor sizes must be strictly increasing and within the matrix",
        ));
    }
    let mut gens = Vec::new();
    for &(u, r) in rows {
        gens.extend(minors(ring, x, r, Some(u), None)?);
    }
    for &(v, s) in cols {
        gens.extend(minors(ring, x, s, None, Some(v))?);
    }
    Ideal::new(ring, gens)
}

/// `k[X]/I_t` for a generic `m × n` matrix; certified strongly F-regular.
pub fn determinantal_presentation(m: usize, n: usize, t: usize, p: u64) -> Result<(RingPresentation, MatrixOfVariables)> {
    let (ring, x) = generic_matrix(m, n, p)?;
    let i = minors_ideal(&ring, &x, t, None, None)?;
    let flags = PresentationFlags {
        asserted_domain: true,
        asserted_sfr: true,
    };
    Ok((RingPresentation::new(i, flags)?, x))
}

/// `F_p[a, b, c, d]/(ad − bc)`.
pub fn segre_2x2(p: u64) -> Result<RingPresentation> {
    let ring = PolyRing::new(p, &["a", "b", "c", "d"])?;
    let i = Ideal::parse(&ring, &["a*d - b*c"])?;
    RingPresentation::new(
        i,
        PresentationFlags {
            asserted_domain: true,
            asserted_sfr: true,
        },
    )
}

/// Suffix for the second copy of the variables that creates no clashes.
fn copy_suffix(ring: &PolyRing) -> String {
    let mut suffix = String::from("_y");
    while ring
        .variables()
        .iter()
        .any(|v| ring.var_index(&format!("{v}{suffix}")).is_some())
    {
        suffix.push('y');
    }
    suffix
}

/// The doubled presentation `S ⊗ S / (I(x) + I(y))` and the diagonal ideal
/// `I(x) + I(y) + (x_i − y_i)`. The first copy keeps the original names.
pub fn doubled_ring(r: &RingPresentation) -> Result<(RingPresentation, Ideal)> {
    let ring = r.ring();
    let n = ring.nvars();
    let suffix = copy_suffix(ring);
    let mut names: Vec<String> = ring.variables().to_vec();
    names.extend(ring.variables().iter().map(|v| format!("{v}{suffix}")));
    let doubled = PolyRing::with_field(*ring.field(), &names, TermOrder::grevlex(2 * n))?;
    let first: Vec<usize> = (0..n).collect();
    let second: Vec<usize> = (n..2 * n).collect();
    let mut gens = Vec::new();
    for g in r.defining().generators() {
        gens.push(g.remap(&doubled, &first));
    }
    for g in r.defining().generators() {
        gens.push(g.remap(&doubled, &second));
    }
    let defining = Ideal::new(&doubled, gens)?;
    let linear = (0..n)
        .map(|i| &Polynomial::var(&doubled, i) - &Polynomial::var(&doubled, n + i))
        .collect();
    let diagonal = ideal_sum(&defining, &Ideal::new(&doubled, linear)?)?;
    Ok((RingPresentation::new(defining, PresentationFlags::default())?, diagonal))
}

/// Whether two presentations describe the same ring and ideal.
pub fn same_presentation(a: &RingPresentation, b: &RingPresentation) -> Result<bool> {
    if !same_ring(a.ring(), b.ring()) {
        return Ok(false);
    }
    a.defining().equals(b.defining())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_matrices() {
        let (r, _) = generic_matrix(1, 1, 5).unwrap();
        assert_eq!(r.variables(), ["x1_1"]);
        let (r, x) = generic_matrix(2, 2, 5).unwrap();
        assert_eq!(r.variables(), ["x1_1", "x1_2", "x2_1", "x2_2"]);
        assert_eq!(x.entry(1, 0), 2);
        let (r, x) = generic_matrix(3, 3, 5).unwrap();
        let m = minor(&r, &x, &[0, 1], &[0, 1]);
        assert_eq!(m, r.parse("x1_1*x2_2 - x1_2*x2_1").unwrap());
    }

    #[test]
    fn determinant_by_laplace() {
        let (r, x) = generic_matrix(3, 3, 7).unwrap();
        let det = minor(&r, &x, &[0, 1, 2], &[0, 1, 2]);
        assert_eq!(det.len(), 6);
        let expected = r
            .parse(
                "x1_1*x2_2*x3_3 - x1_1*x2_3*x3_2 - x1_2*x2_1*x3_3 \
                 + x1_2*x2_3*x3_1 + x1_3*x2_1*x3_2 - x1_3*x2_2*x3_1",
            )
            .unwrap();
        assert_eq!(det, expected);
        // swapping two selected rows negates
        assert_eq!(minor(&r, &x, &[1, 0], &[0, 2]), -&minor(&r, &x, &[0, 1], &[0, 2]));
    }

    #[test]
    fn minor_counts() {
        let (r, x) = generic_matrix(2, 3, 5).unwrap();
        assert_eq!(minors(&r, &x, 2, None, None).unwrap().len(), 3);
        assert!(minors_ideal(&r, &x, 3, None, None).unwrap().is_zero());
        assert_eq!(minors(&r, &x, 1, Some(1), None).unwrap().len(), 3);
        let (r, x) = generic_matrix(2, 2, 5).unwrap();
        assert_eq!(minors(&r, &x, 2, None, None).unwrap().len(), 1);
    }

    #[test]
    fn thm51_family() {
        let (r, x) = generic_matrix(3, 3, 5).unwrap();
        let gen = thm51_ideal(&r, &x, &[(3, 2)], &[]).unwrap();
        assert!(gen.equals(&minors_ideal(&r, &x, 2, None, None).unwrap()).unwrap());
        let i = thm51_ideal(&r, &x, &[(2, 2), (3, 3)], &[]).unwrap();
        assert_eq!(i.generators().len(), 4);
        assert!(thm51_ideal(&r, &x, &[(2, 2), (2, 3)], &[]).is_err());
        assert!(thm51_ideal(&r, &x, &[(2, 3), (3, 2)], &[]).is_err());
        let (r, x) = generic_matrix(2, 3, 5).unwrap();
        let row = thm51_ideal(&r, &x, &[(1, 1)], &[]).unwrap();
        assert!(row.equals(&Ideal::parse(&r, &["x1_1", "x1_2", "x1_3"]).unwrap()).unwrap());
    }

    #[test]
    fn doubling() {
        let r = PolyRing::new(3, &["x"]).unwrap();
        let (d, diag) = doubled_ring(&RingPresentation::polynomial(&r)).unwrap();
        assert_eq!(d.ring().variables(), ["x", "x_y"]);
        assert!(d.is_polynomial_ring());
        assert!(diag.equals(&Ideal::parse(d.ring(), &["x - x_y"]).unwrap()).unwrap());

        let pres = RingPresentation::new(Ideal::parse(&r, &["x^2"]).unwrap(), Default::default()).unwrap();
        let (d, diag) = doubled_ring(&pres).unwrap();
        assert_eq!(d.defining().generators().len(), 2);
        assert!(diag.equals(&Ideal::parse(d.ring(), &["x^2", "x_y^2", "x - x_y"]).unwrap()).unwrap());

        let s = segre_2x2(2).unwrap();
        let (d, diag) = doubled_ring(&s).unwrap();
        assert_eq!(d.ring().nvars(), 8);
        assert_eq!(d.defining().generators().len(), 2);
        assert_eq!(diag.generators().len(), 6);
    }

    #[test]
    fn suffix_avoids_clashes() {
        let r = PolyRing::new(3, &["x", "x_y"]).unwrap();
        let (d, _) = doubled_ring(&RingPresentation::polynomial(&r)).unwrap();
        assert_eq!(d.ring().variables(), ["x", "x_y", "x_yy", "x_y_yy"]);
    }

    #[test]
    fn records_round_trip() {
        let s = segre_2x2(2).unwrap();
        let json = serde_json::to_string(&s.to_record()).unwrap();
        let back = RingPresentation::from_record(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(same_presentation(&s, &back).unwrap());
        assert!(back.flags.asserted_domain);
        let bare: RingRecord = serde_json::from_str(r#"{"p": 5, "variables": ["x"]}"#).unwrap();
        assert!(RingPresentation::from_record(&bare).unwrap().is_polynomial_ring());
    }
}
