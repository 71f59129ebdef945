use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = u16::MAX as u32;
/// Largest total degree a monomial may carry.
pub const MAX_DEGREE: u64 = 1 << 31;

type Exps = SmallVec<[u16; 20]>;

/// Exponent vector over the ambient variables.
///
/// The total degree and a support bitmask are cached; the mask lets
/// divisibility tests reject most candidates without touching the vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
    mask: u64,
}

#[inline]
fn support_mask(exps: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            m |= 1u64 << (i & 63);
        }
    }
    m
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
            mask: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m.mask = support_mask(&m.exps);
        m
    }

    pub fn from_exponents<E: Copy + Into<u64>>(exps: &[E]) -> Result<Self> {
        let mut out = Exps::with_capacity(exps.len());
        let mut deg = 0u64;
        for &e in exps {
            let e: u64 = e.into();
            if e > MAX_EXPONENT as u64 {
                return Err(AlgebraError::Overflow(format!("exponent {e} exceeds {MAX_EXPONENT}")));
            }
            deg += e;
            out.push(e as u16);
        }
        if deg > MAX_DEGREE {
            return Err(AlgebraError::Overflow(format!("total degree {deg}")));
        }
        let mask = support_mask(&out);
        Ok(Monomial {
            exps: out,
            deg: deg as u32,
            mask,
        })
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Exps::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            let s = a as u32 + b as u32;
            if s > MAX_EXPONENT {
                return Err(AlgebraError::Overflow(format!("exponent {s} exceeds {MAX_EXPONENT}")));
            }
            exps.push(s as u16);
        }
        Ok(Monomial {
            exps,
            deg: self.deg + other.deg,
            mask: self.mask | other.mask,
        })
    }

    /// Product; panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("monomial exponent overflow")
    }

    pub fn try_pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for &a in &self.exps {
            let e = a as u64 * k;
            if e > MAX_EXPONENT as u64 {
                return Err(AlgebraError::Overflow(format!("exponent {e} exceeds {MAX_EXPONENT}")));
            }
            exps.push(e as u16);
        }
        let deg = self.deg as u64 * k;
        if deg > MAX_DEGREE {
            return Err(AlgebraError::Overflow(format!("total degree {deg}")));
        }
        Ok(Monomial {
            exps,
            deg: deg as u32,
            mask: if k == 0 { 0 } else { self.mask },
        })
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        let mask = support_mask(&exps);
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
            mask,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps,
            deg,
            mask: self.mask | other.mask,
        }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        if self.nvars() <= 64 {
            return self.mask & other.mask == 0;
        }
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Splits every exponent as `e = q*quot + rem` with `rem < q`.
    pub fn split_by(&self, q: u32) -> (Monomial, Monomial) {
        let quot: Exps = self.exps.iter().map(|&e| (e as u32 / q) as u16).collect();
        let rem: Exps = self.exps.iter().map(|&e| (e as u32 % q) as u16).collect();
        let dq = quot.iter().map(|&e| e as u32).sum();
        let dr = rem.iter().map(|&e| e as u32).sum();
        let (mq, mr) = (support_mask(&quot), support_mask(&rem));
        (
            Monomial {
                exps: quot,
                deg: dq,
                mask: mq,
            },
            Monomial {
                exps: rem,
                deg: dr,
                mask: mr,
            },
        )
    }

    /// Whether every exponent is strictly below `q`.
    pub fn all_below(&self, q: u32) -> bool {
        self.exps.iter().all(|&e| (e as u32) < q)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Reindexes into a ring with `nvars` variables; `map[i]` is the new index of
    /// variable `i`. Variables with exponent zero may share a target.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps = Exps::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                exps[map[i]] = e;
            }
        }
        let mask = support_mask(&exps);
        Monomial {
            exps,
            deg: self.deg,
            mask,
        }
    }

    pub(crate) fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = e;
        let deg = exps.iter().map(|&e| e as u32).sum();
        let mask = support_mask(&exps);
        Monomial { exps, deg, mask }
    }
}

/// Structural (lexicographic on raw exponent vectors) order; used only for
/// deterministic map keys, never as a term order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
