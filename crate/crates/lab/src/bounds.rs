//! Two-sided bounds for ideals that are only partly computable, and the
//! containment decision built on them.
//!
//! A side `lower ⊆ X ⊆ upper` of a claimed containment `L ⊆ R` decides it
//! rigorously when `upper(L) ⊆ lower(R)` (holds) or when some generator of
//! `lower(L)` falls outside `upper(R)` (fails). Test ideals whose chain
//! stabilized without meeting its upper bound also carry their stable value;
//! a decision made from stable values lists that as an assumption.

use fsplit_core::frobenius::{test_ideal_bounds, test_ideal_of_power, TestIdealBounds, TestIdealVerdict};
use fsplit_core::ideal_ops::{ideal_product, ideal_sum};
use fsplit_core::rational::{format_rational, Rational};
use fsplit_core::{AlgebraError, Ideal, Result};
use serde::Serialize;

use crate::report::{Check, Verdict, Witness};

#[derive(Clone, Debug)]
pub struct Side {
    pub lower: Ideal,
    upper: Option<Ideal>,
    exact: bool,
    /// Stable chain value and the assumption that it is the true ideal.
    pub stable: Option<(Ideal, Vec<String>)>,
}

impl Side {
    pub fn exact(i: Ideal) -> Self {
        Side {
            lower: i,
            upper: None,
            exact: true,
            stable: None,
        }
    }

    pub fn lower_only(i: Ideal) -> Self {
        Side {
            lower: i,
            upper: None,
            exact: false,
            stable: None,
        }
    }

    pub fn between(lower: Ideal, upper: Ideal) -> Self {
        Side {
            lower,
            upper: Some(upper),
            exact: false,
            stable: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn upper(&self) -> Option<&Ideal> {
        if self.exact {
            Some(&self.lower)
        } else {
            self.upper.as_ref()
        }
    }

    /// The value used when rigorous bounds do not decide.
    fn effective(&self) -> Option<(&Ideal, &[String])> {
        match &self.stable {
            Some((i, why)) => Some((i, why)),
            None if self.exact => Some((&self.lower, &[])),
            None => None,
        }
    }

    pub fn product(&self, other: &Side) -> Result<Side> {
        let lower = ideal_product(&self.lower, &other.lower)?;
        if self.exact && other.exact {
            return Ok(Side::exact(lower));
        }
        let upper = match (self.upper(), other.upper()) {
            (Some(a), Some(b)) => Some(ideal_product(a, b)?),
            _ => None,
        };
        let stable = match (self.effective(), other.effective()) {
            (Some((a, wa)), Some((b, wb))) if self.stable.is_some() || other.stable.is_some() => {
                Some((ideal_product(a, b)?, wa.iter().chain(wb).cloned().collect()))
            }
            _ => None,
        };
        Ok(Side {
            lower,
            upper,
            exact: false,
            stable,
        })
    }

    /// Adds `i` to every bound.
    pub fn plus(&self, i: &Ideal) -> Result<Side> {
        let lower = ideal_sum(&self.lower, i)?;
        Ok(Side {
            upper: match (&self.upper, self.exact) {
                (Some(u), false) => Some(ideal_sum(u, i)?),
                _ => None,
            },
            exact: self.exact,
            stable: match &self.stable {
                Some((s, why)) => Some((ideal_sum(s, i)?, why.clone())),
                None => None,
            },
            lower,
        })
    }
}

/// Text form of an ideal: its reduced Groebner basis.
pub fn ideal_texts(i: &Ideal) -> Result<Vec<String>> {
    Ok(i.groebner_basis()?.iter().map(|g| g.to_string()).collect())
}

fn witness(left: &Ideal, right: &Ideal) -> Result<Option<Witness>> {
    let Some(g) = right.first_non_member(left)? else {
        return Ok(None);
    };
    let nf = right.reduce(&g)?;
    // re-verify before reporting
    if nf.is_zero() || !left.contains(&g)? {
        return Err(AlgebraError::Internal(format!("witness {g} does not re-verify")));
    }
    Ok(Some(Witness {
        element: g.to_string(),
        normal_form: nf.to_string(),
    }))
}

/// Decision from rigorous bounds only.
pub fn decide_rigorous(claim: &str, left: &Side, right: &Side) -> Result<Option<Check>> {
    let exact = left.exact && right.exact;
    if let Some(lu) = left.upper() {
        if right.lower.contains_ideal(lu)? {
            return Ok(Some(Check {
                claim: claim.to_string(),
                verdict: Verdict::Holds,
                method: if exact { "exact ideals" } else { "upper bound of the left side inside lower bound of the right side" }.into(),
                witness: None,
                note: None,
            }));
        }
    }
    if let Some(ru) = right.upper() {
        if let Some(w) = witness(&left.lower, ru)? {
            return Ok(Some(Check {
                claim: claim.to_string(),
                verdict: Verdict::Fails,
                method: if exact { "exact ideals" } else { "lower bound of the left side outside upper bound of the right side" }.into(),
                witness: Some(w),
                note: None,
            }));
        }
    }
    Ok(None)
}

/// Decision from stable values; returns the assumptions it consumed.
pub fn decide_stable(claim: &str, left: &Side, right: &Side) -> Result<(Check, Vec<String>)> {
    if let (Some((l, wl)), Some((r, wr))) = (left.effective(), right.effective()) {
        let assumptions: Vec<String> = wl.iter().chain(wr).cloned().collect();
        let w = witness(l, r)?;
        let check = Check {
            claim: claim.to_string(),
            verdict: if w.is_some() { Verdict::Fails } else { Verdict::Holds },
            method: "stable test ideal chain values".into(),
            witness: w,
            note: Some("relies on uncertified chain stabilization".into()),
        };
        return Ok((check, assumptions));
    }
    let note = if left.upper().is_none() {
        "no upper bound for the left side; its lower bound is partial evidence only"
    } else {
        "bounds do not decide the containment"
    };
    let partial = match left.upper() {
        None if right.lower.contains_ideal(&left.lower)? => format!("{note} (lower bound is contained)"),
        _ => note.to_string(),
    };
    Ok((
        Check {
            claim: claim.to_string(),
            verdict: Verdict::Undetermined,
            method: "bounds".into(),
            witness: None,
            note: Some(partial),
        },
        Vec::new(),
    ))
}

pub fn decide(claim: &str, left: &Side, right: &Side) -> Result<(Check, Vec<String>)> {
    match decide_rigorous(claim, left, right)? {
        Some(c) => Ok((c, Vec::new())),
        None => decide_stable(claim, left, right),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TauFact {
    pub t: String,
    pub generators: Vec<String>,
    pub status: String,
    pub e: u32,
}

/// `τ((b^n)^t)` as a side, with a summary for the report.
pub fn tau_side(b: &Ideal, n: u32, t: Rational, e_max: u32, what: &str) -> Result<(Side, TauFact)> {
    let text_t = format_rational(&t);
    match test_ideal_of_power(b, n, t, e_max)? {
        TestIdealVerdict::Determined(res) => {
            let fact = TauFact {
                t: text_t,
                generators: ideal_texts(&res.ideal)?,
                status: if res.certified { "certified" } else { "stabilized" }.into(),
                e: res.stabilized_at_e,
            };
            if res.certified {
                return Ok((Side::exact(res.ideal), fact));
            }
            let why = format!(
                "{what} is the stable chain value from e = {} (equal at consecutive levels, not certified)",
                res.stabilized_at_e
            );
            let mut side = Side::between(res.ideal.clone(), res.upper);
            side.stable = Some((res.ideal, vec![why]));
            Ok((side, fact))
        }
        TestIdealVerdict::Undetermined { e_max } => {
            let TestIdealBounds { lower, upper, .. } = test_ideal_bounds(b, n, t, e_max)?;
            let fact = TauFact {
                t: text_t,
                generators: ideal_texts(&lower)?,
                status: "undetermined (chain lower bound shown)".into(),
                e: e_max,
            };
            Ok((Side::between(lower, upper), fact))
        }
    }
}
