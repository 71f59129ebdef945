//! One verifier per experiment kind.

use std::path::Path;
use std::sync::Arc;

use fsplit_core::constructions::{doubled_ring, minor, minors_ideal, MatrixOfVariables, RingPresentation};
use fsplit_core::frobenius::{
    diag_fsplit_check, fedder_colon, fedder_fsplit, frobenius_q, outside_frobenius_maximal, root_of_power,
    strong_freg_probe, CertificateKind, CertificateRecord, SfrVerdict, SplittingCertificate, DEFAULT_DIAG_E_MAX,
    DEFAULT_PROBE_E_MAX, DEFAULT_TEST_IDEAL_E_MAX,
};
use fsplit_core::ideal_ops::{bracket_power, ideal_power, ideal_sum, interreduce};
use fsplit_core::rational::{ceil, floor, format_rational, is_positive, Rational};
use fsplit_core::symbolic::{
    dep_determinantal_symbolic, dep_is_exact, smallest_symbolic_exponent, symbolic_power_saturation, Exactness, PrimeSpec,
    SmallestC,
};
use fsplit_core::{AlgebraError, Ideal, PolyRing};
use serde_json::json;

use crate::bounds::{decide, decide_rigorous, decide_stable, tau_side, Side};
use crate::config::{
    load_ring, DiagonalMode, DiagonalSource, Engine, ExperimentSpec, Kind, LoadedRing, PrimeSource, SideSpec,
};
use crate::report::{Check, ExperimentReport, Verdict, Witness};

/// Powers up to this size are computed by both engines when DEP applies.
pub const CROSS_CHECK_MAX: u32 = 3;

pub enum Stop {
    Refuse(String),
    Error(String),
}

impl From<AlgebraError> for Stop {
    fn from(e: AlgebraError) -> Self {
        Stop::Error(e.to_string())
    }
}

type Out<T> = std::result::Result<T, Stop>;

fn refuse<T>(msg: impl Into<String>) -> Out<T> {
    Err(Stop::Refuse(msg.into()))
}

fn q(r: Rational) -> String {
    format_rational(&r)
}

struct Prime {
    spec: PrimeSpec,
    dep: Option<(MatrixOfVariables, usize)>,
    engine: Engine,
}

impl Prime {
    fn ring(&self) -> &Arc<PolyRing> {
        self.spec.ring()
    }

    fn uses_dep(&self) -> bool {
        self.dep.is_some() && self.engine != Engine::Saturation
    }

    /// Whether every symbolic power comes out exact.
    fn trusted(&self) -> bool {
        self.uses_dep() || self.spec.witness_exactness().is_trusted()
    }

    fn note_engine(&self, report: &mut ExperimentReport) {
        if self.uses_dep() {
            let (x, t) = self.dep.as_ref().expect("dep");
            report.assume(format!(
                "symbolic powers of I_{t} in a generic {}x{} matrix are generated by products of minors (characteristic exceeds min(t, m - t, n - t))",
                x.rows(),
                x.cols()
            ));
        } else if let Exactness::Asserted(why) = self.spec.witness_exactness() {
            report.assume(format!("saturation witness lies in every embedded prime of p^n: {why}"));
        }
        report.fact(
            "engine",
            if self.uses_dep() {
                "dep".to_string()
            } else {
                format!("saturation ({})", exactness_label(self.spec.witness_exactness()))
            },
        );
    }

    /// `p^{(n)}` as an ideal of the ambient polynomial ring.
    fn symbolic(&self, n: u32) -> Out<Side> {
        if self.uses_dep() {
            let (x, t) = self.dep.as_ref().expect("dep");
            let dep = dep_determinantal_symbolic(self.ring(), x, *t, n)?.to_ideal()?;
            if self.engine == Engine::Auto && n <= CROSS_CHECK_MAX {
                let sat = symbolic_power_saturation(&self.spec, n)?;
                if sat.exactness.is_trusted() && !sat.ideal.equals(&dep)? {
                    return Err(Stop::Error(format!("engines disagree on the symbolic power {n}")));
                }
            }
            return Ok(Side::exact(dep));
        }
        let s = symbolic_power_saturation(&self.spec, n)?;
        Ok(if s.exactness.is_trusted() {
            Side::exact(s.ideal)
        } else {
            Side::lower_only(s.ideal)
        })
    }

    fn ordinary(&self, n: u32) -> Out<Ideal> {
        Ok(self.spec.ordinary_power(n)?)
    }

    /// `p^(c) ⊆ p^n`, for trusted engines only.
    fn symbolic_inside(&self, c: u32, ordinary: &Ideal, n: u32) -> fsplit_core::Result<bool> {
        if self.uses_dep() {
            let (x, t) = self.dep.as_ref().expect("dep");
            let dep = dep_determinantal_symbolic(self.ring(), x, *t, c)?;
            return Ok(dep.first_outside_power(ordinary, n)?.is_none());
        }
        ordinary.contains_ideal(&symbolic_power_saturation(&self.spec, c)?.ideal)
    }
}

fn exactness_label(e: &Exactness) -> String {
    match e {
        Exactness::Exact => "exact".into(),
        Exactness::CrossValidated => "cross-validated".into(),
        Exactness::Asserted(_) => "asserted exact".into(),
        Exactness::Unvalidated => "unvalidated".into(),
    }
}

fn load_prime(ring: &LoadedRing, spec: &ExperimentSpec) -> Out<Prime> {
    let pres = &ring.presentation;
    let Some(source) = &spec.prime else {
        return refuse("this kind needs a `prime`");
    };
    match source {
        PrimeSource::Minors { minors } => {
            let t = *minors;
            let Some(x) = &ring.matrix else {
                return refuse("`minors` primes need a ring built from a generic matrix");
            };
            let r = pres.ring();
            let lift = minors_ideal(r, x, t, None, None)?;
            let witness = (t >= 2).then(|| {
                let idx: Vec<usize> = (0..t - 1).collect();
                minor(r, x, &idx, &idx)
            });
            let mut p = PrimeSpec::new(pres.clone(), lift, witness)?;
            if t >= 2 {
                p = p.assert_witness_exact(format!(
                    "associated primes of powers of I_{t} are row and column invariant, hence among I_1, ..., I_{t}, and the witness is a {}-minor",
                    t - 1
                ));
            }
            let dep_ok = pres.is_polynomial_ring() && dep_is_exact(r.characteristic(), x.rows(), x.cols(), t);
            if spec.engine == Engine::Dep && !dep_ok {
                return refuse("the product-of-minors engine does not apply to this prime");
            }
            Ok(Prime {
                spec: p,
                dep: dep_ok.then(|| (x.clone(), t)),
                engine: spec.engine,
            })
        }
        PrimeSource::Lift {
            lift,
            witness,
            assert_exact,
        } => {
            if spec.engine == Engine::Dep {
                return refuse("the product-of-minors engine needs a `minors` prime");
            }
            let r = pres.ring();
            let lift = Ideal::parse(r, lift)?;
            let witness = witness.as_deref().map(|w| r.parse(w)).transpose()?;
            let mut p = PrimeSpec::new(pres.clone(), lift, witness)?;
            if let Some(why) = assert_exact {
                p = p.assert_witness_exact(why.clone());
            }
            Ok(Prime {
                spec: p,
                dep: None,
                engine: spec.engine,
            })
        }
    }
}

fn parse_ideal(ring: &LoadedRing, spec: &ExperimentSpec) -> Out<Ideal> {
    let Some(gens) = &spec.ideal else {
        return refuse("this kind needs an `ideal`");
    };
    let i = Ideal::parse(ring.presentation.ring(), gens)?;
    if i.is_zero() {
        return refuse("the ideal must be nonzero");
    }
    Ok(i)
}

fn require_polynomial(ring: &LoadedRing) -> Out<()> {
    if !ring.presentation.is_polynomial_ring() {
        return refuse("test ideals are computed only in a polynomial ring");
    }
    Ok(())
}

fn e_max(spec: &ExperimentSpec) -> u32 {
    spec.e_max.unwrap_or(DEFAULT_TEST_IDEAL_E_MAX)
}

/// Strong F-regularity and diagonal F-splitting of the ring.
fn hypotheses(ring: &LoadedRing, spec: &ExperimentSpec, base: &Path, report: &mut ExperimentReport) -> Out<()> {
    let pres = &ring.presentation;
    if pres.is_polynomial_ring() {
        report.assume("polynomial rings are strongly F-regular and diagonally F-split");
        return Ok(());
    }
    if !pres.flags.asserted_sfr {
        return refuse("ring is not asserted strongly F-regular");
    }
    let source = spec.diagonal.clone().unwrap_or_default();
    match source {
        DiagonalSource::Mode(DiagonalMode::Auto) if ring.builder_family.is_some() => {
            report.assume(format!(
                "{} is strongly F-regular and diagonally F-split (builder family, not recomputed)",
                ring.builder_family.as_deref().unwrap_or_default()
            ));
            Ok(())
        }
        DiagonalSource::Mode(_) => {
            report.assume("ring is strongly F-regular (ring flag)");
            let (_, _, cert) = diag_fsplit_check(pres, DEFAULT_DIAG_E_MAX)?;
            match cert {
                Some(c) => {
                    report.fact("diagonal_certificate", c.to_record());
                    Ok(())
                }
                None => refuse(format!("no diagonal splitting found up to e = {DEFAULT_DIAG_E_MAX}")),
            }
        }
        DiagonalSource::Certificate { certificate } => {
            report.assume("ring is strongly F-regular (ring flag)");
            let path = base.join(&certificate);
            let text = std::fs::read_to_string(&path).map_err(|e| Stop::Error(format!("{}: {e}", path.display())))?;
            let record: CertificateRecord =
                serde_json::from_str(&text).map_err(|e| Stop::Error(format!("{}: {e}", path.display())))?;
            if record.kind != CertificateKind::Diagonal {
                return refuse("certificate file is not a diagonal certificate");
            }
            let (doubled, diagonal) = doubled_ring(pres)?;
            match SplittingCertificate::load(&record, doubled.defining(), Some(&diagonal)) {
                Ok(c) => {
                    report.fact("diagonal_certificate", c.to_record());
                    Ok(())
                }
                Err(e) => refuse(format!("diagonal certificate rejected: {e}")),
            }
        }
    }
}

fn record(report: &mut ExperimentReport, result: (Check, Vec<String>)) {
    let (check, assumptions) = result;
    for a in assumptions {
        report.assume(a);
    }
    report.push(check);
}

/// `lift_a · lift_b + I`.
fn quotient_product(pres: &RingPresentation, a: &Side, b: &Side) -> Out<Side> {
    let prod = a.product(b)?;
    Ok(if pres.is_polynomial_ring() {
        prod
    } else {
        prod.plus(pres.defining())?
    })
}

fn height(prime: &Prime, report: &mut ExperimentReport) -> Out<u32> {
    let h = prime.spec.height()? as u32;
    report.fact("height", h);
    if h == 0 {
        return refuse("the prime has height 0");
    }
    Ok(h)
}

fn thm_a(spec: &ExperimentSpec, ring: &LoadedRing, report: &mut ExperimentReport) -> Out<()> {
    require_polynomial(ring)?;
    let s = spec.required_rational("s").map_err(Stop::Refuse)?;
    let t = spec.required_rational("t").map_err(Stop::Refuse)?;
    let eps = spec.required_rational("eps").map_err(Stop::Refuse)?;
    if !is_positive(&s) || !is_positive(&t) {
        return refuse("s and t must be positive");
    }
    if !(s + t).is_integer() {
        return refuse("s + t must be an integer");
    }
    if !is_positive(&eps) || eps > s.min(t) {
        return refuse("eps must lie in (0, min(s, t)]");
    }
    let a = parse_ideal(ring, spec)?;
    report.assume("polynomial rings are strongly F-regular and diagonally F-split");
    let e = e_max(spec);
    let sum = (s + t).to_integer() as u32;
    let left = Side::exact(ideal_power(&a, sum)?);
    let (ts, fs) = tau_side(&a, 1, s - eps, e, &format!("τ(a^{})", q(s - eps)))?;
    let (tt, ft) = if s == t {
        (ts.clone(), fs.clone())
    } else {
        tau_side(&a, 1, t - eps, e, &format!("τ(a^{})", q(t - eps)))?
    };
    report.fact("tau_s", fs);
    report.fact("tau_t", ft);
    let right = ts.product(&tt)?;
    let claim = format!("a^{sum} ⊆ τ(a^{})·τ(a^{})", q(s - eps), q(t - eps));
    record(report, decide(&claim, &left, &right)?);
    Ok(())
}

fn thm_b(spec: &ExperimentSpec, ring: &LoadedRing, base: &Path, report: &mut ExperimentReport) -> Out<()> {
    let n_max = spec.n_max.unwrap_or(2);
    if n_max == 0 {
        return refuse("n_max must be at least 1");
    }
    let prime = load_prime(ring, spec)?;
    hypotheses(ring, spec, base, report)?;
    let h = height(&prime, report)?;
    prime.note_engine(report);
    report.fact("sample", format!("this prime only, n = 1..{n_max}"));
    let mut heights = vec![h];
    if let Some(hc) = spec.h_claimed.filter(|&hc| hc != h) {
        heights.push(hc);
        report.fact("claimed_height", hc);
    }
    for &hh in &heights {
        for n in 1..=n_max {
            let c = 2 * hh * n;
            let claim = if hh == h {
                format!("p^({c}) ⊆ p^{n}")
            } else {
                format!("p^({c}) ⊆ p^{n} (claimed height {hh})")
            };
            let ordinary = prime.ordinary(n)?;
            if prime.uses_dep() && c > CROSS_CHECK_MAX {
                // products of at least n minors lie in I_t^n without expansion
                let (x, t) = prime.dep.as_ref().expect("dep");
                let dep = dep_determinantal_symbolic(prime.ring(), x, *t, c)?;
                let outside = dep.first_outside_power(&ordinary, n)?;
                let check = match outside {
                    None => Check {
                        claim,
                        verdict: Verdict::Holds,
                        method: format!("{} products of minors, each in p^{n}", dep.product_count()),
                        witness: None,
                        note: None,
                    },
                    Some(g) => Check {
                        claim,
                        verdict: Verdict::Fails,
                        method: "product of minors outside the ordinary power".into(),
                        witness: Some(Witness {
                            element: g.to_string(),
                            normal_form: ordinary.reduce(&g)?.to_string(),
                        }),
                        note: None,
                    },
                };
                report.push(check);
                continue;
            }
            let left = prime.symbolic(c)?;
            record(report, decide(&claim, &left, &Side::exact(ordinary))?);
        }
    }
    if prime.trusted() {
        let mut rows = Vec::new();
        for n in 1..=n_max {
            let ordinary = prime.ordinary(n)?;
            let bound = 2 * h * n;
            let c = smallest_symbolic_exponent(n, bound, |c| prime.symbolic_inside(c, &ordinary, n))?;
            rows.push(SmallestC { n, c, bound });
        }
        report.fact("smallest_c", rows);
    }
    Ok(())
}

fn lemma22(spec: &ExperimentSpec, ring: &LoadedRing, report: &mut ExperimentReport) -> Out<()> {
    require_polynomial(ring)?;
    let Some(big_n) = spec.big_n.filter(|&n| n > 0) else {
        return refuse("N must be a positive integer");
    };
    let t = spec.required_rational("t").map_err(Stop::Refuse)?;
    if !is_positive(&t) {
        return refuse("t must be positive");
    }
    let prime = load_prime(ring, spec)?;
    let h = height(&prime, report)?;
    let nt = t * Rational::from_integer(big_n as i64);
    if nt < Rational::from_integer(h as i64 - 1) {
        return refuse(format!("N·t = {} is below h - 1 = {}", q(nt), h - 1));
    }
    if !prime.trusted() {
        return refuse("the right side needs exact symbolic powers and the saturation engine is unvalidated for this prime");
    }
    prime.note_engine(report);
    let k = (floor(&nt) - h as i64 + 1) as u32;
    report.fact("right_exponent", k);
    let right = prime.symbolic(k)?;
    let claim = format!("τ((p^({big_n}))^{}) ⊆ p^({k})", q(t));
    if k == 0 {
        report.push(Check {
            claim,
            verdict: Verdict::Holds,
            method: "right side is the unit ideal".into(),
            witness: None,
            note: None,
        });
        return Ok(());
    }

    let e = e_max(spec);
    let sym_n = prime.symbolic(big_n)?;
    let ordinary = prime.ordinary(big_n)?;
    let (left, fact) = if sym_n.is_exact() && ordinary.contains_ideal(&sym_n.lower)? {
        report.fact("symbolic_equals_ordinary", true);
        tau_side(prime.spec.lift(), big_n, t, e, "τ((p^N)^t)")?
    } else {
        let (side, fact) = tau_side(&sym_n.lower, 1, t, e, "τ((p^(N))^t)")?;
        if sym_n.is_exact() {
            (side, fact)
        } else {
            (Side::lower_only(side.lower), fact)
        }
    };
    report.fact("tau", fact);
    if let Some(check) = decide_rigorous(&claim, &left, &right)? {
        report.push(check);
        return Ok(());
    }
    // Localized at p, p^(N) is a power of a maximal ideal with h generators,
    // so Skoda gives τ ⊆ (p^{⌊Ntq⌋−h+1})^{[1/q]} there; containment of that
    // root in the p-primary right side is therefore enough.
    for level in 1..=e.min(2) {
        let qq = frobenius_q(prime.ring(), level)? as i64;
        let exp = floor(&(nt * Rational::from_integer(qq))) - h as i64 + 1;
        let bound = root_of_power(prime.spec.lift(), exp.max(0) as u64, level)?;
        if right.lower.contains_ideal(&bound)? {
            report.push(Check {
                claim,
                verdict: Verdict::Holds,
                method: format!("local Skoda bound (p^{exp})^[1/{qq}] inside the right side"),
                witness: None,
                note: None,
            });
            return Ok(());
        }
    }
    record(report, decide_stable(&claim, &left, &right)?);
    Ok(())
}

fn reduction_bound(a: &Ideal) -> u32 {
    let gens = interreduce(a.ring(), a.generators().to_vec()).len();
    gens.min(a.ring().nvars()) as u32
}

fn equality(report: &mut ExperimentReport, name_l: &str, name_r: &str, l: &Side, r: &Side) -> Out<()> {
    record(report, decide(&format!("{name_l} ⊆ {name_r}"), l, r)?);
    record(report, decide(&format!("{name_r} ⊆ {name_l}"), r, l)?);
    Ok(())
}

fn prop21(spec: &ExperimentSpec, ring: &LoadedRing, report: &mut ExperimentReport) -> Out<()> {
    require_polynomial(ring)?;
    let t = spec.required_rational("t").map_err(Stop::Refuse)?;
    if !is_positive(&t) {
        return refuse("t must be positive");
    }
    let n = spec.n.unwrap_or(1);
    let a = parse_ideal(ring, spec)?;
    let e = e_max(spec);
    let nr = Rational::from_integer(n as i64);

    let (l, fl) = tau_side(&a, n, t, e, "τ((a^n)^t)")?;
    let (r, fr) = tau_side(&a, 1, nr * t, e, "τ(a^{nt})")?;
    report.fact("tau_power", fl);
    report.fact("tau_scaled", fr);
    equality(report, &format!("τ((a^{n})^{})", q(t)), &format!("τ(a^{})", q(nr * t)), &l, &r)?;

    let red = reduction_bound(&a);
    report.fact("reduction_bound", red);
    if t >= Rational::from_integer(red as i64 - 1) {
        let (shifted, fs) = tau_side(&a, 1, t + nr, e, "τ(a^{t+n})")?;
        let (base_tau, fb) = tau_side(&a, 1, t, e, "τ(a^t)")?;
        report.fact("tau_shifted", fs);
        report.fact("tau_base", fb);
        let rhs = Side::exact(ideal_power(&a, n)?).product(&base_tau)?;
        equality(report, &format!("τ(a^{})", q(t + nr)), &format!("a^{n}·τ(a^{})", q(t)), &shifted, &rhs)?;
    } else {
        report.fact("shift_identity", format!("skipped: t < r - 1 with r = {red}"));
    }
    Ok(())
}

/// Records `ε = (x − ⌈x⌉ + 1)/2` and checks `x − ε > ⌈x⌉ − 1` exactly.
fn lemma44(x: Rational) -> serde_json::Value {
    let c = Rational::from_integer(ceil(&x));
    let eps = (x - c + Rational::from_integer(1)) / Rational::from_integer(2);
    json!({
        "x": q(x),
        "eps": q(eps),
        "strict": x - eps > c - Rational::from_integer(1) && is_positive(&eps),
    })
}

fn eq2(spec: &ExperimentSpec, ring: &LoadedRing, base: &Path, report: &mut ExperimentReport) -> Out<()> {
    let Some(big_n) = spec.big_n else {
        return refuse("missing parameter `N`");
    };
    let s = spec.required_rational("s").map_err(Stop::Refuse)?;
    let prime = load_prime(ring, spec)?;
    let h = height(&prime, report)?;
    let nr = Rational::from_integer(big_n as i64);
    if big_n <= 2 * h {
        return refuse(format!("N = {big_n} must exceed 2h = {}", 2 * h));
    }
    let lo = Rational::new(h as i64, big_n as i64);
    if s <= lo || s >= Rational::from_integer(1) - lo {
        return refuse(format!("s = {} must lie in ({}, {})", q(s), q(lo), q(Rational::from_integer(1) - lo)));
    }
    if !prime.trusted() {
        return refuse("this check needs exact symbolic powers");
    }
    hypotheses(ring, spec, base, report)?;
    prime.note_engine(report);
    let xs = nr * s;
    let xt = nr * (Rational::from_integer(1) - s);
    let a = (ceil(&xs) - h as i64) as u32;
    let b = (ceil(&xt) - h as i64) as u32;
    report.fact("exponents", [a, b]);
    report.fact("lemma44", [lemma44(xs), lemma44(xt)]);
    let left = prime.symbolic(big_n)?;
    let right = quotient_product(&ring.presentation, &prime.symbolic(a)?, &prime.symbolic(b)?)?;
    let claim = format!("p^({big_n}) ⊆ p^({a})·p^({b})");
    record(report, decide(&claim, &left, &right)?);
    Ok(())
}

fn remark46(spec: &ExperimentSpec, ring: &LoadedRing, base: &Path, report: &mut ExperimentReport) -> Out<()> {
    let Some(n) = spec.n.filter(|&n| n >= 2) else {
        return refuse("n must be at least 2");
    };
    let prime = load_prime(ring, spec)?;
    let h = height(&prime, report)?;
    if !prime.trusted() {
        return refuse("this check needs exact symbolic powers");
    }
    hypotheses(ring, spec, base, report)?;
    prime.note_engine(report);
    let big = h * n + 1;
    let small = h * (n - 2) + 1;
    let left = prime.symbolic(big)?;
    let right = quotient_product(&ring.presentation, &Side::exact(prime.spec.lift().clone()), &prime.symbolic(small)?)?;
    let claim = format!("p^({big}) ⊆ p·p^({small})");
    record(report, decide(&claim, &left, &right)?);
    Ok(())
}

fn fsplit_suite(spec: &ExperimentSpec, ring: &LoadedRing, report: &mut ExperimentReport) -> Out<()> {
    let pres = &ring.presentation;
    let i = pres.defining();
    let p = pres.ring().characteristic() as u64;
    let cert = fedder_fsplit(i)?;
    report.fact("fedder", json!({ "fsplit": cert.is_some(), "certificate": cert.as_ref().map(|c| c.to_record()) }));
    if let Some(expect) = spec.expect_fsplit {
        let check = match (expect, &cert) {
            (true, Some(_)) => Check {
                claim: "R is F-split".into(),
                verdict: Verdict::Holds,
                method: "Fedder element outside m^[p]".into(),
                witness: None,
                note: None,
            },
            (true, None) => Check {
                claim: "R is F-split".into(),
                verdict: Verdict::Fails,
                method: "Fedder criterion at e = 1".into(),
                witness: None,
                note: Some("every generator of (I^[p] : I) lies in m^[p]".into()),
            },
            (false, None) => Check {
                claim: "(I^[p] : I) ⊆ m^[p]".into(),
                verdict: Verdict::Holds,
                method: "Fedder criterion at e = 1".into(),
                witness: None,
                note: None,
            },
            (false, Some(c)) => {
                let m = bracket_power(&Ideal::maximal(pres.ring()), p)?;
                let colon = fedder_colon(i, p)?;
                let w = colon
                    .generators()
                    .iter()
                    .find(|g| outside_frobenius_maximal(g, p))
                    .unwrap_or(&c.u)
                    .clone();
                Check {
                    claim: "(I^[p] : I) ⊆ m^[p]".into(),
                    verdict: Verdict::Fails,
                    method: "Fedder criterion at e = 1".into(),
                    witness: Some(Witness {
                        element: w.to_string(),
                        normal_form: m.reduce(&w)?.to_string(),
                    }),
                    note: None,
                }
            }
        };
        report.push(check);
    }
    if let Some(c) = &spec.c {
        let c = pres.ring().parse(c)?;
        let e = spec.e_max.unwrap_or(DEFAULT_PROBE_E_MAX);
        let check = match strong_freg_probe(i, &c, e)? {
            SfrVerdict::Certified { e, u } => {
                report.assume(format!("R_c is regular for c = {c}"));
                report.fact("sfr_probe", json!({ "e": e, "u": u.to_string() }));
                Check {
                    claim: format!("R is strongly F-regular (probe with c = {c})"),
                    verdict: Verdict::Holds,
                    method: format!("c·u outside m^[p^{e}]"),
                    witness: None,
                    note: None,
                }
            }
            SfrVerdict::Undetermined { e_max } => Check {
                claim: format!("R is strongly F-regular (probe with c = {c})"),
                verdict: Verdict::Undetermined,
                method: "probe".into(),
                witness: None,
                note: Some(format!("no certificate up to e = {e_max}")),
            },
        };
        report.push(check);
    }
    if spec.diag_check.unwrap_or(false) {
        let (_, _, cert) = diag_fsplit_check(pres, DEFAULT_DIAG_E_MAX)?;
        let check = match cert {
            Some(c) => {
                report.fact("diagonal_certificate", c.to_record());
                Check {
                    claim: "R is diagonally F-split".into(),
                    verdict: Verdict::Holds,
                    method: "compatible Fedder element in the doubled ring".into(),
                    witness: None,
                    note: None,
                }
            }
            None => Check {
                claim: "R is diagonally F-split".into(),
                verdict: Verdict::Undetermined,
                method: "compatible Fedder search".into(),
                witness: None,
                note: Some(format!("no certificate up to e = {DEFAULT_DIAG_E_MAX}")),
            },
        };
        report.push(check);
    }
    if report.checks.is_empty() {
        return refuse("nothing to check: set expect_fsplit, c or diag_check");
    }
    Ok(())
}

fn claim_side(prime: &Prime, pres: &RingPresentation, s: &SideSpec) -> Out<(Side, String)> {
    Ok(match s {
        SideSpec::Symbolic(n) => (prime.symbolic(*n)?, format!("p^({n})")),
        SideSpec::Power(n) => (Side::exact(prime.ordinary(*n)?), format!("p^{n}")),
        SideSpec::Ideal(gens) => {
            let i = Ideal::parse(pres.ring(), gens)?;
            let i = if pres.is_polynomial_ring() { i } else { ideal_sum(&i, pres.defining())? };
            (Side::exact(i), format!("({})", gens.join(", ")))
        }
    })
}

fn claim(spec: &ExperimentSpec, ring: &LoadedRing, report: &mut ExperimentReport) -> Out<()> {
    let (Some(l), Some(r)) = (&spec.left, &spec.right) else {
        return refuse("a claim needs `left` and `right`");
    };
    let prime = load_prime(ring, spec)?;
    prime.note_engine(report);
    let (left, ln) = claim_side(&prime, &ring.presentation, l)?;
    let (right, rn) = claim_side(&prime, &ring.presentation, r)?;
    record(report, decide(&format!("{ln} ⊆ {rn}"), &left, &right)?);
    Ok(())
}

/// Runs one experiment; refusals and errors are recorded, never propagated.
pub fn run_experiment(spec: &ExperimentSpec, index: usize, base: &Path) -> ExperimentReport {
    let echo = serde_json::to_value(spec).unwrap_or_default();
    let mut report = ExperimentReport::new(spec.label(index), spec.kind.as_str(), echo);
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| -> Out<()> {
        let ring = load_ring(&spec.ring, base).map_err(Stop::Error)?;
        report.fact("characteristic", ring.presentation.ring().characteristic());
        match spec.kind {
            Kind::ThmA => thm_a(spec, &ring, &mut report),
            Kind::ThmB => thm_b(spec, &ring, base, &mut report),
            Kind::Lemma22 => lemma22(spec, &ring, &mut report),
            Kind::Prop21 => prop21(spec, &ring, &mut report),
            Kind::Eq2 => eq2(spec, &ring, base, &mut report),
            Kind::Remark46 => remark46(spec, &ring, base, &mut report),
            Kind::FsplitSuite => fsplit_suite(spec, &ring, &mut report),
            Kind::Claim => claim(spec, &ring, &mut report),
        }
    }));
    match outcome {
        Ok(Ok(())) => {}
        Ok(Err(Stop::Refuse(m))) => report.refuse(m),
        Ok(Err(Stop::Error(m))) => report.error(m),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            report.error(format!("panic: {msg}"));
        }
    }
    report
}
