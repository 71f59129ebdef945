//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//! Runs without the libtest harness so the lines always reach the output.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{checks, oracles};
use fsplit_core::constructions::{generic_matrix, minor, minors_ideal, segre_2x2, RingPresentation};
use fsplit_core::frobenius::{diag_fsplit_check, fedder_fsplit, strong_freg_probe, SfrVerdict};
use fsplit_core::ideal_ops::{bracket_power, ideal_power};
use fsplit_core::symbolic::{dep_determinantal_symbolic, symbolic_power_saturation, PrimeSpec};
use fsplit_core::Ideal;
use fsplit_lab::config::Kind;
use fsplit_lab::report::{ExperimentReport, Status};
use fsplit_lab::verify::run_experiment;
use fsplit_lab::{load_config, ExperimentSpec, Verdict};

type Outcome = Result<String, String>;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const GB_SEED: u64 = 0xacce_0001;
const ROOT_SEED: u64 = 0xacce_0002;
const MONOMIAL_SEED: u64 = 0xacce_0003;

fn groebner_soundness() -> Outcome {
    checks::groebner_corpus(GB_SEED, 500)
}

fn root_adjunction() -> Outcome {
    checks::root_adjunction_corpus(ROOT_SEED, 200)
}

fn newton_agreement() -> Outcome {
    checks::newton_agreement(&checks::monomial_corpus(MONOMIAL_SEED, 50), &[3, 5, 7])
}

fn identity_suite() -> Outcome {
    checks::identity_suite(&checks::monomial_corpus(MONOMIAL_SEED, 50), &[3, 5, 7])
}

fn fedder_dichotomy() -> Outcome {
    let mut lines = Vec::new();
    for (p, expect) in [(7u64, true), (5, false)] {
        let r = common::ring(p, 3);
        let i = common::ideal(&r, &["x^3 + y^3 + z^3"]);
        let f = &i.generators()[0];
        let expanded = oracles::sparse_pow(&oracles::to_sparse(f), (p - 1) as u32, p);
        let coeff = expanded.get(&vec![(p - 1) as u32; 3]).copied().unwrap_or(0);
        ensure(coeff == oracles::fermat_cubic_coefficient(p), || {
            format!("p = {p}: expansion gives {coeff}, multinomial sum gives {}", oracles::fermat_cubic_coefficient(p))
        })?;
        let cert = fedder_fsplit(&i).map_err(err)?;
        ensure(cert.is_some() == expect && (coeff != 0) == expect, || {
            format!("p = {p}: Fedder says {}, coefficient is {coeff}", cert.is_some())
        })?;
        if let Some(c) = cert {
            ensure(c.validate(&i, None).map_err(err)?, || format!("p = {p}: certificate does not validate"))?;
        }
        lines.push(format!("F_{p}: split={expect}, coefficient {coeff}"));
    }
    Ok(lines.join("; "))
}

fn segre_diagonal() -> Outcome {
    let s = segre_2x2(2).map_err(err)?;
    let (d, diag, cert) = diag_fsplit_check(&s, 1).map_err(err)?;
    let cert = cert.ok_or("no diagonal certificate at e = 1")?;
    ensure(cert.validate(d.defining(), Some(&diag)).map_err(err)?, || "certificate does not validate".into())?;
    // independent re-check with bracket powers
    let m2 = bracket_power(&Ideal::maximal(d.ring()), 2).map_err(err)?;
    ensure(!m2.contains(&cert.u).map_err(err)?, || "u lies in m^[2]".into())?;
    for ideal in [d.defining(), &diag] {
        let bracket = bracket_power(ideal, 2).map_err(err)?;
        for g in ideal.generators() {
            ensure(bracket.contains(&(&cert.u * g)).map_err(err)?, || format!("u·({g}) not in the bracket power"))?;
        }
    }
    Ok(format!("certificate with {} terms re-validated", cert.u.terms().len()))
}

fn engine_agreement() -> Outcome {
    let mut compared = 0;
    for (m, n) in [(2, 3), (3, 3)] {
        for p in [3u64, 5] {
            let (r, x) = generic_matrix(m, n, p).map_err(err)?;
            let i2 = minors_ideal(&r, &x, 2, None, None).map_err(err)?;
            let witness = minor(&r, &x, &[0], &[0]);
            let prime = PrimeSpec::new(RingPresentation::polynomial(&r), i2.clone(), Some(witness)).map_err(err)?;
            for power in 1..=3 {
                let sat = symbolic_power_saturation(&prime, power).map_err(err)?.ideal;
                let dep = dep_determinantal_symbolic(&r, &x, 2, power).map_err(err)?.to_ideal().map_err(err)?;
                ensure(sat.equals(&dep).map_err(err)?, || format!("{m}x{n} p = {p} power {power}: engines differ"))?;
                compared += 1;
            }
            if m == 3 {
                let det = minor(&r, &x, &[0, 1, 2], &[0, 1, 2]);
                let sym2 = symbolic_power_saturation(&prime, 2).map_err(err)?.ideal;
                let square = ideal_power(&i2, 2).map_err(err)?;
                ensure(sym2.contains(&det).map_err(err)?, || format!("p = {p}: det not in I_2^(2)"))?;
                ensure(!square.contains(&det).map_err(err)?, || format!("p = {p}: det in I_2^2"))?;
                ensure(det.degree() == Some(3) && square.generators().iter().all(|g| g.degree() == Some(4)), || {
                    format!("p = {p}: unexpected degrees")
                })?;
            }
        }
    }
    Ok(format!("{compared} symbolic powers agree; det(X_3x3) separates I_2^(2) from I_2^2"))
}

fn run_kind(file: &str, kind: Kind) -> Result<Vec<ExperimentReport>, String> {
    let path = configs().join(file);
    let specs: Vec<ExperimentSpec> = load_config(&path)?.into_iter().filter(|s| s.kind == kind).collect();
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(specs.iter().enumerate().map(|(i, s)| run_experiment(s, i, base)).collect())
}

fn all_hold(reports: &[ExperimentReport], expected: usize) -> Outcome {
    ensure(reports.len() == expected, || format!("expected {expected} experiments, found {}", reports.len()))?;
    for r in reports {
        ensure(r.status == Status::Ok && r.verdict == Some(Verdict::Holds), || {
            format!("{}: status {:?}, verdict {:?} {}", r.name, r.status, r.verdict, r.message.clone().unwrap_or_default())
        })?;
    }
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    Ok(format!("{} experiments, {checks} containments hold", reports.len()))
}

fn symbolic_in_ordinary() -> Outcome {
    let reports = run_kind("paper_desk_scale.json", Kind::ThmB)?;
    for name in ["thmB-row-prime-2x3-F5", "thmB-I2-3x3-F5"] {
        ensure(reports.iter().any(|r| r.name == name), || format!("{name} missing from the suite"))?;
    }
    let row = reports.iter().find(|r| r.name == "thmB-row-prime-2x3-F5").unwrap();
    ensure(row.checks.iter().any(|c| c.claim == "p^(8) ⊆ p^2 (claimed height 2)"), || {
        "row prime was not checked at h = 2, n = 2".into()
    })?;
    all_hold(&reports, 3)
}

fn tau_product() -> Outcome {
    let reports = run_kind("paper_desk_scale.json", Kind::ThmA)?;
    all_hold(&reports, 37)
}

fn tau_of_symbolic() -> Outcome {
    let reports = run_kind("paper_desk_scale.json", Kind::Lemma22)?;
    all_hold(&reports, 16)
}

fn negative_control() -> Outcome {
    let reports = run_kind("negative_control.json", Kind::Claim)?;
    let claim = reports.first().ok_or("no claim in the negative control")?;
    ensure(claim.verdict == Some(Verdict::Fails), || format!("false claim verdict {:?}", claim.verdict))?;
    let w = claim.checks[0].witness.as_ref().ok_or("no witness")?;
    let r = common::ring(5, 1);
    let element = r.parse(&w.element).map_err(err)?;
    ensure(common::ideal(&r, &["x"]).contains(&element).map_err(err)?, || "witness not in p^(1)".into())?;
    ensure(!common::ideal(&r, &["x^2"]).contains(&element).map_err(err)?, || "witness lies in p^2".into())?;

    let probes = run_kind("negative_control.json", Kind::FsplitSuite)?;
    let probe = probes.first().ok_or("no probe in the negative control")?;
    ensure(
        probe.checks.iter().all(|c| !(c.claim.contains("strongly F-regular") && c.verdict == Verdict::Holds)),
        || "probe certified strong F-regularity".into(),
    )?;
    let r3 = common::ring(5, 3);
    let cubic = common::ideal(&r3, &["x^3 + y^3 + z^3"]);
    for c in ["x", "y", "x + y"] {
        let c = r3.parse(c).map_err(err)?;
        if let SfrVerdict::Certified { e, .. } = strong_freg_probe(&cubic, &c, 3).map_err(err)? {
            return Err(format!("probe with c = {c} certified at e = {e}"));
        }
    }
    Ok(format!("witness {} re-verified; probe undetermined up to e = 3", w.element))
}

struct Criterion {
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria = [
        Criterion { title: "Groebner kernel soundness", budget: min(2), run: groebner_soundness },
        Criterion { title: "root-ideal adjunction and minimality", budget: min(1), run: root_adjunction },
        Criterion { title: "test ideals match the Newton polyhedron", budget: min(2), run: newton_agreement },
        Criterion { title: "Fedder dichotomy for the Fermat cubic", budget: Duration::from_secs(30), run: fedder_dichotomy },
        Criterion { title: "diagonal F-splitting of F_2[a,b,c,d]/(ad-bc)", budget: min(5), run: segre_diagonal },
        Criterion { title: "DEP and saturation engines agree", budget: min(10), run: engine_agreement },
        Criterion { title: "symbolic powers inside ordinary powers", budget: min(15), run: symbolic_in_ordinary },
        Criterion { title: "test ideal product containment", budget: min(2), run: tau_product },
        Criterion { title: "test ideals of symbolic powers", budget: min(5), run: tau_of_symbolic },
        Criterion { title: "test ideal power and shift identities", budget: min(2), run: identity_suite },
        Criterion { title: "negative control", budget: Duration::from_secs(30), run: negative_control },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > c.budget => Err(format!("over budget {:?}", c.budget)),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {}: {detail} [{elapsed:.1?}]", k + 1, c.title),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {why} [{elapsed:.1?}]", k + 1, c.title);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
