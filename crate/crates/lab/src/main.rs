use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fsplit_core::constructions::{generic_matrix, minor, minors_ideal, PresentationFlags, RingPresentation, RingRecord};
use fsplit_core::frobenius::{
    diag_fsplit_check, fedder_fsplit, strong_freg_probe, test_ideal_of_power, SfrVerdict, TestIdealVerdict,
    DEFAULT_DIAG_E_MAX, DEFAULT_TEST_IDEAL_E_MAX,
};
use fsplit_core::ideal_ops::{dimension, ideal_colon, ideal_intersect, ideal_sum, saturate};
use fsplit_core::rational::parse_rational;
use fsplit_core::symbolic::{dep_determinantal_symbolic, dep_is_exact, symbolic_power_saturation, PrimeSpec};
use fsplit_core::{Ideal, PolyRing};
use fsplit_lab::{load_config, run_suite};

#[derive(Parser)]
#[command(name = "fsplit-lab", version, about = "Symbolic powers, test ideals and Frobenius splittings over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// Ring presentation JSON {p, variables, defining, flags}
    #[arg(long, conflicts_with_all = ["p", "vars", "defining"])]
    ring: Option<PathBuf>,
    /// Characteristic of a polynomial ring given by --vars
    #[arg(long, requires = "vars")]
    p: Option<u64>,
    /// Comma-separated variable names
    #[arg(long, requires = "p")]
    vars: Option<String>,
    /// Comma-separated defining equations for a quotient of the --vars ring
    #[arg(long, requires = "vars")]
    defining: Option<String>,
}

impl RingArgs {
    fn load(&self) -> Result<RingPresentation> {
        if let Some(path) = &self.ring {
            let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
            let record: RingRecord = serde_json::from_str(&text).with_context(|| path.display().to_string())?;
            return Ok(RingPresentation::from_record(&record)?);
        }
        match (self.p, &self.vars) {
            (Some(p), Some(vars)) => {
                let names: Vec<&str> = vars.split(',').map(str::trim).collect();
                let ring = PolyRing::new(p, &names)?;
                match &self.defining {
                    Some(eqs) => {
                        let i = Ideal::parse(&ring, &split_gens(eqs))?;
                        Ok(RingPresentation::new(i, PresentationFlags::default())?)
                    }
                    None => Ok(RingPresentation::polynomial(&ring)),
                }
            }
            _ => bail!("give --ring FILE or --p P --vars x,y,..."),
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum EngineArg {
    Saturation,
    Dep,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment configuration and write a report
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Reduced Groebner basis of I + (defining ideal), one polynomial per line
    Gb {
        #[command(flatten)]
        ring: RingArgs,
        /// Comma-separated generators
        #[arg(long)]
        ideal: String,
    },
    /// Intersection of two ideals
    Intersect {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
    /// Colon ideal (I : J)
    Colon {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
    /// Saturation (I : f^∞)
    Saturate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        i: String,
        #[arg(long)]
        f: String,
    },
    /// Krull dimension of S/(I + defining ideal)
    Dim {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "")]
        ideal: String,
    },
    /// Symbolic power of a prime
    Sympow {
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        #[arg(long)]
        n: u32,
        /// Generic matrix shape MxN; the prime is its ideal of --minors
        #[arg(long, requires = "minors")]
        matrix: Option<String>,
        #[arg(long)]
        minors: Option<usize>,
        /// Characteristic for --matrix
        #[arg(long = "char", default_value_t = 5)]
        characteristic: u64,
        #[command(flatten)]
        ring: RingArgs,
        /// Comma-separated generators of the prime's lift
        #[arg(long)]
        prime: Option<String>,
        /// Element outside the prime used for saturation
        #[arg(long)]
        witness: Option<String>,
    },
    /// Test ideal τ((a^n)^t) in a polynomial ring
    Testideal {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        /// Exponent as NUM/DEN
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_TEST_IDEAL_E_MAX)]
        emax: u32,
    },
    /// Fedder's criterion at e = 1
    Fsplit {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Diagonal F-splitting certificate of the ring
    DiagFsplit {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = DEFAULT_DIAG_E_MAX)]
        emax: u32,
        /// Write the certificate JSON here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strong F-regularity probe with a fixed element c
    SfrProbe {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        c: String,
        #[arg(long)]
        emax: u32,
    },
}

fn split_gens(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_in(pres: &RingPresentation, text: &str) -> Result<Ideal> {
    let i = Ideal::parse(pres.ring(), &split_gens(text))?;
    Ok(if pres.is_polynomial_ring() { i } else { ideal_sum(&i, pres.defining())? })
}

fn print_ideal(i: &Ideal) -> Result<()> {
    for g in i.groebner_basis()? {
        println!("{g}");
    }
    Ok(())
}

fn parse_shape(s: &str) -> Result<(usize, usize)> {
    let (m, n) = s.split_once('x').ok_or_else(|| anyhow!("matrix shape must look like 2x3"))?;
    Ok((m.trim().parse()?, n.trim().parse()?))
}

fn verify(config: &Path, out: Option<&Path>, jobs: usize) -> Result<ExitCode> {
    let specs = load_config(config).map_err(|e| anyhow!(e))?;
    let base = config.parent().unwrap_or(Path::new("."));
    let report = run_suite(&specs, base, jobs);
    print!("{}", report.summary_table());
    if let Some(out) = out {
        let json = serde_json::to_string_pretty(&report)?;
        std::fs::write(out, json + "\n").with_context(|| out.display().to_string())?;
    }
    Ok(if report.has_fails() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

#[allow(clippy::too_many_arguments)]
fn sympow(
    engine: EngineArg,
    n: u32,
    matrix: Option<&str>,
    minors: Option<usize>,
    characteristic: u64,
    ring: &RingArgs,
    prime: Option<&str>,
    witness: Option<&str>,
) -> Result<()> {
    let (spec, dep): (PrimeSpec, Option<_>) = match (matrix, minors) {
        (Some(shape), Some(t)) => {
            let (m, cols) = parse_shape(shape)?;
            let (r, x) = generic_matrix(m, cols, characteristic)?;
            let lift = minors_ideal(&r, &x, t, None, None)?;
            let w = (t >= 2).then(|| {
                let idx: Vec<usize> = (0..t - 1).collect();
                minor(&r, &x, &idx, &idx)
            });
            let spec = PrimeSpec::new(RingPresentation::polynomial(&r), lift, w)?
                .assert_witness_exact("invariance of the associated primes of powers of generic determinantal ideals");
            let dep = dep_is_exact(r.characteristic(), m, cols, t).then_some((r, x, t));
            (spec, dep)
        }
        _ => {
            let pres = ring.load()?;
            let lift = Ideal::parse(pres.ring(), &split_gens(prime.ok_or_else(|| anyhow!("give --prime or --matrix"))?))?;
            let w = witness.map(|w| pres.ring().parse(w)).transpose()?;
            (PrimeSpec::new(pres, lift, w)?, None)
        }
    };
    let use_dep = match engine {
        EngineArg::Dep => {
            if dep.is_none() {
                bail!("the product-of-minors engine needs --matrix and --minors with a suitable characteristic");
            }
            true
        }
        EngineArg::Auto => dep.is_some(),
        EngineArg::Saturation => false,
    };
    if use_dep {
        let (r, x, t) = dep.expect("checked");
        let ideal = dep_determinantal_symbolic(&r, &x, t, n)?.to_ideal()?;
        eprintln!("engine: dep");
        print_ideal(&ideal)
    } else {
        let s = symbolic_power_saturation(&spec, n)?;
        eprintln!("engine: saturation ({:?})", s.exactness);
        print_ideal(&s.ideal)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { config, out, jobs } => return verify(&config, out.as_deref(), jobs),
        Command::Gb { ring, ideal } => {
            let pres = ring.load()?;
            print_ideal(&parse_in(&pres, &ideal)?)?;
        }
        Command::Intersect { ring, i, j } => {
            let pres = ring.load()?;
            print_ideal(&ideal_intersect(&parse_in(&pres, &i)?, &parse_in(&pres, &j)?)?)?;
        }
        Command::Colon { ring, i, j } => {
            let pres = ring.load()?;
            print_ideal(&ideal_colon(&parse_in(&pres, &i)?, &parse_in(&pres, &j)?)?)?;
        }
        Command::Saturate { ring, i, f } => {
            let pres = ring.load()?;
            let f = pres.ring().parse(&f)?;
            print_ideal(&saturate(&parse_in(&pres, &i)?, &f)?)?;
        }
        Command::Dim { ring, ideal } => {
            let pres = ring.load()?;
            println!("{}", dimension(&parse_in(&pres, &ideal)?)?);
        }
        Command::Sympow {
            engine,
            n,
            matrix,
            minors,
            characteristic,
            ring,
            prime,
            witness,
        } => sympow(engine, n, matrix.as_deref(), minors, characteristic, &ring, prime.as_deref(), witness.as_deref())?,
        Command::Testideal { ring, ideal, t, n, emax } => {
            let pres = ring.load()?;
            if !pres.is_polynomial_ring() {
                bail!("test ideals are computed only in a polynomial ring");
            }
            let a = Ideal::parse(pres.ring(), &split_gens(&ideal))?;
            let t = parse_rational(&t)?;
            match test_ideal_of_power(&a, n, t, emax)? {
                TestIdealVerdict::Determined(res) => {
                    let how = if res.certified { "certified" } else { "stabilized" };
                    eprintln!("{how} at e = {}", res.stabilized_at_e);
                    print_ideal(&res.ideal)?;
                }
                TestIdealVerdict::Undetermined { e_max } => {
                    eprintln!("undetermined up to e = {e_max}");
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Fsplit { ring } => {
            let pres = ring.load()?;
            match fedder_fsplit(pres.defining())? {
                Some(cert) => println!("{}", serde_json::to_string(&cert.to_record())?),
                None => {
                    println!("not F-split");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::DiagFsplit { ring, emax, out } => {
            let pres = ring.load()?;
            let (_, _, cert) = diag_fsplit_check(&pres, emax)?;
            match cert {
                Some(cert) => {
                    let json = serde_json::to_string_pretty(&cert.to_record())?;
                    println!("{json}");
                    if let Some(out) = out {
                        std::fs::write(&out, json + "\n").with_context(|| out.display().to_string())?;
                    }
                }
                None => {
                    println!("no diagonal splitting found up to e = {emax}");
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::SfrProbe { ring, c, emax } => {
            let pres = ring.load()?;
            let c = pres.ring().parse(&c)?;
            match strong_freg_probe(pres.defining(), &c, emax)? {
                SfrVerdict::Certified { e, u } => println!("certified at e = {e} with u = {u}"),
                SfrVerdict::Undetermined { e_max } => {
                    println!("undetermined up to e = {e_max}");
                    return Ok(ExitCode::from(2));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

