mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edim_core::edbounds::{self, BoundReport, Engine, GroupDescriptor};
use edim_core::genfree::{self, Certificate, Strategy};
use edim_core::rootsys::RootSystem;
use edim_core::{reps, weyl, Error};
use num_bigint::BigUint;
use serde_json::{json, Value};

use output::Format;

const LONG_ABOUT: &str = "\
Essential-dimension upper bounds for simple algebraic groups, with the
certificates and transfer rules behind each bound.

Simple roots and fundamental weights follow Bourbaki numbering: for B_n the
short simple root is alpha_n, for C_n the long one is alpha_n, D_n has the
fork at alpha_{n-2} with the half-spin weights omega_{n-1} and omega_n, and
E_n has alpha_2 attached to alpha_4. Weight indices on the command line and
words in certificates are 1-based.

Exit codes: 0 success, 1 internal error, 2 usage error, 3 certificate
failed, 4 computation refused (over the enumeration limit or unsupported).";

#[derive(Parser)]
#[command(name = "edim", version, about = "Essential-dimension bounds for simple algebraic groups", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Largest group order enumerated element by element.
    #[arg(
        long,
        global = true,
        env = "EDIM_ENUMERATION_LIMIT",
        default_value_t = weyl::DEFAULT_ENUMERATION_LIMIT,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    limit: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Best upper bound (or all candidate bounds) with provenance.
    Bounds(BoundsArgs),
    /// Run a generic-freeness certificate.
    Certify {
        #[command(subcommand)]
        target: CertifyTarget,
    },
    /// Kernel of the Weyl group on the root lattice mod p, and the component
    /// group of a generic stabilizer in the adjoint representation.
    Weyl(WeylArgs),
    /// Stabilizers of random trace-zero polynomials under affine substitutions.
    Polys(PolysArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Dynkin type, e.g. E8, A1, D5.
    #[arg(long = "type", conflicts_with = "family")]
    ty: Option<String>,

    /// adjoint, sc, so or half-spin (with --type).
    #[arg(long, default_value = "adjoint")]
    isogeny: String,

    /// PGL, SL, GL, Sp, PSp, SO, PSO, Spin or HSpin.
    #[arg(long, requires = "n")]
    family: Option<String>,

    /// Family parameter: matrix size for PGL/SL/GL, rank for Sp/PSp/PSO,
    /// natural dimension for SO/Spin/HSpin.
    #[arg(long)]
    n: Option<u32>,

    /// Order of the central quotient for SL and GL.
    #[arg(long)]
    m: Option<u32>,

    /// Characteristic of the base field (0 or a prime).
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u32,

    /// Report only this route (e.g. thm-a, prop-short, thm-psp).
    #[arg(long)]
    route: Option<String>,

    /// Report every candidate bound instead of the best one.
    #[arg(long)]
    candidates: bool,

    /// Table mode (no --type or --family): smallest rank.
    #[arg(long, default_value_t = 1)]
    min_rank: u32,

    /// Table mode: largest rank.
    #[arg(long, default_value_t = 8)]
    max_rank: u32,

    #[command(flatten)]
    strategy: StrategyArgs,
}

#[derive(Args, Clone)]
struct StrategyArgs {
    /// Certificate strategy; by default exhaustive when the group order is
    /// within the limit, minimal normal witnesses otherwise.
    #[arg(long, value_enum)]
    strategy: Option<StrategyName>,

    /// Trials for the monte-carlo strategy.
    #[arg(long, default_value_t = genfree::DEFAULT_TRIALS)]
    trials: u64,

    /// Seed for the monte-carlo strategy.
    #[arg(long, default_value_t = genfree::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyName {
    Exhaustive,
    #[value(alias = "minimal-normal-witnesses")]
    Witnesses,
    MonteCarlo,
}

impl StrategyArgs {
    fn resolve(&self, order: impl FnOnce() -> BigUint, limit: u64) -> Strategy {
        match self.strategy {
            Some(StrategyName::Exhaustive) => Strategy::Exhaustive,
            Some(StrategyName::Witnesses) => Strategy::MinimalNormalWitnesses,
            Some(StrategyName::MonteCarlo) => Strategy::MonteCarlo {
                trials: self.trials,
                seed: self.seed,
            },
            None => genfree::default_strategy(&order(), limit),
        }
    }
}

#[derive(Subcommand)]
enum CertifyTarget {
    /// Normalizer of a maximal torus on the projectivized short-root module.
    Short {
        #[arg(long = "type")]
        ty: String,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Normalizer of a maximal torus on a minuscule module of E6 or E7.
    Minuscule {
        #[arg(long = "type")]
        ty: String,
        /// Fundamental weight index (default 1 for E6, 7 for E7).
        #[arg(long)]
        weight: Option<usize>,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Normalizer of a maximal torus of HSpin_n on a half-spin module.
    HalfSpin {
        /// Natural dimension, divisible by 4 and at least 12.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
}

#[derive(Args)]
struct WeylArgs {
    #[arg(long = "type")]
    ty: String,

    /// The prime p.
    #[arg(long = "mod")]
    p: u32,
}

#[derive(Args)]
struct PolysArgs {
    /// Degree, at least 3.
    #[arg(long)]
    n: usize,

    /// Field size, a prime power.
    #[arg(long)]
    q: u64,

    #[arg(long, default_value_t = 500)]
    samples: u64,

    #[arg(long, default_value_t = genfree::DEFAULT_SEED)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Dimension(_) => Failure::Usage(e.to_string()),
            Error::Infeasible { .. } | Error::LimitExceeded { .. } | Error::NotAvailable(_) | Error::Vacuous(_) => {
                Failure::Refused(e.to_string())
            }
        }
    }
}

struct Outcome {
    records: Vec<Value>,
    single: bool,
    code: u8,
}

fn descriptors(a: &BoundsArgs) -> Result<Vec<GroupDescriptor>, Failure> {
    if let Some(ty) = &a.ty {
        return Ok(vec![GroupDescriptor::from_type(ty, &a.isogeny, a.characteristic)?]);
    }
    if let Some(f) = &a.family {
        let n = a.n.expect("clap enforces --n");
        return Ok(vec![GroupDescriptor::from_family(f, n, a.m, a.characteristic)?]);
    }
    if a.min_rank > a.max_rank || a.max_rank > 8 {
        return Err(Failure::Usage("table mode needs min-rank <= max-rank <= 8".into()));
    }
    Ok(edbounds::enumerate_descriptors(a.min_rank, a.max_rank, a.characteristic)?)
}

fn bound_record(r: &BoundReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn cmd_bounds(a: &BoundsArgs, limit: u64) -> Result<Outcome, Failure> {
    let ds = descriptors(a)?;
    let custom = (a.strategy.strategy.is_some() || limit != weyl::DEFAULT_ENUMERATION_LIMIT).then(|| {
        let s = a.strategy.resolve(BigUint::default, limit);
        let s = if a.strategy.strategy.is_some() { s } else { Strategy::MinimalNormalWitnesses };
        Engine::new(s, limit)
    });
    let engine = custom.as_ref().unwrap_or_else(|| edbounds::default_engine());
    let mut records = Vec::new();
    let mut failed = false;
    for d in &ds {
        let rows: Result<Vec<BoundReport>, Error> = if a.candidates {
            engine.candidates(d)
        } else if let Some(route) = &a.route {
            engine
                .route(d, route)
                .and_then(|r| r.ok_or_else(|| Error::NotAvailable(format!("no {route} route for {}", d.name()))))
                .map(|r| vec![r])
        } else {
            engine.best_bound(d).map(|r| vec![r])
        };
        match rows {
            Ok(rows) => records.extend(rows.iter().map(bound_record)),
            Err(e) if ds.len() == 1 => return Err(e.into()),
            Err(e) => {
                failed = true;
                log::error!("{}: {e}", d.name());
            }
        }
    }
    Ok(Outcome {
        single: false,
        records,
        code: if failed { 1 } else { 0 },
    })
}

fn certificate_outcome(c: Certificate) -> Outcome {
    let code = if c.passed() { 0 } else { 3 };
    Outcome {
        records: vec![serde_json::to_value(&c).expect("certificates serialize")],
        single: true,
        code,
    }
}

fn cmd_certify(t: &CertifyTarget, limit: u64) -> Result<Outcome, Failure> {
    let cert = match t {
        CertifyTarget::Short { ty, strategy } => {
            let rs = RootSystem::from_label(ty)?;
            let s = strategy.resolve(|| weyl::weyl_group(&rs).order(), limit);
            genfree::certify_short(&rs, s, limit)?
        }
        CertifyTarget::Minuscule { ty, weight, strategy } => {
            let rs = RootSystem::from_label(ty)?;
            let idx = match (weight, rs.rank()) {
                (Some(i), _) => *i,
                (None, 6) => 1,
                (None, _) => 7,
            };
            let s = strategy.resolve(|| weyl::weyl_group(&rs).order(), limit);
            genfree::certify_minuscule(&rs, idx, s, limit)?
        }
        CertifyTarget::HalfSpin { n, strategy } => {
            let (rs, _) = reps::half_spin_module(*n)?;
            let s = strategy.resolve(|| weyl::weyl_group(&rs).order(), limit);
            genfree::certify_half_spin(*n, s, limit)?
        }
    };
    Ok(certificate_outcome(cert))
}

fn cmd_weyl(a: &WeylArgs) -> Result<Outcome, Failure> {
    let rs = RootSystem::from_label(&a.ty)?;
    if rs.rank() > 8 {
        return Err(Failure::Usage(format!("rank {} is above 8", rs.rank())));
    }
    let ext = weyl::kernel_mod_p(&rs, a.p, true)?;
    let inner = weyl::kernel_mod_p(&rs, a.p, false)?;
    let d = GroupDescriptor::from_type(&a.ty, "adjoint", a.p)?;
    let adj = edbounds::adjoint_stabilizer(&d)?;
    let record = json!({
        "type": rs.label(),
        "p": a.p,
        "kernel_order": ext.order.to_string(),
        "elementary_abelian": ext.elementary_abelian_2,
        "contains_minus_one": ext.contains_minus_one,
        "kernel_order_in_w": inner.order.to_string(),
        "adjoint_group": adj.group,
        "component_group": adj.structure,
        "component_group_order": adj.order,
        "connected": adj.connected,
        "acts_by_inversion": adj.acts_by_inversion,
    });
    Ok(Outcome {
        records: vec![record],
        single: true,
        code: 0,
    })
}

fn cmd_polys(a: &PolysArgs) -> Result<Outcome, Failure> {
    let stats = genfree::agl1_generic_check(a.n, a.q, a.samples, a.seed)?;
    Ok(Outcome {
        records: vec![serde_json::to_value(&stats).expect("stats serialize")],
        single: true,
        code: 0,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Bounds(a) => cmd_bounds(a, cli.limit),
        Command::Certify { target } => cmd_certify(target, cli.limit),
        Command::Weyl(a) => cmd_weyl(a),
        Command::Polys(a) => cmd_polys(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Refused(m) => (4, m),
            };
            eprintln!("edim: {msg}");
            return ExitCode::from(code);
        }
    };
    let records: Vec<Value> = outcome.records.into_iter().map(output::stringify_numbers).collect();
    let rendered = match output::render(cli.format, &records, outcome.single) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("edim: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, rendered),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(rendered.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("edim: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code)
}
