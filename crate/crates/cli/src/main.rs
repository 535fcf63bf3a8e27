//! `addim`: compute, construct, verify and embed finite additive sets.
//!
//! Exit codes: 0 success, 1 a check was violated, 2 bad input, 3 a solver ran
//! out of budget and only bounds are reported.

mod render;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use addim_core::constructions::{
    cube, dissociated_in_cube, example_eg1, freiman_embed, geneg_family, interval_basis,
    powers_of_three, CubeStrategy, DEFAULT_RESTARTS,
};
use addim_core::format::to_text;
use addim_core::lab::{
    chain_batch, check_schoen_bound, check_thm_interval, dslb_batch, dslb_instance, geneg_batch,
    IntervalMode, LinearForm,
};
use addim_core::solvers::{DEFAULT_MAX_NODES, DEFAULT_MAX_SECONDS};
use addim_core::{full_report, parse_set, AdditiveSet, Error, SearchBudget, SetFormat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "addim",
    version,
    about = "Dimensions of finite additive sets in Z^r"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Write to this file instead of standard output
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Worker threads; results do not depend on it
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Node budget per solver run
    #[arg(long, global = true, env = "ADDIM_BUDGET_NODES", value_name = "N")]
    budget_nodes: Option<u64>,

    /// Wall-clock budget per solver run, in seconds
    #[arg(long, global = true, value_name = "SECS")]
    budget_seconds: Option<u64>,

    /// Format of input set files
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// JSON if the first non-blank byte is `{`, text otherwise
    Auto,
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute d_s⁻ (over a universe), d_s, d_d⁻ and d_d with certificates
    Dim {
        /// Set file, or `-` for standard input
        set: PathBuf,
        /// Finite universe for d_s⁻
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// Emit an explicit set
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Run a verification batch
    Verify {
        #[command(subcommand)]
        target: Verify,
    },
    /// Map a set into Z by a Freiman isomorphism of the given order
    Embed {
        set: PathBuf,
        #[arg(long)]
        order: u64,
        /// Where to write the embedding parameters; defaults to
        /// `<output>.embedding.json` when `-o` is given
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// {1, 3, ..., 3^(k-1)}
    P3 { k: usize },
    /// Minimum 1-spanning maximal dissociated subset of [N]
    IntervalBasis {
        #[arg(value_name = "N")]
        n: u64,
    },
    /// {0,1}^n
    Cube { n: usize },
    /// {(1,0), (0,1), (1,1), (2,0), (0,2)}
    Eg1,
    /// B_n ∪ {s_n} ∪ 2·D
    Geneg {
        n: usize,
        /// Dissociated subset of {0,1}^n
        #[arg(long)]
        dissoc: PathBuf,
    },
    /// Dissociated subset of {0,1}^n
    CubeDissoc {
        n: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Greedy)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Oracle,
    Constructive,
}

#[derive(Args, Debug)]
struct Batch {
    #[arg(long, default_value_t = 200)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Closed form for d_s([N]) = d_d⁻([N]), N = 1..=to
    Interval {
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value_t = Mode::Constructive)]
        mode: Mode,
    },
    /// dslb and Lev-Yuster inequalities, on one set or on seeded random sets
    Dslb {
        /// Check this set instead of random ones
        #[arg(long)]
        set: Option<PathBuf>,
        #[command(flatten)]
        batch: Batch,
    },
    /// d_s⁻(A ∪ −A) ≤ d_s ≤ d_d⁻ ≤ d_d on seeded random sets
    Chain {
        #[command(flatten)]
        batch: Batch,
    },
    /// Dimensions of A_n for every dissociated D ⊆ {0,1}^n ∖ {0}, |D| ≤ max-d
    Geneg {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_d: usize,
    },
    /// m_L(Z/p) ≤ exp(−d_s(C)/12)
    Schoen {
        /// Comma-separated nonzero coefficients
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<i64>,
        #[arg(long)]
        p: u32,
    },
}

enum Outcome {
    Ok,
    Violated,
    Budget,
}

impl Outcome {
    fn code(&self) -> ExitCode {
        match self {
            Outcome::Ok => ExitCode::SUCCESS,
            Outcome::Violated => ExitCode::from(1),
            Outcome::Budget => ExitCode::from(3),
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        // a failed internal check is reported like a violated one
        Error::Invariant(_) => 1,
        _ => 2,
    }
}

struct Ctx {
    json: bool,
    output: Option<PathBuf>,
    budget: SearchBudget,
    input_format: InputFormat,
}

impl Ctx {
    fn read_set(&self, path: &Path) -> Result<AdditiveSet, Error> {
        let mut buf = Vec::new();
        if path.as_os_str() == "-" {
            std::io::stdin().read_to_end(&mut buf)?;
        } else {
            buf = std::fs::read(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        }
        let format = match self.input_format {
            InputFormat::Text => SetFormat::Text,
            InputFormat::Json => SetFormat::Json,
            InputFormat::Auto => match buf.iter().find(|b| !b.is_ascii_whitespace()) {
                Some(b'{') => SetFormat::Json,
                _ => SetFormat::Text,
            },
        };
        parse_set(&buf, format)
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.output {
            Some(p) => std::fs::write(p, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn emit_json(&self, v: &Value) -> Result<(), Error> {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        self.emit(&s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let ctx = Ctx {
        json: cli.json,
        output: cli.output,
        budget: SearchBudget {
            max_nodes: cli.budget_nodes.unwrap_or(DEFAULT_MAX_NODES),
            max_time: Duration::from_secs(cli.budget_seconds.unwrap_or(DEFAULT_MAX_SECONDS)),
        },
        input_format: cli.input_format,
    };
    let result = match cli.command {
        Command::Dim { set, universe } => dim(&ctx, &set, universe.as_deref()),
        Command::Construct { kind } => construct(&ctx, kind),
        Command::Verify { target } => verify(&ctx, target),
        Command::Embed {
            set,
            order,
            sidecar,
        } => embed(&ctx, &set, order, sidecar),
    };
    match result {
        Ok(o) => o.code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn dim(ctx: &Ctx, set: &Path, universe: Option<&Path>) -> Result<Outcome, Error> {
    let a = ctx.read_set(set)?;
    let u = universe.map(|p| ctx.read_set(p)).transpose()?;
    let report = full_report(&a, u.as_ref(), &ctx.budget)?;
    if ctx.json {
        ctx.emit_json(&json!({ "set": a, "report": report }))?;
    } else {
        ctx.emit(&render::report(&a, &report))?;
    }
    Ok(if report.all_exact {
        Outcome::Ok
    } else {
        Outcome::Budget
    })
}

fn emit_set(ctx: &Ctx, set: &AdditiveSet, params: Value) -> Result<Outcome, Error> {
    if ctx.json {
        let mut v = serde_json::to_value(set).expect("serializable");
        v["construction"] = params;
        ctx.emit_json(&v)?;
    } else {
        let header = vec![format!("construct {}", render::params(&params))];
        ctx.emit(&to_text(set, &header))?;
    }
    Ok(Outcome::Ok)
}

fn construct(ctx: &Ctx, kind: Construct) -> Result<Outcome, Error> {
    match kind {
        Construct::P3 { k } => emit_set(ctx, &powers_of_three(k)?, json!({ "kind": "p3", "k": k })),
        Construct::IntervalBasis { n } => {
            let b = interval_basis(n)?;
            let params = json!({ "kind": "interval-basis", "N": n, "case": b.case, "t": b.t.map(|t| t.to_string()) });
            emit_set(ctx, &b.basis, params)
        }
        Construct::Cube { n } => emit_set(ctx, &cube(n)?, json!({ "kind": "cube", "n": n })),
        Construct::Eg1 => emit_set(ctx, &example_eg1(), json!({ "kind": "eg1" })),
        Construct::Geneg { n, dissoc } => {
            let d = ctx.read_set(&dissoc)?;
            let a = geneg_family(n, &d)?;
            emit_set(ctx, &a, json!({ "kind": "geneg", "n": n, "D": d }))
        }
        Construct::CubeDissoc {
            n,
            strategy,
            seed,
            restarts,
        } => {
            let (s, params) = match strategy {
                Strategy::Exact => (CubeStrategy::Exact, json!({ "strategy": "exact" })),
                Strategy::Greedy => (
                    CubeStrategy::GreedyRandom { seed, restarts },
                    json!({ "strategy": "greedy", "seed": seed, "restarts": restarts }),
                ),
            };
            let r = dissociated_in_cube(n, s)?;
            let mut params = params;
            params["kind"] = json!("cube-dissoc");
            params["n"] = json!(n);
            params["size"] = json!(r.set.len());
            params["optimal"] = json!(r.optimal);
            emit_set(ctx, &r.set, params)
        }
    }
}

/// Writes a verification report; every entry must carry a `holds` flag.
fn emit_checks(
    ctx: &Ctx,
    target: &str,
    params: Value,
    checks: Vec<Value>,
) -> Result<Outcome, Error> {
    let failed = checks.iter().filter(|c| c["holds"] != json!(true)).count();
    let passed = failed == 0;
    if ctx.json {
        ctx.emit_json(&json!({
            "target": target,
            "parameters": params,
            "passed": passed,
            "total": checks.len(),
            "failed": failed,
            "checks": checks,
        }))?;
    } else {
        ctx.emit(&render::checks(target, &params, &checks, failed))?;
    }
    Ok(if passed {
        Outcome::Ok
    } else {
        Outcome::Violated
    })
}

fn values<T: serde::Serialize>(items: &[T]) -> Vec<Value> {
    items
        .iter()
        .map(|c| serde_json::to_value(c).expect("serializable"))
        .collect()
}

fn verify(ctx: &Ctx, target: Verify) -> Result<Outcome, Error> {
    let b = &ctx.budget;
    match target {
        Verify::Interval { to, mode } => {
            let m = match mode {
                Mode::Oracle => IntervalMode::Oracle,
                Mode::Constructive => IntervalMode::Constructive,
            };
            let checks = check_thm_interval(to, m, b)?;
            emit_checks(
                ctx,
                "interval",
                json!({ "to": to, "mode": m }),
                values(&checks),
            )
        }
        Verify::Dslb {
            set: Some(path), ..
        } => {
            let a = ctx.read_set(&path)?;
            let checks = dslb_instance(&a, b)?;
            emit_checks(
                ctx,
                "dslb",
                json!({ "set": path.display().to_string() }),
                values(&checks),
            )
        }
        Verify::Dslb { set: None, batch } => {
            let checks = dslb_batch(batch.seed, batch.runs, b)?;
            emit_checks(
                ctx,
                "dslb",
                json!({ "runs": batch.runs, "seed": batch.seed }),
                values(&checks),
            )
        }
        Verify::Chain { batch } => {
            let checks = chain_batch(batch.seed, batch.runs, b)?;
            emit_checks(
                ctx,
                "chain",
                json!({ "runs": batch.runs, "seed": batch.seed }),
                values(&checks),
            )
        }
        Verify::Geneg { n, max_d } => {
            let reports = geneg_batch(n, max_d, b)?;
            emit_checks(
                ctx,
                "geneg",
                json!({ "n": n, "max_d": max_d }),
                values(&reports),
            )
        }
        Verify::Schoen { coeffs, p } => {
            let l = LinearForm::new(coeffs.clone())?;
            let check = check_schoen_bound(&l, p, b)?;
            emit_checks(
                ctx,
                "schoen",
                json!({ "coeffs": coeffs, "p": p }),
                values(&[check]),
            )
        }
    }
}

fn embed(ctx: &Ctx, set: &Path, order: u64, sidecar: Option<PathBuf>) -> Result<Outcome, Error> {
    let a = ctx.read_set(set)?;
    let (image, emb) = freiman_embed(&a, order)?;
    let meta = serde_json::to_value(&emb).expect("serializable");
    if ctx.json {
        ctx.emit_json(&json!({ "image": image, "embedding": meta }))?;
    } else {
        let header = vec![format!("embed {}", render::params(&meta))];
        ctx.emit(&to_text(&image, &header))?;
    }
    let sidecar = sidecar.or_else(|| {
        ctx.output.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".embedding.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = sidecar {
        let mut s = serde_json::to_string_pretty(&meta).expect("serializable");
        s.push('\n');
        std::fs::write(path, s)?;
    }
    Ok(Outcome::Ok)
}
