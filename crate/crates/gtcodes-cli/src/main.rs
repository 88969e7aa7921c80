//! Command-line toolkit for sparse group-testing codes: plan constructions
//! against lower bounds, build matrices to GTM1 files, verify disjunctness,
//! decode outcomes, run OR-channel simulations, sweep bounds to CSV, and
//! benchmark the core operations.
//!
//! Exit codes: 0 success / property holds, 1 verification or recovery
//! failure, 2 invalid parameters or malformed input, 3 work budget exceeded.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gtcodes::bounds::{self, BoundResult};
use gtcodes::construct::{CodePlan, Construction};
use gtcodes::decode::{cover_decode, DecodeResult, KsListDecoder};
use gtcodes::matrix::{read_gtm1_file, write_gtm1_file, CodeMatrix, Outcome};
use gtcodes::sim::{run_sim, DecoderKind, ErrorMode, SimConfig, SimReport};
use gtcodes::verify::{
    disjunct_exact_with, disjunct_sufficient, ExactOptions, VerifyError, VerifyMethod, VerifyReport,
};

#[derive(Parser)]
#[command(name = "gtcodes", version, about = "Sparse group-testing code toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a constraint regime to a construction and compare it with
    /// the matching lower bound
    Plan(PlanArgs),
    /// Build a measurement matrix and write it as a GTM1 file
    Build(BuildArgs),
    /// Check a GTM1 matrix for (d, nu)-disjunctness
    Verify(VerifyArgs),
    /// Recover the defective set from an outcome vector
    Decode(DecodeArgs),
    /// Run OR-channel discovery trials against a matrix
    Simulate(SimulateArgs),
    /// Sweep a parameter and emit lower bound vs achievable tests as CSV
    Bounds(BoundsArgs),
    /// Time matrix construction, verification, and decoding
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct RegimeArgs {
    /// Number of items
    #[arg(long)]
    n: usize,
    /// Bound on the number of defectives
    #[arg(long)]
    d: u32,
    /// Number of detectable test errors
    #[arg(long, default_value_t = 0)]
    nu: u32,
    /// Per-item test budget (maximum column weight)
    #[arg(long, conflicts_with = "rhomax")]
    wmax: Option<u32>,
    /// Per-test pool-size limit (maximum row weight)
    #[arg(long)]
    rhomax: Option<usize>,
}

impl RegimeArgs {
    fn validate(&self) -> Result<(), Failure> {
        if self.n < 2 {
            return Err(Failure::params("--n must be at least 2"));
        }
        if self.d < 1 {
            return Err(Failure::params("--d must be at least 1"));
        }
        if self.d as usize >= self.n {
            return Err(Failure::params("--d must be below --n"));
        }
        Ok(())
    }

    fn plan(&self) -> Result<(CodePlan, BoundResult), Failure> {
        self.validate()?;
        match (self.wmax, self.rhomax) {
            (Some(wmax), None) => {
                if wmax < 1 {
                    return Err(Failure::params("--wmax must be at least 1"));
                }
                Ok((
                    bounds::plan_sparse_codewords(self.n, self.d, self.nu, wmax),
                    bounds::lb_sparse_codewords(self.n, self.d, self.nu, wmax),
                ))
            }
            (None, Some(rhomax)) => {
                if rhomax < 1 {
                    return Err(Failure::params("--rhomax must be at least 1"));
                }
                Ok((
                    bounds::plan_sparse_tests(self.n, self.d, self.nu, rhomax),
                    bounds::lb_sparse_tests(self.n, self.d, self.nu, rhomax),
                ))
            }
            _ => Err(Failure::params(
                "exactly one of --wmax or --rhomax is required",
            )),
        }
    }
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    regime: RegimeArgs,
    /// Emit machine-readable key=value lines
    #[arg(long)]
    kv: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    regime: RegimeArgs,
    /// Build nu+1 stacked identities instead of resolving a constraint
    #[arg(long, conflicts_with_all = ["wmax", "rhomax", "random"])]
    identity: bool,
    /// Build a random constant-column-weight matrix (needs --t and --w)
    #[arg(long, conflicts_with_all = ["wmax", "rhomax"])]
    random: bool,
    /// Tests for --random
    #[arg(long, requires = "random")]
    t: Option<usize>,
    /// Column weight for --random
    #[arg(long, requires = "random")]
    w: Option<u32>,
    /// Seed for randomized constructions
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output GTM1 file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input GTM1 file
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    d: u32,
    #[arg(long, default_value_t = 0)]
    nu: u32,
    /// Run the exhaustive verifier instead of the sufficient test
    #[arg(long)]
    exact: bool,
    /// Residual-evaluation budget for --exact
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Worker threads for --exact
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    kv: bool,
}

#[derive(Args)]
struct DecodeArgs {
    /// Input GTM1 file
    #[arg(long = "in")]
    input: PathBuf,
    /// Outcome file: one line of t characters from {0,1}
    #[arg(long)]
    y: PathBuf,
    #[arg(long, default_value_t = 0)]
    nu: u32,
    /// Use the list-recovery decoder (needs Kautz-Singleton metadata in the
    /// GTM1 file)
    #[arg(long)]
    list: bool,
    #[arg(long)]
    kv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderArg {
    Cover,
    List,
}

#[derive(Args)]
struct SimulateArgs {
    /// Input GTM1 file
    #[arg(long = "in")]
    input: PathBuf,
    /// Active devices per trial
    #[arg(long)]
    d_active: usize,
    /// Outcome bits flipped per trial
    #[arg(long, default_value_t = 0)]
    error_weight: usize,
    /// Error-detection parameter; defaults to the plan metadata
    #[arg(long)]
    nu: Option<u32>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = DecoderArg::Cover)]
    decoder: DecoderArg,
    /// Enumerate every active set and error pattern instead of sampling
    #[arg(long)]
    exhaustive: bool,
    /// Run even when the error weight exceeds the decoder guarantee
    #[arg(long)]
    force: bool,
    /// Draw the active-set size uniformly from 0..=d_active
    #[arg(long)]
    mixed: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    kv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepParam {
    Wmax,
    Rhomax,
    N,
}

#[derive(Args)]
struct BoundsArgs {
    /// Parameter to sweep
    #[arg(long, value_enum)]
    sweep: SweepParam,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: u32,
    #[arg(long, default_value_t = 0)]
    nu: u32,
    /// Fixed column budget when sweeping n
    #[arg(long)]
    wmax: Option<u32>,
    /// Fixed row budget when sweeping n
    #[arg(long)]
    rhomax: Option<usize>,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long, default_value_t = 1)]
    step: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    regime: RegimeArgs,
    /// Decode repetitions per timing sample
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn params(msg: impl Display) -> Failure {
        Failure {
            code: 2,
            message: msg.to_string(),
        }
    }

    fn budget(msg: impl Display) -> Failure {
        Failure {
            code: 3,
            message: msg.to_string(),
        }
    }
}

macro_rules! exit2_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Failure {
                Failure::params(e)
            }
        }
    )*};
}

exit2_from!(
    gtcodes::construct::ConstructError,
    gtcodes::matrix::GtmError,
    gtcodes::matrix::MatrixError,
    gtcodes::decode::DecodeError,
    gtcodes::sim::SimError,
    std::io::Error
);

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Failure {
        Failure::budget(e)
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn plan_kv(plan: &CodePlan) -> Vec<(String, String)> {
    plan.to_metadata()
}

fn print_plan_text(plan: &CodePlan) {
    println!(
        "plan: {} n={} d={} nu={}",
        plan.kind_name(),
        plan.n,
        plan.d,
        plan.nu
    );
    if let Construction::KautzSingleton { q, k_q, t_q } = plan.construction {
        println!("  outer code: q={q} k_q={k_q} t_q={t_q} (l={})", k_q - 1);
    }
    println!(
        "  tests t={} column_weight w={} row_weight<= {}",
        plan.t, plan.w, plan.rho_bound
    );
}

fn cmd_plan(args: PlanArgs) -> Result<u8, Failure> {
    let (plan, lb) = args.regime.plan()?;
    let gap = plan.t as i64 - lb.tests_required() as i64;
    if args.kv {
        for (k, v) in plan_kv(&plan) {
            println!("{k}={v}");
        }
        println!("lb={}", lb.value);
        println!("lb_ceil={}", lb.tests_required());
        println!("lb_rule={}", lb.binding_rule);
        println!("gap={gap}");
    } else {
        print_plan_text(&plan);
        println!(
            "lower bound: {:.4} (tests required {}, rule {})",
            lb.value,
            lb.tests_required(),
            lb.binding_rule
        );
        println!(
            "optimality gap: {} - {} = {}",
            plan.t,
            lb.tests_required(),
            gap
        );
    }
    Ok(0)
}

fn cmd_build(args: BuildArgs) -> Result<u8, Failure> {
    let plan = if args.identity {
        args.regime.validate()?;
        CodePlan::identity_stack(args.regime.n, args.regime.d, args.regime.nu)
    } else if args.random {
        args.regime.validate()?;
        let t = args
            .t
            .ok_or_else(|| Failure::params("--random needs --t"))?;
        let w = args
            .w
            .ok_or_else(|| Failure::params("--random needs --w"))?;
        CodePlan::random_constant_weight(
            args.regime.n,
            args.regime.d,
            args.regime.nu,
            t,
            w,
            args.seed,
        )
    } else {
        args.regime.plan()?.0
    };
    let matrix = plan.build_matrix()?;
    write_gtm1_file(&args.out, &matrix, &plan.to_metadata())?;
    println!(
        "wrote {} ({} tests x {} items, {})",
        args.out.display(),
        matrix.rows(),
        matrix.cols(),
        plan.kind_name()
    );
    Ok(0)
}

fn load_matrix(path: &PathBuf) -> Result<(CodeMatrix, Option<CodePlan>), Failure> {
    let (matrix, meta) = read_gtm1_file(path)?;
    let plan = CodePlan::from_metadata(&meta).ok();
    Ok((matrix, plan))
}

fn print_verify(report: &VerifyReport, kv: bool) {
    let method = match report.method {
        VerifyMethod::Sufficient => "sufficient",
        VerifyMethod::Exact => "exact",
    };
    if kv {
        println!("method={method}");
        println!("disjunct={}", report.is_disjunct);
        println!("conclusive={}", report.conclusive);
        println!("d={}", report.d);
        println!("nu={}", report.nu);
        println!("w_min={}", report.stats.w_min);
        println!("lambda_max={}", report.stats.lambda_max);
        println!("subsets_examined={}", report.stats.subsets_examined);
        if let Some(w) = &report.witness {
            println!("witness_column={}", w.column);
            println!("witness_covering={}", join(&w.covering));
        }
    } else {
        println!(
            "method={method} d={} nu={} disjunct={}{}",
            report.d,
            report.nu,
            report.is_disjunct,
            if report.conclusive {
                ""
            } else {
                " (inconclusive)"
            }
        );
        println!(
            "w_min={} lambda_max={} subsets_examined={}",
            report.stats.w_min, report.stats.lambda_max, report.stats.subsets_examined
        );
        if let Some(w) = &report.witness {
            println!(
                "witness: column {} covered by {{{}}}",
                w.column,
                join(&w.covering)
            );
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let (matrix, _) = load_matrix(&args.input)?;
    if args.d < 1 || args.d as usize >= matrix.cols() {
        return Err(Failure::params("--d must be in 1..n"));
    }
    let report = if args.exact {
        let opts = ExactOptions {
            work_budget: args.budget,
            workers: args.workers,
        };
        disjunct_exact_with(&matrix, args.d, args.nu, &opts)?
    } else {
        disjunct_sufficient(&matrix, args.d, args.nu)
    };
    print_verify(&report, args.kv);
    Ok(if report.is_disjunct { 0 } else { 1 })
}

fn cmd_decode(args: DecodeArgs) -> Result<u8, Failure> {
    let (matrix, plan) = load_matrix(&args.input)?;
    let text = std::fs::read_to_string(&args.y)?;
    let y = Outcome::from_line(text.lines().next().unwrap_or(""))
        .map_err(|e| Failure::params(format!("bad outcome file: {e}")))?;
    let result: DecodeResult = if args.list {
        let plan = plan.ok_or_else(|| {
            Failure::params("matrix file carries no Kautz-Singleton plan metadata")
        })?;
        KsListDecoder::new(&plan)?.decode(&y, args.nu)?
    } else {
        cover_decode(&matrix, &y, args.nu)?
    };
    if args.kv {
        println!("items={}", join(&result.items));
        println!(
            "method={}",
            match result.method {
                gtcodes::decode::DecodeMethod::Cover => "cover",
                gtcodes::decode::DecodeMethod::ListRecovery => "list-recovery",
            }
        );
        println!("columns_scanned={}", result.work.columns_scanned);
        println!(
            "candidates_interpolated={}",
            result.work.candidates_interpolated
        );
    } else {
        println!("{}", join(&result.items));
    }
    Ok(0)
}

fn print_sim(report: &SimReport, kv: bool) {
    if kv {
        println!("trials={}", report.trials_run);
        println!("exact_recoveries={}", report.exact_recoveries);
        println!("failures={}", report.failure_count());
        println!("false_positives={}", report.false_positive_count);
        println!("false_negatives={}", report.false_negative_count);
        println!("mean_decode_seconds={:.9}", report.mean_decode_seconds);
    } else {
        println!(
            "trials={} exact={} failures={}",
            report.trials_run,
            report.exact_recoveries,
            report.failure_count()
        );
        println!(
            "false_positives={} false_negatives={} mean_decode_seconds={:.9}",
            report.false_positive_count, report.false_negative_count, report.mean_decode_seconds
        );
    }
    for f in &report.failures {
        println!(
            "failure trial={} active={{{}}} flipped={{{}}} decoded={{{}}}",
            f.trial,
            join(&f.active),
            join(&f.flipped),
            join(&f.decoded)
        );
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<u8, Failure> {
    let (matrix, plan) = load_matrix(&args.input)?;
    let nu = args.nu.or_else(|| plan.as_ref().map(|p| p.nu)).unwrap_or(0);
    let cfg = SimConfig {
        matrix: &matrix,
        plan: plan.as_ref(),
        d_active: args.d_active,
        error_weight: args.error_weight,
        nu,
        trials: args.trials,
        seed: args.seed,
        decoder: match args.decoder {
            DecoderArg::Cover => DecoderKind::Cover,
            DecoderArg::List => DecoderKind::ListRecovery,
        },
        error_mode: if args.exhaustive {
            ErrorMode::Exhaustive
        } else {
            ErrorMode::Random
        },
        allow_beyond_guarantee: args.force,
        mixed_active_size: args.mixed,
        workers: args.workers,
    };
    if cfg.d_active > matrix.cols() {
        return Err(Failure::params("--d-active exceeds the number of items"));
    }
    if cfg.error_weight > matrix.rows() {
        return Err(Failure::params(
            "--error-weight exceeds the number of tests",
        ));
    }
    let report = run_sim(&cfg)?;
    print_sim(&report, args.kv);
    Ok(if report.failure_count() == 0 { 0 } else { 1 })
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8, Failure> {
    if args.from > args.to || args.step == 0 {
        return Err(Failure::params("need --from <= --to and --step >= 1"));
    }
    println!("sweep,value,n,d,nu,wmax,rhomax,lb,lb_ceil,plan_kind,plan_t,gap");
    let mut value = args.from;
    while value <= args.to {
        let row = match args.sweep {
            SweepParam::Wmax => {
                let n = args
                    .n
                    .ok_or_else(|| Failure::params("sweeping wmax needs --n"))?;
                regime_row("wmax", value, n, args.d, args.nu, Some(value as u32), None)?
            }
            SweepParam::Rhomax => {
                let n = args
                    .n
                    .ok_or_else(|| Failure::params("sweeping rhomax needs --n"))?;
                regime_row("rhomax", value, n, args.d, args.nu, None, Some(value))?
            }
            SweepParam::N => {
                regime_row("n", value, value, args.d, args.nu, args.wmax, args.rhomax)?
            }
        };
        println!("{row}");
        value += args.step;
    }
    Ok(0)
}

fn regime_row(
    sweep: &str,
    value: usize,
    n: usize,
    d: u32,
    nu: u32,
    wmax: Option<u32>,
    rhomax: Option<usize>,
) -> Result<String, Failure> {
    let regime = RegimeArgs {
        n,
        d,
        nu,
        wmax,
        rhomax,
    };
    let (plan, lb) = regime.plan()?;
    let gap = plan.t as i64 - lb.tests_required() as i64;
    Ok(format!(
        "{sweep},{value},{n},{d},{nu},{},{},{},{},{},{},{gap}",
        wmax.map(|v| v.to_string()).unwrap_or_default(),
        rhomax.map(|v| v.to_string()).unwrap_or_default(),
        lb.value,
        lb.tests_required(),
        plan.kind_name(),
        plan.t,
    ))
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Failure> {
    let (plan, lb) = args.regime.plan()?;
    let started = Instant::now();
    let matrix = plan.build_matrix()?;
    let build_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let sufficient = disjunct_sufficient(&matrix, plan.d, plan.nu);
    let sufficient_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let exact = disjunct_exact_with(&matrix, plan.d, plan.nu, &ExactOptions::default())?;
    let exact_seconds = started.elapsed().as_secs_f64();

    // decode timing over seeded defective draws
    let mut active: Vec<usize> = Vec::new();
    let mut state = args.seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    while active.len() < plan.d as usize {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let pick = (state >> 33) as usize % plan.n;
        if !active.contains(&pick) {
            active.push(pick);
        }
    }
    active.sort_unstable();
    let y = matrix.or_columns(&active)?;

    let check = |items: &[usize]| -> Result<(), Failure> {
        if items == active {
            Ok(())
        } else {
            Err(Failure {
                code: 1,
                message: format!("bench decode returned {{{}}} for defectives {{{}}}", join(items), join(&active)),
            })
        }
    };

    let started = Instant::now();
    for _ in 0..args.reps {
        check(&cover_decode(&matrix, &y, plan.nu)?.items)?;
    }
    let cover_seconds = started.elapsed().as_secs_f64() / args.reps.max(1) as f64;

    let list_seconds = if matches!(plan.construction, Construction::KautzSingleton { .. }) {
        let decoder = KsListDecoder::new(&plan)?;
        let started = Instant::now();
        for _ in 0..args.reps {
            check(&decoder.decode(&y, plan.nu)?.items)?;
        }
        Some(started.elapsed().as_secs_f64() / args.reps.max(1) as f64)
    } else {
        None
    };

    println!("plan_kind={}", plan.kind_name());
    println!("t={}", plan.t);
    println!("lb_ceil={}", lb.tests_required());
    println!("build_seconds={build_seconds:.9}");
    println!("verify_sufficient_seconds={sufficient_seconds:.9}");
    println!("verify_sufficient_disjunct={}", sufficient.is_disjunct);
    println!("verify_exact_seconds={exact_seconds:.9}");
    println!("verify_exact_disjunct={}", exact.is_disjunct);
    println!("cover_decode_seconds={cover_seconds:.9}");
    if let Some(s) = list_seconds {
        println!("list_decode_seconds={s:.9}");
    }
    Ok(0)
}

fn join(items: &[usize]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
