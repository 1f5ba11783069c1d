//! `qdeficit`: CSV sweeps and single-point values for one-way deficit, weak
//! deficit, and negativity on the qubit-qudit family, plus the verification
//! suite comparing every closed form against its numerical oracle.

mod format;
mod sweep;

use clap::{Args, Parser, Subcommand, ValueEnum};
use format::{fmt_sig12, snap, write_csv};
use qdeficit_core::{
    run_verify, CorrelationPoint, DephasingParams, Fault, TwoParamState, VerifyConfig,
};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use sweep::{SweepOptions, SweepOutcome, CHECK_TOL};

#[derive(Parser)]
#[command(name = "qdeficit", version, about = "Deficit, weak deficit, and negativity for qubit-qudit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep t at fixed s: deficit/weak-deficit/negativity per row
    Fig1(Fig1Args),
    /// Sweep dephasing strength gamma at fixed (r,t) on the qutrit family
    Fig2(Fig2Args),
    /// All three measures at one parameter point
    Point(PointArgs),
    /// Run the closed-form-vs-oracle verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonSweepArgs {
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recompute every row numerically and fail if any measure deviates
    #[arg(long)]
    check: bool,
    /// Angle-grid resolution for numerical minimization
    #[arg(long, default_value_t = 64)]
    grid_n: usize,
    /// Worker threads for sweep rows
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct Fig1Args {
    /// Fixed weight s of the three Bell projectors
    #[arg(long, default_value_t = 0.15)]
    s: f64,
    /// Weak-measurement strength
    #[arg(long, default_value_t = 0.8)]
    x: f64,
    /// Qudit dimension of the B side
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Number of rows covering t in [0, 1-3s]
    #[arg(long, default_value_t = 56)]
    steps: usize,
    #[command(flatten)]
    common: CommonSweepArgs,
}

#[derive(Args)]
struct Fig2Args {
    /// Family parameter r
    #[arg(long, default_value_t = 0.03)]
    r: f64,
    /// Family parameter t
    #[arg(long, default_value_t = 0.58)]
    t: f64,
    /// Weak-measurement strength
    #[arg(long, default_value_t = 0.8)]
    x: f64,
    /// Qudit dimension of the B side (the channel requires 3)
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Number of rows covering gamma in [0, 1]
    #[arg(long, default_value_t = 101)]
    steps: usize,
    #[command(flatten)]
    common: CommonSweepArgs,
}

#[derive(Args)]
struct PointArgs {
    /// Family parameter r
    #[arg(long, default_value_t = 0.03)]
    r: f64,
    /// Family parameter t
    #[arg(long, default_value_t = 0.58)]
    t: f64,
    /// Qudit dimension of the B side
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Weak-measurement strength
    #[arg(long, default_value_t = 0.8)]
    x: f64,
    /// Qubit-side dephasing strength
    #[arg(long, default_value_t = 0.0)]
    gamma_a: f64,
    /// Qudit-side dephasing strength
    #[arg(long, default_value_t = 0.0)]
    gamma_b: f64,
    /// Recompute the measures numerically and fail on deviation
    #[arg(long)]
    check: bool,
    /// Angle-grid resolution for numerical minimization
    #[arg(long, default_value_t = 64)]
    grid_n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Angle-grid resolution for the minimizer-backed properties
    #[arg(long, default_value_t = 64)]
    grid_n: usize,
    /// Corrupt one closed form to demonstrate the suite catches it
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
}

#[derive(ValueEnum, Clone, Copy)]
enum FaultArg {
    DeficitSignFlip,
    WeakSechToTanh,
    NegativityNoClamp,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::DeficitSignFlip => Fault::DeficitSignFlip,
            FaultArg::WeakSechToTanh => Fault::WeakSechToTanh,
            FaultArg::NegativityNoClamp => Fault::NegativityNoClamp,
        }
    }
}

const USAGE_FAILURE: u8 = 2;
const CHECK_FAILURE: u8 = 1;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Fig1(args) => {
            let opts = sweep_options(&args.common);
            match sweep::run_fig1_sweep(args.s, args.x, args.d, args.steps, &opts) {
                Ok(outcome) => emit_sweep(outcome, &args.common),
                Err(msg) => usage_error(&msg),
            }
        }
        Command::Fig2(args) => {
            let opts = sweep_options(&args.common);
            match sweep::run_fig2_sweep(args.r, args.t, args.x, args.d, args.steps, &opts) {
                Ok(outcome) => emit_sweep(outcome, &args.common),
                Err(msg) => usage_error(&msg),
            }
        }
        Command::Point(args) => run_point(&args),
        Command::Verify(args) => {
            let cfg = VerifyConfig {
                grid_n: args.grid_n,
                fault: args.inject_fault.map(Fault::from).unwrap_or_default(),
                ..VerifyConfig::default()
            };
            let report = run_verify(&cfg);
            print!("{}", report.render());
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(CHECK_FAILURE)
            }
        }
    }
}

fn sweep_options(common: &CommonSweepArgs) -> SweepOptions {
    SweepOptions {
        check: common.check,
        grid_n: common.grid_n,
        jobs: common.jobs.max(1),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_FAILURE)
}

fn emit_sweep(outcome: SweepOutcome, common: &CommonSweepArgs) -> ExitCode {
    let write_result = match &common.out {
        Some(path) => File::create(path)
            .and_then(|mut f| write_csv(&outcome.rows, &mut f)),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_csv(&outcome.rows, &mut lock).and_then(|()| lock.flush())
        }
    };
    if let Err(e) = write_result {
        eprintln!("error: could not write output: {e}");
        return ExitCode::from(CHECK_FAILURE);
    }
    if let Some(dev) = outcome.max_check_deviation {
        eprintln!("check: max deviation {dev:.3e} (tolerance {CHECK_TOL:.1e})");
        if dev > CHECK_TOL {
            eprintln!("check failed: closed forms and numerical oracle disagree");
            return ExitCode::from(CHECK_FAILURE);
        }
    }
    ExitCode::SUCCESS
}

fn run_point(args: &PointArgs) -> ExitCode {
    let st = match TwoParamState::new(args.r, args.t, args.d) {
        Ok(st) => st,
        Err(e) => return usage_error(&format!("--r {} --t {}: {e}", args.r, args.t)),
    };
    if !args.x.is_finite() || args.x < 0.0 {
        return usage_error(&format!("--x {} violates x >= 0", args.x));
    }
    let dephased = args.gamma_a != 0.0 || args.gamma_b != 0.0;
    if dephased && args.d != 3 {
        return usage_error(&format!(
            "--d {} violates d == 3 (the dephasing channel acts on qutrits)",
            args.d
        ));
    }
    let params = match DephasingParams::new(args.gamma_a, args.gamma_b) {
        Ok(p) => p,
        Err(e) => {
            return usage_error(&format!(
                "--gamma-a {} --gamma-b {}: {e}",
                args.gamma_a, args.gamma_b
            ))
        }
    };

    let point = if dephased {
        CorrelationPoint::from_closed_forms_dephased(&st, &params, args.x)
    } else {
        CorrelationPoint::from_closed_forms(&st, args.x)
    };
    println!("r = {}", fmt_sig12(point.r));
    println!("s = {}", fmt_sig12(point.s));
    println!("t = {}", fmt_sig12(point.t));
    println!("d = {}", args.d);
    println!("x = {}", fmt_sig12(args.x));
    println!("gamma_a = {}", fmt_sig12(args.gamma_a));
    println!("gamma_b = {}", fmt_sig12(args.gamma_b));
    println!("deficit_bits = {}", fmt_sig12(snap(point.deficit)));
    println!("weak_deficit_bits = {}", fmt_sig12(snap(point.weak_deficit)));
    println!("negativity = {}", fmt_sig12(snap(point.negativity)));

    if args.check {
        let oracle = if dephased {
            CorrelationPoint::from_numerical_dephased(&st, &params, args.x, args.grid_n)
        } else {
            CorrelationPoint::from_numerical(&st, args.x, args.grid_n)
        };
        let oracle = match oracle {
            Ok(o) => o,
            Err(e) => {
                eprintln!("error: numerical check failed: {e}");
                return ExitCode::from(CHECK_FAILURE);
            }
        };
        let dev = point.max_measure_deviation(&oracle);
        eprintln!("check: max deviation {dev:.3e} (tolerance {CHECK_TOL:.1e})");
        if dev > CHECK_TOL {
            eprintln!("check failed: closed forms and numerical oracle disagree");
            return ExitCode::from(CHECK_FAILURE);
        }
    }
    ExitCode::SUCCESS
}
