use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use bwc_cli::commands::{self, BoundArgs, Outcome, SdpArgs, SdpMethod};
use bwc_cli::config::{pick, Config};
use bwc_cli::report::{Format, TableId, TableOptions};
use bwc_core::asymptotics::{Rounding, TranslateMode};
use bwc_core::bounds::{CodeQuantity, RuleSet};
use bwc_core::exact::Target;
use bwc_core::Result;
use clap::{Parser, Subcommand, ValueEnum};

/// Bounds, tables and exact values for binary codes with weight constraints.
///
/// Settings are taken from flags first, then from the JSON file given with
/// --config, then from built-in defaults. Exit status: 0 on success, 1 on a
/// solver or IO failure, 2 on a usage error or violated constraint, 3 when a
/// search budget ran out (the partial result is still printed).
#[derive(Parser, Debug)]
#[command(name = "bwc", version)]
struct Cli {
    /// Asset directory with the known-values table and code files.
    #[arg(long, global = true, env = "BWC_ASSETS")]
    assets: Option<PathBuf>,
    /// JSON config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Stream solver progress to stderr.
    #[arg(long, global = true)]
    progress: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuantityArg {
    B,
    L,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RulesArg {
    All,
    Elementary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    A,
    Aw,
    B,
    L,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Theta,
    Poly2,
    Poly,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RoundingArg {
    Exact,
    Floor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Best certified interval for B(n,d,w) or L(n,d,w).
    Bound {
        #[arg(long, value_enum, ignore_case = true, default_value = "b")]
        quantity: QuantityArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, value_enum, ignore_case = true)]
        rules: Option<RulesArg>,
        /// Also apply the self-dual lower bound.
        #[arg(long)]
        asymptotic_rules: bool,
        /// Add the theta-prime bound of the instance.
        #[arg(long)]
        with_sdp: bool,
        /// Add the result of an exact search.
        #[arg(long)]
        with_exact: bool,
        #[arg(long)]
        budget_secs: Option<u64>,
        #[arg(long)]
        sdp_tol: Option<f64>,
    },
    /// Regenerate table I, II, III (intervals for B) or IV, V, VI (SDP bounds on L).
    Table {
        which: String,
        #[arg(long, value_enum, ignore_case = true)]
        format: Option<FormatArg>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, ignore_case = true)]
        rules: Option<RulesArg>,
        #[arg(long)]
        sdp_tol: Option<f64>,
    },
    /// Solve the SDP bounding L(n,d,w).
    Sdp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, value_enum, ignore_case = true, default_value = "theta")]
        method: MethodArg,
        /// Polynomial degree for --method poly.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Write the program in SDPA sparse format.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long)]
        sdp_tol: Option<f64>,
    },
    /// Exact value by maximum clique search.
    Exact {
        #[arg(long, value_enum, ignore_case = true)]
        target: TargetArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        w: u32,
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Bounds on the exponent b(δ,ω).
    Asym {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value = "gv-trivial")]
        plugs: String,
    },
    /// Translate a constant weight code to heavier weight.
    Translate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        w2: u32,
        #[arg(long, value_enum, ignore_case = true, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum, ignore_case = true, default_value = "exact")]
        rounding: RoundingArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check every shipped code and the known-values table.
    VerifyAssets,
}

fn rules(r: Option<RulesArg>) -> Option<RuleSet> {
    r.map(|r| match r {
        RulesArg::All => RuleSet::All,
        RulesArg::Elementary => RuleSet::Elementary,
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let assets = cfg.assets(cli.assets.clone());
    let defaults = TableOptions::default();
    let budget = |flag: Option<u64>| Duration::from_secs(pick(flag, cfg.budget_secs, 60));
    let tol = |flag: Option<f64>| pick(flag, cfg.sdp_tol, defaults.sdp_tol);
    let max_iterations = pick(None, cfg.sdp_max_iterations, defaults.sdp_max_iterations);
    match cli.command {
        Command::Bound { quantity, n, d, w, rules: r, asymptotic_rules, with_sdp, with_exact, budget_secs, sdp_tol } => {
            let args = BoundArgs {
                quantity: match quantity {
                    QuantityArg::B => CodeQuantity::B,
                    QuantityArg::L => CodeQuantity::L,
                },
                n,
                d,
                w,
                rules: pick(rules(r), cfg.rules, RuleSet::All),
                asymptotic_rules: asymptotic_rules || cfg.asymptotic_rules.unwrap_or(false),
                with_sdp,
                with_exact,
                budget: budget(budget_secs),
                sdp_tol: tol(sdp_tol),
                sdp_max_iterations: max_iterations,
                progress: cli.progress,
            };
            commands::run_bound(&args, &assets)
        }
        Command::Table { which, format, threads, rules: r, sdp_tol } => {
            let id: TableId = which.parse()?;
            let format = format.map(|f| match f {
                FormatArg::Md => Format::Md,
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            });
            let opts = TableOptions {
                rules: pick(rules(r), cfg.rules, defaults.rules),
                asymptotic_rules: cfg.asymptotic_rules.unwrap_or(defaults.asymptotic_rules),
                sdp_tol: tol(sdp_tol),
                sdp_max_iterations: max_iterations,
                threads: pick(threads, cfg.threads, defaults.threads),
            };
            commands::run_table_command(id, pick(format, cfg.format, Format::Md), &opts, &assets)
        }
        Command::Sdp { n, d, w, method, degree, export, sdp_tol } => commands::run_sdp(&SdpArgs {
            n,
            d,
            w,
            method: match method {
                MethodArg::Theta => SdpMethod::Theta,
                MethodArg::Poly2 => SdpMethod::Poly { degree: 2 },
                MethodArg::Poly => SdpMethod::Poly { degree },
            },
            export,
            sdp_tol: tol(sdp_tol),
            sdp_max_iterations: max_iterations,
            progress: cli.progress,
        }),
        Command::Exact { target, n, d, w, budget_secs } => {
            let target = match target {
                TargetArg::A => Target::A,
                TargetArg::Aw => Target::Aw,
                TargetArg::B => Target::B,
                TargetArg::L => Target::L,
            };
            commands::run_exact(target, n, d, w, budget(budget_secs))
        }
        Command::Asym { delta, omega, plugs } => commands::run_asym(delta, omega, &plugs),
        Command::Translate { code, w2, mode, trials, rounding, seed } => {
            let mode = match mode {
                ModeArg::Exhaustive => TranslateMode::Exhaustive,
                ModeArg::Random => TranslateMode::Random { trials },
            };
            let rounding = match rounding {
                RoundingArg::Exact => Rounding::Exact,
                RoundingArg::Floor => Rounding::Floor,
            };
            commands::run_translate(&code, w2, mode, rounding, pick(seed, cfg.seed, 0))
        }
        Command::VerifyAssets => commands::run_verify_assets(&assets),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
