//! Command-line front end: mode analysis of wave-equation boundary
//! conditions and the finite-difference experiment suites.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 diverged run,
//! 4 analysis failure.

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use wavebc::config::{dispatch, Command as RunCommand, RunConfig};

#[derive(Parser)]
#[command(
    name = "wavebc",
    about = "Boundary-condition mode analysis and leapfrog experiments \
             for the second-order wave equation on a strip"
)]
struct Cli {
    /// Optional config file of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Output directory for CSV/report artifacts.
    #[arg(long, global = true)]
    out_dir: Option<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Default)]
struct SolveArgs {
    /// Boundary coefficient: 0, a real, or i<real> (e.g. i0.5).
    #[arg(long)]
    b: Option<String>,
    /// Comma-separated grid sizes h.
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    courant: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Monitor cadence in steps (0 = auto).
    #[arg(long)]
    cadence: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a boundary condition by Laplace-Fourier mode analysis.
    Analyze {
        /// type1 | type2 | type3 | type4 | coupled
        #[arg(long)]
        bc: Option<String>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        b1: Option<f64>,
        #[arg(long)]
        b2: Option<f64>,
    },
    /// Run one manufactured-solution simulation and record error monitors.
    Solve {
        #[command(flatten)]
        common: SolveArgs,
    },
    /// Traveling-wave convergence table over a list of grid sizes.
    Table1 {
        #[command(flatten)]
        common: SolveArgs,
    },
    /// Surface-wave convergence table.
    Table2 {
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        omega0: Option<f64>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        courant: Option<f64>,
    },
    /// Max-norm growth study for an ill-posed real coefficient.
    Growth {
        #[command(flatten)]
        common: SolveArgs,
    },
    /// Boundary-forcing pulse study across a list of beta values.
    Forcing {
        /// Comma-separated beta values.
        #[arg(long)]
        beta: Option<String>,
        /// g | gt | gtt
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        omega0: Option<f64>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        courant: Option<f64>,
    },
    /// Reflection-cascade characteristic roots.
    Roots {
        /// loss | gain
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn push_opt<T: ToString>(out: &mut Vec<(String, String)>, key: &str, v: &Option<T>) {
    if let Some(v) = v {
        out.push((key.to_string(), v.to_string()));
    }
}

fn solve_overrides(args: &SolveArgs, out: &mut Vec<(String, String)>) {
    push_opt(out, "b", &args.b);
    push_opt(out, "h", &args.h);
    push_opt(out, "courant", &args.courant);
    push_opt(out, "t_end", &args.t_end);
    push_opt(out, "cadence", &args.cadence);
}

fn build_config(cli: &Cli) -> Result<RunConfig, wavebc::config::ConfigError> {
    let (command, mut flags) = match &cli.command {
        Cmd::Analyze { bc, a, b, b1, b2 } => {
            let mut f = Vec::new();
            push_opt(&mut f, "bc", bc);
            push_opt(&mut f, "a", a);
            push_opt(&mut f, "b", b);
            push_opt(&mut f, "b1", b1);
            push_opt(&mut f, "b2", b2);
            (RunCommand::Analyze, f)
        }
        Cmd::Solve { common } => {
            let mut f = Vec::new();
            solve_overrides(common, &mut f);
            (RunCommand::Solve, f)
        }
        Cmd::Table1 { common } => {
            let mut f = Vec::new();
            solve_overrides(common, &mut f);
            (RunCommand::Table1, f)
        }
        Cmd::Table2 {
            beta,
            omega0,
            h,
            courant,
        } => {
            let mut f = Vec::new();
            push_opt(&mut f, "beta", beta);
            push_opt(&mut f, "omega0", omega0);
            push_opt(&mut f, "h", h);
            push_opt(&mut f, "courant", courant);
            (RunCommand::Table2, f)
        }
        Cmd::Growth { common } => {
            let mut f = Vec::new();
            solve_overrides(common, &mut f);
            (RunCommand::Growth, f)
        }
        Cmd::Forcing {
            beta,
            variant,
            h,
            omega0,
            t_end,
            courant,
        } => {
            let mut f = Vec::new();
            push_opt(&mut f, "beta_list", beta);
            push_opt(&mut f, "variant", variant);
            push_opt(&mut f, "h", h);
            push_opt(&mut f, "omega0", omega0);
            push_opt(&mut f, "t_end", t_end);
            push_opt(&mut f, "courant", courant);
            (RunCommand::Forcing, f)
        }
        Cmd::Roots { case, n } => {
            let mut f = Vec::new();
            push_opt(&mut f, "case", case);
            push_opt(&mut f, "n_roots", n);
            (RunCommand::Roots, f)
        }
    };
    push_opt(&mut flags, "out_dir", &cli.out_dir);

    let mut cfg = RunConfig::defaults(command);
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            wavebc::config::ConfigError::InvalidValue {
                key: "config".to_string(),
                value: path.display().to_string(),
                reason: e.to_string(),
            }
        })?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                wavebc::config::ConfigError::InvalidValue {
                    key: line.to_string(),
                    value: String::new(),
                    reason: "expected key = value".to_string(),
                }
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k == "command" {
                continue; // the subcommand on the command line wins
            }
            cfg.apply(k, v)?;
        }
    }
    for (k, v) in &flags {
        cfg.apply(k, v)?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match dispatch(&cfg) {
        Ok(report) => {
            println!("{}", report.summary);
            for a in &report.artifacts {
                println!("wrote {}", a.display());
            }
            // Echo the analysis report to stdout for quick inspection.
            if cfg.command == RunCommand::Analyze {
                if let Some(path) = report.artifacts.first() {
                    if let Ok(text) = std::fs::read_to_string(path) {
                        print!("{text}");
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
