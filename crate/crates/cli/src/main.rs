use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use heesch_cli::batch::{enumerate_shapes, format_report, read_shapes, run_batch, Record};
use heesch_cli::histogram::{format_histogram, histogram, Measure};
use heesch_cli::{emit_witness, render_svg};
use heesch_core::cnf::{format_output, parse_dimacs, Budget, ExternalSolver, SolveSession, SolveStatus, SolverBackend, SolverOutput};
use heesch_core::engine::Measures;
use heesch_core::{EncodeMode, EngineConfig, GridKind, Witness};

#[derive(Parser)]
#[command(name = "heesch", version, about = "Heesch numbers of polyominoes, polyhexes and polyiamonds")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DIMACS file with the built-in solver and print SAT-competition output.
    Solve {
        file: PathBuf,
        /// Budget such as `100000`, `30s` or `100000,30s`.
        #[arg(long)]
        budget: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Modes {
    Hc,
    Hh,
    Both,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridKind>,
    /// Shape file, one `[id:] x,y x,y ...` per line.
    #[arg(long, conflicts_with = "enumerate")]
    input: Option<PathBuf>,
    /// Classify every simply connected free polyform of this order.
    #[arg(long)]
    enumerate: Option<usize>,
    /// Largest number of coronas searched for.
    #[arg(long, default_value_t = 6)]
    cutoff: usize,
    #[arg(long, value_enum, default_value_t = Modes::Both)]
    modes: Modes,
    /// `builtin`, or `cmd:TEMPLATE` where `{}` in TEMPLATE stands for the DIMACS path.
    #[arg(long, default_value = "builtin")]
    solver: String,
    /// Conflicts per formula and/or time per shape: `100000`, `30s`, `100000,30s`.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the TSV report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for witness files.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Directory for SVG drawings.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print tables of finite shapes per Heesch number.
    #[arg(long)]
    histogram: bool,
}

fn parse_grid(s: &str) -> Result<GridKind, String> {
    s.parse()
}

fn parse_budget(s: &str) -> Result<Budget> {
    let mut b = Budget::UNLIMITED;
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(ms) = tok.strip_suffix("ms") {
            b.time = Some(Duration::from_millis(ms.parse().with_context(|| format!("bad budget {tok:?}"))?));
        } else if let Some(secs) = tok.strip_suffix('s') {
            let secs: f64 = secs.parse().with_context(|| format!("bad budget {tok:?}"))?;
            b.time = Some(Duration::from_secs_f64(secs));
        } else {
            let c = tok.strip_suffix('c').unwrap_or(tok);
            b.conflicts = Some(c.parse().with_context(|| format!("bad budget {tok:?}"))?);
        }
    }
    Ok(b)
}

fn parse_solver(s: &str) -> Result<SolverBackend> {
    match s {
        "builtin" => Ok(SolverBackend::Builtin),
        _ => match s.strip_prefix("cmd:") {
            Some(t) if !t.trim().is_empty() => Ok(SolverBackend::External(ExternalSolver::new(t))),
            _ => bail!("--solver must be `builtin` or `cmd:COMMAND`"),
        },
    }
}

fn file_stem(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn write_outputs(records: &[Record], witness_dir: Option<&Path>, svg_dir: Option<&Path>) -> Result<()> {
    for dir in [witness_dir, svg_dir].into_iter().flatten() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for r in records {
        let Ok(h) = &r.result else { continue };
        let parts: [(&str, Option<&Witness>, EncodeMode); 2] = [
            ("hc", h.h_c.as_ref().map(|m| &m.witness), EncodeMode::HOLE_FREE),
            ("hh", h.h_h.as_ref().map(|m| &m.witness), EncodeMode::HOLES_ALLOWED),
        ];
        for (tag, w, mode) in parts {
            let Some(w) = w else { continue };
            let stem = format!("{}.{tag}", file_stem(&r.id));
            if let Some(d) = witness_dir {
                fs::write(d.join(format!("{stem}.txt")), emit_witness(w, mode))?;
            }
            if let Some(d) = svg_dir {
                fs::write(d.join(format!("{stem}.svg")), render_svg(w))?;
            }
        }
    }
    Ok(())
}

fn classify(args: RunArgs) -> Result<ExitCode> {
    let Some(grid) = args.grid else { bail!("--grid is required") };
    if args.cutoff < 1 {
        bail!("--cutoff must be at least 1");
    }
    if args.jobs < 1 {
        bail!("--jobs must be at least 1");
    }
    let inputs = match (&args.input, args.enumerate) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            read_shapes(&text, grid)
        }
        (None, Some(n)) => enumerate_shapes(grid, n, true).map_err(anyhow::Error::msg)?,
        _ => bail!("give exactly one of --input FILE and --enumerate N"),
    };
    let mut config = EngineConfig::with_cutoff(args.cutoff);
    config.backend = parse_solver(&args.solver)?;
    if let Some(b) = &args.budget {
        config.budget = parse_budget(b)?;
    }
    let measures = match args.modes {
        Modes::Hc => Measures::HoleFree,
        Modes::Hh => Measures::HolesAllowed,
        Modes::Both => Measures::Both,
    };

    let records = run_batch(&inputs, &config, measures, args.jobs);
    let report = format_report(&records);
    match &args.report {
        Some(p) => fs::write(p, &report).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(report.as_bytes())?,
    }
    write_outputs(&records, args.witness.as_deref(), args.svg.as_deref())?;
    if args.histogram {
        // keep standard output parseable as TSV when the report goes there too
        let prefix = if args.report.is_none() { "# " } else { "" };
        let mut shown = Vec::new();
        if matches!(args.modes, Modes::Hc | Modes::Both) {
            shown.push(Measure::HoleFree);
        }
        if matches!(args.modes, Modes::Hh | Modes::Both) {
            shown.push(Measure::HolesAllowed);
        }
        for m in shown {
            for line in format_histogram(&histogram(&records, m), m).lines() {
                println!("{prefix}{line}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(file: &Path, budget: Option<&str>) -> Result<ExitCode> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let formula = parse_dimacs(&text)?;
    let mut session = SolveSession::from_formula(formula, SolverBackend::Builtin);
    if let Some(b) = budget {
        session.set_budget(parse_budget(b)?);
    }
    let (out, code) = match session.solve()? {
        SolveStatus::Sat => (SolverOutput::Sat(session.model().unwrap_or_default().to_vec()), 10),
        SolveStatus::Unsat => (SolverOutput::Unsat, 20),
        SolveStatus::BudgetExceeded => (SolverOutput::Unknown, 0),
    };
    print!("{}", format_output(&out));
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Solve { file, budget }) => solve(&file, budget.as_deref()),
        None => classify(cli.run),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("heesch: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_forms() {
        assert_eq!(parse_budget("500").unwrap().conflicts, Some(500));
        let b = parse_budget("500c,1.5s").unwrap();
        assert_eq!(b.time, Some(Duration::from_millis(1500)));
        assert_eq!(parse_budget("20ms").unwrap().time, Some(Duration::from_millis(20)));
        assert!(parse_budget("fast").is_err());
    }

    #[test]
    fn solver_forms() {
        assert_eq!(parse_solver("builtin").unwrap(), SolverBackend::Builtin);
        assert!(matches!(parse_solver("cmd:kissat {}").unwrap(), SolverBackend::External(_)));
        assert!(parse_solver("cmd:").is_err());
    }
}
