//! Batch interface over the class calculus: group listings, structure
//! constants, CSM/SSM matrices, intersection characteristics, and the
//! verification sweeps, as JSON or CSV on standard output.
//!
//! Exit codes: 0 clean, 1 when a verification reports a violation or
//! mismatch, 2 on input errors. Identical invocations print identical
//! bytes; `--jobs` changes wall time, never output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use csmcalc::cache::{self, CacheOutcome};
use csmcalc::error::{Error, Result};
use csmcalc::report::{self, ClassKind};
use csmcalc::root_system::RootSystem;
use csmcalc::weyl::WeylGroup;
use csmcalc::{euler, oracle, Space};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Above this tuple count the n-fold sweep samples (seeded) instead of
/// enumerating.
const SWEEP_SAMPLE_CAP: usize = 20_000;

#[derive(Parser)]
#[command(
    name = "csmcalc",
    version,
    about = "Exact CSM/SSM class calculus on flag varieties, with verification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    /// Directory for persistent space caches.
    #[arg(long, global = true, env = "CSMCALC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for sweeps (0 or absent: all available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GroupArgs {
    /// Type label: A1..A4, B2..B4, C2..C4, D3, D4, G2, F4.
    #[arg(long = "type")]
    type_label: Option<String>,
    /// Cartan matrix as JSON rows, e.g. [[2,-1],[-1,2]].
    #[arg(long, conflicts_with = "type_label")]
    cartan: Option<String>,
}

#[derive(Args)]
struct SpaceArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Simple reflections generating the parabolic, e.g. "1,3"; empty
    /// for the full flag variety.
    #[arg(long, default_value = "")]
    parabolic: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the Weyl group: reduced words, lengths, alternative words.
    Weyl {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Schubert structure constants of the space.
    Table {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// CSM classes of Schubert cells in the Schubert basis.
    Csm {
        #[command(flatten)]
        space: SpaceArgs,
        /// Restrict to these cells (comma-separated reduced words).
        #[arg(long)]
        cells: Option<String>,
    },
    /// SSM classes of Schubert cells in the Schubert basis.
    Ssm {
        #[command(flatten)]
        space: SpaceArgs,
        /// Restrict to these cells (comma-separated reduced words).
        #[arg(long)]
        cells: Option<String>,
    },
    /// Euler characteristic of a generic intersection of the cells.
    Chi {
        #[command(flatten)]
        space: SpaceArgs,
        /// Cells to intersect (comma-separated reduced words, repeats allowed).
        #[arg(long)]
        cells: String,
    },
    /// SSM structure constants of a product of two cells.
    Constants {
        #[command(flatten)]
        space: SpaceArgs,
        /// Exactly two cells (comma-separated reduced words).
        #[arg(long)]
        cells: String,
    },
    /// Orthogonality and positivity sweeps; with --n, the n-fold sign sweep.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        /// Sweep n-fold intersections instead of the triple report.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Pipeline vs closed-form characteristics on projective n-space.
    OracleCheck {
        /// Projective dimension.
        #[arg(long)]
        n: usize,
        /// Largest multiset of cells to sweep.
        #[arg(long, default_value_t = 4)]
        max_cells: usize,
    },
}

impl GroupArgs {
    fn root_system(&self) -> Result<RootSystem> {
        match (&self.type_label, &self.cartan) {
            (Some(label), None) => RootSystem::from_label(label),
            (None, Some(text)) => {
                let cartan: Vec<Vec<i64>> = serde_json::from_str(text)
                    .map_err(|e| Error::Parse(format!("Cartan matrix JSON: {e}")))?;
                RootSystem::from_cartan("custom", cartan)
            }
            _ => Err(Error::Parse("give exactly one of --type or --cartan".into())),
        }
    }
}

fn parse_subset(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let i: usize = tok
            .parse()
            .map_err(|_| Error::Parse(format!("parabolic index '{tok}' is not a number")))?;
        out.push(i);
    }
    Ok(out)
}

fn parse_cells(space: &Space, text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        out.push(space.cell_by_word(tok)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("no cells given".into()));
    }
    Ok(out)
}

fn load_space(dir: Option<&Path>, rs: RootSystem, subset: &[usize]) -> Result<Space> {
    match dir {
        None => Space::new(rs, subset),
        Some(d) => {
            let (space, outcome) = cache::resolve_space(d, rs, subset)?;
            if let CacheOutcome::Built { note: Some(n) } = &outcome {
                eprintln!("warning: {n}");
            }
            Ok(space)
        }
    }
}

fn resolve(args: &SpaceArgs, dir: Option<&Path>) -> Result<Space> {
    let rs = args.group.root_system()?;
    let subset = parse_subset(&args.parabolic)?;
    load_space(dir, rs, &subset)
}

fn emit<T: Serialize>(fmt: Format, doc: &T, csv: impl FnOnce() -> String) -> Result<()> {
    let text = match fmt {
        Format::Json => report::to_json(doc)?,
        Format::Csv => csv(),
    };
    print!("{text}");
    Ok(())
}

/// Runs one command; the returned flag means a verification violation
/// (exit 1), as opposed to an error (exit 2).
fn run(cli: Cli) -> Result<bool> {
    let fmt = cli.out;
    let dir = cli.cache_dir.as_deref();
    match cli.cmd {
        Cmd::Weyl { group } => {
            let g = WeylGroup::new(group.root_system()?)?;
            let d = report::weyl_dump(&g);
            emit(fmt, &d, || report::weyl_csv(&d))?;
            Ok(false)
        }
        Cmd::Table { space } => {
            let s = resolve(&space, dir)?;
            let d = report::table_dump(&s);
            emit(fmt, &d, || report::table_csv(&d))?;
            Ok(false)
        }
        Cmd::Csm { space, cells } => {
            class_command(&resolve(&space, dir)?, ClassKind::Csm, cells.as_deref(), fmt)
        }
        Cmd::Ssm { space, cells } => {
            class_command(&resolve(&space, dir)?, ClassKind::Ssm, cells.as_deref(), fmt)
        }
        Cmd::Chi { space, cells } => {
            let s = resolve(&space, dir)?;
            let picked = parse_cells(&s, &cells)?;
            let d = report::chi_dump(&s, &picked)?;
            emit(fmt, &d, || report::chi_csv(&d))?;
            Ok(false)
        }
        Cmd::Constants { space, cells } => {
            let s = resolve(&space, dir)?;
            let picked = parse_cells(&s, &cells)?;
            let [lambda, mu] = picked[..] else {
                return Err(Error::Parse("constants needs exactly two cells".into()));
            };
            let d = report::constants_dump(&s, lambda, mu)?;
            emit(fmt, &d, || report::constants_csv(&d))?;
            Ok(false)
        }
        Cmd::Verify { space, n } => {
            let s = resolve(&space, dir)?;
            match n {
                None => {
                    let doc = report::verify_doc(&s)?;
                    emit(fmt, &doc, || report::triple_csv(&doc.positivity))?;
                    Ok(!doc.clean)
                }
                Some(n) => {
                    let rep = euler::verify_nfold(&s, n, SWEEP_SAMPLE_CAP)?;
                    emit(fmt, &rep, || report::nfold_csv(&rep))?;
                    Ok(rep.violations > 0)
                }
            }
        }
        Cmd::OracleCheck { n, max_cells } => {
            let (label, subset) = oracle::projective_presentation(n)?;
            let s = load_space(dir, RootSystem::from_label(&label)?, &subset)?;
            let rep = oracle::proj_cross_check_on(&s, n, max_cells)?;
            emit(fmt, &rep, || report::cross_csv(&rep))?;
            Ok(rep.mismatches > 0)
        }
    }
}

fn class_command(s: &Space, kind: ClassKind, cells: Option<&str>, fmt: Format) -> Result<bool> {
    let mut d = report::class_dump(s, kind);
    if let Some(text) = cells {
        let keep = parse_cells(s, text)?;
        d.classes = keep.into_iter().map(|p| d.classes[p].clone()).collect();
    }
    emit(fmt, &d, || report::class_csv(&d))?;
    Ok(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
