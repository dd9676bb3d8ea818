use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::ThreadPool;
use thresholdkit::{
    certify, ct_brieskorn_unsorted, lct_brieskorn, maximin_lp, NewtonDiagram, Rational, SearchConfig,
    SearchStatus, VariableSet,
};

use crate::batch::{run_batch, write_outputs, write_outputs_atomic};
use crate::render::{report_text, to_json, BrieskornOutput, CertificateOutput, LctOutput};
use crate::sweep::{run_sweep, write_csv};
use crate::{diagram_from_file, diagram_from_text, exit, CliError, ComputeOptions};

/// Exact canonical and log canonical thresholds of hypersurface singularities.
#[derive(Debug, Parser)]
#[command(name = "thresholdkit", version)]
pub struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Hard cap on the weight-vector norm explored by the search.
    #[arg(long, global = true, env = "THRESHOLDKIT_MAX_BOUND", value_name = "INT")]
    pub max_bound: Option<u64>,

    /// Use the exhaustive oracle over weights with coordinates up to CAP.
    #[arg(long, global = true, value_name = "CAP")]
    pub brute: Option<u64>,

    /// Worker threads for `sweep` and `batch`.
    #[arg(long, global = true, value_name = "THREADS")]
    pub parallel: Option<usize>,

    /// Comma-separated variable names, e.g. `x,y,z,w`.
    #[arg(long, global = true, value_name = "NAMES")]
    pub vars: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Polynomial such as "x^3+y^7+z^11", or an inline diagram {"n":3,"points":[...]}.
    #[arg(required_unless_present = "file")]
    pub input: Option<String>,

    /// Read the polynomial or diagram JSON from a file.
    #[arg(short, long, conflicts_with = "input")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical threshold.
    Ct(InputArgs),
    /// Log canonical threshold of the diagram.
    Lct(InputArgs),
    /// Closed-form threshold of x^a + y^b + z^c.
    Brieskorn {
        a: u64,
        b: u64,
        c: u64,
        /// Also run the general engine and compare.
        #[arg(long)]
        verify: bool,
    },
    /// CSV sweep over all triples 2 <= a <= b <= c <= MAX.
    Sweep { max: u64 },
    /// JSON-lines batch; FILE may be `-` for stdin.
    Batch {
        file: PathBuf,
        /// Write results to this file, replaced atomically.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that C is the canonical threshold.
    Verify {
        threshold: Rational,
        #[command(flatten)]
        input: InputArgs,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    exit::OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    exit::USAGE
                }
            };
        }
    };
    let result = match cli.parallel {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => dispatch(&cli, Some(&pool), out, err),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} worker threads: {e}"))),
        },
        None => dispatch(&cli, None, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn options(cli: &Cli) -> Result<ComputeOptions, CliError> {
    let vars = cli.vars.as_deref().map(VariableSet::from_list).transpose()?;
    let mut search = SearchConfig::default();
    if let Some(b) = cli.max_bound {
        search.max_bound = b;
    }
    Ok(ComputeOptions {
        search,
        brute: cli.brute,
        vars,
    })
}

fn load(input: &InputArgs, opts: &ComputeOptions) -> Result<NewtonDiagram, CliError> {
    match (&input.input, &input.file) {
        (_, Some(path)) => diagram_from_file(path, opts.vars.as_ref()),
        (Some(text), None) => diagram_from_text(text, opts.vars.as_ref()),
        (None, None) => Err(CliError::Usage("missing input".into())),
    }
}

fn in_pool<R: Send>(pool: Option<&ThreadPool>, f: impl FnOnce() -> R + Send) -> R {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn dispatch(
    cli: &Cli,
    pool: Option<&ThreadPool>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let opts = options(cli)?;
    match &cli.command {
        Command::Ct(input) => {
            let report = opts.ct(&load(input, &opts)?)?;
            if cli.json {
                writeln!(out, "{}", to_json(&report))?;
            } else {
                write!(out, "{}", report_text(&report))?;
            }
            Ok(match report.status {
                SearchStatus::Complete => exit::OK,
                SearchStatus::BoundExceeded => exit::BOUND_EXCEEDED,
            })
        }
        Command::Lct(input) => {
            let d = load(input, &opts)?;
            if d.has_origin() {
                return Err(thresholdkit::Error::UnitAtOrigin.into());
            }
            let relaxation = maximin_lp(d.generators(), d.dim())?.value.recip();
            let o = LctOutput::new(relaxation);
            if cli.json {
                writeln!(out, "{}", to_json(&o))?;
            } else {
                write!(out, "{}", o.text())?;
            }
            Ok(exit::OK)
        }
        Command::Brieskorn { a, b, c, verify } => {
            let exps = [*a, *b, *c];
            let closed = ct_brieskorn_unsorted(exps)?;
            let mut o = BrieskornOutput::new(exps, closed, lct_brieskorn(&exps)?);
            if *verify {
                let d = NewtonDiagram::from_points(3, &[vec![*a, 0, 0], vec![0, *b, 0], vec![0, 0, *c]])?;
                let report = opts.ct(&d)?;
                o.verified = Some(report.status == SearchStatus::Complete && report.value == o.value);
            }
            if cli.json {
                writeln!(out, "{}", to_json(&o))?;
            } else {
                write!(out, "{}", o.text())?;
            }
            Ok(if o.verified == Some(false) { exit::MISMATCH } else { exit::OK })
        }
        Command::Sweep { max } => {
            let (records, summary) = in_pool(pool, || run_sweep(*max, &opts.search))?;
            write_csv(&records, &mut *out)?;
            writeln!(err, "{}", summary.line(*max))?;
            for t in &summary.mismatches {
                writeln!(err, "engine mismatch at {t}")?;
            }
            for (t, v) in &summary.gap_violations {
                writeln!(err, "gap violation at {t}: {v}")?;
            }
            for t in &summary.lct_violations {
                writeln!(err, "lct below ct at {t}")?;
            }
            Ok(if summary.violations() == 0 { exit::OK } else { exit::MISMATCH })
        }
        Command::Batch { file, out: out_path } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(file)?
            };
            let outputs = in_pool(pool, || run_batch(&text, &opts));
            match out_path {
                Some(p) => write_outputs_atomic(&outputs, p)?,
                None => write_outputs(&outputs, &mut *out)?,
            }
            let failed = outputs.iter().filter(|o| o.is_error()).count();
            if failed > 0 {
                writeln!(err, "{failed} of {} lines failed", outputs.len())?;
                return Ok(exit::USAGE);
            }
            let partial = outputs.iter().any(|o| {
                matches!(o, crate::batch::BatchOutput::Result { result, .. } if result.status == SearchStatus::BoundExceeded)
            });
            Ok(if partial { exit::BOUND_EXCEEDED } else { exit::OK })
        }
        Command::Verify { threshold, input } => {
            let d = load(input, &opts)?;
            let cert = certify(&d, threshold, &opts.search)?;
            let o = CertificateOutput::new(threshold.clone(), cert);
            if cli.json {
                writeln!(out, "{}", to_json(&o))?;
            } else {
                write!(out, "{}", o.text())?;
            }
            Ok(if o.holds { exit::OK } else { exit::MISMATCH })
        }
    }
}
