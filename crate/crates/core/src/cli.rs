//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
//! 3 resource cap exceeded.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::lct::{self, ThresholdReport, Witness};
use crate::output::{self, ResultRecord};
use crate::parse::parse_poly;
use crate::poly::{Poly, ThresholdValue};
use crate::rat::Rat;
use crate::sets::{self, ThresholdSetSample};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lct", version, about = "Exact log canonical thresholds via Newton polyhedra")]
struct Cli {
    /// Emit a single JSON record (one per line in batch mode).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit threshold sets as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Suppress human-readable output.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Newton threshold of a polynomial.
    Lct {
        #[arg(allow_hyphen_values = true, required_unless_present = "file")]
        poly: Option<String>,
        /// Coefficients are not asserted general: report an upper bound.
        #[arg(long)]
        degenerate: bool,
        /// Read one polynomial per line and emit one record per line.
        #[arg(long, conflicts_with = "poly")]
        file: Option<PathBuf>,
        /// Number of variables, if larger than the highest one used.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Diagonal parameter, facets, and per-facet bounds.
    Hull {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Multiplicity bracket `[1/mult, min(1, n/mult)]`.
    Bounds {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Threshold of a direct sum from the summands' thresholds.
    Dsum { first: String, second: String },
    /// Degree-m Taylor truncation and how far it can move the threshold.
    Truncate {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        m: u64,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// `{0} ∪ {1/k : k <= K}`.
    Ht1 {
        k: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-variable thresholds with parameters up to B.
    Ht2 {
        b: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Thresholds of seeded random supports.
    Toric {
        n: usize,
        d: u32,
        count: usize,
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dense windows of a threshold set read from a file.
    Accumulate { setfile: PathBuf, delta: String, k: usize },
    /// Check `c + 1/m` thresholds for m up to M.
    Family { c: String, m: u64 },
    /// Largest sum of n unit fractions below 1.
    Gap { n: usize },
    /// First k Sylvester numbers.
    Sylvester { k: usize },
    /// `1/(c_{n+1} - 1)`.
    Epsilon { n: usize },
    /// Check `N(f + g) <= min(1, N(f) + N(g))`.
    Subadd {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Compare the threshold with that of a coordinate restriction
    /// (coordinates numbered from 1).
    Restrict {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(required = true, num_args = 1..)]
        keep: Vec<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lct { .. } => "lct",
            Command::Hull { .. } => "hull",
            Command::Bounds { .. } => "bounds",
            Command::Dsum { .. } => "dsum",
            Command::Truncate { .. } => "truncate",
            Command::Ht1 { .. } => "ht1",
            Command::Ht2 { .. } => "ht2",
            Command::Toric { .. } => "toric",
            Command::Accumulate { .. } => "accumulate",
            Command::Family { .. } => "family",
            Command::Gap { .. } => "gap",
            Command::Sylvester { .. } => "sylvester",
            Command::Epsilon { .. } => "epsilon",
            Command::Subadd { .. } => "subadd",
            Command::Restrict { .. } => "restrict",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Text,
    Json,
    Csv,
}

enum Payload {
    Record { result: Value, text: String },
    /// Rendered on demand; these can hold millions of values.
    Sample(ThresholdSetSample),
}

struct Outcome {
    payload: Payload,
    code: i32,
}

impl Outcome {
    fn new(result: Value, text: String) -> Self {
        Outcome {
            payload: Payload::Record { result, text },
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => EXIT_VALIDATION,
        Error::ResourceCap { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn poly_arg(text: &str, dim: Option<usize>) -> Result<Poly, Error> {
    Ok(parse_poly(text, dim)?)
}

fn rat_arg(text: &str) -> Result<Rat, Error> {
    text.parse()
        .map_err(|e| Error::InvalidArgument(format!("`{text}`: {e}")))
}

fn bounds_json(b: &Option<(Rat, Rat)>) -> Value {
    match b {
        Some((lo, hi)) => json!({ "lower": lo, "upper": hi }),
        None => Value::Null,
    }
}

pub fn report_json(r: &ThresholdReport) -> Value {
    json!({
        "value": r.value,
        "exact": r.is_exact(),
        "exactness": r.exactness,
        "witness": r.witness,
        "bounds": bounds_json(&r.bounds),
    })
}

fn report_text(f: &Poly, r: &ThresholdReport) -> String {
    let mut s = format!(
        "lct({f}) = {} [{}]\n",
        r.value,
        if r.is_exact() { "exact" } else { "upper bound" }
    );
    match &r.witness {
        Witness::Facet { facet, diagonal } => {
            s += &format!(
                "t* = {diagonal} on facet {} >= {}\n",
                linear_form(&facet.normal),
                facet.offset
            );
        }
        Witness::DiagonalLp { diagonal } => s += &format!("t* = {diagonal}\n"),
        Witness::ZeroPolynomial => s += "zero polynomial\n",
        Witness::ConstantTerm => s += "nonzero constant term\n",
    }
    if let Some((lo, hi)) = &r.bounds {
        s += &format!("multiplicity bracket [{lo}, {hi}]\n");
    }
    s
}

fn linear_form(normal: &[u64]) -> String {
    let names: Vec<String> = if normal.len() <= 4 {
        ["x", "y", "z", "w"][..normal.len()].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=normal.len()).map(|i| format!("x{i}")).collect()
    };
    let parts: Vec<String> = normal
        .iter()
        .zip(&names)
        .filter(|(&a, _)| a > 0)
        .map(|(&a, v)| if a == 1 { v.clone() } else { format!("{a}{v}") })
        .collect();
    parts.join(" + ")
}

fn sample_outcome(sample: ThresholdSetSample) -> Outcome {
    Outcome {
        payload: Payload::Sample(sample),
        code: EXIT_OK,
    }
}

fn sample_json(sample: &ThresholdSetSample) -> Value {
    json!({
        "dim": sample.dim,
        "size": sample.len(),
        "values": sample.values,
        "provenance": sample.provenance,
    })
}

fn write_sample_text(sample: &ThresholdSetSample, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{} values", sample.len())?;
    for v in &sample.values {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

fn lct_one(text: &str, degenerate: bool, dim: Option<usize>) -> Result<Outcome, Error> {
    let f = poly_arg(text, dim)?.with_generic(!degenerate);
    let r = lct::lct_newton(&f);
    Ok(Outcome::new(report_json(&r), report_text(&f, &r)))
}

fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Lct {
            poly,
            degenerate,
            dim,
            ..
        } => lct_one(poly.as_deref().unwrap_or_default(), *degenerate, *dim),
        Command::Hull { poly, dim } => {
            let f = poly_arg(poly, *dim)?;
            if f.is_zero() {
                return Err(Error::EmptySupport);
            }
            let support = f.support();
            let t = crate::hull::diagonal_parameter(&support)?;
            let facets = crate::hull::facets(&support)?;
            let mut text = format!("t* = {t}\n");
            let rows: Vec<Value> = facets
                .iter()
                .map(|fc| {
                    let bound = fc.face_bound().ok();
                    text += &format!(
                        "{} >= {}{}  bound {}\n",
                        linear_form(&fc.normal),
                        fc.offset,
                        if fc.is_compact() { "" } else { " (non-compact)" },
                        bound.as_ref().map_or("-".to_string(), Rat::to_string)
                    );
                    json!({
                        "normal": fc.normal,
                        "offset": fc.offset,
                        "compact": fc.is_compact(),
                        "face_bound": bound,
                        "on_diagonal": fc.diagonal_crossing() == t,
                    })
                })
                .collect();
            Ok(Outcome::new(json!({ "t_star": t, "facets": rows }), text))
        }
        Command::Bounds { poly, dim } => {
            let f = poly_arg(poly, *dim)?;
            let (lo, hi) = lct::multiplicity_bounds(&f)?;
            let text = format!("[{lo}, {hi}]\n");
            Ok(Outcome::new(
                json!({ "order": f.order(), "lower": lo, "upper": hi }),
                text,
            ))
        }
        Command::Dsum { first, second } => {
            let a: ThresholdValue = first.parse()?;
            let b: ThresholdValue = second.parse()?;
            let v = lct::lct_direct_sum(&a, &b);
            Ok(Outcome::new(json!({ "value": v }), format!("{v}\n")))
        }
        Command::Truncate { poly, m, dim } => {
            let f = poly_arg(poly, *dim)?;
            let t = f.truncate(*m);
            let bound = lct::truncation_bound(f.dim() as u64, *m)?;
            Ok(Outcome::new(
                json!({ "poly": t.to_string(), "dim": t.dim(), "bound": bound }),
                format!("{t}\nbound {bound}\n"),
            ))
        }
        Command::Ht1 { k, .. } => Ok(sample_outcome(sets::ht1(*k)?)),
        Command::Ht2 { b, .. } => Ok(sample_outcome(sets::ht2_enumerate(*b)?)),
        Command::Toric {
            n, d, count, seed, ..
        } => Ok(sample_outcome(sets::toric_sample(*n, *d, *count, *seed)?)),
        Command::Accumulate { setfile, delta, k } => {
            let file = std::fs::File::open(setfile)?;
            let sample = output::read_sample(file, &setfile.display().to_string())?;
            let delta = rat_arg(delta)?;
            let found = sets::accumulation_scan(&sample, &delta, *k)?;
            let mut text = format!("{} windows\n", found.len());
            for w in &found {
                text += &format!("[{}, {}] {}\n", w.lo, w.hi, w.count);
            }
            Ok(Outcome::new(
                json!({ "set_size": sample.len(), "delta": delta, "k": k, "intervals": found }),
                text,
            ))
        }
        Command::Family { c, m } => {
            let c: ThresholdValue = c.parse()?;
            let r = sets::family_limit_check(&c, *m)?;
            let text = if r.empty {
                format!("no m in [{}, {}]; nothing to check\n", r.first_m, r.max_m)
            } else {
                format!(
                    "{} + 1/m for m = {}..{}: {}\n",
                    r.base,
                    r.first_m,
                    r.max_m,
                    if r.passed { "ok" } else { "FAILED" }
                )
            };
            let mut out = Outcome::new(serde_json::to_value(&r).expect("serializable"), text);
            if !r.passed {
                out.code = EXIT_VALIDATION;
            }
            Ok(out)
        }
        Command::Gap { n } => {
            let r = sets::gap_search(*n)?;
            let eps = Rat::one() - &r.max;
            let w: Vec<String> = r.witness.iter().map(u64::to_string).collect();
            Ok(Outcome::new(
                json!({ "n": r.n, "max": r.max, "witness": r.witness, "gap": eps, "nodes": r.nodes }),
                format!("{}\nwitness {}\n", r.max, w.join(" ")),
            ))
        }
        Command::Sylvester { k } => {
            let s = sets::sylvester(*k)?;
            let terms: Vec<String> = s.terms.iter().map(|t| t.to_string()).collect();
            Ok(Outcome::new(
                json!({ "terms": terms }),
                format!("{}\n", terms.join(" ")),
            ))
        }
        Command::Epsilon { n } => {
            let e = sets::epsilon_candidate(*n)?;
            Ok(Outcome::new(json!({ "n": n, "epsilon": e }), format!("{e}\n")))
        }
        Command::Subadd { f, g } => {
            let dim = parse_poly(f, None)?.dim().max(parse_poly(g, None)?.dim());
            let (f, g) = (parse_poly(f, Some(dim))?, parse_poly(g, Some(dim))?);
            let r = lct::check_subadditivity(&f, &g)?;
            let text = format!("N(f+g) = {} <= {} = min(1, {} + {})\n", r.sum, r.bound, r.f, r.g);
            Ok(Outcome::new(serde_json::to_value(&r).expect("serializable"), text))
        }
        Command::Restrict { poly, keep } => {
            let f = parse_poly(poly, None)?;
            if keep.contains(&0) {
                return Err(Error::InvalidArgument("coordinates are numbered from 1".into()));
            }
            let keep: Vec<usize> = keep.iter().map(|k| k - 1).collect();
            let r = lct::check_restriction(&f, &keep)?;
            let text = format!(
                "N(f|L) = {} {} N(f) = {}\n",
                r.restricted,
                if r.holds { "<=" } else { ">" },
                r.full
            );
            Ok(Outcome::new(serde_json::to_value(&r).expect("serializable"), text))
        }
    }
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Ht1 { output, .. } | Command::Ht2 { output, .. } | Command::Toric { output, .. } => {
            output.as_ref()
        }
        _ => None,
    }
}

fn emit(
    mode: Mode,
    quiet: bool,
    name: &str,
    input: &str,
    outcome: Result<Outcome, Error>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    match outcome {
        Ok(o) => {
            match (mode, &o.payload) {
                (Mode::Json, Payload::Record { result, .. }) => {
                    writeln!(out, "{}", ResultRecord::ok(name, input, result.clone()).to_line())?
                }
                (Mode::Json, Payload::Sample(s)) => {
                    writeln!(out, "{}", ResultRecord::ok(name, input, sample_json(s)).to_line())?
                }
                (Mode::Csv, Payload::Sample(s)) => {
                    if let Err(e) = output::write_csv(s, &mut *out) {
                        writeln!(err, "error: {e}")?;
                        return Ok(exit_code(&e));
                    }
                }
                (Mode::Csv, Payload::Record { .. }) => {
                    writeln!(err, "error: --csv applies to threshold-set commands only")?;
                    return Ok(EXIT_USAGE);
                }
                (Mode::Text, _) if quiet => {}
                (Mode::Text, Payload::Record { text, .. }) => write!(out, "{text}")?,
                (Mode::Text, Payload::Sample(s)) => write_sample_text(s, out)?,
            }
            Ok(o.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            if mode == Mode::Json {
                writeln!(out, "{}", ResultRecord::err(name, input, code, e.to_string()).to_line())?;
            }
            writeln!(err, "error: {e}")?;
            Ok(code)
        }
    }
}

fn run_batch(
    path: &PathBuf,
    degenerate: bool,
    dim: Option<usize>,
    mode: Mode,
    quiet: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let mut worst = EXIT_OK;
    for line in std::io::BufReader::new(file).lines() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let code = emit(mode, quiet, "lct", text, lct_one(text, degenerate, dim), out, err)?;
        worst = worst.max(code);
    }
    Ok(worst)
}

/// Runs one invocation, writing records to `out` and diagnostics to `err`.
/// `args` excludes the program name.
pub fn run_command<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("lct".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mode = if cli.json {
        Mode::Json
    } else if cli.csv {
        Mode::Csv
    } else {
        Mode::Text
    };
    let input = args.join(" ");
    let name = cli.command.name();

    let res = if let Command::Lct {
        file: Some(path),
        degenerate,
        dim,
        ..
    } = &cli.command
    {
        run_batch(path, *degenerate, *dim, mode, cli.quiet, out, err)
    } else {
        let outcome = execute(&cli.command);
        let outcome = match (outcome, output_path(&cli.command)) {
            (Ok(o), Some(path)) => match o.payload {
                Payload::Sample(s) => output::emit_csv(&s, path).map(|_| {
                    if mode == Mode::Text {
                        let text = format!("{} values written to {}\n", s.len(), path.display());
                        let result = json!({ "size": s.len(), "path": path.display().to_string() });
                        Outcome { payload: Payload::Record { result, text }, code: o.code }
                    } else {
                        Outcome { payload: Payload::Sample(s), code: o.code }
                    }
                }),
                payload @ Payload::Record { .. } => Ok(Outcome { payload, code: o.code }),
            },
            (o, _) => o,
        };
        emit(mode, cli.quiet, name, &input, outcome, out, err)
    };
    res.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}
