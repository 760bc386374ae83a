//! The `chordstate` command line: `eval`, `gram`, `verify`, `oracle`, `dims`.
//!
//! JSON goes to stdout (or `--output`), diagnostics to stderr. Exit status is
//! 0 on success, 1 when a check fails (no certificate, oracle mismatch) and
//! 2 on errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::diagram::{enumerate_words, ChordWord, DiagramExpr};
use crate::error::{Error, Result};
use crate::oracle::tensor_oracle;
use crate::state::{gram_matrix_with, verify_state_with, GramSpec};
use crate::weight::{Evaluator, Labelling};
use crate::{Guards, Rational};

#[derive(Debug, Parser)]
#[command(name = "chordstate", version, about = "Exact gl_n weight systems on horizontal chord diagrams")]
pub struct Cli {
    #[command(flatten)]
    pub limits: LimitArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct LimitArgs {
    /// key=value file setting `max_basis` and `max_oracle_dim`
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Largest Gram basis (default 512)
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,

    /// Largest oracle tensor dimension n^|rho| (default 100000)
    #[arg(long, global = true)]
    pub max_oracle_dim: Option<usize>,

    /// Allow limits above the defaults
    #[arg(long, global = true)]
    pub unsafe_limits: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the weight of one diagram, e.g. `eval "2: (1,2)" --label std,std --n 3`
    Eval {
        diagram: String,
        /// Comma-separated labels (std, sym:k, ext:k, part:[...]); defaults to std on every strand
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        n: u32,
        /// Also print the polynomial in n in readable form
        #[arg(long)]
        poly: bool,
        /// Fail instead of returning 0 when a label is a zero representation at n
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the Gram basis and matrix
    Gram {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also write the matrix as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certify positivity on a truncated basis; exit 0 iff the truncated state condition holds
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the pipeline with the tensor-power trace on every basis word
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Dimensions of the labelled representations
    Dims {
        #[arg(long)]
        label: String,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub strands: usize,
    #[arg(long)]
    pub depth: usize,
    /// Defaults to std on every strand
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long)]
    pub n: u32,
}

impl SpecArgs {
    fn spec(&self) -> Result<GramSpec> {
        let labelling = labelling_for(self.label.as_deref(), self.strands)?;
        GramSpec::new(self.strands, self.depth, labelling, self.n)
    }
}

fn labelling_for(text: Option<&str>, strands: usize) -> Result<Labelling> {
    let labelling = match text {
        Some(t) => Labelling::parse(t)?,
        None => Labelling::standard(strands),
    };
    if labelling.strands() != strands {
        return Err(Error::Dimension(format!(
            "{} labels given for a diagram on {strands} strands",
            labelling.strands()
        )));
    }
    Ok(labelling)
}

/// Parses `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<(Option<usize>, Option<usize>)> {
    let mut basis = None;
    let mut oracle = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: k + 1, column: 1, message: msg };
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| err(format!("`{}` is not a non-negative integer", value.trim())))?;
        match key.trim() {
            "max_basis" => basis = Some(value),
            "max_oracle_dim" => oracle = Some(value),
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok((basis, oracle))
}

impl LimitArgs {
    pub fn guards(&self) -> Result<Guards> {
        let mut guards = Guards::DEFAULT;
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Argument(format!("cannot read config {}: {e}", path.display())))?;
            let (b, o) = parse_config(&text)?;
            guards.max_basis = b.unwrap_or(guards.max_basis);
            guards.max_oracle_dim = o.unwrap_or(guards.max_oracle_dim);
        }
        guards.max_basis = self.max_basis.unwrap_or(guards.max_basis);
        guards.max_oracle_dim = self.max_oracle_dim.unwrap_or(guards.max_oracle_dim);
        let raised = guards.max_basis > Guards::DEFAULT.max_basis
            || guards.max_oracle_dim > Guards::DEFAULT.max_oracle_dim;
        if raised && !self.unsafe_limits {
            return Err(Error::Argument(format!(
                "limits above the defaults (max_basis {}, max_oracle_dim {}) need --unsafe-limits",
                Guards::DEFAULT.max_basis,
                Guards::DEFAULT.max_oracle_dim
            )));
        }
        Ok(guards)
    }
}

/// What a command produced: the JSON document and the intended exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub status: i32,
    /// Extra lines for stderr.
    pub notes: Vec<String>,
}

fn write_or_print(json: &Value, output: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(json).expect("json values serialise");
    match output {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display()))),
        None => writeln!(stdout, "{text}").map_err(|e| Error::Argument(format!("stdout: {e}"))),
    }
}

fn strings(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let guards = cli.limits.guards()?;
    match &cli.command {
        Command::Eval { diagram, label, n, poly, strict, .. } => {
            let word: ChordWord = diagram.parse()?;
            let labelling = labelling_for(label.as_deref(), word.strands())?;
            let ev = Evaluator::new(labelling.clone())?.strict(*strict);
            let value = ev.weight(&DiagramExpr::from_word(word.clone()), *n)?;
            let mut json = json!({
                "diagram": word.to_string(),
                "labelling": labelling.to_string(),
                "n": n,
                "value": value.at(*n).expect("specialised at n").to_string(),
                "poly": strings(value.symbolic.coefficients()),
                "zero_dimensional": value.zero_dimensional,
            });
            if *poly {
                json["poly_text"] = Value::String(value.symbolic.to_string());
            }
            let mut notes = Vec::new();
            if value.zero_dimensional {
                notes.push(format!("warning: a label of {labelling} is a zero representation at n = {n}"));
            }
            Ok(Outcome { json, status: 0, notes })
        }
        Command::Gram { spec, csv, .. } => {
            let spec = spec.spec()?;
            let ev = Evaluator::new(spec.labelling.clone())?;
            let (basis, matrix) = gram_matrix_with(&ev, &spec, &guards)?;
            if let Some(path) = csv {
                fs::write(path, matrix.to_csv())
                    .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
            }
            let json = json!({
                "spec": spec.to_json(),
                "basis": basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "matrix": matrix.to_json(),
                "symmetric": matrix.is_symmetric(),
            });
            Ok(Outcome { json, status: 0, notes: vec![] })
        }
        Command::Verify { spec, strict, csv, .. } => {
            let spec = spec.spec()?;
            let ev = Evaluator::new(spec.labelling.clone())?.strict(*strict);
            if *strict {
                // surfaces the zero-representation error before assembling anything
                ev.weight(&DiagramExpr::one(spec.strands), spec.n)?;
            }
            let report = verify_state_with(&ev, &spec, &guards)?;
            if let Some(path) = csv {
                fs::write(path, report.matrix.to_csv())
                    .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut notes = Vec::new();
            if !report.sym_ext_labelling {
                notes.push("note: labelling outside symmetric/exterior powers; report is exploratory, not a certificate".into());
            }
            if !report.symmetric {
                notes.push(format!("note: Gram matrix is asymmetric (max deviation {}); judged by its symmetric part", report.asymmetry));
            }
            let status = if report.holds() { 0 } else { 1 };
            Ok(Outcome { json: report.to_json(), status, notes })
        }
        Command::Oracle { spec } => {
            let spec = spec.spec()?;
            let dim = (spec.n as u128)
                .checked_pow(spec.labelling.total_width() as u32)
                .map_or_else(|| "overflow".to_string(), |d| d.to_string());
            let basis_len = crate::diagram::word_count(spec.strands, spec.depth);
            if basis_len.is_none_or(|b| b > guards.max_basis) {
                return Err(Error::Resource(format!(
                    "basis for {} strands and depth {} exceeds the limit {}",
                    spec.strands, spec.depth, guards.max_basis
                )));
            }
            let ev = Evaluator::new(spec.labelling.clone())?;
            let mut equal = 0usize;
            let mut max_discrepancy = Rational::from_integer(0.into());
            let mut mismatches = Vec::new();
            for w in enumerate_words(spec.strands, spec.depth) {
                let fast = ev.weight_at(&w, spec.n)?;
                let traced = tensor_oracle(&w, &spec.labelling, spec.n, guards.max_oracle_dim)?;
                let d = num_traits::Signed::abs(&(&fast - &traced));
                if d > max_discrepancy {
                    max_discrepancy = d.clone();
                }
                if num_traits::Zero::is_zero(&d) {
                    equal += 1;
                } else {
                    mismatches.push(format!("mismatch on `{w}`: pipeline {fast}, trace {traced}"));
                }
            }
            let words = equal + mismatches.len();
            let json = json!({
                "spec": spec.to_json(),
                "tensor_dimension": dim,
                "words": words,
                "equal": equal,
                "max_discrepancy": max_discrepancy.to_string(),
            });
            let status = if mismatches.is_empty() { 0 } else { 1 };
            Ok(Outcome { json, status, notes: mismatches })
        }
        Command::Dims { label, n } => {
            let labelling = Labelling::parse(label)?;
            if *n == 0 {
                return Err(Error::Argument("n must be a positive integer".into()));
            }
            let labels: Vec<Value> = labelling
                .labels()
                .iter()
                .map(|l| json!({ "label": l.to_string(), "dimension": l.dimension(*n).to_string() }))
                .collect();
            let json = json!({
                "n": n,
                "labels": labels,
                "product": labelling.unit_dimension(*n).to_string(),
            });
            Ok(Outcome { json, status: 0, notes: vec![] })
        }
    }
}

fn output_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Eval { output, .. } | Command::Gram { output, .. } | Command::Verify { output, .. } => {
            output.as_deref()
        }
        _ => None,
    }
}

/// Runs a parsed command line, returning the process exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            for note in &outcome.notes {
                let _ = writeln!(stderr, "{note}");
            }
            if let Err(e) = write_or_print(&outcome.json, output_path(&cli.command), stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
