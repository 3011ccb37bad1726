//! Subcommands. Each returns the text for stdout; errors carry their exit code.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use ainfinity::transfer_minimal_model;
use clap::{Args, Parser, Subcommand};
use hochschild::hochschild_report;
use mf_core::{cohomology_mod_k, cohomology_over_r_with, hom_complex, integral_transform, is_quasi_iso, StabilizationConfig, Z2Complex};
use ring_core::{parse_series, variables_in, FieldSpec, RingCtx, TruncatedSeries};
use serde_json::{json, Value};
use stabilize::{decompose_potential, stabilize_residue_field, stabilized_diagonal};

use crate::checks::run_all;
use crate::corpus::filtered;
use crate::error::CliError;
use crate::json::*;

#[derive(Parser, Debug)]
#[command(name = "mfcat", version, about = "Matrix factorizations of isolated hypersurface singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    /// File holding a potential: JSON {"ring", "potential"} or an expression.
    #[arg(long, conflicts_with = "inline")]
    pub potential: Option<PathBuf>,
    /// The potential as an expression, e.g. "x^2*y + y^3".
    #[arg(long)]
    pub inline: Option<String>,
    /// Ring for expressions: "x,y;rational;trunc=32" or "x;prime=101". Default: the
    /// variables of the expression in sorted order, over Q.
    #[arg(long)]
    pub ring: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FormatArgs {
    #[arg(long, conflicts_with = "table")]
    pub json: bool,
    #[arg(long)]
    pub table: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Checks φψ = ψφ = w·id for a factorization file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// The stabilized residue field k^stab, or its Koszul data with --koszul.
    Stabilize {
        #[command(flatten)]
        input: PotentialArgs,
        #[arg(long)]
        koszul: bool,
    },
    /// The stabilized diagonal over R ⊗ R.
    Diagonal {
        #[command(flatten)]
        input: PotentialArgs,
    },
    /// Hochschild invariants and the Milnor and Tyurina numbers.
    Hh {
        #[command(flatten)]
        input: PotentialArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// The minimal A∞ model of End(k^stab) up to the given arity.
    MinimalModel {
        #[command(flatten)]
        input: PotentialArgs,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Whether a closed even morphism (JSON file) is a quasi-isomorphism.
    QuasiIso { file: PathBuf },
    /// Cohomology of k⊗X, or of hom(X, Y) over R with --hom.
    Cohomology {
        file: PathBuf,
        /// Second factorization Y.
        #[arg(long)]
        hom: Option<PathBuf>,
        /// Cohomology of the complex itself over R, not its reduction mod 𝔪.
        #[arg(long)]
        over_r: bool,
    },
    /// X ⊗_R T for a kernel T; the stabilized diagonal when --kernel is absent.
    Transform {
        file: PathBuf,
        #[arg(long)]
        kernel: Option<PathBuf>,
    },
    /// Runs the acceptance criteria on the bundled corpus.
    CorpusRun {
        /// Only corpus entries whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        format: FormatArgs,
    },
}

/// Stabilization cap, overridable through MFCAT_NMAX.
pub fn config() -> Result<StabilizationConfig, CliError> {
    match std::env::var("MFCAT_NMAX") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|n_max| StabilizationConfig { n_max })
            .map_err(|_| CliError::Parse(format!("MFCAT_NMAX={v:?} is not a positive integer"))),
        Err(_) => Ok(StabilizationConfig::default()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn parse_expression(expr: &str, ring: Option<&str>) -> Result<TruncatedSeries, CliError> {
    let ctx = match ring {
        Some(spec) => RingCtx::from_spec(spec)?,
        None => {
            let mut names = variables_in(expr)?;
            names.sort();
            if names.is_empty() {
                return Err(CliError::Precondition(format!("{expr:?} has no variables")));
            }
            RingCtx::new(&names, FieldSpec::Rational, None)?
        }
    };
    Ok(parse_series(&ctx, expr)?)
}

pub fn load_potential(a: &PotentialArgs) -> Result<TruncatedSeries, CliError> {
    match (&a.potential, &a.inline) {
        (Some(path), _) => {
            let text = read(path)?;
            if text.trim_start().starts_with('{') {
                potential_from_json(&serde_json::from_str(&text)?)
            } else {
                parse_expression(text.trim(), a.ring.as_deref())
            }
        }
        (None, Some(expr)) => parse_expression(expr, a.ring.as_deref()),
        (None, None) => Err(CliError::Parse("give --potential FILE or --inline EXPR".into())),
    }
}

fn verify(file: &Path, format: FormatArgs) -> Result<String, CliError> {
    let x = mf_from_json(&read_json(file)?)?;
    let v = x.violation();
    let out = if format.json {
        let bad = v.as_ref().map(|v| json!({ "product": v.product, "row": v.row, "col": v.col }));
        to_canonical_string(&json!({
            "potential": x.potential().to_string(),
            "rank": x.rank(),
            "ok": v.is_none(),
            "violation": bad,
        }))
    } else {
        let mut s = format!("w = {}\nrank = {}\n", x.potential(), x.rank());
        match &v {
            None => s.push_str("OK\n"),
            Some(v) => writeln!(s, "FAIL: {} differs from w*id at ({}, {})", v.product, v.row, v.col).unwrap(),
        }
        s
    };
    match v {
        // the report still goes to stdout
        Some(_) => Err(CliError::Verification(out)),
        None => Ok(out),
    }
}

fn minimal_model(w: &TruncatedSeries, max_arity: usize, format: FormatArgs) -> Result<String, CliError> {
    let s = transfer_minimal_model(w, max_arity)?;
    if !format.table {
        return Ok(to_canonical_string(&ainf_to_json(&s)));
    }
    let mut out = format!("basis: {}\n", s.basis().join(", "));
    for (args, v) in s.nonzero_products() {
        let args: Vec<&str> = args.iter().map(|&i| s.basis()[i].as_str()).collect();
        let terms: Vec<String> = v.iter().map(|(i, c)| format!("{c}*{}", s.basis()[*i])).collect();
        writeln!(out, "m_{}({}) = {}", args.len(), args.join(", "), terms.join(" + ")).unwrap();
    }
    Ok(out)
}

fn hh(w: &TruncatedSeries, format: FormatArgs) -> Result<String, CliError> {
    let r = hochschild_report(w, config()?)?;
    if format.table {
        Ok(format!(
            "HH^even {}\nHH^odd {}\nmilnor {}\ntyurina {}\nHH_* parity {}\nHP {}\n",
            r.hh_even, r.hh_odd, r.milnor, r.tyurina, r.homology_parity, r.hp
        ))
    } else {
        Ok(to_canonical_string(&hh_to_json(&r)))
    }
}

fn cohomology(file: &Path, hom: Option<&Path>, over_r: bool) -> Result<String, CliError> {
    let x = mf_from_json(&read_json(file)?)?;
    let c = match hom {
        Some(p) => hom_complex(&x, &mf_from_json(&read_json(p)?)?)?,
        None => Z2Complex::from_mf(&x),
    };
    let v = if over_r {
        let r = cohomology_over_r_with(&c, config()?)?;
        json!({ "even": r.dims.even, "odd": r.dims.odd, "stabilized_at": r.stabilized_at })
    } else {
        dims_to_json(cohomology_mod_k(&c)?)
    };
    Ok(to_canonical_string(&v))
}

fn transform(file: &Path, kernel: Option<&Path>) -> Result<String, CliError> {
    let x = mf_from_json(&read_json(file)?)?;
    let t = match kernel {
        Some(p) => mf_from_json(&read_json(p)?)?,
        None => stabilized_diagonal(x.potential())?,
    };
    let r = integral_transform(&x, &t)?;
    let names = r.mf.ctx().names();
    Ok(to_canonical_string(&json!({
        "mf": mf_to_json(&r.mf),
        "internal_variables": r.internal_vars.iter().map(|&i| &names[i]).collect::<Vec<_>>(),
        "k_cohomology": dims_to_json(r.k_cohomology(config()?)?),
    })))
}

fn corpus_run(filter: Option<&str>, format: FormatArgs) -> Result<String, CliError> {
    let corpus = filtered(filter)?;
    if corpus.is_empty() {
        return Err(CliError::Precondition(format!("no corpus entry matches {:?}", filter.unwrap_or(""))));
    }
    let outcomes = run_all(&corpus, filter.is_none(), config()?);
    let ok = outcomes.iter().all(|o| o.passed());
    let out = if format.json {
        let items: Vec<Value> = outcomes
            .iter()
            .map(|o| json!({ "id": o.id, "title": o.title, "cases": o.cases, "passed": o.passed(), "failures": o.failures }))
            .collect();
        to_canonical_string(&json!({ "entries": corpus.iter().map(|e| &e.name).collect::<Vec<_>>(), "criteria": items, "passed": ok }))
    } else {
        let mut s = String::new();
        for o in &outcomes {
            let status = if o.passed() { "PASS" } else { "FAIL" };
            writeln!(s, "{status}  {:>5}  {:<36} {} case{}", o.id, o.title, o.cases, if o.cases == 1 { "" } else { "s" }).unwrap();
            for f in &o.failures {
                writeln!(s, "        - {f}").unwrap();
            }
        }
        s
    };
    if ok {
        Ok(out)
    } else {
        Err(CliError::Verification(out))
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Verify { file, format } => verify(file, *format),
        Command::Stabilize { input, koszul } => {
            let w = load_potential(input)?;
            if *koszul {
                Ok(to_canonical_string(&koszul_to_json(&decompose_potential(&w)?)))
            } else {
                Ok(to_canonical_string(&mf_to_json(&stabilize_residue_field(&w)?)))
            }
        }
        Command::Diagonal { input } => Ok(to_canonical_string(&mf_to_json(&stabilized_diagonal(&load_potential(input)?)?))),
        Command::Hh { input, format } => hh(&load_potential(input)?, *format),
        Command::MinimalModel { input, max_arity, format } => minimal_model(&load_potential(input)?, *max_arity, *format),
        Command::QuasiIso { file } => {
            let f = morphism_from_json(&read_json(file)?)?;
            Ok(to_canonical_string(&json!({ "closed": f.is_closed(), "quasi_iso": is_quasi_iso(&f)? })))
        }
        Command::Cohomology { file, hom, over_r } => cohomology(file, hom.as_deref(), *over_r),
        Command::Transform { file, kernel } => transform(file, kernel.as_deref()),
        Command::CorpusRun { filter, format } => corpus_run(filter.as_deref(), *format),
    }
}

/// Parses argv and runs it: (stdout, stderr, exit code).
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (e.to_string(), String::new(), 0) } else { (String::new(), e.to_string(), 2) };
        }
    };
    match execute(&cli) {
        Ok(out) => (out, String::new(), 0),
        // verification reports are regular output with a failing status
        Err(CliError::Verification(out)) if matches!(cli.command, Command::Verify { .. } | Command::CorpusRun { .. }) => {
            (out, String::new(), 4)
        }
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
