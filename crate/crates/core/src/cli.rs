//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a check finds a failing condition or a
//! counterexample, 2 for usage, input and format errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::algebra::{
    builtin_algebra, check_conditions, AlgebraRegistry, NumericKind, TableSpec, ValueAlgebra,
    DEFAULT_BUDGET,
};
use crate::array::{render_table, resolve_algebra, AssociativeArray, Mode};
use crate::error::{Error, Result};
use crate::graph::{adjacency, IncidencePair};
use crate::ingest::{demo_weights, explode, incidence_pair_from_columns, TabularSource};
use crate::witness::test_theorem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "semigraph", version, about = "Adjacency arrays from incidence arrays over pluggable algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Explode a TSV table into a `field|value` associative array.
    Ingest(IngestArgs),
    /// Build the adjacency array E_outᵀ E_in from two column groups.
    Correlate(CorrelateArgs),
    /// Check zero-sum-freeness, zero divisors and annihilation.
    CheckAlgebra(AlgebraArgs),
    /// Test the incidence-to-adjacency equivalence for an algebra.
    TestTheorem(TheoremArgs),
    /// Multiply the bundled music table under every numeric semiring.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value = "plus.times")]
    pub semiring: String,
    #[arg(long, value_enum, default_value = "sparse")]
    pub mode: Mode,
    #[arg(long, default_value_t = '|')]
    pub sep: char,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Input TSV (header row, first column is the record key).
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Input TSV, or an exploded-array JSON document (`.json`).
    pub input: PathBuf,
    #[arg(long)]
    pub out_field: String,
    #[arg(long)]
    pub in_field: String,
    /// Replace the nonzeros of a column, e.g. `--weight 'Genre|Pop=2'`.
    #[arg(long = "weight", value_name = "COLUMN=VALUE")]
    pub weights: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AlgebraSource {
    #[arg(long, conflicts_with = "algebra_file")]
    pub semiring: Option<String>,
    /// JSON operation-table description of a finite algebra.
    #[arg(long)]
    pub algebra_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    #[arg(long, env = "SEMIGRAPH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    #[arg(long, env = "SEMIGRAPH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, value_enum, default_value = "sparse")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Runs one parsed command, writing results to `--output` or `stdout`.
/// Returns the process exit status.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Ingest(args) => ingest(args, stdout),
        Command::Correlate(args) => correlate(args, stdout),
        Command::CheckAlgebra(args) => check_algebra(args, stdout),
        Command::TestTheorem(args) => theorem(args, stdout),
        Command::Demo(args) => demo(args, stdout),
    }
}

fn emit(output: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(doc: &Json) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn semiring(name: &str, mode: Mode) -> Result<ValueAlgebra> {
    let alg = builtin_algebra(name)?;
    if mode == Mode::Sparse && !alg.zero_annihilates() {
        return Err(Error::SparseModeRejected(alg.name().to_string()));
    }
    Ok(alg)
}

fn load_algebra(source: &AlgebraSource) -> Result<ValueAlgebra> {
    match (&source.semiring, &source.algebra_file) {
        (_, Some(path)) => {
            let spec: TableSpec = serde_json::from_str(&fs::read_to_string(path)?)?;
            spec.build()
        }
        (Some(name), None) => builtin_algebra(name),
        (None, None) => Err(Error::Format("pass --semiring or --algebra-file".into())),
    }
}

fn read_table(path: &Path) -> Result<TabularSource> {
    TabularSource::read_tsv(fs::File::open(path)?)
}

fn render(arr: &AssociativeArray, format: Format) -> Result<String> {
    match format {
        Format::Json => pretty(&arr.to_json()),
        Format::Text => Ok(render_table(arr)),
    }
}

fn ingest(args: IngestArgs, stdout: &mut dyn Write) -> Result<i32> {
    let alg = semiring(&args.common.semiring, args.common.mode)?;
    let arr = explode(&read_table(&args.input)?, args.common.sep, &alg)?;
    emit(&args.common.output, stdout, &render(&arr, args.common.format)?)?;
    Ok(0)
}

fn parse_weights(specs: &[String], alg: &ValueAlgebra) -> Result<BTreeMap<String, crate::Value>> {
    specs
        .iter()
        .map(|spec| {
            let (col, val) = spec
                .rsplit_once('=')
                .ok_or_else(|| Error::Format(format!("--weight `{spec}` is not COLUMN=VALUE")))?;
            let j = serde_json::from_str::<Json>(val).unwrap_or_else(|_| Json::from(val));
            Ok((col.to_string(), alg.decode_member(&j)?))
        })
        .collect()
}

fn correlate(args: CorrelateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let c = &args.common;
    let alg = semiring(&c.semiring, c.mode)?;
    let exploded = if args.input.extension().is_some_and(|e| e == "json") {
        let doc: Json = serde_json::from_str(&fs::read_to_string(&args.input)?)?;
        let own = resolve_algebra(&doc, AlgebraRegistry::global())?;
        AssociativeArray::from_json(&doc, &own)?.with_algebra(&alg)?
    } else {
        explode(&read_table(&args.input)?, c.sep, &alg)?
    };
    let weighted = exploded.reweight(&parse_weights(&args.weights, &alg)?)?;
    let ci = incidence_pair_from_columns(&weighted, &args.out_field, &args.in_field, c.sep)?;
    if !ci.skipped_rows.is_empty() {
        eprintln!(
            "skipped rows without both fields: {}",
            ci.skipped_rows.join(", ")
        );
    }
    let a = adjacency(&ci.pair, c.mode)?;
    emit(&c.output, stdout, &render(&a, c.format)?)?;
    Ok(0)
}

fn check_algebra(args: AlgebraArgs, stdout: &mut dyn Write) -> Result<i32> {
    let alg = load_algebra(&args.source)?;
    let report = check_conditions(&*alg, args.budget, args.seed);
    let text = match args.format {
        Format::Json => pretty(&report.to_json(&*alg))?,
        Format::Text => {
            let line = |name: &str, verdict: &str, witness: Option<String>| match witness {
                Some(w) => format!("{name:<18} {verdict}  witness {w}\n"),
                None => format!("{name:<18} {verdict}\n"),
            };
            let pair = |p: &Option<(crate::Value, crate::Value)>| {
                p.as_ref()
                    .map(|(v, w)| format!("({}, {})", alg.render(v), alg.render(w)))
            };
            let mut s = format!(
                "algebra {}  ({} pairs, {})\n",
                alg.name(),
                report.sample_size,
                if report.exhaustive { "exhaustive" } else { "sampled" }
            );
            s += &line("zero-sum-free", report.zero_sum_free.verdict.label(), pair(&report.zero_sum_free.witness));
            s += &line("no-zero-divisors", report.no_zero_divisors.verdict.label(), pair(&report.no_zero_divisors.witness));
            s += &line(
                "annihilator",
                report.annihilator.verdict.label(),
                report.annihilator.witness.as_ref().map(|v| alg.render(v)),
            );
            s
        }
    };
    emit(&args.output, stdout, &text)?;
    Ok(if report.all_hold() { 0 } else { 1 })
}

fn theorem(args: TheoremArgs, stdout: &mut dyn Write) -> Result<i32> {
    let alg = load_algebra(&args.source)?;
    if args.trials == 0 {
        return Err(Error::Format("--trials must be at least 1".into()));
    }
    let verdict = test_theorem(&alg, args.trials, args.seed);
    emit(&args.output, stdout, &pretty(&verdict.to_json(&alg))?)?;
    Ok(if verdict.counterexample.is_some() { 1 } else { 0 })
}

/// Adjacency arrays of one incidence pair under every numeric semiring,
/// grouped by identical rendered tables in first-seen order.
pub fn semiring_sweep(
    pair: &IncidencePair,
    mode: Mode,
) -> Result<Vec<(Vec<&'static str>, AssociativeArray)>> {
    let mut groups: Vec<(Vec<&'static str>, String, AssociativeArray)> = Vec::new();
    for kind in NumericKind::ALL {
        let alg = builtin_algebra(kind.name())?;
        let retagged = IncidencePair::new(
            pair.e_out().with_algebra(&alg)?,
            pair.e_in().with_algebra(&alg)?,
        )?;
        let a = adjacency(&retagged, mode)?;
        let table = render_table(&a);
        match groups.iter_mut().find(|(_, t, _)| *t == table) {
            Some(group) => group.0.push(kind.name()),
            None => groups.push((vec![kind.name()], table, a)),
        }
    }
    Ok(groups.into_iter().map(|(names, _, a)| (names, a)).collect())
}

/// The demo's incidence pairs: unit weights, then `Genre|Pop → 2`,
/// `Genre|Rock → 3` on E_out.
pub fn demo_pairs() -> Result<[(&'static str, IncidencePair); 2]> {
    let alg = builtin_algebra("plus.times")?;
    let exploded = explode(&TabularSource::demo(), '|', &alg)?;
    let unit = incidence_pair_from_columns(&exploded, "Genre", "Writer", '|')?.pair;
    let reweighted = IncidencePair::new(
        unit.e_out().reweight(&demo_weights())?,
        unit.e_in().clone(),
    )?;
    Ok([("unit weights", unit), ("Genre|Pop=2, Genre|Rock=3", reweighted)])
}

fn demo(args: DemoArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    let mut doc = Vec::new();
    for (label, pair) in demo_pairs()? {
        let sweep = semiring_sweep(&pair, args.mode)?;
        text += &format!("== {label} ==\n\n");
        for (names, a) in &sweep {
            text += &format!("{}\n{}\n", names.join(" | "), render_table(a));
        }
        doc.push(json!({
            "weights": label,
            "groups": sweep
                .iter()
                .map(|(names, a)| json!({"semirings": names, "adjacency": a.to_json()}))
                .collect::<Vec<_>>(),
        }));
    }
    let out = match args.format {
        Format::Text => text,
        Format::Json => pretty(&Json::Array(doc))?,
    };
    emit(&args.output, stdout, &out)?;
    Ok(0)
}
