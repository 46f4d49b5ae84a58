//! The `fusscat` command line.
//!
//! Exit codes: 0 success (or equivalent), 1 a verified negative (not
//! equivalent, or a verification mismatch), 2 usage or data errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::ops::RangeInclusive;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::algebra;
use crate::counting::{self, BigCount, ClassOptions, DEFAULT_BUDGET};
use crate::dyck::{self, DyckTuple};
use crate::error::Result;
use crate::expr::{self, Style};
use crate::params::Params;
use crate::tree::Tree;

pub const BUDGET_VAR: &str = "FUSSCAT_BUDGET";

/// The counting function checked by `verify`.
pub type Formula = fn(&Params, usize) -> Result<BigCount>;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub budget: u64,
    pub formula: Formula,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: DEFAULT_BUDGET,
            formula: counting::modular_fuss_catalan,
        }
    }
}

impl Config {
    /// Default configuration with the budget taken from `FUSSCAT_BUDGET`.
    pub fn from_env() -> anyhow::Result<Self> {
        let mut config = Config::default();
        if let Ok(v) = std::env::var(BUDGET_VAR) {
            config.budget = v
                .trim()
                .parse()
                .with_context(|| format!("{BUDGET_VAR}={v:?} is not a non-negative integer"))?;
        }
        Ok(config)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fusscat",
    version,
    about = "k-associative m-ary parenthesizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of k-equivalence classes
    Count(CountArgs),
    /// Decide k-equivalence of two expressions (exit 0 yes, 1 no)
    Equiv(EquivArgs),
    /// Minimal representative of a class
    Canon(CanonArgs),
    /// Convert between expression and Dyck formats
    Convert(ConvertArgs),
    /// Counts over a parameter grid
    Table(TableArgs),
    /// Cross-check the formula against brute force over a grid
    Verify(VerifyArgs),
    /// Exponent vector of an expression under the ω-evaluation
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Arity of the operation
    #[arg(long)]
    m: usize,
    /// Associativity index
    #[arg(long)]
    k: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<Params> {
        Params::new(self.m, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Dyck length L (operands minus one)
    #[arg(long, conflicts_with = "leaves", required_unless_present = "leaves")]
    length: Option<usize>,
    /// Leaf (operand) count N = L + 1
    #[arg(long)]
    leaves: Option<usize>,
    /// Count minimal tuples by enumeration instead of the formula
    #[arg(long)]
    brute: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct EquivArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// First expression, or - for stdin
    left: String,
    /// Second expression, or - for stdin
    right: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CanonIn {
    Expr,
    Dyck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CanonOut {
    Expr,
    /// N/S word
    #[value(alias = "ns")]
    Dyck,
    Tuple,
}

#[derive(Debug, Args)]
struct CanonArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "in", value_enum, default_value = "expr")]
    input_format: CanonIn,
    #[arg(long = "out", value_enum, default_value = "expr")]
    output_format: CanonOut,
    /// Expression or Dyck path, or - for stdin
    input: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Repr {
    Expr,
    DyckNs,
    DyckTuple,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Arity of the operation
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum)]
    from: Repr,
    #[arg(long, value_enum)]
    to: Repr,
    /// Input text, or - for stdin
    input: String,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Arities, as LO..HI (inclusive) or a single value
    #[arg(long, value_parser = parse_range)]
    m_range: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    k_range: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    length_range: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_range)]
    m_range: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    k_range: RangeInclusive<usize>,
    #[arg(long)]
    max_length: usize,
    /// Also count classes by enumeration where the budget allows
    #[arg(long)]
    classes: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Expression, or - for stdin
    input: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_text: Option<String>,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    /// The argument itself, or stdin (read once) for `-`.
    fn text(&mut self, arg: &str) -> anyhow::Result<String> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_text.is_none() {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .context("reading standard input")?;
            self.stdin_text = Some(s);
        }
        Ok(self.stdin_text.as_deref().unwrap_or("").trim().to_string())
    }
}

/// Runs the command line with the configuration from the environment.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Config::from_env() {
        Ok(config) => run_with(args, &config, stdin, stdout, stderr),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

pub fn run_with<I, T>(
    args: I,
    config: &Config,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdin_text: None,
        out: stdout,
    };
    match dispatch(cli.command, config, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn dispatch(command: Command, config: &Config, io: &mut Io<'_>) -> anyhow::Result<i32> {
    match command {
        Command::Count(a) => count(a, io),
        Command::Equiv(a) => equiv(a, io),
        Command::Canon(a) => canon(a, io),
        Command::Convert(a) => convert(a, io),
        Command::Table(a) => table(a, io),
        Command::Verify(a) => verify(a, config, io),
        Command::Eval(a) => eval(a, io),
    }
}

fn count(a: CountArgs, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let params = a.params.params()?;
    let length = match (a.length, a.leaves) {
        (Some(l), None) => l,
        (None, Some(0)) => bail!("--leaves must be at least 1"),
        (None, Some(n)) => n - 1,
        _ => bail!("give exactly one of --length and --leaves"),
    };
    let value = if a.brute {
        counting::count_minimal_brute(&params, length)?
    } else {
        counting::modular_fuss_catalan(&params, length)?
    };
    let row = CountRow {
        m: params.arity(),
        k: params.k(),
        length,
        count: value,
    };
    match a.format {
        Format::Text => writeln!(io.out, "{}", row.count)?,
        Format::Json => writeln!(io.out, "{}", row.json())?,
        Format::Csv => {
            writeln!(io.out, "{CSV_HEADER}")?;
            writeln!(io.out, "{}", row.csv())?;
        }
    }
    Ok(0)
}

const CSV_HEADER: &str = "m,k,length,count";

struct CountRow {
    m: usize,
    k: usize,
    length: usize,
    count: BigCount,
}

impl CountRow {
    fn json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "k": self.k,
            "length": self.length,
            "count": self.count.to_string(),
        })
    }

    fn csv(&self) -> String {
        format!("{},{},{},{}", self.m, self.k, self.length, self.count)
    }
}

fn parse_expr(io: &mut Io<'_>, arg: &str, params: &Params) -> anyhow::Result<Tree> {
    let text = io.text(arg)?;
    expr::parse(&text, params).with_context(|| format!("in expression {text:?}"))
}

fn equiv(a: EquivArgs, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let params = a.params.params()?;
    let left = parse_expr(io, &a.left, &params)?;
    let right = parse_expr(io, &a.right, &params)?;
    let same = dyck::equivalent(&left, &right, &params)?;
    let dl = DyckTuple::from_tree(&left, &params)?;
    let dr = DyckTuple::from_tree(&right, &params)?;
    let (sl, sr) = (dl.signature(&params), dr.signature(&params));
    let canonical = if same {
        Some(dl.canonicalize(&params)?)
    } else {
        None
    };
    match a.format {
        Format::Json => {
            let mut record = json!({
                "equivalent": same,
                "signatures": [sl.to_string(), sr.to_string()],
            });
            if let Some(c) = &canonical {
                record["canonical"] = json!({
                    "expr": expr::print(&c.to_tree(&params)?, Style::Minimal),
                    "tuple": c.to_string(),
                });
            }
            writeln!(io.out, "{record}")?;
        }
        Format::Text | Format::Csv => {
            writeln!(
                io.out,
                "{}",
                if same { "equivalent" } else { "not equivalent" }
            )?;
            writeln!(io.out, "signatures {sl} {sr}")?;
            if let Some(c) = &canonical {
                writeln!(
                    io.out,
                    "canonical {}",
                    expr::print(&c.to_tree(&params)?, Style::Minimal)
                )?;
            }
        }
    }
    Ok(if same { 0 } else { 1 })
}

fn canon(a: CanonArgs, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let params = a.params.params()?;
    let text = io.text(&a.input)?;
    let tuple = match a.input_format {
        CanonIn::Expr => DyckTuple::from_tree(
            &expr::parse(&text, &params).with_context(|| format!("in expression {text:?}"))?,
            &params,
        )?,
        CanonIn::Dyck => DyckTuple::parse(&text, &params)?,
    };
    let canonical = tuple.canonicalize(&params)?;
    let tree = canonical.to_tree(&params)?;
    let rendered = match a.output_format {
        CanonOut::Expr => expr::print(&tree, Style::Minimal),
        CanonOut::Dyck => canonical.to_ns(),
        CanonOut::Tuple => canonical.to_string(),
    };
    let signature = canonical.signature(&params);
    match a.format {
        Format::Json => writeln!(
            io.out,
            "{}",
            json!({
                "canonical": rendered,
                "expr": expr::print(&tree, Style::Minimal),
                "tuple": canonical.to_string(),
                "signature": signature.to_string(),
            })
        )?,
        Format::Text | Format::Csv => {
            writeln!(io.out, "{rendered}")?;
            writeln!(io.out, "signature {signature}")?;
        }
    }
    Ok(0)
}

fn convert(a: ConvertArgs, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let params = Params::new(a.m, 1)?;
    let text = io.text(&a.input)?;
    let tree = match a.from {
        Repr::Expr => expr::parse(&text, &params)?,
        Repr::DyckNs => DyckTuple::parse_ns(&text, &params)?.to_tree(&params)?,
        Repr::DyckTuple => DyckTuple::parse_tuple(&text, &params)?.to_tree(&params)?,
    };
    let out = match a.to {
        Repr::Expr => expr::print(&tree, Style::Minimal),
        Repr::DyckNs => DyckTuple::from_tree(&tree, &params)?.to_ns(),
        Repr::DyckTuple => DyckTuple::from_tree(&tree, &params)?.to_string(),
    };
    writeln!(io.out, "{out}")?;
    Ok(0)
}

/// Grid cells in (m, k, length) order, lengths filtered to multiples of m-1.
fn grid(
    ms: RangeInclusive<usize>,
    ks: RangeInclusive<usize>,
    lengths: RangeInclusive<usize>,
) -> anyhow::Result<Vec<(Params, usize)>> {
    let mut cells = Vec::new();
    for m in ms {
        for k in ks.clone() {
            let params = Params::new(m, k)?;
            for length in lengths.clone().filter(|l| l % params.step() == 0) {
                cells.push((params, length));
            }
        }
    }
    Ok(cells)
}

fn table(a: TableArgs, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let cells = grid(a.m_range, a.k_range, a.length_range)?;
    let rows: Vec<CountRow> = cells
        .par_iter()
        .map(|(params, length)| {
            Ok(CountRow {
                m: params.arity(),
                k: params.k(),
                length: *length,
                count: counting::modular_fuss_catalan(params, *length)?,
            })
        })
        .collect::<Result<_>>()?;
    match a.format {
        Format::Csv => {
            writeln!(io.out, "{CSV_HEADER}")?;
            for row in &rows {
                writeln!(io.out, "{}", row.csv())?;
            }
        }
        Format::Json => {
            for row in &rows {
                writeln!(io.out, "{}", row.json())?;
            }
        }
        Format::Text => {
            for row in &rows {
                writeln!(
                    io.out,
                    "m={} k={} length={} count={}",
                    row.m, row.k, row.length, row.count
                )?;
            }
        }
    }
    Ok(0)
}

struct Verdict {
    params: Params,
    length: usize,
    formula: BigCount,
    brute: BigCount,
    classes: Option<Option<usize>>,
}

impl Verdict {
    fn agrees(&self) -> bool {
        self.formula == self.brute
            && match self.classes {
                Some(Some(c)) => BigCount::from(c) == self.formula,
                _ => true,
            }
    }
}

fn verify(a: VerifyArgs, config: &Config, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let start = if a.max_length == 0 { 0 } else { 1 };
    let cells = grid(a.m_range, a.k_range, start..=a.max_length)?;
    let verdicts: Vec<Verdict> = cells
        .par_iter()
        .map(|&(params, length)| -> Result<Verdict> {
            let classes = if a.classes {
                let within = counting::fuss_catalan(params.arity(), length + 1)?
                    <= BigCount::from(config.budget);
                if within {
                    let options = ClassOptions {
                        budget: config.budget,
                        ..Default::default()
                    };
                    Some(Some(
                        counting::enumerate_classes(&params, length + 1, options)?.len(),
                    ))
                } else {
                    Some(None)
                }
            } else {
                None
            };
            Ok(Verdict {
                params,
                length,
                formula: (config.formula)(&params, length)?,
                brute: counting::count_minimal_brute(&params, length)?,
                classes,
            })
        })
        .collect::<Result<_>>()?;
    let mut failures = 0;
    for v in &verdicts {
        let classes = match v.classes {
            None => String::new(),
            Some(None) => " classes=skipped".to_string(),
            Some(Some(c)) => format!(" classes={c}"),
        };
        let ok = v.agrees();
        if !ok {
            failures += 1;
        }
        writeln!(
            io.out,
            "m={} k={} length={} formula={} brute={}{classes} {}",
            v.params.arity(),
            v.params.k(),
            v.length,
            v.formula,
            v.brute,
            if ok { "ok" } else { "MISMATCH" }
        )?;
    }
    if failures == 0 {
        writeln!(io.out, "all {} cells agree", verdicts.len())?;
        Ok(0)
    } else {
        writeln!(io.out, "{failures} of {} cells disagree", verdicts.len())?;
        Ok(1)
    }
}

fn eval(a: EvalArgs, io: &mut Io<'_>) -> anyhow::Result<i32> {
    let params = a.params.params()?;
    let tree = parse_expr(io, &a.input, &params)?;
    let e = algebra::eval_recursive(&tree, &params)?;
    match a.format {
        Format::Json => writeln!(
            io.out,
            "{}",
            json!({
                "modulus": e.modulus(),
                "exponents": e.exponents(),
                "polynomial": e.to_polynomial(),
            })
        )?,
        Format::Text | Format::Csv => {
            writeln!(io.out, "{e}")?;
            writeln!(io.out, "{}", e.to_polynomial())?;
        }
    }
    Ok(0)
}
