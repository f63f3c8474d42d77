//! The `tridend` command line.
//!
//! Exit codes: 0 success, 1 verification counterexample, 2 usage or input
//! error, 3 missing or unresolved conventions ledger.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tridend_core::linalg::Q;
use tridend_core::magnus::{
    closed_formula, discrete_mps, discrete_mps_diagonal, prelie_magnus, resolution_battery, resolve_conventions,
    MagnusResult, RESOLUTION_DEGREES,
};
use tridend_core::series::{FreeAlgebra, PreLie, TriBasis, TriTarget};
use tridend_core::surjection::{standardize, to_leveled_tree, top_blocks};
use tridend_core::tree::{enumerate_trees_capped, DEFAULT_DEGREE_CAP};
use tridend_core::{
    ConventionLedger, DescentOrientation, Flavor, GradedSeq, LevelOrientation, MatSeq, Matrix, Surjection, Tree, TriOp,
    TriSeries,
};

use crate::json;
use crate::rng;
use crate::verify::{self, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "tridend", version, about = "Exact tridendriform algebra on trees, surjections and matrix sequences")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Planar reduced trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Surjections (packed words).
    #[command(subcommand)]
    Surj(SurjCmd),
    /// Products of series.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Magnus expansions.
    #[command(subcommand)]
    Magnus(MagnusCmd),
    /// Property checks on seeded samples.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum TreesCmd {
    /// All trees of a degree, in encoding order.
    Enum {
        #[arg(long)]
        degree: usize,
        /// Lift the degree cap of 10.
        #[arg(long)]
        allow_large: bool,
    },
    /// Degree, descents and contraction data of one tree.
    Stats {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value_t = DescentArg::AsPrinted)]
        orientation: DescentArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurjCmd {
    /// All surjections of length n, in lexicographic order.
    Enum {
        #[arg(long)]
        n: usize,
    },
    /// Leveled tree of a surjection.
    Tree {
        /// Comma-separated packed word, e.g. 1,3,2,1.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = LevelArg::RootDeepest)]
        orientation: LevelArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Multiply two series.
    Mult {
        #[arg(long, value_enum, default_value_t = BasisArg::Trees)]
        basis: BasisArg,
        #[arg(long, value_enum)]
        op: OpArg,
        /// Series such as "1/2*(|,|); -(|,(|,|)); 3*unit", or @file.json.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        /// Defaults to the sum of the top degrees of the factors.
        #[arg(long)]
        truncation: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct LedgerArg {
    /// Conventions ledger written by `magnus resolve`.
    #[arg(long, default_value = "conventions.json")]
    pub ledger: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum MagnusCmd {
    /// Ω′ (strict) or Ω̄′ (weak) from the closed descent formula.
    Closed {
        #[arg(long, value_enum, default_value_t = BasisArg::Trees)]
        basis: BasisArg,
        #[arg(long, value_enum, default_value_t = FlavorArg::Strict)]
        flavor: FlavorArg,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        ledger: LedgerArg,
    },
    /// Ω′ or Ω̄′ from the pre-Lie Magnus recursion.
    Prelie {
        #[arg(long, value_enum, default_value_t = BasisArg::Trees)]
        basis: BasisArg,
        #[arg(long, value_enum, default_value_t = FlavorArg::Strict)]
        flavor: FlavorArg,
        #[arg(long)]
        order: usize,
    },
    /// Discrete Magnus expansion Ω(a)(N) of a matrix sequence.
    Discrete {
        /// MatSeq JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Highest degree kept.
        #[arg(long)]
        order: usize,
        /// N; the sequence must have at least N values.
        #[arg(long)]
        upto: usize,
        #[arg(long, alias = "variant", value_enum, default_value_t = FlavorArg::Strict)]
        flavor: FlavorArg,
        /// Print Ω(N) for every N from 0 to --upto.
        #[arg(long)]
        all: bool,
        /// Print each degree separately.
        #[arg(long)]
        by_degree: bool,
        #[arg(long, value_enum, default_value_t = PathArg::Fast)]
        path: PathArg,
        #[command(flatten)]
        ledger: LedgerArg,
    },
    /// Find the convention flags that pass every consistency check and
    /// write them to the ledger.
    Resolve {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        ledger: LedgerArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run every invariant check.
    Suite {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Only checks whose name starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Trees,
    Surjections,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Prec,
    Succ,
    Dot,
    Star,
    Preceq,
    Succeq,
    /// x ▷ y
    PrelieLeft,
    /// x ◁ y
    PrelieRight,
    /// x ▷̲ y
    PrelieLeftUnder,
    /// x ◁̲ y
    PrelieRightUnder,
    /// x ⋄ y
    Diamond,
    /// x · y − y · x
    Bracket,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Strict,
    Weak,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Strict => Flavor::Strict,
            FlavorArg::Weak => Flavor::Weak,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    /// Closed tree formula with integer-scaled evaluation.
    Fast,
    /// Sum over surjections and partial diagonals.
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DescentArg {
    AsPrinted,
    Mirrored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    RootDeepest,
    RootTop,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Counterexample,
    Input(anyhow::Error),
    Ledger(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Counterexample => 1,
            Failure::Input(_) => 2,
            Failure::Ledger(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<tridend_core::Error> for Failure {
    fn from(e: tridend_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

type Out<'a> = &'a mut dyn Write;
type Res = Result<(), Failure>;

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Counterexample => {}
                Failure::Input(e) => {
                    let _ = writeln!(err, "error: {e:#}");
                }
                Failure::Ledger(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                }
            }
            f.code()
        }
    }
}

fn dispatch(cli: &Cli, out: Out) -> Res {
    let fmt = cli.format;
    match &cli.command {
        Command::Trees(TreesCmd::Enum { degree, allow_large }) => trees_enum(*degree, *allow_large, fmt, out),
        Command::Trees(TreesCmd::Stats { tree, orientation }) => trees_stats(tree, *orientation, fmt, out),
        Command::Surj(SurjCmd::Enum { n }) => surj_enum(*n, fmt, out),
        Command::Surj(SurjCmd::Tree { word, orientation }) => surj_tree(word, *orientation, fmt, out),
        Command::Algebra(AlgebraCmd::Mult { basis, op, left, right, truncation }) => match basis {
            BasisArg::Trees => mult::<Tree>(*op, left, right, *truncation, fmt, out),
            BasisArg::Surjections => mult::<Surjection>(*op, left, right, *truncation, fmt, out),
        },
        Command::Magnus(MagnusCmd::Closed { basis, flavor, order, ledger }) => {
            let l = load_ledger(&ledger.ledger)?;
            match basis {
                BasisArg::Trees => emit_series(&closed_formula::<Tree>((*flavor).into(), *order, &l)?, fmt, out),
                BasisArg::Surjections => emit_series(&closed_formula::<Surjection>((*flavor).into(), *order, &l)?, fmt, out),
            }
        }
        Command::Magnus(MagnusCmd::Prelie { basis, flavor, order }) => match basis {
            BasisArg::Trees => emit_series(&prelie_magnus::<Tree>((*flavor).into(), *order), fmt, out),
            BasisArg::Surjections => emit_series(&prelie_magnus::<Surjection>((*flavor).into(), *order), fmt, out),
        },
        Command::Magnus(MagnusCmd::Discrete { input, order, upto, flavor, all, by_degree, path, ledger }) => {
            let l = load_ledger(&ledger.ledger)?;
            let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
            let a = json::parse_matseq(&v).with_context(|| format!("in {}", input.display()))?;
            let r = match path {
                PathArg::Fast => discrete_mps(&a, *upto, *order, (*flavor).into(), &l)?,
                PathArg::Diagonal => discrete_mps_diagonal(&a, *upto, *order, (*flavor).into(), &l)?,
            };
            discrete_out(&r, *upto, *all, *by_degree, fmt, out)
        }
        Command::Magnus(MagnusCmd::Resolve { seed, ledger }) => resolve(*seed, &ledger.ledger, fmt, out),
        Command::Verify(VerifyCmd::Suite { max_degree, max_n, seed, samples, only }) => {
            let config = SuiteConfig { max_degree: *max_degree, max_n: *max_n, seed: *seed, samples: *samples };
            suite(&config, only.as_deref(), fmt, out)
        }
    }
}

fn emit_json(v: &Value, out: Out) -> Res {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))?;
    Ok(())
}

fn trees_enum(degree: usize, allow_large: bool, fmt: Format, out: Out) -> Res {
    let cap = if allow_large { usize::MAX } else { DEFAULT_DEGREE_CAP };
    let trees = enumerate_trees_capped(degree, cap).map_err(|e| anyhow!("{e}; pass --allow-large to go further"))?;
    match fmt {
        Format::Json => emit_json(&json::trees(degree, &trees), out),
        Format::Text => {
            for t in &trees {
                writeln!(out, "{t}")?;
            }
            Ok(())
        }
    }
}

fn parse_arg<T>(s: &str, what: &str) -> anyhow::Result<T>
where
    T: FromStr,
    T::Err: Display,
{
    s.trim().parse().map_err(|e| anyhow!("bad {what} {s:?}: {e}"))
}

fn trees_stats(tree: &str, orientation: DescentArg, fmt: Format, out: Out) -> Res {
    let t: Tree = parse_arg(tree, "tree")?;
    let o = match orientation {
        DescentArg::AsPrinted => DescentOrientation::AsPrinted,
        DescentArg::Mirrored => DescentOrientation::Mirrored,
    };
    let s = t.descent_stats(o);
    let closure = t.contraction_closure();
    let v = json!({
        "tree": t.encode(),
        "degree": t.degree(),
        "leaves": t.leaf_count(),
        "internal_vertices": t.internal_vertices(),
        "binary": t.is_binary(),
        "orientation": json::descent_name(o),
        "descents": s.weak,
        "strict_descents": s.strict,
        "inner_edges": t.inner_edges().len(),
        "contraction_closure": closure.len(),
    });
    match fmt {
        Format::Json => emit_json(&v, out),
        Format::Text => {
            for (k, x) in v.as_object().expect("object") {
                let x = x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string());
                writeln!(out, "{k}: {x}")?;
            }
            Ok(())
        }
    }
}

fn surj_enum(n: usize, fmt: Format, out: Out) -> Res {
    if n > 9 {
        return Err(anyhow!("n = {n} is too large to list (at most 9)").into());
    }
    let list = tridend_core::surjection::enumerate_surjections(n);
    match fmt {
        Format::Json => emit_json(&json::surjections(n, &list), out),
        Format::Text => {
            for f in &list {
                writeln!(out, "{f}")?;
            }
            Ok(())
        }
    }
}

fn block_text(b: &[u32]) -> String {
    let inner: Vec<String> = b.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

fn surj_tree(word: &str, orientation: LevelArg, fmt: Format, out: Out) -> Res {
    let f: Surjection = parse_arg(word, "surjection")?;
    let o = match orientation {
        LevelArg::RootDeepest => LevelOrientation::RootDeepest,
        LevelArg::RootTop => LevelOrientation::RootTop,
    };
    let blocks = top_blocks(&f, o);
    let standardized: Vec<Vec<u32>> =
        blocks.iter().map(|b| standardize(b).map(|s| s.word().to_vec())).collect::<Result<_, _>>()?;
    let lt = to_leveled_tree(&f, o);
    let d = f.descents();
    match fmt {
        Format::Json => emit_json(
            &json!({
                "word": f.encode(),
                "orientation": json::level_name(o),
                "blocks": blocks,
                "standardized_blocks": standardized,
                "tree": lt.shape.encode(),
                "levels": lt.levels,
                "descents": d.weak,
                "strict_descents": d.strict,
            }),
            out,
        ),
        Format::Text => {
            let raw: Vec<String> = blocks.iter().map(|b| b.iter().map(u32::to_string).collect::<String>()).collect();
            writeln!(out, "word: {f}")?;
            writeln!(out, "blocks: {}", raw.iter().map(|b| format!("({b})")).collect::<Vec<_>>().join(", "))?;
            writeln!(out, "standardized: {}", standardized.iter().map(|b| block_text(b)).collect::<Vec<_>>().join(","))?;
            writeln!(out, "tree: {}", lt.shape)?;
            writeln!(out, "levels: {:?}", lt.levels)?;
            writeln!(out, "descents: {} (strict {})", d.weak, d.strict)?;
            Ok(())
        }
    }
}

/// `"c*b; c*b; …"` where a term is `b`, `-b`, `c*b`, `unit` or `c*unit`.
/// A leading `@` reads the series JSON form from a file.
pub fn parse_series_arg<B>(s: &str, truncation: Option<usize>) -> anyhow::Result<TriSeries<B>>
where
    B: TriBasis + FromStr,
    B::Err: Display,
{
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        let x = json::parse_series::<B>(&v)?;
        return Ok(match truncation {
            Some(t) => x.truncated(t),
            None => x,
        });
    }
    let mut scalar = Q::from_integer(0.into());
    let mut terms = Vec::new();
    for raw in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, body) = match raw.split_once('*') {
            Some((c, b)) => (parse_arg::<Q>(c, "coefficient")?, b.trim()),
            None => match raw.strip_prefix('-') {
                Some(b) => (Q::from_integer((-1).into()), b.trim()),
                None => (Q::from_integer(1.into()), raw),
            },
        };
        if body == "unit" {
            scalar += coef;
        } else {
            terms.push((parse_arg::<B>(body, "basis element")?, coef));
        }
    }
    let top = terms.iter().map(|(b, _)| b.degree()).max().unwrap_or(0);
    if let Some(t) = truncation {
        if top > t {
            bail!("a term of degree {top} exceeds truncation {t}");
        }
    }
    Ok(TriSeries::from_terms(scalar, terms, truncation.unwrap_or(top)))
}

fn mult<B>(op: OpArg, left: &str, right: &str, truncation: Option<usize>, fmt: Format, out: Out) -> Res
where
    B: TriBasis + FromStr,
    B::Err: Display,
{
    let x = parse_series_arg::<B>(left, truncation)?;
    let y = parse_series_arg::<B>(right, truncation)?;
    let t = truncation.unwrap_or(x.truncation() + y.truncation());
    let (x, y) = (with_truncation(x, t), with_truncation(y, t));
    let alg = FreeAlgebra::<B>::new(t);
    let z = match op {
        OpArg::Prec => x.op(&y, TriOp::Prec)?,
        OpArg::Succ => x.op(&y, TriOp::Succ)?,
        OpArg::Dot => x.op(&y, TriOp::Dot)?,
        OpArg::Star => x.star(&y),
        OpArg::Preceq => x.preceq(&y)?,
        OpArg::Succeq => x.succeq(&y)?,
        OpArg::PrelieLeft => x.prelie(&y, PreLie::Left)?,
        OpArg::PrelieRight => x.prelie(&y, PreLie::Right)?,
        OpArg::PrelieLeftUnder => x.prelie(&y, PreLie::LeftUnder)?,
        OpArg::PrelieRightUnder => x.prelie(&y, PreLie::RightUnder)?,
        OpArg::Diamond => x.diamond(&y)?,
        OpArg::Bracket => alg.dot_bracket(&x, &y)?,
    };
    match fmt {
        Format::Json => emit_json(&json::series(&z), out),
        Format::Text => {
            writeln!(out, "{z}")?;
            Ok(())
        }
    }
}

fn with_truncation<B: TriBasis>(x: TriSeries<B>, t: usize) -> TriSeries<B> {
    let terms = x.terms().iter().filter(|(b, _)| b.degree() <= t).map(|(b, c)| (b.clone(), c.clone()));
    TriSeries::from_terms(x.scalar().clone(), terms.collect::<Vec<_>>(), t)
}

fn emit_series<B: TriBasis>(r: &MagnusResult<TriSeries<B>>, fmt: Format, out: Out) -> Res {
    match fmt {
        Format::Json => emit_json(
            &json!({ "variant": variant_name(r), "truncation": r.truncation, "series": json::series(&r.payload) }),
            out,
        ),
        Format::Text => {
            writeln!(out, "{}", r.payload)?;
            Ok(())
        }
    }
}

fn variant_name<P>(r: &MagnusResult<P>) -> String {
    format!("{:?}", r.variant)
}

fn load_ledger(path: &Path) -> Result<ConventionLedger, Failure> {
    let hint = format!("run `tridend magnus resolve --ledger {}` first", path.display());
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Failure::Ledger(format!("no conventions ledger at {}; {hint}", path.display())))
        }
        Err(e) => return Err(anyhow::Error::new(e).context(format!("reading {}", path.display())).into()),
    };
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let l = json::parse_ledger(v).with_context(|| format!("in {}", path.display()))?;
    if !l.is_frozen() {
        return Err(Failure::Ledger(format!("the ledger at {} is not frozen; {hint}", path.display())));
    }
    Ok(l)
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = m.rows().map(|r| r.iter().map(Q::to_string).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

fn total_at(g: &GradedSeq, n: usize) -> anyhow::Result<Matrix> {
    let mut acc = Matrix::scalar(g.dim(), g.scalar().clone());
    for k in 1..=g.truncation() {
        acc.add_assign(g.at(k, n)?);
    }
    Ok(acc)
}

fn discrete_out(r: &MagnusResult<GradedSeq>, upto: usize, all: bool, by_degree: bool, fmt: Format, out: Out) -> Res {
    let g = &r.payload;
    let indices: Vec<usize> = if all { (0..=upto).collect() } else { vec![upto] };
    match fmt {
        Format::Json => {
            let mut v = json!({ "variant": variant_name(r), "truncation": r.truncation });
            if by_degree {
                let trimmed = GradedSeq::from_components(
                    g.scalar().clone(),
                    g.components()
                        .iter()
                        .map(|c| MatSeq::new(g.dim(), indices.iter().map(|&n| c.values()[n].clone()).collect()))
                        .collect::<Result<_, _>>()?,
                )?;
                v["N"] = json!(indices);
                v["degrees"] = json::graded(&trimmed)["degrees"].clone();
            } else if all {
                let values = indices.iter().map(|&n| total_at(g, n).map(|m| json::matrix(&m))).collect::<Result<Vec<_>, _>>()?;
                v["values"] = Value::Array(values);
            } else {
                v["N"] = json!(upto);
                v["value"] = json::matrix(&total_at(g, upto)?);
            }
            emit_json(&v, out)
        }
        Format::Text => {
            for &n in &indices {
                if by_degree {
                    for k in 1..=g.truncation() {
                        writeln!(out, "N={n} degree {k}: {}", matrix_text(g.at(k, n)?))?;
                    }
                } else {
                    writeln!(out, "N={n}: {}", matrix_text(&total_at(g, n)?))?;
                }
            }
            Ok(())
        }
    }
}

fn resolve(seed: u64, path: &Path, fmt: Format, out: Out) -> Res {
    let witness = rng::matseq(&mut rng::seeded(seed), 2, 5);
    let top = *RESOLUTION_DEGREES.iter().max().expect("non-empty");
    let battery = resolution_battery(&witness, top)?;
    let ledger = match resolve_conventions(&witness) {
        Ok(l) => l,
        Err(e) => {
            if fmt == Format::Text {
                writeln!(out, "{e}")?;
            }
            return Err(Failure::Counterexample);
        }
    };
    let body = serde_json::to_string_pretty(&json::ledger(&ledger)).expect("serializable");
    std::fs::write(path, format!("{body}\n")).with_context(|| format!("writing {}", path.display()))?;
    match fmt {
        Format::Json => emit_json(&json::ledger(&ledger), out),
        Format::Text => {
            writeln!(out, "{:<12} {:<11} {:<13} {:<13} closed morphism descents realization", "descent", "sign", "t", "level")?;
            for b in &battery {
                let c = b.conventions;
                let mark = |x: bool| if x { "ok" } else { "-" };
                writeln!(
                    out,
                    "{:<12} {:<11} {:<13} {:<13} {:<6} {:<8} {:<8} {}",
                    json::descent_name(c.descent),
                    json::sign_name(c.sign),
                    json::t_name(c.t_orientation),
                    json::level_name(c.level),
                    mark(b.closed_formula),
                    mark(b.morphism),
                    mark(b.descents),
                    mark(b.realization)
                )?;
            }
            writeln!(out, "frozen {} (evidence degrees {:?})", path.display(), ledger.evidence_degrees)?;
            Ok(())
        }
    }
}

fn suite(config: &SuiteConfig, only: Option<&str>, fmt: Format, out: Out) -> Res {
    let checks = match only {
        Some(prefix) => {
            let checks = verify::run_matching(config, prefix);
            if checks.is_empty() {
                return Err(anyhow!("no check matches {prefix:?}; known: {}", verify::check_names().join(", ")).into());
            }
            checks
        }
        None => verify::run_suite(config),
    };
    let failed = checks.iter().filter(|c| !c.passed).count();
    match fmt {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail, "reproducer": c.reproducer }))
                .collect();
            emit_json(&json!({ "seed": config.seed, "passed": failed == 0, "checks": list }), out)?;
        }
        Format::Text => {
            let header = format!(
                "verify suite: max degree {}, max n {}, seed {}, {} samples",
                config.max_degree, config.max_n, config.seed, config.samples
            );
            write!(out, "{}", verify::render(&checks, header))?;
            writeln!(out, "{} of {} checks passed", checks.len() - failed, checks.len())?;
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}
