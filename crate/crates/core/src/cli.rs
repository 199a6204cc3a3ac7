//! Command-line front end. [`run`] returns the exit status and the text to
//! print, so the binary stays a thin wrapper.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::complex::{build_c, build_o, check_octahedral, CellComplex, ComplexError, ComplexStats};
use crate::diagram::moves::{enumerate_move_pairs, MovePair, PairConfig};
use crate::diagram::{library, zeta, Diagram};
use crate::doubles::{check_identity, DoubleContext, Identity};
use crate::exact::Field;
use crate::hopf::{builtin, from_json, Hopf, HopfError, HopfFileError};
use crate::invariant::{Evaluator, InvariantValue};

#[derive(Parser, Debug)]
#[command(name = "hopfdouble", version, about = "Exact Hopf-algebraic invariants of tangles and their colored versions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Seed for move-pair generation.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// `builtin:NAME` or a path to an algebra file.
    #[arg(long)]
    pub algebra: String,
    /// Work over F_p instead of ℚ (builtins only).
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Colored moves on ζ-images, checked with J′.
    Colored,
    /// Reidemeister moves and isotopies, checked with J.
    Reidemeister,
    /// Reidemeister moves, checked with J′ of the ζ-images.
    Zeta,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Hopf algebra axioms.
    ValidateAlgebra(AlgebraArgs),
    /// Check an identity of the doubles, or `all` of them.
    Check {
        identity: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// The universal invariant J of a diagram.
    Invariant {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        diagram: PathBuf,
    },
    /// The invariant J′ of a colored diagram.
    ColoredInvariant {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        diagram: PathBuf,
        /// Apply ζ to an uncolored diagram first.
        #[arg(long)]
        zeta: bool,
    },
    /// Compare φ∘J with J″ on a diagram, or on the built-in suite.
    VerifyJj {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Generate move pairs and check that the invariant does not change.
    Moves {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Moves applied to each seed diagram.
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        /// Include exception moves even when γ² ≠ 1; their failures are
        /// then reported without failing the run.
        #[arg(long)]
        exceptions: bool,
    },
    /// The cell complex C(Z), or the octahedral triangulation O(D).
    Complex {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        octahedral: bool,
        /// Print counts only.
        #[arg(long)]
        stats: bool,
    },
}

/// Exit status and output of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Input errors end the run with status 2; mathematical failures are
/// reported in the output with status 1.
enum Failure {
    Input(String),
    Math(String),
}

impl From<Failure> for Outcome {
    fn from(f: Failure) -> Outcome {
        match f {
            Failure::Input(m) => Outcome::input_error(m),
            Failure::Math(m) => Outcome { code: 1, stdout: String::new(), stderr: format!("failure: {m}\n") },
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(a: &AlgebraArgs) -> Result<Hopf, Failure> {
    let field = match a.prime {
        Some(p) => Field::prime(p).ok_or_else(|| Failure::Input(format!("{p} is not a usable prime")))?,
        None => Field::Rational,
    };
    if let Some(name) = a.algebra.strip_prefix("builtin:") {
        return builtin(name, field).map_err(|e| Failure::Input(e.to_string()));
    }
    if a.prime.is_some() {
        return Err(Failure::Input("--prime applies to builtin algebras only".into()));
    }
    from_json(&read(Path::new(&a.algebra))?).map_err(|e| match e {
        HopfFileError::Hopf(HopfError::SingularAntipode | HopfError::NoAntipode) => Failure::Math(e.to_string()),
        e => Failure::Input(e.to_string()),
    })
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    Diagram::from_json(&read(path)?).map_err(|e| Failure::Input(e.to_string()))
}

fn evaluator(a: &AlgebraArgs) -> Result<Evaluator, Failure> {
    let h = load_algebra(a)?;
    let ctx = DoubleContext::new(h).map_err(|e| Failure::Math(e.to_string()))?;
    Ok(Evaluator::new(ctx))
}

/// Renders a report: pretty JSON, or one `path value` line per leaf.
fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("report serializes") + "\n",
        Format::Text => {
            let mut out = String::new();
            flatten(v, "", &mut out);
            out
        }
    }
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(x, &join(k), out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(x, &join(&i.to_string()), out)),
        Value::String(s) => out.push_str(&format!("{path} {s}\n")),
        other => out.push_str(&format!("{path} {other}\n")),
    }
}

fn report<T: Serialize>(pass: bool, r: &T, format: Format) -> Outcome {
    let v = serde_json::to_value(r).expect("report serializes");
    Outcome { code: if pass { 0 } else { 1 }, stdout: render(&v, format), stderr: String::new() }
}

fn invariant_output(v: &InvariantValue, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => v.to_json() + "\n",
        Format::Text => v.to_text(),
    };
    Outcome { code: 0, stdout, stderr: String::new() }
}

#[derive(Serialize)]
struct AxiomReport {
    algebra: String,
    dim: usize,
    field: Field,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<crate::hopf::AxiomFailure>,
}

#[derive(Serialize)]
struct JjEntry {
    diagram: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct PairFailure {
    index: usize,
    kind: crate::diagram::moves::MoveKind,
    exception: bool,
    site: crate::diagram::moves::Site,
}

#[derive(Serialize)]
struct MovesReport {
    suite: String,
    algebra: String,
    seed: u64,
    pairs: usize,
    kinds: BTreeMap<String, usize>,
    exceptions_included: bool,
    involutive_antipode: bool,
    pass: bool,
    failures: Vec<PairFailure>,
    /// Failing exception pairs when γ² ≠ 1, where invariance is not claimed.
    exception_failures: Vec<PairFailure>,
}

#[derive(Serialize)]
struct ComplexReport {
    octahedral: bool,
    stats: ComplexStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Classes>,
}

#[derive(Serialize)]
struct Classes {
    vertices: Vec<Vec<String>>,
    edges: Vec<Vec<String>>,
    gluings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    plus_infinity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minus_infinity: Option<usize>,
    leaves: Vec<String>,
}

fn classes(cx: &CellComplex) -> Classes {
    let vs = cx.vertex_classes();
    let class_of = |v: Option<(usize, usize)>| v.and_then(|v| vs.iter().position(|c| c.contains(&v)));
    Classes {
        vertices: vs.iter().map(|c| c.iter().map(|(t, v)| format!("t{t}v{v}")).collect()).collect(),
        edges: cx.edge_classes().iter().map(|c| c.iter().map(|(t, i, j)| format!("t{t}e{i}{j}")).collect()).collect(),
        gluings: cx
            .gluings
            .iter()
            .map(|g| {
                let m: Vec<String> = (0..4).filter(|&v| v != g.a.face).map(|v| format!("{v}{}", g.map[v])).collect();
                format!("t{}f{}-t{}f{} {}", g.a.tet, g.a.face + 1, g.b.tet, g.b.face + 1, m.join(","))
            })
            .collect(),
        plus_infinity: class_of(cx.plus_inf),
        minus_infinity: class_of(cx.minus_inf),
        leaves: cx
            .leaves
            .iter()
            .map(|l| {
                let end = if l.start { "start" } else { "end" };
                format!("component {} {end}: t{}f{} t{}f{}", l.component, l.faces[0].tet, l.faces[0].face + 1, l.faces[1].tet, l.faces[1].face + 1)
            })
            .collect(),
    }
}

/// Runs one command.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(f) => f.into(),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let fmt = cli.output;
    Ok(match &cli.command {
        Command::ValidateAlgebra(a) => {
            let h = load_algebra(a)?;
            let failure = h.validate().err();
            let r = AxiomReport { algebra: h.name.clone(), dim: h.dim(), field: h.field, pass: failure.is_none(), failure };
            report(r.pass, &r, fmt)
        }
        Command::Check { identity, algebra } => {
            let ids = if identity == "all" {
                Identity::all()
            } else {
                vec![Identity::parse(identity).ok_or_else(|| Failure::Input(format!("unknown identity `{identity}`")))?]
            };
            let h = load_algebra(algebra)?;
            let ctx = DoubleContext::new(h).map_err(|e| Failure::Math(e.to_string()))?;
            let reports: Vec<_> = ids.par_iter().map(|&id| check_identity(&ctx, id)).collect();
            report(reports.iter().all(|r| r.pass), &reports, fmt)
        }
        Command::Invariant { algebra, diagram } => {
            let d = load_diagram(diagram)?;
            if d.colored() {
                return Err(Failure::Input("J takes an uncolored diagram; use colored-invariant".into()));
            }
            invariant_output(&evaluator(algebra)?.universal_j(&d), fmt)
        }
        Command::ColoredInvariant { algebra, diagram, zeta: apply } => {
            let mut d = load_diagram(diagram)?;
            if *apply {
                if d.colored() {
                    return Err(Failure::Input("ζ takes an uncolored diagram".into()));
                }
                d = zeta(&d).diagram;
            }
            invariant_output(&evaluator(algebra)?.colored_j(&d), fmt)
        }
        Command::VerifyJj { algebra, diagram } => {
            let suite = match diagram {
                Some(p) => vec![(p.display().to_string(), load_diagram(p)?)],
                None => library::jj_suite(),
            };
            let e = evaluator(algebra)?;
            let entries: Vec<JjEntry> = suite
                .par_iter()
                .map(|(name, d)| {
                    let r = e.verify_jj(d);
                    JjEntry { diagram: name.clone(), pass: r.pass, witness: r.witness }
                })
                .collect();
            report(entries.iter().all(|x| x.pass), &entries, fmt)
        }
        Command::Moves { algebra, suite, depth, max_crossings, exceptions } => {
            let e = evaluator(algebra)?;
            let colored = *suite == Suite::Colored;
            let exceptions = colored && (*exceptions || e.ctx.hopf.antipode_squared_is_identity());
            let seeds = if colored { library::colored_seeds() } else { library::isotopy_seeds() };
            let cfg = PairConfig { depth: *depth, seed: cli.seed, exceptions, max_crossings: *max_crossings };
            let pairs = enumerate_move_pairs(&seeds, cfg);
            let r = check_pairs(&e, *suite, &pairs, cli.seed, exceptions);
            report(r.pass, &r, fmt)
        }
        Command::Complex { diagram, octahedral, stats } => {
            let d = load_diagram(diagram)?;
            let cx = if *octahedral {
                let cx = build_o(&d).map_err(|e: ComplexError| Failure::Input(e.to_string()))?;
                check_octahedral(&d, &cx).map_err(Failure::Math)?;
                cx
            } else {
                build_c(&d)
            };
            let r = ComplexReport { octahedral: *octahedral, stats: cx.stats(), classes: (!stats).then(|| classes(&cx)) };
            report(true, &r, fmt)
        }
    })
}

/// Evaluates both sides of every pair; the report lists the pairs whose
/// values differ.
fn check_pairs(e: &Evaluator, suite: Suite, pairs: &[MovePair], seed: u64, exceptions: bool) -> MovesReport {
    let differs = |p: &MovePair| match suite {
        Suite::Colored => e.colored_j(&p.before) != e.colored_j(&p.after),
        Suite::Reidemeister => e.universal_j(&p.before) != e.universal_j(&p.after),
        Suite::Zeta => e.colored_j(&zeta(&p.before).diagram) != e.colored_j(&zeta(&p.after).diagram),
    };
    let bad: Vec<bool> = pairs.par_iter().map(differs).collect();
    let mut kinds = BTreeMap::new();
    for p in pairs {
        let k = serde_json::to_value(p.mv.kind).expect("kind serializes");
        *kinds.entry(k.as_str().unwrap_or_default().to_string()).or_insert(0) += 1;
    }
    let involutive = e.ctx.hopf.antipode_squared_is_identity();
    let (failures, exception_failures): (Vec<PairFailure>, Vec<PairFailure>) = pairs
        .iter()
        .zip(&bad)
        .enumerate()
        .filter(|(_, (_, &b))| b)
        .map(|(index, (p, _))| PairFailure { index, kind: p.mv.kind, exception: p.mv.exception, site: p.site })
        .partition(|f| involutive || !f.exception);
    MovesReport {
        suite: format!("{suite:?}").to_lowercase(),
        algebra: e.ctx.hopf.name.clone(),
        seed,
        pairs: pairs.len(),
        kinds,
        exceptions_included: exceptions,
        involutive_antipode: involutive,
        pass: failures.is_empty(),
        failures,
        exception_failures,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}
