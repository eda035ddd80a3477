//! Command-line front end. [`run`] takes the argument vector and output
//! streams and returns the exit code: 0 when every check passes, 1 when a
//! check fails, 2 on usage, input or parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{AlgebraError, BlAlgebra};
use crate::builtin::{build_str, default_corpus, BuildError, Instance};
use crate::document::{parse_algebra, serialize_algebra, AlgebraDocument, DocumentError};
use crate::filters::{all_filters, classify_algebra, maximal_filters, radical, Filter};
use crate::operators::{
    classify_state_algebra, enumerate_operators_with, kernel, maximal_state_filters, rad_sigma, search_nonstrong,
    state_filters, SearchClass, StateOperator,
};
use crate::report::{Check, Verdict};
use crate::states::{check_state, extremal_states, sigma_compatible_correspondence, RationalState};
use crate::suite::{load_corpus, run_suite, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "blstate", version, about = "Finite BL-algebras with state-operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical document of a built-in algebra.
    Construct {
        /// e.g. `mv-chain(3)`, `product(mv-chain(1),mv-chain(1))`, `four-element`
        spec: String,
    },
    /// Check the tables and every named operator.
    Verify { input: String },
    /// List every operator of a class.
    EnumerateOperators {
        input: String,
        #[arg(long, value_enum, default_value = "state")]
        class: ClassArg,
        #[arg(long)]
        parallel: bool,
    },
    /// Filters, maximal filters and the radical; state-filters with an operator.
    Filters {
        input: String,
        #[arg(long)]
        operator: Option<String>,
    },
    /// Local, perfect, simple and semisimple; the state classification with an operator.
    Classify {
        input: String,
        #[arg(long)]
        operator: Option<String>,
    },
    /// Extremal states, document states and σ-compatible states.
    States {
        input: String,
        #[arg(long)]
        operator: Option<String>,
    },
    /// State-operators that are not strong, and proper radical inclusions.
    SearchNonstrong {
        input: String,
        #[arg(long)]
        parallel: bool,
    },
    /// Evaluate every claim on a corpus.
    #[command(name = "paper-suite", visible_alias = "suite")]
    Suite {
        /// Comma-separated claim ids or group prefixes.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        /// Directory of `.json` documents instead of the built-in corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        keep_going: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Include per-instance wall time (reports then differ between runs).
        #[arg(long)]
        timings: bool,
        /// Write the report here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    State,
    Strong,
    Morphism,
    Endomorphism,
}

impl From<ClassArg> for SearchClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::State => SearchClass::State,
            ClassArg::Strong => SearchClass::Strong,
            ClassArg::Morphism => SearchClass::Morphism,
            ClassArg::Endomorphism => SearchClass::Endomorphism,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// How a command ended, before it becomes an exit code.
enum Failure {
    Usage(String),
    Check(String),
    /// The reader of standard output went away.
    Closed,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

/// An algebra loaded from a document path or a built-in specifier.
struct Loaded {
    instance: Instance,
    states: Vec<(String, RationalState)>,
}

fn load_input(input: &str) -> Result<Loaded, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let doc = parse_algebra(&text).map_err(|e| Failure::Usage(format!("{input}: {e}")))?;
        let loaded = doc.load().map_err(|e| match e {
            DocumentError::Validation(AlgebraError::Violation(v)) => {
                let at: Vec<&str> = v.witness.iter().map(|&x| doc.labels.get(x).map_or("?", String::as_str)).collect();
                Failure::Check(format!(
                    "{input}: axiom violation: {} ({}) fails at ({})",
                    v.law.group(),
                    v.law.name(),
                    at.join(", ")
                ))
            }
            DocumentError::Validation(_) => Failure::Check(format!("{input}: {e}")),
            other => Failure::Usage(format!("{input}: {other}")),
        })?;
        let id = path.file_stem().map_or_else(|| input.to_owned(), |s| s.to_string_lossy().into_owned());
        return Ok(Loaded {
            instance: Instance { id, algebra: loaded.algebra, operators: loaded.operators, rejected: Vec::new() },
            states: loaded.states,
        });
    }
    match build_str(input) {
        Ok(instance) => Ok(Loaded { instance, states: Vec::new() }),
        Err(BuildError::Algebra(e)) => Err(Failure::Check(format!("{input}: {e}"))),
        Err(e) => Err(Failure::Usage(format!("{input}: not a file, and not a built-in algebra ({e})"))),
    }
}

fn pick_operator<'a>(inst: &'a Instance, name: &str) -> Result<&'a StateOperator, Failure> {
    inst.operator(name).ok_or_else(|| {
        let known: Vec<&str> = inst.operators.iter().map(|(n, _)| n.as_str()).collect();
        Failure::Usage(format!("no operator named {name:?} (available: {})", known.join(", ")))
    })
}

fn set_labels(a: &BlAlgebra, f: &Filter) -> String {
    format!("{{{}}}", f.labels(a).join(", "))
}

fn map_labels(a: &BlAlgebra, s: &StateOperator) -> String {
    format!("[{}]", s.labels(a).join(", "))
}

fn witness(a: &BlAlgebra, w: &[usize]) -> String {
    let labels: Vec<&str> = w.iter().map(|&x| if x < a.size() { a.label(x) } else { "?" }).collect();
    format!("({})", labels.join(", "))
}

/// Prints checks that are not plain passes; returns whether none failed.
fn print_checks(out: &mut dyn Write, a: &BlAlgebra, checks: &[Check]) -> std::io::Result<bool> {
    let mut ok = true;
    for c in checks {
        if c.verdict == Verdict::Pass || c.verdict == Verdict::Inapplicable {
            continue;
        }
        ok &= c.verdict != Verdict::Fail;
        write!(out, "  {}: {}", c.verdict.as_str(), c.claim)?;
        if !c.witness.is_empty() {
            write!(out, " at {}", witness(a, &c.witness))?;
        }
        if !c.note.is_empty() {
            write!(out, " -- {}", c.note)?;
        }
        writeln!(out)?;
    }
    let failed = checks.iter().filter(|c| c.verdict == Verdict::Fail).count();
    writeln!(out, "checks: {} evaluated, {failed} failed", checks.len())?;
    Ok(ok)
}

fn construct(out: &mut dyn Write, spec: &str) -> Outcome {
    let inst = build_str(spec).map_err(|e| match e {
        BuildError::Algebra(e) => Failure::Check(e.to_string()),
        e => Failure::Usage(e.to_string()),
    })?;
    let a = &inst.algebra;
    let doc = inst.operators.iter().fold(AlgebraDocument::from_algebra(a), |d, (name, s)| d.with_operator(a, name, s));
    out.write_all(serialize_algebra(&doc).as_bytes())?;
    Ok(true)
}

fn verify(out: &mut dyn Write, input: &str) -> Outcome {
    let loaded = load_input(input)?;
    let inst = &loaded.instance;
    let a = &inst.algebra;
    writeln!(out, "algebra {}: {} elements, valid BL-algebra", inst.id, a.size())?;
    let v = a.classify_variety();
    for (name, verdict) in [("mv", &v.is_mv), ("godel", &v.is_godel), ("linear", &v.is_linear)] {
        write!(out, "  {name}: {}", verdict.holds)?;
        if !verdict.holds {
            write!(out, " (witness {})", witness(a, &verdict.witness))?;
        }
        writeln!(out)?;
    }
    let mut ok = true;
    for (name, s) in &inst.operators {
        writeln!(
            out,
            "operator {name} = {}: class {}, preserves impl: {}",
            map_labels(a, s),
            s.class().as_str(),
            s.preserves_impl()
        )?;
        for viol in &s.verdict().violations {
            writeln!(out, "  {} ({}) fails at {}", viol.axiom.name(), viol.axiom.formula(), witness(a, &viol.witness))?;
        }
        if let Some(d) = &s.verdict().diagnostic {
            writeln!(out, "  first failing consequence: {} at {} -- {}", d.claim, witness(a, &d.witness), d.note)?;
        }
        if s.is_state() {
            let image = s.image(a).map_err(|e| Failure::Check(e.to_string()))?;
            writeln!(out, "  image: {{{}}}", image.algebra.labels().join(", "))?;
        } else {
            ok = false;
        }
    }
    for (name, st) in &loaded.states {
        let v = check_state(a, st);
        writeln!(out, "state {name} = {st}: bosbach {}, riecan {}, extremal {}", v.bosbach, v.riecan, v.extremal)?;
        if let Some(w) = &v.bosbach_witness {
            writeln!(out, "  Bosbach identity fails at {}", witness(a, w))?;
            ok = false;
        }
    }
    Ok(ok)
}

fn enumerate(out: &mut dyn Write, input: &str, class: ClassArg, parallel: bool) -> Outcome {
    let inst = load_input(input)?.instance;
    let a = &inst.algebra;
    let class = SearchClass::from(class);
    let ops = enumerate_operators_with(a, class, parallel);
    writeln!(out, "{} {} operator(s) on {}", ops.len(), class.as_str(), inst.id)?;
    for s in &ops {
        writeln!(out, "{}", map_labels(a, s))?;
    }
    Ok(true)
}

fn filters(out: &mut dyn Write, input: &str, operator: Option<&str>) -> Outcome {
    let inst = load_input(input)?.instance;
    let a = &inst.algebra;
    writeln!(out, "filters:")?;
    for f in all_filters(a) {
        writeln!(out, "  {}", set_labels(a, &f))?;
    }
    writeln!(out, "maximal filters:")?;
    for f in maximal_filters(a) {
        writeln!(out, "  {}", set_labels(a, &f))?;
    }
    writeln!(out, "radical: {}", set_labels(a, &radical(a)))?;
    if let Some(name) = operator {
        let s = pick_operator(&inst, name)?;
        if !s.is_state() {
            return Err(Failure::Check(format!("operator {name} is not a state-operator")));
        }
        writeln!(out, "kernel: {}", set_labels(a, &kernel(a, s)))?;
        writeln!(out, "state-filters:")?;
        for f in state_filters(a, s) {
            writeln!(out, "  {}", set_labels(a, &f))?;
        }
        writeln!(out, "maximal state-filters:")?;
        for f in maximal_state_filters(a, s) {
            writeln!(out, "  {}", set_labels(a, &f))?;
        }
        writeln!(out, "rad_sigma: {}", set_labels(a, &rad_sigma(a, s)))?;
    }
    Ok(true)
}

fn classify(out: &mut dyn Write, input: &str, operator: Option<&str>) -> Outcome {
    let inst = load_input(input)?.instance;
    let a = &inst.algebra;
    let c = classify_algebra(a);
    for (name, v) in [
        ("local", c.local),
        ("perfect", c.perfect),
        ("simple", c.simple),
        ("semisimple", c.semisimple),
        ("locally_finite", c.locally_finite),
        ("linear", c.linear),
    ] {
        writeln!(out, "{name}={v}")?;
    }
    let mut checks = c.checks.clone();
    if let Some(name) = operator {
        let s = pick_operator(&inst, name)?;
        let sc = classify_state_algebra(a, s)
            .map_err(|_| Failure::Check(format!("operator {name} is not a state-operator")))?;
        writeln!(out, "ssbl_simple={}", sc.ssbl_simple)?;
        writeln!(out, "sssbl_semisimple={}", sc.sssbl_semisimple)?;
        writeln!(out, "radical_faithful={}", sc.radical_faithful)?;
        writeln!(out, "faithful={}", sc.kernel.faithful)?;
        writeln!(out, "kernel={}", set_labels(a, &sc.ker))?;
        writeln!(out, "kernel_maximal={}", maximal_filters(a).contains(&sc.ker))?;
        writeln!(out, "rad_sigma={}", set_labels(a, &sc.rad_sigma))?;
        writeln!(out, "image={{{}}}", sc.image.algebra.labels().join(", "))?;
        checks.extend(sc.checks);
    }
    Ok(print_checks(out, a, &checks)?)
}

fn states(out: &mut dyn Write, input: &str, operator: Option<&str>) -> Outcome {
    let loaded = load_input(input)?;
    let inst = &loaded.instance;
    let a = &inst.algebra;
    if a.is_trivial() {
        return Err(Failure::Check("the one-element algebra has no states".into()));
    }
    let space = extremal_states(a);
    let mut checks = space.checks.clone();
    writeln!(out, "extremal states:")?;
    for (s, f) in space.extremal_states.iter().zip(&space.filters) {
        writeln!(out, "  {s} from maximal filter {}", set_labels(a, f))?;
        checks.extend(check_state(a, s).checks);
    }
    for (name, st) in &loaded.states {
        let v = check_state(a, st);
        writeln!(
            out,
            "state {name} = {st}: bosbach {}, riecan {}, state-morphism {}, extremal {}",
            v.bosbach, v.riecan, v.state_morphism, v.extremal
        )?;
        checks.extend(v.checks.into_iter().map(|c| c.with_context(&format!("state {name}"))));
    }
    if let Some(name) = operator {
        let s = pick_operator(inst, name)?;
        let r = sigma_compatible_correspondence(a, s)
            .map_err(|_| Failure::Check(format!("operator {name} is not a state-operator")))?;
        writeln!(out, "extremal states on the image {{{}}}:", r.image.algebra.labels().join(", "))?;
        for st in &r.image_extremal {
            writeln!(out, "  {st}")?;
        }
        match &r.compatible_extremal {
            Some(v) => {
                writeln!(out, "extremal {name}-compatible states:")?;
                for st in v {
                    writeln!(out, "  {st}")?;
                }
            }
            None => writeln!(out, "extremal {name}-compatible states: vertex search too large")?,
        }
        writeln!(out, "the correspondence is certified as an affine bijection only")?;
        checks.extend(r.checks);
    }
    Ok(print_checks(out, a, &checks)?)
}

fn nonstrong(out: &mut dyn Write, input: &str, parallel: bool) -> Outcome {
    let inst = load_input(input)?.instance;
    let a = &inst.algebra;
    let r = search_nonstrong(a, parallel);
    writeln!(out, "state-operators: {}", r.state_count)?;
    writeln!(out, "strong: {}", r.strong_count)?;
    writeln!(out, "not strong: {}", r.not_strong.len())?;
    for s in &r.not_strong {
        writeln!(out, "  {}", map_labels(a, s))?;
    }
    writeln!(out, "proper radical inclusion: {}", r.proper_radical_inclusion.len())?;
    for s in &r.proper_radical_inclusion {
        writeln!(out, "  {}", map_labels(a, s))?;
    }
    if r.not_strong.is_empty() && r.proper_radical_inclusion.is_empty() {
        writeln!(out, "no candidates on this algebra")?;
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn claim_suite(
    out: &mut dyn Write,
    claims: Option<Vec<String>>,
    corpus: Option<&Path>,
    keep_going: bool,
    workers: Option<usize>,
    format: Format,
    timings: bool,
    output: Option<&Path>,
) -> Outcome {
    let instances = match corpus {
        Some(dir) => load_corpus(dir).map_err(|e| Failure::Usage(e.to_string()))?,
        None => default_corpus(),
    };
    let opts = SuiteOptions { claims, keep_going, workers, timings };
    let report = run_suite(&instances, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(!report.has_failures())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Construct { spec } => construct(out, spec),
        Command::Verify { input } => verify(out, input),
        Command::EnumerateOperators { input, class, parallel } => enumerate(out, input, *class, *parallel),
        Command::Filters { input, operator } => filters(out, input, operator.as_deref()),
        Command::Classify { input, operator } => classify(out, input, operator.as_deref()),
        Command::States { input, operator } => states(out, input, operator.as_deref()),
        Command::SearchNonstrong { input, parallel } => nonstrong(out, input, *parallel),
        Command::Suite { claims, corpus, keep_going, workers, format, timings, output } => claim_suite(
            out,
            claims.clone(),
            corpus.as_deref(),
            *keep_going,
            *workers,
            *format,
            *timings,
            output.as_deref(),
        ),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Closed) => 0,
    }
}
