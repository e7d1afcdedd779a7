//! Command-line front end: one subcommand per toolkit operation, reading
//! automata in the TESTAS table format from a file or standard input.
//!
//! Exit codes: 0 success, 1 a well-posed negative answer (not synchronizing,
//! not colorable, limit reached), 2 input or usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use synchro::coloring::{find_k_sync_coloring, road_coloring, ColoringOptions, Stage};
use synchro::exact::{minimal_sync_search, BfsOracle};
use synchro::graph::{cycle_gcd, is_agw, scc, sink_components};
use synchro::layout::{compute_layout, render_svg};
use synchro::semigroup::{enumerate_semigroup, render_semigroup, DEFAULT_CAP};
use synchro::sync::{greedy_sync_word, is_synchronizing, Variant};
use synchro::testas::{parse_testas, serialize_testas};
use synchro::{Automaton, Coloring, Digraph, Error, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub code: i32,
    /// Human-readable output; the error message when `code` is 2.
    pub report: String,
    /// Machine-readable payload, present on success and negative answers.
    pub json: Option<Value>,
}

impl CommandResult {
    fn ok(report: String, json: Value) -> Self {
        CommandResult {
            code: EXIT_OK,
            report,
            json: Some(json),
        }
    }

    fn negative(report: String, json: Value) -> Self {
        CommandResult {
            code: EXIT_NEGATIVE,
            report,
            json: Some(json),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CommandResult {
            code: EXIT_USAGE,
            report: message.into(),
            json: None,
        }
    }

    /// Text to print on stdout for the chosen mode.
    pub fn output(&self, json_mode: bool) -> String {
        match (&self.json, json_mode) {
            (Some(v), true) => serde_json::to_string_pretty(v).expect("json"),
            _ => self.report.clone(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "synchro", version, about = "Synchronizing automata toolkit")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized search stages.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Input {
    /// TESTAS file, or `-` for standard input.
    pub file: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size, completeness, components, cycle gcd and synchronizability.
    Info(Input),
    /// Decide whether the automaton is synchronizing.
    Check(Input),
    /// Greedy synchronizing word.
    Word {
        #[arg(long, default_value = "A", value_parser = parse_variant)]
        algo: Variant,
        #[command(flatten)]
        input: Input,
    },
    /// Shortest synchronizing word.
    Minword {
        /// Use the unpruned breadth-first search instead.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Transition semigroup as an elements by generators table.
    Semigroup {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Gcd of the cycle lengths of the transition graph.
    Gcd(Input),
    /// Synchronizing recoloring of an AGW graph.
    Roadcolor(Input),
    /// k-synchronizing recoloring, k the cycle gcd.
    Ksync(Input),
    /// Cyclic SVG layout of the transition graph.
    Layout {
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Display width in pixels.
        #[arg(long)]
        width: Option<f64>,
        #[command(flatten)]
        input: Input,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

/// Parses `argv` (program name first) and runs the command, reading `-`
/// from `stdin`.
pub fn run<I, T, R>(argv: I, stdin: R) -> (CommandResult, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    R: Read,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let json = cli.json;
            (execute(&cli, stdin), json)
        }
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let result = CommandResult {
                code,
                report: e.render().to_string(),
                json: None,
            };
            (result, false)
        }
    }
}

fn load<R: Read>(input: &Input, mut stdin: R) -> Result<Automaton, CommandResult> {
    let text = if input.file == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| CommandResult::usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| CommandResult::usage(format!("cannot read {}: {e}", input.file)))?
    };
    parse_testas(&text).map_err(|e| CommandResult::usage(format!("{}: {e}", input.file)))
}

/// Maps library errors onto exit codes.
fn failure(e: Error, json: Value) -> CommandResult {
    match e {
        Error::NotSynchronizing
        | Error::NotAgw { .. }
        | Error::NotStronglyConnected
        | Error::NotMergeable { .. }
        | Error::CapExceeded { .. }
        | Error::SearchExhausted => CommandResult::negative(e.to_string(), json),
        other => CommandResult::usage(other.to_string()),
    }
}

pub fn execute<R: Read>(cli: &Cli, stdin: R) -> CommandResult {
    let opts = ColoringOptions {
        seed: cli.seed,
        ..ColoringOptions::default()
    };
    let outcome = match &cli.command {
        Command::Info(input) => load(input, stdin).map(|a| info(&a)),
        Command::Check(input) => load(input, stdin).map(|a| check(&a)),
        Command::Word { algo, input } => load(input, stdin).map(|a| word(&a, *algo)),
        Command::Minword { oracle, input } => load(input, stdin).map(|a| minword(&a, *oracle)),
        Command::Semigroup { cap, input } => load(input, stdin).map(|a| semigroup(&a, *cap)),
        Command::Gcd(input) => load(input, stdin).map(|a| gcd(&a)),
        Command::Roadcolor(input) => load(input, stdin).map(|a| roadcolor(&a, &opts)),
        Command::Ksync(input) => load(input, stdin).map(|a| ksync(&a, &opts)),
        Command::Layout { out, width, input } => {
            load(input, stdin).map(|a| layout(&a, out.as_deref(), *width))
        }
    };
    outcome.unwrap_or_else(|e| e)
}

fn letters(w: &Word) -> Value {
    json!(w.letters())
}

fn info(a: &Automaton) -> CommandResult {
    let g = a.transition_graph();
    let partition = scc(&g);
    let sizes = partition.sizes();
    let k = cycle_gcd(&g);
    let outdegree = g.uniform_outdegree();
    let sync = if a.is_complete() {
        Some(is_synchronizing(a).expect("complete"))
    } else {
        None
    };
    let mut r = String::new();
    writeln!(r, "states: {}", a.n()).unwrap();
    writeln!(r, "letters: {}", a.d()).unwrap();
    writeln!(r, "complete: {}", yes_no(a.is_complete())).unwrap();
    writeln!(r, "components: {} (sizes {})", sizes.len(), join(&sizes)).unwrap();
    writeln!(r, "strongly connected: {}", yes_no(sizes.len() == 1)).unwrap();
    match outdegree {
        Some(d) => writeln!(r, "uniform outdegree: {d}").unwrap(),
        None => writeln!(r, "uniform outdegree: no").unwrap(),
    }
    writeln!(r, "cycle gcd: {k}").unwrap();
    writeln!(r, "agw: {}", yes_no(is_agw(&g))).unwrap();
    match sync {
        Some(s) => write!(r, "synchronizing: {}", yes_no(s)).unwrap(),
        None => write!(r, "synchronizing: see `check` (partial automaton)").unwrap(),
    }
    let payload = json!({
        "n": a.n(),
        "d": a.d(),
        "complete": a.is_complete(),
        "components": partition.components(),
        "strongly_connected": sizes.len() == 1,
        "uniform_outdegree": outdegree,
        "cycle_gcd": k,
        "agw": is_agw(&g),
        "synchronizing": sync,
    });
    CommandResult::ok(r, payload)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn check(a: &Automaton) -> CommandResult {
    // Partial automata have no pair criterion; the exact search decides them.
    let sync = if a.is_complete() {
        is_synchronizing(a)
    } else {
        match minimal_sync_search(a, |_, _| {}) {
            Ok(_) => Ok(true),
            Err(Error::NotSynchronizing) => Ok(false),
            Err(e) => Err(e),
        }
    };
    match sync {
        Ok(true) => CommandResult::ok("synchronizing".into(), json!({ "synchronizing": true })),
        Ok(false) => CommandResult::negative("not synchronizing".into(), json!({ "synchronizing": false })),
        Err(e) => failure(e, Value::Null),
    }
}

fn word(a: &Automaton, variant: Variant) -> CommandResult {
    match greedy_sync_word(a, variant) {
        Ok(w) => CommandResult::ok(
            format!("{w}\nlength: {}", w.len()),
            json!({ "algo": variant.to_string(), "word": letters(&w), "length": w.len() }),
        ),
        Err(e) => failure(e, json!({ "synchronizing": false })),
    }
}

fn minword(a: &Automaton, oracle: bool) -> CommandResult {
    let report = if oracle {
        BfsOracle::default().run(a, |_, _| {})
    } else {
        minimal_sync_search(a, |_, _| {})
    };
    match report {
        Ok(r) => CommandResult::ok(
            format!("{}\nlength: {}\nexpanded: {}", r.word, r.word.len(), r.expanded),
            json!({
                "word": letters(&r.word),
                "length": r.word.len(),
                "expanded": r.expanded,
                "stored": r.stored,
                "oracle": oracle,
            }),
        ),
        Err(e) => failure(e, json!({ "synchronizing": false })),
    }
}

fn semigroup(a: &Automaton, cap: usize) -> CommandResult {
    match enumerate_semigroup(a, cap) {
        Ok(t) => {
            let rows: Vec<&[usize]> = t.rows().collect();
            let payload = json!({
                "size": t.len(),
                "generators": t.generator_count(),
                "table": rows,
            });
            CommandResult::ok(render_semigroup(&t), payload)
        }
        Err(e) => failure(e, json!({ "cap": cap })),
    }
}

fn gcd(a: &Automaton) -> CommandResult {
    let k = cycle_gcd(&a.transition_graph());
    let report = if k == 0 {
        "0 (acyclic)".to_string()
    } else {
        k.to_string()
    };
    CommandResult::ok(report, json!({ "cycle_gcd": k }))
}

fn underlying(a: &Automaton) -> Result<Digraph, CommandResult> {
    a.forget_colors()
        .map_err(|_| CommandResult::usage("coloring needs a complete automaton (uniform outdegree)"))
}

/// Hint for graphs that are not strongly connected.
fn sink_hint(g: &Digraph) -> String {
    let partition = scc(g);
    match sink_components(&partition).first() {
        Some(&c) => format!(
            "graph is not strongly connected; restrict to its sink component {{{}}}",
            join(partition.members(c))
        ),
        None => "graph is not strongly connected and has no unique sink component".into(),
    }
}

fn coloring_json(c: &Coloring) -> Value {
    json!((0..c.n()).map(|v| c.vertex(v)).collect::<Vec<_>>())
}

fn stage_name(s: Stage) -> &'static str {
    match s {
        Stage::Initial => "initial",
        Stage::RedSubgraph => "red-subgraph",
        Stage::Transposition => "transposition",
        Stage::Random => "random",
    }
}

fn roadcolor(a: &Automaton, opts: &ColoringOptions) -> CommandResult {
    let g = match underlying(a) {
        Ok(g) => g,
        Err(r) => return r,
    };
    if !synchro::graph::is_strongly_connected(&g) {
        return CommandResult::negative(sink_hint(&g), json!({ "colorable": false, "strongly_connected": false }));
    }
    match road_coloring(&g, opts) {
        Ok(rc) => {
            let w = greedy_sync_word(&rc.automaton, Variant::B).expect("verified synchronizing");
            let stages: Vec<&str> = rc.steps.iter().map(|s| stage_name(s.stage)).collect();
            let report = format!("{}\nword: {w}", serialize_testas(&rc.automaton));
            CommandResult::ok(
                report,
                json!({
                    "automaton": rc.automaton,
                    "coloring": coloring_json(&rc.coloring),
                    "word": letters(&w),
                    "stages": stages,
                }),
            )
        }
        Err(e @ Error::NotAgw { gcd, .. }) => {
            CommandResult::negative(e.to_string(), json!({ "colorable": false, "cycle_gcd": gcd }))
        }
        Err(e) => failure(e, json!({ "colorable": false })),
    }
}

fn ksync(a: &Automaton, opts: &ColoringOptions) -> CommandResult {
    let g = match underlying(a) {
        Ok(g) => g,
        Err(r) => return r,
    };
    match find_k_sync_coloring(&g, opts) {
        Ok(r) => CommandResult::ok(
            format!("{}\nk: {}\nword: {}", serialize_testas(&r.automaton), r.k, r.witness),
            json!({
                "k": r.k,
                "automaton": r.automaton,
                "coloring": coloring_json(&r.coloring),
                "word": letters(&r.witness),
            }),
        ),
        Err(Error::NotStronglyConnected) => {
            CommandResult::negative(sink_hint(&g), json!({ "strongly_connected": false }))
        }
        Err(e) => failure(e, Value::Null),
    }
}

fn layout(a: &Automaton, out: Option<&std::path::Path>, width: Option<f64>) -> CommandResult {
    if let Some(w) = width {
        if !(w.is_finite() && w > 0.0) {
            return CommandResult::usage(format!("--width must be positive, got {w}"));
        }
    }
    let mut model = compute_layout(a);
    model.display_width = width;
    let svg = render_svg(&model);
    let payload = json!({
        "components": model.sccs.len(),
        "vertices": model.positions.len(),
        "edges": model.edges.len(),
        "loops": model.loops.len(),
        "out": out.map(|p| p.display().to_string()),
    });
    match out {
        Some(path) => match std::fs::write(path, &svg) {
            Ok(()) => CommandResult::ok(
                format!(
                    "wrote {} ({} components, {} edges, {} loops)",
                    path.display(),
                    model.sccs.len(),
                    model.edges.len(),
                    model.loops.len()
                ),
                payload,
            ),
            Err(e) => CommandResult::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => CommandResult::ok(svg, payload),
    }
}
