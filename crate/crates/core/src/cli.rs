//! The `gyrocay` command line. Exit codes: 0 success, 1 verification failure
//! or theorem violation, 2 usage, parse or domain errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{is_cycle, vertex_transitivity};
use crate::cayley::{
    build_cayley, connected_components, gyr_condition_failure, is_symmetric_set, one_way_arc, GyrCondition, Side,
};
use crate::error::{GyroError, Result};
use crate::gyrogroup::{verify_axioms, Element, Gyrogroup};
use crate::io::{builtin, builtin_text, export_graph, load_source, parse_table_file, ExportFormat, ExportOptions};
use crate::subgyro::{
    all_subgyrogroups, is_l_subgyrogroup, is_subgyrogroup, left_closure, right_closure, GenSet,
    DEFAULT_ENUMERATION_BOUND,
};
use crate::theorems::{check_all, search_counterexamples, SearchConfig, TheoremId};

#[derive(Parser, Debug)]
#[command(name = "gyrocay", version, about = "Finite gyrogroups and their Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug)]
struct ElementList(Vec<Element>);

fn parse_element_list(s: &str) -> std::result::Result<ElementList, String> {
    if s.trim().is_empty() {
        return Ok(ElementList(vec![]));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Element>()
                .map_err(|_| format!("`{t}` is not an element index"))
        })
        .collect::<std::result::Result<_, _>>()
        .map(ElementList)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "R", alias = "r")]
    R,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::Left,
            SideArg::R => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClosureArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the gyrogroup axioms.
    Verify {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
    },
    /// Order, identity, inverses, element orders and gyrations.
    Info {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
    },
    /// Enumerate subgyrogroups, or close a set on one side.
    Subgyro {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
        /// Only list L-subgyrogroups.
        #[arg(long)]
        l_only: bool,
        /// Comma-separated elements to close instead of enumerating.
        #[arg(long, value_parser = parse_element_list)]
        set: Option<ElementList>,
        #[arg(long, value_enum, default_value = "left")]
        closure: ClosureArg,
        /// Largest order the exhaustive enumeration accepts.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_order: usize,
    },
    /// Build a Cayley graph and export it.
    Cayley {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_parser = parse_element_list)]
        set: ElementList,
        #[arg(long, value_enum, default_value = "dot")]
        format: FormatArg,
        /// Label DOT edges with their generators.
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Structural properties of a Cayley graph.
    Analyze {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_parser = parse_element_list)]
        set: ElementList,
    },
    /// Evaluate every theorem on one generating set.
    Theorems {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
        #[arg(long, value_parser = parse_element_list)]
        set: ElementList,
    },
    /// Sweep all small generating sets for theorem violations and converse failures.
    Search {
        /// Table file path or builtin:g8|g15|g16.
        src: String,
        #[arg(long, default_value_t = 3)]
        max_set_size: usize,
        #[arg(long)]
        symmetric_only: bool,
        /// Restrict to these theorem ids (repeatable).
        #[arg(long = "theorem")]
        theorems: Vec<String>,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, &mut ClosedPipeIsFine(out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Treats a closed downstream pipe (e.g. `| head`) as a successful write.
struct ClosedPipeIsFine<'a>(&'a mut dyn Write);

impl Write for ClosedPipeIsFine<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        match self.0.write(buf) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(buf.len()),
            other => other,
        }
    }

    fn flush(&mut self) -> std::io::Result<()> {
        match self.0.flush() {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other,
        }
    }
}

fn fmt_set<'a>(xs: impl IntoIterator<Item = &'a Element>) -> String {
    let items: Vec<String> = xs.into_iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn io_err(e: std::io::Error) -> GyroError {
    GyroError::Io(e.to_string())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<u8> {
    match cmd {
        Command::Verify { src } => verify(&src, out),
        Command::Info { src } => info(&load_source(&src)?, out).map(|_| 0),
        Command::Subgyro {
            src,
            l_only,
            set,
            closure,
            max_order,
        } => {
            let g = load_source(&src)?;
            subgyro(&g, l_only, set, closure, max_order, out).map(|_| 0)
        }
        Command::Cayley {
            src,
            side,
            set,
            format,
            labels,
            out: path,
        } => {
            let g = load_source(&src)?;
            let s = GenSet::new(&g, set.0)?;
            let graph = build_cayley(&g, &s, side.into())?;
            let format = match format {
                FormatArg::Dot => ExportFormat::Dot,
                FormatArg::Json => ExportFormat::Json,
            };
            let options = ExportOptions {
                labels,
                name: Some(format!(
                    "{}Cay({}, {})",
                    Side::from(side),
                    g.name().unwrap_or("G"),
                    fmt_set(s.as_slice())
                )),
            };
            let text = export_graph(&graph, format, &options);
            match path {
                Some(p) => std::fs::write(&p, text).map_err(|e| GyroError::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(0)
        }
        Command::Analyze { src, side, set } => {
            let g = load_source(&src)?;
            let s = GenSet::new(&g, set.0)?;
            analyze(&g, &s, side.into(), out).map(|_| 0)
        }
        Command::Theorems { src, set } => {
            let g = load_source(&src)?;
            let s = GenSet::new(&g, set.0)?;
            let reports = check_all(&g, &s)?;
            for r in &reports {
                writeln!(out, "{r}").map_err(io_err)?;
            }
            Ok(if reports.iter().all(|r| r.consistent) { 0 } else { 1 })
        }
        Command::Search {
            src,
            max_set_size,
            symmetric_only,
            theorems,
        } => {
            let g = load_source(&src)?;
            let filter = if theorems.is_empty() {
                None
            } else {
                Some(theorems.iter().map(|t| t.parse::<TheoremId>()).collect::<Result<_>>()?)
            };
            let cfg = SearchConfig {
                max_set_size,
                require_symmetric: symmetric_only,
                theorems: filter,
                pool: None,
            };
            let outcome = search_counterexamples(&g, &cfg)?;
            writeln!(out, "examined={}", outcome.examined).map_err(io_err)?;
            writeln!(out, "violations={}", outcome.violations.len()).map_err(io_err)?;
            for r in &outcome.violations {
                writeln!(out, "  {r}").map_err(io_err)?;
            }
            writeln!(out, "converse_failures={}", outcome.converse_failures.len()).map_err(io_err)?;
            for c in &outcome.converse_failures {
                writeln!(out, "  {} S={}", c.theorem, fmt_set(&c.generators)).map_err(io_err)?;
            }
            Ok(if outcome.violations.is_empty() { 0 } else { 1 })
        }
    }
}

fn verify(src: &str, out: &mut dyn Write) -> Result<u8> {
    let text = match src.strip_prefix("builtin:") {
        Some(name) => {
            builtin(name)?;
            builtin_text(name).expect("known builtin").to_string()
        }
        None => std::fs::read_to_string(src).map_err(|e| GyroError::Io(format!("{src}: {e}")))?,
    };
    let file = parse_table_file(&text)?;
    let (report, _) = verify_axioms(&file.table, file.gyrations.as_ref());
    writeln!(out, "order={}", file.table.order()).map_err(io_err)?;
    writeln!(
        out,
        "gyrations={}",
        if file.gyrations.is_some() {
            "supplied"
        } else {
            "derived"
        }
    )
    .map_err(io_err)?;
    writeln!(out, "{report}").map_err(io_err)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn info(g: &Gyrogroup, out: &mut dyn Write) -> Result<()> {
    let mut s = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(s, "name={}", g.name().unwrap_or("-"));
    let _ = writeln!(s, "order={}", g.order());
    let _ = writeln!(s, "identity={}", g.identity());
    let _ = writeln!(s, "group={}", g.is_group());
    let _ = writeln!(s, "element  inverse  order");
    for a in g.elements() {
        let _ = writeln!(s, "{a:>7}  {:>7}  {:>5}", g.neg(a), g.element_order(a));
    }
    let mut gyrations: BTreeMap<String, usize> = BTreeMap::new();
    for a in g.elements() {
        for b in g.elements() {
            *gyrations.entry(g.gyr_permutation(a, b).to_string()).or_default() += 1;
        }
    }
    let _ = writeln!(s, "distinct gyrations={}", gyrations.len());
    for (p, count) in gyrations {
        let _ = writeln!(s, "  {p}  x{count}");
    }
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn subgyro(
    g: &Gyrogroup,
    l_only: bool,
    set: Option<ElementList>,
    closure: ClosureArg,
    max_order: usize,
    out: &mut dyn Write,
) -> Result<()> {
    let mut w = |line: String| writeln!(out, "{line}").map_err(io_err);
    match set {
        Some(list) => {
            let s = GenSet::new(g, list.0)?;
            let c = match closure {
                ClosureArg::Left => left_closure(g, &s),
                ClosureArg::Right => right_closure(g, &s),
            };
            w(format!("closure={}", fmt_set(&c)))?;
            let (sub, l) = if c.is_empty() {
                (false, false)
            } else {
                (is_subgyrogroup(g, &c)?, is_l_subgyrogroup(g, &c)?)
            };
            w(format!("subgyrogroup={sub}"))?;
            w(format!("l_subgyrogroup={l}"))?;
        }
        None => {
            let subs = all_subgyrogroups(g, l_only, max_order)?;
            w(format!("count={}", subs.len()))?;
            for h in subs {
                w(format!("{} size={} L={}", fmt_set(h.carrier()), h.len(), h.is_l()))?;
            }
        }
    }
    Ok(())
}

fn analyze(g: &Gyrogroup, s: &GenSet, side: Side, out: &mut dyn Write) -> Result<()> {
    let graph = build_cayley(g, s, side)?;
    let comps = connected_components(&graph);
    let transitivity = vertex_transitivity(&graph);
    let mut lines = vec![
        format!(
            "graph={side}Cay({}, {})",
            g.name().unwrap_or("G"),
            fmt_set(s.as_slice())
        ),
        format!("vertices={} arcs={}", graph.n(), graph.arc_count()),
        format!("symmetric={}", is_symmetric_set(g, s)?),
    ];
    match one_way_arc(&graph) {
        None => lines.push("undirected=true".into()),
        Some((u, v)) => lines.push(format!("undirected=false one_way_arc={u}->{v}")),
    }
    lines.push(format!("components={}", comps.count()));
    for b in &comps.blocks {
        lines.push(format!("  {}", fmt_set(b)));
    }
    lines.push(format!("connected={}", comps.is_connected()));
    lines.push(format!("cycle={}", is_cycle(&graph)));
    match transitivity.witness {
        None => lines.push("vertex_transitive=true".into()),
        Some((a, b)) => lines.push(format!("vertex_transitive=false no_automorphism={a}->{b}")),
    }
    let h = right_closure(g, s);
    lines.push("gyration conditions:".into());
    for mode in [
        GyrCondition::IdentityOnGxS,
        GyrCondition::SetwiseGxS,
        GyrCondition::SetwiseGxG,
        GyrCondition::SetwiseGxH(h),
        GyrCondition::PointInS,
    ] {
        let line = match gyr_condition_failure(g, s, &mode)? {
            None => format!("  {mode}: true"),
            Some(w) => format!("  {mode}: false (g={}, h={}, x={})", w.g, w.h, w.x),
        };
        lines.push(line);
    }
    for line in lines {
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}
