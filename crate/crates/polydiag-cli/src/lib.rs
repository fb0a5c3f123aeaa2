//! Command-line surface for the polydiagonal subspace tools.
//!
//! Subcommands: `enumerate` (solver), `cir` (split-and-cir baseline),
//! `hasse` (DOT diagrams), `orbits` (signed-symmetry analysis), and
//! `quotient` (exact quotient matrices). Exit codes: 0 success, 1 usage
//! error, 2 data error, 3 arithmetic overflow.

mod input;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use polydiag::ciralg::split_and_cir;
use polydiag::lattice::{build_poset, DotOptions};
use polydiag::quotient::{nested_invariants, quotient_matrix};
use polydiag::solver::{enumerate, EnumerationMode, SolveConfig};
use polydiag::symmetry::{
    classify_ais, graph_automorphisms, orbits, SubspaceClass, SymmetryGroup,
};
use polydiag::{ColoringVector, Error, Int, IntegerMatrix, RationalMatrix};
use serde::Serialize;

pub use input::{parse_generators_file, parse_graph_file, parse_matrix_file, GraphKind};

/// Errors with their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad command line (exit 1).
    Usage(String),
    /// Unreadable or invalid input data (exit 2).
    Data(String),
    /// Exact arithmetic overflowed (exit 3).
    Overflow(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Overflow(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Overflow(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow { .. } => CliError::Overflow(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(format!("write failed: {e}"))
    }
}

#[derive(Parser)]
#[command(
    name = "polydiag",
    version,
    about = "Exact enumeration and analysis of invariant polydiagonal subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate coloring vectors of invariant polydiagonal subspaces
    Enumerate(EnumerateArgs),
    /// Enumerate invariant synchrony partitions with the split-and-cir baseline
    Cir(CirArgs),
    /// Emit the Hasse diagram of the invariant family as DOT text
    Hasse(HasseArgs),
    /// Orbits, stabilizers, and anomaly labels under signed graph symmetries
    Orbits(OrbitsArgs),
    /// Exact quotient matrix of an invariant coloring
    Quotient(QuotientArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["matrix", "graph"])))]
struct InputArgs {
    /// Square matrix file: whitespace-separated integer or p/q entries
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,
    /// Undirected edge list: 1-indexed `u v` lines, optional `n <count>` header
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Use the graph Laplacian
    #[arg(long, requires = "graph", conflicts_with = "adjacency")]
    laplacian: bool,
    /// Use the graph adjacency matrix
    #[arg(long, requires = "graph")]
    adjacency: bool,
}

impl InputArgs {
    fn graph_kind(&self) -> Result<GraphKind, CliError> {
        match (self.laplacian, self.adjacency) {
            (true, false) => Ok(GraphKind::Laplacian),
            (false, true) => Ok(GraphKind::Adjacency),
            _ => Err(CliError::Usage(
                "with --graph, pick one of --laplacian or --adjacency".into(),
            )),
        }
    }

    fn load(&self, err: &mut dyn Write) -> Result<IntegerMatrix, CliError> {
        if let Some(path) = &self.matrix {
            let (matrix, factor) = parse_matrix_file(path)?;
            if factor != 1 {
                writeln!(
                    err,
                    "note: scaled matrix entries by {factor} to clear denominators"
                )?;
            }
            return Ok(matrix);
        }
        let path = self.graph.as_ref().expect("clap requires a source");
        let (matrix, warnings) = parse_graph_file(path, self.graph_kind()?)?;
        for w in warnings {
            writeln!(err, "warning: {w}")?;
        }
        Ok(matrix)
    }

    /// The adjacency matrix of the underlying graph, for symmetry searches.
    fn load_adjacency(&self, err: &mut dyn Write) -> Result<IntegerMatrix, CliError> {
        if let Some(path) = &self.graph {
            let (matrix, warnings) = parse_graph_file(path, GraphKind::Adjacency)?;
            for w in warnings {
                writeln!(err, "warning: {w}")?;
            }
            return Ok(matrix);
        }
        let matrix = self.load(err)?;
        if !matrix.is_adjacency() {
            return Err(CliError::Data(
                "--auto-aut needs a 0/1 symmetric matrix with zero diagonal; \
                 pass --graph or supply --generators"
                    .into(),
            ));
        }
        Ok(matrix)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Polydiagonal,
    Synchrony,
    AntiSynchrony,
    /// All coloring vectors, ignoring the matrix
    Colorings,
}

impl ModeArg {
    fn to_mode(self) -> EnumerationMode {
        match self {
            ModeArg::Polydiagonal => EnumerationMode::Polydiagonal,
            ModeArg::Synchrony => EnumerationMode::Synchrony,
            ModeArg::AntiSynchrony => EnumerationMode::AntiSynchrony,
            ModeArg::Colorings => EnumerationMode::AllColorings,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModeArg::Polydiagonal => "polydiagonal",
            ModeArg::Synchrony => "synchrony",
            ModeArg::AntiSynchrony => "anti-synchrony",
            ModeArg::Colorings => "colorings",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// One coloring vector per line, entries space-separated
    Lines,
    Json,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Polydiagonal)]
    mode: ModeArg,
    /// Print only the number of solutions
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Lines)]
    format: FormatArg,
    /// Worker threads; above 1 the search tree is split into subtree tasks
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Prefix length at which the parallel search splits the tree
    #[arg(long, value_name = "D")]
    split_depth: Option<usize>,
}

#[derive(Args)]
struct CirArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Print only the number of invariant partitions
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Lines)]
    format: FormatArg,
}

#[derive(Args)]
struct HasseArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Polydiagonal)]
    mode: ModeArg,
    /// Write the DOT text to a file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("symmetries").required(true).args(["generators", "auto_aut"])))]
struct OrbitsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Signed permutation generators, one per line
    #[arg(long, value_name = "PATH")]
    generators: Option<PathBuf>,
    /// Search the graph automorphisms (small graphs only)
    #[arg(long)]
    auto_aut: bool,
    /// Do not adjoin the global sign flip to the group
    #[arg(long)]
    no_sign_flip: bool,
}

#[derive(Args)]
struct QuotientArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Coloring vector entries, space-separated, e.g. "1 2 1"
    #[arg(long, value_name = "ENTRIES")]
    coloring: String,
    /// Enumerate the invariant colorings of the quotient instead
    #[arg(long, conflicts_with = "dot")]
    nested: bool,
    /// Emit the quotient as a weighted digraph in DOT
    #[arg(long)]
    dot: bool,
}

/// Parses and runs a command line (without the binary name), writing to the
/// given streams. Returns the process exit code.
pub fn run<I, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = String>,
    W: Write,
    E: Write,
{
    let argv = std::iter::once("polydiag".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args, out, err),
        Command::Cir(args) => cmd_cir(args, out, err),
        Command::Hasse(args) => cmd_hasse(args, out, err),
        Command::Orbits(args) => cmd_orbits(args, out, err),
        Command::Quotient(args) => cmd_quotient(args, out, err),
    }
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    n: usize,
    mode: &'a str,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    solutions: Option<Vec<Vec<i64>>>,
}

fn entries_line(c: &ColoringVector) -> String {
    c.entries()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn json_entries(c: &ColoringVector) -> Vec<i64> {
    c.entries()
        .iter()
        .map(|&v| i64::try_from(v).expect("coloring entries are bounded by the length"))
        .collect()
}

/// Shared tail of `enumerate` and `cir`: print a solution family.
fn emit_family<W: Write>(
    out: &mut W,
    n: usize,
    mode: &str,
    solutions: Vec<ColoringVector>,
    count_only: bool,
    format: FormatArg,
) -> Result<(), CliError> {
    match format {
        FormatArg::Lines => {
            if count_only {
                writeln!(out, "{}", solutions.len())?;
            } else {
                for c in &solutions {
                    writeln!(out, "{}", entries_line(c))?;
                }
            }
        }
        FormatArg::Json => {
            let payload = JsonOutput {
                n,
                mode,
                count: solutions.len() as u64,
                solutions: (!count_only).then(|| solutions.iter().map(json_entries).collect()),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&payload).expect("serializable")
            )?;
        }
    }
    Ok(())
}

fn cmd_enumerate<W: Write, E: Write>(
    args: EnumerateArgs,
    out: &mut W,
    err: &mut E,
) -> Result<(), CliError> {
    if args.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let matrix = args.input.load(err)?;
    let config = SolveConfig {
        threads: args.threads,
        split_depth: args.split_depth,
    };
    let iter = enumerate(&matrix, args.mode.to_mode(), &config)?;
    if args.count_only && args.format == FormatArg::Lines {
        // Stream without buffering; solution sets can be huge.
        writeln!(out, "{}", iter.count())?;
        return Ok(());
    }
    let mut solutions: Vec<ColoringVector> = iter.collect();
    if args.threads > 1 {
        // Parallel emission order is unspecified; sorting restores the
        // sequential (lexicographic) output exactly.
        solutions.sort();
    }
    emit_family(
        out,
        matrix.n(),
        args.mode.name(),
        solutions,
        args.count_only,
        args.format,
    )
}

fn cmd_cir<W: Write, E: Write>(args: CirArgs, out: &mut W, err: &mut E) -> Result<(), CliError> {
    let matrix = args.input.load(err)?;
    let solutions: Vec<ColoringVector> = split_and_cir(&matrix)?
        .iter()
        .map(|p| p.to_coloring())
        .collect();
    emit_family(
        out,
        matrix.n(),
        "synchrony",
        solutions,
        args.count_only,
        args.format,
    )
}

fn cmd_hasse<W: Write, E: Write>(
    args: HasseArgs,
    out: &mut W,
    err: &mut E,
) -> Result<(), CliError> {
    let matrix = args.input.load(err)?;
    let family: Vec<ColoringVector> =
        enumerate(&matrix, args.mode.to_mode(), &SolveConfig::default())?.collect();
    let diagram = build_poset(family)?;
    let dot = diagram.to_dot(&DotOptions::default());
    match &args.output {
        Some(path) => std::fs::write(path, dot)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?,
        None => write!(out, "{dot}")?,
    }
    Ok(())
}

fn cmd_orbits<W: Write, E: Write>(
    args: OrbitsArgs,
    out: &mut W,
    err: &mut E,
) -> Result<(), CliError> {
    let matrix = args.input.load(err)?;
    let n = matrix.n();
    let group = if let Some(path) = &args.generators {
        let generators = parse_generators_file(path, n)?;
        SymmetryGroup::closure(n, &generators)?
    } else {
        let adjacency = args.input.load_adjacency(err)?;
        graph_automorphisms(&adjacency)?
    };
    let group = if args.no_sign_flip {
        group
    } else {
        group.adjoin_sign_flip()
    };
    let family: std::collections::BTreeSet<ColoringVector> =
        enumerate(&matrix, EnumerationMode::Polydiagonal, &SolveConfig::default())?.collect();
    let orbit_list = orbits(&group, &family)?;
    let report = classify_ais(&matrix, &group, &family)?;
    for warning in &report.warnings {
        writeln!(err, "warning: {warning}")?;
    }

    let synchrony = family.iter().filter(|c| c.is_synchrony()).count();
    writeln!(out, "n: {n}")?;
    writeln!(
        out,
        "family: {} polydiagonal ({} synchrony, {} anti-synchrony)",
        family.len(),
        synchrony,
        family.len() - synchrony
    )?;
    writeln!(out, "group order: {}", group.order())?;
    let anomalous_orbits = orbit_list
        .iter()
        .filter(|o| report.class_of(&o.representative) == Some(SubspaceClass::Anomalous))
        .count();
    writeln!(
        out,
        "orbits: {} ({} anomalous)",
        orbit_list.len(),
        anomalous_orbits
    )?;
    writeln!(out, "orbit\tsize\tstabilizer\tclass\trepresentative")?;
    for (idx, orbit) in orbit_list.iter().enumerate() {
        let stabilizer = group.point_stabilizer(&orbit.representative)?;
        let class = match report.class_of(&orbit.representative) {
            Some(SubspaceClass::Anomalous) => "anomalous",
            _ => "fixed-point",
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            idx + 1,
            orbit.len(),
            stabilizer.order(),
            class,
            entries_line(&orbit.representative)
        )?;
    }
    Ok(())
}

fn format_rational(q: polydiag::Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn quotient_dot(q: &RationalMatrix) -> String {
    use std::fmt::Write as _;
    let mut dot = String::from("digraph quotient {\n");
    for k in 0..q.rows() {
        let _ = writeln!(dot, "  c{} [label=\"{}\"];", k + 1, k + 1);
    }
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            let w = q.get(i, j);
            if w != polydiag::Rational::from(0) {
                // Entry (i, j) counts the edges from color j into color i.
                let _ = writeln!(
                    dot,
                    "  c{} -> c{} [label=\"{}\"];",
                    j + 1,
                    i + 1,
                    format_rational(w)
                );
            }
        }
    }
    dot.push_str("}\n");
    dot
}

fn cmd_quotient<W: Write, E: Write>(
    args: QuotientArgs,
    out: &mut W,
    err: &mut E,
) -> Result<(), CliError> {
    let matrix = args.input.load(err)?;
    let entries = args
        .coloring
        .split_whitespace()
        .map(|t| t.parse::<Int>())
        .collect::<Result<Vec<Int>, _>>()
        .map_err(|_| {
            CliError::Usage(format!(
                "--coloring expects space-separated integers, got `{}`",
                args.coloring
            ))
        })?;
    let coloring = ColoringVector::new(entries).map_err(CliError::from)?;
    if args.nested {
        let nested = nested_invariants(&matrix, &coloring)?;
        for c in &nested {
            writeln!(out, "{}", entries_line(c))?;
        }
        return Ok(());
    }
    let quotient = quotient_matrix(&matrix, &coloring)?;
    if args.dot {
        write!(out, "{}", quotient_dot(&quotient))?;
        return Ok(());
    }
    for i in 0..quotient.rows() {
        let row = (0..quotient.cols())
            .map(|j| format_rational(quotient.get(i, j)))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "{row}")?;
    }
    Ok(())
}
