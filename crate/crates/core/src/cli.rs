//! Command-line interface. Results go to standard output or `--out`,
//! diagnostics to standard error.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 budget exceeded.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::aut::{automorphism_group, SearchLimits};
use crate::construct::{
    build_gamma_1, build_gamma_g, check_gamma_1_budget, check_gamma_g_budget, Budget, ConstructionResult,
};
use crate::error::{Error, Result};
use crate::genus::{exact_genus, genus_bounds, heuristic_genus_upper, GenusReport};
use crate::graph::io::{read_graph_file, write_dot, write_edge_list, write_graph6};
use crate::groups::{named_group, FiniteGroup};
use crate::trees::{certify_family, CertifiedFamily, Family, TreeFamily};
use crate::verify::{gamma_1_max_index, verify_lemma2, verify_theorem1, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "frucht",
    version,
    about = "Asymmetric gadget graphs, Frucht-style constructions, automorphism groups and genus bounds",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage or input error, 3 budget exceeded."
)]
struct Cli {
    /// Random seed for heuristic searches.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Largest graph any construction may build.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget_vertices: usize,
    /// Search-node limit for automorphism and exact genus searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Output format: json or text for results; graph6, dot or edge-list for `export` [default: text].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Graph6,
    Dot,
    EdgeList,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gadget trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Build a constructed graph.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Finite groups given by Cayley tables.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Automorphism group of a graph file (edge list, or graph6 for .g6).
    Aut {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Genus bounds and searches.
    #[command(subcommand)]
    Genus(GenusCmd),
    /// Check the asymmetry and group-realization claims end to end.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Convert a graph file to graph6, dot or an edge list.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct FamilyArg {
    /// Tree family: unary or compact.
    #[arg(long, default_value = "unary", value_parser = parse_family)]
    family: Family,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum TreeCmd {
    /// Print the tree T_m.
    Gen {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        m: usize,
    },
    /// Check conditions (a)-(e) for 0 ≤ m ≤ max-m.
    Certify {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        max_m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// The asymmetric graph built over the n-cube.
    Asym {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// The graph whose automorphism group is the given group.
    Group {
        /// Named group (cyclic:k, dihedral:k, sym:k, klein4, quat8, trivial) or a Cayley table CSV.
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        family: FamilyArg,
        /// Skip the associativity check for tables of order above 256.
        #[arg(long)]
        trust_table: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Validate a Cayley table CSV (first row: element labels, identity first).
    Validate {
        #[arg(long)]
        table: PathBuf,
        /// Skip the associativity check for tables of order above 256.
        #[arg(long)]
        trust_table: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenusCmd {
    /// Euler–girth lower bound and cycle-rank upper bound.
    Bounds {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustive search over rotation systems (uses --budget-nodes).
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Simulated annealing upper bound (uses --seed).
    Heuristic {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// The n-cube construction is asymmetric and has the hypercube's genus.
    Lemma2 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// The group construction realizes G and meets the genus bound.
    Theorem1 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        trust_table: bool,
    },
}

/// What a subcommand produced.
struct Output {
    text: String,
    json: Value,
    success: bool,
    /// Extra files written beside `--out`.
    sidecars: Vec<(PathBuf, String)>,
}

impl Output {
    fn new(text: String, json: Value, success: bool) -> Self {
        Output {
            text,
            json,
            success,
            sidecars: Vec::new(),
        }
    }
}

struct Ctx {
    seed: u64,
    budget: Budget,
    limits: SearchLimits,
    format: Format,
    out: Option<PathBuf>,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let is_export = matches!(cli.command, Command::Export { .. });
    let format = match (cli.format, is_export) {
        (None, false) => Format::Text,
        (None, true) => Format::EdgeList,
        (Some(f @ (Format::Text | Format::Json)), false) => f,
        (Some(f @ (Format::Graph6 | Format::Dot | Format::EdgeList)), true) => f,
        (Some(f), _) => {
            return Err(Error::Invalid(format!(
                "--format {} is not available for this command",
                f.to_possible_value().expect("no skipped variants").get_name()
            )))
        }
    };
    let ctx = Ctx {
        seed: cli.seed,
        budget: Budget {
            max_vertices: cli.budget_vertices,
        },
        limits: SearchLimits {
            max_nodes: cli.budget_nodes,
        },
        format,
        out: cli.out,
    };
    let (output, code_override) = match cli.command {
        Command::Tree(c) => (tree(c, &ctx)?, None),
        Command::Build(c) => (build(c, &ctx)?, None),
        Command::Group(c) => (group(c)?, None),
        Command::Aut { input } => (aut(&input, &ctx)?, None),
        Command::Genus(c) => {
            let out = genus(c, &ctx)?;
            let exhausted = out.json.get("budget_exhausted") == Some(&Value::Bool(true));
            (out, exhausted.then_some(EXIT_BUDGET))
        }
        Command::Verify(c) => (verify(c, &ctx)?, None),
        Command::Export { input } => {
            let g = read_graph_file(&input)?;
            let text = match ctx.format {
                Format::Graph6 => write_graph6(&g)?,
                Format::Dot => write_dot(&g),
                _ => write_edge_list(&g),
            };
            emit_raw(&text, ctx.out.as_deref())?;
            return Ok(EXIT_OK);
        }
    };
    let rendered = match ctx.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output.json).expect("serializable");
            s.push('\n');
            s
        }
        _ => output.text,
    };
    emit_raw(&rendered, ctx.out.as_deref())?;
    for (path, body) in &output.sidecars {
        fs::write(path, body)?;
    }
    Ok(code_override.unwrap_or(if output.success { EXIT_OK } else { EXIT_FAIL }))
}

fn emit_raw(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn load_group(spec: &str, trust_table: bool) -> Result<FiniteGroup> {
    let is_file = spec.contains('/') || spec.contains(std::path::MAIN_SEPARATOR) || spec.ends_with(".csv");
    if is_file {
        FiniteGroup::from_cayley_file(Path::new(spec), trust_table)
    } else {
        named_group(spec)
    }
}

fn tree(cmd: TreeCmd, ctx: &Ctx) -> Result<Output> {
    match cmd {
        TreeCmd::Gen { family, m } => {
            let t = family.family.tree(m);
            let text = format!(
                "# family={} m={} d={} a={} b={}\n{}",
                family.family,
                m,
                t.d,
                t.a_vertex,
                t.b_vertex,
                write_edge_list(&t.tree)
            );
            let json = json!({
                "family": family.family.as_str(),
                "m": m,
                "d": t.d,
                "a": t.a_vertex,
                "b": t.b_vertex,
                "vertices": t.vertex_count(),
                "edges": t.tree.edges(),
            });
            Ok(Output::new(text, json, true))
        }
        TreeCmd::Certify { family, max_m } => {
            let report = certify_family(&family.family, max_m, &ctx.limits)?;
            let failures: Vec<_> = report.failures().collect();
            let mut text = format!(
                "family {} (d = {}), 0 <= m <= {}: {} checks, {} failed: {}\n",
                report.family,
                report.d,
                report.max_m,
                report.checks.len(),
                failures.len(),
                if report.all_pass { "PASS" } else { "FAIL" }
            );
            for c in &failures {
                text.push_str(&format!(
                    "  ({:?}) m = {}{}{}\n",
                    c.kind,
                    c.m,
                    c.m2.map(|x| format!(", m2 = {x}")).unwrap_or_default(),
                    c.at.map(|a| format!(" at {a:?}")).unwrap_or_default()
                ));
            }
            let json = serde_json::to_value(&report).expect("serializable");
            Ok(Output::new(text, json, report.all_pass))
        }
    }
}

fn certified_for(family: Family, max_m: usize, ctx: &Ctx) -> Result<CertifiedFamily> {
    CertifiedFamily::certify(family, max_m, &ctx.limits)
}

fn construction_output(cr: &ConstructionResult, ctx: &Ctx) -> Output {
    let provenance = cr.provenance_json();
    let json = json!({
        "summary": cr.host_summary,
        "vertices": cr.graph.vertex_count(),
        "edges": cr.graph.edges(),
        "provenance": provenance,
    });
    let mut out = Output::new(write_edge_list(&cr.graph), json, true);
    if let (Some(path), Format::Text) = (&ctx.out, ctx.format) {
        let mut side = path.clone().into_os_string();
        side.push(".provenance.json");
        let mut body = serde_json::to_string(&provenance).expect("serializable");
        body.push('\n');
        out.sidecars.push((PathBuf::from(side), body));
    }
    eprintln!(
        "built {} vertices, {} edges",
        cr.graph.vertex_count(),
        cr.graph.edge_count()
    );
    out
}

fn build(cmd: BuildCmd, ctx: &Ctx) -> Result<Output> {
    match cmd {
        BuildCmd::Asym { n, family } => {
            if n < 2 {
                return Err(Error::Invalid(format!("n = {n}: needs n ≥ 2")));
            }
            check_gamma_1_budget(n, family.family, &ctx.budget)?;
            let f = certified_for(family.family, gamma_1_max_index(n), ctx)?;
            let cr = build_gamma_1(n, &f, &ctx.budget)?;
            Ok(construction_output(&cr, ctx))
        }
        BuildCmd::Group {
            group,
            n,
            family,
            trust_table,
        } => {
            let g = load_group(&group, trust_table)?;
            if n < 2 || g.order() < 2 {
                return Err(Error::Invalid("needs n ≥ 2 and a nontrivial group".into()));
            }
            let top = n + g.order() - 1;
            check_gamma_g_budget(n, g.order(), family.family, &ctx.budget)?;
            let f = certified_for(family.family, gamma_1_max_index(top), ctx)?;
            let cr = build_gamma_g(n, &g, &f, &ctx.budget)?;
            Ok(construction_output(&cr, ctx))
        }
    }
}

fn group(cmd: GroupCmd) -> Result<Output> {
    let GroupCmd::Validate { table, trust_table } = cmd;
    let text = fs::read_to_string(&table)?;
    let name = table
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".into());
    match FiniteGroup::from_cayley_csv(name, &text, trust_table) {
        Ok(g) => {
            let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
            let text = format!(
                "valid group of order {}{}\n",
                g.order(),
                if g.is_abelian() { ", abelian" } else { "" }
            );
            let json = json!({
                "valid": true,
                "order": g.order(),
                "abelian": g.is_abelian(),
                "labels": g.labels(),
                "element_orders": orders,
            });
            Ok(Output::new(text, json, true))
        }
        Err(e @ (Error::InvalidGroup(_) | Error::Invalid(_))) => {
            let text = format!("invalid: {e}\n");
            Ok(Output::new(text, json!({"valid": false, "error": e.to_string()}), false))
        }
        Err(e) => Err(e),
    }
}

fn aut(input: &Path, ctx: &Ctx) -> Result<Output> {
    let g = read_graph_file(input)?;
    let r = automorphism_group(&g, None, &ctx.limits)?;
    let mut text = format!(
        "order {}\n{} generators\norbits {}\nsearch: {} nodes, {} refinements\n",
        r.order,
        r.generators.len(),
        r.orbits.len(),
        r.stats.nodes,
        r.stats.refinements
    );
    for gen in &r.generators {
        text.push_str(&format!("  {gen}\n"));
    }
    Ok(Output::new(text, r.to_json_value(), true))
}

fn genus_text(r: &GenusReport) -> String {
    let mut text = format!(
        "lower {} ({})\n",
        r.lower,
        serde_json::to_value(r.lower_reason).expect("serializable").as_str().unwrap_or("")
    );
    match r.upper {
        Some(u) => text.push_str(&format!("upper {u}\n")),
        None => text.push_str("upper unknown\n"),
    }
    if let Some(e) = r.exact {
        text.push_str(&format!("exact {e}\n"));
    }
    if r.budget_exhausted {
        text.push_str("search budget exhausted; bounds only\n");
    }
    if let Some(w) = &r.witness {
        text.push_str("witness rotation system:\n");
        text.push_str(&w.to_text());
    }
    text
}

fn genus(cmd: GenusCmd, ctx: &Ctx) -> Result<Output> {
    let report = match cmd {
        GenusCmd::Bounds { input } => genus_bounds(&read_graph_file(&input)?)?,
        GenusCmd::Exact { input } => exact_genus(&read_graph_file(&input)?, ctx.limits.max_nodes)?,
        GenusCmd::Heuristic { input, iters } => heuristic_genus_upper(&read_graph_file(&input)?, iters, ctx.seed)?,
    };
    let json = serde_json::to_value(&report).expect("serializable");
    Ok(Output::new(genus_text(&report), json, true))
}

fn verify(cmd: VerifyCmd, ctx: &Ctx) -> Result<Output> {
    let cfg = VerifyConfig {
        budget: ctx.budget,
        limits: ctx.limits.clone(),
    };
    let report = match cmd {
        VerifyCmd::Lemma2 { n, family } => verify_lemma2(n, family.family, &cfg)?,
        VerifyCmd::Theorem1 {
            group,
            n,
            family,
            trust_table,
        } => {
            let g = load_group(&group, trust_table)?;
            verify_theorem1(n, &g, family.family, &cfg)?
        }
    };
    Ok(Output::new(report.to_text(), report.to_json_value(), report.pass))
}
