//! Thin command-line front end over the `groupwords` library.
//!
//! Exit codes: 0 on success / all checks passing, 1 when a check found a
//! violation (a failed property or a bound violation), 2 on usage or input
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use groupwords::{
    builtin, has_wmn_property, load_group, run_sweep, write_report, DichotomyBranch, Family,
    GammaSpec, GapConstant, Group, OverlapPolicy, PropertyQuery, ReportFormat, SweepConfig,
    SweepReport, Word, WordGraph,
};

#[derive(Parser)]
#[command(
    name = "groupwords",
    version,
    about = "Word-satisfaction statistics, property search, and exact bound checks on finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group inspection
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Exact satisfaction probability of a word on a group
    Prob {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Decide the w_{m,n}-property; exits 1 when the property fails
    CheckProperty {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::AllowOverlap)]
        policy: PolicyArg,
    },
    /// Sweep the catalog and check the order bound; exits 1 on violations
    Verify {
        #[command(flatten)]
        word: WordArgs,
        /// Gap constant: a rational like 5/8, or "empirical"
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 128)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        /// Write the full sweep to this path
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Graph utilities
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, abelian flag, and center size
    Info {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Export the word graph as DOT text
    Export {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        group: GroupArgs,
        /// Output path for the DOT file
        #[arg(long)]
        dot: PathBuf,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Built-in family: cyclic, dihedral, symmetric, alternating,
    /// quaternion8, heisenberg, elementary-abelian
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Family parameters (repeat for multi-parameter families)
    #[arg(long = "param")]
    params: Vec<usize>,
    /// Load a group from a JSON table or generator file
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GroupArgs {
    fn build(&self) -> Result<Group> {
        match (&self.family, &self.file) {
            (Some(family), None) => {
                let family = parse_family(family, &self.params)?;
                Ok(builtin(&family)?)
            }
            (None, Some(path)) => Ok(load_group(path)?),
            _ => bail!("specify a group with either --family or --file"),
        }
    }
}

#[derive(Args)]
struct WordArgs {
    /// Word text, e.g. "[x,y]" or "x^2yX"
    #[arg(long, conflicts_with = "named")]
    word: Option<String>,
    /// Built-in word name: commutator, engelK, powerK
    #[arg(long)]
    named: Option<String>,
}

impl WordArgs {
    fn build(&self) -> Result<Word> {
        match (&self.word, &self.named) {
            (Some(text), None) => Ok(Word::parse(text)?),
            (None, Some(name)) => Ok(Word::named(name)?),
            _ => bail!("specify a word with either --word or --named"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    AllowOverlap,
    RequireDisjoint,
}

impl From<PolicyArg> for OverlapPolicy {
    fn from(value: PolicyArg) -> OverlapPolicy {
        match value {
            PolicyArg::AllowOverlap => OverlapPolicy::AllowOverlap,
            PolicyArg::RequireDisjoint => OverlapPolicy::RequireDisjoint,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> ReportFormat {
        match value {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

fn parse_family(tag: &str, params: &[usize]) -> Result<Family> {
    let one = |what: &str| -> Result<usize> {
        match params {
            [p] => Ok(*p),
            _ => bail!("family '{what}' takes exactly one --param"),
        }
    };
    match tag {
        "cyclic" => Ok(Family::Cyclic(one(tag)?)),
        "dihedral" => Ok(Family::Dihedral(one(tag)?)),
        "symmetric" => Ok(Family::Symmetric(one(tag)?)),
        "alternating" => Ok(Family::Alternating(one(tag)?)),
        "quaternion8" => {
            if !params.is_empty() {
                bail!("family 'quaternion8' takes no --param");
            }
            Ok(Family::Quaternion8)
        }
        "heisenberg" => Ok(Family::Heisenberg(one(tag)?)),
        "elementary-abelian" => match params {
            [p, k] => Ok(Family::ElementaryAbelian(*p, *k)),
            _ => bail!("family 'elementary-abelian' takes two --param values (p and k)"),
        },
        other => bail!("unknown family '{other}'"),
    }
}

fn parse_gamma(text: &str) -> Result<GammaSpec> {
    if text == "empirical" {
        return Ok(GammaSpec::Empirical);
    }
    let value: BigRational = text
        .trim()
        .parse()
        .map_err(|e| anyhow!("invalid gamma '{text}': {e}"))?;
    Ok(GammaSpec::Fixed(GapConstant::user(value)?))
}

fn format_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn print_verify_summary(report: &SweepReport) {
    let mut current_group: Option<&str> = None;
    let mut group_checks = 0usize;
    let mut group_violations = 0usize;
    let mut group_identity = false;
    let mut group_order = 0usize;
    let flush = |name: &str, order: usize, identity: bool, checks: usize, violations: usize| {
        println!(
            "{name} order={order} identity={identity} bound_checks={checks} violations={violations}"
        );
    };
    for row in &report.rows {
        if current_group != Some(row.group.as_str()) {
            if let Some(name) = current_group {
                flush(name, group_order, group_identity, group_checks, group_violations);
            }
            current_group = Some(row.group.as_str());
            group_checks = 0;
            group_violations = 0;
            group_identity = false;
            group_order = row.order;
        }
        match &row.branch {
            DichotomyBranch::IdentityWord => group_identity = true,
            DichotomyBranch::NotApplicable => {}
            DichotomyBranch::Bound(bound) => {
                group_checks += 1;
                if !bound.holds {
                    group_violations += 1;
                    println!(
                        "violation: group={} order={} m={} n={} policy={} lhs={} rhs={}",
                        row.group, row.order, row.m, row.n, row.policy, bound.lhs, bound.rhs
                    );
                }
            }
        }
    }
    if let Some(name) = current_group {
        flush(name, group_order, group_identity, group_checks, group_violations);
    }
    println!("gamma = {} ({})", report.metadata.gamma, report.metadata.gamma_source);
    println!("word = {}", report.metadata.word);
    println!(
        "caps: max_order={} m_max={} n_max={}",
        report.metadata.max_order, report.metadata.m_max, report.metadata.n_max
    );
    println!("rows = {}", report.rows.len());
    println!("violations = {}", report.violation_count());
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Group { command } => match command {
            GroupCommand::Info { group } => {
                let g = group.build()?;
                println!("name={}", g.name());
                println!("order={}", g.order());
                println!("abelian={}", g.is_abelian());
                println!("center_size={}", g.center().len());
                Ok(0)
            }
        },
        Command::Prob { word, group } => {
            let w = word.build()?;
            let g = group.build()?;
            let graph = WordGraph::build(&g, &w);
            println!("{}", graph.satisfaction_probability());
            Ok(0)
        }
        Command::CheckProperty {
            word,
            group,
            m,
            n,
            policy,
        } => {
            let w = word.build()?;
            let g = group.build()?;
            let query = PropertyQuery::new(m, n, policy.into())?;
            let graph = WordGraph::build(&g, &w);
            let result = has_wmn_property(&graph, &query);
            println!(
                "group={} order={} word={} m={m} n={n} policy={}",
                g.name(),
                g.order(),
                w.source(),
                query.policy()
            );
            println!("property_holds={}", result.has_property);
            if let (Some(m_set), Some(n_set)) = (&result.witness_m, &result.witness_n) {
                println!("witness_M={}", format_set(m_set));
                println!("witness_N={}", format_set(n_set));
            }
            println!("subsets_examined={}", result.subsets_examined);
            Ok(if result.has_property { 0 } else { 1 })
        }
        Command::Verify {
            word,
            gamma,
            max_order,
            m_max,
            n_max,
            report,
            format,
        } => {
            let config = SweepConfig {
                word: word.build()?,
                gamma: parse_gamma(&gamma)?,
                max_order,
                m_max,
                n_max,
            };
            let sweep = run_sweep(&config)?;
            print_verify_summary(&sweep);
            if let Some(path) = report {
                write_report(&sweep, &path, ReportFormat::from(format))?;
                println!("report = {}", path.display());
            }
            Ok(if sweep.violation_count() == 0 { 0 } else { 1 })
        }
        Command::Graph { command } => match command {
            GraphCommand::Export { word, group, dot } => {
                let w = word.build()?;
                let g = group.build()?;
                let graph = WordGraph::build(&g, &w);
                std::fs::write(&dot, graph.export_dot())
                    .with_context(|| format!("cannot write {}", dot.display()))?;
                println!(
                    "vertices={} arcs={} path={}",
                    graph.vertex_count(),
                    graph.arc_count(),
                    dot.display()
                );
                Ok(0)
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}
