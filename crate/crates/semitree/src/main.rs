//! Command-line surface: enumeration, inspection, chain analysis, the
//! abstract label tree, statistics tables, and the property suites.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semitree::chains::{self, ChainVerdict};
use semitree::classes::ClassFlags;
use semitree::semigroup::Semigroup;
use semitree::stats::{self, AggregateOptions};
use semitree::tree::{self, TreeNode, WalkOptions};
use semitree::tree_a::{self, LabelMultiset};
use semitree::verify;

#[derive(Parser)]
#[command(
    name = "semitree",
    version,
    about = "Explore the tree of numerical semigroups"
)]
struct Cli {
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Walk the tree and print per-genus node counts.
    Enumerate {
        #[arg(long)]
        max_genus: u64,
        /// One TAB-separated line per node instead of the counts.
        #[arg(long)]
        dump: bool,
        #[arg(long, env = "SEMITREE_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Describe one semigroup: record, classes, effective generators.
    Inspect {
        /// "<a1,a2,...>" or "G:{g1,g2,...}".
        semigroup: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Chain analysis: d, verdict, witnesses. One JSON object per input.
    Chains {
        /// "<a1,a2,...>" or "G:{g1,g2,...}".
        semigroup: Option<String>,
        /// Analyze every non-trivial node up to this genus instead.
        #[arg(long, conflicts_with = "semigroup")]
        all: Option<u64>,
    },
    /// Levels of the abstract label tree as CSV.
    TreeA {
        #[arg(long)]
        levels: u64,
        /// Start from a custom seed, "label:count,label:count,...".
        #[arg(long, requires = "seed_level")]
        seed: Option<String>,
        /// Level the custom seed sits at.
        #[arg(long)]
        seed_level: Option<u64>,
    },
    /// Per-genus statistics table.
    Stats {
        #[arg(long)]
        max_genus: u64,
        /// Count ordinary nodes' generators through the extra-generator
        /// rule instead of leaving them out of strength statistics.
        #[arg(long)]
        include_ordinary: bool,
        #[arg(long, env = "SEMITREE_WORKERS", default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Emit (g, n_g, lower, upper) bound data for plotting instead.
        #[arg(long)]
        plot_data: bool,
    },
    /// Run a named property suite; exits 2 on any failed check.
    Verify {
        /// One of: core-identities, lemma1, strength-equivalence,
        /// symmetric, pseudo-symmetric, arf, chains, tree-a, bounds,
        /// histograms.
        suite: String,
        #[arg(long)]
        max_genus: Option<u64>,
        #[arg(long, env = "SEMITREE_WORKERS", default_value_t = 1)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let kind = err.kind();
            let _ = err.print();
            return if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let output = cli.output.clone();
    match run(cli.command) {
        Ok((text, code)) => {
            if let Some(path) = output {
                if let Err(err) = fs::write(&path, text) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(String, u8), String> {
    match command {
        Command::Enumerate {
            max_genus,
            dump,
            workers,
        } => {
            let opts = WalkOptions::new(max_genus).with_workers(workers);
            let text = if dump {
                tree::dump(&opts)
            } else {
                let counts = tree::genus_counts(&opts);
                let joined: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                format!("{}\n", joined.join(" "))
            };
            Ok((text, 0))
        }
        Command::Inspect { semigroup, format } => {
            let s = Semigroup::parse(&semigroup).map_err(|e| e.to_string())?;
            Ok((render_inspect(&s, format), 0))
        }
        Command::Chains { semigroup, all } => {
            let mut out = String::new();
            match (semigroup, all) {
                (Some(text), None) => {
                    let s = Semigroup::parse(&text).map_err(|e| e.to_string())?;
                    out.push_str(&chain_line(&s)?);
                }
                (None, Some(max_genus)) => {
                    let mut failure = None;
                    tree::walk(max_genus, |node| {
                        if node.semigroup.is_trivial() || failure.is_some() {
                            return;
                        }
                        match chain_line(&node.semigroup) {
                            Ok(line) => out.push_str(&line),
                            Err(e) => failure = Some(e),
                        }
                    });
                    if let Some(e) = failure {
                        return Err(e);
                    }
                }
                _ => return Err("pass a semigroup or --all <max-genus>".into()),
            }
            Ok((out, 0))
        }
        Command::TreeA {
            levels,
            seed,
            seed_level,
        } => {
            let mut out = String::from("level,total,twice_fibonacci,labels\n");
            let rows: Vec<(u64, LabelMultiset)> = match (seed, seed_level) {
                (Some(text), Some(l)) => {
                    let seed = parse_seed(&text)?;
                    let run = tree_a::l_recursion(l, &seed, levels).map_err(|e| e.to_string())?;
                    (l..).zip(run).collect()
                }
                _ => (0..=levels).map(|g| (g, tree_a::a_level(g))).collect(),
            };
            for (level, multiset) in rows {
                let labels: Vec<String> = multiset
                    .pairs()
                    .map(|(l, c)| format!("{l}:{c}"))
                    .collect();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    level,
                    multiset.total(),
                    tree_a::fibonacci(level) * 2u32,
                    labels.join(" ")
                ));
            }
            Ok((out, 0))
        }
        Command::Stats {
            max_genus,
            include_ordinary,
            workers,
            format,
            plot_data,
        } => {
            let opts = AggregateOptions {
                include_ordinary,
                classes: true,
                workers,
                split_genus: 9,
            };
            let table = stats::aggregate(max_genus, &opts);
            let text = if plot_data {
                stats::render_plot_data(&table)
            } else {
                match format {
                    Format::Csv => stats::render_csv(&table, &opts),
                    Format::Json => stats::render_json(&table, &opts),
                }
            };
            Ok((text, 0))
        }
        Command::Verify {
            suite,
            max_genus,
            workers,
        } => {
            let report = verify::run_suite(&suite, max_genus, workers).ok_or_else(|| {
                format!(
                    "unknown suite {suite:?}; expected one of {}",
                    verify::SUITE_NAMES.join(", ")
                )
            })?;
            let code = if report.passed() { 0 } else { 2 };
            Ok((report.render(), code))
        }
    }
}

#[derive(Serialize)]
struct InspectOut {
    gens: Vec<u64>,
    gaps: Vec<u64>,
    c: u64,
    g: u64,
    m: u64,
    classes: ClassFlags,
    effective: Vec<String>,
    kind: char,
}

fn render_inspect(s: &Semigroup, format: Format) -> String {
    let node = TreeNode::from_semigroup_definitional(s);
    let effective: Vec<String> = node
        .effective
        .iter()
        .map(|(v, st)| format!("{v}{}", st.suffix()))
        .collect();
    let flags = ClassFlags::of(s);
    match format {
        Format::Json => {
            let record = s.record();
            let out = InspectOut {
                gens: record.gens,
                gaps: record.gaps,
                c: record.c,
                g: record.g,
                m: record.m,
                classes: flags,
                effective,
                kind: node.kind().letter(),
            };
            let mut text = serde_json::to_string(&out).expect("serializable");
            text.push('\n');
            text
        }
        Format::Csv => {
            let gaps: Vec<String> = s.gaps().iter().map(|l| l.to_string()).collect();
            let names = flags.set_names();
            format!(
                "semigroup: {}\ngaps: {}\nconductor: {}\ngenus: {}\nmultiplicity: {}\nclasses: {}\neffective: {}\nkind: {}\n",
                s.canonical_string(),
                if gaps.is_empty() { "none".to_string() } else { gaps.join(",") },
                s.conductor(),
                s.genus(),
                s.multiplicity(),
                if names.is_empty() { "none".to_string() } else { names.join(" ") },
                if effective.is_empty() { "none".to_string() } else { effective.join(" ") },
                node.kind().letter(),
            )
        }
    }
}

#[derive(Serialize)]
struct ChainOut {
    semigroup: String,
    d: u64,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_genus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deepest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<String>>,
    /// Literal descendant count of the trace base; null marks an infinite
    /// descendant set, absent means not applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    base_descendants: Option<Option<u64>>,
}

fn chain_line(s: &Semigroup) -> Result<String, String> {
    let analysis = chains::analyze(s).map_err(|e| e.to_string())?;
    let out = match analysis.verdict {
        ChainVerdict::FiniteSubtree { deepest, max_genus } => ChainOut {
            semigroup: s.canonical_string(),
            d: analysis.d,
            verdict: "finite_subtree",
            max_genus: Some(max_genus),
            deepest: Some(deepest.canonical_string()),
            count: None,
            witnesses: None,
            base_descendants: None,
        },
        ChainVerdict::FinitelyManyChains {
            count,
            witnesses,
            base_descendants,
        } => ChainOut {
            semigroup: s.canonical_string(),
            d: analysis.d,
            verdict: "finitely_many_chains",
            max_genus: None,
            deepest: None,
            count: Some(count),
            witnesses: Some(witnesses.iter().map(|w| w.canonical_string()).collect()),
            base_descendants: Some(base_descendants),
        },
        ChainVerdict::InfinitelyManyChains => ChainOut {
            semigroup: s.canonical_string(),
            d: analysis.d,
            verdict: "infinitely_many_chains",
            max_genus: None,
            deepest: None,
            count: None,
            witnesses: None,
            base_descendants: None,
        },
    };
    let mut line = serde_json::to_string(&out).expect("serializable");
    line.push('\n');
    Ok(line)
}

fn parse_seed(text: &str) -> Result<LabelMultiset, String> {
    let mut pairs = Vec::new();
    for piece in text.split(',') {
        let (label, count) = piece
            .trim()
            .split_once(':')
            .ok_or_else(|| format!("bad seed entry {piece:?}, expected label:count"))?;
        let label: u64 = label
            .trim()
            .parse()
            .map_err(|e| format!("bad label in {piece:?}: {e}"))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|e| format!("bad count in {piece:?}: {e}"))?;
        pairs.push((label, count));
    }
    Ok(LabelMultiset::from_pairs(&pairs))
}
