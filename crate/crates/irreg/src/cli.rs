//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text to print, so tests can drive it without a process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use irreg_core::path_collection::spc_lower_bound;
use irreg_core::verifier::DEFAULT_ORACLE_BUDGET;
use irreg_core::{
    brute_force_exists, enumerate_abelian_groups, group_irregularity_strength, label_graph,
    predict, shortest_path_collection, weighted_degrees, AbelianGroup, DegreeReport, LabelError,
    Obstruction, OracleVerdict, Prediction, RootedTree, SimpleGraph,
};

use crate::bench::spc_timings;
use crate::corpus::corpus;
use crate::formats::{parse_graph, parse_labelling, parse_marked, write_labelling};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_IMPOSSIBLE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Tsv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "irreg", version, about = "Irregular labellings of graphs over finite Abelian groups")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    pub format: OutputFormat,
    /// Seed for the random corpus and benchmark trees.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the group irregularity strength and which case applies.
    Strength { graph: PathBuf },
    /// Build a certified irregular labelling, e.g. `label g.txt Z4xZ3`.
    Label { graph: PathBuf, group: String },
    /// Check a labelling file; exit 3 on a degree collision.
    Verify {
        graph: PathBuf,
        group: String,
        labelling: PathBuf,
    },
    /// Decide existence by exhaustive search.
    Oracle {
        graph: PathBuf,
        group: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Pair marked tree vertices with minimum total path length.
    Spc {
        tree: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', required_unless_present = "marked_file", conflicts_with = "marked_file")]
        marked: Vec<usize>,
        #[arg(long)]
        marked_file: Option<PathBuf>,
    },
    /// Time the path collection sweep on random trees.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [100_000usize, 200_000, 400_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.25)]
        marked_frac: f64,
        #[arg(long, default_value_t = 5)]
        runs: usize,
    },
    /// Label every corpus graph over every group of order s_g .. s_g + extra.
    Sweep {
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        extra: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type Step = Result<(i32, String), Failure>;

pub fn run(config: &RunConfig) -> Outcome {
    let tsv = config.format == OutputFormat::Tsv;
    let result = match &config.command {
        Command::Strength { graph } => strength(graph, tsv),
        Command::Label { graph, group } => label(graph, group, tsv),
        Command::Verify {
            graph,
            group,
            labelling,
        } => verify(graph, group, labelling, tsv),
        Command::Oracle {
            graph,
            group,
            budget,
        } => oracle(graph, group, *budget, tsv),
        Command::Spc {
            tree,
            marked,
            marked_file,
        } => spc(tree, marked, marked_file.as_deref(), tsv),
        Command::Bench {
            sizes,
            marked_frac,
            runs,
        } => bench(sizes, *marked_frac, *runs, config.seed, tsv),
        Command::Sweep { max_n, extra } => Ok(sweep(*max_n, *extra, config.seed, tsv)),
    };
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) if f.code == EXIT_INPUT => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: format!("{}\n", f.message),
            stderr: String::new(),
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_group(spec: &str) -> Result<AbelianGroup, Failure> {
    spec.parse().map_err(|e| Failure::input(format!("{e}")))
}

fn degree_table(report: &DegreeReport, sep: &str) -> String {
    let mut out = format!("# vertex{sep}degree\n");
    for (v, d) in report.weighted_degrees.iter().enumerate() {
        let _ = writeln!(out, "# {v}{sep}{d}");
    }
    out
}

fn separator(tsv: bool) -> &'static str {
    if tsv {
        "\t"
    } else {
        " "
    }
}

fn impossible(ob: &Obstruction) -> Failure {
    Failure {
        code: EXIT_IMPOSSIBLE,
        message: format!("impossible: {ob}"),
    }
}

fn strength(path: &Path, tsv: bool) -> Step {
    let g = read_graph(path)?;
    let s = group_irregularity_strength(&g).map_err(|e| Failure::input(e.to_string()))?;
    let text = if tsv {
        format!("n\ts_g\tcase\n{}\t{}\t{}\n", g.vertex_count(), s.value, s.case)
    } else {
        format!("{} {}\n", s.value, s.case)
    };
    Ok((EXIT_OK, text))
}

fn label(path: &Path, spec: &str, tsv: bool) -> Step {
    let g = read_graph(path)?;
    let grp = read_group(spec)?;
    match label_graph(&g, &grp) {
        Ok(c) => {
            let sep = separator(tsv);
            let mut out = format!("# construction {}\n", c.construction);
            out.push_str(&write_labelling(&g, &c.labelling, sep));
            out.push_str(&degree_table(&c.report, sep));
            Ok((EXIT_OK, out))
        }
        Err(LabelError::Impossible(ob)) => Err(impossible(&ob)),
        Err(e @ LabelError::OrderBelowStrength { .. }) => match predict(&g, &grp) {
            Ok(Prediction::Impossible(ob)) => Err(impossible(&ob)),
            _ => Err(Failure::input(format!("{e}; use `oracle` to decide this instance"))),
        },
        Err(e @ (LabelError::TooSmall { .. } | LabelError::Disconnected)) => {
            Err(Failure::input(e.to_string()))
        }
        Err(e) => Err(Failure {
            code: EXIT_VERIFY,
            message: format!("construction failed: {e}"),
        }),
    }
}

fn verify(path: &Path, spec: &str, labelling: &Path, tsv: bool) -> Step {
    let g = read_graph(path)?;
    let grp = read_group(spec)?;
    let lab = parse_labelling(&read(labelling)?, &g, &grp)
        .map_err(|e| Failure::input(format!("{}: {e}", labelling.display())))?;
    let report = weighted_degrees(&g, &lab, &grp).map_err(|e| Failure::input(e.to_string()))?;
    let table = degree_table(&report, separator(tsv));
    match report.collision_witness {
        None => Ok((EXIT_OK, format!("irregular\n{table}"))),
        Some((u, v)) => Ok((
            EXIT_VERIFY,
            format!(
                "collision: vertices {u} and {v} both have degree {}\n{table}",
                report.weighted_degrees[u]
            ),
        )),
    }
}

fn oracle(path: &Path, spec: &str, budget: u64, tsv: bool) -> Step {
    let g = read_graph(path)?;
    let grp = read_group(spec)?;
    let report = brute_force_exists(&g, &grp, budget).map_err(|e| Failure::input(e.to_string()))?;
    Ok(match report.verdict {
        OracleVerdict::Exists(lab) => (
            EXIT_OK,
            format!(
                "exists nodes={}\n{}",
                report.nodes,
                write_labelling(&g, &lab, separator(tsv))
            ),
        ),
        OracleVerdict::NotExists => (EXIT_IMPOSSIBLE, format!("not-exists nodes={}\n", report.nodes)),
        OracleVerdict::BudgetExceeded => {
            (EXIT_BUDGET, format!("budget-exceeded nodes={}\n", report.nodes))
        }
    })
}

fn spc(path: &Path, marked: &[usize], marked_file: Option<&Path>, tsv: bool) -> Step {
    let g = read_graph(path)?;
    if !g.is_tree() {
        return Err(Failure::input(format!("{}: not a tree", path.display())));
    }
    let marked = match marked_file {
        Some(file) => parse_marked(&read(file)?)
            .map_err(|e| Failure::input(format!("{}: {e}", file.display())))?,
        None => marked.to_vec(),
    };
    let tree = RootedTree::bfs(&g, 0).map_err(|e| Failure::input(e.to_string()))?;
    let c = shortest_path_collection(&tree, &marked).map_err(|e| Failure::input(e.to_string()))?;
    let bound = spc_lower_bound(&tree, &marked).map_err(|e| Failure::input(e.to_string()))?;
    let sep = separator(tsv);
    let mut out = format!("total_length{sep}{}\nlower_bound{sep}{bound}\n", c.total_length);
    for (&(a, b), path) in c.pairs.iter().zip(&c.paths) {
        let vertices: Vec<String> = path.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{a}{sep}{b}{sep}{}{sep}{}", path.len() - 1, vertices.join("-"));
    }
    Ok((EXIT_OK, out))
}

fn bench(sizes: &[usize], frac: f64, runs: usize, seed: u64, tsv: bool) -> Step {
    if sizes.iter().any(|&n| n < 2) || !(0.0..=1.0).contains(&frac) {
        return Err(Failure::input("sizes must be at least 2 and the marked fraction in [0, 1]"));
    }
    let rows = spc_timings(sizes, frac, runs, seed);
    let mut out = String::new();
    if tsv {
        out.push_str("n\tmarked\tmedian_ms\tratio\n");
    } else {
        let _ = writeln!(out, "{:>10} {:>10} {:>12} {:>8}", "n", "marked", "median_ms", "ratio");
    }
    for r in rows {
        let ms = r.median.as_secs_f64() * 1e3;
        let ratio = r.ratio.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
        if tsv {
            let _ = writeln!(out, "{}\t{}\t{ms:.3}\t{ratio}", r.n, r.marked);
        } else {
            let _ = writeln!(out, "{:>10} {:>10} {ms:>12.3} {ratio:>8}", r.n, r.marked);
        }
    }
    Ok((EXIT_OK, out))
}

#[derive(Default)]
struct Tally {
    graphs: usize,
    certified: usize,
    impossible: usize,
    failed: usize,
}

/// Runs the corpus sweep; returns the exit code and the report.
pub fn sweep(max_n: usize, extra: u64, seed: u64, tsv: bool) -> (i32, String) {
    let mut tallies: BTreeMap<&'static str, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    for entry in corpus(seed, max_n) {
        let tally = tallies.entry(entry.family).or_default();
        tally.graphs += 1;
        let g = &entry.graph;
        let s = match group_irregularity_strength(g) {
            Ok(s) => s.value,
            Err(e) => {
                tally.failed += 1;
                failures.push(format!("{}: {e}", entry.name));
                continue;
            }
        };
        for order in s..=s + extra {
            for grp in enumerate_abelian_groups(order).expect("order >= 3") {
                let expected = match predict(g, &grp) {
                    Ok(Prediction::Impossible(ob)) => Some(ob),
                    _ => None,
                };
                match (label_graph(g, &grp), expected) {
                    (Ok(c), None) if c.report.is_irregular => tally.certified += 1,
                    (Err(LabelError::Impossible(got)), Some(want)) if got == want => {
                        tally.impossible += 1
                    }
                    (result, _) => {
                        tally.failed += 1;
                        let what = match result {
                            Ok(c) => format!("unexpected labelling via {}", c.construction),
                            Err(e) => e.to_string(),
                        };
                        failures.push(format!("{} over {grp}: {what}", entry.name));
                    }
                }
            }
        }
    }
    let mut out = String::new();
    let header = ["family", "graphs", "certified", "impossible", "failed"];
    if tsv {
        out.push_str(&header.join("\t"));
        out.push('\n');
    } else {
        let _ = writeln!(
            out,
            "{:<14} {:>7} {:>10} {:>11} {:>7}",
            header[0], header[1], header[2], header[3], header[4]
        );
    }
    let mut total = Tally::default();
    for (family, t) in &tallies {
        total.graphs += t.graphs;
        total.certified += t.certified;
        total.impossible += t.impossible;
        total.failed += t.failed;
        row(&mut out, family, t, tsv);
    }
    row(&mut out, "total", &total, tsv);
    failures.sort();
    for f in &failures {
        let _ = writeln!(out, "FAIL {f}");
    }
    if failures.is_empty() {
        out.push_str("all-pass\n");
        (EXIT_OK, out)
    } else {
        (EXIT_VERIFY, out)
    }
}

fn row(out: &mut String, name: &str, t: &Tally, tsv: bool) {
    if tsv {
        let _ = writeln!(
            out,
            "{name}\t{}\t{}\t{}\t{}",
            t.graphs, t.certified, t.impossible, t.failed
        );
    } else {
        let _ = writeln!(
            out,
            "{name:<14} {:>7} {:>10} {:>11} {:>7}",
            t.graphs, t.certified, t.impossible, t.failed
        );
    }
}
