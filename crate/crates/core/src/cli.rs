//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code: 0 when everything passed, 1 when
//! a check failed, 2 for usage or input errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arithmetic::{mangoldt_by_contiguity_capped, mangoldt_by_convolution, NamedFunction};
use crate::caps::Caps;
use crate::cospectral::{expand_pathsum, intersection_slide_check};
use crate::error::{HikeError, Result};
use crate::graph::Digraph;
use crate::hike::enumerate_hikes_capped;
use crate::identities::{
    backtrackless_orbit_counts, brute_force_orbits, check_det_mobius, check_ihara_factorization,
    check_labeled_determinant, check_lambert_resolvent, check_macmahon, check_orbit_counts,
    check_perm_liouville, check_trace_mangoldt, primitive_orbit_counts,
};
use crate::incidence::series_of;
use crate::number_theory::{check_nt_isomorphism, nt_bound_for};
use crate::primes::{enumerate_primes_capped, Prime, PrimeCatalog};
use crate::reconstruction::{reconstruct_traced, reconstruct_with_lengths, ReconstructionResult};
use crate::report::CheckReport;
use crate::showcase;
use crate::ugraph::UGraph;

#[derive(Debug, Parser)]
#[command(
    name = "hike-forge",
    version,
    about = "Hikes, primes and identity checks on small digraphs"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the prime cycles and their dependence edges.
    Primes {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Count hikes by length.
    Hikes {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Also list every hike in normal form.
        #[arg(long)]
        forms: bool,
    },
    /// Tabulate an arithmetic function on all hikes up to a length.
    Series {
        #[arg(long)]
        graph: PathBuf,
        /// mobius, one, tau, lambda (Liouville), mangoldt, length, big_omega, ...
        #[arg(long = "fn", value_parser = parse_function)]
        function: NamedFunction,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Von Mangoldt values of every non-trivial hike.
    Mangoldt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Cross-check against arc-word counting.
        #[arg(long)]
        oracle: bool,
    },
    /// Run identity checks on a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Primitive orbit counts by length.
    Orbits {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Cross-check against closed-walk listing.
        #[arg(long)]
        oracle: bool,
    },
    /// All and backtrackless orbit counts with the zeta factorization check.
    Ihara {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Compare hikes on disjoint cycles with the positive integers.
    NtCheck {
        /// Number of disjoint cycles (lengths 1..=k).
        #[arg(long = "primes", default_value_t = 4)]
        k: usize,
        /// Length bound; defaults to the smallest giving at least 200 hikes.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Rebuild an undirected graph from its dependence graph.
    Reconstruct {
        #[arg(long)]
        gamma: PathBuf,
        /// JSON array with the length of each dependence-graph vertex.
        #[arg(long)]
        lengths: Option<PathBuf>,
    },
    /// Check a same-spectrum pair, or apply the path-sum expansion.
    Cospectral {
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "expand")]
        pair: Option<Vec<PathBuf>>,
        #[arg(long, requires_all = ["cycle1", "cycle2"])]
        expand: Option<PathBuf>,
        /// Comma-separated vertices of the kept cycle.
        #[arg(long, value_delimiter = ',')]
        cycle1: Option<Vec<usize>>,
        /// Comma-separated vertices of the hanging cycle.
        #[arg(long, value_delimiter = ',')]
        cycle2: Option<Vec<usize>>,
        /// Shared vertex; defaults to the only vertex the cycles have in common.
        #[arg(long)]
        shared: Option<usize>,
    },
    /// Run the curated worked examples.
    #[command(name = "paper-examples")]
    Showcase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Mobius,
    Liouville,
    Macmahon,
    Mangoldt,
    Orbits,
    Ihara,
    Lambert,
    All,
}

fn parse_function(s: &str) -> std::result::Result<NamedFunction, String> {
    s.parse().map_err(|e: HikeError| e.to_string())
}

/// What a command produced: a text rendering, a JSON rendering, and whether
/// every check in it passed.
struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            passed: true,
        }
    }

    fn reports(reports: Vec<CheckReport>) -> Self {
        let passed = reports.iter().all(|r| r.passed);
        let text = reports.iter().map(|r| format!("{r}\n")).collect();
        let json = json!({ "passed": passed, "reports": reports });
        Output { text, json, passed }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
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
    match execute(cli.command) {
        Ok(output) => {
            let written = if cli.json {
                let text =
                    serde_json::to_string_pretty(&output.json).expect("JSON values serialize");
                writeln!(out, "{text}")
            } else {
                write!(out, "{}", output.text)
            };
            if written.is_err() {
                return 2;
            }
            if output.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load_graph(path: &Path) -> Result<Digraph> {
    let file = File::open(path)
        .map_err(|e| HikeError::Precondition(format!("cannot open {}: {e}", path.display())))?;
    Digraph::load(BufReader::new(file))
}

fn catalog(g: &Digraph, caps: &Caps) -> Result<PrimeCatalog> {
    enumerate_primes_capped(g, caps)
}

fn execute(command: Command) -> Result<Output> {
    let caps = Caps::from_env();
    match command {
        Command::Primes { graph } => {
            let cat = catalog(&load_graph(&graph)?, &caps)?;
            let mut text = String::new();
            for id in cat.ids() {
                text += &format!("{id}\tlength {}\t{}\n", cat.length(id), cat.prime(id));
            }
            let deps: Vec<String> = cat
                .dependence_graph()
                .edges()
                .into_iter()
                .map(|(a, b)| format!("p{a}-p{b}"))
                .collect();
            text += &format!("dependence: {}\n", deps.join(" "));
            Ok(Output::ok(text, cat.to_json_value()))
        }
        Command::Hikes {
            graph,
            max_len,
            forms,
        } => {
            let cat = catalog(&load_graph(&graph)?, &caps)?;
            let hikes = enumerate_hikes_capped(&cat, max_len, &caps)?;
            let mut counts = vec![0usize; max_len + 1];
            for h in &hikes {
                counts[h.length()] += 1;
            }
            let mut text: String = counts
                .iter()
                .enumerate()
                .map(|(k, c)| format!("length {k}: {c}\n"))
                .collect();
            let mut json = json!({ "max_len": max_len, "counts": counts });
            if forms {
                let names: Vec<String> = hikes.iter().map(|h| h.to_string()).collect();
                text += &names.iter().map(|n| format!("{n}\n")).collect::<String>();
                json["hikes"] = json!(names);
            }
            Ok(Output::ok(text, json))
        }
        Command::Series {
            graph,
            function,
            max_len,
        } => {
            let cat = catalog(&load_graph(&graph)?, &caps)?;
            let series = series_of(&function, &cat, max_len)?;
            let text = series
                .support()
                .map(|(h, c)| format!("{h}\t{c}\n"))
                .collect();
            let mut json = series.to_json_value();
            json["function"] = json!(function.name());
            Ok(Output::ok(text, json))
        }
        Command::Mangoldt {
            graph,
            max_len,
            oracle,
        } => {
            let cat = catalog(&load_graph(&graph)?, &caps)?;
            let mut report =
                CheckReport::new("Lambda by convolution = Lambda by arc words", max_len);
            let mut text = String::new();
            let mut rows = Vec::new();
            for h in enumerate_hikes_capped(&cat, max_len, &caps)?
                .iter()
                .filter(|h| !h.is_one())
            {
                let value = mangoldt_by_convolution(&cat, h)?;
                let mut row = json!({ "hike": h.to_string(), "value": value });
                text += &format!("{h}\t{value}");
                if oracle {
                    let words = mangoldt_by_contiguity_capped(&cat, h, &caps)?;
                    report.record(words == value as u64, || format!("{h}: {value} vs {words}"));
                    row["oracle"] = json!(words);
                    text += &format!("\t{words}");
                }
                text.push('\n');
                rows.push(row);
            }
            let mut json = json!({ "max_len": max_len, "values": rows });
            if oracle {
                text += &format!("{report}\n");
                json["report"] = serde_json::to_value(&report).expect("plain data");
            }
            Ok(Output {
                text,
                json,
                passed: report.passed,
            })
        }
        Command::Verify {
            graph,
            suite,
            max_len,
        } => {
            let g = load_graph(&graph)?;
            Ok(Output::reports(verify(&g, suite, max_len, &caps)?))
        }
        Command::Orbits {
            graph,
            max_len,
            oracle,
        } => {
            let g = load_graph(&graph)?;
            let counts = primitive_orbit_counts(&g, max_len)?;
            let mut text: String = (1..=max_len)
                .map(|k| format!("length {k}: {}\n", counts.get(k)))
                .collect();
            let mut json = json!({ "counts": counts });
            let mut passed = true;
            if oracle {
                let walks = brute_force_orbits(&g, max_len)?;
                let report = check_orbit_counts(&g, max_len)?;
                passed = report.passed;
                text += &format!("{report}\n");
                json["oracle"] = serde_json::to_value(&walks).expect("plain data");
                json["report"] = serde_json::to_value(&report).expect("plain data");
            }
            Ok(Output { text, json, passed })
        }
        Command::Ihara { graph, max_len } => {
            let g = load_graph(&graph)?;
            let report = check_ihara_factorization(&g, max_len)?;
            let all = primitive_orbit_counts(&g, max_len)?;
            let bl = backtrackless_orbit_counts(&g, max_len)?;
            let mut text: String = (1..=max_len)
                .map(|k| {
                    format!(
                        "length {k}: all {}\tbacktrackless {}\n",
                        all.get(k),
                        bl.get(k)
                    )
                })
                .collect();
            text += &format!("{report}\n");
            let json = json!({ "all": all, "backtrackless": bl, "report": report });
            Ok(Output {
                text,
                json,
                passed: report.passed,
            })
        }
        Command::NtCheck { k, max_len } => {
            let bound = match max_len {
                Some(l) => l,
                None => nt_bound_for(k, 200)?,
            };
            Ok(Output::reports(vec![check_nt_isomorphism(k, bound)?]))
        }
        Command::Reconstruct { gamma, lengths } => {
            let gamma = UGraph::from_digraph(&load_graph(&gamma)?)?;
            let mut trace = reconstruct_traced(&gamma);
            if let Some(path) = lengths {
                let file = File::open(&path).map_err(|e| {
                    HikeError::Precondition(format!("cannot open {}: {e}", path.display()))
                })?;
                let lengths: Vec<usize> = serde_json::from_reader(BufReader::new(file))
                    .map_err(|e| HikeError::Malformed(e.to_string()))?;
                trace.result = reconstruct_with_lengths(&gamma, &lengths);
            }
            let mut text = String::new();
            for c in &trace.classes {
                text += &format!(
                    "class {:?} clique-neighbourhood {}\n",
                    c.members, c.is_clique_nbhd
                );
            }
            text += &format!(
                "backtracks: {:?}\nstatus: {}\n",
                trace.backtracks,
                trace.result.status()
            );
            match &trace.result {
                ReconstructionResult::Unique(g) => text += &format!("{g}\n"),
                ReconstructionResult::Ambiguous(gs) => {
                    text += &gs.iter().map(|g| format!("{g}\n")).collect::<String>()
                }
                ReconstructionResult::Failed(reason) => text += &format!("{reason}\n"),
            }
            let passed = !matches!(trace.result, ReconstructionResult::Failed(_));
            Ok(Output {
                text,
                json: trace.to_json_value(),
                passed,
            })
        }
        Command::Cospectral {
            pair,
            expand,
            cycle1,
            cycle2,
            shared,
        } => match (pair, expand) {
            (Some(paths), None) => {
                let (a, b) = (load_graph(&paths[0])?, load_graph(&paths[1])?);
                Ok(Output::reports(vec![intersection_slide_check(&a, &b)?]))
            }
            (None, Some(path)) => {
                let g = load_graph(&path)?;
                let (c1, c2) = (cycle1.unwrap_or_default(), cycle2.unwrap_or_default());
                let (p1, p2) = (Prime::from_cycle(&g, &c1)?, Prime::from_cycle(&g, &c2)?);
                let s = match shared {
                    Some(s) => s,
                    None => {
                        let common: Vec<usize> =
                            c1.iter().copied().filter(|v| c2.contains(v)).collect();
                        match common[..] {
                            [s] => s,
                            _ => {
                                return Err(HikeError::Precondition(
                                    "the cycles must share exactly one vertex; pass --shared"
                                        .into(),
                                ))
                            }
                        }
                    }
                };
                let h = expand_pathsum(&g, &p1, &p2, s)?;
                Ok(Output::ok(format!("{}\n", h.to_json()), h.to_json_value()))
            }
            _ => Err(HikeError::Precondition(
                "pass either --pair A B or --expand F".into(),
            )),
        },
        Command::Showcase => Ok(Output::reports(showcase::run_all()?)),
    }
}

fn verify(g: &Digraph, suite: Suite, max_len: usize, caps: &Caps) -> Result<Vec<CheckReport>> {
    let all = suite == Suite::All;
    let undirected = g.is_bidirected() && !g.has_loops();
    let mut reports = Vec::new();
    let skipped = |name: &str, why: &str| {
        let mut r = CheckReport::new(format!("{name} (skipped)"), max_len);
        r.note(why);
        r
    };
    if all || suite == Suite::Mobius {
        reports.push(check_det_mobius(g, max_len)?);
        if g.vertex_count() <= caps.leibniz_n {
            reports.push(check_labeled_determinant(g)?);
        } else if !all {
            reports.push(skipped(
                "labeled determinant",
                "too many vertices for the Leibniz expansion",
            ));
        }
    }
    if all || suite == Suite::Liouville {
        reports.push(check_perm_liouville(g, max_len)?);
    }
    if all || suite == Suite::Macmahon {
        if g.vertex_count() <= caps.leibniz_n {
            reports.push(check_macmahon(g, max_len.min(4))?);
        } else {
            reports.push(skipped(
                "MacMahon",
                "too many vertices for the Leibniz expansion",
            ));
        }
    }
    if all || suite == Suite::Mangoldt {
        reports.push(check_trace_mangoldt(g, max_len)?);
    }
    if all || suite == Suite::Orbits {
        reports.push(check_orbit_counts(g, max_len.min(6))?);
    }
    if all || suite == Suite::Ihara {
        if undirected || !all {
            reports.push(check_ihara_factorization(g, max_len)?);
        } else {
            reports.push(skipped("Ihara", "needs a bidirected graph without loops"));
        }
    }
    if all || suite == Suite::Lambert {
        reports.push(check_lambert_resolvent(g, max_len)?);
    }
    Ok(reports)
}
