//! Command-line entry point: file loading, subcommand dispatch, report
//! formatting and the exit-status taxonomy.
//!
//! Exit statuses: 0 = success, including mathematically negative answers
//! (`NONE`); 1 = domain errors (bad input, unsatisfied preconditions);
//! 2 = a search gave up (budget or size cap) without an answer;
//! 3 = a produced certificate failed re-verification.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::counterexample::{check_lemmas, make_ln, phi_order, sample_s};
use crate::dichotomy::{scattered_or_shallow_clique, DichotomyOutcome};
use crate::error::{Error, Result};
use crate::eval::models;
use crate::formula::Formula;
use crate::graph::Graph;
use crate::hom::{find_homomorphism_budgeted, is_hom, HomSearch};
use crate::locality::basic_local_sentence;
use crate::minimal::{
    ag_construct, enumerate_minimal_models, BasicLocalProfile, Branch, ClassSpec, Family,
};
use crate::minor::{grad, is_minor, verify_minor, MinorEmbedding};
use crate::parser::parse_formula;
use crate::plebeian::{companion_structure, translate_formula, verify_companion};
use crate::scattered::{
    classify_graph, is_r_scattered, max_scattered_set, Classification, ScatterMode,
};
use crate::structure::{parse_structure, print_structure, ElementId, Structure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "fmlab",
    about = "Finite-model workbench: structures, locality, homomorphisms, \
             minors and minimal models",
    version
)]
struct Cli {
    /// Reserved; all computations currently run single-threaded.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gaifman graph of a structure as a graph file.
    Gaifman { structure: PathBuf },
    /// Evaluate a closed formula on a structure; prints TRUE or FALSE.
    Eval {
        structure: PathBuf,
        /// Formula file, inline formula text, or `phi_order`.
        formula: String,
    },
    /// Search for a homomorphism from A to B.
    Hom {
        a: PathBuf,
        b: PathBuf,
        /// Node budget; exceeding it yields UNKNOWN and status 2.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Maximum r-scattered set of a graph.
    Scattered {
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        /// `exact` or `greedy`.
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Run the scattered-set-or-shallow-clique dichotomy.
    Quasiwide {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
    /// Test whether PATTERN is a (depth-bounded) minor of HOST.
    Minor {
        pattern: PathBuf,
        host: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Greatest reduced average density ∇_r of a graph.
    Grad {
        graph: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Least deletion-set size giving an r-scattered set of size m.
    Classify {
        graphs: Vec<PathBuf>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// Companion structure over the extended vocabulary, plus the
    /// translated formula when one is given.
    Plebeian {
        structure: PathBuf,
        /// Comma-separated element ids to fold into the vocabulary.
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        #[arg(long)]
        formula: Option<String>,
    },
    /// Enumerate minimal models of a sentence within a class.
    Minimal {
        #[arg(long)]
        formula: String,
        /// `S`, `graphs`, or `corpus:<dir>`.
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_size: usize,
    },
    /// Run the density construction and print its trace.
    Agdemo {
        #[arg(long)]
        structure: PathBuf,
        /// Defaults to the disjunction of the profile's sentences.
        #[arg(long)]
        formula: Option<String>,
        /// Profile file: one `local <width> <radius> <psi>` line per
        /// basic local sentence.
        #[arg(long)]
        profile: PathBuf,
        /// Scattered elements to use, comma-separated; computed greedily
        /// when omitted.
        #[arg(long, value_delimiter = ',')]
        scattered: Option<Vec<String>>,
    },
    /// Ordered-path generators and the five-fact check suite.
    Counterexample {
        #[command(subcommand)]
        sub: CounterexampleCmd,
    },
}

#[derive(Subcommand)]
enum CounterexampleCmd {
    /// Print L_n, or a seeded pseudo-random class member.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        components: usize,
    },
    /// Check the five facts and print a pass/fail line per lemma.
    Check {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        n_bound: usize,
    },
}

fn load_structure(path: &Path) -> Result<Structure> {
    let text = std::fs::read_to_string(path)?;
    parse_structure(&text)
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::from_structure(&load_structure(path)?)
}

/// A formula argument is a file path when such a file exists, the builtin
/// name `phi_order`, or inline formula text.
fn load_formula(arg: &str, vocab: &crate::structure::Vocabulary) -> Result<Formula> {
    if arg == "phi_order" {
        return Ok(phi_order());
    }
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    parse_formula(text.trim(), vocab)
}

fn id_set(ids: &BTreeSet<ElementId>) -> String {
    let names: Vec<&str> = ids.iter().map(|e| e.as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

fn render_embedding(emb: &MinorEmbedding) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "MINOR order {}", emb.order());
    if let Some((r, centers)) = &emb.depth {
        let _ = writeln!(out, "depth {r}");
        for (v, c) in centers {
            let _ = writeln!(out, "center {v} {c}");
        }
    }
    for (v, set) in &emb.branch_sets {
        let _ = writeln!(out, "branch {v} {}", id_set(set));
    }
    out
}

struct Report {
    text: String,
    status: i32,
}

fn ok(text: String) -> Result<Report> {
    Ok(Report {
        text,
        status: EXIT_OK,
    })
}

fn with_status(text: String, status: i32) -> Result<Report> {
    Ok(Report { text, status })
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Gaifman { structure } => {
            let s = load_structure(&structure)?;
            ok(print_structure(&s.gaifman_graph().to_structure()))
        }
        Command::Eval { structure, formula } => {
            let s = load_structure(&structure)?;
            let phi = load_formula(&formula, s.vocabulary())?;
            ok(format!(
                "{}\n",
                if models(&s, &phi)? { "TRUE" } else { "FALSE" }
            ))
        }
        Command::Hom { a, b, budget } => {
            let a = load_structure(&a)?;
            let b = load_structure(&b)?;
            match find_homomorphism_budgeted(&a, &b, budget.unwrap_or(usize::MAX))? {
                HomSearch::Found(h) => {
                    if !is_hom(&a, &b, &h)? {
                        return with_status(
                            "certificate failed re-verification\n".into(),
                            EXIT_CERTIFICATE,
                        );
                    }
                    let mut out = String::new();
                    for (x, y) in &h {
                        let _ = writeln!(out, "{x}→{y}");
                    }
                    ok(out)
                }
                HomSearch::None => ok("NONE\n".into()),
                HomSearch::Unknown => with_status("UNKNOWN\n".into(), EXIT_BUDGET),
            }
        }
        Command::Scattered { graph, r, mode } => {
            let g = load_graph(&graph)?;
            let mode = match mode.as_str() {
                "exact" => ScatterMode::Exact { vertex_bound: 64 },
                "greedy" => ScatterMode::Greedy,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown mode `{other}`; use exact or greedy"
                    )))
                }
            };
            let set = max_scattered_set(&g, r, mode)?;
            if !is_r_scattered(&g, &set, r)? {
                return with_status(
                    "certificate failed re-verification\n".into(),
                    EXIT_CERTIFICATE,
                );
            }
            ok(format!("size {}\n{}\n", set.len(), id_set(&set)))
        }
        Command::Quasiwide { graph, k, r, m } => {
            let g = load_graph(&graph)?;
            match scattered_or_shallow_clique(&g, k, r, m)? {
                DichotomyOutcome::Minor(emb) => {
                    if !verify_minor(&g, &emb)? {
                        return with_status(
                            "certificate failed re-verification\n".into(),
                            EXIT_CERTIFICATE,
                        );
                    }
                    ok(render_embedding(&emb))
                }
                DichotomyOutcome::Scattered(w) => {
                    let rest = g.without(&w.deleted);
                    if !is_r_scattered(&rest, &w.scattered, w.radius)?
                        || w.deleted.len() + 2 > k
                        || w.scattered.len() < m
                    {
                        return with_status(
                            "certificate failed re-verification\n".into(),
                            EXIT_CERTIFICATE,
                        );
                    }
                    ok(format!(
                        "SCATTERED radius {}\ndeleted {}\nscattered {}\n",
                        w.radius,
                        id_set(&w.deleted),
                        id_set(&w.scattered)
                    ))
                }
                DichotomyOutcome::Exhausted => {
                    with_status("EXHAUSTED\n".into(), EXIT_BUDGET)
                }
            }
        }
        Command::Minor {
            pattern,
            host,
            depth,
        } => {
            let p = load_graph(&pattern)?;
            let h = load_graph(&host)?;
            match is_minor(&p, &h, depth)? {
                Some(emb) => {
                    if !verify_minor(&h, &emb)? {
                        return with_status(
                            "certificate failed re-verification\n".into(),
                            EXIT_CERTIFICATE,
                        );
                    }
                    ok(render_embedding(&emb))
                }
                None => ok("NONE\n".into()),
            }
        }
        Command::Grad { graph, r } => {
            let g = load_graph(&graph)?;
            let res = grad(&g, r)?;
            ok(format!(
                "{}/{}{}\n",
                res.value.numer(),
                res.value.denom(),
                if res.exact { "" } else { " (lower bound)" }
            ))
        }
        Command::Classify { graphs, r, m, kmax } => {
            if graphs.is_empty() {
                return Err(Error::Domain("classify needs at least one graph".into()));
            }
            let mut out = String::new();
            for path in &graphs {
                let g = load_graph(path)?;
                match classify_graph(&g, r, m, kmax)? {
                    Classification::Width {
                        k,
                        deleted,
                        scattered,
                    } => {
                        let rest = g.without(&deleted);
                        if !is_r_scattered(&rest, &scattered, r)? || scattered.len() < m {
                            return with_status(
                                "certificate failed re-verification\n".into(),
                                EXIT_CERTIFICATE,
                            );
                        }
                        let _ = writeln!(
                            out,
                            "{}: k={} deleted {}",
                            path.display(),
                            k,
                            id_set(&deleted)
                        );
                    }
                    Classification::NoneWithin { kmax } => {
                        let _ = writeln!(out, "{}: none ≤ {}", path.display(), kmax);
                    }
                }
            }
            ok(out)
        }
        Command::Plebeian {
            structure,
            delete,
            formula,
        } => {
            let s = load_structure(&structure)?;
            let consts: Vec<ElementId> = delete.iter().map(ElementId::new).collect();
            if consts.is_empty() {
                return Err(Error::Domain("--delete needs at least one element".into()));
            }
            let comp = companion_structure(&s, &consts)?;
            let mut out = print_structure(&comp);
            if let Some(f) = formula {
                let phi = load_formula(&f, s.vocabulary())?;
                let report = verify_companion(&s, &consts, &phi)?;
                if !report.rank_preserved || !report.gaifman_matches {
                    return with_status(
                        "certificate failed re-verification\n".into(),
                        EXIT_CERTIFICATE,
                    );
                }
                let hat = translate_formula(&phi, &consts)?;
                let _ = writeln!(out, "formula {hat}");
            }
            ok(out)
        }
        Command::Minimal {
            formula,
            class,
            max_size,
        } => {
            let family = match class.as_str() {
                "S" => Family::ClassS,
                "graphs" => Family::Graphs,
                other => match other.strip_prefix("corpus:") {
                    Some(dir) => Family::Corpus(load_corpus(Path::new(dir))?),
                    None => {
                        return Err(Error::Domain(format!(
                            "unknown class `{other}`; use S, graphs, or corpus:<dir>"
                        )))
                    }
                },
            };
            let vocab = match &family {
                Family::ClassS => crate::counterexample::ln_vocabulary(),
                Family::Graphs => crate::structure::Vocabulary::of(&[("E", 2)]),
                Family::Corpus(list) => match list.first() {
                    Some(s) => s.vocabulary().clone(),
                    None => return Err(Error::Domain("corpus directory is empty".into())),
                },
                Family::All(v) => v.clone(),
            };
            let phi = load_formula(&formula, &vocab)?;
            let cls = ClassSpec::new(family, max_size);
            let found = enumerate_minimal_models(&phi, &cls, max_size)?;
            let mut out = format!("{} minimal model(s)\n", found.len());
            for (i, m) in found.iter().enumerate() {
                let _ = writeln!(out, "--- model {} ---", i + 1);
                out.push_str(&print_structure(m));
            }
            ok(out)
        }
        Command::Agdemo {
            structure,
            formula,
            profile,
            scattered,
        } => {
            let a = load_structure(&structure)?;
            let prof = load_profile(&profile, a.vocabulary())?;
            let phi = match formula {
                Some(f) => load_formula(&f, a.vocabulary())?,
                None => prof.disjunction(),
            };
            let chosen: Vec<ElementId> = match scattered {
                Some(ids) => ids.iter().map(ElementId::new).collect(),
                None => {
                    let g = a.gaifman_graph();
                    let set =
                        max_scattered_set(&g, prof.r(), ScatterMode::Exact { vertex_bound: 64 })?;
                    set.into_iter().take(prof.m()).collect()
                }
            };
            let trace = ag_construct(&a, &phi, &prof, &chosen)?;
            if !is_hom(&a, &trace.a_n, &trace.hom_a_to_a_n)?
                || !is_hom(&trace.b_n, &trace.b, &trace.hom_b_n_to_b)?
            {
                return with_status(
                    "certificate failed re-verification\n".into(),
                    EXIT_CERTIFICATE,
                );
            }
            let mut out = String::new();
            let _ = writeln!(
                out,
                "profile: s={} t={} n={} r={} m={}",
                prof.s(),
                prof.t(),
                prof.n(),
                prof.r(),
                prof.m()
            );
            let _ = writeln!(out, "theta table (one row per scattered element):");
            for (e, row) in &trace.theta_table {
                let bits: String = row.iter().map(|b| if *b { '1' } else { '0' }).collect();
                let _ = writeln!(out, "  {e}: {bits}");
            }
            let _ = writeln!(out, "pigeonhole pair: ({}, {})", trace.pair.0, trace.pair.1);
            match &trace.branch {
                Branch::TupleRemoval { symbol, tuple } => {
                    let names: Vec<&str> = tuple.iter().map(|e| e.as_str()).collect();
                    let _ = writeln!(out, "branch: remove tuple {symbol}({})", names.join(","));
                }
                Branch::ElementDeletion(e) => {
                    let _ = writeln!(out, "branch: delete element {e}");
                }
            }
            let _ = writeln!(out, "copies: {}", trace.copies);
            let _ = writeln!(
                out,
                "phi: a={} b={} b_n={} a_n={}",
                trace.phi_on_a, trace.phi_on_b, trace.phi_on_b_n, trace.phi_on_a_n
            );
            let _ = writeln!(out, "hom a→a_n: verified ({} entries)", trace.hom_a_to_a_n.len());
            let _ = writeln!(out, "hom b_n→b: verified ({} entries)", trace.hom_b_n_to_b.len());
            let _ = writeln!(
                out,
                "agreement a_n ⊨ φ ⇔ b_n ⊨ φ: {}",
                if trace.agreement { "HOLDS" } else { "FAILS" }
            );
            if !trace.agreement {
                // The empirically testable half of the agreement theorem
                // failed: either a bug or a profile that does not
                // axiomatize φ; see the module documentation.
                return with_status(out, EXIT_CERTIFICATE);
            }
            let _ = writeln!(out, "--- structure b ---");
            out.push_str(&print_structure(&trace.b));
            let _ = writeln!(out, "--- structure b_n ---");
            out.push_str(&print_structure(&trace.b_n));
            let _ = writeln!(out, "--- structure a_n ---");
            out.push_str(&print_structure(&trace.a_n));
            ok(out)
        }
        Command::Counterexample { sub } => match sub {
            CounterexampleCmd::Gen {
                n,
                seed,
                components,
            } => {
                if n == 0 {
                    return Err(Error::Domain("n must be at least 1".into()));
                }
                let s = match seed {
                    None => make_ln(n),
                    Some(seed) => sample_s(seed, n, components).structure(),
                };
                ok(print_structure(&s))
            }
            CounterexampleCmd::Check {
                seed,
                samples,
                n_bound,
            } => {
                let report = check_lemmas(samples, seed, n_bound)?;
                let mut out = String::new();
                for (name, fact) in [
                    ("rigidity (5.1)", report.rigidity),
                    ("transfer (5.2)", report.transfer),
                    ("characterization (5.3)", report.characterization),
                    ("preservation (5.4)", report.preservation),
                    ("minimality (5.5)", report.minimality),
                ] {
                    let _ = writeln!(
                        out,
                        "{name}: {} ({} checked, {} violations)",
                        if fact.ok() { "PASS" } else { "FAIL" },
                        fact.checked,
                        fact.violations
                    );
                }
                let status = if report.all_ok() { EXIT_OK } else { EXIT_CERTIFICATE };
                with_status(out, status)
            }
        },
    }
}

fn load_corpus(dir: &Path) -> Result<Vec<Structure>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "struct").unwrap_or(false))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_structure(p)).collect()
}

/// Profile files: one `local <width> <radius> <psi>` line per sentence;
/// blank lines and `#` comments ignored.
fn load_profile(
    path: &Path,
    vocab: &crate::structure::Vocabulary,
) -> Result<BasicLocalProfile> {
    let text = std::fs::read_to_string(path)?;
    let mut sentences = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: idx + 1,
            column: 1,
            message,
        };
        let rest = line
            .strip_prefix("local")
            .ok_or_else(|| err("expected `local <width> <radius> <psi>`".into()))?;
        let mut parts = rest.trim().splitn(3, char::is_whitespace);
        let width: usize = parts
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| err("bad width".into()))?;
        let radius: usize = parts
            .next()
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| err("bad radius".into()))?;
        let psi_text = parts.next().ok_or_else(|| err("missing ψ".into()))?;
        let psi = parse_formula(psi_text.trim(), vocab)?;
        sentences.push(basic_local_sentence(width, radius, &psi, vocab)?);
    }
    BasicLocalProfile::new(sentences)
}

/// Parses arguments, dispatches and returns the process exit status.
pub fn cli_main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            report.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::TooLarge(_) => EXIT_BUDGET,
                _ => EXIT_DOMAIN,
            }
        }
    }
}
