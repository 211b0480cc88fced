//! `netring`: check ring finiteness, verify and search network codes, and
//! export the built-in catalog.
//!
//! Exit codes: 0 holds or satisfied, 1 refuted or unsatisfied, 2 usage or
//! input error, 3 budget exceeded.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use netring::netmodel::{transfer, verify, Assignment, Network};
use netring::rings::{parse_ring, theorem1_battery, Condition};
use netring::search::{search_scalar, Limits, Verdict};
use netring::{catalog, Error};

#[derive(Parser)]
#[command(
    name = "netring",
    version,
    about = "Exact linear network coding over rings"
)]
struct Cli {
    /// Print a JSON report instead of plain text.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a finite ring is Dedekind finite.
    RingCheck {
        /// Ring spec such as `Z6`, `GF3`, `M2(GF2)`.
        spec: String,
        /// Report all nine equivalent conditions.
        #[arg(long)]
        battery: bool,
        /// Refuse rings with more elements than this.
        #[arg(long, default_value_t = 4096)]
        max_elems: u128,
    },
    /// Check an assignment against a network's demands.
    Verify {
        network: PathBuf,
        assignment: PathBuf,
    },
    /// Exhaustively search for scalar solutions over a finite ring.
    Search {
        network: PathBuf,
        ring: String,
        /// Stop after this many solutions (0 for all).
        #[arg(long, default_value_t = 1)]
        max_solutions: usize,
        /// Give up after this many search-tree nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Split the search over this many threads.
        #[arg(long, default_value_t = 1)]
        partitions: usize,
        /// Write each solution as an assignment file into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print wall time and per-depth counts to stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Print the transfer matrix of an assignment.
    Transfer {
        network: PathBuf,
        assignment: PathBuf,
    },
    /// List or export built-in networks and solutions.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the entry names.
    List,
    /// Write an entry's network and known assignments into a directory.
    Emit { name: String, dir: PathBuf },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) {
            3
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load(network: &Path, assignment: &Path) -> Result<(Network, Assignment), Failure> {
    let net = Network::from_json_str(&read(network)?)?;
    net.check()?;
    let asg = Assignment::from_json_str(&read(assignment)?)?;
    asg.check_against(&net)?;
    Ok((net, asg))
}

/// What a command prints and how it exits.
struct Report {
    text: String,
    machine: Json,
    code: u8,
}

fn ring_check(spec: &str, battery: bool, max_elems: u128) -> Result<Report, Failure> {
    let ring = parse_ring(spec)?;
    let elements = ring.require_within(max_elems)?;
    let report = theorem1_battery(&ring, max_elems)?;
    let shown: Vec<_> = report
        .verdicts
        .iter()
        .filter(|v| battery || v.condition == Condition::DedekindFinite)
        .collect();
    let finite = report.verdicts[0].holds;
    let mut text = format!("ring: {ring}\nelements: {elements}\ndedekind_finite: {finite}\n");
    let mut conditions = Vec::new();
    for v in &shown {
        let witness: Option<Vec<String>> = v
            .counterexample
            .as_ref()
            .map(|xs| xs.iter().map(|x| x.to_string()).collect());
        text.push_str(&format!(
            "condition {}: {} ({})",
            v.condition.number(),
            v.holds,
            v.condition.statement()
        ));
        if let Some(w) = &witness {
            text.push_str(&format!(" counterexample [{}]", w.join(", ")));
        }
        text.push('\n');
        conditions.push(json!({
            "number": v.condition.number(),
            "statement": v.condition.statement(),
            "holds": v.holds,
            "counterexample": witness,
        }));
    }
    if battery {
        text.push_str(&format!("all_agree: {}\n", report.all_agree()));
    }
    Ok(Report {
        text,
        machine: json!({
            "ring": ring.to_string(),
            "elements": elements,
            "dedekind_finite": finite,
            "conditions": conditions,
            "all_agree": report.all_agree(),
        }),
        code: if finite { 0 } else { 1 },
    })
}

fn verify_cmd(network: &Path, assignment: &Path) -> Result<Report, Failure> {
    let (net, asg) = load(network, assignment)?;
    let v = verify(&net, &asg)?;
    let mut text = format!(
        "ring: {}\nk: {}\nn: {}\nsatisfied: {}\n",
        asg.ring(),
        asg.k(),
        asg.n(),
        v.satisfied
    );
    let mut blocks = Vec::new();
    for (&(t, s), residual) in &v.residuals {
        let expected = if net.demanded_source(t) == Some(s) {
            "I"
        } else {
            "0"
        };
        let ok = residual.is_zero();
        text.push_str(&format!(
            "block {t}<-{s} expected {expected} {} residual {residual}\n",
            if ok { "ok" } else { "FAIL" }
        ));
        blocks.push(json!({
            "receiver": t,
            "source": s,
            "expected": expected,
            "ok": ok,
            "residual": residual.to_literal(),
        }));
    }
    Ok(Report {
        text,
        machine: json!({
            "ring": asg.ring().to_string(),
            "k": asg.k(),
            "n": asg.n(),
            "satisfied": v.satisfied,
            "blocks": blocks,
        }),
        code: if v.satisfied { 0 } else { 1 },
    })
}

fn transfer_cmd(network: &Path, assignment: &Path) -> Result<Report, Failure> {
    let (net, asg) = load(network, assignment)?;
    let tm = transfer(&net, &asg)?;
    let ids = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let text = format!(
        "receivers: {}\nsources: {}\ntransfer: {tm}\n",
        ids(tm.receivers()),
        ids(tm.sources())
    );
    let blocks: Vec<Json> = tm
        .blocks()
        .map(|((t, s), m)| json!({"receiver": t, "source": s, "block": m.to_literal()}))
        .collect();
    Ok(Report {
        text,
        machine: json!({
            "receivers": tm.receivers(),
            "sources": tm.sources(),
            "k": tm.k(),
            "blocks": blocks,
        }),
        code: 0,
    })
}

#[allow(clippy::too_many_arguments)]
fn search_cmd(
    network: &Path,
    ring: &str,
    max_solutions: usize,
    max_nodes: Option<u64>,
    partitions: usize,
    out: Option<&Path>,
    verbose: bool,
) -> Result<Report, Failure> {
    let net = Network::from_json_str(&read(network)?)?;
    let ring = parse_ring(ring)?;
    let limits = Limits {
        max_solutions: (max_solutions > 0).then_some(max_solutions),
        max_nodes,
        partitions: partitions.max(1),
    };
    let outcome = search_scalar(&net, &ring, &limits)?;
    if verbose {
        eprintln!("elapsed_ms: {}", outcome.elapsed.as_millis());
        eprintln!("{}", outcome.certificate);
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for (i, s) in outcome.solutions.iter().enumerate() {
            let path = dir.join(format!("solution-{}.json", i + 1));
            fs::write(&path, s.to_json_string()).map_err(|e| io_failure(&path, e))?;
        }
    }
    let text = format!("ring: {ring}\n{}", outcome.report(false));
    let solutions: Vec<Json> = outcome
        .solutions
        .iter()
        .map(|s| serde_json::from_str(&s.to_json_string()).expect("assignment files are JSON"))
        .collect();
    let code = match outcome.verdict {
        Verdict::SolutionsFound => 0,
        Verdict::ExhaustedNone => 1,
        Verdict::BudgetExceeded => 3,
    };
    Ok(Report {
        text,
        machine: json!({
            "ring": ring.to_string(),
            "verdict": outcome.verdict.to_string(),
            "nodes_visited": outcome.nodes_visited,
            "full_space_covered": outcome.certificate.covers_full_space(),
            "solutions": solutions,
        }),
        code,
    })
}

fn catalog_cmd(action: &CatalogAction) -> Result<Report, Failure> {
    match action {
        CatalogAction::List => {
            let names = catalog::names();
            Ok(Report {
                text: names.iter().map(|n| format!("{n}\n")).collect(),
                machine: json!(names),
                code: 0,
            })
        }
        CatalogAction::Emit { name, dir } => {
            catalog::lookup(name)?;
            let written = catalog::emit(name, dir).map_err(|e| io_failure(dir, e))?;
            let paths: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            Ok(Report {
                text: paths.iter().map(|p| format!("wrote {p}\n")).collect(),
                machine: json!({ "written": paths }),
                code: 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::RingCheck {
            spec,
            battery,
            max_elems,
        } => ring_check(spec, *battery, *max_elems),
        Command::Verify {
            network,
            assignment,
        } => verify_cmd(network, assignment),
        Command::Search {
            network,
            ring,
            max_solutions,
            max_nodes,
            partitions,
            out,
            verbose,
        } => search_cmd(
            network,
            ring,
            *max_solutions,
            *max_nodes,
            *partitions,
            out.as_deref(),
            *verbose,
        ),
        Command::Transfer {
            network,
            assignment,
        } => transfer_cmd(network, assignment),
        Command::Catalog { action } => catalog_cmd(action),
    };
    match result {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = if cli.machine {
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report.machine).expect("reports serialize")
                )
            } else {
                write!(stdout, "{}", report.text)
            };
            ExitCode::from(report.code)
        }
        Err(f) => {
            if cli.machine {
                let _ = writeln!(
                    std::io::stdout(),
                    "{}",
                    json!({"error": f.message, "exit_code": f.code})
                );
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
