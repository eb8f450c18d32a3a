//! Command-line front end: generation, analysis, container construction,
//! theorem verification, and catalog regeneration.
//!
//! Exit codes: 0 success / certified, 1 negative mathematical result
//! (container proven absent or not constructible, a certification failure),
//! 2 invalid arguments or unreadable input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tourspan::connectivity::{check_irregularity_bound, is_k_strong, vertex_connectivity};
use tourspan::containers::{
    build_strong_container, build_weak_container, oracle_container, verify_container,
    BuildOptions, Container, ContainerError, Mode, OracleOutcome,
};
use tourspan::generate::{near_regular_tournament, random_tournament};
use tourspan::hamilton::derive_exceptional_catalog;
use tourspan::spanning::{survey, SpanningReport};
use tourspan::Tournament;

#[derive(Parser)]
#[command(name = "tourspan", version, about = "Spanning containers in tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest order at which exact oracle searches run.
    /// Also settable via TOURSPAN_ORACLE_BOUND.
    #[arg(long, global = true)]
    oracle_bound: Option<usize>,
    /// Node budget for Hamiltonian backtracking searches
    #[arg(long, global = true)]
    search_budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    NearRegular,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Thm10,
    Sec3,
    Sec4,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tournament and write it in tourn-v1 format
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Irregularity budget (near-regular only)
        #[arg(long)]
        k: Option<usize>,
        /// RNG seed (always required; no wall-clock default)
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report degrees, irregularity, connectivity, and decomposition
    Analyze {
        input: PathBuf,
    },
    /// Build (or oracle-search) a spanning container between two vertices
    Container {
        input: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Use the exact oracle instead of the constructive builders
        #[arg(long)]
        oracle: bool,
    },
    /// Run a theorem-verification suite over seeded samples
    VerifyTheorems {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Theorem parameter k (strength 2k or 2k+1 depending on suite,
        /// irregularity budget for sec4)
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Target t for the sec4 bounds
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Order or inclusive order range, e.g. 13 or 9..11
        #[arg(long)]
        n: String,
        /// Number of seeds (0, 1, ..., seeds-1)
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
    /// Rederive the exceptional 6-vertex catalog by exhaustive search
    RegenCatalog {
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = build_options(&cli);
    let result = match cli.command {
        Command::Generate {
            n,
            kind,
            k,
            seed,
            out,
        } => cmd_generate(n, kind, k, seed, &out, cli.format),
        Command::Analyze { ref input } => cmd_analyze(input, cli.format),
        Command::Container {
            ref input,
            x,
            y,
            k,
            mode,
            oracle,
        } => cmd_container(input, x, y, k, mode, oracle, &opts, cli.format),
        Command::VerifyTheorems {
            suite,
            k,
            t,
            ref n,
            seeds,
        } => cmd_verify_theorems(suite, k, t, n, seeds, &opts, cli.format),
        Command::RegenCatalog { ref out } => cmd_regen_catalog(out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_options(cli: &Cli) -> BuildOptions {
    let mut opts = BuildOptions::default();
    if let Ok(v) = std::env::var("TOURSPAN_ORACLE_BOUND") {
        if let Ok(b) = v.parse() {
            opts.oracle_bound = b;
        }
    }
    if let Some(b) = cli.oracle_bound {
        opts.oracle_bound = b;
    }
    if let Some(b) = cli.search_budget {
        opts.search_budget = b;
    }
    opts
}

fn load(path: &PathBuf) -> Result<Tournament, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Tournament::from_tourn_v1(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_generate(
    n: usize,
    kind: Kind,
    k: Option<usize>,
    seed: u64,
    out: &PathBuf,
    format: Format,
) -> Result<ExitCode, String> {
    let t = match kind {
        Kind::Random => random_tournament(n, seed).map_err(|e| e.to_string())?,
        Kind::NearRegular => {
            near_regular_tournament(n, k.unwrap_or(0), seed).map_err(|e| e.to_string())?
        }
    };
    std::fs::write(out, t.to_tourn_v1())
        .map_err(|e| format!("{}: {e}", out.display()))?;
    let profile = t.degree_profile();
    let (kappa, _) = vertex_connectivity(&t);
    match format {
        Format::Text => {
            println!("n = {n}, seed = {seed}");
            println!("out-degrees: {:?}", profile.out_degrees);
            println!("in-degrees:  {:?}", profile.in_degrees);
            println!("irregularity = {}", profile.irregularity);
            println!("kappa = {kappa}");
            println!("wrote {}", out.display());
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "n": n, "seed": seed,
                    "out_degrees": profile.out_degrees,
                    "in_degrees": profile.in_degrees,
                    "irregularity": profile.irregularity,
                    "kappa": kappa,
                    "out": out.display().to_string(),
                })
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(input: &PathBuf, format: Format) -> Result<ExitCode, String> {
    let t = load(input)?;
    let profile = t.degree_profile();
    let (kappa, cut) = vertex_connectivity(&t);
    let decomp = t.strong_decomposition();
    let bound = check_irregularity_bound(&t, profile.irregularity)
        .map_err(|e| e.to_string())?;
    match format {
        Format::Text => {
            println!("n = {}", t.n());
            println!("out-degrees: {:?}", profile.out_degrees);
            println!("in-degrees:  {:?}", profile.in_degrees);
            println!("irregularity = {}", profile.irregularity);
            println!("kappa = {kappa}");
            if let Some(c) = &cut {
                println!("minimum separator: {:?}", c.separator);
            }
            println!(
                "strong components ({}): {:?}",
                decomp.components.len(),
                decomp.components
            );
            println!(
                "degree bound: kappa {kappa} vs ceil((n-2k)/3) = {} -> {}",
                bound.bound,
                if bound.satisfied { "satisfied" } else { "VIOLATED" }
            );
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "n": t.n(),
                    "out_degrees": profile.out_degrees,
                    "in_degrees": profile.in_degrees,
                    "irregularity": profile.irregularity,
                    "kappa": kappa,
                    "separator": cut.map(|c| c.separator),
                    "components": decomp.components,
                    "bound": { "value": bound.bound, "satisfied": bound.satisfied },
                })
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_container(
    input: &PathBuf,
    x: usize,
    y: usize,
    k: usize,
    mode: ModeArg,
    oracle: bool,
    opts: &BuildOptions,
    format: Format,
) -> Result<ExitCode, String> {
    let t = load(input)?;
    if x >= t.n() || y >= t.n() || x == y || k == 0 {
        return Err(format!("invalid pair ({x},{y}) or k={k} for n={}", t.n()));
    }
    let mode = match mode {
        ModeArg::Strong => Mode::Strong,
        ModeArg::Weak => Mode::Weak,
    };
    let outcome: Result<Container, String> = if oracle {
        match oracle_container(&t, x, y, k, mode, opts.oracle_bound) {
            Ok(OracleOutcome::Found(c)) => Ok(c),
            Ok(OracleOutcome::ProvenAbsent) => Err("proven absent (oracle)".into()),
            Err(e) => return Err(e.to_string()),
        }
    } else {
        let built = match mode {
            Mode::Strong => build_strong_container(&t, x, y, k, opts),
            Mode::Weak => build_weak_container(&t, x, y, k, opts),
        };
        match built {
            Ok(c) => Ok(c),
            Err(
                e @ (ContainerError::NotConstructible { .. } | ContainerError::Search(_)),
            ) => Err(e.to_string()),
            Err(e) => return Err(e.to_string()),
        }
    };
    match outcome {
        Ok(c) => {
            let violations = verify_container(&t, &c, true);
            match format {
                Format::Text => {
                    for p in &c.paths {
                        println!("path: {:?}", p.vertices());
                    }
                    println!("spanning = {}", c.spanning);
                    if let Some(tr) = &c.trace {
                        println!("trace: case={} base={}", tr.case, tr.base);
                    }
                    if violations.is_empty() {
                        println!("verified ok");
                    } else {
                        for v in &violations {
                            println!("violation: {v}");
                        }
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "container": c,
                            "verified": violations.is_empty(),
                            "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        })
                    );
                }
            }
            if violations.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Err(reason) => {
            match format {
                Format::Text => println!("no container: {reason}"),
                Format::Json => {
                    println!("{}", serde_json::json!({ "container": null, "reason": reason }))
                }
            }
            Ok(ExitCode::from(1))
        }
    }
}

/// Even orders cannot be regular, so sample suites allow irregularity 1
/// there and demand exact regularity at odd orders.
fn parity_budget(n: usize) -> usize {
    if n.is_multiple_of(2) {
        1
    } else {
        0
    }
}

fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| format!("bad range {s}"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad range {s}"))?;
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![s.trim().parse().map_err(|_| format!("bad order {s}"))?])
    }
}

fn cmd_verify_theorems(
    suite: Suite,
    k: usize,
    t: usize,
    n_spec: &str,
    seeds: u64,
    opts: &BuildOptions,
    format: Format,
) -> Result<ExitCode, String> {
    let orders = parse_range(n_spec)?;
    let seed_list: Vec<u64> = (0..seeds).collect();
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut reports: Vec<SpanningReport> = Vec::new();

    let run_thm10 = matches!(suite, Suite::Thm10 | Suite::All);
    let run_sec3 = matches!(suite, Suite::Sec3 | Suite::All);
    let run_sec4 = matches!(suite, Suite::Sec4 | Suite::All);

    if run_thm10 {
        // (2k+1)-strong samples must be (k+2)*-weakly connected
        let strength = 2 * k + 1;
        let k_target = k + 2;
        for &seed in &seed_list {
            for &n in &orders {
                let tn = near_regular_tournament(n, parity_budget(n), seed)
                    .map_err(|e| e.to_string())?;
                if !is_k_strong(&tn, strength) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                for x in 0..n {
                    for y in (x + 1)..n {
                        if let Err(e) = build_weak_container(&tn, x, y, k_target, opts) {
                            failures.push(format!(
                                "thm10 n={n} seed={seed} pair=({x},{y}): {e}"
                            ));
                        }
                    }
                }
            }
        }
    }
    if run_sec3 {
        // 2k-strong samples must be k*-strongly connected
        let strength = 2 * k.max(1);
        let k_target = k.max(1);
        for &seed in &seed_list {
            for &n in &orders {
                let tn = near_regular_tournament(n, parity_budget(n), seed)
                    .map_err(|e| e.to_string())?;
                if !is_k_strong(&tn, strength) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                for x in 0..n {
                    for y in (x + 1)..n {
                        if let Err(e) = build_strong_container(&tn, x, y, k_target, opts) {
                            failures.push(format!(
                                "sec3 n={n} seed={seed} pair=({x},{y}): {e}"
                            ));
                        }
                    }
                }
            }
        }
    }
    if run_sec4 {
        let batch = survey(&orders, &[k], &[t], &seed_list, opts).map_err(|e| e.to_string())?;
        for r in &batch {
            let s4 = r.section4.as_ref().unwrap();
            if s4.hypothesis_s || s4.hypothesis_w {
                checked += 1;
                if !s4.satisfied {
                    failures.push(format!(
                        "sec4 n={} seed={:?}: bound certification failed: {:?}",
                        r.meta.n, r.meta.seed, s4.counterexample
                    ));
                }
            } else {
                skipped += 1;
            }
        }
        reports = batch;
    }

    match format {
        Format::Text => {
            println!(
                "checked {checked} instance(s), skipped {skipped} (hypothesis not met)"
            );
            for f in &failures {
                println!("FAIL {f}");
            }
            if failures.is_empty() {
                println!("all certified");
            }
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "checked": checked,
                    "skipped": skipped,
                    "failures": failures,
                    "reports": reports,
                })
            );
        }
    }
    Ok(if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_regen_catalog(out: &PathBuf) -> Result<ExitCode, String> {
    let entries = derive_exceptional_catalog();
    let mut text = String::new();
    for e in &entries {
        text.push_str(&format!("pair {} {}\n", e.pair.0, e.pair.1));
        text.push_str(&e.tournament.to_tourn_v1());
        text.push('\n');
    }
    std::fs::write(out, &text).map_err(|e| format!("{}: {e}", out.display()))?;
    println!("{} exceptional entries written to {}", entries.len(), out.display());
    for e in &entries {
        println!("entry: n=6 pair=({},{})", e.pair.0, e.pair.1);
    }
    Ok(ExitCode::SUCCESS)
}
