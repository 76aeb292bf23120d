//! Command-line front end: constructions, verification, exact search,
//! bounds, and good-set search, wired for scripted batch use.
//!
//! Exit codes: 0 success / property holds; 1 property violated or an
//! operation failed; 2 usage or file-format errors. Every construct run
//! writes a JSON manifest next to the family so a run can be reproduced
//! and its outputs digest-compared.

use crate::bounds::{
    bound_c_n2_upper, bound_eq_tstar, bound_tcanc_recursive, bound_uniform_even,
    bound_uniform_odd, p_r, packing_ceiling, tolhuizen_c0, BoundReport,
};
use crate::construct::{
    construct_algebraic, construct_complete_r_partite, construct_hk_packing,
    construct_linear_4uniform, construct_tolhuizen, PackingMode,
};
use crate::family::io::{load_family, write_fam};
use crate::family::{find_r_partition, SetFamily, Verdict, Witness};
use crate::field::Field;
use crate::poly::find_good_set;
use crate::search::{
    max_family, GroundSet, Property, SearchLimits, SearchProblem, SearchStatus,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

pub const THREADS_ENV: &str = "CANCEL_CODES_THREADS";

/// Families up to this size get their claimed property re-verified before
/// the manifest is written.
const VERIFY_SIZE_LIMIT: usize = 5000;

#[derive(Parser)]
#[command(name = "cancel-codes", version, about = "cancellative set family toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for verification scans (default: CANCEL_CODES_THREADS or 1).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build a family, write ".fam" output plus a JSON manifest sidecar.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check a property of a ".fam"/".bits" file.
    Verify(VerifyArgs),
    /// Exact extremal value by branch and bound.
    Search(SearchArgs),
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Find a good 2k-element evaluation set over GF(q).
    Goodset(GoodsetArgs),
}

#[derive(Subcommand)]
pub enum ConstructCmd {
    /// Polynomial-graph code: q^k members, 2k-uniform, 2-cancellative.
    Algebraic {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        /// Evaluation set (element strings; ',' separates prime-field
        /// elements, ';' separates extension-field coefficient vectors).
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_tries: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Random-matrix coset code; the best coset is the emitted family.
    Tolhuizen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        retries: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Complete r-partite family with near-equal classes.
    Rpartite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Greedy maximal (n,4,2)-packing.
    Packing4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Special-K4 family of a packed apexed-clique template.
    Hk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CliPackingMode::Disjoint)]
        mode: CliPackingMode,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliPackingMode {
    Disjoint,
    Greedy,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// ".fam" or ".bits" family file.
    pub file: PathBuf,
    /// canc:t | tstar:t | coverfree:g | thin:a:b | linear | sparse:v:e | g6g7 | rpartite:r
    #[arg(long)]
    pub property: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    /// Strength parameter for canc/tstar/coverfree.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Restrict the ground set to r-subsets.
    #[arg(long)]
    pub r: Option<usize>,
    /// canc | tstar | coverfree | sparse:v:e | thin:a:b
    #[arg(long)]
    pub property: String,
    #[arg(long, default_value_t = 100_000_000)]
    pub node_budget: u64,
    /// Seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
    /// Write the witness family here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct BoundArgs {
    /// thm1 | thm5 | eq7 | thm2 | eq2 | pr | c0 | packing
    #[arg(long)]
    pub which: String,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Upper bound on the cover-free quantity, for eq2.
    #[arg(long)]
    pub cvalue: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct GoodsetArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_tries: usize,
}

#[derive(serde::Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub input_digests: BTreeMap<String, String>,
    pub output_digests: BTreeMap<String, String>,
    pub wall_time_ms: u64,
    pub result: serde_json::Value,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn thread_count(cli_threads: Option<usize>) -> usize {
    cli_threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

pub fn run(cli: Cli) -> ExitCode {
    let threads = thread_count(cli.threads);
    match cli.command {
        Command::Construct(cmd) => run_construct(cmd, threads),
        Command::Verify(args) => run_verify(args, threads),
        Command::Search(args) => run_search(args),
        Command::Bound(args) => run_bound(args),
        Command::Goodset(args) => run_goodset(args),
    }
}

// ---- construct ----

struct ConstructOutput {
    family: SetFamily,
    claimed: &'static str,
    result: serde_json::Value,
}

fn parse_element_set(field: &Field, text: &str) -> Result<Vec<crate::field::FieldElement>, String> {
    let sep = if field.extension_degree() == 1 { ',' } else { ';' };
    text.split(sep)
        .map(|tok| field.parse_element(tok.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn run_construct(cmd: ConstructCmd, threads: usize) -> ExitCode {
    let start = Instant::now();
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    let built: Result<(ConstructOutput, PathBuf, Option<PathBuf>, String, Option<u64>), String> =
        (|| match cmd {
            ConstructCmd::Algebraic { q, k, set, seed, max_tries, out, manifest } => {
                params.extend([
                    ("q".into(), q.to_string()),
                    ("k".into(), k.to_string()),
                    ("max_tries".into(), max_tries.to_string()),
                ]);
                if let Some(s) = &set {
                    params.insert("set".into(), s.clone());
                }
                let elements = match &set {
                    Some(text) => {
                        let field = Field::new(q).map_err(|e| e.to_string())?;
                        Some(parse_element_set(&field, text)?)
                    }
                    None => None,
                };
                let code = construct_algebraic(q, k, elements, seed, max_tries)
                    .map_err(|e| e.to_string())?;
                let set_str: Vec<String> =
                    code.good_set.iter().map(|e| e.to_string()).collect();
                let result = serde_json::json!({
                    "members": code.family.len(),
                    "vertices": code.family.n(),
                    "uniform": code.family.uniform_r(),
                    "good_set": set_str,
                    "candidates_tried": code.candidates_tried,
                });
                Ok((
                    ConstructOutput { family: code.family, claimed: "canc:2", result },
                    out,
                    manifest,
                    "construct algebraic".into(),
                    Some(seed),
                ))
            }
            ConstructCmd::Tolhuizen { n, r, seed, retries, out, manifest } => {
                params.extend([
                    ("n".into(), n.to_string()),
                    ("r".into(), r.to_string()),
                    ("retries".into(), retries.to_string()),
                ]);
                let code = construct_tolhuizen(n, r, seed, retries).map_err(|e| e.to_string())?;
                let coset_sizes: Vec<usize> = code.cosets.iter().map(|c| c.len()).collect();
                let result = serde_json::json!({
                    "full_family": code.family.len(),
                    "threshold": code.threshold,
                    "met_threshold": code.met_threshold,
                    "tries": code.tries,
                    "coset_sizes": coset_sizes,
                    "best_coset": code.best_coset,
                    "matrix_rows": code.matrix.iter().map(|r| format!("{r:b}")).collect::<Vec<_>>(),
                });
                let best = code.cosets[code.best_coset].clone();
                Ok((
                    ConstructOutput { family: best, claimed: "canc:1", result },
                    out,
                    manifest,
                    "construct tolhuizen".into(),
                    Some(seed),
                ))
            }
            ConstructCmd::Rpartite { n, r, out, manifest } => {
                params.extend([("n".into(), n.to_string()), ("r".into(), r.to_string())]);
                let family = construct_complete_r_partite(n, r).map_err(|e| e.to_string())?;
                let result = serde_json::json!({
                    "members": family.len(),
                    "vertices": family.n(),
                });
                Ok((
                    ConstructOutput { family, claimed: "canc:1", result },
                    out,
                    manifest,
                    "construct rpartite".into(),
                    None,
                ))
            }
            ConstructCmd::Packing4 { n, seed, out, manifest } => {
                params.insert("n".into(), n.to_string());
                let family = construct_linear_4uniform(n, seed).map_err(|e| e.to_string())?;
                let ceiling = packing_ceiling(n as u64, 4).map_err(|e| e.to_string())?;
                let result = serde_json::json!({
                    "members": family.len(),
                    "pair_ceiling": ceiling.to_string(),
                });
                Ok((
                    ConstructOutput { family, claimed: "canc:2", result },
                    out,
                    manifest,
                    "construct packing4".into(),
                    Some(seed),
                ))
            }
            ConstructCmd::Hk { n, k, mode, seed, out, manifest } => {
                params.extend([
                    ("n".into(), n.to_string()),
                    ("k".into(), k.to_string()),
                    (
                        "mode".into(),
                        match mode {
                            CliPackingMode::Disjoint => "disjoint".into(),
                            CliPackingMode::Greedy => "greedy".into(),
                        },
                    ),
                ]);
                let pm = match mode {
                    CliPackingMode::Disjoint => PackingMode::Disjoint,
                    CliPackingMode::Greedy => PackingMode::Greedy,
                };
                let packing = construct_hk_packing(n, k, pm, seed).map_err(|e| e.to_string())?;
                let result = serde_json::json!({
                    "members": packing.family.len(),
                    "copies": packing.copies.len(),
                });
                Ok((
                    ConstructOutput { family: packing.family, claimed: "canc:2", result },
                    out,
                    manifest,
                    "construct hk".into(),
                    Some(seed),
                ))
            }
        })();

    let (output, out_path, manifest_path, subcommand, seed) = match built {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };

    // re-verify the claimed property at desk scale
    let mut result = output.result;
    let verdict = if output.family.len() <= VERIFY_SIZE_LIMIT {
        match check_property(&output.family, output.claimed, threads) {
            Ok(Verdict::Holds) => serde_json::json!({"property": output.claimed, "holds": true}),
            Ok(Verdict::Violated(w)) => serde_json::json!({
                "property": output.claimed, "holds": false,
                "witness_members": w.members(),
            }),
            Err(msg) => serde_json::json!({"property": output.claimed, "error": msg}),
        }
    } else {
        serde_json::json!({"property": output.claimed, "skipped": "family too large"})
    };
    result["verification"] = verdict;

    let members = output.family.len();
    let vertices = output.family.n();
    let text = write_fam(&output.family);
    if let Err(e) = std::fs::write(&out_path, &text) {
        eprintln!("error: cannot write {}: {e}", out_path.display());
        return ExitCode::from(1);
    }
    let mut output_digests = BTreeMap::new();
    output_digests.insert(out_path.display().to_string(), sha256_hex(text.as_bytes()));

    let manifest = RunManifest {
        subcommand,
        parameters: params,
        seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input_digests: BTreeMap::new(),
        output_digests,
        wall_time_ms: start.elapsed().as_millis() as u64,
        result,
    };
    let manifest_path = manifest_path
        .unwrap_or_else(|| PathBuf::from(format!("{}.json", out_path.display())));
    let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    if let Err(e) = std::fs::write(&manifest_path, body) {
        eprintln!("error: cannot write {}: {e}", manifest_path.display());
        return ExitCode::from(1);
    }
    println!(
        "wrote {} ({members} members on {vertices} vertices); manifest {}",
        out_path.display(),
        manifest_path.display()
    );
    ExitCode::SUCCESS
}

// ---- verify ----

/// Evaluate a property spec against a family. Returns Err(text) on a
/// malformed spec.
pub fn check_property(
    family: &SetFamily,
    spec: &str,
    threads: usize,
) -> Result<Verdict, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arg = |i: usize| -> Result<usize, String> {
        parts
            .get(i)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("property {spec:?} needs numeric parameter {i}"))
    };
    match parts[0] {
        "canc" => family
            .is_t_cancellative_threads(arg(1)?, threads)
            .map_err(|e| e.to_string()),
        "tstar" => family.is_t_star_cancellative(arg(1)?).map_err(|e| e.to_string()),
        "coverfree" => family.is_cover_free(arg(1)?).map_err(|e| e.to_string()),
        "thin" => family.is_locally_thin(arg(1)?, arg(2)?).map_err(|e| e.to_string()),
        "linear" => Ok(family.is_linear()),
        "sparse" => Ok(family.is_sparse(arg(1)?, arg(2)?)),
        "g6g7" => family.is_g6_g7_free().map_err(|e| e.to_string()),
        "rpartite" => {
            let r = arg(1)?;
            match find_r_partition(family, r).map_err(|e| e.to_string())? {
                Some(_) => Ok(Verdict::Holds),
                None => Err(format!("no {r}-partition found (none exists at this size)")),
            }
        }
        other => Err(format!("unknown property {other:?}")),
    }
}

fn witness_text(f: &SetFamily, w: &Witness) -> String {
    let show = |i: usize| -> String {
        let vs: Vec<String> = f.member_vertices(i).iter().map(|v| v.to_string()).collect();
        format!("#{i}{{{}}}", vs.join(" "))
    };
    let members: Vec<String> = w.members().iter().map(|&i| show(i)).collect();
    format!("{w:?} -> members {}", members.join(", "))
}

fn run_verify(args: VerifyArgs, threads: usize) -> ExitCode {
    let family = match load_family(&args.file) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    // rpartite returns a plain error text when no partition exists; map it
    // onto the violated exit code rather than usage failure
    let is_rpartite = args.property.starts_with("rpartite");
    match check_property(&family, &args.property, threads) {
        Ok(Verdict::Holds) => {
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({"property": args.property, "holds": true})
                );
            } else {
                println!("{}: holds", args.property);
            }
            ExitCode::SUCCESS
        }
        Ok(Verdict::Violated(w)) => {
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "property": args.property,
                        "holds": false,
                        "witness_members": w.members(),
                        "witness": format!("{w:?}"),
                    })
                );
            } else {
                println!("{}: VIOLATED", args.property);
                println!("witness: {}", witness_text(&family, &w));
            }
            ExitCode::from(1)
        }
        Err(msg) if is_rpartite && msg.starts_with("no ") => {
            println!("{}: VIOLATED ({msg})", args.property);
            ExitCode::from(1)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---- search ----

fn run_search(args: SearchArgs) -> ExitCode {
    let parts: Vec<&str> = args.property.split(':').collect();
    let num = |i: usize| -> Option<usize> { parts.get(i).and_then(|s| s.parse().ok()) };
    let property = match parts[0] {
        "canc" => Property::Cancellative { t: args.t },
        "tstar" => Property::StarCancellative { t: args.t },
        "coverfree" => Property::CoverFree { g: args.t },
        "sparse" => match (num(1), num(2)) {
            (Some(v), Some(e)) => Property::Sparse { v, e },
            _ => {
                eprintln!("error: sparse needs the form sparse:v:e");
                return ExitCode::from(2);
            }
        },
        "thin" => match (num(1), num(2)) {
            (Some(a), Some(b)) => Property::LocallyThin { a, b },
            _ => {
                eprintln!("error: thin needs the form thin:a:b");
                return ExitCode::from(2);
            }
        },
        other => {
            eprintln!("error: unknown property {other:?}");
            return ExitCode::from(2);
        }
    };
    let ground = match args.r {
        Some(r) => GroundSet::Uniform { r },
        None => GroundSet::AllSubsets,
    };
    let problem = SearchProblem {
        n: args.n,
        ground,
        property,
        limits: SearchLimits {
            node_budget: args.node_budget,
            time_budget: args.time_budget.map(Duration::from_secs_f64),
        },
    };
    let result = match max_family(&problem) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let status = match result.status {
        SearchStatus::Exact => "exact",
        SearchStatus::LowerBound => "lower-bound",
    };
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "optimum": result.optimum,
                "status": status,
                "nodes": result.nodes,
            })
        );
    } else {
        println!("{} {status}", result.optimum);
        println!("nodes explored: {}", result.nodes);
    }
    if let Some(path) = args.emit {
        if let Err(e) = std::fs::write(&path, write_fam(&result.witness_family)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}

// ---- bound ----

fn run_bound(args: BoundArgs) -> ExitCode {
    let need = |name: &str, v: Option<u64>| -> Result<u64, String> {
        v.ok_or_else(|| format!("--which {} requires --{name}", args.which))
    };
    let report: Result<BoundReport, String> = (|| match args.which.as_str() {
        "thm1" => {
            let n = need("n", args.n)?;
            let v = bound_c_n2_upper(n);
            Ok(BoundReport::new(
                "c(n,2) upper envelope",
                format!("{v}"),
                v,
                "thm1",
                &[("n", n.to_string())],
            ))
        }
        "thm5" => {
            let n = need("n", args.n)?;
            let k = need("k", args.k)?;
            let v = bound_uniform_even(n, k);
            Ok(BoundReport::new(
                "c_{2k}(n,2) upper bound",
                v.to_string(),
                v.to_f64(),
                "thm5",
                &[("n", n.to_string()), ("k", k.to_string())],
            ))
        }
        "eq7" => {
            let n = need("n", args.n)?;
            let k = need("k", args.k)?;
            let v = bound_uniform_odd(n, k);
            Ok(BoundReport::new(
                "c_{2k+1}(n,2) upper bound",
                v.to_string(),
                v.to_f64(),
                "eq7",
                &[("n", n.to_string()), ("k", k.to_string())],
            ))
        }
        "thm2" => {
            let n = need("n", args.n)?;
            let t = need("t", args.t)?;
            let v = bound_tcanc_recursive(n, t).map_err(|e| e.to_string())?;
            Ok(BoundReport::new(
                "c(n,t) recursive envelope",
                format!("{v}"),
                v,
                "thm2",
                &[("n", n.to_string()), ("t", t.to_string())],
            ))
        }
        "eq2" => {
            let t = need("t", args.t)?;
            let c = need("cvalue", args.cvalue)?;
            let v = bound_eq_tstar(t, c);
            Ok(BoundReport::new(
                "c(n,t) via cover-free bound",
                v.to_string(),
                v as f64,
                "eq2",
                &[("t", t.to_string()), ("cvalue", c.to_string())],
            ))
        }
        "pr" => {
            let n = need("n", args.n)?;
            let r = need("r", args.r)?;
            let v = p_r(n, r).map_err(|e| e.to_string())?;
            Ok(BoundReport::new(
                "balanced r-partite size",
                v.to_string(),
                v as f64,
                "pr",
                &[("n", n.to_string()), ("r", r.to_string())],
            ))
        }
        "c0" => {
            let tol = args.tol.unwrap_or(1e-6);
            let c = tolhuizen_c0(tol);
            Ok(BoundReport::new(
                "nonsingular density constant",
                format!("{:.9}", c.value),
                c.value,
                "c0",
                &[
                    ("tol", tol.to_string()),
                    ("factors", c.factors.to_string()),
                    ("error_bound", format!("{:.3e}", c.error_bound)),
                ],
            ))
        }
        "packing" => {
            let n = need("n", args.n)?;
            let r = need("r", args.r)?;
            let v = packing_ceiling(n, r).map_err(|e| e.to_string())?;
            Ok(BoundReport::new(
                "(n,r,2)-packing ceiling",
                v.to_string(),
                v as f64,
                "packing",
                &[("n", n.to_string()), ("r", r.to_string())],
            ))
        }
        other => Err(format!("unknown bound id {other:?}")),
    })();
    match report {
        Ok(rep) => {
            if args.json {
                println!("{}", serde_json::to_string(&rep).expect("report serializes"));
            } else {
                println!("{rep}");
            }
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---- goodset ----

fn run_goodset(args: GoodsetArgs) -> ExitCode {
    let field = match Field::new(args.q) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match find_good_set(&field, args.k, args.seed, args.max_tries) {
        Ok(gs) => {
            let sep = if field.extension_degree() == 1 { "," } else { ";" };
            let parts: Vec<String> = gs.elems.iter().map(|e| e.to_string()).collect();
            println!("{}", parts.join(sep));
            println!("candidates tried: {}", gs.candidates_tried);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
