//! `csd`: exact and approximate analysis of connected-subgraph defense games.
//!
//! Every subcommand prints one JSON run report on stdout; `--format bare`
//! prints only its `results` member. Probabilities are `num/den` strings.

mod report;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csd_core::approx::{approx_defense_strategy, approximation_factor, block_bound};
use csd_core::batch::par_map;
use csd_core::document::{support_entries, ProfileDoc, SolutionDoc};
use csd_core::fictitious::fictitious_play;
use csd_core::game::{check_conditions, defense_value, pure_deviation_check, verify_equilibrium_capped};
use csd_core::generate::{
    cycle_instance, gen_fig1_graph, gen_random_connected, gen_random_tree, gen_star_of_lines,
    gen_three_partition_tree, path_instance, GeneratedInstance,
};
use csd_core::ratio::{format_ratio, Rational};
use csd_core::solver::{build_equilibrium_detailed, maxmin_probability, solve_maxmin_capped};
use csd_core::subgraphs::{enumerate_action_set_capped, DEFAULT_THETA_CAP};
use csd_core::tree_opt::{check_tree_defense_optimal, optimal_probability, optimal_tree_strategy};
use csd_core::{parse_graph, CsdError, Graph, Tree};
use serde_json::{json, Value};

use report::{digest, read, write, CliResult, Failure, RunReport};

#[derive(Parser)]
#[command(name = "csd", version, about = "Connected-subgraph defense games: exact solver, tree check, approximation, verification")]
struct Cli {
    /// `report` wraps results with command, version, input digest and timing.
    #[arg(long, value_enum, default_value_t = Format::Report, global = true)]
    format: Format,
    /// Maximum number of λ-subgraphs to enumerate before giving up.
    #[arg(long, default_value_t = DEFAULT_THETA_CAP, global = true)]
    theta_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Bare,
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file: `n m`, then m lines `u v`.
    graph: String,
    #[arg(long)]
    lambda: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Exact p*, best defense, V* and a k-attacker equilibrium.
    Solve {
        #[command(flatten)]
        input: GraphArgs,
        /// Number of attackers k.
        #[arg(long, default_value_t = 1)]
        attackers: usize,
    },
    /// Decide whether a tree is defense-optimal.
    TreeCheck {
        #[command(flatten)]
        input: GraphArgs,
        /// Also write the partition, one block per line.
        #[arg(long)]
        out: Option<String>,
    },
    /// Cover a spanning tree with λ-subgraphs and defend uniformly.
    Approx {
        #[command(flatten)]
        input: GraphArgs,
        /// Also solve exactly and report the realized factor.
        #[arg(long)]
        with_exact: bool,
        /// Also write the cover and per-vertex coverage.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a strategy profile against the equilibrium conditions.
    Verify {
        #[command(flatten)]
        input: GraphArgs,
        /// Profile document (JSON).
        profile: String,
    },
    /// Write a generated instance and its metadata sidecar.
    Generate(GenerateArgs),
    /// Solve every edge-list file in a directory.
    Batch {
        dir: String,
        /// λ for every file; when omitted, read from each `<file>.meta.json`.
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Fictitious-play estimate of the game value.
    Oracle {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, default_value_t = 100_000)]
        iterations: u64,
        /// Also report the exact value.
        #[arg(long)]
        with_exact: bool,
    },
    /// Export the action set.
    Actions {
        #[command(flatten)]
        input: GraphArgs,
        /// Also write one sorted vertex list per line.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    StarOfLines,
    ThreePartition,
    Fig1,
    RandomTree,
    RandomConnected,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    /// Edge-list output path; metadata goes to `<out>.meta.json`.
    #[arg(long)]
    out: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
    /// Edge count for random-connected.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Integers for three-partition, comma separated.
    #[arg(long, value_delimiter = ',')]
    a: Vec<usize>,
    /// Number of groups m for three-partition.
    #[arg(long)]
    groups: Option<usize>,
}

struct Output {
    digest: String,
    results: Value,
}

fn load_graph(path: &str) -> CliResult<(Graph, Vec<u8>)> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CsdError::Parse { line: 0, message: "input is not UTF-8".into() })?;
    Ok((parse_graph(&text)?, bytes))
}

fn ratio_str(r: &Rational) -> String {
    format_ratio(r)
}

fn solve(input: &GraphArgs, k: usize, cap: usize) -> CliResult<Output> {
    let (graph, bytes) = load_graph(&input.graph)?;
    let sol = solve_maxmin_capped(&graph, input.lambda, cap)?;
    let eq = build_equilibrium_detailed(&sol, k)?;
    let report = check_conditions(sol.actions(), &sol.pstar, &sol.vstar, &eq.profile)?;
    let deviations = pure_deviation_check(&eq.profile)?;
    let mut results = serde_json::to_value(SolutionDoc::new(&sol)).expect("serializable");
    results["k"] = json!(k);
    results["equilibrium"] = json!(ProfileDoc::from_profile(&eq.profile));
    results["attacker_construction"] = json!(eq.construction);
    if let Some(rejection) = &eq.uniform_rejection {
        results["uniform_vstar_rejection"] = json!(rejection);
    }
    results["defense_value"] = json!(ratio_str(&defense_value(&eq.profile)));
    results["verification"] = json!(report);
    results["deviation_check"] = json!(deviations);
    Ok(Output {
        digest: digest([bytes.as_slice()]),
        results,
    })
}

fn tree_check(input: &GraphArgs, out: Option<&str>) -> CliResult<Output> {
    let (graph, bytes) = load_graph(&input.graph)?;
    let tree = Tree::from_graph(graph)?;
    let partition = check_tree_defense_optimal(&tree, input.lambda)?;
    let results = match partition {
        Some(p) => {
            if let Some(path) = out {
                write(path, &p.to_lines())?;
            }
            let strategy = optimal_tree_strategy(&p)?;
            let blocks: Vec<&[usize]> = p.blocks().iter().map(|b| b.vertices()).collect();
            json!({
                "n": tree.n(),
                "lambda": input.lambda,
                "defense_optimal": true,
                "verdict": "defense-optimal",
                "partition": blocks,
                "strategy": support_entries(&strategy),
                "pstar": ratio_str(&optimal_probability(&p)),
            })
        }
        None => {
            if let Some(path) = out {
                write(path, "")?;
            }
            json!({
                "n": tree.n(),
                "lambda": input.lambda,
                "defense_optimal": false,
                "verdict": "not defense-optimal",
                "partition": null,
                "strategy": null,
                "pstar": null,
            })
        }
    };
    Ok(Output {
        digest: digest([bytes.as_slice()]),
        results,
    })
}

fn approx(input: &GraphArgs, with_exact: bool, out: Option<&str>, cap: usize) -> CliResult<Output> {
    let (graph, bytes) = load_graph(&input.graph)?;
    let (n, lambda) = (graph.n(), input.lambda);
    let a = approx_defense_strategy(&graph, lambda)?;
    if let Some(path) = out {
        write(path, &a.cover.to_lines())?;
    }
    let blocks: Vec<&[usize]> = a.cover.subgraphs().iter().map(|b| b.vertices()).collect();
    let factor = approximation_factor(n, lambda);
    let mut results = json!({
        "n": n,
        "lambda": lambda,
        "cover": blocks,
        "coverage": a.cover.coverage(),
        "block_count": a.cover.len(),
        "block_bound": ratio_str(&block_bound(n, lambda)),
        "strategy": support_entries(&a.strategy),
        "guaranteed": ratio_str(&a.guaranteed),
        "approximation_factor": ratio_str(&factor),
    });
    if with_exact {
        let pstar = maxmin_probability(&graph, lambda, cap)?.pstar;
        let realized = &a.guaranteed * &factor / &pstar;
        results["exact"] = json!({
            "pstar": ratio_str(&pstar),
            "realized_factor": ratio_str(&realized),
            "within_bound": realized >= Rational::from_integer(1.into()),
        });
    }
    Ok(Output {
        digest: digest([bytes.as_slice()]),
        results,
    })
}

fn verify(input: &GraphArgs, profile_path: &str, cap: usize) -> CliResult<Output> {
    let (graph, bytes) = load_graph(&input.graph)?;
    let profile_bytes = read(profile_path)?;
    let text = String::from_utf8(profile_bytes.clone())
        .map_err(|_| CsdError::InvalidStrategy("profile is not UTF-8".into()))?;
    let actions = Arc::new(enumerate_action_set_capped(&graph, input.lambda, cap)?);
    let profile = ProfileDoc::parse(&text)?.into_profile(&actions)?;
    let report = verify_equilibrium_capped(&graph, input.lambda, &profile, cap)?;
    let mut results = json!(report);
    results["k"] = json!(profile.k());
    results["deviation_check"] = json!(pure_deviation_check(&profile)?);
    Ok(Output {
        digest: digest([bytes.as_slice(), profile_bytes.as_slice()]),
        results,
    })
}

fn need(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
}

fn generated(graph: Graph, lambda: usize, name: &str, params: Value) -> CliResult<GeneratedInstance> {
    if lambda == 0 || lambda > graph.n() {
        return Err(CsdError::LambdaOutOfRange { lambda, n: graph.n() }.into());
    }
    let params = params.as_object().expect("object literal").clone().into_iter().collect();
    Ok(GeneratedInstance {
        graph,
        lambda,
        predicted_pstar: None,
        construction: name.into(),
        params,
        threshold: None,
        note: None,
    })
}

fn generate(args: &GenerateArgs, argv: &[String]) -> CliResult<Output> {
    let inst = match args.family {
        Family::Path => path_instance(need(args.n, "n")?, need(args.lambda, "lambda")?)?,
        Family::Cycle => cycle_instance(need(args.n, "n")?, need(args.lambda, "lambda")?)?,
        Family::StarOfLines => gen_star_of_lines(need(args.n, "n")?, need(args.lambda, "lambda")?)?,
        Family::ThreePartition => gen_three_partition_tree(&args.a, need(args.groups, "groups")?)?,
        Family::Fig1 => gen_fig1_graph(),
        Family::RandomTree => {
            let n = need(args.n, "n")?;
            let g = gen_random_tree(n, args.seed)?;
            generated(g, need(args.lambda, "lambda")?, "random-tree", json!({"n": n, "seed": args.seed}))?
        }
        Family::RandomConnected => {
            let (n, m) = (need(args.n, "n")?, need(args.m, "m")?);
            let g = gen_random_connected(n, m, args.seed)?;
            generated(
                g,
                need(args.lambda, "lambda")?,
                "random-connected",
                json!({"n": n, "m": m, "seed": args.seed}),
            )?
        }
    };
    let meta = inst.metadata();
    let meta_path = format!("{}.meta.json", args.out);
    write(&args.out, &inst.graph.to_edge_list())?;
    write(&meta_path, &(serde_json::to_string_pretty(&meta).expect("serializable") + "\n"))?;
    let mut results = meta;
    results["graph_file"] = json!(args.out);
    results["metadata_file"] = json!(meta_path);
    let echo = argv.join("\u{0}");
    Ok(Output {
        digest: digest([echo.as_bytes()]),
        results,
    })
}

fn batch(dir: &str, lambda: Option<usize>, cap: usize) -> CliResult<Output> {
    let entries = std::fs::read_dir(dir).map_err(|source| Failure::Io {
        path: dir.to_string(),
        source,
    })?;
    let mut files: Vec<String> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_none_or(|x| x != "json"))
        .map(|p| p.to_string_lossy().into_owned())
        .collect();
    files.sort();
    let inputs: Vec<(String, Vec<u8>)> = files
        .iter()
        .map(|f| Ok((f.clone(), read(f)?)))
        .collect::<CliResult<_>>()?;
    let rows = par_map(&inputs, |(file, bytes)| batch_row(file, bytes, lambda, cap));
    let mut parts: Vec<&[u8]> = Vec::new();
    for (file, bytes) in &inputs {
        parts.push(file.as_bytes());
        parts.push(bytes);
    }
    let name = |f: &str| Path::new(f).file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let rows: Vec<Value> = rows
        .into_iter()
        .zip(&inputs)
        .map(|(mut row, (file, _))| {
            row["file"] = json!(name(file));
            row
        })
        .collect();
    let solved = rows.iter().filter(|r| r.get("error").is_none()).count();
    Ok(Output {
        digest: digest(parts),
        results: json!({ "files": rows.len(), "solved": solved, "instances": rows }),
    })
}

fn batch_row(file: &str, bytes: &[u8], lambda: Option<usize>, cap: usize) -> Value {
    let run = || -> Result<Value, String> {
        let text = std::str::from_utf8(bytes).map_err(|_| "input is not UTF-8".to_string())?;
        let graph = parse_graph(text).map_err(|e| e.to_string())?;
        let meta: Option<Value> = std::fs::read_to_string(format!("{file}.meta.json"))
            .ok()
            .and_then(|t| serde_json::from_str(&t).ok());
        let lambda = match lambda {
            Some(l) => l,
            None => meta
                .as_ref()
                .and_then(|m| m["lambda"].as_u64())
                .ok_or("no --lambda and no lambda in the metadata sidecar")? as usize,
        };
        let v = maxmin_probability(&graph, lambda, cap).map_err(|e| e.to_string())?;
        let mut row = json!({
            "n": graph.n(),
            "lambda": lambda,
            "pstar": ratio_str(&v.pstar),
            "defense_ratio": ratio_str(&v.pstar.recip()),
            "defense_optimal": v.pstar == Rational::new(lambda.into(), graph.n().into()),
        });
        if let Some(predicted) = meta.as_ref().and_then(|m| m["predicted_pstar"].as_str()) {
            if predicted != "none" {
                row["predicted_pstar"] = json!(predicted);
                row["matches_prediction"] = json!(predicted == ratio_str(&v.pstar));
            }
        }
        Ok(row)
    };
    run().unwrap_or_else(|e| json!({ "error": e }))
}

fn oracle(input: &GraphArgs, iterations: u64, with_exact: bool, cap: usize) -> CliResult<Output> {
    let (graph, bytes) = load_graph(&input.graph)?;
    let actions = enumerate_action_set_capped(&graph, input.lambda, cap)?;
    let fp = fictitious_play(&actions, iterations)?;
    let mut results = json!({
        "n": graph.n(),
        "lambda": input.lambda,
        "theta": actions.theta(),
        "iterations": fp.iterations,
        "lower": fp.lower,
        "upper": fp.upper,
        "estimate": fp.estimate,
    });
    if with_exact {
        let pstar = maxmin_probability(&graph, input.lambda, cap)?.pstar;
        results["pstar"] = json!(ratio_str(&pstar));
        results["error"] = json!((fp.estimate - csd_core::ratio::to_f64(&pstar)).abs());
    }
    Ok(Output {
        digest: digest([bytes.as_slice()]),
        results,
    })
}

fn actions(input: &GraphArgs, out: Option<&str>, cap: usize) -> CliResult<Output> {
    let (graph, bytes) = load_graph(&input.graph)?;
    let actions = enumerate_action_set_capped(&graph, input.lambda, cap)?;
    if let Some(path) = out {
        write(path, &actions.to_lines())?;
    }
    let subgraphs: Vec<&[usize]> = actions.subgraphs().iter().map(|s| s.vertices()).collect();
    Ok(Output {
        digest: digest([bytes.as_slice()]),
        results: json!({
            "n": graph.n(),
            "lambda": input.lambda,
            "theta": actions.theta(),
            "subgraphs": subgraphs,
        }),
    })
}

fn run(cli: &Cli, argv: &[String]) -> CliResult<Output> {
    let cap = cli.theta_cap;
    match &cli.command {
        Command::Solve { input, attackers } => solve(input, *attackers, cap),
        Command::TreeCheck { input, out } => tree_check(input, out.as_deref()),
        Command::Approx { input, with_exact, out } => approx(input, *with_exact, out.as_deref(), cap),
        Command::Verify { input, profile } => verify(input, profile, cap),
        Command::Generate(args) => generate(args, argv),
        Command::Batch { dir, lambda } => batch(dir, *lambda, cap),
        Command::Oracle {
            input,
            iterations,
            with_exact,
        } => oracle(input, *iterations, *with_exact, cap),
        Command::Actions { input, out } => actions(input, out.as_deref(), cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match run(&cli, &argv) {
        Ok(out) => {
            let text = match cli.format {
                Format::Bare => serde_json::to_string_pretty(&out.results),
                Format::Report => serde_json::to_string_pretty(&RunReport {
                    command: argv,
                    version: env!("CARGO_PKG_VERSION"),
                    input_digest: out.digest,
                    results: out.results,
                    timing_ms: start.elapsed().as_secs_f64() * 1e3,
                }),
            };
            let mut stdout = std::io::stdout().lock();
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(stdout, "{}", text.expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}
