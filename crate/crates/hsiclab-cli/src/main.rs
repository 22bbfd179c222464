//! Command-line entry point: distribution construction, dependence
//! evaluation, feature selection, the elimination inequality, claim
//! verification, and objective-surface export.
//!
//! Exit codes: 0 on success, 1 when a requested check fails, 2 on usage or
//! input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hsiclab::{
    check_elimination_condition, check_theorem1_at, check_theorem2_with, closed_form_objective,
    empirical_hsic, exact_hsic_subset, exact_hsic_weighted, pick_delta, run_all,
    select_continuous, select_subset, CheckOutcome, ContinuousSearchConfig, Dataset, DeltaParams,
    FeatureSubset, FiniteJointDistribution, LqNorm, RadialXKernel, ResponseKernel, VerifyConfig,
    WeightVector,
};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "hsiclab",
    version,
    about = "Exact kernel dependence values on finite distributions, dependence-maximization feature selection, and numerical claim verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and export finite joint distributions
    Dist {
        #[command(subcommand)]
        command: DistCommand,
    },
    /// Evaluate the dependence measure on a distribution file
    Hsic {
        #[command(subcommand)]
        command: HsicCommand,
    },
    /// Select features by maximizing the dependence measure
    Select {
        #[command(subcommand)]
        command: SelectCommand,
    },
    /// Evaluate the weaker-feature elimination inequality
    Condition {
        #[command(subcommand)]
        command: ConditionCommand,
    },
    /// Certify numerical claims and write a structured report
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Export the closed-form objective surface as CSV
    Surface(SurfaceArgs),
}

#[derive(Subcommand)]
enum DistCommand {
    /// Write the planted two-signal law as a distribution JSON file
    MakeCounterexample {
        /// Dominant signal strength in [0, 1]
        #[arg(long)]
        delta1: f64,
        /// Weaker signal strength in [0, delta1]
        #[arg(long)]
        delta2: f64,
        /// Ambient feature dimension (coordinates past the second are zero)
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Output path for the distribution JSON
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct KernelArgs {
    /// Feature kernel: gaussian | laplace | mix:t1:w1,t2:w2,...
    #[arg(long = "kernel-x")]
    kernel_x: RadialXKernel,
    /// Response kernel: product-identity | product-exp | dist-gaussian | dist-laplace
    #[arg(long = "kernel-y")]
    kernel_y: ResponseKernel,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FeatureChoice {
    /// Comma-separated 1-based feature indices, e.g. 1,2 (empty string for the empty set)
    #[arg(long)]
    subset: Option<String>,
    /// Comma-separated per-feature weights, e.g. 1.0,0.5
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum HsicCommand {
    /// Exact value on the distribution itself
    Exact {
        /// Distribution JSON file
        #[arg(long)]
        dist: PathBuf,
        #[command(flatten)]
        kernels: KernelArgs,
        #[command(flatten)]
        features: FeatureChoice,
    },
    /// Plug-in estimate on a sample drawn from the distribution
    Empirical {
        /// Distribution JSON file
        #[arg(long)]
        dist: PathBuf,
        /// Sample size
        #[arg(long)]
        n: usize,
        /// RNG seed (defaults to HSIC_LAB_SEED or 42)
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        kernels: KernelArgs,
        #[command(flatten)]
        features: FeatureChoice,
    },
}

#[derive(Subcommand)]
enum SelectCommand {
    /// Exhaustive search over all feature subsets
    Subset {
        #[arg(long)]
        dist: PathBuf,
        #[command(flatten)]
        kernels: KernelArgs,
    },
    /// Grid plus golden-section search over weights in an lq ball
    Continuous {
        #[arg(long)]
        dist: PathBuf,
        #[command(flatten)]
        kernels: KernelArgs,
        /// Norm order: a number >= 1, or inf
        #[arg(long, default_value = "inf")]
        q: LqNorm,
        /// Ball radius
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Grid points per axis (>= 33)
        #[arg(long, default_value_t = 513)]
        grid: usize,
        /// Golden-section refinement rounds
        #[arg(long, default_value_t = 3)]
        refine: usize,
        /// Weights at or below this magnitude count as zero
        #[arg(long, default_value_t = 1e-9)]
        support_tolerance: f64,
    },
}

#[derive(Subcommand)]
enum ConditionCommand {
    /// Evaluate both sides of the elimination inequality
    Check {
        /// Weight on the dominant feature
        #[arg(long)]
        beta1: f64,
        #[arg(long)]
        delta1: f64,
        #[arg(long)]
        delta2: f64,
        /// Feature kernel
        #[arg(long = "kernel-x")]
        kernel_x: RadialXKernel,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the full certification suite
    All {
        /// Comma-separated feature kernels
        #[arg(long = "kernel-x", default_value = "gaussian,laplace")]
        kernel_x: String,
        /// Comma-separated response kernels
        #[arg(long = "kernel-y", default_value = "product-identity,dist-gaussian")]
        kernel_y: String,
        /// Write the JSON report here (otherwise it goes to stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Grid points per axis for the continuous search
        #[arg(long, default_value_t = 513)]
        grid: usize,
        /// Refinement rounds for the continuous search
        #[arg(long, default_value_t = 3)]
        refine: usize,
        /// Base seed for randomized checks (defaults to HSIC_LAB_SEED or 42)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Certify the subset-selection counterexample
    Theorem1 {
        #[arg(long = "kernel-x", default_value = "gaussian")]
        kernel_x: RadialXKernel,
        #[arg(long = "kernel-y", default_value = "product-identity")]
        kernel_y: ResponseKernel,
        /// Force the dominant signal strength instead of picking one
        #[arg(long, requires = "delta2")]
        delta1: Option<f64>,
        /// Force the weaker signal strength instead of picking one
        #[arg(long, requires = "delta1")]
        delta2: Option<f64>,
    },
    /// Certify the continuous-weight counterexample
    Theorem2 {
        #[arg(long = "kernel-x", default_value = "gaussian")]
        kernel_x: RadialXKernel,
        #[arg(long = "kernel-y", default_value = "product-identity")]
        kernel_y: ResponseKernel,
        /// Norm order: a number >= 1, or inf
        #[arg(long, default_value = "inf")]
        q: LqNorm,
        /// Ball radius
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 513)]
        grid: usize,
        #[arg(long, default_value_t = 3)]
        refine: usize,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    delta1: f64,
    #[arg(long)]
    delta2: f64,
    /// Feature kernel
    #[arg(long = "kernel-x")]
    kernel_x: RadialXKernel,
    /// Grid points per axis over [0, 1] (>= 2)
    #[arg(long)]
    grid: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Dist { command } => run_dist(command),
        Command::Hsic { command } => run_hsic(command),
        Command::Select { command } => run_select(command),
        Command::Condition { command } => run_condition(command),
        Command::Verify { command } => run_verify(command),
        Command::Surface(args) => run_surface(args),
    }
}

fn default_seed() -> u64 {
    std::env::var("HSIC_LAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn read_dist(path: &Path) -> Result<FiniteJointDistribution, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad distribution in {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn parse_subset(text: &str) -> Result<FeatureSubset, String> {
    let indices: Vec<usize> = text
        .split(',')
        .filter(|piece| !piece.trim().is_empty())
        .map(|piece| {
            piece
                .trim()
                .parse()
                .map_err(|_| format!("bad feature index '{piece}'"))
        })
        .collect::<Result<_, _>>()?;
    FeatureSubset::new(indices).map_err(|e| e.to_string())
}

fn parse_weights(text: &str) -> Result<WeightVector, String> {
    let weights: Vec<f64> = text
        .split(',')
        .map(|piece| {
            piece
                .trim()
                .parse()
                .map_err(|_| format!("bad weight '{piece}'"))
        })
        .collect::<Result<_, _>>()?;
    WeightVector::new(weights).map_err(|e| e.to_string())
}

/// Splits a comma-separated kernel list, re-joining `t:w` segments that
/// belong to a `mix:` spelling.
fn parse_kernel_x_list(text: &str) -> Result<Vec<RadialXKernel>, String> {
    let mut spellings: Vec<String> = Vec::new();
    for segment in text.split(',') {
        let segment = segment.trim();
        if segment.is_empty() {
            continue;
        }
        let continues_mixture = spellings
            .last()
            .map(|last| last.starts_with("mix:"))
            .unwrap_or(false)
            && segment.contains(':')
            && !segment.starts_with("mix:");
        if continues_mixture {
            let last = spellings.last_mut().expect("nonempty");
            last.push(',');
            last.push_str(segment);
        } else {
            spellings.push(segment.to_string());
        }
    }
    if spellings.is_empty() {
        return Err("no feature kernels given".into());
    }
    spellings
        .iter()
        .map(|s| s.parse().map_err(|e: hsiclab::Error| e.to_string()))
        .collect()
}

fn parse_kernel_y_list(text: &str) -> Result<Vec<ResponseKernel>, String> {
    let kernels: Vec<ResponseKernel> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|e: hsiclab::Error| e.to_string()))
        .collect::<Result<_, _>>()?;
    if kernels.is_empty() {
        return Err("no response kernels given".into());
    }
    Ok(kernels)
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serialization"));
}

fn run_dist(command: DistCommand) -> Result<ExitCode, String> {
    match command {
        DistCommand::MakeCounterexample {
            delta1,
            delta2,
            p,
            out,
        } => {
            let params = DeltaParams::new(delta1, delta2, p).map_err(|e| e.to_string())?;
            let dist = FiniteJointDistribution::counterexample(&params);
            let text =
                serde_json::to_string_pretty(&dist).map_err(|e| e.to_string())?;
            write_file(&out, &text)?;
            print_json(&json!({
                "out": out.display().to_string(),
                "p": dist.p(),
                "atoms": dist.atoms().len(),
            }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn feature_fields(features: &FeatureChoice) -> Result<(Option<FeatureSubset>, Option<WeightVector>), String> {
    match (&features.subset, &features.weights) {
        (Some(text), None) => Ok((Some(parse_subset(text)?), None)),
        (None, Some(text)) => Ok((None, Some(parse_weights(text)?))),
        _ => unreachable!("clap enforces exactly one"),
    }
}

fn run_hsic(command: HsicCommand) -> Result<ExitCode, String> {
    match command {
        HsicCommand::Exact {
            dist,
            kernels,
            features,
        } => {
            let law = read_dist(&dist)?;
            let (subset, weights) = feature_fields(&features)?;
            let value = match (&subset, &weights) {
                (Some(subset), None) => {
                    exact_hsic_subset(&law, &kernels.kernel_x, &kernels.kernel_y, subset)
                }
                (None, Some(weights)) => {
                    exact_hsic_weighted(&law, &kernels.kernel_x, &kernels.kernel_y, weights)
                }
                _ => unreachable!(),
            }
            .map_err(|e| e.to_string())?;
            let mut output = json!({
                "hsic": value.value,
                "method": "exact",
                "kernel_x": kernels.kernel_x.to_string(),
                "kernel_y": kernels.kernel_y.to_string(),
            });
            attach_feature_fields(&mut output, &subset, &weights);
            print_json(&output);
            Ok(ExitCode::SUCCESS)
        }
        HsicCommand::Empirical {
            dist,
            n,
            seed,
            kernels,
            features,
        } => {
            let law = read_dist(&dist)?;
            let seed = seed.unwrap_or_else(default_seed);
            let data: Dataset = law.sample(n, seed).map_err(|e| e.to_string())?;
            let (subset, weights) = feature_fields(&features)?;
            let weight_vector = match (&subset, &weights) {
                (Some(subset), None) => {
                    WeightVector::indicator(subset, law.p()).map_err(|e| e.to_string())?
                }
                (None, Some(weights)) => weights.clone(),
                _ => unreachable!(),
            };
            let value = empirical_hsic(&data, &kernels.kernel_x, &kernels.kernel_y, &weight_vector)
                .map_err(|e| e.to_string())?;
            let mut output = json!({
                "hsic": value,
                "method": "empirical",
                "n": n,
                "seed": seed,
                "kernel_x": kernels.kernel_x.to_string(),
                "kernel_y": kernels.kernel_y.to_string(),
            });
            attach_feature_fields(&mut output, &subset, &weights);
            print_json(&output);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn attach_feature_fields(
    output: &mut serde_json::Value,
    subset: &Option<FeatureSubset>,
    weights: &Option<WeightVector>,
) {
    let map = output.as_object_mut().expect("object output");
    if let Some(subset) = subset {
        map.insert(
            "subset".into(),
            serde_json::to_value(subset).expect("serialization"),
        );
    }
    if let Some(weights) = weights {
        map.insert(
            "weights".into(),
            serde_json::to_value(weights).expect("serialization"),
        );
    }
}

fn run_select(command: SelectCommand) -> Result<ExitCode, String> {
    match command {
        SelectCommand::Subset { dist, kernels } => {
            let law = read_dist(&dist)?;
            let result = select_subset(&law, &kernels.kernel_x, &kernels.kernel_y)
                .map_err(|e| e.to_string())?;
            let mut output = serde_json::to_value(&result).map_err(|e| e.to_string())?;
            output
                .as_object_mut()
                .expect("object")
                .insert("mode".into(), json!("subset"));
            print_json(&output);
            Ok(ExitCode::SUCCESS)
        }
        SelectCommand::Continuous {
            dist,
            kernels,
            q,
            r,
            grid,
            refine,
            support_tolerance,
        } => {
            let law = read_dist(&dist)?;
            let cfg = ContinuousSearchConfig::new(q, r)
                .and_then(|cfg| cfg.with_grid_points(grid))
                .and_then(|cfg| cfg.with_support_tolerance(support_tolerance))
                .map(|cfg| cfg.with_refine_iterations(refine))
                .map_err(|e| e.to_string())?;
            let result = select_continuous(&law, &kernels.kernel_x, &kernels.kernel_y, &cfg)
                .map_err(|e| e.to_string())?;
            let mut output = serde_json::to_value(&result).map_err(|e| e.to_string())?;
            let map = output.as_object_mut().expect("object");
            map.insert("mode".into(), json!("continuous"));
            map.insert("q".into(), json!(q.to_string()));
            map.insert("r".into(), json!(r));
            print_json(&output);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_condition(command: ConditionCommand) -> Result<ExitCode, String> {
    match command {
        ConditionCommand::Check {
            beta1,
            delta1,
            delta2,
            kernel_x,
        } => {
            let params = DeltaParams::new(delta1, delta2, 2).map_err(|e| e.to_string())?;
            let check = check_elimination_condition(&kernel_x, beta1, &params)
                .map_err(|e| e.to_string())?;
            print_json(&json!({
                "holds": check.holds,
                "lhs": check.lhs,
                "rhs": check.rhs,
                "beta1": beta1,
                "delta1": delta1,
                "delta2": delta2,
                "kernel_x": kernel_x.to_string(),
            }));
            Ok(if check.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn outcome_exit(outcome: &CheckOutcome) -> ExitCode {
    if outcome.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_verify(command: VerifyCommand) -> Result<ExitCode, String> {
    match command {
        VerifyCommand::All {
            kernel_x,
            kernel_y,
            out,
            grid,
            refine,
            seed,
        } => {
            let config = VerifyConfig {
                kernels_x: parse_kernel_x_list(&kernel_x)?,
                kernels_y: parse_kernel_y_list(&kernel_y)?,
                grid_points_per_axis: grid,
                refine_iterations: refine,
                seeds: vec![seed.unwrap_or_else(default_seed)],
                ..VerifyConfig::default()
            };
            let report = run_all(&config).map_err(|e| e.to_string())?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            match &out {
                Some(path) => {
                    write_file(path, &text)?;
                    for outcome in &report.outcomes {
                        let tag = match (outcome.ok(), outcome.expected_fail) {
                            (true, true) => "XFAIL",
                            (true, false) => "PASS",
                            (false, true) => "UNEXPECTED-PASS",
                            (false, false) => "FAIL",
                        };
                        println!("{tag} {}", outcome.name);
                    }
                    println!("report written to {}", path.display());
                }
                None => println!("{text}"),
            }
            Ok(if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        VerifyCommand::Theorem1 {
            kernel_x,
            kernel_y,
            delta1,
            delta2,
        } => {
            let outcome = match (delta1, delta2) {
                (Some(d1), Some(d2)) => {
                    let params = DeltaParams::new(d1, d2, 2).map_err(|e| e.to_string())?;
                    check_theorem1_at(&kernel_x, &kernel_y, &params)
                }
                _ => {
                    let params = pick_delta(&kernel_x, 1.0).map_err(|e| e.to_string())?;
                    check_theorem1_at(&kernel_x, &kernel_y, &params)
                }
            }
            .map_err(|e| e.to_string())?;
            print_json(&serde_json::to_value(&outcome).map_err(|e| e.to_string())?);
            Ok(outcome_exit(&outcome))
        }
        VerifyCommand::Theorem2 {
            kernel_x,
            kernel_y,
            q,
            r,
            grid,
            refine,
        } => {
            let outcome = check_theorem2_with(&kernel_x, &kernel_y, q, r, grid, refine)
                .map_err(|e| e.to_string())?;
            print_json(&serde_json::to_value(&outcome).map_err(|e| e.to_string())?);
            Ok(outcome_exit(&outcome))
        }
    }
}

fn run_surface(args: SurfaceArgs) -> Result<ExitCode, String> {
    if args.grid < 2 {
        return Err(format!("surface grid must be at least 2, got {}", args.grid));
    }
    let params = DeltaParams::new(args.delta1, args.delta2, 2).map_err(|e| e.to_string())?;
    let dist = FiniteJointDistribution::counterexample(&params);
    let ky = ResponseKernel::ProductIdentity;
    let mut csv = String::from("beta1,beta2,objective,hsic\n");
    let steps = args.grid - 1;
    for i in 0..args.grid {
        let b1 = i as f64 / steps as f64;
        for j in 0..args.grid {
            let b2 = j as f64 / steps as f64;
            let objective = closed_form_objective(&params, b1, b2, &args.kernel_x);
            let weights = WeightVector::new(vec![b1, b2]).map_err(|e| e.to_string())?;
            let hsic = exact_hsic_weighted(&dist, &args.kernel_x, &ky, &weights)
                .map_err(|e| e.to_string())?
                .value;
            csv.push_str(&format!("{b1},{b2},{objective},{hsic}\n"));
        }
    }
    write_file(&args.out, &csv)?;
    print_json(&json!({
        "out": args.out.display().to_string(),
        "rows": args.grid * args.grid,
        "kernel_x": args.kernel_x.to_string(),
    }));
    Ok(ExitCode::SUCCESS)
}
