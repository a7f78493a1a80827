//! Command-line front end for the `mstd` library. Every command produces a
//! single JSON [`ReportEnvelope`]; `search --format jsonl` additionally
//! supports one JSON record per line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mstd::constructions::{catalog, ConstructionSpec, Family, CATALOG_NAMES};
use mstd::fringe::{assemble_ajk, estimate_cjk, verify_target, DeficiencyTarget, Fill, FringePair};
use mstd::modular::{good_reduction_search, reduction_report, replicate};
use mstd::search::{enumerate_mstd, mstd_density, DensityMode, SearchConfig, DEFAULT_VISIT_CAP};
use mstd::{canonical_form, profile, symmetry_report, IntSet, MstdError};

pub mod regression;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] MstdError),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("cannot read manifest {path}: {source}")]
    ManifestIo {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed manifest: {0}")]
    Manifest(String),
    #[error("{0}")]
    Output(#[from] std::io::Error),
    #[error("{failed} of {total} regression records failed")]
    Regression { failed: usize, total: usize },
}

impl CliError {
    /// 2 for bad input, 3 for an exceeded resource cap, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(MstdError::ResourceCap(_)) => 3,
            CliError::Core(_)
            | CliError::Usage(_)
            | CliError::Manifest(_)
            | CliError::ManifestIo { .. } => 2,
            CliError::Output(_) | CliError::Regression { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "mstd", version, about = "Sum-dominant (MSTD) set toolkit")]
pub struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Sizes of A+A and A-A, missing elements, symmetry and canonical form.
    Analyze(SetArgs),
    /// Build a set from a parametric family or from existing sets.
    Construct(ConstructArgs),
    /// Reduction modulo n, or a scan for good reductions.
    Reduce(ReduceArgs),
    /// Glue translates A + in for i < t.
    Replicate(ReplicateArgs),
    /// Exhaustive bounded-diameter MSTD classification.
    Search(SearchArgs),
    /// Fraction of subsets of {0..n} that are MSTD.
    Density(DensityArgs),
    /// Sets in [0, n] with j missing sums and k missing positive differences.
    Theorem8(FringeArgs),
    /// List the named example sets.
    Catalog(CatalogArgs),
    /// Run a manifest of expected-value records.
    Regression(RegressionArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Construct(_) => "construct",
            Command::Reduce(_) => "reduce",
            Command::Replicate(_) => "replicate",
            Command::Search(_) => "search",
            Command::Density(_) => "density",
            Command::Theorem8(_) => "theorem8",
            Command::Catalog(_) => "catalog",
            Command::Regression(_) => "regression",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct SetArgs {
    /// Comma-separated non-negative integers, e.g. "0,2,3,4,7,11,12,14".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    /// Catalog name such as A_1 or S4_X.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
}

impl SetArgs {
    fn resolve(&self) -> Result<IntSet> {
        match (&self.set, &self.catalog) {
            (Some(s), None) => Ok(s.parse()?),
            (None, Some(name)) => Ok(catalog(name)?),
            _ => Err(CliError::Usage(
                "give exactly one of --set, --catalog".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstructArgs {
    /// T2..T6, base-expand, product-embed or catalog.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<i64>,
    /// Number of digits for base expansion.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    /// Base for base expansion.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    /// Catalog set used as the (first) operand, or the name for `catalog`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    /// Explicit operand sets; repeat for product embedding.
    #[arg(long = "set")]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReduceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: SetArgs,
    /// Modulus; omit to scan for good reductions.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Upper end of the scan (default 2 max(A) + 1).
    #[arg(long, conflicts_with = "n")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReplicateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: SetArgs,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 2)]
    pub t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Jsonl,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub max_diameter: u64,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep_threshold: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_VISIT_CAP)]
    pub visit_cap: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "MSTD_WORKERS", default_value_t = 0)]
    #[serde(skip)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    #[serde(skip)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(
        long,
        required_unless_present = "exhaustive",
        conflicts_with = "exhaustive"
    )]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "MSTD_WORKERS", default_value_t = 0)]
    #[serde(skip)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FillArg {
    Full,
    Random,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FringeArgs {
    #[arg(long)]
    pub j: u32,
    #[arg(long)]
    pub k: u32,
    /// Ambient maximum (default: the smallest admissible n).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value_t = FillArg::Full)]
    pub fill: FillArg,
    /// Also estimate the hit rate of random middles from this many samples.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CatalogArgs {
    /// Show only this set.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RegressionArgs {
    #[arg(long)]
    pub manifest: std::path::PathBuf,
}

/// The single JSON document written by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn set_profile(a: &IntSet) -> Value {
    let p = profile(a);
    let mut v = json!({
        "set": a,
        "size": p.set_size,
        "sum": p.sum_size,
        "diff": p.diff_size,
        "delta": p.delta,
        "mstd": p.is_mstd,
    });
    if let Some(f) = p.f_ratio {
        v["f_ratio"] = json!(round12(f));
    }
    v
}

fn analyze(a: &IntSet) -> Value {
    let p = profile(a);
    let sym = symmetry_report(a);
    let mut v = set_profile(a);
    v["missing_sums"] = json!(p.missing_sums);
    v["missing_diffs"] = json!(p.missing_diffs);
    v["canonical"] = json!(canonical_form(a));
    v["symmetric"] = json!(sym.is_symmetric);
    v["s_value"] = json!(sym.s_value);
    v["symmetric_subset"] = json!(sym.witness_subset);
    v
}

fn construct(args: &ConstructArgs) -> Result<Value> {
    let family: Family = args.family.parse()?;
    let mut spec = ConstructionSpec::new(family);
    let params = [
        ("n", args.n),
        ("k", args.k),
        ("d", args.d),
        ("l", args.l),
        ("t", args.t),
        ("m", args.m),
        ("lambda", args.lambda),
        ("mu", args.mu),
    ];
    for (key, value) in params {
        if let Some(v) = value {
            spec = spec.param(key, v);
        }
    }
    if let Some(name) = &args.catalog {
        spec = spec.catalog_name(name);
    }
    for s in &args.sets {
        spec = spec.operand(s.parse()?);
    }
    let r = spec.build()?;
    let mut v = serde_json::to_value(&r).expect("construction results serialize");
    v["profile"] = set_profile(&r.primary_set);
    if let Some(c) = &r.companion_set {
        v["companion_profile"] = set_profile(c);
    }
    Ok(v)
}

fn reduce(args: &ReduceArgs) -> Result<Value> {
    let a = args.input.resolve()?;
    Ok(match args.n {
        Some(n) => serde_json::to_value(reduction_report(&a, n)?).expect("serializable"),
        None => {
            let reports = good_reduction_search(&a, args.n_max)?;
            json!({ "good_reductions": reports })
        }
    })
}

fn search_config(args: &SearchArgs) -> SearchConfig {
    let mut cfg = SearchConfig::new(args.size, args.max_diameter)
        .workers(args.workers)
        .visit_cap(args.visit_cap);
    cfg.rep_threshold = args.rep_threshold;
    cfg
}

/// One record per representative, as emitted by `--format jsonl`.
pub fn search_records(args: &SearchArgs) -> Result<(Vec<Value>, u64)> {
    let out = enumerate_mstd(&search_config(args))?;
    let recs = out.canonical_reps.iter().map(set_profile).collect();
    Ok((recs, out.enumerated_count))
}

fn search(args: &SearchArgs) -> Result<Value> {
    let (reps, visited) = search_records(args)?;
    Ok(json!({
        "count": reps.len(),
        "enumerated_count": visited,
        "reps": reps,
    }))
}

fn density(args: &DensityArgs) -> Result<Value> {
    let mode = match (args.exhaustive, args.samples) {
        (true, _) => DensityMode::Exhaustive,
        (false, Some(s)) => DensityMode::Samples(s),
        (false, None) => return Err(CliError::Usage("need --samples or --exhaustive".into())),
    };
    let est = mstd_density(args.n, mode, args.seed, args.workers)?;
    Ok(serde_json::to_value(est).expect("serializable"))
}

fn theorem8(args: &FringeArgs) -> Result<Value> {
    let pair = FringePair::new(args.j, args.k)?;
    let n = args.n.unwrap_or(pair.min_n);
    let target = DeficiencyTarget::new(args.j, args.k, n);
    let fill = match args.fill {
        FillArg::Full => Fill::Full,
        FillArg::Random => Fill::random(args.seed),
    };
    let a = assemble_ajk(target, fill)?;
    let cert = verify_target(&a, target)?;
    let mut v = json!({
        "n": n,
        "case": pair.case_tag,
        "set": a,
        "sum": cert.sum_size,
        "diff": cert.diff_size,
        "missing_sums": cert.missing_sums,
        "missing_diffs": cert.missing_diffs,
        "verified": cert.verified,
    });
    if let Some(samples) = args.samples {
        v["estimate"] =
            serde_json::to_value(estimate_cjk(target, samples, args.seed)?).expect("serializable");
    }
    Ok(v)
}

fn catalog_listing(args: &CatalogArgs) -> Result<Value> {
    let names: Vec<&str> = match &args.name {
        Some(n) => vec![mstd::constructions::catalog_key(n)
            .ok_or_else(|| MstdError::UnknownCatalog(n.clone()))?],
        None => CATALOG_NAMES.to_vec(),
    };
    let entries: Vec<Value> = names
        .into_iter()
        .map(|n| {
            let mut v = set_profile(&catalog(n).expect("listed names resolve"));
            v["name"] = json!(n);
            v
        })
        .collect();
    Ok(json!({ "sets": entries }))
}

fn is_stochastic(cmd: &Command) -> Option<u64> {
    match cmd {
        Command::Density(a) if !a.exhaustive => Some(a.seed),
        Command::Theorem8(a) if a.fill == FillArg::Random || a.samples.is_some() => Some(a.seed),
        _ => None,
    }
}

/// Runs one command and wraps its payload.
pub fn run(cmd: &Command) -> Result<ReportEnvelope> {
    let result = match cmd {
        Command::Analyze(a) => analyze(&a.resolve()?),
        Command::Construct(a) => construct(a)?,
        Command::Reduce(a) => reduce(a)?,
        Command::Replicate(a) => set_profile(&replicate(&a.input.resolve()?, a.n, a.t)?),
        Command::Search(a) => search(a)?,
        Command::Density(a) => density(a)?,
        Command::Theorem8(a) => theorem8(a)?,
        Command::Catalog(a) => catalog_listing(a)?,
        Command::Regression(a) => {
            serde_json::to_value(regression::run_manifest(&a.manifest)?).expect("serializable")
        }
    };
    let mut input = serde_json::to_value(cmd).expect("arguments serialize");
    if let Some(obj) = input.as_object_mut() {
        obj.remove("command");
    }
    Ok(ReportEnvelope {
        command: cmd.name().to_string(),
        input,
        result,
        version: VERSION.to_string(),
        seed: is_stochastic(cmd),
    })
}

/// The error to exit with for a completed report, if any: a regression run
/// with failing records.
pub fn report_failure(env: &ReportEnvelope) -> Option<CliError> {
    if env.command != "regression" {
        return None;
    }
    let failed = env.result["failures"].as_array().map_or(0, Vec::len);
    let total = env.result["records"].as_u64().unwrap_or(0) as usize;
    (failed > 0).then_some(CliError::Regression { failed, total })
}

/// Parses `argv` (including the program name) and runs it.
pub fn run_args<I, T>(argv: I) -> Result<ReportEnvelope>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli.command)
}
