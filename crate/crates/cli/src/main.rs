use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use yardcap::demand::ScenarioSource;
use yardcap::fleet::turnover::cohorts;
use yardcap::fleet::{generate_synthetic_fleet, parse_fleet, write_fleet, FitFamily, SynthConfig};
use yardcap::report::{
    build_bundle, diff_bundles, fit_report, hash_file, identify_report, read_bundle,
    summary_bundle, write_bundle, write_json, BenchmarkFile, BundleOptions, InputHash, Provenance,
    ReportBundle,
};
use yardcap::scenario::{
    lng_turnover, run_scenario, LngTurnover, ModelConfig, Portfolio, ScenarioConfig,
    ScenarioInputs, ScenarioName,
};
use yardcap::tanker::VesselType;

/// Shipyard capacity and maritime hydrogen transport scenarios.
#[derive(Parser)]
#[command(name = "yardcap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identify yards able to build large gas carriers and their annual output.
    Identify {
        #[arg(long)]
        fleet: PathBuf,
        /// Model config holding the effort coefficients and yard filters.
        #[arg(long, default_value = "data/model.toml")]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the effort regression of one vessel family.
    Fit {
        #[arg(long)]
        fleet: PathBuf,
        /// membrane_linear or independent_power
        #[arg(long, default_value = "membrane_linear")]
        family: String,
        #[arg(long, default_value = "data/model.toml")]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one scenario, or `all`, and write report bundles.
    Run(RunArgs),
    /// Generate a synthetic fleet CSV from a generator config.
    GenerateFleet {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Model config supplying effort coefficients.
        #[arg(long, default_value = "data/model.toml")]
        model: PathBuf,
    },
    /// Compare two bundle.json files cell by cell.
    ReportDiff {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        rel: f64,
        #[arg(long, default_value_t = 0.0)]
        abs: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Scenario name or `all`.
    name: Option<String>,
    #[arg(long)]
    scenario: Option<String>,
    /// Model config; scenario, demand and reference files are found next to it.
    #[arg(long, default_value = "data/model.toml")]
    config: PathBuf,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// LNG fleet CSV for the turnover figure. Defaults to fleet/reference_fleet.csv
    /// next to the config when present.
    #[arg(long)]
    fleet: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "lh2-only")]
    portfolio: String,
    #[arg(long)]
    small_lnh3: bool,
    /// Comma-separated table and figure ids to write as CSV.
    #[arg(long, value_delimiter = ',')]
    emit: Option<Vec<String>>,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Data(e.into())
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<ExitCode> {
    match cmd {
        Command::Identify { fleet, config, out } => identify(&fleet, &config, out.as_deref()),
        Command::Fit {
            fleet,
            family,
            config,
            out,
        } => fit(&fleet, &family, &config, out.as_deref()),
        Command::Run(args) => run(args),
        Command::GenerateFleet {
            config,
            out,
            seed,
            model,
        } => generate(&config, &out, seed, &model),
        Command::ReportDiff {
            left,
            right,
            rel,
            abs,
        } => report_diff(&left, &right, rel, abs),
    }
}

fn load_model(path: &Path) -> CliResult<ModelConfig> {
    Ok(ModelConfig::load(path)
        .with_context(|| format!("loading model config {}", path.display()))?)
}

fn load_records(path: &Path) -> CliResult<Vec<yardcap::fleet::VesselRecord>> {
    let parsed = parse_fleet(path).with_context(|| format!("reading fleet {}", path.display()))?;
    if !parsed.rejects.is_empty() {
        eprintln!("warning: {} rows rejected", parsed.rejects.len());
        eprint!("{}", parsed.rejects_report());
    }
    Ok(parsed.records)
}

fn create(path: &Path) -> CliResult<fs::File> {
    Ok(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?)
}

fn mkdir(path: &Path) -> CliResult<()> {
    Ok(fs::create_dir_all(path).with_context(|| format!("creating {}", path.display()))?)
}

fn identify(fleet: &Path, config: &Path, out: Option<&Path>) -> CliResult<ExitCode> {
    let model = load_model(config)?;
    let records = load_records(fleet)?;
    if records.is_empty() {
        eprintln!("warning: no vessel records in {}", fleet.display());
    }
    let report = identify_report(
        &records,
        &model.identify,
        model.averaging_window,
        &model.cgt_table()?,
    );
    println!(
        "{} records, {} yards identified, global tanker output {:.0} CGT/yr",
        report.records,
        report.yards.len(),
        report.global_tanker_cgt
    );
    for s in &report.country_shares {
        println!(
            "  {:<4} {:>2} yards {:>12.0} CGT/yr {:>6.2}%",
            s.country,
            s.yards,
            s.tanker_cgt,
            100.0 * s.share
        );
    }
    for (t, v) in &report.totals_by_type {
        println!("  {:<13} {:>12.0} CGT/yr", t.as_str(), v);
    }
    if let Some(dir) = out {
        mkdir(dir)?;
        report.write_yards_csv(create(&dir.join("yards.csv"))?)?;
        report.write_shares_csv(create(&dir.join("country_shares.csv"))?)?;
        write_json(&dir.join("identify.json"), &report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn fit(fleet: &Path, family: &str, config: &Path, out: Option<&Path>) -> CliResult<ExitCode> {
    let family: FitFamily = family
        .parse()
        .map_err(|e: yardcap::Error| Failure::Usage(e.to_string()))?;
    let model = load_model(config)?;
    let records = load_records(fleet)?;
    let report = fit_report(&records, family, &model.cgt_table()?)?;
    let f = &report.fit;
    println!(
        "{:?} fit on {} points: coefficients {} / {}, correlation {:.4}, rmse {:.1}",
        f.model,
        f.n_points,
        f.coeff_slope_or_scale,
        f.coeff_intercept_or_exponent,
        f.correlation,
        report.residuals.rmse
    );
    if let Some(dir) = out {
        mkdir(dir)?;
        write_json(&dir.join("fit.json"), &report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(config: &Path, out: &Path, seed: Option<u64>, model: &Path) -> CliResult<ExitCode> {
    let cfg = SynthConfig::load(config).with_context(|| format!("loading {}", config.display()))?;
    let cgt = load_model(model)?.cgt_table()?;
    let records = generate_synthetic_fleet(&cfg, seed.unwrap_or(cfg.seed), &cgt)?;
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        mkdir(parent)?;
    }
    write_fleet(&records, create(out)?)?;
    println!("{} vessels written to {}", records.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn report_diff(left: &Path, right: &Path, rel: f64, abs: f64) -> CliResult<ExitCode> {
    let read = |p: &Path| -> CliResult<ReportBundle> {
        Ok(read_bundle(p).with_context(|| format!("reading bundle {}", p.display()))?)
    };
    let (l, r) = (read(left)?, read(right)?);
    let d = diff_bundles((&l.tables, &l.figures), (&r.tables, &r.figures), rel, abs);
    for c in &d.differences {
        let show = |v: &Option<yardcap::report::Cell>| {
            v.as_ref().map_or("-".to_string(), |c| c.to_string())
        };
        println!(
            "{}/{}/{}: {} != {}",
            c.table,
            c.row,
            c.column,
            show(&c.left),
            show(&c.right)
        );
    }
    println!(
        "{} cells compared, {} differ",
        d.compared,
        d.differences.len()
    );
    Ok(if d.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn hashed(role: &str, path: &Path) -> CliResult<InputHash> {
    Ok(InputHash {
        role: role.into(),
        path: path.display().to_string(),
        sha256: hash_file(path).with_context(|| format!("hashing {}", path.display()))?,
    })
}

fn run(args: RunArgs) -> CliResult<ExitCode> {
    let name = match (&args.name, &args.scenario) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::Usage(format!(
                "scenario given twice: `{a}` and `{b}`"
            )))
        }
        (Some(n), _) | (None, Some(n)) => n.clone(),
        (None, None) => {
            return Err(Failure::Usage(format!(
                "no scenario given; valid names: {}, all",
                ScenarioName::valid_names()
            )))
        }
    };
    let names: Vec<ScenarioName> = if name == "all" {
        ScenarioName::ALL.to_vec()
    } else {
        vec![name
            .parse()
            .map_err(|e: yardcap::Error| Failure::Usage(e.to_string()))?]
    };
    let portfolio: Portfolio = args
        .portfolio
        .parse()
        .map_err(|e: yardcap::Error| Failure::Usage(e.to_string()))?;

    let model = load_model(&args.config)?;
    let base = args.config.parent().unwrap_or(Path::new(".")).to_path_buf();
    let demand_dir = base.join("demand");
    let mut inputs = ScenarioInputs::from_demand_dir(&demand_dir)
        .with_context(|| format!("loading demand files from {}", demand_dir.display()))?;
    let mut common = vec![hashed("model", &args.config)?];
    let mut demand_files: Vec<PathBuf> = fs::read_dir(&demand_dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    demand_files.sort();
    for p in &demand_files {
        common.push(hashed("demand", p)?);
    }

    let bench_path = base.join("reference").join("benchmarks.toml");
    let benchmarks = if bench_path.exists() {
        common.push(hashed("benchmarks", &bench_path)?);
        Some(BenchmarkFile::load(&bench_path)?)
    } else {
        None
    };

    let fleet_path = args
        .fleet
        .clone()
        .or_else(|| Some(base.join("fleet").join("reference_fleet.csv")).filter(|p| p.exists()));
    let mut turnover: Option<LngTurnover> = None;
    if let Some(p) = &fleet_path {
        common.push(hashed("fleet", p)?);
        let fleet = cohorts(&load_records(p)?, VesselType::Lng);
        let nze = inputs
            .lng
            .get(&ScenarioSource::Nze)
            .ok_or_else(|| anyhow!("no NZE LNG demand series in {}", demand_dir.display()))?;
        turnover = Some(lng_turnover(
            &fleet,
            nze,
            &model.calibration,
            model.lng_base_year,
            *model.window_ends.last().expect("validated"),
            model.lifetime,
            model.tankers.lng.cargo_capacity,
        )?);
        inputs.lng_fleet = Some(fleet);
    }

    let opts = BundleOptions {
        small_lnh3: args.small_lnh3,
        emit: args.emit.clone(),
    };
    let mut bundles = Vec::new();
    for n in names {
        let path = base.join("scenarios").join(format!("{n}.toml"));
        let cfg =
            ScenarioConfig::load(&path).with_context(|| format!("loading {}", path.display()))?;
        let result = run_scenario::<f64>(&cfg, &model, &inputs, portfolio)?;
        let mut prov = Provenance::new(&model, &cfg, portfolio.label());
        prov.seed = args.seed;
        prov.inputs = common.clone();
        prov.inputs.push(hashed("scenario", &path)?);
        let bundle = build_bundle(result, turnover.as_ref(), benchmarks.as_ref(), prov, &opts)?;
        write_bundle(&bundle, &args.out.join(n.as_str()), &opts)?;
        print_summary(&bundle);
        bundles.push(bundle);
    }
    if bundles.len() > 1 {
        let summary = summary_bundle(&bundles, args.small_lnh3);
        let p = summary.write(&args.out.join("summary"), &opts)?;
        println!("summary written to {}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn print_summary(b: &ReportBundle) {
    let r = &b.result;
    let first: Vec<String> = r
        .outcomes
        .iter()
        .take(2)
        .map(|o| {
            let m = o
                .min_lnh3
                .count()
                .map_or("infeasible".to_string(), |n| n.to_string());
            format!("{}: gap {:.2} M m3, min LNH3 {}", o.year, o.gap / 1e6, m)
        })
        .collect();
    let resolve = match &r.bottleneck_all_lh2 {
        None => "no shortage".to_string(),
        Some(iv) => match iv.resolve_year {
            Some(y) => format!("all-LH2 shortage {}-{}", iv.start_year, y),
            None => format!("all-LH2 shortage from {}, unresolved", iv.start_year),
        },
    };
    println!(
        "{}: {}; {}; {} published cells differ",
        r.scenario,
        first.join("; "),
        resolve,
        b.discrepancies.len()
    );
}
