//! `daga`: run experiments from TOML configs, reproduce runs from manifests,
//! compare result tables and regenerate the analysis artifacts.
//!
//! Flag values override the config file, which overrides built-in defaults.
//! Exit codes: 0 success, 1 I/O or input error, 2 configuration error,
//! 3 numeric failure.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use daga::analysis::{self, tsv, StructureDemo, SweepConfig};
use daga::experiment::{self, ExperimentConfig, RunManifest, MANIFEST_FILE, RESULTS_FILE, WORKERS_ENV};
use daga::ingestion::read_csv;
use daga::problems::lookup_pattern;
use daga::problems::{box_pattern, cross_pattern};
use daga::{Error, RandomSource};

#[derive(Parser)]
#[command(name = "daga", version, about = "Denoising-autoencoder GA experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write results, summary and manifest.
    Run(RunArgs),
    /// Rerun the experiment recorded in a manifest.
    Reproduce {
        manifest: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
    },
    /// Check configs and report every problem found.
    ValidateConfig { configs: Vec<PathBuf> },
    /// Rank-sum comparison of two results.csv files on the same problem.
    Compare { a: PathBuf, b: PathBuf },
    #[command(subcommand)]
    Analyze(Analysis),
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    base_seed: Option<u64>,
    /// Output directory; defaults to the config's `output`, then `runs/<name>`.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    max_evaluations: Option<u64>,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Analysis {
    /// Transition matrix of a 6-bit network trained on three genomes.
    Fig1a {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, default_value = "artifacts")]
        output: PathBuf,
    },
    /// Offspring distance to the MaxOnes optimum across corruption rates.
    Fig1b {
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7,0.9")]
        rates: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        base_seed: u64,
        #[arg(short, long, default_value = "artifacts")]
        output: PathBuf,
    },
    /// Speedup on a third pattern after solving two others with the same network.
    Transfer {
        #[arg(long, default_value = "box")]
        first: String,
        #[arg(long, default_value = "cross")]
        second: String,
        /// Third pattern; defaults to the second. Quadrant splices are
        /// named `<first>-<second>-<4-bit mask>`.
        #[arg(long)]
        third: Option<String>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        base_seed: u64,
        #[arg(long)]
        max_evaluations: Option<u64>,
        #[arg(short, long, default_value = "artifacts")]
        output: PathBuf,
    },
}

fn workers(flag: Option<usize>) -> usize {
    flag.filter(|&n| n > 0).unwrap_or_else(experiment::default_workers)
}

fn create(dir: &Path, name: &str) -> daga::Result<BufWriter<File>> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    eprintln!("writing {}", path.display());
    Ok(BufWriter::new(File::create(path)?))
}

fn run(args: RunArgs) -> daga::Result<()> {
    let (mut cfg, base) = ExperimentConfig::load(&args.config)?;
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.base_seed {
        cfg.base_seed = s;
    }
    if let Some(m) = args.max_evaluations {
        match (&mut cfg.daga, &mut cfg.ga, &mut cfg.es) {
            (Some(c), _, _) => c.max_evaluations = m,
            (_, Some(c), _) => c.max_evaluations = m,
            (_, _, Some(c)) => c.max_evaluations = m,
            _ => {}
        }
    }
    let out_dir = args
        .output
        .or_else(|| cfg.output.as_ref().map(|o| base.join(o)))
        .unwrap_or_else(|| Path::new("runs").join(&cfg.name));
    let outcome = experiment::run_experiment(&cfg, &base, workers(args.workers))?;
    outcome.write_to(&out_dir)?;
    print_summary(&outcome.summary);
    eprintln!("wrote {}", out_dir.display());
    Ok(())
}

fn print_summary(s: &experiment::Summary) {
    println!(
        "{} {}: best {} / {} / {:.4} ± {:.4} (min/max/mean), evals {:.1} ± {:.1}, success {:.0}%",
        s.problem,
        s.algorithm,
        s.min,
        s.max,
        s.mean,
        s.std,
        s.mean_evals,
        s.std_evals,
        100.0 * s.success_rate
    );
}

fn reproduce(manifest: &Path, output: Option<PathBuf>, w: Option<usize>) -> daga::Result<()> {
    let m = RunManifest::from_toml(&std::fs::read_to_string(manifest)?)?;
    let outcome = experiment::rerun_manifest(&m, workers(w))?;
    let dir = output.unwrap_or_else(|| manifest.parent().unwrap_or(Path::new(".")).join("reproduced"));
    outcome.write_to(&dir)?;
    print_summary(&outcome.summary);
    let original = manifest.with_file_name(RESULTS_FILE);
    if let Ok(previous) = std::fs::read(&original) {
        if previous == outcome.results_csv()? {
            println!("results identical to {}", original.display());
        } else {
            return Err(Error::InvalidInput(format!("results differ from {}", original.display())));
        }
    }
    eprintln!("wrote {} (manifest {})", dir.display(), dir.join(MANIFEST_FILE).display());
    Ok(())
}

fn validate(configs: &[PathBuf]) -> daga::Result<()> {
    let mut failed = Vec::new();
    for path in configs {
        match ExperimentConfig::load(path).and_then(|(cfg, base)| cfg.validate(&base)) {
            Ok(()) => println!("{}: ok", path.display()),
            Err(e) => {
                println!("{}: {e}", path.display());
                failed.push(path.display().to_string());
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{} of {} configs invalid", failed.len(), configs.len())))
    }
}

fn compare(a: &Path, b: &Path) -> daga::Result<()> {
    let ra = read_csv(File::open(a)?)?;
    let rb = read_csv(File::open(b)?)?;
    print!("{}", experiment::compare(&ra, &rb)?.render());
    Ok(())
}

fn analyze(which: Analysis) -> daga::Result<()> {
    match which {
        Analysis::Fig1a { seed, output } => {
            let demo = StructureDemo::default();
            let net = demo.train(&mut RandomSource::new(seed))?;
            let m = analysis::build_transition_matrix(&net)?;
            tsv::write_transition_tsv(&m, create(&output, &tsv::artifact_name("fig1a", seed, "transition"))?)?;
            tsv::write_marginal_tsv(&m, create(&output, &tsv::artifact_name("fig1a", seed, "marginal"))?)?;
            let mut top = m.top_marginal(3);
            top.sort();
            println!("three most probable outputs (by index): {top:?}");
        }
        Analysis::Fig1b { rates, seeds, base_seed, output } => {
            let seeds: Vec<u64> = (0..seeds).map(|s| base_seed + s).collect();
            let rows = analysis::corruption_sweep(&rates, &seeds, &SweepConfig::default())?;
            tsv::write_sweep_tsv(&rows, create(&output, &tsv::artifact_name("fig1b", base_seed, "histogram"))?)?;
            tsv::write_sweep_summary_tsv(&rows, create(&output, &tsv::artifact_name("fig1b", base_seed, "summary"))?)?;
            for r in &rows {
                println!("rate {:.2}: mean distance {:.3}", r.rate, r.mean_distance);
            }
        }
        Analysis::Transfer { first, second, third, trials, base_seed, max_evaluations, output } => {
            let library = [box_pattern(), cross_pattern()];
            let third = third.unwrap_or_else(|| second.clone());
            let sequence = [
                lookup_pattern(&library, &first)?,
                lookup_pattern(&library, &second)?,
                lookup_pattern(&library, &third)?,
            ];
            let mut cfg = analysis::transfer_config();
            if let Some(m) = max_evaluations {
                cfg.max_evaluations = m;
            }
            let out = analysis::transfer_experiment(&sequence, &cfg, trials, base_seed)?;
            let tag = format!("transfer-{first}-{second}-{third}");
            tsv::write_speedup_tsv(std::slice::from_ref(&out.record), create(&output, &tsv::artifact_name(&tag, base_seed, "speedup"))?)?;
            tsv::write_dumps_tsv(&out.dumps, create(&output, &tsv::artifact_name(&tag, base_seed, "decoder"))?)?;
            let r = &out.record;
            println!(
                "{} -> {} -> {}: fresh {:.1} gens, pretrained {:.1} gens, speedup {:.1}, p {}",
                r.first,
                r.second,
                r.third_pattern,
                r.mean_iterations_fresh,
                r.mean_iterations_pretrained,
                r.speedup,
                r.p_value.map_or("n/a".to_string(), |p| format!("{p:.4}"))
            );
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        e if e.is_config() => ExitCode::from(2),
        Error::Numeric(_) => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Reproduce { manifest, output, workers } => reproduce(&manifest, output, workers),
        Command::ValidateConfig { configs } => validate(&configs),
        Command::Compare { a, b } => compare(&a, &b),
        Command::Analyze(which) => analyze(which),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
