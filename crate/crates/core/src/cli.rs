//! The `lanecraft` command line.
//!
//! Exit codes: 0 on success, 2 for usage or configuration errors, 3 when an
//! `--assert` check fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::MatchConfig;
use crate::experiments::{
    heatmap_scenario, par_seeds, run_farm_ablation, run_match_with_replay, ExperimentError, SoloSummary, SCENARIOS,
};
use crate::grid::{write_csv, write_pgm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ASSERT: i32 = 3;

/// Minimum φ-on to φ-off creep-score ratio checked by `farm-ablation --assert`.
pub const ABLATION_MIN_RATIO: f64 = 1.15;

#[derive(Debug, Parser)]
#[command(name = "lanecraft", version, about = "Influence-map lane agent experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Play one match and write stats.json and replay.jsonl.
    Simulate(Common),
    /// Solo matches without an enemy hero; writes summary.json and summary.txt.
    SoloSuite {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[command(flatten)]
        pool: Pool,
        /// Also write one replay per seed under <out>/replays.
        #[arg(long)]
        replays: bool,
    },
    /// Seed-paired farming runs with the creep-health term on and off.
    FarmAblation {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        pool: Pool,
        /// Exit with status 3 unless φ-on farms at least 1.15× φ-off.
        #[arg(long)]
        assert: bool,
    },
    /// Export a canned influence scene as CSV and PGM.
    Heatmap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scenario: String,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON match config; defaults apply to missing sections.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seed (or first seed of a suite); falls back to the config's seed.
    #[arg(long, env = "LANECRAFT_SEED")]
    pub seed: Option<u64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Override the creep-health term.
    #[arg(long)]
    pub phi: Option<Switch>,
}

#[derive(Debug, Args)]
pub struct Pool {
    /// Worker threads; all cores by default.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Assert(String),
    Io(String),
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Io(e) => Failure::Io(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

/// Parses the process arguments and runs; returns the exit code.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Assert(m)) => {
            let _ = writeln!(err, "assertion failed: {m}");
            EXIT_ASSERT
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn load(common: &Common) -> Result<(MatchConfig, u64), Failure> {
    let mut cfg = match &common.config {
        None => MatchConfig::default(),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            MatchConfig::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
    };
    if let Some(s) = common.phi {
        cfg.agent.influence.phi_enabled = s == Switch::On;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let seed = common.seed.unwrap_or(cfg.seed);
    Ok((cfg, seed))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s.into_bytes()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Cmd::Simulate(common) => {
            let (cfg, seed) = load(&common)?;
            let (stats, replay) = run_match_with_replay(&cfg, seed, Vec::new())?;
            write_file(&common.out.join("stats.json"), &json(&stats))?;
            write_file(&common.out.join("replay.jsonl"), &replay)?;
            let _ = writeln!(
                out,
                "seed {} winner {} after {:.1} min, {} last hits, {} deaths, replay {}",
                stats.seed,
                stats.winner.map_or("none".to_owned(), |t| format!("{t:?}").to_lowercase()),
                stats.duration / 60.0,
                stats.last_hits,
                stats.deaths,
                stats.replay_hash
            );
        }
        Cmd::SoloSuite {
            common,
            n,
            pool,
            replays,
        } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let (cfg, seed) = load(&common)?;
            let seeds: Vec<u64> = (0..n as u64).map(|i| seed.wrapping_add(i)).collect();
            let runs = par_seeds(&seeds, pool.jobs, |s| {
                run_match_with_replay(&cfg, s, Vec::new()).map(|(m, r)| (m, replays.then_some(r)))
            })?;
            let mut matches = Vec::with_capacity(runs.len());
            for (m, replay) in runs {
                if let Some(r) = replay {
                    write_file(&common.out.join("replays").join(format!("seed-{}.jsonl", m.seed)), &r)?;
                }
                matches.push(m);
            }
            let summary = SoloSummary::from_matches(seed, matches);
            let text = summary.to_text();
            write_file(&common.out.join("summary.json"), &json(&summary))?;
            write_file(&common.out.join("summary.txt"), text.as_bytes())?;
            let _ = write!(out, "{text}");
        }
        Cmd::FarmAblation {
            common,
            n,
            pool,
            assert,
        } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let (cfg, seed) = load(&common)?;
            let report = run_farm_ablation(&cfg, n, seed, pool.jobs)?;
            let text = report.to_text();
            write_file(&common.out.join("ablation.json"), &json(&report))?;
            write_file(&common.out.join("ablation.txt"), text.as_bytes())?;
            let _ = write!(out, "{text}");
            if assert && !report.meets(ABLATION_MIN_RATIO) {
                return Err(Failure::Assert(format!(
                    "mean cpm with phi {:.3} < {ABLATION_MIN_RATIO} x {:.3} without",
                    report.on.mean_cpm, report.off.mean_cpm
                )));
            }
        }
        Cmd::Heatmap { common, scenario } => {
            if !SCENARIOS.contains(&scenario.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown scenario `{scenario}`; valid: {}",
                    SCENARIOS.join(", ")
                )));
            }
            let (cfg, _) = load(&common)?;
            let layers = heatmap_scenario(&scenario, &cfg)?;
            let single = layers.len() == 1;
            for layer in layers {
                let stem = if single {
                    scenario.clone()
                } else {
                    format!("{scenario}-{}", layer.name)
                };
                let mut csv = Vec::new();
                let mut pgm = Vec::new();
                write_csv(&layer.grid, &mut csv).expect("in-memory write");
                write_pgm(&layer.grid, &mut pgm).expect("in-memory write");
                write_file(&common.out.join(format!("{stem}.csv")), &csv)?;
                write_file(&common.out.join(format!("{stem}.pgm")), &pgm)?;
                let _ = writeln!(out, "{}", common.out.join(format!("{stem}.{{csv,pgm}}")).display());
            }
        }
    }
    Ok(())
}
