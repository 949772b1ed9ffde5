//! Match runner, batch suites and canned scenarios.

mod kiting;
mod reports;
mod runner;
mod scenarios;

pub use kiting::{analyze_duel, duel_config, KitingReport, KitingRules, KitingWindow, KITING_RULES};
pub use reports::{
    run_farm_ablation, run_solo_win_suite, AblationReport, ArmSummary, SoloReference, SoloSummary, BASELINE_CPM,
};
pub use runner::{run_match, run_match_with_replay, HeroRecord, Match, MatchStats};
pub use scenarios::{heatmap_scenario, local_maxima, HeatmapLayer, SCENARIOS};

use thiserror::Error;

use crate::config::ConfigError;
use crate::sim::SimError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("the config has no agent-controlled hero")]
    NoAgent,
    #[error("creeps per minute is undefined for a zero-length match")]
    ZeroDuration,
    #[error("a suite needs at least one match")]
    EmptySuite,
    #[error("unknown scenario `{name}`; expected one of: {}", SCENARIOS.join(", "))]
    UnknownScenario { name: String },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Last hits per minute of play.
pub fn creeps_per_minute(last_hits: u32, duration_secs: f64) -> Result<f64, ExperimentError> {
    if duration_secs.is_nan() || duration_secs <= 0.0 {
        return Err(ExperimentError::ZeroDuration);
    }
    Ok(f64::from(last_hits) / (duration_secs / 60.0))
}

/// Runs `f` over `seeds` on a pool of `jobs` workers (all cores when `None`),
/// returning results in seed order.
pub fn par_seeds<T: Send>(
    seeds: &[u64],
    jobs: Option<usize>,
    f: impl Fn(u64) -> Result<T, ExperimentError> + Sync + Send,
) -> Result<Vec<T>, ExperimentError> {
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| ExperimentError::Pool(e.to_string()))?;
    let mut out: Vec<(u64, T)> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&s| f(s).map(|t| (s, t)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    out.sort_by_key(|(s, _)| *s);
    Ok(out.into_iter().map(|(_, t)| t).collect())
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Sample standard deviation; `None` below two samples.
fn sample_std(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    Some((xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cpm_examples() {
        assert_eq!(creeps_per_minute(100, 600.0).unwrap(), 10.0);
        assert_eq!(creeps_per_minute(0, 600.0).unwrap(), 0.0);
        assert!((creeps_per_minute(230, 22.6 * 60.0).unwrap() - 10.177).abs() < 1e-3);
        assert!(matches!(creeps_per_minute(3, 0.0), Err(ExperimentError::ZeroDuration)));
    }

    #[test]
    fn stats_helpers() {
        assert_eq!(sample_std(&[4.0]), None);
        assert!((sample_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap() - 2.138089935).abs() < 1e-9);
        assert_eq!(mean(&[]), 0.0);
    }

    #[test]
    fn pool_keeps_seed_order() {
        let out = par_seeds(&[5, 1, 3], Some(2), |s| Ok(s * 10)).unwrap();
        assert_eq!(out, vec![10, 30, 50]);
    }
}
