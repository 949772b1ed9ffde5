use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::MatchConfig;

use super::{mean, par_seeds, run_match, sample_std, ExperimentError, MatchStats};

/// Creeps per minute regarded as a perfect farm.
pub const BASELINE_CPM: f64 = 10.0;

/// Published figures for the solo experiment, shown next to ours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoloReference {
    pub wins: String,
    pub mean_duration_min: f64,
    pub std_duration_min: f64,
    pub deaths: u32,
}

impl Default for SoloReference {
    fn default() -> Self {
        Self {
            wins: "20/20".into(),
            mean_duration_min: 22.6,
            std_duration_min: 5.0,
            deaths: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoloSummary {
    pub n: usize,
    pub base_seed: u64,
    pub wins: usize,
    pub mean_duration: f64,
    /// Sample standard deviation, 0 for a single match.
    pub std_duration: f64,
    pub total_deaths: u32,
    pub total_safety_violations: u64,
    pub capped: usize,
    pub reference: SoloReference,
    pub matches: Vec<MatchStats>,
}

impl SoloSummary {
    /// Recomputes the aggregates from persisted match records.
    pub fn from_matches(base_seed: u64, matches: Vec<MatchStats>) -> Self {
        let durations: Vec<f64> = matches.iter().map(|m| m.duration).collect();
        Self {
            n: matches.len(),
            base_seed,
            wins: matches.iter().filter(|m| m.agent_won()).count(),
            mean_duration: mean(&durations),
            std_duration: sample_std(&durations).unwrap_or(0.0),
            total_deaths: matches.iter().map(|m| m.deaths).sum(),
            total_safety_violations: matches.iter().map(|m| m.safety_violations).sum(),
            capped: matches.iter().filter(|m| m.winner.is_none()).count(),
            reference: SoloReference::default(),
            matches,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>6}  {:<13}  {:>6}  {:>9}  {:>6}  {:>6}  {:>7}", "seed", "profile", "result", "minutes", "deaths", "lh", "cpm");
        for m in &self.matches {
            let result = match (m.agent_won(), m.winner) {
                (true, _) => "win",
                (false, Some(_)) => "loss",
                (false, None) => "cap",
            };
            let _ = writeln!(
                s,
                "{:>6}  {:<13}  {:>6}  {:>9.2}  {:>6}  {:>6}  {:>7.2}",
                m.seed,
                m.profile,
                result,
                m.duration / 60.0,
                m.deaths,
                m.last_hits,
                m.cpm
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "wins            {}/{}", self.wins, self.n);
        let _ = writeln!(
            s,
            "duration        {:.2} ± {:.2} min",
            self.mean_duration / 60.0,
            self.std_duration / 60.0
        );
        let _ = writeln!(s, "agent deaths    {}", self.total_deaths);
        let _ = writeln!(s, "safety breaches {}", self.total_safety_violations);
        let r = &self.reference;
        let _ = writeln!(
            s,
            "reference       {} wins, {:.1} ± {:.1} min, {} deaths",
            r.wins, r.mean_duration_min, r.std_duration_min, r.deaths
        );
        s
    }
}

pub fn run_solo_win_suite(
    cfg: &MatchConfig,
    n: usize,
    base_seed: u64,
    jobs: Option<usize>,
) -> Result<SoloSummary, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::EmptySuite);
    }
    cfg.validate()?;
    let seeds: Vec<u64> = (0..n as u64).map(|i| base_seed.wrapping_add(i)).collect();
    let matches = par_seeds(&seeds, jobs, |s| run_match(cfg, s))?;
    Ok(SoloSummary::from_matches(base_seed, matches))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmSummary {
    pub mean_cpm: f64,
    /// Absent for a single match.
    pub std_cpm: Option<f64>,
    pub efficiency: f64,
    pub reference_cpm: f64,
    pub reference_efficiency: f64,
}

impl ArmSummary {
    fn new(matches: &[MatchStats], reference_cpm: f64) -> Self {
        let cpm: Vec<f64> = matches.iter().map(|m| m.cpm).collect();
        let mean_cpm = mean(&cpm);
        Self {
            mean_cpm,
            std_cpm: sample_std(&cpm),
            efficiency: mean_cpm / BASELINE_CPM * 100.0,
            reference_cpm,
            reference_efficiency: reference_cpm / BASELINE_CPM * 100.0,
        }
    }
}

/// Seed-paired comparison of farming with and without the creep-health term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationReport {
    pub n_per_arm: usize,
    pub base_seed: u64,
    pub phi_on: Vec<MatchStats>,
    pub phi_off: Vec<MatchStats>,
    pub on: ArmSummary,
    pub off: ArmSummary,
    /// mean_cpm_on / mean_cpm_off.
    pub ratio: f64,
}

impl AblationReport {
    pub fn from_matches(base_seed: u64, phi_on: Vec<MatchStats>, phi_off: Vec<MatchStats>) -> Self {
        let on = ArmSummary::new(&phi_on, 9.224);
        let off = ArmSummary::new(&phi_off, 6.084);
        let ratio = if off.mean_cpm > 0.0 { on.mean_cpm / off.mean_cpm } else { f64::INFINITY };
        Self {
            n_per_arm: phi_on.len(),
            base_seed,
            phi_on,
            phi_off,
            on,
            off,
            ratio,
        }
    }

    /// A run in which neither arm farmed shows nothing and does not pass.
    pub fn meets(&self, min_ratio: f64) -> bool {
        self.on.mean_cpm > 0.0 && self.on.mean_cpm >= min_ratio * self.off.mean_cpm
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<16}  {:>8}  {:>8}  {:>12}  {:>9}  {:>10}", "method", "cpm", "std", "efficiency %", "ref cpm", "ref eff %");
        let _ = writeln!(
            s,
            "{:<16}  {:>8.3}  {:>8}  {:>12.2}  {:>9.3}  {:>10.2}",
            "baseline", BASELINE_CPM, "-", 100.0, BASELINE_CPM, 100.0
        );
        for (name, arm) in [("phi disabled", &self.off), ("phi enabled", &self.on)] {
            let std = arm.std_cpm.map_or("-".to_owned(), |v| format!("{v:.3}"));
            let _ = writeln!(
                s,
                "{:<16}  {:>8.3}  {:>8}  {:>12.2}  {:>9.3}  {:>10.2}",
                name, arm.mean_cpm, std, arm.efficiency, arm.reference_cpm, arm.reference_efficiency
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "matches per arm {}  (seeds {}..{})", self.n_per_arm, self.base_seed, self.base_seed + self.n_per_arm as u64);
        let _ = writeln!(s, "cpm ratio       {:.3}  (reference {:.3})", self.ratio, 9.224 / 6.084);
        s
    }
}

pub fn run_farm_ablation(
    cfg: &MatchConfig,
    n_per_arm: usize,
    base_seed: u64,
    jobs: Option<usize>,
) -> Result<AblationReport, ExperimentError> {
    if n_per_arm == 0 {
        return Err(ExperimentError::EmptySuite);
    }
    cfg.validate()?;
    let mut on = cfg.clone();
    on.agent.influence.phi_enabled = true;
    let mut off = cfg.clone();
    off.agent.influence.phi_enabled = false;
    let seeds: Vec<u64> = (0..n_per_arm as u64).map(|i| base_seed.wrapping_add(i)).collect();
    // both arms in one pool, then split by arm
    let tagged: Vec<(u64, bool)> = seeds.iter().flat_map(|&s| [(s, true), (s, false)]).collect();
    let keys: Vec<u64> = (0..tagged.len() as u64).collect();
    let results = par_seeds(&keys, jobs, |k| {
        let (seed, phi) = tagged[k as usize];
        run_match(if phi { &on } else { &off }, seed).map(|m| (phi, m))
    })?;
    let (a, b): (Vec<_>, Vec<_>) = results.into_iter().partition(|(phi, _)| *phi);
    Ok(AblationReport::from_matches(
        base_seed,
        a.into_iter().map(|(_, m)| m).collect(),
        b.into_iter().map(|(_, m)| m).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::Team;

    fn stats(seed: u64, cpm: f64, minutes: f64, won: bool) -> MatchStats {
        MatchStats {
            seed,
            profile: "ranged-carry".into(),
            winner: won.then_some(Team::Blue),
            agent_team: Team::Blue,
            duration: minutes * 60.0,
            kills: 0,
            deaths: 0,
            assists: 0,
            last_hits: (cpm * minutes).round() as u32,
            cpm,
            replay_hash: String::new(),
            events: 0,
            safety_violations: 0,
            heroes: Vec::new(),
        }
    }

    #[test]
    fn solo_summary_aggregates() {
        let s = SoloSummary::from_matches(1, vec![stats(1, 5.0, 20.0, true), stats(2, 5.0, 30.0, true), stats(3, 1.0, 40.0, false)]);
        assert_eq!((s.n, s.wins, s.capped), (3, 2, 1));
        assert!((s.mean_duration - 1800.0).abs() < 1e-9);
        assert!((s.std_duration - 600.0).abs() < 1e-9);
        let text = s.to_text();
        assert!(text.contains("wins            2/3"));
        assert!(text.contains("cap"));
        assert_eq!(SoloSummary::from_matches(0, vec![stats(0, 1.0, 1.0, true)]).std_duration, 0.0);
    }

    #[test]
    fn ablation_efficiency_and_ratio() {
        let on = vec![stats(1, 9.0, 20.0, true), stats(2, 7.0, 20.0, true)];
        let off = vec![stats(1, 6.0, 20.0, true), stats(2, 6.0, 20.0, true)];
        let r = AblationReport::from_matches(1, on, off);
        assert!((r.on.efficiency - 80.0).abs() < 1e-9);
        assert!((r.off.efficiency - 60.0).abs() < 1e-9);
        assert!((r.ratio - 8.0 / 6.0).abs() < 1e-12);
        assert!(r.meets(1.15));
        assert!(!r.meets(1.4));
        assert!((r.on.reference_efficiency - 92.24).abs() < 1e-9);
        assert!((r.off.reference_efficiency - 60.84).abs() < 1e-9);
        let text = r.to_text();
        for row in ["baseline", "phi disabled", "phi enabled"] {
            assert!(text.contains(row));
        }
    }

    #[test]
    fn single_match_arm_has_no_spread() {
        let r = AblationReport::from_matches(1, vec![stats(1, 3.0, 10.0, true)], vec![stats(1, 0.0, 10.0, true)]);
        assert_eq!(r.on.std_cpm, None);
        assert_eq!(r.ratio, f64::INFINITY);
    }

    #[test]
    fn empty_suites_are_rejected() {
        let cfg = MatchConfig::default();
        assert!(matches!(run_solo_win_suite(&cfg, 0, 1, None), Err(ExperimentError::EmptySuite)));
        assert!(matches!(run_farm_ablation(&cfg, 0, 1, None), Err(ExperimentError::EmptySuite)));
    }

    #[test]
    fn ablation_arms_share_seeds() {
        let mut cfg = MatchConfig::default();
        cfg.time_cap = 30.0;
        let r = run_farm_ablation(&cfg, 2, 7, Some(1)).unwrap();
        let seeds = |v: &[MatchStats]| v.iter().map(|m| m.seed).collect::<Vec<_>>();
        assert_eq!(seeds(&r.phi_on), vec![7, 8]);
        assert_eq!(seeds(&r.phi_off), vec![7, 8]);
    }
}
