//! The match configuration document.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agent::{AgentConfig, HeroProfile, ProfileTable};
use crate::grid::{GridSpec, WorldPos};
use crate::sim::{MapConfig, SimConfig, StatsConfig, Team, UnitStats, WaveConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("config line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid config fields: {}", .0.join(", "))]
    Invalid(Vec<String>),
}

impl ConfigError {
    pub fn fields(&self) -> &[String] {
        match self {
            ConfigError::Invalid(f) => f,
            ConfigError::Parse { .. } => &[],
        }
    }
}

/// Who issues a hero's commands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Controller {
    /// The influence-map agent.
    Agent,
    /// Walks at the nearest enemy hero and auto-attacks it, standing still
    /// for `commit` seconds after each windup.
    Chaser { commit: f64 },
    /// Never acts.
    Idle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeroSetup {
    pub team: Team,
    pub controller: Controller,
    /// Profile name; when absent one eligible profile is drawn per seed.
    #[serde(default)]
    pub profile: Option<String>,
    /// Replaces `stats.hero` for this hero.
    #[serde(default)]
    pub stats: Option<UnitStats>,
    #[serde(default)]
    pub spawn: Option<WorldPos>,
}

impl HeroSetup {
    pub fn agent(team: Team) -> Self {
        Self {
            team,
            controller: Controller::Agent,
            profile: None,
            stats: None,
            spawn: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub resolution: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { resolution: 100.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchConfig {
    pub map: MapConfig,
    pub stats: StatsConfig,
    pub wave: WaveConfig,
    pub tick_hz: u32,
    pub time_cap: f64,
    pub grid: GridConfig,
    pub agent: AgentConfig,
    pub profiles: ProfileTable,
    pub heroes: Vec<HeroSetup>,
    pub seed: u64,
}

impl Default for MatchConfig {
    /// One agent on the blue side and no enemy hero.
    fn default() -> Self {
        let sim = SimConfig::default();
        Self {
            map: sim.map,
            stats: sim.stats,
            wave: sim.wave,
            tick_hz: sim.tick_hz,
            time_cap: sim.time_cap,
            grid: GridConfig::default(),
            agent: AgentConfig::default(),
            profiles: ProfileTable::archetypes(),
            heroes: vec![HeroSetup::agent(Team::Blue)],
            seed: 0,
        }
    }
}

impl MatchConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config always serializes")
    }

    pub fn sim(&self) -> SimConfig {
        SimConfig {
            map: self.map.clone(),
            stats: self.stats.clone(),
            wave: self.wave.clone(),
            tick_hz: self.tick_hz,
            time_cap: self.time_cap,
        }
    }

    pub fn hero_stats(&self, setup: &HeroSetup) -> UnitStats {
        setup.stats.unwrap_or(self.stats.hero)
    }

    /// Profiles a hero with these stats may be given.
    pub fn eligible_profiles(&self, setup: &HeroSetup) -> Vec<&HeroProfile> {
        let range = self.hero_stats(setup).range;
        self.profiles.iter().filter(|p| p.invalid_fields(range).is_empty()).collect()
    }

    pub fn grid_spec(&self) -> Option<GridSpec> {
        GridSpec::for_map(self.map.bounds(), self.grid.resolution).ok()
    }

    /// Lists every offending field as a dotted path.
    pub fn invalid_fields(&self) -> Vec<String> {
        let mut bad = self.sim().invalid_fields();
        if !(self.grid.resolution.is_finite() && self.grid.resolution > 0.0) || self.grid_spec().is_none() {
            bad.push("grid.resolution".into());
        }
        bad.extend(self.agent.invalid_fields().into_iter().map(|f| format!("agent.{f}")));
        for (i, p) in self.profiles.iter().enumerate() {
            bad.extend(p.invalid_fields(0.0).into_iter().map(|f| format!("profiles[{i}].{f}")));
        }
        if self.heroes.is_empty() {
            bad.push("heroes".into());
        }
        for (i, h) in self.heroes.iter().enumerate() {
            let at = format!("heroes[{i}]");
            if let Some(s) = &h.stats {
                s.check(&format!("{at}.stats"), &mut bad);
            }
            if let Controller::Chaser { commit } = h.controller {
                if !(commit.is_finite() && commit >= 0.0) {
                    bad.push(format!("{at}.controller.commit"));
                }
            }
            match &h.profile {
                Some(name) => match self.profiles.get(name) {
                    None => bad.push(format!("{at}.profile")),
                    Some(p) => {
                        if !p.invalid_fields(self.hero_stats(h).range).is_empty() {
                            bad.push(format!("{at}.profile"));
                        }
                    }
                },
                None => {
                    if self.eligible_profiles(h).is_empty() {
                        bad.push(format!("{at}.profile"));
                    }
                }
            }
            if let Some(p) = h.spawn {
                if !(p.x.is_finite() && p.y.is_finite() && self.map.bounds().contains(p)) {
                    bad.push(format!("{at}.spawn"));
                }
            }
        }
        bad
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = self.invalid_fields();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(bad))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let c = MatchConfig::default();
        assert!(c.invalid_fields().is_empty());
        assert_eq!(MatchConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn sections_are_optional() {
        let c = MatchConfig::from_json(r#"{"seed": 7, "agent": {"influence": {"phi_enabled": false}}}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert!(!c.agent.influence.phi_enabled);
        assert_eq!(c.map, MapConfig::default());
    }

    #[test]
    fn parse_errors_carry_the_line() {
        let err = MatchConfig::from_json("{\n  \"seed\": 1,\n  \"bogus\": 2\n}").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn validation_lists_fields() {
        let mut c = MatchConfig::default();
        c.grid.resolution = 0.0;
        c.agent.im_rate = -1.0;
        c.heroes[0].profile = Some("nobody".into());
        c.heroes.push(HeroSetup {
            team: Team::Red,
            controller: Controller::Chaser { commit: -1.0 },
            profile: Some("melee-bruiser".into()),
            stats: None,
            spawn: Some(WorldPos::new(-5.0, 0.0)),
        });
        assert_eq!(
            c.invalid_fields(),
            vec![
                "grid.resolution",
                "agent.im_rate",
                "heroes[0].profile",
                "heroes[1].controller.commit",
                "heroes[1].profile",
                "heroes[1].spawn",
            ]
        );
    }

    #[test]
    fn melee_profile_needs_melee_stats() {
        let mut c = MatchConfig::default();
        let setup = &c.heroes[0];
        let names: Vec<_> = c.eligible_profiles(setup).iter().map(|p| p.name.clone()).collect();
        assert_eq!(names, vec!["ranged-carry", "mage"]);
        c.heroes[0].stats = Some(UnitStats {
            range: 150.0,
            ..UnitStats::hero()
        });
        assert_eq!(c.eligible_profiles(&c.heroes[0]).len(), 3);
    }
}
