use serde::{Deserialize, Serialize};

use crate::config::{Controller, HeroSetup, MatchConfig};
use crate::grid::WorldPos;
use crate::sim::{EventKind, Team, UnitStats};

use super::{ExperimentError, Match};

/// Thresholds every 10 s window after first contact must meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KitingRules {
    pub window: f64,
    pub window_step: f64,
    pub min_attacks: u32,
    pub min_moves: u32,
    pub separation: f64,
    pub min_separated_fraction: f64,
    pub duration: f64,
}

pub const KITING_RULES: KitingRules = KitingRules {
    window: 10.0,
    window_step: 1.0,
    min_attacks: 3,
    min_moves: 10,
    separation: 200.0,
    min_separated_fraction: 0.8,
    duration: 60.0,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KitingWindow {
    pub start: f64,
    pub attacks: u32,
    pub moves: u32,
    pub separated_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KitingReport {
    pub seed: u64,
    /// First time the pursuer came within the agent's attack range.
    pub contact: Option<f64>,
    pub windows: Vec<KitingWindow>,
    pub agent_deaths: u32,
    pub agent_hp_left: f64,
    pub pursuer_hp_left: f64,
}

impl KitingReport {
    pub fn worst(&self) -> Option<KitingWindow> {
        let min_u = |f: fn(&KitingWindow) -> u32| self.windows.iter().map(f).min();
        Some(KitingWindow {
            start: f64::NAN,
            attacks: min_u(|w| w.attacks)?,
            moves: min_u(|w| w.moves)?,
            separated_fraction: self.windows.iter().map(|w| w.separated_fraction).fold(f64::INFINITY, f64::min),
        })
    }

    pub fn passed(&self) -> bool {
        let r = KITING_RULES;
        self.agent_deaths == 0
            && !self.windows.is_empty()
            && self.windows.iter().all(|w| {
                w.attacks >= r.min_attacks && w.moves >= r.min_moves && w.separated_fraction >= r.min_separated_fraction
            })
    }
}

/// An open lane without creeps or towers: the agent against a melee hero
/// that keeps walking at it and stands still while swinging.
pub fn duel_config() -> MatchConfig {
    let mut cfg = MatchConfig::default();
    cfg.map.width = 32000.0;
    cfg.map.blue_base_x = 31500.0;
    cfg.map.red_base_x = 500.0;
    cfg.map.blue_towers.clear();
    cfg.map.red_towers.clear();
    cfg.wave.melee_count = 0;
    cfg.wave.ranged_count = 0;
    cfg.time_cap = KITING_RULES.duration;
    cfg.heroes = vec![
        HeroSetup {
            team: Team::Blue,
            controller: Controller::Agent,
            profile: Some("ranged-carry".into()),
            stats: None,
            spawn: Some(WorldPos::new(6000.0, 1500.0)),
        },
        HeroSetup {
            team: Team::Red,
            controller: Controller::Chaser { commit: 0.5 },
            profile: Some("melee-bruiser".into()),
            stats: Some(UnitStats {
                hp: 3000.0,
                attack_damage: 50.0,
                attack_period: 1.5,
                windup: 0.5,
                range: 150.0,
                move_speed: 325.0,
                aggro_radius: 0.0,
            }),
            spawn: Some(WorldPos::new(5400.0, 1500.0)),
        },
    ];
    cfg
}

/// Plays a duel and measures the kiting windows from the lead agent's side.
pub fn analyze_duel(cfg: &MatchConfig, seed: u64) -> Result<KitingReport, ExperimentError> {
    let mut m = Match::new(cfg, seed)?;
    let me = m.lead();
    let team = m.world().hero_team(me).expect("lead exists");
    let pursuer = m
        .world()
        .hero_ids()
        .into_iter()
        .find(|&h| m.world().hero_team(h) == Some(team.opponent()));
    let range = m.world().unit(me).map_or(0.0, |u| u.range);
    // per tick: time, attacked, moved, separation
    let mut ticks: Vec<(f64, bool, bool, f64)> = Vec::new();
    let mut contact = None;
    while !m.is_over() {
        let now = m.world().clock();
        let events = m.step()?;
        let attacked = events.iter().any(|e| e.kind == EventKind::Attack && e.actor == Some(me));
        let moved = events.iter().any(|e| e.kind == EventKind::Move && e.actor == Some(me));
        let w = m.world();
        let sep = match (w.unit(me), pursuer.and_then(|p| w.unit(p))) {
            (Some(a), Some(b)) => a.pos.distance(b.pos),
            _ => f64::INFINITY,
        };
        if contact.is_none() && sep <= range {
            contact = Some(now);
        }
        ticks.push((now, attacked, moved, sep));
    }
    let r = KITING_RULES;
    let end = m.world().clock();
    let mut windows = Vec::new();
    if let Some(c) = contact {
        let mut start = c;
        while start + r.window <= end + 1e-9 {
            let inside: Vec<_> = ticks.iter().filter(|t| t.0 >= start - 1e-9 && t.0 < start + r.window - 1e-9).collect();
            let n = inside.len().max(1) as f64;
            windows.push(KitingWindow {
                start,
                attacks: inside.iter().filter(|t| t.1).count() as u32,
                moves: inside.iter().filter(|t| t.2).count() as u32,
                separated_fraction: inside.iter().filter(|t| t.3 >= r.separation).count() as f64 / n,
            });
            start += r.window_step;
        }
    }
    let hp = |id| m.world().unit(id).map_or(0.0, |u| u.hp);
    let agent_hp_left = hp(me);
    let pursuer_hp_left = pursuer.map_or(0.0, hp);
    let (stats, _) = m.finish()?;
    Ok(KitingReport {
        seed,
        contact,
        windows,
        agent_deaths: stats.deaths,
        agent_hp_left,
        pursuer_hp_left,
    })
}
