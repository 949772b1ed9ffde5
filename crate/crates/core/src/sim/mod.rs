//! Deterministic fixed-timestep single-lane world: creep waves, towers with
//! target retention, windup-based auto attacks, bases and victory.
//!
//! One call to [`World::step`] runs the phases in a fixed order: wave spawns,
//! towers, creeps, hero commands, cleanup and respawns, victory check.

mod config;
mod event;
mod world;

pub use config::{MapConfig, SimConfig, StatsConfig, TowerStats, UnitStats, WaveConfig};
pub use event::{reduce_stats, replay_line, Event, EventKind, ReplayHasher};
pub use world::{check_victory, tower_select_target, HeroSpawn, World};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::WorldPos;
use crate::influence::AggroState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntityId(pub u32);

impl std::fmt::Display for EntityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Team {
    Blue,
    Red,
}

impl Team {
    pub fn opponent(self) -> Team {
        match self {
            Team::Blue => Team::Red,
            Team::Red => Team::Blue,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Team::Blue => 0,
            Team::Red => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitKind {
    Hero,
    MeleeCreep,
    RangedCreep,
}

impl UnitKind {
    pub fn is_creep(self) -> bool {
        !matches!(self, UnitKind::Hero)
    }
}

/// Actuator output for one hero and one tick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Move(WorldPos),
    Attack(EntityId),
    Hold,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendingAttack {
    pub target: EntityId,
    pub resolve_at: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub id: EntityId,
    pub team: Team,
    pub kind: UnitKind,
    pub pos: WorldPos,
    pub hp: f64,
    pub max_hp: f64,
    pub attack_damage: f64,
    pub attack_period: f64,
    pub windup: f64,
    pub range: f64,
    pub move_speed: f64,
    pub aggro_radius: f64,
    /// Start time of the latest attack; negative infinity before the first.
    pub last_attack_time: f64,
    pub attack_lock_until: f64,
    /// Current attack intent.
    pub target: Option<EntityId>,
    pub pending: Option<PendingAttack>,
    pub(crate) waypoint: usize,
}

impl Unit {
    pub fn is_alive(&self) -> bool {
        self.hp > 0.0
    }

    pub fn attack_ready(&self, now: f64) -> bool {
        now + TIME_EPS >= self.last_attack_time + self.attack_period
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tower {
    pub id: EntityId,
    pub team: Team,
    pub pos: WorldPos,
    pub hp: f64,
    pub max_hp: f64,
    pub damage: f64,
    pub attack_period: f64,
    pub range: f64,
    pub state: AggroState,
    pub locked_target: Option<EntityId>,
    pub last_attack_time: f64,
    /// Enemies currently in range with the tick they entered, in entry order.
    pub(crate) entries: Vec<(EntityId, u64)>,
}

impl Tower {
    pub fn is_alive(&self) -> bool {
        self.hp > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nexus {
    pub id: EntityId,
    pub team: Team,
    pub pos: WorldPos,
    pub hp: f64,
    pub max_hp: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeroStats {
    pub last_hits: u32,
    pub kills: u32,
    pub deaths: u32,
    pub assists: u32,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid simulation config: {}", .0.join(", "))]
    InvalidConfig(Vec<String>),
}

pub(crate) const TIME_EPS: f64 = 1e-9;
