//! Per-feature influence equations and the layered composer that turns a
//! [`FeatureView`] into the agent's tactical [`InfluenceGrid`](crate::grid::InfluenceGrid).
//!
//! Every equation is exposed twice: a scalar form taking the already measured
//! distances (handy for checking against hand evaluation) and a positional form
//! that measures them from a cell center. The positional forms return `None`
//! for cells outside the feature's footprint.

mod compose;

pub use compose::{compose, compose_creeps, compose_into, CreepMixing};

use serde::{Deserialize, Serialize};

use crate::agent::HeroProfile;
use crate::grid::{distance, GridSpec, WorldPos, FORBIDDEN};
use crate::sim::{EntityId, Team};

/// Allied creeps needed inside an enemy tower's range before the agent
/// treats that tower as approachable.
pub const SHIELD_CREEPS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InfluenceTuning {
    /// Replaces the agent's attack range as the hero range in the creep and tower equations.
    pub hero_range_override: Option<f64>,
    pub phi_enabled: bool,
    pub creep_bonus: f64,
    pub ally_tower_margin: f64,
    pub enemy_creep_falloff_enabled: bool,
    pub creep_falloff_extent: f64,
    pub tau_denominator_floor: f64,
}

impl Default for InfluenceTuning {
    fn default() -> Self {
        Self {
            hero_range_override: None,
            phi_enabled: true,
            creep_bonus: 100.0,
            ally_tower_margin: 200.0,
            enemy_creep_falloff_enabled: true,
            creep_falloff_extent: 300.0,
            tau_denominator_floor: 100.0,
        }
    }
}

impl InfluenceTuning {
    /// Returns the names of fields holding out-of-range values.
    pub fn invalid_fields(&self) -> Vec<&'static str> {
        let mut bad = Vec::new();
        if !(self.creep_bonus >= 0.0 && self.creep_bonus.is_finite()) {
            bad.push("creep_bonus");
        }
        if !(self.ally_tower_margin >= 0.0 && self.ally_tower_margin.is_finite()) {
            bad.push("ally_tower_margin");
        }
        if !(self.tau_denominator_floor > 0.0 && self.tau_denominator_floor.is_finite()) {
            bad.push("tau_denominator_floor");
        }
        if !(self.creep_falloff_extent >= 0.0 && self.creep_falloff_extent.is_finite()) {
            bad.push("creep_falloff_extent");
        }
        if matches!(self.hero_range_override, Some(r) if !(r > 0.0 && r.is_finite())) {
            bad.push("hero_range_override");
        }
        bad
    }

    fn falloff(&self) -> Option<f64> {
        self.enemy_creep_falloff_enabled.then_some(self.creep_falloff_extent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggroState {
    Idle,
    PassiveAggro,
    ActiveAggro,
}

/// An enemy tower's attention as seen from the agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerContext {
    pub state: AggroState,
    /// Agent-side creeps inside the tower's range.
    pub alpha: u32,
}

impl TowerContext {
    /// The tower is busy with something else and a creep shield stands in front of it.
    pub fn is_favorable(&self) -> bool {
        self.state != AggroState::ActiveAggro && self.alpha >= SHIELD_CREEPS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TowerView {
    pub id: EntityId,
    pub pos: WorldPos,
    pub hp: f64,
    pub range: f64,
    pub damage: f64,
    pub attack_period: f64,
    pub context: TowerContext,
}

impl TowerView {
    pub fn dps(&self) -> f64 {
        self.damage / self.attack_period
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CreepView {
    pub id: EntityId,
    pub pos: WorldPos,
    pub hp: f64,
    pub max_hp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeroView {
    pub id: EntityId,
    pub pos: WorldPos,
    pub hp: f64,
    pub max_hp: f64,
    pub profile: HeroProfile,
    /// What the hero is currently attacking, if anything.
    pub target: Option<EntityId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentView {
    pub id: EntityId,
    pub team: Team,
    pub pos: WorldPos,
    pub hp: f64,
    pub max_hp: f64,
    pub attack_range: f64,
    pub attack_damage: f64,
    pub attack_period: f64,
    pub windup: f64,
    pub move_speed: f64,
    pub last_attack_time: f64,
    pub attack_lock_until: f64,
    pub profile: HeroProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureView {
    pub id: EntityId,
    pub pos: WorldPos,
    pub hp: f64,
}

/// Immutable snapshot of everything the agent perceives during one decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureView {
    pub agent: AgentView,
    pub agent_base: WorldPos,
    pub enemy_creeps: Vec<CreepView>,
    pub ally_creeps: Vec<CreepView>,
    pub enemy_towers: Vec<TowerView>,
    pub ally_towers: Vec<TowerView>,
    pub enemy_heroes: Vec<HeroView>,
    pub ally_heroes: Vec<HeroView>,
    pub enemy_nexus: Option<StructureView>,
}

impl FeatureView {
    /// A view with the agent alone on the map.
    pub fn solitary(agent: AgentView, agent_base: WorldPos) -> Self {
        Self {
            agent,
            agent_base,
            enemy_creeps: Vec::new(),
            ally_creeps: Vec::new(),
            enemy_towers: Vec::new(),
            ally_towers: Vec::new(),
            enemy_heroes: Vec::new(),
            ally_heroes: Vec::new(),
            enemy_nexus: None,
        }
    }
}

/// Geometry shared by all equations in one composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub base: WorldPos,
    pub hero_range: f64,
    pub delta: f64,
    pub tau_floor: f64,
}

impl Frame {
    pub fn new(view: &FeatureView, spec: &GridSpec, tuning: &InfluenceTuning) -> Self {
        Self {
            base: view.agent_base,
            hero_range: tuning.hero_range_override.unwrap_or(view.agent.attack_range),
            delta: spec.delta(),
            tau_floor: tuning.tau_denominator_floor,
        }
    }
}

/// Base-relative safety ratio: unit-to-base distance over cell-to-base distance.
///
/// The denominator is floored so cells on top of the base stay finite.
pub fn tau(unit_pos: WorldPos, cell_pos: WorldPos, base_pos: WorldPos, floor: f64) -> f64 {
    distance(unit_pos, base_pos) / distance(cell_pos, base_pos).max(floor)
}

/// Radius inside which the tower deals more damage during a walk in and out
/// than the agent has hit points.
pub fn epsilon_radius(tower: &TowerView, agent_hp: f64, agent_move_speed: f64) -> f64 {
    let reach = agent_hp.max(0.0) * agent_move_speed / (2.0 * tower.dps());
    (tower.range - reach).clamp(0.0, tower.range)
}

/// Creep HP term: remaining health in percent, or a flat 100 when disabled.
pub fn phi(hp: f64, max_hp: f64, enabled: bool) -> f64 {
    if enabled && max_hp > 0.0 {
        100.0 * (hp / max_hp).clamp(0.0, 1.0)
    } else {
        100.0
    }
}

/// Enemy tower weight for a cell at `d_pt` from the tower.
#[allow(clippy::too_many_arguments)]
pub fn enemy_tower_weight(
    d_pt: f64,
    tau: f64,
    favorable: bool,
    hero_range: f64,
    delta: f64,
    tower_range: f64,
    epsilon: f64,
) -> f64 {
    if favorable {
        if d_pt < hero_range - delta {
            d_pt
        } else if d_pt <= hero_range {
            tau * d_pt
        } else {
            tower_range - d_pt
        }
    } else if d_pt > epsilon {
        -tower_range
    } else {
        FORBIDDEN
    }
}

pub fn enemy_tower_influence(cell: WorldPos, tower: &TowerView, agent: &AgentView, frame: &Frame) -> Option<f64> {
    let d_pt = distance(cell, tower.pos);
    if d_pt > tower.range {
        return None;
    }
    let favorable = tower.context.is_favorable();
    let t = if favorable {
        tau(tower.pos, cell, frame.base, frame.tau_floor)
    } else {
        1.0
    };
    let eps = if favorable {
        0.0
    } else {
        epsilon_radius(tower, agent.hp, agent.move_speed)
    };
    Some(enemy_tower_weight(d_pt, t, favorable, frame.hero_range, frame.delta, tower.range, eps))
}

/// Enemy creep weight for a cell at `d_pm` from the creep. `falloff` is the
/// extent of the linear tail beyond the hero range, if enabled.
pub fn enemy_creep_weight(
    d_pm: f64,
    tau: f64,
    phi: f64,
    hero_range: f64,
    delta: f64,
    bonus: f64,
    falloff: Option<f64>,
) -> Option<f64> {
    if d_pm < hero_range - delta {
        Some(d_pm)
    } else if d_pm <= hero_range {
        Some(tau * (d_pm + bonus - phi))
    } else {
        match falloff {
            Some(extent) if d_pm <= hero_range + extent => {
                Some((tau * (hero_range + bonus - phi) - (d_pm - hero_range)).max(0.0))
            }
            _ => None,
        }
    }
}

pub fn enemy_creep_influence(cell: WorldPos, creep: &CreepView, frame: &Frame, tuning: &InfluenceTuning) -> Option<f64> {
    let d_pm = distance(cell, creep.pos);
    let reach = frame.hero_range + tuning.falloff().unwrap_or(0.0);
    if d_pm > reach {
        return None;
    }
    let t = tau(creep.pos, cell, frame.base, frame.tau_floor);
    enemy_creep_weight(
        d_pm,
        t,
        phi(creep.hp, creep.max_hp, tuning.phi_enabled),
        frame.hero_range,
        frame.delta,
        tuning.creep_bonus,
        tuning.falloff(),
    )
}

/// Allied tower weight: linear decay from the tower, nothing inside the
/// collision margin or outside the range.
pub fn ally_tower_influence(cell: WorldPos, tower_pos: WorldPos, tower_range: f64, margin: f64) -> Option<f64> {
    let d_pt = distance(cell, tower_pos);
    (d_pt <= tower_range && d_pt > margin).then_some(tower_range - d_pt)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeroEffect {
    /// Overwrite the cell (enemy danger plateau).
    Set(f64),
    /// Add to the cell (allied support).
    Add(f64),
}

impl HeroEffect {
    /// Forbidden cells are left alone.
    pub fn apply(self, prior: f64) -> f64 {
        if prior == FORBIDDEN {
            return prior;
        }
        match self {
            HeroEffect::Set(v) => v,
            HeroEffect::Add(v) => prior + v,
        }
    }
}

pub fn hero_influence(cell: WorldPos, hero_pos: WorldPos, profile: &HeroProfile, hostile: bool) -> Option<HeroEffect> {
    if distance(cell, hero_pos) > profile.effective_range {
        return None;
    }
    Some(if hostile {
        HeroEffect::Set(-profile.tactical_value)
    } else {
        HeroEffect::Add(profile.tactical_value)
    })
}
