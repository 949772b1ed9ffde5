//! Two-layer hero controller: influence-map navigation picks where to stand,
//! the target selector and orbwalker decide when to attack and when to move.

mod observe;
mod profile;

pub use observe::{agent_view_for, observe};
pub use profile::{HeroProfile, ProfileTable};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{GridSpec, InfluenceGrid, WorldPos, FORBIDDEN};
use crate::influence::{compose_into, FeatureView, InfluenceTuning, SHIELD_CREEPS};
use crate::sim::{Command, EntityId};

const TIME_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AgentError {
    #[error("duplicate hero profile `{0}`")]
    DuplicateProfile(String),
    #[error("invalid hero profile table: {0}")]
    ProfileJson(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgentConfig {
    pub influence: InfluenceTuning,
    /// Command round-trip delay in seconds.
    pub latency: f64,
    /// Extra lock after the windup for turning towards the target; the simulator has no facing.
    pub turn_time: f64,
    /// Grid recomputations per second.
    pub im_rate: f64,
    /// Seconds of movement covered by the local best-point search.
    pub decision_horizon: f64,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            influence: InfluenceTuning::default(),
            latency: 0.05,
            turn_time: 0.0,
            im_rate: 10.0,
            decision_horizon: 1.0,
        }
    }
}

impl AgentConfig {
    pub fn invalid_fields(&self) -> Vec<String> {
        let mut bad: Vec<String> = self.influence.invalid_fields().into_iter().map(|f| format!("influence.{f}")).collect();
        let nonneg = |v: f64| v.is_finite() && v >= 0.0;
        if !nonneg(self.latency) {
            bad.push("latency".into());
        }
        if !nonneg(self.turn_time) {
            bad.push("turn_time".into());
        }
        if !(self.im_rate.is_finite() && self.im_rate > 0.0) {
            bad.push("im_rate".into());
        }
        if !(self.decision_horizon.is_finite() && self.decision_horizon > 0.0) {
            bad.push("decision_horizon".into());
        }
        bad
    }
}

/// Per-hero controller memory.
#[derive(Debug, Clone)]
pub struct AgentState {
    pub hero_id: EntityId,
    pub tuning: InfluenceTuning,
    pub latency: f64,
    pub turn_time: f64,
    pub im_rate: f64,
    pub decision_horizon: f64,
    pub grid: InfluenceGrid,
    /// Time of the latest grid recomposition.
    pub last_compose: Option<f64>,
    pub nav_target: Option<WorldPos>,
    pub current_target: Option<EntityId>,
}

impl AgentState {
    pub fn new(hero_id: EntityId, config: &AgentConfig, spec: GridSpec) -> Self {
        Self {
            hero_id,
            tuning: config.influence.clone(),
            latency: config.latency,
            turn_time: config.turn_time,
            im_rate: config.im_rate,
            decision_horizon: config.decision_horizon,
            grid: InfluenceGrid::new(spec),
            last_compose: None,
            nav_target: None,
            current_target: None,
        }
    }

    fn grid_due(&self, now: f64) -> bool {
        self.last_compose.is_none_or(|t| now + TIME_EPS >= t + 1.0 / self.im_rate)
    }
}

/// Where the hero should walk next.
///
/// The local best cell within one decision horizon of movement wins, except
/// that a hero in negative territory escapes towards its base, and the best
/// cell further up the lane (further from the own base than the hero) pulls
/// the hero along the straight path there while that path stays non-negative.
/// The pull applies when that cell beats the local best, or when nothing is in
/// attack range and the cell is positive.
/// Cells more than one grid cell past the ally front (see [`ally_front`]) are
/// never chosen, so the hero stays behind its own creeps.
pub fn navigate(view: &FeatureView, grid: &InfluenceGrid, agent: &AgentState) -> WorldPos {
    let spec = grid.spec();
    let here = view.agent.pos;
    let base = view.agent_base;
    let radius = view.agent.move_speed * agent.decision_horizon;
    let front = ally_front(view);
    let behind = |c: WorldPos| front.is_none_or(|f| c.distance(base) <= f + spec.resolution);
    let center = |i: usize| {
        let c = spec.unflat(i);
        spec.center_unchecked(c.col, c.row)
    };

    let mut best: Option<(f64, f64, usize)> = None;
    grid.for_each_candidate(here, radius, |i, d, v| {
        if behind(center(i)) && best.is_none_or(|(bv, bd, bi)| v > bv || (v == bv && (d < bd || (d == bd && i < bi)))) {
            best = Some((v, d, i));
        }
    });
    let Some((best_value, _, best)) = best else {
        // nothing within reach behind the front: fall back
        return escape(grid, here, radius, base, false)
            .unwrap_or_else(|| center(spec.flat(spec.world_to_cell(here))));
    };
    let local = center(best);
    if best_value < 0.0 {
        return escape(grid, here, radius, base, best_value == FORBIDDEN).unwrap_or(local);
    }

    let home = here.distance(base);
    let Some(far) = grid.argmax_where(here, |c| c.distance(base) > home && behind(c)) else {
        return local;
    };
    let idle = !enemy_in_range(view);
    let far_value = grid.get(far);
    if far_value <= best_value && !(idle && far_value > 0.0) {
        return local;
    }
    let goal = spec.center_unchecked(far.col, far.row);
    // walk the straight segment and stop before the first negative cell
    let step = spec.resolution / 2.0;
    let len = here.distance(goal);
    let n = (len / step).ceil().max(1.0) as usize;
    let mut reach = here;
    for k in 1..=n {
        let p = here.step_towards(goal, len * k as f64 / n as f64);
        if grid.value_at(p) < 0.0 || !behind(p) {
            break;
        }
        reach = p;
    }
    if reach == here || (!idle && reach.distance(here) <= radius && grid.value_at(reach) <= best_value) {
        local
    } else {
        reach
    }
}

fn enemy_in_range(view: &FeatureView) -> bool {
    let me = &view.agent;
    let near = |p: WorldPos| p.distance(me.pos) <= me.attack_range;
    view.enemy_creeps.iter().any(|c| near(c.pos))
        || view.enemy_towers.iter().any(|t| near(t.pos))
        || view.enemy_heroes.iter().any(|h| near(h.pos))
        || view.enemy_nexus.as_ref().is_some_and(|n| near(n.pos))
}

/// Distance from the own base of the most advanced ally creep, or of the most
/// advanced ally tower while no ally creep is alive; `None` with neither.
pub fn ally_front(view: &FeatureView) -> Option<f64> {
    let base = view.agent_base;
    let furthest = |ps: &mut dyn Iterator<Item = WorldPos>| ps.map(|p| p.distance(base)).reduce(f64::max);
    furthest(&mut view.ally_creeps.iter().map(|c| c.pos)).or_else(|| furthest(&mut view.ally_towers.iter().map(|t| t.pos)))
}

// Candidate nearest the base; only sentinel-free cells unless everything is forbidden.
fn escape(grid: &InfluenceGrid, here: WorldPos, radius: f64, base: WorldPos, all_forbidden: bool) -> Option<WorldPos> {
    let spec = grid.spec();
    let mut best: Option<(f64, usize)> = None;
    grid.for_each_candidate(here, radius, |i, _, v| {
        if !all_forbidden && v == FORBIDDEN {
            return;
        }
        let c = spec.unflat(i);
        let d = spec.center_unchecked(c.col, c.row).distance(base);
        if best.is_none_or(|(bd, bi)| d < bd || (d == bd && i < bi)) {
            best = Some((d, i));
        }
    });
    best.map(|(_, i)| {
        let c = spec.unflat(i);
        spec.center_unchecked(c.col, c.row)
    })
}

/// Attack target by priority: a hero attacking the agent, a last-hittable
/// creep, a shielded tower (or the exposed nexus), then the weakest creep.
pub fn select_target(view: &FeatureView, agent: &AgentState) -> Option<EntityId> {
    let me = &view.agent;
    debug_assert_eq!(me.id, agent.hero_id);
    let in_range = |p: WorldPos| p.distance(me.pos) <= me.attack_range;
    let lowest = |items: &mut dyn Iterator<Item = (f64, EntityId)>| {
        items.min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))).map(|x| x.1)
    };

    let threat = lowest(
        &mut view
            .enemy_heroes
            .iter()
            .filter(|h| h.target == Some(me.id) && in_range(h.pos))
            .map(|h| (h.hp, h.id)),
    );
    if threat.is_some() {
        return threat;
    }
    let creeps_in_range = || view.enemy_creeps.iter().filter(|c| in_range(c.pos));
    let last_hit = lowest(
        &mut creeps_in_range()
            .filter(|c| c.hp <= me.attack_damage)
            .map(|c| (c.hp, c.id)),
    );
    if last_hit.is_some() {
        return last_hit;
    }
    let tower = lowest(
        &mut view
            .enemy_towers
            .iter()
            .filter(|t| {
                in_range(t.pos)
                    && t.context.alpha >= SHIELD_CREEPS
                    && !view.enemy_heroes.iter().any(|h| h.pos.distance(me.pos) <= t.range)
            })
            .map(|t| (t.hp, t.id)),
    );
    if tower.is_some() {
        return tower;
    }
    if let Some(n) = &view.enemy_nexus {
        // the nexus does not shoot back, so only nearby heroes gate it
        if in_range(n.pos) && !view.enemy_heroes.iter().any(|h| in_range(h.pos)) {
            return Some(n.id);
        }
    }
    lowest(&mut creeps_in_range().map(|c| (c.hp, c.id)))
}

/// Per-tick actuator choice. `target` carries the target's current position.
pub fn orbwalk(
    agent: &AgentState,
    target: Option<(EntityId, WorldPos)>,
    nav_target: WorldPos,
    now: f64,
    hero: &crate::influence::AgentView,
) -> Command {
    if now + TIME_EPS < hero.attack_lock_until + agent.turn_time + agent.latency {
        return Command::Hold;
    }
    if let Some((id, pos)) = target {
        let ready = now + TIME_EPS >= hero.last_attack_time + hero.attack_period;
        if ready && pos.distance(hero.pos) <= hero.attack_range {
            return Command::Attack(id);
        }
    }
    Command::Move(nav_target)
}

/// One full decision: refresh the grid when due, navigate, select, orbwalk.
pub fn decide(view: &FeatureView, agent: &mut AgentState, now: f64) -> Command {
    if agent.grid_due(now) {
        compose_into(&mut agent.grid, view, &agent.tuning);
        agent.last_compose = Some(now);
    }
    let nav = navigate(view, &agent.grid, agent);
    agent.nav_target = Some(nav);
    agent.current_target = select_target(view, agent);
    let target = agent.current_target.and_then(|id| target_pos(view, id).map(|p| (id, p)));
    orbwalk(agent, target, nav, now, &view.agent)
}

fn target_pos(view: &FeatureView, id: EntityId) -> Option<WorldPos> {
    view.enemy_heroes
        .iter()
        .find(|h| h.id == id)
        .map(|h| h.pos)
        .or_else(|| view.enemy_creeps.iter().find(|c| c.id == id).map(|c| c.pos))
        .or_else(|| view.enemy_towers.iter().find(|t| t.id == id).map(|t| t.pos))
        .or_else(|| view.enemy_nexus.as_ref().filter(|n| n.id == id).map(|n| n.pos))
}
