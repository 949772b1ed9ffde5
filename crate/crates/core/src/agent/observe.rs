use std::collections::BTreeMap;

use crate::influence::{
    AgentView, AggroState, CreepView, FeatureView, HeroView, StructureView, TowerContext, TowerView,
};
use crate::grid::WorldPos;
use crate::sim::{EntityId, Team, Tower, Unit, UnitKind, UnitStats, World};

use super::HeroProfile;

/// Snapshot of the world from `hero`'s side. `None` while the hero is dead.
///
/// Heroes missing from `profiles` are skipped.
pub fn observe(world: &World, hero: EntityId, profiles: &BTreeMap<EntityId, HeroProfile>) -> Option<FeatureView> {
    let me = world.unit(hero).filter(|u| u.is_alive())?;
    let profile = profiles.get(&hero)?.clone();
    let team = me.team;
    let mut view = FeatureView::solitary(agent_view(me, profile), world.base(team));

    for u in world.units().iter().filter(|u| u.is_alive() && u.id != hero) {
        match (u.kind, u.team == team) {
            (UnitKind::Hero, ally) => {
                let Some(p) = profiles.get(&u.id) else { continue };
                let hv = HeroView {
                    id: u.id,
                    pos: u.pos,
                    hp: u.hp,
                    max_hp: u.max_hp,
                    profile: p.clone(),
                    target: u.target,
                };
                if ally {
                    view.ally_heroes.push(hv);
                } else {
                    view.enemy_heroes.push(hv);
                }
            }
            (_, true) => view.ally_creeps.push(creep_view(u)),
            (_, false) => view.enemy_creeps.push(creep_view(u)),
        }
    }
    for t in world.towers().iter().filter(|t| t.is_alive()) {
        if t.team == team {
            view.ally_towers.push(tower_view(t, hero, 0));
        } else {
            let alpha = view.ally_creeps.iter().filter(|c| c.pos.distance(t.pos) <= t.range).count() as u32;
            view.enemy_towers.push(tower_view(t, hero, alpha));
        }
    }
    let n = world.nexus(team.opponent());
    if n.hp > 0.0 {
        view.enemy_nexus = Some(StructureView {
            id: n.id,
            pos: n.pos,
            hp: n.hp,
        });
    }
    Some(view)
}

/// An agent snapshot for a hero that is not in any world, e.g. canned scenes.
pub fn agent_view_for(id: EntityId, team: Team, pos: WorldPos, stats: &UnitStats, profile: HeroProfile) -> AgentView {
    AgentView {
        id,
        team,
        pos,
        hp: stats.hp,
        max_hp: stats.hp,
        attack_range: stats.range,
        attack_damage: stats.attack_damage,
        attack_period: stats.attack_period,
        windup: stats.windup,
        move_speed: stats.move_speed,
        last_attack_time: f64::NEG_INFINITY,
        attack_lock_until: f64::NEG_INFINITY,
        profile,
    }
}

fn agent_view(u: &Unit, profile: HeroProfile) -> AgentView {
    AgentView {
        id: u.id,
        team: u.team,
        pos: u.pos,
        hp: u.hp,
        max_hp: u.max_hp,
        attack_range: u.range,
        attack_damage: u.attack_damage,
        attack_period: u.attack_period,
        windup: u.windup,
        move_speed: u.move_speed,
        last_attack_time: u.last_attack_time,
        attack_lock_until: u.attack_lock_until,
        profile,
    }
}

fn creep_view(u: &Unit) -> CreepView {
    CreepView {
        id: u.id,
        pos: u.pos,
        hp: u.hp,
        max_hp: u.max_hp,
    }
}

fn tower_view(t: &Tower, hero: EntityId, alpha: u32) -> TowerView {
    // only attention on the agent itself counts as active
    let state = match t.locked_target {
        None => AggroState::Idle,
        Some(id) if id == hero => AggroState::ActiveAggro,
        Some(_) => AggroState::PassiveAggro,
    };
    TowerView {
        id: t.id,
        pos: t.pos,
        hp: t.hp,
        range: t.range,
        damage: t.damage,
        attack_period: t.attack_period,
        context: TowerContext { state, alpha },
    }
}

