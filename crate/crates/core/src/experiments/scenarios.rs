use crate::agent::{agent_view_for, HeroProfile};
use crate::config::MatchConfig;
use crate::grid::{CellIndex, InfluenceGrid, WorldPos};
use crate::influence::{
    compose, compose_creeps, AggroState, CreepMixing, CreepView, FeatureView, HeroView, TowerContext, TowerView,
};
use crate::sim::EntityId;

use super::ExperimentError;

pub const SCENARIOS: [&str; 5] = ["enemy-tower-passive", "enemy-creeps", "max-vs-sum", "full-compose", "empty"];

/// One exported grid of a heatmap scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapLayer {
    pub name: String,
    pub grid: InfluenceGrid,
}

/// Builds the grids of a canned scenario with the tuning, map and grid
/// resolution of `cfg`.
pub fn heatmap_scenario(name: &str, cfg: &MatchConfig) -> Result<Vec<HeatmapLayer>, ExperimentError> {
    cfg.validate()?;
    let spec = cfg.grid_spec().expect("validated");
    let tuning = &cfg.agent.influence;
    let layer = |n: &str, grid| HeatmapLayer {
        name: n.to_owned(),
        grid,
    };
    Ok(match name {
        "enemy-tower-passive" => vec![layer(name, compose(&tower_view(cfg), &spec, tuning))],
        "enemy-creeps" => vec![layer(name, compose(&creeps_view(cfg), &spec, tuning))],
        "max-vs-sum" => {
            let v = two_creeps_view(cfg);
            vec![
                layer("max", compose_creeps(&v, &spec, tuning, CreepMixing::Max)),
                layer("sum", compose_creeps(&v, &spec, tuning, CreepMixing::Sum)),
            ]
        }
        "full-compose" => vec![layer(name, compose(&full_view(cfg), &spec, tuning))],
        "empty" => vec![layer(name, compose(&base_view(cfg, WorldPos::new(2000.0, 1500.0)), &spec, tuning))],
        _ => {
            return Err(ExperimentError::UnknownScenario { name: name.to_owned() });
        }
    })
}

/// Interior cells strictly greater than all eight neighbours, skipping
/// sentinels and cells for which `skip` holds.
pub fn local_maxima(grid: &InfluenceGrid, skip: impl Fn(WorldPos) -> bool) -> Vec<CellIndex> {
    let spec = grid.spec();
    let mut out = Vec::new();
    for row in 1..spec.rows.saturating_sub(1) {
        for col in 1..spec.cols.saturating_sub(1) {
            let idx = CellIndex::new(col, row);
            let v = grid.get(idx);
            if !v.is_finite() || skip(spec.cell_center(idx).expect("in grid")) {
                continue;
            }
            let strict = (-1i64..=1).all(|dr| {
                (-1i64..=1).all(|dc| {
                    (dr == 0 && dc == 0)
                        || v > grid.get(CellIndex::new((col as i64 + dc) as usize, (row as i64 + dr) as usize))
                })
            });
            if strict {
                out.push(idx);
            }
        }
    }
    out
}

fn base_view(cfg: &MatchConfig, agent_pos: WorldPos) -> FeatureView {
    let profile = cfg.profiles.iter().next().cloned().unwrap_or_else(|| HeroProfile::new("hero", 650.0, 500.0, false));
    let agent = agent_view_for(EntityId(1), crate::sim::Team::Blue, agent_pos, &cfg.stats.hero, profile);
    FeatureView::solitary(agent, cfg.map.base(crate::sim::Team::Blue))
}

fn creep(id: u32, x: f64, y: f64, hp: f64, max_hp: f64) -> CreepView {
    CreepView {
        id: EntityId(id),
        pos: WorldPos::new(x, y),
        hp,
        max_hp,
    }
}

fn enemy_tower(cfg: &MatchConfig, id: u32, x: f64, state: AggroState, alpha: u32) -> TowerView {
    let t = &cfg.stats.tower;
    TowerView {
        id: EntityId(id),
        pos: WorldPos::new(x, cfg.map.lane_y),
        hp: t.hp,
        range: t.range,
        damage: t.damage,
        attack_period: t.attack_period,
        context: TowerContext { state, alpha },
    }
}

// A shielded tower busy with creeps.
fn tower_view(cfg: &MatchConfig) -> FeatureView {
    let mut v = base_view(cfg, WorldPos::new(6200.0, 1500.0));
    let mut t = enemy_tower(cfg, 20, 7000.0, AggroState::PassiveAggro, 3);
    // on a row of cell centres so the ring band is sampled
    t.pos.y = cfg.map.lane_y - 50.0;
    v.enemy_towers.push(t);
    v
}

fn creeps_view(cfg: &MatchConfig) -> FeatureView {
    let mut v = base_view(cfg, WorldPos::new(5200.0, 1500.0));
    let m = cfg.stats.melee_creep.hp;
    let r = cfg.stats.ranged_creep.hp;
    v.enemy_creeps = vec![
        creep(30, 6000.0, 1450.0, m, m),
        creep(31, 6050.0, 1550.0, 0.2 * m, m),
        creep(32, 6300.0, 1350.0, r, r),
        creep(33, 6350.0, 1650.0, 0.6 * r, r),
    ];
    v
}

// Two healthy creeps stacked across the lane, far from the base, so that
// the summed tails meet in a bump halfway between them.
fn two_creeps_view(cfg: &MatchConfig) -> FeatureView {
    let mut v = base_view(cfg, WorldPos::new(9000.0, 1450.0));
    v.agent_base = WorldPos::new(550.0, 1450.0);
    let m = cfg.stats.melee_creep.hp;
    v.enemy_creeps = vec![creep(40, 11050.0, 750.0, m, m), creep(41, 11050.0, 2150.0, m, m)];
    v
}

fn full_view(cfg: &MatchConfig) -> FeatureView {
    let mut v = base_view(cfg, WorldPos::new(5600.0, 1500.0));
    let m = cfg.stats.melee_creep.hp;
    v.ally_towers.push(TowerView {
        context: TowerContext {
            state: AggroState::Idle,
            alpha: 0,
        },
        ..enemy_tower(cfg, 10, 5000.0, AggroState::Idle, 0)
    });
    v.enemy_towers.push(enemy_tower(cfg, 20, 8500.0, AggroState::PassiveAggro, 1));
    v.enemy_creeps = vec![creep(30, 6600.0, 1450.0, 0.3 * m, m), creep(31, 6700.0, 1600.0, m, m)];
    v.enemy_heroes.push(HeroView {
        id: EntityId(50),
        pos: WorldPos::new(7300.0, 2300.0),
        hp: 600.0,
        max_hp: 600.0,
        profile: HeroProfile::new("mage", 700.0, 450.0, false),
        target: None,
    });
    v.ally_heroes.push(HeroView {
        id: EntityId(2),
        pos: WorldPos::new(5400.0, 900.0),
        hp: 600.0,
        max_hp: 600.0,
        profile: HeroProfile::new("ranged-carry", 650.0, 200.0, false),
        target: None,
    });
    v
}
