//! Independent reference evaluators and random scene generators shared by
//! the property tests and the acceptance harness. Nothing here calls into the
//! library's influence equations; only plain data types are borrowed.

#![allow(dead_code)]

use lanecraft::agent::{agent_view_for, HeroProfile};
use lanecraft::grid::{GridSpec, MapBounds, WorldPos};
use lanecraft::influence::{
    AggroState, CreepView, FeatureView, HeroView, InfluenceTuning, TowerContext, TowerView,
};
use lanecraft::sim::{EntityId, Team, UnitStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NEG_INF: f64 = f64::NEG_INFINITY;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dist(a: WorldPos, b: WorldPos) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

pub fn ref_tau(unit: WorldPos, cell: WorldPos, base: WorldPos, floor: f64) -> f64 {
    let num = dist(unit, base);
    let mut den = dist(cell, base);
    if den < floor {
        den = floor;
    }
    num / den
}

pub fn ref_phi(hp: f64, max_hp: f64, on: bool) -> f64 {
    if !on || max_hp <= 0.0 {
        return 100.0;
    }
    let frac = hp / max_hp;
    100.0 * frac.clamp(0.0, 1.0)
}

/// Geometry a single evaluation needs.
#[derive(Debug, Clone, Copy)]
pub struct Geo {
    pub base: WorldPos,
    pub hero_range: f64,
    pub delta: f64,
    pub floor: f64,
}

pub fn geo(view: &FeatureView, spec: &GridSpec, tuning: &InfluenceTuning) -> Geo {
    Geo {
        base: view.agent_base,
        hero_range: tuning.hero_range_override.unwrap_or(view.agent.attack_range),
        delta: spec.resolution * 0.5,
        floor: tuning.tau_denominator_floor,
    }
}

pub fn ref_enemy_creep(cell: WorldPos, c: &CreepView, g: &Geo, t: &InfluenceTuning) -> Option<f64> {
    let d = dist(cell, c.pos);
    let hr = g.hero_range;
    let tau = ref_tau(c.pos, cell, g.base, g.floor);
    let p = ref_phi(c.hp, c.max_hp, t.phi_enabled);
    if d < hr - g.delta {
        return Some(d);
    }
    if d <= hr {
        return Some(tau * (d + t.creep_bonus - p));
    }
    if t.enemy_creep_falloff_enabled && d <= hr + t.creep_falloff_extent {
        let peak = tau * (hr + t.creep_bonus - p);
        let v = peak - (d - hr);
        return Some(if v > 0.0 { v } else { 0.0 });
    }
    None
}

pub fn ref_epsilon(t: &TowerView, hp: f64, speed: f64) -> f64 {
    let dps = t.damage / t.attack_period;
    let hp = if hp > 0.0 { hp } else { 0.0 };
    let e = t.range - hp * speed / (2.0 * dps);
    e.max(0.0).min(t.range)
}

pub fn ref_enemy_tower(cell: WorldPos, t: &TowerView, hp: f64, speed: f64, g: &Geo) -> Option<f64> {
    let d = dist(cell, t.pos);
    if d > t.range {
        return None;
    }
    let favorable = t.context.state != AggroState::ActiveAggro && t.context.alpha >= 3;
    if favorable {
        if d < g.hero_range - g.delta {
            Some(d)
        } else if d <= g.hero_range {
            Some(ref_tau(t.pos, cell, g.base, g.floor) * d)
        } else {
            Some(t.range - d)
        }
    } else if d > ref_epsilon(t, hp, speed) {
        Some(-t.range)
    } else {
        Some(NEG_INF)
    }
}

pub fn ref_ally_tower(cell: WorldPos, pos: WorldPos, range: f64, margin: f64) -> Option<f64> {
    let d = dist(cell, pos);
    if d > range || d <= margin {
        None
    } else {
        Some(range - d)
    }
}

/// `Some((overwrite, value))` inside the hero's effective range.
pub fn ref_hero(cell: WorldPos, pos: WorldPos, p: &HeroProfile, hostile: bool) -> Option<(bool, f64)> {
    if dist(cell, pos) > p.effective_range {
        None
    } else if hostile {
        Some((true, -p.tactical_value))
    } else {
        Some((false, p.tactical_value))
    }
}

/// Evaluates one cell through the three passes independently of the library.
pub fn ref_cell(cell: WorldPos, view: &FeatureView, g: &Geo, t: &InfluenceTuning) -> f64 {
    let mut v = 0.0f64;
    for c in &view.enemy_creeps {
        if let Some(w) = ref_enemy_creep(cell, c, g, t) {
            if w > v {
                v = w;
            }
        }
    }

    let mut ally: Option<f64> = None;
    for tw in &view.ally_towers {
        if dist(cell, tw.pos) <= tw.range {
            let w = ref_ally_tower(cell, tw.pos, tw.range, t.ally_tower_margin).unwrap_or(0.0);
            ally = Some(ally.map_or(w, |a| if w > a { w } else { a }));
        }
    }
    let mut enemy: Option<f64> = None;
    for tw in &view.enemy_towers {
        if let Some(w) = ref_enemy_tower(cell, tw, view.agent.hp, view.agent.move_speed, g) {
            enemy = Some(enemy.map_or(w, |e| if w < e { w } else { e }));
        }
    }
    match (ally, enemy) {
        (Some(a), Some(e)) => v = if a < e { a } else { e },
        (Some(a), None) => v = a,
        (None, Some(e)) => v = e,
        (None, None) => {}
    }

    let mut plateau: Option<f64> = None;
    for h in &view.enemy_heroes {
        if let Some((_, w)) = ref_hero(cell, h.pos, &h.profile, true) {
            plateau = Some(plateau.map_or(w, |p| if w < p { w } else { p }));
        }
    }
    if v != NEG_INF {
        if let Some(p) = plateau {
            v = p;
        }
        for h in &view.ally_heroes {
            if let Some((_, w)) = ref_hero(cell, h.pos, &h.profile, false) {
                v += w;
            }
        }
    }
    v
}

pub fn ref_compose(view: &FeatureView, spec: &GridSpec, t: &InfluenceTuning) -> Vec<f64> {
    let g = geo(view, spec, t);
    let mut out = Vec::with_capacity(spec.len());
    for row in 0..spec.rows {
        for col in 0..spec.cols {
            let cell = WorldPos::new(
                spec.origin.x + spec.resolution * (col as f64 + 0.5),
                spec.origin.y + spec.resolution * (row as f64 + 0.5),
            );
            out.push(ref_cell(cell, view, &g, t));
        }
    }
    out
}

/// Exact agreement on the sentinel, 1e-9 absolute otherwise.
pub fn same(a: f64, b: f64) -> bool {
    if a == NEG_INF || b == NEG_INF {
        a == b
    } else {
        (a - b).abs() <= 1e-9
    }
}

pub fn pos_in(r: &mut impl Rng, w: f64, h: f64) -> WorldPos {
    WorldPos::new(r.random_range(0.0..w), r.random_range(0.0..h))
}

pub fn random_profile(r: &mut impl Rng, min_range: f64) -> HeroProfile {
    HeroProfile::new(
        "p",
        min_range + r.random_range(0.0..400.0),
        r.random_range(1.0..800.0),
        r.random_bool(0.3),
    )
}

pub fn random_stats(r: &mut impl Rng) -> UnitStats {
    UnitStats {
        hp: r.random_range(1.0..1200.0),
        attack_damage: r.random_range(10.0..120.0),
        attack_period: r.random_range(0.6..2.0),
        windup: 0.3,
        range: r.random_range(150.0..700.0),
        move_speed: r.random_range(250.0..420.0),
        aggro_radius: 0.0,
    }
}

pub fn random_tower(r: &mut impl Rng, id: u32, w: f64, h: f64) -> TowerView {
    let states = [AggroState::Idle, AggroState::PassiveAggro, AggroState::ActiveAggro];
    TowerView {
        id: EntityId(id),
        pos: pos_in(r, w, h),
        hp: r.random_range(100.0..3500.0),
        range: r.random_range(300.0..900.0),
        damage: r.random_range(50.0..250.0),
        attack_period: r.random_range(0.8..2.0),
        context: TowerContext {
            state: states[r.random_range(0..3)],
            alpha: r.random_range(0..6),
        },
    }
}

pub fn random_creep(r: &mut impl Rng, id: u32, w: f64, h: f64) -> CreepView {
    let max_hp = r.random_range(100.0..700.0);
    CreepView {
        id: EntityId(id),
        pos: pos_in(r, w, h),
        hp: r.random_range(0.0..=max_hp),
        max_hp,
    }
}

pub fn random_hero(r: &mut impl Rng, id: u32, w: f64, h: f64) -> HeroView {
    HeroView {
        id: EntityId(id),
        pos: pos_in(r, w, h),
        hp: 500.0,
        max_hp: 500.0,
        profile: {
            let min_range = r.random_range(100.0..600.0);
            random_profile(r, min_range)
        },
        target: None,
    }
}

pub fn random_tuning(r: &mut impl Rng) -> InfluenceTuning {
    InfluenceTuning {
        hero_range_override: r.random_bool(0.2).then(|| r.random_range(200.0..700.0)),
        phi_enabled: r.random_bool(0.7),
        creep_bonus: r.random_range(0.0..200.0),
        ally_tower_margin: r.random_range(0.0..300.0),
        enemy_creep_falloff_enabled: r.random_bool(0.6),
        creep_falloff_extent: r.random_range(0.0..400.0),
        tau_denominator_floor: r.random_range(10.0..200.0),
    }
}

/// A small scene: at most 20x20 cells and at most `max_features` features.
pub fn random_world(r: &mut impl Rng, max_features: usize) -> (GridSpec, FeatureView, InfluenceTuning) {
    let res = [50.0, 100.0, 125.0][r.random_range(0..3)];
    let cols = r.random_range(1..=20);
    let rows = r.random_range(1..=20);
    let (w, h) = (cols as f64 * res, rows as f64 * res);
    let spec = GridSpec::for_map(MapBounds::new(w, h).unwrap(), res).unwrap();
    let stats = random_stats(r);
    let agent = agent_view_for(EntityId(1), Team::Blue, pos_in(r, w, h), &stats, random_profile(r, stats.range));
    let mut view = FeatureView::solitary(agent, pos_in(r, w, h));
    let n = r.random_range(0..=max_features);
    for i in 0..n {
        let id = 100 + i as u32;
        match r.random_range(0..5) {
            0 => view.enemy_creeps.push(random_creep(r, id, w, h)),
            1 => view.enemy_towers.push(random_tower(r, id, w, h)),
            2 => view.ally_towers.push(random_tower(r, id, w, h)),
            3 => view.enemy_heroes.push(random_hero(r, id, w, h)),
            _ => view.ally_heroes.push(random_hero(r, id, w, h)),
        }
    }
    (spec, view, random_tuning(r))
}

/// The full default map at 100-unit cells with 30 features around the
/// middle of the lane, used for timing the composer.
pub fn dense_scene() -> (GridSpec, FeatureView, InfluenceTuning) {
    let spec = GridSpec::for_map(MapBounds::new(12000.0, 3000.0).unwrap(), 100.0).unwrap();
    let mut r = rng(30);
    let stats = UnitStats::hero();
    let agent = agent_view_for(EntityId(1), Team::Blue, WorldPos::new(5600.0, 1500.0), &stats, HeroProfile::new("h", 650.0, 500.0, false));
    let mut view = FeatureView::solitary(agent, WorldPos::new(500.0, 1500.0));
    let near = |r: &mut ChaCha8Rng, x0: f64, x1: f64| WorldPos::new(r.random_range(x0..x1), r.random_range(900.0..2100.0));
    for i in 0..16 {
        let mut c = random_creep(&mut r, 100 + i, 1.0, 1.0);
        c.pos = near(&mut r, 5800.0, 7200.0);
        view.enemy_creeps.push(c);
    }
    for (i, x) in [3500.0, 5000.0, 7000.0, 8500.0].into_iter().enumerate() {
        let mut t = random_tower(&mut r, 200 + i as u32, 1.0, 1.0);
        t.pos = WorldPos::new(x, 1500.0);
        t.range = 775.0;
        if x < 6000.0 {
            view.ally_towers.push(t);
        } else {
            view.enemy_towers.push(t);
        }
    }
    for i in 0..6 {
        let mut h = random_hero(&mut r, 300 + i, 1.0, 1.0);
        if i % 2 == 0 {
            h.pos = near(&mut r, 6500.0, 8000.0);
            view.enemy_heroes.push(h);
        } else {
            h.pos = near(&mut r, 4500.0, 5800.0);
            view.ally_heroes.push(h);
        }
    }
    for i in 0..4 {
        let mut t = random_tower(&mut r, 400 + i, 1.0, 1.0);
        t.pos = WorldPos::new(9500.0 + 500.0 * i as f64, 1500.0);
        view.enemy_towers.push(t);
    }
    (spec, view, InfluenceTuning::default())
}
