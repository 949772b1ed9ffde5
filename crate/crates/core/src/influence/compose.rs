use crate::grid::{GridSpec, InfluenceGrid, FORBIDDEN};

use super::{
    ally_tower_influence, enemy_creep_influence, enemy_tower_influence, hero_influence, FeatureView, Frame,
    InfluenceTuning,
};

/// How overlapping creep fields are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CreepMixing {
    /// Each cell keeps the strongest creep's value.
    Max,
    /// Plain layer summation, kept for comparison heatmaps.
    Sum,
}

/// Builds the tactical grid for one decision.
pub fn compose(view: &FeatureView, spec: &GridSpec, tuning: &InfluenceTuning) -> InfluenceGrid {
    let mut grid = InfluenceGrid::new(*spec);
    compose_into(&mut grid, view, tuning);
    grid
}

/// Only the creep layer, with a selectable mixing rule.
pub fn compose_creeps(view: &FeatureView, spec: &GridSpec, tuning: &InfluenceTuning, mixing: CreepMixing) -> InfluenceGrid {
    let mut grid = InfluenceGrid::new(*spec);
    let frame = Frame::new(view, spec, tuning);
    creep_pass(&mut grid, view, &frame, tuning, mixing);
    grid
}

/// Recomposes `grid` in place: creeps first, then towers overwrite their
/// footprints, then heroes.
pub fn compose_into(grid: &mut InfluenceGrid, view: &FeatureView, tuning: &InfluenceTuning) {
    grid.reset();
    let spec = *grid.spec();
    let frame = Frame::new(view, &spec, tuning);
    creep_pass(grid, view, &frame, tuning, CreepMixing::Max);
    tower_pass(grid, view, &frame, tuning);
    hero_pass(grid, view);
}

fn creep_pass(grid: &mut InfluenceGrid, view: &FeatureView, frame: &Frame, tuning: &InfluenceTuning, mixing: CreepMixing) {
    let spec = *grid.spec();
    let reach = frame.hero_range + if tuning.enemy_creep_falloff_enabled { tuning.creep_falloff_extent } else { 0.0 };
    let values = grid.values_mut();
    for creep in &view.enemy_creeps {
        let (cols, rows) = spec.window(creep.pos, reach);
        for row in rows {
            for col in cols.clone() {
                let cell = spec.center_unchecked(col, row);
                if let Some(w) = enemy_creep_influence(cell, creep, frame, tuning) {
                    let v = &mut values[row * spec.cols + col];
                    *v = match mixing {
                        CreepMixing::Max => v.max(w),
                        CreepMixing::Sum => *v + w,
                    };
                }
            }
        }
    }
}

// Within the union of tower footprints the creep layer is discarded. Allied
// towers merge by max over a zero baseline, enemy towers by min, and where
// both sides cover a cell the lower value wins.
fn tower_pass(grid: &mut InfluenceGrid, view: &FeatureView, frame: &Frame, tuning: &InfluenceTuning) {
    if view.ally_towers.is_empty() && view.enemy_towers.is_empty() {
        return;
    }
    let spec = *grid.spec();
    let mut ally = vec![f64::NAN; spec.len()];
    let mut enemy = vec![f64::NAN; spec.len()];

    for tower in &view.ally_towers {
        let (cols, rows) = spec.window(tower.pos, tower.range);
        for row in rows {
            for col in cols.clone() {
                let cell = spec.center_unchecked(col, row);
                if cell.distance(tower.pos) > tower.range {
                    continue;
                }
                let i = row * spec.cols + col;
                let w = ally_tower_influence(cell, tower.pos, tower.range, tuning.ally_tower_margin).unwrap_or(0.0);
                ally[i] = if ally[i].is_nan() { w } else { ally[i].max(w) };
            }
        }
    }
    for tower in &view.enemy_towers {
        let (cols, rows) = spec.window(tower.pos, tower.range);
        for row in rows {
            for col in cols.clone() {
                let cell = spec.center_unchecked(col, row);
                if let Some(w) = enemy_tower_influence(cell, tower, &view.agent, frame) {
                    let i = row * spec.cols + col;
                    enemy[i] = if enemy[i].is_nan() { w } else { enemy[i].min(w) };
                }
            }
        }
    }

    for ((v, a), e) in grid.values_mut().iter_mut().zip(ally).zip(enemy) {
        match (a.is_nan(), e.is_nan()) {
            (true, true) => {}
            (false, true) => *v = a,
            (true, false) => *v = e,
            (false, false) => *v = a.min(e),
        }
    }
}

// Enemy plateaus overwrite (the most dangerous hero wins where they overlap),
// allies add on top. Forbidden cells are never touched.
fn hero_pass(grid: &mut InfluenceGrid, view: &FeatureView) {
    if view.enemy_heroes.is_empty() && view.ally_heroes.is_empty() {
        return;
    }
    let spec = *grid.spec();
    let mut plateau = vec![f64::NAN; spec.len()];
    for hero in &view.enemy_heroes {
        let (cols, rows) = spec.window(hero.pos, hero.profile.effective_range);
        for row in rows {
            for col in cols.clone() {
                let cell = spec.center_unchecked(col, row);
                if hero_influence(cell, hero.pos, &hero.profile, true).is_some() {
                    let i = row * spec.cols + col;
                    let w = -hero.profile.tactical_value;
                    plateau[i] = if plateau[i].is_nan() { w } else { plateau[i].min(w) };
                }
            }
        }
    }
    let values = grid.values_mut();
    for (v, p) in values.iter_mut().zip(plateau) {
        if !p.is_nan() && *v != FORBIDDEN {
            *v = p;
        }
    }
    for hero in &view.ally_heroes {
        let (cols, rows) = spec.window(hero.pos, hero.profile.effective_range);
        for row in rows {
            for col in cols.clone() {
                let cell = spec.center_unchecked(col, row);
                if let Some(effect) = hero_influence(cell, hero.pos, &hero.profile, false) {
                    let v = &mut values[row * spec.cols + col];
                    *v = effect.apply(*v);
                }
            }
        }
    }
}
