use serde::{Deserialize, Serialize};

use crate::grid::{MapBounds, WorldPos};

use super::Team;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapConfig {
    pub width: f64,
    pub height: f64,
    pub lane_y: f64,
    pub blue_base_x: f64,
    pub red_base_x: f64,
    pub blue_towers: Vec<f64>,
    pub red_towers: Vec<f64>,
}

impl Default for MapConfig {
    fn default() -> Self {
        Self {
            width: 12000.0,
            height: 3000.0,
            lane_y: 1500.0,
            blue_base_x: 500.0,
            red_base_x: 11500.0,
            blue_towers: vec![3500.0, 5000.0],
            red_towers: vec![7000.0, 8500.0],
        }
    }
}

impl MapConfig {
    pub fn bounds(&self) -> MapBounds {
        MapBounds {
            width: self.width,
            height: self.height,
        }
    }

    pub fn base(&self, team: Team) -> WorldPos {
        match team {
            Team::Blue => WorldPos::new(self.blue_base_x, self.lane_y),
            Team::Red => WorldPos::new(self.red_base_x, self.lane_y),
        }
    }

    /// Unit vector from `team`'s base towards the enemy base (along x).
    pub fn lane_direction(&self, team: Team) -> f64 {
        let d = self.base(team.opponent()).x - self.base(team).x;
        if d >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitStats {
    pub hp: f64,
    pub attack_damage: f64,
    pub attack_period: f64,
    pub windup: f64,
    pub range: f64,
    pub move_speed: f64,
    #[serde(default)]
    pub aggro_radius: f64,
}

impl UnitStats {
    pub fn hero() -> Self {
        Self {
            hp: 600.0,
            attack_damage: 60.0,
            attack_period: 1.0 / 0.7,
            windup: 0.25,
            range: 550.0,
            move_speed: 325.0,
            aggro_radius: 0.0,
        }
    }

    pub fn melee_creep() -> Self {
        Self {
            hp: 450.0,
            attack_damage: 12.0,
            attack_period: 0.8,
            windup: 0.2,
            range: 110.0,
            move_speed: 325.0,
            aggro_radius: 600.0,
        }
    }

    pub fn ranged_creep() -> Self {
        Self {
            hp: 280.0,
            attack_damage: 23.0,
            attack_period: 1.1,
            windup: 0.3,
            range: 500.0,
            move_speed: 325.0,
            aggro_radius: 600.0,
        }
    }

    pub(crate) fn check(&self, prefix: &str, bad: &mut Vec<String>) {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        for (name, ok) in [
            ("hp", pos(self.hp)),
            ("attack_damage", self.attack_damage.is_finite() && self.attack_damage >= 0.0),
            ("attack_period", pos(self.attack_period)),
            ("windup", self.windup.is_finite() && self.windup >= 0.0 && self.windup < self.attack_period),
            ("range", pos(self.range)),
            ("move_speed", pos(self.move_speed)),
            ("aggro_radius", self.aggro_radius.is_finite() && self.aggro_radius >= 0.0),
        ] {
            if !ok {
                bad.push(format!("{prefix}.{name}"));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerStats {
    pub hp: f64,
    pub damage: f64,
    pub attack_period: f64,
    pub range: f64,
}

impl Default for TowerStats {
    fn default() -> Self {
        Self {
            hp: 3500.0,
            damage: 150.0,
            attack_period: 1.2,
            range: 775.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsConfig {
    pub hero: UnitStats,
    pub melee_creep: UnitStats,
    pub ranged_creep: UnitStats,
    pub tower: TowerStats,
    pub nexus_hp: f64,
    pub hero_respawn: f64,
}

impl Default for StatsConfig {
    fn default() -> Self {
        Self {
            hero: UnitStats::hero(),
            melee_creep: UnitStats::melee_creep(),
            ranged_creep: UnitStats::ranged_creep(),
            tower: TowerStats::default(),
            nexus_hp: 2000.0,
            hero_respawn: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaveConfig {
    pub period: f64,
    pub first_spawn: f64,
    pub melee_count: u32,
    pub ranged_count: u32,
    pub spawn_spacing: f64,
    /// Maximum random offset across the lane given to each spawned creep.
    pub lateral_jitter: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        Self {
            period: 30.0,
            first_spawn: 15.0,
            melee_count: 3,
            ranged_count: 3,
            spawn_spacing: 60.0,
            lateral_jitter: 40.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub map: MapConfig,
    pub stats: StatsConfig,
    pub wave: WaveConfig,
    pub tick_hz: u32,
    /// Seconds after which the match halts without a winner.
    pub time_cap: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            map: MapConfig::default(),
            stats: StatsConfig::default(),
            wave: WaveConfig::default(),
            tick_hz: 30,
            time_cap: 40.0 * 60.0,
        }
    }
}

impl SimConfig {
    pub fn dt(&self) -> f64 {
        1.0 / f64::from(self.tick_hz)
    }

    /// Rounds a duration to whole ticks.
    pub fn ticks(&self, seconds: f64) -> u64 {
        (seconds * f64::from(self.tick_hz)).round().max(0.0) as u64
    }

    /// Collects dotted paths of every out-of-range field.
    pub fn invalid_fields(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let m = &self.map;
        if MapBounds::new(m.width, m.height).is_err() {
            bad.push("map.width/height".to_owned());
        }
        let inside_x = |x: f64| x.is_finite() && (0.0..=m.width).contains(&x);
        if !(m.lane_y.is_finite() && (0.0..=m.height).contains(&m.lane_y)) {
            bad.push("map.lane_y".to_owned());
        }
        if !inside_x(m.blue_base_x) {
            bad.push("map.blue_base_x".to_owned());
        }
        if !inside_x(m.red_base_x) || m.red_base_x == m.blue_base_x {
            bad.push("map.red_base_x".to_owned());
        }
        if !m.blue_towers.iter().all(|&x| inside_x(x)) {
            bad.push("map.blue_towers".to_owned());
        }
        if !m.red_towers.iter().all(|&x| inside_x(x)) {
            bad.push("map.red_towers".to_owned());
        }
        self.stats.hero.check("stats.hero", &mut bad);
        self.stats.melee_creep.check("stats.melee_creep", &mut bad);
        self.stats.ranged_creep.check("stats.ranged_creep", &mut bad);
        let t = &self.stats.tower;
        for (name, v) in [("hp", t.hp), ("damage", t.damage), ("attack_period", t.attack_period), ("range", t.range)] {
            if !(v.is_finite() && v > 0.0) {
                bad.push(format!("stats.tower.{name}"));
            }
        }
        if !(self.stats.nexus_hp.is_finite() && self.stats.nexus_hp > 0.0) {
            bad.push("stats.nexus_hp".to_owned());
        }
        if !(self.stats.hero_respawn.is_finite() && self.stats.hero_respawn >= 0.0) {
            bad.push("stats.hero_respawn".to_owned());
        }
        let w = &self.wave;
        if !(w.period.is_finite() && w.period > 0.0) {
            bad.push("wave.period".to_owned());
        }
        if !(w.first_spawn.is_finite() && w.first_spawn >= 0.0) {
            bad.push("wave.first_spawn".to_owned());
        }
        if !(w.spawn_spacing.is_finite() && w.spawn_spacing >= 0.0) {
            bad.push("wave.spawn_spacing".to_owned());
        }
        if !(w.lateral_jitter.is_finite() && w.lateral_jitter >= 0.0) {
            bad.push("wave.lateral_jitter".to_owned());
        }
        if self.tick_hz == 0 {
            bad.push("tick_hz".to_owned());
        }
        if !(self.time_cap.is_finite() && self.time_cap > 0.0) {
            bad.push("time_cap".to_owned());
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(SimConfig::default().invalid_fields().is_empty());
    }

    #[test]
    fn validation_names_fields() {
        let mut c = SimConfig::default();
        c.wave.period = 0.0;
        c.stats.hero.windup = 5.0;
        c.tick_hz = 0;
        assert_eq!(c.invalid_fields(), vec!["stats.hero.windup", "wave.period", "tick_hz"]);
    }

    #[test]
    fn tick_quantization() {
        let c = SimConfig::default();
        assert_eq!(c.ticks(15.0), 450);
        assert_eq!(c.ticks(0.25), 8);
    }
}
