use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{MapBounds, WorldPos};
use crate::influence::AggroState;

use super::{
    Command, EntityId, Event, EventKind, HeroStats, Nexus, PendingAttack, SimConfig, SimError, Team, Tower, Unit,
    UnitKind, UnitStats, TIME_EPS,
};

/// Seconds of damage history that earn an assist on a hero kill.
const ASSIST_WINDOW: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeroSpawn {
    pub team: Team,
    /// Defaults to the team's base.
    pub pos: Option<WorldPos>,
    pub stats: UnitStats,
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Unit(usize),
    Tower(usize),
    Nexus(usize),
}

#[derive(Debug, Clone)]
struct Fallen {
    unit: Unit,
    respawn_tick: u64,
    spawn: WorldPos,
}

#[derive(Debug, Clone)]
pub struct World {
    cfg: SimConfig,
    bounds: MapBounds,
    dt: f64,
    tick_index: u64,
    clock: f64,
    units: Vec<Unit>,
    towers: Vec<Tower>,
    nexus: [Nexus; 2],
    lanes: [Vec<WorldPos>; 2],
    hero_spawns: BTreeMap<EntityId, WorldPos>,
    fallen: Vec<Fallen>,
    next_wave_tick: u64,
    next_id: u32,
    rng: ChaCha8Rng,
    seed: u64,
    stats: BTreeMap<EntityId, HeroStats>,
    hero_damage_log: BTreeMap<EntityId, Vec<(EntityId, f64)>>,
    winner: Option<Team>,
}

impl World {
    pub fn new(cfg: &SimConfig, seed: u64, heroes: &[HeroSpawn]) -> Result<Self, SimError> {
        let mut bad = cfg.invalid_fields();
        for (i, h) in heroes.iter().enumerate() {
            let mut b = Vec::new();
            h.stats.check(&format!("heroes[{i}].stats"), &mut b);
            if let Some(p) = h.pos {
                if !(p.x.is_finite() && p.y.is_finite() && cfg.map.bounds().contains(p)) {
                    b.push(format!("heroes[{i}].pos"));
                }
            }
            bad.extend(b);
        }
        if !bad.is_empty() {
            return Err(SimError::InvalidConfig(bad));
        }
        let map = &cfg.map;
        let bounds = map.bounds();
        let mut next_id = 1u32;
        let mut fresh = || {
            let id = EntityId(next_id);
            next_id += 1;
            id
        };
        let nexus = [Team::Blue, Team::Red].map(|team| Nexus {
            id: fresh(),
            team,
            pos: map.base(team),
            hp: cfg.stats.nexus_hp,
            max_hp: cfg.stats.nexus_hp,
        });
        let mut towers = Vec::new();
        for (team, xs) in [(Team::Blue, &map.blue_towers), (Team::Red, &map.red_towers)] {
            for &x in xs {
                let t = cfg.stats.tower;
                towers.push(Tower {
                    id: fresh(),
                    team,
                    pos: WorldPos::new(x, map.lane_y),
                    hp: t.hp,
                    max_hp: t.hp,
                    damage: t.damage,
                    attack_period: t.attack_period,
                    range: t.range,
                    state: AggroState::Idle,
                    locked_target: None,
                    last_attack_time: f64::NEG_INFINITY,
                    entries: Vec::new(),
                });
            }
        }
        let mut units = Vec::new();
        let mut hero_spawns = BTreeMap::new();
        let mut stats = BTreeMap::new();
        for h in heroes {
            let id = fresh();
            let pos = h.pos.unwrap_or_else(|| map.base(h.team));
            units.push(make_unit(id, h.team, UnitKind::Hero, pos, &h.stats));
            hero_spawns.insert(id, pos);
            stats.insert(id, HeroStats::default());
        }
        let lanes = [Team::Blue, Team::Red].map(|team| vec![map.base(team.opponent())]);
        Ok(Self {
            bounds,
            dt: cfg.dt(),
            tick_index: 0,
            clock: 0.0,
            units,
            towers,
            nexus,
            lanes,
            hero_spawns,
            fallen: Vec::new(),
            next_wave_tick: cfg.ticks(cfg.wave.first_spawn),
            next_id,
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            stats,
            hero_damage_log: BTreeMap::new(),
            winner: None,
            cfg: cfg.clone(),
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn bounds(&self) -> MapBounds {
        self.bounds
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn tick_index(&self) -> u64 {
        self.tick_index
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    pub fn nexus(&self, team: Team) -> &Nexus {
        &self.nexus[team.index()]
    }

    pub fn base(&self, team: Team) -> WorldPos {
        self.cfg.map.base(team)
    }

    pub fn lane_waypoints(&self, team: Team) -> &[WorldPos] {
        &self.lanes[team.index()]
    }

    pub fn stats(&self) -> &BTreeMap<EntityId, HeroStats> {
        &self.stats
    }

    pub fn hero_ids(&self) -> BTreeSet<EntityId> {
        self.hero_spawns.keys().copied().collect()
    }

    /// Team of a hero, dead or alive.
    pub fn hero_team(&self, id: EntityId) -> Option<Team> {
        self.unit(id)
            .or_else(|| self.fallen.iter().find(|f| f.unit.id == id).map(|f| &f.unit))
            .map(|u| u.team)
    }

    pub fn winner(&self) -> Option<Team> {
        self.winner
    }

    pub fn is_capped(&self) -> bool {
        self.clock + TIME_EPS >= self.cfg.time_cap
    }

    pub fn is_over(&self) -> bool {
        self.winner.is_some() || self.is_capped()
    }

    pub fn unit(&self, id: EntityId) -> Option<&Unit> {
        self.units.binary_search_by_key(&id, |u| u.id).ok().map(|i| &self.units[i])
    }

    pub fn tower(&self, id: EntityId) -> Option<&Tower> {
        self.towers.iter().find(|t| t.id == id)
    }

    /// Seconds until a dead hero is back, `None` if it is alive or unknown.
    pub fn respawn_in(&self, id: EntityId) -> Option<f64> {
        self.fallen
            .iter()
            .find(|f| f.unit.id == id)
            .map(|f| (f.respawn_tick.saturating_sub(self.tick_index)) as f64 * self.dt)
    }

    /// Remaining distance along the team's lane from `pos`, starting at waypoint `from`.
    pub fn lane_remaining(&self, team: Team, pos: WorldPos, from: usize) -> f64 {
        let wps = self.lane_waypoints(team);
        let mut total = 0.0;
        let mut at = pos;
        for wp in wps.iter().skip(from) {
            total += at.distance(*wp);
            at = *wp;
        }
        total
    }

    pub fn unit_lane_remaining(&self, id: EntityId) -> Option<f64> {
        self.unit(id).map(|u| self.lane_remaining(u.team, u.pos, u.waypoint))
    }

    /// Advances one tick. Commands for heroes that are absent or dead are ignored;
    /// heroes without a command hold.
    pub fn step(&mut self, commands: &BTreeMap<EntityId, Command>) -> Vec<Event> {
        let mut ev = Vec::new();
        if self.winner.is_none() {
            let now = self.clock;
            while self.tick_index >= self.next_wave_tick {
                self.spawn_wave(&mut ev);
            }
            self.tower_phase(now, &mut ev);
            self.creep_phase(now, &mut ev);
            self.hero_phase(now, commands, &mut ev);
            self.cleanup(&mut ev);
            self.winner = check_victory(self);
        }
        self.tick_index += 1;
        self.clock = self.tick_index as f64 * self.dt;
        ev
    }

    /// Spawns one wave for both teams and schedules the next one.
    pub fn spawn_wave(&mut self, ev: &mut Vec<Event>) {
        let w = self.cfg.wave.clone();
        let n = w.melee_count + w.ranged_count;
        for team in [Team::Blue, Team::Red] {
            let base = self.base(team);
            let dir = self.cfg.map.lane_direction(team);
            for k in 0..n {
                let (kind, stats) = if k < w.melee_count {
                    (UnitKind::MeleeCreep, self.cfg.stats.melee_creep)
                } else {
                    (UnitKind::RangedCreep, self.cfg.stats.ranged_creep)
                };
                let jitter = if w.lateral_jitter > 0.0 {
                    self.rng.random_range(-w.lateral_jitter..=w.lateral_jitter)
                } else {
                    0.0
                };
                // melee lead, ranged trail towards the base
                let ahead = w.spawn_spacing * f64::from(n - k);
                let pos = self.bounds.pos(base.x + dir * ahead, base.y + jitter);
                let id = EntityId(self.next_id);
                self.next_id += 1;
                let unit = make_unit(id, team, kind, pos, &stats);
                self.push(ev, EventKind::Spawn, Some(id), None, Some(unit.hp));
                self.units.push(unit);
            }
        }
        self.next_wave_tick += self.cfg.ticks(w.period).max(1);
    }

    fn push(&self, ev: &mut Vec<Event>, kind: EventKind, actor: Option<EntityId>, target: Option<EntityId>, value: Option<f64>) {
        ev.push(Event {
            tick: self.tick_index,
            time: self.clock,
            kind,
            actor,
            target,
            value,
        });
    }

    fn locate(&self, id: EntityId) -> Option<Slot> {
        if let Ok(i) = self.units.binary_search_by_key(&id, |u| u.id) {
            return Some(Slot::Unit(i));
        }
        if let Some(i) = self.towers.iter().position(|t| t.id == id) {
            return Some(Slot::Tower(i));
        }
        self.nexus.iter().position(|n| n.id == id).map(Slot::Nexus)
    }

    /// Team, position and liveness of any attackable entity.
    fn target_info(&self, id: EntityId) -> Option<(Team, WorldPos, bool)> {
        Some(match self.locate(id)? {
            Slot::Unit(i) => {
                let u = &self.units[i];
                (u.team, u.pos, u.is_alive())
            }
            Slot::Tower(i) => {
                let t = &self.towers[i];
                (t.team, t.pos, t.is_alive())
            }
            Slot::Nexus(i) => {
                let n = &self.nexus[i];
                (n.team, n.pos, n.hp > 0.0)
            }
        })
    }

    fn is_hero(&self, id: EntityId) -> bool {
        self.hero_spawns.contains_key(&id)
    }

    fn apply_damage(&mut self, source: EntityId, target: EntityId, amount: f64, ev: &mut Vec<Event>) {
        let Some(slot) = self.locate(target) else { return };
        let now = self.clock;
        match slot {
            Slot::Unit(i) => {
                let u = &mut self.units[i];
                if !u.is_alive() {
                    return;
                }
                let dealt = amount.min(u.hp);
                u.hp = (u.hp - dealt).max(0.0);
                let dead = u.hp <= 0.0;
                if dead {
                    u.hp = 0.0;
                }
                let kind = u.kind;
                self.push(ev, EventKind::Damage, Some(source), Some(target), Some(dealt));
                if kind == UnitKind::Hero && self.is_hero(source) {
                    self.hero_damage_log.entry(target).or_default().push((source, now));
                }
                if !dead {
                    return;
                }
                self.push(ev, EventKind::UnitDeath, Some(source), Some(target), None);
                if kind.is_creep() {
                    self.push(ev, EventKind::LastHit, Some(source), Some(target), None);
                    if let Some(s) = self.stats.get_mut(&source) {
                        s.last_hits += 1;
                    }
                } else {
                    self.stats.entry(target).or_default().deaths += 1;
                    if let Some(s) = self.stats.get_mut(&source) {
                        s.kills += 1;
                    }
                    let log = self.hero_damage_log.remove(&target).unwrap_or_default();
                    let helpers: BTreeSet<EntityId> = log
                        .into_iter()
                        .filter(|&(h, t)| h != source && now - t <= ASSIST_WINDOW + TIME_EPS)
                        .map(|(h, _)| h)
                        .collect();
                    for h in helpers {
                        self.push(ev, EventKind::Assist, Some(h), Some(target), None);
                        if let Some(s) = self.stats.get_mut(&h) {
                            s.assists += 1;
                        }
                    }
                }
            }
            Slot::Tower(i) => {
                let t = &mut self.towers[i];
                if !t.is_alive() {
                    return;
                }
                let dealt = amount.min(t.hp);
                t.hp = (t.hp - dealt).max(0.0);
                let dead = t.hp <= 0.0;
                self.push(ev, EventKind::Damage, Some(source), Some(target), Some(dealt));
                if dead {
                    self.push(ev, EventKind::TowerDeath, Some(source), Some(target), None);
                }
            }
            Slot::Nexus(i) => {
                let n = &mut self.nexus[i];
                if n.hp <= 0.0 {
                    return;
                }
                let dealt = amount.min(n.hp);
                n.hp = (n.hp - dealt).max(0.0);
                let dead = n.hp <= 0.0;
                self.push(ev, EventKind::Damage, Some(source), Some(target), Some(dealt));
                if dead {
                    self.push(ev, EventKind::NexusDeath, Some(source), Some(target), None);
                }
            }
        }
    }

    fn tower_phase(&mut self, now: f64, ev: &mut Vec<Event>) {
        for ti in 0..self.towers.len() {
            if !self.towers[ti].is_alive() {
                continue;
            }
            self.refresh_entries(ti);
            let pick = tower_select_target(&self.towers[ti], self);
            let tower = &mut self.towers[ti];
            if pick != tower.locked_target {
                tower.locked_target = pick;
                let id = tower.id;
                self.push(ev, EventKind::AggroChange, Some(id), pick, None);
            }
            let state = match pick {
                None => AggroState::Idle,
                Some(t) if self.is_hero(t) => AggroState::ActiveAggro,
                Some(_) => AggroState::PassiveAggro,
            };
            let tower = &mut self.towers[ti];
            tower.state = state;
            let Some(target) = pick else { continue };
            if now + TIME_EPS >= tower.last_attack_time + tower.attack_period {
                tower.last_attack_time = now;
                let (id, dmg) = (tower.id, tower.damage);
                self.push(ev, EventKind::Attack, Some(id), Some(target), None);
                self.apply_damage(id, target, dmg, ev);
            }
        }
    }

    fn refresh_entries(&mut self, ti: usize) {
        let tick = self.tick_index;
        let (team, pos, range) = {
            let t = &self.towers[ti];
            (t.team, t.pos, t.range)
        };
        let inside: BTreeSet<EntityId> = self
            .units
            .iter()
            .filter(|u| u.team != team && u.is_alive() && u.pos.distance(pos) <= range)
            .map(|u| u.id)
            .collect();
        let entries = &mut self.towers[ti].entries;
        entries.retain(|(id, _)| inside.contains(id));
        for id in inside {
            if !entries.iter().any(|(e, _)| *e == id) {
                entries.push((id, tick));
            }
        }
    }

    fn creep_phase(&mut self, now: f64, ev: &mut Vec<Event>) {
        for i in 0..self.units.len() {
            let u = &self.units[i];
            if u.kind == UnitKind::Hero || !u.is_alive() {
                continue;
            }
            if self.progress_pending(i, now, ev) {
                continue;
            }
            let target = self.creep_acquire(i);
            self.units[i].target = target;
            match target {
                Some(t) => self.engage(i, t, now, ev, false),
                None => self.march(i),
            }
        }
    }

    /// Resolves a finished windup. Returns true while the unit is still winding up.
    fn progress_pending(&mut self, i: usize, now: f64, ev: &mut Vec<Event>) -> bool {
        let Some(p) = self.units[i].pending else { return false };
        if now + TIME_EPS < p.resolve_at {
            return true;
        }
        self.units[i].pending = None;
        self.resolve_attack(i, p.target, ev);
        false
    }

    fn resolve_attack(&mut self, i: usize, target: EntityId, ev: &mut Vec<Event>) {
        let (id, pos, range, dmg) = {
            let u = &self.units[i];
            (u.id, u.pos, u.range, u.attack_damage)
        };
        match self.target_info(target) {
            Some((_, tpos, true)) if tpos.distance(pos) <= range + TIME_EPS => {
                self.apply_damage(id, target, dmg, ev);
            }
            _ => self.push(ev, EventKind::Miss, Some(id), Some(target), None),
        }
    }

    fn start_attack(&mut self, i: usize, target: EntityId, now: f64, ev: &mut Vec<Event>) {
        let u = &mut self.units[i];
        u.last_attack_time = now;
        u.attack_lock_until = now + u.windup;
        u.target = Some(target);
        let (id, windup) = (u.id, u.windup);
        self.push(ev, EventKind::Attack, Some(id), Some(target), None);
        if windup <= 0.0 {
            self.resolve_attack(i, target, ev);
        } else {
            self.units[i].pending = Some(PendingAttack {
                target,
                resolve_at: now + windup,
            });
        }
    }

    /// Attack when in range and ready, otherwise close the distance.
    fn engage(&mut self, i: usize, target: EntityId, now: f64, ev: &mut Vec<Event>, log_moves: bool) {
        let Some((_, tpos, true)) = self.target_info(target) else { return };
        let u = &self.units[i];
        let d = u.pos.distance(tpos);
        if d <= u.range {
            if u.attack_ready(now) {
                self.start_attack(i, target, now, ev);
            }
            return;
        }
        let step = (u.move_speed * self.dt).min(d - u.range * 0.98);
        let from = u.pos;
        let to = self.bounds.clamp(from.step_towards(tpos, step));
        self.units[i].pos = to;
        if log_moves {
            let id = self.units[i].id;
            self.push(ev, EventKind::Move, Some(id), None, Some(from.distance(to)));
        }
    }

    fn creep_acquire(&self, i: usize) -> Option<EntityId> {
        let me = &self.units[i];
        // creeps before towers before heroes before the nexus, nearest first
        let mut best: Option<(u8, f64, EntityId)> = None;
        let mut offer = |class: u8, d: f64, id: EntityId| {
            if d <= me.aggro_radius && best.is_none_or(|b| (class, d, id) < b) {
                best = Some((class, d, id));
            }
        };
        for u in &self.units {
            if u.team != me.team && u.is_alive() {
                let class = if u.kind.is_creep() { 0 } else { 2 };
                offer(class, u.pos.distance(me.pos), u.id);
            }
        }
        for t in &self.towers {
            if t.team != me.team && t.is_alive() {
                offer(1, t.pos.distance(me.pos), t.id);
            }
        }
        let n = self.nexus(me.team.opponent());
        if n.hp > 0.0 {
            offer(3, n.pos.distance(me.pos), n.id);
        }
        let best = best?;
        if let Some(cur) = me.target {
            if let Some((team, pos, true)) = self.target_info(cur) {
                let class = self.class_of(cur);
                if team != me.team && pos.distance(me.pos) <= me.aggro_radius && class <= best.0 {
                    return Some(cur);
                }
            }
        }
        Some(best.2)
    }

    fn class_of(&self, id: EntityId) -> u8 {
        match self.locate(id) {
            Some(Slot::Unit(i)) if self.units[i].kind.is_creep() => 0,
            Some(Slot::Tower(_)) => 1,
            Some(Slot::Unit(_)) => 2,
            _ => 3,
        }
    }

    fn march(&mut self, i: usize) {
        let team = self.units[i].team;
        let lane_len = self.lanes[team.index()].len();
        let u = &mut self.units[i];
        let mut budget = u.move_speed * self.dt;
        while u.waypoint < lane_len && budget > 0.0 {
            let wp = self.lanes[team.index()][u.waypoint];
            let d = u.pos.distance(wp);
            if d <= budget {
                u.pos = wp;
                budget -= d;
                if u.waypoint + 1 < lane_len {
                    u.waypoint += 1;
                } else {
                    break;
                }
            } else {
                u.pos = u.pos.step_towards(wp, budget);
                budget = 0.0;
            }
        }
        u.pos = self.bounds.clamp(u.pos);
    }

    fn hero_phase(&mut self, now: f64, commands: &BTreeMap<EntityId, Command>, ev: &mut Vec<Event>) {
        for i in 0..self.units.len() {
            let u = &self.units[i];
            if u.kind != UnitKind::Hero || !u.is_alive() {
                continue;
            }
            let id = u.id;
            let winding = self.progress_pending(i, now, ev);
            let cmd = commands.get(&id).copied().unwrap_or(Command::Hold);
            match cmd {
                Command::Hold => {}
                Command::Move(p) => {
                    if let Some(p) = self.units[i].pending.take() {
                        self.push(ev, EventKind::Miss, Some(id), Some(p.target), None);
                    }
                    let u = &mut self.units[i];
                    u.target = None;
                    let from = u.pos;
                    let to = self.bounds.clamp(from.step_towards(self.bounds.clamp(p), u.move_speed * self.dt));
                    u.pos = to;
                    self.push(ev, EventKind::Move, Some(id), None, Some(from.distance(to)));
                }
                Command::Attack(t) => {
                    let team = self.units[i].team;
                    match self.target_info(t) {
                        Some((tt, _, true)) if tt != team => {
                            self.units[i].target = Some(t);
                            if !winding {
                                self.engage(i, t, now, ev, true);
                            }
                        }
                        _ => self.push(ev, EventKind::Rejected, Some(id), Some(t), None),
                    }
                }
            }
        }
    }

    fn cleanup(&mut self, ev: &mut Vec<Event>) {
        let respawn_ticks = self.cfg.ticks(self.cfg.stats.hero_respawn);
        let tick = self.tick_index;
        let mut i = 0;
        while i < self.units.len() {
            if self.units[i].is_alive() {
                i += 1;
                continue;
            }
            let unit = self.units.remove(i);
            if unit.kind == UnitKind::Hero {
                let spawn = self.hero_spawns[&unit.id];
                self.fallen.push(Fallen {
                    unit,
                    respawn_tick: tick + respawn_ticks.max(1),
                    spawn,
                });
            }
        }
        self.towers.retain(Tower::is_alive);

        let mut back = Vec::new();
        self.fallen.retain(|f| {
            if f.respawn_tick <= tick + 1 {
                back.push(f.clone());
                false
            } else {
                true
            }
        });
        for f in back {
            let mut u = f.unit;
            u.hp = u.max_hp;
            u.pos = f.spawn;
            u.pending = None;
            u.target = None;
            u.last_attack_time = f64::NEG_INFINITY;
            u.attack_lock_until = f64::NEG_INFINITY;
            let id = u.id;
            let at = self.units.partition_point(|x| x.id < id);
            self.units.insert(at, u);
            self.push(ev, EventKind::Spawn, Some(id), None, Some(self.units[at].hp));
        }
    }
}

fn make_unit(id: EntityId, team: Team, kind: UnitKind, pos: WorldPos, s: &UnitStats) -> Unit {
    Unit {
        id,
        team,
        kind,
        pos,
        hp: s.hp,
        max_hp: s.hp,
        attack_damage: s.attack_damage,
        attack_period: s.attack_period,
        windup: s.windup,
        range: s.range,
        move_speed: s.move_speed,
        aggro_radius: s.aggro_radius,
        last_attack_time: f64::NEG_INFINITY,
        attack_lock_until: f64::NEG_INFINITY,
        target: None,
        pending: None,
        waypoint: 0,
    }
}

/// Picks the tower's target.
///
/// A live, in-range locked target is kept unless an enemy hero attacking an
/// allied hero is in range. Otherwise: such a hero first, then the enemy that
/// entered range earliest; same-tick entries prefer creeps, then the nearest,
/// then the lowest id.
pub fn tower_select_target(tower: &Tower, world: &World) -> Option<EntityId> {
    let in_range = |id: EntityId| -> Option<&Unit> {
        world
            .unit(id)
            .filter(|u| u.is_alive() && u.team != tower.team && u.pos.distance(tower.pos) <= tower.range)
    };
    let attacking_ally_hero = |u: &Unit| {
        u.kind == UnitKind::Hero
            && u.target
                .and_then(|t| world.unit(t))
                .is_some_and(|v| v.kind == UnitKind::Hero && v.team == tower.team && v.is_alive())
    };
    let entry_tick = |id: EntityId| {
        tower
            .entries
            .iter()
            .find(|(e, _)| *e == id)
            .map_or(world.tick_index(), |(_, t)| *t)
    };
    let candidates: Vec<&Unit> = world
        .units()
        .iter()
        .filter(|u| u.is_alive() && u.team != tower.team && u.pos.distance(tower.pos) <= tower.range)
        .collect();
    let priority: Vec<&Unit> = candidates.iter().copied().filter(|u| attacking_ally_hero(u)).collect();

    if let Some(cur) = tower.locked_target.and_then(in_range) {
        if priority.is_empty() || priority.iter().any(|u| u.id == cur.id) {
            return Some(cur.id);
        }
    }
    let pool = if priority.is_empty() { candidates } else { priority };
    pool.into_iter()
        .min_by(|a, b| {
            entry_tick(a.id)
                .cmp(&entry_tick(b.id))
                .then(a.kind.is_creep().cmp(&b.kind.is_creep()).reverse())
                .then(a.pos.distance(tower.pos).total_cmp(&b.pos.distance(tower.pos)))
                .then(a.id.cmp(&b.id))
        })
        .map(|u| u.id)
}

/// The team whose opponent's nexus has fallen.
pub fn check_victory(world: &World) -> Option<Team> {
    [Team::Blue, Team::Red]
        .into_iter()
        .find(|&team| world.nexus(team.opponent()).hp <= 0.0)
}
