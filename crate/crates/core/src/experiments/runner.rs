use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::agent::{decide, observe, AgentState, HeroProfile};
use crate::config::{Controller, MatchConfig};
use crate::influence::{epsilon_radius, FeatureView};
use crate::sim::{Command, EntityId, Event, HeroSpawn, HeroStats, ReplayHasher, Team, UnitKind, World};

use super::{creeps_per_minute, ExperimentError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeroRecord {
    pub id: EntityId,
    pub team: Team,
    pub profile: String,
    pub controller: Controller,
    pub kills: u32,
    pub deaths: u32,
    pub assists: u32,
    pub last_hits: u32,
}

/// Outcome of one match. The headline numbers refer to the first
/// agent-controlled hero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchStats {
    pub seed: u64,
    pub profile: String,
    pub winner: Option<Team>,
    pub agent_team: Team,
    pub duration: f64,
    pub kills: u32,
    pub deaths: u32,
    pub assists: u32,
    pub last_hits: u32,
    pub cpm: f64,
    pub replay_hash: String,
    pub events: u64,
    /// Ticks the agent spent inside the forbidden radius of a hostile tower.
    pub safety_violations: u64,
    pub heroes: Vec<HeroRecord>,
}

impl MatchStats {
    pub fn agent_won(&self) -> bool {
        self.winner == Some(self.agent_team)
    }
}

/// A match in progress: the world plus one controller per hero.
pub struct Match<W: Write = std::io::Sink> {
    world: World,
    seed: u64,
    heroes: Vec<(EntityId, Controller)>,
    agents: BTreeMap<EntityId, AgentState>,
    profiles: BTreeMap<EntityId, HeroProfile>,
    lead: EntityId,
    hasher: ReplayHasher<W>,
    safety_violations: u64,
    last_events: Vec<Event>,
    last_view: Option<FeatureView>,
}

impl Match<std::io::Sink> {
    pub fn new(cfg: &MatchConfig, seed: u64) -> Result<Self, ExperimentError> {
        Self::build(cfg, seed, ReplayHasher::new())
    }
}

impl<W: Write> Match<W> {
    /// A match that also writes its replay lines to `sink`.
    pub fn with_replay(cfg: &MatchConfig, seed: u64, sink: W) -> Result<Self, ExperimentError> {
        Self::build(cfg, seed, ReplayHasher::with_sink(sink))
    }

    fn build(cfg: &MatchConfig, seed: u64, hasher: ReplayHasher<W>) -> Result<Self, ExperimentError> {
        cfg.validate()?;
        if !cfg.heroes.iter().any(|h| h.controller == Controller::Agent) {
            return Err(ExperimentError::NoAgent);
        }
        // profile draws use their own stream so the world RNG is untouched
        let mut pick = ChaCha8Rng::seed_from_u64(seed);
        pick.set_stream(1);
        let mut chosen = Vec::with_capacity(cfg.heroes.len());
        for h in &cfg.heroes {
            let p = match &h.profile {
                Some(name) => cfg.profiles.get(name).expect("validated").clone(),
                None => {
                    let options = cfg.eligible_profiles(h);
                    options[pick.random_range(0..options.len())].clone()
                }
            };
            chosen.push(p);
        }
        let spawns: Vec<HeroSpawn> = cfg
            .heroes
            .iter()
            .map(|h| HeroSpawn {
                team: h.team,
                pos: h.spawn,
                stats: cfg.hero_stats(h),
            })
            .collect();
        let world = World::new(&cfg.sim(), seed, &spawns)?;
        let spec = cfg.grid_spec().expect("validated");
        let ids: Vec<EntityId> = world.hero_ids().into_iter().collect();
        let mut heroes = Vec::new();
        let mut agents = BTreeMap::new();
        let mut profiles = BTreeMap::new();
        for ((id, setup), profile) in ids.into_iter().zip(&cfg.heroes).zip(chosen) {
            heroes.push((id, setup.controller));
            profiles.insert(id, profile);
            if setup.controller == Controller::Agent {
                agents.insert(id, AgentState::new(id, &cfg.agent, spec));
            }
        }
        let lead = *agents.keys().next().expect("checked above");
        Ok(Self {
            world,
            seed,
            heroes,
            agents,
            profiles,
            lead,
            hasher,
            safety_violations: 0,
            last_events: Vec::new(),
            last_view: None,
        })
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    /// The first agent-controlled hero.
    pub fn lead(&self) -> EntityId {
        self.lead
    }

    pub fn profile(&self, hero: EntityId) -> Option<&HeroProfile> {
        self.profiles.get(&hero)
    }

    pub fn agent_state(&self, hero: EntityId) -> Option<&AgentState> {
        self.agents.get(&hero)
    }

    /// Events emitted by the latest tick.
    pub fn last_events(&self) -> &[Event] {
        &self.last_events
    }

    /// The lead agent's view at the latest decision, if it was alive.
    pub fn last_view(&self) -> Option<&FeatureView> {
        self.last_view.as_ref()
    }

    pub fn is_over(&self) -> bool {
        self.world.is_over()
    }

    /// Decides for every hero and advances the world by one tick.
    pub fn step(&mut self) -> Result<&[Event], ExperimentError> {
        let now = self.world.clock();
        let mut commands = BTreeMap::new();
        self.last_view = None;
        for &(id, controller) in &self.heroes {
            let cmd = match controller {
                Controller::Agent => {
                    let Some(view) = observe(&self.world, id, &self.profiles) else { continue };
                    let state = self.agents.get_mut(&id).expect("agent state exists");
                    let cmd = decide(&view, state, now);
                    if id == self.lead {
                        self.last_view = Some(view);
                    }
                    cmd
                }
                Controller::Chaser { commit } => chase(&self.world, id, commit, now),
                Controller::Idle => Command::Hold,
            };
            commands.insert(id, cmd);
        }
        self.last_events = self.world.step(&commands);
        for e in &self.last_events {
            self.hasher.push(e)?;
        }
        if self.in_forbidden_zone() {
            self.safety_violations += 1;
        }
        Ok(&self.last_events)
    }

    // Whether the lead agent's cell lies within the sentinel radius of a tower
    // that is hostile towards it.
    fn in_forbidden_zone(&self) -> bool {
        let Some(view) = observe(&self.world, self.lead, &self.profiles) else {
            return false;
        };
        let spec = self.agents[&self.lead].grid.spec();
        let cell = spec.cell_center(spec.world_to_cell(view.agent.pos)).expect("in bounds");
        view.enemy_towers.iter().any(|t| {
            if t.context.is_favorable() {
                return false;
            }
            let eps = epsilon_radius(t, view.agent.hp, view.agent.move_speed);
            eps > 0.0 && cell.distance(t.pos) <= eps
        })
    }

    pub fn run(mut self) -> Result<(MatchStats, Option<W>), ExperimentError> {
        while !self.world.is_over() {
            self.step()?;
        }
        self.finish()
    }

    pub fn finish(self) -> Result<(MatchStats, Option<W>), ExperimentError> {
        let events = self.hasher.events();
        let (replay_hash, sink) = self.hasher.finish()?;
        let stats = self.world.stats();
        let record = |id: EntityId, controller: Controller| {
            let s = stats.get(&id).copied().unwrap_or(HeroStats::default());
            let team = self.world.hero_team(id).expect("hero exists");
            HeroRecord {
                id,
                team,
                profile: self.profiles[&id].name.clone(),
                controller,
                kills: s.kills,
                deaths: s.deaths,
                assists: s.assists,
                last_hits: s.last_hits,
            }
        };
        let heroes: Vec<HeroRecord> = self.heroes.iter().map(|&(id, c)| record(id, c)).collect();
        let lead = heroes.iter().find(|h| h.id == self.lead).expect("lead recorded").clone();
        let duration = self.world.clock();
        let cpm = creeps_per_minute(lead.last_hits, duration).unwrap_or(0.0);
        Ok((
            MatchStats {
                seed: self.seed,
                profile: lead.profile.clone(),
                winner: self.world.winner(),
                agent_team: lead.team,
                duration,
                kills: lead.kills,
                deaths: lead.deaths,
                assists: lead.assists,
                last_hits: lead.last_hits,
                cpm,
                replay_hash,
                events,
                safety_violations: self.safety_violations,
                heroes,
            },
            sink,
        ))
    }
}

fn chase(world: &World, me: EntityId, commit: f64, now: f64) -> Command {
    let Some(u) = world.unit(me).filter(|u| u.is_alive()) else {
        return Command::Hold;
    };
    if u.pending.is_some() || now + 1e-9 < u.attack_lock_until + commit {
        return Command::Hold;
    }
    world
        .units()
        .iter()
        .filter(|o| o.kind == UnitKind::Hero && o.team != u.team && o.is_alive())
        .min_by(|a, b| a.pos.distance(u.pos).total_cmp(&b.pos.distance(u.pos)).then(a.id.cmp(&b.id)))
        .map_or(Command::Hold, |o| Command::Attack(o.id))
}

/// Runs one match to victory or the time cap.
pub fn run_match(cfg: &MatchConfig, seed: u64) -> Result<MatchStats, ExperimentError> {
    Match::new(cfg, seed)?.run().map(|(s, _)| s)
}

/// Like [`run_match`], also streaming the replay into `sink`.
pub fn run_match_with_replay<W: Write>(cfg: &MatchConfig, seed: u64, sink: W) -> Result<(MatchStats, W), ExperimentError> {
    let (stats, sink) = Match::with_replay(cfg, seed, sink)?.run()?;
    Ok((stats, sink.expect("sink attached")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    fn short(cap: f64) -> MatchConfig {
        let mut cfg = MatchConfig::default();
        cfg.time_cap = cap;
        cfg
    }

    #[test]
    fn one_second_cap_has_no_winner() {
        let s = run_match(&short(1.0), 4).unwrap();
        assert_eq!(s.winner, None);
        assert!((s.duration - 1.0).abs() < 1e-9);
        assert_eq!((s.last_hits, s.cpm, s.deaths), (0, 0.0, 0));
        assert!(!s.agent_won());
    }

    #[test]
    fn replay_hash_is_the_digest_of_the_lines() {
        let (s, bytes) = run_match_with_replay(&short(20.0), 2, Vec::new()).unwrap();
        assert_eq!(s.replay_hash, hex::encode(Sha256::digest(&bytes)));
        let lines = bytes.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count() as u64;
        assert_eq!(lines, s.events);
        assert!(s.events > 0);
    }

    #[test]
    fn same_seed_same_hash() {
        let cfg = short(30.0);
        let a = run_match(&cfg, 11).unwrap();
        let b = run_match(&cfg, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn matches_need_an_agent() {
        let mut cfg = short(5.0);
        cfg.heroes[0].controller = Controller::Idle;
        assert!(matches!(Match::new(&cfg, 1), Err(ExperimentError::NoAgent)));
    }

    #[test]
    fn stepping_exposes_the_view_and_events() {
        let mut m = Match::new(&short(5.0), 1).unwrap();
        let lead = m.lead();
        m.step().unwrap();
        assert_eq!(m.last_view().unwrap().agent.id, lead);
        assert!(m.agent_state(lead).unwrap().nav_target.is_some());
        assert!(m.profile(lead).is_some());
        assert!(m.last_events().iter().all(|e| e.tick == 0));
    }

    #[test]
    fn chaser_swings_then_commits() {
        let cfg = crate::experiments::duel_config();
        let mut m = Match::new(&cfg, 1).unwrap();
        let chaser = m.world().hero_ids().into_iter().find(|&h| h != m.lead()).unwrap();
        let mut swings = Vec::new();
        while m.world().clock() < 20.0 {
            let t = m.world().clock();
            if m.step().unwrap().iter().any(|e| e.kind == crate::sim::EventKind::Attack && e.actor == Some(chaser)) {
                swings.push(t);
            }
        }
        assert!(!swings.is_empty());
        let cfg_stats = cfg.heroes[1].stats.unwrap();
        for w in swings.windows(2) {
            assert!(w[1] - w[0] + 1e-9 >= cfg_stats.attack_period);
        }
    }
}
