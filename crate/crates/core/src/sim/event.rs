//! Simulation events and the JSON Lines replay format.
//!
//! Each replay line is one [`Event`] with the fields `tick, time, kind, actor,
//! target, value` in that order. The SHA-256 of the concatenated lines is the
//! replay hash.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{EntityId, HeroStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Spawn,
    Attack,
    Damage,
    /// An attack whose target died or left range before the windup completed,
    /// or that was cancelled by a move.
    Miss,
    LastHit,
    UnitDeath,
    TowerDeath,
    NexusDeath,
    AggroChange,
    Move,
    /// A command referencing an unknown, dead or friendly target.
    Rejected,
    Assist,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub tick: u64,
    pub time: f64,
    pub kind: EventKind,
    pub actor: Option<EntityId>,
    pub target: Option<EntityId>,
    pub value: Option<f64>,
}

/// One replay line, newline included.
pub fn replay_line(event: &Event) -> String {
    let mut s = serde_json::to_string(event).expect("events always serialize");
    s.push('\n');
    s
}

/// Streams replay lines into a digest and, optionally, a writer.
pub struct ReplayHasher<W = io::Sink> {
    hasher: Sha256,
    sink: Option<W>,
    events: u64,
}

impl ReplayHasher<io::Sink> {
    pub fn new() -> Self {
        Self {
            hasher: Sha256::new(),
            sink: None,
            events: 0,
        }
    }
}

impl Default for ReplayHasher<io::Sink> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Write> ReplayHasher<W> {
    pub fn with_sink(sink: W) -> Self {
        Self {
            hasher: Sha256::new(),
            sink: Some(sink),
            events: 0,
        }
    }

    pub fn push(&mut self, event: &Event) -> io::Result<()> {
        let line = replay_line(event);
        self.hasher.update(line.as_bytes());
        self.events += 1;
        if let Some(sink) = self.sink.as_mut() {
            sink.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn events(&self) -> u64 {
        self.events
    }

    /// Hex digest, plus the sink if one was attached.
    pub fn finish(self) -> io::Result<(String, Option<W>)> {
        let digest = hex::encode(self.hasher.finalize());
        let sink = match self.sink {
            Some(mut s) => {
                s.flush()?;
                Some(s)
            }
            None => None,
        };
        Ok((digest, sink))
    }
}

/// Rebuilds per-hero statistics from an event stream.
pub fn reduce_stats<'a>(
    heroes: &BTreeSet<EntityId>,
    events: impl IntoIterator<Item = &'a Event>,
) -> BTreeMap<EntityId, HeroStats> {
    let mut out: BTreeMap<EntityId, HeroStats> = heroes.iter().map(|&h| (h, HeroStats::default())).collect();
    for e in events {
        match e.kind {
            EventKind::LastHit => {
                if let Some(s) = e.actor.and_then(|a| out.get_mut(&a)) {
                    s.last_hits += 1;
                }
            }
            EventKind::UnitDeath => {
                let Some(victim) = e.target.filter(|t| heroes.contains(t)) else {
                    continue;
                };
                out.get_mut(&victim).expect("hero present").deaths += 1;
                if let Some(s) = e.actor.and_then(|a| out.get_mut(&a)) {
                    s.kills += 1;
                }
            }
            EventKind::Assist => {
                if let Some(s) = e.actor.and_then(|a| out.get_mut(&a)) {
                    s.assists += 1;
                }
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_has_stable_field_order() {
        let e = Event {
            tick: 3,
            time: 0.1,
            kind: EventKind::LastHit,
            actor: Some(EntityId(7)),
            target: Some(EntityId(9)),
            value: None,
        };
        assert_eq!(
            replay_line(&e),
            "{\"tick\":3,\"time\":0.1,\"kind\":\"last_hit\",\"actor\":7,\"target\":9,\"value\":null}\n"
        );
        let back: Event = serde_json::from_str(replay_line(&e).trim_end()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn hasher_tees_into_sink() {
        let e = Event {
            tick: 0,
            time: 0.0,
            kind: EventKind::Spawn,
            actor: Some(EntityId(1)),
            target: None,
            value: Some(450.0),
        };
        let mut a = ReplayHasher::new();
        let mut b = ReplayHasher::with_sink(Vec::new());
        a.push(&e).unwrap();
        b.push(&e).unwrap();
        let (ha, _) = a.finish().unwrap();
        let (hb, sink) = b.finish().unwrap();
        assert_eq!(ha, hb);
        assert_eq!(String::from_utf8(sink.unwrap()).unwrap(), replay_line(&e));
    }
}
