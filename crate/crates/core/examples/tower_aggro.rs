//! Follows the first enemy tower through a solo match and prints every
//! change of its target together with the resulting aggro state.
//!
//! cargo run --release --example tower_aggro -- [seed] [minutes]

use lanecraft::config::MatchConfig;
use lanecraft::experiments::Match;
use lanecraft::influence::AggroState;
use lanecraft::sim::{EventKind, Team};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let minutes: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(8.0);
    let cfg = MatchConfig::default();
    let mut m = Match::new(&cfg, seed)?;
    let tower = m.world().towers().iter().filter(|t| t.team == Team::Red).min_by(|a, b| a.pos.x.total_cmp(&b.pos.x)).map(|t| t.id).expect("a red tower");
    let mut counts = [0usize; 3];
    while !m.is_over() && m.world().clock() < minutes * 60.0 {
        let events = m.step()?.to_vec();
        let w = m.world();
        let Some(t) = w.tower(tower) else { break };
        counts[t.state as usize] += 1;
        for e in events.iter().filter(|e| e.actor == Some(tower)) {
            match e.kind {
                EventKind::AggroChange => {
                    let what = e.target.and_then(|id| w.unit(id)).map_or("nothing".to_owned(), |u| format!("{:?} {:?}", u.team, u.kind));
                    println!("{:7.2}s  target -> {what:<22} state {:?}", e.time, t.state);
                }
                EventKind::TowerDeath => println!("{:7.2}s  tower destroyed", e.time),
                _ => {}
            }
        }
        if t.hp <= 0.0 {
            break;
        }
    }
    let total: usize = counts.iter().sum::<usize>().max(1);
    for (state, n) in [AggroState::Idle, AggroState::PassiveAggro, AggroState::ActiveAggro].iter().zip(counts) {
        println!("{state:?}: {:.1}% of ticks", 100.0 * n as f64 / total as f64);
    }
    Ok(())
}
