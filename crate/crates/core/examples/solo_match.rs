//! Plays one solo match (agent against creeps and towers only) and prints a
//! minute-by-minute trace of the agent followed by the final stats.
//!
//! cargo run --release --example solo_match -- [seed]

use lanecraft::config::MatchConfig;
use lanecraft::experiments::Match;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let cfg = MatchConfig::default();
    let mut m = Match::new(&cfg, seed)?;
    let hero = m.lead();
    let mut next_report = 0.0;
    while !m.is_over() {
        m.step()?;
        let w = m.world();
        if w.clock() >= next_report {
            next_report += 60.0;
            let (pos, hp) = w.unit(hero).map_or(("dead".to_owned(), 0.0), |u| (format!("({:.0}, {:.0})", u.pos.x, u.pos.y), u.hp));
            let towers: Vec<String> = w.towers().iter().map(|t| format!("{:?}@{:.0}:{:.0}", t.team, t.pos.x, t.hp)).collect();
            let lh = w.stats().get(&hero).map_or(0, |s| s.last_hits);
            println!(
                "{:>5.1} min  hero {pos} hp {hp:.0}  lh {lh}  creeps {}  towers [{}]",
                w.clock() / 60.0,
                w.units().len() - 1,
                towers.join(" ")
            );
        }
    }
    let (stats, _) = m.finish()?;
    println!("{}", serde_json::to_string_pretty(&stats)?);
    Ok(())
}
