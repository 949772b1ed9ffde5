//! Builds a match config in code: a custom hero profile, a faster hero, a
//! tweaked influence tuning and a shorter time cap. Shows validation errors
//! for a broken variant, the JSON form, and plays one match.
//!
//! cargo run --release --example custom_config

use lanecraft::agent::ProfileTable;
use lanecraft::config::{HeroSetup, MatchConfig};
use lanecraft::experiments::run_match;
use lanecraft::sim::Team;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = MatchConfig::default();
    cfg.profiles = ProfileTable::from_json(
        r#"[
            { "name": "ranged-carry", "effective_range": 650, "tactical_value": 500, "is_melee": false },
            { "name": "long-bow", "effective_range": 720, "tactical_value": 420, "is_melee": false }
        ]"#,
    )?;
    let mut hero = cfg.stats.hero;
    hero.move_speed = 345.0;
    hero.range = 600.0;
    cfg.heroes = vec![HeroSetup {
        profile: Some("long-bow".into()),
        stats: Some(hero),
        ..HeroSetup::agent(Team::Blue)
    }];
    cfg.agent.influence.creep_falloff_extent = 200.0;
    cfg.time_cap = 20.0 * 60.0;
    cfg.validate()?;

    let mut broken = cfg.clone();
    broken.grid.resolution = 0.0;
    broken.heroes[0].profile = Some("nobody".into());
    if let Err(e) = broken.validate() {
        println!("rejected: {e}");
    }

    let json = cfg.to_json();
    assert_eq!(MatchConfig::from_json(&json)?, cfg);
    println!("config is {} bytes of JSON", json.len());

    let stats = run_match(&cfg, 7)?;
    println!(
        "{}: winner {:?} after {:.1} min, {} last hits ({:.2} cpm), {} deaths",
        stats.profile,
        stats.winner,
        stats.duration / 60.0,
        stats.last_hits,
        stats.cpm,
        stats.deaths
    );
    Ok(())
}
