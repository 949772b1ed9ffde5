//! The agent alone on an open lane against a melee pursuer. Prints the
//! per-window attack, move and separation figures and the overall verdict.
//!
//! cargo run --release --example kiting_duel -- [seed]

use lanecraft::experiments::{analyze_duel, duel_config, KITING_RULES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let report = analyze_duel(&duel_config(), seed)?;
    let r = KITING_RULES;
    println!("first contact at {:?} s", report.contact);
    println!("{:>7}  {:>7}  {:>5}  {:>9}", "start", "attacks", "moves", "separated");
    for w in report.windows.iter().step_by(5) {
        println!("{:7.1}  {:7}  {:5}  {:8.0}%", w.start, w.attacks, w.moves, 100.0 * w.separated_fraction);
    }
    if let Some(w) = report.worst() {
        println!(
            "worst window: {} attacks (need {}), {} moves (need {}), {:.0}% beyond {} units (need {:.0}%)",
            w.attacks,
            r.min_attacks,
            w.moves,
            r.min_moves,
            100.0 * w.separated_fraction,
            r.separation,
            100.0 * r.min_separated_fraction
        );
    }
    println!(
        "agent deaths {}, agent hp {:.0}, pursuer hp {:.0}, verdict {}",
        report.agent_deaths,
        report.agent_hp_left,
        report.pursuer_hp_left,
        if report.passed() { "pass" } else { "fail" }
    );
    Ok(())
}
