//! Seed-paired solo matches with the creep-health term switched on and off,
//! reported as creeps per minute and efficiency against a 10 CPM baseline.
//!
//! cargo run --release --example farm_ablation -- [matches-per-arm] [seed]

use lanecraft::config::MatchConfig;
use lanecraft::experiments::run_farm_ablation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    let report = run_farm_ablation(&MatchConfig::default(), n, seed, None)?;
    print!("{}", report.to_text());
    for (on, off) in report.phi_on.iter().zip(&report.phi_off) {
        println!("seed {:>3}: {:5.2} cpm with phi, {:5.2} without", on.seed, on.cpm, off.cpm);
    }
    Ok(())
}
