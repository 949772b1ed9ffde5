//! Exports every canned influence scene as CSV and PGM, then counts the
//! local maxima of the max- and sum-mixed creep layers.
//!
//! cargo run --release --example heatmaps -- [out-dir]

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use lanecraft::config::MatchConfig;
use lanecraft::experiments::{heatmap_scenario, local_maxima, SCENARIOS};
use lanecraft::grid::{write_csv, write_pgm, WorldPos};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "heatmaps".into()));
    fs::create_dir_all(&out)?;
    let cfg = MatchConfig::default();
    for name in SCENARIOS {
        for layer in heatmap_scenario(name, &cfg)? {
            let stem = if layer.name == name { name.to_owned() } else { format!("{name}-{}", layer.name) };
            write_csv(&layer.grid, BufWriter::new(File::create(out.join(format!("{stem}.csv")))?))?;
            write_pgm(&layer.grid, BufWriter::new(File::create(out.join(format!("{stem}.pgm")))?))?;
            let (lo, hi) = layer.grid.min_max_finite().unwrap_or((0.0, 0.0));
            let forbidden = layer.grid.values().iter().filter(|v| v.is_infinite()).count();
            println!("{stem:<28} finite range [{lo:8.1}, {hi:8.1}]  forbidden cells {forbidden}");
        }
    }

    // Summing overlapping creep tails invents a bump where no creep is in
    // reach. Cells on either creep's attack ring are left out.
    let creeps = [WorldPos::new(11050.0, 750.0), WorldPos::new(11050.0, 2150.0)];
    let (hr, delta) = (cfg.stats.hero.range, cfg.grid.resolution / 2.0);
    let on_ring = |p: WorldPos| creeps.iter().any(|c| (hr - delta..=hr + delta).contains(&p.distance(*c)));
    for layer in heatmap_scenario("max-vs-sum", &cfg)? {
        let peaks: Vec<_> = local_maxima(&layer.grid, on_ring)
            .into_iter()
            .map(|i| layer.grid.spec().cell_center(i).expect("in grid"))
            .filter(|p| p.y > 750.0 && p.y < 2150.0)
            .collect();
        println!("{} layer: {} peaks between the creeps {:?}", layer.name, peaks.len(), peaks);
    }
    println!("wrote {}", out.display());
    Ok(())
}
