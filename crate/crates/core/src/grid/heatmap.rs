//! Heatmap writers: CSV for plotting tools and binary 8-bit PGM for a quick look.

use std::io::{self, Write};

use super::{is_forbidden, InfluenceGrid};

/// One line per grid row, values comma separated; the sentinel is written as `-inf`.
pub fn write_csv<W: Write>(grid: &InfluenceGrid, mut out: W) -> io::Result<()> {
    let spec = grid.spec();
    for row in grid.values().chunks(spec.cols) {
        let mut first = true;
        for &v in row {
            if !first {
                out.write_all(b",")?;
            }
            first = false;
            if is_forbidden(v) {
                out.write_all(b"-inf")?;
            } else {
                write!(out, "{v}")?;
            }
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Binary PGM (P5, maxval 255). Finite values are rescaled so the minimum maps
/// to 0 and the maximum to 255; sentinel cells are drawn black. A flat grid is
/// mid grey.
pub fn write_pgm<W: Write>(grid: &InfluenceGrid, mut out: W) -> io::Result<()> {
    let spec = grid.spec();
    write!(out, "P5\n{} {}\n255\n", spec.cols, spec.rows)?;
    let range = grid.min_max_finite();
    let pixels: Vec<u8> = grid
        .values()
        .iter()
        .map(|&v| match range {
            _ if is_forbidden(v) => 0,
            Some((lo, hi)) if hi > lo => (((v - lo) / (hi - lo)) * 255.0).round().clamp(0.0, 255.0) as u8,
            _ => 128,
        })
        .collect();
    out.write_all(&pixels)
}
