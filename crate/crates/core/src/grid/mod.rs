//! Map geometry, cell indexing and the influence grid container.
//!
//! The grid is a dense row-major array of weights. One value is special:
//! [`FORBIDDEN`] marks a cell the agent must never stand on. It compares
//! below every finite weight, and once a composition pass writes it no
//! later pass raises the cell again.

mod heatmap;

pub use heatmap::{write_csv, write_pgm};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Weight of a cell the agent must never occupy.
pub const FORBIDDEN: f64 = f64::NEG_INFINITY;

#[inline]
pub fn is_forbidden(w: f64) -> bool {
    w == FORBIDDEN
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("resolution must be positive and finite, got {0}")]
    InvalidResolution(f64),
    #[error("map dimensions must be positive and finite, got {width}x{height}")]
    InvalidMap { width: f64, height: f64 },
    #[error("cell ({col}, {row}) outside a {cols}x{rows} grid")]
    OutOfBounds {
        col: usize,
        row: usize,
        cols: usize,
        rows: usize,
    },
    #[error("no cell center within {radius} of ({x}, {y})")]
    NoCandidate { x: f64, y: f64, radius: f64 },
}

/// A continuous position in game units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WorldPos {
    pub x: f64,
    pub y: f64,
}

impl WorldPos {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: WorldPos) -> f64 {
        distance(self, other)
    }

    /// Moves at most `max_step` towards `target`, never overshooting it.
    pub fn step_towards(self, target: WorldPos, max_step: f64) -> WorldPos {
        let d = self.distance(target);
        if d <= max_step || d == 0.0 {
            return target;
        }
        let k = max_step / d;
        WorldPos::new(self.x + (target.x - self.x) * k, self.y + (target.y - self.y) * k)
    }
}

/// Euclidean distance.
pub fn distance(a: WorldPos, b: WorldPos) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Rectangular playable area anchored at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapBounds {
    pub width: f64,
    pub height: f64,
}

impl MapBounds {
    pub fn new(width: f64, height: f64) -> Result<Self, GridError> {
        if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
            return Err(GridError::InvalidMap { width, height });
        }
        Ok(Self { width, height })
    }

    pub fn clamp(&self, p: WorldPos) -> WorldPos {
        WorldPos::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.height))
    }

    pub fn contains(&self, p: WorldPos) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    /// Builds a position clamped into the map. Non-finite input lands on the origin.
    pub fn pos(&self, x: f64, y: f64) -> WorldPos {
        let x = if x.is_finite() { x } else { 0.0 };
        let y = if y.is_finite() { y } else { 0.0 };
        self.clamp(WorldPos::new(x, y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellIndex {
    pub col: usize,
    pub row: usize,
}

impl CellIndex {
    pub const fn new(col: usize, row: usize) -> Self {
        Self { col, row }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub resolution: f64,
    pub cols: usize,
    pub rows: usize,
    pub origin: WorldPos,
}

impl GridSpec {
    /// Covers `bounds` with square cells of `resolution` game units.
    pub fn for_map(bounds: MapBounds, resolution: f64) -> Result<Self, GridError> {
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(GridError::InvalidResolution(resolution));
        }
        let cols = ((bounds.width / resolution).ceil() as usize).max(1);
        let rows = ((bounds.height / resolution).ceil() as usize).max(1);
        Ok(Self {
            resolution,
            cols,
            rows,
            origin: WorldPos::default(),
        })
    }

    /// Half the resolution, used as the discretisation allowance.
    pub fn delta(&self) -> f64 {
        self.resolution / 2.0
    }

    pub fn len(&self) -> usize {
        self.cols * self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn flat(&self, idx: CellIndex) -> usize {
        idx.row * self.cols + idx.col
    }

    #[inline]
    pub fn unflat(&self, i: usize) -> CellIndex {
        CellIndex::new(i % self.cols, i / self.cols)
    }

    pub fn contains(&self, idx: CellIndex) -> bool {
        idx.col < self.cols && idx.row < self.rows
    }

    pub fn world_to_cell(&self, pos: WorldPos) -> CellIndex {
        let fc = ((pos.x - self.origin.x) / self.resolution).floor();
        let fr = ((pos.y - self.origin.y) / self.resolution).floor();
        let clamp = |v: f64, n: usize| -> usize {
            if v.is_nan() || v < 0.0 {
                0
            } else {
                (v as usize).min(n - 1)
            }
        };
        CellIndex::new(clamp(fc, self.cols), clamp(fr, self.rows))
    }

    pub fn cell_center(&self, idx: CellIndex) -> Result<WorldPos, GridError> {
        if !self.contains(idx) {
            return Err(GridError::OutOfBounds {
                col: idx.col,
                row: idx.row,
                cols: self.cols,
                rows: self.rows,
            });
        }
        Ok(self.center_unchecked(idx.col, idx.row))
    }

    #[inline]
    pub(crate) fn center_unchecked(&self, col: usize, row: usize) -> WorldPos {
        WorldPos::new(
            self.origin.x + (col as f64 + 0.5) * self.resolution,
            self.origin.y + (row as f64 + 0.5) * self.resolution,
        )
    }

    /// Column and row ranges whose cell centers may lie within `radius` of `center`.
    pub fn window(&self, center: WorldPos, radius: f64) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let span = |c: f64, o: f64, n: usize| {
            // center of cell k is o + (k + 0.5) r; solve for k at c ± radius
            let lo = ((c - radius - o) / self.resolution - 0.5).ceil();
            let hi = ((c + radius - o) / self.resolution - 0.5).floor();
            let lo = if lo.is_nan() { 0.0 } else { lo.max(0.0) };
            let hi = if hi.is_nan() { -1.0 } else { hi.min(n as f64 - 1.0) };
            if hi < lo {
                0..0
            } else {
                lo as usize..hi as usize + 1
            }
        };
        (
            span(center.x, self.origin.x, self.cols),
            span(center.y, self.origin.y, self.rows),
        )
    }
}

/// Scalar tactical field over the map, rebuilt every decision cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceGrid {
    spec: GridSpec,
    values: Vec<f64>,
}

impl InfluenceGrid {
    pub fn new(spec: GridSpec) -> Self {
        Self {
            values: vec![0.0; spec.len()],
            spec,
        }
    }

    pub fn from_values(spec: GridSpec, values: Vec<f64>) -> Option<Self> {
        (values.len() == spec.len()).then_some(Self { spec, values })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, idx: CellIndex) -> f64 {
        self.values[self.spec.flat(idx)]
    }

    pub fn set(&mut self, idx: CellIndex, w: f64) {
        let i = self.spec.flat(idx);
        self.values[i] = w;
    }

    pub fn value_at(&self, pos: WorldPos) -> f64 {
        self.get(self.spec.world_to_cell(pos))
    }

    /// Zeroes every cell, sentinels included.
    pub fn reset(&mut self) {
        self.values.fill(0.0);
    }

    /// Best cell whose center lies within `radius` of `center`.
    ///
    /// Ties go to the cell nearest `center`, then to the smaller row-major index.
    pub fn argmax_in_radius(&self, center: WorldPos, radius: f64) -> Result<CellIndex, GridError> {
        let mut best: Option<(f64, f64, usize)> = None;
        self.for_each_candidate(center, radius, |i, d, v| {
            let better = match best {
                None => true,
                Some((bv, bd, bi)) => v > bv || (v == bv && (d < bd || (d == bd && i < bi))),
            };
            if better {
                best = Some((v, d, i));
            }
        });
        best.map(|(_, _, i)| self.spec.unflat(i)).ok_or(GridError::NoCandidate {
            x: center.x,
            y: center.y,
            radius,
        })
    }

    /// Visits (flat index, distance, value) for every cell center within `radius`.
    pub fn for_each_candidate(&self, center: WorldPos, radius: f64, mut f: impl FnMut(usize, f64, f64)) {
        if radius.is_nan() || radius <= 0.0 {
            return;
        }
        let (cols, rows) = self.spec.window(center, radius);
        for row in rows {
            for col in cols.clone() {
                let c = self.spec.center_unchecked(col, row);
                let d = distance(c, center);
                if d <= radius {
                    let i = row * self.spec.cols + col;
                    f(i, d, self.values[i]);
                }
            }
        }
    }

    /// Best cell anywhere on the grid, same tie-breaking as [`Self::argmax_in_radius`].
    pub fn argmax_global(&self, near: WorldPos) -> CellIndex {
        self.argmax_where(near, |_| true).unwrap_or(CellIndex::new(0, 0))
    }

    /// Best cell among those whose center satisfies `keep`; ties as in
    /// [`Self::argmax_in_radius`].
    pub fn argmax_where(&self, near: WorldPos, keep: impl Fn(WorldPos) -> bool) -> Option<CellIndex> {
        let mut best: Option<(f64, f64, usize)> = None;
        for (i, &v) in self.values.iter().enumerate() {
            if matches!(best, Some((bv, _, _)) if v < bv) {
                continue;
            }
            let idx = self.spec.unflat(i);
            let c = self.spec.center_unchecked(idx.col, idx.row);
            if !keep(c) {
                continue;
            }
            let d = distance(c, near);
            let better = match best {
                None => true,
                Some((bv, bd, _)) => v > bv || d < bd,
            };
            if better {
                best = Some((v, d, i));
            }
        }
        best.map(|b| self.spec.unflat(b.2))
    }

    pub fn min_max_finite(&self) -> Option<(f64, f64)> {
        self.values
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .fold(None, |acc, v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_100() -> GridSpec {
        GridSpec::for_map(MapBounds::new(12000.0, 3000.0).unwrap(), 100.0).unwrap()
    }

    #[test]
    fn default_map_dimensions() {
        let s = spec_100();
        assert_eq!((s.cols, s.rows, s.len()), (120, 30, 3600));
        assert_eq!(s.delta(), 50.0);
    }

    #[test]
    fn world_to_cell_examples() {
        let s = spec_100();
        assert_eq!(s.world_to_cell(WorldPos::new(0.0, 0.0)), CellIndex::new(0, 0));
        assert_eq!(s.world_to_cell(WorldPos::new(250.0, 50.0)), CellIndex::new(2, 0));
        assert_eq!(s.world_to_cell(WorldPos::new(12000.0, 3000.0)), CellIndex::new(119, 29));
    }

    #[test]
    fn cell_center_examples() {
        let s = spec_100();
        assert_eq!(s.cell_center(CellIndex::new(0, 0)).unwrap(), WorldPos::new(50.0, 50.0));
        assert_eq!(s.cell_center(CellIndex::new(2, 0)).unwrap(), WorldPos::new(250.0, 50.0));
        assert!(matches!(
            s.cell_center(CellIndex::new(120, 0)),
            Err(GridError::OutOfBounds { .. })
        ));
    }

    #[test]
    fn distance_examples() {
        let o = WorldPos::new(0.0, 0.0);
        assert_eq!(distance(o, o), 0.0);
        assert_eq!(distance(o, WorldPos::new(3.0, 4.0)), 5.0);
        let d = distance(WorldPos::new(100.0, 0.0), WorldPos::new(0.0, 100.0));
        assert!((d - 20000f64.sqrt()).abs() < 1e-9);
        assert!((d - 141.421_356_237_309_5).abs() < 1e-9);
    }

    #[test]
    fn reset_clears_everything() {
        let mut g = InfluenceGrid::new(spec_100());
        g.values_mut()[7] = 3.5;
        g.values_mut()[8] = FORBIDDEN;
        g.reset();
        assert!(g.values().iter().all(|&v| v == 0.0));
        let before = g.clone();
        g.reset();
        assert_eq!(g, before);
    }

    #[test]
    fn argmax_uniform_picks_nearest_cell() {
        let g = InfluenceGrid::new(spec_100());
        let idx = g.argmax_in_radius(WorldPos::new(1234.0, 567.0), 325.0).unwrap();
        assert_eq!(idx, CellIndex::new(12, 5));
    }

    #[test]
    fn argmax_single_peak() {
        let mut g = InfluenceGrid::new(spec_100());
        g.set(CellIndex::new(14, 6), 10.0);
        let idx = g.argmax_in_radius(WorldPos::new(1234.0, 567.0), 325.0).unwrap();
        assert_eq!(idx, CellIndex::new(14, 6));
    }

    #[test]
    fn argmax_equidistant_tie_prefers_row_major() {
        let mut g = InfluenceGrid::new(spec_100());
        // centers (450,550) and (650,550) are both 100 from (550,550)
        g.set(CellIndex::new(4, 5), 7.0);
        g.set(CellIndex::new(6, 5), 7.0);
        let center = WorldPos::new(550.0, 550.0);
        // exhaustive oracle over the candidate set
        let mut cands = Vec::new();
        for row in 0..g.spec().rows {
            for col in 0..g.spec().cols {
                let c = g.spec().cell_center(CellIndex::new(col, row)).unwrap();
                let d = distance(c, center);
                if d <= 300.0 {
                    cands.push((g.get(CellIndex::new(col, row)), d, row * 120 + col));
                }
            }
        }
        cands.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
        let expect = g.spec().unflat(cands[0].2);
        assert_eq!(expect, CellIndex::new(4, 5));
        assert_eq!(g.argmax_in_radius(center, 300.0).unwrap(), expect);
    }

    #[test]
    fn argmax_without_candidates_errors() {
        let g = InfluenceGrid::new(spec_100());
        let err = g.argmax_in_radius(WorldPos::new(0.0, 0.0), 20.0).unwrap_err();
        assert!(matches!(err, GridError::NoCandidate { .. }));
    }

    #[test]
    fn forbidden_orders_below_finite() {
        assert!(FORBIDDEN < -1e300);
        assert_eq!(FORBIDDEN.max(-5.0), -5.0);
        assert!(is_forbidden(FORBIDDEN.min(3.0)));
    }
}
