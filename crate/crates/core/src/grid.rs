//! Truncated uniform grids on [-L, L]^n (n = 1, 2), sampled functions,
//! Riemann integration, balls, and the L^alpha-normalized dilation family.
//!
//! Grids are cell-centered: no sample sits at the origin, so power weights
//! are finite at every cell.

use crate::error::{Error, Result};

/// Relative guard for strict ball membership. Exact boundary ties
/// (|x - y| = r, which occur for dyadic radii on the lattice) are excluded
/// deterministically; genuinely interior cells clear the guard because
/// distinct lattice distances differ by far more than 1e-12 relatively.
const MEMBERSHIP_GUARD: f64 = 1.0 - 1e-12;

/// Uniform cell-centered grid over [-L, L]^n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    half_width: f64,
    points: usize,
    spacing: f64,
}

impl Grid {
    /// Build a grid with `points` cells per axis on [-half_width, half_width]^dim.
    /// `points` must be a power of two >= 8.
    pub fn new(dim: usize, half_width: f64, points: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if !points.is_power_of_two() || points < 8 {
            return Err(Error::NotPowerOfTwo(points));
        }
        if !(half_width > 0.0) {
            return Err(Error::NonpositiveHalfWidth(half_width));
        }
        let spacing = 2.0 * half_width / points as f64;
        Ok(Grid { dim, half_width, points, spacing })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Domain half-width L.
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Points per axis N.
    pub fn points_per_axis(&self) -> usize {
        self.points
    }

    /// Cell spacing h = 2L/N.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Total number of cells N^n.
    pub fn cells(&self) -> usize {
        match self.dim {
            1 => self.points,
            _ => self.points * self.points,
        }
    }

    /// Cell measure h^n.
    pub fn cell_measure(&self) -> f64 {
        match self.dim {
            1 => self.spacing,
            _ => self.spacing * self.spacing,
        }
    }

    /// Coordinate of cell `i` along one axis: -L + (i + 1/2) h.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing
    }

    /// Axis indices of a flat row-major cell index.
    pub fn axis_indices(&self, idx: usize) -> (usize, usize) {
        match self.dim {
            1 => (idx, 0),
            _ => (idx / self.points, idx % self.points),
        }
    }

    /// Flat index from axis indices (second index ignored for n = 1).
    pub fn flat_index(&self, i0: usize, i1: usize) -> usize {
        match self.dim {
            1 => i0,
            _ => i0 * self.points + i1,
        }
    }

    /// Center of cell `idx`; the second coordinate is 0 for n = 1.
    pub fn point(&self, idx: usize) -> [f64; 2] {
        let (i0, i1) = self.axis_indices(idx);
        match self.dim {
            1 => [self.coord(i0), 0.0],
            _ => [self.coord(i0), self.coord(i1)],
        }
    }

    /// Grid with the same domain and twice the points per axis.
    pub fn refined(&self) -> Grid {
        Grid::new(self.dim, self.half_width, self.points * 2).expect("refinement keeps invariants")
    }

    /// True if the point lies in the closed box [-L, L]^n.
    pub fn contains_point(&self, p: [f64; 2]) -> bool {
        let in0 = p[0].abs() <= self.half_width;
        match self.dim {
            1 => in0,
            _ => in0 && p[1].abs() <= self.half_width,
        }
    }

    /// Cell containing the coordinate along one axis, or None outside [-L, L).
    pub fn cell_of(&self, x: f64) -> Option<usize> {
        let t = (x + self.half_width) / self.spacing;
        // Snap exact boundaries (possible for grid-aligned dilation scales)
        // to the right cell; otherwise take the containing cell.
        let r = t.round();
        let i = if (t - r).abs() < 1e-9 { r } else { t.floor() };
        if i < 0.0 || i >= self.points as f64 {
            None
        } else {
            Some(i as usize)
        }
    }
}

/// Real-valued function sampled at the cell centers of a grid (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.cells() {
            return Err(Error::Format(format!(
                "expected {} samples, got {}",
                grid.cells(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction { grid, values: vec![0.0; grid.cells()] }
    }

    /// Sample a closed-form function at every cell center.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> f64) -> Result<Self> {
        let values = (0..grid.cells()).map(|i| f(grid.point(i))).collect();
        GridFunction::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Pointwise combination of two functions on the same grid.
    pub fn zip_with(&self, other: &GridFunction, f: impl Fn(f64, f64) -> f64) -> Result<GridFunction> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        GridFunction::new(self.grid, values)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scaled(&self, c: f64) -> GridFunction {
        self.map(|v| c * v)
    }
}

/// Riemann sum h^n * sum of samples; the discrete realization of the
/// integral over R^n for compactly supported corpus functions.
pub fn integrate(f: &GridFunction) -> f64 {
    f.grid.cell_measure() * f.values.iter().sum::<f64>()
}

/// Open Euclidean ball B(y, r). The center may be any point of the domain,
/// not necessarily a cell center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Ball {
    pub fn new(center: [f64; 2], radius: f64) -> Self {
        Ball { center, radius }
    }

    /// lambda B: same center, radius scaled by lambda.
    pub fn scaled(&self, lambda: f64) -> Ball {
        Ball { center: self.center, radius: lambda * self.radius }
    }

    /// Strict membership test for a point, with the deterministic tie guard.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        dx * dx + dy * dy < self.radius * self.radius * MEMBERSHIP_GUARD
    }

    /// True if the ball fits inside [-L, L]^n (per-axis box containment).
    pub fn fits(&self, grid: &Grid) -> bool {
        let l = grid.half_width();
        let in0 = self.center[0].abs() <= l - self.radius;
        match grid.dim() {
            1 => in0,
            _ => in0 && self.center[1].abs() <= l - self.radius,
        }
    }

    /// Validate against a grid: center in domain, r >= h, ball inside the box.
    pub fn validate(&self, grid: &Grid) -> Result<()> {
        if self.radius < grid.spacing() * MEMBERSHIP_GUARD {
            return Err(Error::RadiusBelowGrid(self.radius));
        }
        if !grid.contains_point(self.center) || !self.fits(grid) {
            return Err(Error::BallOutsideDomain(self.center, self.radius));
        }
        Ok(())
    }

    /// Flat indices of the cells whose center lies in the ball.
    pub fn cells(&self, grid: &Grid) -> Vec<usize> {
        let mut out = Vec::new();
        let r2 = self.radius * self.radius * MEMBERSHIP_GUARD;
        let (lo0, hi0) = axis_range(grid, self.center[0], self.radius);
        match grid.dim() {
            1 => {
                for i in lo0..hi0 {
                    let dx = grid.coord(i) - self.center[0];
                    if dx * dx < r2 {
                        out.push(i);
                    }
                }
            }
            _ => {
                let (lo1, hi1) = axis_range(grid, self.center[1], self.radius);
                for i0 in lo0..hi0 {
                    let dx = grid.coord(i0) - self.center[0];
                    if dx * dx >= r2 {
                        continue;
                    }
                    for i1 in lo1..hi1 {
                        let dy = grid.coord(i1) - self.center[1];
                        if dx * dx + dy * dy < r2 {
                            out.push(grid.flat_index(i0, i1));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Candidate index range [lo, hi) along one axis for cells within `radius`
/// of coordinate `c`.
fn axis_range(grid: &Grid, c: f64, radius: f64) -> (usize, usize) {
    let n = grid.points_per_axis() as f64;
    let lo = ((c - radius + grid.half_width()) / grid.spacing() - 1.0).floor().max(0.0);
    let hi = ((c + radius + grid.half_width()) / grid.spacing() + 2.0).ceil().min(n);
    let lo = lo as usize;
    (lo, (hi as usize).max(lo))
}

/// Indicator chi_B sampled on a grid. Errors if the ball leaves the domain.
pub fn ball_indicator(grid: &Grid, ball: &Ball) -> Result<GridFunction> {
    ball.validate(grid)?;
    let mut out = GridFunction::zeros(*grid);
    for idx in ball.cells(grid) {
        out.values_mut()[idx] = 1.0;
    }
    Ok(out)
}

/// Finite surrogate for sups over all balls: an explicit list of balls, or a
/// dense dyadic sweep (every admissible grid center, dyadic radii) that norm
/// sweeps can evaluate without materializing the members.
#[derive(Debug, Clone)]
pub enum FamilyKind {
    Explicit(Vec<Ball>),
    /// All grid centers admissible for each radius in the set.
    DenseDyadic { radii: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct BallFamily {
    kind: FamilyKind,
    descriptor: String,
}

impl BallFamily {
    pub fn from_balls(grid: &Grid, balls: Vec<Ball>) -> Result<Self> {
        if balls.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for b in &balls {
            b.validate(grid)?;
        }
        let descriptor = format!("explicit({})", balls.len());
        Ok(BallFamily { kind: FamilyKind::Explicit(balls), descriptor })
    }

    /// Stride-subsampled centers with dyadic radii {2^k h}, clipped so every
    /// member fits in the domain. Radii are capped at `max_radius` when given.
    pub fn dyadic(grid: &Grid, center_stride: usize, max_radius: Option<f64>) -> Result<Self> {
        let stride = center_stride.max(1);
        let h = grid.spacing();
        let cap = max_radius.unwrap_or(grid.half_width());
        let mut balls = Vec::new();
        let mut r = h;
        while r <= cap + 1e-12 {
            for idx in strided_indices(grid, stride) {
                let b = Ball::new(grid.point(idx), r);
                if b.fits(grid) {
                    balls.push(b);
                }
            }
            r *= 2.0;
        }
        if balls.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let descriptor = format!("dyadic(stride={stride},cap={cap})");
        Ok(BallFamily { kind: FamilyKind::Explicit(balls), descriptor })
    }

    /// Dense sweep: every admissible grid center at each dyadic radius.
    pub fn dense_dyadic(grid: &Grid, radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::EmptyRadii);
        }
        for &r in &radii {
            if r < grid.spacing() * MEMBERSHIP_GUARD {
                return Err(Error::RadiusBelowGrid(r));
            }
        }
        let descriptor = format!("dense({} radii)", radii.len());
        Ok(BallFamily { kind: FamilyKind::DenseDyadic { radii }, descriptor })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Members for explicit families (dense families are evaluated by sweeps).
    pub fn balls(&self) -> &[Ball] {
        match &self.kind {
            FamilyKind::Explicit(balls) => balls,
            FamilyKind::DenseDyadic { .. } => &[],
        }
    }
}

fn strided_indices(grid: &Grid, stride: usize) -> Vec<usize> {
    let n = grid.points_per_axis();
    match grid.dim() {
        1 => (0..n).step_by(stride).collect(),
        _ => {
            let mut out = Vec::new();
            for i0 in (0..n).step_by(stride) {
                for i1 in (0..n).step_by(stride) {
                    out.push(grid.flat_index(i0, i1));
                }
            }
            out
        }
    }
}

/// Dyadic radius ladder {2^k h : k = 0..} capped at `cap`.
pub fn dyadic_radii(grid: &Grid, cap: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = grid.spacing();
    while r <= cap + 1e-12 {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// L^alpha-normalized dilation: (delta^alpha_r f)(x) = r^{n/alpha} f(r x),
/// with nearest-cell lookup and zero outside the domain.
pub fn dilate(f: &GridFunction, scale: f64, alpha: f64) -> Result<GridFunction> {
    if !(scale > 0.0) {
        return Err(Error::NonpositiveScale(scale));
    }
    if !(alpha >= 1.0) {
        return Err(Error::InvalidExponent(format!("alpha must be >= 1, got {alpha}")));
    }
    let grid = *f.grid();
    let n = grid.dim() as f64;
    let amp = scale.powf(n / alpha);
    let mut values = vec![0.0; grid.cells()];
    for (idx, v) in values.iter_mut().enumerate() {
        let p = grid.point(idx);
        let j0 = grid.cell_of(scale * p[0]);
        match grid.dim() {
            1 => {
                if let Some(j0) = j0 {
                    *v = amp * f.values()[j0];
                }
            }
            _ => {
                if let (Some(j0), Some(j1)) = (j0, grid.cell_of(scale * p[1])) {
                    *v = amp * f.values()[grid.flat_index(j0, j1)];
                }
            }
        }
    }
    GridFunction::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_grid_examples() {
        let g = Grid::new(1, 8.0, 16).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(g.coord(0), -7.5);
        assert_eq!(g.coord(15), 7.5);

        let g2 = Grid::new(2, 4.0, 8).unwrap();
        assert_eq!(g2.spacing(), 1.0);
        assert_eq!(g2.cells(), 64);

        assert!(matches!(Grid::new(1, 8.0, 12), Err(Error::NotPowerOfTwo(12))));
        assert!(matches!(Grid::new(3, 8.0, 16), Err(Error::InvalidDimension(3))));
        assert!(matches!(Grid::new(1, 8.0, 4), Err(Error::NotPowerOfTwo(4))));
    }

    #[test]
    fn no_cell_sits_at_origin() {
        for n in [8usize, 64, 256] {
            let g = Grid::new(1, 8.0, n).unwrap();
            for i in 0..n {
                assert!(g.coord(i).abs() >= g.spacing() / 2.0 - 1e-15);
            }
        }
    }

    #[test]
    fn integrate_indicator_and_zero() {
        let g = Grid::new(1, 8.0, 4096).unwrap();
        let chi = ball_indicator(&g, &Ball::new([0.0, 0.0], 1.0)).unwrap();
        assert!((integrate(&chi) - 2.0).abs() <= g.spacing());
        assert_eq!(integrate(&GridFunction::zeros(g)), 0.0);
    }

    #[test]
    fn integrate_gaussian_matches_sqrt_pi() {
        let g = Grid::new(1, 8.0, 4096).unwrap();
        let f = GridFunction::from_fn(g, |p| (-p[0] * p[0]).exp()).unwrap();
        assert!((integrate(&f) - std::f64::consts::PI.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn integrate_is_linear_and_monotone() {
        let g = Grid::new(1, 4.0, 64).unwrap();
        let f = GridFunction::from_fn(g, |p| p[0].sin()).unwrap();
        let w = GridFunction::from_fn(g, |p| p[0].cos() + 2.0).unwrap();
        let combo = f.zip_with(&w, |a, b| 2.0 * a + 3.0 * b).unwrap();
        let lhs = integrate(&combo);
        let rhs = 2.0 * integrate(&f) + 3.0 * integrate(&w);
        assert!((lhs - rhs).abs() < 1e-12);

        let g1 = f.map(|v| v.abs());
        let g2 = f.map(|v| v.abs() + 0.5);
        assert!(integrate(&g1) <= integrate(&g2));
    }

    #[test]
    fn ball_indicator_examples() {
        let g = Grid::new(1, 8.0, 4096).unwrap();
        let chi = ball_indicator(&g, &Ball::new([0.0, 0.0], 1.0)).unwrap();
        assert!((integrate(&chi) - 2.0).abs() <= 2.0 * g.spacing());

        // minimum-radius ball still marks at least one cell
        let tiny = ball_indicator(&g, &Ball::new([0.0, 0.0], g.spacing())).unwrap();
        assert!(integrate(&tiny) > 0.0);

        let g2 = Grid::new(2, 4.0, 512).unwrap();
        let disk = ball_indicator(&g2, &Ball::new([0.0, 0.0], 1.0)).unwrap();
        assert!((integrate(&disk) - std::f64::consts::PI).abs() < 0.05);

        let err = ball_indicator(&g, &Ball::new([9.0, 0.0], 1.0));
        assert!(matches!(err, Err(Error::BallOutsideDomain(_, _))));
    }

    #[test]
    fn indicator_monotone_under_scaling() {
        let g = Grid::new(2, 4.0, 64).unwrap();
        let b = Ball::new([0.5, -0.25], 0.75);
        let small = ball_indicator(&g, &b).unwrap();
        let large = ball_indicator(&g, &b.scaled(2.0)).unwrap();
        for (s, l) in small.values().iter().zip(large.values()) {
            assert!(l >= s);
        }
    }

    #[test]
    fn dilate_identity_at_unit_scale() {
        let g = Grid::new(1, 8.0, 256).unwrap();
        let f = GridFunction::from_fn(g, |p| (-p[0] * p[0]).exp()).unwrap();
        let d = dilate(&f, 1.0, 2.0).unwrap();
        assert_eq!(f.values(), d.values());
    }

    #[test]
    fn dilate_shrinks_indicator() {
        let g = Grid::new(1, 8.0, 1024).unwrap();
        let f = ball_indicator(&g, &Ball::new([0.0, 0.0], 2.0)).unwrap();
        let d = dilate(&f, 2.0, 1.0).unwrap();
        // expect 2 * chi_{B(0,1)} up to one boundary cell
        let target = ball_indicator(&g, &Ball::new([0.0, 0.0], 1.0)).unwrap();
        let mismatches: usize = d
            .values()
            .iter()
            .zip(target.values())
            .filter(|(a, b)| (**a - 2.0 * **b).abs() > 1e-12)
            .count();
        assert!(mismatches <= 2, "got {mismatches} mismatched cells");
    }

    #[test]
    fn dilate_round_trip_power_of_two() {
        let g = Grid::new(1, 8.0, 512).unwrap();
        let f = GridFunction::from_fn(g, |p| (p[0] * 1.3).sin() * (-p[0] * p[0] / 4.0).exp()).unwrap();
        for r in [0.5, 0.25] {
            let once = dilate(&f, r, 2.0).unwrap();
            let back = dilate(&once, 1.0 / r, 2.0).unwrap();
            for (idx, (a, b)) in back.values().iter().zip(f.values()).enumerate() {
                let p = g.point(idx);
                // only cells whose round trip stays in-domain
                if (p[0] * r).abs() <= g.half_width() && p[0].abs() <= g.half_width() * r {
                    assert!((a - b).abs() < 1e-12, "cell {idx}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn dilate_rejects_bad_scale() {
        let g = Grid::new(1, 8.0, 64).unwrap();
        let f = GridFunction::zeros(g);
        assert!(matches!(dilate(&f, 0.0, 2.0), Err(Error::NonpositiveScale(_))));
        assert!(matches!(dilate(&f, -1.0, 2.0), Err(Error::NonpositiveScale(_))));
    }

    #[test]
    fn dyadic_family_members_fit() {
        let g = Grid::new(2, 4.0, 64).unwrap();
        let fam = BallFamily::dyadic(&g, 8, None).unwrap();
        assert!(!fam.balls().is_empty());
        for b in fam.balls() {
            assert!(b.fits(&g));
            assert!(b.radius >= g.spacing() * 0.999);
        }
    }
}
