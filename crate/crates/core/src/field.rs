//! Cell-centered scalar fields on uniform rectangular grids.
//!
//! A field is a piecewise-constant-per-cell function: the stored value is the
//! value on the whole cell, and the function is identically zero outside the
//! domain window. Under that convention `integrate` is exact, and rectangle
//! averages reduce to quadrature over a sample lattice.

use crate::error::{CoreError, Result};
use crate::geometry::{Point, RectangleSpec};
use crate::parallel::block_sum;

/// Uniform grid: `nx × ny` square cells of side `h`, lower-left corner at
/// `origin`. The center of cell `(i, j)` is `origin + ((i+½)h, (j+½)h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainSpec {
    pub origin: Point,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl DomainSpec {
    pub fn new(origin: Point, nx: usize, ny: usize, h: f64) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(CoreError::InvalidDomain(format!(
                "cell counts must be positive, got {nx}x{ny}"
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(CoreError::InvalidDomain(format!("cell side h = {h}")));
        }
        Ok(DomainSpec { origin, nx, ny, h })
    }

    /// `n × n` grid covering the unit square `[0,1]²`.
    pub fn unit_square(n: usize) -> Self {
        DomainSpec::new(Point::new(0.0, 0.0), n, n, 1.0 / n as f64).unwrap()
    }

    pub fn extent(&self) -> (f64, f64) {
        (self.nx as f64 * self.h, self.ny as f64 * self.h)
    }

    pub fn num_cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn cell_center(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x + (i as f64 + 0.5) * self.h,
            self.origin.y + (j as f64 + 0.5) * self.h,
        )
    }

    pub fn contains(&self, p: &Point) -> bool {
        let (ex, ey) = self.extent();
        p.x >= self.origin.x
            && p.x <= self.origin.x + ex
            && p.y >= self.origin.y
            && p.y <= self.origin.y + ey
    }

    /// Index of the cell whose interior contains `p`, clamped to the grid.
    pub fn cell_of(&self, p: &Point) -> (usize, usize) {
        let i = ((p.x - self.origin.x) / self.h).floor() as isize;
        let j = ((p.y - self.origin.y) / self.h).floor() as isize;
        (
            i.clamp(0, self.nx as isize - 1) as usize,
            j.clamp(0, self.ny as isize - 1) as usize,
        )
    }
}

/// Quadrature rule for rectangle averages: a midpoint lattice with spacing at
/// most `max_spacing` along both rectangle axes.
#[derive(Clone, Copy, Debug)]
pub struct SamplingRule {
    pub max_spacing: f64,
}

impl SamplingRule {
    pub fn spacing(max_spacing: f64) -> Self {
        SamplingRule { max_spacing }
    }

    /// Default rule: half a cell, so interpolation error stays below the
    /// cell-quantization error.
    pub fn for_domain(domain: &DomainSpec) -> Self {
        SamplingRule {
            max_spacing: 0.5 * domain.h,
        }
    }

    pub fn halved(&self) -> Self {
        SamplingRule {
            max_spacing: 0.5 * self.max_spacing,
        }
    }
}

/// Sampled scalar function, stored row-major: `values[j * nx + i]` is the
/// value of cell `(i, j)`.
#[derive(Clone, Debug)]
pub struct ScalarField2D {
    domain: DomainSpec,
    values: Vec<f64>,
}

impl ScalarField2D {
    pub fn new(domain: DomainSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.num_cells() {
            return Err(CoreError::InvalidDomain(format!(
                "value count {} does not match {}x{} grid",
                values.len(),
                domain.nx,
                domain.ny
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::NonFiniteValues);
        }
        Ok(ScalarField2D { domain, values })
    }

    pub fn zeros(domain: DomainSpec) -> Self {
        ScalarField2D {
            values: vec![0.0; domain.num_cells()],
            domain,
        }
    }

    pub fn constant(domain: DomainSpec, c: f64) -> Result<Self> {
        ScalarField2D::new(domain, vec![c; domain.num_cells()])
    }

    /// Field sampled from a closed-form function at cell centers.
    pub fn from_fn<F: Fn(Point) -> f64>(domain: DomainSpec, f: F) -> Result<Self> {
        let mut values = Vec::with_capacity(domain.num_cells());
        for j in 0..domain.ny {
            for i in 0..domain.nx {
                values.push(f(domain.cell_center(i, j)));
            }
        }
        ScalarField2D::new(domain, values)
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.domain.nx + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[j * self.domain.nx + i] = v;
    }

    pub fn abs(&self) -> ScalarField2D {
        ScalarField2D {
            domain: self.domain,
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn scaled(&self, alpha: f64) -> ScalarField2D {
        ScalarField2D {
            domain: self.domain,
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }

    pub fn zip_with<F: Fn(f64, f64) -> f64>(&self, other: &ScalarField2D, f: F) -> Result<ScalarField2D> {
        if self.domain != other.domain {
            return Err(CoreError::DomainMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ScalarField2D {
            domain: self.domain,
            values,
        })
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// True if any nonzero cell lies in the outermost ring of the grid, i.e.
    /// the function does not vanish near the window boundary and the finite
    /// window truncates it.
    pub fn touches_boundary_ring(&self) -> bool {
        let (nx, ny) = (self.domain.nx, self.domain.ny);
        for i in 0..nx {
            if self.get(i, 0) != 0.0 || self.get(i, ny - 1) != 0.0 {
                return true;
            }
        }
        for j in 0..ny {
            if self.get(0, j) != 0.0 || self.get(nx - 1, j) != 0.0 {
                return true;
            }
        }
        false
    }

    /// Bilinear interpolation of cell-centered values; zero outside the
    /// domain window, clamped to the outermost centers inside it.
    pub fn value_at(&self, p: &Point) -> f64 {
        if !self.domain.contains(p) {
            return 0.0;
        }
        let nx = self.domain.nx;
        let ny = self.domain.ny;
        let u = ((p.x - self.domain.origin.x) / self.domain.h - 0.5).clamp(0.0, (nx - 1) as f64);
        let v = ((p.y - self.domain.origin.y) / self.domain.h - 0.5).clamp(0.0, (ny - 1) as f64);
        let i0 = (u.floor() as usize).min(nx.saturating_sub(2));
        let j0 = (v.floor() as usize).min(ny.saturating_sub(2));
        if nx == 1 && ny == 1 {
            return self.get(0, 0);
        }
        let i1 = (i0 + 1).min(nx - 1);
        let j1 = (j0 + 1).min(ny - 1);
        let fu = (u - i0 as f64).clamp(0.0, 1.0);
        let fv = (v - j0 as f64).clamp(0.0, 1.0);
        let a = self.get(i0, j0) * (1.0 - fu) + self.get(i1, j0) * fu;
        let b = self.get(i0, j1) * (1.0 - fu) + self.get(i1, j1) * fu;
        a * (1.0 - fv) + b * fv
    }
}

/// Exact integral under the piecewise-constant semantics: `h² · Σ values`.
pub fn integrate(f: &ScalarField2D) -> f64 {
    let h2 = f.domain.h * f.domain.h;
    h2 * block_sum(f.values.len(), |i| f.values[i])
}

/// Characteristic function of a region, sampled by cell-center membership.
pub fn indicator<P: Fn(Point) -> bool>(region: P, domain: DomainSpec) -> ScalarField2D {
    ScalarField2D::from_fn(domain, |p| if region(p) { 1.0 } else { 0.0 })
        .expect("indicator values are finite")
}

/// Mean of `f` over a midpoint sample lattice inside the rectangle, with
/// bilinear interpolation between cell centers and zero extension outside the
/// domain. Shared by the oracle and the pruned maximal engines, so their
/// averages agree exactly.
pub fn sample_average_rect(f: &ScalarField2D, r: &RectangleSpec, rule: &SamplingRule) -> Result<f64> {
    if !(r.length > 0.0) || !(r.width() > 0.0) {
        return Err(CoreError::DegenerateRectangle(format!(
            "length {} x width {}",
            r.length,
            r.width()
        )));
    }
    if !(rule.max_spacing > 0.0) {
        return Err(CoreError::InvalidParameter(format!(
            "sampling spacing {}",
            rule.max_spacing
        )));
    }
    let w = r.width();
    let mu = (r.length / rule.max_spacing).ceil() as usize;
    let mv = (w / rule.max_spacing).ceil() as usize;
    let mu = mu.max(1);
    let mv = mv.max(1);
    let (sin, cos) = r.theta.sin_cos();
    let mut sum = 0.0;
    for ku in 0..mu {
        let u = ((ku as f64 + 0.5) / mu as f64 - 0.5) * r.length;
        for kv in 0..mv {
            let v = ((kv as f64 + 0.5) / mv as f64 - 0.5) * w;
            let p = Point::new(
                r.center.x + u * cos - v * sin,
                r.center.y + u * sin + v * cos,
            );
            sum += f.value_at(&p);
        }
    }
    Ok(sum / (mu * mv) as f64)
}
