//! Husimi Q rasters `Q(γ) = |⟨γ|ψ⟩|² / ‖ψ‖²` on rectangular windows.
//!
//! Axes are the γ-plane itself: `Re γ` horizontal, `Im γ` vertical. Values
//! carry no `1/π` prefactor, so a normalized state peaks at most at `1`;
//! [`husimi_quadrature_check`] divides by `π` instead. Samples sit at cell
//! centers (midpoint rule). Rows are evaluated independently in parallel
//! and written by index, so the result does not depend on scheduling.

use num_complex::Complex;
use rayon::prelude::*;

use crate::amplitude::{CatVector, ComplexAmplitude, Superposition};
use crate::coherent::{cat_norm_squared, coherent_cat_overlap, coherent_superposition_overlap, superposition_inner};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sampling window in the γ-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridGeometry<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Real> GridGeometry<T> {
    pub fn new(re_min: T, re_max: T, im_min: T, im_max: T, nx: usize, ny: usize) -> Result<Self> {
        let g = Self {
            re_min,
            re_max,
            im_min,
            im_max,
            nx,
            ny,
        };
        g.validate()?;
        Ok(g)
    }

    /// Square window `[−half_width, half_width]²` with `n × n` samples.
    pub fn square(half_width: T, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, -half_width, half_width, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        let bounds = [self.re_min, self.re_max, self.im_min, self.im_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if self.re_min >= self.re_max || self.im_min >= self.im_max {
            return Err(Error::InvalidGrid("bounds must satisfy min < max".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples per axis, got {}x{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn dx(&self) -> T {
        (self.re_max - self.re_min) / T::from_usize(self.nx).expect("count fits scalar")
    }

    pub fn dy(&self) -> T {
        (self.im_max - self.im_min) / T::from_usize(self.ny).expect("count fits scalar")
    }

    pub fn cell_area(&self) -> T {
        self.dx() * self.dy()
    }

    /// Center of cell `(i, j)`; `i` runs along `Re γ`, `j` along `Im γ`.
    pub fn point(&self, i: usize, j: usize) -> Complex<T> {
        let half = T::lit(0.5);
        let fi = T::from_usize(i).expect("index fits scalar") + half;
        let fj = T::from_usize(j).expect("index fits scalar") + half;
        Complex::new(self.re_min + fi * self.dx(), self.im_min + fj * self.dy())
    }
}

/// Row-major Husimi raster: `values[j * nx + i]` is the sample at
/// [`GridGeometry::point`]`(i, j)`, so row `0` is the lowest `Im γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QGrid<T> {
    pub geometry: GridGeometry<T>,
    pub values: Vec<T>,
    pub normalized: bool,
}

impl<T: Real> QGrid<T> {
    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::zero(), T::max)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[j * self.geometry.nx + i]
    }
}

fn evaluate<T, F>(geometry: GridGeometry<T>, normalized: bool, scale: T, amplitude: F) -> Result<QGrid<T>>
where
    T: Real,
    F: Fn(ComplexAmplitude<T>) -> Complex<T> + Sync,
{
    geometry.validate()?;
    let nx = geometry.nx;
    let mut values = vec![T::zero(); nx * geometry.ny];
    values.par_chunks_mut(nx).enumerate().try_for_each(|(j, row)| {
        for (i, cell) in row.iter_mut().enumerate() {
            let gamma = ComplexAmplitude::from_complex(geometry.point(i, j))?;
            *cell = amplitude(gamma).norm_sqr() / scale;
        }
        Ok::<(), Error>(())
    })?;
    Ok(QGrid {
        geometry,
        values,
        normalized,
    })
}

/// Husimi raster of `K_φ(α)`, from the closed-form overlaps `⟨γ|±α⟩`.
///
/// With `normalize` the values are divided by `‖K‖²`; the zero vector
/// `K_π(0)` then fails with [`Error::DegenerateState`].
pub fn husimi_cat<T: Real>(v: &CatVector<T>, geometry: GridGeometry<T>, normalize: bool) -> Result<QGrid<T>> {
    let scale = if normalize {
        let n = cat_norm_squared(v);
        if n <= T::zero() {
            return Err(Error::DegenerateState);
        }
        n
    } else {
        T::one()
    };
    evaluate(geometry, normalize, scale, |gamma| coherent_cat_overlap(gamma, v))
}

/// Husimi raster of an arbitrary superposition.
pub fn husimi_superposition<T: Real>(
    state: &Superposition<T>,
    geometry: GridGeometry<T>,
    normalize: bool,
) -> Result<QGrid<T>> {
    let scale = if normalize {
        let n = superposition_inner(state, state).re;
        if n <= T::zero() {
            return Err(Error::DegenerateState);
        }
        n
    } else {
        T::one()
    };
    evaluate(geometry, normalize, scale, |gamma| {
        coherent_superposition_overlap(gamma, state)
    })
}

/// `(cell area · Σ Q) / π`: `≈ 1` when a normalized state's support fits
/// inside the window, smaller when mass falls outside.
pub fn husimi_quadrature_check<T: Real>(grid: &QGrid<T>) -> T {
    let total: T = grid.values.iter().copied().sum();
    grid.geometry.cell_area() * total / T::PI()
}

/// Normalized Q of `K_φ(α)` along the line through the origin perpendicular
/// to `α`, at `γ = i t α/|α|` for `samples` evenly spaced `t ∈ [−t_max, t_max]`.
pub fn bisector_profile<T: Real>(v: &CatVector<T>, t_max: T, samples: usize) -> Result<Vec<(T, T)>> {
    let alpha = v.alpha();
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if samples < 3 {
        return Err(Error::InvalidGrid("profile needs at least 3 samples".into()));
    }
    let norm = cat_norm_squared(v);
    let dir = alpha.as_complex() / alpha.norm() * Complex::new(T::zero(), T::one());
    let last = T::from_usize(samples - 1).expect("count fits scalar");
    (0..samples)
        .map(|s| {
            let t = -t_max + T::lit(2.0) * t_max * T::from_usize(s).expect("index fits scalar") / last;
            let gamma = ComplexAmplitude::from_complex(dir * t)?;
            Ok((t, coherent_cat_overlap(gamma, v).norm_sqr() / norm))
        })
        .collect()
}

/// Outcome of comparing the even and odd cat fringes on the bisector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FringeReport {
    /// Local minima of either profile that were examined.
    pub extrema: usize,
    /// Of those, how many have a local maximum of the other profile within a
    /// quarter fringe period.
    pub matched: usize,
}

impl FringeReport {
    pub fn fraction(&self) -> f64 {
        if self.extrema == 0 {
            0.0
        } else {
            self.matched as f64 / self.extrema as f64
        }
    }
}

fn local_minima<T: Real>(q: &[T]) -> Vec<usize> {
    (1..q.len() - 1)
        .filter(|&i| q[i] < q[i - 1] && q[i] <= q[i + 1])
        .collect()
}

fn local_maxima<T: Real>(q: &[T]) -> Vec<usize> {
    (1..q.len() - 1)
        .filter(|&i| q[i] > q[i - 1] && q[i] >= q[i + 1])
        .collect()
}

/// Check that fringe minima of `K₀(α)` sit on fringe maxima of `K_π(α)` and
/// vice versa, along the bisector line. The fringe period there is `π/|α|`.
pub fn fringe_complementarity<T: Real>(alpha: ComplexAmplitude<T>, t_max: T, samples: usize) -> Result<FringeReport> {
    let even = bisector_profile(&CatVector::even(alpha), t_max, samples)?;
    let odd = bisector_profile(&CatVector::odd(alpha), t_max, samples)?;
    let qe: Vec<T> = even.iter().map(|p| p.1).collect();
    let qo: Vec<T> = odd.iter().map(|p| p.1).collect();
    let step = T::lit(2.0) * t_max / T::from_usize(samples - 1).expect("count fits scalar");
    let window = (T::PI() / (T::lit(4.0) * alpha.norm()) / step)
        .floor()
        .to_usize()
        .unwrap_or(0)
        .max(1);

    let mut report = FringeReport { extrema: 0, matched: 0 };
    for (minima_of, maxima_of) in [(&qe, &qo), (&qo, &qe)] {
        let maxima = local_maxima(maxima_of);
        for m in local_minima(minima_of) {
            report.extrema += 1;
            if maxima.iter().any(|&x| x.abs_diff(m) <= window) {
                report.matched += 1;
            }
        }
    }
    Ok(report)
}
