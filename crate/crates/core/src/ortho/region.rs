use std::fmt;

use rayon::prelude::*;

use super::{LatticeKind, Tolerances};
use crate::amplitude::{circular_distance, reduce_phase};
use crate::scalar::Real;

/// Region of the `(φ₁, φ₂)` torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// Both half-angle cosines vanish: `(0, π)` and `(π, 0)`. Any `α, β` work.
    AlwaysOrthogonal,
    /// Exactly one cosine vanishes. No `α, β` work.
    NoSolution,
    /// `cos((φ₂−φ₁)/2) / cos((φ₂+φ₁)/2) < 0`, forcing `Im(αβ*) = kπ`.
    IntegerClass,
    /// The same ratio is positive, forcing `Im(αβ*) = (k+½)π`.
    HalfIntegerClass,
    /// One phase is `π`, the other is anything else. Requires `Re(αβ*) = 0`.
    PiLineSpecial,
    /// One phase is `0`, the other is anything else. Requires `Re(αβ*) = 0`.
    ZeroLineSpecial,
}

impl RegionKind {
    pub fn name(&self) -> &'static str {
        match self {
            RegionKind::AlwaysOrthogonal => "AlwaysOrthogonal",
            RegionKind::NoSolution => "NoSolution",
            RegionKind::IntegerClass => "IntegerClass",
            RegionKind::HalfIntegerClass => "HalfIntegerClass",
            RegionKind::PiLineSpecial => "PiLineSpecial",
            RegionKind::ZeroLineSpecial => "ZeroLineSpecial",
        }
    }

    pub fn lattice(&self) -> Option<LatticeKind> {
        match self {
            RegionKind::IntegerClass => Some(LatticeKind::Integer),
            RegionKind::HalfIntegerClass => Some(LatticeKind::HalfInteger),
            _ => None,
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classification of a phase pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRegion<T> {
    pub kind: RegionKind,
    /// `Re(αβ*)` forced by the phases; present for the two lattice classes.
    pub omega: Option<T>,
    /// `cos((φ₂−φ₁)/2)`
    pub cos_diff: T,
    /// `cos((φ₂+φ₁)/2)`
    pub cos_sum: T,
}

/// [`classify_phase_pair_with`] under default tolerances.
pub fn classify_phase_pair<T: Real>(phi1: T, phi2: T) -> PhaseRegion<T> {
    classify_phase_pair_with(phi1, phi2, &Tolerances::default())
}

/// Place `(φ₁, φ₂)` on the torus map.
///
/// Only the four primary kinds are returned. The one-phase-fixed lines fall
/// inside the lattice classes with `ω = 0` (on `φ = π` the ratio is `−1`, on
/// `φ = 0` it is `+1`); use [`special_line`] to detect them.
///
/// Classification is discontinuous at the region edges: a cosine with
/// magnitude below `tol.cosine_zero` is treated as exactly zero.
pub fn classify_phase_pair_with<T: Real>(phi1: T, phi2: T, tol: &Tolerances<T>) -> PhaseRegion<T> {
    let half = T::lit(0.5);
    let (p1, p2) = (reduce_phase(phi1), reduce_phase(phi2));
    let cos_diff = ((p2 - p1) * half).cos();
    let cos_sum = ((p2 + p1) * half).cos();
    let diff_zero = cos_diff.abs() < tol.cosine_zero;
    let sum_zero = cos_sum.abs() < tol.cosine_zero;

    let (kind, omega) = match (diff_zero, sum_zero) {
        (true, true) => (RegionKind::AlwaysOrthogonal, None),
        (true, false) | (false, true) => (RegionKind::NoSolution, None),
        (false, false) => {
            // ω = ½ ln|cos_sum / cos_diff| in both classes; the sign of the
            // ratio only selects the lattice.
            let omega = half * (cos_sum.abs().ln() - cos_diff.abs().ln());
            if (cos_diff < T::zero()) != (cos_sum < T::zero()) {
                (RegionKind::IntegerClass, Some(omega))
            } else {
                (RegionKind::HalfIntegerClass, Some(omega))
            }
        }
    };
    PhaseRegion {
        kind,
        omega,
        cos_diff,
        cos_sum,
    }
}

/// Detect the one-phase-fixed lines.
///
/// Returns [`RegionKind::PiLineSpecial`] when exactly one phase is `π` and the
/// other is neither `0` nor `π`, [`RegionKind::ZeroLineSpecial`] likewise for
/// `0`, and `None` otherwise. Phases within `tol.cosine_zero` of the line count
/// as on it.
pub fn special_line<T: Real>(phi1: T, phi2: T, tol: &Tolerances<T>) -> Option<RegionKind> {
    let near = |a: T, b: T| circular_distance(a, b) <= tol.cosine_zero;
    let at_pi = |p: T| near(p, T::PI());
    let at_zero = |p: T| near(p, T::zero());
    let fixed = |p: T| at_pi(p) || at_zero(p);
    match (fixed(phi1), fixed(phi2)) {
        (true, false) => Some(if at_pi(phi1) {
            RegionKind::PiLineSpecial
        } else {
            RegionKind::ZeroLineSpecial
        }),
        (false, true) => Some(if at_pi(phi2) {
            RegionKind::PiLineSpecial
        } else {
            RegionKind::ZeroLineSpecial
        }),
        _ => None,
    }
}

/// Classification raster of the torus.
///
/// Samples sit on the nodes `φ = 2πi/N`, `i = 0..N`, so the lines `φ = 0`, `π`
/// and the always-orthogonal points are hit exactly when `N` is even. Cell
/// `(i, j)` holds `(φ₁, φ₂) = (2πi/N, 2πj/N)` at index `j·N + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseMap {
    pub resolution: usize,
    pub kinds: Vec<RegionKind>,
}

impl PhaseMap {
    pub fn count(&self, kind: RegionKind) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }

    pub fn fraction(&self, kind: RegionKind) -> f64 {
        self.count(kind) as f64 / self.kinds.len() as f64
    }

    pub fn phase(&self, index: usize) -> f64 {
        std::f64::consts::TAU * index as f64 / self.resolution as f64
    }

    /// `(i, j)` node indices holding `kind`.
    pub fn cells(&self, kind: RegionKind) -> Vec<(usize, usize)> {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == kind)
            .map(|(idx, _)| (idx % self.resolution, idx / self.resolution))
            .collect()
    }
}

/// Build an `N × N` raster with [`classify_phase_pair_with`]. Rows are
/// evaluated in parallel and written by index.
pub fn phase_map(resolution: usize, tol: &Tolerances<f64>) -> PhaseMap {
    let n = resolution;
    let step = std::f64::consts::TAU / n as f64;
    let mut kinds = vec![RegionKind::NoSolution; n * n];
    kinds.par_chunks_mut(n.max(1)).enumerate().for_each(|(j, row)| {
        let phi2 = step * j as f64;
        for (i, cell) in row.iter_mut().enumerate() {
            *cell = classify_phase_pair_with(step * i as f64, phi2, tol).kind;
        }
    });
    PhaseMap { resolution, kinds }
}
