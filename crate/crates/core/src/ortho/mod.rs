//! Orthogonality conditions between cat vectors.
//!
//! `⟨K_{φ₂}(β)|K_{φ₁}(α)⟩ = 0` separates into a condition on the phases, which
//! fixes the metric form `ω = Re(αβ*)`, and a lattice condition on the
//! symplectic form `Im(αβ*)`: either `kπ` (integer class) or `(k+½)π`
//! (half-integer class). The modules below classify phase pairs, enumerate the
//! resulting families of `β`, and invert the phase condition for `φ₂`.

mod family;
mod phase;
mod region;

pub use family::{
    band_areas, coherent_vs_cat_partner, equal_photon_radii, equal_photon_radius, even_cat_partner, j_vector_partner,
    odd_cat_partner, solve_beta_family, solve_beta_family_with, BetaSolution, JVector,
};
pub use phase::{solve_phi2, solve_phi2_with, Phi2Solution};
pub use region::{
    classify_phase_pair, classify_phase_pair_with, phase_map, special_line, PhaseMap, PhaseRegion, RegionKind,
};

use std::fmt;

use crate::amplitude::ComplexAmplitude;
use crate::coherent::symplectic_form;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numerical thresholds used by the solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Snap radius on `Im(αβ*)` around a lattice point. Residuals between this
    /// and ten times this are ambiguous; beyond that the pair is not quantized.
    pub quantization: T,
    /// Bound on `|⟨K_{φ₂}(β)|K_{φ₁}(α)⟩|` for any emitted solution.
    pub verification: T,
    /// A half-angle cosine below this magnitude counts as zero.
    pub cosine_zero: T,
    /// Bound on the scale-free residual accepted from the `φ₂` solver.
    pub phi2_residual: T,
}

impl<T: Real> Default for Tolerances<T> {
    /// `1e-9`, `1e-10`, `1e-12`, `1e-8`, each raised to a small multiple of
    /// machine epsilon for single precision.
    fn default() -> Self {
        Self {
            quantization: T::tol(1e-9, 256.0),
            verification: T::tol(1e-10, 256.0),
            cosine_zero: T::tol(1e-12, 64.0),
            phi2_residual: T::tol(1e-8, 1024.0),
        }
    }
}

/// Which lattice `Im(αβ*)` is pinned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// `Im(αβ*) = kπ`
    Integer,
    /// `Im(αβ*) = (2k+1)π/2`
    HalfInteger,
}

impl LatticeKind {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeKind::Integer => "Integer",
            LatticeKind::HalfInteger => "HalfInteger",
        }
    }

    /// Lattice coordinate of index `k`: `k` or `k + ½`.
    pub fn coordinate<T: Real>(&self, k: i64) -> T {
        let k = T::from_i64(k).expect("lattice index fits scalar");
        match self {
            LatticeKind::Integer => k,
            LatticeKind::HalfInteger => k + T::lit(0.5),
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A lattice class together with its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantizationClass {
    pub kind: LatticeKind,
    pub k: i64,
}

impl QuantizationClass {
    pub fn integer(k: i64) -> Self {
        Self {
            kind: LatticeKind::Integer,
            k,
        }
    }

    pub fn half_integer(k: i64) -> Self {
        Self {
            kind: LatticeKind::HalfInteger,
            k,
        }
    }

    /// The lattice value of `Im(αβ*)`: `kπ` or `(k+½)π`.
    pub fn value<T: Real>(&self) -> T {
        self.kind.coordinate::<T>(self.k) * T::PI()
    }
}

/// Result of matching `Im(αβ*)` against both lattices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantization<T> {
    pub class: QuantizationClass,
    /// `|Im(αβ*) − class value|` before snapping.
    pub residual: T,
}

/// Distance from `h` to the nearest point of each lattice, with its index.
pub fn lattice_residuals<T: Real>(h: T) -> [(QuantizationClass, T); 2] {
    let pi = T::PI();
    let x = h / pi;
    let k_int = x.round();
    let k_half = (x - T::lit(0.5)).round();
    let r_int = (h - k_int * pi).abs();
    let r_half = (h - (k_half + T::lit(0.5)) * pi).abs();
    let to_i64 = |v: T| v.to_i64().expect("lattice index fits i64");
    [
        (QuantizationClass::integer(to_i64(k_int)), r_int),
        (QuantizationClass::half_integer(to_i64(k_half)), r_half),
    ]
}

/// Classify a value of the symplectic form onto a lattice.
pub fn quantize<T: Real>(h: T, tol: &Tolerances<T>) -> Result<Quantization<T>> {
    if !h.is_finite() {
        return Err(Error::InvalidParameter(format!("symplectic form is not finite: {h}")));
    }
    let [int, half] = lattice_residuals(h);
    let best = if int.1 <= half.1 { int } else { half };
    if best.1 <= tol.quantization {
        return Ok(Quantization {
            class: best.0,
            residual: best.1,
        });
    }
    let err = if best.1 <= tol.quantization * T::lit(10.0) {
        Error::AmbiguousQuantization {
            value: h.as_f64(),
            residual: best.1.as_f64(),
        }
    } else {
        Error::NotQuantized {
            value: h.as_f64(),
            residual: best.1.as_f64(),
        }
    };
    Err(err)
}

/// [`quantize`] applied to `Im(αβ*)`.
pub fn quantize_pair<T: Real>(
    alpha: ComplexAmplitude<T>,
    beta: ComplexAmplitude<T>,
    tol: &Tolerances<T>,
) -> Result<Quantization<T>> {
    quantize(symplectic_form(alpha, beta), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn snaps_to_nearest_lattice() {
        let tol = Tolerances::<f64>::default();
        let q = quantize(3.0 * PI + 1e-11, &tol).unwrap();
        assert_eq!(q.class, QuantizationClass::integer(3));
        let q = quantize(-4.5 * PI, &tol).unwrap();
        assert_eq!(q.class, QuantizationClass::half_integer(-5));
        let q = quantize(0.0, &tol).unwrap();
        assert_eq!(q.class, QuantizationClass::integer(0));
    }

    #[test]
    fn ambiguous_band_and_rejection() {
        let tol = Tolerances::<f64>::default();
        assert!(matches!(
            quantize(PI + 5e-9, &tol),
            Err(Error::AmbiguousQuantization { .. })
        ));
        assert!(matches!(quantize(PI + 1e-6, &tol), Err(Error::NotQuantized { .. })));
        assert!(matches!(quantize(1.0, &tol), Err(Error::NotQuantized { .. })));
    }

    #[test]
    fn class_values() {
        assert_eq!(QuantizationClass::integer(-2).value::<f64>(), -2.0 * PI);
        assert_eq!(QuantizationClass::half_integer(1).value::<f64>(), 1.5 * PI);
        assert_eq!(QuantizationClass::half_integer(-1).value::<f64>(), -0.5 * PI);
    }

    #[test]
    fn single_precision_tolerances_are_floored() {
        let tol = Tolerances::<f32>::default();
        assert!(tol.cosine_zero > f32::EPSILON);
        let tol64 = Tolerances::<f64>::default();
        assert_eq!(tol64.cosine_zero, 1e-12);
        assert_eq!(tol64.quantization, 1e-9);
    }
}
