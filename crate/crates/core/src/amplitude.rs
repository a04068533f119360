//! Coherent-state labels, cat vectors and generic finite superpositions.

use std::fmt;
use std::ops::Neg;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Reduce an angle into `[0, 2π)`.
///
/// The floored remainder can round up to exactly `2π` for tiny negative
/// inputs; that case is folded back onto `0`.
pub fn reduce_phase<T: Real>(phi: T) -> T {
    let two_pi = T::TAU();
    if phi >= T::zero() && phi < two_pi {
        return phi;
    }
    let r = phi - two_pi * (phi / two_pi).floor();
    if r >= two_pi || r < T::zero() {
        T::zero()
    } else {
        r
    }
}

/// Distance between two angles measured around the circle, in `[0, π]`.
pub fn circular_distance<T: Real>(a: T, b: T) -> T {
    let d = reduce_phase(a - b);
    d.min(T::TAU() - d)
}

/// A coherent-state label α ∈ ℂ with finite components.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ComplexAmplitude<T> {
    re: T,
    im: T,
}

impl<T: Real> ComplexAmplitude<T> {
    pub fn new(re: T, im: T) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite {
                re: re.as_f64(),
                im: im.as_f64(),
            });
        }
        Ok(Self { re, im })
    }

    pub fn from_complex(z: Complex<T>) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// Purely real amplitude.
    pub fn real(re: T) -> Result<Self> {
        Self::new(re, T::zero())
    }

    pub fn zero() -> Self {
        Self {
            re: T::zero(),
            im: T::zero(),
        }
    }

    #[inline]
    pub fn re(&self) -> T {
        self.re
    }

    #[inline]
    pub fn im(&self) -> T {
        self.im
    }

    #[inline]
    pub fn as_complex(&self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    #[inline]
    pub fn norm_sqr(&self) -> T {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.re.hypot(self.im)
    }

    #[inline]
    pub fn arg(&self) -> T {
        self.im.atan2(self.re)
    }

    #[inline]
    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.re == T::zero() && self.im == T::zero()
    }

    /// Rotate the label by `theta` around the phase-space origin.
    pub fn rotate(&self, theta: T) -> Self {
        let z = self.as_complex() * Complex::from_polar(T::one(), theta);
        Self { re: z.re, im: z.im }
    }
}

impl<T: Real> Neg for ComplexAmplitude<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexAmplitude<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}{:+?}i)", self.re, self.im)
    }
}

impl<T: Real> fmt::Display for ComplexAmplitude<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// Unnormalized cat vector `|α⟩ + e^{iφ}|−α⟩`.
///
/// The relative phase is reduced into `[0, 2π)` at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatVector<T> {
    alpha: ComplexAmplitude<T>,
    phi: T,
}

impl<T: Real> CatVector<T> {
    pub fn new(alpha: ComplexAmplitude<T>, phi: T) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidParameter(format!("phase must be finite, got {phi}")));
        }
        Ok(Self {
            alpha,
            phi: reduce_phase(phi),
        })
    }

    /// Even cat, φ = 0.
    pub fn even(alpha: ComplexAmplitude<T>) -> Self {
        Self { alpha, phi: T::zero() }
    }

    /// Odd cat, φ = π.
    pub fn odd(alpha: ComplexAmplitude<T>) -> Self {
        Self { alpha, phi: T::PI() }
    }

    #[inline]
    pub fn alpha(&self) -> ComplexAmplitude<T> {
        self.alpha
    }

    #[inline]
    pub fn phi(&self) -> T {
        self.phi
    }

    /// The zero vector `K_π(0)`.
    pub fn is_degenerate(&self) -> bool {
        self.alpha.is_zero() && self.phi == T::PI()
    }

    /// `e^{iφ}`, snapped to `±1` when the stored phase is exactly `0` or `π`
    /// so that parity cancellations are exact.
    pub fn phase_factor(&self) -> Complex<T> {
        unit_phase(self.phi)
    }

    pub fn to_superposition(&self) -> Superposition<T> {
        Superposition::new(vec![
            Term {
                weight: Complex::new(T::one(), T::zero()),
                amplitude: self.alpha,
            },
            Term {
                weight: self.phase_factor(),
                amplitude: -self.alpha,
            },
        ])
    }
}

/// `e^{iφ}` with exact values at the multiples of `π/2` that cats use.
pub(crate) fn unit_phase<T: Real>(phi: T) -> Complex<T> {
    let phi = reduce_phase(phi);
    let (one, zero) = (T::one(), T::zero());
    if phi == zero {
        Complex::new(one, zero)
    } else if phi == T::PI() {
        Complex::new(-one, zero)
    } else if phi == T::FRAC_PI_2() {
        Complex::new(zero, one)
    } else if phi == T::PI() + T::FRAC_PI_2() {
        Complex::new(zero, -one)
    } else {
        Complex::from_polar(one, phi)
    }
}

/// One weighted coherent state inside a [`Superposition`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term<T> {
    pub weight: Complex<T>,
    pub amplitude: ComplexAmplitude<T>,
}

/// Finite, unnormalized linear combination `Σ c_j |α_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Superposition<T> {
    terms: Vec<Term<T>>,
}

impl<T: Real> Superposition<T> {
    pub fn new(terms: Vec<Term<T>>) -> Self {
        Self { terms }
    }

    /// A single normalized coherent state.
    pub fn coherent(alpha: ComplexAmplitude<T>) -> Self {
        Self::new(vec![Term {
            weight: Complex::new(T::one(), T::zero()),
            amplitude: alpha,
        }])
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn max_amplitude(&self) -> T {
        self.terms.iter().map(|t| t.amplitude.norm()).fold(T::zero(), T::max)
    }
}

impl<T: Real> From<CatVector<T>> for Superposition<T> {
    fn from(v: CatVector<T>) -> Self {
        v.to_superposition()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reduce_phase_wraps_into_range() {
        assert_eq!(reduce_phase(0.0_f64), 0.0);
        assert_eq!(reduce_phase(2.0 * PI), 0.0);
        assert!((reduce_phase(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!((reduce_phase(7.0 * PI) - PI).abs() < 1e-14);
        assert_eq!(reduce_phase(-1e-300_f64), 0.0);
    }

    #[test]
    fn circular_distance_is_symmetric_and_short() {
        assert!((circular_distance(0.1, 2.0 * PI - 0.1) - 0.2).abs() < 1e-14);
        assert_eq!(circular_distance(1.0, 1.0), 0.0);
        assert!((circular_distance(0.0, PI) - PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(ComplexAmplitude::new(f64::NAN, 0.0).is_err());
        assert!(ComplexAmplitude::new(0.0, f64::INFINITY).is_err());
        let a = ComplexAmplitude::new(1.0, 2.0).unwrap();
        assert!(CatVector::new(a, f64::NAN).is_err());
    }

    #[test]
    fn cat_phase_is_reduced() {
        let a = ComplexAmplitude::new(1.0, 0.0).unwrap();
        let v = CatVector::new(a, -PI).unwrap();
        assert_eq!(v.phi(), PI);
        assert_eq!(v.phase_factor(), Complex::new(-1.0, 0.0));
        assert!(CatVector::odd(ComplexAmplitude::<f64>::zero()).is_degenerate());
        assert!(!CatVector::even(ComplexAmplitude::<f64>::zero()).is_degenerate());
    }
}
