//! Closed-form overlaps between coherent states and cat vectors.
//!
//! Phase convention: `⟨β|α⟩ = exp(β*α − |α|²/2 − |β|²/2)`, the one implied by
//! the number-basis expansion `|α⟩ = e^{−|α|²/2} Σ αᵐ/√m! |m⟩`. Only the
//! modulus `exp(−|α−β|²/2)` is convention independent; every orthogonality
//! statement in this crate holds for any consistent choice.
//!
//! The exponent is split as `−|α−β|²/2 + i·Im(β*α)` before exponentiating.
//! Its real part is never positive, so no term can overflow regardless of
//! `|α|`, and no precision is lost subtracting two large squared norms.

use num_complex::Complex;

use crate::amplitude::{unit_phase, CatVector, ComplexAmplitude, Superposition};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `ln⟨β|α⟩` with the real part written as `−|α−β|²/2`.
pub fn log_coherent_overlap<T: Real>(alpha: ComplexAmplitude<T>, beta: ComplexAmplitude<T>) -> Complex<T> {
    let dr = alpha.re() - beta.re();
    let di = alpha.im() - beta.im();
    let half = T::lit(0.5);
    // Im(β*α) = β_re α_im − β_im α_re
    let phase = beta.re() * alpha.im() - beta.im() * alpha.re();
    Complex::new(-half * (dr * dr + di * di), phase)
}

/// Overlap `⟨β|α⟩` between two normalized coherent states.
pub fn coherent_overlap<T: Real>(alpha: ComplexAmplitude<T>, beta: ComplexAmplitude<T>) -> Complex<T> {
    let z = log_coherent_overlap(alpha, beta);
    Complex::from_polar(z.re.exp(), z.im)
}

/// `⟨K_{φ₂}(β)|K_{φ₁}(α)⟩` for `bra = K_{φ₂}(β)` and `ket = K_{φ₁}(α)`.
///
/// Expanded as
/// `⟨β|α⟩ + e^{iφ₁}⟨β|−α⟩ + e^{−iφ₂}⟨−β|α⟩ + e^{i(φ₁−φ₂)}⟨−β|−α⟩`
/// and grouped using `⟨−β|−α⟩ = ⟨β|α⟩`, `⟨β|−α⟩ = ⟨−β|α⟩`.
/// The zero vector `K_π(0)` yields exactly `0`.
pub fn cat_inner_product<T: Real>(bra: &CatVector<T>, ket: &CatVector<T>) -> Complex<T> {
    if bra.is_degenerate() || ket.is_degenerate() {
        return Complex::new(T::zero(), T::zero());
    }
    let (same, flipped) = phase_coefficients(bra.phi(), ket.phi());
    let near = coherent_overlap(ket.alpha(), bra.alpha());
    let far = coherent_overlap(ket.alpha(), -bra.alpha());
    near * same + far * flipped
}

/// The two phase coefficients `(1 + e^{i(φ₁−φ₂)}, e^{iφ₁} + e^{−iφ₂})`.
fn phase_coefficients<T: Real>(phi2: T, phi1: T) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    let same = one + unit_phase(phi1 - phi2);
    let flipped = unit_phase(phi1) + unit_phase(-phi2);
    (same, flipped)
}

/// `‖K_φ(α)‖² = 2 + 2 cos φ · e^{−2|α|²}`; exactly `0` for `K_π(0)`.
pub fn cat_norm_squared<T: Real>(v: &CatVector<T>) -> T {
    if v.is_degenerate() {
        return T::zero();
    }
    let two = T::lit(2.0);
    two + two * v.phase_factor().re * (-two * v.alpha().norm_sqr()).exp()
}

/// `|⟨u|v⟩| / (‖u‖‖v‖)`.
pub fn normalized_overlap<T: Real>(bra: &CatVector<T>, ket: &CatVector<T>) -> Result<T> {
    let nb = cat_norm_squared(bra);
    let nk = cat_norm_squared(ket);
    if nb == T::zero() || nk == T::zero() {
        return Err(Error::DegenerateState);
    }
    Ok(cat_inner_product(bra, ket).norm() / (nb * nk).sqrt())
}

/// Scale-free cancellation measure of the cat inner product, in `[0, 1]`.
///
/// The inner product is a sum of two pieces with magnitudes
/// `|1+e^{i(φ₁−φ₂)}|·e^{−|α−β|²/2}` and `|e^{iφ₁}+e^{−iφ₂}|·e^{−|α+β|²/2}`.
/// This returns `|sum| / (|piece₁| + |piece₂|)` with the larger exponent
/// factored out, so it stays meaningful when both pieces underflow. It is `0`
/// exactly at orthogonality and `1` when nothing cancels.
pub fn orthogonality_residual<T: Real>(bra: &CatVector<T>, ket: &CatVector<T>) -> T {
    if bra.is_degenerate() || ket.is_degenerate() {
        return T::zero();
    }
    let (same, flipped) = phase_coefficients(bra.phi(), ket.phi());
    let near = log_coherent_overlap(ket.alpha(), bra.alpha());
    let far = log_coherent_overlap(ket.alpha(), -bra.alpha());
    let shift = near.re.max(far.re);
    let a = Complex::from_polar((near.re - shift).exp(), near.im) * same;
    let b = Complex::from_polar((far.re - shift).exp(), far.im) * flipped;
    let scale = a.norm() + b.norm();
    if scale == T::zero() {
        return T::zero();
    }
    (a + b).norm() / scale
}

/// `⟨γ|K_φ(α)⟩ = ⟨γ|α⟩ + e^{iφ}⟨γ|−α⟩`.
pub fn coherent_cat_overlap<T: Real>(gamma: ComplexAmplitude<T>, ket: &CatVector<T>) -> Complex<T> {
    if ket.is_degenerate() {
        return Complex::new(T::zero(), T::zero());
    }
    coherent_overlap(ket.alpha(), gamma) + ket.phase_factor() * coherent_overlap(-ket.alpha(), gamma)
}

/// `⟨bra|ket⟩` for arbitrary finite superpositions of coherent states.
pub fn superposition_inner<T: Real>(bra: &Superposition<T>, ket: &Superposition<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for b in bra.terms() {
        for k in ket.terms() {
            acc += b.weight.conj() * k.weight * coherent_overlap(k.amplitude, b.amplitude);
        }
    }
    acc
}

/// `⟨γ|ψ⟩` for a superposition `ψ`.
pub fn coherent_superposition_overlap<T: Real>(gamma: ComplexAmplitude<T>, ket: &Superposition<T>) -> Complex<T> {
    ket.terms().iter().fold(Complex::new(T::zero(), T::zero()), |acc, t| {
        acc + t.weight * coherent_overlap(t.amplitude, gamma)
    })
}

/// Metric form `g(α, β) = Re(αβ*)`.
pub fn metric_form<T: Real>(alpha: ComplexAmplitude<T>, beta: ComplexAmplitude<T>) -> T {
    alpha.re() * beta.re() + alpha.im() * beta.im()
}

/// Symplectic form `h(α, β) = Im(αβ*)`.
pub fn symplectic_form<T: Real>(alpha: ComplexAmplitude<T>, beta: ComplexAmplitude<T>) -> T {
    alpha.im() * beta.re() - alpha.re() * beta.im()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn amp(re: f64, im: f64) -> ComplexAmplitude<f64> {
        ComplexAmplitude::new(re, im).unwrap()
    }

    #[test]
    fn vacuum_and_self_overlap_are_one() {
        let z = coherent_overlap(amp(0.0, 0.0), amp(0.0, 0.0));
        assert_eq!(z, Complex::new(1.0, 0.0));
        let a = amp(3.5, -2.25);
        let z = coherent_overlap(a, a);
        assert_eq!(z, Complex::new(1.0, 0.0));
    }

    #[test]
    fn overlap_modulus_follows_distance() {
        let z = coherent_overlap(amp(1.0, 0.0), amp(0.0, 0.0));
        assert_relative_eq!(z.norm_sqr(), (-1.0_f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(z.norm_sqr(), 0.367_879_441_171_442_3, max_relative = 1e-15);

        let z = coherent_overlap(amp(1.0, 0.0), amp(-1.0, 0.0));
        assert_relative_eq!(z.re, (-2.0_f64).exp(), max_relative = 1e-15);
        assert_eq!(z.im, 0.0);
        assert_relative_eq!(z.re, 0.135_335_283_236_612_7, max_relative = 1e-15);
    }

    #[test]
    fn overlap_survives_large_amplitudes() {
        let a = amp(25.0, 10.0);
        let b = amp(25.5, 9.0);
        let z = coherent_overlap(a, b);
        assert!(z.norm().is_finite());
        assert_relative_eq!(z.norm_sqr(), (-1.25_f64).exp(), max_relative = 1e-13);
    }

    #[test]
    fn parity_makes_even_and_odd_orthogonal() {
        let bra = CatVector::odd(amp(0.7, -1.3));
        let ket = CatVector::even(amp(-2.0, 0.4));
        assert_eq!(cat_inner_product(&bra, &ket).norm(), 0.0);
        assert_eq!(orthogonality_residual(&bra, &ket), 0.0);
    }

    #[test]
    fn even_vacuum_cat_self_product_is_four() {
        let v = CatVector::even(amp(0.0, 0.0));
        assert_eq!(cat_inner_product(&v, &v), Complex::new(4.0, 0.0));
        assert_eq!(cat_norm_squared(&v), 4.0);
    }

    #[test]
    fn odd_vacuum_cat_is_the_zero_vector() {
        let z = CatVector::odd(amp(0.0, 0.0));
        assert_eq!(cat_norm_squared(&z), 0.0);
        let other = CatVector::new(amp(1.0, 2.0), 0.3).unwrap();
        assert_eq!(cat_inner_product(&z, &other), Complex::new(0.0, 0.0));
        assert_eq!(cat_inner_product(&other, &z), Complex::new(0.0, 0.0));
        assert_eq!(normalized_overlap(&z, &other), Err(Error::DegenerateState));
    }

    #[test]
    fn even_partner_of_four_plus_eight_i_is_orthogonal() {
        let alpha = amp(4.0, 8.0);
        let beta = amp(-9.0 * PI / 20.0, 9.0 * PI / 40.0);
        let inner = cat_inner_product(&CatVector::even(beta), &CatVector::even(alpha));
        assert!(inner.norm() < 1e-14, "{inner}");
        assert!(metric_form(alpha, beta).abs() < 1e-14);
    }

    #[test]
    fn norm_matches_self_product() {
        let r2 = 2.0 * PI;
        let v = CatVector::even(amp(r2.sqrt(), 0.0));
        let expected = 2.0 + 2.0 * (-4.0 * PI).exp();
        assert_relative_eq!(cat_norm_squared(&v), expected, max_relative = 1e-15);
        assert_relative_eq!(cat_inner_product(&v, &v).re, expected, max_relative = 1e-14);
    }

    #[test]
    fn bilinear_forms() {
        let a = amp(0.3, -1.7);
        assert_relative_eq!(metric_form(a, a), a.norm_sqr());
        assert_eq!(symplectic_form(a, a), 0.0);
        assert_eq!(metric_form(amp(1.0, 0.0), amp(0.0, 1.0)), 0.0);
        assert_eq!(symplectic_form(amp(1.0, 0.0), amp(0.0, 1.0)), -1.0);
        let s = (4.0 * PI).sqrt();
        assert_relative_eq!(
            symplectic_form(amp(s, 0.0), amp(0.0, -s)),
            4.0 * PI,
            max_relative = 1e-15
        );
    }

    #[test]
    fn coherent_state_orthogonal_to_shifted_even_cat() {
        // <5| K_0(i 0.9 pi)> vanishes
        let a = amp(5.0, 0.0);
        let v = CatVector::even(amp(0.0, 0.9 * PI));
        assert!(coherent_cat_overlap(a, &v).norm() < 1e-15);
    }

    #[test]
    fn residual_is_one_without_cancellation() {
        let v = CatVector::even(amp(1.0, 0.0));
        assert_relative_eq!(orthogonality_residual(&v, &v), 1.0, max_relative = 1e-15);
        // both pieces underflow, but the ratio is still resolved
        let far = CatVector::new(amp(0.0, 40.0), 0.4).unwrap();
        let r = orthogonality_residual(&far, &CatVector::new(amp(40.0, 0.0), 1.1).unwrap());
        assert!(r > 0.1 && r <= 1.0, "{r}");
    }

    #[test]
    fn works_in_single_precision() {
        let a = ComplexAmplitude::new(1.0_f32, 0.0).unwrap();
        let z = coherent_overlap(a, ComplexAmplitude::zero());
        assert!((z.norm_sqr() - (-1.0_f32).exp()).abs() < 1e-6);
    }
}
