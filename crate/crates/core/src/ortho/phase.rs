use super::{quantize_pair, LatticeKind, QuantizationClass, Tolerances};
use crate::amplitude::{circular_distance, reduce_phase, CatVector, ComplexAmplitude};
use crate::coherent::{metric_form, orthogonality_residual};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative phase of the bra that completes an orthogonal pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phi2Solution<T> {
    pub phi2: T,
    pub class: QuantizationClass,
    /// `Re(αβ*)`
    pub omega: T,
    /// `b = tan(φ₂/4)` as returned by the quadratic (the root with `|b| ≤ 1`).
    pub quarter_tangent: T,
    /// Scale-free residual of the substituted solution.
    pub residual: T,
}

/// [`solve_phi2_with`] under default tolerances.
pub fn solve_phi2<T: Real>(alpha: ComplexAmplitude<T>, beta: ComplexAmplitude<T>, phi1: T) -> Result<Phi2Solution<T>> {
    solve_phi2_with(alpha, beta, phi1, &Tolerances::default())
}

/// Solve `⟨K_{φ₂}(β)|K_{φ₁}(α)⟩ = 0` for `φ₂`, given `α`, `β` and `φ₁`.
///
/// With `a = tan(φ₁/4)`, `b = tan(φ₂/4)` and `E = e^{2ω}`, the phase
/// condition becomes `U b² − 2W b − U = 0` where
///
/// * half-integer class: `W = 2a(1+E)`, `U = (1−E)(a²−1)`
/// * integer class:      `W = 2a(1−E)`, `U = (1+E)(a²−1)`
///
/// Both coefficients are divided by `1+E` (so `E` never overflows), which
/// turns `(1−E)/(1+E)` into `−tanh ω`. The two roots multiply to `−1`, i.e.
/// they differ by `2π` in `φ₂`, so the solution is unique on the circle.
/// The root with `|b| ≤ 1` is taken in its cancellation-free form, mapped
/// back with `φ₂ = 4·atan(b)`, reduced into `[0, 2π)`, and then substituted
/// into the inner product; a residual above `tol.phi2_residual` is reported
/// as [`Error::VerificationFailed`].
///
/// The resulting sign law: for `Re(αβ*) > 0` the phases sit on opposite sides
/// of `π`, for `Re(αβ*) < 0` on the same side. This follows from
/// `cos²((φ₁−φ₂)/2) − cos²((φ₁+φ₂)/2) = sin φ₁ sin φ₂`.
pub fn solve_phi2_with<T: Real>(
    alpha: ComplexAmplitude<T>,
    beta: ComplexAmplitude<T>,
    phi1: T,
    tol: &Tolerances<T>,
) -> Result<Phi2Solution<T>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if !phi1.is_finite() {
        return Err(Error::InvalidParameter(format!("phi1 must be finite, got {phi1}")));
    }
    let omega = metric_form(alpha, beta);
    if omega.abs() <= tol.cosine_zero {
        return Err(Error::DegenerateRealPart);
    }
    let quant = quantize_pair(alpha, beta, tol)?;
    let phi1 = reduce_phase(phi1);
    if circular_distance(phi1, T::zero()) <= tol.cosine_zero || circular_distance(phi1, T::PI()) <= tol.cosine_zero {
        return Err(Error::DegeneratePhi1);
    }

    let a = (phi1 / T::lit(4.0)).tan();
    let two = T::lit(2.0);
    let t = omega.tanh();
    let a2m1 = a * a - T::one();
    let (w, u) = match quant.class.kind {
        LatticeKind::HalfInteger => (two * a, -t * a2m1),
        LatticeKind::Integer => (-two * a * t, a2m1),
    };
    let root = w.hypot(u);
    let q = if w >= T::zero() { w + root } else { w - root };
    if q == T::zero() {
        return Err(Error::DegeneratePhi1);
    }
    let b = -u / q;
    let phi2 = reduce_phase(T::lit(4.0) * b.atan());

    let residual = orthogonality_residual(&CatVector::new(beta, phi2)?, &CatVector::new(alpha, phi1)?);
    if residual.is_nan() || residual > tol.phi2_residual {
        return Err(Error::VerificationFailed {
            residual: residual.as_f64(),
            tolerance: tol.phi2_residual.as_f64(),
        });
    }
    Ok(Phi2Solution {
        phi2,
        class: quant.class,
        omega,
        quarter_tangent: b,
        residual,
    })
}
