use num_complex::Complex;

use super::region::classify_phase_pair_with;
use super::{LatticeKind, QuantizationClass, Tolerances};
use crate::amplitude::{CatVector, ComplexAmplitude, Superposition, Term};
use crate::coherent::{cat_inner_product, normalized_overlap, symplectic_form};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// One verified member of a `β` family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaSolution<T> {
    pub class: QuantizationClass,
    pub beta: ComplexAmplitude<T>,
    /// `Re(αβ*)` shared by the whole family.
    pub omega: T,
    /// `|⟨K_{φ₂}(β)|K_{φ₁}(α)⟩|`
    pub residual: T,
    /// Same, divided by both norms. `None` when `β` is the zero vector.
    pub normalized_residual: Option<T>,
    /// `|Im(αβ*) − class value|`
    pub lattice_residual: T,
}

/// `z / conj(α)`, exact when `α` lies on an axis.
fn div_by_conj<T: Real>(z: Complex<T>, alpha: ComplexAmplitude<T>) -> Complex<T> {
    let (a, b) = (alpha.re(), -alpha.im());
    if b == T::zero() {
        Complex::new(z.re / a, z.im / a)
    } else if a == T::zero() {
        // (x + iy) / (ib) = y/b − i x/b
        Complex::new(z.im / b, -z.re / b)
    } else {
        z / Complex::new(a, b)
    }
}

fn amplitude<T: Real>(z: Complex<T>) -> Result<ComplexAmplitude<T>> {
    ComplexAmplitude::from_complex(z)
}

/// `±β` label the same even cat and the same odd cat up to sign; purely
/// imaginary labels are returned in the upper half plane.
fn canonical<T: Real>(beta: ComplexAmplitude<T>) -> ComplexAmplitude<T> {
    if beta.re() == T::zero() && beta.im() < T::zero() {
        -beta
    } else {
        beta
    }
}

/// [`solve_beta_family_with`] under default tolerances.
pub fn solve_beta_family<T: Real>(
    alpha: ComplexAmplitude<T>,
    phi1: T,
    phi2: T,
    k_min: i64,
    k_max: i64,
) -> Result<Vec<BetaSolution<T>>> {
    solve_beta_family_with(alpha, phi1, phi2, k_min, k_max, &Tolerances::default())
}

/// All `β` with `⟨K_{φ₂}(β)|K_{φ₁}(α)⟩ = 0` for `k` in `k_min..=k_max`.
///
/// `β_k = (ω − iκπ)/α*` with `κ = k` in the integer class and `κ = k + ½` in
/// the half-integer class, where `ω` comes from the phases. Every member is
/// substituted back into the inner product before it is returned.
pub fn solve_beta_family_with<T: Real>(
    alpha: ComplexAmplitude<T>,
    phi1: T,
    phi2: T,
    k_min: i64,
    k_max: i64,
    tol: &Tolerances<T>,
) -> Result<Vec<BetaSolution<T>>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if k_min > k_max {
        return Err(Error::InvalidParameter(format!("empty k range {k_min}..={k_max}")));
    }
    let region = classify_phase_pair_with(phi1, phi2, tol);
    let (lattice, omega) = match (region.kind.lattice(), region.omega) {
        (Some(l), Some(w)) => (l, w),
        _ => {
            return Err(Error::WrongRegion {
                kind: region.kind.name(),
            })
        }
    };
    let ket = CatVector::new(alpha, phi1)?;
    (k_min..=k_max)
        .map(|k| {
            let class = QuantizationClass { kind: lattice, k };
            let kappa = lattice.coordinate::<T>(k);
            let beta = amplitude(div_by_conj(Complex::new(omega, -kappa * T::PI()), alpha))?;
            let bra = CatVector::new(beta, phi2)?;
            let residual = cat_inner_product(&bra, &ket).norm();
            if residual.is_nan() || residual > tol.verification {
                return Err(Error::VerificationFailed {
                    residual: residual.as_f64(),
                    tolerance: tol.verification.as_f64(),
                });
            }
            Ok(BetaSolution {
                class,
                beta,
                omega,
                residual,
                normalized_residual: normalized_overlap(&bra, &ket).ok(),
                lattice_residual: (symplectic_form(alpha, beta) - class.value::<T>()).abs(),
            })
        })
        .collect()
}

/// Even-cat partner `β_n = iπ(2n+1)/(2α*)`: `⟨K₀(β_n)|K₀(α)⟩ = 0`.
///
/// Equals the half-integer family at `ω = 0`, `k = −n−1`.
pub fn even_cat_partner<T: Real>(alpha: ComplexAmplitude<T>, n: u64) -> Result<ComplexAmplitude<T>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let kappa = T::from_u64(n).expect("index fits scalar") + T::lit(0.5);
    let beta = div_by_conj(Complex::new(T::zero(), kappa * T::PI()), alpha);
    Ok(canonical(amplitude(beta)?))
}

/// Odd-cat partner `β'_n = inπ/α*`, `n ≥ 1`: `⟨K_π(β'_n)|K_π(α)⟩ = 0`.
///
/// Equals the integer family at `ω = 0`, `k = −n`. `n = 0` would give the
/// zero vector and is rejected.
pub fn odd_cat_partner<T: Real>(alpha: ComplexAmplitude<T>, n: u64) -> Result<ComplexAmplitude<T>> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let kappa = T::from_u64(n).expect("index fits scalar");
    let beta = div_by_conj(Complex::new(T::zero(), kappa * T::PI()), alpha);
    Ok(canonical(amplitude(beta)?))
}

/// For real `α ≠ 0`, `β_n = iπ(n+½)/α` makes `⟨α|K₀(β_n)⟩ = 0`.
pub fn coherent_vs_cat_partner<T: Real>(alpha: T, n: u64) -> Result<ComplexAmplitude<T>> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite {
            re: alpha.as_f64(),
            im: 0.0,
        });
    }
    if alpha == T::zero() {
        return Err(Error::ZeroAlpha);
    }
    let kappa = T::from_u64(n).expect("index fits scalar") + T::lit(0.5);
    Ok(canonical(ComplexAmplitude::new(T::zero(), T::PI() * kappa / alpha)?))
}

/// `J(d, δ_k) = |d + iδ_k⟩ + |−d + iδ_k⟩` with `δ_k = π(2k+1)/(2d)`,
/// orthogonal to `K₀(d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JVector<T> {
    pub d: T,
    pub k: i64,
    pub delta: T,
    pub plus: ComplexAmplitude<T>,
    pub minus: ComplexAmplitude<T>,
}

impl<T: Real> JVector<T> {
    pub fn to_superposition(&self) -> Superposition<T> {
        let one = Complex::new(T::one(), T::zero());
        Superposition::new(vec![
            Term {
                weight: one,
                amplitude: self.plus,
            },
            Term {
                weight: one,
                amplitude: self.minus,
            },
        ])
    }
}

pub fn j_vector_partner<T: Real>(d: T, k: i64) -> Result<JVector<T>> {
    if !d.is_finite() {
        return Err(Error::NonFinite {
            re: d.as_f64(),
            im: 0.0,
        });
    }
    if d == T::zero() {
        return Err(Error::ZeroD);
    }
    let delta = T::PI() * LatticeKind::HalfInteger.coordinate::<T>(k) / d;
    Ok(JVector {
        d,
        k,
        delta,
        plus: ComplexAmplitude::new(d, delta)?,
        minus: ComplexAmplitude::new(-d, delta)?,
    })
}

/// `|α| = |β|` admitting an orthogonal pair at fixed `ω`:
/// `|α|² = √(ω² + κ²π²)` with `κ = k` or `k + ½`.
pub fn equal_photon_radius<T: Real>(class: QuantizationClass, omega: T) -> T {
    radius_squared(class.kind, class.k, omega).sqrt()
}

fn radius_squared<T: Real>(kind: LatticeKind, k: i64, omega: T) -> T {
    omega.hypot(kind.coordinate::<T>(k) * T::PI())
}

/// Radii of the circles `k = 0..=n_max`.
pub fn equal_photon_radii<T: Real>(kind: LatticeKind, omega: T, n_max: usize) -> Vec<T> {
    (0..=n_max as i64)
        .map(|k| radius_squared(kind, k, omega).sqrt())
        .collect()
}

/// Areas `π(r²_{k+1} − r²_k)` of the bands between consecutive radii,
/// `k = 0..n_max`.
///
/// The difference is evaluated as `(2κ+1)π² / (r²_{k+1} + r²_k)` so that large
/// `k` does not cancel.
pub fn band_areas<T: Real>(kind: LatticeKind, omega: T, n_max: usize) -> Result<Vec<T>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("band count must be at least 1".into()));
    }
    let pi = T::PI();
    Ok((0..n_max as i64)
        .map(|k| {
            let kappa = kind.coordinate::<T>(k);
            let lo = radius_squared(kind, k, omega);
            let hi = radius_squared(kind, k + 1, omega);
            let sum = lo + hi;
            if sum == T::zero() {
                T::zero()
            } else {
                pi * (T::lit(2.0) * kappa + T::one()) * pi * pi / sum
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn amp(re: f64, im: f64) -> ComplexAmplitude<f64> {
        ComplexAmplitude::new(re, im).unwrap()
    }

    #[test]
    fn even_partner_n4_of_four_plus_eight_i() {
        let b = even_cat_partner(amp(4.0, 8.0), 4).unwrap();
        assert!((b.re() + 9.0 * PI / 20.0).abs() < 1e-15);
        assert!((b.im() - 9.0 * PI / 40.0).abs() < 1e-15);
    }

    #[test]
    fn even_partner_n8_of_four_plus_eight_i() {
        // iπ·17/2 · (1+2i)/20
        let expected = Complex::new(0.0, 17.0 * PI / 2.0) * Complex::new(1.0, 2.0) / 20.0;
        let b = even_cat_partner(amp(4.0, 8.0), 8).unwrap();
        assert!((b.as_complex() - expected).norm() < 1e-14);
    }

    #[test]
    fn beta_family_reproduces_even_partner() {
        let sols = solve_beta_family(amp(4.0, 8.0), 0.0, 0.0, -5, -5).unwrap();
        assert_eq!(sols.len(), 1);
        let s = sols[0];
        assert_eq!(s.class, QuantizationClass::half_integer(-5));
        assert!((s.beta.re() + 9.0 * PI / 20.0).abs() < 1e-15);
        assert!((s.beta.im() - 9.0 * PI / 40.0).abs() < 1e-15);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn beta_family_odd_equal_amplitude() {
        let s = (4.0 * PI).sqrt();
        let sols = solve_beta_family(amp(s, 0.0), PI, PI, 4, 4).unwrap();
        let b = sols[0].beta;
        assert!(b.re().abs() < 1e-15);
        assert!((b.im() + s).abs() < 1e-14);
        assert!(sols[0].lattice_residual < 1e-12);
    }

    #[test]
    fn beta_family_unit_alpha() {
        let sols = solve_beta_family(amp(1.0, 0.0), 0.0, 0.0, 0, 0).unwrap();
        assert!((sols[0].beta.as_complex() - Complex::new(0.0, -PI / 2.0)).norm() < 1e-15);
        assert!(sols[0].residual < 1e-12);
    }

    #[test]
    fn beta_family_errors() {
        assert_eq!(solve_beta_family(amp(0.0, 0.0), 0.0, 0.0, 0, 1), Err(Error::ZeroAlpha));
        assert_eq!(
            solve_beta_family(amp(1.0, 0.0), 0.0, PI, 0, 1),
            Err(Error::WrongRegion {
                kind: "AlwaysOrthogonal"
            })
        );
        assert_eq!(
            solve_beta_family(amp(1.0, 0.0), PI / 2.0, PI / 2.0, 0, 1),
            Err(Error::WrongRegion { kind: "NoSolution" })
        );
        assert!(matches!(
            solve_beta_family(amp(1.0, 0.0), 0.0, 0.0, 2, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn odd_partner_values() {
        let s = (4.0 * PI).sqrt();
        let b = odd_cat_partner(amp(s, 0.0), 4).unwrap();
        assert!(b.re().abs() < 1e-15 && (b.im() - s).abs() < 1e-14);
        let b = odd_cat_partner(amp(1.0, 0.0), 1).unwrap();
        assert_eq!(b.as_complex(), Complex::new(0.0, PI));
        let b = odd_cat_partner(amp(0.0, 1.0), 2).unwrap();
        assert_eq!(b.as_complex(), Complex::new(-2.0 * PI, 0.0));
        assert_eq!(odd_cat_partner(amp(1.0, 0.0), 0), Err(Error::ZeroIndex));
        assert_eq!(odd_cat_partner(amp(0.0, 0.0), 1), Err(Error::ZeroAlpha));
    }

    #[test]
    fn negative_real_alpha_is_canonicalized() {
        let b = even_cat_partner(amp(-2.0, 0.0), 0).unwrap();
        assert_eq!(b.re(), 0.0);
        assert!(b.im() > 0.0);
    }

    #[test]
    fn coherent_five_partners_are_exact() {
        assert_eq!(
            coherent_vs_cat_partner(5.0, 4).unwrap().as_complex(),
            Complex::new(0.0, 0.9 * PI)
        );
        assert_eq!(
            coherent_vs_cat_partner(5.0, 15).unwrap().as_complex(),
            Complex::new(0.0, 3.1 * PI)
        );
        assert_eq!(
            coherent_vs_cat_partner(PI, 0).unwrap().as_complex(),
            Complex::new(0.0, 0.5)
        );
        assert_eq!(coherent_vs_cat_partner(0.0, 0), Err(Error::ZeroAlpha));
    }

    #[test]
    fn j_vectors() {
        let j = j_vector_partner(1.0, 0).unwrap();
        assert_eq!(j.delta, PI / 2.0);
        assert_eq!(j.plus.as_complex(), Complex::new(1.0, PI / 2.0));
        assert_eq!(j.minus.as_complex(), Complex::new(-1.0, PI / 2.0));
        assert_eq!(j_vector_partner(1.0, -1).unwrap().delta, -PI / 2.0);
        assert_eq!(j_vector_partner(2.0, 1).unwrap().delta, 3.0 * PI / 4.0);
        assert_eq!(j_vector_partner(0.0, 1), Err(Error::ZeroD));
    }

    #[test]
    fn radii() {
        let r = equal_photon_radius(QuantizationClass::half_integer(1), 0.0);
        assert!((r - (1.5 * PI).sqrt()).abs() < 1e-15);
        assert!((r - 2.170_803_763_674_803).abs() < 1e-12);
        let r = equal_photon_radius(QuantizationClass::integer(4), 0.0);
        assert!((r - (4.0 * PI).sqrt()).abs() < 1e-15);
        assert!((r - 3.544_907_701_811_032).abs() < 1e-12);
        let r = equal_photon_radius(QuantizationClass::half_integer(1), 2.0 * PI);
        assert!((r - (2.5 * PI).sqrt()).abs() < 1e-14);
        assert_eq!(equal_photon_radius(QuantizationClass::integer(0), 0.0), 0.0);
    }

    #[test]
    fn bands_at_zero_omega_are_pi_squared() {
        for kind in [LatticeKind::Integer, LatticeKind::HalfInteger] {
            for b in band_areas(kind, 0.0, 40).unwrap() {
                assert!((b - PI * PI).abs() < 1e-12, "{kind}: {b}");
            }
        }
        assert!(band_areas(LatticeKind::Integer, 0.0_f64, 0).is_err());
    }
}
