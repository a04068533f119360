//! Truncated number-basis expansions, used as an independent oracle.
//!
//! Nothing here calls into [`crate::coherent`]: coefficients come straight
//! from `|α⟩ = e^{−|α|²/2} Σ αᵐ/√m! |m⟩` and inner products are plain sums,
//! so agreement with the closed forms is a genuine cross-check.

use num_complex::Complex;

use crate::amplitude::{CatVector, ComplexAmplitude, Superposition};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest tail bound accepted for an expansion.
const MAX_TAIL: f64 = 1e-3;

/// Coefficients `c_0..=c_N` plus a bound on the norm² beyond level `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState<T> {
    coeffs: Vec<Complex<T>>,
    tail_bound: T,
}

impl<T: Real> FockState<T> {
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Highest retained level `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail_bound(&self) -> T {
        self.tail_bound
    }

    /// `Σ |c_m|²` over the retained levels.
    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `ln m!` for `m = 0..=n`.
fn log_factorials<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = T::zero();
    out.push(acc);
    for m in 1..=n {
        acc += T::from_usize(m).expect("level fits scalar").ln();
        out.push(acc);
    }
    out
}

/// Poisson survival bound `P(X > N)` for mean `λ`:
/// `e^{−λ} λ^{N+1}/(N+1)! · 1/(1 − λ/(N+2))`, valid for `N + 2 > λ`.
/// Returns `None` outside that range.
fn poisson_tail_bound<T: Real>(lambda: T, truncation: usize) -> Option<T> {
    if lambda == T::zero() {
        return Some(T::zero());
    }
    let n1 = T::from_usize(truncation + 1).expect("level fits scalar");
    let n2 = n1 + T::one();
    if n2 <= lambda {
        return None;
    }
    let log_fact = log_factorials::<T>(truncation + 1)[truncation + 1];
    let log_bound = -lambda + n1 * lambda.ln() - log_fact - (T::one() - lambda / n2).ln();
    Some(log_bound.exp().min(T::one()))
}

/// Raw coherent coefficients by the recurrence `c_{m+1} = c_m α/√(m+1)`,
/// falling back to the log-domain formula when `e^{−|α|²/2}` underflows.
fn coherent_coeffs<T: Real>(alpha: ComplexAmplitude<T>, truncation: usize) -> Vec<Complex<T>> {
    let a = alpha.as_complex();
    let half = T::lit(0.5);
    let c0 = (-half * alpha.norm_sqr()).exp();
    let mut coeffs = Vec::with_capacity(truncation + 1);
    if c0.is_normal() || alpha.is_zero() {
        let mut c = Complex::new(c0, T::zero());
        coeffs.push(c);
        for m in 0..truncation {
            let scale = T::from_usize(m + 1).expect("level fits scalar").sqrt();
            c = c * a / scale;
            coeffs.push(c);
        }
    } else {
        let log_fact = log_factorials::<T>(truncation);
        let (ln_r, theta) = (alpha.norm().ln(), alpha.arg());
        for (m, lf) in log_fact.iter().enumerate() {
            let mf = T::from_usize(m).expect("level fits scalar");
            let ln_mag = -half * alpha.norm_sqr() + mf * ln_r - half * *lf;
            coeffs.push(Complex::from_polar(ln_mag.exp(), mf * theta));
        }
    }
    coeffs
}

fn coherent_tail<T: Real>(alpha: ComplexAmplitude<T>, coeffs: &[Complex<T>]) -> Result<T> {
    let truncation = coeffs.len() - 1;
    let tail = match poisson_tail_bound(alpha.norm_sqr(), truncation) {
        Some(t) => t,
        None => {
            let kept: T = coeffs.iter().map(|c| c.norm_sqr()).sum();
            (T::one() - kept).max(T::zero())
        }
    };
    if tail > T::lit(MAX_TAIL) {
        return Err(Error::TruncationTooSmall { tail: tail.as_f64() });
    }
    Ok(tail)
}

/// Expand a normalized coherent state through level `truncation`.
pub fn fock_expand_coherent<T: Real>(alpha: ComplexAmplitude<T>, truncation: usize) -> Result<FockState<T>> {
    let coeffs = coherent_coeffs(alpha, truncation);
    let tail_bound = coherent_tail(alpha, &coeffs)?;
    Ok(FockState { coeffs, tail_bound })
}

/// Expand `K_φ(α)` as `c_m(α)·(1 + (−1)^m e^{iφ})`.
///
/// For `φ = 0` the odd levels and for `φ = π` the even levels are exact
/// zeros, since `e^{iφ}` is snapped to `±1` there.
pub fn fock_expand_cat<T: Real>(v: &CatVector<T>, truncation: usize) -> Result<FockState<T>> {
    let base = coherent_coeffs(v.alpha(), truncation);
    let tail = coherent_tail(v.alpha(), &base)?;
    let one = Complex::new(T::one(), T::zero());
    let e = v.phase_factor();
    let (even, odd) = (one + e, one - e);
    let coeffs = base
        .into_iter()
        .enumerate()
        .map(|(m, c)| c * if m % 2 == 0 { even } else { odd })
        .collect();
    // |1 ± e^{iφ}|² ≤ 4
    Ok(FockState {
        coeffs,
        tail_bound: T::lit(4.0) * tail,
    })
}

/// Expand an arbitrary superposition `Σ w_j |α_j⟩`.
pub fn fock_expand_superposition<T: Real>(state: &Superposition<T>, truncation: usize) -> Result<FockState<T>> {
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); truncation + 1];
    let mut tail_amp = T::zero();
    for term in state.terms() {
        let c = coherent_coeffs(term.amplitude, truncation);
        tail_amp += term.weight.norm() * coherent_tail(term.amplitude, &c)?.sqrt();
        for (acc, cm) in coeffs.iter_mut().zip(c) {
            *acc += term.weight * cm;
        }
    }
    Ok(FockState {
        coeffs,
        tail_bound: tail_amp * tail_amp,
    })
}

/// Oracle inner product with its truncation error bar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleProduct<T> {
    pub value: Complex<T>,
    pub error_bar: T,
}

/// `⟨bra|ket⟩ = Σ conj(bra_m)·ket_m` over the shared levels.
///
/// Error bar: `√tail_ket·‖bra‖ + √tail_bra·‖ket‖ + √(tail_bra·tail_ket)`.
/// A shorter expansion counts as zero-padded; its missing levels are covered
/// by its own tail bound.
pub fn fock_inner_product<T: Real>(bra: &FockState<T>, ket: &FockState<T>) -> OracleProduct<T> {
    let value = bra
        .coeffs
        .iter()
        .zip(&ket.coeffs)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (b, k)| acc + b.conj() * k);
    let (tb, tk) = (bra.tail_bound, ket.tail_bound);
    let error_bar = tk.sqrt() * bra.norm_sqr().sqrt() + tb.sqrt() * ket.norm_sqr().sqrt() + (tb * tk).sqrt();
    OracleProduct { value, error_bar }
}

/// `N = ⌈|α|² + 12√(|α|² + 1) + 20⌉`, enough for a Poisson tail below `1e-12`
/// up to `|α| = max_amplitude`.
pub fn recommended_truncation<T: Real>(max_amplitude: T) -> usize {
    let l = max_amplitude * max_amplitude;
    let n = l + T::lit(12.0) * (l + T::one()).sqrt() + T::lit(20.0);
    n.ceil().to_usize().expect("truncation fits usize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amp(re: f64, im: f64) -> ComplexAmplitude<f64> {
        ComplexAmplitude::new(re, im).unwrap()
    }

    #[test]
    fn vacuum_expansion() {
        let s = fock_expand_coherent(amp(0.0, 0.0), 10).unwrap();
        assert_eq!(s.truncation(), 10);
        assert_eq!(s.coeffs()[0], Complex::new(1.0, 0.0));
        assert!(s.coeffs()[1..].iter().all(|c| *c == Complex::new(0.0, 0.0)));
        assert_eq!(s.tail_bound(), 0.0);
    }

    #[test]
    fn unit_amplitude_expansion() {
        let s = fock_expand_coherent(amp(1.0, 0.0), 60).unwrap();
        assert!((s.coeffs()[0].re - 0.606_530_659_712_633_4).abs() < 1e-15);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        assert!(s.tail_bound() < 1e-60);
    }

    #[test]
    fn amplitude_five_expansion() {
        let s = fock_expand_coherent(amp(5.0, 0.0), 200).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(s.tail_bound() < 1e-50);
    }

    #[test]
    fn ratio_of_consecutive_coefficients() {
        let a = amp(1.5, -0.5);
        let s = fock_expand_coherent(a, 40).unwrap();
        for m in 0..40 {
            let ratio = s.coeffs()[m + 1] / s.coeffs()[m];
            let expected = a.as_complex() / ((m + 1) as f64).sqrt();
            assert!((ratio - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn small_truncation_is_rejected() {
        assert!(matches!(
            fock_expand_coherent(amp(5.0, 0.0), 10),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn tail_bound_dominates_true_tail() {
        let a = amp(2.0, 1.0);
        let long = fock_expand_coherent(a, 200).unwrap();
        for n in [16, 20, 25, 40] {
            let short = fock_expand_coherent(a, n).unwrap();
            let true_tail: f64 = long.coeffs()[n + 1..].iter().map(|c| c.norm_sqr()).sum();
            assert!(short.tail_bound() >= true_tail, "N={n}");
            assert!(short.tail_bound() < 10.0 * true_tail + 1e-300, "N={n}");
        }
    }

    #[test]
    fn parity_zeros_are_exact() {
        let a = amp(1.3, 0.4);
        let even = fock_expand_cat(&CatVector::even(a), 50).unwrap();
        let odd = fock_expand_cat(&CatVector::odd(a), 50).unwrap();
        for m in 0..=50 {
            if m % 2 == 1 {
                assert_eq!(even.coeffs()[m], Complex::new(0.0, 0.0));
            } else {
                assert_eq!(odd.coeffs()[m], Complex::new(0.0, 0.0));
            }
        }
        let zero = fock_expand_cat(&CatVector::odd(ComplexAmplitude::zero()), 10).unwrap();
        assert!(zero.coeffs().iter().all(|c| *c == Complex::new(0.0, 0.0)));
    }

    #[test]
    fn overlap_of_unit_and_vacuum() {
        let a = fock_expand_coherent(amp(1.0, 0.0), 60).unwrap();
        let v = fock_expand_coherent(amp(0.0, 0.0), 60).unwrap();
        let p = fock_inner_product(&v, &a);
        assert!((p.value.re - (-0.5_f64).exp()).abs() < 1e-12);
        let s = fock_inner_product(&a, &a);
        assert!((s.value.re - 1.0).abs() <= s.error_bar + 1e-15);
    }

    #[test]
    fn truncation_recommendations() {
        assert_eq!(recommended_truncation(0.0), 32);
        assert_eq!(recommended_truncation(1.0), 38);
        assert_eq!(recommended_truncation(5.0), 107);
    }

    #[test]
    fn underflowing_prefactor_uses_log_domain() {
        let a = amp(40.0, 0.0);
        let s = fock_expand_coherent(a, recommended_truncation(40.0)).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
