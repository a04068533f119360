//! Exact orthogonality of superposed coherent states.
//!
//! The crate evaluates inner products between cat vectors
//! `K_φ(α) = |α⟩ + e^{iφ}|−α⟩` in closed form, solves the conditions under
//! which two of them are orthogonal, evaluates Husimi Q rasters, and checks
//! everything against an independent truncated number-basis expansion
//! ([`fock`]).
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the double-precision types used by the CLI and the tests.

pub mod amplitude;
pub mod coherent;
mod error;
pub mod fock;
pub mod husimi;
pub mod ortho;
mod scalar;
pub mod sweep;

pub use amplitude::{circular_distance, reduce_phase, CatVector, ComplexAmplitude, Superposition, Term};
pub use coherent::{
    cat_inner_product, cat_norm_squared, coherent_cat_overlap, coherent_overlap, metric_form, normalized_overlap,
    orthogonality_residual, superposition_inner, symplectic_form,
};
pub use error::{Error, Result};
pub use fock::{fock_expand_cat, fock_expand_coherent, fock_inner_product, recommended_truncation, FockState};
pub use husimi::{husimi_cat, husimi_quadrature_check, husimi_superposition, GridGeometry, QGrid};
pub use ortho::{
    classify_phase_pair, solve_beta_family, solve_phi2, LatticeKind, PhaseRegion, QuantizationClass, RegionKind,
    Tolerances,
};
pub use scalar::Real;

pub type Amplitude = ComplexAmplitude<f64>;
pub type Cat = CatVector<f64>;
pub type Fock = FockState<f64>;
pub type Grid = QGrid<f64>;
pub type Amplitude32 = ComplexAmplitude<f32>;
pub type Cat32 = CatVector<f32>;
