//! Seeded randomized sweeps comparing the closed forms with each other and
//! with the number-basis oracle.
//!
//! Every instance draws from its own ChaCha stream `(seed, index)`, so the
//! sweeps can be split across threads and still give identical results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::amplitude::{circular_distance, CatVector, ComplexAmplitude};
use crate::coherent::{cat_inner_product, coherent_overlap, metric_form, normalized_overlap, symplectic_form};
use crate::fock::{fock_expand_cat, fock_inner_product, recommended_truncation};
use crate::ortho::{classify_phase_pair, lattice_residuals, solve_beta_family, solve_phi2};

pub const DEFAULT_SEED: u64 = 0x5eed_ca75;

/// Parameters shared by the sweeps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub seed: u64,
    pub samples: usize,
    /// Amplitudes are drawn uniformly from the disk of this radius.
    pub max_amplitude: f64,
    /// Fock truncation; `None` uses [`recommended_truncation`].
    pub truncation: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: 1000,
            max_amplitude: 6.0,
            truncation: None,
        }
    }
}

impl SweepConfig {
    fn truncation(&self) -> usize {
        self.truncation
            .unwrap_or_else(|| recommended_truncation(self.max_amplitude))
    }
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform sample from the disk `|α| ≤ radius`.
pub fn random_amplitude<R: Rng>(rng: &mut R, radius: f64) -> ComplexAmplitude<f64> {
    loop {
        let (re, im) = (rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
        if re * re + im * im <= radius * radius {
            return ComplexAmplitude::new(re, im).expect("finite sample");
        }
    }
}

fn random_phase<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..std::f64::consts::TAU)
}

fn par_max<F>(cfg: &SweepConfig, salt: u64, f: F) -> f64
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| f(&mut instance_rng(cfg.seed ^ salt, i)))
        .reduce(|| 0.0, f64::max)
}

/// `max | |⟨β|α⟩|² − e^{−|α−β|²} | / e^{−|α−β|²}`.
pub fn overlap_law(cfg: &SweepConfig) -> f64 {
    par_max(cfg, 1, |rng| {
        let a = random_amplitude(rng, cfg.max_amplitude);
        let b = random_amplitude(rng, cfg.max_amplitude);
        let d = a.as_complex() - b.as_complex();
        let expected = (-d.norm_sqr()).exp();
        if expected == 0.0 {
            return 0.0;
        }
        (coherent_overlap(a, b).norm_sqr() - expected).abs() / expected
    })
}

/// `max |⟨u|v⟩ − conj⟨v|u⟩| / max(|⟨u|v⟩|, tiny)` over random cats.
pub fn hermitian_symmetry(cfg: &SweepConfig) -> f64 {
    par_max(cfg, 2, |rng| {
        let u = CatVector::new(random_amplitude(rng, cfg.max_amplitude), random_phase(rng)).unwrap();
        let v = CatVector::new(random_amplitude(rng, cfg.max_amplitude), random_phase(rng)).unwrap();
        let uv = cat_inner_product(&u, &v);
        let vu = cat_inner_product(&v, &u);
        let scale = uv.norm().max(f64::MIN_POSITIVE);
        (uv - vu.conj()).norm() / scale
    })
}

/// Worst parity overlaps `|⟨K_π(β)|K₀(α)⟩|`: `(closed form, oracle)`.
pub fn parity(cfg: &SweepConfig) -> (f64, f64) {
    let n = cfg.truncation();
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed ^ 3, i);
            let bra = CatVector::odd(random_amplitude(rng, cfg.max_amplitude));
            let ket = CatVector::even(random_amplitude(rng, cfg.max_amplitude));
            let analytic = cat_inner_product(&bra, &ket).norm();
            let oracle = fock_inner_product(
                &fock_expand_cat(&bra, n).expect("truncation sized for amplitude"),
                &fock_expand_cat(&ket, n).expect("truncation sized for amplitude"),
            )
            .value
            .norm();
            (analytic, oracle)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)))
}

/// Largest `|closed form − oracle| − error bar` over random cat pairs with
/// arbitrary phases. Nonpositive means every instance sat inside its bar.
pub fn oracle_agreement(cfg: &SweepConfig) -> f64 {
    let n = cfg.truncation();
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed ^ 4, i);
            let bra = CatVector::new(random_amplitude(rng, cfg.max_amplitude), random_phase(rng)).unwrap();
            let ket = CatVector::new(random_amplitude(rng, cfg.max_amplitude), random_phase(rng)).unwrap();
            let analytic = cat_inner_product(&bra, &ket);
            let oracle = fock_inner_product(
                &fock_expand_cat(&bra, n).expect("truncation sized for amplitude"),
                &fock_expand_cat(&ket, n).expect("truncation sized for amplitude"),
            );
            (analytic - oracle.value).norm() - oracle.error_bar
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Worst-case outcome of solving random `β` families.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FamilyStats {
    pub solved: usize,
    /// Instances where the solver refused to return a member.
    pub failures: usize,
    pub max_residual: f64,
    pub max_lattice_residual: f64,
    pub max_oracle: f64,
    /// Instances whose lattice class disagreed with the region.
    pub class_mismatches: usize,
}

/// Solve `β` families for random `α`, phase pairs in the lattice regions
/// and `k ∈ [−3, 3]`, then check them analytically and with the oracle.
///
/// Amplitudes are kept inside the disk `|α|, |β| ≤ max_amplitude` so the
/// default truncation covers both expansions.
pub fn beta_families(cfg: &SweepConfig) -> FamilyStats {
    let n = cfg.truncation();
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed ^ 5, i);
            loop {
                let r = rng.gen_range(0.3..cfg.max_amplitude);
                let alpha = ComplexAmplitude::new(r, 0.0).unwrap().rotate(random_phase(rng));
                let (p1, p2) = (random_phase(rng), random_phase(rng));
                let region = classify_phase_pair(p1, p2);
                if region.kind.lattice().is_none() {
                    continue;
                }
                let k = rng.gen_range(-3..=3);
                let sol = match solve_beta_family(alpha, p1, p2, k, k) {
                    Ok(mut v) => v.pop().expect("one member per k"),
                    Err(_) => {
                        return FamilyStats {
                            failures: 1,
                            ..Default::default()
                        }
                    }
                };
                if sol.beta.norm() > cfg.max_amplitude {
                    continue;
                }
                let bra = CatVector::new(sol.beta, p2).unwrap();
                let ket = CatVector::new(alpha, p1).unwrap();
                let oracle = fock_inner_product(
                    &fock_expand_cat(&bra, n).expect("truncation sized for amplitude"),
                    &fock_expand_cat(&ket, n).expect("truncation sized for amplitude"),
                );
                let mismatch = Some(sol.class.kind) != region.kind.lattice();
                return FamilyStats {
                    solved: 1,
                    failures: 0,
                    max_residual: sol.residual,
                    max_lattice_residual: sol.lattice_residual,
                    max_oracle: oracle.value.norm(),
                    class_mismatches: mismatch as usize,
                };
            }
        })
        .reduce(FamilyStats::default, |a, b| FamilyStats {
            solved: a.solved + b.solved,
            failures: a.failures + b.failures,
            max_residual: a.max_residual.max(b.max_residual),
            max_lattice_residual: a.max_lattice_residual.max(b.max_lattice_residual),
            max_oracle: a.max_oracle.max(b.max_oracle),
            class_mismatches: a.class_mismatches + b.class_mismatches,
        })
}

/// Statistics of the `φ₂` forward/backward round trip.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Phi2Stats {
    pub instances: usize,
    pub failures: usize,
    pub max_distance: f64,
    pub positive_metric: usize,
    pub negative_metric: usize,
    /// Instances with `Re(αβ*) > 0` and both phases on the same side of `π`.
    pub positive_same_side: usize,
    /// Instances with `Re(αβ*) < 0` and both phases on the same side of `π`.
    pub negative_same_side: usize,
}

/// Draw `(α, φ₁, φ₂)` away from the region edges, build `β` from the family
/// at random `k`, and recover `φ₂` with [`solve_phi2`].
pub fn phi2_round_trip(cfg: &SweepConfig) -> Phi2Stats {
    const MARGIN: f64 = 1e-3;
    let pi = std::f64::consts::PI;
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed ^ 6, i);
            let (alpha, p1, p2) = loop {
                let r = rng.gen_range(0.2..cfg.max_amplitude);
                let alpha = ComplexAmplitude::new(r, 0.0).unwrap().rotate(random_phase(rng));
                let (p1, p2) = (random_phase(rng), random_phase(rng));
                let off_lines = [p1, p2]
                    .iter()
                    .all(|&p| circular_distance(p, 0.0) > MARGIN && circular_distance(p, pi) > MARGIN);
                let region = classify_phase_pair(p1, p2);
                if off_lines
                    && region.cos_diff.abs() > MARGIN
                    && region.cos_sum.abs() > MARGIN
                    && region.omega.is_some_and(|w| w.abs() > MARGIN)
                {
                    break (alpha, p1, p2);
                }
            };
            let k = rng.gen_range(-3..=3);
            let mut stats = Phi2Stats {
                instances: 1,
                ..Default::default()
            };
            let beta = match solve_beta_family(alpha, p1, p2, k, k) {
                Ok(mut v) => v.pop().unwrap().beta,
                Err(_) => {
                    stats.failures = 1;
                    return stats;
                }
            };
            match solve_phi2(alpha, beta, p1) {
                Ok(sol) => {
                    stats.max_distance = circular_distance(sol.phi2, p2);
                    let same_side = (p1 - pi) * (sol.phi2 - pi) > 0.0;
                    if metric_form(alpha, beta) > 0.0 {
                        stats.positive_metric = 1;
                        stats.positive_same_side = same_side as usize;
                    } else {
                        stats.negative_metric = 1;
                        stats.negative_same_side = same_side as usize;
                    }
                }
                Err(_) => stats.failures = 1,
            }
            stats
        })
        .reduce(Phi2Stats::default, |a, b| Phi2Stats {
            instances: a.instances + b.instances,
            failures: a.failures + b.failures,
            max_distance: a.max_distance.max(b.max_distance),
            positive_metric: a.positive_metric + b.positive_metric,
            negative_metric: a.negative_metric + b.negative_metric,
            positive_same_side: a.positive_same_side + b.positive_same_side,
            negative_same_side: a.negative_same_side + b.negative_same_side,
        })
}

const PERTURBED_MAX_AMPLITUDE: f64 = 2.5;

/// Outcome of perturbing solver outputs off the lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationStats {
    pub instances: usize,
    /// Smallest normalized `|⟨K_{φ₂}(β')|K_{φ₁}(α)⟩|²` seen.
    pub min_normalized_sq: f64,
    /// Smallest lattice residual among the perturbed `β'`.
    pub min_lattice_residual: f64,
}

/// Take a verified family member, push `β` off both lattices by a random
/// displacement (resampled until `Im(αβ*)` is more than `1e-3` from every
/// lattice point), and record how far from orthogonal the result is.
///
/// Amplitudes are drawn with `|α| ∈ [0.3, 2]`, `k ∈ [−1, 1]` and
/// `|β'| ≤ 2.5`: for widely separated states the overlap itself is
/// exponentially small and says nothing about the lattice.
pub fn perturbed_betas(cfg: &SweepConfig) -> PerturbationStats {
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed ^ 7, i);
            loop {
                let r = rng.gen_range(0.3..2.0);
                let alpha = ComplexAmplitude::new(r, 0.0).unwrap().rotate(random_phase(rng));
                let (p1, p2) = (random_phase(rng), random_phase(rng));
                let region = classify_phase_pair(p1, p2);
                match region.omega {
                    Some(w) if w.abs() < 2.0 => {}
                    _ => continue,
                }
                let k = rng.gen_range(-1..=1);
                let Ok(mut sols) = solve_beta_family(alpha, p1, p2, k, k) else {
                    continue;
                };
                let beta = sols.pop().unwrap().beta;
                let shift = random_amplitude(rng, 0.5);
                let Ok(perturbed) = ComplexAmplitude::from_complex(beta.as_complex() + shift.as_complex()) else {
                    continue;
                };
                if perturbed.norm() > PERTURBED_MAX_AMPLITUDE {
                    continue;
                }
                let h = symplectic_form(alpha, perturbed);
                let lattice = lattice_residuals(h).iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
                if lattice <= 1e-3 {
                    continue;
                }
                let bra = CatVector::new(perturbed, p2).unwrap();
                let ket = CatVector::new(alpha, p1).unwrap();
                let Ok(n) = normalized_overlap(&bra, &ket) else {
                    continue;
                };
                return PerturbationStats {
                    instances: 1,
                    min_normalized_sq: n * n,
                    min_lattice_residual: lattice,
                };
            }
        })
        .reduce(
            || PerturbationStats {
                instances: 0,
                min_normalized_sq: f64::INFINITY,
                min_lattice_residual: f64::INFINITY,
            },
            |a, b| PerturbationStats {
                instances: a.instances + b.instances,
                min_normalized_sq: a.min_normalized_sq.min(b.min_normalized_sq),
                min_lattice_residual: a.min_lattice_residual.min(b.min_lattice_residual),
            },
        )
}

/// Random phase pairs whose region changes under `φ₁ ↔ φ₂`.
pub fn exchange_symmetry_violations(cfg: &SweepConfig) -> usize {
    (0..cfg.samples)
        .into_par_iter()
        .filter(|&i| {
            let rng = &mut instance_rng(cfg.seed ^ 8, i);
            let (p1, p2) = (random_phase(rng), random_phase(rng));
            classify_phase_pair(p1, p2).kind != classify_phase_pair(p2, p1).kind
        })
        .count()
}

/// Everything the `verify` command reports.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub overlap_law_max_rel: f64,
    pub hermitian_max_rel: f64,
    pub parity_max_analytic: f64,
    pub parity_max_oracle: f64,
    pub oracle_max_excess: f64,
    pub families: FamilyStats,
    pub phi2: Phi2Stats,
    pub perturbation: PerturbationStats,
    pub exchange_violations: usize,
}

/// Pass/fail thresholds applied by [`VerificationReport::checks`].
pub const OVERLAP_LAW_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PARITY_ANALYTIC_TOL: f64 = 1e-13;
pub const PARITY_ORACLE_TOL: f64 = 1e-11;
pub const ORACLE_SLACK: f64 = 1e-11;
pub const FAMILY_TOL: f64 = 1e-10;
pub const PHI2_TOL: f64 = 1e-9;
pub const FALSE_ORTHOGONALITY_FLOOR: f64 = 1e-8;

impl VerificationReport {
    /// `(name, observed, threshold, passed)` for each check.
    pub fn checks(&self) -> Vec<(&'static str, f64, f64, bool)> {
        let fam = &self.families;
        vec![
            (
                "overlap_law_max_rel",
                self.overlap_law_max_rel,
                OVERLAP_LAW_TOL,
                self.overlap_law_max_rel < OVERLAP_LAW_TOL,
            ),
            (
                "hermitian_max_rel",
                self.hermitian_max_rel,
                HERMITIAN_TOL,
                self.hermitian_max_rel < HERMITIAN_TOL,
            ),
            (
                "parity_max_analytic",
                self.parity_max_analytic,
                PARITY_ANALYTIC_TOL,
                self.parity_max_analytic < PARITY_ANALYTIC_TOL,
            ),
            (
                "parity_max_oracle",
                self.parity_max_oracle,
                PARITY_ORACLE_TOL,
                self.parity_max_oracle < PARITY_ORACLE_TOL,
            ),
            (
                "oracle_max_excess",
                self.oracle_max_excess,
                ORACLE_SLACK,
                self.oracle_max_excess <= ORACLE_SLACK,
            ),
            (
                "family_max_residual",
                fam.max_residual,
                FAMILY_TOL,
                fam.max_residual < FAMILY_TOL && fam.class_mismatches == 0 && fam.failures == 0,
            ),
            (
                "family_max_lattice_residual",
                fam.max_lattice_residual,
                FAMILY_TOL,
                fam.max_lattice_residual < FAMILY_TOL,
            ),
            (
                "family_max_oracle",
                fam.max_oracle,
                FAMILY_TOL,
                fam.max_oracle < FAMILY_TOL,
            ),
            (
                "phi2_max_distance",
                self.phi2.max_distance,
                PHI2_TOL,
                self.phi2.max_distance < PHI2_TOL && self.phi2.failures == 0,
            ),
            (
                "perturbed_min_normalized_sq",
                self.perturbation.min_normalized_sq,
                FALSE_ORTHOGONALITY_FLOOR,
                self.perturbation.min_normalized_sq > FALSE_ORTHOGONALITY_FLOOR,
            ),
            (
                "exchange_violations",
                self.exchange_violations as f64,
                0.0,
                self.exchange_violations == 0,
            ),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.3)
    }
}

pub fn run_verification(cfg: SweepConfig) -> VerificationReport {
    let (parity_max_analytic, parity_max_oracle) = parity(&cfg);
    VerificationReport {
        config: cfg,
        overlap_law_max_rel: overlap_law(&cfg),
        hermitian_max_rel: hermitian_symmetry(&cfg),
        parity_max_analytic,
        parity_max_oracle,
        oracle_max_excess: oracle_agreement(&cfg),
        families: beta_families(&cfg),
        phi2: phi2_round_trip(&cfg),
        perturbation: perturbed_betas(&cfg),
        exchange_violations: exchange_symmetry_violations(&cfg),
    }
}
