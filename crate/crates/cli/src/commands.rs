use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use cat_ortho::coherent::{coherent_cat_overlap, superposition_inner};
use cat_ortho::fock::{fock_expand_superposition, OracleProduct};
use cat_ortho::ortho::{
    band_areas, classify_phase_pair_with, coherent_vs_cat_partner, equal_photon_radii, even_cat_partner,
    j_vector_partner, odd_cat_partner, phase_map, solve_beta_family_with, solve_phi2_with, special_line,
    QuantizationClass,
};
use cat_ortho::sweep::{run_verification, SweepConfig};
use cat_ortho::{
    cat_inner_product, fock_expand_cat, fock_expand_coherent, fock_inner_product, husimi_cat, husimi_quadrature_check,
    recommended_truncation, Amplitude, Cat, Error, FockState, GridGeometry, LatticeKind, RegionKind, Tolerances,
};
use serde_json::{json, Value};

use crate::args::{Command, Format, LatticeArg, OracleArgs, OutputArgs, PartnerKind, TolArgs};
use crate::raster;

#[derive(Debug)]
pub enum Failure {
    Solver(Error),
    Io(io::Error),
    /// The `verify` sweep ran but at least one check failed.
    Checks(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// What a command produced: a JSON document for stdout, or nothing when the
/// payload already went to stdout as CSV/PGM.
pub type Outcome = Result<Option<Value>, Failure>;

fn tolerances(t: &TolArgs) -> Tolerances<f64> {
    let mut tol = Tolerances::default();
    if let Some(q) = t.eps_q {
        tol.quantization = q;
    }
    if let Some(v) = t.tol {
        tol.verification = v;
    }
    tol
}

fn amp(a: Amplitude) -> Value {
    json!({ "re": a.re(), "im": a.im() })
}

fn class_json(c: QuantizationClass) -> Value {
    json!({ "lattice": c.kind.name(), "k": c.k })
}

fn lattice(kind: LatticeArg) -> LatticeKind {
    match kind {
        LatticeArg::Integer => LatticeKind::Integer,
        LatticeArg::HalfInteger => LatticeKind::HalfInteger,
    }
}

fn truncation_for(oracle: &OracleArgs, amplitudes: &[f64]) -> usize {
    oracle
        .truncation
        .unwrap_or_else(|| recommended_truncation(amplitudes.iter().copied().fold(0.0, f64::max)))
}

/// Number-basis recheck; fails when `|value|` exceeds `tolerance` plus the
/// truncation error bar.
fn oracle_check(bra: &FockState<f64>, ket: &FockState<f64>, tolerance: f64) -> Result<Value, Failure> {
    let OracleProduct { value, error_bar } = fock_inner_product(bra, ket);
    let residual = value.norm();
    if residual > tolerance + error_bar {
        return Err(Error::VerificationFailed { residual, tolerance }.into());
    }
    Ok(json!({
        "oracle_residual": residual,
        "oracle_error_bar": error_bar,
        "truncation": bra.truncation(),
    }))
}

fn merge(into: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, extra) {
        a.extend(b);
    }
}

fn refuse_above(residual: f64, tolerance: f64) -> Result<(), Failure> {
    if residual.is_finite() && residual <= tolerance {
        Ok(())
    } else {
        Err(Error::VerificationFailed { residual, tolerance }.into())
    }
}

fn write_to<F>(path: Option<&Path>, body: F) -> io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()
        }
    }
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Classify {
            phi1,
            phi2,
            angles,
            tol,
        } => {
            let (p1, p2) = (angles.radians(phi1), angles.radians(phi2));
            let tol = tolerances(&tol);
            let region = classify_phase_pair_with(p1, p2, &tol);
            Ok(Some(json!({
                "phi1": p1,
                "phi2": p2,
                "kind": region.kind.name(),
                "special_line": special_line(p1, p2, &tol).map(|k| k.name()),
                "omega": region.omega,
                "cos_diff": region.cos_diff,
                "cos_sum": region.cos_sum,
            })))
        }
        Command::BetaFamily {
            alpha,
            phi1,
            phi2,
            k,
            angles,
            tol,
            oracle,
        } => {
            let (p1, p2) = (angles.radians(phi1), angles.radians(phi2));
            let tol = tolerances(&tol);
            let sols = solve_beta_family_with(alpha, p1, p2, *k.start(), *k.end(), &tol)?;
            let region = classify_phase_pair_with(p1, p2, &tol);
            let mut members = Vec::with_capacity(sols.len());
            for s in &sols {
                refuse_above(s.residual, tol.verification)?;
                let mut m = json!({
                    "class": class_json(s.class),
                    "k": s.class.k,
                    "beta": amp(s.beta),
                    "residual": s.residual,
                    "normalized_residual": s.normalized_residual,
                    "lattice_residual": s.lattice_residual,
                });
                if oracle.verify {
                    let n = truncation_for(&oracle, &[alpha.norm(), s.beta.norm()]);
                    let bra = fock_expand_cat(&Cat::new(s.beta, p2)?, n)?;
                    let ket = fock_expand_cat(&Cat::new(alpha, p1)?, n)?;
                    merge(&mut m, oracle_check(&bra, &ket, tol.verification)?);
                }
                members.push(m);
            }
            Ok(Some(json!({
                "alpha": amp(alpha),
                "phi1": p1,
                "phi2": p2,
                "k_min": k.start(),
                "k_max": k.end(),
                "region": region.kind.name(),
                "omega": region.omega,
                "members": members,
            })))
        }
        Command::Phi2 {
            alpha,
            beta,
            phi1,
            angles,
            tol,
            oracle,
        } => {
            let p1 = angles.radians(phi1);
            let tol = tolerances(&tol);
            let sol = solve_phi2_with(alpha, beta, p1, &tol)?;
            let residual = cat_inner_product(&Cat::new(beta, sol.phi2)?, &Cat::new(alpha, p1)?).norm();
            let mut out = json!({
                "alpha": amp(alpha),
                "beta": amp(beta),
                "phi1": p1,
                "phi2": sol.phi2,
                "class": class_json(sol.class),
                "k": sol.class.k,
                "omega": sol.omega,
                "residual": residual,
                "normalized_residual": sol.residual,
            });
            if oracle.verify {
                let n = truncation_for(&oracle, &[alpha.norm(), beta.norm()]);
                let bra = fock_expand_cat(&Cat::new(beta, sol.phi2)?, n)?;
                let ket = fock_expand_cat(&Cat::new(alpha, p1)?, n)?;
                merge(&mut out, oracle_check(&bra, &ket, tol.verification)?);
            }
            Ok(Some(out))
        }
        Command::Partner {
            kind,
            alpha,
            d,
            n,
            tol,
            oracle,
        } => partner(kind, alpha, d, n, &tolerances(&tol), &oracle),
        Command::Radii {
            kind,
            omega,
            n_max,
            out,
        } => radii(lattice(kind), omega, n_max, &out),
        Command::Husimi {
            alpha,
            phi,
            window,
            half_width,
            nx,
            ny,
            raw,
            angles,
            out,
        } => {
            let v = Cat::new(alpha, angles.radians(phi))?;
            let [x0, x1, y0, y1] = window.unwrap_or([-half_width, half_width, -half_width, half_width]);
            let geometry = GridGeometry::new(x0, x1, y0, y1, nx, ny)?;
            let grid = husimi_cat(&v, geometry, !raw)?;
            let summary = json!({
                "alpha": amp(alpha),
                "phi": v.phi(),
                "window": [x0, x1, y0, y1],
                "nx": nx,
                "ny": ny,
                "normalized": grid.normalized,
                "max": grid.max(),
                "quadrature": husimi_quadrature_check(&grid),
                "output": out.output.as_ref().map(|p| p.display().to_string()),
            });
            match out.format() {
                Format::Json => {
                    let mut s = summary;
                    if out.output.is_none() {
                        merge(&mut s, json!({ "values": grid.values }));
                    } else {
                        write_to(out.output.as_deref(), |w| {
                            serde_json::to_writer(&mut *w, &grid.values)?;
                            writeln!(w)
                        })?;
                    }
                    Ok(Some(s))
                }
                Format::Csv => emit(&out, summary, |w| raster::write_grid_csv(w, &grid)),
                Format::Pgm => emit(&out, summary, |w| raster::write_grid_pgm(w, &grid)),
            }
        }
        Command::PhaseMap { resolution, tol, out } => {
            let map = phase_map(resolution, &tolerances(&tol));
            let kinds = [
                RegionKind::IntegerClass,
                RegionKind::HalfIntegerClass,
                RegionKind::AlwaysOrthogonal,
                RegionKind::NoSolution,
            ];
            let fractions: serde_json::Map<String, Value> = kinds
                .iter()
                .map(|&k| (k.name().to_string(), json!(map.fraction(k))))
                .collect();
            let counts: serde_json::Map<String, Value> = kinds
                .iter()
                .map(|&k| (k.name().to_string(), json!(map.count(k))))
                .collect();
            let summary = json!({
                "resolution": resolution,
                "fractions": fractions,
                "counts": counts,
                "always_orthogonal_cells": map.cells(RegionKind::AlwaysOrthogonal),
                "gray_levels": kinds.iter().map(|&k| json!({ "kind": k.name(), "level": raster::region_gray(k) })).collect::<Vec<_>>(),
                "output": out.output.as_ref().map(|p| p.display().to_string()),
            });
            match out.format() {
                Format::Json => Ok(Some(summary)),
                Format::Csv => emit(&out, summary, |w| raster::write_map_csv(w, &map)),
                Format::Pgm => emit(&out, summary, |w| raster::write_map_pgm(w, &map)),
            }
        }
        Command::Verify {
            seed,
            samples,
            max_amplitude,
            truncation,
        } => {
            let cfg = SweepConfig {
                seed,
                samples,
                max_amplitude,
                truncation,
            };
            let report = run_verification(cfg);
            let checks: Vec<Value> = report
                .checks()
                .into_iter()
                .map(|(name, observed, threshold, passed)| {
                    json!({ "name": name, "observed": observed, "threshold": threshold, "passed": passed })
                })
                .collect();
            let out = json!({
                "seed": seed,
                "samples": samples,
                "max_amplitude": max_amplitude,
                "truncation": truncation.unwrap_or_else(|| recommended_truncation(max_amplitude)),
                "checks": checks,
                "phi2_sign_counts": {
                    "positive_metric": report.phi2.positive_metric,
                    "positive_same_side": report.phi2.positive_same_side,
                    "negative_metric": report.phi2.negative_metric,
                    "negative_same_side": report.phi2.negative_same_side,
                },
                "passed": report.passed(),
            });
            if report.passed() {
                Ok(Some(out))
            } else {
                Err(Failure::Checks(out))
            }
        }
    }
}

/// Write a raster to `--output` and return the summary, or stream it to
/// stdout and return nothing.
fn emit<F>(out: &OutputArgs, summary: Value, body: F) -> Outcome
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    write_to(out.output.as_deref(), body)?;
    Ok(out.output.as_ref().map(|_| summary))
}

fn partner(
    kind: PartnerKind,
    alpha: Option<Amplitude>,
    d: Option<f64>,
    n: i64,
    tol: &Tolerances<f64>,
    oracle: &OracleArgs,
) -> Outcome {
    let need_alpha = || alpha.ok_or_else(|| Error::InvalidParameter("--alpha is required for this partner".into()));
    let index = || u64::try_from(n).map_err(|_| Error::InvalidParameter(format!("index must be nonnegative, got {n}")));
    let mut out = match kind {
        PartnerKind::Even | PartnerKind::Odd => {
            let alpha = need_alpha()?;
            let (beta, phi) = if kind == PartnerKind::Even {
                (even_cat_partner(alpha, index()?)?, 0.0)
            } else {
                (odd_cat_partner(alpha, index()?)?, std::f64::consts::PI)
            };
            let (bra, ket) = (Cat::new(beta, phi)?, Cat::new(alpha, phi)?);
            let residual = cat_inner_product(&bra, &ket).norm();
            refuse_above(residual, tol.verification)?;
            let mut out = json!({
                "kind": if phi == 0.0 { "even" } else { "odd" },
                "alpha": amp(alpha),
                "n": n,
                "beta": amp(beta),
                "residual": residual,
            });
            if oracle.verify {
                let t = truncation_for(oracle, &[alpha.norm(), beta.norm()]);
                merge(
                    &mut out,
                    oracle_check(&fock_expand_cat(&bra, t)?, &fock_expand_cat(&ket, t)?, tol.verification)?,
                );
            }
            out
        }
        PartnerKind::Coherent => {
            let alpha = need_alpha()?;
            if alpha.im() != 0.0 {
                return Err(Error::InvalidParameter("coherent partner needs a real alpha".into()).into());
            }
            let beta = coherent_vs_cat_partner(alpha.re(), index()?)?;
            let ket = Cat::even(beta);
            let residual = coherent_cat_overlap(alpha, &ket).norm();
            refuse_above(residual, tol.verification)?;
            let mut out = json!({
                "kind": "coherent",
                "alpha": amp(alpha),
                "n": n,
                "beta": amp(beta),
                "residual": residual,
            });
            if oracle.verify {
                let t = truncation_for(oracle, &[alpha.norm(), beta.norm()]);
                merge(
                    &mut out,
                    oracle_check(
                        &fock_expand_coherent(alpha, t)?,
                        &fock_expand_cat(&ket, t)?,
                        tol.verification,
                    )?,
                );
            }
            out
        }
        PartnerKind::J => {
            let d = d.ok_or_else(|| Error::InvalidParameter("--d is required for the j partner".into()))?;
            let j = j_vector_partner(d, n)?;
            let state = j.to_superposition();
            let even = Cat::even(Amplitude::real(d)?);
            let residual = superposition_inner(&state, &even.to_superposition()).norm();
            refuse_above(residual, tol.verification)?;
            let mut out = json!({
                "kind": "j",
                "d": d,
                "k": n,
                "delta": j.delta,
                "plus": amp(j.plus),
                "minus": amp(j.minus),
                "residual": residual,
            });
            if oracle.verify {
                let t = truncation_for(oracle, &[state.max_amplitude(), d.abs()]);
                merge(
                    &mut out,
                    oracle_check(
                        &fock_expand_superposition(&state, t)?,
                        &fock_expand_cat(&even, t)?,
                        tol.verification,
                    )?,
                );
            }
            out
        }
    };
    if let Value::Object(m) = &mut out {
        m.insert("verified".into(), json!(true));
    }
    Ok(Some(out))
}

fn radii(kind: LatticeKind, omega: f64, n_max: usize, out: &OutputArgs) -> Outcome {
    if !omega.is_finite() {
        return Err(Error::InvalidParameter("omega must be finite".into()).into());
    }
    let r = equal_photon_radii(kind, omega, n_max);
    let bands = if n_max > 0 {
        band_areas(kind, omega, n_max)?
    } else {
        Vec::new()
    };
    let summary = json!({
        "lattice": kind.name(),
        "omega": omega,
        "n_max": n_max,
        "radii": r,
        "band_areas": bands,
        "output": out.output.as_ref().map(|p| p.display().to_string()),
    });
    match out.format() {
        Format::Json => Ok(Some(summary)),
        Format::Csv => emit(out, summary, |w| raster::write_radii_csv(w, &r)),
        Format::Pgm => Err(Error::InvalidParameter("radii have no raster form; use csv or json".into()).into()),
    }
}
