use std::ops::RangeInclusive;
use std::path::PathBuf;

use cat_ortho::Amplitude;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Largest number of family members one invocation may request.
const MAX_K_SPAN: i64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "cat-ortho", version, about = "Orthogonality of superposed coherent states")]
pub struct Cli {
    /// Worker threads for grid and sweep commands (default: all cores).
    #[arg(long, global = true, value_parser = positive_usize)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a phase pair on the (φ₁, φ₂) torus.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        phi1: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi2: f64,
        #[command(flatten)]
        angles: Angles,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Solve for the β making K_φ₂(β) orthogonal to K_φ₁(α).
    BetaFamily {
        #[arg(long, value_parser = parse_amplitude, allow_hyphen_values = true)]
        alpha: Amplitude,
        #[arg(long, allow_hyphen_values = true)]
        phi1: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi2: f64,
        /// Inclusive index range `a..b`, or a single index.
        #[arg(long, value_parser = parse_k_range, allow_hyphen_values = true)]
        k: RangeInclusive<i64>,
        #[command(flatten)]
        angles: Angles,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Solve for the φ₂ making K_φ₂(β) orthogonal to K_φ₁(α).
    Phi2 {
        #[arg(long, value_parser = parse_amplitude, allow_hyphen_values = true)]
        alpha: Amplitude,
        #[arg(long, value_parser = parse_amplitude, allow_hyphen_values = true)]
        beta: Amplitude,
        #[arg(long, allow_hyphen_values = true)]
        phi1: f64,
        #[command(flatten)]
        angles: Angles,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Closed-form orthogonal partners.
    Partner {
        #[arg(long, value_enum)]
        kind: PartnerKind,
        /// Amplitude (`even`, `odd`); real part only for `coherent`.
        #[arg(long, value_parser = parse_amplitude, allow_hyphen_values = true)]
        alpha: Option<Amplitude>,
        /// Half-separation for `j`.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<f64>,
        /// Partner index (`k` for `j`).
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Equal-photon-number radii and band areas.
    Radii {
        #[arg(long, value_enum)]
        kind: LatticeArg,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Husimi Q raster of a cat vector.
    Husimi {
        #[arg(long, value_parser = parse_amplitude, allow_hyphen_values = true)]
        alpha: Amplitude,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
        /// `re_min,re_max,im_min,im_max`
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<[f64; 4]>,
        /// Square window `[−w, w]²`, used when `--window` is absent.
        #[arg(long, default_value_t = 6.0, value_parser = positive_f64)]
        half_width: f64,
        #[arg(long, default_value_t = 241, value_parser = grid_size)]
        nx: usize,
        #[arg(long, default_value_t = 241, value_parser = grid_size)]
        ny: usize,
        /// Skip normalization by ‖K‖².
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        angles: Angles,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Region raster of the (φ₁, φ₂) torus.
    PhaseMap {
        #[arg(long, default_value_t = 512, value_parser = grid_size)]
        resolution: usize,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Randomized closed-form vs number-basis sweep.
    Verify {
        #[arg(long, default_value_t = cat_ortho::sweep::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = positive_usize)]
        samples: usize,
        #[arg(long, default_value_t = 6.0, value_parser = positive_f64)]
        max_amplitude: f64,
        #[arg(long, value_parser = positive_usize)]
        truncation: Option<usize>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Angles {
    /// Read angles in degrees.
    #[arg(long)]
    pub degrees: bool,
}

impl Angles {
    pub fn radians(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TolArgs {
    /// Quantization tolerance.
    #[arg(long, value_parser = positive_f64)]
    pub eps_q: Option<f64>,
    /// Verification tolerance on |inner product|.
    #[arg(long, value_parser = positive_f64)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OracleArgs {
    /// Recheck results in the truncated number basis.
    #[arg(long)]
    pub verify: bool,
    /// Number-basis truncation (default: sized to the amplitudes).
    #[arg(long, value_parser = positive_usize)]
    pub truncation: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// File for CSV/PGM output; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl OutputArgs {
    /// Explicit format, else inferred from the output extension, else JSON.
    pub fn format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self
            .output
            .as_ref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
        {
            Some("pgm") => Format::Pgm,
            Some("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pgm,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerKind {
    Even,
    Odd,
    Coherent,
    J,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeArg {
    Integer,
    HalfInteger,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// `re,im` or a bare real number.
pub fn parse_amplitude(s: &str) -> Result<Amplitude, String> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (parse_f64(re)?, parse_f64(im)?),
        None => (parse_f64(s)?, 0.0),
    };
    Amplitude::new(re, im).map_err(|e| e.to_string())
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (lo.trim().parse::<i64>(), hi.trim().parse::<i64>())
        }
        None => (s.trim().parse(), s.trim().parse()),
    };
    let (lo, hi) = (
        lo.map_err(|e| format!("{s:?}: {e}"))?,
        hi.map_err(|e| format!("{s:?}: {e}"))?,
    );
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    if hi.abs_diff(lo) >= MAX_K_SPAN as u64 {
        return Err(format!("range {lo}..{hi} spans more than {MAX_K_SPAN} indices"));
    }
    Ok(lo..=hi)
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let parts = s.split(',').map(parse_f64).collect::<Result<Vec<_>, _>>()?;
    let w: [f64; 4] = parts
        .try_into()
        .map_err(|_| format!("{s:?}: expected re_min,re_max,im_min,im_max"))?;
    if w[0] < w[1] && w[2] < w[3] {
        Ok(w)
    } else {
        Err(format!("{s:?}: bounds must increase"))
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{s:?} must be positive"))
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        Ok(_) => Err("must be at least 1".into()),
        Err(e) => Err(format!("{s:?}: {e}")),
    }
}

fn grid_size(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        Ok(_) => Err("grid needs at least 2 samples per axis".into()),
        Err(e) => Err(format!("{s:?}: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitudes() {
        let a = parse_amplitude("4,8").unwrap();
        assert_eq!((a.re(), a.im()), (4.0, 8.0));
        let b = parse_amplitude("-1.5e-1, -2").unwrap();
        assert_eq!((b.re(), b.im()), (-0.15, -2.0));
        assert_eq!(parse_amplitude("5").unwrap().im(), 0.0);
        assert!(parse_amplitude("1,nan").is_err());
        assert!(parse_amplitude("1,2,3").is_err());
    }

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("-5..-5").unwrap(), -5..=-5);
        assert_eq!(parse_k_range("-2..=3").unwrap(), -2..=3);
        assert_eq!(parse_k_range("7").unwrap(), 7..=7);
        assert!(parse_k_range("3..1").is_err());
        assert!(parse_k_range("0..1000000").is_err());
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("-1,1,-2,2").unwrap(), [-1.0, 1.0, -2.0, 2.0]);
        assert!(parse_window("1,-1,0,1").is_err());
        assert!(parse_window("1,2,3").is_err());
    }
}
