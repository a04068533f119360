use std::io::{self, Write};

use cat_ortho::ortho::{PhaseMap, RegionKind};
use cat_ortho::Grid;

/// 17 significant digits: enough for any `f64` to survive a round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re,im,q`, one row per grid point, rows of constant `Im γ` in order.
pub fn write_grid_csv<W: Write + ?Sized>(w: &mut W, grid: &Grid) -> io::Result<()> {
    writeln!(w, "re,im,q")?;
    let g = &grid.geometry;
    for j in 0..g.ny {
        for i in 0..g.nx {
            let p = g.point(i, j);
            writeln!(w, "{},{},{}", fmt_f64(p.re), fmt_f64(p.im), fmt_f64(grid.get(i, j)))?;
        }
    }
    Ok(())
}

/// ASCII PGM with `Im γ` increasing upwards, scaled to 0–255 by the grid max.
pub fn write_grid_pgm<W: Write + ?Sized>(w: &mut W, grid: &Grid) -> io::Result<()> {
    let g = &grid.geometry;
    let max = grid.max();
    write_pgm(w, g.nx, g.ny, |i, j| {
        if max > 0.0 {
            (grid.get(i, j) / max * 255.0).round() as u8
        } else {
            0
        }
    })
}

pub fn region_gray(kind: RegionKind) -> u8 {
    match kind {
        RegionKind::NoSolution => 0,
        RegionKind::IntegerClass => 85,
        RegionKind::HalfIntegerClass => 170,
        RegionKind::AlwaysOrthogonal => 255,
        RegionKind::PiLineSpecial | RegionKind::ZeroLineSpecial => 128,
    }
}

/// `φ₁` runs left to right, `φ₂` bottom to top.
pub fn write_map_pgm<W: Write + ?Sized>(w: &mut W, map: &PhaseMap) -> io::Result<()> {
    let n = map.resolution;
    write_pgm(w, n, n, |i, j| region_gray(map.kinds[j * n + i]))
}

/// `phi1,phi2,kind`
pub fn write_map_csv<W: Write + ?Sized>(w: &mut W, map: &PhaseMap) -> io::Result<()> {
    writeln!(w, "phi1,phi2,kind")?;
    let n = map.resolution;
    for j in 0..n {
        for i in 0..n {
            let kind = map.kinds[j * n + i];
            writeln!(w, "{},{},{}", fmt_f64(map.phase(i)), fmt_f64(map.phase(j)), kind.name())?;
        }
    }
    Ok(())
}

fn write_pgm<W, F>(w: &mut W, nx: usize, ny: usize, level: F) -> io::Result<()>
where
    W: Write + ?Sized,
    F: Fn(usize, usize) -> u8,
{
    writeln!(w, "P2")?;
    writeln!(w, "{nx} {ny}")?;
    writeln!(w, "255")?;
    for j in (0..ny).rev() {
        let row: Vec<String> = (0..nx).map(|i| level(i, j).to_string()).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

/// `k,radius`
pub fn write_radii_csv<W: Write + ?Sized>(w: &mut W, radii: &[f64]) -> io::Result<()> {
    writeln!(w, "k,radius")?;
    for (k, r) in radii.iter().enumerate() {
        writeln!(w, "{k},{}", fmt_f64(*r))?;
    }
    Ok(())
}
