use std::f64::consts::TAU;

use cat_ortho::coherent::coherent_cat_overlap;
use cat_ortho::{cat_norm_squared, husimi_cat, husimi_quadrature_check, Amplitude, Cat, GridGeometry};
use proptest::prelude::*;

#[test]
fn vacuum_quadrature() {
    let vacuum = Cat::new(Amplitude::zero(), 0.0).unwrap();
    let grid = husimi_cat(&vacuum, GridGeometry::square(6.0, 241).unwrap(), true).unwrap();
    assert!((husimi_quadrature_check(&grid) - 1.0).abs() < 1e-6);
}

#[test]
fn even_cat_quadrature() {
    let cat = Cat::even(Amplitude::real(2.0).unwrap());
    let grid = husimi_cat(&cat, GridGeometry::square(8.0, 241).unwrap(), true).unwrap();
    assert!((husimi_quadrature_check(&grid) - 1.0).abs() < 1e-5);
}

#[test]
fn normalized_values_are_bounded() {
    let cat = Cat::new(Amplitude::new(1.5, -0.7).unwrap(), 2.0).unwrap();
    let grid = husimi_cat(&cat, GridGeometry::square(5.0, 101).unwrap(), true).unwrap();
    assert!(grid.values.iter().all(|&q| (0.0..=1.0 + 1e-12).contains(&q)));
}

#[test]
fn rows_run_upwards_in_imaginary_part() {
    let geometry = GridGeometry::new(-1.0, 1.0, -2.0, 2.0, 4, 8).unwrap();
    let top = geometry.point(0, 7);
    let bottom = geometry.point(0, 0);
    assert!(top.im > bottom.im);
}

fn q_at(v: &Cat, gamma: Amplitude) -> f64 {
    coherent_cat_overlap(gamma, v).norm_sqr() / cat_norm_squared(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn husimi_is_rotation_covariant(
        r in 0.1..3.0f64,
        t in 0.0..TAU,
        phi in 0.0..TAU,
        theta in 0.0..TAU,
        i in 0usize..21,
        j in 0usize..21,
    ) {
        let alpha = Amplitude::real(r).unwrap().rotate(t);
        let cat = Cat::new(alpha, phi).unwrap();
        let rotated = Cat::new(alpha.rotate(theta), phi).unwrap();
        let grid = husimi_cat(&cat, GridGeometry::square(4.0, 21).unwrap(), true).unwrap();
        let gamma = Amplitude::from_complex(grid.geometry.point(i, j)).unwrap();
        let q = grid.get(i, j);
        prop_assert!((q - q_at(&rotated, gamma.rotate(theta))).abs() < 1e-12);
    }
}
