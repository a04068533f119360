use std::f64::consts::TAU;

use cat_ortho::coherent::superposition_inner;
use cat_ortho::fock::fock_expand_superposition;
use cat_ortho::ortho::{classify_phase_pair, j_vector_partner};
use cat_ortho::{
    cat_inner_product, fock_expand_cat, fock_expand_coherent, fock_inner_product, recommended_truncation,
    solve_beta_family, Amplitude, Cat,
};
use num_complex::Complex;
use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;

fn amplitude(radius: f64) -> impl Strategy<Value = Amplitude> {
    (0.0..radius, 0.0..TAU).prop_map(|(r, t)| Amplitude::real(r).unwrap().rotate(t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_matches_number_basis(a in amplitude(6.0), b in amplitude(6.0), p1 in 0.0..TAU, p2 in 0.0..TAU) {
        let n = recommended_truncation(6.0);
        let (bra, ket) = (Cat::new(b, p2).unwrap(), Cat::new(a, p1).unwrap());
        let analytic = cat_inner_product(&bra, &ket);
        let oracle = fock_inner_product(&fock_expand_cat(&bra, n).unwrap(), &fock_expand_cat(&ket, n).unwrap());
        prop_assert!((analytic - oracle.value).norm() <= oracle.error_bar + 1e-11 * analytic.norm().max(1.0));
    }

    #[test]
    fn family_members_are_orthogonal_in_the_number_basis(a in amplitude(3.0), p1 in 0.0..TAU, p2 in 0.0..TAU, k in -2i64..=2) {
        prop_assume!(a.norm() > 0.3);
        prop_assume!(classify_phase_pair(p1, p2).kind.lattice().is_some());
        let beta = solve_beta_family(a, p1, p2, k, k).unwrap()[0].beta;
        prop_assume!(beta.norm() <= 6.0);
        let n = recommended_truncation(6.0);
        let oracle = fock_inner_product(
            &fock_expand_cat(&Cat::new(beta, p2).unwrap(), n).unwrap(),
            &fock_expand_cat(&Cat::new(a, p1).unwrap(), n).unwrap(),
        );
        prop_assert!(oracle.value.norm() < 1e-10, "{}", oracle.value);
    }

    #[test]
    fn j_vectors_are_orthogonal_to_even_cats(d in 0.5..3.0f64, k in -2i64..=2) {
        let j = j_vector_partner(d, k).unwrap();
        let state = j.to_superposition();
        let even = Cat::even(Amplitude::real(d).unwrap());
        let n = recommended_truncation(state.max_amplitude().max(d));
        let oracle = fock_inner_product(
            &fock_expand_superposition(&state, n).unwrap(),
            &fock_expand_cat(&even, n).unwrap(),
        );
        prop_assert!(oracle.value.norm() < 1e-10, "{}", oracle.value);
        prop_assert!(superposition_inner(&state, &even.to_superposition()).norm() < 1e-12);
    }

    #[test]
    fn recurrence_matches_log_gamma(a in amplitude(6.0)) {
        let n = recommended_truncation(6.0);
        let state = fock_expand_coherent(a, n).unwrap();
        let (r, t) = (a.norm(), a.arg());
        for (m, c) in state.coeffs().iter().enumerate() {
            let mf = m as f64;
            let ln_mag = -0.5 * r * r + if m == 0 { 0.0 } else { mf * r.ln() } - 0.5 * ln_gamma(mf + 1.0);
            let direct = Complex::from_polar(ln_mag.exp(), mf * t);
            prop_assert!((c - direct).norm() < 1e-13, "m = {m}: {c} vs {direct}");
        }
    }
}

#[test]
fn expansion_norm_approaches_one() {
    for r in [0.5, 2.0, 6.0] {
        let a = Amplitude::new(r, -0.5 * r).unwrap();
        let n = recommended_truncation(a.norm());
        let state = fock_expand_coherent(a, n).unwrap();
        assert!((state.norm_sqr() + state.tail_bound() - 1.0).abs() < 1e-12);
    }
}
