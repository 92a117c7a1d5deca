//! Property-based invariants of the transform, algebra and capacity layers.

use fermion_channels::capacity::{c_ea, cb_norm_1_to_p};
use fermion_channels::clifford::{adjoint_sign, product_sign};
use fermion_channels::hypercube::{
    lp_norm, walsh_analyze, walsh_synthesize, HypercubeFunction, MultiplierSymbol,
};
use fermion_channels::linalg::max_abs_diff;
use fermion_channels::{FermionRep, MultiplierChannel};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex_symbol(n: usize) -> impl Strategy<Value = MultiplierSymbol> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_map(move |pairs| {
        MultiplierSymbol::from_coeffs(
            n,
            pairs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
        )
        .unwrap()
    })
}

fn positive_channel(n: usize) -> impl Strategy<Value = MultiplierChannel> {
    prop::collection::vec(0.05f64..2.0, 1 << n).prop_map(move |mut values| {
        let mean: f64 = values.iter().sum::<f64>() / values.len() as f64;
        for v in &mut values {
            *v /= mean;
        }
        let f = HypercubeFunction::new(
            n,
            values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        )
        .unwrap();
        MultiplierChannel::from_symbol(walsh_analyze(&f)).unwrap()
    })
}

proptest! {
    #[test]
    fn analyze_inverts_synthesize(symbol in (2usize..=8).prop_flat_map(complex_symbol)) {
        let round = walsh_analyze(&walsh_synthesize(&symbol));
        for (a, b) in round.coeffs().iter().zip(symbol.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn parseval_holds(symbol in complex_symbol(6)) {
        let f = walsh_synthesize(&symbol);
        let lhs: f64 = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>()
            / f.values().len() as f64;
        let rhs: f64 = symbol.coeffs().iter().map(|v| v.norm_sqr()).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs));
    }

    #[test]
    fn mean_is_empty_coefficient(symbol in complex_symbol(5)) {
        let f = walsh_synthesize(&symbol);
        prop_assert!((f.mean() - symbol.coeffs()[0]).norm() <= 1e-12);
    }

    #[test]
    fn lp_norms_increase_in_p(symbol in complex_symbol(4), p in 1.0f64..6.0, q in 0.0f64..6.0) {
        let f = walsh_synthesize(&symbol);
        let q = p + q;
        prop_assert!(lp_norm(&f, p).unwrap() <= lp_norm(&f, q).unwrap() + 1e-10);
    }

    #[test]
    fn linf_dominates(symbol in complex_symbol(4), p in 1.0f64..20.0) {
        let f = walsh_synthesize(&symbol);
        prop_assert!(
            lp_norm(&f, p).unwrap() <= lp_norm(&f, f64::INFINITY).unwrap() + 1e-10
        );
    }

    #[test]
    fn capacity_adds_over_tensor(a in positive_channel(2), b in positive_channel(2)) {
        let ab = MultiplierChannel::tensor(&a, &b).unwrap();
        let sum = c_ea(&a).unwrap() + c_ea(&b).unwrap();
        prop_assert!((c_ea(&ab).unwrap() - sum).abs() <= 1e-10);
    }

    #[test]
    fn cb_norm_at_least_one_for_channels(ch in positive_channel(4), p in 1.0001f64..8.0) {
        // ||f||_p >= ||f||_1 = mean f = 1 for a channel symbol
        prop_assert!(cb_norm_1_to_p(&ch, p).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn sign_formulas_match_matrices(a in 0usize..16, b in 0usize..16) {
        let rep = FermionRep::build_generators(4).unwrap();
        let sa = rep.basis_element(a).unwrap();
        let sb = rep.basis_element(b).unwrap();
        let sab = rep.basis_element(a ^ b).unwrap();
        let sign = product_sign(a, b) as f64;
        prop_assert!(max_abs_diff(&(&sa * &sb), &(sab * Complex64::new(sign, 0.0))) <= 1e-12);
        let adj = adjoint_sign(a) as f64;
        prop_assert!(max_abs_diff(&sa.adjoint(), &(rep.basis_element(a).unwrap() * Complex64::new(adj, 0.0))) <= 1e-12);
    }

    #[test]
    fn choi_trace_counts_dimension(ch in positive_channel(4)) {
        let choi = ch.choi_matrix().unwrap();
        let tr: Complex64 = choi.diagonal().iter().sum();
        prop_assert!((tr.re - ch.dim().unwrap() as f64).abs() <= 1e-10);
        prop_assert!(tr.im.abs() <= 1e-10);
    }

    #[test]
    fn composition_multiplies_symbols(s in 0.0f64..2.0, t in 0.0f64..2.0) {
        let a = MultiplierChannel::ou_semigroup(4, s).unwrap();
        let b = MultiplierChannel::ou_semigroup(4, t).unwrap();
        let ab = MultiplierChannel::ou_semigroup(4, s + t).unwrap();
        let x = FermionRep::build_generators(4).unwrap().basis_element(0b1011).unwrap();
        let via_two = a.apply(&b.apply(&x).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&via_two, &ab.apply(&x).unwrap()) <= 1e-12);
    }
}
