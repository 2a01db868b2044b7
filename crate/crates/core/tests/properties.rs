use proptest::prelude::*;

use rholab::bipartite::{partial_trace_a, partial_trace_b, schmidt, BipartiteKet, BipartiteSpace};
use rholab::density::{gram_factor, mixture_to_density, remix, DensityOperator};
use rholab::entropy::von_neumann_entropy;
use rholab::lindblad::{
    eigenmatrix_decompose, kraus_from_decomposition, superop_from_kraus, KrausChannel,
};
use rholab::random::Sampler;
use rholab::spin::{sigma_n, sigma_n_eigenkets, UnitVector3};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixtures_give_valid_densities(seed in any::<u64>(), n in 2usize..=6, k in 1usize..=5) {
        let mut s = Sampler::new(seed);
        let d = mixture_to_density(&s.mixture(n, k)).unwrap();
        let m = d.matrix();
        prop_assert!(m.is_hermitian(1e-12));
        prop_assert!((m.trace().unwrap().re - 1.0).abs() < 1e-12);
        prop_assert!(d.min_eigenvalue() > -1e-12);
        prop_assert!(d.purity() <= 1.0 + 1e-12);
        prop_assert!(d.purity() >= 1.0 / n as f64 - 1e-12);
    }

    #[test]
    fn remixing_preserves_the_density(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let mut s = Sampler::new(seed);
        let m = s.mixture(n, k);
        let g = gram_factor(&m, &s.basis(n)).unwrap();
        let back = remix(&g, &s.unitary(k)).unwrap();
        let a = mixture_to_density(&m).unwrap();
        let b = mixture_to_density(&back).unwrap();
        prop_assert!(a.matrix().approx_eq(b.matrix(), 1e-10));
    }

    #[test]
    fn schmidt_coefficients_match_reduced_spectra(seed in any::<u64>(), da in 2usize..=3, db in 2usize..=4) {
        let mut s = Sampler::new(seed);
        let space = BipartiteSpace::new(da, db).unwrap();
        let psi = BipartiteKet::new(space, s.ket(da * db)).unwrap();
        let form = schmidt(&psi);
        prop_assert!(form.reconstruct().approx_eq(psi.amplitudes(), 1e-10));
        let ra = DensityOperator::new(partial_trace_b(&psi.projector(), space).unwrap()).unwrap();
        let rb = DensityOperator::new(partial_trace_a(&psi.projector(), space).unwrap()).unwrap();
        let sa = von_neumann_entropy(&ra).nats();
        let sb = von_neumann_entropy(&rb).nats();
        prop_assert!((sa - sb).abs() < 1e-9);
        let from_coeffs: f64 = form
            .coefficients
            .iter()
            .map(|c| c * c)
            .filter(|p| *p > 1e-14)
            .map(|p| -p * p.ln())
            .sum();
        prop_assert!((sa - from_coeffs).abs() < 1e-9);
    }

    #[test]
    fn kraus_round_trip(seed in any::<u64>(), n in 2usize..=3, k in 1usize..=4) {
        let mut s = Sampler::new(seed);
        let ch = KrausChannel::new(s.kraus_ops(n, k)).unwrap();
        let m = superop_from_kraus(&ch);
        let dec = eigenmatrix_decompose(&m).unwrap();
        prop_assert!(dec.completely_positive);
        let back = kraus_from_decomposition(&dec).unwrap();
        let d = s.density(n);
        prop_assert!(back.apply(d.matrix()).unwrap().approx_eq(&ch.apply(d.matrix()).unwrap(), 1e-9));
    }

    #[test]
    fn sigma_n_has_unit_eigenkets(theta in 0.0f64..std::f64::consts::PI, phi in 0.0f64..std::f64::consts::TAU) {
        let n = UnitVector3::from_angles(theta, phi);
        let op = sigma_n(&n);
        let (plus, minus) = sigma_n_eigenkets(&n);
        prop_assert!((&op * &plus).approx_eq(&plus, 1e-12));
        prop_assert!((&op * &minus).approx_eq(&minus.scale_real(-1.0), 1e-12));
    }
}
