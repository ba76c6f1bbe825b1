use biso::applications::{f_divergence_output_bounds, fi_curve_bounds, secrecy_capacity_vs_bec, Bound};
use biso::coefficients::{
    alpha_max, binary_convolution, capacity_binary, capacity_biso, doeblin_alpha, eta_kl_binary, eta_kl_biso, eta_tv,
    h2, h2_inv, maximal_leakage,
};
use biso::divergence::{f_divergence, FDivergenceGenerator};
use biso::orders::{
    chi2_difference_second_derivative, general_less_noisy_criterion, guessing_probability, less_noisy_criterion_biso,
};
use biso::{BisoChannel, Channel, DegradingMap};
use proptest::prelude::*;

fn simplex(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, n).prop_map(|w| {
        let t: f64 = w.iter().sum();
        w.into_iter().map(|v| v / t).collect()
    })
}

fn biso() -> impl Strategy<Value = BisoChannel> {
    (1usize..=6)
        .prop_flat_map(|l| simplex(2 * l..=2 * l))
        .prop_map(|v| BisoChannel::new(v.chunks(2).map(|c| (c[0], c[1])).collect()).unwrap())
}

fn binary_channel() -> impl Strategy<Value = Channel> {
    (2usize..=8)
        .prop_flat_map(|n| (simplex(n..=n), simplex(n..=n)))
        .prop_map(|(a, b)| Channel::new(a, b).unwrap())
}

fn map(m: usize, n: usize) -> impl Strategy<Value = DegradingMap> {
    prop::collection::vec(simplex(n..=n), m).prop_map(|rows| DegradingMap::new(rows).unwrap())
}

fn channel_and_map() -> impl Strategy<Value = (Channel, DegradingMap)> {
    (binary_channel(), 1usize..=6).prop_flat_map(|(c, n)| {
        let m = c.outputs();
        (Just(c), map(m, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonicalization_is_idempotent(w in biso()) {
        let once = w.to_channel().canonicalize_biso().unwrap();
        let twice = BisoChannel::from_flat(&once.flat()).unwrap().to_channel().canonicalize_biso().unwrap();
        prop_assert_eq!(once.flat().len(), twice.flat().len());
        for (a, b) in once.flat().iter().zip(twice.flat()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn flat_round_trip(w in biso()) {
        let back = BisoChannel::from_flat(&w.flat()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn bsc_is_biso_and_z_is_not(p in 0.0f64..=1.0, q in 0.001f64..0.999) {
        prop_assert!(Channel::bsc(p).unwrap().canonicalize_biso().is_ok());
        prop_assert!(Channel::z(q).unwrap().canonicalize_biso().is_err());
    }

    #[test]
    fn composition_is_associative(
        (c, a) in channel_and_map(),
        seed in prop::collection::vec(0.001f64..1.0, 36),
    ) {
        let n = a.outputs();
        let k = 1 + seed.len() % 5;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let r: Vec<f64> = (0..k).map(|j| seed[(i * k + j) % seed.len()]).collect();
                let t: f64 = r.iter().sum();
                r.into_iter().map(|v| v / t).collect()
            })
            .collect();
        let b = DegradingMap::new(rows).unwrap();
        let left = c.compose(&a).unwrap().compose(&b).unwrap();
        let right = c.compose(&a.then(&b).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn contraction_sandwich(w in biso()) {
        let eta = eta_kl_biso(&w);
        let tv = eta_tv(&w.to_channel());
        prop_assert!(tv * tv <= eta + 1e-9);
        prop_assert!(eta <= tv + 1e-9);
    }

    #[test]
    fn optimizer_matches_closed_form(w in biso()) {
        let c = w.to_channel();
        prop_assert!((eta_kl_binary(&c) - eta_kl_biso(&w)).abs() <= 1e-9);
        prop_assert!((capacity_binary(&c) - capacity_biso(&w)).abs() <= 1e-9);
    }

    #[test]
    fn observation_chain(c in binary_channel()) {
        let tv = eta_tv(&c);
        prop_assert!((tv - (1.0 - doeblin_alpha(&c))).abs() <= 1e-12);
        prop_assert!((tv - (alpha_max(&c) - 1.0)).abs() <= 1e-12);
        prop_assert!((tv - (maximal_leakage(&c).exp() - 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn data_processing((c, d) in channel_and_map()) {
        let out = c.compose(&d).unwrap();
        prop_assert!(eta_kl_binary(&out) <= eta_kl_binary(&c) + 1e-9);
        prop_assert!(eta_tv(&out) <= eta_tv(&c) + 1e-9);
        prop_assert!(capacity_binary(&out) <= capacity_binary(&c) + 1e-9);
        prop_assert!(alpha_max(&out) <= alpha_max(&c) + 1e-9);
        prop_assert!(doeblin_alpha(&out) >= doeblin_alpha(&c) - 1e-9);
    }

    #[test]
    fn entropy_inverse_round_trip(h in 0.0f64..=1.0) {
        let p = h2_inv(h).unwrap();
        prop_assert!((0.0..=0.5).contains(&p));
        prop_assert!((h2(p) - h).abs() <= 1e-12);
    }

    #[test]
    fn convolution_identity(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let c = binary_convolution(a, b);
        let rhs = b * (1.0 - b) + (1.0 - 2.0 * b).powi(2) * a * (1.0 - a);
        prop_assert!((c * (1.0 - c) - rhs).abs() <= 1e-14);
        prop_assert!((c - binary_convolution(b, a)).abs() <= 1e-15);
    }

    #[test]
    fn criterion_vanishes_on_equal_channels(w in biso(), q in 0.001f64..0.999) {
        prop_assert_eq!(less_noisy_criterion_biso(&w, &w, q).unwrap(), 0.0);
    }

    #[test]
    fn criterion_does_not_depend_on_p(w in biso(), v in biso(), q in 0.05f64..0.95) {
        let (wc, vc) = (w.to_channel(), v.to_channel());
        let closed = general_less_noisy_criterion(&wc, &vc, q).unwrap();
        let scale = 1e-5 * (1.0 + closed.abs());
        for p in [0.1, 0.5, 0.9] {
            let fd = 0.5 * chi2_difference_second_derivative(&wc, &vc, p, q);
            prop_assert!((fd - closed).abs() <= scale, "p={} fd={} closed={}", p, fd, closed);
        }
        let biso_form = less_noisy_criterion_biso(&w, &v, q).unwrap();
        prop_assert!((biso_form - closed).abs() <= 1e-9 * (1.0 + closed.abs()));
    }

    #[test]
    fn guessing_at_zero_is_one(w in biso()) {
        prop_assert!((guessing_probability(&w, 0.0) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn secrecy_definitional_consistency(w in biso()) {
        prop_assert_eq!(secrecy_capacity_vs_bec(&w) + capacity_biso(&w), eta_kl_biso(&w));
    }

    #[test]
    fn fi_bounds_are_ordered_and_monotone(w in biso()) {
        let mut prev = fi_curve_bounds(&w, 0.0).unwrap();
        for k in 1..=60 {
            let b = fi_curve_bounds(&w, k as f64 * 0.02).unwrap();
            prop_assert!(b.lower >= -1e-12);
            prop_assert!(b.lower <= b.upper + 1e-9);
            prop_assert!(b.lower >= prev.lower - 1e-12);
            prop_assert!(b.upper >= prev.upper);
            if prev.t >= 1.0 {
                prop_assert_eq!(b.upper, prev.upper);
            }
            prev = b;
        }
    }

    #[test]
    fn f_divergence_bounds_sandwich_rows(w in biso()) {
        let c = w.to_channel();
        let l = maximal_leakage(&c);
        prop_assume!(l > 1e-9 && l.exp() < 2.0 - 1e-9);
        for g in [FDivergenceGenerator::total_variation(), FDivergenceGenerator::chi_squared(), FDivergenceGenerator::kl()] {
            let b = f_divergence_output_bounds(&g, l).unwrap();
            let d = f_divergence(&g, c.row(0), c.row(1));
            let lower = b.lower.value().unwrap();
            match d {
                Ok(d) => {
                    prop_assert!(lower - 1e-9 <= d, "{}: {} > {}", g.name(), lower, d);
                    if let Bound::Finite(u) = b.upper {
                        prop_assert!(d <= u + 1e-9, "{}: {} > {}", g.name(), d, u);
                    }
                }
                Err(_) => prop_assert_eq!(b.upper, Bound::Unbounded),
            }
        }
    }
}
