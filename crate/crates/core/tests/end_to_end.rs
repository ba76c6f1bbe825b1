use biso::coefficients::{capacity_biso, doeblin_alpha, eta_kl_biso, eta_tv};
use biso::extremal::{
    dim3_degrading_map, dim3_less_noisy_compare, match_extremal, reverse_coefficients, search_reverse_alpha,
    search_reverse_beta, theorem2_degrading_map, ClassKind, DIM3_TOL,
};
use biso::orders::{guessing_probability, is_degraded, is_less_noisy, is_more_capable, Relation, DEFAULT_GRID};
use biso::sample::{random_biso, random_biso_degradation, random_dim3_equal_alpha, random_dim3_equal_eta};
use biso::{BisoChannel, Channel, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn matched_extremes_share_the_class_constant() {
    let mut r = rng(1);
    for _ in 0..200 {
        let w = random_biso(&mut r, 6);
        let c = w.to_channel();
        for kind in [ClassKind::EtaKl, ClassKind::Alpha, ClassKind::Capacity] {
            let m = match_extremal(&c, kind).unwrap();
            let value = |x: &BisoChannel| match kind {
                ClassKind::EtaKl => eta_kl_biso(x),
                ClassKind::Alpha => doeblin_alpha(&x.to_channel()),
                ClassKind::Capacity => capacity_biso(x),
            };
            let v = m.class.value;
            assert!((value(&m.bsc()) - v).abs() <= 1e-9, "{kind} bsc");
            assert!((value(&m.bec()) - v).abs() <= 1e-9, "{kind} bec");
        }
    }
}

#[test]
fn bec_and_bsc_bracket_eta_class() {
    let mut r = rng(2);
    for _ in 0..100 {
        let f = random_biso(&mut r, 6);
        let m = match_extremal(&f.to_channel(), ClassKind::EtaKl).unwrap();
        assert_eq!(
            is_less_noisy(&m.bec(), &f, DEFAULT_GRID).unwrap().relation,
            Relation::Holds
        );
        assert_eq!(
            is_less_noisy(&f, &m.bsc(), DEFAULT_GRID).unwrap().relation,
            Relation::Holds
        );
    }
}

#[test]
fn bec_and_bsc_bracket_alpha_class() {
    let mut r = rng(3);
    for _ in 0..100 {
        let f = random_biso(&mut r, 6);
        let fc = f.to_channel();
        let alpha = doeblin_alpha(&fc);
        assert!(is_degraded(&Channel::bec(alpha).unwrap(), &fc).unwrap().holds());
        let target = fc.compose(&theorem2_degrading_map(&f)).unwrap();
        let bsc = Channel::bsc(alpha / 2.0).unwrap();
        assert!(target.max_abs_diff(&bsc).unwrap() <= 1e-12);
        let v = is_degraded(&fc, &bsc).unwrap();
        let Some(Witness::Map(map)) = v.witness else {
            panic!("missing witness")
        };
        assert!(fc.compose(&map).unwrap().max_abs_diff(&target).unwrap() <= 1e-10);
    }
}

#[test]
fn degradation_implies_guessing_dominance() {
    let mut r = rng(4);
    for _ in 0..100 {
        let p = random_biso(&mut r, 5);
        let q = random_biso_degradation(&mut r, &p, 5);
        assert!(is_degraded(&p.to_channel(), &q.to_channel()).unwrap().holds());
        for _ in 0..20 {
            let x: f64 = r.gen_range(0.0..1.0);
            assert!(guessing_probability(&p, x) >= guessing_probability(&q, x) - 1e-9);
        }
    }
}

#[test]
fn dim3_less_noisy_matches_grid() {
    let mut r = rng(5);
    for _ in 0..100 {
        let (f, g) = random_dim3_equal_eta(&mut r);
        let (fb, gb) = (f.to_biso(), g.to_biso());
        let cmp = dim3_less_noisy_compare(&fb, &gb).unwrap();
        assert!(cmp.first_over_second.holds() || cmp.second_over_first.holds());
        assert_eq!(
            cmp.first_over_second.holds(),
            is_less_noisy(&fb, &gb, DEFAULT_GRID).unwrap().holds()
        );
        assert_eq!(
            cmp.second_over_first.holds(),
            is_less_noisy(&gb, &fb, DEFAULT_GRID).unwrap().holds()
        );
    }
}

#[test]
fn dim3_maps_are_valid() {
    let mut r = rng(6);
    for _ in 0..100 {
        let (f, g) = random_dim3_equal_alpha(&mut r);
        let deg = dim3_degrading_map(&f.to_biso(), &g.to_biso()).unwrap();
        assert!(deg.composition_error <= DIM3_TOL);
        for row in deg.map.rows() {
            assert!(row.iter().all(|v| (0.0..=1.0).contains(v)));
            assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn reverse_coefficients_are_tight() {
    let mut r = rng(7);
    for _ in 0..10 {
        let w = random_biso(&mut r, 4);
        let rc = reverse_coefficients(&w);
        assert_eq!(rc.alpha, 1.0 - eta_tv(&w.to_channel()));
        assert_eq!(rc.beta, 1.0 - eta_kl_biso(&w));
        assert!((search_reverse_alpha(&w).unwrap() - rc.alpha).abs() <= 1e-6);
        assert!((search_reverse_beta(&w, 199).unwrap() - rc.beta).abs() <= 1e-6);
    }
}

#[test]
fn order_hierarchy_on_degraded_pairs() {
    let mut r = rng(8);
    for _ in 0..60 {
        let p = random_biso(&mut r, 4);
        let q = random_biso_degradation(&mut r, &p, 4);
        let (pc, qc) = (p.to_channel(), q.to_channel());
        assert!(is_degraded(&pc, &qc).unwrap().holds());
        assert!(is_less_noisy(&p, &q, DEFAULT_GRID).unwrap().holds());
        assert!(is_more_capable(&pc, &qc, DEFAULT_GRID).unwrap().holds());
    }
}
