//! Random channels and maps for property tests and sweeps.

use rand::Rng;

use crate::channel::{BisoChannel, Channel, DegradingMap};
use crate::extremal::Dim3;

/// Probability vector drawn uniformly from the simplex.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|v| v / total).collect()
}

/// BISO channel with between 1 and `max_pairs` pairs.
pub fn random_biso<R: Rng + ?Sized>(rng: &mut R, max_pairs: usize) -> BisoChannel {
    let l = rng.gen_range(1..=max_pairs.max(1));
    let v = random_simplex(rng, 2 * l);
    BisoChannel::new(v.chunks(2).map(|c| (c[0], c[1])).collect()).expect("simplex sample")
}

/// Binary-input channel with between 2 and `max_outputs` outputs.
pub fn random_binary_channel<R: Rng + ?Sized>(rng: &mut R, max_outputs: usize) -> Channel {
    let n = rng.gen_range(2..=max_outputs.max(2));
    Channel::new(random_simplex(rng, n), random_simplex(rng, n)).expect("simplex sample")
}

/// Row-stochastic `m × n` map.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> DegradingMap {
    DegradingMap::new((0..m).map(|_| random_simplex(rng, n)).collect()).expect("simplex sample")
}

/// Map between labeled BISO output alphabets with `l_in` and `l_out` pairs
/// that commutes with the sign flip, so BISO channels stay BISO.
pub fn random_symmetric_map<R: Rng + ?Sized>(rng: &mut R, l_in: usize, l_out: usize) -> DegradingMap {
    let (m, n) = (2 * l_in, 2 * l_out);
    let mut rows = vec![Vec::new(); m];
    for i in l_in..m {
        let row = random_simplex(rng, n);
        rows[m - 1 - i] = row.iter().rev().copied().collect();
        rows[i] = row;
    }
    DegradingMap::new(rows).expect("simplex sample")
}

/// A BISO channel degraded from `w` through a random symmetric map.
pub fn random_biso_degradation<R: Rng + ?Sized>(rng: &mut R, w: &BisoChannel, max_pairs: usize) -> BisoChannel {
    let l_out = rng.gen_range(1..=max_pairs.max(1));
    let map = random_symmetric_map(rng, w.len(), l_out);
    w.to_channel()
        .compose(&map)
        .and_then(|c| c.canonicalize_biso())
        .expect("symmetric map preserves BISO")
}

/// Two dimension-3 BISO channels with the same η_KL.
pub fn random_dim3_equal_eta<R: Rng + ?Sized>(rng: &mut R) -> (Dim3, Dim3) {
    let eta: f64 = rng.gen_range(0.02..0.98);
    let mut one = || {
        let s = rng.gen_range(eta..=1.0);
        let r = (eta * s).sqrt();
        let (a, b) = (0.5 * (s + r), 0.5 * (s - r));
        let (p1, pm1) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        Dim3 { p0: 1.0 - s, p1, pm1 }
    };
    (one(), one())
}

/// Two dimension-3 BISO channels with the same Doeblin coefficient.
pub fn random_dim3_equal_alpha<R: Rng + ?Sized>(rng: &mut R) -> (Dim3, Dim3) {
    let t: f64 = rng.gen_range(0.02..0.98);
    let mut one = || {
        let s = rng.gen_range(t..=1.0);
        let (a, b) = (0.5 * (s + t), 0.5 * (s - t));
        let (p1, pm1) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        Dim3 { p0: 1.0 - s, p1, pm1 }
    };
    (one(), one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::eta_kl_biso;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symmetric_map_keeps_biso() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_biso(&mut rng, 5);
            let d = random_biso_degradation(&mut rng, &w, 4);
            assert!(d.len() <= 4);
        }
    }

    #[test]
    fn dim3_generators_hit_their_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let (f, g) = random_dim3_equal_eta(&mut rng);
            assert!((eta_kl_biso(&f.to_biso()) - eta_kl_biso(&g.to_biso())).abs() < 1e-12);
            let (f, g) = random_dim3_equal_alpha(&mut rng);
            assert!((f.alpha() - g.alpha()).abs() < 1e-12);
        }
    }
}
