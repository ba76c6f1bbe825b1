//! Scalar functionals of a binary-input channel: entropies, contraction
//! coefficients, Doeblin coefficients, maximal leakage and capacity.
//!
//! Entropies, mutual information and capacity are in bits. Maximal leakage
//! is stored in nats so that `exp(L) = α_max` holds directly; use
//! [`CoefficientReport::maximal_leakage_bits`] for the base-2 value.

use crate::channel::{BisoChannel, Channel, InputDistribution};
use crate::error::{Error, Result};
use crate::optimize::maximize_unit_interval;

/// Binary entropy `h₂(p)` in bits. Inputs are clamped to `[0, 1]`.
pub fn h2(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// [`h2`] with range checking.
pub fn h2_checked(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(h2(p))
}

/// Inverse of `h₂` on `[0, 1/2]`, by bisection down to adjacent floats.
pub fn h2_inv(h: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::OutOfRange {
            value: h,
            range: "[0, 1]",
        });
    }
    if h == 0.0 {
        return Ok(0.0);
    }
    if h == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h2(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (h2(lo) - h).abs() <= (h2(hi) - h).abs() {
        Ok(lo)
    } else {
        Ok(hi)
    }
}

/// Binary convolution `a ∗ b = a(1-b) + (1-a)b`.
pub fn binary_convolution(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + (1.0 - a) * b
}

/// KL contraction coefficient of a BISO channel in closed form,
/// `Σ_{y>0} (p_y - p_{-y})² / (p_y + p_{-y})`.
pub fn eta_kl_biso(channel: &BisoChannel) -> f64 {
    channel
        .pairs()
        .iter()
        .filter(|&&(a, b)| a + b > 0.0)
        .map(|&(a, b)| (a - b) * (a - b) / (a + b))
        .sum()
}

/// The χ² ratio maximized in the binary-input contraction coefficient,
/// `Σ_y (P(y|0) - P(y|1))² q(1-q) / (q P(y|0) + (1-q) P(y|1))`, with
/// `q = P(X=0)`. At `q ∈ {0, 1}` the continuous extension is returned.
pub fn chi2_contraction_objective(channel: &Channel, q: f64) -> f64 {
    if q <= 0.0 {
        return channel.columns().filter(|&(_, b)| b == 0.0).map(|(a, _)| a).sum();
    }
    if q >= 1.0 {
        return channel.columns().filter(|&(a, _)| a == 0.0).map(|(_, b)| b).sum();
    }
    let w = q * (1.0 - q);
    channel
        .columns()
        .map(|(a, b)| {
            let den = q * a + (1.0 - q) * b;
            if den > 0.0 {
                (a - b) * (a - b) * w / den
            } else {
                0.0
            }
        })
        .sum()
}

/// KL contraction coefficient of a general binary-input channel together
/// with the maximizing `q`.
pub fn eta_kl_binary_argmax(channel: &Channel) -> (f64, f64) {
    let (q, v) = maximize_unit_interval(|q| chi2_contraction_objective(channel, q));
    (v.clamp(0.0, 1.0), q)
}

/// KL contraction coefficient of a general binary-input channel.
pub fn eta_kl_binary(channel: &Channel) -> f64 {
    eta_kl_binary_argmax(channel).0
}

/// Dobrushin coefficient: the total variation between the two rows.
pub fn eta_tv(channel: &Channel) -> f64 {
    0.5 * channel.columns().map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Doeblin coefficient `α = Σ_y min_x P(y|x)`.
pub fn doeblin_alpha(channel: &Channel) -> f64 {
    channel.columns().map(|(a, b)| a.min(b)).sum()
}

/// Max-Doeblin coefficient `α_max = Σ_y max_x P(y|x)`.
pub fn alpha_max(channel: &Channel) -> f64 {
    channel.columns().map(|(a, b)| a.max(b)).sum()
}

/// Maximal leakage `ln α_max` in nats, for a full-support input.
pub fn maximal_leakage(channel: &Channel) -> f64 {
    alpha_max(channel).ln()
}

/// Capacity of a BISO channel in bits,
/// `1 - Σ_{y>0} (p_y + p_{-y}) h₂(p_y / (p_y + p_{-y}))`.
pub fn capacity_biso(channel: &BisoChannel) -> f64 {
    let loss: f64 = channel
        .pairs()
        .iter()
        .filter(|&&(a, b)| a + b > 0.0)
        .map(|&(a, b)| (a + b) * h2(a / (a + b)))
        .sum();
    (1.0 - loss).max(0.0)
}

/// `I(X;Y)` in bits for `X ~ Ber(p)`, `p = P(X=0)`.
pub fn mutual_information(channel: &Channel, input: InputDistribution) -> f64 {
    let p = input.p();
    let term = |w: f64, v: f64, out: f64| {
        if w == 0.0 || v == 0.0 {
            0.0
        } else {
            w * v * (v / out).log2()
        }
    };
    channel
        .columns()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| {
            let out = p * a + (1.0 - p) * b;
            term(p, a, out) + term(1.0 - p, b, out)
        })
        .sum::<f64>()
        .max(0.0)
}

/// Capacity of a binary-input channel with the maximizing `P(X=0)`.
pub fn capacity_binary_argmax(channel: &Channel) -> (f64, f64) {
    let (p, c) = maximize_unit_interval(|p| mutual_information(channel, InputDistribution(p)));
    (c, p)
}

/// Capacity of a binary-input channel in bits.
pub fn capacity_binary(channel: &Channel) -> f64 {
    capacity_binary_argmax(channel).0
}

/// Every scalar coefficient of one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientReport {
    pub eta_kl: f64,
    pub eta_tv: f64,
    pub doeblin_alpha: f64,
    pub alpha_max: f64,
    /// Nats.
    pub maximal_leakage: f64,
    /// Bits.
    pub capacity: f64,
}

impl CoefficientReport {
    /// Uses the closed forms for BISO channels and the scalar optimizers
    /// otherwise.
    pub fn of(channel: &Channel) -> Self {
        let (eta_kl, capacity) = match channel.canonicalize_biso() {
            Ok(biso) => (eta_kl_biso(&biso), capacity_biso(&biso)),
            Err(_) => (eta_kl_binary(channel), capacity_binary(channel)),
        };
        CoefficientReport {
            eta_kl,
            eta_tv: eta_tv(channel),
            doeblin_alpha: doeblin_alpha(channel),
            alpha_max: alpha_max(channel),
            maximal_leakage: maximal_leakage(channel),
            capacity,
        }
    }

    pub fn maximal_leakage_bits(&self) -> f64 {
        self.alpha_max.log2()
    }
}
