//! Less-noisy criterion.
//!
//! `W ⪰_ln V` iff `F(p) = χ²(W∘Ber(p) ‖ W∘Ber(q)) - χ²(V∘Ber(p) ‖ V∘Ber(q))`
//! is convex in `p` for every `q`. Both χ² terms are `(p - q)²` times a
//! factor depending on `q` alone, so `F''(p)/2` is independent of `p` and
//! the criterion is a function of `q` only.

use super::{check_grid, profile_of, verdict_from_profile, CriterionProfile, OrderVerdict};
use crate::channel::{BisoChannel, Channel};
use crate::error::{Error, Result};

/// Step of the central finite difference in `p`.
pub const FD_STEP: f64 = 1e-4;

/// Values of `p` at which the finite-difference criterion is evaluated.
const FD_P_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn biso_term(channel: &BisoChannel, q: f64) -> f64 {
    channel
        .pairs()
        .iter()
        .map(|&(w, wm)| {
            let s = w + wm;
            if s == 0.0 {
                return 0.0;
            }
            let delta = w / s;
            let d = 2.0 * delta - 1.0;
            let m = q * (1.0 - delta) + (1.0 - q) * delta;
            s * d * d / (m * (1.0 - m))
        })
        .sum()
}

/// `F''(p)/2` for BISO channels:
/// `Σ_y s_y (2δ_y - 1)² / (q∗δ_y (1 - q∗δ_y))` for `W` minus the same for
/// `V`, with `s_y = w_y + w_{-y}` and `δ_y = w_y / s_y`.
///
/// There is no `p` argument: the second derivative does not depend on it.
pub fn less_noisy_criterion_biso(w: &BisoChannel, v: &BisoChannel, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::DegenerateParameter(q));
    }
    Ok(biso_term(w, q) - biso_term(v, q))
}

/// The BISO criterion sampled on `k / (grid_size + 1)`.
pub fn criterion_profile(w: &BisoChannel, v: &BisoChannel, grid_size: usize) -> Result<CriterionProfile> {
    check_grid(grid_size)?;
    let g = |q: f64| biso_term(w, q) - biso_term(v, q);
    Ok(profile_of(&g, grid_size))
}

/// Decides `W ⪰_ln V` for BISO channels.
pub fn is_less_noisy(w: &BisoChannel, v: &BisoChannel, grid_size: usize) -> Result<OrderVerdict> {
    check_grid(grid_size)?;
    let g = |q: f64| {
        let q = q.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
        biso_term(w, q) - biso_term(v, q)
    };
    let profile = profile_of(&g, grid_size);
    Ok(verdict_from_profile(&g, &profile))
}

fn chi2_of_inputs(channel: &Channel, p: f64, q: f64) -> f64 {
    channel
        .columns()
        .map(|(a, b)| {
            let num = p * a + (1.0 - p) * b;
            let den = q * a + (1.0 - q) * b;
            if den == 0.0 {
                0.0
            } else {
                (num - den) * (num - den) / den
            }
        })
        .sum()
}

/// `χ²(W∘Ber(p) ‖ W∘Ber(q)) - χ²(V∘Ber(p) ‖ V∘Ber(q))`, with `p = P(X = 0)`.
pub fn chi2_difference(w: &Channel, v: &Channel, p: f64, q: f64) -> f64 {
    chi2_of_inputs(w, p, q) - chi2_of_inputs(v, p, q)
}

/// Second derivative of [`chi2_difference`] in `p` by central differences
/// with step [`FD_STEP`].
pub fn chi2_difference_second_derivative(w: &Channel, v: &Channel, p: f64, q: f64) -> f64 {
    let h = FD_STEP;
    (chi2_difference(w, v, p + h, q) - 2.0 * chi2_difference(w, v, p, q) + chi2_difference(w, v, p - h, q)) / (h * h)
}

fn general_term(channel: &Channel, q: f64) -> f64 {
    channel
        .columns()
        .map(|(a, b)| {
            let den = q * a + (1.0 - q) * b;
            if den == 0.0 {
                0.0
            } else {
                (a - b) * (a - b) / den
            }
        })
        .sum()
}

/// Closed form of `F''(p)/2` for general binary-input channels:
/// `Σ_y (a_y - b_y)² / (q a_y + (1 - q) b_y)` for `W` minus the same for `V`.
pub fn general_less_noisy_criterion(w: &Channel, v: &Channel, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::DegenerateParameter(q));
    }
    Ok(general_term(w, q) - general_term(v, q))
}

/// Decides `W ⪰_ln V` for general binary-input channels from finite
/// differences over a `(p, q)` grid. At each `q` the smallest half second
/// derivative over the `p`-grid is used.
pub fn is_less_noisy_binary(w: &Channel, v: &Channel, grid_size: usize) -> Result<OrderVerdict> {
    check_grid(grid_size)?;
    let g = |q: f64| {
        FD_P_GRID
            .iter()
            .map(|&p| 0.5 * chi2_difference_second_derivative(w, v, p, q))
            .fold(f64::INFINITY, f64::min)
    };
    let profile = profile_of(&g, grid_size);
    Ok(verdict_from_profile(&g, &profile))
}

/// `RHS - LHS` of the inequality `Z(1 - η) ⪰_ln BSC((1-√η)/2)` would
/// require at input parameter `q`:
/// `(1-q)(q + (1-q)(1-η)) ≤ q(1-q) + (1-2q)²(1-η)/4`.
/// Negative values are violations.
pub fn z_less_noisy_margin(eta: f64, q: f64) -> f64 {
    let lhs = (1.0 - q) * (q + (1.0 - q) * (1.0 - eta));
    let rhs = q * (1.0 - q) + (1.0 - 2.0 * q).powi(2) * (1.0 - eta) / 4.0;
    rhs - lhs
}
