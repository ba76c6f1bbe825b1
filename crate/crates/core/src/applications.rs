//! Wiretap secrecy capacities, output f-divergence bounds from maximal
//! leakage, and bounds on the F_I curve.

use std::fmt;

use crate::channel::{BisoChannel, Channel};
use crate::coefficients::{binary_convolution, capacity_biso, eta_kl_binary, eta_kl_biso, h2, h2_inv};
use crate::divergence::FDivergenceGenerator;
use crate::error::{Error, Result};

/// Secrecy capacity with main channel `BEC(1 - η)` and eavesdropper `W`:
/// `η_KL(W) - C(W)`.
pub fn secrecy_capacity_vs_bec(w: &BisoChannel) -> f64 {
    eta_kl_biso(w) - capacity_biso(w)
}

/// Secrecy capacity with main channel `W` and eavesdropper
/// `BSC((1 - √η)/2)`: `C(W) - 1 + h2((1 - √η)/2)`.
pub fn secrecy_capacity_vs_bsc(w: &BisoChannel) -> f64 {
    let p = 0.5 * (1.0 - eta_kl_biso(w).sqrt());
    capacity_biso(w) - 1.0 + h2(p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Finite(f64),
    Unbounded,
}

impl Bound {
    pub fn value(self) -> Option<f64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Unbounded => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

/// Bounds on `D_f(P_{Y|X=0} ‖ P_{Y|X=1})` over binary channels with a given
/// maximal leakage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDivergenceBounds {
    pub lower: Bound,
    pub upper: Bound,
}

impl FDivergenceBounds {
    /// Upper bound, or [`Error::InfiniteF0`] if it is infinite.
    pub fn upper_strict(&self) -> Result<f64> {
        self.upper.value().ok_or(Error::InfiniteF0)
    }
}

fn finite(v: f64) -> Bound {
    if v.is_finite() {
        Bound::Finite(v)
    } else {
        Bound::Unbounded
    }
}

/// Bounds from the leakage `L` in nats, with `e = e^L ∈ (1, 2)`.
///
/// The lower bound is the divergence between the rows of `BSC(1 - e/2)`:
/// `(e/2) f((2-e)/e) + (1 - e/2) f(e/(2-e))`. The upper bound is the
/// divergence between the rows of `BEC(2 - e)`, which degrades to every
/// channel of that leakage: `(e - 1)(f(0) + f'(∞))`.
pub fn f_divergence_output_bounds(generator: &FDivergenceGenerator, leakage: f64) -> Result<FDivergenceBounds> {
    let e = leakage.exp();
    if !(e > 1.0 && e < 2.0) {
        return Err(Error::LeakageOutOfRange(leakage));
    }
    let lower = 0.5 * e * generator.eval((2.0 - e) / e) + (1.0 - 0.5 * e) * generator.eval(e / (2.0 - e));
    let upper = match (generator.f_at_zero(), generator.slope_at_infinity()) {
        (Some(f0), Some(slope)) => finite((e - 1.0) * (f0 + slope)),
        _ => Bound::Unbounded,
    };
    Ok(FDivergenceBounds {
        lower: finite(lower),
        upper,
    })
}

/// Bounds on the F_I curve at input-information budget `t` (bits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FICurveBounds {
    pub t: f64,
    pub lower: f64,
    pub upper: f64,
}

fn check_budget(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::ParameterOutOfRange { name: "t", value: t });
    }
    Ok(())
}

/// `lower = 1 - h2(p_η ∗ h2⁻¹(max(1 - t, 0)))` with `p_η = (1 - √η)/2`,
/// and `upper = η min(t, 1)`.
pub fn fi_curve_bounds(w: &BisoChannel, t: f64) -> Result<FICurveBounds> {
    check_budget(t)?;
    let eta = eta_kl_biso(w);
    let p_eta = 0.5 * (1.0 - eta.sqrt());
    let lower = 1.0 - h2(binary_convolution(p_eta, h2_inv((1.0 - t).max(0.0))?));
    Ok(FICurveBounds {
        t,
        lower,
        upper: eta * t.min(1.0),
    })
}

/// `η_KL min(t, 1)`, valid for any binary-input channel.
pub fn fi_curve_upper(channel: &Channel, t: f64) -> Result<f64> {
    check_budget(t)?;
    Ok(eta_kl_binary(channel) * t.min(1.0))
}
