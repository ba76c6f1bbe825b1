//! Csiszár f-divergences `D_f(P‖Q) = Σ_x Q(x) f(P(x)/Q(x))`.
//!
//! Boundary atoms follow the usual limits: `0·f(0/0) = 0`, an atom with
//! `P(x) = 0 < Q(x)` contributes `Q(x) f(0)`, and an atom with
//! `Q(x) = 0 < P(x)` contributes `P(x) f'(∞)` where `f'(∞) = lim f(t)/t`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type Generator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A convex generator `f` with `f(1) = 0` plus its boundary behaviour.
#[derive(Clone)]
pub struct FDivergenceGenerator {
    name: String,
    f: Generator,
    f_at_zero: Option<f64>,
    slope_at_infinity: Option<f64>,
}

impl fmt::Debug for FDivergenceGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FDivergenceGenerator")
            .field("name", &self.name)
            .field("f_at_zero", &self.f_at_zero)
            .field("slope_at_infinity", &self.slope_at_infinity)
            .finish()
    }
}

impl FDivergenceGenerator {
    /// `f_at_zero` and `slope_at_infinity` are `None` when infinite.
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_at_zero: Option<f64>,
        slope_at_infinity: Option<f64>,
    ) -> Result<Self> {
        let at_one = f(1.0);
        if at_one.abs() > 1e-12 {
            return Err(Error::OutOfRange {
                value: at_one,
                range: "f(1) = 0",
            });
        }
        Ok(FDivergenceGenerator {
            name: name.into(),
            f: Arc::new(f),
            f_at_zero,
            slope_at_infinity,
        })
    }

    /// `f(t) = |t - 1| / 2`, giving total variation.
    pub fn total_variation() -> Self {
        Self::new("tv", |t| 0.5 * (t - 1.0).abs(), Some(0.5), Some(0.5)).unwrap()
    }

    /// `f(t) = (t - 1)²`.
    pub fn chi_squared() -> Self {
        Self::new("chi2", |t| (t - 1.0) * (t - 1.0), Some(1.0), None).unwrap()
    }

    /// `f(t) = t log₂ t`, KL divergence in bits.
    pub fn kl() -> Self {
        Self::new("kl", |t| if t == 0.0 { 0.0 } else { t * t.log2() }, Some(0.0), None).unwrap()
    }

    /// `f(t) = (√t - 1)²`, squared Hellinger distance (unnormalized).
    pub fn squared_hellinger() -> Self {
        Self::new("hellinger2", |t| (t.sqrt() - 1.0).powi(2), Some(1.0), Some(1.0)).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn f_at_zero(&self) -> Option<f64> {
        self.f_at_zero
    }

    pub fn slope_at_infinity(&self) -> Option<f64> {
        self.slope_at_infinity
    }
}

/// `D_f(P‖Q)` for probability vectors of equal length.
pub fn f_divergence(generator: &FDivergenceGenerator, p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    let mut total = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        total += match (pi > 0.0, qi > 0.0) {
            (false, false) => 0.0,
            (true, true) => qi * generator.eval(pi / qi),
            (false, true) => qi * generator.f_at_zero.ok_or(Error::InfiniteDivergence)?,
            (true, false) => pi * generator.slope_at_infinity.ok_or(Error::InfiniteDivergence)?,
        };
    }
    Ok(total)
}
