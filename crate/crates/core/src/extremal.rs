//! BSC and BEC representatives of coefficient classes, explicit degrading
//! maps, dimension-3 comparisons and reverse coefficients.

use std::fmt;

use crate::channel::{BisoChannel, Channel, DegradingMap, PAIRING_TOL};
use crate::coefficients::{capacity_biso, doeblin_alpha, eta_kl_biso, eta_tv, h2, h2_inv};
use crate::error::{Error, Result};
use crate::orders::{is_degraded, is_less_noisy, is_more_capable, OrderVerdict, Relation, Witness};

/// Two channels belong to the same class if their constants agree to this.
pub const CLASS_TOL: f64 = 1e-9;
/// Largest composition error accepted for a dimension-3 map.
pub const DIM3_TOL: f64 = 1e-10;
/// Bisection width in the BSC crossover for reverse-coefficient searches.
pub const REVERSE_SEARCH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Capacity,
    EtaKl,
    Alpha,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Capacity => "capacity",
            ClassKind::EtaKl => "eta",
            ClassKind::Alpha => "alpha",
        })
    }
}

/// A class of channels sharing one coefficient value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelClass {
    pub kind: ClassKind,
    pub value: f64,
}

impl ChannelClass {
    pub fn new(kind: ClassKind, value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutOfRange { value, range: "[0, 1]" });
        }
        Ok(ChannelClass { kind, value })
    }

    /// BSC crossover in `[0, 1/2]` with the class constant.
    pub fn bsc_param(&self) -> Result<f64> {
        Ok(match self.kind {
            ClassKind::EtaKl => 0.5 * (1.0 - self.value.sqrt()),
            ClassKind::Alpha => 0.5 * self.value,
            ClassKind::Capacity => h2_inv(1.0 - self.value)?,
        })
    }

    /// BEC erasure probability with the class constant.
    pub fn bec_param(&self) -> f64 {
        match self.kind {
            ClassKind::EtaKl | ClassKind::Capacity => 1.0 - self.value,
            ClassKind::Alpha => self.value,
        }
    }
}

/// The BSC and BEC in the class of a given channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalMatch {
    pub class: ChannelClass,
    pub bsc_param: f64,
    pub bec_param: f64,
}

impl ExtremalMatch {
    pub fn bsc(&self) -> BisoChannel {
        BisoChannel::new(vec![(1.0 - self.bsc_param, self.bsc_param)]).expect("crossover in range")
    }

    pub fn bec(&self) -> BisoChannel {
        BisoChannel::bec(self.bec_param).expect("erasure probability in range")
    }
}

fn clamp_unit(value: f64) -> Result<f64> {
    if !(-CLASS_TOL..=1.0 + CLASS_TOL).contains(&value) {
        return Err(Error::OutOfRange { value, range: "[0, 1]" });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Class constant of `channel`. The η and capacity classes use BISO closed
/// forms and fail with [`Error::NotBiso`] for other channels.
pub fn class_of(channel: &Channel, kind: ClassKind) -> Result<ChannelClass> {
    let value = match kind {
        ClassKind::Alpha => doeblin_alpha(channel),
        ClassKind::EtaKl => eta_kl_biso(&channel.canonicalize_biso()?),
        ClassKind::Capacity => capacity_biso(&channel.canonicalize_biso()?),
    };
    ChannelClass::new(kind, clamp_unit(value)?)
}

pub fn match_extremal(channel: &Channel, kind: ClassKind) -> Result<ExtremalMatch> {
    let class = class_of(channel, kind)?;
    Ok(ExtremalMatch {
        class,
        bsc_param: class.bsc_param()?,
        bec_param: class.bec_param(),
    })
}

/// Indicator map sending a BISO channel with Doeblin coefficient α to
/// BSC(α/2). Rows follow the labeled output order `-l..=-1, 1..=l`; row `y`
/// is `(a_y, 1 - a_y)` with `a_y = 1` iff `p_y ≥ p_{-y}` for `y > 0` and
/// `a_{-y} = 1 - a_y`.
///
/// The composed channel has first row `(Σ_y max, Σ_y min)`.
pub fn theorem2_degrading_map(channel: &BisoChannel) -> DegradingMap {
    let l = channel.len();
    let mut rows = vec![vec![0.0; 2]; 2 * l];
    for (k, &(p, pm)) in channel.pairs().iter().enumerate() {
        let a = if p >= pm { 1.0 } else { 0.0 };
        rows[l + k] = vec![a, 1.0 - a];
        rows[l - 1 - k] = vec![1.0 - a, a];
    }
    DegradingMap::new(rows).expect("indicator rows are stochastic")
}

/// The binary-output channel `D(r, s)` dominated by a general binary-input
/// channel, with the indicator map producing it.
///
/// `a_y = 𝕀(s_y ≤ r_y)` where `r_y = P(y|0)`, `s_y = P(y|1)`; then
/// `s = Σ s_y a_y`, `r = Σ (1 - a_y) r_y` and `D(r, s) = [[1-r, r], [s, 1-s]]`.
pub fn general_binary_dominated(channel: &Channel) -> Result<(DegradingMap, Channel)> {
    let mut rows = Vec::with_capacity(channel.outputs());
    let (mut r, mut s) = (0.0, 0.0);
    for (ry, sy) in channel.columns() {
        let a = if sy <= ry { 1.0 } else { 0.0 };
        s += sy * a;
        r += (1.0 - a) * ry;
        rows.push(vec![a, 1.0 - a]);
    }
    let map = DegradingMap::new(rows)?;
    Ok((map, Channel::binary(r.min(1.0), s.min(1.0))?))
}

/// A BISO channel with at most three outputs `-1, 0, 1`, where
/// `p0 = P(0|0)`, `p1 = P(1|0)` and `pm1 = P(-1|0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dim3 {
    pub p0: f64,
    pub p1: f64,
    pub pm1: f64,
}

impl Dim3 {
    pub fn new(p0: f64, p1: f64, pm1: f64) -> Result<Self> {
        BisoChannel::new(vec![(p0 / 2.0, p0 / 2.0), (p1, pm1)])?;
        Ok(Dim3 { p0, p1, pm1 })
    }

    /// Reads a BISO channel with one pair, or two pairs of which one is
    /// symmetric (the split middle output).
    pub fn from_biso(channel: &BisoChannel) -> Result<Self> {
        let pairs = channel.pairs();
        let symmetric = |&(a, b): &(f64, f64)| (a - b).abs() <= PAIRING_TOL;
        match pairs {
            [(p1, pm1)] => Ok(Dim3 {
                p0: 0.0,
                p1: *p1,
                pm1: *pm1,
            }),
            [first, second] if symmetric(first) || symmetric(second) => {
                let (zero, other) = if symmetric(first) {
                    (first, second)
                } else {
                    (second, first)
                };
                Ok(Dim3 {
                    p0: zero.0 + zero.1,
                    p1: other.0,
                    pm1: other.1,
                })
            }
            _ => Err(Error::DimensionTooLarge(2 * pairs.len())),
        }
    }

    /// Outputs in the order `-1, 0, 1`.
    pub fn to_channel(&self) -> Channel {
        Channel::new(vec![self.pm1, self.p0, self.p1], vec![self.p1, self.p0, self.pm1])
            .and_then(|c| c.with_labels(vec![-1, 0, 1]))
            .expect("valid dimension-3 channel")
    }

    pub fn to_biso(&self) -> BisoChannel {
        BisoChannel::new(vec![(self.p0 / 2.0, self.p0 / 2.0), (self.p1, self.pm1)]).expect("valid dimension-3 channel")
    }

    pub fn eta(&self) -> f64 {
        let s = self.p1 + self.pm1;
        if s == 0.0 {
            0.0
        } else {
            (self.p1 - self.pm1).powi(2) / s
        }
    }

    pub fn alpha(&self) -> f64 {
        self.p0 + 2.0 * self.p1.min(self.pm1)
    }

    /// `p1 p_{-1} / (1 - p0)²`, or `1/4` for the constant channel.
    pub fn ratio(&self) -> f64 {
        let s = 1.0 - self.p0;
        if s <= 0.0 {
            0.25
        } else {
            self.p1 * self.pm1 / (s * s)
        }
    }
}

/// Verdicts of a dimension-3 less-noisy comparison in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim3Comparison {
    /// `F ⪰_ln G`.
    pub first_over_second: OrderVerdict,
    /// `G ⪰_ln F`.
    pub second_over_first: OrderVerdict,
}

/// Compares two dimension-3 BISO channels with equal η_KL. Within the class
/// the channel with the smaller ratio `p1 p_{-1} / (1 - p0)²` is less noisy;
/// the BEC, with ratio 0, is the top element.
pub fn dim3_less_noisy_compare(f: &BisoChannel, g: &BisoChannel) -> Result<Dim3Comparison> {
    let (df, dg) = (Dim3::from_biso(f)?, Dim3::from_biso(g)?);
    let (ef, eg) = (eta_kl_biso(f), eta_kl_biso(g));
    if (ef - eg).abs() > CLASS_TOL {
        return Err(Error::ClassMismatch { first: ef, second: eg });
    }
    let (rf, rg) = (df.ratio(), dg.ratio());
    let witness = Some(Witness::Ratios { first: rf, second: rg });
    let verdict = |holds: bool| OrderVerdict {
        relation: if holds { Relation::Holds } else { Relation::Fails },
        witness: witness.clone(),
    };
    Ok(Dim3Comparison {
        first_over_second: verdict(rf <= rg + 1e-12),
        second_over_first: verdict(rg <= rf + 1e-12),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominant {
    First,
    Second,
}

/// `dominated = compose(dominant, map)` with both channels in the labeled
/// order `-1, 0, 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim3Degradation {
    pub dominant: Dominant,
    pub map: DegradingMap,
    pub composition_error: f64,
}

fn outer_map(same_orientation: bool, middle: [f64; 3]) -> Vec<Vec<f64>> {
    let (first, last) = if same_orientation {
        (vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0])
    } else {
        (vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0])
    };
    vec![first, middle.to_vec(), last]
}

/// Candidate map from `q` (more erasure) to `p`.
fn dim3_candidate(p: &Dim3, q: &Dim3, same_orientation: bool) -> Vec<Vec<f64>> {
    if q.p0 == 0.0 {
        return outer_map(same_orientation, [0.0, 1.0, 0.0]);
    }
    let target = if same_orientation { q.p1 } else { q.pm1 };
    let c = (p.p1 - target) / q.p0;
    outer_map(same_orientation, [c, p.p0 / q.p0, c])
}

/// Degrading map between two dimension-3 BISO channels with equal Doeblin
/// coefficient. The channel with the larger middle mass dominates; the outer
/// outputs are kept when `p1 - p_{-1}` and `q1 - q_{-1}` agree in sign and
/// swapped otherwise.
pub fn dim3_degrading_map(f: &BisoChannel, g: &BisoChannel) -> Result<Dim3Degradation> {
    let (df, dg) = (Dim3::from_biso(f)?, Dim3::from_biso(g)?);
    let (af, ag) = (df.alpha(), dg.alpha());
    if (af - ag).abs() > CLASS_TOL {
        return Err(Error::ClassMismatch { first: af, second: ag });
    }
    let (dominant, p, q) = if df.p0 <= dg.p0 {
        (Dominant::Second, df, dg)
    } else {
        (Dominant::First, dg, df)
    };
    let (sp, sq) = (p.p1 - p.pm1, q.p1 - q.pm1);
    let preferred = sp * sq >= 0.0;
    let (pc, qc) = (p.to_channel(), q.to_channel());
    let mut best: Option<Dim3Degradation> = None;
    for same in [preferred, !preferred] {
        let Ok(map) = DegradingMap::new(dim3_candidate(&p, &q, same)) else {
            continue;
        };
        let err = qc.compose(&map)?.max_abs_diff(&pc).unwrap_or(f64::INFINITY);
        if best.as_ref().is_none_or(|b| err < b.composition_error) {
            best = Some(Dim3Degradation {
                dominant,
                map,
                composition_error: err,
            });
        }
        if err <= DIM3_TOL {
            break;
        }
    }
    match best {
        Some(b) if b.composition_error <= DIM3_TOL => Ok(b),
        Some(b) => Err(Error::NumericalInstability(format!(
            "dimension-3 map reproduces target only to {:e}",
            b.composition_error
        ))),
        None => Err(Error::NumericalInstability("no stochastic dimension-3 map".into())),
    }
}

/// Reverse coefficients `(α̌, β̌, γ̌)`, the smallest BSC parameters, in the
/// scales `2p`, `4p(1-p)` and `h2(p)`, that a channel still dominates under
/// degradability, less-noisy and more-capable respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReverseCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// For BISO channels: `α̌ = 1 - η_TV`, `β̌ = 1 - η_KL`, `γ̌ = 1 - C`.
pub fn reverse_coefficients(channel: &BisoChannel) -> ReverseCoefficients {
    let c = channel.to_channel();
    ReverseCoefficients {
        alpha: 1.0 - eta_tv(&c),
        beta: 1.0 - eta_kl_biso(channel),
        gamma: 1.0 - capacity_biso(channel),
    }
}

fn bsc_channel(p: f64) -> Result<Channel> {
    Channel::bsc(p.clamp(0.0, 1.0))
}

/// Smallest crossover `p ∈ [0, 1/2]` with `holds(p)`, assuming monotonicity.
fn bisect_smallest(holds: impl Fn(f64) -> Result<bool>) -> Result<f64> {
    if holds(0.0)? {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    while hi - lo > REVERSE_SEARCH_TOL {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `2p` for the smallest `p` with `P ⪰_deg BSC(p)`, found by bisection.
pub fn search_reverse_alpha(channel: &BisoChannel) -> Result<f64> {
    let c = channel.to_channel();
    let p = bisect_smallest(|p| Ok(is_degraded(&c, &bsc_channel(p)?)?.holds()))?;
    Ok(2.0 * p)
}

/// `4p(1-p)` for the smallest `p` with `P ⪰_ln BSC(p)`, found by bisection.
/// Undetermined verdicts count as not holding.
pub fn search_reverse_beta(channel: &BisoChannel, grid_size: usize) -> Result<f64> {
    let p = bisect_smallest(|p| Ok(is_less_noisy(channel, &BisoChannel::bsc(p)?, grid_size)?.holds()))?;
    Ok(4.0 * p * (1.0 - p))
}

/// `h2(p)` for the smallest `p` on the grid `k / (2 (points - 1))` with
/// `P ⪰_mc BSC(p)`.
pub fn search_reverse_gamma(channel: &BisoChannel, points: usize, grid_size: usize) -> Result<f64> {
    if points < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "points",
            value: points as f64,
        });
    }
    let c = channel.to_channel();
    // more-capable against BSC(p) is monotone in p, so bisect over indices
    let holds = |k: usize| -> Result<bool> {
        let p = 0.5 * k as f64 / (points - 1) as f64;
        Ok(is_more_capable(&c, &bsc_channel(p)?, grid_size)?.holds())
    };
    let (mut lo, mut hi) = (0usize, points - 1);
    if holds(lo)? {
        return Ok(0.0);
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(h2(0.5 * hi as f64 / (points - 1) as f64))
}
