//! Partial orders between binary-input channels.
//!
//! Degradability is decided exactly by LP feasibility. Less-noisy and
//! more-capable are decided by scanning a scalar criterion over an interior
//! grid of `(0, 1)` and refining near the minimum.

pub mod less_noisy;
pub mod lp;

use std::fmt;

use crate::channel::{BisoChannel, Channel, DegradingMap, InputDistribution};
use crate::coefficients::mutual_information;
use crate::error::{Error, Result};
use crate::optimize::golden_section_min;

pub use less_noisy::{
    chi2_difference, chi2_difference_second_derivative, criterion_profile, general_less_noisy_criterion, is_less_noisy,
    is_less_noisy_binary, less_noisy_criterion_biso, z_less_noisy_margin,
};
pub use lp::{lp_feasibility, InfeasibilityCertificate, LpOutcome, VarBounds};

/// Default number of interior grid points for criterion scans.
pub const DEFAULT_GRID: usize = 999;
/// A criterion value below `-VERDICT_TOL` is a violation.
pub const VERDICT_TOL: f64 = 1e-9;
/// Largest entrywise error accepted when re-validating a degrading map.
pub const WITNESS_TOL: f64 = 1e-8;
/// Bracket width for locating sign changes of a criterion.
pub const CROSSING_TOL: f64 = 1e-8;

const MAX_REFINED_MINIMA: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Holds,
    Fails,
    /// The grid shows no violation but refinement between grid points
    /// does, so the answer depends on resolution.
    Undetermined,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Holds => "holds",
            Relation::Fails => "fails",
            Relation::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `Q = compose(P, map)`.
    Map(DegradingMap),
    Infeasible(InfeasibilityCertificate),
    /// Criterion value at the parameter where it is most negative.
    Point {
        parameter: f64,
        value: f64,
    },
    /// The two ratios compared by the dimension-3 less-noisy test.
    Ratios {
        first: f64,
        second: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub witness: Option<Witness>,
}

impl OrderVerdict {
    pub fn holds(&self) -> bool {
        self.relation == Relation::Holds
    }

    pub fn fails(&self) -> bool {
        self.relation == Relation::Fails
    }
}

/// Samples of a scalar criterion on an interior grid of `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionProfile {
    pub points: Vec<(f64, f64)>,
    /// Parameters where the criterion changes sign, located by bisection.
    pub crossings: Vec<f64>,
}

impl CriterionProfile {
    pub fn min(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .fold(None, |acc: Option<(f64, f64)>, p| match acc {
                Some(a) if a.1 <= p.1 => Some(a),
                _ => Some(p),
            })
    }
}

pub(crate) fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "grid_size",
            value: grid_size as f64,
        });
    }
    Ok(())
}

/// Evaluates `g` at `k / (grid_size + 1)` for `k = 1..=grid_size` and
/// locates sign changes between neighbours.
pub(crate) fn profile_of(g: &dyn Fn(f64) -> f64, grid_size: usize) -> CriterionProfile {
    let step = 1.0 / (grid_size + 1) as f64;
    let points: Vec<(f64, f64)> = (1..=grid_size)
        .map(|k| {
            let t = k as f64 * step;
            (t, g(t))
        })
        .collect();
    let mut crossings = Vec::new();
    for w in points.windows(2) {
        let ((mut lo, flo), (mut hi, fhi)) = (w[0], w[1]);
        if (flo < 0.0) == (fhi < 0.0) || flo.is_nan() || fhi.is_nan() {
            continue;
        }
        let left_negative = flo < 0.0;
        while hi - lo > CROSSING_TOL {
            let mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0) == left_negative {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        crossings.push(0.5 * (lo + hi));
    }
    CriterionProfile { points, crossings }
}

/// Turns a profile into a verdict, refining around the lowest local minima.
pub(crate) fn verdict_from_profile(g: &dyn Fn(f64) -> f64, profile: &CriterionProfile) -> OrderVerdict {
    let pts = &profile.points;
    if pts.iter().any(|p| p.1.is_nan()) {
        return OrderVerdict {
            relation: Relation::Undetermined,
            witness: None,
        };
    }
    let Some(grid_min) = profile.min() else {
        return OrderVerdict {
            relation: Relation::Undetermined,
            witness: None,
        };
    };
    let step = if pts.len() > 1 { pts[1].0 - pts[0].0 } else { pts[0].0 };

    let mut minima: Vec<usize> = (0..pts.len())
        .filter(|&k| {
            let left = if k > 0 { pts[k - 1].1 } else { f64::INFINITY };
            let right = pts.get(k + 1).map_or(f64::INFINITY, |p| p.1);
            let v = pts[k].1;
            v <= left && v <= right && (v < left || v < right)
        })
        .collect();
    minima.sort_by(|&a, &b| pts[a].1.total_cmp(&pts[b].1).then(a.cmp(&b)));
    minima.truncate(MAX_REFINED_MINIMA);

    let mut best = grid_min;
    for k in minima {
        let lo = pts[k].0 - step;
        let hi = pts[k].0 + step;
        let (t, v) = golden_section_min(g, lo.max(0.0), hi.min(1.0), 1e-10);
        if v < best.1 {
            best = (t, v);
        }
    }

    let witness = Some(Witness::Point {
        parameter: best.0,
        value: best.1,
    });
    if grid_min.1 < -VERDICT_TOL {
        OrderVerdict {
            relation: Relation::Fails,
            witness: Some(Witness::Point {
                parameter: grid_min.0,
                value: grid_min.1,
            }),
        }
    } else if best.1 < -VERDICT_TOL {
        OrderVerdict {
            relation: Relation::Undetermined,
            witness,
        }
    } else {
        OrderVerdict {
            relation: Relation::Holds,
            witness: None,
        }
    }
}

fn permutation_map(p: &Channel, q: &Channel) -> Option<DegradingMap> {
    if p.outputs() != q.outputs() {
        return None;
    }
    let n = p.outputs();
    let pc: Vec<(f64, f64)> = p.columns().collect();
    let qc: Vec<(f64, f64)> = q.columns().collect();
    let mut used = vec![false; n];
    let mut rows = vec![vec![0.0; n]; n];
    for (j, &(a, b)) in qc.iter().enumerate() {
        let i = (0..n).find(|&i| !used[i] && (pc[i].0 - a).abs() <= 1e-12 && (pc[i].1 - b).abs() <= 1e-12)?;
        used[i] = true;
        rows[i][j] = 1.0;
    }
    DegradingMap::new(rows).ok()
}

/// Decides `P ⪰_deg Q`, i.e. whether `Q = compose(P, D)` for some
/// row-stochastic `D`.
pub fn is_degraded(p: &Channel, q: &Channel) -> Result<OrderVerdict> {
    if let Some(map) = permutation_map(p, q) {
        return Ok(OrderVerdict {
            relation: Relation::Holds,
            witness: Some(Witness::Map(map)),
        });
    }
    let m = p.outputs();
    let n = q.outputs();
    let var = |y: usize, y2: usize| y * n + y2;
    let mut a = Vec::with_capacity(m + 2 * n);
    let mut b = Vec::with_capacity(m + 2 * n);
    for y in 0..m {
        let mut row = vec![0.0; m * n];
        for y2 in 0..n {
            row[var(y, y2)] = 1.0;
        }
        a.push(row);
        b.push(1.0);
    }
    for x in 0..2 {
        for y2 in 0..n {
            let mut row = vec![0.0; m * n];
            for y in 0..m {
                row[var(y, y2)] = p.row(x)[y];
            }
            a.push(row);
            b.push(q.row(x)[y2]);
        }
    }
    let bounds = vec![VarBounds::non_negative(); m * n];
    match lp_feasibility(&a, &b, &bounds)? {
        LpOutcome::Feasible { x, .. } => {
            let rows: Vec<Vec<f64>> = x.chunks(n).map(<[f64]>::to_vec).collect();
            let map = DegradingMap::new(rows)?;
            let err = p.compose(&map)?.max_abs_diff(q).ok_or(Error::DimensionMismatch {
                expected: n,
                found: map.outputs(),
            })?;
            if err > WITNESS_TOL {
                return Err(Error::NumericalInstability(format!(
                    "degrading map reproduces target only to {err:e}"
                )));
            }
            Ok(OrderVerdict {
                relation: Relation::Holds,
                witness: Some(Witness::Map(map)),
            })
        }
        LpOutcome::Infeasible(cert) => Ok(OrderVerdict {
            relation: Relation::Fails,
            witness: Some(Witness::Infeasible(cert)),
        }),
    }
}

/// Probability of guessing `X ~ Ber(x)` from the output of a BISO channel,
/// where `x = P(X = 0)`.
pub fn guessing_probability(channel: &BisoChannel, x: f64) -> f64 {
    channel
        .pairs()
        .iter()
        .map(|&(p, pm)| (x * p).max((1.0 - x) * pm) + (x * pm).max((1.0 - x) * p))
        .sum()
}

/// Guessing probability `Σ_y max_x P(x) P(y|x)` for any binary-input channel.
pub fn guessing_probability_channel(channel: &Channel, x: f64) -> f64 {
    channel.columns().map(|(a, b)| (x * a).max((1.0 - x) * b)).sum()
}

/// `I_P(x) - I_Q(x)` on the interior grid.
pub fn mi_difference_profile(p: &Channel, q: &Channel, grid_size: usize) -> Result<CriterionProfile> {
    check_grid(grid_size)?;
    let g = mi_difference(p, q);
    Ok(profile_of(&g, grid_size))
}

fn mi_difference<'a>(p: &'a Channel, q: &'a Channel) -> impl Fn(f64) -> f64 + 'a {
    move |x: f64| {
        let input = InputDistribution(x.clamp(0.0, 1.0));
        mutual_information(p, input) - mutual_information(q, input)
    }
}

/// Decides `P ⪰_mc Q` by scanning `I_P(x) - I_Q(x)` over the input law.
pub fn is_more_capable(p: &Channel, q: &Channel, grid_size: usize) -> Result<OrderVerdict> {
    check_grid(grid_size)?;
    let g = mi_difference(p, q);
    let profile = profile_of(&g, grid_size);
    Ok(verdict_from_profile(&g, &profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn alpha_pair() -> (BisoChannel, BisoChannel) {
        (
            BisoChannel::new(vec![(0.05, 0.345), (0.19, 0.415)]).unwrap(),
            BisoChannel::new(vec![(0.221, 0.515), (0.019, 0.245)]).unwrap(),
        )
    }

    #[test]
    fn guessing_probabilities_of_alpha_pair() {
        let (f, g) = alpha_pair();
        assert_abs_diff_eq!(guessing_probability(&f, 0.12), 0.88, epsilon = 5e-6);
        assert_abs_diff_eq!(guessing_probability(&g, 0.12), 0.89268, epsilon = 5e-6);
        // 0.775 to three digits
        assert_abs_diff_eq!(guessing_probability(&f, 0.29), 0.77455, epsilon = 1e-12);
        assert_abs_diff_eq!(guessing_probability(&g, 0.29), 0.76756, epsilon = 5e-6);
        assert_abs_diff_eq!(guessing_probability(&f, 0.0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pair_and_column_guessing_forms_agree() {
        let (f, _) = alpha_pair();
        for x in [0.0, 0.1, 0.37, 0.5, 0.93] {
            assert_abs_diff_eq!(
                guessing_probability(&f, x),
                guessing_probability_channel(&f.to_channel(), x),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn alpha_pair_not_degradable_either_way() {
        let (f, g) = alpha_pair();
        let (fc, gc) = (f.to_channel(), g.to_channel());
        assert!(is_degraded(&fc, &gc).unwrap().fails());
        assert!(is_degraded(&gc, &fc).unwrap().fails());
    }

    #[test]
    fn bec_dominates_by_doeblin() {
        let (f, _) = alpha_pair();
        let v = is_degraded(&Channel::bec(0.48).unwrap(), &f.to_channel()).unwrap();
        assert!(v.holds());
    }

    #[test]
    fn self_degradation_is_a_permutation() {
        let c = Channel::new(vec![0.2, 0.2, 0.6], vec![0.5, 0.2, 0.3]).unwrap();
        let v = is_degraded(&c, &c).unwrap();
        match v.witness {
            Some(Witness::Map(m)) => assert_eq!(m, DegradingMap::identity(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn noisier_bsc_is_degraded() {
        let v = is_degraded(&Channel::bsc(0.1).unwrap(), &Channel::bsc(0.2).unwrap()).unwrap();
        assert!(v.holds());
        let v = is_degraded(&Channel::bsc(0.2).unwrap(), &Channel::bsc(0.1).unwrap()).unwrap();
        assert!(v.fails());
    }

    #[test]
    fn more_capable_bsc_examples() {
        let a = Channel::bsc(0.4).unwrap();
        let b = Channel::bsc(0.1).unwrap();
        assert!(is_more_capable(&a, &b, DEFAULT_GRID).unwrap().fails());
        assert!(is_more_capable(&b, &a, DEFAULT_GRID).unwrap().holds());
        assert!(is_more_capable(&a, &a, DEFAULT_GRID).unwrap().holds());
    }

    #[test]
    fn failing_witness_reproduces() {
        let a = Channel::bsc(0.4).unwrap();
        let b = Channel::bsc(0.1).unwrap();
        let v = is_more_capable(&a, &b, 99).unwrap();
        let Some(Witness::Point { parameter, value }) = v.witness else {
            panic!()
        };
        let again =
            mutual_information(&a, InputDistribution(parameter)) - mutual_information(&b, InputDistribution(parameter));
        assert_eq!(again, value);
        assert!(value < -VERDICT_TOL);
    }

    #[test]
    fn grid_must_have_two_points() {
        let a = Channel::bsc(0.4).unwrap();
        assert!(is_more_capable(&a, &a, 1).is_err());
    }

    #[test]
    fn crossing_is_located() {
        let g = |t: f64| t - 0.3;
        let prof = profile_of(&g, 9);
        assert_eq!(prof.crossings.len(), 1);
        assert!((prof.crossings[0] - 0.3).abs() < CROSSING_TOL);
    }

    #[test]
    fn dip_between_grid_points_is_undetermined() {
        // negative only on a narrow window missed by a 9-point grid
        let g = |t: f64| {
            if (t - 0.15).abs() < 0.01 {
                -1e-3 * (1.0 - ((t - 0.15) / 0.01).powi(2))
            } else {
                0.0
            }
        };
        let g2 = |t: f64| g(t) + (t - 0.15).powi(2) * 1e-6;
        let prof = profile_of(&g2, 9);
        let v = verdict_from_profile(&g2, &prof);
        assert_eq!(v.relation, Relation::Undetermined);
    }
}
