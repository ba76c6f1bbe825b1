//! Phase-1 simplex for feasibility of `A x = b, l ≤ x ≤ u`.
//!
//! Dense tableau, Bland's anti-cycling rule. The systems solved here have at
//! most a few hundred variables, so no sparse machinery is used.

use crate::error::{Error, Result};

/// Phase-1 optimum above which the system is declared infeasible.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Largest equality residual accepted for a returned solution.
pub const RESIDUAL_TOL: f64 = 1e-8;

const PIVOT_EPS: f64 = 1e-12;
const COST_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarBounds {
    pub lower: f64,
    /// `None` for no upper bound.
    pub upper: Option<f64>,
}

impl VarBounds {
    pub fn non_negative() -> Self {
        VarBounds {
            lower: 0.0,
            upper: None,
        }
    }

    pub fn between(lower: f64, upper: f64) -> Self {
        VarBounds {
            lower,
            upper: Some(upper),
        }
    }
}

/// Farkas-type proof of infeasibility for the shifted system
/// `A x' = b - A l, x' + s = u - l, x', s ≥ 0`.
///
/// Multipliers satisfy `Σ_i y_i A_ij + z_j ≤ 0` for every variable `j`,
/// `z_j ≤ 0`, and `Σ_i y_i (b - A l)_i + Σ_j z_j (u_j - l_j) > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityCertificate {
    pub phase_one_optimum: f64,
    /// One multiplier per equality row.
    pub eq_multipliers: Vec<f64>,
    /// One multiplier per variable; zero where there is no upper bound.
    pub upper_multipliers: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible { x: Vec<f64>, residual: f64 },
    Infeasible(InfeasibilityCertificate),
}

struct StandardForm {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    /// Multiplier mapping a standard-form row back to the original one.
    back: Vec<f64>,
    upper_of_row: Vec<Option<usize>>,
    columns: usize,
}

fn standard_form(a: &[Vec<f64>], b: &[f64], bounds: &[VarBounds], scale: bool) -> StandardForm {
    let n = bounds.len();
    let uppers: Vec<usize> = (0..n).filter(|&j| bounds[j].upper.is_some()).collect();
    let columns = n + uppers.len();
    let mut rows = Vec::with_capacity(a.len() + uppers.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    let mut upper_of_row = Vec::with_capacity(rows.capacity());
    for (row, &bi) in a.iter().zip(b) {
        let shift: f64 = row.iter().zip(bounds).map(|(v, bd)| v * bd.lower).sum();
        let mut r = row.clone();
        r.resize(columns, 0.0);
        rows.push(r);
        rhs.push(bi - shift);
        upper_of_row.push(None);
    }
    for (k, &j) in uppers.iter().enumerate() {
        let mut r = vec![0.0; columns];
        r[j] = 1.0;
        r[n + k] = 1.0;
        rows.push(r);
        rhs.push(bounds[j].upper.unwrap_or(0.0) - bounds[j].lower);
        upper_of_row.push(Some(j));
    }
    let mut back = vec![1.0; rows.len()];
    for i in 0..rows.len() {
        if scale {
            let m = rows[i].iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
            if m > 0.0 {
                rows[i].iter_mut().for_each(|v| *v /= m);
                rhs[i] /= m;
                back[i] /= m;
            }
        }
        if rhs[i] < 0.0 {
            rows[i].iter_mut().for_each(|v| *v = -*v);
            rhs[i] = -rhs[i];
            back[i] = -back[i];
        }
    }
    StandardForm {
        rows,
        rhs,
        back,
        upper_of_row,
        columns,
    }
}

/// Runs phase 1 to optimality. Returns the tableau (constraint rows with
/// the rhs in the last column) and the basis.
fn phase_one(form: &StandardForm) -> Result<(Vec<Vec<f64>>, Vec<usize>)> {
    let r = form.rows.len();
    let n = form.columns;
    let width = n + r + 1;
    let mut t: Vec<Vec<f64>> = form
        .rows
        .iter()
        .zip(&form.rhs)
        .enumerate()
        .map(|(i, (row, &rhs))| {
            let mut full = row.clone();
            full.resize(width, 0.0);
            full[n + i] = 1.0;
            full[width - 1] = rhs;
            full
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + r).collect();
    // reduced costs of the phase-1 objective Σ artificials
    let mut cost = vec![0.0; width];
    for row in &t {
        for j in 0..n {
            cost[j] -= row[j];
        }
        cost[width - 1] -= row[width - 1];
    }

    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..n).find(|&j| cost[j] < -COST_EPS) else {
            return Ok((t, basis));
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..r {
            let coef = t[i][enter];
            if coef <= PIVOT_EPS {
                continue;
            }
            let ratio = t[i][width - 1] / coef;
            leave = match leave {
                None => Some((i, ratio)),
                Some((best, best_ratio)) => {
                    let tie = (ratio - best_ratio).abs() <= 1e-12 * (1.0 + best_ratio.abs());
                    if ratio < best_ratio && !tie || tie && basis[i] < basis[best] {
                        Some((i, ratio))
                    } else {
                        Some((best, best_ratio))
                    }
                }
            };
        }
        let Some((pivot_row, _)) = leave else {
            return Err(Error::NumericalInstability("phase-1 objective unbounded".into()));
        };
        pivot(&mut t, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }
    Err(Error::NumericalInstability(format!(
        "no convergence after {MAX_PIVOTS} pivots"
    )))
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], row: usize, col: usize) {
    let p = t[row][col];
    t[row].iter_mut().for_each(|v| *v /= p);
    let pivot_row = t[row].clone();
    let eliminate = |target: &mut [f64]| {
        let factor = target[col];
        if factor != 0.0 {
            for (v, &pv) in target.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
                if v.abs() < 1e-15 {
                    *v = 0.0;
                }
            }
        }
    };
    for (i, target) in t.iter_mut().enumerate() {
        if i != row {
            eliminate(target);
        }
    }
    eliminate(cost);
}

fn residual(a: &[Vec<f64>], b: &[f64], x: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, &bi)| (row.iter().zip(x).map(|(v, xi)| v * xi).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max)
}

fn solve(a: &[Vec<f64>], b: &[f64], bounds: &[VarBounds], scale: bool) -> Result<LpOutcome> {
    let form = standard_form(a, b, bounds, scale);
    let (t, basis) = phase_one(&form)?;
    let n = form.columns;
    let r = form.rows.len();
    let width = n + r + 1;
    let optimum: f64 = (0..r).filter(|&i| basis[i] >= n).map(|i| t[i][width - 1]).sum();

    if optimum > FEASIBILITY_TOL {
        // y = c_B B^{-1}; the artificial block of the tableau holds B^{-1}
        let y: Vec<f64> = (0..r)
            .map(|k| (0..r).filter(|&i| basis[i] >= n).map(|i| t[i][n + k]).sum::<f64>() * form.back[k])
            .collect();
        let mut upper_multipliers = vec![0.0; bounds.len()];
        let mut eq_multipliers = Vec::with_capacity(a.len());
        for (k, yk) in y.into_iter().enumerate() {
            match form.upper_of_row[k] {
                Some(j) => upper_multipliers[j] = yk,
                None => eq_multipliers.push(yk),
            }
        }
        return Ok(LpOutcome::Infeasible(InfeasibilityCertificate {
            phase_one_optimum: optimum,
            eq_multipliers,
            upper_multipliers,
        }));
    }

    let mut x: Vec<f64> = bounds.iter().map(|bd| bd.lower).collect();
    for (i, &j) in basis.iter().enumerate() {
        if j < bounds.len() {
            x[j] += t[i][width - 1];
        }
    }
    let residual = residual(a, b, &x);
    Ok(LpOutcome::Feasible { x, residual })
}

/// Decides feasibility of `A x = b` with `l ≤ x ≤ u`.
///
/// When the returned point violates the equalities by more than
/// [`RESIDUAL_TOL`], the problem is re-solved once with each row scaled to
/// unit max-norm; a second failure is reported as
/// [`Error::NumericalInstability`].
pub fn lp_feasibility(a_eq: &[Vec<f64>], b_eq: &[f64], bounds: &[VarBounds]) -> Result<LpOutcome> {
    if a_eq.len() != b_eq.len() {
        return Err(Error::DimensionMismatch {
            expected: a_eq.len(),
            found: b_eq.len(),
        });
    }
    for row in a_eq {
        if row.len() != bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: bounds.len(),
                found: row.len(),
            });
        }
    }
    for (j, bd) in bounds.iter().enumerate() {
        let bad_upper = bd
            .upper
            .is_some_and(|u| u.is_nan() || bd.lower.is_nan() || u < bd.lower);
        if !bd.lower.is_finite() || bad_upper {
            return Err(Error::InvalidBounds(j));
        }
    }
    for scale in [false, true] {
        match solve(a_eq, b_eq, bounds, scale)? {
            LpOutcome::Feasible { residual, .. } if residual > RESIDUAL_TOL => continue,
            outcome => return Ok(outcome),
        }
    }
    Err(Error::NumericalInstability(
        "solution residual above tolerance after row scaling".into(),
    ))
}
