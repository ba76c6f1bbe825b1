//! Binary-input channels, their BISO paired form, and post-processing maps.
//!
//! A [`Channel`] is a 2×n row-stochastic matrix: row `x` holds `P(y|x)`.
//! A [`BisoChannel`] stores the same object for a binary-input
//! symmetric-output channel as pairs `(p_y, p_{-y})` for `y = 1..l`, where
//! `p_y = P(y|0) = P(-y|1)`.
//!
//! The flat listing used for files is `(p_{-l}, …, p_{-1}, p_1, …, p_l)`,
//! which is exactly row 0 of the channel when outputs are ordered by
//! ascending label.

use crate::error::{Error, Result};

/// Stochasticity tolerance for channels built in code.
pub const CONSTRUCTED_TOL: f64 = 1e-12;
/// Stochasticity tolerance for channels read from text.
pub const FILE_TOL: f64 = 1e-9;
/// Tolerance used to match output columns into BISO pairs.
pub const PAIRING_TOL: f64 = 1e-9;
/// Row-sum drift tolerated in a degrading map before it is rejected.
pub const MAP_TOL: f64 = 1e-9;

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange { name, value });
    }
    Ok(())
}

fn clean_row(row: &[f64], index: usize, tol: f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(row.len());
    for (j, &v) in row.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NotStochastic {
                row: index,
                reason: format!("entry {j} is not finite"),
            });
        }
        if v < -tol || v > 1.0 + tol {
            return Err(Error::NotStochastic {
                row: index,
                reason: format!("entry {j} = {v} outside [0, 1]"),
            });
        }
        out.push(v.clamp(0.0, 1.0));
    }
    let sum: f64 = out.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::NotStochastic {
            row: index,
            reason: format!("sums to {sum}"),
        });
    }
    Ok(out)
}

/// A binary-input discrete memoryless channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: [Vec<f64>; 2],
    labels: Option<Vec<i64>>,
}

impl Channel {
    pub fn new(row0: Vec<f64>, row1: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(row0, row1, CONSTRUCTED_TOL)
    }

    /// Builds a channel, accepting row sums within `tol` of one.
    pub fn with_tolerance(row0: Vec<f64>, row1: Vec<f64>, tol: f64) -> Result<Self> {
        if row0.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if row0.len() != row1.len() {
            return Err(Error::DimensionMismatch {
                expected: row0.len(),
                found: row1.len(),
            });
        }
        let row0 = clean_row(&row0, 0, tol)?;
        let row1 = clean_row(&row1, 1, tol)?;
        Ok(Channel {
            rows: [row0, row1],
            labels: None,
        })
    }

    /// Attaches integer output labels, one per column.
    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.outputs() {
            return Err(Error::DimensionMismatch {
                expected: self.outputs(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: f64) -> Result<Self> {
        check_probability("p", p)?;
        Self::new(vec![1.0 - p, p], vec![p, 1.0 - p])
    }

    /// Binary erasure channel; the middle output is the erasure symbol.
    pub fn bec(eps: f64) -> Result<Self> {
        check_probability("eps", eps)?;
        Self::new(vec![1.0 - eps, eps, 0.0], vec![0.0, eps, 1.0 - eps])
    }

    /// Z-channel `D(0, q)`: input 0 is noiseless, input 1 lands on output 0
    /// with probability `q`.
    pub fn z(q: f64) -> Result<Self> {
        check_probability("q", q)?;
        Self::new(vec![1.0, 0.0], vec![q, 1.0 - q])
    }

    /// The binary-output channel `[[1-r, r], [s, 1-s]]`.
    pub fn binary(r: f64, s: f64) -> Result<Self> {
        check_probability("r", r)?;
        check_probability("s", s)?;
        Self::new(vec![1.0 - r, r], vec![s, 1.0 - s])
    }

    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    /// `P(·|x)` for `x ∈ {0, 1}`.
    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// Iterates `(P(y|0), P(y|1))` over the output alphabet.
    pub fn columns(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.rows[0].iter().copied().zip(self.rows[1].iter().copied())
    }

    /// Post-processes the channel output by `map`, giving `map ∘ self`.
    pub fn compose(&self, map: &DegradingMap) -> Result<Channel> {
        if map.inputs() != self.outputs() {
            return Err(Error::DimensionMismatch {
                expected: self.outputs(),
                found: map.inputs(),
            });
        }
        let apply = |row: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; map.outputs()];
            for (y, &py) in row.iter().enumerate() {
                if py == 0.0 {
                    continue;
                }
                for (o, &d) in out.iter_mut().zip(map.row(y)) {
                    *o += py * d;
                }
            }
            out
        };
        Channel::new(apply(&self.rows[0]), apply(&self.rows[1]))
    }

    /// Largest entrywise difference to another channel of the same shape.
    pub fn max_abs_diff(&self, other: &Channel) -> Option<f64> {
        if self.outputs() != other.outputs() {
            return None;
        }
        let diff = (0..2)
            .flat_map(|x| self.rows[x].iter().zip(&other.rows[x]))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Some(diff)
    }

    pub fn is_biso(&self) -> bool {
        self.canonicalize_biso().is_ok()
    }

    /// Recovers the paired BISO form.
    ///
    /// Labels, when present and consistent, fix the pairing and the sign of
    /// each output. Without labels, columns are matched to their mirror
    /// images; within a pair the positive label goes to the column with the
    /// larger `P(y|0)`. One column with equal rows may be split into `0_±`.
    /// All-zero columns are dropped.
    pub fn canonicalize_biso(&self) -> Result<BisoChannel> {
        if let Some(labels) = &self.labels {
            if let Some(biso) = self.pair_by_labels(labels) {
                return Ok(biso);
            }
        }
        self.pair_by_matching()
    }

    fn pair_by_labels(&self, labels: &[i64]) -> Option<BisoChannel> {
        let tol = PAIRING_TOL;
        let mut by_label = std::collections::BTreeMap::new();
        for (c, &label) in labels.iter().enumerate() {
            if by_label.insert(label, c).is_some() {
                return None;
            }
        }
        let col = |c: usize| (self.rows[0][c], self.rows[1][c]);
        let mut pairs = Vec::new();
        if let Some(&c) = by_label.get(&0) {
            let (a, b) = col(c);
            if (a - b).abs() > tol {
                return None;
            }
            let half = 0.25 * (a + b);
            if half > 0.0 {
                pairs.push((half, half));
            }
        }
        for (&label, &c) in by_label.range(1..) {
            let (a, b) = col(c);
            let (a_neg, b_neg) = match by_label.get(&-label) {
                Some(&d) => col(d),
                None => (0.0, 0.0),
            };
            if (a - b_neg).abs() > tol || (b - a_neg).abs() > tol {
                return None;
            }
            let pair = (0.5 * (a + b_neg), 0.5 * (b + a_neg));
            if pair.0 > 0.0 || pair.1 > 0.0 {
                pairs.push(pair);
            }
        }
        // every negative label needs a positive partner
        for (&label, &c) in by_label.range(..0) {
            if !by_label.contains_key(&-label) {
                let (a, b) = col(c);
                if a > tol || b > tol {
                    return None;
                }
            }
        }
        BisoChannel::with_tolerance(pairs, FILE_TOL).ok()
    }

    fn pair_by_matching(&self) -> Result<BisoChannel> {
        let tol = PAIRING_TOL;
        let cols: Vec<(usize, f64, f64)> = self
            .columns()
            .enumerate()
            .filter(|&(_, (a, b))| a > tol || b > tol)
            .map(|(c, (a, b))| (c, a, b))
            .collect();
        let mut matched = vec![false; cols.len()];
        // (position of the positive column, pair)
        let mut found: Vec<(usize, (f64, f64))> = Vec::new();
        for i in 0..cols.len() {
            if matched[i] {
                continue;
            }
            let (ci, ai, bi) = cols[i];
            let partner = (i + 1..cols.len()).find(|&j| {
                let (_, aj, bj) = cols[j];
                !matched[j] && (ai - bj).abs() <= tol && (bi - aj).abs() <= tol
            });
            if let Some(j) = partner {
                matched[i] = true;
                matched[j] = true;
                let (cj, aj, bj) = cols[j];
                let hi = 0.5 * (ai + bj);
                let lo = 0.5 * (aj + bi);
                if ai >= aj {
                    found.push((ci, (hi, lo)));
                } else {
                    found.push((cj, (lo, hi)));
                }
            }
        }
        let leftovers: Vec<usize> = (0..cols.len()).filter(|&i| !matched[i]).collect();
        match leftovers.as_slice() {
            [] => {}
            [i] => {
                let (c, a, b) = cols[*i];
                if (a - b).abs() > tol {
                    return Err(Error::NotBiso(format!("output {c} has no mirror column ({a}, {b})")));
                }
                let half = 0.25 * (a + b);
                found.push((c, (half, half)));
            }
            many => {
                return Err(Error::NotBiso(format!("{} unpaired output columns", many.len())));
            }
        }
        found.sort_by_key(|&(c, _)| c);
        BisoChannel::with_tolerance(found.into_iter().map(|(_, p)| p).collect(), FILE_TOL)
    }
}

/// A binary-input symmetric-output channel in paired form.
#[derive(Debug, Clone, PartialEq)]
pub struct BisoChannel {
    pairs: Vec<(f64, f64)>,
}

impl BisoChannel {
    /// Builds from pairs `(p_y, p_{-y})`, `y = 1..l`. Pairs that are exactly
    /// zero are dropped.
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        Self::with_tolerance(pairs, CONSTRUCTED_TOL)
    }

    pub fn with_tolerance(pairs: Vec<(f64, f64)>, tol: f64) -> Result<Self> {
        let mut kept = Vec::with_capacity(pairs.len());
        let mut total = 0.0;
        for (i, (a, b)) in pairs.into_iter().enumerate() {
            for v in [a, b] {
                if !v.is_finite() || v < -tol || v > 1.0 + tol {
                    return Err(Error::NotStochastic {
                        row: 0,
                        reason: format!("pair {i} has entry {v} outside [0, 1]"),
                    });
                }
            }
            let (a, b) = (a.clamp(0.0, 1.0), b.clamp(0.0, 1.0));
            total += a + b;
            if a > 0.0 || b > 0.0 {
                kept.push((a, b));
            }
        }
        if (total - 1.0).abs() > tol {
            return Err(Error::NotStochastic {
                row: 0,
                reason: format!("pairs sum to {total}"),
            });
        }
        if kept.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Ok(BisoChannel { pairs: kept })
    }

    /// Reads the flat listing `(p_{-l}, …, p_{-1}, p_1, …, p_l)`.
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        Self::from_flat_with_tolerance(flat, CONSTRUCTED_TOL)
    }

    pub fn from_flat_with_tolerance(flat: &[f64], tol: f64) -> Result<Self> {
        if flat.is_empty() || !flat.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: flat.len() + flat.len() % 2,
                found: flat.len(),
            });
        }
        let l = flat.len() / 2;
        let pairs = (1..=l).map(|y| (flat[l + y - 1], flat[l - y])).collect();
        Self::with_tolerance(pairs, tol)
    }

    pub fn bsc(p: f64) -> Result<Self> {
        check_probability("p", p)?;
        Self::new(vec![(1.0 - p, p)])
    }

    /// BEC in paired form: the erasure symbol is split into `0_±`.
    pub fn bec(eps: f64) -> Result<Self> {
        check_probability("eps", eps)?;
        Self::new(vec![(1.0 - eps, 0.0), (0.5 * eps, 0.5 * eps)])
    }

    /// Pairs `(p_y, p_{-y})` in ascending `y`.
    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Number of pairs `l`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The flat listing `(p_{-l}, …, p_{-1}, p_1, …, p_l)`.
    pub fn flat(&self) -> Vec<f64> {
        let neg = self.pairs.iter().rev().map(|&(_, m)| m);
        let pos = self.pairs.iter().map(|&(p, _)| p);
        neg.chain(pos).collect()
    }

    /// Output labels matching [`BisoChannel::flat`]: `-l..=-1, 1..=l`.
    pub fn labels(&self) -> Vec<i64> {
        let l = self.pairs.len() as i64;
        (-l..=-1).chain(1..=l).collect()
    }

    /// The channel matrix over outputs ordered by ascending label.
    pub fn to_channel(&self) -> Channel {
        let row0 = self.flat();
        let row1: Vec<f64> = row0.iter().rev().copied().collect();
        Channel::with_tolerance(row0, row1, FILE_TOL)
            .and_then(|c| c.with_labels(self.labels()))
            .expect("paired form is a valid channel")
    }
}

/// A row-stochastic matrix `D(y'|y)` applied after a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct DegradingMap {
    rows: Vec<Vec<f64>>,
}

impl DegradingMap {
    /// Validates, clamps to `[0, 1]` and renormalizes rows whose sum drifts
    /// by at most [`MAP_TOL`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let mut clean = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    found: row.len(),
                });
            }
            let mut row = clean_row(&row, i, MAP_TOL)?;
            let sum: f64 = row.iter().sum();
            row.iter_mut().for_each(|v| *v /= sum);
            clean.push(row);
        }
        Ok(DegradingMap { rows: clean })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        DegradingMap { rows }
    }

    /// Number of input symbols (rows).
    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    /// Number of output symbols (columns).
    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.rows[y]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Matrix product `self · other`, i.e. apply `self` then `other`.
    pub fn then(&self, other: &DegradingMap) -> Result<DegradingMap> {
        if self.outputs() != other.inputs() {
            return Err(Error::DimensionMismatch {
                expected: self.outputs(),
                found: other.inputs(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.outputs())
                    .map(|k| row.iter().enumerate().map(|(j, &v)| v * other.rows[j][k]).sum())
                    .collect()
            })
            .collect();
        DegradingMap::new(rows)
    }
}

/// Input law `Ber(p)` with `p = P(X = 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputDistribution(pub(crate) f64);

impl InputDistribution {
    pub fn new(p: f64) -> Result<Self> {
        check_probability("p", p)?;
        Ok(InputDistribution(p))
    }

    pub fn uniform() -> Self {
        InputDistribution(0.5)
    }

    /// `P(X = 0)`.
    pub fn p(self) -> f64 {
        self.0
    }
}
