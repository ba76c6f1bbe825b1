//! Scalar maximization on `[0, 1]`.

/// Points in the coarse scan that precedes golden-section refinement.
pub const PRESCAN_POINTS: usize = 1001;
/// Final bracket width of the golden-section refinement.
pub const INTERVAL_TOL: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// Returns `(argmax, max)`. `f` is assumed unimodal on the bracket.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Global maximum of `f` on `[0, 1]`: a uniform scan picks the best grid
/// point, then golden-section search refines inside its neighbouring cells.
/// The scan guards against objectives that are not concave.
pub fn maximize_unit_interval(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let last = PRESCAN_POINTS - 1;
    let grid = |k: usize| k as f64 / last as f64;
    let (mut best_k, mut best) = (0, f(0.0));
    for k in 1..=last {
        let v = f(grid(k));
        if v > best {
            best_k = k;
            best = v;
        }
    }
    let lo = grid(best_k.saturating_sub(1));
    let hi = grid((best_k + 1).min(last));
    let (x, v) = golden_section_max(&f, lo, hi, INTERVAL_TOL);
    if v > best {
        (x, v)
    } else {
        (grid(best_k), best)
    }
}

/// Minimum of `f` on `[lo, hi]` by golden-section search.
pub fn golden_section_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_section_max(|t| -f(t), lo, hi, tol);
    (x, -v)
}
