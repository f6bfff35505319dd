//! Scalar optimization on a bracket.
//!
//! All fit objectives in this crate are unimodal functions of one parameter,
//! so golden-section search is sufficient and derivative-free.

const INV_PHI: f64 = 0.618_033_988_749_894_8; // (sqrt(5) - 1) / 2

/// Golden-section minimization of `f` on `[a, b]`.
///
/// Returns `(x_min, f(x_min))` once the bracket is narrower than `tol`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    debug_assert!(a < b && tol > 0.0);
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
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
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Golden-section maximization of `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, neg) = golden_min(|x| -f(x), a, b, tol);
    (x, -neg)
}
