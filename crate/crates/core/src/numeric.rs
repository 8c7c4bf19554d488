//! Scalar root bracketing and one-dimensional maximization.

use crate::error::{Error, Result};

/// Finds a root of `f` in `[lo, hi]` by bisection.
///
/// Requires `f(lo) <= 0 <= f(hi)`, i.e. `f` increasing through the root.
/// Stops when the bracket is no wider than `tol` (or cannot be split any
/// further in floating point) and returns its midpoint.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        return Ok(0.5 * (lo + hi));
    }
    Err(Error::NoConvergence {
        lo,
        hi,
        iterations: max_iter,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmax, max)` once the bracket is narrower than `tol`.
pub fn golden_section_max<F>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    // ~ log(tol / width) / log(INV_PHI) steps; the cap only guards against NaN widths.
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}
