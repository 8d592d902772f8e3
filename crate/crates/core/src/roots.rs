//! Bracketed bisection shared by every inverse in the crate.

/// Relative width at which [`bisect`] stops.
pub const REL_TOL: f64 = 1e-12;
/// Hard cap on bisection iterations.
pub const MAX_ITER: usize = 200;

/// Finds a root of an increasing function on `[lo, hi]`.
///
/// Assumes `f(lo) <= 0 <= f(hi)`; the caller is responsible for the
/// bracket. Stops once the bracket width drops below `rel_tol` relative to
/// the magnitude of its endpoints (absolute near zero), when the midpoint
/// can no longer be represented, or after [`MAX_ITER`] halvings.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return hi;
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let scale = lo.abs().max(hi.abs()).max(1e-300);
        if hi - lo <= rel_tol * scale {
            break;
        }
    }
    0.5 * (lo + hi)
}
