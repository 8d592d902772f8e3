//! Closed-form solutions: the backward construction from a prescribed profile
//! at time `T`, and the explicit family whose fractional variation blows up.

pub mod backward;
pub mod counterexample;

pub use backward::{BackwardData, Rebased};
pub use counterexample::{
    counterexample_params, find_feasible_start, CounterexampleParams, CounterexampleSpec,
};

use crate::error::{Error, Result};
use crate::flux::FluxPair;

/// Which one-sided limit to take at a discontinuity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `h_+ = g' ∘ g_+^{-1} ∘ f ∘ (f')^{-1}`: the left-side characteristic speed
/// that feeds a right-side characteristic of speed `xi` through the interface.
pub fn hplus(pair: &FluxPair, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::Domain(format!("hplus needs xi >= 0, got {xi}")));
    }
    let c = pair
        .right
        .deriv_inv(xi)
        .map_err(|e| stage("(f')^-1", e))?;
    let y = pair.right.eval(c);
    let d = pair.left.inv_plus(y).map_err(|e| stage("g_+^-1", e))?;
    Ok(pair.left.deriv(d))
}

fn stage(name: &str, e: Error) -> Error {
    match e {
        Error::Domain(m) => Error::Domain(format!("stage {name}: {m}")),
        Error::Range(m) => Error::Range(format!("stage {name}: {m}")),
        other => other,
    }
}

/// `2 sqrt(1 + (p+1)^{-1-1/p} xi^{1+1/p})`, the closed form of `h_+` for the
/// pair `g = u^2 - 1`, `f = |u|^{p+1}`.
pub fn h_closed(p: f64, xi: f64) -> f64 {
    2.0 * (1.0 + h_coeff(p) * xi.powf(1.0 + 1.0 / p)).sqrt()
}

/// `(p+1)^{-1-1/p}`.
pub(crate) fn h_coeff(p: f64) -> f64 {
    (p + 1.0).powf(-1.0 - 1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hplus_matches_closed_form() {
        for p in [1.0, 2.0, 3.0] {
            let pair = FluxPair::counterexample(p, 1.0, 200.0).unwrap();
            assert!((hplus(&pair, 0.0).unwrap() - 2.0).abs() < 1e-12);
            let mut prev = 0.0;
            for k in 0..=200 {
                let xi = k as f64 * 0.5;
                let h = hplus(&pair, xi).unwrap();
                let c = h_closed(p, xi);
                assert!((h - c).abs() <= 1e-10 * c, "p={p} xi={xi}: {h} vs {c}");
                assert!(h >= prev);
                prev = h;
            }
        }
    }

    #[test]
    fn hplus_errors_name_the_stage() {
        let pair = FluxPair::counterexample(1.0, 1.0, 2.0).unwrap();
        assert!(matches!(hplus(&pair, -1.0), Err(Error::Domain(_))));
        match hplus(&pair, 100.0) {
            Err(Error::Range(m)) => assert!(m.contains("(f')^-1")),
            other => panic!("{other:?}"),
        }
    }
}
