//! Convex flux algebra.
//!
//! A [`FluxSpec`] is one strictly convex flux on a compact working interval
//! `[-domain_bound, domain_bound]`, with its critical point and declared
//! non-degeneracy exponent. A [`FluxPair`] joins a left flux `g` (used on
//! `x < 0`) and a right flux `f` (used on `x > 0`) and carries the derived
//! regularity exponents, the max-principle bound and the wave-speed bound.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{param, Error, Result};
use crate::roots::{bisect, REL_TOL};

/// Analytic family of a flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxKind {
    /// `|u|^exponent`, `exponent >= 2`.
    PowerLaw { exponent: f64 },
    /// `u^2 + shift`.
    ShiftedQuadratic { shift: f64 },
}

/// One strictly convex flux on `[-domain_bound, domain_bound]`.
///
/// The flux value is `scale * base(u)` where `base` is given by [`FluxKind`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxSpec {
    pub kind: FluxKind,
    pub scale: f64,
    pub domain_bound: f64,
}

/// `|u|^r` with critical point 0 and non-degeneracy exponent `r - 1`.
pub fn power_law_flux(r: f64, domain_bound: f64) -> Result<FluxSpec> {
    if !(r >= 2.0) || !r.is_finite() {
        return Err(param(
            "r",
            format!("power-law exponent must be >= 2, got {r}"),
        ));
    }
    check_bound(domain_bound)?;
    Ok(FluxSpec {
        kind: FluxKind::PowerLaw { exponent: r },
        scale: 1.0,
        domain_bound,
    })
}

/// `u^2 + c` with critical point 0 and non-degeneracy exponent 1.
pub fn shifted_quadratic(c: f64, domain_bound: f64) -> Result<FluxSpec> {
    if !c.is_finite() {
        return Err(param("c", "shift must be finite"));
    }
    check_bound(domain_bound)?;
    Ok(FluxSpec {
        kind: FluxKind::ShiftedQuadratic { shift: c },
        scale: 1.0,
        domain_bound,
    })
}

fn check_bound(domain_bound: f64) -> Result<()> {
    if !(domain_bound > 0.0) || !domain_bound.is_finite() {
        return Err(param(
            "domain_bound",
            format!("must be a positive finite number, got {domain_bound}"),
        ));
    }
    Ok(())
}

impl FluxSpec {
    /// Same flux multiplied by a positive constant.
    pub fn scaled(mut self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(param("scale", format!("must be positive, got {factor}")));
        }
        self.scale *= factor;
        Ok(self)
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        let base = match self.kind {
            FluxKind::PowerLaw { exponent } => {
                if exponent == 2.0 {
                    u * u
                } else {
                    u.abs().powf(exponent)
                }
            }
            FluxKind::ShiftedQuadratic { shift } => u * u + shift,
        };
        self.scale * base
    }

    #[inline]
    pub fn deriv(&self, u: f64) -> f64 {
        let base = match self.kind {
            FluxKind::PowerLaw { exponent } => {
                if exponent == 2.0 {
                    2.0 * u
                } else {
                    exponent * u.signum() * u.abs().powf(exponent - 1.0)
                }
            }
            FluxKind::ShiftedQuadratic { .. } => 2.0 * u,
        };
        self.scale * base
    }

    pub fn second_deriv(&self, u: f64) -> f64 {
        let base = match self.kind {
            FluxKind::PowerLaw { exponent } => {
                if exponent == 2.0 {
                    2.0
                } else {
                    exponent * (exponent - 1.0) * u.abs().powf(exponent - 2.0)
                }
            }
            FluxKind::ShiftedQuadratic { .. } => 2.0,
        };
        self.scale * base
    }

    /// The unique critical point (minimiser).
    pub fn theta(&self) -> f64 {
        0.0
    }

    /// Minimum value of the flux, attained at [`Self::theta`].
    pub fn min_value(&self) -> f64 {
        self.eval(self.theta())
    }

    /// Declared exponent `e` in `|f'(u) - f'(v)| >= C |u - v|^e`.
    pub fn nondeg_exponent(&self) -> f64 {
        match self.kind {
            FluxKind::PowerLaw { exponent } => exponent - 1.0,
            FluxKind::ShiftedQuadratic { .. } => 1.0,
        }
    }

    /// Whether `f''` vanishes at most at the critical point.
    pub fn is_restricted(&self) -> bool {
        true
    }

    /// Smallest ratio `|f'(u)-f'(v)| / |u-v|^e` over an `n`-point grid of the
    /// working interval. This measures the constant of the non-degeneracy
    /// condition; it is reported, never assumed.
    pub fn nondeg_constant(&self, n: usize) -> f64 {
        let n = n.max(2);
        let e = self.nondeg_exponent();
        let b = self.domain_bound;
        let grid: Vec<f64> = (0..n)
            .map(|i| -b + 2.0 * b * i as f64 / (n - 1) as f64)
            .collect();
        let mut best = f64::INFINITY;
        for (i, &u) in grid.iter().enumerate() {
            for &v in &grid[i + 1..] {
                let r = (self.deriv(u) - self.deriv(v)).abs() / (u - v).abs().powf(e);
                best = best.min(r);
            }
        }
        best
    }

    /// Unique `u >= theta` with `eval(u) = y`.
    pub fn inv_plus(&self, y: f64) -> Result<f64> {
        let theta = self.theta();
        let min = self.min_value();
        if y < min {
            return Err(Error::Domain(format!(
                "value {y} lies below the flux minimum {min}"
            )));
        }
        let top = self.eval(self.domain_bound);
        if y > top {
            return Err(Error::Range(format!(
                "value {y} exceeds the flux on the working interval (max {top})"
            )));
        }
        Ok(bisect(|u| self.eval(u) - y, theta, self.domain_bound, REL_TOL))
    }

    /// Unique `u <= theta` with `eval(u) = y`.
    pub fn inv_minus(&self, y: f64) -> Result<f64> {
        let theta = self.theta();
        let min = self.min_value();
        if y < min {
            return Err(Error::Domain(format!(
                "value {y} lies below the flux minimum {min}"
            )));
        }
        let top = self.eval(-self.domain_bound);
        if y > top {
            return Err(Error::Range(format!(
                "value {y} exceeds the flux on the working interval (max {top})"
            )));
        }
        // eval is decreasing on [-bound, theta]; bisect on the negated residual.
        Ok(bisect(|u| y - self.eval(u), -self.domain_bound, theta, REL_TOL))
    }

    /// Unique `u` with `deriv(u) = xi`.
    pub fn deriv_inv(&self, xi: f64) -> Result<f64> {
        let lo = self.deriv(-self.domain_bound);
        let hi = self.deriv(self.domain_bound);
        if !(xi >= lo && xi <= hi) {
            return Err(Error::Range(format!(
                "slope {xi} outside the derivative range [{lo}, {hi}]"
            )));
        }
        if xi == 0.0 {
            return Ok(self.theta());
        }
        Ok(bisect(
            |u| self.deriv(u) - xi,
            -self.domain_bound,
            self.domain_bound,
            REL_TOL,
        ))
    }

    /// Key-value text form, one `key=value` per line.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.kv_pairs("") {
            out.push_str(&k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    pub(crate) fn kv_pairs(&self, prefix: &str) -> Vec<(String, String)> {
        let mut v = Vec::new();
        match self.kind {
            FluxKind::PowerLaw { exponent } => {
                v.push((format!("{prefix}kind"), "power_law".to_string()));
                v.push((format!("{prefix}exponent"), exponent.to_string()));
            }
            FluxKind::ShiftedQuadratic { shift } => {
                v.push((format!("{prefix}kind"), "shifted_quadratic".to_string()));
                v.push((format!("{prefix}shift"), shift.to_string()));
            }
        }
        v.push((format!("{prefix}scale"), self.scale.to_string()));
        v.push((format!("{prefix}domain_bound"), self.domain_bound.to_string()));
        v
    }

    /// Parses the form produced by [`Self::to_kv`].
    pub fn from_kv(text: &str) -> Result<Self> {
        let map = parse_kv(text)?;
        Self::from_map(&map, "")
    }

    pub(crate) fn from_map(map: &BTreeMap<String, String>, prefix: &str) -> Result<Self> {
        let get = |key: &str| -> Result<f64> {
            let full = format!("{prefix}{key}");
            let raw = map
                .get(&full)
                .ok_or_else(|| Error::Parse(format!("missing key `{full}`")))?;
            raw.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("`{full}` is not a number: {raw}")))
        };
        let kind_key = format!("{prefix}kind");
        let kind = map
            .get(&kind_key)
            .ok_or_else(|| Error::Parse(format!("missing key `{kind_key}`")))?;
        let bound = get("domain_bound")?;
        let mut spec = match kind.trim() {
            "power_law" => power_law_flux(get("exponent")?, bound)?,
            "shifted_quadratic" => shifted_quadratic(get("shift")?, bound)?,
            other => return Err(Error::Parse(format!("unknown flux kind `{other}`"))),
        };
        if map.contains_key(&format!("{prefix}scale")) {
            let s = get("scale")?;
            spec = spec.scaled(s)?;
        }
        Ok(spec)
    }
}

impl fmt::Display for FluxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.scale == 1.0 {
            String::new()
        } else {
            format!("{}*", self.scale)
        };
        match self.kind {
            FluxKind::PowerLaw { exponent } => write!(f, "{s}|u|^{exponent}"),
            FluxKind::ShiftedQuadratic { shift } => {
                if shift == 0.0 {
                    write!(f, "{s}u^2")
                } else {
                    write!(f, "{s}(u^2{shift:+})")
                }
            }
        }
    }
}

/// Parses `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Which flux has the smaller minimum; the exponent table branches on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinOrder {
    /// `min f < min g`
    RightLower,
    /// `min f > min g`
    LeftLower,
}

/// Result of the max-principle computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxPrincipleBound {
    pub value: f64,
    /// False when neither singular map is defined anywhere on `|v| <= m`.
    pub transmission_defined: bool,
}

/// The four smoothing exponents derived from `(gamma, nu, s0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingExponents {
    /// `min(gamma, nu)`, restricted fluxes with bounded data.
    pub s: f64,
    /// `min(gamma, max(nu, s0))`, restricted fluxes with `BV^{s0}` data.
    pub s1: Option<f64>,
    /// `gamma * nu`, general fluxes with bounded data.
    pub s_general: f64,
    /// `gamma * max(s0, nu)`, general fluxes with `BV^{s0}` data.
    pub s2: Option<f64>,
}

/// A left flux `g` on `x < 0` and a right flux `f` on `x > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxPair {
    pub left: FluxSpec,
    pub right: FluxSpec,
    pub gamma: f64,
    pub nu: f64,
    pub s_star: f64,
    /// Sup-norm bound `m` of the initial data this pair was prepared for.
    pub data_bound: f64,
    /// Max-principle bound `S`.
    pub s_bound: f64,
    /// `K = max |f'|, |g'|` on `[-S, S]`.
    pub speed_bound: f64,
}

impl FluxPair {
    /// Builds the pair for initial data bounded by `data_bound`.
    pub fn new(left: FluxSpec, right: FluxSpec, data_bound: f64) -> Result<Self> {
        if !(data_bound > 0.0) || !data_bound.is_finite() {
            return Err(param(
                "data_bound",
                format!("must be positive, got {data_bound}"),
            ));
        }
        let (gamma, nu) = gamma_nu_of(&left, &right)?;
        let mut pair = FluxPair {
            left,
            right,
            gamma,
            nu,
            s_star: gamma.min(nu),
            data_bound,
            s_bound: data_bound,
            speed_bound: 0.0,
        };
        let mp = max_principle_bound(&pair, data_bound)?;
        pair.s_bound = mp.value;
        let s = mp.value;
        pair.speed_bound = [
            left.deriv(-s).abs(),
            left.deriv(s).abs(),
            right.deriv(-s).abs(),
            right.deriv(s).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Ok(pair)
    }

    /// The pair used by the blow-up construction: `g = u^2 - 1`, `f = |u|^{p+1}`.
    pub fn counterexample(p: f64, data_bound: f64, domain_bound: f64) -> Result<Self> {
        let g = shifted_quadratic(-1.0, domain_bound)?;
        let f = power_law_flux(p + 1.0, domain_bound)?;
        FluxPair::new(g, f, data_bound)
    }

    pub fn min_order(&self) -> MinOrder {
        if self.right.min_value() < self.left.min_value() {
            MinOrder::RightLower
        } else {
            MinOrder::LeftLower
        }
    }

    /// Same pair prepared for a different data bound.
    pub fn with_data_bound(&self, data_bound: f64) -> Result<Self> {
        FluxPair::new(self.left, self.right, data_bound)
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in self
            .left
            .kv_pairs("left.")
            .into_iter()
            .chain(self.right.kv_pairs("right."))
        {
            out.push_str(&format!("{k}={v}\n"));
        }
        out.push_str(&format!("data_bound={}\n", self.data_bound));
        out
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let map = parse_kv(text)?;
        Self::from_map(&map)
    }

    pub(crate) fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let left = FluxSpec::from_map(map, "left.")?;
        let right = FluxSpec::from_map(map, "right.")?;
        let m = map
            .get("data_bound")
            .ok_or_else(|| Error::Parse("missing key `data_bound`".into()))?
            .parse::<f64>()
            .map_err(|_| Error::Parse("`data_bound` is not a number".into()))?;
        FluxPair::new(left, right, m)
    }
}

/// Transmits a left state across the interface, `f_+^{-1}(g(v))`.
pub fn singular_map_lr(pair: &FluxPair, v: f64) -> Result<f64> {
    let y = pair.left.eval(v);
    pair.right.inv_plus(y).map_err(|e| match e {
        Error::Domain(_) => Error::Domain(format!(
            "g({v}) = {y} is below min f = {}; the state cannot cross",
            pair.right.min_value()
        )),
        other => other,
    })
}

/// Transmits a right state across the interface, `g_-^{-1}(f(v))`.
pub fn singular_map_rl(pair: &FluxPair, v: f64) -> Result<f64> {
    let y = pair.right.eval(v);
    pair.left.inv_minus(y).map_err(|e| match e {
        Error::Domain(_) => Error::Domain(format!(
            "f({v}) = {y} is below min g = {}; the state cannot cross",
            pair.left.min_value()
        )),
        other => other,
    })
}

/// `(gamma, nu)` for a pair of fluxes.
pub fn gamma_nu(pair: &FluxPair) -> Result<(f64, f64)> {
    gamma_nu_of(&pair.left, &pair.right)
}

fn gamma_nu_of(left: &FluxSpec, right: &FluxSpec) -> Result<(f64, f64)> {
    let (min_f, min_g) = (right.min_value(), left.min_value());
    let p = right.nondeg_exponent();
    let q = left.nondeg_exponent();
    if min_f < min_g {
        Ok((1.0 / (q + 1.0), 1.0 / p))
    } else if min_f > min_g {
        Ok((1.0 / (p + 1.0), 1.0 / q))
    } else {
        Err(Error::Hypothesis(format!(
            "min f = min g = {min_f}; the fluxes must have different minima"
        )))
    }
}

pub fn smoothing_exponents(pair: &FluxPair, s0: Option<f64>) -> Result<SmoothingExponents> {
    exponents_from(pair.gamma, pair.nu, s0)
}

/// Exponent algebra on raw `(gamma, nu, s0)`.
pub fn exponents_from(gamma: f64, nu: f64, s0: Option<f64>) -> Result<SmoothingExponents> {
    if let Some(s0) = s0 {
        if !(s0 > 0.0 && s0 <= 1.0) {
            return Err(param("s0", format!("must lie in (0, 1], got {s0}")));
        }
    }
    Ok(SmoothingExponents {
        s: gamma.min(nu),
        s1: s0.map(|s0| gamma.min(nu.max(s0))),
        s_general: gamma * nu,
        s2: s0.map(|s0| gamma * s0.max(nu)),
    })
}

/// Number of samples on `[-m, m]` used by [`max_principle_bound`].
pub const MAX_PRINCIPLE_SAMPLES: usize = 4096;

/// `S = max(m, sup |f_+^{-1}(g(v))|, sup |g_-^{-1}(f(v))|)` over `|v| <= m`.
pub fn max_principle_bound(pair: &FluxPair, m: f64) -> Result<MaxPrincipleBound> {
    if !(m > 0.0) {
        return Err(param("m", format!("must be positive, got {m}")));
    }
    let mut value = m;
    let mut defined = false;
    let n = MAX_PRINCIPLE_SAMPLES;
    for i in 0..n {
        let v = -m + 2.0 * m * i as f64 / (n - 1) as f64;
        for r in [singular_map_lr(pair, v), singular_map_rl(pair, v)] {
            match r {
                Ok(w) => {
                    defined = true;
                    value = value.max(w.abs());
                }
                Err(Error::Domain(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(MaxPrincipleBound {
        value,
        transmission_defined: defined,
    })
}

/// Least-squares Hölder exponent of `map` on `interval`.
///
/// Sample pairs `(c + h, c)` are clustered geometrically toward each endpoint
/// `c`, with `h / |interval|` running from `2^-1` down to `2^-20`. The slope of
/// `log |map(c+h) - map(c)|` against `log h` is fitted at both endpoints and the
/// smaller one (the more singular end) is returned.
pub fn holder_exponent_estimate(
    map: impl Fn(f64) -> f64,
    interval: (f64, f64),
    n: usize,
) -> Result<f64> {
    Ok(holder_estimate_detailed(map, interval, n)?.exponent)
}

/// Exponent together with the endpoint where it was measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderEstimate {
    pub exponent: f64,
    pub anchor: f64,
}

pub fn holder_estimate_detailed(
    map: impl Fn(f64) -> f64,
    interval: (f64, f64),
    n: usize,
) -> Result<HolderEstimate> {
    let (a, b) = interval;
    if n < 64 {
        return Err(param("n", format!("need at least 64 pairs, got {n}")));
    }
    if !(a < b) {
        return Err(param("interval", format!("empty interval ({a}, {b})")));
    }
    let len = b - a;
    let mut best: Option<HolderEstimate> = None;
    for (anchor, dir) in [(a, 1.0), (b, -1.0)] {
        let base = map(anchor);
        if !base.is_finite() {
            continue;
        }
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for j in 0..n {
            let expo = -1.0 - 19.0 * j as f64 / (n - 1) as f64;
            let h = len * expo.exp2();
            let val = map(anchor + dir * h);
            let d = (val - base).abs();
            if val.is_finite() && d > 0.0 {
                xs.push(h.ln());
                ys.push(d.ln());
            }
        }
        if xs.len() < n / 2 {
            continue;
        }
        let slope = least_squares_slope(&xs, &ys);
        let est = HolderEstimate {
            exponent: slope,
            anchor,
        };
        best = match best {
            Some(b) if b.exponent <= slope => Some(b),
            _ => Some(est),
        };
    }
    best.ok_or_else(|| {
        Error::UndefinedExponent(format!(
            "map is constant or undefined near both ends of ({a}, {b})"
        ))
    })
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Least-squares fit `y = a + b x`; returns `(a, b)`.
pub(crate) fn least_squares_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let b = least_squares_slope(xs, ys);
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    (my - b * mx, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_pair() -> FluxPair {
        let g = shifted_quadratic(-1.0, 10.0).unwrap();
        let f = power_law_flux(2.0, 10.0).unwrap();
        FluxPair::new(g, f, 1.0).unwrap()
    }

    #[test]
    fn power_law_constructor() {
        let f = power_law_flux(2.0, 5.0).unwrap();
        assert_eq!(f.theta(), 0.0);
        assert_eq!(f.nondeg_exponent(), 1.0);
        assert_eq!(f.eval(1.0), 1.0);
        assert!(matches!(
            power_law_flux(1.5, 5.0),
            Err(Error::Parameter { name: "r", .. })
        ));
        assert!(power_law_flux(2.0, 0.0).is_err());
    }

    #[test]
    fn shifted_quadratic_values() {
        let g = shifted_quadratic(-1.0, 5.0).unwrap();
        assert_eq!(g.min_value(), -1.0);
        assert_eq!(g.eval(2.0), 3.0);
        assert_eq!(shifted_quadratic(0.0, 5.0).unwrap().eval(0.0), 0.0);
    }

    #[test]
    fn inverses_match_closed_forms() {
        let sq = power_law_flux(2.0, 10.0).unwrap();
        assert!((sq.inv_plus(4.0).unwrap() - 2.0).abs() < 1e-11);
        assert_eq!(sq.inv_plus(0.0).unwrap(), 0.0);
        assert!((sq.inv_minus(9.0).unwrap() + 3.0).abs() < 1e-11);
        let cube = power_law_flux(3.0, 10.0).unwrap();
        assert!((cube.inv_plus(8.0).unwrap() - 2.0).abs() < 1e-11);
        assert!((cube.deriv_inv(3.0).unwrap() - 1.0).abs() < 1e-11);
        let g = shifted_quadratic(-1.0, 10.0).unwrap();
        assert!((g.inv_minus(0.0).unwrap() + 1.0).abs() < 1e-11);
        assert_eq!(g.inv_minus(-1.0).unwrap(), 0.0);
        assert!((sq.deriv_inv(2.0).unwrap() - 1.0).abs() < 1e-11);
        assert_eq!(g.deriv_inv(0.0).unwrap(), g.theta());
    }

    #[test]
    fn inverse_errors() {
        let g = shifted_quadratic(-1.0, 3.0).unwrap();
        assert!(matches!(g.inv_plus(-2.0), Err(Error::Domain(_))));
        assert!(matches!(g.inv_minus(100.0), Err(Error::Range(_))));
        assert!(matches!(g.deriv_inv(7.0), Err(Error::Range(_))));
    }

    #[test]
    fn singular_maps_on_quadratic_pair() {
        let pair = quad_pair();
        let s2 = 2f64.sqrt();
        assert!((singular_map_lr(&pair, s2).unwrap() - 1.0).abs() < 1e-11);
        assert!(singular_map_lr(&pair, 1.0).unwrap().abs() < 1e-6);
        assert!((singular_map_lr(&pair, -s2).unwrap() - 1.0).abs() < 1e-11);
        assert!(matches!(singular_map_lr(&pair, 0.5), Err(Error::Domain(_))));
        assert!((singular_map_rl(&pair, 0.0).unwrap() + 1.0).abs() < 1e-11);
        assert!((singular_map_rl(&pair, 3f64.sqrt()).unwrap() + 2.0).abs() < 1e-11);
    }

    #[test]
    fn singular_map_rl_at_touching_minima_returns_theta() {
        // f(theta_f) = min g: the right-to-left map lands on theta_g.
        let g = shifted_quadratic(0.0, 5.0).unwrap();
        let f = shifted_quadratic(0.0, 5.0).unwrap();
        let y = f.eval(f.theta());
        assert_eq!(g.inv_minus(y).unwrap(), g.theta());
    }

    #[test]
    fn exponent_table() {
        let pair = quad_pair();
        assert_eq!(pair.min_order(), MinOrder::LeftLower);
        assert_eq!(gamma_nu(&pair).unwrap(), (0.5, 1.0));
        for p in [1.0, 2.0, 3.0] {
            let pair = FluxPair::counterexample(p, 1.0, 5.0).unwrap();
            let (g, n) = gamma_nu(&pair).unwrap();
            assert!((g - 1.0 / (p + 1.0)).abs() < 1e-15);
            assert_eq!(n, 1.0);
        }
        // swapping the sides swaps the branch
        let swapped = FluxPair::new(
            power_law_flux(3.0, 5.0).unwrap(),
            shifted_quadratic(-1.0, 5.0).unwrap(),
            1.0,
        )
        .unwrap();
        assert_eq!(swapped.min_order(), MinOrder::RightLower);
        let (g, n) = gamma_nu(&swapped).unwrap();
        assert!((g - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(n, 1.0);
    }

    #[test]
    fn equal_minima_rejected() {
        let g = shifted_quadratic(0.0, 5.0).unwrap();
        let f = power_law_flux(2.0, 5.0).unwrap();
        assert!(matches!(FluxPair::new(g, f, 1.0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn smoothing_exponent_values() {
        let e = exponents_from(0.5, 1.0, None).unwrap();
        assert_eq!(e.s, 0.5);
        assert_eq!(e.s_general, 0.5);
        let e = exponents_from(1.0 / 3.0, 1.0, Some(0.25)).unwrap();
        assert_eq!(e.s1, Some(1.0 / 3.0));
        assert_eq!(e.s2, Some(1.0 / 3.0));
        assert_eq!(exponents_from(1.0, 1.0, None).unwrap().s, 1.0);
        assert!(exponents_from(0.5, 1.0, Some(0.0)).is_err());
    }

    #[test]
    fn max_principle_closed_forms() {
        let pair = quad_pair();
        let mp = max_principle_bound(&pair, 2.0).unwrap();
        assert!((mp.value - 5f64.sqrt()).abs() < 1e-10);
        let mp = max_principle_bound(&pair, 1.0).unwrap();
        assert!((mp.value - 2f64.sqrt()).abs() < 1e-10);
        assert!((pair.speed_bound - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn max_principle_flag_when_nothing_crosses() {
        // Both maps undefined: f stays below min g and g below min f is impossible,
        // so emulate with a tiny data range around theta for a pair with a large gap.
        let g = shifted_quadratic(5.0, 10.0).unwrap();
        let f = shifted_quadratic(0.0, 10.0).unwrap();
        let pair = FluxPair::new(g, f, 0.5).unwrap();
        let mp = max_principle_bound(&pair, 0.5).unwrap();
        // g(v) >= 5 > min f, so the left-to-right map is defined
        assert!(mp.transmission_defined);
        assert!(mp.value > 0.5);
    }

    #[test]
    fn holder_estimates() {
        let id = holder_exponent_estimate(|x| x, (0.0, 1.0), 128).unwrap();
        assert!((id - 1.0).abs() < 0.01);
        let sqrt = holder_exponent_estimate(|x| x.sqrt(), (0.0, 1.0), 128).unwrap();
        assert!((sqrt - 0.5).abs() < 0.02);
        assert!(matches!(
            holder_exponent_estimate(|_| 3.0, (0.0, 1.0), 64),
            Err(Error::UndefinedExponent(_))
        ));
        assert!(holder_exponent_estimate(|x| x, (0.0, 1.0), 10).is_err());
    }

    #[test]
    fn kv_roundtrip_exact() {
        let f = power_law_flux(2.0 + 1.0 / 3.0, 7.1).unwrap().scaled(0.1).unwrap();
        let back = FluxSpec::from_kv(&f.to_kv()).unwrap();
        assert_eq!(f, back);
        let pair = quad_pair();
        let back = FluxPair::from_kv(&pair.to_kv()).unwrap();
        assert_eq!(pair, back);
        assert!(FluxSpec::from_kv("kind=cubic\ndomain_bound=1").is_err());
    }
}
