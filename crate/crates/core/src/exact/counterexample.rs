//! Explicit profile at `T = 1` for the pair `g = u^2 - 1`, `f = |u|^{p+1}` whose
//! jumps make `TV^s` infinite for `s = (1 + ε)/(p + 1)`.
//!
//! Jumps sit at decreasing positions `x_i` with one-sided characteristic
//! speeds `a_{2i} = i^{-β}` (right) and `a_{2i+1} = i^{-α}` (left). The
//! emission times `t_k` of the interface characteristics follow
//!
//! ```text
//! 1 - t_{2k+1} = k^{-(β-α)} (1 - t_{2k}),    t_{2k+2} = t_{2k+1} + k^{-λ},
//! ```
//!
//! and `x_i = (1 - t_{2i}) a_{2i} = (1 - t_{2i+1}) a_{2i+1}`. Between jumps the
//! emission time `ξ(x)` solves
//! `K (x/(1-ξ))^{1+1/p} = (C/(ξ+d))^2 - 1` with `K = (p+1)^{-1-1/p}`, which
//! makes `ρ(x) = -ξ h(x/(1-ξ)) = -2Cξ/(ξ+d)` explicit.

use std::collections::BTreeMap;

use super::{h_closed, h_coeff, Side};
use crate::error::{param, Error, Result};
use crate::flux::parse_kv;
use crate::roots::bisect;

/// `α`, `β`, `λ` for given `p` and `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleParams {
    pub p: f64,
    pub eps: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

pub fn counterexample_params(p: f64, eps: f64) -> Result<CounterexampleParams> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(param("p", format!("must be >= 1, got {p}")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(param("eps", format!("must be positive, got {eps}")));
    }
    let den = 3.0 * (2.0 * p + 1.0);
    let r = p / (p + 1.0);
    Ok(CounterexampleParams {
        p,
        eps,
        alpha: r * (1.0 + (4.0 * p + 2.0) * eps / den),
        beta: r * (1.0 + 2.0 * (3.0 * p + 2.0) * eps / den),
        lambda: 1.0 + 2.0 * p * eps / den,
    })
}

impl CounterexampleParams {
    /// `κ = (1 + (4p+2)ε/(3(2p+1))) / (1 + ε)`; partial sums of the jump
    /// series at the critical exponent grow like `N^{1-κ}`.
    pub fn kappa(&self) -> f64 {
        (1.0 + (4.0 * self.p + 2.0) * self.eps / (3.0 * (2.0 * self.p + 1.0))) / (1.0 + self.eps)
    }

    /// `(1 + ε)/(p + 1)`.
    pub fn critical_s(&self) -> f64 {
        (1.0 + self.eps) / (self.p + 1.0)
    }

    /// Right speed `a_{2i}` or left speed `a_{2i+1}` for even or odd `k`.
    pub fn a(&self, k: usize) -> f64 {
        let i = (k / 2) as f64;
        if k.is_multiple_of(2) {
            i.powf(-self.beta)
        } else {
            i.powf(-self.alpha)
        }
    }

    /// `u(x_i-) - u(x_i+) = (1+p)^{-1/p} (i^{-α/p} - i^{-β/p})`.
    pub fn jump(&self, i: usize) -> f64 {
        let p = self.p;
        let li = (i as f64).ln();
        // i^{-α/p} (1 - i^{-(β-α)/p}) without cancellation
        let lead = (-self.alpha / p * li).exp();
        let gap = -(-(self.beta - self.alpha) / p * li).exp_m1();
        (1.0 + p).powf(-1.0 / p) * lead * gap
    }

    /// Partial sums `S_N = Σ_{i=i0}^{N} |jump_i|^{1/s}` for `N = i0..=n_max`.
    pub fn jump_series(&self, i0: usize, s: f64, n_max: usize) -> Result<Vec<f64>> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(param("s", format!("must lie in (0, 1], got {s}")));
        }
        if i0 < 2 || n_max < i0 {
            return Err(param("N", format!("need 2 <= i0 <= N, got i0 = {i0}, N = {n_max}")));
        }
        let q = 1.0 / s;
        let mut out = Vec::with_capacity(n_max - i0 + 1);
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for i in i0..=n_max {
            // compensated summation keeps the tail increments meaningful
            let y = self.jump(i).powf(q) - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            out.push(sum);
        }
        Ok(out)
    }
}

/// A built instance: `N` jumps at `x_{i0} > ... > x_{i0+N-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleSpec {
    pub params: CounterexampleParams,
    pub i0: usize,
    pub n_terms: usize,
    /// `1 - t_{2 i0}`.
    pub seed_gap: f64,
    t_even: Vec<f64>,
    t_odd: Vec<f64>,
    x: Vec<f64>,
    cd: Vec<(f64, f64)>,
}

/// Runs the emission-time recurrence and derives positions and the
/// per-interval constants.
pub fn build_sequences(
    p: f64,
    eps: f64,
    i0: usize,
    n_terms: usize,
    seed_gap: f64,
) -> Result<CounterexampleSpec> {
    let params = counterexample_params(p, eps)?;
    if i0 < 2 {
        return Err(param("i0", format!("must be >= 2, got {i0}")));
    }
    if n_terms < 1 {
        return Err(param("N", "need at least one term"));
    }
    if !(seed_gap > 0.0 && seed_gap < 1.0) {
        return Err(param("seed_gap", format!("1 - t must lie in (0, 1), got {seed_gap}")));
    }
    let shrink = params.beta - params.alpha;
    let mut t_even = Vec::with_capacity(n_terms);
    let mut t_odd = Vec::with_capacity(n_terms);
    let mut gap = seed_gap; // 1 - t_{2k}
    for k in i0..i0 + n_terms {
        let te = 1.0 - gap;
        let kf = k as f64;
        let to_gap = kf.powf(-shrink) * gap;
        let to = 1.0 - to_gap;
        if !(to > te) {
            return Err(Error::Infeasible {
                k,
                reason: format!("t_{{2k+1}} = {to} does not exceed t_{{2k}} = {te}"),
            });
        }
        t_even.push(te);
        t_odd.push(to);
        if k + 1 < i0 + n_terms {
            let next = to + kf.powf(-params.lambda);
            if !(next < 1.0) {
                return Err(Error::Infeasible {
                    k,
                    reason: format!("t_{{2k+2}} = {next} is not below 1"),
                });
            }
            gap = 1.0 - next;
        }
    }
    let x: Vec<f64> = (0..n_terms)
        .map(|j| (1.0 - t_even[j]) * params.a(2 * (i0 + j)))
        .collect();
    let mut spec = CounterexampleSpec {
        params,
        i0,
        n_terms,
        seed_gap,
        t_even,
        t_odd,
        x,
        cd: Vec::new(),
    };
    spec.cd = (0..n_terms.saturating_sub(1))
        .map(|j| spec.solve_cd(i0 + j))
        .collect::<Result<_>>()?;
    Ok(spec)
}

/// Smallest `i0` of the form `i0_start * 10^j` for which `n_terms` jumps are
/// feasible from the given seed.
pub fn find_feasible_start(
    p: f64,
    eps: f64,
    n_terms: usize,
    seed_gap: f64,
    i0_start: usize,
) -> Result<CounterexampleSpec> {
    let mut i0 = i0_start.max(2);
    let mut last = None;
    while i0 <= 100_000_000 {
        match build_sequences(p, eps, i0, n_terms, seed_gap) {
            Ok(s) => return Ok(s),
            Err(e @ Error::Infeasible { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        i0 *= 10;
    }
    Err(last.unwrap_or_else(|| param("i0", "no feasible start found")))
}

impl CounterexampleSpec {
    pub fn i_end(&self) -> usize {
        self.i0 + self.n_terms - 1
    }

    fn j(&self, i: usize) -> Result<usize> {
        if i < self.i0 || i > self.i_end() {
            return Err(Error::Domain(format!(
                "index {i} outside {}..={}",
                self.i0,
                self.i_end()
            )));
        }
        Ok(i - self.i0)
    }

    /// `t_{2i}` and `t_{2i+1}`.
    pub fn t_pair(&self, i: usize) -> Result<(f64, f64)> {
        let j = self.j(i)?;
        Ok((self.t_even[j], self.t_odd[j]))
    }

    /// Jump position `x_i`.
    pub fn x(&self, i: usize) -> Result<f64> {
        Ok(self.x[self.j(i)?])
    }

    pub fn positions(&self) -> &[f64] {
        &self.x
    }

    /// Both sides of `x_i = (1 - t_{2i}) a_{2i} = (1 - t_{2i+1}) a_{2i+1}`.
    pub fn position_identity(&self, i: usize) -> Result<(f64, f64)> {
        let j = self.j(i)?;
        let a = &self.params;
        Ok((
            (1.0 - self.t_even[j]) * a.a(2 * i),
            (1.0 - self.t_odd[j]) * a.a(2 * i + 1),
        ))
    }

    fn h(&self, xi: f64) -> f64 {
        h_closed(self.params.p, xi)
    }

    fn solve_cd(&self, i: usize) -> Result<(f64, f64)> {
        let j = i - self.i0;
        let t1 = self.t_odd[j];
        let t2 = self.t_even[j + 1];
        let h1 = 0.5 * self.h(self.params.a(2 * i + 1));
        let h2 = 0.5 * self.h(self.params.a(2 * i + 2));
        if !(h1 > h2) {
            return Err(Error::Construction(format!(
                "interval {i}: h(a_{{2i+1}}) must exceed h(a_{{2i+2}})"
            )));
        }
        let d = (h2 * t2 - h1 * t1) / (h1 - h2);
        if !(d > 0.0) {
            return Err(Error::Construction(format!(
                "interval {i}: t_{{2i+1}} h(a_{{2i+1}}) < t_{{2i+2}} h(a_{{2i+2}}) fails (d = {d})"
            )));
        }
        Ok((h1 * (t1 + d), d))
    }

    /// `(C, d)` on `(x_{i+1}, x_i)`.
    pub fn xi_interval(&self, i: usize) -> Result<(f64, f64)> {
        let j = self.j(i)?;
        self.cd
            .get(j)
            .copied()
            .ok_or_else(|| Error::Domain(format!("no interval to the left of x_{i}")))
    }

    /// Residuals of the defining equation of `ξ` at the interval endpoints.
    pub fn xi_boundary_residuals(&self, i: usize) -> Result<(f64, f64)> {
        let (c, d) = self.xi_interval(i)?;
        let j = i - self.i0;
        let k = h_coeff(self.params.p);
        let e = 1.0 + 1.0 / self.params.p;
        let res = |x: f64, xi: f64| k * (x / (1.0 - xi)).powf(e) - (c / (xi + d)).powi(2) + 1.0;
        Ok((
            res(self.x[j], self.t_odd[j]),
            res(self.x[j + 1], self.t_even[j + 1]),
        ))
    }

    /// Jump index or interval index `i` with `x_{i+1} < x < x_i`.
    fn locate(&self, x: f64) -> Result<Located> {
        let n = self.x.len();
        if !(x >= self.x[n - 1] && x <= self.x[0]) {
            return Err(Error::Domain(format!(
                "x = {x} outside [{}, {}]",
                self.x[n - 1],
                self.x[0]
            )));
        }
        // positions decrease; count those strictly greater than x
        let above = self.x.partition_point(|&xi| xi > x);
        if above < n && self.x[above] == x {
            return Ok(Located::Jump(self.i0 + above));
        }
        Ok(Located::Inside(self.i0 + above - 1))
    }

    /// Emission time `ξ(x)` for `x` strictly inside `(x_{i+1}, x_i)`.
    pub fn xi_at(&self, i: usize, x: f64) -> Result<f64> {
        let (c, d) = self.xi_interval(i)?;
        let j = i - self.i0;
        let (lo, hi) = (self.t_odd[j], self.t_even[j + 1]);
        let k = h_coeff(self.params.p);
        let e = 1.0 + 1.0 / self.params.p;
        Ok(bisect(
            |xi| k * (x / (1.0 - xi)).powf(e) - (c / (xi + d)).powi(2) + 1.0,
            lo,
            hi,
            0.0,
        ))
    }

    /// `t(x)` with one-sided values `t_{2i}` / `t_{2i+1}` at `x_i`.
    pub fn t_of(&self, x: f64, side: Side) -> Result<f64> {
        match self.locate(x)? {
            Located::Jump(i) => {
                let (te, to) = self.t_pair(i)?;
                Ok(if side == Side::Right { te } else { to })
            }
            Located::Inside(i) => self.xi_at(i, x),
        }
    }

    /// `ρ(x) = -t(x) h(x / (1 - t(x)))`; left limit at a jump.
    pub fn rho(&self, x: f64) -> Result<f64> {
        self.rho_side(x, Side::Left)
    }

    pub fn rho_side(&self, x: f64, side: Side) -> Result<f64> {
        match self.locate(x)? {
            Located::Jump(i) => {
                let j = i - self.i0;
                let a = &self.params;
                Ok(match side {
                    Side::Right => -self.t_even[j] * self.h(a.a(2 * i)),
                    Side::Left => -self.t_odd[j] * self.h(a.a(2 * i + 1)),
                })
            }
            Located::Inside(i) => {
                let (c, d) = self.xi_interval(i)?;
                let xi = self.xi_at(i, x)?;
                Ok(-2.0 * c * xi / (xi + d))
            }
        }
    }

    /// `Φ(x) = Cξ/(ξ+d)` on the interval left of `x_i`.
    pub fn phi(&self, i: usize, x: f64) -> Result<f64> {
        let (c, d) = self.xi_interval(i)?;
        let xi = self.xi_at(i, x)?;
        Ok(c * xi / (xi + d))
    }

    /// Profile at `T = 1`: `(a/(p+1))^{1/p}` at jumps, `(f')^{-1}(x/(1-ξ))` inside.
    pub fn u_exact_at_t(&self, x: f64, side: Side) -> Result<f64> {
        let p = self.params.p;
        let speed = match self.locate(x)? {
            Located::Jump(i) => match side {
                Side::Right => self.params.a(2 * i),
                Side::Left => self.params.a(2 * i + 1),
            },
            Located::Inside(i) => x / (1.0 - self.xi_at(i, x)?),
        };
        Ok((speed / (p + 1.0)).powf(1.0 / p))
    }

    pub fn jump_series(&self, s: f64, n_max: usize) -> Result<Vec<f64>> {
        self.params.jump_series(self.i0, s, n_max)
    }

    pub fn to_kv(&self) -> String {
        format!(
            "p={}\neps={}\ni0={}\nn_terms={}\nseed_gap={}\n",
            self.params.p, self.params.eps, self.i0, self.n_terms, self.seed_gap
        )
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let map = parse_kv(text)?;
        Self::from_map(&map)
    }

    pub(crate) fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        fn get<T: std::str::FromStr>(map: &BTreeMap<String, String>, k: &str) -> Result<T> {
            map.get(k)
                .ok_or_else(|| Error::Parse(format!("missing key `{k}`")))?
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("bad value for `{k}`")))
        }
        build_sequences(
            get(map, "p")?,
            get(map, "eps")?,
            get(map, "i0")?,
            get(map, "n_terms")?,
            get(map, "seed_gap")?,
        )
    }
}

enum Located {
    Jump(usize),
    Inside(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_for_p_one() {
        let e = 0.3;
        let c = counterexample_params(1.0, e).unwrap();
        assert!((c.lambda - (1.0 + 2.0 * e / 9.0)).abs() < 1e-15);
        assert!((c.alpha - (0.5 + e / 3.0)).abs() < 1e-15);
        assert!((c.beta - (0.5 + 5.0 * e / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn exponent_identity_and_limits() {
        for (p, e) in [(2.0, 0.3), (1.0, 0.5), (3.5, 0.01)] {
            let c = counterexample_params(p, e).unwrap();
            assert!(((c.beta - c.alpha) - (c.lambda - 1.0)).abs() < 1e-12);
            assert!(c.beta > c.alpha && c.alpha > 0.0 && c.lambda > 1.0);
        }
        let c = counterexample_params(2.0, 1e-14).unwrap();
        assert!((c.alpha - 2.0 / 3.0).abs() < 1e-13 && (c.lambda - 1.0).abs() < 1e-13);
        assert!(counterexample_params(0.5, 0.1).is_err());
        assert!(counterexample_params(1.0, 0.0).is_err());
    }

    #[test]
    fn kappa_values() {
        let c = counterexample_params(1.0, 0.5).unwrap();
        assert!((c.kappa() - 8.0 / 9.0).abs() < 1e-15);
        assert!(counterexample_params(2.0, 0.3).unwrap().kappa() < 1.0);
    }

    #[test]
    fn recurrence_too_aggressive_is_reported() {
        // the recurrence's multiplicative shrink outpaces the additive steps
        match build_sequences(1.0, 0.5, 10, 100, 0.5) {
            Err(Error::Infeasible { k, .. }) => assert!((10..110).contains(&k)),
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn feasible_build() {
        let s = build_sequences(1.0, 1e-3, 10_000, 1000, 0.5).unwrap();
        let mut prev = 0.0;
        for i in s.i0..=s.i_end() {
            let (te, to) = s.t_pair(i).unwrap();
            assert!(prev < te && te < to && to < 1.0);
            prev = to;
            let (l, r) = s.position_identity(i).unwrap();
            assert!((l - r).abs() <= 1e-14 * l);
            assert!(s.params.a(2 * i) < s.params.a(2 * i + 1));
        }
        assert!(s.positions().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn feasible_start_search() {
        let s = find_feasible_start(1.0, 0.01, 100, 0.5, 10).unwrap();
        assert!(s.i0 >= 100);
        assert_eq!(s.n_terms, 100);
    }

    fn small() -> CounterexampleSpec {
        build_sequences(1.0, 1e-3, 10_000, 20, 0.5).unwrap()
    }

    #[test]
    fn xi_interval_properties() {
        let s = small();
        for i in s.i0..s.i_end() {
            let (r1, r2) = s.xi_boundary_residuals(i).unwrap();
            assert!(r1.abs() < 1e-10 && r2.abs() < 1e-10);
            let (hi, lo) = (s.x(i).unwrap(), s.x(i + 1).unwrap());
            let mut prev_xi = f64::NEG_INFINITY;
            let mut prev_phi = f64::NEG_INFINITY;
            // sweep right-to-left: ξ and Φ must increase
            for k in 1..100 {
                let x = hi - (hi - lo) * k as f64 / 100.0;
                let xi = s.xi_at(i, x).unwrap();
                let phi = s.phi(i, x).unwrap();
                assert!(xi > prev_xi && phi > prev_phi);
                prev_xi = xi;
                prev_phi = phi;
            }
        }
        assert!(s.xi_interval(s.i_end()).is_err());
    }

    #[test]
    fn rho_at_jumps_and_monotone() {
        let s = small();
        for i in s.i0..=s.i_end() {
            let x = s.x(i).unwrap();
            let (te, to) = s.t_pair(i).unwrap();
            let a = &s.params;
            let r = s.rho_side(x, Side::Right).unwrap();
            let l = s.rho_side(x, Side::Left).unwrap();
            assert!((r + te * h_closed(1.0, a.a(2 * i))).abs() < 1e-15);
            assert!((l + to * h_closed(1.0, a.a(2 * i + 1))).abs() < 1e-15);
            assert!(l < r);
        }
        let (lo, hi) = (s.positions()[s.n_terms - 1], s.positions()[0]);
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=10_000 {
            let x = lo + (hi - lo) * k as f64 / 10_000.0;
            let r = s.rho(x).unwrap();
            assert!(r >= prev, "x={x}");
            prev = r;
        }
        assert!(s.rho(hi * 1.1).is_err());
    }

    #[test]
    fn exact_profile_values() {
        let s = small();
        let a = s.params;
        for i in s.i0..=s.i_end() {
            let x = s.x(i).unwrap();
            let r = s.u_exact_at_t(x, Side::Right).unwrap();
            let l = s.u_exact_at_t(x, Side::Left).unwrap();
            let fi = i as f64;
            assert!((r - fi.powf(-a.beta) / 2.0).abs() < 1e-16);
            assert!((l - fi.powf(-a.alpha) / 2.0).abs() < 1e-16);
            assert!(((l - r) - a.jump(i)).abs() < 1e-15);
            if i > s.i0 {
                let near = s.u_exact_at_t(x * (1.0 + 1e-12), Side::Left).unwrap();
                assert!((near - r).abs() < 1e-9);
            }
            if i < s.i_end() {
                let near = s.u_exact_at_t(x * (1.0 - 1e-12), Side::Left).unwrap();
                assert!((near - l).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn jump_series_basics() {
        let a = counterexample_params(1.0, 0.5).unwrap();
        let sums = a.jump_series(10, 1.0, 10).unwrap();
        assert_eq!(sums, vec![a.jump(10)]);
        let sums = a.jump_series(2, 0.5, 1000).unwrap();
        assert!(sums.windows(2).all(|w| w[1] > w[0]));
        assert!(a.jump_series(2, 1.5, 10).is_err());
    }

    #[test]
    fn kv_roundtrip() {
        let s = small();
        assert_eq!(CounterexampleSpec::from_kv(&s.to_kv()).unwrap(), s);
    }
}
