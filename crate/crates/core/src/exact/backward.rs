//! Backward construction: from a staircase of interface levels to initial
//! data whose entropy solution is known in closed form on `(0, T]`.
//!
//! Levels `w_0 < ... < w_k <= 0` are attached to positions
//! `0 = x_0 < x_1 < ... < x_k = R`: the level on `(x_j, x_{j+1})` is `w_j`.
//! A left rarefaction fan centred at `(w_j, 0)` crosses the interface during
//! `(t_{2j+1}, t_{2j})` and re-emerges on the right as a fan that reaches
//! `(x_j, x_{j+1})` exactly at time `T`. Between consecutive fans a pair of
//! constant states separated by a shock (`a_i` on the right, `b_i` on the
//! left, meeting the interface at time `q_i`) closes the gap.

use std::io::Write;

use super::{hplus, CounterexampleSpec, Side};
use crate::error::{param, Error, Result};
use crate::flux::FluxPair;
use crate::pvar::fmt17;
use crate::roots::bisect;
use crate::solver::PiecewiseConstant;

/// State of one region of the space-time picture.
#[derive(Debug, Clone, Copy, PartialEq)]
enum State {
    Const(f64),
    /// Left rarefaction centred at `(w, 0)`.
    LeftFan(f64),
    /// Right-side image of the left fan at level index `j`.
    RightFan(usize),
}

/// Straight line in the `(t, x)` plane: `x = slope * (t - t0)`, optionally
/// shifted to pass through `x0` at `t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Line {
    x0: f64,
    slope: f64,
    t0: f64,
}

impl Line {
    fn at(&self, t: f64) -> f64 {
        self.x0 + self.slope * (t - self.t0)
    }
}

/// Geometry and states of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BackwardData {
    pub pair: FluxPair,
    pub t_final: f64,
    pub levels: Vec<f64>,
    pub positions: Vec<f64>,
    /// `T = t_0 > t_1 > ... > t_{2k} > 0`.
    pub times: Vec<f64>,
    /// Right states `c_j = (f')^{-1}(x_i / (T - t_j))`, `c_0` unused.
    pub c: Vec<f64>,
    /// Left states `d_j = g_+^{-1}(f(c_j))`, with `d_0 = u_-`.
    pub d: Vec<f64>,
    pub u_minus: f64,
    pub v_minus: f64,
    pub v_bar_minus: f64,
    /// Right shock speeds `s_i`, `i = 1..=k` stored at `i - 1`.
    pub s: Vec<f64>,
    /// Left shock speeds `S_i`.
    pub big_s: Vec<f64>,
    /// Times `q_i` at which shock `i` meets the interface.
    pub q: Vec<f64>,
    left_bounds: Vec<Line>,
    left_states: Vec<State>,
    right_bounds: Vec<Line>,
    right_states: Vec<State>,
}

impl BackwardData {
    /// Builds the construction for levels `w` on positions `x` (equal length
    /// `k + 1`, `x[0] = 0`).
    pub fn from_staircase(
        pair: &FluxPair,
        t_final: f64,
        positions: &[f64],
        levels: &[f64],
    ) -> Result<Self> {
        let t = t_final;
        if !(t > 0.0) {
            return Err(param("T", format!("must be positive, got {t}")));
        }
        if positions.len() != levels.len() || positions.len() < 2 {
            return Err(param(
                "levels",
                "need equally many levels and positions, at least two",
            ));
        }
        let k = positions.len() - 1;
        if positions[0] != 0.0 || positions.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Construction(
                "positions must start at 0 and increase strictly".into(),
            ));
        }
        if levels.windows(2).any(|w| !(w[0] < w[1])) || levels[k] > 0.0 {
            return Err(Error::Construction(
                "levels must increase strictly and stay <= 0".into(),
            ));
        }
        let h0 = hplus(pair, 0.0)?;
        if levels[0] > -t * h0 {
            return Err(Error::Construction(format!(
                "w_0 = {} must not exceed -T h_+(0) = {}",
                levels[0],
                -t * h0
            )));
        }
        let f = &pair.right;
        let g = &pair.left;

        let mut times = vec![t; 2 * k + 1];
        for i in 1..=k {
            times[2 * i - 1] = emission_time(pair, t, positions[i], levels[i - 1])?;
            times[2 * i] = emission_time(pair, t, positions[i], levels[i])?;
        }
        if times.windows(2).any(|w| !(w[0] > w[1])) || !(times[2 * k] > 0.0) {
            return Err(Error::Construction(format!(
                "emission times are not strictly decreasing to a positive value: {times:?}"
            )));
        }
        let mut c = vec![f64::NAN; 2 * k + 1];
        let mut d = vec![f64::NAN; 2 * k + 1];
        let u_minus = g.deriv_inv(-levels[0] / t)?;
        d[0] = u_minus;
        for j in 1..=2 * k {
            let i = j.div_ceil(2);
            c[j] = f.deriv_inv(positions[i] / (t - times[j]))?;
            d[j] = g.inv_plus(f.eval(c[j]))?;
        }
        let mut s = Vec::with_capacity(k);
        let mut big_s = Vec::with_capacity(k);
        let mut q = Vec::with_capacity(k);
        for i in 1..=k {
            let (c1, c2) = (c[2 * i - 1], c[2 * i]);
            let (d1, d2) = (d[2 * i - 1], d[2 * i]);
            if !(c1 > c2 && d1 > d2) {
                return Err(Error::Construction(format!(
                    "states at x_{i} are not ordered: c = ({c1}, {c2}), d = ({d1}, {d2})"
                )));
            }
            let si = (f.eval(c1) - f.eval(c2)) / (c1 - c2);
            let bi = (g.eval(d1) - g.eval(d2)) / (d1 - d2);
            let qi = t - positions[i] / si;
            if !(si > 0.0 && bi > 0.0 && qi > 0.0) {
                return Err(Error::Construction(format!(
                    "shock {i} does not reach the interface at a positive time (s = {si}, q = {qi})"
                )));
            }
            s.push(si);
            big_s.push(bi);
            q.push(qi);
        }

        let ray_l = |j: usize| Line {
            x0: 0.0,
            slope: g.deriv(d[j]),
            t0: times[j],
        };
        // anchored at (x_i, T) so the profile at T is split exactly at x_i
        let ray_r = |j: usize| Line {
            x0: positions[j.div_ceil(2)],
            slope: f.deriv(c[j]),
            t0: t,
        };
        let shock_l = |i: usize| Line {
            x0: 0.0,
            slope: big_s[i - 1],
            t0: q[i - 1],
        };
        let shock_r = |i: usize| Line {
            x0: positions[i],
            slope: s[i - 1],
            t0: t,
        };

        let mut left_bounds = vec![ray_l(0)];
        let mut left_states = vec![State::Const(u_minus), State::LeftFan(levels[0])];
        let mut right_bounds = Vec::new();
        let mut right_states = vec![State::RightFan(0)];
        for i in 1..=k {
            left_bounds.extend([ray_l(2 * i - 1), shock_l(i)]);
            left_states.extend([State::Const(d[2 * i - 1]), State::Const(d[2 * i])]);
            right_bounds.extend([ray_r(2 * i - 1), shock_r(i)]);
            right_states.extend([State::Const(c[2 * i - 1]), State::Const(c[2 * i])]);
            if i < k {
                left_bounds.push(ray_l(2 * i));
                left_states.push(State::LeftFan(levels[i]));
                right_bounds.push(ray_r(2 * i));
                right_states.push(State::RightFan(i));
            }
        }

        let bd = BackwardData {
            pair: pair.clone(),
            t_final: t,
            levels: levels.to_vec(),
            positions: positions.to_vec(),
            u_minus,
            v_minus: d[2 * k],
            v_bar_minus: c[2 * k],
            times,
            c,
            d,
            s,
            big_s,
            q,
            left_bounds,
            left_states,
            right_bounds,
            right_states,
        };
        let bp = bd.initial_breakpoints();
        if bp.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Construction(format!(
                "initial breakpoints overlap: {bp:?}"
            )));
        }
        Ok(bd)
    }

    pub fn k(&self) -> usize {
        self.levels.len() - 1
    }

    /// `{w_0, b_1(0), w_1, ..., b_k(0), w_k, 0}`.
    pub fn initial_breakpoints(&self) -> Vec<f64> {
        let k = self.k();
        let mut v = vec![self.levels[0]];
        for i in 1..=k {
            v.push(-self.big_s[i - 1] * self.q[i - 1]);
            v.push(self.levels[i]);
        }
        v.push(0.0);
        v
    }

    /// Piecewise-constant initial data `u_0^N`.
    pub fn initial_data(&self) -> PiecewiseConstant {
        let k = self.k();
        let mut values = vec![self.u_minus];
        for i in 1..=k {
            values.push(self.d[2 * i - 1]);
            values.push(self.d[2 * i]);
        }
        // the level w_k only fixes the far-field pair; d_{2k} continues to 0
        values.push(self.v_minus);
        values.push(self.v_bar_minus);
        PiecewiseConstant {
            breaks: self.initial_breakpoints(),
            values,
        }
    }

    /// Largest `|u|` attained by the construction.
    pub fn sup_norm(&self) -> f64 {
        self.c
            .iter()
            .chain(&self.d)
            .filter(|v| v.is_finite())
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Exact solution at `(x, t)`, `0 < t <= T`. On a curve of discontinuity
    /// `side` selects the one-sided limit.
    pub fn eval(&self, x: f64, t: f64, side: Side) -> Result<f64> {
        if !(t > 0.0 && t <= self.t_final) {
            return Err(param(
                "t",
                format!("must lie in (0, {}], got {t}", self.t_final),
            ));
        }
        let left = x < 0.0 || (x == 0.0 && side == Side::Left);
        let (bounds, states) = if left {
            (&self.left_bounds, &self.left_states)
        } else {
            (&self.right_bounds, &self.right_states)
        };
        // boundaries on each side of x = 0 form a sorted prefix of the list
        let idx = bounds
            .iter()
            .take_while(|b| {
                let bx = b.at(t);
                if side == Side::Left {
                    bx < x
                } else {
                    bx <= x
                }
            })
            .count();
        match states[idx] {
            State::Const(v) => Ok(v),
            State::LeftFan(w) => self.pair.left.deriv_inv((x - w) / t),
            State::RightFan(j) => self.right_fan(j, x, t),
        }
    }

    fn right_fan(&self, j: usize, x: f64, t: f64) -> Result<f64> {
        let w = self.levels[j];
        let lo = self.times[2 * j + 1];
        if x <= 0.0 {
            return self.pair.right.deriv_inv(0.0);
        }
        let pair = &self.pair;
        let tau = bisect(
            |tau| {
                let h = hplus(pair, x / (t - tau)).unwrap_or(f64::INFINITY);
                tau * h + w
            },
            lo,
            t,
            0.0,
        );
        pair.right.deriv_inv(x / (t - tau)).map_err(|e| {
            Error::Construction(format!("right fan {j} at (x={x}, t={t}): {e}"))
        })
    }

    /// The profile at `τ` taken as new initial data with horizon `T - τ`.
    pub fn rebase(&self, tau: f64) -> Result<Rebased<'_>> {
        if !(tau > 0.0 && tau < self.t_final) {
            return Err(param(
                "tau",
                format!("must lie in (0, {}), got {tau}", self.t_final),
            ));
        }
        Ok(Rebased { bd: self, tau })
    }

    /// Default rebasing time: half the earliest interface meeting time.
    pub fn default_rebase_time(&self) -> f64 {
        0.5 * self.q.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Rows `(x, value)` of the solution at time `t`.
    pub fn write_dense_csv(&self, xs: &[f64], t: f64, mut w: impl Write) -> Result<()> {
        writeln!(w, "# exact solution at t={t}")?;
        writeln!(w, "x,value")?;
        for &x in xs {
            let v = if t == 0.0 {
                self.initial_data().eval(x)
            } else {
                self.eval(x, t, Side::Right)?
            };
            writeln!(w, "{},{}", fmt17(x), fmt17(v))?;
        }
        Ok(())
    }
}

impl BackwardData {
    /// Staircase reproducing the explicit blow-up profile at `T = 1` on both
    /// sides of every jump. Each gap between jumps is split into `m >= 2`
    /// sub-intervals whose levels sample `ρ`; the first and last carry the
    /// one-sided limits so the jump values come out exact.
    pub fn from_counterexample(
        spec: &CounterexampleSpec,
        m: usize,
        domain_bound: f64,
    ) -> Result<Self> {
        if m < 2 {
            return Err(param("m", format!("need at least 2 sub-intervals, got {m}")));
        }
        let p = spec.params.p;
        let probe = FluxPair::counterexample(p, 1.0, domain_bound)?;
        let t = 1.0;
        let i_end = spec.i_end();
        let x_end = spec.x(i_end)?;
        let mut positions = vec![0.0, 0.5 * x_end, x_end];
        let mut levels = vec![
            -t * hplus(&probe, 0.0)? - 0.05,
            spec.rho_side(x_end, Side::Left)?,
        ];
        for i in (spec.i0..i_end).rev() {
            let (lo, hi) = (spec.x(i + 1)?, spec.x(i)?);
            let width = hi - lo;
            levels.push(spec.rho_side(lo, Side::Right)?);
            for j in 1..m - 1 {
                levels.push(spec.rho(lo + width * (j as f64 + 0.5) / m as f64)?);
            }
            levels.push(spec.rho_side(hi, Side::Left)?);
            for j in 1..m {
                positions.push(lo + width * j as f64 / m as f64);
            }
            positions.push(hi);
        }
        levels.push(spec.rho_side(spec.x(spec.i0)?, Side::Right)?);
        let bd = BackwardData::from_staircase(&probe, t, &positions, &levels)?;
        let pair = FluxPair::counterexample(p, bd.sup_norm(), domain_bound)?;
        BackwardData::from_staircase(&pair, t, &positions, &levels)
    }
}

/// Solves `h_+(x / (T - t)) = -w / t` for `t` in `(0, T)`.
fn emission_time(pair: &FluxPair, t_final: f64, x: f64, w: f64) -> Result<f64> {
    if !(w < 0.0) {
        return Err(Error::Construction(format!(
            "level {w} must be negative to emit at x = {x}"
        )));
    }
    Ok(bisect(
        |t| {
            let h = hplus(pair, x / (t_final - t)).unwrap_or(f64::INFINITY);
            t * h + w
        },
        0.0,
        t_final,
        0.0,
    ))
}

/// Solution restricted to `[τ, T]` and viewed from time `τ`.
#[derive(Debug, Clone, Copy)]
pub struct Rebased<'a> {
    pub bd: &'a BackwardData,
    pub tau: f64,
}

impl Rebased<'_> {
    pub fn horizon(&self) -> f64 {
        self.bd.t_final - self.tau
    }

    /// New initial datum.
    pub fn initial(&self, x: f64) -> f64 {
        self.bd.eval(x, self.tau, Side::Right).unwrap_or(f64::NAN)
    }

    /// Solution at local time `t` in `[0, T - τ]`.
    pub fn eval(&self, x: f64, t: f64, side: Side) -> Result<f64> {
        self.bd.eval(x, self.tau + t, side)
    }
}
