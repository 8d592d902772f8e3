//! Godunov finite-volume scheme for `u_t + F(x, u)_x = 0` with `F = g` on
//! `x < 0` and `F = f` on `x > 0`.
//!
//! The interface sits on a cell edge. Its numerical flux realises the
//! connection at the two critical points, and both neighbouring cells use
//! the same value, so the discrete Rankine–Hugoniot condition holds exactly.

use std::io::Write;

use crate::error::{param, Error, Result};
use crate::flux::{FluxPair, FluxSpec};
use crate::pvar::fmt17;

/// Default Courant number.
pub const DEFAULT_CFL: f64 = 0.45;

/// Uniform grid on `[-M, M]` with an even number of cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub half_width: f64,
    pub n_cells: usize,
}

impl Grid {
    pub fn new(half_width: f64, n_cells: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(param("half_width", format!("must be positive, got {half_width}")));
        }
        if n_cells < 2 || !n_cells.is_multiple_of(2) {
            return Err(param(
                "n_cells",
                format!("must be even and at least 2, got {n_cells}"),
            ));
        }
        Ok(Grid {
            half_width,
            n_cells,
        })
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n_cells as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.dx()
    }

    /// Position of edge `i`; edge `0` is `-M`, edge `n_cells` is `M`.
    pub fn edge(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.dx()
    }

    /// Index of the edge at `x = 0`.
    pub fn interface_edge(&self) -> usize {
        self.n_cells / 2
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }
}

/// Godunov flux of a single convex flux between states `a` (left) and `b`.
///
/// Equals the minimum of `flux` over `[a, b]` when `a <= b` and the maximum
/// over `[b, a]` otherwise.
#[inline]
pub fn godunov_interior_flux(flux: &FluxSpec, a: f64, b: f64) -> f64 {
    let th = flux.theta();
    flux.eval(a.max(th)).max(flux.eval(b.min(th)))
}

/// `max(g(max(a, θ_g)), f(min(b, θ_f)))`, the flux through `x = 0`.
#[inline]
pub fn interface_godunov_flux(pair: &FluxPair, a: f64, b: f64) -> f64 {
    let g = &pair.left;
    let f = &pair.right;
    g.eval(a.max(g.theta())).max(f.eval(b.min(f.theta())))
}

/// Time step `cfl * dx / K` with `K` the pair's wave-speed bound.
pub fn cfl_dt(pair: &FluxPair, grid: &Grid, cfl: f64) -> Result<f64> {
    if !(cfl > 0.0 && cfl < 1.0) {
        return Err(param("cfl", format!("must lie in (0, 1), got {cfl}")));
    }
    if !(pair.speed_bound > 0.0) {
        return Err(Error::DegenerateFlux(
            "the wave-speed bound vanishes on the data range".into(),
        ));
    }
    Ok(cfl * grid.dx() / pair.speed_bound)
}

/// Edge fluxes for a state. `out` has `n_cells + 1` entries; the boundary
/// edges use copy (outflow) ghost cells.
pub fn edge_fluxes(pair: &FluxPair, grid: &Grid, u: &[f64], out: &mut [f64]) {
    let n = grid.n_cells;
    let mid = grid.interface_edge();
    let g = &pair.left;
    let f = &pair.right;
    out[0] = godunov_interior_flux(g, u[0], u[0]);
    for e in 1..mid {
        out[e] = godunov_interior_flux(g, u[e - 1], u[e]);
    }
    out[mid] = interface_godunov_flux(pair, u[mid - 1], u[mid]);
    for e in mid + 1..n {
        out[e] = godunov_interior_flux(f, u[e - 1], u[e]);
    }
    out[n] = godunov_interior_flux(f, u[n - 1], u[n - 1]);
}

/// One conservative update in place. Returns the interface flux used.
pub fn step(state: &mut [f64], pair: &FluxPair, grid: &Grid, dt: f64) -> Result<f64> {
    let mut fluxes = vec![0.0; grid.n_cells + 1];
    step_with(state, pair, grid, dt, &mut fluxes)
}

fn step_with(
    state: &mut [f64],
    pair: &FluxPair,
    grid: &Grid,
    dt: f64,
    fluxes: &mut [f64],
) -> Result<f64> {
    if state.len() != grid.n_cells {
        return Err(param(
            "state",
            format!("{} values for {} cells", state.len(), grid.n_cells),
        ));
    }
    let dx = grid.dx();
    if !(dt > 0.0) || dt * pair.speed_bound > dx * (1.0 + 1e-12) {
        return Err(Error::Stability(format!(
            "dt = {dt} violates dt * K <= dx with K = {}, dx = {dx}",
            pair.speed_bound
        )));
    }
    edge_fluxes(pair, grid, state, fluxes);
    let r = dt / dx;
    for (i, u) in state.iter_mut().enumerate() {
        *u -= r * (fluxes[i + 1] - fluxes[i]);
    }
    Ok(fluxes[grid.interface_edge()])
}

/// Piecewise-constant profile: `values[k]` on `[breaks[k-1], breaks[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstant {
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breaks.len() + 1 {
            return Err(param(
                "values",
                format!("{} breaks need {} values, got {}", breaks.len(), breaks.len() + 1, values.len()),
            ));
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Construction("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewiseConstant { breaks, values })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.values[self.breaks.partition_point(|&b| b <= x)]
    }

    /// Cell values with each breakpoint moved to its nearest edge.
    pub fn discretize(&self, grid: &Grid) -> Vec<f64> {
        let dx = grid.dx();
        let snapped: Vec<f64> = self
            .breaks
            .iter()
            .map(|&b| grid.edge(((b + grid.half_width) / dx).round().clamp(0.0, grid.n_cells as f64) as usize))
            .collect();
        (0..grid.n_cells)
            .map(|i| {
                let c = grid.center(i);
                self.values[snapped.partition_point(|&b| b <= c)]
            })
            .collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

const GAUSS_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GAUSS_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Five-point Gauss average of `u` over `[a, b]`.
pub fn gauss_average(u: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    0.5 * GAUSS_NODES
        .iter()
        .zip(GAUSS_WEIGHTS)
        .map(|(x, w)| w * u(c + h * x))
        .sum::<f64>()
}

/// Cell averages of a function.
pub fn discretize_fn(u: &dyn Fn(f64) -> f64, grid: &Grid) -> Vec<f64> {
    (0..grid.n_cells)
        .map(|i| gauss_average(u, grid.edge(i), grid.edge(i + 1)))
        .collect()
}

/// Initial data accepted by [`solve`].
pub enum Initial<'a> {
    /// Discretised by five-point Gauss cell averages.
    Function(&'a (dyn Fn(f64) -> f64 + Sync)),
    /// Breakpoints snapped to the nearest edge.
    Piecewise(&'a PiecewiseConstant),
    /// Cell averages given directly.
    Cells(Vec<f64>),
}

impl Initial<'_> {
    pub fn cells(&self, grid: &Grid) -> Result<Vec<f64>> {
        let v = match self {
            Initial::Function(u) => discretize_fn(*u, grid),
            Initial::Piecewise(p) => p.discretize(grid),
            Initial::Cells(c) => c.clone(),
        };
        if v.len() != grid.n_cells {
            return Err(param(
                "initial",
                format!("{} cell values for {} cells", v.len(), grid.n_cells),
            ));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(param("initial", "non-finite initial value"));
        }
        Ok(v)
    }
}

/// Per-step interface traces: the first cell on each side of `x = 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceSeries {
    pub times: Vec<f64>,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    /// Interface flux used during the step ending at `times[k]`.
    pub flux: Vec<f64>,
}

/// Snapshots, traces and conservation diagnostics of one run.
#[derive(Debug, Clone)]
pub struct SpaceTimeSolution {
    pub grid: Grid,
    pub cfl: f64,
    pub t_final: f64,
    pub times: Vec<f64>,
    pub snapshots: Vec<Vec<f64>>,
    pub traces: TraceSeries,
    pub steps: usize,
    /// Largest per-step `|Δmass - dt (F_in - F_out)|` relative to `∫|u|`.
    pub max_mass_residual: f64,
    /// Max-principle bound of the pair.
    pub s_bound: f64,
}

impl SpaceTimeSolution {
    /// Snapshot at the requested time closest to `t`.
    pub fn snapshot_at(&self, t: f64) -> &[f64] {
        let k = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(k, _)| k)
            .unwrap_or(0);
        &self.snapshots[k]
    }

    pub fn final_state(&self) -> &[f64] {
        self.snapshots.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Largest `|u|` over every snapshot.
    pub fn sup_norm(&self) -> f64 {
        self.snapshots
            .iter()
            .flatten()
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    fn header(&self, pair: &FluxPair, w: &mut impl Write) -> Result<()> {
        writeln!(w, "# left flux: {}", pair.left)?;
        writeln!(w, "# right flux: {}", pair.right)?;
        writeln!(
            w,
            "# grid: half_width={} n_cells={}",
            self.grid.half_width, self.grid.n_cells
        )?;
        writeln!(w, "# cfl={} T={} steps={}", self.cfl, self.t_final, self.steps)?;
        Ok(())
    }

    /// Rows `(x_center, value)` of snapshot `k`.
    pub fn write_snapshot_csv(&self, pair: &FluxPair, k: usize, mut w: impl Write) -> Result<()> {
        self.header(pair, &mut w)?;
        writeln!(w, "# t={}", self.times[k])?;
        writeln!(w, "x,value")?;
        for (i, v) in self.snapshots[k].iter().enumerate() {
            writeln!(w, "{},{}", fmt17(self.grid.center(i)), fmt17(*v))?;
        }
        Ok(())
    }

    /// Rows `(t, u_left, u_right, flux)`.
    pub fn write_traces_csv(&self, pair: &FluxPair, mut w: impl Write) -> Result<()> {
        self.header(pair, &mut w)?;
        writeln!(w, "t,u_left,u_right,flux")?;
        let tr = &self.traces;
        for k in 0..tr.times.len() {
            writeln!(
                w,
                "{},{},{},{}",
                fmt17(tr.times[k]),
                fmt17(tr.left[k]),
                fmt17(tr.right[k]),
                fmt17(tr.flux[k])
            )?;
        }
        Ok(())
    }
}

/// Runs the scheme to `t_final`.
///
/// Steps are shortened to land exactly on every requested snapshot time and
/// on `t_final`; the final state is always stored as the last snapshot. The
/// initial data must respect the pair's declared data bound so that the
/// wave-speed bound is valid for the whole run.
pub fn solve(
    pair: &FluxPair,
    initial: &Initial<'_>,
    grid: &Grid,
    t_final: f64,
    cfl: f64,
    snapshot_times: &[f64],
) -> Result<SpaceTimeSolution> {
    if !(t_final > 0.0) || !t_final.is_finite() {
        return Err(param("t_final", format!("must be positive, got {t_final}")));
    }
    let dt_max = cfl_dt(pair, grid, cfl)?;
    let mut u = initial.cells(grid)?;
    let sup = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sup > pair.data_bound * (1.0 + 1e-12) {
        return Err(param(
            "initial",
            format!(
                "sup |u0| = {sup} exceeds the pair's data bound {}",
                pair.data_bound
            ),
        ));
    }
    let mut targets: Vec<f64> = snapshot_times
        .iter()
        .copied()
        .filter(|&t| (0.0..t_final).contains(&t))
        .collect();
    targets.push(t_final);
    targets.sort_by(f64::total_cmp);
    targets.dedup();

    let dx = grid.dx();
    let mid = grid.interface_edge();
    let mut fluxes = vec![0.0; grid.n_cells + 1];
    let mut sol = SpaceTimeSolution {
        grid: *grid,
        cfl,
        t_final,
        times: Vec::new(),
        snapshots: Vec::new(),
        traces: TraceSeries::default(),
        steps: 0,
        max_mass_residual: 0.0,
        s_bound: pair.s_bound,
    };
    let mut t = 0.0;
    let mut next = 0;
    if targets[0] == 0.0 {
        sol.times.push(0.0);
        sol.snapshots.push(u.clone());
        next = 1;
    }
    while next < targets.len() {
        let target = targets[next];
        let mut dt = dt_max;
        let landing = t + dt >= target * (1.0 - 1e-14);
        if landing {
            dt = target - t;
        }
        if dt <= 0.0 {
            next += 1;
            continue;
        }
        let before: f64 = u.iter().sum::<f64>() * dx;
        let iflux = step_with(&mut u, pair, grid, dt, &mut fluxes)?;
        let after: f64 = u.iter().sum::<f64>() * dx;
        let expected = dt * (fluxes[0] - fluxes[grid.n_cells]);
        let scale = u.iter().map(|v| v.abs()).sum::<f64>() * dx + dt * fluxes[0].abs().max(fluxes[grid.n_cells].abs());
        let resid = (after - before - expected).abs() / scale.max(f64::MIN_POSITIVE);
        sol.max_mass_residual = sol.max_mass_residual.max(resid);
        t = if landing { target } else { t + dt };
        sol.steps += 1;
        sol.traces.times.push(t);
        sol.traces.left.push(u[mid - 1]);
        sol.traces.right.push(u[mid]);
        sol.traces.flux.push(iflux);
        if landing {
            sol.times.push(target);
            sol.snapshots.push(u.clone());
            next += 1;
        }
    }
    Ok(sol)
}

/// `Σ dx |u_i - avg_i(reference)|` with five-point Gauss cell averages.
pub fn l1_error(snapshot: &[f64], reference: &dyn Fn(f64) -> f64, grid: &Grid) -> f64 {
    let dx = grid.dx();
    snapshot
        .iter()
        .enumerate()
        .map(|(i, v)| (v - gauss_average(reference, grid.edge(i), grid.edge(i + 1))).abs())
        .sum::<f64>()
        * dx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flux::{power_law_flux, shifted_quadratic};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn quad_pair(m: f64) -> FluxPair {
        FluxPair::new(
            shifted_quadratic(-1.0, 10.0).unwrap(),
            power_law_flux(2.0, 10.0).unwrap(),
            m,
        )
        .unwrap()
    }

    #[test]
    fn interior_flux_examples() {
        let f = power_law_flux(2.0, 10.0).unwrap();
        assert_eq!(godunov_interior_flux(&f, -1.0, 1.0), 0.0);
        assert_eq!(godunov_interior_flux(&f, 1.0, -1.0), 1.0);
        assert_eq!(godunov_interior_flux(&f, 2.0, 2.0), 4.0);
        assert_eq!(godunov_interior_flux(&f, 1.0, 3.0), 1.0);
        assert_eq!(godunov_interior_flux(&f, -3.0, -1.0), 1.0);
        assert_eq!(godunov_interior_flux(&f, 3.0, -1.0), 9.0);
    }

    #[test]
    fn interface_flux_examples() {
        let pair = quad_pair(1.0);
        assert_eq!(interface_godunov_flux(&pair, 0.0, 0.0), 0.0);
        assert_eq!(interface_godunov_flux(&pair, 2.0, 0.0), 3.0);
        assert_eq!(interface_godunov_flux(&pair, 0.0, -2.0), 4.0);
        assert_eq!(interface_godunov_flux(&pair, -3.0, 5.0), 0.0);
    }

    #[test]
    fn time_step() {
        let pair = quad_pair(1.0);
        let grid = Grid::new(1.0, 200).unwrap();
        assert!((pair.speed_bound - 2.0 * 2f64.sqrt()).abs() < 1e-9);
        let dt = cfl_dt(&pair, &grid, 0.45).unwrap();
        assert!((dt - 0.45 * 0.01 / pair.speed_bound).abs() < 1e-15);
        assert!(cfl_dt(&pair, &grid, 0.0).is_err());
        assert!(cfl_dt(&pair, &grid, 1.5).is_err());
        let mut u = vec![0.0; 200];
        assert!(matches!(step(&mut u, &pair, &grid, 1.0), Err(Error::Stability(_))));
    }

    #[test]
    fn grid_layout() {
        let g = Grid::new(2.0, 4).unwrap();
        assert_eq!(g.dx(), 1.0);
        assert_eq!(g.center(0), -1.5);
        assert_eq!(g.edge(g.interface_edge()), 0.0);
        assert!(Grid::new(1.0, 3).is_err());
    }

    #[test]
    fn constant_state_far_from_interface_is_unchanged() {
        let pair = quad_pair(1.0);
        let grid = Grid::new(1.0, 100).unwrap();
        let mut u = vec![0.7; 100];
        let dt = cfl_dt(&pair, &grid, 0.45).unwrap();
        step(&mut u, &pair, &grid, dt).unwrap();
        for (i, v) in u.iter().enumerate() {
            if i + 1 < 50 || i > 51 {
                assert_eq!(*v, 0.7, "cell {i}");
            }
        }
    }

    #[test]
    fn constant_critical_data_develops_structure() {
        let pair = quad_pair(1.0);
        let grid = Grid::new(1.0, 100).unwrap();
        let mut u = vec![0.0; 100];
        let dt = cfl_dt(&pair, &grid, 0.45).unwrap();
        for _ in 0..10 {
            step(&mut u, &pair, &grid, dt).unwrap();
        }
        assert!(u.iter().any(|v| v.abs() > 1e-6));
    }

    fn classical_step(u: &mut [f64], f: &FluxSpec, r: f64) {
        let n = u.len();
        let fl: Vec<f64> = (0..=n)
            .map(|e| {
                let a = u[e.saturating_sub(1)];
                let b = u[e.min(n - 1)];
                godunov_interior_flux(f, a, b)
            })
            .collect();
        for i in 0..n {
            u[i] -= r * (fl[i + 1] - fl[i]);
        }
    }

    #[test]
    fn equal_fluxes_reduce_to_classical_godunov() {
        // f = g: the interface formula is the ordinary Godunov flux.
        let f = shifted_quadratic(0.0, 10.0).unwrap();
        let f2 = f.scaled(1.0).unwrap();
        let mut pair = quad_pair(2.0);
        pair.left = f;
        pair.right = f2;
        pair.speed_bound = 4.0;
        let grid = Grid::new(1.0, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u0: Vec<f64> = (0..64).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (mut a, mut b) = (u0.clone(), u0);
        let dt = 0.45 * grid.dx() / 4.0;
        for _ in 0..20 {
            step(&mut a, &pair, &grid, dt).unwrap();
            classical_step(&mut b, &f, dt / grid.dx());
        }
        assert_eq!(a, b);
    }

    #[test]
    fn riemann_problem_refinement_reduces_error() {
        // f = g = u^2 shifted; right-moving shock from (1, 0) with speed 1.
        let f = shifted_quadratic(0.0, 10.0).unwrap();
        let pair = FluxPair {
            left: f,
            right: f,
            gamma: 1.0,
            nu: 1.0,
            s_star: 1.0,
            data_bound: 1.0,
            s_bound: 1.0,
            speed_bound: 2.0,
        };
        let init = PiecewiseConstant::new(vec![-0.5], vec![1.0, 0.0]).unwrap();
        let exact = |x: f64| if x < -0.5 + 0.25 { 1.0 } else { 0.0 };
        let mut errs = Vec::new();
        for n in [100, 200, 400] {
            let grid = Grid::new(1.0, n).unwrap();
            let sol = solve(&pair, &Initial::Piecewise(&init), &grid, 0.25, 0.45, &[]).unwrap();
            errs.push(l1_error(sol.final_state(), &exact, &grid));
        }
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn l1_error_examples() {
        let grid = Grid::new(1.0, 50).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|x| 0.3 * x).collect();
        assert!(l1_error(&u, &|x| 0.3 * x, &grid) < 1e-14);
        let v: Vec<f64> = u.iter().map(|x| x + 0.1).collect();
        assert!((l1_error(&v, &|x| 0.3 * x, &grid) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn snapshots_land_exactly() {
        let pair = quad_pair(1.0);
        let grid = Grid::new(2.0, 80).unwrap();
        let u0 = |x: f64| 0.5 * x.sin();
        let sol = solve(&pair, &Initial::Function(&u0), &grid, 0.5, 0.45, &[0.0, 0.1, 0.3]).unwrap();
        assert_eq!(sol.times, vec![0.0, 0.1, 0.3, 0.5]);
        assert_eq!(sol.traces.times.len(), sol.steps);
        assert_eq!(*sol.traces.times.last().unwrap(), 0.5);
        assert!(sol.max_mass_residual < 1e-12);
        assert!(sol.sup_norm() <= pair.s_bound + 1e-9);
    }

    #[test]
    fn data_above_bound_rejected() {
        let pair = quad_pair(1.0);
        let grid = Grid::new(1.0, 10).unwrap();
        let r = solve(&pair, &Initial::Cells(vec![2.0; 10]), &grid, 0.1, 0.45, &[]);
        assert!(matches!(r, Err(Error::Parameter { .. })));
    }

    #[test]
    fn snapping_breakpoints() {
        let grid = Grid::new(1.0, 10).unwrap();
        let p = PiecewiseConstant::new(vec![0.04, 0.51], vec![1.0, 2.0, 3.0]).unwrap();
        let u = p.discretize(&grid);
        assert_eq!(u[4], 1.0);
        assert_eq!(u[5], 2.0);
        assert_eq!(u[7], 2.0);
        assert_eq!(u[8], 3.0);
        assert_eq!(p.eval(0.04), 2.0);
    }

    proptest! {
        #[test]
        fn scheme_is_order_preserving(seed in 0u64..1000) {
            let pair = quad_pair(1.5);
            let grid = Grid::new(1.0, 40).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut u: Vec<f64> = (0..40).map(|_| rng.gen_range(-1.5..1.0)).collect();
            let mut v: Vec<f64> = u.iter().map(|x| x + rng.gen_range(0.0..0.5)).collect();
            let dt = cfl_dt(&pair, &grid, 0.45).unwrap();
            step(&mut u, &pair, &grid, dt).unwrap();
            step(&mut v, &pair, &grid, dt).unwrap();
            for (a, b) in u.iter().zip(&v) {
                prop_assert!(a <= &(b + 1e-14));
            }
        }
    }
}
