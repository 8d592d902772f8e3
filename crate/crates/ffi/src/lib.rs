//! C ABI over the `interflux` core.
//!
//! Every entry point returns an [`IfStatus`]; results come back through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`if_last_error`]. Handles are opaque and must be released with the
//! matching `*_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use interflux::exact::counterexample::{build_sequences, find_feasible_start, CounterexampleSpec};
use interflux::flux::FluxPair;
use interflux::pvar::{tv_s_exact, SampledSignal};
use interflux::solver::{interface_godunov_flux, solve, Grid, Initial, SpaceTimeSolution};
use interflux::Error;

/// Status codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IfStatus {
    Ok = 0,
    NullPointer = 1,
    /// A parameter or text input was rejected.
    InvalidArgument = 2,
    /// An argument lies outside the domain of a map.
    Domain = 3,
    /// Stability, degeneracy or construction failure.
    Numerical = 4,
    /// The counter-example recurrence left its admissible region.
    Infeasible = 5,
    /// The output buffer is too small.
    BufferTooSmall = 6,
    Panic = 7,
}

/// Flux pair prepared for a data bound.
pub struct IfPair(FluxPair);

/// Result of a solver run.
pub struct IfSolution(SpaceTimeSolution);

/// Sequences of the blow-up construction.
pub struct IfCounterexample(CounterexampleSpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> IfStatus {
    match e {
        Error::Parameter { .. } | Error::Parse(_) | Error::Hypothesis(_) | Error::Size(_) | Error::Io(_) => {
            IfStatus::InvalidArgument
        }
        Error::Domain(_) | Error::Range(_) => IfStatus::Domain,
        Error::Infeasible { .. } => IfStatus::Infeasible,
        Error::UndefinedExponent(_) | Error::Stability(_) | Error::DegenerateFlux(_) | Error::Construction(_) => {
            IfStatus::Numerical
        }
    }
}

struct Fail(IfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(IfStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `f`, records any error and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> IfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            IfStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            IfStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn slice<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn if_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `g = u^2 - 1` on the left, `f = |u|^{p+1}` on the right.
///
/// # Safety
/// The out pointer must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_pair_counterexample(
    p: f64,
    data_bound: f64,
    domain_bound: f64,
    out_pair: *mut *mut IfPair,
) -> IfStatus {
    guard(|| {
        let o = out(out_pair, "out_pair")?;
        *o = boxed(IfPair(FluxPair::counterexample(p, data_bound, domain_bound)?));
        Ok(())
    })
}

/// Pair from `key=value` text with `left.*`, `right.*` and `data_bound`.
///
/// # Safety
/// `text` must be a NUL-terminated string; the out pointer must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_pair_from_kv(text: *const c_char, out_pair: *mut *mut IfPair) -> IfStatus {
    guard(|| {
        let o = out(out_pair, "out_pair")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(IfStatus::InvalidArgument, "text is not UTF-8".into()))?;
        *o = boxed(IfPair(FluxPair::from_kv(text)?));
        Ok(())
    })
}

/// # Safety
/// `pair` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn if_pair_free(pair: *mut IfPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Max-principle bound `S` and the smoothing exponent `min(γ, ν)`.
///
/// # Safety
/// `pair` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_pair_bounds(pair: *const IfPair, s_bound: *mut f64, s_star: *mut f64) -> IfStatus {
    guard(|| {
        let p = &handle(pair, "pair")?.0;
        *out(s_bound, "s_bound")? = p.s_bound;
        *out(s_star, "s_star")? = p.s_star;
        Ok(())
    })
}

/// Godunov flux across `x = 0` for left state `a` and right state `b`.
///
/// # Safety
/// `pair` must be a live handle; `flux` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_interface_flux(pair: *const IfPair, a: f64, b: f64, flux: *mut f64) -> IfStatus {
    guard(|| {
        let p = &handle(pair, "pair")?.0;
        *out(flux, "flux")? = interface_godunov_flux(p, a, b);
        Ok(())
    })
}

/// Exact `TV^s` of `values[0..len]` and the size of an optimal subdivision.
///
/// # Safety
/// `values` must point to `len` readable doubles; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn if_tv_s(
    values: *const f64,
    len: usize,
    s: f64,
    tv: *mut f64,
    subdivision_size: *mut usize,
) -> IfStatus {
    guard(|| {
        let v = slice(values, len, "values")?;
        let tv = out(tv, "tv")?;
        let size = out(subdivision_size, "subdivision_size")?;
        let r = tv_s_exact(&SampledSignal::from_values(v.to_vec())?, s)?;
        *tv = r.value;
        *size = r.subdivision.len();
        Ok(())
    })
}

/// Runs the scheme from cell averages `initial[0..n_cells]` on
/// `[-half_width, half_width]` up to `t_final`.
///
/// # Safety
/// `pair` must be a live handle, `initial` must hold `n_cells` doubles and
/// The out pointer must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_solve(
    pair: *const IfPair,
    initial: *const f64,
    n_cells: usize,
    half_width: f64,
    t_final: f64,
    cfl: f64,
    out_solution: *mut *mut IfSolution,
) -> IfStatus {
    guard(|| {
        let p = &handle(pair, "pair")?.0;
        let u0 = slice(initial, n_cells, "initial")?;
        let o = out(out_solution, "out_solution")?;
        let grid = Grid::new(half_width, n_cells)?;
        let sol = solve(p, &Initial::Cells(u0.to_vec()), &grid, t_final, cfl, &[])?;
        *o = boxed(IfSolution(sol));
        Ok(())
    })
}

/// # Safety
/// `solution` must come from [`if_solve`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn if_solution_free(solution: *mut IfSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Number of time steps taken.
///
/// # Safety
/// `solution` must be a live handle; `steps` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_solution_steps(solution: *const IfSolution, steps: *mut usize) -> IfStatus {
    guard(|| {
        *out(steps, "steps")? = handle(solution, "solution")?.0.steps;
        Ok(())
    })
}

/// Copies the final cell averages into `buf`, which must hold `n_cells` values.
///
/// # Safety
/// `solution` must be a live handle; `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn if_solution_final_state(solution: *const IfSolution, buf: *mut f64, len: usize) -> IfStatus {
    guard(|| {
        let state = handle(solution, "solution")?.0.final_state();
        if len < state.len() {
            return Err(Fail(
                IfStatus::BufferTooSmall,
                format!("buffer holds {len} values, need {}", state.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(state.as_ptr(), buf, state.len());
        Ok(())
    })
}

/// Builds the blow-up sequences. `i0 = 0` searches for a feasible start.
///
/// # Safety
/// The out pointer must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_counterexample_build(
    p: f64,
    eps: f64,
    i0: usize,
    n_terms: usize,
    seed_gap: f64,
    out_cx: *mut *mut IfCounterexample,
) -> IfStatus {
    guard(|| {
        let o = out(out_cx, "out_cx")?;
        let spec = if i0 == 0 {
            find_feasible_start(p, eps, n_terms, seed_gap, 10)?
        } else {
            build_sequences(p, eps, i0, n_terms, seed_gap)?
        };
        *o = boxed(IfCounterexample(spec));
        Ok(())
    })
}

/// # Safety
/// `cx` must come from [`if_counterexample_build`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn if_counterexample_free(cx: *mut IfCounterexample) {
    if !cx.is_null() {
        drop(Box::from_raw(cx));
    }
}

/// First index `i0` and critical exponent `(1 + ε)/(p + 1)`.
///
/// # Safety
/// `cx` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_counterexample_info(
    cx: *const IfCounterexample,
    i0: *mut usize,
    critical_s: *mut f64,
) -> IfStatus {
    guard(|| {
        let c = &handle(cx, "cx")?.0;
        *out(i0, "i0")? = c.i0;
        *out(critical_s, "critical_s")? = c.params.critical_s();
        Ok(())
    })
}

/// Position `x_i` and jump `u(x_i-) - u(x_i+)` at time 1.
///
/// # Safety
/// `cx` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn if_counterexample_jump(
    cx: *const IfCounterexample,
    i: usize,
    x: *mut f64,
    jump: *mut f64,
) -> IfStatus {
    guard(|| {
        let c = &handle(cx, "cx")?.0;
        let (x, jump) = (out(x, "x")?, out(jump, "jump")?);
        *x = c.x(i)?;
        *jump = c.params.jump(i);
        Ok(())
    })
}
