//! Fractional total variation of sampled signals.
//!
//! `TV^s u = sup Σ |u(x_i) - u(x_{i-1})|^{1/s}` over subdivisions, i.e. the
//! Wiener `p`-variation with `p = 1/s`. On a finite sample the supremum runs
//! over subsequences and is computed exactly by dynamic programming. For a
//! function sampled from a continuum this is a lower bound of its true value.

use std::io::{BufRead, Write};

use crate::error::{param, Error, Result};

/// Samples `values[i]` at strictly increasing positions `xs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(param("values", "signal needs at least one sample"));
        }
        if xs.len() != values.len() {
            return Err(param(
                "values",
                format!("{} positions but {} values", xs.len(), values.len()),
            ));
        }
        if let Some(i) = xs.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(param(
                "xs",
                format!("positions not strictly increasing at index {}", i + 1),
            ));
        }
        if let Some(i) = xs.iter().chain(&values).position(|v| !v.is_finite()) {
            return Err(param("values", format!("non-finite entry at index {i}")));
        }
        Ok(SampledSignal { xs, values })
    }

    /// Samples at positions `0, 1, 2, ...`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let xs = (0..values.len()).map(|i| i as f64).collect();
        SampledSignal::new(xs, values)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `max - min` of the values.
    pub fn osc(&self) -> f64 {
        osc(&self.values)
    }

    /// Reads a two-column `x,value` CSV. A non-numeric first line is taken as
    /// a header; blank lines and `#` comments are skipped.
    pub fn read_csv(reader: impl BufRead) -> Result<Self> {
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut cols = t.split(',').map(str::trim);
            let (a, b) = match (cols.next(), cols.next(), cols.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two comma-separated columns",
                        lineno + 1
                    )))
                }
            };
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(v)) => {
                    xs.push(x);
                    values.push(v);
                }
                _ if xs.is_empty() && a.parse::<f64>().is_err() => continue,
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: non-numeric entry",
                        lineno + 1
                    )))
                }
            }
        }
        if xs.is_empty() {
            return Err(Error::Parse("no samples in input".into()));
        }
        SampledSignal::new(xs, values).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Writes `x,value` rows with 17 significant digits.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "x,value")?;
        for (x, v) in self.xs.iter().zip(&self.values) {
            writeln!(w, "{},{}", fmt17(*x), fmt17(*v))?;
        }
        Ok(())
    }
}

/// Lossless decimal formatting with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn osc(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    hi - lo
}

/// An optimal subdivision and its value.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationReport {
    pub s: f64,
    pub value: f64,
    /// Indices into the input signal, strictly increasing.
    pub subdivision: Vec<usize>,
    pub osc: f64,
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(param("s", format!("must lie in (0, 1], got {s}")));
    }
    Ok(())
}

#[inline]
fn pw(d: f64, p: f64) -> f64 {
    if p == 1.0 {
        d
    } else if p == 2.0 {
        d * d
    } else {
        d.powf(p)
    }
}

/// Sum of `|Δ|^{1/s}` along a subdivision.
pub fn subdivision_sum(values: &[f64], subdivision: &[usize], s: f64) -> f64 {
    let p = 1.0 / s;
    subdivision
        .windows(2)
        .map(|w| pw((values[w[1]] - values[w[0]]).abs(), p))
        .sum()
}

/// Indices of the endpoints and of the strict turning points, with runs of
/// equal values collapsed to their first sample.
pub fn extrema_indices(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut distinct: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        if distinct.last().is_none_or(|&j| values[j] != values[i]) {
            distinct.push(i);
        }
    }
    // keep the true last index so the window endpoint is preserved
    if *distinct.last().unwrap() != n - 1 {
        let last = distinct.len() - 1;
        distinct[last] = n - 1;
    }
    if distinct.len() <= 2 {
        return distinct;
    }
    let mut out = Vec::with_capacity(distinct.len());
    out.push(distinct[0]);
    for w in distinct.windows(3) {
        let (a, b, c) = (values[w[0]], values[w[1]], values[w[2]]);
        if (b - a) * (c - b) < 0.0 {
            out.push(w[1]);
        }
    }
    out.push(*distinct.last().unwrap());
    out
}

/// Subsequence of endpoints and strict local extrema. Dropping points inside
/// monotone runs never changes `TV^s` because `1/s >= 1`.
pub fn extrema_reduce(signal: &SampledSignal) -> SampledSignal {
    let idx = extrema_indices(&signal.values);
    SampledSignal {
        xs: idx.iter().map(|&i| signal.xs[i]).collect(),
        values: idx.iter().map(|&i| signal.values[i]).collect(),
    }
}

/// Exact `TV^s` of the samples with an optimal subdivision.
pub fn tv_s_exact(signal: &SampledSignal, s: f64) -> Result<VariationReport> {
    check_s(s)?;
    Ok(tv_s_values(&signal.values, s))
}

pub(crate) fn tv_s_values(values: &[f64], s: f64) -> VariationReport {
    let idx = extrema_indices(values);
    let reduced: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    let local = if s == 1.0 {
        // every turning point is used by classical variation
        (0..reduced.len()).collect()
    } else {
        dp_subdivision(&reduced, 1.0 / s)
    };
    let subdivision: Vec<usize> = local.iter().map(|&k| idx[k]).collect();
    VariationReport {
        s,
        value: subdivision_sum(values, &subdivision, s),
        subdivision,
        osc: osc(values),
    }
}

/// `V(i) = max_{j<i} V(j) + |u_i - u_j|^p`, `V(0) = 0`.
///
/// `V` is non-decreasing, so when scanning `j` downward the quantity
/// `V(j) + max(u_i - min u[..=j], max u[..=j] - u_i)^p` bounds every remaining
/// candidate and the scan stops once it falls below the best value found.
/// Ties prefer fewer points, then the smaller predecessor.
fn dp_subdivision(u: &[f64], p: f64) -> Vec<usize> {
    let n = u.len();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut pmin = Vec::with_capacity(n);
    let mut pmax = Vec::with_capacity(n);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in u {
        lo = lo.min(v);
        hi = hi.max(v);
        pmin.push(lo);
        pmax.push(hi);
    }
    let mut val = vec![0.0f64; n];
    let mut len = vec![1usize; n];
    let mut pred = vec![usize::MAX; n];
    for i in 1..n {
        let ui = u[i];
        let mut best = f64::NEG_INFINITY;
        let mut best_len = usize::MAX;
        let mut best_j = usize::MAX;
        for j in (0..i).rev() {
            let reach = (ui - pmin[j]).max(pmax[j] - ui);
            if val[j] + pw(reach, p) < best {
                break;
            }
            let cand = val[j] + pw((ui - u[j]).abs(), p);
            let l = len[j] + 1;
            if cand > best || (cand == best && (l < best_len || (l == best_len && j < best_j))) {
                best = cand;
                best_len = l;
                best_j = j;
            }
        }
        val[i] = best;
        len[i] = best_len;
        pred[i] = best_j;
    }
    let mut out = Vec::with_capacity(len[n - 1]);
    let mut i = n - 1;
    loop {
        out.push(i);
        if pred[i] == usize::MAX {
            break;
        }
        i = pred[i];
    }
    out.reverse();
    out
}

/// Largest sum over every subsequence that keeps both endpoints.
pub fn tv_s_bruteforce(signal: &SampledSignal, s: f64) -> Result<f64> {
    check_s(s)?;
    let n = signal.len();
    if n > 20 {
        return Err(Error::Size(format!(
            "brute force is limited to 20 samples, got {n}"
        )));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let p = 1.0 / s;
    let u = &signal.values;
    let interior = n - 2;
    let mut best = 0.0f64;
    for mask in 0u32..(1u32 << interior) {
        let mut prev = 0;
        let mut sum = 0.0;
        for k in 0..interior {
            if mask & (1 << k) != 0 {
                sum += pw((u[k + 1] - u[prev]).abs(), p);
                prev = k + 1;
            }
        }
        sum += pw((u[n - 1] - u[prev]).abs(), p);
        best = best.max(sum);
    }
    Ok(best)
}

/// Both sides of `TV^s u <= osc(u)^{1/s - 1/t} TV^t u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn embedding_check(signal: &SampledSignal, s: f64, t: f64) -> Result<EmbeddingRecord> {
    check_s(s)?;
    check_s(t)?;
    if !(s < t) {
        return Err(param("s", format!("need s < t, got s = {s}, t = {t}")));
    }
    let lhs = tv_s_exact(signal, s)?.value;
    let tvt = tv_s_exact(signal, t)?.value;
    let rhs = signal.osc().powf(1.0 / s - 1.0 / t) * tvt;
    Ok(EmbeddingRecord {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
    })
}

/// `TV^s` of the samples with `a <= x <= b`; zero for an empty window.
pub fn tv_s_window(signal: &SampledSignal, a: f64, b: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    if !(a < b) {
        return Err(param("window", format!("need a < b, got [{a}, {b}]")));
    }
    let lo = signal.xs.partition_point(|&x| x < a);
    let hi = signal.xs.partition_point(|&x| x <= b);
    if hi <= lo {
        return Ok(0.0);
    }
    Ok(tv_s_values(&signal.values[lo..hi], s).value)
}
