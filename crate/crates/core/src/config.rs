//! Flat `key=value` run configuration. Values come from built-in defaults,
//! then an optional file, then command-line overrides; later sources win.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flux::{parse_kv, FluxPair, FluxSpec};
use crate::solver::PiecewiseConstant;
use crate::verify::{random_piecewise, SuiteConfig};

const DEFAULTS: &[(&str, &str)] = &[
    ("left.kind", "shifted_quadratic"),
    ("left.shift", "-1"),
    ("left.scale", "1"),
    ("left.domain_bound", "1000"),
    ("right.kind", "power_law"),
    ("right.exponent", "2"),
    ("right.scale", "1"),
    ("right.domain_bound", "1000"),
    ("grid.half_width", "4"),
    ("grid.n_cells", "2000"),
    ("cfl", "0.45"),
    ("t_final", "1"),
    ("snapshot_times", "0,0.5"),
    ("initial.kind", "random"),
    ("initial.pieces", "40"),
    ("initial.support", "3"),
    ("initial.low", "-1"),
    ("initial.high", "1"),
    ("initial.left", "1"),
    ("initial.right", "-1"),
    ("s_values", "0.5,1"),
    ("cx.p", "1"),
    ("cx.eps", "0.001"),
    ("cx.n", "1000"),
    ("cx.i0", "auto"),
    ("cx.seed_gap", "0.5"),
    ("cx.sub_intervals", "2"),
    ("cx.samples", "2001"),
    ("eval.t", "1"),
    ("eval.points", "1001"),
    ("verify.grids", "2000,4000,8000"),
    ("verify.blowup_n", "1000,10000,100000,1000000"),
    ("seed", "1"),
];

/// Keys that only make sense for one flux kind; absent from the defaults of the other.
const OPTIONAL: &[&str] = &["left.exponent", "right.shift"];

#[derive(Debug, Clone, PartialEq)]
pub enum InitialSpec {
    /// `pieces` uniform pieces on `[-support, support]`, values in `[low, high]`.
    Random { pieces: usize, support: f64, low: f64, high: f64 },
    /// `left` for `x < 0`, `right` for `x > 0`.
    Riemann { left: f64, right: f64 },
}

impl InitialSpec {
    /// Realises the data; random draws come from `seed` alone.
    pub fn build(&self, seed: u64) -> Result<PiecewiseConstant> {
        match *self {
            InitialSpec::Random { pieces, support, low, high } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random_piecewise(&mut rng, pieces, support, low, high)
            }
            InitialSpec::Riemann { left, right } => PiecewiseConstant::new(vec![0.0], vec![left, right]),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleConfig {
    pub p: f64,
    pub eps: f64,
    pub n_terms: usize,
    /// Fixed first index, or `None` to search upward from 10.
    pub i0: Option<usize>,
    pub seed_gap: f64,
    pub sub_intervals: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub left: FluxSpec,
    pub right: FluxSpec,
    pub half_width: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_final: f64,
    pub snapshot_times: Vec<f64>,
    pub initial: InitialSpec,
    pub s_values: Vec<f64>,
    pub counterexample: CounterexampleConfig,
    pub eval_t: f64,
    pub eval_points: usize,
    pub verify_grids: Vec<usize>,
    pub verify_blowup_n: Vec<usize>,
    pub seed: u64,
    /// The merged key-value map the config was built from.
    pub raw: BTreeMap<String, String>,
}

fn bad(key: &str, reason: impl std::fmt::Display) -> Error {
    Error::Parse(format!("invalid value for `{key}`: {reason}"))
}

struct Reader<'a>(&'a BTreeMap<String, String>);

impl Reader<'_> {
    fn raw(&self, key: &str) -> &str {
        self.0.get(key).map(String::as_str).unwrap_or("")
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.raw(key);
        raw.trim().parse().map_err(|_| bad(key, format!("cannot parse `{raw}`")))
    }

    fn positive(&self, key: &str) -> Result<f64> {
        let v: f64 = self.num(key)?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(bad(key, format!("must be positive, got {v}")))
        }
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>> {
        self.raw(key)
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad(key, format!("cannot parse `{s}`"))))
            .collect()
    }
}

impl RunConfig {
    /// Merges defaults, `file` text and `overrides`, then validates every field.
    pub fn load(file: Option<&str>, overrides: &[(String, String)]) -> Result<Self> {
        let mut map: BTreeMap<String, String> =
            DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let mut layer = |k: String, v: String| -> Result<()> {
            if !map.contains_key(&k) && !OPTIONAL.contains(&k.as_str()) {
                return Err(Error::Parse(format!("unknown key `{k}`")));
            }
            map.insert(k, v);
            Ok(())
        };
        if let Some(text) = file {
            for (k, v) in parse_kv(text)? {
                layer(k, v)?;
            }
        }
        for (k, v) in overrides {
            layer(k.trim().to_string(), v.trim().to_string())?;
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<String, String>) -> Result<Self> {
        let r = Reader(&map);
        let flux = |prefix: &str| -> Result<FluxSpec> {
            let mut sub = map.clone();
            // the kind decides which shape key is read; drop the other
            match r.raw(&format!("{prefix}kind")) {
                "power_law" => sub.remove(&format!("{prefix}shift")),
                _ => sub.remove(&format!("{prefix}exponent")),
            };
            FluxSpec::from_map(&sub, prefix).map_err(|e| bad(&format!("{prefix}*"), e))
        };
        let left = flux("left.")?;
        let right = flux("right.")?;

        let cfl: f64 = r.num("cfl")?;
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(bad("cfl", format!("must lie in (0, 1], got {cfl}")));
        }
        let n_cells: usize = r.num("grid.n_cells")?;
        if n_cells < 2 || !n_cells.is_multiple_of(2) {
            return Err(bad("grid.n_cells", format!("must be even and >= 2, got {n_cells}")));
        }
        let t_final = r.positive("t_final")?;
        let snapshot_times: Vec<f64> = r.list("snapshot_times")?;
        if let Some(t) = snapshot_times.iter().find(|&&t| !(0.0..=t_final).contains(&t)) {
            return Err(bad("snapshot_times", format!("{t} lies outside [0, t_final]")));
        }
        let initial = match r.raw("initial.kind") {
            "random" => {
                let pieces: usize = r.num("initial.pieces")?;
                let (low, high): (f64, f64) = (r.num("initial.low")?, r.num("initial.high")?);
                if pieces == 0 {
                    return Err(bad("initial.pieces", "must be at least 1"));
                }
                if !(low < high) {
                    return Err(bad("initial.high", format!("must exceed initial.low ({low})")));
                }
                InitialSpec::Random { pieces, support: r.positive("initial.support")?, low, high }
            }
            "riemann" => InitialSpec::Riemann {
                left: r.num("initial.left")?,
                right: r.num("initial.right")?,
            },
            other => return Err(bad("initial.kind", format!("expected random or riemann, got `{other}`"))),
        };
        let s_values: Vec<f64> = r.list("s_values")?;
        if let Some(s) = s_values.iter().find(|&&s| !(s > 0.0 && s <= 1.0)) {
            return Err(bad("s_values", format!("{s} lies outside (0, 1]")));
        }
        let i0 = match r.raw("cx.i0").trim() {
            "auto" => None,
            _ => Some(r.num::<usize>("cx.i0")?),
        };
        let counterexample = CounterexampleConfig {
            p: r.num("cx.p")?,
            eps: r.positive("cx.eps")?,
            n_terms: r.num("cx.n")?,
            i0,
            seed_gap: r.positive("cx.seed_gap")?,
            sub_intervals: r.num("cx.sub_intervals")?,
            samples: r.num("cx.samples")?,
        };
        if !(counterexample.p >= 1.0) {
            return Err(bad("cx.p", format!("must be >= 1, got {}", counterexample.p)));
        }
        if counterexample.n_terms < 2 {
            return Err(bad("cx.n", "need at least two jumps"));
        }
        if counterexample.sub_intervals < 2 {
            return Err(bad("cx.sub_intervals", "must be at least 2"));
        }
        let eval_t: f64 = r.num("eval.t")?;
        if !(0.0..=1.0).contains(&eval_t) {
            return Err(bad("eval.t", format!("must lie in [0, 1], got {eval_t}")));
        }
        let verify_grids: Vec<usize> = r.list("verify.grids")?;
        if verify_grids.iter().any(|&n| n < 2 || !n.is_multiple_of(2)) {
            return Err(bad("verify.grids", "grid sizes must be even and >= 2"));
        }
        let verify_blowup_n: Vec<usize> = r.list("verify.blowup_n")?;
        Ok(RunConfig {
            left,
            right,
            half_width: r.positive("grid.half_width")?,
            n_cells,
            cfl,
            t_final,
            snapshot_times,
            initial,
            s_values,
            counterexample,
            eval_t,
            eval_points: r.num("eval.points")?,
            verify_grids,
            verify_blowup_n,
            seed: r.num("seed")?,
            raw: map,
        })
    }

    /// The flux pair prepared for data bounded by `m`.
    pub fn pair(&self, m: f64) -> Result<FluxPair> {
        FluxPair::new(self.left, self.right, m)
    }

    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            grids: self.verify_grids.clone(),
            blowup_n: self.verify_blowup_n.clone(),
            cfl: self.cfl,
            ..SuiteConfig::default()
        }
    }

    /// Merged configuration as `key=value` lines, sorted by key.
    pub fn to_kv(&self) -> String {
        self.raw.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// Splits `key=value`.
pub fn parse_override(s: &str) -> Result<(String, String)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("override `{s}` is not key=value")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}
