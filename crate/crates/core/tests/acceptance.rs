//! Acceptance gate: every criterion runs at its pinned tolerance and prints
//! one PASS/FAIL line. The process exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use interflux::exact::counterexample::build_sequences;
use interflux::exact::{BackwardData, Side};
use interflux::flux::{holder_exponent_estimate, singular_map_lr, singular_map_rl};
use interflux::pvar::{embedding_check, tv_s_bruteforce, tv_s_exact, SampledSignal};
use interflux::solver::Initial;
use interflux::verify::{
    blowup_experiment, convergence_experiment, holder_lemma_suite, max_principle_experiment,
    quadratic_pair, run_suite, smoothing_experiment, SmoothingSetup, Suite, SuiteConfig, Verdict,
    BLOWUP_STAIRCASE, VALIDATION_STAIRCASE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn random_signal(rng: &mut ChaCha8Rng, max_len: usize) -> SampledSignal {
    let n = rng.gen_range(1..=max_len);
    let values = (0..n)
        .map(|_| {
            // a few repeated values exercise ties
            if rng.gen_bool(0.15) {
                0.5
            } else {
                rng.gen_range(-1.0..1.0)
            }
        })
        .collect();
    SampledSignal::from_values(values).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for s in [0.25, 1.0 / 3.0, 0.5, 0.75, 1.0] {
        for _ in 0..500 {
            let sig = random_signal(&mut rng, 12);
            let dp = tv_s_exact(&sig, s).unwrap().value;
            let bf = tv_s_bruteforce(&sig, s).unwrap();
            worst = worst.max((dp - bf).abs() / bf.abs().max(1.0));
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("max relative gap {worst:.2e} over 2500 signals (tol 1e-12)"),
    }
}

fn embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs = [(0.25, 0.5), (0.25, 1.0), (1.0 / 3.0, 0.75), (0.5, 0.75), (0.5, 1.0)];
    let mut violations = 0;
    let mut checked = 0;
    for _ in 0..1000 {
        let sig = random_signal(&mut rng, 40);
        for &(s, t) in &pairs {
            let e = embedding_check(&sig, s, t).unwrap();
            checked += 1;
            if e.lhs - e.rhs > 1e-12 * e.rhs.abs().max(1.0) {
                violations += 1;
            }
        }
    }
    Outcome {
        pass: violations == 0,
        detail: format!("{violations} violations in {checked} checks"),
    }
}

fn holder_exponents() -> Outcome {
    let pair = quadratic_pair(1.0).unwrap();
    let s = pair.s_bound;
    let n = 256;
    // each map over its whole domain inside the max-principle range
    let rl = holder_exponent_estimate(|v| singular_map_rl(&pair, v).unwrap_or(f64::NAN), (0.0, s), n).unwrap();
    let lr = holder_exponent_estimate(|v| singular_map_lr(&pair, v).unwrap_or(f64::NAN), (1.0, s), n).unwrap();
    let gd = holder_exponent_estimate(|xi| pair.left.deriv_inv(xi).unwrap_or(f64::NAN), (0.0, 2.0), n).unwrap();
    let ok_rl = (rl - 0.5).abs() <= 0.05;
    let ok_lr = lr >= 0.95;
    let ok_gd = (gd - 1.0).abs() <= 0.05;
    let suite = holder_lemma_suite(&pair).unwrap();
    Outcome {
        pass: ok_rl && ok_lr && ok_gd,
        detail: format!(
            "g_-^-1(f) {rl:.4} (want 0.5+-0.05), f_+^-1(g) {lr:.4} (want >=0.95), (g')^-1 {gd:.4} (want 1+-0.05); \
             orientation-aware suite: {}",
            suite.verdict()
        ),
    }
}

fn blowup_series() -> Outcome {
    let n = [1_000, 10_000, 100_000, 1_000_000];
    let mut pass = true;
    let mut detail = Vec::new();
    for (p, eps) in [(1.0, 0.5), (2.0, 0.3)] {
        let r = blowup_experiment(p, eps, &n).unwrap();
        pass &= r.verdict() == Verdict::Pass;
        detail.push(format!(
            "(p={p}, eps={eps}) slope {:.4} vs {:.4}, tail {:.2}%",
            r.find_fit("slope_s_crit").unwrap(),
            r.find_fit("expected_slope").unwrap(),
            100.0 * r.find_check("tail_increment_s_sub").unwrap().value
        ));
    }
    Outcome { pass, detail: detail.join("; ") }
}

fn exact_consistency() -> Outcome {
    let spec = build_sequences(1.0, 1e-3, 10_000, 1_000, 0.5).unwrap();
    let bd = BackwardData::from_counterexample(&spec, 2, 100.0).unwrap();
    let t = bd.t_final;
    let mut worst_value = 0.0f64;
    let mut worst_jump = 0.0f64;
    let mut worst_identity = 0.0f64;
    for i in spec.i0..=spec.i_end() {
        let x = spec.x(i).unwrap();
        let l = bd.eval(x, t, Side::Left).unwrap();
        let r = bd.eval(x, t, Side::Right).unwrap();
        worst_value = worst_value
            .max((l - spec.u_exact_at_t(x, Side::Left).unwrap()).abs())
            .max((r - spec.u_exact_at_t(x, Side::Right).unwrap()).abs());
        worst_jump = worst_jump.max(((l - r) - spec.params.jump(i)).abs());
        let (a, b) = spec.position_identity(i).unwrap();
        worst_identity = worst_identity.max((a - b).abs());
    }
    let pos = spec.positions();
    let (lo, hi) = (pos[pos.len() - 1], pos[0]);
    let mut monotone = true;
    let mut prev = f64::NEG_INFINITY;
    for k in 0..=100_000 {
        let x = lo + (hi - lo) * k as f64 / 100_000.0;
        let v = spec.rho(x.min(hi)).unwrap();
        monotone &= v >= prev;
        prev = v;
    }
    Outcome {
        pass: worst_value <= 1e-10 && worst_jump <= 1e-10 && worst_identity <= 1e-14 && monotone,
        detail: format!(
            "N={} jumps: value err {worst_value:.2e}, jump err {worst_jump:.2e}, x_i identity {worst_identity:.2e}, rho monotone {monotone}",
            spec.n_terms
        ),
    }
}

fn scheme_validation() -> Outcome {
    let bd = VALIDATION_STAIRCASE.build(1.0, 1000.0).unwrap();
    let half_width = -VALIDATION_STAIRCASE.first_level + 0.5;
    let r = convergence_experiment(&bd, half_width, &[2000, 4000, 8000]).unwrap();
    let rows = &r.find_series("l1").unwrap().rows;
    Outcome {
        pass: r.verdict() == Verdict::Pass,
        detail: format!(
            "k={} levels, L1 errors {:.3e} {:.3e} {:.3e}, orders {:.3} {:.3} (min 0.4)",
            bd.k(),
            rows[0][1],
            rows[1][1],
            rows[2][1],
            rows[1][2],
            rows[2][2]
        ),
    }
}

fn max_principle() -> Outcome {
    let r = max_principle_experiment(7, 20, 1000).unwrap();
    Outcome {
        pass: r.verdict() == Verdict::Pass,
        detail: format!(
            "20 runs: max(sup - S) {:.3e} (<= 1e-9), mass residual {:.2e} (<= 1e-10)",
            r.find_check("bound_overshoot").unwrap().value,
            r.find_check("mass_residual").unwrap().value
        ),
    }
}

fn smoothing_contrast() -> Outcome {
    let bd = BLOWUP_STAIRCASE.build(1.0, 1000.0).unwrap();
    let u0 = bd.initial_data();
    let r = smoothing_experiment(
        "smoothing_blowup",
        &bd.pair,
        &Initial::Piecewise(&u0),
        &SmoothingSetup {
            half_width: -BLOWUP_STAIRCASE.first_level + 0.5,
            window: 1.0,
            times: vec![1.0],
            grids: vec![2000, 4000, 8000],
            s: Some(0.5),
            blowup_data: true,
            cfl: interflux::solver::DEFAULT_CFL,
        },
    )
    .unwrap();
    let tv = &r.find_series("tv").unwrap().rows;
    let change = r.find_check("tv_s_refinement_change").unwrap();
    let growth = r.find_check("tv_1_growth").unwrap();
    Outcome {
        pass: change.ok && growth.ok,
        detail: format!(
            "TV^1/2 {:.4} -> {:.4} ({:.2}% change, < 10%), TV^1 {:.4} -> {:.4} ({:.2}% growth, >= 50%)",
            tv[1][2],
            tv[2][2],
            100.0 * change.value,
            tv[1][3],
            tv[2][3],
            100.0 * growth.value
        ),
    }
}

fn trace_bound() -> Outcome {
    let r = run_suite(Suite::Traces, &SuiteConfig::default()).unwrap().remove(0);
    let detail = format!(
        "verdict {}: ratio spread {:.3} (< 0.5), finest-step growth {:.3} (<= 0.05){}",
        r.verdict(),
        r.find_check("left_ratio_spread").map_or(f64::NAN, |c| c.value),
        r.find_check("left_ratio_growth").map_or(f64::NAN, |c| c.value),
        if r.diagnostics.is_empty() { String::new() } else { format!("; {}", r.diagnostics.join("; ")) }
    );
    Outcome { pass: r.verdict() == Verdict::Pass, detail }
}

fn interface_conditions() -> Outcome {
    let r = run_suite(Suite::Interface, &SuiteConfig::default()).unwrap().remove(0);
    let rows = &r.find_series("metrics").unwrap().rows;
    let rh: Vec<String> = rows.iter().map(|row| format!("{:.2e}", row[1])).collect();
    let iec: Vec<String> = rows.iter().map(|row| format!("{:.4}", row[2])).collect();
    Outcome {
        pass: r.verdict() == Verdict::Pass,
        detail: format!(
            "RH median [{}], iec fraction [{}], discrete balance {:.1e}",
            rh.join(", "),
            iec.join(", "),
            r.find_check("discrete_balance").unwrap().value
        ),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "p-variation oracle equivalence", 30, oracle_equivalence),
        (2, "embedding inequality", 30, embedding),
        (3, "Hoelder exponents of the inverse maps", 10, holder_exponents),
        (4, "blow-up of the critical jump series", 120, blowup_series),
        (5, "exact solution consistency", 60, exact_consistency),
        (6, "scheme against the backward solution", 180, scheme_validation),
        (7, "max principle and mass balance", 120, max_principle),
        (8, "BV^1/2 smoothing vs BV blow-up", 180, smoothing_contrast),
        (9, "interface trace bound", 180, trace_bound),
        (10, "interface conditions", 180, interface_conditions),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = out.pass && in_time;
        println!(
            "criterion {id:>2} [{}] {name}: {} ({:.2} s, limit {limit} s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
