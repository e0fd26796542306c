//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary (`harness = false`).

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quadsum_core::functionals::{
    bmo_norm_step, john_nirenberg_ratio, luxemburg_norm, luxemburg_norm_unit, mean_identity,
    orlicz_properties_check, BmoOptions, StepSequence, YoungFunction,
};
use quadsum_core::singular::{
    conjugate_function, correction_terms, ij_decomposition, partial_sum_residual, pv_transform,
    PvKernel,
};
use quadsum_core::{
    analyze_1d, analyze_2d, conjugate_dirichlet_tangent_form, dirichlet_kernels, make_grid,
    partial_sum_1d_grid, rectangular_sum_grid, QuadraticLadder, SampledField1D, SampledField2D,
};
use quadsum_harness::experiments::overall_ratio;
use quadsum_harness::{
    convergence_experiment, default_family, emit_report, weak_type_experiment, ExperimentConfig,
    ResultTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// `Σ c·cos(k x + p)` with `1..=terms` random terms of frequency `≤ band`.
fn random_poly_1d(rng: &mut ChaCha8Rng, band: i64) -> Vec<(f64, i64, f64)> {
    let terms = rng.gen_range(1..=8);
    (0..terms)
        .map(|_| {
            (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0..=band),
                rng.gen_range(0.0..2.0 * PI),
            )
        })
        .collect()
}

fn eval_1d(terms: &[(f64, i64, f64)], x: f64) -> f64 {
    terms
        .iter()
        .map(|&(c, k, p)| c * (k as f64 * x + p).cos())
        .sum()
}

fn random_poly_2d(rng: &mut ChaCha8Rng, band: i64) -> Vec<(f64, i64, i64, f64)> {
    let terms = rng.gen_range(1..=8);
    (0..terms)
        .map(|_| {
            (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0..=band),
                rng.gen_range(-band..=band),
                rng.gen_range(0.0..2.0 * PI),
            )
        })
        .collect()
}

fn eval_2d(terms: &[(f64, i64, i64, f64)], x: f64, y: f64) -> f64 {
    terms
        .iter()
        .map(|&(c, a, b, p)| c * (a as f64 * x + b as f64 * y + p).cos())
        .sum()
}

fn kernel_identity() -> Outcome {
    let g = make_grid(256).unwrap();
    let mut worst = 0.0f64;
    for t in g.offset_nodes() {
        // Direct sine sum as the third route.
        let mut direct = 0.0;
        for n in 0..=64usize {
            if n > 0 {
                direct += (n as f64 * t).sin();
            }
            let closed = dirichlet_kernels(n, t).conjugate;
            let tangent = conjugate_dirichlet_tangent_form(n, t);
            worst = worst
                .max((closed - tangent).abs())
                .max((closed - direct).abs())
                .max((tangent - direct).abs());
        }
    }
    outcome(worst < 1e-12, format!("max residual {worst:.3e} (< 1e-12)"))
}

fn partial_sum_identity() -> Outcome {
    let g = make_grid(256).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let terms = random_poly_1d(&mut rng, 48);
        let f = SampledField1D::from_fn(g, |x| eval_1d(&terms, x)).unwrap();
        for n in 0..=32 {
            worst = worst.max(partial_sum_residual(&f, n).unwrap());
        }
    }
    outcome(worst < 1e-10, format!("max residual {worst:.3e} (< 1e-10)"))
}

fn quadratic_decomposition() -> Outcome {
    let g = make_grid(128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let terms = random_poly_2d(&mut rng, 12);
        let f = SampledField2D::from_fn(g, |x, y| eval_2d(&terms, x, y)).unwrap();
        for n in 1..=8 {
            worst = worst.max(correction_terms(&f, n).unwrap().residual);
        }
    }
    let f = SampledField2D::from_fn(g, |x, y| x.cos() * y.cos()).unwrap();
    let quarter = f.scale(0.25);
    let c = correction_terms(&f, 1).unwrap();
    let closed = [&c.s1, &c.s2, &c.s3]
        .iter()
        .map(|s| s.max_abs_diff(&quarter))
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-8 && closed < 1e-8,
        format!("split residual {worst:.3e}, cos x cos y terms vs 1/4 {closed:.3e} (< 1e-8)"),
    )
}

fn expansion_identities() -> Outcome {
    let g = make_grid(128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let terms = random_poly_2d(&mut rng, 10);
    let f = SampledField2D::from_fn(g, |x, y| eval_2d(&terms, x, y)).unwrap();
    let (mut ij, mut split, mut tangent) = (0.0f64, 0.0f64, 0.0f64);
    for n in 1..=8 {
        let p = ij_decomposition(&f, n).unwrap();
        ij = ij.max(p.ij_residual);
        split = split.max(p.split_residual);
        tangent = tangent.max(p.tangent_residual);
    }
    outcome(
        ij < 1e-6 && split < 1e-6 && tangent < 1e-12,
        format!("I-J {ij:.3e}, I1-I2-I0 {split:.3e} (< 1e-6), tangent {tangent:.3e} (< 1e-12)"),
    )
}

fn spectral_vs_quadrature() -> Outcome {
    let g = make_grid(256).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let terms = random_poly_1d(&mut rng, 32);
        let f = SampledField1D::from_fn(g, |x| eval_1d(&terms, x)).unwrap();
        let s = analyze_1d(&f, 32).unwrap();
        let spectral = partial_sum_1d_grid(&conjugate_function(&s), 32, g).unwrap();
        let quad = pv_transform(&f, PvKernel::Conjugate);
        worst = worst.max(spectral.max_abs_diff(&quad));
    }
    outcome(worst < 1e-8, format!("sup difference {worst:.3e} (< 1e-8)"))
}

/// Root of `t ln t = 1` by bisection on `[1, e]`.
fn t_star() -> f64 {
    let (mut lo, mut hi) = (1.0f64, std::f64::consts::E);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid.ln() < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn orlicz_closed_forms() -> Outcome {
    let psi = YoungFunction::exp_minus_one();
    let phi = YoungFunction::llogl();
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    let c = 1.7;
    let e1 = rel(luxemburg_norm_unit(&[c; 8], &psi), c / 2f64.ln());
    let e2 = rel(
        luxemburg_norm(&[1.0, 0.0], &[0.25, 0.75], &psi),
        1.0 / 5f64.ln(),
    );
    let e3 = rel(luxemburg_norm_unit(&[c; 8], &phi), c / t_star());
    let worst = e1.max(e2).max(e3);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = make_grid(16).unwrap();
    let mut holds = 0;
    for i in 0..100 {
        let terms = random_poly_2d(&mut rng, 4);
        let f = SampledField2D::from_fn(g, |x, y| eval_2d(&terms, x, y)).unwrap();
        // Normalize to total measure one, alternating the two moduli.
        let w = vec![1.0 / (g.size() * g.size()) as f64; g.size() * g.size()];
        let m = if i % 2 == 0 { &psi } else { &phi };
        let r = orlicz_properties_check(f.values(), &w, m, &mut rng).unwrap();
        if r.d1_holds && r.d3_holds {
            holds += 1;
        }
    }
    outcome(
        worst < 1e-10 && holds == 100,
        format!("max relative error {worst:.3e} (< 1e-10), properties held on {holds}/100"),
    )
}

/// Dense oracle: endpoints on a uniform `1/q` grid of `[0, 1]`, exact
/// integration of the step function over each interval.
fn brute_force_bmo(values: &[f64], q: usize) -> f64 {
    let n = values.len();
    let cells = n as f64;
    let mut best = 0.0f64;
    for ia in 0..q {
        for ib in ia + 1..=q {
            let (a, b) = (ia as f64 / q as f64, ib as f64 / q as f64);
            let pieces: Vec<(f64, f64)> = (0..n)
                .filter_map(|k| {
                    let lo = (k as f64 / cells).max(a);
                    let hi = ((k + 1) as f64 / cells).min(b);
                    (hi > lo).then(|| (hi - lo, values[k]))
                })
                .collect();
            let len = b - a;
            let mean = pieces.iter().map(|(w, v)| w * v).sum::<f64>() / len;
            let osc = pieces
                .iter()
                .map(|(w, v)| w * (v - mean).abs())
                .sum::<f64>()
                / len;
            best = best.max(osc);
        }
    }
    let mean = values.iter().sum::<f64>() / cells;
    best + mean.abs()
}

fn bmo_checks() -> Outcome {
    let opts = BmoOptions::default();
    let c = -2.375;
    let constant = bmo_norm_step(&StepSequence::new(vec![c; 5]).unwrap(), &opts).norm;
    let pair = bmo_norm_step(&StepSequence::new(vec![0.0, 1.0]).unwrap(), &opts).norm;
    let oracle = brute_force_bmo(&[0.0, 1.0], 400);
    let pair_err = (pair - oracle).abs().max((pair - 1.0).abs());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=12);
        let values: Vec<f64> = (0..len).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let sup = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let norm = bmo_norm_step(&StepSequence::new(values).unwrap(), &opts).norm;
        if norm > 3.0 * sup {
            violations += 1;
        }
    }
    outcome(
        constant == c.abs() && pair_err < 1e-3 && violations == 0,
        format!(
            "constant {constant} vs {} , (0,1) norm {pair:.6} vs oracle {oracle:.6}, 3 sup violations {violations}/1000",
            c.abs()
        ),
    )
}

fn john_nirenberg() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let seqs: Vec<StepSequence> = (0..500)
        .map(|_| {
            let len = rng.gen_range(2..=10);
            StepSequence::new((0..len).map(|_| rng.gen_range(-3.0..3.0)).collect()).unwrap()
        })
        .collect();
    let max_ratio = |r: usize| {
        let opts = BmoOptions {
            refinement: r,
            ..BmoOptions::default()
        };
        seqs.iter()
            .map(|s| john_nirenberg_ratio(s, &opts))
            .fold(0.0, f64::max)
    };
    let (coarse, fine) = (max_ratio(8), max_ratio(16));
    let change = (fine - coarse).abs() / coarse;
    outcome(
        coarse.is_finite() && fine.is_finite() && change <= 0.1,
        format!(
            "max ratio {coarse:.6} (r=8), {fine:.6} (r=16), change {:.2}%",
            100.0 * change
        ),
    )
}

fn weak_type() -> Outcome {
    let run = |grid| {
        let cfg = ExperimentConfig {
            grid,
            order: 32,
            refinement: 4,
            ..ExperimentConfig::default()
        };
        weak_type_experiment(&cfg).unwrap()
    };
    let (coarse, fine) = (run(128), run(256));
    let per_function = |t: &ResultTable| -> Vec<f64> {
        let i = t.column_index("ratio").unwrap();
        t.rows_where("kind", "max")
            .map(|r| r[i].as_num().unwrap())
            .collect()
    };
    let (a, b) = (
        overall_ratio(&coarse).unwrap(),
        overall_ratio(&fine).unwrap(),
    );
    let stable = |x: f64, y: f64| x > 0.0 && y > 0.0 && y / x <= 2.0 && x / y <= 2.0;
    let all_stable = per_function(&coarse)
        .iter()
        .zip(per_function(&fine))
        .all(|(&x, y)| stable(x, y));
    outcome(
        a.is_finite() && stable(a, b) && all_stable,
        format!(
            "constant {a:.4} (G=128), {b:.4} (G=256); per-function maxima within 2x: {all_stable}"
        ),
    )
}

fn convergence_trend() -> Outcome {
    let cfg = ExperimentConfig {
        grid: 256,
        order: 64,
        a: 1.0,
        ..ExperimentConfig::default()
    };
    let family = default_family(cfg.seed);
    let t = convergence_experiment(&cfg).unwrap();
    let col = |name: &str| t.column_index(name).unwrap();
    let (fi, mi, med, ex, bv) = (
        col("function"),
        col("m"),
        col("median"),
        col("exactness"),
        col("bound_violations"),
    );
    let mut notes = Vec::new();
    let mut pass = true;
    for f in &family {
        let rows: Vec<_> = t
            .rows()
            .iter()
            .filter(|r| r[fi].as_text() == Some(f.name()))
            .collect();
        let at = |m: f64| {
            rows.iter()
                .find(|r| r[mi].as_num() == Some(m))
                .map(|r| r[med].as_num().unwrap())
                .unwrap()
        };
        match f.class() {
            quadsum_harness::family::FunctionClass::Smooth => {
                let (m8, m64) = (at(8.0), at(64.0));
                pass &= m64 < m8;
                notes.push(format!(
                    "{}: median {m8:.3e} (m=8) -> {m64:.3e} (m=64)",
                    f.name()
                ));
            }
            quadsum_harness::family::FunctionClass::Polynomial { degree } => {
                let mut exact = 0.0f64;
                let mut violations = 0.0;
                for r in rows
                    .iter()
                    .filter(|r| r[mi].as_num().unwrap() >= degree as f64)
                {
                    exact = exact.max(r[ex].as_num().unwrap());
                    violations += r[bv].as_num().unwrap();
                }
                pass &= exact < 1e-12 && violations == 0.0;
                notes.push(format!(
                    "{}: exactness {exact:.1e}, bound violations {violations}",
                    f.name()
                ));
            }
            _ => {}
        }
    }
    outcome(pass, notes.join("; "))
}

fn step_integral() -> Outcome {
    let g = make_grid(64).unwrap();
    let mut worst = 0.0f64;
    let mut inputs = 0;
    for f in default_family(0) {
        let field = f.sample(g).unwrap();
        let s = analyze_2d(&field, 31, 31).unwrap();
        let reference = rectangular_sum_grid(&s, 31, 31, g).unwrap();
        let ladder = QuadraticLadder::new(&s, g, 32).unwrap();
        for j in (0..64).step_by(3) {
            for l in (0..64).step_by(5) {
                let sums = ladder.sequence(j, l);
                for n in [1usize, 4, 9, 16, 31] {
                    for a in [0.5, 1.0] {
                        let id = mean_identity(&sums[..=n], reference.get(j, l), a);
                        worst = worst.max(id.residual);
                        inputs += 1;
                    }
                }
            }
        }
    }
    outcome(
        worst < 1e-13,
        format!("max residual {worst:.3e} over {inputs} inputs (< 1e-13)"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        grid: 32,
        order: 8,
        lambda_count: 16,
        psi: Some("log(1 + x)".into()),
        seed: 42,
        ..ExperimentConfig::default()
    };
    let mut identical = true;
    for (name, run) in [
        (
            "weak",
            weak_type_experiment as fn(&ExperimentConfig) -> anyhow::Result<ResultTable>,
        ),
        ("conv", convergence_experiment),
    ] {
        let mut bytes = Vec::new();
        for i in 0..2 {
            let path = dir.path().join(format!("{name}-{i}.csv"));
            emit_report(&run(&cfg).unwrap(), &path).unwrap();
            bytes.push(std::fs::read(&path).unwrap());
        }
        identical &= bytes[0] == bytes[1];
    }
    outcome(
        identical,
        format!("weak-type and convergence CSVs byte-identical: {identical}"),
    )
}

/// Name, check, optional runtime budget.
type Check = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let checks: [Check; 12] = [
        (
            "kernel identity",
            kernel_identity,
            Some(Duration::from_secs(1)),
        ),
        (
            "partial sum identity",
            partial_sum_identity,
            Some(Duration::from_secs(10)),
        ),
        ("quadratic sum decomposition", quadratic_decomposition, None),
        (
            "expansion identities",
            expansion_identities,
            Some(Duration::from_secs(60)),
        ),
        (
            "spectral vs quadrature conjugate",
            spectral_vs_quadrature,
            None,
        ),
        ("orlicz closed forms", orlicz_closed_forms, None),
        ("bmo norms", bmo_checks, None),
        ("john-nirenberg ratio", john_nirenberg, None),
        (
            "empirical weak type",
            weak_type,
            Some(Duration::from_secs(600)),
        ),
        ("exponential mean trend", convergence_trend, None),
        ("step-integral identity", step_integral, None),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in checks.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" / {:.0}s", l.as_secs_f64()));
        println!(
            "{} {:>2} {name}: {} [{:.2}s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        checks.len() - failed,
        checks.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
