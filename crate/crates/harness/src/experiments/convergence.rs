use anyhow::Result;
use quadsum_core::functionals::{mean_of_deviations, Modulus};
use quadsum_core::{analyze_2d, make_grid, rectangular_sum_grid, QuadraticLadder};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::report::ResultTable;

pub const CONVERGENCE_COLUMNS: [&str; 9] = [
    "kind",
    "function",
    "m",
    "median",
    "p95",
    "psi_median",
    "psi_p95",
    "exactness",
    "bound_violations",
];

/// Absolute slack in the polynomial bound; covers the rounding of the
/// vanishing terms beyond the degree.
pub const DEFAULT_BOUND_SLACK: f64 = 1e-12;

/// `1, 2, 4, …` up to `order`.
fn dyadic_ladder(order: usize) -> Vec<usize> {
    std::iter::successors(Some(1usize), |m| m.checked_mul(2))
        .take_while(|&m| m <= order)
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct PointStats {
    exp_mean: f64,
    psi_mean: f64,
    /// `max_{deg ≤ n ≤ m} |S_nn − f|`.
    exactness: f64,
    violation: bool,
}

/// Grid statistics of `(1/(m+1))·Σ_{n≤m} Φ(|S_nn − f|)` for dyadic `m`.
///
/// `Φ` is `e^{A t} − 1`, and `ψ` in the `psi_*` columns when configured.
/// For trigonometric polynomials of degree `d`, `exactness` is the largest
/// `|S_nn − f|` with `d ≤ n ≤ m` and `bound_violations` counts nodes where
/// the mean exceeds `(d/(m+1))·max_{n<d} Φ(|S_nn − f|)`; both are NaN for
/// other inputs and for `m < d`.
pub fn convergence_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate_convergence()?;
    let grid = make_grid(cfg.grid)?;
    let g = grid.size();
    let max = grid.max_frequency();
    let ladder_m = dyadic_ladder(cfg.order);
    let exp_kind = Modulus::Exponential(cfg.a);
    let psi_kind = cfg.psi()?.map(Modulus::General);

    let mut table = ResultTable::new(&CONVERGENCE_COLUMNS);
    super::metadata(&mut table, "convergence", cfg);

    for f in cfg.test_functions()? {
        table.push_meta(format!("function {}", f.name()), f.source().to_string());
        let field = f.sample(grid)?;
        let spectrum = analyze_2d(&field, max, max)?;
        let reference = rectangular_sum_grid(&spectrum, max, max, grid)?;
        let ladder = QuadraticLadder::new(&spectrum, grid, cfg.order + 1)?;
        let degree = f.degree();

        let per_point: Vec<Vec<PointStats>> = (0..g * g)
            .into_par_iter()
            .map(|p| {
                let (j, l) = (p / g, p % g);
                let sums = ladder.sequence(j, l);
                let r = reference.get(j, l);
                let sampled = field.get(j, l);
                ladder_m
                    .iter()
                    .map(|&m| {
                        let prefix = &sums[..=m];
                        let exp_mean = mean_of_deviations(prefix, r, &exp_kind);
                        let psi_mean = psi_kind
                            .as_ref()
                            .map_or(f64::NAN, |k| mean_of_deviations(prefix, r, k));
                        let (exactness, violation) = match degree {
                            Some(d) if d <= m => {
                                let exact = prefix[d..]
                                    .iter()
                                    .map(|s| (s - sampled).abs())
                                    .fold(0.0, f64::max);
                                let top = prefix[..d]
                                    .iter()
                                    .map(|s| exp_kind.eval((s - r).abs()))
                                    .fold(0.0, f64::max);
                                let bound = d as f64 / (m + 1) as f64 * top;
                                (exact, exp_mean > bound + DEFAULT_BOUND_SLACK)
                            }
                            _ => (f64::NAN, false),
                        };
                        PointStats {
                            exp_mean,
                            psi_mean,
                            exactness,
                            violation,
                        }
                    })
                    .collect()
            })
            .collect();

        for (i, &m) in ladder_m.iter().enumerate() {
            let mut exp: Vec<f64> = per_point.iter().map(|s| s[i].exp_mean).collect();
            let (median, p95) = (super::median(&mut exp), super::percentile(&mut exp, 0.95));
            let (psi_median, psi_p95) = if psi_kind.is_some() {
                let mut psi: Vec<f64> = per_point.iter().map(|s| s[i].psi_mean).collect();
                (super::median(&mut psi), super::percentile(&mut psi, 0.95))
            } else {
                (f64::NAN, f64::NAN)
            };
            let (exactness, violations) = match degree {
                Some(d) if d <= m => (
                    per_point.iter().map(|s| s[i].exactness).fold(0.0, f64::max),
                    per_point.iter().filter(|s| s[i].violation).count() as f64,
                ),
                _ => (f64::NAN, f64::NAN),
            };
            table.push_row(vec![
                "mean".into(),
                f.name().into(),
                (m as f64).into(),
                median.into(),
                p95.into(),
                psi_median.into(),
                psi_p95.into(),
                exactness.into(),
                violations.into(),
            ])?;
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder() {
        assert_eq!(dyadic_ladder(1), vec![1]);
        assert_eq!(dyadic_ladder(12), vec![1, 2, 4, 8]);
        assert_eq!(dyadic_ladder(64).last(), Some(&64));
    }

    fn run(functions: &[&str], grid: usize, order: usize) -> ResultTable {
        convergence_experiment(&ExperimentConfig {
            grid,
            order,
            functions: functions.iter().map(|s| s.to_string()).collect(),
            psi: Some("log(1 + x)".into()),
            ..ExperimentConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn cos_cos_is_exact_beyond_degree() {
        let t = run(&["cos_cos"], 64, 16);
        let e = t.column_index("exactness").unwrap();
        let v = t.column_index("bound_violations").unwrap();
        for row in t.rows() {
            assert!(row[e].as_num().unwrap() < 1e-12);
            assert_eq!(row[v].as_num().unwrap(), 0.0);
        }
    }

    #[test]
    fn constants_have_zero_means() {
        let t = run(&["2.5 + 0*x"], 16, 4);
        for col in ["median", "p95", "psi_median", "psi_p95"] {
            let i = t.column_index(col).unwrap();
            // Trapezoid coefficients of a constant are zero only to rounding.
            assert!(
                t.rows()
                    .iter()
                    .all(|r| r[i].as_num().unwrap().abs() < 1e-14),
                "{col}"
            );
        }
    }
}
