use anyhow::{Context, Result};
use quadsum_core::functionals::{bmo_sequence, BmoOptions};
use quadsum_core::{analyze_2d, make_grid, QuadraticLadder, SampledField2D};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::norms::llogl_norm;
use crate::report::ResultTable;

pub const WEAK_TYPE_COLUMNS: [&str; 7] = [
    "kind",
    "function",
    "lambda",
    "measure",
    "lambda_measure",
    "llogl",
    "ratio",
];

/// `BMO[S_00, …, S_{N−1,N−1}]` at every primal node, row-major.
pub fn bmo_field(f: &SampledField2D, terms: usize, opts: &BmoOptions) -> Result<Vec<f64>> {
    let grid = f.grid();
    let g = grid.size();
    let spectrum = analyze_2d(f, terms - 1, terms - 1)?;
    let ladder = QuadraticLadder::new(&spectrum, grid, terms)?;
    let rows: Vec<Vec<f64>> = (0..g)
        .into_par_iter()
        .map(|j| {
            (0..g)
                .map(|l| bmo_sequence(ladder.sequence(j, l), opts))
                .collect()
        })
        .collect::<quadsum_core::Result<_>>()?;
    Ok(rows.concat())
}

#[derive(Debug, Clone, Copy)]
struct Row {
    lambda: f64,
    measure: f64,
    ratio: f64,
}

fn push(table: &mut ResultTable, kind: &str, name: &str, row: Row, llogl: f64) -> Result<()> {
    table.push_row(vec![
        kind.into(),
        name.into(),
        row.lambda.into(),
        row.measure.into(),
        (row.lambda * row.measure).into(),
        llogl.into(),
        row.ratio.into(),
    ])
}

/// Level-set measures `|{BMO[S_nn f] > λ}|` over the configured λ grid.
///
/// One row per function and level, then a `max` row per function (largest
/// ratio, first on ties) and a final `overall` row.
pub fn weak_type_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate_weak_type()?;
    let grid = make_grid(cfg.grid)?;
    let opts = cfg.bmo_options();
    let cell = grid.cell_width() * grid.cell_width();

    let mut table = ResultTable::new(&WEAK_TYPE_COLUMNS);
    super::metadata(&mut table, "weak-type", cfg);

    let mut overall: Option<(String, Row, f64)> = None;
    for f in cfg.test_functions()? {
        table.push_meta(format!("function {}", f.name()), f.source().to_string());
        let field = f.sample(grid)?;
        let llogl = llogl_norm(&field);
        let mut bmo = bmo_field(&field, cfg.order, &opts)
            .with_context(|| format!("function `{}`", f.name()))?;
        bmo.sort_by(f64::total_cmp);

        let mut best: Option<Row> = None;
        for lambda in cfg.lambdas(1.0 + llogl) {
            let above = bmo.len() - bmo.partition_point(|&b| b <= lambda);
            let measure = above as f64 * cell;
            let row = Row {
                lambda,
                measure,
                ratio: lambda * measure / (1.0 + llogl),
            };
            push(&mut table, "level", f.name(), row, llogl)?;
            if best.is_none_or(|b| row.ratio > b.ratio) {
                best = Some(row);
            }
        }
        let best = best.expect("lambda grid is nonempty");
        push(&mut table, "max", f.name(), best, llogl)?;
        if overall
            .as_ref()
            .is_none_or(|(_, b, _)| best.ratio > b.ratio)
        {
            overall = Some((f.name().to_string(), best, llogl));
        }
    }
    let (name, row, llogl) = overall.expect("function list is nonempty");
    push(&mut table, "overall", &name, row, llogl)?;
    Ok(table)
}

/// The `ratio` of the `overall` row.
pub fn overall_ratio(table: &ResultTable) -> Option<f64> {
    let idx = table.column_index("ratio")?;
    table
        .rows_where("kind", "overall")
        .next()
        .and_then(|r| r[idx].as_num())
}
