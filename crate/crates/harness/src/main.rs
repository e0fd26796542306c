use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quadsum_core::functionals::{
    bmo_norm_step, bmo_of_partial_sums, bmo_sequence, luxemburg_norm, modular, StepSequence,
    YoungFunction,
};
use quadsum_core::singular::{
    correction_terms, diagonal_conjugate, ij_decomposition, modified_quadratic_sum, pv_transform,
    PvKernel,
};
use quadsum_core::{analyze_2d, make_grid, rectangular_sum_grid, SampledField1D, SampledField2D};
use quadsum_harness::{
    convergence_experiment, emit_report, weak_type_experiment, Cell, ExperimentConfig, ResultTable,
    TestFunction,
};

#[derive(Parser)]
#[command(
    name = "quadsum",
    version,
    about = "Quadratic partial sums of double Fourier series"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Grid size G (even).
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Order n, or number N of partial sums.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// CSV destination; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a function and emit its samples.
    Transform {
        /// Built-in name or expression in x, y.
        #[arg(long)]
        function: String,
        #[arg(long, value_enum)]
        op: Operator,
    },
    /// BMO norm of a step sequence, or of partial sums at a point.
    Bmo {
        /// Comma-separated values `ξ_0, …, ξ_{n−1}`.
        #[arg(long, conflicts_with = "function", allow_hyphen_values = true)]
        values: Option<String>,
        #[arg(long)]
        function: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        x: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        y: f64,
        #[arg(long)]
        refinement: Option<usize>,
    },
    /// Luxemburg norm of a weighted distribution or a sampled function.
    Orlicz {
        #[arg(long, conflicts_with = "function", allow_hyphen_values = true)]
        values: Option<String>,
        /// Measures of the values; uniform `1/n` when absent.
        #[arg(long, requires = "values")]
        weights: Option<String>,
        #[arg(long)]
        function: Option<String>,
        /// `llogl`, `exp`, `exp:<a>` or `power:<p>`.
        #[arg(long, default_value = "exp")]
        young: String,
    },
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand)]
enum Experiment {
    WeakType,
    Convergence,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    /// `S_nn`
    Quadratic,
    /// `S*_nn`
    Modified,
    /// Conjugate in x.
    ConjugateX,
    /// Conjugate in y.
    ConjugateY,
    /// Diagonal conjugate `A(x, y)`.
    Diagonal,
    S1,
    S2,
    S3,
    In,
    Jn,
}

fn config(g: &Global) -> Result<ExperimentConfig> {
    let mut cfg = match &g.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = g.grid {
        cfg.grid = v;
    }
    if let Some(v) = g.order {
        cfg.order = v;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(v) = &g.out {
        cfg.out = Some(v.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("bad number `{v}`"))
        })
        .collect()
}

fn young(spec: &str) -> Result<YoungFunction> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let param = || {
        arg.parse::<f64>()
            .with_context(|| format!("bad parameter in `{spec}`"))
    };
    Ok(match name {
        "llogl" => YoungFunction::llogl(),
        "exp" if arg.is_empty() => YoungFunction::exp_minus_one(),
        "exp" => YoungFunction::exponential(param()?)?,
        "power" => YoungFunction::power(param()?)?,
        _ => bail!("unknown Young function `{spec}`"),
    })
}

/// Applies a 1D PV conjugate along one axis.
fn conjugate_along(f: &SampledField2D, along_x: bool) -> Result<SampledField2D> {
    let grid = f.grid();
    let g = grid.size();
    let mut out = vec![0.0; g * g];
    for fixed in 0..g {
        let at = |i: usize| if along_x { (i, fixed) } else { (fixed, i) };
        let line: Vec<f64> = (0..g)
            .map(|i| {
                let (j, k) = at(i);
                f.get(j, k)
            })
            .collect();
        let conj = pv_transform(&SampledField1D::new(grid, line)?, PvKernel::Conjugate);
        for (i, v) in conj.values().iter().enumerate() {
            let (j, k) = at(i);
            out[j * g + k] = *v;
        }
    }
    Ok(SampledField2D::new(grid, out)?)
}

fn transform(cfg: &ExperimentConfig, function: &str, op: Operator) -> Result<ResultTable> {
    let grid = make_grid(cfg.grid)?;
    let f = TestFunction::resolve(function, cfg.seed)?;
    let field = f.sample(grid)?;
    let n = cfg.order;
    let result = match op {
        Operator::Quadratic => {
            let s = analyze_2d(&field, n, n)?;
            rectangular_sum_grid(&s, n, n, grid)?
        }
        Operator::Modified => modified_quadratic_sum(&field, n)?,
        Operator::ConjugateX => conjugate_along(&field, true)?,
        Operator::ConjugateY => conjugate_along(&field, false)?,
        Operator::Diagonal => diagonal_conjugate(&field),
        Operator::S1 => correction_terms(&field, n)?.s1,
        Operator::S2 => correction_terms(&field, n)?.s2,
        Operator::S3 => correction_terms(&field, n)?.s3,
        Operator::In => ij_decomposition(&field, n)?.i_n,
        Operator::Jn => ij_decomposition(&field, n)?.j_n,
    };
    let mut t = ResultTable::new(&["j", "k", "x", "y", "value"]);
    t.push_meta("function", f.source().to_string());
    t.push_meta("grid", cfg.grid.to_string());
    t.push_meta("order", n.to_string());
    let g = grid.size();
    for j in 0..g {
        for k in 0..g {
            t.push_row(vec![
                (j as f64).into(),
                (k as f64).into(),
                f.node(&grid, j).into(),
                f.node(&grid, k).into(),
                result.get(j, k).into(),
            ])?;
        }
    }
    Ok(t)
}

fn bmo(
    cfg: &ExperimentConfig,
    values: Option<&str>,
    function: Option<&str>,
    x: f64,
    y: f64,
    refinement: Option<usize>,
) -> Result<ResultTable> {
    let mut opts = cfg.bmo_options();
    if let Some(r) = refinement {
        opts.refinement = r;
    }
    let mut t = ResultTable::new(&["quantity", "value"]);
    t.push_meta("refinement", opts.refinement.to_string());
    match (values, function) {
        (Some(v), None) => {
            let values = parse_list(v)?;
            let seq = StepSequence::new(values.clone())?;
            let r = bmo_norm_step(&seq, &opts);
            for (name, value) in [
                ("oscillation", r.oscillation),
                ("mean_abs", r.mean_abs),
                ("norm", r.norm),
                ("interval_start", r.interval.0),
                ("interval_end", r.interval.1),
                ("prefix_max", bmo_sequence(&values, &opts)?),
            ] {
                t.push_row(vec![name.into(), value.into()])?;
            }
        }
        (None, Some(src)) => {
            let grid = make_grid(cfg.grid)?;
            let f = TestFunction::resolve(src, cfg.seed)?;
            let terms = cfg.order;
            let s = analyze_2d(&f.sample(grid)?, terms - 1, terms - 1)?;
            t.push_meta("function", f.source().to_string());
            t.push_meta("terms", terms.to_string());
            t.push_row(vec![
                "bmo".into(),
                bmo_of_partial_sums(&s, x, y, terms, &opts)?.into(),
            ])?;
        }
        _ => bail!("give exactly one of --values or --function"),
    }
    Ok(t)
}

fn orlicz(
    cfg: &ExperimentConfig,
    values: Option<&str>,
    weights: Option<&str>,
    function: Option<&str>,
    young_spec: &str,
) -> Result<ResultTable> {
    let m = young(young_spec)?;
    let (values, weights) = match (values, function) {
        (Some(v), None) => {
            let values = parse_list(v)?;
            let weights = match weights {
                Some(w) => parse_list(w)?,
                None => vec![1.0 / values.len() as f64; values.len()],
            };
            if weights.len() != values.len() {
                bail!("{} weights for {} values", weights.len(), values.len());
            }
            if weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
                bail!("weights must be nonnegative and finite");
            }
            (values, weights)
        }
        (None, Some(src)) => {
            let grid = make_grid(cfg.grid)?;
            let field = TestFunction::resolve(src, cfg.seed)?.sample(grid)?;
            let w = vec![field.cell_measure(); field.values().len()];
            (field.into_values(), w)
        }
        _ => bail!("give exactly one of --values or --function"),
    };
    let norm = luxemburg_norm(&values, &weights, &m);
    let mut t = ResultTable::new(&["quantity", "value"]);
    t.push_meta("young", m.name().to_string());
    t.push_row(vec!["norm".into(), norm.into()])?;
    let at_norm = if norm > 0.0 {
        modular(&values, &weights, &m, norm)
    } else {
        0.0
    };
    t.push_row(vec![Cell::from("modular_at_norm"), at_norm.into()])?;
    Ok(t)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let cfg = config(&cli.global)?;
    let table = match &cli.command {
        Command::Transform { function, op } => transform(&cfg, function, *op)?,
        Command::Bmo {
            values,
            function,
            x,
            y,
            refinement,
        } => bmo(
            &cfg,
            values.as_deref(),
            function.as_deref(),
            *x,
            *y,
            *refinement,
        )?,
        Command::Orlicz {
            values,
            weights,
            function,
            young,
        } => orlicz(
            &cfg,
            values.as_deref(),
            weights.as_deref(),
            function.as_deref(),
            young,
        )?,
        Command::Experiment(Experiment::WeakType) => weak_type_experiment(&cfg)?,
        Command::Experiment(Experiment::Convergence) => convergence_experiment(&cfg)?,
    };
    match &cfg.out {
        Some(path) => emit_report(&table, path)?,
        None => print!("{}", table.to_csv()?),
    }
    Ok(())
}
