//! Shipped test functions and user expressions.
//!
//! Every built-in carries a hand-coded closure and the equivalent
//! expression source; the two agree to rounding on every node.

use std::fmt;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use quadsum_core::{PeriodicGrid, SampledField2D};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{parse_function, Expr};

/// Where a function is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// `(x_j, x_k)`.
    Primal,
    /// `(t_j, t_k) = (x_j + h/2, x_k + h/2)`; the field stores the function
    /// translated by half a cell in each variable.
    Offset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionClass {
    /// Trigonometric polynomial with `S_nn = f` for `n ≥ degree`.
    Polynomial {
        degree: usize,
    },
    Smooth,
    /// In `L log L` but unbounded.
    Singular,
    /// User expression; nothing is assumed.
    Expression,
}

type Closure = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct TestFunction {
    name: String,
    source: String,
    expr: Expr,
    closure: Closure,
    sampling: Sampling,
    class: FunctionClass,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("sampling", &self.sampling)
            .field("class", &self.class)
            .finish()
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["cos_cos", "trig_mix", "smooth", "loglog", "random"];

impl TestFunction {
    fn builtin(
        name: &str,
        source: String,
        closure: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        sampling: Sampling,
        class: FunctionClass,
    ) -> Self {
        let expr = parse_function(&source).expect("built-in sources parse");
        Self {
            name: name.to_string(),
            source,
            expr,
            closure: Arc::new(closure),
            sampling,
            class,
        }
    }

    /// `cos x · cos y`.
    pub fn cos_cos() -> Self {
        Self::builtin(
            "cos_cos",
            "cos(x)*cos(y)".into(),
            |x, y| x.cos() * y.cos(),
            Sampling::Primal,
            FunctionClass::Polynomial { degree: 1 },
        )
    }

    /// A fixed mix of frequencies up to 3.
    pub fn trig_mix() -> Self {
        Self::builtin(
            "trig_mix",
            "0.5 + cos(x) - 0.5*sin(2*y) + 0.25*cos(3*x + y)".into(),
            |x, y| 0.5 + x.cos() - 0.5 * (2.0 * y).sin() + 0.25 * (3.0 * x + y).cos(),
            Sampling::Primal,
            FunctionClass::Polynomial { degree: 3 },
        )
    }

    /// `exp(cos x) · cos y`.
    pub fn smooth() -> Self {
        Self::builtin(
            "smooth",
            "exp(cos(x))*cos(y)".into(),
            |x, y| x.cos().exp() * y.cos(),
            Sampling::Primal,
            FunctionClass::Smooth,
        )
    }

    /// `log|2 sin(x/2)| · log|2 sin(y/2)|`, singular on `x = 0` and `y = 0`;
    /// offset sampling keeps every node off those lines.
    pub fn loglog() -> Self {
        Self::builtin(
            "loglog",
            "log(abs(2*sin(x/2)))*log(abs(2*sin(y/2)))".into(),
            |x, y| (2.0 * (x / 2.0).sin()).abs().ln() * (2.0 * (y / 2.0).sin()).abs().ln(),
            Sampling::Offset,
            FunctionClass::Singular,
        )
    }

    /// Six terms `c·cos(a x + b y + p)` with `|a|, |b| ≤ 4` drawn from `seed`.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<(f64, i64, i64, f64)> = (0..6)
            .map(|_| {
                let c: f64 = rng.gen_range(-1.0..1.0);
                let a: i64 = rng.gen_range(0..=4);
                let b: i64 = rng.gen_range(-4..=4);
                let p: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (c, a, b, p)
            })
            .collect();
        let degree = terms
            .iter()
            .map(|t| t.1.unsigned_abs().max(t.2.unsigned_abs()))
            .max()
            .unwrap_or(0);
        let source = terms
            .iter()
            .map(|&(c, a, b, p)| format!("({c:?})*cos(({a})*x + ({b})*y + {p:?})"))
            .collect::<Vec<_>>()
            .join(" + ");
        // Same operation order as the source, term by term.
        let closure = move |x: f64, y: f64| {
            let mut acc = 0.0;
            for (i, &(c, a, b, p)) in terms.iter().enumerate() {
                let t = c * (a as f64 * x + b as f64 * y + p).cos();
                acc = if i == 0 { t } else { acc + t };
            }
            acc
        };
        Self::builtin(
            "random",
            source,
            closure,
            Sampling::Primal,
            FunctionClass::Polynomial {
                degree: degree as usize,
            },
        )
    }

    /// A user expression, sampled on primal nodes.
    pub fn from_expression(src: &str) -> Result<Self> {
        let expr = parse_function(src).with_context(|| format!("parsing `{src}`"))?;
        let eval = expr.clone();
        Ok(Self {
            name: src.to_string(),
            source: src.to_string(),
            expr,
            closure: Arc::new(move |x, y| eval.eval(x, y).unwrap_or(f64::NAN)),
            sampling: Sampling::Primal,
            class: FunctionClass::Expression,
        })
    }

    /// A built-in name, or else an expression.
    pub fn resolve(spec: &str, seed: u64) -> Result<Self> {
        Ok(match spec {
            "cos_cos" => Self::cos_cos(),
            "trig_mix" => Self::trig_mix(),
            "smooth" => Self::smooth(),
            "loglog" => Self::loglog(),
            "random" => Self::random(seed),
            other => Self::from_expression(other)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn sampling(&self) -> Sampling {
        self.sampling
    }

    pub fn class(&self) -> FunctionClass {
        self.class
    }

    pub fn degree(&self) -> Option<usize> {
        match self.class {
            FunctionClass::Polynomial { degree } => Some(degree),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.closure)(x, y)
    }

    /// Node coordinates for index `j` under this function's sampling.
    pub fn node(&self, grid: &PeriodicGrid, j: usize) -> f64 {
        match self.sampling {
            Sampling::Primal => grid.primal_node(j),
            Sampling::Offset => grid.offset_node(j),
        }
    }

    /// Samples through the parsed expression; a domain error or non-finite
    /// value at any node is reported with its position.
    pub fn sample(&self, grid: PeriodicGrid) -> Result<SampledField2D> {
        let g = grid.size();
        let mut values = Vec::with_capacity(g * g);
        for j in 0..g {
            let x = self.node(&grid, j);
            for k in 0..g {
                let y = self.node(&grid, k);
                match self.expr.eval(x, y) {
                    Ok(v) => values.push(v),
                    Err(e) => bail!("`{}` at node ({j}, {k}): {e}", self.name),
                }
            }
        }
        Ok(SampledField2D::new(grid, values)?)
    }
}

/// The shipped family in a fixed order.
pub fn default_family(seed: u64) -> Vec<TestFunction> {
    BUILTIN_NAMES
        .iter()
        .map(|n| TestFunction::resolve(n, seed).expect("built-ins resolve"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadsum_core::make_grid;

    #[test]
    fn closures_match_expressions() {
        let grid = make_grid(64).unwrap();
        for f in default_family(11) {
            let field = f.sample(grid).unwrap();
            for j in 0..64 {
                for k in 0..64 {
                    let direct = f.eval(f.node(&grid, j), f.node(&grid, k));
                    assert!(
                        (direct - field.get(j, k)).abs() <= 1e-15,
                        "{} at ({j}, {k})",
                        f.name()
                    );
                }
            }
        }
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(
            TestFunction::random(3).source(),
            TestFunction::random(3).source()
        );
        assert_ne!(
            TestFunction::random(3).source(),
            TestFunction::random(4).source()
        );
        assert!(TestFunction::random(3).degree().unwrap() <= 4);
    }

    #[test]
    fn singular_expression_rejected_on_primal_nodes() {
        let f = TestFunction::from_expression("log(abs(x))").unwrap();
        let err = f.sample(make_grid(8).unwrap()).unwrap_err().to_string();
        assert!(err.contains("(4,"), "{err}");
    }

    #[test]
    fn resolve_falls_back_to_expression() {
        assert_eq!(
            TestFunction::resolve("smooth", 0).unwrap().class(),
            FunctionClass::Smooth
        );
        let f = TestFunction::resolve("x*y", 0).unwrap();
        assert_eq!(f.class(), FunctionClass::Expression);
        assert!(TestFunction::resolve("cos(", 0).is_err());
    }
}
