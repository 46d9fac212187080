//! Damped Newton iteration in log coordinates.

use serde::Serialize;

use super::real::{to_f64, Arith, Real};
use super::system::{max_norm, solve_linear, LogPoint, NumericSystem};
use crate::{Error, Result};

/// Why a Newton run stopped without converging.
#[derive(Clone, Debug, PartialEq, Serialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NewtonFailure {
    #[error("diverged after {iterations} iterations: {reason}")]
    Diverged { iterations: usize, reason: String },
    #[error("singular Jacobian at iteration {iterations}")]
    SingularJacobian { iterations: usize },
    #[error("no convergence within {iterations} iterations, residual {residual:e}")]
    MaxIterations { iterations: usize, residual: f64 },
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Bound on both the scaled residual and the last step.
    pub tol: f64,
    pub max_halvings: usize,
    /// A run diverges once `|u - u0|` exceeds `growth * (1 + |u0|)`.
    pub growth: f64,
}

impl NewtonOptions {
    /// Tolerance `2^{-prec/2}`, capped at `1e-20`.
    pub fn for_precision(prec: usize) -> Self {
        NewtonOptions {
            max_iter: 100,
            tol: 2f64.powi(-(prec as i32 / 2)).min(1e-20),
            max_halvings: 30,
            growth: 1e3,
        }
    }
}

/// A converged run.
#[derive(Clone, Debug)]
pub struct Refined {
    pub point: LogPoint,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton's method on the row-scaled system, halving the step while the
/// residual does not decrease.
pub fn newton_refine(
    ns: &NumericSystem,
    u0: &[Real],
    opts: &NewtonOptions,
    ar: &Arith,
) -> Result<std::result::Result<Refined, NewtonFailure>> {
    let start_norm = max_norm(u0);
    let mut u = u0.to_vec();
    let mut last_step = f64::INFINITY;
    for it in 0..=opts.max_iter {
        let ev = ns.evaluate(&u, ar)?;
        let res = max_norm(&ev.residuals);
        if !res.is_finite() {
            return Ok(Err(NewtonFailure::Diverged {
                iterations: it,
                reason: "non-finite residual".into(),
            }));
        }
        if res < opts.tol && last_step < opts.tol {
            return Ok(Ok(Refined {
                point: u,
                residual: res,
                iterations: it,
            }));
        }
        if it == opts.max_iter {
            return Ok(Err(NewtonFailure::MaxIterations {
                iterations: it,
                residual: res,
            }));
        }
        let j = ns.jacobian_with_scales(&u, &ev.scales, ar)?;
        let rhs: Vec<Real> = ev.residuals.iter().map(|r| r.neg()).collect();
        let step = match solve_linear(&j, &rhs, ar) {
            Ok(s) => s,
            Err(Error::Singular) => return Ok(Err(NewtonFailure::SingularJacobian { iterations: it })),
            Err(e) => return Err(e),
        };
        let mut lambda = ar.int(1);
        let half = ar.from_f64(0.5);
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<Real> = u
                .iter()
                .zip(&step)
                .map(|(x, s)| ar.add(x, &ar.mul(&lambda, s)))
                .collect();
            let r = max_norm(&ns.evaluate_with_scales(&trial, &ev.scales, ar)?);
            if r < res || r < opts.tol {
                accepted = Some(trial);
                break;
            }
            lambda = ar.mul(&lambda, &half);
        }
        let Some(next) = accepted else {
            if res < opts.tol {
                return Ok(Ok(Refined {
                    point: u,
                    residual: res,
                    iterations: it,
                }));
            }
            return Ok(Err(NewtonFailure::Diverged {
                iterations: it,
                reason: format!("no decrease after {} halvings", opts.max_halvings),
            }));
        };
        last_step = to_f64(&lambda) * max_norm(&step);
        u = next;
        let drift = u
            .iter()
            .zip(u0)
            .map(|(a, b)| to_f64(&ar.sub(a, b)).abs())
            .fold(0.0, f64::max);
        if !drift.is_finite() || drift > opts.growth * (1.0 + start_norm) {
            return Ok(Err(NewtonFailure::Diverged {
                iterations: it + 1,
                reason: format!("moved {drift:e} from the start"),
            }));
        }
    }
    unreachable!("the loop returns at max_iter")
}
