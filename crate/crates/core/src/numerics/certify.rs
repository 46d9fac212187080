//! Lower bounds on the number of positive roots of a Viro system.

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::newton::{newton_refine, NewtonOptions};
use super::real::{default_precision, to_f64, Arith};
use super::system::{condition_number, distance, LogPoint, NumericSystem};
use crate::complex::SimplicialComplex;
use crate::linalg::serde_rational;
use crate::viro::{predicted_solution, ViroSystem};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub precision: usize,
    pub newton: NewtonOptions,
    /// Roots closer than this in log coordinates are identified.
    pub dedup: f64,
    /// Largest accepted Jacobian condition number.
    pub max_condition: f64,
}

impl CountOptions {
    pub fn with_precision(precision: usize) -> Self {
        CountOptions {
            precision,
            newton: NewtonOptions::for_precision(precision),
            dedup: 1e-6,
            max_condition: 1e12,
        }
    }
}

impl Default for CountOptions {
    fn default() -> Self {
        Self::with_precision(default_precision())
    }
}

/// A refined root, attributed to the facet whose prediction led to it.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub facet: Vec<usize>,
    #[serde(skip)]
    pub point: LogPoint,
    pub log_x: Vec<f64>,
    pub residual: f64,
    pub jac_cond: f64,
    /// Distance to the nearest other witness, absent for a single root.
    pub separation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetFailure {
    pub facet: Vec<usize>,
    pub reason: String,
}

/// Distinct non-degenerate positive roots found near the predicted starts.
///
/// The residuals and condition numbers are floating point estimates, so the
/// count is heuristic rather than an interval certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertifiedCount {
    #[serde(with = "serde_rational")]
    pub t: Rational,
    pub count: usize,
    pub heuristic: bool,
    pub precision: usize,
    pub witnesses: Vec<Witness>,
    pub failures: Vec<FacetFailure>,
}

enum Outcome {
    Root(Witness),
    Failed(String),
}

fn refine_facet(s: &ViroSystem, facet: &[usize], t: &Rational, opts: &CountOptions) -> Result<Outcome> {
    let ar = Arith::new(opts.precision);
    let log_t = ar.ln_rational(t)?;
    let start = match predicted_solution(s, facet, &log_t, &ar) {
        Ok(p) => p,
        Err(e @ (Error::NotDecorated { .. } | Error::DegenerateFacet { .. })) => {
            return Ok(Outcome::Failed(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let ns = NumericSystem::new(s, &log_t, &ar);
    let refined = match newton_refine(&ns, &start.log_x, &opts.newton, &ar)? {
        Ok(r) => r,
        Err(f) => return Ok(Outcome::Failed(f.to_string())),
    };
    let jac_cond = condition_number(&ns.jacobian(&refined.point, &ar)?);
    if !(jac_cond <= opts.max_condition) {
        return Ok(Outcome::Failed(format!("Jacobian condition number {jac_cond:e}")));
    }
    Ok(Outcome::Root(Witness {
        facet: facet.to_vec(),
        log_x: refined.point.iter().map(to_f64).collect(),
        point: refined.point,
        residual: refined.residual,
        jac_cond,
        separation: None,
    }))
}

/// Refines the predicted root of every facet of `k` at parameter `t`, drops
/// failures and duplicates and counts the rest.
///
/// Runs are independent and parallel; the reduction is sequential in facet
/// order, so the output does not depend on scheduling.
pub fn certified_positive_count(
    s: &ViroSystem,
    k: &SimplicialComplex,
    t: &Rational,
    opts: &CountOptions,
) -> Result<CertifiedCount> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    s.points().check_complex(k)?;
    let outcomes = k
        .facets()
        .par_iter()
        .map(|f| refine_facet(s, f, t, opts))
        .collect::<Result<Vec<_>>>()?;

    let ar = Arith::new(opts.precision);
    let mut witnesses: Vec<Witness> = Vec::new();
    let mut failures = Vec::new();
    for (facet, outcome) in k.facets().iter().zip(outcomes) {
        match outcome {
            Outcome::Failed(reason) => failures.push(FacetFailure {
                facet: facet.clone(),
                reason,
            }),
            Outcome::Root(w) => {
                if let Some(prev) = witnesses
                    .iter()
                    .find(|p| distance(&p.point, &w.point, &ar) <= opts.dedup)
                {
                    failures.push(FacetFailure {
                        facet: facet.clone(),
                        reason: format!("converged to the root of facet {:?}", prev.facet),
                    });
                } else {
                    witnesses.push(w);
                }
            }
        }
    }
    for i in 0..witnesses.len() {
        witnesses[i].separation = (0..witnesses.len())
            .filter(|&j| j != i)
            .map(|j| distance(&witnesses[i].point, &witnesses[j].point, &ar))
            .min_by(f64::total_cmp);
    }
    Ok(CertifiedCount {
        t: t.clone(),
        count: witnesses.len(),
        heuristic: true,
        precision: opts.precision,
        witnesses,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PointConfiguration;
    use crate::linalg::{int, ratio};
    use crate::viro::HeightFunction;
    use crate::RationalMatrix;

    #[test]
    fn single_simplex_has_one_root() {
        let a = PointConfiguration::from_i64(2, &[[0, 0], [1, 0], [0, 1]]).unwrap();
        let c: RationalMatrix = "1 -2 0; 1 0 -3".parse().unwrap();
        let s = ViroSystem::new(a, c, HeightFunction::new(vec![int(0); 3])).unwrap();
        let k = SimplicialComplex::new(2, 3, vec![vec![1, 2, 3]]).unwrap();
        let out = certified_positive_count(&s, &k, &ratio(1, 2), &CountOptions::with_precision(128)).unwrap();
        assert_eq!(out.count, 1, "{:?}", out.failures);
        assert!(out.witnesses[0].separation.is_none());
        assert!((out.witnesses[0].log_x[0] - 0.5f64.ln()).abs() < 1e-12);
        assert!(certified_positive_count(&s, &k, &int(0), &CountOptions::default()).is_err());
    }

    #[test]
    fn undecorated_facet_is_a_failure_note() {
        let a = PointConfiguration::from_i64(1, &[[0], [1], [2]]).unwrap();
        let c: RationalMatrix = "1 1 -5".parse().unwrap();
        let s = ViroSystem::new(a, c, HeightFunction::new(vec![int(0), int(0), int(1)])).unwrap();
        let k = SimplicialComplex::new(1, 3, vec![vec![1, 2], vec![2, 3]]).unwrap();
        let out = certified_positive_count(&s, &k, &ratio(1, 100), &CountOptions::with_precision(128)).unwrap();
        assert_eq!(out.count, 1);
        assert_eq!(out.failures.len(), 1);
        assert_eq!(out.failures[0].facet, vec![1, 2]);
        let json = serde_json::to_value(&out).unwrap();
        assert_eq!(json["t"], "1/100");
        assert_eq!(json["heuristic"], true);
    }
}
