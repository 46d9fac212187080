//! Viro systems `f_{i,t}(X) = Σ_j C_ij t^{ν(a_j)} X^{a_j}`, regularity of
//! height functions and the per-facet solutions seeding numerical search.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{PointConfiguration, SimplicialComplex};
use crate::linalg::{
    format_rational, positive_kernel_vector, serde_rational, serde_rational_rows,
    serde_rational_vec, Rational, RationalMatrix,
};
use crate::numerics::real::{Arith, Real};
use crate::{Error, Result};

/// Heights `ν(a_1), ..., ν(a_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightFunction(#[serde(with = "serde_rational_vec")] Vec<Rational>);

impl HeightFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        HeightFunction(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// `ν(a_j)` for 1-based `j`.
    pub fn get(&self, j: usize) -> &Rational {
        &self.0[j - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Support, coefficients and heights of a Viro system; `t` stays symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct ViroSystem {
    points: PointConfiguration,
    coefficients: RationalMatrix,
    heights: HeightFunction,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    #[serde(with = "serde_rational_rows")]
    points: Vec<Vec<Rational>>,
    coefficients: RationalMatrix,
    heights: HeightFunction,
}

impl TryFrom<RawSystem> for ViroSystem {
    type Error = Error;

    fn try_from(r: RawSystem) -> Result<Self> {
        let d = r.coefficients.rows();
        ViroSystem::new(PointConfiguration::new(d, r.points)?, r.coefficients, r.heights)
    }
}

impl From<ViroSystem> for RawSystem {
    fn from(s: ViroSystem) -> Self {
        RawSystem {
            points: s.points.points().to_vec(),
            coefficients: s.coefficients,
            heights: s.heights,
        }
    }
}

impl ViroSystem {
    pub fn new(
        points: PointConfiguration,
        coefficients: RationalMatrix,
        heights: HeightFunction,
    ) -> Result<Self> {
        let (d, n) = (points.dimension(), points.len());
        if coefficients.rows() != d || coefficients.cols() != n || heights.len() != n {
            return Err(Error::Shape(format!(
                "{n} points in dimension {d} with a {}x{} coefficient matrix and {} heights",
                coefficients.rows(),
                coefficients.cols(),
                heights.len()
            )));
        }
        Ok(ViroSystem {
            points,
            coefficients,
            heights,
        })
    }

    pub fn points(&self) -> &PointConfiguration {
        &self.points
    }

    pub fn coefficients(&self) -> &RationalMatrix {
        &self.coefficients
    }

    pub fn heights(&self) -> &HeightFunction {
        &self.heights
    }

    pub fn dimension(&self) -> usize {
        self.points.dimension()
    }

    pub fn n_terms(&self) -> usize {
        self.points.len()
    }

    /// One line per equation, e.g. `f1 = -1 + t*x2 + t*x3`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dimension() {
            let mut line = String::new();
            for j in 0..self.n_terms() {
                let c = self.coefficients.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut factors = Vec::new();
                let h = &self.heights.values()[j];
                if !h.is_zero() {
                    factors.push(if h.is_one() {
                        "t".to_string()
                    } else {
                        format!("t^{}", exponent(h))
                    });
                }
                for (k, e) in self.points.points()[j].iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    factors.push(if e.is_one() {
                        format!("x{}", k + 1)
                    } else {
                        format!("x{}^{}", k + 1, exponent(e))
                    });
                }
                let mag = c.abs();
                if !mag.is_one() || factors.is_empty() {
                    factors.insert(0, format_rational(&mag));
                }
                let term = factors.join("*");
                if line.is_empty() {
                    if c.is_negative() {
                        line.push('-');
                    }
                    line.push_str(&term);
                } else {
                    line.push_str(if c.is_negative() { " - " } else { " + " });
                    line.push_str(&term);
                }
            }
            if line.is_empty() {
                line.push('0');
            }
            writeln!(out, "f{} = {}", i + 1, line).expect("writing to a string");
        }
        out
    }
}

fn exponent(q: &Rational) -> String {
    let s = format_rational(q);
    if q.is_integer() && !q.is_negative() {
        s
    } else {
        format!("({s})")
    }
}

/// Validated container for a Viro system.
pub fn build_viro_system(
    points: &PointConfiguration,
    coefficients: &RationalMatrix,
    heights: &HeightFunction,
) -> Result<ViroSystem> {
    ViroSystem::new(points.clone(), coefficients.clone(), heights.clone())
}

/// The affine function `x ↦ ⟨slope, x⟩ + offset` interpolating the heights
/// on a facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePiece {
    #[serde(with = "serde_rational_vec")]
    pub slope: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

impl AffinePiece {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.slope.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() + &self.offset
    }
}

fn check_heights(a: &PointConfiguration, nu: &HeightFunction) -> Result<()> {
    if nu.len() != a.len() {
        return Err(Error::Shape(format!("{} heights for {} points", nu.len(), a.len())));
    }
    Ok(())
}

/// Solves `Ã_τᵀ (offset, slope) = ν_τ` exactly.
pub fn affine_piece(
    a: &PointConfiguration,
    nu: &HeightFunction,
    facet: &[usize],
) -> Result<AffinePiece> {
    check_heights(a, nu)?;
    let lhs = a.lifted_facet(facet).transpose();
    let rhs: Vec<Rational> = facet.iter().map(|&v| nu.get(v).clone()).collect();
    let sol = lhs.solve(&rhs).map_err(|e| match e {
        Error::Singular => Error::DegenerateFacet {
            facet: facet.to_vec(),
        },
        e => e,
    })?;
    Ok(AffinePiece {
        offset: sol[0].clone(),
        slope: sol[1..].to_vec(),
    })
}

/// A point that is not strictly above the affine piece of a facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub facet: Vec<usize>,
    pub point: usize,
    /// `ν(a) - ℓ_τ(a)`, non-positive.
    #[serde(with = "serde_rational")]
    pub margin: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub violations: Vec<Violation>,
}

/// Certifies that `ν` induces the complex: for every facet `τ` and every
/// configuration point `a ∉ τ`, `ν(a) > ℓ_τ(a)` strictly.
pub fn regularity_check(
    a: &PointConfiguration,
    nu: &HeightFunction,
    k: &SimplicialComplex,
) -> Result<RegularityReport> {
    a.check_complex(k)?;
    check_heights(a, nu)?;
    let per_facet: Vec<Vec<Violation>> = k
        .facets()
        .par_iter()
        .map(|f| {
            let piece = affine_piece(a, nu, f)?;
            Ok((1..=a.len())
                .filter(|j| !f.contains(j))
                .filter_map(|j| {
                    let margin = nu.get(j) - piece.eval(a.point(j));
                    (!margin.is_positive()).then(|| Violation {
                        facet: f.clone(),
                        point: j,
                        margin,
                    })
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let violations: Vec<Violation> = per_facet.into_iter().flatten().collect();
    Ok(RegularityReport {
        regular: violations.is_empty(),
        violations,
    })
}

/// The positive solution of the system restricted to the monomials of one
/// facet.
#[derive(Clone, Debug)]
pub struct TruncatedSolution {
    pub facet: Vec<usize>,
    /// Positive kernel vector of `C_τ`, normalized to `v_1 = 1`.
    pub kernel: Vec<Rational>,
    /// `log λ` with `X^{a_j} = λ v_j` on the facet.
    pub log_scale: Real,
    /// `u = log X`.
    pub log_point: Vec<Real>,
}

/// Solves `Σ_{j∈τ} C_ij X^{a_j} = 0` in the positive orthant through
/// `Ã_τᵀ (log λ, u) = log v`, applying the exact inverse to high precision
/// logarithms.
pub fn truncated_solution(
    a: &PointConfiguration,
    c: &RationalMatrix,
    facet: &[usize],
    ar: &Arith,
) -> Result<TruncatedSolution> {
    let cols = SimplicialComplex::columns(facet);
    let v = match positive_kernel_vector(&c.select_columns(&cols)) {
        Ok(Some(v)) => v,
        Ok(None) | Err(Error::RankDeficient) => {
            return Err(Error::NotDecorated {
                facet: facet.to_vec(),
            })
        }
        Err(e) => return Err(e),
    };
    let inv = a
        .lifted_facet(facet)
        .transpose()
        .inverse()
        .map_err(|_| Error::DegenerateFacet {
            facet: facet.to_vec(),
        })?;
    let logs: Vec<Real> = v.iter().map(|q| ar.ln_rational(q)).collect::<Result<_>>()?;
    let mut sol: Vec<Real> = (0..inv.rows())
        .map(|r| {
            (0..inv.cols()).fold(ar.zero(), |acc, s| ar.add(&acc, &ar.scale(inv.get(r, s), &logs[s])))
        })
        .collect();
    let log_point = sol.split_off(1);
    Ok(TruncatedSolution {
        facet: facet.to_vec(),
        kernel: v,
        log_scale: sol.pop().expect("one entry left"),
        log_point,
    })
}

/// Starting point for the root near the facet `τ` at parameter `t`.
#[derive(Clone, Debug)]
pub struct PredictedStart {
    pub facet: Vec<usize>,
    pub piece: AffinePiece,
    pub truncated: TruncatedSolution,
    /// `log X = u - (log t) a_ℓ`.
    pub log_x: Vec<Real>,
}

/// Predicted root near one facet.
pub fn predicted_solution(s: &ViroSystem, facet: &[usize], log_t: &Real, ar: &Arith) -> Result<PredictedStart> {
    let piece = affine_piece(s.points(), s.heights(), facet)?;
    let truncated = truncated_solution(s.points(), s.coefficients(), facet, ar)?;
    let log_x = truncated
        .log_point
        .iter()
        .zip(&piece.slope)
        .map(|(u, a)| ar.sub(u, &ar.scale(a, log_t)))
        .collect();
    Ok(PredictedStart {
        facet: facet.to_vec(),
        piece,
        truncated,
        log_x,
    })
}

/// One predicted root per facet, in facet order.
pub fn predicted_solutions(
    s: &ViroSystem,
    k: &SimplicialComplex,
    log_t: &Real,
    prec: usize,
) -> Result<Vec<PredictedStart>> {
    s.points().check_complex(k)?;
    k.facets()
        .par_iter()
        .map(|f| predicted_solution(s, f, log_t, &Arith::new(prec)))
        .collect()
}

/// Exact check that the heights are affine on the facet with the computed
/// piece.
pub fn interpolates(piece: &AffinePiece, a: &PointConfiguration, nu: &HeightFunction, facet: &[usize]) -> bool {
    facet
        .iter()
        .all(|&j| piece.eval(a.point(j)) == *nu.get(j))
}
