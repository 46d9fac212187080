use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{PointConfiguration, SimplicialComplex};
use crate::linalg::{is_oriented, Rational, RationalMatrix, Sign};
use crate::{Error, Result};

/// Verdict of a decoration check with every failing facet listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecorationReport {
    pub decorated: bool,
    pub n_facets: usize,
    pub failing: Vec<Vec<usize>>,
}

fn check_columns(k: &SimplicialComplex, c: &RationalMatrix) -> Result<()> {
    if c.rows() != k.dimension() || c.cols() < k.n_vertices() {
        return Err(Error::Shape(format!(
            "a {}x{} coefficient matrix cannot decorate a {}-dimensional complex on {} vertices",
            c.rows(),
            c.cols(),
            k.dimension(),
            k.n_vertices()
        )));
    }
    Ok(())
}

/// Checks that every facet submatrix `C_τ` is oriented.
pub fn is_positively_decorated(k: &SimplicialComplex, c: &RationalMatrix) -> Result<DecorationReport> {
    check_columns(k, c)?;
    let verdicts: Vec<bool> = k
        .facets()
        .par_iter()
        .map(|f| is_oriented(&c.select_columns(&SimplicialComplex::columns(f))))
        .collect::<Result<_>>()?;
    let failing: Vec<Vec<usize>> = k
        .facets()
        .iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| !ok)
        .map(|(f, _)| f.clone())
        .collect();
    Ok(DecorationReport {
        decorated: failing.is_empty(),
        n_facets: k.len(),
        failing,
    })
}

/// `sign(det Ã_τ) * sign(det C̃_τ)` per facet, where `C̃_τ` is `C_τ` with a
/// row of ones on top.
pub fn simplex_signs(
    k: &SimplicialComplex,
    a: &PointConfiguration,
    c: &RationalMatrix,
) -> Result<Vec<Sign>> {
    check_columns(k, c)?;
    a.check_complex(k)?;
    k.facets()
        .par_iter()
        .map(|f| {
            let da = a.lifted_facet(f).determinant()?;
            if da.is_zero() {
                return Err(Error::DegenerateFacet { facet: f.clone() });
            }
            let cf = c.select_columns(&SimplicialComplex::columns(f));
            if !is_oriented(&cf)? {
                return Err(Error::NotDecorated { facet: f.clone() });
            }
            let dc = cf.with_ones_row().determinant()?;
            Ok(Sign::of(&da) * Sign::of(&dc))
        })
        .collect()
}

/// `|det Ã_τ|`: Euclidean volume scaled by `d!`.
pub fn normalized_volume(a: &PointConfiguration, facet: &[usize]) -> Result<Rational> {
    if facet.len() != a.dimension() + 1 || facet.iter().any(|&v| v == 0 || v > a.len()) {
        return Err(Error::InvalidArgument(format!(
            "{facet:?} is not a simplex of the configuration"
        )));
    }
    Ok(a.lifted_facet(facet).determinant()?.abs())
}

/// All facets have normalized volume one.
pub fn is_unimodular(k: &SimplicialComplex, a: &PointConfiguration) -> Result<bool> {
    a.check_complex(k)?;
    let vols: Vec<Rational> = k
        .facets()
        .par_iter()
        .map(|f| normalized_volume(a, f))
        .collect::<Result<_>>()?;
    Ok(vols.iter().all(|v| *v == Rational::from_integer(1.into())))
}

/// Sum of the normalized volumes of all facets.
pub fn total_volume(k: &SimplicialComplex, a: &PointConfiguration) -> Result<Rational> {
    a.check_complex(k)?;
    k.facets()
        .iter()
        .map(|f| normalized_volume(a, f))
        .try_fold(Rational::zero(), |acc, v| Ok(acc + v?))
}
