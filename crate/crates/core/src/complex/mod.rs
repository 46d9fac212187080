//! Pure simplicial complexes on vertices `1..=n` and point configurations.
//!
//! Facets are addressed by their 0-based position in [`SimplicialComplex::facets`];
//! vertices are 1-based throughout, matching the JSON formats.

mod coloring;
mod decoration;
mod dual;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use coloring::{balanced_coloring, decoration_from_coloring, Coloring};
pub use decoration::{
    is_positively_decorated, is_unimodular, normalized_volume, simplex_signs, total_volume,
    DecorationReport,
};
pub use dual::{is_bipartite, Bipartition, DualGraph};

use crate::linalg::{serde_rational_rows, Rational, RationalMatrix};
use crate::{Error, Result};

/// A pure `d`-dimensional simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex")]
pub struct SimplicialComplex {
    dimension: usize,
    n_vertices: usize,
    facets: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawComplex {
    dimension: usize,
    n_vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<RawComplex> for SimplicialComplex {
    type Error = Error;

    fn try_from(r: RawComplex) -> Result<Self> {
        SimplicialComplex::new(r.dimension, r.n_vertices, r.facets)
    }
}

impl SimplicialComplex {
    /// Validates and normalizes: vertices inside each facet are sorted and
    /// the facet list is sorted lexicographically.
    pub fn new(dimension: usize, n_vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for f in &facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != dimension + 1 {
                return Err(Error::InvalidComplex(format!(
                    "facet {f:?} does not have {} distinct vertices",
                    dimension + 1
                )));
            }
            if s[0] == 0 || s[dimension] > n_vertices {
                return Err(Error::InvalidComplex(format!(
                    "facet {f:?} leaves the range 1..={n_vertices}"
                )));
            }
            if !seen.insert(s) {
                return Err(Error::InvalidComplex(format!("facet {f:?} repeated")));
            }
        }
        Ok(SimplicialComplex {
            dimension,
            n_vertices,
            facets: seen.into_iter().collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Position of a facet given as a sorted vertex list.
    pub fn position(&self, facet: &[usize]) -> Option<usize> {
        self.facets.binary_search_by(|f| f.as_slice().cmp(facet)).ok()
    }

    /// Vertices appearing in at least one facet, ascending.
    pub fn used_vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    /// The complex on the same vertex set keeping facets for which `keep`
    /// holds.
    pub fn filter(&self, mut keep: impl FnMut(&[usize]) -> bool) -> SimplicialComplex {
        SimplicialComplex {
            dimension: self.dimension,
            n_vertices: self.n_vertices,
            facets: self.facets.iter().filter(|f| keep(f)).cloned().collect(),
        }
    }

    /// 0-based column indices of a facet.
    pub(crate) fn columns(facet: &[usize]) -> Vec<usize> {
        facet.iter().map(|v| v - 1).collect()
    }
}

/// Ordered exponent vectors `a_1, ..., a_n` in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct PointConfiguration {
    dimension: usize,
    #[serde(with = "serde_rational_rows")]
    points: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    dimension: usize,
    #[serde(with = "serde_rational_rows")]
    points: Vec<Vec<Rational>>,
}

impl TryFrom<RawConfiguration> for PointConfiguration {
    type Error = Error;

    fn try_from(r: RawConfiguration) -> Result<Self> {
        PointConfiguration::new(r.dimension, r.points)
    }
}

impl PointConfiguration {
    pub fn new(dimension: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if points.len() < dimension + 1 {
            return Err(Error::Shape(format!(
                "{} points cannot span dimension {dimension}",
                points.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::Shape(format!(
                "point of length {} in dimension {dimension}",
                p.len()
            )));
        }
        Ok(PointConfiguration { dimension, points })
    }

    pub fn from_i64<R: AsRef<[i64]>>(dimension: usize, points: &[R]) -> Result<Self> {
        Self::new(
            dimension,
            points
                .iter()
                .map(|p| p.as_ref().iter().map(|&v| crate::linalg::int(v)).collect())
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// Point `a_j` for 1-based `j`.
    pub fn point(&self, j: usize) -> &[Rational] {
        &self.points[j - 1]
    }

    /// The `d x n` matrix `A` with the points as columns.
    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(&self.points).expect("validated shape")
    }

    /// `A` with a first row of ones prepended.
    pub fn lifted(&self) -> RationalMatrix {
        self.matrix().with_ones_row()
    }

    /// The square matrix `Ã_τ` for a facet of 1-based vertices.
    pub fn lifted_facet(&self, facet: &[usize]) -> RationalMatrix {
        let pts: Vec<Vec<Rational>> = facet.iter().map(|&v| self.point(v).to_vec()).collect();
        RationalMatrix::from_columns(&pts)
            .expect("validated shape")
            .with_ones_row()
    }

    /// Compatibility of a complex with this configuration.
    pub fn check_complex(&self, k: &SimplicialComplex) -> Result<()> {
        if k.dimension() != self.dimension || k.n_vertices() > self.len() {
            return Err(Error::Shape(format!(
                "complex of dimension {} on {} vertices against {} points in dimension {}",
                k.dimension(),
                k.n_vertices(),
                self.len(),
                self.dimension
            )));
        }
        Ok(())
    }
}
