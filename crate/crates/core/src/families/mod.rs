//! Named families of triangulations and counting.

pub mod counting;
pub mod cross;
pub mod cyclic;
pub mod multilinear;
pub mod order;

use serde::Serialize;

use crate::complex::{Coloring, PointConfiguration, SimplicialComplex};
use crate::viro::HeightFunction;

pub use counting::{
    asymptotic_estimate, count_snd, count_snd_series, diagonal_coefficients, CountTable,
};
pub use cross::cross_polytope_triangulation;
pub use cyclic::{
    cyclic_heights, cyclic_minimal_triangulation, cyclic_points, default_nodes, snd_subcomplex,
};
pub use multilinear::{multilinear_tp_system, MultilinearSystem};
pub use order::{order_polytope_concave_heights, order_polytope_triangulation, Poset};

/// A triangulated point configuration with heights and a balanced coloring.
/// The heights induce the triangulation for every family except order
/// polytopes; see [`order_polytope_concave_heights`].
#[derive(Clone, Debug, Serialize)]
pub struct Triangulation {
    pub points: PointConfiguration,
    pub complex: SimplicialComplex,
    pub heights: HeightFunction,
    pub coloring: Coloring,
}
