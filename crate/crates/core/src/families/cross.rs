//! The cross polytope sliced by the coordinate hyperplanes.

use super::Triangulation;
use crate::complex::{Coloring, PointConfiguration, SimplicialComplex};
use crate::linalg::int;
use crate::viro::HeightFunction;
use crate::{Error, Result};

/// Points `0, e_1, -e_1, ..., e_d, -e_d` (the origin is vertex 1, `+e_i` is
/// vertex `2i` and `-e_i` is vertex `2i + 1`) and one facet per orthant.
pub fn cross_polytope_triangulation(d: usize) -> Result<Triangulation> {
    if d == 0 || d > 20 {
        return Err(Error::InvalidArgument(format!(
            "cross polytope dimension {d} outside 1..=20"
        )));
    }
    let mut points = vec![vec![int(0); d]];
    for i in 0..d {
        for s in [1, -1] {
            let mut p = vec![int(0); d];
            p[i] = int(s);
            points.push(p);
        }
    }
    let facets = (0..1usize << d)
        .map(|mask| {
            let mut f = vec![1];
            f.extend((0..d).map(|i| 2 * (i + 1) + (mask >> i & 1)));
            f
        })
        .collect();
    let mut heights = vec![int(1); 2 * d + 1];
    heights[0] = int(0);
    let mut colors = vec![d];
    colors.extend((0..d).flat_map(|i| [i, i]));
    Ok(Triangulation {
        points: PointConfiguration::new(d, points)?,
        complex: SimplicialComplex::new(d, 2 * d + 1, facets)?,
        heights: HeightFunction::new(heights),
        coloring: Coloring::new(colors),
    })
}
