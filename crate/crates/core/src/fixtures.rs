//! Worked examples with exact data, for reproduction runs and tests.

use crate::complex::{Coloring, PointConfiguration, SimplicialComplex};
use crate::families::{cyclic_heights, cyclic_points, snd_subcomplex, Poset};
use crate::linalg::{int, parse_rational};
use crate::viro::{HeightFunction, ViroSystem};
use crate::{RationalMatrix, Result};

/// A Viro system together with the complex it is built on.
#[derive(Clone, Debug)]
pub struct Example {
    pub system: ViroSystem,
    pub complex: SimplicialComplex,
    pub coloring: Option<Coloring>,
}

/// Facet counts of `S_{2d+1,d}` for `d = 1, 3, ..., 21`.
pub const TABLE_1: [u64; 11] = [
    2, 8, 38, 192, 1002, 5336, 28814, 157184, 864146, 4780008, 26572086,
];

/// Seven points in the plane with a balanced triangulated subcomplex of six
/// triangles.
pub fn planar_seven_points() -> Result<Example> {
    let points = PointConfiguration::from_i64(
        2,
        &[[1, -1], [-4, -6], [-4, 4], [6, 0], [3, 6], [10, 5], [6, -6]],
    )?;
    let heights = HeightFunction::new([0, 0, 0, 3, 5, 10, 2].into_iter().map(int).collect());
    let complex = SimplicialComplex::new(
        2,
        7,
        vec![
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![3, 4, 5],
            vec![4, 5, 6],
            vec![1, 2, 7],
            vec![1, 4, 7],
        ],
    )?;
    let c = RationalMatrix::from_i64_rows(&[[1, 0, -1, 0, 1, -1, -1], [0, 1, -1, 1, 0, -1, -1]])?;
    Ok(Example {
        system: ViroSystem::new(points, c, heights)?,
        complex,
        coloring: Some(Coloring::new(vec![0, 1, 2, 1, 0, 2, 2])),
    })
}

/// Nodes `0, 1, ..., n-1`.
pub fn zero_based_nodes(n: usize) -> Vec<crate::Rational> {
    (0..n as i64).map(int).collect()
}

/// Decoration of `S_{6,3}`.
pub fn s63_decoration() -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[
        [1, 0, 3, -4, 0, -1],
        [-2, 1, 1, 0, 0, -1],
        [0, 0, 3, -3, 1, -3],
    ])
    .expect("constant matrix")
}

/// `S_{6,3}` on the moment curve at nodes `0..5` with heights `a^4`.
pub fn s63_system() -> Result<Example> {
    let nodes = zero_based_nodes(6);
    let points = cyclic_points(3, &nodes)?;
    let heights = HeightFunction::new(cyclic_heights(3, &nodes));
    Ok(Example {
        system: ViroSystem::new(points, s63_decoration(), heights)?,
        complex: snd_subcomplex(6, 3)?,
        coloring: None,
    })
}

/// A nonnegative rank 3 matrix with the zero pattern of `S_{6,3}`: rows are
/// vertices, columns the facets 1234, 1245, 1256, 2356, 3456.
pub fn s63_completion() -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[
        [1, 4, 1, 0, 0],
        [1, 8, 3, 2, 0],
        [3, 0, 0, 3, 6],
        [4, 4, 0, 0, 4],
        [0, 3, 3, 6, 3],
        [0, 0, 1, 3, 2],
    ])
    .expect("constant matrix")
}

const S11_5: [[&str; 11]; 5] = [
    [
        "14036/26031", "-29047/45845", "22485/134218", "-20647/80496", "14312/69515",
        "-39015/127243", "-6739/42098", "19359/360623", "16000/83529", "1804/131469",
        "4862/44061",
    ],
    [
        "19937/61149", "-8379/77942", "-2105/18949", "5635/122379", "9229/59989",
        "5391/113671", "17593/33547", "-50525/112808", "-13843/33458", "18357/116882",
        "-54686/132521",
    ],
    [
        "6391/94296", "-3329/144100", "7957/156078", "-5685/48451", "-14459/74653",
        "30218/245615", "-12227/25927", "49127/145204", "-14117/47609", "29515/59658",
        "-42328/83609",
    ],
    [
        "-12249/145219", "-13663/97873", "-25831/90582", "26287/33739", "6818/23407",
        "-14579/44765", "-11126/58889", "2247/122770", "11139/100537", "14421/74818",
        "-60016/644607",
    ],
    [
        "15984/47945", "-22523/72834", "-10734/41165", "8531/24837", "-21257/47591",
        "22017/37075", "5346/284353", "19757/194173", "5740/83029", "-62271/466111",
        "5591/37902",
    ],
];

/// Decoration of `S_{11,5}`.
pub fn s11_5_decoration() -> RationalMatrix {
    let rows = S11_5
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s).expect("constant entry")).collect())
        .collect();
    RationalMatrix::from_rows(rows).expect("constant matrix")
}

/// `S_{11,5}` on the moment curve at nodes `0..10` with heights `a^6`.
pub fn s11_5_system() -> Result<Example> {
    let nodes = zero_based_nodes(11);
    let points = cyclic_points(5, &nodes)?;
    let heights = HeightFunction::new(cyclic_heights(5, &nodes));
    Ok(Example {
        system: ViroSystem::new(points, s11_5_decoration(), heights)?,
        complex: snd_subcomplex(11, 5)?,
        coloring: None,
    })
}

/// The poset `1 < 2` with `3` incomparable; its order polytope is a prism.
pub fn prism_poset() -> Poset {
    Poset::new(3, &[(1, 2)]).expect("constant poset")
}

/// Dual graph edges of `Ô_{6,3}` with facets labelled `0..6` in the order
/// 1234, 1245, 1256, 2345, 2356, 3456.
pub const O63_DUAL_EDGES: [(usize, usize); 8] =
    [(0, 1), (1, 2), (2, 4), (4, 5), (5, 3), (3, 0), (1, 3), (3, 4)];
