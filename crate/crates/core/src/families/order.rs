//! Order polytopes and their canonical triangulation by linear extensions.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Triangulation;
use crate::complex::{Coloring, PointConfiguration, SimplicialComplex};
use crate::linalg::int;
use crate::viro::HeightFunction;
use crate::{Error, Result};

/// A partial order on `1..=d` given by relations `a < b`; stored
/// transitively reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPoset")]
pub struct Poset {
    elements: usize,
    relations: Vec<(usize, usize)>,
    #[serde(skip)]
    less: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
struct RawPoset {
    elements: usize,
    relations: Vec<(usize, usize)>,
}

impl TryFrom<RawPoset> for Poset {
    type Error = Error;

    fn try_from(r: RawPoset) -> Result<Self> {
        Poset::new(r.elements, &r.relations)
    }
}

impl Poset {
    /// Builds the order generated by `relations`; fails on cycles or
    /// out-of-range elements.
    pub fn new(elements: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; elements]; elements];
        for &(a, b) in relations {
            if a == 0 || b == 0 || a > elements || b > elements {
                return Err(Error::InvalidArgument(format!(
                    "relation ({a}, {b}) outside 1..={elements}"
                )));
            }
            less[a - 1][b - 1] = true;
        }
        for k in 0..elements {
            for i in 0..elements {
                if less[i][k] {
                    for j in 0..elements {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..elements).any(|i| less[i][i]) {
            return Err(Error::InvalidArgument("relations contain a cycle".into()));
        }
        let mut reduced = Vec::new();
        for i in 0..elements {
            for j in 0..elements {
                if less[i][j] && !(0..elements).any(|k| less[i][k] && less[k][j]) {
                    reduced.push((i + 1, j + 1));
                }
            }
        }
        Ok(Poset {
            elements,
            relations: reduced,
            less,
        })
    }

    pub fn chain(d: usize) -> Self {
        let rel: Vec<_> = (1..d).map(|i| (i, i + 1)).collect();
        Self::new(d, &rel).expect("a chain is acyclic")
    }

    pub fn antichain(d: usize) -> Self {
        Self::new(d, &[]).expect("no relations")
    }

    /// Random order: each pair `i < j` is related with probability `p`.
    pub fn random<R: Rng>(d: usize, p: f64, rng: &mut R) -> Self {
        let mut rel = Vec::new();
        for i in 1..=d {
            for j in i + 1..=d {
                if rng.gen_bool(p) {
                    rel.push((i, j));
                }
            }
        }
        Self::new(d, &rel).expect("relations respect the natural order")
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    /// Cover relations `(a, b)`, sorted.
    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    pub fn is_less(&self, a: usize, b: usize) -> bool {
        self.less[a - 1][b - 1]
    }

    /// Linear extensions as sequences `a_1, ..., a_d` listing the elements
    /// in increasing position, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let d = self.elements;
        let below: Vec<u64> = (0..d)
            .map(|j| (0..d).filter(|&i| self.less[i][j]).fold(0u64, |m, i| m | 1 << i))
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn go(below: &[u64], placed: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let d = below.len();
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            for e in 0..d {
                if placed & (1 << e) == 0 && below[e] & !placed == 0 {
                    cur.push(e + 1);
                    go(below, placed | 1 << e, cur, out);
                    cur.pop();
                }
            }
        }
        go(&below, 0, &mut cur, &mut out);
        out
    }

    /// Number of linear extensions by dynamic programming over down-sets.
    pub fn count_linear_extensions(&self) -> BigUint {
        let d = self.elements;
        assert!(d < 64, "down-set masks are 64-bit");
        let below: Vec<u64> = (0..d)
            .map(|j| (0..d).filter(|&i| self.less[i][j]).fold(0u64, |m, i| m | 1 << i))
            .collect();
        let mut memo = std::collections::HashMap::new();
        fn count(
            placed: u64,
            below: &[u64],
            memo: &mut std::collections::HashMap<u64, BigUint>,
        ) -> BigUint {
            let d = below.len();
            if placed.count_ones() as usize == d {
                return BigUint::one();
            }
            if let Some(v) = memo.get(&placed) {
                return v.clone();
            }
            let mut total = BigUint::zero();
            for e in 0..d {
                if placed & (1 << e) == 0 && below[e] & !placed == 0 {
                    total += count(placed | 1 << e, below, memo);
                }
            }
            memo.insert(placed, total.clone());
            total
        }
        count(0, &below, &mut memo)
    }
}

/// The canonical triangulation of the order polytope `O(P)`.
///
/// Each linear extension `a_1, ..., a_d` gives the simplex with vertices `0`
/// and `Σ_{i >= k} e_{a_i}` for `k = 1..=d`. Vertices are numbered by
/// increasing size `|y|`, ties broken lexicographically, so the origin is
/// vertex 1. Heights are `|y|^2` and the vertex `y` gets color
/// `(|y| + d) mod (d + 1)`: the origin gets color `d` and a vertex of
/// size `s >= 1` gets color `s - 1`.
pub fn order_polytope_triangulation(p: &Poset) -> Result<Triangulation> {
    let d = p.elements();
    if d == 0 {
        return Err(Error::InvalidArgument("empty poset".into()));
    }
    let exts = p.linear_extensions();
    let simplex = |ext: &[usize]| -> Vec<Vec<u8>> {
        let mut verts = vec![vec![0u8; d]];
        for k in (0..d).rev() {
            let mut y = verts.last().expect("origin present").clone();
            y[ext[k] - 1] = 1;
            verts.push(y);
        }
        verts
    };
    let mut all: BTreeSet<(usize, Vec<u8>)> = BTreeSet::new();
    for e in &exts {
        for y in simplex(e) {
            all.insert((y.iter().filter(|&&b| b == 1).count(), y));
        }
    }
    let vertices: Vec<Vec<u8>> = all.into_iter().map(|(_, y)| y).collect();
    let index = |y: &Vec<u8>| -> usize {
        vertices.iter().position(|v| v == y).expect("vertex collected") + 1
    };
    let facets: Vec<Vec<usize>> = exts
        .iter()
        .map(|e| simplex(e).iter().map(index).collect())
        .collect();
    let complex = SimplicialComplex::new(d, vertices.len(), facets)?;
    let sizes: Vec<usize> = vertices
        .iter()
        .map(|y| y.iter().filter(|&&b| b == 1).count())
        .collect();
    let points = PointConfiguration::new(
        d,
        vertices
            .iter()
            .map(|y| y.iter().map(|&b| int(b as i64)).collect())
            .collect(),
    )?;
    Ok(Triangulation {
        points,
        complex,
        heights: HeightFunction::new(sizes.iter().map(|&s| int((s * s) as i64)).collect()),
        coloring: Coloring::new(sizes.iter().map(|&s| (s + d) % (d + 1)).collect()),
    })
}

/// Heights `-|y|^2` on the vertices of a triangulation built by
/// [`order_polytope_triangulation`]. Unlike `|y|^2` these induce the
/// linear extension triangulation under the lower hull convention.
pub fn order_polytope_concave_heights(t: &Triangulation) -> HeightFunction {
    HeightFunction::new(t.heights.values().iter().map(|h| -h.clone()).collect())
}
