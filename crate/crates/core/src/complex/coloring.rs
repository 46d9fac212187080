use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{DualGraph, SimplicialComplex};
use crate::linalg::{Rational, RationalMatrix};
use crate::{Error, Result};

/// A map from vertices to colors `0..=d`; `colors[i]` is the color of
/// vertex `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, vertex: usize) -> usize {
        self.colors[vertex - 1]
    }

    /// Every facet sees each color `0..=d` exactly once. Since every edge of
    /// a pure complex lies in a facet, this is properness of the 1-skeleton
    /// together with balancedness.
    pub fn is_balanced_for(&self, k: &SimplicialComplex) -> bool {
        let d = k.dimension();
        if self.colors.len() < k.n_vertices() || self.colors.iter().any(|&c| c > d) {
            return false;
        }
        k.facets().iter().all(|f| {
            let mut seen = vec![false; d + 1];
            f.iter().all(|&v| !std::mem::replace(&mut seen[self.color(v)], true))
        })
    }
}

/// Colors the vertices so that every facet is rainbow, or returns `None`.
///
/// Inside a connected component of the dual graph a coloring is forced up
/// to a permutation of the colors, so each component is propagated from a
/// seed facet and the permutations are then matched across components that
/// share vertices. Unused vertices get color 0.
pub fn balanced_coloring(k: &SimplicialComplex) -> Option<Coloring> {
    let d = k.dimension();
    let g = DualGraph::of(k);
    let mut local: Vec<HashMap<usize, usize>> = Vec::new();
    for comp in g.components() {
        local.push(propagate(k, &g, comp[0])?);
    }
    let mut colors: Vec<Option<usize>> = vec![None; k.n_vertices()];
    if !assign(&local, 0, d, &mut colors) {
        return None;
    }
    let coloring = Coloring::new(colors.into_iter().map(|c| c.unwrap_or(0)).collect());
    coloring.is_balanced_for(k).then_some(coloring)
}

fn propagate(
    k: &SimplicialComplex,
    g: &DualGraph,
    seed: usize,
) -> Option<HashMap<usize, usize>> {
    let d = k.dimension();
    let facets = k.facets();
    let mut color: HashMap<usize, usize> =
        facets[seed].iter().enumerate().map(|(c, &v)| (v, c)).collect();
    let mut visited = vec![false; facets.len()];
    visited[seed] = true;
    let mut stack = vec![seed];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            let mut used = vec![false; d + 1];
            let mut fresh = None;
            for &v in &facets[w] {
                match color.get(&v) {
                    Some(&c) if used[c] => return None,
                    Some(&c) => used[c] = true,
                    None => fresh = Some(v),
                }
            }
            if let Some(v) = fresh {
                let missing = used.iter().position(|&b| !b)?;
                color.insert(v, missing);
            }
            if !visited[w] {
                visited[w] = true;
                stack.push(w);
            }
        }
    }
    Some(color)
}

fn assign(local: &[HashMap<usize, usize>], idx: usize, d: usize, colors: &mut [Option<usize>]) -> bool {
    let Some(comp) = local.get(idx) else {
        return true;
    };
    let mut perm: Vec<Option<usize>> = vec![None; d + 1];
    for (&v, &c) in comp {
        if let Some(target) = colors[v - 1] {
            match perm[c] {
                Some(t) if t != target => return false,
                _ => perm[c] = Some(target),
            }
        }
    }
    let mut taken = vec![false; d + 1];
    for t in perm.iter().flatten() {
        if std::mem::replace(&mut taken[*t], true) {
            return false;
        }
    }
    complete_perm(&mut perm, &mut taken, 0, &mut |perm| {
        let touched: Vec<usize> = comp
            .keys()
            .copied()
            .filter(|&v| colors[v - 1].is_none())
            .collect();
        for &v in &touched {
            colors[v - 1] = perm[comp[&v]];
        }
        if assign(local, idx + 1, d, colors) {
            return true;
        }
        for &v in &touched {
            colors[v - 1] = None;
        }
        false
    })
}

fn complete_perm(
    perm: &mut Vec<Option<usize>>,
    taken: &mut Vec<bool>,
    at: usize,
    visit: &mut dyn FnMut(&[Option<usize>]) -> bool,
) -> bool {
    if at == perm.len() {
        return visit(perm);
    }
    if perm[at].is_some() {
        return complete_perm(perm, taken, at + 1, visit);
    }
    for t in 0..taken.len() {
        if taken[t] {
            continue;
        }
        taken[t] = true;
        perm[at] = Some(t);
        if complete_perm(perm, taken, at + 1, visit) {
            return true;
        }
        perm[at] = None;
        taken[t] = false;
    }
    false
}

/// The `d x n` matrix whose column `i` is `e_{c+1}` for color `c < d` and
/// `(-1, ..., -1)` for color `d`.
pub fn decoration_from_coloring(coloring: &Coloring, n: usize, d: usize) -> Result<RationalMatrix> {
    if coloring.colors.len() < n {
        return Err(Error::InvalidArgument(format!(
            "coloring covers {} of {n} vertices",
            coloring.colors.len()
        )));
    }
    let mut m = RationalMatrix::zeros(d, n);
    for (j, &c) in coloring.colors[..n].iter().enumerate() {
        match c {
            c if c < d => m.set(c, j, Rational::one()),
            c if c == d => {
                for i in 0..d {
                    m.set(i, j, -Rational::one());
                }
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "color {c} outside 0..={d}"
                )))
            }
        }
    }
    Ok(m)
}
