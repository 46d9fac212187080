use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::SimplicialComplex;

/// Facet adjacency graph: facets are adjacent when they share `d` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn of(k: &SimplicialComplex) -> DualGraph {
        let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (i, f) in k.facets().iter().enumerate() {
            for skip in 0..f.len() {
                let mut r = f.clone();
                r.remove(skip);
                ridges.entry(r).or_default().push(i);
            }
        }
        let mut edges = Vec::new();
        for owners in ridges.values() {
            for (x, &a) in owners.iter().enumerate() {
                for &b in &owners[x + 1..] {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        Self::from_edges(k.len(), edges)
    }

    pub fn from_edges(n_nodes: usize, mut edges: Vec<(usize, usize)>) -> DualGraph {
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); n_nodes];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        DualGraph {
            n_nodes,
            edges,
            adjacency,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Connected components, each listed in BFS order from its least node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_nodes];
        let mut out = Vec::new();
        for s in 0..self.n_nodes {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Outcome of a 2-coloring attempt on a dual graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bipartition {
    /// `+1` / `-1` per facet, opposite across every edge.
    Colored(Vec<i8>),
    /// Facets of a cycle of odd length, in cyclic order.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Colored(_))
    }

    pub fn coloring(&self) -> Option<&[i8]> {
        match self {
            Bipartition::Colored(c) => Some(c),
            Bipartition::OddCycle(_) => None,
        }
    }
}

/// BFS 2-coloring; on failure returns the odd cycle closed by the first
/// monochromatic edge.
pub fn is_bipartite(g: &DualGraph) -> Bipartition {
    let n = g.n_nodes();
    let mut color = vec![0i8; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if color[s] != 0 {
            continue;
        }
        color[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if color[v] == 0 {
                    color[v] = -color[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return Bipartition::OddCycle(close_cycle(u, v, &parent, &depth));
                }
            }
        }
    }
    Bipartition::Colored(color)
}

fn close_cycle(mut u: usize, mut v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[u] > depth[v] {
        left.push(u);
        u = parent[u];
    }
    while depth[v] > depth[u] {
        right.push(v);
        v = parent[v];
    }
    while u != v {
        left.push(u);
        right.push(v);
        u = parent[u];
        v = parent[v];
    }
    left.push(u);
    left.extend(right.into_iter().rev());
    left
}
