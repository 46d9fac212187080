//! Points on the moment curve, the minimal triangulation `Ô_{n,d}` of the
//! cyclic polytope and its bipartite subcomplex `S_{n,d}`.

use num_traits::Pow;

use crate::complex::{PointConfiguration, SimplicialComplex};
use crate::linalg::{int, Rational};
use crate::{Error, Result};

/// Nodes `1, 2, ..., n`.
pub fn default_nodes(n: usize) -> Vec<Rational> {
    (1..=n as i64).map(int).collect()
}

/// The points `(a, a^2, ..., a^d)` for strictly increasing nodes `a`.
pub fn cyclic_points(d: usize, nodes: &[Rational]) -> Result<PointConfiguration> {
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("nodes must be strictly increasing".into()));
    }
    let points = nodes
        .iter()
        .map(|a| (1..=d).map(|p| Pow::pow(a, p)).collect())
        .collect();
    PointConfiguration::new(d, points)
}

/// Heights `a^{d+1}`, which induce `Ô_{n,d}` as lower hull.
pub fn cyclic_heights(d: usize, nodes: &[Rational]) -> Vec<Rational> {
    nodes.iter().map(|a| Pow::pow(a, d + 1)).collect()
}

fn check(n: usize, d: usize) -> Result<()> {
    if d == 0 || n < d + 1 {
        return Err(Error::InvalidArgument(format!(
            "cyclic polytope needs d >= 1 and n >= d + 1, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// All `i_1 < ... < i_k` in `first..=last` with gaps of at least two,
/// in lexicographic order.
fn gapped_tuples(k: usize, first: usize, last: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, from: usize, last: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        // the remaining pairs need 2 * (remaining - 1) more room after i
        let mut i = from;
        while i + 2 * (remaining - 1) <= last {
            cur.push(i);
            go(k, i + 2, last, cur, out);
            cur.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    go(k, first, last, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Pair-start indices describing the facets of `Ô_{n,d}`: for odd `d` the
/// facet is `∪ {i_j, i_j + 1}`, for even `d` vertex 1 is added.
pub fn cyclic_index_tuples(n: usize, d: usize) -> Result<Vec<Vec<usize>>> {
    check(n, d)?;
    Ok(if d % 2 == 1 {
        gapped_tuples(d.div_ceil(2), 1, n - 1)
    } else {
        gapped_tuples(d / 2, 2, n - 1)
    })
}

fn facet_of(tuple: &[usize], d: usize) -> Vec<usize> {
    let mut f = Vec::with_capacity(d + 1);
    if d % 2 == 0 {
        f.push(1);
    }
    for &i in tuple {
        f.push(i);
        f.push(i + 1);
    }
    f
}

/// The minimal triangulation `Ô_{n,d}` of the cyclic polytope `C(n, d)`.
pub fn cyclic_minimal_triangulation(n: usize, d: usize) -> Result<SimplicialComplex> {
    let facets = cyclic_index_tuples(n, d)?
        .iter()
        .map(|t| facet_of(t, d))
        .collect();
    SimplicialComplex::new(d, n, facets)
}

/// Membership in `S_{n,d}`: each consecutive pair has `i_j` odd or a gap
/// larger than two.
pub fn snd_condition(tuple: &[usize]) -> bool {
    tuple.windows(2).all(|w| w[0] % 2 == 1 || w[1] - w[0] > 2)
}

/// The subcomplex `S_{n,d}` of `Ô_{n,d}` for odd `d`.
pub fn snd_subcomplex(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d % 2 == 0 {
        return Err(Error::InvalidArgument(format!("S(n, d) needs odd d, got {d}")));
    }
    let facets = cyclic_index_tuples(n, d)?
        .into_iter()
        .filter(|t| snd_condition(t))
        .map(|t| facet_of(&t, d))
        .collect();
    SimplicialComplex::new(d, n, facets)
}

/// Number of facets of `Ô_{n,d}` in closed form.
pub fn cyclic_facet_count(n: usize, d: usize) -> u128 {
    if d % 2 == 1 {
        let k = d.div_ceil(2);
        binomial(n.saturating_sub(k), k)
    } else {
        binomial(n.saturating_sub(1 + d / 2), d / 2)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{is_bipartite, DualGraph};

    fn facet_strings(k: &SimplicialComplex) -> Vec<String> {
        k.facets()
            .iter()
            .map(|f| f.iter().map(|v| v.to_string()).collect())
            .collect()
    }

    #[test]
    fn ohat_6_3() {
        let k = cyclic_minimal_triangulation(6, 3).unwrap();
        assert_eq!(
            facet_strings(&k),
            ["1234", "1245", "1256", "2345", "2356", "3456"]
        );
    }

    #[test]
    fn single_simplex_and_even_dimension() {
        for d in 1..6 {
            assert_eq!(cyclic_minimal_triangulation(d + 1, d).unwrap().len(), 1);
        }
        let k = cyclic_minimal_triangulation(6, 2).unwrap();
        assert_eq!(facet_strings(&k), ["123", "134", "145", "156"]);
        assert!(cyclic_minimal_triangulation(3, 3).is_err());
    }

    #[test]
    fn closed_form_counts() {
        for d in 1..8 {
            for n in d + 1..=12 {
                assert_eq!(
                    cyclic_minimal_triangulation(n, d).unwrap().len() as u128,
                    cyclic_facet_count(n, d),
                    "n = {n}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn snd_small_cases() {
        let s = snd_subcomplex(6, 3).unwrap();
        assert_eq!(facet_strings(&s), ["1234", "1245", "1256", "2356", "3456"]);
        assert_eq!(snd_subcomplex(3, 1).unwrap().len(), 2);
        assert_eq!(snd_subcomplex(11, 5).unwrap().len(), 38);
        assert!(snd_subcomplex(6, 2).is_err());
    }

    #[test]
    fn snd_dual_graph_is_bipartite() {
        for d in [1, 3, 5, 7] {
            for n in d + 1..=13 {
                let g = DualGraph::of(&snd_subcomplex(n, d).unwrap());
                assert!(is_bipartite(&g).is_bipartite(), "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn points_on_moment_curve() {
        let a = cyclic_points(3, &default_nodes(4)).unwrap();
        assert_eq!(a.point(2), &[int(2), int(4), int(8)]);
        assert!(cyclic_points(2, &[int(1), int(1), int(2)]).is_err());
        assert_eq!(cyclic_heights(3, &default_nodes(2)), vec![int(1), int(16)]);
    }
}
