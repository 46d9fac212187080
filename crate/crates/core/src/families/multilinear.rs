//! Multilinear systems built from strictly totally positive matrices, whose
//! solutions are all positive and can be written down exactly.

use itertools::Itertools;
use num_traits::{One, Signed};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::{int, serde_rational_rows, Rational, RationalMatrix};
use crate::{Error, Result};

/// The system `f_i = Π_u ((-1)^{d_u+1} T^{(u)}_{d_u+1,i} + Σ_j (-1)^j T^{(u)}_{j,i} X_{uj})`
/// together with its exactly computed positive solutions.
#[derive(Clone, Debug, Serialize)]
pub struct MultilinearSystem {
    pub parts: Vec<usize>,
    /// `T^{(u)}`, of size `(d_u + 1) x d`.
    pub matrices: Vec<RationalMatrix>,
    /// For each solution, the block `u` of each equation index `i`.
    pub assignments: Vec<Vec<usize>>,
    /// Variables ordered `X_{11}, ..., X_{1 d_1}, X_{21}, ...`.
    #[serde(with = "serde_rational_rows")]
    pub solutions: Vec<Vec<Rational>>,
    /// Seed that produced distinct solutions.
    pub seed: u64,
}

impl MultilinearSystem {
    pub fn dimension(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Value of the factor of `f_i` belonging to block `u` at `x`.
    fn factor(&self, u: usize, i: usize, x: &[Rational]) -> Rational {
        let du = self.parts[u];
        let offset: usize = self.parts[..u].iter().sum();
        let t = &self.matrices[u];
        let mut v = alternate(du + 1) * t.get(du, i);
        for j in 0..du {
            v += alternate(j + 1) * t.get(j, i) * &x[offset + j];
        }
        v
    }

    /// Evaluates `f_1, ..., f_d` exactly.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let d = self.dimension();
        if x.len() != d {
            return Err(Error::Shape(format!("point of length {} for {d} variables", x.len())));
        }
        Ok((0..d)
            .map(|i| {
                (0..self.parts.len())
                    .map(|u| self.factor(u, i, x))
                    .fold(Rational::one(), |acc, f| acc * f)
            })
            .collect())
    }
}

fn alternate(k: usize) -> Rational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `d! / (d_1! ... d_k!)`.
pub fn multinomial(parts: &[usize]) -> u128 {
    let mut total = 0usize;
    let mut acc = 1u128;
    for &p in parts {
        for i in 1..=p {
            total += 1;
            acc = acc * total as u128 / i as u128;
        }
    }
    acc
}

/// Generalized Vandermonde matrix `(x_j^{i-1})` with `rows` distinct
/// nodes drawn from `1..=node_range`.
fn vandermonde(rows: usize, cols: usize, rng: &mut ChaCha8Rng, node_range: usize) -> RationalMatrix {
    let mut nodes: Vec<usize> = sample(rng, node_range, rows).into_iter().map(|v| v + 1).collect();
    nodes.sort_unstable();
    let mut m = RationalMatrix::zeros(rows, cols);
    for (j, &x) in nodes.iter().enumerate() {
        let mut p = Rational::one();
        for i in 0..cols {
            m.set(j, i, p.clone());
            p *= int(x as i64);
        }
    }
    m
}

/// True when every square minor of `m` is positive.
pub fn is_strictly_totally_positive(m: &RationalMatrix) -> bool {
    (1..=m.rows().min(m.cols())).all(|k| {
        (0..m.rows()).combinations(k).all(|rows| {
            (0..m.cols()).combinations(k).all(|cols| {
                let mut sub = RationalMatrix::zeros(k, k);
                for (a, &r) in rows.iter().enumerate() {
                    for (b, &c) in cols.iter().enumerate() {
                        sub.set(a, b, m.get(r, c).clone());
                    }
                }
                sub.determinant().map(|v| v.is_positive()).unwrap_or(false)
            })
        })
    })
}

/// Assignments of `0..d` to blocks with the prescribed sizes, in
/// lexicographic order.
fn set_partitions(parts: &[usize]) -> Vec<Vec<usize>> {
    fn go(parts: &[usize], left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts.iter().sum::<usize>() {
            out.push(cur.clone());
            return;
        }
        for u in 0..parts.len() {
            if left[u] > 0 {
                left[u] -= 1;
                cur.push(u);
                go(parts, left, cur, out);
                cur.pop();
                left[u] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(parts, &mut parts.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn solve_for(matrices: &[RationalMatrix], parts: &[usize], assignment: &[usize]) -> Result<Vec<Rational>> {
    let mut x = Vec::new();
    for (u, &du) in parts.iter().enumerate() {
        let eqs: Vec<usize> = (0..assignment.len()).filter(|&i| assignment[i] == u).collect();
        let t = &matrices[u];
        let mut a = RationalMatrix::zeros(du, du);
        let mut b = Vec::with_capacity(du);
        for (r, &i) in eqs.iter().enumerate() {
            for j in 0..du {
                a.set(r, j, alternate(j + 1) * t.get(j, i));
            }
            b.push(-(alternate(du + 1) * t.get(du, i)));
        }
        x.extend(a.solve(&b)?);
    }
    Ok(x)
}

/// Builds the system for a partition `d_1 + ... + d_k = d` and solves
/// each of the `multinomial(d; d_1, ..., d_k)` linear systems exactly.
///
/// Nodes are drawn from a seeded generator; when two solutions coincide
/// the next seed is tried, up to `retries` times.
pub fn multilinear_tp_system(parts: &[usize], seed: u64, retries: usize) -> Result<MultilinearSystem> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidArgument(format!("invalid partition {parts:?}")));
    }
    let d: usize = parts.iter().sum();
    let assignments = set_partitions(parts);
    for attempt in 0..=retries as u64 {
        let s = seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let matrices: Vec<RationalMatrix> = parts
            .iter()
            .map(|&du| vandermonde(du + 1, d, &mut rng, 4 * (du + 1) + 8))
            .collect();
        let solutions = assignments
            .iter()
            .map(|a| solve_for(&matrices, parts, a))
            .collect::<Result<Vec<_>>>()?;
        if solutions.iter().flatten().any(|v| !v.is_positive()) {
            return Err(Error::Numeric(format!(
                "non-positive solution with seed {s}; the matrices are not totally positive"
            )));
        }
        let distinct = solutions.iter().all_unique();
        if distinct {
            return Ok(MultilinearSystem {
                parts: parts.to_vec(),
                matrices,
                assignments,
                solutions,
                seed: s,
            });
        }
    }
    Err(Error::Numeric(format!(
        "coincident solutions after {} attempts",
        retries + 1
    )))
}
