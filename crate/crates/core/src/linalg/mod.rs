//! Exact linear algebra over the rationals.

mod matrix;
mod rational;

use itertools::Itertools;
use num_traits::{One, Zero};

pub use matrix::RationalMatrix;
pub use rational::{
    format_rational, int, parse_rational, ratio, serde_rational, serde_rational_rows,
    serde_rational_vec, Rational, Sign, SignVector,
};

use crate::{Error, Result};

fn check_corank_one(m: &RationalMatrix) -> Result<()> {
    if m.cols() != m.rows() + 1 {
        return Err(Error::Shape(format!(
            "expected a d x (d+1) matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// `minor(M, i)` for `i = 1..=d+1`: the determinant after deleting column `i`.
pub fn maximal_minors(m: &RationalMatrix) -> Result<Vec<Rational>> {
    check_corank_one(m)?;
    (0..m.cols())
        .map(|i| m.remove_column(i).determinant())
        .collect()
}

/// The alternating signed minors `(-1)^i minor(M, i)`, 1-based `i`.
fn signed_minors(m: &RationalMatrix) -> Result<Vec<Rational>> {
    Ok(maximal_minors(m)?
        .into_iter()
        .enumerate()
        .map(|(k, q)| if k % 2 == 0 { -q } else { q })
        .collect())
}

/// True when all `(-1)^i minor(M, i)` are nonzero with a common sign.
pub fn is_oriented(m: &RationalMatrix) -> Result<bool> {
    Ok(SignVector::of(&signed_minors(m)?).uniform().is_some())
}

/// A strictly positive kernel vector normalized to `v_1 = 1`, or `None` when
/// the matrix is not oriented. Rank-deficient input is an error.
pub fn positive_kernel_vector(m: &RationalMatrix) -> Result<Option<Vec<Rational>>> {
    let s = signed_minors(m)?;
    if s.iter().all(Zero::is_zero) {
        return Err(Error::RankDeficient);
    }
    if SignVector::of(&s).uniform().is_none() {
        return Ok(None);
    }
    let first = s[0].clone();
    Ok(Some(s.into_iter().map(|q| q / &first).collect()))
}

/// Signs of all `d x d` minors of a `d x n` matrix, keyed by 1-based column
/// subsets in lexicographic order.
pub fn chirotope(c: &RationalMatrix) -> Result<Vec<(Vec<usize>, Sign)>> {
    let d = c.rows();
    if c.cols() < d {
        return Err(Error::Shape(format!(
            "chirotope of a {}x{} matrix",
            d,
            c.cols()
        )));
    }
    (0..c.cols())
        .combinations(d)
        .map(|cols| {
            let det = c.select_columns(&cols).determinant()?;
            Ok((cols.iter().map(|j| j + 1).collect(), Sign::of(&det)))
        })
        .collect()
}

/// Laplace expansion along the first row. Exponential; used as a test oracle.
pub fn cofactor_determinant(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let rest: Vec<usize> = (1..n).collect();
    let mut acc = Rational::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let mut sub = RationalMatrix::zeros(n - 1, n - 1);
        for (a, &r) in rest.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                sub.set(a, b, m.get(r, c).clone());
            }
        }
        let term = m.get(0, j) * cofactor_determinant(&sub);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> RationalMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn minors_of_small_matrices() {
        assert_eq!(
            maximal_minors(&m("1 0 -1; 0 1 -1")).unwrap(),
            vec![int(1), int(-1), int(1)]
        );
        let simplex = m("1 0 0 -1; 0 1 0 -1; 0 0 1 -1");
        assert_eq!(
            maximal_minors(&simplex).unwrap(),
            vec![int(-1), int(1), int(-1), int(1)]
        );
        assert!(maximal_minors(&m("1 2; 3 4")).is_err());
    }

    #[test]
    fn orientation_examples() {
        assert!(is_oriented(&m("1 0 -1; 0 1 -1")).unwrap());
        assert!(!is_oriented(&m("1 0 1; 0 1 1")).unwrap());
        assert_eq!(
            positive_kernel_vector(&m("1 0 -1; 0 1 -1")).unwrap(),
            Some(vec![int(1), int(1), int(1)])
        );
        assert_eq!(positive_kernel_vector(&m("1 0 1; 0 1 1")).unwrap(), None);
        assert!(matches!(
            positive_kernel_vector(&m("1 1 1; 2 2 2")),
            Err(Error::RankDeficient)
        ));
        assert!(!is_oriented(&m("1 1 1; 2 2 2")).unwrap());
    }

    #[test]
    fn chirotope_examples() {
        let id = chirotope(&m("1 0; 0 1")).unwrap();
        assert_eq!(id, vec![(vec![1, 2], Sign::Positive)]);
        let c = chirotope(&m("1 0 -1; 0 1 -1")).unwrap();
        let signs: Vec<i8> = c.iter().map(|(_, s)| s.as_i8()).collect();
        assert_eq!(signs, vec![1, -1, 1]);
        assert_eq!(c[1].0, vec![1, 3]);
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec(-5i64..=5, rows * cols).prop_map(move |v| {
            RationalMatrix::new(rows, cols, v.into_iter().map(int).collect()).unwrap()
        })
    }

    fn corank_one() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=4).prop_flat_map(|d| small_matrix(d, d + 1))
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(a in (1usize..=6).prop_flat_map(|n| small_matrix(n, n))) {
            prop_assert_eq!(a.determinant().unwrap(), cofactor_determinant(&a));
        }

        #[test]
        fn oriented_iff_positive_kernel(a in corank_one()) {
            if a.rank() == a.rows() {
                let v = positive_kernel_vector(&a).unwrap();
                prop_assert_eq!(is_oriented(&a).unwrap(), v.is_some());
                if let Some(v) = v {
                    prop_assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
                    prop_assert_eq!(&v[0], &int(1));
                }
            }
        }

        #[test]
        fn row_operations_preserve_orientation(a in corank_one(), seed in any::<u64>()) {
            let d = a.rows();
            let entries: Vec<Rational> = (0..d * d)
                .map(|k| int(((seed >> (k % 60)) as i64 % 7) - 3))
                .collect();
            let g = RationalMatrix::new(d, d, entries).unwrap();
            if !g.determinant().unwrap().is_zero() {
                prop_assert_eq!(
                    is_oriented(&g.mul(&a).unwrap()).unwrap(),
                    is_oriented(&a).unwrap()
                );
            }
        }

        #[test]
        fn column_permutation_preserves_orientation(
            a in corank_one(),
            perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()
        ) {
            let cols: Vec<usize> = perm.into_iter().filter(|&j| j < a.cols()).collect();
            let b = a.select_columns(&cols);
            prop_assert_eq!(is_oriented(&b).unwrap(), is_oriented(&a).unwrap());
        }

        #[test]
        fn left_kernel_rank_nullity(a in (1usize..=5, 1usize..=4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let k = a.left_kernel_basis();
            prop_assert_eq!(k.rows(), a.rows() - a.rank());
            if k.rows() > 0 {
                prop_assert!(k.mul(&a).unwrap().is_zero());
                prop_assert_eq!(k.rank(), k.rows());
            }
        }
    }
}
