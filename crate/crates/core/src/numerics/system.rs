//! Viro systems at a fixed parameter, evaluated in log coordinates.
//!
//! Row `i` of the system is `Σ_j C_ij exp(ν_j log t + ⟨a_j, u⟩)`. Rows are
//! divided by their largest term, so residuals are relative and the
//! exponent range never matters.

use num_traits::Zero;

use super::real::{to_f64, Arith, Real};
use crate::viro::ViroSystem;
use crate::{Error, Rational, Result};

/// A point `u = log X` of the positive orthant.
pub type LogPoint = Vec<Real>;

/// Residuals together with the per-row exponents they were divided by.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub residuals: Vec<Real>,
    /// `E_i`, the largest exponent among the nonzero terms of row `i`.
    pub scales: Vec<Real>,
}

/// A Viro system specialised to one value of `t`.
#[derive(Clone, Debug)]
pub struct NumericSystem {
    dimension: usize,
    coefficients: Vec<Vec<Real>>,
    /// Nonzero coefficient pattern.
    support: Vec<Vec<bool>>,
    exponents: Vec<Vec<Rational>>,
    /// `ν_j log t`.
    base: Vec<Real>,
}

impl NumericSystem {
    pub fn new(s: &ViroSystem, log_t: &Real, ar: &Arith) -> Self {
        let c = s.coefficients();
        let coefficients = (0..c.rows())
            .map(|i| c.row(i).iter().map(|q| ar.from_rational(q)).collect())
            .collect();
        let support = (0..c.rows())
            .map(|i| c.row(i).iter().map(|q| !q.is_zero()).collect())
            .collect();
        let base = s.heights().values().iter().map(|h| ar.scale(h, log_t)).collect();
        NumericSystem {
            dimension: s.dimension(),
            coefficients,
            support,
            exponents: s.points().points().to_vec(),
            base,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn n_terms(&self) -> usize {
        self.base.len()
    }

    fn check(&self, u: &[Real]) -> Result<()> {
        if u.len() != self.dimension {
            return Err(Error::Shape(format!(
                "log point of length {} for {} variables",
                u.len(),
                self.dimension
            )));
        }
        Ok(())
    }

    /// `ν_j log t + ⟨a_j, u⟩` for every term.
    fn term_exponents(&self, u: &[Real], ar: &Arith) -> Vec<Real> {
        self.exponents
            .iter()
            .zip(&self.base)
            .map(|(a, b)| {
                a.iter()
                    .zip(u)
                    .fold(b.clone(), |acc, (q, x)| ar.add(&acc, &ar.scale(q, x)))
            })
            .collect()
    }

    fn row_scales(&self, e: &[Real]) -> Vec<Real> {
        self.support
            .iter()
            .map(|row| {
                e.iter()
                    .zip(row)
                    .filter(|(_, &s)| s)
                    .map(|(x, _)| x)
                    .fold(None::<&Real>, |m, x| match m {
                        Some(m) if m >= x => Some(m),
                        _ => Some(x),
                    })
                    .cloned()
                    .unwrap_or_else(|| Real::from_i64(0, 64))
            })
            .collect()
    }

    /// `exp(e_j - E_i)` for the nonzero terms of row `i`, zero elsewhere.
    fn weights(&self, e: &[Real], scales: &[Real], ar: &Arith) -> Vec<Vec<Real>> {
        self.support
            .iter()
            .zip(scales)
            .map(|(row, s)| {
                e.iter()
                    .zip(row)
                    .map(|(x, &nz)| if nz { ar.exp(&ar.sub(x, s)) } else { ar.zero() })
                    .collect()
            })
            .collect()
    }

    /// Scaled residuals and the scales used.
    pub fn evaluate(&self, u: &[Real], ar: &Arith) -> Result<Evaluation> {
        self.check(u)?;
        let e = self.term_exponents(u, ar);
        let scales = self.row_scales(&e);
        let residuals = self.residuals(&e, &scales, ar);
        Ok(Evaluation { residuals, scales })
    }

    /// Residuals divided by `exp(E_i)` for given scales.
    pub fn evaluate_with_scales(&self, u: &[Real], scales: &[Real], ar: &Arith) -> Result<Vec<Real>> {
        self.check(u)?;
        let e = self.term_exponents(u, ar);
        Ok(self.residuals(&e, scales, ar))
    }

    fn residuals(&self, e: &[Real], scales: &[Real], ar: &Arith) -> Vec<Real> {
        let w = self.weights(e, scales, ar);
        self.coefficients
            .iter()
            .zip(&w)
            .map(|(c, w)| {
                c.iter()
                    .zip(w)
                    .fold(ar.zero(), |acc, (c, w)| ar.add(&acc, &ar.mul(c, w)))
            })
            .collect()
    }

    /// `∂ f_i / ∂ u_k` with row `i` divided by `exp(E_i)`.
    pub fn jacobian_with_scales(&self, u: &[Real], scales: &[Real], ar: &Arith) -> Result<Vec<Vec<Real>>> {
        self.check(u)?;
        let e = self.term_exponents(u, ar);
        let w = self.weights(&e, scales, ar);
        Ok(self
            .coefficients
            .iter()
            .zip(&w)
            .map(|(c, w)| {
                let terms: Vec<Real> = c.iter().zip(w).map(|(c, w)| ar.mul(c, w)).collect();
                (0..self.dimension)
                    .map(|k| {
                        terms.iter().zip(&self.exponents).fold(ar.zero(), |acc, (t, a)| {
                            if a[k].is_zero() {
                                acc
                            } else {
                                ar.add(&acc, &ar.scale(&a[k], t))
                            }
                        })
                    })
                    .collect()
            })
            .collect())
    }

    /// Jacobian in log coordinates, rows scaled as in [`NumericSystem::evaluate`].
    pub fn jacobian(&self, u: &[Real], ar: &Arith) -> Result<Vec<Vec<Real>>> {
        self.check(u)?;
        let scales = self.row_scales(&self.term_exponents(u, ar));
        self.jacobian_with_scales(u, &scales, ar)
    }
}

/// `max_i |v_i|` in floating point.
pub fn max_norm(v: &[Real]) -> f64 {
    v.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max)
}

/// Euclidean distance in floating point.
pub fn distance(a: &[Real], b: &[Real], ar: &Arith) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| to_f64(&ar.sub(x, y)).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn magnitude(x: &Real) -> Real {
    if x.is_negative() {
        x.neg()
    } else {
        x.clone()
    }
}

/// Solves `m x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear(m: &[Vec<Real>], b: &[Real], ar: &Arith) -> Result<Vec<Real>> {
    let n = b.len();
    let mut a: Vec<Vec<Real>> = m
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| {
                magnitude(&a[x][col])
                    .partial_cmp(&magnitude(&a[y][col]))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if a[pivot][col].is_zero() {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        for r in col + 1..n {
            let f = ar.div(&a[r][col], &a[col][col]);
            if f.is_zero() {
                continue;
            }
            for k in col..=n {
                let v = ar.sub(&a[r][k], &ar.mul(&f, &a[col][k]));
                a[r][k] = v;
            }
        }
    }
    let mut x = vec![ar.zero(); n];
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(a[r][n].clone(), |acc, k| ar.sub(&acc, &ar.mul(&a[r][k], &x[k])));
        x[r] = ar.div(&s, &a[r][r]);
    }
    Ok(x)
}

/// 2-norm condition number `σ_max / σ_min` computed in floating point.
pub fn condition_number(m: &[Vec<Real>]) -> f64 {
    let n = m.len();
    let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| to_f64(&m[i][j]));
    let sv = dm.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 || !min.is_finite() {
        f64::INFINITY
    } else {
        max / min
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PointConfiguration;
    use crate::linalg::{int, ratio};
    use crate::viro::HeightFunction;
    use crate::RationalMatrix;
    use proptest::prelude::*;

    fn system(points: &[Vec<i64>], c: &[Vec<i64>], heights: &[i64]) -> ViroSystem {
        let d = c.len();
        ViroSystem::new(
            PointConfiguration::from_i64(d, points).unwrap(),
            RationalMatrix::from_i64_rows(c).unwrap(),
            HeightFunction::new(heights.iter().map(|&h| int(h)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn single_monomial_row() {
        let s = system(&[vec![0], vec![2]], &[vec![0, 5]], &[0, 3]);
        let ar = Arith::new(128);
        let log_t = ar.ln_rational(&ratio(1, 10)).unwrap();
        let ns = NumericSystem::new(&s, &log_t, &ar);
        let u = vec![ar.from_f64(0.5)];
        let ev = ns.evaluate(&u, &ar).unwrap();
        assert!((to_f64(&ev.residuals[0]) - 5.0).abs() < 1e-30);
        let want = 3.0 * 0.1f64.ln() + 1.0;
        assert!((to_f64(&ev.scales[0]) - want).abs() < 1e-12);
    }

    #[test]
    fn exact_kernel_root() {
        // 2 - x at t = 1
        let s = system(&[vec![0], vec![1]], &[vec![2, -1]], &[0, 0]);
        let ar = Arith::new(128);
        let ns = NumericSystem::new(&s, &ar.zero(), &ar);
        let u = vec![ar.ln(&ar.int(2))];
        let ev = ns.evaluate(&u, &ar).unwrap();
        assert!(max_norm(&ev.residuals) < 1e-35);
        let j = ns.jacobian(&u, &ar).unwrap();
        assert!((to_f64(&j[0][0]) + 1.0).abs() < 1e-30);
    }

    #[test]
    fn linear_solve() {
        let ar = Arith::new(128);
        let m: Vec<Vec<Real>> = [[0.0, 2.0], [3.0, 1.0]]
            .iter()
            .map(|r| r.iter().map(|&v| ar.from_f64(v)).collect())
            .collect();
        let b = vec![ar.int(4), ar.int(5)];
        let x = solve_linear(&m, &b, &ar).unwrap();
        assert!((to_f64(&x[0]) - 1.0).abs() < 1e-30);
        assert!((to_f64(&x[1]) - 2.0).abs() < 1e-30);
        let sing = vec![vec![ar.int(1), ar.int(2)], vec![ar.int(2), ar.int(4)]];
        assert!(solve_linear(&sing, &b, &ar).is_err());
        assert!(condition_number(&sing) > 1e15);
    }

    fn random_system() -> impl Strategy<Value = (ViroSystem, Vec<f64>, f64)> {
        (1usize..=4).prop_flat_map(|d| {
            let n = d + 3;
            (
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, d), n),
                proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), d),
                proptest::collection::vec(0i64..=6, n),
                proptest::collection::vec(-1.0f64..1.0, d),
                0.05f64..1.0,
            )
                .prop_map(move |(pts, c, h, u, t)| {
                    let mut pts = pts;
                    // keep the configuration full dimensional
                    for (k, p) in pts.iter_mut().take(d).enumerate() {
                        p[k] += 10;
                    }
                    (system(&pts, &c, &h), u, t)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn jacobian_matches_central_differences((s, u, t) in random_system()) {
            let ar = Arith::new(192);
            let log_t = ar.from_f64(t.ln());
            let ns = NumericSystem::new(&s, &log_t, &ar);
            let u: Vec<Real> = u.iter().map(|&v| ar.from_f64(v)).collect();
            let scales = ns.evaluate(&u, &ar).unwrap().scales;
            let j = ns.jacobian_with_scales(&u, &scales, &ar).unwrap();
            let h = ar.from_f64(1e-20);
            let two_h = ar.mul(&h, &ar.int(2));
            let jmax = j.iter().map(|r| max_norm(r)).fold(0.0, f64::max);
            for k in 0..ns.dimension() {
                let mut up = u.clone();
                let mut dn = u.clone();
                up[k] = ar.add(&u[k], &h);
                dn[k] = ar.sub(&u[k], &h);
                let fu = ns.evaluate_with_scales(&up, &scales, &ar).unwrap();
                let fd = ns.evaluate_with_scales(&dn, &scales, &ar).unwrap();
                for i in 0..ns.dimension() {
                    let fdiff = to_f64(&ar.div(&ar.sub(&fu[i], &fd[i]), &two_h));
                    let exact = to_f64(&j[i][k]);
                    prop_assert!((fdiff - exact).abs() <= 1e-8 * jmax.max(1e-300));
                }
            }
        }
    }
}
