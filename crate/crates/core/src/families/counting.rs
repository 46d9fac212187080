//! Facet counts `c_{n,d}` of `S_{n,d}` by recurrence, generating function
//! and diagonal, plus the asymptotic estimate.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::cyclic::{cyclic_index_tuples, snd_condition};
use crate::{Error, Result};

fn pair_count(d: usize) -> Result<usize> {
    if d % 2 == 0 {
        return Err(Error::InvalidArgument(format!("counts need odd d, got {d}")));
    }
    Ok(d.div_ceil(2))
}

/// Number of gapped tuples satisfying the `S_{n,d}` condition, by direct
/// enumeration; `c(n, 0) = 1`.
fn enumerated(n: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if n < 2 * k {
        return BigUint::zero();
    }
    let count = cyclic_index_tuples(n, 2 * k - 1)
        .map(|ts| ts.iter().filter(|t| snd_condition(t)).count())
        .unwrap_or(0);
    BigUint::from(count)
}

/// `c_{n,d}` via `c(n, k) = c(n-2, k) + c(n-2, k-1) + c(n-4, k-1)` in the
/// pair count `k = (d+1)/2`. Rows `n <= 3` come from enumeration.
pub fn count_snd(n: usize, d: usize) -> Result<BigUint> {
    let k = pair_count(d)?;
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let row = (0..=k)
            .map(|j| {
                if m <= 3 || j == 0 {
                    enumerated(m, j)
                } else {
                    &table[m - 2][j] + &table[m - 2][j - 1] + &table[m - 4][j - 1]
                }
            })
            .collect();
        table.push(row);
    }
    Ok(table[n][k].clone())
}

/// Truncated bivariate power series `Σ a_{ij} X^i Y^j`, `i <= nx`, `j <= ny`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    nx: usize,
    ny: usize,
    coeffs: Vec<BigInt>,
}

impl BiSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        BiSeries {
            nx,
            ny,
            coeffs: vec![BigInt::zero(); (nx + 1) * (ny + 1)],
        }
    }

    /// Builds a polynomial from `(x_exp, y_exp, coeff)` terms, dropping terms
    /// beyond the truncation.
    pub fn from_terms(nx: usize, ny: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut s = Self::zero(nx, ny);
        for &(i, j, c) in terms {
            if i <= nx && j <= ny {
                *s.at_mut(i, j) += c;
            }
        }
        s
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i * (self.ny + 1) + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.coeffs[i * (self.ny + 1) + j]
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let mut out = Self::zero(self.nx, self.ny);
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                let a = self.coeff(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..=self.nx - i {
                    for q in 0..=self.ny - j {
                        let b = other.coeff(p, q);
                        if !b.is_zero() {
                            *out.at_mut(i + p, j + q) += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<BiSeries> {
        let c0 = self.coeff(0, 0).clone();
        if c0 != BigInt::one() && c0 != -BigInt::one() {
            return Err(Error::InvalidArgument(
                "series inverse needs a unit constant term".into(),
            ));
        }
        let mut out = Self::zero(self.nx, self.ny);
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                let mut acc = if i == 0 && j == 0 { BigInt::one() } else { BigInt::zero() };
                for p in 0..=i {
                    for q in 0..=j {
                        if p == 0 && q == 0 {
                            continue;
                        }
                        let a = self.coeff(p, q);
                        if !a.is_zero() {
                            acc -= a * out.coeff(i - p, j - q);
                        }
                    }
                }
                *out.at_mut(i, j) = acc * &c0;
            }
        }
        Ok(out)
    }
}

/// `c_{n,d}` as `[X^n Y^{(d+1)/2}]` of `(1 + X + X^3 Y) / (1 - X^2 - X^2 Y - X^4 Y)`.
pub fn count_snd_series(n: usize, d: usize) -> Result<BigUint> {
    let k = pair_count(d)?;
    let num = BiSeries::from_terms(n, k, &[(0, 0, 1), (1, 0, 1), (3, 1, 1)]);
    let den = BiSeries::from_terms(n, k, &[(0, 0, 1), (2, 0, -1), (2, 1, -1), (4, 1, -1)]);
    let s = num.mul(&den.inverse()?);
    s.coeff(n, k)
        .to_biguint()
        .ok_or_else(|| Error::Numeric("negative series coefficient".into()))
}

/// Coefficients `[X^k] D(X)` for `k = 0..=k_max`, where
/// `D(X) = ((1 + X) / sqrt(1 - 6X + X^2) - 1) / 2`.
pub fn diagonal_coefficients(k_max: usize) -> Vec<BigUint> {
    // p_k = [X^k] 1/sqrt(1 - 6X + X^2), the central Delannoy numbers
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=k_max {
        let mut v = BigInt::from(3 * (2 * k - 1)) * &p[k - 1];
        if k >= 2 {
            v -= BigInt::from(k - 1) * &p[k - 2];
        }
        p.push(v / BigInt::from(k));
    }
    (0..=k_max)
        .map(|k| {
            if k == 0 {
                BigUint::zero()
            } else {
                ((&p[k] + &p[k - 1]) / 2u32)
                    .to_biguint()
                    .expect("Delannoy numbers are positive")
            }
        })
        .collect()
}

/// `α = 3 - 2√2`.
pub fn alpha() -> f64 {
    3.0 - 2.0 * std::f64::consts::SQRT_2
}

/// `((√2+1)^d / √d) · 2^{1/4}(1+α) / (4α√π)`.
pub fn asymptotic_estimate(d: usize) -> f64 {
    let a = alpha();
    let d = d as f64;
    (std::f64::consts::SQRT_2 + 1.0).powf(d) / d.sqrt() * 2f64.powf(0.25) * (1.0 + a)
        / (4.0 * a * std::f64::consts::PI.sqrt())
}

/// A table of counts `c_{n,d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    /// `c_{2d+1,d}` for odd `d <= d_max`.
    pub fn diagonal(d_max: usize) -> Result<Self> {
        let mut t = CountTable::default();
        for d in (1..=d_max).step_by(2) {
            t.insert(2 * d + 1, d, count_snd(2 * d + 1, d)?);
        }
        Ok(t)
    }

    pub fn insert(&mut self, n: usize, d: usize, value: BigUint) {
        self.entries.insert((n, d), value);
    }

    pub fn get(&self, n: usize, d: usize) -> Option<&BigUint> {
        self.entries.get(&(n, d))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.entries.iter().map(|(&(n, d), v)| (n, d, v))
    }

    /// CSV with header `d,n,count`, ordered by `d` then `n`.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<_> = self.iter().collect();
        rows.sort_by_key(|&(n, d, _)| (d, n));
        let mut out = String::from("d,n,count\n");
        for (n, d, v) in rows {
            writeln!(out, "{d},{n},{v}").expect("writing to a string");
        }
        out
    }
}

/// `c_d^{1/d}` in floating point.
pub fn growth_rate(c: &BigUint, d: usize) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / d as f64)
}
