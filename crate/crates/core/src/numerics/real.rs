//! Extended precision reals.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::Rational;
use crate::{Error, Result};

pub type Real = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

/// Name of the environment variable overriding the default precision.
pub const PRECISION_ENV: &str = "POSVIRO_PRECISION_BITS";

/// Significand bits used when no precision is given: the value of
/// `POSVIRO_PRECISION_BITS` if set, otherwise 256.
pub fn default_precision() -> usize {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&p: &usize| p >= 64)
        .unwrap_or(256)
}

/// Arithmetic context: a precision and the constant cache needed by
/// transcendental functions. Not shared between threads.
pub struct Arith {
    prec: usize,
    consts: RefCell<Consts>,
}

impl Arith {
    pub fn new(prec: usize) -> Self {
        Arith {
            prec: prec.max(64),
            consts: RefCell::new(Consts::new().expect("constant cache allocation")),
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> Real {
        BigFloat::from_i64(0, self.prec)
    }

    pub fn int(&self, v: i64) -> Real {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn from_f64(&self, v: f64) -> Real {
        BigFloat::from_f64(v, self.prec)
    }

    pub fn from_bigint(&self, z: &BigInt) -> Real {
        if let Ok(v) = i64::try_from(z) {
            return self.int(v);
        }
        BigFloat::parse(&z.to_string(), Radix::Dec, self.prec, RM, &mut self.consts.borrow_mut())
    }

    pub fn from_rational(&self, q: &Rational) -> Real {
        self.div(&self.from_bigint(q.numer()), &self.from_bigint(q.denom()))
    }

    /// `log p - log q` for a positive rational `p / q`.
    pub fn ln_rational(&self, q: &Rational) -> Result<Real> {
        if !q.is_positive() {
            return Err(Error::Numeric(format!("logarithm of non-positive {q}")));
        }
        Ok(self.sub(
            &self.ln(&self.from_bigint(q.numer())),
            &self.ln(&self.from_bigint(q.denom())),
        ))
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        a.div(b, self.prec, RM)
    }

    pub fn exp(&self, a: &Real) -> Real {
        a.exp(self.prec, RM, &mut self.consts.borrow_mut())
    }

    pub fn ln(&self, a: &Real) -> Real {
        a.ln(self.prec, RM, &mut self.consts.borrow_mut())
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        a.sqrt(self.prec, RM)
    }

    /// Rational times real.
    pub fn scale(&self, q: &Rational, a: &Real) -> Real {
        if q.is_zero() {
            return self.zero();
        }
        if q.denom() == &BigInt::from(1) {
            return self.mul(&self.from_bigint(q.numer()), a);
        }
        self.mul(&self.from_rational(q), a)
    }

    /// Decimal rendering with 40 significant digits.
    pub fn to_string(&self, a: &Real) -> String {
        a.format(Radix::Dec, RM, &mut self.consts.borrow_mut())
            .unwrap_or_else(|_| "NaN".into())
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        let v = BigFloat::parse(s, Radix::Dec, self.prec, RM, &mut self.consts.borrow_mut());
        if v.is_nan() {
            return Err(Error::Parse {
                what: "real",
                input: s.to_owned(),
            });
        }
        Ok(v)
    }
}

/// Nearest `f64`, saturating to infinities and zero out of range.
pub fn to_f64(a: &Real) -> f64 {
    if a.is_nan() {
        return f64::NAN;
    }
    if a.is_inf() {
        return if a.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let Some((words, _, sign, exp, _)) = a.as_raw_parts() else {
        return f64::NAN;
    };
    let Some(&top) = words.last() else {
        return 0.0;
    };
    if top == 0 {
        return 0.0;
    }
    let v = ldexp(top as f64 / 2f64.powi(64), exp);
    if sign.is_negative() {
        -v
    } else {
        v
    }
}

fn ldexp(mut x: f64, mut e: i32) -> f64 {
    while e > 512 {
        x *= 2f64.powi(512);
        e -= 512;
    }
    while e < -512 {
        x *= 2f64.powi(-512);
        e += 512;
    }
    x * 2f64.powi(e)
}
