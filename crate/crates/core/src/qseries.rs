//! Power series in `q` truncated after a fixed order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::bernoulli;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::{rat, Rational};

/// `sum_{n <= N} a_n q^n + O(q^{N+1})`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> QSeries<S> {
    /// Coefficients `a_0, ..., a_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs at least the constant term");
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> S) -> Self {
        QSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &S {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        QSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// `D = q d/dq`.
    pub fn derive(&self) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a.clone() * S::from_i64(n as i64))
                .collect(),
        }
    }

    pub fn derive_n(&self, times: u32) -> Self {
        (0..times).fold(self.clone(), |s, _| s.derive())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(QSeries::constant(S::one(), self.order()), |acc, _| &acc * self)
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("series with zero constant term is not invertible".into()));
        }
        let n = self.order();
        let inv0 = S::one() / self.coeffs[0].clone();
        let mut out = vec![S::zero(); n + 1];
        out[0] = inv0.clone();
        for m in 1..=n {
            let acc = (1..=m).fold(S::zero(), |acc, j| acc + self.coeffs[j].clone() * out[m - j].clone());
            out[m] = -acc * inv0.clone();
        }
        Ok(QSeries { coeffs: out })
    }

    /// First index where the two series differ, comparing up to the
    /// smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Equality through the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl<S: Scalar> Add for &QSeries<S> {
    type Output = QSeries<S>;
    fn add(self, rhs: &QSeries<S>) -> QSeries<S> {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
    }
}

impl<S: Scalar> Sub for &QSeries<S> {
    type Output = QSeries<S>;
    fn sub(self, rhs: &QSeries<S>) -> QSeries<S> {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
    }
}

impl<S: Scalar> Mul for &QSeries<S> {
    type Output = QSeries<S>;
    fn mul(self, rhs: &QSeries<S>) -> QSeries<S> {
        let n = self.order().min(rhs.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out[i + j] = out[i + j].clone() + a.clone() * rhs.coeffs[j].clone();
            }
        }
        QSeries { coeffs: out }
    }
}

impl<S: Scalar> Neg for &QSeries<S> {
    type Output = QSeries<S>;
    fn neg(self) -> QSeries<S> {
        QSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl<S: Scalar> fmt::Display for QSeries<S> {
    /// `c0 + c1*q + c2*q^2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match n {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "q")?,
                1 => write!(f, "{abs}*q")?,
                _ if abs.is_one() => write!(f, "q^{n}")?,
                _ => write!(f, "{abs}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `σ_e(n)`, the sum of the `e`-th powers of the divisors of `n >= 1`.
pub fn divisor_sigma(e: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(e);
            let e2 = n / d;
            if e2 != d {
                s += BigInt::from(e2).pow(e);
            }
        }
        d += 1;
    }
    s
}

/// `G_k = -B_k/(2k) + sum_{n >= 1} σ_{k-1}(n) q^n` for any `k >= 1`.
///
/// Odd `k` give the quasimodular-free Eisenstein-like series used by the
/// extended algebra.
pub fn eisenstein(k: u32, order: usize) -> Result<QSeries<Rational>> {
    if k == 0 {
        return Err(Error::OutOfRange("Eisenstein series need k >= 1".into()));
    }
    let c0 = -bernoulli(k) / rat(2 * k as i64);
    Ok(QSeries::from_fn(order, |n| {
        if n == 0 {
            c0.clone()
        } else {
            Rational::from_integer(divisor_sigma(k - 1, n as u64))
        }
    }))
}

/// `prod_{n >= 1} (1 - q^n)` truncated at `order`.
pub fn euler_factor(order: usize) -> QSeries<Rational> {
    // pentagonal number theorem
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = rat(1);
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = (k * (3 * k - 1) / 2) as usize;
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p1 > order {
            break;
        }
        coeffs[p1] += rat(sign);
        if p2 <= order {
            coeffs[p2] += rat(sign);
        }
        k += 1;
    }
    QSeries::new(coeffs)
}
