use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::Scalar;
use crate::Rational;

/// Univariate polynomial in the monomial basis, coefficients ascending.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The identity `x`.
    pub fn x() -> Self {
        Self::monomial(1, S::one())
    }

    pub fn monomial(deg: usize, c: S) -> Self {
        let mut coeffs = vec![S::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_int(&self, n: i64) -> S {
        self.eval(&S::from_i64(n))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &S) -> Self {
        let lin = Poly::new(vec![c.clone(), S::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, a| &(&acc * &lin) + &Poly::constant(a.clone()))
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 0 { a.clone() } else { -a.clone() })
                .collect(),
        )
    }

    /// Ordinary derivative `d/dx`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::constant(S::one()), |acc, _| &acc * self)
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $m(self, rhs: Poly<S>) -> Poly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> fmt::Display for Poly<S> {
    /// Highest degree first, e.g. `x^2 + 3/2*x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
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
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in the basis `binom(x, i)`, coefficients ascending in `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomPoly<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> BinomPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BinomPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Newton expansion: the `i`-th coefficient is the `i`-th forward
    /// difference at zero.
    pub fn from_poly(p: &Poly<S>) -> Self {
        let Some(d) = p.degree() else {
            return BinomPoly { coeffs: Vec::new() };
        };
        let mut vals: Vec<S> = (0..=d as i64).map(|n| p.eval_int(n)).collect();
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            coeffs.push(vals[0].clone());
            vals = vals.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        }
        Self::new(coeffs)
    }

    pub fn to_poly(&self) -> Poly<S> {
        let mut out = Poly::zero();
        let mut falling = Poly::constant(S::one());
        let mut fact = S::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                falling = &falling * &Poly::new(vec![S::from_i64(-(i as i64 - 1)), S::one()]);
                fact = fact * S::from_i64(i as i64);
            }
            if !c.is_zero() {
                out = &out + &falling.scale(&(c.clone() / fact.clone()));
            }
        }
        out
    }
}

/// The `l`-th Faulhaber polynomial: `F_l(n) = sum_{i=1}^{n} i^{l-1}` on the
/// naturals, built as `sum_j S(l, j) (j-1)! binom(x, j)`.
pub fn faulhaber<S: Scalar>(l: u32) -> Poly<S> {
    assert!(l >= 1, "Faulhaber polynomials are indexed from 1");
    // Stirling numbers computed in S so that any scalar type works.
    let l = l as usize;
    let mut row: Vec<S> = vec![S::one()];
    for m in 1..=l {
        let mut next = vec![S::zero(); m + 1];
        for j in 1..=m {
            let keep = if j < row.len() { row[j].clone() * S::from_i64(j as i64) } else { S::zero() };
            next[j] = keep + row[j - 1].clone();
        }
        row = next;
    }
    let mut coeffs = vec![S::zero(); l + 1];
    let mut fact = S::one();
    for j in 1..=l {
        if j > 1 {
            fact = fact * S::from_i64(j as i64 - 1);
        }
        coeffs[j] = row[j].clone() * fact.clone();
    }
    BinomPoly::new(coeffs).to_poly()
}

/// `F_l(n)` as an integer.
pub fn faulhaber_value(l: u32, n: u64) -> BigInt {
    assert!(l >= 1, "Faulhaber polynomials are indexed from 1");
    (1..=n).fold(BigInt::zero(), |acc, i| acc + BigInt::from(i).pow(l - 1))
}

/// Discrete derivative `p(x) - p(x-1)`.
pub fn disc_derivative<S: Scalar>(p: &Poly<S>) -> Poly<S> {
    p - &p.shift(&S::from_i64(-1))
}

/// Discrete convolution `(p * q)(n) = sum_{i=1}^{n-1} p(i) q(n-i)`.
///
/// Works in the binomial basis. Vandermonde gives
/// `sum_{m=0}^{x} binom(m,i) binom(x-m,j) = binom(x+1, i+j+1)`; the sum
/// here omits `m = 0` and `m = x`, which only contribute when `i` or `j`
/// is zero.
pub fn disc_convolution<S: Scalar>(p: &Poly<S>, q: &Poly<S>) -> Poly<S> {
    let a = BinomPoly::from_poly(p);
    let b = BinomPoly::from_poly(q);
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return Poly::zero();
    }
    let len = a.coeffs.len() + b.coeffs.len() + 1;
    let mut out = vec![S::zero(); len];
    let mut add = |k: usize, c: S| out[k] = out[k].clone() + c;
    for (i, ai) in a.coeffs.iter().enumerate() {
        for (j, bj) in b.coeffs.iter().enumerate() {
            let c = ai.clone() * bj.clone();
            if c.is_zero() {
                continue;
            }
            // binom(x+1, n) = binom(x, n) + binom(x, n-1)
            let n = i + j + 1;
            add(n, c.clone());
            add(n - 1, c.clone());
            if i == 0 {
                add(j, -c.clone());
            }
            if j == 0 {
                add(i, -c.clone());
            }
        }
    }
    BinomPoly::new(out).to_poly()
}
