use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{rat, ratio, Rational};

use super::{Basis, TExpr};

/// Polynomial in the commuting variables `S_2, S_4, S_6, ...`.
///
/// A monomial is the sorted list of its variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable `S_k`, even `k >= 2`.
    pub fn var(k: u32) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::OutOfRange(format!("S_k needs even k >= 2, got {k}")));
        }
        let mut p = Self::zero();
        p.add_term(vec![k], Rational::one());
        Ok(p)
    }

    pub fn monomial(mut vars: Vec<u32>, c: Rational) -> Result<Self> {
        if vars.iter().any(|&k| k < 2 || k % 2 == 1) {
            return Err(Error::OutOfRange("S-variables need even indices >= 2".into()));
        }
        vars.sort_unstable();
        let mut p = Self::zero();
        p.add_term(vars, c);
        Ok(p)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut m: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        m.sort_unstable();
        let v = self.terms.remove(&m).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, a * b);
            }
        }
        out
    }

    /// `𝔰 = 1/2 sum_{a,b} (a+b-2) S_{a+b-2} ∂²/∂S_a∂S_b - 1/2 ∂/∂S_2`, the
    /// sum over ordered pairs of even `a, b >= 2`.
    pub fn s_operator(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for i in 0..m.len() {
                for j in 0..m.len() {
                    if i == j {
                        continue;
                    }
                    let w = m[i] + m[j] - 2;
                    let mut rest: Vec<u32> = m
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &v)| v)
                        .collect();
                    rest.push(w);
                    out.add_term(rest, c * ratio(w as i64, 2));
                }
                if m[i] == 2 {
                    let mut rest = m.clone();
                    rest.remove(i);
                    out.add_term(rest, c * ratio(-1, 2));
                }
            }
        }
        out
    }

    /// Multiplication by the weight on each homogeneous part.
    pub fn weight_op(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * rat(m.iter().sum::<u32>() as i64));
        }
        out
    }

    /// The element of the pointwise algebra, `S_k = T_{k-1,1}`.
    pub fn to_texpr(&self) -> TExpr {
        let mut out = TExpr::zero(Basis::Pointwise);
        for (m, c) in &self.terms {
            out.add_term(m.iter().map(|&k| (k - 1, 1)).collect(), c.clone());
        }
        out
    }
}

impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m.iter().rev().map(|k| format!("S[{k}]")).collect();
            let mono = mono.join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
