use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::Rational;

/// Sum of many rationals, grouped by denominator so that most additions are
/// plain integer additions without gcd computations.
#[derive(Default, Debug, Clone)]
pub struct RatSum {
    by_den: HashMap<BigInt, BigInt>,
}

impl RatSum {
    pub fn add(&mut self, v: &Rational) {
        if v.is_zero() {
            return;
        }
        *self.by_den.entry(v.denom().clone()).or_insert_with(BigInt::zero) += v.numer();
    }

    pub fn total(&self) -> Rational {
        self.by_den
            .iter()
            .fold(Rational::zero(), |acc, (d, n)| acc + Rational::new(n.clone(), d.clone()))
    }
}
