use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Field elements the generic containers compute with.
///
/// Implemented for [`crate::Rational`] and the machine word ratios. Only
/// exact fields make sense here; floating point types are deliberately not
/// covered.
pub trait Scalar: Num + Signed + Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Renders as `num/den`, also for integers.
    fn to_frac_string(&self) -> String;
}

impl Scalar for Ratio<BigInt> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn to_frac_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

macro_rules! small_ratio {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(<$t>::try_from(n).expect("integer does not fit the scalar type"))
            }

            fn to_frac_string(&self) -> String {
                format!("{}/{}", self.numer(), self.denom())
            }
        }
    };
}

small_ratio!(i64);
small_ratio!(i128);

/// Integer power with a non-negative exponent.
pub fn pow<S: Scalar>(base: &S, exp: u32) -> S {
    let mut acc = S::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    acc
}
