//! Exact computations around the q-bracket of functions on partitions.
//!
//! The crate is layered bottom up: rational arithmetic and discrete calculus
//! ([`arith`]), partitions and set partitions ([`partitions`]), truncated
//! q-series ([`qseries`]), functions on partitions and their products
//! ([`pfun`]), the symbolic algebra of the generators `T_{k,l}` ([`talgebra`]),
//! quasimodular forms ([`quasimodular`]) and symmetric group characters
//! ([`symgroup`]).
//!
//! Containers that only need field operations ([`Poly`], [`QSeries`],
//! [`Matrix`], [`QMPoly`]) are generic over [`Scalar`] and default to the
//! arbitrary precision [`Rational`]. Everything that caches or mixes with
//! characters works over [`Rational`] directly.

pub mod arith;
pub mod error;
pub mod linalg;
pub mod partitions;
pub mod pfun;
pub mod qseries;
pub mod quasimodular;
pub mod scalar;
pub mod symgroup;
pub mod talgebra;

pub use arith::{BinomPoly, Poly};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use partitions::{Partition, SetPartition};
pub use pfun::PFun;
pub use qseries::QSeries;
pub use quasimodular::{CEExpr, QMPoly};
pub use scalar::Scalar;
pub use talgebra::{Basis, TExpr};

/// Arbitrary precision rationals, the default scalar everywhere.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integers.
pub type Integer = num_bigint::BigInt;
/// Machine word rationals. Fast, but overflow panics.
pub type SmallRational = num_rational::Ratio<i64>;

pub type RatPoly = Poly<Rational>;
pub type RatSeries = QSeries<Rational>;
pub type RatMatrix = Matrix<Rational>;

/// Series order used when nothing else is requested.
pub const DEFAULT_ORDER: usize = 50;
/// Partition size bound for pointwise checks when nothing else is requested.
pub const DEFAULT_PSIZE: usize = 12;

/// Shorthand for an integer valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num/den` as a [`Rational`]. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
