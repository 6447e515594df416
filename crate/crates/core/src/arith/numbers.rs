use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{rat, Rational};

use super::Poly;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `binom(n, k)` for integer `n` of any sign, zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= n - i;
    }
    num / factorial(k as u32)
}

pub fn binomial_i64(n: i64, k: i64) -> i64 {
    i64::try_from(binomial(n, k)).expect("binomial coefficient overflows i64")
}

fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![rat(1)]))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Rational {
    let mut table = bernoulli_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n as usize {
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0
        let m = table.len() as i64;
        let s = table
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| {
                acc + Rational::from_integer(binomial(m + 1, j as i64)) * b
            });
        table.push(-s / rat(m + 1));
    }
    table[n as usize].clone()
}

/// Bernoulli polynomial `B_n(x) = sum_j binom(n, j) B_j x^{n-j}`.
pub fn bernoulli_poly(n: u32) -> Poly<Rational> {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for j in 0..=n {
        coeffs[(n - j) as usize] = Rational::from_integer(binomial(n as i64, j as i64)) * bernoulli(j);
    }
    Poly::new(coeffs)
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for m in 1..=n as usize {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let keep = if j < row.len() { &row[j] * j } else { BigInt::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// `zeta(1 - i)` for `i >= 1`, i.e. `(-1)^{i+1} B_i / i`.
pub fn zeta_at_one_minus(i: u32) -> Rational {
    assert!(i >= 1, "zeta(1 - i) needs i >= 1");
    let b = bernoulli(i) / rat(i as i64);
    if i % 2 == 1 { b } else { -b }
}

/// `c_k` in `1/(2 sinh(x/2)) - 1/x = sum_{k >= 1} c_k x^{k-1}/(k-1)!`.
///
/// The Laurent series is inverted exactly; odd `k` give zero.
pub fn sinh_coefficient(k: u32) -> Rational {
    assert!(k >= 1, "sinh coefficients start at k = 1");
    // 2 sinh(x/2) = x * s(x), s(x) = sum_j x^{2j} / (4^j (2j+1)!)
    let n = k as usize;
    let s: Vec<Rational> = (0..=n)
        .map(|m| {
            if m % 2 == 1 {
                Rational::zero()
            } else {
                let j = (m / 2) as u32;
                Rational::new(BigInt::one(), BigInt::from(4).pow(j) * factorial(2 * j + 1))
            }
        })
        .collect();
    // inv = 1/s as power series up to x^n
    let mut inv = vec![Rational::zero(); n + 1];
    inv[0] = rat(1);
    for m in 1..=n {
        let acc = (1..=m).fold(Rational::zero(), |acc, j| acc + &s[j] * &inv[m - j]);
        inv[m] = -acc;
    }
    // 1/(x s(x)) - 1/x = sum_{m >= 1} inv[m] x^{m-1}, so c_k = inv[k] (k-1)!
    &inv[n] * Rational::from_integer(factorial(k - 1))
}
