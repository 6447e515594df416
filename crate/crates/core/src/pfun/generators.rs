use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{bernoulli, sinh_coefficient, Poly};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::{rat, ratio, Rational};

use super::PFun;

/// `C_{k,l}`: `-B_{k+l}/(2(k+l))` if `k = 0` or `l = 1`, else zero.
pub fn t_constant(k: u32, l: u32) -> Rational {
    if k == 0 || l == 1 {
        -bernoulli(k + l) / rat(2 * (k + l) as i64)
    } else {
        Rational::zero()
    }
}

/// `F_l(r)` as integers, extended on demand.
struct FaulhaberTable {
    l: u32,
    values: RwLock<Vec<BigInt>>,
}

impl FaulhaberTable {
    fn new(l: u32) -> Self {
        FaulhaberTable { l, values: RwLock::new(vec![BigInt::zero()]) }
    }

    fn get(&self, r: usize) -> BigInt {
        if let Some(v) = self.values.read().unwrap_or_else(|e| e.into_inner()).get(r) {
            return v.clone();
        }
        let mut vals = self.values.write().unwrap_or_else(|e| e.into_inner());
        while vals.len() <= r {
            let i = vals.len();
            let next = &vals[i - 1] + BigInt::from(i).pow(self.l - 1);
            vals.push(next);
        }
        vals[r].clone()
    }
}

/// Statistic of a cell `ξ = (row j, column i)` of a Young diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellStat {
    /// Cells to the right in the same row.
    Arm,
    /// `i - j`.
    Content,
    /// Arm plus leg plus one.
    Hook,
    /// The column index `i`.
    ColumnIndex,
}

impl FromStr for CellStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arm" => Ok(CellStat::Arm),
            "content" => Ok(CellStat::Content),
            "hook" => Ok(CellStat::Hook),
            "column-index" | "column" => Ok(CellStat::ColumnIndex),
            _ => Err(Error::InvalidArgument(format!("unknown cell statistic {s:?}"))),
        }
    }
}

/// Calls `f(row, col, arm, leg)` for every cell, rows and columns from 1.
pub fn for_each_cell(lambda: &Partition, mut f: impl FnMut(i64, i64, i64, i64)) {
    let conj = lambda.conjugate();
    for (j, &row) in lambda.parts().iter().enumerate() {
        for i in 1..=row as usize {
            let arm = row as i64 - i as i64;
            let leg = conj.parts()[i - 1] as i64 - (j as i64 + 1);
            f(j as i64 + 1, i as i64, arm, leg);
        }
    }
}

/// Multiset of hook lengths.
pub fn hook_lengths(lambda: &Partition) -> Vec<i64> {
    let mut out = Vec::with_capacity(lambda.size());
    for_each_cell(lambda, |_, _, a, l| out.push(a + l + 1));
    out
}

impl PFun {
    /// `S_k(λ) = -B_k/(2k) + sum_i λ_i^{k-1}` for even `k >= 2`.
    pub fn s(k: u32) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::OutOfRange(format!("S_k needs even k >= 2, got {k}")));
        }
        Self::s_ext(k)
    }

    /// `S_k` for any `k >= 1`, including the odd ones of the extended
    /// algebra.
    pub fn s_ext(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::OutOfRange("S_k needs k >= 1".into()));
        }
        let c = -bernoulli(k) / rat(2 * k as i64);
        Ok(Self::from_fn(format!("S[{k}]"), move |l| {
            let s = l.parts().iter().fold(BigInt::zero(), |acc, &p| acc + BigInt::from(p).pow(k - 1));
            &c + Rational::from_integer(s)
        }))
    }

    /// `T_{k,l}(λ) = C_{k,l} + sum_m m^k F_l(r_m(λ))` for `k + l` even.
    pub fn t(k: u32, l: u32) -> Result<Self> {
        if (k + l) % 2 == 1 {
            return Err(Error::OutOfRange(format!(
                "T[{k},{l}] has odd weight; use the extended constructor"
            )));
        }
        Self::t_ext(k, l)
    }

    /// `T_{k,l}` without the parity restriction.
    pub fn t_ext(k: u32, l: u32) -> Result<Self> {
        if l < 1 {
            return Err(Error::OutOfRange(format!("T[{k},{l}] needs l >= 1")));
        }
        let c = t_constant(k, l);
        let table = Arc::new(FaulhaberTable::new(l));
        Ok(Self::from_fn(format!("T[{k},{l}]"), move |lam| {
            let s = lam.multiplicities().iter().fold(BigInt::zero(), |acc, &(m, r)| {
                acc + BigInt::from(m).pow(k) * table.get(r)
            });
            &c + Rational::from_integer(s)
        }))
    }

    /// `T_{k,l}` through the positional form `C_{k,l} + sum_i λ_i^k c_i(λ)^{l-1}`,
    /// where `c_i(λ) = #{j <= i : λ_j = λ_i}`.
    pub fn t_positional(k: u32, l: u32) -> Result<Self> {
        if l < 1 {
            return Err(Error::OutOfRange(format!("T[{k},{l}] needs l >= 1")));
        }
        let c = t_constant(k, l);
        Ok(Self::from_fn(format!("T[{k},{l}]"), move |lam| {
            let parts = lam.parts();
            let mut s = BigInt::zero();
            for (i, &p) in parts.iter().enumerate() {
                let ci = parts[..=i].iter().filter(|&&q| q == p).count();
                s += BigInt::from(p).pow(k) * BigInt::from(ci).pow(l - 1);
            }
            &c + Rational::from_integer(s)
        }))
    }

    /// `S_{k,f}(λ) = -B_{k+1}/(2(k+1)) δ_{f,id} + sum_m m^k f(r_m(λ))`.
    pub fn s_kf(k: u32, f: &Poly<Rational>) -> Self {
        let c = if *f == Poly::x() {
            -bernoulli(k + 1) / rat(2 * (k + 1) as i64)
        } else {
            Rational::zero()
        };
        let f = f.clone();
        Self::from_fn(format!("S[{k},{f}]"), move |lam| {
            lam.multiplicities().iter().fold(c.clone(), |acc, &(m, r)| {
                acc + Rational::from_integer(BigInt::from(m).pow(k)) * f.eval_int(r as i64)
            })
        })
    }

    /// Shifted symmetric power sum
    /// `Q_k(λ) = c_k + sum_i ((λ_i - i + 1/2)^{k-1} - (-i + 1/2)^{k-1})`.
    pub fn q_shifted(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::OutOfRange(format!("Q_k needs k >= 2, got {k}")));
        }
        let c = sinh_coefficient(k);
        Ok(Self::from_fn(format!("Q[{k}]"), move |lam| {
            let half = ratio(1, 2);
            let mut acc = c.clone();
            for (idx, &p) in lam.parts().iter().enumerate() {
                let i = rat(idx as i64 + 1);
                let a: Rational = rat(p as i64) - &i + &half;
                let b: Rational = -&i + &half;
                acc += num_traits::pow(a, (k - 1) as usize) - num_traits::pow(b, (k - 1) as usize);
            }
            acc
        }))
    }

    /// Hook-length moment `H_k(λ) = -B_k/(2k) + sum_ξ h(ξ)^{k-2}` for even
    /// `k >= 2`.
    pub fn hook_moment(k: u32) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::OutOfRange(format!("H_k needs even k >= 2, got {k}")));
        }
        let c = -bernoulli(k) / rat(2 * k as i64);
        Ok(Self::from_fn(format!("H[{k}]"), move |lam| {
            let s = hook_lengths(lam)
                .into_iter()
                .fold(BigInt::zero(), |acc, h| acc + BigInt::from(h).pow(k - 2));
            &c + Rational::from_integer(s)
        }))
    }

    /// `sum_ξ stat(ξ)^k` over the cells of the Young diagram.
    pub fn cell_moment(stat: CellStat, k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::OutOfRange("cell moments need k >= 1".into()));
        }
        let name = match stat {
            CellStat::Arm => "arm",
            CellStat::Content => "content",
            CellStat::Hook => "hook",
            CellStat::ColumnIndex => "column-index",
        };
        Ok(Self::from_fn(format!("cell[{name},{k}]"), move |lam| {
            let mut s = BigInt::zero();
            for_each_cell(lam, |row, col, arm, leg| {
                let v = match stat {
                    CellStat::Arm => arm,
                    CellStat::Content => col - row,
                    CellStat::Hook => arm + leg + 1,
                    CellStat::ColumnIndex => col,
                };
                let p = BigInt::from(v.abs()).pow(k);
                if v < 0 && k % 2 == 1 {
                    s -= p;
                } else {
                    s += p;
                }
            });
            Rational::from_integer(s)
        }))
    }

    /// `λ ↦ x^{r_m(λ)}`.
    pub fn multiplicity_power(m: u32, x: Rational) -> Self {
        Self::from_fn(format!("({x})^r[{m}]"), move |lam| {
            num_traits::pow(x.clone(), lam.multiplicity(m))
        })
    }

    /// `λ ↦ f(r_m(λ))` for a polynomial `f`.
    pub fn of_multiplicity(m: u32, f: &Poly<Rational>) -> Self {
        let f = f.clone();
        Self::from_fn(format!("({f})(r[{m}])"), move |lam| f.eval_int(lam.multiplicity(m) as i64))
    }
}
