use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::character::{character, skew_character, z_factor};
use super::strips::{for_each_subdiagram, strip_removals, SkewShape};
use crate::arith::{bernoulli, binomial};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::pfun::PFun;
use crate::{rat, Rational};

/// Border strip moments refuse partitions larger than this.
pub const X_SIZE_LIMIT: usize = 12;

/// A block `(κ, l)`: `l` equal entries `m`, weighted by `m^κ`.
pub type Block = (u32, u32);

/// `𝓜(f)(λ) = Σ_{ν ⊢ |λ|} χ^λ(ν)² f(ν) / z_ν`, valid for `|λ| ≤ bound`.
pub fn moller(f: &PFun, bound: usize) -> PFun {
    let f = f.clone();
    let label = format!("moller({f})");
    PFun::from_fallible(label, Some(bound), move |lam| {
        let mut acc = Rational::zero();
        for nu in partitions_of(lam.size()) {
            let chi = character(lam, &nu)?;
            if chi == 0 {
                continue;
            }
            acc += f.eval(&nu)? * rat(chi * chi) / z_factor(&nu);
        }
        Ok(acc)
    })
}

fn block_label(head: &str, blocks: &[Block]) -> String {
    let ks: Vec<String> = blocks.iter().map(|b| b.0.to_string()).collect();
    let ls: Vec<String> = blocks.iter().map(|b| b.1.to_string()).collect();
    format!("{head}[{};{}]", ks.join(","), ls.join(","))
}

fn check_blocks(blocks: &[Block]) -> Result<()> {
    if blocks.is_empty() {
        return Err(Error::InvalidArgument("at least one block is required".into()));
    }
    if blocks.iter().any(|b| b.1 == 0) {
        return Err(Error::OutOfRange("block lengths must be positive".into()));
    }
    Ok(())
}

/// `U(λ) = Σ_{m_1..m_s ≥ 1} ∏_b m_b^{κ_b} ∏_a binom(r_a(λ), r_a(m⃗))`, where
/// block `b` contributes `l_b` copies of `m_b` to `m⃗`.
pub fn u_function(blocks: &[Block]) -> Result<PFun> {
    check_blocks(blocks)?;
    let blocks = blocks.to_vec();
    Ok(PFun::from_fn(block_label("U", &blocks), move |lam| {
        let mult: BTreeMap<u32, usize> = lam.multiplicities().into_iter().collect();
        let mut used: BTreeMap<u32, usize> = BTreeMap::new();
        let mut total = BigInt::zero();
        u_rec(&blocks, &mult, &mut used, BigInt::one(), &mut total);
        Rational::from_integer(total)
    }))
}

fn u_rec(
    blocks: &[Block],
    mult: &BTreeMap<u32, usize>,
    used: &mut BTreeMap<u32, usize>,
    weight: BigInt,
    total: &mut BigInt,
) {
    let Some((&(kappa, l), rest)) = blocks.split_first() else {
        let b = used
            .iter()
            .fold(BigInt::one(), |acc, (m, &c)| acc * binomial(mult[m] as i64, c as i64));
        *total += weight * b;
        return;
    };
    for (&m, &r) in mult {
        let c = used.get(&m).copied().unwrap_or(0) + l as usize;
        if c > r {
            continue;
        }
        used.insert(m, c);
        u_rec(rest, mult, used, &weight * BigInt::from(m).pow(kappa), total);
        if c == l as usize {
            used.remove(&m);
        } else {
            used.insert(m, c - l as usize);
        }
    }
}

/// Border strip moments
/// `X(λ) = Σ_{m⃗} Σ_{ν ⊆ λ} χ^{λ/ν}(m⃗)² m⃗^κ⃗ / z_{m⃗}`,
/// summing over the distinct remaining shapes `ν`.
pub fn x_function(blocks: &[Block]) -> Result<PFun> {
    check_blocks(blocks)?;
    let blocks = blocks.to_vec();
    Ok(PFun::from_fallible(block_label("X", &blocks), Some(X_SIZE_LIMIT), move |lam| {
        let n = lam.size();
        let mut shape_sums: HashMap<Partition, Rational> = HashMap::new();
        let mut acc = Rational::zero();
        let mut ms = Vec::with_capacity(blocks.len());
        x_rec(lam, &blocks, n, &mut ms, &mut shape_sums, &mut acc)?;
        Ok(acc)
    }))
}

fn x_rec(
    lam: &Partition,
    blocks: &[Block],
    room: usize,
    ms: &mut Vec<u32>,
    shape_sums: &mut HashMap<Partition, Rational>,
    acc: &mut Rational,
) -> Result<()> {
    let depth = ms.len();
    let Some(&(_, l)) = blocks.get(depth) else {
        let mut parts = Vec::new();
        let mut weight = BigInt::one();
        for (&m, &(kappa, l)) in ms.iter().zip(blocks) {
            parts.extend(std::iter::repeat_n(m, l as usize));
            weight *= BigInt::from(m).pow(kappa);
        }
        let rho = Partition::from_unsorted(parts);
        let s = match shape_sums.get(&rho) {
            Some(s) => s.clone(),
            None => {
                let s = squared_skew_sum(lam, &rho)?;
                shape_sums.insert(rho.clone(), s.clone());
                s
            }
        };
        if !s.is_zero() {
            *acc += s * Rational::from_integer(weight) / z_factor(&rho);
        }
        return Ok(());
    };
    let mut m = 1u32;
    while (m * l) as usize <= room {
        ms.push(m);
        x_rec(lam, blocks, room - (m * l) as usize, ms, shape_sums, acc)?;
        ms.pop();
        m += 1;
    }
    Ok(())
}

fn squared_skew_sum(lam: &Partition, rho: &Partition) -> Result<Rational> {
    let mut inners = Vec::new();
    for_each_subdiagram(lam, &Partition::empty(), lam.size() - rho.size(), &mut |nu| {
        inners.push(nu)
    });
    let mut s = 0i64;
    for nu in inners {
        let c = skew_character(&SkewShape::new(lam.clone(), nu)?, rho)?;
        s += c * c;
    }
    Ok(rat(s))
}

fn check_hook_index(k: u32) -> Result<()> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::OutOfRange(format!("H_k needs even k >= 2, got {k}")));
    }
    Ok(())
}

/// `H_k` from border strip counts: `-B_k/2k + Σ_m |BST(λ,m)| m^{k-2}`.
pub fn hook_moment_strips(k: u32) -> Result<PFun> {
    check_hook_index(k)?;
    let c = -bernoulli(k) / rat(2 * k as i64);
    Ok(PFun::from_fn(format!("H[{k}]"), move |lam| {
        let s = (1..=lam.size() as u32).fold(BigInt::zero(), |acc, m| {
            acc + BigInt::from(strip_removals(lam, m).len()) * BigInt::from(m).pow(k - 2)
        });
        &c + Rational::from_integer(s)
    }))
}

/// `H_k` as the quadratic expression `½ Σ_i a_i (-1)^i Q_i Q_{k-i}` in the
/// shifted symmetric power sums, with `a_i = (k-2)!/((i-1)!(k-i-1)!)`,
/// `1/(-1)! = 1`, `Q_0 = 1` and `Q_1 = 0`.
pub fn hook_moment_quadratic(k: u32) -> Result<PFun> {
    check_hook_index(k)?;
    let qs: Vec<Option<PFun>> = (0..=k)
        .map(|i| if i >= 2 { PFun::q_shifted(i).ok() } else { None })
        .collect();
    let coef = |i: u32| -> Rational {
        if i == 0 || i == k {
            Rational::new(BigInt::one(), BigInt::from(k - 1))
        } else {
            Rational::from_integer(binomial(k as i64 - 2, i as i64 - 1))
        }
    };
    let coefs: Vec<Rational> = (0..=k).map(coef).collect();
    Ok(PFun::from_fn(format!("H[{k}]"), move |lam| {
        let q = |i: usize| -> Rational {
            match i {
                0 => Rational::one(),
                1 => Rational::zero(),
                _ => qs[i].as_ref().expect("Q_i for i >= 2").eval(lam).expect("Q_i is unbounded"),
            }
        };
        let mut acc = Rational::zero();
        for i in 0..=k as usize {
            let t = &coefs[i] * q(i) * q(k as usize - i);
            if i % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc / rat(2)
    }))
}

/// `H_k = 𝓜(S_k)`, valid for `|λ| ≤ bound`.
pub fn hook_moment_moller(k: u32, bound: usize) -> Result<PFun> {
    check_hook_index(k)?;
    Ok(moller(&PFun::s(k)?, bound).relabel(format!("H[{k}]")))
}
