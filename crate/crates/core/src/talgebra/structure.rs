use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::arith::{
    binomial, disc_convolution, disc_derivative, factorial, faulhaber, zeta_at_one_minus, Poly,
};
use crate::error::{Error, Result};
use crate::partitions::set_partitions;
use crate::pfun::t_constant;
use crate::{rat, Rational};

use super::{Basis, Gen, TExpr};

/// Largest `|l|` accepted by [`structure_constants`].
pub const MAX_STRUCTURE_WEIGHT: u32 = 24;

fn check_guard(l: &[u32]) -> Result<()> {
    if l.is_empty() || l.contains(&0) {
        return Err(Error::InvalidArgument("structure constants need l_i >= 1".into()));
    }
    let total: u32 = l.iter().sum();
    if total > MAX_STRUCTURE_WEIGHT {
        return Err(Error::ResourceLimit(format!(
            "structure constants for |l| = {total} (limit {MAX_STRUCTURE_WEIGHT})"
        )));
    }
    Ok(())
}

/// The polynomial `g` with `S_{k_1,F_{l_1}} | ... | S_{k_n,F_{l_n}} = S_{|k|,g}`:
/// `g = sum_{α ∈ Π(n)} μ(α, 𝟏) ∂^{ℓ(α)-1} (*_{A ∈ α} f_A)`, where `f_A` is
/// the pointwise product of the `F_{l_a}` in the block and `*` the discrete
/// convolution.
pub fn connected_g(l: &[u32]) -> Result<Poly> {
    check_guard(l)?;
    let fs: Vec<Poly> = l.iter().map(|&li| faulhaber(li)).collect();
    let mut g = Poly::zero();
    for alpha in set_partitions(l.len())? {
        let mut conv: Option<Poly> = None;
        for block in alpha.blocks() {
            let fa = block.iter().fold(Poly::constant(rat(1)), |acc, &i| &acc * &fs[i]);
            conv = Some(match conv {
                None => fa,
                Some(c) => disc_convolution(&c, &fa),
            });
        }
        let mut term = conv.expect("nonempty partition");
        for _ in 1..alpha.len() {
            term = disc_derivative(&term);
        }
        g = &g + &term.scale(&Rational::from_integer(alpha.moebius_top()));
    }
    Ok(g)
}

fn constants_cache() -> &'static Mutex<HashMap<Vec<u32>, Vec<Rational>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, Vec<Rational>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `C_i` for `i = 0, ..., |l| - 1` defined by
/// `g(F_{l_1}, ..., F_{l_n}) = sum_i C_i F_{|l| - i}`.
///
/// Computed from [`connected_g`]; since `g(0) = 0` the coefficients are read
/// off `∂g = sum_i C_i x^{|l|-1-i}`. Odd `C_i` vanish, which is checked.
pub fn structure_constants(l: &[u32]) -> Result<Vec<Rational>> {
    check_guard(l)?;
    let mut key = l.to_vec();
    key.sort_unstable();
    if let Some(v) = constants_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(v.clone());
    }
    let g = connected_g(&key)?;
    assert!(g.eval_int(0).is_zero(), "connected polynomial must vanish at 0");
    let dg = disc_derivative(&g);
    let total: u32 = key.iter().sum();
    let c: Vec<Rational> = (0..total as usize).map(|i| dg.coeff(total as usize - 1 - i)).collect();
    assert!(
        dg.degree().is_none_or(|d| d < total as usize),
        "∂g has degree at most |l| - 1"
    );
    assert!(
        c.iter().skip(1).step_by(2).all(Zero::is_zero),
        "odd structure constants must vanish for {key:?}"
    );
    constants_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, c.clone());
    Ok(c)
}

/// `𝓑_i^{l1,l2}`: `(l1-1)!(l2-1)!/(l1+l2-1)!` for `i = 0`, otherwise
/// `ζ(1-i) ((-1)^{l2} binom(l1-1, i-l2) + (-1)^{l1} binom(l2-1, i-l1))`.
pub fn b_coefficient(l1: u32, l2: u32, i: u32) -> Rational {
    assert!(l1 >= 1 && l2 >= 1, "𝓑 needs l1, l2 >= 1");
    if i == 0 {
        return Rational::new(
            factorial(l1 - 1) * factorial(l2 - 1),
            factorial(l1 + l2 - 1),
        );
    }
    let sign = |e: u32| if e.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let a = sign(l2) * Rational::from_integer(binomial(l1 as i64 - 1, i as i64 - l2 as i64));
    let b = sign(l1) * Rational::from_integer(binomial(l2 as i64 - 1, i as i64 - l1 as i64));
    zeta_at_one_minus(i) * (a + b)
}

/// The closed form `𝓑_i^{l1,1} + 𝓑_i^{l2,1} - 𝓑_i^{l1,l2}` offered for
/// `n = 2`, for `i = 0, ..., l1 + l2 - 1`. It agrees with
/// [`structure_constants`] at even `i` only.
pub fn two_variable_formula(l1: u32, l2: u32) -> Vec<Rational> {
    (0..l1 + l2)
        .map(|i| b_coefficient(l1, 1, i) + b_coefficient(l2, 1, i) - b_coefficient(l1, l2, i))
        .collect()
}

type Sparse = BTreeMap<i64, Rational>;

fn add_into(acc: &mut Sparse, e: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let v = acc.remove(&e).unwrap_or_else(Rational::zero) + c;
    if !v.is_zero() {
        acc.insert(e, v);
    }
}

/// `x^p * x^q = sum_j (-1)^j 𝓑_j^{p+1,q+1} x^{p+q+1-j}` for the discrete
/// convolution.
fn monomial_convolution(p: i64, q: i64) -> Sparse {
    let mut out = Sparse::new();
    for j in 0..=(p + q + 1) {
        let b = b_coefficient(p as u32 + 1, q as u32 + 1, j as u32);
        let b = if j % 2 == 1 { -b } else { b };
        add_into(&mut out, p + q + 1 - j, b);
    }
    out
}

/// `C_i` from the Bernoulli-number formula: every `∂ f_A` is expanded as
/// `2 sum_{|i_A| odd} prod_k 𝓑_{i_k}^{l_k,1} x^{l_A - |i_A|}` and the blocks
/// are convolved one after another with the 𝓑-rule for monomials.
///
/// Needs every `l_i > 1`. Meant as a cross-check of [`structure_constants`].
pub fn structure_constants_formula(l: &[u32]) -> Result<Vec<Rational>> {
    check_guard(l)?;
    if l.iter().any(|&x| x < 2) {
        return Err(Error::InvalidArgument("the closed formula needs every l_i > 1".into()));
    }
    let total: i64 = l.iter().map(|&x| x as i64).sum();
    let mut dg = Sparse::new();
    for alpha in set_partitions(l.len())? {
        let r = alpha.len() as u32;
        let mu = Rational::from_integer(alpha.moebius_top()) * rat(2).pow(r as i32);
        let block_polys: Vec<Sparse> = alpha
            .blocks()
            .iter()
            .map(|b| {
                // sum over i_b with |i| odd of prod B_{i_b}^{l_b,1} x^{l_A - |i|}
                let mut acc: Sparse = BTreeMap::from([(0i64, rat(1))]);
                for &k in b {
                    let mut next = Sparse::new();
                    for (e, c) in &acc {
                        for i in 0..=l[k] {
                            let bc = b_coefficient(l[k], 1, i);
                            add_into(&mut next, e + i as i64, c * bc);
                        }
                    }
                    acc = next;
                }
                let la: i64 = b.iter().map(|&k| l[k] as i64).sum();
                acc.into_iter()
                    .filter(|(isum, _)| isum % 2 == 1)
                    .map(|(isum, c)| (la - isum, c))
                    .collect()
            })
            .collect();
        let mut chain = block_polys[0].clone();
        for next in &block_polys[1..] {
            let mut out = Sparse::new();
            for (p, a) in &chain {
                for (q, b) in next {
                    for (e, c) in monomial_convolution(*p, *q) {
                        add_into(&mut out, e, a * b * c);
                    }
                }
            }
            chain = out;
        }
        for (e, c) in chain {
            add_into(&mut dg, e, c * &mu);
        }
    }
    let mut out = vec![Rational::zero(); total as usize];
    for (e, c) in dg {
        let i = total - 1 - e;
        if i < 0 || i >= total {
            return Err(Error::NoSolution(format!("formula produced the exponent {e}")));
        }
        out[i as usize] = c;
    }
    Ok(out)
}

/// `T_{k_1,l_1} | ... | T_{k_n,l_n}` in the induced basis:
/// `sum_i C_i^{l} T_{|k|, |l| - i}` plus the constant that makes the value at
/// the empty partition vanish (for `n >= 2`).
pub fn connected_generators(pairs: &[Gen]) -> Result<TExpr> {
    match pairs {
        [] => Err(Error::InvalidArgument("connected product of no generators".into())),
        [(k, l)] => Ok(TExpr::generator_ext(*k as i64, *l as i64, Basis::Induced)),
        _ => {
            let ls: Vec<u32> = pairs.iter().map(|g| g.1).collect();
            let kk: u32 = pairs.iter().map(|g| g.0).sum();
            let ll: u32 = ls.iter().sum();
            let c = structure_constants(&ls)?;
            let mut out = TExpr::zero(Basis::Induced);
            let mut constant = Rational::zero();
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let li = ll - i as u32;
                out.add_term(vec![(kk, li)], ci.clone());
                constant -= ci * t_constant(kk, li);
            }
            out.add_term(Vec::new(), constant);
            Ok(out)
        }
    }
}
