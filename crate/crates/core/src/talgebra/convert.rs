use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::Rational;

use super::structure::connected_generators;
use super::{Basis, TExpr, TMonomial, MAX_CONVERSION_DEGREE};

type Memo = Mutex<HashMap<Vec<TMonomial>, TExpr>>;

fn connected_memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn to_pointwise_memo() -> &'static Mutex<HashMap<TMonomial, TExpr>> {
    static MEMO: OnceLock<Mutex<HashMap<TMonomial, TExpr>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn induced_product(a: &TExpr, b: &TExpr) -> TExpr {
    let mut out = TExpr::zero(Basis::Induced);
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            let mut m = m1.clone();
            m.extend_from_slice(m2);
            out.add_term(m, c1 * c2);
        }
    }
    out
}

/// Connected product of pointwise monomials, in the induced basis.
///
/// Entries that are products are split with
/// `f1 f2 | f3 | ... = f1 | f2 | f3 | ... + sum_{A ⊔ B} (f1 | f_A) ⊙ (f2 | f_B)`
/// until only generators remain, whose connected products are linear
/// combinations of generators. A single entry gives the induced expansion of
/// that monomial.
pub fn connected_monomials(monos: &[TMonomial]) -> Result<TExpr> {
    let mut key: Vec<TMonomial> = monos
        .iter()
        .map(|m| {
            let mut m = m.clone();
            m.sort_unstable();
            m
        })
        .collect();
    key.sort();
    let total: usize = key.iter().map(Vec::len).sum();
    if total > MAX_CONVERSION_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "basis conversion of degree {total} (limit {MAX_CONVERSION_DEGREE})"
        )));
    }
    if key.len() == 1 && key[0].len() <= 1 {
        return Ok(TExpr::monomial(key[0].clone(), Rational::one(), Basis::Induced));
    }
    if key.len() >= 2 && key.iter().any(Vec::is_empty) {
        return Ok(TExpr::zero(Basis::Induced));
    }
    if let Some(v) = connected_memo().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(v.clone());
    }
    let result = if key.iter().all(|m| m.len() == 1) {
        let gens: Vec<_> = key.iter().map(|m| m[0]).collect();
        connected_generators(&gens)?
    } else {
        let idx = key.iter().position(|m| m.len() >= 2).expect("some product entry");
        let split = &key[idx];
        let f1: TMonomial = vec![split[0]];
        let f2: TMonomial = split[1..].to_vec();
        let others: Vec<TMonomial> =
            key.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, m)| m.clone()).collect();
        let mut all = vec![f1.clone(), f2.clone()];
        all.extend(others.iter().cloned());
        let mut out = connected_monomials(&all)?;
        for mask in 0u32..(1 << others.len()) {
            let mut left = vec![f1.clone()];
            let mut right = vec![f2.clone()];
            for (i, m) in others.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(m.clone());
                } else {
                    right.push(m.clone());
                }
            }
            let prod = induced_product(&connected_monomials(&left)?, &connected_monomials(&right)?);
            out = out.add(&prod)?;
        }
        out
    };
    connected_memo()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, result.clone());
    Ok(result)
}

/// Rewrites a pointwise-basis element in the induced basis.
pub fn pointwise_to_induced(e: &TExpr) -> Result<TExpr> {
    if e.basis() == Basis::Induced {
        return Ok(e.clone());
    }
    let mut out = TExpr::zero(Basis::Induced);
    for (m, c) in e.terms() {
        if m.len() > MAX_CONVERSION_DEGREE {
            return Err(Error::ResourceLimit(format!(
                "monomial of degree {} (limit {MAX_CONVERSION_DEGREE})",
                m.len()
            )));
        }
        for (m2, c2) in connected_monomials(std::slice::from_ref(m))?.terms() {
            out.add_term(m2.clone(), c * c2);
        }
    }
    Ok(out)
}

/// Rewrites an induced-basis element in the pointwise basis.
///
/// The induced expansion of a pointwise monomial is the matching induced
/// monomial plus terms of strictly lower degree, so the inverse is found by
/// recursion on the degree.
pub fn induced_to_pointwise(e: &TExpr) -> Result<TExpr> {
    if e.basis() == Basis::Pointwise {
        return Ok(e.clone());
    }
    let mut out = TExpr::zero(Basis::Pointwise);
    for (m, c) in e.terms() {
        for (m2, c2) in monomial_to_pointwise(m)?.terms() {
            out.add_term(m2.clone(), c * c2);
        }
    }
    Ok(out)
}

fn monomial_to_pointwise(m: &TMonomial) -> Result<TExpr> {
    if m.len() <= 1 {
        return Ok(TExpr::monomial(m.clone(), Rational::one(), Basis::Pointwise));
    }
    if let Some(v) = to_pointwise_memo().lock().unwrap_or_else(|e| e.into_inner()).get(m) {
        return Ok(v.clone());
    }
    let lead = TExpr::monomial(m.clone(), Rational::one(), Basis::Pointwise);
    let expanded = pointwise_to_induced(&lead)?;
    let mut lower = expanded;
    lower.add_term(m.clone(), -Rational::one());
    debug_assert!(lower.terms().all(|(mm, _)| mm.len() < m.len()));
    let mut out = lead;
    for (m2, c2) in induced_to_pointwise(&lower)?.terms() {
        out.add_term(m2.clone(), -c2.clone());
    }
    to_pointwise_memo()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(m.clone(), out.clone());
    Ok(out)
}
