use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::strips::{border_strip_tableaux, strip_removals, SkewShape};
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::Rational;

/// Characters are computed as `i64`, exact up to this size.
pub const MAX_CHARACTER_SIZE: usize = 30;

/// `z_ν = ∏ m^{r_m} r_m!`, the order of the centralizer of a permutation of
/// cycle type `ν`.
pub fn z_factor(nu: &Partition) -> Rational {
    let z = nu
        .multiplicities()
        .into_iter()
        .fold(BigInt::one(), |acc, (m, r)| acc * BigInt::from(m).pow(r as u32) * factorial(r as u32));
    Rational::from_integer(z)
}

type CharCache = RwLock<HashMap<(Partition, Partition), i64>>;
type SkewCache = RwLock<HashMap<(Partition, Partition, Partition), i64>>;

fn char_cache() -> &'static CharCache {
    static C: OnceLock<CharCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn skew_cache() -> &'static SkewCache {
    static C: OnceLock<SkewCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn check_sizes(shape_size: usize, rho: &Partition) -> Result<()> {
    if shape_size != rho.size() {
        return Err(Error::InvalidArgument(format!(
            "shape has {shape_size} cells but the cycle type {rho} has size {}",
            rho.size()
        )));
    }
    if shape_size > MAX_CHARACTER_SIZE {
        return Err(Error::ResourceLimit(format!(
            "characters are limited to size {MAX_CHARACTER_SIZE}"
        )));
    }
    Ok(())
}

/// `χ^λ(ρ)` by the recursive Murnaghan–Nakayama rule, removing a strip of
/// size `ρ_1` first. Values are cached for the lifetime of the process.
pub fn character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    check_sizes(lambda.size(), rho)?;
    Ok(mn(lambda, rho))
}

fn mn(lambda: &Partition, rho: &Partition) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    if lambda.len() == 1 {
        return 1;
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(&v) = char_cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v;
    }
    let rest = Partition::from_sorted_unchecked(rho.parts()[1..].to_vec());
    let v = strip_removals(lambda, rho.parts()[0])
        .into_iter()
        .map(|(nu, h)| sign(h) * mn(&nu, &rest))
        .sum();
    char_cache().write().unwrap_or_else(|e| e.into_inner()).insert(key, v);
    v
}

fn sign(h: u32) -> i64 {
    if h.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `χ^λ(ρ)` as the signed count of all border strip tableaux of type `ρ`.
/// Enumerates every tableau, so shapes are limited to
/// [`BST_SIZE_LIMIT`](super::BST_SIZE_LIMIT) cells.
pub fn character_bst(lambda: &Partition, rho: &[u32]) -> Result<i64> {
    let shape = SkewShape::straight(lambda.clone());
    signed_count(&shape, rho)
}

fn signed_count(shape: &SkewShape, rho: &[u32]) -> Result<i64> {
    Ok(border_strip_tableaux(shape, rho)?
        .iter()
        .map(|t| sign(t.iter().map(|s| s.height).sum()))
        .sum())
}

/// The skew character `χ^{λ/ν}(ρ')`, by removing strips of `λ` that stay
/// outside `ν`.
pub fn skew_character(shape: &SkewShape, rho: &Partition) -> Result<i64> {
    check_sizes(shape.size(), rho)?;
    Ok(skew_mn(shape.outer(), shape.inner(), rho))
}

fn skew_mn(outer: &Partition, inner: &Partition, rho: &Partition) -> i64 {
    if rho.is_empty() {
        return i64::from(outer == inner);
    }
    if inner.is_empty() {
        return mn(outer, rho);
    }
    let key = (outer.clone(), inner.clone(), rho.clone());
    if let Some(&v) = skew_cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v;
    }
    let rest = Partition::from_sorted_unchecked(rho.parts()[1..].to_vec());
    let v = strip_removals(outer, rho.parts()[0])
        .into_iter()
        .filter(|(nu, _)| nu.diagram_contains(inner))
        .map(|(nu, h)| sign(h) * skew_mn(&nu, inner, &rest))
        .sum();
    skew_cache().write().unwrap_or_else(|e| e.into_inner()).insert(key, v);
    v
}
