use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pfun::{t_constant, PFun};
use crate::qseries::QSeries;
use crate::Rational;

use super::structure::structure_constants;
use super::{Basis, Gen, TExpr, TMonomial};

/// Monomial degree accepted by [`expand_t_times`].
pub const MAX_EXPANSION_DEGREE: usize = 4;

/// `T_{k,l} · f` written as `sum T_{k+i,l+j} ⊙ 𝔰_{i,j}(f) + c(f)`.
///
/// The operator parts are kept in the pointwise basis. The term `c(f)`
/// collects the constants of the connected products of generators, which
/// the expansion into generators alone cannot express; it vanishes unless
/// some `T_{k+i, 1}` with a nonzero constant would be involved.
#[derive(Clone, Debug)]
pub struct TklExpansion {
    pub k: u32,
    pub l: u32,
    /// `(k + i, l + j) ↦ 𝔰_{i,j}(f)`.
    pub terms: BTreeMap<Gen, TExpr>,
    pub constant: TExpr,
}

impl TklExpansion {
    /// The expansion as an induced-basis element.
    pub fn to_induced(&self) -> Result<TExpr> {
        let mut out = self.constant.to_induced()?;
        for (&(a, b), s) in &self.terms {
            let g = TExpr::generator_ext(a as i64, b as i64, Basis::Induced);
            out = out.add(&g.induced_mul(s)?)?;
        }
        Ok(out)
    }

    /// Evaluates `sum T ⊙ 𝔰(f) + c(f)` with numeric induced products.
    pub fn to_pfun(&self) -> PFun {
        let mut terms = vec![(Rational::from_integer(1.into()), self.constant.to_pfun())];
        for (&(a, b), s) in &self.terms {
            let t = PFun::t_ext(a, b).expect("valid generator");
            terms.push((Rational::from_integer(1.into()), t.induced_mul(&s.to_pfun())));
        }
        PFun::linear_combination(&terms)
    }

    /// `<T_{k,l} f>_q = sum <T_{k+i,l+j}>_q <𝔰_{i,j} f>_q + <c(f)>_q`.
    pub fn q_bracket(&self, order: usize) -> Result<QSeries> {
        let mut total = self.constant.q_bracket(order)?;
        for (&(a, b), s) in &self.terms {
            let g = TExpr::generator_ext(a as i64, b as i64, Basis::Induced);
            total = &total + &(&g.q_bracket(order)? * &s.q_bracket(order)?);
        }
        Ok(total)
    }
}

/// Calls `f(A, rest)` for every sub-multiset `A` of the monomial, by
/// positions, so repeated generators are counted like the derivatives
/// `∂/∂T_{a,b}` count them.
fn for_each_split(m: &TMonomial, mut f: impl FnMut(&[Gen], &TMonomial) -> Result<()>) -> Result<()> {
    for mask in 0u32..(1 << m.len()) {
        let mut taken = Vec::new();
        let mut rest = Vec::new();
        for (p, g) in m.iter().enumerate() {
            if mask & (1 << p) != 0 {
                taken.push(*g);
            } else {
                rest.push(*g);
            }
        }
        f(&taken, &rest)?;
    }
    Ok(())
}

fn check_degree(f: &TExpr) -> Result<TExpr> {
    let f = f.to_pointwise()?;
    if f.degree() > MAX_EXPANSION_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "expansion of degree {} (limit {MAX_EXPANSION_DEGREE})",
            f.degree()
        )));
    }
    Ok(f)
}

/// `𝔰_{i,j}(f) = sum_{|a| = i} sum_b C^{l,b}_{|b|-j} ∂f/∂T_{a,b}` in the
/// pointwise basis.
pub fn s_ij(i: u32, j: i64, l: u32, f: &TExpr) -> Result<TExpr> {
    let f = check_degree(f)?;
    let mut out = TExpr::zero(Basis::Pointwise);
    for (m, c) in f.terms() {
        for_each_split(m, |taken, rest| {
            let isum: u32 = taken.iter().map(|g| g.0).sum();
            if isum != i {
                return Ok(());
            }
            let bsum: i64 = taken.iter().map(|g| g.1 as i64).sum();
            let idx = bsum - j;
            if idx < 0 {
                return Ok(());
            }
            let mut ls = vec![l];
            ls.extend(taken.iter().map(|g| g.1));
            let cs = structure_constants(&ls)?;
            if let Some(cc) = cs.get(idx as usize) {
                out.add_term(rest.clone(), c * cc);
            }
            Ok(())
        })?;
    }
    Ok(out)
}

/// Expands `T_{k,l} · f` through the connected products of `T_{k,l}` with
/// every sub-multiset of each monomial of `f`.
pub fn expand_t_times(k: u32, l: u32, f: &TExpr) -> Result<TklExpansion> {
    if l < 1 {
        return Err(Error::OutOfRange("T_{k,l} needs l >= 1".into()));
    }
    let f = check_degree(f)?;
    let mut terms: BTreeMap<Gen, TExpr> = BTreeMap::new();
    let mut constant = TExpr::zero(Basis::Pointwise);
    for (m, c) in f.terms() {
        for_each_split(m, |taken, rest| {
            let isum: u32 = taken.iter().map(|g| g.0).sum();
            let mut ls = vec![l];
            ls.extend(taken.iter().map(|g| g.1));
            let cs = structure_constants(&ls)?;
            let ltot: u32 = ls.iter().sum();
            for (idx, cc) in cs.iter().enumerate() {
                if cc.is_zero() {
                    continue;
                }
                let gen = (k + isum, ltot - idx as u32);
                let coeff = c * cc;
                terms
                    .entry(gen)
                    .or_insert_with(|| TExpr::zero(Basis::Pointwise))
                    .add_term(rest.clone(), coeff.clone());
                if !taken.is_empty() {
                    constant.add_term(rest.clone(), -coeff * t_constant(gen.0, gen.1));
                }
            }
            Ok(())
        })?;
    }
    terms.retain(|_, s| !s.is_zero());
    Ok(TklExpansion { k, l, terms, constant })
}
