use num_traits::Zero;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::{rat, ratio, Rational};

use super::{monomial_weight, Basis, Gen, TExpr};

impl TExpr {
    /// Applies a derivation of the induced product given by its values on
    /// generators.
    fn induced_derivation(&self, on_gen: impl Fn(Gen) -> TExpr) -> Result<TExpr> {
        let ind = self.to_induced()?;
        let mut out = TExpr::zero(Basis::Induced);
        for (m, c) in ind.terms() {
            for i in 0..m.len() {
                let mut rest = m.clone();
                let g = rest.remove(i);
                for (m2, c2) in on_gen(g).terms() {
                    let mut mm = rest.clone();
                    mm.extend_from_slice(m2);
                    out.add_term(mm, c * c2);
                }
            }
        }
        if ind.is_extended() {
            out = out.extend();
        }
        Ok(out)
    }

    /// `D`, with `D T_{k,l} = T_{k+1,l+1}`.
    pub fn sl2_d(&self) -> Result<TExpr> {
        self.induced_derivation(|(k, l)| {
            TExpr::generator_ext(k as i64 + 1, l as i64 + 1, Basis::Induced)
        })
    }

    /// `𝔡`, with `𝔡 T_{k,l} = k(l-1) T_{k-1,l-1} - [k+l = 2]/2`.
    pub fn sl2_lower(&self) -> Result<TExpr> {
        self.induced_derivation(|(k, l)| {
            let mut out = TExpr::generator_ext(k as i64 - 1, l as i64 - 1, Basis::Induced)
                .scale(&rat(k as i64 * (l as i64 - 1)));
            if k + l == 2 {
                out.add_term(Vec::new(), ratio(-1, 2));
            }
            out
        })
    }

    /// `W`, multiplication by the weight.
    pub fn sl2_w(&self) -> Result<TExpr> {
        let ind = self.to_induced()?;
        let mut out = TExpr::zero(Basis::Induced);
        for (m, c) in ind.terms() {
            out.add_term(m.clone(), c * rat(monomial_weight(m) as i64));
        }
        if ind.is_extended() {
            out = out.extend();
        }
        Ok(out)
    }

    pub fn sl2_d_pow(&self, n: u32) -> Result<TExpr> {
        (0..n).try_fold(self.to_induced()?, |acc, _| acc.sl2_d())
    }
}

/// `[f, g]_n = sum_{r+s=n} (-1)^r binom(k+n-1, s) binom(l+n-1, r) D^r f ⊙ D^s g`
/// for `f, g` homogeneous of weights `k, l`.
pub fn rankin_cohen(f: &TExpr, g: &TExpr, n: u32) -> Result<TExpr> {
    let weight = |e: &TExpr| -> Result<i64> {
        if e.is_zero() {
            return Ok(0);
        }
        e.homogeneous_weight()?
            .map(|w| w as i64)
            .ok_or_else(|| Error::InvalidArgument(format!("{e} is not homogeneous")))
    };
    let (k, l) = (weight(f)?, weight(g)?);
    let n = n as i64;
    let mut out = TExpr::zero(Basis::Induced);
    for r in 0..=n {
        let s = n - r;
        let c = Rational::from_integer(binomial(k + n - 1, s) * binomial(l + n - 1, r));
        if c.is_zero() {
            continue;
        }
        let c = if r % 2 == 1 { -c } else { c };
        let term = f.sl2_d_pow(r as u32)?.induced_mul(&g.sl2_d_pow(s as u32)?)?;
        out = out.add(&term.scale(&c))?;
    }
    Ok(out)
}
