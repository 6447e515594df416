use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qseries::{eisenstein, QSeries};
use crate::quasimodular::{CEExpr, QMPoly};

use super::{gen_weight, Gen, TExpr};

/// `<T_{k,l}>_q = D^r G_b`, returned as `(r, b)`: `D^{l-1} G_{k-l+2}` when
/// `k + 1 >= l` and `D^k G_{l-k}` otherwise.
///
/// On even weights this is the case split `k >= l` versus `l >= k + 2`; at
/// odd weight the two forms coincide when `l = k + 1`.
pub fn generator_bracket_symbol(g: Gen) -> (u32, u32) {
    let (k, l) = g;
    if k + 1 >= l {
        (l - 1, k + 2 - l)
    } else {
        (k, l - k)
    }
}

impl TExpr {
    fn check_parity(&self) -> Result<()> {
        let ind = self.to_induced()?;
        if !self.is_extended() && ind.terms().any(|(m, _)| m.iter().any(|g| gen_weight(g) % 2 == 1)) {
            return Err(Error::InvalidArgument(
                "odd-weight generators need the extended algebra".into(),
            ));
        }
        Ok(())
    }

    /// The q-bracket computed symbolically: each induced monomial brackets
    /// to the product of its generators' brackets.
    pub fn q_bracket(&self, order: usize) -> Result<QSeries> {
        self.check_parity()?;
        let ind = self.to_induced()?;
        let mut cache: HashMap<(u32, u32), QSeries> = HashMap::new();
        let mut total = QSeries::zero(order);
        for (m, c) in ind.terms() {
            let mut s = QSeries::constant(c.clone(), order);
            for &g in m {
                let key = generator_bracket_symbol(g);
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                    e.insert(eisenstein(key.1, order)?.derive_n(key.0));
                }
                s = &s * &cache[&key];
            }
            total = &total + &s;
        }
        Ok(total)
    }

    /// The q-bracket as a polynomial in `G2, G4, G6`; needs even weights.
    pub fn qm_bracket(&self) -> Result<QMPoly> {
        let ind = self.to_induced()?;
        let mut cache: HashMap<(u32, u32), QMPoly> = HashMap::new();
        let mut total = QMPoly::zero();
        for (m, c) in ind.terms() {
            let mut p = QMPoly::constant(c.clone());
            for &g in m {
                if gen_weight(&g) % 2 == 1 {
                    return Err(Error::InvalidArgument(format!(
                        "T[{},{}] has odd weight; its bracket is not quasimodular",
                        g.0, g.1
                    )));
                }
                let key = generator_bracket_symbol(g);
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                    let base = QMPoly::eisenstein(key.1)?;
                    let v = (0..key.0).fold(base, |acc, _| acc.derive());
                    e.insert(v);
                }
                p = p.mul(&cache[&key]);
            }
            total = total.add(&p);
        }
        Ok(total)
    }

    /// The q-bracket in the combinatorial Eisenstein symbols `D^r G_k`.
    pub fn ce_bracket(&self) -> Result<CEExpr> {
        let ind = self.to_induced()?;
        let mut total = CEExpr::zero();
        for (m, c) in ind.terms() {
            let symbols = m.iter().map(|&g| generator_bracket_symbol(g)).collect();
            total = total.add(&CEExpr::monomial(symbols, c.clone()));
        }
        Ok(total)
    }
}
