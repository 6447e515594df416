//! Quasimodular forms as polynomials in `G2, G4, G6`, and the larger span of
//! combinatorial Eisenstein series `D^r G_k`, together with exact recognition
//! of truncated q-series in both.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qseries::{eisenstein, QSeries};
use crate::scalar::Scalar;
use crate::{rat, ratio, Rational};

/// Exponents of `G2^a G4^b G6^c`.
pub type QMMonomial = [u32; 3];

const GEN_WEIGHTS: [u32; 3] = [2, 4, 6];

pub fn monomial_weight(m: &QMMonomial) -> u32 {
    2 * m[0] + 4 * m[1] + 6 * m[2]
}

/// Every monomial of weight at most `w`, in rendering order.
pub fn qm_monomials(w: u32) -> Vec<QMMonomial> {
    let mut out = Vec::new();
    for c in 0..=w / 6 {
        for b in 0..=(w - 6 * c) / 4 {
            for a in 0..=(w - 6 * c - 4 * b) / 2 {
                out.push([a, b, c]);
            }
        }
    }
    out.sort_by(render_order);
    out
}

/// Weight descending, then the `G2` and `G4` exponents descending.
fn render_order(x: &QMMonomial, y: &QMMonomial) -> std::cmp::Ordering {
    monomial_weight(y)
        .cmp(&monomial_weight(x))
        .then(y[0].cmp(&x[0]))
        .then(y[1].cmp(&x[1]))
}

/// Polynomial in `G2, G4, G6`. Representations are unique since the three
/// generators are algebraically independent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QMPoly<S = Rational> {
    terms: BTreeMap<QMMonomial, S>,
}

impl<S: Scalar> QMPoly<S> {
    pub fn zero() -> Self {
        QMPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(m: QMMonomial, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        QMPoly { terms }
    }

    pub fn g2() -> Self {
        Self::monomial([1, 0, 0], S::one())
    }

    pub fn g4() -> Self {
        Self::monomial([0, 1, 0], S::one())
    }

    pub fn g6() -> Self {
        Self::monomial([0, 0, 1], S::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QMMonomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &QMMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: QMMonomial, c: S) {
        let v = self.coeff(&m) + c;
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], a.clone() * b.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(S::one()), |acc, _| acc.mul(self))
    }

    /// Weights that occur, ascending.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(monomial_weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn max_weight(&self) -> u32 {
        self.weights().last().copied().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    /// Degree in `G2`.
    pub fn depth(&self) -> u32 {
        self.terms.keys().map(|m| m[0]).max().unwrap_or(0)
    }

    /// The homogeneous part of weight `w`.
    pub fn weight_part(&self, w: u32) -> Self {
        QMPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_weight(m) == w)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Applies a derivation given by its values on `G2, G4, G6`.
    fn derivation(&self, images: &[Self; 3]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for g in 0..3 {
                if m[g] == 0 {
                    continue;
                }
                let mut rest = *m;
                rest[g] -= 1;
                let factor = Self::monomial(rest, c.clone() * S::from_i64(m[g] as i64));
                out = out.add(&factor.mul(&images[g]));
            }
        }
        out
    }

    /// `𝔡`, the derivation with `𝔡 G2 = -1/2` killing `G4` and `G6`.
    pub fn lower(&self) -> Self {
        self.derivation(&[Self::constant(S::from_frac(-1, 2)), Self::zero(), Self::zero()])
    }

    /// Multiplication by the weight on each homogeneous part.
    pub fn weight_op(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * S::from_i64(monomial_weight(m) as i64));
        }
        out
    }
}

impl QMPoly<Rational> {
    /// Truncated q-expansion.
    pub fn expand(&self, order: usize) -> QSeries {
        let gens: Vec<QSeries> = GEN_WEIGHTS
            .iter()
            .map(|&k| eisenstein(k, order).expect("k >= 2"))
            .collect();
        let mut total = QSeries::zero(order);
        for (m, c) in &self.terms {
            let mut s = QSeries::constant(c.clone(), order);
            for g in 0..3 {
                if m[g] > 0 {
                    s = &s * &gens[g].pow(m[g]);
                }
            }
            total = &total + &s;
        }
        total
    }

    /// `D = q d/dq` as the derivation whose values on the generators are
    /// recognized from their differentiated q-expansions.
    pub fn derive(&self) -> Self {
        self.derivation(d_on_generators())
    }

    /// Serre derivative `ϑ_x = D + 2x G2`.
    pub fn serre(&self, x: &Rational) -> Self {
        self.derive().add(&Self::g2().mul(self).scale(&(rat(2) * x)))
    }

    /// `G_k` for even `k >= 2` as a polynomial in the generators.
    pub fn eisenstein(k: u32) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::OutOfRange(format!("G_k is quasimodular only for even k >= 2, got {k}")));
        }
        match k {
            2 => Ok(Self::g2()),
            4 => Ok(Self::g4()),
            6 => Ok(Self::g6()),
            _ => {
                let order = qm_monomials(k).len() + 12;
                fit_qm(&eisenstein(k, order)?, k)
            }
        }
    }
}

fn d_on_generators() -> &'static [QMPoly; 3] {
    static IMAGES: OnceLock<[QMPoly; 3]> = OnceLock::new();
    IMAGES.get_or_init(|| {
        let order = 40;
        GEN_WEIGHTS.map(|k| {
            let s = eisenstein(k, order).expect("k >= 2").derive();
            fit_qm(&s, k + 2).expect("derivative of an Eisenstein series is quasimodular")
        })
    })
}

impl<S: Scalar> fmt::Display for QMPoly<S> {
    /// `G2^2 + 5/6*G4 + 1/6*G2 + 1/288`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&QMMonomial> = self.terms.keys().collect();
        keys.sort_by(|x, y| render_order(x, y));
        let items: Vec<(String, S)> = keys
            .into_iter()
            .map(|m| {
                let factors: Vec<String> = (0..3)
                    .filter(|&g| m[g] > 0)
                    .map(|g| match m[g] {
                        1 => format!("G{}", GEN_WEIGHTS[g]),
                        e => format!("G{}^{e}", GEN_WEIGHTS[g]),
                    })
                    .collect();
                (factors.join("*"), self.terms[m].clone())
            })
            .collect();
        write_terms(f, &items)
    }
}

fn write_terms<S: Scalar>(f: &mut fmt::Formatter<'_>, items: &[(String, S)]) -> fmt::Result {
    if items.is_empty() {
        return write!(f, "0");
    }
    for (i, (mono, c)) in items.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i == 0, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    Ok(())
}

/// How far a fit has to be over-determined.
pub const FIT_MARGIN: usize = 10;

/// Whether the truncated columns are linearly independent.
fn independent(columns: &[QSeries], rows: usize) -> bool {
    let m = Matrix::from_rows(
        (0..rows)
            .map(|r| columns.iter().map(|c| c.coeff(r).clone()).collect())
            .collect(),
    );
    columns.is_empty() || m.rank() == columns.len()
}

/// Solves `sum_j x_j columns[j] = s` exactly through the order of `s`.
///
/// Returns a solution (free variables zero) or the first coefficient index at
/// which no combination matches.
fn fit_columns(columns: &[QSeries], s: &QSeries) -> Result<Vec<Rational>> {
    let rows = s.order() + 1;
    let build = |n: usize| {
        Matrix::from_rows(
            (0..n)
                .map(|r| columns.iter().map(|c| c.coeff(r).clone()).collect())
                .collect(),
        )
    };
    let rhs: Vec<Rational> = s.coeffs().to_vec();
    match build(rows).solve(&rhs) {
        Ok(x) => Ok(x),
        Err(_) => {
            let first_bad = (1..=rows)
                .find(|&n| build(n).solve(&rhs[..n]).is_err())
                .expect("the full system is inconsistent");
            Err(Error::FitMismatch { index: first_bad - 1 })
        }
    }
}

/// Recognizes `s` as a quasimodular form of weight at most `max_weight`.
///
/// The answer is unique when it exists. Refuses unless the series carries
/// at least [`FIT_MARGIN`] more coefficients than there are monomials, and
/// unless the monomials are independent through the available order; a
/// success means "verified through `q^N`" with `N = s.order()`.
pub fn fit_qm(s: &QSeries, max_weight: u32) -> Result<QMPoly> {
    let monos = qm_monomials(max_weight);
    let dim = monos.len();
    if s.order() < dim + FIT_MARGIN {
        return Err(Error::OrderTooLow { needed: dim + FIT_MARGIN, have: s.order() });
    }
    let columns: Vec<QSeries> = monos
        .iter()
        .map(|m| QMPoly::monomial(*m, rat(1)).expand(s.order()))
        .collect();
    if !independent(&columns, s.order() + 1) {
        return Err(Error::OrderTooLow { needed: s.order() + 1, have: s.order() });
    }
    let x = fit_columns(&columns, s)?;
    let mut out = QMPoly::zero();
    for (m, c) in monos.iter().zip(x) {
        out.add_term(*m, c);
    }
    Ok(out)
}

/// `D^r G_k` as a pair `(r, k)`.
pub type CESymbol = (u32, u32);

pub fn ce_symbol_weight(s: &CESymbol) -> u32 {
    s.1 + 2 * s.0
}

/// Polynomial in the symbols `D^r G_k` with `k >= 1`. The symbols satisfy
/// relations, so representations are not unique.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CEExpr {
    /// Monomials are sorted symbol lists.
    terms: BTreeMap<Vec<CESymbol>, Rational>,
}

impl CEExpr {
    pub fn zero() -> Self {
        CEExpr::default()
    }

    pub fn monomial(mut symbols: Vec<CESymbol>, c: Rational) -> Self {
        symbols.sort_unstable();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(symbols, c);
        }
        CEExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CESymbol>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let v = out.terms.get(m).cloned().unwrap_or_else(Rational::zero) + c;
            if v.is_zero() {
                out.terms.remove(m);
            } else {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn expand(&self, order: usize) -> QSeries {
        let mut total = QSeries::zero(order);
        for (m, c) in &self.terms {
            let mut s = QSeries::constant(c.clone(), order);
            for &(r, k) in m {
                s = &s * &eisenstein(k, order).expect("k >= 1").derive_n(r);
            }
            total = &total + &s;
        }
        total
    }

    pub fn max_weight(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(ce_symbol_weight).sum())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for CEExpr {
    /// Monomials like `D^2G1*G3`, highest weight first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Vec<CESymbol>> = self.terms.keys().collect();
        keys.sort_by_key(|m| std::cmp::Reverse(m.iter().map(ce_symbol_weight).sum::<u32>()));
        let items: Vec<(String, Rational)> = keys
            .into_iter()
            .map(|m| {
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < m.len() {
                    let j = (i..m.len()).find(|&j| m[j] != m[i]).unwrap_or(m.len());
                    let (r, k) = m[i];
                    let sym = match r {
                        0 => format!("G{k}"),
                        1 => format!("DG{k}"),
                        _ => format!("D^{r}G{k}"),
                    };
                    parts.push(if j - i > 1 { format!("{sym}^{}", j - i) } else { sym });
                    i = j;
                }
                (parts.join("*"), self.terms[m].clone())
            })
            .collect();
        write_terms(f, &items)
    }
}

/// Symbols `D^r G_k` of weight at most `w`.
fn ce_symbols(w: u32) -> Vec<CESymbol> {
    let mut out = Vec::new();
    for k in 1..=w {
        for r in 0..=(w - k) / 2 {
            out.push((r, k));
        }
    }
    out
}

/// Monomials in the symbols with total weight at most `w`.
pub fn ce_monomials(w: u32) -> Vec<Vec<CESymbol>> {
    let symbols = ce_symbols(w);
    let mut out = Vec::new();
    fn rec(
        symbols: &[CESymbol],
        start: usize,
        left: u32,
        cur: &mut Vec<CESymbol>,
        out: &mut Vec<Vec<CESymbol>>,
    ) {
        out.push(cur.clone());
        for i in start..symbols.len() {
            let w = ce_symbol_weight(&symbols[i]);
            if w <= left {
                cur.push(symbols[i]);
                rec(symbols, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    rec(&symbols, 0, w, &mut Vec::new(), &mut out);
    out
}

/// Finds some representation of `s` in the span of combinatorial Eisenstein
/// monomials of weight at most `max_weight`, verified through the order of
/// `s`. Refuses under the same margin rule as [`fit_qm`].
pub fn fit_ce(s: &QSeries, max_weight: u32) -> Result<CEExpr> {
    fit_ce_in(s, ce_monomials(max_weight))
}

/// Like [`fit_ce`], with monomials of weight exactly `w` only.
pub fn fit_ce_homogeneous(s: &QSeries, w: u32) -> Result<CEExpr> {
    let monos = ce_monomials(w)
        .into_iter()
        .filter(|m| m.iter().map(ce_symbol_weight).sum::<u32>() == w)
        .collect();
    fit_ce_in(s, monos)
}

fn fit_ce_in(s: &QSeries, mut monos: Vec<Vec<CESymbol>>) -> Result<CEExpr> {
    // the span is not free; listing short, lightly derived monomials first
    // makes them the pivots, so the answer prefers them
    monos.sort_by_key(|m| (m.len(), m.iter().map(|x| x.0).sum::<u32>(), m.clone()));
    let dim = monos.len();
    if s.order() < dim + FIT_MARGIN {
        return Err(Error::OrderTooLow { needed: dim + FIT_MARGIN, have: s.order() });
    }
    let columns: Vec<QSeries> = monos
        .iter()
        .map(|m| CEExpr::monomial(m.clone(), rat(1)).expand(s.order()))
        .collect();
    let x = fit_columns(&columns, s)?;
    let mut out = CEExpr::zero();
    for (m, c) in monos.into_iter().zip(x) {
        out = out.add(&CEExpr::monomial(m, c));
    }
    Ok(out)
}

/// `DG_k` through the product formula
/// `(k+3)/(2(k+1)) G_{k+2} - sum_{0<j<k, j odd} binom(k, j) G_{j+1} G_{k+1-j}`,
/// evaluated on q-series.
pub fn dg_product_formula(k: u32, order: usize) -> Result<QSeries> {
    let mut s = eisenstein(k + 2, order)?.scale(&ratio(k as i64 + 3, 2 * (k as i64 + 1)));
    for j in (1..k).step_by(2) {
        let c = Rational::from_integer(crate::arith::binomial(k as i64, j as i64));
        let prod = &eisenstein(j + 1, order)? * &eisenstein(k + 1 - j, order)?;
        s = &s - &prod.scale(&c);
    }
    Ok(s)
}
