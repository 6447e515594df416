//! The algebra generated by the double moment functions `T_{k,l}`, handled
//! symbolically in two bases: monomials under the pointwise product and
//! monomials under the induced product.

mod bracket;
mod convert;
mod expand;
mod sl2;
mod spoly;
mod structure;
mod surj;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pfun::{t_constant, PFun};
use crate::Rational;

pub use bracket::generator_bracket_symbol;
pub use convert::{connected_monomials, induced_to_pointwise, pointwise_to_induced};
pub use expand::{expand_t_times, s_ij, TklExpansion};
pub use sl2::rankin_cohen;
pub use spoly::SPoly;
pub use structure::{
    b_coefficient, connected_g, connected_generators, structure_constants,
    structure_constants_formula, two_variable_formula, MAX_STRUCTURE_WEIGHT,
};
pub use surj::{surjectivity_matrix, SurjectivitySystem};

/// Index pair `(k, l)` of a generator `T_{k,l}`.
pub type Gen = (u32, u32);

/// Multiset of generators, kept sorted ascending.
pub type TMonomial = Vec<Gen>;

/// Monomial degree beyond which basis conversion is refused.
pub const MAX_CONVERSION_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Monomials are pointwise products of generators.
    Pointwise,
    /// Monomials are induced products of generators.
    Induced,
}

pub fn gen_weight(g: &Gen) -> u32 {
    g.0 + g.1
}

pub fn monomial_weight(m: &[Gen]) -> u32 {
    m.iter().map(gen_weight).sum()
}

/// Linear combination of monomials in one basis.
///
/// The extended flag admits generators of odd weight; it propagates through
/// every operation.
#[derive(Clone, Debug)]
pub struct TExpr {
    basis: Basis,
    extended: bool,
    terms: BTreeMap<TMonomial, Rational>,
}

impl PartialEq for TExpr {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.terms == other.terms
    }
}

impl Eq for TExpr {}

impl TExpr {
    pub fn zero(basis: Basis) -> Self {
        TExpr { basis, extended: false, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational, basis: Basis) -> Self {
        Self::monomial(Vec::new(), c, basis)
    }

    pub fn one(basis: Basis) -> Self {
        Self::constant(Rational::one(), basis)
    }

    /// `c` times a monomial, sorting the generators.
    pub fn monomial(mut m: TMonomial, c: Rational, basis: Basis) -> Self {
        m.sort_unstable();
        let extended = m.iter().any(|g| gen_weight(g) % 2 == 1);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TExpr { basis, extended, terms }
    }

    /// `T_{k,l}` with the conventions `T_{0,0} = T_{-1,1} = -1` and zero for
    /// any other `k < 0` or `l < 1`. Odd weight is rejected.
    pub fn generator(k: i64, l: i64, basis: Basis) -> Result<Self> {
        if (k + l).rem_euclid(2) == 1 {
            return Err(Error::OutOfRange(format!(
                "T[{k},{l}] has odd weight; use the extended constructor"
            )));
        }
        Ok(Self::generator_ext(k, l, basis))
    }

    /// `T_{k,l}` without the parity restriction.
    pub fn generator_ext(k: i64, l: i64, basis: Basis) -> Self {
        if (k, l) == (0, 0) || (k, l) == (-1, 1) {
            return Self::constant(-Rational::one(), basis);
        }
        if k < 0 || l < 1 {
            return Self::zero(basis);
        }
        Self::monomial(vec![(k as u32, l as u32)], Rational::one(), basis)
    }

    /// `S_k = T_{k-1,1}`.
    pub fn s(k: u32, basis: Basis) -> Result<Self> {
        if k < 1 {
            return Err(Error::OutOfRange("S_k needs k >= 1".into()));
        }
        Self::generator(k as i64 - 1, 1, basis)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Marks the expression as belonging to the extended algebra.
    pub fn extend(mut self) -> Self {
        self.extended = true;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[Gen]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, mut m: TMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        m.sort_unstable();
        if m.iter().any(|g| gen_weight(g) % 2 == 1) {
            self.extended = true;
        }
        let v = self.coeff(&m) + c;
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn from_terms(
        basis: Basis,
        terms: impl IntoIterator<Item = (TMonomial, Rational)>,
    ) -> Self {
        let mut out = Self::zero(basis);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// The same element in the requested basis.
    pub fn in_basis(&self, basis: Basis) -> Result<Self> {
        let mut out = match (self.basis, basis) {
            (a, b) if a == b => self.clone(),
            (Basis::Pointwise, Basis::Induced) => pointwise_to_induced(self)?,
            _ => induced_to_pointwise(self)?,
        };
        out.extended |= self.extended;
        Ok(out)
    }

    pub fn to_induced(&self) -> Result<Self> {
        self.in_basis(Basis::Induced)
    }

    pub fn to_pointwise(&self) -> Result<Self> {
        self.in_basis(Basis::Pointwise)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let other = other.in_basis(self.basis)?;
        let mut out = self.clone();
        out.extended |= other.extended;
        for (m, c) in other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.basis);
        out.extended = self.extended;
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Monomial-wise product; the product meant is the one of the basis.
    fn mul_same_basis(&self, other: &Self) -> Self {
        debug_assert_eq!(self.basis, other.basis);
        let mut out = Self::zero(self.basis);
        out.extended = self.extended || other.extended;
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, a * b);
            }
        }
        out
    }

    /// Pointwise product, returned in the pointwise basis.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        Ok(self.to_pointwise()?.mul_same_basis(&other.to_pointwise()?))
    }

    /// Induced product, returned in the induced basis.
    pub fn induced_mul(&self, other: &Self) -> Result<Self> {
        Ok(self.to_induced()?.mul_same_basis(&other.to_induced()?))
    }

    /// Connected product of several elements, in the induced basis.
    pub fn connected(fs: &[TExpr]) -> Result<Self> {
        let pointwise: Vec<TExpr> = fs.iter().map(|f| f.to_pointwise()).collect::<Result<_>>()?;
        let mut out = Self::zero(Basis::Induced);
        let mut rec = |choice: &[(TMonomial, Rational)]| -> Result<()> {
            let monos: Vec<TMonomial> = choice.iter().map(|(m, _)| m.clone()).collect();
            let coeff = choice.iter().fold(Rational::one(), |acc, (_, c)| acc * c);
            let conn = connected_monomials(&monos)?;
            for (m, c) in conn.terms {
                out.add_term(m, c * &coeff);
            }
            Ok(())
        };
        // iterate the cartesian product of the terms
        let lists: Vec<Vec<(TMonomial, Rational)>> = pointwise
            .iter()
            .map(|f| f.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect())
            .collect();
        if lists.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut idx = vec![0usize; lists.len()];
        loop {
            let choice: Vec<(TMonomial, Rational)> =
                idx.iter().enumerate().map(|(i, &j)| lists[i][j].clone()).collect();
            rec(&choice)?;
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    out.extended = fs.iter().any(|f| f.extended);
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Weights of the monomials, ascending.
    pub fn weights(&self) -> Result<Vec<u32>> {
        let ind = self.to_induced()?;
        let mut w: Vec<u32> = ind.terms.keys().map(|m| monomial_weight(m)).collect();
        w.sort_unstable();
        w.dedup();
        Ok(w)
    }

    /// The weight if the element is homogeneous; zero counts as any weight
    /// and reports `None`.
    pub fn homogeneous_weight(&self) -> Result<Option<u32>> {
        let w = self.weights()?;
        Ok(if w.len() == 1 { Some(w[0]) } else { None })
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The concrete function on partitions.
    pub fn to_pfun(&self) -> PFun {
        let terms: Vec<(Rational, PFun)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let fs: Vec<PFun> = m
                    .iter()
                    .map(|&(k, l)| PFun::t_ext(k, l).expect("valid generator"))
                    .collect();
                let f = match self.basis {
                    Basis::Pointwise => PFun::pointwise_product(&fs),
                    Basis::Induced => PFun::induced_product(&fs),
                };
                (c.clone(), f)
            })
            .collect();
        PFun::linear_combination(&terms).relabel(self.to_string())
    }

    /// Value at the empty partition, where both products reduce to the
    /// ordinary product of constants.
    pub fn value_at_empty(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            acc + m.iter().fold(c.clone(), |p, &(k, l)| p * t_constant(k, l))
        })
    }
}

impl fmt::Display for TExpr {
    /// `T[0,2](+)T[0,2] + 5/6*T[0,4] + 1/6*T[0,2] + 1/288`; pointwise
    /// monomials use `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sep = match self.basis {
            Basis::Pointwise => "*",
            Basis::Induced => "(+)",
        };
        let mut keys: Vec<&TMonomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            monomial_weight(b)
                .cmp(&monomial_weight(a))
                .then(b.len().cmp(&a.len()))
                .then(b.cmp(a))
        });
        for (i, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m.iter().rev().map(|(k, l)| format!("T[{k},{l}]")).collect();
            let mono = mono.join(sep);
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
}
