//! Functions on partitions and their three products.
//!
//! A [`PFun`] wraps a deterministic evaluator. Closed forms such as `S_k`
//! and `T_{k,l}` are cheap at any size; induced and connected products sum
//! over sub-multisets and memoize their values for small partitions.

mod generators;
mod sum;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{decompose3, for_each_partition, set_partitions, Partition, SetPartition};
use crate::qseries::{euler_factor, QSeries};
use crate::Rational;

pub use generators::{for_each_cell, hook_lengths, t_constant, CellStat};
pub use sum::RatSum;

/// Largest `n` accepted by [`PFun::connected`].
pub const MAX_CONNECTED: usize = 8;

/// Products memoize values of partitions up to this size only, so that a
/// q-bracket to high order does not keep every value alive.
const CACHE_LIMIT: usize = 24;

type Evaluator = dyn Fn(&Partition) -> Result<Rational> + Send + Sync;

struct Inner {
    label: String,
    bound: Option<usize>,
    eval: Box<Evaluator>,
    cache: Option<RwLock<HashMap<Partition, Rational>>>,
}

/// A function from partitions to rationals.
///
/// Cloning is cheap and shares the evaluator and its cache.
#[derive(Clone)]
pub struct PFun {
    inner: Arc<Inner>,
}

impl fmt::Debug for PFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PFun")
            .field("label", &self.inner.label)
            .field("bound", &self.inner.bound)
            .finish()
    }
}

impl fmt::Display for PFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.label)
    }
}

fn min_bound(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PFun {
    /// Wraps a closed-form evaluator that is valid for every partition.
    pub fn from_fn(
        label: impl Into<String>,
        f: impl Fn(&Partition) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Self::build(label.into(), None, false, move |l| Ok(f(l)))
    }

    /// Wraps a fallible evaluator valid up to `bound`, memoizing values of
    /// small partitions.
    pub fn from_fallible(
        label: impl Into<String>,
        bound: Option<usize>,
        f: impl Fn(&Partition) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        Self::build(label.into(), bound, true, f)
    }

    fn build(
        label: String,
        bound: Option<usize>,
        memoize: bool,
        f: impl Fn(&Partition) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        PFun {
            inner: Arc::new(Inner {
                label,
                bound,
                eval: Box::new(f),
                cache: memoize.then(|| RwLock::new(HashMap::new())),
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Largest partition size this function may be evaluated on, `None`
    /// when unrestricted.
    pub fn bound(&self) -> Option<usize> {
        self.inner.bound
    }

    /// The same function, refusing partitions larger than `bound`.
    pub fn with_bound(&self, bound: usize) -> Self {
        let f = self.clone();
        Self::build(
            self.inner.label.clone(),
            Some(min_bound(self.inner.bound, Some(bound)).unwrap_or(bound)),
            false,
            move |l| f.eval(l),
        )
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        let f = self.clone();
        Self::build(label.into(), self.inner.bound, false, move |l| f.eval(l))
    }

    pub fn eval(&self, lambda: &Partition) -> Result<Rational> {
        if let Some(b) = self.inner.bound {
            if lambda.size() > b {
                return Err(Error::BeyondBound { bound: b, size: lambda.size() });
            }
        }
        let Some(cache) = &self.inner.cache else {
            return (self.inner.eval)(lambda);
        };
        if let Some(v) = cache.read().unwrap_or_else(|e| e.into_inner()).get(lambda) {
            return Ok(v.clone());
        }
        let v = (self.inner.eval)(lambda)?;
        if lambda.size() <= CACHE_LIMIT {
            cache
                .write()
                .unwrap_or_else(|e| e.into_inner())
                .insert(lambda.clone(), v.clone());
        }
        Ok(v)
    }

    /// Evaluates on a partition given by its parts. Panics on invalid parts.
    pub fn at(&self, parts: &[u32]) -> Result<Rational> {
        self.eval(&Partition::new(parts.to_vec()).expect("invalid partition"))
    }

    pub fn constant(c: Rational) -> Self {
        let label = c.to_string();
        Self::from_fn(label, move |_| c.clone())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The Möbius function of the poset of partitions.
    pub fn moebius() -> Self {
        Self::from_fn("mu", |l| Rational::from_integer(l.moebius().into()))
    }

    pub fn add(&self, other: &PFun) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::build(
            format!("({f} + {g})"),
            min_bound(f.bound(), g.bound()),
            false,
            move |l| Ok(f.eval(l)? + g.eval(l)?),
        )
    }

    pub fn sub(&self, other: &PFun) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let f = self.clone();
        let c = c.clone();
        Self::build(format!("{c}*{f}"), f.bound(), false, move |l| Ok(&c * f.eval(l)?))
    }

    /// Linear combination `sum c_i f_i`.
    pub fn linear_combination(terms: &[(Rational, PFun)]) -> Self {
        let terms = terms.to_vec();
        let bound = terms.iter().fold(None, |b, (_, f)| min_bound(b, f.bound()));
        let label = terms
            .iter()
            .map(|(c, f)| format!("{c}*{f}"))
            .collect::<Vec<_>>()
            .join(" + ");
        Self::build(format!("({label})"), bound, false, move |l| {
            terms
                .iter()
                .try_fold(Rational::zero(), |acc, (c, f)| Ok(acc + c * f.eval(l)?))
        })
    }

    pub fn pointwise_mul(&self, other: &PFun) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::build(
            format!("{f}*{g}"),
            min_bound(f.bound(), g.bound()),
            false,
            move |l| Ok(f.eval(l)? * g.eval(l)?),
        )
    }

    pub fn pointwise_product(fs: &[PFun]) -> Self {
        match fs {
            [] => Self::one(),
            [f] => f.clone(),
            [f, rest @ ..] => f.pointwise_mul(&Self::pointwise_product(rest)),
        }
    }

    /// `(f ⊙ g)(λ) = sum_{α ∪ β ∪ γ = λ} f(α) g(β) μ(γ)`.
    pub fn induced_mul(&self, other: &PFun) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::build(
            format!("({f} (+) {g})"),
            min_bound(f.bound(), g.bound()),
            true,
            move |l| {
                let mut acc = Rational::zero();
                for (a, b, c) in decompose3(l) {
                    let fa = f.eval(&a)?;
                    if fa.is_zero() {
                        continue;
                    }
                    let term = fa * g.eval(&b)?;
                    if c.len() % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                Ok(acc)
            },
        )
    }

    pub fn induced_product(fs: &[PFun]) -> Self {
        match fs {
            [] => Self::one(),
            [f] => f.clone(),
            [f, rest @ ..] => f.induced_mul(&Self::induced_product(rest)),
        }
    }

    /// `f_1 | ... | f_n = sum_{α ∈ Π(n)} μ(α, 𝟏) ⨀_{A ∈ α} f_A`, where `f_A`
    /// is the pointwise product over the block.
    pub fn connected(fs: &[PFun]) -> Result<Self> {
        let n = fs.len();
        if n == 0 {
            return Err(Error::InvalidArgument("connected product of no functions".into()));
        }
        if n > MAX_CONNECTED {
            return Err(Error::ResourceLimit(format!(
                "connected product of {n} functions (limit {MAX_CONNECTED})"
            )));
        }
        if n == 1 {
            return Ok(fs[0].clone());
        }
        let mut block_fns: HashMap<Vec<usize>, PFun> = HashMap::new();
        let mut terms = Vec::new();
        for alpha in set_partitions(n)? {
            let factors: Vec<PFun> = alpha
                .blocks()
                .iter()
                .map(|b| {
                    block_fns
                        .entry(b.clone())
                        .or_insert_with(|| {
                            Self::pointwise_product(&b.iter().map(|&i| fs[i].clone()).collect::<Vec<_>>())
                        })
                        .clone()
                })
                .collect();
            terms.push((Rational::from_integer(alpha.moebius_top()), Self::induced_product(&factors)));
        }
        let label = fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" | ");
        let inner = Self::linear_combination(&terms);
        let bound = inner.bound();
        Ok(Self::build(format!("({label})"), bound, true, move |l| inner.eval(l)))
    }

    /// `Df = S_2 | f`, the derivation matching `q d/dq` under the bracket.
    pub fn derivation_d(&self) -> Self {
        Self::connected(&[Self::s(2).expect("S_2"), self.clone()]).expect("two factors")
    }

    /// Values on every partition of size at most `n`, in enumeration order.
    pub fn table(&self, n: usize) -> Result<Vec<(Partition, Rational)>> {
        crate::partitions::partitions_up_to(n)
            .into_iter()
            .map(|p| {
                let v = self.eval(&p)?;
                Ok((p, v))
            })
            .collect()
    }

    /// First partition of size at most `n` where the two functions differ.
    pub fn first_difference(&self, other: &PFun, n: usize) -> Result<Option<Partition>> {
        for p in crate::partitions::partitions_up_to(n) {
            if self.eval(&p)? != other.eval(&p)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    /// `sum_{|λ| = n} f(λ)` for `n = 0..=order`, streamed size by size in
    /// parallel.
    pub fn size_sums(&self, order: usize) -> Result<Vec<Rational>> {
        if let Some(b) = self.bound() {
            if b < order {
                return Err(Error::BeyondBound { bound: b, size: order });
            }
        }
        (0..=order)
            .into_par_iter()
            .map(|n| {
                let mut acc = RatSum::default();
                let mut err = None;
                for_each_partition(n, |parts| {
                    if err.is_some() {
                        return;
                    }
                    match self.eval(&Partition::from_sorted_unchecked(parts.to_vec())) {
                        Ok(v) => acc.add(&v),
                        Err(e) => err = Some(e),
                    }
                });
                match err {
                    Some(e) => Err(e),
                    None => Ok(acc.total()),
                }
            })
            .collect()
    }

    /// `<f>_q = (sum_λ f(λ) q^{|λ|}) prod_n (1 - q^n)`, truncated at `order`.
    pub fn q_bracket(&self, order: usize) -> Result<QSeries> {
        let sums = QSeries::new(self.size_sums(order)?);
        Ok(&sums * &euler_factor(order))
    }

    /// `sum_{α ∈ Π(n)} μ(α, 𝟏) prod_{A ∈ α} <f_A>_q`.
    pub fn connected_q_bracket(fs: &[PFun], order: usize) -> Result<QSeries> {
        let n = fs.len();
        if n > MAX_CONNECTED {
            return Err(Error::ResourceLimit(format!(
                "connected bracket of {n} functions (limit {MAX_CONNECTED})"
            )));
        }
        let mut brackets: HashMap<Vec<usize>, QSeries> = HashMap::new();
        let mut total = QSeries::zero(order);
        for alpha in set_partitions(n)? {
            let mut prod = QSeries::constant(Rational::one(), order);
            for b in alpha.blocks() {
                if !brackets.contains_key(b) {
                    let f = Self::pointwise_product(&b.iter().map(|&i| fs[i].clone()).collect::<Vec<_>>());
                    brackets.insert(b.clone(), f.q_bracket(order)?);
                }
                prod = &prod * &brackets[b];
            }
            let mu = Rational::from_integer(SetPartition::moebius_top(&alpha));
            total = &total + &prod.scale(&mu);
        }
        Ok(total)
    }
}
