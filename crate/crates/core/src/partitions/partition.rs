use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Integer partition with parts stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Fails unless the parts are positive and non-increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition parts must be non-increasing".into()));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Caller guarantees positive, non-increasing parts.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The partition `(m, m, ..., m)` with `r` parts.
    pub fn power(m: u32, r: usize) -> Self {
        assert!(m > 0 || r == 0, "parts must be positive");
        Partition { parts: vec![m; r] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `r_m(λ)`, the number of parts equal to `m`.
    pub fn multiplicity(&self, m: u32) -> usize {
        self.parts.iter().filter(|&&p| p == m).count()
    }

    /// Distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((m, r)) if *m == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// `(-1)^{len}` on strict partitions and zero otherwise.
    pub fn moebius(&self) -> i64 {
        if !self.is_strict() {
            0
        } else if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = j == other.parts.len()
                || (i < self.parts.len() && self.parts[i] >= other.parts[j]);
            if take_left {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Partition { parts }
    }

    /// Multiset inclusion, the order of the poset of partitions.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .multiplicities()
            .iter()
            .all(|&(m, r)| self.multiplicity(m) >= r)
    }

    /// Multiset difference `self - other`, if `other` is contained in `self`.
    pub fn difference(&self, other: &Partition) -> Option<Partition> {
        let mut rest = self.parts.clone();
        for &p in &other.parts {
            let pos = rest.iter().position(|&q| q == p)?;
            rest.remove(pos);
        }
        Some(Partition { parts: rest })
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Part `i` counted from 1, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Young diagram containment `μ ⊆ λ` (as shapes, not multisets).
    pub fn diagram_contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Size first, then lexicographic on the parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "[]");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,2,1,1`, optionally bracketed, and `[]` for the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t).trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Calls `f` on every partition of `n` in reverse lexicographic order,
/// reusing one buffer.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[u32])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut a: Vec<u32> = vec![n as u32];
    loop {
        f(&a);
        // drop trailing ones, then split the last part larger than one
        let mut ones = 0u32;
        while a.last() == Some(&1) {
            a.pop();
            ones += 1;
        }
        let Some(last) = a.pop() else { return };
        let k = last - 1;
        let mut rem = ones + last;
        while rem >= k {
            a.push(k);
            rem -= k;
        }
        if rem > 0 {
            a.push(rem);
        }
    }
}

/// All partitions of `n`, reverse lexicographic.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(Partition { parts: p.to_vec() }));
    out
}

/// All partitions of size at most `n`, by size and then reverse
/// lexicographic.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// All sub-multisets of `λ`.
pub fn submultisets(lambda: &Partition) -> Vec<Partition> {
    let mut out = vec![Vec::new()];
    for (m, r) in lambda.multiplicities() {
        let mut next = Vec::with_capacity(out.len() * (r + 1));
        for base in &out {
            for c in 0..=r {
                let mut v: Vec<u32> = base.clone();
                v.extend(std::iter::repeat_n(m, c));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(|parts| Partition { parts }).collect()
}

/// Ordered pairs `(α, β)` with `α ∪ β = λ`.
pub fn decompose2(lambda: &Partition) -> Vec<(Partition, Partition)> {
    submultisets(lambda)
        .into_iter()
        .map(|a| {
            let b = lambda.difference(&a).expect("sub-multiset");
            (a, b)
        })
        .collect()
}

/// Ordered triples `(α, β, γ)` with `α ∪ β ∪ γ = λ` and `γ` strict, the
/// only triples that survive the Möbius factor of the induced product.
pub fn decompose3(lambda: &Partition) -> Vec<(Partition, Partition, Partition)> {
    let mut out: Vec<(Vec<u32>, Vec<u32>, Vec<u32>)> = vec![(Vec::new(), Vec::new(), Vec::new())];
    for (m, r) in lambda.multiplicities() {
        let mut next = Vec::new();
        for (a, b, g) in &out {
            for c in 0..=1usize.min(r) {
                for i in 0..=r - c {
                    let (mut a, mut b, mut g) = (a.clone(), b.clone(), g.clone());
                    a.extend(std::iter::repeat_n(m, i));
                    b.extend(std::iter::repeat_n(m, r - c - i));
                    if c == 1 {
                        g.push(m);
                    }
                    next.push((a, b, g));
                }
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(a, b, g)| (Partition { parts: a }, Partition { parts: b }, Partition { parts: g }))
        .collect()
}
