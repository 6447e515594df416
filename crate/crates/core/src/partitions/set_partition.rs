use std::fmt;

use num_bigint::BigInt;

use crate::arith::factorial;
use crate::error::{Error, Result};

/// Largest `n` for which [`set_partitions`] enumerates `Π(n)`.
pub const MAX_SET_PARTITION_N: usize = 12;

/// Set partition of a finite set of indices.
///
/// Blocks are sorted internally and ordered by their smallest element, so
/// equal set partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        SetPartition { blocks }
    }

    /// The one-block partition `{0, ..., n-1}`.
    pub fn top(n: usize) -> Self {
        Self::from_blocks(vec![(0..n).collect()])
    }

    /// The partition into singletons.
    pub fn bottom(n: usize) -> Self {
        Self::from_blocks((0..n).map(|i| vec![i]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// All elements of the underlying set, sorted.
    pub fn ground_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// `self ≤ other` in the refinement order: every block of `self` lies
    /// inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.blocks.iter().all(|b| other.blocks.iter().any(|c| b.iter().all(|x| c.contains(x))))
    }

    /// `α|_Z`, the nonempty intersections of the blocks with `Z`.
    pub fn restrict(&self, z: &[usize]) -> SetPartition {
        Self::from_blocks(
            self.blocks
                .iter()
                .map(|b| b.iter().copied().filter(|x| z.contains(x)).collect())
                .collect(),
        )
    }

    /// `μ(α, 𝟏) = (-1)^{ℓ-1} (ℓ-1)!`.
    pub fn moebius_top(&self) -> BigInt {
        signed_factorial(self.len())
    }

    /// `μ(α, β) = Π_{B ∈ β} (-1)^{ℓ(α_B)-1} (ℓ(α_B)-1)!`, where `α_B` is
    /// `α` restricted to `B`; zero unless `α` refines `β`.
    pub fn moebius(alpha: &SetPartition, beta: &SetPartition) -> BigInt {
        if !alpha.refines(beta) {
            return BigInt::from(0);
        }
        beta.blocks.iter().fold(BigInt::from(1), |acc, b| {
            let inside = alpha.blocks.iter().filter(|a| b.contains(&a[0])).count();
            acc * signed_factorial(inside)
        })
    }
}

fn signed_factorial(l: usize) -> BigInt {
    let f = factorial(l.saturating_sub(1) as u32);
    if l.is_multiple_of(2) { -f } else { f }
}

impl fmt::Display for SetPartition {
    /// One-based, e.g. `{1,3}{2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let s: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

/// All set partitions of `{0, ..., n-1}` via restricted growth strings.
///
/// Refuses `n` above [`MAX_SET_PARTITION_N`]; the Bell numbers grow too
/// fast to make that useful.
pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n > MAX_SET_PARTITION_N {
        return Err(Error::ResourceLimit(format!(
            "set partitions of {n} elements (limit {MAX_SET_PARTITION_N})"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(SetPartition { blocks });
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    Ok(out)
}
