use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest shape accepted by [`border_strip_tableaux`].
pub const BST_SIZE_LIMIT: usize = 14;

/// The cells of `outer` that are not cells of `inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.diagram_contains(&inner) {
            return Err(Error::InvalidArgument(format!(
                "{inner} is not contained in {outer}"
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    /// The straight shape `λ/∅`.
    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells as `(row, column)`, both from 0.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &p) in self.outer.parts().iter().enumerate() {
            for c in self.inner.part(r + 1) as usize..p as usize {
                out.push((r, c));
            }
        }
        out
    }

    /// Edge connected and free of 2x2 blocks.
    pub fn is_border_strip(&self) -> bool {
        let cells = self.cells();
        if cells.is_empty() {
            return false;
        }
        let set: HashSet<(usize, usize)> = cells.iter().copied().collect();
        let has_block = cells.iter().any(|&(r, c)| {
            set.contains(&(r + 1, c)) && set.contains(&(r, c + 1)) && set.contains(&(r + 1, c + 1))
        });
        if has_block {
            return false;
        }
        let mut seen = HashSet::new();
        let mut stack = vec![cells[0]];
        while let Some((r, c)) = stack.pop() {
            if !seen.insert((r, c)) {
                continue;
            }
            let mut nbrs = vec![(r + 1, c), (r, c + 1)];
            if r > 0 {
                nbrs.push((r - 1, c));
            }
            if c > 0 {
                nbrs.push((r, c - 1));
            }
            stack.extend(nbrs.into_iter().filter(|n| set.contains(n) && !seen.contains(n)));
        }
        seen.len() == cells.len()
    }

    /// Number of rows the shape occupies, minus one.
    pub fn height(&self) -> u32 {
        let rows: BTreeSet<usize> = self.cells().into_iter().map(|(r, _)| r).collect();
        rows.len().saturating_sub(1) as u32
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

/// A border strip together with its height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderStripRecord {
    pub shape: SkewShape,
    pub height: u32,
}

fn betas(lambda: &Partition) -> Vec<i64> {
    let l = lambda.len() as i64;
    lambda.parts().iter().enumerate().map(|(i, &p)| p as i64 + l - 1 - i as i64).collect()
}

fn from_betas(mut b: Vec<i64>) -> Partition {
    b.sort_unstable_by(|x, y| y.cmp(x));
    let l = b.len() as i64;
    let parts = b
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - (l - 1 - i as i64)) as u32)
        .filter(|&p| p > 0)
        .collect();
    Partition::from_sorted_unchecked(parts)
}

/// Removals of a border strip of size `m` from `λ`, as `(λ∖γ, height)`.
///
/// A strip corresponds to moving a bead `b` to a free position `b - m`; the
/// height is the number of beads jumped over.
pub(crate) fn strip_removals(lambda: &Partition, m: u32) -> Vec<(Partition, u32)> {
    let b = betas(lambda);
    let m = m as i64;
    let mut out = Vec::new();
    for (idx, &x) in b.iter().enumerate() {
        let y = x - m;
        if y < 0 || b.contains(&y) {
            continue;
        }
        let height = b.iter().filter(|&&z| y < z && z < x).count() as u32;
        let mut nb = b.clone();
        nb[idx] = y;
        out.push((from_betas(nb), height));
    }
    out
}

/// All border strips of size `m` of `λ`.
pub fn border_strips(lambda: &Partition, m: u32) -> Vec<BorderStripRecord> {
    if m == 0 {
        return Vec::new();
    }
    strip_removals(lambda, m)
        .into_iter()
        .map(|(inner, height)| BorderStripRecord {
            shape: SkewShape { outer: lambda.clone(), inner },
            height,
        })
        .collect()
}

/// Calls `f` on every `μ` with `floor ⊆ μ ⊆ outer` and `|μ| = size`.
pub(crate) fn for_each_subdiagram(
    outer: &Partition,
    floor: &Partition,
    size: usize,
    f: &mut impl FnMut(Partition),
) {
    fn rec(
        outer: &[u32],
        floor: &Partition,
        row: usize,
        cap: u32,
        left: usize,
        buf: &mut Vec<u32>,
        f: &mut impl FnMut(Partition),
    ) {
        if row == outer.len() {
            if left == 0 {
                let parts = buf.iter().copied().filter(|&p| p > 0).collect();
                f(Partition::from_sorted_unchecked(parts));
            }
            return;
        }
        let lo = floor.part(row + 1);
        let hi = outer[row].min(cap);
        if lo > hi {
            return;
        }
        let room: usize = outer[row..].iter().map(|&p| p.min(hi) as usize).sum();
        if room < left {
            return;
        }
        for v in (lo..=hi).rev() {
            if v as usize > left {
                continue;
            }
            buf.push(v);
            rec(outer, floor, row + 1, v, left - v as usize, buf, f);
            buf.pop();
        }
    }
    if !outer.diagram_contains(floor) || size < floor.size() || size > outer.size() {
        return;
    }
    let cap = outer.part(1);
    rec(outer.parts(), floor, 0, cap, size, &mut Vec::new(), f);
}

/// Border strips of size `m` of the skew shape, found by testing every
/// candidate `λ/μ` cell by cell.
pub fn border_strips_geometric(shape: &SkewShape, m: u32) -> Vec<BorderStripRecord> {
    let mut out = Vec::new();
    if m == 0 || m as usize > shape.size() {
        return out;
    }
    let target = shape.outer.size() - m as usize;
    for_each_subdiagram(&shape.outer, &shape.inner, target, &mut |mu| {
        let s = SkewShape { outer: shape.outer.clone(), inner: mu };
        if s.is_border_strip() {
            let height = s.height();
            out.push(BorderStripRecord { shape: s, height });
        }
    });
    out
}

/// All border strip tableaux of the given type filling `shape`, each listed
/// as its sequence of strips in removal order.
pub fn border_strip_tableaux(shape: &SkewShape, rho: &[u32]) -> Result<Vec<Vec<BorderStripRecord>>> {
    let total: usize = rho.iter().map(|&m| m as usize).sum();
    if total != shape.size() {
        return Err(Error::InvalidArgument(format!(
            "type has size {total} but {shape} has {} cells",
            shape.size()
        )));
    }
    enumerate(shape, rho)
}

/// Border strip tableaux of type `m⃗` starting at the rim of `λ`, where the
/// strips need not exhaust the diagram.
pub fn border_strip_tableaux_within(lambda: &Partition, ms: &[u32]) -> Result<Vec<Vec<BorderStripRecord>>> {
    let total: usize = ms.iter().map(|&m| m as usize).sum();
    if total > lambda.size() {
        return Ok(Vec::new());
    }
    enumerate(&SkewShape::straight(lambda.clone()), ms)
}

fn enumerate(shape: &SkewShape, rho: &[u32]) -> Result<Vec<Vec<BorderStripRecord>>> {
    if shape.size() > BST_SIZE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "tableau enumeration is limited to {BST_SIZE_LIMIT} cells"
        )));
    }
    fn rec(
        outer: &Partition,
        floor: &Partition,
        rho: &[u32],
        path: &mut Vec<BorderStripRecord>,
        out: &mut Vec<Vec<BorderStripRecord>>,
    ) {
        let Some((&m, rest)) = rho.split_first() else {
            out.push(path.clone());
            return;
        };
        let here = SkewShape { outer: outer.clone(), inner: floor.clone() };
        for strip in border_strips_geometric(&here, m) {
            let next = strip.shape.inner.clone();
            path.push(strip);
            rec(&next, floor, rest, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    rec(&shape.outer, &shape.inner, rho, &mut Vec::new(), &mut out);
    Ok(out)
}
