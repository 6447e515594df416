use num_traits::Zero;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Rational;

use super::{Basis, TExpr};

/// The linear system expressing `<S_k S_l>_q`, `k + l = m`, in the products
/// `G_a G_b` once `D G_{m-2}` is replaced by its quadratic expression.
#[derive(Clone, Debug)]
pub struct SurjectivitySystem {
    pub m: u32,
    /// Unordered pairs `(a, b)`, `a <= b`, indexing both rows and columns.
    pub pairs: Vec<(u32, u32)>,
    pub matrix: Matrix,
    pub determinant: Rational,
}

/// Builds the system for even `4 <= m <= 20` from the symbolic brackets of
/// `S_k S_l` and computes its determinant by exact elimination.
pub fn surjectivity_matrix(m: u32) -> Result<SurjectivitySystem> {
    if !(4..=20).contains(&m) || m % 2 == 1 {
        return Err(Error::OutOfRange(format!("m must be even in 4..=20, got {m}")));
    }
    let pairs: Vec<(u32, u32)> = (2..=m / 2).step_by(2).map(|a| (a, m - a)).collect();
    let col = |a: u32, b: u32| pairs.iter().position(|&p| p == (a.min(b), a.max(b)));
    let mut rows = Vec::new();
    for &(k, l) in &pairs {
        let prod = TExpr::s(k, Basis::Pointwise)?.pointwise_mul(&TExpr::s(l, Basis::Pointwise)?)?;
        let bracket = prod.ce_bracket()?;
        let mut row = vec![Rational::zero(); pairs.len()];
        for (mono, c) in bracket.terms() {
            match mono.as_slice() {
                [(0, a), (0, b)] => {
                    let j = col(*a, *b).ok_or_else(|| Error::NoSolution(format!("unexpected G{a}G{b}")))?;
                    row[j] += c;
                }
                [(1, b)] if *b == m - 2 => {
                    // D G_{m-2} = (...) G_m - sum_{j odd} binom(m-2, j) G_{j+1} G_{m-1-j}
                    for j in (1..m - 2).step_by(2) {
                        let idx = col(j + 1, m - 1 - j).expect("even pair");
                        row[idx] -= c * Rational::from_integer(binomial((m - 2) as i64, j as i64));
                    }
                }
                _ => {
                    return Err(Error::NoSolution(format!("unexpected bracket term in <S{k}S{l}>")));
                }
            }
        }
        rows.push(row);
    }
    let matrix = Matrix::from_rows(rows);
    let determinant = matrix.determinant()?;
    Ok(SurjectivitySystem { m, pairs, matrix, determinant })
}
