//! Indexing of tensor powers of a free module with basis `0..r`.
//!
//! The basis tensor `e_{a_0} ⊗ ... ⊗ e_{a_q}` has index `Σ a_k r^{q-k}`, so
//! position 0 is the most significant digit.

use crate::linalg::sparse::{Accumulator, SparseMatrix, SparseVec};
use crate::ring::Ring;

pub fn power(r: usize, factors: usize) -> Option<usize> {
    r.checked_pow(factors as u32)
}

pub fn decode(mut idx: usize, r: usize, factors: usize) -> Vec<usize> {
    let mut digits = vec![0; factors];
    for d in digits.iter_mut().rev() {
        *d = idx % r;
        idx /= r;
    }
    digits
}

pub fn encode(digits: &[usize], r: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * r + d)
}

/// Basis of the normalized level `q` in a basis whose element `unit` is the
/// algebra unit: tensors with no `unit` digit in positions `1..=q`, ordered
/// lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizedBasis {
    pub r: usize,
    pub unit: usize,
}

impl NormalizedBasis {
    pub fn rank(&self, q: usize) -> usize {
        self.r * (self.r - 1).pow(q as u32)
    }

    /// Position of a tensor in the normalized basis, `None` if it is degenerate.
    pub fn index(&self, digits: &[usize]) -> Option<usize> {
        let m = self.r - 1;
        let mut idx = digits[0];
        for &d in &digits[1..] {
            if d == self.unit {
                return None;
            }
            idx = idx * m + if d < self.unit { d } else { d - 1 };
        }
        Some(idx)
    }

    pub fn digits(&self, mut idx: usize, q: usize) -> Vec<usize> {
        let m = self.r - 1;
        let mut digits = vec![0; q + 1];
        for k in (1..=q).rev() {
            let c = idx % m;
            idx /= m;
            digits[k] = if c < self.unit { c } else { c + 1 };
        }
        digits[0] = idx;
        digits
    }
}

/// Image of a basis tensor under `m^{⊗ factors}`, where `m` is `rows x r`.
pub fn tensor_column<R: Ring>(
    ring: &R,
    m: &SparseMatrix<R::Elem>,
    digits: &[usize],
) -> SparseVec<R::Elem> {
    let rows = m.rows();
    let mut cur: SparseVec<R::Elem> = vec![(0, ring.one())];
    for &a in digits {
        let col = m.column(a);
        let mut next = Vec::with_capacity(cur.len() * col.len());
        for (idx, c) in &cur {
            for (i, x) in col {
                let p = ring.mul(c, x);
                if !ring.is_zero(&p) {
                    next.push((idx * rows + i, p));
                }
            }
        }
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// The matrix of `m^{⊗ factors}`.
pub fn tensor_power<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>, factors: usize) -> SparseMatrix<R::Elem> {
    let cols = m.cols().pow(factors as u32);
    let rows = m.rows().pow(factors as u32);
    let columns = (0..cols)
        .map(|j| tensor_column(ring, m, &decode(j, m.cols(), factors)))
        .collect();
    SparseMatrix::from_columns(rows, columns)
}

/// Applies `m^{⊗ factors}` to a sparse vector without building the matrix.
pub fn tensor_apply<R: Ring>(
    ring: &R,
    m: &SparseMatrix<R::Elem>,
    factors: usize,
    v: &SparseVec<R::Elem>,
) -> SparseVec<R::Elem> {
    let mut acc = Accumulator::new(ring, m.rows().pow(factors as u32));
    for (j, c) in v {
        for (i, x) in tensor_column(ring, m, &decode(*j, m.cols(), factors)) {
            acc.add(ring, i, &ring.mul(c, &x));
        }
    }
    acc.take(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_round_trip() {
        for idx in 0..27 {
            assert_eq!(encode(&decode(idx, 3, 3), 3), idx);
        }
        assert_eq!(decode(5, 2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn normalized_indexing_is_a_bijection() {
        let b = NormalizedBasis { r: 4, unit: 2 };
        let q = 3;
        let mut seen = vec![false; b.rank(q)];
        for idx in 0..4usize.pow(4) {
            let d = decode(idx, 4, q + 1);
            if let Some(k) = b.index(&d) {
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(b.digits(k, q), d);
            } else {
                assert!(d[1..].contains(&2));
            }
        }
        assert!(seen.iter().all(|x| *x));
    }
}
