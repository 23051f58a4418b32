use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::Ring;

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zero coefficients.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Column-compressed sparse matrix. Operator matrices (faces, degeneracies,
/// tensor-power maps) have a handful of entries per column, so they are built
/// and composed in this form and only densified for elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    columns: Vec<SparseVec<E>>,
}

/// Accumulates sparse linear combinations into a dense scratch buffer.
pub struct Accumulator<R: Ring> {
    values: Vec<R::Elem>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl<R: Ring> Accumulator<R> {
    pub fn new(ring: &R, len: usize) -> Self {
        Accumulator { values: vec![ring.zero(); len], touched: Vec::new(), mark: vec![false; len] }
    }

    pub fn add(&mut self, ring: &R, idx: usize, coeff: &R::Elem) {
        if ring.is_zero(coeff) {
            return;
        }
        if !self.mark[idx] {
            self.mark[idx] = true;
            self.touched.push(idx);
        }
        self.values[idx] = ring.add(&self.values[idx], coeff);
    }

    /// Drains into a canonical sparse vector.
    pub fn take(&mut self, ring: &R) -> SparseVec<R::Elem> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let v = std::mem::replace(&mut self.values[i], ring.zero());
            if !ring.is_zero(&v) {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Canonicalizes an arbitrary list of terms: sorts, merges duplicates, drops zeros.
pub fn normalize<R: Ring>(ring: &R, mut terms: Vec<(usize, R::Elem)>) -> SparseVec<R::Elem> {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec<R::Elem> = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = ring.add(acc, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !ring.is_zero(c));
    out
}

pub fn sparse_to_dense<R: Ring>(ring: &R, v: &SparseVec<R::Elem>, len: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn dense_to_sparse<R: Ring>(ring: &R, v: &[R::Elem]) -> SparseVec<R::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn scale_sparse<R: Ring>(ring: &R, c: &R::Elem, v: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
    if ring.is_zero(c) {
        return Vec::new();
    }
    v.iter()
        .map(|(i, x)| (*i, ring.mul(c, x)))
        .filter(|(_, x)| !ring.is_zero(x))
        .collect()
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        SparseMatrix { rows: n, columns: (0..n).map(|i| vec![(i, ring.one())]).collect() }
    }

    /// Columns must already be canonical sparse vectors with indices below `rows`.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<E> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get<R: Ring<Elem = E>>(&self, ring: &R, r: usize, c: usize) -> E {
        self.columns[c]
            .binary_search_by_key(&r, |t| t.0)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| ring.zero())
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        let mut m = Matrix::zeros(ring, self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, m: &Matrix<E>) -> Self {
        let columns = (0..m.cols()).map(|j| dense_to_sparse(ring, &m.column(j))).collect();
        SparseMatrix { rows: m.rows(), columns }
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &SparseVec<E>) -> SparseVec<E> {
        let mut acc = Accumulator::new(ring, self.rows);
        self.apply_into(ring, v, &mut acc);
        acc.take(ring)
    }

    fn apply_into<R: Ring<Elem = E>>(&self, ring: &R, v: &SparseVec<E>, acc: &mut Accumulator<R>) {
        for (k, c) in v {
            for (i, x) in &self.columns[*k] {
                acc.add(ring, *i, &ring.mul(c, x));
            }
        }
    }

    pub fn apply_dense<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} applied to vector of length {}",
                self.rows,
                self.cols(),
                v.len()
            )));
        }
        let sv = dense_to_sparse(ring, v);
        Ok(sparse_to_dense(ring, &self.apply(ring, &sv), self.rows))
    }

    /// `self ∘ other`.
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "compose {}x{} after {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let mut acc = Accumulator::new(ring, self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                self.apply_into(ring, col, &mut acc);
                acc.take(ring)
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, columns })
    }

    pub fn linear_combination<R: Ring<Elem = E>>(ring: &R, terms: &[(E, &Self)]) -> Result<Self> {
        let (rows, cols) = match terms.first() {
            Some((_, m)) => (m.rows, m.cols()),
            None => return Err(Error::DimensionMismatch("empty combination".into())),
        };
        if terms.iter().any(|(_, m)| m.rows != rows || m.cols() != cols) {
            return Err(Error::DimensionMismatch("combination of differently sized matrices".into()));
        }
        let mut acc = Accumulator::new(ring, rows);
        let columns = (0..cols)
            .map(|j| {
                for (c, m) in terms {
                    for (i, x) in &m.columns[j] {
                        acc.add(ring, *i, &ring.mul(c, x));
                    }
                }
                acc.take(ring)
            })
            .collect();
        Ok(SparseMatrix { rows, columns })
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        Self::linear_combination(ring, &[(ring.one(), self), (ring.one(), other)])
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        Self::linear_combination(ring, &[(ring.one(), self), (ring.neg(&ring.one()), other)])
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        SparseMatrix {
            rows: self.rows,
            columns: self.columns.iter().map(|col| scale_sparse(ring, c, col)).collect(),
        }
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.rows == self.cols()
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, col)| col.len() == 1 && col[0].0 == j && ring.is_one(&col[0].1))
    }

    /// Restricts to the given rows and columns, renumbering both in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: SparseVec<E> = self.columns[c]
                    .iter()
                    .filter(|(i, _)| row_pos[*i] != usize::MAX)
                    .map(|(i, x)| (row_pos[*i], x.clone()))
                    .collect();
                col.sort_by_key(|t| t.0);
                col
            })
            .collect();
        SparseMatrix { rows: rows.len(), columns }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing};
    use num_bigint::BigInt;

    #[test]
    fn compose_matches_dense_product() {
        let z = Integers;
        let a = Matrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(0), BigInt::from(-1)],
            vec![BigInt::from(3), BigInt::from(0)],
        ])
        .unwrap();
        let b = Matrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
        ])
        .unwrap();
        let sa = SparseMatrix::from_dense(&z, &a);
        let sb = SparseMatrix::from_dense(&z, &b);
        assert_eq!(sa.compose(&z, &sb).unwrap().to_dense(&z), a.mul(&z, &b).unwrap());
    }

    #[test]
    fn cancellation_leaves_canonical_zero() {
        let r = ModRing::new(2).unwrap();
        let v = normalize(&r, vec![(3, 1), (1, 1), (3, 1)]);
        assert_eq!(v, vec![(1, 1)]);
        let m = SparseMatrix::identity(&r, 3);
        assert!(m.add(&r, &m).unwrap().is_zero());
    }
}
