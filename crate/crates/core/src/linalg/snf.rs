//! Smith normal form over principal ideal rings (Z, fields, Z/p^k).
//!
//! Pivot rule: the nonzero entry of smallest Euclidean size in the remaining
//! submatrix, ties broken by row-major position. The diagonal is normalized to
//! canonical associates, so the output is a pure function of the input.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::Ring;

/// `s = u * m * v` with `u`, `v` invertible and `s` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub u: Option<Matrix<E>>,
    pub u_inv: Option<Matrix<E>>,
    pub s: Matrix<E>,
    pub v: Option<Matrix<E>>,
    pub v_inv: Option<Matrix<E>>,
    pub rank: usize,
}

impl<E: Clone> SmithForm<E> {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<E> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Which transformation matrices to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tracking {
    pub left: bool,
    pub right: bool,
}

impl Tracking {
    pub const ALL: Tracking = Tracking { left: true, right: true };
    pub const NONE: Tracking = Tracking { left: false, right: false };
    pub const LEFT: Tracking = Tracking { left: true, right: false };
    pub const RIGHT: Tracking = Tracking { left: false, right: true };
}

/// Full decomposition with `U`, `V` and their inverses.
pub fn smith_normal_form<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<SmithForm<R::Elem>> {
    smith_normal_form_with(ring, m, Tracking::ALL)
}

pub fn smith_normal_form_with<R: Ring>(
    ring: &R,
    m: &Matrix<R::Elem>,
    tracking: Tracking,
) -> Result<SmithForm<R::Elem>> {
    if !ring.base().supports_homology() {
        return Err(Error::Unsupported(format!(
            "Smith normal form over {} (not a field, Z, or Z/p^k)",
            ring.base()
        )));
    }
    let mut w = Work::new(ring, m.clone(), tracking);
    w.run();
    Ok(w.finish())
}

pub fn rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<usize> {
    Ok(smith_normal_form_with(ring, m, Tracking::NONE)?.rank)
}

struct Work<'a, R: Ring> {
    ring: &'a R,
    m: Matrix<R::Elem>,
    u: Option<Matrix<R::Elem>>,
    u_inv: Option<Matrix<R::Elem>>,
    v: Option<Matrix<R::Elem>>,
    v_inv: Option<Matrix<R::Elem>>,
    rank: usize,
}

fn add_row_multiple<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, dst: usize, src: usize, c: &R::Elem) {
    if ring.is_zero(c) {
        return;
    }
    for k in 0..m.cols() {
        let x = m.get(src, k);
        if ring.is_zero(x) {
            continue;
        }
        let v = ring.add(m.get(dst, k), &ring.mul(c, x));
        m.set(dst, k, v);
    }
}

fn add_col_multiple<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, dst: usize, src: usize, c: &R::Elem) {
    if ring.is_zero(c) {
        return;
    }
    for k in 0..m.rows() {
        let x = m.get(k, src);
        if ring.is_zero(x) {
            continue;
        }
        let v = ring.add(m.get(k, dst), &ring.mul(c, x));
        m.set(k, dst, v);
    }
}

fn scale_row<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, r: usize, c: &R::Elem) {
    for k in 0..m.cols() {
        let v = ring.mul(c, m.get(r, k));
        m.set(r, k, v);
    }
}

fn scale_col<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, col: usize, c: &R::Elem) {
    for k in 0..m.rows() {
        let v = ring.mul(c, m.get(k, col));
        m.set(k, col, v);
    }
}

impl<'a, R: Ring> Work<'a, R> {
    fn new(ring: &'a R, m: Matrix<R::Elem>, tracking: Tracking) -> Self {
        let (r, c) = (m.rows(), m.cols());
        Work {
            ring,
            u: tracking.left.then(|| Matrix::identity(ring, r)),
            u_inv: tracking.left.then(|| Matrix::identity(ring, r)),
            v: tracking.right.then(|| Matrix::identity(ring, c)),
            v_inv: tracking.right.then(|| Matrix::identity(ring, c)),
            m,
            rank: 0,
        }
    }

    /// row_dst += c * row_src
    fn row_add(&mut self, dst: usize, src: usize, c: &R::Elem) {
        add_row_multiple(self.ring, &mut self.m, dst, src, c);
        if let Some(u) = self.u.as_mut() {
            add_row_multiple(self.ring, u, dst, src, c);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            let neg = self.ring.neg(c);
            add_col_multiple(self.ring, ui, src, dst, &neg);
        }
    }

    /// col_dst += c * col_src
    fn col_add(&mut self, dst: usize, src: usize, c: &R::Elem) {
        add_col_multiple(self.ring, &mut self.m, dst, src, c);
        if let Some(v) = self.v.as_mut() {
            add_col_multiple(self.ring, v, dst, src, c);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            let neg = self.ring.neg(c);
            add_row_multiple(self.ring, vi, src, dst, &neg);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(a, b);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.swap_cols(a, b);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap_rows(a, b);
        }
    }

    fn row_scale(&mut self, r: usize, unit: &R::Elem) {
        scale_row(self.ring, &mut self.m, r, unit);
        if let Some(u) = self.u.as_mut() {
            scale_row(self.ring, u, r, unit);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            let inv = self.ring.unit_inverse(unit).expect("normalizing factor is a unit");
            scale_col(self.ring, ui, r, &inv);
        }
    }

    fn smaller(&self, a: &R::Elem, best: Option<&R::Elem>) -> bool {
        match best {
            None => true,
            Some(b) => self.ring.size_cmp(a, b) == std::cmp::Ordering::Less,
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let x = self.m.get(i, j);
                if self.ring.is_zero(x) {
                    continue;
                }
                // Units have the least size, so the first one in row-major order wins.
                if self.ring.is_unit(x) {
                    return Some((i, j));
                }
                if self.smaller(x, best.map(|(a, b)| self.m.get(a, b))) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let ring = self.ring;
        let n = self.m.rows().min(self.m.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut dirty = false;
                let pivot = self.m.get(t, t).clone();
                for i in t + 1..self.m.rows() {
                    let x = self.m.get(i, t);
                    if ring.is_zero(x) {
                        continue;
                    }
                    let (q, r) = ring.div_rem(x, &pivot);
                    self.row_add(i, t, &ring.neg(&q));
                    dirty |= !ring.is_zero(&r);
                }
                for j in t + 1..self.m.cols() {
                    let x = self.m.get(t, j);
                    if ring.is_zero(x) {
                        continue;
                    }
                    let (q, r) = ring.div_rem(x, &pivot);
                    self.col_add(j, t, &ring.neg(&q));
                    dirty |= !ring.is_zero(&r);
                }
                if dirty {
                    // A remainder smaller than the pivot survived; promote it.
                    let mut best: Option<(usize, usize)> = None;
                    for i in t..self.m.rows() {
                        let x = self.m.get(i, t);
                        if !ring.is_zero(x) && self.smaller(x, best.map(|(a, b)| self.m.get(a, b))) {
                            best = Some((i, t));
                        }
                    }
                    for j in t + 1..self.m.cols() {
                        let x = self.m.get(t, j);
                        if !ring.is_zero(x) && self.smaller(x, best.map(|(a, b)| self.m.get(a, b))) {
                            best = Some((t, j));
                        }
                    }
                    let (bi, bj) = best.expect("nonzero pivot remains");
                    self.row_swap(t, bi);
                    self.col_swap(t, bj);
                    continue;
                }
                let pivot = self.m.get(t, t).clone();
                let offender = (t + 1..self.m.rows()).find(|&i| {
                    (t + 1..self.m.cols()).any(|j| ring.exact_div(self.m.get(i, j), &pivot).is_none())
                });
                match offender {
                    Some(i) => self.row_add(t, i, &ring.one()),
                    None => break,
                }
            }
            let unit = ring.normalizing_unit(self.m.get(t, t));
            if !ring.is_one(&unit) {
                self.row_scale(t, &unit);
            }
            self.rank = t + 1;
        }
    }

    fn finish(self) -> SmithForm<R::Elem> {
        SmithForm {
            u: self.u,
            u_inv: self.u_inv,
            s: self.m,
            v: self.v,
            v_inv: self.v_inv,
            rank: self.rank,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing};
    use num_bigint::BigInt;

    fn zmat(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let z = Integers;
        let id = Matrix::identity(&z, 3);
        let f = smith_normal_form(&z, &id).unwrap();
        assert_eq!(f.s, id);
        assert_eq!(f.rank, 3);
    }

    #[test]
    fn zero_matrix() {
        let z = Integers;
        let m = Matrix::zeros(&z, 2, 2);
        let f = smith_normal_form(&z, &m).unwrap();
        assert_eq!(f.rank, 0);
        assert!(f.s.is_zero(&z));
        assert!(f.u.unwrap().is_identity(&z));
        assert!(f.v.unwrap().is_identity(&z));
    }

    #[test]
    fn diag_two_three() {
        let z = Integers;
        let m = zmat(&[&[2, 0], &[0, 3]]);
        let f = smith_normal_form(&z, &m).unwrap();
        assert_eq!(f.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        let u = f.u.clone().unwrap();
        let v = f.v.clone().unwrap();
        assert_eq!(u.mul(&z, &m).unwrap().mul(&z, &v).unwrap(), f.s);
    }

    #[test]
    fn prime_power_residues() {
        let r = ModRing::new(4).unwrap();
        let m = Matrix::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap();
        let f = smith_normal_form(&r, &m).unwrap();
        assert_eq!(f.invariant_factors(), vec![1, 2]);
    }

    #[test]
    fn rejects_non_prime_power_modulus() {
        let r = ModRing::new(6).unwrap();
        let m = Matrix::identity(&r, 1);
        assert!(matches!(smith_normal_form(&r, &m), Err(Error::Unsupported(_))));
    }
}
