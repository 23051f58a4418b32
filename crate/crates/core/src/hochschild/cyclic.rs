use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::hochschild::tensor::{decode, encode, power};
use crate::linalg::sparse::{normalize, SparseMatrix, SparseVec};
use crate::linalg::ChainComplex;
use crate::report::ValidationReport;
use crate::ring::Ring;

/// Default bound on the rank `rank(A)^{q+1}` of any level that is built.
pub const DEFAULT_LEVEL_CAP: usize = 1 << 16;

/// Image of one basis tensor under the face `d_i`, as `(tensor digits, coefficient)` terms.
pub(crate) fn face_terms<R: Ring>(a: &Algebra<R>, digits: &[usize], i: usize) -> Vec<(Vec<usize>, R::Elem)> {
    let q = digits.len() - 1;
    let (x, y) = if i < q { (digits[i], digits[i + 1]) } else { (digits[q], digits[0]) };
    a.mul_basis(x, y)
        .iter()
        .map(|(c, coeff)| {
            let mut out = Vec::with_capacity(q);
            if i < q {
                out.extend_from_slice(&digits[..i]);
                out.push(*c);
                out.extend_from_slice(&digits[i + 2..]);
            } else {
                out.push(*c);
                out.extend_from_slice(&digits[1..q]);
            }
            (out, coeff.clone())
        })
        .collect()
}

/// The cyclic bar construction `[q] -> A^{⊗(q+1)}` on levels `0..=top`.
#[derive(Clone, Debug)]
pub struct CyclicModule<R: Ring> {
    algebra: Algebra<R>,
    top: usize,
    /// `faces[q][i] = d_i : level q -> level q-1`.
    faces: Vec<Vec<SparseMatrix<R::Elem>>>,
    /// `degeneracies[q][j] = s_j : level q -> level q+1`, for `q < top`.
    degeneracies: Vec<Vec<SparseMatrix<R::Elem>>>,
    /// Unsigned cyclic operator `t(a_0, ..., a_q) = (a_q, a_0, ..., a_{q-1})`.
    cyclic: Vec<SparseMatrix<R::Elem>>,
}

impl<R: Ring> CyclicModule<R> {
    pub fn new(algebra: &Algebra<R>, top: usize) -> Result<Self> {
        Self::with_cap(algebra, top, DEFAULT_LEVEL_CAP)
    }

    pub fn with_cap(algebra: &Algebra<R>, top: usize, cap: usize) -> Result<Self> {
        let r = algebra.rank();
        match power(r, top + 1) {
            Some(n) if n <= cap => {}
            _ => {
                return Err(Error::CapExceeded(format!(
                    "level {top} has rank {r}^{} which exceeds the cap {cap}",
                    top + 1
                )))
            }
        }
        let ring = algebra.ring();
        let mut faces = Vec::with_capacity(top + 1);
        let mut degeneracies = Vec::with_capacity(top);
        let mut cyclic = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let n = r.pow(q as u32 + 1);
            let all: Vec<Vec<usize>> = (0..n).map(|idx| decode(idx, r, q + 1)).collect();
            let level_faces = if q == 0 {
                Vec::new()
            } else {
                (0..=q)
                    .map(|i| {
                        let cols = all
                            .iter()
                            .map(|d| {
                                let terms = face_terms(algebra, d, i).into_iter().map(|(t, c)| (encode(&t, r), c)).collect();
                                normalize(ring, terms)
                            })
                            .collect();
                        SparseMatrix::from_columns(n / r, cols)
                    })
                    .collect()
            };
            faces.push(level_faces);
            if q < top {
                let unit: SparseVec<R::Elem> = algebra
                    .unit()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !ring.is_zero(c))
                    .map(|(i, c)| (i, c.clone()))
                    .collect();
                let level_degs = (0..=q)
                    .map(|j| {
                        let cols = all
                            .iter()
                            .map(|d| {
                                let terms = unit
                                    .iter()
                                    .map(|(u, c)| {
                                        let mut t = d.clone();
                                        t.insert(j + 1, *u);
                                        (encode(&t, r), c.clone())
                                    })
                                    .collect();
                                normalize(ring, terms)
                            })
                            .collect();
                        SparseMatrix::from_columns(n * r, cols)
                    })
                    .collect();
                degeneracies.push(level_degs);
            }
            let cols = all
                .iter()
                .map(|d| {
                    let mut t = d.clone();
                    t.rotate_right(1);
                    vec![(encode(&t, r), ring.one())]
                })
                .collect();
            cyclic.push(SparseMatrix::from_columns(n, cols));
        }
        Ok(CyclicModule { algebra: algebra.clone(), top, faces, degeneracies, cyclic })
    }

    pub fn algebra(&self) -> &Algebra<R> {
        &self.algebra
    }

    pub fn top_level(&self) -> usize {
        self.top
    }

    pub fn level_rank(&self, q: usize) -> usize {
        self.cyclic[q].cols()
    }

    pub fn face(&self, q: usize, i: usize) -> &SparseMatrix<R::Elem> {
        &self.faces[q][i]
    }

    pub fn degeneracy(&self, q: usize, j: usize) -> &SparseMatrix<R::Elem> {
        &self.degeneracies[q][j]
    }

    pub fn cyclic_operator(&self, q: usize) -> &SparseMatrix<R::Elem> {
        &self.cyclic[q]
    }

    /// `t_q` with the sign `(-1)^q`.
    pub fn signed_cyclic_operator(&self, q: usize) -> SparseMatrix<R::Elem> {
        let ring = self.algebra.ring();
        self.cyclic[q].scale(ring, &sign(ring, q))
    }

    /// Hochschild boundary `b = Σ (-1)^i d_i` on level `q >= 1`.
    pub fn boundary(&self, q: usize) -> Result<SparseMatrix<R::Elem>> {
        let ring = self.algebra.ring();
        let terms: Vec<(R::Elem, &SparseMatrix<R::Elem>)> =
            self.faces[q].iter().enumerate().map(|(i, d)| (sign(ring, i), d)).collect();
        SparseMatrix::linear_combination(ring, &terms)
    }

    /// Connes' operator `(1 - t_s) s_{-1} N` from level `q` to `q + 1`, on the
    /// unnormalized complex; `s_{-1}` puts the unit in front.
    pub fn connes_b(&self, q: usize) -> Result<SparseMatrix<R::Elem>> {
        if q + 1 > self.top {
            return Err(Error::DegreeOutOfRange { degree: q, max: self.top.saturating_sub(1) });
        }
        let ring = self.algebra.ring();
        let r = self.algebra.rank();
        let n = self.level_rank(q);
        let ts = self.signed_cyclic_operator(q);
        let mut norm = SparseMatrix::identity(ring, n);
        let mut power = SparseMatrix::identity(ring, n);
        for _ in 0..q {
            power = ts.compose(ring, &power)?;
            norm = norm.add(ring, &power)?;
        }
        let extra_cols = (0..n)
            .map(|idx| {
                let terms = self
                    .algebra
                    .unit()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !ring.is_zero(c))
                    .map(|(u, c)| (u * n + idx, c.clone()))
                    .collect();
                normalize(ring, terms)
            })
            .collect();
        let extra = SparseMatrix::from_columns(n * r, extra_cols);
        let one_minus_t = SparseMatrix::identity(ring, n * r).sub(ring, &self.signed_cyclic_operator(q + 1))?;
        one_minus_t.compose(ring, &extra.compose(ring, &norm)?)
    }

    /// Unnormalized Hochschild complex on degrees `0..=top`.
    pub fn hochschild_complex(&self) -> Result<ChainComplex<R>> {
        let ranks = (0..=self.top).map(|q| self.level_rank(q)).collect();
        let diffs = (1..=self.top).map(|q| self.boundary(q)).collect::<Result<Vec<_>>>()?;
        ChainComplex::new(self.algebra.ring().clone(), ranks, diffs)
    }

    /// Exhaustive check of the simplicial and cyclic identities on every level.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let ring = self.algebra.ring();
        let eq = |a: Result<SparseMatrix<R::Elem>>, b: Result<SparseMatrix<R::Elem>>| matches!((a, b), (Ok(x), Ok(y)) if x == y);
        let id = |n: usize| SparseMatrix::identity(ring, n);
        let d = |q: usize, i: usize| &self.faces[q][i];
        let s = |q: usize, j: usize| &self.degeneracies[q][j];
        let t = |q: usize| &self.cyclic[q];

        for q in 2..=self.top {
            for j in 1..=q {
                for i in 0..j {
                    // d_i d_j = d_{j-1} d_i
                    if !eq(d(q - 1, i).compose(ring, d(q, j)), d(q - 1, j - 1).compose(ring, d(q, i))) {
                        report.push("face-face", format!("level {q}: d_{i} d_{j} != d_{} d_{i}", j - 1));
                    }
                }
            }
        }
        for q in 0..self.top.saturating_sub(1) {
            for j in 0..=q {
                for i in 0..=j {
                    // s_i s_j = s_{j+1} s_i
                    if !eq(s(q + 1, i).compose(ring, s(q, j)), s(q + 1, j + 1).compose(ring, s(q, i))) {
                        report.push("degeneracy-degeneracy", format!("level {q}: s_{i} s_{j} != s_{} s_{i}", j + 1));
                    }
                }
            }
        }
        for q in 0..self.top {
            for j in 0..=q {
                for i in 0..=q + 1 {
                    let lhs = d(q + 1, i).compose(ring, s(q, j));
                    let (rhs, what) = if i < j {
                        (s(q - 1, j - 1).compose(ring, d(q, i)), format!("s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (Ok(id(self.level_rank(q))), "id".to_string())
                    } else {
                        (s(q - 1, j).compose(ring, d(q, i - 1)), format!("s_{j} d_{}", i - 1))
                    };
                    if !eq(lhs, rhs) {
                        report.push("face-degeneracy", format!("level {q}: d_{i} s_{j} != {what}"));
                    }
                }
            }
        }
        for q in 0..=self.top {
            let mut p = id(self.level_rank(q));
            for _ in 0..=q {
                p = t(q).compose(ring, &p).expect("square");
            }
            if !p.is_identity(ring) {
                report.push("cyclic-order", format!("level {q}: t^{} != id", q + 1));
            }
            if q >= 1 {
                for i in 1..=q {
                    if !eq(d(q, i).compose(ring, t(q)), t(q - 1).compose(ring, d(q, i - 1))) {
                        report.push("face-cyclic", format!("level {q}: d_{i} t != t d_{}", i - 1));
                    }
                }
                if !eq(d(q, 0).compose(ring, t(q)), Ok(d(q, q).clone())) {
                    report.push("face-cyclic", format!("level {q}: d_0 t != d_{q}"));
                }
            }
            if q < self.top {
                for i in 1..=q {
                    if !eq(s(q, i).compose(ring, t(q)), t(q + 1).compose(ring, s(q, i - 1))) {
                        report.push("degeneracy-cyclic", format!("level {q}: s_{i} t != t s_{}", i - 1));
                    }
                }
                let t2 = t(q + 1).compose(ring, t(q + 1)).and_then(|t2| t2.compose(ring, s(q, q)));
                if !eq(s(q, 0).compose(ring, t(q)), t2) {
                    report.push("degeneracy-cyclic", format!("level {q}: s_0 t != t^2 s_{q}"));
                }
            }
        }
        report
    }
}

pub(crate) fn sign<R: Ring>(ring: &R, k: usize) -> R::Elem {
    if k % 2 == 0 {
        ring.one()
    } else {
        ring.neg(&ring.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::ring::{Integers, ModRing, Rationals};

    #[test]
    fn group_algebra_faces() {
        let a = Algebra::group_algebra(&FiniteGroup::cyclic(2), Integers);
        let c = CyclicModule::new(&a, 2).unwrap();
        assert_eq!(c.level_rank(1), 4);
        // x ⊗ x has index 3; both faces give x^2 = 1, index 0
        assert_eq!(c.face(1, 0).column(3), &vec![(0, 1.into())]);
        assert_eq!(c.face(1, 1).column(3), &vec![(0, 1.into())]);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn base_ring_levels_are_rank_one() {
        let c = CyclicModule::new(&Algebra::base(Rationals), 3).unwrap();
        for q in 0..=3 {
            assert_eq!(c.level_rank(q), 1);
        }
        for q in 1..=3 {
            for i in 0..=q {
                assert!(c.face(q, i).is_identity(&Rationals));
            }
            let b = c.boundary(q).unwrap();
            assert_eq!(b.is_zero(), q % 2 == 1);
        }
    }

    #[test]
    fn dual_numbers_satisfy_all_identities() {
        let a = Algebra::truncated_polynomial(ModRing::prime_field(2).unwrap(), 2).unwrap();
        let c = CyclicModule::new(&a, 3).unwrap();
        assert_eq!(c.level_rank(2), 8);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn b1_is_the_commutator() {
        let f2 = ModRing::prime_field(2).unwrap();
        let m = Algebra::base(f2.clone()).matrix_algebra(2).unwrap();
        let c = CyclicModule::new(&m, 1).unwrap();
        let b = c.boundary(1).unwrap();
        // E12 ⊗ E21 has index 1*4 + 2; image E12 E21 - E21 E12 = E11 - E22
        assert_eq!(b.column(6), &vec![(0, 1), (3, 1)]);
    }

    #[test]
    fn level_cap_is_enforced() {
        let a = Algebra::truncated_polynomial(Integers, 3).unwrap();
        assert!(matches!(CyclicModule::with_cap(&a, 4, 100), Err(Error::CapExceeded(_))));
    }
}
