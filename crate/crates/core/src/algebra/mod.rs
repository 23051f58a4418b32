//! Finite-rank unital associative algebras given by structure constants.

mod group;
mod hom;
mod linear_group;

pub use group::FiniteGroup;
pub use hom::AlgebraHom;
pub use linear_group::{general_linear_group, GeneralLinearGroup, DEFAULT_ENUMERATION_CAP};

use crate::error::{Error, Result};
use crate::linalg::sparse::{normalize, SparseVec};
use crate::linalg::{solve_membership, Matrix, Membership};
use crate::report::ValidationReport;
use crate::ring::Ring;

/// Algebra free of finite rank over its base ring.
///
/// Elements are dense coefficient vectors in the basis `e_0, ..., e_{rank-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<R: Ring> {
    ring: R,
    basis_names: Vec<String>,
    unit: Vec<R::Elem>,
    /// `table[i * rank + j] = e_i e_j`.
    table: Vec<SparseVec<R::Elem>>,
}

impl<R: Ring> Algebra<R> {
    /// Assembles an algebra without checking the axioms; see [`Algebra::validate`].
    pub fn from_parts(
        ring: R,
        basis_names: Vec<String>,
        unit: Vec<R::Elem>,
        products: Vec<SparseVec<R::Elem>>,
    ) -> Result<Self> {
        let n = basis_names.len();
        if n == 0 {
            return Err(Error::InvalidInput("algebra of rank 0".into()));
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch(format!("unit has {} coefficients, rank is {n}", unit.len())));
        }
        if products.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} products given, need {}", products.len(), n * n)));
        }
        let table = products
            .into_iter()
            .map(|p| {
                if p.iter().any(|(k, _)| *k >= n) {
                    return Err(Error::InvalidInput("product refers to a basis index out of range".into()));
                }
                Ok(normalize(&ring, p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Algebra { ring, basis_names, unit, table })
    }

    /// Like [`Algebra::from_parts`] but rejects structure constants failing validation.
    pub fn new(
        ring: R,
        basis_names: Vec<String>,
        unit: Vec<R::Elem>,
        products: Vec<SparseVec<R::Elem>>,
    ) -> Result<Self> {
        let a = Self::from_parts(ring, basis_names, unit, products)?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report.to_string()));
        }
        Ok(a)
    }

    /// The base ring as a rank-one algebra.
    pub fn base(ring: R) -> Self {
        let one = ring.one();
        Algebra { basis_names: vec!["1".into()], unit: vec![one.clone()], table: vec![vec![(0, one)]], ring }
    }

    /// `R[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomial(ring: R, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("truncated polynomial ring needs n >= 2, got {n}")));
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(if i + j < n { vec![(i + j, ring.one())] } else { Vec::new() });
            }
        }
        let mut unit = vec![ring.zero(); n];
        unit[0] = ring.one();
        Ok(Algebra { ring, basis_names: names, unit, table })
    }

    /// Group algebra `R[G]`: `e_g e_h = e_{gh}`.
    pub fn group_algebra(group: &FiniteGroup, ring: R) -> Self {
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                table.push(vec![(group.mul(g, h), ring.one())]);
            }
        }
        let mut unit = vec![ring.zero(); n];
        unit[group.identity()] = ring.one();
        Algebra { basis_names: group.names().to_vec(), unit, table, ring }
    }

    /// `M_n(A)` with basis `E_ij a`, indexed `(i * n + j) * rank(A) + a`.
    pub fn matrix_algebra(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix size must be positive".into()));
        }
        let r = self.rank();
        let ring = &self.ring;
        let big = n * n * r;
        let idx = |i: usize, j: usize, a: usize| (i * n + j) * r + a;
        let mut names = Vec::with_capacity(big);
        for i in 0..n {
            for j in 0..n {
                for a in 0..r {
                    names.push(if n == 1 {
                        self.basis_names[a].clone()
                    } else {
                        format!("E{}{}*{}", i + 1, j + 1, self.basis_names[a])
                    });
                }
            }
        }
        let mut table = vec![Vec::new(); big * big];
        for i in 0..n {
            for j in 0..n {
                for a in 0..r {
                    for l in 0..n {
                        for b in 0..r {
                            let prod = self.mul_basis(a, b);
                            table[idx(i, j, a) * big + idx(j, l, b)] =
                                prod.iter().map(|(c, x)| (idx(i, l, *c), x.clone())).collect();
                        }
                    }
                }
            }
        }
        let mut unit = vec![ring.zero(); big];
        for i in 0..n {
            for a in 0..r {
                unit[idx(i, i, a)] = self.unit[a].clone();
            }
        }
        Ok(Algebra { ring: ring.clone(), basis_names: names, unit, table })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[R::Elem] {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<R::Elem> {
        &self.table[i * self.rank() + j]
    }

    pub fn basis_element(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.rank()];
        v[i] = self.ring.one();
        v
    }

    pub fn zero_element(&self) -> Vec<R::Elem> {
        vec![self.ring.zero(); self.rank()]
    }

    pub fn add(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.ring.sub(x, y)).collect()
    }

    pub fn mul(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let ring = &self.ring;
        let mut out = self.zero_element();
        for (i, x) in a.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if ring.is_zero(y) {
                    continue;
                }
                let xy = ring.mul(x, y);
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = ring.add(&out[*k], &ring.mul(&xy, c));
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x` in the basis.
    pub fn left_multiplication(&self, a: &[R::Elem]) -> Matrix<R::Elem> {
        let cols: Vec<Vec<R::Elem>> = (0..self.rank()).map(|j| self.mul(a, &self.basis_element(j))).collect();
        Matrix::from_columns(&self.ring, self.rank(), &cols)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Exhaustive check of associativity on basis triples and of the two-sided unit.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis_element(i);
                let ej = self.basis_element(j);
                let eij = self.mul(&ei, &ej);
                for k in 0..n {
                    let ek = self.basis_element(k);
                    let left = self.mul(&eij, &ek);
                    let right = self.mul(&ei, &self.mul(&ej, &ek));
                    if left != right {
                        report.push(
                            "associativity",
                            format!(
                                "({}*{})*{} != {}*({}*{})",
                                self.basis_names[i],
                                self.basis_names[j],
                                self.basis_names[k],
                                self.basis_names[i],
                                self.basis_names[j],
                                self.basis_names[k]
                            ),
                        );
                    }
                }
            }
        }
        for i in 0..n {
            let ei = self.basis_element(i);
            if self.mul(&self.unit, &ei) != ei {
                report.push("unit", format!("1*{} != {}", self.basis_names[i], self.basis_names[i]));
            }
            if self.mul(&ei, &self.unit) != ei {
                report.push("unit", format!("{}*1 != {}", self.basis_names[i], self.basis_names[i]));
            }
        }
        report
    }

    /// Two-sided inverse of `u`, found from the linear system `u v = 1`.
    /// `None` certifies that `u` is not a unit.
    pub fn unit_inverse(&self, u: &[R::Elem]) -> Result<Option<Vec<R::Elem>>> {
        if u.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!("element of length {} in rank {}", u.len(), self.rank())));
        }
        let lu = self.left_multiplication(u);
        match solve_membership(&self.ring, &lu, &self.unit)? {
            Membership::Witness(v) => {
                let one = self.unit.to_vec();
                Ok((self.mul(&v, u) == one && self.mul(u, &v) == one).then_some(v))
            }
            Membership::NotInImage { .. } => Ok(None),
        }
    }

    /// Formats an element as a sum of named basis vectors.
    pub fn format_element(&self, a: &[R::Elem]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| {
                if self.ring.is_one(c) {
                    self.basis_names[i].clone()
                } else {
                    format!("{}*{}", self.ring.format(c), self.basis_names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Number of elements, for algebras over a finite base.
    pub fn cardinality(&self) -> Option<u128> {
        let q = self.ring.base().cardinality()? as u128;
        q.checked_pow(self.rank() as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing, Rationals};

    fn gf2() -> ModRing {
        ModRing::prime_field(2).unwrap()
    }

    #[test]
    fn c2_group_algebra_is_valid() {
        let a = Algebra::group_algebra(&FiniteGroup::cyclic(2), Integers);
        assert!(a.validate().is_valid());
        assert_eq!(a.rank(), 2);
        // x * x = 1
        assert_eq!(a.mul_basis(1, 1), &vec![(0, 1.into())]);
    }

    #[test]
    fn bad_unit_is_reported() {
        let r = gf2();
        // e1*e1 = e2, e2*anything = 0, unit = e1
        let table = vec![vec![(1, 1)], vec![], vec![], vec![]];
        let a = Algebra::from_parts(r, vec!["e1".into(), "e2".into()], vec![1, 0], table).unwrap();
        let report = a.validate();
        assert!(report.mentions("unit"));
    }

    #[test]
    fn matrix_units_multiply() {
        let f = Algebra::base(gf2());
        let m = f.matrix_algebra(2).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(m.unit(), &[1, 0, 0, 1]);
        // E12 * E21 = E11, E21 * E12 = E22
        assert_eq!(m.mul_basis(1, 2), &vec![(0, 1)]);
        assert_eq!(m.mul_basis(2, 1), &vec![(3, 1)]);
        assert!(m.validate().is_valid());
        assert_eq!(f.matrix_algebra(1).unwrap(), f);
    }

    #[test]
    fn truncated_polynomials() {
        let d = Algebra::truncated_polynomial(gf2(), 2).unwrap();
        assert!(d.mul_basis(1, 1).is_empty());
        assert!(Algebra::truncated_polynomial(Rationals, 2).unwrap().validate().is_valid());
        let t = Algebra::truncated_polynomial(Integers, 3).unwrap();
        assert!(t.mul_basis(1, 2).is_empty());
        assert!(Algebra::truncated_polynomial(Integers, 1).is_err());
    }

    #[test]
    fn unit_inverses_in_dual_numbers() {
        let d = Algebra::truncated_polynomial(gf2(), 2).unwrap();
        assert_eq!(d.unit_inverse(&[1, 0]).unwrap(), Some(vec![1, 0]));
        assert_eq!(d.unit_inverse(&[1, 1]).unwrap(), Some(vec![1, 1]));
        assert_eq!(d.unit_inverse(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn integer_units_need_unit_determinant() {
        let a = Algebra::group_algebra(&FiniteGroup::cyclic(2), Integers);
        // 1 + x is a zero divisor, 2 is not invertible over Z
        assert_eq!(a.unit_inverse(&[1.into(), 1.into()]).unwrap(), None);
        assert_eq!(a.unit_inverse(&[2.into(), 0.into()]).unwrap(), None);
        assert_eq!(a.unit_inverse(&[0.into(), (-1).into()]).unwrap(), Some(vec![0.into(), (-1).into()]));
    }
}
