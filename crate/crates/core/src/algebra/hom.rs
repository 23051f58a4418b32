use crate::algebra::{Algebra, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::sparse::{dense_to_sparse, sparse_to_dense};
use crate::linalg::SparseMatrix;
use crate::report::ValidationReport;
use crate::ring::Ring;

/// Base-linear map between algebras over the same ring, stored as a
/// `rank(target) x rank(source)` matrix.
#[derive(Clone, Debug)]
pub struct AlgebraHom<R: Ring> {
    source: Algebra<R>,
    target: Algebra<R>,
    matrix: SparseMatrix<R::Elem>,
}

impl<R: Ring> AlgebraHom<R> {
    /// Wraps a matrix; call [`AlgebraHom::validate`] or use [`AlgebraHom::new`] to check it.
    pub fn from_parts(source: Algebra<R>, target: Algebra<R>, matrix: SparseMatrix<R::Elem>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::InvalidInput("algebra homomorphism between different base rings".into()));
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        Ok(AlgebraHom { source, target, matrix })
    }

    pub fn new(source: Algebra<R>, target: Algebra<R>, matrix: SparseMatrix<R::Elem>) -> Result<Self> {
        let f = Self::from_parts(source, target, matrix)?;
        let report = f.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report.to_string()));
        }
        Ok(f)
    }

    pub fn identity(a: &Algebra<R>) -> Self {
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            matrix: SparseMatrix::identity(a.ring(), a.rank()),
        }
    }

    /// Linear extension of a group homomorphism `phi: G -> H` to `R[G] -> R[H]`.
    pub fn from_group_hom(g: &FiniteGroup, h: &FiniteGroup, phi: &[usize], ring: R) -> Result<Self> {
        if !g.is_homomorphism(h, phi) {
            return Err(Error::Validation("map is not a group homomorphism".into()));
        }
        let cols = phi.iter().map(|&x| vec![(x, ring.one())]).collect();
        let source = Algebra::group_algebra(g, ring.clone());
        let target = Algebra::group_algebra(h, ring);
        Ok(AlgebraHom { matrix: SparseMatrix::from_columns(h.order(), cols), source, target })
    }

    /// Augmentation `R[G] -> R`, `g -> 1`.
    pub fn augmentation(g: &FiniteGroup, ring: R) -> Self {
        let cols = (0..g.order()).map(|_| vec![(0, ring.one())]).collect();
        AlgebraHom {
            source: Algebra::group_algebra(g, ring.clone()),
            target: Algebra::base(ring),
            matrix: SparseMatrix::from_columns(1, cols),
        }
    }

    pub fn source(&self) -> &Algebra<R> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<R> {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix<R::Elem> {
        &self.matrix
    }

    pub fn apply(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        let ring = self.source.ring();
        let v = self.matrix.apply(ring, &dense_to_sparse(ring, a));
        sparse_to_dense(ring, &v, self.target.rank())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraHom<R>) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::InvalidInput("composing homomorphisms with mismatched algebras".into()));
        }
        Ok(AlgebraHom {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.compose(self.source.ring(), &other.matrix)?,
        })
    }

    /// Checks unit preservation and multiplicativity on all basis pairs.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.apply(self.source.unit()) != self.target.unit() {
            report.push("unit", "f(1) != 1");
        }
        let n = self.source.rank();
        let images: Vec<Vec<R::Elem>> = (0..n).map(|i| self.apply(&self.source.basis_element(i))).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply(&self.source.mul(&self.source.basis_element(i), &self.source.basis_element(j)));
                let rhs = self.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    let names = self.source.basis_names();
                    report.push("multiplicativity", format!("f({}*{}) != f({})*f({})", names[i], names[j], names[i], names[j]));
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing};

    #[test]
    fn augmentation_is_a_homomorphism() {
        let f = AlgebraHom::augmentation(&FiniteGroup::cyclic(2), Integers);
        assert!(f.validate().is_valid());
    }

    #[test]
    fn group_homs_induce_algebra_homs() {
        let r = ModRing::prime_field(3).unwrap();
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let f = AlgebraHom::from_group_hom(&c4, &c2, &[0, 1, 0, 1], r.clone()).unwrap();
        assert!(f.validate().is_valid());
        assert!(AlgebraHom::from_group_hom(&c2, &c4, &[0, 2], r.clone()).unwrap().validate().is_valid());
        assert!(AlgebraHom::from_group_hom(&c2, &c4, &[0, 1], r).is_err());
    }

    #[test]
    fn non_multiplicative_map_is_reported() {
        let r = ModRing::prime_field(2).unwrap();
        let d = Algebra::truncated_polynomial(r.clone(), 2).unwrap();
        // 1 -> 1, x -> 1 fails: f(x*x) = 0 but f(x) f(x) = 1
        let m = SparseMatrix::from_columns(2, vec![vec![(0, 1)], vec![(0, 1)]]);
        let f = AlgebraHom::from_parts(d.clone(), d, m).unwrap();
        assert!(f.validate().mentions("multiplicativity"));
    }
}
