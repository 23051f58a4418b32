use std::collections::HashMap;

use crate::algebra::{Algebra, AlgebraHom, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::sparse::dense_to_sparse;
use crate::linalg::{smith_normal_form_with, Matrix, SparseMatrix, Tracking};
use crate::ring::Ring;

/// Default bound on `|A|^{n^2}`, the number of matrices enumerated.
pub const DEFAULT_ENUMERATION_CAP: u128 = 65536;

/// `GL_n(A)` for a finite algebra `A`, together with the ring map
/// `R[GL_n(A)] -> M_n(A)`.
#[derive(Clone, Debug)]
pub struct GeneralLinearGroup<R: Ring> {
    pub n: usize,
    pub group: FiniteGroup,
    /// Coordinates of each group element in the basis of `M_n(A)`.
    pub elements: Vec<Vec<R::Elem>>,
    pub matrix_algebra: Algebra<R>,
    pub embedding: AlgebraHom<R>,
}

impl<R: Ring> GeneralLinearGroup<R> {
    /// Index of a matrix in the group, if it is invertible.
    pub fn index_of(&self, g: &[R::Elem]) -> Option<usize> {
        self.elements.iter().position(|x| x.as_slice() == g)
    }
}

/// Matrix of left multiplication by `g` on the column module `A^n`,
/// with basis `(row i, basis element a)` indexed `i * rank(A) + a`.
pub fn action_on_columns<R: Ring>(a: &Algebra<R>, n: usize, g: &[R::Elem]) -> Matrix<R::Elem> {
    let r = a.rank();
    let ring = a.ring();
    let mut m = Matrix::zeros(ring, n * r, n * r);
    for i in 0..n {
        for j in 0..n {
            for c in 0..r {
                let coeff = &g[(i * n + j) * r + c];
                if ring.is_zero(coeff) {
                    continue;
                }
                // g_ij = sum_c coeff e_c acts on e_b in slot j, landing in slot i
                for b in 0..r {
                    for (k, x) in a.mul_basis(c, b) {
                        let row = i * r + k;
                        let col = j * r + b;
                        let v = ring.add(m.get(row, col), &ring.mul(coeff, x));
                        m.set(row, col, v);
                    }
                }
            }
        }
    }
    m
}

/// True when a square matrix over the base is invertible, read off its Smith form.
fn is_bijective<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<bool> {
    let snf = smith_normal_form_with(ring, m, Tracking::NONE)?;
    Ok(snf.rank == m.rows() && snf.invariant_factors().iter().all(|d| ring.is_unit(d)))
}

/// Enumerates `GL_n(A)` by testing every `n x n` matrix over `A` for
/// bijectivity of its action on `A^n`.
pub fn general_linear_group<R: Ring>(a: &Algebra<R>, n: usize, cap: u128) -> Result<GeneralLinearGroup<R>> {
    let ring = a.ring();
    let base = ring
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("GL_n needs a finite base ring, got {}", ring.base())))?;
    let mat = a.matrix_algebra(n)?;
    let dim = mat.rank();
    let total = (base.len() as u128)
        .checked_pow(dim as u32)
        .filter(|t| *t <= cap)
        .ok_or_else(|| {
            Error::CapExceeded(format!("{}^{} matrices exceeds enumeration cap {cap}", base.len(), dim))
        })?;

    let mut elements = Vec::new();
    let mut digits = vec![0usize; dim];
    for _ in 0..total {
        let g: Vec<R::Elem> = digits.iter().map(|&d| base[d].clone()).collect();
        if is_bijective(ring, &action_on_columns(a, n, &g))? {
            elements.push(g);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < base.len() {
                break;
            }
            *d = 0;
        }
    }

    let index: HashMap<&[R::Elem], usize> = elements.iter().enumerate().map(|(i, g)| (g.as_slice(), i)).collect();
    let order = elements.len();
    let mut table = Vec::with_capacity(order * order);
    for g in &elements {
        for h in &elements {
            let gh = mat.mul(g, h);
            let k = index
                .get(gh.as_slice())
                .ok_or_else(|| Error::Internal("product of invertible matrices not invertible".into()))?;
            table.push(*k);
        }
    }
    let identity = index
        .get(mat.unit())
        .copied()
        .ok_or_else(|| Error::Internal("identity matrix not found among units".into()))?;
    let names = elements.iter().map(|g| mat.format_element(g)).collect();
    let group = FiniteGroup::new(names, table, identity)?;

    let cols = elements.iter().map(|g| dense_to_sparse(ring, g)).collect();
    let embedding = AlgebraHom::from_parts(
        Algebra::group_algebra(&group, ring.clone()),
        mat.clone(),
        SparseMatrix::from_columns(dim, cols),
    )?;
    Ok(GeneralLinearGroup { n, group, elements, matrix_algebra: mat, embedding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing};

    #[test]
    fn small_general_linear_groups() {
        let f2 = ModRing::prime_field(2).unwrap();
        let base = Algebra::base(f2.clone());
        assert_eq!(general_linear_group(&base, 1, DEFAULT_ENUMERATION_CAP).unwrap().group.order(), 1);
        let gl2 = general_linear_group(&base, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(gl2.group.order(), 6);
        assert!(gl2.embedding.validate().is_valid());

        let dual = Algebra::truncated_polynomial(f2, 2).unwrap();
        let units = general_linear_group(&dual, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(units.elements, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(units.group.names()[1], "1 + x");
    }

    #[test]
    fn caps_and_infinite_bases() {
        let f2 = Algebra::base(ModRing::prime_field(2).unwrap());
        assert!(matches!(general_linear_group(&f2, 2, 15), Err(Error::CapExceeded(_))));
        assert!(matches!(
            general_linear_group(&Algebra::base(Integers), 1, DEFAULT_ENUMERATION_CAP),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn units_of_z_mod_4() {
        let z4 = Algebra::base(ModRing::new(4).unwrap());
        let g = general_linear_group(&z4, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(g.elements, vec![vec![1], vec![3]]);
    }
}
