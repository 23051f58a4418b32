use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::hochschild::tensor::{decode, encode};
use crate::hochschild::{HochschildHomology, NormalizedComplex};
use crate::linalg::sparse::{Accumulator, SparseMatrix, SparseVec};
use crate::linalg::{smith_normal_form_with, Matrix, Tracking};
use crate::ring::Ring;

/// Image of the basis tensor `(E_{i_0 j_0} a_0) ⊗ ... ⊗ (E_{i_q j_q} a_q)` of `M_n(A)`:
/// `a_0 ⊗ ... ⊗ a_q` when `j_k = i_{k+1}` cyclically, otherwise nothing.
fn multitrace_target(n: usize, r: usize, digits: &[usize]) -> Option<usize> {
    let q = digits.len();
    let mut out = Vec::with_capacity(q);
    for k in 0..q {
        let (ij, a) = (digits[k] / r, digits[k] % r);
        let j = ij % n;
        let next_i = (digits[(k + 1) % q] / r) / n;
        if j != next_i {
            return None;
        }
        out.push(a);
    }
    Some(encode(&out, r))
}

/// Matrix of the multitrace from level `q` of the cyclic bar construction of
/// `M_n(A)` to level `q` of that of `A`.
pub fn multitrace<R: Ring>(a: &Algebra<R>, n: usize, q: usize) -> SparseMatrix<R::Elem> {
    let r = a.rank();
    let big = n * n * r;
    let ring = a.ring();
    let cols = (0..big.pow(q as u32 + 1))
        .map(|idx| {
            multitrace_target(n, r, &decode(idx, big, q + 1))
                .map(|t| vec![(t, ring.one())])
                .unwrap_or_default()
        })
        .collect();
    SparseMatrix::from_columns(r.pow(q as u32 + 1), cols)
}

/// Applies the multitrace to a chain without building the matrix.
pub fn multitrace_apply<R: Ring>(a: &Algebra<R>, n: usize, q: usize, z: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
    let r = a.rank();
    let ring = a.ring();
    let mut acc = Accumulator::new(ring, r.pow(q as u32 + 1));
    for (idx, c) in z {
        if let Some(t) = multitrace_target(n, r, &decode(*idx, n * n * r, q + 1)) {
            acc.add(ring, t, c);
        }
    }
    acc.take(ring)
}

/// The map `HH_d(M_n(A)) -> HH_d(A)` induced by the multitrace.
#[derive(Clone, Debug)]
pub struct MoritaMap<R: Ring> {
    pub degree: usize,
    pub source: HochschildHomology<R>,
    pub target: HochschildHomology<R>,
    /// Column `k` holds the target coordinates of the image of source generator `k`.
    pub matrix: Vec<Vec<R::Elem>>,
    pub is_isomorphism: bool,
}

/// Evaluates the multitrace on the canonical generators of `HH_d(M_n(A))` and
/// decides whether the induced map is an isomorphism.
pub fn morita_map<R: Ring>(a: &Algebra<R>, n: usize, d: usize) -> Result<MoritaMap<R>> {
    let m = a.matrix_algebra(n)?;
    let source = NormalizedComplex::new(&m, d + 1)?.homology(d)?;
    let target = NormalizedComplex::new(a, d + 1)?.homology(d)?;
    let matrix = source
        .representatives()
        .iter()
        .map(|z| target.coordinates(&multitrace_apply(a, n, d, z)))
        .collect::<Result<Vec<_>>>()?;
    let is_isomorphism = source.structure() == target.structure() && is_surjective(a.ring(), &target, &matrix)?;
    Ok(MoritaMap { degree: d, source, target, matrix, is_isomorphism })
}

/// True when the given images together with the order relations span the
/// target. A surjection between isomorphic finitely generated modules is an
/// isomorphism, so together with equal structures this certifies one.
pub(crate) fn is_surjective<R: Ring>(ring: &R, target: &HochschildHomology<R>, images: &[Vec<R::Elem>]) -> Result<bool> {
    let g = target.num_generators();
    if g == 0 {
        return Ok(true);
    }
    let mut cols: Vec<Vec<R::Elem>> = images.to_vec();
    for (j, d) in target.orders().iter().enumerate() {
        if !ring.is_zero(d) {
            let mut col = vec![ring.zero(); g];
            col[j] = d.clone();
            cols.push(col);
        }
    }
    if cols.iter().any(|c| c.len() != g) {
        return Err(Error::Internal("coordinate vector of the wrong length".into()));
    }
    let snf = smith_normal_form_with(ring, &Matrix::from_columns(ring, g, &cols), Tracking::NONE)?;
    Ok(snf.rank == g && snf.invariant_factors().iter().all(|x| ring.is_unit(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::CyclicModule;
    use crate::ring::ModRing;

    #[test]
    fn multitrace_in_degree_zero_is_the_trace() {
        let f2 = ModRing::prime_field(2).unwrap();
        let a = Algebra::base(f2);
        let t = multitrace(&a, 2, 0);
        assert_eq!(t.column(0), &vec![(0, 1)]);
        assert!(t.column(1).is_empty());
        assert_eq!(t.column(3), &vec![(0, 1)]);
        assert!(multitrace(&a, 1, 2).is_identity(a.ring()));
    }

    #[test]
    fn multitrace_commutes_with_b_and_t() {
        let f2 = ModRing::prime_field(2).unwrap();
        let a = Algebra::base(f2.clone());
        let m = a.matrix_algebra(2).unwrap();
        let ca = CyclicModule::new(&a, 2).unwrap();
        let cm = CyclicModule::new(&m, 2).unwrap();
        for q in 1..=2 {
            let lhs = ca.boundary(q).unwrap().compose(&f2, &multitrace(&a, 2, q)).unwrap();
            let rhs = multitrace(&a, 2, q - 1).compose(&f2, &cm.boundary(q).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        for q in 0..=2 {
            let lhs = ca.cyclic_operator(q).compose(&f2, &multitrace(&a, 2, q)).unwrap();
            let rhs = multitrace(&a, 2, q).compose(&f2, cm.cyclic_operator(q)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn morita_in_low_degree() {
        let f2 = Algebra::base(ModRing::prime_field(2).unwrap());
        let m0 = morita_map(&f2, 2, 0).unwrap();
        assert!(m0.is_isomorphism);
        assert_eq!(m0.matrix, vec![vec![1]]);
        assert!(morita_map(&f2, 1, 1).unwrap().is_isomorphism);
    }
}
