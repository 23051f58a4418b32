use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::hochschild::cyclic::{face_terms, sign, DEFAULT_LEVEL_CAP};
use crate::hochschild::tensor::{decode, power, tensor_apply, NormalizedBasis};
use crate::linalg::sparse::{dense_to_sparse, normalize, Accumulator, SparseMatrix, SparseVec};
use crate::linalg::{ChainComplex, Homology, HomologyStructure};
use crate::ring::Ring;

/// A basis of `A` in which the unit is a basis element.
///
/// If the unit of `A` has a unit coefficient at some index `i0`, replacing
/// `e_{i0}` by the unit gives such a basis. The normalized complex is then
/// spanned by tensors with no unit factor after position 0.
#[derive(Clone, Debug)]
pub struct UnitFirstFrame<R: Ring> {
    source: Algebra<R>,
    algebra: Algebra<R>,
    /// New coordinates to old (`rank x rank`).
    to_source: SparseMatrix<R::Elem>,
    /// Old coordinates to new.
    from_source: SparseMatrix<R::Elem>,
    basis: NormalizedBasis,
}

impl<R: Ring> UnitFirstFrame<R> {
    pub fn new(a: &Algebra<R>) -> Result<Self> {
        let ring = a.ring();
        let r = a.rank();
        let u = a.unit();
        let support: Vec<usize> = (0..r).filter(|&i| !ring.is_zero(&u[i])).collect();
        if support.len() == 1 && ring.is_one(&u[support[0]]) {
            let id = SparseMatrix::identity(ring, r);
            return Ok(UnitFirstFrame {
                source: a.clone(),
                algebra: a.clone(),
                to_source: id.clone(),
                from_source: id,
                basis: NormalizedBasis { r, unit: support[0] },
            });
        }
        let i0 = support
            .iter()
            .copied()
            .find(|&i| ring.is_unit(&u[i]))
            .ok_or_else(|| Error::Unsupported("the unit has no invertible coordinate, so no basis contains it".into()))?;
        let c_inv = ring.unit_inverse(&u[i0]).expect("unit");
        let mut to_cols: Vec<SparseVec<R::Elem>> = (0..r).map(|i| vec![(i, ring.one())]).collect();
        to_cols[i0] = dense_to_sparse(ring, u);
        let mut from_cols: Vec<SparseVec<R::Elem>> = (0..r).map(|i| vec![(i, ring.one())]).collect();
        // e_{i0} = c^{-1} (1 - Σ_{i != i0} u_i e_i)
        from_cols[i0] = normalize(
            ring,
            (0..r)
                .map(|i| if i == i0 { (i, c_inv.clone()) } else { (i, ring.neg(&ring.mul(&c_inv, &u[i]))) })
                .collect(),
        );
        let to_source = SparseMatrix::from_columns(r, to_cols);
        let from_source = SparseMatrix::from_columns(r, from_cols);
        let mut products = Vec::with_capacity(r * r);
        for i in 0..r {
            let fi = to_source.apply_dense(ring, &a.basis_element(i))?;
            for j in 0..r {
                let fj = to_source.apply_dense(ring, &a.basis_element(j))?;
                products.push(dense_to_sparse(ring, &from_source.apply_dense(ring, &a.mul(&fi, &fj))?));
            }
        }
        let mut names = a.basis_names().to_vec();
        names[i0] = "1".into();
        let mut unit = vec![ring.zero(); r];
        unit[i0] = ring.one();
        let algebra = Algebra::from_parts(ring.clone(), names, unit, products)?;
        Ok(UnitFirstFrame { source: a.clone(), algebra, to_source, from_source, basis: NormalizedBasis { r, unit: i0 } })
    }

    /// The algebra rewritten in the unit-first basis.
    pub fn algebra(&self) -> &Algebra<R> {
        &self.algebra
    }

    pub fn source(&self) -> &Algebra<R> {
        &self.source
    }

    pub fn basis(&self) -> NormalizedBasis {
        self.basis
    }

    /// Image in the normalized level `q` of a chain given in the source tensor basis.
    pub fn project(&self, q: usize, z: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
        let ring = self.algebra.ring();
        let r = self.basis.r;
        let new = tensor_apply(ring, &self.from_source, q + 1, z);
        let terms = new
            .into_iter()
            .filter_map(|(idx, c)| self.basis.index(&decode(idx, r, q + 1)).map(|k| (k, c)))
            .collect();
        normalize(ring, terms)
    }

    /// The chain in the source tensor basis made of the same non-degenerate tensors.
    pub fn lift(&self, q: usize, z: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
        let ring = self.algebra.ring();
        let r = self.basis.r;
        let full: SparseVec<R::Elem> = normalize(
            ring,
            z.iter()
                .map(|(k, c)| (crate::hochschild::tensor::encode(&self.basis.digits(*k, q), r), c.clone()))
                .collect(),
        );
        tensor_apply(ring, &self.to_source, q + 1, &full)
    }
}

/// The normalized Hochschild complex `A ⊗ Ā^{⊗q}` on degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct NormalizedComplex<R: Ring> {
    frame: UnitFirstFrame<R>,
    complex: ChainComplex<R>,
}

impl<R: Ring> NormalizedComplex<R> {
    pub fn new(a: &Algebra<R>, top: usize) -> Result<Self> {
        Self::with_cap(a, top, DEFAULT_LEVEL_CAP)
    }

    pub fn with_cap(a: &Algebra<R>, top: usize, cap: usize) -> Result<Self> {
        let frame = UnitFirstFrame::new(a)?;
        let basis = frame.basis;
        match power(basis.r, top + 1) {
            Some(n) if n <= cap => {}
            _ => return Err(Error::CapExceeded(format!("level {top} of the bar construction exceeds the cap {cap}"))),
        }
        let ring = a.ring();
        let alg = &frame.algebra;
        let ranks: Vec<usize> = (0..=top).map(|q| basis.rank(q)).collect();
        let mut diffs = Vec::with_capacity(top);
        for q in 1..=top {
            let mut acc = Accumulator::new(ring, ranks[q - 1]);
            let cols = (0..ranks[q])
                .map(|k| {
                    let digits = basis.digits(k, q);
                    for i in 0..=q {
                        let s = sign(ring, i);
                        for (t, c) in face_terms(alg, &digits, i) {
                            if let Some(idx) = basis.index(&t) {
                                acc.add(ring, idx, &ring.mul(&s, &c));
                            }
                        }
                    }
                    acc.take(ring)
                })
                .collect();
            diffs.push(SparseMatrix::from_columns(ranks[q - 1], cols));
        }
        let complex = ChainComplex::new(ring.clone(), ranks, diffs)?;
        Ok(NormalizedComplex { frame, complex })
    }

    pub fn frame(&self) -> &UnitFirstFrame<R> {
        &self.frame
    }

    pub fn chain_complex(&self) -> &ChainComplex<R> {
        &self.complex
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    /// Connes' `B = (1 - t_s) s_{-1} N` from degree `q` to `q + 1`, evaluated on
    /// non-degenerate tensors and projected back to the normalized complex.
    pub fn connes_b(&self, q: usize) -> Result<SparseMatrix<R::Elem>> {
        if q + 1 > self.top_degree() {
            return Err(Error::DegreeOutOfRange { degree: q, max: self.top_degree().saturating_sub(1) });
        }
        let ring = self.frame.algebra.ring();
        let basis = self.frame.basis;
        let mut acc = Accumulator::new(ring, basis.rank(q + 1));
        let cols = (0..basis.rank(q))
            .map(|k| {
                let digits = basis.digits(k, q);
                for m in 0..=q {
                    // t_s^m (a) with t_s = (-1)^q t
                    let mut rot = digits.clone();
                    rot.rotate_right(m);
                    let s_norm = sign(ring, q * m);
                    let mut extra = Vec::with_capacity(q + 2);
                    extra.push(basis.unit);
                    extra.extend_from_slice(&rot);
                    if let Some(idx) = basis.index(&extra) {
                        acc.add(ring, idx, &s_norm);
                    }
                    // minus t_s on level q + 1
                    extra.rotate_right(1);
                    if let Some(idx) = basis.index(&extra) {
                        let c = ring.neg(&ring.mul(&s_norm, &sign(ring, q + 1)));
                        acc.add(ring, idx, &c);
                    }
                }
                acc.take(ring)
            })
            .collect();
        Ok(SparseMatrix::from_columns(basis.rank(q + 1), cols))
    }

    pub fn homology(&self, n: usize) -> Result<HochschildHomology<R>> {
        Ok(HochschildHomology { frame: self.frame.clone(), homology: self.complex.homology(n)? })
    }
}

/// A homology class with its canonical coordinates and a representing chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClass<E> {
    pub degree: usize,
    pub coordinates: Vec<E>,
    pub representative: SparseVec<E>,
}

/// `HH_n(A)`, computed on the normalized complex.
#[derive(Clone, Debug)]
pub struct HochschildHomology<R: Ring> {
    frame: UnitFirstFrame<R>,
    homology: Homology<R>,
}

impl<R: Ring> HochschildHomology<R> {
    pub fn degree(&self) -> usize {
        self.homology.degree()
    }

    pub fn structure(&self) -> HomologyStructure {
        self.homology.structure()
    }

    pub fn is_zero(&self) -> bool {
        self.homology.is_zero()
    }

    pub fn num_generators(&self) -> usize {
        self.homology.num_generators()
    }

    pub fn orders(&self) -> &[R::Elem] {
        self.homology.orders()
    }

    /// Homology of the normalized complex itself.
    pub fn normalized(&self) -> &Homology<R> {
        &self.homology
    }

    /// Canonical generators, as chains in the tensor basis of `A` whose images
    /// in the normalized complex are cycles.
    pub fn representatives(&self) -> Vec<SparseVec<R::Elem>> {
        let q = self.degree();
        self.homology.representatives().iter().map(|z| self.frame.lift(q, z)).collect()
    }

    /// Canonical coordinates of the class of a Hochschild cycle given in the tensor basis of `A`.
    pub fn coordinates(&self, z: &SparseVec<R::Elem>) -> Result<Vec<R::Elem>> {
        self.homology.coordinates(&self.frame.project(self.degree(), z))
    }

    pub fn class(&self, z: &SparseVec<R::Elem>) -> Result<HomologyClass<R::Elem>> {
        Ok(HomologyClass { degree: self.degree(), coordinates: self.coordinates(z)?, representative: z.clone() })
    }

    pub fn is_boundary(&self, z: &SparseVec<R::Elem>) -> Result<bool> {
        let ring = self.homology.ring();
        Ok(self.coordinates(z)?.iter().all(|x| ring.is_zero(x)))
    }
}

/// `HH_n(A)` via the normalized complex built through degree `n + 1`.
pub fn hochschild_homology<R: Ring>(a: &Algebra<R>, n: usize) -> Result<HochschildHomology<R>> {
    NormalizedComplex::new(a, n + 1)?.homology(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::CyclicModule;
    use crate::ring::{Integers, ModRing, Rationals};

    #[test]
    fn integers_are_concentrated_in_degree_zero() {
        let c = NormalizedComplex::new(&Algebra::base(Integers), 5).unwrap();
        assert_eq!(c.homology(0).unwrap().structure().to_string(), "Z");
        for n in 1..=4 {
            assert!(c.homology(n).unwrap().is_zero());
        }
    }

    #[test]
    fn dual_numbers_over_q() {
        let a = Algebra::truncated_polynomial(Rationals, 2).unwrap();
        assert_eq!(hochschild_homology(&a, 1).unwrap().num_generators(), 1);
        assert_eq!(hochschild_homology(&a, 0).unwrap().num_generators(), 2);
    }

    #[test]
    fn matrix_algebra_needs_a_basis_change() {
        let f2 = ModRing::prime_field(2).unwrap();
        let m = Algebra::base(f2).matrix_algebra(2).unwrap();
        let frame = UnitFirstFrame::new(&m).unwrap();
        assert_eq!(frame.basis().unit, 0);
        assert!(frame.algebra().validate().is_valid());
        let h = hochschild_homology(&m, 0).unwrap();
        assert_eq!(h.num_generators(), 1);
        // E11 and E22 are homologous, E12 is a commutator
        let c11 = h.coordinates(&vec![(0, 1)]).unwrap();
        assert_eq!(c11, vec![1]);
        assert_eq!(h.coordinates(&vec![(3, 1)]).unwrap(), c11);
        assert_eq!(h.coordinates(&vec![(1, 1)]).unwrap(), vec![0]);
    }

    #[test]
    fn connes_operator_identities() {
        let a = Algebra::truncated_polynomial(ModRing::prime_field(2).unwrap(), 2).unwrap();
        let c = NormalizedComplex::new(&a, 4).unwrap();
        let ring = a.ring();
        for q in 0..3 {
            let b1 = c.connes_b(q).unwrap();
            let b2 = c.connes_b(q + 1).unwrap();
            assert!(b2.compose(ring, &b1).unwrap().is_zero());
        }
        let a = Algebra::group_algebra(&crate::algebra::FiniteGroup::cyclic(2), Rationals);
        let c = NormalizedComplex::new(&a, 3).unwrap();
        let ring = a.ring();
        let d = |n: usize| c.chain_complex().differential(n).clone();
        // at q = 1: b B + B b = 0
        let bb = d(2).compose(ring, &c.connes_b(1).unwrap()).unwrap();
        let bb2 = c.connes_b(0).unwrap().compose(ring, &d(1)).unwrap();
        assert!(bb.add(ring, &bb2).unwrap().is_zero());
    }

    #[test]
    fn normalized_and_unnormalized_agree() {
        let a = Algebra::truncated_polynomial(ModRing::prime_field(2).unwrap(), 2).unwrap();
        let full = CyclicModule::new(&a, 3).unwrap().hochschild_complex().unwrap();
        let norm = NormalizedComplex::new(&a, 3).unwrap();
        for n in 0..=2 {
            assert_eq!(full.homology(n).unwrap().structure(), norm.homology(n).unwrap().structure());
        }
    }
}
