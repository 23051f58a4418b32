use crate::algebra::{Algebra, AlgebraHom};
use crate::error::{Error, Result};
use crate::hochschild::normalized::NormalizedComplex;
use crate::hochschild::tensor::tensor_power;
use crate::linalg::sparse::{Accumulator, SparseMatrix};
use crate::linalg::{ChainComplex, Homology};
use crate::ring::{BaseRing, Ring};

/// Total complex of the `(b, B)` bicomplex: `Tot_m = ⊕_{p >= 0} C̄_{m - 2p}`
/// with differential `b + B`, on degrees `0..=top` where `top` is the top
/// degree of the normalized complex.
pub fn total_complex<R: Ring>(c: &NormalizedComplex<R>) -> Result<ChainComplex<R>> {
    let ring = c.frame().algebra().ring();
    let top = c.top_degree();
    let rank = |q: usize| c.chain_complex().rank(q);
    // offsets[m][p]: position of component C̄_{m-2p} inside Tot_m
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    let mut ranks = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let mut off = Vec::new();
        let mut total = 0;
        for p in 0..=m / 2 {
            off.push(total);
            total += rank(m - 2 * p);
        }
        offsets.push(off);
        ranks.push(total);
    }
    let connes: Vec<SparseMatrix<R::Elem>> = (0..top).map(|q| c.connes_b(q)).collect::<Result<_>>()?;
    let mut diffs = Vec::with_capacity(top);
    for m in 1..=top {
        let mut acc = Accumulator::new(ring, ranks[m - 1]);
        let mut cols = Vec::with_capacity(ranks[m]);
        for p in 0..=m / 2 {
            let q = m - 2 * p;
            for k in 0..rank(q) {
                if q >= 1 {
                    for (i, x) in c.chain_complex().differential(q).column(k) {
                        acc.add(ring, offsets[m - 1][p] + i, x);
                    }
                }
                if p >= 1 {
                    for (i, x) in connes[q].column(k) {
                        acc.add(ring, offsets[m - 1][p - 1] + i, x);
                    }
                }
                cols.push(acc.take(ring));
            }
        }
        diffs.push(SparseMatrix::from_columns(ranks[m - 1], cols));
    }
    ChainComplex::new(ring.clone(), ranks, diffs)
}

/// `HC_n(A)` for an algebra over `Q`, as the homology of the total complex.
pub fn cyclic_homology<R: Ring>(a: &Algebra<R>, n: usize) -> Result<Homology<R>> {
    if a.ring().base() != BaseRing::Rationals {
        return Err(Error::Unsupported(format!("cyclic homology is only computed over Q, not {}", a.ring().base())));
    }
    let c = NormalizedComplex::new(a, n + 1)?;
    total_complex(&c)?.homology(n)
}

/// `f^{⊗(q+1)}` from level `q` of the cyclic bar construction of the source to that of the target.
pub fn induced_chain_map<R: Ring>(f: &AlgebraHom<R>, q: usize) -> Result<SparseMatrix<R::Elem>> {
    let report = f.validate();
    if !report.is_valid() {
        return Err(Error::Validation(report.to_string()));
    }
    Ok(tensor_power(f.source().ring(), f.matrix(), q + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::hochschild::CyclicModule;
    use crate::ring::{Integers, ModRing, Rationals};

    #[test]
    fn cyclic_homology_of_q_is_periodic() {
        let q = Algebra::base(Rationals);
        let c = NormalizedComplex::new(&q, 7).unwrap();
        let tot = total_complex(&c).unwrap();
        for n in 0..=6 {
            assert_eq!(tot.homology(n).unwrap().num_generators(), usize::from(n % 2 == 0), "HC_{n}");
        }
        assert!(cyclic_homology(&Algebra::base(ModRing::prime_field(2).unwrap()), 0).is_err());
    }

    #[test]
    fn augmentation_squashes_tensors() {
        let f = AlgebraHom::augmentation(&FiniteGroup::cyclic(2), Integers);
        let m = induced_chain_map(&f, 1).unwrap();
        assert_eq!(m.column(3), &vec![(0, 1.into())]);
        let a = f.source();
        let ca = CyclicModule::new(a, 2).unwrap();
        let cb = CyclicModule::new(f.target(), 2).unwrap();
        let m2 = induced_chain_map(&f, 2).unwrap();
        for i in 0..=2 {
            assert_eq!(
                cb.face(2, i).compose(&Integers, &m2).unwrap(),
                m.compose(&Integers, ca.face(2, i)).unwrap()
            );
        }
    }
}
