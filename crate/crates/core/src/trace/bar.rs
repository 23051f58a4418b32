use crate::algebra::FiniteGroup;
use crate::error::{Error, Result};
use crate::hochschild::tensor::{decode, encode, power};
use crate::hochschild::DEFAULT_LEVEL_CAP;
use crate::linalg::sparse::{normalize, SparseMatrix};
use crate::linalg::{ChainComplex, Homology};
use crate::ring::Ring;

/// The inhomogeneous bar complex of `G` with coefficients in `R`, degrees `0..=top`.
///
/// `∂(g_1, ..., g_d) = (g_2, ..., g_d) + Σ_{i=1}^{d-1} (-1)^i (..., g_i g_{i+1}, ...) + (-1)^d (g_1, ..., g_{d-1})`.
pub fn bar_complex<R: Ring>(group: &FiniteGroup, ring: &R, top: usize) -> Result<ChainComplex<R>> {
    let n = group.order();
    match power(n, top) {
        Some(k) if k <= DEFAULT_LEVEL_CAP => {}
        _ => return Err(Error::CapExceeded(format!("bar complex degree {top} of a group of order {n} is too large"))),
    }
    let ranks: Vec<usize> = (0..=top).map(|d| n.pow(d as u32)).collect();
    let mut diffs = Vec::with_capacity(top);
    for d in 1..=top {
        let cols = (0..ranks[d])
            .map(|idx| {
                let g = decode(idx, n, d);
                let mut terms = Vec::with_capacity(d + 1);
                terms.push((encode(&g[1..], n), ring.one()));
                for i in 0..d - 1 {
                    let mut h = Vec::with_capacity(d - 1);
                    h.extend_from_slice(&g[..i]);
                    h.push(group.mul(g[i], g[i + 1]));
                    h.extend_from_slice(&g[i + 2..]);
                    terms.push((encode(&h, n), sign(ring, i + 1)));
                }
                terms.push((encode(&g[..d - 1], n), sign(ring, d)));
                normalize(ring, terms)
            })
            .collect();
        diffs.push(SparseMatrix::from_columns(ranks[d - 1], cols));
    }
    ChainComplex::new(ring.clone(), ranks, diffs)
}

/// The normalized bar complex: the quotient by tuples containing the identity.
/// Degree `d` has basis the tuples of non-identity elements, indexed in base
/// `|G| - 1` after dropping the identity from the element order.
pub fn normalized_bar_complex<R: Ring>(group: &FiniteGroup, ring: &R, top: usize) -> Result<ChainComplex<R>> {
    let n = group.order();
    let m = n - 1;
    match power(m.max(1), top) {
        Some(k) if k <= DEFAULT_LEVEL_CAP => {}
        _ => return Err(Error::CapExceeded(format!("bar complex degree {top} of a group of order {n} is too large"))),
    }
    let e = group.identity();
    let digit = |g: usize| if g < e { g } else { g - 1 };
    let element = |x: usize| if x < e { x } else { x + 1 };
    let ranks: Vec<usize> = (0..=top).map(|d| m.pow(d as u32)).collect();
    let mut diffs = Vec::with_capacity(top);
    for d in 1..=top {
        let cols = (0..ranks[d])
            .map(|idx| {
                let g: Vec<usize> = decode(idx, m, d).into_iter().map(element).collect();
                let index = |h: &[usize]| encode(&h.iter().map(|&x| digit(x)).collect::<Vec<_>>(), m);
                let mut terms = Vec::with_capacity(d + 1);
                terms.push((index(&g[1..]), ring.one()));
                for i in 0..d - 1 {
                    let prod = group.mul(g[i], g[i + 1]);
                    if prod == e {
                        continue;
                    }
                    let mut h = Vec::with_capacity(d - 1);
                    h.extend_from_slice(&g[..i]);
                    h.push(prod);
                    h.extend_from_slice(&g[i + 2..]);
                    terms.push((index(&h), sign(ring, i + 1)));
                }
                terms.push((index(&g[..d - 1]), sign(ring, d)));
                normalize(ring, terms)
            })
            .collect();
        diffs.push(SparseMatrix::from_columns(ranks[d - 1], cols));
    }
    ChainComplex::new(ring.clone(), ranks, diffs)
}

/// `H_d(BG; R)`, computed on the normalized bar complex.
pub fn group_homology<R: Ring>(group: &FiniteGroup, ring: &R, d: usize) -> Result<Homology<R>> {
    normalized_bar_complex(group, ring, d + 1)?.homology(d)
}

/// Cyclic-bar index of `(g_q^{-1} ... g_1^{-1}) ⊗ g_1 ⊗ ... ⊗ g_q`.
pub(crate) fn group_to_hh_index(group: &FiniteGroup, tuple: &[usize]) -> usize {
    let n = group.order();
    let prod = tuple.iter().fold(group.identity(), |acc, &g| group.mul(acc, g));
    let mut digits = Vec::with_capacity(tuple.len() + 1);
    digits.push(group.inverse(prod));
    digits.extend_from_slice(tuple);
    encode(&digits, n)
}

/// Matrix of `(g_1, ..., g_q) -> (g_q^{-1} ... g_1^{-1}) ⊗ g_1 ⊗ ... ⊗ g_q` from bar
/// degree `q` to level `q` of the cyclic bar construction of `R[G]`.
pub fn group_to_hh<R: Ring>(group: &FiniteGroup, ring: &R, q: usize) -> SparseMatrix<R::Elem> {
    let n = group.order();
    let cols = (0..n.pow(q as u32))
        .map(|idx| vec![(group_to_hh_index(group, &decode(idx, n, q)), ring.one())])
        .collect();
    SparseMatrix::from_columns(n.pow(q as u32 + 1), cols)
}

fn sign<R: Ring>(ring: &R, k: usize) -> R::Elem {
    if k % 2 == 0 {
        ring.one()
    } else {
        ring.neg(&ring.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::hochschild::CyclicModule;
    use crate::ring::{Integers, ModRing};

    #[test]
    fn homology_of_small_groups() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(group_homology(&c2, &Integers, 0).unwrap().structure().to_string(), "Z");
        assert_eq!(group_homology(&c2, &Integers, 1).unwrap().structure().to_string(), "Z/2");
        assert_eq!(group_homology(&c2, &Integers, 2).unwrap().structure().to_string(), "0");
        assert_eq!(group_homology(&c2, &Integers, 3).unwrap().structure().to_string(), "Z/2");
        assert!(group_homology(&FiniteGroup::trivial(), &Integers, 1).unwrap().is_zero());
        let f3 = ModRing::prime_field(3).unwrap();
        assert!(group_homology(&c2, &f3, 1).unwrap().is_zero());
    }

    #[test]
    fn group_to_hh_is_a_chain_map() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(group_to_hh(&c2, &Integers, 0).column(0), &vec![(0, 1.into())]);
        // (x) -> x ⊗ x, index 3
        assert_eq!(group_to_hh(&c2, &Integers, 1).column(1), &vec![(3, 1.into())]);
        let bar = bar_complex(&c2, &Integers, 3).unwrap();
        let cyc = CyclicModule::new(&Algebra::group_algebra(&c2, Integers), 3).unwrap();
        for q in 1..=3 {
            let lhs = cyc.boundary(q).unwrap().compose(&Integers, &group_to_hh(&c2, &Integers, q)).unwrap();
            let rhs = group_to_hh(&c2, &Integers, q - 1).compose(&Integers, bar.differential(q)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn normalized_bar_complex_has_the_same_homology() {
        let f2 = ModRing::prime_field(2).unwrap();
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
            let full = bar_complex(&g, &Integers, 4).unwrap();
            let small = normalized_bar_complex(&g, &Integers, 4).unwrap();
            small.check_square_zero().unwrap();
            for d in 0..=3 {
                assert_eq!(full.homology(d).unwrap().structure(), small.homology(d).unwrap().structure(), "{g:?} degree {d}");
            }
            let full = bar_complex(&g, &f2, 3).unwrap();
            let small = normalized_bar_complex(&g, &f2, 3).unwrap();
            for d in 0..=2 {
                assert_eq!(full.homology(d).unwrap().structure(), small.homology(d).unwrap().structure());
            }
        }
    }
}
