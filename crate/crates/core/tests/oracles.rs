//! Closed-form answers the engine must reproduce.

use num_bigint::BigInt;

use hochtrace::algebra::{Algebra, FiniteGroup};
use hochtrace::hochschild::{cyclic_homology, hochschild_homology, NormalizedComplex};
use hochtrace::linalg::{FPAbelianGroup, HomologyStructure};
use hochtrace::ring::{BaseRing, Integers, ModRing, Rationals, Ring};
use hochtrace::trace::{dennis_trace_k1, group_homology, morita_map};
use hochtrace::waldhausen::{finite_modules, grothendieck_k0, k0_via_sdot, pointed_sets, vect_gf};

fn abelian(free: usize, torsion: &[u64]) -> HomologyStructure {
    let mut orders: Vec<BigInt> = torsion.iter().map(|&d| BigInt::from(d)).collect();
    orders.extend(std::iter::repeat(BigInt::from(0)).take(free));
    HomologyStructure::Abelian(FPAbelianGroup::from_cyclic_orders(&orders))
}

fn hh<R: Ring>(a: &Algebra<R>, top: usize) -> Vec<HomologyStructure> {
    let c = NormalizedComplex::new(a, top + 1).unwrap();
    (0..=top).map(|d| c.homology(d).unwrap().structure()).collect()
}

/// `HH_{2i-1}(Z[x]/x^n) = A/(n x^{n-1}) = Z^{n-1} + Z/n` and `HH_{2i}(Z[x]/x^n) = Ann(n x^{n-1}) = Z^{n-1}` for `i > 0`.
#[test]
fn truncated_polynomials_over_the_integers() {
    for n in 2..=4u64 {
        let a = Algebra::truncated_polynomial(Integers, n as usize).unwrap();
        let got = hh(&a, 3);
        let k = n as usize;
        assert_eq!(got, [abelian(k, &[]), abelian(k - 1, &[n]), abelian(k - 1, &[]), abelian(k - 1, &[n])], "n = {n}");
    }
}

/// Over a field: dimensions `n, n-1, n-1, ...` when the characteristic does not divide `n`, else `n` throughout.
#[test]
fn truncated_polynomials_over_prime_fields() {
    for p in [2u64, 3, 5] {
        for n in 2..=4usize {
            let f = ModRing::prime_field(p).unwrap();
            let got = hh(&Algebra::truncated_polynomial(f, n).unwrap(), 3);
            let higher = if n as u64 % p == 0 { n } else { n - 1 };
            let dims: Vec<usize> = std::iter::once(n).chain(std::iter::repeat(higher).take(3)).collect();
            let expected: Vec<_> = dims.iter().map(|&dim| HomologyStructure::Vector { field: BaseRing::PrimeField(p), dim }).collect();
            assert_eq!(got, expected, "p = {p}, n = {n}");
        }
    }
}

/// For abelian `G`, `HH_*(Z[G])` is `|G|` copies of `H_*(G; Z)`.
#[test]
fn abelian_group_rings() {
    for n in [2usize, 3] {
        let g = FiniteGroup::cyclic(n);
        let got = hh(&Algebra::group_algebra(&g, Integers), 3);
        for (d, h) in got.iter().enumerate() {
            let HomologyStructure::Abelian(single) = group_homology(&g, &Integers, d).unwrap().structure() else { panic!() };
            let orders: Vec<BigInt> = (0..n)
                .flat_map(|_| {
                    let mut o = single.invariant_factors.clone();
                    o.extend(std::iter::repeat(BigInt::from(0)).take(single.free_rank));
                    o
                })
                .collect();
            assert_eq!(*h, HomologyStructure::Abelian(FPAbelianGroup::from_cyclic_orders(&orders)), "C{n}, degree {d}");
        }
    }
}

/// `Q[C2] = Q x Q`, so `HC_n` is `Q^2` in even degrees and zero in odd ones.
#[test]
fn cyclic_homology_of_a_split_algebra() {
    let a = Algebra::group_algebra(&FiniteGroup::cyclic(2), Rationals);
    for n in 0..=4 {
        let dim = if n % 2 == 0 { 2 } else { 0 };
        assert_eq!(cyclic_homology(&a, n).unwrap().structure(), HomologyStructure::Vector { field: BaseRing::Rationals, dim });
    }
}

/// Cyclic homology of `Q[x]/x^2`: reduced `HC` is `Q` in even degrees and zero
/// in odd ones, so `HC_n` is `Q^2, 0, Q^2, 0`.
#[test]
fn cyclic_homology_of_dual_numbers() {
    let a = Algebra::truncated_polynomial(Rationals, 2).unwrap();
    let dims: Vec<usize> = (0..=3)
        .map(|n| match cyclic_homology(&a, n).unwrap().structure() {
            HomologyStructure::Vector { dim, .. } => dim,
            other => panic!("{other:?}"),
        })
        .collect();
    assert_eq!(dims, [2, 0, 2, 0]);
}

#[test]
fn morita_invariance_beyond_the_acceptance_case() {
    for d in 0..=2 {
        assert!(morita_map(&Algebra::base(Integers), 2, d).unwrap().is_isomorphism, "Z, degree {d}");
        assert!(morita_map(&Algebra::base(ModRing::prime_field(3).unwrap()), 3, d).unwrap().is_isomorphism, "F3, n = 3, degree {d}");
    }
    let dual = Algebra::truncated_polynomial(ModRing::prime_field(2).unwrap(), 2).unwrap();
    for d in 0..=1 {
        assert!(morita_map(&dual, 2, d).unwrap().is_isomorphism, "F2[x]/x^2, degree {d}");
    }
}

/// `HH_1` of a commutative algebra is its Kähler differentials, and the K_1 trace of a unit `u` is `u^{-1} du`.
#[test]
fn k1_trace_of_units_in_dual_numbers() {
    let f3 = ModRing::prime_field(3).unwrap();
    let a = Algebra::truncated_polynomial(f3, 2).unwrap();
    let h1 = hochschild_homology(&a, 1).unwrap();
    assert_eq!(h1.structure(), HomologyStructure::Vector { field: BaseRing::PrimeField(3), dim: 1 });
    let base = dennis_trace_k1(&a, 1, &[1, 1]).unwrap().coordinates;
    assert_ne!(base, vec![0]);
    // (1 + bx)^{-1} d(1 + bx) = b dx, so the class scales with b; constants trace to zero.
    for b in 0..3u64 {
        let c = dennis_trace_k1(&a, 1, &[1, b]).unwrap().coordinates;
        assert_eq!(c, vec![(base[0] * b) % 3]);
        assert_eq!(dennis_trace_k1(&a, 1, &[2, 2 * b % 3]).unwrap().coordinates, c);
    }
    // Elementary matrices trace to zero.
    let e12 = [1, 0, 1, 1, 0, 0, 1, 0];
    assert_eq!(dennis_trace_k1(&a, 2, &e12).unwrap().coordinates, vec![0]);
}

#[test]
fn k0_of_further_categories() {
    for c in [pointed_sets(1), pointed_sets(3), vect_gf(3, 1), finite_modules(3, 3)] {
        let c = c.unwrap();
        let s = k0_via_sdot(&c).unwrap().group;
        assert_eq!(s, grothendieck_k0(&c).unwrap().group, "{}", c.name());
        assert_eq!(s, FPAbelianGroup::free(1), "{}", c.name());
    }
    // Larger categories exceed the enumeration cap of the S-construction.
    assert!(k0_via_sdot(&finite_modules(3, 9).unwrap()).is_err());
}
