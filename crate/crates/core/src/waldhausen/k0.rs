use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::sparse::{normalize, SparseMatrix, SparseVec};
use crate::linalg::{ChainComplex, FPAbelianGroup, Homology, HomologyStructure};
use crate::report::ValidationReport;
use crate::ring::Integers;
use crate::waldhausen::category::FiniteWaldhausenCategory;
use crate::waldhausen::cube::Cube;
use crate::waldhausen::end::ExactFunctor;
use crate::waldhausen::sdot::{s_diagrams, w_chains, weak_maps_all, DEFAULT_SET_CAP};

/// Levels `Z_n = ob w_n S_n C` of the diagonal of the bisimplicial set
/// `(p, q) -> ob w_p S_q C`, for `n <= top`. Element 0 of each level is the basepoint.
#[derive(Clone, Debug)]
pub struct WsDiagonal<'a> {
    c: &'a FiniteWaldhausenCategory,
    levels: Vec<Vec<Cube>>,
    index: Vec<HashMap<Cube, usize>>,
}

pub fn ws_diagonal(c: &FiniteWaldhausenCategory, top: usize) -> Result<WsDiagonal<'_>> {
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let base = s_diagrams(c, &[n], DEFAULT_SET_CAP)?;
        let maps = weak_maps_all(c, &base);
        levels.push(w_chains(c, &base, &maps, n, DEFAULT_SET_CAP)?);
    }
    let index = levels.iter().map(|l| l.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect()).collect();
    Ok(WsDiagonal { c, levels, index })
}

impl<'a> WsDiagonal<'a> {
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[Cube] {
        &self.levels[n]
    }

    fn lookup(&self, n: usize, x: &Cube) -> Result<usize> {
        self.index[n]
            .get(x)
            .copied()
            .ok_or_else(|| Error::Internal(format!("simplicial operator leaves the enumerated level {n}")))
    }

    /// `d_i = d_i^w d_i^S` on level `n`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> Result<usize> {
        let c = self.c;
        let y = self.levels[n][x].delete(c, 0, i).delete(c, 1, i).delete(c, 2, i);
        self.lookup(n - 1, &y)
    }

    /// `s_i = s_i^w s_i^S` on level `n`.
    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> Result<usize> {
        let c = self.c;
        let y = self.levels[n][x].duplicate(c, 0, i).duplicate(c, 1, i).duplicate(c, 2, i);
        self.lookup(n + 1, &y)
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> Result<bool> {
        for i in 0..n {
            if self.degeneracy(n - 1, i, self.face(n, i, x)?)? == x {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Simplicial identities on every element, within the enumerated levels.
    pub fn check_simplicial_identities(&self) -> Result<ValidationReport> {
        let mut r = ValidationReport::new();
        let top = self.top();
        for n in 0..=top {
            for x in 0..self.levels[n].len() {
                if x == 0 && n > 0 && self.face(n, 0, 0)? != 0 {
                    r.push("pointed", format!("face of the basepoint in level {n}"));
                }
                for i in 0..=n {
                    for j in i + 1..=n {
                        if n >= 2 && self.face(n - 1, i, self.face(n, j, x)?)? != self.face(n - 1, j - 1, self.face(n, i, x)?)? {
                            r.push("face-face", format!("d_{i} d_{j} on element {x} of level {n}"));
                        }
                    }
                    if n < top {
                        let s = self.degeneracy(n, i, x)?;
                        for j in 0..=n + 1 {
                            let lhs = self.face(n + 1, j, s)?;
                            let rhs = if j == i || j == i + 1 {
                                x
                            } else if n == 0 {
                                continue;
                            } else if j < i {
                                self.degeneracy(n - 1, i - 1, self.face(n, j, x)?)?
                            } else {
                                self.degeneracy(n - 1, i, self.face(n, j - 1, x)?)?
                            };
                            if lhs != rhs {
                                r.push("face-degeneracy", format!("d_{j} s_{i} on element {x} of level {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    /// Reduced normalized chains in degrees `0..=top` over `Z`, with the
    /// chosen basis of each degree (nondegenerate, non-basepoint elements).
    pub fn normalized_chains(&self) -> Result<(ChainComplex<Integers>, Vec<Vec<usize>>)> {
        let top = self.top();
        let mut basis = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut degenerate = vec![false; self.levels[n].len()];
            degenerate[0] = true;
            if n > 0 {
                for y in 0..self.levels[n - 1].len() {
                    for i in 0..n {
                        degenerate[self.degeneracy(n - 1, i, y)?] = true;
                    }
                }
            }
            basis.push((0..degenerate.len()).filter(|&x| !degenerate[x]).collect::<Vec<_>>());
        }
        let pos: Vec<HashMap<usize, usize>> = basis.iter().map(|b| b.iter().enumerate().map(|(k, &x)| (x, k)).collect()).collect();
        let mut diffs = Vec::with_capacity(top);
        for n in 1..=top {
            let cols = basis[n]
                .iter()
                .map(|&x| {
                    let mut terms = Vec::new();
                    for i in 0..=n {
                        let y = self.face(n, i, x)?;
                        if let Some(&k) = pos[n - 1].get(&y) {
                            let s: BigInt = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                            terms.push((k, s));
                        }
                    }
                    Ok(normalize(&Integers, terms))
                })
                .collect::<Result<Vec<_>>>()?;
            diffs.push(SparseMatrix::from_columns(basis[n - 1].len(), cols));
        }
        let ranks = basis.iter().map(Vec::len).collect();
        Ok((ChainComplex::new(Integers, ranks, diffs)?, basis))
    }
}

fn abelian(h: &Homology<Integers>) -> FPAbelianGroup {
    match h.structure() {
        HomologyStructure::Abelian(g) => g,
        HomologyStructure::Vector { dim, .. } => FPAbelianGroup::free(dim),
    }
}

/// `K_0(C)` computed as `H_1` of the reduced normalized chains on the diagonal of `w_• S_• C`.
#[derive(Clone, Debug)]
pub struct SdotK0 {
    pub group: FPAbelianGroup,
    pub homology: Homology<Integers>,
    /// Level-1 elements (weak equivalences `a -> a'`) forming the chain basis.
    pub basis: Vec<usize>,
    pub level_sizes: Vec<usize>,
}

pub fn k0_via_sdot(c: &FiniteWaldhausenCategory) -> Result<SdotK0> {
    let diag = ws_diagonal(c, 2)?;
    let (complex, basis) = diag.normalized_chains()?;
    complex.check_square_zero()?;
    let homology = complex.homology(1)?;
    Ok(SdotK0 {
        group: abelian(&homology),
        homology,
        basis: basis[1].clone(),
        level_sizes: (0..=2).map(|n| diag.level(n).len()).collect(),
    })
}

/// The presentation of `K_0(C)` by generators `[a]` for nonzero objects and
/// relations `[a] = [a']` for weak equivalences and `[b] = [a] + [c]` for each
/// cofibration `a -> b` with recorded quotient `c`.
#[derive(Clone, Debug)]
pub struct GrothendieckGroup {
    pub group: FPAbelianGroup,
    /// Objects used as generators, in order.
    pub generators: Vec<usize>,
    pub num_relations: usize,
    homology: Homology<Integers>,
    position: Vec<Option<usize>>,
}

pub fn grothendieck_k0(c: &FiniteWaldhausenCategory) -> Result<GrothendieckGroup> {
    let generators: Vec<usize> = (0..c.num_objects()).filter(|&a| a != c.zero()).collect();
    let mut position = vec![None; c.num_objects()];
    for (k, &a) in generators.iter().enumerate() {
        position[a] = Some(k);
    }
    let mut relations: Vec<SparseVec<BigInt>> = Vec::new();
    let term = |a: usize, s: i64| position[a].map(|k| (k, BigInt::from(s)));
    for f in 0..c.num_morphisms() {
        let (a, b) = (c.src(f), c.dst(f));
        if c.is_weak_equivalence(f) {
            relations.push(normalize(&Integers, [term(b, 1), term(a, -1)].into_iter().flatten().collect()));
        }
        if c.is_cofibration(f) {
            if let Some(w) = c.witness(f, c.to_zero(a)) {
                let q = w.object;
                relations.push(normalize(&Integers, [term(b, 1), term(a, -1), term(q, -1)].into_iter().flatten().collect()));
            }
        }
    }
    relations.retain(|r| !r.is_empty());
    relations.sort();
    relations.dedup();
    let n = generators.len();
    let d1 = SparseMatrix::from_columns(n, relations.clone());
    let d0 = SparseMatrix::from_columns(0, vec![Vec::new(); n]);
    let homology = Homology::compute(&Integers, 0, &d0, &d1)?;
    Ok(GrothendieckGroup { group: abelian(&homology), generators, num_relations: relations.len(), homology, position })
}

impl GrothendieckGroup {
    pub fn homology(&self) -> &Homology<Integers> {
        &self.homology
    }

    /// Coordinates of `[a]` against the canonical generators.
    pub fn class(&self, a: usize) -> Result<Vec<BigInt>> {
        let z = self.position[a].map(|k| vec![(k, BigInt::one())]).unwrap_or_default();
        self.homology.coordinates(&z)
    }

    /// Coordinates of an integer combination of generator objects.
    pub fn class_of_chain(&self, z: &SparseVec<BigInt>) -> Result<Vec<BigInt>> {
        self.homology.coordinates(z)
    }

    fn chain_of_object(&self, a: usize) -> SparseVec<BigInt> {
        self.position[a].map(|k| vec![(k, BigInt::one())]).unwrap_or_default()
    }
}

/// Matrix of the map `K_0(C) -> K_0(D)` induced by an exact functor, with
/// column `k` the image of the `k`-th canonical generator of the source.
pub fn induced_k0_map(f: &ExactFunctor, src: &GrothendieckGroup, dst: &GrothendieckGroup) -> Result<Vec<Vec<BigInt>>> {
    src.homology
        .representatives()
        .iter()
        .map(|z| {
            let mut terms = Vec::new();
            for (k, coeff) in z {
                for (t, v) in dst.chain_of_object(f.objects[src.generators[*k]]) {
                    terms.push((t, coeff * v));
                }
            }
            dst.class_of_chain(&normalize(&Integers, terms))
        })
        .collect()
}

/// Composes two `K_0` matrices given column-wise: `(g ∘ f)`, reducing modulo `orders`.
pub fn compose_k0_maps(g: &[Vec<BigInt>], f: &[Vec<BigInt>], orders: &[BigInt]) -> Vec<Vec<BigInt>> {
    f.iter()
        .map(|col| {
            (0..orders.len())
                .map(|r| {
                    let s: BigInt = col.iter().zip(g).map(|(x, gc)| x * &gc[r]).sum();
                    if orders[r].is_zero() {
                        s
                    } else {
                        ((s % &orders[r]) + &orders[r]) % &orders[r]
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::end::end_category;
    use crate::waldhausen::families::{finite_modules, pointed_sets, trivial, vect_gf};

    #[test]
    fn grothendieck_groups() {
        assert!(grothendieck_k0(&trivial().unwrap()).unwrap().group.is_zero());
        for c in [vect_gf(2, 2).unwrap(), pointed_sets(3).unwrap(), finite_modules(4, 4).unwrap()] {
            let g = grothendieck_k0(&c).unwrap();
            assert_eq!(g.group, FPAbelianGroup::free(1), "{}", c.name());
        }
        let v = vect_gf(2, 2).unwrap();
        let g = grothendieck_k0(&v).unwrap();
        let one = g.class(1).unwrap();
        let two = g.class(2).unwrap();
        assert_eq!(two[0], &one[0] * 2);
    }

    #[test]
    fn k0_of_the_s_construction_matches() {
        assert!(k0_via_sdot(&trivial().unwrap()).unwrap().group.is_zero());
        for c in [vect_gf(2, 1).unwrap(), vect_gf(2, 2).unwrap(), finite_modules(4, 4).unwrap()] {
            let k = k0_via_sdot(&c).unwrap();
            assert_eq!(k.group, grothendieck_k0(&c).unwrap().group, "{}", c.name());
        }
    }

    #[test]
    fn diagonal_is_simplicial() {
        let c = vect_gf(2, 2).unwrap();
        let d = ws_diagonal(&c, 2).unwrap();
        assert_eq!(d.level(0).len(), 1);
        assert_eq!(d.level(1).len(), 8);
        let r = d.check_simplicial_identities().unwrap();
        assert!(r.is_valid(), "{r}");
    }

    #[test]
    fn k0_retract_through_endomorphisms() {
        let c = vect_gf(2, 2).unwrap();
        let e = end_category(&c).unwrap();
        let kc = grothendieck_k0(&c).unwrap();
        let ke = grothendieck_k0(&e.category).unwrap();
        let up = induced_k0_map(&e.iota1, &kc, &ke).unwrap();
        let down = induced_k0_map(&e.forget, &ke, &kc).unwrap();
        let id = compose_k0_maps(&down, &up, kc.homology().orders());
        assert_eq!(id, vec![vec![BigInt::one()]]);
    }
}
