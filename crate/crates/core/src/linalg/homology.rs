//! Chain complexes of free modules and their homology.
//!
//! Homology `ker d_n / im d_{n+1}` is computed in two Smith-normal-form passes.
//! The first diagonalizes `d_n` and yields generators of the kernel together
//! with their annihilators (nontrivial only over `Z/p^k`). The second reduces
//! the relation matrix formed by the boundaries and those annihilators. The
//! change of basis from the second pass gives canonical representatives and
//! canonical coordinates of any cycle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::snf::{smith_normal_form_with, Tracking};
use crate::linalg::sparse::{dense_to_sparse, sparse_to_dense, SparseMatrix, SparseVec};
use crate::linalg::Matrix;
use crate::ring::{BaseRing, Ring};

/// Finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`, `d_i | d_{i+1}`, `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FPAbelianGroup {
    pub free_rank: usize,
    #[serde(with = "decimal")]
    pub invariant_factors: Vec<BigInt>,
}

/// Big integers as decimal strings in serialized output.
mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}

impl FPAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FPAbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// Builds the canonical form from arbitrary cyclic orders (`0` meaning `Z`).
    /// Orders are regrouped into an invariant-factor chain.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let mut torsion: Vec<BigInt> = orders
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| if d < &BigInt::zero() { -d } else { d.clone() })
            .filter(|d| !d.is_one())
            .collect();
        // Restore the divisibility chain: repeatedly replace (a, b) by (gcd, lcm).
        use num_integer::Integer;
        let n = torsion.len();
        for i in 0..n {
            for j in i + 1..n {
                let g = torsion[i].gcd(&torsion[j]);
                let l = torsion[i].lcm(&torsion[j]);
                torsion[i] = g;
                torsion[j] = l;
            }
        }
        torsion.retain(|d| !d.is_one());
        FPAbelianGroup { free_rank, invariant_factors: torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.invariant_factors.iter().all(|d| d > &BigInt::one())
            && self.invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Isomorphism type of a homology module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomologyStructure {
    /// Over `Z` or `Z/p^k`: an abelian group.
    Abelian(FPAbelianGroup),
    /// Over a field: a vector space of the given dimension.
    Vector { field: BaseRing, dim: usize },
}

impl HomologyStructure {
    pub fn is_zero(&self) -> bool {
        match self {
            HomologyStructure::Abelian(g) => g.is_zero(),
            HomologyStructure::Vector { dim, .. } => *dim == 0,
        }
    }
}

impl fmt::Display for HomologyStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyStructure::Abelian(g) => write!(f, "{g}"),
            HomologyStructure::Vector { dim: 0, .. } => write!(f, "0"),
            HomologyStructure::Vector { field, dim } => {
                let name = match field {
                    BaseRing::Rationals => "Q".to_string(),
                    BaseRing::PrimeField(p) | BaseRing::IntegersMod(p) => format!("F{p}"),
                    BaseRing::Integers => "Z".to_string(),
                };
                if *dim == 1 {
                    write!(f, "{name}")
                } else {
                    write!(f, "{name}^{dim}")
                }
            }
        }
    }
}

/// Bounded chain complex of finite free modules, degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    ranks: Vec<usize>,
    /// `differentials[n]` is `d_n : C_n -> C_{n-1}`; `differentials[0]` is the zero map to 0.
    differentials: Vec<SparseMatrix<R::Elem>>,
}

impl<R: Ring> ChainComplex<R> {
    /// `diffs[k]` is `d_{k+1} : C_{k+1} -> C_k`. Checks shapes and `d d = 0`.
    pub fn new(ring: R, ranks: Vec<usize>, diffs: Vec<SparseMatrix<R::Elem>>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        let mut differentials = vec![SparseMatrix::zero(0, ranks[0])];
        differentials.extend(diffs);
        let c = ChainComplex { ring, ranks, differentials };
        c.check_shapes()?;
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_shapes(&self) -> Result<()> {
        for n in 1..self.ranks.len() {
            let d = &self.differentials[n];
            if d.rows() != self.ranks[n - 1] || d.cols() != self.ranks[n] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.ranks[n - 1],
                    self.ranks[n]
                )));
            }
        }
        Ok(())
    }

    /// Rejects complexes with `d_n d_{n+1} != 0`.
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 1..self.ranks.len().saturating_sub(1) {
            let dd = self.differentials[n].compose(&self.ring, &self.differentials[n + 1])?;
            if !dd.is_zero() {
                return Err(Error::Validation(format!("d_{n} d_{} != 0", n + 1)));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix<R::Elem> {
        &self.differentials[n]
    }

    /// Homology in degree `n`; requires `n < top_degree` so that `d_{n+1}` exists.
    pub fn homology(&self, n: usize) -> Result<Homology<R>> {
        if n + 1 > self.top_degree() {
            return Err(Error::DegreeOutOfRange { degree: n, max: self.top_degree().saturating_sub(1) });
        }
        Homology::compute(
            &self.ring,
            n,
            &self.differentials[n],
            &self.differentials[n + 1],
        )
    }
}

/// Homology of a complex at one degree, with canonical generators.
#[derive(Clone, Debug)]
pub struct Homology<R: Ring> {
    ring: R,
    degree: usize,
    chain_rank: usize,
    /// Order ideal generator of each homology generator (zero for a free generator).
    orders: Vec<R::Elem>,
    representatives: Vec<SparseVec<R::Elem>>,
    /// Inverse of the right transform diagonalizing `d_n`.
    v_inv: Matrix<R::Elem>,
    /// Kernel generators: (column of V, annihilator scaling it).
    kept: Vec<(usize, R::Elem)>,
    /// Left transform of the relation matrix.
    u_rel: Matrix<R::Elem>,
    /// Rows of `u_rel` that index homology generators.
    gen_rows: Vec<usize>,
    outgoing: SparseMatrix<R::Elem>,
}

impl<R: Ring> Homology<R> {
    /// `ker(d_out) / im(d_in)` where `d_out : C_n -> C_{n-1}` and `d_in : C_{n+1} -> C_n`.
    pub fn compute(
        ring: &R,
        degree: usize,
        d_out: &SparseMatrix<R::Elem>,
        d_in: &SparseMatrix<R::Elem>,
    ) -> Result<Self> {
        let c = d_out.cols();
        if d_in.rows() != c {
            return Err(Error::DimensionMismatch(format!(
                "incoming differential has {} rows, chain rank is {c}",
                d_in.rows()
            )));
        }
        let out_snf = smith_normal_form_with(ring, &d_out.to_dense(ring), Tracking::RIGHT)?;
        let v = out_snf.v.expect("tracked");
        let v_inv = out_snf.v_inv.expect("tracked");
        let diag_len = out_snf.s.rows().min(c);
        let kept: Vec<(usize, R::Elem)> = (0..c)
            .filter_map(|i| {
                let ann = if i < diag_len {
                    ring.annihilator(out_snf.s.get(i, i))
                } else {
                    ring.one()
                };
                (!ring.is_zero(&ann)).then_some((i, ann))
            })
            .collect();
        let g = kept.len();

        // Relation matrix in kernel-generator coordinates.
        let mut rel_cols: Vec<Vec<R::Elem>> = Vec::new();
        for col in d_in.columns() {
            let y = v_inv.mul_sparse_vec(ring, col)?;
            let coords = kernel_coordinates(ring, &y, &kept)
                .ok_or_else(|| Error::Validation(format!("boundary into degree {degree} is not a cycle")))?;
            rel_cols.push(coords);
        }
        for (k, (_, ann)) in kept.iter().enumerate() {
            let order = ring.annihilator(ann);
            if !ring.is_zero(&order) {
                let mut col = vec![ring.zero(); g];
                col[k] = order;
                rel_cols.push(col);
            }
        }
        let rel = Matrix::from_columns(ring, g, &echelon_columns(ring, g, &rel_cols));
        let rel_snf = smith_normal_form_with(ring, &rel, Tracking::LEFT)?;
        let u_rel = rel_snf.u.expect("tracked");
        let u_rel_inv = rel_snf.u_inv.expect("tracked");

        let mut orders = Vec::new();
        let mut gen_rows = Vec::new();
        let mut representatives = Vec::new();
        for j in 0..g {
            let d = if j < rel_snf.rank { rel_snf.s.get(j, j).clone() } else { ring.zero() };
            if ring.is_unit(&d) {
                continue;
            }
            // Representative: K * U_rel^{-1} e_j, with K_i = ann_i * V e_{kept_i}.
            let mut rep = vec![ring.zero(); c];
            for (k, (col, ann)) in kept.iter().enumerate() {
                let coef = ring.mul(u_rel_inv.get(k, j), ann);
                if ring.is_zero(&coef) {
                    continue;
                }
                for (r, x) in rep.iter_mut().enumerate() {
                    let vx = v.get(r, *col);
                    if !ring.is_zero(vx) {
                        *x = ring.add(x, &ring.mul(&coef, vx));
                    }
                }
            }
            representatives.push(dense_to_sparse(ring, &rep));
            orders.push(d);
            gen_rows.push(j);
        }
        Ok(Homology {
            ring: ring.clone(),
            degree,
            chain_rank: c,
            orders,
            representatives,
            v_inv,
            kept,
            u_rel,
            gen_rows,
            outgoing: d_out.clone(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn chain_rank(&self) -> usize {
        self.chain_rank
    }

    /// Number of canonical generators.
    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    /// Order ideal generator of each canonical generator (zero for free generators).
    pub fn orders(&self) -> &[R::Elem] {
        &self.orders
    }

    /// Cycle representing each canonical generator, in the chain basis.
    pub fn representatives(&self) -> &[SparseVec<R::Elem>] {
        &self.representatives
    }

    pub fn structure(&self) -> HomologyStructure {
        let base = self.ring.base();
        if base.is_field() {
            return HomologyStructure::Vector { field: base, dim: self.orders.len() };
        }
        let orders: Vec<BigInt> = self
            .orders
            .iter()
            .map(|d| self.ring.quotient_order(d).unwrap_or_else(BigInt::zero))
            .collect();
        HomologyStructure::Abelian(FPAbelianGroup::from_cyclic_orders(&orders))
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_cycle(&self, z: &SparseVec<R::Elem>) -> bool {
        self.outgoing.apply(&self.ring, z).is_empty()
    }

    /// Canonical coordinates of the class of a cycle: entry `j` is reduced modulo the order of generator `j`.
    pub fn coordinates(&self, z: &SparseVec<R::Elem>) -> Result<Vec<R::Elem>> {
        let ring = &self.ring;
        if !self.is_cycle(z) {
            return Err(Error::InvalidInput(format!("chain is not a cycle in degree {}", self.degree)));
        }
        let y = self.v_inv.mul_sparse_vec(ring, z)?;
        let c = kernel_coordinates(ring, &y, &self.kept)
            .ok_or_else(|| Error::Internal("cycle outside the computed kernel".into()))?;
        let u = self.u_rel.mul_vec(ring, &c)?;
        Ok(self
            .gen_rows
            .iter()
            .zip(&self.orders)
            .map(|(&row, d)| ring.reduce_mod(&u[row], d))
            .collect())
    }

    /// True when the cycle is a boundary.
    pub fn is_boundary(&self, z: &SparseVec<R::Elem>) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(|x| self.ring.is_zero(x)))
    }
}

/// Column operations taking `cols` to at most `rows` columns with distinct
/// last nonzero rows and the same span. Column operations do not change the
/// presented module, and they keep the later dense elimination small.
fn echelon_columns<R: Ring>(ring: &R, rows: usize, cols: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
    let mut basis: Vec<Option<SparseVec<R::Elem>>> = vec![None; rows];
    for col in cols {
        let mut v = dense_to_sparse(ring, col);
        while let Some(&(r, _)) = v.last() {
            let Some(mut b) = basis[r].take() else {
                basis[r] = Some(v);
                break;
            };
            // Euclid on the entries in row r; the smaller one stays in the basis.
            while v.last().is_some_and(|(i, _)| *i == r) {
                let (q, _) = ring.div_rem(&v.last().expect("nonempty").1, &b.last().expect("nonempty").1);
                v = sub_multiple(ring, &v, &q, &b);
                if v.last().is_some_and(|(i, _)| *i == r) {
                    std::mem::swap(&mut v, &mut b);
                }
            }
            basis[r] = Some(b);
        }
    }
    basis.into_iter().flatten().map(|v| sparse_to_dense(ring, &v, rows)).collect()
}

/// `v - q b` for sorted sparse vectors.
fn sub_multiple<R: Ring>(ring: &R, v: &SparseVec<R::Elem>, q: &R::Elem, b: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
    if ring.is_zero(q) {
        return v.clone();
    }
    let mut out = Vec::with_capacity(v.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < b.len() {
        let (idx, x) = match (v.get(i), b.get(j)) {
            (Some((a, x)), Some((c, _))) if a < c => {
                i += 1;
                (*a, x.clone())
            }
            (Some((a, x)), Some((c, y))) if a == c => {
                i += 1;
                j += 1;
                (*a, ring.sub(x, &ring.mul(q, y)))
            }
            (_, Some((c, y))) => {
                j += 1;
                (*c, ring.neg(&ring.mul(q, y)))
            }
            (Some((a, x)), None) => {
                i += 1;
                (*a, x.clone())
            }
            (None, None) => unreachable!(),
        };
        if !ring.is_zero(&x) {
            out.push((idx, x));
        }
    }
    out
}

fn kernel_coordinates<R: Ring>(ring: &R, y: &[R::Elem], kept: &[(usize, R::Elem)]) -> Option<Vec<R::Elem>> {
    let mut is_kept = vec![false; y.len()];
    let mut out = Vec::with_capacity(kept.len());
    for (i, ann) in kept {
        is_kept[*i] = true;
        out.push(ring.exact_div(&y[*i], ann)?);
    }
    if y.iter().zip(&is_kept).any(|(x, k)| !k && !ring.is_zero(x)) {
        return None;
    }
    Some(out)
}

/// Result of a linear membership query `M x = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<E> {
    /// A solution `x`.
    Witness(Vec<E>),
    /// `v` is not in the image: after the left Smith transform, coordinate `index` of `U v`
    /// is `value`, which the diagonal entry `divisor` does not divide.
    NotInImage { index: usize, value: E, divisor: E },
}

impl<E> Membership<E> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Witness(_))
    }
}

/// Solves `M x = v` exactly, or certifies that `v` is not in the image of `M`.
pub fn solve_membership<R: Ring>(ring: &R, m: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<Membership<R::Elem>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, vector has length {}",
            m.rows(),
            v.len()
        )));
    }
    let snf = smith_normal_form_with(ring, m, Tracking::ALL)?;
    let u = snf.u.expect("tracked");
    let w = u.mul_vec(ring, v)?;
    let diag = m.rows().min(m.cols());
    let mut y = vec![ring.zero(); m.cols()];
    for (i, wi) in w.iter().enumerate() {
        let d = if i < diag { snf.s.get(i, i).clone() } else { ring.zero() };
        match ring.exact_div(wi, &d) {
            Some(q) if i < diag => y[i] = q,
            Some(_) => {}
            None => return Ok(Membership::NotInImage { index: i, value: wi.clone(), divisor: d }),
        }
    }
    let x = snf.v.expect("tracked").mul_vec(ring, &y)?;
    Ok(Membership::Witness(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing, Rationals};

    fn zcol(v: &[i64]) -> SparseVec<BigInt> {
        dense_to_sparse(&Integers, &v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn times_two_gives_z_mod_2() {
        let z = Integers;
        let d1 = SparseMatrix::from_columns(1, vec![zcol(&[2])]);
        let c = ChainComplex::new(z, vec![1, 1], vec![d1]).unwrap();
        let h = c.homology(0).unwrap();
        assert_eq!(
            h.structure(),
            HomologyStructure::Abelian(FPAbelianGroup { free_rank: 0, invariant_factors: vec![BigInt::from(2)] })
        );
        assert_eq!(h.coordinates(&zcol(&[3])).unwrap(), vec![BigInt::from(1)]);
        assert!(h.is_boundary(&zcol(&[4])).unwrap());
    }

    #[test]
    fn zero_differentials_give_free_modules() {
        let z = Integers;
        let c = ChainComplex::new(
            z,
            vec![2, 3, 1],
            vec![SparseMatrix::zero(2, 3), SparseMatrix::zero(3, 1)],
        )
        .unwrap();
        assert_eq!(c.homology(1).unwrap().structure(), HomologyStructure::Abelian(FPAbelianGroup::free(3)));
    }

    #[test]
    fn rejects_nonzero_square() {
        let r = ModRing::new(3).unwrap();
        let id = SparseMatrix::identity(&r, 1);
        assert!(ChainComplex::new(r, vec![1, 1, 1], vec![id.clone(), id]).is_err());
    }

    #[test]
    fn degree_out_of_range() {
        let c = ChainComplex::new(Rationals, vec![1], vec![]).unwrap();
        assert!(matches!(c.homology(0), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn homology_over_z_mod_4() {
        // Z/4 --2--> Z/4 --2--> Z/4 is exact in the middle.
        let r = ModRing::new(4).unwrap();
        let two = SparseMatrix::from_columns(1, vec![vec![(0, 2u64)]]);
        let c = ChainComplex::new(r, vec![1, 1, 1], vec![two.clone(), two]).unwrap();
        assert!(c.homology(1).unwrap().is_zero());
        // H_0 = Z/4 / 2 = Z/2
        let h0 = c.homology(0).unwrap();
        assert_eq!(
            h0.structure(),
            HomologyStructure::Abelian(FPAbelianGroup { free_rank: 0, invariant_factors: vec![BigInt::from(2)] })
        );
    }

    #[test]
    fn membership_examples() {
        let z = Integers;
        let id = Matrix::identity(&z, 2);
        let v = vec![BigInt::from(5), BigInt::from(-1)];
        assert_eq!(solve_membership(&z, &id, &v).unwrap(), Membership::Witness(v.clone()));
        let zero = Matrix::zeros(&z, 2, 2);
        assert!(!solve_membership(&z, &zero, &v).unwrap().is_member());
        let two = Matrix::from_rows(vec![vec![BigInt::from(2)]]).unwrap();
        assert_eq!(
            solve_membership(&z, &two, &[BigInt::from(6)]).unwrap(),
            Membership::Witness(vec![BigInt::from(3)])
        );
        assert!(solve_membership(&z, &two, &[BigInt::from(6), BigInt::from(1)]).is_err());
    }

    #[test]
    fn invariant_chain_regrouping() {
        let g = FPAbelianGroup::from_cyclic_orders(&[BigInt::from(2), BigInt::from(3), BigInt::from(0)]);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.invariant_factors, vec![BigInt::from(6)]);
        assert!(g.is_canonical());
        assert_eq!(g.to_string(), "Z + Z/6");
    }
}
