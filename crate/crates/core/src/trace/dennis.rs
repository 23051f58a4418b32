use crate::algebra::{general_linear_group, Algebra, GeneralLinearGroup, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::hochschild::tensor::{decode, tensor_column};
use crate::hochschild::{hochschild_homology, CyclicModule, HochschildHomology, HomologyClass};
use crate::linalg::sparse::{normalize, sparse_to_dense, Accumulator, SparseMatrix, SparseVec};
use crate::linalg::{solve_membership, Homology};
use crate::ring::Ring;
use crate::trace::bar::{bar_complex, group_to_hh_index};
use crate::trace::multitrace::multitrace_apply;

/// Bounds for the Dennis trace pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceLimits {
    pub max_degree: usize,
    pub max_group_order: usize,
    pub enumeration_cap: u128,
}

impl Default for TraceLimits {
    fn default() -> Self {
        TraceLimits { max_degree: 3, max_group_order: 24, enumeration_cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// The Hochschild 1-chain `Σ_{i,j} (g^{-1})_{ij} ⊗ g_{ji}` of an invertible matrix over `A`.
pub fn k1_trace_chain<R: Ring>(a: &Algebra<R>, n: usize, g: &[R::Elem]) -> Result<SparseVec<R::Elem>> {
    let m = a.matrix_algebra(n)?;
    if g.len() != m.rank() {
        return Err(Error::DimensionMismatch(format!("matrix has {} coordinates, M_{n}(A) has rank {}", g.len(), m.rank())));
    }
    let g_inv = m
        .unit_inverse(g)?
        .ok_or_else(|| Error::NotInvertible(format!("{} is not invertible", m.format_element(g))))?;
    let ring = a.ring();
    let big = m.rank();
    let mut terms = Vec::new();
    for (i, x) in g_inv.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            if !ring.is_zero(y) {
                terms.push((i * big + j, ring.mul(x, y)));
            }
        }
    }
    Ok(multitrace_apply(a, n, 1, &normalize(ring, terms)))
}

/// Hochschild boundary `b_1(x ⊗ y) = xy - yx` applied to a 1-chain.
fn b1<R: Ring>(a: &Algebra<R>, z: &SparseVec<R::Elem>) -> Vec<R::Elem> {
    let ring = a.ring();
    let r = a.rank();
    let mut out = a.zero_element();
    for (idx, c) in z {
        let (x, y) = (idx / r, idx % r);
        for (k, v) in a.mul_basis(x, y) {
            out[*k] = ring.add(&out[*k], &ring.mul(c, v));
        }
        for (k, v) in a.mul_basis(y, x) {
            out[*k] = ring.sub(&out[*k], &ring.mul(c, v));
        }
    }
    out
}

/// Evaluates the degree-one Dennis trace against a fixed `HH_1(A)`.
#[derive(Clone, Debug)]
pub struct DennisTraceK1<R: Ring> {
    algebra: Algebra<R>,
    hh1: HochschildHomology<R>,
}

impl<R: Ring> DennisTraceK1<R> {
    pub fn new(a: &Algebra<R>) -> Result<Self> {
        Ok(DennisTraceK1 { algebra: a.clone(), hh1: hochschild_homology(a, 1)? })
    }

    pub fn homology(&self) -> &HochschildHomology<R> {
        &self.hh1
    }

    /// Class of the trace chain of an invertible `n x n` matrix over `A`.
    pub fn evaluate(&self, n: usize, g: &[R::Elem]) -> Result<HomologyClass<R::Elem>> {
        let z = k1_trace_chain(&self.algebra, n, g)?;
        if b1(&self.algebra, &z).iter().any(|x| !self.algebra.ring().is_zero(x)) {
            return Err(Error::Internal("trace chain is not a Hochschild cycle".into()));
        }
        self.hh1.class(&z)
    }

    /// True when `z` lies in the image of the unnormalized `b_2`, decided by a linear solve.
    pub fn is_boundary(&self, z: &SparseVec<R::Elem>) -> Result<bool> {
        let c = CyclicModule::new(&self.algebra, 2)?;
        let b2 = c.boundary(2)?.to_dense(self.algebra.ring());
        let v = sparse_to_dense(self.algebra.ring(), z, b2.rows());
        Ok(solve_membership(self.algebra.ring(), &b2, &v)?.is_member())
    }
}

pub fn dennis_trace_k1<R: Ring>(a: &Algebra<R>, n: usize, g: &[R::Elem]) -> Result<HomologyClass<R::Elem>> {
    DennisTraceK1::new(a)?.evaluate(n, g)
}

/// The map `H_d(BGL_n(A); R) -> HH_d(A)` on homology, with the chain-level composite.
#[derive(Clone, Debug)]
pub struct DennisTraceMap<R: Ring> {
    pub degree: usize,
    pub group: GeneralLinearGroup<R>,
    pub source: Homology<R>,
    pub target: HochschildHomology<R>,
    /// Chain-level composite from bar degree `d` to level `d` of the cyclic bar construction of `A`.
    pub chain_map: SparseMatrix<R::Elem>,
    /// Column `k` holds the target coordinates of the image of source generator `k`.
    pub matrix: Vec<Vec<R::Elem>>,
    pub chain_map_verified: bool,
}

impl<R: Ring> DennisTraceMap<R> {
    /// Target coordinates of the image of a bar cycle.
    pub fn apply_cycle(&self, z: &SparseVec<R::Elem>) -> Result<Vec<R::Elem>> {
        self.target.coordinates(&self.chain_map.apply(self.target_ring(), z))
    }

    fn target_ring(&self) -> &R {
        self.source.ring()
    }
}

/// Composite of `group_to_hh`, the map induced by `R[GL_n(A)] -> M_n(A)`, and the
/// multitrace, as a matrix from bar degree `d` to level `d` of `A`.
fn trace_composite<R: Ring>(a: &Algebra<R>, gl: &GeneralLinearGroup<R>, d: usize) -> SparseMatrix<R::Elem> {
    let ring = a.ring();
    let order = gl.group.order();
    let f = gl.embedding.matrix();
    let rows = a.rank().pow(d as u32 + 1);
    let mut acc = Accumulator::new(ring, rows);
    let cols = (0..order.pow(d as u32))
        .map(|idx| {
            let tuple = decode(idx, order, d);
            let cyc = decode(group_to_hh_index(&gl.group, &tuple), order, d + 1);
            let image = tensor_column(ring, f, &cyc);
            for (t, c) in multitrace_apply(a, gl.n, d, &image) {
                acc.add(ring, t, &c);
            }
            acc.take(ring)
        })
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

pub fn dennis_trace_homology<R: Ring>(a: &Algebra<R>, n: usize, d: usize) -> Result<DennisTraceMap<R>> {
    dennis_trace_homology_with(a, n, d, TraceLimits::default())
}

pub fn dennis_trace_homology_with<R: Ring>(
    a: &Algebra<R>,
    n: usize,
    d: usize,
    limits: TraceLimits,
) -> Result<DennisTraceMap<R>> {
    if d > limits.max_degree {
        return Err(Error::DegreeOutOfRange { degree: d, max: limits.max_degree });
    }
    let ring = a.ring();
    let gl = general_linear_group(a, n, limits.enumeration_cap)?;
    if gl.group.order() > limits.max_group_order {
        return Err(Error::CapExceeded(format!(
            "GL_{n}(A) has order {}, above the cap {}",
            gl.group.order(),
            limits.max_group_order
        )));
    }
    let bar = bar_complex(&gl.group, ring, d + 1)?;
    let source = bar.homology(d)?;
    let target = hochschild_homology(a, d)?;
    let chain_map = trace_composite(a, &gl, d);

    let cyc = CyclicModule::new(a, d + 1)?;
    let mut verified = true;
    for k in [d, d + 1] {
        if k == 0 {
            continue;
        }
        let upper = if k == d { chain_map.clone() } else { trace_composite(a, &gl, k) };
        let lower = if k == d { trace_composite(a, &gl, k - 1) } else { chain_map.clone() };
        verified &= cyc.boundary(k)?.compose(ring, &upper)? == lower.compose(ring, bar.differential(k))?;
    }
    if !verified {
        return Err(Error::Internal("Dennis trace composite is not a chain map".into()));
    }
    let matrix = source
        .representatives()
        .iter()
        .map(|z| target.coordinates(&chain_map.apply(ring, z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DennisTraceMap { degree: d, group: gl, source, target, chain_map, matrix, chain_map_verified: verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, ModRing};

    #[test]
    fn identity_and_minus_one_trace_to_zero() {
        let z = Algebra::base(Integers);
        let t = DennisTraceK1::new(&z).unwrap();
        assert!(t.evaluate(1, &[1.into()]).unwrap().coordinates.is_empty());
        assert!(t.evaluate(1, &[(-1).into()]).unwrap().coordinates.is_empty());
        let f2 = Algebra::base(ModRing::prime_field(2).unwrap());
        let c = dennis_trace_k1(&f2, 2, &[1, 0, 0, 1]).unwrap();
        assert!(c.coordinates.iter().all(|x| *x == 0));
        assert!(matches!(dennis_trace_k1(&f2, 2, &[1, 1, 1, 1]), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn dual_numbers_pipelines_agree() {
        let a = Algebra::truncated_polynomial(ModRing::prime_field(2).unwrap(), 2).unwrap();
        let k1 = dennis_trace_k1(&a, 1, &[1, 1]).unwrap();
        assert!(k1.coordinates.iter().any(|x| *x != 0));
        let map = dennis_trace_homology(&a, 1, 1).unwrap();
        assert!(map.chain_map_verified);
        assert_eq!(map.source.num_generators(), 1);
        assert_eq!(map.matrix[0], k1.coordinates);
    }

    #[test]
    fn degree_zero_sends_one_to_the_trace_of_the_identity() {
        let f3 = Algebra::base(ModRing::prime_field(3).unwrap());
        let map = dennis_trace_homology(&f3, 1, 0).unwrap();
        assert_eq!(map.matrix, vec![vec![1]]);
        // over F_2 the identity of M_2 has trace 2 = 0
        let f2 = Algebra::base(ModRing::prime_field(2).unwrap());
        let map = dennis_trace_homology(&f2, 2, 0).unwrap();
        assert_eq!(map.matrix, vec![vec![0]]);
        let c2 = dennis_trace_homology(&f3, 1, 1).unwrap();
        assert!(c2.source.is_zero());
    }
}
