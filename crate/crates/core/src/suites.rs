//! Seeded property suites over the whole engine. Each suite runs exhaustive
//! checks on a fixed zoo of inputs plus a few seeded random ones and reports
//! every violated instance.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraHom, FiniteGroup};
use crate::error::Result;
use crate::hochschild::{induced_chain_map, CyclicModule, NormalizedComplex};
use crate::linalg::SparseMatrix;
use crate::ring::{BaseRing, Integers, ModRing, Rationals, Ring};
use crate::trace::{bar_complex, k1_trace_chain, DennisTraceK1, dennis_trace_homology, dennis_trace_k1, group_to_hh, multitrace};
use crate::waldhausen::sigma_delta::{free_sigma_delta, ktheory_sigma_delta, sigma_delta_validate, Op};
use crate::waldhausen::{
    corrupted_fixtures, end_category, finite_modules, grothendieck_k0, k0_via_sdot, pointed_sets, trivial,
    validate_waldhausen, vect_gf, ws_diagonal, FiniteWaldhausenCategory,
};

/// Result of one suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

fn timed(name: &str, body: impl FnOnce(&mut Tally)) -> SuiteOutcome {
    let start = Instant::now();
    let mut t = Tally::default();
    body(&mut t);
    SuiteOutcome { name: name.into(), checks: t.checks, failures: t.failures, seconds: start.elapsed().as_secs_f64() }
}

/// Every suite, in a fixed order.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    let mut out = structural(seed);
    out.push(dennis_trace(seed));
    out.push(k0_agreement());
    out
}

/// The structural suites: cyclic modules, chain maps, Σ_Δ diagrams and the Waldhausen validator.
pub fn structural(seed: u64) -> Vec<SuiteOutcome> {
    vec![cyclic_modules(seed), chain_maps(), sigma_delta(), waldhausen_axioms()]
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Base,
    Truncated(usize),
    Cyclic(usize),
    Symmetric3,
    Matrix2,
}

fn build<R: Ring>(ring: R, kind: Kind) -> Result<Algebra<R>> {
    match kind {
        Kind::Base => Ok(Algebra::base(ring)),
        Kind::Truncated(n) => Algebra::truncated_polynomial(ring, n),
        Kind::Cyclic(n) => Ok(Algebra::group_algebra(&FiniteGroup::cyclic(n), ring)),
        Kind::Symmetric3 => Ok(Algebra::group_algebra(&FiniteGroup::symmetric(3), ring)),
        Kind::Matrix2 => Algebra::base(ring).matrix_algebra(2),
    }
}

fn zoo(seed: u64) -> Vec<(BaseRing, Kind)> {
    use BaseRing::*;
    let mut out = vec![
        (Integers, Kind::Base),
        (Rationals, Kind::Base),
        (PrimeField(2), Kind::Truncated(2)),
        (PrimeField(3), Kind::Truncated(3)),
        (Integers, Kind::Cyclic(2)),
        (Rationals, Kind::Cyclic(2)),
        (PrimeField(2), Kind::Cyclic(3)),
        (IntegersMod(4), Kind::Truncated(2)),
        (PrimeField(2), Kind::Matrix2),
        (Integers, Kind::Symmetric3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = [Integers, Rationals, PrimeField(2), PrimeField(3), IntegersMod(4), IntegersMod(9)];
    for _ in 0..4 {
        let ring = rings[rng.gen_range(0..rings.len())];
        let kind = match rng.gen_range(0..3) {
            0 => Kind::Truncated(rng.gen_range(2..=4)),
            1 => Kind::Cyclic(rng.gen_range(1..=3)),
            _ => Kind::Base,
        };
        out.push((ring, kind));
    }
    out
}

fn algebra_checks<R: Ring>(a: &Algebra<R>, label: &str, t: &mut Tally) {
    let ring = a.ring();
    let r = a.rank();
    let top = (1..=3).rev().find(|&q| r.pow(q as u32 + 1) <= 1296).unwrap_or(1);
    t.check(a.validate().is_valid(), || format!("{label}: algebra axioms"));
    let Some(cyc) = t.ok(CyclicModule::new(a, top), || format!("{label}: cyclic bar")) else { return };
    let rep = cyc.validate();
    t.check(rep.is_valid(), || format!("{label}: cyclic identities: {rep}"));
    if let Some(c) = t.ok(cyc.hochschild_complex(), || format!("{label}: Hochschild complex")) {
        t.check(c.check_square_zero().is_ok(), || format!("{label}: b^2 != 0"));
    }
    let Some(n) = t.ok(NormalizedComplex::new(a, top), || format!("{label}: normalized complex")) else { return };
    t.check(n.chain_complex().check_square_zero().is_ok(), || format!("{label}: normalized b^2 != 0"));
    let d = |q: usize| n.chain_complex().differential(q).clone();
    for q in 0..top {
        let Some(bq) = t.ok(n.connes_b(q), || format!("{label}: B_{q}")) else { continue };
        if q + 2 <= top {
            if let Some(bq1) = t.ok(n.connes_b(q + 1), || format!("{label}: B_{}", q + 1)) {
                let zero = bq1.compose(ring, &bq).map(|m| m.is_zero()).unwrap_or(false);
                t.check(zero, || format!("{label}: B^2 != 0 at level {q}"));
            }
        }
        let mut sum = d(q + 1).compose(ring, &bq);
        if q >= 1 {
            sum = match (sum, n.connes_b(q - 1).and_then(|b| b.compose(ring, &d(q)))) {
                (Ok(x), Ok(y)) => x.add(ring, &y),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
        }
        t.check(sum.map(|m| m.is_zero()).unwrap_or(false), || format!("{label}: bB + Bb != 0 at level {q}"));
    }
}

/// Simplicial and cyclic identities, `b^2 = 0`, `B^2 = 0` and `bB + Bb = 0`.
pub fn cyclic_modules(seed: u64) -> SuiteOutcome {
    timed("cyclic-modules", |t| {
        for (base, kind) in zoo(seed) {
            let label = format!("{kind:?} over {base}");
            let run = |t: &mut Tally| -> Result<()> {
                crate::with_ring!(base, ring => {
                    let a = build(ring, kind)?;
                    algebra_checks(&a, &label, t);
                });
                Ok(())
            };
            let r = run(t);
            t.ok(r, || label.clone());
        }
    })
}

fn commutes<R: Ring>(ring: &R, top: &SparseMatrix<R::Elem>, f: &SparseMatrix<R::Elem>, g: &SparseMatrix<R::Elem>, bottom: &SparseMatrix<R::Elem>) -> bool {
    // top ∘ f == g ∘ bottom
    matches!((top.compose(ring, f), g.compose(ring, bottom)), (Ok(x), Ok(y)) if x == y)
}

fn group_to_hh_checks<R: Ring>(ring: R, group: &FiniteGroup, name: &str, t: &mut Tally) -> Result<()> {
    let top = if group.order() > 3 { 2 } else { 3 };
    let bar = bar_complex(group, &ring, top)?;
    let cyc = CyclicModule::new(&Algebra::group_algebra(group, ring.clone()), top)?;
    for q in 1..=top {
        let ok = commutes(&ring, &cyc.boundary(q)?, &group_to_hh(group, &ring, q), &group_to_hh(group, &ring, q - 1), bar.differential(q));
        t.check(ok, || format!("group_to_hh for {name} over {} fails at degree {q}", ring.base()));
    }
    Ok(())
}

fn induced_checks<R: Ring>(f: &AlgebraHom<R>, name: &str, t: &mut Tally) -> Result<()> {
    let ring = f.source().ring().clone();
    let (ca, cb) = (CyclicModule::new(f.source(), 2)?, CyclicModule::new(f.target(), 2)?);
    for q in 1..=2 {
        let (upper, lower) = (induced_chain_map(f, q)?, induced_chain_map(f, q - 1)?);
        for i in 0..=q {
            let ok = commutes(&ring, cb.face(q, i), &upper, &lower, ca.face(q, i));
            t.check(ok, || format!("induced map of {name} does not commute with d_{i} at level {q}"));
        }
        for j in 0..q {
            let ok = commutes(&ring, cb.degeneracy(q - 1, j), &lower, &upper, ca.degeneracy(q - 1, j));
            t.check(ok, || format!("induced map of {name} does not commute with s_{j} at level {}", q - 1));
        }
        let ok = commutes(&ring, cb.cyclic_operator(q), &upper, &upper, ca.cyclic_operator(q));
        t.check(ok, || format!("induced map of {name} does not commute with t at level {q}"));
    }
    Ok(())
}

fn multitrace_checks<R: Ring>(a: &Algebra<R>, n: usize, name: &str, t: &mut Tally) -> Result<()> {
    let ring = a.ring();
    let m = a.matrix_algebra(n)?;
    let (ca, cm) = (CyclicModule::new(a, 2)?, CyclicModule::new(&m, 2)?);
    for q in 1..=2 {
        let ok = commutes(ring, &ca.boundary(q)?, &multitrace(a, n, q), &multitrace(a, n, q - 1), &cm.boundary(q)?);
        t.check(ok, || format!("multitrace on M_{n}({name}) does not commute with b at level {q}"));
        let ok = commutes(ring, ca.cyclic_operator(q), &multitrace(a, n, q), &multitrace(a, n, q), cm.cyclic_operator(q));
        t.check(ok, || format!("multitrace on M_{n}({name}) does not commute with t at level {q}"));
    }
    Ok(())
}

/// All homomorphisms `g -> h` other than the trivial one, by brute force over small groups.
fn nontrivial_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut phi = vec![0; g.order()];
    loop {
        if phi.iter().any(|&x| x != h.identity()) && g.is_homomorphism(h, &phi) {
            out.push(phi.clone());
        }
        let mut k = 0;
        while k < phi.len() {
            phi[k] += 1;
            if phi[k] < h.order() {
                break;
            }
            phi[k] = 0;
            k += 1;
        }
        if k == phi.len() {
            return out;
        }
    }
}

/// Chain-map identities for `group_to_hh`, induced maps of algebra homomorphisms and the multitrace.
pub fn chain_maps() -> SuiteOutcome {
    timed("chain-maps", |t| {
        let groups = [
            ("1", FiniteGroup::trivial()),
            ("C2", FiniteGroup::cyclic(2)),
            ("C3", FiniteGroup::cyclic(3)),
            ("S3", FiniteGroup::symmetric(3)),
        ];
        for (name, g) in &groups {
            let r = group_to_hh_checks(Integers, g, name, t);
            t.ok(r, || format!("group_to_hh over Z for {name}"));
            let r = ModRing::prime_field(2).and_then(|f2| group_to_hh_checks(f2, g, name, t));
            t.ok(r, || format!("group_to_hh over F2 for {name}"));
            let r = group_to_hh_checks(Rationals, g, name, t);
            t.ok(r, || format!("group_to_hh over Q for {name}"));
        }
        let pairs = [
            ("C4 -> C2", FiniteGroup::cyclic(4), FiniteGroup::cyclic(2)),
            ("C2 -> C4", FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)),
            ("S3 -> C2", FiniteGroup::symmetric(3), FiniteGroup::cyclic(2)),
            ("C3 -> S3", FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)),
        ];
        for (name, g, h) in &pairs {
            let homs = nontrivial_homs(g, h);
            t.check(!homs.is_empty(), || format!("{name}: no nontrivial homomorphism found"));
            if let Some(phi) = homs.first() {
                let r = AlgebraHom::from_group_hom(g, h, phi, Integers).and_then(|f| induced_checks(&f, name, t));
                t.ok(r, || format!("induced map of {name} over Z"));
                let r = ModRing::prime_field(3)
                    .and_then(|f3| AlgebraHom::from_group_hom(g, h, phi, f3))
                    .and_then(|f| induced_checks(&f, name, t));
                t.ok(r, || format!("induced map of {name} over F3"));
            }
        }
        let f = AlgebraHom::augmentation(&FiniteGroup::cyclic(3), Rationals);
        let r = induced_checks(&f, "augmentation of Q[C3]", t);
        t.ok(r, || "augmentation of Q[C3]".into());

        let r = ModRing::prime_field(2).and_then(|f2| {
            multitrace_checks(&Algebra::base(f2.clone()), 2, "F2", t)?;
            multitrace_checks(&Algebra::base(f2.clone()), 3, "F2", t)?;
            multitrace_checks(&Algebra::truncated_polynomial(f2, 2)?, 2, "F2[x]/x^2", t)
        });
        t.ok(r, || "multitrace over F2".into());
        let r = multitrace_checks(&Algebra::base(Integers), 2, "Z", t);
        t.ok(r, || "multitrace over Z".into());
        let r = multitrace_checks(&Algebra::group_algebra(&FiniteGroup::cyclic(2), Rationals), 2, "Q[C2]", t);
        t.ok(r, || "multitrace over Q[C2]".into());
    })
}

/// Σ_Δ axioms and index-1 removal isomorphisms for the K-theory diagram of
/// `vect(F2, <= 2)` with `n <= 2`, `k <= 2`, plus the free diagram and a
/// corrupted copy of it.
pub fn sigma_delta() -> SuiteOutcome {
    timed("sigma-delta", |t| {
        let Some(c) = t.ok(vect_gf(2, 2), || "vect(2, 2)".into()) else { return };
        let Some(x) = t.ok(ktheory_sigma_delta(&c, 2, 2), || "ktheory_sigma_delta".into()) else { return };
        let r = sigma_delta_validate(&x);
        t.check(r.is_valid(), || format!("K-theory diagram: {r}"));
        for (ks, sizes) in &x.sizes {
            if ks.len() >= x.n_max {
                continue;
            }
            // (k_1..k_n) -> (k_1..k_n, 1)
            let f: Vec<usize> = (0..ks.len()).collect();
            let op = Op::Inject { f, n: ks.len() + 1 };
            let mut longer = ks.clone();
            longer.push(1);
            for w in 0..sizes.len().min(x.levels(&longer)) {
                let bijective = x.maps.get(&(ks.clone(), w, op.clone())).is_some_and(|m| {
                    let mut seen = vec![false; m.len()];
                    m.len() == sizes[w] && m.iter().all(|&y| y < m.len() && !std::mem::replace(&mut seen[y], true))
                });
                t.check(bijective, || format!("index-1 removal {ks:?} -> {longer:?} at w-level {w} is not a bijection"));
            }
        }
        let free = free_sigma_delta(2, 2, 2);
        let r = sigma_delta_validate(&free);
        t.check(r.is_valid(), || format!("free diagram: {r}"));
        let mut bad = free;
        bad.sizes.insert(vec![0], vec![2; 3]);
        t.check(sigma_delta_validate(&bad).mentions("basepoint"), || "corrupted free diagram accepted".into());
    })
}

/// Built-in families of the given small sizes.
pub fn builtin_families() -> Result<Vec<FiniteWaldhausenCategory>> {
    Ok(vec![
        trivial()?,
        vect_gf(2, 1)?,
        vect_gf(2, 2)?,
        vect_gf(3, 1)?,
        pointed_sets(1)?,
        pointed_sets(3)?,
        finite_modules(4, 4)?,
        finite_modules(3, 9)?,
    ])
}

/// The axiom validator accepts every built-in family and `End` of small ones,
/// rejects each corrupted fixture under the expected rule, and the diagonal
/// `w_n S_n` satisfies the simplicial identities.
pub fn waldhausen_axioms() -> SuiteOutcome {
    timed("waldhausen-axioms", |t| {
        let Some(families) = t.ok(builtin_families(), || "built-in families".into()) else { return };
        for c in &families {
            let r = validate_waldhausen(c);
            t.check(r.is_valid(), || format!("{} rejected: {r}", c.name()));
        }
        for c in families.iter().take(2) {
            if let Some(e) = t.ok(end_category(c), || format!("End({})", c.name())) {
                let r = validate_waldhausen(&e.category);
                t.check(r.is_valid(), || format!("End({}) rejected: {r}", c.name()));
                let r = e.validate_functors(c);
                t.check(r.is_valid(), || format!("End({}) functors: {r}", c.name()));
            }
        }
        if let Some(fixtures) = t.ok(corrupted_fixtures(), || "fixtures".into()) {
            for f in fixtures {
                let r = validate_waldhausen(&f.category);
                t.check(r.mentions(f.rule), || format!("fixture {} not rejected under {}: {r}", f.name, f.rule));
            }
        }
        if let Some(c) = t.ok(vect_gf(2, 1), || "vect(2, 1)".into()) {
            let r = ws_diagonal(&c, 2).and_then(|d| d.check_simplicial_identities());
            if let Some(r) = t.ok(r, || "diagonal of vect(2, 1)".into()) {
                t.check(r.is_valid(), || format!("diagonal of vect(2, 1): {r}"));
            }
        }
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4)))
}

fn multiplicativity<R: Ring>(a: &Algebra<R>, pairs: &[(Vec<R::Elem>, Vec<R::Elem>)], name: &str, t: &mut Tally) -> Result<()> {
    let ring = a.ring();
    let k1 = DennisTraceK1::new(a)?;
    for (u, v) in pairs {
        let uv = a.mul(u, v);
        let (zu, zv, zuv) = (k1_trace_chain(a, 1, u)?, k1_trace_chain(a, 1, v)?, k1_trace_chain(a, 1, &uv)?);
        let mut diff: Vec<(usize, R::Elem)> = zuv;
        diff.extend(zu.into_iter().chain(zv).map(|(i, c)| (i, ring.neg(&c))));
        let diff = crate::linalg::sparse::normalize(ring, diff);
        let ok = k1.is_boundary(&diff)?;
        t.check(ok, || {
            format!("{name}: trace({}) - trace({}) - trace({}) is not a boundary", a.format_element(&uv), a.format_element(u), a.format_element(v))
        });
    }
    Ok(())
}

/// Dennis trace coherence: the degree-one image of the generator of
/// `H_1(BGL_1(F2[x]/x^2); F2)` equals the K_1 trace of `1 + x`, and the K_1
/// trace is additive on 20 random unit pairs in `Q[C2]` and `Z[C2]`.
pub fn dennis_trace(seed: u64) -> SuiteOutcome {
    timed("dennis-trace", |t| {
        let run = |t: &mut Tally| -> Result<()> {
            let a = Algebra::truncated_polynomial(ModRing::prime_field(2)?, 2)?;
            let map = dennis_trace_homology(&a, 1, 1)?;
            let k1 = dennis_trace_k1(&a, 1, &[1, 1])?;
            t.check(map.source.num_generators() == 1, || "H_1(BGL_1(F2[x]/x^2); F2) is not one-dimensional".into());
            t.check(map.matrix.first() == Some(&k1.coordinates), || {
                format!("homology trace {:?} differs from K_1 trace {:?}", map.matrix, k1.coordinates)
            });
            Ok(())
        };
        let r = run(t);
        t.ok(r, || "dual numbers".into());

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c2 = FiniteGroup::cyclic(2);
        let qa = Algebra::group_algebra(&c2, Rationals);
        let mut pairs = Vec::new();
        while pairs.len() < 20 {
            let mut unit = || loop {
                let (x, y) = (random_rational(&mut rng), random_rational(&mut rng));
                if x != y && x != -y.clone() {
                    return vec![x, y];
                }
            };
            let (u, v) = (unit(), unit());
            pairs.push((u, v));
        }
        let r = multiplicativity(&qa, &pairs, "Q[C2]", t);
        t.ok(r, || "Q[C2]".into());

        let za = Algebra::group_algebra(&c2, Integers);
        let units: [[i64; 2]; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];
        let pick = |rng: &mut ChaCha8Rng| units[rng.gen_range(0..4)].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let pairs: Vec<_> = (0..20).map(|_| (pick(&mut rng), pick(&mut rng))).collect();
        let r = multiplicativity(&za, &pairs, "Z[C2]", t);
        t.ok(r, || "Z[C2]".into());
    })
}

/// `k0_via_sdot` and `grothendieck_k0` agree on the three reference categories.
pub fn k0_agreement() -> SuiteOutcome {
    timed("k0-agreement", |t| {
        let cats = [trivial(), vect_gf(2, 2), finite_modules(4, 4)];
        for c in cats {
            let Some(c) = t.ok(c, || "category".into()) else { continue };
            let (a, b) = (k0_via_sdot(&c), grothendieck_k0(&c));
            if let (Some(a), Some(b)) = (t.ok(a, || format!("{}: S-construction", c.name())), t.ok(b, || format!("{}: presentation", c.name()))) {
                t.check(a.group == b.group, || format!("{}: {} via S versus {} via presentation", c.name(), a.group, b.group));
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_is_deterministic() {
        assert_eq!(format!("{:?}", zoo(7)), format!("{:?}", zoo(7)));
    }

    #[test]
    fn nontrivial_homs_of_small_groups() {
        assert_eq!(nontrivial_homs(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)).len(), 1);
        assert_eq!(nontrivial_homs(&FiniteGroup::symmetric(3), &FiniteGroup::cyclic(2)).len(), 1);
        assert!(nontrivial_homs(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(2)).is_empty());
    }
}
