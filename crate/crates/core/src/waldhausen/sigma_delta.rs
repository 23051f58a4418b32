//! Σ_Δ-diagrams: pointed multisimplicial sets `X_{(n; k_1..k_n)}`, each a
//! pointed simplicial set in an extra internal direction `w`, acted on by
//! injections `f: {0..m-1} -> {0..n-1}` (new directions get index 1) and by
//! faces and degeneracies in every direction. Diagrams are stored as explicit
//! finite sets, truncated at `k_i <= k_cap` and at a per-entry `w` level.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::waldhausen::category::FiniteWaldhausenCategory;
use crate::waldhausen::cube::Cube;
use crate::waldhausen::sdot::{s_diagrams, w_chains, weak_maps_all, DEFAULT_SET_CAP, MAX_S_DEPTH};

/// Entry index `(k_1, ..., k_n)`.
pub type Entry = Vec<usize>;

/// Marks an element whose image is not among the enumerated elements.
pub const MISSING: usize = usize::MAX;

/// A generating operator of the indexing category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    SFace { dir: usize, j: usize },
    SDegeneracy { dir: usize, j: usize },
    WFace { j: usize },
    WDegeneracy { j: usize },
    /// The injection `f: {0..m-1} -> {0..n-1}` with identity simplicial parts.
    Inject { f: Vec<usize>, n: usize },
}

impl Op {
    /// Target `(entry, w)` of the operator applied at `(ks, w)`, if it applies.
    pub fn target(&self, ks: &[usize], w: usize) -> Option<(Entry, usize)> {
        match self {
            Op::SFace { dir, j } => {
                let k = *ks.get(*dir)?;
                (k >= 1 && *j <= k).then(|| (with(ks, *dir, k - 1), w))
            }
            Op::SDegeneracy { dir, j } => {
                let k = *ks.get(*dir)?;
                (*j <= k).then(|| (with(ks, *dir, k + 1), w))
            }
            Op::WFace { j } => (w >= 1 && *j <= w).then(|| (ks.to_vec(), w - 1)),
            Op::WDegeneracy { j } => (*j <= w).then(|| (ks.to_vec(), w + 1)),
            Op::Inject { f, n } => {
                if f.len() != ks.len() || f.iter().any(|&x| x >= *n) || !is_injective(f) {
                    return None;
                }
                let mut out = vec![1; *n];
                for (i, &s) in f.iter().enumerate() {
                    out[s] = ks[i];
                }
                Some((out, w))
            }
        }
    }
}

fn with(ks: &[usize], dir: usize, k: usize) -> Entry {
    let mut v = ks.to_vec();
    v[dir] = k;
    v
}

fn is_injective(f: &[usize]) -> bool {
    f.iter().enumerate().all(|(i, x)| !f[..i].contains(x))
}

/// All injections `{0..m-1} -> {0..n-1}` in lexicographic order.
pub fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, n: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        for x in 0..n {
            if !acc.contains(&x) {
                acc.push(x);
                go(m, n, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// All entries `(k_1..k_n)` with `n <= n_max` and `k_i <= k_cap`.
pub fn entries(n_max: usize, k_cap: usize) -> Vec<Entry> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n_max {
        layer = layer
            .iter()
            .flat_map(|ks: &Entry| {
                (0..=k_cap).map(move |k| {
                    let mut v = ks.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A finite truncation of a Σ_Δ-diagram. Element 0 of every set is the basepoint.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SigmaDeltaDiagram {
    pub n_max: usize,
    pub k_cap: usize,
    /// Number of elements at each enumerated `w` level.
    pub sizes: BTreeMap<Entry, Vec<usize>>,
    /// `(entry, w, op)` to the image of each element.
    pub maps: BTreeMap<(Entry, usize, Op), Vec<usize>>,
    /// Entries whose `w` direction was cut short by a cap, with the last level kept.
    pub truncated: Vec<(Entry, usize)>,
}

impl SigmaDeltaDiagram {
    pub fn levels(&self, ks: &[usize]) -> usize {
        self.sizes.get(ks).map_or(0, Vec::len)
    }

    pub fn size(&self, ks: &[usize], w: usize) -> Option<usize> {
        self.sizes.get(ks)?.get(w).copied()
    }

    /// Image of `x` under a path of operators applied first to last, if every map is recorded.
    pub fn apply_path(&self, ks: &[usize], w: usize, path: &[Op], x: usize) -> Option<(Entry, usize, usize)> {
        let (mut ks, mut w, mut x) = (ks.to_vec(), w, x);
        for op in path {
            let map = self.maps.get(&(ks.clone(), w, op.clone()))?;
            let (k2, w2) = op.target(&ks, w)?;
            x = *map.get(x)?;
            if x == MISSING {
                return None;
            }
            ks = k2;
            w = w2;
        }
        Some((ks, w, x))
    }

    /// Every operator that applies at `(ks, w)` and lands inside the truncation.
    pub fn operators_at(&self, ks: &[usize], w: usize) -> Vec<Op> {
        let mut ops = Vec::new();
        for dir in 0..ks.len() {
            for j in 0..=ks[dir] {
                if ks[dir] >= 1 {
                    ops.push(Op::SFace { dir, j });
                }
                if ks[dir] < self.k_cap {
                    ops.push(Op::SDegeneracy { dir, j });
                }
            }
        }
        for j in 0..=w {
            if w >= 1 {
                ops.push(Op::WFace { j });
            }
            ops.push(Op::WDegeneracy { j });
        }
        for n in ks.len()..=self.n_max {
            for f in injections(ks.len(), n) {
                ops.push(Op::Inject { f, n });
            }
        }
        ops.retain(|op| op.target(ks, w).is_some_and(|(k2, w2)| self.size(&k2, w2).is_some()));
        ops
    }
}

/// Checks the diagram axioms on every recorded instance:
/// entries with some `k_i = 0` are the basepoint alone (`basepoint`), maps are
/// pointed and land in range (`pointed`, `closure`), injections with identity
/// simplicial parts act bijectively (`injection-iso`), the simplicial
/// identities hold in each direction and distinct directions commute
/// (`simplicial`), injections compose (`functoriality`) and commute with the
/// simplicial operators (`naturality`).
pub fn sigma_delta_validate(x: &SigmaDeltaDiagram) -> ValidationReport {
    let mut r = ValidationReport::new();
    let push = |r: &mut ValidationReport, rule: &str, detail: String| {
        if r.failures.iter().filter(|f| f.rule == rule).count() < 8 {
            r.push(rule, detail);
        }
    };
    for (ks, sizes) in &x.sizes {
        if sizes.iter().any(|&s| s == 0) {
            push(&mut r, "pointed", format!("entry {ks:?} has an empty level"));
        }
        if ks.contains(&0) && sizes.iter().any(|&s| s != 1) {
            push(&mut r, "basepoint", format!("entry {ks:?} has a zero index but {sizes:?} elements"));
        }
    }
    for ((ks, w, op), map) in &x.maps {
        let Some(src) = x.size(ks, *w) else {
            push(&mut r, "closure", format!("map {op:?} from missing level {ks:?}/{w}"));
            continue;
        };
        let Some((k2, w2)) = op.target(ks, *w) else {
            push(&mut r, "closure", format!("{op:?} does not apply at {ks:?}/{w}"));
            continue;
        };
        let Some(dst) = x.size(&k2, w2) else {
            push(&mut r, "closure", format!("{op:?} at {ks:?}/{w} targets a missing level"));
            continue;
        };
        if map.len() != src || map.iter().any(|&y| y >= dst) {
            push(&mut r, "closure", format!("{op:?} at {ks:?}/{w} leaves the enumerated sets"));
            continue;
        }
        if map.first() != Some(&0) {
            push(&mut r, "pointed", format!("{op:?} at {ks:?}/{w} moves the basepoint"));
        }
        if let Op::Inject { f, .. } = op {
            let mut seen = vec![false; dst];
            let bijective = src == dst && map.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
            if !bijective {
                push(&mut r, "injection-iso", format!("injection {f:?} at {ks:?}/{w} is not a bijection"));
            }
            let identity = f.iter().enumerate().all(|(i, &s)| i == s) && f.len() == k2.len();
            if identity && map.iter().enumerate().any(|(i, &y)| i != y) {
                push(&mut r, "functoriality", format!("identity injection at {ks:?}/{w} acts nontrivially"));
            }
        }
    }
    for (ks, sizes) in &x.sizes {
        for w in 0..sizes.len() {
            for (lhs, rhs, rule) in relations(x, ks, w) {
                for e in 0..sizes[w] {
                    let (a, b) = (x.apply_path(ks, w, &lhs, e), x.apply_path(ks, w, &rhs, e));
                    if let (Some(a), Some(b)) = (a, b) {
                        if a != b {
                            push(&mut r, rule, format!("{lhs:?} vs {rhs:?} on element {e} of {ks:?}/{w}"));
                            break;
                        }
                    }
                }
            }
        }
    }
    r
}

type Relation = (Vec<Op>, Vec<Op>, &'static str);

/// Simplicial identities for one direction at index `k`, with `face(j)` and `degen(j)`.
fn simplicial_relations(k: usize, face: &dyn Fn(usize) -> Op, degen: &dyn Fn(usize) -> Op, out: &mut Vec<Relation>) {
    for j in 0..=k {
        for i in 0..j {
            out.push((vec![face(j), face(i)], vec![face(i), face(j - 1)], "simplicial"));
        }
    }
    for j in 0..=k {
        for i in 0..=j {
            out.push((vec![degen(j), degen(i)], vec![degen(i), degen(j + 1)], "simplicial"));
        }
        for i in 0..=k + 1 {
            let rhs = if i < j {
                vec![face(i), degen(j - 1)]
            } else if i == j || i == j + 1 {
                vec![]
            } else {
                vec![face(i - 1), degen(j)]
            };
            out.push((vec![degen(j), face(i)], rhs, "simplicial"));
        }
    }
}

fn relations(x: &SigmaDeltaDiagram, ks: &[usize], w: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for dir in 0..ks.len() {
        simplicial_relations(ks[dir], &|j| Op::SFace { dir, j }, &|j| Op::SDegeneracy { dir, j }, &mut out);
    }
    simplicial_relations(w, &|j| Op::WFace { j }, &|j| Op::WDegeneracy { j }, &mut out);
    let ops = x.operators_at(ks, w);
    let dir_of = |op: &Op| match op {
        Op::SFace { dir, .. } | Op::SDegeneracy { dir, .. } => Some(*dir),
        Op::WFace { .. } | Op::WDegeneracy { .. } => Some(usize::MAX),
        Op::Inject { .. } => None,
    };
    for a in &ops {
        for b in &ops {
            match (dir_of(a), dir_of(b)) {
                (Some(p), Some(q)) if p < q => {
                    out.push((vec![a.clone(), b.clone()], vec![b.clone(), a.clone()], "simplicial"));
                }
                _ => {}
            }
        }
    }
    for op in &ops {
        let Op::Inject { f, n } = op else { continue };
        // composition with every further injection
        for n2 in *n..=x.n_max {
            for g in injections(*n, n2) {
                let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                out.push((
                    vec![op.clone(), Op::Inject { f: g.clone(), n: n2 }],
                    vec![Op::Inject { f: gf, n: n2 }],
                    "functoriality",
                ));
            }
        }
        // naturality against the simplicial operators
        for s in &ops {
            let moved = match s {
                Op::SFace { dir, j } => Op::SFace { dir: f[*dir], j: *j },
                Op::SDegeneracy { dir, j } => Op::SDegeneracy { dir: f[*dir], j: *j },
                Op::WFace { .. } | Op::WDegeneracy { .. } => s.clone(),
                Op::Inject { .. } => continue,
            };
            out.push((vec![s.clone(), op.clone()], vec![op.clone(), moved], "naturality"));
        }
    }
    out
}

/// The free diagram on the two-point pointed set: `X_{(n; k)} = S^1_{k_1} ∧ ... ∧ S^1_{k_n}`
/// with `S^1 = Δ[1]/∂Δ[1]` and a constant `w` direction. A non-basepoint
/// element of `S^1_k` is a monotone map `[k] -> [1]` with `z` zeros, `1 <= z <= k`.
pub fn free_sigma_delta(n_max: usize, k_cap: usize, w_cap: usize) -> SigmaDeltaDiagram {
    let mut x = SigmaDeltaDiagram { n_max, k_cap, ..Default::default() };
    let elements = |ks: &[usize]| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for &k in ks {
            out = out.iter().flat_map(|t| (1..=k).map(move |z| [t.clone(), vec![z]].concat())).collect();
        }
        out
    };
    let mut index: BTreeMap<Entry, HashMap<Vec<usize>, usize>> = BTreeMap::new();
    for ks in entries(n_max, k_cap) {
        let els = elements(&ks);
        // position 0 is the basepoint, then the tuples
        index.insert(ks.clone(), els.iter().cloned().enumerate().map(|(i, t)| (t, i + 1)).collect());
        x.sizes.insert(ks, vec![els.len() + 1; w_cap + 1]);
    }
    let keys: Vec<Entry> = x.sizes.keys().cloned().collect();
    for ks in keys {
        let els = elements(&ks);
        for w in 0..=w_cap {
            for op in x.operators_at(&ks, w) {
                let (k2, _) = op.target(&ks, w).expect("applicable");
                let mut map = vec![0];
                for t in &els {
                    let image: Option<Vec<usize>> = match &op {
                        Op::SFace { dir, j } => {
                            let z = t[*dir] - usize::from(*j < t[*dir]);
                            (z >= 1 && z <= k2[*dir]).then(|| with(t, *dir, z))
                        }
                        Op::SDegeneracy { dir, j } => Some(with(t, *dir, t[*dir] + usize::from(*j < t[*dir]))),
                        Op::WFace { .. } | Op::WDegeneracy { .. } => Some(t.clone()),
                        Op::Inject { f, n } => {
                            let mut out = vec![1; *n];
                            for (i, &s) in f.iter().enumerate() {
                                out[s] = t[i];
                            }
                            Some(out)
                        }
                    };
                    map.push(image.map_or(0, |im| index[&k2][&im]));
                }
                x.maps.insert((ks.clone(), w, op), map);
            }
        }
    }
    x
}

/// Limits for [`ktheory_sigma_delta_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaDeltaLimits {
    /// Highest `w` level enumerated.
    pub w_cap: usize,
    /// Entries with more vertices than this keep only `w` level 0.
    pub w_vertex_cap: usize,
    /// Ceiling on any single enumerated set.
    pub set_cap: usize,
}

impl Default for SigmaDeltaLimits {
    fn default() -> Self {
        SigmaDeltaLimits { w_cap: 1, w_vertex_cap: 500, set_cap: DEFAULT_SET_CAP }
    }
}

/// The K-theory diagram `X_{(n; k)} = ob w_• S^{(n)}_{k_1..k_n} C`.
pub fn ktheory_sigma_delta(c: &FiniteWaldhausenCategory, n_max: usize, k_cap: usize) -> Result<SigmaDeltaDiagram> {
    ktheory_sigma_delta_with(c, n_max, k_cap, SigmaDeltaLimits::default())
}

pub fn ktheory_sigma_delta_with(
    c: &FiniteWaldhausenCategory,
    n_max: usize,
    k_cap: usize,
    limits: SigmaDeltaLimits,
) -> Result<SigmaDeltaDiagram> {
    if n_max > MAX_S_DEPTH || k_cap > 2 {
        return Err(Error::CapExceeded(format!("Σ_Δ diagram needs n <= {MAX_S_DEPTH} and k <= 2, got {n_max} and {k_cap}")));
    }
    let mut x = SigmaDeltaDiagram { n_max, k_cap, ..Default::default() };
    let mut elements: BTreeMap<(Entry, usize), Vec<Cube>> = BTreeMap::new();
    for ks in entries(n_max, k_cap) {
        let base = s_diagrams(c, &ks, limits.set_cap)?;
        let top = if base.len() > limits.w_vertex_cap { 0 } else { limits.w_cap };
        if top < limits.w_cap {
            x.truncated.push((ks.clone(), top));
        }
        let maps = if top > 0 { weak_maps_all(c, &base) } else { vec![Vec::new(); base.len()] };
        let mut sizes = Vec::new();
        for w in 0..=top {
            let level = w_chains(c, &base, &maps, w, limits.set_cap)?;
            sizes.push(level.len());
            elements.insert((ks.clone(), w), level);
        }
        x.sizes.insert(ks, sizes);
    }
    let index: BTreeMap<(Entry, usize), HashMap<&Cube, usize>> =
        elements.iter().map(|(key, v)| (key.clone(), v.iter().enumerate().map(|(i, e)| (e, i)).collect())).collect();
    for ((ks, w), els) in &elements {
        for op in x.operators_at(ks, *w) {
            let (k2, w2) = op.target(ks, *w).expect("applicable");
            let target = &index[&(k2.clone(), w2)];
            let map = els
                .iter()
                .map(|e| target.get(&act(c, e, &op, &k2)).copied().unwrap_or(MISSING))
                .collect();
            x.maps.insert((ks.clone(), *w, op), map);
        }
    }
    Ok(x)
}

/// Action of a generator on a chain cube (axis 0 is `w`, pair `p` on axes `1 + 2p`, `2 + 2p`).
fn act(c: &FiniteWaldhausenCategory, e: &Cube, op: &Op, target: &[usize]) -> Cube {
    match op {
        Op::SFace { dir, j } => e.delete(c, 1 + 2 * dir, *j).delete(c, 2 + 2 * dir, *j),
        Op::SDegeneracy { dir, j } => e.duplicate(c, 1 + 2 * dir, *j).duplicate(c, 2 + 2 * dir, *j),
        Op::WFace { j } => e.delete(c, 0, *j),
        Op::WDegeneracy { j } => e.duplicate(c, 0, *j),
        Op::Inject { f, .. } => embed(c, e, f, target),
    }
}

/// Moves pair `i` to slot `f[i]` and fills the other slots with index-1
/// directions whose only nonzero cell is `(0, 1)`.
fn embed(c: &FiniteWaldhausenCategory, e: &Cube, f: &[usize], ks: &[usize]) -> Cube {
    let mut shape = vec![e.shape()[0]];
    shape.extend(ks.iter().flat_map(|&k| [k + 1, k + 1]));
    let template = Cube::zero(c, shape.clone());
    let n = ks.len();
    let inserted: Vec<usize> = (0..n).filter(|s| !f.contains(s)).collect();
    let old_coords = |co: &[usize]| -> Option<Vec<usize>> {
        if inserted.iter().any(|&s| (co[1 + 2 * s], co[2 + 2 * s]) != (0, 1)) {
            return None;
        }
        let mut o = vec![co[0]];
        for &s in f {
            o.push(co[1 + 2 * s]);
            o.push(co[2 + 2 * s]);
        }
        Some(o)
    };
    // axis of the new cube -> axis of the old one
    let mut axis_map = vec![None; shape.len()];
    axis_map[0] = Some(0);
    for (i, &s) in f.iter().enumerate() {
        axis_map[1 + 2 * s] = Some(1 + 2 * i);
        axis_map[2 + 2 * s] = Some(2 + 2 * i);
    }
    let cells = template.num_cells();
    let mut objects = vec![c.zero(); cells];
    let mut steps = vec![vec![crate::waldhausen::cube::NO_STEP; cells]; shape.len()];
    let old: Vec<Option<usize>> = (0..cells).map(|x| old_coords(&template.coords(x)).map(|o| e.index(&o))).collect();
    for x in 0..cells {
        if let Some(o) = old[x] {
            objects[x] = e.object(o);
        }
    }
    for x in 0..cells {
        for (a, st) in steps.iter_mut().enumerate() {
            if !template.can_step(x, a) {
                continue;
            }
            let y = x + template.stride(a);
            st[x] = match (old[x], old[y]) {
                (Some(o), Some(_)) => e.step(axis_map[a].expect("old axis"), o),
                (Some(_), None) => c.to_zero(objects[x]),
                (None, Some(_)) => c.from_zero(objects[y]),
                (None, None) => c.identity(c.zero()),
            };
        }
    }
    Cube::new(shape, objects, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::families::{trivial, vect_gf};

    #[test]
    fn injections_and_entries() {
        assert_eq!(injections(1, 2), vec![vec![0], vec![1]]);
        assert_eq!(injections(2, 2), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(injections(0, 2), vec![Vec::<usize>::new()]);
        assert_eq!(entries(2, 2).len(), 1 + 3 + 9);
    }

    #[test]
    fn free_diagram_is_valid() {
        let x = free_sigma_delta(2, 2, 1);
        assert_eq!(x.size(&[2, 2], 0), Some(5));
        let r = sigma_delta_validate(&x);
        assert!(r.is_valid(), "{r}");
        let mut bad = x.clone();
        bad.sizes.insert(vec![0], vec![2, 2]);
        assert!(sigma_delta_validate(&bad).mentions("basepoint"));
    }

    #[test]
    fn trivial_category_gives_a_valid_diagram() {
        let x = ktheory_sigma_delta(&trivial().unwrap(), 2, 2).unwrap();
        assert!(x.sizes.values().all(|s| s.iter().all(|&n| n == 1)));
        assert!(sigma_delta_validate(&x).is_valid());
    }

    #[test]
    fn vect_one_diagram_is_valid() {
        let c = vect_gf(2, 1).unwrap();
        let x = ktheory_sigma_delta(&c, 2, 2).unwrap();
        let r = sigma_delta_validate(&x);
        assert!(r.is_valid(), "{r}");
        assert!(x.truncated.is_empty());
        // index-1 removal: (k) -> (k, 1) is a bijection on every level
        for k in 0..=2 {
            for w in 0..=1 {
                let m = &x.maps[&(vec![k], w, Op::Inject { f: vec![0], n: 2 })];
                assert_eq!(m.len(), x.size(&[k, 1], w).unwrap());
            }
        }
    }
}
