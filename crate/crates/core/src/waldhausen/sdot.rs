//! Enumeration of `ob S^{(n)}_{k_1..k_n} C` for `n <= 2` and of weak
//! equivalences between such diagrams.
//!
//! A diagram is a [`Cube`] over `[k_1] x [k_1] x ... x [k_n] x [k_n]`, pair `p`
//! occupying axes `2p` (the `i` coordinate) and `2p + 1` (the `j` coordinate).
//! The row with every `i = 0` is a diagram of cofibrations whose latching
//! maps are cofibrations; every other cell is an iterated quotient, chosen as
//! a recorded pushout composed with an arbitrary isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::waldhausen::category::FiniteWaldhausenCategory;
use crate::waldhausen::cube::{Cube, NO_STEP};

/// Largest number of iterated S-directions supported.
pub const MAX_S_DEPTH: usize = 2;

/// Default ceiling on the size of any enumerated set.
pub const DEFAULT_SET_CAP: usize = 200_000;

fn shape_of(ks: &[usize]) -> Vec<usize> {
    ks.iter().flat_map(|&k| [k + 1, k + 1]).collect()
}

/// `(i, j)` coordinates per pair.
fn pairs_of(coords: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    coords.chunks(2).map(|p| (p[0], p[1]))
}

fn is_zero_cell(coords: &[usize]) -> bool {
    pairs_of(coords).any(|(i, j)| i >= j)
}

fn is_row0(coords: &[usize]) -> bool {
    pairs_of(coords).all(|(i, _)| i == 0)
}

/// Row-0 cell with the same `j` coordinates.
fn row0_of(coords: &[usize]) -> Vec<usize> {
    coords.chunks(2).flat_map(|p| [0, p[1]]).collect()
}

struct Builder<'a> {
    c: &'a FiniteWaldhausenCategory,
    ks: Vec<usize>,
    template: Cube,
    cap: usize,
    out: Vec<Cube>,
}

impl<'a> Builder<'a> {
    fn cell(&self, coords: &[usize]) -> usize {
        self.template.index(coords)
    }

    fn coords(&self, cell: usize) -> Vec<usize> {
        self.template.coords(cell)
    }

    /// Row-0 cells with every `j >= 1`, in index order.
    fn row0_cells(&self) -> Vec<usize> {
        (0..self.template.num_cells())
            .filter(|&x| {
                let co = self.coords(x);
                is_row0(&co) && !is_zero_cell(&co)
            })
            .collect()
    }

    /// Nonzero cells off row 0, ordered by how many pairs have `i >= 1`.
    fn quotient_cells(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.template.num_cells())
            .filter(|&x| {
                let co = self.coords(x);
                !is_row0(&co) && !is_zero_cell(&co)
            })
            .collect();
        v.sort_by_key(|&x| (pairs_of(&self.coords(x)).filter(|&(i, _)| i > 0).count(), x));
        v
    }

    fn zero_step(&self, src_obj: usize, dst_obj: usize) -> usize {
        let c = self.c;
        if src_obj == c.zero() {
            c.from_zero(dst_obj)
        } else {
            c.to_zero(src_obj)
        }
    }

    fn run(&mut self) -> Result<()> {
        let row0 = self.row0_cells();
        let mut objects = vec![self.c.zero(); self.template.num_cells()];
        let mut steps: Vec<Vec<usize>> = vec![vec![NO_STEP; objects.len()]; self.template.shape().len()];
        self.fill_row0(&row0, 0, &mut objects, &mut steps)
    }

    fn fill_row0(&mut self, row0: &[usize], pos: usize, objects: &mut Vec<usize>, steps: &mut Vec<Vec<usize>>) -> Result<()> {
        if self.out.len() >= self.cap {
            return Err(Error::CapExceeded(format!("more than {} diagrams in S{:?}", self.cap, self.ks)));
        }
        if pos == row0.len() {
            let quot = self.quotient_cells();
            let mut pis = vec![NO_STEP; objects.len()];
            for &x in row0 {
                pis[x] = self.c.identity(objects[x]);
            }
            return self.fill_quotients(&quot, 0, objects, steps, &mut pis);
        }
        let c = self.c;
        let x = row0[pos];
        let n = self.ks.len();
        // Latching object P with legs from the neighbours, and the axes they step along.
        let (p_obj, legs): (usize, Vec<(usize, usize)>) = if n == 1 {
            let prev = x - self.template.stride(1);
            let leg = if is_zero_cell(&self.coords(prev)) { c.from_zero(c.zero()) } else { c.identity(objects[prev]) };
            (objects[prev], vec![(1, leg)])
        } else {
            // U differs on axis 1, L on axis 3, Q on both.
            let (s1, s3) = (self.template.stride(1), self.template.stride(3));
            let q = x - s1 - s3;
            let q_zero = is_zero_cell(&self.coords(q));
            let q_to_u = if q_zero { c.from_zero(objects[x - s1]) } else { steps[3][q] };
            let q_to_l = if q_zero { c.from_zero(objects[x - s3]) } else { steps[1][q] };
            match c.witness(q_to_u, q_to_l) {
                Some(w) => (w.object, vec![(1, w.leg_b), (3, w.leg_c)]),
                None => return Ok(()),
            }
        };
        let choices: Vec<usize> = c.out_of(p_obj).iter().copied().filter(|&f| c.is_cofibration(f)).collect();
        for cof in choices {
            objects[x] = c.dst(cof);
            for &(axis, leg) in &legs {
                let prev = x - self.template.stride(axis);
                steps[axis][prev] = c.comp(cof, leg);
            }
            self.fill_row0(row0, pos + 1, objects, steps)?;
        }
        objects[x] = c.zero();
        Ok(())
    }

    /// Composite along row 0 from `from` to `to` (row-0 coordinates).
    fn row0_map(&self, objects: &[usize], steps: &[Vec<usize>], from: &[usize], to: &[usize]) -> usize {
        let c = self.c;
        if is_zero_cell(from) {
            return if is_zero_cell(to) { c.identity(c.zero()) } else { c.from_zero(objects[self.cell(to)]) };
        }
        let mut cur = from.to_vec();
        let mut acc = c.identity(objects[self.cell(from)]);
        for a in 0..cur.len() {
            while cur[a] < to[a] {
                acc = c.comp(steps[a][self.cell(&cur)], acc);
                cur[a] += 1;
            }
        }
        acc
    }

    fn fill_quotients(
        &mut self,
        quot: &[usize],
        pos: usize,
        objects: &mut Vec<usize>,
        steps: &mut Vec<Vec<usize>>,
        pis: &mut Vec<usize>,
    ) -> Result<()> {
        if self.out.len() >= self.cap {
            return Err(Error::CapExceeded(format!("more than {} diagrams in S{:?}", self.cap, self.ks)));
        }
        if pos == quot.len() {
            let cube = self.finish(objects, steps, pis)?;
            self.out.push(cube);
            return Ok(());
        }
        let c = self.c;
        let x = quot[pos];
        let co = self.coords(x);
        let a = pairs_of(&co).position(|(i, _)| i > 0).expect("quotient cell");
        let i = co[2 * a];
        let mut s_co = co.clone();
        s_co[2 * a] = 0;
        let mut sub_co = co.clone();
        sub_co[2 * a] = 0;
        sub_co[2 * a + 1] = i;
        let (s, sub) = (self.cell(&s_co), self.cell(&sub_co));
        let rho = self.row0_map(objects, steps, &row0_of(&sub_co), &row0_of(&s_co));
        let target = c.comp(pis[s], rho);
        let m = c
            .factor_through(pis[sub], objects[sub], objects[s], target)
            .ok_or_else(|| Error::Internal("no induced map between quotient cells".into()))?;
        let Some(w) = c.witness(m, c.to_zero(objects[sub])).copied() else { return Ok(()) };
        let base = c.comp(w.leg_b, pis[s]);
        for phi in c.isos_from(w.object) {
            objects[x] = c.dst(phi);
            pis[x] = c.comp(phi, base);
            self.fill_quotients(quot, pos + 1, objects, steps, pis)?;
        }
        objects[x] = c.zero();
        pis[x] = NO_STEP;
        Ok(())
    }

    /// Determines every unit step from the row-0 steps and the quotient maps.
    fn finish(&self, objects: &[usize], steps: &[Vec<usize>], pis: &[usize]) -> Result<Cube> {
        let c = self.c;
        let t = &self.template;
        let mut out = vec![vec![NO_STEP; objects.len()]; t.shape().len()];
        for z in 0..objects.len() {
            let zc = self.coords(z);
            for axis in 0..t.shape().len() {
                if !t.can_step(z, axis) {
                    continue;
                }
                let x = z + t.stride(axis);
                let xc = self.coords(x);
                out[axis][z] = if is_zero_cell(&zc) || is_zero_cell(&xc) {
                    if is_zero_cell(&zc) && is_zero_cell(&xc) {
                        c.identity(c.zero())
                    } else {
                        self.zero_step(objects[z], objects[x])
                    }
                } else if is_row0(&zc) && is_row0(&xc) {
                    steps[axis][z]
                } else {
                    let rho = self.row0_map(objects, steps, &row0_of(&zc), &row0_of(&xc));
                    let target = c.comp(pis[x], rho);
                    c.factor_through(pis[z], objects[z], objects[x], target)
                        .ok_or_else(|| Error::Internal("no induced step in an S-diagram".into()))?
                };
            }
        }
        Ok(Cube::new(t.shape().to_vec(), objects.to_vec(), out))
    }
}

/// All of `ob S^{(n)}_{k_1..k_n} C` for `n = ks.len() <= 2`, sorted, with the
/// zero diagram first.
pub fn s_diagrams(c: &FiniteWaldhausenCategory, ks: &[usize], cap: usize) -> Result<Vec<Cube>> {
    if ks.len() > MAX_S_DEPTH {
        return Err(Error::Unsupported(format!("iterated S-construction of depth {} (at most {MAX_S_DEPTH})", ks.len())));
    }
    let shape = shape_of(ks);
    let template = Cube::zero(c, shape.clone());
    let mut out = if ks.is_empty() {
        (0..c.num_objects()).map(|a| Cube::new(vec![], vec![a], vec![])).collect()
    } else {
        let mut b = Builder { c, ks: ks.to_vec(), template, cap, out: Vec::new() };
        b.run()?;
        b.out
    };
    let zero = Cube::zero(c, shape);
    out.sort();
    out.dedup();
    if let Some(p) = out.iter().position(|x| *x == zero) {
        let z = out.remove(p);
        out.insert(0, z);
    }
    Ok(out)
}

/// `ob S_k C` as diagrams on `[k] x [k]`.
pub fn s_k_objects(c: &FiniteWaldhausenCategory, k: usize) -> Result<Vec<Cube>> {
    s_diagrams(c, &[k], DEFAULT_SET_CAP)
}

fn square_is_pushout(c: &FiniteWaldhausenCategory, i: usize, f: usize, g: usize, j: usize) -> bool {
    if c.witness(i, f).is_some() {
        c.matches_witness(i, f, g, j)
    } else {
        c.is_pushout(i, f, g, j)
    }
}

/// Checks that a cube over `ks` lies in `ob S^{(n)}_{ks} C`; returns the problems found.
pub fn check_s_diagram(c: &FiniteWaldhausenCategory, cube: &Cube, ks: &[usize]) -> Vec<String> {
    let mut bad = Vec::new();
    if cube.shape() != shape_of(ks).as_slice() {
        bad.push(format!("shape {:?} does not match {:?}", cube.shape(), ks));
        return bad;
    }
    let dims = cube.shape().len();
    for x in 0..cube.num_cells() {
        let co = cube.coords(x);
        if is_zero_cell(&co) && cube.object(x) != c.zero() {
            bad.push(format!("cell {co:?} must be the zero object"));
        }
        for a in 0..dims {
            if !cube.can_step(x, a) {
                continue;
            }
            let s = cube.step(a, x);
            let y = x + cube.stride(a);
            if s >= c.num_morphisms() || c.src(s) != cube.object(x) || c.dst(s) != cube.object(y) {
                bad.push(format!("step from {co:?} along axis {a} has the wrong endpoints"));
                return bad;
            }
        }
    }
    for x in 0..cube.num_cells() {
        for a in 0..dims {
            for b in a + 1..dims {
                if !cube.can_step(x, a) || !cube.can_step(x, b) {
                    continue;
                }
                let (xa, xb) = (x + cube.stride(a), x + cube.stride(b));
                let lhs = c.compose(cube.step(b, xa), cube.step(a, x));
                let rhs = c.compose(cube.step(a, xb), cube.step(b, x));
                if lhs.is_none() || lhs != rhs {
                    bad.push(format!("square at {:?} on axes {a}, {b} does not commute", cube.coords(x)));
                }
            }
        }
    }
    for p in 0..ks.len() {
        let (ia, ja) = (2 * p, 2 * p + 1);
        let k = ks[p];
        for x in 0..cube.num_cells() {
            let co = cube.coords(x);
            let (i, j) = (co[ia], co[ja]);
            if i <= j && j < k && !c.is_cofibration(cube.step(ja, x)) {
                bad.push(format!("step {co:?} -> j + 1 in direction {p} is not a cofibration"));
            }
            // pushout squares (i, j) -> (i, l) over (j, j) -> (j, l)
            if i < j {
                for l in j + 1..=k {
                    let mut to = co.clone();
                    to[ja] = l;
                    let horiz = cube.map_between(c, &co, &to);
                    let mut down = to.clone();
                    down[ia] = j;
                    let vert = cube.map_between(c, &to, &down);
                    let (a0, d0) = (cube.object(x), cube.object(cube.index(&down)));
                    if !square_is_pushout(c, horiz, c.to_zero(a0), vert, c.from_zero(d0)) {
                        bad.push(format!("square at {co:?} to column {l} in direction {p} is not a pushout"));
                    }
                }
            }
        }
    }
    if ks.len() == 2 {
        for (p, q) in [(0, 1), (1, 0)] {
            check_latching(c, cube, ks, p, q, &mut bad);
        }
    }
    bad
}

/// Steps in direction `p` are cofibrations of `S_{k_q} C`: for each, the map
/// out of the pushout of the source row and the previous target cell is a cofibration.
fn check_latching(c: &FiniteWaldhausenCategory, cube: &Cube, ks: &[usize], p: usize, q: usize, bad: &mut Vec<String>) {
    let (pi, pj, qi, qj) = (2 * p, 2 * p + 1, 2 * q, 2 * q + 1);
    for x in 0..cube.num_cells() {
        let co = cube.coords(x);
        if co[pi] > co[pj] || co[pj] >= ks[p] || co[qi] != 0 || co[qj] < 2 {
            continue;
        }
        let mut src_prev = co.clone();
        src_prev[qj] -= 1;
        let mut tgt = co.clone();
        tgt[pj] += 1;
        let mut tgt_prev = tgt.clone();
        tgt_prev[qj] -= 1;
        let i = cube.map_between(c, &src_prev, &co);
        let f = cube.map_between(c, &src_prev, &tgt_prev);
        let Some(w) = c.witness(i, f).copied() else {
            bad.push(format!("latching pushout at {co:?} in direction {p} is missing"));
            continue;
        };
        let u = cube.map_between(c, &co, &tgt);
        let v = cube.map_between(c, &tgt_prev, &tgt);
        let t = cube.object(cube.index(&tgt));
        let m = c
            .hom(w.object, t)
            .iter()
            .copied()
            .find(|&m| c.compose(m, w.leg_b) == Some(u) && c.compose(m, w.leg_c) == Some(v));
        if !m.is_some_and(|m| c.is_cofibration(m)) {
            bad.push(format!("latching map at {co:?} in direction {p} is not a cofibration"));
        }
    }
}

/// Natural transformations `x -> y` all of whose components are weak equivalences.
pub fn weak_maps(c: &FiniteWaldhausenCategory, x: &Cube, y: &Cube) -> Vec<Vec<usize>> {
    let n = x.num_cells();
    let dims = x.shape().len();
    let mut out = Vec::new();
    let mut eta = vec![NO_STEP; n];
    weak_maps_from(c, x, y, 0, dims, &mut eta, &mut out);
    out
}

fn weak_maps_from(
    c: &FiniteWaldhausenCategory,
    x: &Cube,
    y: &Cube,
    cell: usize,
    dims: usize,
    eta: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cell == x.num_cells() {
        out.push(eta.clone());
        return;
    }
    let (a, b) = (x.object(cell), y.object(cell));
    // incoming steps from earlier cells; a component after an epimorphic step
    // (an `i` step) is determined, otherwise all weak equivalences are tried
    let co = x.coords(cell);
    let incoming: Vec<usize> = (0..dims).filter(|&ax| co[ax] > 0).collect();
    let consistent = |e: usize, eta: &Vec<usize>| {
        incoming.iter().all(|&ax| {
            let z = cell - x.stride(ax);
            c.compose(e, x.step(ax, z)) == c.compose(y.step(ax, z), eta[z])
        })
    };
    let candidates: Vec<usize> = if let Some(&ax) = incoming.iter().find(|&&ax| ax % 2 == 0) {
        let z = cell - x.stride(ax);
        match c.factor_through(x.step(ax, z), a, b, c.comp(y.step(ax, z), eta[z])) {
            Some(e) => vec![e],
            None => return,
        }
    } else {
        c.hom(a, b).to_vec()
    };
    for e in candidates {
        if c.is_weak_equivalence(e) && consistent(e, eta) {
            eta[cell] = e;
            weak_maps_from(c, x, y, cell + 1, dims, eta, out);
        }
    }
    eta[cell] = NO_STEP;
}

/// For each diagram in `base`, the weak equivalences out of it, as
/// `(target index, components)`. Candidates are bucketed by their row-0
/// objects up to weak equivalence of each object.
pub fn weak_maps_all(c: &FiniteWaldhausenCategory, base: &[Cube]) -> Vec<Vec<(usize, Vec<usize>)>> {
    let reach: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|a| (0..c.num_objects()).filter(|&b| c.hom(a, b).iter().any(|&f| c.is_weak_equivalence(f))).collect())
        .collect();
    let mut buckets: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (k, x) in base.iter().enumerate() {
        buckets.entry(x.objects()).or_default().push(k);
    }
    base.iter()
        .map(|x| {
            let mut res = Vec::new();
            let mut tuple = vec![0; x.num_cells()];
            collect_targets(x.objects(), &reach, 0, &mut tuple, &mut |t| {
                if let Some(ys) = buckets.get(t) {
                    for &k in ys {
                        for eta in weak_maps(c, x, &base[k]) {
                            res.push((k, eta));
                        }
                    }
                }
            });
            res.sort();
            res
        })
        .collect()
}

fn collect_targets(objs: &[usize], reach: &[Vec<usize>], pos: usize, tuple: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pos == objs.len() {
        f(tuple);
        return;
    }
    for &b in &reach[objs[pos]] {
        tuple[pos] = b;
        collect_targets(objs, reach, pos + 1, tuple, f);
    }
}

/// `ob w_m S^{(n)}_{ks} C`: chains of `m` weak equivalences between diagrams,
/// as cubes with a leading axis of length `m + 1`. Sorted, zero chain first.
pub fn w_chains(c: &FiniteWaldhausenCategory, base: &[Cube], maps: &[Vec<(usize, Vec<usize>)>], m: usize, cap: usize) -> Result<Vec<Cube>> {
    let mut out = Vec::new();
    for start in 0..base.len() {
        chains_from(base, maps, start, m, &mut vec![start], &mut Vec::new(), &mut out, cap)?;
    }
    out.sort();
    if let Some(z) = base.first() {
        let zc = zero_chain(c, z, m);
        if let Some(p) = out.iter().position(|x| *x == zc) {
            let z = out.remove(p);
            out.insert(0, z);
        }
    }
    Ok(out)
}

fn zero_chain(c: &FiniteWaldhausenCategory, zero: &Cube, m: usize) -> Cube {
    let ids: Vec<usize> = zero.objects().iter().map(|&a| c.identity(a)).collect();
    let cubes: Vec<&Cube> = vec![zero; m + 1];
    let links: Vec<&[usize]> = vec![&ids; m];
    Cube::stack(&cubes, &links)
}

#[allow(clippy::too_many_arguments)]
fn chains_from<'a>(
    base: &'a [Cube],
    maps: &'a [Vec<(usize, Vec<usize>)>],
    cur: usize,
    left: usize,
    nodes: &mut Vec<usize>,
    links: &mut Vec<&'a [usize]>,
    out: &mut Vec<Cube>,
    cap: usize,
) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::CapExceeded(format!("more than {cap} chains of weak equivalences")));
    }
    if left == 0 {
        let cubes: Vec<&Cube> = nodes.iter().map(|&k| &base[k]).collect();
        out.push(Cube::stack(&cubes, links));
        return Ok(());
    }
    for (next, eta) in &maps[cur] {
        nodes.push(*next);
        links.push(eta);
        chains_from(base, maps, *next, left - 1, nodes, links, out, cap)?;
        nodes.pop();
        links.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::families::{finite_modules, vect_gf};

    #[test]
    fn s1_is_the_objects() {
        for c in [vect_gf(2, 2).unwrap(), finite_modules(4, 4).unwrap()] {
            let s1 = s_k_objects(&c, 1).unwrap();
            assert_eq!(s1.len(), c.num_objects());
            // cell (0, 1) carries the object
            let objs: Vec<usize> = s1.iter().map(|x| x.object(1)).collect();
            assert_eq!(objs, (0..c.num_objects()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn s2_of_vect_counts_flags_with_quotients() {
        let c = vect_gf(2, 2).unwrap();
        let s2 = s_k_objects(&c, 2).unwrap();
        // (a -> b, chosen quotient): 0 < dims, plus automorphisms of each quotient
        assert_eq!(s2.len(), 18);
        for x in &s2 {
            let bad = check_s_diagram(&c, x, &[2]);
            assert!(bad.is_empty(), "{bad:?}");
        }
        assert_eq!(s2[0], Cube::zero(&c, vec![3, 3]));
    }

    #[test]
    fn iterated_diagrams_are_valid() {
        let c = vect_gf(2, 1).unwrap();
        for ks in [[1, 1], [2, 1], [1, 2], [2, 2]] {
            let all = s_diagrams(&c, &ks, DEFAULT_SET_CAP).unwrap();
            assert!(!all.is_empty());
            for x in &all {
                let bad = check_s_diagram(&c, x, &ks);
                assert!(bad.is_empty(), "{ks:?}: {bad:?}");
            }
        }
        // S_{1,1} C is C
        assert_eq!(s_diagrams(&c, &[1, 1], DEFAULT_SET_CAP).unwrap().len(), c.num_objects());
    }

    #[test]
    fn weak_equivalences_of_objects() {
        let c = vect_gf(2, 2).unwrap();
        let s1 = s_k_objects(&c, 1).unwrap();
        let maps = weak_maps_all(&c, &s1);
        assert_eq!(maps.iter().map(Vec::len).collect::<Vec<_>>(), [1, 1, 6]);
        let w1 = w_chains(&c, &s1, &maps, 1, DEFAULT_SET_CAP).unwrap();
        assert_eq!(w1.len(), 8);
        assert_eq!(w1[0].objects(), &[0, 0, 0, 0, 0, 0, 0, 0]);
    }
}
