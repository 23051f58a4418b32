use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// A morphism of a finite category with its Waldhausen flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
    pub cofibration: bool,
    pub weak_equivalence: bool,
    pub label: String,
}

/// A chosen pushout of a cofibration `i: a -> b` along `f: a -> c`:
/// the square `leg_b ∘ i = leg_c ∘ f` into `object`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PushoutWitness {
    pub cofibration: usize,
    pub map: usize,
    pub object: usize,
    pub leg_b: usize,
    pub leg_c: usize,
}

/// Raw description of a finite category; see [`FiniteWaldhausenCategory::from_tables`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CategoryTables {
    pub name: String,
    pub objects: Vec<String>,
    /// Size of each object, compared against `bound`.
    pub sizes: Vec<u64>,
    pub bound: Option<u64>,
    pub zero: usize,
    pub morphisms: Vec<Morphism>,
    /// Triples `(g, f, g ∘ f)`.
    pub composition: Vec<(usize, usize, usize)>,
    /// Explicit witnesses; `None` means they are found by search.
    pub witnesses: Option<Vec<PushoutWitness>>,
}

/// A Waldhausen category with finitely many objects and morphisms, given by tables.
#[derive(Clone, Debug)]
pub struct FiniteWaldhausenCategory {
    name: String,
    objects: Vec<String>,
    sizes: Vec<u64>,
    bound: Option<u64>,
    zero: usize,
    morphisms: Vec<Morphism>,
    hom: Vec<Vec<Vec<usize>>>,
    outs: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    /// `comp[f][out_pos[g]] = g ∘ f`.
    comp: Vec<Vec<u32>>,
    identities: Vec<usize>,
    inverses: Vec<Option<usize>>,
    witnesses: HashMap<(usize, usize), PushoutWitness>,
}

impl FiniteWaldhausenCategory {
    /// Builds the category from tables. Identities and the maps to and from
    /// the zero object must exist; everything else is left to the validator.
    pub fn from_tables(t: CategoryTables) -> Result<Self> {
        Self::build(t, None)
    }

    /// Like [`Self::from_tables`], with composition given by a function
    /// `(g, f) -> g ∘ f` instead of the `composition` table.
    pub fn from_composition_fn(t: CategoryTables, compose: impl Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        Self::build(t, Some(&compose))
    }

    fn build(t: CategoryTables, compose: Option<&dyn Fn(usize, usize) -> Option<usize>>) -> Result<Self> {
        let n = t.objects.len();
        if n == 0 || t.zero >= n {
            return Err(Error::InvalidInput("category needs objects and a zero object in range".into()));
        }
        let sizes = if t.sizes.is_empty() { vec![0; n] } else { t.sizes };
        if sizes.len() != n {
            return Err(Error::DimensionMismatch(format!("{} sizes for {n} objects", sizes.len())));
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut outs = vec![Vec::new(); n];
        let mut out_pos = vec![0; t.morphisms.len()];
        for (k, m) in t.morphisms.iter().enumerate() {
            if m.src >= n || m.dst >= n {
                return Err(Error::InvalidInput(format!("morphism {k} has an endpoint out of range")));
            }
            hom[m.src][m.dst].push(k);
            out_pos[k] = outs[m.src].len();
            outs[m.src].push(k);
        }
        let mut comp: Vec<Vec<u32>> = t.morphisms.iter().map(|m| vec![NONE; outs[m.dst].len()]).collect();
        match compose {
            Some(func) => {
                for (f, row) in comp.iter_mut().enumerate() {
                    for (p, &g) in outs[t.morphisms[f].dst].iter().enumerate() {
                        if let Some(h) = func(g, f) {
                            row[p] = h as u32;
                        }
                    }
                }
            }
            None => {
                for &(g, f, h) in &t.composition {
                    let (mg, mf) = match (t.morphisms.get(g), t.morphisms.get(f)) {
                        (Some(a), Some(b)) => (a, b),
                        _ => return Err(Error::InvalidInput(format!("composition ({g}, {f}) refers to a missing morphism"))),
                    };
                    if mf.dst != mg.src || h >= t.morphisms.len() {
                        return Err(Error::InvalidInput(format!("composition entry ({g}, {f}) is not composable")));
                    }
                    comp[f][out_pos[g]] = h as u32;
                }
            }
        }
        let mut c = FiniteWaldhausenCategory {
            name: t.name,
            objects: t.objects,
            sizes,
            bound: t.bound,
            zero: t.zero,
            morphisms: t.morphisms,
            hom,
            outs,
            out_pos,
            comp,
            identities: Vec::new(),
            inverses: Vec::new(),
            witnesses: HashMap::new(),
        };
        c.identities = (0..n)
            .map(|a| {
                c.hom[a][a]
                    .iter()
                    .copied()
                    .find(|&e| c.is_identity_candidate(a, e))
                    .ok_or_else(|| Error::Validation(format!("[category] object {} has no identity", c.objects[a])))
            })
            .collect::<Result<_>>()?;
        for a in 0..n {
            if c.hom[c.zero][a].is_empty() || c.hom[a][c.zero].is_empty() {
                return Err(Error::Validation(format!("[axiom-2] no map between {} and the zero object", c.objects[a])));
            }
        }
        c.inverses = (0..c.morphisms.len()).map(|f| c.find_inverse(f)).collect();
        match t.witnesses {
            Some(ws) => {
                for w in ws {
                    c.witnesses.insert((w.cofibration, w.map), w);
                }
            }
            None => c.search_all_witnesses(),
        }
        Ok(c)
    }

    fn is_identity_candidate(&self, a: usize, e: usize) -> bool {
        (0..self.morphisms.len()).all(|f| {
            let m = &self.morphisms[f];
            (m.dst != a || self.compose(e, f) == Some(f)) && (m.src != a || self.compose(f, e) == Some(f))
        })
    }

    fn find_inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom[m.dst][m.src].iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identities[m.src]) && self.compose(f, g) == Some(self.identities[m.dst])
        })
    }

    /// Fills the witness table by searching every cofibration/map pair.
    pub fn search_all_witnesses(&mut self) {
        self.witnesses.clear();
        for i in 0..self.morphisms.len() {
            if !self.morphisms[i].cofibration {
                continue;
            }
            for &f in &self.outs[self.morphisms[i].src] {
                if let Some(w) = self.search_pushout(i, f) {
                    self.witnesses.insert((i, f), w);
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn size(&self, a: usize) -> u64 {
        self.sizes[a]
    }

    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// All morphisms with source `a`.
    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.outs[a]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn is_cofibration(&self, f: usize) -> bool {
        self.morphisms[f].cofibration
    }

    pub fn is_weak_equivalence(&self, f: usize) -> bool {
        self.morphisms[f].weak_equivalence
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverses[f]
    }

    pub fn is_isomorphism(&self, f: usize) -> bool {
        self.inverses[f].is_some()
    }

    /// The first map `0 -> a` in the table.
    pub fn from_zero(&self, a: usize) -> usize {
        self.hom[self.zero][a][0]
    }

    /// The first map `a -> 0` in the table.
    pub fn to_zero(&self, a: usize) -> usize {
        self.hom[a][self.zero][0]
    }

    /// `g ∘ f`, if both are composable and the table has the entry.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        if self.morphisms[f].dst != self.morphisms[g].src {
            return None;
        }
        let h = self.comp[f][self.out_pos[g]];
        (h != NONE).then_some(h as usize)
    }

    /// `g ∘ f` for maps known to be composable in a validated category.
    #[inline]
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).expect("composable morphisms with a table entry")
    }

    /// Composite of a path `f_1, f_2, ...` (applied in that order).
    pub fn compose_path(&self, path: &[usize]) -> usize {
        let mut it = path.iter();
        let first = *it.next().expect("nonempty path");
        it.fold(first, |acc, &g| self.comp(g, acc))
    }

    pub fn witness(&self, cofibration: usize, map: usize) -> Option<&PushoutWitness> {
        self.witnesses.get(&(cofibration, map))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &PushoutWitness> {
        self.witnesses.values()
    }

    pub fn set_witnesses(&mut self, ws: Vec<PushoutWitness>) {
        self.witnesses = ws.into_iter().map(|w| ((w.cofibration, w.map), w)).collect();
    }

    /// Mutable access for building modified copies, used by fixtures.
    pub fn morphism_mut(&mut self, f: usize) -> &mut Morphism {
        &mut self.morphisms[f]
    }

    pub fn remove_witness(&mut self, cofibration: usize, map: usize) -> Option<PushoutWitness> {
        self.witnesses.remove(&(cofibration, map))
    }

    pub fn insert_witness(&mut self, w: PushoutWitness) {
        self.witnesses.insert((w.cofibration, w.map), w);
    }

    /// Number of pairs `(u: b -> e, v: c -> e)` with `u ∘ i = v ∘ f`.
    fn compatible_pairs(&self, i: usize, f: usize, e: usize) -> usize {
        let (b, c) = (self.dst(i), self.dst(f));
        let ui: Vec<Option<usize>> = self.hom[b][e].iter().map(|&u| self.compose(u, i)).collect();
        let vf: Vec<Option<usize>> = self.hom[c][e].iter().map(|&v| self.compose(v, f)).collect();
        ui.iter().map(|x| vf.iter().filter(|y| x.is_some() && *y == x).count()).sum()
    }

    /// Universal property of the square `g ∘ i = j ∘ f` into `d`, checked
    /// against every object, given precomputed compatible-pair counts.
    fn is_universal(&self, g: usize, j: usize, d: usize, counts: &[usize]) -> bool {
        let mut seen = std::collections::HashSet::new();
        for e in 0..self.num_objects() {
            if self.hom[d][e].len() != counts[e] {
                return false;
            }
            seen.clear();
            for &w in &self.hom[d][e] {
                match (self.compose(w, g), self.compose(w, j)) {
                    (Some(x), Some(y)) => {
                        if !seen.insert((x, y)) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    /// True when the commuting square `g ∘ i = j ∘ f` is a pushout.
    pub fn is_pushout(&self, i: usize, f: usize, g: usize, j: usize) -> bool {
        let d = self.dst(g);
        if self.dst(j) != d || self.compose(g, i).is_none() || self.compose(g, i) != self.compose(j, f) {
            return false;
        }
        let counts: Vec<usize> = (0..self.num_objects()).map(|e| self.compatible_pairs(i, f, e)).collect();
        self.is_universal(g, j, d, &counts)
    }

    /// Searches objects and maps for a pushout of `i` along `f`.
    pub fn search_pushout(&self, i: usize, f: usize) -> Option<PushoutWitness> {
        if self.src(i) != self.src(f) {
            return None;
        }
        let (b, c) = (self.dst(i), self.dst(f));
        let counts: Vec<usize> = (0..self.num_objects()).map(|e| self.compatible_pairs(i, f, e)).collect();
        for d in 0..self.num_objects() {
            if (0..self.num_objects()).any(|e| self.hom[d][e].len() != counts[e]) {
                continue;
            }
            for &g in &self.hom[b][d] {
                let gi = match self.compose(g, i) {
                    Some(x) => x,
                    None => continue,
                };
                for &j in &self.hom[c][d] {
                    if self.compose(j, f) == Some(gi) && self.is_universal(g, j, d, &counts) {
                        return Some(PushoutWitness { cofibration: i, map: f, object: d, leg_b: g, leg_c: j });
                    }
                }
            }
        }
        None
    }

    /// True when the square agrees with the recorded witness up to a unique isomorphism.
    pub fn matches_witness(&self, i: usize, f: usize, g: usize, j: usize) -> bool {
        let w = match self.witness(i, f) {
            Some(w) => *w,
            None => return false,
        };
        let d = self.dst(g);
        if self.dst(j) != d {
            return false;
        }
        self.hom[w.object][d]
            .iter()
            .any(|&phi| self.is_isomorphism(phi) && self.compose(phi, w.leg_b) == Some(g) && self.compose(phi, w.leg_c) == Some(j))
    }

    /// The unique map `m: src -> dst` with `m ∘ pre = target`, searched in `Hom(src, dst)`.
    pub fn factor_through(&self, pre: usize, src: usize, dst: usize, target: usize) -> Option<usize> {
        self.hom[src][dst].iter().copied().find(|&m| self.compose(m, pre) == Some(target))
    }

    /// Isomorphisms with source `a`.
    pub fn isos_from(&self, a: usize) -> Vec<usize> {
        self.outs[a].iter().copied().filter(|&f| self.is_isomorphism(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The category `0 -> X` with `X` having only its identity, plus the maps through zero.
    fn two_objects() -> FiniteWaldhausenCategory {
        let m = |s, d, c, w, l: &str| Morphism { src: s, dst: d, cofibration: c, weak_equivalence: w, label: l.into() };
        let morphisms = vec![
            m(0, 0, true, true, "id0"),
            m(1, 1, true, true, "idX"),
            m(0, 1, true, false, "0X"),
            m(1, 0, false, false, "X0"),
            m(1, 1, false, false, "zX"),
        ];
        // zX = 0X ∘ X0
        let composition = vec![
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 2),
            (0, 3, 3),
            (3, 1, 3),
            (2, 3, 4),
            (3, 2, 0),
            (4, 1, 4),
            (1, 4, 4),
            (4, 4, 4),
            (4, 2, 2),
            (3, 4, 3),
        ];
        FiniteWaldhausenCategory::from_tables(CategoryTables {
            name: "two".into(),
            objects: vec!["0".into(), "X".into()],
            sizes: vec![0, 1],
            bound: Some(1),
            zero: 0,
            morphisms,
            composition,
            witnesses: None,
        })
        .unwrap()
    }

    #[test]
    fn identities_inverses_and_pushouts() {
        let c = two_objects();
        assert_eq!(c.identity(1), 1);
        assert!(c.is_isomorphism(1));
        assert!(!c.is_isomorphism(4));
        // pushout of 0 -> X along 0 -> 0 is X
        let w = c.witness(2, 0).unwrap();
        assert_eq!(w.object, 1);
        // pushout of 0 -> X along 0 -> X would be X + X, which is absent
        assert!(c.witness(2, 2).is_none());
        assert_eq!(c.compose_path(&[3, 2]), 4);
    }
}
