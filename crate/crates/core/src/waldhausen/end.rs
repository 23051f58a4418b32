use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::waldhausen::category::{CategoryTables, FiniteWaldhausenCategory, Morphism, PushoutWitness};

/// A functor between finite categories, given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFunctor {
    pub name: String,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl ExactFunctor {
    /// Checks functoriality and exactness: zero, cofibrations, weak
    /// equivalences and recorded pushout squares are preserved.
    pub fn validate(&self, src: &FiniteWaldhausenCategory, dst: &FiniteWaldhausenCategory) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.objects.len() != src.num_objects() || self.morphisms.len() != src.num_morphisms() {
            r.push("functor", format!("{} does not cover the source tables", self.name));
            return r;
        }
        for f in 0..src.num_morphisms() {
            let g = self.morphisms[f];
            if dst.src(g) != self.objects[src.src(f)] || dst.dst(g) != self.objects[src.dst(f)] {
                r.push("functor", format!("{}: image of morphism #{f} has the wrong endpoints", self.name));
            }
            if src.is_cofibration(f) && !dst.is_cofibration(g) {
                r.push("exact", format!("{}: cofibration #{f} is not sent to a cofibration", self.name));
            }
            if src.is_weak_equivalence(f) && !dst.is_weak_equivalence(g) {
                r.push("exact", format!("{}: weak equivalence #{f} is not sent to a weak equivalence", self.name));
            }
        }
        if !r.is_valid() {
            return r;
        }
        for a in 0..src.num_objects() {
            if self.morphisms[src.identity(a)] != dst.identity(self.objects[a]) {
                r.push("functor", format!("{}: identity of {} is not preserved", self.name, src.object_name(a)));
            }
        }
        for f in 0..src.num_morphisms() {
            for &g in src.out_of(src.dst(f)) {
                let gf = src.comp(g, f);
                if dst.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                    r.push("functor", format!("{}: composite of #{g} after #{f} is not preserved", self.name));
                }
            }
        }
        if self.objects[src.zero()] != dst.zero() {
            r.push("exact", format!("{}: zero object is not preserved", self.name));
        }
        for w in src.witnesses() {
            let m = |k: usize| self.morphisms[k];
            let (i, f, g, j) = (m(w.cofibration), m(w.map), m(w.leg_b), m(w.leg_c));
            let ok = if dst.witness(i, f).is_some() { dst.matches_witness(i, f, g, j) } else { dst.is_pushout(i, f, g, j) };
            if !ok {
                r.push("exact", format!("{}: pushout of #{} along #{} is not preserved", self.name, w.cofibration, w.map));
            }
        }
        r
    }
}

/// The category `End(C)` of endomorphisms `(a, f: a -> a)` with commuting
/// squares as morphisms, together with `ι_0 = (-, 0)`, `ι_1 = (-, id)` and the
/// forgetful functor.
#[derive(Clone, Debug)]
pub struct EndCategory {
    pub category: FiniteWaldhausenCategory,
    /// `(a, f)` for each object.
    pub pairs: Vec<(usize, usize)>,
    /// Underlying morphism of `C` for each morphism.
    pub underlying: Vec<usize>,
    pub iota0: ExactFunctor,
    pub iota1: ExactFunctor,
    pub forget: ExactFunctor,
}

pub fn end_category(c: &FiniteWaldhausenCategory) -> Result<EndCategory> {
    let mut pairs = Vec::new();
    for a in 0..c.num_objects() {
        for &f in c.hom(a, a) {
            pairs.push((a, f));
        }
    }
    let obj_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let zero = obj_index[&(c.zero(), c.identity(c.zero()))];
    let mut by_src = vec![Vec::new(); c.num_objects()];
    for (k, &(a, _)) in pairs.iter().enumerate() {
        by_src[a].push(k);
    }
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut mor_index = HashMap::new();
    for (s, &(a, f)) in pairs.iter().enumerate() {
        for b in 0..c.num_objects() {
            for &t in &by_src[b] {
                let g = pairs[t].1;
                for &h in c.hom(a, b) {
                    if c.compose(h, f) == c.compose(g, h) {
                        mor_index.insert((s, t, h), morphisms.len());
                        let m = c.morphism(h);
                        morphisms.push(Morphism {
                            src: s,
                            dst: t,
                            cofibration: m.cofibration,
                            weak_equivalence: m.weak_equivalence,
                            label: m.label.clone(),
                        });
                        underlying.push(h);
                    }
                }
            }
        }
    }
    let name = |&(a, f): &(usize, usize)| format!("({}, {})", c.object_name(a), c.morphism(f).label);
    let mut witnesses = Vec::new();
    for (i, mi) in morphisms.iter().enumerate() {
        if !mi.cofibration {
            continue;
        }
        for (f, mf) in morphisms.iter().enumerate() {
            if mf.src != mi.src {
                continue;
            }
            let Some(w) = c.witness(underlying[i], underlying[f]) else { continue };
            let (beta, gamma) = (pairs[mi.dst].1, pairs[mf.dst].1);
            let (u, v) = (c.comp(w.leg_b, beta), c.comp(w.leg_c, gamma));
            let delta = c
                .hom(w.object, w.object)
                .iter()
                .copied()
                .find(|&dl| c.compose(dl, w.leg_b) == Some(u) && c.compose(dl, w.leg_c) == Some(v))
                .ok_or_else(|| Error::Internal("no induced endomorphism on a pushout".into()))?;
            let d = obj_index[&(w.object, delta)];
            witnesses.push(PushoutWitness {
                cofibration: i,
                map: f,
                object: d,
                leg_b: mor_index[&(mi.dst, d, w.leg_b)],
                leg_c: mor_index[&(mf.dst, d, w.leg_c)],
            });
        }
    }
    let tables = CategoryTables {
        name: format!("End({})", c.name()),
        objects: pairs.iter().map(name).collect(),
        sizes: pairs.iter().map(|&(a, _)| c.size(a)).collect(),
        bound: c.bound(),
        zero,
        morphisms,
        composition: Vec::new(),
        witnesses: Some(witnesses),
    };
    let endc = {
        let t = &tables;
        let compose = |g: usize, f: usize| {
            let (mf, mg) = (&t.morphisms[f], &t.morphisms[g]);
            let h = c.compose(underlying[g], underlying[f])?;
            mor_index.get(&(mf.src, mg.dst, h)).copied()
        };
        FiniteWaldhausenCategory::from_composition_fn(tables.clone(), compose)?
    };

    let section = |endo: &dyn Fn(usize) -> usize| -> ExactFunctor {
        let objects: Vec<usize> = (0..c.num_objects()).map(|a| obj_index[&(a, endo(a))]).collect();
        let morphisms = (0..c.num_morphisms()).map(|h| mor_index[&(objects[c.src(h)], objects[c.dst(h)], h)]).collect();
        ExactFunctor { name: String::new(), objects, morphisms }
    };
    let mut iota0 = section(&|a| c.comp(c.from_zero(a), c.to_zero(a)));
    iota0.name = "iota0".into();
    let mut iota1 = section(&|a| c.identity(a));
    iota1.name = "iota1".into();
    let forget = ExactFunctor {
        name: "forget".into(),
        objects: pairs.iter().map(|&(a, _)| a).collect(),
        morphisms: underlying.clone(),
    };
    Ok(EndCategory { category: endc, pairs, underlying, iota0, iota1, forget })
}

impl EndCategory {
    /// Exactness of `ι_0`, `ι_1` and the forgetful functor.
    pub fn validate_functors(&self, c: &FiniteWaldhausenCategory) -> ValidationReport {
        let mut r = self.iota0.validate(c, &self.category);
        r.extend(self.iota1.validate(c, &self.category));
        r.extend(self.forget.validate(&self.category, c));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::families::{trivial, vect_gf};
    use crate::waldhausen::validate::validate_waldhausen;

    #[test]
    fn end_of_small_categories() {
        let t = trivial().unwrap();
        let e = end_category(&t).unwrap();
        assert_eq!(e.category.num_objects(), 1);
        assert!(validate_waldhausen(&e.category).is_valid());

        let v = vect_gf(2, 1).unwrap();
        let e = end_category(&v).unwrap();
        // (0, id), (F2, 0), (F2, id)
        assert_eq!(e.category.num_objects(), 3);
        let r = validate_waldhausen(&e.category);
        assert!(r.is_valid(), "{r}");
        assert!(e.validate_functors(&v).is_valid());
        for a in 0..v.num_objects() {
            assert_eq!(e.forget.objects[e.iota1.objects[a]], a);
        }
    }

    #[test]
    fn end_of_vect_two() {
        let v = vect_gf(2, 2).unwrap();
        let e = end_category(&v).unwrap();
        assert_eq!(e.category.num_objects(), 1 + 2 + 16);
        let r = e.validate_functors(&v);
        assert!(r.is_valid(), "{r}");
    }
}
