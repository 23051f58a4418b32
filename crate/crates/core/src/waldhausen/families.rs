//! Built-in bounded Waldhausen categories. Each is skeletal: one object per
//! isomorphism class, with every morphism listed. Cofibrations are the
//! injective maps and weak equivalences the bijective ones.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::waldhausen::category::{CategoryTables, FiniteWaldhausenCategory, Morphism};

/// Upper limit on the number of morphisms a family may generate.
pub const MAX_FAMILY_MORPHISMS: usize = 20_000;

struct ConcreteObject {
    name: String,
    size: u64,
    card: usize,
}

/// A category of finite sets with a distinguished point 0, given by the maps
/// between them. Object 0 must be the one-point set.
struct Concrete {
    name: String,
    bound: u64,
    objects: Vec<ConcreteObject>,
    maps: Vec<(usize, usize, Vec<usize>, String)>,
}

impl Concrete {
    fn push(&mut self, src: usize, dst: usize, f: Vec<usize>, label: String) -> Result<()> {
        if self.maps.len() >= MAX_FAMILY_MORPHISMS {
            return Err(Error::CapExceeded(format!("{} has more than {MAX_FAMILY_MORPHISMS} morphisms", self.name)));
        }
        self.maps.push((src, dst, f, label));
        Ok(())
    }

    fn build(self) -> Result<FiniteWaldhausenCategory> {
        let index: HashMap<(usize, usize, &[usize]), usize> =
            self.maps.iter().enumerate().map(|(k, (s, d, f, _))| ((*s, *d, f.as_slice()), k)).collect();
        let compose = |gk: usize, fk: usize| {
            let (a, _, f, _) = &self.maps[fk];
            let (_, c, g, _) = &self.maps[gk];
            let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
            index.get(&(*a, *c, gf.as_slice())).copied()
        };
        let morphisms = self
            .maps
            .iter()
            .map(|(s, d, f, label)| {
                let injective = is_injective(f, self.objects[*d].card);
                let bijective = injective && self.objects[*s].card == self.objects[*d].card;
                Morphism { src: *s, dst: *d, cofibration: injective, weak_equivalence: bijective, label: label.clone() }
            })
            .collect();
        let tables = CategoryTables {
            name: self.name.clone(),
            sizes: self.objects.iter().map(|o| o.size).collect(),
            objects: self.objects.iter().map(|o| o.name.clone()).collect(),
            bound: Some(self.bound),
            zero: 0,
            morphisms,
            composition: Vec::new(),
            witnesses: None,
        };
        FiniteWaldhausenCategory::from_composition_fn(tables, compose)
    }
}

fn is_injective(f: &[usize], card: usize) -> bool {
    let mut seen = vec![false; card];
    f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Digits of `x` in mixed radix `radix`, least significant first.
fn digits(mut x: usize, radix: &[usize]) -> Vec<usize> {
    radix
        .iter()
        .map(|&r| {
            let d = x % r;
            x /= r;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], radix: &[usize]) -> usize {
    ds.iter().zip(radix).rev().fold(0, |acc, (&d, &r)| acc * r + d)
}

/// The category with a single (zero) object.
pub fn trivial() -> Result<FiniteWaldhausenCategory> {
    let mut c = Concrete {
        name: "trivial".into(),
        bound: 0,
        objects: vec![ConcreteObject { name: "0".into(), size: 0, card: 1 }],
        maps: Vec::new(),
    };
    c.push(0, 0, vec![0], "id".into())?;
    c.build()
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Finite-dimensional vector spaces over the prime field `F_q` of dimension at most `bound`.
pub fn vect_gf(q: u64, bound: u64) -> Result<FiniteWaldhausenCategory> {
    if !is_prime(q) {
        return Err(Error::Unsupported(format!("vect_gf needs a prime field order, got {q}")));
    }
    let q = q as usize;
    let dims: Vec<usize> = (0..=bound as usize).collect();
    let card = |d: usize| q.checked_pow(d as u32).filter(|&c| c <= 1 << 16);
    let mut c = Concrete {
        name: format!("vect(F{q}, dim <= {bound})"),
        bound,
        objects: Vec::new(),
        maps: Vec::new(),
    };
    for &d in &dims {
        let k = card(d).ok_or_else(|| Error::CapExceeded(format!("F{q}^{d} is too large")))?;
        let name = if d == 0 { "0".into() } else { format!("F{q}^{d}") };
        c.objects.push(ConcreteObject { name, size: d as u64, card: k });
    }
    for &s in &dims {
        for &t in &dims {
            let entries = s * t;
            let count = q
                .checked_pow(entries as u32)
                .filter(|&n| n <= MAX_FAMILY_MORPHISMS)
                .ok_or_else(|| Error::CapExceeded(format!("Hom(F{q}^{s}, F{q}^{t}) is too large")))?;
            let rs = vec![q; s];
            let rt = vec![q; t];
            for m in 0..count {
                // column-major t x s matrix
                let a = digits(m, &vec![q; entries]);
                let f = (0..card(s).unwrap())
                    .map(|x| {
                        let v = digits(x, &rs);
                        let w: Vec<usize> = (0..t).map(|r| (0..s).map(|col| a[col * t + r] * v[col]).sum::<usize>() % q).collect();
                        undigits(&w, &rt)
                    })
                    .collect();
                let label = (0..t)
                    .map(|r| (0..s).map(|col| a[col * t + r].to_string()).collect::<Vec<_>>().join(" "))
                    .collect::<Vec<_>>()
                    .join("; ");
                c.push(s, t, f, format!("[{label}]"))?;
            }
        }
    }
    c.build()
}

/// Pointed finite sets with at most `bound` points besides the basepoint.
pub fn pointed_sets(bound: u64) -> Result<FiniteWaldhausenCategory> {
    let mut c = Concrete { name: format!("pointed sets(<= {bound} points)"), bound, objects: Vec::new(), maps: Vec::new() };
    for n in 0..=bound as usize {
        let name = if n == 0 { "*".into() } else { format!("{{*,1..{n}}}") };
        c.objects.push(ConcreteObject { name, size: n as u64, card: n + 1 });
    }
    for s in 0..=bound as usize {
        for t in 0..=bound as usize {
            let count = (t + 1)
                .checked_pow(s as u32)
                .filter(|&n| n <= MAX_FAMILY_MORPHISMS)
                .ok_or_else(|| Error::CapExceeded(format!("too many maps from {s} to {t} points")))?;
            for m in 0..count {
                let mut f = vec![0];
                f.extend(digits(m, &vec![t + 1; s]));
                let label = f[1..].iter().map(|y| if *y == 0 { "*".into() } else { y.to_string() }).collect::<Vec<_>>().join(",");
                c.push(s, t, f, format!("({label})"))?;
            }
        }
    }
    c.build()
}

/// Invariant factor lists `d_1 | d_2 | ... ` with `d_k | m` and product at most `bound`.
fn invariant_factor_lists(m: u64, bound: u64) -> Vec<Vec<u64>> {
    fn go(m: u64, bound: u64, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(acc.clone());
        for d in 2..=m {
            if m % d == 0 && d % prev == 0 && acc.iter().product::<u64>() * d <= bound {
                acc.push(d);
                go(m, bound, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, bound, 1, &mut Vec::new(), &mut out);
    out.sort_by_key(|ds| (ds.iter().product::<u64>(), ds.clone()));
    out
}

/// Finite abelian groups of exponent dividing `m` and order at most `bound`.
pub fn finite_modules(m: u64, bound: u64) -> Result<FiniteWaldhausenCategory> {
    if m == 0 {
        return Err(Error::InvalidInput("finite_modules needs a positive exponent".into()));
    }
    let groups = invariant_factor_lists(m, bound);
    let mut c = Concrete {
        name: format!("Z/{m}-modules(order <= {bound})"),
        bound,
        objects: Vec::new(),
        maps: Vec::new(),
    };
    let radix: Vec<Vec<usize>> = groups.iter().map(|g| g.iter().map(|&d| d as usize).collect()).collect();
    for g in &groups {
        let name = if g.is_empty() { "0".into() } else { g.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("+") };
        let card: u64 = g.iter().product();
        c.objects.push(ConcreteObject { name, size: card, card: card as usize });
    }
    for (s, rs) in radix.iter().enumerate() {
        for (t, rt) in radix.iter().enumerate() {
            let card_t: usize = rt.iter().product();
            // candidate images of each generator: elements killed by its order
            let images: Vec<Vec<usize>> = rs
                .iter()
                .map(|&d| {
                    (0..card_t)
                        .filter(|&y| digits(y, rt).iter().zip(rt).all(|(&v, &r)| (v * d) % r == 0))
                        .collect()
                })
                .collect();
            let counts: Vec<usize> = images.iter().map(Vec::len).collect();
            let total: usize = counts.iter().product();
            if total > MAX_FAMILY_MORPHISMS {
                return Err(Error::CapExceeded(format!("too many homomorphisms from object {s} to {t}")));
            }
            let card_s: usize = rs.iter().product();
            for k in 0..total {
                let choice = digits(k, &counts);
                let gens: Vec<Vec<usize>> = choice.iter().zip(&images).map(|(&ci, im)| digits(im[ci], rt)).collect();
                let f = (0..card_s)
                    .map(|x| {
                        let a = digits(x, rs);
                        let w: Vec<usize> = (0..rt.len())
                            .map(|p| a.iter().zip(&gens).map(|(&ai, g)| ai * g[p]).sum::<usize>() % rt[p])
                            .collect();
                        undigits(&w, rt)
                    })
                    .collect();
                let label = gens.iter().map(|g| format!("{g:?}")).collect::<Vec<_>>().join(",");
                c.push(s, t, f, format!("gens->{label}"))?;
            }
        }
    }
    c.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::validate::validate_waldhausen;

    #[test]
    fn sizes_of_the_families() {
        let v = vect_gf(2, 2).unwrap();
        assert_eq!(v.num_objects(), 3);
        assert_eq!(v.num_morphisms(), 31);
        assert_eq!(v.isos_from(2).len(), 6);
        let m = finite_modules(4, 4).unwrap();
        let names: Vec<&str> = m.object_names().iter().map(String::as_str).collect();
        assert_eq!(names, ["0", "Z/2", "Z/2+Z/2", "Z/4"]);
        assert_eq!(pointed_sets(2).unwrap().num_morphisms(), 1 + 1 + 1 + 1 + 2 + 3 + 1 + 4 + 9);
        assert_eq!(trivial().unwrap().num_morphisms(), 1);
        assert!(matches!(vect_gf(4, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn families_satisfy_the_axioms() {
        for c in [trivial().unwrap(), vect_gf(2, 2).unwrap(), pointed_sets(2).unwrap(), finite_modules(4, 4).unwrap()] {
            let r = validate_waldhausen(&c);
            assert!(r.is_valid(), "{}: {r}", c.name());
        }
    }

    #[test]
    fn pushouts_outside_the_bound_are_absent() {
        let v = vect_gf(2, 1).unwrap();
        // F2 -> F2 (identity, a cofibration) along itself: pushout F2
        let id = v.identity(1);
        assert_eq!(v.witness(id, id).unwrap().object, 1);
        // 0 -> F2 along 0 -> F2: pushout F2^2 is out of bounds
        let z = v.from_zero(1);
        assert!(v.witness(z, z).is_none());
    }
}
