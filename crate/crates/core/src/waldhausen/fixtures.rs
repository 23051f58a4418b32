//! Deliberately broken copies of `vect_gf(2, 2)`, one per axiom, used to
//! exercise the validator.

use crate::error::Result;
use crate::waldhausen::category::FiniteWaldhausenCategory;
use crate::waldhausen::families::vect_gf;

/// A corrupted category together with the validator rule it should trip.
#[derive(Clone, Debug)]
pub struct CorruptedFixture {
    pub name: &'static str,
    pub rule: &'static str,
    pub category: FiniteWaldhausenCategory,
}

fn object(c: &FiniteWaldhausenCategory, name: &str) -> usize {
    c.object_names().iter().position(|n| n == name).expect("object present")
}

/// The five fixtures, in axiom order.
pub fn corrupted_fixtures() -> Result<Vec<CorruptedFixture>> {
    let base = vect_gf(2, 2)?;
    let (a, b) = (object(&base, "F2^1"), object(&base, "F2^2"));
    let swap = *base
        .hom(b, b)
        .iter()
        .find(|&&f| base.is_isomorphism(f) && !base.is_identity(f))
        .expect("nontrivial automorphism");
    let za = base.from_zero(a);
    let zero_map = base.comp(base.from_zero(a), base.to_zero(a));

    let mut out = Vec::new();
    let mut c = base.clone();
    c.morphism_mut(swap).cofibration = false;
    out.push(CorruptedFixture { name: "iso-not-cofibration", rule: "axiom-1", category: c });

    let mut c = base.clone();
    c.morphism_mut(za).cofibration = false;
    out.push(CorruptedFixture { name: "zero-map-not-cofibration", rule: "axiom-2", category: c });

    let mut c = base.clone();
    c.remove_witness(za, za).expect("witness for F2 + F2");
    out.push(CorruptedFixture { name: "missing-pushout", rule: "axiom-3", category: c });

    let mut c = base.clone();
    let leg = c.witness(za, za).expect("witness for F2 + F2").leg_c;
    c.morphism_mut(leg).cofibration = false;
    out.push(CorruptedFixture { name: "cobase-change-not-cofibration", rule: "axiom-4", category: c });

    let mut c = base;
    c.morphism_mut(zero_map).weak_equivalence = true;
    out.push(CorruptedFixture { name: "zero-map-weak-equivalence", rule: "axiom-5", category: c });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::validate::validate_waldhausen;

    #[test]
    fn each_fixture_trips_its_rule() {
        for f in corrupted_fixtures().unwrap() {
            let r = validate_waldhausen(&f.category);
            assert!(r.mentions(f.rule), "{}: {r}", f.name);
        }
    }
}
