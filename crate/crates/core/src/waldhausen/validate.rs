use std::collections::BTreeMap;

use crate::report::ValidationReport;
use crate::waldhausen::category::FiniteWaldhausenCategory;

/// Collects failures, keeping the first few per rule and counting the rest.
struct Collector {
    report: ValidationReport,
    extra: BTreeMap<&'static str, usize>,
}

const PER_RULE: usize = 8;

impl Collector {
    fn new() -> Self {
        Collector { report: ValidationReport::new(), extra: BTreeMap::new() }
    }

    fn push(&mut self, rule: &'static str, detail: impl FnOnce() -> String) {
        let shown = self.report.failures.iter().filter(|f| f.rule == rule).count();
        if shown < PER_RULE {
            self.report.push(rule, detail());
        } else {
            *self.extra.entry(rule).or_default() += 1;
        }
    }

    fn finish(mut self) -> ValidationReport {
        for (rule, n) in self.extra {
            self.report.push(rule, format!("{n} further violations omitted"));
        }
        self.report
    }
}

/// Exhaustively checks the category laws and the five Waldhausen axioms:
///
/// 1. isomorphisms are cofibrations and weak equivalences;
/// 2. the zero object is initial and terminal, and `0 -> a` is a cofibration;
/// 3. every cofibration has a recorded pushout along every map whenever one
///    exists among the objects, and recorded witnesses are pushouts;
/// 4. the cobase change leg of every witness is a cofibration;
/// 5. weak equivalences of pushout data induce weak equivalences of pushouts.
///
/// Failures are reported under the rules `category`, `axiom-1` .. `axiom-5`.
pub fn validate_waldhausen(c: &FiniteWaldhausenCategory) -> ValidationReport {
    let mut out = Collector::new();
    check_category(c, &mut out);
    check_isomorphisms(c, &mut out);
    check_zero(c, &mut out);
    check_pushouts(c, &mut out);
    check_gluing(c, &mut out);
    out.finish()
}

fn label(c: &FiniteWaldhausenCategory, f: usize) -> String {
    let m = c.morphism(f);
    let name = if m.label.is_empty() { format!("#{f}") } else { m.label.clone() };
    format!("{name}: {} -> {}", c.object_name(m.src), c.object_name(m.dst))
}

fn check_category(c: &FiniteWaldhausenCategory, out: &mut Collector) {
    let n = c.num_morphisms();
    for f in 0..n {
        for &g in c.out_of(c.dst(f)) {
            match c.compose(g, f) {
                None => out.push("category", || format!("missing composite of {} after {}", label(c, g), label(c, f))),
                Some(h) if c.src(h) != c.src(f) || c.dst(h) != c.dst(g) => {
                    out.push("category", || format!("composite of {} after {} has wrong endpoints", label(c, g), label(c, f)))
                }
                Some(h) => {
                    if c.is_cofibration(f) && c.is_cofibration(g) && !c.is_cofibration(h) {
                        out.push("category", || format!("cofibrations not closed under composition at {}", label(c, h)));
                    }
                    if c.is_weak_equivalence(f) && c.is_weak_equivalence(g) && !c.is_weak_equivalence(h) {
                        out.push("category", || format!("weak equivalences not closed under composition at {}", label(c, h)));
                    }
                }
            }
        }
    }
    for f in 0..n {
        for &g in c.out_of(c.dst(f)) {
            let Some(gf) = c.compose(g, f) else { continue };
            for &h in c.out_of(c.dst(g)) {
                let (Some(hg), Some(h_gf)) = (c.compose(h, g), c.compose(h, gf)) else { continue };
                if c.compose(hg, f) != Some(h_gf) {
                    out.push("category", || format!("composition is not associative at {}, {}, {}", label(c, f), label(c, g), label(c, h)));
                }
            }
        }
    }
}

fn check_isomorphisms(c: &FiniteWaldhausenCategory, out: &mut Collector) {
    for f in 0..c.num_morphisms() {
        if c.is_isomorphism(f) && !(c.is_cofibration(f) && c.is_weak_equivalence(f)) {
            out.push("axiom-1", || format!("isomorphism {} is not flagged as both a cofibration and a weak equivalence", label(c, f)));
        }
    }
}

fn check_zero(c: &FiniteWaldhausenCategory, out: &mut Collector) {
    let z = c.zero();
    for a in 0..c.num_objects() {
        if c.hom(z, a).len() != 1 {
            out.push("axiom-2", || format!("{} maps from the zero object to {}", c.hom(z, a).len(), c.object_name(a)));
        }
        if c.hom(a, z).len() != 1 {
            out.push("axiom-2", || format!("{} maps from {} to the zero object", c.hom(a, z).len(), c.object_name(a)));
        }
        if let Some(&f) = c.hom(z, a).first() {
            if !c.is_cofibration(f) {
                out.push("axiom-2", || format!("{} is not a cofibration", label(c, f)));
            }
        }
    }
}

fn check_pushouts(c: &FiniteWaldhausenCategory, out: &mut Collector) {
    for w in c.witnesses() {
        let (i, f) = (w.cofibration, w.map);
        let ok_shape = i < c.num_morphisms()
            && f < c.num_morphisms()
            && w.leg_b < c.num_morphisms()
            && w.leg_c < c.num_morphisms()
            && c.is_cofibration(i)
            && c.src(i) == c.src(f)
            && c.src(w.leg_b) == c.dst(i)
            && c.src(w.leg_c) == c.dst(f)
            && c.dst(w.leg_b) == w.object
            && c.dst(w.leg_c) == w.object;
        if !ok_shape {
            out.push("axiom-3", || format!("malformed witness for morphisms #{i} and #{f}"));
            continue;
        }
        if !c.is_pushout(i, f, w.leg_b, w.leg_c) {
            out.push("axiom-3", || format!("witness for {} along {} is not a pushout", label(c, i), label(c, f)));
        }
        if !c.is_cofibration(w.leg_c) {
            out.push("axiom-4", || format!("cobase change {} of {} is not a cofibration", label(c, w.leg_c), label(c, i)));
        }
    }
    for i in 0..c.num_morphisms() {
        if !c.is_cofibration(i) {
            continue;
        }
        for &f in c.out_of(c.src(i)) {
            if c.witness(i, f).is_none() && c.search_pushout(i, f).is_some() {
                out.push("axiom-3", || format!("pushout of {} along {} exists but has no witness", label(c, i), label(c, f)));
            }
        }
    }
}

/// For witnessed data `(i, f)` and weak equivalences `(α, β, γ)` onto witnessed
/// data `(i', f')`, the induced map of pushouts must be a weak equivalence.
fn check_gluing(c: &FiniteWaldhausenCategory, out: &mut Collector) {
    // If weak equivalences are isomorphisms, so is every induced map of
    // pushouts, and isomorphisms being weak equivalences is axiom 1.
    if (0..c.num_morphisms()).all(|f| !c.is_weak_equivalence(f) || c.is_isomorphism(f)) {
        return;
    }
    let we_from: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|a| c.out_of(a).iter().copied().filter(|&f| c.is_weak_equivalence(f)).collect())
        .collect();
    let mut ws: Vec<_> = c.witnesses().copied().collect();
    ws.sort_by_key(|w| (w.cofibration, w.map));
    for w in &ws {
        let (i, f) = (w.cofibration, w.map);
        let (a, b, cc) = (c.src(i), c.dst(i), c.dst(f));
        for &alpha in &we_from[a] {
            for &beta in &we_from[b] {
                let Some(beta_i) = c.compose(beta, i) else { continue };
                for &gamma in &we_from[cc] {
                    let Some(gamma_f) = c.compose(gamma, f) else { continue };
                    let (a2, b2, c2) = (c.dst(alpha), c.dst(beta), c.dst(gamma));
                    for &i2 in c.hom(a2, b2) {
                        if !c.is_cofibration(i2) || c.compose(i2, alpha) != Some(beta_i) {
                            continue;
                        }
                        for &f2 in c.hom(a2, c2) {
                            if c.compose(f2, alpha) != Some(gamma_f) {
                                continue;
                            }
                            let Some(w2) = c.witness(i2, f2) else { continue };
                            let (Some(u), Some(v)) = (c.compose(w2.leg_b, beta), c.compose(w2.leg_c, gamma)) else {
                                continue;
                            };
                            let induced = c
                                .hom(w.object, w2.object)
                                .iter()
                                .copied()
                                .find(|&m| c.compose(m, w.leg_b) == Some(u) && c.compose(m, w.leg_c) == Some(v));
                            match induced {
                                Some(m) if c.is_weak_equivalence(m) => {}
                                Some(m) => out.push("axiom-5", || {
                                    format!(
                                        "weak equivalences {}, {}, {} induce {}, which is not a weak equivalence",
                                        label(c, alpha),
                                        label(c, beta),
                                        label(c, gamma),
                                        label(c, m)
                                    )
                                }),
                                None => out.push("axiom-5", || {
                                    format!("no induced map between the pushouts of {} and {}", label(c, i), label(c, i2))
                                }),
                            }
                        }
                    }
                }
            }
        }
    }
}
