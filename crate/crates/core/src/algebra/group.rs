use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    /// `table[g * order + h] = g h`.
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a table, rejecting anything that fails [`FiniteGroup::validate_table`].
    pub fn new(names: Vec<String>, table: Vec<usize>, identity: usize) -> Result<Self> {
        let report = Self::validate_table(names.len(), &table, identity);
        if !report.is_valid() {
            return Err(Error::Validation(report.to_string()));
        }
        let n = names.len();
        let inverses = (0..n)
            .map(|g| (0..n).find(|&h| table[g * n + h] == identity).expect("validated"))
            .collect();
        Ok(FiniteGroup { names, table, identity, inverses })
    }

    /// Checks closure, the identity, inverses and associativity (all triples).
    pub fn validate_table(order: usize, table: &[usize], identity: usize) -> ValidationReport {
        let mut report = ValidationReport::new();
        if order == 0 {
            report.push("order", "group must be nonempty");
            return report;
        }
        if table.len() != order * order {
            report.push("table", format!("table has {} entries, need {}", table.len(), order * order));
            return report;
        }
        if identity >= order {
            report.push("identity", format!("identity index {identity} out of range"));
            return report;
        }
        if let Some(bad) = table.iter().position(|&x| x >= order) {
            report.push("closure", format!("entry ({}, {}) out of range", bad / order, bad % order));
            return report;
        }
        let m = |a: usize, b: usize| table[a * order + b];
        for g in 0..order {
            if m(identity, g) != g || m(g, identity) != g {
                report.push("identity", format!("element {identity} is not a two-sided identity for {g}"));
            }
            if !(0..order).any(|h| m(g, h) == identity && m(h, g) == identity) {
                report.push("inverse", format!("element {g} has no inverse"));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        report.push("associativity", format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        report
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Cyclic group of order `n`, elements `1, x, x^2, ...`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::new(names, table, 0).expect("cyclic group table is valid")
    }

    /// Symmetric group on `n` letters, elements in lexicographic order of one-line notation.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        permutations(&mut p, 0, &mut perms);
        perms.sort();
        let index = |q: &Vec<usize>| perms.binary_search(q).expect("permutation present");
        let k = perms.len();
        let mut table = Vec::with_capacity(k * k);
        for a in &perms {
            for b in &perms {
                // (a b)(i) = a(b(i))
                let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                table.push(index(&c));
            }
        }
        let names = perms
            .iter()
            .map(|q| format!("[{}]", q.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("")))
            .collect();
        let id: Vec<usize> = (0..n).collect();
        Self::new(names, table, index(&id)).expect("symmetric group table is valid")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Checks that `map` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < target.order())
            && (0..self.order())
                .all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_symmetric() {
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(c3.mul(2, 2), 1);
        assert_eq!(c3.inverse(1), 2);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.names()[s3.identity()], "[123]");
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        let table = vec![0, 1, 2, 1, 0, 0, 2, 2, 0];
        let report = FiniteGroup::validate_table(3, &table, 0);
        assert!(!report.is_valid());
        assert!(report.mentions("associativity"));
        assert!(FiniteGroup::new(vec!["a".into(), "b".into(), "c".into()], table, 0).is_err());
    }
}
