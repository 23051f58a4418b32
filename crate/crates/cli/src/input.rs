//! Input files (TOML) and built-in selectors for algebras, groups and categories.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use hochtrace::algebra::{Algebra, FiniteGroup};
use hochtrace::linalg::SparseVec;
use hochtrace::report::ValidationReport;
use hochtrace::ring::{BaseRing, Ring};
use hochtrace::waldhausen::{
    finite_modules, pointed_sets, trivial, vect_gf, CategoryTables, FiniteWaldhausenCategory, Morphism,
    PushoutWitness,
};
use hochtrace::{Error, Result};

/// What an input describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Algebra,
    Group,
    Category,
}

/// A coefficient written as a TOML integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn parse<R: Ring>(&self, ring: &R) -> Result<R::Elem> {
        match self {
            Coeff::Int(n) => Ok(ring.from_i64(*n)),
            Coeff::Text(s) => ring.parse(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub base: Option<String>,
    pub basis: Vec<String>,
    pub unit: Vec<Coeff>,
    /// `(i, j, [(k, c), ...])`: `e_i e_j = Σ c e_k`. Omitted products are zero.
    #[serde(default)]
    pub mul: Vec<(usize, usize, Vec<(usize, Coeff)>)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub identity: Option<String>,
    /// `table[a][b]` names the product `a b`.
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub name: String,
    pub src: String,
    pub dst: String,
    #[serde(default)]
    pub cofibration: bool,
    #[serde(default)]
    pub weak_equivalence: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub cofibration: String,
    pub map: String,
    pub object: String,
    pub leg_b: String,
    pub leg_c: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    /// Family selector: `trivial`, `vect_gf`, `pointed_sets` or `finite_modules`.
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub q: Option<u64>,
    #[serde(default)]
    pub m: Option<u64>,
    #[serde(default)]
    pub bound: Option<u64>,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub zero: Option<String>,
    #[serde(default)]
    pub sizes: Vec<u64>,
    /// Non-identity morphisms; identities `id_<object>` are added automatically.
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    /// `(g, f, h)` meaning `g ∘ f = h`; composites with identities are implied.
    #[serde(default)]
    pub composition: Vec<(String, String, String)>,
    /// Optional pushout witnesses; when absent they are found by search.
    #[serde(default)]
    pub witnesses: Option<Vec<WitnessEntry>>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_toml<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Guesses the kind of a file from its `kind` key or its fields.
pub fn detect_file_kind(path: &Path) -> Result<InputKind> {
    let value: toml::Table = parse_toml(path, &read(path)?)?;
    if let Some(kind) = value.get("kind").and_then(|k| k.as_str()) {
        return match kind {
            "algebra" => Ok(InputKind::Algebra),
            "group" => Ok(InputKind::Group),
            "category" => Ok(InputKind::Category),
            other => Err(Error::Parse(format!("{}: unknown kind `{other}`", path.display()))),
        };
    }
    if value.contains_key("basis") {
        Ok(InputKind::Algebra)
    } else if value.contains_key("elements") {
        Ok(InputKind::Group)
    } else if value.contains_key("family") || value.contains_key("objects") {
        Ok(InputKind::Category)
    } else {
        Err(Error::Parse(format!("{}: cannot tell whether this is an algebra, group or category", path.display())))
    }
}

/// Guesses the kind of a built-in selector.
pub fn detect_selector_kind(s: &str) -> InputKind {
    let head = s.split(':').next().unwrap_or("");
    match head {
        "trivial" | "vect_gf" | "pointed_sets" | "finite_modules" => InputKind::Category,
        "cyclic" | "symmetric" => InputKind::Group,
        _ => InputKind::Algebra,
    }
}

fn number(s: &str, what: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not a valid {what}")))
}

// ---------------------------------------------------------------- groups

/// A group read from a file or a selector (`trivial`, `cyclic:n`, `symmetric:n`).
pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    let path = Path::new(arg);
    if path.is_file() {
        let f: GroupFile = parse_toml(path, &read(path)?)?;
        return group_from_file(&f).map_err(|e| locate(path, e));
    }
    let parts: Vec<&str> = arg.split(':').collect();
    match parts.as_slice() {
        ["trivial"] => Ok(FiniteGroup::trivial()),
        ["cyclic", n] => match number(n, "group order")? {
            0 => Err(Error::InvalidInput("cyclic group of order 0".into())),
            n => Ok(FiniteGroup::cyclic(n as usize)),
        },
        ["symmetric", n] => match number(n, "degree")? {
            n @ 1..=4 => Ok(FiniteGroup::symmetric(n as usize)),
            n => Err(Error::CapExceeded(format!("symmetric group S_{n}: degree must be 1..=4"))),
        },
        _ => Err(Error::Parse(format!("`{arg}` is neither a group file nor a group selector"))),
    }
}

fn locate(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
        Error::InvalidInput(m) => Error::InvalidInput(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn group_table(f: &GroupFile) -> Result<(Vec<usize>, usize)> {
    let index: HashMap<&str, usize> = f.elements.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != f.elements.len() {
        return Err(Error::Parse("element names must be distinct".into()));
    }
    let look = |name: &str| index.get(name).copied().ok_or_else(|| Error::Parse(format!("unknown element `{name}`")));
    let identity = match &f.identity {
        Some(e) => look(e)?,
        None => 0,
    };
    let n = f.elements.len();
    if f.table.len() != n || f.table.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("table must be {n} x {n}")));
    }
    let table = f.table.iter().flatten().map(|x| look(x)).collect::<Result<Vec<_>>>()?;
    Ok((table, identity))
}

/// Failures shown per rule; the rest are counted.
const PER_RULE: usize = 8;

/// Replaces element indices in a report by names, keeping a few failures per rule.
fn name_elements(report: ValidationReport, names: &[String]) -> ValidationReport {
    let mut out = ValidationReport::new();
    let mut omitted: std::collections::BTreeMap<String, usize> = Default::default();
    for f in report.failures {
        if out.failures.iter().filter(|g| g.rule == f.rule).count() >= PER_RULE {
            *omitted.entry(f.rule).or_default() += 1;
            continue;
        }
        let mut detail = String::new();
        let mut digits = String::new();
        let flush = |digits: &mut String, detail: &mut String| {
            if !digits.is_empty() {
                match digits.parse::<usize>().ok().and_then(|i| names.get(i)) {
                    Some(n) => detail.push_str(n),
                    None => detail.push_str(digits),
                }
                digits.clear();
            }
        };
        for ch in f.detail.chars() {
            if ch.is_ascii_digit() {
                digits.push(ch);
            } else {
                flush(&mut digits, &mut detail);
                detail.push(ch);
            }
        }
        flush(&mut digits, &mut detail);
        out.push(f.rule, detail);
    }
    for (rule, n) in omitted {
        out.push(rule, format!("{n} further violations omitted"));
    }
    out
}

fn group_from_file(f: &GroupFile) -> Result<FiniteGroup> {
    let (table, identity) = group_table(f)?;
    let report = name_elements(FiniteGroup::validate_table(f.elements.len(), &table, identity), &f.elements);
    if !report.is_valid() {
        return Err(Error::Validation(report.to_string()));
    }
    FiniteGroup::new(f.elements.clone(), table, identity)
}

/// Axiom report for a group file or selector.
pub fn validate_group(arg: &str) -> Result<(String, ValidationReport)> {
    let path = Path::new(arg);
    if path.is_file() {
        let f: GroupFile = parse_toml(path, &read(path)?)?;
        let (table, identity) = group_table(&f).map_err(|e| locate(path, e))?;
        let report = name_elements(FiniteGroup::validate_table(f.elements.len(), &table, identity), &f.elements);
        return Ok((f.name.clone().unwrap_or_else(|| arg.to_string()), report));
    }
    load_group(arg).map(|_| (arg.to_string(), ValidationReport::new()))
}

// ---------------------------------------------------------------- algebras

/// An algebra description, instantiated over a ring chosen later.
#[derive(Clone, Debug)]
pub enum AlgebraSpec {
    File { path: String, file: AlgebraFile },
    /// The base ring itself.
    Base,
    Truncated(usize),
    GroupAlgebra(FiniteGroup),
    Matrix(usize),
}

impl AlgebraSpec {
    /// Reads a file or parses a selector: `Z`, `Q`, `GF:p`, `Zmod:m`, `base`,
    /// `trunc:n`, `group:<group selector>`, `matrix:n`.
    pub fn load(arg: &str) -> Result<(Self, Option<BaseRing>)> {
        let path = Path::new(arg);
        if path.is_file() {
            let file: AlgebraFile = parse_toml(path, &read(path)?)?;
            let ring = match &file.base {
                Some(b) => Some(b.parse::<BaseRing>().map_err(|e| locate(path, e))?),
                None => None,
            };
            return Ok((AlgebraSpec::File { path: arg.to_string(), file }, ring));
        }
        if let Ok(ring) = arg.parse::<BaseRing>() {
            return Ok((AlgebraSpec::Base, Some(ring)));
        }
        let (head, rest) = arg.split_once(':').unwrap_or((arg, ""));
        match head {
            "base" if rest.is_empty() => Ok((AlgebraSpec::Base, None)),
            "trunc" => Ok((AlgebraSpec::Truncated(number(rest, "truncation degree")? as usize), None)),
            "group" => Ok((AlgebraSpec::GroupAlgebra(load_group(rest)?), None)),
            "matrix" => Ok((AlgebraSpec::Matrix(number(rest, "matrix size")? as usize), None)),
            _ => Err(Error::Parse(format!("`{arg}` is neither an algebra file nor an algebra selector"))),
        }
    }

    /// The algebra over `ring`, without checking the axioms.
    pub fn build_unchecked<R: Ring>(&self, ring: R) -> Result<Algebra<R>> {
        match self {
            AlgebraSpec::File { path, file } => algebra_from_file(ring, file).map_err(|e| locate(Path::new(path), e)),
            AlgebraSpec::Base => Ok(Algebra::base(ring)),
            AlgebraSpec::Truncated(n) => Algebra::truncated_polynomial(ring, *n),
            AlgebraSpec::GroupAlgebra(g) => Ok(Algebra::group_algebra(g, ring)),
            AlgebraSpec::Matrix(n) => Algebra::base(ring).matrix_algebra(*n),
        }
    }

    /// The algebra over `ring`, rejecting structure constants that fail the axioms.
    pub fn build<R: Ring>(&self, ring: R) -> Result<Algebra<R>> {
        let a = self.build_unchecked(ring)?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report.to_string()));
        }
        Ok(a)
    }
}

fn algebra_from_file<R: Ring>(ring: R, f: &AlgebraFile) -> Result<Algebra<R>> {
    let n = f.basis.len();
    let unit = f.unit.iter().map(|c| c.parse(&ring)).collect::<Result<Vec<_>>>()?;
    let mut products: Vec<SparseVec<R::Elem>> = vec![Vec::new(); n * n];
    for (e, (i, j, terms)) in f.mul.iter().enumerate() {
        if *i >= n || *j >= n {
            return Err(Error::Parse(format!("mul entry {e}: basis index out of range 0..{n}")));
        }
        for (k, c) in terms {
            if *k >= n {
                return Err(Error::Parse(format!("mul entry {e}: basis index {k} out of range 0..{n}")));
            }
            products[i * n + j].push((*k, c.parse(&ring)?));
        }
    }
    Algebra::from_parts(ring, f.basis.clone(), unit, products)
}

/// Parses an algebra element such as `1 + x`, `2*x^2 - 1/2*g` or `-3`.
pub fn parse_element<R: Ring>(a: &Algebra<R>, s: &str) -> Result<Vec<R::Elem>> {
    let ring = a.ring();
    let mut out = a.zero_element();
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty algebra element".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].trim_end().ends_with(['*', '^']) {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let term = term.trim();
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term.strip_prefix('+').unwrap_or(term).trim()),
        };
        let (coeff, vector) = match body.split_once('*') {
            Some((c, name)) => (ring.parse(c)?, basis_vector(a, name.trim())?),
            None => match basis_vector(a, body) {
                Ok(v) => (ring.one(), v),
                Err(_) => (ring.parse(body)?, a.unit().to_vec()),
            },
        };
        let coeff = if sign { ring.neg(&coeff) } else { coeff };
        for (o, v) in out.iter_mut().zip(&vector) {
            *o = ring.add(o, &ring.mul(&coeff, v));
        }
    }
    Ok(out)
}

fn basis_vector<R: Ring>(a: &Algebra<R>, name: &str) -> Result<Vec<R::Elem>> {
    let k = a
        .basis_names()
        .iter()
        .position(|b| b == name)
        .ok_or_else(|| Error::Parse(format!("unknown basis element `{name}`")))?;
    Ok(a.basis_element(k))
}

/// Parses a square matrix literal `[a, b; c, d]` of algebra elements,
/// returning its size and its coordinates in `M_n(A)`.
pub fn parse_matrix<R: Ring>(a: &Algebra<R>, s: &str) -> Result<(usize, Vec<R::Elem>)> {
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s.trim());
    let rows: Vec<Vec<&str>> = inner.split(';').map(|r| r.split(',').collect()).collect();
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix literal `{s}` is not square")));
    }
    let r = a.rank();
    let mut coords = vec![a.ring().zero(); n * n * r];
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let v = parse_element(a, entry)?;
            coords[(i * n + j) * r..(i * n + j + 1) * r].clone_from_slice(&v);
        }
    }
    Ok((n, coords))
}

// ---------------------------------------------------------------- categories

/// A category from a file or a selector: `trivial`, `vect_gf:q[:bound]`,
/// `pointed_sets[:bound]`, `finite_modules:m[:bound]`. A missing bound comes
/// from `default_bound`.
pub fn load_category(arg: &str, default_bound: u64) -> Result<FiniteWaldhausenCategory> {
    let path = Path::new(arg);
    if path.is_file() {
        let f: CategoryFile = parse_toml(path, &read(path)?)?;
        return category_from_file(&f, default_bound).map_err(|e| locate(path, e));
    }
    let parts: Vec<&str> = arg.split(':').collect();
    let bound = |k: usize| parts.get(k).map_or(Ok(default_bound), |b| number(b, "bound"));
    match parts[0] {
        "trivial" if parts.len() == 1 => trivial(),
        "vect_gf" if (2..=3).contains(&parts.len()) => vect_gf(number(parts[1], "field order")?, bound(2)?),
        "pointed_sets" if parts.len() <= 2 => pointed_sets(bound(1)?),
        "finite_modules" if (2..=3).contains(&parts.len()) => finite_modules(number(parts[1], "modulus")?, bound(2)?),
        _ => Err(Error::Parse(format!("`{arg}` is neither a category file nor a category selector"))),
    }
}

fn category_from_file(f: &CategoryFile, default_bound: u64) -> Result<FiniteWaldhausenCategory> {
    if let Some(family) = &f.family {
        let bound = f.bound.unwrap_or(default_bound);
        let need = |x: Option<u64>, what: &str| x.ok_or_else(|| Error::Parse(format!("family `{family}` needs `{what}`")));
        return match family.as_str() {
            "trivial" => trivial(),
            "vect_gf" => vect_gf(need(f.q, "q")?, bound),
            "pointed_sets" => pointed_sets(bound),
            "finite_modules" => finite_modules(need(f.m, "m")?, bound),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        };
    }
    let objects: HashMap<&str, usize> = f.objects.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if objects.len() != f.objects.len() {
        return Err(Error::Parse("object names must be distinct".into()));
    }
    let obj = |name: &str| objects.get(name).copied().ok_or_else(|| Error::Parse(format!("unknown object `{name}`")));
    let zero = obj(f.zero.as_deref().ok_or_else(|| Error::Parse("explicit category needs `zero`".into()))?)?;
    let mut morphisms: Vec<Morphism> = f
        .objects
        .iter()
        .enumerate()
        .map(|(a, name)| Morphism {
            src: a,
            dst: a,
            cofibration: true,
            weak_equivalence: true,
            label: format!("id_{name}"),
        })
        .collect();
    for m in &f.morphisms {
        morphisms.push(Morphism {
            src: obj(&m.src)?,
            dst: obj(&m.dst)?,
            cofibration: m.cofibration,
            weak_equivalence: m.weak_equivalence,
            label: m.name.clone(),
        });
    }
    let index: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.label.as_str(), i)).collect();
    if index.len() != morphisms.len() {
        return Err(Error::Parse("morphism names must be distinct and differ from id_<object>".into()));
    }
    let mor = |name: &str| index.get(name).copied().ok_or_else(|| Error::Parse(format!("unknown morphism `{name}`")));
    let n = f.objects.len();
    let mut composition = Vec::new();
    for (k, m) in morphisms.iter().enumerate() {
        composition.push((k, m.src, k));
        if k >= n {
            composition.push((m.dst, k, k));
        }
    }
    for (g, f2, h) in &f.composition {
        composition.push((mor(g)?, mor(f2)?, mor(h)?));
    }
    let witnesses = match &f.witnesses {
        Some(ws) => Some(
            ws.iter()
                .map(|w| {
                    Ok(PushoutWitness {
                        cofibration: mor(&w.cofibration)?,
                        map: mor(&w.map)?,
                        object: obj(&w.object)?,
                        leg_b: mor(&w.leg_b)?,
                        leg_c: mor(&w.leg_c)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    FiniteWaldhausenCategory::from_tables(CategoryTables {
        name: f.name.clone().unwrap_or_else(|| "explicit".into()),
        objects: f.objects.clone(),
        sizes: f.sizes.clone(),
        bound: f.bound,
        zero,
        morphisms,
        composition,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hochtrace::ring::{Integers, ModRing};

    #[test]
    fn elements_and_matrices() {
        let f2 = ModRing::prime_field(2).unwrap();
        let a = Algebra::truncated_polynomial(f2, 2).unwrap();
        assert_eq!(parse_element(&a, "1 + x").unwrap(), vec![1, 1]);
        assert_eq!(parse_element(&a, "x - 1").unwrap(), vec![1, 1]);
        let (n, m) = parse_matrix(&a, "[1, x; 0, 1]").unwrap();
        assert_eq!((n, m), (2, vec![1, 0, 0, 1, 0, 0, 1, 0]));
        assert!(parse_element(&a, "y").is_err());
        let z = Algebra::truncated_polynomial(Integers, 3).unwrap();
        assert_eq!(parse_element(&z, "2*x^2 - 3").unwrap(), vec![(-3).into(), 0.into(), 2.into()]);
    }

    #[test]
    fn selectors() {
        assert_eq!(detect_selector_kind("vect_gf:2:2"), InputKind::Category);
        assert_eq!(detect_selector_kind("cyclic:3"), InputKind::Group);
        assert_eq!(detect_selector_kind("trunc:2"), InputKind::Algebra);
        assert_eq!(load_group("symmetric:3").unwrap().order(), 6);
        assert_eq!(load_category("vect_gf:2", 2).unwrap().num_objects(), 3);
        assert!(matches!(AlgebraSpec::load("GF:2").unwrap(), (AlgebraSpec::Base, Some(BaseRing::PrimeField(2)))));
        assert!(AlgebraSpec::load("nonsense").is_err());
    }
}
