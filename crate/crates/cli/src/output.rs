//! Reports: a serde data model shared by the structured (JSON) and table formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use hochtrace::linalg::{FPAbelianGroup, HomologyStructure};
use hochtrace::report::Failure;

/// Everything a run produced, plus the settings needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Option<String>,
    pub ring: Option<String>,
    pub max_degree: usize,
    pub seed: u64,
    pub conventions: Conventions,
    pub result: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub b_operator: String,
    pub pivot_rule: String,
    pub normalization: String,
    pub caps: BTreeMap<String, u64>,
}

/// One homology group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub degree: usize,
    /// Display form such as `Z`, `0`, `Z/2 + Z/4` or `F2^3`.
    pub group: String,
    pub structure: HomologyStructure,
}

impl HomologyRow {
    pub fn new(degree: usize, structure: HomologyStructure) -> Self {
        HomologyRow { degree, group: structure.to_string(), structure }
    }
}

/// A map on homology in one degree, as coordinates of images of source generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapRow {
    pub degree: usize,
    pub source: HomologyRow,
    pub target: HomologyRow,
    /// Column `k` is the image of source generator `k`.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "ISO")]
    Iso,
    #[serde(rename = "NOT-ISO")]
    NotIso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Agreement {
    #[serde(rename = "AGREE")]
    Agree,
    #[serde(rename = "DISAGREE")]
    Disagree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoritaRow {
    #[serde(flatten)]
    pub map: MapRow,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    HomologyTable {
        title: String,
        rows: Vec<HomologyRow>,
    },
    TraceK1 {
        matrix: String,
        n: usize,
        target: HomologyRow,
        coordinates: Vec<String>,
        is_zero: bool,
    },
    TraceHomology {
        n: usize,
        group_order: usize,
        rows: Vec<MapRow>,
    },
    Morita {
        n: usize,
        rows: Vec<MoritaRow>,
    },
    K0 {
        category: String,
        objects: usize,
        morphisms: usize,
        sdot: FPAbelianGroup,
        grothendieck: FPAbelianGroup,
        verdict: Agreement,
    },
    Validation {
        target: String,
        input_kind: String,
        valid: bool,
        failures: Vec<Failure>,
    },
    Selftest {
        seed: u64,
        passed: bool,
        suites: Vec<SuiteRow>,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let ring = self.ring.as_deref().map(|r| format!(" over {r}")).unwrap_or_default();
        match &self.result {
            Outcome::HomologyTable { title, rows } => {
                let _ = writeln!(out, "{title}{ring}");
                for r in rows {
                    let _ = writeln!(out, "  {:>3}  {}", r.degree, r.group);
                }
            }
            Outcome::TraceK1 { matrix, n, target, coordinates, is_zero } => {
                let _ = writeln!(out, "Dennis trace of {matrix} in GL_{n}{ring}");
                let _ = writeln!(out, "  HH_1 = {}", target.group);
                let _ = writeln!(out, "  class = [{}]{}", coordinates.join(", "), if *is_zero { " (zero)" } else { "" });
            }
            Outcome::TraceHomology { n, group_order, rows } => {
                let _ = writeln!(out, "Dennis trace H_d(BGL_{n}) -> HH_d{ring}, |GL_{n}| = {group_order}");
                for r in rows {
                    let _ = writeln!(out, "  {:>3}  {} -> {}  {}", r.degree, r.source.group, r.target.group, matrix_text(&r.matrix));
                }
            }
            Outcome::Morita { n, rows } => {
                let _ = writeln!(out, "Multitrace HH_d(M_{n}(A)) -> HH_d(A){ring}");
                for r in rows {
                    let verdict = match r.verdict {
                        Verdict::Iso => "ISO",
                        Verdict::NotIso => "NOT-ISO",
                    };
                    let _ = writeln!(out, "  {:>3}  {} -> {}  {verdict}", r.map.degree, r.map.source.group, r.map.target.group);
                }
            }
            Outcome::K0 { category, objects, morphisms, sdot, grothendieck, verdict } => {
                let _ = writeln!(out, "K_0 of {category} ({objects} objects, {morphisms} morphisms)");
                let _ = writeln!(out, "  S-construction  {sdot}");
                let _ = writeln!(out, "  Grothendieck    {grothendieck}");
                let _ = writeln!(out, "  {}", if *verdict == Agreement::Agree { "AGREE" } else { "DISAGREE" });
            }
            Outcome::Validation { target, input_kind, valid, failures } => {
                let _ = writeln!(out, "{input_kind} {target}: {}", if *valid { "valid" } else { "INVALID" });
                for f in failures {
                    let _ = writeln!(out, "  [{}] {}", f.rule, f.detail);
                }
            }
            Outcome::Selftest { seed, passed, suites } => {
                let _ = writeln!(out, "selftest, seed {seed}");
                for s in suites {
                    let status = if s.failures.is_empty() { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "  {status}  {:<18} {} checks", s.name, s.checks);
                    for f in &s.failures {
                        let _ = writeln!(out, "        {f}");
                    }
                }
                let _ = writeln!(out, "  {}", if *passed { "all suites passed" } else { "FAILURES" });
            }
        }
        out
    }
}

fn matrix_text(m: &[Vec<String>]) -> String {
    let cols: Vec<String> = m.iter().map(|c| format!("({})", c.join(", "))).collect();
    format!("[{}]", cols.join(" "))
}
