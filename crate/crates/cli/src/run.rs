//! Job configuration and command dispatch.

use std::collections::BTreeMap;
use std::path::Path;

use hochtrace::algebra::{Algebra, DEFAULT_ENUMERATION_CAP};
use hochtrace::hochschild::{cyclic_homology, NormalizedComplex, DEFAULT_LEVEL_CAP};
use hochtrace::ring::{BaseRing, Ring};
use hochtrace::suites::run_all;
use hochtrace::trace::{dennis_trace_homology_with, normalized_bar_complex, morita_map, DennisTraceK1, TraceLimits};
use hochtrace::waldhausen::{grothendieck_k0, k0_via_sdot, validate_waldhausen, FiniteWaldhausenCategory};
use hochtrace::{with_ring, Error, Result};

use crate::input::{
    detect_file_kind, detect_selector_kind, load_category, load_group, parse_matrix, validate_group, AlgebraSpec,
    InputKind,
};
use crate::output::{Agreement, Conventions, HomologyRow, MapRow, MoritaRow, Outcome, Report, SuiteRow, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

/// Bound used for category selectors and family files that give none.
pub const DEFAULT_BOUND: u64 = 2;
/// Largest `GL_n(A)` the trace commands enumerate.
pub const MAX_GROUP_ORDER: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Hh { algebra: String },
    Hc { algebra: String },
    GroupHomology { group: String },
    TraceK1 { algebra: String, matrix: String },
    TraceHomology { algebra: String, n: usize },
    Morita { algebra: String, n: usize },
    K0 { category: String },
    Validate { input: String, kind: Option<InputKind> },
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hh { .. } => "hh",
            Command::Hc { .. } => "hc",
            Command::GroupHomology { .. } => "group-homology",
            Command::TraceK1 { .. } => "trace-k1",
            Command::TraceHomology { .. } => "trace-homology",
            Command::Morita { .. } => "morita",
            Command::K0 { .. } => "k0",
            Command::Validate { .. } => "validate",
            Command::Selftest => "selftest",
        }
    }

    fn input(&self) -> Option<String> {
        match self {
            Command::Hh { algebra }
            | Command::Hc { algebra }
            | Command::TraceK1 { algebra, .. }
            | Command::TraceHomology { algebra, .. }
            | Command::Morita { algebra, .. } => Some(algebra.clone()),
            Command::GroupHomology { group } => Some(group.clone()),
            Command::K0 { category } => Some(category.clone()),
            Command::Validate { input, .. } => Some(input.clone()),
            Command::Selftest => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub max_degree: usize,
    /// Overrides the ring named by the input.
    pub ring: Option<BaseRing>,
    pub bound: Option<u64>,
    pub format: Format,
    pub seed: u64,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig { command, max_degree: 4, ring: None, bound: None, format: Format::Table, seed: 0 }
    }

    fn check(&self) -> Result<()> {
        if self.bound == Some(0) {
            return Err(Error::InvalidInput("--bound must be positive".into()));
        }
        match &self.command {
            Command::TraceHomology { n: 0, .. } | Command::Morita { n: 0, .. } => {
                Err(Error::InvalidInput("--n must be positive".into()))
            }
            _ => Ok(()),
        }
    }
}

/// What a run prints and how the process exits.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Validation(_)
        | Error::InvalidInput(_)
        | Error::Unsupported(_)
        | Error::NotInvertible(_)
        | Error::DimensionMismatch(_) => EXIT_VALIDATION,
        Error::CapExceeded(_) | Error::DegreeOutOfRange { .. } => EXIT_CAP,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

pub fn conventions() -> Conventions {
    let caps = BTreeMap::from([
        ("cyclic_bar_level_rank".to_string(), DEFAULT_LEVEL_CAP as u64),
        ("gl_enumeration".to_string(), DEFAULT_ENUMERATION_CAP.min(u64::MAX as u128) as u64),
        ("gl_group_order".to_string(), MAX_GROUP_ORDER as u64),
        ("sigma_delta_n_max".to_string(), 2),
        ("sigma_delta_k_cap".to_string(), 2),
    ]);
    Conventions {
        b_operator: "B = (1 - t_signed) s_{-1} N, t_signed = (-1)^q t, N = sum of powers of t_signed, s_{-1} inserts the unit in position 0".into(),
        pivot_rule: "Smith normal form pivot of smallest Euclidean size, ties broken row-major; invariant factors as canonical associates".into(),
        normalization: "normalized Hochschild complex in a unit-first basis frame".into(),
        caps,
    }
}

/// Runs a job. Errors become an exit code and a message; a report is
/// produced whenever the computation itself finished.
pub fn run(config: &JobConfig) -> RunOutput {
    let result = config.check().and_then(|()| execute(config));
    match result {
        Ok((report, code)) => {
            let stdout = match config.format {
                Format::Table => report.to_table(),
                Format::Structured => report.to_json(),
            };
            RunOutput { exit_code: code, report: Some(report), stdout, stderr: String::new() }
        }
        Err(e) => RunOutput { exit_code: exit_code(&e), report: None, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(config: &JobConfig) -> Result<(Report, i32)> {
    let mut ring_used: Option<BaseRing> = None;
    let (result, code) = match &config.command {
        Command::Hh { algebra } => {
            let (spec, ring) = resolve_algebra(algebra, config.ring, BaseRing::Integers)?;
            ring_used = Some(ring);
            let rows = with_ring!(ring, r => hh_rows(&spec.build(r)?, config.max_degree))?;
            (Outcome::HomologyTable { title: "HH_n".into(), rows }, EXIT_OK)
        }
        Command::Hc { algebra } => {
            // Cyclic homology is computed rationally; the input's own base ring is replaced.
            let (spec, _) = AlgebraSpec::load(algebra)?;
            let ring = config.ring.unwrap_or(BaseRing::Rationals);
            ring_used = Some(ring);
            let rows = with_ring!(ring, r => hc_rows(&spec.build(r)?, config.max_degree))?;
            (Outcome::HomologyTable { title: "HC_n".into(), rows }, EXIT_OK)
        }
        Command::GroupHomology { group } => {
            let g = load_group(group)?;
            let ring = config.ring.unwrap_or(BaseRing::Integers);
            ring_used = Some(ring);
            let rows = with_ring!(ring, r => {
                let bar = normalized_bar_complex(&g, &r, config.max_degree + 1)?;
                (0..=config.max_degree).map(|d| Ok(HomologyRow::new(d, bar.homology(d)?.structure()))).collect::<Result<Vec<_>>>()
            })?;
            (Outcome::HomologyTable { title: "H_n(BG)".into(), rows }, EXIT_OK)
        }
        Command::TraceK1 { algebra, matrix } => {
            let (spec, ring) = resolve_algebra(algebra, config.ring, BaseRing::Integers)?;
            ring_used = Some(ring);
            let outcome = with_ring!(ring, r => trace_k1(&spec.build(r)?, matrix))?;
            (outcome, EXIT_OK)
        }
        Command::TraceHomology { algebra, n } => {
            let (spec, ring) = resolve_algebra(algebra, config.ring, BaseRing::Integers)?;
            ring_used = Some(ring);
            let outcome = with_ring!(ring, r => trace_homology(&spec.build(r)?, *n, config.max_degree))?;
            (outcome, EXIT_OK)
        }
        Command::Morita { algebra, n } => {
            let (spec, ring) = resolve_algebra(algebra, config.ring, BaseRing::Integers)?;
            ring_used = Some(ring);
            let rows = with_ring!(ring, r => morita_rows(&spec.build(r)?, *n, config.max_degree))?;
            (Outcome::Morita { n: *n, rows }, EXIT_OK)
        }
        Command::K0 { category } => {
            let c = load_category(category, config.bound.unwrap_or(DEFAULT_BOUND))?;
            require_valid(&c)?;
            let outcome = k0(&c)?;
            let code = match &outcome {
                Outcome::K0 { verdict: Agreement::Disagree, .. } => EXIT_INTERNAL,
                _ => EXIT_OK,
            };
            (outcome, code)
        }
        Command::Validate { input, kind } => {
            let kind = match kind {
                Some(k) => *k,
                None if Path::new(input).is_file() => detect_file_kind(Path::new(input))?,
                None => detect_selector_kind(input),
            };
            let (outcome, ring) = validate(input, kind, config)?;
            ring_used = ring;
            let code = match &outcome {
                Outcome::Validation { valid: false, .. } => EXIT_VALIDATION,
                _ => EXIT_OK,
            };
            (outcome, code)
        }
        Command::Selftest => {
            let suites = run_all(config.seed);
            let passed = suites.iter().all(|s| s.passed());
            let suites = suites
                .into_iter()
                .map(|s| SuiteRow { name: s.name, checks: s.checks, failures: s.failures })
                .collect();
            (Outcome::Selftest { seed: config.seed, passed, suites }, if passed { EXIT_OK } else { EXIT_INTERNAL })
        }
    };
    let report = Report {
        tool: "hochtrace".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: config.command.name().into(),
        input: config.command.input(),
        ring: ring_used.map(|r| r.to_string()),
        max_degree: config.max_degree,
        seed: config.seed,
        conventions: conventions(),
        result,
    };
    Ok((report, code))
}

/// The algebra description and the ring to use: the override, else the
/// input's own ring, else `default`.
fn resolve_algebra(arg: &str, ring: Option<BaseRing>, default: BaseRing) -> Result<(AlgebraSpec, BaseRing)> {
    let (spec, own) = AlgebraSpec::load(arg)?;
    Ok((spec, ring.or(own).unwrap_or(default)))
}

fn hh_rows<R: Ring>(a: &Algebra<R>, max_degree: usize) -> Result<Vec<HomologyRow>> {
    let c = NormalizedComplex::new(a, max_degree + 1)?;
    (0..=max_degree).map(|d| Ok(HomologyRow::new(d, c.homology(d)?.structure()))).collect()
}

fn hc_rows<R: Ring>(a: &Algebra<R>, max_degree: usize) -> Result<Vec<HomologyRow>> {
    (0..=max_degree).map(|d| Ok(HomologyRow::new(d, cyclic_homology(a, d)?.structure()))).collect()
}

fn format_column<R: Ring>(ring: &R, v: &[R::Elem]) -> Vec<String> {
    v.iter().map(|x| ring.format(x)).collect()
}

fn trace_k1<R: Ring>(a: &Algebra<R>, literal: &str) -> Result<Outcome> {
    let (n, g) = parse_matrix(a, literal)?;
    let trace = DennisTraceK1::new(a)?;
    let class = trace.evaluate(n, &g)?;
    let ring = a.ring();
    Ok(Outcome::TraceK1 {
        matrix: literal.trim().to_string(),
        n,
        target: HomologyRow::new(1, trace.homology().structure()),
        is_zero: class.coordinates.iter().all(|x| ring.is_zero(x)),
        coordinates: format_column(ring, &class.coordinates),
    })
}

fn trace_homology<R: Ring>(a: &Algebra<R>, n: usize, max_degree: usize) -> Result<Outcome> {
    let limits = TraceLimits { max_degree, max_group_order: MAX_GROUP_ORDER, ..TraceLimits::default() };
    let mut rows = Vec::new();
    let mut group_order = 0;
    for d in 0..=max_degree {
        let map = dennis_trace_homology_with(a, n, d, limits)?;
        group_order = map.group.group.order();
        rows.push(MapRow {
            degree: d,
            source: HomologyRow::new(d, map.source.structure()),
            target: HomologyRow::new(d, map.target.structure()),
            matrix: map.matrix.iter().map(|c| format_column(a.ring(), c)).collect(),
        });
    }
    Ok(Outcome::TraceHomology { n, group_order, rows })
}

fn morita_rows<R: Ring>(a: &Algebra<R>, n: usize, max_degree: usize) -> Result<Vec<MoritaRow>> {
    (0..=max_degree)
        .map(|d| {
            let m = morita_map(a, n, d)?;
            Ok(MoritaRow {
                map: MapRow {
                    degree: d,
                    source: HomologyRow::new(d, m.source.structure()),
                    target: HomologyRow::new(d, m.target.structure()),
                    matrix: m.matrix.iter().map(|c| format_column(a.ring(), c)).collect(),
                },
                verdict: if m.is_isomorphism { Verdict::Iso } else { Verdict::NotIso },
            })
        })
        .collect()
}

fn require_valid(c: &FiniteWaldhausenCategory) -> Result<()> {
    let report = validate_waldhausen(c);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Validation(report.to_string()))
    }
}

fn k0(c: &FiniteWaldhausenCategory) -> Result<Outcome> {
    let sdot = k0_via_sdot(c)?.group;
    let grothendieck = grothendieck_k0(c)?.group;
    let verdict = if sdot == grothendieck { Agreement::Agree } else { Agreement::Disagree };
    Ok(Outcome::K0 {
        category: c.name().to_string(),
        objects: c.num_objects(),
        morphisms: c.num_morphisms(),
        sdot,
        grothendieck,
        verdict,
    })
}

fn validate(input: &str, kind: InputKind, config: &JobConfig) -> Result<(Outcome, Option<BaseRing>)> {
    let (target, label, report, ring) = match kind {
        InputKind::Algebra => {
            let (spec, ring) = resolve_algebra(input, config.ring, BaseRing::Integers)?;
            let report = with_ring!(ring, r => spec.build_unchecked(r).map(|a| a.validate()))?;
            (input.to_string(), "algebra", report, Some(ring))
        }
        InputKind::Group => {
            let (name, report) = validate_group(input)?;
            (name, "group", report, None)
        }
        InputKind::Category => {
            let c = load_category(input, config.bound.unwrap_or(DEFAULT_BOUND))?;
            (c.name().to_string(), "category", validate_waldhausen(&c), None)
        }
    };
    let outcome =
        Outcome::Validation { target, input_kind: label.into(), valid: report.is_valid(), failures: report.failures };
    Ok((outcome, ring))
}
