use std::path::PathBuf;

use instanton_core::bundle::{canonicalize, splitting_depth};
use instanton_core::cohomology::{instanton_numbers, NumbersReport};
use instanton_core::scalar::to_fraction_string;
use instanton_core::singularities::{classical_invariants, curve_invariants, ClassicalInvariants};
use instanton_core::strata::{check_embedding, local_moduli_summary, sweep, SweepReport};
use instanton_core::tables::{recompute_tables, CellDiff, ComputedTable};
use instanton_core::{
    parse_laurent, CanonicalCoefficients, CurveGerm, InstantonNumbers, Result, SweepMode,
    SweepSpec, Vars, Window,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::render::{to_json, yes_no, CsvTable, Output, Report, Status, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Certificate {
    pub width: Window,
    pub height: Window,
}

impl From<&NumbersReport> for Certificate {
    fn from(r: &NumbersReport) -> Self {
        Self {
            width: r.width_window,
            height: r.height_window,
        }
    }
}

fn report<I: Serialize, R: Serialize, W: Serialize>(
    command: &'static str,
    inputs: I,
    results: R,
    certifying_window: W,
) -> String {
    to_json(&Report {
        schema_version: SCHEMA_VERSION,
        command,
        inputs,
        results,
        certifying_window,
    })
}

fn numbers_cells(n: &InstantonNumbers) -> Vec<String> {
    vec![n.width.to_string(), n.height.to_string(), n.charge.to_string()]
}

fn classical_cells(c: &ClassicalInvariants) -> Vec<String> {
    [c.multiplicity, c.delta, c.milnor, c.tjurina, c.branches]
        .iter()
        .map(usize::to_string)
        .collect()
}

const CLASSICAL_HEADER: [&str; 5] = ["mult", "delta", "mu", "tau", "branches"];

#[derive(Serialize)]
struct CurveInputs<'a> {
    polynomial: &'a str,
    j: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CurveResults {
    classical: ClassicalInvariants,
    canonical_p: String,
    numbers: InstantonNumbers,
}

pub fn curve(poly: &str, j: u32, cfg: &RunConfig) -> Result<Output> {
    let germ = CurveGerm::new(parse_laurent(poly, Vars::XY)?)?;
    let r = curve_invariants(&germ, j, &cfg.schedule())?;
    let canonical_p = r.data.p().display(Vars::ZU).to_string();
    let mut header = vec!["polynomial", "j", "canonical_p"];
    header.extend(CLASSICAL_HEADER);
    header.extend(["w", "h", "charge"]);
    let mut t = CsvTable::new("curve", &header);
    let mut row = vec![poly.trim().to_string(), j.to_string(), canonical_p.clone()];
    row.extend(classical_cells(&r.classical));
    row.extend(numbers_cells(&r.numbers.numbers));
    t.push(row);
    Ok(Output {
        json: report(
            "curve",
            CurveInputs { polynomial: poly.trim(), j },
            CurveResults {
                classical: r.classical,
                canonical_p,
                numbers: r.numbers.numbers,
            },
            Certificate::from(&r.numbers),
        ),
        text: t.to_text(),
        csv: vec![t],
        status: Status::Ok,
    })
}

#[derive(Serialize)]
struct BundleInputs<'a> {
    p: &'a str,
    j: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BundleResults {
    canonical_p: String,
    coefficients: CanonicalCoefficients,
    /// Largest `n` such that the bundle splits on the `n`-th neighbourhood;
    /// `null` for the split bundle.
    splitting_depth: Option<u32>,
    numbers: InstantonNumbers,
}

pub fn bundle(poly: &str, j: u32, cfg: &RunConfig) -> Result<Output> {
    let d = canonicalize(j, &parse_laurent(poly, Vars::ZU)?)?;
    let r = instanton_numbers(&d, &cfg.schedule())?;
    let canonical_p = d.p().display(Vars::ZU).to_string();
    let depth = splitting_depth(&d);
    let mut t = CsvTable::new(
        "bundle",
        &["p", "j", "canonical_p", "splitting_depth", "w", "h", "charge"],
    );
    let mut row = vec![
        poly.trim().to_string(),
        j.to_string(),
        canonical_p.clone(),
        depth.map_or("none".into(), |n| n.to_string()),
    ];
    row.extend(numbers_cells(&r.numbers));
    t.push(row);
    Ok(Output {
        json: report(
            "bundle",
            BundleInputs { p: poly.trim(), j },
            BundleResults {
                canonical_p,
                coefficients: d.coefficients(),
                splitting_depth: depth,
                numbers: r.numbers,
            },
            Certificate::from(&r),
        ),
        text: t.to_text(),
        csv: vec![t],
        status: Status::Ok,
    })
}

#[derive(Serialize)]
struct ClassicalInputs<'a> {
    polynomial: &'a str,
}

pub fn classical(poly: &str) -> Result<Output> {
    let germ = CurveGerm::new(parse_laurent(poly, Vars::XY)?)?;
    let c = classical_invariants(&germ)?;
    let mut header = vec!["polynomial"];
    header.extend(CLASSICAL_HEADER);
    let mut t = CsvTable::new("classical", &header);
    let mut row = vec![poly.trim().to_string()];
    row.extend(classical_cells(&c));
    t.push(row);
    Ok(Output {
        json: report(
            "classical",
            ClassicalInputs { polynomial: poly.trim() },
            c,
            None::<Certificate>,
        ),
        text: t.to_text(),
        csv: vec![t],
        status: Status::Ok,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SweepInputs {
    j: u32,
    mode: SweepMode,
    grid_values: Vec<String>,
    samples: usize,
    seed: u64,
}

impl SweepInputs {
    fn of(spec: &SweepSpec) -> Self {
        let random = spec.mode == SweepMode::RandomSample;
        Self {
            j: spec.j,
            mode: spec.mode,
            grid_values: if random {
                Vec::new()
            } else {
                spec.coefficient_set.iter().map(to_fraction_string).collect()
            },
            samples: if random { spec.sample_count } else { 0 },
            seed: if random { spec.seed } else { 0 },
        }
    }
}

pub fn sweep_spec(j: u32, grid: bool, cfg: &RunConfig) -> SweepSpec {
    let mut spec = if grid {
        SweepSpec::grid(j)
    } else {
        SweepSpec::random(j, cfg.samples, cfg.seed)
    };
    spec.coefficient_set = cfg.grid_values.clone();
    spec.grid_cap = cfg.grid_cap;
    spec.schedule = cfg.schedule();
    spec
}

fn coefficient_list(c: &CanonicalCoefficients) -> String {
    let parts: Vec<String> = c.coeffs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn violation_lines(violations: &[String]) -> String {
    violations.iter().map(|v| format!("violation: {v}\n")).collect()
}

pub fn strata(j: u32, grid: bool, cfg: &RunConfig) -> Result<Output> {
    let spec = sweep_spec(j, grid, cfg);
    let r: SweepReport = sweep(&spec)?;
    let mut t = CsvTable::new(
        "strata",
        &["w", "h", "charge", "samples", "observed_parameter_count", "representatives"],
    );
    for s in &r.records {
        let reps: Vec<String> = s.representatives.iter().map(coefficient_list).collect();
        t.push(vec![
            s.width.to_string(),
            s.height.to_string(),
            s.charge.to_string(),
            s.sample_count.to_string(),
            s.observed_parameter_count.to_string(),
            reps.join("; "),
        ]);
    }
    let status = if r.violations.is_empty() { Status::Ok } else { Status::SolverIssue };
    Ok(Output {
        text: t.to_text()
            + &violation_lines(&r.violations)
            + &r.genericity_proxy_misses
                .iter()
                .map(|m| format!("observation: {m}\n"))
                .collect::<String>(),
        json: report("strata", SweepInputs::of(&spec), &r, None::<Certificate>),
        csv: vec![t],
        status,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TablesResults<'a> {
    all_match: bool,
    tables: &'a [ComputedTable],
    mismatches: &'a [CellDiff],
}

/// Smallest window containing all of `windows`.
fn envelope<'a>(windows: impl Iterator<Item = &'a Window>) -> Option<Window> {
    windows.copied().reduce(|a, b| Window {
        i_min: a.i_min.min(b.i_min),
        i_max: a.i_max.max(b.i_max),
        l_min: a.l_min.min(b.l_min),
        l_max: a.l_max.max(b.l_max),
    })
}

#[derive(Serialize)]
struct TablesInputs {
    j: Vec<u32>,
}

pub fn tables(cfg: &RunConfig) -> Result<Output> {
    let computed = recompute_tables(&cfg.schedule())?;
    let diffs: Vec<CellDiff> = computed.iter().flat_map(|t| t.diffs()).collect();
    let rows = || computed.iter().flat_map(|t| &t.rows);
    let certificate = envelope(rows().map(|r| &r.width_window))
        .zip(envelope(rows().map(|r| &r.height_window)))
        .map(|(width, height)| Certificate { width, height });
    let mut csv = Vec::new();
    let mut text = String::new();
    for t in &computed {
        let mut header = vec!["polynomial"];
        header.extend(t.columns.iter());
        header.push("matches");
        let mut table = CsvTable::new(format!("table_{}", t.name), &header);
        for row in &t.rows {
            let mut cells = vec![row.polynomial.to_string()];
            cells.extend(row.computed.iter().map(usize::to_string));
            cells.push(yes_no(row.computed == row.expected));
            table.push(cells);
        }
        text += &format!("TABLE {} (j = {})\n", t.name, t.j);
        text += &table.to_text();
        text += "\n";
        csv.push(table);
    }
    for d in &diffs {
        text += &format!(
            "mismatch: table {} {}: {} expected {}, computed {}\n",
            d.table, d.polynomial, d.column, d.expected, d.computed
        );
    }
    if diffs.is_empty() {
        text += "all cells match\n";
    }
    Ok(Output {
        json: report(
            "tables",
            TablesInputs {
                j: computed.iter().map(|t| t.j).collect(),
            },
            TablesResults {
                all_match: diffs.is_empty(),
                tables: &computed,
                mismatches: &diffs,
            },
            certificate,
        ),
        csv,
        text,
        status: if diffs.is_empty() { Status::Ok } else { Status::TableMismatch },
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ModuliInputs {
    charge: usize,
    max_j: u32,
    grid_values: Vec<String>,
    fallback_samples: usize,
    seed: u64,
}

pub fn moduli(charge: usize, max_j: u32, cfg: &RunConfig) -> Result<Output> {
    let template = sweep_spec(0, true, cfg);
    let s = local_moduli_summary(charge, max_j, &SweepSpec {
        sample_count: cfg.samples,
        seed: cfg.seed,
        ..template
    })?;
    let mut t = CsvTable::new(
        "moduli",
        &["j", "mode", "w", "h", "charge", "samples", "observed_parameter_count"],
    );
    for m in &s.strata {
        t.push(vec![
            m.j.to_string(),
            match m.mode {
                SweepMode::ExhaustiveGrid => "grid",
                SweepMode::RandomSample => "random",
            }
            .to_string(),
            m.record.width.to_string(),
            m.record.height.to_string(),
            m.record.charge.to_string(),
            m.record.sample_count.to_string(),
            m.record.observed_parameter_count.to_string(),
        ]);
    }
    let mut text = t.to_text();
    if let (Some(shape), Some(ok)) = (&s.expected_shape, s.shape_consistent) {
        text += &format!("expected shape: {shape}; observed strata consistent: {}\n", yes_no(ok));
    }
    Ok(Output {
        json: report(
            "moduli",
            ModuliInputs {
                charge,
                max_j,
                grid_values: cfg.grid_values.iter().map(to_fraction_string).collect(),
                fallback_samples: cfg.samples,
                seed: cfg.seed,
            },
            &s,
            None::<Certificate>,
        ),
        csv: vec![t],
        text,
        status: if s.shape_consistent == Some(false) { Status::SolverIssue } else { Status::Ok },
    })
}

pub fn embedding(j: u32, grid: bool, cfg: &RunConfig) -> Result<Output> {
    let spec = sweep_spec(j, grid, cfg);
    let r = check_embedding(j, &spec)?;
    let mut t = CsvTable::new(
        "embedding",
        &["p", "image", "variant", "image_w", "image_h", "variant_w", "variant_h"],
    );
    for c in &r.cases {
        t.push(vec![
            c.p.clone(),
            c.image.clone(),
            c.variant.clone(),
            c.image_numbers.width.to_string(),
            c.image_numbers.height.to_string(),
            c.variant_numbers.width.to_string(),
            c.variant_numbers.height.to_string(),
        ]);
    }
    let status = if r.violations.is_empty() { Status::Ok } else { Status::SolverIssue };
    Ok(Output {
        text: t.to_text() + &violation_lines(&r.violations),
        json: report("embedding", SweepInputs::of(&spec), &r, None::<Certificate>),
        csv: vec![t],
        status,
    })
}

/// Writes each CSV table to `<dir>/<name>.csv`.
pub fn write_csv_files(dir: &PathBuf, tables: &[CsvTable]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for t in tables {
        std::fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv())?;
    }
    Ok(())
}
