//! The three curve tables: embedded expected values and their recomputation.

use serde::Serialize;

use crate::cohomology::{Window, WindowSchedule};
use crate::error::Result;
use crate::expr::parse_laurent;
use crate::poly::Vars;
use crate::singularities::{curve_invariants, CurveGerm, CurveReport};

/// Splitting type at which the tables are stated.
pub const TABLE_J: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Column {
    Mult,
    Delta,
    Mu,
    Tau,
    W,
    H,
    Charge,
}

impl Column {
    pub fn name(self) -> &'static str {
        match self {
            Column::Mult => "mult",
            Column::Delta => "delta",
            Column::Mu => "mu",
            Column::Tau => "tau",
            Column::W => "w",
            Column::H => "h",
            Column::Charge => "charge",
        }
    }

    fn read(self, r: &CurveReport) -> usize {
        let c = &r.classical;
        let n = &r.numbers.numbers;
        match self {
            Column::Mult => c.multiplicity,
            Column::Delta => c.delta,
            Column::Mu => c.milnor,
            Column::Tau => c.tjurina,
            Column::W => n.width,
            Column::H => n.height,
            Column::Charge => n.charge,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub name: &'static str,
    pub j: u32,
    pub columns: &'static [Column],
    /// Polynomial and expected value per column.
    pub rows: &'static [(&'static str, &'static [usize])],
}

const SHORT: &[Column] = &[Column::Delta, Column::Mu, Column::Tau, Column::W, Column::H];
const LONG: &[Column] = &[
    Column::Mult,
    Column::Delta,
    Column::Mu,
    Column::Tau,
    Column::W,
    Column::H,
    Column::Charge,
];

pub fn expected_tables() -> Vec<TableSpec> {
    vec![
        TableSpec {
            name: "I",
            j: TABLE_J,
            columns: SHORT,
            rows: &[
                ("x^5*y - y^4", &[9, 17, 17, 10, 6]),
                ("x^8 - x^5*y^2 - x^3*y^2 + y^4", &[9, 17, 15, 8, 6]),
            ],
        },
        TableSpec {
            name: "II",
            j: TABLE_J,
            columns: SHORT,
            rows: &[("x^2 - y^7", &[3, 6, 6, 3, 5]), ("x^3 - y^4", &[3, 6, 6, 6, 6])],
        },
        TableSpec {
            name: "III",
            j: TABLE_J,
            columns: LONG,
            rows: &[
                ("x^3 - x^2*y + y^3", &[3, 3, 4, 4, 4, 3, 7]),
                ("x^3 - x^2*y^2 + y^3", &[3, 3, 4, 4, 5, 3, 8]),
            ],
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellDiff {
    pub table: &'static str,
    pub polynomial: &'static str,
    pub column: &'static str,
    pub expected: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComputedRow {
    pub polynomial: &'static str,
    pub canonical_p: String,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    pub width_window: Window,
    pub height_window: Window,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComputedTable {
    pub name: &'static str,
    pub j: u32,
    pub columns: Vec<&'static str>,
    pub rows: Vec<ComputedRow>,
}

impl ComputedTable {
    pub fn diffs(&self) -> Vec<CellDiff> {
        let mut out = Vec::new();
        for row in &self.rows {
            for ((column, &expected), &computed) in
                self.columns.iter().zip(&row.expected).zip(&row.computed)
            {
                if expected != computed {
                    out.push(CellDiff {
                        table: self.name,
                        polynomial: row.polynomial,
                        column,
                        expected,
                        computed,
                    });
                }
            }
        }
        out
    }
}

/// Recomputes `table` at splitting type `j`.
pub fn recompute_table(table: &TableSpec, j: u32, schedule: &WindowSchedule) -> Result<ComputedTable> {
    let rows = table
        .rows
        .iter()
        .map(|&(polynomial, expected)| {
            let germ = CurveGerm::new(parse_laurent(polynomial, Vars::XY)?)?;
            let report = curve_invariants(&germ, j, schedule)?;
            Ok(ComputedRow {
                polynomial,
                canonical_p: report.data.p().display(Vars::ZU).to_string(),
                expected: expected.to_vec(),
                computed: table.columns.iter().map(|c| c.read(&report)).collect(),
                width_window: report.numbers.width_window,
                height_window: report.numbers.height_window,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ComputedTable {
        name: table.name,
        j,
        columns: table.columns.iter().map(|c| c.name()).collect(),
        rows,
    })
}

/// All tables at their stated splitting type.
pub fn recompute_tables(schedule: &WindowSchedule) -> Result<Vec<ComputedTable>> {
    expected_tables()
        .iter()
        .map(|t| recompute_table(t, t.j, schedule))
        .collect()
}
