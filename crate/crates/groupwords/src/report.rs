//! Sweep reports and their CSV / JSON serialization.
//!
//! The CSV schema is one header plus one line per row:
//! `group,order,word,m,n,policy,property_holds,frontier,eta,probability,bound_lhs,bound_rhs,bound_holds`.
//! All numeric report fields are exact integers or `p/q` rational strings;
//! nothing is ever rounded to floating point. The JSON format mirrors the
//! same records and adds the sweep metadata (including a timestamp, which
//! the CSV deliberately omits so repeated sweeps are byte-identical).

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::property::{DichotomyBranch, SweepRow};
use crate::util::atomic_write;

#[derive(Error, Debug)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepMetadata {
    pub word: String,
    pub gamma: String,
    pub gamma_source: String,
    pub max_order: usize,
    pub m_max: usize,
    pub n_max: usize,
    pub timestamp: String,
}

/// A full sweep: metadata plus rows sorted by (order, group, m, n, policy).
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn violations(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }
}

#[derive(Serialize)]
struct RowRecord {
    group: String,
    order: usize,
    word: String,
    m: usize,
    n: usize,
    policy: String,
    property_holds: bool,
    frontier: usize,
    eta: u64,
    probability: String,
    bound_lhs: String,
    bound_rhs: String,
    bound_holds: String,
}

fn row_record(row: &SweepRow) -> RowRecord {
    let (bound_lhs, bound_rhs, bound_holds) = match &row.branch {
        DichotomyBranch::IdentityWord => (String::new(), String::new(), "identity".to_string()),
        DichotomyBranch::NotApplicable => (String::new(), String::new(), "n/a".to_string()),
        DichotomyBranch::Bound(report) => (
            report.lhs.to_string(),
            report.rhs.to_string(),
            report.holds.to_string(),
        ),
    };
    RowRecord {
        group: row.group.clone(),
        order: row.order,
        word: row.word.clone(),
        m: row.m,
        n: row.n,
        policy: row.policy.to_string(),
        property_holds: row.property_holds,
        frontier: row.frontier,
        eta: row.arc_count,
        probability: row.probability.to_string(),
        bound_lhs,
        bound_rhs,
        bound_holds,
    }
}

const CSV_HEADER: [&str; 13] = [
    "group",
    "order",
    "word",
    "m",
    "n",
    "policy",
    "property_holds",
    "frontier",
    "eta",
    "probability",
    "bound_lhs",
    "bound_rhs",
    "bound_holds",
];

pub fn csv_string(report: &SweepReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("csv header");
    for row in &report.rows {
        let r = row_record(row);
        writer
            .write_record([
                r.group,
                r.order.to_string(),
                r.word,
                r.m.to_string(),
                r.n.to_string(),
                r.policy,
                r.property_holds.to_string(),
                r.frontier.to_string(),
                r.eta.to_string(),
                r.probability,
                r.bound_lhs,
                r.bound_rhs,
                r.bound_holds,
            ])
            .expect("csv row");
    }
    let bytes = writer.into_inner().expect("csv buffer");
    String::from_utf8(bytes).expect("csv is utf-8")
}

pub fn json_string(report: &SweepReport) -> String {
    #[derive(Serialize)]
    struct JsonReport<'a> {
        metadata: &'a SweepMetadata,
        rows: Vec<RowRecord>,
    }
    let doc = JsonReport {
        metadata: &report.metadata,
        rows: report.rows.iter().map(row_record).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// Render and write a report atomically.
pub fn write_report(
    report: &SweepReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<(), ReportError> {
    let text = match format {
        ReportFormat::Csv => csv_string(report),
        ReportFormat::Json => json_string(report),
    };
    let path = path.as_ref();
    atomic_write(path, text.as_bytes()).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}
