//! The built-in measurement dataset, CSV import/export and the
//! paired-rater consistency summary.
//!
//! The reference dataset holds 60 measurements of 30 projects, each
//! project measured independently by two raters. Every record carries
//! the measured unadjusted function points and the three early counters.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ParseError, ValidationError};

/// One measurement: project id, measured unadjusted function points and
/// the three early counters.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    project_id: u32,
    fp: f64,
    cilf: u32,
    cilfeif: u32,
    ceieoeq: u32,
}

impl MeasurementRecord {
    /// Builds a record, enforcing `fp >= 0` (and finite) and
    /// `cilfeif >= cilf`.
    pub fn new(
        project_id: u32,
        fp: f64,
        cilf: u32,
        cilfeif: u32,
        ceieoeq: u32,
    ) -> Result<Self, ValidationError> {
        if !fp.is_finite() || fp < 0.0 {
            return Err(ValidationError::new("fp", "fp must be a non-negative number"));
        }
        if cilfeif < cilf {
            return Err(ValidationError::new(
                "cilfeif",
                format!("cilfeif ({cilfeif}) < cilf ({cilf})"),
            ));
        }
        Ok(Self { project_id, fp, cilf, cilfeif, ceieoeq })
    }

    pub fn project_id(&self) -> u32 {
        self.project_id
    }

    pub fn fp(&self) -> f64 {
        self.fp
    }

    pub fn cilf(&self) -> u32 {
        self.cilf
    }

    pub fn cilfeif(&self) -> u32 {
        self.cilfeif
    }

    pub fn ceieoeq(&self) -> u32 {
        self.ceieoeq
    }

    /// The value of one early counter in this record.
    pub fn counter(&self, predictor: Predictor) -> u32 {
        match predictor {
            Predictor::Cilf => self.cilf,
            Predictor::Cilfeif => self.cilfeif,
            Predictor::Ceieoeq => self.ceieoeq,
        }
    }
}

/// Which early counter a model predicts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predictor {
    Cilf,
    Cilfeif,
    Ceieoeq,
}

impl Predictor {
    pub const ALL: [Predictor; 3] = [Predictor::Cilf, Predictor::Cilfeif, Predictor::Ceieoeq];

    /// Upper-case tag used in output (`CILF`, `CILFEIF`, `CEIEOEQ`).
    pub fn label(self) -> &'static str {
        match self {
            Predictor::Cilf => "CILF",
            Predictor::Cilfeif => "CILFEIF",
            Predictor::Ceieoeq => "CEIEOEQ",
        }
    }
}

impl fmt::Display for Predictor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An ordered list of measurement records.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    records: Vec<MeasurementRecord>,
}

impl Dataset {
    pub fn new(records: Vec<MeasurementRecord>) -> Self {
        Self { records }
    }

    pub fn records(&self) -> &[MeasurementRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// (counter, fp) pairs for fitting `fp` against one early counter.
    pub fn xy_points(&self, predictor: Predictor) -> Vec<(f64, f64)> {
        self.records
            .iter()
            .map(|r| (f64::from(r.counter(predictor)), r.fp))
            .collect()
    }
}

/// Per-project agreement of the two raters: the absolute difference of
/// the two measurements relative to their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyStat {
    pub project_id: u32,
    pub rel_diff: f64,
}

// (project, fp, cilf, cilfeif, ceieoeq); two rows per project.
const EMBEDDED: [(u32, f64, u32, u32, u32); 60] = [
    (1, 203.0, 8, 8, 32),
    (1, 379.0, 10, 37, 31),
    (2, 266.0, 8, 11, 36),
    (2, 284.0, 8, 13, 46),
    (3, 175.0, 2, 7, 27),
    (3, 171.0, 2, 10, 22),
    (4, 218.0, 5, 15, 24),
    (4, 218.0, 5, 11, 36),
    (5, 160.0, 0, 23, 7),
    (5, 119.0, 0, 14, 8),
    (6, 219.0, 10, 14, 38),
    (6, 240.0, 10, 14, 38),
    (7, 236.0, 9, 10, 29),
    (7, 268.0, 10, 11, 37),
    (8, 402.0, 15, 20, 48),
    (8, 346.0, 15, 18, 47),
    (9, 216.0, 2, 16, 20),
    (9, 227.0, 2, 16, 20),
    (10, 298.0, 16, 20, 30),
    (10, 246.0, 9, 15, 27),
    (11, 221.0, 4, 7, 33),
    (11, 155.0, 4, 7, 17),
    (12, 385.0, 20, 22, 60),
    (12, 487.0, 16, 22, 67),
    (13, 262.0, 9, 12, 38),
    (13, 292.0, 10, 13, 47),
    (14, 441.0, 15, 26, 51),
    (14, 462.0, 15, 22, 67),
    (15, 519.0, 16, 26, 78),
    (15, 577.0, 18, 30, 65),
    (16, 247.0, 5, 15, 33),
    (16, 265.0, 5, 12, 43),
    (17, 370.0, 19, 19, 54),
    (17, 335.0, 17, 21, 45),
    (18, 438.0, 11, 24, 71),
    (18, 445.0, 12, 23, 65),
    (19, 349.0, 13, 18, 50),
    (19, 341.0, 13, 17, 55),
    (20, 256.0, 10, 15, 32),
    (20, 281.0, 10, 15, 42),
    (21, 127.0, 1, 9, 14),
    (21, 94.0, 1, 7, 10),
    (22, 118.0, 3, 9, 16),
    (22, 152.0, 5, 11, 17),
    (23, 244.0, 7, 18, 26),
    (23, 268.0, 7, 19, 24),
    (24, 208.0, 9, 15, 23),
    (24, 166.0, 5, 10, 18),
    (25, 258.0, 13, 13, 42),
    (25, 269.0, 13, 13, 44),
    (26, 403.0, 9, 17, 53),
    (26, 414.0, 9, 17, 54),
    (27, 609.0, 34, 43, 84),
    (27, 719.0, 34, 47, 88),
    (28, 277.0, 17, 21, 34),
    (28, 235.0, 15, 17, 29),
    (29, 120.0, 3, 8, 15),
    (29, 113.0, 3, 7, 16),
    (30, 234.0, 10, 24, 21),
    (30, 250.0, 10, 25, 22),
];

/// The built-in reference dataset: 60 measurements of 30 projects,
/// each project measured twice.
pub fn embedded_dataset() -> Dataset {
    Dataset::new(
        EMBEDDED
            .iter()
            .map(|&(p, fp, cilf, cilfeif, ceieoeq)| {
                MeasurementRecord::new(p, fp, cilf, cilfeif, ceieoeq)
                    .expect("embedded records satisfy the invariants")
            })
            .collect(),
    )
}

const CSV_HEADER: &str = "project,fp,cilf,cilfeif,ceieoeq";

/// Parses CSV text with header `project,fp,cilf,cilfeif,ceieoeq`.
///
/// Dot decimal separator. All errors in the file are collected, each
/// positioned at the line and the starting column of the offending cell.
pub fn load_csv(source: &str) -> Result<Dataset, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut records = Vec::new();
    let mut lines = source.lines().enumerate();

    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == CSV_HEADER => {}
        Some((_, header)) => {
            errors.push(ParseError::new(
                1,
                1,
                format!("expected header \"{CSV_HEADER}\""),
                header.trim_end_matches('\r'),
            ));
        }
        None => {
            errors.push(ParseError::new(1, 1, format!("expected header \"{CSV_HEADER}\""), ""));
        }
    }

    for (idx, raw_line) in lines {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        match parse_csv_record(line, line_no) {
            Ok(record) => records.push(record),
            Err(mut errs) => errors.append(&mut errs),
        }
    }

    if errors.is_empty() {
        Ok(Dataset::new(records))
    } else {
        Err(errors)
    }
}

fn parse_csv_record(line: &str, line_no: usize) -> Result<MeasurementRecord, Vec<ParseError>> {
    let cells: Vec<&str> = line.split(',').collect();
    // starting column (1-based, in characters) of each cell
    let mut columns = Vec::with_capacity(cells.len());
    let mut col = 1;
    for cell in &cells {
        columns.push(col);
        col += cell.chars().count() + 1;
    }

    if cells.len() != 5 {
        return Err(vec![ParseError::new(
            line_no,
            1,
            format!("expected 5 comma-separated values, got {}", cells.len()),
            line,
        )]);
    }

    let mut errors = Vec::new();
    let int_cell = |errors: &mut Vec<ParseError>, i: usize, name: &str| -> Option<u32> {
        match cells[i].trim().parse::<u32>() {
            Ok(v) => Some(v),
            Err(_) => {
                errors.push(ParseError::new(
                    line_no,
                    columns[i],
                    format!("{name}: expected a non-negative integer"),
                    cells[i],
                ));
                None
            }
        }
    };

    let project = int_cell(&mut errors, 0, "project");
    let fp = match cells[1].trim().parse::<f64>() {
        Ok(v) => Some(v),
        Err(_) => {
            errors.push(ParseError::new(
                line_no,
                columns[1],
                "fp: expected a number",
                cells[1],
            ));
            None
        }
    };
    let cilf = int_cell(&mut errors, 2, "cilf");
    let cilfeif = int_cell(&mut errors, 3, "cilfeif");
    let ceieoeq = int_cell(&mut errors, 4, "ceieoeq");

    if let (Some(project), Some(fp), Some(cilf), Some(cilfeif), Some(ceieoeq)) =
        (project, fp, cilf, cilfeif, ceieoeq)
    {
        match MeasurementRecord::new(project, fp, cilf, cilfeif, ceieoeq) {
            Ok(record) => return Ok(record),
            Err(e) => {
                let column = match e.field.as_str() {
                    "fp" => columns[1],
                    "cilfeif" => columns[3],
                    _ => 1,
                };
                errors.push(ParseError::new(line_no, column, e.to_string(), line));
            }
        }
    }
    Err(errors)
}

/// Canonical CSV: header, one record per line, `fp` with one decimal
/// place, LF line endings.
pub fn save_csv(ds: &Dataset) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in ds.records() {
        out.push_str(&format!(
            "{},{:.1},{},{},{}\n",
            r.project_id, r.fp, r.cilf, r.cilfeif, r.ceieoeq
        ));
    }
    out
}

/// Per-project relative differences between the two raters, ordered by
/// project id, with their arithmetic mean over projects.
///
/// Fails if any project id does not appear exactly twice.
pub fn consistency_stats(ds: &Dataset) -> Result<(Vec<ConsistencyStat>, f64), ValidationError> {
    let mut by_project: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    for r in ds.records() {
        by_project.entry(r.project_id).or_default().push(r.fp);
    }
    let mut stats = Vec::with_capacity(by_project.len());
    for (project_id, fps) in &by_project {
        if fps.len() != 2 {
            return Err(ValidationError::new(
                "project",
                format!(
                    "project {project_id} has {} measurement(s); need exactly 2",
                    fps.len()
                ),
            ));
        }
        let (a, b) = (fps[0], fps[1]);
        let rel_diff = if a == b { 0.0 } else { (a - b).abs() / ((a + b) / 2.0) };
        stats.push(ConsistencyStat { project_id: *project_id, rel_diff });
    }
    if stats.is_empty() {
        return Err(ValidationError::new("dataset", "dataset has no records"));
    }
    let mean = stats.iter().map(|s| s.rel_diff).sum::<f64>() / stats.len() as f64;
    Ok((stats, mean))
}
