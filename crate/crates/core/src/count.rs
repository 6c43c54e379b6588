//! Complexity classification, weighting and project-level aggregation.
//!
//! Data functions (ILF, EIF) are classified on a RET x DET grid,
//! external inputs on their own FTR x DET grid, and external outputs and
//! inquiries on a third grid. The complexity level then selects a per-kind
//! weight, and a project's unadjusted function points are the sum of the
//! weights of all its functions.

use crate::error::ValidationError;
use crate::model::{ComplexityLevel, FunctionKind, Project};

use ComplexityLevel::{Average, High, Low};

/// Classifies a data function (ILF or EIF) from its RET and DET counts.
///
/// RET bands: 1 | 2-5 | 6+. DET bands: 1-19 | 20-50 | 51+.
/// ILF and EIF share the same grid; they differ only in weight.
pub fn classify_data_function(
    kind: FunctionKind,
    rets: u32,
    dets: u32,
) -> Result<ComplexityLevel, ValidationError> {
    if !kind.is_data() {
        return Err(ValidationError::new(
            "kind",
            format!("{kind} is not a data function kind"),
        ));
    }
    if rets < 1 {
        return Err(ValidationError::new("rets", "rets must be at least 1"));
    }
    if dets < 1 {
        return Err(ValidationError::new("dets", "dets must be at least 1"));
    }
    let row = match rets {
        1 => 0,
        2..=5 => 1,
        _ => 2,
    };
    let col = match dets {
        1..=19 => 0,
        20..=50 => 1,
        _ => 2,
    };
    Ok(DATA_GRID[row][col])
}

/// Classifies a transactional function from its FTR and DET counts.
///
/// EIs use FTR bands 0-1 | 2 | 3+ and DET bands 1-4 | 5-15 | 16+.
/// EOs and EQs use FTR bands 0-1 | 2-3 | 4+ and DET bands 1-5 | 6-19 | 20+.
pub fn classify_transactional_function(
    kind: FunctionKind,
    ftrs: u32,
    dets: u32,
) -> Result<ComplexityLevel, ValidationError> {
    if !kind.is_transactional() {
        return Err(ValidationError::new(
            "kind",
            format!("{kind} is not a transactional function kind"),
        ));
    }
    if dets < 1 {
        return Err(ValidationError::new("dets", "dets must be at least 1"));
    }
    let (row, col) = if kind == FunctionKind::Ei {
        let row = match ftrs {
            0 | 1 => 0,
            2 => 1,
            _ => 2,
        };
        let col = match dets {
            1..=4 => 0,
            5..=15 => 1,
            _ => 2,
        };
        (row, col)
    } else {
        let row = match ftrs {
            0 | 1 => 0,
            2 | 3 => 1,
            _ => 2,
        };
        let col = match dets {
            1..=5 => 0,
            6..=19 => 1,
            _ => 2,
        };
        (row, col)
    };
    Ok(TRANSACTION_GRID[row][col])
}

// All three complexity grids share the same Low/Average/High layout;
// only the band boundaries differ.
const DATA_GRID: [[ComplexityLevel; 3]; 3] = [
    [Low, Low, Average],
    [Low, Average, High],
    [Average, High, High],
];

const TRANSACTION_GRID: [[ComplexityLevel; 3]; 3] = DATA_GRID;

/// Function points contributed by one function of the given kind and
/// complexity. Total over the finite domain; never fails.
pub fn weight_of(kind: FunctionKind, level: ComplexityLevel) -> u32 {
    const WEIGHTS: [[u32; 3]; 5] = [
        [7, 10, 15], // ILF
        [5, 7, 10],  // EIF
        [3, 4, 6],   // EI
        [4, 5, 7],   // EO
        [3, 4, 6],   // EQ
    ];
    let level_idx = match level {
        Low => 0,
        Average => 1,
        High => 2,
    };
    WEIGHTS[kind.index()][level_idx]
}

/// Per-kind tally inside a [`FunctionPointCount`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KindTally {
    /// Number of functions of this kind.
    pub functions: u32,
    /// Function points contributed by this kind.
    pub fp: u32,
}

/// The result of counting a project: total unadjusted function points,
/// a per-kind breakdown, and the three early counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionPointCount {
    total_ufp: u32,
    per_kind: [KindTally; 5],
    cilf: u32,
    cilfeif: u32,
    ceieoeq: u32,
}

impl FunctionPointCount {
    /// Total unadjusted function points.
    pub fn total_ufp(&self) -> u32 {
        self.total_ufp
    }

    /// Tally for one function kind.
    pub fn per_kind(&self, kind: FunctionKind) -> KindTally {
        self.per_kind[kind.index()]
    }

    /// Number of ILFs.
    pub fn cilf(&self) -> u32 {
        self.cilf
    }

    /// Number of ILFs plus EIFs.
    pub fn cilfeif(&self) -> u32 {
        self.cilfeif
    }

    /// Number of EIs plus EOs plus EQs.
    pub fn ceieoeq(&self) -> u32 {
        self.ceieoeq
    }
}

/// Classifies, weighs and sums every function of a project.
///
/// Infallible: `Project` construction already guarantees the
/// classification preconditions for every contained function.
pub fn count_project(project: &Project) -> FunctionPointCount {
    let mut per_kind = [KindTally::default(); 5];
    for f in project.data_functions() {
        let level = classify_data_function(f.kind(), f.rets(), f.dets())
            .expect("data function invariants hold by construction");
        let tally = &mut per_kind[f.kind().index()];
        tally.functions += 1;
        tally.fp += weight_of(f.kind(), level);
    }
    for f in project.transactional_functions() {
        let level = classify_transactional_function(f.kind(), f.ftrs(), f.dets())
            .expect("transactional function invariants hold by construction");
        let tally = &mut per_kind[f.kind().index()];
        tally.functions += 1;
        tally.fp += weight_of(f.kind(), level);
    }
    let (cilf, cilfeif, ceieoeq) = derive_counters(project);
    FunctionPointCount {
        total_ufp: per_kind.iter().map(|t| t.fp).sum(),
        per_kind,
        cilf,
        cilfeif,
        ceieoeq,
    }
}

/// The three early counters of a project: number of ILFs, of ILFs+EIFs,
/// and of EIs+EOs+EQs.
pub fn derive_counters(project: &Project) -> (u32, u32, u32) {
    let ilfs = project
        .data_functions()
        .iter()
        .filter(|f| f.kind() == FunctionKind::Ilf)
        .count() as u32;
    let eifs = project.data_functions().len() as u32 - ilfs;
    let transactions = project.transactional_functions().len() as u32;
    (ilfs, ilfs + eifs, transactions)
}
