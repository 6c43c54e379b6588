//! Domain types for function point counting: the five function kinds,
//! complexity levels, counted functions and projects.

use std::collections::HashSet;
use std::fmt;

use crate::error::ValidationError;

/// The five function types of the counting method.
///
/// `Ilf` and `Eif` are the data-function kinds; `Ei`, `Eo` and `Eq`
/// are the transactional kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionKind {
    Ilf,
    Eif,
    Ei,
    Eo,
    Eq,
}

impl FunctionKind {
    /// All kinds in canonical order (data kinds first).
    pub const ALL: [FunctionKind; 5] = [
        FunctionKind::Ilf,
        FunctionKind::Eif,
        FunctionKind::Ei,
        FunctionKind::Eo,
        FunctionKind::Eq,
    ];

    pub fn is_data(self) -> bool {
        matches!(self, FunctionKind::Ilf | FunctionKind::Eif)
    }

    pub fn is_transactional(self) -> bool {
        !self.is_data()
    }

    /// Upper-case label used in reports (`ILF`, `EIF`, ...).
    pub fn label(self) -> &'static str {
        match self {
            FunctionKind::Ilf => "ILF",
            FunctionKind::Eif => "EIF",
            FunctionKind::Ei => "EI",
            FunctionKind::Eo => "EO",
            FunctionKind::Eq => "EQ",
        }
    }

    /// Lower-case keyword used in `.fps` files (`ilf`, `eif`, ...).
    pub fn keyword(self) -> &'static str {
        match self {
            FunctionKind::Ilf => "ilf",
            FunctionKind::Eif => "eif",
            FunctionKind::Ei => "ei",
            FunctionKind::Eo => "eo",
            FunctionKind::Eq => "eq",
        }
    }

    /// Index into per-kind arrays, following [`FunctionKind::ALL`] order.
    pub(crate) fn index(self) -> usize {
        match self {
            FunctionKind::Ilf => 0,
            FunctionKind::Eif => 1,
            FunctionKind::Ei => 2,
            FunctionKind::Eo => 3,
            FunctionKind::Eq => 4,
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Functional complexity band. Totally ordered: `Low < Average < High`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexityLevel {
    Low,
    Average,
    High,
}

impl fmt::Display for ComplexityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityLevel::Low => "Low",
            ComplexityLevel::Average => "Average",
            ComplexityLevel::High => "High",
        })
    }
}

/// A counted data function (an ILF or EIF) with its record element type
/// and data element type counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataFunction {
    name: String,
    kind: FunctionKind,
    rets: u32,
    dets: u32,
}

impl DataFunction {
    /// Builds a data function, enforcing `kind` in {ILF, EIF},
    /// a non-empty name, `rets >= 1` and `dets >= 1`.
    pub fn new(
        name: impl Into<String>,
        kind: FunctionKind,
        rets: u32,
        dets: u32,
    ) -> Result<Self, ValidationError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ValidationError::new("name", "function name must not be empty"));
        }
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
        Ok(Self { name, kind, rets, dets })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn rets(&self) -> u32 {
        self.rets
    }

    pub fn dets(&self) -> u32 {
        self.dets
    }
}

/// A counted transactional function (an EI, EO or EQ) with its file type
/// referenced and data element type counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionalFunction {
    name: String,
    kind: FunctionKind,
    ftrs: u32,
    dets: u32,
}

impl TransactionalFunction {
    /// Builds a transactional function, enforcing `kind` in {EI, EO, EQ},
    /// a non-empty name and `dets >= 1`. `ftrs = 0` is legal: the
    /// complexity tables have a "0 or 1 FTR" band.
    pub fn new(
        name: impl Into<String>,
        kind: FunctionKind,
        ftrs: u32,
        dets: u32,
    ) -> Result<Self, ValidationError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ValidationError::new("name", "function name must not be empty"));
        }
        if !kind.is_transactional() {
            return Err(ValidationError::new(
                "kind",
                format!("{kind} is not a transactional function kind"),
            ));
        }
        if dets < 1 {
            return Err(ValidationError::new("dets", "dets must be at least 1"));
        }
        Ok(Self { name, kind, ftrs, dets })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn ftrs(&self) -> u32 {
        self.ftrs
    }

    pub fn dets(&self) -> u32 {
        self.dets
    }
}

/// A project to be counted: ordered lists of identified data and
/// transactional functions. Function names are unique across both lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Project {
    name: String,
    data_functions: Vec<DataFunction>,
    transactional_functions: Vec<TransactionalFunction>,
}

impl Project {
    /// Builds a project, rejecting duplicate function names.
    pub fn new(
        name: impl Into<String>,
        data_functions: Vec<DataFunction>,
        transactional_functions: Vec<TransactionalFunction>,
    ) -> Result<Self, ValidationError> {
        let mut seen = HashSet::new();
        for n in data_functions
            .iter()
            .map(|f| f.name())
            .chain(transactional_functions.iter().map(|f| f.name()))
        {
            if !seen.insert(n) {
                return Err(ValidationError::new(
                    "name",
                    format!("duplicate function name \"{n}\""),
                ));
            }
        }
        Ok(Self {
            name: name.into(),
            data_functions,
            transactional_functions,
        })
    }

    /// A project with no functions.
    pub fn empty(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            data_functions: Vec::new(),
            transactional_functions: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn data_functions(&self) -> &[DataFunction] {
        &self.data_functions
    }

    pub fn transactional_functions(&self) -> &[TransactionalFunction] {
        &self.transactional_functions
    }

    /// Total number of counted functions of both kinds.
    pub fn function_count(&self) -> usize {
        self.data_functions.len() + self.transactional_functions.len()
    }
}
