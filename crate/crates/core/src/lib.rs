//! Function point measurement workbench.
//!
//! This crate counts the functional size of software projects from
//! their identified data and transactional functions, ships a built-in
//! reference dataset of 60 paired measurements, fits simple regression
//! models of total size against early counters, and produces early
//! estimates with prediction intervals, text reports and SVG figures.
//!
//! Modules:
//! - [`model`] / [`count`] — function types, complexity classification,
//!   weights and project counting
//! - [`specfile`] — the `.fps` project specification format
//! - [`dataset`] — the built-in dataset, CSV import/export, rater
//!   consistency
//! - [`regress`] / [`tdist`] — ordinary least squares with diagnostics
//! - [`efpm`] — early estimation from counters via calibrated models
//! - [`report`] — SVG scatter figures and TSV data tables

pub mod count;
pub mod dataset;
pub mod efpm;
pub mod error;
pub mod model;
pub mod regress;
pub mod report;
pub mod specfile;
pub mod tdist;

pub use count::{
    classify_data_function, classify_transactional_function, count_project, derive_counters,
    weight_of, FunctionPointCount,
};
pub use dataset::{
    consistency_stats, embedded_dataset, load_csv, save_csv, Dataset, MeasurementRecord, Predictor,
};
pub use efpm::{
    best_estimate, estimate, paper_models, prediction_interval, CalibratedModelSet, Estimate,
    EstimationInput,
};
pub use error::{ParseError, ValidationError};
pub use model::{ComplexityLevel, DataFunction, FunctionKind, Project, TransactionalFunction};
pub use regress::{fit_simple_ols, model_summary, residuals, FitError, LinearModel};
pub use report::{data_table, scatter_svg, PlotSpec};
pub use specfile::{parse_spec, render_spec};
