//! Early function point estimation: map whichever early counters are
//! known (ILFs, ILFs+EIFs, transactions) to a predicted total through
//! calibrated regression models, and quantify the uncertainty with
//! prediction intervals.

use crate::dataset::{embedded_dataset, Predictor};
use crate::error::ValidationError;
use crate::regress::{fit_simple_ols, LinearModel};
use crate::tdist::{student_t_critical, student_t_two_tailed_p};

/// One calibrated model per early counter.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibratedModelSet {
    pub cilf: LinearModel,
    pub cilfeif: LinearModel,
    pub ceieoeq: LinearModel,
}

impl CalibratedModelSet {
    pub fn model_for(&self, predictor: Predictor) -> &LinearModel {
        match predictor {
            Predictor::Cilf => &self.cilf,
            Predictor::Cilfeif => &self.cilfeif,
            Predictor::Ceieoeq => &self.ceieoeq,
        }
    }

    /// Refits all three models from a dataset.
    pub fn fit_from(ds: &crate::dataset::Dataset) -> Result<Self, crate::regress::FitError> {
        Ok(Self {
            cilf: fit_simple_ols(&ds.xy_points(Predictor::Cilf), Predictor::Cilf.label())?,
            cilfeif: fit_simple_ols(&ds.xy_points(Predictor::Cilfeif), Predictor::Cilfeif.label())?,
            ceieoeq: fit_simple_ols(&ds.xy_points(Predictor::Ceieoeq), Predictor::Ceieoeq.label())?,
        })
    }
}

/// The published calibration constants, exactly as printed: intercepts,
/// slopes, correlations and their diagnostics at three decimals (four
/// for the typical error of the estimation).
///
/// The predictor mean and centered sum of squares are not published, so
/// they are recomputed from the built-in dataset; prediction intervals
/// for these models depend on them.
pub fn paper_models() -> CalibratedModelSet {
    let ds = embedded_dataset();
    let published = |predictor: Predictor,
                     intercept: f64,
                     se_intercept: f64,
                     slope: f64,
                     se_slope: f64,
                     r: f64,
                     r2: f64,
                     r2_adj: f64,
                     se_est: f64,
                     t_intercept: f64,
                     t_slope: f64| {
        let points = ds.xy_points(predictor);
        let n = points.len();
        let x_mean = points.iter().map(|&(x, _)| x).sum::<f64>() / n as f64;
        let sxx = points.iter().map(|&(x, _)| (x - x_mean) * (x - x_mean)).sum();
        LinearModel {
            predictor_name: predictor.label().to_owned(),
            n,
            intercept,
            se_intercept,
            slope,
            se_slope,
            r,
            r2,
            r2_adj,
            se_est,
            beta_std: r,
            t_intercept,
            t_slope,
            p_intercept: student_t_two_tailed_p(t_intercept, (n - 2) as u32),
            p_slope: student_t_two_tailed_p(t_slope, (n - 2) as u32),
            x_mean,
            sxx,
            degenerate: false,
        }
    };
    CalibratedModelSet {
        cilf: published(
            Predictor::Cilf,
            130.327, 15.755, 15.902, 1.307, 0.848, 0.718, 0.713, 69.0822, 8.272, 12.162,
        ),
        cilfeif: published(
            Predictor::Cilfeif,
            66.905, 22.156, 13.035, 1.178, 0.824, 0.679, 0.673, 73.7912, 3.020, 11.067,
        ),
        ceieoeq: published(
            Predictor::Ceieoeq,
            50.784, 13.521, 6.289, 0.320, 0.932, 0.869, 0.867, 47.0237, 3.756, 19.658,
        ),
    }
}

/// The early counters known for a project under estimation. At least one
/// must be present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimationInput {
    cilf: Option<u32>,
    cilfeif: Option<u32>,
    ceieoeq: Option<u32>,
}

impl EstimationInput {
    pub fn new(
        cilf: Option<u32>,
        cilfeif: Option<u32>,
        ceieoeq: Option<u32>,
    ) -> Result<Self, ValidationError> {
        if cilf.is_none() && cilfeif.is_none() && ceieoeq.is_none() {
            return Err(ValidationError::new(
                "counters",
                "at least one counter (cilf, cilfeif, ceieoeq) must be given",
            ));
        }
        if let (Some(cilf), Some(cilfeif)) = (cilf, cilfeif) {
            if cilfeif < cilf {
                return Err(ValidationError::new(
                    "cilfeif",
                    format!("cilfeif ({cilfeif}) < cilf ({cilf})"),
                ));
            }
        }
        Ok(Self { cilf, cilfeif, ceieoeq })
    }

    pub fn counter(&self, predictor: Predictor) -> Option<u32> {
        match predictor {
            Predictor::Cilf => self.cilf,
            Predictor::Cilfeif => self.cilfeif,
            Predictor::Ceieoeq => self.ceieoeq,
        }
    }
}

/// A prediction interval at a stated confidence level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub level: f64,
    pub low: f64,
    pub high: f64,
}

/// One estimate: the predicted total, which model produced it, the
/// model's fit quality, and an optional prediction interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub predictor: Predictor,
    pub predicted_fp: f64,
    pub r2: f64,
    pub interval: Option<Interval>,
}

// Fixed tie order between models of equal fit: CEIEOEQ > CILFEIF > CILF.
fn tie_rank(predictor: Predictor) -> u8 {
    match predictor {
        Predictor::Ceieoeq => 0,
        Predictor::Cilfeif => 1,
        Predictor::Cilf => 2,
    }
}

/// One estimate per counter present in the input, ordered by descending
/// model r²; ties follow the fixed predictor order. When
/// `interval_level` is given (in (0, 1)), each estimate carries its
/// prediction interval at that level.
pub fn estimate(
    input: &EstimationInput,
    models: &CalibratedModelSet,
    interval_level: Option<f64>,
) -> Result<Vec<Estimate>, ValidationError> {
    let mut estimates = Vec::new();
    for predictor in Predictor::ALL {
        let Some(counter) = input.counter(predictor) else {
            continue;
        };
        let model = models.model_for(predictor);
        let x = f64::from(counter);
        let interval = match interval_level {
            Some(level) => {
                let (low, high) = prediction_interval(model, x, level)?;
                Some(Interval { level, low, high })
            }
            None => None,
        };
        estimates.push(Estimate {
            predictor,
            predicted_fp: model.predict(x),
            r2: model.r2,
            interval,
        });
    }
    estimates.sort_by(|a, b| {
        b.r2.partial_cmp(&a.r2)
            .expect("r2 is finite")
            .then_with(|| tie_rank(a.predictor).cmp(&tie_rank(b.predictor)))
    });
    Ok(estimates)
}

/// The estimate whose model fits best (highest r²); ties broken by the
/// fixed predictor order CEIEOEQ > CILFEIF > CILF.
pub fn best_estimate(estimates: &[Estimate]) -> Result<&Estimate, ValidationError> {
    estimates
        .iter()
        .min_by(|a, b| {
            b.r2.partial_cmp(&a.r2)
                .expect("r2 is finite")
                .then_with(|| tie_rank(a.predictor).cmp(&tie_rank(b.predictor)))
        })
        .ok_or_else(|| ValidationError::new("estimates", "estimate list is empty"))
}

/// The prediction interval for a new observation at `x`:
/// `predict(x) ± t* · se_est · sqrt(1 + 1/n + (x - x̄)² / Sxx)`,
/// where `t*` is the two-tailed critical value at `level` with n-2
/// degrees of freedom.
///
/// A degenerate model (zero `se_est`) collapses the interval to a point.
pub fn prediction_interval(
    model: &LinearModel,
    x: f64,
    level: f64,
) -> Result<(f64, f64), ValidationError> {
    if !(level > 0.0 && level < 1.0) {
        return Err(ValidationError::new(
            "level",
            format!("confidence level must lie in (0, 1), got {level}"),
        ));
    }
    if model.n < 3 {
        return Err(ValidationError::new(
            "model",
            "prediction intervals need a model fitted on at least 3 points",
        ));
    }
    let n = model.n as f64;
    let dx = x - model.x_mean;
    let spread = (1.0 + 1.0 / n + dx * dx / model.sxx).sqrt();
    let t_crit = student_t_critical(level, (model.n - 2) as u32);
    let half = t_crit * model.se_est * spread;
    let center = model.predict(x);
    Ok((center - half, center + half))
}
