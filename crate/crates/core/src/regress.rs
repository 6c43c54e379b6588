//! Simple ordinary least squares with the full diagnostic set:
//! coefficient standard errors, t statistics, two-tailed significance,
//! correlation, plain and adjusted coefficients of determination, and
//! the standard error of the estimate.

use thiserror::Error;

use crate::tdist::student_t_two_tailed_p;

/// A fitted (or externally calibrated) simple linear regression
/// `y = intercept + slope * x` with its diagnostics.
///
/// `x_mean` and `sxx` are retained from the fit so prediction intervals
/// can be computed later.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    /// Display name of the predictor variable.
    pub predictor_name: String,
    /// Sample size.
    pub n: usize,
    pub intercept: f64,
    pub se_intercept: f64,
    pub slope: f64,
    pub se_slope: f64,
    /// Correlation coefficient between predictor and response.
    pub r: f64,
    /// Coefficient of determination.
    pub r2: f64,
    /// Adjusted coefficient of determination, 1 - (1-r2)(n-1)/(n-2).
    pub r2_adj: f64,
    /// Standard error of the estimate, sqrt(SSE / (n-2)).
    pub se_est: f64,
    /// Standardized slope; equals `r` in simple regression.
    pub beta_std: f64,
    pub t_intercept: f64,
    pub t_slope: f64,
    /// Two-tailed significance of the intercept.
    pub p_intercept: f64,
    /// Two-tailed significance of the slope.
    pub p_slope: f64,
    /// Mean of the predictor values used in the fit.
    pub x_mean: f64,
    /// Centered sum of squares of the predictor.
    pub sxx: f64,
    /// Set when the response was constant: slope, r and se_est are all
    /// zero and the t/p columns carry the conventional 0 / 1.
    pub degenerate: bool,
}

impl LinearModel {
    /// The fitted value `intercept + slope * x`.
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("predictor is constant; the slope is undefined")]
    ConstantPredictor,
}

/// Fits `y = intercept + slope * x` by ordinary least squares.
///
/// Uses centered (two-pass) sums. A constant predictor is an error;
/// a constant response yields a valid model flagged [`LinearModel::degenerate`].
pub fn fit_simple_ols(
    points: &[(f64, f64)],
    predictor_name: &str,
) -> Result<LinearModel, FitError> {
    let n = points.len();
    if n < 3 {
        return Err(FitError::TooFewPoints(n));
    }
    let n_f = n as f64;
    let x_mean = points.iter().map(|&(x, _)| x).sum::<f64>() / n_f;
    let y_mean = points.iter().map(|&(_, y)| y).sum::<f64>() / n_f;

    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        let dx = x - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(FitError::ConstantPredictor);
    }

    let df = (n - 2) as u32;
    if syy == 0.0 {
        // constant response: the flat line fits exactly
        return Ok(LinearModel {
            predictor_name: predictor_name.to_owned(),
            n,
            intercept: y_mean,
            se_intercept: 0.0,
            slope: 0.0,
            se_slope: 0.0,
            r: 0.0,
            r2: 0.0,
            r2_adj: 0.0,
            se_est: 0.0,
            beta_std: 0.0,
            t_intercept: 0.0,
            t_slope: 0.0,
            p_intercept: 1.0,
            p_slope: 1.0,
            x_mean,
            sxx,
            degenerate: true,
        });
    }

    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let r = sxy / (sxx * syy).sqrt();
    let r2 = r * r;
    let r2_adj = 1.0 - (1.0 - r2) * (n_f - 1.0) / (n_f - 2.0);
    let sse = (syy - slope * sxy).max(0.0);
    let se_est = (sse / (n_f - 2.0)).sqrt();
    let se_slope = se_est / sxx.sqrt();
    let se_intercept = se_est * (1.0 / n_f + x_mean * x_mean / sxx).sqrt();

    let (t_slope, p_slope) = t_and_p(slope, se_slope, df);
    let (t_intercept, p_intercept) = t_and_p(intercept, se_intercept, df);

    Ok(LinearModel {
        predictor_name: predictor_name.to_owned(),
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
        p_intercept,
        p_slope,
        x_mean,
        sxx,
        degenerate: false,
    })
}

// An exact fit has zero standard errors: t carries an infinity (or 0 for
// a zero coefficient) and the significance collapses accordingly.
fn t_and_p(coef: f64, se: f64, df: u32) -> (f64, f64) {
    if se > 0.0 {
        let t = coef / se;
        (t, student_t_two_tailed_p(t, df))
    } else if coef == 0.0 {
        (0.0, 1.0)
    } else {
        (f64::INFINITY * coef.signum(), 0.0)
    }
}

/// Residuals `y_i - predict(x_i)`, in input order.
pub fn residuals(model: &LinearModel, points: &[(f64, f64)]) -> Vec<f64> {
    points.iter().map(|&(x, y)| y - model.predict(x)).collect()
}

/// Renders the two diagnostic tables of a model as plain text:
/// a model summary (R, R squared, corrected R squared, typical error)
/// and a coefficients table (B, typical error, Beta, t, Sig.) with one
/// row for the constant and one for the predictor.
///
/// Values are shown at 3 decimals except the typical error of the
/// estimation, which carries 4. This layout is a stable interface.
pub fn model_summary(model: &LinearModel) -> String {
    let summary_rows = vec![
        vec![
            "R".to_owned(),
            "R squared".to_owned(),
            "R squared corrected".to_owned(),
            "Typical error of the estimation".to_owned(),
        ],
        vec![
            format!("{:.3}", model.r),
            format!("{:.3}", model.r2),
            format!("{:.3}", model.r2_adj),
            format!("{:.4}", model.se_est),
        ],
    ];
    let coef_rows = vec![
        vec![
            String::new(),
            "B".to_owned(),
            "Typical error".to_owned(),
            "Beta".to_owned(),
            "t".to_owned(),
            "Sig.".to_owned(),
        ],
        vec![
            "(Constant)".to_owned(),
            format!("{:.3}", model.intercept),
            format!("{:.3}", model.se_intercept),
            String::new(),
            format!("{:.3}", model.t_intercept),
            format!("{:.3}", model.p_intercept),
        ],
        vec![
            model.predictor_name.clone(),
            format!("{:.3}", model.slope),
            format!("{:.3}", model.se_slope),
            format!("{:.3}", model.beta_std),
            format!("{:.3}", model.t_slope),
            format!("{:.3}", model.p_slope),
        ],
    ];

    let mut out = String::new();
    out.push_str("Summary of the model\n");
    out.push_str(&layout(&summary_rows));
    out.push('\n');
    out.push_str("Coefficients\n");
    out.push_str(&layout(&coef_rows));
    out
}

/// Left-aligns cells into columns padded to their widest entry,
/// two spaces between columns, no trailing whitespace.
fn layout(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|row| row.get(c))
                .map(|cell| cell.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[c].saturating_sub(cell.chars().count());
            line.extend(std::iter::repeat(' ').take(pad));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
