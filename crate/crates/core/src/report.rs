//! Scatter-plus-regression-line figures as SVG, and plain data tables
//! for replotting in external tools.
//!
//! Output is fully deterministic: identical input yields byte-identical
//! SVG. The fitted line carries its endpoints in data coordinates as
//! `data-*` attributes so consumers (and tests) can check them without
//! undoing the pixel transform.

use crate::error::ValidationError;
use crate::regress::LinearModel;

/// Everything needed to draw one figure.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    points: Vec<(f64, f64)>,
    model: LinearModel,
    x_label: String,
    y_label: String,
    title: String,
    width: u32,
    height: u32,
}

impl PlotSpec {
    /// Builds a plot spec at the default 800x600 size. Requires at
    /// least 2 points and non-empty labels.
    pub fn new(
        points: Vec<(f64, f64)>,
        model: LinearModel,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        title: impl Into<String>,
    ) -> Result<Self, ValidationError> {
        let x_label = x_label.into();
        let y_label = y_label.into();
        let title = title.into();
        if points.len() < 2 {
            return Err(ValidationError::new("points", "a plot needs at least 2 points"));
        }
        if x_label.is_empty() || y_label.is_empty() || title.is_empty() {
            return Err(ValidationError::new("labels", "labels and title must not be empty"));
        }
        Ok(Self {
            points,
            model,
            x_label,
            y_label,
            title,
            width: 800,
            height: 600,
        })
    }

    pub fn with_size(mut self, width: u32, height: u32) -> Self {
        self.width = width;
        self.height = height;
        self
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn model(&self) -> &LinearModel {
        &self.model
    }
}

const MARGIN_LEFT: f64 = 62.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 54.0;

/// Renders the scatter plot with its regression line as SVG 1.1 text.
///
/// One `<circle>` per point, one `<line class="fit">` from
/// `(x_min, predict(x_min))` to `(x_max, predict(x_max))`, tick-labelled
/// axes, axis labels and a title. Fails if all x values coincide.
pub fn scatter_svg(spec: &PlotSpec) -> Result<String, ValidationError> {
    let xs = spec.points.iter().map(|&(x, _)| x);
    let x_min = xs.clone().fold(f64::INFINITY, f64::min);
    let x_max = xs.fold(f64::NEG_INFINITY, f64::max);
    if x_min == x_max {
        return Err(ValidationError::new(
            "points",
            "all x values are equal; the axis range is degenerate",
        ));
    }

    // the drawn line spans the observed x range; its endpoints satisfy
    // y = predict(x) in data coordinates
    let line = [
        (x_min, spec.model.predict(x_min)),
        (x_max, spec.model.predict(x_max)),
    ];

    let ys = spec.points.iter().map(|&(_, y)| y).chain(line.iter().map(|&(_, y)| y));
    let y_min = ys.clone().fold(f64::INFINITY, f64::min);
    let y_max = ys.fold(f64::NEG_INFINITY, f64::max);

    let x_axis = Axis::fit(x_min, x_max);
    let y_axis = Axis::fit(y_min, y_max);

    let w = f64::from(spec.width);
    let h = f64::from(spec.height);
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| {
        (
            MARGIN_LEFT + (x - x_axis.min) / x_axis.span() * plot_w,
            MARGIN_TOP + (y_axis.max - y) / y_axis.span() * plot_h,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        spec.width, spec.height, spec.width, spec.height
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        spec.width, spec.height
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        escape(&spec.title)
    ));
    svg.push_str(&format!(
        "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>\n",
        MARGIN_LEFT, MARGIN_TOP, plot_w, plot_h
    ));

    // x ticks
    for tick in x_axis.ticks() {
        let (px, _) = to_px(tick, y_axis.min);
        let base = MARGIN_TOP + plot_h;
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            base,
            base + 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            base + 20.0,
            x_axis.label(tick)
        ));
    }
    // y ticks
    for tick in y_axis.ticks() {
        let (_, py) = to_px(x_axis.min, tick);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>\n",
            MARGIN_LEFT - 6.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            MARGIN_LEFT - 10.0,
            py + 4.0,
            y_axis.label(tick)
        ));
    }

    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        h - 12.0,
        escape(&spec.x_label)
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&spec.y_label)
    ));

    for &(x, y) in &spec.points {
        let (px, py) = to_px(x, y);
        svg.push_str(&format!(
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"#4682b4\" fill-opacity=\"0.7\"/>\n"
        ));
    }

    let (x1, y1) = to_px(line[0].0, line[0].1);
    let (x2, y2) = to_px(line[1].0, line[1].1);
    svg.push_str(&format!(
        "  <line class=\"fit\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" data-x1=\"{}\" data-y1=\"{}\" data-x2=\"{}\" data-y2=\"{}\" stroke=\"#b22222\" stroke-width=\"1.5\"/>\n",
        line[0].0, line[0].1, line[1].0, line[1].1
    ));

    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Tab-separated values with columns `x`, `y`, `fitted`, `residual`;
/// dot decimals, LF line endings, one row per point in input order.
pub fn data_table(points: &[(f64, f64)], model: &LinearModel) -> String {
    let mut out = String::from("x\ty\tfitted\tresidual\n");
    for &(x, y) in points {
        let fitted = model.predict(x);
        out.push_str(&format!("{x}\t{y}\t{fitted:.6}\t{:.6}\n", y - fitted));
    }
    out
}

/// An axis over [min, max] (data bounds padded by 5%) with round-number
/// tick positions.
struct Axis {
    min: f64,
    max: f64,
    step: f64,
}

impl Axis {
    fn fit(data_min: f64, data_max: f64) -> Self {
        let range = data_max - data_min;
        let pad = if range == 0.0 { 1.0 } else { 0.05 * range };
        let min = data_min - pad;
        let max = data_max + pad;
        Self { min, max, step: nice_step(max - min, 6) }
    }

    fn span(&self) -> f64 {
        self.max - self.min
    }

    fn ticks(&self) -> Vec<f64> {
        let first = (self.min / self.step).ceil() as i64;
        let last = (self.max / self.step).floor() as i64;
        (first..=last).map(|k| k as f64 * self.step).collect()
    }

    fn label(&self, tick: f64) -> String {
        let decimals = if self.step >= 1.0 {
            0
        } else {
            (-self.step.log10()).ceil() as usize
        };
        format!("{tick:.decimals$}")
    }
}

/// The smallest of 1, 2, 5, 10 times a power of ten that divides `range`
/// into at most `target` intervals.
fn nice_step(range: f64, target: u32) -> f64 {
    let raw = range / f64::from(target);
    let magnitude = 10f64.powf(raw.log10().floor());
    let normalized = raw / magnitude;
    let factor = if normalized <= 1.0 {
        1.0
    } else if normalized <= 2.0 {
        2.0
    } else if normalized <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * magnitude
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{embedded_dataset, Predictor};
    use crate::regress::fit_simple_ols;

    fn cilf_plot() -> PlotSpec {
        let points = embedded_dataset().xy_points(Predictor::Cilf);
        let model = fit_simple_ols(&points, "CILF").unwrap();
        PlotSpec::new(points, model, "CILF", "FP", "FP against CILF").unwrap()
    }

    #[test]
    fn output_is_deterministic() {
        let spec = cilf_plot();
        assert_eq!(scatter_svg(&spec).unwrap(), scatter_svg(&spec).unwrap());
    }

    #[test]
    fn one_marker_per_point() {
        let svg = scatter_svg(&cilf_plot()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 60);
        assert_eq!(svg.matches("class=\"fit\"").count(), 1);
    }

    #[test]
    fn line_endpoints_satisfy_the_model_in_data_coordinates() {
        let spec = cilf_plot();
        let svg = scatter_svg(&spec).unwrap();
        let attr = |name: &str| -> f64 {
            let tag = format!("{name}=\"");
            let start = svg.find(&tag).unwrap() + tag.len();
            let end = svg[start..].find('"').unwrap() + start;
            svg[start..end].parse().unwrap()
        };
        assert_eq!(attr("data-x1"), 0.0); // min CILF in the dataset
        assert_eq!(attr("data-x2"), 34.0); // max CILF in the dataset
        assert_eq!(attr("data-y1"), spec.model().predict(0.0));
        assert_eq!(attr("data-y2"), spec.model().predict(34.0));
    }

    #[test]
    fn two_point_line_passes_through_both_markers() {
        let points = vec![(1.0, 3.0), (5.0, 11.0)];
        let model = fit_simple_ols(&[(1.0, 3.0), (3.0, 7.0), (5.0, 11.0)], "X").unwrap();
        let spec = PlotSpec::new(points, model, "x", "y", "t").unwrap();
        let svg = scatter_svg(&spec).unwrap();

        let mut circles = Vec::new();
        for part in svg.split("<circle").skip(1) {
            let cx: f64 = extract(part, "cx");
            let cy: f64 = extract(part, "cy");
            circles.push((cx, cy));
        }
        let line_part = svg.split("class=\"fit\"").nth(1).unwrap();
        let (x1, y1) = (extract(line_part, "x1"), extract(line_part, "y1"));
        let (x2, y2) = (extract(line_part, "x2"), extract(line_part, "y2"));
        assert!((circles[0].0 - x1).abs() <= 0.5 && (circles[0].1 - y1).abs() <= 0.5);
        assert!((circles[1].0 - x2).abs() <= 0.5 && (circles[1].1 - y2).abs() <= 0.5);
    }

    fn extract(fragment: &str, name: &str) -> f64 {
        let tag = format!("{name}=\"");
        let start = fragment.find(&tag).unwrap() + tag.len();
        let end = fragment[start..].find('"').unwrap() + start;
        fragment[start..end].parse().unwrap()
    }

    #[test]
    fn degenerate_x_range_is_rejected() {
        let model = fit_simple_ols(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)], "X").unwrap();
        let spec = PlotSpec::new(
            vec![(2.0, 1.0), (2.0, 5.0)],
            model,
            "x",
            "y",
            "t",
        )
        .unwrap();
        let err = scatter_svg(&spec).unwrap_err();
        assert_eq!(err.field, "points");
    }

    #[test]
    fn plot_spec_validates_inputs() {
        let model = fit_simple_ols(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)], "X").unwrap();
        assert!(PlotSpec::new(vec![(1.0, 1.0)], model.clone(), "x", "y", "t").is_err());
        assert!(PlotSpec::new(vec![(1.0, 1.0), (2.0, 2.0)], model, "", "y", "t").is_err());
    }

    #[test]
    fn labels_are_xml_escaped() {
        let model = fit_simple_ols(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)], "X").unwrap();
        let spec = PlotSpec::new(
            vec![(1.0, 1.0), (2.0, 2.0)],
            model,
            "a<b",
            "c&d",
            "\"quoted\"",
        )
        .unwrap();
        let svg = scatter_svg(&spec).unwrap();
        assert!(svg.contains("a&lt;b"));
        assert!(svg.contains("c&amp;d"));
        assert!(svg.contains("&quot;quoted&quot;"));
    }

    #[test]
    fn data_table_lists_every_point_with_residuals() {
        let points = [(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)];
        let model = fit_simple_ols(&points, "X").unwrap();
        let table = data_table(&points, &model);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "x\ty\tfitted\tresidual");
        assert_eq!(lines[1], "0\t1\t1.000000\t0.000000");
        assert_eq!(lines[2], "1\t3\t3.000000\t0.000000");
    }
}
