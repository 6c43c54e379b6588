//! Randomized property suites: parser and CSV round trips, least-squares
//! identities, counting invariants and interval behaviour.

use proptest::prelude::*;

use fpa_core::count::{count_project, derive_counters};
use fpa_core::dataset::{load_csv, save_csv, Dataset, MeasurementRecord};
use fpa_core::efpm::prediction_interval;
use fpa_core::model::{DataFunction, FunctionKind, Project, TransactionalFunction};
use fpa_core::regress::{fit_simple_ols, residuals};
use fpa_core::specfile::{parse_spec, render_spec};

fn name_fragment() -> impl Strategy<Value = String> {
    // anything a quoted name can carry: no double quote, no line break
    proptest::string::string_regex("[^\"\r\n]{0,10}").unwrap()
}

fn arb_project() -> impl Strategy<Value = Project> {
    let data_kind = prop_oneof![Just(FunctionKind::Ilf), Just(FunctionKind::Eif)];
    let trans_kind = prop_oneof![
        Just(FunctionKind::Ei),
        Just(FunctionKind::Eo),
        Just(FunctionKind::Eq)
    ];
    let data_item = (data_kind, 1u32..20, 1u32..80, name_fragment());
    let trans_item = (trans_kind, 0u32..10, 1u32..40, name_fragment());
    (
        name_fragment(),
        proptest::collection::vec(data_item, 0..8),
        proptest::collection::vec(trans_item, 0..8),
    )
        .prop_map(|(project_name, data, trans)| {
            let data = data
                .into_iter()
                .enumerate()
                .map(|(i, (kind, rets, dets, frag))| {
                    DataFunction::new(format!("d{i} {frag}"), kind, rets, dets).unwrap()
                })
                .collect();
            let trans = trans
                .into_iter()
                .enumerate()
                .map(|(i, (kind, ftrs, dets, frag))| {
                    TransactionalFunction::new(format!("t{i} {frag}"), kind, ftrs, dets).unwrap()
                })
                .collect();
            Project::new(project_name, data, trans).unwrap()
        })
}

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    let record = (0u32..1000, 0u32..2_000_000, 0u32..100, 0u32..100, 0u32..300).prop_map(
        |(project, fp_tenths, cilf, eifs, ceieoeq)| {
            MeasurementRecord::new(
                project,
                f64::from(fp_tenths) / 10.0,
                cilf,
                cilf + eifs,
                ceieoeq,
            )
            .unwrap()
        },
    );
    proptest::collection::vec(record, 0..40).prop_map(Dataset::new)
}

/// Points with a usable regression design: n >= 3 and a spread-out x.
fn arb_points() -> impl Strategy<Value = Vec<(f64, f64)>> {
    proptest::collection::vec((-1e4f64..1e4, -1e4f64..1e4), 3..40).prop_filter(
        "predictor must not be (nearly) constant",
        |points| {
            let n = points.len() as f64;
            let mean = points.iter().map(|&(x, _)| x).sum::<f64>() / n;
            points.iter().map(|&(x, _)| (x - mean) * (x - mean)).sum::<f64>() > 1e-3
        },
    )
}

proptest! {
    #[test]
    fn spec_round_trip(project in arb_project()) {
        let rendered = render_spec(&project);
        let reparsed = parse_spec(&rendered).unwrap();
        prop_assert_eq!(reparsed, project);
    }

    #[test]
    fn spec_parser_never_panics(source in any::<String>()) {
        let _ = parse_spec(&source);
    }

    #[test]
    fn csv_round_trip(ds in arb_dataset()) {
        let text = save_csv(&ds);
        let reloaded = load_csv(&text).unwrap();
        prop_assert_eq!(reloaded, ds);
    }

    #[test]
    fn csv_loader_never_panics(source in any::<String>()) {
        let _ = load_csv(&source);
    }

    #[test]
    fn ols_normal_equations(points in arb_points()) {
        let model = fit_simple_ols(&points, "X").unwrap();
        let res = residuals(&model, &points);
        let y_scale: f64 = points.iter().map(|&(_, y)| y.abs()).sum::<f64>().max(1.0);
        let x_scale: f64 = points.iter().map(|&(x, _)| x.abs()).fold(0.0, f64::max).max(1.0);
        let sum: f64 = res.iter().sum();
        let weighted: f64 = res.iter().zip(&points).map(|(e, &(x, _))| e * x).sum();
        prop_assert!(sum.abs() <= 1e-9 * y_scale);
        prop_assert!(weighted.abs() <= 1e-9 * y_scale * x_scale);
    }

    #[test]
    fn ols_mean_point_and_r_bounds(points in arb_points()) {
        let model = fit_simple_ols(&points, "X").unwrap();
        let n = points.len() as f64;
        let y_mean = points.iter().map(|&(_, y)| y).sum::<f64>() / n;
        let y_scale = y_mean.abs().max(1.0);
        prop_assert!((model.predict(model.x_mean) - y_mean).abs() <= 1e-12 * y_scale);
        prop_assert!(model.r.abs() <= 1.0 + 1e-12);
        prop_assert!(model.r2_adj <= model.r2 + 1e-12);
        prop_assert!((model.r2 - model.r * model.r).abs() <= 1e-12);
        prop_assert!((model.beta_std - model.r).abs() <= 1e-12);
    }

    #[test]
    fn ols_predictor_scaling(points in arb_points(), scale in 0.01f64..100.0) {
        let base = fit_simple_ols(&points, "X").unwrap();
        let scaled_points: Vec<(f64, f64)> =
            points.iter().map(|&(x, y)| (scale * x, y)).collect();
        let scaled = fit_simple_ols(&scaled_points, "X").unwrap();

        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-12);
        prop_assert!(rel(scaled.slope * scale, base.slope) <= 1e-9);
        prop_assert!(rel(scaled.intercept, base.intercept) <= 1e-9 || (scaled.intercept - base.intercept).abs() <= 1e-9);
        prop_assert!((scaled.r - base.r).abs() <= 1e-9);
        prop_assert!(rel(scaled.se_est, base.se_est) <= 1e-9 || (scaled.se_est - base.se_est).abs() <= 1e-9);
        // predictions agree at corresponding inputs
        for &(x, _) in points.iter().take(5) {
            let (a, b) = (base.predict(x), scaled.predict(scale * x));
            prop_assert!(rel(a, b) <= 1e-9 || (a - b).abs() <= 1e-9 * 1e4);
        }
    }

    #[test]
    fn ols_recovers_exact_lines(
        intercept in -100.0f64..100.0,
        slope_mag in 0.01f64..100.0,
        negative in any::<bool>(),
        x0 in -100.0f64..100.0,
        dx in 0.1f64..10.0,
        n in 3usize..60,
    ) {
        let slope = if negative { -slope_mag } else { slope_mag };
        let points: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = x0 + i as f64 * dx;
                (x, intercept + slope * x)
            })
            .collect();
        let model = fit_simple_ols(&points, "X").unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-9);
        prop_assert!(rel(model.slope, slope) <= 1e-9);
        prop_assert!((model.intercept - intercept).abs() <= 1e-9 * intercept.abs().max(1.0));
        prop_assert!((model.r.abs() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn count_is_additive_over_disjoint_projects(a in arb_project(), b in arb_project()) {
        let rename = |prefix: &str, p: &Project| -> Project {
            let data = p
                .data_functions()
                .iter()
                .map(|f| {
                    DataFunction::new(format!("{prefix}{}", f.name()), f.kind(), f.rets(), f.dets())
                        .unwrap()
                })
                .collect();
            let trans = p
                .transactional_functions()
                .iter()
                .map(|f| {
                    TransactionalFunction::new(
                        format!("{prefix}{}", f.name()),
                        f.kind(),
                        f.ftrs(),
                        f.dets(),
                    )
                    .unwrap()
                })
                .collect();
            Project::new(p.name(), data, trans).unwrap()
        };
        let a = rename("a/", &a);
        let b = rename("b/", &b);
        let union = Project::new(
            "union",
            a.data_functions()
                .iter()
                .chain(b.data_functions())
                .cloned()
                .collect(),
            a.transactional_functions()
                .iter()
                .chain(b.transactional_functions())
                .cloned()
                .collect(),
        )
        .unwrap();
        let (ca, cb, cu) = (count_project(&a), count_project(&b), count_project(&union));
        prop_assert_eq!(cu.total_ufp(), ca.total_ufp() + cb.total_ufp());

        // weight bounds: every function contributes between 3 and 15
        let functions = union.function_count() as u32;
        prop_assert!(cu.total_ufp() >= 3 * functions);
        prop_assert!(cu.total_ufp() <= 15 * functions);

        let (cilf, cilfeif, ceieoeq) = derive_counters(&union);
        prop_assert_eq!(cilf, cu.cilf());
        prop_assert_eq!(cilfeif, cu.cilfeif());
        prop_assert_eq!(ceieoeq, cu.ceieoeq());
        prop_assert!(cilfeif >= cilf);
    }

    #[test]
    fn intervals_nest_and_are_widest_away_from_the_mean(
        points in arb_points(),
        x in -1e4f64..1e4,
        narrow in 0.5f64..0.9,
        widen in 0.01f64..0.09,
    ) {
        let model = fit_simple_ols(&points, "X").unwrap();
        let wide = narrow + widen;
        let (lo_n, hi_n) = prediction_interval(&model, x, narrow).unwrap();
        let (lo_w, hi_w) = prediction_interval(&model, x, wide).unwrap();
        prop_assert!(lo_w <= lo_n && hi_n <= hi_w);
        let center = model.predict(x);
        prop_assert!(lo_n <= center && center <= hi_n);

        let width_at = |x: f64| {
            let (lo, hi) = prediction_interval(&model, x, 0.95).unwrap();
            hi - lo
        };
        prop_assert!(width_at(x) >= width_at(model.x_mean) - 1e-9);
    }
}
