//! Figure layouts for the four diagnostic plots.

use paretocheck_core::diagnostics::{boundary_curves, FormulaMode, TailFit, PARETO_CV_LIMIT};
use paretocheck_core::empirical::{MomentPoint, ZengaSeries};
use paretocheck_core::{PlotSeries, Point, Scale};

use crate::render::{Annotation, FigureSpec, NamedCurve};

pub const MR_DEFAULT_X: (f64, f64) = (0.0, 20.0);
pub const MR_DEFAULT_Y: (f64, f64) = (-1.0, 40.0);
const MR_GRID: usize = 1500;

/// Zipf plot with the fitted tail line, when there is one.
pub fn zipf_figure(series: &PlotSeries, fit: Option<&TailFit>) -> FigureSpec {
    let mut spec = FigureSpec::new(
        "Zipf plot",
        "x on log scale",
        "1-F(x) on log scale",
        Scale::Log,
        Scale::Log,
    );
    if let Some(fit) = fit {
        let m = series.points.len();
        let tail = &series.points[m.saturating_sub(fit.points_used)..];
        if let (Some(first), Some(last)) = (tail.first(), tail.last()) {
            let line = |x: f64| Point::new(x, (fit.intercept + fit.slope * x.ln()).exp());
            spec.reference_curves.push(NamedCurve::new(
                format!("tail fit, slope {:.3}", fit.slope),
                vec![line(first.x), line(last.x)],
            ));
        }
    }
    spec.series.push(series.clone());
    spec
}

pub fn meplot_figure(series: &PlotSeries) -> FigureSpec {
    let mut spec = FigureSpec::new(
        "Mean excess plot",
        "Threshold u",
        "Mean Excess e(u)",
        Scale::Linear,
        Scale::Linear,
    );
    spec.series.push(series.clone());
    spec
}

fn expanded(points: impl Iterator<Item = MomentPoint> + Clone) -> ((f64, f64), (f64, f64)) {
    let (mut x, mut y) = (MR_DEFAULT_X, MR_DEFAULT_Y);
    for p in points {
        if p.cv.is_finite() && p.cv > x.1 {
            x.1 = p.cv * 1.1;
        }
        if p.skewness.is_finite() {
            if p.skewness > y.1 {
                y.1 = p.skewness * 1.1;
            }
            if p.skewness < y.0 {
                y.0 = p.skewness - 1.0;
            }
        }
    }
    (x, y)
}

/// Smallest `cv` in `(0, hi)` where the increasing `f` reaches `level`.
fn crossing(f: impl Fn(f64) -> f64, hi: f64, level: f64) -> f64 {
    let (mut a, mut b) = (0.0, hi);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(m) < level {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// The region between the inverted-gamma and Pareto curves, cut off at
/// `y_top`.
pub fn paretian_polygon(y_top: f64, mode: FormulaMode) -> Vec<Point> {
    let pareto = |cv: f64| boundary_curves(cv, mode).pareto.unwrap_or(f64::INFINITY);
    let inv_gamma = |cv: f64| boundary_curves(cv, mode).inv_gamma.unwrap_or(f64::INFINITY);
    let c_ig = crossing(inv_gamma, 1.0, y_top);
    let c_p = crossing(pareto, PARETO_CV_LIMIT, y_top);
    let steps = 200;
    let start = 1e-4;
    let mut poly = Vec::with_capacity(2 * steps + 2);
    for i in 0..=steps {
        let cv = start + (c_ig - start) * i as f64 / steps as f64;
        poly.push(Point::new(cv, inv_gamma(cv).min(y_top)));
    }
    for i in (0..=steps).rev() {
        let cv = start + (c_p - start) * i as f64 / steps as f64;
        poly.push(Point::new(cv, pareto(cv).min(y_top)));
    }
    poly
}

/// Moment-ratio plot: boundary curves, the shaded Paretian region, the
/// sample point and an optional bootstrap cloud.
pub fn mrplot_figure(
    point: &MomentPoint,
    bootstrap: &[MomentPoint],
    mode: FormulaMode,
) -> FigureSpec {
    let (x_range, y_range) = expanded(core::iter::once(*point).chain(bootstrap.iter().copied()));
    let mut spec = FigureSpec::new(
        "Discriminant moment-ratio plot",
        "CV",
        "Skewness",
        Scale::Linear,
        Scale::Linear,
    );
    spec.x_range = Some(x_range);
    spec.y_range = Some(y_range);
    let span = y_range.1 - y_range.0;
    let window = (y_range.0 - span, y_range.1 + span);

    let mut curves: [(&str, Vec<Point>); 5] = [
        ("Pareto", Vec::new()),
        ("Inverted gamma", Vec::new()),
        ("Lognormal", Vec::new()),
        ("Gamma", Vec::new()),
        ("Bernoulli", Vec::new()),
    ];
    for i in 1..=MR_GRID {
        let t = i as f64 / MR_GRID as f64;
        let cv = x_range.1 * t * t;
        let b = boundary_curves(cv, mode);
        let values = [
            b.pareto,
            b.inv_gamma,
            Some(b.lognormal),
            Some(b.gamma),
            Some(b.bernoulli),
        ];
        for ((_, pts), v) in curves.iter_mut().zip(values) {
            if let Some(v) = v.filter(|v| (window.0..=window.1).contains(v)) {
                pts.push(Point::new(cv, v));
            }
        }
    }
    spec.shaded_region = Some(paretian_polygon(y_range.1, mode));
    for (name, pts) in curves {
        spec.reference_curves.push(NamedCurve::new(name, pts));
    }
    spec.guides.push(0.0);

    let note = |x: f64, y: f64, text: &str| Annotation {
        x,
        y,
        text: text.to_string(),
        rotation: 0.0,
    };
    spec.annotations = vec![
        note(0.7, 0.75 * y_range.1, "Paretian"),
        note(1.6, 0.6 * y_range.1, "Gray"),
        note(8.0, 0.6 * y_range.1, "Lognormal"),
        note(15.0, 0.55 * y_range.1, "Thin tails"),
        note(0.5 * x_range.1, 1.0, "Symmetric"),
    ];

    spec.series.push(PlotSeries::new(
        "sample",
        Scale::Linear,
        Scale::Linear,
        vec![Point::new(point.cv, point.skewness)],
    ));
    if !bootstrap.is_empty() {
        spec.series.push(PlotSeries::new(
            "bootstrap",
            Scale::Linear,
            Scale::Linear,
            bootstrap
                .iter()
                .map(|p| Point::new(p.cv, p.skewness))
                .collect(),
        ));
    }
    spec
}

pub fn zenga_figure(series: &ZengaSeries) -> FigureSpec {
    let mut spec = FigureSpec::new("Zenga plot", "u", "Z(u)", Scale::Linear, Scale::Linear);
    spec.x_range = Some((0.0, 1.0));
    spec.y_range = Some((0.0, 1.0));
    spec.series.push(series.to_series());
    spec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::render_figure;

    #[test]
    fn polygon_is_bounded_by_its_curves() {
        let poly = paretian_polygon(40.0, FormulaMode::Corrected);
        for p in &poly {
            let b = boundary_curves(p.x, FormulaMode::Corrected);
            assert!(p.y <= 40.0 + 1e-9);
            assert!(p.y >= b.inv_gamma.unwrap() - 1e-6 || p.y == 40.0);
        }
    }

    #[test]
    fn mrplot_range_expands() {
        let spec = mrplot_figure(&MomentPoint::new(25.0, 60.0), &[], FormulaMode::Corrected);
        assert!(spec.x_range.unwrap().1 >= 25.0);
        assert!(spec.y_range.unwrap().1 >= 60.0);
        let svg = render_figure(&spec).unwrap();
        assert_eq!(svg.matches(r#"class="curve""#).count(), 5);
    }

    #[test]
    fn zipf_fit_line_spans_the_tail() {
        let series = PlotSeries::new(
            "s",
            Scale::Log,
            Scale::Log,
            (1..=20)
                .map(|i| Point::new(i as f64, 1.0 / i as f64))
                .collect(),
        );
        let fit = TailFit {
            slope: -1.0,
            intercept: 0.0,
            r2: 1.0,
            points_used: 4,
            pass: true,
        };
        let spec = zipf_figure(&series, Some(&fit));
        let line = &spec.reference_curves[0].points;
        assert_eq!(line[0].x, 17.0);
        assert!((line[1].y - 0.05).abs() < 1e-12);
    }
}
