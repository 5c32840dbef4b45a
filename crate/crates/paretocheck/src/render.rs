//! Standalone SVG figures.
//!
//! The canvas is 800 by 600 with the plot area inset by 10% on every side.
//! Coordinates on a log axis are mapped through `log10` first and then
//! affinely onto the plot area.

use std::fmt::Write as _;

use paretocheck_core::{PlotSeries, Point, Scale};

use crate::error::{Error, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const PLOT_LEFT: f64 = 80.0;
pub const PLOT_RIGHT: f64 = 720.0;
pub const PLOT_TOP: f64 = 60.0;
pub const PLOT_BOTTOM: f64 = 540.0;

const PALETTE: [&str; 6] = [
    "#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#555555",
];

#[derive(Debug, Clone, PartialEq)]
pub struct NamedCurve {
    pub name: String,
    pub points: Vec<Point>,
}

impl NamedCurve {
    pub fn new(name: impl Into<String>, points: Vec<Point>) -> Self {
        NamedCurve {
            name: name.into(),
            points,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Annotation {
    pub x: f64,
    pub y: f64,
    pub text: String,
    /// Degrees, counter-clockwise.
    pub rotation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series: Vec<PlotSeries>,
    pub reference_curves: Vec<NamedCurve>,
    pub shaded_region: Option<Vec<Point>>,
    pub annotations: Vec<Annotation>,
    /// Horizontal guide lines at these y values.
    pub guides: Vec<f64>,
    /// Data-space limits; derived from the content when absent.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
}

impl FigureSpec {
    pub fn new(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        x_scale: Scale,
        y_scale: Scale,
    ) -> Self {
        FigureSpec {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            x_scale,
            y_scale,
            series: Vec::new(),
            reference_curves: Vec::new(),
            shaded_region: None,
            annotations: Vec::new(),
            guides: Vec::new(),
            x_range: None,
            y_range: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub scale: Scale,
    /// Limits in scaled units (log10 for log axes).
    pub lo: f64,
    pub hi: f64,
}

impl Axis {
    pub fn scaled(&self, v: f64) -> f64 {
        match self.scale {
            Scale::Linear => v,
            Scale::Log => v.log10(),
        }
    }

    fn fraction(&self, v: f64) -> f64 {
        (self.scaled(v) - self.lo) / (self.hi - self.lo)
    }
}

/// The data-to-pixel map of a figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x: Axis,
    pub y: Axis,
}

impl Frame {
    pub fn pixel(&self, p: Point) -> (f64, f64) {
        (
            PLOT_LEFT + self.x.fraction(p.x) * (PLOT_RIGHT - PLOT_LEFT),
            PLOT_BOTTOM - self.y.fraction(p.y) * (PLOT_BOTTOM - PLOT_TOP),
        )
    }
}

fn check_points<'a>(
    name: &str,
    points: impl IntoIterator<Item = &'a Point>,
    spec: &FigureSpec,
) -> Result<()> {
    for p in points {
        let bad = |reason: &str| Error::Render {
            series: name.to_string(),
            reason: reason.to_string(),
        };
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(bad("non-finite coordinate"));
        }
        if spec.x_scale == Scale::Log && p.x <= 0.0 {
            return Err(bad(&format!("x = {} on a log axis", p.x)));
        }
        if spec.y_scale == Scale::Log && p.y <= 0.0 {
            return Err(bad(&format!("y = {} on a log axis", p.y)));
        }
    }
    Ok(())
}

fn validate(spec: &FigureSpec) -> Result<()> {
    for s in &spec.series {
        if s.points.is_empty() {
            return Err(Error::Render {
                series: s.label.clone(),
                reason: "no points".into(),
            });
        }
        check_points(&s.label, &s.points, spec)?;
    }
    for c in &spec.reference_curves {
        check_points(&c.name, &c.points, spec)?;
    }
    if let Some(poly) = &spec.shaded_region {
        check_points("shaded region", poly, spec)?;
    }
    Ok(())
}

fn axis_limits(scale: Scale, given: Option<(f64, f64)>, values: &[f64]) -> Result<Axis> {
    let t = |v: f64| match scale {
        Scale::Linear => v,
        Scale::Log => v.log10(),
    };
    let (lo, hi) = match given {
        Some((a, b)) => {
            if a.partial_cmp(&b) != Some(std::cmp::Ordering::Less)
                || (scale == Scale::Log && a <= 0.0)
            {
                return Err(Error::Config(format!("invalid axis range [{a}, {b}]")));
            }
            (t(a), t(b))
        }
        None => {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &v in values {
                lo = lo.min(t(v));
                hi = hi.max(t(v));
            }
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi - lo < 1e-12 {
                (lo - 0.5, hi + 0.5)
            } else {
                let pad = 0.05 * (hi - lo);
                (lo - pad, hi + pad)
            }
        }
    };
    Ok(Axis { scale, lo, hi })
}

/// Resolves the axis limits of `spec`.
pub fn frame(spec: &FigureSpec) -> Result<Frame> {
    validate(spec)?;
    let all = spec
        .series
        .iter()
        .flat_map(|s| s.points.iter())
        .chain(spec.reference_curves.iter().flat_map(|c| c.points.iter()))
        .chain(spec.shaded_region.iter().flatten());
    let (xs, ys): (Vec<f64>, Vec<f64>) = all.map(|p| (p.x, p.y)).unzip();
    Ok(Frame {
        x: axis_limits(spec.x_scale, spec.x_range, &xs)?,
        y: axis_limits(spec.y_scale, spec.y_range, &ys)?,
    })
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Tick positions in scaled units with their labels.
fn ticks(axis: &Axis) -> Vec<(f64, String)> {
    if axis.scale == Scale::Log {
        let first = axis.lo.ceil() as i64;
        let last = axis.hi.floor() as i64;
        if last - first >= 1 {
            let stride = ((last - first) / 8 + 1).max(1);
            return (first..=last)
                .filter(|k| (k - first) % stride == 0)
                .map(|k| (k as f64, decade_label(k)))
                .collect();
        }
    }
    let span = axis.hi - axis.lo;
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 8.0)
        .unwrap_or(10.0 * mag);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let mut out = Vec::new();
    let mut k = (axis.lo / step).ceil() as i64;
    loop {
        let v = k as f64 * step;
        if v > axis.hi + 1e-9 * span {
            break;
        }
        let label = match axis.scale {
            Scale::Linear => format!(
                "{:.*}",
                decimals,
                if v.abs() < 1e-9 * step { 0.0 } else { v }
            ),
            Scale::Log => significant(10f64.powf(v)),
        };
        out.push((v, label));
        k += 1;
    }
    out
}

fn decade_label(k: i64) -> String {
    if (-3..=4).contains(&k) {
        significant(10f64.powi(k as i32))
    } else {
        format!("1e{k}")
    }
}

fn significant(v: f64) -> String {
    let s = format!("{v:.3e}");
    let parsed: f64 = s.parse().unwrap_or(v);
    parsed.to_string()
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn path_data(frame: &Frame, points: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = frame.pixel(*p);
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, px(x), px(y));
    }
    d
}

/// Renders `spec` as an SVG document. One `circle.marker` per data point and
/// one `path.curve` per reference curve.
pub fn render_figure(spec: &FigureSpec) -> Result<String> {
    let frame = frame(spec)?;
    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(w, "<title>{}</title>", escape(&spec.title));
    let _ = writeln!(
        w,
        r#"<defs><clipPath id="plot-area"><rect x="{PLOT_LEFT}" y="{PLOT_TOP}" width="{}" height="{}"/></clipPath></defs>"#,
        PLOT_RIGHT - PLOT_LEFT,
        PLOT_BOTTOM - PLOT_TOP
    );
    let _ = writeln!(
        w,
        r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );

    // axes
    let _ = writeln!(w, r##"<g class="axes" stroke="#000000" font-size="12">"##);
    let _ = writeln!(
        w,
        r#"<rect x="{PLOT_LEFT}" y="{PLOT_TOP}" width="{}" height="{}" fill="none"/>"#,
        PLOT_RIGHT - PLOT_LEFT,
        PLOT_BOTTOM - PLOT_TOP
    );
    for (v, label) in ticks(&frame.x) {
        let x = PLOT_LEFT + (v - frame.x.lo) / (frame.x.hi - frame.x.lo) * (PLOT_RIGHT - PLOT_LEFT);
        let _ = writeln!(
            w,
            r#"<line class="tick" x1="{0}" y1="{PLOT_BOTTOM}" x2="{0}" y2="{1}"/><text x="{0}" y="{2}" text-anchor="middle" stroke="none">{3}</text>"#,
            px(x),
            px(PLOT_BOTTOM + 5.0),
            px(PLOT_BOTTOM + 20.0),
            escape(&label)
        );
    }
    for (v, label) in ticks(&frame.y) {
        let y =
            PLOT_BOTTOM - (v - frame.y.lo) / (frame.y.hi - frame.y.lo) * (PLOT_BOTTOM - PLOT_TOP);
        let _ = writeln!(
            w,
            r#"<line class="tick" x1="{1}" y1="{0}" x2="{PLOT_LEFT}" y2="{0}"/><text x="{2}" y="{3}" text-anchor="end" stroke="none">{4}</text>"#,
            px(y),
            px(PLOT_LEFT - 5.0),
            px(PLOT_LEFT - 8.0),
            px(y + 4.0),
            escape(&label)
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(
        w,
        r#"<text class="title" x="{}" y="35" text-anchor="middle" font-size="18">{}</text>"#,
        WIDTH / 2.0,
        escape(&spec.title)
    );
    let _ = writeln!(
        w,
        r#"<text class="x-label" x="{}" y="{}" text-anchor="middle" font-size="14">{}</text>"#,
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        PLOT_BOTTOM + 45.0,
        escape(&spec.x_label)
    );
    let ymid = (PLOT_TOP + PLOT_BOTTOM) / 2.0;
    let _ = writeln!(
        w,
        r#"<text class="y-label" x="25" y="{ymid}" text-anchor="middle" font-size="14" transform="rotate(-90 25 {ymid})">{}</text>"#,
        escape(&spec.y_label)
    );

    let _ = writeln!(w, r#"<g clip-path="url(#plot-area)">"#);
    if let Some(poly) = &spec.shaded_region {
        let pts: Vec<String> = poly
            .iter()
            .map(|p| {
                let (x, y) = frame.pixel(*p);
                format!("{},{}", px(x), px(y))
            })
            .collect();
        let _ = writeln!(
            w,
            r##"<polygon class="shaded-region" points="{}" fill="#f3c9a8" fill-opacity="0.6" stroke="none"/>"##,
            pts.join(" ")
        );
    }
    for g in &spec.guides {
        let (_, y) = frame.pixel(Point::new(
            match frame.x.scale {
                Scale::Linear => frame.x.lo,
                Scale::Log => 10f64.powf(frame.x.lo),
            },
            *g,
        ));
        let _ = writeln!(
            w,
            r##"<line class="guide" x1="{PLOT_LEFT}" y1="{0}" x2="{PLOT_RIGHT}" y2="{0}" stroke="#888888" stroke-dasharray="4 4"/>"##,
            px(y)
        );
    }
    for (i, c) in spec.reference_curves.iter().enumerate() {
        if c.points.is_empty() {
            continue;
        }
        let _ = writeln!(
            w,
            r#"<path class="curve" data-name="{}" d="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            escape(&c.name),
            path_data(&frame, &c.points),
            PALETTE[(i + 1) % PALETTE.len()]
        );
    }
    for (i, s) in spec.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for p in &s.points {
            let (x, y) = frame.pixel(*p);
            let _ = writeln!(
                w,
                r#"<circle class="marker" data-series="{}" data-x="{}" data-y="{}" cx="{}" cy="{}" r="2.5" fill="{color}"/>"#,
                escape(&s.label),
                p.x,
                p.y,
                px(x),
                px(y)
            );
        }
    }
    let _ = writeln!(w, "</g>");

    for a in &spec.annotations {
        let (x, y) = frame.pixel(Point::new(a.x, a.y));
        let _ = writeln!(
            w,
            r##"<text class="annotation" x="{0}" y="{1}" font-size="12" fill="#333333" transform="rotate({2} {0} {1})">{3}</text>"##,
            px(x),
            px(y),
            -a.rotation,
            escape(&a.text)
        );
    }

    // legend
    let entries = spec.series.len()
        + spec
            .reference_curves
            .iter()
            .filter(|c| !c.points.is_empty())
            .count();
    if entries > 0 {
        let _ = writeln!(w, r#"<g class="legend" font-size="11">"#);
        let mut row = 0.0;
        let x0 = PLOT_RIGHT - 150.0;
        for (i, s) in spec.series.iter().enumerate() {
            let y = PLOT_TOP + 12.0 + 16.0 * row;
            let _ = writeln!(
                w,
                r#"<rect x="{}" y="{}" width="8" height="8" fill="{}"/><text x="{}" y="{}">{}</text>"#,
                px(x0),
                px(y - 7.0),
                PALETTE[i % PALETTE.len()],
                px(x0 + 14.0),
                px(y),
                escape(&s.label)
            );
            row += 1.0;
        }
        for (i, c) in spec.reference_curves.iter().enumerate() {
            if c.points.is_empty() {
                continue;
            }
            let y = PLOT_TOP + 12.0 + 16.0 * row;
            let _ = writeln!(
                w,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{1}" stroke="{}" stroke-width="1.5"/><text x="{}" y="{}">{}</text>"#,
                px(x0 - 2.0),
                px(y - 3.0),
                px(x0 + 10.0),
                PALETTE[(i + 1) % PALETTE.len()],
                px(x0 + 14.0),
                px(y),
                escape(&c.name)
            );
            row += 1.0;
        }
        let _ = writeln!(w, "</g>");
    }
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_points(x_scale: Scale, y_scale: Scale) -> FigureSpec {
        let mut spec = FigureSpec::new("t", "x", "y", x_scale, y_scale);
        spec.series.push(PlotSeries::new(
            "s",
            x_scale,
            y_scale,
            vec![
                Point::new(1.0, 1.0),
                Point::new(10.0, 0.5),
                Point::new(100.0, 0.01),
            ],
        ));
        spec
    }

    #[test]
    fn one_marker_per_point() {
        let svg = render_figure(&three_points(Scale::Log, Scale::Log)).unwrap();
        assert_eq!(svg.matches(r#"class="marker""#).count(), 3);
        assert_eq!(svg.matches(r#"class="curve""#).count(), 0);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn zero_on_log_axis_is_rejected() {
        let mut spec = three_points(Scale::Log, Scale::Log);
        spec.series[0].points.push(Point::new(0.0, 0.2));
        match render_figure(&spec) {
            Err(Error::Render { series, .. }) => assert_eq!(series, "s"),
            other => panic!("{other:?}"),
        }
        let mut empty = three_points(Scale::Linear, Scale::Linear);
        empty.series[0].points.clear();
        assert!(render_figure(&empty).is_err());
    }

    #[test]
    fn explicit_ranges_map_to_the_corners() {
        let mut spec = three_points(Scale::Log, Scale::Linear);
        spec.x_range = Some((1.0, 100.0));
        spec.y_range = Some((0.0, 1.0));
        let f = frame(&spec).unwrap();
        assert_eq!(f.pixel(Point::new(1.0, 0.0)), (PLOT_LEFT, PLOT_BOTTOM));
        assert_eq!(f.pixel(Point::new(100.0, 1.0)), (PLOT_RIGHT, PLOT_TOP));
        let (x, _) = f.pixel(Point::new(10.0, 0.5));
        assert!((x - 400.0).abs() < 1e-9);
    }

    #[test]
    fn text_is_escaped() {
        let mut spec = three_points(Scale::Linear, Scale::Linear);
        spec.title = "a < b & c".into();
        let svg = render_figure(&spec).unwrap();
        assert!(svg.contains("a &lt; b &amp; c"));
    }

    #[test]
    fn tick_labels() {
        let axis = Axis {
            scale: Scale::Log,
            lo: -0.2,
            hi: 3.1,
        };
        let labels: Vec<String> = ticks(&axis).into_iter().map(|t| t.1).collect();
        assert_eq!(labels, vec!["1", "10", "100", "1000"]);
        let lin = Axis {
            scale: Scale::Linear,
            lo: -1.0,
            hi: 40.0,
        };
        let labels: Vec<String> = ticks(&lin).into_iter().map(|t| t.1).collect();
        assert_eq!(labels.first().map(String::as_str), Some("0"));
        assert!(labels.contains(&"40".to_string()));
    }
}
