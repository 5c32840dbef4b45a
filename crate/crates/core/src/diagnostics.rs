//! The four plots, moment-ratio zones, Zenga shape, aggregation stability and
//! the combined verdict.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::distributions::{unit_grid, DistributionModel, ZengaCurve};
use crate::empirical::{
    empirical_zenga_curve, log_bin, mean_excess_points, moment_stats, pairwise_aggregate,
    survival_points, MomentPoint, ZengaPoint, ZengaSeries,
};
use crate::error::{Error, Result};
use crate::math::{abs, ceil, ln, sqrt};
use crate::sample::Sample;
use crate::series::{PlotSeries, Point, Scale};
use crate::stats::{ols_line, spearman};

/// Zipf plot: empirical survival on log-log axes, optionally log-binned.
pub fn zipf_series(s: &Sample, bin_base: Option<f64>) -> Result<PlotSeries> {
    let mut series = match bin_base {
        None => survival_points(s)?,
        Some(base) => log_bin(s, base)?.to_series(),
    };
    series.label = "Zipf plot".into();
    Ok(series)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TailFitConfig {
    /// Share of the largest x-values used in the fit.
    pub tail_fraction: f64,
    pub min_r2: f64,
}

impl Default for TailFitConfig {
    fn default() -> Self {
        TailFitConfig {
            tail_fraction: 0.2,
            min_r2: 0.98,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points_used: usize,
    pub pass: bool,
}

pub const MIN_TAIL_POINTS: usize = 10;

/// OLS of `ln y` on `ln x` over the points with the largest x.
pub fn tail_linearity(series: &PlotSeries, config: &TailFitConfig) -> Result<TailFit> {
    let f = config.tail_fraction;
    if !(f > 0.0 && f <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "tail_fraction",
            value: f,
        });
    }
    let mut points: Vec<Point> = series.points.clone();
    points.sort_by(|a, b| a.x.total_cmp(&b.x));
    let m = points.len();
    let k = (ceil(f * m as f64) as usize).min(m);
    if k < MIN_TAIL_POINTS {
        return Err(Error::InsufficientTail {
            needed: MIN_TAIL_POINTS,
            got: k,
        });
    }
    let tail = &points[m - k..];
    if tail.iter().any(|p| !(p.x > 0.0) || !(p.y > 0.0)) {
        return Err(Error::InvalidParameter {
            name: "log-log coordinate",
            value: tail
                .iter()
                .map(|p| if p.x > 0.0 { p.y } else { p.x })
                .find(|v| !(*v > 0.0))
                .unwrap_or(f64::NAN),
        });
    }
    let lx: Vec<f64> = tail.iter().map(|p| ln(p.x)).collect();
    let ly: Vec<f64> = tail.iter().map(|p| ln(p.y)).collect();
    let fit = ols_line(&lx, &ly).ok_or(Error::Degenerate("tail x-values coincide"))?;
    Ok(TailFit {
        slope: fit.slope,
        intercept: fit.intercept,
        r2: fit.r2,
        points_used: k,
        pass: fit.slope < 0.0 && fit.r2 >= config.min_r2,
    })
}

/// Largest thresholds dropped from the mean-excess plot by default.
pub const DEFAULT_ME_CUT: usize = 5;

/// Mean-excess plot on linear axes.
pub fn meplot_series(s: &Sample, cut: usize) -> Result<PlotSeries> {
    let mut series = mean_excess_points(s, cut)?;
    series.label = "mean excess plot".into();
    Ok(series)
}

/// Points whose position in the x-ordered series lies between the `lo` and
/// `hi` quantiles (inclusive, by rounded index).
pub fn threshold_window(points: &[Point], lo: f64, hi: f64) -> &[Point] {
    if points.is_empty() {
        return points;
    }
    let last = (points.len() - 1) as f64;
    let start = (lo * last + 0.5) as usize;
    let end = ((hi * last + 0.5) as usize).min(points.len() - 1);
    if start > end {
        return &points[0..0];
    }
    &points[start..=end]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MeTrendConfig {
    pub min_slope: f64,
}

impl Default for MeTrendConfig {
    fn default() -> Self {
        MeTrendConfig { min_slope: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeTrend {
    pub slope: f64,
    pub pass: bool,
}

/// OLS slope of `e_n(u)` on `u` over threshold deciles 1 to 9.
pub fn me_trend(series: &PlotSeries, config: &MeTrendConfig) -> Result<MeTrend> {
    let window = threshold_window(&series.points, 0.1, 0.9);
    if window.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: window.len(),
        });
    }
    let xs: Vec<f64> = window.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = window.iter().map(|p| p.y).collect();
    let fit = ols_line(&xs, &ys).ok_or(Error::Degenerate("all thresholds coincide"))?;
    Ok(MeTrend {
        slope: fit.slope,
        pass: fit.slope > config.min_slope,
    })
}

/// How the Pareto boundary is evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaMode {
    /// Closed-form Pareto I skewness `2(1+p)/(p-3) sqrt(1-2/p)`.
    #[default]
    Corrected,
    /// `(1+p)/(p-3) * 2/sqrt(1-2/p)`; agrees with the closed form only in the limit.
    PaperVerbatim,
}

/// Skewness of each reference family at a given CV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurves {
    /// Only for `cv < 1/sqrt(3)`.
    pub pareto: Option<f64>,
    /// Only for `cv < 1`.
    pub inv_gamma: Option<f64>,
    pub lognormal: f64,
    pub gamma: f64,
    pub bernoulli: f64,
}

pub const PARETO_CV_LIMIT: f64 = 0.577_350_269_189_625_8;

pub fn boundary_curves(cv: f64, mode: FormulaMode) -> BoundaryCurves {
    let pareto = (cv > 0.0 && cv < PARETO_CV_LIMIT).then(|| {
        let p = 1.0 + sqrt(1.0 + 1.0 / (cv * cv));
        let root = sqrt(1.0 - 2.0 / p);
        match mode {
            FormulaMode::Corrected => 2.0 * (1.0 + p) / (p - 3.0) * root,
            FormulaMode::PaperVerbatim => (1.0 + p) / (p - 3.0) * 2.0 / root,
        }
    });
    BoundaryCurves {
        pareto,
        inv_gamma: (cv < 1.0).then(|| 4.0 * cv / (1.0 - cv * cv)),
        lognormal: cv * cv * cv + 3.0 * cv,
        gamma: 2.0 * cv,
        bernoulli: cv - 1.0 / cv,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZoneKind {
    Paretian,
    Gray,
    Lognormal,
    ExponentialThin,
    SubBernoulli,
    Symmetric,
    AbovePareto,
}

impl ZoneKind {
    pub fn name(self) -> &'static str {
        match self {
            ZoneKind::Paretian => "Paretian",
            ZoneKind::Gray => "Gray",
            ZoneKind::Lognormal => "Lognormal",
            ZoneKind::ExponentialThin => "ExponentialThin",
            ZoneKind::SubBernoulli => "SubBernoulli",
            ZoneKind::Symmetric => "Symmetric",
            ZoneKind::AbovePareto => "AbovePareto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zone {
    pub kind: ZoneKind,
    pub rule_of_thumb_override: bool,
    pub thin_tail_precheck: bool,
}

pub const SYMMETRIC_BAND: f64 = 0.15;
pub const RULE_OF_THUMB_SKEWNESS: f64 = 14.0;
pub const RULE_OF_THUMB_MAX_CV: f64 = 2.0;

/// Places a (CV, skewness) point in the moment-ratio plane.
///
/// Points on a boundary go to the zone above it, except on the lognormal
/// curve itself, which stays Lognormal.
pub fn classify_moment_point(pt: &MomentPoint, mode: FormulaMode) -> Result<Zone> {
    let (cv, skew) = (pt.cv, pt.skewness);
    if !cv.is_finite() || !skew.is_finite() {
        return Err(Error::NonFinite("moment point"));
    }
    let thin_tail_precheck = cv <= 0.0 || skew < SYMMETRIC_BAND;
    let zone = |kind| Zone {
        kind,
        rule_of_thumb_override: false,
        thin_tail_precheck,
    };
    if abs(skew) < SYMMETRIC_BAND {
        return Ok(zone(ZoneKind::Symmetric));
    }
    if cv <= 0.0 {
        return Ok(zone(ZoneKind::SubBernoulli));
    }
    let b = boundary_curves(cv, mode);
    if b.pareto.is_some_and(|p| skew >= p) {
        return Ok(zone(ZoneKind::AbovePareto));
    }
    if b.inv_gamma.is_some_and(|g| skew >= g) {
        return Ok(zone(ZoneKind::Paretian));
    }
    if skew > b.lognormal + 1e-12 * abs(b.lognormal) {
        if cv < RULE_OF_THUMB_MAX_CV && skew > RULE_OF_THUMB_SKEWNESS {
            return Ok(Zone {
                kind: ZoneKind::Paretian,
                rule_of_thumb_override: true,
                thin_tail_precheck,
            });
        }
        return Ok(zone(ZoneKind::Gray));
    }
    if skew >= b.gamma {
        return Ok(zone(ZoneKind::Lognormal));
    }
    if skew >= b.bernoulli {
        return Ok(zone(ZoneKind::ExponentialThin));
    }
    Ok(zone(ZoneKind::SubBernoulli))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZengaShape {
    Increasing,
    Constant,
    ConvexMin,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ZengaShapeConfig {
    pub trim_low: f64,
    pub trim_high: f64,
    /// Constant when the binned curve spans less than this.
    pub max_range: f64,
    /// Equal-width u-bins averaged before the range is taken.
    pub range_bins: usize,
    pub min_slope: f64,
    pub min_rank_correlation: f64,
    /// Both sides of an interior minimum must rise by more than this.
    pub min_rise: f64,
}

impl Default for ZengaShapeConfig {
    fn default() -> Self {
        ZengaShapeConfig {
            trim_low: 0.05,
            trim_high: 0.95,
            max_range: 0.08,
            range_bins: 9,
            min_slope: 0.1,
            min_rank_correlation: 0.8,
            min_rise: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZengaShapeReport {
    pub shape: ZengaShape,
    pub binned_range: f64,
    pub slope: f64,
    pub rank_correlation: f64,
    /// Location of the minimum of the trimmed curve.
    pub argmin: f64,
    /// Mean of `Z` over the trimmed curve.
    pub level: f64,
}

pub fn zenga_shape(series: &ZengaSeries, config: &ZengaShapeConfig) -> Result<ZengaShapeReport> {
    let (lo, hi) = (config.trim_low, config.trim_high);
    if !(lo < hi) {
        return Err(Error::InvalidParameter {
            name: "trim_high",
            value: hi,
        });
    }
    let trimmed: Vec<ZengaPoint> = series
        .points
        .iter()
        .copied()
        .filter(|p| p.u >= lo && p.u <= hi)
        .collect();
    if trimmed.len() < 10 {
        return Err(Error::InsufficientData {
            needed: 10,
            got: trimmed.len(),
        });
    }
    let us: Vec<f64> = trimmed.iter().map(|p| p.u).collect();
    let zs: Vec<f64> = trimmed.iter().map(|p| p.z).collect();

    let bins = config.range_bins.max(1);
    let width = (hi - lo) / bins as f64;
    let mut sums = alloc::vec![(0.0f64, 0usize); bins];
    for p in &trimmed {
        let b = (((p.u - lo) / width) as usize).min(bins - 1);
        sums[b].0 += p.z;
        sums[b].1 += 1;
    }
    let means = sums.iter().filter(|s| s.1 > 0).map(|s| s.0 / s.1 as f64);
    let (mut bmin, mut bmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for m in means {
        bmin = bmin.min(m);
        bmax = bmax.max(m);
    }
    let binned_range = bmax - bmin;

    let slope = ols_line(&us, &zs).map_or(0.0, |f| f.slope);
    let rank_correlation = spearman(&us, &zs);
    let (imin, &zmin) = zs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    let level = zs.iter().sum::<f64>() / zs.len() as f64;

    let interior = imin > 0 && imin + 1 < zs.len();
    let convex_min = interior && {
        let left = zs[..imin].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let right = zs[imin + 1..]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        left - zmin > config.min_rise && right - zmin > config.min_rise
    };

    let shape = if binned_range < config.max_range {
        ZengaShape::Constant
    } else if slope > config.min_slope && rank_correlation > config.min_rank_correlation {
        ZengaShape::Increasing
    } else if convex_min {
        ZengaShape::ConvexMin
    } else {
        ZengaShape::Other
    };
    Ok(ZengaShapeReport {
        shape,
        binned_range,
        slope,
        rank_correlation,
        argmin: us[imin],
        level,
    })
}

/// Theoretical Zenga curve sampled on [`unit_grid`].
pub fn zenga_theoretical(
    model: &DistributionModel,
    curve: ZengaCurve,
    points: usize,
) -> Result<ZengaSeries> {
    let points = unit_grid(points)
        .into_iter()
        .map(|u| {
            Ok(ZengaPoint {
                u,
                z: model.zenga(u, curve)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZengaSeries {
        curve,
        points,
        endpoint_rescaled: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AggregationConfig {
    pub tail: TailFitConfig,
    pub max_delta: f64,
}

impl Default for AggregationConfig {
    fn default() -> Self {
        AggregationConfig {
            tail: TailFitConfig::default(),
            max_delta: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregationStability {
    pub slope_original: f64,
    /// Absent when the original tail is not linear enough to compare.
    pub slope_aggregated: Option<f64>,
    pub delta: Option<f64>,
    pub applicable: bool,
    pub pass: bool,
}

/// Compares the Zipf tail slope before and after pairwise aggregation.
pub fn aggregation_stability(
    s: &Sample,
    seed: u64,
    config: &AggregationConfig,
) -> Result<AggregationStability> {
    s.require(200)?;
    let original = tail_linearity(&survival_points(s)?, &config.tail)?;
    if !original.pass {
        return Ok(AggregationStability {
            slope_original: original.slope,
            slope_aggregated: None,
            delta: None,
            applicable: false,
            pass: false,
        });
    }
    let aggregated = pairwise_aggregate(s, seed)?;
    let agg = tail_linearity(&survival_points(&aggregated)?, &config.tail)?;
    let delta = abs(original.slope - agg.slope);
    Ok(AggregationStability {
        slope_original: original.slope,
        slope_aggregated: Some(agg.slope),
        delta: Some(delta),
        applicable: true,
        pass: delta <= config.max_delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerdictConfig {
    pub tail: TailFitConfig,
    /// Log-bin the Zipf plot before the tail fit.
    pub zipf_bin_base: Option<f64>,
    pub me_cut: usize,
    pub me: MeTrendConfig,
    pub formula_mode: FormulaMode,
    pub zenga_curve: ZengaCurve,
    pub zenga: ZengaShapeConfig,
    pub min_observations: usize,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig {
            tail: TailFitConfig::default(),
            zipf_bin_base: None,
            me_cut: DEFAULT_ME_CUT,
            me: MeTrendConfig::default(),
            formula_mode: FormulaMode::Corrected,
            zenga_curve: ZengaCurve::QuantileRatio,
            zenga: ZengaShapeConfig::default(),
            min_observations: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictLabel {
    ParetianConsistent,
    LognormalLike,
    ThinTailed,
    Inconclusive,
}

impl VerdictLabel {
    pub fn name(self) -> &'static str {
        match self {
            VerdictLabel::ParetianConsistent => "ParetianConsistent",
            VerdictLabel::LognormalLike => "LognormalLike",
            VerdictLabel::ThinTailed => "ThinTailed",
            VerdictLabel::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: usize,
    pub zipf_tail_linear: TailFit,
    pub me_trend: MeTrend,
    pub moment_point: MomentPoint,
    pub zone: Zone,
    pub zenga_shape: ZengaShapeReport,
    pub label: VerdictLabel,
}

/// The label implied by the individual pieces of evidence.
pub fn verdict_label(
    zipf_pass: bool,
    me_pass: bool,
    zone: ZoneKind,
    zenga: ZengaShape,
) -> VerdictLabel {
    if zipf_pass && me_pass {
        if zone == ZoneKind::Paretian && zenga == ZengaShape::Increasing {
            VerdictLabel::ParetianConsistent
        } else {
            VerdictLabel::Inconclusive
        }
    } else if matches!(zone, ZoneKind::Lognormal | ZoneKind::Gray) && zenga == ZengaShape::Constant
    {
        VerdictLabel::LognormalLike
    } else if matches!(zone, ZoneKind::ExponentialThin | ZoneKind::SubBernoulli) {
        VerdictLabel::ThinTailed
    } else {
        VerdictLabel::Inconclusive
    }
}

/// Runs every diagnostic on `s` and combines them.
pub fn verdict(s: &Sample, config: &VerdictConfig) -> Result<Verdict> {
    if s.len() < config.min_observations {
        return Err(Error::VerdictRefused {
            needed: config.min_observations,
            got: s.len(),
        });
    }
    let zipf = tail_linearity(&zipf_series(s, config.zipf_bin_base)?, &config.tail)?;
    let me = me_trend(&meplot_series(s, config.me_cut)?, &config.me)?;
    let moment_point = moment_stats(s.values())?;
    let zone = classify_moment_point(&moment_point, config.formula_mode)?;
    let zenga = zenga_shape(
        &empirical_zenga_curve(s, config.zenga_curve, false)?,
        &config.zenga,
    )?;
    let label = verdict_label(zipf.pass, me.pass, zone.kind, zenga.shape);
    Ok(Verdict {
        n: s.len(),
        zipf_tail_linear: zipf,
        me_trend: me,
        moment_point,
        zone,
        zenga_shape: zenga,
        label,
    })
}

/// Boundary curve paths over `cv` in `(0, cv_max]` for drawing.
pub fn boundary_paths(cv_max: f64, points: usize, mode: FormulaMode) -> BoundaryPaths {
    let mut out = BoundaryPaths::default();
    for i in 1..=points {
        let cv = cv_max * i as f64 / points as f64;
        let b = boundary_curves(cv, mode);
        if let Some(p) = b.pareto {
            out.pareto.push(Point::new(cv, p));
        }
        if let Some(g) = b.inv_gamma {
            out.inv_gamma.push(Point::new(cv, g));
        }
        out.lognormal.push(Point::new(cv, b.lognormal));
        out.gamma.push(Point::new(cv, b.gamma));
        out.bernoulli.push(Point::new(cv, b.bernoulli));
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundaryPaths {
    pub pareto: Vec<Point>,
    pub inv_gamma: Vec<Point>,
    pub lognormal: Vec<Point>,
    pub gamma: Vec<Point>,
    pub bernoulli: Vec<Point>,
}

impl BoundaryPaths {
    pub fn named(&self) -> [(&'static str, &[Point]); 5] {
        [
            ("Pareto", &self.pareto),
            ("Inverted gamma", &self.inv_gamma),
            ("Lognormal", &self.lognormal),
            ("Gamma", &self.gamma),
            ("Bernoulli", &self.bernoulli),
        ]
    }
}

/// A single moment point as a one-point series for the moment-ratio plot.
pub fn moment_series(points: &[MomentPoint], label: &str) -> PlotSeries {
    PlotSeries::new(
        label,
        Scale::Linear,
        Scale::Linear,
        points
            .iter()
            .map(|p| Point::new(p.cv, p.skewness))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        abs(a - b) <= tol
    }

    fn pt(cv: f64, skewness: f64) -> MomentPoint {
        MomentPoint::new(cv, skewness)
    }

    #[test]
    fn boundary_values_at_half() {
        let b = boundary_curves(0.5, FormulaMode::Corrected);
        assert!(close(b.inv_gamma.unwrap(), 8.0 / 3.0, 1e-12));
        assert!(close(b.lognormal, 1.625, 1e-12));
        assert!(close(b.gamma, 1.0, 1e-12));
        assert!(close(b.bernoulli, -1.5, 1e-12));
        assert!(b.pareto.is_some());
        let undefined = boundary_curves(0.6, FormulaMode::Corrected);
        assert!(undefined.pareto.is_none());
        assert!(boundary_curves(1.0, FormulaMode::Corrected)
            .inv_gamma
            .is_none());
    }

    #[test]
    fn pareto_boundary_modes() {
        let c = boundary_curves(0.35, FormulaMode::Corrected)
            .pareto
            .unwrap();
        let v = boundary_curves(0.35, FormulaMode::PaperVerbatim)
            .pareto
            .unwrap();
        assert!(close(c, 6.945, 5e-3), "{c}");
        assert!(close(v, 13.80, 5e-2), "{v}");
        // skewness approaches 2 like 2 + 6 cv
        for cv in [1e-3, 1e-4, 1e-5] {
            let limit = boundary_curves(cv, FormulaMode::Corrected).pareto.unwrap();
            assert!(close((limit - 2.0) / cv, 6.0, 0.05), "{limit}");
        }
    }

    #[test]
    fn classify_examples() {
        for mode in [FormulaMode::Corrected, FormulaMode::PaperVerbatim] {
            assert_eq!(
                classify_moment_point(&pt(0.35, 3.0), mode).unwrap().kind,
                ZoneKind::Paretian
            );
        }
        let z = classify_moment_point(&pt(1.5, 5.0), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::Lognormal);
        let z = classify_moment_point(&pt(1.2, 16.0), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::Paretian);
        assert!(z.rule_of_thumb_override);
        let z = classify_moment_point(&pt(2.5, 30.0), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::Gray);
        assert!(!z.rule_of_thumb_override);
    }

    #[test]
    fn classify_edges() {
        let z = classify_moment_point(&pt(0.5, 0.1), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::Symmetric);
        assert!(z.thin_tail_precheck);
        let z = classify_moment_point(&pt(0.5, 0.9), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::ExponentialThin);
        let z = classify_moment_point(&pt(3.0, 1.0), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::SubBernoulli);
        let z = classify_moment_point(&pt(0.3, 7.0), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::AbovePareto);
        // above inverted gamma where the Pareto curve no longer exists
        let z = classify_moment_point(&pt(0.8, 9.0), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::Paretian);
        // ties go up
        let g = boundary_curves(0.5, FormulaMode::Corrected).gamma;
        let z = classify_moment_point(&pt(0.5, g), FormulaMode::Corrected).unwrap();
        assert_eq!(z.kind, ZoneKind::Lognormal);
        assert!(matches!(
            classify_moment_point(&pt(f64::NAN, 1.0), FormulaMode::Corrected),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn theoretical_lognormal_points_stay_lognormal() {
        let mut omega = 1.1;
        while omega < 10.0 {
            let cv = sqrt(omega - 1.0);
            let skew = (omega + 2.0) * cv;
            let z = classify_moment_point(&pt(cv, skew), FormulaMode::Corrected).unwrap();
            assert_eq!(z.kind, ZoneKind::Lognormal, "omega {omega}");
            omega += 0.01;
        }
    }

    #[test]
    fn tail_linearity_exact_power_law() {
        let points = (1..=20)
            .map(|i| {
                let x = i as f64;
                Point::new(x, 1.0 / (x * x))
            })
            .collect();
        let series = PlotSeries::new("power", Scale::Log, Scale::Log, points);
        let cfg = TailFitConfig {
            tail_fraction: 1.0,
            ..Default::default()
        };
        let fit = tail_linearity(&series, &cfg).unwrap();
        assert!(close(fit.slope, -2.0, 1e-12));
        assert!(close(fit.r2, 1.0, 1e-12));
        assert!(fit.pass);
    }

    #[test]
    fn tail_linearity_rejects_exponential_and_flat() {
        let grid: Vec<f64> = (0..200).map(|i| 0.05 * 1.03f64.powi(i)).collect();
        let exp_points = grid.iter().map(|&x| Point::new(x, (-x).exp())).collect();
        let cfg = TailFitConfig {
            tail_fraction: 1.0,
            ..Default::default()
        };
        let series = PlotSeries::new("exp", Scale::Log, Scale::Log, exp_points);
        assert!(!tail_linearity(&series, &cfg).unwrap().pass);

        let flat = (1..=20).map(|i| Point::new(i as f64, 0.5)).collect();
        let fit =
            tail_linearity(&PlotSeries::new("flat", Scale::Log, Scale::Log, flat), &cfg).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert!(!fit.pass);

        let short = (1..=9)
            .map(|i| Point::new(i as f64, 1.0 / i as f64))
            .collect();
        assert!(matches!(
            tail_linearity(&PlotSeries::new("s", Scale::Log, Scale::Log, short), &cfg),
            Err(Error::InsufficientTail { needed: 10, got: 9 })
        ));
    }

    #[test]
    fn zenga_shapes_of_closed_forms() {
        let cfg = ZengaShapeConfig::default();
        let shape = |m: DistributionModel, c: ZengaCurve| {
            zenga_shape(&zenga_theoretical(&m, c, 999).unwrap(), &cfg).unwrap()
        };
        let ln = DistributionModel::Lognormal {
            mu: 0.0,
            sigma: 1.0,
        };
        assert_eq!(
            shape(ln, ZengaCurve::QuantileRatio).shape,
            ZengaShape::Constant
        );
        let p = DistributionModel::ParetoI {
            x0: 1.0,
            alpha: 2.0,
        };
        assert_eq!(
            shape(p, ZengaCurve::QuantileRatio).shape,
            ZengaShape::Increasing
        );
        assert_eq!(
            shape(p, ZengaCurve::MeanRatio).shape,
            ZengaShape::Increasing
        );
        let e = shape(
            DistributionModel::Exponential { lambda: 1.0 },
            ZengaCurve::MeanRatio,
        );
        assert_eq!(e.shape, ZengaShape::ConvexMin);
        assert!(close(e.argmin, 0.8336, 0.02), "{}", e.argmin);
    }

    #[test]
    fn labels() {
        use VerdictLabel::*;
        use ZengaShape::*;
        use ZoneKind::*;
        assert_eq!(
            verdict_label(true, true, Paretian, Increasing),
            ParetianConsistent
        );
        assert_eq!(verdict_label(true, true, Lognormal, Constant), Inconclusive);
        assert_eq!(verdict_label(false, true, Gray, Constant), LognormalLike);
        assert_eq!(
            verdict_label(true, false, ExponentialThin, Other),
            ThinTailed
        );
        assert_eq!(
            verdict_label(false, false, Paretian, Increasing),
            Inconclusive
        );
    }

    #[test]
    fn verdict_needs_a_hundred_observations() {
        let s = Sample::new((1..=99).map(|i| i as f64).collect()).unwrap();
        assert_eq!(
            verdict(&s, &VerdictConfig::default()),
            Err(Error::VerdictRefused {
                needed: 100,
                got: 99
            })
        );
    }
}
