//! Sample-side computations behind the plots.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::distributions::ZengaCurve;
use crate::error::{Error, Result};
use crate::math::{ln, sqrt};
use crate::rng::{trial_seed, CounterRng};
use crate::sample::Sample;
use crate::series::{PlotSeries, Point, Scale};
use crate::stats::spearman;

/// Empirical survival `1 - (i - 0.5) / n` at each order statistic, for
/// log-log axes.
pub fn survival_points(s: &Sample) -> Result<PlotSeries> {
    s.require(2)?;
    let n = s.len() as f64;
    let points = s
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| Point::new(x, 1.0 - (i as f64 + 0.5) / n))
        .collect();
    Ok(PlotSeries::new(
        "empirical survival",
        Scale::Log,
        Scale::Log,
        points,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    pub lower: f64,
    pub upper: f64,
    /// Geometric mean of the two edges.
    pub x_bar: f64,
    /// Arithmetic mean of the survival ordinates that fell in the bin.
    pub y_bar: f64,
    pub count: usize,
}

/// Logarithmically binned survival points. Empty bins are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedSeries {
    pub base: f64,
    pub bins: Vec<Bin>,
}

impl BinnedSeries {
    pub fn total_count(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum()
    }

    pub fn to_series(&self) -> PlotSeries {
        let points = self
            .bins
            .iter()
            .map(|b| Point::new(b.x_bar, b.y_bar))
            .collect();
        PlotSeries::new("log-binned survival", Scale::Log, Scale::Log, points)
    }
}

/// Groups the survival points into bins with edges `min * base^k`.
///
/// The first bin is closed on both ends so the minimum is counted; every
/// later bin is `(lower, upper]`.
pub fn log_bin(s: &Sample, base: f64) -> Result<BinnedSeries> {
    if !(base > 1.0) || !base.is_finite() {
        return Err(Error::InvalidParameter {
            name: "base",
            value: base,
        });
    }
    let survival = survival_points(s)?;
    let (min, max) = (s.min(), s.max());

    let mut edges = Vec::new();
    edges.push(min);
    let mut edge = min;
    loop {
        edge *= base;
        edges.push(edge);
        if edge >= max {
            break;
        }
    }

    let mut bins = Vec::new();
    let mut points = survival.points.iter().peekable();
    for pair in edges.windows(2) {
        let (lower, upper) = (pair[0], pair[1]);
        let mut count = 0usize;
        let mut y_sum = 0.0;
        while let Some(p) = points.peek() {
            if p.x <= upper {
                count += 1;
                y_sum += p.y;
                points.next();
            } else {
                break;
            }
        }
        if count > 0 {
            bins.push(Bin {
                lower,
                upper,
                x_bar: sqrt(lower * upper),
                y_bar: y_sum / count as f64,
                count,
            });
        }
    }
    debug_assert!(points.next().is_none());
    Ok(BinnedSeries { base, bins })
}

/// Empirical mean excess at every order statistic.
///
/// `e_n(u)` averages `X_j - u` over the strict exceedances `X_j > u`;
/// thresholds without exceedances are dropped, then the `cut` largest
/// remaining thresholds are dropped as well.
pub fn mean_excess_points(s: &Sample, cut: usize) -> Result<PlotSeries> {
    let n = s.len();
    if n <= cut + 1 {
        return Err(Error::InsufficientData {
            needed: cut + 2,
            got: n,
        });
    }
    let x = s.values();
    // suffix[k] = x[k] + ... + x[n-1]
    let mut suffix = alloc::vec![0.0; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + x[k];
    }
    let mut points = Vec::with_capacity(n);
    let mut next_greater = 0usize;
    for &u in x {
        while next_greater < n && x[next_greater] <= u {
            next_greater += 1;
        }
        let count = n - next_greater;
        if count == 0 {
            continue;
        }
        points.push(Point::new(u, suffix[next_greater] / count as f64 - u));
    }
    if points.len() <= cut {
        return Err(Error::InsufficientData {
            needed: cut + 1,
            got: points.len(),
        });
    }
    points.truncate(points.len() - cut);
    Ok(PlotSeries::new(
        "mean excess",
        Scale::Linear,
        Scale::Linear,
        points,
    ))
}

/// An empirical (CV, skewness) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentPoint {
    pub cv: f64,
    pub skewness: f64,
    /// Set when the sample mean is not positive; the CV is then not usable
    /// for classification.
    #[serde(default)]
    pub nonpositive_mean: bool,
}

impl MomentPoint {
    pub fn new(cv: f64, skewness: f64) -> Self {
        MomentPoint {
            cv,
            skewness,
            nonpositive_mean: false,
        }
    }
}

/// CV with the `n - 1` standard deviation, and skewness
/// `(1/n) * sum(((x - mean) / sd)^3)` using that same `sd`.
pub fn moment_stats(values: &[f64]) -> Result<MomentPoint> {
    let n = values.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, got: n });
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("moment input"));
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    let sd = sqrt(ss / (nf - 1.0));
    if !(sd > 0.0) {
        return Err(Error::Degenerate("zero variance"));
    }
    let skewness = values
        .iter()
        .map(|x| {
            let z = (x - mean) / sd;
            z * z * z
        })
        .sum::<f64>()
        / nf;
    Ok(MomentPoint {
        cv: sd / mean,
        skewness,
        nonpositive_mean: mean <= 0.0,
    })
}

/// Distinct values with their multiplicities, in ascending order.
fn distinct_with_counts(values: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &x in values {
        match out.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Empirical Lorenz curve over distinct values: `(N_j / N, T_j / T)`.
pub fn empirical_lorenz(s: &Sample) -> Result<PlotSeries> {
    s.require(2)?;
    let total: f64 = s.values().iter().sum();
    let n = s.len() as f64;
    let mut cum_n = 0usize;
    let mut cum_t = 0.0;
    let points = distinct_with_counts(s.values())
        .into_iter()
        .map(|(x, c)| {
            cum_n += c;
            cum_t += x * c as f64;
            Point::new(cum_n as f64 / n, cum_t / total)
        })
        .collect::<Vec<_>>();
    let mut series = PlotSeries::new("empirical Lorenz", Scale::Linear, Scale::Linear, points);
    if let Some(last) = series.points.last_mut() {
        last.y = 1.0;
    }
    Ok(series)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZengaPoint {
    pub u: f64,
    pub z: f64,
}

/// An empirical Zenga curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZengaSeries {
    pub curve: ZengaCurve,
    pub points: Vec<ZengaPoint>,
    pub endpoint_rescaled: bool,
}

impl ZengaSeries {
    pub fn to_series(&self) -> PlotSeries {
        let points = self.points.iter().map(|p| Point::new(p.u, p.z)).collect();
        PlotSeries::new("empirical Zenga", Scale::Linear, Scale::Linear, points)
    }

    /// Copies the second point's value onto the first and the second-to-last
    /// onto the last.
    pub fn rescale_endpoints(&mut self) {
        let m = self.points.len();
        if m >= 3 {
            self.points[0].z = self.points[1].z;
            self.points[m - 1].z = self.points[m - 2].z;
            self.endpoint_rescaled = true;
        }
    }
}

/// Lower/upper mean Zenga curve over distinct values:
/// `Z(u_j) = 1 - (T_j / N_j) / Q+_j` with `Q+_j = (T - T_j) / (N - N_j)`
/// for `j < s` and `Q+_s = x_s`.
pub fn empirical_zenga(s: &Sample, rescale_endpoints: bool) -> Result<ZengaSeries> {
    s.require(3)?;
    let n = s.len();
    let total: f64 = s.values().iter().sum();
    let groups = distinct_with_counts(s.values());
    let last = groups.len() - 1;
    let mut cum_n = 0usize;
    let mut cum_t = 0.0;
    let mut points = Vec::with_capacity(groups.len());
    for (j, &(x, c)) in groups.iter().enumerate() {
        cum_n += c;
        cum_t += x * c as f64;
        let lower_mean = cum_t / cum_n as f64;
        let upper_mean = if j == last {
            x
        } else {
            (total - cum_t) / (n - cum_n) as f64
        };
        let z = (1.0 - lower_mean / upper_mean).clamp(0.0, 1.0);
        points.push(ZengaPoint {
            u: cum_n as f64 / n as f64,
            z,
        });
    }
    let mut series = ZengaSeries {
        curve: ZengaCurve::MeanRatio,
        points,
        endpoint_rescaled: false,
    };
    if rescale_endpoints {
        series.rescale_endpoints();
    }
    Ok(series)
}

/// Quantile-ratio Zenga curve at `u_j = j / n`, `j = 1..n-1`:
/// `Z = 1 - x_(j) / x_(k)` where `x_(k)` is the first order statistic whose
/// cumulative share of the total reaches `u_j`.
pub fn empirical_zenga_quantile_ratio(s: &Sample) -> Result<ZengaSeries> {
    s.require(3)?;
    let x = s.values();
    let n = x.len();
    let total: f64 = x.iter().sum();
    let mut shares = Vec::with_capacity(n);
    let mut cum = 0.0;
    for &v in x {
        cum += v;
        shares.push(cum / total);
    }
    shares[n - 1] = 1.0;

    let mut points = Vec::with_capacity(n - 1);
    let mut k = 0usize;
    for j in 1..n {
        let u = j as f64 / n as f64;
        while shares[k] < u {
            k += 1;
        }
        let z = (1.0 - x[j - 1] / x[k]).clamp(0.0, 1.0);
        points.push(ZengaPoint { u, z });
    }
    Ok(ZengaSeries {
        curve: ZengaCurve::QuantileRatio,
        points,
        endpoint_rescaled: false,
    })
}

/// Empirical Zenga curve of either kind; rescaling applies to both.
pub fn empirical_zenga_curve(
    s: &Sample,
    curve: ZengaCurve,
    rescale_endpoints: bool,
) -> Result<ZengaSeries> {
    match curve {
        ZengaCurve::MeanRatio => empirical_zenga(s, rescale_endpoints),
        ZengaCurve::QuantileRatio => {
            let mut series = empirical_zenga_quantile_ratio(s)?;
            if rescale_endpoints {
                series.rescale_endpoints();
            }
            Ok(series)
        }
    }
}

/// Observations strictly above `threshold`.
pub fn tail_truncate(s: &Sample, threshold: f64) -> Result<Sample> {
    let x = s.values();
    let start = x.partition_point(|&v| v <= threshold);
    let kept = x.len() - start;
    if kept < 2 {
        return Err(Error::InsufficientTail {
            needed: 2,
            got: kept,
        });
    }
    Ok(Sample::from_sorted(x[start..].to_vec()))
}

/// Sums of consecutive disjoint pairs; an odd trailing value is dropped.
pub fn pair_sums(values: &[f64]) -> Vec<f64> {
    values.chunks_exact(2).map(|p| p[0] + p[1]).collect()
}

/// Shuffles with `seed`, then sums disjoint pairs. Output size is `n / 2`.
pub fn pairwise_aggregate(s: &Sample, seed: u64) -> Result<Sample> {
    s.require(4)?;
    let mut values = s.values().to_vec();
    CounterRng::new(seed).shuffle(&mut values);
    let mut sums = pair_sums(&values);
    sums.sort_unstable_by(f64::total_cmp);
    Ok(Sample::from_sorted(sums))
}

/// Geometric-spacing scatter `(X_i, X_{i+1} / X_i)` and the Spearman
/// correlation between the two coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingRatios {
    pub series: PlotSeries,
    pub rank_correlation: f64,
    /// Spearman correlation between `X_i` and `(n - i) ln(X_{i+1} / X_i)`.
    /// Under a Pareto law those normalized spacings are iid exponential, so
    /// this stays near zero, while the raw ratios grow toward the top.
    pub normalized_rank_correlation: f64,
}

pub fn spacing_ratios(s: &Sample) -> Result<SpacingRatios> {
    s.require(3)?;
    let points: Vec<Point> = s
        .values()
        .windows(2)
        .map(|w| Point::new(w[0], w[1] / w[0]))
        .collect();
    let n = s.len();
    let normalized: Vec<f64> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (n - 1 - i) as f64 * ln(p.y))
        .collect();
    let series = PlotSeries::new("spacing ratios", Scale::Log, Scale::Linear, points);
    let xs = series.xs();
    let rank_correlation = spearman(&xs, &series.ys());
    let normalized_rank_correlation = spearman(&xs, &normalized);
    Ok(SpacingRatios {
        series,
        rank_correlation,
        normalized_rank_correlation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCloud {
    pub points: Vec<MomentPoint>,
    /// Resamples dropped because they had zero variance.
    pub skipped: usize,
}

/// `resamples` bootstrap replicates of the moment point. Replicate `b`
/// draws its indices from the generator seeded with `seed + b`.
pub fn bootstrap_moments(s: &Sample, resamples: usize, seed: u64) -> Result<BootstrapCloud> {
    if resamples == 0 {
        return Err(Error::InvalidParameter {
            name: "resamples",
            value: 0.0,
        });
    }
    s.require(3)?;
    let x = s.values();
    let n = x.len();
    let mut buf = alloc::vec![0.0; n];
    let mut points = Vec::with_capacity(resamples);
    let mut skipped = 0;
    for b in 0..resamples {
        let mut rng = CounterRng::new(trial_seed(seed, b as u64));
        for slot in buf.iter_mut() {
            *slot = x[rng.next_index(n)];
        }
        match moment_stats(&buf) {
            Ok(p) => points.push(p),
            Err(Error::Degenerate(_)) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(BootstrapCloud { points, skipped })
}
