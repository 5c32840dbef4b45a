use paretocheck_core::diagnostics::{
    classify_moment_point, me_trend, tail_linearity, FormulaMode, MeTrendConfig, TailFitConfig,
    ZoneKind,
};
use paretocheck_core::empirical::*;
use paretocheck_core::stats::ols_line;
use paretocheck_core::{DistributionModel, Sample};
use proptest::prelude::*;

/// Positive values with plenty of ties.
fn tied_values(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((1u32..40).prop_map(|k| k as f64 * 0.25), 3..max_len)
}

fn continuous_values(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-3f64..1e3, 3..max_len)
}

/// Direct double loop over every order statistic.
fn brute_force_mean_excess(x: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &u in x {
        let mut sum = 0.0;
        let mut count = 0;
        for &v in x {
            if v > u {
                sum += v - u;
                count += 1;
            }
        }
        if count > 0 {
            out.push((u, sum / count as f64));
        }
    }
    out
}

proptest! {
    #[test]
    fn survival_ordinates_are_plotting_positions(raw in tied_values(300)) {
        let s = Sample::new(raw).unwrap();
        let sp = survival_points(&s).unwrap();
        let n = s.len() as f64;
        for (i, p) in sp.points.iter().enumerate() {
            prop_assert_eq!(p.y, 1.0 - (i as f64 + 0.5) / n);
        }
        prop_assert!(sp.points.windows(2).all(|w| w[0].y > w[1].y));
    }

    #[test]
    fn log_bin_conserves_count(raw in continuous_values(500), base in 1.1f64..10.0) {
        let s = Sample::new(raw).unwrap();
        let b = log_bin(&s, base).unwrap();
        prop_assert_eq!(b.total_count(), s.len());
        for (k, bin) in b.bins.iter().enumerate() {
            let ratio = bin.upper / s.min();
            let power = ratio.ln() / base.ln();
            prop_assert!((power - power.round()).abs() < 1e-9, "bin {}", k);
        }
    }

    #[test]
    fn mean_excess_matches_double_loop(raw in tied_values(200)) {
        let s = Sample::new(raw).unwrap();
        prop_assume!(s.min() < s.max());
        let fast = mean_excess_points(&s, 0).unwrap();
        let slow = brute_force_mean_excess(s.values());
        prop_assert_eq!(fast.len(), slow.len());
        for (p, (u, e)) in fast.points.iter().zip(slow) {
            prop_assert_eq!(p.x, u);
            prop_assert!((p.y - e).abs() <= 1e-12 * e.abs().max(1.0));
        }
    }

    #[test]
    fn lorenz_lies_below_the_diagonal(raw in tied_values(300)) {
        let s = Sample::new(raw).unwrap();
        let l = empirical_lorenz(&s).unwrap();
        let all_equal = s.min() == s.max();
        for p in &l.points {
            prop_assert!(p.y <= p.x + 1e-15);
        }
        let strict = l.points[..l.len() - 1].iter().all(|p| p.y < p.x);
        prop_assert_eq!(strict, !all_equal);
        prop_assert!(l.points.windows(2).all(|w| w[0].y <= w[1].y));
        prop_assert_eq!(l.points.last().unwrap().y, 1.0);
    }

    #[test]
    fn zenga_is_the_lorenz_transform(raw in tied_values(400)) {
        let s = Sample::new(raw).unwrap();
        let z = empirical_zenga(&s, false).unwrap();
        let l = empirical_lorenz(&s).unwrap();
        prop_assert_eq!(z.points.len(), l.points.len());
        for (zp, lp) in z.points.iter().zip(&l.points).take(l.len() - 1) {
            let expected = (lp.x - lp.y) / (lp.x * (1.0 - lp.y));
            prop_assert!((zp.z - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn zenga_values_are_in_unit_interval(raw in continuous_values(300)) {
        let s = Sample::new(raw).unwrap();
        for series in [empirical_zenga(&s, true).unwrap(), empirical_zenga_quantile_ratio(&s).unwrap()] {
            prop_assert!(series.points.iter().all(|p| (0.0..=1.0).contains(&p.z)));
            prop_assert!(series.points.windows(2).all(|w| w[0].u < w[1].u));
            prop_assert!(series.points.iter().all(|p| p.u > 0.0 && p.u <= 1.0));
        }
    }

    #[test]
    fn truncation_composes(raw in tied_values(300), a in 0.0f64..10.0, b in 0.0f64..10.0) {
        let (t1, t2) = if a <= b { (a, b) } else { (b, a) };
        let s = Sample::new(raw).unwrap();
        let twice = tail_truncate(&s, t1).and_then(|x| tail_truncate(&x, t2));
        let once = tail_truncate(&s, t2);
        prop_assert_eq!(twice.ok(), once.ok());
    }

    #[test]
    fn bootstrap_is_reproducible(raw in continuous_values(100), seed in any::<u64>()) {
        let s = Sample::new(raw).unwrap();
        let a = bootstrap_moments(&s, 20, seed).unwrap();
        let b = bootstrap_moments(&s, 20, seed).unwrap();
        prop_assert_eq!(a.points.len() + a.skipped, 20);
        for (p, q) in a.points.iter().zip(&b.points) {
            prop_assert_eq!(p.cv.to_bits(), q.cv.to_bits());
            prop_assert_eq!(p.skewness.to_bits(), q.skewness.to_bits());
        }
    }
}

#[test]
fn pareto_survival_slope() {
    let s = DistributionModel::ParetoI {
        x0: 1.0,
        alpha: 2.0,
    }
    .sample(100_000, 11)
    .unwrap();
    let sp = survival_points(&s).unwrap();
    let lx: Vec<f64> = sp.points.iter().map(|p| p.x.ln()).collect();
    let ly: Vec<f64> = sp.points.iter().map(|p| p.y.ln()).collect();
    let fit = ols_line(&lx, &ly).unwrap();
    assert!((fit.slope + 2.0).abs() < 0.05, "{}", fit.slope);
}

#[test]
fn pareto_mean_excess_slope() {
    let s = DistributionModel::ParetoI {
        x0: 1.0,
        alpha: 2.5,
    }
    .sample(100_000, 12)
    .unwrap();
    let me = mean_excess_points(&s, 5).unwrap();
    let trend = me_trend(&me, &MeTrendConfig::default()).unwrap();
    assert!((trend.slope - 1.0 / 1.5).abs() < 0.05, "{}", trend.slope);
}

#[test]
fn lognormal_coefficient_of_variation() {
    let s = DistributionModel::Lognormal {
        mu: 0.0,
        sigma: 1.0,
    }
    .sample(100_000, 13)
    .unwrap();
    let m = moment_stats(s.values()).unwrap();
    let target = (std::f64::consts::E - 1.0).sqrt();
    assert!((m.cv - target).abs() < 0.05, "{}", m.cv);
}

#[test]
fn lognormal_empirical_zenga_level() {
    let model = DistributionModel::Lognormal {
        mu: 0.0,
        sigma: 1.0,
    };
    for seed in [1, 2, 3] {
        let s = model.sample(5000, seed).unwrap();
        let z = empirical_zenga_quantile_ratio(&s).unwrap();
        let inner: Vec<f64> = z
            .points
            .iter()
            .filter(|p| (0.1..=0.9).contains(&p.u))
            .map(|p| p.z)
            .collect();
        let mean = inner.iter().sum::<f64>() / inner.len() as f64;
        assert!((mean - 0.632).abs() < 0.04, "seed {seed}: {mean}");
    }
}

#[test]
fn pareto_spacings_are_independent() {
    let s = DistributionModel::ParetoI {
        x0: 1.0,
        alpha: 2.0,
    }
    .sample(10_000, 14)
    .unwrap();
    let sr = spacing_ratios(&s).unwrap();
    assert!(
        sr.normalized_rank_correlation.abs() < 0.05,
        "{}",
        sr.normalized_rank_correlation
    );
    // the raw ratio at rank i is Pareto with index alpha (n - i)
    assert!(sr.rank_correlation > 0.3);
}

#[test]
#[ignore = "raw ratios X_(i+1)/X_(i) are independent of X_(i) but not identically distributed across i"]
fn raw_spacing_rank_correlation_near_zero() {
    let s = DistributionModel::ParetoI {
        x0: 1.0,
        alpha: 2.0,
    }
    .sample(10_000, 14)
    .unwrap();
    assert!(spacing_ratios(&s).unwrap().rank_correlation.abs() < 0.05);
}

#[test]
fn lognormal_bootstrap_cloud_stays_lognormal() {
    let s = DistributionModel::Lognormal {
        mu: 0.0,
        sigma: 1.0,
    }
    .sample(500, 15)
    .unwrap();
    let cloud = bootstrap_moments(&s, 200, 16).unwrap();
    let inside = cloud
        .points
        .iter()
        .filter(|p| {
            let z = classify_moment_point(p, FormulaMode::Corrected).unwrap();
            matches!(z.kind, ZoneKind::Lognormal | ZoneKind::Gray)
        })
        .count();
    assert!(inside as f64 >= 0.6 * 200.0, "{inside}");
}

#[test]
fn aggregation_preserves_tail_slope_claim() {
    let s = DistributionModel::ParetoI {
        x0: 1.0,
        alpha: 2.5,
    }
    .sample(20_000, 17)
    .unwrap();
    let cfg = TailFitConfig::default();
    let before = tail_linearity(&survival_points(&s).unwrap(), &cfg).unwrap();
    let agg = pairwise_aggregate(&s, 18).unwrap();
    let after = tail_linearity(&survival_points(&agg).unwrap(), &cfg).unwrap();
    // the aggregated tail is still a power law, only steeper in its body
    assert!(after.slope < 0.0 && after.r2 > 0.9);
    assert!(after.slope < before.slope);
}

#[test]
#[ignore = "sums of Pareto(2.5) variables approach the tail slowly; the slopes differ by about 0.5 at n = 2e4"]
fn aggregated_tail_slope_within_fifteen_hundredths() {
    let s = DistributionModel::ParetoI {
        x0: 1.0,
        alpha: 2.5,
    }
    .sample(20_000, 17)
    .unwrap();
    let cfg = TailFitConfig::default();
    let before = tail_linearity(&survival_points(&s).unwrap(), &cfg).unwrap();
    let agg = pairwise_aggregate(&s, 18).unwrap();
    let after = tail_linearity(&survival_points(&agg).unwrap(), &cfg).unwrap();
    assert!((before.slope - after.slope).abs() < 0.15);
}
