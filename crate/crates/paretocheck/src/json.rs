//! Versioned JSON documents written by the CLI.

use serde::Serialize;

use paretocheck_core::diagnostics::{
    AggregationStability, Verdict, VerdictConfig, ZengaShape, Zone, ZoneKind,
};
use paretocheck_core::empirical::{BootstrapCloud, MomentPoint};
use paretocheck_core::powerstudy::{DiscriminationReport, PowerReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub path: String,
    pub column: String,
    pub n: usize,
    pub dropped_non_positive: usize,
    pub dropped_non_finite: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZoneFlags {
    pub rule_of_thumb_override: bool,
    pub thin_tail_precheck: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZipfEvidence {
    pub pass: bool,
    pub slope: f64,
    pub r2: f64,
    pub intercept: f64,
    pub points_used: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeEvidence {
    pub pass: bool,
    pub slope: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZengaEvidence {
    pub shape: ZengaShape,
    pub binned_range: f64,
    pub slope: f64,
    pub rank_correlation: f64,
    pub level: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDocument {
    pub schema: u32,
    pub input: InputSummary,
    pub seed: u64,
    pub config: VerdictConfig,
    pub zipf_tail_linear: ZipfEvidence,
    pub me_trend: MeEvidence,
    pub moment_point: MomentPoint,
    pub zone: &'static str,
    pub zone_flags: ZoneFlags,
    pub zenga_shape: ZengaEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggregation_stability: Option<AggregationStability>,
    pub label: &'static str,
}

impl VerdictDocument {
    pub fn new(
        input: InputSummary,
        seed: u64,
        config: VerdictConfig,
        verdict: &Verdict,
        aggregation: Option<AggregationStability>,
    ) -> Self {
        let z = &verdict.zipf_tail_linear;
        VerdictDocument {
            schema: SCHEMA_VERSION,
            input,
            seed,
            config,
            zipf_tail_linear: ZipfEvidence {
                pass: z.pass,
                slope: z.slope,
                r2: z.r2,
                intercept: z.intercept,
                points_used: z.points_used,
            },
            me_trend: MeEvidence {
                pass: verdict.me_trend.pass,
                slope: verdict.me_trend.slope,
            },
            moment_point: verdict.moment_point,
            zone: verdict.zone.kind.name(),
            zone_flags: flags(&verdict.zone),
            zenga_shape: ZengaEvidence {
                shape: verdict.zenga_shape.shape,
                binned_range: verdict.zenga_shape.binned_range,
                slope: verdict.zenga_shape.slope,
                rank_correlation: verdict.zenga_shape.rank_correlation,
                level: verdict.zenga_shape.level,
            },
            aggregation_stability: aggregation,
            label: verdict.label.name(),
        }
    }
}

fn flags(zone: &Zone) -> ZoneFlags {
    ZoneFlags {
        rule_of_thumb_override: zone.rule_of_thumb_override,
        thin_tail_precheck: zone.thin_tail_precheck,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BootstrapSummary {
    pub resamples: usize,
    pub skipped: usize,
    pub points: Vec<MomentPoint>,
    /// Share of bootstrap points per zone, in a fixed zone order.
    pub zone_shares: Vec<(&'static str, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentDocument {
    pub schema: u32,
    pub input: InputSummary,
    pub seed: u64,
    pub moment_point: MomentPoint,
    pub zone: &'static str,
    pub zone_flags: ZoneFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap: Option<BootstrapSummary>,
}

impl MomentDocument {
    pub fn new(input: InputSummary, seed: u64, point: MomentPoint, zone: &Zone) -> Self {
        MomentDocument {
            schema: SCHEMA_VERSION,
            input,
            seed,
            moment_point: point,
            zone: zone.kind.name(),
            zone_flags: flags(zone),
            bootstrap: None,
        }
    }
}

const ZONE_ORDER: [ZoneKind; 7] = [
    ZoneKind::AbovePareto,
    ZoneKind::Paretian,
    ZoneKind::Gray,
    ZoneKind::Lognormal,
    ZoneKind::ExponentialThin,
    ZoneKind::SubBernoulli,
    ZoneKind::Symmetric,
];

pub fn bootstrap_summary(
    resamples: usize,
    cloud: &BootstrapCloud,
    zones: &[ZoneKind],
) -> BootstrapSummary {
    let total = zones.len().max(1) as f64;
    let zone_shares = ZONE_ORDER
        .iter()
        .map(|k| {
            (
                k.name(),
                zones.iter().filter(|z| *z == k).count() as f64 / total,
            )
        })
        .collect();
    BootstrapSummary {
        resamples,
        skipped: cloud.skipped,
        points: cloud.points.clone(),
        zone_shares,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerDocument<'a> {
    pub schema: u32,
    #[serde(flatten)]
    pub report: &'a PowerReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscriminationDocument<'a> {
    pub schema: u32,
    #[serde(flatten)]
    pub report: &'a DiscriminationReport,
}

pub fn power_table(r: &PowerReport) -> String {
    let rows = [
        ("true model", format!("{:?}", r.model_true)),
        ("alternative", r.model_alt.clone()),
        ("n", r.n.to_string()),
        ("trials", r.trials.to_string()),
        ("skipped", r.skipped.to_string()),
        ("errors", r.errors.to_string()),
        ("error rate", format!("{:.4}", r.error_rate)),
        ("95% half-width", format!("{:.4}", r.ci_halfwidth)),
        ("seed", r.seed.to_string()),
    ];
    table(&rows)
}

pub fn discrimination_table(r: &DiscriminationReport) -> String {
    let rows = [
        ("model", format!("{:?}", r.model)),
        ("n", r.n.to_string()),
        ("trials", r.trials.to_string()),
        ("skipped", r.skipped.to_string()),
        ("distinguished", r.distinguished.to_string()),
        ("fraction", format!("{:.4}", r.fraction)),
        ("seed", r.seed.to_string()),
    ];
    table(&rows)
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}
