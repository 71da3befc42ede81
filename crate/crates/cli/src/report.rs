use serde::{Deserialize, Serialize};

use spinvec::analysis::{correlation_matrix, noise_budget_of};
use spinvec::sampler::{exact_moments, MomentEstimates};
use spinvec::{estimate_moments, sample, Axis, Result, SingleSpinReport, SpinSystem, StateVector, VectorModelReport};

pub const SCHEMA_VERSION: &str = "spinvec-report/1";

/// Sampler agreement threshold in standard errors.
pub const SIGMA_THRESHOLD: f64 = 5.0;

/// One JSON object per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub units: String,
    pub request: Request,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub single: Option<SingleSpinReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupled: Option<VectorModelReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerComparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_table: Option<PaperTable>,
}

impl ReportDocument {
    pub fn new(command: &str, request: Request) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            units: "hbar".to_string(),
            request,
            single: None,
            coupled: None,
            sampler: None,
            paper_table: None,
        }
    }

    /// Whether every numerical self-check in the document passed.
    pub fn verified(&self) -> bool {
        self.coupled.as_ref().is_none_or(|c| c.composition_verified)
            && self.sampler.as_ref().is_none_or(|s| s.all_pass)
            && self.paper_table.as_ref().is_none_or(|p| p.all_pass)
    }
}

/// Echo of the parsed command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Request {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_sites: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_j: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_m: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleCheck {
    pub quantity: String,
    pub exact: f64,
    pub empirical: f64,
    pub std_error: f64,
    /// Deviation in standard errors; `None` when the error is zero and the
    /// deviation is not.
    pub z_score: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisComparison {
    pub axis: Axis,
    pub estimates: MomentEstimates,
    pub checks: Vec<SampleCheck>,
}

/// Exact values against Monte Carlo estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerComparison {
    pub n_samples: usize,
    pub seed: u64,
    pub sigma_threshold: f64,
    pub axes: Vec<AxisComparison>,
    pub all_pass: bool,
}

fn check(quantity: String, exact: f64, est: &spinvec::sampler::Estimate, sigma: f64, tolerance: f64) -> SampleCheck {
    let deviation = (est.value - exact).abs();
    SampleCheck {
        quantity,
        exact,
        empirical: est.value,
        std_error: sigma,
        z_score: if deviation <= tolerance {
            Some(0.0)
        } else if sigma > 0.0 {
            Some(deviation / sigma)
        } else {
            None
        },
        pass: deviation <= SIGMA_THRESHOLD * sigma + tolerance,
    }
}

/// Samples each axis and compares against the operator-route exact values,
/// using the exact standard errors of the estimators.
pub fn compare_sampler(
    system: SpinSystem,
    state: &StateVector,
    axes: &[Axis],
    n_samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<SamplerComparison> {
    let mut out = Vec::with_capacity(axes.len());
    for &axis in axes {
        let batch = sample(system, state, axis, n_samples, seed)?;
        let estimates = estimate_moments(&batch)?;
        let errors = exact_moments(system, state, axis, n_samples)?;
        let exact = correlation_matrix(system, state, axis)?;
        let budget = noise_budget_of(system, state, axis)?;

        let mut checks = Vec::new();
        for (i, est) in estimates.site_means.iter().enumerate() {
            checks.push(check(
                format!("<S_{axis}{}>", i + 1),
                exact.site_means[i],
                est,
                errors.site_means[i].std_error,
                tolerance,
            ));
        }
        for (i, est) in estimates.site_variances.iter().enumerate() {
            checks.push(check(
                format!("var S_{axis}{}", i + 1),
                exact.site_variance(i + 1),
                est,
                errors.site_variances[i].std_error,
                tolerance,
            ));
        }
        for p in &estimates.pair_correlations {
            checks.push(check(
                format!("<S_{axis}{} S_{axis}{}>", p.i, p.k),
                exact.matrix[p.i - 1][p.k - 1],
                &p.correlation,
                errors.pair(p.i, p.k).map_or(0.0, |e| e.std_error),
                tolerance,
            ));
        }
        checks.push(check(
            format!("var J_{axis}"),
            budget.total,
            &estimates.total_variance,
            errors.total_variance.std_error,
            tolerance,
        ));
        out.push(AxisComparison {
            axis,
            estimates,
            checks,
        });
    }
    let all_pass = out.iter().all(|a| a.checks.iter().all(|c| c.pass));
    Ok(SamplerComparison {
        n_samples,
        seed,
        sigma_threshold: SIGMA_THRESHOLD,
        axes: out,
        all_pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperItem {
    pub id: String,
    pub description: String,
    pub expected: f64,
    pub computed: f64,
    pub delta: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperTable {
    pub tolerance: f64,
    pub items: Vec<PaperItem>,
    pub all_pass: bool,
}
