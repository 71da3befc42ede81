//! Monte Carlo measurement of every site's spin along one axis.
//!
//! The state is rotated so the chosen axis eigenbasis becomes the
//! computational basis, then joint outcomes are drawn by inverting the
//! cumulative Born distribution. Samples are produced in fixed-size blocks;
//! block `b` draws from the ChaCha8 stream `b` of the seed, so a batch is a
//! function of `(state, axis, n_samples, seed)` alone, whatever the thread
//! count.
//!
//! Every outcome is `±1/2`, so all sums are accumulated as integers and the
//! moment estimates are bit-reproducible too.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::composite::{apply_site, SpinSystem};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, StateVector, I, ONE};
use crate::par;
use crate::spin_ops::Axis;

pub const DEFAULT_SAMPLES: usize = 1_000_000;

/// Samples drawn from one RNG stream.
pub const BLOCK_SIZE: usize = 1 << 14;

/// Single-site unitary whose rows are the `+1/2` and `-1/2` eigenvectors of
/// `S_axis`, conjugated.
fn axis_unitary(axis: Axis) -> ComplexMatrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let entries = match axis {
        Axis::X => vec![ONE, ONE, ONE, -ONE],
        Axis::Y => vec![ONE, -I, ONE, I],
        Axis::Z => vec![ONE, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), ONE],
    };
    let scale = if axis == Axis::Z { 1.0 } else { r };
    ComplexMatrix::from_row_major(2, 2, entries)
        .expect("2x2")
        .scale(Complex64::new(scale, 0.0))
}

/// Expresses `state` in the product eigenbasis of `S_axis` on every site.
pub fn rotate_to_axis_basis(system: SpinSystem, state: &StateVector, axis: Axis) -> Result<StateVector> {
    if axis == Axis::Z {
        if state.dim() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: state.dim(),
            });
        }
        return Ok(state.clone());
    }
    let u = axis_unitary(axis);
    let mut amps = state.amplitudes().to_vec();
    for site in 1..=system.n_sites() {
        amps = apply_site(&u, site, system, &amps)?;
    }
    StateVector::new(amps)
}

/// Joint outcome probabilities along `axis`, indexed like the basis.
pub fn outcome_probabilities(system: SpinSystem, state: &StateVector, axis: Axis) -> Result<Vec<f64>> {
    Ok(rotate_to_axis_basis(system, state, axis)?.probabilities())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub axis: Axis,
    pub n_sites: usize,
    pub n_samples: usize,
    pub seed: u64,
    /// Outcome of each draw as a basis index: bit value 0 on a site means
    /// `+1/2` along `axis`, site 1 in the most significant bit.
    pub outcomes: Vec<u32>,
}

impl SampleBatch {
    /// Spin value `±1/2` of `site` in draw `sample`.
    pub fn spin(&self, sample: usize, site: usize) -> f64 {
        if self.outcomes[sample] & (1 << (self.n_sites - site)) == 0 {
            0.5
        } else {
            -0.5
        }
    }

    pub fn spins(&self, sample: usize) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n_sites).map(move |site| self.spin(sample, site))
    }
}

fn draw_block(cdf: &[f64], seed: u64, block: usize, len: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    let total = *cdf.last().unwrap();
    let last = cdf.len() - 1;
    (0..len)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            cdf.partition_point(|&c| c <= u).min(last) as u32
        })
        .collect()
}

/// Draws `n_samples` joint measurements of every site along `axis`.
pub fn sample(system: SpinSystem, state: &StateVector, axis: Axis, n_samples: usize, seed: u64) -> Result<SampleBatch> {
    if n_samples == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let probs = outcome_probabilities(system, state, axis)?;
    let cdf: Vec<f64> = probs
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let n_blocks = n_samples.div_ceil(BLOCK_SIZE);
    let blocks = par::map_blocks(n_blocks, |b| {
        let len = BLOCK_SIZE.min(n_samples - b * BLOCK_SIZE);
        draw_block(&cdf, seed, b, len)
    });
    Ok(SampleBatch {
        axis,
        n_sites: system.n_sites(),
        n_samples,
        seed,
        outcomes: blocks.concat(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Whether `exact` lies within `k` standard errors, allowing `abs_tol`
    /// for rounding in the exact value.
    pub fn within(&self, exact: f64, k: f64, abs_tol: f64) -> bool {
        (self.value - exact).abs() <= k * self.std_error + abs_tol
    }

    /// Deviation from `exact` in units of the standard error.
    pub fn z_score(&self, exact: f64) -> f64 {
        let d = (self.value - exact).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEstimate {
    pub i: usize,
    pub k: usize,
    /// `<s_i s_k>`.
    pub correlation: Estimate,
}

/// Means, variances and pair correlations of the measured spins, each with a
/// standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimates {
    pub axis: Axis,
    pub n_samples: usize,
    pub site_means: Vec<Estimate>,
    pub site_variances: Vec<Estimate>,
    pub pair_correlations: Vec<PairEstimate>,
    /// Mean of `J_axis = Σ_i s_i`.
    pub total_mean: Estimate,
    /// Variance of `J_axis`.
    pub total_variance: Estimate,
}

impl MomentEstimates {
    pub fn pair(&self, i: usize, k: usize) -> Option<&Estimate> {
        let (i, k) = if i < k { (i, k) } else { (k, i) };
        self.pair_correlations
            .iter()
            .find(|p| p.i == i && p.k == k)
            .map(|p| &p.correlation)
    }
}

/// Raw moments `E[x^p]`, p = 1..4, of a variable and the mean/variance
/// estimates with standard errors for a sample of size `n`.
#[derive(Debug, Clone, Copy)]
struct RawMoments([f64; 4]);

impl RawMoments {
    fn mean_estimate(&self, n: usize) -> Estimate {
        let var = self.central2();
        Estimate {
            value: self.0[0],
            std_error: (var / n as f64).sqrt(),
        }
    }

    fn central2(&self) -> f64 {
        let [m1, m2, ..] = self.0;
        (m2 - m1 * m1).max(0.0)
    }

    fn central4(&self) -> f64 {
        let [m1, m2, m3, m4] = self.0;
        (m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4)).max(0.0)
    }

    /// Bessel-corrected sample variance; the error is the exact standard
    /// deviation of that estimator given the central moments.
    fn variance_estimate(&self, n: usize) -> Estimate {
        let nf = n as f64;
        let sigma2 = self.central2();
        let mu4 = self.central4();
        let var_of_var = (mu4 - sigma2 * sigma2).max(0.0) / nf + 2.0 * sigma2 * sigma2 / (nf * (nf - 1.0));
        Estimate {
            value: sigma2 * nf / (nf - 1.0),
            std_error: var_of_var.sqrt(),
        }
    }

    /// Population moments, used when the variance itself is exact.
    fn population_variance(&self, n: usize) -> Estimate {
        let mut e = self.variance_estimate(n);
        e.value = self.central2();
        e
    }
}

/// Integer power sums of a variable taking values `scale * k`.
#[derive(Debug, Clone, Copy, Default)]
struct PowerSums([i64; 4]);

impl PowerSums {
    fn push(&mut self, k: i64) {
        let mut p = k;
        for s in &mut self.0 {
            *s += p;
            p *= k;
        }
    }

    fn raw(&self, n: usize, scale: f64) -> RawMoments {
        let mut out = [0.0; 4];
        let mut sc = scale;
        for (o, &s) in out.iter_mut().zip(&self.0) {
            *o = s as f64 / n as f64 * sc;
            sc *= scale;
        }
        RawMoments(out)
    }
}

/// Plug-in statistics of a sample batch; needs at least two draws.
pub fn estimate_moments(batch: &SampleBatch) -> Result<MomentEstimates> {
    let n = batch.n_samples;
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let n_sites = batch.n_sites;
    let mut down_counts = vec![0i64; n_sites];
    let mut disagree = vec![vec![0i64; n_sites]; n_sites];
    let mut total = PowerSums::default();
    for &o in &batch.outcomes {
        let bits: Vec<bool> = (1..=n_sites).map(|s| o & (1 << (n_sites - s)) != 0).collect();
        for (i, &bi) in bits.iter().enumerate() {
            down_counts[i] += i64::from(bi);
            for (k, &bk) in bits.iter().enumerate().skip(i + 1) {
                disagree[i][k] += i64::from(bi != bk);
            }
        }
        // 2 J = (#up - #down)
        total.push(n_sites as i64 - 2 * i64::from(o.count_ones()));
    }

    let nn = n as i64;
    let site_raw: Vec<RawMoments> = down_counts
        .iter()
        .map(|&d| {
            // k = ±1 with scale 1/2; k^2 = 1.
            let s1 = nn - 2 * d;
            PowerSums([s1, nn, s1, nn]).raw(n, 0.5)
        })
        .collect();
    let mut pair_correlations = Vec::new();
    for (i, row) in disagree.iter().enumerate() {
        for (k, &d) in row.iter().enumerate().skip(i + 1) {
            let s1 = nn - 2 * d;
            let raw = PowerSums([s1, nn, s1, nn]).raw(n, 0.25);
            pair_correlations.push(PairEstimate {
                i: i + 1,
                k: k + 1,
                correlation: raw.mean_estimate(n),
            });
        }
    }
    let total_raw = total.raw(n, 0.5);
    Ok(MomentEstimates {
        axis: batch.axis,
        n_samples: n,
        site_means: site_raw.iter().map(|r| r.mean_estimate(n)).collect(),
        site_variances: site_raw.iter().map(|r| r.variance_estimate(n)).collect(),
        pair_correlations,
        total_mean: total_raw.mean_estimate(n),
        total_variance: total_raw.variance_estimate(n),
    })
}

/// Exact values of the quantities [`estimate_moments`] reports, with the
/// standard errors those estimators have at `n_samples` draws.
pub fn exact_moments(system: SpinSystem, state: &StateVector, axis: Axis, n_samples: usize) -> Result<MomentEstimates> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: n_samples,
        });
    }
    let probs = outcome_probabilities(system, state, axis)?;
    let n_sites = system.n_sites();
    let mut site_up = vec![0.0; n_sites];
    let mut agree = vec![vec![0.0; n_sites]; n_sites];
    let mut total = [0.0; 4];
    for (idx, &p) in probs.iter().enumerate() {
        let ups: Vec<f64> = (1..=n_sites).map(|s| system.site_projection(idx, s)).collect();
        for i in 0..n_sites {
            if ups[i] > 0.0 {
                site_up[i] += p;
            }
            for k in i + 1..n_sites {
                if ups[i] == ups[k] {
                    agree[i][k] += p;
                }
            }
        }
        let j: f64 = ups.iter().sum();
        let mut pw = j;
        for t in &mut total {
            *t += p * pw;
            pw *= j;
        }
    }
    let two_point = |p_plus: f64, scale: f64| {
        let m1 = scale * (2.0 * p_plus - 1.0);
        RawMoments([m1, scale * scale, scale * m1 * scale, scale.powi(4)])
    };
    let site_raw: Vec<RawMoments> = site_up.iter().map(|&p| two_point(p, 0.5)).collect();
    let mut pair_correlations = Vec::new();
    for (i, row) in agree.iter().enumerate() {
        for (k, &p) in row.iter().enumerate().skip(i + 1) {
            pair_correlations.push(PairEstimate {
                i: i + 1,
                k: k + 1,
                correlation: two_point(p, 0.25).mean_estimate(n_samples),
            });
        }
    }
    let total_raw = RawMoments(total);
    Ok(MomentEstimates {
        axis,
        n_samples,
        site_means: site_raw.iter().map(|r| r.mean_estimate(n_samples)).collect(),
        site_variances: site_raw.iter().map(|r| r.population_variance(n_samples)).collect(),
        pair_correlations,
        total_mean: total_raw.mean_estimate(n_samples),
        total_variance: total_raw.population_variance(n_samples),
    })
}
