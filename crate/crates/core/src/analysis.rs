//! Projections, fluctuations and pair correlations of angular momentum
//! components, and the vector-model bookkeeping built on them.
//!
//! Two classical vectors are attached to a state. Choice A takes the
//! expectation of each component, `(<J_x>, <J_y>, <J_z>)`. Choice B takes the
//! root-mean-square, `(<J_x^2>^½, <J_y^2>^½, <J_z^2>^½)`, whose squared length
//! is always `<J^2>`. On a `|j, m>` state the z entry of choice B is the
//! projection `m` and the transverse entries are pure fluctuations.
//!
//! For a register of spin-1/2 particles, [`vector_sum_report`] composes the
//! total choice-B vector from the per-particle vectors: projections add
//! directly, fluctuations add through the exact noise sum
//! `ΔJ_a² = Σ_i ΔS_ai² + 2 Σ_{i<k} cov(S_ai, S_ak)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::composite::{SiteOperator, SpinSystem};
use crate::coupling::{CoupledState, Provenance};
use crate::error::{Error, Result};
use crate::linalg::{inner, norm_sqr, Observable, StateVector, TOL};
use crate::spin_ops::{build_component, Axis, SpinQuantumNumber};

/// A state space with angular momentum components `J_x`, `J_y`, `J_z`.
pub trait ComponentSource {
    fn dim(&self) -> usize;

    /// Applies `J_axis` to `amps`.
    fn apply_component(&self, axis: Axis, amps: &[Complex64]) -> Result<Vec<Complex64>>;
}

/// Total spin of a spin-1/2 register, applied by streaming.
impl ComponentSource for SpinSystem {
    fn dim(&self) -> usize {
        SpinSystem::dim(self)
    }

    fn apply_component(&self, axis: Axis, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        crate::composite::total_component(axis, *self).apply(amps)
    }
}

/// A single particle of spin j.
impl ComponentSource for SpinQuantumNumber {
    fn dim(&self) -> usize {
        SpinQuantumNumber::dim(*self)
    }

    fn apply_component(&self, axis: Axis, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        build_component(*self, axis).apply(amps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}

fn moments_of(state: &StateVector, applied: &[Complex64]) -> Result<Moments> {
    let mean = inner(state.amplitudes(), applied)?.re;
    // <A^2> = |A psi|^2 for Hermitian A.
    let second_moment = norm_sqr(applied);
    let variance = clamp_variance(second_moment - mean * mean);
    Ok(Moments {
        mean,
        second_moment,
        variance,
    })
}

/// Squared quantities below this are rounding residue and count as zero.
pub const ROUNDING_FLOOR: f64 = 1e-12;

/// Clamps a non-negative squared quantity; square roots of rounding residue
/// would otherwise be of order 1e-8.
fn clamp_variance(v: f64) -> f64 {
    if v < ROUNDING_FLOOR {
        0.0
    } else {
        v
    }
}

/// Mean, second moment and variance of a Hermitian observable.
pub fn moments<O: Observable + ?Sized>(op: &O, state: &StateVector) -> Result<Moments> {
    let applied = op.apply(state.amplitudes())?;
    moments_of(state, &applied)
}

/// `ΔA² = <A²> - <A>²`, never negative.
pub fn variance<O: Observable + ?Sized>(op: &O, state: &StateVector) -> Result<f64> {
    Ok(moments(op, state)?.variance)
}

pub fn component_moments<S: ComponentSource + ?Sized>(space: &S, state: &StateVector, axis: Axis) -> Result<Moments> {
    let applied = space.apply_component(axis, state.amplitudes())?;
    moments_of(state, &applied)
}

/// `<S_ai S_ak>` for two distinct sites of a spin-1/2 register.
pub fn pair_correlation_of(system: SpinSystem, state: &StateVector, axis: Axis, i: usize, k: usize) -> Result<f64> {
    if i == k {
        return Err(Error::SameSite(i));
    }
    let si = SiteOperator::new(system, i, axis)?.apply(state.amplitudes())?;
    let sk = SiteOperator::new(system, k, axis)?.apply(state.amplitudes())?;
    Ok(inner(&si, &sk)?.re)
}

/// `<j,m| S_ai S_ak |j,m>` with 1-based sites `i != k`.
pub fn pair_correlation(state: &CoupledState, axis: Axis, i: usize, k: usize) -> Result<f64> {
    pair_correlation_of(state.system(), state.vector(), axis, i, k)
}

/// Site means `<S_ai>` and the matrix `<S_ai S_ak>` (diagonal `<S_ai²>`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub axis: Axis,
    pub site_means: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    /// `<S_ai S_ak> - <S_ai><S_ak>`.
    pub fn covariance(&self, i: usize, k: usize) -> f64 {
        self.matrix[i - 1][k - 1] - self.site_means[i - 1] * self.site_means[k - 1]
    }

    pub fn site_variance(&self, i: usize) -> f64 {
        clamp_variance(self.covariance(i, i))
    }
}

pub fn correlation_matrix(system: SpinSystem, state: &StateVector, axis: Axis) -> Result<CorrelationMatrix> {
    let n = system.n_sites();
    let applied: Vec<Vec<Complex64>> = (1..=n)
        .map(|site| SiteOperator::new(system, site, axis)?.apply(state.amplitudes()))
        .collect::<Result<_>>()?;
    let site_means = applied
        .iter()
        .map(|a| Ok(inner(state.amplitudes(), a)?.re))
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in i..n {
            let c = inner(&applied[i], &applied[k])?.re;
            matrix[i][k] = c;
            matrix[k][i] = c;
        }
    }
    Ok(CorrelationMatrix {
        axis,
        site_means,
        matrix,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationClass {
    Uncorrelated,
    Correlated,
    AntiCorrelated,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub i: usize,
    pub k: usize,
    /// `<S_ai S_ak>`.
    pub correlation: f64,
    /// `<S_ai S_ak> - <S_ai><S_ak>`.
    pub covariance: f64,
}

/// Decomposition of `ΔJ_a²` into single-site noise and pair terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseBudget {
    pub axis: Axis,
    /// `ΔS_ai²` for each site.
    pub site_variances: Vec<f64>,
    pub pair_terms: Vec<PairTerm>,
    /// `Σ_i ΔS_ai²`: the quadrature sum.
    pub uncorrelated_part: f64,
    /// `2 Σ_{i<k} cov(S_ai, S_ak)`.
    pub correlation_part: f64,
    /// `ΔJ_a²`.
    pub total: f64,
    pub class: CorrelationClass,
}

fn classify_pairs(pairs: &[PairTerm]) -> CorrelationClass {
    if pairs.iter().all(|p| p.covariance.abs() <= TOL) {
        CorrelationClass::Uncorrelated
    } else if pairs.iter().all(|p| p.covariance >= TOL) {
        CorrelationClass::Correlated
    } else if pairs.iter().all(|p| p.covariance <= -TOL) {
        CorrelationClass::AntiCorrelated
    } else {
        CorrelationClass::Partial
    }
}

fn budget_from(matrix: &CorrelationMatrix) -> NoiseBudget {
    let n = matrix.site_means.len();
    let site_variances: Vec<f64> = (1..=n).map(|i| matrix.site_variance(i)).collect();
    let mut pair_terms = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        for k in i + 1..=n {
            pair_terms.push(PairTerm {
                i,
                k,
                correlation: matrix.matrix[i - 1][k - 1],
                covariance: matrix.covariance(i, k),
            });
        }
    }
    let uncorrelated_part: f64 = site_variances.iter().sum();
    let correlation_part = 2.0 * pair_terms.iter().map(|p| p.covariance).sum::<f64>();
    NoiseBudget {
        axis: matrix.axis,
        total: clamp_variance(uncorrelated_part + correlation_part),
        class: classify_pairs(&pair_terms),
        site_variances,
        pair_terms,
        uncorrelated_part,
        correlation_part,
    }
}

pub fn noise_budget_of(system: SpinSystem, state: &StateVector, axis: Axis) -> Result<NoiseBudget> {
    Ok(budget_from(&correlation_matrix(system, state, axis)?))
}

pub fn noise_budget(state: &CoupledState, axis: Axis) -> Result<NoiseBudget> {
    noise_budget_of(state.system(), state.vector(), axis)
}

pub fn vector_choice_a<S: ComponentSource + ?Sized>(space: &S, state: &StateVector) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for axis in Axis::ALL {
        out[axis.index()] = component_moments(space, state, axis)?.mean;
    }
    Ok(out)
}

fn signed_root(axis: Axis, m: &Moments) -> f64 {
    let magnitude = clamp_variance(m.second_moment).sqrt();
    if axis == Axis::Z && m.mean < -TOL {
        -magnitude
    } else {
        magnitude
    }
}

/// Root-mean-square components; the z entry takes the sign of `<J_z>`.
pub fn vector_choice_b<S: ComponentSource + ?Sized>(space: &S, state: &StateVector) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for axis in Axis::ALL {
        out[axis.index()] = signed_root(axis, &component_moments(space, state, axis)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Projection,
    Fluctuation,
    Mixed,
}

fn kind_of(m: &Moments) -> ComponentKind {
    if m.variance <= TOL {
        ComponentKind::Projection
    } else if m.mean.abs() <= TOL {
        ComponentKind::Fluctuation
    } else {
        ComponentKind::Mixed
    }
}

pub fn classify_component<S: ComponentSource + ?Sized>(
    space: &S,
    state: &StateVector,
    axis: Axis,
) -> Result<ComponentKind> {
    Ok(kind_of(&component_moments(space, state, axis)?))
}

/// Per-axis view of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisSummary {
    pub axis: Axis,
    /// `<J_a>`, the choice-A entry.
    pub expectation: f64,
    pub second_moment: f64,
    pub variance: f64,
    /// Signed `<J_a²>^½`, the choice-B entry.
    pub choice_b: f64,
    pub kind: ComponentKind,
}

fn axis_summaries<S: ComponentSource + ?Sized>(space: &S, state: &StateVector) -> Result<Vec<AxisSummary>> {
    Axis::ALL
        .iter()
        .map(|&axis| {
            let m = component_moments(space, state, axis)?;
            Ok(AxisSummary {
                axis,
                expectation: m.mean,
                second_moment: m.second_moment,
                variance: m.variance,
                choice_b: signed_root(axis, &m),
                kind: kind_of(&m),
            })
        })
        .collect()
}

fn vector_from(summaries: &[AxisSummary], f: impl Fn(&AxisSummary) -> f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for s in summaries {
        out[s.axis.index()] = f(s);
    }
    out
}

pub fn magnitude_sq(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// `sqrt(1 + 1/j)`: the length of `J` per unit of `j`.
pub fn effective_unit(j: SpinQuantumNumber) -> Result<f64> {
    if j.twice() == 0 {
        return Err(Error::ZeroSpin);
    }
    Ok((1.0 + 1.0 / j.value()).sqrt())
}

/// Vector-model report for a single spin-j particle in `|j, m>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleSpinReport {
    pub twice_j: u32,
    pub twice_m: i32,
    pub axes: Vec<AxisSummary>,
    pub choice_a: [f64; 3],
    pub choice_b: [f64; 3],
    pub magnitude_a_sq: f64,
    pub magnitude_b_sq: f64,
    /// `j(j+1)`.
    pub casimir: f64,
    pub effective_unit: Option<f64>,
}

pub fn single_spin_report(j: SpinQuantumNumber, twice_m: i32) -> Result<SingleSpinReport> {
    let index = j.index_of(twice_m).ok_or_else(|| {
        Error::InvalidQuantumNumbers(format!(
            "m = {} violates |m| <= j with j = {j}",
            crate::spin_ops::half_integer_string(i64::from(twice_m))
        ))
    })?;
    let state = StateVector::basis(j.dim(), index)?;
    let axes = axis_summaries(&j, &state)?;
    let choice_a = vector_from(&axes, |s| s.expectation);
    let choice_b = vector_from(&axes, |s| s.choice_b);
    Ok(SingleSpinReport {
        twice_j: j.twice(),
        twice_m,
        magnitude_a_sq: magnitude_sq(&choice_a),
        magnitude_b_sq: axes.iter().map(|s| s.second_moment).sum(),
        casimir: j.casimir(),
        effective_unit: effective_unit(j).ok(),
        axes,
        choice_a,
        choice_b,
    })
}

/// How the sign of a per-particle z entry was fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZSign {
    /// Sign of a nonzero `<S_zi>`.
    FromProjection,
    /// `<S_zi> = 0`; signs alternate +, -, +, ... over such sites.
    Alternating,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteVector {
    pub site: usize,
    /// `(ΔS_xi, ΔS_yi, ±<S_zi²>^½)`.
    pub components: [f64; 3],
    pub z_sign: ZSign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrices {
    pub x: CorrelationMatrix,
    pub y: CorrelationMatrix,
    pub z: CorrelationMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorModelReport {
    pub n_sites: usize,
    pub twice_j: u32,
    pub twice_m: i32,
    pub provenance: Provenance,
    pub coupling_path: Vec<u32>,
    pub axes: Vec<AxisSummary>,
    pub site_vectors: Vec<SiteVector>,
    pub correlations: CorrelationMatrices,
    pub noise_budgets: Vec<NoiseBudget>,
    pub choice_a: [f64; 3],
    pub choice_b: [f64; 3],
    /// Total vector assembled from the particles.
    pub composed: [f64; 3],
    /// Largest entry of `|composed - choice_b|`.
    pub composition_error: f64,
    pub composition_verified: bool,
    /// Componentwise sum of the particle vectors, for contrast.
    pub naive_sum: [f64; 3],
    pub magnitude_a_sq: f64,
    pub magnitude_b_sq: f64,
    pub composed_magnitude_sq: f64,
    pub naive_magnitude_sq: f64,
    /// `j(j+1)`.
    pub casimir: f64,
    pub effective_unit: Option<f64>,
}

impl VectorModelReport {
    pub fn budget(&self, axis: Axis) -> &NoiseBudget {
        &self.noise_budgets[axis.index()]
    }

    pub fn correlation(&self, axis: Axis) -> &CorrelationMatrix {
        match axis {
            Axis::X => &self.correlations.x,
            Axis::Y => &self.correlations.y,
            Axis::Z => &self.correlations.z,
        }
    }
}

/// Builds the particle vectors of a coupled register and adds them up:
/// site means add directly, noise adds through the correlation-aware sum.
pub fn vector_sum_report(state: &CoupledState) -> Result<VectorModelReport> {
    let system = state.system();
    let vector = state.vector();
    let n = system.n_sites();

    let axes = axis_summaries(&system, vector)?;
    let choice_a = vector_from(&axes, |s| s.expectation);
    let choice_b = vector_from(&axes, |s| s.choice_b);

    let [cx, cy, cz] = Axis::ALL.map(|axis| correlation_matrix(system, vector, axis));
    let correlations = CorrelationMatrices { x: cx?, y: cy?, z: cz? };
    let noise_budgets: Vec<NoiseBudget> = [&correlations.x, &correlations.y, &correlations.z]
        .into_iter()
        .map(budget_from)
        .collect();

    let mut alternate_positive = true;
    let site_vectors: Vec<SiteVector> = (1..=n)
        .map(|site| {
            let z_mean = correlations.z.site_means[site - 1];
            let z_rms = clamp_variance(correlations.z.matrix[site - 1][site - 1]).sqrt();
            let (z, z_sign) = if z_mean.abs() > TOL {
                (z_rms.copysign(z_mean), ZSign::FromProjection)
            } else {
                let z = if alternate_positive { z_rms } else { -z_rms };
                alternate_positive = !alternate_positive;
                (z, ZSign::Alternating)
            };
            SiteVector {
                site,
                components: [
                    correlations.x.site_variance(site).sqrt(),
                    correlations.y.site_variance(site).sqrt(),
                    z,
                ],
                z_sign,
            }
        })
        .collect();

    let mut composed = [0.0; 3];
    for (axis, matrix) in Axis::ALL
        .into_iter()
        .zip([&correlations.x, &correlations.y, &correlations.z])
    {
        let projection: f64 = matrix.site_means.iter().sum();
        let noise = noise_budgets[axis.index()].total;
        let magnitude = clamp_variance(projection * projection + noise).sqrt();
        composed[axis.index()] = if axis == Axis::Z && projection < -TOL {
            -magnitude
        } else {
            magnitude
        };
    }
    let composition_error = composed
        .iter()
        .zip(&choice_b)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut naive_sum = [0.0; 3];
    for sv in &site_vectors {
        for (acc, c) in naive_sum.iter_mut().zip(sv.components) {
            *acc += c;
        }
    }

    let j = SpinQuantumNumber::from_twice(state.twice_j());
    Ok(VectorModelReport {
        n_sites: n,
        twice_j: state.twice_j(),
        twice_m: state.twice_m(),
        provenance: state.provenance(),
        coupling_path: state.coupling_path().to_vec(),
        magnitude_a_sq: magnitude_sq(&choice_a),
        magnitude_b_sq: axes.iter().map(|s| s.second_moment).sum(),
        composed_magnitude_sq: magnitude_sq(&composed),
        naive_magnitude_sq: magnitude_sq(&naive_sum),
        casimir: j.casimir(),
        effective_unit: effective_unit(j).ok(),
        composition_verified: composition_error <= TOL,
        axes,
        site_vectors,
        correlations,
        noise_budgets,
        choice_a,
        choice_b,
        composed,
        composition_error,
        naive_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composite::total_component;
    use crate::coupling::{coupled_state, stretched_state, two_spin_state};
    use crate::spin_ops::{build_sx, build_sz};

    const HALF: SpinQuantumNumber = SpinQuantumNumber::HALF;

    fn close3(a: [f64; 3], b: [f64; 3]) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() < TOL)
    }

    fn up() -> StateVector {
        StateVector::basis(2, 0).unwrap()
    }

    #[test]
    fn variance_examples() {
        assert!((variance(&build_sx(HALF), &up()).unwrap() - 0.25).abs() < TOL);
        assert!(variance(&build_sz(HALF), &up()).unwrap().abs() < TOL);
        let t0 = two_spin_state(2, 0).unwrap();
        let jx = total_component(Axis::X, t0.system());
        assert!((variance(&jx, t0.vector()).unwrap() - 1.0).abs() < TOL);
        assert!(variance(&build_sx(HALF), &StateVector::basis(3, 0).unwrap()).is_err());
    }

    #[test]
    fn pair_correlation_examples() {
        let stretched = stretched_state(SpinSystem::new(2).unwrap());
        assert!(pair_correlation(&stretched, Axis::X, 1, 2).unwrap().abs() < TOL);
        let t0 = two_spin_state(2, 0).unwrap();
        assert!((pair_correlation(&t0, Axis::X, 1, 2).unwrap() - 0.25).abs() < TOL);
        let singlet = two_spin_state(0, 0).unwrap();
        assert!((pair_correlation(&singlet, Axis::X, 1, 2).unwrap() + 0.25).abs() < TOL);
        assert_eq!(pair_correlation(&singlet, Axis::X, 1, 1), Err(Error::SameSite(1)));
        assert!(matches!(
            pair_correlation(&singlet, Axis::X, 1, 3),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn noise_budget_examples() {
        let stretched = stretched_state(SpinSystem::new(2).unwrap());
        let b = noise_budget(&stretched, Axis::X).unwrap();
        assert_eq!(b.site_variances.len(), 2);
        assert!((b.uncorrelated_part - 0.5).abs() < TOL);
        assert!(b.correlation_part.abs() < TOL);
        assert!((b.total - 0.5).abs() < TOL);
        assert_eq!(b.class, CorrelationClass::Uncorrelated);

        let b = noise_budget(&two_spin_state(2, 0).unwrap(), Axis::X).unwrap();
        assert!((b.uncorrelated_part - 0.5).abs() < TOL);
        assert!((b.correlation_part - 0.5).abs() < TOL);
        assert!((b.total - 1.0).abs() < TOL);
        assert_eq!(b.class, CorrelationClass::Correlated);

        let b = noise_budget(&two_spin_state(0, 0).unwrap(), Axis::X).unwrap();
        assert!((b.correlation_part + 0.5).abs() < TOL);
        assert!(b.total.abs() < TOL);
        assert_eq!(b.class, CorrelationClass::AntiCorrelated);
    }

    #[test]
    fn z_budget_uses_covariance() {
        let stretched = stretched_state(SpinSystem::new(3).unwrap());
        let b = noise_budget(&stretched, Axis::Z).unwrap();
        assert!(b.total.abs() < TOL);
        assert_eq!(b.class, CorrelationClass::Uncorrelated);
        assert!((b.pair_terms[0].correlation - 0.25).abs() < TOL);
    }

    #[test]
    fn partial_correlation_at_intermediate_m() {
        let s = coupled_state(SpinSystem::new(3).unwrap(), 3, 1, None).unwrap();
        let b = noise_budget(&s, Axis::X).unwrap();
        assert_eq!(b.class, CorrelationClass::Correlated);
        let s = coupled_state(SpinSystem::new(4).unwrap(), 2, 0, None).unwrap();
        let b = noise_budget(&s, Axis::X).unwrap();
        assert_eq!(b.class, CorrelationClass::Partial);
    }

    #[test]
    fn choice_vectors() {
        assert!(close3(vector_choice_a(&HALF, &up()).unwrap(), [0.0, 0.0, 0.5]));
        assert!(close3(vector_choice_b(&HALF, &up()).unwrap(), [0.5, 0.5, 0.5]));

        let singlet = two_spin_state(0, 0).unwrap();
        assert!(close3(
            vector_choice_a(&singlet.system(), singlet.vector()).unwrap(),
            [0.0; 3]
        ));

        let s11 = stretched_state(SpinSystem::new(2).unwrap());
        assert!(close3(
            vector_choice_a(&s11.system(), s11.vector()).unwrap(),
            [0.0, 0.0, 1.0]
        ));

        let t0 = two_spin_state(2, 0).unwrap();
        let b = vector_choice_b(&t0.system(), t0.vector()).unwrap();
        assert!(close3(b, [1.0, 1.0, 0.0]));
        assert!((magnitude_sq(&b) - 2.0).abs() < TOL);

        for n in 1..=8 {
            let s = stretched_state(SpinSystem::new(n).unwrap());
            let j = n as f64 / 2.0;
            let b = vector_choice_b(&s.system(), s.vector()).unwrap();
            assert!(close3(b, [(j / 2.0).sqrt(), (j / 2.0).sqrt(), j]));
            assert!((magnitude_sq(&b) - j * (j + 1.0)).abs() < TOL);
        }
    }

    #[test]
    fn negative_projection_keeps_sign() {
        let down = StateVector::basis(2, 1).unwrap();
        let b = vector_choice_b(&HALF, &down).unwrap();
        assert!(close3(b, [0.5, 0.5, -0.5]));
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_component(&HALF, &up(), Axis::Z).unwrap(),
            ComponentKind::Projection
        );
        assert_eq!(
            classify_component(&HALF, &up(), Axis::X).unwrap(),
            ComponentKind::Fluctuation
        );
        let singlet = two_spin_state(0, 0).unwrap();
        assert_eq!(
            classify_component(&singlet.system(), singlet.vector(), Axis::X).unwrap(),
            ComponentKind::Projection
        );
        // spin tilted away from every axis has a mixed x component
        let tilted = StateVector::from_real(&[1.0, 0.5]).unwrap();
        assert_eq!(
            classify_component(&HALF, &tilted, Axis::X).unwrap(),
            ComponentKind::Mixed
        );
    }

    #[test]
    fn report_for_aligned_pair() {
        let r = vector_sum_report(&stretched_state(SpinSystem::new(2).unwrap())).unwrap();
        for sv in &r.site_vectors {
            assert!(close3(sv.components, [0.5, 0.5, 0.5]));
            assert_eq!(sv.z_sign, ZSign::FromProjection);
        }
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close3(r.composed, [r2, r2, 1.0]));
        assert!((r.composed_magnitude_sq - 2.0).abs() < TOL);
        assert!(close3(r.naive_sum, [1.0, 1.0, 1.0]));
        assert!((r.naive_magnitude_sq - 3.0).abs() < TOL);
        assert!(r.composition_verified);
    }

    #[test]
    fn report_for_singlet() {
        let r = vector_sum_report(&two_spin_state(0, 0).unwrap()).unwrap();
        assert!(close3(r.site_vectors[0].components, [0.5, 0.5, 0.5]));
        assert!(close3(r.site_vectors[1].components, [0.5, 0.5, -0.5]));
        assert_eq!(r.site_vectors[1].z_sign, ZSign::Alternating);
        assert!(close3(r.composed, [0.0; 3]));
        assert!(r.magnitude_b_sq.abs() < TOL);
        assert!(r.effective_unit.is_none());
        assert!(r.composition_verified);
    }

    #[test]
    fn effective_unit_values() {
        assert!((effective_unit(HALF).unwrap() - 3f64.sqrt()).abs() < TOL);
        assert!((effective_unit(SpinQuantumNumber::from_twice(2)).unwrap() - 2f64.sqrt()).abs() < TOL);
        assert!((effective_unit(SpinQuantumNumber::from_twice(100)).unwrap() - 1.02f64.sqrt()).abs() < TOL);
        assert_eq!(effective_unit(SpinQuantumNumber::from_twice(0)), Err(Error::ZeroSpin));
    }

    #[test]
    fn single_spin_reports() {
        let r = single_spin_report(HALF, 1).unwrap();
        assert!(close3(r.choice_b, [0.5, 0.5, 0.5]));
        assert!((r.magnitude_b_sq - 0.75).abs() < TOL);
        assert!((r.magnitude_a_sq - 0.25).abs() < TOL);
        let r = single_spin_report(SpinQuantumNumber::from_twice(2), 0).unwrap();
        assert!((r.magnitude_b_sq - 2.0).abs() < TOL);
        assert!(single_spin_report(HALF, 3).is_err());
    }
}
