//! Operators on registers of N spin-1/2 particles.
//!
//! Two routes are provided for every single-site operator: a dense matrix
//! built from Kronecker products ([`embed`]), practical for small N, and a
//! streaming bit-indexed application ([`apply_site`]) that never forms the
//! full matrix. Sites are 1-based; site 1 is the most significant bit of the
//! basis index.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, norm_sqr, ComplexMatrix, Observable, StateVector, ONE, ZERO};
use crate::par;
use crate::spin_ops::{spin_half_elements, Axis};

/// Largest register the streaming path accepts.
pub const MAX_SITES: usize = 14;

/// Largest register for which dense `dim x dim` matrices are built.
pub const DENSE_MAX_SITES: usize = 10;

type Local = [[Complex64; 2]; 2];

/// `S_-` for a single spin-1/2.
const LOWERING: Local = [[ZERO, ZERO], [ONE, ZERO]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinSystem {
    n_sites: usize,
}

impl SpinSystem {
    pub fn new(n_sites: usize) -> Result<Self> {
        if n_sites == 0 || n_sites > MAX_SITES {
            return Err(Error::InvalidSiteCount {
                n: n_sites,
                max: MAX_SITES,
            });
        }
        Ok(SpinSystem { n_sites })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.n_sites {
            return Err(Error::SiteOutOfRange {
                site,
                n_sites: self.n_sites,
            });
        }
        Ok(())
    }

    fn check_amps(&self, amps: &[Complex64]) -> Result<()> {
        if amps.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: amps.len(),
            });
        }
        Ok(())
    }

    /// Bit mask selecting `site` in a basis index.
    fn mask(&self, site: usize) -> usize {
        1 << (self.n_sites - site)
    }

    /// `+1/2` or `-1/2`: the z projection of `site` in basis state `index`.
    pub fn site_projection(&self, index: usize, site: usize) -> f64 {
        if index & self.mask(site) == 0 {
            0.5
        } else {
            -0.5
        }
    }

    fn check_dense(&self) -> Result<()> {
        if self.n_sites > DENSE_MAX_SITES {
            return Err(Error::DimensionTooLarge {
                dim: self.dim(),
                max: 1 << DENSE_MAX_SITES,
            });
        }
        Ok(())
    }
}

fn local_elements(op: &ComplexMatrix) -> Result<Local> {
    if op.rows() != 2 || op.cols() != 2 {
        return Err(Error::NotSingleSite {
            expected: 2,
            rows: op.rows(),
            cols: op.cols(),
        });
    }
    Ok([[op[(0, 0)], op[(0, 1)]], [op[(1, 0)], op[(1, 1)]]])
}

/// Dense matrix `I x ... x op x ... x I` with `op` on `site`.
pub fn embed(op_single: &ComplexMatrix, site: usize, system: SpinSystem) -> Result<ComplexMatrix> {
    local_elements(op_single)?;
    system.check_site(site)?;
    system.check_dense()?;
    let left = ComplexMatrix::identity(1 << (site - 1))?;
    let right = ComplexMatrix::identity(1 << (system.n_sites - site))?;
    kron(&kron(&left, op_single)?, &right)
}

fn apply_local(elems: &Local, site: usize, system: SpinSystem, amps: &[Complex64]) -> Vec<Complex64> {
    let mask = system.mask(site);
    par::map_indexed(amps.len(), |i| {
        let b = usize::from(i & mask != 0);
        elems[b][0] * amps[i & !mask] + elems[b][1] * amps[i | mask]
    })
}

fn apply_local_sum(elems: &Local, system: SpinSystem, amps: &[Complex64]) -> Vec<Complex64> {
    par::map_indexed(amps.len(), |i| {
        let mut acc = ZERO;
        for site in 1..=system.n_sites {
            let mask = system.mask(site);
            let b = usize::from(i & mask != 0);
            acc += elems[b][b] * amps[i] + elems[b][1 - b] * amps[i ^ mask];
        }
        acc
    })
}

/// Applies a 2x2 operator to one site of an amplitude vector without
/// building the embedded matrix. The result is not normalized.
pub fn apply_site(
    op_single: &ComplexMatrix,
    site: usize,
    system: SpinSystem,
    amps: &[Complex64],
) -> Result<Vec<Complex64>> {
    let elems = local_elements(op_single)?;
    system.check_site(site)?;
    system.check_amps(amps)?;
    Ok(apply_local(&elems, site, system, amps))
}

/// Spin component `axis` of one site, `S_{axis,site}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteOperator {
    system: SpinSystem,
    site: usize,
    axis: Axis,
}

impl SiteOperator {
    pub fn new(system: SpinSystem, site: usize, axis: Axis) -> Result<Self> {
        system.check_site(site)?;
        Ok(SiteOperator { system, site, axis })
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn dense(&self) -> Result<ComplexMatrix> {
        embed(
            &crate::spin_ops::build_component(crate::spin_ops::SpinQuantumNumber::HALF, self.axis),
            self.site,
            self.system,
        )
    }
}

impl Observable for SiteOperator {
    fn dim(&self) -> usize {
        self.system.dim()
    }

    fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        self.system.check_amps(amps)?;
        Ok(apply_local(
            &spin_half_elements(self.axis),
            self.site,
            self.system,
            amps,
        ))
    }
}

/// Total spin component `J_axis = sum_i S_{axis,i}`, applied by streaming.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TotalComponent {
    system: SpinSystem,
    axis: Axis,
}

impl TotalComponent {
    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// Dense matrix form; only for registers up to [`DENSE_MAX_SITES`].
    pub fn dense(&self) -> Result<ComplexMatrix> {
        self.system.check_dense()?;
        let mut total = ComplexMatrix::zeros(self.system.dim(), self.system.dim())?;
        for site in 1..=self.system.n_sites {
            total = total.try_add(&SiteOperator::new(self.system, site, self.axis)?.dense()?)?;
        }
        Ok(total)
    }
}

impl Observable for TotalComponent {
    fn dim(&self) -> usize {
        self.system.dim()
    }

    fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        self.system.check_amps(amps)?;
        Ok(apply_local_sum(&spin_half_elements(self.axis), self.system, amps))
    }
}

pub fn total_component(axis: Axis, system: SpinSystem) -> TotalComponent {
    TotalComponent { system, axis }
}

/// `J_- = sum_i S_{-,i}` applied to `amps`.
pub fn apply_total_lowering(system: SpinSystem, amps: &[Complex64]) -> Result<Vec<Complex64>> {
    system.check_amps(amps)?;
    Ok(apply_local_sum(&LOWERING, system, amps))
}

/// `<J^2> = sum_a |J_a psi|^2` on a normalized state.
pub fn total_j_squared(system: SpinSystem, state: &StateVector) -> Result<f64> {
    system.check_amps(state.amplitudes())?;
    Axis::ALL.iter().try_fold(0.0, |acc, &axis| {
        let applied = total_component(axis, system).apply(state.amplitudes())?;
        Ok(acc + norm_sqr(&applied))
    })
}

/// Dense `J^2`, for oracle checks on small registers.
pub fn dense_j_squared(system: SpinSystem) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(system.dim(), system.dim())?;
    for axis in Axis::ALL {
        let j = total_component(axis, system).dense()?;
        out = out.try_add(&j.matmul(&j)?)?;
    }
    Ok(out)
}
