//! Coupled eigenstates `|j, m>` of N spin-1/2 particles.
//!
//! The maximal multiplet `j = N/2` is reached from the all-up state by
//! repeated lowering. Lower multiplets are degenerate, so they are built by
//! adding one spin-1/2 at a time along a coupling path: the list of
//! intermediate `2j` values after sites 1, 2, ..., N. Every constructed state
//! carries the global phase that makes its first nonzero amplitude real and
//! positive.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::composite::{apply_total_lowering, SpinSystem};
use crate::error::{Error, Result};
use crate::linalg::{StateVector, ONE, ZERO};
use crate::spin_ops::half_integer_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Explicit,
    Lowering,
    SequentialCoupling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupledState {
    system: SpinSystem,
    twice_j: u32,
    twice_m: i32,
    vector: StateVector,
    provenance: Provenance,
    coupling_path: Vec<u32>,
}

impl CoupledState {
    pub fn system(&self) -> SpinSystem {
        self.system
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn twice_m(&self) -> i32 {
        self.twice_m
    }

    pub fn j(&self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    pub fn m(&self) -> f64 {
        f64::from(self.twice_m) / 2.0
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Intermediate `2j` values; empty unless built by sequential coupling.
    pub fn coupling_path(&self) -> &[u32] {
        &self.coupling_path
    }

    /// Human-readable label such as `|3/2, 1/2>`.
    pub fn label(&self) -> String {
        format!(
            "|{}, {}>",
            half_integer_string(i64::from(self.twice_j)),
            half_integer_string(i64::from(self.twice_m))
        )
    }
}

/// Checks that `(2j, 2m)` labels a multiplet present in `n_sites` spin-1/2.
pub fn check_admissible(n_sites: usize, twice_j: u32, twice_m: i32) -> Result<()> {
    let n = n_sites as u32;
    if twice_j > n || !(n - twice_j).is_multiple_of(2) {
        return Err(Error::InvalidQuantumNumbers(format!(
            "j = {} cannot be formed from {n_sites} spin-1/2 particles",
            half_integer_string(i64::from(twice_j))
        )));
    }
    if twice_m.unsigned_abs() > twice_j || (twice_j as i32 - twice_m) % 2 != 0 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "m = {} violates |m| <= j with j = {}",
            half_integer_string(i64::from(twice_m)),
            half_integer_string(i64::from(twice_j))
        )));
    }
    Ok(())
}

/// All spins up: `j = m = N/2`.
pub fn stretched_state(system: SpinSystem) -> CoupledState {
    let n = system.n_sites() as u32;
    CoupledState {
        system,
        twice_j: n,
        twice_m: n as i32,
        vector: StateVector::basis(system.dim(), 0).expect("system dimension within cap"),
        provenance: Provenance::Explicit,
        coupling_path: Vec::new(),
    }
}

/// Applies `J_-` and renormalizes by `sqrt(j(j+1) - m(m-1))`.
pub fn lower(state: &CoupledState) -> Result<CoupledState> {
    let tj = f64::from(state.twice_j);
    let tm = f64::from(state.twice_m);
    if state.twice_m <= -(state.twice_j as i32) {
        return Err(Error::Annihilated);
    }
    let coeff = ((tj * (tj + 2.0) - tm * (tm - 2.0)) / 4.0).sqrt();
    let lowered = apply_total_lowering(state.system, state.vector.amplitudes())?;
    let inv = 1.0 / coeff;
    let vector = StateVector::new(lowered.into_iter().map(|a| a * inv).collect())?.with_canonical_phase();
    let provenance = match state.provenance {
        Provenance::SequentialCoupling => Provenance::SequentialCoupling,
        _ => Provenance::Lowering,
    };
    Ok(CoupledState {
        system: state.system,
        twice_j: state.twice_j,
        twice_m: state.twice_m - 2,
        vector,
        provenance,
        coupling_path: state.coupling_path.clone(),
    })
}

/// The two-spin triplet and singlet written out explicitly.
pub fn two_spin_state(twice_j: u32, twice_m: i32) -> Result<CoupledState> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let amps: [f64; 4] = match (twice_j, twice_m) {
        (2, 2) => [1.0, 0.0, 0.0, 0.0],
        (2, 0) => [0.0, r, r, 0.0],
        (2, -2) => [0.0, 0.0, 0.0, 1.0],
        (0, 0) => [0.0, r, -r, 0.0],
        _ => {
            return Err(Error::InvalidQuantumNumbers(format!(
                "two spin-1/2 couple to (j, m) in {{(1,1), (1,0), (1,-1), (0,0)}}, got ({}, {})",
                half_integer_string(i64::from(twice_j)),
                half_integer_string(i64::from(twice_m))
            )))
        }
    };
    Ok(CoupledState {
        system: SpinSystem::new(2)?,
        twice_j,
        twice_m,
        vector: StateVector::from_real(&amps)?,
        provenance: Provenance::Explicit,
        coupling_path: Vec::new(),
    })
}

/// Clebsch-Gordan coefficient `<j1 m1; 1/2 m2 | J M>` in the Condon-Shortley
/// convention. All arguments are doubled. Returns exactly zero when a
/// selection rule fails; errors if `j2 != 1/2`.
pub fn cg_coefficient(
    twice_j1: u32,
    twice_m1: i32,
    twice_j2: u32,
    twice_m2: i32,
    twice_big_j: u32,
    twice_big_m: i32,
) -> Result<f64> {
    if twice_j2 != 1 {
        return Err(Error::UnsupportedCoupling(twice_j2));
    }
    let tj1 = twice_j1 as i32;
    let tbj = twice_big_j as i32;
    let valid = twice_m2.abs() == 1
        && twice_m1.abs() <= tj1
        && (tj1 - twice_m1) % 2 == 0
        && twice_big_m == twice_m1 + twice_m2
        && twice_big_m.abs() <= tbj
        && (tbj == tj1 + 1 || tbj == tj1 - 1);
    if !valid {
        return Ok(0.0);
    }
    let tm = f64::from(twice_big_m);
    let denom = 2.0 * (f64::from(tj1) + 1.0);
    // (j1 + M + 1/2) / (2 j1 + 1) and (j1 - M + 1/2) / (2 j1 + 1)
    let plus = (f64::from(tj1) + tm + 1.0) / denom;
    let minus = (f64::from(tj1) - tm + 1.0) / denom;
    let value = match (tbj > tj1, twice_m2 > 0) {
        (true, true) => plus.sqrt(),
        (true, false) => minus.sqrt(),
        (false, true) => -minus.sqrt(),
        (false, false) => plus.sqrt(),
    };
    Ok(value)
}

/// Path that stays maximal as long as possible and then descends to `2j`.
pub fn canonical_path(n_sites: usize, twice_j: u32) -> Vec<u32> {
    let n = n_sites as u32;
    let peak = (n + twice_j) / 2;
    (1..=peak).chain((twice_j..peak).rev()).collect()
}

pub fn validate_path(n_sites: usize, twice_j: u32, path: &[u32]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidPath(msg));
    if path.len() != n_sites {
        return bad(format!("expected {n_sites} entries, got {}", path.len()));
    }
    if path[0] != 1 {
        return bad(format!("first entry must be 1 (a single spin-1/2), got {}", path[0]));
    }
    for (k, pair) in path.windows(2).enumerate() {
        if pair[1] + 1 != pair[0] && pair[1] != pair[0] + 1 {
            return bad(format!(
                "step {} -> {} at site {} must change 2j by exactly 1",
                pair[0],
                pair[1],
                k + 2
            ));
        }
    }
    if *path.last().unwrap() != twice_j {
        return bad(format!(
            "path ends at 2j = {}, expected {twice_j}",
            path.last().unwrap()
        ));
    }
    Ok(())
}

/// Every valid coupling path for `n_sites` spins, in lexicographic order
/// with higher intermediate `j` first.
pub fn enumerate_paths(n_sites: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, n_sites: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n_sites {
            out.push(prefix.clone());
            return;
        }
        let last = *prefix.last().unwrap();
        prefix.push(last + 1);
        extend(prefix, n_sites, out);
        prefix.pop();
        if last > 0 {
            prefix.push(last - 1);
            extend(prefix, n_sites, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n_sites > 0 {
        extend(&mut vec![1], n_sites, &mut out);
    }
    out
}

/// Builds `|j, m>` along `path` by successive spin-1/2 couplings.
fn couple_along(path: &[u32], twice_m: i32) -> Result<Vec<Complex64>> {
    // level[k] holds the multiplet of the first sites, indexed by (2j - 2m)/2.
    let mut level: Vec<Vec<Complex64>> = vec![vec![ONE, ZERO], vec![ZERO, ONE]];
    for (&prev_tj, &tj) in path.iter().zip(&path[1..]) {
        let prev_tj_i = prev_tj as i32;
        let tj_i = tj as i32;
        let prev_dim = level[0].len();
        let mut next = Vec::with_capacity(tj as usize + 1);
        for k in 0..=tj as usize {
            let tm = tj_i - 2 * k as i32;
            let mut amps = vec![ZERO; prev_dim * 2];
            for (bit, tm2) in [(0usize, 1i32), (1, -1)] {
                let tm1 = tm - tm2;
                if tm1.abs() > prev_tj_i {
                    continue;
                }
                let c = cg_coefficient(prev_tj, tm1, 1, tm2, tj, tm)?;
                let prev = &level[((prev_tj_i - tm1) / 2) as usize];
                for (idx, &a) in prev.iter().enumerate() {
                    amps[2 * idx + bit] += a * c;
                }
            }
            next.push(amps);
        }
        level = next;
    }
    let tj = *path.last().unwrap() as i32;
    Ok(level.swap_remove(((tj - twice_m) / 2) as usize))
}

/// `|j, m>` of `system`. The maximal multiplet comes from the lowering
/// chain; other multiplets follow `path`, or [`canonical_path`] if `None`.
pub fn coupled_state(system: SpinSystem, twice_j: u32, twice_m: i32, path: Option<&[u32]>) -> Result<CoupledState> {
    let n = system.n_sites();
    check_admissible(n, twice_j, twice_m)?;
    if let Some(p) = path {
        validate_path(n, twice_j, p)?;
    }

    if twice_j as usize == n {
        let mut state = stretched_state(system);
        while state.twice_m > twice_m {
            state = lower(&state)?;
        }
        state.provenance = Provenance::Lowering;
        return Ok(state);
    }

    let path = path.map_or_else(|| canonical_path(n, twice_j), <[u32]>::to_vec);
    let amps = couple_along(&path, twice_m)?;
    Ok(CoupledState {
        system,
        twice_j,
        twice_m,
        vector: StateVector::new(amps)?.with_canonical_phase(),
        provenance: Provenance::SequentialCoupling,
        coupling_path: path,
    })
}

/// The full coupled basis of `system`: every path and every `m`.
pub fn coupled_basis(system: SpinSystem) -> Result<Vec<CoupledState>> {
    let mut out = Vec::with_capacity(system.dim());
    for path in enumerate_paths(system.n_sites()) {
        let tj = *path.last().unwrap();
        for k in 0..=tj {
            let tm = tj as i32 - 2 * k as i32;
            let explicit = if tj as usize == system.n_sites() {
                None
            } else {
                Some(path.as_slice())
            };
            out.push(coupled_state(system, tj, tm, explicit)?);
        }
    }
    Ok(out)
}
