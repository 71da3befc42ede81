//! Spin operators for a single particle of arbitrary spin j.
//!
//! The basis is ordered by descending m, so index `k` holds `m = j - k`.
//! Ladder matrix elements follow the Condon-Shortley convention (real and
//! non-negative).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I, ZERO};

/// Cartesian component of an angular momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Error::InvalidQuantumNumbers(format!(
                "unknown axis {other:?}, expected x, y or z"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// Angular momentum quantum number stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinQuantumNumber(u32);

impl SpinQuantumNumber {
    pub const HALF: SpinQuantumNumber = SpinQuantumNumber(1);

    pub fn from_twice(twice_j: u32) -> Self {
        SpinQuantumNumber(twice_j)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `2j + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `j(j+1)`.
    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    /// Allowed `2m` values in basis order (descending).
    pub fn twice_m_values(self) -> impl Iterator<Item = i32> {
        let tj = self.0 as i32;
        (0..=self.0 as i32).map(move |k| tj - 2 * k)
    }

    /// Basis index of `2m`, or `None` if `|m| > j` or the parity is wrong.
    pub fn index_of(self, twice_m: i32) -> Option<usize> {
        let tj = self.0 as i32;
        if twice_m.abs() > tj || (tj - twice_m) % 2 != 0 {
            return None;
        }
        Some(((tj - twice_m) / 2) as usize)
    }
}

impl fmt::Display for SpinQuantumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_half_integer(i64::from(self.0), f)
    }
}

impl FromStr for SpinQuantumNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let twice = parse_twice(s)?;
        u32::try_from(twice)
            .map(SpinQuantumNumber)
            .map_err(|_| Error::InvalidQuantumNumbers(format!("j must be non-negative, got {s}")))
    }
}

/// Formats `twice / 2` as an integer or a fraction like `3/2`.
pub fn fmt_half_integer(twice: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if twice % 2 == 0 {
        write!(f, "{}", twice / 2)
    } else {
        write!(f, "{twice}/2")
    }
}

pub fn half_integer_string(twice: i64) -> String {
    struct Half(i64);
    impl fmt::Display for Half {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_half_integer(self.0, f)
        }
    }
    Half(twice).to_string()
}

/// Parses `"3/2"`, `"-1/2"`, `"1"` or `"0.5"` into twice the value.
pub fn parse_twice(s: &str) -> Result<i64> {
    let s = s.trim();
    let bad = || Error::InvalidQuantumNumbers(format!("{s:?} is not an integer or half-integer"));
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        return match den {
            1 => Ok(2 * num),
            2 => Ok(num),
            _ => Err(bad()),
        };
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(2 * n);
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    let twice = 2.0 * x;
    if (twice - twice.round()).abs() > 1e-9 || !twice.is_finite() {
        return Err(bad());
    }
    Ok(twice.round() as i64)
}

/// `S_z = diag(j, j-1, ..., -j)`.
pub fn build_sz(j: SpinQuantumNumber) -> ComplexMatrix {
    let diag: Vec<Complex64> = j
        .twice_m_values()
        .map(|tm| Complex64::new(f64::from(tm) / 2.0, 0.0))
        .collect();
    ComplexMatrix::from_diag(&diag).expect("spin dimension within cap")
}

/// Matrix element `<j, m+1| S_+ |j, m>` for `2m = twice_m`.
pub fn raising_element(j: SpinQuantumNumber, twice_m: i32) -> f64 {
    let tj = f64::from(j.twice());
    let tm = f64::from(twice_m);
    // j(j+1) - m(m+1) in quarter units.
    ((tj * (tj + 2.0) - tm * (tm + 2.0)) / 4.0).max(0.0).sqrt()
}

/// Matrix element `<j, m-1| S_- |j, m>` for `2m = twice_m`.
pub fn lowering_element(j: SpinQuantumNumber, twice_m: i32) -> f64 {
    raising_element(j, twice_m - 2)
}

pub fn build_ladder(j: SpinQuantumNumber, direction: Ladder) -> ComplexMatrix {
    let dim = j.dim();
    let mut m = ComplexMatrix::zeros(dim, dim).expect("spin dimension within cap");
    for (k, tm) in j.twice_m_values().enumerate() {
        match direction {
            Ladder::Raise if k > 0 => {
                m[(k - 1, k)] = Complex64::new(raising_element(j, tm), 0.0);
            }
            Ladder::Lower if k + 1 < dim => {
                m[(k + 1, k)] = Complex64::new(lowering_element(j, tm), 0.0);
            }
            _ => {}
        }
    }
    m
}

/// `S_x = (S_+ + S_-) / 2`.
pub fn build_sx(j: SpinQuantumNumber) -> ComplexMatrix {
    let up = build_ladder(j, Ladder::Raise);
    let down = build_ladder(j, Ladder::Lower);
    (&up + &down).scale(Complex64::new(0.5, 0.0))
}

/// `S_y = (S_+ - S_-) / 2i`.
pub fn build_sy(j: SpinQuantumNumber) -> ComplexMatrix {
    let up = build_ladder(j, Ladder::Raise);
    let down = build_ladder(j, Ladder::Lower);
    (&up - &down).scale(-I * 0.5)
}

pub fn build_component(j: SpinQuantumNumber, axis: Axis) -> ComplexMatrix {
    match axis {
        Axis::X => build_sx(j),
        Axis::Y => build_sy(j),
        Axis::Z => build_sz(j),
    }
}

/// The 2x2 spin-1/2 component matrices, indexed by [`Axis::index`].
pub(crate) fn spin_half_elements(axis: Axis) -> [[Complex64; 2]; 2] {
    let h = 0.5;
    match axis {
        Axis::X => [[ZERO, Complex64::new(h, 0.0)], [Complex64::new(h, 0.0), ZERO]],
        Axis::Y => [[ZERO, -I * h], [I * h, ZERO]],
        Axis::Z => [[Complex64::new(h, 0.0), ZERO], [ZERO, Complex64::new(-h, 0.0)]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expectation, StateVector, ALGEBRA_TOL, TOL};

    fn j(twice: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(twice)
    }

    fn real_diag(m: &ComplexMatrix) -> Vec<f64> {
        (0..m.rows()).map(|k| m[(k, k)].re).collect()
    }

    #[test]
    fn sz_diagonals() {
        assert_eq!(real_diag(&build_sz(j(1))), vec![0.5, -0.5]);
        assert_eq!(real_diag(&build_sz(j(2))), vec![1.0, 0.0, -1.0]);
        assert_eq!(real_diag(&build_sz(j(3))), vec![1.5, 0.5, -0.5, -1.5]);
    }

    #[test]
    fn ladder_elements() {
        let raise = build_ladder(j(1), Ladder::Raise);
        let expected = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(raise.max_abs_diff(&expected) < ALGEBRA_TOL);

        // j = 1: S_- |1,0> = sqrt(2) |1,-1>
        let lower = build_ladder(j(2), Ladder::Lower);
        assert!((lower[(2, 1)].re - 2f64.sqrt()).abs() < ALGEBRA_TOL);

        // j = 3/2: S_- |3/2,3/2> = sqrt(3) |3/2,1/2>
        let lower = build_ladder(j(3), Ladder::Lower);
        assert!((lower[(1, 0)].re - 3f64.sqrt()).abs() < ALGEBRA_TOL);
    }

    #[test]
    fn ladder_operators_are_adjoint_pairs() {
        for tj in 0..=8 {
            let up = build_ladder(j(tj), Ladder::Raise);
            let down = build_ladder(j(tj), Ladder::Lower);
            assert!(up.adjoint().max_abs_diff(&down) < ALGEBRA_TOL);
        }
    }

    #[test]
    fn spin_half_components() {
        let sx = build_sx(j(1));
        let expected = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap();
        assert!(sx.max_abs_diff(&expected) < ALGEBRA_TOL);

        let sy = build_sy(j(1));
        let expected = ComplexMatrix::from_row_major(2, 2, vec![ZERO, -I * 0.5, I * 0.5, ZERO]).unwrap();
        assert!(sy.max_abs_diff(&expected) < ALGEBRA_TOL);

        let up = StateVector::basis(2, 0).unwrap();
        let sx2 = &sx * &sx;
        assert!((expectation(&sx2, &up).unwrap().re - 0.25).abs() < TOL);

        for axis in Axis::ALL {
            let elems = spin_half_elements(axis);
            let dense = build_component(j(1), axis);
            for r in 0..2 {
                for c in 0..2 {
                    assert!((dense[(r, c)] - elems[r][c]).norm() < ALGEBRA_TOL);
                }
            }
        }
    }

    #[test]
    fn commutators_and_casimir() {
        for tj in 1..=8 {
            let (sx, sy, sz) = (build_sx(j(tj)), build_sy(j(tj)), build_sz(j(tj)));
            let pairs = [(&sx, &sy, &sz), (&sy, &sz, &sx), (&sz, &sx, &sy)];
            for (a, b, c) in pairs {
                let lhs = a.commutator(b).unwrap();
                assert!(lhs.max_abs_diff(&c.scale(I)) < ALGEBRA_TOL, "2j = {tj}");
            }
            let casimir = &(&(&sx * &sx) + &(&sy * &sy)) + &(&sz * &sz);
            let expected = ComplexMatrix::identity(j(tj).dim())
                .unwrap()
                .scale(Complex64::new(j(tj).casimir(), 0.0));
            assert!(casimir.max_abs_diff(&expected) < ALGEBRA_TOL, "2j = {tj}");
            for m in [&sx, &sy, &sz] {
                assert!(m.is_hermitian(ALGEBRA_TOL));
                assert!(m.trace().norm() < ALGEBRA_TOL);
            }
        }
    }

    #[test]
    fn spin_zero_is_trivial() {
        let sz = build_sz(j(0));
        assert_eq!((sz.rows(), sz.cols()), (1, 1));
        assert_eq!(build_sx(j(0))[(0, 0)], ZERO);
    }

    #[test]
    fn parse_quantum_numbers() {
        assert_eq!(parse_twice("3/2").unwrap(), 3);
        assert_eq!(parse_twice("-1/2").unwrap(), -1);
        assert_eq!(parse_twice("2").unwrap(), 4);
        assert_eq!(parse_twice("0.5").unwrap(), 1);
        assert!(parse_twice("1/3").is_err());
        assert!(parse_twice("abc").is_err());
        assert_eq!("1/2".parse::<SpinQuantumNumber>().unwrap(), j(1));
        assert!("-1".parse::<SpinQuantumNumber>().is_err());
        assert_eq!(j(3).to_string(), "3/2");
        assert_eq!(half_integer_string(-4), "-2");
    }

    #[test]
    fn index_of_m() {
        assert_eq!(j(3).index_of(3), Some(0));
        assert_eq!(j(3).index_of(-1), Some(2));
        assert_eq!(j(3).index_of(5), None);
        assert_eq!(j(3).index_of(0), None);
    }
}
