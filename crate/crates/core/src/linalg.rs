//! Dense complex linear algebra over small product spaces.
//!
//! Matrices are row-major with zero-based indices. For a register of N sites,
//! basis index `k` is read as an N-bit pattern with site 1 in the most
//! significant bit, and bit value 0 meaning spin up.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest row or column count any dense construction may produce.
pub const MAX_DIM: usize = 1 << 14;

/// Tolerance used for normalization and general numerical comparisons.
pub const TOL: f64 = 1e-10;

/// Tolerance for exact algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Something that acts linearly on an amplitude vector.
///
/// Implemented by dense matrices and by the streaming site and total-spin
/// operators in [`crate::composite`].
pub trait Observable {
    /// Dimension of the space the operator acts on.
    fn dim(&self) -> usize;

    /// Applies the operator to `amps`; no normalization is performed.
    fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>>;
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dim(rows)?;
        check_dim(cols)?;
        Ok(ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, dim)?;
        for k in 0..dim {
            m[(k, k)] = ONE;
        }
        Ok(m)
    }

    pub fn from_diag(diag: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len(), diag.len())?;
        for (k, &d) in diag.iter().enumerate() {
            m[(k, k)] = d;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(rows)?;
        check_dim(cols)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Convenience constructor for literal real-valued matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_row_major(n_rows, n_cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![ZERO; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &ComplexMatrix) -> Result<Self> {
        let ab = self.matmul(other)?;
        let ba = other.matmul(self)?;
        ab.try_sub(&ba)
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|r| (r..self.cols).all(|c| (self[(r, c)] - self[(c, r)].conj()).norm() <= tol))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

// Operator forms panic on shape mismatch, like ndarray; use try_* to recover.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix shapes differ")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("inner dimensions differ")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Observable for ComplexMatrix {
    fn dim(&self) -> usize {
        self.cols
    }

    fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        if amps.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: amps.len(),
            });
        }
        Ok(self
            .data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(amps).map(|(&a, &x)| a * x).sum())
            .collect())
    }
}

/// Normalized complex amplitude vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes` and wraps them.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm <= f64::EPSILON || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let inv = 1.0 / norm;
        Ok(StateVector {
            amplitudes: amplitudes.into_iter().map(|a| a * inv).collect(),
        })
    }

    /// Wraps amplitudes that are already normalized within [`TOL`].
    pub fn from_normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let n2 = norm_sqr(&amplitudes);
        if (n2 - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `index` of a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Born probabilities of the computational basis states.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        max_abs_diff(&self.amplitudes, &other.amplitudes)
    }

    /// Multiplies by a unit phase so the first amplitude with modulus above
    /// [`TOL`] is real and positive.
    pub fn with_canonical_phase(mut self) -> Self {
        if let Some(lead) = self.amplitudes.iter().find(|a| a.norm() > TOL) {
            let phase = lead.conj() / lead.norm();
            for a in &mut self.amplitudes {
                *a *= phase;
            }
        }
        self
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    Ok(())
}

pub fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// `<a|b>`, conjugating the left argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Kronecker product; block `(r, c)` of the result is `a[r, c] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows.saturating_mul(b.rows);
    let cols = a.cols.saturating_mul(b.cols);
    let mut out = ComplexMatrix::zeros(rows, cols)?;
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let s = a[(ar, ac)];
            if s == ZERO {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = s * b[(br, bc)];
                }
            }
        }
    }
    Ok(out)
}

/// Unnormalized product `a * v`.
pub fn matvec(a: &ComplexMatrix, v: &StateVector) -> Result<Vec<Complex64>> {
    a.apply(v.amplitudes())
}

/// `<v|op|v>` for a square operator.
pub fn expectation<O: Observable + ?Sized>(op: &O, v: &StateVector) -> Result<Complex64> {
    let applied = op.apply(v.amplitudes())?;
    inner(v.amplitudes(), &applied)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sx_half() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap()
    }

    fn sz_half() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, -0.5]]).unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2).unwrap();
        let i4 = ComplexMatrix::identity(4).unwrap();
        assert_eq!(kron(&i2, &i2).unwrap(), i4);

        let expected = ComplexMatrix::from_diag(&[c(0.5), c(0.5), c(-0.5), c(-0.5)]).unwrap();
        assert!(kron(&sz_half(), &i2).unwrap().max_abs_diff(&expected) < ALGEBRA_TOL);
    }

    #[test]
    fn kron_of_transverse_spins_corner_entry() {
        let k = kron(&sx_half(), &sx_half()).unwrap();
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert!((k[(0, 3)] - c(0.25)).norm() < ALGEBRA_TOL);
        assert!((k[(3, 0)] - c(0.25)).norm() < ALGEBRA_TOL);
        assert!((k[(1, 2)] - c(0.25)).norm() < ALGEBRA_TOL);
        assert_eq!(k[(0, 0)], ZERO);
    }

    #[test]
    fn kron_rejects_oversized_products() {
        let big = ComplexMatrix::identity(1 << 8).unwrap();
        let small = ComplexMatrix::identity(1 << 7).unwrap();
        assert_eq!(
            kron(&big, &small).unwrap_err(),
            Error::DimensionTooLarge {
                dim: 1 << 15,
                max: MAX_DIM
            }
        );
    }

    #[test]
    fn matvec_examples() {
        let up = StateVector::basis(2, 0).unwrap();
        let down = StateVector::basis(2, 1).unwrap();

        let id = ComplexMatrix::identity(2).unwrap();
        assert_eq!(matvec(&id, &up).unwrap(), up.amplitudes());

        let v = matvec(&sz_half(), &up).unwrap();
        assert!(max_abs_diff(&v, &[c(0.5), ZERO]) < ALGEBRA_TOL);

        let v = matvec(&sx_half(), &up).unwrap();
        let half_down: Vec<_> = down.amplitudes().iter().map(|a| a * 0.5).collect();
        assert!(max_abs_diff(&v, &half_down) < ALGEBRA_TOL);

        let three = StateVector::basis(3, 0).unwrap();
        assert!(matches!(matvec(&id, &three), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn expectation_of_spin_up() {
        let up = StateVector::basis(2, 0).unwrap();
        assert!((expectation(&sz_half(), &up).unwrap() - c(0.5)).norm() < TOL);
        assert!(expectation(&sx_half(), &up).unwrap().norm() < TOL);
        let sx2 = &sx_half() * &sx_half();
        assert!((expectation(&sx2, &up).unwrap() - c(0.25)).norm() < TOL);
    }

    #[test]
    fn state_vector_normalization() {
        let v = StateVector::from_real(&[3.0, 4.0]).unwrap();
        assert!((norm_sqr(v.amplitudes()) - 1.0).abs() < TOL);
        assert_eq!(StateVector::from_real(&[0.0, 0.0]), Err(Error::ZeroNorm));
        assert!(matches!(
            StateVector::from_normalized(vec![ONE, ONE]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn canonical_phase_makes_leading_amplitude_positive() {
        let v = StateVector::new(vec![ZERO, -I, ONE]).unwrap().with_canonical_phase();
        let lead = v.amplitudes()[1];
        assert!(lead.im.abs() < ALGEBRA_TOL && lead.re > 0.0);
        assert!((v.amplitudes()[2] - Complex64::new(0.0, 1.0 / 2f64.sqrt())).norm() < ALGEBRA_TOL);
    }

    #[test]
    fn hermitian_check_and_adjoint() {
        let sy = ComplexMatrix::from_row_major(2, 2, vec![ZERO, -I * 0.5, I * 0.5, ZERO]).unwrap();
        assert!(sy.is_hermitian(ALGEBRA_TOL));
        assert!(sy.adjoint().max_abs_diff(&sy) < ALGEBRA_TOL);
        let raise = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(!raise.is_hermitian(ALGEBRA_TOL));
    }
}
