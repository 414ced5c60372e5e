//! Banded complex matrices.
//!
//! Every truncated operator in this crate lives in this type: a dense
//! row-major store with bandwidth metadata and the invariant that entries
//! outside the band are exactly zero. The convention throughout is
//! `entry(r, c)` = coefficient of `e_{r+1}` in `H e_{c+1}` (indices are
//! zero-based in code; basis vectors are one-based).
//!
//! Matrices are square, or "exact-image" rectangular with
//! `rows == cols + lower_bandwidth`. The rectangular form keeps the rows
//! below the square truncation, so column norms equal the untruncated
//! image norms for band-limited operators.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float as _;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct BandedComplexMatrix {
    rows: usize,
    cols: usize,
    lower_bw: usize,
    upper_bw: usize,
    data: Vec<Complex64>,
}

impl BandedComplexMatrix {
    /// Zero matrix with the given shape and bandwidths.
    ///
    /// Shapes are restricted to square or exact-image rectangular
    /// (`rows == cols + lower_bw`).
    pub fn zeros(rows: usize, cols: usize, lower_bw: usize, upper_bw: usize) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidTruncation);
        }
        if rows != cols && rows != cols + lower_bw {
            return Err(Error::DimensionMismatch(
                "matrix must be square or exact-image rectangular",
            ));
        }
        Ok(Self {
            rows,
            cols,
            lower_bw,
            upper_bw,
            data: vec![Complex64::ZERO; rows * cols],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.lower_bw
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.upper_bw
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when `(r, c)` lies inside the band.
    pub fn in_band(&self, r: usize, c: usize) -> bool {
        r <= c + self.lower_bw && c <= r + self.upper_bw
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c]
    }

    /// Writes an entry. Panics on a nonzero write outside the band: the
    /// band metadata is part of the type's contract.
    pub fn set(&mut self, r: usize, c: usize, value: Complex64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        assert!(
            self.in_band(r, c) || value == Complex64::ZERO,
            "nonzero write outside the band at ({r}, {c})"
        );
        self.data[r * self.cols + c] = value;
    }

    /// Row-major dense view of the entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// `y = M u` exploiting the band limits.
    pub fn matvec(&self, u: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        if u.len() != self.cols {
            return Err(Error::DimensionMismatch("matvec operand length"));
        }
        let mut y = vec![Complex64::ZERO; self.rows];
        for (r, yr) in y.iter_mut().enumerate() {
            let lo = r.saturating_sub(self.lower_bw);
            let hi = (r + self.upper_bw + 1).min(self.cols);
            let row = &self.data[r * self.cols + lo..r * self.cols + hi];
            let mut acc = Complex64::ZERO;
            for (m, uc) in row.iter().zip(&u[lo..hi]) {
                acc += m * uc;
            }
            *yr = acc;
        }
        Ok(y)
    }

    /// `self += factor * other`; the band of `other` must fit inside ours.
    pub fn add_scaled_assign(&mut self, other: &Self, factor: Complex64) -> Result<(), Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("add_scaled_assign shapes"));
        }
        if other.lower_bw > self.lower_bw || other.upper_bw > self.upper_bw {
            return Err(Error::DimensionMismatch("add_scaled_assign bandwidths"));
        }
        for (dst, src) in self.data.iter_mut().zip(other.data.iter()) {
            *dst += factor * src;
        }
        Ok(())
    }

    /// Copies `block` into the submatrix whose top-left corner is
    /// `(row_offset, col_offset)`. The target band must admit every
    /// in-band position of the block.
    pub fn set_block(
        &mut self,
        row_offset: usize,
        col_offset: usize,
        block: &Self,
    ) -> Result<(), Error> {
        if row_offset + block.rows > self.rows || col_offset + block.cols > self.cols {
            return Err(Error::DimensionMismatch("set_block placement"));
        }
        for r in 0..block.rows {
            let lo = r.saturating_sub(block.lower_bw);
            let hi = (r + block.upper_bw + 1).min(block.cols);
            for c in lo..hi {
                let v = block.data[r * block.cols + c];
                if v != Complex64::ZERO {
                    self.set(row_offset + r, col_offset + c, v);
                }
            }
        }
        Ok(())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `||M - M*||_F` for square matrices.
    pub fn hermitian_defect(&self) -> Result<f64, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("hermitian defect needs a square matrix"));
        }
        let n = self.rows;
        let mut acc = 0.0;
        for r in 0..n {
            for c in r..n {
                let d = self.data[r * n + c] - self.data[c * n + r].conj();
                acc += d.norm_sqr();
                if c != r {
                    // the (c, r) defect is the conjugate of the (r, c) one
                    acc += d.norm_sqr();
                }
            }
        }
        Ok(acc.sqrt())
    }

    /// Hermitian up to the working-precision threshold
    /// `||M - M*||_F <= tol * ||M||_F` (zero matrices count as Hermitian).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        match self.hermitian_defect() {
            Ok(defect) => defect <= tol * self.frobenius_norm(),
            Err(_) => false,
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols))
            .map(|k| self.data[k * self.cols + k])
            .sum()
    }
}
