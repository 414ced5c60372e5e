//! Finite sections of the Bargmann-space operators.
//!
//! In the orthonormal basis `e_k = z^k / sqrt(k!)`, `k >= 1`, the ladder
//! operators act as `A e_k = sqrt(k) e_{k-1}` and `A* e_k = sqrt(k+1) e_{k+1}`,
//! so the compositions used in Reggeon field theory are:
//!
//! * `H0 = A*A`:   diagonal, `H0 e_k = k e_k`
//! * `S  = A*^2 A^2`: diagonal, `S e_k = k(k-1) e_k`
//! * `G  = A*^3 A^3`: diagonal, `G e_k = (k-2)(k-1)k e_k`
//! * `H1 = A*(A*+A)A`: tridiagonal with zero diagonal,
//!   `H1 e_k = k sqrt(k+1) e_{k+1} + (k-1) sqrt(k) e_{k-1}`
//!
//! plus the fractional power `H0^beta e_k = k^beta e_k`. Builders return
//! the compression onto `span{e_1..e_N}`; the tridiagonal builders can
//! instead return the `(N+1) x N` exact-image form that keeps the `e_{N+1}`
//! row, so column norms equal the untruncated image norms.
//!
//! `A` and `A*` are not exposed on their own: `e_1` leaves the space under
//! `A` (constants are excluded by the `phi(0) = 0` constraint), while every
//! composition above is well defined on each basis vector.

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float as _;

use crate::error::Error;
use crate::matrix::BandedComplexMatrix;

/// Couplings of the scalar Gribov operator
/// `lambda'' G + lambda' S + mu H0^beta + i lambda H1`.
///
/// `lambda2` is the magic coupling, `lambda1` the four coupling, `lambda`
/// the triple coupling and `mu` the intercept; `beta` is the exponent of
/// the fractional diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PomeronParams {
    pub lambda2: f64,
    pub lambda1: f64,
    pub mu: f64,
    pub lambda: f64,
    pub beta: f64,
}

impl PomeronParams {
    /// Checks the full invariants: nonzero magic coupling, `beta` in the
    /// open interval `(0, 3)`, everything finite.
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.lambda2.is_finite()
            && self.lambda1.is_finite()
            && self.mu.is_finite()
            && self.lambda.is_finite())
        {
            return Err(Error::InvalidParameter("couplings must be finite"));
        }
        if self.lambda2 == 0.0 {
            return Err(Error::InvalidParameter("magic coupling lambda2 must be nonzero"));
        }
        check_beta_open(self.beta)?;
        Ok(())
    }
}

fn check_beta_open(beta: f64) -> Result<(), Error> {
    if !(beta.is_finite() && beta > 0.0 && beta < 3.0) {
        return Err(Error::InvalidParameter("beta must lie in (0, 3)"));
    }
    Ok(())
}

/// `k^beta` with exact integer arithmetic for the integer exponents that
/// occur throughout (`beta` = 1, 2, 3), so those diagonals carry no
/// rounding at all.
fn pow_diag(k: usize, beta: f64) -> f64 {
    let ki = k as i64;
    if beta == 1.0 {
        ki as f64
    } else if beta == 2.0 {
        (ki * ki) as f64
    } else if beta == 3.0 {
        (ki * ki * ki) as f64
    } else {
        (k as f64).powf(beta)
    }
}

fn diagonal(n: usize, f: impl Fn(usize) -> f64) -> Result<BandedComplexMatrix, Error> {
    if n == 0 {
        return Err(Error::InvalidTruncation);
    }
    let mut m = BandedComplexMatrix::zeros(n, n, 0, 0)?;
    for k in 1..=n {
        m.set(k - 1, k - 1, Complex64::new(f(k), 0.0));
    }
    Ok(m)
}

/// Number operator `H0`: `diag(1, 2, ..., N)`.
pub fn build_h0(n: usize) -> Result<BandedComplexMatrix, Error> {
    diagonal(n, |k| k as f64)
}

/// Fractional diagonal `H0^beta`: `diag(k^beta)`. Accepts `beta` in
/// `(0, 3]`; the closed endpoint admits the cubic comparison operator.
pub fn build_h0_beta(n: usize, beta: f64) -> Result<BandedComplexMatrix, Error> {
    if !(beta.is_finite() && beta > 0.0 && beta <= 3.0) {
        return Err(Error::InvalidParameter("beta must lie in (0, 3]"));
    }
    diagonal(n, |k| pow_diag(k, beta))
}

/// `S = A*^2 A^2`: `diag(k(k-1))`.
pub fn build_s(n: usize) -> Result<BandedComplexMatrix, Error> {
    diagonal(n, |k| (k as i64 * (k as i64 - 1)) as f64)
}

/// `G = A*^3 A^3`: `diag((k-2)(k-1)k)`; zero at `k = 1, 2`.
pub fn build_g(n: usize) -> Result<BandedComplexMatrix, Error> {
    diagonal(n, |k| {
        let k = k as i64;
        ((k - 2) * (k - 1) * k) as f64
    })
}

/// `H1 = A*(A*+A)A`: real tridiagonal with zero diagonal,
/// sub-entry `(k+1, k) = k sqrt(k+1)`, super-entry `(k-1, k) = (k-1) sqrt(k)`
/// (one-based). With `exact_image` the result is `(N+1) x N`, keeping the
/// `e_{N+1}` row so `||H1 e_k||` is exact for every column.
pub fn build_h1(n: usize, exact_image: bool) -> Result<BandedComplexMatrix, Error> {
    if n == 0 {
        return Err(Error::InvalidTruncation);
    }
    let rows = if exact_image { n + 1 } else { n };
    let mut m = BandedComplexMatrix::zeros(rows, n, 1, 1)?;
    for k in 1..=n {
        if k < rows {
            let v = k as f64 * ((k + 1) as f64).sqrt();
            m.set(k, k - 1, Complex64::new(v, 0.0));
        }
        if k >= 2 {
            let v = (k - 1) as f64 * (k as f64).sqrt();
            m.set(k - 2, k - 1, Complex64::new(v, 0.0));
        }
    }
    Ok(m)
}

/// Scalar Gribov operator `lambda'' G + lambda' S + mu H0^beta + i lambda H1`,
/// tridiagonal. `lambda2 = 0` is permitted here: it yields the pure
/// perturbation `lambda' S + i lambda H1 + mu H0^beta` that appears off the
/// diagonal of the block matrices.
pub fn build_scalar_gribov(
    n: usize,
    params: &PomeronParams,
    exact_image: bool,
) -> Result<BandedComplexMatrix, Error> {
    if n == 0 {
        return Err(Error::InvalidTruncation);
    }
    if !(params.lambda2.is_finite()
        && params.lambda1.is_finite()
        && params.mu.is_finite()
        && params.lambda.is_finite())
    {
        return Err(Error::InvalidParameter("couplings must be finite"));
    }
    check_beta_open(params.beta)?;

    let rows = if exact_image { n + 1 } else { n };
    let mut m = BandedComplexMatrix::zeros(rows, n, 1, 1)?;
    for k in 1..=n {
        let ki = k as i64;
        let diag = params.lambda2 * (((ki - 2) * (ki - 1) * ki) as f64)
            + params.lambda1 * ((ki * (ki - 1)) as f64)
            + params.mu * pow_diag(k, params.beta);
        m.set(k - 1, k - 1, Complex64::new(diag, 0.0));
        if k < rows {
            let v = params.lambda * k as f64 * ((k + 1) as f64).sqrt();
            m.set(k, k - 1, Complex64::new(0.0, v));
        }
        if k >= 2 {
            let v = params.lambda * (k - 1) as f64 * (k as f64).sqrt();
            m.set(k - 2, k - 1, Complex64::new(0.0, v));
        }
    }
    Ok(m)
}
