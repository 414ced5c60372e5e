//! Finite-section numerics for Gribov operator matrices on truncated
//! Bargmann spaces.
//!
//! The Bargmann space used here is the Hilbert space of entire functions
//! square-integrable against the Gaussian weight and vanishing at the
//! origin, with orthonormal basis `e_k = z^k / sqrt(k!)`, `k >= 1`. The
//! Reggeon-field-theory Hamiltonians ("Gribov operators") are polynomials
//! in the creation/annihilation pair `A*`, `A`; this crate builds their
//! finite sections `P_N H P_N` as banded complex matrices and provides the
//! machinery to probe their spectral behaviour:
//!
//! * [`bargmann`] — matrices of the ladder-operator compositions
//!   `H0 = A*A`, `S = A*^2 A^2`, `G = A*^3 A^3`, `H1 = A*(A*+A)A`, the
//!   fractional diagonal `H0^beta`, and the scalar Gribov combination
//!   `lambda'' G + lambda' S + mu H0^beta + i lambda H1`.
//! * [`block`] — assembly of the `n x n` block operator matrix with scaled
//!   copies of `G` on the diagonal and scalar Gribov perturbations off it.
//! * [`subordination`] — generalized-subordination certificates (sums of
//!   terms `b * ||S u||^p * ||u||^(1-p)`), their derivation from block
//!   couplings, numerical verification on trial vectors, and the closedness
//!   and self-adjointness margin conditions.
//! * [`eigen`] — a dense complex eigensolver (Householder Hessenberg
//!   reduction plus shifted QR with deflation, with a Hermitian
//!   tridiagonal fast path), inverse-iteration eigenvectors, eigenvalue
//!   counting, and truncation-stabilization of spectra.
//! * [`spectral`] — spectral enclosure regions (ball plus sectors around
//!   rays), counting-function asymptotics, and Riesz-basis surrogate
//!   diagnostics (eigenvector condition numbers, cluster parentheses).
//!
//! The crate is `no_std`-compatible (requires `alloc`); the companion CLI
//! crate carries all IO and file formats.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bargmann;
pub mod block;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod spectral;
pub mod subordination;

pub use error::Error;
pub use matrix::BandedComplexMatrix;
