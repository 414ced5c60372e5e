//! Generalized-subordination certificates and the conditions built on them.
//!
//! An operator `T` is generalized subordinate to `S` when
//! `||T u|| <= sum_k b_k ||S u||^{p_k} ||u||^{1-p_k}` with exponents
//! `p_k` in `[0, 1]` and bounds `b_k >= 0`. A [`SubordinationCertificate`]
//! is the list of `(p_k, b_k)` pairs; certificates for the entries of a
//! block matrix merge by plain concatenation into one certificate for the
//! whole off-diagonal part against the block diagonal.
//!
//! For the Gribov entries the bounds come from the relative bounds between
//! the ladder compositions,
//!
//! ```text
//! ||H0^3 u||  <= c1 ||G u|| + c2 ||u||
//! ||H0^b u||  <= ||H0^3 u||^{b/3} ||u||^{1-b/3}        (0 < b <= 3)
//! ||S u||     <= ||H0^3 u||^{2/3} ||u||^{1/3}
//! ||H1 u||    <= c3 ||H0^3 u||^{1/2} ||u||^{1/2}
//! ```
//!
//! with `c1 = 5`, `c2 = sqrt(65)`, `c3 = 1 + 2 sqrt(2)`. Throughout,
//! `0^0 := 1`, so a `p = 0` term is a plain `b ||u||` bound.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float as _;

use crate::block::BlockSpec;
use crate::error::Error;
use crate::matrix::BandedComplexMatrix;

/// Relative slack tolerance for numerical verification: a trial vector
/// passes when `slack >= -SLACK_TOL * (1 + rhs)`.
pub const SLACK_TOL: f64 = 1e-10;

/// Constants of the relative bounds between the ladder compositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BoundConstants {
    /// `c1 = 5`, `c2 = sqrt(1 + 2^6)`, `c3 = 1 + 2 sqrt(2)`.
    pub fn standard() -> Self {
        Self { c1: 5.0, c2: 65.0_f64.sqrt(), c3: 1.0 + 2.0 * 2.0_f64.sqrt() }
    }
}

/// One `(exponent, bound)` term of a certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertTerm {
    pub exponent: f64,
    pub bound: f64,
}

/// Exponent/bound pairs representing a generalized-subordination
/// inequality. Nonempty; exponents in `[0, 1]`, bounds nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinationCertificate {
    terms: Vec<CertTerm>,
}

impl SubordinationCertificate {
    pub fn new(terms: Vec<CertTerm>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::EmptyInput("certificate terms"));
        }
        for t in &terms {
            if !(t.exponent.is_finite() && (0.0..=1.0).contains(&t.exponent)) {
                return Err(Error::InvalidParameter("certificate exponent must lie in [0, 1]"));
            }
            if !(t.bound.is_finite() && t.bound >= 0.0) {
                return Err(Error::InvalidParameter("certificate bound must be nonnegative"));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[CertTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum_k b_k`; the sector half-width parameter of the enclosure
    /// geometry must exceed this.
    pub fn bound_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.bound).sum()
    }

    pub fn max_exponent(&self) -> f64 {
        self.terms.iter().fold(0.0, |acc, t| acc.max(t.exponent))
    }

    /// Right-hand side `sum_k b_k s^{p_k} u^{1-p_k}` with the `0^0 = 1`
    /// convention (IEEE `powf` already returns 1 for `0^0`).
    pub fn evaluate(&self, image_norm: f64, vector_norm: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.bound * image_norm.powf(t.exponent) * vector_norm.powf(1.0 - t.exponent))
            .sum()
    }
}

/// Concatenates per-entry certificates into one (multiset union; no
/// deduplication). Entries are visited in index order, so the result is
/// deterministic.
pub fn merge_certificates(
    per_entry: &BTreeMap<(usize, usize), SubordinationCertificate>,
) -> Result<SubordinationCertificate, Error> {
    if per_entry.is_empty() {
        return Err(Error::EmptyInput("per-entry certificate map"));
    }
    let mut terms = Vec::new();
    for cert in per_entry.values() {
        terms.extend_from_slice(cert.terms());
    }
    SubordinationCertificate::new(terms)
}

/// The three leading bounds of entry `(i, j)` against its column's
/// diagonal block `lambda''_j G`:
///
/// ```text
/// b1 = |mu_ij|      (c1 / |lambda''_j|)^{beta_ij/3}
/// b2 = |lambda_ij|  c3 (c1 / |lambda''_j|)^{1/2}
/// b3 = |lambda'_ij| (c1 / |lambda''_j|)^{2/3}
/// ```
pub fn entry_bounds(spec: &BlockSpec, i: usize, j: usize) -> Result<(f64, f64, f64), Error> {
    if i == j || i == 0 || j == 0 || i > spec.n || j > spec.n {
        return Err(Error::InvalidIndex { i, j });
    }
    let c = BoundConstants::standard();
    let entry = spec.entry(i, j);
    let ratio = c.c1 / spec.diag_coupling(j).abs();
    let b1 = entry.mu.abs() * ratio.powf(entry.beta / 3.0);
    let b2 = entry.lambda.abs() * c.c3 * ratio.sqrt();
    let b3 = entry.lambda1.abs() * ratio.powf(2.0 / 3.0);
    Ok((b1, b2, b3))
}

/// Certificate for the whole off-diagonal part against the block diagonal:
/// per entry the terms `(beta_ij/3, b1)`, `(1/2, b2)`, `(2/3, b3)`, merged
/// over `Omega_n` in index order.
///
/// With `include_constant_terms`, each entry also contributes the `p = 0`
/// remainder `|mu| c2^{beta/3} + |lambda| c3 c2^{1/2} + |lambda'| c2^{2/3}`;
/// the leading bounds alone understate the inequality on vectors with
/// significant mass on the kernel of `G`, so numerical verification wants
/// the constant terms while the closedness/self-adjointness conditions use
/// only the leading ones.
///
/// Validation matches [`crate::block::validate_spec`] except that
/// `beta_ij = 3` is admitted: at the endpoint the certificate degenerates
/// to the plain relative bound, which is still meaningful here.
pub fn gribov_certificate(
    spec: &BlockSpec,
    include_constant_terms: bool,
) -> Result<SubordinationCertificate, Error> {
    let mut relaxed = spec.clone();
    for params in relaxed.off_entries.values_mut() {
        if params.beta == 3.0 {
            params.beta = 1.0;
        }
    }
    let violations = crate::block::validate_spec(&relaxed);
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }

    let mut per_entry = BTreeMap::new();
    for (i, j) in spec.omega() {
        per_entry.insert((i, j), entry_certificate(spec, i, j, include_constant_terms)?);
    }
    merge_certificates(&per_entry)
}

/// Certificate of one entry against its column's diagonal block: the
/// three leading terms, plus the `p = 0` remainder when requested.
pub fn entry_certificate(
    spec: &BlockSpec,
    i: usize,
    j: usize,
    include_constant_terms: bool,
) -> Result<SubordinationCertificate, Error> {
    let c = BoundConstants::standard();
    let entry = spec.entry(i, j);
    let (b1, b2, b3) = entry_bounds(spec, i, j)?;
    let mut terms = alloc::vec![
        CertTerm { exponent: entry.beta / 3.0, bound: b1 },
        CertTerm { exponent: 0.5, bound: b2 },
        CertTerm { exponent: 2.0 / 3.0, bound: b3 },
    ];
    if include_constant_terms {
        let rem = entry.mu.abs() * c.c2.powf(entry.beta / 3.0)
            + entry.lambda.abs() * c.c3 * c.c2.sqrt()
            + entry.lambda1.abs() * c.c2.powf(2.0 / 3.0);
        terms.push(CertTerm { exponent: 0.0, bound: rem });
    }
    SubordinationCertificate::new(terms)
}

/// Outcome of checking a certificate on a set of trial vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Smallest `sum_k b_k ||S u||^{p_k} ||u||^{1-p_k} - ||T u||` observed.
    pub min_slack: f64,
    /// Index (into the trial set) of the minimizing vector.
    pub argmin_index: usize,
    /// The minimizing vector itself.
    pub argmin: Vec<Complex64>,
    /// True when every slack clears `-SLACK_TOL * (1 + rhs)`.
    pub pass: bool,
    pub vectors_checked: usize,
}

/// Evaluates the inequality `||T u|| <= sum_k b_k ||S u||^{p_k} ||u||^{1-p_k}`
/// on each trial vector. Direction-agnostic: swapping the two matrices
/// checks the off-diagonal-style inequality instead.
///
/// The matrices only need matching column counts; row counts may differ
/// (exact-image forms carry an extra row).
pub fn verify_subordination(
    t_img: &BandedComplexMatrix,
    s_img: &BandedComplexMatrix,
    cert: &SubordinationCertificate,
    trial_vectors: &[Vec<Complex64>],
) -> Result<VerificationReport, Error> {
    if t_img.cols() != s_img.cols() {
        return Err(Error::DimensionMismatch("operand column counts"));
    }
    if trial_vectors.is_empty() {
        return Err(Error::EmptyInput("trial vectors"));
    }
    let mut min_slack = f64::INFINITY;
    let mut argmin_index = 0;
    let mut pass = true;
    for (idx, u) in trial_vectors.iter().enumerate() {
        if u.len() != t_img.cols() {
            return Err(Error::DimensionMismatch("trial vector length"));
        }
        let tu = norm2(&t_img.matvec(u)?);
        let su = norm2(&s_img.matvec(u)?);
        let nu = norm2(u);
        let rhs = cert.evaluate(su, nu);
        let slack = rhs - tu;
        if slack < min_slack {
            min_slack = slack;
            argmin_index = idx;
        }
        if slack < -SLACK_TOL * (1.0 + rhs) {
            pass = false;
        }
    }
    Ok(VerificationReport {
        min_slack,
        argmin_index,
        argmin: trial_vectors[argmin_index].clone(),
        pass,
        vectors_checked: trial_vectors.len(),
    })
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Closedness margin: `sum_{Omega_n} (b1 beta/3 + b2/2 + 2 b3/3)`;
/// satisfied means the sum is below 1.
pub fn closedness_margin(spec: &BlockSpec) -> (f64, bool) {
    let mut value = 0.0;
    for (i, j) in spec.omega() {
        let beta = spec.entry(i, j).beta;
        if let Ok((b1, b2, b3)) = entry_bounds(spec, i, j) {
            value += b1 * beta / 3.0 + b2 / 2.0 + 2.0 * b3 / 3.0;
        }
    }
    (value, value < 1.0)
}

/// Outcome of the self-adjointness margin condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfAdjointnessCheck {
    /// The condition only applies when every triple coupling vanishes.
    pub applicable: bool,
    /// `sum_{Omega_n} (b1 beta/3 + 2 b3/3)`.
    pub value: f64,
    pub satisfied: bool,
}

/// Margin condition for a real spectrum: applicable iff all `lambda_ij = 0`,
/// satisfied iff additionally the margin sum stays below 1.
///
/// The conclusion additionally needs the assembled matrix to be symmetric
/// (paired entries matching); that is reported separately by
/// [`crate::block::BlockSpec::is_hermitian_spec`] rather than assumed here.
pub fn selfadjointness_check(spec: &BlockSpec) -> SelfAdjointnessCheck {
    let applicable = spec.omega().all(|(i, j)| spec.entry(i, j).lambda == 0.0);
    let mut value = 0.0;
    for (i, j) in spec.omega() {
        let beta = spec.entry(i, j).beta;
        if let Ok((b1, _, b3)) = entry_bounds(spec, i, j) {
            value += b1 * beta / 3.0 + 2.0 * b3 / 3.0;
        }
    }
    SelfAdjointnessCheck { applicable, value, satisfied: applicable && value < 1.0 }
}

/// Result of the geometric-decay coupling example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayExample {
    /// `gamma = c1 / |lambda''|`.
    pub gamma: f64,
    /// `sum_{Omega_n} gamma^{p_ij} p_ij^2`; below 1 the self-adjointness
    /// margin holds for every admissible `gamma`.
    pub condition_sum: f64,
    /// `S = sum_{2 <= i < j <= n} p_ij^2`, the tail of the condition sum;
    /// bounded by 7/18 whenever `a >= 7/5`.
    pub tail_sum: f64,
    pub satisfied: bool,
    /// False when `a < 7/5` or `gamma >= 1`: the computation still runs,
    /// but the hypotheses behind the guarantees are unmet.
    pub hypothesis_met: bool,
}

/// Evaluates the example family `p_12 = p_21 = 1/3`,
/// `p_ij = a^{-(i+j)}` elsewhere: an `n x n` configuration whose
/// intercepts decay geometrically. Returns the condition sum
/// `sum gamma^{p_ij} p_ij^2`, its tail `S`, and whether the sum stays
/// below 1.
pub fn decay_example(n: usize, a: f64, lambda2: f64) -> Result<DecayExample, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("block count must be at least 2"));
    }
    if !(a.is_finite() && a > 0.0) || !(lambda2.is_finite() && lambda2 != 0.0) {
        return Err(Error::InvalidParameter("a must be positive and lambda2 nonzero"));
    }
    let c1 = BoundConstants::standard().c1;
    let gamma = c1 / lambda2.abs();
    let p = |i: usize, j: usize| -> f64 {
        if (i, j) == (1, 2) || (i, j) == (2, 1) {
            1.0 / 3.0
        } else {
            a.powi(-((i + j) as i32))
        }
    };
    let mut condition_sum = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let pij = p(i, j);
            condition_sum += gamma.powf(pij) * pij * pij;
        }
    }
    let mut tail_sum = 0.0;
    for i in 2..=n {
        for j in (i + 1)..=n {
            let pij = p(i, j);
            tail_sum += pij * pij;
        }
    }
    Ok(DecayExample {
        gamma,
        condition_sum,
        tail_sum,
        satisfied: condition_sum < 1.0,
        hypothesis_met: a >= 7.0 / 5.0 && gamma < 1.0,
    })
}
