//! Assembly of the `n x n` Gribov operator matrix.
//!
//! The block matrix is `D + R`: the diagonal carries scaled copies
//! `lambda''_j G` of the cubic ladder composition, and each off-diagonal
//! position `(i, j)` carries a scalar Gribov perturbation
//! `lambda'_{ij} S + i lambda_{ij} H1 + mu_{ij} H0^{beta_{ij}}`. All `n`
//! diagonal copies share one truncation size, so the assembled finite
//! section is an `(n N) x (n N)` banded complex matrix.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bargmann::{build_g, build_scalar_gribov, PomeronParams};
use crate::error::Error;
use crate::matrix::BandedComplexMatrix;

/// Couplings of one off-diagonal entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryParams {
    /// Four coupling `lambda'_{ij}`.
    pub lambda1: f64,
    /// Triple coupling `lambda_{ij}`.
    pub lambda: f64,
    /// Intercept `mu_{ij}`.
    pub mu: f64,
    /// Diagonal exponent `beta_{ij}`, in `(0, 3)`.
    pub beta: f64,
}

impl Default for EntryParams {
    /// The zero entry: all couplings vanish, `beta = 1`.
    fn default() -> Self {
        Self { lambda1: 0.0, lambda: 0.0, mu: 0.0, beta: 1.0 }
    }
}

impl EntryParams {
    pub fn is_zero(&self) -> bool {
        self.lambda1 == 0.0 && self.lambda == 0.0 && self.mu == 0.0
    }

    fn as_pomeron(&self) -> PomeronParams {
        PomeronParams {
            lambda2: 0.0,
            lambda1: self.lambda1,
            mu: self.mu,
            lambda: self.lambda,
            beta: self.beta,
        }
    }
}

/// Full parameterization of the block matrix: diagonal couplings
/// `lambda''_j` (one-based block indices) and off-diagonal entries over
/// the index set `Omega_n = {(i, j) : i != j}`. Pairs absent from
/// `off_entries` are the zero entry.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpec {
    pub n: usize,
    pub diag_couplings: Vec<f64>,
    pub off_entries: BTreeMap<(usize, usize), EntryParams>,
}

/// One invariant breach found by [`validate_spec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpecViolation {
    pub field: String,
    pub reason: String,
}

impl BlockSpec {
    pub fn new(n: usize, diag_couplings: Vec<f64>) -> Self {
        Self { n, diag_couplings, off_entries: BTreeMap::new() }
    }

    pub fn with_entry(mut self, i: usize, j: usize, params: EntryParams) -> Self {
        self.off_entries.insert((i, j), params);
        self
    }

    /// Entry parameters at `(i, j)` (one-based), defaulting to the zero entry.
    pub fn entry(&self, i: usize, j: usize) -> EntryParams {
        self.off_entries.get(&(i, j)).copied().unwrap_or_default()
    }

    /// Diagonal coupling `lambda''_j` (one-based).
    pub fn diag_coupling(&self, j: usize) -> f64 {
        self.diag_couplings[j - 1]
    }

    /// All index pairs `(i, j)`, `i != j`, in lexicographic order.
    pub fn omega(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
    }

    /// True when the assembled matrix is Hermitian for any truncation:
    /// paired entries must match in `mu`, `lambda'`, `beta` and carry
    /// opposite triple couplings (the `i H1` parts are anti-Hermitian).
    pub fn is_hermitian_spec(&self) -> bool {
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                let a = self.entry(i, j);
                let b = self.entry(j, i);
                let betas_match = a.beta == b.beta || (a.mu == 0.0 && b.mu == 0.0);
                if !(a.mu == b.mu && a.lambda1 == b.lambda1 && a.lambda == -b.lambda && betas_match)
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Checks every `BlockSpec` invariant; returns the empty list iff the spec
/// is well formed. Diagnostics, not errors: callers that need a hard gate
/// use [`assemble`]/[`split`], which refuse invalid specs.
pub fn validate_spec(spec: &BlockSpec) -> Vec<SpecViolation> {
    let mut out = Vec::new();
    if spec.n < 2 {
        out.push(SpecViolation {
            field: String::from("n"),
            reason: format!("block count must be at least 2, got {}", spec.n),
        });
    }
    if spec.diag_couplings.len() != spec.n {
        out.push(SpecViolation {
            field: String::from("diag_couplings"),
            reason: format!(
                "expected {} couplings, got {}",
                spec.n,
                spec.diag_couplings.len()
            ),
        });
    }
    for (j, &c) in spec.diag_couplings.iter().enumerate() {
        if c == 0.0 {
            out.push(SpecViolation {
                field: format!("diag_couplings[{}]", j + 1),
                reason: String::from("diag coupling zero"),
            });
        } else if !c.is_finite() {
            out.push(SpecViolation {
                field: format!("diag_couplings[{}]", j + 1),
                reason: String::from("diag coupling not finite"),
            });
        }
    }
    for (&(i, j), params) in &spec.off_entries {
        let field = format!("off_entries[({i},{j})]");
        if i == j || i == 0 || j == 0 || i > spec.n || j > spec.n {
            out.push(SpecViolation {
                field: field.clone(),
                reason: format!("index pair must satisfy 1 <= i,j <= {}, i != j", spec.n),
            });
        }
        if !(params.beta.is_finite() && params.beta > 0.0 && params.beta < 3.0) {
            out.push(SpecViolation {
                field: field.clone(),
                reason: String::from("beta out of (0,3)"),
            });
        }
        if !(params.lambda1.is_finite() && params.lambda.is_finite() && params.mu.is_finite()) {
            out.push(SpecViolation { field, reason: String::from("couplings must be finite") });
        }
    }
    out
}

fn gate(spec: &BlockSpec, n_trunc: usize) -> Result<(), Error> {
    if n_trunc == 0 {
        return Err(Error::InvalidTruncation);
    }
    let violations = validate_spec(spec);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(violations))
    }
}

#[derive(Clone, Copy)]
enum Part {
    All,
    Diag,
    Four,
    Triple,
    Intercept,
}

fn entry_for_part(params: EntryParams, part: Part) -> EntryParams {
    match part {
        Part::All => params,
        Part::Diag => EntryParams::default(),
        Part::Four => EntryParams { lambda: 0.0, mu: 0.0, ..params },
        Part::Triple => EntryParams { lambda1: 0.0, mu: 0.0, ..params },
        Part::Intercept => EntryParams { lambda1: 0.0, lambda: 0.0, ..params },
    }
}

fn assemble_part(spec: &BlockSpec, n_trunc: usize, part: Part) -> Result<BandedComplexMatrix, Error> {
    let n = spec.n;
    let dim = n * n_trunc;
    let bw = (n - 1) * n_trunc + 1;
    let mut m = BandedComplexMatrix::zeros(dim, dim, bw, bw)?;

    if matches!(part, Part::All | Part::Diag) {
        let g = build_g(n_trunc)?;
        for j in 1..=n {
            let mut block = g.clone();
            for k in 0..n_trunc {
                let v = block.get(k, k) * spec.diag_coupling(j);
                block.set(k, k, v);
            }
            m.set_block((j - 1) * n_trunc, (j - 1) * n_trunc, &block)?;
        }
    }
    if !matches!(part, Part::Diag) {
        for (i, j) in spec.omega() {
            let params = entry_for_part(spec.entry(i, j), part);
            if params.is_zero() {
                continue;
            }
            let block = build_scalar_gribov(n_trunc, &params.as_pomeron(), false)?;
            m.set_block((i - 1) * n_trunc, (j - 1) * n_trunc, &block)?;
        }
    }
    Ok(m)
}

/// Assembles the full `(n N) x (n N)` block matrix `D + R`.
pub fn assemble(spec: &BlockSpec, n_trunc: usize) -> Result<BandedComplexMatrix, Error> {
    gate(spec, n_trunc)?;
    assemble_part(spec, n_trunc, Part::All)
}

/// The four-part decomposition `(D, S-part, H-part, H0-part)`: the diagonal
/// blocks, then the off-diagonal pieces keeping only the four, triple and
/// intercept couplings respectively. Their sum equals [`assemble`].
pub fn split(
    spec: &BlockSpec,
    n_trunc: usize,
) -> Result<(BandedComplexMatrix, BandedComplexMatrix, BandedComplexMatrix, BandedComplexMatrix), Error>
{
    gate(spec, n_trunc)?;
    Ok((
        assemble_part(spec, n_trunc, Part::Diag)?,
        assemble_part(spec, n_trunc, Part::Four)?,
        assemble_part(spec, n_trunc, Part::Triple)?,
        assemble_part(spec, n_trunc, Part::Intercept)?,
    ))
}

/// `R` alone (the assembled matrix with the diagonal blocks removed).
pub fn assemble_off_part(spec: &BlockSpec, n_trunc: usize) -> Result<BandedComplexMatrix, Error> {
    gate(spec, n_trunc)?;
    let (_, s, h, h0) = split(spec, n_trunc)?;
    let mut r = s;
    r.add_scaled_assign(&h, Complex64::ONE)?;
    r.add_scaled_assign(&h0, Complex64::ONE)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym_spec(mu: f64, beta: f64) -> BlockSpec {
        let e = EntryParams { mu, beta, ..EntryParams::default() };
        BlockSpec::new(2, alloc::vec![1.0, 1.0])
            .with_entry(1, 2, e)
            .with_entry(2, 1, e)
    }

    #[test]
    fn zero_couplings_give_block_diagonal() {
        let spec = BlockSpec::new(2, alloc::vec![2.0, -3.0]);
        let m = assemble(&spec, 4).unwrap();
        let g = build_g(4).unwrap();
        for k in 0..4 {
            assert_eq!(m.get(k, k), g.get(k, k) * 2.0);
            assert_eq!(m.get(4 + k, 4 + k), g.get(k, k) * -3.0);
        }
        for r in 0..4 {
            for c in 4..8 {
                assert_eq!(m.get(r, c), Complex64::ZERO);
                assert_eq!(m.get(c, r), Complex64::ZERO);
            }
        }
    }

    #[test]
    fn intercept_block_is_diag_k() {
        // (1,2) entry with mu = 1, beta = 1 places diag(k) in the top-right block
        let spec = BlockSpec::new(2, alloc::vec![1.0, 1.0]).with_entry(
            1,
            2,
            EntryParams { mu: 1.0, ..EntryParams::default() },
        );
        let m = assemble(&spec, 5).unwrap();
        for k in 0..5 {
            assert_eq!(m.get(k, 5 + k), Complex64::new((k + 1) as f64, 0.0));
        }
    }

    #[test]
    fn split_parts_sum_to_assemble() {
        let spec = BlockSpec::new(3, alloc::vec![1.0, -2.0, 0.5])
            .with_entry(1, 2, EntryParams { lambda1: 0.3, lambda: -0.2, mu: 1.1, beta: 2.0 })
            .with_entry(2, 3, EntryParams { lambda1: -0.1, lambda: 0.7, mu: 0.4, beta: 0.5 })
            .with_entry(3, 1, EntryParams { lambda1: 0.0, lambda: 0.05, mu: -2.0, beta: 2.9 });
        let n = 6;
        let m = assemble(&spec, n).unwrap();
        let (d, s, h, h0) = split(&spec, n).unwrap();
        let dim = 3 * n;
        for r in 0..dim {
            for c in 0..dim {
                let sum = d.get(r, c) + s.get(r, c) + h.get(r, c) + h0.get(r, c);
                assert!((sum - m.get(r, c)).norm() <= 1e-14 * (1.0 + m.get(r, c).norm()));
            }
        }
    }

    #[test]
    fn split_zero_couplings() {
        let spec = BlockSpec::new(2, alloc::vec![1.0, 1.0]);
        let (d, s, h, h0) = split(&spec, 3).unwrap();
        assert!(s.frobenius_norm() == 0.0 && h.frobenius_norm() == 0.0 && h0.frobenius_norm() == 0.0);
        assert!(d.frobenius_norm() > 0.0);
    }

    #[test]
    fn split_part_symmetries() {
        let spec = BlockSpec::new(2, alloc::vec![1.0, 1.0])
            .with_entry(1, 2, EntryParams { lambda1: 0.5, lambda: 0.25, ..EntryParams::default() })
            .with_entry(2, 1, EntryParams { lambda1: 0.5, lambda: 0.25, ..EntryParams::default() });
        let (_, s, h, _) = split(&spec, 5).unwrap();
        // S-part is Hermitian
        assert!(s.hermitian_defect().unwrap() == 0.0);
        // H-part is i * (real symmetric): entries are purely imaginary and
        // the matrix equals its transpose
        let dim = 10;
        for r in 0..dim {
            for c in 0..dim {
                assert_eq!(h.get(r, c).re, 0.0);
                assert_eq!(h.get(r, c), h.get(c, r));
            }
        }
    }

    #[test]
    fn hermitian_when_triple_zero_and_pairs_match() {
        let spec = sym_spec(0.7, 1.5);
        assert!(spec.is_hermitian_spec());
        let m = assemble(&spec, 8).unwrap();
        assert_eq!(m.hermitian_defect().unwrap(), 0.0);

        let skew = BlockSpec::new(2, alloc::vec![1.0, 1.0])
            .with_entry(1, 2, EntryParams { lambda: 0.3, ..EntryParams::default() })
            .with_entry(2, 1, EntryParams { lambda: -0.3, ..EntryParams::default() });
        assert!(skew.is_hermitian_spec());
        assert_eq!(assemble(&skew, 6).unwrap().hermitian_defect().unwrap(), 0.0);
    }

    #[test]
    fn validate_spec_reports_violations() {
        let mut spec = BlockSpec::new(2, alloc::vec![1.0, 0.0]);
        spec.off_entries.insert((1, 2), EntryParams { beta: 3.5, ..EntryParams::default() });
        let v = validate_spec(&spec);
        assert!(v.iter().any(|x| x.field == "diag_couplings[2]" && x.reason.contains("zero")));
        assert!(v.iter().any(|x| x.reason.contains("beta out of (0,3)")));

        let ok = sym_spec(1.0, 2.0);
        assert!(validate_spec(&ok).is_empty());

        let tiny = BlockSpec::new(1, alloc::vec![1.0]);
        assert!(validate_spec(&tiny).iter().any(|x| x.field == "n"));
    }

    #[test]
    fn assemble_refuses_invalid_spec() {
        let bad = BlockSpec::new(2, alloc::vec![1.0, 0.0]);
        match assemble(&bad, 4) {
            Err(Error::InvalidSpec(v)) => assert!(!v.is_empty()),
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
        assert_eq!(assemble(&sym_spec(1.0, 1.0), 0).unwrap_err(), Error::InvalidTruncation);
    }

    #[test]
    fn off_part_equals_assemble_minus_diag() {
        let spec = sym_spec(0.3, 2.5);
        let n = 4;
        let full = assemble(&spec, n).unwrap();
        let (d, ..) = split(&spec, n).unwrap();
        let r = assemble_off_part(&spec, n).unwrap();
        for idx in 0..(8 * 8) {
            let (row, col) = (idx / 8, idx % 8);
            let want = full.get(row, col) - d.get(row, col);
            assert!((r.get(row, col) - want).norm() <= 1e-14);
        }
    }
}
