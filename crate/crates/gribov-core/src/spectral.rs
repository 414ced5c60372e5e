//! Enclosure geometry, counting asymptotics, and Riesz-basis surrogates.
//!
//! The enclosure region is a central ball of radius `r0` together with
//! sectors around finitely many rays: `z` rotated onto a ray must have
//! `x = Re >= 0` and `|Im| <= alpha * max_k x^{p_k}`. For block matrices
//! with uniform-sign diagonal couplings the ray set is `{0}` or `{pi}`,
//! `alpha` exceeds the certificate bound sum by a chosen margin, and `r0`
//! is computed a posteriori: the smallest radius that absorbs every
//! stabilized eigenvalue the sector test misses. The informative check is
//! not membership itself (true by construction) but that `r0` stays put
//! when the truncation grows.
//!
//! Riesz-basis quality is probed numerically: the condition number of the
//! unit-column eigenvector matrix (1 exactly for normal matrices), and the
//! condition number of a matrix of orthonormal bases of cluster invariant
//! subspaces ("parentheses"), which stays near 1 when the clusters are
//! nearly orthogonal to each other.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float as _;

use crate::block::BlockSpec;
use crate::eigen::{self, SpectrumResult};
use crate::error::Error;
use crate::matrix::BandedComplexMatrix;
use crate::subordination::entry_bounds;

/// Ball-plus-sectors spectral enclosure.
///
/// Sector exponents are nonnegative; the abstract enclosure statement uses
/// `p_k` in `[0, 1)`, while the Gribov sector in its literal form carries
/// the raw diagonal exponents `beta_ij`, which may exceed 1. Membership is
/// well defined either way (`x^0 = 1` for all `x >= 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct EnclosureRegion {
    /// Central ball radius.
    pub r0: f64,
    /// Ray angles in `[0, 2pi)`.
    pub rays: Vec<f64>,
    /// Sector half-width coefficient.
    pub alpha: f64,
    /// Sector exponents.
    pub exponents: Vec<f64>,
}

impl EnclosureRegion {
    pub fn new(r0: f64, rays: Vec<f64>, alpha: f64, exponents: Vec<f64>) -> Result<Self, Error> {
        if !(r0.is_finite() && r0 >= 0.0) {
            return Err(Error::InvalidParameter("r0 must be finite and nonnegative"));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParameter("alpha must be finite and nonnegative"));
        }
        if rays.is_empty() || exponents.is_empty() {
            return Err(Error::EmptyInput("region rays/exponents"));
        }
        if rays.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("ray angles must be finite"));
        }
        if exponents.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidParameter("exponents must be finite and nonnegative"));
        }
        let tau = 2.0 * core::f64::consts::PI;
        let rays = rays
            .into_iter()
            .map(|t| {
                let r = t % tau;
                if r < 0.0 {
                    r + tau
                } else {
                    r
                }
            })
            .collect();
        Ok(Self { r0, rays, alpha, exponents })
    }

    /// Membership test: inside the ball, or inside some ray's sector.
    pub fn contains(&self, z: Complex64) -> bool {
        if z.norm() <= self.r0 {
            return true;
        }
        self.rays.iter().any(|&theta| {
            let w = z * Complex64::from_polar(1.0, -theta);
            let (x, y) = (w.re, w.im);
            x >= 0.0 && y.abs() <= self.alpha * self.max_power(x)
        })
    }

    fn max_power(&self, x: f64) -> f64 {
        self.exponents.iter().map(|&p| x.powf(p)).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Which exponent set the Gribov sector uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorExponents {
    /// `{2/3} U {beta_ij}`: the enclosure statement taken literally.
    TheoremLiteral,
    /// `{beta_ij/3, 1/2, 2/3}`: the exponents of the derived certificate.
    CertificateScaled,
}

/// Enclosure for a block spec: rays from the sign of the diagonal
/// couplings (uniform sign required), `alpha` equal to `(1 + margin)`
/// times the certificate bound sum, and `r0` fitted to the stabilized
/// eigenvalues (max modulus of sector misses, plus a hair of slack).
pub fn gribov_region(
    spec: &BlockSpec,
    alpha_margin: f64,
    spectrum: &SpectrumResult,
) -> Result<EnclosureRegion, Error> {
    gribov_region_with(spec, alpha_margin, spectrum, SectorExponents::TheoremLiteral)
}

/// [`gribov_region`] with an explicit exponent-set choice; both variants
/// are worth reporting side by side, since they differ only near the
/// origin where `r0` absorbs the discrepancy.
pub fn gribov_region_with(
    spec: &BlockSpec,
    alpha_margin: f64,
    spectrum: &SpectrumResult,
    variant: SectorExponents,
) -> Result<EnclosureRegion, Error> {
    if !(alpha_margin.is_finite() && alpha_margin > 0.0) {
        return Err(Error::InvalidParameter("alpha_margin must be positive"));
    }
    let violations = crate::block::validate_spec(spec);
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    let positive = spec.diag_couplings.iter().all(|&c| c > 0.0);
    let negative = spec.diag_couplings.iter().all(|&c| c < 0.0);
    if !(positive || negative) {
        return Err(Error::UnsupportedConfiguration(
            "mixed-sign diagonal couplings have no single-ray enclosure",
        ));
    }
    let ray = if positive { 0.0 } else { core::f64::consts::PI };

    let mut bound_sum = 0.0;
    for (i, j) in spec.omega() {
        let (b1, b2, b3) = entry_bounds(spec, i, j)?;
        bound_sum += b1 + b2 + b3;
    }
    let alpha = (1.0 + alpha_margin) * bound_sum;

    let mut exponents = vec![2.0 / 3.0];
    match variant {
        SectorExponents::TheoremLiteral => {
            for (i, j) in spec.omega() {
                exponents.push(spec.entry(i, j).beta);
            }
        }
        SectorExponents::CertificateScaled => {
            exponents.push(0.5);
            for (i, j) in spec.omega() {
                exponents.push(spec.entry(i, j).beta / 3.0);
            }
        }
    }
    exponents.sort_by(f64::total_cmp);
    exponents.dedup();

    let sector = EnclosureRegion::new(0.0, vec![ray], alpha, exponents.clone())?;
    let mut worst_miss: Option<f64> = None;
    for (z, &stab) in spectrum.eigenvalues.iter().zip(spectrum.stabilized.iter()) {
        if stab && !sector.contains(*z) {
            let m = z.norm();
            worst_miss = Some(worst_miss.map_or(m, |w: f64| w.max(m)));
        }
    }
    let r0 = worst_miss.map_or(0.0, |m| m + 1e-9);
    EnclosureRegion::new(r0, vec![ray], alpha, exponents)
}

/// One row of the counting-function table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingRow {
    pub k: usize,
    /// Midpoint radius between consecutive eigenvalues of `lambda'' G`:
    /// `r_k = lambda'' (k-1) k (2k-1) / 2`.
    pub radius: f64,
    /// `N(r_k) / r_k^{1/3} = k / r_k^{1/3}`; tends to `lambda''^{-1/3}`.
    pub ratio: f64,
}

/// Counting-function asymptotics along the spectrum of `lambda'' G`:
/// exactly `k` eigenvalues lie within `r_k`, and the normalized count
/// `k / r_k^{1/3}` approaches `lambda''^{-1/3}`.
pub fn counting_asymptotics(lambda2: f64, k_max: usize) -> Result<Vec<CountingRow>, Error> {
    if !(lambda2.is_finite() && lambda2 > 0.0) {
        return Err(Error::InvalidParameter("lambda2 must be positive"));
    }
    if k_max < 3 {
        return Err(Error::InvalidParameter("k_max must be at least 3"));
    }
    let mut rows = Vec::with_capacity(k_max - 2);
    for k in 3..=k_max {
        let ki = k as i64;
        // (k-1) k (2k-1) is even, so the halved product is exact
        let prod = (ki - 1) * ki * (2 * ki - 1);
        let radius = lambda2 * ((prod / 2) as f64);
        let ratio = k as f64 / radius.cbrt();
        rows.push(CountingRow { k, radius, ratio });
    }
    Ok(rows)
}

/// 2-norm condition number of a set of columns, via the spectrum of the
/// Gram matrix. Returns `None` when the Gram matrix is numerically
/// singular (smallest eigenvalue nonpositive).
fn cond2_columns(columns: &[Vec<Complex64>]) -> Result<Option<f64>, Error> {
    let m = columns.len();
    if m == 0 {
        return Err(Error::EmptyInput("columns"));
    }
    let bw = m.saturating_sub(1);
    let mut gram = BandedComplexMatrix::zeros(m, m, bw, bw)?;
    for a in 0..m {
        for b in 0..m {
            let mut acc = Complex64::ZERO;
            for (x, y) in columns[a].iter().zip(columns[b].iter()) {
                acc += x.conj() * *y;
            }
            gram.set(a, b, acc);
        }
    }
    let spec = eigen::eigenvalues(&gram)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for z in &spec.eigenvalues {
        lo = lo.min(z.re);
        hi = hi.max(z.re);
    }
    if lo <= 0.0 || hi <= 0.0 {
        return Ok(None);
    }
    Ok(Some((hi / lo).sqrt()))
}

/// Condition number of the unit-column eigenvector matrix; 1 for normal
/// matrices, infinite when a cluster is defective at working precision.
pub fn eigenbasis_condition(m: &BandedComplexMatrix) -> Result<f64, Error> {
    let spectrum = eigen::eigenvalues(m)?;
    let ev = eigen::eigenvectors(m, &spectrum)?;
    if !ev.defective.is_empty() {
        return Ok(f64::INFINITY);
    }
    Ok(cond2_columns(&ev.columns)?.unwrap_or(f64::INFINITY))
}

/// Groups the stabilized eigenvalues (sorted by modulus) into parentheses:
/// a new group starts whenever the modulus gap to the previous eigenvalue
/// exceeds `gap_factor * (1 + |lambda|)^p`, with `p` the largest
/// certificate exponent. Returns contiguous index groups into the
/// spectrum's eigenvalue list.
pub fn cluster_parentheses(
    spectrum: &SpectrumResult,
    gap_factor: f64,
    max_exponent: f64,
) -> Result<Vec<Vec<usize>>, Error> {
    if gap_factor.is_nan() || gap_factor <= 0.0 {
        return Err(Error::InvalidParameter("gap_factor must be positive"));
    }
    if !(max_exponent.is_finite() && max_exponent >= 0.0) {
        return Err(Error::InvalidParameter("max_exponent must be finite and nonnegative"));
    }
    let indices = spectrum.stabilized_indices();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut prev_modulus = f64::NAN;
    for idx in indices {
        let modulus = spectrum.eigenvalues[idx].norm();
        let split = match clusters.last() {
            None => true,
            Some(_) => {
                let threshold = gap_factor * (1.0 + modulus).powf(max_exponent);
                modulus - prev_modulus > threshold
            }
        };
        if split {
            clusters.push(vec![idx]);
        } else {
            clusters.last_mut().unwrap().push(idx);
        }
        prev_modulus = modulus;
    }
    Ok(clusters)
}

/// Condition number of the stacked cluster-wise orthonormal bases: the
/// eigenvector columns of each cluster are orthonormalized among
/// themselves, the groups are stacked into one matrix `W`, and `kappa(W)`
/// is returned. Near 1 means the invariant subspaces decompose the space
/// almost orthogonally.
pub fn riesz_constant(
    m: &BandedComplexMatrix,
    spectrum: &SpectrumResult,
    clusters: &[Vec<usize>],
) -> Result<f64, Error> {
    let mut covered: Vec<usize> = clusters.iter().flatten().copied().collect();
    covered.sort_unstable();
    if covered != spectrum.stabilized_indices() {
        return Err(Error::InvalidParameter(
            "clusters must partition the stabilized eigenvalue indices",
        ));
    }
    if covered.is_empty() {
        return Err(Error::EmptyInput("stabilized eigenvalues"));
    }
    let ev = eigen::eigenvectors(m, spectrum)?;
    if covered.iter().any(|i| ev.defective.contains(i)) {
        return Ok(f64::INFINITY);
    }

    let mut stacked: Vec<Vec<Complex64>> = Vec::with_capacity(covered.len());
    for cluster in clusters {
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(cluster.len());
        for &idx in cluster {
            let mut v = ev.columns[idx].clone();
            // two-pass modified Gram-Schmidt within the cluster
            for _ in 0..2 {
                for b in &basis {
                    let mut proj = Complex64::ZERO;
                    for (x, y) in b.iter().zip(v.iter()) {
                        proj += x.conj() * *y;
                    }
                    for (x, y) in b.iter().zip(v.iter_mut()) {
                        *y -= proj * *x;
                    }
                }
            }
            let nn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nn < 1e-8 {
                // the cluster's eigenvectors do not span its subspace
                return Err(Error::IllSeparatedClusters);
            }
            for z in v.iter_mut() {
                *z /= nn;
            }
            basis.push(v);
        }
        stacked.extend(basis);
    }
    match cond2_columns(&stacked)? {
        Some(kappa) if kappa <= 1e12 => Ok(kappa),
        _ => Err(Error::IllSeparatedClusters),
    }
}

/// Bundle of the Riesz-basis surrogate numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszDiagnostics {
    /// Condition number of the full unit-column eigenvector matrix.
    pub eigvec_condition: f64,
    /// Parenthesis grouping of the stabilized eigenvalue indices.
    pub clusters: Vec<Vec<usize>>,
    /// Condition number of the stacked cluster bases.
    pub projector_condition: f64,
}

/// Convenience wrapper computing all three diagnostics at once.
pub fn riesz_diagnostics(
    m: &BandedComplexMatrix,
    spectrum: &SpectrumResult,
    gap_factor: f64,
    max_exponent: f64,
) -> Result<RieszDiagnostics, Error> {
    let eigvec_condition = eigenbasis_condition(m)?;
    let clusters = cluster_parentheses(spectrum, gap_factor, max_exponent)?;
    let projector_condition = riesz_constant(m, spectrum, &clusters)?;
    Ok(RieszDiagnostics { eigvec_condition, clusters, projector_condition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bargmann::build_g;

    fn region(r0: f64, alpha: f64, exps: &[f64]) -> EnclosureRegion {
        EnclosureRegion::new(r0, vec![0.0], alpha, exps.to_vec()).unwrap()
    }

    #[test]
    fn origin_is_always_inside() {
        let r = region(0.0, 1.0, &[0.5]);
        assert!(r.contains(Complex64::ZERO));
    }

    #[test]
    fn sector_examples() {
        let r = region(1.0, 1.0, &[0.5]);
        assert!(r.contains(Complex64::new(4.0, 1.9)));
        assert!(!r.contains(Complex64::new(4.0, 2.1)));
        assert!(!r.contains(Complex64::new(-4.0, 0.5)));
    }

    #[test]
    fn ray_rotation() {
        let r = EnclosureRegion::new(0.5, vec![core::f64::consts::PI], 1.0, vec![0.5]).unwrap();
        assert!(r.contains(Complex64::new(-4.0, 1.9)));
        assert!(!r.contains(Complex64::new(4.0, 1.9)));
    }

    #[test]
    fn p_zero_gives_a_strip() {
        let r = region(0.0, 2.0, &[0.0]);
        assert!(r.contains(Complex64::new(0.0, 1.5)));
        assert!(r.contains(Complex64::new(100.0, -2.0)));
        assert!(!r.contains(Complex64::new(100.0, 2.5)));
    }

    #[test]
    fn region_validation() {
        assert!(EnclosureRegion::new(-1.0, vec![0.0], 1.0, vec![0.5]).is_err());
        assert!(EnclosureRegion::new(0.0, vec![], 1.0, vec![0.5]).is_err());
        assert!(EnclosureRegion::new(0.0, vec![0.0], 1.0, vec![-0.5]).is_err());
        // rays are normalized into [0, 2pi)
        let r = EnclosureRegion::new(0.0, vec![-core::f64::consts::PI], 1.0, vec![0.5]).unwrap();
        assert!((r.rays[0] - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn counting_rows_match_closed_form() {
        let rows = counting_asymptotics(1.0, 200).unwrap();
        let last = rows.last().unwrap();
        assert_eq!(last.k, 200);
        assert_eq!(last.radius, 7_940_100.0);
        assert!((last.ratio - 1.0).abs() < 0.01);
        assert!(counting_asymptotics(1.0, 2).is_err());
        assert!(counting_asymptotics(-1.0, 10).is_err());
    }

    #[test]
    fn cluster_rules() {
        let spec = eigen::eigenvalues(&build_g(10).unwrap()).unwrap();
        // tiny gap factor: the double zero still shares a cluster
        let tight = cluster_parentheses(&spec, 1e-9, 2.0 / 3.0).unwrap();
        assert_eq!(tight[0], vec![0, 1]);
        assert_eq!(tight.len(), 9);
        // infinite gap factor: everything in one cluster
        let loose = cluster_parentheses(&spec, f64::INFINITY, 2.0 / 3.0).unwrap();
        assert_eq!(loose.len(), 1);
        assert_eq!(loose[0].len(), 10);
    }

    #[test]
    fn hermitian_diagnostics_are_unity() {
        let m = build_g(8).unwrap();
        let kappa = eigenbasis_condition(&m).unwrap();
        assert!((kappa - 1.0).abs() < 1e-6);
        let spec = eigen::eigenvalues(&m).unwrap();
        let diag = riesz_diagnostics(&m, &spec, 0.5, 2.0 / 3.0).unwrap();
        assert!((diag.projector_condition - 1.0).abs() < 1e-6);
        assert!(diag.projector_condition <= diag.eigvec_condition + 1e-9);
    }

    #[test]
    fn riesz_constant_validates_partition() {
        let m = build_g(4).unwrap();
        let spec = eigen::eigenvalues(&m).unwrap();
        let bad = vec![vec![0usize, 1]];
        assert!(riesz_constant(&m, &spec, &bad).is_err());
    }
}
