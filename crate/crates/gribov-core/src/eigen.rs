//! Dense complex eigensolver and truncation-stabilization logic.
//!
//! The general path reduces to upper Hessenberg form by Householder
//! reflections and runs an explicit shifted QR iteration with Wilkinson
//! shifts, occasional exceptional shifts, and locally scaled deflation.
//! Hermitian inputs are detected and routed to a symmetric tridiagonal
//! path (Householder tridiagonalization, phase normalization, implicit QL
//! with shifts) that returns exactly real eigenvalues.
//!
//! Eigenvectors come from inverse iteration on the Hessenberg form with
//! the computed eigenvalues as shifts; numerically clustered eigenvalues
//! get starts (and iterates) re-orthogonalized against the vectors already
//! accepted for the cluster, and stagnation is reported as a defective
//! cluster. On the Hermitian path the eigenvectors are instead accumulated
//! from the reduction itself, which keeps them orthonormal to machine
//! precision.
//!
//! Eigenvalues are sorted by `(modulus, phase)` with phase in `[0, 2pi)`,
//! fixing a deterministic output order.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float as _;

use crate::error::Error;
use crate::matrix::BandedComplexMatrix;

/// Relative Frobenius threshold for routing a matrix to the Hermitian path.
pub const HERMITIAN_DETECT_TOL: f64 = 1e-13;

/// Residual contract for computed eigenpairs: `||M v - lambda v|| <=`
/// this factor times `||M||_F`. Pairs that end up above it are flagged
/// as belonging to a defective cluster.
pub const EIGENVECTOR_RESIDUAL_TOL: f64 = 1e-8;

/// Two eigenvalues within `NUMERICAL_MULTIPLICITY_TOL * (1 + |lambda|)` of
/// each other are treated as one numerical cluster.
pub const NUMERICAL_MULTIPLICITY_TOL: f64 = 1e-8;

const QR_SWEEPS_PER_DIM: usize = 30;
const QL_MAX_ITER_PER_EIGENVALUE: usize = 50;
const INVERSE_ITERATION_STEPS: usize = 6;

/// Computed spectrum with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// All eigenvalues (dimension many), sorted by `(modulus, phase)`.
    pub eigenvalues: Vec<Complex64>,
    /// Backward-error estimate: the largest subdiagonal magnitude
    /// discarded at a deflation, relative to `||M||_F`.
    pub residual_bound: f64,
    /// Per-eigenvalue truncation-stability flag. A direct solve marks
    /// every eigenvalue stabilized; [`stabilized_spectrum`] overwrites the
    /// flags by comparing against a larger truncation.
    pub stabilized: Vec<bool>,
    /// QR sweeps (general path) or QL iterations (Hermitian path).
    pub iterations: usize,
}

impl SpectrumResult {
    fn from_unsorted(mut eigenvalues: Vec<Complex64>, residual_bound: f64, iterations: usize) -> Self {
        sort_eigenvalues(&mut eigenvalues);
        let n = eigenvalues.len();
        Self { eigenvalues, residual_bound, stabilized: vec![true; n], iterations }
    }

    /// Indices of eigenvalues flagged stabilized.
    pub fn stabilized_indices(&self) -> Vec<usize> {
        self.stabilized
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }
}

/// Eigenvector matrix (unit columns, one per spectrum entry) plus quality
/// information.
#[derive(Debug, Clone)]
pub struct Eigenvectors {
    /// Column `j` approximates the eigenvector of `spectrum.eigenvalues[j]`.
    pub columns: Vec<Vec<Complex64>>,
    /// Largest `||M v - lambda v||` over the columns, relative to `||M||_F`.
    pub max_residual: f64,
    /// Spectrum indices where inverse iteration stagnated: the cluster is
    /// defective at working precision and condition numbers derived from
    /// these columns should be reported as infinite.
    pub defective: Vec<usize>,
}

/// Phase in `[0, 2pi)`; exactly 0 for the origin.
pub fn phase(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        return 0.0;
    }
    let t = z.im.atan2(z.re);
    if t < 0.0 {
        t + 2.0 * core::f64::consts::PI
    } else {
        t
    }
}

fn sort_eigenvalues(eigs: &mut [Complex64]) {
    eigs.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then_with(|| phase(*a).total_cmp(&phase(*b)))
    });
}

fn check_square_finite(m: &BandedComplexMatrix) -> Result<usize, Error> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigensolver needs a square matrix"));
    }
    if m.as_slice().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidParameter("matrix entries must be finite"));
    }
    Ok(m.rows())
}

fn fro_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn identity(n: usize) -> Vec<Complex64> {
    let mut q = vec![Complex64::ZERO; n * n];
    for k in 0..n {
        q[k * n + k] = Complex64::ONE;
    }
    q
}

/// Householder reduction to upper Hessenberg form, in place. When `q` is
/// given (an `n x n` identity), accumulates the similarity so that on
/// return `Q H Q* = A_in`.
fn hessenberg_inplace(a: &mut [Complex64], n: usize, mut q: Option<&mut [Complex64]>) {
    if n < 3 {
        return;
    }
    let mut v = vec![Complex64::ZERO; n];
    for k in 0..n - 2 {
        let m = n - k - 1; // active column height below the diagonal
        let x0 = a[(k + 1) * n + k];
        let mut tail2 = 0.0;
        for r in (k + 2)..n {
            tail2 += a[r * n + k].norm_sqr();
        }
        if tail2 == 0.0 {
            continue; // already Hessenberg in this column
        }
        let xnorm = (x0.norm_sqr() + tail2).sqrt();
        let phase0 = if x0 == Complex64::ZERO { Complex64::ONE } else { x0 / x0.norm() };
        let alpha = phase0 * xnorm;
        v[0] = x0 + alpha;
        for i in 1..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        let vnorm2 = (x0.norm() + xnorm) * (x0.norm() + xnorm) + tail2;
        let tau = 2.0 / vnorm2;

        // left: rows k+1..n of columns k..n
        for c in k..n {
            let mut s = Complex64::ZERO;
            for i in 0..m {
                s += v[i].conj() * a[(k + 1 + i) * n + c];
            }
            s *= tau;
            for i in 0..m {
                a[(k + 1 + i) * n + c] -= s * v[i];
            }
        }
        // right: columns k+1..n of all rows
        for r in 0..n {
            let mut s = Complex64::ZERO;
            for i in 0..m {
                s += a[r * n + (k + 1 + i)] * v[i];
            }
            s *= tau;
            for i in 0..m {
                a[r * n + (k + 1 + i)] -= s * v[i].conj();
            }
        }
        // the reflector maps the column to -alpha e1 exactly
        a[(k + 1) * n + k] = -alpha;
        for r in (k + 2)..n {
            a[r * n + k] = Complex64::ZERO;
        }
        if let Some(qm) = q.as_deref_mut() {
            for r in 0..n {
                let mut s = Complex64::ZERO;
                for i in 0..m {
                    s += qm[r * n + (k + 1 + i)] * v[i];
                }
                s *= tau;
                for i in 0..m {
                    qm[r * n + (k + 1 + i)] -= s * v[i].conj();
                }
            }
        }
    }
}

/// Upper Hessenberg form `(H, Q)` with `Q* M Q = H` and `Q` unitary.
pub fn hessenberg(m: &BandedComplexMatrix) -> Result<(BandedComplexMatrix, BandedComplexMatrix), Error> {
    let n = check_square_finite(m)?;
    let mut a = m.as_slice().to_vec();
    let mut q = identity(n);
    hessenberg_inplace(&mut a, n, Some(&mut q));
    let mut hm = BandedComplexMatrix::zeros(n, n, 1, n.saturating_sub(1))?;
    for r in 0..n {
        for c in r.saturating_sub(1)..n {
            hm.set(r, c, a[r * n + c]);
        }
    }
    let mut qm = BandedComplexMatrix::zeros(n, n, n - 1, n - 1)?;
    for r in 0..n {
        for c in 0..n {
            qm.set(r, c, q[r * n + c]);
        }
    }
    Ok((hm, qm))
}

/// Complex Givens rotation `[c s; -conj(s) c]` (c real) mapping `(f, g)`
/// to `(r, 0)`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    if g == Complex64::ZERO {
        return (1.0, Complex64::ZERO, f);
    }
    if f == Complex64::ZERO {
        let ga = g.norm();
        return (0.0, g.conj() / ga, Complex64::new(ga, 0.0));
    }
    let fa = f.norm();
    let ga = g.norm();
    let d = fa.hypot(ga);
    let fs = f / fa;
    (fa / d, fs * g.conj() / d, fs * d)
}

/// Eigenvalues of a 2x2 block, the larger-magnitude root first.
fn eig2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let m = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (m * m - det).sqrt();
    let r1 = m + disc;
    let r2 = m - disc;
    let big = if r1.norm() >= r2.norm() { r1 } else { r2 };
    if big == Complex64::ZERO {
        (Complex64::ZERO, Complex64::ZERO)
    } else {
        (big, det / big)
    }
}

fn wilkinson_shift(h: &[Complex64], n: usize, hi: usize) -> Complex64 {
    let a = h[(hi - 1) * n + (hi - 1)];
    let b = h[(hi - 1) * n + hi];
    let c = h[hi * n + (hi - 1)];
    let d = h[hi * n + hi];
    let (e1, e2) = eig2x2(a, b, c, d);
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// One explicit shifted QR step on the decoupled window `[l, hi]`.
fn qr_sweep(h: &mut [Complex64], n: usize, l: usize, hi: usize, shift: Complex64) {
    for i in l..=hi {
        h[i * n + i] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - l);
    for i in l..hi {
        let f = h[i * n + i];
        let g = h[(i + 1) * n + i];
        let (c, s, r) = givens(f, g);
        h[i * n + i] = r;
        h[(i + 1) * n + i] = Complex64::ZERO;
        for col in (i + 1)..=hi {
            let x = h[i * n + col];
            let y = h[(i + 1) * n + col];
            h[i * n + col] = c * x + s * y;
            h[(i + 1) * n + col] = -s.conj() * x + c * y;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let i = l + idx;
        for row in l..=(i + 1).min(hi) {
            let x = h[row * n + i];
            let y = h[row * n + i + 1];
            h[row * n + i] = c * x + s.conj() * y;
            h[row * n + i + 1] = -s * x + c * y;
        }
    }
    for i in l..=hi {
        h[i * n + i] += shift;
    }
}

/// Shifted QR with deflation on an upper Hessenberg matrix. Returns the
/// eigenvalues (unsorted), the sweep count, and the largest discarded
/// subdiagonal magnitude.
fn qr_eigenvalues(h: &mut [Complex64], n: usize) -> Result<(Vec<Complex64>, usize, f64), Error> {
    let fro = fro_norm(h);
    let max_sweeps = QR_SWEEPS_PER_DIM * n;
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    let mut max_discard = 0.0f64;
    loop {
        // locate the window start: the first negligible subdiagonal at or
        // below `hi`, measured against its diagonal neighbours
        let mut l = hi;
        while l > 0 {
            let sub = h[l * n + l - 1].norm();
            let mut s = h[(l - 1) * n + (l - 1)].norm() + h[l * n + l].norm();
            if s == 0.0 {
                s = fro;
            }
            if sub <= f64::EPSILON * s {
                if sub > max_discard {
                    max_discard = sub;
                }
                h[l * n + l - 1] = Complex64::ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eigs.push(h[hi * n + hi]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if l + 1 == hi {
            let (e1, e2) = eig2x2(
                h[l * n + l],
                h[l * n + hi],
                h[hi * n + l],
                h[hi * n + hi],
            );
            eigs.push(e1);
            eigs.push(e2);
            if l == 0 {
                break;
            }
            hi = l - 1;
            since_deflation = 0;
            continue;
        }
        if sweeps >= max_sweeps {
            return Err(Error::IterationLimit { sweeps, deflated: eigs });
        }
        sweeps += 1;
        since_deflation += 1;
        let shift = if since_deflation.is_multiple_of(10) {
            // exceptional shift to break symmetric stagnation
            h[hi * n + hi] + Complex64::new(0.75 * h[hi * n + hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h, n, hi)
        };
        qr_sweep(h, n, l, hi, shift);
    }
    Ok((eigs, sweeps, max_discard))
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix
/// (diagonal `d`, subdiagonal `e` with `e[n-1]` unused), optionally
/// accumulating the real rotations into the complex column matrix `q`.
fn tql2(
    d: &mut [f64],
    e: &mut [f64],
    mut q: Option<&mut [Complex64]>,
    n: usize,
) -> Result<usize, Error> {
    let eps = f64::EPSILON;
    let mut iterations = 0usize;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0usize;
            loop {
                iter += 1;
                iterations += 1;
                if iter > QL_MAX_ITER_PER_EIGENVALUE {
                    let deflated = d[..l].iter().map(|&x| Complex64::new(x, 0.0)).collect();
                    return Err(Error::IterationLimit { sweeps: iterations, deflated });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let gg = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * gg;
                    d[i + 1] = h + s * (c * gg + s * d[i]);
                    if let Some(qm) = q.as_deref_mut() {
                        for k in 0..n {
                            let hq = qm[k * n + i + 1];
                            qm[k * n + i + 1] = qm[k * n + i] * s + hq * c;
                            qm[k * n + i] = qm[k * n + i] * c - hq * s;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(iterations)
}

/// Real eigenvalues (unsorted), optional eigenvector matrix (row-major,
/// columns in the same order), iteration count.
type HermitianEigen = (Vec<f64>, Option<Vec<Complex64>>, usize);

/// Hermitian path: tridiagonalize, rotate the subdiagonal real, run QL.
fn hermitian_eigen(m: &BandedComplexMatrix, want_vectors: bool) -> Result<HermitianEigen, Error> {
    let n = m.rows();
    let mut a = m.as_slice().to_vec();
    let mut q = want_vectors.then(|| identity(n));
    hessenberg_inplace(&mut a, n, q.as_deref_mut());
    // Hermitian Hessenberg = tridiagonal; read off diagonal and subdiagonal
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut e = vec![0.0f64; n];
    let mut phase_acc = Complex64::ONE;
    for i in 0..n.saturating_sub(1) {
        let t = a[(i + 1) * n + i];
        e[i] = t.norm();
        // unitary diagonal similarity making the subdiagonal real
        let step = if t == Complex64::ZERO { Complex64::ONE } else { t / t.norm() };
        phase_acc *= step;
        if let Some(qm) = q.as_deref_mut() {
            for r in 0..n {
                qm[r * n + i + 1] *= phase_acc;
            }
        }
    }
    let iterations = tql2(&mut d, &mut e, q.as_deref_mut(), n)?;
    Ok((d, q, iterations))
}

/// Eigenvalues of a square matrix with finite entries.
///
/// Hermitian inputs (Frobenius defect at most [`HERMITIAN_DETECT_TOL`]
/// relative) take the symmetric tridiagonal path and come back exactly
/// real; everything else goes through Hessenberg reduction and shifted QR.
pub fn eigenvalues(m: &BandedComplexMatrix) -> Result<SpectrumResult, Error> {
    let n = check_square_finite(m)?;
    if m.is_hermitian(HERMITIAN_DETECT_TOL) {
        let (d, _, iterations) = hermitian_eigen(m, false)?;
        let eigs: Vec<Complex64> = d.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        return Ok(SpectrumResult::from_unsorted(eigs, 0.0, iterations));
    }
    let mut a = m.as_slice().to_vec();
    hessenberg_inplace(&mut a, n, None);
    let fro = fro_norm(m.as_slice());
    let (eigs, sweeps, max_discard) = qr_eigenvalues(&mut a, n)?;
    let residual_bound = if fro > 0.0 { max_discard / fro } else { 0.0 };
    Ok(SpectrumResult::from_unsorted(eigs, residual_bound, sweeps))
}

/// Groups consecutive indices of the sorted spectrum whose eigenvalues
/// agree within the numerical-multiplicity tolerance.
fn numerical_clusters(eigs: &[Complex64]) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, z) in eigs.iter().enumerate() {
        let extend = clusters.last().and_then(|c| c.last()).is_some_and(|&prev| {
            (z - eigs[prev]).norm() <= NUMERICAL_MULTIPLICITY_TOL * (1.0 + z.norm())
        });
        if extend {
            clusters.last_mut().unwrap().push(i);
        } else {
            clusters.push(vec![i]);
        }
    }
    clusters
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Removes the components of `v` along the given unit vectors.
fn orthogonalize_against(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let mut proj = Complex64::ZERO;
        for (x, y) in b.iter().zip(v.iter()) {
            proj += x.conj() * *y;
        }
        for (x, y) in b.iter().zip(v.iter_mut()) {
            *y -= proj * *x;
        }
    }
}

/// Small deterministic generator for inverse-iteration start vectors.
fn seeded_start(n: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    (0..n).map(|_| Complex64::new(next(), next())).collect()
}

/// Eigenvectors for a previously computed spectrum; column `j` belongs to
/// `spectrum.eigenvalues[j]` and has unit norm.
pub fn eigenvectors(m: &BandedComplexMatrix, spectrum: &SpectrumResult) -> Result<Eigenvectors, Error> {
    let n = check_square_finite(m)?;
    if spectrum.eigenvalues.len() != n {
        return Err(Error::DimensionMismatch("spectrum length vs matrix dimension"));
    }
    if n == 0 {
        return Err(Error::InvalidTruncation);
    }
    if m.is_hermitian(HERMITIAN_DETECT_TOL) {
        return hermitian_eigenvectors(m);
    }

    let mut h = m.as_slice().to_vec();
    let mut q = identity(n);
    hessenberg_inplace(&mut h, n, Some(&mut q));
    let scale = fro_norm(&h).max(f64::MIN_POSITIVE);

    let clusters = numerical_clusters(&spectrum.eigenvalues);
    let mut columns = vec![Vec::new(); n];
    let mut max_residual = 0.0f64;
    let mut defective = Vec::new();

    for cluster in &clusters {
        let mut accepted: Vec<Vec<Complex64>> = Vec::new();
        for &idx in cluster {
            let lambda = spectrum.eigenvalues[idx];
            let (r, rots) = factor_shifted(&h, n, lambda, scale);
            let mut w = seeded_start(n, idx as u64 + 1);
            orthogonalize_against(&mut w, &accepted);
            normalize(&mut w);
            let mut best = w.clone();
            let mut best_res = f64::INFINITY;
            for _ in 0..INVERSE_ITERATION_STEPS {
                let mut y = w.clone();
                apply_rotations(&mut y, &rots);
                back_substitute(&r, n, &mut y);
                orthogonalize_against(&mut y, &accepted);
                if normalize(&mut y) == 0.0 {
                    // start was entirely inside the accepted span; reseed
                    y = seeded_start(n, (idx as u64 + 1) << 16);
                    orthogonalize_against(&mut y, &accepted);
                    normalize(&mut y);
                }
                w = y;
                let res = hessenberg_residual(&h, n, lambda, &w);
                if res < best_res {
                    best_res = res;
                    best.copy_from_slice(&w);
                }
                if res <= 1e3 * f64::EPSILON * scale {
                    break;
                }
            }
            if best_res > EIGENVECTOR_RESIDUAL_TOL * scale {
                defective.push(idx);
            }
            max_residual = max_residual.max(best_res / scale);
            accepted.push(best.clone());
            // back-transform to the original basis
            let mut v = vec![Complex64::ZERO; n];
            for rr in 0..n {
                let mut acc = Complex64::ZERO;
                for cc in 0..n {
                    acc += q[rr * n + cc] * best[cc];
                }
                v[rr] = acc;
            }
            normalize(&mut v);
            columns[idx] = v;
        }
    }
    Ok(Eigenvectors { columns, max_residual, defective })
}

fn hermitian_eigenvectors(m: &BandedComplexMatrix) -> Result<Eigenvectors, Error> {
    let n = m.rows();
    let (d, q, _) = hermitian_eigen(m, true)?;
    let q = q.expect("vectors requested");
    // reorder columns to the canonical (modulus, phase) eigenvalue order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (Complex64::new(d[i], 0.0), Complex64::new(d[j], 0.0));
        a.norm().total_cmp(&b.norm()).then_with(|| phase(a).total_cmp(&phase(b)))
    });
    let mut columns = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    let scale = fro_norm(m.as_slice()).max(f64::MIN_POSITIVE);
    for &src in &order {
        let mut col: Vec<Complex64> = (0..n).map(|r| q[r * n + src]).collect();
        normalize(&mut col);
        let mv = m.matvec(&col)?;
        let res: f64 = mv
            .iter()
            .zip(col.iter())
            .map(|(a, b)| (a - b * d[src]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(res / scale);
        columns.push(col);
    }
    Ok(Eigenvectors { columns, max_residual, defective: Vec::new() })
}

/// Givens QR factorization of `H - lambda I` for a Hessenberg `H`;
/// returns the upper-triangular factor (diagonal floored away from zero)
/// and the rotations.
fn factor_shifted(
    h: &[Complex64],
    n: usize,
    lambda: Complex64,
    scale: f64,
) -> (Vec<Complex64>, Vec<(f64, Complex64)>) {
    let mut r = h.to_vec();
    for i in 0..n {
        r[i * n + i] -= lambda;
    }
    let mut rots = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let f = r[i * n + i];
        let g = r[(i + 1) * n + i];
        let (c, s, rr) = givens(f, g);
        r[i * n + i] = rr;
        r[(i + 1) * n + i] = Complex64::ZERO;
        for col in (i + 1)..n {
            let x = r[i * n + col];
            let y = r[(i + 1) * n + col];
            r[i * n + col] = c * x + s * y;
            r[(i + 1) * n + col] = -s.conj() * x + c * y;
        }
        rots.push((c, s));
    }
    let tiny = f64::EPSILON * (scale + lambda.norm()) + f64::MIN_POSITIVE;
    for i in 0..n {
        if r[i * n + i].norm() < tiny {
            r[i * n + i] = Complex64::new(tiny, 0.0);
        }
    }
    (r, rots)
}

fn apply_rotations(y: &mut [Complex64], rots: &[(f64, Complex64)]) {
    for (i, &(c, s)) in rots.iter().enumerate() {
        let x = y[i];
        let z = y[i + 1];
        y[i] = c * x + s * z;
        y[i + 1] = -s.conj() * x + c * z;
    }
}

fn back_substitute(r: &[Complex64], n: usize, y: &mut [Complex64]) {
    for i in (0..n).rev() {
        let mut acc = y[i];
        for c in (i + 1)..n {
            acc -= r[i * n + c] * y[c];
        }
        y[i] = acc / r[i * n + i];
    }
    // guard against overflow from the floored pivots
    let nn = norm2(y);
    if !nn.is_finite() {
        let m = y.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0f64, f64::max);
        for z in y.iter_mut() {
            *z /= m;
        }
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let nn = norm2(v);
    if nn > 0.0 {
        for z in v.iter_mut() {
            *z /= nn;
        }
    }
    nn
}

/// `||H w - lambda w||` for an upper Hessenberg `H`.
fn hessenberg_residual(h: &[Complex64], n: usize, lambda: Complex64, w: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for r in 0..n {
        let mut y = Complex64::ZERO;
        for c in r.saturating_sub(1)..n {
            y += h[r * n + c] * w[c];
        }
        y -= lambda * w[r];
        acc += y.norm_sqr();
    }
    acc.sqrt()
}

/// Number of eigenvalues of modulus at most `r`, with multiplicity.
pub fn counting(spectrum: &SpectrumResult, r: f64) -> usize {
    spectrum.eigenvalues.iter().filter(|z| z.norm() <= r).count()
}

/// Marks each eigenvalue of `small` stabilized iff some eigenvalue of
/// `large` lies within `rel_tol * (1 + |lambda|)` of it.
pub fn flag_stabilized(small: &mut SpectrumResult, large: &SpectrumResult, rel_tol: f64) {
    for (flag, z) in small.stabilized.iter_mut().zip(small.eigenvalues.iter()) {
        let tol = rel_tol * (1.0 + z.norm());
        *flag = large.eigenvalues.iter().any(|w| (w - z).norm() <= tol);
    }
}

/// Solves the truncation at `n_trunc` and at `ceil(growth * n_trunc)` and
/// flags which eigenvalues of the smaller truncation persist in the larger
/// one. Only stabilized eigenvalues should feed enclosure or Riesz
/// analysis.
pub fn stabilized_spectrum<F>(
    build: F,
    n_trunc: usize,
    growth: f64,
    rel_tol: f64,
) -> Result<SpectrumResult, Error>
where
    F: Fn(usize) -> Result<BandedComplexMatrix, Error>,
{
    if n_trunc == 0 {
        return Err(Error::InvalidTruncation);
    }
    if !(growth.is_finite() && growth > 1.0) {
        return Err(Error::InvalidParameter("growth must exceed 1"));
    }
    if !(rel_tol.is_finite() && rel_tol > 0.0) {
        return Err(Error::InvalidParameter("rel_tol must be positive"));
    }
    let n_big = ((growth * n_trunc as f64).ceil() as usize).max(n_trunc + 1);
    let mut small = eigenvalues(&build(n_trunc)?)?;
    let large = eigenvalues(&build(n_big)?)?;
    flag_stabilized(&mut small, &large, rel_tol);
    Ok(small)
}
