//! Construction-based oracles for the dense eigensolver.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gribov_core::bargmann::{build_scalar_gribov, PomeronParams};
use gribov_core::eigen::{eigenvalues, eigenvectors, hessenberg, stabilized_spectrum};
use gribov_core::BandedComplexMatrix;

fn random_dense(rng: &mut ChaCha8Rng, n: usize) -> BandedComplexMatrix {
    let bw = n - 1;
    let mut m = BandedComplexMatrix::zeros(n, n, bw, bw).unwrap();
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        }
    }
    m
}

/// Random unitary via two rounds of modified Gram-Schmidt on a random
/// complex matrix; columns stored row-major.
#[allow(clippy::needless_range_loop)] // cols[i] read while cols[j] written
fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect()
        })
        .collect();
    for pass in 0..2 {
        for j in 0..n {
            for i in 0..j {
                let proj: Complex64 =
                    cols[i].iter().zip(cols[j].iter()).map(|(a, b)| a.conj() * b).sum();
                for r in 0..n {
                    let v = cols[i][r];
                    cols[j][r] -= proj * v;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm > 1e-8 || pass > 0);
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
    }
    let mut q = vec![Complex64::ZERO; n * n];
    for (j, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            q[r * n + j] = *z;
        }
    }
    q
}

fn similarity(q: &[Complex64], d: &[Complex64], n: usize) -> BandedComplexMatrix {
    // A = Q diag(d) Q*
    let mut m = BandedComplexMatrix::zeros(n, n, n - 1, n - 1).unwrap();
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += q[r * n + k] * d[k] * q[c * n + k].conj();
            }
            m.set(r, c, acc);
        }
    }
    m
}

/// Greedy nearest matching of computed eigenvalues against a reference
/// multiset; returns the largest pairing distance.
fn match_spectra(computed: &[Complex64], reference: &[Complex64]) -> f64 {
    let mut used = vec![false; reference.len()];
    let mut worst = 0.0f64;
    for z in computed {
        let mut best = f64::INFINITY;
        let mut best_i = 0;
        for (i, w) in reference.iter().enumerate() {
            if !used[i] {
                let d = (z - w).norm();
                if d < best {
                    best = d;
                    best_i = i;
                }
            }
        }
        used[best_i] = true;
        worst = worst.max(best);
    }
    worst
}

#[test]
fn hessenberg_reconstructs_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 50;
    let m = random_dense(&mut rng, n);
    let (h, q) = hessenberg(&m).unwrap();

    // strict Hessenberg structure
    for r in 2..n {
        for c in 0..r - 1 {
            assert_eq!(h.get(r, c), Complex64::ZERO);
        }
    }
    // unitarity of Q
    let mut defect = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += q.get(k, a).conj() * q.get(k, b);
            }
            let want = if a == b { Complex64::ONE } else { Complex64::ZERO };
            defect += (acc - want).norm_sqr();
        }
    }
    assert!(defect.sqrt() <= 1e-12 * n as f64);

    // Q H Q* = M
    let scale = m.frobenius_norm();
    let mut err = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::ZERO;
            for a in 0..n {
                let mut inner = Complex64::ZERO;
                for b in 0..n {
                    inner += h.get(a, b) * q.get(c, b).conj();
                }
                acc += q.get(r, a) * inner;
            }
            err += (acc - m.get(r, c)).norm_sqr();
        }
    }
    assert!(err.sqrt() <= 1e-12 * scale);
}

#[test]
fn recovers_spectrum_of_normal_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 120;
    let q = random_unitary(&mut rng, n);
    let d: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(4.0 * (rng.gen::<f64>() - 0.5), 4.0 * (rng.gen::<f64>() - 0.5)))
        .collect();
    let m = similarity(&q, &d, n);
    let spec = eigenvalues(&m).unwrap();
    let worst = match_spectra(&spec.eigenvalues, &d);
    let scale = d.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    assert!(worst <= 1e-10 * scale, "worst pairing distance {worst}");
}

#[test]
fn spectrum_invariant_under_unitary_similarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 60;
    let m = random_dense(&mut rng, n);
    let spec_m = eigenvalues(&m).unwrap();

    let q = random_unitary(&mut rng, n);
    // Q M Q*
    let mut rotated = BandedComplexMatrix::zeros(n, n, n - 1, n - 1).unwrap();
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::ZERO;
            for a in 0..n {
                let mut inner = Complex64::ZERO;
                for b in 0..n {
                    inner += m.get(a, b) * q[c * n + b].conj();
                }
                acc += q[r * n + a] * inner;
            }
            rotated.set(r, c, acc);
        }
    }
    let spec_r = eigenvalues(&rotated).unwrap();
    let scale = spec_m.eigenvalues.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let worst = match_spectra(&spec_r.eigenvalues, &spec_m.eigenvalues);
    assert!(worst <= 1e-10 * scale, "worst pairing distance {worst}");
}

#[test]
fn eigenvalue_sum_matches_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [40usize, 90] {
        let m = random_dense(&mut rng, n);
        let spec = eigenvalues(&m).unwrap();
        let sum: Complex64 = spec.eigenvalues.iter().sum();
        let tr = m.trace();
        assert!((sum - tr).norm() <= 1e-9 * tr.norm().max(1.0));
    }
}

#[test]
fn eigenvector_residual_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let n = 40;
    let m = random_dense(&mut rng, n);
    let spec = eigenvalues(&m).unwrap();
    let ev = eigenvectors(&m, &spec).unwrap();
    assert!(ev.defective.is_empty());
    let scale = m.frobenius_norm();
    for (j, col) in ev.columns.iter().enumerate() {
        let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        let mv = m.matvec(col).unwrap();
        let res: f64 = mv
            .iter()
            .zip(col.iter())
            .map(|(a, b)| (a - b * spec.eigenvalues[j]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-8 * scale, "column {j}: residual {res}");
    }
}

#[test]
fn hermitian_path_gives_unitary_eigenvectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let n = 50;
    let mut m = BandedComplexMatrix::zeros(n, n, n - 1, n - 1).unwrap();
    for r in 0..n {
        m.set(r, r, Complex64::new(rng.gen::<f64>() * 4.0 - 2.0, 0.0));
        for c in (r + 1)..n {
            let z = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            m.set(r, c, z);
            m.set(c, r, z.conj());
        }
    }
    let spec = eigenvalues(&m).unwrap();
    assert!(spec.eigenvalues.iter().all(|z| z.im == 0.0));
    let ev = eigenvectors(&m, &spec).unwrap();
    let mut defect = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let acc: Complex64 =
                ev.columns[a].iter().zip(ev.columns[b].iter()).map(|(x, y)| x.conj() * y).sum();
            let want = if a == b { Complex64::ONE } else { Complex64::ZERO };
            defect += (acc - want).norm_sqr();
        }
    }
    assert!(defect.sqrt() <= 1e-8, "orthogonality defect {}", defect.sqrt());
}

/// Repeated complex eigenvalues through the general path: two copies of a
/// rotation block give +-i with multiplicity two; the cluster logic must
/// still produce an orthonormal eigenbasis (the matrix is normal).
#[test]
fn repeated_complex_eigenvalues_keep_orthogonal_vectors() {
    let n = 4;
    let mut m = BandedComplexMatrix::zeros(n, n, n - 1, n - 1).unwrap();
    for b in [0usize, 2] {
        m.set(b, b + 1, Complex64::new(-1.0, 0.0));
        m.set(b + 1, b, Complex64::ONE);
    }
    let spec = eigenvalues(&m).unwrap();
    let mut ims: Vec<f64> = spec.eigenvalues.iter().map(|z| z.im).collect();
    ims.sort_by(f64::total_cmp);
    for (got, want) in ims.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let ev = eigenvectors(&m, &spec).unwrap();
    assert!(ev.defective.is_empty());
    for a in 0..n {
        for b in (a + 1)..n {
            let dot: Complex64 =
                ev.columns[a].iter().zip(ev.columns[b].iter()).map(|(x, y)| x.conj() * y).sum();
            assert!(dot.norm() < 1e-7, "columns {a},{b} overlap {}", dot.norm());
        }
    }
}

/// Frozen cross-validation against a LAPACK run (numpy eigvals, sorted by
/// the same modulus/phase key) for a complex-symmetric tridiagonal scalar
/// operator with every coupling active.
#[test]
fn matches_lapack_fixture_for_scalar_gribov() {
    let params = PomeronParams { lambda2: 1.0, lambda1: 0.1, mu: 0.3, lambda: 0.5, beta: 1.7 };
    let m = build_scalar_gribov(30, &params, false).unwrap();
    let spec = eigenvalues(&m).unwrap();
    let fixture = [
        (0usize, Complex64::new(0.9414059096485267, 0.33664094793959376)),
        (1, Complex64::new(0.9414059096485267, -0.33664094793959387)),
        (2, Complex64::new(8.587753086476267, 0.0)),
        (3, Complex64::new(28.435534985802025, 0.0)),
        (4, Complex64::new(66.70329977536728, 0.0)),
        (5, Complex64::new(129.38776945687846, 0.0)),
        (15, Complex64::new(3417.5120141981565, 0.0)),
        (28, Complex64::new(22097.159775941585, 0.0)),
        (29, Complex64::new(24541.74683492297, 0.0)),
    ];
    for (idx, want) in fixture {
        let got = spec.eigenvalues[idx];
        assert!(
            (got - want).norm() <= 1e-9 * (1.0 + want.norm()),
            "index {idx}: got {got}, want {want}"
        );
    }
}

#[test]
fn zero_matrix_spectrum() {
    let m = BandedComplexMatrix::zeros(5, 5, 0, 0).unwrap();
    let spec = eigenvalues(&m).unwrap();
    assert!(spec.eigenvalues.iter().all(|z| *z == Complex64::ZERO));
    assert_eq!(spec.iterations, 0);
}

/// Truncation stabilization of the weakly non-normal scalar operator
/// `G + 0.1 i H1`: at a tolerance of 1e-6 every eigenvalue of the N = 100
/// section persists in the N = 200 one, while at 1e-8 the topmost
/// eigenvalue (whose absolute truncation error is about 0.34) is the one
/// flagged unstable.
#[test]
fn stabilization_of_scalar_gribov_sections() {
    let params = PomeronParams { lambda2: 1.0, lambda1: 0.0, mu: 0.0, lambda: 0.1, beta: 1.0 };
    let build = |n: usize| build_scalar_gribov(n, &params, false);

    let spec6 = stabilized_spectrum(build, 100, 2.0, 1e-6).unwrap();
    assert!(spec6.stabilized.iter().all(|&s| s));

    let spec8 = stabilized_spectrum(build, 100, 2.0, 1e-8).unwrap();
    let unstable: Vec<usize> = (0..100).filter(|&i| !spec8.stabilized[i]).collect();
    assert_eq!(unstable, vec![99], "boundary layer must be the top eigenvalue");
    assert!((spec8.eigenvalues[99].norm() - 970_200.0).abs() < 1.0);
}
