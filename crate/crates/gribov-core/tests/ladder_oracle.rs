//! Independent symbolic oracle for the ladder-operator builders.
//!
//! The oracle works in the monomial basis: a vector of integer
//! coefficients over powers `z^m`. Differentiation and multiplication by
//! `z` are exact there, so `H1 z^k = A*(A*+A)A z^k` comes out with exact
//! integer coefficients, and the change back to the normalized basis
//! `e_m = z^m / sqrt(m!)` multiplies by `sqrt(m!/k!)`, computed as the
//! square root of an exact integer ratio. No ladder-entry formula is
//! shared with the builder.

use num_complex::Complex64;

use gribov_core::bargmann::{build_g, build_h0, build_h1, build_s, build_scalar_gribov, PomeronParams};
use gribov_core::BandedComplexMatrix;

/// Coefficients over monomials: `poly[m]` multiplies `z^m`.
type Poly = Vec<f64>;

fn differentiate(p: &Poly) -> Poly {
    let mut out = vec![0.0; p.len()];
    for m in 1..p.len() {
        out[m - 1] += m as f64 * p[m];
    }
    out
}

fn multiply_by_z(p: &Poly) -> Poly {
    let mut out = vec![0.0; p.len() + 1];
    for (m, &c) in p.iter().enumerate() {
        out[m + 1] = c;
    }
    out
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (m, slot) in out.iter_mut().enumerate() {
        *slot = a.get(m).copied().unwrap_or(0.0) + b.get(m).copied().unwrap_or(0.0);
    }
    out
}

/// `sqrt(m! / k!)` via an exact integer product under a single square root.
fn sqrt_factorial_ratio(m: usize, k: usize) -> f64 {
    if m >= k {
        let mut prod = 1.0;
        for j in (k + 1)..=m {
            prod *= j as f64;
        }
        prod.sqrt()
    } else {
        let mut prod = 1.0;
        for j in (m + 1)..=k {
            prod *= j as f64;
        }
        1.0 / prod.sqrt()
    }
}

/// Applies `H1 = A*(A*+A)A` to `z^k` symbolically and re-expands in the
/// normalized basis. Returns the coefficient of `e_m` for `m = 1..=rows`.
fn h1_column_oracle(k: usize, rows: usize) -> Vec<f64> {
    let mut p = vec![0.0; k + 1];
    p[k] = 1.0;
    let after_a = differentiate(&p);
    let after_mid = add(&multiply_by_z(&after_a), &differentiate(&after_a));
    let final_poly = multiply_by_z(&after_mid);
    let mut col = vec![0.0; rows];
    for m in 1..=rows {
        let c = final_poly.get(m).copied().unwrap_or(0.0);
        if c != 0.0 {
            col[m - 1] = c * sqrt_factorial_ratio(m, k);
        }
    }
    col
}

fn assert_close_rel(a: f64, b: f64, tol: f64) {
    assert!(
        (a - b).abs() <= tol * 1f64.max(b.abs()),
        "got {a}, want {b} (tol {tol})"
    );
}

#[test]
fn h1_matches_symbolic_oracle_exact_image() {
    let n = 50;
    let m = build_h1(n, true).unwrap();
    for k in 1..=n {
        let col = h1_column_oracle(k, n + 1);
        for (r, want) in col.iter().enumerate() {
            assert_close_rel(m.get(r, k - 1).re, *want, 1e-14);
            assert_eq!(m.get(r, k - 1).im, 0.0);
        }
    }
}

#[test]
fn h1_matches_symbolic_oracle_square() {
    let n = 50;
    let m = build_h1(n, false).unwrap();
    for k in 1..=n {
        let col = h1_column_oracle(k, n);
        for (r, want) in col.iter().enumerate() {
            assert_close_rel(m.get(r, k - 1).re, *want, 1e-14);
        }
    }
}

/// The same symbolic machinery recovers the diagonal operators: `H0`, `S`,
/// `G` are `A*A`, `A*^2 A^2`, `A*^3 A^3`.
#[test]
fn diagonal_builders_match_symbolic_oracle() {
    let n = 30;
    let apply = |reps: usize, k: usize| -> f64 {
        let mut p = vec![0.0; k + 1];
        p[k] = 1.0;
        for _ in 0..reps {
            p = differentiate(&p);
        }
        for _ in 0..reps {
            p = multiply_by_z(&p);
        }
        p.get(k).copied().unwrap_or(0.0)
    };
    let h0 = build_h0(n).unwrap();
    let s = build_s(n).unwrap();
    let g = build_g(n).unwrap();
    for k in 1..=n {
        assert_eq!(h0.get(k - 1, k - 1).re, apply(1, k));
        assert_eq!(s.get(k - 1, k - 1).re, apply(2, k));
        assert_eq!(g.get(k - 1, k - 1).re, apply(3, k));
    }
}

#[test]
fn exact_image_column_norms_match_closed_form() {
    let n = 60;
    let m = build_h1(n, true).unwrap();
    for k in 1..=n {
        let kf = k as f64;
        let want = kf * kf * (kf + 1.0) + (kf - 1.0) * (kf - 1.0) * kf;
        let got: f64 = (0..m.rows()).map(|r| m.get(r, k - 1).norm_sqr()).sum();
        assert!((got - want).abs() <= 1e-12 * (1.0 + want));
    }
}

fn entrywise_close(a: &BandedComplexMatrix, b: &BandedComplexMatrix, tol: f64) {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let (x, y) = (a.get(r, c), b.get(r, c));
            assert!(
                (x - y).norm() <= tol * (1.0 + y.norm()),
                "entry ({r},{c}): got {x}, want {y}"
            );
        }
    }
}

#[test]
fn scalar_gribov_is_linear_in_each_coupling() {
    let n = 25;
    let base = PomeronParams { lambda2: 0.7, lambda1: -0.4, mu: 1.3, lambda: 0.9, beta: 1.7 };
    // coupling-by-coupling: sum of single-coupling builds equals the full build
    let only = |f: &dyn Fn(PomeronParams) -> PomeronParams| {
        build_scalar_gribov(
            n,
            &f(PomeronParams { lambda2: 0.0, lambda1: 0.0, mu: 0.0, lambda: 0.0, beta: base.beta }),
            false,
        )
        .unwrap()
    };
    let mut sum = only(&|p| PomeronParams { lambda2: base.lambda2, ..p });
    sum.add_scaled_assign(&only(&|p| PomeronParams { lambda1: base.lambda1, ..p }), Complex64::ONE)
        .unwrap();
    sum.add_scaled_assign(&only(&|p| PomeronParams { mu: base.mu, ..p }), Complex64::ONE).unwrap();
    sum.add_scaled_assign(&only(&|p| PomeronParams { lambda: base.lambda, ..p }), Complex64::ONE)
        .unwrap();
    let full = build_scalar_gribov(n, &base, false).unwrap();
    entrywise_close(&sum, &full, 1e-14);

    // additivity in the magic coupling: build(0.3 + 0.4) = build(0.3) + 0.4 G
    let mut lhs = build_scalar_gribov(n, &PomeronParams { lambda2: 0.3, ..base }, false).unwrap();
    let g_extra = build_scalar_gribov(
        n,
        &PomeronParams { lambda2: 0.4, lambda1: 0.0, mu: 0.0, lambda: 0.0, beta: base.beta },
        false,
    )
    .unwrap();
    lhs.add_scaled_assign(&g_extra, Complex64::ONE).unwrap();
    let rhs = build_scalar_gribov(n, &PomeronParams { lambda2: 0.7, ..base }, false).unwrap();
    entrywise_close(&lhs, &rhs, 1e-12);
}
