use std::f64::consts::PI;

use chtg_core::classify::{
    classify_trace, eigenvalues, elliptic_windows, goldman_discriminant, IsometryClass,
    BOUNDARY_TOL,
};
use chtg_core::triangle::{
    build_gram, circle_residual_numeric, product_matrix, product_trace, reflection_matrices,
    trace_formula, TriangleParams, VertexOrder,
};
use nalgebra::Matrix3;
use num_complex::Complex64;
use proptest::prelude::*;

fn mm(m: u32, alpha: f64) -> TriangleParams {
    TriangleParams::mm_inf(m, alpha).unwrap()
}

/// `8cos²(π/m)·e^{iα} − 8cos²(π/m) − 1`, written out directly.
fn oracle_trace(m: u32, alpha: f64) -> Complex64 {
    let c = 8.0 * (PI / f64::from(m)).cos().powi(2);
    Complex64::new(c * alpha.cos() - c - 1.0, c * alpha.sin())
}

fn max_abs(m: &Matrix3<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn matrix_trace_matches_closed_form_on_grid() {
    for m in 2..=12 {
        for i in 0..100 {
            let alpha = 2.0 * PI * f64::from(i) / 100.0;
            let p = mm(m, alpha);
            let t = product_trace(&build_gram(&p).unwrap());
            assert!((t - trace_formula(&p)).norm() < 1e-9, "m={m} alpha={alpha}");
            assert!((t - oracle_trace(m, alpha)).norm() < 1e-9, "m={m} alpha={alpha}");
            assert!(circle_residual_numeric(&p).unwrap() < 1e-12);
        }
    }
}

#[test]
fn trace_examples() {
    let t = trace_formula(&mm(3, PI));
    assert!((t - Complex64::new(-5.0, 0.0)).norm() < 1e-12);
    for alpha in [0.0, 1.0, 4.0] {
        let t = trace_formula(&mm(2, alpha));
        assert!((t + 1.0).norm() < 1e-15);
    }
    let t = trace_formula(&mm(7, 0.0));
    assert!((t + 1.0).norm() < 1e-12);
}

#[test]
fn reflection_contracts() {
    let id = Matrix3::<Complex64>::identity();
    for m in 2..=12 {
        for i in 0..50 {
            let g = build_gram(&mm(m, 2.0 * PI * f64::from(i) / 50.0)).unwrap();
            let rs = reflection_matrices(&g);
            for r in &rs {
                let r = r.r;
                assert!(max_abs(&(r * r - id)) < 1e-12);
                assert!(max_abs(&(r.adjoint() * g.h * r - g.h)) < 1e-12);
                assert!((r.determinant() - 1.0).norm() < 1e-12);
                assert_eq!(r.trace(), Complex64::new(-1.0, 0.0));
            }
            assert!((product_matrix(&rs).determinant() - 1.0).norm() < 1e-12);
        }
    }
}

#[test]
fn gram_signature() {
    for m in 3..=12 {
        for i in 1..64 {
            let g = build_gram(&mm(m, 2.0 * PI * f64::from(i) / 64.0)).unwrap();
            assert_eq!((g.signature.pos, g.signature.neg, g.signature.zero), (2, 1, 0), "m={m} i={i}");
            assert_eq!(g.h, g.h.adjoint());
            for k in 0..3 {
                assert_eq!(g.h[(k, k)], Complex64::new(1.0, 0.0));
            }
        }
        assert!(build_gram(&mm(m, 0.0)).unwrap().signature.is_degenerate_limit());
    }
    assert!(build_gram(&mm(2, 1.0)).unwrap().signature.is_degenerate_limit());
    // the |H12 H23 H31| = r1 r2 r3 phase convention
    let g = build_gram(&mm(4, 1.2)).unwrap();
    let prod = g.h[(0, 1)] * g.h[(1, 2)] * g.h[(2, 0)];
    let r = (PI / 4.0).cos();
    assert!((prod - Complex64::from_polar(r * r, 1.2)).norm() < 1e-12);
}

#[test]
fn compact_triangles_are_rejected() {
    use VertexOrder::Finite;
    // (3,3,3) at α = 0 is spherical-like: H is positive definite
    let p = TriangleParams::new([Finite(3), Finite(3), Finite(3)], 0.0).unwrap();
    assert!(build_gram(&p).is_err());
}

#[test]
fn real_part_bound() {
    for m in 2..=12 {
        for i in 0..200 {
            let alpha = 2.0 * PI * f64::from(i) / 200.0;
            let t = trace_formula(&mm(m, alpha));
            assert!(t.re <= -1.0 + 1e-12);
            let equal = (t.re + 1.0).abs() < 1e-12;
            assert_eq!(equal, (t + 1.0).norm() < 1e-12, "m={m} alpha={alpha}");
        }
    }
}

/// `(x − 3)³(x + 1)`, the discriminant restricted to real traces.
fn real_oracle(x: f64) -> f64 {
    (x - 3.0).powi(3) * (x + 1.0)
}

#[test]
fn discriminant_on_real_line() {
    for k in -10..10 {
        let x = f64::from(k) + 0.25;
        let f = goldman_discriminant(Complex64::new(x, 0.0));
        assert!((f - real_oracle(x)).abs() < 1e-9 * (1.0 + real_oracle(x).abs()));
    }
    assert_eq!(classify_trace(Complex64::new(3.0, 0.0), BOUNDARY_TOL), IsometryClass::Boundary);
    assert_eq!(classify_trace(Complex64::new(0.0, 0.0), BOUNDARY_TOL), IsometryClass::RegularElliptic);
    assert_eq!(classify_trace(Complex64::new(-5.0, 0.0), BOUNDARY_TOL), IsometryClass::Loxodromic);
    assert_eq!(classify_trace(trace_formula(&mm(5, 0.0)), BOUNDARY_TOL), IsometryClass::Boundary);
}

proptest! {
    #[test]
    fn discriminant_is_conjugation_invariant(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        let t = Complex64::new(re, im);
        let (a, b) = (goldman_discriminant(t), goldman_discriminant(t.conj()));
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        prop_assert_eq!(classify_trace(t, BOUNDARY_TOL), classify_trace(t.conj(), BOUNDARY_TOL));
    }

    #[test]
    fn discriminant_is_invariant_under_cube_roots(re in -5.0f64..5.0, im in -5.0f64..5.0, j in 1u32..3) {
        // f(ω₃τ) = f(τ): the trace is defined up to a cube root of unity
        let t = Complex64::new(re, im);
        let w = Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) / 3.0);
        let (a, b) = (goldman_discriminant(t), goldman_discriminant(w * t));
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn trace_is_conjugate_under_reflected_alpha(m in 2u32..=12, alpha in 0.0f64..(2.0 * PI)) {
        let a = trace_formula(&mm(m, alpha));
        let b = trace_formula(&mm(m, 2.0 * PI - alpha));
        prop_assert!((a - b.conj()).norm() < 1e-12);
    }
}

#[test]
fn windows_by_order() {
    assert!(elliptic_windows(2, 4096).is_empty());
    for m in 3..=8 {
        assert!(elliptic_windows(m, 4096).is_empty(), "m={m}");
    }
    let w = elliptic_windows(10, 4096);
    assert_eq!(w.len(), 2);
    assert!((w[0].0 - 0.34112).abs() < 1e-4 && (w[0].1 - 0.35773).abs() < 1e-4);
    for m in 9..=12 {
        let w = elliptic_windows(m, 4096);
        assert_eq!(w.len(), 2, "m={m}");
        for (lo, hi) in &w {
            assert!(lo < hi);
            let mid = mm(m, 0.5 * (lo + hi));
            assert!(goldman_discriminant(trace_formula(&mid)) < 0.0);
        }
    }
}

#[test]
fn window_interior_has_distinct_unit_eigenvalues() {
    for m in 9..=12 {
        for (lo, hi) in elliptic_windows(m, 4096) {
            for s in 1..20 {
                let alpha = lo + (hi - lo) * f64::from(s) / 20.0;
                let g = build_gram(&mm(m, alpha)).unwrap();
                let ev = eigenvalues(&product_matrix(&reflection_matrices(&g)));
                for (i, e) in ev.iter().enumerate() {
                    assert!((e.norm() - 1.0).abs() < 1e-6, "m={m} alpha={alpha} |λ|={}", e.norm());
                    for f in &ev[i + 1..] {
                        assert!((e - f).norm() > 1e-6);
                    }
                }
            }
        }
    }
}

#[test]
fn real_factorisation_at_rational_points() {
    use num_rational::BigRational;
    let mut points = Vec::new();
    for p in -10i64..=9 {
        points.push(BigRational::new((2 * p + 1).into(), 7.into()));
    }
    let three = BigRational::from_integer(3.into());
    let one = BigRational::from_integer(1.into());
    for x in &points {
        let x2 = x * x;
        let expanded = &x2 * &x2 - x * &x2 * BigRational::from_integer(8.into())
            + &x2 * BigRational::from_integer(18.into())
            - BigRational::from_integer(27.into());
        let d = x - &three;
        let factored = &d * &d * &d * (x + &one);
        assert_eq!(expanded, factored);
        let xf = num_traits::ToPrimitive::to_f64(x).unwrap();
        let f = goldman_discriminant(Complex64::new(xf, 0.0));
        let exact = num_traits::ToPrimitive::to_f64(&factored).unwrap();
        assert!((f - exact).abs() < 1e-9 * (1.0 + exact.abs()));
    }
}

#[test]
fn boundary_at_zero_angle() {
    for m in 2..=40 {
        let t = trace_formula(&mm(m, 0.0));
        assert_eq!(classify_trace(t, BOUNDARY_TOL), IsometryClass::Boundary, "m={m}");
    }
    assert!(circle_residual_numeric(&mm(5, 1.7)).unwrap() < 1e-12);
    assert!(circle_residual_numeric(&mm(3, PI)).unwrap() < 1e-12);
}

#[test]
fn windows_are_symmetric_about_pi() {
    let tol = 2.0 * 2.0 * PI / 1e6;
    for m in 2..=12 {
        let w = elliptic_windows(m, 4096);
        for (lo, hi) in &w {
            let mirrored = (2.0 * PI - hi, 2.0 * PI - lo);
            assert!(
                w.iter().any(|(a, b)| (a - mirrored.0).abs() < tol && (b - mirrored.1).abs() < tol),
                "m={m} window ({lo}, {hi}) has no mirror"
            );
        }
    }
}
