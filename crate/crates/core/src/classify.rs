//! Isometry type of `ι₁ι₂ι₃` from its trace, and the α-windows where the
//! product is regular elliptic.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Matrix3;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::triangle::{trace_formula, TriangleParams};

pub const BOUNDARY_TOL: f64 = 1e-9;

/// Bisection stops once a bracket is narrower than `2π / WINDOW_REFINEMENT`.
pub const WINDOW_REFINEMENT: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IsometryClass {
    RegularElliptic,
    Loxodromic,
    /// Parabolic or special elliptic; the trace alone cannot tell which.
    Boundary,
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsometryClass::RegularElliptic => "RegularElliptic",
            IsometryClass::Loxodromic => "Loxodromic",
            IsometryClass::Boundary => "Boundary",
        })
    }
}

/// `f(τ) = |τ|⁴ − 8·Re(τ³) + 18·|τ|² − 27`.
pub fn goldman_discriminant(tau: Complex64) -> f64 {
    let n2 = tau.norm_sqr();
    n2 * n2 - 8.0 * (tau * tau * tau).re + 18.0 * n2 - 27.0
}

pub fn classify_trace(tau: Complex64, tol: f64) -> IsometryClass {
    let f = goldman_discriminant(tau);
    if f.abs() <= tol {
        IsometryClass::Boundary
    } else if f < 0.0 {
        IsometryClass::RegularElliptic
    } else {
        IsometryClass::Loxodromic
    }
}

fn f_of_alpha(m: u32, alpha: f64) -> f64 {
    let params = TriangleParams::mm_inf(m, alpha).expect("m ≥ 2");
    goldman_discriminant(trace_formula(&params))
}

/// Bisect a sign change of `f∘τ` with `f(inside) < 0 ≤ f(outside)`.
fn refine(m: u32, mut inside: f64, mut outside: f64) -> f64 {
    let width = 2.0 * PI / WINDOW_REFINEMENT;
    while (outside - inside).abs() >= width {
        let mid = 0.5 * (inside + outside);
        if f_of_alpha(m, mid) < 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Maximal α-intervals in `[0, 2π)` on which `ι₁ι₂ι₃` is regular elliptic.
///
/// The grid `αᵢ = 2πi/resolution` is scanned for grid points classified
/// regular elliptic, and each run's endpoints are refined by bisection on the
/// sign of `f∘τ`. Windows narrower than the grid spacing can be missed. Runs
/// never wrap through α = 0, where `τ = −1` puts the product on the boundary.
pub fn elliptic_windows(m: u32, resolution: usize) -> Vec<(f64, f64)> {
    assert!(m >= 2, "m must be at least 2");
    assert!(resolution >= 16, "resolution must be at least 16");
    let step = 2.0 * PI / resolution as f64;
    let alpha = |i: usize| step * i as f64;
    let inside: Vec<bool> = (0..resolution)
        .into_par_iter()
        .map(|i| f_of_alpha(m, alpha(i)) < -BOUNDARY_TOL)
        .collect();

    let mut windows = Vec::new();
    let mut i = 0;
    while i < resolution {
        if !inside[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < resolution && inside[i] {
            i += 1;
        }
        let end = i - 1;
        let lo = if start == 0 { 0.0 } else { refine(m, alpha(start), alpha(start - 1)) };
        let hi = refine(m, alpha(end), alpha(end + 1));
        windows.push((lo, hi));
    }
    windows
}

/// Eigenvalues of a complex 3×3 matrix via its Schur form.
pub fn eigenvalues(m: &Matrix3<Complex64>) -> [Complex64; 3] {
    let t = m.schur().unpack().1;
    [t[(0, 0)], t[(1, 1)], t[(2, 2)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{build_gram, product_matrix, reflection_matrices};

    #[test]
    fn discriminant_values() {
        assert_eq!(goldman_discriminant(Complex64::new(3.0, 0.0)), 0.0);
        assert_eq!(goldman_discriminant(Complex64::new(0.0, 0.0)), -27.0);
        assert_eq!(goldman_discriminant(Complex64::new(-5.0, 0.0)), 2048.0);
        assert_eq!(goldman_discriminant(Complex64::new(-1.0, 0.0)), 0.0);
    }

    #[test]
    fn real_traces_factor() {
        // f(x) = (x − 3)³(x + 1) on the real line
        for k in -20..20 {
            let x = f64::from(k) / 4.0;
            let f = goldman_discriminant(Complex64::new(x, 0.0));
            assert!((f - (x - 3.0).powi(3) * (x + 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn classification() {
        let c = |re, im| classify_trace(Complex64::new(re, im), BOUNDARY_TOL);
        assert_eq!(c(-1.0, 0.0), IsometryClass::Boundary);
        assert_eq!(c(-5.0, 0.0), IsometryClass::Loxodromic);
        assert_eq!(c(0.0, 0.0), IsometryClass::RegularElliptic);
        assert_eq!(c(3.0, 0.0), IsometryClass::Boundary);
    }

    #[test]
    fn no_windows_for_m2() {
        assert!(elliptic_windows(2, 1024).is_empty());
    }

    #[test]
    fn window_interiors_are_regular_elliptic() {
        let windows = elliptic_windows(10, 4096);
        assert!(!windows.is_empty());
        for &(lo, hi) in &windows {
            assert!(lo < hi);
            let mid = 0.5 * (lo + hi);
            let p = TriangleParams::mm_inf(10, mid).unwrap();
            let g = build_gram(&p).unwrap();
            let ev = eigenvalues(&product_matrix(&reflection_matrices(&g)));
            for z in ev {
                assert!((z.norm() - 1.0).abs() < 1e-6);
            }
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                assert!((ev[a] - ev[b]).norm() > 1e-6);
            }
        }
    }

    #[test]
    fn windows_mirror_about_pi() {
        let tol = 2.0 * 2.0 * PI / WINDOW_REFINEMENT;
        for m in [9u32, 10, 12] {
            let w = elliptic_windows(m, 4096);
            let n = w.len();
            for (k, &(lo, hi)) in w.iter().enumerate() {
                let (mlo, mhi) = w[n - 1 - k];
                assert!((lo - (2.0 * PI - mhi)).abs() < tol, "m = {m}");
                assert!((hi - (2.0 * PI - mlo)).abs() < tol, "m = {m}");
            }
        }
    }
}
