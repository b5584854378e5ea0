//! Complex hyperbolic triangles as Gram matrices of polar vectors, their
//! complex reflections, and the trace of the product `ι₁ι₂ι₃`.
//!
//! Coordinates are taken in the basis of normalised polar vectors
//! `c₁, c₂, c₃`, with the Hermitian form `⟨u, v⟩ = v* H u`. Then `⟨z, c_k⟩`
//! is the k-th entry of `Hz`, and the reflection in the complex geodesic
//! polar to `c_k` is `z ↦ −z + 2⟨z, c_k⟩c_k`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalues of H with magnitude below this count as zero.
pub const SIGNATURE_TOL: f64 = 1e-10;

/// Angle parameter of one vertex: the sides meet at angle `π/p`, and
/// `Infinite` means the sides are asymptotic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexOrder {
    Finite(u32),
    Infinite,
}

impl VertexOrder {
    /// `r = cos(π/p)`, exactly 1 for `p = ∞`.
    pub fn r(self) -> f64 {
        match self {
            VertexOrder::Infinite => 1.0,
            VertexOrder::Finite(2) => 0.0,
            VertexOrder::Finite(3) => 0.5,
            VertexOrder::Finite(p) => (PI / f64::from(p)).cos(),
        }
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexOrder::Finite(p) => write!(f, "{p}"),
            VertexOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for VertexOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            VertexOrder::Finite(p) => s.serialize_u32(*p),
            VertexOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for VertexOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) if p >= 2 => Ok(VertexOrder::Finite(p)),
            Raw::Num(p) => Err(D::Error::custom(format!("vertex order {p} < 2"))),
            Raw::Str(s) if s == "inf" => Ok(VertexOrder::Infinite),
            Raw::Str(s) => Err(D::Error::custom(format!("unknown vertex order {s:?}"))),
        }
    }
}

/// `e^{iα} = ω_M^j`, for workflows that keep the angular invariant exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactPhase {
    #[serde(rename = "M")]
    pub modulus: u64,
    pub j: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleParams {
    pub p: [VertexOrder; 3],
    /// Angular invariant in `[0, 2π)`.
    pub alpha: f64,
    pub alpha_exact: Option<ExactPhase>,
}

fn normalize_angle(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(2.0 * PI);
    if a >= 2.0 * PI {
        0.0
    } else {
        a
    }
}

impl TriangleParams {
    pub fn new(p: [VertexOrder; 3], alpha: f64) -> Result<Self> {
        for v in p {
            if let VertexOrder::Finite(k) = v {
                if k < 2 {
                    return Err(Error::InvalidParameter(format!("vertex order {k} < 2")));
                }
            }
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter("angular invariant must be finite".into()));
        }
        Ok(TriangleParams {
            p,
            alpha: normalize_angle(alpha),
            alpha_exact: None,
        })
    }

    /// The `(m, m, ∞)` triangle with angular invariant `alpha`.
    pub fn mm_inf(m: u32, alpha: f64) -> Result<Self> {
        Self::new(
            [VertexOrder::Finite(m), VertexOrder::Finite(m), VertexOrder::Infinite],
            alpha,
        )
    }

    /// `(m, m, ∞)` with `e^{iα} = ω_M^j` recorded exactly.
    pub fn mm_inf_exact(m: u32, modulus: u64, j: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("phase modulus must be positive".into()));
        }
        let turns = j.rem_euclid(modulus as i64) as f64 / modulus as f64;
        let mut params = Self::mm_inf(m, 2.0 * PI * turns)?;
        params.alpha_exact = Some(ExactPhase { modulus, j });
        Ok(params)
    }

    /// `m` when the parameters are of type `(m, m, ∞)`.
    pub fn mm_inf_order(&self) -> Option<u32> {
        match self.p {
            [VertexOrder::Finite(a), VertexOrder::Finite(b), VertexOrder::Infinite] if a == b => {
                Some(a)
            }
            _ => None,
        }
    }

    pub fn r(&self) -> [f64; 3] {
        self.p.map(VertexOrder::r)
    }
}

/// Eigenvalue sign counts of a Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn of(h: &Matrix3<Complex64>, tol: f64) -> Self {
        let ev = h.symmetric_eigenvalues();
        let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
        for &e in ev.iter() {
            if e > tol {
                sig.pos += 1;
            } else if e < -tol {
                sig.neg += 1;
            } else {
                sig.zero += 1;
            }
        }
        sig
    }

    pub fn is_hyperbolic(self) -> bool {
        self.pos == 2 && self.neg == 1
    }

    /// Rank-two limit with no negative direction (e.g. `α = 0` or `m = 2`).
    pub fn is_degenerate_limit(self) -> bool {
        self.pos == 2 && self.neg == 0 && self.zero == 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramTriangle {
    pub params: TriangleParams,
    pub h: Matrix3<Complex64>,
    pub signature: Signature,
}

/// Gram matrix of the normalised polar vectors.
///
/// Each of `H₁₂, H₂₃, H₃₁` carries the phase `e^{iα/3}`, with magnitudes
/// `r₃, r₁, r₂`, so `H₁₂H₂₃H₃₁ = r₁r₂r₃e^{iα}`.
///
/// Signature `(2, 1)` is required. The rank-two limits reached at `α = 0`
/// or `m = 2` (two positive eigenvalues and a null one) are accepted so the
/// trace can be evaluated there; anything else is rejected.
pub fn build_gram(params: &TriangleParams) -> Result<GramTriangle> {
    let [r1, r2, r3] = params.r();
    let phase = Complex64::from_polar(1.0, params.alpha / 3.0);
    let one = Complex64::new(1.0, 0.0);
    let h12 = phase * r3;
    let h23 = phase * r1;
    let h31 = phase * r2;
    let h = Matrix3::new(
        one,
        h12,
        h31.conj(),
        h12.conj(),
        one,
        h23,
        h31,
        h23.conj(),
        one,
    );
    let signature = Signature::of(&h, SIGNATURE_TOL);
    if !(signature.is_hyperbolic() || signature.is_degenerate_limit()) {
        return Err(Error::Signature {
            pos: signature.pos,
            neg: signature.neg,
            zero: signature.zero,
        });
    }
    Ok(GramTriangle {
        params: *params,
        h,
        signature,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionMatrix {
    /// 0-based side index.
    pub side: usize,
    pub r: Matrix3<Complex64>,
}

/// `R_k = −I + 2·e_k·(row k of H)`.
pub fn reflection_matrices(g: &GramTriangle) -> [ReflectionMatrix; 3] {
    std::array::from_fn(|k| {
        let mut r = -Matrix3::<Complex64>::identity();
        for j in 0..3 {
            r[(k, j)] += g.h[(k, j)] * 2.0;
        }
        ReflectionMatrix { side: k, r }
    })
}

/// `R₁R₂R₃`, the matrix of `ι₁ι₂ι₃`.
pub fn product_matrix(rs: &[ReflectionMatrix; 3]) -> Matrix3<Complex64> {
    rs[0].r * rs[1].r * rs[2].r
}

pub fn product_trace(g: &GramTriangle) -> Complex64 {
    product_matrix(&reflection_matrices(g)).trace()
}

/// `τ = 8r₁r₂r₃e^{iα} − (4(r₁² + r₂² + r₃²) − 3)`.
pub fn trace_formula(params: &TriangleParams) -> Complex64 {
    let [r1, r2, r3] = params.r();
    Complex64::from_polar(8.0 * r1 * r2 * r3, params.alpha)
        - (4.0 * (r1 * r1 + r2 * r2 + r3 * r3) - 3.0)
}

/// `8r² = 8cos²(π/m)`.
pub fn eight_r_squared(m: u32) -> f64 {
    let r = VertexOrder::Finite(m).r();
    8.0 * r * r
}

/// `| |τ + 8r² + 1| − 8r² |` for an `(m, m, ∞)` triangle.
pub fn circle_residual_numeric(params: &TriangleParams) -> Result<f64> {
    let m = params
        .mm_inf_order()
        .ok_or_else(|| Error::InvalidParameter("circle residual needs type (m, m, ∞)".into()))?;
    let c = eight_r_squared(m);
    let tau = trace_formula(params);
    Ok(((tau + c + 1.0).norm() - c).abs())
}

/// Exponent `j ∈ {0, 1, 2}` such that `ω₃^j · trace(R₁R₂R₃)` is closest to
/// the closed formula. The uniform-phase Gram convention always gives 0.
pub fn su21_lift_exponent(g: &GramTriangle) -> u32 {
    let t = product_trace(g);
    let f = trace_formula(&g.params);
    (0..3u32)
        .min_by(|&a, &b| {
            let da = (Complex64::from_polar(1.0, 2.0 * PI * f64::from(a) / 3.0) * t - f).norm();
            let db = (Complex64::from_polar(1.0, 2.0 * PI * f64::from(b) / 3.0) * t - f).norm();
            da.total_cmp(&db)
        })
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

/// Row-major `{re, im}` rendering for reports.
pub fn matrix_json(m: &Matrix3<Complex64>) -> Vec<Vec<ComplexJson>> {
    (0..3)
        .map(|i| (0..3).map(|j| m[(i, j)].into()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &Matrix3<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn gram_m2_alpha0() {
        let g = build_gram(&TriangleParams::mm_inf(2, 0.0).unwrap()).unwrap();
        assert_eq!(g.h[(1, 2)].norm(), 0.0);
        assert_eq!(g.h[(2, 0)].norm(), 0.0);
        assert!((g.h[(0, 1)].norm() - 1.0).abs() < 1e-15);
        assert!(g.signature.is_degenerate_limit());
    }

    #[test]
    fn gram_m3_alpha_pi() {
        let g = build_gram(&TriangleParams::mm_inf(3, PI).unwrap()).unwrap();
        let want_phase = Complex64::from_polar(1.0, PI / 3.0);
        for ((i, j), mag) in [((1, 2), 0.5), ((2, 0), 0.5), ((0, 1), 1.0)] {
            assert!((g.h[(i, j)] - want_phase * mag).norm() < 1e-15);
        }
        assert!(g.signature.is_hyperbolic());
        for k in 0..3 {
            assert_eq!(g.h[(k, k)], Complex64::new(1.0, 0.0));
        }
        let h_star = g.h.adjoint();
        assert!(max_abs(&(h_star - g.h)) < 1e-15);
    }

    #[test]
    fn spherical_and_doubly_negative_triangles_rejected() {
        let p = TriangleParams::new([VertexOrder::Finite(3); 3], 0.0).unwrap();
        assert!(matches!(build_gram(&p), Err(Error::Signature { pos: 3, .. })));
        let p = TriangleParams::new([VertexOrder::Finite(2); 3], 1.0).unwrap();
        assert!(build_gram(&p).is_err());
    }

    #[test]
    fn reflections_are_involutions_preserving_the_form() {
        for m in [3u32, 5, 9] {
            for alpha in [0.3, 2.0, 4.5] {
                let g = build_gram(&TriangleParams::mm_inf(m, alpha).unwrap()).unwrap();
                for r in reflection_matrices(&g) {
                    let id = Matrix3::<Complex64>::identity();
                    assert!(max_abs(&(r.r * r.r - id)) < 1e-12);
                    assert!(max_abs(&(r.r.adjoint() * g.h * r.r - g.h)) < 1e-12);
                    assert!((r.r.determinant() - 1.0).norm() < 1e-12);
                    assert!((r.r.trace() + 1.0).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let p = TriangleParams::mm_inf(3, PI).unwrap();
        let g = build_gram(&p).unwrap();
        assert!((product_trace(&g) - Complex64::new(-5.0, 0.0)).norm() < 1e-9);
        assert!((trace_formula(&p) - Complex64::new(-5.0, 0.0)).norm() < 1e-12);
        for m in 2..10 {
            let t = trace_formula(&TriangleParams::mm_inf(m, 0.0).unwrap());
            assert!((t + 1.0).norm() < 1e-12);
        }
        for alpha in [0.0, 1.0, 3.0, 6.0] {
            let t = trace_formula(&TriangleParams::mm_inf(2, alpha).unwrap());
            assert_eq!(t, Complex64::new(-1.0, 0.0));
        }
        assert_eq!(su21_lift_exponent(&g), 0);
    }

    #[test]
    fn circle_residual_examples() {
        let p = TriangleParams::mm_inf(5, 1.7).unwrap();
        assert!(circle_residual_numeric(&p).unwrap() < 1e-12);
        let p = TriangleParams::mm_inf(3, PI).unwrap();
        assert!(circle_residual_numeric(&p).unwrap() < 1e-12);
        assert_eq!(circle_residual_numeric(&TriangleParams::mm_inf(2, 2.5).unwrap()).unwrap(), 0.0);
        let general = TriangleParams::new([VertexOrder::Finite(3); 3], 0.5).unwrap();
        assert!(circle_residual_numeric(&general).is_err());
    }

    #[test]
    fn exact_phase_sets_alpha() {
        let p = TriangleParams::mm_inf_exact(4, 8, 3).unwrap();
        assert!((p.alpha - 3.0 * PI / 4.0).abs() < 1e-15);
        assert_eq!(p.alpha_exact, Some(ExactPhase { modulus: 8, j: 3 }));
    }

    #[test]
    fn params_json() {
        let p = TriangleParams::mm_inf(4, 1.0).unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"p":[4,4,"inf"],"alpha":1.0,"alpha_exact":null}"#);
        let back: TriangleParams = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn matrix_rendering() {
        let g = build_gram(&TriangleParams::mm_inf(3, PI).unwrap()).unwrap();
        let rows = matrix_json(&g.h);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0][0], ComplexJson { re: 1.0, im: 0.0 });
        let js = serde_json::to_value(&rows).unwrap();
        assert!(js[0][1]["re"].is_number() && js[0][1]["im"].is_number());
    }
}
