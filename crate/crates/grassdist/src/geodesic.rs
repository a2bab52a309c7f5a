//! Minimizing geodesics between equidimensional subspaces.
//!
//! For **A**, **B** ∈ Gr(k,n) with invertible cross-Gram AᵀB, the curve
//!
//! ```text
//! γ(t) = span( AU cos(tΘ) + Q sin(tΘ) ),   t ∈ [0, 1],
//! ```
//!
//! runs from **A** to **B** at constant speed along a path of minimal
//! length, where Q tan(Θ) Uᵀ is a condensed SVD of
//! M = (I − AAᵀ) B (AᵀB)⁻¹ and Θ carries the principal angles. At θ = π/2
//! the formula breaks down (the minimizer is not unique there), which is
//! reported as `SingularPencil` instead of regularized away.

use nalgebra::DMatrix;

use crate::distances::grassmann_distance;
use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// Threshold on σ_min(AᵀB) below which the geodesic is rejected.
pub const SINGULAR_PENCIL_THRESHOLD: f64 = 1e-12;

/// A minimizing geodesic, stored as the rotated start frame AU, the
/// orthogonal direction frame Q (QᵀAU = 0), and the ascending angles Θ.
#[derive(Debug, Clone)]
pub struct GeodesicPath {
    start_frame: DMatrix<f64>,
    direction_frame: DMatrix<f64>,
    angles: Vec<f64>,
}

impl GeodesicPath {
    /// The rotated start frame AU (n×k).
    pub fn start_frame(&self) -> &DMatrix<f64> {
        &self.start_frame
    }

    /// The direction frame Q (n×k), orthonormal and orthogonal to the start
    /// frame.
    pub fn direction_frame(&self) -> &DMatrix<f64> {
        &self.direction_frame
    }

    /// The ascending rotation angles, each in [0, π/2).
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// The length of the path, (Σ θᵢ²)^½ — the geodesic distance between
    /// its endpoints.
    pub fn length(&self) -> f64 {
        self.angles.iter().map(|t| t * t).sum::<f64>().sqrt()
    }

    /// The subspace at parameter `t`: span(AU cos(tΘ) + Q sin(tΘ)).
    ///
    /// t = 0 gives the start subspace and t = 1 the end subspace; values
    /// outside [0, 1] extend the curve past its endpoints. The analytic
    /// frame is orthonormal, but the result is re-orthonormalized to absorb
    /// rounding drift.
    pub fn evaluate(&self, t: f64) -> Subspace {
        let k = self.angles.len();
        let mut frame = DMatrix::<f64>::zeros(self.start_frame.nrows(), k);
        for j in 0..k {
            let (sin_t, cos_t) = (t * self.angles[j]).sin_cos();
            for i in 0..frame.nrows() {
                frame[(i, j)] =
                    self.start_frame[(i, j)] * cos_t + self.direction_frame[(i, j)] * sin_t;
            }
        }
        Subspace::from_frame_unchecked(frame.qr().q())
    }

    /// The length of the chordal polyline through γ(i/segments),
    /// i = 0…segments, measured with the geodesic distance. Nondecreasing in
    /// `segments` and convergent to [`length`](Self::length).
    pub fn polyline_length(&self, segments: usize) -> f64 {
        assert!(segments >= 1, "polyline needs at least one segment");
        let mut total = 0.0;
        let mut previous = self.evaluate(0.0);
        for i in 1..=segments {
            let next = self.evaluate(i as f64 / segments as f64);
            total += grassmann_distance(&previous, &next)
                .expect("polyline points share dimensions by construction");
            previous = next;
        }
        total
    }
}

/// The minimizing geodesic from `a` to `b` in Gr(k,n).
///
/// Requires equal dimensions and all principal angles below π/2; fails with
/// `SingularPencil` when σ_min(AᵀB) < 1e-12.
pub fn geodesic(a: &Subspace, b: &Subspace) -> Result<GeodesicPath> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let k = a.dim();
    let gram = a.basis().transpose() * b.basis();
    let sigma_min = gram
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if sigma_min < SINGULAR_PENCIL_THRESHOLD {
        return Err(Error::SingularPencil { sigma_min });
    }
    let gram_inv = gram
        .try_inverse()
        .ok_or(Error::SingularPencil { sigma_min })?;

    // M = (I - AA^T) B (A^T B)^{-1}, whose singular values are tan(theta).
    let target = b.basis() * gram_inv;
    let m = &target - a.basis() * (a.basis().transpose() * &target);
    let svd = m.svd(true, true);
    let q = svd.u.expect("svd with u requested");
    let u = svd.v_t.expect("svd with v requested").transpose();

    // The SVD orders tan(theta) descending; flip to ascending angles with a
    // consistent column permutation.
    let mut angles = Vec::with_capacity(k);
    let mut start_frame = DMatrix::<f64>::zeros(a.ambient_dim(), k);
    let mut direction_frame = DMatrix::<f64>::zeros(a.ambient_dim(), k);
    let rotated = a.basis() * u;
    for j in 0..k {
        let src = k - 1 - j;
        angles.push(svd.singular_values[src].atan());
        start_frame.column_mut(j).copy_from(&rotated.column(src));
        direction_frame.column_mut(j).copy_from(&q.column(src));
    }
    debug_assert!(
        (direction_frame.transpose() * &start_frame).norm() <= 1e-8,
        "direction frame must be orthogonal to the start frame"
    );
    Ok(GeodesicPath {
        start_frame,
        direction_frame,
        angles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::{orthonormal_basis, principal_angles};
    use std::f64::consts::FRAC_PI_2;

    fn span(n: usize, cols: &[&[f64]]) -> Subspace {
        let k = cols.len();
        let mut m = DMatrix::<f64>::zeros(n, k);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        orthonormal_basis(&m).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    fn angle_to(a: &Subspace, b: &Subspace) -> f64 {
        principal_angles(a, b)
            .unwrap()
            .into_iter()
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_path_between_equal_subspaces() {
        let a = span(3, &[&e(3, 0), &e(3, 1)]);
        let path = geodesic(&a, &a).unwrap();
        assert!(path.angles().iter().all(|&t| t.abs() < 1e-12));
        assert!(angle_to(&path.evaluate(0.5), &a) < 1e-10);
        assert_eq!(path.polyline_length(10), 0.0);
    }

    #[test]
    fn planar_rotation_midpoint() {
        // In Gr(1,2) the geodesic is rotation at constant speed, so the
        // midpoint of a rotation by alpha is the rotation by alpha/2.
        let alpha = 1.0_f64;
        let a = span(2, &[&e(2, 0)]);
        let b = span(2, &[&[alpha.cos(), alpha.sin()]]);
        let path = geodesic(&a, &b).unwrap();
        let mid = path.evaluate(0.5);
        let expected = span(2, &[&[(alpha / 2.0).cos(), (alpha / 2.0).sin()]]);
        assert!(angle_to(&mid, &expected) < 1e-10);
    }

    #[test]
    fn orthogonal_lines_have_no_closed_form_geodesic() {
        let a = span(2, &[&e(2, 0)]);
        let b = span(2, &[&e(2, 1)]);
        assert!(matches!(
            geodesic(&a, &b),
            Err(Error::SingularPencil { .. })
        ));
    }

    #[test]
    fn endpoints_are_reproduced() {
        let mut g = crate::sampling::SeededGenerator::new(51);
        for _ in 0..20 {
            let a = crate::sampling::random_subspace(2, 5, &mut g).unwrap();
            let b = crate::sampling::random_subspace(2, 5, &mut g).unwrap();
            let gram_min = principal_angles(&a, &b).unwrap().iter().fold(1.0, |acc: f64, &t| acc.min(t.cos()));
            if gram_min < 0.05 {
                continue;
            }
            let path = geodesic(&a, &b).unwrap();
            assert!(angle_to(&path.evaluate(0.0), &a) <= 1e-8);
            assert!(angle_to(&path.evaluate(1.0), &b) <= 1e-8);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = span(3, &[&e(3, 0)]);
        let b = span(3, &[&e(3, 0), &e(3, 1)]);
        assert!(matches!(
            geodesic(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_segment_polyline_is_endpoint_distance() {
        let alpha = 0.8_f64;
        let a = span(2, &[&e(2, 0)]);
        let b = span(2, &[&[alpha.cos(), alpha.sin()]]);
        let path = geodesic(&a, &b).unwrap();
        let d = grassmann_distance(&a, &b).unwrap();
        assert!((path.polyline_length(1) - d).abs() < 1e-12);
    }

    #[test]
    fn fine_polyline_recovers_rotation_angle() {
        let alpha = 1.0_f64;
        let a = span(2, &[&e(2, 0)]);
        let b = span(2, &[&[alpha.cos(), alpha.sin()]]);
        let path = geodesic(&a, &b).unwrap();
        assert!((path.polyline_length(1000) - alpha).abs() < 1e-6);
    }

    #[test]
    fn evaluate_extends_beyond_endpoints() {
        let alpha = 0.4_f64;
        let a = span(2, &[&e(2, 0)]);
        let b = span(2, &[&[alpha.cos(), alpha.sin()]]);
        let path = geodesic(&a, &b).unwrap();
        let past = path.evaluate(2.0);
        let expected = span(2, &[&[(2.0 * alpha).cos(), (2.0 * alpha).sin()]]);
        assert!(angle_to(&past, &expected) < 1e-10);
    }

    #[test]
    fn length_is_distance() {
        let mut g = crate::sampling::SeededGenerator::new(52);
        let a = crate::sampling::random_subspace(2, 6, &mut g).unwrap();
        let b = crate::sampling::random_subspace(2, 6, &mut g).unwrap();
        if let Ok(path) = geodesic(&a, &b) {
            let d = grassmann_distance(&a, &b).unwrap();
            assert!((path.length() - d).abs() < 1e-10);
            assert!(path.length() < 2.0 * FRAC_PI_2 + 1e-12);
        }
    }
}
