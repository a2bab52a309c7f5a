//! Distances between subspaces, all expressed through principal angles.
//!
//! For equidimensional subspaces these are the classical Grassmannian
//! distances:
//!
//! | kind          | formula on θ₁…θ_k                  |
//! |---------------|-------------------------------------|
//! | grassmann     | (Σ θᵢ²)^½                           |
//! | asimov        | θ_k                                 |
//! | binet_cauchy  | (1 − Π cos²θᵢ)^½                    |
//! | chordal       | (Σ sin²θᵢ)^½                        |
//! | fubini_study  | arccos(Π cosθᵢ)                     |
//! | martin        | (log Π 1/cos²θᵢ)^½                  |
//! | procrustes    | 2(Σ sin²(θᵢ/2))^½                   |
//! | projection    | sin θ_k                             |
//! | spectral      | 2 sin(θ_k/2)                        |
//!
//! For subspaces of different dimensions, [`delta`] evaluates the same
//! formula over the first min(k,l) principal angles. That value equals the
//! distance from the lower-dimensional subspace to the nearest subspace of
//! its dimension inside the other, and simultaneously the distance from the
//! higher-dimensional subspace to the nearest subspace of its dimension
//! containing the first; the constructive witnesses live in the `schubert`
//! module.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::{metric_infty, InftyMetricKind};
use crate::subspace::{principal_angles, Subspace};

/// The distance family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    Grassmann,
    Asimov,
    BinetCauchy,
    Chordal,
    FubiniStudy,
    Martin,
    Procrustes,
    Projection,
    Spectral,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 9] = [
        DistanceKind::Grassmann,
        DistanceKind::Asimov,
        DistanceKind::BinetCauchy,
        DistanceKind::Chordal,
        DistanceKind::FubiniStudy,
        DistanceKind::Martin,
        DistanceKind::Procrustes,
        DistanceKind::Projection,
        DistanceKind::Spectral,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DistanceKind::Grassmann => "grassmann",
            DistanceKind::Asimov => "asimov",
            DistanceKind::BinetCauchy => "binet_cauchy",
            DistanceKind::Chordal => "chordal",
            DistanceKind::FubiniStudy => "fubini_study",
            DistanceKind::Martin => "martin",
            DistanceKind::Procrustes => "procrustes",
            DistanceKind::Projection => "projection",
            DistanceKind::Spectral => "spectral",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "grassmann" => DistanceKind::Grassmann,
            "asimov" => DistanceKind::Asimov,
            "binet_cauchy" => DistanceKind::BinetCauchy,
            "chordal" => DistanceKind::Chordal,
            "fubini_study" => DistanceKind::FubiniStudy,
            "martin" => DistanceKind::Martin,
            "procrustes" => DistanceKind::Procrustes,
            "projection" => DistanceKind::Projection,
            "spectral" => DistanceKind::Spectral,
            other => return Err(format!("unknown distance kind `{other}`")),
        })
    }
}

/// Evaluates a distance formula on a nonempty ascending angle list.
///
/// Cosine products are accumulated as exp(Σ log cos θᵢ), with an early out
/// when an angle reaches π/2, so long angle lists cannot underflow. The
/// Martin formula diverges at π/2 and returns +∞ there.
pub fn angle_functional(kind: DistanceKind, angles: &[f64]) -> f64 {
    assert!(!angles.is_empty(), "angle list must be nonempty");
    let last = angles[angles.len() - 1];
    match kind {
        DistanceKind::Grassmann => angles.iter().map(|t| t * t).sum::<f64>().sqrt(),
        DistanceKind::Asimov => last,
        DistanceKind::BinetCauchy => (1.0 - cos_product_squared(angles)).max(0.0).sqrt(),
        DistanceKind::Chordal => angles.iter().map(|t| t.sin().powi(2)).sum::<f64>().sqrt(),
        DistanceKind::FubiniStudy => cos_product(angles).clamp(0.0, 1.0).acos(),
        DistanceKind::Martin => {
            if angles.iter().any(|&t| t >= std::f64::consts::FRAC_PI_2) {
                f64::INFINITY
            } else {
                (-2.0 * angles.iter().map(|t| t.cos().ln()).sum::<f64>()).sqrt()
            }
        }
        DistanceKind::Procrustes => {
            2.0 * angles
                .iter()
                .map(|t| (t / 2.0).sin().powi(2))
                .sum::<f64>()
                .sqrt()
        }
        DistanceKind::Projection => last.sin(),
        DistanceKind::Spectral => 2.0 * (last / 2.0).sin(),
    }
}

fn cos_product(angles: &[f64]) -> f64 {
    if angles.iter().any(|&t| t >= std::f64::consts::FRAC_PI_2) {
        return 0.0;
    }
    angles.iter().map(|t| t.cos().ln()).sum::<f64>().exp()
}

fn cos_product_squared(angles: &[f64]) -> f64 {
    if angles.iter().any(|&t| t >= std::f64::consts::FRAC_PI_2) {
        return 0.0;
    }
    (2.0 * angles.iter().map(|t| t.cos().ln()).sum::<f64>()).exp()
}

fn check_equidimensional(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// The geodesic distance (Σᵢ θᵢ²)^½ on Gr(k,n); requires dim a = dim b.
pub fn grassmann_distance(a: &Subspace, b: &Subspace) -> Result<f64> {
    check_equidimensional(a, b)?;
    Ok(angle_functional(
        DistanceKind::Grassmann,
        &principal_angles(a, b)?,
    ))
}

/// The selected distance between equidimensional subspaces.
pub fn distance(kind: DistanceKind, a: &Subspace, b: &Subspace) -> Result<f64> {
    check_equidimensional(a, b)?;
    Ok(angle_functional(kind, &principal_angles(a, b)?))
}

/// The selected distance extended to subspaces of any dimensions, evaluated
/// over the first min(k,l) principal angles.
///
/// For dim a = dim b this coincides exactly with [`distance`]. The value is
/// zero precisely when one subspace contains the other; it is symmetric in
/// its arguments but not a metric across dimensions (see
/// [`metric_infty`](crate::metrics::metric_infty) for that).
pub fn delta(kind: DistanceKind, a: &Subspace, b: &Subspace) -> Result<f64> {
    Ok(angle_functional(kind, &principal_angles(a, b)?))
}

/// The containment gap sin θ_r, r = min(k,l): the largest relative distance
/// from a unit vector of the smaller-dimensional side to the other subspace.
/// Identical to `delta(Projection, a, b)`.
pub fn containment_gap(a: &Subspace, b: &Subspace) -> Result<f64> {
    delta(DistanceKind::Projection, a, b)
}

/// The symmetric directional distance (max(k,l) − ‖AᵀB‖_F²)^½, computed
/// straight from the orthonormal bases. Agrees with the chordal metric on
/// subspaces of all dimensions.
pub fn symmetric_directional(a: &Subspace, b: &Subspace) -> Result<f64> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    let gram_sq = (a.basis().transpose() * b.basis()).norm_squared();
    let max_dim = a.dim().max(b.dim()) as f64;
    Ok((max_dim - gram_sq).max(0.0).sqrt())
}
