//! True metrics on the set of subspaces of all dimensions.
//!
//! Two recipes turn the cross-dimensional distances of
//! [`delta`](crate::distances::delta) into metrics:
//!
//! * **rms family** (grassmann, chordal, procrustes):
//!   d(A,B) = (δ(A,B)² + c²·|k−l|)^½, which is what the underlying distance
//!   becomes after completing the smaller subspace with directions
//!   orthogonal to both;
//! * **indicator family** (asimov, binet_cauchy, fubini_study, martin,
//!   projection, spectral): the plain distance when k = l and the constant
//!   c otherwise.
//!
//! Both restrict exactly to the corresponding equidimensional distance when
//! k = l. Comparing subspaces of different ambient spaces is not implicit:
//! embed both into a common ambient space first.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::distances::{angle_functional, distance, DistanceKind};
use crate::error::{Error, Result};
use crate::subspace::{principal_angles, Subspace};

/// Selector for the metric family on subspaces of all dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InftyMetricKind {
    Grassmann,
    Chordal,
    Procrustes,
    Asimov,
    BinetCauchy,
    FubiniStudy,
    Martin,
    Projection,
    Spectral,
}

impl InftyMetricKind {
    pub const ALL: [InftyMetricKind; 9] = [
        InftyMetricKind::Grassmann,
        InftyMetricKind::Chordal,
        InftyMetricKind::Procrustes,
        InftyMetricKind::Asimov,
        InftyMetricKind::BinetCauchy,
        InftyMetricKind::FubiniStudy,
        InftyMetricKind::Martin,
        InftyMetricKind::Projection,
        InftyMetricKind::Spectral,
    ];

    /// Whether the kind combines δ with the dimension gap in root-mean-square
    /// form; the remaining kinds use the indicator form.
    pub fn is_rms(&self) -> bool {
        matches!(
            self,
            InftyMetricKind::Grassmann | InftyMetricKind::Chordal | InftyMetricKind::Procrustes
        )
    }

    /// The dimension-gap constant c.
    ///
    /// For the rms kinds this is the exact contribution of one angle pinned
    /// at π/2 by the completion construction: π/2 for grassmann, 1 for
    /// chordal, √2 for procrustes (one right angle adds 4·sin²(π/4) = 2 to
    /// the squared procrustes distance). For the indicator kinds it is the
    /// constant assigned to any pair of unequal dimensions: π/2 for asimov,
    /// √2 for spectral, +∞ for martin, and 1 for the rest.
    pub fn constant(&self) -> f64 {
        match self {
            InftyMetricKind::Grassmann | InftyMetricKind::Asimov => FRAC_PI_2,
            InftyMetricKind::Chordal
            | InftyMetricKind::BinetCauchy
            | InftyMetricKind::FubiniStudy
            | InftyMetricKind::Projection => 1.0,
            InftyMetricKind::Procrustes | InftyMetricKind::Spectral => SQRT_2,
            InftyMetricKind::Martin => f64::INFINITY,
        }
    }

    /// The equidimensional distance this metric restricts to.
    pub fn distance_kind(&self) -> DistanceKind {
        match self {
            InftyMetricKind::Grassmann => DistanceKind::Grassmann,
            InftyMetricKind::Chordal => DistanceKind::Chordal,
            InftyMetricKind::Procrustes => DistanceKind::Procrustes,
            InftyMetricKind::Asimov => DistanceKind::Asimov,
            InftyMetricKind::BinetCauchy => DistanceKind::BinetCauchy,
            InftyMetricKind::FubiniStudy => DistanceKind::FubiniStudy,
            InftyMetricKind::Martin => DistanceKind::Martin,
            InftyMetricKind::Projection => DistanceKind::Projection,
            InftyMetricKind::Spectral => DistanceKind::Spectral,
        }
    }

    pub fn name(&self) -> &'static str {
        self.distance_kind().name()
    }
}

impl std::str::FromStr for InftyMetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let kind: DistanceKind = s.parse()?;
        Ok(InftyMetricKind::ALL
            .into_iter()
            .find(|m| m.distance_kind() == kind)
            .expect("every distance kind has a metric twin"))
    }
}

/// The dimension-gap term |dim a − dim b|^½.
pub fn epsilon_term(a: &Subspace, b: &Subspace) -> f64 {
    (a.dim().abs_diff(b.dim()) as f64).sqrt()
}

/// The selected metric between subspaces of any dimensions in a common
/// ambient space.
///
/// When dim a = dim b the value equals `distance(kind, a, b)` exactly. The
/// martin kind returns +∞ whenever the dimensions differ (and whenever an
/// angle reaches π/2); comparisons against +∞ behave as usual.
pub fn metric_infty(kind: InftyMetricKind, a: &Subspace, b: &Subspace) -> Result<f64> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    if a.dim() == b.dim() {
        return distance(kind.distance_kind(), a, b);
    }
    if kind.is_rms() {
        let d = angle_functional(kind.distance_kind(), &principal_angles(a, b)?);
        let gap = a.dim().abs_diff(b.dim()) as f64;
        let c = kind.constant();
        Ok((d * d + c * c * gap).sqrt())
    } else {
        Ok(kind.constant())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::delta;
    use crate::sampling::{random_subspace, SeededGenerator};
    use crate::subspace::orthonormal_basis;
    use nalgebra::DMatrix;
    use std::f64::consts::PI;

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

    #[test]
    fn epsilon_term_values() {
        let mut g = SeededGenerator::new(31);
        let a1 = random_subspace(1, 6, &mut g).unwrap();
        let a2 = random_subspace(2, 6, &mut g).unwrap();
        let a5 = random_subspace(5, 6, &mut g).unwrap();
        assert_eq!(epsilon_term(&a2, &a2), 0.0);
        assert_eq!(epsilon_term(&a1, &a2), 1.0);
        assert_eq!(epsilon_term(&a1, &a5), 2.0);
    }

    #[test]
    fn grassmann_metric_line_inside_plane() {
        let line = span(3, &[&e(3, 0)]);
        let plane = span(3, &[&e(3, 0), &e(3, 1)]);
        let d = metric_infty(InftyMetricKind::Grassmann, &line, &plane).unwrap();
        assert!((d - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn grassmann_metric_orthogonal_line_and_plane() {
        let line = span(3, &[&e(3, 2)]);
        let plane = span(3, &[&e(3, 0), &e(3, 1)]);
        let d = metric_infty(InftyMetricKind::Grassmann, &line, &plane).unwrap();
        assert!((d - PI / SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn chordal_metric_line_inside_plane() {
        let line = span(3, &[&e(3, 0)]);
        let plane = span(3, &[&e(3, 0), &e(3, 1)]);
        let d = metric_infty(InftyMetricKind::Chordal, &line, &plane).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        let sdd = crate::distances::symmetric_directional(&line, &plane).unwrap();
        assert!((d - sdd).abs() < 1e-12);
    }

    #[test]
    fn indicator_metrics_are_constant_across_dimensions() {
        let mut g = SeededGenerator::new(32);
        let a = random_subspace(1, 5, &mut g).unwrap();
        let b = random_subspace(3, 5, &mut g).unwrap();
        assert_eq!(
            metric_infty(InftyMetricKind::Projection, &a, &b).unwrap(),
            1.0
        );
        assert_eq!(
            metric_infty(InftyMetricKind::Asimov, &a, &b).unwrap(),
            FRAC_PI_2
        );
        assert_eq!(
            metric_infty(InftyMetricKind::Spectral, &a, &b).unwrap(),
            SQRT_2
        );
        assert_eq!(
            metric_infty(InftyMetricKind::Martin, &a, &b).unwrap(),
            f64::INFINITY
        );
        assert_eq!(
            metric_infty(InftyMetricKind::BinetCauchy, &a, &b).unwrap(),
            1.0
        );
        assert_eq!(
            metric_infty(InftyMetricKind::FubiniStudy, &a, &b).unwrap(),
            1.0
        );
    }

    #[test]
    fn equal_dimensions_restrict_to_distance_exactly() {
        let mut g = SeededGenerator::new(33);
        for _ in 0..20 {
            let a = random_subspace(2, 5, &mut g).unwrap();
            let b = random_subspace(2, 5, &mut g).unwrap();
            for kind in InftyMetricKind::ALL {
                let m = metric_infty(kind, &a, &b).unwrap();
                let d = distance(kind.distance_kind(), &a, &b).unwrap();
                assert_eq!(m.to_bits(), d.to_bits(), "{kind:?}");
            }
        }
    }

    #[test]
    fn rms_metric_matches_embedding_construction() {
        // Completing the line to a plane with a direction orthogonal to
        // everything realizes the metric as an honest equidimensional
        // distance.
        let mut g = SeededGenerator::new(34);
        for kind in [
            InftyMetricKind::Grassmann,
            InftyMetricKind::Chordal,
            InftyMetricKind::Procrustes,
        ] {
            let a = random_subspace(1, 4, &mut g).unwrap();
            let b = random_subspace(2, 4, &mut g).unwrap();
            let m = metric_infty(kind, &a, &b).unwrap();
            let a_emb = a.embed(2, 5).unwrap();
            let b_emb = b.embed(2, 5).unwrap();
            let d = distance(kind.distance_kind(), &a_emb, &b_emb).unwrap();
            assert!((m - d).abs() <= 1e-10, "{kind:?}: {m} vs {d}");
        }
    }

    #[test]
    fn rms_metric_reduces_to_delta_plus_gap() {
        let mut g = SeededGenerator::new(35);
        let a = random_subspace(2, 6, &mut g).unwrap();
        let b = random_subspace(4, 6, &mut g).unwrap();
        let d = delta(DistanceKind::Grassmann, &a, &b).unwrap();
        let m = metric_infty(InftyMetricKind::Grassmann, &a, &b).unwrap();
        assert!((m - (d * d + 2.0 * FRAC_PI_2 * FRAC_PI_2).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let mut g = SeededGenerator::new(36);
        let a = random_subspace(1, 4, &mut g).unwrap();
        let b = random_subspace(1, 5, &mut g).unwrap();
        assert!(matches!(
            metric_infty(InftyMetricKind::Chordal, &a, &b),
            Err(Error::AmbientMismatch { .. })
        ));
    }
}
