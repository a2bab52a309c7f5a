//! Reproducible random generation of subspaces, Schubert-variety members,
//! and Haar-distributed orthogonal matrices.
//!
//! The generator is ChaCha8 seeded from a 64-bit integer, with standard
//! normals drawn through the ziggurat transform of `rand_distr`. The exact
//! stream is fixed by those crate versions (pinned in the lockfile), so a
//! given seed reproduces the same values run after run.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::subspace::{orthonormal_basis, Subspace};

/// A seeded pseudorandom source for all sampling operations.
///
/// The generator is a mutable value owned by its caller; each draw advances
/// its state. Use independent generators with distinct seeds for parallel
/// work.
#[derive(Debug, Clone)]
pub struct SeededGenerator {
    rng: ChaCha8Rng,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A rows×cols matrix of independent standard normals.
    pub fn standard_normal_matrix(&mut self, rows: usize, cols: usize) -> DMatrix<f64> {
        DMatrix::from_fn(rows, cols, |_, _| self.rng.sample(StandardNormal))
    }
}

/// A uniformly distributed k-plane in ℝⁿ: the span of an n×k matrix of
/// independent standard normals. Left-multiplication by any fixed
/// orthogonal matrix leaves the distribution unchanged.
pub fn random_subspace(k: usize, n: usize, g: &mut SeededGenerator) -> Result<Subspace> {
    if k == 0 || k > n {
        return Err(Error::DimensionError(format!(
            "cannot sample a {k}-plane in R^{n}"
        )));
    }
    loop {
        // A Gaussian matrix is almost surely full rank; retry on the
        // measure-zero failure rather than erroring.
        match orthonormal_basis(&g.standard_normal_matrix(n, k)) {
            Ok(s) => return Ok(s),
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A uniformly distributed k-plane contained in `b`, drawn by sampling a
/// k-plane of ℝˡ (l = dim b) and expressing it in b's basis.
pub fn random_contained(b: &Subspace, k: usize, g: &mut SeededGenerator) -> Result<Subspace> {
    let l = b.dim();
    if k == 0 || k > l {
        return Err(Error::DimensionError(format!(
            "cannot sample a {k}-plane inside a {l}-plane"
        )));
    }
    let inner = random_subspace(k, l, g)?;
    Ok(Subspace::from_frame_unchecked(b.basis() * inner.basis()))
}

/// A random l-plane containing `a`: the direct sum of `a` with a uniformly
/// distributed (l−k)-plane of the orthogonal complement of `a`.
pub fn random_containing(a: &Subspace, l: usize, g: &mut SeededGenerator) -> Result<Subspace> {
    let (n, k) = (a.ambient_dim(), a.dim());
    if l < k || l > n {
        return Err(Error::DimensionError(format!(
            "cannot sample an {l}-plane containing a {k}-plane in R^{n}"
        )));
    }
    if l == k {
        return Ok(a.clone());
    }
    let complement = a.orthogonal_complement()?;
    let inner = random_subspace(l - k, n - k, g)?;
    let extra = complement.basis() * inner.basis();
    let mut frame = DMatrix::<f64>::zeros(n, l);
    frame.columns_mut(0, k).copy_from(a.basis());
    frame.columns_mut(k, l - k).copy_from(&extra);
    Ok(Subspace::from_frame_unchecked(frame))
}

/// A Haar-distributed n×n orthogonal matrix: the Q factor of a Gaussian
/// matrix with the sign convention that makes the R diagonal nonnegative.
/// Without that convention the QR construction is not Haar.
pub fn random_orthogonal(n: usize, g: &mut SeededGenerator) -> DMatrix<f64> {
    assert!(n >= 1, "orthogonal matrices need n >= 1");
    let qr = g.standard_normal_matrix(n, n).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::principal_angles;

    #[test]
    fn full_space_sample() {
        let mut g = SeededGenerator::new(1);
        let s = random_subspace(3, 3, &mut g).unwrap();
        assert_eq!(s.dim(), 3);
        let e1 = Subspace::from_orthonormal(DMatrix::from_column_slice(3, 1, &[1.0, 0.0, 0.0]))
            .unwrap();
        assert!(s.contains(&e1, 1e-10).unwrap());
    }

    #[test]
    fn same_seed_same_subspace() {
        let a = random_subspace(2, 4, &mut SeededGenerator::new(42)).unwrap();
        let b = random_subspace(2, 4, &mut SeededGenerator::new(42)).unwrap();
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn contained_sample_is_contained() {
        let mut g = SeededGenerator::new(3);
        let b = random_subspace(3, 6, &mut g).unwrap();
        let y = random_contained(&b, 2, &mut g).unwrap();
        assert!(b.contains(&y, 1e-10).unwrap());
    }

    #[test]
    fn contained_sample_of_full_dimension_is_the_subspace() {
        let mut g = SeededGenerator::new(4);
        let b = random_subspace(2, 5, &mut g).unwrap();
        let y = random_contained(&b, 2, &mut g).unwrap();
        assert!(b.contains(&y, 1e-10).unwrap());
        assert!(y.contains(&b, 1e-10).unwrap());
    }

    #[test]
    fn containing_sample_contains() {
        let mut g = SeededGenerator::new(5);
        let a = random_subspace(2, 6, &mut g).unwrap();
        let x = random_containing(&a, 4, &mut g).unwrap();
        assert_eq!(x.dim(), 4);
        assert!(x.contains(&a, 1e-10).unwrap());
    }

    #[test]
    fn containing_sample_edge_dimensions() {
        let mut g = SeededGenerator::new(6);
        let a = random_subspace(2, 4, &mut g).unwrap();
        let same = random_containing(&a, 2, &mut g).unwrap();
        assert_eq!(same.basis(), a.basis());
        let full = random_containing(&a, 4, &mut g).unwrap();
        assert_eq!(full.dim(), 4);
        for theta in principal_angles(&full, &a).unwrap() {
            assert!(theta <= 1e-8);
        }
    }

    #[test]
    fn orthogonal_matrix_is_orthogonal() {
        let mut g = SeededGenerator::new(7);
        for n in [1, 2, 5] {
            let q = random_orthogonal(n, &mut g);
            let defect = (q.transpose() * &q - DMatrix::<f64>::identity(n, n)).norm();
            assert!(defect <= 1e-10, "n = {n}: defect {defect}");
        }
    }

    #[test]
    fn one_dimensional_orthogonal_is_sign() {
        let mut g = SeededGenerator::new(8);
        for _ in 0..10 {
            let q = random_orthogonal(1, &mut g);
            assert!((q[(0, 0)].abs() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn dimension_errors() {
        let mut g = SeededGenerator::new(9);
        assert!(random_subspace(3, 2, &mut g).is_err());
        assert!(random_subspace(0, 2, &mut g).is_err());
        let b = random_subspace(2, 4, &mut g).unwrap();
        assert!(random_contained(&b, 3, &mut g).is_err());
        assert!(random_containing(&b, 1, &mut g).is_err());
        assert!(random_containing(&b, 5, &mut g).is_err());
    }
}
