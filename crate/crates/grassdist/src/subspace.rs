//! Subspaces of ℝⁿ represented by orthonormal bases, and the principal-angle
//! machinery everything else is built on.
//!
//! A point of the Grassmannian Gr(k,n) is stored as an n×k matrix with
//! orthonormal columns. Principal angles θ₁ ≤ … ≤ θᵣ between subspaces
//! **A** ∈ Gr(k,n) and **B** ∈ Gr(l,n), r = min(k,l), are the arccosines of
//! the singular values of AᵀB; the paired principal vectors are the columns
//! of AU and BV where AᵀB = UΣVᵀ.

use std::cmp::Ordering;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Default tolerance for containment tests.
pub const DEFAULT_CONTAINMENT_TOL: f64 = 1e-8;

/// Default threshold on 1 − cos θ for deciding that a principal angle
/// vanishes when extracting intersections.
pub const DEFAULT_INTERSECTION_TAU: f64 = 1e-12;

/// Relative singular-value cutoff below which a spanning set is declared
/// rank deficient.
pub const RANK_RATIO_THRESHOLD: f64 = 1e-10;

/// Orthonormality is accepted when ‖BᵀB − I‖_F ≤ this factor × √k.
pub const ORTHONORMALITY_TOL_FACTOR: f64 = 1e-10;

/// A k-dimensional linear subspace of ℝⁿ, stored as an n×k column-orthonormal
/// basis.
///
/// Values are immutable; every operation is a pure function of its inputs,
/// so subspaces can be shared and sent across threads freely.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    /// Wraps an already-orthonormal frame, validating the invariant
    /// ‖BᵀB − I‖_F ≤ 1e-10·√k.
    pub fn from_orthonormal(basis: DMatrix<f64>) -> Result<Self> {
        let (n, k) = (basis.nrows(), basis.ncols());
        if k == 0 || n == 0 {
            return Err(Error::DimensionError(
                "subspace dimensions must be at least 1".into(),
            ));
        }
        if k > n {
            return Err(Error::DimensionError(format!(
                "subspace dimension {k} exceeds ambient dimension {n}"
            )));
        }
        check_finite(&basis)?;
        let err = orthonormality_error(&basis);
        let tol = ORTHONORMALITY_TOL_FACTOR * (k as f64).sqrt();
        if err > tol {
            return Err(Error::RankDeficient {
                ratio: err,
                threshold: tol,
            });
        }
        Ok(Self { basis })
    }

    /// Internal constructor for frames that are orthonormal by construction.
    pub(crate) fn from_frame_unchecked(basis: DMatrix<f64>) -> Self {
        debug_assert!(
            orthonormality_error(&basis)
                <= ORTHONORMALITY_TOL_FACTOR * (basis.ncols() as f64).sqrt(),
            "internal frame lost orthonormality"
        );
        Self { basis }
    }

    /// Ambient dimension n.
    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Subspace dimension k.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// The stored orthonormal basis (one column per basis vector).
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// The orthogonal complement, a subspace of dimension n−k.
    ///
    /// Fails with `DimensionError` when k = n (the complement would be the
    /// zero subspace, which is not representable).
    pub fn orthogonal_complement(&self) -> Result<Subspace> {
        let (n, k) = (self.ambient_dim(), self.dim());
        if k == n {
            return Err(Error::DimensionError(
                "full space has no nonzero orthogonal complement".into(),
            ));
        }
        Ok(Subspace::from_frame_unchecked(complement_frame(
            &self.basis,
        )))
    }

    /// Embeds this subspace of Gr(k,n) into Gr(l,m) by the block map
    ///
    /// ```text
    ///         [ A  0      ]
    ///  A  ↦   [ 0  0      ]
    ///         [ 0  I_{l−k} ]
    /// ```
    ///
    /// with m−n−(l−k) zero rows in the middle. Requires k ≤ l, n ≤ m and
    /// l−k ≤ m−n. For l = k this is plain zero padding of the basis vectors.
    pub fn embed(&self, target_dim: usize, target_ambient: usize) -> Result<Subspace> {
        let (n, k) = (self.ambient_dim(), self.dim());
        let (l, m) = (target_dim, target_ambient);
        if l < k {
            return Err(Error::DimensionError(format!(
                "target dimension {l} below subspace dimension {k}"
            )));
        }
        if m < n {
            return Err(Error::DimensionError(format!(
                "target ambient {m} below ambient dimension {n}"
            )));
        }
        if l - k > m - n {
            return Err(Error::DimensionError(format!(
                "dimension increase {} exceeds ambient increase {}",
                l - k,
                m - n
            )));
        }
        let mut frame = DMatrix::<f64>::zeros(m, l);
        frame.view_mut((0, 0), (n, k)).copy_from(&self.basis);
        for j in 0..(l - k) {
            frame[(m - (l - k) + j, k + j)] = 1.0;
        }
        Ok(Subspace::from_frame_unchecked(frame))
    }

    /// The orthogonal projection P = BBᵀ onto this subspace; P is symmetric,
    /// idempotent, and has trace k.
    pub fn projection_matrix(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Recovers a subspace from an orthogonal projection matrix.
    ///
    /// `p` must satisfy ‖P − Pᵀ‖_F ≤ tol, ‖P² − P‖_F ≤ tol, and have trace
    /// within tol of a positive integer k; the result spans the k leading
    /// singular directions of P.
    pub fn from_projection(p: &DMatrix<f64>, tol: f64) -> Result<Subspace> {
        if p.nrows() != p.ncols() {
            return Err(Error::NotAProjection(format!(
                "matrix is {}x{}, not square",
                p.nrows(),
                p.ncols()
            )));
        }
        check_finite(p)?;
        let sym_err = (p - p.transpose()).norm();
        if sym_err > tol {
            return Err(Error::NotAProjection(format!(
                "symmetry defect {sym_err:.3e} exceeds {tol:.3e}"
            )));
        }
        let idem_err = (p * p - p).norm();
        if idem_err > tol {
            return Err(Error::NotAProjection(format!(
                "idempotency defect {idem_err:.3e} exceeds {tol:.3e}"
            )));
        }
        let trace = p.trace();
        let k = trace.round();
        if (trace - k).abs() > tol || k < 1.0 {
            return Err(Error::NotAProjection(format!(
                "trace {trace} is not a positive integer within {tol:.3e}"
            )));
        }
        let k = k as usize;
        let svd = p.clone().svd(true, false);
        let u = svd.u.expect("svd with u requested");
        Ok(Subspace::from_frame_unchecked(
            u.columns(0, k).into_owned(),
        ))
    }

    /// Whether `other` is contained in `self`, i.e. ‖(I − BBᵀ)A‖_F ≤ tol
    /// where B spans `self` and A spans `other`.
    pub fn contains(&self, other: &Subspace, tol: f64) -> Result<bool> {
        check_same_ambient(self, other)?;
        let residual = &other.basis - &self.basis * (self.basis.transpose() * &other.basis);
        Ok(residual.norm() <= tol)
    }
}

/// Builds the subspace spanned by the columns of `m`, orthonormalizing if
/// necessary.
///
/// Fails with `RankDeficient` unless the smallest singular value exceeds
/// 1e-10 times the largest. A frame that is already orthonormal is kept
/// as-is; otherwise the basis comes from a Householder QR.
pub fn orthonormal_basis(m: &DMatrix<f64>) -> Result<Subspace> {
    let (n, k) = (m.nrows(), m.ncols());
    if k == 0 || n == 0 {
        return Err(Error::DimensionError(
            "matrix dimensions must be at least 1x1".into(),
        ));
    }
    if k > n {
        return Err(Error::DimensionError(format!(
            "cannot span a {k}-dimensional subspace of R^{n}"
        )));
    }
    check_finite(m)?;
    let singular_values = m.clone().svd(false, false).singular_values;
    let sigma_max = singular_values[0];
    let sigma_min = singular_values[singular_values.len() - 1];
    if !(sigma_min > RANK_RATIO_THRESHOLD * sigma_max) {
        return Err(Error::RankDeficient {
            ratio: if sigma_max > 0.0 {
                sigma_min / sigma_max
            } else {
                0.0
            },
            threshold: RANK_RATIO_THRESHOLD,
        });
    }
    if orthonormality_error(m) <= ORTHONORMALITY_TOL_FACTOR * (k as f64).sqrt() {
        return Ok(Subspace::from_frame_unchecked(m.clone()));
    }
    let q = m.clone().qr().q();
    Ok(Subspace::from_frame_unchecked(q))
}

/// Principal angles together with the paired principal vectors.
///
/// `angles` holds θ₁ ≤ … ≤ θᵣ, r = min(k,l), each in [0, π/2]. The columns
/// of `left_vectors` (n×k) and `right_vectors` (n×l) are the principal
/// vectors of the two subspaces: column i of each side pairs with θᵢ for
/// i ≤ r, and the trailing columns extend them to orthonormal bases.
#[derive(Debug, Clone)]
pub struct PrincipalDecomposition {
    angles: Vec<f64>,
    left: DMatrix<f64>,
    right: DMatrix<f64>,
}

impl PrincipalDecomposition {
    /// Number of principal angles, min(k,l).
    pub fn num_angles(&self) -> usize {
        self.angles.len()
    }

    /// Ascending principal angles in radians.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Principal vectors of the first subspace, one per column (n×k).
    pub fn left_vectors(&self) -> &DMatrix<f64> {
        &self.left
    }

    /// Principal vectors of the second subspace, one per column (n×l).
    pub fn right_vectors(&self) -> &DMatrix<f64> {
        &self.right
    }
}

/// Orders a pair canonically so that angle computations are symmetric in
/// their arguments: lower dimension first, ties broken by lexicographic
/// comparison of the basis entries.
fn should_swap(a: &Subspace, b: &Subspace) -> bool {
    match a.dim().cmp(&b.dim()) {
        Ordering::Less => false,
        Ordering::Greater => true,
        Ordering::Equal => {
            for (x, y) in a.basis.iter().zip(b.basis.iter()) {
                match x.total_cmp(y) {
                    Ordering::Less => return false,
                    Ordering::Greater => return true,
                    Ordering::Equal => {}
                }
            }
            false
        }
    }
}

fn check_same_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    Ok(())
}

/// The principal angles between two subspaces of the same ambient space,
/// ascending, each in [0, π/2].
///
/// Singular values of the cross-Gram matrix are clamped to [0,1] before the
/// arccosine, so floating-point overshoot cannot produce NaN. Angles near 0
/// inherit the usual ~√ε accuracy limit of the cosine formulation.
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Result<Vec<f64>> {
    check_same_ambient(a, b)?;
    let (lo, hi) = if should_swap(a, b) { (b, a) } else { (a, b) };
    let gram = lo.basis.transpose() * &hi.basis;
    let singular_values = gram.svd(false, false).singular_values;
    Ok(singular_values
        .iter()
        .map(|&s| s.clamp(0.0, 1.0).acos())
        .collect())
}

/// Principal angles plus principal vectors: the full decomposition obtained
/// from the SVD AᵀB = UΣVᵀ, with the left vectors AU and right vectors BV.
///
/// The shorter side of the SVD is completed to a full orthonormal basis so
/// that `left_vectors` always has k columns and `right_vectors` l columns.
pub fn principal_decomposition(a: &Subspace, b: &Subspace) -> Result<PrincipalDecomposition> {
    check_same_ambient(a, b)?;
    let swapped = should_swap(a, b);
    let (lo, hi) = if swapped { (b, a) } else { (a, b) };

    let gram = lo.basis.transpose() * &hi.basis; // r_lo x r_hi with r_lo <= r_hi
    let svd = gram.svd(true, true);
    let u = svd.u.expect("svd with u requested"); // r_lo x r_lo
    let v = svd.v_t.expect("svd with v requested").transpose(); // r_hi x r_lo
    let angles: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|&s| s.clamp(0.0, 1.0).acos())
        .collect();

    let v_full = if v.ncols() < v.nrows() {
        let comp = complement_frame(&v);
        let mut full = DMatrix::<f64>::zeros(v.nrows(), v.nrows());
        full.columns_mut(0, v.ncols()).copy_from(&v);
        full.columns_mut(v.ncols(), comp.ncols()).copy_from(&comp);
        full
    } else {
        v
    };

    let lo_vectors = &lo.basis * u;
    let hi_vectors = &hi.basis * v_full;
    let (left, right) = if swapped {
        (hi_vectors, lo_vectors)
    } else {
        (lo_vectors, hi_vectors)
    };
    Ok(PrincipalDecomposition {
        angles,
        left,
        right,
    })
}

/// Result of an intersection computation: the dimension and, when positive,
/// a subspace spanning it.
#[derive(Debug, Clone)]
pub struct Intersection {
    pub dim: usize,
    pub basis: Option<Subspace>,
}

/// The intersection A ∩ B, read off the principal decomposition: the
/// intersection is spanned by the principal vectors whose angles vanish,
/// i.e. those with cos θᵢ > 1 − tau.
pub fn intersection(a: &Subspace, b: &Subspace, tau: f64) -> Result<Intersection> {
    let pd = principal_decomposition(a, b)?;
    let m = pd
        .angles
        .iter()
        .take_while(|&&theta| theta.cos() > 1.0 - tau)
        .count();
    let basis = if m > 0 {
        Some(Subspace::from_frame_unchecked(
            pd.left.columns(0, m).into_owned(),
        ))
    } else {
        None
    };
    Ok(Intersection { dim: m, basis })
}

/// ‖BᵀB − I‖_F for a candidate frame.
pub(crate) fn orthonormality_error(basis: &DMatrix<f64>) -> f64 {
    let k = basis.ncols();
    (basis.transpose() * basis - DMatrix::<f64>::identity(k, k)).norm()
}

/// An orthonormal basis of the orthogonal complement of the column space of
/// an orthonormal frame, via the leading singular directions of I − FFᵀ.
pub(crate) fn complement_frame(frame: &DMatrix<f64>) -> DMatrix<f64> {
    let n = frame.nrows();
    let r = frame.ncols();
    debug_assert!(r < n);
    let projector = DMatrix::<f64>::identity(n, n) - frame * frame.transpose();
    let svd = projector.svd(true, false);
    let u = svd.u.expect("svd with u requested");
    u.columns(0, n - r).into_owned()
}

pub(crate) fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    for col in 0..m.ncols() {
        for row in 0..m.nrows() {
            if !m[(row, col)].is_finite() {
                return Err(Error::NonFinite { row, col });
            }
        }
    }
    Ok(())
}
