//! Schubert varieties of nested subspaces: membership, constructive nearest
//! and furthest points, dimension formulas, and Grassmannian volumes.
//!
//! For an anchor **A** ∈ Gr(k,n) and a target dimension l ≥ k, Ω₊(A) is the
//! variety of l-planes containing **A**; for **B** ∈ Gr(l,n) and k ≤ l,
//! Ω₋(B) is the variety of k-planes contained in **B**. The distance from a
//! point to either variety is computable in closed form from principal
//! angles, and the minimizers/maximizers are assembled directly from
//! principal vectors.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::subspace::{complement_frame, principal_decomposition, Subspace, RANK_RATIO_THRESHOLD};

/// Whether a variety collects the planes containing the anchor (Ω₊) or the
/// planes contained in it (Ω₋).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchubertFlavor {
    /// Ω₊(anchor): planes of `target_dim` ≥ dim anchor that contain it.
    ContainsAnchor,
    /// Ω₋(anchor): planes of `target_dim` ≤ dim anchor contained in it.
    ContainedInAnchor,
}

/// A Schubert variety of one of the two nested-subspace forms.
#[derive(Debug, Clone)]
pub struct SchubertVariety {
    flavor: SchubertFlavor,
    anchor: Subspace,
    target_dim: usize,
}

impl SchubertVariety {
    /// Ω₊(anchor): the variety of `target_dim`-planes containing `anchor`.
    /// Requires dim anchor ≤ target_dim ≤ ambient dim.
    pub fn containing(anchor: Subspace, target_dim: usize) -> Result<Self> {
        if target_dim < anchor.dim() || target_dim > anchor.ambient_dim() {
            return Err(Error::DimensionError(format!(
                "target dimension {target_dim} outside [{}, {}]",
                anchor.dim(),
                anchor.ambient_dim()
            )));
        }
        Ok(Self {
            flavor: SchubertFlavor::ContainsAnchor,
            anchor,
            target_dim,
        })
    }

    /// Ω₋(anchor): the variety of `target_dim`-planes contained in `anchor`.
    /// Requires 1 ≤ target_dim ≤ dim anchor.
    pub fn contained_in(anchor: Subspace, target_dim: usize) -> Result<Self> {
        if target_dim < 1 || target_dim > anchor.dim() {
            return Err(Error::DimensionError(format!(
                "target dimension {target_dim} outside [1, {}]",
                anchor.dim()
            )));
        }
        Ok(Self {
            flavor: SchubertFlavor::ContainedInAnchor,
            anchor,
            target_dim,
        })
    }

    pub fn flavor(&self) -> SchubertFlavor {
        self.flavor
    }

    pub fn anchor(&self) -> &Subspace {
        &self.anchor
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.anchor.ambient_dim()
    }

    /// Membership test at tolerance `tol`: containment of the anchor in `x`
    /// for Ω₊, of `x` in the anchor for Ω₋.
    pub fn member(&self, x: &Subspace, tol: f64) -> Result<bool> {
        if x.ambient_dim() != self.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: x.ambient_dim(),
                right: self.ambient_dim(),
            });
        }
        if x.dim() != self.target_dim {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: self.target_dim,
            });
        }
        match self.flavor {
            SchubertFlavor::ContainsAnchor => x.contains(&self.anchor, tol),
            SchubertFlavor::ContainedInAnchor => self.anchor.contains(x, tol),
        }
    }

    /// The dimension of the variety as a manifold: Ω₊(A) ≅ Gr(l−k, n−k) has
    /// dimension (n−l)(l−k); Ω₋(B) ≅ Gr(k,l) has dimension k(l−k).
    pub fn dimension(&self) -> usize {
        let n = self.ambient_dim();
        match self.flavor {
            SchubertFlavor::ContainsAnchor => {
                let k = self.anchor.dim();
                let l = self.target_dim;
                (n - l) * (l - k)
            }
            SchubertFlavor::ContainedInAnchor => {
                let l = self.anchor.dim();
                let k = self.target_dim;
                k * (l - k)
            }
        }
    }
}

/// The l-plane containing `a` that is nearest to `b`, where l = dim b.
///
/// With principal vectors (pᵢ, qᵢ) of (a, b), the minimizer is
/// span{p₁,…,p_k, q_{k+1},…,q_l}; its distance to `b` equals
/// `delta(kind, a, b)` for every distance kind.
pub fn nearest_containing(a: &Subspace, b: &Subspace, l: usize) -> Result<Subspace> {
    let k = a.dim();
    if l < k {
        return Err(Error::DimensionError(format!(
            "target dimension {l} below dim of contained subspace {k}"
        )));
    }
    if l > a.ambient_dim() {
        return Err(Error::DimensionError(format!(
            "target dimension {l} exceeds ambient dimension {}",
            a.ambient_dim()
        )));
    }
    if l != b.dim() {
        return Err(Error::DimensionError(format!(
            "target dimension {l} must equal dim of the reference subspace {}",
            b.dim()
        )));
    }
    let pd = principal_decomposition(a, b)?;
    let mut frame = DMatrix::<f64>::zeros(a.ambient_dim(), l);
    frame.columns_mut(0, k).copy_from(pd.left_vectors());
    frame
        .columns_mut(k, l - k)
        .copy_from(&pd.right_vectors().columns(k, l - k));
    Ok(Subspace::from_frame_unchecked(frame))
}

/// The k-plane contained in `b` that is nearest to `a`, where k = dim a ≤
/// dim b: the span of the first k right principal vectors. Ties under
/// repeated angles follow the SVD's ordering.
pub fn nearest_contained(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    let k = a.dim();
    if k > b.dim() {
        return Err(Error::DimensionError(format!(
            "contained subspace dim {k} exceeds containing subspace dim {}",
            b.dim()
        )));
    }
    let pd = principal_decomposition(a, b)?;
    Ok(Subspace::from_frame_unchecked(
        pd.right_vectors().columns(0, k).into_owned(),
    ))
}

/// The l-plane containing `a` that is furthest from `b`: `a` extended by
/// l−k directions orthogonal to both subspaces, which pins the extra
/// principal angles at π/2.
///
/// The maximal distance √(δ(a,b)² + (l−k)·π²/4) is attained whenever the
/// ambient space has room for the extension, i.e. n ≥ dim(a+b) + (l−k);
/// otherwise the error is `InsufficientAmbient`. The extension takes the
/// leading columns of an orthonormal basis of (a+b)^⊥, so the output is
/// deterministic.
pub fn furthest_containing(a: &Subspace, b: &Subspace, l: usize) -> Result<Subspace> {
    let (n, k) = (a.ambient_dim(), a.dim());
    if b.ambient_dim() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: b.ambient_dim(),
        });
    }
    if l < k || l > n {
        return Err(Error::DimensionError(format!(
            "target dimension {l} outside [{k}, {n}]"
        )));
    }
    if l == k {
        return Ok(a.clone());
    }

    // Orthonormal basis of a+b through the SVD of the stacked frames; the
    // stack is rank deficient whenever the subspaces overlap, so the rank
    // is read off the singular values.
    let mut stacked = DMatrix::<f64>::zeros(n, k + b.dim());
    stacked.columns_mut(0, k).copy_from(a.basis());
    stacked.columns_mut(k, b.dim()).copy_from(b.basis());
    let svd = stacked.svd(true, false);
    let sv = &svd.singular_values;
    let sum_dim = sv.iter().filter(|&&s| s > RANK_RATIO_THRESHOLD * sv[0]).count();
    if n - sum_dim < l - k {
        return Err(Error::InsufficientAmbient {
            needed: l - k,
            available: n - sum_dim,
        });
    }
    let u = svd.u.as_ref().expect("svd with u requested");
    let sum_basis = u.columns(0, sum_dim).into_owned();
    let complement = complement_frame(&sum_basis);
    let mut frame = DMatrix::<f64>::zeros(n, l);
    frame.columns_mut(0, k).copy_from(a.basis());
    frame
        .columns_mut(k, l - k)
        .copy_from(&complement.columns(0, l - k));
    Ok(Subspace::from_frame_unchecked(frame))
}

/// The volume ω_m = π^{m/2} / Γ(1 + m/2) of the unit ball in ℝᵐ.
pub fn unit_ball_volume(m: usize) -> f64 {
    ln_unit_ball_volume(m).exp()
}

/// ln ω_m, computed exactly from the half-integer gamma recurrence.
pub fn ln_unit_ball_volume(m: usize) -> f64 {
    0.5 * (m as f64) * std::f64::consts::PI.ln() - ln_gamma_half(m as u64 + 2)
}

/// ln Γ(h/2) for h ≥ 1, by the recurrence Γ(x+1) = xΓ(x) down to Γ(1) = 1
/// or Γ(1/2) = √π. Only half-integer arguments ever occur here, so no
/// series approximation is needed.
fn ln_gamma_half(h: u64) -> f64 {
    debug_assert!(h >= 1);
    let mut acc = if h % 2 == 1 {
        0.5 * std::f64::consts::PI.ln()
    } else {
        0.0
    };
    let mut t = if h % 2 == 1 { 1 } else { 2 };
    while t < h {
        acc += (t as f64 / 2.0).ln();
        t += 2;
    }
    acc
}

/// ln m! via the integer gamma recurrence.
fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|j| (j as f64).ln()).sum()
}

const MAX_VOLUME_AMBIENT: usize = 170;

fn check_volume_dims(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::DimensionError(format!(
            "volume needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n > MAX_VOLUME_AMBIENT {
        return Err(Error::Overflow(format!(
            "ambient dimension {n} exceeds the supported maximum {MAX_VOLUME_AMBIENT}"
        )));
    }
    Ok(())
}

/// ln Vol(Gr(k,n)) for the volume density induced by the geodesic metric:
/// Vol = C(n,k) · Πⁿ ωⱼ / (Πᵏ ωⱼ · Πⁿ⁻ᵏ ωⱼ), evaluated in log space.
pub fn ln_grassmannian_volume(k: usize, n: usize) -> Result<f64> {
    check_volume_dims(k, n)?;
    let ln_binomial = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
    let sum_ln_omega = |upto: usize| -> f64 { (1..=upto).map(|j| ln_unit_ball_volume(j)).sum() };
    Ok(ln_binomial + sum_ln_omega(n) - sum_ln_omega(k) - sum_ln_omega(n - k))
}

/// Vol(Gr(k,n)); errors with `Overflow` when the value exceeds f64 range.
pub fn grassmannian_volume(k: usize, n: usize) -> Result<f64> {
    let ln_vol = ln_grassmannian_volume(k, n)?;
    let vol = ln_vol.exp();
    if vol.is_infinite() {
        return Err(Error::Overflow(format!(
            "Vol(Gr({k},{n})) overflows f64; ln volume is {ln_vol}"
        )));
    }
    Ok(vol)
}

/// ln of the relative volume of the nested-subspace Schubert varieties:
/// the fraction of l-planes containing a fixed k-plane, which equals the
/// fraction of k-planes contained in a fixed l-plane,
///
/// ```text
/// l!(n−k)! Π_{j=l−k+1}^{l} ωⱼ / ( n!(l−k)! Π_{j=n−k+1}^{n} ωⱼ ).
/// ```
pub fn ln_relative_volume(k: usize, l: usize, n: usize) -> Result<f64> {
    if k < 1 || k > l || l > n {
        return Err(Error::DimensionError(format!(
            "relative volume needs 1 <= k <= l <= n, got k = {k}, l = {l}, n = {n}"
        )));
    }
    check_volume_dims(l, n)?;
    let range_ln_omega =
        |from: usize, upto: usize| -> f64 { (from..=upto).map(ln_unit_ball_volume).sum() };
    Ok(ln_factorial(l) + ln_factorial(n - k) + range_ln_omega(l - k + 1, l)
        - ln_factorial(n)
        - ln_factorial(l - k)
        - range_ln_omega(n - k + 1, n))
}

/// The relative volume itself, a probability in (0, 1].
pub fn relative_volume(k: usize, l: usize, n: usize) -> Result<f64> {
    Ok(ln_relative_volume(k, l, n)?.exp())
}
