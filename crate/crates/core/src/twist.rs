//! The twist map `x ↦ x'` between `G^{u,v}` and `G^{u⁻¹,v⁻¹}`.

use thiserror::Error;

use crate::bruhat::{double_cell_of, BruhatError};
use crate::linalg::{int, Matrix};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("matrix lies in G^({found_u},{found_v}), not G^({u},{v})")]
    WrongCell {
        u: Permutation,
        v: Permutation,
        found_u: Permutation,
        found_v: Permutation,
    },
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
    #[error("Gaussian decomposition of {0} failed")]
    DecompositionFailure(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistContext {
    pub u: Permutation,
    pub v: Permutation,
    /// `diag(1, -1, 1, -1, ...)`.
    pub d0: Matrix,
    pub ubar: Matrix,
    pub vinvbar: Matrix,
}

impl TwistContext {
    pub fn new(u: &Permutation, v: &Permutation) -> Self {
        let n = u.n();
        let d0 = Matrix::diagonal(&(0..n).map(|i| int(if i % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>());
        TwistContext {
            u: u.clone(),
            v: v.clone(),
            d0,
            ubar: u.signed_representative(),
            vinvbar: v.inverse().signed_representative(),
        }
    }

    /// `d0 [xᵀ ū]_+ ūᵀ (xᵀ)⁻¹ v̄ [v̄ᵀ xᵀ]_- d0⁻¹` with `v̄` the signed
    /// representative of `v⁻¹`. Does not check the cell.
    pub fn apply_unchecked(&self, x: &Matrix) -> Result<Matrix, TwistError> {
        let xt = x.transpose();
        let plus = (&xt * &self.ubar)
            .ldu()
            .map_err(|_| TwistError::DecompositionFailure("x^T u"))?
            .upper;
        let minus = (&self.vinvbar.transpose() * &xt)
            .ldu()
            .map_err(|_| TwistError::DecompositionFailure("v^T x^T"))?
            .lower;
        let xt_inv = xt.inverse().map_err(|_| BruhatError::Singular)?;
        let mut out = &self.d0 * &plus;
        for m in [&self.ubar.transpose(), &xt_inv, &self.vinvbar, &minus, &self.d0] {
            out = &out * m;
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix, TwistError> {
        let (found_u, found_v) = double_cell_of(x)?;
        if found_u != self.u || found_v != self.v {
            return Err(TwistError::WrongCell {
                u: self.u.clone(),
                v: self.v.clone(),
                found_u,
                found_v,
            });
        }
        self.apply_unchecked(x)
    }
}

pub fn twist(x: &Matrix, u: &Permutation, v: &Permutation) -> Result<Matrix, TwistError> {
    TwistContext::new(u, v).apply(x)
}

/// Whether twisting by `(u, v)` and then by `(u⁻¹, v⁻¹)` returns `x`.
pub fn twist_roundtrip_check(x: &Matrix, u: &Permutation, v: &Permutation) -> Result<bool, TwistError> {
    let once = twist(x, u, v)?;
    let back = twist(&once, &u.inverse(), &v.inverse())?;
    Ok(&back == x)
}
