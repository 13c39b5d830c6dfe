use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numerical thresholds threaded through every certification routine.
///
/// `rank_tol` is relative to the largest singular value of the system it is
/// applied to; the others are absolute.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ToleranceProfile<T: Real> {
    pub hermitian_tol: T,
    pub psd_tol: T,
    pub rank_tol: T,
    pub residual_tol: T,
    pub membership_margin: T,
}

impl<T: Real> Default for ToleranceProfile<T> {
    fn default() -> Self {
        if T::epsilon() > T::lit(1e-10) {
            Self {
                hermitian_tol: T::lit(1e-5),
                psd_tol: T::lit(1e-4),
                rank_tol: T::lit(1e-4),
                residual_tol: T::lit(1e-3),
                membership_margin: T::lit(1e-3),
            }
        } else {
            Self {
                hermitian_tol: T::lit(1e-12),
                psd_tol: T::lit(1e-9),
                rank_tol: T::lit(1e-8),
                residual_tol: T::lit(1e-7),
                membership_margin: T::lit(1e-8),
            }
        }
    }
}

impl<T: Real> ToleranceProfile<T> {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("hermitian_tol", self.hermitian_tol),
            ("psd_tol", self.psd_tol),
            ("rank_tol", self.rank_tol),
            ("residual_tol", self.residual_tol),
            ("membership_margin", self.membership_margin),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::param(format!("{name} must be a positive finite number, got {v}")));
            }
        }
        Ok(())
    }
}
