use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::search::UniformGrid;

/// Grid nodes on `[0, 1]` scanned before golden-section refinement.
pub const MP_GRID: usize = 10_001;

/// `M_p` together with a maximizing parameter `t₀ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MpConstant<T> {
    pub value: T,
    pub t0: T,
}

pub(crate) fn check_exponent<T: Scalar>(p: T) -> Result<()> {
    if !p.is_finite() || p <= T::one() {
        return Err(Error::InvalidInput(format!("exponent must satisfy 1 < p < ∞, got {p}")));
    }
    Ok(())
}

/// `q = p / (p - 1)`.
pub fn conjugate_exponent<T: Scalar>(p: T) -> Result<T> {
    check_exponent(p)?;
    Ok(p / (p - T::one()))
}

/// `|t^{p-1} - t| / (1 + t^p)`.
#[inline]
pub fn mp_objective<T: Scalar>(p: T, t: T) -> T {
    (t.powf(p - T::one()) - t).abs() / (T::one() + t.powf(p))
}

/// `M_p = max_{t ∈ [0,1]} |t^{p-1} - t| / (1 + t^p)`, the numerical radius of
/// the rotation `I₄` on ℓ_p².
pub fn mp_constant<T: Scalar>(p: T) -> Result<MpConstant<T>> {
    check_exponent(p)?;
    let peak = UniformGrid::closed(T::zero(), T::one(), MP_GRID).maximize(|t| mp_objective(p, t));
    Ok(MpConstant { value: peak.value, t0: peak.arg })
}
