//! Certified numerical index of ℓ_p² for `p ∈ [3/2, 3]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::mp::{check_exponent, conjugate_exponent, mp_constant};
use crate::scalar::Scalar;

/// Default number of grid cells for the condition check.
pub const CONDITION_GRID: usize = 100_000;
/// A grid value of `h` at or above `-CONDITION_SLACK` counts as non-negative.
pub const CONDITION_SLACK: f64 = 1e-12;

/// Outcome of scanning `h(t) = t(1 − t^{2p−3}) + t²(1 − t^{2p−1})` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck<T> {
    pub holds: bool,
    /// Smallest grid value of `h`.
    pub min_margin: T,
    /// Where that value occurs.
    pub argmin_t: T,
}

/// `h(t)`; non-negative exactly when `c₄(t)(1 + 1/c₂(t) + 1/c₃(t)) ≤ 1` along
/// the ℓ_p duality parametrization.
#[inline]
pub fn condition_margin<T: Scalar>(p: T, t: T) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    t * (one - t.powf(two * p - T::lit(3.0))) + t * t * (one - t.powf(two * p - one))
}

/// Evaluates `h` at `t = i / grid_size` for `i = 1, …, grid_size − 1`; the
/// endpoints 0 and 1 are excluded.
pub fn lp_condition_check<T: Scalar>(p: T, grid_size: usize) -> Result<ConditionCheck<T>> {
    check_exponent(p)?;
    if grid_size < 2 {
        return Err(Error::InvalidInput(format!("grid size must be at least 2, got {grid_size}")));
    }
    let n = T::of_usize(grid_size);
    let (min_margin, argmin_t) = (1..grid_size)
        .map(|i| {
            let t = T::of_usize(i) / n;
            (condition_margin(p, t), t)
        })
        .fold((T::infinity(), T::zero()), |best, cur| if cur.0 < best.0 { cur } else { best });
    Ok(ConditionCheck { holds: min_margin >= -T::lit(CONDITION_SLACK), min_margin, argmin_t })
}

/// How the certified value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedIndex<T> {
    pub value: T,
    /// Exponent in `[3/2, 2]` at which `M` was evaluated (`p` or its conjugate).
    pub exponent_used: T,
    /// Condition scan at `exponent_used`; absent for `p = 2`.
    pub condition: Option<ConditionCheck<T>>,
}

/// `n(ℓ_p²) = M_p` for `p ∈ [3/2, 3]`.
///
/// For `p > 2` the computation runs at the conjugate exponent, which lies in
/// `[3/2, 2)` and has the same index. Outside `[3/2, 3]` this fails with
/// [`Error::OutOfCertification`].
pub fn certified_index_lp<T: Scalar>(p: T) -> Result<CertifiedIndex<T>> {
    if !(p >= T::lit(1.5) && p <= T::lit(3.0)) {
        return Err(Error::OutOfCertification(p.to_f64_lossy()));
    }
    let two = T::lit(2.0);
    if p == two {
        return Ok(CertifiedIndex { value: T::zero(), exponent_used: two, condition: None });
    }
    let r = if p < two { p } else { conjugate_exponent(p)? };
    let check = lp_condition_check(r, CONDITION_GRID)?;
    if !check.holds {
        return Err(Error::Internal(format!(
            "condition h(t) ≥ 0 fails at p = {r}, t = {}: h = {}",
            check.argmin_t, check.min_margin
        )));
    }
    Ok(CertifiedIndex { value: mp_constant(r)?.value, exponent_used: r, condition: Some(check) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_examples() {
        assert!(lp_condition_check(1.5, CONDITION_GRID).unwrap().holds);
        assert!(lp_condition_check(1.9, CONDITION_GRID).unwrap().holds);
        let c = lp_condition_check(1.2, CONDITION_GRID).unwrap();
        assert!(!c.holds);
        // negativity sits near t = 0 where t^{2p-3} blows up
        assert!(c.argmin_t < 0.5);
        assert!(c.min_margin < 0.0);
    }

    #[test]
    fn condition_margin_direct_values() {
        // p = 1.5: h(t) = t²(1 − t²)
        let h = condition_margin(1.5f64, 0.5);
        assert!((h - 0.25 * 0.75).abs() < 1e-15);
        // p = 1.2, t = 0.01: 0.01(1 − 0.01^{-0.6}) + 1e-4(1 − 0.01^{1.4})
        let direct: f64 = 0.01 * (1.0 - 0.01f64.powf(-0.6)) + 1e-4 * (1.0 - 0.01f64.powf(1.4));
        assert!((condition_margin(1.2, 0.01) - direct).abs() < 1e-15);
        assert!(direct < 0.0);
    }

    #[test]
    fn condition_rejects_bad_input() {
        assert!(lp_condition_check(1.5, 1).is_err());
        assert!(lp_condition_check(1.0, 10).is_err());
    }

    #[test]
    fn certified_examples() {
        assert_eq!(certified_index_lp(2.0).unwrap().value, 0.0);
        let c3 = certified_index_lp(3.0f64).unwrap();
        assert_eq!(c3.exponent_used, 1.5);
        assert!((c3.value - 0.2271).abs() < 1e-4);
        let c15 = certified_index_lp(1.5f64).unwrap();
        assert!((c15.value - c3.value).abs() < 1e-10);
    }

    #[test]
    fn certified_rejects_uncertified_exponents() {
        for p in [1.2, 1.4999, 3.0001, 8.0] {
            assert!(matches!(certified_index_lp(p), Err(Error::OutOfCertification(_))), "p = {p}");
        }
    }
}
