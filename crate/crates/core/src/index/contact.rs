//! Contact coefficients `c_j = |x₀*(I_j x₀)|` and the lower bound they give
//! for the numerical index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::{DualityPair, TAU_PAIR};
use crate::operator::Isometry;
use crate::scalar::Scalar;

/// Slack allowed on `c₄ ≤ min(c₁, c₂, c₃)`.
pub const CONTACT_ORDER_TOL: f64 = 1e-10;
/// Slack on the exactness condition `c₄(1 + 1/c₂ + 1/c₃) ≤ 1`.
pub const CONDITION_TOL: f64 = 1e-12;

/// `[c₁, c₂, c₃, c₄]` at a duality pair; `c_j = |x*(I_j x)|`.
pub fn contact_values<T: Scalar>(pair: &DualityPair<T>) -> [T; 4] {
    Isometry::ALL.map(|iso| pair.xstar.dot(iso.matrix::<T>().apply(pair.x)).abs())
}

/// The contact coefficients at a duality pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactVector<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
    pub c4: T,
}

impl<T: Scalar> ContactVector<T> {
    /// Validates `c₁ = 1`, `c_j ∈ [0, 1]` and `c₄ ≤ min(c₁, c₂, c₃)`.
    pub fn new(c1: T, c2: T, c3: T, c4: T) -> Result<Self> {
        let cv = Self { c1, c2, c3, c4 };
        let tol = T::tol(CONTACT_ORDER_TOL);
        let cs = cv.as_array();
        if cs.iter().any(|c| !c.is_finite() || *c < T::zero() || *c > T::one() + tol) {
            return Err(Error::InconsistentContact(format!("coefficients must lie in [0, 1]: {cs:?}")));
        }
        if (c1 - T::one()).abs() > tol {
            return Err(Error::InconsistentContact(format!("c1 = {c1} but x*(x) = 1 forces c1 = 1")));
        }
        if c4 > c1.min(c2).min(c3) + tol {
            return Err(Error::InconsistentContact(format!("c4 = {c4} exceeds min(c1, c2, c3)")));
        }
        Ok(cv)
    }

    pub fn from_array([c1, c2, c3, c4]: [T; 4]) -> Result<Self> {
        Self::new(c1, c2, c3, c4)
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }
}

/// Contact vector of a duality pair.
///
/// The pairing `x*(x) = 1` is checked within `τ_pair`; a violation of
/// `c₄ ≤ c_j` means the duality map that produced the pair is broken.
pub fn contact_vector<T: Scalar>(pair: &DualityPair<T>) -> Result<ContactVector<T>> {
    let pairing = pair.pairing();
    if (pairing - T::one()).abs() > T::tol(TAU_PAIR) {
        return Err(Error::Precondition(format!("x*(x) = {pairing}, expected 1")));
    }
    let [c1, c2, c3, c4] = contact_values(pair);
    if c4 > c1.min(c2).min(c3) + T::tol(CONTACT_ORDER_TOL) {
        return Err(Error::Internal(format!("contact ordering violated at {pair:?}: c = {:?}", [c1, c2, c3, c4])));
    }
    ContactVector::new(c1.min(T::one()), c2.min(T::one()), c3.min(T::one()), c4.min(T::one()))
}

/// Outcome of the contact-vector bound on the numerical index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Bound<T> {
    /// `c₄(1 + 1/c₂ + 1/c₃)`; zero when `c₄ = 0`.
    pub condition_value: T,
    /// `min{c₄, 2 / (1 + 1/c₂ + 1/c₃ + 1/c₄)}`; zero when `c₄ = 0`.
    pub lower_bound: T,
    /// Whether the index equals `c₄` (condition at most one, or `c₄ = 0`).
    pub exact: bool,
}

/// Lower bound `n(X) ≥ min{c₄, 2/(1 + 1/c₂ + 1/c₃ + 1/c₄)}`, with equality
/// `n(X) = c₄` whenever `c₄(1 + 1/c₂ + 1/c₃) ≤ 1`.
pub fn theorem2_bound<T: Scalar>(contact: &ContactVector<T>) -> Result<Theorem2Bound<T>> {
    let ContactVector { c2, c3, c4, .. } = *contact;
    if c4 == T::zero() {
        return Ok(Theorem2Bound { condition_value: T::zero(), lower_bound: T::zero(), exact: true });
    }
    if c2 == T::zero() || c3 == T::zero() {
        return Err(Error::InconsistentContact(format!("c4 = {c4} > 0 but c2 = {c2}, c3 = {c3}")));
    }
    let one = T::one();
    let condition_value = c4 * (one + c2.recip() + c3.recip());
    let closed = T::lit(2.0) / (one + c2.recip() + c3.recip() + c4.recip());
    Ok(Theorem2Bound {
        condition_value,
        lower_bound: c4.min(closed),
        exact: condition_value <= one + T::tol(CONDITION_TOL),
    })
}
