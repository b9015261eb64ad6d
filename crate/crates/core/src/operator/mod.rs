//! Real 2×2 operators, their coordinates in the isometry basis, and
//! conjugation by the basis isometries.

mod radius;

use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

pub use radius::{
    numerical_radius, numerical_radius_sampled, numerical_range_values, operator_norm, SphereTable, DEFAULT_CIRCLE_GRID,
};
pub(crate) use radius::{polygon_operator_norm, polygon_radius};

use crate::error::{Error, Result};
use crate::norm::Vec2;
use crate::scalar::Scalar;

/// A linear map `(x, y) ↦ (t11·x + t12·y, t21·x + t22·y)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Operator2x2<T> {
    pub t11: T,
    pub t12: T,
    pub t21: T,
    pub t22: T,
}

impl<T: Scalar> Operator2x2<T> {
    pub const fn new(t11: T, t12: T, t21: T, t22: T) -> Self {
        Self { t11, t12, t21, t22 }
    }

    pub fn identity() -> Self {
        Isometry::Identity.matrix()
    }

    /// Parses the literal `"t11,t12,t21,t22"`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries: Vec<T> = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map(T::lit)
                    .map_err(|e| Error::InvalidInput(format!("operator entry {s:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        match entries[..] {
            [t11, t12, t21, t22] => {
                let op = Self::new(t11, t12, t21, t22);
                if op.is_finite() {
                    Ok(op)
                } else {
                    Err(Error::InvalidInput(format!("operator entries must be finite: {text:?}")))
                }
            }
            _ => Err(Error::InvalidInput(format!("operator needs 4 entries, got {}", entries.len()))),
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.t11, self.t12, self.t21, self.t22].iter().all(|t| t.is_finite())
    }

    #[inline]
    pub fn apply(&self, v: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.t11 * v.x + self.t12 * v.y, self.t21 * v.x + self.t22 * v.y)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self::new(
            self.t11 * rhs.t11 + self.t12 * rhs.t21,
            self.t11 * rhs.t12 + self.t12 * rhs.t22,
            self.t21 * rhs.t11 + self.t22 * rhs.t21,
            self.t21 * rhs.t12 + self.t22 * rhs.t22,
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.t11 * s, self.t12 * s, self.t21 * s, self.t22 * s)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.t11 - other.t11)
            .abs()
            .max((self.t12 - other.t12).abs())
            .max((self.t21 - other.t21).abs())
            .max((self.t22 - other.t22).abs())
    }

    pub fn entries(&self) -> [T; 4] {
        [self.t11, self.t12, self.t21, self.t22]
    }
}

impl<T: Scalar> Neg for Operator2x2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Add for Operator2x2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.t11 + rhs.t11, self.t12 + rhs.t12, self.t21 + rhs.t21, self.t22 + rhs.t22)
    }
}

impl<T: Scalar> Mul<Vec2<T>> for Operator2x2<T> {
    type Output = Vec2<T>;
    fn mul(self, v: Vec2<T>) -> Vec2<T> {
        self.apply(v)
    }
}

impl<T: Scalar> fmt::Display for Operator2x2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.t11, self.t12, self.t21, self.t22)
    }
}

/// The four onto isometries shared by every absolute symmetric norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Isometry {
    /// `I₁`, the identity.
    Identity,
    /// `I₂ = diag(1, -1)`.
    Reflection,
    /// `I₃`, the coordinate swap.
    Swap,
    /// `I₄ = [[0, 1], [-1, 0]]`.
    Rotation,
}

impl Isometry {
    pub const ALL: [Isometry; 4] = [Isometry::Identity, Isometry::Reflection, Isometry::Swap, Isometry::Rotation];

    /// `I_j` for `j ∈ 1..=4`.
    pub fn from_index(j: usize) -> Result<Self> {
        match j {
            1..=4 => Ok(Self::ALL[j - 1]),
            _ => Err(Error::InvalidIsometry(j)),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Isometry::Identity => 1,
            Isometry::Reflection => 2,
            Isometry::Swap => 3,
            Isometry::Rotation => 4,
        }
    }

    pub fn matrix<T: Scalar>(self) -> Operator2x2<T> {
        let (o, z) = (T::one(), T::zero());
        match self {
            Isometry::Identity => Operator2x2::new(o, z, z, o),
            Isometry::Reflection => Operator2x2::new(o, z, z, -o),
            Isometry::Swap => Operator2x2::new(z, o, o, z),
            Isometry::Rotation => Operator2x2::new(z, o, -o, z),
        }
    }

    pub fn inverse_matrix<T: Scalar>(self) -> Operator2x2<T> {
        match self {
            Isometry::Rotation => -self.matrix::<T>(),
            _ => self.matrix(),
        }
    }
}

/// Coefficients of an operator in the basis `I₁, I₂, I₃, I₄`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IsometryCoefficients<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
}

impl<T: Scalar> IsometryCoefficients<T> {
    pub const fn new(a1: T, a2: T, a3: T, a4: T) -> Self {
        Self { a1, a2, a3, a4 }
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }

    pub fn from_array([a1, a2, a3, a4]: [T; 4]) -> Self {
        Self::new(a1, a2, a3, a4)
    }

    /// `‖T‖₊ = Σ|A_k|`, an upper bound for the operator norm in every
    /// absolute symmetric norm.
    pub fn plus_norm(&self) -> T {
        self.a1.abs() + self.a2.abs() + self.a3.abs() + self.a4.abs()
    }
}

pub fn to_isometry_coords<T: Scalar>(op: &Operator2x2<T>) -> IsometryCoefficients<T> {
    let half = T::lit(0.5);
    IsometryCoefficients {
        a1: (op.t11 + op.t22) * half,
        a2: (op.t11 - op.t22) * half,
        a3: (op.t12 + op.t21) * half,
        a4: (op.t12 - op.t21) * half,
    }
}

pub fn from_isometry_coords<T: Scalar>(c: &IsometryCoefficients<T>) -> Operator2x2<T> {
    Operator2x2::new(c.a1 + c.a2, c.a3 + c.a4, c.a3 - c.a4, c.a1 - c.a2)
}

/// `sign · I_j⁻¹ · T · I_j`.
pub fn conjugate_by_isometry<T: Scalar>(op: &Operator2x2<T>, j: usize, sign: T) -> Result<Operator2x2<T>> {
    let iso = Isometry::from_index(j)?;
    if sign.abs() != T::one() {
        return Err(Error::InvalidInput(format!("sign must be ±1, got {sign}")));
    }
    Ok(iso.inverse_matrix().compose(op).compose(&iso.matrix()).scale(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(t11: f64, t12: f64, t21: f64, t22: f64) -> Operator2x2<f64> {
        Operator2x2::new(t11, t12, t21, t22)
    }

    #[test]
    fn to_isometry_coords_examples() {
        assert_eq!(to_isometry_coords(&Operator2x2::<f64>::identity()), IsometryCoefficients::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(to_isometry_coords(&op(0.0, 1.0, -1.0, 0.0)), IsometryCoefficients::new(0.0, 0.0, 0.0, 1.0));
        let c = to_isometry_coords(&op(1.0, 2.0, 3.0, 4.0));
        assert_eq!(c, IsometryCoefficients::new(2.5, -1.5, 2.5, -0.5));
        // reconstruction by summing the basis matrices
        let sum = Isometry::ALL
            .iter()
            .zip(c.as_array())
            .fold(Operator2x2::default(), |acc, (iso, a)| acc + iso.matrix().scale(a));
        assert_eq!(sum, op(1.0, 2.0, 3.0, 4.0));
    }

    #[test]
    fn from_isometry_coords_examples() {
        assert_eq!(from_isometry_coords(&IsometryCoefficients::new(1.0, 0.0, 0.0, 0.0)), Operator2x2::identity());
        assert_eq!(from_isometry_coords(&IsometryCoefficients::new(0.0, 0.0, 0.0, 1.0)), op(0.0, 1.0, -1.0, 0.0));
    }

    #[test]
    fn conjugation_examples() {
        let i4 = Isometry::Rotation.matrix::<f64>();
        let c = conjugate_by_isometry(&i4, 2, 1.0).unwrap();
        assert_eq!(to_isometry_coords(&c), IsometryCoefficients::new(0.0, 0.0, 0.0, -1.0));
        for j in 1..=4 {
            assert_eq!(conjugate_by_isometry(&Operator2x2::identity(), j, 1.0).unwrap(), Operator2x2::identity());
        }
        assert_eq!(conjugate_by_isometry(&i4, 0, 1.0), Err(Error::InvalidIsometry(0)));
        assert_eq!(conjugate_by_isometry(&i4, 5, 1.0), Err(Error::InvalidIsometry(5)));
        assert!(conjugate_by_isometry(&i4, 1, 0.5).is_err());
    }

    #[test]
    fn parse_operator_literal() {
        assert_eq!(Operator2x2::<f64>::parse("0,1,-1,0").unwrap(), op(0.0, 1.0, -1.0, 0.0));
        assert_eq!(Operator2x2::<f64>::parse(" 1.5 , 2e-1,3,4 ").unwrap(), op(1.5, 0.2, 3.0, 4.0));
        assert!(Operator2x2::<f64>::parse("1,2,3").is_err());
        assert!(Operator2x2::<f64>::parse("1,2,x,4").is_err());
        assert!(Operator2x2::<f64>::parse("1,2,inf,4").is_err());
    }

    proptest! {
        #[test]
        fn coordinate_round_trip(t in prop::array::uniform4(-100.0f64..100.0)) {
            let o = op(t[0], t[1], t[2], t[3]);
            let back = from_isometry_coords(&to_isometry_coords(&o));
            prop_assert!(back.max_abs_diff(&o) <= 1e-14 * (1.0 + t.iter().fold(0.0f64, |m, x| m.max(x.abs()))));
            let c = IsometryCoefficients::from_array(t);
            let again = to_isometry_coords(&from_isometry_coords(&c));
            for (a, b) in again.as_array().iter().zip(t) {
                prop_assert!((a - b).abs() <= 1e-13);
            }
        }

        #[test]
        fn conjugation_flips_the_expected_coefficients(t in prop::array::uniform4(-10.0f64..10.0)) {
            // sign patterns of I_j⁻¹ T I_j in the isometry basis
            let patterns = [[1.0, 1.0, 1.0, 1.0], [1.0, 1.0, -1.0, -1.0], [1.0, -1.0, 1.0, -1.0], [1.0, -1.0, -1.0, 1.0]];
            let c = IsometryCoefficients::from_array(t);
            let o = from_isometry_coords(&c);
            for (j, pattern) in patterns.iter().enumerate() {
                for sign in [1.0, -1.0] {
                    let conj = to_isometry_coords(&conjugate_by_isometry(&o, j + 1, sign).unwrap());
                    for k in 0..4 {
                        prop_assert!((conj.as_array()[k] - sign * pattern[k] * t[k]).abs() < 1e-12);
                    }
                }
            }
        }
    }
}
