//! Absolute symmetric norms on the real plane, their duals, unit spheres and
//! duality mappings.

mod polygon;
mod validate;
mod vec2;

use serde::{Deserialize, Serialize};

pub use polygon::{PolygonNorm, VERTEX_ANGLE_TOL, VERTEX_MERGE_TOL};
pub use validate::{validate, Property, ValidationReport, Violation};
pub use vec2::Vec2;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tolerance on `x*(x) = 1` and `‖x‖ = 1` for duality pairs.
pub const TAU_PAIR: f64 = 1e-10;
/// Tolerance on `‖x*‖* = 1`.
pub const TAU_DUAL: f64 = 1e-10;

/// The ℓ_p norm `(|x|^p + |y|^p)^{1/p}` with `1 < p < ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpNorm<T> {
    p: T,
    q: T,
}

impl<T: Scalar> LpNorm<T> {
    pub fn new(p: T) -> Result<Self> {
        if !p.is_finite() || p <= T::one() {
            return Err(Error::InvalidDescriptor(format!("ℓ_p exponent must satisfy 1 < p < ∞, got {p}")));
        }
        Ok(Self { p, q: p / (p - T::one()) })
    }

    pub fn p(&self) -> T {
        self.p
    }

    /// Conjugate exponent `p / (p - 1)`.
    pub fn q(&self) -> T {
        self.q
    }

    pub fn norm(&self, v: Vec2<T>) -> T {
        pnorm(v, self.p)
    }

    pub fn dual_norm(&self, f: Vec2<T>) -> T {
        pnorm(f, self.q)
    }

    /// The unique supporting functional `sign(x_i)|x_i|^{p-1}` at a unit vector.
    pub fn support(&self, x: Vec2<T>) -> Vec2<T> {
        let e = self.p - T::one();
        let comp = |a: T| {
            if a == T::zero() {
                T::zero()
            } else {
                a.signum() * a.abs().powf(e)
            }
        };
        Vec2::new(comp(x.x), comp(x.y))
    }
}

/// Overflow-safe `(|x|^p + |y|^p)^{1/p}`.
fn pnorm<T: Scalar>(v: Vec2<T>, p: T) -> T {
    let (a, b) = (v.x.abs(), v.y.abs());
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == T::zero() {
        return T::zero();
    }
    hi * (T::one() + (lo / hi).powf(p)).powf(p.recip())
}

/// An absolute symmetric norm on the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum NormDescriptor<T> {
    Lp(LpNorm<T>),
    Polyhedral(PolygonNorm<T>),
}

impl<T: Scalar> NormDescriptor<T> {
    pub fn lp(p: T) -> Result<Self> {
        LpNorm::new(p).map(Self::Lp)
    }

    pub fn polyhedral(first_quadrant_vertices: Vec<Vec2<T>>) -> Result<Self> {
        PolygonNorm::new(first_quadrant_vertices).map(Self::Polyhedral)
    }

    /// Normalized symmetric convex hull of an arbitrary point cloud.
    pub fn polyhedral_hull(points: &[Vec2<T>]) -> Result<Self> {
        PolygonNorm::from_hull(points).map(Self::Polyhedral)
    }

    /// `|a| + |b|`.
    pub fn l1() -> Self {
        Self::polyhedral(vec![Vec2::new(T::one(), T::zero())]).expect("ℓ1 ball")
    }

    /// `max(|a|, |b|)`.
    pub fn linf() -> Self {
        Self::polyhedral(vec![Vec2::new(T::one(), T::zero()), Vec2::new(T::one(), T::one())]).expect("ℓ∞ ball")
    }

    /// Regular octagon inscribed in the Euclidean unit circle: first-quadrant
    /// vertices `(1, 0)` and `(s, s)` with `s = 1/√2`.
    pub fn regular_octagon() -> Self {
        let s = T::FRAC_1_SQRT_2();
        Self::polyhedral(vec![Vec2::new(T::one(), T::zero()), Vec2::new(s, s)]).expect("octagon")
    }

    /// `‖v‖` without input checks.
    #[inline]
    pub fn norm(&self, v: Vec2<T>) -> T {
        match self {
            Self::Lp(n) => n.norm(v),
            Self::Polyhedral(n) => n.gauge(v),
        }
    }

    /// `‖f‖* = sup { f(x) : ‖x‖ ≤ 1 }` without input checks.
    #[inline]
    pub fn dual_norm(&self, f: Vec2<T>) -> T {
        match self {
            Self::Lp(n) => n.dual_norm(f),
            Self::Polyhedral(n) => n.dual_gauge(f),
        }
    }

    pub fn evaluate(&self, v: Vec2<T>) -> Result<T> {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite vector {v:?}")));
        }
        Ok(self.norm(v))
    }

    pub fn dual_evaluate(&self, f: Vec2<T>) -> Result<T> {
        if !f.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite functional {f:?}")));
        }
        Ok(self.dual_norm(f))
    }

    /// The unit vector in direction `theta`.
    #[inline]
    pub fn sphere_point(&self, theta: T) -> Vec2<T> {
        let d = Vec2::from_angle(theta);
        d.scale(self.norm(d).recip())
    }

    /// Extreme supporting functionals at `x`; `x` must lie on the unit sphere.
    pub fn supporting_functionals(&self, x: Vec2<T>) -> Result<SupportSet<T>> {
        if !x.is_finite() || x.is_zero() {
            return Err(Error::InvalidInput(format!("cannot support at {x:?}")));
        }
        let n = self.norm(x);
        if (n - T::one()).abs() > T::tol(TAU_PAIR) {
            return Err(Error::Precondition(format!("point {x:?} has norm {n}, not 1")));
        }
        Ok(self.support_unchecked(x))
    }

    /// Supporting functionals at a unit vector, skipping the sphere check.
    #[inline]
    pub fn support_unchecked(&self, x: Vec2<T>) -> SupportSet<T> {
        match self {
            Self::Lp(n) => SupportSet::smooth(x, n.support(x)),
            Self::Polyhedral(n) => match n.support(x) {
                (f, None) => SupportSet::smooth(x, f),
                (f, Some(g)) => SupportSet::corner(x, f, g),
            },
        }
    }

    /// Whether this is a polygonal ball (all extremal quantities are finite maxima).
    pub fn is_polyhedral(&self) -> bool {
        matches!(self, Self::Polyhedral(_))
    }
}

/// A point of the unit sphere together with the extreme points of its face
/// of supporting functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportSet<T> {
    pub point: Vec2<T>,
    functionals: [Vec2<T>; 2],
    count: usize,
}

impl<T: Scalar> SupportSet<T> {
    fn smooth(point: Vec2<T>, f: Vec2<T>) -> Self {
        Self { point, functionals: [f, f], count: 1 }
    }

    fn corner(point: Vec2<T>, f: Vec2<T>, g: Vec2<T>) -> Self {
        Self { point, functionals: [f, g], count: 2 }
    }

    /// One functional at a smooth point, two at a corner.
    pub fn functionals(&self) -> &[Vec2<T>] {
        &self.functionals[..self.count]
    }

    pub fn is_smooth(&self) -> bool {
        self.count == 1
    }
}

/// A normalized pair `(x, x*)` with `‖x‖ = ‖x*‖* = x*(x) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityPair<T> {
    pub x: Vec2<T>,
    pub xstar: Vec2<T>,
}

impl<T: Scalar> DualityPair<T> {
    pub fn new(x: Vec2<T>, xstar: Vec2<T>) -> Self {
        Self { x, xstar }
    }

    /// `x*(x)`.
    pub fn pairing(&self) -> T {
        self.xstar.dot(self.x)
    }

    /// Checks the three normalizations against `norm` within `τ_pair`.
    pub fn check(&self, norm: &NormDescriptor<T>) -> Result<()> {
        let tol = T::tol(TAU_PAIR);
        let nx = norm.norm(self.x);
        let nf = norm.dual_norm(self.xstar);
        let pairing = self.pairing();
        if (nx - T::one()).abs() > tol {
            return Err(Error::Precondition(format!("‖x‖ = {nx}")));
        }
        if (nf - T::one()).abs() > T::tol(TAU_DUAL) {
            return Err(Error::Precondition(format!("‖x*‖* = {nf}")));
        }
        if (pairing - T::one()).abs() > tol {
            return Err(Error::Precondition(format!("x*(x) = {pairing}")));
        }
        Ok(())
    }
}

/// The ℓ_p duality pair `x_t = (1, t) / (1 + t^p)^{1/p}`,
/// `x*_t = (1, t^{p-1}) / (1 + t^p)^{(p-1)/p}` for `t ∈ [0, 1]`.
pub fn lp_duality_pair<T: Scalar>(p: T, t: T) -> Result<DualityPair<T>> {
    if !p.is_finite() || p <= T::one() {
        return Err(Error::InvalidInput(format!("p = {p} is not in (1, ∞)")));
    }
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::InvalidInput(format!("t = {t} is not in [0, 1]")));
    }
    Ok(lp_pair_unchecked(p, t))
}

#[inline]
pub(crate) fn lp_pair_unchecked<T: Scalar>(p: T, t: T) -> DualityPair<T> {
    let one = T::one();
    let base = one + t.powf(p);
    let x = Vec2::new(one, t).scale(base.powf(-p.recip()));
    let xstar = Vec2::new(one, t.powf(p - one)).scale(base.powf(-(p - one) / p));
    DualityPair { x, xstar }
}

/// Norm-spec document, e.g. `{"family":"lp","p":1.5}` or
/// `{"family":"polyhedral","firstQuadrantVertices":[[1.0,0.0],[0.9,0.6]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum NormSpec {
    #[serde(rename = "lp")]
    Lp { p: f64 },
    #[serde(rename = "polyhedral")]
    Polyhedral {
        #[serde(rename = "firstQuadrantVertices")]
        first_quadrant_vertices: Vec<[f64; 2]>,
    },
}

impl NormSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed norm spec: {e}")))
    }

    pub fn to_descriptor<T: Scalar>(&self) -> Result<NormDescriptor<T>> {
        match self {
            NormSpec::Lp { p } => NormDescriptor::lp(T::lit(*p)),
            NormSpec::Polyhedral { first_quadrant_vertices } => NormDescriptor::polyhedral(
                first_quadrant_vertices.iter().map(|&[x, y]| Vec2::new(T::lit(x), T::lit(y))).collect(),
            ),
        }
    }
}

impl<T: Scalar> From<&NormDescriptor<T>> for NormSpec {
    fn from(norm: &NormDescriptor<T>) -> Self {
        match norm {
            NormDescriptor::Lp(n) => NormSpec::Lp { p: n.p().to_f64_lossy() },
            NormDescriptor::Polyhedral(n) => NormSpec::Polyhedral {
                first_quadrant_vertices: n
                    .first_quadrant_vertices()
                    .iter()
                    .map(|v| [v.x.to_f64_lossy(), v.y.to_f64_lossy()])
                    .collect(),
            },
        }
    }
}
