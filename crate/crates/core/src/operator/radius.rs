//! Operator norm, numerical range samples and numerical radius.
//!
//! Smooth norms are handled by scanning the unit sphere on an angular grid
//! and refining the best cells with golden-section. Polygonal norms are exact:
//! `x ↦ ‖Tx‖` is convex and `x ↦ f(Tx)` is affine on each edge, so both
//! maxima are attained at vertices.

use crate::norm::{NormDescriptor, PolygonNorm, SupportSet};
use crate::operator::Operator2x2;
use crate::scalar::Scalar;
use crate::search::{UniformGrid, GOLDEN_ITERATIONS, REFINED_PEAKS};

/// Angular grid size used for smooth norms.
pub const DEFAULT_CIRCLE_GRID: usize = 4096;

/// Sphere points and their supporting functionals on a uniform angular grid,
/// precomputed once per norm so that many operators can be scanned cheaply.
#[derive(Debug, Clone)]
pub struct SphereTable<T> {
    norm: NormDescriptor<T>,
    grid: UniformGrid<T>,
    samples: Vec<SupportSet<T>>,
}

impl<T: Scalar> SphereTable<T> {
    pub fn new(norm: &NormDescriptor<T>, len: usize) -> Self {
        let grid = UniformGrid::circle(len);
        let samples = (0..len).map(|k| norm.support_unchecked(norm.sphere_point(grid.node(k)))).collect();
        Self { norm: norm.clone(), grid, samples }
    }

    pub fn norm(&self) -> &NormDescriptor<T> {
        &self.norm
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[SupportSet<T>] {
        &self.samples
    }

    /// Grid maximum of `|f(Tx)|`, without refinement.
    pub fn coarse_radius(&self, op: &Operator2x2<T>) -> T {
        self.samples.iter().map(|s| range_abs_max(s, op)).fold(T::zero(), T::max)
    }

    /// Grid maximum of `‖Tx‖`, without refinement.
    pub fn coarse_norm(&self, op: &Operator2x2<T>) -> T {
        self.samples.iter().map(|s| self.norm.norm(op.apply(s.point))).fold(T::zero(), T::max)
    }

    /// Numerical radius: grid scan refined around the best cells.
    pub fn radius(&self, op: &Operator2x2<T>) -> T {
        let values: Vec<T> = self.samples.iter().map(|s| range_abs_max(s, op)).collect();
        let f = |theta: T| range_abs_max(&self.norm.support_unchecked(self.norm.sphere_point(theta)), op);
        self.grid.refine(&values, f, REFINED_PEAKS, GOLDEN_ITERATIONS).value
    }

    /// Operator norm: grid scan refined around the best cells.
    pub fn operator_norm(&self, op: &Operator2x2<T>) -> T {
        let values: Vec<T> = self.samples.iter().map(|s| self.norm.norm(op.apply(s.point))).collect();
        let f = |theta: T| self.norm.norm(op.apply(self.norm.sphere_point(theta)));
        self.grid.refine(&values, f, REFINED_PEAKS, GOLDEN_ITERATIONS).value
    }
}

#[inline]
fn range_abs_max<T: Scalar>(s: &SupportSet<T>, op: &Operator2x2<T>) -> T {
    let tx = op.apply(s.point);
    s.functionals().iter().map(|f| f.dot(tx).abs()).fold(T::zero(), T::max)
}

/// `{ f(Tx) : f extreme supporting functional at x }` for `x = sphere_point(θ)`.
pub fn numerical_range_values<T: Scalar>(norm: &NormDescriptor<T>, op: &Operator2x2<T>, theta: T) -> Vec<T> {
    let support = norm.support_unchecked(norm.sphere_point(theta));
    let tx = op.apply(support.point);
    support.functionals().iter().map(|f| f.dot(tx)).collect()
}

/// `‖T‖`.
pub fn operator_norm<T: Scalar>(norm: &NormDescriptor<T>, op: &Operator2x2<T>) -> T {
    match norm {
        NormDescriptor::Polyhedral(ball) => polygon_operator_norm(ball, op),
        NormDescriptor::Lp(_) => SphereTable::new(norm, DEFAULT_CIRCLE_GRID).operator_norm(op),
    }
}

/// `v(T) = sup { |x*(Tx)| : (x, x*) duality pair }`.
pub fn numerical_radius<T: Scalar>(norm: &NormDescriptor<T>, op: &Operator2x2<T>) -> T {
    match norm {
        NormDescriptor::Polyhedral(ball) => polygon_radius(ball, op),
        NormDescriptor::Lp(_) => numerical_radius_sampled(norm, op, DEFAULT_CIRCLE_GRID),
    }
}

/// Numerical radius by the angular scan, whatever the norm family.
pub fn numerical_radius_sampled<T: Scalar>(norm: &NormDescriptor<T>, op: &Operator2x2<T>, grid: usize) -> T {
    SphereTable::new(norm, grid).radius(op)
}

pub(crate) fn polygon_operator_norm<T: Scalar>(ball: &PolygonNorm<T>, op: &Operator2x2<T>) -> T {
    ball.vertices().iter().map(|v| ball.gauge(op.apply(*v))).fold(T::zero(), T::max)
}

pub(crate) fn polygon_radius<T: Scalar>(ball: &PolygonNorm<T>, op: &Operator2x2<T>) -> T {
    let vs = ball.vertices();
    let fs = ball.edge_functionals();
    let n = vs.len();
    (0..n)
        .map(|i| {
            let tx = op.apply(vs[i]);
            fs[(i + n - 1) % n].dot(tx).abs().max(fs[i].dot(tx).abs())
        })
        .fold(T::zero(), T::max)
}
