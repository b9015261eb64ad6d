//! Polyhedral absolute symmetric norms: the unit ball is a centrally
//! symmetric polygon invariant under coordinate swap and sign changes.

use crate::error::{Error, Result};
use crate::norm::{Property, Vec2};
use crate::scalar::Scalar;

/// Coordinate tolerance used when merging generated vertices.
pub const VERTEX_MERGE_TOL: f64 = 1e-12;
/// Angular distance below which a sphere point is treated as a vertex.
pub const VERTEX_ANGLE_TOL: f64 = 1e-9;

/// A polygonal unit ball given by its first-quadrant vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonNorm<T> {
    first_quadrant: Vec<Vec2<T>>,
    vertices: Vec<Vec2<T>>,
    angles: Vec<T>,
    /// `edges[i]` is the functional equal to 1 on the edge `vertices[i] → vertices[i + 1]`.
    edges: Vec<Vec2<T>>,
}

impl<T: Scalar> PolygonNorm<T> {
    /// Builds the ball whose vertex set is the closure of `first_quadrant`
    /// under sign changes and coordinate swap.
    ///
    /// Fails when a vertex is non-finite, outside the closed first quadrant,
    /// at the origin, or when the closure is not the vertex set of a convex
    /// body with the origin in its interior.
    pub fn new(first_quadrant: Vec<Vec2<T>>) -> Result<Self> {
        if first_quadrant.is_empty() {
            return Err(Error::InvalidDescriptor("polyhedral norm needs at least one vertex".into()));
        }
        for v in &first_quadrant {
            if !v.is_finite() {
                return Err(Error::InvalidDescriptor(format!("non-finite vertex {v:?}")));
            }
            if v.x < T::zero() || v.y < T::zero() {
                return Err(Error::InvalidDescriptor(format!("vertex {v:?} is outside the first quadrant")));
            }
            if v.is_zero() {
                return Err(Error::InvalidDescriptor("vertex at the origin".into()));
            }
        }
        let vertices = symmetric_closure(&first_quadrant)?;
        let angles = vertices.iter().map(|v| v.angle()).collect();
        let n = vertices.len();
        let edges = (0..n).map(|i| edge_functional(vertices[i], vertices[(i + 1) % n])).collect();
        Ok(Self { first_quadrant, vertices, angles, edges })
    }

    /// Symmetric closure of `points`, convexified, then rescaled so that
    /// `(1, 0)` lies on the unit sphere.
    ///
    /// Convenient for generating norms from arbitrary point clouds; the
    /// result always satisfies the structural checks of [`PolygonNorm::new`].
    pub fn from_hull(points: &[Vec2<T>]) -> Result<Self> {
        let mut cloud = Vec::with_capacity(points.len() * 8);
        for p in points {
            if !p.is_finite() {
                return Err(Error::InvalidDescriptor(format!("non-finite point {p:?}")));
            }
            cloud.extend(orbit(p.abs()));
        }
        let hull = convex_hull(cloud);
        let quadrant: Vec<Vec2<T>> =
            hull.into_iter().filter(|v| v.x >= T::zero() && v.y >= T::zero() && !v.is_zero()).collect();
        let raw = Self::new(quadrant)?;
        let scale = raw.gauge(Vec2::new(T::one(), T::zero()));
        Self::new(raw.first_quadrant.iter().map(|v| v.scale(scale)).collect())
    }

    /// Vertices as supplied by the caller.
    pub fn first_quadrant_vertices(&self) -> &[Vec2<T>] {
        &self.first_quadrant
    }

    /// All vertices of the unit ball in counterclockwise order starting
    /// from the smallest polar angle.
    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    /// Edge functionals; `edge_functionals()[i]` supports the edge leaving `vertices()[i]`.
    pub fn edge_functionals(&self) -> &[Vec2<T>] {
        &self.edges
    }

    /// Minkowski gauge as the maximum over edge functionals.
    pub fn gauge(&self, v: Vec2<T>) -> T {
        self.edges.iter().map(|f| f.dot(v)).fold(T::zero(), T::max)
    }

    /// Minkowski gauge by intersecting the ray through `v` with the boundary.
    pub fn gauge_by_ray(&self, v: Vec2<T>) -> T {
        if v.is_zero() {
            return T::zero();
        }
        let i = self.sector(v.angle());
        let u = self.vertices[i];
        let w = self.vertices[(i + 1) % self.vertices.len()];
        v.cross(w - u) / u.cross(w)
    }

    /// Dual gauge `sup { f(x) : x in ball }`, attained at a vertex.
    pub fn dual_gauge(&self, f: Vec2<T>) -> T {
        self.vertices.iter().map(|v| f.dot(*v).abs()).fold(T::zero(), T::max)
    }

    /// Index `i` of the edge `vertices[i] → vertices[i + 1]` whose angular
    /// sector contains `angle`.
    fn sector(&self, angle: T) -> usize {
        let n = self.angles.len();
        // angles are sorted; the sector before angles[0] wraps to the last edge
        match self.angles.iter().rposition(|&a| a <= angle) {
            Some(i) => i,
            None => n - 1,
        }
    }

    /// Extreme supporting functionals at a boundary point: one for an
    /// edge-interior point, the two adjacent edge functionals at a vertex.
    pub(crate) fn support(&self, x: Vec2<T>) -> (Vec2<T>, Option<Vec2<T>>) {
        let angle = x.angle();
        let n = self.vertices.len();
        let tol = T::tol(VERTEX_ANGLE_TOL);
        let i = self.sector(angle);
        let j = (i + 1) % n;
        let dist = |a: T, b: T| {
            let d = (a - b).abs();
            d.min(T::TAU() - d)
        };
        if dist(angle, self.angles[i]) <= tol {
            (self.edges[(i + n - 1) % n], Some(self.edges[i]))
        } else if dist(angle, self.angles[j]) <= tol {
            (self.edges[i], Some(self.edges[j]))
        } else {
            (self.edges[i], None)
        }
    }
}

/// The eight images of `v` under sign changes and coordinate swap.
fn orbit<T: Scalar>(v: Vec2<T>) -> [Vec2<T>; 8] {
    let (a, b) = (v.x, v.y);
    [
        Vec2::new(a, b),
        Vec2::new(-a, b),
        Vec2::new(a, -b),
        Vec2::new(-a, -b),
        Vec2::new(b, a),
        Vec2::new(-b, a),
        Vec2::new(b, -a),
        Vec2::new(-b, -a),
    ]
}

/// Functional `f` with `f(u) = f(w) = 1`.
fn edge_functional<T: Scalar>(u: Vec2<T>, w: Vec2<T>) -> Vec2<T> {
    Vec2::new(w.y - u.y, u.x - w.x).scale(u.cross(w).recip())
}

fn symmetric_closure<T: Scalar>(quadrant: &[Vec2<T>]) -> Result<Vec<Vec2<T>>> {
    let merge = T::tol(VERTEX_MERGE_TOL);
    let mut points: Vec<Vec2<T>> = Vec::new();
    for v in quadrant {
        for w in orbit(*v) {
            if points.iter().all(|p| p.max_abs_diff(w) > merge) {
                points.push(w);
            }
        }
    }
    points.sort_by(|a, b| a.angle().partial_cmp(&b.angle()).unwrap_or(std::cmp::Ordering::Equal));

    let scale = points.iter().map(|p| p.x.abs().max(p.y.abs())).fold(T::zero(), T::max);
    let cross_tol = T::tol(VERTEX_MERGE_TOL) * scale * scale;
    let not_convex = || {
        Error::InvalidDescriptor(format!("{}: vertex set is not the vertex set of a convex body", Property::Convexity))
    };

    for w in points.windows(2) {
        if (w[1].angle() - w[0].angle()).abs() <= T::tol(VERTEX_MERGE_TOL) {
            return Err(not_convex());
        }
    }

    // drop collinear vertices until every turn is strictly left
    loop {
        let n = points.len();
        if n < 3 {
            return Err(Error::InvalidDescriptor("unit ball has empty interior".into()));
        }
        let mut removed = false;
        for i in 0..n {
            let prev = points[(i + n - 1) % n];
            let cur = points[i];
            let next = points[(i + 1) % n];
            let turn = (cur - prev).cross(next - cur);
            if turn < -cross_tol {
                return Err(not_convex());
            }
            if turn <= cross_tol {
                points.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }

    let n = points.len();
    for i in 0..n {
        if points[i].cross(points[(i + 1) % n]) <= cross_tol {
            return Err(Error::InvalidDescriptor("origin is not interior to the unit ball".into()));
        }
    }
    Ok(points)
}

/// Andrew's monotone chain; returns strictly convex hull vertices, CCW.
fn convex_hull<T: Scalar>(mut pts: Vec<Vec2<T>>) -> Vec<Vec2<T>> {
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.y.partial_cmp(&b.y).unwrap_or(std::cmp::Ordering::Equal))
    });
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2<T>> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec2<T>>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - b) <= T::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec2<f64> {
        Vec2::new(x, y)
    }

    #[test]
    fn l1_closure_is_a_diamond() {
        let ball = PolygonNorm::new(vec![v(1.0, 0.0)]).unwrap();
        assert_eq!(ball.vertices().len(), 4);
        assert_eq!(ball.gauge(v(1.0, 1.0)), 2.0);
        assert_eq!(ball.dual_gauge(v(2.0, -3.0)), 3.0);
    }

    #[test]
    fn linf_drops_collinear_axis_points() {
        let ball = PolygonNorm::new(vec![v(1.0, 0.0), v(1.0, 1.0)]).unwrap();
        assert_eq!(ball.vertices().len(), 4);
        assert_eq!(ball.gauge(v(0.3, -0.7)), 0.7);
    }

    #[test]
    fn interior_point_is_rejected() {
        let err = PolygonNorm::new(vec![v(1.0, 0.0), v(0.3, 0.3)]).unwrap_err();
        assert!(matches!(err, Error::InvalidDescriptor(_)));
    }

    #[test]
    fn reflex_vertex_is_rejected() {
        // closure contains (1,0.2), (0.2,1) and the dented diagonal (0.55,0.55)
        let err = PolygonNorm::new(vec![v(1.0, 0.2), v(0.55, 0.55)]).unwrap_err();
        assert!(matches!(err, Error::InvalidDescriptor(_)));
    }

    #[test]
    fn invalid_vertices_are_rejected() {
        assert!(PolygonNorm::new(Vec::<Vec2<f64>>::new()).is_err());
        assert!(PolygonNorm::new(vec![v(-1.0, 0.0)]).is_err());
        assert!(PolygonNorm::new(vec![v(0.0, 0.0)]).is_err());
        assert!(PolygonNorm::new(vec![v(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn vertices_are_counterclockwise_and_unique() {
        let ball = PolygonNorm::new(vec![v(1.0, 0.0), v(0.7, 0.7), v(1.0, 0.0)]).unwrap();
        let vs = ball.vertices();
        assert_eq!(vs.len(), 8);
        for i in 0..vs.len() {
            assert!(vs[i].cross(vs[(i + 1) % vs.len()]) > 0.0);
        }
    }

    #[test]
    fn edge_functionals_are_one_on_their_edges() {
        let ball = PolygonNorm::new(vec![v(1.0, 0.0), v(0.9, 0.6)]).unwrap();
        let n = ball.vertices().len();
        for (i, f) in ball.edge_functionals().iter().enumerate() {
            assert!((f.dot(ball.vertices()[i]) - 1.0).abs() < 1e-14);
            assert!((f.dot(ball.vertices()[(i + 1) % n]) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ray_gauge_matches_edge_gauge() {
        let ball = PolygonNorm::new(vec![v(1.0, 0.0), v(0.9, 0.6), v(0.75, 0.75)]).unwrap();
        for k in 0..997 {
            let p = Vec2::from_angle(k as f64 * 0.0063).scale(0.1 + k as f64 * 0.01);
            assert!((ball.gauge(p) - ball.gauge_by_ray(p)).abs() < 1e-12);
        }
    }

    #[test]
    fn hull_constructor_normalizes() {
        let ball = PolygonNorm::from_hull(&[v(2.0, 0.1), v(1.5, 1.2), v(0.3, 0.2)]).unwrap();
        assert!((ball.gauge(v(1.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!((ball.gauge(v(0.0, 1.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_classifies_vertices_and_edges() {
        let ball = PolygonNorm::new(vec![v(1.0, 0.0)]).unwrap();
        let (f, g) = ball.support(v(1.0, 0.0));
        let g = g.expect("vertex has two functionals");
        let mut got = [f, g];
        got.sort_by(|a, b| a.y.partial_cmp(&b.y).unwrap());
        assert_eq!(got, [v(1.0, -1.0), v(1.0, 1.0)]);
        let (f, g) = ball.support(v(0.5, 0.5));
        assert_eq!(f, v(1.0, 1.0));
        assert!(g.is_none());
    }
}
