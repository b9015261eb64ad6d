//! Direct estimate of `n(X) = inf v(T)/‖T‖` by searching the operator space.
//!
//! Operators are written `T = Σ A_k I_k` with `Σ|A_k| = 1`. The ratio is
//! unchanged by `T ↦ −T` and by conjugation with each `I_j`, which flips the
//! signs of two of `A₂, A₃, A₄`, so it suffices to scan `A₁, A₂, A₃ ≥ 0`.
//! That piece of the sphere is covered by hyperspherical angles
//! `φ₁, φ₂ ∈ [0, π/2]`, `φ₃ ∈ [−π/2, π/2]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::{validate, NormDescriptor, PolygonNorm};
use crate::operator::{
    from_isometry_coords, polygon_operator_norm, polygon_radius, IsometryCoefficients, Operator2x2, SphereTable,
    DEFAULT_CIRCLE_GRID,
};
use crate::scalar::Scalar;

pub const DEFAULT_RESOLUTION: usize = 64;
pub const MIN_RESOLUTION: usize = 8;
/// Pattern-search rounds; the step halves after every round without progress.
pub const PATTERN_ROUNDS: usize = 40;
/// Coarse grid minima handed to the pattern search.
pub const PATTERN_STARTS: usize = 3;
/// Angular samples used while scanning the coarse grid of a smooth norm.
pub const COARSE_CIRCLE_GRID: usize = 128;

/// Best operator found by [`brute_force_index`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexEstimate<T> {
    /// `v(T)/‖T‖` at `argmin`, never above 1.
    pub value: T,
    pub argmin: Operator2x2<T>,
    pub grid_resolution: usize,
    /// Whether pattern search improved on the best grid point.
    pub refined: bool,
}

enum Ratio<T> {
    Exact(PolygonNorm<T>),
    Sampled { coarse: SphereTable<T>, fine: SphereTable<T> },
}

impl<T: Scalar> Ratio<T> {
    fn new(norm: &NormDescriptor<T>) -> Self {
        match norm {
            NormDescriptor::Polyhedral(ball) => Ratio::Exact(ball.clone()),
            NormDescriptor::Lp(_) => Ratio::Sampled {
                coarse: SphereTable::new(norm, COARSE_CIRCLE_GRID),
                fine: SphereTable::new(norm, DEFAULT_CIRCLE_GRID),
            },
        }
    }

    fn coarse(&self, op: &Operator2x2<T>) -> T {
        match self {
            Ratio::Exact(ball) => polygon_radius(ball, op) / polygon_operator_norm(ball, op),
            Ratio::Sampled { coarse, .. } => coarse.coarse_radius(op) / coarse.coarse_norm(op),
        }
    }

    fn fine(&self, op: &Operator2x2<T>) -> T {
        match self {
            Ratio::Exact(_) => self.coarse(op),
            Ratio::Sampled { fine, .. } => fine.radius(op) / fine.operator_norm(op),
        }
    }
}

fn operator_at<T: Scalar>(phi: [T; 3]) -> Operator2x2<T> {
    let [p1, p2, p3] = phi;
    let u = [p1.cos(), p1.sin() * p2.cos(), p1.sin() * p2.sin() * p3.cos(), p1.sin() * p2.sin() * p3.sin()];
    let l1 = u.iter().fold(T::zero(), |s, a| s + a.abs());
    from_isometry_coords(&IsometryCoefficients::from_array(u.map(|a| a / l1)))
}

/// Estimates the numerical index by a grid over operators of unit `‖·‖₊`
/// followed by pattern search from the best grid points.
///
/// `resolution` is the number of steps per angle. Every grid contains `±I₄`,
/// so the estimate never exceeds `v(I₄)` by more than the evaluation error.
pub fn brute_force_index<T: Scalar>(norm: &NormDescriptor<T>, resolution: usize) -> Result<IndexEstimate<T>> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidInput(format!("resolution must be at least {MIN_RESOLUTION}, got {resolution}")));
    }
    if let Some(v) = validate(norm).violation {
        return Err(Error::InvalidDescriptor(format!("{} fails: {}", v.property, v.detail)));
    }
    let ratio = Ratio::new(norm);
    let half_pi = T::FRAC_PI_2();
    let res = T::of_usize(resolution);
    // φ₁, φ₂ span π/2 and φ₃ spans π, each in `resolution` steps
    let steps = [half_pi / res, half_pi / res, T::PI() / res];
    let nodes = resolution + 1;

    // (value, φ) of the best coarse points, ascending
    let mut best: Vec<(T, [T; 3])> = Vec::with_capacity(PATTERN_STARTS + 1);
    for i in 0..nodes {
        let p1 = T::of_usize(i) * steps[0];
        // φ₁ = 0 is the identity whatever φ₂, φ₃ are
        let n = if i == 0 { 1 } else { nodes };
        for j in 0..n {
            let p2 = T::of_usize(j) * steps[1];
            for k in 0..n {
                let p3 = T::of_usize(k) * steps[2] - half_pi;
                let phi = [p1, p2, p3];
                let value = ratio.coarse(&operator_at(phi));
                if best.len() < PATTERN_STARTS || value < best[best.len() - 1].0 {
                    let at = best.partition_point(|b| b.0 <= value);
                    best.insert(at, (value, phi));
                    best.truncate(PATTERN_STARTS);
                }
            }
        }
    }

    let mut overall: Option<(T, [T; 3], bool)> = None;
    for (_, start) in best {
        let (mut phi, mut value) = (start, ratio.fine(&operator_at(start)));
        let grid_value = value;
        let mut delta = steps;
        for _ in 0..PATTERN_ROUNDS {
            let mut moved = false;
            for axis in 0..3 {
                for dir in [T::one(), -T::one()] {
                    let mut trial = phi;
                    trial[axis] = trial[axis] + dir * delta[axis];
                    let v = ratio.fine(&operator_at(trial));
                    if v < value {
                        value = v;
                        phi = trial;
                        moved = true;
                    }
                }
            }
            if !moved {
                delta = delta.map(|d| d / T::lit(2.0));
            }
        }
        let refined = value < grid_value;
        if overall.as_ref().is_none_or(|o| value < o.0) {
            overall = Some((value, phi, refined));
        }
    }
    let (value, phi, refined) = overall.ok_or_else(|| Error::Internal("empty operator grid".into()))?;
    Ok(IndexEstimate {
        value: value.min(T::one()).max(T::zero()),
        argmin: operator_at(phi),
        grid_resolution: resolution,
        refined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::mp::mp_constant;
    use crate::operator::{numerical_radius, operator_norm, Isometry};

    #[test]
    fn grid_contains_the_rotation() {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let op = operator_at([half_pi, half_pi, half_pi]);
        assert!(op.max_abs_diff(&Isometry::Rotation.matrix()) < 1e-15);
        let op = operator_at([0.0, 0.3, -1.0]);
        assert_eq!(op, Operator2x2::identity());
    }

    #[test]
    fn brute_force_examples() {
        let est = brute_force_index(&NormDescriptor::lp(2.0f64).unwrap(), 32).unwrap();
        assert!(est.value <= 1e-3, "{}", est.value);

        let l1 = NormDescriptor::<f64>::l1();
        let est = brute_force_index(&l1, 32).unwrap();
        assert!(est.value >= 0.999, "{}", est.value);
        let v = numerical_radius(&l1, &est.argmin);
        assert!(v >= 0.999 * operator_norm(&l1, &est.argmin));

        let est = brute_force_index(&NormDescriptor::lp(1.75f64).unwrap(), 32).unwrap();
        let m = mp_constant(1.75).unwrap().value;
        assert!((est.value - m).abs() < 1e-3, "{} vs {m}", est.value);
        assert_eq!(est.grid_resolution, 32);
    }

    #[test]
    fn rejects_coarse_resolutions() {
        assert!(matches!(brute_force_index(&NormDescriptor::<f64>::l1(), 7), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn octagon_stays_below_the_rotation() {
        let norm = NormDescriptor::<f64>::regular_octagon();
        let est = brute_force_index(&norm, 16).unwrap();
        let v4 = numerical_radius(&norm, &Isometry::Rotation.matrix());
        assert!(est.value <= v4 + 1e-12);
        assert!(est.value > 0.0);
    }
}
