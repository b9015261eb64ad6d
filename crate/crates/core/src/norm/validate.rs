//! Sampled verification of the norm axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::norm::{NormDescriptor, Vec2};
use crate::scalar::Scalar;

const SAMPLES: usize = 1000;
const SEED: u64 = 0x6e6f_726d;
const AXIOM_TOL: f64 = 1e-9;

/// The norm properties checked by [`validate`], in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Normalization,
    Absoluteness,
    Symmetry,
    Homogeneity,
    Convexity,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Property::Normalization => "normalization ‖(1,0)‖ = ‖(0,1)‖ = 1",
            Property::Absoluteness => "absoluteness ‖(a,b)‖ = ‖(|a|,|b|)‖",
            Property::Symmetry => "symmetry ‖(a,b)‖ = ‖(b,a)‖",
            Property::Homogeneity => "homogeneity ‖λv‖ = |λ|‖v‖",
            Property::Convexity => "convexity ‖u + v‖ ≤ ‖u‖ + ‖v‖",
        };
        f.write_str(name)
    }
}

/// First violated property together with the sample that exposes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub property: Property,
    pub witness: Vec<[f64; 2]>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks normalization, absoluteness, symmetry, homogeneity and the
/// triangle inequality on deterministic samples. Never fails; a violated
/// axiom is reported with a witness.
pub fn validate<T: Scalar>(norm: &NormDescriptor<T>) -> ValidationReport {
    let violation = check(norm).err();
    ValidationReport { violation }
}

fn witness<T: Scalar>(points: &[Vec2<T>]) -> Vec<[f64; 2]> {
    points.iter().map(|v| [v.x.to_f64_lossy(), v.y.to_f64_lossy()]).collect()
}

fn check<T: Scalar>(norm: &NormDescriptor<T>) -> Result<(), Violation> {
    let tol = T::tol(AXIOM_TOL);
    let close = |a: T, b: T| (a - b).abs() <= tol * T::one().max(a.abs()).max(b.abs());

    for e in [Vec2::new(T::one(), T::zero()), Vec2::new(T::zero(), T::one())] {
        let n = norm.norm(e);
        if !close(n, T::one()) {
            return Err(Violation {
                property: Property::Normalization,
                witness: witness(&[e]),
                detail: format!("norm of unit coordinate vector is {n}"),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sample = |rng: &mut ChaCha8Rng| {
        let r = T::lit(rng.gen_range(0.05..4.0));
        Vec2::from_angle(T::lit(rng.gen_range(0.0..std::f64::consts::TAU))).scale(r)
    };
    let points: Vec<Vec2<T>> = (0..SAMPLES).map(|_| sample(&mut rng)).collect();

    for &v in &points {
        let (n, na) = (norm.norm(v), norm.norm(v.abs()));
        if !close(n, na) {
            return Err(Violation {
                property: Property::Absoluteness,
                witness: witness(&[v]),
                detail: format!("‖v‖ = {n} but ‖|v|‖ = {na}"),
            });
        }
        let ns = norm.norm(v.swap());
        if !close(n, ns) {
            return Err(Violation {
                property: Property::Symmetry,
                witness: witness(&[v]),
                detail: format!("‖v‖ = {n} but ‖swap(v)‖ = {ns}"),
            });
        }
    }

    for (i, &v) in points.iter().enumerate() {
        let lambda = T::lit(rng.gen_range(-5.0..5.0));
        let lhs = norm.norm(v.scale(lambda));
        let rhs = lambda.abs() * norm.norm(v);
        if !close(lhs, rhs) {
            return Err(Violation {
                property: Property::Homogeneity,
                witness: witness(&[v, Vec2::new(lambda, T::zero())]),
                detail: format!("sample {i}: ‖λv‖ = {lhs}, |λ|‖v‖ = {rhs}"),
            });
        }
    }

    // random pairs plus neighbouring directions, where dents would show up
    let dense = 720;
    let ring: Vec<Vec2<T>> =
        (0..dense).map(|k| norm.sphere_point(T::TAU() * T::of_usize(k) / T::of_usize(dense))).collect();
    let pairs = points.windows(2).map(|w| (w[0], w[1])).chain((0..dense).map(|k| (ring[k], ring[(k + 3) % dense])));
    for (u, v) in pairs {
        let lhs = norm.norm(u + v);
        let rhs = norm.norm(u) + norm.norm(v);
        if lhs > rhs + tol * T::one().max(rhs) {
            return Err(Violation {
                property: Property::Convexity,
                witness: witness(&[u, v]),
                detail: format!("‖u + v‖ = {lhs} > ‖u‖ + ‖v‖ = {rhs}"),
            });
        }
    }
    Ok(())
}
