use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::contact::{contact_vector, theorem2_bound, ContactVector};
use crate::index::lp::certified_index_lp;
use crate::index::mp::MP_GRID;
use crate::norm::{lp_pair_unchecked, validate, DualityPair, NormDescriptor};
use crate::operator::Isometry;
use crate::scalar::Scalar;
use crate::search::{Peak, UniformGrid, GOLDEN_ITERATIONS, REFINED_PEAKS};

/// Maximizers whose value is within this of the best are all considered.
pub const MAXIMIZER_TIE_TOL: f64 = 1e-9;

/// A duality pair attaining `v(I₄)`, and every other maximizer found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct I4Maximizer<T> {
    pub pair: DualityPair<T>,
    pub value: T,
    /// Parameter `t₀` of the ℓ_p duality parametrization, when applicable.
    pub parameter: Option<T>,
    /// All maximizing pairs within `MAXIMIZER_TIE_TOL` of `value`, best first.
    pub candidates: Vec<DualityPair<T>>,
}

/// A duality pair attaining the numerical radius of the rotation `I₄`.
///
/// ℓ_p norms are searched along `t ↦ (x_t, x*_t)`, `t ∈ [0, 1]`; polygonal
/// norms by enumerating every (vertex, extreme functional) pair.
pub fn radius_i4_maximizer<T: Scalar>(norm: &NormDescriptor<T>) -> Result<I4Maximizer<T>> {
    let rotation = Isometry::Rotation.matrix::<T>();
    let tie = T::tol(MAXIMIZER_TIE_TOL);
    match norm {
        NormDescriptor::Lp(lp) => {
            let p = lp.p();
            let objective = |t: T| {
                let pair = lp_pair_unchecked(p, t);
                pair.xstar.dot(rotation.apply(pair.x)).abs()
            };
            let grid = UniformGrid::closed(T::zero(), T::one(), MP_GRID);
            let values: Vec<T> = (0..grid.len).map(|k| objective(grid.node(k))).collect();
            let best = grid.refine(&values, objective, REFINED_PEAKS, GOLDEN_ITERATIONS);
            let mut peaks: Vec<Peak<T>> = grid
                .refine_peaks(&values, objective, REFINED_PEAKS, GOLDEN_ITERATIONS)
                .into_iter()
                .filter(|pk| pk.value >= best.value - tie && pk.arg != best.arg)
                .collect();
            peaks.insert(0, best);
            Ok(I4Maximizer {
                pair: lp_pair_unchecked(p, best.arg),
                value: best.value,
                parameter: Some(best.arg),
                candidates: peaks.iter().map(|pk| lp_pair_unchecked(p, pk.arg)).collect(),
            })
        }
        NormDescriptor::Polyhedral(ball) => {
            let vs = ball.vertices();
            let fs = ball.edge_functionals();
            let n = vs.len();
            let pairs: Vec<(DualityPair<T>, T)> = (0..n)
                .flat_map(|i| [fs[(i + n - 1) % n], fs[i]].map(|f| DualityPair::new(vs[i], f)))
                .map(|pair| {
                    let value = pair.xstar.dot(rotation.apply(pair.x)).abs();
                    (pair, value)
                })
                .collect();
            let (pair, value) = pairs
                .iter()
                .copied()
                .reduce(|a, b| if b.1 > a.1 { b } else { a })
                .ok_or_else(|| Error::Internal("polygon without vertices".into()))?;
            let candidates = pairs.iter().filter(|(_, v)| *v >= value - tie).map(|(p, _)| *p).collect();
            Ok(I4Maximizer { pair, value, parameter: None, candidates })
        }
    }
}

/// Where a certified index value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// `c₄ = 0` or `c₄(1 + 1/c₂ + 1/c₃) ≤ 1` at a maximizer of `v(I₄)`.
    ContactCondition,
    /// The ℓ_p exponent lies in `[3/2, 3]`.
    LpExponent,
}

/// Everything known about the numerical index from the rotation `I₄`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport<T> {
    /// `v(I₄)`, an upper bound for the index since `‖I₄‖ = 1`.
    pub radius_i4: T,
    pub maximizer: DualityPair<T>,
    /// ℓ_p parameter `t₀` of the maximizer, when applicable.
    pub maximizer_parameter: Option<T>,
    /// Number of maximizing pairs at which the condition was evaluated.
    pub maximizers_checked: usize,
    pub contact: ContactVector<T>,
    pub condition_value: T,
    pub lower_bound: T,
    pub exact: bool,
    pub certified_index: Option<T>,
    pub certified_by: Option<Certification>,
}

/// Runs maximizer search, contact coefficients and the bound, reporting
/// exactness if the condition holds at any maximizer.
pub fn index_report<T: Scalar>(norm: &NormDescriptor<T>) -> Result<IndexReport<T>> {
    if let Some(v) = validate(norm).violation {
        return Err(Error::InvalidDescriptor(format!("{} fails: {}", v.property, v.detail)));
    }
    let maximizer = radius_i4_maximizer(norm)?;

    let mut chosen = None;
    for pair in &maximizer.candidates {
        let contact = contact_vector(pair)?;
        let bound = theorem2_bound(&contact)?;
        let better = match &chosen {
            None => true,
            Some((_, _, b)) => {
                let b: &crate::index::Theorem2Bound<T> = b;
                (bound.exact && !b.exact) || (bound.exact == b.exact && bound.lower_bound > b.lower_bound)
            }
        };
        if better {
            chosen = Some((*pair, contact, bound));
        }
    }
    let (pair, contact, bound) = chosen.ok_or_else(|| Error::Internal("no maximizer for v(I4)".into()))?;

    let mut report = IndexReport {
        radius_i4: maximizer.value,
        maximizer: pair,
        maximizer_parameter: if pair == maximizer.pair { maximizer.parameter } else { None },
        maximizers_checked: maximizer.candidates.len(),
        contact,
        condition_value: bound.condition_value,
        lower_bound: bound.lower_bound,
        exact: bound.exact,
        certified_index: None,
        certified_by: None,
    };
    if bound.exact {
        report.certified_index = Some(maximizer.value);
        report.certified_by = Some(Certification::ContactCondition);
    } else if let NormDescriptor::Lp(lp) = norm {
        if let Ok(cert) = certified_index_lp(lp.p()) {
            report.certified_index = Some(cert.value);
            report.certified_by = Some(Certification::LpExponent);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::mp::mp_constant;
    use crate::norm::Vec2;
    use crate::operator::numerical_radius;

    fn lp(p: f64) -> NormDescriptor<f64> {
        NormDescriptor::lp(p).unwrap()
    }

    #[test]
    fn maximizer_examples() {
        let m = radius_i4_maximizer(&lp(2.0)).unwrap();
        assert_eq!(m.value, 0.0);
        assert_eq!(m.parameter, Some(0.0));
        assert_eq!(m.pair.x, Vec2::new(1.0, 0.0));

        let m = radius_i4_maximizer(&lp(3.0)).unwrap();
        let mp = mp_constant(3.0).unwrap();
        assert!((m.value - mp.value).abs() < 1e-12);
        assert!((m.parameter.unwrap() - 0.435).abs() < 1e-3);

        let m = radius_i4_maximizer(&NormDescriptor::l1()).unwrap();
        assert_eq!(m.value, 1.0);
        assert_eq!(m.pair, DualityPair::new(Vec2::new(1.0, 0.0), Vec2::new(1.0, -1.0)));
        assert_eq!(m.candidates.len(), 8);
    }

    #[test]
    fn maximizer_attains_the_radius() {
        let norms = [lp(1.3), lp(2.7), NormDescriptor::linf(), NormDescriptor::regular_octagon()];
        for norm in &norms {
            let m = radius_i4_maximizer(norm).unwrap();
            m.pair.check(norm).unwrap();
            let v = numerical_radius(norm, &Isometry::Rotation.matrix());
            assert!((m.value - v).abs() < 1e-9, "{norm:?}: {} vs {v}", m.value);
        }
    }

    #[test]
    fn report_examples() {
        let r = index_report(&lp(2.0)).unwrap();
        assert_eq!(r.radius_i4, 0.0);
        assert_eq!(r.lower_bound, 0.0);
        assert!(r.exact);
        assert_eq!(r.certified_index, Some(0.0));

        let r = index_report(&lp(1.5)).unwrap();
        let m = mp_constant(1.5).unwrap().value;
        assert!(r.exact);
        assert!(r.condition_value <= 1.0);
        assert!((r.lower_bound - m).abs() < 1e-12);
        assert!((r.certified_index.unwrap() - m).abs() < 1e-12);

        let r = index_report(&NormDescriptor::<f64>::l1()).unwrap();
        assert_eq!(r.radius_i4, 1.0);
        assert!(!r.exact);
        assert!((r.lower_bound - 0.5).abs() < 1e-15);
        assert!(r.lower_bound <= r.radius_i4 + 1e-10);
    }

    #[test]
    fn report_rejects_unnormalized_norms() {
        let norm = NormDescriptor::polyhedral(vec![Vec2::new(0.5, 0.0)]).unwrap();
        assert!(matches!(index_report(&norm), Err(Error::InvalidDescriptor(_))));
    }
}
