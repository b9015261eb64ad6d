//! Random norm and duality-pair generators, and the property suites run by
//! `numidx verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::index::{
    brute_force_index, certified_index_lp, conjugate_exponent, contact_values, minimax_simplex, minimax_simplex_oracle,
    mp_constant, ContactVector, CONTACT_ORDER_TOL,
};
use crate::norm::{DualityPair, NormDescriptor, Vec2};
use crate::operator::{numerical_radius, Isometry};

/// Seed used by the suites unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x6e69_6478;

/// An ℓ_p norm with `p` log-uniform in `[1.05, 12]`.
pub fn random_lp_norm(rng: &mut impl Rng) -> NormDescriptor<f64> {
    let p = (rng.gen_range(1.05f64.ln()..12f64.ln())).exp();
    NormDescriptor::lp(p).expect("p > 1")
}

/// A polygonal absolute symmetric norm: the symmetric hull of one to five
/// random points in the first octant, rescaled so that `‖(1, 0)‖ = 1`.
pub fn random_polyhedral_norm(rng: &mut impl Rng) -> NormDescriptor<f64> {
    let k = rng.gen_range(1..=5);
    let pts: Vec<Vec2<f64>> = (0..k)
        .map(|_| {
            let angle = rng.gen_range(0.0..std::f64::consts::FRAC_PI_4);
            Vec2::from_angle(angle).scale(rng.gen_range(0.4..1.0))
        })
        .collect();
    NormDescriptor::polyhedral_hull(&pts).expect("hull of first-octant points is a valid ball")
}

/// A duality pair of `norm`. On polygons half the draws sit on a vertex, with
/// a random functional from the segment of supporting functionals there.
pub fn random_duality_pair(norm: &NormDescriptor<f64>, rng: &mut impl Rng) -> DualityPair<f64> {
    if let NormDescriptor::Polyhedral(ball) = norm {
        if rng.gen_bool(0.5) {
            let vs = ball.vertices();
            let fs = ball.edge_functionals();
            let i = rng.gen_range(0..vs.len());
            let prev = fs[(i + vs.len() - 1) % vs.len()];
            let lambda = rng.gen_range(0.0..=1.0);
            return DualityPair::new(vs[i], prev.scale(1.0 - lambda) + fs[i].scale(lambda));
        }
    }
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let support = norm.support_unchecked(norm.sphere_point(theta));
    let fs = support.functionals();
    let xstar = if fs.len() == 2 {
        let lambda = rng.gen_range(0.0..=1.0);
        fs[0].scale(1.0 - lambda) + fs[1].scale(lambda)
    } else {
        fs[0]
    };
    DualityPair::new(support.point, xstar)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma1,
    Minimax,
    Theorem3,
    Sandwich,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Lemma1, Suite::Minimax, Suite::Theorem3, Suite::Sandwich];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Minimax => "minimax",
            Suite::Theorem3 => "theorem3",
            Suite::Sandwich => "sandwich",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The check that came closest to failing, or failed by the most.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub case: String,
    /// Amount by which the inequality is violated; negative means it holds.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: usize,
    pub worst: Option<Witness>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self { suite, checks: 0, failures: 0, worst: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records a check of `excess ≤ 0`.
    fn record(&mut self, excess: f64, case: impl FnOnce() -> String) {
        self.checks += 1;
        let failed = !(excess <= 0.0);
        if failed {
            self.failures += 1;
        }
        let excess = if excess.is_nan() { f64::INFINITY } else { excess };
        if self.worst.as_ref().is_none_or(|w| excess > w.excess) {
            self.worst = Some(Witness { case: case(), excess });
        }
    }
}

/// Tuning knobs for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Grid resolution for the brute-force estimates.
    pub resolution: usize,
    pub pairs_per_norm: usize,
    pub contact_vectors: usize,
    pub sandwich_exponents: Vec<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            resolution: crate::index::DEFAULT_RESOLUTION,
            pairs_per_norm: 500,
            contact_vectors: 100,
            sandwich_exponents: vec![1.1, 1.25, 4.0, 8.0],
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma1 => lemma1(opts),
        Suite::Minimax => minimax(opts),
        Suite::Theorem3 => theorem3(),
        Suite::Sandwich => sandwich(opts),
    }
}

/// `c₄ ≤ min(c₁, c₂, c₃)` at random duality pairs of ten random ℓ_p norms and
/// ten random polygonal norms.
fn lemma1(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = SuiteReport::new(Suite::Lemma1);
    for n in 0..20 {
        let norm = if n < 10 { random_lp_norm(&mut rng) } else { random_polyhedral_norm(&mut rng) };
        for _ in 0..opts.pairs_per_norm {
            let pair = random_duality_pair(&norm, &mut rng);
            let [c1, c2, c3, c4] = contact_values(&pair);
            let excess = c4 - c1.min(c2).min(c3) - CONTACT_ORDER_TOL;
            report.record(excess, || {
                format!("{} at x = {:?}, x* = {:?}: c = {:?}", describe(&norm), pair.x, pair.xstar, [c1, c2, c3, c4])
            });
        }
    }
    Ok(report)
}

/// Closed form against vertex enumeration on random contact vectors.
fn minimax(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 1);
    let mut report = SuiteReport::new(Suite::Minimax);
    for _ in 0..opts.contact_vectors {
        let c2 = rng.gen_range(0.01..=1.0);
        let c3 = rng.gen_range(0.01..=1.0);
        let c4 = rng.gen_range(0.01..=1.0) * f64::min(c2, c3);
        let contact = ContactVector::new(1.0, c2, c3, c4)?;
        let closed = minimax_simplex(&contact)?;
        let oracle = minimax_simplex_oracle(&contact.as_array())?;
        report.record((closed - oracle).abs() - 1e-9, || {
            format!("c = {:?}: closed {closed}, oracle {oracle}", contact.as_array())
        });
    }
    Ok(report)
}

/// Certified `n(ℓ_p²)` against `v(I₄)` for `p = 1.5, 1.6, …, 3.0`.
fn theorem3() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Theorem3);
    let rotation = Isometry::Rotation.matrix();
    for k in 0..=15 {
        let p = f64::from(15 + k) / 10.0;
        let cert = certified_index_lp(p)?;
        if let Some(check) = cert.condition {
            let excess = if check.holds { -1.0 } else { -check.min_margin };
            report.record(excess, || format!("condition at p = {}: min h = {}", cert.exponent_used, check.min_margin));
        }
        let v = numerical_radius(&NormDescriptor::lp(p)?, &rotation);
        report.record((cert.value - v).abs() - 1e-8, || format!("p = {p}: certified {}, v(I4) = {v}", cert.value));
    }
    Ok(report)
}

/// `max{2^{−1/p}, 2^{−1/q}}·M_p ≤ n(ℓ_p²) ≤ M_p` with the brute-force estimate.
fn sandwich(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Sandwich);
    for &p in &opts.sandwich_exponents {
        let q = conjugate_exponent(p)?;
        let m = mp_constant(p)?.value;
        let lower = sandwich_lower(p, q, m);
        let est = brute_force_index(&NormDescriptor::lp(p)?, opts.resolution)?.value;
        report.record(lower - 2e-3 - est, || format!("p = {p}: lower {lower}, estimate {est}"));
        report.record(est - m - 2e-3, || format!("p = {p}: estimate {est}, M_p {m}"));
    }
    Ok(report)
}

/// `max{2^{−1/p}, 2^{−1/q}}·M_p`.
pub fn sandwich_lower(p: f64, q: f64, mp: f64) -> f64 {
    2f64.powf(-1.0 / p).max(2f64.powf(-1.0 / q)) * mp
}

fn describe(norm: &NormDescriptor<f64>) -> String {
    match norm {
        NormDescriptor::Lp(lp) => format!("lp(p = {})", lp.p()),
        NormDescriptor::Polyhedral(ball) => format!("polygon{:?}", ball.first_quadrant_vertices()),
    }
}
