//! `min_{α ∈ K} max_j (Σ_{k≠j} α_k c_k − α_j c_j)` over the probability simplex
//! `K ⊂ R⁴`: closed form, and an independent vertex enumeration of the lifted
//! linear program on `K′ ⊂ R⁵`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::ContactVector;
use crate::scalar::Scalar;

/// Pivot magnitude below which an active-set subsystem is treated as singular.
pub const SINGULAR_TOL: f64 = 1e-12;
/// Constraint slack accepted when testing candidate vertices for feasibility.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Distance under which two candidate vertices are merged.
pub const MERGE_TOL: f64 = 1e-9;

/// `f(α) = max_j (Σ_{k≠j} α_k c_k − α_j c_j)`.
pub fn simplex_objective<T: Scalar>(c: &[T; 4], alpha: &[T; 4]) -> T {
    let total = (0..4).fold(T::zero(), |s, k| s + alpha[k] * c[k]);
    (0..4).map(|j| total - T::lit(2.0) * alpha[j] * c[j]).fold(T::neg_infinity(), T::max)
}

/// Closed-form minimum `min{c₄, 2 / (1 + 1/c₂ + 1/c₃ + 1/c₄)}`.
///
/// The two branches are the extreme points of the lifted program: a vertex
/// with some `α_j = 0` (value at least `c₄`, attained at `α = e₄`), and the
/// interior vertex where all `α_j c_j` coincide.
pub fn minimax_simplex<T: Scalar>(contact: &ContactVector<T>) -> Result<T> {
    let cs = contact.as_array();
    if cs.iter().any(|&c| c <= T::zero()) {
        return Err(Error::OutOfScope(format!("closed form needs every c_j > 0, got {cs:?}")));
    }
    let ContactVector { c2, c3, c4, .. } = *contact;
    let one = T::one();
    Ok(c4.min(T::lit(2.0) / (one + c2.recip() + c3.recip() + c4.recip())))
}

/// A vertex `(α, z)` of the lifted polytope `K′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftedVertex<T> {
    pub alpha: [T; 4],
    pub z: T,
}

#[derive(Clone, Copy, PartialEq)]
enum Sense {
    Eq,
    Le,
    Ge,
}

struct Constraint<T> {
    row: [T; 5],
    rhs: T,
    sense: Sense,
}

/// The ten constraints defining `K′`: `Σα = 1`, `z ≤ 2`, `α_j ≥ 0`, and
/// `z ≥ Σ_{k≠j} α_k c_k − α_j c_j`.
fn lifted_constraints<T: Scalar>(c: &[T; 4]) -> Vec<Constraint<T>> {
    let (zero, one) = (T::zero(), T::one());
    let mut out = Vec::with_capacity(10);
    out.push(Constraint { row: [one, one, one, one, zero], rhs: one, sense: Sense::Eq });
    out.push(Constraint { row: [zero, zero, zero, zero, one], rhs: T::lit(2.0), sense: Sense::Le });
    for j in 0..4 {
        let mut row = [zero; 5];
        row[j] = one;
        out.push(Constraint { row, rhs: zero, sense: Sense::Ge });
    }
    for j in 0..4 {
        let mut row = [zero; 5];
        for k in 0..4 {
            row[k] = if k == j { c[k] } else { -c[k] };
        }
        row[4] = one;
        out.push(Constraint { row, rhs: zero, sense: Sense::Ge });
    }
    out
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve<T: Scalar, const N: usize>(mut a: [[T; N]; N], mut b: [T; N]) -> Option<[T; N]> {
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal))?;
        if a[pivot][col].abs() < T::lit(SINGULAR_TOL) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            for k in col..N {
                a[row][k] = a[row][k] - factor * a[col][k];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = [T::zero(); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// All vertices of `K′`, found by solving every 5×5 subsystem of active
/// constraints and keeping the feasible, distinct solutions.
pub fn lifted_polytope_vertices<T: Scalar>(c: &[T; 4]) -> Vec<LiftedVertex<T>> {
    let constraints = lifted_constraints(c);
    let slack = T::tol(FEASIBILITY_TOL);
    let feasible = |x: &[T; 5]| {
        constraints.iter().all(|con| {
            let lhs = (0..5).fold(T::zero(), |s, k| s + con.row[k] * x[k]);
            match con.sense {
                Sense::Eq => (lhs - con.rhs).abs() <= slack,
                Sense::Le => lhs <= con.rhs + slack,
                Sense::Ge => lhs >= con.rhs - slack,
            }
        })
    };

    let mut vertices: Vec<LiftedVertex<T>> = Vec::new();
    for mask in 0u32..(1 << constraints.len()) {
        if mask.count_ones() != 5 {
            continue;
        }
        let active: Vec<&Constraint<T>> =
            (0..constraints.len()).filter(|i| mask & (1 << i) != 0).map(|i| &constraints[i]).collect();
        let a: [[T; 5]; 5] = std::array::from_fn(|r| active[r].row);
        let b: [T; 5] = std::array::from_fn(|r| active[r].rhs);
        let Some(x) = solve(a, b) else { continue };
        if !feasible(&x) {
            continue;
        }
        let v = LiftedVertex { alpha: [x[0], x[1], x[2], x[3]], z: x[4] };
        let merge = T::tol(MERGE_TOL);
        let duplicate = vertices
            .iter()
            .any(|w| (w.z - v.z).abs() <= merge && (0..4).all(|k| (w.alpha[k] - v.alpha[k]).abs() <= merge));
        if !duplicate {
            vertices.push(v);
        }
    }
    vertices
}

/// Minimum of `z` over the vertices of `K′`; needs only `c_j ≥ 0`.
pub fn minimax_simplex_oracle<T: Scalar>(c: &[T; 4]) -> Result<T> {
    if c.iter().any(|&x| !x.is_finite() || x < T::zero()) {
        return Err(Error::InvalidInput(format!("contact coefficients must be non-negative, got {c:?}")));
    }
    lifted_polytope_vertices(c)
        .iter()
        .map(|v| v.z)
        .reduce(T::min)
        .ok_or_else(|| Error::Internal("lifted polytope has no feasible vertex".into()))
}
