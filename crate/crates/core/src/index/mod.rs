//! Numerical index: `M_p`, contact coefficients and the bound they give, the
//! certified ℓ_p pipeline and a direct search estimate.

mod brute;
mod contact;
mod lp;
mod minimax;
mod mp;
mod report;

pub use brute::{
    brute_force_index, IndexEstimate, COARSE_CIRCLE_GRID, DEFAULT_RESOLUTION, MIN_RESOLUTION, PATTERN_ROUNDS,
    PATTERN_STARTS,
};
pub use contact::{
    contact_values, contact_vector, theorem2_bound, ContactVector, Theorem2Bound, CONDITION_TOL, CONTACT_ORDER_TOL,
};
pub use lp::{
    certified_index_lp, condition_margin, lp_condition_check, CertifiedIndex, ConditionCheck, CONDITION_GRID,
    CONDITION_SLACK,
};
pub use minimax::{
    lifted_polytope_vertices, minimax_simplex, minimax_simplex_oracle, simplex_objective, LiftedVertex,
    FEASIBILITY_TOL, MERGE_TOL, SINGULAR_TOL,
};
pub use mp::{conjugate_exponent, mp_constant, mp_objective, MpConstant, MP_GRID};
pub use report::{index_report, radius_i4_maximizer, Certification, I4Maximizer, IndexReport, MAXIMIZER_TIE_TOL};
