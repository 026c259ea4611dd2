//! Equilibrium search for balanced two-signal games in the maximally
//! entangled environment, and realizability tests for correlation
//! quadruples.

mod deviation;
mod feasibility;
mod theta;

pub use deviation::{
    multistart_profile_value, verify_equilibrium, DeviationSearchConfig, EquilibriumReport,
    DEFAULT_SEED,
};
pub use feasibility::{
    chain_inequality_satisfied, product_form_feasible, quantum_feasible, CorrelationQuad,
};
pub use theta::{
    optimize_theta, reduced_maximize, reduced_objective_for, ReducedObjective, ReducedOptimum,
    ThetaProfile,
};
