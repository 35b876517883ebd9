//! Piecewise-linear maps between chain-order polytopes: tropical maps, the
//! unimodular map `ψ`, the moves `χ_r` and their composite `ξ_λ`, plus the
//! mutation engine that applies them to polytopes.

mod maps;
mod mutation;

pub use maps::{
    apply_tropical, chi_r, chi_r_decomposed, chi_r_inverse, i_max, phi_step, psi_map, xi, TropicalMap, UnimodularMap,
};
pub use mutation::{
    apply_unimodular, fixes_hyperplane, mutate, mutation_sequence, mutation_sequence_unrestricted, BlockRecord,
    Certificate, MapStep, MutationOptions, MutationTrace, StepJson, TraceStep,
};
