//! The Johnson-graph specific layer: explicit automorphisms, the local
//! rigidity argument and the end-to-end verifier.

pub mod maps;
pub mod rigidity;
pub mod transitivity;
pub mod verify;

pub use maps::{
    bipartite_aut_order, complementation_map, distance_by_intersection, factorial, induced_action,
    neighborhood_iso, symmetric_generators, whitney_lift, NeighborhoodIso,
};
pub use rigidity::{
    local_reconstruction, unique_intersection_in, unique_intersection_witness, IntersectionWitness,
    PartialVertexMap, ReconstructionError,
};
pub use transitivity::{transitivity_profile, TransitivityProfile};
pub use verify::{
    expected_order, valid_parameters, verify_johnson_aut, verify_johnson_aut_with, Check, Status,
    VerificationReport, VerifyOptions, DEFAULT_SEED, TOOL_VERSION,
};
