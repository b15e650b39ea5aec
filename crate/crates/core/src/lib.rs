//! Compiles higher-order binary optimization problems into weighted Rydberg
//! atom graphs whose maximum-weight independent sets encode the minima.
//!
//! The pipeline is [`parse_hubo`] → [`lower`] → [`assemble`] →
//! [`verify_equivalence`], with [`sim`] for small-graph quantum dynamics and
//! [`expand`] for bounded-clique realizations of large gadgets.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod builders;
pub mod compiler;
pub mod error;
pub mod estimate;
pub mod expand;
pub mod gadget;
pub mod graph;
pub mod mwis;
pub mod polynomial;
pub mod sim;
pub mod text;
pub mod verify;

pub use builders::{bit_name, build_factorization_hubo, build_sierpinski_hubo, sierpinski_gasket6, Factor, FactorizationSpec};
pub use compiler::{
    assemble, compile, effective_polynomial, lower, CompileOptions, CompiledGraph, GadgetPlan, GadgetSpec, Mode, PairRule,
};
pub use error::{CompileError, ExpandError, GadgetError, HuboError, SimError, SolverError};
pub use estimate::{estimate_atoms, histogram_of, AtomCounts, ResourceEstimate, TermClass};
pub use expand::{expand_superatom, verify_expansion, Expansion, ExpansionCheck, ExpansionSpec, ExpansionStrategy};
pub use gadget::{
    emit_negative_hyperedge, emit_offset, emit_positive_hyperedge, energy_profile, gadget_energy_profile, EnergyProfile,
    Fragment, Gadget, GadgetKind,
};
pub use graph::{Atom, AtomGraph, AtomId, AtomRole, AtomSet};
pub use mwis::{max_weight_independent_sets, Family, MwisSolution, MwisSolver};
pub use polynomial::{Assignment, Minima, Monomial, Polynomial, PolynomialBuilder, Var};
pub use text::{parse_hubo, to_hubo_string};
pub use verify::{drop_gadget_edge, ground_manifold, verify_equivalence, EquivalenceCertificate, GroundReport, VerifyOptions};
