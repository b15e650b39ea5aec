//! State-vector simulation of the Rydberg Hamiltonian on small atom graphs.

pub mod eigen;
pub mod evolve;
pub mod hamiltonian;
pub mod state;

pub use eigen::{ground_state, EigenOptions, GroundState};
pub use evolve::{adiabatic_sweep, evolve, sweep_graph, Schedule, SweepResult};
pub use hamiltonian::{build_hamiltonian, default_blockade, Hamiltonian, RydbergParams, DEFAULT_ATOM_CAP, HARD_ATOM_CAP};
pub use state::QuantumState;
