//! Ground manifolds of compiled graphs and their equivalence with the polynomial optimum.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::compiler::CompiledGraph;
use crate::error::{CompileError, SolverError};
use crate::graph::{AtomGraph, AtomId, AtomSet};
use crate::mwis::{MwisSolver, DEFAULT_NODE_BUDGET};
use crate::polynomial::{Assignment, Polynomial, Var, DEFAULT_ENUMERATION_LIMIT};

/// Limits applied while extracting ground manifolds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub node_budget: u64,
    /// Ground configurations are listed only up to this many.
    pub config_limit: usize,
    pub enumeration_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            config_limit: 1 << 16,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundReport {
    pub mwis_weight: i64,
    /// Number of optimal atom configurations.
    pub degeneracy: u128,
    /// Every optimal configuration in sorted order; `None` above the listing limit.
    pub ground_configs: Option<Vec<AtomSet>>,
    pub data_projections: BTreeSet<Assignment>,
    pub free_variables: Vec<Var>,
}

impl GroundReport {
    pub fn projected_degeneracy(&self) -> usize {
        self.data_projections.len()
    }
}

/// Exact ground manifold of a graph, projected onto `data` (atom of variable `i` at index `i`).
pub fn ground_manifold_of(graph: &AtomGraph, data: &[AtomId], opts: &VerifyOptions) -> Result<GroundReport, SolverError> {
    if data.len() > 64 {
        return Err(SolverError::TooManyDataAtoms {
            found: data.len(),
            limit: 64,
        });
    }
    let mut solver = MwisSolver::new(graph).with_budget(opts.node_budget);
    let sol = solver.solve_all(&AtomSet::full(graph.num_atoms()))?;
    let bit = |a: AtomId| data.iter().position(|&d| d == a).map(|i| i as u32);
    let data_projections = sol
        .family
        .project(&bit)
        .into_iter()
        .map(|m| Assignment::from_mask(m, data.len()))
        .collect();
    Ok(GroundReport {
        mwis_weight: sol.weight,
        degeneracy: sol.count(),
        ground_configs: sol.maximizers(opts.config_limit),
        data_projections,
        free_variables: Vec::new(),
    })
}

/// Runs the solver on a compiled graph and flags free variables.
pub fn ground_manifold(cg: &CompiledGraph, opts: &VerifyOptions) -> Result<GroundReport, SolverError> {
    let mut report = ground_manifold_of(&cg.graph, &cg.var_to_atom, opts)?;
    report.free_variables = cg.free_variables();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub equivalent: bool,
    pub hubo_minimum: i64,
    pub hubo_minima: BTreeSet<Assignment>,
    pub graph_projections: BTreeSet<Assignment>,
    /// Assignments in exactly one of the two sets.
    pub witnesses: Vec<Assignment>,
    pub mwis_weight: i64,
    /// `mwis_weight == -(min f - constant(f) + constant_shift)`.
    pub energy_identity: bool,
    pub degeneracy: u128,
}

/// Compares the polynomial's argmin set with the graph's ground projections.
pub fn verify_equivalence(
    p: &Polynomial,
    cg: &CompiledGraph,
    opts: &VerifyOptions,
) -> Result<EquivalenceCertificate, CompileError> {
    if p.names() != cg.names.as_slice() {
        return Err(CompileError::VariableMismatch);
    }
    let minima = p.brute_force_minima_bounded(opts.enumeration_limit)?;
    let report = ground_manifold(cg, opts)?;
    let witnesses: Vec<Assignment> = minima
        .argmin
        .symmetric_difference(&report.data_projections)
        .cloned()
        .collect();
    let energy_identity = report.mwis_weight == -(minima.value - p.constant() + cg.constant_shift);
    Ok(EquivalenceCertificate {
        equivalent: witnesses.is_empty(),
        hubo_minimum: minima.value,
        hubo_minima: minima.argmin,
        graph_projections: report.data_projections,
        witnesses,
        mwis_weight: report.mwis_weight,
        energy_identity,
        degeneracy: report.degeneracy,
    })
}

/// Removes the first clique edge of the first gadget with two or more auxiliary atoms.
/// Returns the removed edge. Used as a negative control.
pub fn drop_gadget_edge(cg: &mut CompiledGraph) -> Option<(AtomId, AtomId)> {
    let edge = cg.gadgets.iter().find_map(|g| {
        g.aux_atoms.iter().enumerate().find_map(|(i, &a)| {
            g.aux_atoms[i + 1..]
                .iter()
                .find(|&&b| cg.graph.has_edge(a, b))
                .map(|&b| (a, b))
        })
    })?;
    cg.graph.remove_edge(edge.0, edge.1);
    Some(edge)
}
