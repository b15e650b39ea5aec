//! Serializable summaries written by the command-line tool.
//!
//! Reports depend only on inputs and flags; wall-clock timings go to the log.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use rydhubo_core::{CompiledGraph, EquivalenceCertificate, PairRule};

use crate::graph_json::mode_tag;

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn pair_rule_tag(rule: PairRule) -> &'static str {
    match rule {
        PairRule::LastTwo => "last-two",
        PairRule::FirstTwo => "first-two",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetSummary {
    pub kind: String,
    pub order: usize,
    pub ports: Vec<String>,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompileStats {
    pub variables: usize,
    pub atoms: usize,
    pub edges: usize,
    pub mode: String,
    pub pair_rule: String,
    pub data_weights: BTreeMap<String, i64>,
    /// Hyperedges from the lowering, before duplication.
    pub gadgets: Vec<GadgetSummary>,
    pub offsets: BTreeMap<String, i64>,
    pub constant_shift: i64,
}

impl CompileStats {
    pub fn new(cg: &CompiledGraph, rule: PairRule) -> Self {
        let named = |ws: &[i64]| {
            cg.names
                .iter()
                .zip(ws)
                .filter(|(_, &w)| w != 0)
                .map(|(n, &w)| (n.clone(), w))
                .collect()
        };
        CompileStats {
            variables: cg.num_vars(),
            atoms: cg.graph.num_atoms(),
            edges: cg.graph.num_edges(),
            mode: mode_tag(cg.mode).to_string(),
            pair_rule: pair_rule_tag(rule).to_string(),
            data_weights: cg.names.iter().cloned().zip(cg.plan.data_weights.iter().copied()).collect(),
            gadgets: cg
                .plan
                .gadgets
                .iter()
                .map(|g| GadgetSummary {
                    kind: g.kind.label().to_string(),
                    order: g.order(),
                    ports: g.ports.iter().map(|v| cg.names[v.index()].clone()).collect(),
                    weight: g.weight,
                })
                .collect(),
            offsets: named(&cg.plan.offset_weights),
            constant_shift: cg.constant_shift,
        }
    }

    /// `32/36/27/16/16/4/32`: data weights in variable order, then gadget weights.
    pub fn weight_line(&self, names: &[String]) -> String {
        names
            .iter()
            .map(|n| self.data_weights[n])
            .chain(self.gadgets.iter().map(|g| g.weight))
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn text(&self, names: &[String]) -> String {
        let mut lines = vec![format!(
            "{} variables, {} atoms, {} edges ({} mode, {} pairs), constant shift {}",
            self.variables, self.atoms, self.edges, self.mode, self.pair_rule, self.constant_shift
        )];
        for n in names {
            lines.push(format!("  data {n}: {}", self.data_weights[n]));
        }
        for g in &self.gadgets {
            lines.push(format!("  {}({}) [{}]: {}", g.kind, g.order, g.ports.join(" "), g.weight));
        }
        for (n, w) in &self.offsets {
            lines.push(format!("  offset {n}: {w}"));
        }
        if !names.is_empty() {
            lines.push(format!("  weights {}", self.weight_line(names)));
        }
        lines.join("\n") + "\n"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub input_sha256: String,
    pub variables: Vec<String>,
    pub equivalent: bool,
    pub hubo_minimum: i64,
    pub hubo_minima: Vec<String>,
    pub graph_projections: Vec<String>,
    pub witnesses: Vec<String>,
    pub witness_count: usize,
    pub mwis_weight: i64,
    pub energy_identity: bool,
    pub degeneracy: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injected_fault: Option<[usize; 2]>,
    pub compile: CompileStats,
}

impl CertificateReport {
    pub fn new(
        input: &[u8],
        cg: &CompiledGraph,
        rule: PairRule,
        cert: &EquivalenceCertificate,
        witness_limit: usize,
        injected_fault: Option<(usize, usize)>,
    ) -> Self {
        CertificateReport {
            input_sha256: sha256_hex(input),
            variables: cg.names.clone(),
            equivalent: cert.equivalent,
            hubo_minimum: cert.hubo_minimum,
            hubo_minima: cert.hubo_minima.iter().map(ToString::to_string).collect(),
            graph_projections: cert.graph_projections.iter().map(ToString::to_string).collect(),
            witnesses: cert.witnesses.iter().take(witness_limit).map(ToString::to_string).collect(),
            witness_count: cert.witnesses.len(),
            mwis_weight: cert.mwis_weight,
            energy_identity: cert.energy_identity,
            degeneracy: cert.degeneracy,
            injected_fault: injected_fault.map(|(a, b)| [a, b]),
            compile: CompileStats::new(cg, rule),
        }
    }

    pub fn text(&self) -> String {
        let verdict = if self.equivalent { "equivalent" } else { "NOT equivalent" };
        let mut s = format!(
            "{verdict}: minimum {} at {{{}}}, graph ground projections {{{}}}, MWIS weight {}, degeneracy {}\n",
            self.hubo_minimum,
            self.hubo_minima.join(", "),
            self.graph_projections.join(", "),
            self.mwis_weight,
            self.degeneracy
        );
        if !self.witnesses.is_empty() {
            s += &format!("witnesses ({} total): {}\n", self.witness_count, self.witnesses.join(", "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroundStateSummary {
    pub seed: u64,
    pub energy: f64,
    pub degeneracy: usize,
    pub gap: Option<f64>,
    pub dominant_projection: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub graph_sha256: String,
    pub atoms: usize,
    pub steps: usize,
    pub duration: f64,
    pub blockade: f64,
    pub targets: Vec<String>,
    pub success_probability: f64,
    pub norm_drift: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_state: Option<GroundStateSummary>,
}

impl SimulationSummary {
    pub fn text(&self) -> String {
        let mut s = format!(
            "{} atoms, T = {}, {} steps: success probability {:.6} on {{{}}} (norm drift {:.1e})\n",
            self.atoms,
            self.duration,
            self.steps,
            self.success_probability,
            self.targets.join(", "),
            self.norm_drift
        );
        if let Some(g) = &self.ground_state {
            s += &format!(
                "ground state (seed {}): energy {:.9}, degeneracy {}, dominant data {}\n",
                g.seed, g.energy, g.degeneracy, g.dominant_projection
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
