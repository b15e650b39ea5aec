//! JSON form of a compiled graph.
//!
//! ```json
//! {"variables": ["x1"], "atoms": [{"id": 0, "role": "data", "var": "x1", "weight": 1}],
//!  "edges": [[0, 4]], "gadgets": [...], "mode": "addressing", "constant_shift": -3}
//! ```

use serde::{Deserialize, Serialize};

use rydhubo_core::{AtomGraph, AtomId, AtomRole, CompiledGraph, Mode, Var};

use crate::error::FormatError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleTag {
    Data,
    Offset,
    Wire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub id: AtomId,
    pub role: RoleTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gadget: Option<usize>,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetJson {
    pub kind: String,
    pub ports: Vec<String>,
    pub weight: i64,
    pub atoms: Vec<AtomId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub variables: Vec<String>,
    pub atoms: Vec<AtomJson>,
    pub edges: Vec<[AtomId; 2]>,
    #[serde(default)]
    pub gadgets: Vec<GadgetJson>,
    pub mode: String,
    pub constant_shift: i64,
}

/// A graph read back from JSON: enough to simulate or re-verify its ground manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: AtomGraph,
    pub names: Vec<String>,
    pub var_to_atom: Vec<AtomId>,
    pub mode: Mode,
    pub constant_shift: i64,
}

pub fn mode_tag(mode: Mode) -> &'static str {
    match mode {
        Mode::LocalAddressing => "addressing",
        Mode::Duplication => "duplication",
    }
}

pub fn graph_to_json(cg: &CompiledGraph) -> GraphJson {
    let name = |v: Var| cg.names[v.index()].clone();
    let atoms = cg
        .graph
        .atoms()
        .iter()
        .map(|a| {
            let (role, var, gadget) = match a.role {
                AtomRole::Data(v) => (RoleTag::Data, Some(name(v)), None),
                AtomRole::Offset { var, gadget } => (RoleTag::Offset, Some(name(var)), Some(gadget)),
                AtomRole::Wire { gadget, .. } => (RoleTag::Wire, None, Some(gadget)),
            };
            AtomJson {
                id: a.id,
                role,
                var,
                gadget,
                weight: a.weight,
            }
        })
        .collect();
    let gadgets = cg
        .gadgets
        .iter()
        .map(|g| GadgetJson {
            kind: g.kind.label().to_string(),
            ports: g.ports.iter().map(|&v| name(v)).collect(),
            weight: g.weight,
            atoms: g.aux_atoms.clone(),
        })
        .collect();
    GraphJson {
        variables: cg.names.clone(),
        atoms,
        edges: cg.graph.edges().map(|(a, b)| [a, b]).collect(),
        gadgets,
        mode: mode_tag(cg.mode).to_string(),
        constant_shift: cg.constant_shift,
    }
}

pub fn write_graph_json(cg: &CompiledGraph) -> String {
    let mut s = serde_json::to_string_pretty(&graph_to_json(cg)).expect("graph JSON is always serializable");
    s.push('\n');
    s
}

impl GraphJson {
    pub fn load(&self) -> Result<LoadedGraph, FormatError> {
        let var_of = |name: &str| {
            self.variables
                .iter()
                .position(|v| v == name)
                .map(|i| Var(i as u32))
                .ok_or_else(|| FormatError::Graph(format!("unknown variable `{name}`")))
        };
        let mut graph = AtomGraph::new();
        let mut var_to_atom = vec![None; self.variables.len()];
        let mut ordinals: Vec<usize> = Vec::new();
        for (i, a) in self.atoms.iter().enumerate() {
            if a.id != i {
                return Err(FormatError::Graph(format!(
                    "atom ids must be 0..n in order, found {} at {i}",
                    a.id
                )));
            }
            let role = match a.role {
                RoleTag::Data => {
                    let name = a
                        .var
                        .as_deref()
                        .ok_or_else(|| FormatError::Graph(format!("data atom {i} has no var")))?;
                    let v = var_of(name)?;
                    if var_to_atom[v.index()].replace(i).is_some() {
                        return Err(FormatError::Graph(format!("variable `{name}` has two data atoms")));
                    }
                    AtomRole::Data(v)
                }
                RoleTag::Offset => {
                    let name = a
                        .var
                        .as_deref()
                        .ok_or_else(|| FormatError::Graph(format!("offset atom {i} has no var")))?;
                    AtomRole::Offset {
                        var: var_of(name)?,
                        gadget: a.gadget.unwrap_or(0),
                    }
                }
                RoleTag::Wire => {
                    let gadget = a.gadget.unwrap_or(0);
                    if ordinals.len() <= gadget {
                        ordinals.resize(gadget + 1, 0);
                    }
                    ordinals[gadget] += 1;
                    AtomRole::Wire {
                        gadget,
                        ordinal: ordinals[gadget] - 1,
                    }
                }
            };
            graph.add_atom(role, a.weight);
        }
        let n = graph.num_atoms();
        for &[a, b] in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(FormatError::Graph(format!("invalid edge [{a}, {b}]")));
            }
            graph.add_edge(a, b);
        }
        let var_to_atom = var_to_atom
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| FormatError::Graph(format!("variable `{}` has no data atom", self.variables[i]))))
            .collect::<Result<_, _>>()?;
        let mode = match self.mode.as_str() {
            "addressing" => Mode::LocalAddressing,
            "duplication" => Mode::Duplication,
            other => return Err(FormatError::Graph(format!("unknown mode `{other}`"))),
        };
        Ok(LoadedGraph {
            graph,
            names: self.variables.clone(),
            var_to_atom,
            mode,
            constant_shift: self.constant_shift,
        })
    }
}

pub fn read_graph_json(text: &str) -> Result<LoadedGraph, FormatError> {
    let json: GraphJson = serde_json::from_str(text)?;
    json.load()
}
