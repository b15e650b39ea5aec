//! Graphviz rendering: data atoms as boxes, auxiliary atoms as circles colored by gadget.

use std::fmt::Write;

use rydhubo_core::{AtomRole, CompiledGraph};

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

pub fn write_dot(cg: &CompiledGraph) -> String {
    let mut out = String::from("graph compiled {\n  node [fontname=\"Helvetica\"];\n");
    for atom in cg.graph.atoms() {
        let (label, attrs) = match atom.role {
            AtomRole::Data(v) => (cg.names[v.index()].clone(), String::from("shape=box")),
            AtomRole::Offset { var, gadget } => (
                format!("o{}", cg.names[var.index()]),
                format!("shape=circle, color=\"{}\"", PALETTE[gadget % PALETTE.len()]),
            ),
            AtomRole::Wire { gadget, ordinal } => (
                format!("g{gadget}.{ordinal}"),
                format!("shape=circle, color=\"{}\"", PALETTE[gadget % PALETTE.len()]),
            ),
        };
        writeln!(out, "  a{} [label=\"{}\\nw={}\", {}];", atom.id, label, atom.weight, attrs).unwrap();
    }
    for (a, b) in cg.graph.edges() {
        writeln!(out, "  a{a} -- a{b};").unwrap();
    }
    out.push_str("}\n");
    out
}
