use std::fmt::Write;

use super::{AgentSet, ColoredGraph};

#[derive(Clone, Debug)]
pub struct DotOptions {
    pub name: String,
    /// Draw `∅` edges (grey, bold). Off hides them, as figures usually do.
    pub show_empty_edges: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        Self {
            name: "G".to_owned(),
            show_empty_edges: true,
        }
    }
}

/// Renders `graph` as an undirected DOT graph.
///
/// Colour-1 nodes are green with a double border, colour-0 nodes red with a
/// single border. Edges `{1}` are blue dotted, `{2}` red dashed, larger sets
/// purple solid, and `∅` grey bold. Every edge is labelled with its agent set.
pub fn to_dot(graph: &ColoredGraph, options: &DotOptions) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(&options.name)).unwrap();
    for v in 0..graph.node_count() {
        let (colour, peripheries) = if graph.colour(v) { ("green", 2) } else { ("red", 1) };
        writeln!(
            out,
            "  n{v} [label={}, color={colour}, peripheries={peripheries}];",
            quote(&graph.key(v).to_string())
        )
        .unwrap();
    }
    for (u, v, colour) in graph.pairs() {
        if colour.is_empty() && !options.show_empty_edges {
            continue;
        }
        writeln!(
            out,
            "  n{u} -- n{v} [{}, label={}];",
            edge_style(colour),
            quote(&colour.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn edge_style(colour: AgentSet) -> &'static str {
    if colour.is_empty() {
        "style=bold, color=gray"
    } else if colour == AgentSet::singleton(0) {
        "style=dotted, color=blue"
    } else if colour == AgentSet::singleton(1) {
        "style=dashed, color=red"
    } else {
        "style=solid, color=purple"
    }
}

fn quote(text: &str) -> String {
    let mut quoted = String::with_capacity(text.len() + 2);
    quoted.push('"');
    for c in text.chars() {
        match c {
            '"' => quoted.push_str("\\\""),
            '\\' => quoted.push_str("\\\\"),
            '\n' => quoted.push_str("\\n"),
            c => quoted.push(c),
        }
    }
    quoted.push('"');
    quoted
}
