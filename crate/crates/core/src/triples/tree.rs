//! Breadth-first orbit of the root pair `<0,1,1>` under `M1..M5`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{apply_to_pair, AssociatedPair, Generator};
use crate::error::Result;
use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub generator: Generator,
}

/// Nodes are stored in discovery order; node 0 is the root.
#[derive(Debug, Clone, Default)]
pub struct Tree {
    pub c_max: i64,
    pub nodes: Vec<AssociatedPair>,
    pub edges: Vec<Edge>,
    /// Edges reaching an already discovered node, other than the root's
    /// own repeated children and its `M1` self-loop. Empty whenever the action is free up to
    /// `c_max`.
    pub revisits: Vec<Edge>,
}

impl Tree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, pair: &AssociatedPair) -> Option<usize> {
        self.nodes.iter().position(|n| n == pair)
    }

    pub fn has_edge(&self, from: &AssociatedPair, g: Generator, to: &AssociatedPair) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(f), Some(t)) => self.edges.iter().any(|e| e.from == f && e.to == t && e.generator == g),
            _ => false,
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph pairs {\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  \"{}\";", n.label());
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.nodes[e.from].label(),
                self.nodes[e.to].label(),
                e.generator
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self) -> TreeExport {
        TreeExport {
            c_max: self.c_max,
            nodes: self.nodes.iter().map(|n| n.label()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| ExportEdge {
                    from: self.nodes[e.from].label(),
                    to: self.nodes[e.to].label(),
                    label: e.generator.to_string(),
                })
                .collect(),
        }
    }
}

/// Serializable form of a [`Tree`]: nodes are `"a,b,c"` of the upper triple.
#[derive(Debug, Clone, Serialize)]
pub struct TreeExport {
    pub c_max: i64,
    pub nodes: Vec<String>,
    pub edges: Vec<ExportEdge>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportEdge {
    pub from: String,
    pub to: String,
    pub label: String,
}

/// Level-synchronous BFS from `<0,1,1>`, discarding children with
/// `c > c_max`. Each frontier is expanded in parallel; the node set is
/// merged sequentially so discovery order is deterministic.
pub fn generate_tree(c_max: i64) -> Result<Tree> {
    let root = AssociatedPair::root();
    let mut tree = Tree { c_max, ..Tree::default() };
    if c_max < 1 {
        return Ok(tree);
    }
    tree.nodes.push(root);
    let mut index: HashMap<AssociatedPair, usize> = HashMap::from([(root, 0)]);
    // node -> parent that first produced it
    let mut discovered_by: Vec<usize> = vec![0];
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let parents: Vec<(usize, AssociatedPair)> = frontier.iter().map(|&i| (i, tree.nodes[i])).collect();
        let expanded = parallel::map(&parents, |&(i, pair)| {
            Generator::PAIR_ACTION
                .iter()
                .map(|&g| apply_to_pair(g, &pair).map(|child| (i, g, child)))
                .collect::<Result<Vec<_>>>()
        });
        let mut next = Vec::new();
        for children in expanded {
            for (from, generator, child) in children? {
                if child.c() > c_max {
                    continue;
                }
                let to = match index.get(&child) {
                    Some(&to) => {
                        let self_loop = to == from;
                        // Only the root may reach the same child twice.
                        let produced_elsewhere = !self_loop && (discovered_by[to] != from || from != 0);
                        let edge = Edge { from, to, generator };
                        if (self_loop && from != 0) || produced_elsewhere {
                            tree.revisits.push(edge);
                        }
                        to
                    }
                    None => {
                        let to = tree.nodes.len();
                        tree.nodes.push(child);
                        discovered_by.push(from);
                        index.insert(child, to);
                        next.push(to);
                        to
                    }
                };
                tree.edges.push(Edge { from, to, generator });
            }
        }
        frontier = next;
    }
    Ok(tree)
}
