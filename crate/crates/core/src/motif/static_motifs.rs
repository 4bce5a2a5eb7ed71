//! Static projection of a directed layer and its 2-edge pattern census.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::{NodeId, TemporalLayer};
use crate::table::Table;

/// Distinct directed edges of a layer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StaticGraph {
    edges: BTreeSet<(NodeId, NodeId)>,
}

impl StaticGraph {
    pub fn from_edges(edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        StaticGraph {
            edges: edges.into_iter().filter(|(a, b)| a != b).collect(),
        }
    }

    pub fn edges(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.edges
    }

    pub fn contains(&self, a: &NodeId, b: &NodeId) -> bool {
        self.edges.contains(&(a.clone(), b.clone()))
    }

    fn out_lists(&self) -> BTreeMap<&NodeId, Vec<&NodeId>> {
        let mut m: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
        for (a, b) in &self.edges {
            m.entry(a).or_default().push(b);
        }
        m
    }

    fn in_lists(&self) -> BTreeMap<&NodeId, Vec<&NodeId>> {
        let mut m: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
        for (a, b) in &self.edges {
            m.entry(b).or_default().push(a);
        }
        m
    }
}

pub fn static_projection(layer: &TemporalLayer) -> StaticGraph {
    StaticGraph {
        edges: layer.edge_index().keys().cloned().collect(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StaticPattern {
    Mutual,
    InBurst,
    OutBurst,
    Path,
}

impl StaticPattern {
    pub const ALL: [StaticPattern; 4] = [
        StaticPattern::Mutual,
        StaticPattern::InBurst,
        StaticPattern::OutBurst,
        StaticPattern::Path,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StaticPattern::Mutual => "mutual",
            StaticPattern::InBurst => "in-burst",
            StaticPattern::OutBurst => "out-burst",
            StaticPattern::Path => "path",
        }
    }

    /// Pattern of an unordered pair of distinct edges, if they touch.
    pub fn of(e: (&NodeId, &NodeId), f: (&NodeId, &NodeId)) -> Option<StaticPattern> {
        let ((a, b), (c, d)) = (e, f);
        if a == d && b == c {
            Some(StaticPattern::Mutual)
        } else if b == d {
            Some(StaticPattern::InBurst)
        } else if a == c {
            Some(StaticPattern::OutBurst)
        } else if b == c || a == d {
            Some(StaticPattern::Path)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StaticCensus {
    pub mutual: u64,
    pub in_burst: u64,
    pub out_burst: u64,
    pub path: u64,
}

impl StaticCensus {
    pub fn get(&self, p: StaticPattern) -> u64 {
        match p {
            StaticPattern::Mutual => self.mutual,
            StaticPattern::InBurst => self.in_burst,
            StaticPattern::OutBurst => self.out_burst,
            StaticPattern::Path => self.path,
        }
    }

    /// `pattern,count`
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["pattern", "count"]);
        for p in StaticPattern::ALL {
            t.push(vec![p.label().into(), self.get(p).into()]);
        }
        t
    }
}

fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Counts unordered pairs of distinct edges by pattern, from degrees.
pub fn static_census(graph: &StaticGraph) -> StaticCensus {
    let outs = graph.out_lists();
    let ins = graph.in_lists();
    let mutual = graph
        .edges
        .iter()
        .filter(|(a, b)| a < b && graph.contains(b, a))
        .count() as u64;
    let out_burst = outs.values().map(|l| choose2(l.len())).sum();
    let in_burst = ins.values().map(|l| choose2(l.len())).sum();
    // x -> v -> y with x != y; each mutual dyad yields two closed walks
    let walks: u64 = ins
        .iter()
        .map(|(v, l)| l.len() as u64 * outs.get(v).map_or(0, |o| o.len() as u64))
        .sum();
    StaticCensus {
        mutual,
        in_burst,
        out_burst,
        path: walks - 2 * mutual,
    }
}

/// A single static 2-edge pattern occurrence with its nodes by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StaticInstance {
    Mutual {
        nodes: [NodeId; 2],
    },
    InBurst {
        center: NodeId,
        leaves: [NodeId; 2],
    },
    OutBurst {
        center: NodeId,
        leaves: [NodeId; 2],
    },
    Path {
        source: NodeId,
        center: NodeId,
        sink: NodeId,
    },
}

/// Visits every static pattern occurrence once.
pub fn for_each_static_instance(graph: &StaticGraph, mut f: impl FnMut(StaticInstance)) {
    let outs = graph.out_lists();
    let ins = graph.in_lists();
    for (a, b) in &graph.edges {
        if a < b && graph.contains(b, a) {
            f(StaticInstance::Mutual {
                nodes: [a.clone(), b.clone()],
            });
        }
    }
    for (center, leaves) in &ins {
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                f(StaticInstance::InBurst {
                    center: (*center).clone(),
                    leaves: [leaves[i].clone(), leaves[j].clone()],
                });
            }
        }
    }
    for (center, leaves) in &outs {
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                f(StaticInstance::OutBurst {
                    center: (*center).clone(),
                    leaves: [leaves[i].clone(), leaves[j].clone()],
                });
            }
        }
    }
    for (center, sources) in &ins {
        let Some(sinks) = outs.get(center) else { continue };
        for s in sources {
            for t in sinks {
                if s != t {
                    f(StaticInstance::Path {
                        source: (*s).clone(),
                        center: (*center).clone(),
                        sink: (*t).clone(),
                    });
                }
            }
        }
    }
}
