//! Exact conservation laws of each null model.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::NullModelKind;
use crate::model::{NodeId, TemporalLayer, Timestamp};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// Same node universe; all endpoints inside it.
    NodeSet,
    DistinctEdgeCount,
    /// Multiset of per-edge timestamp lists.
    TimelineMultiset,
    /// No self-loops.
    Simple,
    /// Static in- and out-degree of every node.
    DegreeSequence,
    StaticEdgeSet,
    EdgeEventCounts,
    /// Every timestamp inside the original `[min t, max t]`.
    WithinWindow,
    FirstLastFixed,
    /// Per-edge multiset of inter-event gaps.
    GapMultiset,
    TimestampMultiset,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::NodeSet => "node-set",
            Law::DistinctEdgeCount => "distinct-edge-count",
            Law::TimelineMultiset => "timeline-multiset",
            Law::Simple => "simple",
            Law::DegreeSequence => "degree-sequence",
            Law::StaticEdgeSet => "static-edge-set",
            Law::EdgeEventCounts => "edge-event-counts",
            Law::WithinWindow => "within-window",
            Law::FirstLastFixed => "first-last-fixed",
            Law::GapMultiset => "gap-multiset",
            Law::TimestampMultiset => "timestamp-multiset",
        }
    }

    pub fn for_model(kind: NullModelKind) -> &'static [Law] {
        match kind {
            NullModelKind::Ls => &[Law::NodeSet, Law::DistinctEdgeCount, Law::TimelineMultiset, Law::Simple],
            NullModelKind::Dcls => &[Law::NodeSet, Law::DegreeSequence, Law::TimelineMultiset, Law::Simple],
            NullModelKind::Wts => &[Law::StaticEdgeSet, Law::EdgeEventCounts, Law::WithinWindow],
            NullModelKind::Is => &[Law::StaticEdgeSet, Law::FirstLastFixed, Law::GapMultiset],
            NullModelKind::Ts => &[Law::StaticEdgeSet, Law::EdgeEventCounts, Law::TimestampMultiset],
        }
    }

    pub fn holds(self, original: &TemporalLayer, shuffled: &TemporalLayer) -> bool {
        let (a, b) = (original.edge_index(), shuffled.edge_index());
        match self {
            Law::NodeSet => original.nodes() == shuffled.nodes() && shuffled.active_nodes().is_subset(original.nodes()),
            Law::DistinctEdgeCount => a.len() == b.len(),
            Law::TimelineMultiset => sorted(a.values().cloned()) == sorted(b.values().cloned()),
            Law::Simple => shuffled.events().iter().all(|e| e.source != e.target),
            Law::DegreeSequence => degrees(original) == degrees(shuffled),
            Law::StaticEdgeSet => a.keys().eq(b.keys()),
            Law::EdgeEventCounts => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((ea, ta), (eb, tb))| ea == eb && ta.len() == tb.len())
            }
            Law::WithinWindow => match original.span() {
                Some((lo, hi)) => shuffled.events().iter().all(|e| lo <= e.t && e.t <= hi),
                None => shuffled.is_empty(),
            },
            Law::FirstLastFixed => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((ea, ta), (eb, tb))| ea == eb && ta.first() == tb.first() && ta.last() == tb.last())
            }
            Law::GapMultiset => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((ea, ta), (eb, tb))| ea == eb && gaps(ta) == gaps(tb))
            }
            Law::TimestampMultiset => {
                sorted(original.events().iter().map(|e| e.t)) == sorted(shuffled.events().iter().map(|e| e.t))
            }
        }
    }
}

fn sorted<T: Ord>(it: impl Iterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = it.collect();
    v.sort();
    v
}

fn gaps(times: &[Timestamp]) -> Vec<i64> {
    sorted(times.windows(2).map(|w| w[1].0 - w[0].0))
}

fn degrees(layer: &TemporalLayer) -> BTreeMap<NodeId, (usize, usize)> {
    let mut d: BTreeMap<NodeId, (usize, usize)> = BTreeMap::new();
    for (s, t) in layer.edge_index().keys() {
        d.entry(s.clone()).or_default().0 += 1;
        d.entry(t.clone()).or_default().1 += 1;
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConservationReport {
    pub kind: NullModelKind,
    pub laws: Vec<(Law, bool)>,
}

impl ConservationReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|(_, ok)| *ok)
    }

    pub fn failed(&self) -> BTreeSet<Law> {
        self.laws.iter().filter(|(_, ok)| !ok).map(|(l, _)| *l).collect()
    }
}

/// Checks every conservation law of `kind` between two layers.
pub fn verify_conservation(
    original: &TemporalLayer,
    shuffled: &TemporalLayer,
    kind: NullModelKind,
) -> ConservationReport {
    ConservationReport {
        kind,
        laws: Law::for_model(kind)
            .iter()
            .map(|&law| (law, law.holds(original, shuffled)))
            .collect(),
    }
}
