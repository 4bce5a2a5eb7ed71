//! Event and two-layer network data model.
//!
//! A [`TwoLayerNetwork`] couples a directed opposition layer with an
//! undirected collaboration layer over a shared node set. Layers are
//! immutable once built; every event is kept, including same-day
//! duplicates on one edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use chrono::NaiveDate;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Opaque node identifier (a company id in the patent setting).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(Arc<str>);

impl NodeId {
    pub fn new(id: impl AsRef<str>) -> Result<Self> {
        let id = id.as_ref();
        if id.is_empty() {
            return Err(Error::Layer("empty node id".into()));
        }
        Ok(NodeId(Arc::from(id)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for NodeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Integer days since 1970-01-01.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Timestamp(pub i64);

fn epoch() -> NaiveDate {
    NaiveDate::from_ymd_opt(1970, 1, 1).expect("valid epoch")
}

impl Timestamp {
    pub fn days(self) -> i64 {
        self.0
    }

    pub fn from_date(date: NaiveDate) -> Self {
        Timestamp((date - epoch()).num_days())
    }

    /// Parses an ISO-8601 calendar date (`YYYY-MM-DD`).
    pub fn parse_iso(s: &str) -> Option<Self> {
        NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d")
            .ok()
            .map(Self::from_date)
    }

    pub fn to_date(self) -> NaiveDate {
        epoch() + chrono::Duration::days(self.0)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_date().format("%Y-%m-%d"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerKind {
    Opposition,
    Collaboration,
}

impl LayerKind {
    pub fn is_directed(self) -> bool {
        matches!(self, LayerKind::Opposition)
    }
}

/// One time-stamped relation between two distinct nodes.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Event {
    pub source: NodeId,
    pub target: NodeId,
    pub t: Timestamp,
    pub layer: LayerKind,
}

impl Event {
    /// Builds an event, rejecting self-relations. Collaboration events are
    /// stored with `source < target`.
    pub fn new(source: NodeId, target: NodeId, t: Timestamp, layer: LayerKind) -> Result<Self> {
        if source == target {
            return Err(Error::SelfLoop(source.to_string()));
        }
        let (source, target) = if !layer.is_directed() && target < source {
            (target, source)
        } else {
            (source, target)
        };
        Ok(Event {
            source,
            target,
            t,
            layer,
        })
    }

    pub fn opposition(source: &str, target: &str, day: i64) -> Result<Self> {
        Event::new(
            NodeId::new(source)?,
            NodeId::new(target)?,
            Timestamp(day),
            LayerKind::Opposition,
        )
    }

    pub fn collaboration(a: &str, b: &str, day: i64) -> Result<Self> {
        Event::new(
            NodeId::new(a)?,
            NodeId::new(b)?,
            Timestamp(day),
            LayerKind::Collaboration,
        )
    }

    fn sort_key(&self) -> (Timestamp, &NodeId, &NodeId) {
        (self.t, &self.source, &self.target)
    }

    pub fn touches(&self, node: &NodeId) -> bool {
        &self.source == node || &self.target == node
    }
}

pub type StaticEdge = (NodeId, NodeId);

/// A time-sorted event list with a per-edge timeline index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalLayer {
    kind: LayerKind,
    events: Vec<Event>,
    edge_index: BTreeMap<StaticEdge, Vec<Timestamp>>,
    nodes: BTreeSet<NodeId>,
}

impl TemporalLayer {
    /// Sorts and indexes `events`. Every event must belong to `kind`.
    pub fn new(kind: LayerKind, mut events: Vec<Event>) -> Result<Self> {
        for e in &events {
            if e.layer != kind {
                return Err(Error::Layer(format!("{:?} event in {:?} layer", e.layer, kind)));
            }
            if e.source == e.target {
                return Err(Error::SelfLoop(e.source.to_string()));
            }
            if !kind.is_directed() && e.target < e.source {
                return Err(Error::Layer(format!(
                    "collaboration event ({}, {}) not normalized",
                    e.source, e.target
                )));
            }
        }
        events.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let mut edge_index: BTreeMap<StaticEdge, Vec<Timestamp>> = BTreeMap::new();
        let mut nodes = BTreeSet::new();
        for e in &events {
            edge_index
                .entry((e.source.clone(), e.target.clone()))
                .or_default()
                .push(e.t);
            nodes.insert(e.source.clone());
            nodes.insert(e.target.clone());
        }
        Ok(TemporalLayer {
            kind,
            events,
            edge_index,
            nodes,
        })
    }

    pub fn empty(kind: LayerKind) -> Self {
        TemporalLayer {
            kind,
            events: Vec::new(),
            edge_index: BTreeMap::new(),
            nodes: BTreeSet::new(),
        }
    }

    /// Rebuilds a layer from per-edge timelines.
    pub fn from_timelines(
        kind: LayerKind,
        timelines: impl IntoIterator<Item = (StaticEdge, Vec<Timestamp>)>,
        nodes: &BTreeSet<NodeId>,
    ) -> Result<Self> {
        let mut events = Vec::new();
        for ((s, t), times) in timelines {
            for day in times {
                events.push(Event::new(s.clone(), t.clone(), day, kind)?);
            }
        }
        Ok(TemporalLayer::new(kind, events)?.with_nodes(nodes.iter().cloned()))
    }

    /// Adds isolated nodes to the layer's node universe.
    pub fn with_nodes(mut self, nodes: impl IntoIterator<Item = NodeId>) -> Self {
        self.nodes.extend(nodes);
        self
    }

    pub fn kind(&self) -> LayerKind {
        self.kind
    }

    pub fn is_directed(&self) -> bool {
        self.kind.is_directed()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Static edge to its sorted timestamp list.
    pub fn edge_index(&self) -> &BTreeMap<StaticEdge, Vec<Timestamp>> {
        &self.edge_index
    }

    pub fn timeline(&self, source: &NodeId, target: &NodeId) -> Option<&[Timestamp]> {
        self.edge_index
            .get(&(source.clone(), target.clone()))
            .map(Vec::as_slice)
    }

    /// The node universe: event endpoints plus any registered isolated nodes.
    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn active_nodes(&self) -> BTreeSet<NodeId> {
        self.edge_index
            .keys()
            .flat_map(|(s, t)| [s.clone(), t.clone()])
            .collect()
    }

    /// `[min t, max t]`, or `None` for an empty layer.
    pub fn span(&self) -> Option<(Timestamp, Timestamp)> {
        Some((self.events.first()?.t, self.events.last()?.t))
    }
}

/// Shared node set with an opposition layer, a collaboration layer and
/// optional per-node patent counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLayerNetwork {
    nodes: BTreeSet<NodeId>,
    opposition: TemporalLayer,
    collaboration: TemporalLayer,
    attributes: Option<BTreeMap<NodeId, u64>>,
}

impl TwoLayerNetwork {
    pub fn new(
        opposition: TemporalLayer,
        collaboration: TemporalLayer,
        attributes: Option<BTreeMap<NodeId, u64>>,
    ) -> Result<Self> {
        if opposition.kind() != LayerKind::Opposition {
            return Err(Error::Layer("opposition layer must be directed".into()));
        }
        if collaboration.kind() != LayerKind::Collaboration {
            return Err(Error::Layer("collaboration layer must be undirected".into()));
        }
        let mut nodes: BTreeSet<NodeId> = opposition.nodes().clone();
        nodes.extend(collaboration.nodes().iter().cloned());
        if let Some(attrs) = &attributes {
            nodes.extend(attrs.keys().cloned());
        }
        let opposition = opposition.with_nodes(nodes.iter().cloned());
        let collaboration = collaboration.with_nodes(nodes.iter().cloned());
        Ok(TwoLayerNetwork {
            nodes,
            opposition,
            collaboration,
            attributes,
        })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn opposition(&self) -> &TemporalLayer {
        &self.opposition
    }

    pub fn collaboration(&self) -> &TemporalLayer {
        &self.collaboration
    }

    pub fn has_attributes(&self) -> bool {
        self.attributes.is_some()
    }

    pub fn attributes(&self) -> Result<&BTreeMap<NodeId, u64>> {
        self.attributes.as_ref().ok_or(Error::MissingAttributes)
    }

    /// `None` when the node's attribute is unknown.
    pub fn attribute(&self, node: &NodeId) -> Option<u64> {
        self.attributes.as_ref()?.get(node).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerSummary {
    pub layer: LayerKind,
    /// Size of the shared node set.
    pub nodes: usize,
    /// Nodes incident to at least one event of this layer.
    pub active_nodes: usize,
    pub edges: usize,
    pub events: usize,
    pub start: Option<Timestamp>,
    pub end: Option<Timestamp>,
}

impl LayerSummary {
    pub fn of(layer: &TemporalLayer) -> Self {
        let span = layer.span();
        LayerSummary {
            layer: layer.kind(),
            nodes: layer.nodes().len(),
            active_nodes: layer.active_nodes().len(),
            edges: layer.edge_index().len(),
            events: layer.len(),
            start: span.map(|s| s.0),
            end: span.map(|s| s.1),
        }
    }
}

pub fn layer_summary(net: &TwoLayerNetwork) -> [LayerSummary; 2] {
    [
        LayerSummary::of(net.opposition()),
        LayerSummary::of(net.collaboration()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opp(events: &[(&str, &str, i64)]) -> TemporalLayer {
        let ev = events
            .iter()
            .map(|&(s, t, d)| Event::opposition(s, t, d).unwrap())
            .collect();
        TemporalLayer::new(LayerKind::Opposition, ev).unwrap()
    }

    #[test]
    fn date_arithmetic() {
        assert_eq!(Timestamp::parse_iso("1981-02-25"), Some(Timestamp(4073)));
        assert_eq!(Timestamp::parse_iso("1970-01-01"), Some(Timestamp(0)));
        assert_eq!(Timestamp::parse_iso("1969-12-31"), Some(Timestamp(-1)));
        assert_eq!(Timestamp(4073).to_string(), "1981-02-25");
        assert!(Timestamp::parse_iso("1981-02-30").is_none());
    }

    #[test]
    fn collaboration_is_normalized() {
        let e = Event::collaboration("B", "A", 10).unwrap();
        assert_eq!(e.source.as_str(), "A");
        assert_eq!(e.target.as_str(), "B");
        let d = Event::opposition("B", "A", 10).unwrap();
        assert_eq!(d.source.as_str(), "B");
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(Event::opposition("A", "A", 0), Err(Error::SelfLoop(_))));
    }

    #[test]
    fn sorted_and_indexed() {
        let l = opp(&[("B", "C", 3), ("A", "B", 1), ("B", "A", 3), ("A", "B", 2)]);
        let days: Vec<i64> = l.events().iter().map(|e| e.t.0).collect();
        assert_eq!(days, vec![1, 2, 3, 3]);
        // tie at day 3 broken by (source, target)
        assert_eq!(l.events()[2].target.as_str(), "A");
        let total: usize = l.edge_index().values().map(Vec::len).sum();
        assert_eq!(total, l.len());
        let ab = l
            .timeline(&NodeId::new("A").unwrap(), &NodeId::new("B").unwrap())
            .unwrap();
        assert_eq!(ab, &[Timestamp(1), Timestamp(2)]);
    }

    #[test]
    fn network_node_union() {
        let o = opp(&[("A", "B", 1)]);
        let c = TemporalLayer::new(
            LayerKind::Collaboration,
            vec![Event::collaboration("B", "C", 2).unwrap()],
        )
        .unwrap();
        let attrs = BTreeMap::from([(NodeId::new("D").unwrap(), 5)]);
        let net = TwoLayerNetwork::new(o, c, Some(attrs)).unwrap();
        let names: Vec<&str> = net.nodes().iter().map(NodeId::as_str).collect();
        assert_eq!(names, vec!["A", "B", "C", "D"]);
        assert_eq!(net.attribute(&NodeId::new("A").unwrap()), None);
        assert_eq!(net.attribute(&NodeId::new("D").unwrap()), Some(5));
    }

    #[test]
    fn empty_network_is_valid() {
        let net = TwoLayerNetwork::new(
            TemporalLayer::empty(LayerKind::Opposition),
            TemporalLayer::empty(LayerKind::Collaboration),
            None,
        )
        .unwrap();
        assert!(net.nodes().is_empty());
        let [o, c] = layer_summary(&net);
        assert_eq!((o.edges, o.events, o.start), (0, 0, None));
        assert_eq!((c.edges, c.events, c.end), (0, 0, None));
        assert!(matches!(net.attributes(), Err(Error::MissingAttributes)));
    }

    #[test]
    fn multi_event_edge_summary() {
        let s = LayerSummary::of(&opp(&[("A", "B", 1), ("A", "B", 2)]));
        assert_eq!((s.edges, s.events), (1, 2));
    }

    #[test]
    fn wrong_layer_kind_rejected() {
        let o = opp(&[("A", "B", 1)]);
        let r = TwoLayerNetwork::new(o.clone(), o, None);
        assert!(r.is_err());
    }
}
