//! Motif class taxonomy: six 2-event pair classes and the 36 ordered
//! pair-of-pairs triple classes (4 on two nodes, 32 on three).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PairClass {
    /// Same source, same target.
    R,
    /// Reversed direction.
    P,
    /// Shared target, distinct sources.
    I,
    /// Shared source, distinct targets.
    O,
    /// Second source is the first target.
    C,
    /// Second target is the first source.
    W,
}

impl PairClass {
    pub const ALL: [PairClass; 6] = [
        PairClass::R,
        PairClass::P,
        PairClass::I,
        PairClass::O,
        PairClass::C,
        PairClass::W,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            PairClass::R => "R",
            PairClass::P => "P",
            PairClass::I => "I",
            PairClass::O => "O",
            PairClass::C => "C",
            PairClass::W => "W",
        }
    }

    pub fn node_count(self) -> usize {
        match self {
            PairClass::R | PairClass::P => 2,
            _ => 3,
        }
    }

    /// Classifies an ordered pair of directed edges; `None` when the edges
    /// share no node.
    #[inline]
    pub fn of<N: PartialEq>(first: (N, N), second: (N, N)) -> Option<PairClass> {
        let (s1, t1) = first;
        let (s2, t2) = second;
        Some(if s1 == s2 && t1 == t2 {
            PairClass::R
        } else if s1 == t2 && t1 == s2 {
            PairClass::P
        } else if t1 == t2 {
            PairClass::I
        } else if s1 == s2 {
            PairClass::O
        } else if s2 == t1 {
            PairClass::C
        } else if t2 == s1 {
            PairClass::W
        } else {
            return None;
        })
    }

    /// Canonical edge on node labels {0, 1, 2} for the second event of a
    /// pair whose first event is `(a, b)` and whose remaining node is `c`.
    fn follow(self, (a, b): (u8, u8), c: u8) -> (u8, u8) {
        match self {
            PairClass::R => (a, b),
            PairClass::P => (b, a),
            PairClass::I => (c, b),
            PairClass::O => (a, c),
            PairClass::C => (b, c),
            PairClass::W => (c, a),
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PairClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PairClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Classify(format!("unknown pair class '{s}'")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleCategory {
    TwoNode,
    Wedge,
    AcyclicTriangle,
    CyclicTriangle,
}

impl TripleCategory {
    pub fn label(self) -> &'static str {
        match self {
            TripleCategory::TwoNode => "two-node",
            TripleCategory::Wedge => "wedge",
            TripleCategory::AcyclicTriangle => "acyclic-triangle",
            TripleCategory::CyclicTriangle => "cyclic-triangle",
        }
    }
}

/// A 3-event class: the pair class of events (1, 2) followed by that of
/// events (2, 3).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TripleClass {
    pub first: PairClass,
    pub second: PairClass,
}

impl TripleClass {
    pub fn new(first: PairClass, second: PairClass) -> Self {
        TripleClass { first, second }
    }

    pub fn all() -> impl Iterator<Item = TripleClass> {
        PairClass::ALL
            .into_iter()
            .flat_map(|a| PairClass::ALL.into_iter().map(move |b| TripleClass::new(a, b)))
    }

    pub fn index(self) -> usize {
        self.first.index() * 6 + self.second.index()
    }

    pub fn from_index(i: usize) -> Self {
        TripleClass::new(PairClass::ALL[i / 6], PairClass::ALL[i % 6])
    }

    /// The unique realization on nodes {0, 1, 2} with first event `0 -> 1`.
    pub fn canonical_edges(self) -> [(u8, u8); 3] {
        let e1 = (0, 1);
        let e2 = self.first.follow(e1, 2);
        let third = if self.first.node_count() == 2 {
            2
        } else {
            3 - e2.0 - e2.1
        };
        let e3 = self.second.follow(e2, third);
        [e1, e2, e3]
    }

    pub fn node_count(self) -> usize {
        if self.first.node_count() == 2 && self.second.node_count() == 2 {
            2
        } else {
            3
        }
    }

    /// Shape of the undirected static projection.
    pub fn category(self) -> TripleCategory {
        if self.node_count() == 2 {
            return TripleCategory::TwoNode;
        }
        let edges = self.canonical_edges();
        let mut pairs: Vec<(u8, u8)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.len() < 3 {
            return TripleCategory::Wedge;
        }
        // a closed triangle is a directed cycle iff every node has out-degree 1
        let mut out = [0u8; 3];
        for &(a, _) in &edges {
            out[a as usize] += 1;
        }
        if out == [1, 1, 1] {
            TripleCategory::CyclicTriangle
        } else {
            TripleCategory::AcyclicTriangle
        }
    }

    pub fn label(self) -> String {
        format!("{}-{}", self.first, self.second)
    }
}

impl fmt::Display for TripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.first, self.second)
    }
}

/// Either a 2-event or a 3-event class.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MotifClass {
    Pair(PairClass),
    Triple(TripleClass),
}

impl MotifClass {
    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn node_count(&self) -> usize {
        match self {
            MotifClass::Pair(p) => p.node_count(),
            MotifClass::Triple(t) => t.node_count(),
        }
    }

    /// Position in the class universe of its motif size.
    pub fn index(&self) -> usize {
        match self {
            MotifClass::Pair(p) => p.index(),
            MotifClass::Triple(t) => t.index(),
        }
    }
}

impl fmt::Display for MotifClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotifClass::Pair(p) => p.fmt(f),
            MotifClass::Triple(t) => t.fmt(f),
        }
    }
}

impl Serialize for MotifClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for MotifClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('-') {
            Some((a, b)) => Ok(MotifClass::Triple(TripleClass::new(a.parse()?, b.parse()?))),
            None => Ok(MotifClass::Pair(s.parse()?)),
        }
    }
}

/// Number of events in a motif.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum MotifSize {
    Two,
    Three,
}

impl MotifSize {
    pub fn events(self) -> usize {
        match self {
            MotifSize::Two => 2,
            MotifSize::Three => 3,
        }
    }

    pub fn from_events(m: usize) -> Result<Self> {
        match m {
            2 => Ok(MotifSize::Two),
            3 => Ok(MotifSize::Three),
            _ => Err(Error::Classify(format!("motifs have 2 or 3 events, not {m}"))),
        }
    }

    pub fn class_count(self) -> usize {
        match self {
            MotifSize::Two => 6,
            MotifSize::Three => 36,
        }
    }

    /// Every class of this size in canonical order.
    pub fn classes(self) -> Vec<MotifClass> {
        match self {
            MotifSize::Two => PairClass::ALL.into_iter().map(MotifClass::Pair).collect(),
            MotifSize::Three => TripleClass::all().map(MotifClass::Triple).collect(),
        }
    }

    pub fn class_at(self, index: usize) -> MotifClass {
        match self {
            MotifSize::Two => MotifClass::Pair(PairClass::ALL[index]),
            MotifSize::Three => MotifClass::Triple(TripleClass::from_index(index)),
        }
    }
}

/// Canonical node position inside a motif instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    FirstSource,
    FirstTarget,
    FirstOpposer,
    SecondOpposer,
    Opposed,
    Opposer,
    FirstOpposed,
    SecondOpposed,
    Center,
    SecondTarget,
    SecondSource,
    Node1,
    Node2,
    Node3,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::FirstSource => "first-source",
            Role::FirstTarget => "first-target",
            Role::FirstOpposer => "first-opposer",
            Role::SecondOpposer => "second-opposer",
            Role::Opposed => "opposed",
            Role::Opposer => "opposer",
            Role::FirstOpposed => "first-opposed",
            Role::SecondOpposed => "second-opposed",
            Role::Center => "center",
            Role::SecondTarget => "second-target",
            Role::SecondSource => "second-source",
            Role::Node1 => "node1",
            Role::Node2 => "node2",
            Role::Node3 => "node3",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Role labels of a pair class, in canonical order.
pub fn pair_roles(class: PairClass) -> &'static [Role] {
    match class {
        PairClass::R | PairClass::P => &[Role::FirstSource, Role::FirstTarget],
        PairClass::I => &[Role::FirstOpposer, Role::SecondOpposer, Role::Opposed],
        PairClass::O => &[Role::Opposer, Role::FirstOpposed, Role::SecondOpposed],
        PairClass::C => &[Role::FirstSource, Role::Center, Role::SecondTarget],
        PairClass::W => &[Role::Center, Role::FirstTarget, Role::SecondSource],
    }
}

/// Assigns each role of a pair instance to one of the endpoints of the two
/// events `(s1, t1)`, `(s2, t2)`.
pub fn assign_pair_roles<N: Clone>(class: PairClass, first: (&N, &N), second: (&N, &N)) -> Vec<(Role, N)> {
    let (s1, t1) = first;
    let (s2, t2) = second;
    let nodes: Vec<&N> = match class {
        PairClass::R | PairClass::P => vec![s1, t1],
        PairClass::I => vec![s1, s2, t1],
        PairClass::O => vec![s1, t1, t2],
        PairClass::C => vec![s1, t1, t2],
        PairClass::W => vec![s1, t1, s2],
    };
    pair_roles(class)
        .iter()
        .copied()
        .zip(nodes.into_iter().cloned())
        .collect()
}

/// The unordered role pairs of a class (one for 2-node, three for 3-node).
pub fn role_pairs(class: PairClass) -> Vec<(Role, Role)> {
    let roles = pair_roles(class);
    let mut out = Vec::new();
    for i in 0..roles.len() {
        for j in i + 1..roles.len() {
            out.push((roles[i], roles[j]));
        }
    }
    out
}

pub fn role_pair_label((a, b): (Role, Role)) -> String {
    format!("{a}|{b}")
}
