//! Indexed view of a directed layer used for motif enumeration and counting.
//!
//! Events are addressed by their position in the layer's sorted event list.
//! Every motif is anchored at its earliest event; enumeration order is
//! lexicographic in the event positions `(first, second, third)`.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::marker::PhantomData;

use rayon::prelude::*;

use crate::duration::Thresholds;
use crate::error::{Error, Result};
use crate::model::{Event, NodeId, TemporalLayer};

use super::class::{assign_pair_roles, MotifClass, MotifSize, PairClass, Role, TripleClass};

/// Classifies a time-ordered event pair.
pub fn classify_pair(e1: &Event, e2: &Event) -> Result<PairClass> {
    if e1.t >= e2.t {
        return Err(Error::Classify(format!(
            "events must have strictly increasing timestamps ({} then {})",
            e1.t, e2.t
        )));
    }
    PairClass::of((&e1.source, &e1.target), (&e2.source, &e2.target)).ok_or_else(|| {
        Error::Classify(format!(
            "events ({}, {}) and ({}, {}) share no node",
            e1.source, e1.target, e2.source, e2.target
        ))
    })
}

/// Classifies a time-ordered event triple on at most three nodes.
pub fn classify_triple(e1: &Event, e2: &Event, e3: &Event) -> Result<TripleClass> {
    let mut nodes: Vec<&NodeId> = [e1, e2, e3].iter().flat_map(|e| [&e.source, &e.target]).collect();
    nodes.sort();
    nodes.dedup();
    if nodes.len() > 3 {
        return Err(Error::Classify(format!(
            "triple spans {} nodes; only motifs with up to 3 nodes are supported",
            nodes.len()
        )));
    }
    Ok(TripleClass::new(classify_pair(e1, e2)?, classify_pair(e2, e3)?))
}

/// One detected motif.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifInstance {
    /// Positions in the layer's sorted event list.
    pub event_ids: Vec<usize>,
    pub events: Vec<Event>,
    pub class: MotifClass,
    pub roles: Vec<(Role, NodeId)>,
}

impl MotifInstance {
    pub fn first_time(&self) -> i64 {
        self.events[0].t.0
    }

    pub fn last_time(&self) -> i64 {
        self.events[self.events.len() - 1].t.0
    }

    pub fn role_of(&self, node: &NodeId) -> Option<Role> {
        self.roles.iter().find(|(_, n)| n == node).map(|(r, _)| *r)
    }

    pub fn node(&self, role: Role) -> Option<&NodeId> {
        self.roles.iter().find(|(r, _)| *r == role).map(|(_, n)| n)
    }
}

/// Counting plan: either a plain census under thresholds or a binned census.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Plan<'a> {
    Census(Thresholds),
    /// Bins on the largest consecutive gap; window fixed at `max`.
    Gap {
        bins: &'a [(i64, i64)],
        max: i64,
    },
    /// Bins on the first-to-last timespan; gap bound equals `max`.
    Window {
        bins: &'a [(i64, i64)],
        max: i64,
    },
}

impl Plan<'_> {
    fn bin_count(&self) -> usize {
        match self {
            Plan::Census(_) => 1,
            Plan::Gap { bins, .. } | Plan::Window { bins, .. } => bins.len(),
        }
    }

    /// Largest admissible gap between the first two events.
    fn step(&self) -> i64 {
        match self {
            Plan::Census(th) => th.step_limit(),
            Plan::Gap { max, .. } | Plan::Window { max, .. } => *max,
        }
    }
}

/// Immutable index over a directed layer.
pub struct MotifEngine<'a> {
    layer: &'a TemporalLayer,
    src: Vec<u32>,
    dst: Vec<u32>,
    time: Vec<i64>,
    /// Per node: incident event positions, ascending.
    incident: Vec<Vec<u32>>,
    out_times: Vec<Vec<i64>>,
    in_times: Vec<Vec<i64>>,
    edge_times: HashMap<(u32, u32), Vec<i64>>,
    /// Unordered node pair to event positions on it, ascending.
    pair_events: HashMap<(u32, u32), Vec<u32>>,
}

#[inline]
fn count_in(times: &[i64], lo: i64, hi: i64) -> u64 {
    if hi <= lo {
        return 0;
    }
    let a = times.partition_point(|&t| t <= lo);
    let b = times.partition_point(|&t| t <= hi);
    (b - a) as u64
}

#[inline]
fn unordered(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl<'a> MotifEngine<'a> {
    pub fn new(layer: &'a TemporalLayer) -> Result<Self> {
        if !layer.is_directed() {
            return Err(Error::Layer("motifs are counted on the directed layer".into()));
        }
        let mut ids: HashMap<&NodeId, u32> = HashMap::new();
        let n_events = layer.len();
        let mut src = Vec::with_capacity(n_events);
        let mut dst = Vec::with_capacity(n_events);
        let mut time = Vec::with_capacity(n_events);
        for e in layer.events() {
            let next = ids.len() as u32;
            let s = *ids.entry(&e.source).or_insert(next);
            let next = ids.len() as u32;
            let d = *ids.entry(&e.target).or_insert(next);
            src.push(s);
            dst.push(d);
            time.push(e.t.0);
        }
        let n = ids.len();
        let mut incident = vec![Vec::new(); n];
        let mut out_times = vec![Vec::new(); n];
        let mut in_times = vec![Vec::new(); n];
        let mut edge_times: HashMap<(u32, u32), Vec<i64>> = HashMap::new();
        let mut pair_events: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for k in 0..n_events {
            let (s, d, t) = (src[k], dst[k], time[k]);
            incident[s as usize].push(k as u32);
            incident[d as usize].push(k as u32);
            out_times[s as usize].push(t);
            in_times[d as usize].push(t);
            edge_times.entry((s, d)).or_default().push(t);
            pair_events.entry(unordered(s, d)).or_default().push(k as u32);
        }
        Ok(MotifEngine {
            layer,
            src,
            dst,
            time,
            incident,
            out_times,
            in_times,
            edge_times,
            pair_events,
        })
    }

    pub fn layer(&self) -> &'a TemporalLayer {
        self.layer
    }

    pub fn event_count(&self) -> usize {
        self.time.len()
    }

    #[inline]
    fn edge(&self, k: usize) -> (u32, u32) {
        (self.src[k], self.dst[k])
    }

    #[inline]
    fn edge_count(&self, a: u32, b: u32, lo: i64, hi: i64) -> u64 {
        self.edge_times.get(&(a, b)).map_or(0, |ts| count_in(ts, lo, hi))
    }

    /// Adds to `out[class]` the number of events with time in `(lo, hi]`
    /// that follow an event on `(a, b)` as a connected pair. With
    /// `third = Some(c)` only events inside `{a, b, c}` are counted.
    fn count_followers(&self, a: u32, b: u32, third: Option<u32>, lo: i64, hi: i64, out: &mut [u64]) {
        if hi <= lo {
            return;
        }
        let r = self.edge_count(a, b, lo, hi);
        let p = self.edge_count(b, a, lo, hi);
        out[PairClass::R.index()] += r;
        out[PairClass::P.index()] += p;
        match third {
            Some(c) => {
                out[PairClass::I.index()] += self.edge_count(c, b, lo, hi);
                out[PairClass::O.index()] += self.edge_count(a, c, lo, hi);
                out[PairClass::C.index()] += self.edge_count(b, c, lo, hi);
                out[PairClass::W.index()] += self.edge_count(c, a, lo, hi);
            }
            None => {
                let (a, b) = (a as usize, b as usize);
                out[PairClass::I.index()] += count_in(&self.in_times[b], lo, hi) - r;
                out[PairClass::O.index()] += count_in(&self.out_times[a], lo, hi) - r;
                out[PairClass::C.index()] += count_in(&self.out_times[b], lo, hi) - p;
                out[PairClass::W.index()] += count_in(&self.in_times[a], lo, hi) - p;
            }
        }
    }

    /// Event positions incident to `u` or `v` with time in `(lo, hi]`,
    /// ascending and without duplicates.
    fn incident_in(&self, u: u32, v: u32, lo: i64, hi: i64, out: &mut Vec<u32>) {
        out.clear();
        if hi <= lo {
            return;
        }
        let slice = |node: u32| -> &[u32] {
            let list = &self.incident[node as usize];
            let a = list.partition_point(|&k| self.time[k as usize] <= lo);
            let b = list.partition_point(|&k| self.time[k as usize] <= hi);
            &list[a..b]
        };
        let (xs, ys) = (slice(u), slice(v));
        let (mut i, mut j) = (0, 0);
        while i < xs.len() || j < ys.len() {
            let next = match (xs.get(i), ys.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
    }

    /// Event positions on any pair within `nodes` with time in `(lo, hi]`.
    fn triangle_events_in(&self, nodes: [u32; 3], lo: i64, hi: i64, out: &mut Vec<u32>) {
        out.clear();
        if hi <= lo {
            return;
        }
        let [a, b, c] = nodes;
        for pair in [unordered(a, b), unordered(a, c), unordered(b, c)] {
            if let Some(list) = self.pair_events.get(&pair) {
                let x = list.partition_point(|&k| self.time[k as usize] <= lo);
                let y = list.partition_point(|&k| self.time[k as usize] <= hi);
                out.extend_from_slice(&list[x..y]);
            }
        }
        out.sort_unstable();
    }

    /// The node of `(u, v) ∪ (a, b)` outside `{a, b}`, if there are three.
    #[inline]
    fn third_node(u: u32, v: u32, a: u32, b: u32) -> Option<u32> {
        if u != a && u != b {
            Some(u)
        } else if v != a && v != b {
            Some(v)
        } else {
            None
        }
    }

    fn count_anchor(&self, size: MotifSize, plan: Plan<'_>, i: usize, acc: &mut [Vec<u64>], scratch: &mut Vec<u32>) {
        let (u, v) = self.edge(i);
        let t1 = self.time[i];
        match size {
            MotifSize::Two => match plan {
                Plan::Census(_) => self.count_followers(u, v, None, t1, t1.saturating_add(plan.step()), &mut acc[0]),
                Plan::Gap { bins, .. } | Plan::Window { bins, .. } => {
                    for (b, &(x, y)) in bins.iter().enumerate() {
                        self.count_followers(u, v, None, t1 + x, t1 + y, &mut acc[b]);
                    }
                }
            },
            MotifSize::Three => {
                self.incident_in(u, v, t1, t1.saturating_add(plan.step()), scratch);
                let mut pair = [0u64; 6];
                for &j in scratch.iter() {
                    let j = j as usize;
                    let (a, b) = self.edge(j);
                    let t2 = self.time[j];
                    let first = PairClass::of((u, v), (a, b)).expect("incident events share a node");
                    let third = Self::third_node(u, v, a, b);
                    let base = first.index() * 6;
                    let mut add = |bin: usize, lo: i64, hi: i64| {
                        pair = [0; 6];
                        self.count_followers(a, b, third, lo, hi, &mut pair);
                        for (k, n) in pair.iter().enumerate() {
                            acc[bin][base + k] += n;
                        }
                    };
                    match plan {
                        Plan::Census(th) => {
                            let hi = t2
                                .saturating_add(th.delta_c().limit())
                                .min(t1.saturating_add(th.delta_w().limit()));
                            add(0, t2, hi);
                        }
                        Plan::Window { bins, .. } => {
                            for (bin, &(x, y)) in bins.iter().enumerate() {
                                add(bin, t2.max(t1 + x), t1 + y);
                            }
                        }
                        Plan::Gap { bins, max } => {
                            let g1 = t2 - t1;
                            for (bin, &(x, y)) in bins.iter().enumerate() {
                                if g1 > y {
                                    continue;
                                }
                                let lo = if g1 > x { t2 } else { t2 + x };
                                add(bin, lo, (t2 + y).min(t1 + max));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Per-bin class counts, accumulated in parallel over anchor events.
    pub(crate) fn count(&self, size: MotifSize, plan: Plan<'_>) -> Vec<Vec<u64>> {
        let k = size.class_count();
        let nb = plan.bin_count();
        let zero = || vec![vec![0u64; k]; nb];
        (0..self.event_count())
            .into_par_iter()
            .fold(
                || (zero(), Vec::new()),
                |(mut acc, mut scratch), i| {
                    self.count_anchor(size, plan, i, &mut acc, &mut scratch);
                    (acc, scratch)
                },
            )
            .map(|(acc, _)| acc)
            .reduce(zero, |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            })
    }

    /// All motif instances anchored at event `i`, in enumeration order.
    fn instances_at(&self, size: MotifSize, th: Thresholds, i: usize, out: &mut Vec<[u32; 3]>) {
        let (u, v) = self.edge(i);
        let t1 = self.time[i];
        let mut seconds = Vec::new();
        self.incident_in(u, v, t1, t1.saturating_add(th.step_limit()), &mut seconds);
        match size {
            MotifSize::Two => out.extend(seconds.iter().map(|&j| [i as u32, j, u32::MAX])),
            MotifSize::Three => {
                let mut thirds = Vec::new();
                for &j in &seconds {
                    let (a, b) = self.edge(j as usize);
                    let t2 = self.time[j as usize];
                    let hi = t2
                        .saturating_add(th.delta_c().limit())
                        .min(t1.saturating_add(th.delta_w().limit()));
                    match Self::third_node(u, v, a, b) {
                        Some(c) => self.triangle_events_in([a, b, c], t2, hi, &mut thirds),
                        None => self.incident_in(a, b, t2, hi, &mut thirds),
                    }
                    out.extend(thirds.iter().map(|&k| [i as u32, j, k]));
                }
            }
        }
    }

    fn materialize(&self, raw: [u32; 3], size: MotifSize) -> MotifInstance {
        let ids: Vec<usize> = raw[..size.events()].iter().map(|&k| k as usize).collect();
        let events: Vec<Event> = ids.iter().map(|&k| self.layer.events()[k].clone()).collect();
        let ends = |e: &Event| (e.source.clone(), e.target.clone());
        let first = PairClass::of(ends(&events[0]), ends(&events[1])).expect("connected pair");
        let (class, roles) = match size {
            MotifSize::Two => (
                MotifClass::Pair(first),
                assign_pair_roles(
                    first,
                    (&events[0].source, &events[0].target),
                    (&events[1].source, &events[1].target),
                ),
            ),
            MotifSize::Three => {
                let second = PairClass::of(ends(&events[1]), ends(&events[2])).expect("connected pair");
                let mut roles: Vec<(Role, NodeId)> = Vec::with_capacity(3);
                for n in events.iter().flat_map(|e| [&e.source, &e.target]) {
                    if roles.iter().all(|(_, m)| m != n) {
                        let role = [Role::Node1, Role::Node2, Role::Node3][roles.len()];
                        roles.push((role, n.clone()));
                    }
                }
                (MotifClass::Triple(TripleClass::new(first, second)), roles)
            }
        };
        MotifInstance {
            event_ids: ids,
            events,
            class,
            roles,
        }
    }

    /// Streams every qualifying instance once, in deterministic order.
    pub fn instances(&self, size: MotifSize, th: Thresholds) -> MotifStream<'a, &Self> {
        MotifStream::new(self, size, th)
    }

    /// Like [`instances`](Self::instances), taking ownership of the engine.
    pub fn into_instances(self, size: MotifSize, th: Thresholds) -> MotifStream<'a, Self> {
        MotifStream::new(self, size, th)
    }
}

/// Iterator over motif instances, anchor by anchor.
pub struct MotifStream<'a, E: Borrow<MotifEngine<'a>>> {
    engine: E,
    size: MotifSize,
    th: Thresholds,
    next_anchor: usize,
    buf: Vec<[u32; 3]>,
    pos: usize,
    _layer: PhantomData<&'a TemporalLayer>,
}

impl<'a, E: Borrow<MotifEngine<'a>>> MotifStream<'a, E> {
    fn new(engine: E, size: MotifSize, th: Thresholds) -> Self {
        MotifStream {
            engine,
            size,
            th,
            next_anchor: 0,
            buf: Vec::new(),
            pos: 0,
            _layer: PhantomData,
        }
    }
}

impl<'a, E: Borrow<MotifEngine<'a>>> Iterator for MotifStream<'a, E> {
    type Item = MotifInstance;

    fn next(&mut self) -> Option<MotifInstance> {
        let engine = self.engine.borrow();
        while self.pos == self.buf.len() {
            if self.next_anchor >= engine.event_count() {
                return None;
            }
            self.buf.clear();
            self.pos = 0;
            engine.instances_at(self.size, self.th, self.next_anchor, &mut self.buf);
            self.next_anchor += 1;
        }
        let raw = self.buf[self.pos];
        self.pos += 1;
        Some(engine.materialize(raw, self.size))
    }
}

/// Collects all qualifying instances of a directed layer.
pub fn enumerate_motifs(layer: &TemporalLayer, size: MotifSize, th: Thresholds) -> Result<Vec<MotifInstance>> {
    let engine = MotifEngine::new(layer)?;
    let out = engine.instances(size, th).collect();
    Ok(out)
}
