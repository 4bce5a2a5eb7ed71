//! Test-only helpers: seeded random layers and a brute-force motif oracle
//! that shares no code with the counting engine.

#![allow(dead_code)]

use std::collections::BTreeMap;

use oppnet::duration::{Bound, Thresholds};
use oppnet::model::{Event, LayerKind, TemporalLayer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn node_name(i: usize) -> String {
    format!("n{i:02}")
}

/// Random directed layer with `events` events over `nodes` nodes and
/// timestamps in `0..span` (collisions likely for small spans).
pub fn random_layer(seed: u64, max_events: usize, max_nodes: usize, span: i64) -> TemporalLayer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_nodes);
    let k = rng.gen_range(0..=max_events);
    let mut ev = Vec::with_capacity(k);
    for _ in 0..k {
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        let day = rng.gen_range(0..span);
        ev.push(Event::opposition(&node_name(s), &node_name(t), day).unwrap());
    }
    TemporalLayer::new(LayerKind::Opposition, ev).unwrap()
}

pub fn random_bound(rng: &mut ChaCha8Rng, span: i64) -> Bound {
    if rng.gen_bool(0.2) {
        Bound::Unbounded
    } else {
        Bound::Days(rng.gen_range(0..=span))
    }
}

pub fn random_thresholds(seed: u64, span: i64) -> Thresholds {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    loop {
        let c = random_bound(&mut rng, span);
        let w = random_bound(&mut rng, span);
        if let Ok(th) = Thresholds::new(c, w) {
            return th;
        }
    }
}

fn label(first: (&str, &str), second: (&str, &str)) -> Option<&'static str> {
    let ((a, b), (c, d)) = (first, second);
    if a == c && b == d {
        Some("R")
    } else if a == d && b == c {
        Some("P")
    } else if b == d {
        Some("I")
    } else if a == c {
        Some("O")
    } else if c == b {
        Some("C")
    } else if d == a {
        Some("W")
    } else {
        None
    }
}

fn within(b: Bound, gap: i64) -> bool {
    match b {
        Bound::Unbounded => true,
        Bound::Days(d) => gap <= d,
    }
}

fn shares(e: &Event, f: &Event) -> bool {
    e.source == f.source || e.source == f.target || e.target == f.source || e.target == f.target
}

/// Checks the four motif constraints on a time-ordered tuple.
pub fn qualifies(tuple: &[&Event], th: Thresholds) -> bool {
    let mut nodes: Vec<&str> = tuple
        .iter()
        .flat_map(|e| [e.source.as_str(), e.target.as_str()])
        .collect();
    nodes.sort();
    nodes.dedup();
    if nodes.len() > 3 {
        return false;
    }
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i].t == tuple[j].t {
                return false;
            }
        }
    }
    for w in tuple.windows(2) {
        if shares(w[0], w[1]) {
            if !within(th.delta_c(), w[1].t.0 - w[0].t.0) {
                return false;
            }
        } else {
            // disconnected consecutive pair: not a connected pattern here
            return false;
        }
    }
    within(th.delta_w(), tuple[tuple.len() - 1].t.0 - tuple[0].t.0)
}

fn class_label(tuple: &[&Event]) -> String {
    fn ends(e: &Event) -> (&str, &str) {
        (e.source.as_str(), e.target.as_str())
    }
    let parts: Vec<&str> = tuple
        .windows(2)
        .map(|w| label(ends(w[0]), ends(w[1])).expect("connected"))
        .collect();
    parts.join("-")
}

/// Exhaustive census over all time-ordered pairs or triples.
pub fn brute_census(layer: &TemporalLayer, m: usize, th: Thresholds) -> BTreeMap<String, u64> {
    let ev = layer.events();
    let mut out = BTreeMap::new();
    let mut bump = |tuple: &[&Event]| {
        if qualifies(tuple, th) {
            *out.entry(class_label(tuple)).or_insert(0) += 1;
        }
    };
    for i in 0..ev.len() {
        for j in i + 1..ev.len() {
            if m == 2 {
                bump(&[&ev[i], &ev[j]]);
                continue;
            }
            for k in j + 1..ev.len() {
                bump(&[&ev[i], &ev[j], &ev[k]]);
            }
        }
    }
    out
}

/// Exhaustive list of qualifying tuples as event-position vectors.
pub fn brute_tuples(layer: &TemporalLayer, m: usize, th: Thresholds) -> Vec<Vec<usize>> {
    let ev = layer.events();
    let mut out = Vec::new();
    for i in 0..ev.len() {
        for j in i + 1..ev.len() {
            if m == 2 {
                if qualifies(&[&ev[i], &ev[j]], th) {
                    out.push(vec![i, j]);
                }
                continue;
            }
            for k in j + 1..ev.len() {
                if qualifies(&[&ev[i], &ev[j], &ev[k]], th) {
                    out.push(vec![i, j, k]);
                }
            }
        }
    }
    out
}

/// Census as a label map, dropping zero rows.
pub fn census_map(c: &oppnet::motif::CensusResult) -> BTreeMap<String, u64> {
    c.counts
        .iter()
        .filter(|(_, n)| *n > 0)
        .map(|(cl, n)| (cl.label(), *n))
        .collect()
}
