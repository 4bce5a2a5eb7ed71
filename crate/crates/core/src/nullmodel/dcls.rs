use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{NullModel, NullModelKind};
use crate::error::Result;
use crate::model::{NodeId, TemporalLayer, Timestamp};

pub const DEFAULT_SWAPS_PER_EDGE: usize = 10;

/// Attempts allowed per requested swap before giving up on graphs with few
/// or no valid swaps (e.g. stars).
const ATTEMPTS_PER_SWAP: usize = 100;

/// Degree-preserving rewiring by directed double-edge swaps
/// `(a, b), (c, d) -> (a, d), (c, b)`. Swaps that would create a self-loop
/// or a duplicate edge are rejected. A timeline stays with its source.
#[derive(Clone, Copy, Debug)]
pub struct EdgeSwap {
    swaps_per_edge: usize,
}

impl EdgeSwap {
    pub fn new(swaps_per_edge: usize) -> Self {
        EdgeSwap { swaps_per_edge }
    }
}

impl Default for EdgeSwap {
    fn default() -> Self {
        EdgeSwap::new(DEFAULT_SWAPS_PER_EDGE)
    }
}

impl NullModel for EdgeSwap {
    fn kind(&self) -> NullModelKind {
        NullModelKind::Dcls
    }

    fn shuffle(&self, layer: &TemporalLayer, rng: &mut ChaCha8Rng) -> Result<TemporalLayer> {
        let mut edges: Vec<(NodeId, NodeId, Vec<Timestamp>)> = layer
            .edge_index()
            .iter()
            .map(|((s, t), times)| (s.clone(), t.clone(), times.clone()))
            .collect();
        let m = edges.len();
        if m >= 2 {
            let mut present: HashSet<(NodeId, NodeId)> = edges.iter().map(|(s, t, _)| (s.clone(), t.clone())).collect();
            let target = self.swaps_per_edge * m;
            let max_attempts = target.saturating_mul(ATTEMPTS_PER_SWAP);
            let (mut done, mut attempts) = (0, 0);
            while done < target && attempts < max_attempts {
                attempts += 1;
                let i = rng.gen_range(0..m);
                let j = rng.gen_range(0..m);
                if i == j {
                    continue;
                }
                let (a, b) = (&edges[i].0, &edges[i].1);
                let (c, d) = (&edges[j].0, &edges[j].1);
                if a == d || c == b {
                    continue;
                }
                let (ad, cb) = ((a.clone(), d.clone()), (c.clone(), b.clone()));
                if present.contains(&ad) || present.contains(&cb) {
                    continue;
                }
                present.remove(&(a.clone(), b.clone()));
                present.remove(&(c.clone(), d.clone()));
                present.insert(ad.clone());
                present.insert(cb.clone());
                edges[i].1 = ad.1;
                edges[j].1 = cb.1;
                done += 1;
            }
        }
        TemporalLayer::from_timelines(
            layer.kind(),
            edges.into_iter().map(|(s, t, times)| ((s, t), times)),
            layer.nodes(),
        )
    }
}
