use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::{NullModel, NullModelKind};
use crate::error::Result;
use crate::model::{TemporalLayer, Timestamp};

/// Permutes all event times of the layer across events, regardless of edge.
#[derive(Clone, Copy, Debug, Default)]
pub struct TimestampShuffle;

impl NullModel for TimestampShuffle {
    fn kind(&self) -> NullModelKind {
        NullModelKind::Ts
    }

    fn shuffle(&self, layer: &TemporalLayer, rng: &mut ChaCha8Rng) -> Result<TemporalLayer> {
        let mut pool: Vec<Timestamp> = layer.events().iter().map(|e| e.t).collect();
        pool.shuffle(rng);
        let mut rest = pool.as_slice();
        let mut timelines = Vec::with_capacity(layer.edge_index().len());
        for (edge, times) in layer.edge_index() {
            let (mine, tail) = rest.split_at(times.len());
            rest = tail;
            let mut mine = mine.to_vec();
            mine.sort_unstable();
            timelines.push((edge.clone(), mine));
        }
        TemporalLayer::from_timelines(layer.kind(), timelines, layer.nodes())
    }
}
