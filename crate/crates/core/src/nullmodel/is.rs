use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::{NullModel, NullModelKind};
use crate::error::Result;
use crate::model::{TemporalLayer, Timestamp};

/// Permutes the inter-event gaps on each edge, keeping its first and last
/// event times. Edges with fewer than three events are left unchanged.
#[derive(Clone, Copy, Debug, Default)]
pub struct InterEventShuffle;

impl NullModel for InterEventShuffle {
    fn kind(&self) -> NullModelKind {
        NullModelKind::Is
    }

    fn shuffle(&self, layer: &TemporalLayer, rng: &mut ChaCha8Rng) -> Result<TemporalLayer> {
        let mut timelines = Vec::with_capacity(layer.edge_index().len());
        for (edge, times) in layer.edge_index() {
            if times.len() < 3 {
                timelines.push((edge.clone(), times.clone()));
                continue;
            }
            let mut gaps: Vec<i64> = times.windows(2).map(|w| w[1].0 - w[0].0).collect();
            gaps.shuffle(rng);
            let mut t = times[0].0;
            let mut rebuilt = vec![times[0]];
            for g in gaps {
                t += g;
                rebuilt.push(Timestamp(t));
            }
            timelines.push((edge.clone(), rebuilt));
        }
        TemporalLayer::from_timelines(layer.kind(), timelines, layer.nodes())
    }
}
