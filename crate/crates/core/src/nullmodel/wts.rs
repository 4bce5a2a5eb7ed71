use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{NullModel, NullModelKind};
use crate::error::Result;
use crate::model::{TemporalLayer, Timestamp};

/// Redraws every event time on each edge uniformly from the layer's
/// observation window `[min t, max t]`; per-edge event counts are kept and
/// collisions are allowed.
#[derive(Clone, Copy, Debug, Default)]
pub struct WithinTimelineShuffle;

impl NullModel for WithinTimelineShuffle {
    fn kind(&self) -> NullModelKind {
        NullModelKind::Wts
    }

    fn shuffle(&self, layer: &TemporalLayer, rng: &mut ChaCha8Rng) -> Result<TemporalLayer> {
        let Some((start, end)) = layer.span() else {
            return Ok(layer.clone());
        };
        let timelines: Vec<_> = layer
            .edge_index()
            .iter()
            .map(|(edge, times)| {
                let mut drawn: Vec<Timestamp> = (0..times.len())
                    .map(|_| Timestamp(rng.gen_range(start.0..=end.0)))
                    .collect();
                drawn.sort_unstable();
                (edge.clone(), drawn)
            })
            .collect();
        TemporalLayer::from_timelines(layer.kind(), timelines, layer.nodes())
    }
}
