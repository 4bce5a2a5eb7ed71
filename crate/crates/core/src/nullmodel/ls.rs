use rand::seq::{index, SliceRandom};
use rand_chacha::ChaCha8Rng;

use super::{NullModel, NullModelKind};
use crate::error::{Error, Result};
use crate::model::{NodeId, TemporalLayer, Timestamp};

/// Draws a uniform simple directed graph on the layer's node set with the
/// same number of distinct edges, then hands the original per-edge timelines
/// to the new edges through a uniform bijection.
#[derive(Clone, Copy, Debug, Default)]
pub struct LinkShuffle;

impl NullModel for LinkShuffle {
    fn kind(&self) -> NullModelKind {
        NullModelKind::Ls
    }

    fn shuffle(&self, layer: &TemporalLayer, rng: &mut ChaCha8Rng) -> Result<TemporalLayer> {
        let nodes: Vec<&NodeId> = layer.nodes().iter().collect();
        let n = nodes.len();
        let m = layer.edge_index().len();
        let slots = n.checked_mul(n.saturating_sub(1)).ok_or_else(|| Error::NullModel {
            model: "ls",
            msg: "node count too large".into(),
        })?;
        if m > slots {
            return Err(Error::NullModel {
                model: "ls",
                msg: format!("{m} edges cannot fit a simple digraph on {n} nodes"),
            });
        }
        let mut timelines: Vec<Vec<Timestamp>> = layer.edge_index().values().cloned().collect();
        timelines.shuffle(rng);
        let picked = index::sample(rng, slots, m);
        let edges = picked.into_iter().map(|slot| {
            let s = slot / (n - 1);
            let mut t = slot % (n - 1);
            if t >= s {
                t += 1;
            }
            (nodes[s].clone(), nodes[t].clone())
        });
        TemporalLayer::from_timelines(layer.kind(), edges.zip(timelines), layer.nodes())
    }
}
