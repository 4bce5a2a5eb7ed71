//! Randomized reference layers.
//!
//! Each shuffling model implements [`NullModel`] and is looked up by name in
//! a [`Registry`]. Shuffles are pure functions of `(layer, model, seed)`.

mod conservation;
mod dcls;
mod is;
mod ls;
mod ts;
mod wts;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::TemporalLayer;

pub use conservation::{verify_conservation, ConservationReport, Law};
pub use dcls::{EdgeSwap, DEFAULT_SWAPS_PER_EDGE};
pub use is::InterEventShuffle;
pub use ls::LinkShuffle;
pub use ts::TimestampShuffle;
pub use wts::WithinTimelineShuffle;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NullModelKind {
    /// Uniform random simple graph with the same node and edge counts.
    Ls,
    /// Degree-preserving double-edge swaps.
    Dcls,
    /// Uniform timestamps per edge within the observation window.
    Wts,
    /// Per-edge permutation of inter-event gaps.
    Is,
    /// Global permutation of timestamps.
    Ts,
}

impl NullModelKind {
    pub const ALL: [NullModelKind; 5] = [
        NullModelKind::Ls,
        NullModelKind::Dcls,
        NullModelKind::Wts,
        NullModelKind::Is,
        NullModelKind::Ts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NullModelKind::Ls => "ls",
            NullModelKind::Dcls => "dcls",
            NullModelKind::Wts => "wts",
            NullModelKind::Is => "is",
            NullModelKind::Ts => "ts",
        }
    }
}

impl fmt::Display for NullModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NullModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        NullModelKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct RandomSeed(pub u64);

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RandomSeed {
    /// Seed of the `i`-th independent sample: `splitmix64(seed ^ splitmix64(i))`.
    pub fn derive(self, i: u64) -> RandomSeed {
        RandomSeed(splitmix64(self.0 ^ splitmix64(i)))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

pub trait NullModel: Send + Sync {
    fn kind(&self) -> NullModelKind;

    /// Returns a randomized copy of a directed layer.
    fn shuffle(&self, layer: &TemporalLayer, rng: &mut ChaCha8Rng) -> Result<TemporalLayer>;
}

/// Name-indexed set of null models.
pub struct Registry {
    models: BTreeMap<&'static str, Box<dyn NullModel>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            models: BTreeMap::new(),
        }
    }

    /// All five models; DCLS performs `swaps_per_edge * |edges|` accepted swaps.
    pub fn with_swaps(swaps_per_edge: usize) -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(LinkShuffle));
        r.register(Box::new(EdgeSwap::new(swaps_per_edge)));
        r.register(Box::new(WithinTimelineShuffle));
        r.register(Box::new(InterEventShuffle));
        r.register(Box::new(TimestampShuffle));
        r
    }

    pub fn register(&mut self, model: Box<dyn NullModel>) {
        self.models.insert(model.kind().name(), model);
    }

    pub fn get(&self, name: &str) -> Result<&dyn NullModel> {
        let kind: NullModelKind = name.parse()?;
        self.models
            .get(kind.name())
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn model(&self, kind: NullModelKind) -> Result<&dyn NullModel> {
        self.get(kind.name())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.models.keys().copied()
    }

    /// Shuffles with a fresh RNG seeded from `seed`.
    pub fn shuffle(&self, layer: &TemporalLayer, kind: NullModelKind, seed: RandomSeed) -> Result<TemporalLayer> {
        check_directed(layer, kind)?;
        if layer.is_empty() {
            return Ok(layer.clone());
        }
        self.model(kind)?.shuffle(layer, &mut seed.rng())
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::with_swaps(DEFAULT_SWAPS_PER_EDGE)
    }
}

fn check_directed(layer: &TemporalLayer, kind: NullModelKind) -> Result<()> {
    if !layer.is_directed() {
        return Err(Error::NullModel {
            model: kind.name(),
            msg: "only the directed opposition layer is randomized".into(),
        });
    }
    Ok(())
}

/// Shuffles with the default registry.
pub fn shuffle(layer: &TemporalLayer, kind: NullModelKind, seed: RandomSeed) -> Result<TemporalLayer> {
    Registry::default().shuffle(layer, kind, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = Registry::default();
        assert_eq!(r.names().collect::<Vec<_>>(), vec!["dcls", "is", "ls", "ts", "wts"]);
        for k in NullModelKind::ALL {
            assert_eq!(r.get(k.name()).unwrap().kind(), k);
        }
        assert_eq!(r.get("WTS").unwrap().kind(), NullModelKind::Wts);
        assert!(matches!(r.get("xyz"), Err(Error::UnknownModel(_))));
        assert!(Registry::empty().get("ls").is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let s = RandomSeed(42);
        let seeds: std::collections::BTreeSet<u64> = (0..100).map(|i| s.derive(i).0).collect();
        assert_eq!(seeds.len(), 100);
        assert_ne!(RandomSeed(0).derive(1), RandomSeed(1).derive(0));
        assert_eq!(s.derive(3), RandomSeed(42).derive(3));
    }
}
