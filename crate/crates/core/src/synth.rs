//! Synthetic two-layer networks with heavy-tailed activity and planted
//! repetition bursts, used as a stand-in for real opposition data.

use std::collections::{BTreeMap, HashSet};

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Event, LayerKind, NodeId, TemporalLayer, Timestamp, TwoLayerNetwork};
use crate::nullmodel::RandomSeed;

/// 1981-02-25 in days since the epoch.
pub const DEFAULT_START_DAY: i64 = 4073;
/// Days from 1981-02-25 to 2018-04-19.
pub const DEFAULT_SPAN_DAYS: i64 = 13_567;
/// Largest gap between a burst event and the event it repeats.
pub const BURST_MAX_GAP: i64 = 90;

const ATTR_CAP: f64 = 1e7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SynthConfig {
    pub node_count: usize,
    pub opposition_events: usize,
    pub collaboration_events: usize,
    pub start_day: i64,
    pub span_days: i64,
    /// Power-law exponent of node activity.
    pub activity_exponent: f64,
    /// Probability that an opposition repeats an existing edge shortly after.
    pub burst_prob: f64,
    /// Power-law exponent of patent counts.
    pub attr_exponent: f64,
    pub seed: RandomSeed,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            node_count: 1000,
            opposition_events: 3000,
            collaboration_events: 150,
            start_day: DEFAULT_START_DAY,
            span_days: DEFAULT_SPAN_DAYS,
            activity_exponent: 2.1,
            burst_prob: 0.3,
            attr_exponent: 1.85,
            seed: RandomSeed(0),
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Synth(m));
        if self.node_count < 2 {
            return bad(format!("need at least 2 nodes, got {}", self.node_count));
        }
        if self.opposition_events == 0 || self.collaboration_events == 0 {
            return bad("event counts must be positive".into());
        }
        if self.span_days <= 0 {
            return bad(format!("span must be positive, got {}", self.span_days));
        }
        // leave room for distinct events
        let slots = (self.node_count as u128) * (self.node_count as u128 - 1) * self.span_days as u128;
        if (self.opposition_events as u128) * 2 > slots || (self.collaboration_events as u128) * 4 > slots {
            return bad("too many events for the node count and span".into());
        }
        let tail_ok = |x: f64| x.is_finite() && x > 1.0;
        if !tail_ok(self.activity_exponent) || !tail_ok(self.attr_exponent) {
            return bad("exponents must be > 1".into());
        }
        if !(0.0..=1.0).contains(&self.burst_prob) {
            return bad(format!("burst_prob {} outside [0, 1]", self.burst_prob));
        }
        Ok(())
    }
}

/// Continuous Pareto draw `>= 1` with density exponent `alpha`.
fn pareto(rng: &mut ChaCha8Rng, alpha: f64) -> f64 {
    let u: f64 = rng.gen();
    (1.0 - u).powf(-1.0 / (alpha - 1.0))
}

fn node_names(n: usize) -> Vec<NodeId> {
    let width = (n - 1).to_string().len();
    (0..n)
        .map(|i| NodeId::new(format!("N{i:0width$}")).expect("non-empty"))
        .collect()
}

fn distinct_pair(rng: &mut ChaCha8Rng, a: &WeightedIndex<f64>, b: &WeightedIndex<f64>) -> (usize, usize) {
    loop {
        let (s, t) = (a.sample(rng), b.sample(rng));
        if s != t {
            return (s, t);
        }
    }
}

/// Generates a network with exactly the configured node and event counts;
/// identical configs give identical networks.
pub fn generate(cfg: &SynthConfig) -> Result<TwoLayerNetwork> {
    cfg.validate()?;
    let mut rng = cfg.seed.rng();
    let n = cfg.node_count;
    let cap = n as f64;
    let names = node_names(n);
    let out_w: Vec<f64> = (0..n)
        .map(|_| pareto(&mut rng, cfg.activity_exponent).min(cap))
        .collect();
    let in_w: Vec<f64> = (0..n)
        .map(|_| pareto(&mut rng, cfg.activity_exponent).min(cap))
        .collect();
    let both_w: Vec<f64> = out_w.iter().zip(&in_w).map(|(a, b)| a + b).collect();
    let out_d = WeightedIndex::new(&out_w).map_err(|e| Error::Synth(e.to_string()))?;
    let in_d = WeightedIndex::new(&in_w).map_err(|e| Error::Synth(e.to_string()))?;
    let both_d = WeightedIndex::new(&both_w).map_err(|e| Error::Synth(e.to_string()))?;
    let (lo, hi) = (cfg.start_day, cfg.start_day + cfg.span_days - 1);

    let mut seen: HashSet<(usize, usize, i64)> = HashSet::new();
    let mut opp: Vec<(usize, usize, i64)> = Vec::with_capacity(cfg.opposition_events);
    // after a burst collides with an existing event, draw a fresh one
    let mut fresh = false;
    while opp.len() < cfg.opposition_events {
        let burst = !fresh && !opp.is_empty() && rng.gen_bool(cfg.burst_prob);
        let ev = if burst {
            let (s, t, d) = opp[rng.gen_range(0..opp.len())];
            let gap = rng.gen_range(1..=BURST_MAX_GAP);
            let day = if d + gap <= hi { d + gap } else { (d - gap).max(lo) };
            (s, t, day)
        } else {
            let (s, t) = distinct_pair(&mut rng, &out_d, &in_d);
            (s, t, rng.gen_range(lo..=hi))
        };
        let inserted = seen.insert(ev);
        fresh = burst && !inserted;
        if inserted {
            opp.push(ev);
        }
    }

    let mut seen: HashSet<(usize, usize, i64)> = HashSet::new();
    let mut col: Vec<(usize, usize, i64)> = Vec::with_capacity(cfg.collaboration_events);
    while col.len() < cfg.collaboration_events {
        let (a, b) = distinct_pair(&mut rng, &both_d, &both_d);
        let ev = (a.min(b), a.max(b), rng.gen_range(lo..=hi));
        if seen.insert(ev) {
            col.push(ev);
        }
    }

    let attrs: BTreeMap<NodeId, u64> = names
        .iter()
        .map(|id| {
            (
                id.clone(),
                (pareto(&mut rng, cfg.attr_exponent).min(ATTR_CAP) - 1.0).floor() as u64,
            )
        })
        .collect();

    let build = |kind: LayerKind, evs: &[(usize, usize, i64)]| -> Result<TemporalLayer> {
        let events = evs
            .iter()
            .map(|&(s, t, d)| Event::new(names[s].clone(), names[t].clone(), Timestamp(d), kind))
            .collect::<Result<Vec<_>>>()?;
        TemporalLayer::new(kind, events)
    };
    TwoLayerNetwork::new(
        build(LayerKind::Opposition, &opp)?,
        build(LayerKind::Collaboration, &col)?,
        Some(attrs),
    )
}
