//! Node attribute (patent count) statistics, overall and per motif position.
//!
//! Samples are accumulated per motif instance: a node that occupies a
//! position in `k` instances contributes `k` values. Nodes with unknown
//! attributes are left out of the position they occupy.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::duration::Thresholds;
use crate::error::{Error, Result};
use crate::model::{NodeId, TwoLayerNetwork};
use crate::motif::{
    for_each_static_instance, static_projection, MotifEngine, MotifSize, StaticInstance, StaticPattern,
};
use crate::table::Table;

/// A multiset of non-negative integers kept as a sorted histogram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sample {
    counts: BTreeMap<u64, u64>,
    n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub count: u64,
    pub mean: f64,
    /// Lower-middle element for even counts.
    pub median: u64,
    /// Population standard deviation.
    pub std: f64,
    pub min: u64,
    pub max: u64,
}

impl Sample {
    pub fn new() -> Self {
        Sample::default()
    }

    pub fn push(&mut self, x: u64) {
        *self.counts.entry(x).or_default() += 1;
        self.n += 1;
    }

    pub fn merge(&mut self, other: &Sample) {
        for (&x, &c) in &other.counts {
            *self.counts.entry(x).or_default() += c;
        }
        self.n += other.n;
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Values in ascending order, with repetition.
    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts
            .iter()
            .flat_map(|(&x, &c)| std::iter::repeat_n(x, c as usize))
    }

    /// Element at sorted position `k`.
    fn nth(&self, k: u64) -> u64 {
        let mut seen = 0;
        for (&x, &c) in &self.counts {
            seen += c;
            if k < seen {
                return x;
            }
        }
        unreachable!("index {k} out of {}", self.n)
    }

    pub fn summary(&self) -> Option<Summary> {
        if self.n == 0 {
            return None;
        }
        let n = self.n as u128;
        let (mut sum, mut sumsq) = (0u128, 0u128);
        for (&x, &c) in &self.counts {
            let (x, c) = (x as u128, c as u128);
            sum += x * c;
            sumsq += x * x * c;
        }
        Some(Summary {
            count: self.n,
            mean: sum as f64 / n as f64,
            median: self.nth((self.n - 1) / 2),
            std: moment_std(n, sum, sumsq),
            min: *self.counts.keys().next().expect("non-empty"),
            max: *self.counts.keys().next_back().expect("non-empty"),
        })
    }
}

/// `sqrt((n * sumsq - sum^2) / n^2)`, the numerator in exact integers.
pub fn moment_std(n: u128, sum: u128, sumsq: u128) -> f64 {
    let num = n * sumsq - sum * sum;
    (num as f64 / (n as f64 * n as f64)).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bin {
    /// Inclusive.
    pub lo: u64,
    /// Exclusive.
    pub hi: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttributeDistribution {
    /// `[0, 1)`, `[1, 2)`, `[2, 4)`, ... up to the bin holding the maximum.
    pub bins: Vec<Bin>,
    pub summary: Summary,
}

impl AttributeDistribution {
    /// `bin_lo,bin_hi,count`
    pub fn histogram_table(&self) -> Table {
        let mut t = Table::new(&["bin_lo", "bin_hi", "count"]);
        for b in &self.bins {
            t.push(vec![b.lo.into(), b.hi.into(), b.count.into()]);
        }
        t
    }

    /// `stat,value`
    pub fn summary_table(&self) -> Table {
        let s = &self.summary;
        let mut t = Table::new(&["stat", "value"]);
        t.push(vec!["count".into(), s.count.into()]);
        t.push(vec!["mean".into(), s.mean.into()]);
        t.push(vec!["median".into(), s.median.into()]);
        t.push(vec!["std".into(), s.std.into()]);
        t.push(vec!["min".into(), s.min.into()]);
        t.push(vec!["max".into(), s.max.into()]);
        t
    }
}

fn log2_bin(x: u64) -> usize {
    if x == 0 {
        0
    } else {
        64 - x.leading_zeros() as usize
    }
}

/// Power-of-two binned histogram and summary of all known attributes.
pub fn attribute_distribution(net: &TwoLayerNetwork) -> Result<AttributeDistribution> {
    let attrs = net.attributes()?;
    let mut sample = Sample::new();
    for &v in attrs.values() {
        sample.push(v);
    }
    let summary = sample.summary().ok_or(Error::MissingAttributes)?;
    let mut counts = vec![0u64; log2_bin(summary.max) + 1];
    for &v in attrs.values() {
        counts[log2_bin(v)] += 1;
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| {
            let (lo, hi) = if k == 0 {
                (0, 1)
            } else {
                (1u64 << (k - 1), 1u64.checked_shl(k as u32).unwrap_or(u64::MAX))
            };
            Bin { lo, hi, count }
        })
        .collect();
    Ok(AttributeDistribution { bins, summary })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositionStats {
    pub class: String,
    pub position: String,
    pub count: u64,
    pub mean: Option<f64>,
    pub median: Option<u64>,
    pub std: Option<f64>,
}

impl PositionStats {
    fn from_sample(class: &str, position: &str, s: &Sample) -> Self {
        let sum = s.summary();
        PositionStats {
            class: class.to_string(),
            position: position.to_string(),
            count: s.len(),
            mean: sum.map(|x| x.mean),
            median: sum.map(|x| x.median),
            std: sum.map(|x| x.std),
        }
    }
}

/// `class,position,count,mean,median,std`
pub fn position_table(rows: &[PositionStats]) -> Table {
    let mut t = Table::new(&["class", "position", "count", "mean", "median", "std"]);
    for r in rows {
        t.push(vec![
            r.class.as_str().into(),
            r.position.as_str().into(),
            r.count.into(),
            r.mean.into(),
            r.median.into(),
            r.std.into(),
        ]);
    }
    t
}

pub const BASELINE_CLASS: &str = "all-events";

/// Raw per-position samples keyed by `(class, position)` in output order.
pub type PositionSamples = Vec<((String, String), Sample)>;

fn push_known(net: &TwoLayerNetwork, sample: &mut Sample, node: &NodeId) {
    if let Some(v) = net.attribute(node) {
        sample.push(v);
    }
}

/// Samples for every 2-event class and position, then the baseline
/// opposer/opposed samples over all opposition events.
pub fn temporal_position_samples(net: &TwoLayerNetwork, th: Thresholds) -> Result<PositionSamples> {
    net.attributes()?;
    let engine = MotifEngine::new(net.opposition())?;
    let mut out: PositionSamples = Vec::new();
    let mut slots: BTreeMap<(usize, crate::motif::Role), usize> = BTreeMap::new();
    for class in MotifSize::Two.classes() {
        let crate::motif::MotifClass::Pair(pc) = class else {
            unreachable!()
        };
        for &role in crate::motif::pair_roles(pc) {
            slots.insert((class.index(), role), out.len());
            out.push(((class.label(), role.label().to_string()), Sample::new()));
        }
    }
    for m in engine.instances(MotifSize::Two, th) {
        for (role, node) in &m.roles {
            let slot = slots[&(m.class.index(), *role)];
            push_known(net, &mut out[slot].1, node);
        }
    }
    let (mut opposer, mut opposed) = (Sample::new(), Sample::new());
    for e in net.opposition().events() {
        push_known(net, &mut opposer, &e.source);
        push_known(net, &mut opposed, &e.target);
    }
    out.push(((BASELINE_CLASS.into(), "opposer".into()), opposer));
    out.push(((BASELINE_CLASS.into(), "opposed".into()), opposed));
    Ok(out)
}

/// Samples for every static pattern and position.
pub fn static_position_samples(net: &TwoLayerNetwork) -> Result<PositionSamples> {
    net.attributes()?;
    let graph = static_projection(net.opposition());
    let keys: [(StaticPattern, &str); 7] = [
        (StaticPattern::Mutual, "node"),
        (StaticPattern::InBurst, "center"),
        (StaticPattern::InBurst, "leaf"),
        (StaticPattern::OutBurst, "center"),
        (StaticPattern::OutBurst, "leaf"),
        (StaticPattern::Path, "source"),
        (StaticPattern::Path, "center"),
    ];
    let mut out: PositionSamples = keys
        .iter()
        .map(|(p, pos)| ((p.label().to_string(), pos.to_string()), Sample::new()))
        .collect();
    out.push(((StaticPattern::Path.label().into(), "sink".into()), Sample::new()));
    for_each_static_instance(&graph, |inst| {
        let mut add = |slot: usize, n: &NodeId| push_known(net, &mut out[slot].1, n);
        match &inst {
            StaticInstance::Mutual { nodes } => {
                add(0, &nodes[0]);
                add(0, &nodes[1]);
            }
            StaticInstance::InBurst { center, leaves } => {
                add(1, center);
                add(2, &leaves[0]);
                add(2, &leaves[1]);
            }
            StaticInstance::OutBurst { center, leaves } => {
                add(3, center);
                add(4, &leaves[0]);
                add(4, &leaves[1]);
            }
            StaticInstance::Path { source, center, sink } => {
                add(5, source);
                add(6, center);
                add(7, sink);
            }
        }
    });
    Ok(out)
}

fn to_stats(samples: &PositionSamples) -> Vec<PositionStats> {
    samples
        .iter()
        .map(|((c, p), s)| PositionStats::from_sample(c, p, s))
        .collect()
}

pub fn position_stats_temporal(net: &TwoLayerNetwork, th: Thresholds) -> Result<Vec<PositionStats>> {
    Ok(to_stats(&temporal_position_samples(net, th)?))
}

pub fn position_stats_static(net: &TwoLayerNetwork) -> Result<Vec<PositionStats>> {
    Ok(to_stats(&static_position_samples(net)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Event, LayerKind, TemporalLayer};

    fn net(opp: &[(&str, &str, i64)], attrs: &[(&str, u64)]) -> TwoLayerNetwork {
        let o = TemporalLayer::new(
            LayerKind::Opposition,
            opp.iter()
                .map(|&(s, t, d)| Event::opposition(s, t, d).unwrap())
                .collect(),
        )
        .unwrap();
        let a = attrs.iter().map(|&(n, v)| (NodeId::new(n).unwrap(), v)).collect();
        TwoLayerNetwork::new(o, TemporalLayer::empty(LayerKind::Collaboration), Some(a)).unwrap()
    }

    fn find<'r>(rows: &'r [PositionStats], class: &str, pos: &str) -> &'r PositionStats {
        rows.iter().find(|r| r.class == class && r.position == pos).unwrap()
    }

    #[test]
    fn distribution_summary() {
        let n = net(&[("A", "B", 1)], &[("A", 0), ("B", 10), ("C", 20)]);
        let d = attribute_distribution(&n).unwrap();
        assert_eq!(d.summary.mean, 10.0);
        assert_eq!(d.summary.median, 10);
        assert_eq!((d.summary.min, d.summary.max), (0, 20));
        assert_eq!(d.bins.iter().map(|b| b.count).sum::<u64>(), 3);
        assert_eq!(d.bins[0], Bin { lo: 0, hi: 1, count: 1 });
        assert_eq!(
            d.bins.last().unwrap(),
            &Bin {
                lo: 16,
                hi: 32,
                count: 1
            }
        );
    }

    #[test]
    fn missing_attributes() {
        let o = TemporalLayer::new(LayerKind::Opposition, vec![Event::opposition("A", "B", 1).unwrap()]).unwrap();
        let n = TwoLayerNetwork::new(o, TemporalLayer::empty(LayerKind::Collaboration), None).unwrap();
        assert!(matches!(attribute_distribution(&n), Err(Error::MissingAttributes)));
        assert!(matches!(position_stats_static(&n), Err(Error::MissingAttributes)));
        assert!(matches!(
            position_stats_temporal(&n, Thresholds::unbounded()),
            Err(Error::MissingAttributes)
        ));
    }

    #[test]
    fn lower_middle_median() {
        let mut s = Sample::new();
        for x in [4, 1, 3, 2] {
            s.push(x);
        }
        assert_eq!(s.summary().unwrap().median, 2);
        assert!(Sample::new().summary().is_none());
    }

    #[test]
    fn single_r_instance() {
        let n = net(&[("A", "B", 1), ("A", "B", 2)], &[("A", 5), ("B", 7)]);
        let rows = position_stats_temporal(&n, Thresholds::unbounded()).unwrap();
        let fs = find(&rows, "R", "first-source");
        assert_eq!(
            (fs.count, fs.mean, fs.median, fs.std),
            (1, Some(5.0), Some(5), Some(0.0))
        );
        assert_eq!(find(&rows, "R", "first-target").median, Some(7));
        assert_eq!(find(&rows, "P", "first-source").count, 0);
        assert_eq!(find(&rows, BASELINE_CLASS, "opposer").count, 2);
    }

    #[test]
    fn unknown_attribute_excluded() {
        let n = net(&[("A", "B", 1), ("A", "B", 2)], &[("A", 5)]);
        let rows = position_stats_temporal(&n, Thresholds::unbounded()).unwrap();
        assert_eq!(find(&rows, "R", "first-source").count, 1);
        let ft = find(&rows, "R", "first-target");
        assert_eq!((ft.count, ft.mean), (0, None));
    }

    #[test]
    fn per_instance_weighting() {
        // two I instances share the opposed node C
        let n = net(
            &[("A", "C", 1), ("B", "C", 2), ("D", "C", 3)],
            &[("A", 1), ("B", 2), ("C", 3), ("D", 4)],
        );
        let th = Thresholds::new(crate::Bound::Days(1), crate::Bound::Days(1)).unwrap();
        let rows = position_stats_temporal(&n, th).unwrap();
        let opposed = find(&rows, "I", "opposed");
        assert_eq!(opposed.count, 2);
        assert_eq!(opposed.mean, Some(3.0));
        assert_eq!(find(&rows, "I", "first-opposer").mean, Some(1.5));
    }

    #[test]
    fn mutual_pooled() {
        let n = net(&[("A", "B", 1), ("B", "A", 2)], &[("A", 2), ("B", 4)]);
        let rows = position_stats_static(&n).unwrap();
        let m = find(&rows, "mutual", "node");
        assert_eq!((m.count, m.mean), (2, Some(3.0)));
        assert_eq!(rows.len(), 8);
    }

    #[test]
    fn csv_header() {
        let t = position_table(&[]);
        assert_eq!(t.to_csv_string(), "class,position,count,mean,median,std\n");
    }
}
