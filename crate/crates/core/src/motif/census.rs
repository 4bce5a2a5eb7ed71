use serde::Serialize;

use crate::duration::Thresholds;
use crate::error::{Error, Result};
use crate::model::TemporalLayer;
use crate::table::Table;

use super::class::{MotifClass, MotifSize};
use super::engine::{MotifEngine, Plan};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BinMode {
    /// Bins on the largest gap between consecutive events; the window bound
    /// is fixed at the largest boundary.
    Gap,
    /// Bins on the timespan from first to last event.
    Window,
}

impl std::str::FromStr for BinMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gap" => Ok(BinMode::Gap),
            "window" => Ok(BinMode::Window),
            _ => Err(Error::Bins(format!("unknown bin mode '{s}' (gap|window)"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CensusConfig {
    Thresholds {
        delta_c: Option<i64>,
        delta_w: Option<i64>,
    },
    /// Half-open bin `(lo, hi]` in days.
    Bin {
        lo: i64,
        hi: i64,
        mode: BinMode,
    },
}

/// Per-class motif counts; every class of the size is present.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CensusResult {
    pub config: CensusConfig,
    pub size: MotifSize,
    pub counts: Vec<(MotifClass, u64)>,
}

impl CensusResult {
    fn from_counts(config: CensusConfig, size: MotifSize, raw: Vec<u64>) -> Self {
        let counts = raw
            .into_iter()
            .enumerate()
            .map(|(i, n)| (size.class_at(i), n))
            .collect();
        CensusResult { config, size, counts }
    }

    pub fn count(&self, class: MotifClass) -> u64 {
        self.counts[class.index()].1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|(_, n)| n).sum()
    }

    pub fn raw(&self) -> Vec<u64> {
        self.counts.iter().map(|(_, n)| *n).collect()
    }

    /// `class,count`
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["class", "count"]);
        for (c, n) in &self.counts {
            t.push(vec![c.label().into(), (*n).into()]);
        }
        t
    }
}

/// `bin_lo_days,bin_hi_days,class,count`, one row per bin and class.
pub fn bins_table(bins: &[CensusResult]) -> Table {
    let mut t = Table::new(&["bin_lo_days", "bin_hi_days", "class", "count"]);
    for b in bins {
        let (lo, hi) = match b.config {
            CensusConfig::Bin { lo, hi, .. } => (Some(lo), Some(hi)),
            CensusConfig::Thresholds { .. } => (None, None),
        };
        for (c, n) in &b.counts {
            t.push(vec![lo.into(), hi.into(), c.label().into(), (*n).into()]);
        }
    }
    t
}

/// Counts motif instances per class.
pub fn census(layer: &TemporalLayer, size: MotifSize, th: Thresholds) -> Result<CensusResult> {
    let engine = MotifEngine::new(layer)?;
    Ok(census_with(&engine, size, th))
}

pub fn census_with(engine: &MotifEngine<'_>, size: MotifSize, th: Thresholds) -> CensusResult {
    let mut bins = engine.count(size, Plan::Census(th));
    CensusResult::from_counts(
        CensusConfig::Thresholds {
            delta_c: th.delta_c().days(),
            delta_w: th.delta_w().days(),
        },
        size,
        bins.remove(0),
    )
}

/// Converts ascending boundaries `[b0, b1, ...]` into bins
/// `(0, b0], (b0, b1], ...`.
pub fn bins_from_boundaries(boundaries: &[i64]) -> Result<Vec<(i64, i64)>> {
    if boundaries.is_empty() {
        return Err(Error::Bins("no boundaries given".into()));
    }
    if boundaries[0] <= 0 {
        return Err(Error::Bins(format!(
            "first boundary must be positive, got {}",
            boundaries[0]
        )));
    }
    if boundaries.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Bins("boundaries must be strictly ascending".into()));
    }
    let mut lo = 0;
    Ok(boundaries
        .iter()
        .map(|&hi| {
            let bin = (lo, hi);
            lo = hi;
            bin
        })
        .collect())
}

/// Census split into disjoint duration bins; bin totals add up to the census
/// at `delta_c = delta_w = last boundary`.
pub fn binned_census(
    layer: &TemporalLayer,
    size: MotifSize,
    boundaries: &[i64],
    mode: BinMode,
) -> Result<Vec<CensusResult>> {
    let bins = bins_from_boundaries(boundaries)?;
    let engine = MotifEngine::new(layer)?;
    let max = *boundaries.last().expect("non-empty");
    let plan = match mode {
        BinMode::Gap => Plan::Gap { bins: &bins, max },
        BinMode::Window => Plan::Window { bins: &bins, max },
    };
    let counts = engine.count(size, plan);
    Ok(bins
        .iter()
        .zip(counts)
        .map(|(&(lo, hi), raw)| CensusResult::from_counts(CensusConfig::Bin { lo, hi, mode }, size, raw))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duration::Bound;
    use crate::model::{Event, LayerKind};
    use crate::motif::class::PairClass;

    fn layer(events: &[(&str, &str, i64)]) -> TemporalLayer {
        TemporalLayer::new(
            LayerKind::Opposition,
            events
                .iter()
                .map(|&(s, t, d)| Event::opposition(s, t, d).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn toy_census() {
        let l = layer(&[("A", "B", 1), ("B", "A", 3), ("B", "C", 3)]);
        let c = census(&l, MotifSize::Two, Thresholds::unbounded()).unwrap();
        assert_eq!(c.count(MotifClass::Pair(PairClass::P)), 1);
        assert_eq!(c.count(MotifClass::Pair(PairClass::C)), 1);
        assert_eq!(c.total(), 2);
        assert_eq!(c.counts.len(), 6);
    }

    #[test]
    fn empty_layer_all_zero() {
        let l = TemporalLayer::empty(LayerKind::Opposition);
        for size in [MotifSize::Two, MotifSize::Three] {
            let c = census(&l, size, Thresholds::unbounded()).unwrap();
            assert_eq!(c.counts.len(), size.class_count());
            assert_eq!(c.total(), 0);
        }
    }

    #[test]
    fn gap_bins() {
        let l = layer(&[("A", "B", 1), ("A", "B", 400)]);
        let bins = binned_census(&l, MotifSize::Two, &[365, 730], BinMode::Gap).unwrap();
        assert_eq!(bins[0].total(), 0);
        assert_eq!(bins[1].count(MotifClass::Pair(PairClass::R)), 1);
    }

    #[test]
    fn single_event_bins_zero() {
        let l = layer(&[("A", "B", 1)]);
        for mode in [BinMode::Gap, BinMode::Window] {
            let bins = binned_census(&l, MotifSize::Three, &[10, 20], mode).unwrap();
            assert!(bins.iter().all(|b| b.total() == 0));
        }
    }

    #[test]
    fn bad_boundaries() {
        assert!(bins_from_boundaries(&[]).is_err());
        assert!(bins_from_boundaries(&[0, 10]).is_err());
        assert!(bins_from_boundaries(&[10, 5]).is_err());
        assert!(bins_from_boundaries(&[10, 10]).is_err());
        assert_eq!(bins_from_boundaries(&[365, 730]).unwrap(), vec![(0, 365), (365, 730)]);
    }

    #[test]
    fn bins_partition_census() {
        let l = layer(&[
            ("A", "B", 1),
            ("B", "C", 5),
            ("C", "A", 9),
            ("A", "B", 30),
            ("A", "C", 31),
            ("B", "A", 70),
        ]);
        let th = Thresholds::new(Bound::Days(40), Bound::Days(40)).unwrap();
        for size in [MotifSize::Two, MotifSize::Three] {
            let whole = census(&l, size, th).unwrap();
            for mode in [BinMode::Gap, BinMode::Window] {
                let bins = binned_census(&l, size, &[3, 10, 25, 40], mode).unwrap();
                let mut sum = vec![0; size.class_count()];
                for b in &bins {
                    for (s, n) in sum.iter_mut().zip(b.raw()) {
                        *s += n;
                    }
                }
                assert_eq!(sum, whole.raw(), "{size:?} {mode:?}");
            }
        }
    }
}
