//! Collaboration events overlaid on opposition motif instances.
//!
//! For each opposition motif, every collaboration between two of its nodes
//! inside `[t_first - pad, t_last + pad]` is attached. For 2-event motifs a
//! collaboration is timed `before` (`t < t1`), `between` (`t1 <= t <= t2`)
//! or `after` (`t > t2`).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::duration::{Thresholds, DAYS_PER_YEAR};
use crate::error::Result;
use crate::model::{Event, LayerKind, NodeId, TemporalLayer, Timestamp, TwoLayerNetwork};
use crate::motif::{role_pair_label, MotifClass, MotifEngine, MotifInstance, MotifSize, PairClass, Role};
use crate::table::{Cell, Table};

pub const DEFAULT_PAD_DAYS: i64 = 10 * DAYS_PER_YEAR;

/// Padding around a motif's time span, in days.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PadWindow(i64);

impl PadWindow {
    pub fn new(days: i64) -> Result<Self> {
        if days < 0 {
            return Err(crate::Error::Thresholds(format!("negative pad {days}")));
        }
        Ok(PadWindow(days))
    }

    pub fn days(self) -> i64 {
        self.0
    }
}

impl Default for PadWindow {
    fn default() -> Self {
        PadWindow(DEFAULT_PAD_DAYS)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Timing {
    Before,
    Between,
    After,
}

impl Timing {
    pub const ALL: [Timing; 3] = [Timing::Before, Timing::Between, Timing::After];

    pub fn of(t: i64, first: i64, last: i64) -> Timing {
        if t < first {
            Timing::Before
        } else if t <= last {
            Timing::Between
        } else {
            Timing::After
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Timing::Before => "before",
            Timing::Between => "between",
            Timing::After => "after",
        }
    }
}

pub type RolePair = (Role, Role);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlayRecord {
    pub collab: Event,
    pub pair: RolePair,
    /// Only set for 2-event motifs.
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlay {
    pub motif: MotifInstance,
    pub records: Vec<OverlayRecord>,
}

fn instance_role_pairs(m: &MotifInstance) -> Vec<(RolePair, &NodeId, &NodeId)> {
    let mut out = Vec::new();
    for i in 0..m.roles.len() {
        for j in i + 1..m.roles.len() {
            let (ri, ni) = &m.roles[i];
            let (rj, nj) = &m.roles[j];
            out.push(((*ri, *rj), ni, nj));
        }
    }
    out
}

/// Collaborations of `collab` among the motif's nodes within the padded span.
pub fn overlay_instance(collab: &TemporalLayer, motif: MotifInstance, pad: PadWindow) -> Overlay {
    let (first, last) = (motif.first_time(), motif.last_time());
    let (lo, hi) = (first - pad.0, last + pad.0);
    let two_event = motif.events.len() == 2;
    let mut records = Vec::new();
    for (pair, a, b) in instance_role_pairs(&motif) {
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        let Some(times) = collab.timeline(x, y) else { continue };
        let from = times.partition_point(|t| t.0 < lo);
        let to = times.partition_point(|t| t.0 <= hi);
        for &t in &times[from..to] {
            records.push(OverlayRecord {
                collab: Event {
                    source: x.clone(),
                    target: y.clone(),
                    t,
                    layer: LayerKind::Collaboration,
                },
                pair,
                timing: two_event.then(|| Timing::of(t.0, first, last)),
            });
        }
    }
    Overlay { motif, records }
}

/// Streams every opposition motif with its attached collaborations.
pub fn attach_collaborations<'n>(
    net: &'n TwoLayerNetwork,
    size: MotifSize,
    th: Thresholds,
    pad: PadWindow,
) -> Result<impl Iterator<Item = Overlay> + 'n> {
    let engine = MotifEngine::new(net.opposition())?;
    let collab = net.collaboration();
    Ok(engine
        .into_instances(size, th)
        .map(move |m| overlay_instance(collab, m, pad)))
}

/// How before/after interval lengths enter the per-year normalization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntervalClip {
    /// `min(pad, distance to the edge of the collaboration layer's span)`.
    ToSpan(Option<(Timestamp, Timestamp)>),
    /// Always the full pad.
    Unclipped,
}

impl IntervalClip {
    pub fn for_network(net: &TwoLayerNetwork, clip: bool) -> Self {
        if clip {
            IntervalClip::ToSpan(net.collaboration().span())
        } else {
            IntervalClip::Unclipped
        }
    }

    /// `[before, between, after]` lengths in days for a motif spanning
    /// `[first, last]`.
    pub fn lengths(self, first: i64, last: i64, pad: PadWindow) -> [i64; 3] {
        let p = pad.days();
        let (before, after) = match self {
            IntervalClip::ToSpan(Some((start, end))) => ((first - start.0).clamp(0, p), (end.0 - last).clamp(0, p)),
            IntervalClip::ToSpan(None) | IntervalClip::Unclipped => (p, p),
        };
        [before, last - first, after]
    }
}

#[derive(Clone, Debug, Default)]
struct PairAcc {
    records: u64,
    timing: [u64; 3],
}

#[derive(Clone, Debug, Default)]
struct ClassAcc {
    motifs: u64,
    /// Motifs with 0, 1, 2 and 3+ collaborations.
    buckets: [u64; 4],
    pairs: BTreeMap<RolePair, PairAcc>,
    /// Summed `[before, between, after]` lengths over motifs, in days.
    length_sum: [i128; 3],
}

/// Streaming aggregate over overlays of one motif size.
#[derive(Clone, Debug)]
pub struct OverlayStats {
    size: MotifSize,
    pad: PadWindow,
    clip: IntervalClip,
    classes: Vec<ClassAcc>,
}

impl OverlayStats {
    pub fn new(size: MotifSize, pad: PadWindow, clip: IntervalClip) -> Self {
        OverlayStats {
            size,
            pad,
            clip,
            classes: vec![ClassAcc::default(); size.class_count()],
        }
    }

    pub fn add(&mut self, ov: &Overlay) {
        let acc = &mut self.classes[ov.motif.class.index()];
        acc.motifs += 1;
        acc.buckets[ov.records.len().min(3)] += 1;
        let lens = self.clip.lengths(ov.motif.first_time(), ov.motif.last_time(), self.pad);
        for (s, l) in acc.length_sum.iter_mut().zip(lens) {
            *s += l as i128;
        }
        for r in &ov.records {
            let p = acc.pairs.entry(r.pair).or_default();
            p.records += 1;
            if let Some(t) = r.timing {
                p.timing[t as usize] += 1;
            }
        }
    }

    pub fn extend<'o>(&mut self, overlays: impl IntoIterator<Item = &'o Overlay>) {
        for ov in overlays {
            self.add(ov);
        }
    }

    pub fn from_overlays(size: MotifSize, pad: PadWindow, clip: IntervalClip, overlays: &[Overlay]) -> Self {
        let mut s = OverlayStats::new(size, pad, clip);
        s.extend(overlays);
        s
    }

    fn three_node_pair_classes(&self) -> impl Iterator<Item = PairClass> {
        let two = self.size == MotifSize::Two;
        PairClass::ALL.into_iter().filter(move |c| two && c.node_count() == 3)
    }

    pub fn count_distribution(&self) -> Vec<CountRow> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, acc)| CountRow {
                class: self.size.class_at(i),
                motifs: acc.motifs,
                fractions: (acc.motifs > 0).then(|| acc.buckets.map(|b| b as f64 / acc.motifs as f64)),
            })
            .collect()
    }

    pub fn pair_fractions(&self) -> Vec<PairFractionRow> {
        let mut rows = Vec::new();
        for class in self.three_node_pair_classes() {
            let acc = &self.classes[class.index()];
            let total: u64 = acc.pairs.values().map(|p| p.records).sum();
            for pair in crate::motif::role_pairs(class) {
                let n = acc.pairs.get(&pair).map_or(0, |p| p.records);
                rows.push(PairFractionRow {
                    class,
                    pair,
                    records: n,
                    fraction: (total > 0).then(|| n as f64 / total as f64),
                });
            }
        }
        rows
    }

    pub fn timing_fractions(&self) -> Vec<TimingRow> {
        let mut rows = Vec::new();
        for class in self.three_node_pair_classes() {
            let acc = &self.classes[class.index()];
            for pair in crate::motif::role_pairs(class) {
                let counts = acc.pairs.get(&pair).map_or([0; 3], |p| p.timing);
                let total: u64 = counts.iter().sum();
                rows.push(TimingRow {
                    class,
                    pair,
                    counts,
                    fractions: (total > 0).then(|| counts.map(|c| c as f64 / total as f64)),
                });
            }
        }
        rows
    }

    /// Mean `[before, between, after]` lengths of a class, in days.
    pub fn mean_lengths(&self, class: MotifClass) -> Option<[f64; 3]> {
        let acc = &self.classes[class.index()];
        (acc.motifs > 0).then(|| acc.length_sum.map(|s| s as f64 / acc.motifs as f64))
    }

    pub fn timing_per_year(&self) -> Vec<PerYearRow> {
        self.timing_fractions()
            .into_iter()
            .map(|row| {
                let lens = self.mean_lengths(MotifClass::Pair(row.class));
                let per_year = row.fractions.map(|fr| {
                    let mut out = [None; 3];
                    for k in 0..3 {
                        out[k] = if fr[k] == 0.0 {
                            Some(0.0)
                        } else {
                            match lens {
                                Some(l) if l[k] > 0.0 => Some(fr[k] / (l[k] / DAYS_PER_YEAR as f64)),
                                _ => None,
                            }
                        };
                    }
                    out
                });
                PerYearRow {
                    class: row.class,
                    pair: row.pair,
                    mean_length_years: lens.map(|l| l.map(|d| d / DAYS_PER_YEAR as f64)),
                    per_year,
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountRow {
    pub class: MotifClass,
    pub motifs: u64,
    /// Fractions of motifs with 0, 1, 2, 3+ collaborations.
    pub fractions: Option<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairFractionRow {
    pub class: PairClass,
    pub pair: RolePair,
    pub records: u64,
    pub fraction: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimingRow {
    pub class: PairClass,
    pub pair: RolePair,
    /// Records before, between and after.
    pub counts: [u64; 3],
    pub fractions: Option<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerYearRow {
    pub class: PairClass,
    pub pair: RolePair,
    pub mean_length_years: Option<[f64; 3]>,
    /// Per interval; `None` where the mean interval length is zero.
    pub per_year: Option<[Option<f64>; 3]>,
}

pub fn collab_count_distribution(size: MotifSize, overlays: &[Overlay]) -> Vec<CountRow> {
    OverlayStats::from_overlays(size, PadWindow::default(), IntervalClip::Unclipped, overlays).count_distribution()
}

pub fn collab_pair_fractions(overlays: &[Overlay]) -> Vec<PairFractionRow> {
    OverlayStats::from_overlays(MotifSize::Two, PadWindow::default(), IntervalClip::Unclipped, overlays)
        .pair_fractions()
}

pub fn collab_timing_fractions(overlays: &[Overlay]) -> Vec<TimingRow> {
    OverlayStats::from_overlays(MotifSize::Two, PadWindow::default(), IntervalClip::Unclipped, overlays)
        .timing_fractions()
}

pub fn collab_timing_per_year(overlays: &[Overlay], pad: PadWindow, clip: IntervalClip) -> Vec<PerYearRow> {
    OverlayStats::from_overlays(MotifSize::Two, pad, clip, overlays).timing_per_year()
}

fn opt_cells<const N: usize>(v: Option<[f64; N]>) -> Vec<Cell> {
    match v {
        Some(a) => a.iter().map(|&x| Cell::Float(x)).collect(),
        None => vec![Cell::Empty; N],
    }
}

pub fn count_table(rows: &[CountRow]) -> Table {
    let mut t = Table::new(&["class", "motifs", "c0", "c1", "c2", "c3plus"]);
    for r in rows {
        let mut row = vec![r.class.label().into(), r.motifs.into()];
        row.extend(opt_cells(r.fractions));
        t.push(row);
    }
    t
}

pub fn pair_table(rows: &[PairFractionRow]) -> Table {
    let mut t = Table::new(&["class", "pair", "records", "fraction"]);
    for r in rows {
        t.push(vec![
            r.class.label().into(),
            role_pair_label(r.pair).into(),
            r.records.into(),
            r.fraction.into(),
        ]);
    }
    t
}

pub fn timing_table(rows: &[TimingRow]) -> Table {
    let mut t = Table::new(&["class", "pair", "records", "before", "between", "after"]);
    for r in rows {
        let mut row = vec![
            r.class.label().into(),
            role_pair_label(r.pair).into(),
            r.counts.iter().sum::<u64>().into(),
        ];
        row.extend(opt_cells(r.fractions));
        t.push(row);
    }
    t
}

pub fn per_year_table(rows: &[PerYearRow]) -> Table {
    let mut t = Table::new(&[
        "class",
        "pair",
        "before_len_years",
        "between_len_years",
        "after_len_years",
        "before_per_year",
        "between_per_year",
        "after_per_year",
    ]);
    for r in rows {
        let mut row = vec![r.class.label().into(), role_pair_label(r.pair).into()];
        row.extend(opt_cells(r.mean_length_years));
        match r.per_year {
            Some(v) => row.extend(v.iter().map(|&x| Cell::from(x))),
            None => row.extend(vec![Cell::Empty; 3]),
        }
        t.push(row);
    }
    t
}

/// Individual records, one row per attached collaboration.
pub fn records_table<'o>(overlays: impl IntoIterator<Item = &'o Overlay>) -> Table {
    let mut t = Table::new(&[
        "class",
        "motif_events",
        "motif_start",
        "motif_end",
        "collab_a",
        "collab_b",
        "collab_date",
        "pair",
        "timing",
    ]);
    for ov in overlays {
        let ids: Vec<String> = ov.motif.event_ids.iter().map(|i| i.to_string()).collect();
        for r in &ov.records {
            t.push(vec![
                ov.motif.class.label().into(),
                ids.join(" ").into(),
                ov.motif.events[0].t.to_string().into(),
                ov.motif.events[ov.motif.events.len() - 1].t.to_string().into(),
                r.collab.source.as_str().into(),
                r.collab.target.as_str().into(),
                r.collab.t.to_string().into(),
                role_pair_label(r.pair).into(),
                r.timing.map(|t| t.label()).into(),
            ]);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LayerKind;

    fn net(opp: &[(&str, &str, i64)], col: &[(&str, &str, i64)]) -> TwoLayerNetwork {
        let o = TemporalLayer::new(
            LayerKind::Opposition,
            opp.iter()
                .map(|&(s, t, d)| Event::opposition(s, t, d).unwrap())
                .collect(),
        )
        .unwrap();
        let c = TemporalLayer::new(
            LayerKind::Collaboration,
            col.iter()
                .map(|&(s, t, d)| Event::collaboration(s, t, d).unwrap())
                .collect(),
        )
        .unwrap();
        TwoLayerNetwork::new(o, c, None).unwrap()
    }

    fn overlays(n: &TwoLayerNetwork) -> Vec<Overlay> {
        attach_collaborations(n, MotifSize::Two, Thresholds::unbounded(), PadWindow::default())
            .unwrap()
            .collect()
    }

    #[test]
    fn toy_overlay() {
        let n = net(&[("A", "B", 1), ("B", "A", 3), ("B", "C", 3)], &[("A", "C", 2)]);
        let ovs = overlays(&n);
        assert_eq!(ovs.len(), 2);
        let c = ovs
            .iter()
            .find(|o| o.motif.class == MotifClass::Pair(PairClass::C))
            .unwrap();
        assert_eq!(c.records.len(), 1);
        assert_eq!(c.records[0].pair, (Role::FirstSource, Role::SecondTarget));
        assert_eq!(c.records[0].timing, Some(Timing::Between));
        let p = ovs
            .iter()
            .find(|o| o.motif.class == MotifClass::Pair(PairClass::P))
            .unwrap();
        assert!(p.records.is_empty());

        let dist = collab_count_distribution(MotifSize::Two, &ovs);
        assert_eq!(dist[PairClass::C.index()].fractions, Some([0.0, 1.0, 0.0, 0.0]));
        assert_eq!(dist[PairClass::R.index()].fractions, None);
    }

    #[test]
    fn boundary_is_between() {
        assert_eq!(Timing::of(10, 10, 20), Timing::Between);
        assert_eq!(Timing::of(20, 10, 20), Timing::Between);
        assert_eq!(Timing::of(9, 10, 20), Timing::Before);
        assert_eq!(Timing::of(21, 10, 20), Timing::After);
    }

    #[test]
    fn pad_limits_records() {
        let n = net(
            &[("A", "B", 5000), ("A", "C", 5100)],
            &[
                ("B", "C", 5000 - 3651),
                ("B", "C", 5000 - 3650),
                ("B", "C", 5100 + 3651),
            ],
        );
        let ovs = overlays(&n);
        assert_eq!(ovs.len(), 1);
        assert_eq!(ovs[0].records.len(), 1);
        assert_eq!(ovs[0].records[0].timing, Some(Timing::Before));
    }

    #[test]
    fn no_collaboration_gives_empty_list() {
        let n = net(&[("A", "B", 1), ("A", "C", 2)], &[("X", "Y", 1)]);
        assert!(overlays(&n)[0].records.is_empty());
    }

    #[test]
    fn fractions_and_per_year() {
        // O motifs (A -> B, A -> C) with collaborations on the B|C pair
        let n = net(
            &[("A", "B", 1000), ("A", "C", 1000 + 4 * 365)],
            &[("B", "C", 999), ("B", "C", 1001), ("B", "C", 1002), ("C", "B", 2500)],
        );
        let ovs = overlays(&n);
        let pf = collab_pair_fractions(&ovs);
        let oc: Vec<_> = pf.iter().filter(|r| r.class == PairClass::O).collect();
        assert_eq!(oc.len(), 3);
        let bc = oc
            .iter()
            .find(|r| r.pair == (Role::FirstOpposed, Role::SecondOpposed))
            .unwrap();
        assert_eq!(bc.fraction, Some(1.0));
        assert!(pf
            .iter()
            .filter(|r| r.class == PairClass::I)
            .all(|r| r.fraction.is_none()));

        let tf = collab_timing_fractions(&ovs);
        let cell = tf
            .iter()
            .find(|r| r.class == PairClass::O && r.pair == (Role::FirstOpposed, Role::SecondOpposed))
            .unwrap();
        assert_eq!(cell.fractions, Some([0.25, 0.5, 0.25]));

        let py = collab_timing_per_year(&ovs, PadWindow::default(), IntervalClip::Unclipped);
        let cell = py
            .iter()
            .find(|r| r.class == PairClass::O && r.pair == (Role::FirstOpposed, Role::SecondOpposed))
            .unwrap();
        let v = cell.per_year.unwrap();
        assert!((v[0].unwrap() - 0.025).abs() < 1e-12);
        assert!((v[1].unwrap() - 0.5 / 4.0).abs() < 1e-12);
        assert!((v[2].unwrap() - 0.025).abs() < 1e-12);
    }

    #[test]
    fn clipped_lengths() {
        let span = Some((Timestamp(100), Timestamp(1000)));
        let pad = PadWindow::new(365).unwrap();
        assert_eq!(IntervalClip::ToSpan(span).lengths(300, 400, pad), [200, 100, 365]);
        assert_eq!(IntervalClip::ToSpan(span).lengths(50, 990, pad), [0, 940, 10]);
        assert_eq!(IntervalClip::Unclipped.lengths(300, 400, pad), [365, 100, 365]);
    }

    #[test]
    fn three_event_overlay_has_no_timing() {
        let n = net(&[("A", "B", 1), ("B", "C", 2), ("C", "A", 3)], &[("A", "C", 2)]);
        let ovs: Vec<Overlay> =
            attach_collaborations(&n, MotifSize::Three, Thresholds::unbounded(), PadWindow::default())
                .unwrap()
                .collect();
        assert_eq!(ovs.len(), 1);
        assert_eq!(ovs[0].records.len(), 1);
        assert_eq!(ovs[0].records[0].timing, None);
        let d = collab_count_distribution(MotifSize::Three, &ovs);
        assert_eq!(d.len(), 36);
    }
}
