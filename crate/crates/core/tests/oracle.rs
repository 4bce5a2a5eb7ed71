mod common;

use common::*;
use oppnet::duration::{Bound, Thresholds};
use oppnet::model::{Event, LayerKind, TemporalLayer};
use oppnet::motif::{binned_census, census, enumerate_motifs, BinMode, MotifSize};
use proptest::prelude::*;

#[test]
fn census_matches_brute_force() {
    for seed in 0..120u64 {
        let layer = random_layer(seed, 40, 8, 60);
        let th = random_thresholds(seed, 60);
        for (m, size) in [(2, MotifSize::Two), (3, MotifSize::Three)] {
            let fast = census(&layer, size, th).unwrap();
            assert_eq!(
                census_map(&fast),
                brute_census(&layer, m, th),
                "seed {seed} m {m} {th:?}"
            );
        }
    }
}

#[test]
fn enumeration_matches_brute_force_tuples() {
    for seed in 500..560u64 {
        let layer = random_layer(seed, 30, 6, 40);
        let th = random_thresholds(seed, 40);
        for (m, size) in [(2, MotifSize::Two), (3, MotifSize::Three)] {
            let got: Vec<Vec<usize>> = enumerate_motifs(&layer, size, th)
                .unwrap()
                .into_iter()
                .map(|i| i.event_ids)
                .collect();
            assert_eq!(got, brute_tuples(&layer, m, th), "seed {seed} m {m}");
        }
    }
}

#[test]
fn enumeration_agrees_with_census_by_class() {
    for seed in 900..940u64 {
        let layer = random_layer(seed, 50, 10, 200);
        let th = random_thresholds(seed, 200);
        let c = census(&layer, MotifSize::Three, th).unwrap();
        let mut by_class = vec![0u64; 36];
        for inst in enumerate_motifs(&layer, MotifSize::Three, th).unwrap() {
            by_class[inst.class.index()] += 1;
        }
        assert_eq!(by_class, c.raw(), "seed {seed}");
    }
}

/// Every 3-event tuple on exactly 3 nodes is weakly connected, so the node
/// bound alone decides 3-node membership.
#[test]
fn three_node_triples_are_connected() {
    let names = ["a", "b", "c"];
    let mut edges = Vec::new();
    for s in names {
        for t in names {
            if s != t {
                edges.push((s, t));
            }
        }
    }
    for &e1 in &edges {
        for &e2 in &edges {
            for &e3 in &edges {
                let mut nodes = vec![e1.0, e1.1, e2.0, e2.1, e3.0, e3.1];
                nodes.sort();
                nodes.dedup();
                if nodes.len() != 3 {
                    continue;
                }
                // union-find over three nodes
                let idx = |x: &str| names.iter().position(|n| *n == x).unwrap();
                let mut parent = [0usize, 1, 2];
                fn find(p: &mut [usize; 3], x: usize) -> usize {
                    if p[x] != x {
                        p[x] = find(p, p[x]);
                    }
                    p[x]
                }
                for (s, t) in [e1, e2, e3] {
                    let (a, b) = (find(&mut parent, idx(s)), find(&mut parent, idx(t)));
                    parent[a] = b;
                }
                let root = find(&mut parent, 0);
                assert!((0..3).all(|x| find(&mut parent, x) == root));
            }
        }
    }
}

fn total(layer: &TemporalLayer, size: MotifSize, c: Bound, w: Bound) -> u64 {
    census(layer, size, Thresholds::new(c, w).unwrap()).unwrap().total()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn census_monotone_in_thresholds(seed in any::<u64>(), a in 0i64..50, b in 0i64..50) {
        let layer = random_layer(seed, 35, 7, 80);
        let (lo, hi) = (a.min(b), a.max(b));
        for size in [MotifSize::Two, MotifSize::Three] {
            // delta_c ladder at fixed window
            prop_assert!(total(&layer, size, Bound::Days(lo), Bound::Days(hi))
                <= total(&layer, size, Bound::Days(hi), Bound::Days(hi)));
            // delta_w ladder at fixed gap bound
            prop_assert!(total(&layer, size, Bound::Days(lo), Bound::Days(lo))
                <= total(&layer, size, Bound::Days(lo), Bound::Days(hi)));
            prop_assert!(total(&layer, size, Bound::Days(hi), Bound::Days(hi))
                <= total(&layer, size, Bound::Unbounded, Bound::Unbounded));
        }
    }

    #[test]
    fn bins_sum_to_census(seed in any::<u64>(), cuts in proptest::collection::btree_set(1i64..90, 1..5)) {
        let layer = random_layer(seed, 35, 7, 100);
        let bounds: Vec<i64> = cuts.into_iter().collect();
        let max = *bounds.last().unwrap();
        for size in [MotifSize::Two, MotifSize::Three] {
            let whole = census(&layer, size, Thresholds::both(max).unwrap()).unwrap().raw();
            for mode in [BinMode::Gap, BinMode::Window] {
                let bins = binned_census(&layer, size, &bounds, mode).unwrap();
                let mut sum = vec![0u64; size.class_count()];
                for b in &bins {
                    for (s, n) in sum.iter_mut().zip(b.raw()) { *s += n; }
                }
                prop_assert_eq!(&sum, &whole);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic(seed in any::<u64>()) {
        let layer = random_layer(seed, 30, 6, 50);
        let a = enumerate_motifs(&layer, MotifSize::Three, Thresholds::unbounded()).unwrap();
        let b = enumerate_motifs(&layer, MotifSize::Three, Thresholds::unbounded()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn binned_instances_match_brute_force_keys() {
    // Brute-force bin assignment by max gap / span, compared per bin.
    for seed in 40..70u64 {
        let layer = random_layer(seed, 30, 6, 120);
        let bounds = [10i64, 30, 60, 100];
        let th = Thresholds::both(100).unwrap();
        let tuples = brute_tuples(&layer, 3, th);
        let ev = layer.events();
        for mode in [BinMode::Gap, BinMode::Window] {
            let bins = binned_census(&layer, MotifSize::Three, &bounds, mode).unwrap();
            let mut expect = vec![0u64; bounds.len()];
            for t in &tuples {
                let key = match mode {
                    BinMode::Gap => (ev[t[1]].t.0 - ev[t[0]].t.0).max(ev[t[2]].t.0 - ev[t[1]].t.0),
                    BinMode::Window => ev[t[2]].t.0 - ev[t[0]].t.0,
                };
                let b = bounds.iter().position(|&hi| key <= hi).unwrap();
                expect[b] += 1;
            }
            let got: Vec<u64> = bins.iter().map(|b| b.total()).collect();
            assert_eq!(got, expect, "seed {seed} {mode:?}");
        }
    }
}

#[test]
fn same_day_events_never_share_a_motif() {
    let ev = vec![
        Event::opposition("A", "B", 5).unwrap(),
        Event::opposition("A", "C", 5).unwrap(),
        Event::opposition("A", "B", 5).unwrap(),
    ];
    let layer = TemporalLayer::new(LayerKind::Opposition, ev).unwrap();
    for size in [MotifSize::Two, MotifSize::Three] {
        assert_eq!(census(&layer, size, Thresholds::unbounded()).unwrap().total(), 0);
    }
}
