mod common;

use common::*;
use oppnet::model::{Event, LayerKind, TemporalLayer, TwoLayerNetwork};
use oppnet::motif::{enumerate_motifs, MotifSize};
use oppnet::overlay::{attach_collaborations, PadWindow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_collab(seed: u64, n: usize, span: i64) -> TemporalLayer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=20);
    let events = (0..k)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            Event::collaboration(&node_name(a), &node_name(b), rng.gen_range(-50..span + 50)).unwrap()
        })
        .collect();
    TemporalLayer::new(LayerKind::Collaboration, events).unwrap()
}

/// For every motif, filters the full collaboration event list.
#[test]
fn overlay_matches_cross_product() {
    for seed in 0..80u64 {
        let opp = random_layer(seed, 60, 8, 200);
        let net = TwoLayerNetwork::new(opp, random_collab(seed, 8, 200), None).unwrap();
        let th = random_thresholds(seed, 200);
        let pad = PadWindow::new(seed as i64 % 40).unwrap();
        for size in [MotifSize::Two, MotifSize::Three] {
            let motifs = enumerate_motifs(net.opposition(), size, th).unwrap();
            let got: Vec<_> = attach_collaborations(&net, size, th, pad).unwrap().collect();
            assert_eq!(got.len(), motifs.len());
            for (ov, m) in got.iter().zip(&motifs) {
                assert_eq!(&ov.motif, m);
                let nodes: Vec<_> = m.roles.iter().map(|(_, n)| n).collect();
                let (lo, hi) = (m.first_time() - pad.days(), m.last_time() + pad.days());
                let mut want: Vec<(String, String, i64)> = net
                    .collaboration()
                    .events()
                    .iter()
                    .filter(|e| nodes.contains(&&e.source) && nodes.contains(&&e.target))
                    .filter(|e| lo <= e.t.0 && e.t.0 <= hi)
                    .map(|e| (e.source.to_string(), e.target.to_string(), e.t.0))
                    .collect();
                let mut have: Vec<(String, String, i64)> = ov
                    .records
                    .iter()
                    .map(|r| (r.collab.source.to_string(), r.collab.target.to_string(), r.collab.t.0))
                    .collect();
                want.sort();
                have.sort();
                assert_eq!(have, want, "seed {seed} {size:?}");
                for r in &ov.records {
                    let a = m.node(r.pair.0).unwrap();
                    let b = m.node(r.pair.1).unwrap();
                    assert!(r.collab.touches(a) && r.collab.touches(b));
                    assert_eq!(r.timing.is_some(), size == MotifSize::Two);
                }
            }
        }
    }
}
