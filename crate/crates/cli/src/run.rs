use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use oppnet::attrstats::{attribute_distribution, position_stats_static, position_stats_temporal, position_table};
use oppnet::duration::Thresholds;
use oppnet::io::{parse_attribute_file, parse_event_file, write_attribute_file, write_event_file};
use oppnet::model::{layer_summary, LayerKind, TemporalLayer, TwoLayerNetwork};
use oppnet::motif::{binned_census, bins_table, census, static_census, static_projection, MotifSize};
use oppnet::nullmodel::{RandomSeed, Registry};
use oppnet::overlay::{
    attach_collaborations, count_table, pair_table, per_year_table, records_table, timing_table, IntervalClip,
    OverlayStats, PadWindow,
};
use oppnet::significance::{rank_classes, z_scores, Direction};
use oppnet::synth::{generate, SynthConfig};
use oppnet::table::Table;

use crate::args::{Cli, Command, InputArgs, OutputArgs, OverlayTable, Rank, Switch, ThresholdArgs};

pub fn run(cli: Cli) -> Result<()> {
    let threads = cli.output.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building thread pool")?;
    let output = cli.output.clone();
    let table = pool.install(|| execute(cli.command))?;
    emit(&table, &output)
}

fn emit(table: &Table, out: &OutputArgs) -> Result<()> {
    match &out.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(f);
            table.write(out.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(out.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn open(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(input: &InputArgs) -> Result<TwoLayerNetwork> {
    let opp = parse_event_file(open(&input.opposition)?, true)
        .with_context(|| format!("in {}", input.opposition.display()))?;
    let collab = match &input.collab {
        Some(p) => parse_event_file(open(p)?, false).with_context(|| format!("in {}", p.display()))?,
        None => TemporalLayer::empty(LayerKind::Collaboration),
    };
    let attrs = match &input.attrs {
        Some(p) => Some(parse_attribute_file(open(p)?).with_context(|| format!("in {}", p.display()))?),
        None => None,
    };
    Ok(TwoLayerNetwork::new(opp, collab, attrs)?)
}

fn thresholds(th: ThresholdArgs) -> Result<Thresholds> {
    Ok(Thresholds::new(th.dc, th.dw)?)
}

fn size(events: u8) -> Result<MotifSize> {
    Ok(MotifSize::from_events(events as usize)?)
}

fn events_table(layer: &TemporalLayer) -> Table {
    let mut t = Table::new(&["source", "target", "date"]);
    for e in layer.events() {
        t.push(vec![
            e.source.as_str().into(),
            e.target.as_str().into(),
            e.t.to_string().into(),
        ]);
    }
    t
}

fn summary_table(net: &TwoLayerNetwork) -> Table {
    let mut t = Table::new(&["layer", "nodes", "active_nodes", "edges", "events", "start", "end"]);
    for s in layer_summary(net) {
        let layer = match s.layer {
            LayerKind::Opposition => "opposition",
            LayerKind::Collaboration => "collaboration",
        };
        t.push(vec![
            layer.into(),
            s.nodes.into(),
            s.active_nodes.into(),
            s.edges.into(),
            s.events.into(),
            s.start.map(|d| d.to_string()).into(),
            s.end.map(|d| d.to_string()).into(),
        ]);
    }
    t
}

fn execute(cmd: Command) -> Result<Table> {
    Ok(match cmd {
        Command::Summary { input } => summary_table(&load(&input)?),
        Command::Census2 { input, th } => {
            census(load(&input)?.opposition(), MotifSize::Two, thresholds(th)?)?.to_table()
        }
        Command::Census3 { input, th } => {
            census(load(&input)?.opposition(), MotifSize::Three, thresholds(th)?)?.to_table()
        }
        Command::CensusBins {
            input,
            events,
            bins,
            bin_mode,
        } => bins_table(&binned_census(
            load(&input)?.opposition(),
            size(events)?,
            &bins,
            bin_mode,
        )?),
        Command::StaticCensus { input } => static_census(&static_projection(load(&input)?.opposition())).to_table(),
        Command::NullSample { input, model, seed } => {
            let net = load(&input)?;
            let shuffled =
                Registry::with_swaps(model.swaps).shuffle(net.opposition(), model.model, RandomSeed(seed.seed))?;
            events_table(&shuffled)
        }
        Command::Zscore {
            input,
            events,
            th,
            model,
            samples,
            seed,
            std,
            rank,
            top,
        } => {
            let net = load(&input)?;
            let report = z_scores(
                &Registry::with_swaps(model.swaps),
                net.opposition(),
                size(events)?,
                thresholds(th)?,
                model.model,
                samples,
                RandomSeed(seed.seed),
                std,
            )?;
            match rank {
                None => report.to_table(),
                Some(r) => {
                    let dir = match r {
                        Rank::Most => Direction::Most,
                        Rank::Least => Direction::Least,
                    };
                    rank_classes(&report, dir, top).to_table()
                }
            }
        }
        Command::Overlay {
            input,
            events,
            th,
            pad,
            table,
            clip_intervals,
        } => {
            let net = load(&input)?;
            if input.collab.is_none() {
                bail!("overlay needs --collab");
            }
            let size = size(events)?;
            let pad = PadWindow::new(pad)?;
            let th = thresholds(th)?;
            if size == MotifSize::Three
                && matches!(
                    table,
                    OverlayTable::Timing | OverlayTable::PerYear | OverlayTable::Pairs
                )
            {
                bail!("only --table counts or records are defined for 3-event motifs");
            }
            let stream = attach_collaborations(&net, size, th, pad)?;
            if table == OverlayTable::Records {
                let overlays: Vec<_> = stream.filter(|o| !o.records.is_empty()).collect();
                return Ok(records_table(&overlays));
            }
            let clip = IntervalClip::for_network(&net, clip_intervals == Switch::On);
            let mut stats = OverlayStats::new(size, pad, clip);
            for ov in stream {
                stats.add(&ov);
            }
            match table {
                OverlayTable::Counts => count_table(&stats.count_distribution()),
                OverlayTable::Pairs => pair_table(&stats.pair_fractions()),
                OverlayTable::Timing => timing_table(&stats.timing_fractions()),
                OverlayTable::PerYear => per_year_table(&stats.timing_per_year()),
                OverlayTable::Records => unreachable!(),
            }
        }
        Command::AttrTemporal { input, th } => {
            position_table(&position_stats_temporal(&load(&input)?, thresholds(th)?)?)
        }
        Command::AttrStatic { input } => position_table(&position_stats_static(&load(&input)?)?),
        Command::AttrDist { input, histogram } => {
            let d = attribute_distribution(&load(&input)?)?;
            if histogram {
                d.histogram_table()
            } else {
                d.summary_table()
            }
        }
        Command::Synth {
            nodes,
            ops,
            collabs,
            span,
            activity_exponent,
            burst,
            attr_exponent,
            seed,
            out_dir,
        } => {
            let cfg = SynthConfig {
                node_count: nodes,
                opposition_events: ops,
                collaboration_events: collabs,
                span_days: span,
                activity_exponent,
                burst_prob: burst,
                attr_exponent,
                seed: RandomSeed(seed.seed),
                ..SynthConfig::default()
            };
            let net = generate(&cfg)?;
            fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            let create = |name: &str| -> Result<BufWriter<File>> {
                let p = out_dir.join(name);
                Ok(BufWriter::new(
                    File::create(&p).with_context(|| format!("creating {}", p.display()))?,
                ))
            };
            write_event_file(net.opposition(), create("opposition.csv")?)?;
            write_event_file(net.collaboration(), create("collaboration.csv")?)?;
            write_attribute_file(net.attributes()?, create("attributes.csv")?)?;
            summary_table(&net)
        }
    })
}
