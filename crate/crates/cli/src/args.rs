use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oppnet::duration::Bound;
use oppnet::motif::BinMode;
use oppnet::nullmodel::{NullModelKind, DEFAULT_SWAPS_PER_EDGE};
use oppnet::significance::Divisor;
use oppnet::table::Format;

#[derive(Parser, Debug)]
#[command(
    name = "oppnet",
    version,
    about = "Temporal motif analysis of opposition/collaboration networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output table format
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    pub format: Format,

    /// Write the table here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (default: available cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Directed opposition events, `source,target,date`
    #[arg(long)]
    pub opposition: PathBuf,

    /// Undirected collaboration events, `node_a,node_b,date`
    #[arg(long)]
    pub collab: Option<PathBuf>,

    /// Node attributes, `node,patent_count`
    #[arg(long)]
    pub attrs: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ThresholdArgs {
    /// Max gap between consecutive motif events (e.g. 10y, 18m, 100d, inf)
    #[arg(long, default_value = "10y", value_parser = parse_bound)]
    pub dc: Bound,

    /// Max span from first to last motif event
    #[arg(long, default_value = "10y", value_parser = parse_bound)]
    pub dw: Bound,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SeedArgs {
    /// Seed for all randomization (required)
    #[arg(long)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModelArgs {
    /// Null model
    #[arg(long, value_parser = parse_model)]
    pub model: NullModelKind,

    /// Accepted swaps per edge for dcls
    #[arg(long, default_value_t = DEFAULT_SWAPS_PER_EDGE)]
    pub swaps: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OverlayTable {
    /// Share of motifs with 0, 1, 2, 3+ collaborations
    Counts,
    /// Share of collaborations per node pair position
    Pairs,
    /// Before/between/after shares per node pair
    Timing,
    /// Timing shares per year of interval length
    PerYear,
    /// One row per attached collaboration
    Records,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rank {
    Most,
    Least,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Node, edge and event counts and time span per layer
    Summary {
        #[command(flatten)]
        input: InputArgs,
    },
    /// 2-event motif census
    Census2 {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        th: ThresholdArgs,
    },
    /// 3-event motif census
    Census3 {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        th: ThresholdArgs,
    },
    /// Census split into duration bins
    CensusBins {
        #[command(flatten)]
        input: InputArgs,
        /// Events per motif
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        events: u8,
        /// Ascending bin upper bounds, e.g. 1m,6m,1y,10y
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_finite)]
        bins: Vec<i64>,
        #[arg(long, default_value = "gap", value_parser = parse_bin_mode)]
        bin_mode: BinMode,
    },
    /// Census of 2-edge patterns in the static projection
    StaticCensus {
        #[command(flatten)]
        input: InputArgs,
    },
    /// One randomized opposition layer
    NullSample {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Z scores of motif classes against a null model
    Zscore {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        events: u8,
        #[command(flatten)]
        th: ThresholdArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Null samples
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArgs,
        /// Variance divisor
        #[arg(long, default_value = "population", value_parser = parse_divisor)]
        std: Divisor,
        /// Emit a ranking of classes instead of the score table
        #[arg(long)]
        rank: Option<Rank>,
        /// Classes in the ranking
        #[arg(long, default_value_t = 5)]
        top: usize,
    },
    /// Collaborations attached to opposition motifs
    Overlay {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        events: u8,
        #[command(flatten)]
        th: ThresholdArgs,
        /// Padding around each motif
        #[arg(long, default_value = "10y", value_parser = parse_finite)]
        pad: i64,
        #[arg(long, value_enum, default_value = "counts")]
        table: OverlayTable,
        /// Clip before/after intervals to the collaboration span
        #[arg(long, value_enum, default_value = "on")]
        clip_intervals: Switch,
    },
    /// Attribute statistics per 2-event motif position
    AttrTemporal {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        th: ThresholdArgs,
    },
    /// Attribute statistics per static pattern position
    AttrStatic {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Attribute summary or histogram
    AttrDist {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the log-binned histogram instead of the summary
        #[arg(long)]
        histogram: bool,
    },
    /// Write a synthetic network to a directory
    Synth {
        #[arg(long, default_value_t = 1000)]
        nodes: usize,
        #[arg(long, default_value_t = 3000)]
        ops: usize,
        #[arg(long, default_value_t = 150)]
        collabs: usize,
        /// Observation span in days
        #[arg(long, default_value_t = oppnet::synth::DEFAULT_SPAN_DAYS)]
        span: i64,
        #[arg(long, default_value_t = 2.1)]
        activity_exponent: f64,
        /// Probability that an opposition repeats an existing edge
        #[arg(long, default_value_t = 0.3)]
        burst: f64,
        #[arg(long, default_value_t = 1.85)]
        attr_exponent: f64,
        #[command(flatten)]
        seed: SeedArgs,
        /// Directory for opposition.csv, collaboration.csv, attributes.csv
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn parse_bound(s: &str) -> Result<Bound, String> {
    s.parse().map_err(|e: oppnet::Error| e.to_string())
}

fn parse_finite(s: &str) -> Result<i64, String> {
    match parse_bound(s)? {
        Bound::Days(d) => Ok(d),
        Bound::Unbounded => Err(format!("'{s}' must be a finite duration")),
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_model(s: &str) -> Result<NullModelKind, String> {
    s.parse().map_err(|e: oppnet::Error| e.to_string())
}

fn parse_bin_mode(s: &str) -> Result<BinMode, String> {
    s.parse().map_err(|e: oppnet::Error| e.to_string())
}

fn parse_divisor(s: &str) -> Result<Divisor, String> {
    s.parse().map_err(|e: oppnet::Error| e.to_string())
}
