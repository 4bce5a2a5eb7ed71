//! Temporal motif analysis of two-layer opposition/collaboration networks.
//!
//! The opposition layer is directed, the collaboration layer undirected;
//! motifs are counted on oppositions and collaborations are overlaid on the
//! detected motif instances.

pub mod attrstats;
pub mod duration;
pub mod error;
pub mod io;
pub mod model;
pub mod motif;
pub mod nullmodel;
pub mod overlay;
pub mod significance;
pub mod synth;
pub mod table;

pub use duration::{Bound, Thresholds};
pub use error::{Error, Result};
pub use model::{layer_summary, Event, LayerKind, LayerSummary, NodeId, TemporalLayer, Timestamp, TwoLayerNetwork};
