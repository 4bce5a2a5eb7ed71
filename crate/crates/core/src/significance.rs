//! Z scores of motif classes against sampled null models.

use rayon::prelude::*;
use serde::Serialize;

use crate::duration::Thresholds;
use crate::error::{Error, Result};
use crate::model::TemporalLayer;
use crate::motif::{census, MotifClass, MotifSize};
use crate::nullmodel::{NullModelKind, RandomSeed, Registry};
use crate::table::{Cell, Table};

/// Divisor of the variance over null samples.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Divisor {
    /// `n`
    #[default]
    Population,
    /// `n - 1`
    Sample,
}

impl std::str::FromStr for Divisor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "population" => Ok(Divisor::Population),
            "sample" => Ok(Divisor::Sample),
            _ => Err(Error::Significance(format!(
                "unknown std divisor '{s}' (population|sample)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZRow {
    pub class: MotifClass,
    pub original: u64,
    pub mu: f64,
    pub sigma: f64,
    /// `None` when the null samples have zero spread.
    pub z: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZReport {
    pub size: MotifSize,
    pub thresholds: Thresholds,
    pub kind: NullModelKind,
    pub samples: usize,
    pub seed: RandomSeed,
    pub divisor: Divisor,
    pub rows: Vec<ZRow>,
    /// Per-sample class counts, sample-major.
    #[serde(skip)]
    pub sample_counts: Vec<Vec<u64>>,
}

/// Mean, standard deviation and Z score of `original` against `samples`.
pub fn z_stats(original: u64, samples: &[u64], divisor: Divisor) -> (f64, f64, Option<f64>) {
    let n = samples.len() as f64;
    let mu = samples.iter().map(|&x| x as f64).sum::<f64>() / n;
    let ss: f64 = samples.iter().map(|&x| (x as f64 - mu).powi(2)).sum();
    let denom = match divisor {
        Divisor::Population => n,
        Divisor::Sample => n - 1.0,
    };
    let sigma = (ss / denom).sqrt();
    let z = (sigma > 0.0).then(|| (original as f64 - mu) / sigma);
    (mu, sigma, z)
}

/// Census of the layer against `samples` shuffles, sample `i` seeded with
/// `seed.derive(i)`.
#[allow(clippy::too_many_arguments)]
pub fn z_scores(
    registry: &Registry,
    layer: &TemporalLayer,
    size: MotifSize,
    th: Thresholds,
    kind: NullModelKind,
    samples: usize,
    seed: RandomSeed,
    divisor: Divisor,
) -> Result<ZReport> {
    if samples < 2 {
        return Err(Error::Significance(format!(
            "at least 2 null samples are required, got {samples}"
        )));
    }
    let original = census(layer, size, th)?.raw();
    let sample_counts = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let shuffled = registry.shuffle(layer, kind, seed.derive(i))?;
            Ok(census(&shuffled, size, th)?.raw())
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    let rows = original
        .iter()
        .enumerate()
        .map(|(c, &orig)| {
            let column: Vec<u64> = sample_counts.iter().map(|s| s[c]).collect();
            let (mu, sigma, z) = z_stats(orig, &column, divisor);
            ZRow {
                class: size.class_at(c),
                original: orig,
                mu,
                sigma,
                z,
            }
        })
        .collect();
    Ok(ZReport {
        size,
        thresholds: th,
        kind,
        samples,
        seed,
        divisor,
        rows,
        sample_counts,
    })
}

impl ZReport {
    pub fn row(&self, class: MotifClass) -> &ZRow {
        &self.rows[class.index()]
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["class", "original", "mu", "sigma", "z"]);
        for r in &self.rows {
            t.push(vec![
                r.class.label().into(),
                r.original.into(),
                r.mu.into(),
                r.sigma.into(),
                r.z.into(),
            ]);
        }
        t
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Most,
    Least,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    pub ranked: Vec<MotifClass>,
    pub undefined: Vec<MotifClass>,
}

/// Top (`Most`) or bottom (`Least`) `k` classes by defined Z score; ties
/// keep canonical class order.
pub fn rank_classes(report: &ZReport, direction: Direction, k: usize) -> Ranking {
    let mut defined: Vec<(MotifClass, f64)> = report.rows.iter().filter_map(|r| r.z.map(|z| (r.class, z))).collect();
    defined.sort_by(|a, b| {
        let ord = a.1.total_cmp(&b.1);
        let ord = match direction {
            Direction::Most => ord.reverse(),
            Direction::Least => ord,
        };
        ord.then(a.0.cmp(&b.0))
    });
    Ranking {
        ranked: defined.into_iter().take(k).map(|(c, _)| c).collect(),
        undefined: report.rows.iter().filter(|r| r.z.is_none()).map(|r| r.class).collect(),
    }
}

impl Ranking {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["rank", "class"]);
        for (i, c) in self.ranked.iter().enumerate() {
            t.push(vec![Cell::Int(i as i64 + 1), c.label().into()]);
        }
        for c in &self.undefined {
            t.push(vec![Cell::Empty, c.label().into()]);
        }
        t
    }
}
