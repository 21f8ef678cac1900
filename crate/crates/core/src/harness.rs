//! Batch comparison of cover algorithms with and without recursion and
//! redundant-translator removal.
//!
//! Every piece is run through the 2×2 grid of variants for each algorithm;
//! each produced encoding is decoded and checked against its input before a
//! row is emitted.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{parse_dataset_columns, Dataset};
use crate::cover::{CoverAlgorithm, Encoding};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::recursia::{recursia, RecursiaOptions};
use crate::rrt::rrt;

pub const CSV_HEADER: &str = "piece,algorithm,recursia,rrt,n_points,encoding_size,cf,ms";

/// The four variants in output order: base, +rrt, +recursia, +both.
pub const VARIANTS: [Variant; 4] = [
    Variant {
        recursia: false,
        rrt: false,
    },
    Variant {
        recursia: false,
        rrt: true,
    },
    Variant {
        recursia: true,
        rrt: false,
    },
    Variant {
        recursia: true,
        rrt: true,
    },
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variant {
    pub recursia: bool,
    pub rrt: bool,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match (self.recursia, self.rrt) {
            (false, false) => "base",
            (false, true) => "+rrt",
            (true, false) => "+recursia",
            (true, true) => "+both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub algorithm: CoverAlgorithm,
    pub variant: Variant,
    pub only_if_smaller: bool,
}

impl RunConfig {
    pub fn new(algorithm: CoverAlgorithm, variant: Variant) -> Self {
        RunConfig {
            algorithm,
            variant,
            only_if_smaller: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub piece: String,
    pub algorithm: String,
    pub recursia: bool,
    pub rrt: bool,
    pub n_points: usize,
    pub encoding_size: usize,
    #[serde(serialize_with = "six_places")]
    pub cf: f64,
    #[serde(serialize_with = "three_places")]
    pub ms: f64,
}

fn six_places<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.6}"))
}

fn three_places<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.3}"))
}

impl ResultRow {
    pub fn variant(&self) -> Variant {
        Variant {
            recursia: self.recursia,
            rrt: self.rrt,
        }
    }
}

/// Encodes `dataset` under `cfg` without the decode check.
pub fn encode(cfg: &RunConfig, dataset: &PointSet) -> Encoding {
    let options = RecursiaOptions {
        rrt: cfg.variant.rrt,
        only_if_smaller: cfg.only_if_smaller,
    };
    match (cfg.variant.recursia, cfg.variant.rrt) {
        (false, false) => cfg.algorithm.cover(dataset),
        (false, true) => cfg.algorithm.cover(dataset).map_tecs(rrt),
        (true, _) => recursia(cfg.algorithm, dataset, options),
    }
}

/// Runs one configuration on one dataset, verifying that the result decodes to the input.
pub fn run_pipeline(
    cfg: &RunConfig,
    piece: &str,
    dataset: &PointSet,
) -> Result<(Encoding, ResultRow)> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset.in_piece(piece));
    }
    let start = Instant::now();
    let encoding = encode(cfg, dataset);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let decoded = encoding.decode();
    if &decoded != dataset {
        let detail = format!(
            "{} {} decoded to {} points, expected {}",
            cfg.algorithm,
            cfg.variant.label(),
            decoded.len(),
            dataset.len()
        );
        return Err(Error::Lossy(detail).in_piece(piece));
    }
    let size = encoding.size();
    let row = ResultRow {
        piece: piece.to_owned(),
        algorithm: cfg.algorithm.name().to_owned(),
        recursia: cfg.variant.recursia,
        rrt: cfg.variant.rrt,
        n_points: dataset.len(),
        encoding_size: size,
        cf: ratio_to_f64(Ratio::new(dataset.len(), size)),
        ms,
    };
    Ok((encoding, row))
}

fn ratio_to_f64(r: Ratio<usize>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A named dataset.
#[derive(Clone, Debug)]
pub struct Piece {
    pub id: String,
    pub dataset: Dataset,
}

/// Reads every regular file in `dir` (sorted by name) as a dataset; the piece
/// id is the file stem. An empty directory is an error.
pub fn load_corpus(dir: &Path, columns: Option<&[usize]>) -> Result<Vec<Piece>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    if paths.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = std::fs::read_to_string(&path).map_err(|e| Error::from(e).in_piece(&id))?;
            let dataset = parse_dataset_columns(&text, columns).map_err(|e| e.in_piece(&id))?;
            Ok(Piece { id, dataset })
        })
        .collect()
}

/// All four variants of every algorithm on every piece, sorted by
/// (piece, algorithm, recursia, rrt).
pub fn run_corpus(
    pieces: &[Piece],
    algorithms: &[CoverAlgorithm],
    only_if_smaller: bool,
) -> Result<Vec<ResultRow>> {
    let jobs: Vec<(&Piece, RunConfig)> = pieces
        .iter()
        .flat_map(|p| {
            algorithms.iter().flat_map(move |&a| {
                VARIANTS.iter().map(move |&v| {
                    (
                        p,
                        RunConfig {
                            algorithm: a,
                            variant: v,
                            only_if_smaller,
                        },
                    )
                })
            })
        })
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|(piece, cfg)| run_pipeline(cfg, &piece.id, &piece.dataset.points).map(|(_, row)| row))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        (&a.piece, &a.algorithm, a.recursia, a.rrt).cmp(&(
            &b.piece,
            &b.algorithm,
            b.recursia,
            b.rrt,
        ))
    });
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

/// Mean compression factor of one variant and its change against the base variant.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantSummary {
    pub variant: Variant,
    pub mean_cf: f64,
    /// `100 * (mean_cf / mean_base_cf - 1)`
    pub change_of_means: f64,
    /// Mean over (piece, algorithm) of `100 * (cf / base_cf - 1)`
    pub mean_of_changes: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    /// `None` for the figures over all algorithms.
    pub algorithm: Option<String>,
    pub variants: Vec<VariantSummary>,
}

fn summarize(rows: &[&ResultRow], algorithm: Option<String>) -> Result<Summary> {
    let base: Vec<&&ResultRow> = rows
        .iter()
        .filter(|r| r.variant() == Variant::default())
        .collect();
    if base.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let base_mean = base.iter().map(|r| r.cf).sum::<f64>() / base.len() as f64;
    let base_cf = |r: &ResultRow| {
        base.iter()
            .find(|b| b.piece == r.piece && b.algorithm == r.algorithm)
            .map(|b| b.cf)
    };
    let mut variants = Vec::new();
    for v in VARIANTS {
        let of_v: Vec<&&ResultRow> = rows.iter().filter(|r| r.variant() == v).collect();
        if of_v.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mean_cf = of_v.iter().map(|r| r.cf).sum::<f64>() / of_v.len() as f64;
        let changes: Vec<f64> = of_v
            .iter()
            .filter_map(|r| base_cf(r).map(|b| 100.0 * (r.cf / b - 1.0)))
            .collect();
        variants.push(VariantSummary {
            variant: v,
            mean_cf,
            change_of_means: 100.0 * (mean_cf / base_mean - 1.0),
            mean_of_changes: changes.iter().sum::<f64>() / changes.len().max(1) as f64,
        });
    }
    Ok(Summary {
        algorithm,
        variants,
    })
}

/// One summary per algorithm (sorted by name) followed by the overall summary.
pub fn aggregate(rows: &[ResultRow]) -> Result<Vec<Summary>> {
    if rows.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut algorithms: Vec<&str> = rows.iter().map(|r| r.algorithm.as_str()).collect();
    algorithms.sort_unstable();
    algorithms.dedup();
    let mut out = Vec::new();
    for a in algorithms {
        let subset: Vec<&ResultRow> = rows.iter().filter(|r| r.algorithm == a).collect();
        out.push(summarize(&subset, Some(a.to_owned()))?);
    }
    let all: Vec<&ResultRow> = rows.iter().collect();
    out.push(summarize(&all, None)?);
    Ok(out)
}

pub fn render_summary(summaries: &[Summary]) -> String {
    let mut out =
        String::from("algorithm,variant,mean_cf,change_of_means_pct,mean_of_changes_pct\n");
    for s in summaries {
        let name = s.algorithm.as_deref().unwrap_or("all");
        for v in &s.variants {
            let _ = writeln!(
                out,
                "{name},{},{:.6},{:+.2},{:+.2}",
                v.variant.label(),
                v.mean_cf,
                v.change_of_means,
                v.mean_of_changes
            );
        }
    }
    out
}
