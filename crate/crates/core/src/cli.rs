//! The `siatec` command line.
//!
//! Exit status is 0 on success, 1 on usage, parse or I/O errors and 2 when
//! `verify` finds a mismatch.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::codec::{parse_dataset_columns, render_dataset, Dataset, EncodingDocument};
use crate::cover::{ranked_tecs, CoverAlgorithm};
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::harness::{self, RunConfig, Variant};

#[derive(Debug, Parser)]
#[command(
    name = "siatec",
    version,
    about = "Translatable point-set pattern discovery and compression"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the TECs of a dataset, best first
    Discover {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        columns: ColumnArgs,
    },
    /// Encode a dataset as a (possibly nested) list of TECs
    Encode {
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: CoverAlgorithm,
        #[arg(long)]
        recursia: bool,
        #[arg(long)]
        rrt: bool,
        /// With --recursia, only nest a pattern when that makes it smaller
        #[arg(long)]
        only_if_smaller: bool,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        columns: ColumnArgs,
    },
    /// Decode an encoding document back to a dataset file
    Decode {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode an encoding document and compare it with a reference dataset
    Verify {
        /// Dataset the document is expected to decode to
        #[arg(long)]
        reference: PathBuf,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        columns: ColumnArgs,
    },
    /// Run every variant of the given algorithms over a corpus directory and emit CSV
    Compare {
        /// One or more algorithms, comma separated
        #[arg(long, value_parser = parse_algorithm, value_delimiter = ',', required = true)]
        algorithm: Vec<CoverAlgorithm>,
        #[arg(long)]
        only_if_smaller: bool,
        /// Also print per-variant mean compression factors to stderr
        #[arg(long)]
        summary: bool,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        columns: ColumnArgs,
    },
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input file (stdin when omitted; a directory for `compare`)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ColumnArgs {
    /// Keep only these zero-based dataset columns, e.g. `0,2`
    #[arg(long, value_delimiter = ',')]
    pub columns: Option<Vec<usize>>,
}

fn parse_algorithm(s: &str) -> std::result::Result<CoverAlgorithm, String> {
    s.parse()
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read_input(&mut self, input: &Option<PathBuf>) -> Result<String> {
        match input {
            Some(path) => Ok(fs::read_to_string(path)?),
            None => {
                let mut text = String::new();
                self.stdin.read_to_string(&mut text)?;
                Ok(text)
            }
        }
    }

    fn write_output(&mut self, output: &Option<PathBuf>, text: &str) -> Result<()> {
        match output {
            Some(path) => fs::write(path, text)?,
            None => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn json_rows(points: &PointSet) -> String {
    let rows: Vec<&[i64]> = points.iter().map(Point::coords).collect();
    serde_json::to_string(&rows).expect("plain data serializes")
}

fn discover(streams: &mut Streams<'_>, io: &IoArgs, columns: &ColumnArgs) -> Result<()> {
    let data = parse_dataset_columns(&streams.read_input(&io.input)?, columns.columns.as_deref())?;
    let mut out = String::from("cf\tpattern_size\ttranslators\tcovered\tpattern\tvectors\n");
    for s in ranked_tecs(&data.points) {
        let vectors: Vec<&[i64]> = s.tec.nonzero_translators().map(|v| v.coords()).collect();
        out.push_str(&format!(
            "{:.6}\t{}\t{}\t{}\t{}\t{}\n",
            *s.cf.numer() as f64 / *s.cf.denom() as f64,
            s.tec.pattern_points().len(),
            vectors.len(),
            s.covered.len(),
            json_rows(&s.tec.pattern_points()),
            serde_json::to_string(&vectors).expect("plain data serializes"),
        ));
    }
    streams.write_output(&io.output, &out)
}

/// Brings both datasets to a common per-dimension scale and returns the first
/// point present in only one of them, tagged with which side holds it.
fn first_difference(
    decoded: &Dataset,
    reference: &Dataset,
) -> Result<Option<(Point, &'static str, Vec<u64>)>> {
    let dim = decoded.points.dim();
    if reference.points.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: reference.points.dim(),
        });
    }
    let common: Vec<u64> = decoded
        .scale
        .iter()
        .zip(&reference.scale)
        .map(|(a, b)| *a.max(b))
        .collect();
    let rescale = |d: &Dataset| -> PointSet {
        let pts = d
            .points
            .iter()
            .map(|p| {
                Point::new(
                    p.coords()
                        .iter()
                        .zip(d.scale.iter().zip(&common))
                        .map(|(&c, (&s, &t))| c * (t / s) as i64)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        PointSet::from_unsorted_unchecked(dim, pts)
    };
    let (a, b) = (rescale(decoded), rescale(reference));
    let only_a = a.difference(&b)?;
    let only_b = b.difference(&a)?;
    Ok(match (only_a.points().first(), only_b.points().first()) {
        (None, None) => None,
        (Some(p), Some(q)) if q < p => Some((q.clone(), "reference", common)),
        (Some(p), _) => Some((p.clone(), "decoded", common)),
        (None, Some(q)) => Some((q.clone(), "reference", common)),
    })
}

fn load_dataset(path: &Path, columns: &ColumnArgs) -> Result<Dataset> {
    parse_dataset_columns(&fs::read_to_string(path)?, columns.columns.as_deref())
}

fn execute(cli: Cli, streams: &mut Streams<'_>, stderr: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Discover { io, columns } => discover(streams, &io, &columns)?,
        Command::Encode {
            algorithm,
            recursia,
            rrt,
            only_if_smaller,
            io,
            columns,
        } => {
            let data =
                parse_dataset_columns(&streams.read_input(&io.input)?, columns.columns.as_deref())?;
            let cfg = RunConfig {
                algorithm,
                variant: Variant { recursia, rrt },
                only_if_smaller,
            };
            let (encoding, _) = harness::run_pipeline(&cfg, "input", &data.points)?;
            let doc = EncodingDocument::new(encoding, data.scale);
            streams.write_output(&io.output, &doc.to_json())?;
        }
        Command::Decode { io } => {
            let doc = EncodingDocument::from_json(&streams.read_input(&io.input)?)?;
            let data = doc.decode();
            streams.write_output(&io.output, &render_dataset(&data.points, &data.scale))?;
        }
        Command::Verify {
            reference,
            io,
            columns,
        } => {
            let doc = EncodingDocument::from_json(&streams.read_input(&io.input)?)?;
            let expected = load_dataset(&reference, &columns)?;
            if let Some((p, side, scale)) = first_difference(&doc.decode(), &expected)? {
                let shown =
                    render_dataset(&PointSet::from_sorted_unchecked(p.dim(), vec![p]), &scale);
                let shown = shown.lines().last().unwrap_or_default().to_owned();
                writeln!(
                    stderr,
                    "mismatch: first differing point ({shown}) appears only in the {side} dataset"
                )?;
                return Ok(2);
            }
            streams.write_output(&io.output, "ok\n")?;
        }
        Command::Compare {
            algorithm,
            only_if_smaller,
            summary,
            io,
            columns,
        } => {
            let dir = io
                .input
                .clone()
                .ok_or_else(|| Error::parse(0, "compare needs --input <corpus directory>"))?;
            let pieces = harness::load_corpus(&dir, columns.columns.as_deref())?;
            let mut algorithms = algorithm;
            algorithms.sort_unstable();
            algorithms.dedup();
            let rows = harness::run_corpus(&pieces, &algorithms, only_if_smaller)?;
            let mut csv = Vec::new();
            harness::write_csv(&rows, &mut csv)?;
            streams.write_output(&io.output, &String::from_utf8(csv).expect("csv is utf-8"))?;
            if summary {
                stderr
                    .write_all(harness::render_summary(&harness::aggregate(&rows)?).as_bytes())?;
            }
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 1;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let mut streams = Streams { stdin, stdout };
    match execute(cli, &mut streams, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("siatec").chain(args.iter().copied()),
            &mut input,
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn unknown_flag_rejected() {
        let (code, _, err) = run_with(&["encode", "--algorithm", "cosiatec", "--bogus"], "");
        assert_eq!(code, 1);
        assert!(err.contains("--bogus"));
    }

    #[test]
    fn algorithm_required_for_encode() {
        let (code, _, _) = run_with(&["encode"], "1 1\n");
        assert_eq!(code, 1);
        let (code, _, _) = run_with(&["encode", "--algorithm", "forth"], "1 1\n");
        assert_eq!(code, 1);
    }

    #[test]
    fn encode_decode_through_stdio() {
        let data = "0 0\n1 3\n3 4\n10 1\n11 4\n13 5\n";
        let (code, doc, _) = run_with(&["encode", "--algorithm", "cosiatec"], data);
        assert_eq!(code, 0);
        let (code, decoded, _) = run_with(&["decode"], &doc);
        assert_eq!(code, 0);
        assert_eq!(
            crate::codec::parse_dataset(&decoded).unwrap(),
            crate::codec::parse_dataset(data).unwrap()
        );
    }

    #[test]
    fn parse_errors_exit_one() {
        let (code, _, err) = run_with(&["encode", "--algorithm", "cosiatec"], "1 2\n3\n");
        assert_eq!(code, 1);
        assert!(err.contains("line 2"), "{err}");
        let (code, _, _) = run_with(&["decode"], "not json");
        assert_eq!(code, 1);
    }

    #[test]
    fn discover_lists_best_first() {
        let (code, out, _) = run_with(&["discover"], "0 0\n1 3\n3 4\n10 1\n11 4\n13 5\n");
        assert_eq!(code, 0);
        let first = out.lines().nth(1).unwrap();
        assert!(
            first.starts_with("1.500000\t3\t1\t6\t[[0,0],[1,3],[3,4]]\t[[10,1]]"),
            "{first}"
        );
    }

    #[test]
    fn scaled_verification_compares_original_units() {
        let a = Dataset {
            points: PointSet::from_coords([[5, 60]]).unwrap(),
            scale: vec![10, 1],
        };
        let b = Dataset {
            points: PointSet::from_coords([[50, 60]]).unwrap(),
            scale: vec![100, 1],
        };
        assert!(first_difference(&a, &b).unwrap().is_none());
        let c = Dataset {
            points: PointSet::from_coords([[6, 60]]).unwrap(),
            scale: vec![10, 1],
        };
        let (p, side, _) = first_difference(&a, &c).unwrap().unwrap();
        assert_eq!((p, side), (Point::from([5, 60]), "decoded"));
    }
}
