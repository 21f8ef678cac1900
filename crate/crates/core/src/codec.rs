//! Dataset files, encoding documents and decoding.
//!
//! A dataset file holds one point per line, coordinates separated by
//! whitespace or commas. Lines starting with `#` are header lines; a
//! `# dimension k` header is checked against the data. Decimal values are
//! allowed: each column is scaled by the smallest power of ten that makes all
//! of its values integral, and the scale travels with the data so that
//! decoded points can be written back in the original units.
//!
//! An encoding document is compact JSON:
//!
//! ```text
//! {"dimension":2,"scale":[1,1],"tecs":[{"pattern":{"points":[[1,1],[2,2],[3,3]]},"translators":[[1,1],[4,4]]}]}
//! ```
//!
//! A pattern is either `{"points": [...]}` or `{"encoding": {"dimension": k, "tecs": [...]}}`.
//! The zero translator is implicit and never written.

use serde::{Deserialize, Serialize};

use crate::cover::Encoding;
use crate::discovery::Tec;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, Vector};
use crate::recursia::PatternNode;

/// Coordinates are kept well inside `i64` so that differences never overflow.
const COORD_LIMIT: i64 = 1 << 61;
const MAX_DECIMALS: usize = 15;

/// A parsed dataset with the per-dimension power-of-ten divisors that were
/// applied to make its coordinates integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub points: PointSet,
    pub scale: Vec<u64>,
}

impl Dataset {
    pub fn unscaled(points: PointSet) -> Self {
        let scale = vec![1; points.dim()];
        Dataset { points, scale }
    }
}

struct Decimal {
    negative: bool,
    int: String,
    frac: String,
}

fn lex_decimal(token: &str) -> Option<Decimal> {
    let (negative, body) = match token.as_bytes().first()? {
        b'-' => (true, &token[1..]),
        b'+' => (false, &token[1..]),
        _ => (false, token),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(Decimal {
        negative,
        int: int.to_owned(),
        frac: frac.trim_end_matches('0').to_owned(),
    })
}

fn scaled_value(d: &Decimal, decimals: usize) -> Option<i64> {
    let mut digits = String::with_capacity(d.int.len() + decimals);
    digits.push_str(&d.int);
    digits.push_str(&d.frac);
    digits.extend(std::iter::repeat_n('0', decimals - d.frac.len()));
    let trimmed = digits.trim_start_matches('0');
    let magnitude: i64 = if trimmed.is_empty() {
        0
    } else {
        trimmed.parse().ok()?
    };
    (magnitude <= COORD_LIMIT).then_some(if d.negative { -magnitude } else { magnitude })
}

fn split_fields(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

pub fn parse_dataset(text: &str) -> Result<Dataset> {
    parse_dataset_columns(text, None)
}

/// Like [`parse_dataset`], keeping only the listed columns (in that order).
pub fn parse_dataset_columns(text: &str, columns: Option<&[usize]>) -> Result<Dataset> {
    let mut declared_dim = None;
    let mut rows: Vec<(usize, Vec<Decimal>)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let mut words = header.split_whitespace();
            if words.next() == Some("dimension") {
                let k = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(lineno, "malformed dimension header"))?;
                declared_dim = Some((lineno, k));
            }
            continue;
        }
        let mut fields = Vec::new();
        for token in split_fields(line) {
            let d = lex_decimal(token)
                .ok_or_else(|| Error::parse(lineno, format!("not a number: `{token}`")))?;
            if d.frac.len() > MAX_DECIMALS {
                return Err(Error::parse(
                    lineno,
                    format!("too many decimal places in `{token}`"),
                ));
            }
            fields.push(d);
        }
        if let Some((first_line, first)) = rows.first() {
            if first.len() != fields.len() {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "expected {} values (as on line {first_line}), found {}",
                        first.len(),
                        fields.len()
                    ),
                ));
            }
        }
        rows.push((lineno, fields));
    }

    let Some((_, first)) = rows.first() else {
        return Err(Error::EmptyDataset);
    };
    let arity = first.len();
    let selected: Vec<usize> = match columns {
        Some(cols) => {
            if let Some(&bad) = cols.iter().find(|&&c| c >= arity) {
                return Err(Error::parse(
                    rows[0].0,
                    format!("column {bad} out of range (rows have {arity} values)"),
                ));
            }
            cols.to_vec()
        }
        None => (0..arity).collect(),
    };
    if selected.is_empty() {
        return Err(Error::ZeroDimension);
    }
    if let Some((lineno, k)) = declared_dim {
        if k != arity {
            return Err(Error::parse(
                lineno,
                format!("header declares dimension {k}, rows have {arity} values"),
            ));
        }
    }

    let decimals: Vec<usize> = selected
        .iter()
        .map(|&c| rows.iter().map(|(_, r)| r[c].frac.len()).max().unwrap_or(0))
        .collect();
    let mut points = Vec::with_capacity(rows.len());
    for (lineno, row) in &rows {
        let coords = selected
            .iter()
            .zip(&decimals)
            .map(|(&c, &dec)| {
                scaled_value(&row[c], dec)
                    .ok_or_else(|| Error::parse(*lineno, "coordinate out of range"))
            })
            .collect::<Result<Vec<i64>>>()?;
        points.push(Point::new(coords));
    }
    Ok(Dataset {
        points: PointSet::new(selected.len(), points)?,
        scale: decimals.iter().map(|&d| 10u64.pow(d as u32)).collect(),
    })
}

fn render_value(value: i64, scale: u64) -> String {
    if scale == 1 {
        return value.to_string();
    }
    let decimals = scale.ilog10() as usize;
    let magnitude = value.unsigned_abs();
    let sign = if value < 0 { "-" } else { "" };
    format!(
        "{sign}{}.{:0width$}",
        magnitude / scale,
        magnitude % scale,
        width = decimals
    )
}

/// Writes a dataset file with `# dimension` and `# scale` headers, values in original units.
pub fn render_dataset(points: &PointSet, scale: &[u64]) -> String {
    let mut out = format!("# dimension {}\n# scale", points.dim());
    for s in scale {
        out.push_str(&format!(" {s}"));
    }
    out.push('\n');
    for p in points {
        let line: Vec<String> = p
            .coords()
            .iter()
            .zip(scale)
            .map(|(&c, &s)| render_value(c, s))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Union over TECs of the (recursively decoded) pattern under every translator.
pub fn decode_encoding(encoding: &Encoding) -> PointSet {
    let mut points = Vec::new();
    for tec in encoding.tecs() {
        let pattern = tec.pattern_points();
        for v in tec.translators() {
            points.extend(pattern.iter().map(|p| p + v));
        }
    }
    PointSet::from_unsorted_unchecked(encoding.dim(), points)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocumentDto {
    dimension: usize,
    scale: Vec<u64>,
    tecs: Vec<TecDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NestedDto {
    dimension: usize,
    tecs: Vec<TecDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TecDto {
    pattern: PatternDto,
    translators: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum PatternDto {
    Points(Vec<Vec<i64>>),
    Encoding(Box<NestedDto>),
}

fn tecs_to_dto(encoding: &Encoding) -> Vec<TecDto> {
    encoding
        .tecs()
        .iter()
        .map(|t| TecDto {
            pattern: match t.pattern() {
                PatternNode::Atomic(p) => {
                    PatternDto::Points(p.iter().map(|p| p.coords().to_vec()).collect())
                }
                PatternNode::Nested(e) => PatternDto::Encoding(Box::new(NestedDto {
                    dimension: e.dim(),
                    tecs: tecs_to_dto(e),
                })),
            },
            translators: t
                .nonzero_translators()
                .map(|v| v.coords().to_vec())
                .collect(),
        })
        .collect()
}

fn check_row(row: &[i64], dim: usize, path: &str) -> Result<()> {
    if row.len() != dim {
        return Err(Error::InvalidEncoding(format!(
            "{path}: expected {dim} coordinates, found {}",
            row.len()
        )));
    }
    if row.iter().any(|c| c.abs() > COORD_LIMIT) {
        return Err(Error::InvalidEncoding(format!(
            "{path}: coordinate out of range"
        )));
    }
    Ok(())
}

fn encoding_from_dto(dim: usize, tecs: Vec<TecDto>, path: &str) -> Result<Encoding> {
    if tecs.is_empty() {
        return Err(Error::InvalidEncoding(format!(
            "{path}tecs: encoding has no TECs"
        )));
    }
    let mut out = Vec::with_capacity(tecs.len());
    for (i, tec) in tecs.into_iter().enumerate() {
        let here = format!("{path}tecs[{i}]");
        let pattern = match tec.pattern {
            PatternDto::Points(rows) => {
                if rows.is_empty() {
                    return Err(Error::InvalidEncoding(format!(
                        "{here}.pattern: empty pattern"
                    )));
                }
                for (j, r) in rows.iter().enumerate() {
                    check_row(r, dim, &format!("{here}.pattern.points[{j}]"))?;
                }
                PatternNode::Atomic(PointSet::new(
                    dim,
                    rows.into_iter().map(Point::new).collect(),
                )?)
            }
            PatternDto::Encoding(nested) => {
                if nested.dimension != dim {
                    return Err(Error::InvalidEncoding(format!(
                        "{here}.pattern.encoding: dimension {} inside a {dim}-dimensional document",
                        nested.dimension
                    )));
                }
                let inner =
                    encoding_from_dto(dim, nested.tecs, &format!("{here}.pattern.encoding."))?;
                PatternNode::Nested(Box::new(inner))
            }
        };
        for (j, r) in tec.translators.iter().enumerate() {
            check_row(r, dim, &format!("{here}.translators[{j}]"))?;
        }
        let translators = tec.translators.into_iter().map(Vector::new).collect();
        out.push(Tec::new(pattern, translators)?);
    }
    Encoding::new(out)
}

/// An encoding together with the scale of the dataset it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingDocument {
    pub encoding: Encoding,
    pub scale: Vec<u64>,
}

impl EncodingDocument {
    pub fn new(encoding: Encoding, scale: Vec<u64>) -> Self {
        assert_eq!(encoding.dim(), scale.len(), "one scale entry per dimension");
        EncodingDocument { encoding, scale }
    }

    pub fn unscaled(encoding: Encoding) -> Self {
        let scale = vec![1; encoding.dim()];
        EncodingDocument { encoding, scale }
    }

    /// Canonical text: compact JSON followed by a single LF.
    pub fn to_json(&self) -> String {
        serialize_encoding(&self.encoding, &self.scale)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let (encoding, scale) = parse_encoding(text)?;
        Ok(EncodingDocument { encoding, scale })
    }

    pub fn decode(&self) -> Dataset {
        Dataset {
            points: self.encoding.decode(),
            scale: self.scale.clone(),
        }
    }
}

pub fn serialize_encoding(encoding: &Encoding, scale: &[u64]) -> String {
    let doc = DocumentDto {
        dimension: encoding.dim(),
        scale: scale.to_vec(),
        tecs: tecs_to_dto(encoding),
    };
    let mut text = serde_json::to_string(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn parse_encoding(text: &str) -> Result<(Encoding, Vec<u64>)> {
    let doc: DocumentDto = serde_json::from_str(text).map_err(|e| Error::Document {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    if doc.scale.len() != doc.dimension {
        return Err(Error::InvalidEncoding(format!(
            "scale has {} entries for dimension {}",
            doc.scale.len(),
            doc.dimension
        )));
    }
    if let Some(s) = doc
        .scale
        .iter()
        .find(|&&s| s == 0 || 10u64.pow(s.ilog10()) != s)
    {
        return Err(Error::InvalidEncoding(format!(
            "scale entry {s} is not a power of ten"
        )));
    }
    let encoding = encoding_from_dto(doc.dimension, doc.tecs, "")?;
    Ok((encoding, doc.scale))
}
