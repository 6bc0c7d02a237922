//! Text formats: coefficient lists, the JSON result schema, track dumps.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::MonodromyResult;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tracker::FiberTrack;

/// Parses one complex number: `re`, `re+imi`, `re-imi`, `imi` or `i`.
pub fn parse_complex(tok: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("bad complex number `{tok}`"));
    let t = tok.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split before the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        s => s,
    };
    Ok(Complex64::new(
        re.parse().map_err(|_| bad())?,
        im.parse().map_err(|_| bad())?,
    ))
}

/// Ascending coefficients separated by whitespace or commas.
pub fn parse_coefficients(text: &str) -> Result<Vec<Complex64>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(parse_complex)
        .collect()
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    Polynomial::new(parse_coefficients(text)?)
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Compact result summary in the JSON exchange format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultJson {
    pub branch_points: Vec<[f64; 2]>,
    pub fiber: Vec<[f64; 2]>,
    pub entries: Vec<EntryJson>,
    pub infinity_word: Vec<i32>,
    pub group: GroupJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub branch: [f64; 2],
    pub word: Vec<i32>,
    /// One-based images.
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub full: bool,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl From<&MonodromyResult> for ResultJson {
    fn from(r: &MonodromyResult) -> Self {
        ResultJson {
            branch_points: r.entries.iter().map(|e| pair(e.branch_point)).collect(),
            fiber: r.fiber.iter().copied().map(pair).collect(),
            entries: r
                .entries
                .iter()
                .map(|e| EntryJson {
                    branch: pair(e.branch_point),
                    word: e.word.letters().to_vec(),
                    perm: e.permutation.one_based(),
                })
                .collect(),
            infinity_word: r.infinity_word.letters().to_vec(),
            group: GroupJson {
                order: r.group_report.order,
                full: r.group_report.is_full_symmetric,
            },
        }
    }
}

impl ResultJson {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// One row per sample: `t re_1 im_1 ... re_n im_n`.
pub fn track_dump(track: &FiberTrack) -> String {
    let mut out = String::new();
    for (i, t) in track.times.iter().enumerate() {
        write!(out, "{t:.17e}").unwrap();
        for s in &track.strands {
            write!(out, " {:.17e} {:.17e}", s[i].re, s[i].im).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Inverse of [`track_dump`]: times and strand samples.
pub fn parse_track_dump(text: &str) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let mut times = Vec::new();
    let mut strands: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if vals.len() < 3 || vals.len().is_multiple_of(2) {
            return Err(Error::Parse(format!(
                "line {}: expected t and coordinate pairs",
                lineno + 1
            )));
        }
        let n = (vals.len() - 1) / 2;
        if strands.is_empty() {
            strands = vec![Vec::new(); n];
        } else if strands.len() != n {
            return Err(Error::StrandCountMismatch(strands.len(), n));
        }
        times.push(vals[0]);
        for (k, s) in strands.iter_mut().enumerate() {
            s.push(Complex64::new(vals[1 + 2 * k], vals[2 + 2 * k]));
        }
    }
    if times.is_empty() {
        return Err(Error::Parse("empty track".into()));
    }
    Ok((times, strands))
}
