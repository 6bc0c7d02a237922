//! Static SVG braid diagrams. Time runs left to right; position 1 is the top
//! row. At a crossing the strand with the larger depth is drawn over the
//! other, so in `+m` the strand moving up from row `m + 1` to row `m` passes
//! over.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::braid::BraidWord;
use crate::extract::CrossingEvent;
use crate::tracker::{projection, FiberTrack};

const COLUMN: f64 = 40.0;
const ROW: f64 = 30.0;
const MARGIN: f64 = 20.0;
const STROKE: f64 = 2.5;
const HALO: f64 = 8.0;
const TRACK_WIDTH: f64 = 600.0;
const TRACK_HEIGHT: f64 = 240.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn colour(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

fn header(out: &mut String, width: f64, height: f64) {
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"#
    )
    .unwrap();
}

fn line(out: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64), stroke: &str, width: f64) {
    writeln!(
        out,
        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{width:.1}" stroke-linecap="round"/>"#
    )
    .unwrap();
}

fn polyline(out: &mut String, pts: &[(f64, f64)], stroke: &str, width: f64) {
    let mut d = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            d.push(' ');
        }
        write!(d, "{x:.2},{y:.2}").unwrap();
    }
    writeln!(
        out,
        r#"<polyline points="{d}" fill="none" stroke="{stroke}" stroke-width="{width:.1}" stroke-linejoin="round"/>"#
    )
    .unwrap();
}

/// Diagram of a braid word, one column per letter.
pub fn render_word_svg(word: &BraidWord) -> String {
    let n = word.strands();
    let cols = word.len().max(1);
    let width = 2.0 * MARGIN + COLUMN * cols as f64;
    let height = 2.0 * MARGIN + ROW * (n.max(2) - 1) as f64;
    let y = |pos: usize| MARGIN + ROW * pos as f64;
    let mut out = String::new();
    header(&mut out, width, height);
    writeln!(out, r#"<g id="braid" data-word="{word}">"#).unwrap();

    // at[pos] = strand at row pos
    let mut at: Vec<usize> = (0..n).collect();
    if word.is_empty() {
        for (pos, &k) in at.iter().enumerate() {
            line(
                &mut out,
                (MARGIN, y(pos)),
                (width - MARGIN, y(pos)),
                colour(k),
                STROKE,
            );
        }
    }
    for (c, &l) in word.letters().iter().enumerate() {
        let x0 = MARGIN + COLUMN * c as f64;
        let x1 = x0 + COLUMN;
        let m = l.unsigned_abs() as usize - 1;
        for (pos, &k) in at.iter().enumerate() {
            if pos != m && pos != m + 1 {
                line(&mut out, (x0, y(pos)), (x1, y(pos)), colour(k), STROKE);
            }
        }
        let down = ((x0, y(m)), (x1, y(m + 1)), at[m]);
        let up = ((x0, y(m + 1)), (x1, y(m)), at[m + 1]);
        let (over, under) = if l > 0 { (up, down) } else { (down, up) };
        line(&mut out, under.0, under.1, colour(under.2), STROKE);
        line(&mut out, over.0, over.1, "white", HALO);
        line(&mut out, over.0, over.1, colour(over.2), STROKE);
        at.swap(m, m + 1);
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

/// Diagram of sampled strand trajectories: horizontal axis is time, vertical
/// axis the projection onto `theta`. `events` mark where halos go.
pub fn render_track_svg(track: &FiberTrack, theta: f64, events: &[CrossingEvent]) -> String {
    render_samples_svg(&track.times, &track.strands, theta, events)
}

/// As [`render_track_svg`] for bare samples, e.g. read back from a dump.
pub fn render_samples_svg(
    times: &[f64],
    strands: &[Vec<Complex64>],
    theta: f64,
    events: &[CrossingEvent],
) -> String {
    let n = strands.len();
    let proj: Vec<Vec<f64>> = strands
        .iter()
        .map(|s| s.iter().map(|&z| projection(z, theta)).collect())
        .collect();
    let (lo, hi) = proj
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let span = if hi > lo { hi - lo } else { 1.0 };
    let width = TRACK_WIDTH + 2.0 * MARGIN;
    let height = TRACK_HEIGHT + 2.0 * MARGIN;
    let map = |t: f64, v: f64| {
        (
            MARGIN + TRACK_WIDTH * t,
            MARGIN + TRACK_HEIGHT * (v - lo) / span,
        )
    };
    let pts = |k: usize, range: std::ops::RangeInclusive<usize>| -> Vec<(f64, f64)> {
        range.map(|i| map(times[i], proj[k][i])).collect()
    };

    let mut out = String::new();
    header(&mut out, width, height);
    writeln!(out, r#"<g id="track" data-strands="{n}">"#).unwrap();
    let last = times.len() - 1;
    for k in 0..n {
        polyline(&mut out, &pts(k, 0..=last), colour(k), STROKE);
    }
    for e in events {
        let over = if e.sign > 0 { e.strands.1 } else { e.strands.0 };
        let i = times.partition_point(|&t| t < e.time).min(last);
        let window = i.saturating_sub(1)..=(i + 1).min(last);
        let seg = pts(over, window);
        polyline(&mut out, &seg, "white", HALO);
        polyline(&mut out, &seg, colour(over), STROKE);
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
