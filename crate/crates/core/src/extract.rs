//! Artin words from sampled strand trajectories.
//!
//! Strands are ordered by their projection `Re(e^{-i theta} z)`. Every time
//! two neighbours in that order trade places a generator is emitted: `+m`
//! when the strand coming down from position `m + 1` passes on the side of
//! larger `Im(e^{-i theta} z)`, i.e. the pair turns counterclockwise.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tracker::{depth, projection, FiberTrack};

pub const TIME_RESOLUTION: f64 = 1e-9;
pub const SEP_FACTOR: f64 = 1e-7;
pub const MAX_ANGLE_CANDIDATES: usize = 360;

/// One exchange of the strands at projection positions `position` and
/// `position + 1` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub time: f64,
    pub position: usize,
    pub sign: i32,
    /// Strands at `position` and `position + 1` just before the exchange.
    pub strands: (usize, usize),
}

impl CrossingEvent {
    pub fn letter(&self) -> i32 {
        self.sign * self.position as i32
    }
}

/// Largest pairwise distance.
pub fn diameter(points: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

pub fn separation_tol(points: &[Complex64]) -> f64 {
    SEP_FACTOR * diameter(points)
}

fn separated(points: &[Complex64], theta: f64, tol: f64) -> bool {
    let mut proj: Vec<f64> = points.iter().map(|&z| projection(z, theta)).collect();
    proj.sort_by(f64::total_cmp);
    proj.windows(2).all(|w| w[1] - w[0] >= tol)
}

/// Admissible projection angles in search order: `0`, then seeded uniform
/// draws from `(-pi, pi]`.
pub fn projection_angles(
    points: &[Complex64],
    seed: u64,
    tol: f64,
) -> impl Iterator<Item = f64> + '_ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..MAX_ANGLE_CANDIDATES)
        .map(move |i| {
            if i == 0 {
                0.0
            } else {
                std::f64::consts::PI - rng.random::<f64>() * std::f64::consts::TAU
            }
        })
        .filter(move |&t| separated(points, t, tol))
}

/// First admissible angle of [`projection_angles`].
pub fn choose_projection_angle(points: &[Complex64], seed: u64) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidPolynomial(
            "need at least two points to project".into(),
        ));
    }
    projection_angles(points, seed, separation_tol(points))
        .next()
        .ok_or(Error::NoGenericAngle(MAX_ANGLE_CANDIDATES))
}

struct Extractor<'a> {
    track: &'a FiberTrack,
    theta: f64,
    sep_tol: f64,
    /// `order[pos]` is the strand at projection position `pos`.
    order: Vec<usize>,
    events: Vec<CrossingEvent>,
}

impl Extractor<'_> {
    fn proj(&self, z: &[Complex64], k: usize) -> f64 {
        projection(z[k], self.theta)
    }

    /// Position pairs `(p, q)`, `p < q`, whose strands are out of order at `zb`.
    fn flips(&self, zb: &[Complex64]) -> Vec<(usize, usize)> {
        let n = self.order.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in (p + 1)..n {
                if self.proj(zb, self.order[p]) > self.proj(zb, self.order[q]) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    fn midpoint(
        &self,
        ta: f64,
        za: &[Complex64],
        tb: f64,
        zb: &[Complex64],
    ) -> Result<(f64, Vec<Complex64>)> {
        let tm = 0.5 * (ta + tb);
        let guess: Vec<Complex64> = za.iter().zip(zb).map(|(a, b)| 0.5 * (a + b)).collect();
        Ok((tm, self.track.correct_at(tm, &guess)?))
    }

    fn emit(&mut self, time: f64, p: usize, z: &[Complex64]) {
        let lower = self.order[p];
        let upper = self.order[p + 1];
        let sign = if depth(z[upper], self.theta) > depth(z[lower], self.theta) {
            1
        } else {
            -1
        };
        self.events.push(CrossingEvent {
            time,
            position: p + 1,
            sign,
            strands: (lower, upper),
        });
        self.order.swap(p, p + 1);
    }

    fn interval(&mut self, ta: f64, za: Vec<Complex64>, tb: f64, zb: Vec<Complex64>) -> Result<()> {
        let flips = self.flips(&zb);
        match flips.as_slice() {
            [] => Ok(()),
            [(p, q)] if q - p == 1 => {
                let p = *p;
                let (a, b) = (self.order[p], self.order[p + 1]);
                let (mut ta, mut za, mut tb, mut zb) = (ta, za, tb, zb);
                while tb - ta > TIME_RESOLUTION {
                    let (tm, zm) = self.midpoint(ta, &za, tb, &zb)?;
                    if self.proj(&zm, a) > self.proj(&zm, b) {
                        tb = tm;
                        zb = zm;
                    } else {
                        ta = tm;
                        za = zm;
                    }
                }
                let (tm, zm) = self.midpoint(ta, &za, tb, &zb)?;
                self.emit(tm, p, &zm);
                Ok(())
            }
            _ if tb - ta > TIME_RESOLUTION => {
                let (tm, zm) = self.midpoint(ta, &za, tb, &zb)?;
                self.interval(ta, za, tm, zm.clone())?;
                self.interval(tm, zm, tb, zb)
            }
            _ => {
                let mut ps: Vec<usize> = Vec::with_capacity(flips.len());
                for &(p, q) in &flips {
                    if q - p != 1 || ps.iter().any(|&r| r + 1 >= p && r <= p + 1) {
                        return Err(Error::SimultaneousCrossing(ta));
                    }
                    ps.push(p);
                }
                let (tm, zm) = self.midpoint(ta, &za, tb, &zb)?;
                for p in ps {
                    self.emit(tm, p, &zm);
                }
                Ok(())
            }
        }
    }

    /// Neighbours that stay within `sep_tol` of each other over a whole
    /// sample interval without exchanging.
    fn check_tangency(&self, za: &[Complex64], zb: &[Complex64], t: f64) -> Result<()> {
        for p in 0..self.order.len() - 1 {
            let (a, b) = (self.order[p], self.order[p + 1]);
            let ga = self.proj(za, b) - self.proj(za, a);
            let gb = self.proj(zb, b) - self.proj(zb, a);
            if ga.abs() < self.sep_tol && gb.abs() < self.sep_tol && gb >= 0.0 {
                return Err(Error::TangencyUnresolved(a, b, t));
            }
        }
        Ok(())
    }
}

/// Crossing events of `track` under projection angle `theta`, in time order.
pub fn crossings(track: &FiberTrack, theta: f64) -> Result<Vec<CrossingEvent>> {
    crossings_with(track, theta, None)
}

/// As [`crossings`] with an explicit separation tolerance.
pub fn crossings_with(
    track: &FiberTrack,
    theta: f64,
    sep_tol: Option<f64>,
) -> Result<Vec<CrossingEvent>> {
    let n = track.strand_count();
    let z0 = track.positions(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| projection(z0[a], theta).total_cmp(&projection(z0[b], theta)));
    let mut ex = Extractor {
        track,
        theta,
        sep_tol: sep_tol.unwrap_or_else(|| separation_tol(&z0)),
        order,
        events: Vec::new(),
    };
    let last = track.sample_count() - 1;
    if !separated(&z0, theta, ex.sep_tol) {
        return Err(Error::TangencyUnresolved(
            ex.order[0],
            ex.order[1.min(n - 1)],
            0.0,
        ));
    }
    if !separated(&track.positions(last), theta, ex.sep_tol) {
        return Err(Error::TangencyUnresolved(
            ex.order[0],
            ex.order[1.min(n - 1)],
            1.0,
        ));
    }
    for i in 0..last {
        let za = track.positions(i);
        let zb = track.positions(i + 1);
        ex.interval(track.times[i], za.clone(), track.times[i + 1], zb.clone())?;
        ex.check_tangency(&za, &zb, track.times[i])?;
    }
    Ok(ex.events)
}

/// Artin word of `track` and its permutation, which agrees with the
/// endpoint matching of the track expressed in projection positions.
pub fn extract_word(
    track: &FiberTrack,
    theta: f64,
    match_tol: f64,
) -> Result<(BraidWord, Permutation)> {
    extract_word_with(track, theta, match_tol, None)
}

/// As [`extract_word`] with an explicit separation tolerance.
pub fn extract_word_with(
    track: &FiberTrack,
    theta: f64,
    match_tol: f64,
    sep_tol: Option<f64>,
) -> Result<(BraidWord, Permutation)> {
    let n = track.strand_count();
    let events = crossings_with(track, theta, sep_tol)?;
    let word = BraidWord::new(n, events.iter().map(CrossingEvent::letter).collect())?;
    let perm = word.permutation();

    let z0 = track.positions(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| projection(z0[a], theta).total_cmp(&projection(z0[b], theta)));
    let mut pos_of = vec![0; n];
    for (pos, &k) in order.iter().enumerate() {
        pos_of[k] = pos;
    }
    let end = track.end_permutation(match_tol)?;
    for k in 0..n {
        if perm.apply(pos_of[k]) != pos_of[end.apply(k)] {
            return Err(Error::MatchAmbiguous);
        }
    }
    Ok((word, perm))
}

/// Word of the loop around infinity; identical to [`extract_word`].
pub fn word_of_infinity(track: &FiberTrack, theta: f64, match_tol: f64) -> Result<BraidWord> {
    extract_word(track, theta, match_tol).map(|(w, _)| w)
}
