//! Basepoints and geometric bases of loops in the complement of the branch
//! locus, as explicit piecewise paths.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum angular separation between branch-point directions seen from the
/// basepoint.
pub const THETA_MIN: f64 = 5.0 * PI / 180.0;
/// Disk radius factor: `eps_j = EPS_FACTOR * min(neighbour distance, |w0 - w_j|)`.
pub const EPS_FACTOR: f64 = 1.0 / 3.0;
/// A basepoint must keep at least this fraction of each branch point's
/// nearest-neighbour distance.
const BASEPOINT_CLEARANCE: f64 = 0.4;
const MAX_BASEPOINT_CANDIDATES: usize = 1000;
const GAP_TIE: f64 = 1e-9;

/// One piece of a loop in the w-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Piece {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl Piece {
    pub fn start(&self) -> Complex64 {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point_at(1.0)
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { from, to } => (to - from).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Point at fraction `s` in `[0, 1]` of the piece.
    pub fn point_at(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Segment { from, to } => from + (to - from) * s,
            Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Complex64::from_polar(radius, start_angle + sweep * s),
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { from, to } => Piece::Segment { from: to, to: from },
            Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => Piece::Arc {
                center,
                radius,
                start_angle: start_angle + sweep,
                sweep: -sweep,
            },
        }
    }

    /// Distance from `p` to the piece.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Piece::Segment { from, to } => segment_distance(from, to, p),
            Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let d = p - center;
                let ang = d.arg();
                let rel = (ang - start_angle).rem_euclid(TAU);
                let inside = if sweep >= 0.0 {
                    sweep >= TAU || rel <= sweep
                } else {
                    sweep <= -TAU || (TAU - rel) % TAU <= -sweep
                };
                if inside {
                    (d.norm() - radius).abs()
                } else {
                    (p - self.start()).norm().min((p - self.end()).norm())
                }
            }
        }
    }
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = ((p - a) * ab.conj()).re / len2;
    (p - (a + ab * s.clamp(0.0, 1.0))).norm()
}

/// A closed piecewise path based at `basepoint`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Loop {
    pub basepoint: Complex64,
    pub pieces: Vec<Piece>,
    /// The branch point this loop encircles, if any.
    pub target: Option<Complex64>,
}

impl Loop {
    /// Zero-length loop sitting at `w0`.
    pub fn constant(w0: Complex64) -> Self {
        Self {
            basepoint: w0,
            pieces: Vec::new(),
            target: None,
        }
    }

    /// Segment from `w0` toward `target`, a full counterclockwise circle of
    /// radius `eps` about `target`, and the return segment.
    pub fn spoke(w0: Complex64, target: Complex64, eps: f64) -> Self {
        let u = (w0 - target) / (w0 - target).norm();
        let touch = target + u * eps;
        Self {
            basepoint: w0,
            pieces: vec![
                Piece::Segment {
                    from: w0,
                    to: touch,
                },
                Piece::Arc {
                    center: target,
                    radius: eps,
                    start_angle: u.arg(),
                    sweep: TAU,
                },
                Piece::Segment {
                    from: touch,
                    to: w0,
                },
            ],
            target: Some(target),
        }
    }

    /// Counterclockwise circle of radius `|w0 - center|` through `w0`.
    pub fn circle_through(w0: Complex64, center: Complex64) -> Self {
        let d = w0 - center;
        Self {
            basepoint: w0,
            pieces: vec![Piece::Arc {
                center,
                radius: d.norm(),
                start_angle: d.arg(),
                sweep: TAU,
            }],
            target: None,
        }
    }

    /// `self` followed by `other`; both must share the basepoint.
    pub fn concat(&self, other: &Loop) -> Loop {
        let mut pieces = self.pieces.clone();
        pieces.extend_from_slice(&other.pieces);
        Loop {
            basepoint: self.basepoint,
            pieces,
            target: None,
        }
    }

    /// The same loop shifted by `d` in the w-plane.
    pub fn translated(&self, d: Complex64) -> Loop {
        Loop {
            basepoint: self.basepoint + d,
            pieces: self
                .pieces
                .iter()
                .map(|p| match *p {
                    Piece::Segment { from, to } => Piece::Segment {
                        from: from + d,
                        to: to + d,
                    },
                    Piece::Arc {
                        center,
                        radius,
                        start_angle,
                        sweep,
                    } => Piece::Arc {
                        center: center + d,
                        radius,
                        start_angle,
                        sweep,
                    },
                })
                .collect(),
            target: self.target.map(|t| t + d),
        }
    }

    pub fn reversed(&self) -> Loop {
        Loop {
            basepoint: self.basepoint,
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
            target: self.target,
        }
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(Piece::length).sum()
    }

    /// Largest gap between consecutive piece endpoints (and to the basepoint).
    pub fn closure_defect(&self) -> f64 {
        let mut prev = self.basepoint;
        let mut worst: f64 = 0.0;
        for p in &self.pieces {
            worst = worst.max((p.start() - prev).norm());
            prev = p.end();
        }
        worst.max((prev - self.basepoint).norm())
    }

    /// Arclength-proportional parametrization over `t` in `[0, 1]`.
    pub fn sample(&self, t: f64) -> Complex64 {
        sample_loop(self, t)
    }

    /// Minimum distance from the loop to `p`.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.pieces
            .iter()
            .map(|piece| piece.distance_to(p))
            .fold((self.basepoint - p).norm(), f64::min)
    }
}

/// Arclength-proportional sample of `lp` at `t` in `[0, 1]`.
pub fn sample_loop(lp: &Loop, t: f64) -> Complex64 {
    let total = lp.length();
    if total == 0.0 || t <= 0.0 {
        return lp.basepoint;
    }
    if t >= 1.0 {
        return lp.pieces.last().map_or(lp.basepoint, Piece::end);
    }
    let mut s = t * total;
    for piece in &lp.pieces {
        let len = piece.length();
        if s <= len {
            return piece.point_at(if len > 0.0 { s / len } else { 0.0 });
        }
        s -= len;
    }
    lp.pieces.last().map_or(lp.basepoint, Piece::end)
}

/// Winding number of `lp` about `p`, by summing sampled argument increments.
pub fn winding_number(lp: &Loop, p: Complex64, samples: usize) -> i64 {
    let mut total = 0.0;
    let mut prev = (lp.sample(0.0) - p).arg();
    for i in 1..=samples {
        let a = (lp.sample(i as f64 / samples as f64) - p).arg();
        let mut d = a - prev;
        if d > PI {
            d -= TAU;
        } else if d < -PI {
            d += TAU;
        }
        total += d;
        prev = a;
    }
    (total / TAU).round() as i64
}

/// Ordered geometric basis plus the loop around infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopSystem {
    pub basepoint: Complex64,
    pub loops: Vec<Loop>,
    pub infinity_loop: Loop,
    /// Index into the input branch-point list for each loop, in loop order.
    pub order: Vec<usize>,
    /// Disk radius used around each branch point, in loop order.
    pub radii: Vec<f64>,
    /// Direction of the cut ray from the basepoint.
    pub cut_angle: f64,
}

fn nearest_neighbour_distances(bp: &[Complex64]) -> Vec<f64> {
    bp.iter()
        .enumerate()
        .map(|(j, a)| {
            bp.iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, b)| (a - b).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

fn disk_radii(bp: &[Complex64], w0: Complex64) -> Vec<f64> {
    nearest_neighbour_distances(bp)
        .iter()
        .zip(bp)
        .map(|(&nn, &b)| EPS_FACTOR * nn.min((w0 - b).norm()))
        .collect()
}

fn admissible_basepoint(bp: &[Complex64], w0: Complex64) -> bool {
    let nn = nearest_neighbour_distances(bp);
    for (j, b) in bp.iter().enumerate() {
        let scale = if nn[j].is_finite() {
            nn[j]
        } else {
            1.0 + b.norm()
        };
        if (w0 - b).norm() < BASEPOINT_CLEARANCE * scale {
            return false;
        }
    }
    let mut angles: Vec<f64> = bp.iter().map(|b| (b - w0).arg().rem_euclid(TAU)).collect();
    angles.sort_by(f64::total_cmp);
    for (i, a) in angles.iter().enumerate() {
        let next = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + TAU
        };
        if angles.len() > 1 && next - a < THETA_MIN {
            return false;
        }
    }
    geometric_basis(bp, w0).is_ok()
}

/// Picks a basepoint clear of the branch locus with pairwise-distinct
/// branch-point directions. The origin is tried first, then seeded points on
/// a circle about the centroid, then seeded interior points, half of them
/// drawn close to a single branch point so tight clusters can be resolved.
pub fn choose_basepoint(branch_points: &[Complex64], seed: u64) -> Result<Complex64> {
    if branch_points.is_empty() {
        return Err(Error::BasepointSearchFailed(0));
    }
    let origin = Complex64::new(0.0, 0.0);
    if admissible_basepoint(branch_points, origin) {
        return Ok(origin);
    }
    let k = branch_points.len() as f64;
    let centroid: Complex64 = branch_points.iter().sum::<Complex64>() / k;
    let diameter = branch_points
        .iter()
        .flat_map(|a| branch_points.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    let radius = (2.0 * diameter).max(1.0);
    let nn = nearest_neighbour_distances(branch_points);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 1..MAX_BASEPOINT_CANDIDATES {
        let cand = if i < MAX_BASEPOINT_CANDIDATES / 2 {
            centroid + Complex64::from_polar(radius, rng.random_range(0.0..TAU))
        } else if i % 2 == 0 {
            let r = radius * rng.random_range(0.0f64..1.0).sqrt();
            centroid + Complex64::from_polar(r, rng.random_range(0.0..TAU))
        } else {
            // Near a branch point, at the scale of its neighbours.
            let j = rng.random_range(0..branch_points.len());
            let scale = if nn[j].is_finite() { nn[j] } else { 1.0 };
            let r = scale * rng.random_range(0.5f64..3.0);
            branch_points[j] + Complex64::from_polar(r, rng.random_range(0.0..TAU))
        };
        if admissible_basepoint(branch_points, cand) {
            return Ok(cand);
        }
    }
    Err(Error::BasepointSearchFailed(MAX_BASEPOINT_CANDIDATES))
}

/// Direction of the cut ray: bisector of the largest angular gap between
/// consecutive branch-point directions. Among equal gaps the bisector with
/// the largest angle in `(-pi, pi]` wins.
pub fn cut_angle(branch_points: &[Complex64], w0: Complex64) -> f64 {
    let mut angles: Vec<f64> = branch_points
        .iter()
        .map(|b| (b - w0).arg().rem_euclid(TAU))
        .collect();
    angles.sort_by(f64::total_cmp);
    let m = angles.len();
    let mut best: Option<(f64, f64)> = None;
    for i in 0..m {
        let a = angles[i];
        let b = if i + 1 < m {
            angles[i + 1]
        } else {
            angles[0] + TAU
        };
        let gap = b - a;
        let mut bis = (a + gap / 2.0).rem_euclid(TAU);
        if bis > PI {
            bis -= TAU;
        }
        best = match best {
            None => Some((gap, bis)),
            Some((g, _)) if gap > g + GAP_TIE => Some((gap, bis)),
            Some((g, bb)) if (gap - g).abs() <= GAP_TIE && bis > bb => Some((g.max(gap), bis)),
            keep => keep,
        };
    }
    best.map_or(0.0, |(_, bis)| bis)
}

/// Radial geometric basis at `w0`, ordered counterclockwise from the cut ray.
pub fn geometric_basis(branch_points: &[Complex64], w0: Complex64) -> Result<LoopSystem> {
    let radii = disk_radii(branch_points, w0);
    let cut = cut_angle(branch_points, w0);
    let mut order: Vec<usize> = (0..branch_points.len()).collect();
    let key = |j: usize| ((branch_points[j] - w0).arg() - cut).rem_euclid(TAU);
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)));

    let mut loops = Vec::with_capacity(order.len());
    for &j in &order {
        let lp = Loop::spoke(w0, branch_points[j], radii[j]);
        let Piece::Segment { from, to } = lp.pieces[0] else {
            unreachable!()
        };
        for (k, &b) in branch_points.iter().enumerate() {
            if k != j && segment_distance(from, to, b) < radii[k] {
                return Err(Error::ClearanceViolation {
                    target: j,
                    other: k,
                });
            }
        }
        loops.push(lp);
    }
    Ok(LoopSystem {
        basepoint: w0,
        infinity_loop: infinity_loop_with_cut(branch_points, w0, cut),
        radii: order.iter().map(|&j| radii[j]).collect(),
        loops,
        order,
        cut_angle: cut,
    })
}

/// Out along the cut ray to radius `R = 2 max |w_j - w0| + 1`, once around
/// counterclockwise, and back.
pub fn infinity_loop(branch_points: &[Complex64], w0: Complex64) -> Loop {
    infinity_loop_with_cut(branch_points, w0, cut_angle(branch_points, w0))
}

fn infinity_loop_with_cut(branch_points: &[Complex64], w0: Complex64, cut: f64) -> Loop {
    let r = 2.0
        * branch_points
            .iter()
            .map(|b| (b - w0).norm())
            .fold(0.0, f64::max)
        + 1.0;
    let far = w0 + Complex64::from_polar(r, cut);
    Loop {
        basepoint: w0,
        pieces: vec![
            Piece::Segment { from: w0, to: far },
            Piece::Arc {
                center: w0,
                radius: r,
                start_angle: cut,
                sweep: TAU,
            },
            Piece::Segment { from: far, to: w0 },
        ],
        target: None,
    }
}
