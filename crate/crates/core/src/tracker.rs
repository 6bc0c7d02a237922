//! Predictor–corrector lifting of w-plane loops through `z -> P(z)`.
//!
//! All strands advance together on one adaptive time grid. Each strand is
//! predicted from its own position and corrected by Newton's method, so
//! strand identity comes from continuation rather than re-matching.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::loops::Loop;
use crate::perm::Permutation;
use crate::poly::{find_roots, Polynomial, DEFAULT_ROOT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct TrackOptions {
    pub newton_tol: f64,
    pub collision_tol: f64,
    pub match_tol: f64,
    pub dt_min: f64,
    /// Largest displacement of any strand in one step; `None` means one
    /// eighth of the smallest pairwise distance in the starting fiber.
    pub max_strand_step: Option<f64>,
    pub deriv_floor: f64,
    pub accept_streak: usize,
    pub dt_initial: f64,
    pub dt_max: f64,
    pub max_newton_iters: usize,
    /// Track the loop backwards.
    pub reverse: bool,
}

impl Default for TrackOptions {
    fn default() -> Self {
        Self {
            newton_tol: 1e-10,
            collision_tol: 1e-6,
            match_tol: 1e-6,
            dt_min: 1e-9,
            max_strand_step: None,
            deriv_floor: 1e-12,
            accept_streak: 4,
            dt_initial: 1.0 / 256.0,
            dt_max: 1.0 / 64.0,
            max_newton_iters: 12,
            reverse: false,
        }
    }
}

/// Sampled lift of a loop: `strands[k][i]` is strand `k` at `times[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberTrack {
    pub times: Vec<f64>,
    pub strands: Vec<Vec<Complex64>>,
    pub loop_: Loop,
    pub polynomial: Polynomial,
    pub newton_tol: f64,
}

fn min_pairwise(z: &[Complex64]) -> (f64, usize, usize) {
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..z.len() {
        for j in (i + 1)..z.len() {
            let d = (z[i] - z[j]).norm();
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

fn nearest_other(z: &[Complex64], k: usize) -> f64 {
    z.iter()
        .enumerate()
        .filter(|(j, _)| *j != k)
        .map(|(_, &y)| (y - z[k]).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Projection of `z` onto the direction `theta`.
pub fn projection(z: Complex64, theta: f64) -> f64 {
    (z * Complex64::from_polar(1.0, -theta)).re
}

/// Component of `z` orthogonal to the projection direction.
pub fn depth(z: Complex64, theta: f64) -> f64 {
    (z * Complex64::from_polar(1.0, -theta)).im
}

/// Newton iteration on `P(z) = w` from `z`; `None` if the residual does not
/// reach `tol` within `iters` steps or a step exceeds `max_move`.
fn newton(
    p: &Polynomial,
    w: Complex64,
    mut z: Complex64,
    tol: f64,
    iters: usize,
    max_move: f64,
) -> Option<Complex64> {
    let start = z;
    for _ in 0..=iters {
        let (v, dv) = p.evaluate(z);
        let r = v - w;
        if r.norm() <= tol {
            return Some(z);
        }
        if dv.norm() == 0.0 {
            return None;
        }
        z -= r / dv;
        if !(z - start).norm().is_finite() || (z - start).norm() > max_move {
            return None;
        }
    }
    None
}

/// The roots of `P(z) - w0`, ordered by increasing projection onto the
/// direction `theta`. These orderings fix the strand labels.
pub fn fiber(
    p: &Polynomial,
    w0: Complex64,
    theta: f64,
    collision_tol: f64,
) -> Result<Vec<Complex64>> {
    let mut roots = find_roots(&p.shifted_coeffs(w0), DEFAULT_ROOT_TOL)?;
    for r in &mut roots {
        for _ in 0..2 {
            let (v, dv) = p.evaluate(*r);
            if dv.norm() == 0.0 {
                break;
            }
            let cand = *r - (v - w0) / dv;
            if (p.evaluate(cand).0 - w0).norm() < (v - w0).norm() {
                *r = cand;
            }
        }
    }
    let (d, _, _) = min_pairwise(&roots);
    if d < collision_tol {
        return Err(Error::DegenerateFiber(collision_tol));
    }
    roots.sort_by(|a, b| projection(*a, theta).total_cmp(&projection(*b, theta)));
    Ok(roots)
}

#[derive(Debug, Clone, Copy)]
enum Reject {
    Derivative,
    Newton,
    Move,
    Audit(usize),
}

/// Lifts `lp` starting from the ordered fiber `fiber0` over its basepoint.
pub fn track_fiber(
    p: &Polynomial,
    lp: &Loop,
    fiber0: &[Complex64],
    opts: &TrackOptions,
) -> Result<FiberTrack> {
    let lp = if opts.reverse {
        lp.reversed()
    } else {
        lp.clone()
    };
    let n = fiber0.len();
    let (d0, _, _) = min_pairwise(fiber0);
    let max_step = opts.max_strand_step.unwrap_or(d0 / 8.0);

    let w_start = lp.sample(0.0);
    let mut z: Vec<Complex64> = Vec::with_capacity(n);
    for &q in fiber0 {
        let c = newton(
            p,
            w_start,
            q,
            opts.newton_tol,
            opts.max_newton_iters,
            max_step,
        )
        .ok_or(Error::NewtonDivergence(0.0))?;
        z.push(c);
    }

    let mut times = vec![0.0];
    let mut strands: Vec<Vec<Complex64>> = z.iter().map(|&c| vec![c]).collect();
    if lp.length() == 0.0 {
        times.push(1.0);
        for (s, &c) in strands.iter_mut().zip(&z) {
            s.push(c);
        }
        return Ok(FiberTrack {
            times,
            strands,
            loop_: lp,
            polynomial: p.clone(),
            newton_tol: opts.newton_tol,
        });
    }

    let mut t = 0.0;
    let mut dt = opts.dt_initial.min(opts.dt_max);
    let mut streak = 0usize;
    let mut w_prev = w_start;
    let mut next = vec![Complex64::new(0.0, 0.0); n];

    while t < 1.0 {
        let t1 = if t + dt >= 1.0 - 1e-15 { 1.0 } else { t + dt };
        let w1 = lp.sample(t1);
        let outcome = (|| {
            for k in 0..n {
                let (_, dv) = p.evaluate(z[k]);
                if dv.norm() < opts.deriv_floor {
                    return Err(Reject::Derivative);
                }
                let bound = max_step.min(nearest_other(&z, k) / 4.0);
                let pred = z[k] + (w1 - w_prev) / dv;
                let c = newton(
                    p,
                    w1,
                    pred,
                    opts.newton_tol,
                    opts.max_newton_iters,
                    2.0 * bound + (pred - z[k]).norm(),
                )
                .ok_or(Reject::Newton)?;
                if (c - z[k]).norm() > bound {
                    return Err(Reject::Move);
                }
                next[k] = c;
            }
            // Each strand must land nearer its own previous position than any other's.
            for k in 0..n {
                let own = (next[k] - z[k]).norm();
                if z.iter()
                    .enumerate()
                    .any(|(j, &y)| j != k && (next[k] - y).norm() <= own)
                {
                    return Err(Reject::Audit(k));
                }
            }
            Ok(())
        })();

        match outcome {
            Ok(()) => {
                let (d, i, j) = min_pairwise(&next);
                if d < opts.collision_tol {
                    return Err(Error::CollisionDetected(i, j, t1));
                }
                std::mem::swap(&mut z, &mut next);
                t = t1;
                w_prev = w1;
                times.push(t);
                for (s, &c) in strands.iter_mut().zip(&z) {
                    s.push(c);
                }
                streak += 1;
                if streak >= opts.accept_streak {
                    dt = (dt * 2.0).min(opts.dt_max);
                    streak = 0;
                }
            }
            Err(Reject::Audit(k)) => {
                let j = (0..n)
                    .filter(|&j| j != k)
                    .min_by(|&a, &b| (next[k] - z[a]).norm().total_cmp(&(next[k] - z[b]).norm()))
                    .unwrap_or(k);
                return Err(Error::CollisionDetected(k.min(j), k.max(j), t1));
            }
            Err(reason) => {
                dt /= 2.0;
                streak = 0;
                if dt < opts.dt_min {
                    let (d, i, j) = min_pairwise(&z);
                    return Err(match reason {
                        Reject::Newton => Error::NewtonDivergence(t),
                        Reject::Move if d < 1e-3 * d0 => Error::CollisionDetected(i, j, t),
                        _ => Error::StepUnderflow(t),
                    });
                }
            }
        }
    }

    Ok(FiberTrack {
        times,
        strands,
        loop_: lp,
        polynomial: p.clone(),
        newton_tol: opts.newton_tol,
    })
}

impl FiberTrack {
    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    pub fn sample_count(&self) -> usize {
        self.times.len()
    }

    /// All strand positions at sample `i`.
    pub fn positions(&self, i: usize) -> Vec<Complex64> {
        self.strands.iter().map(|s| s[i]).collect()
    }

    /// Positions at time `t` inside `[times[i], times[i+1]]`, linearly
    /// interpolated and then re-corrected with Newton's method.
    pub fn corrected_between(&self, i: usize, t: f64) -> Result<Vec<Complex64>> {
        let (ta, tb) = (self.times[i], self.times[i + 1]);
        let s = if tb > ta { (t - ta) / (tb - ta) } else { 0.0 };
        let guess: Vec<Complex64> = self
            .strands
            .iter()
            .map(|st| st[i] + (st[i + 1] - st[i]) * s)
            .collect();
        self.correct_at(t, &guess)
    }

    /// Newton-corrects `guess` onto the fiber over the loop point at `t`,
    /// checking that no strand jumps to another's position.
    pub fn correct_at(&self, t: f64, guess: &[Complex64]) -> Result<Vec<Complex64>> {
        let w = self.loop_.sample(t);
        let mut out = Vec::with_capacity(guess.len());
        for (k, &g) in guess.iter().enumerate() {
            let reach = nearest_other(guess, k) / 3.0;
            let c = newton(&self.polynomial, w, g, self.newton_tol, 30, reach)
                .ok_or(Error::NewtonDivergence(t))?;
            out.push(c);
        }
        for k in 0..out.len() {
            let own = (out[k] - guess[k]).norm();
            if guess
                .iter()
                .enumerate()
                .any(|(j, &y)| j != k && (out[k] - y).norm() <= own)
            {
                let (_, i, j) = min_pairwise(&out);
                return Err(Error::CollisionDetected(i, j, t));
            }
        }
        Ok(out)
    }

    /// Largest `|P(z) - w(t)|` over all samples.
    pub fn max_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, &t) in self.times.iter().enumerate() {
            let w = self.loop_.sample(t);
            for s in &self.strands {
                worst = worst.max((self.polynomial.evaluate(s[i]).0 - w).norm());
            }
        }
        worst
    }

    /// Smallest pairwise strand distance over all samples.
    pub fn min_separation(&self) -> f64 {
        (0..self.times.len())
            .map(|i| min_pairwise(&self.positions(i)).0)
            .fold(f64::INFINITY, f64::min)
    }

    /// `p(k)` is the index of the start point reached by strand `k`.
    pub fn end_permutation(&self, match_tol: f64) -> Result<Permutation> {
        let last = self.times.len() - 1;
        let mut images = Vec::with_capacity(self.strands.len());
        for s in &self.strands {
            let end = s[last];
            let (j, d) = self
                .strands
                .iter()
                .enumerate()
                .map(|(j, t)| (j, (t[0] - end).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .ok_or(Error::MatchAmbiguous)?;
            if d > match_tol {
                return Err(Error::MatchAmbiguous);
            }
            images.push(j);
        }
        Permutation::from_images(images).ok_or(Error::MatchAmbiguous)
    }

    /// Number of half-twists of strand `b` around strand `a`: the unwrapped
    /// change of `arg(z_b - z_a)` divided by pi, rounded. Also returns the
    /// distance of the raw quotient from that integer.
    pub fn half_twist_count(&self, a: usize, b: usize) -> Result<(i64, f64)> {
        let mut total = 0.0;
        for i in 0..self.times.len() - 1 {
            let za = self.strands[a][i];
            let zb = self.strands[b][i];
            let ya = self.strands[a][i + 1];
            let yb = self.strands[b][i + 1];
            total += self.unwrap_increment(
                (a, b),
                i,
                self.times[i],
                self.times[i + 1],
                zb - za,
                yb - ya,
                0,
            )?;
        }
        let q = total / PI;
        let nb = q.round();
        Ok((nb as i64, (q - nb).abs()))
    }

    #[allow(clippy::too_many_arguments)]
    fn unwrap_increment(
        &self,
        (a, b): (usize, usize),
        i: usize,
        ta: f64,
        tb: f64,
        da: Complex64,
        db: Complex64,
        level: usize,
    ) -> Result<f64> {
        let jump = (db / da).arg();
        if jump.abs() < PI / 2.0 {
            return Ok(jump);
        }
        if level > 40 {
            return Err(Error::UnwrapAliasing(ta));
        }
        let tm = 0.5 * (ta + tb);
        let mid = self.corrected_between(i, tm)?;
        let dm = mid[b] - mid[a];
        Ok(self.unwrap_increment((a, b), i, ta, tm, da, dm, level + 1)?
            + self.unwrap_increment((a, b), i, tm, tb, dm, db, level + 1)?)
    }
}
