//! The full pipeline: branch locus, loops, lifting, words, and the checks
//! tying them together.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::braid::{equal, paper_generator, simultaneous_conjugacy_search, BraidWord};
use crate::error::{Error, Result};
use crate::extract::{extract_word_with, projection_angles, separation_tol};
use crate::loops::{choose_basepoint, geometric_basis, Loop, LoopSystem};
use crate::perm::{closure, PermGroupReport, Permutation, DEFAULT_CAP};
use crate::poly::{CriticalData, Polynomial};
use crate::tracker::{fiber, track_fiber, FiberTrack, TrackOptions};

/// Largest degree for which frame alignment is attempted.
pub const FRAME_ALIGNMENT_MAX_DEGREE: usize = 4;
pub const FRAME_ALIGNMENT_MAX_LEN: usize = 8;
const ANGLE_RETRIES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyOptions {
    pub track: TrackOptions,
    pub cluster_tol: Option<f64>,
    pub sep_tol: Option<f64>,
    /// Fixed projection angle; disables the retry on tangencies.
    pub projection_angle: Option<f64>,
    /// Track loops on separate threads.
    pub parallel: bool,
    pub group_cap: usize,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        Self {
            track: TrackOptions::default(),
            cluster_tol: None,
            sep_tol: None,
            projection_angle: None,
            parallel: false,
            group_cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyEntry {
    pub branch_point: Complex64,
    pub multiplicity: usize,
    #[serde(rename = "loop")]
    pub loop_: Loop,
    pub word: BraidWord,
    pub permutation: Permutation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyResult {
    pub polynomial: Polynomial,
    pub basepoint: Complex64,
    /// Fiber over the basepoint in projection order.
    pub fiber: Vec<Complex64>,
    pub projection_angle: f64,
    pub entries: Vec<MonodromyEntry>,
    pub infinity_word: BraidWord,
    pub group_report: PermGroupReport,
}

impl MonodromyResult {
    pub fn degree(&self) -> usize {
        self.polynomial.degree()
    }

    /// Entry words concatenated in loop order.
    pub fn product_word(&self) -> BraidWord {
        let mut w = BraidWord::identity(self.degree());
        for e in &self.entries {
            w = w.concat(&e.word).expect("same strand count");
        }
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ConsistentWithTheorem,
    HypothesisFails,
    CheckFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidCheck {
    pub exponent_sum: i64,
    pub is_transposition: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub hypothesis_generic: bool,
    pub per_braid: Vec<BraidCheck>,
    pub composite_identity: bool,
    pub group_full_symmetric: bool,
    pub frame_alignment_attempted: bool,
    pub frame_alignment: Option<BraidWord>,
    pub verdict: Verdict,
    pub monodromy: MonodromyResult,
}

/// Everything that precedes lifting, in the coordinates of the normalized
/// polynomial (constant term removed).
#[derive(Debug, Clone, PartialEq)]
pub struct Setup {
    pub polynomial: Polynomial,
    pub offset: Complex64,
    pub critical: CriticalData,
    pub system: LoopSystem,
}

impl Setup {
    pub fn new(p: &Polynomial, seed: u64, opts: &MonodromyOptions) -> Result<Self> {
        let (q, offset) = p.normalize();
        let critical = match opts.cluster_tol {
            Some(tol) => q.branch_locus_with(tol)?,
            None => q.branch_locus()?,
        };
        let w0 = choose_basepoint(&critical.branch_points, seed)?;
        let system = geometric_basis(&critical.branch_points, w0)?;
        Ok(Self {
            polynomial: q,
            offset,
            critical,
            system,
        })
    }

    fn multiplicity(&self, loop_index: usize) -> usize {
        self.critical.multiplicities[self.system.order[loop_index]]
    }

    /// The loops in tracking order, infinity last.
    pub fn all_loops(&self) -> Vec<&Loop> {
        self.system
            .loops
            .iter()
            .chain(std::iter::once(&self.system.infinity_loop))
            .collect()
    }

    /// Lifts every loop (infinity last) starting from `fiber0`.
    pub fn lift(&self, fiber0: &[Complex64], opts: &MonodromyOptions) -> Result<Vec<FiberTrack>> {
        let loops = self.all_loops();
        let run = |i: usize| {
            track_fiber(&self.polynomial, loops[i], fiber0, &opts.track).map_err(Error::at_loop(i))
        };
        if opts.parallel {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..loops.len()).map(|i| s.spawn(move || run(i))).collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("tracking thread panicked"))
                    .collect()
            })
        } else {
            (0..loops.len()).map(run).collect()
        }
    }
}

fn angle_candidates(fiber0: &[Complex64], seed: u64, opts: &MonodromyOptions) -> Vec<f64> {
    if let Some(t) = opts.projection_angle {
        return vec![t];
    }
    let tol = opts.sep_tol.unwrap_or_else(|| separation_tol(fiber0));
    projection_angles(fiber0, seed, tol)
        .take(ANGLE_RETRIES)
        .collect()
}

fn retryable(e: &Error) -> bool {
    matches!(
        e.root_cause(),
        Error::TangencyUnresolved(..) | Error::SimultaneousCrossing(_)
    )
}

/// Braid monodromy of `p` with respect to a seeded basepoint and geometric
/// basis.
pub fn braid_monodromy(
    p: &Polynomial,
    seed: u64,
    opts: &MonodromyOptions,
) -> Result<MonodromyResult> {
    let setup = Setup::new(p, seed, opts)?;
    let (q, w0) = (&setup.polynomial, setup.system.basepoint);
    let unordered = fiber(q, w0, 0.0, opts.track.collision_tol)?;
    let thetas = angle_candidates(&unordered, seed, opts);
    let mut last_err = Error::NoGenericAngle(thetas.len());

    for theta in thetas {
        let fiber0 = fiber(q, w0, theta, opts.track.collision_tol)?;
        let tracks = setup.lift(&fiber0, opts)?;
        let words: Result<Vec<(BraidWord, Permutation)>> = tracks
            .iter()
            .enumerate()
            .map(|(i, tr)| {
                extract_word_with(tr, theta, opts.track.match_tol, opts.sep_tol)
                    .map_err(Error::at_loop(i))
            })
            .collect();
        let mut words = match words {
            Ok(w) => w,
            Err(e) if retryable(&e) && opts.projection_angle.is_none() => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (infinity_word, _) = words.pop().expect("infinity loop present");
        let perms: Vec<Permutation> = words.iter().map(|(_, s)| s.clone()).collect();
        let group_report = closure(q.degree(), &perms, opts.group_cap)?;
        let entries = words
            .into_iter()
            .enumerate()
            .map(|(i, (word, permutation))| MonodromyEntry {
                branch_point: setup.critical.branch_points[setup.system.order[i]] + setup.offset,
                multiplicity: setup.multiplicity(i),
                loop_: setup.system.loops[i].translated(setup.offset),
                word,
                permutation,
            })
            .collect();
        return Ok(MonodromyResult {
            polynomial: p.clone(),
            basepoint: w0 + setup.offset,
            fiber: fiber0,
            projection_angle: theta,
            entries,
            infinity_word,
            group_report,
        });
    }
    Err(last_err)
}

/// Permutation monodromy only: end permutations of the basis loops, in
/// positions of the fiber ordered by real part.
pub fn monodromy_group(
    p: &Polynomial,
    seed: u64,
    opts: &MonodromyOptions,
) -> Result<PermGroupReport> {
    let setup = Setup::new(p, seed, opts)?;
    let fiber0 = fiber(
        &setup.polynomial,
        setup.system.basepoint,
        0.0,
        opts.track.collision_tol,
    )?;
    let mut perms = Vec::with_capacity(setup.system.loops.len());
    for (i, lp) in setup.system.loops.iter().enumerate() {
        let tr =
            track_fiber(&setup.polynomial, lp, &fiber0, &opts.track).map_err(Error::at_loop(i))?;
        perms.push(
            tr.end_permutation(opts.track.match_tol)
                .map_err(Error::at_loop(i))?,
        );
    }
    closure(setup.polynomial.degree(), &perms, opts.group_cap)
}

fn is_standard_example(p: &Polynomial) -> bool {
    let n = p.degree();
    let target = Polynomial::z_n_minus_nz(n);
    p.coeffs()
        .iter()
        .zip(target.coeffs())
        .all(|(a, b)| (a - b).norm() <= 1e-12)
}

/// Necessary conditions for the braid monodromy group to be all of `Br_n`.
pub fn verify_main_theorem(
    p: &Polynomial,
    seed: u64,
    opts: &MonodromyOptions,
) -> Result<TheoremReport> {
    let (q, _) = p.normalize();
    let tol = match opts.cluster_tol {
        Some(t) => t,
        None => q.branch_locus()?.cluster_tol,
    };
    let hypothesis_generic = q.is_generic_with(tol)?;
    let monodromy = braid_monodromy(p, seed, opts)?;
    let n = monodromy.degree();

    let per_braid: Vec<BraidCheck> = monodromy
        .entries
        .iter()
        .map(|e| BraidCheck {
            exponent_sum: e.word.exponent_sum(),
            is_transposition: e.permutation.is_transposition(),
        })
        .collect();
    let composite_identity = equal(&monodromy.product_word(), &monodromy.infinity_word)?;
    let group_full_symmetric = monodromy.group_report.is_full_symmetric;

    let frame_alignment_attempted = n <= FRAME_ALIGNMENT_MAX_DEGREE && is_standard_example(p);
    let frame_alignment = if frame_alignment_attempted {
        let words: Vec<BraidWord> = monodromy.entries.iter().map(|e| e.word.clone()).collect();
        let targets = (1..n)
            .map(|j| paper_generator(n, j))
            .collect::<Result<Vec<_>>>()?;
        simultaneous_conjugacy_search(&words, &targets, FRAME_ALIGNMENT_MAX_LEN)?
    } else {
        None
    };

    let braids_ok = per_braid
        .iter()
        .all(|b| b.exponent_sum == 1 && b.is_transposition);
    let verdict = if !hypothesis_generic {
        Verdict::HypothesisFails
    } else if braids_ok && composite_identity && group_full_symmetric {
        Verdict::ConsistentWithTheorem
    } else {
        Verdict::CheckFailed
    };
    Ok(TheoremReport {
        hypothesis_generic,
        per_braid,
        composite_identity,
        group_full_symmetric,
        frame_alignment_attempted,
        frame_alignment,
        verdict,
        monodromy,
    })
}
