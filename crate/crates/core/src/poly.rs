//! Monic complex polynomials, simultaneous root finding, critical data and
//! the genericity test on the branch locus.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative residual tolerance of the root finder.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Aberth–Ehrlich iteration cap.
pub const MAX_ABERTH_ITERS: usize = 200;
const POLISH_STEPS: usize = 3;
const INIT_SEED: u64 = 0x5eed0fb4a1d;

/// A monic polynomial `z^n + c_{n-1} z^{n-1} + ... + c_0` with `n >= 2`.
///
/// Coefficients are stored in ascending degree order. Non-monic input is
/// divided through by its leading coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidPolynomial(format!(
                "degree must be at least 2, got {}",
                coeffs.len().saturating_sub(1)
            )));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
        }
        let lead = *coeffs.last().unwrap();
        for c in &mut coeffs {
            *c /= lead;
        }
        *coeffs.last_mut().unwrap() = Complex64::new(1.0, 0.0);
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `z^n - n z`.
    pub fn z_n_minus_nz(n: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[1] = Complex64::new(-(n as f64), 0.0);
        c[n] = Complex64::new(1.0, 0.0);
        Self::new(c).expect("n >= 2")
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self::new(c).expect("n >= 2")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `1 + sum |c_i|`, the scale used by residual bounds.
    pub fn coefficient_scale(&self) -> f64 {
        1.0 + self.coeffs.iter().map(|c| c.norm()).sum::<f64>()
    }

    /// Value and derivative at `z` in one synthetic-division pass.
    pub fn evaluate(&self, z: Complex64) -> (Complex64, Complex64) {
        horner(&self.coeffs, z)
    }

    /// Coefficients of `P'`.
    pub fn derivative_coeffs(&self) -> Vec<Complex64> {
        derivative(&self.coeffs)
    }

    /// Coefficients of `P(z) - w`.
    pub fn shifted_coeffs(&self, w: Complex64) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        c[0] -= w;
        c
    }

    pub fn all_roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        find_roots(&self.coeffs, tol)
    }

    /// Zeros of `P'`, with multiplicity.
    pub fn critical_points(&self) -> Result<Vec<Complex64>> {
        find_roots(&self.derivative_coeffs(), DEFAULT_ROOT_TOL)
    }

    /// Branch locus with the default clustering tolerance.
    pub fn branch_locus(&self) -> Result<CriticalData> {
        let crit = self.critical_points()?;
        let values: Vec<_> = crit.iter().map(|&c| self.evaluate(c).0).collect();
        let tol = default_cluster_tol(&values);
        cluster_critical_values(crit, values, tol)
    }

    pub fn branch_locus_with(&self, cluster_tol: f64) -> Result<CriticalData> {
        let crit = self.critical_points()?;
        let values: Vec<_> = crit.iter().map(|&c| self.evaluate(c).0).collect();
        cluster_critical_values(crit, values, cluster_tol)
    }

    /// True iff the branch locus consists of `n - 1` distinct points.
    pub fn is_generic(&self) -> Result<bool> {
        Ok(self.branch_locus()?.branch_points.len() == self.degree() - 1)
    }

    pub fn is_generic_with(&self, cluster_tol: f64) -> Result<bool> {
        Ok(self.branch_locus_with(cluster_tol)?.branch_points.len() == self.degree() - 1)
    }

    /// Drops the constant term, returning it as the w-plane offset.
    pub fn normalize(&self) -> (Polynomial, Complex64) {
        let offset = self.coeffs[0];
        let mut c = self.coeffs.clone();
        c[0] = Complex64::new(0.0, 0.0);
        (Polynomial { coeffs: c }, offset)
    }
}

/// Critical points and the clustered branch locus.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalData {
    pub critical_points: Vec<Complex64>,
    pub branch_points: Vec<Complex64>,
    /// Number of critical points (with multiplicity) over each branch point.
    pub multiplicities: Vec<usize>,
    pub cluster_tol: f64,
}

/// `1e-8 * (1 + max |v|)`.
pub fn default_cluster_tol(values: &[Complex64]) -> f64 {
    let m = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    1e-8 * (1.0 + m)
}

/// Single-linkage clustering of points: two points share a cluster iff they
/// are joined by a chain of hops no longer than `tol`. Clusters are returned
/// as index lists in order of their first member.
pub fn cluster_points(points: &[Complex64], tol: f64) -> Result<Vec<Vec<usize>>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut i = i;
        while parent[i] != r {
            let next = parent[i];
            parent[i] = r;
            i = next;
        }
        r
    }
    let guard = 10.0 * f64::EPSILON * tol.max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (points[i] - points[j]).norm();
            if (d - tol).abs() <= guard {
                return Err(Error::AmbiguousClustering { distance: d, tol });
            }
            if d <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot[r]].push(i);
    }
    Ok(clusters)
}

fn cluster_critical_values(
    critical_points: Vec<Complex64>,
    values: Vec<Complex64>,
    tol: f64,
) -> Result<CriticalData> {
    let clusters = cluster_points(&values, tol)?;
    let mut branch_points = Vec::with_capacity(clusters.len());
    let mut multiplicities = Vec::with_capacity(clusters.len());
    for members in &clusters {
        let sum: Complex64 = members.iter().map(|&i| values[i]).sum();
        branch_points.push(sum / members.len() as f64);
        multiplicities.push(members.len());
    }
    Ok(CriticalData {
        critical_points,
        branch_points,
        multiplicities,
        cluster_tol: tol,
    })
}

/// Horner evaluation of `p` and `p'` at `z`.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Rounding-error bound for evaluating `coeffs` at `z` by Horner's rule.
fn eval_error_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * r + c.norm();
    }
    4.0 * f64::EPSILON * acc * coeffs.len() as f64
}

/// All roots of a polynomial of degree >= 1 with multiplicity, by
/// Aberth–Ehrlich iteration followed by Newton polishing.
///
/// Every returned root satisfies `|p(r)| <= tol * (1 + sum |c_i|)` for the
/// monic-normalized coefficients.
pub fn find_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Err(Error::InvalidPolynomial(
            "constant polynomial has no roots".into(),
        ));
    }
    let lead = c[deg];
    for x in &mut c {
        *x /= lead;
    }
    c[deg] = Complex64::new(1.0, 0.0);
    if deg == 1 {
        return Ok(vec![-c[0]]);
    }

    let radius = 1.0 + c[..deg].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(INIT_SEED);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|_| Complex64::from_polar(radius, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();

    let mut done = vec![false; deg];
    for _ in 0..MAX_ABERTH_ITERS {
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&c, z[i]);
            if p.norm() <= eval_error_bound(&c, z[i]) {
                done[i] = true;
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let denom = dp - p * s;
            if denom.norm() == 0.0 || !denom.re.is_finite() {
                continue;
            }
            let step = p / denom;
            z[i] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }

    for r in &mut z {
        for _ in 0..POLISH_STEPS {
            let (p, dp) = horner(&c, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *r - p / dp;
            if horner(&c, cand).0.norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }

    let bound = tol * (1.0 + c.iter().map(|x| x.norm()).sum::<f64>());
    let worst = z
        .iter()
        .map(|&r| horner(&c, r).0.norm())
        .fold(0.0, f64::max);
    if worst.is_nan() || worst > bound {
        return Err(Error::NonConvergence {
            iters: MAX_ABERTH_ITERS,
            residual: worst,
        });
    }
    Ok(z)
}
