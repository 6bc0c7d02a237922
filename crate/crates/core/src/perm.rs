//! Permutations and dense closure of small permutation groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default element cap for [`closure`]; covers `S_8`.
pub const DEFAULT_CAP: usize = 50_000;

/// A permutation of `{0, .., n-1}`; displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// From 0-based images; `None` unless a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self { images })
    }

    /// From 1-based images.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// The transposition of `a` and `b` (0-based) in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    /// `self` first, then `other`: `k -> other(self(k))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_transposition(&self) -> bool {
        let moved = self
            .images
            .iter()
            .enumerate()
            .filter(|(k, i)| k != *i)
            .count();
        moved == 2
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }
}

impl fmt::Display for Permutation {
    /// One-line notation, 1-based, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Summary of a permutation group generated by a finite set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupReport {
    pub degree: usize,
    pub order: usize,
    pub is_full_symmetric: bool,
    pub is_cyclic: bool,
    pub is_transitive: bool,
    pub element_count_cap: usize,
}

/// Breadth-first closure of `gens` under composition.
///
/// `degree` is needed only when `gens` is empty.
pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<PermGroupReport> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::StrandCountMismatch(g.degree(), degree));
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(y);
            }
        }
    }
    let order = seen.len();

    let mut orbit = vec![false; degree];
    let mut stack = vec![0usize];
    if degree > 0 {
        orbit[0] = true;
    }
    while let Some(k) = stack.pop() {
        for g in gens {
            let j = g.apply(k);
            if !orbit[j] {
                orbit[j] = true;
                stack.push(j);
            }
        }
    }

    Ok(PermGroupReport {
        degree,
        order,
        is_full_symmetric: order == factorial(degree),
        is_cyclic: seen.iter().any(|x| x.order() == order),
        is_transitive: orbit.iter().all(|&b| b),
        element_count_cap: cap,
    })
}
