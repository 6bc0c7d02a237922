//! Left-greedy Garside normal form `Delta^inf s_1 ... s_k`.
//!
//! Simple factors are positive permutation braids, stored as the
//! permutation sending each starting position to its final position.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidWord;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideNF {
    pub strands: usize,
    pub inf: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideNF {
    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Canonical length (number of non-Delta simple factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for GarsideNF {
    /// `D^p | s1 | s2 | ...`, each factor in one-line notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for s in &self.factors {
            write!(f, " | {s}")?;
        }
        Ok(())
    }
}

type Simple = Vec<u8>;

fn is_delta(s: &Simple) -> bool {
    let n = s.len();
    s.iter().enumerate().all(|(k, &v)| v as usize == n - 1 - k)
}

fn is_identity(s: &Simple) -> bool {
    s.iter().enumerate().all(|(k, &v)| v as usize == k)
}

/// Conjugation by Delta: `k -> n-1 - s(n-1 - k)`.
fn flip(s: &mut Simple) {
    let n = s.len();
    let old = s.clone();
    for k in 0..n {
        s[k] = (n - 1 - old[n - 1 - k] as usize) as u8;
    }
}

/// `i` is in the starting set iff the strands starting at `i, i+1` cross.
fn in_starting_set(s: &Simple, i: usize) -> bool {
    s[i] > s[i + 1]
}

fn inverse(s: &Simple) -> Simple {
    let mut inv = vec![0u8; s.len()];
    for (k, &v) in s.iter().enumerate() {
        inv[v as usize] = k as u8;
    }
    inv
}

/// Replaces `(x, y)` by the left-weighted pair with the same product.
/// Returns whether anything changed.
fn left_weight(x: &mut Simple, y: &mut Simple) -> bool {
    let n = x.len();
    let mut changed = false;
    let mut xinv = inverse(x);
    loop {
        // i in S(y) but not in F(x); F(x) = {i : x^-1(i) > x^-1(i+1)}.
        let Some(i) = (0..n - 1).find(|&i| in_starting_set(y, i) && xinv[i] < xinv[i + 1]) else {
            return changed;
        };
        // x <- x a_i: swap the values i, i+1.
        let (p, q) = (xinv[i] as usize, xinv[i + 1] as usize);
        x.swap(p, q);
        xinv.swap(i, i + 1);
        // y <- a_i^-1 y: swap the entries i, i+1.
        y.swap(i, i + 1);
        changed = true;
    }
}

fn transposition(n: usize, m: usize) -> Simple {
    let mut s: Simple = (0..n as u8).collect();
    s.swap(m, m + 1);
    s
}

/// `Delta a_m^-1`, the simple `Y` with `Y a_m = Delta`.
fn delta_over(n: usize, m: usize) -> Simple {
    (0..n)
        .map(|k| {
            let v = n - 1 - k;
            (if v == m {
                m + 1
            } else if v == m + 1 {
                m
            } else {
                v
            }) as u8
        })
        .collect()
}

fn normalize(n: usize, inf: &mut i64, factors: &mut Vec<Simple>) {
    loop {
        let mut changed = false;
        for i in (0..factors.len().saturating_sub(1)).rev() {
            let (a, b) = factors.split_at_mut(i + 1);
            if left_weight(&mut a[i], &mut b[0]) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let lead = factors.iter().take_while(|s| is_delta(s)).count();
    if lead > 0 {
        factors.drain(..lead);
        *inf += lead as i64;
    }
    while factors.last().is_some_and(is_identity) {
        factors.pop();
    }
    debug_assert!(factors.iter().all(|s| s.len() == n));
}

/// Left-greedy normal form of `w`. Two words are equal in the braid group
/// iff their normal forms coincide.
pub fn garside_nf(w: &BraidWord) -> GarsideNF {
    let n = w.strands();
    let mut inf: i64 = 0;
    let mut factors: Vec<Simple> = Vec::with_capacity(w.len());
    if n >= 2 {
        for &l in w.letters() {
            let m = l.unsigned_abs() as usize - 1;
            if l > 0 {
                factors.push(transposition(n, m));
            } else {
                // X a_m^-1 = X Delta^-1 Y = Delta^-1 flip(X) Y.
                for s in &mut factors {
                    flip(s);
                }
                inf -= 1;
                factors.push(delta_over(n, m));
            }
            // Keep the prefix normal; the new factor only disturbs the tail.
            let mut i = factors.len();
            while i >= 2 {
                let (a, b) = factors.split_at_mut(i - 1);
                if !left_weight(&mut a[i - 2], &mut b[0]) {
                    break;
                }
                i -= 1;
            }
        }
    }
    normalize(n, &mut inf, &mut factors);
    GarsideNF {
        strands: n,
        inf,
        factors: factors
            .into_iter()
            .map(|s| {
                Permutation::from_images(s.into_iter().map(usize::from).collect())
                    .expect("simple factors are bijections")
            })
            .collect(),
    }
}

/// Equality in the braid group.
pub fn equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::StrandCountMismatch(a.strands(), b.strands()));
    }
    Ok(garside_nf(a) == garside_nf(b))
}
