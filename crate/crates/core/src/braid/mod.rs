//! Words in the Artin generators of the braid group and exact algebra on them.
//!
//! Words compose left to right: in `u * v` the braid `u` is traversed first.
//! Letter `+m` is the generator `a_m` exchanging positions `m` and `m + 1`
//! counterclockwise, `-m` its inverse. The conjugate of `x` by `g` is
//! `g^-1 x g`.

mod artin;
mod conjugacy;
mod garside;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use artin::{artin_action_trivial, artin_images, FreeWord};
pub use conjugacy::simultaneous_conjugacy_search;
pub use garside::{equal, garside_nf, GarsideNF};

/// A braid word on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        let max = strands as i32 - 1;
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.abs() > max) {
            return Err(Error::IndexOutOfRange {
                index: bad.unsigned_abs() as usize,
                max: max as usize,
            });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub(crate) fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0 && (letter.unsigned_abs() as usize) < self.strands);
        self.letters.push(letter);
    }

    /// Letters of `self` followed by letters of `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandCountMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `self^k`; negative `k` uses the inverse.
    pub fn pow(&self, k: i32) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &BraidWord) -> Result<BraidWord> {
        g.inverse().concat(self)?.concat(g)
    }

    /// Cancels adjacent `x x^-1` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Image in the symmetric group: `a_m` maps to the transposition of
    /// positions `m, m+1`, composed left to right. `p(k)` is the final
    /// position of the strand starting at position `k`.
    pub fn permutation(&self) -> Permutation {
        // at[pos] = strand currently at pos
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let m = l.unsigned_abs() as usize - 1;
            at.swap(m, m + 1);
        }
        let mut images = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation::from_images(images).expect("bijection")
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.signum())).sum()
    }

    /// Pretty form, e.g. `a1^-1 a2 a1`; the empty word prints as `e`.
    pub fn pretty(&self) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        self.letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("a{l}")
                } else {
                    format!("a{}^-1", -l)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses either the integer form (`-1 2 1`) or the pretty form
    /// (`a1^-1 a2 a1`).
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord> {
        BraidWord::new(strands, parse_letters(text)?)
    }
}

fn parse_letters(text: &str) -> Result<Vec<i32>> {
    let mut letters = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() || tok == "e" {
            continue;
        }
        let l = if let Some(rest) = tok.strip_prefix('a') {
            let (idx, inv) = match rest.split_once('^') {
                Some((i, "-1")) => (i, true),
                Some((i, "1")) => (i, false),
                Some(_) => return Err(Error::Parse(format!("bad exponent in `{tok}`"))),
                None => (rest, false),
            };
            let m: i32 = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator `{tok}`")))?;
            if inv {
                -m
            } else {
                m
            }
        } else {
            tok.parse()
                .map_err(|_| Error::Parse(format!("bad letter `{tok}`")))?
        };
        letters.push(l);
    }
    Ok(letters)
}

impl fmt::Display for BraidWord {
    /// Integer form: space-separated signed generator indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses the integer form with the strand count taken as one more than the
/// largest generator index.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_letters(s)?;
        let n = letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(1)
            + 1;
        BraidWord::new(n, letters)
    }
}

/// `Delta_n = (a_1)(a_2 a_1)...(a_{n-1} ... a_1)`.
pub fn delta(n: usize) -> BraidWord {
    let mut letters = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n as i32 {
        letters.extend((1..=k).rev());
    }
    BraidWord {
        strands: n,
        letters,
    }
}

/// `Delta_n^2`, generator of the center.
pub fn full_twist(n: usize) -> BraidWord {
    delta(n).pow(2)
}

/// `(a_{j-1} ... a_1)^-1 a_j (a_{j-1} ... a_1)`.
pub fn paper_generator(n: usize, j: usize) -> Result<BraidWord> {
    if j == 0 || j + 1 > n {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: n.saturating_sub(1),
        });
    }
    let j = j as i32;
    let mut letters: Vec<i32> = (1..j).map(|k| -k).collect();
    letters.push(j);
    letters.extend((1..j).rev());
    BraidWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w(3, &[1]).concat(&w(3, &[2])).unwrap(), w(3, &[1, 2]));
        let c = w(2, &[1]).concat(&w(2, &[-1])).unwrap();
        assert_eq!(c, w(2, &[1, -1]));
        assert!(c.free_reduce().is_empty());
        assert_eq!(
            w(3, &[1]).concat(&w(4, &[1])),
            Err(Error::StrandCountMismatch(3, 4))
        );
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w(2, &[1, -1]).free_reduce().is_empty());
        assert!(w(3, &[1, 2, -2, -1]).free_reduce().is_empty());
        assert_eq!(w(3, &[1, 2, 1]).free_reduce(), w(3, &[1, 2, 1]));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(
            w(2, &[1]).permutation(),
            Permutation::from_one_based(&[2, 1]).unwrap()
        );
        // (1 2) then (2 3) then (1 2), tracked by position: strand 1 -> 3.
        assert_eq!(
            w(3, &[-1, 2, 1]).permutation(),
            Permutation::from_one_based(&[3, 2, 1]).unwrap()
        );
        assert!(w(4, &[]).permutation().is_identity());
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w(2, &[1]).exponent_sum(), 1);
        assert_eq!(w(3, &[-1, 2, 1]).exponent_sum(), 1);
        assert_eq!(full_twist(3).exponent_sum(), 6);
    }

    #[test]
    fn paper_generator_examples() {
        assert_eq!(paper_generator(3, 1).unwrap(), w(3, &[1]));
        assert_eq!(paper_generator(3, 2).unwrap(), w(3, &[-1, 2, 1]));
        assert_eq!(paper_generator(4, 3).unwrap(), w(4, &[-1, -2, 3, 2, 1]));
        assert!(matches!(
            paper_generator(3, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            paper_generator(3, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn delta_words() {
        assert_eq!(delta(2), w(2, &[1]));
        assert_eq!(delta(3), w(3, &[1, 2, 1]));
        assert_eq!(delta(4), w(4, &[1, 2, 1, 3, 2, 1]));
        assert!(equal(&delta(3), &w(3, &[2, 1, 2])).unwrap());
    }

    #[test]
    fn letter_range_enforced() {
        assert!(matches!(
            BraidWord::new(3, vec![3]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::new(3, vec![0]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn text_forms() {
        let x = w(3, &[-1, 2, 1]);
        assert_eq!(x.to_string(), "-1 2 1");
        assert_eq!(x.pretty(), "a1^-1 a2 a1");
        assert_eq!(BraidWord::parse(3, "-1 2 1").unwrap(), x);
        assert_eq!(BraidWord::parse(3, "a1^-1 a2 a1").unwrap(), x);
        assert_eq!(BraidWord::parse(3, "").unwrap(), BraidWord::identity(3));
        assert_eq!("2 -3".parse::<BraidWord>().unwrap().strands(), 4);
        assert!(BraidWord::parse(3, "x").is_err());
        assert_eq!(BraidWord::identity(2).pretty(), "e");
    }

    #[test]
    fn powers() {
        let x = w(3, &[1, 2]);
        assert_eq!(x.pow(2), w(3, &[1, 2, 1, 2]));
        assert_eq!(x.pow(-1), x.inverse());
        assert!(x.pow(0).is_empty());
    }
}
