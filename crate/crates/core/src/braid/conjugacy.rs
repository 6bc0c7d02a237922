//! Bounded breadth-first search for a simultaneous conjugator.

use super::{garside_nf, BraidWord, GarsideNF};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Searches freely reduced words `g` of length `<= max_len`, shortest first
/// and in letter order `1, -1, 2, -2, ...`, for the first one with
/// `g^-1 ws[i] g == targets[i]` for every `i`.
pub fn simultaneous_conjugacy_search(
    ws: &[BraidWord],
    targets: &[BraidWord],
    max_len: usize,
) -> Result<Option<BraidWord>> {
    if ws.len() != targets.len() {
        return Err(Error::Parse(format!(
            "{} words against {} targets",
            ws.len(),
            targets.len()
        )));
    }
    let Some(first) = ws.first().or(targets.first()) else {
        return Ok(Some(BraidWord::identity(1)));
    };
    let n = first.strands();
    if let Some(bad) = ws.iter().chain(targets).find(|w| w.strands() != n) {
        return Err(Error::StrandCountMismatch(n, bad.strands()));
    }

    let target_nf: Vec<GarsideNF> = targets.iter().map(garside_nf).collect();
    let target_perm: Vec<Permutation> = targets.iter().map(BraidWord::permutation).collect();
    let ws_perm: Vec<Permutation> = ws.iter().map(BraidWord::permutation).collect();
    if ws
        .iter()
        .zip(targets)
        .any(|(a, b)| a.exponent_sum() != b.exponent_sum())
    {
        return Ok(None);
    }

    let alphabet: Vec<i32> = (1..n as i32).flat_map(|m| [m, -m]).collect();
    let check = |g: &BraidWord| -> bool {
        let gp = g.permutation();
        let gi = gp.inverse();
        for i in 0..ws.len() {
            if gi.then(&ws_perm[i]).then(&gp) != target_perm[i] {
                return false;
            }
        }
        ws.iter().zip(&target_nf).all(|(w, t)| {
            let c = w.conjugate_by(g).expect("same strand count");
            &garside_nf(&c) == t
        })
    };

    let mut layer: Vec<BraidWord> = vec![BraidWord::identity(n)];
    for len in 0..=max_len {
        for g in &layer {
            if check(g) {
                return Ok(Some(g.clone()));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * alphabet.len().saturating_sub(1));
        for g in &layer {
            for &l in &alphabet {
                if g.letters().last() == Some(&-l) {
                    continue;
                }
                let mut h = g.clone();
                h.push(l);
                next.push(h);
            }
        }
        layer = next;
    }
    Ok(None)
}
