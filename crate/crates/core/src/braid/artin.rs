//! The Artin action of the braid group on the free group, used as an
//! independent solution of the word problem.
//!
//! Convention: `a_m` sends `x_m -> x_m x_{m+1} x_m^-1`, `x_{m+1} -> x_m` and
//! fixes the other generators.

use super::BraidWord;

/// Freely reduced word in `x_1..x_n`; letter `+k` is `x_k`, `-k` its inverse.
pub type FreeWord = Vec<i32>;

fn push_reduced(out: &mut FreeWord, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Image of the free letter `x` under the generator automorphism for braid
/// letter `b`, appended to `out` with free reduction.
fn substitute(out: &mut FreeWord, b: i32, x: i32) {
    let m = b.abs();
    let k = x.abs();
    let image: &[i32] = match (b > 0, k == m, k == m + 1) {
        (true, true, _) => &[m, m + 1, -m],
        (true, _, true) => &[m],
        (false, true, _) => &[m + 1],
        (false, _, true) => &[-(m + 1), m, m + 1],
        _ => {
            push_reduced(out, x);
            return;
        }
    };
    if x > 0 {
        for &y in image {
            push_reduced(out, y);
        }
    } else {
        for &y in image.iter().rev() {
            push_reduced(out, -y);
        }
    }
}

/// Images of `x_1..x_n` under the automorphism of `w`.
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    let n = w.strands() as i32;
    let mut images: Vec<FreeWord> = (1..=n).map(|k| vec![k]).collect();
    let mut buf = FreeWord::new();
    for &b in w.letters() {
        for img in &mut images {
            buf.clear();
            for &x in img.iter() {
                substitute(&mut buf, b, x);
            }
            std::mem::swap(img, &mut buf);
        }
    }
    images
}

/// True iff `w` acts trivially on the free group, i.e. `w` is the identity
/// braid.
pub fn artin_action_trivial(w: &BraidWord) -> bool {
    artin_images(w)
        .iter()
        .enumerate()
        .all(|(k, img)| img.as_slice() == [k as i32 + 1])
}
