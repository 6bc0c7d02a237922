//! Full braid monodromy of z^n - nz and the checks run on it.
//!
//! cargo run --release --example monodromy -- 5

use braidmono::braid::equal;
use braidmono::engine::{braid_monodromy, verify_main_theorem};
use braidmono::io::ResultJson;
use braidmono::{MonodromyOptions, Polynomial};

fn main() -> braidmono::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let p = Polynomial::z_n_minus_nz(n);
    let opts = MonodromyOptions::default();
    let r = braid_monodromy(&p, 0, &opts)?;
    println!(
        "basepoint {}, projection angle {}",
        r.basepoint, r.projection_angle
    );
    for (j, e) in r.entries.iter().enumerate() {
        println!(
            "b{} over {:.3}: {}   perm [{}]",
            j + 1,
            e.branch_point,
            e.word.pretty(),
            e.permutation
        );
    }
    println!("infinity: {}", r.infinity_word.pretty());
    println!(
        "product equals infinity word: {}",
        equal(&r.product_word(), &r.infinity_word)?
    );
    println!("{}", ResultJson::from(&r).to_json());

    let rep = verify_main_theorem(&p, 0, &opts)?;
    println!("verdict: {:?}", rep.verdict);
    Ok(())
}
