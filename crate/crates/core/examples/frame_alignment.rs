//! Searches for one braid conjugating the computed monodromy words onto the
//! words b~_j = (a_{j-1}...a_1)^-1 a_j (a_{j-1}...a_1).

use braidmono::braid::{equal, paper_generator, simultaneous_conjugacy_search};
use braidmono::engine::braid_monodromy;
use braidmono::{BraidWord, MonodromyOptions, Polynomial};

fn main() -> braidmono::Result<()> {
    for n in 3..=4 {
        let r = braid_monodromy(
            &Polynomial::z_n_minus_nz(n),
            0,
            &MonodromyOptions::default(),
        )?;
        let ws: Vec<BraidWord> = r.entries.iter().map(|e| e.word.clone()).collect();
        let targets = (1..n)
            .map(|j| paper_generator(n, j))
            .collect::<braidmono::Result<Vec<_>>>()?;
        println!("n = {n}");
        for (w, t) in ws.iter().zip(&targets) {
            println!("  {:<24} target {}", w.pretty(), t.pretty());
        }
        match simultaneous_conjugacy_search(&ws, &targets, 8)? {
            Some(g) => {
                println!("  conjugator g = {}", g.pretty());
                for (w, t) in ws.iter().zip(&targets) {
                    assert!(equal(&w.conjugate_by(&g)?, t)?);
                }
            }
            None => println!("  no conjugator of length <= 8"),
        }
    }
    Ok(())
}
