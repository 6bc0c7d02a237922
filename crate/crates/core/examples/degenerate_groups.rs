//! Monodromy groups of non-generic polynomials.

use braidmono::engine::{monodromy_group, verify_main_theorem};
use braidmono::{MonodromyOptions, Polynomial};

fn main() -> braidmono::Result<()> {
    let opts = MonodromyOptions::default();
    for n in 2..=6 {
        let g = monodromy_group(&Polynomial::monomial(n), 0, &opts)?;
        println!("z^{n}: order {}, cyclic {}", g.order, g.is_cyclic);
    }
    let p = Polynomial::from_real(&[0.0, 0.0, -1.0, 0.0, 1.0])?;
    let g = monodromy_group(&p, 0, &opts)?;
    println!(
        "z^4 - z^2: order {}, transitive {}, full {}",
        g.order, g.is_transitive, g.is_full_symmetric
    );
    let rep = verify_main_theorem(&p, 0, &opts)?;
    for (e, b) in rep.monodromy.entries.iter().zip(&rep.per_braid) {
        println!(
            "  over {:.3} (x{}): {}  exponent sum {}",
            e.branch_point,
            e.multiplicity,
            e.word.pretty(),
            b.exponent_sum
        );
    }
    println!("  verdict {:?}", rep.verdict);
    Ok(())
}
