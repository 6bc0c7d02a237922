//! Exact braid algebra: normal forms, equality, the Artin action.

use braidmono::braid::{
    artin_action_trivial, artin_images, delta, equal, full_twist, garside_nf, paper_generator,
};
use braidmono::BraidWord;

fn main() -> braidmono::Result<()> {
    let w = BraidWord::parse(3, "a1 a2 a1")?;
    let v: BraidWord = "2 1 2".parse()?;
    println!("[{}] = [{}]: {}", w.pretty(), v.pretty(), equal(&w, &v)?);
    println!("normal form of Delta_3: {}", garside_nf(&delta(3)));
    println!("normal form of Delta_4^2: {}", garside_nf(&full_twist(4)));
    println!(
        "normal form of Delta_3^-1: {}",
        garside_nf(&delta(3).inverse())
    );

    let x = BraidWord::new(4, vec![1, -3, 2, 2, -1, 3])?;
    println!(
        "[{x}]: permutation [{}], exponent sum {}",
        x.permutation(),
        x.exponent_sum()
    );
    println!("Artin images of [{x}]:");
    for (k, img) in artin_images(&x).iter().enumerate() {
        println!("  x{} -> {img:?}", k + 1);
    }
    let commutator = BraidWord::new(5, vec![1, 3, -1, -3])?;
    println!(
        "[{commutator}] acts trivially: {}",
        artin_action_trivial(&commutator)
    );

    for j in 1..4 {
        let b = paper_generator(4, j)?;
        println!("b~{j} = {}", b.pretty());
    }
    Ok(())
}
