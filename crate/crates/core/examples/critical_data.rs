//! Critical points, branch locus and genericity for a few polynomials.

use braidmono::io::parse_polynomial;

fn main() -> braidmono::Result<()> {
    for text in [
        "0 -3 0 1",
        "0 0 -1 0 1",
        "0 0 0 0 0 1",
        "0 -5 0 0 0 1",
        "1+i 0.5 -2 1",
    ] {
        let p = parse_polynomial(text)?;
        let crit = p.branch_locus()?;
        println!("P with coefficients [{text}], degree {}", p.degree());
        let cps: Vec<String> = crit
            .critical_points
            .iter()
            .map(|z| format!("{z:.6}"))
            .collect();
        println!("  critical points: {}", cps.join(", "));
        for (b, m) in crit.branch_points.iter().zip(&crit.multiplicities) {
            println!("  branch point {b:.6} (x{m})");
        }
        println!("  generic: {}", p.is_generic()?);
    }
    Ok(())
}
