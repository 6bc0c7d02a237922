//! Lifts the loop around -2 for z^3 - 3z and inspects the geometric braid.

use braidmono::loops::{choose_basepoint, geometric_basis};
use braidmono::tracker::{fiber, track_fiber};
use braidmono::{Polynomial, TrackOptions};

fn main() -> braidmono::Result<()> {
    let p = Polynomial::z_n_minus_nz(3);
    let crit = p.branch_locus()?;
    let w0 = choose_basepoint(&crit.branch_points, 0)?;
    let basis = geometric_basis(&crit.branch_points, w0)?;
    let f0 = fiber(&p, w0, 0.0, 1e-6)?;
    println!("basepoint {w0}, fiber {f0:?}");

    let opts = TrackOptions::default();
    for (j, lp) in basis.loops.iter().enumerate() {
        let tr = track_fiber(&p, lp, &f0, &opts)?;
        let perm = tr.end_permutation(opts.match_tol)?;
        println!(
            "loop {} around {:?}: {} samples, residual {:.1e}, min separation {:.3}, permutation [{perm}]",
            j + 1,
            lp.target,
            tr.sample_count(),
            tr.max_residual(),
            tr.min_separation()
        );
    }

    // Two strands of z^2 - 2z around its only branch point make one half-twist.
    let q = Polynomial::from_real(&[0.0, -2.0, 1.0])?;
    let bq = q.branch_locus()?.branch_points;
    let lp = &geometric_basis(&bq, w0)?.loops[0];
    let tr = track_fiber(&q, lp, &fiber(&q, w0, 0.0, 1e-6)?, &opts)?;
    let (nb, res) = tr.half_twist_count(0, 1)?;
    println!("z^2 - 2z: {nb} half-twist(s), residual {res:.1e}");
    let twice = track_fiber(&q, &lp.concat(lp), &fiber(&q, w0, 0.0, 1e-6)?, &opts)?;
    println!(
        "traversed twice: {} half-twists",
        twice.half_twist_count(0, 1)?.0
    );
    Ok(())
}
