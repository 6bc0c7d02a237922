//! Writes braid diagrams for a word and for a lifted loop.
//!
//! cargo run --example render_svg -- /tmp/braids

use std::path::PathBuf;

use braidmono::engine::{braid_monodromy, Setup};
use braidmono::extract::crossings;
use braidmono::svg::{render_track_svg, render_word_svg};
use braidmono::tracker::fiber;
use braidmono::{MonodromyOptions, Polynomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;

    let p = Polynomial::z_n_minus_nz(4);
    let opts = MonodromyOptions::default();
    let r = braid_monodromy(&p, 0, &opts)?;
    std::fs::write(
        dir.join("infinity_word.svg"),
        render_word_svg(&r.infinity_word),
    )?;

    let setup = Setup::new(&p, 0, &opts)?;
    let f0 = fiber(
        &setup.polynomial,
        setup.system.basepoint,
        r.projection_angle,
        1e-6,
    )?;
    let tracks = setup.lift(&f0, &opts)?;
    for (j, tr) in tracks.iter().enumerate() {
        let ev = crossings(tr, r.projection_angle)?;
        let path = dir.join(format!("track{}.svg", j + 1));
        std::fs::write(&path, render_track_svg(tr, r.projection_angle, &ev))?;
        println!("{} ({} crossings)", path.display(), ev.len());
    }
    Ok(())
}
