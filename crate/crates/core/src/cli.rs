//! Command-line front end. [`run`] is the whole program; the binary only
//! wires it to the process streams.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::braid::{equal, garside_nf, BraidWord};
use crate::engine::{
    braid_monodromy, monodromy_group, verify_main_theorem, MonodromyOptions, Setup, Verdict,
};
use crate::error::{Error, Result};
use crate::extract::crossings_with;
use crate::io::{format_complex, parse_coefficients, parse_track_dump, track_dump, ResultJson};
use crate::poly::Polynomial;
use crate::svg::{render_samples_svg, render_track_svg, render_word_svg};
use crate::tracker::fiber;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const SEED_ENV: &str = "BRAIDMONO_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "braidmono",
    version,
    about = "Braid monodromy of complex polynomials"
)]
struct Cli {
    /// RNG seed; defaults to $BRAIDMONO_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true)]
    newton_tol: Option<f64>,
    #[arg(long, global = true)]
    collision_tol: Option<f64>,
    #[arg(long, global = true)]
    cluster_tol: Option<f64>,
    #[arg(long, global = true)]
    sep_tol: Option<f64>,
    /// Fixed projection angle in radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Track loops concurrently.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PolyArg {
    /// Ascending coefficients, e.g. "0 -3 0 1" for z^3 - 3z; complex as "re+imi".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical points, branch locus and genericity.
    Critical(PolyArg),
    /// Braid monodromy words for every branch point.
    Monodromy {
        #[command(flatten)]
        poly: PolyArg,
        /// Write one track dump per loop into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Permutation monodromy group.
    Group(PolyArg),
    /// Necessary conditions for the braid monodromy group to be everything.
    Verify(PolyArg),
    /// Word of the loop around infinity.
    Infinity(PolyArg),
    /// Word algebra; words come from the arguments or, one per line, stdin.
    Braid {
        #[arg(value_enum)]
        op: BraidOp,
        #[arg(allow_hyphen_values = true)]
        words: Vec<String>,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// SVG diagram of a word, of a loop's track, or of a track dump.
    Render {
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// 1-based loop index, or 0 for the loop around infinity.
        #[arg(long = "loop", default_value_t = 1)]
        loop_index: usize,
        #[arg(long)]
        track: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BraidOp {
    Nf,
    Eq,
    Perm,
    Expsum,
}

/// Resolved configuration shared by the pipeline commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub format: Format,
    pub options: MonodromyOptions,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        let seed = match cli.seed {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{SEED_ENV}={v} is not an integer")))?,
                Err(_) => 0,
            },
        };
        let mut options = MonodromyOptions::default();
        for (name, v) in [
            ("newton-tol", cli.newton_tol),
            ("collision-tol", cli.collision_tol),
            ("cluster-tol", cli.cluster_tol),
            ("sep-tol", cli.sep_tol),
        ] {
            if let Some(x) = v {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(Error::Parse(format!("--{name} must be positive")));
                }
            }
        }
        if let Some(x) = cli.newton_tol {
            options.track.newton_tol = x;
        }
        if let Some(x) = cli.collision_tol {
            options.track.collision_tol = x;
        }
        options.cluster_tol = cli.cluster_tol;
        options.sep_tol = cli.sep_tol;
        options.projection_angle = cli.theta;
        options.parallel = cli.parallel;
        Ok(Self {
            seed,
            format: cli.format,
            options,
        })
    }
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Run(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(Error::Parse(e.to_string()))
    }
}

/// Runs the program on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString>,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(hoist_braid_options(argv)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Run(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// Braid words such as `-1 2` look like flags, so their positional takes
/// hyphenated values and would swallow trailing options. Moves known options
/// in front of the words.
fn hoist_braid_options(argv: Vec<std::ffi::OsString>) -> Vec<std::ffi::OsString> {
    const WITH_VALUE: [&str; 8] = [
        "--strands",
        "--seed",
        "--format",
        "--newton-tol",
        "--collision-tol",
        "--cluster-tol",
        "--sep-tol",
        "--theta",
    ];
    let Some(at) = argv.iter().position(|a| a == "braid") else {
        return argv;
    };
    let split = (at + 2).min(argv.len());
    let (mut head, tail) = (argv[..split].to_vec(), &argv[split..]);
    let mut words = Vec::new();
    let mut i = 0;
    while i < tail.len() {
        let a = tail[i].to_string_lossy();
        let name = a.split('=').next().unwrap_or("");
        if WITH_VALUE.contains(&name) && !a.contains('=') && i + 1 < tail.len() {
            head.push(tail[i].clone());
            head.push(tail[i + 1].clone());
            i += 2;
            continue;
        }
        if WITH_VALUE.contains(&name) || a == "--parallel" || a == "--help" || a == "-h" {
            head.push(tail[i].clone());
        } else {
            words.push(tail[i].clone());
        }
        i += 1;
    }
    head.extend(words);
    head
}

fn parse_poly(text: &str) -> std::result::Result<Polynomial, Failure> {
    let coeffs = parse_coefficients(text)?;
    Polynomial::new(coeffs).map_err(|e| Failure::Usage(e.to_string()))
}

fn words_from(args: &[String], stdin: &mut dyn Read) -> std::result::Result<Vec<String>, Failure> {
    if !args.is_empty() {
        return Ok(args.to_vec());
    }
    let mut text = String::new();
    stdin.read_to_string(&mut text)?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect())
}

fn parse_words(texts: &[String], strands: Option<usize>) -> Result<Vec<BraidWord>> {
    let inferred: Vec<BraidWord> = texts.iter().map(|t| t.parse()).collect::<Result<_>>()?;
    let n = strands.unwrap_or_else(|| inferred.iter().map(BraidWord::strands).max().unwrap_or(2));
    texts.iter().map(|t| BraidWord::parse(n, t)).collect()
}

fn write_out(
    path: &Option<PathBuf>,
    text: &str,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(
    cli: &Cli,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let cfg = RunConfig::from_cli(cli)?;
    let opts = &cfg.options;
    let json = cfg.format == Format::Json;
    match &cli.command {
        Command::Critical(a) => {
            let p = parse_poly(&a.poly)?;
            let crit = match opts.cluster_tol {
                Some(t) => p.branch_locus_with(t)?,
                None => p.branch_locus()?,
            };
            let generic = p.is_generic_with(crit.cluster_tol)?;
            if json {
                let pairs = |v: &[num_complex::Complex64]| {
                    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()
                };
                let doc = json!({
                    "critical_points": pairs(&crit.critical_points),
                    "branch_points": pairs(&crit.branch_points),
                    "multiplicities": crit.multiplicities,
                    "generic": generic,
                });
                writeln!(out, "{doc}")?;
            } else {
                let cps: Vec<String> = crit
                    .critical_points
                    .iter()
                    .map(|&z| format_complex(z))
                    .collect();
                writeln!(out, "critical_points: {}", cps.join(" "))?;
                for (b, m) in crit.branch_points.iter().zip(&crit.multiplicities) {
                    writeln!(out, "branch_point: {} multiplicity={m}", format_complex(*b))?;
                }
                writeln!(out, "generic: {generic}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Monodromy { poly, dump_dir } => {
            let p = parse_poly(&poly.poly)?;
            let r = braid_monodromy(&p, cfg.seed, opts)?;
            if let Some(dir) = dump_dir {
                std::fs::create_dir_all(dir)?;
                let setup = Setup::new(&p, cfg.seed, opts)?;
                let f0 = fiber(
                    &setup.polynomial,
                    setup.system.basepoint,
                    r.projection_angle,
                    opts.track.collision_tol,
                )?;
                let tracks = setup.lift(&f0, opts)?;
                let last = tracks.len() - 1;
                for (i, tr) in tracks.iter().enumerate() {
                    let name = if i == last {
                        "infinity.txt".to_string()
                    } else {
                        format!("loop{}.txt", i + 1)
                    };
                    std::fs::write(dir.join(name), track_dump(tr))?;
                }
            }
            if json {
                writeln!(out, "{}", ResultJson::from(&r).to_json())?;
            } else {
                writeln!(out, "basepoint: {}", format_complex(r.basepoint))?;
                writeln!(out, "projection_angle: {}", r.projection_angle)?;
                let f: Vec<String> = r.fiber.iter().map(|&z| format_complex(z)).collect();
                writeln!(out, "fiber: {}", f.join(" "))?;
                for (i, e) in r.entries.iter().enumerate() {
                    writeln!(
                        out,
                        "loop {}: branch={} multiplicity={} word=[{}] perm=[{}]",
                        i + 1,
                        format_complex(e.branch_point),
                        e.multiplicity,
                        e.word,
                        e.permutation
                    )?;
                }
                writeln!(out, "infinity: [{}]", r.infinity_word)?;
                writeln!(
                    out,
                    "group: order={} full={}",
                    r.group_report.order, r.group_report.is_full_symmetric
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Group(a) => {
            let p = parse_poly(&a.poly)?;
            let g = monodromy_group(&p, cfg.seed, opts)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&g).expect("plain data"))?;
            } else {
                writeln!(out, "order={} full={}", g.order, g.is_full_symmetric)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let p = parse_poly(&a.poly)?;
            let rep = verify_main_theorem(&p, cfg.seed, opts)?;
            if json {
                let doc = json!({
                    "hypothesis_generic": rep.hypothesis_generic,
                    "per_braid": rep.per_braid,
                    "composite_identity": rep.composite_identity,
                    "group_full_symmetric": rep.group_full_symmetric,
                    "frame_alignment_attempted": rep.frame_alignment_attempted,
                    "frame_alignment": rep.frame_alignment.as_ref().map(|g| g.letters().to_vec()),
                    "verdict": rep.verdict,
                });
                writeln!(out, "{doc}")?;
            } else {
                writeln!(out, "hypothesis_generic: {}", rep.hypothesis_generic)?;
                for (i, b) in rep.per_braid.iter().enumerate() {
                    writeln!(
                        out,
                        "braid {}: exponent_sum={} transposition={}",
                        i + 1,
                        b.exponent_sum,
                        b.is_transposition
                    )?;
                }
                writeln!(out, "composite_identity: {}", rep.composite_identity)?;
                writeln!(out, "group_full_symmetric: {}", rep.group_full_symmetric)?;
                match (&rep.frame_alignment, rep.frame_alignment_attempted) {
                    (Some(g), _) => writeln!(out, "frame_alignment: [{g}]")?,
                    (None, true) => writeln!(out, "frame_alignment: none found")?,
                    (None, false) => writeln!(out, "frame_alignment: not attempted")?,
                }
                writeln!(out, "verdict: {:?}", rep.verdict)?;
            }
            Ok(match rep.verdict {
                Verdict::ConsistentWithTheorem => EXIT_OK,
                Verdict::HypothesisFails => EXIT_HYPOTHESIS,
                Verdict::CheckFailed => EXIT_ERROR,
            })
        }
        Command::Infinity(a) => {
            let p = parse_poly(&a.poly)?;
            let r = braid_monodromy(&p, cfg.seed, opts)?;
            if json {
                writeln!(out, "{}", json!(r.infinity_word.letters()))?;
            } else {
                writeln!(out, "{}", r.infinity_word)?;
            }
            Ok(EXIT_OK)
        }
        Command::Braid { op, words, strands } => {
            let texts = words_from(words, stdin)?;
            let ws = parse_words(&texts, *strands)?;
            match op {
                BraidOp::Nf => {
                    for w in &ws {
                        writeln!(out, "{}", garside_nf(w))?;
                    }
                }
                BraidOp::Eq => {
                    let [a, b] = ws.as_slice() else {
                        return Err(Failure::Usage("eq needs exactly two words".into()));
                    };
                    writeln!(out, "{}", if equal(a, b)? { "equal" } else { "not equal" })?;
                }
                BraidOp::Perm => {
                    for w in &ws {
                        writeln!(out, "{}", w.permutation())?;
                    }
                }
                BraidOp::Expsum => {
                    for w in &ws {
                        writeln!(out, "{}", w.exponent_sum())?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Render {
            word,
            strands,
            poly,
            loop_index,
            track,
            out: path,
        } => {
            let svg = match (word, poly, track) {
                (Some(w), None, None) => {
                    let parsed = parse_words(std::slice::from_ref(w), *strands)?;
                    render_word_svg(&parsed[0])
                }
                (None, Some(ptext), None) => {
                    let p = parse_poly(ptext)?;
                    let r = braid_monodromy(&p, cfg.seed, opts)?;
                    let setup = Setup::new(&p, cfg.seed, opts)?;
                    let loops = setup.all_loops();
                    let idx = if *loop_index == 0 {
                        loops.len() - 1
                    } else {
                        loop_index - 1
                    };
                    if idx >= loops.len() {
                        return Err(Failure::Usage(format!(
                            "--loop must be between 0 and {}",
                            loops.len() - 1
                        )));
                    }
                    let f0 = fiber(
                        &setup.polynomial,
                        setup.system.basepoint,
                        r.projection_angle,
                        opts.track.collision_tol,
                    )?;
                    let tr = crate::tracker::track_fiber(
                        &setup.polynomial,
                        loops[idx],
                        &f0,
                        &opts.track,
                    )?;
                    let ev = crossings_with(&tr, r.projection_angle, opts.sep_tol)?;
                    render_track_svg(&tr, r.projection_angle, &ev)
                }
                (None, None, Some(file)) => {
                    let text = std::fs::read_to_string(file)?;
                    let (times, strands) = parse_track_dump(&text)?;
                    render_samples_svg(&times, &strands, opts.projection_angle.unwrap_or(0.0), &[])
                }
                _ => {
                    return Err(Failure::Usage(
                        "render needs exactly one of --word, --poly or --track".into(),
                    ))
                }
            };
            write_out(path, &svg, out)?;
            Ok(EXIT_OK)
        }
    }
}
