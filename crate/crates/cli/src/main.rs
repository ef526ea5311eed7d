//! `multstrata`: command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check disagrees or fails, 2 on
//! usage and input errors.

mod render;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multstrata::{
    band_contains, classify_at, default_frames, destabilize, gen_corpus, l_squared,
    multiplicity_at, parse_form, q_contains, separation_threshold, threshold_report, torus_index,
    verify_theorem_main, worst_frame_search, HomogeneousForm, NChoice, ProjPoint, RationalVector,
    StratumLabel,
};
use multstrata::classifier::BandCheck;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "multstrata", version, about = "Exact GIT instability data and multiplicity classes of hypersurfaces")]
struct Cli {
    /// Force JSON output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Force human-readable output.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Form file (`-` for stdin).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of the hypersurface at a point.
    Mult {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated homogeneous coordinates; defaults to [1:0:…:0].
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Torus instability certificate (nearest point, δ², λ).
    Index {
        #[command(flatten)]
        input: InputArg,
    },
    /// Multiply by (x_1⋯x_r)^N and print the resulting form.
    Destab {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "N")]
        n: u32,
    },
    /// Separation threshold N_{r,d} and per-pair minima.
    Threshold {
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'd')]
        d: u32,
    },
    /// Test a rational point of the weight plane against the bands.
    Bands {
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'd')]
        d: u32,
        /// `auto` or an integer.
        #[arg(long = "N", default_value = "auto")]
        n: NChoice,
        /// Comma-separated rational coordinates y_0,…,y_r.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Restrict to one band.
        #[arg(long = "m")]
        m: Option<u32>,
    },
    /// Multiplicity at a point through band membership of the destabilized form.
    Classify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long = "N", default_value = "auto")]
        n: NChoice,
    },
    /// Check band classification against direct multiplicity on a corpus.
    Verify {
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long = "N", default_value = "auto")]
        n: NChoice,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Emit corpus forms with a prescribed multiplicity at [1:0:…:0].
    Gen {
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'd')]
        d: u32,
        /// Multiplicity; all of 0..=d when omitted.
        #[arg(long = "m")]
        m: Option<u32>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write one file per form into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-sided multiplicity bound from a frame-search stratum label.
    Bound {
        #[command(flatten)]
        input: InputArg,
        /// Candidate point (repeatable); the first one seeds the frame family.
        #[arg(long, required = true, allow_hyphen_values = true)]
        point: Vec<String>,
        #[arg(long, default_value_t = 1)]
        budget: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Json,
    Text,
}

fn read_form(input: &InputArg) -> Result<HomogeneousForm, Failure> {
    let text = if input.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input.input)
            .map_err(|e| Failure::Usage(format!("{}: {e}", input.input.display())))?
    };
    Ok(parse_form(&text)?)
}

fn parse_point(s: &str) -> Result<ProjPoint, Failure> {
    Ok(ProjPoint::new(RationalVector::parse_csv(s)?.0)?)
}

fn point_or_origin(p: &Option<String>, r: usize) -> Result<ProjPoint, Failure> {
    match p {
        Some(s) => parse_point(s),
        None => Ok(ProjPoint::origin(r)),
    }
}

fn emit<T: Serialize>(value: &T) -> CmdResult {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct MultReport {
    point: ProjPoint,
    m: u32,
}

#[derive(Serialize)]
struct BandsReport {
    r: usize,
    d: u32,
    #[serde(rename = "N")]
    n: u32,
    y: RationalVector,
    #[serde(with = "multstrata::rational::serde_q")]
    dist_sq: multstrata::Q,
    in_q: bool,
    results: Vec<BandCheck>,
}

#[derive(Serialize)]
struct BoundReport {
    label: StratumLabel,
    frame: String,
    #[serde(flatten)]
    result: multstrata::BoundCheckResult,
}

fn run(cli: Cli) -> CmdResult {
    let mode = |default: Mode| {
        if cli.json {
            Mode::Json
        } else if cli.text {
            Mode::Text
        } else {
            default
        }
    };
    match &cli.command {
        Command::Mult { input, point } => {
            let f = read_form(input)?;
            let p = point_or_origin(point, f.r())?;
            let m = multiplicity_at(&f, &p)?;
            match mode(Mode::Text) {
                Mode::Json => emit(&MultReport { point: p, m }),
                Mode::Text => {
                    println!("{m}");
                    Ok(())
                }
            }
        }
        Command::Index { input } => {
            let f = read_form(input)?;
            let cert = torus_index(&f);
            match mode(Mode::Json) {
                Mode::Json => emit(&cert),
                Mode::Text => {
                    print!("{}", render::certificate(&cert));
                    Ok(())
                }
            }
        }
        Command::Destab { input, n } => {
            let f = read_form(input)?;
            let g = destabilize(&f, *n)?;
            match mode(Mode::Text) {
                Mode::Json => emit(&g),
                Mode::Text => {
                    print!("{g}");
                    Ok(())
                }
            }
        }
        Command::Threshold { r, d } => {
            let t = threshold_report(*r, *d)?;
            match mode(Mode::Text) {
                Mode::Json => emit(&t),
                Mode::Text => {
                    println!("{}", t.threshold);
                    for p in &t.pairs {
                        println!("pair m={} m'={} min_N={}", p.m, p.m_prime, p.min_n);
                    }
                    Ok(())
                }
            }
        }
        Command::Bands { r, d, n, point, m } => {
            let n = match n {
                NChoice::Auto => separation_threshold(*r, *d)?,
                NChoice::Fixed(n) => *n,
            };
            let y = RationalVector::parse_csv(point)?;
            let ms: Vec<u32> = match m {
                Some(m) => vec![*m],
                None => (0..=*d).collect(),
            };
            let mut results = Vec::new();
            for m in ms {
                results.push(BandCheck {
                    m,
                    l_sq: l_squared(*r, *d, n, m)?,
                    contained: band_contains(&y, *r, *d, n, m)?,
                });
            }
            let xi = multstrata::barycenter(*r, d + *r as u32 * n);
            let report = BandsReport {
                r: *r,
                d: *d,
                n,
                dist_sq: xi.dist_sq(&y),
                in_q: q_contains(&y, *r, *d, n)?,
                y,
                results,
            };
            match mode(Mode::Json) {
                Mode::Json => emit(&report),
                Mode::Text => {
                    println!("y = {}  |ξ−y|² = {}  in Q: {}", report.y, report.dist_sq, report.in_q);
                    for b in &report.results {
                        println!("m={}  l²={}  contained={}", b.m, b.l_sq, b.contained);
                    }
                    Ok(())
                }
            }
        }
        Command::Classify { input, point, n } => {
            let f = read_form(input)?;
            let p = point_or_origin(point, f.r())?;
            let rep = classify_at(&f, &p, *n)?;
            match mode(Mode::Json) {
                Mode::Json => emit(&rep)?,
                Mode::Text => print!("{}", render::classification(&rep)),
            }
            if rep.agreed {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Verify { r, d, n, count, seed, jobs } => {
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(*j);
            }
            let pool = pool.build()?;
            let summary = pool.install(|| verify_theorem_main(*r, *d, *n, *count, *seed))?;
            match mode(Mode::Json) {
                Mode::Json => emit(&summary)?,
                Mode::Text => print!("{}", render::verify(&summary)),
            }
            if summary.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Gen { r, d, m, count, seed, out } => {
            let ms: Vec<u32> = match m {
                Some(m) => vec![*m],
                None => (0..=*d).collect(),
            };
            let mut all = Vec::new();
            for m in ms {
                for (i, f) in gen_corpus(*r, *d, m, *count, *seed)?.into_iter().enumerate() {
                    all.push((m, i, f));
                }
            }
            if let Some(dir) = out {
                fs::create_dir_all(dir)?;
                for (m, i, f) in &all {
                    let path = dir.join(format!("m{m}_{i:03}.form"));
                    fs::write(&path, format!("# multiplicity {m} at [1:0:…:0]\n{f}"))?;
                }
                println!("wrote {} forms to {}", all.len(), dir.display());
                return Ok(());
            }
            match mode(Mode::Text) {
                Mode::Json => emit(&all.iter().map(|(_, _, f)| f).collect::<Vec<_>>()),
                Mode::Text => {
                    for (m, i, f) in &all {
                        println!("# form {i}, multiplicity {m} at [1:0:…:0]");
                        println!("{f}");
                    }
                    Ok(())
                }
            }
        }
        Command::Bound { input, point, budget } => {
            let f = read_form(input)?;
            let points = point.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
            let frames = default_frames(f.r(), &points[0], *budget)?;
            let (frame, cert) = worst_frame_search(&f, &frames)?;
            let Some(label) = StratumLabel::from_certificate(&cert) else {
                eprintln!("no label: every frame in the family gives a torus-semistable form");
                return Err(Failure::Check);
            };
            let result = multstrata::bound_check(&f, &label, &points)?;
            let within = result.within;
            let report = BoundReport { label, frame: frame.to_string(), result };
            match mode(Mode::Json) {
                Mode::Json => emit(&report)?,
                Mode::Text => print!("{}", render::bound(&report.label, &report.result)),
            }
            if within {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
