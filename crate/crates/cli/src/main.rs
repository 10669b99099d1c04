mod cache;
mod error;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knfaces_core::analysis::suites::{run_suite, SuiteName, SuiteOptions};
use knfaces_core::analysis::{
    find_3_face, find_4_face, find_5_face_generic_in, find_5_face_k7, find_5_face_regular_in, FaceCertificate,
    FiveFaceOutcome,
};
use knfaces_core::arrangement::{heavy_crossing_census, Arrangement};
use knfaces_core::cyclotomic::{
    canonical_form, classify_solution, cyclotomic_polynomial, format_poly, sine_product_equal, ArcTuple,
};
use knfaces_core::drawings::{generic_cup_drawing, ConvexDrawing};
use knfaces_core::report::drawing_report;
use serde::Serialize;
use serde_json::json;

use cache::Cache;
use error::CliError;

/// Exact faces of convex rectilinear drawings of complete graphs.
#[derive(Parser)]
#[command(name = "knfaces", version)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Neither read nor write the arrangement cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory.
    #[arg(long, global = true, env = cache::ENV_VAR)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// The regular drawing on N vertices.
    #[arg(long, value_name = "N")]
    regular: Option<u32>,
    /// The cup construction on N vertices.
    #[arg(long, value_name = "N")]
    cup: Option<u32>,
    /// A drawing file (JSON).
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
}

impl Source {
    fn drawing(&self) -> Result<ConvexDrawing, CliError> {
        if let Some(n) = self.regular {
            return Ok(ConvexDrawing::regular(n)?);
        }
        if let Some(n) = self.cup {
            return Ok(generic_cup_drawing(n)?);
        }
        let path = self.file.as_ref().expect("clap requires one source");
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(ConvexDrawing::from_json(&text)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// The finder matching the drawing and size.
    Auto,
    /// Triangle-and-fan procedure for generic drawings.
    Generic,
    /// The seven-triple procedure for K_7.
    K7,
    /// Region procedure for regular drawings.
    Regular,
}

#[derive(Subcommand)]
enum Command {
    /// Crossings, heavy crossings, histogram and a 5-face as JSON.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Include every heavy crossing with its labelled triples.
        #[arg(long)]
        census: bool,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// A k-face certificate (k = 3, 4 or 5).
    FindFace {
        #[command(flatten)]
        source: Source,
        /// Face size.
        #[arg(long, short)]
        k: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Least n whose regular drawing has a k-face.
    SearchA {
        /// Face size; omit for the even sizes 4..=14.
        #[arg(long, short)]
        k: Option<usize>,
        /// Largest n to try.
        #[arg(long, default_value_t = 43)]
        n_max: u32,
    },
    /// Run a verification suite, or replay a certificate.
    Verify {
        /// prop1, thm2, thm3, thm4, prop5, oracle or census.
        #[arg(long, value_parser = parse_suite, required_unless_present = "check_certificate")]
        suite: Option<SuiteName>,
        /// Largest n the suite covers (default depends on the suite).
        #[arg(long)]
        max_n: Option<u32>,
        /// Random drawings per size.
        #[arg(long)]
        trials: Option<u32>,
        /// Seed for the random drawings.
        #[arg(long)]
        seed: Option<u64>,
        /// A certificate produced by find-face or analyze.
        #[arg(long, value_name = "FILE", conflicts_with = "suite")]
        check_certificate: Option<PathBuf>,
    },
    /// Heavy crossings of a regular drawing with solution labels, or the
    /// label of one arc tuple.
    ClassifyHeavy {
        /// The regular drawing on N vertices.
        #[arg(long, value_name = "N")]
        regular: u32,
        /// Six arc counts u,x,v,y,w,z in circular order.
        #[arg(long, value_delimiter = ',')]
        arcs: Option<Vec<u32>>,
        /// Six arc counts U,V,W,X,Y,Z: the two sides of the sine identity.
        #[arg(long, value_delimiter = ',', conflicts_with = "arcs")]
        values: Option<Vec<u32>>,
    },
    /// SVG picture of a drawing.
    Render {
        #[command(flatten)]
        source: Source,
        /// Fill a k-face in a distinct colour.
        #[arg(long, value_name = "K")]
        highlight: Option<usize>,
        /// Fill every bounded face by size.
        #[arg(long)]
        fill_faces: bool,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Inspect or clear the arrangement cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Coefficients of the m-th cyclotomic polynomial.
    Phi {
        /// The index m.
        m: u32,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Location, entry count and size.
    Info,
    /// Remove all entries.
    Clear,
    /// Cache key of a drawing.
    Key {
        #[command(flatten)]
        source: Source,
    },
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    s.parse().map_err(|e: knfaces_core::Error| e.to_string())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

struct Ctx {
    cache: Cache,
    cache_dir: PathBuf,
}

impl Ctx {
    fn arrangement(&self, d: &ConvexDrawing) -> Result<Arrangement, CliError> {
        self.cache.arrangement(d)
    }
}

fn find_face(a: &Arrangement, k: usize, method: Method) -> Result<Option<FaceCertificate>, CliError> {
    let d = a.drawing();
    let cert = match (k, method) {
        (3, Method::Auto) => find_3_face(d)?,
        (4, Method::Auto) => find_4_face(d)?,
        (5, Method::Auto) if d.is_regular() => return five_face(find_5_face_regular_in(a)?),
        (5, Method::Auto) if d.n() == 7 && !a.is_generic() => find_5_face_k7(d)?,
        (5, Method::Auto | Method::Generic) => find_5_face_generic_in(a)?,
        (5, Method::K7) => find_5_face_k7(d)?,
        (5, Method::Regular) => return five_face(find_5_face_regular_in(a)?),
        (3 | 4, _) => return Err(CliError::Usage("--method applies to 5-faces only".into())),
        _ => return Err(CliError::Usage(format!("no constructive finder for {k}-faces; use k = 3, 4 or 5"))),
    };
    Ok(Some(cert))
}

fn five_face(outcome: FiveFaceOutcome) -> Result<Option<FaceCertificate>, CliError> {
    Ok(match outcome {
        FiveFaceOutcome::Face { certificate } => Some(certificate),
        FiveFaceOutcome::ProvenAbsent => None,
    })
}

/// A highlight face: the constructive one for sizes 3-5, else the first
/// face of that size.
fn highlight_face(a: &Arrangement, k: usize) -> Result<Option<FaceCertificate>, CliError> {
    if (3..=5).contains(&k) {
        match find_face(a, k, Method::Auto) {
            Ok(c) => return Ok(c),
            Err(CliError::Core(knfaces_core::Error::Precondition(_))) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(a.bounded_faces().find(|&f| a.face_len(f) == k).map(|f| FaceCertificate::from_face(a, f)))
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(cache::default_dir);
    let ctx = Ctx {
        cache: if cli.no_cache { Cache::disabled() } else { Cache::new(cache_dir.clone()) },
        cache_dir,
    };
    match cli.command {
        Command::Analyze { source, census, out } => {
            let a = ctx.arrangement(&source.drawing()?)?;
            emit(&to_json(&drawing_report(&a, census)?), out.as_deref())
        }
        Command::FindFace { source, k, method, out } => {
            let a = ctx.arrangement(&source.drawing()?)?;
            match find_face(&a, k, method)? {
                Some(cert) => {
                    cert.validate_in(&a)?;
                    emit(&to_json(&cert), out.as_deref())
                }
                None => emit(&to_json(&json!({ "status": "proven_absent", "k": k, "n": a.n() })), out.as_deref()),
            }
        }
        Command::SearchA { k, n_max } => {
            let ks: Vec<usize> = match k {
                Some(k) if k < 3 => return Err(CliError::Usage(format!("face sizes start at 3, got {k}"))),
                Some(k) => vec![k],
                None => (4..=14).step_by(2).collect(),
            };
            let mut found: Vec<Option<u32>> = vec![None; ks.len()];
            for n in 1..=n_max {
                if found.iter().all(Option::is_some) {
                    break;
                }
                let h = ctx.arrangement(&ConvexDrawing::regular(n)?)?.histogram();
                for (slot, k) in found.iter_mut().zip(&ks) {
                    if slot.is_none() && h.contains_key(k) {
                        *slot = Some(n);
                    }
                }
            }
            let rows: Vec<_> = ks.iter().zip(&found).map(|(k, n)| json!({ "k": k, "n": n })).collect();
            emit(&to_json(&json!({ "n_max": n_max, "results": rows })), None)
        }
        Command::Verify { suite, max_n, trials, seed, check_certificate } => {
            if let Some(path) = check_certificate {
                let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                let cert: FaceCertificate =
                    serde_json::from_str(&text).map_err(|e| CliError::Core(knfaces_core::Error::Json(e)))?;
                let a = ctx.arrangement(&cert.drawing)?;
                let face = cert.validate_in(&a)?;
                return emit(&to_json(&json!({ "valid": true, "k": cert.k, "face": face })), None);
            }
            let suite = suite.expect("clap requires a suite");
            let mut opts = SuiteOptions::for_suite(suite);
            opts.max_n = max_n.unwrap_or(opts.max_n);
            opts.trials = trials.unwrap_or(opts.trials);
            opts.seed = seed.unwrap_or(opts.seed);
            let report = run_suite(suite, &opts)?;
            emit(&to_json(&report), None)?;
            if report.passed {
                Ok(())
            } else {
                let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
                Err(CliError::Failed(names.join("; ")))
            }
        }
        Command::ClassifyHeavy { regular, arcs, values } => {
            let six = |v: Vec<u32>| -> Result<[u32; 6], CliError> {
                let len = v.len();
                v.try_into().map_err(|_| CliError::Usage(format!("expected six arc counts, got {len}")))
            };
            let tuple = match (arcs, values) {
                (Some(a), _) => Some(ArcTuple::new(regular, six(a)?)?),
                (None, Some(v)) => {
                    let [u, v, w, x, y, z] = six(v)?;
                    Some(ArcTuple::from_triples(regular, [u, v, w], [x, y, z])?)
                }
                (None, None) => None,
            };
            if let Some(t) = tuple {
                let v = json!({
                    "tuple": t,
                    "canonical": canonical_form(&t),
                    "sine_product_equal": sine_product_equal(&t),
                    "class": classify_solution(&t),
                });
                return emit(&to_json(&v), None);
            }
            let a = ctx.arrangement(&ConvexDrawing::regular(regular)?)?;
            emit(&to_json(&heavy_crossing_census(&a)?), None)
        }
        Command::Render { source, highlight, fill_faces, out } => {
            let a = ctx.arrangement(&source.drawing()?)?;
            let highlight = match highlight {
                Some(k) => Some(
                    highlight_face(&a, k)?
                        .ok_or_else(|| CliError::Usage(format!("the drawing has no {k}-face to highlight")))?,
                ),
                None => None,
            };
            let svg = render::render_svg(&a, &render::RenderOptions { fill_faces, highlight })?;
            emit(&svg, out.as_deref())
        }
        Command::Cache { action } => match action {
            CacheAction::Info => emit(&to_json(&cache::info(&ctx.cache_dir)), None),
            CacheAction::Clear => {
                let removed = cache::clear(&ctx.cache_dir)?;
                emit(&to_json(&json!({ "removed": removed })), None)
            }
            CacheAction::Key { source } => emit(&format!("{}\n", cache::key(&source.drawing()?)), None),
        },
        Command::Phi { m } => {
            if m == 0 {
                return Err(CliError::Usage("m must be positive".into()));
            }
            let c = cyclotomic_polynomial(m);
            let coefficients: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            emit(&to_json(&json!({ "m": m, "coefficients": coefficients, "polynomial": format_poly(&c) })), None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("knfaces: {e}");
            e.exit_code()
        }
    }
}
