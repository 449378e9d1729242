use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prmforge::bounds::compare_report;
use prmforge::cache::{cache_get, cache_put, RunKey, CACHE_ENV, SCHEMA_VERSION};
use prmforge::codes::{prm_dual_degree, prm_params, rm_code};
use prmforge::error::Error;
use prmforge::extremal::{
    build_five_quadrics_witness, build_pencil_witness, veronese_image, veronese_line_check,
};
use prmforge::gf::{is_prime, make_field, FieldSpec};
use prmforge::hweights::{er_exhaustive, er_random_search, ErMode, SearchOptions};
use prmforge::poly::{count_affine_zeros, count_projective_zeros, Poly};
use prmforge::pspace::{enumerate_affine_points, enumerate_projective_points, p_k};
use prmforge::verify::run_all;
use prmforge::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Projective,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchModeArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    Pencil,
    FiveQuadrics,
}

#[derive(Parser)]
#[command(name = "prmforge", version, about = "Evaluation codes, subspace searches, and bounds over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Cache directory (overrides PRMFORGE_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe GF(q): characteristic, extension degree, modulus.
    Field {
        #[arg(long)]
        q: u64,
    },
    /// Enumerate the points of P^m(F_q) or A^m(F_q).
    Points {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Space::Projective)]
        space: Space,
    },
    /// Count common zeros of polynomials (text format `c:e0,e1,...`).
    Zeros {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Space::Projective)]
        space: Space,
        /// Polynomial, repeatable.
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
    },
    /// Parameters of RM / PRM codes.
    Code {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "prm")]
        kind: String,
    },
    /// Maximum zero count e_r and generalized Hamming weight d_r = p_m - e_r.
    Ghw {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = SearchModeArg::Exhaustive)]
        mode: SearchModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate every applicable bound at (q, d, m, r).
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: u64,
        /// Include bounds whose hypotheses fail.
        #[arg(long)]
        all: bool,
    },
    /// Build and verify an extremal polynomial system.
    Witness {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_enum, default_value_t = WitnessKind::Pencil)]
        kind: WitnessKind,
    },
    /// Veronese image of P^m and its line count.
    Veronese {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: usize,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
    },
}

/// Factor a prime power q = p^e and build the field.
fn field_from_q(q: u64) -> Result<FieldSpec> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let mut p = q;
    for cand in 2..=q {
        if cand * cand > q {
            break;
        }
        if q.is_multiple_of(cand) {
            p = cand;
            break;
        }
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(q));
    }
    let mut e = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrime(q));
    }
    make_field(p as u32, e, None)
}

fn emit(format: Format, doc: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).unwrap()),
        Format::Csv => print!("{}", to_csv(doc)),
    }
}

fn csv_escape(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn to_csv(doc: &Value) -> String {
    match doc {
        Value::Array(items) if items.iter().all(|i| i.is_object()) && !items.is_empty() => {
            let mut header: Vec<String> = Vec::new();
            for item in items {
                for k in item.as_object().unwrap().keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut out = header.join(",") + "\n";
            for item in items {
                let obj = item.as_object().unwrap();
                let row: Vec<String> = header
                    .iter()
                    .map(|k| obj.get(k).map(csv_escape).unwrap_or_default())
                    .collect();
                out += &(row.join(",") + "\n");
            }
            out
        }
        Value::Object(map) => {
            let mut out = String::from("key,value\n");
            for (k, v) in map {
                out += &format!("{},{}\n", k, csv_escape(v));
            }
            out
        }
        other => other.to_string() + "\n",
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::HypothesisViolated(_)
        | Error::RankOutOfRange { .. }
        | Error::DegreeTooLarge { .. }
        | Error::DegreeDivisible { .. } => 2,
        Error::SizeOverflow { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));

    match cli.cmd {
        Cmd::Field { q } => {
            let f = field_from_q(q)?;
            emit(
                cli.format,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "q": f.q,
                    "p": f.p,
                    "e": f.e,
                    "modulus": f.modulus,
                }),
            );
        }
        Cmd::Points { q, m, space } => {
            let f = field_from_q(q)?;
            let pts: Vec<Vec<u32>> = match space {
                Space::Projective => enumerate_projective_points(&f, m)?
                    .into_iter()
                    .map(|p| p.0)
                    .collect(),
                Space::Affine => enumerate_affine_points(&f, m)?
                    .into_iter()
                    .map(|p| p.0)
                    .collect(),
            };
            emit(
                cli.format,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "q": q, "m": m,
                    "space": format!("{space:?}").to_lowercase(),
                    "count": pts.len(),
                    "points": pts,
                }),
            );
        }
        Cmd::Zeros { q, m, space, polys } => {
            let f = field_from_q(q)?;
            let parsed: Vec<Poly> = polys.iter().map(|s| Poly::parse(s)).collect::<Result<_>>()?;
            let doc = match space {
                Space::Projective => {
                    let (count, zeros) = count_projective_zeros(&parsed, &f, m)?;
                    let zeros: Vec<Vec<u32>> = zeros.into_iter().map(|p| p.0).collect();
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "q": q, "m": m, "count": count, "zeros": zeros,
                    })
                }
                Space::Affine => {
                    let count = count_affine_zeros(&parsed, &f, m)?;
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "q": q, "m": m, "count": count,
                    })
                }
            };
            emit(cli.format, &doc);
        }
        Cmd::Code { q, d, m, kind } => {
            let f = field_from_q(q)?;
            let doc = match kind.as_str() {
                "prm" => {
                    let params = prm_params(&f, d, m)?;
                    let dual_degree = prm_dual_degree(&f, d, m).ok();
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "kind": format!("PRM({d},{m})"),
                        "q": q, "n": params.n, "k": params.k, "dmin": params.dmin,
                        "dual_degree": dual_degree,
                    })
                }
                "rm" => {
                    let code = rm_code(&f, d, m)?;
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "kind": format!("RM({d},{m})"),
                        "q": q, "n": code.n, "k": code.k,
                    })
                }
                other => {
                    return Err(Error::DimensionMismatch(format!(
                        "unknown code kind `{other}` (expected prm or rm)"
                    )))
                }
            };
            emit(cli.format, &doc);
        }
        Cmd::Ghw {
            q,
            d,
            m,
            r,
            mode,
            trials,
            seed,
        } => {
            let mode_name = match mode {
                SearchModeArg::Exhaustive => "exhaustive".to_string(),
                SearchModeArg::Random => format!("random:{trials}"),
            };
            let key = RunKey {
                command: "ghw".into(),
                q: Some(q),
                d: Some(d),
                m: Some(m),
                r: Some(r as u64),
                mode: Some(mode_name.clone()),
                seed: match mode {
                    SearchModeArg::Exhaustive => None,
                    SearchModeArg::Random => Some(seed),
                },
            };
            if let Some(dir) = &cache_dir {
                if let Some(hit) = cache_get(dir, &key)? {
                    emit(cli.format, &hit.payload);
                    return Ok(());
                }
            }
            let f = field_from_q(q)?;
            let result = match mode {
                SearchModeArg::Exhaustive => {
                    er_exhaustive(&f, d, m, r, ErMode::Projective, &SearchOptions::default())?
                }
                SearchModeArg::Random => er_random_search(&f, d, m, r, trials, seed)?,
            };
            let witness: Vec<Vec<u32>> = (0..result.witness.rows)
                .map(|i| result.witness.row(i).to_vec())
                .collect();
            let payload = json!({
                "schema_version": SCHEMA_VERSION,
                "q": q, "d": d, "m": m, "r": r,
                "er": result.value,
                "dr": p_k(q, m as i64) - result.value,
                "mode": mode_name,
                "witness": witness,
            });
            if let Some(dir) = &cache_dir {
                cache_put(dir, &key, payload.clone(), result.elapsed_sec)?;
            }
            emit(cli.format, &payload);
        }
        Cmd::Bounds { q, d, m, r, all } => {
            let cmp = compare_report(q, d, m, r as u128, None);
            let reports: Vec<Value> = cmp
                .reports
                .iter()
                .filter(|b| all || b.applicable)
                .map(|b| serde_json::to_value(b).unwrap())
                .collect();
            emit(
                cli.format,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "q": q, "d": d, "m": m, "r": r,
                    "reports": reports,
                    "verdict": cmp.verdict,
                }),
            );
        }
        Cmd::Witness { q, d, m, r, kind } => {
            let f = field_from_q(q)?;
            let w = match kind {
                WitnessKind::Pencil => build_pencil_witness(&f, d, m, r)?,
                WitnessKind::FiveQuadrics => build_five_quadrics_witness(&f)?,
            };
            let polys: Vec<String> = w.polys.iter().map(|p| p.to_string()).collect();
            emit(
                cli.format,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "q": q,
                    "construction": serde_json::to_value(w.construction).unwrap(),
                    "polys": polys,
                    "claimed_count": w.claimed_count,
                    "verified": true,
                }),
            );
        }
        Cmd::Veronese { q, d, m } => {
            let f = field_from_q(q)?;
            let v = veronese_image(&f, d, m)?;
            let (lines, example) = veronese_line_check(&f, &v);
            emit(
                cli.format,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "q": q, "d": d, "m": m,
                    "ambient_dim": v.ambient_dim,
                    "points": v.points.len(),
                    "lines_found": lines,
                    "example": example.map(|(a, b)| vec![a.0, b.0]),
                }),
            );
        }
        Cmd::Verify { suite } => {
            if suite != "paper" {
                return Err(Error::DimensionMismatch(format!(
                    "unknown suite `{suite}` (expected paper)"
                )));
            }
            let results = run_all();
            let mut failed = 0;
            for r in &results {
                println!(
                    "{} [{:>2}] ({}) {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.index,
                    r.anchor,
                    r.detail
                );
                if !r.passed {
                    failed += 1;
                }
            }
            if failed > 0 {
                eprintln!("{failed} criteria failed");
                std::process::exit(1);
            }
            println!("all {} criteria passed", results.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors must exit 1 (clap defaults to 2, which is reserved for
    // hypothesis violations)
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            e.print().ok();
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
