use std::path::PathBuf;
use std::time::Instant;

use bruhat_core::geocoeff::{evaluate_formula, fit_mu, hypersimplex_ehrhart};
use bruhat_core::orbitpoly::{face, interval_size_lattice, orbit_face_count, parabolic_index};
use bruhat_core::rootsys::Subset;
use bruhat_core::volume::{volume_polynomial, VolumeTable};
use bruhat_core::weyl::{descents, interval_size, sigma_reflection, theta};
use bruhat_core::{Budget, DominantCoweight, Family, RootSystemData, RootSystemId};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache;
use crate::codec::{self, SCHEMA};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "bruhat", version, about = "Sizes of lower Bruhat intervals in affine Weyl groups")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Largest Bruhat interval that may be enumerated.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub interval_cap: u64,
    /// Largest number of box points visited when enumerating dominant coweights.
    #[arg(long, global = true, default_value_t = 50_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub box_cap: u64,
    /// Coefficient cache directory (overrides BRUHAT_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Leave timings out of the output.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Cartan type: A, B, C, D, E, F or G.
    #[arg(long = "type")]
    pub family: char,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bruhat,
    Lattice,
    Geometric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size of the interval below theta(lambda).
    Count {
        #[command(flatten)]
        system: SystemArgs,
        /// Coordinates of lambda in the fundamental coweight basis, e.g. 1,0.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Method::Lattice)]
        method: Method,
        /// Coefficient file for the geometric method.
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// Fit the geometric coefficients and write them to a file.
    Fit {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Compare all three methods on every lambda with coordinates up to max-coord.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 2)]
        max_coord: i64,
    },
    /// Ehrhart polynomial of the hypersimplex with k ones in dimension d.
    Ehrhart {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
    },
    /// Volume polynomials r_J; all subsets when --j is absent.
    Volumes {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated indices; empty for the empty set.
        #[arg(long)]
        j: Option<String>,
    },
    /// Root system data.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Vertices of the face F_J(lambda) of the orbit polytope.
    Faces {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "")]
        j: String,
    },
}

/// Output document and exit code.
pub struct Report {
    pub value: Value,
    pub code: i32,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report { value, code: 0 }
    }
}

fn budget(opts: &GlobalOpts) -> Budget {
    Budget {
        interval_cap: usize::try_from(opts.interval_cap).unwrap_or(usize::MAX),
        box_cap: opts.box_cap,
        ..Budget::default()
    }
}

fn system(args: &SystemArgs) -> CliResult<RootSystemData> {
    let family = Family::from_letter(args.family)
        .ok_or_else(|| CliError::Usage(format!("unknown type {}", args.family)))?;
    Ok(RootSystemData::build(RootSystemId::new(family, args.rank)?)?)
}

fn parse_lambda(s: &str, n: usize) -> CliResult<DominantCoweight> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("lambda must be comma-separated integers, got {s:?}")))?;
    if coords.len() != n {
        return Err(bruhat_core::Error::DimensionMismatch {
            expected: n,
            got: coords.len(),
        }
        .into());
    }
    Ok(DominantCoweight::new(coords)?)
}

fn bruhat_count(data: &RootSystemData, lambda: &DominantCoweight, b: &Budget) -> CliResult<BigInt> {
    let (w, word) = theta(data, lambda)?;
    Ok(BigInt::from(interval_size(data, &w, &word, b.interval_cap)?))
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    let opts = &cli.opts;
    let b = budget(opts);
    match &cli.command {
        Command::Count {
            system: s,
            lambda,
            method,
            coeffs,
        } => {
            let data = system(s)?;
            let l = parse_lambda(lambda, data.rank())?;
            let start = Instant::now();
            let count = match method {
                Method::Bruhat => bruhat_count(&data, &l, &b)?,
                Method::Lattice => interval_size_lattice(&data, &l, &b)?,
                Method::Geometric => {
                    let dir = cache::cache_dir(opts.cache_dir.as_deref());
                    let c = cache::coefficients(&data, coeffs.as_deref(), dir.as_deref(), &b)?;
                    let table = VolumeTable::build(&data, &b)?;
                    evaluate_formula(&table, &c, &l)?
                }
            };
            let mut v = json!({
                "schema": SCHEMA,
                "system": data.id().to_string(),
                "lambda": l.coords(),
                "method": format!("{method:?}").to_lowercase(),
                "count": codec::integer(&count),
            });
            if !opts.no_timing {
                v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            Ok(Report::ok(v))
        }
        Command::Fit { system: s, out, force } => {
            let data = system(s)?;
            if out.exists() && !force {
                return Err(CliError::Exists(out.clone()));
            }
            let c = fit_mu(&data, &b)?;
            let doc = codec::coefficients(&data, &c);
            cache::write_atomic(out, &codec::to_pretty(&doc))?;
            Ok(Report::ok(doc))
        }
        Command::Verify { system: s, max_coord } => verify(&system(s)?, *max_coord, opts, &b),
        Command::Ehrhart { k, d } => {
            let p = hypersimplex_ehrhart(*k, *d)?;
            let coeffs: Vec<Value> = (0..*d as u32)
                .map(|m| codec::rational(&p.coefficient(&[m])))
                .collect();
            Ok(Report::ok(json!({ "schema": SCHEMA, "k": k, "d": d, "coefficients": coeffs })))
        }
        Command::Volumes { system: s, j } => {
            let data = system(s)?;
            let n = data.rank();
            let one = |sub: Subset| -> CliResult<Value> {
                let v = volume_polynomial(&data, sub)?;
                Ok(json!({ "J": sub.indices(), "rel_poly": codec::mpoly(&v.rel_poly), "gram": codec::rational(&v.gram) }))
            };
            let body = match j {
                Some(text) => {
                    let sub = codec::parse_index_list(text, n)
                        .ok_or_else(|| CliError::Usage(format!("invalid J {text:?} for rank {n}")))?;
                    one(sub)?
                }
                None => {
                    if n > b.max_subset_rank {
                        return Err(bruhat_core::Error::BudgetExceeded {
                            what: "subset table rank",
                            limit: b.max_subset_rank as u64,
                        }
                        .into());
                    }
                    Value::Array(Subset::all(n).map(one).collect::<CliResult<_>>()?)
                }
            };
            Ok(Report::ok(json!({ "schema": SCHEMA, "system": data.id().to_string(), "volumes": body })))
        }
        Command::Roots { system: s } => Ok(Report::ok(roots(&system(s)?))),
        Command::Faces { system: s, lambda, j } => {
            let data = system(s)?;
            let l = parse_lambda(lambda, data.rank())?;
            let sub = codec::parse_index_list(j, data.rank())
                .ok_or_else(|| CliError::Usage(format!("invalid J {j:?} for rank {}", data.rank())))?;
            let f = face(&data, &l, sub)?;
            Ok(Report::ok(json!({
                "schema": SCHEMA,
                "system": data.id().to_string(),
                "lambda": l.coords(),
                "J": sub.indices(),
                "dim": f.dim,
                "vertices": f.vertices.iter().map(codec::vector).collect::<Vec<_>>(),
                "orbit_face_count": orbit_face_count(&data, &l, sub)?,
                "parabolic_index": codec::integer(&parabolic_index(&data, sub)),
            })))
        }
    }
}

fn grid(n: usize, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn verify(data: &RootSystemData, max_coord: i64, opts: &GlobalOpts, b: &Budget) -> CliResult<Report> {
    if max_coord < 0 {
        return Err(CliError::Usage("max-coord must be non-negative".into()));
    }
    let n = data.rank();
    let dir = cache::cache_dir(opts.cache_dir.as_deref());
    let coeffs = cache::coefficients(data, None, dir.as_deref(), b)?;
    let table = VolumeTable::build(data, b)?;
    let nf: BigInt = (1..=n as u64 + 1).map(BigInt::from).product();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for m in grid(n, max_coord) {
        let l = DominantCoweight::new(m.clone())?;
        let bruhat = bruhat_count(data, &l, b)?;
        let lattice = interval_size_lattice(data, &l, b)?;
        let geometric = evaluate_formula(&table, &coeffs, &l)?;

        let (w, _) = theta(data, &l)?;
        let (left, right) = descents(data, &w);
        let sigma = sigma_reflection(data, &l.to_vector(data))?;
        let descents_ok =
            (1..=n).all(|i| left.contains(&i)) && (0..=n).filter(|&i| i != sigma).all(|i| right.contains(&i));

        let mut row = json!({
            "lambda": m,
            "bruhat": codec::integer(&bruhat),
            "lattice": codec::integer(&lattice),
            "geometric": codec::integer(&geometric),
            "descents_ok": descents_ok,
        });
        let mut ok = bruhat == lattice && lattice == geometric && descents_ok;
        // Multiples of a single fundamental coweight in type A.
        let support: Vec<usize> = (0..n).filter(|&i| m[i] != 0).collect();
        if data.id().family() == Family::A && support.len() == 1 {
            let k = support[0] + 1;
            let e = hypersimplex_ehrhart(k as u64, n as u64 + 1)?.eval_ints(&[m[k - 1]]);
            let h = bruhat_core::Rational::from_integer(nf.clone()) * e;
            let hyper_ok = h == bruhat_core::Rational::from_integer(lattice.clone());
            row["hypersimplex"] = codec::rational(&h);
            ok &= hyper_ok;
        }
        if !ok {
            mismatches.push(json!(m));
        }
        rows.push(row);
    }
    let code = if mismatches.is_empty() { 0 } else { 4 };
    Ok(Report {
        value: json!({
            "schema": SCHEMA,
            "system": data.id().to_string(),
            "max_coord": max_coord,
            "rows": rows,
            "mismatches": mismatches,
            "ok": code == 0,
        }),
        code,
    })
}

fn roots(data: &RootSystemData) -> Value {
    let vecs = |vs: &[bruhat_core::QVector]| vs.iter().map(codec::vector).collect::<Vec<_>>();
    json!({
        "schema": SCHEMA,
        "system": data.id().to_string(),
        "rank": data.rank(),
        "ambient_dim": data.ambient_dim(),
        "simple_roots": vecs(data.simple_roots()),
        "simple_coroots": vecs(data.simple_coroots()),
        "fundamental_coweights": vecs(data.fundamental_coweights()),
        "fundamental_weights": vecs(data.fundamental_weights()),
        "cartan": data.cartan(),
        "positive_roots": data.positive_root_coords(),
        "highest_root": codec::vector(data.highest_root()),
        "marks": data.marks(),
        "minuscule": data.minuscule(),
        "index_of_connection": data.index_of_connection(),
        "weyl_group_order": codec::integer(data.wf_order()),
        "det_coweight_lattice": codec::radical(data.det_coweight_lattice()),
        "alcove_volume": codec::radical(data.alcove_volume()),
        "mu_full": codec::radical(&bruhat_core::geocoeff::mu_full(data)),
    })
}
