//! Batch front door: parse JSON inputs, dispatch to the engine, and emit
//! JSON or text reports and DOT graphs.
//!
//! Exit codes: 0 on success, 1 on input or precondition errors, 2 when a
//! verification subcommand finds a genuine failure.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gt_core::combin::{seed_of, Point, Shift};
use gt_core::cone::{
    cone_of, fo_bound, seed_cone_generators, verma_essupp_test, verma_supp_test,
};
use gt_core::engine::{hw_tableau, verify_rep_relations, Engine, TableauKey, TableauVector};
use gt_core::graph::{build, orient, reduce, split};
use gt_core::json;
use gt_core::perm::Permutation;
use gt_core::ratfun::RatFn;
use gt_core::scalar::Scalar;
use gt_core::shuffles::Parabolic;
use gt_core::verma::{compare_with_predictions, gt_decompose, VermaModule};

#[derive(Parser)]
#[command(name = "gt", about = "Exact engine for Gelfand-Tsetlin tableaux modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Path to a JSON input file ("-" for stdin)
    #[arg(long = "in")]
    input: Option<String>,
    /// Inline JSON input
    #[arg(long)]
    json: Option<String>,
}

impl InputArgs {
    fn read(&self) -> Result<String> {
        match (&self.input, &self.json) {
            (Some(path), None) => {
                if path == "-" {
                    let mut buf = String::new();
                    std::io::stdin().read_to_string(&mut buf)?;
                    Ok(buf)
                } else {
                    std::fs::read_to_string(path).with_context(|| format!("reading {}", path))
                }
            }
            (None, Some(inline)) => Ok(inline.clone()),
            _ => bail!("provide exactly one of --in or --json"),
        }
    }

    fn point(&self) -> Result<Point> {
        let text = self.read()?;
        let parsed: json::PointJson = serde_json::from_str(&text)?;
        Ok(json::point_from_json(&parsed)?)
    }
}

fn parse_shift(n: usize, text: &str) -> Result<Shift> {
    // accept either {"rows": [...]} or the bare rows array
    if let Ok(j) = serde_json::from_str::<json::ShiftJson>(text) {
        return Ok(json::shift_from_json(n, &j)?);
    }
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)?;
    Ok(Shift::from_rows(n, rows)?)
}

#[derive(Subcommand)]
enum Command {
    /// Canonical seed, shift and permutation of a point
    Seed {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Position graph of a point or a shifted seed
    Graph {
        #[command(flatten)]
        input: InputArgs,
        /// Shift rows as JSON; orients the graph of seed + shift
        #[arg(long)]
        shift: Option<String>,
        /// Emit the transitive reduction
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Inequality system of the cone attached to a shift
    Cone {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        shift: String,
        /// Keep only the weak inequalities (the closure)
        #[arg(long)]
        closed: bool,
        /// Attach the seed-cone generators (zero shift only)
        #[arg(long)]
        generators: bool,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Closed-form support test for the singular antidominant module
    Support {
        #[arg(long)]
        verma: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: String,
    },
    /// Closed-form essential-support test
    Essupp {
        #[arg(long)]
        verma: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: String,
    },
    /// Apply a canonical generator to a tableau vector
    Act {
        #[command(flatten)]
        input: InputArgs,
        /// Generator "p,q" with |p-q| <= 1
        #[arg(long)]
        op: String,
        /// Tableau vector JSON file; defaults to the classical tableau at --z
        #[arg(long)]
        vector: Option<String>,
        #[arg(long)]
        z: Option<String>,
    },
    /// Highest-weight tableau of a dominant weight
    Hw {
        /// Comma-separated weight entries (scalar grammar)
        #[arg(long)]
        lambda: String,
        /// One-line permutation of the top row, comma-separated
        #[arg(long)]
        sigma: String,
    },
    /// Reachability certificate between two shifts
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Spectral decomposition of the highest-weight module oracle
    Verma {
        #[arg(long)]
        n: usize,
        /// Comma-separated rational weight entries; defaults to the
        /// singular antidominant weight (0, 1, ..., n-1)
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Verification suites
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Bracket relations on sampled tableaux
    Rep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        depth: i64,
        #[arg(long = "rng-seed", default_value_t = 2024)]
        rng_seed: u64,
        /// Optional seed point JSON (defaults to the zero seed)
        #[arg(long = "seed-point")]
        seed_point: Option<String>,
    },
    /// Oracle decomposition against the closed-form predictions
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Serialize)]
struct SeedOutput {
    seed: json::PointJson,
    shift: json::ShiftJson,
    permutation: json::PermJson,
}

#[derive(Serialize)]
struct TermOutput {
    z: Vec<Vec<i64>>,
    sigma: Vec<Vec<usize>>,
    coeff: String,
}

fn vector_to_json(t: &TableauVector) -> Vec<TermOutput> {
    t.terms
        .iter()
        .map(|(key, c)| TermOutput {
            z: key.shift.rows.clone(),
            sigma: json::perm_to_json(&key.perm).rows,
            coeff: c.to_string(),
        })
        .collect()
}

fn vector_from_json(n: usize, text: &str) -> Result<TableauVector> {
    #[derive(serde::Deserialize)]
    struct TermIn {
        z: Vec<Vec<i64>>,
        sigma: Vec<Vec<usize>>,
        coeff: String,
    }
    let terms: Vec<TermIn> = serde_json::from_str(text)?;
    let mut out = TableauVector::zero();
    for t in terms {
        let shift = Shift::from_rows(n, t.z)?;
        let perm = json::perm_from_json(&json::PermJson { rows: t.sigma })?;
        let coeff = json::parse_ratfn(&t.coeff)?;
        out.add_term(TableauKey { shift, perm }, coeff);
    }
    Ok(out)
}

fn point_text(p: &Point) -> String {
    let mut out = String::new();
    for row in p.rows.iter().rev() {
        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Seed { input, format } => {
            let point = input.point()?;
            let (seed, shift, sigma) = seed_of(&point);
            if format == "text" {
                print!("{}", point_text(&seed));
                println!("shift: {:?}", shift);
                println!("permutation: {:?}", sigma);
            } else {
                let out = SeedOutput {
                    seed: json::point_to_json(&seed),
                    shift: json::shift_to_json(&shift),
                    permutation: json::perm_to_json(&sigma),
                };
                println!("{}", serde_json::to_string_pretty(&out)?);
            }
            Ok(0)
        }
        Command::Graph {
            input,
            shift,
            reduced,
            format,
        } => {
            let point = input.point()?;
            let graph = match shift {
                Some(ref s) => {
                    let z = parse_shift(point.n(), s)?;
                    let g = orient(&point, &z);
                    if reduced {
                        reduce(&g)?
                    } else {
                        g
                    }
                }
                None => build(&point),
            };
            if format == "json" {
                let edges: Vec<((usize, usize), (usize, usize))> = graph
                    .edges
                    .iter()
                    .map(|(a, b)| ((a.k, a.i), (b.k, b.i)))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&edges)?);
            } else {
                print!("{}", graph.to_dot());
            }
            Ok(0)
        }
        Command::Cone {
            input,
            shift,
            closed,
            generators,
            format,
        } => {
            let point = input.point()?;
            let z = parse_shift(point.n(), &shift)?;
            let mut cone = cone_of(&point, &z, closed)?;
            if generators {
                if !z.is_zero() {
                    bail!("generators are attached to the zero shift only");
                }
                cone = cone.with_generators(seed_cone_generators(&point)?)?;
            }
            if format == "text" {
                println!("{}", cone.render());
            } else {
                #[derive(Serialize)]
                struct ConeOut {
                    inequalities: Vec<String>,
                    generators: Vec<Vec<Vec<i64>>>,
                    rank: usize,
                }
                let out = ConeOut {
                    inequalities: cone.ineqs.iter().map(|q| q.render()).collect(),
                    generators: cone.generators.iter().map(|g| g.rows.clone()).collect(),
                    rank: cone.rank(),
                };
                println!("{}", serde_json::to_string_pretty(&out)?);
            }
            Ok(0)
        }
        Command::Support { verma, n, z } => {
            if !verma {
                bail!("only the singular antidominant test is implemented; pass --verma");
            }
            let z = parse_shift(n, &z)?;
            println!("{}", serde_json::json!({ "support": verma_supp_test(&z) }));
            Ok(0)
        }
        Command::Essupp { verma, n, z } => {
            if !verma {
                bail!("only the singular antidominant test is implemented; pass --verma");
            }
            let z = parse_shift(n, &z)?;
            println!("{}", serde_json::json!({ "essential": verma_essupp_test(&z) }));
            Ok(0)
        }
        Command::Act {
            input,
            op,
            vector,
            z,
        } => {
            let seed = input.point()?;
            let engine = Engine::new(seed)?;
            let (p, q) = {
                let parts: Vec<&str> = op.split(',').collect();
                if parts.len() != 2 {
                    bail!("--op expects \"p,q\"");
                }
                (parts[0].trim().parse()?, parts[1].trim().parse()?)
            };
            let t = match (vector, z) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(&path)?;
                    vector_from_json(engine.n(), &text)?
                }
                (None, Some(ztext)) => {
                    let z = parse_shift(engine.n(), &ztext)?;
                    engine.classical(&z)?
                }
                _ => bail!("provide exactly one of --vector or --z"),
            };
            let out = engine.act_e(p, q, &t)?;
            println!("{}", serde_json::to_string_pretty(&vector_to_json(&out))?);
            Ok(0)
        }
        Command::Hw { lambda, sigma } => {
            let entries: Vec<Scalar> = lambda
                .split(',')
                .map(|s| s.trim().parse::<Scalar>())
                .collect::<gt_core::Result<_>>()?;
            let perm: Vec<usize> = sigma
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()?;
            let hw = hw_tableau(&entries, &perm)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json::point_to_json(&hw))?
            );
            Ok(0)
        }
        Command::Certify { input, from, to } => {
            let seed = input.point()?;
            let engine = Engine::new(seed)?;
            let from = parse_shift(engine.n(), &from)?;
            let to = parse_shift(engine.n(), &to)?;
            let steps = engine.certificate_steps(&from, &to)?;
            let replay = engine.replay_certificate(&from, &steps)?;
            let final_classical = replay.coeff(&TableauKey {
                shift: to.clone(),
                perm: Permutation::identity(engine.n()),
            });
            #[derive(Serialize)]
            struct CertifyOut {
                steps: Vec<(usize, usize, i64)>,
                replay_nonzero: bool,
                classical_coefficient_nonzero: bool,
            }
            let out = CertifyOut {
                steps,
                replay_nonzero: !replay.is_zero(),
                classical_coefficient_nonzero: !final_classical.is_zero(),
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Command::Verma {
            n,
            lambda,
            depth,
            jobs,
        } => {
            let module = match lambda {
                Some(text) => {
                    let entries: Vec<gt_core::scalar::Rat> = text
                        .split(',')
                        .map(|s| {
                            let sc: Scalar = s.trim().parse()?;
                            if !sc.is_rational() {
                                return Err(gt_core::GtError::Malformed(
                                    "the oracle requires rational weights".into(),
                                ));
                            }
                            Ok(sc.rational)
                        })
                        .collect::<gt_core::Result<_>>()?;
                    if entries.len() != n {
                        bail!("--lambda must have {} entries", n);
                    }
                    VermaModule::new(entries)
                }
                None => VermaModule::antidominant_singular(n),
            };
            let decomposition = gt_decompose(&module, depth, jobs)?;
            #[derive(Serialize)]
            struct EntryOut {
                cartan_weight: Vec<String>,
                character_rows: Vec<Vec<i64>>,
                multiplicity: usize,
                supp: bool,
                essential: bool,
            }
            let entries: Vec<EntryOut> = decomposition
                .entries
                .iter()
                .map(|e| EntryOut {
                    cartan_weight: e.weight.iter().map(|q| q.to_string()).collect(),
                    character_rows: e.shift.rows.clone(),
                    multiplicity: e.multiplicity,
                    supp: verma_supp_test(&e.shift),
                    essential: verma_essupp_test(&e.shift),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&entries)?);
            Ok(0)
        }
        Command::Verify(VerifyCommand::Rep {
            n,
            samples,
            depth,
            rng_seed,
            seed_point,
        }) => {
            let seed = match seed_point {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    let parsed: json::PointJson = serde_json::from_str(&text)?;
                    json::point_from_json(&parsed)?
                }
                None => Point::zero(n),
            };
            let engine = Engine::new(seed)?;
            let mut keys = engine.keys_up_to(depth);
            // deterministic subsample
            if keys.len() > samples {
                let mut state = rng_seed | 1;
                let mut picked = Vec::with_capacity(samples);
                for _ in 0..samples {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    let idx = (state >> 33) as usize % keys.len();
                    picked.push(keys.swap_remove(idx));
                }
                keys = picked;
            }
            let report = verify_rep_relations(&engine, &keys)?;
            println!(
                "{}",
                serde_json::json!({
                    "keys": keys.len(),
                    "checks": report.checks,
                    "failures": report.failures.len(),
                })
            );
            Ok(if report.ok() { 0 } else { 2 })
        }
        Command::Verify(VerifyCommand::Oracle { n, depth, jobs }) => {
            let report = compare_with_predictions(n, depth, jobs)?;
            println!(
                "{}",
                serde_json::json!({
                    "characters": report.characters,
                    "mismatches": report.mismatches,
                })
            );
            Ok(if report.ok() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    // version goes to stderr so payloads stay byte-identical across runs
    eprintln!("gt {}", env!("CARGO_PKG_VERSION"));
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(1)
        }
    }
}

// keep the unused-import lints honest for items used only in some paths
#[allow(unused)]
fn _typecheck_helpers(engine: &Engine, z: &Shift) -> Result<()> {
    let _ = fo_bound(engine.parabolic(), z);
    let _ = Parabolic::new(engine.partition().clone());
    let _ = split(&orient(engine.seed(), z));
    let _: RatFn = RatFn::one();
    Err(anyhow!("never called"))
}
