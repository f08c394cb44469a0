use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zsep::boolring::{self, BoolMode, PointSet};
use zsep::sepcheck::{self, CheckMode};
use zsep::sepextract::{self, CoherentTuple, Eliminated, SeparatingTuple};
use zsep::{
    parse_ordering_matrix, parse_system, AnySystem, CheckOutcome, Error, Field, Gf2, IndexTuple, PolySystem, Ring,
    TermOrdering,
};

#[derive(Parser)]
#[command(name = "zsep", version, about = "Separating tuples of indeterminates and elimination by substitution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether Z is a separating tuple; prints the weights or FAIL.
    Check(TupleArgs),
    /// Print a Z-separating tuple of polynomials.
    Extract(TupleArgs),
    /// Print a coherently Z-separating tuple.
    Coherent(TupleArgs),
    /// Print generators of the elimination ideal in the ring without Z.
    Eliminate(TupleArgs),
    /// Check every subset of a pool of indeterminates up to a given size.
    Scan(ScanArgs),
    /// Print a basis of the polynomials of bounded degree vanishing on a point set.
    PointsIdeal(PointsArgs),
    /// Print the 256 points (a, S(a)) of the AES S-box graph.
    SboxPoints,
}

#[derive(Args)]
struct ModeArgs {
    /// Use the optimized checker.
    #[arg(long)]
    optimized: bool,
    /// Boolean systems: add x^2 + x for every variable (implies --optimized).
    #[arg(long)]
    boolean_field_ideal: bool,
    /// Boolean systems: add z*g for every generator g without constant term containing z.
    #[arg(long)]
    augment_products: bool,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TupleArgs {
    file: PathBuf,
    /// Comma-separated variable names.
    #[arg(long)]
    z: String,
    /// Ordering matrix file used for plain extraction instead of the one built from the weights.
    #[arg(long)]
    ordering_matrix: Option<PathBuf>,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
struct ScanArgs {
    file: PathBuf,
    /// Comma-separated variable names.
    #[arg(long)]
    pool: String,
    #[arg(long)]
    max_size: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
struct PointsArgs {
    file: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    json: bool,
}

/// What a subcommand produced: text, JSON and whether the outcome was a success.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_out, result) = match cli.command {
        Command::Check(a) => (a.mode.json, tuple_command(Stage::Check, &a)),
        Command::Extract(a) => (a.mode.json, tuple_command(Stage::Extract, &a)),
        Command::Coherent(a) => (a.mode.json, tuple_command(Stage::Coherent, &a)),
        Command::Eliminate(a) => (a.mode.json, tuple_command(Stage::Eliminate, &a)),
        Command::Scan(a) => (a.mode.json, scan(&a)),
        Command::PointsIdeal(a) => (a.json, points_ideal(&a)),
        Command::SboxPoints => (false, Ok(sbox_points())),
    };
    match result {
        Ok(r) => {
            if json_out {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    Check,
    Extract,
    Coherent,
    Eliminate,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<AnySystem, String> {
    parse_system(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn names(ring: &Ring, t: &IndexTuple) -> Vec<String> {
    t.iter().map(|k| ring.name(k).to_string()).collect()
}

fn outcome_json(ring: &Ring, z: &IndexTuple, o: &CheckOutcome) -> Value {
    match o {
        CheckOutcome::Fail => json!({ "z": names(ring, z), "outcome": "fail" }),
        CheckOutcome::Success { weights, trace } => json!({
            "z": names(ring, z),
            "outcome": "success",
            "weights": weights.as_slice().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "trace": trace.iter().map(|a| json!({
                "variable": ring.name(a.index),
                "weight": a.weight.to_string(),
                "iteration": a.iteration,
            })).collect::<Vec<_>>(),
        }),
    }
}

fn tuple_json<F: Field>(ring: &Ring, entries: &[(usize, zsep::Polynomial<F>)]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|(k, f)| json!({ "variable": ring.name(*k), "polynomial": f.display(ring).to_string() }))
            .collect(),
    )
}

fn separating_report<F: Field>(sep: &SeparatingTuple<F>) -> Report {
    Report {
        text: sep.to_string(),
        json: json!({ "separating_tuple": tuple_json(&sep.ring, &sep.entries) }),
        ok: true,
    }
}

fn coherent_report<F: Field>(coh: &CoherentTuple<F>) -> Report {
    let polys: Vec<(usize, zsep::Polynomial<F>)> =
        coh.entries.iter().map(|(k, _)| *k).zip(coh.polynomials()).collect();
    Report {
        text: coh.to_string(),
        json: json!({ "coherent_tuple": tuple_json(&coh.ring, &polys) }),
        ok: true,
    }
}

fn eliminated_report<F: Field>(el: &Eliminated<F>) -> Report {
    let ring = el.system.ring();
    Report {
        text: el.system.to_file_string(),
        json: json!({
            "vars": ring.names(),
            "generators": el.system.generators().iter().map(|g| g.display(ring).to_string()).collect::<Vec<_>>(),
        }),
        ok: true,
    }
}

fn fail_report(ring: &Ring, z: &IndexTuple, o: &CheckOutcome) -> Report {
    Report {
        text: format!("{o}\n"),
        json: outcome_json(ring, z, o),
        ok: o.is_success(),
    }
}

fn tuple_command(stage: Stage, a: &TupleArgs) -> Result<Report, String> {
    let sys = load(&a.file)?;
    let ordering = match &a.ordering_matrix {
        Some(p) => Some(parse_ordering_matrix(&read(p)?, sys.ring().nvars()).map_err(|e| format!("{}: {e}", p.display()))?),
        None => None,
    };
    let err = |e: Error| e.to_string();
    match sys {
        AnySystem::Gf2(s) if s.ring().is_boolean() => boolean_tuple(stage, a, s, ordering).map_err(err),
        AnySystem::Gf2(s) => generic_tuple(stage, a, &s, ordering).map_err(err),
        AnySystem::Rational(s) => generic_tuple(stage, a, &s, ordering).map_err(err),
    }
}

fn generic_tuple<F: Field>(
    stage: Stage,
    a: &TupleArgs,
    s: &PolySystem<F>,
    ordering: Option<TermOrdering>,
) -> Result<Report, Error> {
    if a.mode.boolean_field_ideal || a.mode.augment_products {
        return Err(Error::NonBoolean);
    }
    let z = s.tuple(&a.z)?;
    let mode = if a.mode.optimized { CheckMode::Optimized } else { CheckMode::Plain };
    let outcome = sepcheck::check(s, &z, mode)?;
    if stage == Stage::Check || !outcome.is_success() {
        return Ok(fail_report(s.ring(), &z, &outcome));
    }
    let sep = match mode {
        CheckMode::Plain => {
            let sigma = ordering.unwrap_or_else(|| sepextract::compatible_ordering(outcome.weights().expect("success"), &z));
            sepextract::find_separating_tuple(s, &z, &sigma)?
        }
        CheckMode::Optimized => sepextract::find_separating_tuple_tracked(s, &z)?,
    };
    if stage == Stage::Extract {
        return Ok(separating_report(&sep));
    }
    let coh = sepextract::coherent_tuple(&sep);
    if stage == Stage::Coherent {
        return Ok(coherent_report(&coh));
    }
    Ok(eliminated_report(&sepextract::eliminate(s, &coh)?))
}

fn bool_mode(m: &ModeArgs) -> BoolMode {
    if m.boolean_field_ideal {
        BoolMode::OptimizedWithFieldIdeal
    } else if m.optimized {
        BoolMode::Optimized
    } else {
        BoolMode::Plain
    }
}

fn boolean_tuple(
    stage: Stage,
    a: &TupleArgs,
    s: PolySystem<Gf2>,
    ordering: Option<TermOrdering>,
) -> Result<Report, Error> {
    let z = s.tuple(&a.z)?;
    let s = if a.mode.augment_products {
        boolring::augment_with_indeterminate_products(&s, &z)?
    } else {
        s
    };
    let mode = bool_mode(&a.mode);
    let outcome = boolring::bool_check_separating(&s, &z, mode)?;
    if stage == Stage::Check || !outcome.is_success() {
        return Ok(fail_report(s.ring(), &z, &outcome));
    }
    let sep = match (mode, ordering) {
        (BoolMode::Plain, Some(sigma)) => {
            let mut sep = sepextract::find_separating_tuple(&s, &z, &sigma)?;
            for (_, f) in &mut sep.entries {
                *f = boolring::squarefree_normalize(f);
            }
            sep
        }
        _ => boolring::bool_find_separating_tuple(&s, &z, mode)?,
    };
    if stage == Stage::Extract {
        return Ok(separating_report(&sep));
    }
    let coh = boolring::bool_coherent_tuple(&sep);
    if stage == Stage::Coherent {
        return Ok(coherent_report(&coh));
    }
    Ok(eliminated_report(&sepextract::eliminate(&s, &coh)?))
}

fn scan(a: &ScanArgs) -> Result<Report, String> {
    let sys = load(&a.file)?;
    let ring = sys.ring().clone();
    let pool = ring.parse_tuple(&a.pool).map_err(|e| e.to_string())?;
    let results = match &sys {
        AnySystem::Gf2(s) if ring.is_boolean() => {
            if a.mode.augment_products {
                return Err("--augment-products depends on Z and is not available for scan".into());
            }
            boolring::bool_scan(s, pool.indices(), a.max_size, bool_mode(&a.mode), a.jobs)
        }
        _ if a.mode.boolean_field_ideal || a.mode.augment_products => Err(Error::NonBoolean),
        AnySystem::Gf2(s) => scan_generic(s, pool.indices(), a),
        AnySystem::Rational(s) => scan_generic(s, pool.indices(), a),
    }
    .map_err(|e| e.to_string())?;

    let successes = results.iter().filter(|(_, o)| o.is_success()).count();
    let mut text = String::new();
    for (z, o) in &results {
        text.push_str(&format!("{}: {o}\n", z.display(&ring)));
    }
    text.push_str(&format!("{successes} of {} subsets succeeded\n", results.len()));
    Ok(Report {
        text,
        json: json!({
            "results": results.iter().map(|(z, o)| outcome_json(&ring, z, o)).collect::<Vec<_>>(),
            "successes": successes,
            "total": results.len(),
        }),
        ok: successes == results.len(),
    })
}

fn scan_generic<F: Field>(
    s: &PolySystem<F>,
    pool: &[usize],
    a: &ScanArgs,
) -> Result<Vec<(IndexTuple, CheckOutcome)>, Error> {
    let mode = if a.mode.optimized { CheckMode::Optimized } else { CheckMode::Plain };
    sepcheck::scan_subsets(s, pool, a.max_size, mode, a.jobs)
}

fn points_ideal(a: &PointsArgs) -> Result<Report, String> {
    let pts = PointSet::parse(&read(&a.file)?).map_err(|e| format!("{}: {e}", a.file.display()))?;
    if a.degree > pts.width() {
        return Err(format!("degree {} exceeds the number of coordinates {}", a.degree, pts.width()));
    }
    let basis = boolring::vanishing_ideal_degree_bounded(&pts, a.degree);
    let ring = Ring::boolean(pts.width());
    let sys = PolySystem::new(ring.clone(), basis).map_err(|e| e.to_string())?;
    Ok(Report {
        text: sys.to_file_string(),
        json: json!({
            "vars": ring.names(),
            "generators": sys.generators().iter().map(|g| g.display(&ring).to_string()).collect::<Vec<_>>(),
        }),
        ok: true,
    })
}

fn sbox_points() -> Report {
    Report {
        text: boolring::sbox_points().to_file_string(),
        json: Value::Null,
        ok: true,
    }
}
