//! theta-forge: exact stable homology invariants of graded hypersurface
//! singularities from the command line. Every subcommand reads one JSON
//! job spec, writes one JSON report to stdout, and exits 0 on success,
//! 2 on malformed input, 3 on a failed mathematical hypothesis, and 4
//! on a result that would contradict a theorem. Output is byte
//! deterministic for a fixed input: keys are emitted in sorted order
//! and rationals are printed as "num/den" strings.

mod job;

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use job::{Failure, Job};
use theta_forge::theta::{rigidity_scan, RigidityVerdict};
use theta_forge::{
    family, homology, milnor, theta, CoeffDomain, FiberId, KDim, MilnorAlgebra, PairingKind,
    Polynomial, ThetaReport,
};

#[derive(Parser)]
#[command(name = "theta-forge", version, about = "Theta pairings, Herbrand differences, and residue pairings for hypersurface singularities, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JobArgs {
    /// Path to the JSON job spec.
    spec: String,
    /// Degrees 1..window are computed (default 6, or the spec's value).
    #[arg(long)]
    window: Option<usize>,
    /// Compute one pair, overriding the spec's list: --pair M,N
    #[arg(long)]
    pair: Option<String>,
    /// Syzygy steps when stabilizing a non-square presentation.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args)]
struct SpecArg {
    /// Path to the JSON job spec.
    spec: String,
}

#[derive(Args)]
struct ResidueArgs {
    /// Path to the JSON job spec.
    spec: String,
    /// Also emit the monomial basis and the full Gram matrix.
    #[arg(long)]
    gram: bool,
}

#[derive(Args)]
struct FamilyArgs {
    /// Path to the JSON job spec (field must be "ZZ").
    spec: String,
    #[arg(long)]
    window: Option<usize>,
    /// Compute one pair, overriding the spec's list: --pair M,N
    #[arg(long)]
    pair: Option<String>,
    /// Fibers to check, e.g. Q,2,3,5. Overrides the spec's list.
    #[arg(long)]
    fibers: Option<String>,
    /// Exit 3 when any requested fiber fails validation.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct LiftArgs {
    /// Path to the JSON job spec (field must be a prime field).
    spec: String,
    #[arg(long)]
    window: Option<usize>,
    /// Which matrix to lift. Defaults to the spec's only matrix.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Hochster's theta pairing for each requested pair.
    Theta(JobArgs),
    /// Herbrand difference (stable Ext) for each requested pair.
    Herbrand(JobArgs),
    /// Stable Tor dimensions in degrees 1..window.
    Tor(JobArgs),
    /// Stable Ext dimensions in degrees 1..window.
    Ext(JobArgs),
    /// Tail-vanishing scan for pairs with theta = 0.
    Rigidity(JobArgs),
    /// Milnor algebra of f: basis, socle, and residue normalization.
    Milnor(SpecArg),
    /// Residue pairing values on the Milnor algebra of f.
    Residue(ResidueArgs),
    /// Validate every fiber of a family over ZZ.
    FamilyCheck(FamilyArgs),
    /// Check that theta is constant across the valid fibers.
    ThetaFamily(FamilyArgs),
    /// Lift a prime-field matrix to ZZ and compare theta across fibers.
    Lift(LiftArgs),
}

fn main() {
    let cli = Cli::parse();
    let (value, exit) = match run(cli.command) {
        Ok(report) => (report, 0),
        Err(failure) => {
            let error = json!({ "code": failure.code, "message": failure.message });
            let value = match failure.report {
                Some(Value::Object(mut map)) => {
                    map.insert("error".to_string(), error);
                    Value::Object(map)
                }
                _ => json!({ "error": error }),
            };
            (value, failure.exit)
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("report serializes");
    // A closed pipe (report | head) is not an error worth a panic.
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.write_all(b"\n"));
    let _ = out.flush();
    std::process::exit(exit);
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Theta(args) => pairing(&args, PairingKind::Theta),
        Command::Herbrand(args) => pairing(&args, PairingKind::Herbrand),
        Command::Tor(args) => profile(&args, "tor"),
        Command::Ext(args) => profile(&args, "ext"),
        Command::Rigidity(args) => rigidity(&args),
        Command::Milnor(args) => milnor_report(&args.spec),
        Command::Residue(args) => residue(&args),
        Command::FamilyCheck(args) => family_check(&args),
        Command::ThetaFamily(args) => theta_family(&args),
        Command::Lift(args) => lift(&args),
    }
}

fn load_job(args: &JobArgs) -> Result<Job, Failure> {
    job::load(&args.spec, args.window, args.pair.as_deref(), args.steps)
}

/// One report object per pair. A single pair is flattened into the top
/// level so `theta quadric.json` prints {"theta": 1, "even": 1, ...}.
fn wrap(job: &Job, command: &str, results: Vec<Value>) -> Value {
    let mut top = Map::new();
    top.insert("command".to_string(), json!(command));
    top.insert("ring".to_string(), json!(job.ring_tag()));
    top.insert("window".to_string(), json!(job.window));
    if results.len() == 1 {
        if let Value::Object(single) = &results[0] {
            for (k, v) in single {
                top.insert(k.clone(), v.clone());
            }
            return Value::Object(top);
        }
    }
    top.insert("results".to_string(), json!(results));
    Value::Object(top)
}

fn pairing_entry(report: &ThetaReport, parity: u8) -> Value {
    let (a, b) = report.profile().pair();
    let mut entry = Map::new();
    entry.insert("pair".to_string(), json!([a, b]));
    entry.insert(report.kind().label().to_string(), json!(report.value()));
    entry.insert("even".to_string(), json!(report.even_dim()));
    entry.insert("odd".to_string(), json!(report.odd_dim()));
    entry.insert("dims".to_string(), json!(report.dims()));
    entry.insert("parity".to_string(), json!(parity));
    Value::Object(entry)
}

fn pairing(args: &JobArgs, kind: PairingKind) -> Result<Value, Failure> {
    let job = load_job(args)?;
    job.require_field(kind.label())?;
    job.require_pairs()?;
    let mut results = Vec::new();
    for (a, b) in &job.pairs {
        let (mf_a, parity) = job.mf(a)?;
        let module_b = job.module(b)?;
        let report = match kind {
            PairingKind::Theta => {
                theta::theta_with_module(&mf_a, &module_b, job.window, (a, b))?
            }
            PairingKind::Herbrand => {
                theta::herbrand_with_module(&mf_a, &module_b, job.window, (a, b))?
            }
        };
        results.push(pairing_entry(&report, parity));
    }
    Ok(wrap(&job, kind.label(), results))
}

fn profile(args: &JobArgs, which: &str) -> Result<Value, Failure> {
    let job = load_job(args)?;
    job.require_field(which)?;
    job.require_pairs()?;
    let mut results = Vec::new();
    for (a, b) in &job.pairs {
        let (mf_a, parity) = job.mf(a)?;
        let module_b = job.module(b)?;
        let profile = match which {
            "tor" => homology::tor_dims(&mf_a, &module_b, job.window, (a, b))?,
            _ => homology::ext_dims(&mf_a, &module_b, job.window, (a, b))?,
        };
        results.push(json!({
            "pair": [a, b],
            "dims": profile.dims(),
            "parity": parity,
        }));
    }
    Ok(wrap(&job, which, results))
}

fn rigidity(args: &JobArgs) -> Result<Value, Failure> {
    let job = load_job(args)?;
    job.require_field("rigidity")?;
    job.require_pairs()?;
    if job.window < 4 {
        return Err(Failure::malformed("rigidity needs a window of at least 4"));
    }
    let mut results = Vec::new();
    let mut violation: Option<String> = None;
    for (a, b) in &job.pairs {
        let (mf_a, parity_a) = job.mf(a)?;
        let (mf_b, parity_b) = job.mf(b)?;
        let report = rigidity_scan(&mf_a, &mf_b, job.window, (a, b))?;
        let mut entry = match pairing_entry(report.theta(), parity_a) {
            Value::Object(map) => map,
            _ => unreachable!("pairing entries are objects"),
        };
        entry.insert("parity".to_string(), json!([parity_a, parity_b]));
        match report.verdict() {
            RigidityVerdict::NotApplicable => {
                entry.insert("verdict".to_string(), json!("NOT_APPLICABLE"));
            }
            RigidityVerdict::Consistent { first_vanishing } => {
                entry.insert("verdict".to_string(), json!("CONSISTENT"));
                entry.insert("first_vanishing".to_string(), json!(first_vanishing));
            }
            RigidityVerdict::Violation { vanishes_at, nonzero_at } => {
                entry.insert("verdict".to_string(), json!("VIOLATION"));
                entry.insert("vanishes_at".to_string(), json!(vanishes_at));
                entry.insert("nonzero_at".to_string(), json!(nonzero_at));
                violation = Some(format!(
                    "pair ({},{}) vanishes in degree {} but not in degree {}",
                    a, b, vanishes_at, nonzero_at
                ));
            }
        }
        results.push(Value::Object(entry));
    }
    let report = wrap(&job, "rigidity", results);
    match violation {
        None => Ok(report),
        Some(message) => {
            let mut failure = Failure::contradiction("VIOLATION", message);
            failure.report = Some(report);
            Err(failure)
        }
    }
}

fn monomial_texts(alg: &MilnorAlgebra) -> Vec<String> {
    let ring = alg.f().ring();
    let one = ring.domain().one();
    alg.basis()
        .iter()
        .map(|m| ring.monomial_term(m.clone(), one.clone()).to_string())
        .collect()
}

fn milnor_value(job: &Job, alg: &MilnorAlgebra) -> Value {
    json!({
        "command": "milnor",
        "ring": job.ring_tag(),
        "f": job.f.to_string(),
        "mu": alg.mu(),
        "socle_degree": alg.socle_degree(),
        "socle": alg.socle_generator().to_string(),
        "residue_of_socle": alg.residue_of_socle().to_string(),
        "basis": monomial_texts(alg),
        "jacobian": alg.jacobian().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn milnor_report(spec: &str) -> Result<Value, Failure> {
    let job = job::load(spec, None, None, None)?;
    job.require_field("milnor")?;
    let alg = milnor::milnor_mu(&job.f)?;
    Ok(milnor_value(&job, &alg))
}

fn residue(args: &ResidueArgs) -> Result<Value, Failure> {
    let job = job::load(&args.spec, None, None, None)?;
    job.require_field("residue")?;
    let alg = milnor::milnor_mu(&job.f)?;

    // For residue the pair entries are polynomial texts, not matrix names.
    let mut pairs = Vec::new();
    for (g_text, h_text) in &job.pairs {
        let g = parse_arg(&job, g_text)?;
        let h = parse_arg(&job, h_text)?;
        let value = milnor::residue_pair(&g, &h, &alg);
        pairs.push(json!({
            "g": g_text,
            "h": h_text,
            "value": value.to_string(),
        }));
    }

    let mut report = json!({
        "command": "residue",
        "ring": job.ring_tag(),
        "f": job.f.to_string(),
        "mu": alg.mu(),
        "residue_of_socle": alg.residue_of_socle().to_string(),
        "pairs": pairs,
    });
    if args.gram {
        let ring = job.f.ring();
        let one = ring.domain().one();
        let basis: Vec<Polynomial> = alg
            .basis()
            .iter()
            .map(|m| ring.monomial_term(m.clone(), one.clone()))
            .collect();
        let gram: Vec<Vec<String>> = basis
            .iter()
            .map(|g| {
                basis.iter().map(|h| milnor::residue_pair(g, h, &alg).to_string()).collect()
            })
            .collect();
        report["basis"] = json!(monomial_texts(&alg));
        report["gram"] = json!(gram);
    }
    Ok(report)
}

fn parse_arg(job: &Job, text: &str) -> Result<Polynomial, Failure> {
    theta_forge::parse_poly(&job.ring, text)
        .map_err(|e| Failure::input(e.code(), format!("{}: in {:?}: {}", job.path, text, e)))
}

fn resolve_fibers(job: &Job, flag: Option<&str>) -> Result<Vec<FiberId>, Failure> {
    match flag {
        Some(text) => job::parse_fiber_list(text),
        None => Ok(job.fibers.clone().unwrap_or_else(job::default_fibers)),
    }
}

fn build_family(job: &Job, fibers: Vec<FiberId>) -> Result<family::FamilySpec, Failure> {
    let mut mfs = Vec::new();
    for name in job.matrices.keys() {
        let (mf, _) = job.mf(name)?;
        mfs.push((name.clone(), mf));
    }
    Ok(family::FamilySpec::new(job.f.clone(), mfs, fibers)?)
}

fn kdim_value(k: &KDim) -> Value {
    match k {
        KDim::Finite(n) => json!(n),
        KDim::Infinite => json!("INFINITE"),
    }
}

fn family_check(args: &FamilyArgs) -> Result<Value, Failure> {
    let job = job::load(&args.spec, args.window, args.pair.as_deref(), None)?;
    job.require_integers("family-check")?;
    let fibers = resolve_fibers(&job, args.fibers.as_deref())?;
    let spec = build_family(&job, fibers)?;
    let validations = family::validate_family(&spec);
    let mut invalid = Vec::new();
    let fiber_values: Vec<Value> = validations
        .iter()
        .map(|v| {
            if !v.valid {
                invalid.push(v.fiber.to_string());
            }
            json!({
                "fiber": v.fiber.to_string(),
                "valid": v.valid,
                "tjurina": kdim_value(&v.tjurina),
                "reason": v.reason,
            })
        })
        .collect();
    let report = json!({
        "command": "family-check",
        "ring": job.ring_tag(),
        "f": job.f.to_string(),
        "fibers": fiber_values,
        "all_valid": invalid.is_empty(),
    });
    if args.strict && !invalid.is_empty() {
        let mut failure = Failure::hypothesis(
            "INVALID_FIBER",
            format!("invalid fibers: {}", invalid.join(", ")),
        );
        failure.report = Some(report);
        return Err(failure);
    }
    Ok(report)
}

fn constancy_entry(report: &family::ConstancyReport) -> Value {
    let per_fiber: Vec<Value> = report
        .per_fiber()
        .iter()
        .map(|(fiber, r)| {
            json!({
                "fiber": fiber.to_string(),
                "theta": r.value(),
                "even": r.even_dim(),
                "odd": r.odd_dim(),
                "dims": r.dims(),
            })
        })
        .collect();
    let skipped: Vec<Value> = report
        .skipped()
        .iter()
        .map(|(fiber, reason)| json!({ "fiber": fiber.to_string(), "reason": reason }))
        .collect();
    let (a, b) = report.pair();
    json!({
        "pair": [a, b],
        "constant": report.constant(),
        "value": report.common_value(),
        "per_fiber": per_fiber,
        "skipped": skipped,
    })
}

fn theta_family(args: &FamilyArgs) -> Result<Value, Failure> {
    let job = job::load(&args.spec, args.window, args.pair.as_deref(), None)?;
    job.require_integers("theta-family")?;
    job.require_pairs()?;
    let fibers = resolve_fibers(&job, args.fibers.as_deref())?;
    let spec = build_family(&job, fibers)?;

    let mut results = Vec::new();
    let mut nonconstant = Vec::new();
    let mut any_skipped = false;
    for (a, b) in &job.pairs {
        let constancy = family::theta_constancy(&spec, (a, b), job.window)?;
        if !constancy.constant() {
            nonconstant.push(format!("({},{})", a, b));
        }
        any_skipped = any_skipped || !constancy.skipped().is_empty();
        results.push(constancy_entry(&constancy));
    }
    let report = wrap(&job, "theta-family", results);
    if !nonconstant.is_empty() {
        let mut failure = Failure::contradiction(
            "NONCONSTANT",
            format!("theta varies across fibers for {}", nonconstant.join(", ")),
        );
        failure.report = Some(report);
        return Err(failure);
    }
    if args.strict && any_skipped {
        let mut failure =
            Failure::hypothesis("INVALID_FIBER", "some requested fibers were skipped");
        failure.report = Some(report);
        return Err(failure);
    }
    Ok(report)
}

fn lift(args: &LiftArgs) -> Result<Value, Failure> {
    let job = job::load(&args.spec, args.window, None, None)?;
    let p = match job.ring.domain() {
        CoeffDomain::PrimeField(p) => *p,
        other => {
            return Err(Failure::malformed(format!(
                "lift wants a prime field spec, got {}",
                other
            )))
        }
    };
    let name = match &args.matrix {
        Some(name) => name.clone(),
        None => {
            let mut names = job.matrices.keys();
            match (names.next(), names.next()) {
                (Some(name), None) => name.clone(),
                _ => {
                    return Err(Failure::malformed(
                        "spec has several matrices; pick one with --matrix",
                    ))
                }
            }
        }
    };
    let grid = job.grid(&name)?;
    if grid.rows() != grid.cols() {
        return Err(Failure::malformed(format!("matrix {:?} is not square", name)));
    }
    let report = family::lift_and_compare(grid, job.window)?;
    let value = json!({
        "command": "lift",
        "matrix": name,
        "p": p,
        "n": report.n,
        "f": report.f.to_string(),
        "theta": report.theta,
        "equal_across_fibers": report.equal_across_fibers,
        "sign_ok": report.sign_ok,
        "constancy": constancy_entry(&report.constancy),
    });
    if !report.sign_ok {
        let mut failure = Failure::contradiction(
            "SIGN_VIOLATION",
            format!("theta sign contradicts n = {} mod 4", report.n % 4),
        );
        failure.report = Some(value);
        return Err(failure);
    }
    if !report.equal_across_fibers {
        let mut failure = Failure::contradiction(
            "NONCONSTANT",
            "theta differs between the rational and prime field fibers",
        );
        failure.report = Some(value);
        return Err(failure);
    }
    Ok(value)
}
