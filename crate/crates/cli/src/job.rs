//! Job specs: a single JSON document names the ring, the form f, a set
//! of matrices over that ring, and the pairs to compute on. Matrices
//! are given as row-major grids of polynomial text. A square grid is
//! completed to a matrix factorization (A, f*adj(A)/det(A)); a
//! non-square grid is read as a presentation matrix and stabilized by
//! repeated syzygies when a factorization is required.

use std::collections::BTreeMap;

use serde::Deserialize;
use theta_forge::matrix_factorization::stabilize;
use theta_forge::{
    parse_poly, CoeffDomain, FiberId, MatrixFactorization, PolyMatrix, PolyRing, Polynomial,
    PresentedModule,
};

/// An error the front end reports and exits on. `exit` is the process
/// exit code: 2 for malformed input, 3 for a failed mathematical
/// hypothesis, 4 for a result that contradicts a theorem. When a
/// report was already computed it rides along so the failure output
/// still shows the evidence.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
    pub report: Option<serde_json::Value>,
}

impl Failure {
    pub fn input(code: &str, message: impl Into<String>) -> Failure {
        Failure { exit: 2, code: code.to_string(), message: message.into(), report: None }
    }

    pub fn hypothesis(code: &str, message: impl Into<String>) -> Failure {
        Failure { exit: 3, code: code.to_string(), message: message.into(), report: None }
    }

    pub fn contradiction(code: &str, message: impl Into<String>) -> Failure {
        Failure { exit: 4, code: code.to_string(), message: message.into(), report: None }
    }

    pub fn malformed(message: impl Into<String>) -> Failure {
        Failure::input("SPEC_MALFORMED", message)
    }
}

fn mf_failure(e: theta_forge::MfError) -> Failure {
    Failure::input(e.code(), e.to_string())
}

fn homology_failure(e: theta_forge::HomologyError) -> Failure {
    Failure::hypothesis(e.code(), e.to_string())
}

pub fn family_failure(e: theta_forge::FamilyError) -> Failure {
    let code = e.code().to_string();
    let exit = match &e {
        theta_forge::FamilyError::SpecMalformed { .. } | theta_forge::FamilyError::Mf(_) => 2,
        theta_forge::FamilyError::Homology(_) | theta_forge::FamilyError::NoValidFibers => 3,
    };
    Failure { exit, code, message: e.to_string(), report: None }
}

impl From<theta_forge::MfError> for Failure {
    fn from(e: theta_forge::MfError) -> Failure {
        mf_failure(e)
    }
}

impl From<theta_forge::HomologyError> for Failure {
    fn from(e: theta_forge::HomologyError) -> Failure {
        homology_failure(e)
    }
}

impl From<theta_forge::FamilyError> for Failure {
    fn from(e: theta_forge::FamilyError) -> Failure {
        family_failure(e)
    }
}

impl From<theta_forge::MilnorError> for Failure {
    fn from(e: theta_forge::MilnorError) -> Failure {
        Failure::hypothesis(e.code(), e.to_string())
    }
}

/// Coefficient domain in JSON: "QQ", "ZZ", or {"GF": p}.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Gf { #[serde(rename = "GF")] p: u64 },
}

impl RawField {
    fn domain(&self) -> Result<CoeffDomain, Failure> {
        match self {
            RawField::Name(s) if s == "QQ" => Ok(CoeffDomain::Rationals),
            RawField::Name(s) if s == "ZZ" => Ok(CoeffDomain::Integers),
            RawField::Name(s) => {
                Err(Failure::malformed(format!("unknown field tag {:?}", s)))
            }
            RawField::Gf { p } => CoeffDomain::prime_field(*p)
                .ok_or_else(|| Failure::malformed(format!("{} is not prime", p))),
        }
    }

    fn fiber(&self) -> Result<FiberId, Failure> {
        match self.domain()? {
            CoeffDomain::Rationals => Ok(FiberId::Rationals),
            CoeffDomain::PrimeField(p) => Ok(FiberId::PrimeField(p)),
            CoeffDomain::Integers => {
                Err(Failure::malformed("ZZ is the base, not a fiber"))
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    field: RawField,
    vars: Vec<String>,
    f: String,
    #[serde(default)]
    matrices: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pairs: Vec<[String; 2]>,
    #[serde(default)]
    fibers: Option<Vec<RawField>>,
    #[serde(default)]
    window: Option<usize>,
    #[serde(default)]
    steps: Option<usize>,
}

/// A loaded, parsed job: ring and f are built, matrix grids are parsed
/// entrywise, but nothing is validated as a factorization yet.
pub struct Job {
    pub path: String,
    pub ring: PolyRing,
    pub f: Polynomial,
    pub matrices: BTreeMap<String, PolyMatrix>,
    pub pairs: Vec<(String, String)>,
    pub fibers: Option<Vec<FiberId>>,
    pub window: usize,
    pub steps: Option<usize>,
}

const DEFAULT_WINDOW: usize = 6;

/// Fibers used when a family job names none: QQ and the primes up to 13.
pub fn default_fibers() -> Vec<FiberId> {
    let mut fibers = vec![FiberId::Rationals];
    for p in [2, 3, 5, 7, 11, 13] {
        fibers.push(FiberId::PrimeField(p));
    }
    fibers
}

pub fn parse_fiber_list(text: &str) -> Result<Vec<FiberId>, Failure> {
    let mut fibers = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part == "Q" || part == "QQ" {
            fibers.push(FiberId::Rationals);
        } else {
            let p: u64 = part.parse().map_err(|_| {
                Failure::malformed(format!("fiber {:?} is neither Q nor a prime", part))
            })?;
            CoeffDomain::prime_field(p)
                .ok_or_else(|| Failure::malformed(format!("{} is not prime", p)))?;
            fibers.push(FiberId::PrimeField(p));
        }
    }
    if fibers.is_empty() {
        return Err(Failure::malformed("empty fiber list"));
    }
    Ok(fibers)
}

pub fn load(
    path: &str,
    window_flag: Option<usize>,
    pair_flag: Option<&str>,
    steps_flag: Option<usize>,
) -> Result<Job, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input("IO_ERROR", format!("{}: {}", path, e)))?;
    let raw: RawJob = serde_json::from_str(&text)
        .map_err(|e| Failure::input("BAD_JSON", format!("{}: {}", path, e)))?;

    let domain = raw.field.domain()?;
    if raw.vars.is_empty() {
        return Err(Failure::malformed(format!("{}: no variables declared", path)));
    }
    let var_refs: Vec<&str> = raw.vars.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(domain, &var_refs);

    let f = parse_poly(&ring, &raw.f)
        .map_err(|e| Failure::input(e.code(), format!("{}: in f: {}", path, e)))?;

    let mut matrices = BTreeMap::new();
    for (name, grid) in &raw.matrices {
        matrices.insert(name.clone(), parse_grid(path, &ring, name, grid)?);
    }

    let mut pairs: Vec<(String, String)> =
        raw.pairs.into_iter().map(|[a, b]| (a, b)).collect();
    if let Some(spec) = pair_flag {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 2 {
            return Err(Failure::malformed("--pair wants two comma-separated names"));
        }
        pairs = vec![(parts[0].trim().to_string(), parts[1].trim().to_string())];
    }

    let fibers = match raw.fibers {
        None => None,
        Some(list) => {
            let mut fibers = Vec::new();
            for raw_fiber in &list {
                fibers.push(raw_fiber.fiber()?);
            }
            Some(fibers)
        }
    };

    let window = window_flag.or(raw.window).unwrap_or(DEFAULT_WINDOW);
    if window < 2 {
        return Err(Failure::malformed("window must be at least 2"));
    }

    Ok(Job {
        path: path.to_string(),
        ring,
        f,
        matrices,
        pairs,
        fibers,
        window,
        steps: steps_flag.or(raw.steps),
    })
}

fn parse_grid(
    path: &str,
    ring: &PolyRing,
    name: &str,
    grid: &[Vec<String>],
) -> Result<PolyMatrix, Failure> {
    if grid.is_empty() || grid[0].is_empty() {
        return Err(Failure::malformed(format!("{}: matrix {:?} is empty", path, name)));
    }
    let cols = grid[0].len();
    let mut entries = Vec::with_capacity(grid.len() * cols);
    for (r, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(Failure::malformed(format!(
                "{}: matrix {:?} row {} has {} entries, row 0 has {}",
                path,
                name,
                r,
                row.len(),
                cols
            )));
        }
        for (c, text) in row.iter().enumerate() {
            let p = parse_poly(ring, text).map_err(|e| {
                Failure::input(
                    e.code(),
                    format!("{}: in matrix {:?} entry ({},{}): {}", path, name, r, c, e),
                )
            })?;
            entries.push(p);
        }
    }
    Ok(PolyMatrix::new(ring.clone(), grid.len(), cols, entries))
}

impl Job {
    pub fn ring_tag(&self) -> String {
        format!("{}[{}]/({})", self.ring.domain(), self.ring.vars().join(","), self.f)
    }

    pub fn require_field(&self, command: &str) -> Result<(), Failure> {
        if !self.ring.domain().is_field() {
            return Err(Failure::malformed(format!(
                "{} needs field coefficients, got {}",
                command,
                self.ring.domain()
            )));
        }
        Ok(())
    }

    pub fn require_integers(&self, command: &str) -> Result<(), Failure> {
        if *self.ring.domain() != CoeffDomain::Integers {
            return Err(Failure::malformed(format!(
                "{} runs over a ZZ base, got {}",
                command,
                self.ring.domain()
            )));
        }
        Ok(())
    }

    pub fn require_pairs(&self) -> Result<(), Failure> {
        if self.pairs.is_empty() {
            return Err(Failure::malformed(format!(
                "{}: no pairs to compute (give \"pairs\" or --pair)",
                self.path
            )));
        }
        Ok(())
    }

    pub fn grid(&self, name: &str) -> Result<&PolyMatrix, Failure> {
        self.matrices.get(name).ok_or_else(|| {
            Failure::malformed(format!("{}: no matrix named {:?}", self.path, name))
        })
    }

    /// Resolves a name to a matrix factorization. Square grids complete
    /// by the adjugate; non-square grids present a module and stabilize.
    /// The returned parity is the number of syzygy steps mod 2 (0 for a
    /// square grid), which shifts the homological degree of every
    /// reported dimension.
    pub fn mf(&self, name: &str) -> Result<(MatrixFactorization, u8), Failure> {
        let grid = self.grid(name)?;
        if grid.rows() == grid.cols() {
            let mf = MatrixFactorization::complete(grid.clone(), self.f.clone())?;
            return Ok((mf, 0));
        }
        if !self.ring.domain().is_field() {
            return Err(Failure::malformed(format!(
                "matrix {:?} is not square and stabilization needs field coefficients",
                name
            )));
        }
        let module = PresentedModule::new(self.f.clone(), grid.clone())?;
        let steps = self.steps.unwrap_or(self.ring.n_vars() + 1);
        if steps == 0 {
            return Err(Failure::malformed("steps must be at least 1"));
        }
        let (mf, parity) = stabilize(&module, steps)?;
        Ok((mf, parity))
    }

    /// Resolves a name to the cokernel of its grid, with no completion
    /// or stabilization. Used for the second slot of tor and ext.
    pub fn module(&self, name: &str) -> Result<PresentedModule, Failure> {
        let grid = self.grid(name)?;
        Ok(PresentedModule::new(self.f.clone(), grid.clone())?)
    }
}
