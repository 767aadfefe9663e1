//! Flat families over the integers: per-fiber validation, theta
//! constancy across fibers, and the lift-and-compare workflow for
//! factorizations given over a prime field.
//!
//! The base is always ZZ. A family fixes one primitive homogeneous f
//! and named matrix factorizations over ZZ; fibers are QQ or GF(p).
//! Specializing a ZZ factorization can only erase entries, never break
//! the identity, so each fiber either is a valid isolated singularity
//! with its own theta values or is skipped with a recorded reason.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::coeff::CoeffDomain;
use crate::exact::matrix::PolyMatrix;
use crate::exact::poly::{PolyRing, Polynomial};
use crate::groebner::KDim;
use crate::homology::HomologyError;
use crate::matrix_factorization::{lift_adjugate, MatrixFactorization, MfError};
use crate::milnor::tjurina_check;
use crate::theta::{self, ThetaReport};
use num::One;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberId {
    Rationals,
    PrimeField(u64),
}

impl FiberId {
    pub fn domain(&self) -> CoeffDomain {
        match self {
            FiberId::Rationals => CoeffDomain::Rationals,
            FiberId::PrimeField(p) => {
                CoeffDomain::prime_field(*p).expect("fiber primes are validated on construction")
            }
        }
    }
}

impl fmt::Display for FiberId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberId::Rationals => write!(out, "QQ"),
            FiberId::PrimeField(p) => write!(out, "GF({})", p),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("malformed family: {detail}")]
    SpecMalformed { detail: String },
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("no valid fiber to compare")]
    NoValidFibers,
}

impl FamilyError {
    pub fn code(&self) -> &'static str {
        match self {
            FamilyError::SpecMalformed { .. } => "SPEC_MALFORMED",
            FamilyError::Mf(e) => e.code(),
            FamilyError::Homology(e) => e.code(),
            FamilyError::NoValidFibers => "NO_VALID_FIBERS",
        }
    }
}

fn malformed(detail: impl Into<String>) -> FamilyError {
    FamilyError::SpecMalformed { detail: detail.into() }
}

/// One hypersurface over ZZ with named factorizations and the fibers to
/// compare. f must be primitive: a prime dividing every coefficient
/// would make C/(f) fail flatness over ZZ at that prime.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    ring: PolyRing,
    f: Polynomial,
    mfs: BTreeMap<String, MatrixFactorization>,
    fibers: Vec<FiberId>,
}

impl FamilySpec {
    pub fn new(
        f: Polynomial,
        mfs: Vec<(String, MatrixFactorization)>,
        fibers: Vec<FiberId>,
    ) -> Result<FamilySpec, FamilyError> {
        let ring = f.ring().clone();
        if *ring.domain() != CoeffDomain::Integers {
            return Err(malformed("family data must be given over ZZ"));
        }
        if f.is_zero() || f.is_constant() {
            return Err(malformed("f must be a nonzero nonunit form"));
        }
        if !f.is_homogeneous() {
            return Err(malformed("f must be homogeneous"));
        }
        if !f.integer_content().is_one() {
            return Err(malformed("f must be primitive over ZZ"));
        }
        if fibers.is_empty() {
            return Err(malformed("at least one fiber is required"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for fiber in &fibers {
            if !seen.insert(*fiber) {
                return Err(malformed(format!("fiber {} listed twice", fiber)));
            }
        }
        let mut map = BTreeMap::new();
        for (name, mf) in mfs {
            if *mf.ring() != ring {
                return Err(malformed(format!("factorization {} lives in a different ring", name)));
            }
            if mf.f() != &f {
                return Err(malformed(format!("factorization {} factors a different form", name)));
            }
            if map.insert(name.clone(), mf).is_some() {
                return Err(malformed(format!("factorization {} defined twice", name)));
            }
        }
        Ok(FamilySpec { ring, f, mfs: map, fibers })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn fibers(&self) -> &[FiberId] {
        &self.fibers
    }

    pub fn mf_names(&self) -> impl Iterator<Item = &str> {
        self.mfs.keys().map(|s| s.as_str())
    }

    pub fn mf(&self, name: &str) -> Option<&MatrixFactorization> {
        self.mfs.get(name)
    }

    pub fn fiber_ring(&self, fiber: FiberId) -> PolyRing {
        self.ring.with_domain(fiber.domain())
    }
}

#[derive(Clone, Debug)]
pub struct FiberValidation {
    pub fiber: FiberId,
    pub valid: bool,
    pub tjurina: KDim,
    /// Why the fiber was rejected; None on valid fibers.
    pub reason: Option<String>,
}

/// Per-fiber isolated-singularity check: specialize f, demand a finite
/// Tjurina dimension, and confirm every factorization still validates
/// after specialization.
pub fn validate_family(spec: &FamilySpec) -> Vec<FiberValidation> {
    spec.fibers()
        .iter()
        .map(|&fiber| {
            let target = spec.fiber_ring(fiber);
            let f = spec.f.specialize(&target);
            let tjurina = tjurina_check(&f);
            if tjurina == KDim::Infinite {
                return FiberValidation {
                    fiber,
                    valid: false,
                    tjurina,
                    reason: Some("Tjurina dimension is infinite".to_string()),
                };
            }
            for (name, mf) in &spec.mfs {
                if let Err(e) = mf.specialize(&target) {
                    return FiberValidation {
                        fiber,
                        valid: false,
                        tjurina,
                        reason: Some(format!("factorization {} fails on this fiber: {}", name, e)),
                    };
                }
            }
            FiberValidation { fiber, valid: true, tjurina, reason: None }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ConstancyReport {
    pair: (String, String),
    window: usize,
    per_fiber: Vec<(FiberId, ThetaReport)>,
    skipped: Vec<(FiberId, String)>,
    constant: bool,
}

impl ConstancyReport {
    pub fn pair(&self) -> (&str, &str) {
        (&self.pair.0, &self.pair.1)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn per_fiber(&self) -> &[(FiberId, ThetaReport)] {
        &self.per_fiber
    }

    pub fn skipped(&self) -> &[(FiberId, String)] {
        &self.skipped
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    /// The shared theta value across valid fibers; None when nonconstant.
    pub fn common_value(&self) -> Option<i64> {
        if self.constant {
            Some(self.per_fiber[0].1.value())
        } else {
            None
        }
    }
}

/// Theorem-level experiment: theta of the named pair on every valid
/// fiber. A nonconstant outcome on valid fibers is reported, not
/// papered over; the caller decides how loudly to fail.
pub fn theta_constancy(
    spec: &FamilySpec,
    pair: (&str, &str),
    window: usize,
) -> Result<ConstancyReport, FamilyError> {
    let mf_m = spec.mf(pair.0).ok_or_else(|| malformed(format!("unknown factorization {}", pair.0)))?;
    let mf_n = spec.mf(pair.1).ok_or_else(|| malformed(format!("unknown factorization {}", pair.1)))?;

    let mut per_fiber = Vec::new();
    let mut skipped = Vec::new();
    for v in validate_family(spec) {
        if !v.valid {
            skipped.push((v.fiber, v.reason.unwrap_or_else(|| "invalid fiber".to_string())));
            continue;
        }
        let target = spec.fiber_ring(v.fiber);
        let m = mf_m.specialize(&target)?;
        let n = mf_n.specialize(&target)?;
        let report = theta::theta(&m, &n, window, pair)?;
        per_fiber.push((v.fiber, report));
    }
    if per_fiber.is_empty() {
        return Err(FamilyError::NoValidFibers);
    }
    let first = per_fiber[0].1.value();
    let constant = per_fiber.iter().all(|(_, r)| r.value() == first);
    Ok(ConstancyReport {
        pair: (pair.0.to_string(), pair.1.to_string()),
        window,
        per_fiber,
        skipped,
        constant,
    })
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    /// Theta of the self-pair on the first valid fiber (they all agree
    /// when equal_across_fibers holds).
    pub theta: i64,
    pub equal_across_fibers: bool,
    pub sign_ok: bool,
    /// Dimension of the hypersurface: variables minus one.
    pub n: usize,
    pub f: Polynomial,
    pub skipped: Vec<(FiberId, String)>,
    pub constancy: ConstancyReport,
}

/// Lifts A over GF(p) to ZZ by symmetric representatives, completes it
/// with the adjugate, and compares theta(M,M) on the QQ and GF(p)
/// fibers. For odd n the sign prediction is checked: theta <= 0 when
/// n = 1 mod 4, theta >= 0 when n = 3 mod 4.
pub fn lift_and_compare(a: &PolyMatrix, window: usize) -> Result<LiftReport, FamilyError> {
    let p = match a.ring().domain() {
        CoeffDomain::PrimeField(p) => *p,
        _ => return Err(malformed("lift input must be over a prime field")),
    };
    let (a_lift, b_lift, f_lift) = lift_adjugate(a)?;
    let mf = MatrixFactorization::validate(a_lift, b_lift, f_lift.clone())?;
    let spec = FamilySpec::new(
        f_lift.clone(),
        vec![("M".to_string(), mf)],
        vec![FiberId::Rationals, FiberId::PrimeField(p)],
    )?;
    let constancy = theta_constancy(&spec, ("M", "M"), window)?;
    let theta = constancy.per_fiber()[0].1.value();
    let n = spec.ring().n_vars() - 1;
    let sign_ok = match n % 4 {
        1 => constancy.per_fiber().iter().all(|(_, r)| r.value() <= 0),
        3 => constancy.per_fiber().iter().all(|(_, r)| r.value() >= 0),
        _ => true,
    };
    Ok(LiftReport {
        theta,
        equal_across_fibers: constancy.constant(),
        sign_ok,
        n,
        f: f_lift,
        skipped: constancy.skipped().to_vec(),
        constancy,
    })
}
