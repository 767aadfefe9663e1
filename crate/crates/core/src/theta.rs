//! The theta pairing, the Herbrand difference, and the rigidity scanner.
//!
//! Both pairings read off a stable even-minus-odd difference from a
//! TorProfile: indices 1 and 2 are already stable for factorization
//! cokernels, and the retained window makes periodicity auditable.

use crate::homology::{self, HomologyError, TorProfile};
use crate::matrix_factorization::{MatrixFactorization, PresentedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingKind {
    Theta,
    Herbrand,
}

impl PairingKind {
    pub fn label(self) -> &'static str {
        match self {
            PairingKind::Theta => "theta",
            PairingKind::Herbrand => "herbrand",
        }
    }
}

/// Invariant: value = even_dim - odd_dim, the stable degrees 2 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    kind: PairingKind,
    value: i64,
    even_dim: u64,
    odd_dim: u64,
    profile: TorProfile,
}

impl ThetaReport {
    fn from_profile(kind: PairingKind, profile: TorProfile) -> ThetaReport {
        let even_dim = profile.at(2);
        let odd_dim = profile.at(1);
        ThetaReport {
            kind,
            value: even_dim as i64 - odd_dim as i64,
            even_dim,
            odd_dim,
            profile,
        }
    }

    pub fn kind(&self) -> PairingKind {
        self.kind
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn even_dim(&self) -> u64 {
        self.even_dim
    }

    pub fn odd_dim(&self) -> u64 {
        self.odd_dim
    }

    pub fn profile(&self) -> &TorProfile {
        &self.profile
    }

    pub fn dims(&self) -> &[u64] {
        self.profile.dims()
    }

    pub fn window(&self) -> usize {
        self.profile.window()
    }
}

/// theta(M,N) with N taken as the cokernel of its factorization.
pub fn theta(
    mf_m: &MatrixFactorization,
    mf_n: &MatrixFactorization,
    window: usize,
    pair: (&str, &str),
) -> Result<ThetaReport, HomologyError> {
    theta_with_module(mf_m, &mf_n.cokernel(), window, pair)
}

pub fn theta_with_module(
    mf_m: &MatrixFactorization,
    n: &PresentedModule,
    window: usize,
    pair: (&str, &str),
) -> Result<ThetaReport, HomologyError> {
    let profile = homology::tor_dims(mf_m, n, window, pair)?;
    Ok(ThetaReport::from_profile(PairingKind::Theta, profile))
}

pub fn herbrand(
    mf_m: &MatrixFactorization,
    mf_n: &MatrixFactorization,
    window: usize,
    pair: (&str, &str),
) -> Result<ThetaReport, HomologyError> {
    herbrand_with_module(mf_m, &mf_n.cokernel(), window, pair)
}

pub fn herbrand_with_module(
    mf_m: &MatrixFactorization,
    n: &PresentedModule,
    window: usize,
    pair: (&str, &str),
) -> Result<ThetaReport, HomologyError> {
    let profile = homology::ext_dims(mf_m, n, window, pair)?;
    Ok(ThetaReport::from_profile(PairingKind::Herbrand, profile))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    /// theta = 0 and the scanned window is consistent with rigidity:
    /// once Tor vanishes it stays zero. first_vanishing is None when no
    /// degree in the window vanishes (the vacuous case).
    Consistent { first_vanishing: Option<usize> },
    /// theta = 0 yet some Tor reappears after a vanishing degree. This
    /// would contradict rigidity of theta-zero pairs.
    Violation { vanishes_at: usize, nonzero_at: usize },
    /// theta != 0: the rigidity criterion does not apply.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    theta: ThetaReport,
    verdict: RigidityVerdict,
}

impl RigidityReport {
    pub fn theta(&self) -> &ThetaReport {
        &self.theta
    }

    pub fn verdict(&self) -> &RigidityVerdict {
        &self.verdict
    }
}

/// Scans Tor degrees 1..window for a pair with theta = 0: after the
/// first vanishing degree every later degree must vanish too.
pub fn rigidity_scan(
    mf_m: &MatrixFactorization,
    mf_n: &MatrixFactorization,
    window: usize,
    pair: (&str, &str),
) -> Result<RigidityReport, HomologyError> {
    assert!(window >= 4, "rigidity scan needs at least four degrees");
    let theta = theta(mf_m, mf_n, window, pair)?;
    if theta.value() != 0 {
        return Ok(RigidityReport { theta, verdict: RigidityVerdict::NotApplicable });
    }
    let first_vanishing = (1..=window).find(|&i| theta.profile().at(i) == 0);
    let verdict = match first_vanishing {
        None => RigidityVerdict::Consistent { first_vanishing: None },
        Some(n) => {
            match (n..=window).find(|&i| theta.profile().at(i) != 0) {
                Some(bad) => RigidityVerdict::Violation { vanishes_at: n, nonzero_at: bad },
                None => RigidityVerdict::Consistent { first_vanishing: Some(n) },
            }
        }
    };
    Ok(RigidityReport { theta, verdict })
}
