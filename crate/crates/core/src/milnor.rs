//! Milnor and Tjurina algebras and the residue pairing on the Milnor
//! algebra of a homogeneous isolated singularity.
//!
//! The residue functional is realized through the socle: the Milnor
//! algebra of an isolated f is an artinian complete intersection, its
//! top graded piece is one-dimensional, and the normal form of the
//! hessian is a nonzero multiple of the socle monomial. Normalizing
//! Res(hessian) = mu pins the functional exactly; every pairing value
//! is then a normal-form coefficient times a fixed scalar.

use crate::exact::coeff::Coeff;
use crate::exact::matrix::PolyMatrix;
use crate::exact::poly::{Monomial, Polynomial};
use crate::groebner::{self, FreeModule, KDim, ModuleElem, Submodule};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MilnorError {
    #[error("the Jacobian ideal does not have finite codimension")]
    NotIsolated,
    #[error("the hessian reduces to zero in the Milnor algebra")]
    SocleDegenerate,
}

impl MilnorError {
    pub fn code(&self) -> &'static str {
        match self {
            MilnorError::NotIsolated => "NOT_ISOLATED",
            MilnorError::SocleDegenerate => "SOCLE_DEGENERATE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MilnorAlgebra {
    f: Polynomial,
    jacobian: Vec<Polynomial>,
    basis: Vec<Monomial>,
    mu: u64,
    socle_degree: u64,
    socle_generator: Polynomial,
    residue_of_socle: Coeff,
    jideal: Submodule,
}

impl MilnorAlgebra {
    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn jacobian(&self) -> &[Polynomial] {
        &self.jacobian
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn socle_degree(&self) -> u64 {
        self.socle_degree
    }

    pub fn socle_generator(&self) -> &Polynomial {
        &self.socle_generator
    }

    pub fn residue_of_socle(&self) -> &Coeff {
        &self.residue_of_socle
    }

    /// Image of p in the Milnor algebra, written on the standard
    /// monomial basis.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut comps = vec![p.ring().zero(); 1];
        comps[0] = p.clone();
        self.jideal.normal_form(&ModuleElem::new(comps)).comp(0).clone()
    }
}

pub fn hessian(f: &Polynomial) -> Polynomial {
    let ring = f.ring().clone();
    let n = ring.n_vars();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let di = f.derivative(i);
        for j in 0..n {
            entries.push(di.derivative(j));
        }
    }
    PolyMatrix::new(ring, n, n, entries).det().expect("square by construction")
}

pub fn milnor_mu(f: &Polynomial) -> Result<MilnorAlgebra, MilnorError> {
    let ring = f.ring().clone();
    assert!(ring.domain().is_field(), "Milnor algebras need field coefficients");
    assert!(f.is_homogeneous(), "f must be homogeneous");
    assert!(!f.is_zero() && f.degree() != Some(0), "f must be a nonunit form");

    let jacobian: Vec<Polynomial> = (0..ring.n_vars()).map(|i| f.derivative(i)).collect();
    let amb = FreeModule::new(ring.clone(), 1);
    let jideal = Submodule::new(
        amb.clone(),
        jacobian.iter().map(|p| ModuleElem::new(vec![p.clone()])).collect(),
    );
    let monomials = groebner::subquotient_monomials(&Submodule::full(amb), &jideal)
        .expect("field coefficients checked above");
    let basis: Vec<Monomial> = match monomials {
        Some(ms) => ms.into_iter().map(|(_, m)| m).collect(),
        None => return Err(MilnorError::NotIsolated),
    };
    let mu = basis.len() as u64;

    let weights = ring.weights().to_vec();
    let socle_degree = basis.iter().map(|m| m.weighted_degree(&weights)).max().unwrap();
    let top: Vec<&Monomial> =
        basis.iter().filter(|m| m.weighted_degree(&weights) == socle_degree).collect();
    assert_eq!(top.len(), 1, "complete intersection socle must be one-dimensional");
    let socle = top[0].clone();
    let socle_generator = ring.monomial_term(socle.clone(), ring.domain().one());

    // NF of the homogeneous hessian lives in the unique top-degree
    // standard monomial, so it is an exact scalar multiple of the socle.
    let hess = hessian(f);
    let nf = {
        let mut comps = vec![ring.zero(); 1];
        comps[0] = hess;
        jideal.normal_form(&ModuleElem::new(comps)).comp(0).clone()
    };
    if nf.is_zero() {
        return Err(MilnorError::SocleDegenerate);
    }
    debug_assert_eq!(nf.n_terms(), 1);
    let c = nf.coeff(&socle);
    let domain = ring.domain().clone();
    let residue_of_socle = domain
        .div_exact(&domain.from_i64(mu as i64), &c)
        .expect("socle coefficient is a nonzero field element");

    Ok(MilnorAlgebra {
        f: f.clone(),
        jacobian,
        basis,
        mu,
        socle_degree,
        socle_generator,
        residue_of_socle,
        jideal,
    })
}

/// <g,h> = Res(g*h): the socle coefficient of the normal form of the
/// product, scaled by the residue of the socle monomial.
pub fn residue_pair(g: &Polynomial, h: &Polynomial, alg: &MilnorAlgebra) -> Coeff {
    let ring = alg.f.ring();
    assert!(*g.ring() == *ring && *h.ring() == *ring);
    let nf = alg.reduce(&g.mul(h));
    let socle = alg.socle_generator.terms().next().expect("socle is a monomial").0.clone();
    ring.domain().mul(&nf.coeff(&socle), &alg.residue_of_socle)
}

/// k-dimension of the Tjurina algebra S/(f, all partials). INFINITE is
/// a legitimate value here: it flags a fiber whose singularity is not
/// isolated, e.g. in bad characteristic.
pub fn tjurina_check(f: &Polynomial) -> KDim {
    let ring = f.ring().clone();
    assert!(ring.domain().is_field(), "Tjurina check needs field coefficients");
    assert!(f.is_homogeneous(), "f must be homogeneous");
    let amb = FreeModule::new(ring.clone(), 1);
    let mut gens = vec![ModuleElem::new(vec![f.clone()])];
    for i in 0..ring.n_vars() {
        gens.push(ModuleElem::new(vec![f.derivative(i)]));
    }
    let ideal = Submodule::new(amb.clone(), gens);
    groebner::k_dimension(&Submodule::full(amb), &ideal)
        .expect("field coefficients checked above")
}
