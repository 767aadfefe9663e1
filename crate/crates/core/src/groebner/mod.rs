//! Groebner machinery for submodules of graded free modules: reduced
//! bases, normal forms, syzygies, and k-dimensions of subquotients.
//!
//! The default order is graded reverse lexicographic with the
//! position-over-term module extension. Quotient-ring computations are
//! realized upstairs: callers append f times the ambient basis to the
//! relations.

mod buchberger;
mod cache;
mod dimension;
mod elem;

pub use elem::{ModOrder, ModuleElem};

use crate::exact::matrix::PolyMatrix;
use crate::exact::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("k-dimension needs field coefficients")]
    CoeffDomainNotField,
}

impl GroebnerError {
    pub fn code(&self) -> &'static str {
        match self {
            GroebnerError::CoeffDomainNotField => "COEFF_DOMAIN_NOT_FIELD",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KDim {
    Finite(u64),
    Infinite,
}

impl KDim {
    pub fn finite(&self) -> Option<u64> {
        match self {
            KDim::Finite(n) => Some(*n),
            KDim::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: PolyRing,
    rank: usize,
    shifts: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: PolyRing, rank: usize) -> FreeModule {
        FreeModule { ring, rank, shifts: vec![0; rank] }
    }

    pub fn with_shifts(ring: PolyRing, shifts: Vec<i64>) -> FreeModule {
        let rank = shifts.len();
        FreeModule { ring, rank, shifts }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn order(&self) -> ModOrder {
        ModOrder::with_shifts(MonomialOrder::GrevLex, self.shifts.clone())
    }

    pub fn basis_elem(&self, i: usize) -> ModuleElem {
        let mut e = ModuleElem::zero(&self.ring, self.rank);
        e.add_term(i, Monomial::unit(self.ring.n_vars()), self.ring.domain().one());
        e
    }
}

#[derive(Clone, Debug)]
pub struct Submodule {
    ambient: FreeModule,
    gens: Vec<ModuleElem>,
    basis: OnceLock<Arc<Vec<ModuleElem>>>,
}

impl Submodule {
    pub fn new(ambient: FreeModule, gens: Vec<ModuleElem>) -> Submodule {
        let gens: Vec<ModuleElem> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.rank(), ambient.rank());
            assert!(*g.ring() == *ambient.ring());
        }
        Submodule { ambient, gens, basis: OnceLock::new() }
    }

    /// The whole free module, generated by the coordinate basis.
    pub fn full(ambient: FreeModule) -> Submodule {
        let gens = (0..ambient.rank()).map(|i| ambient.basis_elem(i)).collect();
        Submodule::new(ambient, gens)
    }

    /// Generators are the matrix columns.
    pub fn from_columns(ambient: FreeModule, m: &PolyMatrix) -> Submodule {
        assert_eq!(m.rows(), ambient.rank());
        let gens = (0..m.cols()).map(|c| ModuleElem::new(m.column(c))).collect();
        Submodule::new(ambient, gens)
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn gens(&self) -> &[ModuleElem] {
        &self.gens
    }

    /// Reduced basis under the default order, cached per submodule and in
    /// the process-wide table.
    pub fn basis(&self) -> &[ModuleElem] {
        self.basis
            .get_or_init(|| {
                let ord = self.ambient.order();
                cache::lookup_or_compute(
                    self.ambient.ring(),
                    &ord,
                    self.ambient.rank(),
                    &self.gens,
                    || buchberger::buchberger(&self.gens, &ord),
                )
            })
            .as_ref()
    }

    pub fn normal_form(&self, v: &ModuleElem) -> ModuleElem {
        buchberger::normal_form(v, self.basis(), &self.ambient.order())
    }

    pub fn contains(&self, v: &ModuleElem) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Leading-term exponent vectors per ambient position.
    fn leading_exponents(&self) -> Vec<Vec<Vec<u32>>> {
        let ord = self.ambient.order();
        let mut per_pos: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.ambient.rank()];
        for g in self.basis() {
            let (pos, m, _) = g.leading(&ord).unwrap();
            per_pos[pos].push(m.0.clone());
        }
        per_pos
    }
}

/// Reduced basis for an explicit order; bypasses the per-submodule cache.
pub fn groebner_basis_with(gens: &[ModuleElem], ord: &ModOrder) -> Vec<ModuleElem> {
    buchberger::buchberger(gens, ord)
}

pub fn normal_form_with(v: &ModuleElem, basis: &[ModuleElem], ord: &ModOrder) -> ModuleElem {
    buchberger::normal_form(v, basis, ord)
}

/// k-dimension of numerator/denominator for nested submodules of a common
/// ambient module. INFINITE is a value, not an error.
pub fn k_dimension(num: &Submodule, den: &Submodule) -> Result<KDim, GroebnerError> {
    if !num.ambient().ring().domain().is_field() {
        return Err(GroebnerError::CoeffDomainNotField);
    }
    assert_eq!(num.ambient(), den.ambient(), "subquotient needs a common ambient module");
    debug_assert!(
        den.gens().iter().all(|g| num.contains(g)),
        "denominator is not contained in the numerator"
    );
    let nvars = num.ambient().ring().n_vars();
    let upper = num.leading_exponents();
    let lower = den.leading_exponents();
    let mut total = 0u64;
    for pos in 0..num.ambient().rank() {
        match dimension::monomials_between(nvars, &upper[pos], &lower[pos]) {
            Some(ms) => total += ms.len() as u64,
            None => return Ok(KDim::Infinite),
        }
    }
    Ok(KDim::Finite(total))
}

/// Monomial basis of the subquotient: (position, monomial) pairs, sorted.
/// None when the dimension is infinite.
pub fn subquotient_monomials(
    num: &Submodule,
    den: &Submodule,
) -> Result<Option<Vec<(usize, Monomial)>>, GroebnerError> {
    if !num.ambient().ring().domain().is_field() {
        return Err(GroebnerError::CoeffDomainNotField);
    }
    let nvars = num.ambient().ring().n_vars();
    let upper = num.leading_exponents();
    let lower = den.leading_exponents();
    let weights = num.ambient().ring().weights().to_vec();
    let mut out = Vec::new();
    for pos in 0..num.ambient().rank() {
        match dimension::monomials_between(nvars, &upper[pos], &lower[pos]) {
            Some(ms) => out.extend(ms.into_iter().map(|e| (pos, Monomial(e)))),
            None => return Ok(None),
        }
    }
    out.sort_by(|(pa, ma), (pb, mb)| {
        pa.cmp(pb).then_with(|| MonomialOrder::GrevLex.cmp(&weights, ma, mb))
    });
    Ok(Some(out))
}

/// Column syzygies: the returned matrix S satisfies m * S = 0 exactly and
/// its columns generate the full syzygy module of the columns of m.
/// Computed with an elimination order on ambient-plus-tracking positions.
pub fn syzygy(m: &PolyMatrix) -> PolyMatrix {
    let ring = m.ring().clone();
    let rows = m.rows();
    let cols = m.cols();
    if cols == 0 {
        return PolyMatrix::zero(ring, 0, 0);
    }
    let rank = rows + cols;
    let ord = ModOrder::eliminating(MonomialOrder::GrevLex, rank, rows);
    let mut gens = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut comps = m.column(j);
        for t in 0..cols {
            comps.push(if t == j { ring.one() } else { ring.zero() });
        }
        gens.push(ModuleElem::new(comps));
    }
    let basis = cache::lookup_or_compute(&ring, &ord, rank, &gens, || {
        buchberger::buchberger(&gens, &ord)
    });
    let mut syz_cols: Vec<Vec<Polynomial>> = Vec::new();
    for e in basis.iter() {
        if e.comps()[..rows].iter().all(|p| p.is_zero()) {
            syz_cols.push(e.comps()[rows..].to_vec());
        }
    }
    PolyMatrix::from_columns(ring, cols, syz_cols)
}

/// Expresses `target` as a polynomial combination of the columns of m:
/// m * q = target. None when target is outside the column span.
pub fn express_in_columns(m: &PolyMatrix, target: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let ring = m.ring().clone();
    let rows = m.rows();
    let cols = m.cols();
    assert_eq!(target.len(), rows);
    if cols == 0 {
        return if target.iter().all(|p| p.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let rank = rows + cols;
    let ord = ModOrder::eliminating(MonomialOrder::GrevLex, rank, rows);
    let mut gens = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut comps = m.column(j);
        for t in 0..cols {
            comps.push(if t == j { ring.one() } else { ring.zero() });
        }
        gens.push(ModuleElem::new(comps));
    }
    let basis = cache::lookup_or_compute(&ring, &ord, rank, &gens, || {
        buchberger::buchberger(&gens, &ord)
    });
    let mut comps = target.to_vec();
    for _ in 0..cols {
        comps.push(ring.zero());
    }
    let r = buchberger::normal_form(&ModuleElem::new(comps), &basis, &ord);
    if r.comps()[..rows].iter().any(|p| !p.is_zero()) {
        return None;
    }
    Some(r.comps()[rows..].iter().map(|p| p.neg()).collect())
}
