//! Homogeneous matrix factorizations of a form f: pairs (A, B) of square
//! matrices over S with A*B = B*A = f*I, their cokernel presentations over
//! R = S/(f), direct sums, adjugate lifts from F_p to the integers,
//! rank-one detection, and stabilization of a presented module into a
//! matrix factorization by iterated syzygies.
//!
//! Twist conventions: A maps a free module with source twists e_1..e_m to
//! one with target twists d_1..d_m, so a nonzero entry a_{i,j} is
//! homogeneous of degree e_j - d_i, and B plays the same role with the
//! targets shifted up by deg f. Twists are inferred, never supplied, and
//! are normalized so the least target twist in each connected block of the
//! degree-constraint graph is zero.

use crate::exact::coeff::{Coeff, CoeffDomain};
use crate::exact::matrix::PolyMatrix;
use crate::exact::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::groebner::{self, ModOrder, ModuleElem};
use num::BigInt;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MfError {
    #[error("matrix factorization identity failed: {detail}")]
    MfIdentityFailed { detail: String },
    #[error("entry ({row},{col}) of {matrix} is not homogeneous")]
    InhomogeneousEntry { matrix: char, row: usize, col: usize },
    #[error("no twist assignment makes every nonzero entry degree-consistent")]
    NoConsistentTwists,
    #[error("f must be a nonzero homogeneous form of degree at least one")]
    FNotHomogeneous,
    #[error("direct summands factor different forms")]
    FMismatch,
    #[error("stabilization did not reach a matrix factorization: {detail}")]
    NotStabilized { detail: String },
    #[error("presented module relations are not homogeneous")]
    InhomogeneousInput,
    #[error("matrix is singular")]
    SingularMatrix,
}

impl MfError {
    pub fn code(&self) -> &'static str {
        match self {
            MfError::MfIdentityFailed { .. } => "MF_IDENTITY_FAILED",
            MfError::InhomogeneousEntry { .. } => "INHOMOGENEOUS_ENTRY",
            MfError::NoConsistentTwists => "NO_CONSISTENT_TWISTS",
            MfError::FNotHomogeneous => "F_NOT_HOMOGENEOUS",
            MfError::FMismatch => "F_MISMATCH",
            MfError::NotStabilized { .. } => "NOT_STABILIZED",
            MfError::InhomogeneousInput => "INHOMOGENEOUS_INPUT",
            MfError::SingularMatrix => "SINGULAR_MATRIX",
        }
    }
}

/// Solves e_col - d_row = w over the bipartite constraint graph. Each
/// connected component is normalized so its least row potential is zero
/// (least column potential when a component has no rows). None on an
/// inconsistent cycle.
fn solve_potentials(
    n_rows: usize,
    n_cols: usize,
    edges: &[(usize, usize, i64)],
) -> Option<(Vec<i64>, Vec<i64>)> {
    let n = n_rows + n_cols;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(r, c, w) in edges {
        adj[r].push((n_rows + c, w));
        adj[n_rows + c].push((r, -w));
    }
    let mut pot: Vec<Option<i64>> = vec![None; n];
    for start in 0..n {
        if pot[start].is_some() {
            continue;
        }
        pot[start] = Some(0);
        let mut component = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let pu = pot[u].unwrap();
            for &(v, w) in &adj[u] {
                match pot[v] {
                    Some(pv) => {
                        if pv != pu + w {
                            return None;
                        }
                    }
                    None => {
                        pot[v] = Some(pu + w);
                        component.push(v);
                        queue.push_back(v);
                    }
                }
            }
        }
        let rows_min = component.iter().filter(|&&u| u < n_rows).map(|&u| pot[u].unwrap()).min();
        let base =
            rows_min.unwrap_or_else(|| component.iter().map(|&u| pot[u].unwrap()).min().unwrap());
        for &u in &component {
            pot[u] = Some(pot[u].unwrap() - base);
        }
    }
    let d = (0..n_rows).map(|i| pot[i].unwrap()).collect();
    let e = (0..n_cols).map(|j| pot[n_rows + j].unwrap()).collect();
    Some((d, e))
}

#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    ring: PolyRing,
    f: Polynomial,
    a: PolyMatrix,
    b: PolyMatrix,
    source_twists: Vec<i64>,
    target_twists: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RankOneReport {
    pub det_a: Polynomial,
    pub rank_one: bool,
    pub warning: Option<String>,
}

impl MatrixFactorization {
    /// Checks A*B = B*A = f*I exactly, per-entry homogeneity, and twist
    /// consistency; the validated object carries the inferred twists.
    pub fn validate(
        a: PolyMatrix,
        b: PolyMatrix,
        f: Polynomial,
    ) -> Result<MatrixFactorization, MfError> {
        let ring = f.ring().clone();
        assert!(*a.ring() == ring && *b.ring() == ring, "matrices and f from different rings");
        assert!(
            a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
            "factorization needs square matrices of equal size"
        );
        if f.is_zero() || !f.is_homogeneous() || f.degree() == Some(0) {
            return Err(MfError::FNotHomogeneous);
        }
        let m = a.rows();
        let fid = PolyMatrix::scalar(f.clone(), m);
        for (left, right, label) in [(&a, &b, "A*B"), (&b, &a, "B*A")] {
            let prod = left.mul(right);
            for r in 0..m {
                for c in 0..m {
                    if prod.at(r, c) != fid.at(r, c) {
                        return Err(MfError::MfIdentityFailed {
                            detail: format!(
                                "({label})[{r}][{c}] = {}, expected {}",
                                prod.at(r, c),
                                fid.at(r, c)
                            ),
                        });
                    }
                }
            }
        }
        for (mat, name) in [(&a, 'A'), (&b, 'B')] {
            for r in 0..m {
                for c in 0..m {
                    if !mat.at(r, c).is_homogeneous() {
                        return Err(MfError::InhomogeneousEntry { matrix: name, row: r, col: c });
                    }
                }
            }
        }
        let fdeg = f.degree().unwrap() as i64;
        let mut edges = Vec::new();
        for r in 0..m {
            for c in 0..m {
                if let Some(deg) = a.at(r, c).degree() {
                    edges.push((r, c, deg as i64));
                }
                // b_{j,i} lives between the same pair with the shifted rule:
                // deg b_{j,i} = d_i + deg f - e_j.
                if let Some(deg) = b.at(r, c).degree() {
                    edges.push((c, r, fdeg - deg as i64));
                }
            }
        }
        let (target_twists, source_twists) =
            solve_potentials(m, m, &edges).ok_or(MfError::NoConsistentTwists)?;
        Ok(MatrixFactorization { ring, f, a, b, source_twists, target_twists })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source_twists
    }

    pub fn target_twists(&self) -> &[i64] {
        &self.target_twists
    }

    /// coker(A) over R = S/(f), with the twist data of the factorization.
    pub fn cokernel(&self) -> PresentedModule {
        PresentedModule {
            ring: self.ring.clone(),
            f: self.f.clone(),
            rank: self.size(),
            shifts: self.target_twists.clone(),
            relations: self.a.clone(),
        }
    }

    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<MatrixFactorization, MfError> {
        if self.ring != other.ring || self.f != other.f {
            return Err(MfError::FMismatch);
        }
        let a = self.a.block_diag(&other.a);
        let b = self.b.block_diag(&other.b);
        Ok(Self::validate(a, b, self.f.clone()).expect("direct sum of valid factorizations"))
    }

    /// det(A) = c*f for a nonzero scalar c exactly when the cokernel has
    /// rank one; that reading assumes f irreducible, so a warning flags
    /// the cheap reducibility we can detect (a variable factor).
    pub fn is_rank_one(&self) -> RankOneReport {
        let det_a = self.a.det().expect("square by construction");
        let rank_one =
            det_a.div_exact(&self.f).map_or(false, |q| q.is_constant() && !q.is_zero());
        let warning = reducible_variable(&self.f).map(|v| {
            format!("f is divisible by the variable {v}; det(A) = c*f is cited for irreducible f")
        });
        RankOneReport { det_a, rank_one, warning }
    }

    /// Specializes integer data to a fiber and re-validates there.
    pub fn specialize(&self, target: &PolyRing) -> Result<MatrixFactorization, MfError> {
        Self::validate(
            self.a.specialize(target),
            self.b.specialize(target),
            self.f.specialize(target),
        )
    }

    /// Completes a single matrix: A*B = f*I forces B = f*adj(A)/det(A),
    /// so existence reduces to entry-wise exact division. Works over the
    /// integers as well, where a fractional B means no integral partner.
    pub fn complete(a: PolyMatrix, f: Polynomial) -> Result<MatrixFactorization, MfError> {
        assert!(a.rows() == a.cols(), "completion needs a square matrix");
        let (adj, det) = a.adjugate_det().expect("square");
        if det.is_zero() {
            return Err(MfError::SingularMatrix);
        }
        let m = a.rows();
        let mut b = PolyMatrix::zero(a.ring().clone(), m, m);
        for r in 0..m {
            for c in 0..m {
                let num = f.mul(adj.at(r, c));
                match num.div_exact(&det) {
                    Some(q) => *b.at_mut(r, c) = q,
                    None => {
                        return Err(MfError::MfIdentityFailed {
                            detail: format!(
                                "no B with A*B = f*I: entry ({r},{c}) of f*adj(A) is not divisible by det(A)"
                            ),
                        })
                    }
                }
            }
        }
        Self::validate(a, b, f)
    }
}

fn reducible_variable(f: &Polynomial) -> Option<String> {
    if f.degree().map_or(true, |d| d < 2) {
        return None;
    }
    let ring = f.ring();
    'vars: for v in 0..ring.n_vars() {
        for (m, _) in f.terms() {
            if m.0[v] == 0 {
                continue 'vars;
            }
        }
        return Some(ring.vars()[v].clone());
    }
    None
}

/// Lifts an F_p matrix to the integers by symmetric representatives
/// (residue r goes to r when r <= p/2, else r - p) and completes by the
/// adjugate: returns (A~, adj(A~), det(A~)) with A~*adj(A~) = det(A~)*I.
pub fn lift_adjugate(a: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix, Polynomial), MfError> {
    let p = match a.ring().domain() {
        CoeffDomain::PrimeField(p) => *p,
        _ => panic!("adjugate lift starts from a prime field"),
    };
    assert!(a.rows() == a.cols(), "adjugate lift needs a square matrix");
    let zring = a.ring().with_domain(CoeffDomain::Integers);
    let lift = |q: &Polynomial| {
        let mut out = zring.zero();
        for (m, c) in q.terms() {
            let r = match c {
                Coeff::Mod(r) => *r,
                _ => unreachable!(),
            };
            let v = if r <= p / 2 { BigInt::from(r) } else { BigInt::from(r) - BigInt::from(p) };
            out.add_term(m.clone(), Coeff::Int(v));
        }
        out
    };
    let mut az = PolyMatrix::zero(zring.clone(), a.rows(), a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            *az.at_mut(r, c) = lift(a.at(r, c));
        }
    }
    let (adj, det) = az.adjugate_det().expect("square");
    if det.specialize(a.ring()).is_zero() {
        return Err(MfError::SingularMatrix);
    }
    Ok((az, adj, det))
}

/// A graded module over R = S/(f) presented as the cokernel of a
/// relations matrix read modulo f. Row shifts are inferred like twists.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: PolyRing,
    f: Polynomial,
    rank: usize,
    shifts: Vec<i64>,
    relations: PolyMatrix,
}

impl PresentedModule {
    pub fn new(f: Polynomial, relations: PolyMatrix) -> Result<PresentedModule, MfError> {
        let ring = f.ring().clone();
        assert!(*relations.ring() == ring, "relations from a different ring");
        assert!(relations.rows() >= 1, "ambient rank must be positive");
        if f.is_zero() || !f.is_homogeneous() || f.degree() == Some(0) {
            return Err(MfError::FNotHomogeneous);
        }
        if !relations.is_homogeneous() {
            return Err(MfError::InhomogeneousInput);
        }
        let mut edges = Vec::new();
        for r in 0..relations.rows() {
            for c in 0..relations.cols() {
                if let Some(deg) = relations.at(r, c).degree() {
                    edges.push((r, c, deg as i64));
                }
            }
        }
        let (shifts, _) = solve_potentials(relations.rows(), relations.cols(), &edges)
            .ok_or(MfError::NoConsistentTwists)?;
        Ok(PresentedModule { ring, f, rank: relations.rows(), shifts, relations })
    }

    pub fn free(f: Polynomial, rank: usize) -> Result<PresentedModule, MfError> {
        let ring = f.ring().clone();
        let relations = PolyMatrix::zero(ring, rank, 0);
        PresentedModule::new(f, relations)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// Relation columns plus f times each basis vector: the S-submodule D
    /// with this module equal to S^rank / D.
    pub fn s_relations(&self) -> PolyMatrix {
        self.relations.hcat(&PolyMatrix::scalar(self.f.clone(), self.rank))
    }
}

/// Runs `steps` syzygy steps over R on the presentation, lifts the final
/// differential to S (entries in normal form against f), and completes it
/// to a factorization of f. coker(mf) is then the steps-th syzygy of the
/// input, so theta(input, N) = (-1)^parity * theta(coker(mf), N).
pub fn stabilize(
    m: &PresentedModule,
    steps: usize,
) -> Result<(MatrixFactorization, u8), MfError> {
    assert!(steps >= 1, "at least one syzygy step");
    assert!(m.ring.domain().is_field(), "stabilization runs over field coefficients");
    let parity = (steps % 2) as u8;
    let f = m.f.clone();
    let mut d = reduce_columns_mod_f(&m.relations, &f);
    for _ in 0..steps {
        if d.cols() == 0 {
            return Ok((trivial_mf(&f), parity));
        }
        d = syzygy_step(&d, &f);
    }
    if d.cols() == 0 {
        return Ok((trivial_mf(&f), parity));
    }
    if d.rows() != d.cols() {
        return Err(MfError::NotStabilized {
            detail: format!(
                "differential is {}x{} after {steps} steps; increase steps",
                d.rows(),
                d.cols()
            ),
        });
    }
    MatrixFactorization::complete(d, f)
        .map(|mf| (mf, parity))
        .map_err(|e| MfError::NotStabilized { detail: format!("final differential: {e}") })
}

/// Syzygies of coker(f: R -> R) vanish; the stable object is the trivial
/// factorization (f, 1), whose cokernel is R itself.
fn trivial_mf(f: &Polynomial) -> MatrixFactorization {
    let ring = f.ring().clone();
    let a = PolyMatrix::scalar(f.clone(), 1);
    let b = PolyMatrix::identity(ring, 1);
    MatrixFactorization::validate(a, b, f.clone()).expect("(f, 1) factors f")
}

fn nf_mod_f(p: &Polynomial, f: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let ring = p.ring().clone();
    let (_, lc) = f.leading_term(MonomialOrder::GrevLex).expect("nonzero f");
    let monic = f.scale(&ring.domain().inv(lc).expect("field coefficient"));
    let basis = [ModuleElem::new(vec![monic])];
    let ord = ModOrder::plain(MonomialOrder::GrevLex, 1);
    groebner::normal_form_with(&ModuleElem::new(vec![p.clone()]), &basis, &ord).comps()[0].clone()
}

fn reduce_columns_mod_f(m: &PolyMatrix, f: &Polynomial) -> PolyMatrix {
    let mut cols = Vec::new();
    for j in 0..m.cols() {
        let col: Vec<Polynomial> = (0..m.rows()).map(|r| nf_mod_f(m.at(r, j), f)).collect();
        if col.iter().any(|p| !p.is_zero()) {
            cols.push(col);
        }
    }
    PolyMatrix::from_columns(m.ring().clone(), m.rows(), cols)
}

/// One R-syzygy step: S-syzygies of [d | f*I] project onto the R-syzygies
/// of the columns of d; entries are reduced against f and the generating
/// set is pruned to an irredundant one.
fn syzygy_step(d: &PolyMatrix, f: &Polynomial) -> PolyMatrix {
    let ext = d.hcat(&PolyMatrix::scalar(f.clone(), d.rows()));
    let syz = groebner::syzygy(&ext);
    let c = d.cols();
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for j in 0..syz.cols() {
        let col: Vec<Polynomial> = (0..c).map(|r| nf_mod_f(syz.at(r, j), f)).collect();
        if col.iter().any(|p| !p.is_zero()) {
            cols.push(col);
        }
    }
    cols.sort_by(|x, y| column_key(x).cmp(&column_key(y)));
    cols.dedup();
    minimalize_columns(d.ring().clone(), c, cols, f)
}

fn column_key(col: &[Polynomial]) -> String {
    col.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
}

/// Greedy irredundant generating set over R, iterated to a fixed point.
/// Membership in the span of the rest is membership over S with the f
/// multiples of the basis adjoined.
fn minimalize_columns(
    ring: PolyRing,
    rank: usize,
    mut cols: Vec<Vec<Polynomial>>,
    f: &Polynomial,
) -> PolyMatrix {
    loop {
        let mut dropped = false;
        let mut i = 0;
        while i < cols.len() {
            let others: Vec<Vec<Polynomial>> = cols
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, col)| col.clone())
                .collect();
            let others_m = PolyMatrix::from_columns(ring.clone(), rank, others)
                .hcat(&PolyMatrix::scalar(f.clone(), rank));
            if groebner::express_in_columns(&others_m, &cols[i]).is_some() {
                cols.remove(i);
                dropped = true;
            } else {
                i += 1;
            }
        }
        if !dropped {
            break;
        }
    }
    PolyMatrix::from_columns(ring, rank, cols)
}
