//! Sparse multivariate polynomials over an explicit coefficient domain.
//!
//! A ring fixes the domain, an ordered list of variable names, and one
//! positive weight per variable; the weights grade every degree
//! computation below. Polynomials store exponent tuple -> nonzero
//! coefficient, so the zero polynomial is the empty map and equality is
//! structural.

use crate::exact::coeff::{Coeff, CoeffDomain};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct RingInner {
    domain: CoeffDomain,
    vars: Vec<String>,
    weights: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingInner>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.domain == other.0.domain
                && self.0.vars == other.0.vars
                && self.0.weights == other.0.weights)
    }
}
impl Eq for PolyRing {}

impl PolyRing {
    /// Standard grading: every variable has weight 1.
    pub fn new(domain: CoeffDomain, vars: &[&str]) -> PolyRing {
        let weights = vec![1; vars.len()];
        PolyRing::weighted(domain, vars, &weights)
    }

    pub fn weighted(domain: CoeffDomain, vars: &[&str], weights: &[u64]) -> PolyRing {
        assert_eq!(vars.len(), weights.len(), "one weight per variable");
        assert!(weights.iter().all(|w| *w > 0), "weights must be positive");
        PolyRing(Arc::new(RingInner {
            domain,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
        }))
    }

    pub fn domain(&self) -> &CoeffDomain {
        &self.0.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn weights(&self) -> &[u64] {
        &self.0.weights
    }

    pub fn n_vars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Same variables and weights over a different coefficient domain.
    pub fn with_domain(&self, domain: CoeffDomain) -> PolyRing {
        PolyRing(Arc::new(RingInner {
            domain,
            vars: self.0.vars.clone(),
            weights: self.0.weights.clone(),
        }))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.domain().one())
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(self.n_vars()), c);
        }
        Polynomial { ring: self.clone(), terms }
    }

    pub fn constant_i64(&self, n: i64) -> Polynomial {
        self.constant(self.domain().from_i64(n))
    }

    pub fn var(&self, index: usize) -> Polynomial {
        assert!(index < self.n_vars());
        let mut exps = vec![0u32; self.n_vars()];
        exps[index] = 1;
        self.monomial_term(Monomial(exps), self.domain().one())
    }

    pub fn monomial_term(&self, m: Monomial, c: Coeff) -> Polynomial {
        assert_eq!(m.0.len(), self.n_vars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: self.clone(), terms }
    }
}

/// Exponent tuple. Length always equals the ring's variable count; the
/// derived Ord (plain lex) is only used for map storage, never as the
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(n_vars: usize) -> Monomial {
        Monomial(vec![0; n_vars])
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(e, w)| *e as u64 * w).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_unit(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default everywhere).
    GrevLex,
    /// Graded lexicographic.
    GrLex,
}

impl MonomialOrder {
    pub fn cmp(&self, weights: &[u64], a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let da = a.weighted_degree(weights);
        let db = b.weighted_degree(weights);
        if da != db {
            return da.cmp(&db);
        }
        match self {
            MonomialOrder::GrevLex => {
                // Larger monomial has the smaller rightmost nonzero entry of a - b.
                for i in (0..a.0.len()).rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrLex => {
                for i in 0..a.0.len() {
                    if a.0[i] != b.0[i] {
                        return a.0[i].cmp(&b.0[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.domain().zero())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(self.ring.domain().zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(self.ring == other.ring, "mixed polynomial rings");
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let domain = *self.ring.domain();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = domain.add(slot.get(), &c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let domain = self.ring.domain();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), domain.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let domain = *self.ring.domain();
        let mut out = self.ring.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), domain.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let domain = *self.ring.domain();
        let mut out = self.ring.zero();
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), domain.mul(cc, c));
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::unit(self.ring.n_vars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = self.ring.one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Weighted total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Largest term with respect to the given order.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        let w = self.ring.weights();
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(w, a, b))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.ring.n_vars());
        let domain = *self.ring.domain();
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), domain.scale_int(c, e as u64));
        }
        out
    }

    /// Apply the coefficient ring homomorphism into `target`'s domain.
    /// Only departures from the integers are supported.
    pub fn specialize(&self, target: &PolyRing) -> Polynomial {
        assert_eq!(*self.ring.domain(), CoeffDomain::Integers, "specialize starts from integer coefficients");
        assert_eq!(self.ring.vars(), target.vars(), "variable mismatch");
        assert_eq!(self.ring.weights(), target.weights(), "weight mismatch");
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let n = match c {
                Coeff::Int(n) => n,
                _ => unreachable!(),
            };
            out.add_term(m.clone(), target.domain().from_bigint(n));
        }
        out
    }

    /// Content gcd of the integer coefficients; zero polynomial has content 0.
    pub fn integer_content(&self) -> num::BigInt {
        use num::Zero;
        let mut g = num::BigInt::zero();
        for c in self.terms.values() {
            match c {
                Coeff::Int(n) => g = num::Integer::gcd(&g, n),
                _ => panic!("integer_content over a non-integer domain"),
            }
        }
        g
    }

    /// Exact division by a nonzero polynomial: Some(q) iff self = q * divisor.
    /// Works over any of the three domains (integer leading coefficients must
    /// divide exactly).
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_same_ring(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let order = MonomialOrder::GrevLex;
        let domain = *self.ring.domain();
        let (dm, dc) = {
            let (m, c) = divisor.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading_term(order).unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&rm) {
                return None;
            }
            let qc = domain.div_exact(&rc, &dc)?;
            let qm = dm.quotient_into(&rm);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Terms in descending default order, ready for printing.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let w = self.ring.weights();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| MonomialOrder::GrevLex.cmp(w, b, a));
        v
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending graded reverse lexicographic order,
    /// explicit `*` and `^`, unit coefficients suppressed. Parsing the
    /// output recovers the polynomial exactly.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let vars = self.ring.vars();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_unit() {
                factors.push(mag.to_string());
            }
            for (v, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[v].clone()),
                    _ => factors.push(format!("{}^{}", vars[v], e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
