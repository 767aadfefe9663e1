//! Elements of free modules and the module monomial order.
//!
//! A module monomial is (position, monomial). The order is
//! position-over-term: an optional leading block of positions dominates
//! everything after it (used for syzygy elimination), positions inside a
//! block compare by (degree shift, index) with the smaller key winning,
//! and ties fall through to the ring order. The order is global, so
//! Buchberger terminates.

use crate::exact::coeff::Coeff;
use crate::exact::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub struct ModOrder {
    pub order: MonomialOrder,
    pub shifts: Vec<i64>,
    /// Positions before the split form the dominant block.
    pub block: usize,
}

impl ModOrder {
    pub fn plain(order: MonomialOrder, rank: usize) -> ModOrder {
        ModOrder { order, shifts: vec![0; rank], block: rank }
    }

    pub fn with_shifts(order: MonomialOrder, shifts: Vec<i64>) -> ModOrder {
        let block = shifts.len();
        ModOrder { order, shifts, block }
    }

    /// Elimination order: the first `block` positions dominate the rest.
    pub fn eliminating(order: MonomialOrder, rank: usize, block: usize) -> ModOrder {
        ModOrder { order, shifts: vec![0; rank], block }
    }

    pub fn cmp(
        &self,
        weights: &[u64],
        a: (usize, &Monomial),
        b: (usize, &Monomial),
    ) -> Ordering {
        let (pa, ma) = a;
        let (pb, mb) = b;
        let ga = (pa >= self.block) as u8;
        let gb = (pb >= self.block) as u8;
        if ga != gb {
            // The dominant block is larger.
            return gb.cmp(&ga);
        }
        if pa != pb {
            // Smaller (shift, index) wins.
            let ka = (self.shifts[pa], pa);
            let kb = (self.shifts[pb], pb);
            return kb.cmp(&ka);
        }
        self.order.cmp(weights, ma, mb)
    }

    /// Degree of a module monomial including the position shift.
    pub fn degree(&self, weights: &[u64], pos: usize, m: &Monomial) -> i64 {
        m.weighted_degree(weights) as i64 + self.shifts[pos]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElem {
    comps: Vec<Polynomial>,
}

impl ModuleElem {
    pub fn new(comps: Vec<Polynomial>) -> ModuleElem {
        assert!(!comps.is_empty(), "rank-zero module element");
        let ring = comps[0].ring().clone();
        assert!(comps.iter().all(|p| *p.ring() == ring));
        ModuleElem { comps }
    }

    pub fn zero(ring: &PolyRing, rank: usize) -> ModuleElem {
        ModuleElem::new((0..rank).map(|_| ring.zero()).collect())
    }

    pub fn ring(&self) -> &PolyRing {
        self.comps[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, pos: usize) -> &Polynomial {
        &self.comps[pos]
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<Polynomial> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &ModuleElem) -> ModuleElem {
        assert_eq!(self.rank(), other.rank());
        ModuleElem::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &ModuleElem) -> ModuleElem {
        assert_eq!(self.rank(), other.rank());
        ModuleElem::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> ModuleElem {
        ModuleElem::new(self.comps.iter().map(|p| p.neg()).collect())
    }

    pub fn scale_term(&self, m: &Monomial, c: &Coeff) -> ModuleElem {
        ModuleElem::new(self.comps.iter().map(|p| p.mul_term(m, c)).collect())
    }

    pub fn scale(&self, c: &Coeff) -> ModuleElem {
        ModuleElem::new(self.comps.iter().map(|p| p.scale(c)).collect())
    }

    pub fn add_term(&mut self, pos: usize, m: Monomial, c: Coeff) {
        self.comps[pos].add_term(m, c);
    }

    /// Largest module term. None iff zero.
    pub fn leading(&self, ord: &ModOrder) -> Option<(usize, Monomial, Coeff)> {
        let weights = self.ring().weights().to_vec();
        let mut best: Option<(usize, Monomial, Coeff)> = None;
        for (pos, p) in self.comps.iter().enumerate() {
            if let Some((m, c)) = p.leading_term(ord.order) {
                let replace = match &best {
                    None => true,
                    Some((bp, bm, _)) => ord.cmp(&weights, (pos, m), (*bp, bm)).is_gt(),
                };
                if replace {
                    best = Some((pos, m.clone(), c.clone()));
                }
            }
        }
        best
    }

    /// True when every nonzero component sits at a single position.
    pub fn single_position(&self) -> Option<usize> {
        let mut found = None;
        for (pos, p) in self.comps.iter().enumerate() {
            if !p.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some(pos);
            }
        }
        found
    }

    pub fn is_homogeneous(&self) -> bool {
        self.comps.iter().all(|p| p.is_homogeneous())
    }

    /// Degree of a homogeneous element under position shifts; None for zero
    /// or inhomogeneous input.
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (pos, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree().unwrap() as i64 + shifts[pos];
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 == d => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn canonical_string(&self) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        parts.join("; ")
    }
}

impl fmt::Display for ModuleElem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({})", self.canonical_string())
    }
}
