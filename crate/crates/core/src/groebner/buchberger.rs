//! Buchberger's algorithm for submodules of free modules over a
//! polynomial ring with field coefficients.
//!
//! Pair selection is the normal strategy (lowest lcm degree first, ties
//! by pair index). The product criterion is applied only when both
//! elements live in a single common position (the classical proof needs
//! the tails there too); the chain criterion is applied in general. The
//! returned basis is reduced, monic, and sorted, hence unique for the
//! order, so it does not depend on generator ordering.

use super::elem::{ModOrder, ModuleElem};
use crate::exact::coeff::Coeff;
use crate::exact::poly::Monomial;
use std::collections::{BTreeSet, HashSet};

fn make_monic(e: &ModuleElem, ord: &ModOrder) -> ModuleElem {
    let (_, _, c) = e.leading(ord).expect("monic of zero element");
    if c.is_one() {
        return e.clone();
    }
    let inv = e.ring().domain().inv(&c).expect("leading coefficient must be a unit");
    e.scale(&inv)
}

/// Full normal form: no term of the result is divisible by any basis
/// leading term.
pub fn normal_form(v: &ModuleElem, basis: &[ModuleElem], ord: &ModOrder) -> ModuleElem {
    let ring = v.ring().clone();
    let domain = *ring.domain();
    let lts: Vec<(usize, Monomial, Coeff)> =
        basis.iter().map(|g| g.leading(ord).expect("zero basis element")).collect();
    let mut p = v.clone();
    let mut r = ModuleElem::zero(&ring, v.rank());
    while let Some((pos, m, c)) = p.leading(ord) {
        let hit = lts
            .iter()
            .position(|(bp, bm, _)| *bp == pos && bm.divides(&m));
        match hit {
            Some(k) => {
                let (_, bm, bc) = &lts[k];
                let q = bm.quotient_into(&m);
                let qc = domain.div_exact(&c, bc).expect("field coefficient division");
                p = p.sub(&basis[k].scale_term(&q, &qc));
            }
            None => {
                r.add_term(pos, m.clone(), c.clone());
                p.add_term(pos, m, domain.neg(&c));
            }
        }
    }
    r
}

fn canonical_cmp(a: &ModuleElem, b: &ModuleElem, ord: &ModOrder) -> std::cmp::Ordering {
    let weights = a.ring().weights().to_vec();
    let la = a.leading(ord);
    let lb = b.leading(ord);
    match (&la, &lb) {
        (Some((pa, ma, _)), Some((pb, mb, _))) => ord
            .cmp(&weights, (*pa, ma), (*pb, mb))
            .then_with(|| a.canonical_string().cmp(&b.canonical_string())),
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    }
}

pub fn buchberger(gens: &[ModuleElem], ord: &ModOrder) -> Vec<ModuleElem> {
    let nonzero: Vec<&ModuleElem> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let ring = nonzero[0].ring().clone();
    assert!(ring.domain().is_field(), "Buchberger runs over field coefficients");
    let weights = ring.weights().to_vec();

    let mut g: Vec<ModuleElem> = nonzero.iter().map(|e| make_monic(e, ord)).collect();
    g.sort_by(|a, b| canonical_cmp(a, b, ord));
    g.dedup();

    let lt = |e: &ModuleElem| e.leading(ord).unwrap();

    // (lcm degree, i, j) with i < j; the BTreeSet pops smallest first.
    let mut queue: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |queue: &mut BTreeSet<(i64, usize, usize)>,
                         pending: &mut HashSet<(usize, usize)>,
                         g: &[ModuleElem],
                         i: usize,
                         j: usize| {
        let (pi, mi, _) = lt(&g[i]);
        let (pj, mj, _) = lt(&g[j]);
        if pi != pj {
            return;
        }
        let lcm = mi.lcm(&mj);
        let key = ord.degree(&weights, pi, &lcm);
        queue.insert((key, i, j));
        pending.insert((i, j));
    };

    for i in 0..g.len() {
        for j in i + 1..g.len() {
            push_pair(&mut queue, &mut pending, &g, i, j);
        }
    }

    while let Some(&entry) = queue.iter().next() {
        queue.remove(&entry);
        let (_, i, j) = entry;
        pending.remove(&(i, j));

        let (pos, mi, _) = lt(&g[i]);
        let (_, mj, _) = lt(&g[j]);

        // Product criterion, only valid when both elements are supported in
        // one shared position.
        if mi.gcd_is_unit(&mj)
            && g[i].single_position() == Some(pos)
            && g[j].single_position() == Some(pos)
        {
            continue;
        }

        // Chain criterion: some g_k divides the lcm and both flanking pairs
        // are already accounted for.
        let lcm = mi.lcm(&mj);
        let chained = (0..g.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (pk, mk, _) = lt(&g[k]);
            if pk != pos || !mk.divides(&lcm) {
                return false;
            }
            let a = (i.min(k), i.max(k));
            let b = (j.min(k), j.max(k));
            !pending.contains(&a) && !pending.contains(&b)
        });
        if chained {
            continue;
        }

        let qi = mi.quotient_into(&lcm);
        let qj = mj.quotient_into(&lcm);
        let one = ring.domain().one();
        let s = g[i].scale_term(&qi, &one).sub(&g[j].scale_term(&qj, &one));
        let r = normal_form(&s, &g, ord);
        if r.is_zero() {
            continue;
        }
        let r = make_monic(&r, ord);
        g.push(r);
        let new = g.len() - 1;
        for k in 0..new {
            push_pair(&mut queue, &mut pending, &g, k, new);
        }
    }

    autoreduce(g, ord)
}

/// Minimalize leading terms, then inter-reduce tails to the unique reduced
/// basis.
fn autoreduce(mut g: Vec<ModuleElem>, ord: &ModOrder) -> Vec<ModuleElem> {
    let weights = g[0].ring().weights().to_vec();
    g.sort_by(|a, b| canonical_cmp(a, b, ord));

    let mut kept: Vec<ModuleElem> = Vec::new();
    for e in g {
        let (pos, m, _) = e.leading(ord).unwrap();
        let redundant = kept.iter().any(|h| {
            let (hp, hm, _) = h.leading(ord).unwrap();
            hp == pos && hm.divides(&m)
        });
        if !redundant {
            kept.push(e);
        }
    }
    let _ = weights;

    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<ModuleElem> =
                kept.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| e.clone()).collect();
            let r = normal_form(&kept[i], &others, ord);
            let r = make_monic(&r, ord);
            if r != kept[i] {
                kept[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    kept.sort_by(|a, b| canonical_cmp(a, b, ord));
    kept
}
