//! Independent cross checks used before any value is frozen as golden.
//! Everything here is direct monomial-basis linear algebra in bounded
//! degree over its own arithmetic: no Groebner bases, no code shared
//! with the library under test.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};

/// Oracle polynomial: exponent vector -> rational coefficient.
pub type OPoly = BTreeMap<Vec<u32>, BigRational>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn opoly(terms: &[(&[u32], i64)]) -> OPoly {
    let mut p = OPoly::new();
    for (exps, c) in terms {
        let entry = p.entry(exps.to_vec()).or_insert_with(BigRational::zero);
        *entry += rat(*c);
    }
    p.retain(|_, c| !c.is_zero());
    p
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn shift(p: &OPoly, m: &[u32]) -> OPoly {
    p.iter().map(|(e, c)| (mono_mul(e, m), c.clone())).collect()
}

fn opoly_degree(p: &OPoly) -> Option<u32> {
    let mut degrees = p.keys().map(|e| e.iter().sum::<u32>());
    let first = degrees.next()?;
    assert!(degrees.all(|d| d == first), "oracle wants homogeneous data");
    Some(first)
}

/// All monomials of total degree d in n variables, deterministic order.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            let mut e = vec![first];
            e.append(&mut rest);
            out.push(e);
        }
    }
    out
}

/// Rank over Q by sparse row reduction against collected pivots.
pub fn rank(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    let mut rank = 0;
    for mut row in rows {
        while let Some((&lead, lead_coeff)) = row.iter().next() {
            let lead_coeff = lead_coeff.clone();
            match pivots.get(&lead) {
                None => {
                    let inv = lead_coeff.recip();
                    let normalized: BTreeMap<usize, BigRational> =
                        row.iter().map(|(k, v)| (*k, v * &inv)).collect();
                    pivots.insert(lead, normalized);
                    rank += 1;
                    break;
                }
                Some(pivot) => {
                    for (k, v) in pivot {
                        let entry = row.entry(*k).or_insert_with(BigRational::zero);
                        *entry -= v * &lead_coeff;
                    }
                    row.retain(|_, c| !c.is_zero());
                }
            }
        }
    }
    rank
}

/// A module N = S^r / W with W spanned by homogeneous columns, each
/// column's nonzero entries sharing one degree.
pub struct Presentation {
    pub n_vars: usize,
    pub rank: usize,
    pub gens: Vec<Vec<OPoly>>,
}

impl Presentation {
    fn gen_degree(&self, g: &[OPoly]) -> u32 {
        let mut degree = None;
        for entry in g {
            if let Some(d) = opoly_degree(entry) {
                assert!(degree.is_none() || degree == Some(d), "mixed-degree column");
                degree = Some(d);
            }
        }
        degree.expect("zero relation column")
    }
}

/// Column index of (block k, slot j, monomial) inside (S^{r*m})_t.
fn col(k: usize, j: usize, r: usize, mono_index: usize, n_monos: usize) -> usize {
    (k * r + j) * n_monos + mono_index
}

fn row_of(
    parts: &[(usize, usize, OPoly)],
    r: usize,
    index: &BTreeMap<Vec<u32>, usize>,
) -> BTreeMap<usize, BigRational> {
    let n_monos = index.len();
    let mut row = BTreeMap::new();
    for (k, j, p) in parts {
        for (e, c) in p {
            let mono_index = *index.get(e).expect("degree bookkeeping is exact");
            let entry = row
                .entry(col(*k, *j, r, mono_index, n_monos))
                .or_insert_with(BigRational::zero);
            *entry += c;
        }
    }
    row.retain(|_, c| !c.is_zero());
    row
}

fn mono_index(n_vars: usize, t: u32) -> BTreeMap<Vec<u32>, usize> {
    monomials(n_vars, t).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Rows spanning W_t inside (S^{r*m})_t: every monomial multiple of
/// every relation column, one block-diagonal copy per block.
fn w_rows(pres: &Presentation, m: usize, t: u32) -> Vec<BTreeMap<usize, BigRational>> {
    let index = mono_index(pres.n_vars, t);
    let mut rows = Vec::new();
    for g in &pres.gens {
        let d = pres.gen_degree(g);
        if d > t {
            continue;
        }
        for mono in monomials(pres.n_vars, t - d) {
            for k in 0..m {
                let parts: Vec<(usize, usize, OPoly)> = g
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_empty())
                    .map(|(j, p)| (k, j, shift(p, &mono)))
                    .collect();
                rows.push(row_of(&parts, pres.rank, &index));
            }
        }
    }
    rows
}

fn map_degree(map: &[Vec<OPoly>]) -> Option<u32> {
    let mut degree = None;
    for row in map {
        for entry in row {
            if let Some(d) = opoly_degree(entry) {
                assert!(degree.is_none() || degree == Some(d), "mixed-degree map");
                degree = Some(d);
            }
        }
    }
    degree
}

/// Rank of the induced map (map x I_r): (V_d + W_d)/W_d -> V_{d+e}/W_{d+e}.
fn induced_rank(pres: &Presentation, map: &[Vec<OPoly>], e: u32, d: u32) -> usize {
    let m = map.len();
    let target_index = mono_index(pres.n_vars, d + e);
    let w_target = w_rows(pres, m, d + e);
    let w_rank = rank(w_target.clone());

    let mut rows = w_target;
    for mono in monomials(pres.n_vars, d) {
        for l in 0..m {
            for j in 0..pres.rank {
                let parts: Vec<(usize, usize, OPoly)> = (0..m)
                    .filter(|k| !map[*k][l].is_empty())
                    .map(|k| (k, j, shift(&map[k][l], &mono)))
                    .collect();
                if !parts.is_empty() {
                    rows.push(row_of(&parts, pres.rank, &target_index));
                }
            }
        }
    }
    rank(rows) - w_rank
}

fn n_dim(pres: &Presentation, m: usize, t: u32) -> usize {
    let ambient = monomials(pres.n_vars, t).len() * pres.rank * m;
    ambient - rank(w_rows(pres, m, t))
}

/// Total dimension of ker(map x I_r) / im(prev x I_r) on (S^r/W)^m,
/// summed over all degrees. Finite length is verified by demanding
/// three consecutive zero contributions past the last nonzero one.
pub fn homology_dim(pres: &Presentation, map: &[Vec<OPoly>], prev: &[Vec<OPoly>]) -> u64 {
    let m = map.len();
    assert!(map.iter().all(|row| row.len() == m));
    let e_map = map_degree(map).expect("zero map has no kernel bookkeeping");
    let e_prev = map_degree(prev);

    let mut total = 0u64;
    let mut trailing_zeros = 0;
    let mut d = 0u32;
    loop {
        let ker = n_dim(pres, m, d) - induced_rank(pres, map, e_map, d);
        let im = match e_prev {
            Some(e) if d >= e => induced_rank(pres, prev, e, d - e),
            _ => 0,
        };
        assert!(ker >= im, "im not inside ker: the complex is wrong");
        let contribution = (ker - im) as u64;
        total += contribution;
        trailing_zeros = if contribution == 0 { trailing_zeros + 1 } else { 0 };
        if trailing_zeros >= 3 && d >= 6 {
            return total;
        }
        d += 1;
        assert!(d <= 24, "no stable tail by degree 24; raise the bound");
    }
}

/// Residue functional for Fermat-type f = x_1^d + ... + x_n^d, from the
/// closed form: the Jacobian ideal is (x_i^{d-1}), the socle is
/// prod x_i^{d-2}, and Res(socle) = 1/d^n. Reduction just deletes any
/// monomial divisible by some x_i^{d-1}.
pub fn fermat_residue(g: &OPoly, d: u32, n: usize) -> BigRational {
    let socle: Vec<u32> = vec![d - 2; n];
    let mut socle_coeff = BigRational::zero();
    for (e, c) in g {
        if e.iter().any(|&x| x >= d - 1) {
            continue;
        }
        if *e == socle {
            socle_coeff += c;
        }
    }
    let mut dn = BigRational::one();
    for _ in 0..n {
        dn *= rat(d as i64);
    }
    socle_coeff / dn
}

/// Zero-dimensional ideal containing x_i^{bounds[i]} for every i, plus
/// extra generators supported on the quotient box.
pub struct BoxIdeal {
    pub bounds: Vec<u32>,
    pub gens: Vec<OPoly>,
}

impl BoxIdeal {
    /// Monomials outside every (x_i^{bounds[i]}): a basis of S/(monomial
    /// part), downward closed, so it supports all reductions.
    pub fn box_monomials(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &b in &self.bounds {
            let mut next = Vec::new();
            for stem in &out {
                for e in 0..b {
                    let mut m = stem.clone();
                    m.push(e);
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }

    fn projected_rows(
        &self,
        index: &BTreeMap<Vec<u32>, usize>,
    ) -> Vec<BTreeMap<usize, BigRational>> {
        let mut rows = Vec::new();
        for mono in index.keys() {
            for g in &self.gens {
                let mut row = BTreeMap::new();
                for (e, c) in shift(g, mono) {
                    if let Some(&i) = index.get(&e) {
                        *row.entry(i).or_insert_with(BigRational::zero) += c;
                    }
                }
                row.retain(|_, c: &mut BigRational| !c.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        rows
    }

    fn index(&self) -> BTreeMap<Vec<u32>, usize> {
        self.box_monomials().into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    pub fn quotient_dim(&self) -> u64 {
        let index = self.index();
        (index.len() - rank(self.projected_rows(&index))) as u64
    }

    /// Membership: p is in the ideal iff its box projection lies in the
    /// projected span; terms outside the box are monomial multiples of
    /// some x_i^{bounds[i]} and belong to the ideal for free.
    pub fn contains(&self, p: &OPoly) -> bool {
        let index = self.index();
        let rows = self.projected_rows(&index);
        let base = rank(rows.clone());
        let mut probe = BTreeMap::new();
        for (e, c) in p {
            if let Some(&i) = index.get(e) {
                *probe.entry(i).or_insert_with(BigRational::zero) += c;
            }
        }
        probe.retain(|_, c: &mut BigRational| !c.is_zero());
        if probe.is_empty() {
            return true;
        }
        let mut extended = rows;
        extended.push(probe);
        rank(extended) == base
    }
}
