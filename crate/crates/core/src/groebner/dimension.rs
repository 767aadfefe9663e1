//! Counting monomials in the difference of two monomial ideals.
//!
//! For nested submodules D <= N the k-dimension of N/D equals the number
//! of module monomials lying in LT(N) but not in LT(D), counted here per
//! position by slicing on the last active variable. Slices stabilize
//! beyond the largest generator exponent, which also gives an exact
//! finiteness test.

/// Exponent vectors over the first `nvars` variables.
type Gens = Vec<Vec<u32>>;

fn minimalize(mut gens: Gens) -> Gens {
    gens.sort();
    gens.dedup();
    let mut out: Gens = Vec::new();
    'next: for g in gens {
        for h in &out {
            if h.iter().zip(&g).all(|(a, b)| a <= b) {
                continue 'next;
            }
        }
        out.retain(|h| !g.iter().zip(h).all(|(a, b)| a <= b));
        out.push(g);
    }
    out
}

/// Monomial-ideal inclusion by generator divisibility.
fn contained_in(small: &Gens, big: &Gens) -> bool {
    small
        .iter()
        .all(|g| big.iter().any(|h| h.iter().zip(g).all(|(a, b)| a <= b)))
}

fn slice(gens: &Gens, var: usize, e: u32) -> Gens {
    gens.iter()
        .filter(|g| g[var] <= e)
        .map(|g| g[..var].to_vec())
        .collect()
}

/// All monomials in <upper> \ <lower>, or None when there are infinitely
/// many. `lower` need not be contained in `upper`; the set difference is
/// what is produced.
pub fn monomials_between(nvars: usize, upper: &Gens, lower: &Gens) -> Option<Vec<Vec<u32>>> {
    let upper = minimalize(upper.clone());
    let lower = minimalize(lower.clone());
    go(nvars, &upper, &lower)
}

fn go(nvars: usize, upper: &Gens, lower: &Gens) -> Option<Vec<Vec<u32>>> {
    if upper.is_empty() {
        return Some(Vec::new());
    }
    if nvars == 0 {
        // upper = (1); one monomial unless lower also contains it.
        return if lower.is_empty() { Some(vec![vec![]]) } else { Some(Vec::new()) };
    }
    let v = nvars - 1;
    let cap = upper
        .iter()
        .chain(lower.iter())
        .map(|g| g[v])
        .max()
        .unwrap_or(0);
    // Beyond the cap every slice equals the cap slice; any excess there
    // repeats forever.
    let top_u = minimalize(slice(upper, v, cap));
    let top_l = minimalize(slice(lower, v, cap));
    if !contained_in(&top_u, &top_l) {
        return None;
    }
    let mut out = Vec::new();
    for e in 0..cap {
        let su = minimalize(slice(upper, v, e));
        let sl = minimalize(slice(lower, v, e));
        let sub = go(v, &su, &sl)?;
        for mut m in sub {
            m.push(e);
            out.push(m);
        }
    }
    Some(out)
}
