//! Process-wide basis cache, keyed by a content hash of the computation
//! input. Safe for concurrent use. When THETA_FORGE_CACHE_DIR is set the
//! cache also persists to disk as JSON (reduced bases are unique, so
//! cross-run reuse is sound); otherwise no files are touched.

use super::elem::{ModOrder, ModuleElem};
use crate::exact::coeff::CoeffDomain;
use crate::exact::parse::parse_poly;
use crate::exact::poly::{MonomialOrder, PolyRing};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

type Key = [u8; 32];

fn table() -> &'static Mutex<HashMap<Key, Arc<Vec<ModuleElem>>>> {
    static TABLE: OnceLock<Mutex<HashMap<Key, Arc<Vec<ModuleElem>>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn cache_key(ring: &PolyRing, ord: &ModOrder, rank: usize, gens: &[ModuleElem]) -> Key {
    let mut h = Sha256::new();
    match ring.domain() {
        CoeffDomain::Integers => h.update(b"ZZ"),
        CoeffDomain::Rationals => h.update(b"QQ"),
        CoeffDomain::PrimeField(p) => h.update(format!("GF({})", p).as_bytes()),
    }
    h.update(format!("|{:?}|", ring.vars()).as_bytes());
    h.update(format!("{:?}|", ring.weights()).as_bytes());
    let ord_tag = match ord.order {
        MonomialOrder::GrevLex => "grevlex",
        MonomialOrder::GrLex => "grlex",
    };
    h.update(format!("{}|{:?}|{}|{}|", ord_tag, ord.shifts, ord.block, rank).as_bytes());
    // Reduced bases do not depend on generator order, so sort the key
    // material for better hit rates.
    let mut texts: Vec<String> = gens.iter().map(|g| g.canonical_string()).collect();
    texts.sort();
    for t in texts {
        h.update(t.as_bytes());
        h.update(b"\n");
    }
    h.finalize().into()
}

fn disk_path(key: &Key) -> Option<PathBuf> {
    let dir = std::env::var_os("THETA_FORGE_CACHE_DIR")?;
    if dir.is_empty() {
        return None;
    }
    let mut name = String::with_capacity(64);
    for b in key {
        name.push_str(&format!("{:02x}", b));
    }
    Some(PathBuf::from(dir).join(format!("{}.json", name)))
}

fn load_disk(key: &Key, ring: &PolyRing, rank: usize) -> Option<Vec<ModuleElem>> {
    let path = disk_path(key)?;
    let text = std::fs::read_to_string(path).ok()?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text).ok()?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != rank {
            return None;
        }
        let mut comps = Vec::with_capacity(rank);
        for s in row {
            comps.push(parse_poly(ring, &s).ok()?);
        }
        out.push(ModuleElem::new(comps));
    }
    Some(out)
}

fn store_disk(key: &Key, basis: &[ModuleElem]) {
    let Some(path) = disk_path(key) else { return };
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    let rows: Vec<Vec<String>> = basis
        .iter()
        .map(|e| e.comps().iter().map(|p| p.to_string()).collect())
        .collect();
    if let Ok(text) = serde_json::to_string(&rows) {
        let _ = std::fs::write(path, text);
    }
}

pub fn lookup_or_compute(
    ring: &PolyRing,
    ord: &ModOrder,
    rank: usize,
    gens: &[ModuleElem],
    compute: impl FnOnce() -> Vec<ModuleElem>,
) -> Arc<Vec<ModuleElem>> {
    let key = cache_key(ring, ord, rank, gens);
    if let Some(hit) = table().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    if let Some(from_disk) = load_disk(&key, ring, rank) {
        let arc = Arc::new(from_disk);
        table().lock().unwrap().insert(key, Arc::clone(&arc));
        return arc;
    }
    let basis = compute();
    store_disk(&key, &basis);
    let arc = Arc::new(basis);
    // A racing thread may have inserted first; keep whichever is present.
    let mut map = table().lock().unwrap();
    Arc::clone(map.entry(key).or_insert(arc))
}
