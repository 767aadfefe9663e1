//! Homology of the 2-periodic complexes that compute Tor and Ext over the
//! hypersurface R = S/(f), with exact dimensions, plus Tor over S itself
//! for higher Euler characteristics.
//!
//! For M presented by a factorization (A, B) the R-free resolution is
//! periodic from the start, so every index i >= 1 is already stable:
//! Tor_i for odd i is ker(A)/im(B) on N^m, for even i it is ker(B)/im(A),
//! and Ext swaps in the transposes with the complex direction reversed.
//! All modules are realized over S: N^m = S^{rm} / D with D the blockwise
//! relations of N together with f times the ambient basis, kernels are
//! preimages computed by syzygies, and dimensions come from standard
//! monomial counts.

use crate::exact::matrix::PolyMatrix;
use crate::exact::poly::Polynomial;
use crate::groebner::{self, FreeModule, KDim, ModuleElem, Submodule};
use crate::matrix_factorization::{MatrixFactorization, PresentedModule};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("Tor_{index}(M,N) has infinite length; the singularity is not isolated for this pair")]
    NonfiniteTor { index: usize },
    #[error("Ext^{index}(M,N) has infinite length; the singularity is not isolated for this pair")]
    NonfiniteExt { index: usize },
    #[error("Tor over the ambient polynomial ring has infinite length")]
    InfiniteLength,
}

impl HomologyError {
    pub fn code(&self) -> &'static str {
        match self {
            HomologyError::NonfiniteTor { .. } => "NONFINITE_TOR",
            HomologyError::NonfiniteExt { .. } => "NONFINITE_EXT",
            HomologyError::InfiniteLength => "INFINITE_LENGTH",
        }
    }
}

/// Exact homology dimensions for degrees 1..window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorProfile {
    dims: Vec<u64>,
    window: usize,
    ring_tag: String,
    pair: (String, String),
}

impl TorProfile {
    /// Dimension in homological degree i, 1-based up to the window.
    pub fn at(&self, i: usize) -> u64 {
        assert!(1 <= i && i <= self.window, "degree outside the window");
        self.dims[i - 1]
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn ring_tag(&self) -> &str {
        &self.ring_tag
    }

    pub fn pair(&self) -> (&str, &str) {
        (&self.pair.0, &self.pair.1)
    }

    /// dims[2] - dims[1], the stable even-minus-odd difference.
    pub fn even_minus_odd(&self) -> i64 {
        self.at(2) as i64 - self.at(1) as i64
    }
}

pub fn ring_tag(m: &PresentedModule) -> String {
    format!("{}[{}]/({})", m.ring().domain(), m.ring().vars().join(","), m.f())
}

/// dim_k ker(ker_of x I_r) / (im(im_of x I_r) + D) on N^m = S^{rm}/D.
/// With im_of absent the denominator is D alone, which computes homology
/// of the length-one complex over S.
fn homology_dim(ker_of: &PolyMatrix, im_of: Option<&PolyMatrix>, n: &PresentedModule) -> KDim {
    let ring = n.ring().clone();
    let r = n.rank();
    let m = ker_of.rows();
    let rank = r * m;
    let amb = FreeModule::new(ring.clone(), rank);

    let s_rel = n.s_relations();
    let mut d_gens: Vec<ModuleElem> = Vec::new();
    for block in 0..m {
        for j in 0..s_rel.cols() {
            let mut comps = vec![ring.zero(); rank];
            for i in 0..r {
                comps[block * r + i] = s_rel.at(i, j).clone();
            }
            d_gens.push(ModuleElem::new(comps));
        }
    }
    let d_cols: Vec<Vec<Polynomial>> = d_gens.iter().map(|g| g.comps().to_vec()).collect();
    let d_matrix = PolyMatrix::from_columns(ring.clone(), rank, d_cols);

    // Preimage of D under the kernel map: project syzygies of [map | D]
    // onto the map block. The projections generate the full preimage.
    let map_k = ker_of.kron_identity(r);
    let syz = groebner::syzygy(&map_k.hcat(&d_matrix));
    let mut k_gens = Vec::new();
    for j in 0..syz.cols() {
        let comps: Vec<Polynomial> = (0..rank).map(|i| syz.at(i, j).clone()).collect();
        if comps.iter().any(|p| !p.is_zero()) {
            k_gens.push(ModuleElem::new(comps));
        }
    }
    let num = Submodule::new(amb.clone(), k_gens);

    let mut den_gens = d_gens;
    if let Some(im) = im_of {
        let map_i = im.kron_identity(r);
        for j in 0..rank {
            den_gens.push(ModuleElem::new(map_i.column(j)));
        }
    }
    let den = Submodule::new(amb, den_gens);
    groebner::k_dimension(&num, &den).expect("homology runs over field coefficients")
}

fn check_compatible(mf_m: &MatrixFactorization, n: &PresentedModule) {
    assert!(*mf_m.ring() == *n.ring(), "factorization and module from different rings");
    assert!(mf_m.f() == n.f(), "factorization and module factor different forms");
    assert!(n.ring().domain().is_field(), "homology runs over field coefficients");
}

/// Tor_i^R(coker(mf_m), N) dimensions for i = 1..window.
pub fn tor_dims(
    mf_m: &MatrixFactorization,
    n: &PresentedModule,
    window: usize,
    pair: (&str, &str),
) -> Result<TorProfile, HomologyError> {
    check_compatible(mf_m, n);
    assert!(window >= 2, "window must cover one period");
    let mut dims = Vec::with_capacity(window);
    for i in 1..=window {
        let (ker_of, im_of) =
            if i % 2 == 1 { (mf_m.a(), mf_m.b()) } else { (mf_m.b(), mf_m.a()) };
        match homology_dim(ker_of, Some(im_of), n) {
            KDim::Finite(d) => dims.push(d),
            KDim::Infinite => return Err(HomologyError::NonfiniteTor { index: i }),
        }
    }
    Ok(TorProfile {
        dims,
        window,
        ring_tag: ring_tag(n),
        pair: (pair.0.to_string(), pair.1.to_string()),
    })
}

/// Ext^i_R(coker(mf_m), N) dimensions for i = 1..window: the dual complex
/// applies the transposes in the reversed direction.
pub fn ext_dims(
    mf_m: &MatrixFactorization,
    n: &PresentedModule,
    window: usize,
    pair: (&str, &str),
) -> Result<TorProfile, HomologyError> {
    check_compatible(mf_m, n);
    assert!(window >= 2, "window must cover one period");
    let at = mf_m.a().transpose();
    let bt = mf_m.b().transpose();
    let mut dims = Vec::with_capacity(window);
    for i in 1..=window {
        let (ker_of, im_of) = if i % 2 == 1 { (&bt, &at) } else { (&at, &bt) };
        match homology_dim(ker_of, Some(im_of), n) {
            KDim::Finite(d) => dims.push(d),
            KDim::Infinite => return Err(HomologyError::NonfiniteExt { index: i }),
        }
    }
    Ok(TorProfile {
        dims,
        window,
        ring_tag: ring_tag(n),
        pair: (pair.0.to_string(), pair.1.to_string()),
    })
}

/// Higher Euler characteristic over S. coker(mf_m) viewed over S has the
/// length-one free resolution given by A, so only Tor_1^S survives: the
/// value is dim Tor_n^S, zero for n >= 2.
pub fn chi_higher(
    mf_m: &MatrixFactorization,
    n: &PresentedModule,
    degree: usize,
) -> Result<i64, HomologyError> {
    check_compatible(mf_m, n);
    assert!(degree >= 1, "higher Euler characteristics start at degree one");
    if degree >= 2 {
        return Ok(0);
    }
    match homology_dim(mf_m.a(), None, n) {
        KDim::Finite(d) => Ok(d as i64),
        KDim::Infinite => Err(HomologyError::InfiniteLength),
    }
}
