//! Dense matrices of polynomials.
//!
//! Row-major storage; zero-column matrices are legal (empty syzygies).
//! Determinants and adjugates use cofactor expansion through 4x4 and
//! fraction-free Bareiss elimination above that, so everything stays in
//! the base ring.

use crate::exact::coeff::Coeff;
use crate::exact::poly::{Polynomial, PolyRing};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: PolyRing, rows: usize, cols: usize, entries: Vec<Polynomial>) -> PolyMatrix {
        assert_eq!(entries.len(), rows * cols);
        for e in &entries {
            assert!(*e.ring() == ring, "entry from a different ring");
        }
        PolyMatrix { ring, rows, cols, entries }
    }

    pub fn zero(ring: PolyRing, rows: usize, cols: usize) -> PolyMatrix {
        let entries = (0..rows * cols).map(|_| ring.zero()).collect();
        PolyMatrix { ring, rows, cols, entries }
    }

    pub fn identity(ring: PolyRing, n: usize) -> PolyMatrix {
        PolyMatrix::scalar(ring.one(), n)
    }

    /// f * identity.
    pub fn scalar(f: Polynomial, n: usize) -> PolyMatrix {
        let ring = f.ring().clone();
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = f.clone();
        }
        m
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn from_columns(ring: PolyRing, rows: usize, cols: Vec<Vec<Polynomial>>) -> PolyMatrix {
        let ncols = cols.len();
        let mut m = PolyMatrix::zero(ring, rows, ncols);
        for (c, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, p) in col.into_iter().enumerate() {
                *m.at_mut(r, c) = p;
            }
        }
        m
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.ring.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = PolyMatrix::zero(self.ring.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(other.at(k, c)));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn scale(&self, f: &Polynomial) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| e.mul(f)).collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        assert!(self.ring == other.ring);
        let mut out =
            PolyMatrix::zero(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                *out.at_mut(self.rows + r, self.cols + c) = other.at(r, c).clone();
            }
        }
        out
    }

    /// Kronecker product with the identity of the given rank: entry (i,j)
    /// becomes the block a_ij * I_r. Realizes the induced map on N^m when N
    /// has r ambient generators.
    /// [self | other], matching row counts.
    pub fn hcat(&self, other: &PolyMatrix) -> PolyMatrix {
        assert!(self.ring == other.ring);
        assert_eq!(self.rows, other.rows);
        let mut out = PolyMatrix::zero(self.ring.clone(), self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..other.cols {
                *out.at_mut(r, self.cols + c) = other.at(r, c).clone();
            }
        }
        out
    }

    pub fn kron_identity(&self, r: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.ring.clone(), self.rows * r, self.cols * r);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if e.is_zero() {
                    continue;
                }
                for t in 0..r {
                    *out.at_mut(i * r + t, j * r + t) = e.clone();
                }
            }
        }
        out
    }

    pub fn specialize(&self, target: &PolyRing) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| e.specialize(target)).collect();
        PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.entries.iter().all(|e| e.is_homogeneous())
    }

    /// Determinant by cofactor expansion; only used through 4x4.
    fn det_cofactor(&self) -> Polynomial {
        let n = self.rows;
        match n {
            0 => return self.ring.one(),
            1 => return self.at(0, 0).clone(),
            _ => {}
        }
        let mut acc = self.ring.zero();
        for c in 0..n {
            let e = self.at(0, c);
            if e.is_zero() {
                continue;
            }
            let m = self.minor(0, c).det_cofactor();
            let signed = if c % 2 == 0 { m } else { m.neg() };
            acc = acc.add(&e.mul(&signed));
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            for c in 0..self.cols {
                if c == col {
                    continue;
                }
                entries.push(self.at(r, c).clone());
            }
        }
        PolyMatrix::new(self.ring.clone(), self.rows - 1, self.cols - 1, entries)
    }

    /// Fraction-free Bareiss determinant; every division is exact in the
    /// polynomial ring.
    fn det_bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut a: Vec<Vec<Polynomial>> =
            (0..n).map(|r| (0..n).map(|c| self.at(r, c).clone()).collect()).collect();
        let mut sign_flip = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return self.ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
                a[i][k] = self.ring.zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }

    pub fn det(&self) -> Result<Polynomial, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows <= 4 {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    /// (adjugate, determinant). The identity M * adj = det * I is checked
    /// before returning.
    pub fn adjugate_det(&self) -> Result<(PolyMatrix, Polynomial), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let det = self.det()?;
        if n == 0 {
            return Ok((PolyMatrix::zero(self.ring.clone(), 0, 0), det));
        }
        if n == 1 {
            let adj = PolyMatrix::identity(self.ring.clone(), 1);
            return Ok((adj, det));
        }
        let mut adj = PolyMatrix::zero(self.ring.clone(), n, n);
        for r in 0..n {
            for c in 0..n {
                let m = self.minor(r, c);
                let d = if n - 1 <= 4 { m.det_cofactor() } else { m.det_bareiss() };
                let signed = if (r + c) % 2 == 0 { d } else { d.neg() };
                // Cofactor transpose.
                *adj.at_mut(c, r) = signed;
            }
        }
        let check = self.mul(&adj);
        let expect = PolyMatrix::scalar(det.clone(), n);
        assert_eq!(check, expect, "adjugate identity failed; matrix arithmetic is broken");
        Ok((adj, det))
    }
}

/// Scalar (degree-zero) matrix helper, used for Gram matrices.
pub fn scalar_matrix_det(ring: &PolyRing, entries: &[Vec<Coeff>]) -> Polynomial {
    let n = entries.len();
    let flat: Vec<Polynomial> = entries
        .iter()
        .flat_map(|row| {
            assert_eq!(row.len(), n);
            row.iter().map(|c| ring.constant(c.clone()))
        })
        .collect();
    let m = PolyMatrix::new(ring.clone(), n, n, flat);
    m.det().unwrap()
}
