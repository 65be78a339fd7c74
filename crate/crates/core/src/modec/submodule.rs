use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fpalg::{FpMatrix, PrimeField};

/// A subspace of `F_p^n` held by its reduced row echelon basis, so equal
/// subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ambient: usize,
    basis: FpMatrix,
}

impl Submodule {
    /// Span of the given rows.
    pub fn span(field: PrimeField, ambient: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let m = FpMatrix::from_rows(field, ambient, rows)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_matrix(m: &FpMatrix) -> Self {
        Submodule { ambient: m.cols(), basis: m.rref().basis }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Submodule { ambient, basis: FpMatrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Submodule { ambient, basis: FpMatrix::identity(field, ambient) }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduced echelon basis, one row per dimension.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        let mut m = self.basis.clone();
        m.push_row(v);
        m.rank() == self.dim()
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        // v = a B1 = b B2  <=>  (a, -b) in the left kernel of [B1; B2]
        let f = self.field();
        let stacked = self.basis.vstack(&other.basis);
        let k = stacked.left_kernel();
        let mut rows = Vec::with_capacity(k.rows());
        for i in 0..k.rows() {
            let a = &k.row(i)[..self.dim()];
            let mut v = vec![0u64; self.ambient];
            for (j, &c) in a.iter().enumerate() {
                if c != 0 {
                    for (t, &b) in self.basis.row(j).iter().enumerate() {
                        v[t] = f.add(v[t], f.mul(c, b));
                    }
                }
            }
            rows.push(v);
        }
        Submodule::span(f, self.ambient, &rows).expect("rows have ambient length")
    }

    /// Image under a matrix acting on the right.
    pub fn image(&self, m: &FpMatrix) -> Result<Submodule> {
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return Err(Error::Dimension(format!("{}x{} matrix on a {}-dimensional space", m.rows(), m.cols(), self.ambient)));
        }
        Ok(Submodule::from_matrix(&self.basis.mul(m)))
    }

    /// Closed under every matrix in `gens`.
    pub fn is_invariant(&self, gens: &[FpMatrix]) -> bool {
        gens.iter().all(|g| self.image(g).is_ok_and(|im| self.contains(&im)))
    }

    /// Residue rows of the basis.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.basis.row_vecs()
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by dimension, then by the basis rows.
impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim(), self.rows()).cmp(&(other.dim(), other.rows()))
    }
}

impl std::fmt::Debug for Submodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Submodule(dim {} of {}, mod {}: {:?})", self.dim(), self.ambient, self.field().modulus(), self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_operations() {
        let f = PrimeField::new(5).unwrap();
        let a = Submodule::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let b = Submodule::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i, Submodule::span(f, 3, &[vec![0, 3, 0]]).unwrap());
        assert!(a.sum(&b).is_full());
        assert!(a.contains(&i) && b.contains(&i));
        assert!(!a.contains_vector(&[0, 0, 1]));
        assert_eq!(Submodule::zero(f, 3).intersection(&a), Submodule::zero(f, 3));
        assert!(i < a);
    }
}
