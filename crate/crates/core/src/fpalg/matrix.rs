use std::fmt;

use super::field::PrimeField;
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// Dense matrix over a prime field, row-major.
///
/// Vectors are rows: a matrix `A` acts on a row vector `v` as `v * A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// The nonzero rows of the reduced echelon form.
    pub basis: FpMatrix,
    /// Pivot column of each basis row.
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from residue rows. All rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(FpMatrix { field, rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let conv: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, cols, &conv)
    }

    pub fn field(&self) -> PrimeField {
        self.field
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&v| self.field.reduce(v)));
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.rows) && self.is_square()
    }

    fn check_field(&self, other: &FpMatrix) {
        assert_eq!(self.field, other.field, "mixed moduli");
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let f = self.field;
        let p = f.modulus();
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c % f.modulus())).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut result = FpMatrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        self.check_field(other);
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Select a subset of columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    pub fn trace(&self) -> u64 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(piv, r);
            let inv = f.inv(a.get(r, c));
            a.scale_row(r, inv);
            for i in 0..a.rows {
                if i != r {
                    let factor = a.get(i, c);
                    if factor != 0 {
                        a.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.data.truncate(r * a.cols);
        a.rows = r;
        Rref { rank: r, basis: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis (as rows) of the right null space `{ v : A v^T = 0 }`.
    pub fn kernel(&self) -> FpMatrix {
        let f = self.field;
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivots {
            is_pivot[c] = true;
        }
        let mut k = FpMatrix::zeros(f, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (i, &pc) in rr.pivots.iter().enumerate() {
                v[pc] = f.neg(rr.basis.get(i, free));
            }
            k.push_row(&v);
        }
        k
    }

    /// Basis of the left null space `{ v : v A = 0 }`.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let rr = aug.rref();
        if rr.rank < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(rr.basis.select_cols(&cols))
    }

    pub fn det(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field;
        let mut a = self.clone();
        let n = self.rows;
        let mut det = 1 % f.modulus();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a.get(i, c) != 0) else {
                return Ok(0);
            };
            if piv != c {
                a.swap_rows(piv, c);
                det = f.neg(det);
            }
            let pv = a.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(a.get(i, c), inv);
                if factor != 0 {
                    a.add_row_multiple(i, c, f.neg(factor));
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(xI - A)`, via reduction to upper
    /// Hessenberg form followed by the standard determinant recurrence.
    pub fn charpoly(&self) -> Result<FpPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            let t_inv = f.inv(h.get(m, m - 1));
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), t_inv);
                if u == 0 {
                    continue;
                }
                // row_i -= u row_m ; col_m += u col_i keeps the similarity class
                h.add_row_multiple(i, m, f.neg(u));
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                    h.data[r * n + m] = v;
                }
            }
        }
        let mut polys: Vec<FpPoly> = Vec::with_capacity(n + 1);
        polys.push(FpPoly::one(f));
        for m in 1..=n {
            let lin = FpPoly::from_coeffs(f, vec![f.neg(h.get(m - 1, m - 1)), 1]);
            let mut pm = lin.mul(&polys[m - 1]);
            let mut t = 1u64;
            for i in 1..m {
                t = f.mul(t, h.get(m - i, m - i - 1));
                let c = f.mul(t, h.get(m - i - 1, m - 1));
                if c != 0 {
                    pm = pm.sub(&polys[m - i - 1].scale(c));
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().unwrap())
    }

    /// Evaluate a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, poly: &FpPoly) -> FpMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = FpMatrix::zeros(self.field, n, n);
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.data[i * n + i] = v;
            }
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, c: u64) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: u64) {
        let f = self.field;
        let cols = self.cols;
        for j in 0..cols {
            let s = self.data[src * cols + j];
            if s != 0 {
                let d = &mut self.data[dst * cols + j];
                *d = f.add(*d, f.mul(c, s));
            }
        }
    }
}

/// Rank, row-space basis and kernel basis in one call.
pub fn rref_kernel(m: &FpMatrix) -> (usize, FpMatrix, FpMatrix) {
    let rr = m.rref();
    (rr.rank, rr.basis, m.kernel())
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix mod {} ({}x{})", self.field.modulus(), self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
