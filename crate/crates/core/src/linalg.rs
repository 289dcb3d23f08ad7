//! Exact linear algebra over a prime field F_p.
//!
//! Every Hom, Ext and tau computation in the crate reduces to row
//! reduction, kernels and linear solves over F_p, so everything here is
//! deterministic and exact. Basis and solution choices are canonical
//! (RREF-derived, free variables zero) so downstream enumerations are
//! reproducible.

use std::fmt;

/// A scalar in F_p. `value` is always reduced into `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub value: u64,
    pub modulus: u64,
}

/// Deterministic primality check; moduli are tiny so trial division is fine.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldElem {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(is_prime(modulus), "modulus {modulus} is not prime");
        FieldElem {
            value: value % modulus,
            modulus,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: FieldElem) -> FieldElem {
        assert_eq!(self.modulus, other.modulus);
        FieldElem {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn sub(self, other: FieldElem) -> FieldElem {
        assert_eq!(self.modulus, other.modulus);
        FieldElem {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn mul(self, other: FieldElem) -> FieldElem {
        assert_eq!(self.modulus, other.modulus);
        FieldElem {
            value: (self.value * other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> FieldElem {
        FieldElem {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by Fermat; panics on zero.
    pub fn inv(self) -> FieldElem {
        assert!(self.value != 0, "inverse of zero");
        let mut result: u64 = 1;
        let mut base = self.value % self.modulus;
        let mut exp = self.modulus - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.modulus;
            }
            base = base * base % self.modulus;
            exp >>= 1;
        }
        FieldElem {
            value: result,
            modulus: self.modulus,
        }
    }
}

/// Dense row-major matrix over F_p. The modulus is stored once; entries are
/// kept reduced. A 0xN or Nx0 matrix is a legitimate value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} mod {} [", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(is_prime(modulus), "modulus {modulus} is not prime");
        Matrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Matrix::zero(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, modulus: u64, entries: &[u64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut m = Matrix::zero(rows, cols, modulus);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i] = e % modulus;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v % self.modulus;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product self * other (so `self` is applied second to column
    /// vectors).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.modulus, other.modulus);
        let p = self.modulus;
        let mut out = Matrix::zero(self.rows, other.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % p;
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.modulus;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.modulus - b) % self.modulus;
        }
        out
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = c % self.modulus;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = *a * c % self.modulus;
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.modulus;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) * (v[j] % p)) % p;
                }
                acc
            })
            .collect()
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.modulus, other.modulus);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    /// Block diagonal of self and other.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus);
        let mut out = Matrix::zero(self.rows + other.rows, self.cols + other.cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let mut out = Matrix::zero(self.rows, self.cols + other.cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }
}

/// Bit-packed Gauss-Jordan over F_2; rows are u64 words.
fn rref_f2(m: &Matrix) -> (Matrix, usize, Vec<usize>) {
    let words = m.cols.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            let mut w = vec![0u64; words];
            for j in 0..m.cols {
                if m.get(i, j) == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        let (wi, bi) = (col / 64, col % 64);
        let Some(sel) = (r..m.rows).find(|&i| rows[i][wi] >> bi & 1 == 1) else {
            continue;
        };
        rows.swap(r, sel);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[wi] >> bi & 1 == 1 {
                for (w, &pw) in row.iter_mut().zip(&pivot_row) {
                    *w ^= pw;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut out = Matrix::zero(m.rows, m.cols, 2);
    for (i, row) in rows.iter().enumerate() {
        for j in 0..m.cols {
            if row[j / 64] >> (j % 64) & 1 == 1 {
                out.set(i, j, 1);
            }
        }
    }
    (out, r, pivots)
}

/// Reduced row echelon form. Returns the reduced matrix, its rank and the
/// pivot column indices in increasing order.
pub fn rref(m: &Matrix) -> (Matrix, usize, Vec<usize>) {
    if m.modulus == 2 {
        return rref_f2(m);
    }
    let p = m.modulus;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        let mut sel = None;
        for i in r..a.rows {
            if a.get(i, col) != 0 {
                sel = Some(i);
                break;
            }
        }
        let Some(i) = sel else { continue };
        if i != r {
            for j in 0..a.cols {
                let (x, y) = (a.get(r, j), a.get(i, j));
                a.set(r, j, y);
                a.set(i, j, x);
            }
        }
        let inv = FieldElem::new(a.get(r, col), p).inv().value;
        for j in 0..a.cols {
            a.set(r, j, a.get(r, j) * inv % p);
        }
        for i2 in 0..a.rows {
            if i2 == r {
                continue;
            }
            let f = a.get(i2, col);
            if f == 0 {
                continue;
            }
            for j in 0..a.cols {
                let v = (a.get(i2, j) + (p - f) * a.get(r, j)) % p;
                a.set(i2, j, v);
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, r, pivots)
}

/// Rank only.
pub fn rank(m: &Matrix) -> usize {
    rref(m).1
}

/// Canonical basis of the null space of `m`, one basis vector per row.
/// Row count equals cols(m) - rank(m). Each free column contributes the
/// RREF-derived vector with that free variable set to one.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let p = m.modulus;
    let n = m.cols;
    let (r, rank, pivots) = rref(m);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Matrix::zero(free.len(), n, p);
    for (k, &fc) in free.iter().enumerate() {
        basis.set(k, fc, 1);
        for (row, &pc) in pivots.iter().enumerate().take(rank) {
            // pivot variable = -coefficient of the free column in its row
            let c = r.get(row, fc);
            if c != 0 {
                basis.set(k, pc, p - c);
            }
        }
    }
    basis
}

/// Solve m * x = rhs. Returns the canonical particular solution with all
/// free variables zero, or None when rhs is outside the column space.
pub fn solve(m: &Matrix, rhs: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(rhs.len(), m.rows, "rhs length must equal row count");
    let p = m.modulus;
    let mut rhs_col = Matrix::zero(m.rows, 1, p);
    for (i, &v) in rhs.iter().enumerate() {
        rhs_col.set(i, 0, v);
    }
    let aug = m.hstack(&rhs_col);
    let (r, _rank, pivots) = rref(&aug);
    // A pivot in the last column means the system is inconsistent.
    if pivots.iter().any(|&c| c == m.cols) {
        return None;
    }
    let mut x = vec![0u64; m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols);
    }
    Some(x)
}

/// Row space membership: does `v` lie in the span of the rows of `m`?
pub fn in_row_space(m: &Matrix, v: &[u64]) -> bool {
    solve(&m.transpose(), v).is_some()
}

/// Canonical row-space basis: RREF rows with zero rows dropped.
pub fn row_basis(m: &Matrix) -> Matrix {
    let (r, rank, _) = rref(m);
    let mut out = Matrix::zero(rank, m.cols, m.modulus);
    for i in 0..rank {
        for j in 0..m.cols {
            out.set(i, j, r.get(i, j));
        }
    }
    out
}
