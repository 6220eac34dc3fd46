//! Dense Gaussian elimination over GF(p).
//!
//! Pivots are always chosen at the lowest-index nonzero entry, so every
//! result (rank, kernel basis, particular solutions) is deterministic.

/// Dense row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of solving `M x = b`.
#[derive(Debug, Clone)]
pub struct LinSolve {
    /// Some particular solution, or None when the system is inconsistent.
    pub solution: Option<Vec<u64>>,
    /// Basis of the kernel of M.
    pub kernel: Vec<Vec<u64>>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn identity(p: u64, n: usize) -> Matrix {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        let cur = self.get(i, j);
        self.set(i, j, (cur + v) % self.p);
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mat_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) * (x[j] % self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    pub fn mat_mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if pivot_row != row {
                for j in 0..self.cols {
                    let a = self.get(row, j);
                    let b = self.get(pivot_row, j);
                    self.set(row, j, b);
                    self.set(pivot_row, j, a);
                }
            }
            let inv = mod_inverse(self.get(row, col), p);
            for j in 0..self.cols {
                let v = self.get(row, j);
                self.set(row, j, v * inv % p);
            }
            for i in 0..self.rows {
                if i != row && self.get(i, col) != 0 {
                    let factor = self.get(i, col);
                    for j in 0..self.cols {
                        let v = (self.get(i, j) + (p - factor) * self.get(row, j)) % p;
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the row space: the nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        (0..pivots.len())
            .map(|i| (0..m.cols).map(|j| m.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row-reduced basis of the column space (the image of `x -> M x`).
    pub fn column_space_basis(&self) -> Vec<Vec<u64>> {
        self.transpose().row_space_basis()
    }

    /// Solves `M x = b`, also reporting the kernel basis and rank.
    pub fn solve(&self, b: &[u64]) -> LinSolve {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let p = self.p;
        // eliminate on the augmented matrix
        let mut aug = Matrix::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % p);
        }
        let pivots = aug.rref();
        let mut rank = 0;
        let mut consistent = true;
        for &c in &pivots {
            if c == self.cols {
                consistent = false;
            } else {
                rank += 1;
            }
        }
        let solution = if consistent {
            let mut x = vec![0u64; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                x[col] = aug.get(row, self.cols);
            }
            Some(x)
        } else {
            None
        };
        // kernel from the plain RREF
        let mut m = self.clone();
        let kpivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = kpivots.iter().copied().collect();
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &col) in kpivots.iter().enumerate() {
                let coeff = m.get(row, free);
                if coeff != 0 {
                    v[col] = (p - coeff) % p;
                }
            }
            kernel.push(v);
        }
        LinSolve {
            solution,
            kernel,
            rank,
        }
    }

    /// Inverse matrix if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Matrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2) mod p
    assert!(a % p != 0, "zero has no inverse");
    mod_pow(a % p, p - 2, p)
}

pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}
