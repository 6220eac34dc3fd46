//! Exact linear algebra over prime fields, and the permutation module B
//! carrying the right action `(v_h^i)^g = v_{hg}^i - v_g^i`.

pub mod linalg;

use crate::error::{Error, Result};
use crate::group::TableGroup;
use linalg::Matrix;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Vectors over GF(p) switch to a sparse map representation above this
/// dimension.
pub const DENSE_THRESHOLD: u64 = 4096;

/// A vector over GF(p), dense or sparse depending on dimension.
///
/// Residues are canonical (`0..p-1`); the sparse map stores no zeros, so two
/// representations of the same vector compare and hash equal.
#[derive(Debug, Clone)]
pub struct GfpVec {
    p: u64,
    dim: u64,
    repr: Repr,
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(Vec<u64>),
    Sparse(BTreeMap<u64, u64>),
}

impl GfpVec {
    pub fn zero(p: u64, dim: u64) -> GfpVec {
        let repr = if dim <= DENSE_THRESHOLD {
            Repr::Dense(vec![0; dim as usize])
        } else {
            Repr::Sparse(BTreeMap::new())
        };
        GfpVec { p, dim, repr }
    }

    pub fn zero_sparse(p: u64, dim: u64) -> GfpVec {
        GfpVec {
            p,
            dim,
            repr: Repr::Sparse(BTreeMap::new()),
        }
    }

    pub fn basis(p: u64, dim: u64, coord: u64) -> GfpVec {
        let mut v = GfpVec::zero(p, dim);
        v.add_at(coord, 1);
        v
    }

    pub fn from_coords(p: u64, coords: &[u64]) -> GfpVec {
        let mut v = GfpVec::zero(p, coords.len() as u64);
        for (i, &c) in coords.iter().enumerate() {
            v.add_at(i as u64, c % p);
        }
        v
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn get(&self, coord: u64) -> u64 {
        debug_assert!(coord < self.dim);
        match &self.repr {
            Repr::Dense(d) => d[coord as usize],
            Repr::Sparse(s) => s.get(&coord).copied().unwrap_or(0),
        }
    }

    /// Adds `val` (mod p) at `coord`.
    pub fn add_at(&mut self, coord: u64, val: u64) {
        debug_assert!(coord < self.dim, "coord {coord} out of dim {}", self.dim);
        let val = val % self.p;
        if val == 0 {
            return;
        }
        match &mut self.repr {
            Repr::Dense(d) => {
                d[coord as usize] = (d[coord as usize] + val) % self.p;
            }
            Repr::Sparse(s) => {
                let entry = s.entry(coord).or_insert(0);
                *entry = (*entry + val) % self.p;
                if *entry == 0 {
                    s.remove(&coord);
                }
            }
        }
    }

    pub fn sub_at(&mut self, coord: u64, val: u64) {
        let val = val % self.p;
        self.add_at(coord, self.p - val);
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Dense(d) => d.iter().all(|&x| x == 0),
            Repr::Sparse(s) => s.is_empty(),
        }
    }

    pub fn nonzero(&self) -> Vec<(u64, u64)> {
        match &self.repr {
            Repr::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i as u64, x))
                .collect(),
            Repr::Sparse(s) => s.iter().map(|(&c, &x)| (c, x)).collect(),
        }
    }

    pub fn add(&self, other: &GfpVec) -> Result<GfpVec> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (c, val) in other.nonzero() {
            out.add_at(c, val);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GfpVec) -> Result<GfpVec> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (c, val) in other.nonzero() {
            out.sub_at(c, val);
        }
        Ok(out)
    }

    pub fn neg(&self) -> GfpVec {
        let mut out = GfpVec {
            p: self.p,
            dim: self.dim,
            repr: match &self.repr {
                Repr::Dense(_) => Repr::Dense(vec![0; self.dim as usize]),
                Repr::Sparse(_) => Repr::Sparse(BTreeMap::new()),
            },
        };
        for (c, val) in self.nonzero() {
            out.add_at(c, self.p - val);
        }
        out
    }

    pub fn scale(&self, k: u64) -> GfpVec {
        let k = k % self.p;
        let mut out = GfpVec::zero(self.p, self.dim);
        for (c, val) in self.nonzero() {
            out.add_at(c, val * k % self.p);
        }
        out
    }

    /// Converts to the other representation (testing aid).
    pub fn to_sparse(&self) -> GfpVec {
        let mut s = BTreeMap::new();
        for (c, val) in self.nonzero() {
            s.insert(c, val);
        }
        GfpVec {
            p: self.p,
            dim: self.dim,
            repr: Repr::Sparse(s),
        }
    }

    pub fn to_dense(&self) -> GfpVec {
        let mut d = vec![0u64; self.dim as usize];
        for (c, val) in self.nonzero() {
            d[c as usize] = val;
        }
        GfpVec {
            p: self.p,
            dim: self.dim,
            repr: Repr::Dense(d),
        }
    }

    pub fn dense_coords(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.dim as usize];
        for (c, val) in self.nonzero() {
            d[c as usize] = val;
        }
        d
    }

    fn check_compat(&self, other: &GfpVec) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                expected: self.p,
                got: other.p,
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl PartialEq for GfpVec {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.dim != other.dim {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => a == b,
            (Repr::Sparse(a), Repr::Sparse(b)) => a == b,
            _ => self.nonzero() == other.nonzero(),
        }
    }
}

impl Eq for GfpVec {}

impl std::hash::Hash for GfpVec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.dim.hash(state);
        for (c, v) in self.nonzero() {
            c.hash(state);
            v.hash(state);
        }
    }
}

impl PartialOrd for GfpVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GfpVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p, self.dim, self.nonzero()).cmp(&(other.p, other.dim, other.nonzero()))
    }
}

/// The module `B = B_1 + ... + B_r` over GF(p) with one block per copy of
/// the nontrivial permutation module of A.
///
/// Coordinates: block `i` (0-based, `i < r`) and non-identity `g` of A map to
/// `i*(|A|-1) + (g-1)`; the identity of A has no coordinate (`v_0 = 0`).
#[derive(Debug, Clone)]
pub struct ModuleB {
    p: u64,
    r: u64,
    a: Arc<TableGroup>,
    dim: u64,
    block_dim: u64,
}

impl ModuleB {
    pub fn new(p: u64, r: u64, a: Arc<TableGroup>) -> ModuleB {
        let block_dim = (a.order() - 1) as u64;
        ModuleB {
            p,
            r,
            dim: r * block_dim,
            block_dim,
            a,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn dim(&self) -> u64 {
        self.dim
    }
    pub fn block_dim(&self) -> u64 {
        self.block_dim
    }
    pub fn a(&self) -> &Arc<TableGroup> {
        &self.a
    }

    /// Coordinate of basis vector `v_g^i`; `g` must not be the identity.
    pub fn coord(&self, block: u64, g: usize) -> u64 {
        debug_assert!(block < self.r && g >= 1 && (g as u64) <= self.block_dim);
        block * self.block_dim + (g as u64 - 1)
    }

    pub fn decode(&self, coord: u64) -> (u64, usize) {
        (coord / self.block_dim, (coord % self.block_dim + 1) as usize)
    }

    /// Basis vector `v_g^i` (zero vector when `g` is the identity).
    pub fn basis_vec(&self, block: u64, g: usize) -> GfpVec {
        if g == 0 {
            GfpVec::zero(self.p, self.dim)
        } else {
            GfpVec::basis(self.p, self.dim, self.coord(block, g))
        }
    }

    pub fn zero(&self) -> GfpVec {
        GfpVec::zero(self.p, self.dim)
    }

    /// Right action of `g` in A, extended linearly from
    /// `(v_h^i)^g = v_{hg}^i - v_g^i`.
    pub fn act(&self, v: &GfpVec, g: usize) -> Result<GfpVec> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        if g == 0 {
            return Ok(v.clone());
        }
        let mut out = match &v.repr {
            Repr::Dense(_) => GfpVec::zero(self.p, self.dim),
            Repr::Sparse(_) => GfpVec::zero_sparse(self.p, self.dim),
        };
        let mut block_acc = vec![0u64; self.r as usize];
        for (c, val) in v.nonzero() {
            let (block, h) = self.decode(c);
            let hg = self.a.mul_idx(h, g);
            if hg != 0 {
                out.add_at(self.coord(block, hg), val);
            }
            block_acc[block as usize] = (block_acc[block as usize] + val) % self.p;
        }
        for (block, &acc) in block_acc.iter().enumerate() {
            if acc != 0 {
                out.sub_at(self.coord(block as u64, g), acc);
            }
        }
        Ok(out)
    }

    /// Matrix of `act(. , g)` restricted to one block (identical across
    /// blocks), with columns indexed by `v_h` for `h = 1..|A|-1`.
    pub fn action_matrix(&self, g: usize) -> Matrix {
        let n = self.block_dim as usize;
        let mut m = Matrix::zeros(self.p, n, n);
        for h in 1..=n {
            let hg = self.a.mul_idx(h, g);
            if hg != 0 {
                m.add_to(hg - 1, h - 1, 1);
            }
            if g != 0 {
                m.add_to(g - 1, h - 1, self.p - 1);
            }
        }
        m
    }

    /// Row-reduced basis of the commutator subspace `[g, B_i]`, i.e. the
    /// image of `v -> act(v, g) - v` on block `i`. The action preserves
    /// blocks, so the basis stays inside block `i`'s span; vectors are
    /// returned in full-module coordinates.
    pub fn commutator_image(&self, g: usize, block: u64) -> Vec<GfpVec> {
        let n = self.block_dim as usize;
        let mut m = self.action_matrix(g);
        for j in 0..n {
            m.add_to(j, j, self.p - 1);
        }
        m.column_space_basis()
            .into_iter()
            .map(|row| {
                let mut v = GfpVec::zero(self.p, self.dim);
                for (j, &val) in row.iter().enumerate() {
                    if val != 0 {
                        v.add_at(self.coord(block, j + 1), val);
                    }
                }
                v
            })
            .collect()
    }

    /// Restriction of `v` to one block, in full-module coordinates.
    pub fn block_component(&self, v: &GfpVec, block: u64) -> GfpVec {
        let mut out = GfpVec::zero(self.p, self.dim);
        for (c, val) in v.nonzero() {
            if c / self.block_dim == block {
                out.add_at(c, val);
            }
        }
        out
    }
}
