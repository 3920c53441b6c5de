//! Dense linear algebra over a prime field F_p.
//!
//! Everything downstream (Hom spaces, minimal models, module resolutions) is
//! reduced to ranks, kernels and echelon forms computed here. Elements are
//! stored as `u64` residues in `[0, p)`; `p` must be below 2^32 so products
//! fit in a `u64`.

use std::fmt;

pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_PRIME }
    }
}

impl Field {
    /// Returns `None` unless `p` is a prime below 2^32.
    pub fn new(p: u64) -> Option<Self> {
        if !(2..1 << 32).contains(&p) {
            return None;
        }
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return None;
            }
            d += 1;
        }
        Some(Field { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for readable output.
    pub fn to_i64(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `(-1)^n`.
    pub fn sign(&self, n: i32) -> u64 {
        if n.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }
}

/// Row-major dense matrix of residues.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, f: &Field, r: usize, c: usize, v: u64) {
        let i = r * self.cols + c;
        self.data[i] = f.add(self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_to(f, i, j, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = 0;
                for (k, &x) in v.iter().enumerate() {
                    if x != 0 {
                        s = f.add(s, f.mul(self.get(i, k), x));
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let cur = self.get(i, j);
                        self.set(i, j, f.sub(cur, f.mul(factor, v)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, f: &Field, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Incrementally maintained echelon basis of a row space.
///
/// Used to pick deterministic complements: inserting vectors in a fixed order
/// keeps exactly those that are independent of everything inserted before.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the stored basis; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row.iter()) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep the basis fully reduced so `reduce` is a single pass
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(v.iter()) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}
