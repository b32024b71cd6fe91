//! Exact integer matrix algebra.
//!
//! Everything downstream (presentations, homs, Ext/Tor) reduces to Smith
//! normal form and exact linear solving over Z and Z/n. Matrices are dense
//! `i64` with `i128` intermediates; arithmetic that would leave `i64` panics
//! loudly instead of wrapping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("matrix entry exceeds i64 range")
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Rectangular matrix with `d` on the main diagonal.
    pub fn diagonal(rows: usize, cols: usize, d: &[i64]) -> Self {
        let mut m = Self::zero(rows, cols);
        for (i, &v) in d.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                context: "from_rows: ragged row lengths".into(),
            });
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.data.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self[(i, k)] as i128 * other[(k, j)] as i128;
                }
                out[(i, j)] = narrow(acc);
            }
        }
        out
    }

    /// Reduce every entry into `[0, m)`.
    pub fn reduced_mod(&self, m: i64) -> IntMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.rem_euclid(m);
        }
        out
    }

    /// Stack `self` on top of `other` (column counts must agree).
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `self` left of `other` (row counts must agree).
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Keep the given columns, in order.
    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zero(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out[(i, jj)] = self[(i, j)];
            }
        }
        out
    }

    /// Keep the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zero(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(ii, j)] = self[(i, j)];
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn from_col(col: &[i64]) -> IntMatrix {
        IntMatrix { rows: col.len(), cols: 1, data: col.to_vec() }
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
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] += q * row[k]
    fn add_mul_row(&mut self, i: usize, k: usize, q: i64) {
        for j in 0..self.cols {
            let v = self[(i, j)] as i128 + q as i128 * self[(k, j)] as i128;
            self[(i, j)] = narrow(v);
        }
    }

    /// col[j] += q * col[k]
    fn add_mul_col(&mut self, j: usize, k: usize, q: i64) {
        for i in 0..self.rows {
            let v = self[(i, j)] as i128 + q as i128 * self[(i, k)] as i128;
            self[(i, j)] = narrow(v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * a * v = diag(d)` with unimodular `u`, `v` and the
/// divisibility chain `d[i] | d[i+1]`. Inverses are accumulated alongside so
/// that kernel and cokernel generators can be mapped back to the original
/// coordinates without re-solving.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: Vec<i64>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|&&x| x != 0).count()
    }
}

struct SnfCalc {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfCalc {
    fn new(a: IntMatrix) -> Self {
        let (r, c) = (a.rows(), a.cols());
        SnfCalc {
            a,
            u: IntMatrix::identity(r),
            u_inv: IntMatrix::identity(r),
            v: IntMatrix::identity(c),
            v_inv: IntMatrix::identity(c),
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
        self.v_inv.swap_rows(j, k);
    }

    fn add_mul_row(&mut self, i: usize, k: usize, q: i64) {
        self.a.add_mul_row(i, k, q);
        self.u.add_mul_row(i, k, q);
        self.u_inv.add_mul_col(k, i, -q);
    }

    fn add_mul_col(&mut self, j: usize, k: usize, q: i64) {
        self.a.add_mul_col(j, k, q);
        self.v.add_mul_col(j, k, q);
        self.v_inv.add_mul_row(k, j, -q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest-magnitude nonzero entry of the trailing submatrix.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let val = self.a[(i, j)].abs();
                if val != 0 && best.map_or(true, |(_, _, b)| val < b) {
                    best = Some((i, j, val));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn clear_position(&mut self, k: usize) {
        loop {
            let mut dirty = false;
            for i in k + 1..self.a.rows() {
                if self.a[(i, k)] != 0 {
                    let q = self.a[(i, k)].div_euclid(self.a[(k, k)]);
                    self.add_mul_row(i, k, -q);
                    if self.a[(i, k)] != 0 {
                        self.swap_rows(i, k);
                    }
                    dirty = true;
                }
            }
            for j in k + 1..self.a.cols() {
                if self.a[(k, j)] != 0 {
                    let q = self.a[(k, j)].div_euclid(self.a[(k, k)]);
                    self.add_mul_col(j, k, -q);
                    if self.a[(k, j)] != 0 {
                        self.swap_cols(j, k);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                return;
            }
        }
    }

    fn non_divisible_entry(&self, k: usize) -> Option<(usize, usize)> {
        let p = self.a[(k, k)];
        for i in k + 1..self.a.rows() {
            for j in k + 1..self.a.cols() {
                if self.a[(i, j)] % p != 0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn run(mut self) -> SnfResult {
        let steps = self.a.rows().min(self.a.cols());
        for k in 0..steps {
            loop {
                match self.pivot(k) {
                    None => break,
                    Some((pi, pj)) => {
                        self.swap_rows(k, pi);
                        self.swap_cols(k, pj);
                        self.clear_position(k);
                        match self.non_divisible_entry(k) {
                            Some((i, _)) => {
                                // Pull the offending row next to the pivot and retry.
                                self.add_mul_row(k, i, 1);
                            }
                            None => {
                                if self.a[(k, k)] < 0 {
                                    self.negate_row(k);
                                }
                                break;
                            }
                        }
                    }
                }
            }
        }
        let d = (0..steps).map(|k| self.a[(k, k)]).collect();
        SnfResult { d, u: self.u, u_inv: self.u_inv, v: self.v, v_inv: self.v_inv }
    }
}

/// Smith normal form with nonnegative diagonal.
pub fn snf(a: &IntMatrix) -> SnfResult {
    SnfCalc::new(a.clone()).run()
}

/// Exact solve of `a * x = b` over the integers. Multi-column `b` is solved
/// columnwise; `None` when no integer solution exists.
pub fn solve_z(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve_z shape mismatch");
    let s = snf(a);
    let ub = s.u.mul(b);
    let mut y = IntMatrix::zero(a.cols(), b.cols());
    for c in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = ub[(i, c)];
            let d = if i < s.d.len() { s.d[i] } else { 0 };
            if d == 0 {
                if rhs != 0 {
                    return None;
                }
            } else {
                if rhs % d != 0 {
                    return None;
                }
                y[(i, c)] = rhs / d;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// Solve `a * x ≡ b (mod n)`, entries of the result reduced into `[0, n)`.
pub fn solve_mod(a: &IntMatrix, b: &IntMatrix, n: i64) -> Result<Option<IntMatrix>> {
    if n < 2 {
        return Err(Error::InvalidModulus { n });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            context: format!("solve_mod: {} equation rows vs {} rhs rows", a.rows(), b.rows()),
        });
    }
    let s = snf(a);
    let ub = s.u.mul(b);
    let mut y = IntMatrix::zero(a.cols(), b.cols());
    for c in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = ub[(i, c)].rem_euclid(n);
            let d = if i < s.d.len() { s.d[i] } else { 0 };
            if d == 0 {
                if rhs != 0 {
                    return Ok(None);
                }
                continue;
            }
            // d * y ≡ rhs (mod n) solvable iff gcd(d, n) divides rhs.
            let g = gcd(d, n);
            if rhs % g != 0 {
                return Ok(None);
            }
            let n_g = n / g;
            let inv = mod_inverse((d / g).rem_euclid(n_g), n_g)
                .expect("d/g is a unit mod n/g by construction");
            y[(i, c)] = mul_mod(rhs / g, inv, n_g);
        }
    }
    Ok(Some(s.v.mul(&y).reduced_mod(n)))
}

/// Basis of the integer kernel `{x : a * x = 0}`, returned as matrix columns.
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    let keep: Vec<usize> = (0..a.cols())
        .filter(|&i| i >= s.d.len() || s.d[i] == 0)
        .collect();
    s.v.select_cols(&keep)
}

/// Column basis of the lattice spanned by the columns of `a` (the zero
/// lattice yields a matrix with zero columns).
pub fn column_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    let keep: Vec<usize> = (0..s.d.len()).filter(|&i| s.d[i] != 0).collect();
    // im(a) = u_inv * im(diag(d)): scale the kept columns of u_inv by d.
    let mut basis = s.u_inv.select_cols(&keep);
    for (jj, &j) in keep.iter().enumerate() {
        for i in 0..basis.rows() {
            basis[(i, jj)] = narrow(basis[(i, jj)] as i128 * s.d[j] as i128);
        }
    }
    basis
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        narrow(a as i128 / gcd(a, b) as i128 * b as i128).abs()
    }
}

pub fn mul_mod(a: i64, b: i64, n: i64) -> i64 {
    narrow((a as i128 * b as i128).rem_euclid(n as i128))
}

/// Inverse of `a` mod `n`, when `gcd(a, n) = 1`.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1): (i64, i64) = (0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n))
}
