//! Exact integer and rational matrix algebra.
//!
//! Conventions: matrices are row-major, HNF is row-style (`H = U*M`, echelon,
//! positive pivots, entries above a pivot reduced into `[0, pivot)`), and SNF is
//! `S = U*M*V` with a nonnegative divisibility chain on the diagonal.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Self::new(rows.len(), cols, data)
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -&self[(i, j)];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -&self[(i, j)];
        }
    }

    /// Replaces rows `(a, b)` by `(p*ra + q*rb, r*ra + s*rb)`.
    fn combine_rows(&mut self, a: usize, b: usize, [p, q, r, s]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * &x + s * &y;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = r * &x + s * &y;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * &m[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().is_ok_and(|d| d.abs().is_one())
    }

    /// Inverse of a unimodular matrix (again an integer matrix).
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        // H = U*M with H in HNF; M unimodular forces H = I, so U = M^-1.
        let (h, u) = hnf(self);
        if h != Self::identity(self.rows) {
            return Err(Error::NotUnimodular);
        }
        Ok(u)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Subset of rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        RatMatrix {
            rows: indices.len(),
            cols: self.cols,
            data: indices
                .iter()
                .flat_map(|&i| self.row(i).iter().cloned())
                .collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m[(r, c)].recip();
            for j in 0..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in 0..m.cols {
                    let v = &factor * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Solves `x * self = target` for a row vector `x`, if a solution exists.
    ///
    /// When the rows of `self` are independent the solution is unique.
    pub fn solve_left(&self, target: &[BigRational]) -> Option<Vec<BigRational>> {
        if target.len() != self.cols {
            return None;
        }
        // transpose system: self^T x^T = target^T, augmented
        let mut aug = RatMatrix::zeros(self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(j, i)] = self[(i, j)].clone();
            }
        }
        for (j, t) in target.iter().enumerate() {
            aug[(j, self.rows)] = t.clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.rows];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.rows)].clone();
        }
        Some(x)
    }

    /// Scales every row by the lcm of its denominators to get an integer matrix
    /// with the same row space relations.
    pub fn scaled_to_integers(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        let l = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = (&self[(i, j)] * BigRational::from_integer(l.clone())).to_integer();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank over `Q` by exact Gaussian elimination.
pub fn rational_rank(m: &RatMatrix) -> usize {
    m.rref().1.len()
}

/// `a^-1 mod m` in `[0, m)`, for `m > 0`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if !m.is_positive() {
        return None;
    }
    let (g, s, _) = ext_gcd_pair(&a.mod_floor(m), m);
    g.is_one().then(|| s.mod_floor(m))
}

/// Two-term extended gcd: `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd_pair(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Gcd of a nonempty list with Bézout coefficients: `Σ c_i v_i = g >= 0`.
///
/// An all-zero list gives `g = 0` with all-zero coefficients.
pub fn ext_gcd(values: &[BigInt]) -> Result<(BigInt, Vec<BigInt>)> {
    if values.is_empty() {
        return Err(Error::Empty("ext_gcd needs at least one value"));
    }
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        let (g2, s, t) = ext_gcd_pair(&g, v);
        if s != BigInt::one() {
            for c in &mut coeffs[..i] {
                *c *= &s;
            }
        }
        coeffs[i] = t;
        g = g2;
    }
    Ok((g, coeffs))
}

/// Completes a primitive row to a matrix in `GL_n(Z)` that has it as row `index`.
///
/// Follows the induction on the length: split off `p_1`, complete the scaled tail
/// `(p_2, ..., p_n)/d`, stitch with a Bézout pair for `gcd(p_1, d) = 1`, then move
/// the row into place with a transposition.
pub fn unimodular_complete(row: &[BigInt], index: usize) -> Result<IntMatrix> {
    if row.is_empty() {
        return Err(Error::Empty("unimodular completion of an empty row"));
    }
    if index >= row.len() {
        return Err(Error::InvalidArgument(format!(
            "row index {index} out of range for length {}",
            row.len()
        )));
    }
    let (g, _) = ext_gcd(row)?;
    if !g.is_one() {
        return Err(Error::NotPrimitive(g.to_string()));
    }
    let mut m = complete_as_first_row(row);
    m.swap_rows(0, index);
    Ok(m)
}

fn complete_as_first_row(p: &[BigInt]) -> IntMatrix {
    let n = p.len();
    match n {
        1 => IntMatrix::new(1, 1, vec![p[0].clone()]).expect("1x1"),
        2 => {
            let (_, s, t) = ext_gcd_pair(&p[0], &p[1]);
            IntMatrix::new(2, 2, vec![p[0].clone(), p[1].clone(), -t, s]).expect("2x2")
        }
        _ => {
            let tail = &p[1..];
            let (d, _) = ext_gcd(tail).expect("nonempty tail");
            if d.is_zero() {
                // p_1 = ±1 and the tail vanishes
                let mut m = IntMatrix::identity(n);
                m[(0, 0)] = p[0].clone();
                return m;
            }
            let scaled: Vec<BigInt> = tail.iter().map(|x| x / &d).collect();
            // G' has the scaled tail as its last row; G'' is the rest.
            let mut g_prime = complete_as_first_row(&scaled);
            let m = n - 1;
            g_prime.swap_rows(0, m - 1);
            let (_, s, t) = ext_gcd_pair(&p[0], &d);
            let mut g = IntMatrix::zeros(n, n);
            for j in 0..n {
                g[(0, j)] = p[j].clone();
            }
            for i in 0..m - 1 {
                for j in 0..m {
                    g[(i + 1, j + 1)] = g_prime[(i, j)].clone();
                }
            }
            g[(n - 1, 0)] = -t;
            for j in 0..m {
                g[(n - 1, j + 1)] = &s * &scaled[j];
            }
            g
        }
    }
}

/// Unimodular 2x2 step `[p, q, r, s]` sending `(a, b)` to `(g, 0)`.
///
/// A plain subtraction when `a | b`, so the pivot only changes when it shrinks.
fn elimination_step(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if !a.is_zero() && b.is_multiple_of(a) {
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let (g, s, t) = ext_gcd_pair(a, b);
    [s, t, -(b / &g), a / &g]
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular, `H = U*M`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        for i in r + 1..h.rows() {
            if h[(i, c)].is_zero() {
                continue;
            }
            let [p, q, x, y] = elimination_step(&h[(r, c)], &h[(i, c)]);
            h.combine_rows(r, i, [&p, &q, &x, &y]);
            u.combine_rows(r, i, [&p, &q, &x, &y]);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let k = -h[(i, c)].div_floor(&pivot);
            h.add_row_multiple(i, r, &k);
            u.add_row_multiple(i, r, &k);
        }
        r += 1;
    }
    (h, u)
}

/// Checks the row-style HNF shape used by [`hnf`].
pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let lead = h.row(i).iter().position(|x| !x.is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                let pivot = &h[(i, c)];
                if !pivot.is_positive() {
                    return false;
                }
                if (0..i).any(|k| h[(k, c)].is_negative() || &h[(k, c)] >= pivot) {
                    return false;
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// Smith normal form: returns `(S, U, V)` with `S = U*M*V`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (m.rows(), m.cols());
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let Some((pi, pj)) = smallest_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let [p, q, x, y] = elimination_step(&s[(t, t)], &s[(i, t)]);
                s.combine_rows(t, i, [&p, &q, &x, &y]);
                u.combine_rows(t, i, [&p, &q, &x, &y]);
                changed = true;
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let [p, q, x, y] = elimination_step(&s[(t, t)], &s[(t, j)]);
                s.combine_cols(t, j, [&p, &q, &x, &y]);
                v.combine_cols(t, j, [&p, &q, &x, &y]);
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into row t and repeat
            let pivot = s[(t, t)].clone();
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

fn smallest_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Solution set of an integer linear system `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    /// Particular solution, reduced into the fundamental domain of the kernel lattice.
    pub particular: Vec<BigInt>,
    /// Basis of `{v : A v = 0}`, rows in Hermite normal form.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Decides solvability of `A x = b` over `Z` via the Smith form.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntegerSolution>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let n = a.cols();
    let (s, u, v) = snf(a);
    let c = u.mul_vec(b)?;
    let rank = (0..s.rows().min(n))
        .take_while(|&i| !s[(i, i)].is_zero())
        .count();
    let mut y = vec![BigInt::zero(); n];
    for i in 0..rank {
        let (q, r) = c[i].div_rem(&s[(i, i)]);
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    if c[rank..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut particular = v.mul_vec(&y)?;
    let kernel = if rank < n {
        let mut basis = IntMatrix::zeros(n - rank, n);
        for (r, j) in (rank..n).enumerate() {
            for i in 0..n {
                basis[(r, i)] = v[(i, j)].clone();
            }
        }
        let (h, _) = hnf(&basis);
        let rows: Vec<Vec<BigInt>> = h
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        for row in &rows {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let k = particular[p].div_floor(&row[p]);
            for (x, r) in particular.iter_mut().zip(row) {
                *x -= &k * r;
            }
        }
        rows
    } else {
        Vec::new()
    };
    Ok(Some(IntegerSolution { particular, kernel }))
}

/// A primitive integer vector `k` with `k * M = 0` for the rows of `m`, if the
/// rows are dependent. Taken from the first zero row of the HNF transform.
pub fn primitive_left_kernel_vector(m: &RatMatrix) -> Option<Vec<BigInt>> {
    let scaled = m.scaled_to_integers();
    let (h, u) = hnf(&scaled);
    (0..h.rows())
        .find(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
}
