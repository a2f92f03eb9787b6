//! Exact integer-matrix algebra.
//!
//! Everything here works over arbitrary-precision integers. The Smith normal
//! form is the workhorse: span, index and kernel questions about weight
//! configurations all reduce to it.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. All rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Converts to machine integers, failing if an entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(to_i64).collect())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if !s.is_zero() {
                let t = s * q;
                self.entries[dst * self.cols + j] -= t;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + src];
            if !s.is_zero() {
                let t = s * q;
                self.entries[i * self.cols + dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn to_i64(x: &BigInt) -> Option<i64> {
    i64::try_from(x).ok()
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Shape of the source matrix.
    pub of: (usize, usize),
}

impl SmithDecomposition {
    /// Nonzero invariant factors d1 | d2 | ... in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.of.0.min(self.of.1);
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.of.0.min(self.of.1);
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Index of the smallest-magnitude nonzero entry in the block `[t.., t..]`.
fn smallest_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).magnitude() <= x.magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen smallest-magnitude first (first in row-major order on
/// ties) so the transforms are reproducible.
pub fn snf(a: &IntegerMatrix) -> Result<SmithDecomposition> {
    if a.is_empty() {
        return Err(Error::Dimension("Smith form of an empty matrix".into()));
    }
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; move the
                // smallest entry of row/column t to the pivot and retry.
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = d.get(i, t);
                    if !x.is_zero() && x.magnitude() < d.get(best.0, best.1).magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = d.get(t, j);
                    if !x.is_zero() && x.magnitude() < d.get(best.0, best.1).magnitude() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // Divisibility: the pivot must divide the remaining block.
            let p = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    // row t += row i, then column t is reduced again
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    Ok(SmithDecomposition { d, u, v, of: (m, n) })
}

/// Row-style Hermite normal form of a list of row vectors.
///
/// Output rows are in echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped, so the result
/// is the canonical basis of the row lattice.
pub fn hnf_rows(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= m.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m.len() {
                let x = &m[i][col];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if m[b][col].magnitude() <= x.magnitude() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[pivot_row][col]);
                let (head, tail) = m.split_at_mut(i);
                sub_vec_multiple(&mut tail[0], &head[pivot_row], &q);
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row >= m.len() || m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..pivot_row {
            let q = m[i][col].div_floor(&m[pivot_row][col]);
            let (head, tail) = m.split_at_mut(pivot_row);
            sub_vec_multiple(&mut head[i], &tail[0], &q);
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

fn sub_vec_multiple(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= s * q;
        }
    }
}

/// Saturated basis of `{v : A v = 0}`, HNF-reduced.
pub fn kernel_basis(a: &IntegerMatrix) -> Result<Vec<Vec<BigInt>>> {
    let s = snf(a)?;
    let r = s.rank();
    let n = a.cols();
    let raw: Vec<Vec<BigInt>> = (r..n).map(|j| s.v.column(j)).collect();
    Ok(hnf_rows(&raw, n))
}

fn check_lengths<V: AsRef<[i64]>>(vectors: &[V], ambient_rank: usize) -> Result<()> {
    if let Some(bad) = vectors.iter().find(|v| v.as_ref().len() != ambient_rank) {
        return Err(Error::Dimension(format!(
            "vector of length {} in ambient rank {ambient_rank}",
            bad.as_ref().len()
        )));
    }
    Ok(())
}

/// Whether the vectors generate all of `Z^ambient_rank`.
pub fn generates_full_lattice<V: AsRef<[i64]>>(vectors: &[V], ambient_rank: usize) -> Result<bool> {
    Ok(cokernel_order(vectors, ambient_rank)? == CokernelOrder::Finite(BigUint::one()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CokernelOrder {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for CokernelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CokernelOrder::Finite(n) => write!(f, "{n}"),
            CokernelOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// Order of `Z^ambient_rank / <vectors>`.
pub fn cokernel_order<V: AsRef<[i64]>>(vectors: &[V], ambient_rank: usize) -> Result<CokernelOrder> {
    check_lengths(vectors, ambient_rank)?;
    if ambient_rank == 0 {
        return Ok(CokernelOrder::Finite(BigUint::one()));
    }
    if vectors.is_empty() {
        return Ok(CokernelOrder::Infinite);
    }
    let m = IntegerMatrix::from_rows(vectors)?;
    let s = snf(&m)?;
    let factors = s.invariant_factors();
    if factors.len() < ambient_rank {
        return Ok(CokernelOrder::Infinite);
    }
    let prod: BigInt = factors.iter().product();
    Ok(CokernelOrder::Finite(prod.magnitude().clone()))
}

/// Solves `c * B = target` for an integer row vector `c`.
///
/// Returns `None` when no integral solution exists.
pub fn solve_left(b: &IntegerMatrix, target: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if target.len() != b.cols() {
        return Err(Error::Dimension(format!(
            "target of length {} against {} columns",
            target.len(),
            b.cols()
        )));
    }
    // U B V = D  =>  c B = t  <=>  (c U^-1) D = t V
    let s = snf(b)?;
    let tv: Vec<BigInt> = (0..b.cols())
        .map(|j| target.iter().enumerate().map(|(i, x)| x * s.v.get(i, j)).sum())
        .collect();
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); b.rows()];
    for (j, tvj) in tv.iter().enumerate() {
        let dj = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
        if dj.is_zero() {
            if !tvj.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = tvj.div_rem(&dj);
            if !r.is_zero() {
                return Ok(None);
            }
            y[j] = q;
        }
    }
    // c = y U
    let c = (0..b.rows())
        .map(|j| y.iter().enumerate().map(|(i, yi)| yi * s.u.get(i, j)).sum())
        .collect();
    Ok(Some(c))
}

/// Widens a small vector.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn is_unit(x: &BigInt) -> bool {
    x.magnitude().is_one() && x.sign() != Sign::NoSign
}
