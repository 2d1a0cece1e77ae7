//! Exact rational scalars and the dense linear-algebra kernel.
//!
//! Every system solved by the restriction engine is small (a few hundred
//! unknowns at most), so matrices are stored densely. Forward elimination
//! runs fraction-free over integer rows with content removal; the reduced
//! echelon form is then recovered by exact back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix with an explicit column count, so that an empty row list
    /// still carries its width.
    pub fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = int(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row space: every pivot coordinate of the result is zero.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, a) in v.iter_mut().zip(self.matrix.row(r)) {
                if !a.is_zero() {
                    *x -= &factor * a;
                }
            }
        }
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Fraction-free forward elimination followed by back-substitution. Pivots
/// are only searched in the first `pivot_limit` columns.
fn reduce_impl(rows: usize, cols: usize, entries: &[Scalar], pivot_limit: usize) -> Echelon {
    let mut work: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| integer_row(&entries[i * cols..(i + 1) * cols]))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        let (head, tail) = work.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let a = pivot_row[c].clone();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                *x = &a * &*x - &b * y;
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }

    // Back-substitution into reduced form over the rationals.
    let mut out = Matrix::zeros(rows, cols);
    for (i, row) in work.iter().enumerate() {
        // Rows past the rank keep their (possibly nonzero) trailing columns,
        // which matter when pivots are restricted to a prefix.
        let lead = pivots.get(i).map_or_else(BigInt::one, |&p| row[p].clone());
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                out[(i, j)] = Scalar::new(x.clone(), lead.clone());
            }
        }
    }
    for i in (0..pivots.len()).rev() {
        let pc = pivots[i];
        let (above, rest) = out.entries.split_at_mut(i * cols);
        let prow = &rest[..cols];
        for k in 0..i {
            let target = &mut above[k * cols..(k + 1) * cols];
            if target[pc].is_zero() {
                continue;
            }
            let factor = target[pc].clone();
            for (x, y) in target.iter_mut().zip(prow.iter()).skip(pc) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }
    Echelon {
        matrix: out,
        pivots,
    }
}

/// Reduced row echelon form; pivot choice is the first nonzero entry in column order.
pub fn row_reduce(m: &Matrix) -> Echelon {
    reduce_impl(m.rows, m.cols, &m.entries, m.cols)
}

/// Like [`row_reduce`], also returning the invertible transform `T` with `T * m = R`.
pub fn row_reduce_with_transform(m: &Matrix) -> (Echelon, Matrix) {
    let n = m.rows;
    let width = m.cols + n;
    let mut aug = Matrix::zeros(n, width);
    for i in 0..n {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols + i)] = Scalar::one();
    }
    let red = reduce_impl(n, width, &aug.entries, m.cols);
    let mut r = Matrix::zeros(n, m.cols);
    let mut t = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..m.cols {
            r[(i, j)] = red.matrix[(i, j)].clone();
        }
        for j in 0..n {
            t[(i, j)] = red.matrix[(i, m.cols + j)].clone();
        }
    }
    (
        Echelon {
            matrix: r,
            pivots: red.pivots,
        },
        t,
    )
}

pub fn rank(m: &Matrix) -> usize {
    row_reduce(m).rank()
}

/// Solves `m x = b` exactly. `Ok(None)` means the system is inconsistent;
/// free variables of a consistent system are set to zero.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let width = m.cols + 1;
    let mut aug = Vec::with_capacity(m.rows * width);
    for (i, rhs) in b.iter().enumerate() {
        aug.extend(m.row(i).iter().cloned());
        aug.push(rhs.clone());
    }
    let red = reduce_impl(m.rows, width, &aug, m.cols);
    // Inconsistent iff some non-pivot row has a nonzero rhs.
    for i in red.rank()..m.rows {
        if !red.matrix[(i, m.cols)].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(i, m.cols)].clone();
    }
    Ok(Some(x))
}

/// Feasibility of `m x = b` without materializing a solution.
pub fn is_consistent(m: &Matrix, b: &[Scalar]) -> Result<bool> {
    Ok(solve(m, b)?.is_some())
}

/// A basis of the null space; its size is `cols - rank`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let red = row_reduce(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[free] = Scalar::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix[(i, free)].clone();
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of the rows of an echelonized matrix.
pub fn in_row_space(e: &Echelon, v: &[Scalar]) -> bool {
    let mut w = v.to_vec();
    e.reduce(&mut w);
    w.iter().all(Zero::is_zero)
}

/// Real `q`-th root of a rational when it is rational itself.
pub fn rational_root(x: &Scalar, q: u32) -> Option<Scalar> {
    if q == 0 {
        return None;
    }
    if x.is_negative() {
        if q.is_multiple_of(2) {
            return None;
        }
        return rational_root(&-x.clone(), q).map(|r| -r);
    }
    let n = x.numer().nth_root(q);
    let d = x.denom().nth_root(q);
    if num_traits::pow(n.clone(), q as usize) == *x.numer()
        && num_traits::pow(d.clone(), q as usize) == *x.denom()
    {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Integer power (negative exponents allowed for nonzero bases).
pub fn powi(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_reduces_to_itself() {
        let m = Matrix::identity(3);
        let e = row_reduce(&m);
        assert_eq!(e.matrix, m);
        assert_eq!(e.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rank_one_example() {
        let m = Matrix::from_i64(&[&[2, 4], &[1, 2]]);
        let e = row_reduce(&m);
        assert_eq!(e.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(rank(&Matrix::zeros(4, 5)), 0);
        assert_eq!(rank(&Matrix::identity(6)), 6);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![int(3), ratio(-1, 2), int(7)];
        assert_eq!(solve(&Matrix::identity(3), &b).unwrap(), Some(b.clone()));
        let m = Matrix::from_i64(&[&[1], &[1]]);
        assert_eq!(solve(&m, &[int(0), int(1)]).unwrap(), None);
        assert!(solve(&m, &[int(0)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(4)).is_empty());
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&int(16), 4), Some(int(2)));
        assert_eq!(rational_root(&ratio(-1, 32), 5), Some(ratio(-1, 2)));
        assert_eq!(rational_root(&int(2), 2), None);
        assert_eq!(rational_root(&int(-4), 2), None);
    }
}
