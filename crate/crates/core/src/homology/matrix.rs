//! Exact integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision integers so that the normal form is exact
//! regardless of intermediate entry growth. Pivots are chosen by minimal
//! absolute value to keep that growth in check on desk-scale matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
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
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// `cols` must be given explicitly so that matrices with zero rows keep
    /// their column count.
    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<i64>]) -> Result<Self, ShapeError> {
        if data.len() != rows {
            return Err(ShapeError {
                expected: rows,
                got: data.len(),
                what: "rows",
            });
        }
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            if row.len() != cols {
                return Err(ShapeError {
                    expected: cols,
                    got: row.len(),
                    what: "columns",
                });
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.cols != other.rows {
            return Err(ShapeError {
                expected: self.cols,
                got: other.rows,
                what: "inner dimension",
            });
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
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Rank of the matrix reduced mod 2, by Gaussian elimination over GF(2).
    ///
    /// Kept independent of the Smith normal form path so the two can be
    /// cross-checked against each other.
    pub fn rank_mod2(&self) -> usize {
        let mut bits: Vec<Vec<bool>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).is_odd()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let pivot = (rank..self.rows).find(|&r| bits[r][col]);
            let Some(p) = pivot else { continue };
            bits.swap(rank, p);
            for r in 0..self.rows {
                if r != rank && bits[r][col] {
                    for c in col..self.cols {
                        bits[r][c] ^= bits[rank][c];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Inconsistent matrix dimensions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected {expected} {what}, got {got}")]
pub struct ShapeError {
    pub expected: usize,
    pub got: usize,
    pub what: &'static str,
}

/// Result of a Smith normal form computation.
///
/// `invariant_factors` are the positive diagonal entries d_1 | d_2 | ... | d_r
/// of the normal form; `rank` is the rank over the rationals and equals the
/// number of factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

/// Computes the Smith normal form of an integer matrix.
///
/// Row/column reduction with the pivot chosen as a minimal-absolute-value
/// nonzero entry; once a pivot divides the whole remaining submatrix it is
/// final, which makes the diagonal a divisibility chain without a fix-up pass.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;

    while t < rows && t < cols {
        let Some((pi, pj)) = min_abs_pivot(&a, t) else {
            break;
        };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            clear_column(&mut a, t);
            clear_row(&mut a, t);
            // Column swaps inside clear_row can dirty the column again (and
            // vice versa); only proceed once both are simultaneously clear.
            if !column_clear(&a, t) || !row_clear(&a, t) {
                continue;
            }
            // Pivot must divide every remaining entry, otherwise fold the
            // offending row in and keep reducing. The fold keeps the pivot
            // intact because its column entry is zero at this point.
            match find_nondivisible(&a, t) {
                Some(i) => add_row(&mut a, t, i),
                None => break,
            }
        }

        factors.push(a.get(t, t).abs());
        t += 1;
    }

    SmithNormalForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

fn min_abs_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((_, _, b)) if *b <= abs => {}
                _ => best = Some((i, j, abs)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_rows(a: &mut IntegerMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols {
        let v1 = a.get(r1, j).clone();
        let v2 = a.get(r2, j).clone();
        a.set(r1, j, v2);
        a.set(r2, j, v1);
    }
}

fn swap_cols(a: &mut IntegerMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows {
        let v1 = a.get(i, c1).clone();
        let v2 = a.get(i, c2).clone();
        a.set(i, c1, v2);
        a.set(i, c2, v1);
    }
}

/// row_dst -= q * row_src
fn submul_row(a: &mut IntegerMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols {
        let v = a.get(dst, j) - q * a.get(src, j);
        a.set(dst, j, v);
    }
}

fn submul_col(a: &mut IntegerMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows {
        let v = a.get(i, dst) - q * a.get(i, src);
        a.set(i, dst, v);
    }
}

fn add_row(a: &mut IntegerMatrix, dst: usize, src: usize) {
    for j in 0..a.cols {
        let v = a.get(dst, j) + a.get(src, j);
        a.set(dst, j, v);
    }
}

/// Euclidean steps down column t; swaps a smaller remainder into the pivot
/// slot whenever one appears.
fn clear_column(a: &mut IntegerMatrix, t: usize) {
    for i in (t + 1)..a.rows {
        while !a.get(i, t).is_zero() {
            let q = a.get(i, t) / a.get(t, t);
            submul_row(a, i, t, &q);
            if !a.get(i, t).is_zero() {
                swap_rows(a, t, i);
            }
        }
    }
}

fn clear_row(a: &mut IntegerMatrix, t: usize) {
    for j in (t + 1)..a.cols {
        while !a.get(t, j).is_zero() {
            let q = a.get(t, j) / a.get(t, t);
            submul_col(a, j, t, &q);
            if !a.get(t, j).is_zero() {
                swap_cols(a, t, j);
            }
        }
    }
}

fn column_clear(a: &IntegerMatrix, t: usize) -> bool {
    ((t + 1)..a.rows).all(|i| a.get(i, t).is_zero())
}

fn row_clear(a: &IntegerMatrix, t: usize) -> bool {
    ((t + 1)..a.cols).all(|j| a.get(t, j).is_zero())
}

fn find_nondivisible(a: &IntegerMatrix, t: usize) -> Option<usize> {
    let d = a.get(t, t).clone();
    for i in (t + 1)..a.rows {
        for j in (t + 1)..a.cols {
            if !(a.get(i, j) % &d).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_i64(snf: &SmithNormalForm) -> Vec<i64> {
        snf.invariant_factors
            .iter()
            .map(|f| i64::try_from(f).unwrap())
            .collect()
    }

    #[test]
    fn snf_of_diag_2_3() {
        let m = IntegerMatrix::from_rows(2, 2, &[vec![2, 0], vec![0, 3]]).unwrap();
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        assert_eq!(factors_i64(&snf), vec![1, 6]);
    }

    #[test]
    fn snf_of_zero_matrix() {
        let m = IntegerMatrix::zeros(3, 3);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 0);
        assert!(snf.invariant_factors.is_empty());
    }

    #[test]
    fn snf_of_identity() {
        let snf = smith_normal_form(&IntegerMatrix::identity(4));
        assert_eq!(snf.rank, 4);
        assert_eq!(factors_i64(&snf), vec![1, 1, 1, 1]);
    }

    #[test]
    fn snf_of_empty_matrix() {
        let snf = smith_normal_form(&IntegerMatrix::zeros(0, 5));
        assert_eq!(snf.rank, 0);
        assert!(snf.invariant_factors.is_empty());
    }

    #[test]
    fn snf_divisibility_chain() {
        // Klein bottle style relation matrix plus junk rows.
        let m = IntegerMatrix::from_rows(
            3,
            3,
            &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
        )
        .unwrap();
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 3);
        let f = factors_i64(&snf);
        assert!(f.windows(2).all(|w| w[1] % w[0] == 0), "chain broken: {f:?}");
        // d1*d2*d3 = |det| = 624
        assert_eq!(f.iter().product::<i64>(), 624);
    }

    #[test]
    fn rank_mod2_vs_snf_odd_factors() {
        let m = IntegerMatrix::from_rows(
            3,
            4,
            &[vec![2, 1, 0, 3], vec![4, 2, 0, 6], vec![1, 0, 2, 2]],
        )
        .unwrap();
        let snf = smith_normal_form(&m);
        let odd = snf.invariant_factors.iter().filter(|f| f.is_odd()).count();
        assert_eq!(m.rank_mod2(), odd);
    }
}
