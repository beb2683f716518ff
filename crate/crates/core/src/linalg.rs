//! Dense exact linear algebra over a [`Field`].
//!
//! Over prime fields everything is plain Gauss–Jordan elimination with a
//! search for any nonzero pivot. Over the rationals ranks go through
//! fraction-free Bareiss elimination on the integer-scaled matrix; kernels
//! and solutions still use Gauss–Jordan on exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, Rationals};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, field: &F, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let v = field.add(out.get(i, j), &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(b) {
                        acc = field.add(&acc, &field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `self` left of `other`.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan elimination; pivot rows are normalized to 1 and cleared above
/// and below.
pub fn rref<F: Field>(field: &F, m: &Matrix<F>) -> Echelon<F> {
    let mut rows: Vec<Vec<F::Elem>> = m.to_rows();
    let ncols = m.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        matrix: Matrix::from_rows(ncols, rows),
        pivots,
    }
}

/// Rank by forward elimination only.
pub fn gauss_rank<F: Field>(field: &F, m: &Matrix<F>) -> usize {
    let mut rows: Vec<Vec<F::Elem>> = m.to_rows();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(p) = (rank..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][c]).expect("nonzero pivot");
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = field.mul(&row[c], &inv);
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Fraction-free (Bareiss) rank of a rational matrix. Rows are first scaled
/// to integers; every intermediate entry is then an exact integer minor.
#[allow(clippy::needless_range_loop)]
pub fn bareiss_rank(m: &Matrix<Rationals>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..nrows {
            let lead = a[i][c].clone();
            for j in c..m.cols {
                let v = (&pivot * &a[i][j] - &lead * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let ech = rref(field, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            let x = ech.matrix.get(r, free);
            if !field.is_zero(x) {
                v[p] = field.neg(x);
            }
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = b`, if one exists.
pub fn solve<F: Field>(field: &F, m: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows, b.len());
    let rhs = Matrix::from_rows(1, b.iter().map(|x| vec![x.clone()]).collect());
    let ech = rref(field, &m.hstack(&rhs));
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![field.zero(); m.cols];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix.get(r, m.cols).clone();
    }
    Some(x)
}

/// Rank of the matrix whose columns are the given vectors.
pub fn span_rank<F: Field>(field: &F, len: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    field.rank(&Matrix::from_rows(len, vectors.to_vec()))
}

/// Exact rational helper used by tests and reports.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        rational(n, 1)
    }

    #[test]
    fn rank_and_kernel_over_q() {
        let f = Rationals;
        let m = Matrix::<Rationals>::from_rows(
            3,
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(1), q(0), q(1)],
            ],
        );
        assert_eq!(f.rank(&m), 2);
        assert_eq!(gauss_rank(&f, &m), 2);
        let k = kernel(&f, &m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&f, &k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_inconsistent() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::<PrimeField>::from_rows(2, vec![vec![1, 1], vec![2, 2]]);
        assert!(solve(&f, &m, &[1, 3]).is_none());
        let x = solve(&f, &m, &[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&f, &x), vec![1, 2]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_gauss(entries in proptest::collection::vec(-4i64..5, 20), dn in 1i64..4) {
            let f = Rationals;
            let rows: Vec<Vec<BigRational>> = entries
                .chunks(5)
                .map(|c| c.iter().map(|&x| rational(x, dn)).collect())
                .collect();
            let m = Matrix::<Rationals>::from_rows(5, rows);
            prop_assert_eq!(bareiss_rank(&m), gauss_rank(&f, &m));
            prop_assert_eq!(rref(&f, &m).rank(), gauss_rank(&f, &m));
        }

        #[test]
        fn kernel_is_annihilated(entries in proptest::collection::vec(0u64..7, 24)) {
            let f = PrimeField::new(7).unwrap();
            let rows: Vec<Vec<u64>> = entries.chunks(6).map(|c| c.to_vec()).collect();
            let m = Matrix::<PrimeField>::from_rows(6, rows);
            let k = kernel(&f, &m);
            prop_assert_eq!(k.len() + f.rank(&m), 6);
            for v in &k {
                prop_assert!(m.mul_vec(&f, v).iter().all(|&x| x == 0));
            }
        }
    }
}
