//! Dense matrices over GF(p^k) with exact Gaussian elimination.
//!
//! Entries are field elements in packed encoding, stored row-major. Column
//! vectors are matrices with one column; a subspace is represented by a matrix
//! whose columns form a basis.

use crate::field::FieldCtx;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Result of full row reduction.
#[derive(Debug, Clone)]
pub struct RowReduced {
    pub rank: usize,
    /// Reduced row echelon form.
    pub rref: Mat,
    /// Pivot column indices, ascending.
    pub pivots: Vec<usize>,
    /// Kernel basis: a (cols x nullity) matrix whose columns span the null
    /// space, in the deterministic order of the free columns.
    pub kernel: Mat,
}

impl Index<(usize, usize)> for Mat {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u64>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn column(v: &[u64]) -> Mat {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn col_vec(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(u64) -> u64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Entrywise iterated Frobenius x -> x^{p^i}.
    pub fn frob_entries(&self, ctx: &FieldCtx, i: usize) -> Mat {
        self.map(|x| ctx.frob_iter(x, i))
    }

    /// Entrywise iterated inverse Frobenius.
    pub fn frob_inv_entries(&self, ctx: &FieldCtx, i: usize) -> Mat {
        self.map(|x| ctx.frob_inv_iter(x, i))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ctx.add(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ctx.sub(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: u64) -> Mat {
        self.map(|x| ctx.mul(x, c))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = ctx.add(out[(i, j)], ctx.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
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

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, sel: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, sel.len());
        for i in 0..self.rows {
            for (jj, &j) in sel.iter().enumerate() {
                out[(i, jj)] = self[(i, j)];
            }
        }
        out
    }

    /// Reduced row echelon form with pivots and kernel basis. Pivoting takes
    /// the first nonzero entry in each column, so the output is deterministic.
    pub fn row_reduce(&self, ctx: &FieldCtx) -> RowReduced {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut pr = None;
            for i in row..m.rows {
                if m[(i, col)] != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != row {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, row * m.cols + j);
                }
            }
            let inv = ctx.inv(m[(row, col)]);
            for j in col..m.cols {
                m[(row, j)] = ctx.mul(m[(row, j)], inv);
            }
            for i in 0..m.rows {
                if i != row && m[(i, col)] != 0 {
                    let c = m[(i, col)];
                    for j in col..m.cols {
                        let t = ctx.mul(c, m[(row, j)]);
                        m[(i, j)] = ctx.sub(m[(i, j)], t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        // kernel: one basis vector per free column
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = Mat::zeros(m.cols, free.len());
        for (kk, &fc) in free.iter().enumerate() {
            kernel[(fc, kk)] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                kernel[(pc, kk)] = ctx.neg(m[(r, fc)]);
            }
        }
        RowReduced { rank, rref: m, pivots, kernel }
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.row_reduce(ctx).rank
    }

    /// Matrix whose columns form a basis of the null space.
    pub fn kernel(&self, ctx: &FieldCtx) -> Mat {
        self.row_reduce(ctx).kernel
    }

    /// Matrix whose columns form a basis of the column space: the pivot
    /// columns of self, in order.
    pub fn image(&self, ctx: &FieldCtx) -> Mat {
        let rr = self.row_reduce(ctx);
        self.select_cols(&rr.pivots)
    }

    /// Solves self * X = b if consistent. Works for any shape.
    pub fn solve(&self, ctx: &FieldCtx, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let rr = aug.row_reduce(ctx);
        // consistency: no pivot may fall in the b-columns
        if rr.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (r, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = rr.rref[(r, self.cols + j)];
            }
        }
        Some(x)
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let id = Mat::identity(self.rows);
        let x = self.solve(ctx, &id)?;
        if self.mul(ctx, &x) == id {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self, ctx: &FieldCtx) -> bool {
        self.rows == self.cols && self.rank(ctx) == self.rows
    }

    /// Completes the columns of `basis` (assumed independent) to a basis of
    /// the full space by greedily adding standard basis vectors.
    pub fn complete_basis(basis: &Mat, ctx: &FieldCtx) -> Mat {
        let n = basis.rows();
        let mut cur = basis.clone();
        let mut rank = cur.rank(ctx);
        assert_eq!(rank, basis.cols(), "basis columns must be independent");
        for j in 0..n {
            if rank == n {
                break;
            }
            let mut e = Mat::zeros(n, 1);
            e[(j, 0)] = 1;
            let cand = cur.hstack(&e);
            let r = cand.rank(ctx);
            if r > rank {
                cur = cand;
                rank = r;
            }
        }
        assert_eq!(rank, n);
        cur
    }

    /// Minimal polynomial of a square matrix: the lcm of the annihilator
    /// polynomials of the standard basis vectors under self.
    pub fn min_poly(&self, ctx: &FieldCtx) -> crate::poly::Poly {
        use crate::poly::Poly;
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = Poly::one();
        for start in 0..n {
            // does the current candidate already annihilate e_start?
            let mut v = Mat::zeros(n, 1);
            v[(start, 0)] = 1;
            let mut img = Mat::zeros(n, 1);
            let mut pw = v.clone();
            for &c in &m.0 {
                if c != 0 {
                    img = img.add(ctx, &pw.scale(ctx, c));
                }
                pw = self.mul(ctx, &pw);
            }
            if img.is_zero() {
                continue;
            }
            // annihilator of e_start: first linear dependence in the Krylov chain
            let mut krylov = v.clone();
            let mut cur = v.clone();
            let ann = loop {
                cur = self.mul(ctx, &cur);
                match krylov.solve(ctx, &cur) {
                    Some(x) => {
                        let mut coeffs: Vec<u64> = (0..x.rows()).map(|i| ctx.neg(x[(i, 0)])).collect();
                        coeffs.push(1);
                        break Poly::from_coeffs(coeffs);
                    }
                    None => {
                        krylov = krylov.hstack(&cur);
                    }
                }
            };
            // m = lcm(m, ann)
            let g = m.gcd(ctx, &ann);
            m = m.mul(ctx, &ann).divrem(ctx, &g).0.monic(ctx);
            if m.deg() as usize == n {
                break;
            }
        }
        m
    }

    /// Evaluates a polynomial at this (square) matrix.
    pub fn poly_eval(&self, ctx: &FieldCtx, f: &crate::poly::Poly) -> Mat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in f.0.iter().rev() {
            acc = self.mul(ctx, &acc);
            for i in 0..n {
                acc[(i, i)] = ctx.add(acc[(i, i)], c);
            }
        }
        acc
    }

    pub fn pow(&self, ctx: &FieldCtx, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            base = base.mul(ctx, &base);
            e >>= 1;
        }
        acc
    }
}
