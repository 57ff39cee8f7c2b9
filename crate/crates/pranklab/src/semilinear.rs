//! Structure theory of p-linear and 1/p-linear endomorphisms.
//!
//! A map F with twist +1 acts as F(v) = A * v^[p] (entrywise Frobenius, then
//! the matrix); twist -1 acts as F(v) = A * v^[1/p]. Both are additive and
//! satisfy F(c*v) = c^{p^t} * F(v) for the respective twist t. Every such map
//! splits the ambient space as V = V^s + V^n where F is bijective on the
//! stable part V^s and nilpotent on V^n; the stable rank is dim V^s.

use crate::field::FieldCtx;
use crate::mat::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    /// F(v) = A * v^[p]
    PLinear,
    /// F(v) = A * v^[1/p]
    PInverse,
}

#[derive(Debug, Clone)]
pub struct SemilinearMap {
    pub mat: Mat,
    pub twist: Twist,
}

impl SemilinearMap {
    pub fn new(mat: Mat, twist: Twist) -> SemilinearMap {
        assert_eq!(mat.rows(), mat.cols(), "semilinear maps are endomorphisms");
        SemilinearMap { mat, twist }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    fn twist_entries(&self, ctx: &FieldCtx, m: &Mat, i: usize) -> Mat {
        match self.twist {
            Twist::PLinear => m.frob_entries(ctx, i),
            Twist::PInverse => m.frob_inv_entries(ctx, i),
        }
    }

    fn untwist_entries(&self, ctx: &FieldCtx, m: &Mat, i: usize) -> Mat {
        match self.twist {
            Twist::PLinear => m.frob_inv_entries(ctx, i),
            Twist::PInverse => m.frob_entries(ctx, i),
        }
    }

    pub fn apply(&self, ctx: &FieldCtx, v: &Mat) -> Mat {
        assert_eq!(v.rows(), self.dim());
        self.mat.mul(ctx, &self.twist_entries(ctx, v, 1))
    }

    /// Matrix of the n-th iterate: F^n(v) = M_n * v^[sigma^n] where
    /// M_n = A * A^[sigma] * ... * A^[sigma^{n-1}].
    pub fn iterate_matrix(&self, ctx: &FieldCtx, n: usize) -> Mat {
        let mut acc = Mat::identity(self.dim());
        for i in 0..n {
            acc = acc.mul(ctx, &self.twist_entries(ctx, &self.mat, i));
        }
        acc
    }

    /// Bases of the stable and nilpotent parts: V^s is the image of F^dim and
    /// V^n its kernel. Iterating dim times is always enough for the image and
    /// kernel chains to stabilize.
    pub fn stable_decomposition(&self, ctx: &FieldCtx) -> (Mat, Mat) {
        let n = self.dim();
        if n == 0 {
            return (Mat::zeros(0, 0), Mat::zeros(0, 0));
        }
        let m = self.iterate_matrix(ctx, n);
        let vs = m.image(ctx);
        // kernel of the map F^n: v with M_n * v^[sigma^n] = 0, i.e. the
        // sigma^{-n}-twist of the matrix kernel
        let vn = self.untwist_entries(ctx, &m.kernel(ctx), n);
        debug_assert_eq!(vs.cols() + vn.cols(), n);
        debug_assert_eq!(vs.hstack(&vn).rank(ctx), n);
        (vs, vn)
    }

    pub fn stable_rank(&self, ctx: &FieldCtx) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        self.iterate_matrix(ctx, self.dim()).rank(ctx)
    }

    /// Brute-force count of vectors with F(v) = v, returned as log_p of the
    /// count. Only for twist +1 and small spaces.
    pub fn fixed_space_count(&self, ctx: &FieldCtx) -> Result<usize, String> {
        assert_eq!(self.twist, Twist::PLinear, "fixed vectors need twist +1");
        let n = self.dim();
        let q = ctx.order();
        let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > 1 << 20 {
            return Err(format!("q^dim = {q}^{n} exceeds the enumeration bound 2^20"));
        }
        let mut count: u64 = 0;
        let mut idx = vec![0u64; n];
        loop {
            let v = Mat::column(&idx);
            if self.apply(ctx, &v) == v {
                count += 1;
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == n {
                    let p = ctx.prime();
                    let mut d = 0;
                    let mut c = count;
                    while c > 1 {
                        assert_eq!(c % p, 0, "fixed vector count must be a p-power");
                        c /= p;
                        d += 1;
                    }
                    return Ok(d);
                }
                idx[i] += 1;
                if idx[i] < q {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    /// The dual map on the dual space, characterized by
    /// (dual F)(psi)(v)^p = psi(F(v)). It has the opposite twist and the same
    /// stable rank.
    pub fn dualize(&self, ctx: &FieldCtx) -> SemilinearMap {
        let (mat, twist) = match self.twist {
            Twist::PLinear => (self.mat.transpose().frob_inv_entries(ctx, 1), Twist::PInverse),
            Twist::PInverse => (self.mat.transpose().frob_entries(ctx, 1), Twist::PLinear),
        };
        SemilinearMap { mat, twist }
    }

    /// Restriction to an invariant subspace given by basis columns; None if
    /// the subspace is not invariant.
    pub fn restrict(&self, ctx: &FieldCtx, basis: &Mat) -> Option<SemilinearMap> {
        let image = self.mat.mul(ctx, &self.twist_entries(ctx, basis, 1));
        let x = basis.solve(ctx, &image)?;
        if basis.mul(ctx, &x) != image {
            return None;
        }
        Some(SemilinearMap { mat: x, twist: self.twist })
    }

    /// Induced map on the quotient by an invariant subspace. Returns the
    /// quotient map matrix in the coordinates of a completed basis.
    pub fn quotient(&self, ctx: &FieldCtx, basis: &Mat) -> SemilinearMap {
        let n = self.dim();
        let m = basis.cols();
        let full = Mat::complete_basis(basis, ctx);
        let inv = full.inverse(ctx).expect("completed basis is invertible");
        let conj = inv.mul(ctx, &self.mat.mul(ctx, &self.twist_entries(ctx, &full, 1)));
        // lower-right block of the conjugated matrix
        let mut out = Mat::zeros(n - m, n - m);
        for i in 0..n - m {
            for j in 0..n - m {
                out[(i, j)] = conj[(m + i, m + j)];
            }
        }
        SemilinearMap { mat: out, twist: self.twist }
    }
}
