//! First group cohomology by direct linear algebra on the bar cocycles.
//!
//! A 1-cocycle is a function c: G -> M with c(gh) = c(g) + g*c(h); it is
//! stored as one stacked column vector of length |G|*dim M, blocks indexed by
//! the group element. Coboundaries are g -> g*m - m. H^1 representatives are
//! fixed by echelon form, which keeps restriction matrices reproducible.

use crate::mat::Mat;
use crate::rep::Rep;
use thiserror::Error;

/// Bound on the number of unknowns |G| * dim M in the cocycle system.
pub const COCYCLE_UNKNOWN_BOUND: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cocycle system has {0} unknowns, beyond the bound {COCYCLE_UNKNOWN_BOUND}")]
    TooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct CocycleSpace {
    /// Columns span Z^1; each column stacks the values c(g) for g in element
    /// order.
    pub z1: Mat,
    /// Columns span B^1.
    pub b1: Mat,
    /// Columns are cocycles representing a basis of H^1 = Z^1/B^1.
    pub h1_reps: Mat,
}

impl CocycleSpace {
    pub fn h1_dim(&self) -> usize {
        self.h1_reps.cols()
    }
}

/// Cocycle and coboundary spaces of the coefficient module `m`.
pub fn z1_b1(m: &Rep) -> Result<CocycleSpace, CohomologyError> {
    let ctx = &m.ctx;
    let group = &m.group;
    let n = group.order();
    let d = m.dim;
    let unknowns = n * d;
    if unknowns > COCYCLE_UNKNOWN_BOUND {
        return Err(CohomologyError::TooLarge(unknowns));
    }
    if d == 0 {
        return Ok(CocycleSpace {
            z1: Mat::zeros(0, 0),
            b1: Mat::zeros(0, 0),
            h1_reps: Mat::zeros(0, 0),
        });
    }
    // cocycle law over the full multiplication table
    let mut rows = Vec::with_capacity(n * n * d);
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            let act = m.mat(g);
            for i in 0..d {
                let mut row = vec![0u64; unknowns];
                // c(gh)_i - c(g)_i - (g c(h))_i = 0
                row[gh as usize * d + i] = ctx.add(row[gh as usize * d + i], 1);
                row[g as usize * d + i] = ctx.sub(row[g as usize * d + i], 1);
                for j in 0..d {
                    let idx = h as usize * d + j;
                    row[idx] = ctx.sub(row[idx], act[(i, j)]);
                }
                rows.push(row);
            }
        }
    }
    let z1 = Mat::from_rows(rows).kernel(ctx);
    // coboundaries: m -> (g -> g m - m)
    let mut cob = Mat::zeros(unknowns, d);
    for g in group.elements() {
        let act = m.mat(g);
        for i in 0..d {
            for j in 0..d {
                let mut v = act[(i, j)];
                if i == j {
                    v = ctx.sub(v, 1);
                }
                cob[(g as usize * d + i, j)] = v;
            }
        }
    }
    let b1 = cob.image(ctx);
    // representatives: pivots of [B1 | Z1] beyond the B1 block
    let stacked = b1.hstack(&z1);
    let rr = stacked.row_reduce(ctx);
    let extra: Vec<usize> = rr.pivots.iter().copied().filter(|&p| p >= b1.cols()).collect();
    let h1_reps = stacked.select_cols(&extra);
    debug_assert_eq!(h1_reps.cols() + b1.cols(), z1.cols());
    Ok(CocycleSpace { z1, b1, h1_reps })
}

pub fn h1_dim(m: &Rep) -> Result<usize, CohomologyError> {
    Ok(z1_b1(m)?.h1_dim())
}

/// Matrix of the restriction map H^1(G, M) -> H^1(U, M) in the echelon bases
/// chosen by [`z1_b1`] on both sides.
pub fn h1_restriction_matrix(
    m: &Rep,
    coc: &CocycleSpace,
    sub: &[u32],
) -> Result<Mat, CohomologyError> {
    let ctx = &m.ctx;
    let d = m.dim;
    let mut sub = sub.to_vec();
    sub.sort_unstable(); // subgroup re-indexing sorts, keep value order in sync
    let (m_res, _h) = m.restrict_to_subgroup(&sub);
    let coc_u = z1_b1(&m_res)?;
    let hu = coc_u.h1_dim();
    let hg = coc.h1_dim();
    if hu == 0 || hg == 0 {
        return Ok(Mat::zeros(hu, hg));
    }
    // coordinates of a restricted cocycle: solve against [B1_U | H1_U reps]
    let frame = coc_u.b1.hstack(&coc_u.h1_reps);
    let mut out = Mat::zeros(hu, hg);
    for c in 0..hg {
        let full = coc.h1_reps.col_vec(c);
        let mut restricted = Vec::with_capacity(sub.len() * d);
        for (_ui, &g) in sub.iter().enumerate() {
            // subgroup_group sorts elements ascending, matching this order
            restricted.extend_from_slice(&full[g as usize * d..(g as usize + 1) * d]);
        }
        let rhs = Mat::column(&restricted);
        let sol = frame
            .solve(ctx, &rhs)
            .expect("restricted cocycles stay cocycles");
        for i in 0..hu {
            out[(i, c)] = sol[(coc_u.b1.cols() + i, 0)];
        }
    }
    Ok(out)
}

/// Dimension of the intersection of the kernels of the restriction maps to
/// the listed subgroups; the empty list gives dim H^1(G, M).
pub fn locally_trivial_dim(m: &Rep, stabilizers: &[Vec<u32>]) -> Result<usize, CohomologyError> {
    let coc = z1_b1(m)?;
    let hg = coc.h1_dim();
    if hg == 0 {
        return Ok(0);
    }
    let mut stacked: Option<Mat> = None;
    for sub in stabilizers {
        let r = h1_restriction_matrix(m, &coc, sub)?;
        stacked = Some(match stacked {
            None => r,
            Some(s) => s.vstack(&r),
        });
    }
    match stacked {
        None => Ok(hg),
        Some(s) => Ok(s.kernel(&m.ctx).cols()),
    }
}
