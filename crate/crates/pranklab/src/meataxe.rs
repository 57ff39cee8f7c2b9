//! Composition factors of group representations.
//!
//! The splitting engine picks a random element of the acting algebra, takes
//! an irreducible factor f of its minimal polynomial and examines N = f(a):
//! a kernel vector that spins to a proper submodule splits the module, and
//! when the nullity of N equals deg f, full spins on both the module and its
//! transpose certify irreducibility. Each attempt either splits or (with
//! minimal nullity) decides, so the loop terminates quickly in practice.

use crate::field::FieldCtx;
use crate::group::FiniteGroup;
use crate::mat::Mat;
use crate::rep::{IsoOutcome, Rep};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeataxeError {
    #[error("coefficient field is not a splitting field: a simple module has endomorphism ring of dimension {0}")]
    NotSplitting(usize),
}

/// Multiset of composition factors (simple representations, with repetition),
/// computed by recursive splitting. The multiset is a Jordan-Hoelder
/// invariant and does not depend on the seed.
pub fn composition_factors(rep: &Rep, seed: u64) -> Vec<Rep> {
    let mut out = Vec::new();
    let mut stack = vec![rep.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA11CE);
    while let Some(m) = stack.pop() {
        if m.dim == 0 {
            continue;
        }
        if m.dim == 1 {
            out.push(m);
            continue;
        }
        match split_or_certify(&m, &mut rng) {
            SplitOutcome::Irreducible => out.push(m),
            SplitOutcome::Split(basis) => {
                stack.push(m.sub_rep(&basis));
                stack.push(m.quotient_rep(&basis));
            }
        }
    }
    out.sort_by_key(|s| s.dim);
    out
}

enum SplitOutcome {
    Irreducible,
    /// Basis of a proper nonzero invariant subspace.
    Split(Mat),
}

fn split_or_certify(m: &Rep, rng: &mut ChaCha8Rng) -> SplitOutcome {
    let ctx = &m.ctx;
    loop {
        let a = random_algebra_element(m, rng);
        let minpoly = a.min_poly(ctx);
        let factors = minpoly.distinct_irreducible_factors(ctx, rng);
        let mut minimal_nullity_witness: Option<(Mat, usize)> = None;
        for f in &factors {
            let n_mat = a.poly_eval(ctx, f);
            let kernel = n_mat.kernel(ctx);
            debug_assert!(kernel.cols() > 0);
            for c in 0..kernel.cols() {
                let v = Mat::column(&kernel.col_vec(c));
                let span = m.spin(&v);
                if span.cols() < m.dim {
                    return SplitOutcome::Split(span);
                }
            }
            if kernel.cols() == f.deg() as usize && minimal_nullity_witness.is_none() {
                minimal_nullity_witness = Some((n_mat, f.deg() as usize));
            }
        }
        if let Some((n_mat, _)) = minimal_nullity_witness {
            // transpose side: a single kernel vector decides
            let transposed = transpose_rep(m);
            let ker_t = n_mat.transpose().kernel(ctx);
            let w = Mat::column(&ker_t.col_vec(0));
            let span_t = transposed.spin(&w);
            if span_t.cols() == m.dim {
                return SplitOutcome::Irreducible;
            }
            // the annihilator of a proper transpose-submodule is a proper
            // submodule of m
            let perp = span_t.transpose().kernel(ctx);
            assert!(perp.cols() > 0 && perp.cols() < m.dim);
            return SplitOutcome::Split(perp);
        }
        // no factor had minimal nullity; retry with a fresh algebra element
    }
}

/// Module over the opposite algebra: g acts by the transpose of g^{-1}...
/// transposing all matrices and inverting the indexing gives a left module
/// again, which is what spin needs.
fn transpose_rep(m: &Rep) -> Rep {
    let mats = m
        .group
        .elements()
        .map(|g| m.mat(m.group.inv(g)).transpose())
        .collect();
    Rep {
        group: m.group.clone(),
        ctx: m.ctx.clone(),
        dim: m.dim,
        mats,
    }
}

fn random_algebra_element(m: &Rep, rng: &mut ChaCha8Rng) -> Mat {
    let ctx = &m.ctx;
    let q = ctx.order();
    let order = m.group.order() as u32;
    let mut acc = Mat::zeros(m.dim, m.dim);
    // a handful of random group elements with random nonzero coefficients
    let terms = 3 + (rng.gen_range(0..3) as usize);
    for _ in 0..terms {
        let g = rng.gen_range(0..order);
        let c = 1 + rng.gen_range(0..q - 1);
        acc = acc.add(ctx, &m.mat(g).scale(ctx, c));
    }
    acc
}

/// The simple representations of G over the given splitting field, pairwise
/// non-isomorphic, in a canonical deterministic order: ascending dimension,
/// then the table of ranks of rho(g) - lambda over all (g, lambda).
///
/// Computed as the deduplicated composition factors of the regular
/// representation. Errors if some factor has endomorphisms beyond scalars,
/// which signals a non-splitting coefficient field.
pub fn irr(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>) -> Result<Vec<Rep>, MeataxeError> {
    let reg = Rep::regular(group, ctx);
    let factors = composition_factors(&reg, 0);
    let mut simples: Vec<Rep> = Vec::new();
    for f in factors {
        let known = simples.iter().any(|s| s.iso_test(&f, 0).is_yes());
        if !known {
            let end_dim = f.hom_space(&f).dim();
            if end_dim != 1 {
                return Err(MeataxeError::NotSplitting(end_dim));
            }
            simples.push(f);
        }
    }
    let mut keyed: Vec<(usize, Vec<u8>, usize, Rep)> = simples
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s.dim, rank_fingerprint(&s), i, s))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1, a.2).cmp(&(b.0, &b.1, b.2)));
    Ok(keyed.into_iter().map(|(_, _, _, s)| s).collect())
}

/// Ranks of rho(g) - lambda*id for every group element and every field
/// scalar, flattened in (element, scalar) order. Distinguishes the simples
/// of all groups in scope and is stable across runs.
pub fn rank_fingerprint(s: &Rep) -> Vec<u8> {
    let ctx = &s.ctx;
    let mut out = Vec::with_capacity(s.group.order() * ctx.order() as usize);
    for g in s.group.elements() {
        for lam in ctx.elements() {
            let mut m = s.mat(g).clone();
            for i in 0..s.dim {
                m[(i, i)] = ctx.sub(m[(i, i)], lam);
            }
            out.push(m.rank(ctx) as u8);
        }
    }
    out
}

/// Number of composition factors of `m` isomorphic to the simple `s`.
pub fn factor_multiplicity(m: &Rep, s: &Rep, seed: u64) -> usize {
    composition_factors(m, seed)
        .iter()
        .filter(|f| matches!(f.iso_test(s, seed), IsoOutcome::Yes(_)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_module_returned_as_is() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let triv = Rep::trivial(z2, ctx);
        let f = composition_factors(&triv, 7);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].dim, 1);
    }

    #[test]
    fn regular_z3_in_char_3_is_uniserial() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let reg = Rep::regular(z3.clone(), ctx.clone());
        let f = composition_factors(&reg, 1);
        assert_eq!(f.len(), 3);
        let triv = Rep::trivial(z3, ctx);
        for s in &f {
            assert!(s.iso_test(&triv, 0).is_yes());
        }
    }

    #[test]
    fn regular_s3_mod_3_has_two_factor_classes() {
        let s3 = Arc::new(FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap());
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let reg = Rep::regular(s3.clone(), ctx.clone());
        let f = composition_factors(&reg, 2);
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|s| s.dim == 1));
        let simples = irr(s3, ctx).unwrap();
        assert_eq!(simples.len(), 2);
        let m0 = factor_multiplicity(&reg, &simples[0], 3);
        let m1 = factor_multiplicity(&reg, &simples[1], 3);
        assert_eq!((m0, m1), (3, 3));
    }

    #[test]
    fn irr_of_p_group_in_char_p_is_trivial_only() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let simples = irr(z3.clone(), ctx.clone()).unwrap();
        assert_eq!(simples.len(), 1);
        assert!(simples[0].iso_test(&Rep::trivial(z3, ctx), 0).is_yes());
    }

    #[test]
    fn irr_of_z2_in_char_3() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let simples = irr(z2, ctx).unwrap();
        assert_eq!(simples.len(), 2);
        assert!(simples.iter().all(|s| s.dim == 1));
        // trivial sorts before sign under the canonical order
        assert_eq!(simples[0].mat(1)[(0, 0)], 1);
        assert_eq!(simples[1].mat(1)[(0, 0)], 2);
    }

    #[test]
    fn seed_independence_of_factor_multiset() {
        let s3 = Arc::new(FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap());
        let ctx = Arc::new(FieldCtx::new(2, 2).unwrap());
        let reg = Rep::regular(s3, ctx);
        let dims_of = |seed| {
            let mut d: Vec<usize> = composition_factors(&reg, seed).iter().map(|f| f.dim).collect();
            d.sort();
            d
        };
        let base = dims_of(0);
        // S3 over GF(4): simples are trivial, sign=trivial (char 2!), and a 2-dim
        assert_eq!(base, vec![1, 1, 2, 2]);
        for seed in 1..6 {
            assert_eq!(dims_of(seed), base);
        }
    }

    #[test]
    fn non_splitting_field_detected() {
        // Z/4 over GF(3): the faithful characters live in GF(9)
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        assert!(irr(z4, ctx).is_err());
        let ctx9 = Arc::new(FieldCtx::new(3, 2).unwrap());
        let z4b = Arc::new(FiniteGroup::cyclic(4));
        let simples = irr(z4b, ctx9).unwrap();
        assert_eq!(simples.len(), 4);
    }
}
