//! Matrix representations of finite groups over a fixed finite field.
//!
//! A [`Rep`] stores one invertible matrix per group element. Construction
//! verifies the identity matrix and the homomorphism law against the group
//! table (checking all pairs (generator, element) suffices: every element is
//! a word in the generators, so the law propagates by induction on length).

use crate::field::FieldCtx;
use crate::group::FiniteGroup;
use crate::mat::Mat;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Rep {
    pub group: Arc<FiniteGroup>,
    pub ctx: Arc<FieldCtx>,
    pub dim: usize,
    pub mats: Vec<Mat>,
}

/// Basis of the space of intertwiners between two representations.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Outcome of an isomorphism search. `Inconclusive` means the search budget
/// was exhausted without either a witness or a structural obstruction; it is
/// reported distinctly and never treated as `No`.
#[derive(Debug, Clone)]
pub enum IsoOutcome {
    Yes(Mat),
    No,
    Inconclusive,
}

impl IsoOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoOutcome::Yes(_))
    }
}

impl Rep {
    /// Wraps matrices as a representation, verifying the axioms.
    pub fn new(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>, mats: Vec<Mat>) -> Rep {
        assert_eq!(mats.len(), group.order());
        let dim = mats.first().map_or(0, |m| m.rows());
        for m in &mats {
            assert_eq!((m.rows(), m.cols()), (dim, dim));
        }
        let rep = Rep { group, ctx, dim, mats };
        rep.verify();
        rep
    }

    fn verify(&self) {
        if self.dim == 0 {
            return;
        }
        assert_eq!(self.mats[0], Mat::identity(self.dim), "identity must act as 1");
        let gens: Vec<u32> = if self.group.generators().is_empty() {
            Vec::new()
        } else {
            self.group.generators().to_vec()
        };
        for &g in &gens {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                let prod = self.mats[g as usize].mul(&self.ctx, &self.mats[h as usize]);
                assert_eq!(
                    prod, self.mats[gh as usize],
                    "matrices do not satisfy the group law at ({g}, {h})"
                );
            }
        }
    }

    pub fn mat(&self, g: u32) -> &Mat {
        &self.mats[g as usize]
    }

    /// Zero-dimensional representation.
    pub fn zero(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>) -> Rep {
        let mats = (0..group.order()).map(|_| Mat::zeros(0, 0)).collect();
        Rep { group, ctx, dim: 0, mats }
    }

    pub fn trivial(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>) -> Rep {
        let mats = (0..group.order()).map(|_| Mat::identity(1)).collect();
        Rep { group, ctx, dim: 1, mats }
    }

    /// Left regular representation: g acts by e_h -> e_{gh}.
    pub fn regular(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>) -> Rep {
        let n = group.order();
        let mut mats = Vec::with_capacity(n);
        for g in group.elements() {
            let mut m = Mat::zeros(n, n);
            for h in group.elements() {
                m[(group.mul(g, h) as usize, h as usize)] = 1;
            }
            mats.push(m);
        }
        Rep::new(group, ctx, mats)
    }

    /// Permutation representation on the left cosets of a subgroup.
    pub fn perm_on_cosets(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>, sub: &[u32]) -> Rep {
        assert!(group.is_subgroup(sub));
        // enumerate cosets by smallest representative
        let mut coset_of = vec![u32::MAX; group.order()];
        let mut reps: Vec<u32> = Vec::new();
        for g in group.elements() {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            for &u in sub {
                coset_of[group.mul(g, u) as usize] = idx;
            }
        }
        let n = reps.len();
        let mut mats = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut m = Mat::zeros(n, n);
            for (j, &r) in reps.iter().enumerate() {
                m[(coset_of[group.mul(g, r) as usize] as usize, j)] = 1;
            }
            mats.push(m);
        }
        Rep::new(group, ctx, mats)
    }

    /// Permutation representation from an explicit action: `action[g][i]` is
    /// the image of point i under g.
    pub fn perm_from_action(group: Arc<FiniteGroup>, ctx: Arc<FieldCtx>, action: &[Vec<usize>]) -> Rep {
        let n = action.first().map_or(0, |a| a.len());
        let mut mats = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut m = Mat::zeros(n, n);
            for i in 0..n {
                m[(action[g as usize][i], i)] = 1;
            }
            mats.push(m);
        }
        Rep::new(group, ctx, mats)
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        assert!(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group);
        let n = self.dim + other.dim;
        let mut mats = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let a = self.mat(g);
            let b = other.mat(g);
            let mut m = Mat::zeros(n, n);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    m[(i, j)] = a[(i, j)];
                }
            }
            for i in 0..other.dim {
                for j in 0..other.dim {
                    m[(self.dim + i, self.dim + j)] = b[(i, j)];
                }
            }
            mats.push(m);
        }
        Rep { group: self.group.clone(), ctx: self.ctx.clone(), dim: n, mats }
    }

    pub fn direct_sum_all(reps: &[Rep]) -> Rep {
        assert!(!reps.is_empty());
        let mut acc = reps[0].clone();
        for r in &reps[1..] {
            acc = acc.direct_sum(r);
        }
        acc
    }

    /// Restriction of the action to an invariant subspace with the given
    /// basis columns. Panics if the subspace is not invariant.
    pub fn sub_rep(&self, basis: &Mat) -> Rep {
        assert_eq!(basis.rows(), self.dim);
        let m = basis.cols();
        let mut mats = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let img = self.mat(g).mul(&self.ctx, basis);
            let x = basis
                .solve(&self.ctx, &img)
                .expect("subspace is not invariant under the action");
            debug_assert_eq!(basis.mul(&self.ctx, &x), img);
            mats.push(x);
        }
        let rep = Rep { group: self.group.clone(), ctx: self.ctx.clone(), dim: m, mats };
        rep.verify();
        rep
    }

    /// Action induced on the quotient by an invariant subspace.
    pub fn quotient_rep(&self, basis: &Mat) -> Rep {
        let m = basis.cols();
        let n = self.dim;
        if m == n {
            return Rep::zero(self.group.clone(), self.ctx.clone());
        }
        let full = Mat::complete_basis(basis, &self.ctx);
        let inv = full.inverse(&self.ctx).expect("completed basis");
        let mut mats = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let conj = inv.mul(&self.ctx, &self.mat(g).mul(&self.ctx, &full));
            let mut block = Mat::zeros(n - m, n - m);
            for i in 0..n - m {
                for j in 0..n - m {
                    block[(i, j)] = conj[(m + i, m + j)];
                }
            }
            mats.push(block);
        }
        let rep = Rep { group: self.group.clone(), ctx: self.ctx.clone(), dim: n - m, mats };
        rep.verify();
        rep
    }

    /// Smallest invariant subspace containing the given vectors: spins them
    /// under the generator matrices. Returns a basis (columns).
    pub fn spin(&self, vectors: &Mat) -> Mat {
        let mut basis = vectors.image(&self.ctx);
        loop {
            let mut grew = false;
            let gens = self.group.generators();
            let gen_list: Vec<u32> = if gens.is_empty() { vec![] } else { gens.to_vec() };
            for &g in &gen_list {
                let img = self.mat(g).mul(&self.ctx, &basis);
                let cand = basis.hstack(&img);
                let reduced = cand.image(&self.ctx);
                if reduced.cols() > basis.cols() {
                    basis = reduced;
                    grew = true;
                }
            }
            if !grew {
                return basis;
            }
        }
    }

    /// Basis of intertwiners self -> target, solving T M_g = N_g T over the
    /// group generators. Both representations must share group and field.
    pub fn hom_space(&self, target: &Rep) -> HomSpace {
        assert!(self.group == target.group, "hom spaces need a common group");
        let (dm, dn) = (self.dim, target.dim);
        if dm == 0 || dn == 0 {
            return HomSpace { basis: vec![] };
        }
        let gens: Vec<u32> = if self.group.generators().is_empty() {
            vec![]
        } else {
            self.group.generators().to_vec()
        };
        if gens.is_empty() {
            // trivial group: every matrix intertwines
            let mut basis = Vec::new();
            for i in 0..dn {
                for j in 0..dm {
                    let mut t = Mat::zeros(dn, dm);
                    t[(i, j)] = 1;
                    basis.push(t);
                }
            }
            return HomSpace { basis };
        }
        // unknowns: T[i][j], i < dn, j < dm, flattened as i*dm + j
        let unknowns = dn * dm;
        let mut rows = Vec::new();
        let ctx = &self.ctx;
        for &g in &gens {
            let mg = self.mat(g);
            let ng = target.mat(g);
            for i in 0..dn {
                for j in 0..dm {
                    // (T M_g - N_g T)[i][j] = sum_l T[i][l] M_g[l][j] - N_g[i][l] T[l][j]
                    let mut row = vec![0u64; unknowns];
                    for l in 0..dm {
                        row[i * dm + l] = ctx.add(row[i * dm + l], mg[(l, j)]);
                    }
                    for l in 0..dn {
                        row[l * dm + j] = ctx.sub(row[l * dm + j], ng[(i, l)]);
                    }
                    rows.push(row);
                }
            }
        }
        let system = Mat::from_rows(rows);
        let kernel = system.kernel(ctx);
        let basis = (0..kernel.cols())
            .map(|c| {
                let v = kernel.col_vec(c);
                let mut t = Mat::zeros(dn, dm);
                for i in 0..dn {
                    for j in 0..dm {
                        t[(i, j)] = v[i * dm + j];
                    }
                }
                t
            })
            .collect();
        HomSpace { basis }
    }

    /// Basis of the subspace fixed by every element of the given subset.
    pub fn invariants(&self, elements: &[u32]) -> Mat {
        if self.dim == 0 {
            return Mat::zeros(0, 0);
        }
        let mut stacked: Option<Mat> = None;
        for &g in elements {
            if g == 0 {
                continue;
            }
            let d = self.mat(g).sub(&self.ctx, &Mat::identity(self.dim));
            stacked = Some(match stacked {
                None => d,
                Some(s) => s.vstack(&d),
            });
        }
        match stacked {
            None => Mat::identity(self.dim),
            Some(s) => s.kernel(&self.ctx),
        }
    }

    /// N-invariant vectors as a representation of H = G/N. `proj` is the
    /// projection map from [`FiniteGroup::quotient`].
    pub fn invariants_rep(&self, normal: &[u32], h: Arc<FiniteGroup>, proj: &[u32]) -> Rep {
        let basis = self.invariants(normal);
        if basis.cols() == 0 {
            return Rep::zero(h, self.ctx.clone());
        }
        let reps = self.group.coset_reps(proj, h.order());
        let mut mats = vec![Mat::zeros(0, 0); h.order()];
        for (c, &r) in reps.iter().enumerate() {
            let img = self.mat(r).mul(&self.ctx, &basis);
            let x = basis
                .solve(&self.ctx, &img)
                .expect("invariant subspace closed under the full group");
            mats[c] = x;
        }
        let rep = Rep { group: h, ctx: self.ctx.clone(), dim: basis.cols(), mats };
        rep.verify();
        rep
    }

    /// Restriction to a subgroup, as a representation of the re-indexed group.
    pub fn restrict_to_subgroup(&self, sub: &[u32]) -> (Rep, Arc<FiniteGroup>) {
        let (h, embed) = self.group.subgroup_group(sub);
        let h = Arc::new(h);
        let mats = embed.iter().map(|&g| self.mat(g).clone()).collect();
        (
            Rep { group: h.clone(), ctx: self.ctx.clone(), dim: self.dim, mats },
            h,
        )
    }

    /// Inflation along a quotient map: the representation of G obtained from
    /// a representation of H = G/N by composing with the projection.
    pub fn inflated(&self, big: Arc<FiniteGroup>, proj: &[u32]) -> Rep {
        assert_eq!(proj.len(), big.order());
        let mats = proj.iter().map(|&c| self.mat(c).clone()).collect();
        let rep = Rep { group: big, ctx: self.ctx.clone(), dim: self.dim, mats };
        rep.verify();
        rep
    }

    /// Maps all matrix entries through a field embedding, producing the same
    /// representation over the bigger field.
    pub fn extend_scalars(&self, big: Arc<FieldCtx>) -> Rep {
        let emb = self.ctx.embedding(&big).expect("field embedding");
        let mats = self
            .mats
            .iter()
            .map(|m| m.map(|x| emb.map(&big, x)))
            .collect();
        Rep { group: self.group.clone(), ctx: big, dim: self.dim, mats }
    }

    /// Isomorphism test with an explicit witness on success.
    ///
    /// Fast paths: dimension mismatch, then hom-space dimensions. Otherwise
    /// searches Hom(self, other) for an invertible element: the basis itself,
    /// seeded random combinations, exhaustion when the space is small, and a
    /// final retry after extending scalars (isomorphism over an extension
    /// implies isomorphism over the base field for group representations).
    pub fn iso_test(&self, other: &Rep, seed: u64) -> IsoOutcome {
        if self.dim != other.dim {
            return IsoOutcome::No;
        }
        if self.dim == 0 {
            return IsoOutcome::Yes(Mat::zeros(0, 0));
        }
        let hom = self.hom_space(other);
        if hom.dim() == 0 {
            return IsoOutcome::No;
        }
        // structural obstruction: M iso N forces
        // dim Hom(M,N) = dim End(M) = dim End(N)
        let end_self = self.hom_space(self).dim();
        let end_other = other.hom_space(other).dim();
        if end_self != end_other || hom.dim() != end_self {
            return IsoOutcome::No;
        }
        if let Some(w) = search_invertible(&self.ctx, &hom.basis, seed) {
            return IsoOutcome::Yes(w);
        }
        // extend scalars and retry; a witness over the extension certifies
        // isomorphism over the base field
        if self.ctx.degree() * 2 <= 12 {
            if let Ok(big) = FieldCtx::new(self.ctx.prime(), self.ctx.degree() * 2) {
                let big = Arc::new(big);
                let a = self.extend_scalars(big.clone());
                let b = other.extend_scalars(big.clone());
                let hom2 = a.hom_space(&b);
                if let Some(w) = search_invertible(&big, &hom2.basis, seed) {
                    return IsoOutcome::Yes(w);
                }
            }
        }
        IsoOutcome::Inconclusive
    }
}

/// Searches the span of the given matrices for an invertible element:
/// basis elements first, then seeded random combinations, then exhaustive
/// enumeration when q^dim is small.
fn search_invertible(ctx: &FieldCtx, basis: &[Mat], seed: u64) -> Option<Mat> {
    if basis.is_empty() {
        return None;
    }
    for b in basis {
        if b.is_invertible(ctx) {
            return Some(b.clone());
        }
    }
    let h = basis.len();
    let q = ctx.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x15015015);
    for _ in 0..200 {
        let mut cand = Mat::zeros(basis[0].rows(), basis[0].cols());
        for b in basis {
            let c = rng.gen_range(0..q);
            if c != 0 {
                cand = cand.add(ctx, &b.scale(ctx, c));
            }
        }
        if cand.is_invertible(ctx) {
            return Some(cand);
        }
    }
    let total = (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if total <= 1 << 16 {
        let mut coeffs = vec![0u64; h];
        loop {
            let mut cand = Mat::zeros(basis[0].rows(), basis[0].cols());
            for (b, &c) in basis.iter().zip(&coeffs) {
                if c != 0 {
                    cand = cand.add(ctx, &b.scale(ctx, c));
                }
            }
            if cand.is_invertible(ctx) {
                return Some(cand);
            }
            let mut i = 0;
            loop {
                if i == h {
                    return None;
                }
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64, k: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, k).unwrap())
    }

    #[test]
    fn regular_rep_of_z3() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let ctx = setup(3, 1);
        let r = Rep::regular(g, ctx);
        assert_eq!(r.dim, 3);
        // the generator acts by a cyclic shift
        assert_eq!(r.mat(1).col_vec(0), vec![0, 1, 0]);
    }

    #[test]
    fn coset_rep_dimensions() {
        let z6 = Arc::new(FiniteGroup::cyclic(6));
        let ctx = setup(3, 1);
        let z2: Vec<u32> = z6.elements().filter(|&g| z6.element_order(g) <= 2).collect();
        assert_eq!(z2.len(), 2);
        let r = Rep::perm_on_cosets(z6.clone(), ctx.clone(), &z2);
        assert_eq!(r.dim, 3);
        // cosets of the whole group give the trivial representation
        let all: Vec<u32> = z6.elements().collect();
        let t = Rep::perm_on_cosets(z6.clone(), ctx.clone(), &all);
        assert_eq!(t.dim, 1);
        assert!(t.iso_test(&Rep::trivial(z6, ctx), 0).is_yes());
    }

    #[test]
    fn hom_spaces_match_schur() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let ctx = setup(3, 1);
        let triv = Rep::trivial(z2.clone(), ctx.clone());
        let mut sign_mats = vec![Mat::identity(1), Mat::identity(1)];
        sign_mats[1][(0, 0)] = 2; // -1 mod 3
        let sign = Rep::new(z2, ctx, sign_mats);
        assert_eq!(triv.hom_space(&triv).dim(), 1);
        assert_eq!(triv.hom_space(&sign).dim(), 0);
        assert_eq!(sign.hom_space(&sign).dim(), 1);
    }

    #[test]
    fn augmentation_is_unique_hom_to_trivial() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = setup(3, 1);
        let reg = Rep::regular(z3.clone(), ctx.clone());
        let triv = Rep::trivial(z3, ctx);
        let h = reg.hom_space(&triv);
        assert_eq!(h.dim(), 1);
        // the basis intertwiner is a multiple of the all-ones row
        let t = &h.basis[0];
        assert!(t.col_vec(0)[0] != 0);
        assert_eq!(t[(0, 0)], t[(0, 1)]);
        assert_eq!(t[(0, 1)], t[(0, 2)]);
    }

    #[test]
    fn invariants_of_regular_rep() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = setup(3, 1);
        let reg = Rep::regular(z3.clone(), ctx);
        let all: Vec<u32> = z3.elements().collect();
        let inv = reg.invariants(&all);
        assert_eq!(inv.cols(), 1); // spanned by the sum of basis vectors
    }

    #[test]
    fn iso_test_basics() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = setup(3, 1);
        let reg = Rep::regular(z3.clone(), ctx.clone());
        assert!(reg.iso_test(&reg, 1).is_yes());
        let triv = Rep::trivial(z3, ctx);
        assert!(matches!(triv.iso_test(&reg, 1), IsoOutcome::No));
    }

    #[test]
    fn sub_and_quotient_reps() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = setup(3, 1);
        let reg = Rep::regular(z3, ctx.clone());
        // invariant line spanned by (1,1,1)
        let line = Mat::column(&[1, 1, 1]);
        let sub = reg.sub_rep(&line);
        assert_eq!(sub.dim, 1);
        let quo = reg.quotient_rep(&line);
        assert_eq!(quo.dim, 2);
    }

    #[test]
    fn spin_generates_invariant_subspace() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let ctx = setup(3, 1);
        let reg = Rep::regular(z3, ctx.clone());
        let v = Mat::column(&[1, 0, 0]);
        let w = reg.spin(&v);
        assert_eq!(w.cols(), 3); // a basis vector generates the whole regular module
        let e = Mat::column(&[1, 2, 0]); // in the augmentation kernel
        let w2 = reg.spin(&e);
        assert_eq!(w2.cols(), 2);
    }
}
