//! Curve automorphisms and the induced group action on places.
//!
//! An automorphism is stored by its substitution on the coordinate functions:
//! x -> a x + b, y -> mu y, z -> eps z + gamma. The declared generators are
//! verified symbolically against the curve equations, closed into a finite
//! group, and the contragredient action on places is computed from branch
//! data. The action on functions omega -> s(omega) is a left action when the
//! group law is substitution composition, which is how the closure is built.

use crate::curve::func::FuncElem;
use crate::curve::ratfun::RatFun;
use crate::curve::{BasePoint, CurveError, CurveSpec, Divisor, Place};
use crate::field::FieldCtx;
use crate::group::{closure_group, FiniteGroup};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutoMap {
    pub a: u64,
    pub b: u64,
    pub mu: u64,
    pub eps: u64,
    pub gamma: u64,
}

impl AutoMap {
    pub fn identity() -> AutoMap {
        AutoMap { a: 1, b: 0, mu: 1, eps: 1, gamma: 0 }
    }

    pub fn as_translation(c: u64) -> AutoMap {
        AutoMap { a: 1, b: 0, mu: 1, eps: 1, gamma: c }
    }

    pub fn hyperelliptic_involution(ctx: &FieldCtx) -> AutoMap {
        AutoMap { a: 1, b: 0, mu: ctx.neg(1), eps: 1, gamma: 0 }
    }

    pub fn x_symmetry(a: u64, b: u64, mu: u64, eps: u64, gamma: u64) -> AutoMap {
        AutoMap { a, b, mu, eps, gamma }
    }

    /// Substitution composition: (s o t)(u) = s(t(u)).
    pub fn compose(ctx: &FieldCtx, s: &AutoMap, t: &AutoMap) -> AutoMap {
        AutoMap {
            a: ctx.mul(t.a, s.a),
            b: ctx.add(ctx.mul(t.a, s.b), t.b),
            mu: ctx.mul(t.mu, s.mu),
            eps: ctx.mul(t.eps, s.eps),
            gamma: ctx.add(ctx.mul(t.eps, s.gamma), t.gamma),
        }
    }

    /// Checks that the substitution preserves the defining equations.
    pub fn verify(&self, curve: &CurveSpec) -> Result<(), CurveError> {
        let ctx = &curve.ctx;
        if self.a == 0 {
            return Err(CurveError::NotAnAutomorphism("a = 0 does not act on x".into()));
        }
        match curve.family.h() {
            Some(h) => {
                // h(a x + b) = mu^2 h(x)
                let lhs = h.compose_affine(ctx, self.a, self.b);
                let rhs = h.scale(ctx, ctx.mul(self.mu, self.mu));
                if lhs != rhs {
                    return Err(CurveError::NotAnAutomorphism(format!(
                        "h(ax+b) != mu^2 h(x) for a={}, b={}, mu={}",
                        self.a, self.b, self.mu
                    )));
                }
            }
            None => {
                if self.mu != 1 {
                    return Err(CurveError::NotAnAutomorphism("family has no y".into()));
                }
            }
        }
        match curve.family.f() {
            Some(f) => {
                if self.eps == 0 || self.eps >= ctx.prime() {
                    return Err(CurveError::NotAnAutomorphism(
                        "eps must be a nonzero prime-field element".into(),
                    ));
                }
                // f(a x + b) = eps f(x) + gamma^p - gamma
                let lhs = f.compose_affine(ctx, self.a, self.b);
                let c = ctx.sub(ctx.pow(self.gamma, ctx.prime()), self.gamma);
                let rhs = f.scale(ctx, self.eps).add(ctx, &RatFun::constant(c));
                if lhs != rhs {
                    return Err(CurveError::NotAnAutomorphism(format!(
                        "f(ax+b) != eps f(x) + (gamma^p - gamma) for a={}, b={}, eps={}, gamma={}",
                        self.a, self.b, self.eps, self.gamma
                    )));
                }
            }
            None => {
                if self.eps != 1 || self.gamma != 0 {
                    return Err(CurveError::NotAnAutomorphism("family has no z".into()));
                }
            }
        }
        Ok(())
    }

    /// Image of a place under the group element with this substitution: the
    /// defining property is v_{s.P}(u) = v_P(s^{-1}(u)).
    pub fn map_place(&self, ctx: &FieldCtx, place: &Place) -> Place {
        let base = match place.base {
            BasePoint::Infinity => BasePoint::Infinity,
            BasePoint::Finite(c) => BasePoint::Finite(ctx.div(ctx.sub(c, self.b), self.a)),
        };
        let y_branch = place.y_branch.map(|y0| ctx.div(y0, self.mu));
        let z_branch = place
            .z_branch
            .map(|z0| ctx.div(ctx.sub(z0, self.gamma), self.eps));
        Place {
            base,
            y_branch,
            z_branch,
            ..place.clone()
        }
    }

    /// Substitution applied to an element of the function field.
    pub fn apply(&self, curve: &CurveSpec, elem: &FuncElem) -> FuncElem {
        elem.substitute(curve, self.a, self.b, self.mu, self.eps, self.gamma)
    }
}

/// A curve together with a finite automorphism group and the marked places
/// the engine works with: all intrinsic ramification places plus every place
/// that any group element can fix, closed under the group action.
pub struct EquivCurve {
    pub curve: CurveSpec,
    pub group: Arc<FiniteGroup>,
    /// Substitution data per group element.
    pub autos: Vec<AutoMap>,
    /// Marked places in canonical order.
    pub places: Vec<Place>,
    /// place_action[g][i] = index of the image of place i under element g.
    pub place_action: Vec<Vec<usize>>,
    /// Stabilizer subgroup of each place.
    pub stabilizers: Vec<Vec<u32>>,
}

impl EquivCurve {
    pub fn new(
        curve: CurveSpec,
        declared: &[AutoMap],
        extra_bases: &[BasePoint],
    ) -> Result<EquivCurve, CurveError> {
        let ctx = curve.ctx.clone();
        for s in declared {
            s.verify(&curve)?;
        }
        let (group, autos) = closure_group(declared, AutoMap::identity(), |s, t| {
            AutoMap::compose(&ctx, s, t)
        })
        .map_err(|e| CurveError::Unsupported(format!("automorphism closure failed: {e}")))?;
        let group = Arc::new(group);

        // marked bases: intrinsic ramification, requested extras, and the
        // fixed x-values of every element; closed under the base action
        let mut bases = curve.intrinsic_bases();
        bases.extend_from_slice(extra_bases);
        for s in &autos {
            if s.a != 1 {
                let denom = ctx.sub(1, s.a);
                bases.push(BasePoint::Finite(ctx.div(s.b, denom)));
            }
        }
        let mut i = 0;
        while i < bases.len() {
            let b = bases[i];
            for s in &autos {
                let image = match b {
                    BasePoint::Infinity => BasePoint::Infinity,
                    BasePoint::Finite(c) => BasePoint::Finite(ctx.div(ctx.sub(c, s.b), s.a)),
                };
                if !bases.contains(&image) {
                    bases.push(image);
                }
            }
            i += 1;
        }
        bases.sort();
        bases.dedup();

        let mut places = Vec::new();
        for b in bases {
            places.extend(curve.places_over(b)?);
        }

        // action of each element on the marked places
        let mut place_action = Vec::with_capacity(group.order());
        for s in &autos {
            let mut perm = Vec::with_capacity(places.len());
            for pl in &places {
                let img = s.map_place(&ctx, pl);
                let idx = places
                    .iter()
                    .position(|q| q == &img)
                    .expect("marked places are closed under the group action");
                perm.push(idx);
            }
            place_action.push(perm);
        }
        // left-action sanity on a generator pair
        debug_assert!(group.elements().all(|g| {
            group.elements().all(|h| {
                let gh = group.mul(g, h);
                (0..places.len()).all(|i| {
                    place_action[g as usize][place_action[h as usize][i]]
                        == place_action[gh as usize][i]
                })
            })
        }));

        let stabilizers = (0..places.len())
            .map(|i| {
                group
                    .elements()
                    .filter(|&g| place_action[g as usize][i] == i)
                    .collect::<Vec<u32>>()
            })
            .collect();

        Ok(EquivCurve {
            curve,
            group,
            autos,
            places,
            place_action,
            stabilizers,
        })
    }

    /// Equivariant curve with the trivial group (plain curve computations).
    pub fn plain(curve: CurveSpec) -> Result<EquivCurve, CurveError> {
        EquivCurve::new(curve, &[], &[])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.curve.ctx
    }

    /// Indices of places with nontrivial stabilizer.
    pub fn fixed_locus(&self) -> Vec<usize> {
        (0..self.places.len())
            .filter(|&i| self.stabilizers[i].len() > 1)
            .collect()
    }

    /// Number of places with nontrivial stabilizer.
    pub fn r_count(&self) -> usize {
        self.fixed_locus().len()
    }

    pub fn empty_divisor(&self) -> Divisor {
        Divisor::empty(self.places.len())
    }

    pub fn divisor_on(&self, indices: &[usize], mult: usize) -> Divisor {
        let mut d = self.empty_divisor();
        for &i in indices {
            d.mults[i] = mult;
        }
        d
    }

    pub fn is_invariant(&self, d: &Divisor) -> bool {
        self.group.elements().all(|g| {
            (0..self.places.len())
                .all(|i| d.mults[self.place_action[g as usize][i]] == d.mults[i])
        })
    }

    /// Orbit partition of the given place indices.
    pub fn orbits(&self, indices: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.places.len()];
        let mut out = Vec::new();
        for &i in indices {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .group
                .elements()
                .map(|g| self.place_action[g as usize][i])
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Smallest invariant reduced divisor that is nonempty and contains both
    /// the reduction of d and every place with nontrivial stabilizer. When
    /// that union is empty a free orbit of marked places is added; if no
    /// marked place has trivial stabilizer this fails.
    pub fn sufficiently_large(&self, d: &Divisor) -> Result<Divisor, CurveError> {
        let mut tilde = d.reduced();
        for i in self.fixed_locus() {
            tilde.mults[i] = 1;
        }
        if tilde.is_empty() {
            let free = (0..self.places.len()).find(|&i| self.stabilizers[i].len() == 1);
            match free {
                Some(i) => {
                    for orbit in self.orbits(&[i]) {
                        for j in orbit {
                            tilde.mults[j] = 1;
                        }
                    }
                }
                None => return Err(CurveError::NoFreeOrbit),
            }
        }
        debug_assert!(self.is_invariant(&tilde));
        Ok(tilde)
    }

    /// A free orbit disjoint from the given divisor, if one exists among the
    /// marked places. Used to test that enlarging the reference divisor does
    /// not change downstream results.
    pub fn spare_free_orbit(&self, avoid: &Divisor) -> Option<Vec<usize>> {
        let i = (0..self.places.len())
            .find(|&i| self.stabilizers[i].len() == 1 && avoid.mults[i] == 0)?;
        Some(self.orbits(&[i]).remove(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ratfun::parse_rational_function;
    use crate::curve::Family;

    fn as_equiv(p: u64, k: usize, f: &str, autos: &[AutoMap]) -> EquivCurve {
        let ctx = Arc::new(FieldCtx::new(p, k).unwrap());
        let f = parse_rational_function(&ctx, f).unwrap();
        let curve = CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap();
        EquivCurve::new(curve, autos, &[]).unwrap()
    }

    #[test]
    fn translation_group_is_cyclic_p() {
        let eq = as_equiv(3, 1, "x^2", &[AutoMap::as_translation(1)]);
        assert_eq!(eq.group.order(), 3);
        assert_eq!(eq.places.len(), 1);
        assert_eq!(eq.r_count(), 1);
        assert_eq!(eq.stabilizers[0].len(), 3);
    }

    #[test]
    fn two_pole_curve_fixed_locus() {
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[AutoMap::as_translation(1)]);
        // marked: ramified places over 0 and 1, plus 3 split places over inf
        assert_eq!(eq.places.len(), 5);
        assert_eq!(eq.r_count(), 2);
        // translations permute the three places at infinity cyclically
        let inf_places: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].base == BasePoint::Infinity)
            .collect();
        assert_eq!(inf_places.len(), 3);
        let orbit = eq.orbits(&inf_places);
        assert_eq!(orbit.len(), 1);
        assert_eq!(orbit[0].len(), 3);
    }

    #[test]
    fn dihedral_action_on_two_pole_curve() {
        // x -> 1 - x swaps the poles; z -> -z compensates the sign of f
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let sigma = AutoMap::x_symmetry(ctx.neg(1), 1, 1, ctx.sub(0, 1), 0);
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[AutoMap::as_translation(1), sigma]);
        // the closure is dihedral of order 6
        assert_eq!(eq.group.order(), 6);
        assert!(!eq.group.is_abelian());
        // fixed locus: the two wild places (stabilizer Z/3), and places with
        // involution stabilizers over x = 2 and infinity
        assert_eq!(eq.r_count(), 8);
        let wild: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].as_ramified())
            .collect();
        assert_eq!(wild.len(), 2);
        for &i in &wild {
            assert_eq!(eq.stabilizers[i].len(), 3);
        }
        // x = 2 is marked as a fixed base of the involution
        let over_two: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].base == BasePoint::Finite(2))
            .collect();
        assert_eq!(over_two.len(), 3);
        let stab_sizes: Vec<usize> = over_two.iter().map(|&i| eq.stabilizers[i].len()).collect();
        assert_eq!(stab_sizes, vec![2, 2, 2]);
    }

    #[test]
    fn rejects_non_automorphism() {
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let f = parse_rational_function(&ctx, "x^2").unwrap();
        let curve = CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap();
        // x -> x + 1 does not preserve z^3 - z = x^2
        let bad = AutoMap::x_symmetry(1, 1, 1, 1, 0);
        assert!(matches!(
            EquivCurve::new(curve, &[bad], &[]),
            Err(CurveError::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn sufficiently_large_divisors() {
        let eq = as_equiv(3, 1, "x^2", &[AutoMap::as_translation(1)]);
        let d = eq.empty_divisor();
        let tilde = eq.sufficiently_large(&d).unwrap();
        assert_eq!(tilde.degree(), 1); // the single wild place
        // trivial group: any place is a free orbit
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let f = parse_rational_function(&ctx, "x^2").unwrap();
        let curve = CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap();
        let plain = EquivCurve::plain(curve).unwrap();
        let t2 = plain.sufficiently_large(&plain.empty_divisor()).unwrap();
        assert_eq!(t2.degree(), 1);
    }

    #[test]
    fn fiber_product_z6_action() {
        let ctx = Arc::new(FieldCtx::new(3, 3).unwrap());
        let f = parse_rational_function(&ctx, "1/x").unwrap();
        let lam = ctx
            .elements()
            .find(|&l| l > 2 && ctx.trace_to_prime(ctx.inv(l)) == 0)
            .unwrap();
        let x = Poly::x();
        let h = x
            .mul(&ctx, &Poly::from_coeffs(vec![ctx.neg(1), 1]))
            .mul(&ctx, &Poly::from_coeffs(vec![ctx.neg(lam), 1]));
        let curve = CurveSpec::build(ctx.clone(), Family::AsXHyper { f, h }).unwrap();
        let eq = EquivCurve::new(
            curve,
            &[AutoMap::as_translation(1), AutoMap::hyperelliptic_involution(&ctx)],
            &[],
        )
        .unwrap();
        assert_eq!(eq.group.order(), 6);
        assert!(eq.group.is_abelian());
        assert_eq!(eq.places.len(), 10);
        assert_eq!(eq.r_count(), 10);
        // stabilizer sizes: 6 at the doubly ramified place over 0, 2 elsewhere
        let sizes: Vec<usize> = (0..10).map(|i| eq.stabilizers[i].len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![2, 2, 2, 2, 2, 2, 2, 2, 2, 6]);
    }

    use crate::poly::Poly;
}
