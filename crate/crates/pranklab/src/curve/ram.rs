//! Permutation modules from ramification data and their loop spaces.

use crate::curve::autos::EquivCurve;
use crate::curve::{CurveError, Divisor};
use crate::mat::Mat;
use crate::pims::GroupAlgebra;
use crate::rep::Rep;

/// The module spanned by the places of tilde_d not in d, with its permutation
/// action. For empty d the augmentation kernel of the full span of tilde_d is
/// taken instead. tilde_d must be invariant, reduced and contain the reduced
/// part of d.
pub fn ramification_module(
    eq: &EquivCurve,
    d: &Divisor,
    tilde_d: &Divisor,
) -> Result<Rep, CurveError> {
    if !eq.is_invariant(tilde_d) || !tilde_d.contains(&d.reduced()) {
        return Err(CurveError::Unsupported(
            "reference divisor must be invariant and contain the divisor".into(),
        ));
    }
    let ctx = eq.ctx().clone();
    if d.is_empty() {
        let support = tilde_d.support();
        let perm = places_perm_rep(eq, &support);
        if perm.dim == 0 {
            return Ok(perm);
        }
        // augmentation kernel: coefficients summing to zero
        let ones = Mat::from_rows(vec![vec![1; perm.dim]]);
        let kernel = ones.kernel(&ctx);
        Ok(perm.sub_rep(&kernel))
    } else {
        let dred = d.reduced();
        let support: Vec<usize> = tilde_d
            .support()
            .into_iter()
            .filter(|&i| dred.mults[i] == 0)
            .collect();
        Ok(places_perm_rep(eq, &support))
    }
}

/// Permutation representation on a group-stable set of marked places.
fn places_perm_rep(eq: &EquivCurve, support: &[usize]) -> Rep {
    let n = support.len();
    let pos = |i: usize| support.iter().position(|&j| j == i).unwrap();
    let action: Vec<Vec<usize>> = eq
        .group
        .elements()
        .map(|g| {
            support
                .iter()
                .map(|&i| pos(eq.place_action[g as usize][i]))
                .collect()
        })
        .collect();
    if n == 0 {
        return Rep::zero(eq.group.clone(), eq.ctx().clone());
    }
    Rep::perm_from_action(eq.group.clone(), eq.ctx().clone(), &action)
}

/// The loop space of the ramification module for a sufficiently large
/// reference divisor. Independent of the choice of reference divisor, since
/// enlarging it only adds free summands.
pub fn core_module(eq: &EquivCurve, algebra: &GroupAlgebra, d: &Divisor) -> Result<Rep, CurveError> {
    let tilde = eq.sufficiently_large(d)?;
    let r = ramification_module(eq, &d.reduced(), &tilde)?;
    if r.dim == 0 {
        return Ok(Rep::zero(eq.group.clone(), eq.ctx().clone()));
    }
    Ok(algebra.loop_space(&r, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::autos::AutoMap;
    use crate::curve::ratfun::parse_rational_function;
    use crate::curve::{CurveSpec, Family};
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn as_equiv(f: &str) -> EquivCurve {
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let f = parse_rational_function(&ctx, f).unwrap();
        let curve = CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap();
        EquivCurve::new(curve, &[AutoMap::as_translation(1)], &[]).unwrap()
    }

    #[test]
    fn single_fixed_place_gives_zero_module() {
        let eq = as_equiv("x^2");
        let d = eq.empty_divisor();
        let tilde = eq.sufficiently_large(&d).unwrap();
        let r = ramification_module(&eq, &d, &tilde).unwrap();
        assert_eq!(r.dim, 0);
        let ga = GroupAlgebra::new(eq.group.clone(), eq.ctx().clone()).unwrap();
        let c = core_module(&eq, &ga, &d).unwrap();
        assert_eq!(c.dim, 0);
    }

    #[test]
    fn two_fixed_places_give_trivial_module() {
        let eq = as_equiv("1/x + 1/(x-1)");
        let d = eq.empty_divisor();
        let tilde = eq.sufficiently_large(&d).unwrap();
        assert_eq!(tilde.degree(), 2);
        let r = ramification_module(&eq, &d, &tilde).unwrap();
        assert_eq!(r.dim, 1);
        // trivial action on the kernel of k^2 -> k
        for g in eq.group.elements() {
            assert_eq!(r.mat(g), &Mat::identity(1));
        }
        let ga = GroupAlgebra::new(eq.group.clone(), eq.ctx().clone()).unwrap();
        let c = core_module(&eq, &ga, &d).unwrap();
        assert_eq!(c.dim, 2);
        // the core module is the loop space of the trivial module
        let triv = Rep::trivial(eq.group.clone(), eq.ctx().clone());
        let omega = ga.loop_space(&triv, 1);
        assert!(c.iso_test(&omega, 0).is_yes());
    }

    #[test]
    fn nonempty_divisor_removes_summands() {
        let eq = as_equiv("1/x + 1/(x-1)");
        let wild: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].as_ramified())
            .collect();
        let d = eq.divisor_on(&wild, 1);
        let tilde = eq.sufficiently_large(&d).unwrap();
        // D = tilde D: the difference is empty
        let r = ramification_module(&eq, &d, &tilde).unwrap();
        assert_eq!(r.dim, 0);
        // enlarging tilde D by the free orbit at infinity gives k[G]
        let spare = eq.spare_free_orbit(&d).unwrap();
        let mut bigger = tilde.clone();
        for i in spare {
            bigger.mults[i] = 1;
        }
        let r2 = ramification_module(&eq, &d, &bigger).unwrap();
        assert_eq!(r2.dim, 3);
        let ga = GroupAlgebra::new(eq.group.clone(), eq.ctx().clone()).unwrap();
        assert!(ga.is_projective(&r2));
    }
}
