//! Quotients of the supported families by distinguished normal subgroups and
//! the induced divisor on the quotient.
//!
//! Supported pairs: the full translation subgroup on an Artin-Schreier curve
//! or a fiber product (quotient: projective line resp. hyperelliptic), and
//! the hyperelliptic involution on a hyperelliptic curve or a fiber product
//! (quotient: projective line resp. Artin-Schreier).

use crate::curve::autos::{AutoMap, EquivCurve};
use crate::curve::{BasePoint, CurveError, CurveSpec, Divisor, Family};
use crate::group::FiniteGroup;
use std::sync::Arc;

/// The quotient curve with its induced group action and the place projection.
pub struct QuotientData {
    pub quotient: EquivCurve,
    /// Quotient group H = G/N (re-exported from the projection).
    pub h_group: Arc<FiniteGroup>,
    /// Projection of group elements G -> H.
    pub proj: Vec<u32>,
    /// For each marked place of the source, the index of the place below.
    pub place_map: Vec<usize>,
    /// Indices of quotient places over which the covering is wildly ramified.
    pub wild_locus: Vec<usize>,
}

/// Which of the supported normal subgroups the given one is.
enum Kind {
    Translations,
    Involution,
}

fn classify_normal(eq: &EquivCurve, normal: &[u32]) -> Result<Kind, CurveError> {
    let p = eq.ctx().prime() as usize;
    let is_translation = |s: &AutoMap| s.a == 1 && s.b == 0 && s.mu == 1 && s.eps == 1;
    let is_involution =
        |s: &AutoMap| s.a == 1 && s.b == 0 && s.eps == 1 && s.gamma == 0 && s.mu == eq.ctx().neg(1);
    if eq.curve.family.has_z()
        && normal.len() == p
        && normal.iter().all(|&g| is_translation(&eq.autos[g as usize]))
    {
        return Ok(Kind::Translations);
    }
    if eq.curve.family.has_y()
        && normal.len() == 2
        && normal
            .iter()
            .all(|&g| g == 0 || is_involution(&eq.autos[g as usize]))
    {
        return Ok(Kind::Involution);
    }
    Err(CurveError::UnsupportedQuotient(
        "normal subgroup must be the full translation group or the hyperelliptic involution"
            .into(),
    ))
}

pub fn quotient_data(eq: &EquivCurve, normal: &[u32]) -> Result<QuotientData, CurveError> {
    if !eq.group.is_normal(normal) {
        return Err(CurveError::UnsupportedQuotient("subgroup is not normal".into()));
    }
    let kind = classify_normal(eq, normal)?;
    let ctx = eq.ctx().clone();
    let (h_group, proj) = eq
        .group
        .quotient(normal)
        .map_err(|e| CurveError::UnsupportedQuotient(format!("{e}")))?;
    let h_group = Arc::new(h_group);
    let reps = eq.group.coset_reps(&proj, h_group.order());

    let (family, project_auto): (Family, Box<dyn Fn(&AutoMap) -> AutoMap>) = match kind {
        Kind::Translations => {
            let fam = match &eq.curve.family {
                Family::ArtinSchreier { .. } => Family::ProjLine,
                Family::AsXHyper { h, .. } => Family::Hyperelliptic { h: h.clone() },
                _ => unreachable!("classify_normal checked the family"),
            };
            (
                fam,
                Box::new(|s: &AutoMap| AutoMap { a: s.a, b: s.b, mu: s.mu, eps: 1, gamma: 0 }),
            )
        }
        Kind::Involution => {
            let fam = match &eq.curve.family {
                Family::Hyperelliptic { .. } => Family::ProjLine,
                Family::AsXHyper { f, .. } => Family::ArtinSchreier { f: f.clone() },
                _ => unreachable!("classify_normal checked the family"),
            };
            (
                fam,
                Box::new(|s: &AutoMap| AutoMap {
                    a: s.a,
                    b: s.b,
                    mu: 1,
                    eps: s.eps,
                    gamma: s.gamma,
                }),
            )
        }
    };
    let quotient_curve = CurveSpec::build(ctx.clone(), family)?;
    // induced automorphisms: image of one representative per coset (elements
    // of a coset differ by N and project to the same map)
    let h_autos: Vec<AutoMap> = reps
        .iter()
        .map(|&g| project_auto(&eq.autos[g as usize]))
        .collect();
    for (c, &g) in reps.iter().enumerate() {
        for &n in normal {
            let other = project_auto(&eq.autos[eq.group.mul(g, n) as usize]);
            assert_eq!(other, h_autos[c], "coset projection must be consistent");
        }
    }

    // mark the images of all source bases so the place sets align
    let mut extra_bases: Vec<BasePoint> = eq.places.iter().map(|p| p.base).collect();
    extra_bases.sort();
    extra_bases.dedup();
    let declared: Vec<AutoMap> = h_autos
        .iter()
        .copied()
        .filter(|s| *s != AutoMap::identity())
        .collect();
    let quotient = EquivCurve::new(quotient_curve, &declared, &extra_bases)?;

    // place projection: match base and the surviving branch coordinate
    let mut place_map = Vec::with_capacity(eq.places.len());
    for pl in &eq.places {
        let idx = quotient
            .places
            .iter()
            .position(|q| {
                q.base == pl.base
                    && match kind {
                        Kind::Translations => match &quotient.curve.family {
                            Family::ProjLine => true,
                            _ => q.y_branch == pl.y_branch,
                        },
                        Kind::Involution => match &quotient.curve.family {
                            Family::ProjLine => true,
                            _ => q.z_branch == pl.z_branch,
                        },
                    }
            })
            .expect("every source place lies over a marked quotient place");
        place_map.push(idx);
    }

    let wild_locus = match kind {
        Kind::Translations => {
            let mut w: Vec<usize> = eq
                .places
                .iter()
                .enumerate()
                .filter(|(_, p)| p.as_ramified())
                .map(|(i, _)| place_map[i])
                .collect();
            w.sort_unstable();
            w.dedup();
            w
        }
        Kind::Involution => vec![],
    };

    Ok(QuotientData {
        quotient,
        h_group,
        proj,
        place_map,
        wild_locus,
    })
}

/// The divisor E on the quotient with pushed-forward invariant differentials:
/// at each source place, writing d + m = a n + b with d the divisor
/// multiplicity, n the stabilizer order in N, and m the valuation of dy/dx
/// (y a parameter below), the multiplicity of E below is a.
pub fn pushforward_divisor(
    eq: &EquivCurve,
    qd: &QuotientData,
    normal: &[u32],
    d: &Divisor,
) -> Result<Divisor, CurveError> {
    let p = eq.ctx().prime() as i64;
    let kind = classify_normal(eq, normal)?;
    let mut e = Divisor::empty(qd.quotient.places.len());
    let mut seen = vec![false; qd.quotient.places.len()];
    for (i, pl) in eq.places.iter().enumerate() {
        let below = qd.place_map[i];
        // stabilizer order of the place inside N
        let n = eq.stabilizers[i]
            .iter()
            .filter(|g| normal.contains(g))
            .count() as i64;
        let m = match kind {
            Kind::Translations => {
                if n > 1 {
                    // wild: the different exponent of the degree-p layer
                    (p - 1) * (pl.as_pole as i64 + 1)
                } else {
                    0
                }
            }
            Kind::Involution => {
                if n > 1 {
                    1
                } else {
                    0
                }
            }
        };
        let dv = d.mults[i] as i64;
        let a = (dv + m).div_euclid(n);
        if seen[below] {
            assert_eq!(e.mults[below], a as usize, "pushforward must be fiberwise constant");
        } else {
            e.mults[below] = a as usize;
            seen[below] = true;
        }
    }
    // support check: reduced E is the image of reduced D union the wild locus
    let mut expected: Vec<usize> = d
        .support()
        .iter()
        .map(|&i| qd.place_map[i])
        .chain(qd.wild_locus.iter().copied())
        .collect();
    expected.sort_unstable();
    expected.dedup();
    assert_eq!(e.support(), expected, "pushforward support mismatch");
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::omega::omega_basis;
    use crate::curve::ratfun::parse_rational_function;
    use crate::field::FieldCtx;
    use crate::poly::Poly;

    fn as_equiv(f: &str) -> EquivCurve {
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let f = parse_rational_function(&ctx, f).unwrap();
        let curve = CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap();
        EquivCurve::new(curve, &[AutoMap::as_translation(1)], &[]).unwrap()
    }

    fn fiber_product() -> (EquivCurve, u64) {
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
        (eq, lam)
    }

    #[test]
    fn as_quotient_is_projective_line() {
        let eq = as_equiv("x^2");
        let all: Vec<u32> = eq.group.elements().collect();
        let qd = quotient_data(&eq, &all).unwrap();
        assert!(matches!(qd.quotient.curve.family, Family::ProjLine));
        assert_eq!(qd.h_group.order(), 1);
        assert_eq!(qd.wild_locus.len(), 1);
    }

    #[test]
    fn pushforward_on_as_square() {
        let eq = as_equiv("x^2");
        let all: Vec<u32> = eq.group.elements().collect();
        let qd = quotient_data(&eq, &all).unwrap();
        let d = eq.empty_divisor();
        let e = pushforward_divisor(&eq, &qd, &all, &d).unwrap();
        // d + m = 0 + (p-1)(l+1) = 6 = 2 * 3: a = 2 at the wild point
        assert_eq!(e.degree(), 2);
        assert_eq!(e.mults[qd.wild_locus[0]], 2);
        // invariants of Omega_X(D) match Omega_Y(E) in dimension
        let space_x = omega_basis(&eq, &d).unwrap();
        let space_y = omega_basis(&qd.quotient, &e).unwrap();
        // g_X = 1 and all of H^0(Omega_X) is fixed by the translations here
        assert_eq!(space_x.dim(), 1);
        assert_eq!(space_y.dim(), 1);
    }

    #[test]
    fn fiber_product_translation_quotient_is_elliptic() {
        let (eq, lam) = fiber_product();
        let translations: Vec<u32> = eq
            .group
            .elements()
            .filter(|&g| {
                let s = eq.autos[g as usize];
                s.a == 1 && s.b == 0 && s.mu == 1
            })
            .collect();
        assert_eq!(translations.len(), 3);
        let qd = quotient_data(&eq, &translations).unwrap();
        match &qd.quotient.curve.family {
            Family::Hyperelliptic { h } => {
                assert_eq!(h.eval(qd.quotient.ctx(), lam), 0);
            }
            other => panic!("expected hyperelliptic quotient, got {other:?}"),
        }
        assert_eq!(qd.quotient.curve.genus, 1);
        assert_eq!(qd.h_group.order(), 2);
        // wild exactly over x = 0
        assert_eq!(qd.wild_locus.len(), 1);
        assert_eq!(
            qd.quotient.places[qd.wild_locus[0]].base,
            BasePoint::Finite(0)
        );
    }

    #[test]
    fn fiber_product_involution_quotient_is_artin_schreier() {
        let (eq, _) = fiber_product();
        let ctx = eq.ctx().clone();
        let invs: Vec<u32> = eq
            .group
            .elements()
            .filter(|&g| {
                let s = eq.autos[g as usize];
                g == 0 || (s.mu == ctx.neg(1) && s.gamma == 0 && s.a == 1)
            })
            .collect();
        assert_eq!(invs.len(), 2);
        let qd = quotient_data(&eq, &invs).unwrap();
        assert!(matches!(qd.quotient.curve.family, Family::ArtinSchreier { .. }));
        // z^3 - z = 1/x is rational: 2g - 2 = -6 + 2*(1+1)
        assert_eq!(qd.quotient.curve.genus, 0);
        assert_eq!(qd.h_group.order(), 3);
        assert!(qd.wild_locus.is_empty());
    }

    #[test]
    fn tame_pushforward_with_divisor() {
        // hyperelliptic involution quotient: d = 1 at a branch place gives
        // a = (1 + 1)/2 = 1 below
        let ctx = Arc::new(FieldCtx::new(3, 2).unwrap());
        let h = parse_rational_function(&ctx, "x*(x-1)*(x-g)").unwrap().num;
        let curve = CurveSpec::build(ctx.clone(), Family::Hyperelliptic { h }).unwrap();
        let eq = EquivCurve::new(curve, &[AutoMap::hyperelliptic_involution(&ctx)], &[]).unwrap();
        let all: Vec<u32> = eq.group.elements().collect();
        let qd = quotient_data(&eq, &all).unwrap();
        let branch: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].hyp_ramified() && eq.places[i].base == BasePoint::Finite(0))
            .collect();
        let d = eq.divisor_on(&branch, 1);
        let e = pushforward_divisor(&eq, &qd, &all, &d).unwrap();
        assert_eq!(e.degree(), 1);
        // with empty divisor the quotient sees nothing (tame everywhere)
        let e0 = pushforward_divisor(&eq, &qd, &all, &eq.empty_divisor()).unwrap();
        assert!(e0.is_empty());
    }
}
