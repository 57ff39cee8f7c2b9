//! Global sections of Omega_X(D), the Cartier operator, and group actions on
//! differentials.
//!
//! Bases are found by a monomial sieve: candidates x^a y^b z^i / DD(x) with
//! DD a product of (x - c) over the finite marked bases, constrained by
//! strand-exact valuation conditions at every marked place. The resulting
//! dimension is checked against Riemann-Roch, which certifies that the
//! candidate ranges were large enough and the valuation data consistent.

use crate::curve::autos::EquivCurve;
use crate::curve::func::{expand_strands, local_frame, valuation_at_place, FuncElem, LocalFrame};
use crate::curve::ratfun::RatFun;
use crate::curve::{BasePoint, CurveError, CurveSpec, Divisor};
use crate::mat::Mat;
use crate::poly::Poly;
use crate::rep::Rep;
use crate::semilinear::{SemilinearMap, Twist};
use std::collections::BTreeMap;

/// A space of differentials w * dx with its defining divisor.
#[derive(Debug, Clone)]
pub struct DiffSpace {
    pub divisor: Divisor,
    /// Coefficients w of the basis differentials w * dx.
    pub basis: Vec<FuncElem>,
}

impl DiffSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a as f64 / b as f64).ceil() as i64
}

/// Basis of H^0(X, Omega_X(D)) for an effective divisor D supported on the
/// marked places. Multiplicities are allowed.
pub fn omega_basis(eq: &EquivCurve, d: &Divisor) -> Result<DiffSpace, CurveError> {
    let curve = &eq.curve;
    let ctx = eq.ctx();
    assert_eq!(d.mults.len(), eq.places.len());
    let (b_count, z_count) = FuncElem::shape(curve);

    // denominator exponents per finite marked base
    let mut finite_bases: Vec<u64> = Vec::new();
    for pl in &eq.places {
        if let BasePoint::Finite(c) = pl.base {
            if !finite_bases.contains(&c) {
                finite_bases.push(c);
            }
        }
    }
    finite_bases.sort_unstable();
    let mut dd = Poly::one();
    let mut dd_deg = 0i64;
    for &c in &finite_bases {
        let mut cap = 0i64;
        for (i, pl) in eq.places.iter().enumerate() {
            if pl.base != BasePoint::Finite(c) {
                continue;
            }
            for b in 0..b_count as i64 {
                for zi in 0..z_count as i64 {
                    let t = d.mults[i] as i64 + pl.v_dx + b * pl.v_y + zi * pl.v_z;
                    cap = cap.max(t.div_euclid(pl.e as i64));
                }
            }
        }
        if cap > 0 {
            dd = dd.mul(ctx, &Poly::from_coeffs(vec![ctx.neg(c), 1]).pow(ctx, cap as u64));
            dd_deg += cap;
        }
    }
    // numerator degree bound from the places over infinity
    let mut a_cap = -1i64;
    for (i, pl) in eq.places.iter().enumerate() {
        if pl.base != BasePoint::Infinity {
            continue;
        }
        for b in 0..b_count as i64 {
            for zi in 0..z_count as i64 {
                let t = d.mults[i] as i64 + pl.v_dx + b * pl.v_y + zi * pl.v_z;
                a_cap = a_cap.max(dd_deg + t.div_euclid(pl.e as i64));
            }
        }
    }
    if a_cap < 0 {
        // nothing can satisfy the conditions at infinity
        return finalize_space(eq, d, vec![], vec![]);
    }

    // candidate list
    let mut candidates = Vec::new();
    for b in 0..b_count {
        for zi in 0..z_count {
            for a in 0..=a_cap as usize {
                candidates.push((a, b, zi));
            }
        }
    }
    let n_cand = candidates.len();

    // condition rows at every marked place
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (pi, pl) in eq.places.iter().enumerate() {
        let allowed = d.mults[pi] as i64;
        // thresholds per formal strand key
        let frame_probe = local_frame(curve, pl, 1);
        let y_formal = frame_probe.y_formal(curve);
        let z_formal = frame_probe.z_formal(curve);
        let mut max_thr = i64::MIN;
        let b_keys = if y_formal { b_count } else { 1 };
        let z_keys = if z_formal { z_count } else { 1 };
        let thr = |b: usize, zi: usize| {
            ceil_div(
                -allowed - pl.v_dx - b as i64 * pl.v_y - zi as i64 * pl.v_z,
                pl.e as i64,
            )
        };
        for b in 0..b_keys {
            for zi in 0..z_keys {
                max_thr = max_thr.max(thr(b, zi));
            }
        }
        let frame = local_frame(curve, pl, max_thr.max(1));
        let mut row_map: BTreeMap<(usize, usize, i64), Vec<u64>> = BTreeMap::new();
        for (ci, &(a, b, zi)) in candidates.iter().enumerate() {
            let r = RatFun::new(
                ctx,
                Poly::x().pow(ctx, a as u64),
                dd.clone(),
            );
            let cand = FuncElem::monomial(curve, r, b, zi);
            for ((kb, kz), series) in expand_strands(curve, &frame, &cand) {
                let t = thr(kb, kz);
                assert!(series.prec >= t, "expansion precision too small");
                let mut m = series.lead;
                while m < t {
                    let c = series.coeff(m);
                    if c != 0 {
                        row_map
                            .entry((kb, kz, m))
                            .or_insert_with(|| vec![0; n_cand])[ci] = c;
                    }
                    m += 1;
                }
            }
        }
        rows.extend(row_map.into_values());
    }

    let solution = if rows.is_empty() {
        Mat::identity(n_cand)
    } else {
        Mat::from_rows(rows).kernel(ctx)
    };
    finalize_space(eq, d, candidates, vec![(dd, solution)])
}

fn finalize_space(
    eq: &EquivCurve,
    d: &Divisor,
    candidates: Vec<(usize, usize, usize)>,
    sol: Vec<(Poly, Mat)>,
) -> Result<DiffSpace, CurveError> {
    let curve = &eq.curve;
    let ctx = eq.ctx();
    let mut basis = Vec::new();
    if let Some((dd, kernel)) = sol.into_iter().next() {
        for col in 0..kernel.cols() {
            let mut elem = FuncElem::zero(curve);
            for (ci, &(a, b, zi)) in candidates.iter().enumerate() {
                let c = kernel[(ci, col)];
                if c == 0 {
                    continue;
                }
                let num = Poly::x().pow(ctx, a as u64).scale(ctx, c);
                let r = RatFun::new(ctx, num, dd.clone());
                elem = elem.add(curve, &FuncElem::monomial(curve, r, b, zi));
            }
            basis.push(elem);
        }
    }
    // Riemann-Roch certificate
    let g = curve.genus;
    let expected = if d.degree() == 0 { g } else { g + d.degree() - 1 };
    assert_eq!(
        basis.len(),
        expected,
        "sieve dimension disagrees with Riemann-Roch (genus {g}, divisor degree {})",
        d.degree()
    );
    Ok(DiffSpace { divisor: d.clone(), basis })
}

/// Expresses target elements in the span of basis elements, as columns.
/// Returns None if some target is not in the span.
pub fn express_in_span(
    curve: &CurveSpec,
    basis: &[FuncElem],
    targets: &[FuncElem],
) -> Option<Mat> {
    let ctx = &curve.ctx;
    if basis.is_empty() {
        return if targets.iter().all(|t| t.is_zero()) {
            Some(Mat::zeros(0, targets.len()))
        } else {
            None
        };
    }
    let (b_count, z_count) = FuncElem::shape(curve);
    // common denominator over all entries
    let mut common = Poly::one();
    for e in basis.iter().chain(targets.iter()) {
        for row in &e.coeffs {
            for r in row {
                if !r.is_zero() {
                    let g = common.gcd(ctx, &r.den);
                    common = common.mul(ctx, &r.den.divrem(ctx, &g).0);
                }
            }
        }
    }
    let to_poly_vec = |e: &FuncElem| -> Vec<Poly> {
        let mut out = Vec::with_capacity(b_count * z_count);
        for b in 0..b_count {
            for i in 0..z_count {
                let r = &e.coeffs[b][i];
                if r.is_zero() {
                    out.push(Poly::zero());
                } else {
                    let (q, rem) = common.divrem(ctx, &r.den);
                    debug_assert!(rem.is_zero());
                    out.push(r.num.mul(ctx, &q));
                }
            }
        }
        out
    };
    let basis_polys: Vec<Vec<Poly>> = basis.iter().map(to_poly_vec).collect();
    let target_polys: Vec<Vec<Poly>> = targets.iter().map(to_poly_vec).collect();
    let max_deg = basis_polys
        .iter()
        .chain(target_polys.iter())
        .flat_map(|v| v.iter().map(|p| p.deg()))
        .max()
        .unwrap_or(-1)
        .max(0) as usize;
    let slot = max_deg + 1;
    let flatten = |polys: &[Poly]| -> Vec<u64> {
        let mut v = vec![0u64; polys.len() * slot];
        for (k, p) in polys.iter().enumerate() {
            for (j, &c) in p.0.iter().enumerate() {
                v[k * slot + j] = c;
            }
        }
        v
    };
    let mut cols = Vec::with_capacity(basis.len());
    for bp in &basis_polys {
        cols.push(flatten(bp));
    }
    let rows = cols[0].len();
    let mut mat = Mat::zeros(rows, basis.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            mat[(i, j)] = c;
        }
    }
    let mut tmat = Mat::zeros(rows, targets.len());
    for (j, tp) in target_polys.iter().enumerate() {
        for (i, &c) in flatten(tp).iter().enumerate() {
            tmat[(i, j)] = c;
        }
    }
    let x = mat.solve(ctx, &tmat)?;
    if mat.mul(ctx, &x) == tmat {
        Some(x)
    } else {
        None
    }
}

/// Matrix of the Cartier operator on the basis of the space, as a 1/p-linear
/// map: C(sum c_j w_j dx) = Gamma * c^[1/p] in basis coordinates.
pub fn cartier_matrix(eq: &EquivCurve, space: &DiffSpace) -> SemilinearMap {
    let curve = &eq.curve;
    let images: Vec<FuncElem> = space.basis.iter().map(|w| w.cartier_x(curve)).collect();
    let cols = express_in_span(curve, &space.basis, &images)
        .expect("Cartier image must stay in the space, by the divisor bound");
    SemilinearMap::new(cols, Twist::PInverse)
}

/// Representation of the group on the space of differentials: g sends w dx to
/// s_g(w) * a_g dx where s_g is the substitution of the group element.
pub fn action_matrices(eq: &EquivCurve, space: &DiffSpace) -> Result<Rep, CurveError> {
    let curve = &eq.curve;
    let ctx = eq.ctx();
    if !eq.is_invariant(&space.divisor) {
        return Err(CurveError::DivisorNotInvariant);
    }
    let mut mats = Vec::with_capacity(eq.group.order());
    for s in &eq.autos {
        let images: Vec<FuncElem> = space
            .basis
            .iter()
            .map(|w| s.apply(curve, w).scale(curve, s.a))
            .collect();
        let m = express_in_span(curve, &space.basis, &images)
            .expect("group action preserves the space of an invariant divisor");
        mats.push(m);
    }
    Ok(Rep::new(eq.group.clone(), ctx.clone(), mats))
}

/// Residue of w dx at a marked place that is unramified over the x-line.
/// The differential may have at most a simple pole there.
pub fn residue_at(eq: &EquivCurve, w: &FuncElem, place_idx: usize) -> Result<u64, CurveError> {
    let curve = &eq.curve;
    let ctx = eq.ctx();
    let pl = &eq.places[place_idx];
    if pl.e != 1 {
        return Err(CurveError::Unsupported(
            "residues are only computed at places unramified over the x-line".into(),
        ));
    }
    let frame = local_frame(curve, pl, 4);
    let strands = expand_strands(curve, &frame, w);
    let mut series = None;
    for ((b, i), s) in strands {
        assert_eq!((b, i), (0, 0), "unramified places have a single strand");
        series = Some(s);
    }
    let Some(s) = series else { return Ok(0) };
    match pl.base {
        BasePoint::Finite(_) => {
            if s.valuation().map_or(false, |v| v < -1) {
                return Err(CurveError::Unsupported("pole order exceeds one".into()));
            }
            Ok(s.coeff(-1))
        }
        BasePoint::Infinity => {
            // w dx = -w u^{-2} du
            if s.valuation().map_or(false, |v| v < 1) {
                return Err(CurveError::Unsupported("pole order exceeds one".into()));
            }
            Ok(ctx.neg(s.coeff(1)))
        }
    }
}

/// Exact valuation of a differential w dx at a marked place (with working
/// precision comfortably above any pole the space allows).
pub fn differential_valuation(eq: &EquivCurve, w: &FuncElem, place_idx: usize) -> Option<i64> {
    let curve = &eq.curve;
    let pl = &eq.places[place_idx];
    let frame: LocalFrame = local_frame(curve, pl, 8 + 2 * curve.genus as i64);
    valuation_at_place(curve, &frame, w).map(|v| v + pl.v_dx)
}

/// The p-rank: stable rank of the Cartier operator on holomorphic
/// differentials.
pub fn prank(eq: &EquivCurve) -> Result<usize, CurveError> {
    let space = omega_basis(eq, &eq.empty_divisor())?;
    let gamma = cartier_matrix(eq, &space);
    Ok(gamma.stable_rank(eq.ctx()))
}

/// Group representation on the stable subspace of the Cartier operator on
/// H^0(X, Omega_X(D)), computed on the divisor exactly as given.
pub fn stable_rep_of_divisor(eq: &EquivCurve, d: &Divisor) -> Result<Rep, CurveError> {
    let space = omega_basis(eq, d)?;
    let gamma = cartier_matrix(eq, &space);
    let action = action_matrices(eq, &space)?;
    let (vs, _vn) = gamma.stable_decomposition(eq.ctx());
    Ok(action.sub_rep(&vs))
}

/// Group representation on the semisimple part of H^0(X, Omega_X(D)): the
/// stable subspace of the Cartier operator, which the action preserves. The
/// divisor is reduced first since the semisimple part only sees the support.
pub fn prank_rep(eq: &EquivCurve, d: &Divisor) -> Result<Rep, CurveError> {
    stable_rep_of_divisor(eq, &d.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::autos::AutoMap;
    use crate::curve::ratfun::parse_rational_function;
    use crate::curve::Family;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn as_equiv(p: u64, k: usize, f: &str, autos: &[AutoMap]) -> EquivCurve {
        let ctx = Arc::new(FieldCtx::new(p, k).unwrap());
        let f = parse_rational_function(&ctx, f).unwrap();
        let curve = CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap();
        EquivCurve::new(curve, autos, &[]).unwrap()
    }

    fn hyp_equiv(p: u64, k: usize, h: &str, autos: &[AutoMap]) -> EquivCurve {
        let ctx = Arc::new(FieldCtx::new(p, k).unwrap());
        let h = parse_rational_function(&ctx, h).unwrap().num;
        let curve = CurveSpec::build(ctx, Family::Hyperelliptic { h }).unwrap();
        EquivCurve::new(curve, autos, &[]).unwrap()
    }

    #[test]
    fn holomorphic_basis_of_as_square_is_dx() {
        let eq = as_equiv(3, 1, "x^2", &[]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        assert_eq!(space.dim(), 1);
        let w = &space.basis[0];
        // the basis vector is a scalar multiple of 1 (i.e. of dx)
        assert!(w.coeffs[0][1].is_zero() && w.coeffs[0][2].is_zero());
        assert!(w.coeffs[0][0].is_constant());
    }

    #[test]
    fn hyperelliptic_holomorphic_basis() {
        // genus 2: basis dx/y, x dx/y
        let eq = hyp_equiv(5, 1, "x*(x-1)*(x-2)*(x-3)*(x-4)", &[]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        assert_eq!(space.dim(), 2);
        for w in &space.basis {
            // only the y-strand appears
            assert!(w.coeffs[0].iter().all(|r| r.is_zero()));
        }
    }

    #[test]
    fn two_pole_curve_dimensions() {
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[AutoMap::as_translation(1)]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        assert_eq!(space.dim(), 2); // genus 2
        // with the three places at infinity allowed as simple poles
        let inf: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].base == BasePoint::Infinity)
            .collect();
        let d = eq.divisor_on(&inf, 1);
        let space2 = omega_basis(&eq, &d).unwrap();
        assert_eq!(space2.dim(), 2 - 1 + 3);
    }

    #[test]
    fn cartier_kills_dx_on_as_square() {
        let eq = as_equiv(3, 1, "x^2", &[AutoMap::as_translation(1)]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        let gamma = cartier_matrix(&eq, &space);
        assert!(gamma.mat.is_zero());
        assert_eq!(prank(&eq).unwrap(), 0);
    }

    #[test]
    fn prank_of_two_pole_curve_is_two() {
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[]);
        assert_eq!(prank(&eq).unwrap(), 2);
    }

    #[test]
    fn hasse_invariant_on_legendre_curves() {
        // lambda = 2 over GF(3): supersingular
        let eq = hyp_equiv(3, 1, "x*(x-1)*(x-2)", &[]);
        assert_eq!(prank(&eq).unwrap(), 0);
        // ordinary lambda in GF(9)
        let eq2 = hyp_equiv(3, 2, "x*(x-1)*(x-g)", &[]);
        assert_eq!(prank(&eq2).unwrap(), 1);
    }

    #[test]
    fn cartier_commutes_with_action() {
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[AutoMap::as_translation(1)]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        let gamma = cartier_matrix(&eq, &space);
        let action = action_matrices(&eq, &space).unwrap();
        let ctx = eq.ctx();
        for g in eq.group.elements() {
            let m = action.mat(g);
            let lhs = gamma.mat.mul(ctx, &m.frob_inv_entries(ctx, 1));
            let rhs = m.mul(ctx, &gamma.mat);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn action_on_hyperelliptic_differentials() {
        let ctx = Arc::new(FieldCtx::new(3, 2).unwrap());
        let eq = hyp_equiv(3, 2, "x*(x-1)*(x-g)", &[AutoMap::hyperelliptic_involution(&ctx)]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        let action = action_matrices(&eq, &space).unwrap();
        // the involution negates dx/y
        let inv_elem = eq
            .group
            .elements()
            .find(|&g| eq.autos[g as usize].mu == eq.ctx().neg(1))
            .unwrap();
        assert_eq!(action.mat(inv_elem)[(0, 0)], eq.ctx().neg(1));
    }

    #[test]
    fn translation_acts_trivially_on_dx() {
        let eq = as_equiv(3, 1, "x^2", &[AutoMap::as_translation(1)]);
        let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
        let action = action_matrices(&eq, &space).unwrap();
        for g in eq.group.elements() {
            assert_eq!(action.mat(g), &Mat::identity(1));
        }
    }

    #[test]
    fn residues_on_projective_line() {
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        let curve = CurveSpec::build(ctx.clone(), Family::ProjLine).unwrap();
        let eq = EquivCurve::new(curve, &[], &[BasePoint::Finite(0)]).unwrap();
        // dx/x has residue 1 at x = 0 and -1 at infinity
        let w = FuncElem::from_rational(&eq.curve, parse_rational_function(&ctx, "1/x").unwrap());
        let at0 = eq
            .places
            .iter()
            .position(|p| p.base == BasePoint::Finite(0))
            .unwrap();
        let atinf = eq
            .places
            .iter()
            .position(|p| p.base == BasePoint::Infinity)
            .unwrap();
        assert_eq!(residue_at(&eq, &w, at0).unwrap(), 1);
        assert_eq!(residue_at(&eq, &w, atinf).unwrap(), 2);
        // holomorphic differentials have residue zero
        let hol = FuncElem::one(&eq.curve);
        assert_eq!(residue_at(&eq, &hol, at0).unwrap(), 0);
    }

    #[test]
    fn residue_cartier_compatibility() {
        // Res(C w)^p = Res(w) at simple poles
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[]);
        let inf: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].base == BasePoint::Infinity)
            .collect();
        let d = eq.divisor_on(&inf, 1);
        let space = omega_basis(&eq, &d).unwrap();
        let ctx = eq.ctx();
        for w in &space.basis {
            let cw = w.cartier_x(&eq.curve);
            for &i in &inf {
                let r = residue_at(&eq, w, i).unwrap();
                let rc = residue_at(&eq, &cw, i).unwrap();
                assert_eq!(ctx.pow(rc, 3), r);
            }
        }
    }

    #[test]
    fn prank_rep_of_two_pole_curve() {
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[AutoMap::as_translation(1)]);
        let rep = prank_rep(&eq, &eq.empty_divisor()).unwrap();
        assert_eq!(rep.dim, 2);
        // the action is not the identity (the module is the 2-dim Jordan block)
        assert!(rep.mats.iter().any(|m| m != &Mat::identity(2)));
    }

    #[test]
    fn semisimple_part_has_simple_poles_only() {
        // V_D = V_{D_red}: basis vectors of the stable part of a doubled
        // divisor still have poles of order at most one
        let eq = as_equiv(3, 1, "1/x + 1/(x-1)", &[AutoMap::as_translation(1)]);
        let wild: Vec<usize> = (0..eq.places.len())
            .filter(|&i| eq.places[i].as_ramified())
            .collect();
        let d2 = eq.divisor_on(&wild, 2);
        let space = omega_basis(&eq, &d2).unwrap();
        let gamma = cartier_matrix(&eq, &space);
        let (vs, _) = gamma.stable_decomposition(eq.ctx());
        for c in 0..vs.cols() {
            let mut w = FuncElem::zero(&eq.curve);
            for (j, b) in space.basis.iter().enumerate() {
                let coeff = vs[(j, c)];
                if coeff != 0 {
                    w = w.add(&eq.curve, &b.scale(&eq.curve, coeff));
                }
            }
            for &i in &wild {
                let v = differential_valuation(&eq, &w, i);
                assert!(v.map_or(true, |v| v >= -1), "stable differential with a double pole");
            }
        }
    }
}
