//! Function field elements in canonical form.
//!
//! Every element of the function field is written uniquely as
//! sum over b < 2, i < p of r_{b,i}(x) * y^b * z^i with rational r_{b,i},
//! using the relations y^2 = h(x) and z^p = z + f(x). The same shape holds
//! (with the missing directions collapsed) for the smaller families.
//!
//! The Cartier step works with respect to the separating variable x: writing
//! an element u as sum u_j^p x^j, the operator keeps u_{p-1}. Powers of z are
//! unfolded through z = z^p - f and y through y = y^p h^{-(p-1)/2}, which
//! reduces everything to the classical coefficient extraction on rational
//! functions.

use crate::curve::ratfun::{cartier_rational, RatFun};
use crate::curve::series::{rational_at_finite, rational_at_infinity, Series};
use crate::curve::{BasePoint, CurveSpec, Place};
use crate::field::FieldCtx;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncElem {
    /// coeffs[b][i] is the rational coefficient of y^b z^i.
    pub coeffs: Vec<Vec<RatFun>>,
}

impl FuncElem {
    pub fn shape(curve: &CurveSpec) -> (usize, usize) {
        let b_count = if curve.family.has_y() { 2 } else { 1 };
        let z_count = if curve.family.has_z() {
            curve.ctx.prime() as usize
        } else {
            1
        };
        (b_count, z_count)
    }

    pub fn zero(curve: &CurveSpec) -> FuncElem {
        let (b_count, z_count) = FuncElem::shape(curve);
        FuncElem {
            coeffs: vec![vec![RatFun::zero(); z_count]; b_count],
        }
    }

    pub fn one(curve: &CurveSpec) -> FuncElem {
        let mut e = FuncElem::zero(curve);
        e.coeffs[0][0] = RatFun::one();
        e
    }

    pub fn from_rational(curve: &CurveSpec, r: RatFun) -> FuncElem {
        let mut e = FuncElem::zero(curve);
        e.coeffs[0][0] = r;
        e
    }

    /// The monomial r(x) * y^b * z^i.
    pub fn monomial(curve: &CurveSpec, r: RatFun, b: usize, i: usize) -> FuncElem {
        let mut e = FuncElem::zero(curve);
        e.coeffs[b][i] = r;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|r| r.is_zero()))
    }

    pub fn add(&self, curve: &CurveSpec, other: &FuncElem) -> FuncElem {
        let ctx = &curve.ctx;
        let mut out = self.clone();
        for (b, row) in other.coeffs.iter().enumerate() {
            for (i, r) in row.iter().enumerate() {
                out.coeffs[b][i] = out.coeffs[b][i].add(ctx, r);
            }
        }
        out
    }

    pub fn scale(&self, curve: &CurveSpec, c: u64) -> FuncElem {
        let ctx = &curve.ctx;
        FuncElem {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|r| r.scale(ctx, c)).collect())
                .collect(),
        }
    }

    pub fn scale_rational(&self, curve: &CurveSpec, c: &RatFun) -> FuncElem {
        let ctx = &curve.ctx;
        FuncElem {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|r| r.mul(ctx, c)).collect())
                .collect(),
        }
    }

    /// Product with reduction by y^2 = h and z^p = z + f.
    pub fn mul(&self, curve: &CurveSpec, other: &FuncElem) -> FuncElem {
        let ctx = &curve.ctx;
        let (b_count, z_count) = FuncElem::shape(curve);
        let mut out = FuncElem::zero(curve);
        for b1 in 0..b_count {
            for i1 in 0..z_count {
                if self.coeffs[b1][i1].is_zero() {
                    continue;
                }
                for b2 in 0..b_count {
                    for i2 in 0..z_count {
                        if other.coeffs[b2][i2].is_zero() {
                            continue;
                        }
                        let mut r = self.coeffs[b1][i1].mul(ctx, &other.coeffs[b2][i2]);
                        let mut b = b1 + b2;
                        if b == 2 {
                            let h = RatFun::from_poly(curve.family.h().unwrap().clone());
                            r = r.mul(ctx, &h);
                            b = 0;
                        }
                        // reduce the z power via z^m = z^{m-p} (z + f)
                        let mut zpow = vec![RatFun::zero(); z_count.max(i1 + i2 + 1)];
                        zpow[i1 + i2] = r;
                        while zpow.len() > z_count {
                            let top = zpow.pop().unwrap();
                            if !top.is_zero() {
                                let m = zpow.len();
                                let fr = curve.family.f().unwrap();
                                let with_f = top.mul(ctx, fr);
                                zpow[m - z_count] = zpow[m - z_count].add(ctx, &with_f);
                                zpow[m - z_count + 1] = zpow[m - z_count + 1].add(ctx, &top);
                            }
                        }
                        for (i, piece) in zpow.into_iter().enumerate() {
                            if !piece.is_zero() {
                                out.coeffs[b][i] = out.coeffs[b][i].add(ctx, &piece);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, curve: &CurveSpec, e: u64) -> FuncElem {
        let mut acc = FuncElem::one(curve);
        for _ in 0..e {
            acc = acc.mul(curve, self);
        }
        acc
    }

    /// Coefficient extraction of the Cartier operation with respect to x:
    /// returns the unique v with self = sum over j < p of (parts)_j^p x^j and
    /// v the coefficient at j = p-1.
    pub fn cartier_x(&self, curve: &CurveSpec) -> FuncElem {
        let ctx = &curve.ctx;
        let p = ctx.prime();
        let (b_count, z_count) = FuncElem::shape(curve);
        let mut out = FuncElem::zero(curve);
        for b in 0..b_count {
            for i in 0..z_count {
                let r = &self.coeffs[b][i];
                if r.is_zero() {
                    continue;
                }
                // z^i = sum_t binom(i,t) (z^t)^p (-f)^{i-t}
                for t in 0..=i {
                    let mut term = r.scale(ctx, binom_mod(ctx, i as u64, t as u64));
                    if i > t {
                        let f = curve.family.f().unwrap();
                        let neg_f = f.neg(ctx);
                        term = term.mul(ctx, &neg_f.pow(ctx, (i - t) as u64));
                    }
                    if b == 1 {
                        // y = y^p * h^{-(p-1)/2}
                        let h = curve.family.h().unwrap();
                        let hpow = h.pow(ctx, (p - 1) / 2);
                        term = term.div(ctx, &RatFun::from_poly(hpow));
                    }
                    let c = cartier_rational(ctx, &term);
                    if !c.is_zero() {
                        out.coeffs[b][t] = out.coeffs[b][t].add(ctx, &c);
                    }
                }
            }
        }
        out
    }

    /// Applies an affine substitution x -> a x + b0, y -> mu y,
    /// z -> eps z + gamma.
    pub fn substitute(&self, curve: &CurveSpec, a: u64, b0: u64, mu: u64, eps: u64, gamma: u64) -> FuncElem {
        let ctx = &curve.ctx;
        let (b_count, z_count) = FuncElem::shape(curve);
        let mut out = FuncElem::zero(curve);
        for b in 0..b_count {
            for i in 0..z_count {
                let r = &self.coeffs[b][i];
                if r.is_zero() {
                    continue;
                }
                let mut r2 = r.compose_affine(ctx, a, b0);
                if b == 1 {
                    r2 = r2.scale(ctx, mu);
                }
                // (eps z + gamma)^i
                for j in 0..=i {
                    let c = ctx.mul(
                        binom_mod(ctx, i as u64, j as u64),
                        ctx.mul(ctx.pow(eps, j as u64), ctx.pow(gamma, (i - j) as u64)),
                    );
                    if c == 0 {
                        continue;
                    }
                    let piece = r2.scale(ctx, c);
                    out.coeffs[b][j] = out.coeffs[b][j].add(ctx, &piece);
                }
            }
        }
        out
    }
}

/// Binomial coefficient in the field (arguments below p).
fn binom_mod(ctx: &FieldCtx, n: u64, k: u64) -> u64 {
    assert!(k <= n && n < ctx.prime());
    let mut num = 1;
    let mut den = 1;
    for j in 0..k {
        num = ctx.mul(num, ctx.from_int((n - j) as i64));
        den = ctx.mul(den, ctx.from_int((j + 1) as i64));
    }
    ctx.div(num, den)
}

/// Local expansion frame at a place: branch series for the directions that
/// split, strand bookkeeping for the ones that ramify.
pub struct LocalFrame {
    pub place: Place,
    pub prec: i64,
    y_series: Option<Series>,
    z_series: Option<Series>,
}

impl LocalFrame {
    /// y is kept as a formal strand symbol at this place.
    pub fn y_formal(&self, curve: &CurveSpec) -> bool {
        curve.family.has_y() && self.place.y_branch.is_none()
    }

    pub fn z_formal(&self, curve: &CurveSpec) -> bool {
        curve.family.has_z() && self.place.z_branch.is_none()
    }
}

/// Builds the expansion frame at a place with the given target precision for
/// the strand series.
pub fn local_frame(curve: &CurveSpec, place: &Place, prec: i64) -> LocalFrame {
    let ctx = &curve.ctx;
    // generous working precision: branch factors shift windows around
    let margin = 4 + place.v_y.unsigned_abs() as i64 + place.v_z.unsigned_abs() as i64;
    let wprec = prec + margin;
    let expand_rat = |r: &RatFun| match place.base {
        BasePoint::Finite(c) => rational_at_finite(ctx, r, c, wprec),
        BasePoint::Infinity => rational_at_infinity(ctx, r, wprec),
    };
    let y_series = match (curve.family.h(), place.y_branch) {
        (Some(h), Some(y0)) => {
            let hs = expand_rat(&RatFun::from_poly(h.clone()));
            Some(hs.sqrt_with_branch(ctx, y0))
        }
        _ => None,
    };
    let z_series = match (curve.family.f(), place.z_branch) {
        (Some(f), Some(z0)) => {
            let value = ctx.sub(ctx.pow(z0, ctx.prime()), z0);
            let fs = expand_rat(f);
            let shifted = fs.add(ctx, &Series::monomial(ctx.neg(value), 0, wprec));
            let delta = shifted.artin_schreier_root(ctx);
            Some(delta.add(ctx, &Series::monomial(z0, 0, wprec)))
        }
        _ => None,
    };
    LocalFrame {
        place: place.clone(),
        prec: wprec,
        y_series,
        z_series,
    }
}

/// Expands an element at the frame's place into formal strands: the result
/// maps (b, i) over the formal directions to the series in the base
/// parameter, with substituted directions folded in. The exact valuation of
/// the strand (b, i) part is e * (series order) + b*v_y + i*v_z, and strands
/// never cancel against each other.
pub fn expand_strands(
    curve: &CurveSpec,
    frame: &LocalFrame,
    elem: &FuncElem,
) -> Vec<((usize, usize), Series)> {
    let ctx = &curve.ctx;
    let (b_count, z_count) = FuncElem::shape(curve);
    let expand_rat = |r: &RatFun| match frame.place.base {
        BasePoint::Finite(c) => rational_at_finite(ctx, r, c, frame.prec),
        BasePoint::Infinity => rational_at_infinity(ctx, r, frame.prec),
    };
    let y_formal = frame.y_formal(curve);
    let z_formal = frame.z_formal(curve);
    let mut acc: Vec<Vec<Option<Series>>> = vec![vec![None; z_count]; b_count];
    for b in 0..b_count {
        for i in 0..z_count {
            let r = &elem.coeffs[b][i];
            if r.is_zero() {
                continue;
            }
            let mut s = expand_rat(r);
            let key_b = if y_formal { b } else { 0 };
            let key_i = if z_formal { i } else { 0 };
            if !y_formal && b > 0 {
                s = s.mul(ctx, frame.y_series.as_ref().expect("split place has y series"));
            }
            if !z_formal && i > 0 {
                let zs = frame.z_series.as_ref().expect("split place has z series");
                s = s.mul(ctx, &zs.pow(ctx, i as u64));
            }
            let slot = &mut acc[key_b][key_i];
            *slot = Some(match slot.take() {
                None => s,
                Some(prev) => prev.add(ctx, &s),
            });
        }
    }
    let mut out = Vec::new();
    for (b, row) in acc.into_iter().enumerate() {
        for (i, s) in row.into_iter().enumerate() {
            if let Some(s) = s {
                out.push(((b, i), s));
            }
        }
    }
    out
}

/// Exact valuation of an element at a place, bounded below by the expansion
/// precision. None when the element vanishes to working precision (in
/// particular for 0).
pub fn valuation_at_place(curve: &CurveSpec, frame: &LocalFrame, elem: &FuncElem) -> Option<i64> {
    let strands = expand_strands(curve, frame, elem);
    let mut best: Option<i64> = None;
    for ((b, i), s) in strands {
        if let Some(v) = s.valuation() {
            let total = frame.place.e as i64 * v
                + b as i64 * frame.place.v_y
                + i as i64 * frame.place.v_z;
            best = Some(best.map_or(total, |x: i64| x.min(total)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ratfun::parse_rational_function;
    use crate::curve::Family;
    use std::sync::Arc;

    fn as_curve(p: u64, k: usize, f: &str) -> CurveSpec {
        let ctx = Arc::new(FieldCtx::new(p, k).unwrap());
        let f = parse_rational_function(&ctx, f).unwrap();
        CurveSpec::build(ctx, Family::ArtinSchreier { f }).unwrap()
    }

    fn hyp_curve(p: u64, k: usize, h: &str) -> CurveSpec {
        let ctx = Arc::new(FieldCtx::new(p, k).unwrap());
        let h = parse_rational_function(&ctx, h).unwrap().num;
        CurveSpec::build(ctx, Family::Hyperelliptic { h }).unwrap()
    }

    #[test]
    fn multiplication_reduces_relations() {
        let x = as_curve(3, 1, "x^2");
        // z * z * z = z^3 = z + x^2
        let z = FuncElem::monomial(&x, RatFun::one(), 0, 1);
        let z3 = z.mul(&x, &z).mul(&x, &z);
        assert_eq!(z3.coeffs[0][1], RatFun::one());
        assert_eq!(z3.coeffs[0][0], parse_rational_function(&x.ctx, "x^2").unwrap());

        let hy = hyp_curve(3, 1, "x^3 - x");
        let y = FuncElem::monomial(&hy, RatFun::one(), 1, 0);
        let y2 = y.mul(&hy, &y);
        assert_eq!(y2.coeffs[0][0], parse_rational_function(&hy.ctx, "x^3 - x").unwrap());
    }

    #[test]
    fn cartier_kills_exact_differentials() {
        let x = as_curve(3, 1, "x^2");
        let one = FuncElem::one(&x);
        assert!(one.cartier_x(&x).is_zero());
    }

    #[test]
    fn cartier_on_hyperelliptic_canonical_basis() {
        // C((dx)/y) picks the x^{p-1} coefficient of h^{(p-1)/2}
        let hy = hyp_curve(3, 1, "x*(x-1)*(x-2)");
        // 1/y = y / h: coefficient of y is 1/h
        let h = parse_rational_function(&hy.ctx, "x*(x-1)*(x-2)").unwrap();
        let inv_y = FuncElem::monomial(&hy, h.inv(&hy.ctx), 1, 0);
        let c = inv_y.cartier_x(&hy);
        // h = x^3 - 3x^2 + 2x = x^3 + 2x over GF(3): coefficient of x^2 is 0,
        // so this curve is supersingular and C(dx/y) = 0
        assert!(c.is_zero());

        let hy2 = hyp_curve(3, 2, "x*(x-1)*(x-g)");
        let g = hy2.ctx.generator();
        let h2 = hy2.family.h().unwrap().clone();
        let inv_y2 = FuncElem::monomial(&hy2, RatFun::from_poly(h2.clone()).inv(&hy2.ctx), 1, 0);
        let c2 = inv_y2.cartier_x(&hy2);
        // expected scalar: (coefficient of x^2 in h)^{1/3} = (-(1+g))^{1/3}
        let coeff = hy2.ctx.pth_root(hy2.ctx.neg(hy2.ctx.add(1, g)));
        let expected = FuncElem::monomial(
            &hy2,
            RatFun::from_poly(h2).inv(&hy2.ctx).scale(&hy2.ctx, coeff),
            1,
            0,
        );
        assert_eq!(c2, expected);
    }

    #[test]
    fn cartier_semilinearity() {
        // C(v^p w) = v C(w) for a rational v
        let x = as_curve(3, 1, "1/x + 1/(x-1)");
        let ctx = &x.ctx;
        let v = parse_rational_function(ctx, "(x+1)/(x-2)").unwrap();
        let w = FuncElem::monomial(&x, parse_rational_function(ctx, "1/x").unwrap(), 0, 2);
        let vp = v.pow(ctx, 3);
        let scaled = w.scale_rational(&x, &vp);
        let lhs = scaled.cartier_x(&x);
        let rhs = w.cartier_x(&x).scale_rational(&x, &v);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn strand_expansion_at_wild_place() {
        let x = as_curve(3, 1, "x^2");
        let place = x.places_over(BasePoint::Infinity).unwrap()[0].clone();
        let frame = local_frame(&x, &place, 6);
        // v(z) = -2, v(dx) = 0, e = 3
        let z = FuncElem::monomial(&x, RatFun::one(), 0, 1);
        assert_eq!(valuation_at_place(&x, &frame, &z), Some(-2));
        let xx = FuncElem::from_rational(&x, RatFun::x());
        assert_eq!(valuation_at_place(&x, &frame, &xx), Some(-3));
        // z^3 - z = x^2 must have valuation -6
        let z3 = z.mul(&x, &z).mul(&x, &z);
        let lhs = z3.add(&x, &z.scale(&x, 2));
        assert_eq!(valuation_at_place(&x, &frame, &lhs), Some(-6));
    }

    #[test]
    fn branch_series_solves_equation() {
        let x = as_curve(3, 1, "1/x + 1/(x-1)");
        // infinity splits; check the z-branch series at z0 = 1
        let places = x.places_over(BasePoint::Infinity).unwrap();
        let pl = places.iter().find(|p| p.z_branch == Some(1)).unwrap();
        let frame = local_frame(&x, pl, 8);
        let zs = frame.z_series.clone().unwrap();
        let ctx = &x.ctx;
        let z3 = zs.pow(ctx, 3);
        let diff = z3.add(ctx, &zs.neg(ctx));
        let fs = rational_at_infinity(ctx, x.family.f().unwrap(), diff.prec);
        for o in 0..diff.prec.min(fs.prec) {
            assert_eq!(diff.coeff(o), fs.coeff(o), "order {o}");
        }
    }

    #[test]
    fn hyperelliptic_strand_valuations() {
        let hy = hyp_curve(3, 1, "x^3 - x");
        let p0 = hy.places_over(BasePoint::Finite(0)).unwrap()[0].clone();
        let frame = local_frame(&hy, &p0, 6);
        let y = FuncElem::monomial(&hy, RatFun::one(), 1, 0);
        assert_eq!(valuation_at_place(&hy, &frame, &y), Some(1));
        let xx = FuncElem::from_rational(&hy, RatFun::x());
        assert_eq!(valuation_at_place(&hy, &frame, &xx), Some(2));
        // 1/y has valuation -1
        let h = RatFun::from_poly(hy.family.h().unwrap().clone());
        let inv_y = FuncElem::monomial(&hy, h.inv(&hy.ctx), 1, 0);
        assert_eq!(valuation_at_place(&hy, &frame, &inv_y), Some(-1));
    }
}
