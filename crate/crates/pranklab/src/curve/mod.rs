//! Explicit curve families with exact ramification data.
//!
//! Four families over GF(p^k) are supported, all presented as covers of the
//! x-line: the projective line itself; hyperelliptic curves y^2 = h(x) with
//! h squarefree and p odd; Artin-Schreier curves z^p - z = f(x) with every
//! pole order of f prime to p; and the fiber product of the last two. Every
//! place the engine touches must be rational over the configured field, and
//! construction fails with an explanatory error when it is not — enlarging k
//! always repairs this.

pub mod autos;
pub mod func;
pub mod omega;
pub mod quot;
pub mod ram;
pub mod ratfun;
pub mod series;

use crate::field::FieldCtx;
use crate::poly::Poly;
use ratfun::RatFun;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("hyperelliptic models need odd characteristic")]
    EvenCharacteristic,
    #[error("h(x) must be squarefree")]
    NotSquarefree,
    #[error("h(x) must be nonconstant")]
    ConstantH,
    #[error("f(x) must be nonconstant")]
    ConstantF,
    #[error("pole of f at {0} has order {1} divisible by p; pass f in reduced form")]
    WildPoleOrder(String, usize),
    #[error("place over {0} is not rational over GF({1}^{2}); increase the field degree k")]
    NonRationalPlace(String, u64, usize),
    #[error("divisor multiplicities are not constant on group orbits")]
    DivisorNotInvariant,
    #[error("declared map does not preserve the curve equations: {0}")]
    NotAnAutomorphism(String),
    #[error("no place with trivial stabilizer is available to enlarge the divisor")]
    NoFreeOrbit,
    #[error("unsupported quotient: {0}")]
    UnsupportedQuotient(String),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasePoint {
    Finite(u64),
    Infinity,
}

impl std::fmt::Display for BasePoint {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasePoint::Finite(c) => write!(w, "x = {c}"),
            BasePoint::Infinity => write!(w, "x = inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    ProjLine,
    Hyperelliptic { h: Poly },
    ArtinSchreier { f: RatFun },
    AsXHyper { f: RatFun, h: Poly },
}

impl Family {
    pub fn has_y(&self) -> bool {
        matches!(self, Family::Hyperelliptic { .. } | Family::AsXHyper { .. })
    }

    pub fn has_z(&self) -> bool {
        matches!(self, Family::ArtinSchreier { .. } | Family::AsXHyper { .. })
    }

    pub fn h(&self) -> Option<&Poly> {
        match self {
            Family::Hyperelliptic { h } | Family::AsXHyper { h, .. } => Some(h),
            _ => None,
        }
    }

    pub fn f(&self) -> Option<&RatFun> {
        match self {
            Family::ArtinSchreier { f } | Family::AsXHyper { f, .. } => Some(f),
            _ => None,
        }
    }

    /// Degree of the covering of the x-line.
    pub fn covering_degree(&self, p: u64) -> usize {
        match self {
            Family::ProjLine => 1,
            Family::Hyperelliptic { .. } => 2,
            Family::ArtinSchreier { .. } => p as usize,
            Family::AsXHyper { .. } => 2 * p as usize,
        }
    }
}

/// A closed point of the curve, rational over the working field, described by
/// its base x-value, the branch choices, and exact local numerology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub base: BasePoint,
    /// y-value at the place; None when the hyperelliptic direction ramifies
    /// (or the family has no y).
    pub y_branch: Option<u64>,
    /// z-value at the place; None when the Artin-Schreier direction ramifies.
    pub z_branch: Option<u64>,
    /// Ramification index over the x-line.
    pub e: usize,
    /// Valuation of y at the place (0 when unramified in y).
    pub v_y: i64,
    /// Valuation of z at the place.
    pub v_z: i64,
    /// Valuation of the differential dx at the place.
    pub v_dx: i64,
    /// Pole order of f at the place in the intermediate curve below the
    /// Artin-Schreier cover (0 when z is unramified here).
    pub as_pole: usize,
}

impl Place {
    pub fn hyp_ramified(&self) -> bool {
        self.y_branch.is_none() && self.v_y != 0
    }

    pub fn as_ramified(&self) -> bool {
        self.as_pole > 0
    }

    /// Different exponent of the place over the x-line.
    pub fn different_exponent(&self) -> i64 {
        let base_dx = match self.base {
            BasePoint::Finite(_) => 0,
            BasePoint::Infinity => -2,
        };
        self.v_dx - self.e as i64 * base_dx
    }

    /// Deterministic sort key; branch values use q as a stand-in for None so
    /// ramified places come after split ones over the same base.
    fn sort_key(&self, q: u64) -> (u8, u64, u64, u64) {
        let base = match self.base {
            BasePoint::Finite(c) => (0u8, c),
            BasePoint::Infinity => (1u8, 0),
        };
        (
            base.0,
            base.1,
            self.y_branch.unwrap_or(q),
            self.z_branch.unwrap_or(q),
        )
    }
}

/// An effective divisor supported on the marked places of an equivariant
/// curve: entry i is the multiplicity at place i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub mults: Vec<usize>,
}

impl Divisor {
    pub fn empty(n_places: usize) -> Divisor {
        Divisor { mults: vec![0; n_places] }
    }

    pub fn degree(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    pub fn reduced(&self) -> Divisor {
        Divisor {
            mults: self.mults.iter().map(|&m| m.min(1)).collect(),
        }
    }

    pub fn scaled(&self, k: usize) -> Divisor {
        Divisor {
            mults: self.mults.iter().map(|&m| m * k).collect(),
        }
    }

    pub fn union(&self, other: &Divisor) -> Divisor {
        Divisor {
            mults: self
                .mults
                .iter()
                .zip(&other.mults)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mults.len()).filter(|&i| self.mults[i] > 0).collect()
    }

    pub fn contains(&self, other: &Divisor) -> bool {
        self.mults.iter().zip(&other.mults).all(|(&a, &b)| a >= b)
    }
}

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub ctx: Arc<FieldCtx>,
    pub family: Family,
    pub genus: usize,
}

impl CurveSpec {
    /// Validates the family data and computes the genus by Riemann-Hurwitz
    /// over the x-line.
    pub fn build(ctx: Arc<FieldCtx>, family: Family) -> Result<CurveSpec, CurveError> {
        let p = ctx.prime();
        if let Some(h) = family.h() {
            if p == 2 {
                return Err(CurveError::EvenCharacteristic);
            }
            if h.deg() < 1 {
                return Err(CurveError::ConstantH);
            }
            if !h.is_squarefree(&ctx) {
                return Err(CurveError::NotSquarefree);
            }
        }
        if let Some(f) = family.f() {
            if f.is_constant() {
                return Err(CurveError::ConstantF);
            }
            for (c, l) in f.finite_poles(&ctx) {
                if l as u64 % p == 0 {
                    return Err(CurveError::WildPoleOrder(format!("x = {c}"), l));
                }
            }
            let linf = f.pole_order_at_infinity();
            if linf > 0 && linf as u64 % p == 0 {
                return Err(CurveError::WildPoleOrder("x = inf".into(), linf));
            }
            if !f.denominator_splits(&ctx) {
                return Err(CurveError::NonRationalPlace(
                    "a pole of f".into(),
                    p,
                    ctx.degree(),
                ));
            }
        }
        let mut curve = CurveSpec { ctx, family, genus: 0 };
        // Riemann-Hurwitz: 2g - 2 = deg * (-2) + sum of different exponents
        let deg = curve.family.covering_degree(p) as i64;
        let mut diff_sum = 0i64;
        for base in curve.intrinsic_bases() {
            for place in curve.places_over(base)? {
                diff_sum += place.different_exponent();
            }
        }
        let two_g_minus_2 = -2 * deg + diff_sum;
        assert!(two_g_minus_2 >= -2 && two_g_minus_2 % 2 == 0, "broken ramification data");
        curve.genus = ((two_g_minus_2 + 2) / 2) as usize;
        Ok(curve)
    }

    /// Base x-values where the covering can ramify: roots of h, poles of f,
    /// and infinity.
    pub fn intrinsic_bases(&self) -> Vec<BasePoint> {
        let mut out = Vec::new();
        if let Some(h) = self.family.h() {
            for r in h.roots(&self.ctx) {
                out.push(BasePoint::Finite(r));
            }
        }
        if let Some(f) = self.family.f() {
            for (c, _) in f.finite_poles(&self.ctx) {
                out.push(BasePoint::Finite(c));
            }
        }
        out.push(BasePoint::Infinity);
        out.sort();
        out.dedup();
        out
    }

    /// All places over a base x-value, canonically ordered. Fails when the
    /// branch values are not rational over the working field.
    pub fn places_over(&self, base: BasePoint) -> Result<Vec<Place>, CurveError> {
        let ctx = &self.ctx;
        let p = self.ctx.prime();
        let base_dx: i64 = match base {
            BasePoint::Finite(_) => 0,
            BasePoint::Infinity => -2,
        };
        // hyperelliptic layer: (ramified?, y values if split, v(h) sign data)
        struct HypLayer {
            ramified: bool,
            y_values: Vec<u64>, // empty if ramified or no y
            // valuation of h(x) along the base parameter: 1 at a simple root,
            // 0 at a unit, -deg h at infinity
            h_val: i64,
        }
        let hyp = match self.family.h() {
            None => HypLayer { ramified: false, y_values: vec![], h_val: 0 },
            Some(h) => match base {
                BasePoint::Finite(c) => {
                    let hv = h.eval(ctx, c);
                    if hv == 0 {
                        HypLayer { ramified: true, y_values: vec![], h_val: 1 }
                    } else {
                        let y0 = ctx.sqrt(hv).ok_or(CurveError::NonRationalPlace(
                            format!("{base}"),
                            p,
                            ctx.degree(),
                        ))?;
                        HypLayer {
                            ramified: false,
                            y_values: vec![y0, ctx.neg(y0)],
                            h_val: 0,
                        }
                    }
                }
                BasePoint::Infinity => {
                    let dh = h.deg();
                    if dh % 2 == 1 {
                        HypLayer { ramified: true, y_values: vec![], h_val: -dh }
                    } else {
                        let y0 = ctx.sqrt(h.lead()).ok_or(CurveError::NonRationalPlace(
                            format!("{base}"),
                            p,
                            ctx.degree(),
                        ))?;
                        HypLayer {
                            ramified: false,
                            y_values: vec![y0, ctx.neg(y0)],
                            h_val: -dh,
                        }
                    }
                }
            },
        };
        let e_hyp: usize = if hyp.ramified { 2 } else { 1 };
        // Artin-Schreier layer over the intermediate curve
        struct AsLayer {
            pole: usize,        // pole order of f on the intermediate curve
            z_values: Vec<u64>, // empty if ramified or no z
        }
        let as_layer = match self.family.f() {
            None => AsLayer { pole: 0, z_values: vec![] },
            Some(f) => {
                let base_pole = match base {
                    BasePoint::Finite(c) => (-f.valuation_at(ctx, c)).max(0) as usize,
                    BasePoint::Infinity => f.pole_order_at_infinity(),
                };
                if base_pole > 0 {
                    AsLayer { pole: base_pole * e_hyp, z_values: vec![] }
                } else {
                    let v = match base {
                        BasePoint::Finite(c) => f.eval(ctx, c).unwrap(),
                        BasePoint::Infinity => f.eval_at_infinity(ctx).unwrap(),
                    };
                    let z0 = ctx.solve_artin_schreier(v).ok_or(CurveError::NonRationalPlace(
                        format!("{base}"),
                        p,
                        ctx.degree(),
                    ))?;
                    let mut zs: Vec<u64> = (0..p).map(|j| ctx.add(z0, j)).collect();
                    zs.sort_unstable();
                    AsLayer { pole: 0, z_values: zs }
                }
            }
        };
        let wild = as_layer.pole > 0;
        let e_as: usize = if wild { p as usize } else { 1 };
        let e = e_hyp * e_as;
        // different exponent: wild part (p-1)(l+1) composed with the tame part
        let d_hyp: i64 = if hyp.ramified { 1 } else { 0 };
        let d_as: i64 = if wild {
            (p as i64 - 1) * (as_layer.pole as i64 + 1)
        } else {
            0
        };
        let d_total = d_as + e_as as i64 * d_hyp;
        let v_dx = d_total + e as i64 * base_dx;
        let v_y = if self.family.has_y() {
            // 2 v(y) = v(h(x)) = e * h_val along the base
            let t = e as i64 * hyp.h_val;
            assert_eq!(t % 2, 0);
            t / 2
        } else {
            0
        };
        let v_z = if wild {
            let t = -(e as i64) * match base {
                BasePoint::Finite(c) => -self.family.f().unwrap().valuation_at(ctx, c),
                BasePoint::Infinity => self.family.f().unwrap().pole_order_at_infinity() as i64,
            };
            assert_eq!(t % p as i64, 0);
            t / p as i64
        } else {
            0
        };
        let mut out = Vec::new();
        let y_options: Vec<Option<u64>> = if self.family.has_y() && !hyp.ramified {
            hyp.y_values.iter().map(|&y| Some(y)).collect()
        } else {
            vec![None]
        };
        let z_options: Vec<Option<u64>> = if self.family.has_z() && !wild {
            as_layer.z_values.iter().map(|&z| Some(z)).collect()
        } else {
            vec![None]
        };
        for &y in &y_options {
            for &z in &z_options {
                out.push(Place {
                    base,
                    y_branch: y,
                    z_branch: z,
                    e,
                    v_y,
                    v_z,
                    v_dx,
                    as_pole: as_layer.pole,
                });
            }
        }
        let q = ctx.order();
        out.sort_by_key(|pl| pl.sort_key(q));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratfun::parse_rational_function;

    fn ctx(p: u64, k: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, k).unwrap())
    }

    fn as_curve(c: &Arc<FieldCtx>, f: &str) -> CurveSpec {
        let f = parse_rational_function(c, f).unwrap();
        CurveSpec::build(c.clone(), Family::ArtinSchreier { f }).unwrap()
    }

    #[test]
    fn genus_of_artin_schreier_examples() {
        let c3 = ctx(3, 1);
        assert_eq!(as_curve(&c3, "x^2").genus, 1);
        assert_eq!(as_curve(&c3, "1/x + 1/(x-1)").genus, 2);
        // s simple affine poles: g = (s-1)(p-1)/2 * 2 ... via the formula
        // 2g - 2 = -2p + s(p-1)*2
        assert_eq!(as_curve(&c3, "1/x + 1/(x-1) + 1/(x-2)").genus, 4);
    }

    #[test]
    fn genus_of_hyperelliptic() {
        let c3 = ctx(3, 1);
        let h = parse_rational_function(&c3, "x^3 - x").unwrap().num;
        let hy = CurveSpec::build(c3.clone(), Family::Hyperelliptic { h }).unwrap();
        assert_eq!(hy.genus, 1);
        let c5 = ctx(5, 1);
        let h5 = parse_rational_function(&c5, "x*(x-1)*(x-2)*(x-3)*(x-4)").unwrap().num;
        let hy5 = CurveSpec::build(c5.clone(), Family::Hyperelliptic { h: h5 }).unwrap();
        assert_eq!(hy5.genus, 2);
    }

    #[test]
    fn genus_of_fiber_product() {
        // y^2 = x(x-1)(x-l), z^3 - z = 1/x over GF(27)
        let c27 = ctx(3, 3);
        let f = parse_rational_function(&c27, "1/x").unwrap();
        let lam = pick_lambda(&c27);
        let h = h_legendre(&c27, lam);
        let x = CurveSpec::build(c27.clone(), Family::AsXHyper { f, h }).unwrap();
        assert_eq!(x.genus, 4);
    }

    fn h_legendre(c: &Arc<FieldCtx>, lam: u64) -> Poly {
        // x(x-1)(x-lam)
        let x = Poly::x();
        let x1 = Poly::from_coeffs(vec![c.neg(1), 1]);
        let xl = Poly::from_coeffs(vec![c.neg(lam), 1]);
        x.mul(c, &x1).mul(c, &xl)
    }

    /// Smallest lambda giving a smooth curve with all fiber-product places
    /// rational: Tr(1/lambda) = 0 so the places over x = lambda split.
    fn pick_lambda(c: &Arc<FieldCtx>) -> u64 {
        c.elements()
            .find(|&l| {
                l != 0 && l != 1 && l != 2 && c.trace_to_prime(c.inv(l)) == 0
            })
            .expect("lambda exists in GF(27)")
    }

    #[test]
    fn special_places_of_as_square() {
        let c3 = ctx(3, 1);
        let x = as_curve(&c3, "x^2");
        let bases = x.intrinsic_bases();
        assert_eq!(bases, vec![BasePoint::Infinity]);
        let pl = x.places_over(BasePoint::Infinity).unwrap();
        assert_eq!(pl.len(), 1);
        assert_eq!(pl[0].e, 3);
        assert_eq!(pl[0].different_exponent(), 6); // (p-1)(l+1) = 2*3
        assert_eq!(pl[0].v_dx, 0);
        assert_eq!(pl[0].v_z, -2);
    }

    #[test]
    fn special_places_of_two_pole_curve() {
        let c3 = ctx(3, 1);
        let x = as_curve(&c3, "1/x + 1/(x-1)");
        let pl0 = x.places_over(BasePoint::Finite(0)).unwrap();
        assert_eq!(pl0.len(), 1);
        assert_eq!(pl0[0].e, 3);
        assert_eq!(pl0[0].v_z, -1);
        assert_eq!(pl0[0].v_dx, 4); // (p-1)(1+1) = 4 at a finite base
        // infinity splits into 3 rational places
        let plinf = x.places_over(BasePoint::Infinity).unwrap();
        assert_eq!(plinf.len(), 3);
        assert!(plinf.iter().all(|p| p.e == 1 && p.v_dx == -2));
        let zs: Vec<u64> = plinf.iter().map(|p| p.z_branch.unwrap()).collect();
        assert_eq!(zs, vec![0, 1, 2]);
    }

    #[test]
    fn hyperelliptic_branch_places() {
        let c3 = ctx(3, 1);
        let h = parse_rational_function(&c3, "x^3 - x").unwrap().num;
        let hy = CurveSpec::build(c3.clone(), Family::Hyperelliptic { h }).unwrap();
        let bases = hy.intrinsic_bases();
        assert_eq!(bases.len(), 4); // roots 0, 1, 2 and infinity
        for b in &bases {
            let pl = hy.places_over(*b).unwrap();
            assert_eq!(pl.len(), 1);
            assert_eq!(pl[0].e, 2);
            assert_eq!(pl[0].different_exponent(), 1); // tame quadratic
        }
        let pinf = hy.places_over(BasePoint::Infinity).unwrap();
        assert_eq!(pinf[0].v_dx, -3);
        assert_eq!(pinf[0].v_y, -3);
    }

    #[test]
    fn fiber_product_place_counts() {
        let c27 = ctx(3, 3);
        let f = parse_rational_function(&c27, "1/x").unwrap();
        let lam = pick_lambda(&c27);
        let h = h_legendre(&c27, lam);
        let x = CurveSpec::build(c27.clone(), Family::AsXHyper { f, h }).unwrap();
        // over x=0: both directions ramify, single place with e = 6
        let p0 = x.places_over(BasePoint::Finite(0)).unwrap();
        assert_eq!(p0.len(), 1);
        assert_eq!(p0[0].e, 6);
        assert_eq!(p0[0].v_y, 3);
        assert_eq!(p0[0].v_z, -2);
        assert_eq!(p0[0].as_pole, 2);
        // over x=1: y ramifies, z splits into 3
        let p1 = x.places_over(BasePoint::Finite(1)).unwrap();
        assert_eq!(p1.len(), 3);
        assert!(p1.iter().all(|p| p.e == 2 && p.z_branch.is_some()));
        // over infinity: y ramifies (odd degree), z splits
        let pinf = x.places_over(BasePoint::Infinity).unwrap();
        assert_eq!(pinf.len(), 3);
        assert!(pinf.iter().all(|p| p.e == 2));
        // over lambda: same shape as x=1
        let pl = x.places_over(BasePoint::Finite(lam)).unwrap();
        assert_eq!(pl.len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        let c3 = ctx(3, 1);
        let f = parse_rational_function(&c3, "1/x^3").unwrap();
        assert!(matches!(
            CurveSpec::build(c3.clone(), Family::ArtinSchreier { f }),
            Err(CurveError::WildPoleOrder(_, 3))
        ));
        let h_bad = parse_rational_function(&c3, "x^2").unwrap().num;
        assert_eq!(
            CurveSpec::build(c3.clone(), Family::Hyperelliptic { h: h_bad }).unwrap_err(),
            CurveError::NotSquarefree
        );
        let c2 = ctx(2, 1);
        let h2 = Poly::from_coeffs(vec![0, 1, 1]);
        assert_eq!(
            CurveSpec::build(c2, Family::Hyperelliptic { h: h2 }).unwrap_err(),
            CurveError::EvenCharacteristic
        );
    }
}
