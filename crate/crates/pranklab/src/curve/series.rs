//! Truncated Laurent series for local expansions at places.
//!
//! A series stores exact coefficients for the orders `lead .. prec`; orders
//! at and beyond `prec` are unknown. All arithmetic tracks the resulting
//! precision window, so reading a coefficient inside the window is always
//! exact.

use crate::field::FieldCtx;
use crate::poly::Poly;
use crate::curve::ratfun::RatFun;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub lead: i64,
    /// Exclusive upper bound of known orders.
    pub prec: i64,
    /// Coefficient of order lead + i at index i; length = prec - lead.
    pub coeffs: Vec<u64>,
}

impl Series {
    pub fn zero(prec: i64) -> Series {
        Series { lead: prec, prec, coeffs: vec![] }
    }

    pub fn monomial(c: u64, order: i64, prec: i64) -> Series {
        if order >= prec || c == 0 {
            return Series::zero(prec);
        }
        let mut coeffs = vec![0; (prec - order) as usize];
        coeffs[0] = c;
        Series { lead: order, prec, coeffs }
    }

    pub fn coeff(&self, order: i64) -> u64 {
        assert!(order < self.prec, "coefficient beyond precision window");
        if order < self.lead {
            0
        } else {
            self.coeffs[(order - self.lead) as usize]
        }
    }

    /// First order with a nonzero known coefficient; None when the series is
    /// zero to working precision.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|&c| c != 0)
            .map(|i| self.lead + i as i64)
    }

    fn normalized(mut self) -> Series {
        while !self.coeffs.is_empty() && self.coeffs[0] == 0 {
            self.coeffs.remove(0);
            self.lead += 1;
        }
        self
    }

    pub fn add(&self, f: &FieldCtx, other: &Series) -> Series {
        let prec = self.prec.min(other.prec);
        let lead = self.lead.min(other.lead).min(prec);
        let mut coeffs = vec![0; (prec - lead) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let o = lead + i as i64;
            let a = if o >= self.lead && o < self.prec { self.coeff(o) } else { 0 };
            let b = if o >= other.lead && o < other.prec { other.coeff(o) } else { 0 };
            *c = f.add(a, b);
        }
        Series { lead, prec, coeffs }.normalized()
    }

    pub fn scale(&self, f: &FieldCtx, c: u64) -> Series {
        if c == 0 {
            return Series::zero(self.prec);
        }
        Series {
            lead: self.lead,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, f: &FieldCtx) -> Series {
        self.scale(f, f.neg(1))
    }

    pub fn mul(&self, f: &FieldCtx, other: &Series) -> Series {
        // product precision: each factor's unknown tail enters at
        // lead_other + prec_self and vice versa
        let prec = (self.prec + other.lead).min(other.prec + self.lead);
        let lead = self.lead + other.lead;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Series::zero(prec);
        }
        let mut coeffs = vec![0; (prec - lead).max(0) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let idx = i + j;
                if idx < coeffs.len() {
                    coeffs[idx] = f.add(coeffs[idx], f.mul(a, b));
                }
            }
        }
        Series { lead, prec, coeffs }.normalized()
    }

    pub fn shift(&self, n: i64) -> Series {
        Series {
            lead: self.lead + n,
            prec: self.prec + n,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Inverse of a series whose leading coefficient is a unit.
    pub fn inverse(&self, f: &FieldCtx) -> Series {
        let s = self.clone().normalized();
        assert!(
            !s.coeffs.is_empty() && s.coeffs[0] != 0,
            "series inverse needs a known nonzero leading term"
        );
        let n = s.coeffs.len();
        let a0_inv = f.inv(s.coeffs[0]);
        let mut inv = vec![0u64; n];
        inv[0] = a0_inv;
        for m in 1..n {
            // sum_{j=0..m} a_j * b_{m-j} = 0
            let mut acc = 0;
            for j in 1..=m {
                acc = f.add(acc, f.mul(s.coeffs[j], inv[m - j]));
            }
            inv[m] = f.neg(f.mul(acc, a0_inv));
        }
        Series {
            lead: -s.lead,
            prec: -s.lead + n as i64,
            coeffs: inv,
        }
    }

    /// Small integer powers; exponents here are at most the covering degree.
    pub fn pow(&self, f: &FieldCtx, e: u64) -> Series {
        if e == 0 {
            return Series::monomial(1, 0, self.prec.max(1));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Square root with the given constant-branch choice (odd characteristic):
    /// the series must have even valuation 2w and the caller supplies the
    /// root y0 of the order-2w coefficient.
    pub fn sqrt_with_branch(&self, f: &FieldCtx, y0: u64) -> Series {
        let s = self.clone().normalized();
        assert!(!s.coeffs.is_empty() && s.coeffs[0] != 0);
        assert_eq!(s.lead % 2, 0, "square root needs even valuation");
        assert_eq!(f.mul(y0, y0), s.coeffs[0], "branch must square to the lead");
        assert!(f.prime() != 2);
        let n = s.coeffs.len();
        let mut root = vec![0u64; n];
        root[0] = y0;
        let inv_2y0 = f.inv(f.mul(2 % f.prime(), y0));
        for m in 1..n {
            // (sum r_i t^i)^2 matches s up to order m
            let mut acc = 0;
            for j in 1..m {
                acc = f.add(acc, f.mul(root[j], root[m - j]));
            }
            root[m] = f.mul(f.sub(s.coeffs[m], acc), inv_2y0);
        }
        Series {
            lead: s.lead / 2,
            prec: s.lead / 2 + n as i64,
            coeffs: root,
        }
    }

    /// Solves d^p - d = self for a series d of positive valuation; the input
    /// must vanish to order >= 1. Adding z0 gives the local branch of an
    /// Artin-Schreier root.
    pub fn artin_schreier_root(&self, f: &FieldCtx) -> Series {
        let p = f.prime();
        let prec = self.prec;
        assert!(self.valuation().map_or(true, |v| v >= 1));
        let n = (prec - 1).max(0) as usize;
        let mut d = vec![0u64; n]; // coefficient of t^{m} at index m-1
        for m in 1..=n {
            let s_m = if (m as i64) < prec { self.coeff(m as i64) } else { 0 };
            // (d^p - d)_m = [p | m] d_{m/p}^p - d_m
            let dp = if m % (p as usize) == 0 && m / (p as usize) >= 1 {
                f.pow(d[(m / (p as usize)) - 1], p)
            } else {
                0
            };
            d[m - 1] = f.sub(dp, s_m);
        }
        Series { lead: 1, prec: n as i64 + 1, coeffs: d }.normalized()
    }
}

/// Expansion of a polynomial at x = c + u, exact, padded to the window.
pub fn poly_at_finite(f: &FieldCtx, p: &Poly, c: u64, prec: i64) -> Series {
    let shifted = p.shift(f, c);
    let mut coeffs: Vec<u64> = shifted.0.clone();
    let len = prec.max(0) as usize;
    coeffs.resize(len.max(coeffs.len()), 0);
    coeffs.truncate(len);
    Series { lead: 0, prec, coeffs }.normalized()
}

/// Expansion of a rational function at x = c + u to the given precision.
pub fn rational_at_finite(f: &FieldCtx, r: &RatFun, c: u64, prec: i64) -> Series {
    if r.is_zero() {
        return Series::zero(prec);
    }
    let (vd, dred) = r.den.root_multiplicity(f, c);
    let (vn, nred) = r.num.root_multiplicity(f, c);
    let window = prec - (vn as i64 - vd as i64) + 1;
    let num_s = poly_at_finite(f, &nred, c, window.max(1));
    let den_s = poly_at_finite(f, &dred, c, window.max(1));
    let series = num_s.mul(f, &den_s.inverse(f));
    let mut out = series.shift(vn as i64 - vd as i64);
    out.prec = out.prec.min(prec);
    let keep = (out.prec - out.lead).max(0) as usize;
    out.coeffs.truncate(keep);
    if out.coeffs.is_empty() {
        out.lead = out.prec;
    }
    out
}

/// Expansion of a rational function at infinity in the parameter u = 1/x.
pub fn rational_at_infinity(f: &FieldCtx, r: &RatFun, prec: i64) -> Series {
    if r.is_zero() {
        return Series::zero(prec);
    }
    let dn = r.num.deg() as usize;
    let dd = r.den.deg() as usize;
    // x^a with a = deg: num(1/u) u^{dn} has nonzero constant term
    let rev = |p: &Poly, d: usize| {
        let mut c = vec![0u64; d + 1];
        for i in 0..=d {
            c[d - i] = p.coeff(i);
        }
        Poly::from_coeffs(c)
    };
    let num_rev = rev(&r.num, dn);
    let den_rev = rev(&r.den, dd);
    let val = dd as i64 - dn as i64;
    let window = prec - val + 1;
    let num_s = poly_at_finite(f, &num_rev, 0, window.max(1));
    let den_s = poly_at_finite(f, &den_rev, 0, window.max(1));
    let series = num_s.mul(f, &den_s.inverse(f));
    let mut out = series.shift(val);
    out.prec = out.prec.min(prec);
    let keep = (out.prec - out.lead).max(0) as usize;
    out.coeffs.truncate(keep);
    if out.coeffs.is_empty() {
        out.lead = out.prec;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ratfun::parse_rational_function;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let f = f3();
        // 1/(1 - u) = 1 + u + u^2 + ...
        let s = Series { lead: 0, prec: 5, coeffs: vec![1, 2, 0, 0, 0] };
        let inv = s.inverse(&f);
        assert_eq!(inv.coeff(0), 1);
        assert_eq!(inv.coeff(1), 1);
        assert_eq!(inv.coeff(2), 1);
        assert_eq!(s.mul(&f, &inv).coeff(0), 1);
    }

    #[test]
    fn rational_expansion_at_pole() {
        let f = f3();
        let r = parse_rational_function(&f, "1/(x*(x-1))").unwrap();
        let s = rational_at_finite(&f, &r, 0, 3);
        // 1/(u(u-1)) = -1/u * 1/(1-u) = -u^{-1}(1 + u + u^2 + ...)
        assert_eq!(s.lead, -1);
        assert_eq!(s.coeff(-1), 2);
        assert_eq!(s.coeff(0), 2);
        assert_eq!(s.coeff(1), 2);
    }

    #[test]
    fn rational_expansion_at_infinity() {
        let f = f3();
        let r = parse_rational_function(&f, "x^2 + 1").unwrap();
        let s = rational_at_infinity(&f, &r, 3);
        assert_eq!(s.coeff(-2), 1);
        assert_eq!(s.coeff(-1), 0);
        assert_eq!(s.coeff(0), 1);
        // 1/x at infinity is u
        let r2 = parse_rational_function(&f, "1/x").unwrap();
        let s2 = rational_at_infinity(&f, &r2, 4);
        assert_eq!(s2.valuation(), Some(1));
        assert_eq!(s2.coeff(1), 1);
    }

    #[test]
    fn sqrt_recovers_square() {
        let f = FieldCtx::new(3, 2).unwrap();
        let s = Series { lead: 0, prec: 6, coeffs: vec![1, 1, 2, 0, 1, 0] };
        let r = s.sqrt_with_branch(&f, 1);
        let sq = r.mul(&f, &r);
        for o in 0..sq.prec {
            assert_eq!(sq.coeff(o), s.coeff(o));
        }
    }

    #[test]
    fn artin_schreier_root_solves_equation() {
        let f = f3();
        let s = Series { lead: 1, prec: 9, coeffs: vec![1, 0, 2, 1, 0, 0, 1, 2] };
        let d = s.artin_schreier_root(&f);
        // check d^3 - d = s within the window
        let d3 = d.pow(&f, 3);
        let diff = d3.add(&f, &d.neg(&f));
        for o in 1..diff.prec.min(s.prec) {
            assert_eq!(diff.coeff(o), s.coeff(o), "order {o}");
        }
    }

    #[test]
    fn pow_tracks_valuation() {
        let f = f3();
        let s = Series { lead: -1, prec: 3, coeffs: vec![1, 1, 0, 2] };
        let p2 = s.mul(&f, &s);
        assert_eq!(p2.lead, -2);
        assert_eq!(p2.coeff(-2), 1);
        assert_eq!(p2.coeff(-1), 2);
    }
}
