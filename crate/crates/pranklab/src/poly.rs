//! Dense univariate polynomials over a [`FieldCtx`].
//!
//! Coefficients are stored lowest-degree first with no trailing zeros; the
//! zero polynomial is the empty vector. Every operation takes the field
//! context explicitly.

use crate::field::FieldCtx;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![1])
    }

    pub fn constant(c: u64) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly(vec![c])
        }
    }

    pub fn x() -> Poly {
        Poly(vec![0, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree -1 by convention.
    pub fn deg(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn add(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = f.add(self.coeff(i), other.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = f.sub(self.coeff(i), other.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, f: &FieldCtx, c: u64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_xn(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; n];
        out.extend_from_slice(&self.0);
        Poly(out)
    }

    /// Euclidean division: self = q*other + r with deg r < deg other.
    pub fn divrem(&self, f: &FieldCtx, other: &Poly) -> (Poly, Poly) {
        assert!(!other.is_zero(), "polynomial division by zero");
        if self.deg() < other.deg() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let db = other.0.len() - 1;
        let lead_inv = f.inv(other.lead());
        let mut q = vec![0; r.len() - db];
        while r.len() > db {
            let c = f.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - 1 - db;
            q[shift] = c;
            if c != 0 {
                for j in 0..=db {
                    r[shift + j] = f.sub(r[shift + j], f.mul(c, other.0[j]));
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, f: &FieldCtx, other: &Poly) -> Poly {
        self.divrem(f, other).1
    }

    /// Monic gcd.
    pub fn gcd(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn monic(&self, f: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }

    pub fn eval(&self, f: &FieldCtx, x: u64) -> u64 {
        let mut acc = 0;
        for &c in self.0.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &FieldCtx) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for (i, &c) in self.0.iter().enumerate().skip(1) {
            out.push(f.mul(c, f.from_int(i as i64)));
        }
        Poly::from_coeffs(out)
    }

    /// Composition self(x + c).
    pub fn shift(&self, f: &FieldCtx, c: u64) -> Poly {
        let mut acc = Poly::zero();
        let xc = Poly(vec![c, 1]);
        for &coeff in self.0.iter().rev() {
            acc = acc.mul(f, &xc).add(f, &Poly::constant(coeff));
        }
        acc
    }

    /// Composition self(a*x + b).
    pub fn compose_affine(&self, f: &FieldCtx, a: u64, b: u64) -> Poly {
        let mut acc = Poly::zero();
        let ax_b = Poly::from_coeffs(vec![b, a]);
        for &coeff in self.0.iter().rev() {
            acc = acc.mul(f, &ax_b).add(f, &Poly::constant(coeff));
        }
        acc
    }

    pub fn pow(&self, f: &FieldCtx, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, f: &FieldCtx, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self, f: &FieldCtx) -> bool {
        if self.deg() <= 0 {
            return true;
        }
        let d = self.derivative(f);
        if d.is_zero() {
            return false;
        }
        self.gcd(f, &d).deg() == 0
    }

    /// All roots in the field, ascending.
    pub fn roots(&self, f: &FieldCtx) -> Vec<u64> {
        f.elements().filter(|&x| self.eval(f, x) == 0).collect()
    }

    /// Splits off the factor (x - c)^m exactly; returns (m, self / (x-c)^m).
    pub fn root_multiplicity(&self, f: &FieldCtx, c: u64) -> (usize, Poly) {
        let lin = Poly::from_coeffs(vec![f.neg(c), 1]);
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(f, &lin);
            if r.is_zero() && !cur.is_zero() {
                m += 1;
                cur = q;
            } else {
                return (m, cur);
            }
        }
    }

    pub fn is_irreducible(&self, f: &FieldCtx) -> bool {
        let k = self.deg();
        if k <= 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let m = self.monic(f);
        // no factor of degree d for d <= k/2: gcd(m, x^{q^d} - x) = 1
        let mut xq = Poly::x().rem(f, &m);
        for _ in 1..=(k / 2) as usize {
            xq = frobenius_power_mod(f, &xq, &m);
            let diff = xq.sub(f, &Poly::x());
            if m.gcd(f, &diff).deg() > 0 {
                return false;
            }
        }
        true
    }

    /// Distinct monic irreducible factors (no multiplicities), deterministic
    /// given the rng stream. Uses squarefree reduction, distinct-degree
    /// splitting, then Cantor-Zassenhaus equal-degree splitting.
    pub fn distinct_irreducible_factors<R: Rng>(&self, f: &FieldCtx, rng: &mut R) -> Vec<Poly> {
        let mut work = vec![self.squarefree_part(f)];
        let mut out: Vec<Poly> = Vec::new();
        while let Some(g) = work.pop() {
            if g.deg() <= 0 {
                continue;
            }
            if g.deg() == 1 {
                out.push(g.monic(f));
                continue;
            }
            // distinct-degree: peel the product of degree-d factors
            let m = g.monic(f);
            let mut xq = Poly::x().rem(f, &m);
            let mut d = 0usize;
            let mut found = Poly::one();
            while (d + 1) as i64 * 2 <= m.deg() {
                d += 1;
                xq = frobenius_power_mod(f, &xq, &m);
                let diff = xq.sub(f, &Poly::x());
                let h = m.gcd(f, &diff);
                if h.deg() > 0 {
                    found = h;
                    break;
                }
            }
            if found.deg() <= 0 {
                // remainder is irreducible
                out.push(m);
                continue;
            }
            let rest = m.divrem(f, &found).0;
            if rest.deg() > 0 {
                work.push(rest);
            }
            // equal-degree split of `found`, all factors have degree d
            let mut stack = vec![found];
            while let Some(h) = stack.pop() {
                if h.deg() as usize == d {
                    out.push(h.monic(f));
                    continue;
                }
                let piece = equal_degree_split(f, &h, d, rng);
                let other = h.divrem(f, &piece).0;
                stack.push(piece);
                stack.push(other);
            }
        }
        out.sort_by(|a, b| (a.deg(), &a.0).cmp(&(b.deg(), &b.0)));
        out.dedup();
        out
    }

    pub fn squarefree_part(&self, f: &FieldCtx) -> Poly {
        if self.deg() <= 0 {
            return self.monic(f);
        }
        let d = self.derivative(f);
        if d.is_zero() {
            // self is a p-th power: take coefficient-wise p-th roots
            let p = f.prime() as usize;
            let mut coeffs = Vec::new();
            for i in (0..self.0.len()).step_by(p) {
                coeffs.push(f.pth_root(self.0[i]));
            }
            return Poly::from_coeffs(coeffs).squarefree_part(f);
        }
        let g = self.gcd(f, &d);
        let sf = self.divrem(f, &g).0;
        if g.deg() > 0 {
            // factors hidden in g may not divide sf (p-th power parts)
            let rest = g.squarefree_part(f);
            let merged = sf.mul(f, &rest);
            let red = merged.divrem(f, &sf.gcd(f, &rest)).0;
            return red.monic(f);
        }
        sf.monic(f)
    }
}

/// x -> x^q reduction: computes a^q mod m where q is the field order.
fn frobenius_power_mod(f: &FieldCtx, a: &Poly, m: &Poly) -> Poly {
    a.pow_mod(f, f.order(), m)
}

/// One proper factor of a squarefree product of irreducibles of equal degree d.
fn equal_degree_split<R: Rng>(f: &FieldCtx, h: &Poly, d: usize, rng: &mut R) -> Poly {
    let q = f.order();
    loop {
        let deg = (h.deg() - 1).max(1) as usize;
        let mut coeffs = vec![0u64; deg + 1];
        for c in coeffs.iter_mut() {
            *c = rng.gen_range(0..q);
        }
        let a = Poly::from_coeffs(coeffs);
        if a.deg() < 1 {
            continue;
        }
        let g = h.gcd(f, &a);
        if g.deg() > 0 && g.deg() < h.deg() {
            return g;
        }
        let b = if f.prime() == 2 {
            // trace map sum a^{2^i} over the degree-d subfield tower
            let mut t = a.rem(f, h);
            let mut acc = t.clone();
            for _ in 1..(d * f.degree()) {
                t = t.pow_mod(f, 2, h);
                acc = acc.add(f, &t).rem(f, h);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            a.pow_mod(f, e, h).sub(f, &Poly::one())
        };
        let g = h.gcd(f, &b);
        if g.deg() > 0 && g.deg() < h.deg() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divrem_roundtrip() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = Poly::from_coeffs(vec![1, 2, 3, 4]);
        let b = Poly::from_coeffs(vec![2, 1]);
        let (q, r) = a.divrem(&f, &b);
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = FieldCtx::new(3, 1).unwrap();
        let a = Poly::from_coeffs(vec![2, 1]); // x + 2
        let b = Poly::from_coeffs(vec![1, 1]); // x + 1
        let ab = a.mul(&f, &b);
        let ac = a.mul(&f, &Poly::from_coeffs(vec![1, 0, 1]));
        assert_eq!(ab.gcd(&f, &ac), a.monic(&f));
    }

    #[test]
    fn factor_squarefree_cubic() {
        let f = FieldCtx::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // x^3 - x = x(x-1)(x+1)
        let h = Poly::from_coeffs(vec![0, 2, 0, 1]);
        let factors = h.distinct_irreducible_factors(&f, &mut rng);
        assert_eq!(factors.len(), 3);
        for fac in &factors {
            assert_eq!(fac.deg(), 1);
        }
    }

    #[test]
    fn factor_with_quadratic_part() {
        let f = FieldCtx::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x^2 + 1) is irreducible over GF(3); multiply by (x - 1)^2
        let quad = Poly::from_coeffs(vec![1, 0, 1]);
        let lin = Poly::from_coeffs(vec![2, 1]);
        let prod = quad.mul(&f, &lin).mul(&f, &lin);
        let factors = prod.distinct_irreducible_factors(&f, &mut rng);
        assert_eq!(factors, vec![lin.clone(), quad.clone()]);
    }

    #[test]
    fn irreducibility_matches_known() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert!(Poly::from_coeffs(vec![1, 0, 1]).is_irreducible(&f)); // x^2+1
        assert!(!Poly::from_coeffs(vec![2, 0, 1]).is_irreducible(&f)); // x^2+2 = (x-1)(x+1)
        assert!(Poly::from_coeffs(vec![1, 2, 0, 1]).is_irreducible(&f)); // x^3+2x+1
    }

    #[test]
    fn squarefree_detection_in_char_p() {
        let f = FieldCtx::new(3, 1).unwrap();
        let cube = Poly::from_coeffs(vec![1, 1]).pow(&f, 3); // (x+1)^3 = x^3 + 1
        assert!(!cube.is_squarefree(&f));
        assert_eq!(cube.squarefree_part(&f), Poly::from_coeffs(vec![1, 1]));
    }

    #[test]
    fn root_multiplicity_splits_exactly() {
        let f = FieldCtx::new(5, 1).unwrap();
        let lin = Poly::from_coeffs(vec![3, 1]); // x + 3, root 2
        let rest = Poly::from_coeffs(vec![1, 1, 1]);
        let prod = lin.pow(&f, 2).mul(&f, &rest);
        let (m, q) = prod.root_multiplicity(&f, 2);
        assert_eq!(m, 2);
        assert_eq!(q, rest);
    }
}
