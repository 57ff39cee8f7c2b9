//! Exact arithmetic in the finite fields GF(p^k).
//!
//! Elements are stored as packed integers: the element `c_0 + c_1*a + ... +
//! c_{k-1}*a^{k-1}` (with `a` the class of `x` modulo the defining polynomial)
//! is the integer `c_0 + c_1*p + ... + c_{k-1}*p^{k-1}`. Under this encoding
//! `0` is the additive and `1` the multiplicative identity of every field, the
//! prime subfield occupies the values `0..p`, and every integer in `0..p^k`
//! names exactly one element. All operations go through a [`FieldCtx`], which
//! owns the defining polynomial and (for small fields) multiplication and
//! inversion tables.
//!
//! The defining polynomial is chosen deterministically: among all monic
//! irreducible polynomials of degree `k` over GF(p) we take the one whose
//! coefficient vector `(c_{k-1}, ..., c_1, c_0)` is lexicographically
//! smallest. No external polynomial tables are consulted.

use thiserror::Error;

/// Largest field order for which dense multiplication/inversion tables are
/// precomputed. Beyond this, arithmetic falls back to on-the-fly polynomial
/// reduction.
const TABLE_LIMIT: u64 = 1024;

const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field order {0}^{1} does not fit the element encoding")]
    TooLarge(u64, usize),
    #[error("p = {p} divides m = {m}, so no power of p is 1 mod m")]
    PDividesM { p: u64, m: u64 },
}

/// Arithmetic context for GF(p^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    q: u64,
    /// Monic defining polynomial, length k+1, lowest coefficient first.
    /// For k = 1 this is `x` itself, i.e. [0, 1].
    modulus: Vec<u64>,
    mul_table: Option<Vec<u64>>,
    inv_table: Option<Vec<u64>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^k) with the deterministic defining polynomial.
    pub fn new(p: u64, k: usize) -> Result<FieldCtx, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k < 1 {
            return Err(FieldError::BadDegree);
        }
        if k > MAX_DEGREE || (p as u128).pow(k as u32) > (1u128 << 62) {
            return Err(FieldError::TooLarge(p, k));
        }
        let q = p.pow(k as u32);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, k)
        };
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            ctx.build_tables();
        }
        Ok(ctx)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial, lowest first, length k+1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut mul = vec![0u64; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let m = self.mul_slow(a, b);
                mul[(a * self.q + b) as usize] = m;
                mul[(b * self.q + a) as usize] = m;
            }
        }
        let mut inv = vec![0u64; q];
        for a in 1..self.q {
            inv[a as usize] = self.pow_with(&mul, a, self.q - 2);
        }
        self.mul_table = Some(mul);
        self.inv_table = Some(inv);
    }

    fn pow_with(&self, mul: &[u64], a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul[(acc * self.q + base) as usize];
            }
            base = mul[(base * self.q + base) as usize];
            e >>= 1;
        }
        acc
    }

    fn digits(&self, a: u64) -> [u64; MAX_DEGREE] {
        debug_assert!(a < self.q);
        let mut out = [0u64; MAX_DEGREE];
        let mut v = a;
        for d in out.iter_mut().take(self.k) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        let mut v = 0;
        for &d in digits[..self.k].iter().rev() {
            v = v * self.p + d;
        }
        v
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.k {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.pack(&out)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let da = self.digits(a);
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.k {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.pack(&out)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.mul_table {
            return t[(a * self.q + b) as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a * b) % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..self.k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // reduce by the monic modulus
        for i in (self.k..2 * self.k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = i - self.k + j;
                    prod[idx] = (prod[idx] + (self.p - (c * m) % self.p)) % self.p;
                }
            }
        }
        self.pack(&prod)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in GF({}^{})", self.p, self.k);
        if let Some(t) = &self.inv_table {
            return t[a as usize];
        }
        self.pow(a, self.q - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Frobenius x -> x^p.
    pub fn frob(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// p-th root, the inverse of Frobenius: x -> x^{p^{k-1}}.
    pub fn pth_root(&self, a: u64) -> u64 {
        if self.k == 1 {
            return a;
        }
        self.frob_iter(a, self.k - 1)
    }

    /// Iterated Frobenius x -> x^{p^i}.
    pub fn frob_iter(&self, a: u64, i: usize) -> u64 {
        let mut v = a;
        for _ in 0..(i % self.k) {
            v = self.frob(v);
        }
        v
    }

    /// Iterated inverse Frobenius x -> x^{p^{-i}}.
    pub fn frob_inv_iter(&self, a: u64, i: usize) -> u64 {
        let i = i % self.k;
        if i == 0 {
            return a;
        }
        self.frob_iter(a, self.k - i)
    }

    /// Image of an integer under Z -> GF(p^k).
    pub fn from_int(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u64
    }

    /// Absolute trace down to the prime field; the result is a value < p.
    pub fn trace_to_prime(&self, a: u64) -> u64 {
        let mut acc = 0;
        let mut v = a;
        for _ in 0..self.k {
            acc = self.add(acc, v);
            v = self.frob(v);
        }
        debug_assert!(acc < self.p);
        acc
    }

    /// Smallest generator of the multiplicative group, by element value.
    pub fn generator(&self) -> u64 {
        let n = self.q - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        'outer: for g in 1..self.q {
            for &f in &factors {
                if self.pow(g, n / f) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    /// Smallest square root if `a` is a square (p odd), else None.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        assert!(self.p != 2, "sqrt is only used for odd characteristic");
        if self.pow(a, (self.q - 1) / 2) != 1 {
            return None;
        }
        (1..self.q).find(|&r| self.mul(r, r) == a)
    }

    /// Smallest z with z^p - z = v, if one exists (iff the trace of v is 0).
    pub fn solve_artin_schreier(&self, v: u64) -> Option<u64> {
        if self.trace_to_prime(v) != 0 {
            return None;
        }
        (0..self.q).find(|&z| self.sub(self.pow(z, self.p), z) == v)
    }

    /// Embedding of this field into `big`, which must have the same p and a
    /// degree divisible by ours. Returns None if no embedding exists.
    pub fn embedding(&self, big: &FieldCtx) -> Option<FieldEmbedding> {
        if big.p != self.p || big.k % self.k != 0 {
            return None;
        }
        // smallest root of our defining polynomial inside `big`
        let root = big.elements().find(|&r| {
            let mut acc = 0;
            let mut pw = 1;
            for &c in &self.modulus {
                acc = big.add(acc, big.mul(c, pw));
                pw = big.mul(pw, r);
            }
            acc == 0
        })?;
        let mut powers = Vec::with_capacity(self.k);
        let mut pw = 1;
        for _ in 0..self.k {
            powers.push(pw);
            pw = big.mul(pw, root);
        }
        Some(FieldEmbedding {
            p: self.p,
            small_k: self.k,
            powers,
        })
    }
}

/// A field homomorphism GF(p^k) -> GF(p^K) determined by a root of the small
/// field's defining polynomial.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    p: u64,
    small_k: usize,
    powers: Vec<u64>,
}

impl FieldEmbedding {
    pub fn map(&self, big: &FieldCtx, a: u64) -> u64 {
        let mut acc = 0;
        let mut v = a;
        for i in 0..self.small_k {
            let c = v % self.p;
            v /= self.p;
            acc = big.add(acc, big.mul(c, self.powers[i]));
        }
        acc
    }
}

/// Smallest k with p^k = 1 mod m, i.e. the multiplicative order of p mod m.
/// GF(p^k) then contains the m-th roots of unity and is a splitting field for
/// every finite group whose p'-exponent divides m.
pub fn splitting_field_degree(m: u64, p: u64) -> Result<usize, FieldError> {
    if m == 0 || (m > 1 && m % p == 0) {
        return Err(FieldError::PDividesM { p, m });
    }
    if m == 1 {
        return Ok(1);
    }
    let mut pk = p % m;
    for k in 1..=m as usize {
        if pk == 1 {
            return Ok(k);
        }
        pk = (pk * p) % m;
    }
    unreachable!("order of p mod m divides phi(m) <= m");
}

/// Monic irreducible polynomial of degree k over GF(p) whose coefficient
/// vector, read highest-degree-first, is lexicographically smallest. The
/// packed value c_0 + c_1 p + ... enumerates exactly in that order.
fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let prime = FieldCtx::new(p, 1).expect("prime field");
    let count = p.pow(k as u32);
    for packed in 0..count {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut v = packed;
        for _ in 0..k {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        if poly_is_irreducible(&prime, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)");
}

// Minimal polynomial helpers over the prime field, used only for the modulus
// search. General polynomial arithmetic over any FieldCtx lives in poly.rs.

fn poly_is_irreducible(f: &FieldCtx, coeffs: &[u64]) -> bool {
    let k = coeffs.len() - 1;
    if coeffs[0] == 0 {
        return k == 1;
    }
    // f is irreducible iff it has no irreducible factor of degree <= k/2,
    // tested via gcd(f, x^{p^d} - x) = 1 for d = 1..k/2.
    let mut xq = vec![0, 1]; // x
    for _d in 1..=k / 2 {
        xq = poly_pow_p_mod(f, &xq, coeffs);
        let mut diff = xq.clone();
        // subtract x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = f.sub(diff[1], 1);
        trim(&mut diff);
        if !poly_gcd_is_one(f, &diff, coeffs) {
            return false;
        }
    }
    true
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_mod(f: &FieldCtx, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    let deg_m = m.len() - 1;
    for i in (deg_m..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..deg_m {
            prod[i - deg_m + j] = f.sub(prod[i - deg_m + j], f.mul(c, m[j]));
        }
    }
    prod.truncate(deg_m);
    trim(&mut prod);
    prod
}

fn poly_pow_p_mod(f: &FieldCtx, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut e = f.prime();
    let mut base = a.to_vec();
    let mut acc = vec![1];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(f, &acc, &base, m);
        }
        base = poly_mul_mod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

fn poly_gcd_is_one(f: &FieldCtx, a: &[u64], m: &[u64]) -> bool {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let rem = poly_rem(f, &r0, &r1);
        r0 = r1;
        r1 = rem;
    }
    r0.len() == 1
}

fn poly_rem(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - db;
        if c != 0 {
            for j in 0..=db {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, b[j]));
            }
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    trim(&mut r);
    r
}
