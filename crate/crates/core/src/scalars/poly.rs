//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored low-to-high and kept trimmed, so the zero
//! polynomial is the empty vector and every other polynomial has a nonzero
//! leading coefficient. These back the extension-field arithmetic, the
//! modulus search and the spectral machinery in the morphism builder.

use std::cmp::Ordering;
use std::fmt;

/// Modular helpers for residues in `[0, p)`.
pub(crate) mod modp {
    #[inline]
    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    #[inline]
    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `a` must be nonzero and `p` prime.
    pub fn inv(a: u64, p: u64) -> u64 {
        debug_assert!(a % p != 0);
        pow(a, p - 2, p)
    }

    pub fn from_i64(v: i64, p: u64) -> u64 {
        let r = (v as i128).rem_euclid(p as i128);
        r as u64
    }
}

/// A polynomial over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = FpPoly { p, coeffs };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// The monomial `t`.
    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    /// `t - a`
    pub fn linear_root(p: u64, a: u64) -> Self {
        FpPoly::new(p, vec![modp::sub(0, a % p, p), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = modp::inv(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| modp::mul(a, c, p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(p, (0..n).map(|i| modp::add(self.coeff(i), other.coeff(i), p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(p, (0..n).map(|i| modp::sub(self.coeff(i), other.coeff(i), p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = modp::add(out[i + j], modp::mul(a, b, p), p);
            }
        }
        FpPoly::new(p, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = modp::inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = modp::mul(rem[i], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = modp::sub(rem[k], modp::mul(c, d, p), p);
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = modp::inv(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse of `self` modulo `modulus`, if they are coprime.
    pub fn inv_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        if g.degree() == Some(0) {
            Some(s.rem(modulus))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| modp::mul(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, t: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| modp::add(modp::mul(acc, t, p), c, p))
    }

    /// Composition `self(inner(t))` reduced modulo `modulus`.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Self {
        let mut acc = FpPoly::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_mod(inner, modulus).add(&FpPoly::constant(self.p, c));
        }
        acc.rem(modulus)
    }

    /// Roots in `F_p`, ascending.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&a| self.eval(a) == 0).collect()
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let p = self.p as u128;
        let x = FpPoly::x(self.p);
        // t^(p^n) == t (mod f)
        let frob = |k: usize| -> FpPoly {
            let mut acc = x.clone();
            for _ in 0..k {
                acc = acc.pow_mod(p, &f);
            }
            acc
        };
        if frob(n).sub(&x).rem(&f) != FpPoly::zero(self.p) {
            return false;
        }
        for q in prime_divisors(n as u64) {
            let h = frob(n / q as usize).sub(&x);
            if f.gcd(&h).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Factorization into monic irreducibles with multiplicity, factors in
    /// ascending (degree, coefficient) order. Trial division; intended for
    /// the small degrees that characteristic polynomials of `n <= 5`
    /// matrices have.
    pub fn factor(&self) -> Vec<(FpPoly, usize)> {
        let mut rest = self.monic();
        let mut out: Vec<(FpPoly, usize)> = Vec::new();
        let mut d = 1;
        while let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
            // every factor of degree < d is gone, so a reducible remainder
            // would need a factor of degree in [d, deg/2]
            if 2 * d > deg {
                out.push((rest, 1));
                break;
            }
            for cand in monic_polys(self.p, d) {
                if !cand.divides(&rest) || !cand.is_irreducible() {
                    continue;
                }
                let mut mult = 0;
                while cand.divides(&rest) {
                    rest = rest.div_rem(&cand).0;
                    mult += 1;
                }
                out.push((cand, mult));
            }
            d += 1;
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> FpPoly {
        self.factor()
            .into_iter()
            .fold(FpPoly::one(self.p), |acc, (f, _)| acc.mul(&f))
    }
}

/// Orders by degree, then coefficients low-to-high.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// All monic polynomials of degree `d` over `F_p`, in lexicographic order of
/// their coefficient lists read low-to-high.
pub fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
    let total = p.pow(d as u32);
    (0..total).map(move |mut idx| {
        // c0 is the most significant digit so that iteration order is
        // lexicographic in (c0, c1, ..., c_{d-1}).
        let mut lower = vec![0u64; d];
        for slot in (0..d).rev() {
            lower[slot] = idx % p;
            idx /= p;
        }
        lower.push(1);
        FpPoly { p, coeffs: lower }
    })
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == vec![n]
}
