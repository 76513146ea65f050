use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{is_prime, modp, monic_polys, prime_divisors, FpPoly};
use super::ScalarError;

/// Which denominators a subring of `Q` admits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Localization {
    /// `Z[1/n]` for `n` the product of these primes; empty means `Z`.
    Primes(BTreeSet<u64>),
    /// All of `Q`.
    All,
}

impl Localization {
    pub fn integers() -> Self {
        Localization::Primes(BTreeSet::new())
    }

    /// `Z[1/n]`: invert the prime divisors of `n`.
    pub fn inverting(n: u64) -> Self {
        Localization::Primes(prime_divisors(n).into_iter().collect())
    }

    /// Whether the integer `d` is a unit, i.e. all its prime factors are inverted.
    pub fn is_unit(&self, d: &BigInt) -> bool {
        if d.is_zero() {
            return false;
        }
        match self {
            Localization::All => true,
            Localization::Primes(ps) => {
                let mut rest = d.abs();
                for &p in ps {
                    let p = BigInt::from(p);
                    while (&rest % &p).is_zero() {
                        rest /= &p;
                    }
                }
                rest.is_one()
            }
        }
    }

    pub fn inverts(&self, p: u64) -> bool {
        match self {
            Localization::All => true,
            Localization::Primes(ps) => ps.contains(&p),
        }
    }
}

/// Membership of a reduced fraction in a localization of `Z`.
pub fn in_localization(q: &BigRational, inverted: &Localization) -> bool {
    inverted.is_unit(q.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    PrimeField { p: u64 },
    /// `F_p[t]/(modulus)` with a monic irreducible modulus of degree `k`.
    ExtensionField { p: u64, k: usize, modulus: FpPoly },
    Rationals(Localization),
}

/// A coefficient ring. Cheap to clone; compare by value.
#[derive(Clone)]
pub struct ScalarRing(Arc<RingKind>);

impl PartialEq for ScalarRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ScalarRing {}

impl Hash for ScalarRing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Raw canonical representative of a scalar. Meaningful only together with
/// the ring that produced it; matrices store one ring and many `Elem`s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Residue in `[0, p)`.
    Fp(u64),
    /// Coefficients low-to-high, exactly `k` of them.
    Ext(Vec<u64>),
    /// Reduced fraction, positive denominator.
    Q(BigRational),
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(ScalarRing(Arc::new(RingKind::PrimeField { p })))
    }

    pub fn integers() -> Self {
        Self::rationals(Localization::integers())
    }

    pub fn rationals_all() -> Self {
        Self::rationals(Localization::All)
    }

    /// `Z[1/n]`.
    pub fn localization(n: u64) -> Self {
        Self::rationals(Localization::inverting(n))
    }

    pub fn rationals(loc: Localization) -> Self {
        ScalarRing(Arc::new(RingKind::Rationals(loc)))
    }

    /// `F_p[t]/(modulus)`; the modulus is checked for being monic irreducible.
    pub fn extension_with_modulus(modulus: FpPoly) -> Result<Self, ScalarError> {
        let p = modulus.modulus();
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        if !modulus.is_monic() || !modulus.is_irreducible() {
            return Err(ScalarError::BadModulus(modulus.to_string()));
        }
        let k = modulus.degree().unwrap_or(0);
        if k == 1 {
            return Self::prime_field(p);
        }
        Ok(ScalarRing(Arc::new(RingKind::ExtensionField { p, k, modulus })))
    }

    /// `F_{p^k}` with the lexicographically least monic irreducible modulus
    /// (coefficients compared low-to-high). `k = 1` gives the prime field.
    pub fn build_extension(p: u64, k: usize) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        if k == 0 {
            return Err(ScalarError::BadDegree(k));
        }
        if k == 1 {
            return Self::prime_field(p);
        }
        let modulus = monic_polys(p, k)
            .find(|f| f.is_irreducible())
            .expect("irreducible polynomials exist in every degree");
        Ok(ScalarRing(Arc::new(RingKind::ExtensionField { p, k, modulus })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn is_field(&self) -> bool {
        !matches!(&*self.0, RingKind::Rationals(Localization::Primes(_)))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, RingKind::Rationals(_))
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            RingKind::PrimeField { p } | RingKind::ExtensionField { p, .. } => *p,
            RingKind::Rationals(_) => 0,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            RingKind::PrimeField { p } => Some(*p),
            RingKind::ExtensionField { p, k, .. } => p.checked_pow(*k as u32),
            RingKind::Rationals(_) => None,
        }
    }

    /// Degree over the prime field (1 for `F_p`, 0 for subrings of `Q`).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            RingKind::PrimeField { .. } => 1,
            RingKind::ExtensionField { k, .. } => *k,
            RingKind::Rationals(_) => 0,
        }
    }

    pub fn extension_modulus(&self) -> Option<&FpPoly> {
        match &*self.0 {
            RingKind::ExtensionField { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn localization_of(&self) -> Option<&Localization> {
        match &*self.0 {
            RingKind::Rationals(l) => Some(l),
            _ => None,
        }
    }

    /// `Q` for subrings of `Q`; the ring itself for fields.
    pub fn fraction_field(&self) -> ScalarRing {
        match &*self.0 {
            RingKind::Rationals(Localization::Primes(_)) => ScalarRing::rationals_all(),
            _ => self.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            RingKind::PrimeField { .. } => Elem::Fp(0),
            RingKind::ExtensionField { k, .. } => Elem::Ext(vec![0; *k]),
            RingKind::Rationals(_) => Elem::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &*self.0 {
            RingKind::PrimeField { p } => Elem::Fp(modp::from_i64(v, *p)),
            RingKind::ExtensionField { p, k, .. } => {
                let mut c = vec![0; *k];
                c[0] = modp::from_i64(v, *p);
                Elem::Ext(c)
            }
            RingKind::Rationals(_) => Elem::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Embeds a prime-field residue (only for rings of that characteristic).
    pub fn from_residue(&self, r: u64) -> Elem {
        match &*self.0 {
            RingKind::PrimeField { p } => Elem::Fp(r % p),
            RingKind::ExtensionField { p, k, .. } => {
                let mut c = vec![0; *k];
                c[0] = r % p;
                Elem::Ext(c)
            }
            RingKind::Rationals(_) => Elem::Q(BigRational::from_integer(BigInt::from(r))),
        }
    }

    /// Extension element from a coefficient list (low-to-high, reduced mod the modulus).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elem {
        match &*self.0 {
            RingKind::PrimeField { p } => {
                Elem::Fp(FpPoly::new(*p, coeffs.to_vec()).coeff(0))
            }
            RingKind::ExtensionField { p, k, modulus } => {
                let r = FpPoly::new(*p, coeffs.to_vec()).rem(modulus);
                Elem::Ext((0..*k).map(|i| r.coeff(i)).collect())
            }
            RingKind::Rationals(_) => panic!("coefficient lists only describe finite-field elements"),
        }
    }

    pub fn from_rational(&self, q: BigRational) -> Result<Elem, ScalarError> {
        match &*self.0 {
            RingKind::Rationals(loc) => {
                if in_localization(&q, loc) {
                    Ok(Elem::Q(q))
                } else {
                    Err(ScalarError::NotInRing(q.to_string(), self.to_string()))
                }
            }
            _ => {
                let p = self.characteristic();
                let pb = BigInt::from(p);
                let den = q.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(ScalarError::NotInRing(q.to_string(), self.to_string()));
                }
                let num = residue(q.numer(), p);
                let den = residue(q.denom(), p);
                Ok(self.from_residue(modp::mul(num, modp::inv(den, p), p)))
            }
        }
    }

    /// Whether `e` is a canonical representative of an element of this ring.
    pub fn contains(&self, e: &Elem) -> bool {
        match (&*self.0, e) {
            (RingKind::PrimeField { p }, Elem::Fp(r)) => r < p,
            (RingKind::ExtensionField { p, k, .. }, Elem::Ext(c)) => {
                c.len() == *k && c.iter().all(|x| x < p)
            }
            (RingKind::Rationals(loc), Elem::Q(q)) => in_localization(q, loc),
            _ => false,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Fp(r) => *r == 0,
            Elem::Ext(c) => c.iter().all(|&x| x == 0),
            Elem::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (RingKind::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(modp::add(*x, *y, *p)),
            (RingKind::ExtensionField { p, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(a, b)| modp::add(*a, *b, *p)).collect())
            }
            (RingKind::Rationals(_), Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            _ => panic!("element does not belong to {}", self),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (RingKind::PrimeField { p }, Elem::Fp(x)) => Elem::Fp(modp::sub(0, *x, *p)),
            (RingKind::ExtensionField { p, .. }, Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|a| modp::sub(0, *a, *p)).collect())
            }
            (RingKind::Rationals(_), Elem::Q(x)) => Elem::Q(-x),
            _ => panic!("element does not belong to {}", self),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (RingKind::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(modp::sub(*x, *y, *p)),
            (RingKind::Rationals(_), Elem::Q(x), Elem::Q(y)) => Elem::Q(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (RingKind::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(modp::mul(*x, *y, *p)),
            (RingKind::ExtensionField { p, k, modulus }, Elem::Ext(x), Elem::Ext(y)) => {
                let prod = FpPoly::new(*p, x.clone())
                    .mul(&FpPoly::new(*p, y.clone()))
                    .rem(modulus);
                Elem::Ext((0..*k).map(|i| prod.coeff(i)).collect())
            }
            (RingKind::Rationals(_), Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            _ => panic!("element does not belong to {}", self),
        }
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (RingKind::Rationals(loc), Elem::Q(q)) => !q.is_zero() && loc.is_unit(q.numer()),
            _ => !self.is_zero(a),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, ScalarError> {
        if self.is_zero(a) {
            return Err(ScalarError::DivisionByZero);
        }
        match (&*self.0, a) {
            (RingKind::PrimeField { p }, Elem::Fp(x)) => Ok(Elem::Fp(modp::inv(*x, *p))),
            (RingKind::ExtensionField { p, k, modulus }, Elem::Ext(x)) => {
                let inv = FpPoly::new(*p, x.clone())
                    .inv_mod(modulus)
                    .expect("nonzero elements of a field are invertible");
                Ok(Elem::Ext((0..*k).map(|i| inv.coeff(i)).collect()))
            }
            (RingKind::Rationals(loc), Elem::Q(q)) => {
                if loc.is_unit(q.numer()) {
                    Ok(Elem::Q(q.recip()))
                } else {
                    Err(ScalarError::NonInvertible(q.to_string(), self.to_string()))
                }
            }
            _ => panic!("element does not belong to {}", self),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// All elements of a finite field, in canonical (lexicographic) order.
    pub fn elements(&self) -> Vec<Elem> {
        match &*self.0 {
            RingKind::PrimeField { p } => (0..*p).map(Elem::Fp).collect(),
            RingKind::ExtensionField { p, k, .. } => {
                let total = p.pow(*k as u32);
                (0..total)
                    .map(|mut idx| {
                        let mut c = vec![0u64; *k];
                        for slot in (0..*k).rev() {
                            c[slot] = idx % p;
                            idx /= p;
                        }
                        Elem::Ext(c)
                    })
                    .collect()
            }
            RingKind::Rationals(_) => panic!("{} is infinite", self),
        }
    }

    /// Prime-field residue of an element of `F_p` or of the prime subfield
    /// of `F_{p^k}`.
    pub fn as_residue(&self, e: &Elem) -> Option<u64> {
        match e {
            Elem::Fp(r) => Some(*r),
            Elem::Ext(c) if c[1..].iter().all(|&x| x == 0) => Some(c[0]),
            _ => None,
        }
    }

    pub fn format(&self, e: &Elem) -> String {
        match e {
            Elem::Fp(r) => r.to_string(),
            Elem::Ext(c) => {
                let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]@{}", inner.join(","), self)
            }
            Elem::Q(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

pub(crate) fn residue(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingKind::PrimeField { p } => write!(f, "GF({p})"),
            RingKind::ExtensionField { p, k, .. } => write!(f, "GF({p}^{k})"),
            RingKind::Rationals(Localization::All) => write!(f, "Q"),
            RingKind::Rationals(Localization::Primes(ps)) if ps.is_empty() => write!(f, "Z"),
            RingKind::Rationals(Localization::Primes(ps)) => {
                let n: u64 = ps.iter().product();
                write!(f, "Z[1/{n}]")
            }
        }
    }
}
