//! Exact coefficient rings: `F_p`, `F_{p^k}`, and localizations of `Z` inside `Q`.

mod embedding;
mod literal;
pub mod poly;
mod ring;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use embedding::{embed_subfield, eval_in, least_root, FieldEmbedding};
pub use literal::{parse_ring, parse_scalar};
pub use poly::FpPoly;
pub use ring::{in_localization, Elem, Localization, RingKind, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible in {1}")]
    NonInvertible(String, String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported extension degree {0}")]
    BadDegree(usize),
    #[error("{0} is not a monic irreducible modulus")]
    BadModulus(String),
    #[error("{0} does not lie in {1}")]
    NotInRing(String, String),
    #[error("no root of the {from} modulus in {target}")]
    NoRoot { from: String, target: String },
    #[error("{0}")]
    Parse(String),
}

/// An element bundled with its ring; arithmetic checks that rings agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarValue {
    ring: ScalarRing,
    elem: Elem,
}

impl ScalarValue {
    /// Fails when `elem` is not a canonical member of `ring`.
    pub fn new(ring: ScalarRing, elem: Elem) -> Result<Self, ScalarError> {
        if !ring.contains(&elem) {
            return Err(ScalarError::NotInRing(format!("{elem:?}"), ring.to_string()));
        }
        Ok(ScalarValue { ring, elem })
    }

    pub fn from_i64(ring: &ScalarRing, v: i64) -> Self {
        ScalarValue { ring: ring.clone(), elem: ring.from_i64(v) }
    }

    pub fn from_rational(ring: &ScalarRing, q: BigRational) -> Result<Self, ScalarError> {
        Ok(ScalarValue { ring: ring.clone(), elem: ring.from_rational(q)? })
    }

    pub fn parse(s: &str, ring: &ScalarRing) -> Result<Self, ScalarError> {
        Ok(ScalarValue { ring: ring.clone(), elem: parse_scalar(s, ring)? })
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.elem)
    }

    fn same_ring(&self, other: &Self) -> Result<(), ScalarError> {
        if self.ring != other.ring {
            return Err(ScalarError::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    fn wrap(&self, elem: Elem) -> Self {
        ScalarValue { ring: self.ring.clone(), elem }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.add(&self.elem, &other.elem)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.sub(&self.elem, &other.elem)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.mul(&self.elem, &other.elem)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.div(&self.elem, &other.elem)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.ring.neg(&self.elem))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Ok(self.wrap(self.ring.inv(&self.elem)?))
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.elem))
    }
}

impl fmt::Debug for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_field_facts() {
        let f5 = ScalarRing::prime_field(5).unwrap();
        let two = ScalarValue::from_i64(&f5, 2);
        assert_eq!(two.inv().unwrap(), ScalarValue::from_i64(&f5, 3));
        let f2 = ScalarRing::prime_field(2).unwrap();
        let one = ScalarValue::from_i64(&f2, 1);
        assert!(one.add(&one).unwrap().is_zero());
    }

    #[test]
    fn localization_membership() {
        let z30 = ScalarRing::localization(30);
        let sixth = ScalarValue::from_rational(&z30, q(1, 6)).unwrap();
        let five = ScalarValue::from_i64(&z30, 5);
        assert_eq!(sixth.mul(&five).unwrap().to_string(), "5/6");
        assert!(in_localization(&q(1, 30), &Localization::inverting(30)));
        assert!(in_localization(&q(7, 1), &Localization::integers()));
        assert!(!in_localization(&q(1, 7), &Localization::inverting(30)));
    }

    #[test]
    fn integer_division_errors() {
        let z = ScalarRing::integers();
        let one = ScalarValue::from_i64(&z, 1);
        let two = ScalarValue::from_i64(&z, 2);
        assert!(matches!(one.div(&two), Err(ScalarError::NonInvertible(..))));
        let zero = ScalarValue::from_i64(&z, 0);
        assert_eq!(one.div(&zero), Err(ScalarError::DivisionByZero));
        let f3 = ScalarRing::prime_field(3).unwrap();
        assert!(matches!(
            one.add(&ScalarValue::from_i64(&f3, 1)),
            Err(ScalarError::RingMismatch(..))
        ));
    }

    #[test]
    fn extension_orders() {
        assert_eq!(ScalarRing::build_extension(2, 1).unwrap(), ScalarRing::prime_field(2).unwrap());
        assert_eq!(ScalarRing::build_extension(2, 6).unwrap().order(), Some(64));
        assert_eq!(ScalarRing::build_extension(3, 6).unwrap().order(), Some(729));
        assert_eq!(ScalarRing::build_extension(4, 2), Err(ScalarError::NotPrime(4)));
    }
}
