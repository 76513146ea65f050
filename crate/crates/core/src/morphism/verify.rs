use rayon::prelude::*;
use serde::Serialize;

use crate::matrix::{entrywise_hom, SquareMatrix};
use crate::scalars::Elem;

use super::builder::Morphism;
use super::MorphismError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Zero,
    One,
    Scalar,
    Sum,
    Product,
    NotClosed,
}

/// First failing check; the least `(x, y)` index pair among pair failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub elements: usize,
    pub commuting_pairs: usize,
    pub scalar_checks: usize,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `φ(0) = 0`, `φ(1) = 1`, `φ(λx) = λφ(x)`, and additivity and
/// multiplicativity on every commuting ordered pair of the domain.
pub fn verify_morphism(phi: &Morphism) -> VerificationReport {
    let dom = phi.domain();
    let k = phi.target();
    let ring = dom.ring();
    let p = ring.characteristic();
    let n = dom.n();
    let fail = |kind, x, y| Some(Failure { kind, x, y });
    let pairs = dom.commuting_pairs();
    let mut report = VerificationReport {
        elements: dom.len(),
        commuting_pairs: pairs.len(),
        scalar_checks: 0,
        failure: None,
    };
    let zero = dom.position(&SquareMatrix::zero(ring, n));
    let one = dom.position(&SquareMatrix::identity(ring, n));
    report.failure = match (zero, one) {
        (Some(z), _) if !k.is_zero(&phi.values()[z]) => fail(FailureKind::Zero, z, z),
        (_, Some(o)) if !k.is_one(&phi.values()[o]) => fail(FailureKind::One, o, o),
        _ => None,
    };
    if report.failure.is_some() {
        return report;
    }
    let scalar = (0..dom.len()).into_par_iter().find_map_first(|i| {
        let x = &dom.elements()[i];
        (0..p).find_map(|lambda| {
            let lx = x.scale(&ring.from_residue(lambda));
            match dom.position(&lx) {
                None => fail(FailureKind::NotClosed, i, lambda as usize),
                Some(j) if phi.values()[j] != k.mul(&k.from_residue(lambda), &phi.values()[i]) => {
                    fail(FailureKind::Scalar, i, lambda as usize)
                }
                Some(_) => None,
            }
        })
    });
    report.scalar_checks = dom.len() * p as usize;
    if scalar.is_some() {
        report.failure = scalar;
        return report;
    }
    let v = phi.values();
    report.failure = pairs.par_iter().find_map_first(|&[i, j, s, m]| {
        let (i, j) = (i as usize, j as usize);
        if s == u32::MAX || m == u32::MAX {
            return fail(FailureKind::NotClosed, i, j);
        }
        if v[s as usize] != k.add(&v[i], &v[j]) {
            return fail(FailureKind::Sum, i, j);
        }
        if v[m as usize] != k.mul(&v[i], &v[j]) {
            return fail(FailureKind::Product, i, j);
        }
        None
    });
    report
}

/// `M_3(Z)_sym → M_3(F_p)_sym → F_{p^6}`: reduction followed by `φ`.
#[derive(Debug, Clone)]
pub struct IntegerComposite {
    phi: Morphism,
}

impl IntegerComposite {
    /// `phi` must be defined on all of `M_n(F_p)_sym`.
    pub fn new(phi: Morphism) -> Result<Self, MorphismError> {
        let dom = phi.domain();
        let expected = dom.ring().characteristic().pow((dom.n() * (dom.n() + 1) / 2) as u32);
        if dom.len() as u64 != expected || !dom.elements().iter().all(SquareMatrix::is_symmetric) {
            return Err(MorphismError::ClosureViolation("domain is not the full symmetric matrix algebra".into()));
        }
        Ok(IntegerComposite { phi })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.phi
    }

    pub fn eval(&self, x: &SquareMatrix) -> Result<Elem, MorphismError> {
        if !x.is_symmetric() || x.n() != self.phi.domain().n() {
            return Err(MorphismError::ClosureViolation("input is not a symmetric matrix of the domain size".into()));
        }
        let reduced = entrywise_hom(x, self.phi.domain().ring())?;
        Ok(self.phi.value(&reduced).expect("full symmetric domain").clone())
    }

    /// Whether `x` lies in `φ⁻¹(0)`.
    pub fn kernel_contains(&self, x: &SquareMatrix) -> Result<bool, MorphismError> {
        Ok(self.phi.target().is_zero(&self.eval(x)?))
    }

    /// Additivity and multiplicativity on one commuting pair.
    pub fn check_pair(&self, x: &SquareMatrix, y: &SquareMatrix) -> Result<bool, MorphismError> {
        if !x.commutes_with(y) {
            return Err(MorphismError::ClosureViolation("pair does not commute".into()));
        }
        let k = self.phi.target();
        let (fx, fy) = (self.eval(x)?, self.eval(y)?);
        Ok(self.eval(&x.add(y))? == k.add(&fx, &fy) && self.eval(&x.mul(y))? == k.mul(&fx, &fy))
    }
}
