use super::poly::FpPoly;
use super::ring::{Elem, RingKind, ScalarRing};
use super::ScalarError;

/// A ring homomorphism between finite fields of the same characteristic,
/// determined by where the source generator goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldEmbedding {
    source: ScalarRing,
    target: ScalarRing,
    /// Image of `t` (or of `1` when the source is a prime field).
    image: Elem,
}

/// Evaluates an `F_p[t]` polynomial at an element of a field of characteristic `p`.
pub fn eval_in(f: &FpPoly, field: &ScalarRing, at: &Elem) -> Elem {
    let mut acc = field.zero();
    for &c in f.coeffs().iter().rev() {
        acc = field.add(&field.mul(&acc, at), &field.from_residue(c));
    }
    acc
}

/// The least root (in canonical element order) of `f` inside a finite field.
pub fn least_root(f: &FpPoly, field: &ScalarRing) -> Option<Elem> {
    field
        .elements()
        .into_iter()
        .find(|e| field.is_zero(&eval_in(f, field, e)))
}

impl FieldEmbedding {
    /// Embeds `F_p[t]/(modulus)` into `target`, sending `t` to the least root.
    pub fn from_modulus(modulus: &FpPoly, target: &ScalarRing) -> Result<Self, ScalarError> {
        let source = ScalarRing::extension_with_modulus(modulus.clone())?;
        Self::into_target(source, target)
    }

    fn into_target(source: ScalarRing, target: &ScalarRing) -> Result<Self, ScalarError> {
        if source.characteristic() != target.characteristic() || !target.is_finite() {
            return Err(ScalarError::RingMismatch(source.to_string(), target.to_string()));
        }
        let image = match source.kind() {
            RingKind::PrimeField { .. } => target.one(),
            RingKind::ExtensionField { modulus, .. } => {
                least_root(modulus, target).ok_or(ScalarError::NoRoot {
                    from: source.to_string(),
                    target: target.to_string(),
                })?
            }
            RingKind::Rationals(_) => unreachable!("finite source checked above"),
        };
        Ok(FieldEmbedding { source, target: target.clone(), image })
    }

    pub fn source(&self) -> &ScalarRing {
        &self.source
    }

    pub fn target(&self) -> &ScalarRing {
        &self.target
    }

    pub fn generator_image(&self) -> &Elem {
        &self.image
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        match e {
            Elem::Fp(r) => self.target.from_residue(*r),
            Elem::Ext(c) => {
                let p = self.source.characteristic();
                eval_in(&FpPoly::new(p, c.clone()), &self.target, &self.image)
            }
            Elem::Q(_) => panic!("rational element in a finite-field embedding"),
        }
    }

    /// The image of the generator is a root of the source modulus.
    pub fn is_valid(&self) -> bool {
        match self.source.extension_modulus() {
            Some(m) => self.target.is_zero(&eval_in(m, &self.target, &self.image)),
            None => self.target.is_one(&self.image),
        }
    }
}

/// `F_{p^d} -> F_{p^k}` between the canonical fields of those orders.
pub fn embed_subfield(d: usize, k: usize, p: u64) -> Result<FieldEmbedding, ScalarError> {
    if d == 0 || k % d != 0 {
        return Err(ScalarError::BadDegree(d));
    }
    let source = ScalarRing::build_extension(p, d)?;
    let target = ScalarRing::build_extension(p, k)?;
    FieldEmbedding::into_target(source, &target)
}
