use crate::matrix::SquareMatrix;
use crate::scalars::poly::modp;
use crate::scalars::FpPoly;

use super::charpoly::{characteristic_polynomial, eval_at_matrix, without_constant};
use super::MorphismError;

/// `x = x_s + x_n` with both parts polynomials in `x` without constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanChevalleyPair {
    pub semisimple: SquareMatrix,
    pub nilpotent: SquareMatrix,
    pub semisimple_poly: FpPoly,
    pub nilpotent_poly: FpPoly,
}

impl JordanChevalleyPair {
    /// Recombination, commutation, nilpotency, semisimplicity, and the witness polynomials.
    pub fn holds_for(&self, x: &SquareMatrix) -> bool {
        let n = x.n() as u64;
        let radical = characteristic_polynomial(&self.semisimple).radical();
        self.semisimple.add(&self.nilpotent) == *x
            && self.semisimple.commutes_with(&self.nilpotent)
            && self.nilpotent.pow(n).is_zero()
            && eval_at_matrix(&radical, &self.semisimple).is_zero()
            && self.semisimple_poly.coeff(0) == 0
            && self.nilpotent_poly.coeff(0) == 0
            && eval_at_matrix(&self.semisimple_poly, x) == self.semisimple
            && eval_at_matrix(&self.nilpotent_poly, x) == self.nilpotent
    }
}

/// Newton iteration `S ← S - r(S)/r'(S)` in `F_p[t]/(χ)` on the squarefree
/// part `r` of the characteristic polynomial, starting from `S = t`.
pub fn jordan_chevalley(x: &SquareMatrix) -> JordanChevalleyPair {
    let p = x.ring().characteristic();
    let chi = characteristic_polynomial(x);
    let r = chi.radical();
    let dr = r.derivative();
    let mut s = FpPoly::x(p).rem(&chi);
    loop {
        let rs = r.compose_mod(&s, &chi);
        if rs.is_zero() {
            break;
        }
        let inv = dr.compose_mod(&s, &chi).inv_mod(&chi).expect("r'(S) is a unit modulo the characteristic polynomial");
        s = s.sub(&rs.mul_mod(&inv, &chi));
    }
    let semisimple_poly = without_constant(&s, &chi);
    let nilpotent_poly = FpPoly::x(p).sub(&semisimple_poly);
    let semisimple = eval_at_matrix(&semisimple_poly, x);
    let nilpotent = x.sub(&semisimple);
    JordanChevalleyPair { semisimple, nilpotent, semisimple_poly, nilpotent_poly }
}

/// Spectral data of a semisimple `x` over its prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralDecomposition {
    /// Distinct nonzero eigenvalues in `F_p`, ascending.
    pub eigenvalues: Vec<u64>,
    pub idempotents: Vec<SquareMatrix>,
    pub idempotent_polys: Vec<FpPoly>,
    /// `Σ t_i p_i`.
    pub diagonalizable: SquareMatrix,
    /// `x - Σ t_i p_i`; no nonzero eigenvalue in `F_p`.
    pub residual: SquareMatrix,
    /// Idempotent with the range and kernel of `x`.
    pub support: SquareMatrix,
    pub support_poly: FpPoly,
}

/// Eigenvalue idempotents by interpolation through the squarefree minimal polynomial.
pub fn spectral_parts(x: &SquareMatrix) -> Result<SpectralDecomposition, MorphismError> {
    let p = x.ring().characteristic();
    let mu = characteristic_polynomial(x).radical();
    if !eval_at_matrix(&mu, x).is_zero() {
        return Err(MorphismError::NotSemisimple(format!("{:?}", x.format_rows())));
    }
    let mut eigenvalues = Vec::new();
    let mut idempotents = Vec::new();
    let mut idempotent_polys = Vec::new();
    let mut diagonalizable = SquareMatrix::zero(x.ring(), x.n());
    for t in mu.roots().into_iter().filter(|&t| t != 0) {
        let (l, _) = mu.div_rem(&FpPoly::linear_root(p, t));
        let e = without_constant(&l.scale(modp::inv(l.eval(t), p)), &mu);
        let pi = eval_at_matrix(&e, x);
        diagonalizable = diagonalizable.add(&pi.scale(&x.ring().from_residue(t)));
        eigenvalues.push(t);
        idempotents.push(pi);
        idempotent_polys.push(e);
    }
    let support_poly = if mu.coeff(0) != 0 {
        without_constant(&FpPoly::one(p), &mu)
    } else {
        let (l0, _) = mu.div_rem(&FpPoly::x(p));
        FpPoly::one(p).sub(&l0.scale(modp::inv(l0.eval(0), p)))
    };
    let support = eval_at_matrix(&support_poly, x);
    Ok(SpectralDecomposition {
        eigenvalues,
        idempotents,
        idempotent_polys,
        residual: x.sub(&diagonalizable),
        diagonalizable,
        support,
        support_poly,
    })
}
