use crate::scalars::{Elem, RingKind, ScalarRing};

use super::{ColumnVector, MatrixError, SquareMatrix};

/// `P_v = (v^T v)^{-1} v v^T`, the symmetric idempotent with range `Span(v)`.
pub fn project_vector(v: &ColumnVector) -> Result<SquareMatrix, MatrixError> {
    if v.is_zero() {
        return Err(MatrixError::ZeroVector);
    }
    let r = v.ring();
    let norm = v.dot(v);
    if r.is_zero(&norm) {
        return Err(MatrixError::IsotropicVector);
    }
    let inv = r.inv(&norm)?;
    Ok(v.outer(v).scale(&inv))
}

/// The idempotent with the given range and kernel: `U diag(1..1, 0..0) U^{-1}`
/// for `U = [range | kernel]`, which must be invertible over the ring.
pub fn idempotent_from_spaces(
    range: &[ColumnVector],
    kernel: &[ColumnVector],
) -> Result<SquareMatrix, MatrixError> {
    let cols: Vec<&ColumnVector> = range.iter().chain(kernel).collect();
    let first = cols.first().ok_or(MatrixError::ShapeMismatch(0, 1))?;
    let (ring, n) = (first.ring().clone(), first.n());
    if cols.len() != n {
        return Err(MatrixError::ShapeMismatch(cols.len(), n));
    }
    if let Some(bad) = cols.iter().find(|c| c.n() != n) {
        return Err(MatrixError::ShapeMismatch(bad.n(), n));
    }
    if let Some(bad) = cols.iter().find(|c| *c.ring() != ring) {
        return Err(MatrixError::RingMismatch(bad.ring().to_string(), ring.to_string()));
    }
    let u = SquareMatrix::from_fn(&ring, n, |i, j| cols[j].coords()[i].clone());
    let det = u.determinant();
    if !ring.is_unit(&det) {
        return Err(MatrixError::NotABasis(ring.to_string(), ring.format(&det)));
    }
    let u_inv = u.inverse()?;
    let d: Vec<Elem> = (0..n).map(|i| if i < range.len() { ring.one() } else { ring.zero() }).collect();
    Ok(u.mul(&SquareMatrix::diagonal(&ring, &d)).mul(&u_inv))
}

/// Rank-one idempotent with range `Span(u)` and kernel `Span(v, w)`.
pub fn idempotent_from_basis(
    u: &ColumnVector,
    v: &ColumnVector,
    w: &ColumnVector,
) -> Result<SquareMatrix, MatrixError> {
    idempotent_from_spaces(std::slice::from_ref(u), &[v.clone(), w.clone()])
}

/// Deletes row and column `i` of a matrix supported on `(1 - E_ii) M (1 - E_ii)`.
pub fn corner_compress(a: &SquareMatrix, i: usize) -> Result<SquareMatrix, MatrixError> {
    let (n, r) = (a.n(), a.ring());
    if i >= n || n < 2 {
        return Err(MatrixError::NotInCorner(i));
    }
    if (0..n).any(|k| !r.is_zero(a.get(i, k)) || !r.is_zero(a.get(k, i))) {
        return Err(MatrixError::NotInCorner(i));
    }
    let skip = |k: usize| if k < i { k } else { k + 1 };
    Ok(SquareMatrix::from_fn(r, n - 1, |x, y| a.get(skip(x), skip(y)).clone()))
}

/// Inverse of [`corner_compress`]: inserts a zero row and column at `i`.
pub fn corner_embed(a: &SquareMatrix, i: usize) -> SquareMatrix {
    let (n, r) = (a.n(), a.ring());
    assert!(i <= n, "corner index out of range");
    SquareMatrix::from_fn(r, n + 1, |x, y| {
        if x == i || y == i {
            return r.zero();
        }
        let back = |k: usize| if k < i { k } else { k - 1 };
        a.get(back(x), back(y)).clone()
    })
}

/// Applies the canonical ring map entrywise: reduction of a localization of
/// `Z` modulo `p`, inclusion between localizations, or inclusion of `F_p`
/// into an extension of the same characteristic.
pub fn entrywise_hom(a: &SquareMatrix, target: &ScalarRing) -> Result<SquareMatrix, MatrixError> {
    let source = a.ring();
    let mismatch = || MatrixError::RingMismatch(source.to_string(), target.to_string());
    let mut out = Vec::with_capacity(a.entries().len());
    match (source.kind(), target.kind()) {
        (RingKind::Rationals(_), RingKind::Rationals(tloc)) => {
            for e in a.entries() {
                let Elem::Q(q) = e else { unreachable!() };
                if !crate::scalars::in_localization(q, tloc) {
                    return Err(MatrixError::DenominatorNotInvertible(source.format(e), target.to_string()));
                }
                out.push(e.clone());
            }
        }
        (RingKind::Rationals(loc), _) => {
            let p = target.characteristic();
            // a ring map Z[S^-1] -> F_p exists only when p is not inverted
            if loc.inverts(p) {
                return Err(MatrixError::DenominatorNotInvertible(format!("1/{p}"), target.to_string()));
            }
            for e in a.entries() {
                out.push(target.from_rational(as_q(e)).map_err(|_| {
                    MatrixError::DenominatorNotInvertible(source.format(e), target.to_string())
                })?);
            }
        }
        (RingKind::PrimeField { p }, _) if target.characteristic() == *p => {
            out.extend(a.entries().iter().map(|e| match e {
                Elem::Fp(r) => target.from_residue(*r),
                _ => unreachable!(),
            }));
        }
        _ if source == target => return Ok(a.clone()),
        _ => return Err(mismatch()),
    }
    Ok(SquareMatrix::from_parts(target.clone(), a.n(), out))
}

fn as_q(e: &Elem) -> num_rational::BigRational {
    match e {
        Elem::Q(q) => q.clone(),
        _ => unreachable!("rational ring holds rational entries"),
    }
}

/// Permutation matrix sending `e_j` to `e_{perm[j]}`.
pub fn permutation_matrix(ring: &ScalarRing, perm: &[usize]) -> SquareMatrix {
    let n = perm.len();
    SquareMatrix::from_fn(ring, n, |i, j| if perm[j] == i { ring.one() } else { ring.zero() })
}
