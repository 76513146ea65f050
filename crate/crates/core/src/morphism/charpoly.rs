use crate::matrix::SquareMatrix;
use crate::scalars::poly::modp;
use crate::scalars::{FpPoly, ScalarRing};

/// Entries of a prime-field matrix as residues, row-major.
pub(crate) fn residues(x: &SquareMatrix) -> Vec<u64> {
    x.entries().iter().map(|e| x.ring().as_residue(e).expect("prime-field entry")).collect()
}

/// `det(tI - x)` by Berkowitz's division-free recursion.
pub fn characteristic_polynomial(x: &SquareMatrix) -> FpPoly {
    let p = x.ring().characteristic();
    let n = x.n();
    let a = residues(x);
    let rows: Vec<Vec<u64>> = (0..n).map(|i| a[i * n..(i + 1) * n].to_vec()).collect();
    let mut high_to_low = berkowitz(&rows, p);
    high_to_low.reverse();
    FpPoly::new(p, high_to_low)
}

fn berkowitz(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    if n == 1 {
        return vec![1, modp::sub(0, a[0][0], p)];
    }
    let m: Vec<Vec<u64>> = a[1..].iter().map(|r| r[1..].to_vec()).collect();
    let r: Vec<u64> = a[0][1..].to_vec();
    let mut col: Vec<u64> = a[1..].iter().map(|row| row[0]).collect();
    let inner = berkowitz(&m, p);
    // v = (1, -a11, -R C, -R M C, ..., -R M^{n-2} C)
    let mut v = vec![1, modp::sub(0, a[0][0], p)];
    for _ in 2..=n {
        let rc = r.iter().zip(&col).fold(0, |acc, (&x, &y)| modp::add(acc, modp::mul(x, y, p), p));
        v.push(modp::sub(0, rc, p));
        col = (0..n - 1)
            .map(|i| (0..n - 1).fold(0, |acc, j| modp::add(acc, modp::mul(m[i][j], col[j], p), p)))
            .collect();
    }
    (0..=n)
        .map(|i| (0..n).filter(|&j| j <= i).fold(0, |acc, j| modp::add(acc, modp::mul(v[i - j], inner[j], p), p)))
        .collect()
}

/// `f(x)` by Horner's rule; the constant term multiplies the identity.
pub fn eval_at_matrix(f: &FpPoly, x: &SquareMatrix) -> SquareMatrix {
    let ring: &ScalarRing = x.ring();
    let id = SquareMatrix::identity(ring, x.n());
    let mut acc = SquareMatrix::zero(ring, x.n());
    for &c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&id.scale(&ring.from_residue(c)));
    }
    acc
}

/// A representative of `f` modulo `annihilator` with zero constant term,
/// when `annihilator(0) != 0` or `f(0) = 0`.
pub fn without_constant(f: &FpPoly, annihilator: &FpPoly) -> FpPoly {
    let p = f.modulus();
    let (c, a0) = (f.coeff(0), annihilator.coeff(0));
    if c == 0 || a0 == 0 {
        return f.clone();
    }
    f.sub(&annihilator.scale(modp::mul(c, modp::inv(a0, p), p)))
}
