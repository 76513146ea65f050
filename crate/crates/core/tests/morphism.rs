use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use kscolor::matrix::SquareMatrix;
use kscolor::morphism::*;
use kscolor::partial_boolean::PartialBooleanAlgebra;
use kscolor::scalars::{FpPoly, ScalarRing};
use kscolor::solver::{all_colorings, Color};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(p: u64) -> ScalarRing {
    ScalarRing::prime_field(p).unwrap()
}

fn random_matrix(ring: &ScalarRing, rng: &mut ChaCha8Rng) -> SquareMatrix {
    let p = ring.characteristic();
    SquareMatrix::from_fn(ring, 3, |_, _| ring.from_residue(rng.gen_range(0..p)))
}

/// Oracle: `s` is semisimple over `F_q` iff `s^(q^m) = s` for some `m`;
/// eigenvalues of a 3x3 matrix lie in extensions of degree at most 3, so `m <= 6` suffices.
fn semisimple_by_frobenius(s: &SquareMatrix) -> bool {
    let q = s.ring().characteristic();
    let mut power = s.clone();
    for _ in 1..=6 {
        power = power.pow(q);
        if power == *s {
            return true;
        }
    }
    false
}

#[test]
fn jordan_chevalley_is_the_unique_decomposition_over_f2() {
    let f2 = f(2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let all: Vec<SquareMatrix> = (0u32..512)
        .map(|m| SquareMatrix::from_fn(&f2, 3, |i, j| f2.from_residue((m >> (3 * i + j) & 1) as u64)))
        .collect();
    for _ in 0..12 {
        let x = random_matrix(&f2, &mut rng);
        let candidates: Vec<&SquareMatrix> = all
            .iter()
            .filter(|s| {
                let n = x.sub(s);
                n.pow(3).is_zero() && s.commutes_with(&n) && semisimple_by_frobenius(s)
            })
            .collect();
        assert_eq!(candidates.len(), 1);
        let jc = jordan_chevalley(&x);
        assert_eq!(&jc.semisimple, candidates[0]);
        assert!(jc.holds_for(&x));
    }
    let x = SquareMatrix::unit(&f2, 3, 0, 0).add(&SquareMatrix::unit(&f2, 3, 0, 1));
    let jc = jordan_chevalley(&x);
    assert!(jc.holds_for(&x) && jc.nilpotent.mul(&jc.nilpotent).is_zero());
}

#[test]
fn characteristic_polynomial_matches_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [2u64, 3, 5, 7] {
        let ring = f(p);
        for _ in 0..20 {
            let x = random_matrix(&ring, &mut rng);
            let chi = characteristic_polynomial(&x);
            assert_eq!(chi.degree(), Some(3));
            for t in 0..p {
                let lhs = SquareMatrix::identity(&ring, 3).scale(&ring.from_residue(t)).sub(&x).determinant();
                assert_eq!(ring.as_residue(&lhs), Some(chi.eval(t)));
            }
            assert!(eval_at_matrix(&chi, &x).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn jordan_chevalley_parts_commute_with_commutants(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let ring = f(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_matrix(&ring, &mut rng);
        let jc = jordan_chevalley(&x);
        prop_assert!(jc.holds_for(&x));
        // polynomials in x commute with x; so must the parts
        let c = eval_at_matrix(&FpPoly::new(p, vec![rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p)]), &x);
        prop_assert!(jc.semisimple.commutes_with(&c) && jc.nilpotent.commutes_with(&c));
        let sp = spectral_parts(&jc.semisimple).unwrap();
        for (a, pa) in sp.idempotents.iter().enumerate() {
            prop_assert!(pa.is_idempotent());
            prop_assert!(sp.support.mul(pa) == *pa);
            for pb in &sp.idempotents[a + 1..] {
                prop_assert!(pa.mul(pb).is_zero());
            }
        }
        let rest = characteristic_polynomial(&sp.residual).roots();
        prop_assert!(rest.iter().all(|&t| t == 0));
        prop_assert!(sp.support.is_idempotent() && sp.support.mul(&jc.semisimple) == jc.semisimple);
        prop_assert_eq!(sp.support.rank(), jc.semisimple.rank());
    }
}

#[test]
fn spectral_examples() {
    // companion matrix of t^3 + t + 1, irreducible over F2
    let f2 = f(2);
    assert!(FpPoly::new(2, vec![1, 1, 0, 1]).is_irreducible());
    let c = SquareMatrix::from_i64_rows(&f2, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]);
    let s = spectral_parts(&c).unwrap();
    assert!(s.eigenvalues.is_empty() && s.diagonalizable.is_zero() && s.residual == c);
    assert!(s.support.is_identity());

    // E11 plus a block with irreducible characteristic polynomial t^2 + 1 over F3
    let f3 = f(3);
    assert!(FpPoly::new(3, vec![1, 0, 1]).is_irreducible());
    let x = SquareMatrix::from_i64_rows(&f3, &[&[1, 0, 0], &[0, 0, 2], &[0, 1, 0]]);
    let s = spectral_parts(&x).unwrap();
    assert_eq!(s.eigenvalues, vec![1]);
    assert_eq!(s.idempotents, vec![SquareMatrix::unit(&f3, 3, 0, 0)]);
    let block = spectral_parts(&s.residual).unwrap();
    assert_eq!(block.support, SquareMatrix::identity(&f3, 3).sub(&SquareMatrix::unit(&f3, 3, 0, 0)));
    assert_eq!(block.support.rank(), 2);
}

fn check_all_colorings(p: u64) -> (usize, BTreeSet<usize>) {
    let setting = symmetric_setting(p).unwrap();
    assert_eq!(setting.domain.len(), p.pow(6) as usize);
    assert!(!setting.colorings.is_empty());
    let mut degrees = BTreeSet::new();
    for colors in &setting.colorings {
        let phi = extend_coloring(setting.domain.clone(), &setting.projections, colors).unwrap();
        let report = verify_morphism(&phi);
        assert!(report.passed(), "p = {p}: {:?}", report.failure);
        // φ on idempotents is the coloring
        for (e, c) in setting.projections.matrices().unwrap().iter().zip(colors) {
            let v = phi.value(e).unwrap();
            assert_eq!(phi.target().is_one(v), *c == Color::White);
            assert!(phi.target().is_one(v) || phi.target().is_zero(v));
        }
        degrees.extend(phi.degrees());
    }
    (setting.colorings.len(), degrees)
}

#[test]
fn every_coloring_over_f2_extends() {
    let (count, degrees) = check_all_colorings(2);
    assert_eq!(count, 6);
    assert_eq!(degrees, BTreeSet::from([2, 3]));
}

#[test]
fn every_coloring_over_f3_extends() {
    let start = Instant::now();
    let (count, _) = check_all_colorings(3);
    assert!(count > 0);
    assert!(start.elapsed().as_secs() < 300);
}

#[test]
fn corrupted_map_is_caught() {
    let s = symmetric_setting(2).unwrap();
    let phi = extend_coloring(s.domain.clone(), &s.projections, &s.colorings[0]).unwrap();
    let bad = phi.corrupted(5);
    let report = verify_morphism(&bad);
    assert!(!report.passed());
    let bad_colors: Vec<Color> = s.colorings[0].iter().map(|c| c.flip()).collect();
    assert!(matches!(extend_coloring(s.domain.clone(), &s.projections, &bad_colors), Err(MorphismError::InvalidColoring(_))));
}

#[test]
fn diagonal_algebra_selects_an_eigenvalue() {
    let f5 = f(5);
    let diag: Vec<SquareMatrix> = (0..125)
        .map(|m: u64| SquareMatrix::diagonal(&f5, &[f5.from_residue(m % 5), f5.from_residue(m / 5 % 5), f5.from_residue(m / 25)]))
        .collect();
    let domain = Arc::new(MatrixDomain::from_elements(diag));
    let idpt = PartialBooleanAlgebra::from_idempotents(&domain.idempotents(), true).unwrap();
    let colorings = all_colorings(idpt.constraint_system(), usize::MAX);
    assert_eq!(colorings.len(), 3);
    for colors in &colorings {
        let phi = extend_coloring(domain.clone(), &idpt, colors).unwrap();
        assert!(verify_morphism(&phi).passed());
        // oracle: quotient at the white diagonal unit
        let white = (0..3)
            .find(|&i| {
                let e = SquareMatrix::unit(&f5, 3, i, i);
                phi.white_idempotents().contains(&e)
            })
            .unwrap();
        for x in domain.elements() {
            let want = phi.target().from_residue(f5.as_residue(x.get(white, white)).unwrap());
            assert_eq!(phi.value(x).unwrap(), &want);
        }
    }
}

#[test]
fn integer_composite_respects_commuting_pairs() {
    let z = ScalarRing::integers();
    for p in [2u64, 3] {
        let s = symmetric_setting(p).unwrap();
        let phi = extend_coloring(s.domain.clone(), &s.projections, &s.colorings[0]).unwrap();
        let comp = IntegerComposite::new(phi).unwrap();
        let k = comp.morphism().target().clone();
        assert!(k.is_one(&comp.eval(&SquareMatrix::identity(&z, 3)).unwrap()));
        let pi = SquareMatrix::identity(&z, 3).scale(&z.from_i64(p as i64));
        assert!(comp.kernel_contains(&pi).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + p);
        let mut checked = 0;
        while checked < 500 {
            let mut rows = [[0i64; 3]; 3];
            for i in 0..3 {
                for j in i..3 {
                    rows[i][j] = rng.gen_range(-9..=9);
                    rows[j][i] = rows[i][j];
                }
            }
            let a = SquareMatrix::from_i64_rows(&z, &[&rows[0], &rows[1], &rows[2]]);
            let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
            let b = SquareMatrix::identity(&z, 3)
                .scale(&z.from_i64(coeffs[0]))
                .add(&a.scale(&z.from_i64(coeffs[1])))
                .add(&a.mul(&a).scale(&z.from_i64(coeffs[2])));
            let in_range = b.entries().iter().all(|e| {
                let s = z.format(e);
                s.parse::<i64>().is_ok_and(|v| (-9..=9).contains(&v))
            });
            if !in_range {
                continue;
            }
            assert!(comp.check_pair(&a, &b).unwrap());
            checked += 1;
        }
    }
}

#[test]
fn dump_lists_every_value() {
    let s = symmetric_setting(2).unwrap();
    let phi = extend_coloring(s.domain.clone(), &s.projections, &s.colorings[0]).unwrap();
    let dump = phi.dump();
    assert_eq!(dump.values.len(), 64);
    assert_eq!(dump.target, "GF(2^6)");
    assert!(!dump.embeddings.is_empty());
    assert!(serde_json::to_string(&dump).unwrap().contains("minimal_polynomial"));
}
