use kscolor::enumeration::{enumerate_idempotents, enumerate_projections};
use kscolor::matrix::SquareMatrix;
use kscolor::partial_boolean::*;
use kscolor::scalars::ScalarRing;
use kscolor::solver::{all_colorings, solve, Color, Verdict};
use proptest::prelude::*;

fn f2_projections() -> PartialBooleanAlgebra {
    PartialBooleanAlgebra::from_idempotents(&enumerate_projections(2, 3).unwrap().all(), true).unwrap()
}

fn f3_projection_closure() -> PartialBooleanAlgebra {
    PartialBooleanAlgebra::closure_of(enumerate_projections(3, 3).unwrap().rank(1)).unwrap()
}

fn sets(colors: &[Color]) -> (Vec<bool>, Vec<bool>) {
    (colors.iter().map(|&c| c == Color::Black).collect(), colors.iter().map(|&c| c == Color::White).collect())
}

/// Oracle: colorings by filtering all `2^n` assignments against the defining
/// conditions, with orthogonal families found from the element tables.
fn brute_colorings(alg: &PartialBooleanAlgebra) -> usize {
    let n = alg.len();
    let orth = |i: usize, j: usize| alg.relation(i, j).orthogonal;
    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![(Vec::<usize>::new(), alg.zero(), 0usize)];
    while let Some((fam, acc, start)) = stack.pop() {
        if acc == alg.one() && !fam.is_empty() {
            families.push(fam.clone());
        }
        for j in start..n {
            if j == alg.zero() || !fam.iter().all(|&f| orth(f, j)) {
                continue;
            }
            if let Some(next) = alg.join(acc, j) {
                let mut f = fam.clone();
                f.push(j);
                stack.push((f, next, j + 1));
            }
        }
    }
    (0u64..1 << n)
        .filter(|mask| {
            let white = |i: usize| mask >> i & 1 == 1;
            let pairs_ok = (0..n).all(|i| (0..n).all(|j| !(orth(i, j) && white(i) && white(j))));
            pairs_ok && families.iter().all(|f| f.iter().filter(|&&i| white(i)).count() == 1)
        })
        .count()
}

#[test]
fn f2_projection_algebra_has_six_points() {
    let alg = f2_projections();
    assert_eq!(alg.len(), 10);
    assert_eq!(brute_colorings(&alg), 6);
    let report = bijection_triple(&alg).unwrap();
    assert!(report.exhaustive);
    assert_eq!(report.counts(), (6, 6, 6));
    assert!(report.consistent());
}

#[test]
fn f3_projection_closure_bijection() {
    let alg = f3_projection_closure();
    assert_eq!(alg.len(), 20);
    let report = bijection_triple(&alg).unwrap();
    assert!(report.consistent());
    let (homs, _, _) = report.counts();
    assert!(homs > 0);
    assert_eq!(homs, brute_colorings(&alg));
}

#[test]
fn colorings_give_ideals_and_ultrafilters() {
    let idpt_f2_layer = {
        let inv = enumerate_idempotents(2, 2).unwrap();
        PartialBooleanAlgebra::from_idempotents(&inv.all(), true).unwrap()
    };
    let algebras = [f2_projections(), f3_projection_closure(), idpt_f2_layer, PartialBooleanAlgebra::power_set(3)];
    for alg in &algebras {
        let colorings = all_colorings(alg.constraint_system(), usize::MAX);
        assert!(!colorings.is_empty());
        for c in &colorings {
            let (black, white) = sets(c);
            assert!(alg.is_prime_partial_ideal(&black).unwrap());
            assert!(alg.is_partial_ultrafilter(&white).unwrap());
            assert_eq!(c[alg.zero()], Color::Black);
            assert_eq!(c[alg.one()], Color::White);
        }
    }
}

#[test]
fn complementation_duality_is_exhaustive_on_small_algebras() {
    let small = [
        f2_projections(),
        PartialBooleanAlgebra::power_set(3),
        PartialBooleanAlgebra::horizontal_sum(&[2, 3]),
        PartialBooleanAlgebra::horizontal_sum(&[2, 2, 2]),
        PartialBooleanAlgebra::trivial(),
    ];
    for alg in &small {
        assert!(alg.len() <= 12);
        for mask in 0u32..1 << alg.len() {
            let s: Vec<bool> = (0..alg.len()).map(|i| mask >> i & 1 == 1).collect();
            let ideal = alg.is_prime_partial_ideal(&s).unwrap();
            let negated = alg.is_partial_ultrafilter(&alg.negate_set(&s).unwrap()).unwrap();
            let rest: Vec<bool> = s.iter().map(|b| !b).collect();
            assert_eq!(ideal, negated);
            assert_eq!(ideal, alg.is_partial_ultrafilter(&rest).unwrap());
        }
    }
}

#[test]
fn two_square_blocks_have_four_points() {
    // points of a horizontal sum of Boolean blocks: one atom per block, consistently
    let alg = PartialBooleanAlgebra::horizontal_sum(&[2, 2]);
    assert_eq!(bijection_triple(&alg).unwrap().counts(), (4, 4, 4));
}

#[test]
fn unclosed_carrier_refuses_ideal_checks() {
    let f2 = ScalarRing::prime_field(2).unwrap();
    let e = SquareMatrix::unit(&f2, 3, 0, 0);
    let alg = PartialBooleanAlgebra::from_idempotents(&[e], false).unwrap();
    assert!(!alg.is_closed());
    assert_eq!(alg.is_prime_partial_ideal(&vec![false; alg.len()]), Err(AlgebraError::CarrierNotClosed));
    assert!(matches!(bijection_triple(&alg), Err(AlgebraError::CarrierNotClosed)));
}

#[test]
fn relations_on_matrices() {
    let q = ScalarRing::rationals_all();
    let e11 = SquareMatrix::unit(&q, 3, 0, 0);
    let e22 = SquareMatrix::unit(&q, 3, 1, 1);
    let alg = PartialBooleanAlgebra::from_idempotents(&[e11.clone(), e22.clone(), e11.add(&e22)], false).unwrap();
    assert!(alg.relation(0, 2).leq);
    assert!(alg.relation(0, 1).orthogonal);
    // first non-commuting rank-one pair over F2
    let layer = enumerate_idempotents(2, 3).unwrap();
    let r1 = layer.rank(1);
    let (i, j) = (0..r1.len())
        .flat_map(|i| (0..r1.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !r1[i].commutes_with(&r1[j]))
        .unwrap();
    let alg = PartialBooleanAlgebra::from_idempotents(&[r1[i].clone(), r1[j].clone()], false).unwrap();
    let rel = alg.relation(0, 1);
    assert!(!rel.commeasurable && !rel.leq && !rel.geq && !rel.orthogonal);
}

#[test]
fn idempotents_over_f5_have_empty_spectrum() {
    let inv = enumerate_idempotents(5, 3).unwrap();
    let alg = PartialBooleanAlgebra::from_idempotents(&inv.all(), true).unwrap();
    assert_eq!(alg.len(), 1552);
    let report = bijection_triple(&alg).unwrap();
    assert!(!report.exhaustive);
    assert_eq!(report.counts(), (0, 0, 0));
    assert_eq!(solve(alg.constraint_system()).verdict, Verdict::Unsat);
}

#[test]
fn dump_and_coloring_json() {
    let alg = f2_projections();
    let dump = alg.dump();
    assert_eq!(dump.elements.len(), 10);
    assert!(dump.elements.iter().all(|e| e.rank.is_some() && e.matrix.is_some()));
    let c = all_colorings(alg.constraint_system(), 1).remove(0);
    let json = ColoringJson::from_colors(&c);
    assert_eq!(json.to_colors(alg.len()), c);
    let text = serde_json::to_string(&json).unwrap();
    assert!(text.starts_with("{\"white\":["));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn power_sets_have_one_point_per_atom(atoms in 1u32..=4) {
        let b = PartialBooleanAlgebra::power_set(atoms);
        let r = bijection_triple(&b).unwrap();
        prop_assert_eq!(r.counts(), (atoms as usize, atoms as usize, atoms as usize));
        prop_assert!(r.round_trips_ok);
    }

    #[test]
    fn horizontal_sum_points_multiply(blocks in proptest::collection::vec(2u32..=3, 1..=3)) {
        let b = PartialBooleanAlgebra::horizontal_sum(&blocks);
        let expected: usize = blocks.iter().map(|&a| a as usize).product();
        prop_assert_eq!(bijection_triple(&b).unwrap().counts().0, expected);
    }
}
