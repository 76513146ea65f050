//! Finite partial Boolean algebras: commeasurability, partial operations,
//! Kochen-Specker colorings, prime partial ideals and partial ultrafilters.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{MatrixError, MatrixJson, SquareMatrix};
use crate::solver::{self, Color, ConstraintSystem, Violation};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier is not closed: {0}")]
    NotClosed(String),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("operation requires an operation-closed carrier")]
    CarrierNotClosed,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone)]
pub enum Carrier {
    Matrices(Vec<SquareMatrix>),
    Labels(Vec<String>),
}

/// `≤`, `≥` and orthogonality between two elements; all false unless commeasurable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub commeasurable: bool,
    pub leq: bool,
    pub geq: bool,
    pub orthogonal: bool,
}

#[derive(Debug)]
pub struct PartialBooleanAlgebra {
    carrier: Carrier,
    size: usize,
    commeasurable: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    closed: bool,
    constraints: OnceLock<ConstraintSystem>,
}

fn opt(x: u32) -> Option<usize> {
    (x != NONE).then_some(x as usize)
}

impl PartialBooleanAlgebra {
    /// Commeasurability is commutation; `0` and `1` are appended when absent
    /// and repeats dropped. With `closed`, `∨`, `∧`, `¬` of every
    /// commeasurable pair must land back in the carrier.
    pub fn from_idempotents(matrices: &[SquareMatrix], closed: bool) -> Result<Self, AlgebraError> {
        let first = matrices.first().ok_or(AlgebraError::NotClosed("empty carrier".into()))?;
        let (ring, n) = (first.ring().clone(), first.n());
        let mut elems: Vec<SquareMatrix> = Vec::new();
        let mut index: HashMap<SquareMatrix, usize> = HashMap::new();
        for (i, m) in matrices.iter().enumerate() {
            if m.n() != n {
                return Err(MatrixError::ShapeMismatch(m.n(), n).into());
            }
            if *m.ring() != ring {
                return Err(MatrixError::RingMismatch(m.ring().to_string(), ring.to_string()).into());
            }
            if !m.is_idempotent() {
                return Err(AlgebraError::NotIdempotent(i));
            }
            if !index.contains_key(m) {
                index.insert(m.clone(), elems.len());
                elems.push(m.clone());
            }
        }
        for special in [SquareMatrix::zero(&ring, n), SquareMatrix::identity(&ring, n)] {
            if !index.contains_key(&special) {
                index.insert(special.clone(), elems.len());
                elems.push(special);
            }
        }
        let zero = index[&SquareMatrix::zero(&ring, n)];
        let one = index[&SquareMatrix::identity(&ring, n)];
        let size = elems.len();
        let identity = SquareMatrix::identity(&ring, n);
        let products: Vec<Vec<SquareMatrix>> = (0..size)
            .into_par_iter()
            .map(|i| (0..size).map(|j| elems[i].mul(&elems[j])).collect())
            .collect();
        let mut commeasurable = vec![false; size * size];
        let mut join = vec![NONE; size * size];
        let mut meet = vec![NONE; size * size];
        let lookup = |m: &SquareMatrix| index.get(m).map_or(NONE, |&k| k as u32);
        for i in 0..size {
            for j in 0..size {
                if products[i][j] != products[j][i] {
                    continue;
                }
                commeasurable[i * size + j] = true;
                meet[i * size + j] = lookup(&products[i][j]);
                join[i * size + j] = lookup(&elems[i].add(&elems[j]).sub(&products[i][j]));
            }
        }
        let neg: Vec<u32> = elems.iter().map(|e| lookup(&identity.sub(e))).collect();
        let alg = PartialBooleanAlgebra {
            carrier: Carrier::Matrices(elems),
            size,
            commeasurable,
            join,
            meet,
            neg,
            zero,
            one,
            closed,
            constraints: OnceLock::new(),
        };
        if closed {
            alg.closure_defect().map_or(Ok(()), |w| Err(AlgebraError::NotClosed(w)))?;
        }
        Ok(alg)
    }

    /// The smallest subset of `M_n(R)` containing `matrices`, `0`, `1` and
    /// closed under the operations on commuting pairs.
    pub fn closure_of(matrices: &[SquareMatrix]) -> Result<Self, AlgebraError> {
        let first = matrices.first().ok_or(AlgebraError::NotClosed("empty carrier".into()))?;
        let (ring, n) = (first.ring().clone(), first.n());
        let identity = SquareMatrix::identity(&ring, n);
        let mut set: BTreeSet<SquareMatrix> = matrices.iter().cloned().collect();
        set.insert(SquareMatrix::zero(&ring, n));
        set.insert(identity.clone());
        loop {
            let elems: Vec<SquareMatrix> = set.iter().cloned().collect();
            let mut grew = false;
            for e in &elems {
                grew |= set.insert(identity.sub(e));
                for f in &elems {
                    let ef = e.mul(f);
                    if ef == f.mul(e) {
                        grew |= set.insert(ef.clone());
                        grew |= set.insert(e.add(f).sub(&ef));
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let elems: Vec<SquareMatrix> = set.into_iter().collect();
        Self::from_idempotents(&elems, true)
    }

    fn from_tables(labels: Vec<String>, commeasurable: Vec<bool>, join: Vec<u32>, meet: Vec<u32>, neg: Vec<u32>, zero: usize, one: usize) -> Self {
        let size = labels.len();
        PartialBooleanAlgebra {
            carrier: Carrier::Labels(labels),
            size,
            commeasurable,
            join,
            meet,
            neg,
            zero,
            one,
            closed: true,
            constraints: OnceLock::new(),
        }
    }

    /// The Boolean algebra of subsets of `atoms` points (`atoms <= 4`), indexed by bitmask.
    pub fn power_set(atoms: u32) -> Self {
        assert!(atoms <= 4, "power sets are limited to 4 atoms");
        Self::horizontal_sum(&[atoms])
    }

    /// Boolean algebras on the given atom counts glued along `0` and `1`.
    /// Elements of distinct blocks, other than `0` and `1`, are not commeasurable.
    pub fn horizontal_sum(blocks: &[u32]) -> Self {
        // block-local masks; index 0 = zero, 1 = one, then proper elements per block
        let mut members: Vec<(usize, u32)> = vec![(usize::MAX, 0), (usize::MAX, u32::MAX)];
        let mut labels = vec!["0".to_string(), "1".to_string()];
        for (b, &atoms) in blocks.iter().enumerate() {
            let full = (1u32 << atoms) - 1;
            for mask in 1..full {
                members.push((b, mask));
                labels.push(format!("b{b}:{mask:0width$b}", width = atoms as usize));
            }
        }
        let size = members.len();
        let full_of = |b: usize| (1u32 << blocks[b]) - 1;
        let find = |b: usize, mask: u32| -> u32 {
            if mask == 0 {
                0
            } else if mask == full_of(b) {
                1
            } else {
                members.iter().position(|&(bb, m)| bb == b && m == mask).unwrap() as u32
            }
        };
        let mut commeasurable = vec![false; size * size];
        let mut join = vec![NONE; size * size];
        let mut meet = vec![NONE; size * size];
        let mut neg = vec![NONE; size];
        for i in 0..size {
            let (bi, mi) = members[i];
            for j in 0..size {
                let (bj, mj) = members[j];
                let block = if bi == usize::MAX { bj } else { bi };
                if bi != usize::MAX && bj != usize::MAX && bi != bj {
                    continue;
                }
                commeasurable[i * size + j] = true;
                if block == usize::MAX {
                    // both special
                    let (a, c) = (i == 1, j == 1);
                    join[i * size + j] = (a || c) as u32;
                    meet[i * size + j] = (a && c) as u32;
                    continue;
                }
                let full = full_of(block);
                let expand = |idx: usize, m: u32| if idx == 0 { 0 } else if idx == 1 { full } else { m };
                let (x, y) = (expand(i, mi), expand(j, mj));
                join[i * size + j] = find(block, x | y);
                meet[i * size + j] = find(block, x & y);
            }
            neg[i] = match i {
                0 => 1,
                1 => 0,
                _ => find(bi, full_of(bi) & !mi),
            };
        }
        Self::from_tables(labels, commeasurable, join, meet, neg, 0, 1)
    }

    /// The one-element algebra with `0 = 1`.
    pub fn trivial() -> Self {
        Self::from_tables(vec!["0=1".into()], vec![true], vec![0], vec![0], vec![0], 0, 0)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn matrices(&self) -> Option<&[SquareMatrix]> {
        match &self.carrier {
            Carrier::Matrices(m) => Some(m),
            Carrier::Labels(_) => None,
        }
    }

    pub fn label(&self, i: usize) -> String {
        match &self.carrier {
            Carrier::Matrices(_) => i.to_string(),
            Carrier::Labels(l) => l[i].clone(),
        }
    }

    pub fn commeasurable(&self, i: usize, j: usize) -> bool {
        self.commeasurable[i * self.size + j]
    }

    /// `None` when not commeasurable or the result lies outside the carrier.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        opt(self.join[i * self.size + j])
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        opt(self.meet[i * self.size + j])
    }

    pub fn neg(&self, i: usize) -> Option<usize> {
        opt(self.neg[i])
    }

    /// First commeasurable pair whose join, meet or complement escapes the carrier.
    pub fn closure_defect(&self) -> Option<String> {
        for i in 0..self.size {
            if self.neg(i).is_none() {
                return Some(format!("complement of element {i} missing"));
            }
            for j in 0..self.size {
                if self.commeasurable(i, j) && (self.join(i, j).is_none() || self.meet(i, j).is_none()) {
                    return Some(format!("join or meet of elements {i} and {j} missing"));
                }
            }
        }
        None
    }

    fn meet_is_zero(&self, i: usize, j: usize) -> bool {
        match &self.carrier {
            Carrier::Matrices(m) => self.commeasurable(i, j) && m[i].mul(&m[j]).is_zero(),
            Carrier::Labels(_) => self.meet(i, j) == Some(self.zero),
        }
    }

    fn is_leq(&self, i: usize, j: usize) -> bool {
        match &self.carrier {
            Carrier::Matrices(m) => self.commeasurable(i, j) && m[i].mul(&m[j]) == m[i],
            Carrier::Labels(_) => self.join(i, j) == Some(j),
        }
    }

    pub fn relation(&self, i: usize, j: usize) -> Relation {
        let c = self.commeasurable(i, j);
        Relation {
            commeasurable: c,
            leq: c && self.is_leq(i, j),
            geq: c && self.is_leq(j, i),
            orthogonal: c && self.meet_is_zero(i, j),
        }
    }

    /// Orthogonal pairs and unit decompositions of the carrier.
    pub fn constraint_system(&self) -> &ConstraintSystem {
        self.constraints.get_or_init(|| self.build_constraints())
    }

    fn build_constraints(&self) -> ConstraintSystem {
        let size = self.size;
        let ortho: Vec<Vec<bool>> =
            (0..size).map(|i| (0..size).map(|j| self.meet_is_zero(i, j)).collect()).collect();
        let mut pairs = Vec::new();
        for i in 0..size {
            for j in i..size {
                if ortho[i][j] {
                    pairs.push((i, j));
                }
            }
        }
        let decs = match &self.carrier {
            Carrier::Matrices(m) => {
                let ranks: Vec<usize> = m.iter().map(|e| e.rank()).collect();
                solver::unit_decompositions_of(m, &ortho, &ranks)
            }
            Carrier::Labels(_) if self.zero == self.one => vec![vec![self.one]],
            Carrier::Labels(_) => self.abstract_decompositions(&ortho),
        };
        let labels = (0..size).map(|i| self.label(i)).collect();
        ConstraintSystem::new(size, pairs, decs).with_labels(labels)
    }

    fn abstract_decompositions(&self, ortho: &[Vec<bool>]) -> Vec<Vec<usize>> {
        fn go(alg: &PartialBooleanAlgebra, ortho: &[Vec<bool>], start: usize, acc: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if acc == alg.one {
                out.push(stack.clone());
                return;
            }
            for j in start..alg.size {
                if j == alg.zero || !stack.iter().all(|&s| ortho[s][j]) {
                    continue;
                }
                let Some(next) = alg.join(acc, j) else { continue };
                if next == acc {
                    continue;
                }
                stack.push(j);
                go(alg, ortho, j + 1, next, stack, out);
                stack.pop();
            }
        }
        let mut out = Vec::new();
        go(self, ortho, 0, self.zero, &mut Vec::new(), &mut out);
        out
    }

    /// Checks the coloring conditions; returns the first violated constraint.
    pub fn is_ks_coloring(&self, colors: &[Color]) -> Result<(), Violation> {
        self.constraint_system().check(colors)
    }

    fn require_closed(&self) -> Result<(), AlgebraError> {
        if self.closed {
            Ok(())
        } else {
            Err(AlgebraError::CarrierNotClosed)
        }
    }

    fn commeasurable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |i| (0..self.size).filter(move |&j| self.commeasurable(i, j)).map(move |j| (i, j)))
    }

    /// Contains `0`, is a down-set, closed under `∨`, omits `1`, meets every
    /// `{p, ¬p}` exactly once, and `p ∧ q ∈ I` forces `p ∈ I` or `q ∈ I`.
    pub fn is_prime_partial_ideal(&self, member: &[bool]) -> Result<bool, AlgebraError> {
        self.require_closed()?;
        if !member[self.zero] || member[self.one] {
            return Ok(false);
        }
        for (p, q) in self.commeasurable_pairs() {
            let join = self.join(p, q).expect("closed");
            let meet = self.meet(p, q).expect("closed");
            if member[q] && self.is_leq(p, q) && !member[p] {
                return Ok(false);
            }
            if member[p] && member[q] && !member[join] {
                return Ok(false);
            }
            if member[meet] && !member[p] && !member[q] {
                return Ok(false);
            }
        }
        Ok((0..self.size).all(|p| member[p] != member[self.neg(p).expect("closed")]))
    }

    /// Order dual of [`Self::is_prime_partial_ideal`].
    pub fn is_partial_ultrafilter(&self, member: &[bool]) -> Result<bool, AlgebraError> {
        self.require_closed()?;
        if !member[self.one] || member[self.zero] {
            return Ok(false);
        }
        for (p, q) in self.commeasurable_pairs() {
            let join = self.join(p, q).expect("closed");
            let meet = self.meet(p, q).expect("closed");
            if member[p] && self.is_leq(p, q) && !member[q] {
                return Ok(false);
            }
            if member[p] && member[q] && !member[meet] {
                return Ok(false);
            }
            if member[join] && !member[p] && !member[q] {
                return Ok(false);
            }
        }
        Ok((0..self.size).all(|p| member[p] != member[self.neg(p).expect("closed")]))
    }

    /// `¬S = {¬x : x ∈ S}` as a membership vector.
    pub fn negate_set(&self, member: &[bool]) -> Result<Vec<bool>, AlgebraError> {
        self.require_closed()?;
        let mut out = vec![false; self.size];
        for (x, &m) in member.iter().enumerate() {
            if m {
                out[self.neg(x).expect("closed")] = true;
            }
        }
        Ok(out)
    }

    /// Preserves `0`, `1`, `¬`, and `∨`, `∧` on commeasurable pairs.
    pub fn is_homomorphism_to_two(&self, phi: &[bool]) -> Result<bool, AlgebraError> {
        self.require_closed()?;
        if phi[self.zero] || !phi[self.one] {
            return Ok(false);
        }
        if (0..self.size).any(|p| phi[self.neg(p).expect("closed")] == phi[p]) {
            return Ok(false);
        }
        Ok(self.commeasurable_pairs().all(|(p, q)| {
            phi[self.join(p, q).expect("closed")] == (phi[p] || phi[q])
                && phi[self.meet(p, q).expect("closed")] == (phi[p] && phi[q])
        }))
    }

    pub fn dump(&self) -> AlgebraDump {
        let elements = (0..self.size)
            .map(|i| match &self.carrier {
                Carrier::Matrices(m) => DumpElement {
                    index: i,
                    label: None,
                    rank: Some(m[i].rank()),
                    matrix: Some(MatrixJson::from_matrix(&m[i])),
                },
                Carrier::Labels(l) => DumpElement { index: i, label: Some(l[i].clone()), rank: None, matrix: None },
            })
            .collect();
        let commeasurable = (0..self.size)
            .flat_map(|i| (i + 1..self.size).filter(move |&j| self.commeasurable(i, j)).map(move |j| [i, j]))
            .collect();
        AlgebraDump { zero: self.zero, one: self.one, closed: self.closed, elements, commeasurable }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DumpElement {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub zero: usize,
    pub one: usize,
    pub closed: bool,
    pub elements: Vec<DumpElement>,
    pub commeasurable: Vec<[usize; 2]>,
}

/// `{"white": [indices]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub white: Vec<usize>,
}

impl ColoringJson {
    pub fn from_colors(colors: &[Color]) -> Self {
        ColoringJson { white: (0..colors.len()).filter(|&i| colors[i] == Color::White).collect() }
    }

    pub fn to_colors(&self, size: usize) -> Vec<Color> {
        let mut c = vec![Color::Black; size];
        for &w in &self.white {
            c[w] = Color::White;
        }
        c
    }
}

/// Largest carrier for which all three sets are found by exhaustive filtering.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    /// Two-valued homomorphisms as indicator vectors.
    pub homs: Vec<Vec<bool>>,
    pub colorings: Vec<Vec<Color>>,
    /// Prime partial ideals as membership vectors.
    pub ideals: Vec<Vec<bool>>,
    pub exhaustive: bool,
    pub round_trips_ok: bool,
}

impl BijectionReport {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.homs.len(), self.colorings.len(), self.ideals.len())
    }

    pub fn consistent(&self) -> bool {
        let (a, b, c) = self.counts();
        a == b && b == c && self.round_trips_ok
    }
}

fn subsets(size: usize) -> impl ParallelIterator<Item = Vec<bool>> {
    (0u64..1u64 << size)
        .into_par_iter()
        .map(move |mask| (0..size).map(|i| mask >> i & 1 == 1).collect())
}

/// `hom(B, 2)`, `KS(B)` and `pSpec(B)` with the maps `φ ↦ φ⁻¹(0)`,
/// ideal ↦ coloring (members black), coloring ↦ indicator of white.
/// Exhaustive up to [`BRUTE_FORCE_LIMIT`] elements; above it the colorings
/// come from the solver and the other two sets are their images.
pub fn bijection_triple(alg: &PartialBooleanAlgebra) -> Result<BijectionReport, AlgebraError> {
    alg.require_closed()?;
    let size = alg.len();
    let exhaustive = size <= BRUTE_FORCE_LIMIT;
    let (homs, colorings, ideals) = if exhaustive {
        let mut homs: Vec<Vec<bool>> = subsets(size).filter(|phi| alg.is_homomorphism_to_two(phi).unwrap()).collect();
        let mut colorings: Vec<Vec<Color>> = subsets(size)
            .map(|w| w.iter().map(|&b| if b { Color::White } else { Color::Black }).collect::<Vec<_>>())
            .filter(|c| alg.is_ks_coloring(c).is_ok())
            .collect();
        let mut ideals: Vec<Vec<bool>> = subsets(size).filter(|s| alg.is_prime_partial_ideal(s).unwrap()).collect();
        homs.sort();
        colorings.sort();
        ideals.sort();
        (homs, colorings, ideals)
    } else {
        let colorings = solver::all_colorings(alg.constraint_system(), usize::MAX);
        let ideals: Vec<Vec<bool>> = colorings.iter().map(|c| c.iter().map(|&x| x == Color::Black).collect()).collect();
        let homs: Vec<Vec<bool>> = colorings.iter().map(|c| c.iter().map(|&x| x == Color::White).collect()).collect();
        for (i, h) in ideals.iter().zip(&homs) {
            if !alg.is_prime_partial_ideal(i)? || !alg.is_homomorphism_to_two(h)? {
                return Ok(BijectionReport { homs, colorings, ideals, exhaustive, round_trips_ok: false });
            }
        }
        (homs, colorings, ideals)
    };
    let hom_to_ideal = |phi: &Vec<bool>| phi.iter().map(|&b| !b).collect::<Vec<bool>>();
    let ideal_to_coloring =
        |i: &Vec<bool>| i.iter().map(|&b| if b { Color::Black } else { Color::White }).collect::<Vec<Color>>();
    let coloring_to_hom = |c: &Vec<Color>| c.iter().map(|&x| x == Color::White).collect::<Vec<bool>>();
    let hom_set: BTreeSet<&Vec<bool>> = homs.iter().collect();
    let ideal_set: BTreeSet<&Vec<bool>> = ideals.iter().collect();
    let coloring_set: BTreeSet<&Vec<Color>> = colorings.iter().collect();
    let round_trips_ok = homs.iter().all(|phi| {
        let i = hom_to_ideal(phi);
        let c = ideal_to_coloring(&i);
        ideal_set.contains(&i) && coloring_set.contains(&c) && coloring_to_hom(&c) == *phi
    }) && ideals.iter().all(|i| {
        let c = ideal_to_coloring(i);
        hom_to_ideal(&coloring_to_hom(&c)) == *i && coloring_set.contains(&c)
    }) && colorings.iter().all(|c| {
        let phi = coloring_to_hom(c);
        hom_set.contains(&phi) && ideal_to_coloring(&hom_to_ideal(&phi)) == *c
    });
    Ok(BijectionReport { homs, colorings, ideals, exhaustive, round_trips_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarRing;

    #[test]
    fn two_element_algebra() {
        let q = ScalarRing::rationals_all();
        let alg = PartialBooleanAlgebra::from_idempotents(&[SquareMatrix::identity(&q, 2)], true).unwrap();
        assert_eq!(alg.len(), 2);
        let mut c = vec![Color::Black; 2];
        c[alg.one()] = Color::White;
        assert!(alg.is_ks_coloring(&c).is_ok());
        assert_eq!(bijection_triple(&alg).unwrap().counts(), (1, 1, 1));
    }

    #[test]
    fn four_element_algebra() {
        let q = ScalarRing::rationals_all();
        let e = SquareMatrix::unit(&q, 2, 0, 0);
        let alg = PartialBooleanAlgebra::from_idempotents(&[e.clone(), SquareMatrix::identity(&q, 2).sub(&e)], true).unwrap();
        assert_eq!(alg.len(), 4);
        assert!((0..4).all(|i| (0..4).all(|j| alg.commeasurable(i, j))));
        // elements: e, 1-e, 0, 1
        let ideal = vec![true, false, true, false];
        assert!(alg.is_prime_partial_ideal(&ideal).unwrap());
        let complement: Vec<bool> = ideal.iter().map(|b| !b).collect();
        assert!(alg.is_partial_ultrafilter(&complement).unwrap());
        assert!(!alg.is_prime_partial_ideal(&[false; 4]).unwrap());
        assert!(alg.relation(0, 1).orthogonal);
        assert!(alg.relation(0, 3).leq);
    }

    #[test]
    fn trivial_algebra_has_nothing() {
        let t = PartialBooleanAlgebra::trivial();
        assert!(t.is_ks_coloring(&[Color::White]).is_err());
        assert!(t.is_ks_coloring(&[Color::Black]).is_err());
        assert_eq!(bijection_triple(&t).unwrap().counts(), (0, 0, 0));
    }

    #[test]
    fn power_set_spectra_count_atoms() {
        for atoms in 1..=4 {
            let b = PartialBooleanAlgebra::power_set(atoms);
            assert_eq!(b.len(), 1 << atoms);
            let r = bijection_triple(&b).unwrap();
            assert_eq!(r.counts(), (atoms as usize, atoms as usize, atoms as usize));
            assert!(r.round_trips_ok);
        }
    }

    #[test]
    fn not_closed_is_rejected() {
        let f2 = ScalarRing::prime_field(2).unwrap();
        let e = SquareMatrix::unit(&f2, 3, 0, 0);
        assert!(matches!(PartialBooleanAlgebra::from_idempotents(&[e], true), Err(AlgebraError::NotClosed(_))));
    }
}
