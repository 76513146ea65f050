use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::matrix::SquareMatrix;
use crate::partial_boolean::PartialBooleanAlgebra;
use crate::scalars::{eval_in, least_root, Elem, FpPoly, ScalarRing};
use crate::solver::Color;

use super::charpoly::characteristic_polynomial;
use super::jordan::{jordan_chevalley, spectral_parts};
use super::MorphismError;

/// Degree of the target extension: it contains `F_{p^2}` and `F_{p^3}`.
pub const TARGET_DEGREE: usize = 6;

const NONE: u32 = u32::MAX;

/// A finite list of matrices over `F_p` with an index and, on demand, the
/// table of commuting ordered pairs with the positions of their sums and products.
#[derive(Debug)]
pub struct MatrixDomain {
    ring: ScalarRing,
    n: usize,
    elements: Vec<SquareMatrix>,
    index: HashMap<SquareMatrix, usize>,
    pairs: OnceLock<Vec<[u32; 4]>>,
}

impl MatrixDomain {
    pub fn from_elements(elements: Vec<SquareMatrix>) -> Self {
        let first = elements.first().expect("nonempty domain");
        let (ring, n) = (first.ring().clone(), first.n());
        let mut seen = HashMap::new();
        let mut list = Vec::new();
        for e in elements {
            if !seen.contains_key(&e) {
                seen.insert(e.clone(), list.len());
                list.push(e);
            }
        }
        MatrixDomain { ring, n, elements: list, index: seen, pairs: OnceLock::new() }
    }

    /// `M_n(F_p)_sym`, ordered lexicographically by the upper triangle.
    pub fn symmetric(p: u64, n: usize) -> Result<Self, MorphismError> {
        let ring = ScalarRing::prime_field(p)?;
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let total = p.pow(slots.len() as u32);
        let elements = (0..total)
            .map(|mut idx| {
                let mut vals = vec![0u64; slots.len()];
                for v in vals.iter_mut().rev() {
                    *v = idx % p;
                    idx /= p;
                }
                let mut grid = vec![0u64; n * n];
                for (&(i, j), &v) in slots.iter().zip(&vals) {
                    grid[i * n + j] = v;
                    grid[j * n + i] = v;
                }
                SquareMatrix::from_fn(&ring, n, |i, j| ring.from_residue(grid[i * n + j]))
            })
            .collect();
        Ok(Self::from_elements(elements))
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[SquareMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &SquareMatrix) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// The idempotent members.
    pub fn idempotents(&self) -> Vec<SquareMatrix> {
        self.elements.iter().filter(|e| e.is_idempotent()).cloned().collect()
    }

    /// `[i, j, pos(x_i + x_j), pos(x_i x_j)]` for every commuting ordered pair;
    /// `u32::MAX` marks a result outside the domain.
    pub fn commuting_pairs(&self) -> &[[u32; 4]] {
        self.pairs.get_or_init(|| {
            use rayon::prelude::*;
            let pos = |m: &SquareMatrix| self.position(m).map_or(NONE, |k| k as u32);
            (0..self.len())
                .into_par_iter()
                .flat_map_iter(|i| {
                    let x = &self.elements[i];
                    (0..self.len()).filter_map(move |j| {
                        let y = &self.elements[j];
                        let xy = x.mul(y);
                        (xy == y.mul(x)).then(|| [i as u32, j as u32, pos(&x.add(y)), pos(&xy)])
                    })
                })
                .collect()
        })
    }
}

/// `⟨x⟩`: the field `F_p[x]` with unit `supp(x)`, and where its canonical
/// generator goes in the target.
#[derive(Debug, Clone)]
pub struct SubfieldEntry {
    pub support: SquareMatrix,
    /// Least member outside `F_p · support`.
    pub generator: SquareMatrix,
    pub degree: usize,
    pub minimal_polynomial: FpPoly,
    /// Least root of the minimal polynomial in the target.
    pub image: Elem,
    coords: HashMap<SquareMatrix, Vec<u64>>,
}

impl SubfieldEntry {
    pub fn members(&self) -> impl Iterator<Item = &SquareMatrix> {
        self.coords.keys()
    }
}

/// A map from a finite matrix domain into `F_{p^6}`, frozen after construction.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub(crate) domain: Arc<MatrixDomain>,
    pub(crate) target: ScalarRing,
    pub(crate) values: Vec<Elem>,
    pub(crate) table: Vec<SubfieldEntry>,
    pub(crate) white: BTreeSet<SquareMatrix>,
}

impl Morphism {
    pub fn domain(&self) -> &MatrixDomain {
        &self.domain
    }

    pub fn target(&self) -> &ScalarRing {
        &self.target
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn value(&self, x: &SquareMatrix) -> Option<&Elem> {
        self.domain.position(x).map(|i| &self.values[i])
    }

    pub fn embedding_table(&self) -> &[SubfieldEntry] {
        &self.table
    }

    /// Degrees of the subfields with a table entry.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.table.iter().map(|e| e.degree).collect()
    }

    /// White idempotents of the coloring this map extends.
    pub fn white_idempotents(&self) -> &BTreeSet<SquareMatrix> {
        &self.white
    }

    /// A copy with the value at `i` shifted by one.
    pub fn corrupted(&self, i: usize) -> Morphism {
        let mut m = self.clone();
        m.values[i] = self.target.add(&m.values[i], &self.target.one());
        m
    }

    pub fn dump(&self) -> MorphismDump {
        let key = |m: &SquareMatrix| matrix_key(m);
        MorphismDump {
            p: self.domain.ring.characteristic(),
            target: self.target.to_string(),
            target_modulus: self.target.extension_modulus().map(|m| m.coeffs().to_vec()).unwrap_or_default(),
            values: self
                .domain
                .elements
                .iter()
                .zip(&self.values)
                .map(|(x, v)| (key(x), self.target.format(v)))
                .collect(),
            embeddings: self
                .table
                .iter()
                .map(|e| EmbeddingDump {
                    support: key(&e.support),
                    generator: key(&e.generator),
                    degree: e.degree,
                    minimal_polynomial: e.minimal_polynomial.coeffs().to_vec(),
                    image: self.target.format(&e.image),
                })
                .collect(),
        }
    }
}

/// Row-major residues joined by commas, rows by semicolons.
pub fn matrix_key(m: &SquareMatrix) -> String {
    m.format_rows().iter().map(|r| r.join(",")).collect::<Vec<_>>().join(";")
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingDump {
    pub support: String,
    pub generator: String,
    pub degree: usize,
    /// Coefficients low-to-high.
    pub minimal_polynomial: Vec<u64>,
    pub image: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismDump {
    pub p: u64,
    pub target: String,
    pub target_modulus: Vec<u64>,
    pub values: BTreeMap<String, String>,
    pub embeddings: Vec<EmbeddingDump>,
}

struct Builder<'a> {
    domain: &'a MatrixDomain,
    target: ScalarRing,
    table: Vec<SubfieldEntry>,
    entry_of: HashMap<SquareMatrix, usize>,
}

impl Builder<'_> {
    fn require(&self, x: &SquareMatrix, what: &str) -> Result<(), MorphismError> {
        match self.domain.position(x) {
            Some(_) => Ok(()),
            None => Err(MorphismError::ClosureViolation(format!("{what} {} not in the domain", matrix_key(x)))),
        }
    }

    /// Table entry of the field generated by a purely non-diagonalizable `y` with unit `e`.
    fn entry(&mut self, y: &SquareMatrix, e: &SquareMatrix) -> Result<usize, MorphismError> {
        if let Some(&k) = self.entry_of.get(y) {
            return Ok(k);
        }
        let ring = self.domain.ring.clone();
        let p = ring.characteristic();
        let mu = characteristic_polynomial(y).radical();
        let g = if mu.coeff(0) == 0 { mu.div_rem(&FpPoly::x(p)).0 } else { mu };
        if !g.is_irreducible() {
            return Err(MorphismError::NotAField(matrix_key(y)));
        }
        let d = g.degree().expect("nonconstant");
        let span = |basis: &[SquareMatrix]| -> Vec<(Vec<u64>, SquareMatrix)> {
            (0..p.pow(d as u32))
                .map(|mut idx| {
                    let mut c = vec![0u64; d];
                    for slot in c.iter_mut() {
                        *slot = idx % p;
                        idx /= p;
                    }
                    let m = basis
                        .iter()
                        .zip(&c)
                        .fold(SquareMatrix::zero(&ring, y.n()), |acc, (b, &k)| acc.add(&b.scale(&ring.from_residue(k))));
                    (c, m)
                })
                .collect()
        };
        let powers = |x: &SquareMatrix| {
            let mut v = vec![e.clone()];
            for k in 1..=d {
                v.push(v[k - 1].mul(x));
            }
            v
        };
        let generator = span(&powers(y)[..d])
            .into_iter()
            .filter(|(c, _)| c[1..].iter().any(|&k| k != 0))
            .map(|(_, m)| m)
            .min()
            .expect("degree at least 2");
        let gp = powers(&generator);
        let coords: HashMap<SquareMatrix, Vec<u64>> = span(&gp[..d]).into_iter().map(|(c, m)| (m, c)).collect();
        let top = coords.get(&gp[d]).ok_or_else(|| MorphismError::NotAField(matrix_key(y)))?;
        let mut mp: Vec<u64> = top.iter().map(|&c| (p - c) % p).collect();
        mp.push(1);
        let minimal_polynomial = FpPoly::new(p, mp);
        let image = least_root(&minimal_polynomial, &self.target).ok_or_else(|| MorphismError::NotAField(matrix_key(y)))?;
        let k = self.table.len();
        for (m, c) in &coords {
            if c[1..].iter().any(|&v| v != 0) {
                self.entry_of.insert(m.clone(), k);
            }
        }
        self.table.push(SubfieldEntry { support: e.clone(), generator, degree: d, minimal_polynomial, image, coords });
        Ok(k)
    }

    fn psi(&mut self, y: &SquareMatrix, e: &SquareMatrix) -> Result<Elem, MorphismError> {
        let k = self.entry(y, e)?;
        let entry = &self.table[k];
        let c = &entry.coords[y];
        let p = self.domain.ring.characteristic();
        Ok(eval_in(&FpPoly::new(p, c.clone()), &self.target, &entry.image))
    }
}

/// Extends a coloring of the domain's idempotents to a map into `F_{p^6}`:
/// nilpotent parts go to 0, spectral idempotents to their color, and the
/// purely non-diagonalizable part through the canonical field embedding when
/// its support is white.
pub fn extend_coloring(domain: Arc<MatrixDomain>, idpt: &PartialBooleanAlgebra, colors: &[Color]) -> Result<Morphism, MorphismError> {
    idpt.is_ks_coloring(colors).map_err(|v| MorphismError::InvalidColoring(format!("{v:?}")))?;
    let matrices = idpt.matrices().ok_or_else(|| MorphismError::InvalidColoring("carrier has no matrices".into()))?;
    let white_of: HashMap<&SquareMatrix, bool> = matrices.iter().zip(colors).map(|(m, &c)| (m, c == Color::White)).collect();
    let p = domain.ring.characteristic();
    let target = ScalarRing::build_extension(p, TARGET_DEGREE)?;
    let mut b = Builder { domain: &domain, target: target.clone(), table: Vec::new(), entry_of: HashMap::new() };
    let is_white = |m: &SquareMatrix| -> Result<bool, MorphismError> {
        white_of
            .get(m)
            .copied()
            .ok_or_else(|| MorphismError::ClosureViolation(format!("idempotent {} is not colored", matrix_key(m))))
    };
    let mut values = Vec::with_capacity(domain.len());
    for x in domain.elements() {
        let jc = jordan_chevalley(x);
        b.require(&jc.semisimple, "semisimple part")?;
        b.require(&jc.nilpotent, "nilpotent part")?;
        let sp = spectral_parts(&jc.semisimple)?;
        let mut value = target.zero();
        for (&t, pi) in sp.eigenvalues.iter().zip(&sp.idempotents) {
            if is_white(pi)? {
                value = target.add(&value, &target.from_residue(t));
            }
        }
        b.require(&sp.diagonalizable, "diagonalizable part")?;
        let y = &sp.residual;
        if !y.is_zero() {
            b.require(y, "residual part")?;
            let e = spectral_parts(y)?.support;
            let psi = b.psi(y, &e)?;
            if is_white(&e)? {
                value = target.add(&value, &psi);
            }
        }
        values.push(value);
    }
    let white = matrices.iter().zip(colors).filter(|(_, &c)| c == Color::White).map(|(m, _)| m.clone()).collect();
    Ok(Morphism { domain: domain.clone(), target, values, table: b.table, white })
}
