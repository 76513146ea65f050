//! Colorability of the idempotents and emptiness of the prime spectrum for
//! six matrix rings, each row recomputed and compared with the expected table.

use std::path::Path;

use kscolor::enumeration::datasets::{load_schutte, DatasetError, SCHUTTE_FILE};
use kscolor::enumeration::enumerate_projections;
use kscolor::matrix::{entrywise_hom, SquareMatrix};
use kscolor::morphism::{extend_coloring, symmetric_setting, verify_morphism, IntegerComposite, SymmetricSetting};
use kscolor::partial_boolean::{bijection_triple, PartialBooleanAlgebra};
use kscolor::scalars::ScalarRing;
use kscolor::solver::Verdict;
use serde::Serialize;
use serde_json::json;

use crate::commands::{composite_pair_checks, constraints_for, input, solve_and_record};
use crate::dataset::{self, Dataset};
use crate::report::ArtifactSink;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Colorability {
    Colorable,
    Uncolorable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spectrum {
    Nonempty,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Columns {
    pub idempotents: Colorability,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowStatus {
    Match,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    /// Row of the table; the first row is checked at p = 2 and p = 3 separately.
    pub row: u8,
    pub ring: String,
    pub expected: Columns,
    pub observed: Option<Columns>,
    pub status: RowStatus,
    pub evidence: Vec<String>,
    pub certificates: Vec<String>,
}

const COLORABLE: Columns = Columns { idempotents: Colorability::Colorable, spectrum: Spectrum::Nonempty };
const UNCOLORABLE: Columns = Columns { idempotents: Colorability::Uncolorable, spectrum: Spectrum::Empty };

/// `(row, ring, expected)` in table order.
pub const EXPECTED: [(u8, &str, Columns); 7] = [
    (1, "M3(F2)_sym", COLORABLE),
    (1, "M3(F3)_sym", COLORABLE),
    (2, "M3(Z)_sym", COLORABLE),
    (3, "M3(F5)_sym", UNCOLORABLE),
    (4, "M3(Z[1/30])_sym", UNCOLORABLE),
    (5, "M3(Q)_sym", UNCOLORABLE),
    (6, "M3(Z)", UNCOLORABLE),
];

impl Table1Row {
    fn new(index: usize, observed: Option<Columns>, evidence: Vec<String>, certificates: Vec<String>) -> Self {
        let (row, ring, expected) = EXPECTED[index];
        let status = match observed {
            None => RowStatus::Skipped,
            Some(o) if o == expected => RowStatus::Match,
            Some(_) => RowStatus::Mismatch,
        };
        Table1Row { row, ring: ring.into(), expected, observed, status, evidence, certificates }
    }

    /// A row whose checks broke before either column could be read off.
    fn failed(index: usize, evidence: Vec<String>, certificates: Vec<String>) -> Self {
        Table1Row { status: RowStatus::Mismatch, ..Self::new(index, None, evidence, certificates) }
    }
}

fn colorability(v: Verdict) -> Colorability {
    match v {
        Verdict::Sat => Colorability::Colorable,
        Verdict::Unsat => Colorability::Uncolorable,
    }
}

fn spectrum(nonempty: bool) -> Spectrum {
    if nonempty {
        Spectrum::Nonempty
    } else {
        Spectrum::Empty
    }
}

/// Solves the projection algebra and compares the three bijective sets.
fn symmetric_row(
    sink: &mut ArtifactSink,
    index: usize,
    setting: &SymmetricSetting,
    p: u64,
    parallel: usize,
) -> Result<Table1Row, CliError> {
    let alg = &setting.projections;
    let (summary, _) = solve_and_record(sink, alg.constraint_system(), &format!("table1-proj-p{p}"), parallel)?;
    let bij = bijection_triple(alg).map_err(input)?;
    let (h, k, s) = bij.counts();
    let art = sink.write_json(
        &format!("table1-proj-p{p}.bijection.json"),
        &json!({ "elements": alg.len(), "counts": [h, k, s], "exhaustive": bij.exhaustive, "round_trips_ok": bij.round_trips_ok, "ideals": bij.ideals }),
    )?;
    let evidence = vec![
        format!("solver on the {} projections: {:?}", alg.len(), summary.verdict),
        format!("|hom(B,2)| = {h}, |KS(B)| = {k}, |pSpec(B)| = {s}, round trips {}", if bij.consistent() { "ok" } else { "FAILED" }),
    ];
    let certificates = vec![summary.certificate, art.path];
    if !bij.consistent() {
        return Ok(Table1Row::failed(index, evidence, certificates));
    }
    let observed = Columns { idempotents: colorability(summary.verdict), spectrum: spectrum(s > 0) };
    Ok(Table1Row::new(index, Some(observed), evidence, certificates))
}

/// A verified morphism at p = 2, pulled back along reduction mod 2.
fn integer_symmetric_row(sink: &mut ArtifactSink, setting: &SymmetricSetting, seed: u64) -> Result<Table1Row, CliError> {
    let Some(first) = setting.colorings.first() else {
        return Ok(Table1Row::failed(2, vec!["no coloring of the p = 2 projections to extend".into()], vec![]));
    };
    let phi = extend_coloring(setting.domain.clone(), &setting.projections, first).map_err(|e| CliError::Mismatch(e.to_string()))?;
    let report = verify_morphism(&phi);
    let art = sink.write_json("table1-z-sym.morphism.json", &json!({ "map": phi.dump(), "verification": report }))?;
    let comp = IntegerComposite::new(phi).map_err(input)?;
    let z = ScalarRing::integers();
    let unital = comp.morphism().target().is_one(&comp.eval(&SquareMatrix::identity(&z, 3)).map_err(input)?);
    let two = SquareMatrix::identity(&z, 3).scale(&z.from_i64(2));
    let kills_two = comp.kernel_contains(&two).map_err(input)?;
    let (checked, bad) = composite_pair_checks(&comp, seed, 500)?;
    let ok = report.passed() && unital && kills_two && bad.is_none();
    let evidence = vec![
        format!(
            "M3(F2)_sym -> GF(2^6) verified on {} elements and {} commuting pairs",
            report.elements, report.commuting_pairs
        ),
        format!("composite with reduction mod 2: 2I in the kernel, {checked} seeded commuting integer pairs respected"),
        "its values on idempotents form a coloring, and its kernel is a prime partial ideal".into(),
    ];
    if !ok {
        return Ok(Table1Row::failed(2, evidence, vec![art.path]));
    }
    Ok(Table1Row::new(2, Some(COLORABLE), evidence, vec![art.path]))
}

fn uncolorable_subset_row(
    sink: &mut ArtifactSink,
    index: usize,
    data: &Dataset,
    stem: &str,
    parallel: usize,
) -> Result<Table1Row, CliError> {
    let (cs, _) = constraints_for(data)?;
    let (summary, _) = solve_and_record(sink, &cs, stem, parallel)?;
    let mut evidence = vec![format!("solver on {} ({} elements over {}): {:?}", data.name, cs.num_vars, data.ring, summary.verdict)];
    if summary.verdict == Verdict::Sat {
        evidence.push("a colorable subset decides neither column".into());
        return Ok(Table1Row::failed(index, evidence, vec![summary.certificate]));
    }
    evidence.push("an uncolorable subset leaves the idempotents uncolorable, so the spectrum is empty".into());
    Ok(Table1Row::new(index, Some(UNCOLORABLE), evidence, vec![summary.certificate]))
}

/// Recomputes every row. Rows needing the Schütte vectors are skipped when
/// the file is absent.
pub fn verify_table1(sink: &mut ArtifactSink, schutte: Option<&Path>, parallel: usize, seed: u64) -> Result<Vec<Table1Row>, CliError> {
    let mut rows = Vec::with_capacity(EXPECTED.len());

    let f2 = symmetric_setting(2).map_err(input)?;
    rows.push(symmetric_row(sink, 0, &f2, 2, parallel)?);
    let f3 = symmetric_setting(3).map_err(input)?;
    rows.push(symmetric_row(sink, 1, &f3, 3, parallel)?);
    rows.push(integer_symmetric_row(sink, &f2, seed)?);

    let f5 = dataset::load("f5_25", None, None)?;
    let mut row = uncolorable_subset_row(sink, 3, &f5, "table1-f5_25", parallel)?;
    let proj5 = enumerate_projections(5, 3).map_err(input)?.all();
    let alg = PartialBooleanAlgebra::from_idempotents(&proj5, true).map_err(input)?;
    let bij = bijection_triple(&alg).map_err(input)?;
    let (h, k, s) = bij.counts();
    let art = sink.write_json(
        "table1-proj-p5.bijection.json",
        &json!({ "elements": alg.len(), "counts": [h, k, s], "exhaustive": bij.exhaustive, "round_trips_ok": bij.round_trips_ok }),
    )?;
    row.evidence.push(format!("projection algebra of M3(F5), {} elements: |hom(B,2)| = {h}, |KS(B)| = {k}, |pSpec(B)| = {s}", alg.len()));
    row.certificates.push(art.path);
    rows.push(match row.observed {
        Some(obs) if bij.consistent() => {
            Table1Row::new(3, Some(Columns { spectrum: spectrum(s > 0), ..obs }), row.evidence, row.certificates)
        }
        _ => Table1Row::failed(3, row.evidence, row.certificates),
    });

    let path = schutte.map(Path::to_path_buf).unwrap_or_else(|| SCHUTTE_FILE.into());
    match load_schutte(&path) {
        Ok(cfg) => {
            let matrices = cfg.projections().map_err(input)?;
            let local = Dataset { name: "schutte".into(), ring: cfg.ring.clone(), matrices, labels: None, named: vec![] };
            rows.push(uncolorable_subset_row(sink, 4, &local, "table1-schutte-z30", parallel)?);
            let q = ScalarRing::rationals_all();
            let over_q = local.matrices.iter().map(|m| entrywise_hom(m, &q)).collect::<Result<Vec<_>, _>>().map_err(input)?;
            let rational = Dataset { name: "schutte".into(), ring: q, matrices: over_q, labels: None, named: vec![] };
            rows.push(uncolorable_subset_row(sink, 5, &rational, "table1-schutte-q", parallel)?);
        }
        Err(DatasetError::MissingExternalData { path, .. }) => {
            for index in [4, 5] {
                rows.push(Table1Row::new(index, None, vec![format!("SKIPPED (external data required): no Schütte vectors at {path}")], vec![]));
            }
        }
        Err(e) => return Err(input(e)),
    }

    let z28 = dataset::load("z28", None, None)?;
    rows.push(uncolorable_subset_row(sink, 6, &z28, "table1-z28", parallel)?);
    Ok(rows)
}
