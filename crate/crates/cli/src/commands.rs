use std::collections::BTreeMap;

use kscolor::enumeration::{enumerate_idempotents, enumerate_projections, gaussian_binomial};
use kscolor::matrix::{MatrixJson, SquareMatrix};
use kscolor::morphism::{extend_coloring, symmetric_setting, verify_morphism, IntegerComposite};
use kscolor::partial_boolean::PartialBooleanAlgebra;
use kscolor::scalars::{parse_ring, RingKind, ScalarRing};
use kscolor::solver::{
    audit_constraints, check_certificate, counting_obstruction_check, extract_constraints, lift_uncolorable,
    name_decompositions, permutation_closure, solve, solve_parallel, to_dimacs, Certificate, ConstraintSystem, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dataset::{self, Dataset};
use crate::report::ArtifactSink;
use crate::{table1, Cli, CliError, Command, CommandOutput, DatasetArgs, Kind};

pub(crate) const DEFAULT_SEED: u64 = 0x5eed;

pub(crate) fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub(crate) fn dispatch(cli: &Cli, sink: &mut ArtifactSink) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::Count { q, n } => count(sink, q, *n),
        Command::Enumerate { ring, n, kind } => enumerate(sink, ring, *n, *kind),
        Command::Color(args) => color(sink, args, cli.parallel),
        Command::VerifyTable1 { schutte } => {
            let seed = cli.seed.unwrap_or(DEFAULT_SEED);
            let rows = table1::verify_table1(sink, schutte.as_deref(), cli.parallel, seed)?;
            let bad: Vec<String> = rows.iter().filter(|r| r.status == table1::RowStatus::Mismatch).map(|r| r.ring.clone()).collect();
            Ok(CommandOutput {
                input_digest: None,
                seed: Some(seed),
                verdicts: json!({ "rows": rows }),
                mismatch: (!bad.is_empty()).then(|| format!("rows differ from the expected table: {}", bad.join(", "))),
            })
        }
        Command::Lift(args) => lift(sink, args, cli.parallel),
        Command::Closure(args) => closure(sink, args, cli.parallel),
        Command::Morphism { p, pairs } => morphism(sink, *p, *pairs, cli.seed.unwrap_or(DEFAULT_SEED)),
        Command::CheckIdeal { data, subset } => check_ideal(sink, data, subset),
        Command::ExportCnf { data, cnf } => export_cnf(sink, data, cnf.as_deref()),
    }
}

fn load(args: &DatasetArgs) -> Result<Dataset, CliError> {
    dataset::load(&args.dataset, args.ring.as_deref(), args.schutte.as_deref())
}

fn stem(name: &str) -> String {
    let base = std::path::Path::new(name).file_stem().map_or(name.into(), |s| s.to_string_lossy().into_owned());
    base.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Constraints of a dataset with its labels and named decompositions, audited
/// against the matrices by direct multiplication.
pub(crate) fn constraints_for(data: &Dataset) -> Result<(ConstraintSystem, Vec<SquareMatrix>), CliError> {
    let (mut cs, elems) = extract_constraints(&data.matrices).map_err(input)?;
    if let Some(labels) = data.labels.as_ref().filter(|l| l.len() == elems.len()) {
        cs = cs.with_labels(labels.clone());
    }
    name_decompositions(&mut cs, &data.named);
    audit_constraints(&cs, &elems).map_err(|e| CliError::Mismatch(format!("constraint audit failed: {e}")))?;
    Ok((cs, elems))
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct SolveSummary {
    pub verdict: Verdict,
    pub variables: usize,
    pub pairs: usize,
    pub decompositions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub white: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation_depth: Option<usize>,
    /// Conflict leaves confirmed by the replay.
    pub replayed_leaves: usize,
    pub certificate: String,
}

/// Solves, replays the certificate, and writes the system and the certificate.
pub(crate) fn solve_and_record(
    sink: &mut ArtifactSink,
    cs: &ConstraintSystem,
    stem: &str,
    parallel: usize,
) -> Result<(SolveSummary, Certificate), CliError> {
    let cert = if parallel > 0 { solve_parallel(cs, parallel) } else { solve(cs) };
    let leaves = check_certificate(cs, &cert).map_err(|e| CliError::Mismatch(format!("certificate for {stem} rejected: {e}")))?;
    sink.write_json(&format!("{stem}.constraints.json"), cs)?;
    let art = sink.write_bytes(&format!("{stem}.certificate.json"), format!("{}\n", cert.to_json()).as_bytes())?;
    let summary = SolveSummary {
        verdict: cert.verdict,
        variables: cs.num_vars,
        pairs: cs.ortho_pairs.len(),
        decompositions: cs.decompositions.len(),
        white: cert.white.as_ref().map(|w| w.iter().map(|&i| cs.var_labels[i].clone()).collect()),
        refutation_nodes: cert.refutation.as_ref().map(|r| r.node_count()),
        refutation_depth: cert.refutation.as_ref().map(|r| r.depth()),
        replayed_leaves: leaves,
        certificate: art.path,
    };
    Ok((summary, cert))
}

fn matrices_json(list: &[SquareMatrix]) -> Vec<MatrixJson> {
    list.iter().map(MatrixJson::from_matrix).collect()
}

fn count(sink: &mut ArtifactSink, qs: &[u64], n: usize) -> Result<CommandOutput, CliError> {
    if n == 0 || n > 4 {
        return Err(CliError::Input(format!("n = {n} is outside 1..=4")));
    }
    let mut census = Vec::new();
    let mut mismatches = Vec::new();
    for &q in qs {
        ScalarRing::prime_field(q).map_err(input)?;
        let idpt = enumerate_idempotents(q, n).map_err(input)?;
        let proj = enumerate_projections(q, n).map_err(input)?;
        let binomials: Vec<String> = (0..=n).map(|k| gaussian_binomial(n as u32, k as u32, q).to_string()).collect();
        // a rank-one idempotent is a line together with a complementary hyperplane
        let rank1_formula = gaussian_binomial(n as u32, 1, q) * (q as u128).pow(n as u32 - 1);
        let rank1 = idpt.rank(1).len();
        if rank1 as u128 != rank1_formula {
            mismatches.push(format!("q = {q}: {rank1} rank-one idempotents, formula gives {rank1_formula}"));
        }
        let mut entry = json!({
            "q": q,
            "n": n,
            "gaussian_binomials": binomials,
            "idempotents_by_rank": (0..=n).map(|r| idpt.rank(r).len()).collect::<Vec<_>>(),
            "idempotents": idpt.len(),
            "rank1_idempotents": rank1,
            "rank1_formula": rank1_formula.to_string(),
            "projections_by_rank": (0..=n).map(|r| proj.rank(r).len()).collect::<Vec<_>>(),
            "rank1_projections": proj.rank(1).len(),
        });
        if n == 3 {
            let (cs, _) = extract_constraints(proj.rank(1)).map_err(input)?;
            entry["rank1_projection_triples"] = json!(cs.decompositions.len());
            entry["rank1_idempotent_triples"] = serde_json::to_value(counting_obstruction_check(q).map_err(input)?).unwrap();
        }
        census.push(entry);
    }
    sink.write_json("census.json", &census)?;
    Ok(CommandOutput {
        input_digest: None,
        seed: None,
        verdicts: json!({ "census": census }),
        mismatch: (!mismatches.is_empty()).then(|| mismatches.join("; ")),
    })
}

fn enumerate(sink: &mut ArtifactSink, ring: &str, n: usize, kind: Kind) -> Result<CommandOutput, CliError> {
    let field = parse_ring(ring).map_err(input)?;
    if !matches!(field.kind(), RingKind::PrimeField { .. }) {
        return Err(CliError::Input(format!("enumeration needs a prime field, got {field}")));
    }
    if n == 0 || n > 4 {
        return Err(CliError::Input(format!("n = {n} is outside 1..=4")));
    }
    let p = field.characteristic();
    let inv = match kind {
        Kind::Idempotents => enumerate_idempotents(p, n),
        Kind::Projections => enumerate_projections(p, n),
    }
    .map_err(input)?;
    let by_rank: BTreeMap<usize, Vec<MatrixJson>> = (0..=n).map(|r| (r, matrices_json(inv.rank(r)))).collect();
    let kind_name = match kind {
        Kind::Idempotents => "idempotents",
        Kind::Projections => "projections",
    };
    let art = sink.write_json(
        &format!("{kind_name}-p{p}-n{n}.json"),
        &json!({ "ring": field.to_string(), "n": n, "kind": kind_name, "by_rank": by_rank }),
    )?;
    Ok(CommandOutput {
        input_digest: None,
        seed: None,
        verdicts: json!({
            "ring": field.to_string(),
            "n": n,
            "kind": kind_name,
            "total": inv.len(),
            "by_rank": (0..=n).map(|r| inv.rank(r).len()).collect::<Vec<_>>(),
            "complement_closed": inv.is_complement_closed(),
            "inventory": art.path,
        }),
        mismatch: None,
    })
}

fn color(sink: &mut ArtifactSink, args: &DatasetArgs, parallel: usize) -> Result<CommandOutput, CliError> {
    let data = load(args)?;
    let (cs, _) = constraints_for(&data)?;
    let (summary, _) = solve_and_record(sink, &cs, &stem(&data.name), parallel)?;
    Ok(CommandOutput {
        input_digest: Some(data.digest()),
        seed: None,
        verdicts: json!({ "dataset": data.name, "ring": data.ring.to_string(), "solve": summary }),
        mismatch: None,
    })
}

fn lift(sink: &mut ArtifactSink, args: &DatasetArgs, parallel: usize) -> Result<CommandOutput, CliError> {
    let data = load(args)?;
    let lifted = lift_uncolorable(&data.matrices).map_err(input)?;
    let name = format!("{}-lift", stem(&data.name));
    let art = sink.write_json(&format!("{name}.json"), &json!({ "ring": data.ring.to_string(), "matrices": matrices_json(&lifted) }))?;
    let lifted_data = Dataset { name: name.clone(), ring: data.ring.clone(), matrices: lifted, labels: None, named: vec![] };
    let (cs, _) = constraints_for(&lifted_data)?;
    let (summary, _) = solve_and_record(sink, &cs, &name, parallel)?;
    Ok(CommandOutput {
        input_digest: Some(data.digest()),
        seed: None,
        verdicts: json!({
            "dataset": data.name,
            "n": data.matrices.first().map_or(0, SquareMatrix::n),
            "lifted_n": lifted_data.matrices.first().map_or(0, SquareMatrix::n),
            "lifted_elements": lifted_data.matrices.len(),
            "lifted_set": art.path,
            "solve": summary,
        }),
        mismatch: None,
    })
}

fn closure(sink: &mut ArtifactSink, args: &DatasetArgs, parallel: usize) -> Result<CommandOutput, CliError> {
    let data = load(args)?;
    let pc = permutation_closure(&data.matrices);
    let name = format!("{}-closure", stem(&data.name));
    let provenance: Vec<Value> =
        pc.provenance.iter().map(|&(g, i)| json!({ "permutation": pc.permutations[g], "original": i })).collect();
    let art = sink.write_json(
        &format!("{name}.json"),
        &json!({ "ring": data.ring.to_string(), "matrices": matrices_json(&pc.elements), "provenance": provenance }),
    )?;
    let closed = Dataset { name: name.clone(), ring: data.ring.clone(), matrices: pc.elements.clone(), labels: None, named: vec![] };
    let (cs, _) = constraints_for(&closed)?;
    let (summary, _) = solve_and_record(sink, &cs, &name, parallel)?;
    Ok(CommandOutput {
        input_digest: Some(data.digest()),
        seed: None,
        verdicts: json!({
            "dataset": data.name,
            "elements": data.matrices.len(),
            "closure_elements": pc.elements.len(),
            "closure_set": art.path,
            "solve": summary,
        }),
        mismatch: None,
    })
}

/// Seeded symmetric integer pairs `(a, c0 + c1 a + c2 a^2)` with entries in
/// `[-9, 9]`; returns how many were checked and the first failing pair.
pub(crate) fn composite_pair_checks(
    comp: &IntegerComposite,
    seed: u64,
    count: usize,
) -> Result<(usize, Option<(MatrixJson, MatrixJson)>), CliError> {
    let z = ScalarRing::integers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < count {
        let mut rows = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                rows[i][j] = rng.gen_range(-9..=9);
                rows[j][i] = rows[i][j];
            }
        }
        let a = SquareMatrix::from_i64_rows(&z, &[&rows[0], &rows[1], &rows[2]]);
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let b = SquareMatrix::identity(&z, 3)
            .scale(&z.from_i64(c[0]))
            .add(&a.scale(&z.from_i64(c[1])))
            .add(&a.mul(&a).scale(&z.from_i64(c[2])));
        let small = b.entries().iter().all(|e| z.format(e).parse::<i64>().is_ok_and(|v| (-9..=9).contains(&v)));
        if !small {
            continue;
        }
        if !comp.check_pair(&a, &b).map_err(input)? {
            return Ok((checked, Some((MatrixJson::from_matrix(&a), MatrixJson::from_matrix(&b)))));
        }
        checked += 1;
    }
    Ok((checked, None))
}

fn morphism(sink: &mut ArtifactSink, p: u64, pairs: usize, seed: u64) -> Result<CommandOutput, CliError> {
    if p != 2 && p != 3 {
        return Err(CliError::Input(format!("morphisms are built for p = 2 or 3, got {p}")));
    }
    let setting = symmetric_setting(p).map_err(input)?;
    sink.write_json(&format!("projections-p{p}.json"), &setting.projections.dump())?;
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (k, colors) in setting.colorings.iter().enumerate() {
        let phi = extend_coloring(setting.domain.clone(), &setting.projections, colors).map_err(|e| {
            CliError::Mismatch(format!("coloring {k} does not extend: {e}"))
        })?;
        let report = verify_morphism(&phi);
        if !report.passed() {
            failures.push(format!("coloring {k}: {:?}", report.failure));
        }
        let art = sink.write_json(&format!("morphism-p{p}-{k}.json"), &json!({ "coloring": k, "map": phi.dump(), "verification": report }))?;
        results.push(json!({
            "coloring": k,
            "white": kscolor::partial_boolean::ColoringJson::from_colors(colors).white,
            "degrees": phi.degrees(),
            "verification": report,
            "dump": art.path,
        }));
    }
    let first = setting.colorings.first().ok_or_else(|| CliError::Mismatch(format!("no coloring exists for p = {p}")))?;
    let phi = extend_coloring(setting.domain.clone(), &setting.projections, first).map_err(input)?;
    let comp = IntegerComposite::new(phi).map_err(input)?;
    let (checked, bad) = composite_pair_checks(&comp, seed, pairs)?;
    if let Some((a, b)) = &bad {
        failures.push(format!("composite fails on {a:?}, {b:?}"));
    }
    let composite = json!({ "coloring": 0, "pairs_checked": checked, "failure": bad });
    sink.write_json(&format!("composite-p{p}.json"), &composite)?;
    Ok(CommandOutput {
        input_digest: None,
        seed: Some(seed),
        verdicts: json!({
            "p": p,
            "domain": setting.domain.len(),
            "colorings": setting.colorings.len(),
            "all_verified": failures.is_empty(),
            "morphisms": results,
            "composite": composite,
        }),
        mismatch: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

fn check_ideal(sink: &mut ArtifactSink, args: &DatasetArgs, subset: &[usize]) -> Result<CommandOutput, CliError> {
    let data = load(args)?;
    let alg = PartialBooleanAlgebra::closure_of(&data.matrices).map_err(input)?;
    if let Some(&bad) = subset.iter().find(|&&i| i >= alg.len()) {
        return Err(CliError::Input(format!("index {bad} is outside the algebra of {} elements", alg.len())));
    }
    let mut member = vec![false; alg.len()];
    for &i in subset {
        member[i] = true;
    }
    let prime = alg.is_prime_partial_ideal(&member).map_err(input)?;
    let complement: Vec<bool> = member.iter().map(|b| !b).collect();
    let ultrafilter = alg.is_partial_ultrafilter(&complement).map_err(input)?;
    let art = sink.write_json(&format!("{}-algebra.json", stem(&data.name)), &alg.dump())?;
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    let result = json!({
        "dataset": data.name,
        "algebra_elements": alg.len(),
        "algebra": art.path,
        "subset": members,
        "prime_partial_ideal": prime,
        "complement_is_partial_ultrafilter": ultrafilter,
    });
    sink.write_json(&format!("{}-ideal.json", stem(&data.name)), &result)?;
    Ok(CommandOutput { input_digest: Some(data.digest()), seed: None, verdicts: result, mismatch: None })
}

fn export_cnf(sink: &mut ArtifactSink, args: &DatasetArgs, path: Option<&std::path::Path>) -> Result<CommandOutput, CliError> {
    let data = load(args)?;
    let (cs, _) = constraints_for(&data)?;
    let text = to_dimacs(&cs);
    let art = match path {
        Some(p) => sink.write_at(p, text.as_bytes())?,
        None => sink.write_bytes(&format!("{}.cnf", stem(&data.name)), text.as_bytes())?,
    };
    let clauses = text.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).count();
    Ok(CommandOutput {
        input_digest: Some(data.digest()),
        seed: None,
        verdicts: json!({ "dataset": data.name, "variables": cs.num_vars, "clauses": clauses, "cnf": art.path }),
        mismatch: None,
    })
}
