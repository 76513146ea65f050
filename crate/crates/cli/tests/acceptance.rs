//! Acceptance gate: one PASS/FAIL line per criterion; exits nonzero on any failure.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use kscolor::enumeration::datasets::{z28, z28_triples};
use kscolor::enumeration::{enumerate_idempotents, enumerate_projections};
use kscolor::matrix::{entrywise_hom, SquareMatrix};
use kscolor::morphism::{extend_coloring, symmetric_setting, verify_morphism, IntegerComposite};
use kscolor::partial_boolean::{bijection_triple, PartialBooleanAlgebra};
use kscolor::scalars::ScalarRing;
use kscolor::solver::{
    check_certificate, counting_obstruction_check, extract_constraints, lift_uncolorable, permutation_closure, solve,
    solve_parallel, Color, ConstraintSystem, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:.1?}, limit {limit:?}"))
}

fn replay(cs: &ConstraintSystem, want: Verdict, what: &str) -> Result<(), String> {
    let cert = solve(cs);
    ensure(cert.verdict == want, format!("{what}: {:?}, expected {want:?}", cert.verdict))?;
    check_certificate(cs, &cert).map_err(|e| format!("{what}: certificate rejected: {e}"))?;
    Ok(())
}

fn f(p: u64) -> ScalarRing {
    ScalarRing::prime_field(p).unwrap()
}

/// Unordered triples of pairwise orthogonal elements of `list` summing to `I`.
fn orthogonal_triples(list: &[SquareMatrix]) -> Vec<[usize; 3]> {
    let id = SquareMatrix::identity(list[0].ring(), list[0].n());
    let orth = |a: &SquareMatrix, b: &SquareMatrix| a.mul(b).is_zero() && b.mul(a).is_zero();
    let mut out = Vec::new();
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            for k in j + 1..list.len() {
                let (a, b, c) = (&list[i], &list[j], &list[k]);
                if orth(a, b) && orth(a, c) && orth(b, c) && a.add(b).add(c) == id {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

fn table1_reproduction() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let schutte = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schutte_vectors.json");
    let run = kscolor_cli::run([
        "kscolor".to_string(),
        "verify-table1".into(),
        "--schutte".into(),
        schutte.display().to_string(),
        "--out".into(),
        dir.path().display().to_string(),
    ]);
    ensure(run.code == 0, format!("exit {}: {:?}", run.code, run.message))?;
    let rows = run.report.ok_or("no report")?.verdicts["rows"].as_array().cloned().ok_or("no rows")?;
    let want_external = if schutte.is_file() { "MATCH" } else { "SKIPPED" };
    let expected = [
        ("M3(F2)_sym", "colorable", "MATCH"),
        ("M3(F3)_sym", "colorable", "MATCH"),
        ("M3(Z)_sym", "colorable", "MATCH"),
        ("M3(F5)_sym", "uncolorable", "MATCH"),
        ("M3(Z[1/30])_sym", "uncolorable", want_external),
        ("M3(Q)_sym", "uncolorable", want_external),
        ("M3(Z)", "uncolorable", "MATCH"),
    ];
    ensure(rows.len() == expected.len(), format!("{} rows", rows.len()))?;
    for (row, (ring, color, status)) in rows.iter().zip(expected) {
        ensure(row["ring"] == ring && row["status"] == status, format!("row {ring}: {}", row["status"]))?;
        ensure(row["expected"]["idempotents"] == color, format!("row {ring}: expected column {}", row["expected"]))?;
        if status == "MATCH" {
            let spectrum = if color == "colorable" { "nonempty" } else { "empty" };
            ensure(row["observed"]["idempotents"] == color && row["observed"]["spectrum"] == spectrum, format!("row {ring}: observed {}", row["observed"]))?;
        }
    }
    within(start, Duration::from_secs(300), "verify-table1")?;
    Ok(format!("7 rows as expected, external rows {want_external}, {:.1?}", start.elapsed()))
}

fn census_numbers() -> Outcome {
    let mut notes = Vec::new();
    for (p, rank1, proj1) in [(2u64, 28usize, 4usize), (3, 117, 9), (5, 775, 25)] {
        let idpt = enumerate_idempotents(p, 3).map_err(|e| e.to_string())?;
        let proj = enumerate_projections(p, 3).map_err(|e| e.to_string())?;
        let formula = ((p * p + p + 1) * p * p) as usize;
        ensure(idpt.rank(1).len() == rank1 && rank1 == formula, format!("p = {p}: {} rank-one idempotents", idpt.rank(1).len()))?;
        ensure(proj.rank(1).len() == proj1, format!("p = {p}: {} rank-one projections", proj.rank(1).len()))?;
        notes.push(format!("{rank1}/{proj1}"));
    }
    let rank1 = enumerate_projections(3, 3).unwrap().rank(1).to_vec();
    let oracle = orthogonal_triples(&rank1).len();
    let (cs, _) = extract_constraints(&rank1).map_err(|e| e.to_string())?;
    ensure(oracle == 4 && cs.decompositions.len() == 4, format!("F3 triples: oracle {oracle}, extracted {}", cs.decompositions.len()))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = kscolor_cli::run(["kscolor", "count", "--out", dir.path().to_str().unwrap()]);
    ensure(run.code == 0, "count command failed")?;
    let census = run.report.ok_or("no report")?.verdicts["census"].clone();
    let got: Vec<(Value, Value)> =
        census.as_array().unwrap().iter().map(|c| (c["rank1_idempotents"].clone(), c["rank1_projections"].clone())).collect();
    ensure(got == [(28.into(), 4.into()), (117.into(), 9.into()), (775.into(), 25.into())], "count command disagrees")?;
    ensure(census[1]["rank1_projection_triples"] == 4, "count command F3 triples")?;
    Ok(format!("rank-one idempotents/projections {}, F3 has 4 triples", notes.join(", ")))
}

fn z28_fidelity() -> Outcome {
    let start = Instant::now();
    let set = z28();
    let (cs, elems) = extract_constraints(&set.matrices).map_err(|e| e.to_string())?;
    ensure(elems.len() == 28, "z28 has duplicates")?;
    let mut want: Vec<Vec<usize>> = z28_triples().triples.iter().map(|t| {
        let mut v: Vec<usize> = t.iter().map(|i| i - 1).collect();
        v.sort_unstable();
        v
    }).collect();
    want.sort();
    ensure(cs.decompositions == want, format!("{} decompositions extracted, not the 20 listed triples", cs.decompositions.len()))?;
    let f2 = f(2);
    let reduced: HashSet<SquareMatrix> = set.matrices.iter().map(|m| entrywise_hom(m, &f2).unwrap()).collect();
    let layer: HashSet<SquareMatrix> = enumerate_idempotents(2, 3).unwrap().rank(1).iter().cloned().collect();
    ensure(reduced.len() == 28 && reduced == layer, "reduction mod 2 is not a bijection onto the rank-one layer")?;
    replay(&cs, Verdict::Unsat, "z28")?;
    let closure = permutation_closure(&set.matrices);
    let (ccs, _) = extract_constraints(&closure.elements).map_err(|e| e.to_string())?;
    replay(&ccs, Verdict::Unsat, "permutation closure")?;
    within(start, Duration::from_secs(10), "z28 checks")?;
    Ok(format!("20 triples, bijective reduction, z28 and its {}-element closure UNSAT and replayed, {:.1?}", closure.elements.len(), start.elapsed()))
}

fn lift() -> Outcome {
    let start = Instant::now();
    let lifted = lift_uncolorable(&z28().matrices).map_err(|e| e.to_string())?;
    ensure(lifted.iter().all(|m| m.n() == 4 && m.is_idempotent()), "lift is not in M4")?;
    let (cs, _) = extract_constraints(&lifted).map_err(|e| e.to_string())?;
    replay(&cs, Verdict::Unsat, "lifted z28")?;
    within(start, Duration::from_secs(60), "lift")?;
    Ok(format!("{} idempotents in M4(Z), UNSAT and replayed, {:.1?}", lifted.len(), start.elapsed()))
}

/// Colorings of the algebra's matrices found by testing every subset directly.
fn brute_colorings(list: &[SquareMatrix]) -> usize {
    let n = list.len();
    let id = SquareMatrix::identity(list[0].ring(), list[0].n());
    let orth: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| list[i].mul(&list[j]).is_zero() && list[j].mul(&list[i]).is_zero()).collect()).collect();
    let families: Vec<u32> = (1u32..1 << n)
        .filter(|&s| {
            let idx: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
            let pairwise = idx.iter().all(|&i| idx.iter().all(|&j| i == j || orth[i][j]));
            pairwise && idx.iter().fold(SquareMatrix::zero(list[0].ring(), list[0].n()), |acc, &i| acc.add(&list[i])) == id
        })
        .collect();
    (0u32..1 << n)
        .filter(|&white| {
            let pairs_ok = (0..n).all(|i| (0..n).all(|j| !(orth[i][j] && white >> i & 1 == 1 && white >> j & 1 == 1)));
            pairs_ok && families.iter().all(|&fam| (fam & white).count_ones() == 1)
        })
        .count()
}

fn bijection_theorem() -> Outcome {
    let mut notes = Vec::new();
    for p in [2u64, 3] {
        let alg = PartialBooleanAlgebra::closure_of(&enumerate_projections(p, 3).unwrap().all()).map_err(|e| e.to_string())?;
        let report = bijection_triple(&alg).map_err(|e| e.to_string())?;
        let (h, k, s) = report.counts();
        ensure(report.exhaustive && report.consistent(), format!("p = {p}: counts {h}/{k}/{s}, round trips {}", report.round_trips_ok))?;
        if p == 2 {
            let oracle = brute_colorings(alg.matrices().unwrap());
            ensure(oracle == 6 && k == 6, format!("p = 2: {k} colorings, oracle {oracle}"))?;
        }
        notes.push(format!("p = {p}: {} elements, {h} = {k} = {s}", alg.len()));
    }
    Ok(notes.join("; "))
}

fn counting_theorem() -> Outcome {
    let layer = enumerate_idempotents(2, 3).unwrap().rank(1).to_vec();
    let triples = orthogonal_triples(&layer);
    let through: Vec<usize> = (0..layer.len()).map(|e| triples.iter().filter(|t| t.contains(&e)).count()).collect();
    let n = through[0];
    ensure(through.iter().all(|&c| c == n), "oracle: triples per idempotent vary")?;
    let report = counting_obstruction_check(2).map_err(|e| e.to_string())?;
    ensure(report.constant && report.per_idempotent == Some(n) && report.triples == triples.len(), format!("report {report:?}, oracle N = {n}"))?;
    ensure(report.uncolorable_by_counting && !report.divisible_by_3, "28 should not be divisible by 3")?;
    let (cs, _) = extract_constraints(&layer).map_err(|e| e.to_string())?;
    replay(&cs, Verdict::Unsat, "rank-one layer of M3(F2)")?;
    Ok(format!("N = {n} triples through each of 28 idempotents, counting and solver both uncolorable"))
}

fn composite_pairs(comp: &IntegerComposite, seed: u64, count: usize) -> Result<(), String> {
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
        let c: [i64; 2] = [rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        let b = SquareMatrix::identity(&z, 3).scale(&z.from_i64(c[0])).add(&a.scale(&z.from_i64(c[1])));
        ensure(comp.check_pair(&a, &b).map_err(|e| e.to_string())?, format!("pair {checked} fails"))?;
        checked += 1;
    }
    Ok(())
}

fn appendix_morphisms() -> Outcome {
    let mut notes = Vec::new();
    for (p, size) in [(2u64, 64usize), (3, 729)] {
        let start = Instant::now();
        let setting = symmetric_setting(p).map_err(|e| e.to_string())?;
        ensure(setting.domain.len() == size && !setting.colorings.is_empty(), format!("p = {p}: domain {}", setting.domain.len()))?;
        for (k, colors) in setting.colorings.iter().enumerate() {
            let phi = extend_coloring(setting.domain.clone(), &setting.projections, colors).map_err(|e| format!("p = {p}, coloring {k}: {e}"))?;
            for (e, c) in setting.projections.matrices().unwrap().iter().zip(colors) {
                let v = phi.value(e).ok_or("idempotent outside the domain")?;
                ensure(phi.target().is_one(v) == (*c == Color::White), format!("p = {p}: φ disagrees with coloring {k}"))?;
            }
            let report = verify_morphism(&phi);
            ensure(report.passed(), format!("p = {p}, coloring {k}: {:?}", report.failure))?;
        }
        within(start, Duration::from_secs(300), &format!("p = {p}"))?;
        let phi = extend_coloring(setting.domain.clone(), &setting.projections, &setting.colorings[0]).unwrap();
        composite_pairs(&IntegerComposite::new(phi).map_err(|e| e.to_string())?, 1000 + p, 500)?;
        notes.push(format!("p = {p}: {} colorings verified on {size} elements in {:.1?}", setting.colorings.len(), start.elapsed()));
    }
    Ok(format!("{}; composite passes 500 seeded pairs", notes.join("; ")))
}

/// Valid colorings as white-masks, checked from the raw constraint lists.
fn oracle_colorings(cs: &ConstraintSystem) -> Vec<u32> {
    let pairs: Vec<u32> = cs.ortho_pairs.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
    let decs: Vec<u32> = cs.decompositions.iter().map(|d| d.iter().fold(0, |m, &v| m | 1 << v)).collect();
    (0u32..1 << cs.num_vars)
        .filter(|&w| pairs.iter().all(|&p| w & p != p) && decs.iter().all(|&d| (w & d).count_ones() == 1))
        .collect()
}

fn random_system(rng: &mut ChaCha8Rng, n: usize) -> ConstraintSystem {
    let decs = (0..rng.gen_range(1..=n / 2 + 1))
        .map(|_| {
            let size = rng.gen_range(2..=4.min(n));
            (0..size).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    let pairs = (0..rng.gen_range(0..=n)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    ConstraintSystem::new(n, pairs, decs)
}

fn solver_trustworthiness() -> Outcome {
    let mut corpus: Vec<ConstraintSystem> = Vec::new();
    // lines of the Fano plane: exactly one white per line forces 3|W| = 7
    let fano = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    corpus.push(ConstraintSystem::new(7, vec![], fano.iter().map(|l| l.to_vec()).collect()));
    for p in [2u64, 3] {
        let alg = PartialBooleanAlgebra::closure_of(&enumerate_projections(p, 3).unwrap().all()).unwrap();
        corpus.push(alg.constraint_system().clone());
        let (cs, _) = extract_constraints(enumerate_projections(p, 3).unwrap().rank(1)).unwrap();
        corpus.push(cs);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..24 {
        let n = if k % 6 == 5 { 22 } else { rng.gen_range(4..=16) };
        corpus.push(random_system(&mut rng, n));
    }
    let (mut sat, mut unsat) = (0, 0);
    for (i, cs) in corpus.iter().enumerate() {
        ensure(cs.num_vars <= 22, "system too large")?;
        let valid = oracle_colorings(cs);
        let cert = solve(cs);
        let expected = if valid.is_empty() { Verdict::Unsat } else { Verdict::Sat };
        ensure(cert.verdict == expected, format!("system {i}: solver {:?}, brute force {} colorings", cert.verdict, valid.len()))?;
        check_certificate(cs, &cert).map_err(|e| format!("system {i}: {e}"))?;
        if let Some(colors) = cert.coloring() {
            // white sorts before black at the first differing index
            let key = |w: u32| (0..cs.num_vars).map(|v| w >> v & 1 == 0).collect::<Vec<bool>>();
            let least = valid.iter().copied().min_by_key(|&w| key(w)).unwrap();
            let got = (0..cs.num_vars).fold(0u32, |m, v| if colors[v] == Color::White { m | 1 << v } else { m });
            ensure(got == least, format!("system {i}: not the lexicographically least coloring"))?;
            sat += 1;
        } else {
            unsat += 1;
        }
        let json = cert.to_json();
        ensure(solve(cs).to_json() == json && solve_parallel(cs, 3).to_json() == json, format!("system {i}: certificates differ across runs"))?;
    }
    ensure(corpus.len() >= 20 && sat > 0 && unsat > 0, format!("corpus {} systems, {sat} SAT, {unsat} UNSAT", corpus.len()))?;
    Ok(format!("{} systems ({sat} SAT, {unsat} UNSAT) agree with 2^n brute force; certificates byte-identical", corpus.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("table reproduction", table1_reproduction),
        ("census numbers", census_numbers),
        ("z28 fidelity", z28_fidelity),
        ("lift to M4(Z)", lift),
        ("bijection theorem", bijection_theorem),
        ("counting obstruction", counting_theorem),
        ("morphisms for p = 2, 3", appendix_morphisms),
        ("solver trustworthiness", solver_trustworthiness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
