//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use momilp::json::{candidates_to_json, carved_to_json, front_to_json};
use momilp::parse_problem;
use momilp_core::geometry::{classify_polytope_dominance, hrep_to_vrep, DominanceRelation, Polytope};
use momilp_core::lp::{lexicographic_stages, solve_lp, verify_certificate, Bound, Constraint, LinearProgram, LpOutcome};
use momilp_core::milp::{solve_milp_by_enumeration, solve_milp_lex, HammingCut};
use momilp_core::oracle::{check_front, oracle_front, sample_convex};
use momilp_core::phase1::{collect, CandidateSet, CollectOptions, Strategy};
use momilp_core::phase2::{carve, verify_disjoint, CarvedSet, DEFAULT_BUDGET};
use momilp_core::phase3::assemble_front;
use momilp_core::rational::{dominates, format_rational, int, rat};
use momilp_core::{MomilpProblem, OracleFront, ParetoFront, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SLICE_LIMIT: u128 = 4096;
const STRATEGIES: [Strategy; 2] = [Strategy::Exhaustive, Strategy::MilpDriven];

struct Fixture {
    name: String,
    problem: MomilpProblem,
}

struct Solved {
    candidates: CandidateSet,
    carved: CarvedSet,
    front: ParetoFront,
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load_fixtures() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "momilp"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| Fixture {
            name: p.file_stem().unwrap().to_string_lossy().into_owned(),
            problem: parse_problem(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display())),
        })
        .collect()
}

fn solve(problem: &MomilpProblem, strategy: Strategy) -> Result<Solved, String> {
    let options = CollectOptions {
        strategy,
        slice_limit: SLICE_LIMIT,
    };
    let candidates = collect(problem, &options).map_err(|e| format!("phase 1: {e}"))?;
    let carved = carve(&candidates, DEFAULT_BUDGET).map_err(|e| format!("phase 2: {e}"))?;
    let front = assemble_front(&carved).map_err(|e| format!("phase 3: {e}"))?;
    Ok(Solved {
        candidates,
        carved,
        front,
    })
}

fn resolution_for(problem: &MomilpProblem) -> usize {
    if problem.k() == 2 {
        21
    } else {
        11
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Oracle equivalence of both strategies' fronts on the given fixtures.
fn oracle_equivalence(fixtures: &[&Fixture], oracles: &[(String, OracleFront)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for f in fixtures {
        let oracle = &oracles.iter().find(|(n, _)| *n == f.name).unwrap().1;
        for strategy in STRATEGIES {
            checked += 1;
            match solve(&f.problem, strategy).and_then(|s| {
                check_front(&s.front, oracle, 200, 7).map_err(|e| e.to_string())
            }) {
                Ok(report) if report.agrees() => {}
                Ok(report) => failures.push(format!(
                    "{} {:?}: {} misses, {} false claims",
                    f.name,
                    strategy,
                    report.misses.len(),
                    report.false_claims.len()
                )),
                Err(e) => failures.push(format!("{} {:?}: {e}", f.name, strategy)),
            }
        }
    }
    if failures.is_empty() {
        outcome(true, format!("{} fixtures, {checked} fronts, 0 misses, 0 false claims", fixtures.len()))
    } else {
        outcome(false, failures.join("; "))
    }
}

/// Minimum weighted-sum value over every slice.
fn weighted_minimum(problem: &MomilpProblem, w: &[Rational]) -> Option<Rational> {
    let n = problem.num_vars();
    let objective: Vec<Rational> = (0..n)
        .map(|j| problem.objectives().iter().zip(w).map(|(row, wi)| &row[j] * wi).sum())
        .collect();
    let offset: Rational = problem.offsets().iter().zip(w).map(|(o, wi)| o * wi).sum();
    problem
        .slices()
        .filter_map(|s| match solve_lp(&problem.slice_lp(&s).with_objective(objective.clone())) {
            LpOutcome::Optimal(sol) => Some(sol.value + &offset),
            _ => None,
        })
        .min()
}

fn criterion_nonsupported(fixtures: &[Fixture], oracles: &[(String, OracleFront)]) -> Outcome {
    let weights: Vec<Vec<Rational>> = (1..=200).map(|j| vec![rat(j, 201), rat(201 - j, 201)]).collect();
    let mut found = 0;
    let mut failures = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    for f in fixtures.iter().filter(|f| f.problem.k() == 2) {
        let oracle = &oracles.iter().find(|(n, _)| *n == f.name).unwrap().1;
        let minima: Vec<Rational> = weights
            .iter()
            .map(|w| weighted_minimum(&f.problem, w).expect("feasible fixture"))
            .collect();
        let unsupported: Vec<&Vec<Rational>> = oracle
            .points
            .iter()
            .filter(|y| {
                weights
                    .iter()
                    .zip(&minima)
                    .all(|(w, m)| &(&w[0] * &y[0] + &w[1] * &y[1]) > m)
            })
            .collect();
        if unsupported.is_empty() {
            continue;
        }
        seen.push(format!("{} {}", f.name, unsupported.len()));
        let front = match solve(&f.problem, Strategy::Exhaustive) {
            Ok(s) => s.front,
            Err(e) => {
                failures.push(format!("{}: {e}", f.name));
                continue;
            }
        };
        for y in unsupported {
            found += 1;
            if !front.contains(y).unwrap() {
                failures.push(format!("{}: {y:?} not in front", f.name));
            }
        }
    }
    for name in ["nonsupported_pure", "nonsupported_mixed"] {
        if !seen.iter().any(|s| s.split(' ').next() == Some(name)) {
            failures.push(format!("{name}: no non-supported oracle point"));
        }
    }
    if found > 0 && failures.is_empty() {
        outcome(true, format!("{found} non-supported oracle points, all in the front ({})", seen.join(", ")))
    } else {
        outcome(false, failures.join("; "))
    }
}

fn criterion_containment(fixtures: &[Fixture], oracles: &[(String, OracleFront)]) -> Outcome {
    let mut failures = Vec::new();
    let mut points = 0;
    for f in fixtures {
        let oracle = &oracles.iter().find(|(n, _)| *n == f.name).unwrap().1;
        for strategy in STRATEGIES {
            let c = match collect(
                &f.problem,
                &CollectOptions {
                    strategy,
                    slice_limit: SLICE_LIMIT,
                },
            ) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("{} {strategy:?}: {e}", f.name));
                    continue;
                }
            };
            for y in &oracle.points {
                points += 1;
                if !c.pieces.iter().any(|p| p.polytope.contains(y)) {
                    failures.push(format!("{} {strategy:?}: {y:?} outside the candidates", f.name));
                }
            }
        }
    }
    if failures.is_empty() {
        outcome(true, format!("{points} oracle points over both strategies, all inside a candidate"))
    } else {
        outcome(false, failures.join("; "))
    }
}

fn bounding_box(polys: &[&Polytope]) -> Vec<(Rational, Rational)> {
    let dim = polys[0].dim();
    (0..dim)
        .map(|i| {
            let vals = polys.iter().flat_map(|p| p.vertices().iter().map(move |v| v[i].clone()));
            let lo = vals.clone().min().unwrap() - int(1);
            let hi = vals.max().unwrap() + int(1);
            (lo, hi)
        })
        .collect()
}

fn random_in_box(bx: &[(Rational, Rational)], rng: &mut impl Rng) -> Vec<Rational> {
    bx.iter()
        .map(|(lo, hi)| lo + (hi - lo) * rat(rng.gen_range(0..=1000), 1000))
        .collect()
}

fn criterion_carving(fixtures: &[Fixture]) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in fixtures {
        for strategy in STRATEGIES {
            let s = match solve(&f.problem, strategy) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{} {strategy:?}: {e}", f.name));
                    continue;
                }
            };
            let before: Vec<&Polytope> = s.candidates.pieces.iter().map(|p| &p.polytope).collect();
            let after: Vec<&Polytope> = s.carved.pieces.iter().map(|p| &p.polytope).collect();
            let owned: Vec<Polytope> = after.iter().map(|p| (*p).clone()).collect();
            if !verify_disjoint(&owned).unwrap() {
                failures.push(format!("{} {strategy:?}: carved pieces overlap", f.name));
            }
            let bx = bounding_box(&before);
            let mut disagreements = 0;
            for i in 0..1000 {
                let y = match i % 3 {
                    0 => sample_convex(before[i / 3 % before.len()].vertices(), &mut rng),
                    1 => sample_convex(after[i / 3 % after.len()].vertices(), &mut rng),
                    _ => random_in_box(&bx, &mut rng),
                };
                let a = before.iter().any(|p| p.contains(&y));
                let b = after.iter().any(|p| p.contains(&y));
                if a != b {
                    disagreements += 1;
                }
            }
            if disagreements > 0 {
                failures.push(format!("{} {strategy:?}: {disagreements}/1000 membership disagreements", f.name));
            }
        }
    }
    if failures.is_empty() {
        outcome(true, format!("{} fixtures x 2 strategies disjoint, 1000 membership probes each agree", fixtures.len()))
    } else {
        outcome(false, failures.join("; "))
    }
}

/// For ordered piece pairs with a point of `Q` dominating a point of `P`,
/// no point of `P` may dominate a point of `Q`.
fn criterion_one_sided(fixtures: &[Fixture]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = Vec::new();
    let (mut pairs_checked, mut dominating_pairs) = (0, 0);
    for f in fixtures {
        let s = match solve(&f.problem, Strategy::Exhaustive) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{}: {e}", f.name));
                continue;
            }
        };
        let pieces: Vec<&Polytope> = s.carved.pieces.iter().map(|p| &p.polytope).collect();
        let samples: Vec<Vec<Vec<Rational>>> = pieces
            .iter()
            .map(|p| {
                let mut v: Vec<Vec<Rational>> = p.vertices().to_vec();
                v.extend((0..100).map(|_| sample_convex(p.vertices(), &mut rng)));
                v
            })
            .collect();
        let mut violations = 0;
        let mut witness = None;
        for i in 0..pieces.len() {
            for j in 0..pieces.len() {
                if i == j {
                    continue;
                }
                let (p, q) = (pieces[i], pieces[j]);
                let mut found = 0;
                for _ in 0..4000 {
                    if found == 100 {
                        break;
                    }
                    let y = sample_convex(p.vertices(), &mut rng);
                    let y2 = sample_convex(q.vertices(), &mut rng);
                    if dominates(&y2, &y) {
                        found += 1;
                    }
                }
                if found == 0 {
                    continue;
                }
                pairs_checked += 1;
                dominating_pairs += found;
                let bad = samples[i]
                    .iter()
                    .find_map(|z| samples[j].iter().find(|z2| dominates(z, z2)).map(|z2| (z, z2)));
                if let Some((z, z2)) = bad {
                    if violations == 0 {
                        witness = Some(format!("{} dominates {}", show(z), show(z2)));
                    }
                    violations += 1;
                }
            }
        }
        if violations > 0 {
            failures.push(format!(
                "{} (k = {}): {violations} violating piece pairs, e.g. {}",
                f.name,
                f.problem.k(),
                witness.unwrap()
            ));
        }
    }
    if failures.is_empty() {
        outcome(
            true,
            format!("{pairs_checked} ordered piece pairs, {dominating_pairs} dominating samples, 0 violations"),
        )
    } else {
        outcome(false, failures.join("; "))
    }
}

fn show(y: &[Rational]) -> String {
    let parts: Vec<String> = y.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Whether `v` lies in the convex hull of `others`, by LP feasibility.
fn in_hull(v: &[Rational], others: &[&Vec<Rational>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let mut lp = LinearProgram::new(others.len());
    lp.bounds = vec![Bound::nonneg(); others.len()];
    lp.push(Constraint::eq(vec![int(1); others.len()], int(1)));
    for d in 0..v.len() {
        lp.push(Constraint::eq(others.iter().map(|o| o[d].clone()).collect(), v[d].clone()));
    }
    !matches!(solve_lp(&lp), LpOutcome::Infeasible)
}

/// Whether some point with the kept coordinates fixed to `y` lies in `p`.
fn has_preimage(p: &Polytope, kept: usize, y: &[Rational]) -> bool {
    let mut lp = LinearProgram::new(p.dim());
    for i in 0..p.dim() {
        lp.bounds[i] = if i < kept { Bound::fixed(y[i].clone()) } else { Bound::free() };
    }
    for h in p.equalities() {
        lp.push(Constraint::eq(h.normal().to_vec(), h.offset().clone()));
    }
    for h in p.facets() {
        lp.push(Constraint::le(h.normal().to_vec(), h.offset().clone()));
    }
    !matches!(solve_lp(&lp), LpOutcome::Infeasible)
}

fn criterion_geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    let (mut inside, mut outside) = (0, 0);
    let mut polys: Vec<Polytope> = Vec::new();
    for case in 0..500 {
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=8);
        let points: Vec<Vec<Rational>> = (0..count)
            .map(|_| (0..dim).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect())
            .collect();
        let distinct: BTreeSet<Vec<Rational>> = points.iter().cloned().collect();
        let expected: BTreeSet<Vec<Rational>> = distinct
            .iter()
            .filter(|v| {
                let others: Vec<&Vec<Rational>> = distinct.iter().filter(|o| o != v).collect();
                !in_hull(v, &others)
            })
            .cloned()
            .collect();
        let p = match Polytope::from_vertices(dim, points, vec![]) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        let got: BTreeSet<Vec<Rational>> = p.vertices().iter().cloned().collect();
        if got != expected {
            failures.push(format!("case {case}: extreme points differ"));
        }
        match hrep_to_vrep(&p.halfspaces(), dim) {
            Ok(back) if back.vertices() == p.vertices() => {}
            _ => failures.push(format!("case {case}: H to V round trip differs")),
        }
        if dim >= 2 {
            let kept = dim - 1;
            let proj = p.eliminate_variables(&[dim - 1]).unwrap();
            for _ in 0..4 {
                let y = sample_convex(p.vertices(), &mut rng);
                inside += 1;
                if !proj.contains(&y[..kept]) {
                    failures.push(format!("case {case}: truncation outside the projection"));
                }
            }
            let bx = bounding_box(&[&proj]);
            let mut tries = 0;
            let mut taken = 0;
            while taken < 4 && tries < 100 {
                tries += 1;
                let y = random_in_box(&bx, &mut rng);
                if proj.contains(&y) {
                    continue;
                }
                taken += 1;
                outside += 1;
                if has_preimage(&p, kept, &y) {
                    failures.push(format!("case {case}: point outside the projection has a preimage"));
                }
            }
        }
        polys.push(p);
    }
    let mut antisymmetric = 0;
    for a in &polys {
        for b in polys.iter().filter(|b| b.dim() == a.dim()).take(3) {
            if let Ok(DominanceRelation::CompletelyDominates) = classify_polytope_dominance(a, b) {
                antisymmetric += 1;
                if classify_polytope_dominance(b, a).ok() != Some(DominanceRelation::DominatedBy) {
                    failures.push("dominance is not antisymmetric".into());
                }
            }
        }
    }
    if failures.is_empty() {
        outcome(
            true,
            format!(
                "500 round trips exact; {inside} truncations inside, {outside} outside points without preimage; \
                 {antisymmetric} dominance pairs antisymmetric"
            ),
        )
    } else {
        failures.truncate(5);
        outcome(false, failures.join("; "))
    }
}

fn criterion_solvers(fixtures: &[Fixture]) -> Outcome {
    let mut failures = Vec::new();
    let (mut solves, mut certificates) = (0, 0);
    for f in fixtures.iter().filter(|f| f.problem.slice_count() <= 256) {
        let p = &f.problem;
        let k = p.k();
        let slices: Vec<_> = p.slices().collect();
        let cut_sets: Vec<Vec<HammingCut>> = vec![
            vec![],
            slices.iter().take(1).cloned().map(HammingCut::new).collect(),
            slices.iter().take(2).cloned().map(HammingCut::new).collect(),
            slices.iter().rev().take(1).cloned().map(HammingCut::new).collect(),
        ];
        for r in 0..k {
            let order: Vec<Vec<Rational>> = (0..k).map(|i| p.objectives()[(r + i) % k].clone()).collect();
            for cuts in &cut_sets {
                solves += 1;
                let bb = solve_milp_lex(p, &order, cuts);
                let en = solve_milp_by_enumeration(p, &order, cuts);
                let same = match (&bb, &en) {
                    (Ok(a), Ok(b)) => match (a.clone().optimal(), b.clone().optimal()) {
                        (Some(x), Some(y)) => {
                            x.values == y.values && !cuts.iter().any(|c| c.reference == x.slice)
                        }
                        (None, None) => true,
                        _ => false,
                    },
                    _ => false,
                };
                if !same {
                    failures.push(format!("{}: rotation {r}, {} cuts differ", f.name, cuts.len()));
                }
            }
            for s in &slices {
                let (stages, _) = lexicographic_stages(&p.slice_lp(s), &order);
                for (lp, sol) in &stages {
                    certificates += 1;
                    if !verify_certificate(lp, sol) {
                        failures.push(format!("{}: certificate rejected on slice {:?}", f.name, s.0));
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        outcome(true, format!("{solves} B&B solves match enumeration; {certificates} stage certificates verified"))
    } else {
        outcome(false, failures.join("; "))
    }
}

fn serialized(problem: &MomilpProblem, strategy: Strategy) -> Result<String, String> {
    let s = solve(problem, strategy)?;
    Ok(candidates_to_json(&s.candidates) + &carved_to_json(&s.carved) + &front_to_json(&s.front))
}

fn cli_artifacts(fixture: &Path, dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_momilp"))
        .args(["solve", fixture.to_str().unwrap(), "--oracle", "--resolution", "5", "--plot", "--out"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("exit {:?}", status.status.code()));
    }
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "report.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    Ok(files)
}

fn criterion_determinism(fixtures: &[Fixture]) -> Outcome {
    let mut failures = Vec::new();
    for f in fixtures {
        for strategy in STRATEGIES {
            match (serialized(&f.problem, strategy), serialized(&f.problem, strategy)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => failures.push(format!("{} {strategy:?}: outputs differ", f.name)),
                (Err(e), _) | (_, Err(e)) => failures.push(format!("{} {strategy:?}: {e}", f.name)),
            }
        }
        let path = fixtures_dir().join(format!("{}.momilp", f.name));
        let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        match (cli_artifacts(&path, d1.path()), cli_artifacts(&path, d2.path())) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push(format!("{}: CLI artifacts differ", f.name)),
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{}: CLI {e}", f.name)),
        }
    }
    if failures.is_empty() {
        outcome(true, format!("{} fixtures: library and CLI outputs byte-identical across runs", fixtures.len()))
    } else {
        outcome(false, failures.join("; "))
    }
}

fn main() {
    let fixtures = load_fixtures();
    let start = Instant::now();
    let oracles: Vec<(String, OracleFront)> = fixtures
        .iter()
        .map(|f| {
            let o = oracle_front(&f.problem, resolution_for(&f.problem), SLICE_LIMIT)
                .unwrap_or_else(|e| panic!("{}: oracle failed: {e}", f.name));
            (f.name.clone(), o)
        })
        .collect();
    println!("oracle fronts for {} fixtures in {:.1?}", fixtures.len(), start.elapsed());

    let bi: Vec<&Fixture> = fixtures.iter().filter(|f| f.problem.k() == 2).collect();
    let tri: Vec<&Fixture> = fixtures.iter().filter(|f| f.problem.k() == 3).collect();

    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("1 oracle equivalence, two objectives (resolution 21)", Box::new(|| {
            let mut o = oracle_equivalence(&bi, &oracles);
            if bi.len() < 10 {
                o = outcome(false, format!("only {} bi-objective fixtures", bi.len()));
            }
            o
        })),
        ("2 oracle equivalence, three objectives (resolution 11)", Box::new(|| {
            let mut o = oracle_equivalence(&tri, &oracles);
            if tri.len() < 3 {
                o = outcome(false, format!("only {} three-objective fixtures", tri.len()));
            }
            o
        })),
        ("3 non-supported points are in the front", Box::new(|| criterion_nonsupported(&fixtures, &oracles))),
        ("4 candidates contain the oracle front", Box::new(|| criterion_containment(&fixtures, &oracles))),
        ("5 carving is disjoint and conserves points", Box::new(|| criterion_carving(&fixtures))),
        ("6 one-sided dominance between carved pieces", Box::new(|| criterion_one_sided(&fixtures))),
        ("7 geometry kernel", Box::new(criterion_geometry)),
        ("8 solver cross-check", Box::new(|| criterion_solvers(&fixtures))),
        ("9 determinism", Box::new(|| criterion_determinism(&fixtures))),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} ({:.1?}) {}",
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed(),
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
