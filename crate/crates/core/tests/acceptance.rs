//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p degen-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use degen::degeneracy::{
    check_game, check_one_sided, natural_max_support, tie_system, verify_witness, winlose_side_corrected,
    winlose_side_paper, Budget, Side,
};
use degen::feasibility::Method;
use degen::gameio::{
    parse_game, parse_lpsystem, parse_witness, serialize_game, serialize_lpsystem, serialize_witness, WitnessDocument,
};
use degen::instances::{
    one_nonzero_winlose_game, planted_tie_game, random_game, random_matrix, random_satisfiable_3cnf, winlose_matrix,
};
use degen::lpcheck::{is_lp_degenerate, LinearSystem};
use degen::reduction::{
    audit_a, audit_b, brute_force_sat, build_game, build_game_with, epsilon, verify_built, witness_from_assignment, CnfFormula,
    Literal, OracleStatus, ReductionGame, VerifyOptions,
};
use degen::{BimatrixGame, Execution, MixedStrategy, Rational, RationalMatrix};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn mat(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64(rows).unwrap()
}

fn lp(a: &[&[i64]], b: &[i64]) -> LinearSystem {
    LinearSystem::new(mat(a), b.iter().map(|&v| Rational::from(v)).collect()).unwrap()
}

/// Criterion 1: the LP/game degeneracy quadrant.
fn lp_game_quadrant() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let first = lp(&[&[1, 2], &[0, 1]], &[2, 1]);
    let v = is_lp_degenerate(&first).map_err(|e| e.to_string())?;
    ensure(v.degenerate, || "A=[[1,2],[0,1]], b=(2,1): LP should be degenerate".into())?;
    let cert = v.certificate.unwrap();
    ensure(
        cert.columns == vec![0, 1] && cert.solution == vec![Rational::zero(), Rational::one()],
        || format!("unexpected certificate {cert:?}"),
    )?;
    ensure(cert.reduced_combination(&first).is_some(), || "b not in span of m-1 basis columns".into())?;
    ensure(check_one_sided(first.a(), &budget).is_nondegenerate(), || {
        "A=[[1,2],[0,1]] should be nondegenerate as a payoff matrix".into()
    })?;

    let second = lp(&[&[1, 1], &[0, 1]], &[2, 1]);
    ensure(!is_lp_degenerate(&second).map_err(|e| e.to_string())?.degenerate, || {
        "A=[[1,1],[0,1]], b=(2,1): LP should be nondegenerate".into()
    })?;
    let verdict = check_one_sided(second.a(), &budget);
    let w = verdict.witness().ok_or("A=[[1,1],[0,1]] should be degenerate as a payoff matrix")?;
    ensure(w.strategy == MixedStrategy::pure(2, 1).unwrap(), || format!("witness {:?}", w.strategy))?;
    within(start.elapsed(), Duration::from_secs(1), "quadrant")?;
    Ok(format!("4/4 verdicts exact in {:?}", start.elapsed()))
}

/// Random satisfiable formulas used by criteria 2 and 5.
fn forward_corpus() -> Vec<(CnfFormula, degen::reduction::Assignment)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    (0..100)
        .map(|_| {
            let clauses = rng.gen_range(1..=5);
            let vars = rng.gen_range(3..=8);
            random_satisfiable_3cnf(&mut rng, vars, clauses)
        })
        .collect()
}

/// Criterion 2: witnesses from satisfying assignments.
fn forward_direction(corpus: &[(CnfFormula, degen::reduction::Assignment)], games: &mut Vec<ReductionGame>) -> Outcome {
    let mut slowest = Duration::ZERO;
    for (i, (f, a)) in corpus.iter().enumerate() {
        let start = Instant::now();
        ensure(f.is_satisfied_by(a), || format!("formula {i}: planted assignment does not satisfy"))?;
        let rg = build_game(f);
        let w = witness_from_assignment(&rg, a).map_err(|e| format!("formula {i}: {e}"))?;
        let n = f.num_clauses();
        ensure(w.support_size() == n, || format!("formula {i}: support {} != n = {n}", w.support_size()))?;
        ensure(w.best_responses.len() == n + 1, || {
            format!("formula {i}: {} best responses != n+1 = {}", w.best_responses.len(), n + 1)
        })?;
        ensure(verify_witness(rg.game.a(), &w.strategy).unwrap(), || format!("formula {i}: witness rejected"))?;
        let elapsed = start.elapsed();
        within(elapsed, Duration::from_secs(2), &format!("formula {i}"))?;
        slowest = slowest.max(elapsed);
        games.push(rg);
    }
    Ok(format!("{} formulas, support n and n+1 best responses; slowest {slowest:?}", corpus.len()))
}

/// Criterion 3: oracle vs the win-lose characterizations on all 3x3 matrices.
fn winlose_equivalence() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let (mut zero_free, mut discrepancies) = (0, 0);
    for index in 0..512u64 {
        let m = winlose_matrix(3, 3, index);
        let verdict = check_one_sided(&m, &budget);
        ensure(!verdict.is_unknown(), || format!("matrix {index}: no definite verdict"))?;
        if let Some(w) = verdict.witness() {
            ensure(verify_witness(&m, &w.strategy).unwrap(), || format!("matrix {index}: unsound witness"))?;
        }
        let oracle_nondegenerate = verdict.is_nondegenerate();
        ensure(winlose_side_corrected(&m) == oracle_nondegenerate, || {
            format!("matrix {index}: corrected predicate disagrees with oracle")
        })?;
        let has_zero_column = (0..3).any(|j| (0..3).all(|i| m.get(i, j).is_zero()));
        if has_zero_column {
            discrepancies += (winlose_side_paper(&m) != oracle_nondegenerate) as usize;
        } else {
            zero_free += 1;
            ensure(winlose_side_paper(&m) == oracle_nondegenerate, || {
                format!("matrix {index}: literal predicate disagrees with oracle")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "win-lose sweep")?;
    Ok(format!(
        "512/512 agree with corrected predicate; {zero_free}/{zero_free} zero-column-free agree with literal predicate \
         ({discrepancies} zero-column discrepancies); {:?}",
        start.elapsed()
    ))
}

/// Criterion 4: planted ties and one-nonzero win-lose games.
fn planted_instances() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let (g, col) = planted_tie_game(&mut rng, 4, 4);
        let v = check_game(&g, &budget);
        let w = v.overall.witness().ok_or_else(|| format!("planted game {i} (column {col}) not degenerate"))?;
        ensure(w.support_size() == 1, || format!("planted game {i}: witness not pure"))?;
    }
    for i in 0..100 {
        let g = one_nonzero_winlose_game(&mut rng, 4, 4);
        let v = check_game(&g, &budget);
        ensure(v.overall.is_nondegenerate(), || format!("one-nonzero game {i}: {}", v.overall.label()))?;
    }
    within(start.elapsed(), Duration::from_secs(300), "planted instances")?;
    Ok(format!("100/100 planted degenerate, 100/100 one-nonzero nondegenerate; {:?}", start.elapsed()))
}

fn all_sign_patterns() -> CnfFormula {
    let clauses = (0..8u8)
        .map(|mask| {
            (0..3)
                .map(|b| Literal {
                    var: b + 1,
                    negated: mask >> b & 1 == 1,
                })
                .collect()
        })
        .collect();
    CnfFormula::new(3, clauses).unwrap()
}

/// Criterion 5: exact proof-inequality audits per instance.
fn inequality_audits(games: &[&ReductionGame]) -> Outcome {
    let mut slowest = Duration::ZERO;
    for (i, rg) in games.iter().enumerate() {
        let start = Instant::now();
        let a = audit_a(rg.num_conflicts(), &rg.epsilon);
        let b = audit_b(rg.n(), rg.num_conflicts(), &rg.epsilon);
        let elapsed = start.elapsed();
        ensure(a && b, || format!("instance {i} (n={}, D={}): A={a} B={b}", rg.n(), rg.num_conflicts()))?;
        within(elapsed, Duration::from_secs(1), &format!("audit {i}"))?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!("{} instances pass audits A and B; slowest {slowest:?}", games.len()))
}

/// Criterion 6: the unsatisfiable 8-clause formula end to end.
fn unsatisfiable_end_to_end(out: &mut Option<ReductionGame>) -> Outcome {
    let start = Instant::now();
    let f = all_sign_patterns();
    ensure(brute_force_sat(&f).unwrap().is_none(), || "8-clause formula should be UNSAT".into())?;
    let rg = build_game(&f);
    let (rows, cols) = (rg.game.rows(), rg.game.cols());
    ensure((rows, cols) == (1429, 56), || format!("shape {rows}x{cols}"))?;
    ensure(rg.num_conflicts() == 1372, || format!("D = {}", rg.num_conflicts()))?;
    ensure(rg.epsilon == epsilon(1372), || "epsilon".into())?;
    ensure(
        rg.epsilon.numer() == &1.into() && rg.epsilon.denom() == &(num_bigint::BigInt::from(6) * num_traits::Pow::pow(num_bigint::BigInt::from(3), 2744u32)),
        || "epsilon is not 1/(6*3^2744)".into(),
    )?;
    let report = verify_built(&rg, None, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    for (name, ok) in report.audits.entries() {
        ensure(ok, || format!("audit {name} failed"))?;
    }
    let OracleStatus::Skipped(reason) = &report.oracle else {
        return Err(format!("oracle should be skipped, got {:?}", report.oracle));
    };
    ensure(report.consistent, || "report inconsistent".into())?;
    within(start.elapsed(), Duration::from_secs(30), "unsat pipeline")?;
    let summary = format!("UNSAT, 1429x56, D=1372, all audits pass, oracle skipped ({reason}); {:?}", start.elapsed());
    *out = Some(rg);
    Ok(summary)
}

/// Criterion 7: document round trips and construction determinism.
fn round_trip_and_determinism() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        match i % 3 {
            0 => {
                let g = random_game(&mut rng, rows, cols, 1_000_000_007, 1_000_000);
                let g = if rng.gen() {
                    let rl = (0..rows).map(|k| format!("r{k}")).collect();
                    let cl = (0..cols).map(|k| format!("col_{k}")).collect();
                    g.with_labels(Some(rl), Some(cl)).unwrap()
                } else {
                    g
                };
                let text = serialize_game(&g);
                let back = parse_game(&text).map_err(|e| format!("doc {i}: {e}"))?;
                ensure(back == g && serialize_game(&back) == text, || format!("game doc {i} not stable"))?;
            }
            1 => {
                let weights: Vec<Rational> = (0..cols).map(|_| Rational::from(rng.gen_range(0..50i64))).collect();
                let total: Rational = weights.iter().sum();
                let probs = if total.is_zero() {
                    MixedStrategy::uniform(cols).unwrap()
                } else {
                    MixedStrategy::new(weights.iter().map(|w| w / &total).collect()).unwrap()
                };
                let side = if rng.gen() { Side::Row } else { Side::Column };
                let w = WitnessDocument { side, strategy: probs };
                let text = serialize_witness(&w);
                let back = parse_witness(&text).map_err(|e| format!("doc {i}: {e}"))?;
                ensure(back == w && serialize_witness(&back) == text, || format!("witness doc {i} not stable"))?;
            }
            _ => {
                let cols = cols.max(rows);
                let a = loop {
                    let a = random_matrix(&mut rng, rows, cols, 30, 7);
                    if a.rank() == rows {
                        break a;
                    }
                };
                let b = (0..rows).map(|_| Rational::new(rng.gen_range(-99..=99), rng.gen_range(1..=9))).collect();
                let s = LinearSystem::new(a, b).unwrap();
                let text = serialize_lpsystem(&s);
                let back = parse_lpsystem(&text).map_err(|e| format!("doc {i}: {e}"))?;
                ensure(back == s && serialize_lpsystem(&back) == text, || format!("lp doc {i} not stable"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..5 {
        let (f, _) = random_satisfiable_3cnf(&mut rng, 6, 2 + k % 3);
        let reference = serialize_game(&build_game(&f).game);
        ensure(serialize_game(&build_game(&f).game) == reference, || "build_game differs across runs".into())?;
        ensure(serialize_game(&build_game_with(&f, Execution::Sequential).game) == reference, || {
            "sequential build differs".into()
        })?;
        for threads in [1, 2, 4] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let text = pool.install(|| serialize_game(&build_game_with(&f, Execution::Parallel).game));
            ensure(text == reference, || format!("build differs with {threads} workers"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "round trips")?;
    Ok(format!("1000 documents stable; builds identical across runs and 1/2/4 workers; {:?}", start.elapsed()))
}

/// Criterion 8: simplex and Fourier-Motzkin agree on every (S, T) system.
fn feasibility_cross_validation() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut systems, mut feasible) = (0usize, 0usize);
    for gi in 0..50 {
        let g: BimatrixGame = random_game(&mut rng, 4, 4, 2, 2);
        for side in [Side::Row, Side::Column] {
            let m = side.responder_matrix(&g);
            for k in 1..=natural_max_support(m.rows(), m.cols()) {
                for s in (0..m.cols()).combinations(k) {
                    for t in (0..m.rows()).combinations(k + 1) {
                        let p = tie_system(&m, &s, &t).unwrap();
                        let a = Method::Simplex.solve(&p);
                        let b = Method::FourierMotzkin.solve(&p);
                        ensure(a.is_some() == b.is_some(), || {
                            format!("game {gi} {side:?} S={s:?} T={t:?}: simplex {a:?} vs FM {b:?}")
                        })?;
                        for x in a.iter().chain(b.iter()) {
                            ensure(p.is_satisfied_by(x), || format!("game {gi}: returned point infeasible"))?;
                        }
                        systems += 1;
                        feasible += a.is_some() as usize;
                    }
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "cross-validation")?;
    Ok(format!("{systems} systems agree ({feasible} feasible); {:?}", start.elapsed()))
}

fn main() -> ExitCode {
    let corpus = forward_corpus();
    let mut forward_games = Vec::new();
    let mut unsat_game = None;
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 LP/game degeneracy quadrant", lp_game_quadrant()),
        ("2 forward direction witnesses", forward_direction(&corpus, &mut forward_games)),
        ("3 oracle vs win-lose characterization", winlose_equivalence()),
        ("4 planted instances", planted_instances()),
    ];
    let unsat = unsatisfiable_end_to_end(&mut unsat_game);
    let audited: Vec<&ReductionGame> = forward_games.iter().chain(unsat_game.iter()).collect();
    let audits = if forward_games.len() == corpus.len() && unsat_game.is_some() {
        inequality_audits(&audited)
    } else {
        Err("instances from criteria 2 and 6 unavailable".into())
    };
    results.push(("5 proof-inequality audits", audits));
    results.push(("6 unsatisfiable end to end", unsat));
    results.push(("7 round trip and determinism", round_trip_and_determinism()));
    results.push(("8 feasibility cross-validation", feasibility_cross_validation()));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
