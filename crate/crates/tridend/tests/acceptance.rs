//! Acceptance run: one PASS/FAIL line per criterion, with exact equality
//! throughout and pinned wall-clock limits. Exits non-zero on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use tridend::rng;
use tridend_core::laws::{bracket_and_decompositions, postlie_axioms, prelie_identities, tridendriform_axioms};
use tridend_core::linalg::Q;
use tridend_core::magnus::*;
use tridend_core::sequence::{enumerate_t, f_tilde_series, partition_holds, split_check, t_count, Sequences};
use tridend_core::series::{eval_morphism, FreeAlgebra, TriBasis, TriOp, TriTarget};
use tridend_core::surjection::*;
use tridend_core::tree::{enumerate_trees, trees_up_to};
use tridend_core::{DescentOrientation, MatSeq, Matrix, Surjection, Tree, TriSeries};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn ledger() -> Result<ConventionLedger, String> {
    resolve_conventions(&rng::matseq(&mut rng::seeded(0), 2, 5)).map_err(e)
}

// 1
fn tree_counts() -> Outcome {
    let expected = [1usize, 3, 11, 45, 197, 903];
    let got: Vec<usize> = (1..=6).map(|n| enumerate_trees(n).map(|t| t.len())).collect::<Result<_, _>>().map_err(e)?;
    ensure(got == expected, format!("counts {got:?}"))?;
    let d2: Vec<String> = enumerate_trees(2).map_err(e)?.iter().map(Tree::encode).collect();
    ensure(d2 == ["((|,|),|)", "(|,(|,|))", "(|,|,|)"], format!("degree 2: {d2:?}"))?;
    Ok(format!("counts {got:?}"))
}

// 2
fn surjection_counts() -> Outcome {
    // ordered Bell numbers: a(n) = Σ_{k=1..n} C(n,k) a(n−k)
    let mut bell = vec![1u64];
    for n in 1..=6u64 {
        let mut c = 1u64;
        let mut s = 0;
        for k in 1..=n {
            c = c * (n - k + 1) / k;
            s += c * bell[(n - k) as usize];
        }
        bell.push(s);
    }
    let got: Vec<u64> = (1..=6).map(|n| enumerate_surjections(n).len() as u64).collect();
    ensure(got == bell[1..] && got == [1, 3, 13, 75, 541, 4683], format!("counts {got:?}"))?;
    Ok(format!("counts {got:?}"))
}

const SAMPLES: usize = 100;

fn free_triples<B: TriBasis>(seed: u64, basis: &[Vec<B>]) -> Vec<[TriSeries<B>; 3]> {
    let mut r = rng::seeded(seed);
    (0..SAMPLES).map(|_| rng::triple(&mut r, basis, 4, 6)).collect()
}

fn seq_triples(seed: u64) -> Vec<[MatSeq; 3]> {
    let mut r = rng::seeded(seed);
    (0..SAMPLES).map(|_| [0; 3].map(|_| rng::matseq(&mut r, 2, 7))).collect()
}

type Law<T> = fn(&T, &<T as TriTarget>::Elem, &<T as TriTarget>::Elem, &<T as TriTarget>::Elem) -> tridend_core::Result<Vec<&'static str>>;

fn all_hold<T: TriTarget>(t: &T, triples: &[[T::Elem; 3]], laws: &[Law<T>]) -> Result<(), String> {
    for (k, [a, b, c]) in triples.iter().enumerate() {
        for law in laws {
            let bad = law(t, a, b, c).map_err(e)?;
            ensure(bad.is_empty(), format!("sample {k}: {}", bad.join(", ")))?;
        }
    }
    Ok(())
}

fn sample_sets() -> (Vec<[TriSeries<Tree>; 3]>, Vec<[TriSeries<Surjection>; 3]>, Vec<[MatSeq; 3]>) {
    let trees = trees_up_to(4);
    let surj: Vec<Vec<Surjection>> = (0..=4).map(|n| if n == 0 { Vec::new() } else { enumerate_surjections(n) }).collect();
    (free_triples(10, &trees), free_triples(20, &surj), seq_triples(30))
}

fn run_laws(
    tl: &[Law<FreeAlgebra<Tree>>],
    sl: &[Law<FreeAlgebra<Surjection>>],
    ql: &[Law<Sequences>],
) -> Outcome {
    let (t, s, m) = sample_sets();
    all_hold(&FreeAlgebra::<Tree>::new(6), &t, tl).map_err(|x| format!("trees: {x}"))?;
    all_hold(&FreeAlgebra::<Surjection>::new(6), &s, sl).map_err(|x| format!("surjections: {x}"))?;
    all_hold(&Sequences { dim: 2, horizon: 7 }, &m, ql).map_err(|x| format!("sequences: {x}"))?;
    Ok(format!("{SAMPLES} triples in each of trees, surjections, 2×2 sequences"))
}

// 3
fn axioms() -> Outcome {
    run_laws(&[tridendriform_axioms], &[tridendriform_axioms], &[tridendriform_axioms])
}

// 4
fn prelie_postlie() -> Outcome {
    run_laws(
        &[prelie_identities, postlie_axioms, bracket_and_decompositions],
        &[prelie_identities, postlie_axioms, bracket_and_decompositions],
        &[prelie_identities, postlie_axioms, bracket_and_decompositions],
    )
}

// 5
fn resolution_and_closed_formula() -> Outcome {
    let witness = rng::matseq(&mut rng::seeded(0), 2, 5);
    let battery = resolution_battery(&witness, 3).map_err(e)?;
    let passing = battery.iter().filter(|b| b.passed()).count();
    ensure(passing == 1, format!("{passing} combinations pass"))?;
    let l = ledger()?;
    for flavor in Flavor::ALL {
        let closed = closed_formula::<Tree>(flavor, 6, &l).map_err(e)?.payload;
        ensure(closed.component(6).len() == 903, format!("{} top-degree terms", closed.component(6).len()))?;
        ensure(closed == oracle_log::<Tree>(flavor, 6).payload, format!("{flavor:?} differs from log*"))?;
    }
    Ok("one combination; closed = log*(X), log*(X̄) through degree 6".into())
}

// 6
fn prelie_magnus_terms() -> Outcome {
    for flavor in Flavor::ALL {
        ensure(
            prelie_magnus::<Tree>(flavor, 6).payload == oracle_log::<Tree>(flavor, 6).payload,
            format!("{flavor:?} differs from log*"),
        )?;
        let a = TriSeries::<Tree>::generator(3);
        let p = |x: &TriSeries<Tree>, y: &TriSeries<Tree>| x.prelie(y, flavor.prelie()).map_err(e);
        let aa = p(&a, &a)?;
        let expected = a.plus(&aa.scale(&q(-1, 2))).plus(&p(&aa, &a)?.scale(&q(1, 4))).plus(&p(&a, &aa)?.scale(&q(1, 12)));
        ensure(prelie_magnus::<Tree>(flavor, 3).payload == expected, format!("{flavor:?} first terms"))?;
    }
    Ok("recursion = log* through degree 6; a − ½a▷a + ¼(a▷a)▷a + 1/12 a▷(a▷a)".into())
}

// 7
fn psi_layer() -> Outcome {
    let l = ledger()?;
    let level = l.conventions.level;
    for n in 1..=6 {
        for f in enumerate_surjections(n) {
            let lt = to_leveled_tree(&f, level);
            ensure(from_leveled_tree(&lt, level).map_err(e)? == f, format!("{f}: round trip"))?;
            ensure(f.descents() == lt.shape.descent_stats(DescentOrientation::AsPrinted), format!("{f}: descents"))?;
        }
    }
    let mut fibers: BTreeMap<usize, FiberIndex> = BTreeMap::new();
    let mut psi = |x: &TriSeries<Tree>| -> TriSeries<Surjection> {
        let mut terms = Vec::new();
        for (t, c) in x.terms() {
            let idx = fibers.entry(t.degree()).or_insert_with(|| FiberIndex::build(t.degree(), level));
            terms.extend(idx.fiber(t).iter().map(|f| (f.clone(), c.clone())));
        }
        TriSeries::from_terms(Q::zero(), terms, 5)
    };
    let trees: Vec<Tree> = trees_up_to(4).into_iter().flatten().filter(|t| t.degree() > 0).collect();
    let mut pairs = 0;
    for s in &trees {
        for t in &trees {
            if s.degree() + t.degree() > 5 {
                continue;
            }
            pairs += 1;
            let ms = TriSeries::monomial(s.clone(), Q::one(), 5);
            let mt = TriSeries::monomial(t.clone(), Q::one(), 5);
            let (ps, pt) = (psi(&ms), psi(&mt));
            for op in TriOp::ALL {
                ensure(psi(&ms.op(&mt, op).map_err(e)?) == ps.op(&pt, op).map_err(e)?, format!("{s} {} {t}", op.symbol()))?;
            }
        }
    }
    let f: Surjection = "3,4,1,3,2,4,1,3,4,1,1,3".parse().map_err(e)?;
    let blocks: Vec<String> = top_blocks(&f, level).iter().map(|b| b.iter().map(u32::to_string).collect()).collect();
    ensure(blocks == ["3", "132", "13", "113"], format!("blocks {blocks:?}"))?;
    Ok(format!("n ≤ 6 round trip and descents; {pairs} pairs; blocks (3), (132), (13), (113)"))
}

// 8
fn partition_and_splitting() -> Outcome {
    let o = ledger()?.conventions.t_orientation;
    for n in 1..=4 {
        for big_n in 0..=7usize {
            ensure(partition_holds(n, big_n, o), format!("partition n = {n}, N = {big_n}"))?;
            let total: usize = enumerate_surjections(n).iter().map(|s| enumerate_t(s, big_n, o).len()).sum();
            let counted: BigInt = enumerate_surjections(n).iter().map(|s| t_count(s, big_n)).sum();
            ensure(total == big_n.pow(n as u32) && counted == BigInt::from(total), format!("total n = {n}, N = {big_n}"))?;
        }
    }
    for n in 1..=4 {
        for m in 1..=(5 - n) {
            for sigma in enumerate_surjections(n) {
                for tau in enumerate_surjections(m) {
                    for big_n in 0..=7 {
                        let r = split_check(&sigma, &tau, big_n, o);
                        ensure(r.ok(), format!("{sigma} | {tau}, N = {big_n}"))?;
                    }
                }
            }
        }
    }
    Ok("n ≤ 4 and n + m ≤ 5, N ≤ 7".into())
}

// 9
fn realization() -> Outcome {
    let l = ledger()?;
    let a = rng::matseq(&mut rng::seeded(9), 2, 9);
    let target = Sequences { dim: 2, horizon: 9 };
    let mut count = 0;
    for n in 1..=4 {
        let index = FiberIndex::build(n, l.conventions.level);
        for t in enumerate_trees(n).map_err(e)? {
            let x = TriSeries::monomial(t.clone(), Q::one(), n);
            let direct = eval_morphism(&x, &target, &a).map_err(e)?;
            let fiber = TriSeries::from_terms(Q::zero(), index.fiber(&t).iter().map(|f| (f.clone(), Q::one())), n);
            ensure(direct == f_tilde_series(&fiber, &a, l.conventions.t_orientation).map_err(e)?, format!("{t}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} trees, N ≤ 8"))
}

/// `log Π_{k<N} (1 + h a(k))` (weak: `Π (1 − h a(k))⁻¹`), newest factor on
/// the left, coefficients of `h⁰ … h^trunc`.
fn product_log(a: &MatSeq, n: usize, truncation: usize, weak: bool) -> Vec<Matrix> {
    let d = a.dim();
    let mul = |x: &[Matrix], y: &[Matrix]| -> Vec<Matrix> {
        let mut out = vec![Matrix::zeros(d); truncation + 1];
        for i in 0..=truncation {
            for j in 0..=truncation - i {
                out[i + j].add_assign(&x[i].mul(&y[j]));
            }
        }
        out
    };
    let mut y = vec![Matrix::zeros(d); truncation + 1];
    y[0] = Matrix::identity(d);
    for k in 0..n {
        let mut f = vec![Matrix::zeros(d); truncation + 1];
        f[0] = Matrix::identity(d);
        let ak = &a.values()[k];
        let mut p = Matrix::identity(d);
        for (i, c) in f.iter_mut().enumerate().skip(1) {
            if weak || i == 1 {
                p = p.mul(ak);
                *c = p.clone();
            }
        }
        y = mul(&f, &y);
    }
    y[0] = Matrix::zeros(d);
    let mut out = vec![Matrix::zeros(d); truncation + 1];
    let mut power = y.clone();
    for m in 1..=truncation {
        let c = q(if m % 2 == 1 { 1 } else { -1 }, m as i64);
        for (o, p) in out.iter_mut().zip(&power) {
            o.add_scaled(p, &c);
        }
        power = mul(&power, &y);
    }
    out
}

// 10
fn discrete_mps_agrees() -> Outcome {
    let l = ledger()?;
    for dim in 1..=3 {
        let a = rng::matseq(&mut rng::seeded(100 + dim as u64), dim, 8);
        for flavor in Flavor::ALL {
            let fast = discrete_mps(&a, 8, 5, flavor, &l).map_err(e)?.payload;
            let oracle = discrete_mps_oracle(&a, 8, 5, flavor).map_err(e)?;
            ensure(fast == oracle, format!("d = {dim}, {flavor:?}: differs from S(log*(X))"))?;
            for n in 0..=8 {
                let logs = product_log(&a, n, 5, flavor == Flavor::Weak);
                for k in 1..=5 {
                    ensure(fast.at(k, n).map_err(e)? == &logs[k], format!("d = {dim}, {flavor:?}, degree {k}, N = {n}"))?;
                }
            }
        }
    }
    let a = rng::matseq(&mut rng::seeded(11), 2, 5);
    for r in exp_check(&a, 5, &l).map_err(e)? {
        ensure(r.ok(), format!("exp*: {r:?}"))?;
    }
    Ok("degrees ≤ 5, N ≤ 8, d ≤ 3; exp*(Ω′) = X in trees and surjections".into())
}

// 11
fn scalar_sanity() -> Outcome {
    let l = ledger()?;
    let omega = discrete_mps(&scalar_ones(10), 10, 6, Flavor::Strict, &l).map_err(e)?.payload;
    // N·log(1 + h) = Σ (−1)^{n−1} N hⁿ / n
    for n in 1..=6i64 {
        for big_n in 0..=10i64 {
            let expected = q(if n % 2 == 1 { big_n } else { -big_n }, n);
            let got = omega.at(n as usize, big_n as usize).map_err(e)?.get(0, 0);
            ensure(got == &expected, format!("degree {n}, N = {big_n}: {got}"))?;
        }
    }
    Ok("n ≤ 6, N ≤ 10".into())
}

// 12
fn performance() -> Outcome {
    let l = ledger()?;
    let a = rng::matseq(&mut rng::seeded(12), 4, 200);
    let start = Instant::now();
    let fast = discrete_mps(&a, 200, 5, Flavor::Strict, &l).map_err(e)?.payload;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("{elapsed:.2?}"))?;
    let head = a.prefix(8).map_err(e)?;
    let diag = discrete_mps_diagonal(&head, 8, 5, Flavor::Strict, &l).map_err(e)?.payload;
    for k in 1..=5 {
        for n in 0..=8 {
            ensure(fast.at(k, n).map_err(e)? == diag.at(k, n).map_err(e)?, format!("degree {k}, N = {n}"))?;
        }
    }
    Ok(format!("d = 4, N = 200, truncation 5 in {:.2} s; agrees with diagonal sums for N ≤ 8", elapsed.as_secs_f64()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "tree counts", limit: Some(Duration::from_secs(1)), run: tree_counts },
    Criterion { id: 2, name: "surjection counts", limit: Some(Duration::from_secs(5)), run: surjection_counts },
    Criterion { id: 3, name: "tridendriform axioms", limit: None, run: axioms },
    Criterion { id: 4, name: "pre-Lie and post-Lie", limit: None, run: prelie_postlie },
    Criterion { id: 5, name: "resolution and closed formula", limit: Some(Duration::from_secs(60)), run: resolution_and_closed_formula },
    Criterion { id: 6, name: "pre-Lie Magnus", limit: None, run: prelie_magnus_terms },
    Criterion { id: 7, name: "leveled trees", limit: None, run: psi_layer },
    Criterion { id: 8, name: "partial diagonals", limit: None, run: partition_and_splitting },
    Criterion { id: 9, name: "realization", limit: None, run: realization },
    Criterion { id: 10, name: "discrete Magnus", limit: None, run: discrete_mps_agrees },
    Criterion { id: 11, name: "scalar sanity", limit: None, run: scalar_sanity },
    Criterion { id: 12, name: "performance", limit: None, run: performance },
];

fn main() {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed >= limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {:<30} {detail} [{:.2} s]", c.id, c.name, elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {:<30} {detail} [{:.2} s]", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
