//! The verification suite behind `verify suite`: every structural invariant
//! of the core crate, checked on exhaustive small cases and on seeded random
//! samples. Failing law checks are shrunk to a small reproducer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use tridend_core::laws::all_laws;
use tridend_core::linalg::Q;
use tridend_core::magnus::{
    closed_formula, discrete_mps, discrete_mps_diagonal, discrete_mps_oracle, exp_check, oracle_log, prelie_magnus,
    psi_series, realization_holds, resolve_conventions, scalar_ones, Flavor,
};
use tridend_core::sequence::{enumerate_t, partition_holds, split_check, t_count, Sequences};
use tridend_core::series::{f_lr, FreeAlgebra, Half, TriBasis, TriOp};
use tridend_core::surjection::{
    enumerate_surjections, forget_levels, from_leveled_tree, standard_juxtapositions, to_leveled_tree, wq_product,
    FiberIndex,
};
use tridend_core::tree::{enumerate_trees, trees_up_to, EdgeSide};
use tridend_core::{ConventionLedger, DescentOrientation, MatSeq, Surjection, Tree, TriSeries};

use crate::{json, rng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Minimal failing input, when the check has one.
    pub reproducer: Option<String>,
}

impl Check {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, passed: true, detail: detail.into(), reproducer: None }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, passed: false, detail: detail.into(), reproducer: None }
    }

    fn from_bool(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail)
        }
    }

    fn from_result(name: &'static str, r: anyhow::Result<Check>) -> Self {
        r.unwrap_or_else(|e| Check::fail(name, format!("error: {e:#}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest tree degree used by tree-basis checks.
    pub max_degree: usize,
    /// Largest surjection length used by surjection checks.
    pub max_n: usize,
    pub seed: u64,
    /// Random triples per algebra in the law checks.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_degree: 4, max_n: 4, seed: 0, samples: 100 }
    }
}

type Named = (&'static str, fn(&SuiteConfig) -> anyhow::Result<Check>);

const CHECKS: &[Named] = &[
    ("trees.counts", tree_counts),
    ("trees.encoding", tree_encoding),
    ("trees.descents", tree_descents),
    ("trees.closure", tree_closure),
    ("trees.f_lr", tree_f_lr),
    ("surj.counts", surj_counts),
    ("surj.products", surj_products),
    ("surj.psi", surj_psi),
    ("surj.psi_star", surj_psi_star),
    ("laws.trees", laws_trees),
    ("laws.surjections", laws_surjections),
    ("laws.sequences", laws_sequences),
    ("seq.rota_baxter", seq_rota_baxter),
    ("seq.partition", seq_partition),
    ("seq.splitting", seq_splitting),
    ("seq.realization", seq_realization),
    ("magnus.resolution", magnus_resolution),
    ("magnus.closed", magnus_closed),
    ("magnus.prelie", magnus_prelie),
    ("magnus.exp", magnus_exp),
    ("magnus.discrete", magnus_discrete),
    ("magnus.scalar", magnus_scalar),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check in a fixed order.
pub fn run_suite(config: &SuiteConfig) -> Vec<Check> {
    CHECKS.iter().map(|(name, f)| Check::from_result(name, f(config))).collect()
}

/// Runs the checks whose name starts with `prefix`.
pub fn run_matching(config: &SuiteConfig, prefix: &str) -> Vec<Check> {
    CHECKS
        .iter()
        .filter(|(name, _)| name.starts_with(prefix))
        .map(|(name, f)| Check::from_result(name, f(config)))
        .collect()
}

fn schroeder(max: usize) -> Vec<BigInt> {
    // (n+1)s_n = 3(2n−1)s_{n−1} − (n−2)s_{n−2}, s₀ = s₁ = 1, indexed by degree
    let mut s: Vec<BigInt> = vec![1.into(), 1.into()];
    for n in 2..=max {
        let k = n as i64;
        let next = (BigInt::from(3 * (2 * k - 1)) * &s[n - 1] - BigInt::from(k - 2) * &s[n - 2]) / (k + 1);
        s.push(next);
    }
    s.truncate(max + 1);
    s
}

fn fubini(max: usize) -> Vec<BigInt> {
    let mut f: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=max {
        let mut x = BigInt::zero();
        for k in 1..=n {
            x += tridend_core::linalg::binomial(n, k) * &f[n - k];
        }
        f.push(x);
    }
    f
}

fn tree_counts(c: &SuiteConfig) -> anyhow::Result<Check> {
    let expected = schroeder(c.max_degree);
    let got: Vec<usize> = (0..=c.max_degree).map(|n| enumerate_trees(n).map(|t| t.len())).collect::<Result<_, _>>()?;
    let ok = got.iter().zip(&expected).all(|(g, e)| BigInt::from(*g) == *e);
    Ok(Check::from_bool("trees.counts", ok, format!("counts {got:?}")))
}

fn tree_encoding(c: &SuiteConfig) -> anyhow::Result<Check> {
    for n in 0..=c.max_degree {
        let trees = enumerate_trees(n)?;
        if !trees.windows(2).all(|w| w[0] < w[1] && w[0].encode() < w[1].encode()) {
            return Ok(Check::fail("trees.encoding", format!("degree {n} not strictly sorted")));
        }
        for t in &trees {
            let back: Tree = t.encode().parse()?;
            if &back != t || t.degree() != n {
                return Ok(Check::fail("trees.encoding", format!("{t} does not round trip")));
            }
        }
    }
    Ok(Check::pass("trees.encoding", "sorted, unique, round trip"))
}

fn tree_descents(c: &SuiteConfig) -> anyhow::Result<Check> {
    let o = DescentOrientation::AsPrinted;
    let mut edges = 0;
    for n in 1..=c.max_degree {
        for t in enumerate_trees(n)? {
            let s = t.descent_stats(o);
            if s.strict > s.weak || s.weak >= n {
                return Ok(Check::fail("trees.descents", format!("{t}: bounds {s:?}")));
            }
            if t.mirror().descent_stats(DescentOrientation::Mirrored) != s || t.mirror().mirror() != t {
                return Ok(Check::fail("trees.descents", format!("{t}: mirror")));
            }
            for e in t.inner_edges() {
                edges += 1;
                let after = t.contract_edge(&e.path)?.descent_stats(o);
                let mut upper = &t;
                for &i in &e.path {
                    upper = &upper.children()[i];
                }
                let kids = upper.children();
                let gain = usize::from(kids[kids.len() - 1].is_leaf() && e.side != EdgeSide::Right);
                let loss = usize::from(kids[0].is_leaf() && e.side != EdgeSide::Left);
                if after.weak != s.weak + gain || after.strict + loss != s.strict {
                    return Ok(Check::fail("trees.descents", format!("{t}: shrinking {e:?}")));
                }
            }
        }
    }
    Ok(Check::pass("trees.descents", format!("bounds, mirror, {edges} edge contractions")))
}

fn tree_closure(c: &SuiteConfig) -> anyhow::Result<Check> {
    for n in 1..=c.max_degree {
        for t in enumerate_trees(n)? {
            let cl = t.contraction_closure();
            if !cl.contains(&t) || cl.iter().any(|u| u.degree() != n) {
                return Ok(Check::fail("trees.closure", format!("{t}: not graded or reflexive")));
            }
            for u in &cl {
                if !u.contraction_closure().is_subset(&cl) {
                    return Ok(Check::fail("trees.closure", format!("{t}: not transitive at {u}")));
                }
            }
            let mut bfs = BTreeSet::from([t.clone()]);
            let mut frontier = vec![t.clone()];
            while let Some(u) = frontier.pop() {
                for e in u.inner_edges() {
                    let v = u.contract_edge(&e.path)?;
                    if bfs.insert(v.clone()) {
                        frontier.push(v);
                    }
                }
            }
            if bfs != cl {
                return Ok(Check::fail("trees.closure", format!("{t}: closure differs from single contractions")));
            }
        }
    }
    Ok(Check::pass("trees.closure", "reflexive, transitive, graded"))
}

fn dendriform_image(t: &Tree, half: Half, truncation: usize) -> tridend_core::Result<TriSeries<Tree>> {
    match t {
        Tree::Leaf => Ok(TriSeries::one(truncation)),
        Tree::Node(c) => {
            let left = dendriform_image(&c[0], half, truncation)?;
            let right = dendriform_image(&c[1], half, truncation)?;
            let y = TriSeries::generator(truncation);
            match half {
                Half::L => left.succ(&y)?.preceq(&right),
                Half::R => left.succeq(&y)?.prec(&right),
            }
        }
    }
}

fn tree_f_lr(c: &SuiteConfig) -> anyhow::Result<Check> {
    let o = DescentOrientation::AsPrinted;
    let mut count = 0;
    for n in 1..=c.max_degree {
        for t in enumerate_trees(n)?.into_iter().filter(Tree::is_binary) {
            let d = t.descent_stats(o).strict;
            for half in [Half::L, Half::R] {
                let image = f_lr(&t, half)?;
                let on_level = image.terms().keys().all(|u| {
                    let s = u.descent_stats(o);
                    match half {
                        Half::L => s.weak == d,
                        Half::R => s.strict == d,
                    }
                });
                if image != dendriform_image(&t, half, n)? || !on_level {
                    return Ok(Check::fail("trees.f_lr", format!("{t} {half:?}")));
                }
                count += 1;
            }
        }
    }
    Ok(Check::pass("trees.f_lr", format!("{count} images match the dendriform recursion")))
}

fn surj_counts(c: &SuiteConfig) -> anyhow::Result<Check> {
    let expected = fubini(c.max_n);
    let got: Vec<usize> = (1..=c.max_n).map(|n| enumerate_surjections(n).len()).collect();
    let ok = got.iter().zip(&expected[1..]).all(|(g, e)| BigInt::from(*g) == *e);
    Ok(Check::from_bool("surj.counts", ok, format!("counts {got:?}")))
}

fn surj_products(c: &SuiteConfig) -> anyhow::Result<Check> {
    let mut pairs = 0;
    for n in 1..c.max_n {
        for m in 1..=(c.max_n - n) {
            for f in enumerate_surjections(n) {
                for g in enumerate_surjections(m) {
                    pairs += 1;
                    let mut by_op: BTreeMap<TriOp, BTreeSet<Surjection>> = BTreeMap::new();
                    for (w, op) in standard_juxtapositions(&f, &g) {
                        by_op.entry(op).or_default().insert(w);
                    }
                    for op in TriOp::ALL {
                        let got: BTreeSet<Surjection> = wq_product(&f, &g, op).into_iter().collect();
                        if got != by_op.remove(&op).unwrap_or_default() {
                            return Ok(Check::fail("surj.products", format!("{f} {} {g}", op.symbol())));
                        }
                    }
                }
            }
        }
    }
    Ok(Check::pass("surj.products", format!("{pairs} pairs split into ≺, ≻, ·")))
}

fn surj_psi(c: &SuiteConfig) -> anyhow::Result<Check> {
    let ledger = witness_ledger(c)?;
    let level = ledger.conventions.level;
    for n in 1..=c.max_n {
        for f in enumerate_surjections(n) {
            let lt = to_leveled_tree(&f, level);
            if from_leveled_tree(&lt, level)? != f || lt.shape != forget_levels(&f, level) {
                return Ok(Check::fail("surj.psi", format!("{f}: round trip")));
            }
            if f.descents() != lt.shape.descent_stats(ledger.conventions.descent) {
                return Ok(Check::fail("surj.psi", format!("{f}: descents")));
            }
        }
        let index = FiberIndex::build(n, level);
        let trees = enumerate_trees(n)?;
        let total: usize = trees.iter().map(|t| index.fiber(t).len()).sum();
        if total != enumerate_surjections(n).len() || trees.iter().any(|t| index.fiber(t).is_empty()) {
            return Ok(Check::fail("surj.psi", format!("fibers of degree {n} do not partition")));
        }
    }
    Ok(Check::pass("surj.psi", "round trip, descents, fibers"))
}

fn surj_psi_star(c: &SuiteConfig) -> anyhow::Result<Check> {
    let level = witness_ledger(c)?.conventions.level;
    let total = c.max_degree.max(c.max_n);
    let trees: Vec<Tree> = trees_up_to(total).into_iter().skip(1).flatten().collect();
    let mut pairs = 0;
    for s in &trees {
        for t in &trees {
            if s.degree() + t.degree() > total {
                continue;
            }
            pairs += 1;
            let ms = TriSeries::monomial(s.clone(), Q::one(), total);
            let mt = TriSeries::monomial(t.clone(), Q::one(), total);
            let (ps, pt) = (psi_series(&ms, level)?, psi_series(&mt, level)?);
            for op in TriOp::ALL {
                if psi_series(&ms.op(&mt, op)?, level)? != ps.op(&pt, op)? {
                    return Ok(Check::fail("surj.psi_star", format!("{s} {} {t}", op.symbol())));
                }
            }
        }
    }
    Ok(Check::pass("surj.psi_star", format!("{pairs} pairs up to total degree {total}")))
}

/// Greedily drops terms and unifies coefficients while `fails` holds.
pub fn shrink<B: TriBasis>(mut triple: [TriSeries<B>; 3], fails: impl Fn(&[TriSeries<B>; 3]) -> bool) -> [TriSeries<B>; 3] {
    loop {
        let mut changed = false;
        for i in 0..3 {
            let terms: Vec<(B, Q)> = triple[i].terms().iter().map(|(b, q)| (b.clone(), q.clone())).collect();
            let trunc = triple[i].truncation();
            for k in 0..terms.len() {
                let mut candidates = Vec::new();
                if terms.len() > 1 {
                    let rest = terms.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, t)| t.clone());
                    candidates.push(TriSeries::from_terms(Q::zero(), rest, trunc));
                }
                if !terms[k].1.is_one() {
                    let mut unit = terms.clone();
                    unit[k].1 = Q::one();
                    candidates.push(TriSeries::from_terms(Q::zero(), unit, trunc));
                }
                for cand in candidates {
                    let mut next = triple.clone();
                    next[i] = cand;
                    if fails(&next) {
                        triple = next;
                        changed = true;
                        break;
                    }
                }
                if changed {
                    break;
                }
            }
            if changed {
                break;
            }
        }
        if !changed {
            return triple;
        }
    }
}

fn free_laws<B: TriBasis>(
    name: &'static str,
    c: &SuiteConfig,
    stream: u64,
    basis: &[Vec<B>],
    cap: usize,
) -> anyhow::Result<Check> {
    let total = cap + 2;
    let alg = FreeAlgebra::<B>::new(total);
    let violated = |t: &[TriSeries<B>; 3]| all_laws(&alg, &t[0], &t[1], &t[2]).map(|v| !v.is_empty()).unwrap_or(true);
    let mut r = rng::seeded(c.seed.wrapping_add(stream));
    for k in 0..c.samples {
        let triple = rng::triple(&mut r, basis, cap, total);
        let bad = all_laws(&alg, &triple[0], &triple[1], &triple[2])?;
        if !bad.is_empty() {
            let small = shrink(triple, violated);
            let laws = all_laws(&alg, &small[0], &small[1], &small[2]).unwrap_or_default();
            let mut check = Check::fail(name, format!("sample {k}: {}", bad.join(", ")));
            check.reproducer = Some(format!("a = {}\nb = {}\nc = {}\nviolates {}", small[0], small[1], small[2], laws.join(", ")));
            return Ok(check);
        }
    }
    Ok(Check::pass(name, format!("{} triples, degrees ≤ {cap}", c.samples)))
}

fn laws_trees(c: &SuiteConfig) -> anyhow::Result<Check> {
    let basis: Vec<Vec<Tree>> = trees_up_to(c.max_degree);
    free_laws("laws.trees", c, 1, &basis, c.max_degree)
}

fn laws_surjections(c: &SuiteConfig) -> anyhow::Result<Check> {
    let basis: Vec<Vec<Surjection>> =
        (0..=c.max_n).map(|n| if n == 0 { Vec::new() } else { enumerate_surjections(n) }).collect();
    free_laws("laws.surjections", c, 2, &basis, c.max_n)
}

const SEQ_DIM: usize = 2;
const SEQ_HORIZON: usize = 7;

fn laws_sequences(c: &SuiteConfig) -> anyhow::Result<Check> {
    let mut r = rng::seeded(c.seed.wrapping_add(3));
    for k in 0..c.samples {
        let [a, b, d] = [0; 3].map(|_| rng::matseq(&mut r, SEQ_DIM, SEQ_HORIZON));
        let bad = all_laws(&Sequences { dim: SEQ_DIM, horizon: SEQ_HORIZON }, &a, &b, &d)?;
        if !bad.is_empty() {
            // the shortest prefix that still fails
            let mut h = 1;
            while h < SEQ_HORIZON {
                let t = Sequences { dim: SEQ_DIM, horizon: h };
                if !all_laws(&t, &a.prefix(h)?, &b.prefix(h)?, &d.prefix(h)?)?.is_empty() {
                    break;
                }
                h += 1;
            }
            let mut check = Check::fail("laws.sequences", format!("sample {k}: {}", bad.join(", ")));
            check.reproducer = Some(format!(
                "a = {}\nb = {}\nc = {}",
                seq_text(&a.prefix(h)?),
                seq_text(&b.prefix(h)?),
                seq_text(&d.prefix(h)?)
            ));
            return Ok(check);
        }
    }
    Ok(Check::pass("laws.sequences", format!("{} triples, {SEQ_DIM}×{SEQ_DIM}, N < {SEQ_HORIZON}", c.samples)))
}

fn seq_text(a: &MatSeq) -> String {
    json::matseq(a).to_string()
}

fn seq_rota_baxter(c: &SuiteConfig) -> anyhow::Result<Check> {
    let mut r = rng::seeded(c.seed.wrapping_add(4));
    for dim in 1..=3 {
        for h in [0, 1, 5, 8] {
            let f = rng::matseq(&mut r, dim, h);
            let g = rng::matseq(&mut r, dim, h);
            let (sf, sg) = (f.summ(), g.summ());
            let lhs = sf.pointwise(&sg)?;
            let inner = sf.pointwise(&g)?.add(&f.pointwise(&sg)?)?.add(&f.pointwise(&g)?)?;
            if inner.summ() != lhs || f.summ().diff() != f {
                return Ok(Check::fail("seq.rota_baxter", format!("dim {dim}, horizon {h}")));
            }
        }
    }
    Ok(Check::pass("seq.rota_baxter", "S(f)S(g) = S(S(f)g + fS(g) + fg), DS = id"))
}

fn seq_partition(c: &SuiteConfig) -> anyhow::Result<Check> {
    let o = witness_ledger(c)?.conventions.t_orientation;
    for len in 1..=c.max_n {
        for n in 0..=7 {
            if !partition_holds(len, n, o) {
                return Ok(Check::fail("seq.partition", format!("n = {len}, N = {n}")));
            }
            for sigma in enumerate_surjections(len) {
                if BigInt::from(enumerate_t(&sigma, n, o).len()) != t_count(&sigma, n) {
                    return Ok(Check::fail("seq.partition", format!("{sigma}, N = {n}: count")));
                }
            }
        }
    }
    Ok(Check::pass("seq.partition", format!("n ≤ {}, N ≤ 7", c.max_n)))
}

fn seq_splitting(c: &SuiteConfig) -> anyhow::Result<Check> {
    let o = witness_ledger(c)?.conventions.t_orientation;
    let total = c.max_n + 1;
    for n in 1..total {
        for m in 1..=(total - n) {
            for sigma in enumerate_surjections(n) {
                for tau in enumerate_surjections(m) {
                    for big_n in 0..=7 {
                        let r = split_check(&sigma, &tau, big_n, o);
                        if !r.ok() {
                            return Ok(Check::fail("seq.splitting", format!("{sigma} | {tau}, N = {big_n}: {r:?}")));
                        }
                    }
                }
            }
        }
    }
    Ok(Check::pass("seq.splitting", format!("n + m ≤ {total}, N ≤ 7")))
}

fn witness(c: &SuiteConfig, horizon: usize) -> MatSeq {
    rng::matseq(&mut rng::seeded(c.seed.wrapping_add(5)), 2, horizon)
}

fn witness_ledger(c: &SuiteConfig) -> anyhow::Result<ConventionLedger> {
    Ok(resolve_conventions(&witness(c, 5))?)
}

fn seq_realization(c: &SuiteConfig) -> anyhow::Result<Check> {
    let l = witness_ledger(c)?;
    let a = witness(c, 9);
    let ok = realization_holds(&a, l.conventions.t_orientation, l.conventions.level, c.max_degree)?;
    Ok(Check::from_bool("seq.realization", ok, format!("F_a = F̃_a ∘ Ψ* for degree ≤ {}, N ≤ 8", c.max_degree)))
}

fn magnus_resolution(c: &SuiteConfig) -> anyhow::Result<Check> {
    match witness_ledger(c) {
        Ok(l) => {
            let c = l.conventions;
            let flags = [json::descent_name(c.descent), json::sign_name(c.sign), json::t_name(c.t_orientation), json::level_name(c.level)];
            Ok(Check::pass("magnus.resolution", format!("unique combination {}", flags.join(" / "))))
        }
        Err(e) => Ok(Check::fail("magnus.resolution", format!("{e:#}"))),
    }
}

fn magnus_closed(c: &SuiteConfig) -> anyhow::Result<Check> {
    let l = witness_ledger(c)?;
    for flavor in Flavor::ALL {
        let trees = closed_formula::<Tree>(flavor, c.max_degree, &l)?.payload;
        if trees != oracle_log::<Tree>(flavor, c.max_degree).payload {
            return Ok(Check::fail("magnus.closed", format!("{flavor:?} trees")));
        }
        let surj = closed_formula::<Surjection>(flavor, c.max_n, &l)?.payload;
        if surj != oracle_log::<Surjection>(flavor, c.max_n).payload
            || psi_series(&trees.truncated(c.max_n), l.conventions.level)? != surj.truncated(c.max_degree)
        {
            return Ok(Check::fail("magnus.closed", format!("{flavor:?} surjections")));
        }
    }
    Ok(Check::pass("magnus.closed", "closed formula = log*(X) in both bases"))
}

fn magnus_prelie(c: &SuiteConfig) -> anyhow::Result<Check> {
    for flavor in Flavor::ALL {
        if prelie_magnus::<Tree>(flavor, c.max_degree).payload != oracle_log::<Tree>(flavor, c.max_degree).payload {
            return Ok(Check::fail("magnus.prelie", format!("{flavor:?}")));
        }
    }
    Ok(Check::pass("magnus.prelie", "pre-Lie recursion = log*(X)"))
}

fn magnus_exp(c: &SuiteConfig) -> anyhow::Result<Check> {
    let l = witness_ledger(c)?;
    let a = witness(c, 5);
    let reports = exp_check(&a, c.max_degree.min(c.max_n), &l)?;
    let bad: Vec<String> = reports.iter().filter(|r| !r.ok()).map(|r| format!("{r:?}")).collect();
    Ok(Check::from_bool("magnus.exp", bad.is_empty(), if bad.is_empty() { "exp*(Ω′) = X".to_string() } else { bad.join("; ") }))
}

fn magnus_discrete(c: &SuiteConfig) -> anyhow::Result<Check> {
    let l = witness_ledger(c)?;
    let upto = 8;
    let trunc = c.max_degree;
    let mut r = rng::seeded(c.seed.wrapping_add(6));
    for dim in 1..=2 {
        let a = rng::matseq(&mut r, dim, upto);
        for flavor in Flavor::ALL {
            let fast = discrete_mps(&a, upto, trunc, flavor, &l)?.payload;
            let diag = discrete_mps_diagonal(&a, upto, trunc, flavor, &l)?.payload;
            let oracle = discrete_mps_oracle(&a, upto, trunc, flavor)?;
            if fast != diag || fast != oracle {
                return Ok(Check::fail("magnus.discrete", format!("d = {dim}, {flavor:?}")));
            }
        }
    }
    Ok(Check::pass("magnus.discrete", format!("tree sum = diagonal sum = S(log*(X)), degrees ≤ {trunc}, N ≤ {upto}")))
}

fn magnus_scalar(c: &SuiteConfig) -> anyhow::Result<Check> {
    let l = witness_ledger(c)?;
    let upto = 10;
    let trunc = c.max_degree;
    let omega = discrete_mps(&scalar_ones(upto), upto, trunc, Flavor::Strict, &l)?.payload;
    for n in 1..=trunc {
        for big_n in 0..=upto {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let expected = Q::new(BigInt::from(sign * big_n as i64), BigInt::from(n));
            if omega.at(n, big_n)?.get(0, 0) != &expected {
                return Ok(Check::fail("magnus.scalar", format!("degree {n}, N = {big_n}")));
            }
        }
    }
    Ok(Check::pass("magnus.scalar", "a ≡ 1 gives N·log(1 + h)"))
}

pub fn render<T: Display>(checks: &[Check], header: T) -> String {
    let mut out = format!("{header}\n");
    for c in checks {
        out.push_str(&format!("{} {:<18} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        if let Some(r) = &c.reproducer {
            for line in r.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
    }
    out
}
