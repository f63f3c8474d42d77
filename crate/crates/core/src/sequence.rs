//! Matrix-valued sequences with the prefix-sum operator `S f(N) = Σ_{r<N} f(r)`,
//! the tridendriform structure `f ≺ g = f·Sg`, `f ≻ g = Sf·g`, `f · g = fg`,
//! partial diagonals `T_σ(N)` and the two evaluations of trees.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{binomial, Matrix, Q};
use crate::series::{StarAlgebra, TriOp, TriSeries, TriTarget};
use crate::surjection::{standard_juxtapositions, Surjection};
use crate::tree::Tree;
use crate::{Error, Result};

/// A finite prefix `f(0), …, f(H−1)` of a sequence of `d×d` matrices.
/// `H` is the horizon.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatSeq {
    dim: usize,
    values: Vec<Matrix>,
}

impl MatSeq {
    pub fn new(dim: usize, values: Vec<Matrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be positive".into()));
        }
        for m in &values {
            if m.dim() != dim {
                return Err(Error::Dimension(dim, m.dim()));
            }
        }
        Ok(MatSeq { dim, values })
    }

    pub fn zeros(dim: usize, horizon: usize) -> Self {
        MatSeq { dim, values: vec![Matrix::zeros(dim); horizon] }
    }

    pub fn constant(m: Matrix, horizon: usize) -> Self {
        MatSeq { dim: m.dim(), values: vec![m; horizon] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Matrix] {
        &self.values
    }

    pub fn at(&self, n: usize) -> Result<&Matrix> {
        self.values.get(n).ok_or(Error::Horizon { index: n, horizon: self.values.len() })
    }

    /// The first `horizon` values.
    pub fn prefix(&self, horizon: usize) -> Result<Self> {
        if horizon > self.values.len() {
            return Err(Error::Horizon { index: horizon, horizon: self.values.len() });
        }
        Ok(MatSeq { dim: self.dim, values: self.values[..horizon].to_vec() })
    }

    /// `S f`, defined one step further than `f`.
    pub fn summ(&self) -> Self {
        let mut acc = Matrix::zeros(self.dim);
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.push(acc.clone());
        for m in &self.values {
            acc.add_assign(m);
            values.push(acc.clone());
        }
        MatSeq { dim: self.dim, values }
    }

    /// `D f(N) = f(N+1) − f(N)`, defined one step less than `f`.
    pub fn diff(&self) -> Self {
        let values = self.values.windows(2).map(|w| w[1].sub(&w[0])).collect();
        MatSeq { dim: self.dim, values }
    }

    fn check(&self, other: &Self) -> Result<usize> {
        if self.dim != other.dim {
            return Err(Error::Dimension(self.dim, other.dim));
        }
        Ok(self.values.len().min(other.values.len()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let h = self.check(other)?;
        let values = (0..h).map(|n| self.values[n].add(&other.values[n])).collect();
        Ok(MatSeq { dim: self.dim, values })
    }

    pub fn scale(&self, c: &Q) -> Self {
        MatSeq { dim: self.dim, values: self.values.iter().map(|m| m.scale(c)).collect() }
    }

    /// Pointwise product over the common horizon.
    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        let h = self.check(other)?;
        let values = (0..h).map(|n| self.values[n].mul(&other.values[n])).collect();
        Ok(MatSeq { dim: self.dim, values })
    }

    pub fn tri(&self, other: &Self, op: TriOp) -> Result<Self> {
        match op {
            TriOp::Prec => self.pointwise(&other.summ()),
            TriOp::Succ => self.summ().pointwise(other),
            TriOp::Dot => self.pointwise(other),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Matrix::is_zero)
    }
}

/// The sequence algebra for a fixed dimension and horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sequences {
    pub dim: usize,
    pub horizon: usize,
}

impl TriTarget for Sequences {
    type Elem = MatSeq;

    fn zero(&self) -> MatSeq {
        MatSeq::zeros(self.dim, self.horizon)
    }
    fn add(&self, a: &MatSeq, b: &MatSeq) -> MatSeq {
        a.add(b).expect("sequences of one algebra share their dimension")
    }
    fn scale(&self, a: &MatSeq, c: &Q) -> MatSeq {
        a.scale(c)
    }
    fn op(&self, a: &MatSeq, b: &MatSeq, op: TriOp) -> Result<MatSeq> {
        a.tri(b, op)
    }
}

/// How a surjection prescribes the order pattern of a point of `T_σ(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TOrientation {
    /// `sᵢ < sⱼ ⇔ σ(i) < σ(j)`
    NonInverted,
    /// `sᵢ > sⱼ ⇔ σ(i) < σ(j)`
    Inverted,
}

impl TOrientation {
    pub const ALL: [TOrientation; 2] = [TOrientation::NonInverted, TOrientation::Inverted];

    /// The surjection whose pattern the tuple `s` has.
    pub fn pattern(self, s: &[usize]) -> Surjection {
        let distinct: BTreeSet<usize> = s.iter().copied().collect();
        let rank: BTreeMap<usize, u32> = distinct.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect();
        let r = distinct.len() as u32;
        let word = s
            .iter()
            .map(|v| match self {
                TOrientation::NonInverted => rank[v],
                TOrientation::Inverted => r + 1 - rank[v],
            })
            .collect();
        Surjection::new(word).expect("rank pattern is packed")
    }

    /// Which of `≺`, `≻`, `·` the pair `(s, t)` falls under.
    pub fn split(self, s: &[usize], t: &[usize]) -> TriOp {
        use core::cmp::Ordering::*;
        let ord = match self {
            TOrientation::NonInverted => s.iter().max().cmp(&t.iter().max()),
            TOrientation::Inverted => t.iter().min().cmp(&s.iter().min()),
        };
        match ord {
            Greater => TriOp::Prec,
            Less => TriOp::Succ,
            Equal => TriOp::Dot,
        }
    }
}

/// The points of `T_σ(N)` in lexicographic order.
pub fn enumerate_t(sigma: &Surjection, n: usize, orientation: TOrientation) -> Vec<Vec<usize>> {
    let r = sigma.range() as usize;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    choose(n, r, 0, &mut chosen, &mut |v| {
        out.push(
            sigma
                .word()
                .iter()
                .map(|&k| match orientation {
                    TOrientation::NonInverted => v[k as usize - 1],
                    TOrientation::Inverted => v[r - k as usize],
                })
                .collect(),
        );
    });
    out.sort();
    out
}

fn choose(n: usize, r: usize, start: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if chosen.len() == r {
        emit(chosen);
        return;
    }
    let need = r - chosen.len();
    for v in start..n {
        if n - v < need {
            break;
        }
        chosen.push(v);
        choose(n, r, v + 1, chosen, emit);
        chosen.pop();
    }
}

/// `|T_σ(N)| = C(N, r)`.
pub fn t_count(sigma: &Surjection, n: usize) -> BigInt {
    binomial(n, sigma.range() as usize)
}

/// Every point of `{0..N−1}ⁿ` lies in exactly one `T_σ(N)`, `σ ∈ ST_n`.
pub fn partition_holds(length: usize, n: usize, orientation: TOrientation) -> bool {
    let mut seen = BTreeSet::new();
    for sigma in crate::surjection::enumerate_surjections(length) {
        for s in enumerate_t(&sigma, n, orientation) {
            if s.len() != length || s.iter().any(|&x| x >= n) || !seen.insert(s) {
                return false;
            }
        }
    }
    let total = n.checked_pow(length as u32);
    total == Some(seen.len())
}

/// Outcome of checking the three-part splitting of `T_σ(N) × T_τ(N)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitReport {
    pub pairs: usize,
    /// Pairs falling under `≺`, `≻`, `·`.
    pub parts: [usize; 3],
    /// Pairs whose concatenation is not a point of a juxtaposition with the
    /// matching tag.
    pub counterexamples: Vec<(Vec<usize>, Vec<usize>)>,
    /// Juxtapositions `FG` whose `T_{FG}(N)` is not fully covered.
    pub uncovered: Vec<Surjection>,
}

impl SplitReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty() && self.uncovered.is_empty()
    }
}

pub fn split_check(sigma: &Surjection, tau: &Surjection, n: usize, orientation: TOrientation) -> SplitReport {
    let juxt: BTreeMap<Surjection, TriOp> = standard_juxtapositions(sigma, tau).into_iter().collect();
    let mut hits: BTreeMap<Surjection, usize> = BTreeMap::new();
    let mut report = SplitReport::default();
    let left = enumerate_t(sigma, n, orientation);
    let right = enumerate_t(tau, n, orientation);
    for s in &left {
        for t in &right {
            report.pairs += 1;
            let op = orientation.split(s, t);
            report.parts[op as usize] += 1;
            let joined: Vec<usize> = s.iter().chain(t).copied().collect();
            let w = orientation.pattern(&joined);
            if juxt.get(&w) == Some(&op) {
                *hits.entry(w).or_insert(0) += 1;
            } else {
                report.counterexamples.push((s.clone(), t.clone()));
            }
        }
    }
    for w in juxt.keys() {
        let expected = t_count(w, n).to_usize().unwrap_or(usize::MAX);
        if hits.get(w).copied().unwrap_or(0) != expected {
            report.uncovered.push(w.clone());
        }
    }
    report
}

/// `N ↦ Σ_{T_σ(N)} a(s₁)⋯a(sₙ)` for `N = 0..=H`.
pub fn diagonal_sum(sigma: &Surjection, a: &MatSeq, orientation: TOrientation) -> MatSeq {
    let values = (0..=a.horizon())
        .map(|n| {
            let mut acc = Matrix::zeros(a.dim);
            for s in enumerate_t(sigma, n, orientation) {
                let mut p = a.values[s[0]].clone();
                for &i in &s[1..] {
                    p = p.mul(&a.values[i]);
                }
                acc.add_assign(&p);
            }
            acc
        })
        .collect();
    MatSeq { dim: a.dim, values }
}

/// `F̃_a(σ) = D(N ↦ Σ_{T_σ(N)} a(s₁)⋯a(sₙ))`, for `N < H`.
pub fn f_tilde(sigma: &Surjection, a: &MatSeq, orientation: TOrientation) -> MatSeq {
    diagonal_sum(sigma, a, orientation).diff()
}

/// Linear extension of [`f_tilde`]; the scalar part must vanish.
pub fn f_tilde_series(x: &TriSeries<Surjection>, a: &MatSeq, orientation: TOrientation) -> Result<MatSeq> {
    if !x.scalar().is_zero() {
        return Err(Error::Domain("F̃_a is defined on unit-free series".into()));
    }
    let mut acc = MatSeq::zeros(a.dim, a.horizon());
    for (sigma, c) in x.terms() {
        acc = acc.add(&f_tilde(sigma, a, orientation).scale(c))?;
    }
    Ok(acc)
}

/// Integer ring used by [`FastEvaluator`]: `i128` with overflow detection,
/// then `BigInt`.
trait Ring: Clone + Zero {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) -> Option<()>;
    fn add_acc(acc: &mut Self, a: &Self) -> Option<()>;
}

impl Ring for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc = acc.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    fn add_acc(acc: &mut Self, a: &Self) -> Option<()> {
        *acc = acc.checked_add(*a)?;
        Some(())
    }
}

impl Ring for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
        Some(())
    }
    fn add_acc(acc: &mut Self, a: &Self) -> Option<()> {
        *acc += a;
        Some(())
    }
}

struct Kernel<T> {
    dim: usize,
    /// `A(N) = q·a(N)`, integral.
    gen: Vec<Vec<T>>,
    /// `S̄F_A(t)(N)` for `N = 0..=H`.
    memo: BTreeMap<Tree, Vec<Vec<T>>>,
}

impl<T: Ring> Kernel<T> {
    fn new(dim: usize, gen: &[Vec<BigInt>]) -> Option<Self> {
        let gen = gen.iter().map(|m| m.iter().map(T::from_big).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
        Some(Kernel { dim, gen, memo: BTreeMap::new() })
    }

    fn matmul(&self, a: &[T], b: &[T]) -> Option<Vec<T>> {
        let d = self.dim;
        let mut out = vec![T::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = &a[i * d + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..d {
                    T::mul_acc(&mut out[i * d + j], x, &b[k * d + j])?;
                }
            }
        }
        Some(out)
    }

    /// `F_A(t)(N) = S̄F(t₁)(N)·A(N)·S̄F(t₂)(N)⋯A(N)·S̄F(tₖ)(N)` with `S̄F(|) = I`,
    /// accumulated into `S̄F_A(t)`.
    fn sbar(&mut self, t: &Tree) -> Option<()> {
        if self.memo.contains_key(t) {
            return Some(());
        }
        let children = t.children();
        for c in children {
            if !c.is_leaf() {
                self.sbar(c)?;
            }
        }
        let h = self.gen.len();
        let d = self.dim;
        let mut out = Vec::with_capacity(h + 1);
        let mut acc = vec![T::zero(); d * d];
        out.push(acc.clone());
        for n in 0..h {
            let mut p: Option<Vec<T>> = None;
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    p = Some(match p {
                        None => self.gen[n].clone(),
                        Some(x) => self.matmul(&x, &self.gen[n])?,
                    });
                }
                if !c.is_leaf() {
                    let s = &self.memo[c][n];
                    p = Some(match p {
                        None => s.clone(),
                        Some(x) => self.matmul(&x, s)?,
                    });
                }
            }
            let p = p.expect("a vertex has at least two children");
            for (x, y) in acc.iter_mut().zip(&p) {
                T::add_acc(x, y)?;
            }
            out.push(acc.clone());
        }
        self.memo.insert(t.clone(), out);
        Some(())
    }
}

enum Mode {
    Small(Kernel<i128>),
    Big(Kernel<BigInt>),
}

/// Evaluates `F_a(t)` on trees by the recursive prefix-sum formula, `O(H·|t|)`
/// matrix products per tree with subtrees shared. Arithmetic is integral:
/// `F_a(t) = F_{qa}(t)/q^{|t|}` for `q` the common denominator of `a`.
pub struct FastEvaluator {
    dim: usize,
    horizon: usize,
    scale: BigInt,
    gen: Vec<Vec<BigInt>>,
    mode: Mode,
}

impl FastEvaluator {
    pub fn new(a: &MatSeq) -> Self {
        let scale = a.values.iter().fold(BigInt::one(), |acc, m| acc.lcm(&m.denominator_lcm()));
        let gen: Vec<Vec<BigInt>> = a
            .values
            .iter()
            .map(|m| m.entries().iter().map(|x| x.numer() * (&scale / x.denom())).collect())
            .collect();
        let mode = match Kernel::new(a.dim, &gen) {
            Some(k) => Mode::Small(k),
            None => Mode::Big(Kernel::new(a.dim, &gen).expect("BigInt holds any integer")),
        };
        FastEvaluator { dim: a.dim, horizon: a.horizon(), scale, gen, mode }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Whether the evaluator fell back to arbitrary-precision integers.
    pub fn is_big(&self) -> bool {
        matches!(self.mode, Mode::Big(_))
    }

    fn ensure(&mut self, t: &Tree) {
        if let Mode::Small(k) = &mut self.mode {
            if k.sbar(t).is_some() {
                return;
            }
            self.mode = Mode::Big(Kernel::new(self.dim, &self.gen).expect("BigInt holds any integer"));
        }
        if let Mode::Big(k) = &mut self.mode {
            k.sbar(t).expect("BigInt arithmetic does not overflow");
        }
    }

    /// `S̄F_A(t)(N)` as big integers, for `N = 0..=H`.
    fn sbar_big(&mut self, t: &Tree) -> Vec<Vec<BigInt>> {
        self.ensure(t);
        match &self.mode {
            Mode::Small(k) => k.memo[t].iter().map(|m| m.iter().map(Ring::to_big).collect()).collect(),
            Mode::Big(k) => k.memo[t].clone(),
        }
    }

    fn to_matseq(&self, ints: Vec<Vec<BigInt>>, denom: &BigInt) -> MatSeq {
        let d = self.dim;
        let values = ints
            .into_iter()
            .map(|m| {
                let rows = m.chunks(d).map(|r| r.iter().map(|x| Q::new(x.clone(), denom.clone())).collect()).collect();
                Matrix::from_rows(rows).expect("square by construction")
            })
            .collect();
        MatSeq { dim: d, values }
    }

    /// `S(Σ c_t F_a(t))(N)` for `N = 0..=H`.
    pub fn summed(&mut self, terms: &[(Tree, Q)]) -> Result<MatSeq> {
        let d = self.dim;
        let mut by_degree: BTreeMap<usize, Vec<(&Tree, &Q)>> = BTreeMap::new();
        for (t, c) in terms {
            if t.is_leaf() {
                return Err(Error::Domain("F_a is evaluated on trees of degree ≥ 1".into()));
            }
            by_degree.entry(t.degree()).or_default().push((t, c));
        }
        let mut out = MatSeq::zeros(d, self.horizon + 1);
        for (deg, group) in by_degree {
            let lcm = group.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            let mut acc = vec![vec![BigInt::zero(); d * d]; self.horizon + 1];
            for (t, c) in group {
                let k = c.numer() * (&lcm / c.denom());
                if k.is_zero() {
                    continue;
                }
                let s = self.sbar_big(t);
                for (row, m) in acc.iter_mut().zip(&s) {
                    for (x, y) in row.iter_mut().zip(m) {
                        if !y.is_zero() {
                            *x += &k * y;
                        }
                    }
                }
            }
            let denom = lcm * num_traits::pow(self.scale.clone(), deg);
            out = out.add(&self.to_matseq(acc, &denom))?;
        }
        Ok(out)
    }

    /// `Σ c_t F_a(t)(N)` for `N < H`.
    pub fn combination(&mut self, terms: &[(Tree, Q)]) -> Result<MatSeq> {
        Ok(self.summed(terms)?.diff())
    }

    /// `F_a(t)(N)` for `N < H`.
    pub fn eval(&mut self, t: &Tree) -> Result<MatSeq> {
        self.combination(&[(t.clone(), Q::one())])
    }

    /// `F_a(x)` for a unit-free tree series.
    pub fn eval_series(&mut self, x: &TriSeries<Tree>) -> Result<MatSeq> {
        if !x.scalar().is_zero() {
            return Err(Error::Domain("a sequence has no unit; drop the scalar part".into()));
        }
        let terms: Vec<(Tree, Q)> = x.terms().iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        if terms.is_empty() {
            return Ok(MatSeq::zeros(self.dim, self.horizon));
        }
        self.combination(&terms)
    }
}

/// `F_a(t)` by the fast recursion.
pub fn fast_eval(t: &Tree, a: &MatSeq) -> Result<MatSeq> {
    FastEvaluator::new(a).eval(t)
}

/// A graded series whose degree-`n` coefficient is a matrix sequence, with a
/// scalar part standing for the adjoined unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSeq {
    dim: usize,
    horizon: usize,
    scalar: Q,
    /// `components[n − 1]` is the degree-`n` coefficient.
    components: Vec<MatSeq>,
}

impl GradedSeq {
    pub fn zero(dim: usize, horizon: usize, truncation: usize) -> Self {
        GradedSeq { dim, horizon, scalar: Q::zero(), components: vec![MatSeq::zeros(dim, horizon); truncation] }
    }

    pub fn one(dim: usize, horizon: usize, truncation: usize) -> Self {
        let mut g = Self::zero(dim, horizon, truncation);
        g.scalar = Q::one();
        g
    }

    /// `a` placed in degree 1.
    pub fn generator(a: &MatSeq, truncation: usize) -> Self {
        let mut g = Self::zero(a.dim, a.horizon(), truncation);
        if truncation > 0 {
            g.components[0] = a.clone();
        }
        g
    }

    pub fn from_components(scalar: Q, components: Vec<MatSeq>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::Domain("no components".into()))?;
        let (dim, horizon) = (first.dim, first.horizon());
        for c in &components {
            if c.dim != dim {
                return Err(Error::Dimension(dim, c.dim));
            }
            if c.horizon() != horizon {
                return Err(Error::Horizon { index: c.horizon(), horizon });
            }
        }
        Ok(GradedSeq { dim, horizon, scalar, components })
    }

    /// `F_a(x)` degree by degree through the fast evaluator.
    pub fn realize(x: &TriSeries<Tree>, a: &MatSeq) -> Result<Self> {
        let mut ev = FastEvaluator::new(a);
        let mut g = Self::zero(a.dim, a.horizon(), x.truncation());
        g.scalar = x.scalar().clone();
        for n in 1..=x.truncation() {
            let terms: Vec<(Tree, Q)> =
                x.terms().iter().filter(|(t, _)| t.degree() == n).map(|(t, c)| (t.clone(), c.clone())).collect();
            if !terms.is_empty() {
                g.components[n - 1] = ev.combination(&terms)?;
            }
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn truncation(&self) -> usize {
        self.components.len()
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    /// Degree-`n` coefficient, `n ≥ 1`.
    pub fn component(&self, n: usize) -> Option<&MatSeq> {
        n.checked_sub(1).and_then(|i| self.components.get(i))
    }

    pub fn components(&self) -> &[MatSeq] {
        &self.components
    }

    /// Degree-`n` coefficient at `N`.
    pub fn at(&self, n: usize, index: usize) -> Result<&Matrix> {
        self.component(n)
            .ok_or(Error::DegreeCap { degree: n, cap: self.components.len() })?
            .at(index)
    }

    /// `S̄` on every component: `S` on positive degrees, the scalar kept.
    pub fn summ(&self) -> Self {
        GradedSeq {
            dim: self.dim,
            horizon: self.horizon + 1,
            scalar: self.scalar.clone(),
            components: self.components.iter().map(MatSeq::summ).collect(),
        }
    }

    fn with_len(&self, truncation: usize, horizon: usize) -> Self {
        let mut g = Self::zero(self.dim, horizon, truncation);
        g.scalar = self.scalar.clone();
        for (i, c) in self.components.iter().take(truncation).enumerate() {
            g.components[i] = c.prefix(horizon).expect("horizon only shrinks");
        }
        g
    }

    pub fn plus(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let h = self.horizon.min(other.horizon);
        let mut out = self.with_len(t, h);
        out.scalar += &other.scalar;
        for i in 0..t {
            out.components[i] = out.components[i].add(&other.components[i]).expect("same dimension");
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        GradedSeq {
            dim: self.dim,
            horizon: self.horizon,
            scalar: &self.scalar * c,
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Graded product with the unit rules of the augmented algebra.
    pub fn op(&self, other: &Self, op: TriOp) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(self.dim, other.dim));
        }
        if !self.scalar.is_zero() && !other.scalar.is_zero() {
            return Err(Error::UndefinedUnitProduct(op.symbol()));
        }
        let mut out = self.graded(other, |x, y| x.tri(y, op))?;
        match op {
            TriOp::Prec if !other.scalar.is_zero() => out = out.plus(&self.unit_free().scale(&other.scalar)),
            TriOp::Succ if !self.scalar.is_zero() => out = out.plus(&other.unit_free().scale(&self.scalar)),
            _ => {}
        }
        Ok(out)
    }

    pub fn star(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(self.dim, other.dim));
        }
        let mut out = self.graded(other, |x, y| {
            let p = x.tri(y, TriOp::Prec)?;
            let s = x.tri(y, TriOp::Succ)?;
            let d = x.tri(y, TriOp::Dot)?;
            p.add(&s)?.add(&d)
        })?;
        out = out.plus(&other.unit_free().scale(&self.scalar));
        out = out.plus(&self.unit_free().scale(&other.scalar));
        out.scalar = &self.scalar * &other.scalar;
        Ok(out)
    }

    fn unit_free(&self) -> Self {
        let mut g = self.clone();
        g.scalar = Q::zero();
        g
    }

    fn graded(&self, other: &Self, f: impl Fn(&MatSeq, &MatSeq) -> Result<MatSeq>) -> Result<Self> {
        let t = self.truncation().min(other.truncation());
        let h = self.horizon.min(other.horizon);
        let mut out = Self::zero(self.dim, h, t);
        for n in 2..=t {
            for i in 1..n {
                let (x, y) = (&self.components[i - 1], &other.components[n - i - 1]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let p = f(&x.prefix(h)?, &y.prefix(h)?)?;
                out.components[n - 1] = out.components[n - 1].add(&p)?;
            }
        }
        Ok(out)
    }
}

impl StarAlgebra for GradedSeq {
    fn scalar_part(&self) -> Q {
        self.scalar.clone()
    }
    fn unit_like(&self) -> Self {
        Self::one(self.dim, self.horizon, self.truncation())
    }
    fn star_product(&self, other: &Self) -> Self {
        self.star(other).expect("same dimension")
    }
    fn sum(&self, other: &Self) -> Self {
        self.plus(other)
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn truncation_degree(&self) -> usize {
        self.truncation()
    }
}
