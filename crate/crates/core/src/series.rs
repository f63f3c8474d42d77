//! Truncated graded series over a tridendriform basis, with the unit kept
//! in a separate scalar slot.
//!
//! A [`TriSeries`] is `c·1 + Σ c_b b` with every stored basis element of
//! degree between 1 and the truncation. Products drop everything above the
//! smaller truncation of their two arguments.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{qi, Q};
use crate::surjection::{wq_product, Surjection};
use crate::tree::Tree;
use crate::{Error, Result};

/// The three tridendriform operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriOp {
    /// `≺`
    Prec,
    /// `≻`
    Succ,
    /// `·`
    Dot,
}

impl TriOp {
    pub const ALL: [TriOp; 3] = [TriOp::Prec, TriOp::Succ, TriOp::Dot];

    pub fn symbol(self) -> &'static str {
        match self {
            TriOp::Prec => "≺",
            TriOp::Succ => "≻",
            TriOp::Dot => "·",
        }
    }
}

/// The four pre-Lie products carried by a tridendriform algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreLie {
    /// `x ▷ y = x ≽ y − y ≺ x` (left pre-Lie)
    Left,
    /// `x ◁ y = x ≺ y − y ≽ x` (right pre-Lie)
    Right,
    /// `x ▷̲ y = x ≻ y − y ⪯ x` (left pre-Lie)
    LeftUnder,
    /// `x ◁̲ y = x ⪯ y − y ≻ x` (right pre-Lie)
    RightUnder,
}

impl PreLie {
    pub const ALL: [PreLie; 4] = [PreLie::Left, PreLie::Right, PreLie::LeftUnder, PreLie::RightUnder];

    pub fn is_left(self) -> bool {
        matches!(self, PreLie::Left | PreLie::LeftUnder)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordSide {
    /// `x⁽ⁿ⁾_≺ = x ≺ x⁽ⁿ⁻¹⁾_≺`
    Prec,
    /// `x⁽ⁿ⁾_≻ = x⁽ⁿ⁻¹⁾_≻ ≻ x`
    Succ,
}

/// A graded basis of a free (or freely presented) tridendriform algebra.
pub trait TriBasis: Clone + Ord + fmt::Debug + fmt::Display {
    fn degree(&self) -> usize;

    /// The degree-1 generator.
    fn generator() -> Self;

    /// Product of two basis elements of degree ≥ 1. Repeated entries count
    /// with multiplicity.
    fn product(&self, other: &Self, op: TriOp) -> Vec<Self>;
}

impl TriBasis for Tree {
    fn degree(&self) -> usize {
        Tree::degree(self)
    }

    fn generator() -> Self {
        Tree::y()
    }

    fn product(&self, other: &Self, op: TriOp) -> Vec<Self> {
        tree_product(self, other, op)
    }
}

impl TriBasis for Surjection {
    fn degree(&self) -> usize {
        self.len()
    }

    fn generator() -> Self {
        Surjection::unit_word()
    }

    fn product(&self, other: &Self, op: TriOp) -> Vec<Self> {
        wq_product(self, other, op)
    }
}

/// `s * t` on trees with `|` as the unit.
fn tree_star(s: &Tree, t: &Tree) -> Vec<Tree> {
    match (s, t) {
        (Tree::Leaf, _) => vec![t.clone()],
        (_, Tree::Leaf) => vec![s.clone()],
        _ => TriOp::ALL.iter().flat_map(|&op| tree_product(s, t, op)).collect(),
    }
}

/// For `s = ⋁(s₁…sₙ)`, `t = ⋁(t₁…tₚ)`:
/// `s ≺ t = ⋁(s₁…sₙ₋₁, sₙ*t)`, `s ≻ t = ⋁(s*t₁, t₂…tₚ)`,
/// `s · t = ⋁(s₁…sₙ₋₁, sₙ*t₁, t₂…tₚ)`.
fn tree_product(s: &Tree, t: &Tree, op: TriOp) -> Vec<Tree> {
    let (Tree::Node(sc), Tree::Node(tc)) = (s, t) else {
        panic!("tree products are taken between trees of degree ≥ 1");
    };
    let (s_init, s_last) = sc.split_at(sc.len() - 1);
    let (t_first, t_rest) = tc.split_at(1);
    match op {
        TriOp::Prec => tree_star(&s_last[0], t)
            .into_iter()
            .map(|u| Tree::Node(s_init.iter().cloned().chain([u]).collect()))
            .collect(),
        TriOp::Succ => tree_star(s, &t_first[0])
            .into_iter()
            .map(|u| Tree::Node([u].into_iter().chain(t_rest.iter().cloned()).collect()))
            .collect(),
        TriOp::Dot => tree_star(&s_last[0], &t_first[0])
            .into_iter()
            .map(|u| {
                let mut c = Vec::with_capacity(sc.len() + tc.len() - 1);
                c.extend(s_init.iter().cloned());
                c.push(u);
                c.extend(t_rest.iter().cloned());
                Tree::Node(c)
            })
            .collect(),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TriSeries<B> {
    scalar: Q,
    terms: BTreeMap<B, Q>,
    truncation: usize,
}

impl<B: TriBasis> TriSeries<B> {
    pub fn zero(truncation: usize) -> Self {
        TriSeries { scalar: Q::zero(), terms: BTreeMap::new(), truncation }
    }

    pub fn one(truncation: usize) -> Self {
        TriSeries { scalar: Q::one(), terms: BTreeMap::new(), truncation }
    }

    pub fn generator(truncation: usize) -> Self {
        Self::monomial(B::generator(), Q::one(), truncation)
    }

    /// `c·b`; a degree-0 basis element (the tree `|`) is the unit.
    pub fn monomial(b: B, c: Q, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.add_term(b, c);
        s
    }

    pub fn from_terms(scalar: Q, terms: impl IntoIterator<Item = (B, Q)>, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.scalar = scalar;
        for (b, c) in terms {
            s.add_term(b, c);
        }
        s
    }

    fn add_term(&mut self, b: B, c: Q) {
        let d = b.degree();
        if d == 0 {
            self.scalar += c;
            return;
        }
        if d > self.truncation || c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    pub fn terms(&self) -> &BTreeMap<B, Q> {
        &self.terms
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, b: &B) -> Q {
        if b.degree() == 0 {
            return self.scalar.clone();
        }
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.terms.is_empty()
    }

    pub fn is_unit_free(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(TriBasis::degree).max().unwrap_or(0)
    }

    /// The homogeneous degree-`n` part (the scalar slot for `n = 0`).
    pub fn component(&self, n: usize) -> Self {
        let mut out = Self::zero(self.truncation);
        if n == 0 {
            out.scalar = self.scalar.clone();
        } else {
            out.terms = self.terms.iter().filter(|(b, _)| b.degree() == n).map(|(b, c)| (b.clone(), c.clone())).collect();
        }
        out
    }

    pub fn truncated(&self, truncation: usize) -> Self {
        let truncation = truncation.min(self.truncation);
        TriSeries {
            scalar: self.scalar.clone(),
            terms: self.terms.iter().filter(|(b, _)| b.degree() <= truncation).map(|(b, c)| (b.clone(), c.clone())).collect(),
            truncation,
        }
    }

    pub fn without_unit(&self) -> Self {
        TriSeries { scalar: Q::zero(), terms: self.terms.clone(), truncation: self.truncation }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        TriSeries {
            scalar: &self.scalar * c,
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
            truncation: self.truncation,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.truncated(other.truncation);
        out.scalar += &other.scalar;
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-Q::one()))
    }

    /// Bilinear extension of a basis product to the unit-free parts.
    fn bilinear(&self, other: &Self, op: TriOp) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let mut acc: BTreeMap<B, Q> = BTreeMap::new();
        for (a, ca) in &self.terms {
            let da = a.degree();
            for (b, cb) in &other.terms {
                if da + b.degree() > truncation {
                    continue;
                }
                let c = ca * cb;
                for w in a.product(b, op) {
                    *acc.entry(w).or_insert_with(Q::zero) += &c;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TriSeries { scalar: Q::zero(), terms: acc, truncation }
    }

    /// One of `≺`, `≻`, `·` with the unit rules `a ≺ 1 = a = 1 ≻ a` and
    /// `1 ≺ a = a ≻ 1 = 1 · a = a · 1 = 0`.
    pub fn op(&self, other: &Self, op: TriOp) -> Result<Self> {
        if !self.scalar.is_zero() && !other.scalar.is_zero() {
            return Err(Error::UndefinedUnitProduct(op.symbol()));
        }
        let mut out = self.bilinear(other, op);
        match op {
            TriOp::Prec if !other.scalar.is_zero() => {
                out = out.plus(&self.without_unit().scale(&other.scalar));
            }
            TriOp::Succ if !self.scalar.is_zero() => {
                out = out.plus(&other.without_unit().scale(&self.scalar));
            }
            _ => {}
        }
        Ok(out)
    }

    pub fn prec(&self, other: &Self) -> Result<Self> {
        self.op(other, TriOp::Prec)
    }

    pub fn succ(&self, other: &Self) -> Result<Self> {
        self.op(other, TriOp::Succ)
    }

    pub fn dot(&self, other: &Self) -> Result<Self> {
        self.op(other, TriOp::Dot)
    }

    /// `x ⪯ y = x ≺ y + x · y`
    pub fn preceq(&self, other: &Self) -> Result<Self> {
        Ok(self.prec(other)?.plus(&self.dot(other)?))
    }

    /// `x ≽ y = x ≻ y + x · y`
    pub fn succeq(&self, other: &Self) -> Result<Self> {
        Ok(self.succ(other)?.plus(&self.dot(other)?))
    }

    /// The associative product `x * y = x ≺ y + x ≻ y + x · y`, unital.
    pub fn star(&self, other: &Self) -> Self {
        let mut out = TriOp::ALL
            .iter()
            .fold(Self::zero(self.truncation.min(other.truncation)), |acc, &op| acc.plus(&self.bilinear(other, op)));
        out = out.plus(&other.without_unit().scale(&self.scalar));
        out = out.plus(&self.without_unit().scale(&other.scalar));
        out.scalar = &self.scalar * &other.scalar;
        out
    }

    fn require_unit_free(&self, what: &str) -> Result<()> {
        if self.scalar.is_zero() {
            Ok(())
        } else {
            Err(Error::Domain(alloc::format!("{what} needs unit-free arguments")))
        }
    }

    pub fn prelie(&self, other: &Self, flavor: PreLie) -> Result<Self> {
        self.require_unit_free("a pre-Lie product")?;
        other.require_unit_free("a pre-Lie product")?;
        Ok(match flavor {
            PreLie::Left => self.succeq(other)?.minus(&other.prec(self)?),
            PreLie::Right => self.prec(other)?.minus(&other.succeq(self)?),
            PreLie::LeftUnder => self.succ(other)?.minus(&other.preceq(self)?),
            PreLie::RightUnder => self.preceq(other)?.minus(&other.succ(self)?),
        })
    }

    /// `x ⋄ y = x ≻ y − y ≺ x`
    pub fn diamond(&self, other: &Self) -> Result<Self> {
        self.require_unit_free("the post-Lie product")?;
        other.require_unit_free("the post-Lie product")?;
        Ok(self.succ(other)?.minus(&other.prec(self)?))
    }

    /// `x⁽ⁿ⁾_≺` or `x⁽ⁿ⁾_≻`, with `x⁽⁰⁾ = 1`.
    pub fn word(&self, n: usize, side: WordSide) -> Result<Self> {
        self.require_unit_free("a tridendriform word")?;
        let mut w = Self::one(self.truncation);
        for _ in 0..n {
            w = match side {
                WordSide::Prec => self.prec(&w)?,
                WordSide::Succ => w.succ(self)?,
            };
        }
        Ok(w)
    }
}

impl<B: TriBasis> Add for &TriSeries<B> {
    type Output = TriSeries<B>;
    fn add(self, rhs: Self) -> TriSeries<B> {
        self.plus(rhs)
    }
}

impl<B: TriBasis> Sub for &TriSeries<B> {
    type Output = TriSeries<B>;
    fn sub(self, rhs: Self) -> TriSeries<B> {
        self.minus(rhs)
    }
}

impl<B: TriBasis> Neg for &TriSeries<B> {
    type Output = TriSeries<B>;
    fn neg(self) -> TriSeries<B> {
        self.scale(&-Q::one())
    }
}

impl<B: TriBasis> fmt::Debug for TriSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<B: TriBasis> fmt::Display for TriSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.scalar.is_zero() {
            write!(f, "{}·1", self.scalar)?;
            first = false;
        }
        for (b, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{b}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " [≤{}]", self.truncation)
    }
}

/// A unital graded algebra with the associative product `*`, enough to
/// define the truncated `exp*` and `log*`.
pub trait StarAlgebra: Clone {
    fn scalar_part(&self) -> Q;
    /// `1`, shaped like `self`.
    fn unit_like(&self) -> Self;
    fn star_product(&self, other: &Self) -> Self;
    fn sum(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Q) -> Self;
    fn truncation_degree(&self) -> usize;
}

impl<B: TriBasis> StarAlgebra for TriSeries<B> {
    fn scalar_part(&self) -> Q {
        self.scalar.clone()
    }
    fn unit_like(&self) -> Self {
        Self::one(self.truncation)
    }
    fn star_product(&self, other: &Self) -> Self {
        self.star(other)
    }
    fn sum(&self, other: &Self) -> Self {
        self.plus(other)
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn truncation_degree(&self) -> usize {
        self.truncation
    }
}

/// `exp*(x) = Σ x^{*n}/n!`, for `x` with zero scalar part.
pub fn exp_star<S: StarAlgebra>(x: &S) -> Result<S> {
    if !x.scalar_part().is_zero() {
        return Err(Error::Domain("exp* needs a series with zero scalar part".into()));
    }
    let mut out = x.unit_like();
    let mut power = x.unit_like();
    let mut factorial = BigInt::one();
    for n in 1..=x.truncation_degree() {
        power = power.star_product(x);
        factorial *= BigInt::from(n);
        out = out.sum(&power.scaled(&Q::new(BigInt::one(), factorial.clone())));
    }
    Ok(out)
}

/// `log*(1 + y) = −Σ (−1)ⁿ y^{*n}/n`, for `x = 1 + y` with scalar part 1.
pub fn log_star<S: StarAlgebra>(x: &S) -> Result<S> {
    if !x.scalar_part().is_one() {
        return Err(Error::Domain("log* needs a series with scalar part 1".into()));
    }
    let y = x.sum(&x.unit_like().scaled(&-Q::one()));
    let mut out = y.scaled(&Q::zero());
    let mut power = x.unit_like();
    for n in 1..=x.truncation_degree() {
        power = power.star_product(&y);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        out = out.sum(&power.scaled(&Q::new(BigInt::from(sign), BigInt::from(n))));
    }
    Ok(out)
}

impl<B: TriBasis> TriSeries<B> {
    pub fn exp_star(&self) -> Result<Self> {
        exp_star(self)
    }

    pub fn log_star(&self) -> Result<Self> {
        log_star(self)
    }
}

/// A carrier with three bilinear operations, supplied by the caller.
/// Whether they satisfy the tridendriform axioms is checked by
/// [`crate::laws`], not assumed.
pub trait TriTarget {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem, op: TriOp) -> Result<Self::Elem>;

    /// The adjoined unit, when the carrier has one.
    fn unit(&self) -> Option<Self::Elem> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &-Q::one()))
    }

    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.op(a, b, TriOp::Prec)
    }

    fn succ(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.op(a, b, TriOp::Succ)
    }

    fn dot(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.op(a, b, TriOp::Dot)
    }

    fn star(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let p = self.prec(a, b)?;
        let s = self.succ(a, b)?;
        let d = self.dot(a, b)?;
        Ok(self.add(&self.add(&p, &s), &d))
    }

    fn preceq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.add(&self.prec(a, b)?, &self.dot(a, b)?))
    }

    fn succeq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.add(&self.succ(a, b)?, &self.dot(a, b)?))
    }

    fn prelie(&self, a: &Self::Elem, b: &Self::Elem, flavor: PreLie) -> Result<Self::Elem> {
        Ok(match flavor {
            PreLie::Left => self.sub(&self.succeq(a, b)?, &self.prec(b, a)?),
            PreLie::Right => self.sub(&self.prec(a, b)?, &self.succeq(b, a)?),
            PreLie::LeftUnder => self.sub(&self.succ(a, b)?, &self.preceq(b, a)?),
            PreLie::RightUnder => self.sub(&self.preceq(a, b)?, &self.succ(b, a)?),
        })
    }

    fn diamond(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.sub(&self.succ(a, b)?, &self.prec(b, a)?))
    }

    /// `[a, b]_· = a · b − b · a`
    fn dot_bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.sub(&self.dot(a, b)?, &self.dot(b, a)?))
    }
}

/// The free algebra on a basis, truncated at a fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeAlgebra<B> {
    pub truncation: usize,
    _basis: core::marker::PhantomData<B>,
}

impl<B> FreeAlgebra<B> {
    pub fn new(truncation: usize) -> Self {
        FreeAlgebra { truncation, _basis: core::marker::PhantomData }
    }
}

impl<B: TriBasis> TriTarget for FreeAlgebra<B> {
    type Elem = TriSeries<B>;

    fn zero(&self) -> TriSeries<B> {
        TriSeries::zero(self.truncation)
    }
    fn add(&self, a: &TriSeries<B>, b: &TriSeries<B>) -> TriSeries<B> {
        a.plus(b)
    }
    fn scale(&self, a: &TriSeries<B>, c: &Q) -> TriSeries<B> {
        a.scale(c)
    }
    fn op(&self, a: &TriSeries<B>, b: &TriSeries<B>, op: TriOp) -> Result<TriSeries<B>> {
        a.op(b, op)
    }
    fn unit(&self) -> Option<TriSeries<B>> {
        Some(TriSeries::one(self.truncation))
    }
}

/// `F_a`: the tridendriform morphism from trees with `Y ↦ generator`,
/// through `F_a(⋁(t₁…tₙ)) = (F(t₁)≻a)·…·(F(tₙ₋₂)≻a)·(F(tₙ₋₁)≻a≺F(tₙ))`.
pub fn eval_morphism<T: TriTarget>(x: &TriSeries<Tree>, target: &T, generator: &T::Elem) -> Result<T::Elem> {
    let mut memo: BTreeMap<Tree, T::Elem> = BTreeMap::new();
    let mut out = target.zero();
    if !x.scalar().is_zero() {
        let unit = target
            .unit()
            .ok_or_else(|| Error::Domain("target has no unit for the scalar part".into()))?;
        out = target.add(&out, &target.scale(&unit, x.scalar()));
    }
    for (t, c) in x.terms() {
        let v = eval_tree(t, target, generator, &mut memo)?;
        out = target.add(&out, &target.scale(&v, c));
    }
    Ok(out)
}

fn eval_tree<T: TriTarget>(
    t: &Tree,
    target: &T,
    a: &T::Elem,
    memo: &mut BTreeMap<Tree, T::Elem>,
) -> Result<T::Elem> {
    if let Some(v) = memo.get(t) {
        return Ok(v.clone());
    }
    let children = t.children();
    let n = children.len();
    // F(tᵢ) ≻ a, with F(|) ≻ a = a
    let left = |c: &Tree, memo: &mut BTreeMap<Tree, T::Elem>| -> Result<T::Elem> {
        if c.is_leaf() {
            Ok(a.clone())
        } else {
            let f = eval_tree(c, target, a, memo)?;
            target.succ(&f, a)
        }
    };
    let mut factors = Vec::with_capacity(n - 1);
    for c in &children[..n - 2] {
        factors.push(left(c, memo)?);
    }
    let mut last = left(&children[n - 2], memo)?;
    if !children[n - 1].is_leaf() {
        let f = eval_tree(&children[n - 1], target, a, memo)?;
        last = target.prec(&last, &f)?;
    }
    factors.push(last);
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = target.dot(&acc, f)?;
    }
    memo.insert(t.clone(), acc.clone());
    Ok(acc)
}

/// Which dendriform half a binary tree is sent into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    /// `A_L = (⪯, ≻)`
    L,
    /// `A_R = (≺, ≽)`
    R,
}

/// The dendriform morphisms `F_L`, `F_R` from planar binary trees into
/// `A_L`, `A_R` with `Y ↦ Y`: the sum of all trees obtained from `t` by
/// glueing vertices along right-pointing (`F_L`) or left-pointing (`F_R`)
/// edges of `t`.
///
/// Every term `t'` of `F_L(t)` has `d̄(t') = d(t)` and every term of `F_R(t)`
/// has `d(t') = d(t)`. The converse fails from degree 3 on: `t' ≤ t` with the
/// right statistic need not be reachable through one edge class.
pub fn f_lr(t: &Tree, half: Half) -> Result<TriSeries<Tree>> {
    if t.is_leaf() || !t.is_binary() {
        return Err(Error::Domain(alloc::format!("{t} is not a planar binary tree of degree ≥ 1")));
    }
    let keep = match half {
        Half::L => 1,
        Half::R => 0,
    };
    let terms = contract_along(t, keep).into_iter().map(|u| (u, Q::one()));
    Ok(TriSeries::from_terms(Q::zero(), terms, t.degree()))
}

/// Contractions of a binary tree along any set of its edges leaving a
/// vertex through child slot `keep`.
fn contract_along(t: &Tree, keep: usize) -> BTreeSet<Tree> {
    let Tree::Node(children) = t else {
        return BTreeSet::from([Tree::Leaf]);
    };
    let mut partial: BTreeSet<Vec<Tree>> = BTreeSet::from([Vec::new()]);
    for (i, child) in children.iter().enumerate() {
        let options = contract_along(child, keep);
        let mut next = BTreeSet::new();
        for prefix in &partial {
            for opt in &options {
                let mut kept = prefix.clone();
                kept.push(opt.clone());
                next.insert(kept);
                if let (true, Tree::Node(grand)) = (i == keep, opt) {
                    let mut spliced = prefix.clone();
                    spliced.extend(grand.iter().cloned());
                    next.insert(spliced);
                }
            }
        }
        partial = next;
    }
    partial.into_iter().map(Tree::Node).collect()
}

/// Small helper for tests and the command line: `Σ cᵢ bᵢ` with integer weights.
pub fn combination<B: TriBasis>(items: &[(B, i64)], truncation: usize) -> TriSeries<B> {
    TriSeries::from_terms(Q::zero(), items.iter().map(|(b, c)| (b.clone(), qi(*c))), truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::surjection::{enumerate_surjections, psi_star, LevelOrientation};
    use crate::tree::{comb, trees_up_to, CombSide};

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }
    fn y(tr: usize) -> TriSeries<Tree> {
        TriSeries::generator(tr)
    }
    fn rc2() -> Tree {
        comb(2, CombSide::Right)
    }
    fn lc2() -> Tree {
        comb(2, CombSide::Left)
    }
    fn c3() -> Tree {
        Tree::corolla(3).unwrap()
    }
    fn mono(b: Tree) -> TriSeries<Tree> {
        TriSeries::monomial(b, Q::one(), 6)
    }

    #[test]
    fn basic_tree_products() {
        let y = y(6);
        assert_eq!(y.prec(&y).unwrap(), mono(rc2()));
        assert_eq!(y.succ(&y).unwrap(), mono(lc2()));
        assert_eq!(y.dot(&y).unwrap(), mono(c3()));
        assert_eq!(y.star(&y), combination(&[(rc2(), 1), (lc2(), 1), (c3(), 1)], 6));
    }

    #[test]
    fn unit_rules() {
        let y = y(6);
        let one = TriSeries::<Tree>::one(6);
        assert_eq!(y.prec(&one).unwrap(), y);
        assert!(one.prec(&y).unwrap().is_zero());
        assert_eq!(one.succ(&y).unwrap(), y);
        assert!(y.succ(&one).unwrap().is_zero());
        assert!(y.dot(&one).unwrap().is_zero());
        assert!(one.dot(&y).unwrap().is_zero());
        assert_eq!(one.star(&y), y);
        assert_eq!(y.star(&one), y);
        assert_eq!(one.star(&one), one);
        assert_eq!(one.prec(&one), Err(Error::UndefinedUnitProduct("≺")));
        assert_eq!(one.succ(&one), Err(Error::UndefinedUnitProduct("≻")));
        assert_eq!(one.dot(&one), Err(Error::UndefinedUnitProduct("·")));
        // | is the unit when it appears as a basis element.
        assert_eq!(TriSeries::monomial(Tree::Leaf, Q::one(), 3), TriSeries::one(3));
    }

    #[test]
    fn triple_product_in_surjections_has_13_terms() {
        let a = TriSeries::<Surjection>::generator(3);
        let left = a.star(&a).star(&a);
        let right = a.star(&a.star(&a));
        assert_eq!(left, right);
        assert_eq!(left.len(), 13);
        assert!(left.terms().values().all(|c| c.is_one()));
    }

    #[test]
    fn dendriform_halves() {
        let y = y(6);
        assert_eq!(y.preceq(&y).unwrap(), combination(&[(rc2(), 1), (c3(), 1)], 6));
        assert_eq!(y.succeq(&y).unwrap(), combination(&[(lc2(), 1), (c3(), 1)], 6));
    }

    #[test]
    fn prelie_and_diamond_examples() {
        let y = y(6);
        assert_eq!(y.prelie(&y, PreLie::Left).unwrap(), combination(&[(lc2(), 1), (c3(), 1), (rc2(), -1)], 6));
        assert_eq!(y.diamond(&y).unwrap(), combination(&[(lc2(), 1), (rc2(), -1)], 6));
        let one = TriSeries::<Tree>::one(6);
        assert!(matches!(one.prelie(&y, PreLie::Left), Err(Error::Domain(_))));
        assert!(matches!(y.diamond(&one.plus(&y)), Err(Error::Domain(_))));
    }

    #[test]
    fn grafting_factorizations() {
        let trees = trees_up_to(3);
        let yy = y(8);
        for t1 in trees.iter().flatten() {
            for t2 in trees.iter().flatten() {
                let (m1, m2) = (TriSeries::monomial(t1.clone(), Q::one(), 8), TriSeries::monomial(t2.clone(), Q::one(), 8));
                let lhs = TriSeries::monomial(Tree::Node(vec![t1.clone(), t2.clone()]), Q::one(), 8);
                // ⋁(t₁, t₂) = t₁ ≻ Y ≺ t₂, with | acting as the unit
                assert_eq!(m1.succ(&yy).unwrap().prec(&m2).unwrap(), lhs, "{t1} {t2}");
                for t3 in trees.iter().take(3).flatten() {
                    let m3 = TriSeries::monomial(t3.clone(), Q::one(), 8);
                    let node = TriSeries::monomial(Tree::Node(vec![t1.clone(), t2.clone(), t3.clone()]), Q::one(), 8);
                    let rhs = m1.succ(&yy).unwrap().dot(&m2.succ(&yy).unwrap().prec(&m3).unwrap()).unwrap();
                    assert_eq!(node, rhs, "{t1} {t2} {t3}");
                }
            }
        }
    }

    #[test]
    fn words() {
        let y = y(6);
        assert_eq!(y.word(0, WordSide::Prec).unwrap(), TriSeries::one(6));
        assert_eq!(y.word(1, WordSide::Prec).unwrap(), y);
        assert_eq!(y.word(2, WordSide::Prec).unwrap(), mono(rc2()));
        assert_eq!(y.word(3, WordSide::Prec).unwrap(), mono(comb(3, CombSide::Right)));
        assert_eq!(y.word(3, WordSide::Succ).unwrap(), mono(comb(3, CombSide::Left)));
    }

    #[test]
    fn exp_log_round_trip() {
        let x = TriSeries::<Tree>::one(4).plus(&y(4));
        let l = x.log_star().unwrap();
        let deg2 = l.component(2);
        assert_eq!(deg2, combination(&[(rc2(), 1), (lc2(), 1), (c3(), 1)], 4).scale(&q(-1, 2)));
        assert_eq!(l.exp_star().unwrap(), x);
        assert!(x.exp_star().is_err());
        assert!(y(4).log_star().is_err());
    }

    #[test]
    fn f_lr_examples() {
        assert_eq!(f_lr(&lc2(), Half::L).unwrap(), combination(&[(lc2(), 1)], 2));
        assert_eq!(f_lr(&rc2(), Half::L).unwrap(), combination(&[(rc2(), 1), (c3(), 1)], 2));
        assert_eq!(f_lr(&lc2(), Half::R).unwrap(), combination(&[(lc2(), 1), (c3(), 1)], 2));
        assert_eq!(f_lr(&rc2(), Half::R).unwrap(), combination(&[(rc2(), 1)], 2));
        assert!(f_lr(&c3(), Half::L).is_err());
        assert!(f_lr(&Tree::Leaf, Half::L).is_err());
    }

    #[test]
    fn morphism_into_wqsym_is_psi_star() {
        let target = FreeAlgebra::<Surjection>::new(4);
        let gen = TriSeries::<Surjection>::generator(4);
        for layer in trees_up_to(4).iter().skip(1) {
            for tree in layer {
                let x = TriSeries::monomial(tree.clone(), Q::one(), 4);
                let image = eval_morphism(&x, &target, &gen).unwrap();
                let fiber = psi_star(tree, LevelOrientation::RootDeepest).unwrap();
                let expected = TriSeries::from_terms(Q::zero(), fiber.into_iter().map(|f| (f, Q::one())), 4);
                assert_eq!(image, expected, "{tree}");
            }
        }
    }

    #[test]
    fn morphism_generator_case_and_unit() {
        let target = FreeAlgebra::<Tree>::new(5);
        let gen = y(5);
        assert_eq!(eval_morphism(&y(5), &target, &gen).unwrap(), gen);
        let x = TriSeries::one(5).plus(&mono(t("(|,(|,|),|)")).truncated(5));
        assert_eq!(eval_morphism(&x, &target, &gen).unwrap(), x);
    }

    #[test]
    fn wqsym_generator_powers_cover_st_n() {
        let a = TriSeries::<Surjection>::generator(4);
        let mut p = TriSeries::one(4);
        for n in 1..=4 {
            p = p.star(&a);
            let expected: Vec<Surjection> = enumerate_surjections(n);
            let got: Vec<Surjection> = p.terms().keys().cloned().collect();
            assert_eq!(got, expected);
        }
    }
}
