//! The Magnus element `Ω′ = log*(X)` of `X = 1 + a ≺ X` (and `Ω̄′` for
//! `X̄ = 1 + a ⪯ X̄`): the fixed-point/log oracle, the pre-Lie recursion, the
//! closed tree formula, its discrete iterated-sum form, and the choice of
//! conventions that makes them agree.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{binomial, Matrix, Q};
use crate::sequence::{diagonal_sum, f_tilde_series, FastEvaluator, GradedSeq, MatSeq, TOrientation};
use crate::series::{log_star, PreLie, TriBasis, TriOp, TriSeries};
use crate::surjection::{enumerate_surjections, forget_levels, FiberIndex, LevelOrientation, Surjection};
use crate::tree::{enumerate_trees_capped, DescentOrientation, DescentStats, Tree};
use crate::{Error, Result};

/// `B_m`, with `B₁ = −1/2`.
pub fn bernoulli(m: usize) -> Q {
    bernoulli_table(m).pop().expect("table has m + 1 entries")
}

/// `B_0, …, B_m` from `Σ_{k≤m} C(m+1, k) B_k = 0`.
pub fn bernoulli_table(m: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for n in 1..=m {
        let s: Q = (0..n).map(|k| Q::from_integer(binomial(n + 1, k)) * &b[k]).sum();
        b.push(-s / Q::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Which equation and which descent statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// `X = 1 + a ≺ X`, pre-Lie `▷`, strict descents.
    Strict,
    /// `X̄ = 1 + a ⪯ X̄`, pre-Lie `▷̲`, descents.
    Weak,
}

impl Flavor {
    pub const ALL: [Flavor; 2] = [Flavor::Strict, Flavor::Weak];

    pub fn prelie(self) -> PreLie {
        match self {
            Flavor::Strict => PreLie::Left,
            Flavor::Weak => PreLie::LeftUnder,
        }
    }

    pub fn statistic(self, s: DescentStats) -> usize {
        match self {
            Flavor::Strict => s.strict,
            Flavor::Weak => s.weak,
        }
    }

    pub fn variant(self) -> MagnusVariant {
        match self {
            Flavor::Strict => MagnusVariant::OmegaPrime,
            Flavor::Weak => MagnusVariant::OmegaPrimeBar,
        }
    }
}

/// Exponent of `−1` in the closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignRule {
    /// `(−1)^{d(t)}`
    Direct,
    /// `(−1)^{n−1−d(t)}`
    Complement,
}

impl SignRule {
    pub const ALL: [SignRule; 2] = [SignRule::Direct, SignRule::Complement];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conventions {
    pub descent: DescentOrientation,
    pub sign: SignRule,
    pub t_orientation: TOrientation,
    pub level: LevelOrientation,
}

impl Conventions {
    /// All sixteen flag combinations.
    pub fn all() -> Vec<Conventions> {
        let mut out = Vec::with_capacity(16);
        for descent in DescentOrientation::ALL {
            for sign in SignRule::ALL {
                for t_orientation in TOrientation::ALL {
                    for level in LevelOrientation::ALL {
                        out.push(Conventions { descent, sign, t_orientation, level });
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LedgerStatus {
    Unresolved,
    Frozen,
}

/// The convention flags every descent-dependent formula reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionLedger {
    pub conventions: Conventions,
    pub status: LedgerStatus,
    pub evidence_degrees: Vec<usize>,
}

impl ConventionLedger {
    pub fn unresolved(conventions: Conventions) -> Self {
        ConventionLedger { conventions, status: LedgerStatus::Unresolved, evidence_degrees: Vec::new() }
    }

    pub fn frozen(conventions: Conventions, evidence_degrees: Vec<usize>) -> Self {
        ConventionLedger { conventions, status: LedgerStatus::Frozen, evidence_degrees }
    }

    pub fn is_frozen(&self) -> bool {
        self.status == LedgerStatus::Frozen
    }

    /// The flags, or [`Error::Unresolved`].
    pub fn require(&self) -> Result<Conventions> {
        if self.is_frozen() {
            Ok(self.conventions)
        } else {
            Err(Error::Unresolved)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MagnusVariant {
    /// `Ω′`
    OmegaPrime,
    /// `Ω̄′`
    OmegaPrimeBar,
    /// `Ω = S(Ω′)`
    Omega,
    /// `Ω̄ = S(Ω̄′)`
    OmegaBar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusResult<P> {
    pub variant: MagnusVariant,
    pub truncation: usize,
    pub payload: P,
}

/// `X = Σ a⁽ⁿ⁾_≺` (or `X̄ = Σ a⁽ⁿ⁾_⪯`) with `a` the generator.
pub fn solve_fixed_point<B: TriBasis>(flavor: Flavor, truncation: usize) -> TriSeries<B> {
    let a = TriSeries::<B>::generator(truncation);
    let mut term = TriSeries::one(truncation);
    let mut x = term.clone();
    for _ in 0..truncation {
        term = match flavor {
            Flavor::Strict => a.prec(&term),
            Flavor::Weak => a.preceq(&term),
        }
        .expect("a is unit-free");
        x = x.plus(&term);
    }
    x
}

/// `log*(X)`: the reference value every formula is checked against.
pub fn oracle_log<B: TriBasis>(flavor: Flavor, truncation: usize) -> MagnusResult<TriSeries<B>> {
    let x = solve_fixed_point::<B>(flavor, truncation);
    let payload = log_star(&x).expect("X has scalar part 1");
    MagnusResult { variant: flavor.variant(), truncation, payload }
}

/// `Ω′ = Σ_m (B_m/m!) L^{(m)}_{Ω′▷}(a)`, solved one degree at a time.
pub fn prelie_magnus<B: TriBasis>(flavor: Flavor, truncation: usize) -> MagnusResult<TriSeries<B>> {
    let bern = bernoulli_table(truncation);
    let mut omega = TriSeries::<B>::zero(truncation);
    for k in 1..=truncation {
        let known = omega.truncated(k);
        let a = TriSeries::<B>::generator(k);
        let mut power = a.clone();
        let mut total = a.clone();
        let mut factorial = BigInt::one();
        for m in 1..k {
            power = known.prelie(&power, flavor.prelie()).expect("unit-free");
            factorial *= BigInt::from(m);
            if !bern[m].is_zero() {
                total = total.plus(&power.scale(&(&bern[m] / Q::from_integer(factorial.clone()))));
            }
        }
        omega = omega.plus(&total.component(k).truncated(truncation));
        omega = TriSeries::from_terms(Q::zero(), omega.terms().clone(), truncation);
    }
    MagnusResult { variant: flavor.variant(), truncation, payload: omega }
}

/// A basis carrying descent statistics and a finite enumeration per degree.
pub trait DescentBasis: TriBasis {
    fn enumerate(degree: usize) -> Result<Vec<Self>>;
    fn descent_stats(&self, orientation: DescentOrientation) -> DescentStats;
}

impl DescentBasis for Tree {
    fn enumerate(degree: usize) -> Result<Vec<Self>> {
        enumerate_trees_capped(degree, usize::MAX)
    }
    fn descent_stats(&self, orientation: DescentOrientation) -> DescentStats {
        Tree::descent_stats(self, orientation)
    }
}

impl DescentBasis for Surjection {
    fn enumerate(degree: usize) -> Result<Vec<Self>> {
        Ok(enumerate_surjections(degree))
    }
    /// Word descents; the orientation only concerns trees.
    fn descent_stats(&self, _orientation: DescentOrientation) -> DescentStats {
        self.descents()
    }
}

/// `±1/(n·C(n−1, d))`.
pub fn closed_coefficient(n: usize, d: usize, sign: SignRule) -> Q {
    let e = match sign {
        SignRule::Direct => d,
        SignRule::Complement => n - 1 - d,
    };
    let s = if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Q::new(s, BigInt::from(n) * binomial(n - 1, d))
}

/// The closed formula under explicit flags, frozen or not.
pub fn closed_formula_with<B: DescentBasis>(flavor: Flavor, truncation: usize, conventions: &Conventions) -> Result<TriSeries<B>> {
    let mut terms = Vec::new();
    for n in 1..=truncation {
        for b in B::enumerate(n)? {
            let d = flavor.statistic(b.descent_stats(conventions.descent));
            terms.push((b, closed_coefficient(n, d, conventions.sign)));
        }
    }
    Ok(TriSeries::from_terms(Q::zero(), terms, truncation))
}

/// `Σ_n Σ_{|t|=n} ±t/(n·C(n−1, d_*(t)))` under the frozen ledger.
pub fn closed_formula<B: DescentBasis>(
    flavor: Flavor,
    truncation: usize,
    ledger: &ConventionLedger,
) -> Result<MagnusResult<TriSeries<B>>> {
    let conventions = ledger.require()?;
    Ok(MagnusResult { variant: flavor.variant(), truncation, payload: closed_formula_with(flavor, truncation, &conventions)? })
}

/// `Ψ*` extended linearly.
pub fn psi_series(x: &TriSeries<Tree>, orientation: LevelOrientation) -> Result<TriSeries<Surjection>> {
    if !x.scalar().is_zero() {
        return Err(Error::Domain("Ψ* is applied to unit-free series".into()));
    }
    let mut index: BTreeMap<usize, FiberIndex> = BTreeMap::new();
    let mut terms = Vec::new();
    for (t, c) in x.terms() {
        let fib = index.entry(t.degree()).or_insert_with(|| FiberIndex::build(t.degree(), orientation));
        terms.extend(fib.fiber(t).iter().map(|f| (f.clone(), c.clone())));
    }
    Ok(TriSeries::from_terms(Q::zero(), terms, x.truncation()))
}

/// Which checks of the resolution battery a flag combination passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Battery {
    pub conventions: Conventions,
    /// Closed formula equals `log*(X)` and `log*(X̄)` on trees.
    pub closed_formula: bool,
    /// `Ψ*` respects `≺`, `≻`, `·`.
    pub morphism: bool,
    /// `d(f) = d(Ψ(f))` and `d̄(f) = d̄(Ψ(f))`.
    pub descents: bool,
    /// `F_a = F̃_a ∘ Ψ*` on the witness sequence.
    pub realization: bool,
}

impl Battery {
    pub fn passed(&self) -> bool {
        self.closed_formula && self.morphism && self.descents && self.realization
    }
}

/// Runs the battery for all sixteen combinations at degrees up to `degree`.
pub fn resolution_battery(witness: &MatSeq, degree: usize) -> Result<Vec<Battery>> {
    let mut closed: BTreeMap<(DescentOrientation, SignRule), bool> = BTreeMap::new();
    let mut morphism: BTreeMap<LevelOrientation, bool> = BTreeMap::new();
    let mut descents: BTreeMap<(DescentOrientation, LevelOrientation), bool> = BTreeMap::new();
    let mut realization: BTreeMap<(TOrientation, LevelOrientation), bool> = BTreeMap::new();
    let oracles: Vec<TriSeries<Tree>> = Flavor::ALL.iter().map(|&f| oracle_log::<Tree>(f, degree).payload).collect();
    let mut out = Vec::new();
    for c in Conventions::all() {
        let ok_closed = match closed.get(&(c.descent, c.sign)) {
            Some(&v) => v,
            None => {
                let mut v = true;
                for (f, oracle) in Flavor::ALL.iter().zip(&oracles) {
                    v &= closed_formula_with::<Tree>(*f, degree, &c)? == *oracle;
                }
                closed.insert((c.descent, c.sign), v);
                v
            }
        };
        let ok_morphism = match morphism.get(&c.level) {
            Some(&v) => v,
            None => {
                let v = morphism_holds(c.level, degree)?;
                morphism.insert(c.level, v);
                v
            }
        };
        let ok_descents = *descents.entry((c.descent, c.level)).or_insert_with(|| {
            (1..=degree).all(|n| {
                enumerate_surjections(n)
                    .iter()
                    .all(|f| f.descents() == forget_levels(f, c.level).descent_stats(c.descent))
            })
        });
        let ok_real = match realization.get(&(c.t_orientation, c.level)) {
            Some(&v) => v,
            None => {
                let v = realization_holds(witness, c.t_orientation, c.level, degree)?;
                realization.insert((c.t_orientation, c.level), v);
                v
            }
        };
        out.push(Battery {
            conventions: c,
            closed_formula: ok_closed,
            morphism: ok_morphism,
            descents: ok_descents,
            realization: ok_real,
        });
    }
    Ok(out)
}

/// `Ψ*(s ⊙ t) = Ψ*(s) ⊙ Ψ*(t)` for all trees with `|s| + |t| ≤ degree`.
pub fn morphism_holds(level: LevelOrientation, degree: usize) -> Result<bool> {
    let trees: Vec<Tree> = (1..degree).map(|n| enumerate_trees_capped(n, usize::MAX)).collect::<Result<Vec<_>>>()?.concat();
    for s in &trees {
        for t in &trees {
            if s.degree() + t.degree() > degree {
                continue;
            }
            let (ms, mt) = (TriSeries::monomial(s.clone(), Q::one(), degree), TriSeries::monomial(t.clone(), Q::one(), degree));
            let (ps, pt) = (psi_series(&ms, level)?, psi_series(&mt, level)?);
            for op in TriOp::ALL {
                if psi_series(&ms.op(&mt, op)?, level)? != ps.op(&pt, op)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `F_a(t) = F̃_a(Ψ*(t))` for all trees with `1 ≤ |t| ≤ degree`.
pub fn realization_holds(a: &MatSeq, t_orientation: TOrientation, level: LevelOrientation, degree: usize) -> Result<bool> {
    let mut ev = FastEvaluator::new(a);
    for n in 1..=degree {
        for t in enumerate_trees_capped(n, usize::MAX)? {
            let lhs = ev.eval(&t)?;
            let rhs = f_tilde_series(&psi_series(&TriSeries::monomial(t, Q::one(), n), level)?, a, t_orientation)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Degrees the resolution battery runs at.
pub const RESOLUTION_DEGREES: [usize; 2] = [2, 3];

/// Freezes the unique flag combination passing the battery at degrees 2
/// and 3, or fails with the number of passing combinations.
pub fn resolve_conventions(witness: &MatSeq) -> Result<ConventionLedger> {
    let battery = resolution_battery(witness, 3)?;
    let passing: Vec<&Battery> = battery.iter().filter(|b| b.passed()).collect();
    if passing.len() != 1 {
        return Err(Error::Resolution(passing.len()));
    }
    Ok(ConventionLedger::frozen(passing[0].conventions, RESOLUTION_DEGREES.to_vec()))
}

fn check_horizon(a: &MatSeq, upto: usize) -> Result<MatSeq> {
    a.prefix(upto).map_err(|_| Error::Horizon { index: upto, horizon: a.horizon() })
}

/// `Ω(a)(N) = S(Ω′)(N)` for `N = 0..=upto`, degree by degree, through the
/// closed tree formula evaluated by [`FastEvaluator`].
pub fn discrete_mps(
    a: &MatSeq,
    upto: usize,
    truncation: usize,
    flavor: Flavor,
    ledger: &ConventionLedger,
) -> Result<MagnusResult<GradedSeq>> {
    let conventions = ledger.require()?;
    let a = check_horizon(a, upto)?;
    let mut ev = FastEvaluator::new(&a);
    let mut components = Vec::with_capacity(truncation);
    for n in 1..=truncation {
        let terms: Vec<(Tree, Q)> = enumerate_trees_capped(n, usize::MAX)?
            .into_iter()
            .map(|t| {
                let d = flavor.statistic(t.descent_stats(conventions.descent));
                (t, closed_coefficient(n, d, conventions.sign))
            })
            .collect();
        components.push(ev.summed(&terms)?);
    }
    finish(a.dim(), upto, truncation, flavor, components)
}

/// The same sum over `ST_n` and the points of `T_σ(N)` directly.
pub fn discrete_mps_diagonal(
    a: &MatSeq,
    upto: usize,
    truncation: usize,
    flavor: Flavor,
    ledger: &ConventionLedger,
) -> Result<MagnusResult<GradedSeq>> {
    let conventions = ledger.require()?;
    let a = check_horizon(a, upto)?;
    let mut components = Vec::with_capacity(truncation);
    for n in 1..=truncation {
        let mut acc = MatSeq::zeros(a.dim(), upto + 1);
        for sigma in enumerate_surjections(n) {
            let c = closed_coefficient(n, flavor.statistic(sigma.descents()), conventions.sign);
            acc = acc.add(&diagonal_sum(&sigma, &a, conventions.t_orientation).scale(&c))?;
        }
        components.push(acc);
    }
    finish(a.dim(), upto, truncation, flavor, components)
}

fn finish(dim: usize, upto: usize, truncation: usize, flavor: Flavor, components: Vec<MatSeq>) -> Result<MagnusResult<GradedSeq>> {
    let payload = if components.is_empty() {
        GradedSeq::zero(dim, upto + 1, 0)
    } else {
        GradedSeq::from_components(Q::zero(), components)?
    };
    let variant = match flavor {
        Flavor::Strict => MagnusVariant::Omega,
        Flavor::Weak => MagnusVariant::OmegaBar,
    };
    Ok(MagnusResult { variant, truncation, payload })
}

/// `X` (or `X̄`) built by products in the sequence algebra.
pub fn realized_fixed_point(a: &MatSeq, truncation: usize, flavor: Flavor) -> Result<GradedSeq> {
    let g = GradedSeq::generator(a, truncation);
    let mut term = GradedSeq::one(a.dim(), a.horizon(), truncation);
    let mut x = term.clone();
    for _ in 0..truncation {
        term = match flavor {
            Flavor::Strict => g.op(&term, TriOp::Prec)?,
            Flavor::Weak => g.op(&term, TriOp::Prec)?.plus(&g.op(&term, TriOp::Dot)?),
        };
        x = x.plus(&term);
    }
    Ok(x)
}

/// `S(log*(X))(N)` for `N = 0..=upto`, computed entirely in the sequence
/// algebra; convention-free.
pub fn discrete_mps_oracle(a: &MatSeq, upto: usize, truncation: usize, flavor: Flavor) -> Result<GradedSeq> {
    let a = check_horizon(a, upto)?;
    let x = realized_fixed_point(&a, truncation, flavor)?;
    Ok(log_star(&x)?.summ())
}

/// `Ω(N)` for `a ≡ 1` in dimension 1: the degree-`n` coefficient is
/// `(−1)^{n−1} N/n`.
pub fn scalar_ones(horizon: usize) -> MatSeq {
    MatSeq::constant(Matrix::identity(1), horizon)
}

/// Whether `exp*` of the closed formula reproduces `X` (resp. `X̄`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpReport {
    pub flavor: Flavor,
    pub trees: bool,
    pub surjections: bool,
    pub sequences: bool,
}

impl ExpReport {
    pub fn ok(&self) -> bool {
        self.trees && self.surjections && self.sequences
    }
}

pub fn exp_check(a: &MatSeq, truncation: usize, ledger: &ConventionLedger) -> Result<Vec<ExpReport>> {
    use crate::series::exp_star;
    let mut out = Vec::new();
    for flavor in Flavor::ALL {
        let omega = closed_formula::<Tree>(flavor, truncation, ledger)?.payload;
        let trees = exp_star(&omega)? == solve_fixed_point::<Tree>(flavor, truncation);
        let omega_s = closed_formula::<Surjection>(flavor, truncation, ledger)?.payload;
        let surjections = exp_star(&omega_s)? == solve_fixed_point::<Surjection>(flavor, truncation);
        let realized = GradedSeq::realize(&omega, a)?;
        let sequences = exp_star(&realized)? == realized_fixed_point(a, truncation, flavor)?;
        out.push(ExpReport { flavor, trees, surjections, sequences });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};
    use crate::series::combination;
    use crate::tree::{comb, CombSide};

    #[test]
    fn bernoulli_numbers() {
        let expect = [q(1, 1), q(-1, 2), q(1, 6), q(0, 1), q(-1, 30), q(0, 1), q(1, 42)];
        for (m, b) in expect.iter().enumerate() {
            assert_eq!(&bernoulli(m), b, "B_{m}");
        }
    }

    #[test]
    fn fixed_points_degree_two() {
        let x = solve_fixed_point::<Tree>(Flavor::Strict, 3);
        assert_eq!(x.component(1), TriSeries::generator(3));
        assert_eq!(x.component(2), combination(&[(comb(2, CombSide::Right), 1)], 3));
        let xb = solve_fixed_point::<Tree>(Flavor::Weak, 3);
        assert_eq!(xb.component(2), combination(&[(comb(2, CombSide::Right), 1), (Tree::corolla(3).unwrap(), 1)], 3));
    }

    #[test]
    fn oracle_degree_two() {
        let (rc, lc, c3) = (comb(2, CombSide::Right), comb(2, CombSide::Left), Tree::corolla(3).unwrap());
        let o = oracle_log::<Tree>(Flavor::Strict, 2).payload;
        assert_eq!(o.component(2), combination(&[(rc.clone(), 1), (lc.clone(), -1), (c3.clone(), -1)], 2).scale(&q(1, 2)));
        let o = oracle_log::<Tree>(Flavor::Weak, 2).payload;
        assert_eq!(o.component(2), combination(&[(rc, 1), (lc, -1), (c3, 1)], 2).scale(&q(1, 2)));
    }

    #[test]
    fn closed_coefficients() {
        assert_eq!(closed_coefficient(1, 0, SignRule::Complement), qi(1));
        assert_eq!(closed_coefficient(3, 1, SignRule::Direct), q(-1, 6));
        assert_eq!(closed_coefficient(3, 0, SignRule::Complement), q(1, 3));
        assert_eq!(closed_coefficient(3, 2, SignRule::Complement), q(1, 3));
        assert_eq!(closed_coefficient(2, 1, SignRule::Complement), q(1, 2));
    }

    #[test]
    fn unresolved_ledger_refuses() {
        let c = Conventions::all()[0];
        let ledger = ConventionLedger::unresolved(c);
        assert_eq!(closed_formula::<Tree>(Flavor::Strict, 2, &ledger).unwrap_err(), Error::Unresolved);
        let a = scalar_ones(3);
        assert_eq!(discrete_mps(&a, 2, 2, Flavor::Strict, &ledger).unwrap_err(), Error::Unresolved);
    }
}
