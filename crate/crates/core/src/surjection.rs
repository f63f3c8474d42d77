//! Surjections (packed words), the WQSym tridendriform products, and the
//! bijection with planar reduced trees carrying levels.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::series::TriOp;
use crate::tree::{DescentStats, Tree};
use crate::{Error, Result};

/// A surjection `{1..n} ↠ {1..r}`, stored as its word `f(1)…f(n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surjection(Vec<u32>);

/// Which end of the level scale sits at the root of a leveled tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LevelOrientation {
    /// Level 1 is the top; the root carries the largest level.
    RootDeepest,
    /// The root carries level 1.
    RootTop,
}

impl LevelOrientation {
    pub const ALL: [LevelOrientation; 2] = [LevelOrientation::RootDeepest, LevelOrientation::RootTop];

    fn root_value(self, block: &[u32]) -> u32 {
        let it = block.iter().copied();
        match self {
            LevelOrientation::RootDeepest => it.max(),
            LevelOrientation::RootTop => it.min(),
        }
        .expect("non-empty block")
    }

    /// Whether `child` may sit directly above `parent`.
    fn admits(self, parent: u32, child: u32) -> bool {
        match self {
            LevelOrientation::RootDeepest => child < parent,
            LevelOrientation::RootTop => child > parent,
        }
    }
}

/// Planar reduced tree with a level on each internal vertex. Levels are
/// listed in preorder of the internal vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeveledTree {
    pub shape: Tree,
    pub levels: Vec<u32>,
}

impl Surjection {
    /// Checks that `word` is non-empty and its image is `{1..r}`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if !is_standard(&word) {
            return Err(Error::Domain(format!("{word:?} is not a packed word")));
        }
        Ok(Surjection(word))
    }

    /// The only surjection of length 1.
    pub fn unit_word() -> Self {
        Surjection(vec![1])
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r = max f`.
    pub fn range(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Strict descents `f(j) > f(j+1)` and descents `f(j) ≥ f(j+1)`.
    pub fn descents(&self) -> DescentStats {
        let mut s = DescentStats::default();
        for w in self.0.windows(2) {
            if w[0] >= w[1] {
                s.weak += 1;
            }
            if w[0] > w[1] {
                s.strict += 1;
            }
        }
        s
    }

    pub fn encode(&self) -> String {
        format!("{self}")
    }
}

pub fn is_standard(word: &[u32]) -> bool {
    if word.is_empty() {
        return false;
    }
    let r = word.iter().copied().max().unwrap_or(0) as usize;
    if word.contains(&0) || r > word.len() {
        return false;
    }
    let mut seen = vec![false; r + 1];
    for &v in word {
        seen[v as usize] = true;
    }
    seen[1..].iter().all(|&b| b)
}

/// The unique packed word with the same strict order pattern as `word`.
pub fn standardize(word: &[u32]) -> Result<Surjection> {
    if word.is_empty() {
        return Err(Error::Domain("cannot standardize an empty word".into()));
    }
    Ok(Surjection(rank_compress(word)))
}

/// Rank of each entry among the distinct values of `word`, starting at 1.
pub(crate) fn rank_compress(word: &[u32]) -> Vec<u32> {
    let mut values: Vec<u32> = word.to_vec();
    values.sort_unstable();
    values.dedup();
    word.iter().map(|v| values.binary_search(v).unwrap() as u32 + 1).collect()
}

/// All of `ST_n` in lexicographic order.
pub fn enumerate_surjections(n: usize) -> Vec<Surjection> {
    fn go(n: usize, word: &mut Vec<u32>, counts: &mut [usize], out: &mut Vec<Surjection>) {
        let pos = word.len();
        let max = counts.iter().rposition(|&c| c > 0).unwrap_or(0);
        let missing = (1..max).filter(|&v| counts[v] == 0).count();
        if missing > n - pos {
            return;
        }
        if pos == n {
            out.push(Surjection(word.clone()));
            return;
        }
        for v in 1..=n {
            word.push(v as u32);
            counts[v] += 1;
            go(n, word, counts, out);
            counts[v] -= 1;
            word.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::with_capacity(n), &mut vec![0; n + 1], &mut out);
    }
    out
}

/// Every standard juxtaposition `FG` with `std(F) = f`, `std(G) = g`, tagged
/// by the product it belongs to: `≺` when `max F > max G`, `≻` when
/// `max F < max G`, `·` when they are equal. Sorted by word.
pub fn standard_juxtapositions(f: &Surjection, g: &Surjection) -> Vec<(Surjection, TriOp)> {
    let (rf, rg) = (f.range() as usize, g.range() as usize);
    let mut out = Vec::new();
    for total in rf.max(rg)..=rf + rg {
        // F uses an rf-subset A of {1..total}; G must cover the complement
        // and fills the rest of its rg values from A.
        for a in subsets(&(1..=total as u32).collect::<Vec<_>>(), rf) {
            let complement: Vec<u32> = (1..=total as u32).filter(|v| !a.contains(v)).collect();
            if complement.len() > rg {
                continue;
            }
            for extra in subsets(&a, rg - complement.len()) {
                let mut b = complement.clone();
                b.extend(extra);
                b.sort_unstable();
                let mut word: Vec<u32> = f.0.iter().map(|&v| a[v as usize - 1]).collect();
                word.extend(g.0.iter().map(|&v| b[v as usize - 1]));
                let op = match a[rf - 1].cmp(&b[rg - 1]) {
                    core::cmp::Ordering::Greater => TriOp::Prec,
                    core::cmp::Ordering::Less => TriOp::Succ,
                    core::cmp::Ordering::Equal => TriOp::Dot,
                };
                out.push((Surjection(word), op));
            }
        }
    }
    out.sort();
    out
}

/// Basis-level WQSym product; every term has coefficient 1.
pub fn wq_product(f: &Surjection, g: &Surjection, op: TriOp) -> Vec<Surjection> {
    standard_juxtapositions(f, g).into_iter().filter(|(_, o)| *o == op).map(|(w, _)| w).collect()
}

/// Increasing `k`-subsets of a sorted slice, in lexicographic order.
pub(crate) fn subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn go(items: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// The blocks between the occurrences of the root value of `f`, unstandardized.
pub fn top_blocks(f: &Surjection, orientation: LevelOrientation) -> Vec<Vec<u32>> {
    split_at_root(&f.0, orientation).1
}

fn split_at_root(word: &[u32], orientation: LevelOrientation) -> (u32, Vec<Vec<u32>>) {
    let root = orientation.root_value(word);
    let blocks = word.split(|&v| v == root).map(<[u32]>::to_vec).collect();
    (root, blocks)
}

/// `P⁻¹`: the leveled tree of a surjection.
pub fn to_leveled_tree(f: &Surjection, orientation: LevelOrientation) -> LeveledTree {
    fn build(word: &[u32], orientation: LevelOrientation, levels: &mut Vec<u32>) -> Tree {
        if word.is_empty() {
            return Tree::Leaf;
        }
        let (root, blocks) = split_at_root(word, orientation);
        levels.push(root);
        Tree::Node(blocks.iter().map(|b| build(b, orientation, levels)).collect())
    }
    let mut levels = Vec::new();
    let shape = build(&f.0, orientation, &mut levels);
    LeveledTree { shape, levels }
}

/// `P`: reads the level of the vertex between consecutive leaves.
pub fn from_leveled_tree(lt: &LeveledTree, orientation: LevelOrientation) -> Result<Surjection> {
    fn read(
        t: &Tree,
        parent: Option<u32>,
        levels: &[u32],
        next: &mut usize,
        orientation: LevelOrientation,
        out: &mut Vec<u32>,
    ) -> Result<()> {
        let Tree::Node(children) = t else { return Ok(()) };
        let mine = levels[*next];
        *next += 1;
        if let Some(p) = parent {
            if !orientation.admits(p, mine) {
                return Err(Error::Domain(format!(
                    "level {mine} cannot sit above level {p} ({orientation:?})"
                )));
            }
        }
        let last = children.len() - 1;
        for (i, c) in children.iter().enumerate() {
            read(c, Some(mine), levels, next, orientation, out)?;
            if i < last {
                out.push(mine);
            }
        }
        Ok(())
    }
    if lt.levels.len() != lt.shape.internal_vertices() {
        return Err(Error::Domain(format!(
            "{} levels for {} internal vertices",
            lt.levels.len(),
            lt.shape.internal_vertices()
        )));
    }
    let mut word = Vec::with_capacity(lt.shape.degree());
    read(&lt.shape, None, &lt.levels, &mut 0, orientation, &mut word)?;
    if !is_standard(&lt.levels) {
        return Err(Error::Domain(format!("levels {:?} are not onto an initial interval", lt.levels)));
    }
    Ok(Surjection(word))
}

/// `Ψ`: the shape of the leveled tree, levels forgotten.
pub fn forget_levels(f: &Surjection, orientation: LevelOrientation) -> Tree {
    fn shape(word: &[u32], orientation: LevelOrientation) -> Tree {
        if word.is_empty() {
            return Tree::Leaf;
        }
        let root = orientation.root_value(word);
        Tree::Node(word.split(|&v| v == root).map(|b| shape(b, orientation)).collect())
    }
    shape(&f.0, orientation)
}

/// `Ψ*(t)`: the fiber of `Ψ` over `t`, sorted.
pub fn psi_star(t: &Tree, orientation: LevelOrientation) -> Result<Vec<Surjection>> {
    if t.is_leaf() {
        return Err(Error::Domain("Ψ* is defined on trees of degree ≥ 1".into()));
    }
    Ok(enumerate_surjections(t.degree())
        .into_iter()
        .filter(|f| forget_levels(f, orientation) == *t)
        .collect())
}

/// Fibers of `Ψ` over every tree of one degree, built from a single pass
/// over `ST_n`.
#[derive(Clone, Debug)]
pub struct FiberIndex {
    pub degree: usize,
    pub orientation: LevelOrientation,
    fibers: BTreeMap<Tree, Vec<Surjection>>,
}

impl FiberIndex {
    pub fn build(degree: usize, orientation: LevelOrientation) -> Self {
        let mut fibers: BTreeMap<Tree, Vec<Surjection>> = BTreeMap::new();
        for f in enumerate_surjections(degree) {
            fibers.entry(forget_levels(&f, orientation)).or_default().push(f);
        }
        FiberIndex { degree, orientation, fibers }
    }

    pub fn fiber(&self, t: &Tree) -> &[Surjection] {
        self.fibers.get(t).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tree, &Vec<Surjection>)> {
        self.fibers.iter()
    }
}

/// Every admissible leveling of `t`, found by brute force over level maps.
pub fn levelings(t: &Tree, orientation: LevelOrientation) -> Vec<LeveledTree> {
    let m = t.internal_vertices();
    let mut out = Vec::new();
    for r in 1..=m as u32 {
        let mut levels = vec![1u32; m];
        loop {
            let lt = LeveledTree { shape: t.clone(), levels: levels.clone() };
            if from_leveled_tree(&lt, orientation).is_ok() {
                out.push(lt);
            }
            // odometer over {1..r}^m
            let mut i = 0;
            while i < m && levels[i] == r {
                levels[i] = 1;
                i += 1;
            }
            if i == m {
                break;
            }
            levels[i] += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Surjection {
    type Err = Error;

    /// Comma-separated values, e.g. `3,4,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut word = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let trimmed = part.trim();
            let v: u32 = trimmed
                .parse()
                .map_err(|_| Error::Parse { pos, msg: format!("expected a positive integer, got {trimmed:?}") })?;
            word.push(v);
            pos += part.len() + 1;
        }
        Surjection::new(word)
    }
}
