//! Planar reduced trees: every internal vertex has two or more incoming
//! edges. The grading is `leaves − 1`.
//!
//! Trees are ordered by their canonical text encoding (nested parentheses,
//! `|` for a leaf). The derived `Ord` coincides with byte order on
//! encodings: `(` sorts before `|`, and a closing `)` sorts before `,`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Enumeration refuses degrees above this unless explicitly overridden.
pub const DEFAULT_DEGREE_CAP: usize = 10;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    /// Internal vertex with at least two ordered children.
    Node(Vec<Tree>),
    /// The single edge `|`.
    Leaf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CombSide {
    Left,
    Right,
}

/// Which way leaves are read when counting descents.
///
/// `AsPrinted` counts a leaf as a descent when it is not the leftmost leaf
/// and not the rightmost edge above its vertex. `Mirrored` applies the same
/// rule to the mirror image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DescentOrientation {
    AsPrinted,
    Mirrored,
}

impl DescentOrientation {
    pub const ALL: [DescentOrientation; 2] = [DescentOrientation::AsPrinted, DescentOrientation::Mirrored];
}

/// Descent counts of a tree (or of a surjection).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DescentStats {
    /// Number of descents (`d̄`).
    pub weak: usize,
    /// Number of strict descents (`d`).
    pub strict: usize,
}

/// Position of an inner edge among the incoming edges of its lower vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeSide {
    /// Leftmost incoming edge; points up to the left.
    Left,
    /// Strictly between the leftmost and rightmost edges.
    Middle,
    /// Rightmost incoming edge; points up to the right.
    Right,
}

/// An inner edge, addressed by the child-index path from the root to its
/// upper vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InnerEdge {
    pub path: Vec<usize>,
    pub side: EdgeSide,
}

impl Tree {
    /// The generator `Y = ⋁(|, |)`, the only tree of degree 1.
    pub fn y() -> Tree {
        Tree::Node(vec![Tree::Leaf, Tree::Leaf])
    }

    /// The one-vertex tree with `leaves` leaves.
    pub fn corolla(leaves: usize) -> Result<Tree> {
        graft(vec![Tree::Leaf; leaves])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn children(&self) -> &[Tree] {
        match self {
            Tree::Node(c) => c,
            Tree::Leaf => &[],
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => c.len() - 1 + c.iter().map(Tree::degree).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.degree() + 1
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => 1 + c.iter().map(Tree::internal_vertices).sum::<usize>(),
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(c) => c.len() == 2 && c.iter().all(Tree::is_binary),
        }
    }

    pub fn mirror(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(c) => Tree::Node(c.iter().rev().map(Tree::mirror).collect()),
        }
    }

    pub fn encode(&self) -> String {
        self.to_string()
    }

    /// `(leftmost-child, rightmost-child)` flags of every leaf, left to right.
    fn leaf_flags(&self, out: &mut Vec<(bool, bool)>) {
        if let Tree::Node(c) = self {
            let last = c.len() - 1;
            for (i, child) in c.iter().enumerate() {
                match child {
                    Tree::Leaf => out.push((i == 0, i == last)),
                    node => node.leaf_flags(out),
                }
            }
        }
    }

    pub fn descent_stats(&self, orientation: DescentOrientation) -> DescentStats {
        let mut flags = Vec::with_capacity(self.leaf_count());
        self.leaf_flags(&mut flags);
        if orientation == DescentOrientation::Mirrored {
            flags.reverse();
            for f in flags.iter_mut() {
                *f = (f.1, f.0);
            }
        }
        let mut stats = DescentStats::default();
        for &(leftmost, rightmost) in flags.iter().skip(1) {
            if !rightmost {
                stats.weak += 1;
                if leftmost {
                    stats.strict += 1;
                }
            }
        }
        stats
    }

    /// All trees `t' ≤ t` for the contraction order, `t` included.
    pub fn contraction_closure(&self) -> BTreeSet<Tree> {
        let Tree::Node(children) = self else {
            return BTreeSet::from([Tree::Leaf]);
        };
        // Each child is replaced by an element of its own closure and, when
        // that element is a vertex, optionally spliced into the root.
        let mut partial: BTreeSet<Vec<Tree>> = BTreeSet::from([Vec::new()]);
        for child in children {
            let options = child.contraction_closure();
            let mut next = BTreeSet::new();
            for prefix in &partial {
                for opt in &options {
                    let mut kept = prefix.clone();
                    kept.push(opt.clone());
                    next.insert(kept);
                    if let Tree::Node(grand) = opt {
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

    pub fn inner_edges(&self) -> Vec<InnerEdge> {
        fn walk(t: &Tree, path: &mut Vec<usize>, out: &mut Vec<InnerEdge>) {
            let Tree::Node(c) = t else { return };
            let last = c.len() - 1;
            for (i, child) in c.iter().enumerate() {
                if child.is_leaf() {
                    continue;
                }
                path.push(i);
                let side = if i == 0 {
                    EdgeSide::Left
                } else if i == last {
                    EdgeSide::Right
                } else {
                    EdgeSide::Middle
                };
                out.push(InnerEdge { path: path.clone(), side });
                walk(child, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Shrinks the inner edge ending at `path`, glueing its two vertices.
    pub fn contract_edge(&self, path: &[usize]) -> Result<Tree> {
        let bad = || Error::Domain(alloc::format!("no inner edge at path {path:?}"));
        let (&last, prefix) = path.split_last().ok_or_else(bad)?;
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in prefix {
            cur = match cur {
                Tree::Node(c) if i < c.len() => &mut c[i],
                _ => return Err(bad()),
            };
        }
        let Tree::Node(c) = cur else { return Err(bad()) };
        match c.get(last) {
            Some(Tree::Node(grand)) => {
                let grand = grand.clone();
                c.splice(last..=last, grand);
                Ok(out)
            }
            _ => Err(bad()),
        }
    }
}

/// `⋁(t₁,…,tₖ)`: a new root carrying the given subtrees left to right.
pub fn graft(children: Vec<Tree>) -> Result<Tree> {
    if children.len() < 2 {
        return Err(Error::Arity(children.len()));
    }
    Ok(Tree::Node(children))
}

/// Right comb `τ_r⁽ⁿ⁾ = ⋁(|, τ_r⁽ⁿ⁻¹⁾)` or left comb `τ_l⁽ⁿ⁾ = ⋁(τ_l⁽ⁿ⁻¹⁾, |)`.
pub fn comb(n: usize, side: CombSide) -> Tree {
    (0..n).fold(Tree::Leaf, |acc, _| match side {
        CombSide::Right => Tree::Node(vec![Tree::Leaf, acc]),
        CombSide::Left => Tree::Node(vec![acc, Tree::Leaf]),
    })
}

/// All trees of degree `n`, sorted by encoding. Refuses `n` above
/// [`DEFAULT_DEGREE_CAP`].
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    enumerate_trees_capped(n, DEFAULT_DEGREE_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<Vec<Tree>> {
    if n > cap {
        return Err(Error::DegreeCap { degree: n, cap });
    }
    Ok(trees_up_to(n).pop().unwrap_or_default())
}

/// `out[k]` holds the sorted trees of degree `k`, for `k ≤ n`.
pub fn trees_up_to(n: usize) -> Vec<Vec<Tree>> {
    let mut by_degree: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for d in 1..=n {
        let mut all = Vec::new();
        // arity k contributes k − 1; the children share the remaining degree.
        for arity in 2..=d + 1 {
            let rest = d - (arity - 1);
            let mut forests: Vec<Vec<Tree>> = Vec::new();
            forests_of(&by_degree, arity, rest, &mut Vec::new(), &mut forests);
            all.extend(forests.into_iter().map(Tree::Node));
        }
        all.sort();
        by_degree.push(all);
    }
    by_degree
}

fn forests_of(
    by_degree: &[Vec<Tree>],
    slots: usize,
    budget: usize,
    prefix: &mut Vec<Tree>,
    out: &mut Vec<Vec<Tree>>,
) {
    if slots == 0 {
        if budget == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for d in 0..=budget {
        for t in &by_degree[d] {
            prefix.push(t.clone());
            forests_of(by_degree, slots - 1, budget - d, prefix, out);
            prefix.pop();
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("|"),
            Tree::Node(c) => {
                f.write_str("(")?;
                for (i, child) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        let mut p = Parser { bytes: s.as_bytes(), pos: 0 };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'|') => {
                self.pos += 1;
                Ok(Tree::Leaf)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = vec![self.tree()?];
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.tree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => return Err(self.err("expected ',' or ')'")),
                        None => return Err(self.err("unclosed '('")),
                    }
                }
                if children.len() < 2 {
                    return Err(Error::Parse { pos: open, msg: "vertex with fewer than 2 children".into() });
                }
                Ok(Tree::Node(children))
            }
            Some(_) => Err(self.err("expected '|' or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
