//! Full `m`-ary trees and the k-rotation rewrite.
//!
//! A [`Tree`] is an immutable value: either the single leaf `ε` or an internal
//! node with exactly `m` ordered children. Rewrites return new trees that
//! share every untouched subtree with the input.
//!
//! Indices are 0-based throughout: child `i` of a node is reached along the
//! edge labelled `l_{i+1}`, a [`NodeAddress`] is the sequence of child indices
//! from the root, and a rotation [`Site`] names the pair of adjacent children
//! `(slot, slot + 1)` of the addressed node.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::dyck::{DyckTuple, DyckTuples};
use crate::error::{Error, Result};
use crate::params::Params;

#[derive(Clone)]
pub struct Tree(Option<Arc<Node>>);

struct Node {
    children: Box<[Tree]>,
    leaves: usize,
}

impl Tree {
    /// The single-leaf tree `ε`.
    pub fn leaf() -> Tree {
        Tree(None)
    }

    /// Joins exactly `m` trees as the ordered children of a new root.
    pub fn meet(params: &Params, children: Vec<Tree>) -> Result<Tree> {
        if children.len() != params.arity() {
            return Err(Error::arity(format!(
                "meet takes exactly {} children, got {}",
                params.arity(),
                children.len()
            )));
        }
        if let Some(bad) = children
            .iter()
            .find(|c| c.arity().is_some_and(|a| a != params.arity()))
        {
            return Err(Error::arity(format!(
                "child of arity {} in a {}-ary meet",
                bad.arity().unwrap_or(0),
                params.arity()
            )));
        }
        Ok(Tree::node_unchecked(children))
    }

    fn node_unchecked(children: Vec<Tree>) -> Tree {
        let leaves = children.iter().map(Tree::leaf_count).sum();
        Tree(Some(Arc::new(Node {
            children: children.into_boxed_slice(),
            leaves,
        })))
    }

    /// Left-associative meet of `P` operands: the first `m` form a node, then
    /// every further group of `m - 1` operands wraps the accumulator as its
    /// first child. A single operand is returned unchanged.
    pub fn left_assoc_meet(params: &Params, operands: Vec<Tree>) -> Result<Tree> {
        let m = params.arity();
        let count = operands.len();
        if count == 0 || (count > 1 && (count < m || !(count - 1).is_multiple_of(m - 1))) {
            return Err(Error::arity(format!(
                "{count} operands cannot be folded by a {m}-ary operation"
            )));
        }
        let mut rest = operands.into_iter();
        let mut acc = rest.next().expect("count checked above");
        loop {
            let group: Vec<Tree> = rest.by_ref().take(m - 1).collect();
            if group.is_empty() {
                return Ok(acc);
            }
            let mut children = Vec::with_capacity(m);
            children.push(acc);
            children.extend(group);
            acc = Tree::meet(params, children)?;
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.0.is_none()
    }

    /// Number of leaves `N`.
    pub fn leaf_count(&self) -> usize {
        self.0.as_ref().map_or(1, |n| n.leaves)
    }

    /// Number of internal nodes, `(N - 1) / (m - 1)` for a non-leaf tree.
    pub fn internal_count(&self) -> usize {
        match &self.0 {
            None => 0,
            Some(n) => 1 + n.children.iter().map(Tree::internal_count).sum::<usize>(),
        }
    }

    /// Children of the root; empty for `ε`.
    pub fn children(&self) -> &[Tree] {
        self.0.as_ref().map_or(&[], |n| &n.children)
    }

    /// Arity of the root node, `None` for `ε`.
    pub fn arity(&self) -> Option<usize> {
        self.0.as_ref().map(|n| n.children.len())
    }

    pub(crate) fn check_params(&self, params: &Params) -> Result<()> {
        match self.arity() {
            Some(a) if a != params.arity() => Err(Error::arity(format!(
                "tree has arity {a}, parameters say {}",
                params.arity()
            ))),
            _ => Ok(()),
        }
    }

    pub fn subtree(&self, address: &NodeAddress) -> Option<&Tree> {
        let mut t = self;
        for &i in address.indices() {
            t = t.children().get(i)?;
        }
        Some(t)
    }

    /// Length of the chain of internal nodes reached by repeatedly taking the
    /// first child, starting at the root.
    pub fn left_spine(&self) -> usize {
        let mut t = self;
        let mut depth = 0;
        while let Some(first) = t.children().first() {
            depth += 1;
            t = first;
        }
        depth
    }

    /// Inverse of a left-associative fold with `depth` nodes: the operands
    /// `u_1..u_{1 + depth(m-1)}` such that folding them gives back `self`.
    fn unfold_left(&self, depth: usize) -> Option<Vec<Tree>> {
        let mut spine = Vec::with_capacity(depth);
        let mut t = self;
        for _ in 0..depth {
            let children = t.children();
            let first = children.first()?;
            spine.push(&children[1..]);
            t = first;
        }
        let mut operands = vec![t.clone()];
        for rest in spine.into_iter().rev() {
            operands.extend(rest.iter().cloned());
        }
        Some(operands)
    }

    /// Rebuilds the path from the root to `address`, replacing the subtree
    /// there with `f(subtree)`.
    fn replace_at<F>(&self, address: &[usize], f: F) -> Result<Tree>
    where
        F: FnOnce(&Tree) -> Result<Tree>,
    {
        match address.split_first() {
            None => f(self),
            Some((&i, rest)) => {
                let children = self.children();
                let child = children.get(i).ok_or_else(|| {
                    Error::Site(format!("address does not resolve: no child {i}"))
                })?;
                let replaced = child.replace_at(rest, f)?;
                let mut new_children = children.to_vec();
                new_children[i] = replaced;
                Ok(Tree::node_unchecked(new_children))
            }
        }
    }

    /// The depth matrix of this tree.
    pub fn depth_matrix(&self, params: &Params) -> Result<DepthMatrix> {
        self.check_params(params)?;
        DepthMatrix::of(self, params.arity())
    }

    /// All rotation sites in `direction`, ordered by address then slot.
    pub fn rotation_sites(&self, params: &Params, direction: Direction) -> Vec<Site> {
        let mut sites = Vec::new();
        let mut path = Vec::new();
        collect_sites(self, params, direction, &mut path, &mut sites);
        sites
    }

    /// Right k-rotation at `site`.
    pub fn rotate_right(&self, params: &Params, site: &Site) -> Result<Tree> {
        self.rotate(params, site, Direction::Right)
    }

    /// Left k-rotation at `site`; the inverse of [`Tree::rotate_right`].
    pub fn rotate_left(&self, params: &Params, site: &Site) -> Result<Tree> {
        self.rotate(params, site, Direction::Left)
    }

    pub fn rotate(&self, params: &Params, site: &Site, direction: Direction) -> Result<Tree> {
        self.check_params(params)?;
        let k = params.k();
        let modulus = params.modulus();
        let j = site.slot;
        self.replace_at(site.address.indices(), |v| {
            let children = v.children();
            if children.is_empty() {
                return Err(Error::Site(format!("{site} is a leaf")));
            }
            if j + 1 >= children.len() {
                return Err(Error::Site(format!("{site}: slot out of range")));
            }
            let mut new_children = children.to_vec();
            match direction {
                Direction::Right => {
                    let operands = children[j].unfold_left(k).ok_or_else(|| {
                        Error::Site(format!("{site}: child {j} is not a left comb of {k} nodes"))
                    })?;
                    let mut operands = operands.into_iter();
                    new_children[j] = operands.next().expect("at least one operand");
                    let mut moved: Vec<Tree> = operands.collect();
                    moved.push(children[j + 1].clone());
                    new_children[j + 1] = Tree::left_assoc_meet(params, moved)?;
                }
                Direction::Left => {
                    let mut operands = children[j + 1].unfold_left(k).ok_or_else(|| {
                        Error::Site(format!(
                            "{site}: child {} is not a left comb of {k} nodes",
                            j + 1
                        ))
                    })?;
                    let last = operands.pop().expect("at least one operand");
                    debug_assert_eq!(operands.len(), modulus);
                    let mut moved = Vec::with_capacity(modulus + 1);
                    moved.push(children[j].clone());
                    moved.extend(operands);
                    new_children[j] = Tree::left_assoc_meet(params, moved)?;
                    new_children[j + 1] = last;
                }
            }
            Ok(Tree::node_unchecked(new_children))
        })
    }

    /// Applies one [`Move`].
    pub fn apply(&self, params: &Params, mv: &Move) -> Result<Tree> {
        self.rotate(params, &mv.site, mv.direction)
    }

    /// Every tree reachable from `self` by one rotation in either direction,
    /// together with the move that produced it.
    pub fn neighbours(&self, params: &Params) -> Vec<(Move, Tree)> {
        let mut out = Vec::new();
        for direction in [Direction::Right, Direction::Left] {
            for site in self.rotation_sites(params, direction) {
                let next = self
                    .rotate(params, &site, direction)
                    .expect("listed sites always rotate");
                out.push((Move { direction, site }, next));
            }
        }
        out
    }
}

fn collect_sites(
    t: &Tree,
    params: &Params,
    direction: Direction,
    path: &mut Vec<usize>,
    sites: &mut Vec<Site>,
) {
    let children = t.children();
    if children.is_empty() {
        return;
    }
    for j in 0..children.len() - 1 {
        let pivot = match direction {
            Direction::Right => &children[j],
            Direction::Left => &children[j + 1],
        };
        if pivot.left_spine() >= params.k() {
            sites.push(Site {
                address: NodeAddress(path.clone()),
                slot: j,
            });
        }
    }
    for (i, child) in children.iter().enumerate() {
        path.push(i);
        collect_sites(child, params, direction, path, sites);
        path.pop();
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b) || (a.leaves == b.leaves && a.children == b.children)
            }
            _ => false,
        }
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            None => state.write_u8(0),
            Some(n) => {
                state.write_u8(1);
                for c in n.children.iter() {
                    c.hash(state);
                }
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print(self, crate::expr::Style::Minimal))
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tree({})",
            crate::expr::print(self, crate::expr::Style::Full)
        )
    }
}

/// Child-index path from the root; empty for the root itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeAddress(Vec<usize>);

impl NodeAddress {
    pub fn root() -> Self {
        NodeAddress(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Self {
        NodeAddress(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        NodeAddress(v)
    }
}

impl fmt::Display for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

/// A rotation site: node `address` and the adjacent child pair
/// `(slot, slot + 1)`, `0 <= slot <= m - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub address: NodeAddress,
    pub slot: usize,
}

impl Site {
    pub fn new(address: NodeAddress, slot: usize) -> Self {
        Site { address, slot }
    }

    pub fn root(slot: usize) -> Self {
        Site {
            address: NodeAddress::root(),
            slot,
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.address, self.slot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Left-hand side to right-hand side of the k-associative law.
    Right,
    /// Right-hand side to left-hand side.
    Left,
}

impl Direction {
    pub fn inverse(self) -> Self {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Right => "right",
            Direction::Left => "left",
        })
    }
}

/// One rotation step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Move {
    pub direction: Direction,
    pub site: Site,
}

impl Move {
    pub fn inverse(&self) -> Move {
        Move {
            direction: self.direction.inverse(),
            site: self.site.clone(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.direction, self.site)
    }
}

/// Edge-label counts on root-to-leaf paths.
///
/// Entry `(i, j)` is the number of edges labelled `l_{i+1}` (edges into an
/// `i`-th child) on the path from the root to leaf `j`. Stored row-major,
/// `m` rows by `N` columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DepthMatrix {
    labels: usize,
    leaves: usize,
    data: Vec<usize>,
}

impl DepthMatrix {
    fn of(t: &Tree, arity: usize) -> Result<Self> {
        let leaves = t.leaf_count();
        let mut data = vec![0; arity * leaves];
        let mut counts = vec![0; arity];
        let mut next_leaf = 0;
        fill_depths(t, &mut counts, &mut next_leaf, &mut data, leaves);
        debug_assert_eq!(next_leaf, leaves);
        Ok(DepthMatrix {
            labels: arity,
            leaves,
            data,
        })
    }

    /// Builds a matrix from explicit rows (one per label); rows must be
    /// non-empty and of equal length.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let labels = rows.len();
        let leaves = rows.first().map_or(0, Vec::len);
        if labels < 2 || leaves == 0 || rows.iter().any(|r| r.len() != leaves) {
            return Err(Error::Format(
                "depth matrix needs at least two equal, non-empty rows".into(),
            ));
        }
        Ok(DepthMatrix {
            labels,
            leaves,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Number of rows, `m`.
    pub fn labels(&self) -> usize {
        self.labels
    }

    /// Number of columns, `N`.
    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn get(&self, label: usize, leaf: usize) -> usize {
        self.data[label * self.leaves + leaf]
    }

    pub fn row(&self, label: usize) -> &[usize] {
        &self.data[label * self.leaves..(label + 1) * self.leaves]
    }

    pub fn column(&self, leaf: usize) -> Vec<usize> {
        (0..self.labels).map(|i| self.get(i, leaf)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.labels).map(|i| self.row(i).to_vec()).collect()
    }

    /// `w_j = Σ_i (m - i) δ^{l_i}_j` for every leaf, unreduced.
    pub fn weighted_sums(&self) -> Vec<usize> {
        let m = self.labels;
        (0..self.leaves)
            .map(|j| (0..m).map(|i| (m - 1 - i) * self.get(i, j)).sum())
            .collect()
    }
}

fn fill_depths(
    t: &Tree,
    counts: &mut [usize],
    next_leaf: &mut usize,
    data: &mut [usize],
    leaves: usize,
) {
    let children = t.children();
    if children.is_empty() {
        for (i, c) in counts.iter().enumerate() {
            data[i * leaves + *next_leaf] = *c;
        }
        *next_leaf += 1;
        return;
    }
    for (i, child) in children.iter().enumerate() {
        counts[i] += 1;
        fill_depths(child, counts, next_leaf, data, leaves);
        counts[i] -= 1;
    }
}

/// Every tree with `leaves` leaves, ordered lexicographically by Dyck tuple.
pub fn enumerate_trees(params: &Params, leaves: usize) -> Result<impl Iterator<Item = Tree>> {
    params.check_leaf_count(leaves)?;
    let params = *params;
    Ok(DyckTuples::new(&params, leaves - 1)?
        .map(move |d: DyckTuple| d.to_tree(&params).expect("enumerated tuples are valid")))
}
