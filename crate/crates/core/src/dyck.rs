//! `(m-1)`-Dyck paths held as up-run tuples.
//!
//! A path of length `L` (its number of down-steps) is stored as
//! `(d_1, …, d_L)`, where `d_i` is the number of unit up-steps immediately
//! before the `i`-th down-step. Every `d_i` is a multiple of `s = m - 1`,
//! the entries sum to `L`, and `d_1 + … + d_i >= i` for every prefix.
//!
//! The tuple convention in the literature often carries one more entry, a
//! trailing up-run after the last down-step, which is always zero; it is
//! dropped here. A tree with `N` leaves maps to a tuple of length `N - 1`.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::tree::{DepthMatrix, Direction, Site, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckTuple {
    step: usize,
    entries: Vec<usize>,
}

impl DyckTuple {
    /// Validates `entries` as an `(m-1)`-Dyck tuple.
    pub fn new(params: &Params, entries: Vec<usize>) -> Result<Self> {
        let step = params.step();
        if let Some((i, d)) = entries.iter().enumerate().find(|(_, d)| *d % step != 0) {
            return Err(Error::Format(format!(
                "entry {} = {d} is not a multiple of {step}",
                i + 1
            )));
        }
        let mut height: usize = 0;
        for (i, &d) in entries.iter().enumerate() {
            height += d;
            if height < i + 1 {
                return Err(Error::Format(format!(
                    "path dips below the axis at down-step {}",
                    i + 1
                )));
            }
        }
        if height != entries.len() {
            return Err(Error::Format(format!(
                "up-runs sum to {height}, expected {}",
                entries.len()
            )));
        }
        Ok(DyckTuple { step, entries })
    }

    pub(crate) fn new_unchecked(step: usize, entries: Vec<usize>) -> Self {
        DyckTuple { step, entries }
    }

    pub fn empty(params: &Params) -> Self {
        DyckTuple {
            step: params.step(),
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// Number of down-steps `L`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Up-step size `m - 1`.
    pub fn step(&self) -> usize {
        self.step
    }

    fn check_params(&self, params: &Params) -> Result<()> {
        if self.step != params.step() {
            return Err(Error::Format(format!(
                "tuple has step {}, parameters need {}",
                self.step,
                params.step()
            )));
        }
        Ok(())
    }

    /// The image of `t` under σ, where
    /// `σ(ε)` is empty and `σ(t_1 ∧ … ∧ t_m) = N^{m-1} σ(t_1) S σ(t_2) S … S σ(t_m)`.
    pub fn from_tree(t: &Tree, params: &Params) -> Result<Self> {
        t.check_params(params)?;
        let mut entries = Vec::with_capacity(t.leaf_count() - 1);
        let mut pending = 0;
        sigma(t, params.step(), &mut pending, &mut entries);
        debug_assert_eq!(pending, 0);
        Ok(DyckTuple {
            step: params.step(),
            entries,
        })
    }

    /// The unique tree whose σ image is `self`, read off the decomposition
    /// `N^{m-1} D_1 S D_2 S … S D_m`.
    pub fn to_tree(&self, params: &Params) -> Result<Tree> {
        self.check_params(params)?;
        let mut reader = StepReader::new(&self.entries);
        let t = read_tree(&mut reader, params)?;
        if !reader.at_end() {
            return Err(Error::Format(format!(
                "trailing steps after a complete tree in {self}"
            )));
        }
        Ok(t)
    }

    /// The tuple determined by a depth matrix:
    /// `d_1 = (m-1) δ^{l_1}_1` and `d_j = w_j - w_{j-1} + 1`, with
    /// `w_j = Σ_i (m - i) δ^{l_i}_j`.
    pub fn from_depth(depth: &DepthMatrix, params: &Params) -> Result<Self> {
        if depth.labels() != params.arity() {
            return Err(Error::Format(format!(
                "depth matrix has {} rows, expected {}",
                depth.labels(),
                params.arity()
            )));
        }
        let n = depth.leaves();
        let w = depth.weighted_sums();
        let mut entries = Vec::with_capacity(n.saturating_sub(1));
        if n > 1 {
            entries.push(params.step() * depth.get(0, 0));
        }
        for j in 1..n {
            let d = w[j] as i64 - w[j - 1] as i64 + 1;
            if j == n - 1 {
                // the dropped trailing run
                if d != 0 {
                    return Err(Error::Format(format!(
                        "trailing up-run is {d}, not a depth matrix"
                    )));
                }
                break;
            }
            if d < 0 {
                return Err(Error::Format(format!(
                    "negative up-run {d} at position {}",
                    j + 1
                )));
            }
            entries.push(d as usize);
        }
        DyckTuple::new(params, entries)
    }

    /// Reads `ns` text (`"NNSS"`) or tuple text (`"(2,0)"`, parentheses
    /// optional), whichever the input looks like.
    pub fn parse(text: &str, params: &Params) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.chars().all(|c| c == 'N' || c == 'S') {
            DyckTuple::parse_ns(trimmed, params)
        } else {
            DyckTuple::parse_tuple(trimmed, params)
        }
    }

    pub fn parse_ns(text: &str, params: &Params) -> Result<Self> {
        let mut entries = Vec::new();
        let mut run = 0;
        for (i, c) in text.trim().chars().enumerate() {
            match c {
                'N' => run += 1,
                'S' => {
                    entries.push(run);
                    run = 0;
                }
                other => {
                    return Err(Error::Format(format!(
                        "unexpected character {other:?} at offset {i}"
                    )))
                }
            }
        }
        if run != 0 {
            return Err(Error::Format(
                "path ends with up-steps above the axis".into(),
            ));
        }
        DyckTuple::new(params, entries)
    }

    pub fn parse_tuple(text: &str, params: &Params) -> Result<Self> {
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix('(') {
            body = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Format("unbalanced parenthesis".into()))?;
        }
        let body = body.trim();
        let entries = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Format(format!("not a non-negative integer: {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        DyckTuple::new(params, entries)
    }

    /// `N`/`S` word of the path.
    pub fn to_ns(&self) -> String {
        let mut s = String::with_capacity(2 * self.entries.len());
        for &d in &self.entries {
            s.extend(std::iter::repeat_n('N', d));
            s.push('S');
        }
        s
    }

    /// One right or left k-compression, computed by rotating the
    /// corresponding tree.
    pub fn compress(&self, params: &Params, site: &Site, direction: Direction) -> Result<Self> {
        let t = self.to_tree(params)?;
        let r = t.rotate(params, site, direction)?;
        DyckTuple::from_tree(&r, params)
    }

    /// `true` iff `d_i < K` for every `i >= 2`.
    pub fn is_minimal(&self, params: &Params) -> bool {
        let modulus = params.modulus();
        self.entries.iter().skip(1).all(|&d| d < modulus)
    }

    /// `(d_2 mod K, …, d_L mod K)`.
    pub fn signature(&self, params: &Params) -> Signature {
        let modulus = params.modulus();
        Signature(self.entries.iter().skip(1).map(|d| d % modulus).collect())
    }

    /// The unique minimal tuple in the k-equivalence class of `self`: tail
    /// entries reduced mod `K`, first entry absorbing the rest of the total.
    pub fn canonicalize(&self, params: &Params) -> Result<Self> {
        self.check_params(params)?;
        let len = self.entries.len();
        if len == 0 {
            return Ok(self.clone());
        }
        let tail = self.signature(params).0;
        let tail_sum: usize = tail.iter().sum();
        let first = len.checked_sub(tail_sum).ok_or_else(|| {
            Error::InternalInvariant(format!("residues of {self} exceed the length"))
        })?;
        if first < params.step() || first % params.step() != 0 {
            return Err(Error::InternalInvariant(format!(
                "canonical first run {first} of {self} is not a positive multiple of {}",
                params.step()
            )));
        }
        let mut entries = Vec::with_capacity(len);
        entries.push(first);
        entries.extend(tail);
        DyckTuple::new(params, entries).map_err(|e| {
            Error::InternalInvariant(format!("canonical form of {self} is not a path: {e}"))
        })
    }
}

fn sigma(t: &Tree, step: usize, pending: &mut usize, out: &mut Vec<usize>) {
    let children = t.children();
    if children.is_empty() {
        return;
    }
    *pending += step;
    for (i, child) in children.iter().enumerate() {
        if i > 0 {
            out.push(*pending);
            *pending = 0;
        }
        sigma(child, step, pending, out);
    }
}

/// Walks an up-run tuple one unit step at a time.
struct StepReader<'a> {
    entries: &'a [usize],
    index: usize,
    ups_left: usize,
}

impl<'a> StepReader<'a> {
    fn new(entries: &'a [usize]) -> Self {
        StepReader {
            entries,
            index: 0,
            ups_left: entries.first().copied().unwrap_or(0),
        }
    }

    fn at_end(&self) -> bool {
        self.index >= self.entries.len()
    }

    fn peek_up(&self) -> bool {
        !self.at_end() && self.ups_left > 0
    }

    fn take_ups(&mut self, n: usize) -> Result<()> {
        if self.ups_left < n {
            return Err(Error::Format("up-run is not a multiple of the step".into()));
        }
        self.ups_left -= n;
        Ok(())
    }

    fn take_down(&mut self) -> Result<()> {
        if self.at_end() || self.ups_left > 0 {
            return Err(Error::Format("expected a down-step".into()));
        }
        self.index += 1;
        self.ups_left = self.entries.get(self.index).copied().unwrap_or(0);
        Ok(())
    }
}

fn read_tree(reader: &mut StepReader<'_>, params: &Params) -> Result<Tree> {
    if !reader.peek_up() {
        return Ok(Tree::leaf());
    }
    reader.take_ups(params.step())?;
    let mut children = Vec::with_capacity(params.arity());
    children.push(read_tree(reader, params)?);
    for _ in 1..params.arity() {
        reader.take_down()?;
        children.push(read_tree(reader, params)?);
    }
    Tree::meet(params, children)
}

impl fmt::Display for DyckTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Tail residues `(d_2 mod K, …, d_L mod K)`; equal signatures on tuples of
/// equal length characterize k-equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<usize>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Anything with a Dyck tuple image: tuples themselves and trees.
pub trait AsDyck {
    fn as_dyck(&self, params: &Params) -> Result<Cow<'_, DyckTuple>>;
}

impl AsDyck for DyckTuple {
    fn as_dyck(&self, params: &Params) -> Result<Cow<'_, DyckTuple>> {
        self.check_params(params)?;
        Ok(Cow::Borrowed(self))
    }
}

impl AsDyck for Tree {
    fn as_dyck(&self, params: &Params) -> Result<Cow<'_, DyckTuple>> {
        DyckTuple::from_tree(self, params).map(Cow::Owned)
    }
}

/// k-equivalence by signature comparison, linear in the size of the inputs.
pub fn equivalent<A: AsDyck + ?Sized, B: AsDyck + ?Sized>(
    a: &A,
    b: &B,
    params: &Params,
) -> Result<bool> {
    let a = a.as_dyck(params)?;
    let b = b.as_dyck(params)?;
    if a.len() != b.len() {
        return Err(Error::Size {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.signature(params) == b.signature(params))
}

/// All Dyck tuples of a given length, in increasing lexicographic order.
#[derive(Debug, Clone)]
pub struct DyckTuples {
    step: usize,
    current: Option<Vec<usize>>,
}

impl DyckTuples {
    pub fn new(params: &Params, length: usize) -> Result<Self> {
        params.check_length(length)?;
        let step = params.step();
        let mut first = vec![0; length];
        fill_minimal(&mut first, 0, 0, step);
        Ok(DyckTuples {
            step,
            current: Some(first),
        })
    }
}

/// Lexicographically smallest completion of `d[from..]` given the prefix sum
/// `sum` of `d[..from]`.
fn fill_minimal(d: &mut [usize], from: usize, mut sum: usize, step: usize) {
    for (j, slot) in d.iter_mut().enumerate().skip(from) {
        let need = j + 1;
        *slot = if sum >= need {
            0
        } else {
            (need - sum).div_ceil(step) * step
        };
        sum += *slot;
    }
}

impl Iterator for DyckTuples {
    type Item = DyckTuple;

    fn next(&mut self) -> Option<DyckTuple> {
        let current = self.current.take()?;
        let len = current.len();
        let mut prefix = Vec::with_capacity(len);
        let mut sum = 0;
        for &d in &current {
            sum += d;
            prefix.push(sum);
        }
        // Rightmost position (never the last) that can grow by one step.
        if let Some(i) = (0..len.saturating_sub(1))
            .rev()
            .find(|&i| prefix[i] + self.step <= len)
        {
            let mut next = current.clone();
            next[i] += self.step;
            fill_minimal(&mut next, i + 1, prefix[i] + self.step, self.step);
            self.current = Some(next);
        }
        Some(DyckTuple::new_unchecked(self.step, current))
    }
}
