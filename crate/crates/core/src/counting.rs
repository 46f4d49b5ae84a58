//! Exact counts of trees and of k-equivalence classes.
//!
//! Two indexings are in play. `leaves` is the leaf (operand) count `N`;
//! `length` is the Dyck length `L = N - 1`. Class counts are indexed by
//! `length`, tree counts by `leaves`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dyck::{DyckTuple, Signature};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::tree::{enumerate_trees, Move, Tree};

/// Arbitrary-precision count.
pub type BigCount = BigUint;

/// Largest number of trees a full enumeration may visit unless told otherwise.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

pub fn binomial(n: usize, r: usize) -> BigCount {
    if r > n {
        return BigCount::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigCount::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / (p_1! p_2! ...)`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigCount> {
    let total: usize = parts.iter().sum();
    if total != n {
        return Err(Error::Domain(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let mut acc = BigCount::one();
    let mut used = 0;
    for &p in parts {
        used += p;
        acc *= binomial(used, p);
    }
    Ok(acc)
}

/// Number of full `m`-ary trees with `leaves` leaves.
pub fn fuss_catalan(m: usize, leaves: usize) -> Result<BigCount> {
    let params = Params::new(m, 1)?;
    params.check_leaf_count(leaves)?;
    let n = (leaves - 1) / (m - 1);
    let (q, r) = binomial(m * n, n).div_rem(&BigCount::from((m - 1) * n + 1));
    if !r.is_zero() {
        return Err(Error::InternalInvariant(format!(
            "fuss-catalan division left remainder {r} for m={m}, n={n}"
        )));
    }
    Ok(q)
}

/// `Σ multinomial(L; m_1..m_k)` over `m_1 + … + m_k = L` with
/// `Σ (j-1) m_j = (L - lead)/(m-1)`: the number of prefixed words with first
/// run `lead` (see [`PrefixedWord`]).
pub fn prefixed_word_count(params: &Params, length: usize, lead: usize) -> Result<BigCount> {
    check_lead(params, length, lead)?;
    let weight = (length - lead) / params.step();
    let mut parts = Vec::with_capacity(params.k());
    let mut total = BigCount::zero();
    compositions(params.k(), length, weight, &mut parts, &mut |parts| {
        total += multinomial(length, parts).expect("parts sum to length");
    });
    Ok(total)
}

/// Compositions `(c_1..c_k)` of `total` with `Σ (j-1) c_j = weight`,
/// pruned as soon as the weight is overshot.
fn compositions(
    k: usize,
    total: usize,
    weight: usize,
    parts: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let j = parts.len();
    if j + 1 == k {
        // the remaining count goes to c_k, which must meet the weight exactly
        if weight == total * (k - 1) {
            parts.push(total);
            visit(parts);
            parts.pop();
        }
        return;
    }
    for c in 0..=total {
        if c * j > weight {
            break;
        }
        parts.push(c);
        compositions(k, total - c, weight - c * j, parts, visit);
        parts.pop();
    }
}

fn check_lead(params: &Params, length: usize, lead: usize) -> Result<()> {
    params.check_length(length)?;
    if lead == 0 || lead > length || !lead.is_multiple_of(params.step()) {
        return Err(Error::arity(format!(
            "first run {lead} must be a positive multiple of {} not exceeding {length}",
            params.step()
        )));
    }
    Ok(())
}

/// The number of k-equivalence classes of trees with `length + 1` leaves,
/// by the closed formula.
pub fn modular_fuss_catalan(params: &Params, length: usize) -> Result<BigCount> {
    params.check_length(length)?;
    if length == 0 {
        return Ok(BigCount::one());
    }
    let mut total = BigCount::zero();
    for lead in (params.step()..=length).step_by(params.step()) {
        let (term, r) =
            (prefixed_word_count(params, length, lead)? * lead).div_rem(&BigCount::from(length));
        if !r.is_zero() {
            return Err(Error::InternalInvariant(format!(
                "term for first run {lead} is not an integer ({params}, L={length})"
            )));
        }
        total += term;
    }
    Ok(total)
}

/// Counts minimal tuples among all Dyck tuples of `length`, found by
/// backtracking under the prefix law.
pub fn count_minimal_brute(params: &Params, length: usize) -> Result<BigCount> {
    params.check_length(length)?;
    let mut d = vec![0; length];
    let mut count: u64 = 0;
    backtrack(params, &mut d, 0, 0, &mut |d| {
        if DyckTuple::new(params, d.to_vec())
            .expect("backtracking yields valid tuples")
            .is_minimal(params)
        {
            count += 1;
        }
    });
    Ok(BigCount::from(count))
}

fn backtrack(
    params: &Params,
    d: &mut [usize],
    pos: usize,
    sum: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    let len = d.len();
    if pos == len {
        if sum == len {
            visit(d);
        }
        return;
    }
    let step = params.step();
    let mut v = 0;
    while sum + v <= len {
        if sum + v > pos {
            d[pos] = v;
            backtrack(params, d, pos + 1, sum + v, visit);
        }
        v += step;
    }
    d[pos] = 0;
}

fn check_budget(params: &Params, leaves: usize, budget: u64) -> Result<()> {
    let required = fuss_catalan(params.arity(), leaves)?;
    if required > BigCount::from(budget) {
        return Err(Error::Budget {
            required: required.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Connected components of the rotation graph (both directions) on all
/// trees with `leaves` leaves. Components are listed in order of their first
/// tree in enumeration order.
pub fn rotation_components(params: &Params, leaves: usize, budget: u64) -> Result<Vec<Vec<Tree>>> {
    check_budget(params, leaves, budget)?;
    let trees: Vec<Tree> = enumerate_trees(params, leaves)?.collect();
    let index: HashMap<Tree, usize> = trees.iter().cloned().zip(0..).collect();
    let mut component = vec![usize::MAX; trees.len()];
    let mut out = Vec::new();
    for start in 0..trees.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![trees[start].clone()];
        component[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (_, next) in trees[i].neighbours(params) {
                let j = index[&next];
                if component[j] == usize::MAX {
                    component[j] = id;
                    members.push(trees[j].clone());
                    queue.push_back(j);
                }
            }
        }
        out.push(members);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassOptions {
    pub members: bool,
    pub traces: bool,
    pub budget: u64,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions {
            members: false,
            traces: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A rotation sequence taking `member` to its class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub member: DyckTuple,
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub representative: DyckTuple,
    pub signature: Signature,
    pub size: usize,
    pub members: Option<Vec<DyckTuple>>,
    pub traces: Option<Vec<Trace>>,
}

/// Every k-equivalence class of trees with `leaves` leaves, sorted by
/// representative.
pub fn enumerate_classes(
    params: &Params,
    leaves: usize,
    options: ClassOptions,
) -> Result<Vec<ClassReport>> {
    check_budget(params, leaves, options.budget)?;
    params.check_leaf_count(leaves)?;
    let mut groups: BTreeMap<Signature, Vec<DyckTuple>> = BTreeMap::new();
    for d in crate::dyck::DyckTuples::new(params, leaves - 1)? {
        groups.entry(d.signature(params)).or_default().push(d);
    }
    let mut reports = Vec::with_capacity(groups.len());
    for (signature, members) in groups {
        let representative = members[0].canonicalize(params)?;
        if !members.contains(&representative) {
            return Err(Error::InternalInvariant(format!(
                "representative {representative} lies outside its class"
            )));
        }
        let traces = if options.traces {
            Some(traces_to(params, &representative, &members)?)
        } else {
            None
        };
        reports.push(ClassReport {
            representative,
            signature,
            size: members.len(),
            members: options.members.then_some(members),
            traces,
        });
    }
    reports.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(reports)
}

/// BFS from the representative; each member's trace walks the BFS tree back.
fn traces_to(params: &Params, rep: &DyckTuple, members: &[DyckTuple]) -> Result<Vec<Trace>> {
    let root = rep.to_tree(params)?;
    let mut parent: HashMap<Tree, Option<(Move, Tree)>> = HashMap::new();
    parent.insert(root.clone(), None);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        for (mv, next) in t.neighbours(params) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((mv, t.clone())));
                queue.push_back(next);
            }
        }
    }
    if parent.len() != members.len() {
        return Err(Error::InternalInvariant(format!(
            "rotation component of {rep} has {} trees, signature class has {}",
            parent.len(),
            members.len()
        )));
    }
    members
        .iter()
        .map(|member| {
            let mut t = member.to_tree(params)?;
            let mut moves = Vec::new();
            loop {
                match parent.get(&t) {
                    Some(Some((mv, prev))) => {
                        moves.push(mv.inverse());
                        t = prev.clone();
                    }
                    Some(None) => break,
                    None => {
                        return Err(Error::InternalInvariant(format!(
                            "{member} is not connected to {rep}"
                        )))
                    }
                }
            }
            Ok(Trace {
                member: member.clone(),
                moves,
            })
        })
        .collect()
}

/// The lattice word `N^lead S N^{i_1} S … S N^{i_n}` with `n = L` down-steps.
/// Tail runs are multiples of `m-1` below `K`, and up and down totals agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixedWord {
    params: Params,
    lead: usize,
    tail: Vec<usize>,
}

impl PrefixedWord {
    pub fn new(params: &Params, lead: usize, tail: Vec<usize>) -> Result<Self> {
        let n = tail.len();
        check_lead(params, n, lead)?;
        if let Some(&bad) = tail
            .iter()
            .find(|&&i| i % params.step() != 0 || i >= params.modulus())
        {
            return Err(Error::Domain(format!(
                "tail run {bad} is not a multiple of {} below {}",
                params.step(),
                params.modulus()
            )));
        }
        if lead + tail.iter().sum::<usize>() != n {
            return Err(Error::Domain(format!(
                "up-steps total {} but there are {n} down-steps",
                lead + tail.iter().sum::<usize>()
            )));
        }
        Ok(PrefixedWord {
            params: *params,
            lead,
            tail,
        })
    }

    pub fn lead(&self) -> usize {
        self.lead
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    /// Rotates the tail runs left by `j`, keeping the first run.
    pub fn cyclic_shift(&self, j: usize) -> Result<Self> {
        let n = self.tail.len();
        if j >= n {
            return Err(Error::Domain(format!("shift {j} out of range 0..{n}")));
        }
        let mut tail = self.tail.clone();
        tail.rotate_left(j);
        Ok(PrefixedWord {
            tail,
            ..self.clone()
        })
    }

    /// The height never drops below the baseline.
    pub fn is_dyck(&self) -> bool {
        let mut height = self.lead as isize;
        for (p, &i) in self.tail.iter().enumerate() {
            height -= 1;
            if height < 0 {
                return false;
            }
            if p + 1 < self.tail.len() {
                height += i as isize;
            }
        }
        height == 0
    }

    /// Number of `j` in `0..n` for which the `j`-th shift is Dyck.
    pub fn dyck_shift_count(&self) -> usize {
        (0..self.tail.len())
            .filter(|&j| self.cyclic_shift(j).expect("in range").is_dyck())
            .count()
    }

    /// The Dyck tuple `(lead, i_1, …, i_{n-1})` of a Dyck word.
    pub fn to_dyck_tuple(&self) -> Result<DyckTuple> {
        if !self.is_dyck() {
            return Err(Error::Domain(format!("{self} is not a Dyck path")));
        }
        let mut entries = Vec::with_capacity(self.tail.len());
        entries.push(self.lead);
        entries.extend_from_slice(&self.tail[..self.tail.len() - 1]);
        DyckTuple::new(&self.params, entries)
    }
}

impl fmt::Display for PrefixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&"N".repeat(self.lead))?;
        for &i in &self.tail {
            f.write_str("S")?;
            f.write_str(&"N".repeat(i))?;
        }
        Ok(())
    }
}

/// All prefixed words of length `L` with first run `lead`, in increasing
/// lexicographic order of the tail.
pub fn enumerate_prefixed_words(
    params: &Params,
    length: usize,
    lead: usize,
) -> Result<PrefixedWords> {
    check_lead(params, length, lead)?;
    let units = (length - lead) / params.step();
    let cap = params.k() - 1;
    let mut first = vec![0; length];
    let current = fill_right(&mut first, 0, units, cap).then_some(first);
    Ok(PrefixedWords {
        params: *params,
        lead,
        cap,
        current,
    })
}

/// Lexicographically smallest fill of `a[from..]` with `units` in total and
/// every entry at most `cap`: pack from the right.
fn fill_right(a: &mut [usize], from: usize, mut units: usize, cap: usize) -> bool {
    for slot in a[from..].iter_mut().rev() {
        *slot = units.min(cap);
        units -= *slot;
    }
    units == 0
}

/// Iterator returned by [`enumerate_prefixed_words`]. Entries are held in
/// units of `m-1`.
#[derive(Debug, Clone)]
pub struct PrefixedWords {
    params: Params,
    lead: usize,
    cap: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for PrefixedWords {
    type Item = PrefixedWord;

    fn next(&mut self) -> Option<PrefixedWord> {
        let current = self.current.take()?;
        let n = current.len();
        let mut suffix = 0;
        for p in (0..n).rev() {
            if suffix > 0 && current[p] < self.cap {
                let mut next = current.clone();
                next[p] += 1;
                fill_right(&mut next, p + 1, suffix - 1, self.cap);
                self.current = Some(next);
                break;
            }
            suffix += current[p];
        }
        let step = self.params.step();
        Some(PrefixedWord {
            params: self.params,
            lead: self.lead,
            tail: current.into_iter().map(|u| u * step).collect(),
        })
    }
}
