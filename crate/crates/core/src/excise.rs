//! Decomposition of free cells into composites of atoms.
//!
//! A cell `c` of dimension `n` is split as `a ∘_k b` for the largest `k`
//! that admits a split into two strictly smaller cells. The elements of `M`
//! above dimension `k` are distributed between `a` and `b`: `a` takes a
//! subset `S` (tried first as prefixes of a linear extension of ◁, then as
//! arbitrary subsets), the lower slices of both halves are forced by the
//! cell equations, and the split is accepted when both halves are cells whose
//! composite is `c`. Each half has fewer elements in its top differing
//! dimension, so the recursion terminates.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::complex::{ElemSet, ParityComplex};
use crate::error::{Error, Result};
use crate::freecat::{
    atom, cell_dim, compose, compose_unchecked, is_cell, plus_from_minus, source, target, FreeCell,
};

/// A binary composition tree with leaves of type `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Plan<L> {
    Leaf(L),
    Comp { k: usize, left: Box<Plan<L>>, right: Box<Plan<L>> },
}

impl<L> Plan<L> {
    pub fn comp(k: usize, left: Plan<L>, right: Plan<L>) -> Self {
        Plan::Comp { k, left: Box::new(left), right: Box::new(right) }
    }

    pub fn map<M>(&self, f: &mut impl FnMut(&L) -> M) -> Plan<M> {
        match self {
            Plan::Leaf(l) => Plan::Leaf(f(l)),
            Plan::Comp { k, left, right } => {
                let left = left.map(f);
                Plan::comp(*k, left, right.map(f))
            }
        }
    }

    /// Folds the tree bottom-up, left before right.
    pub fn fold<T, E>(
        &self,
        leaf: &mut impl FnMut(&L) -> std::result::Result<T, E>,
        comp: &mut impl FnMut(usize, T, T) -> std::result::Result<T, E>,
    ) -> std::result::Result<T, E> {
        match self {
            Plan::Leaf(l) => leaf(l),
            Plan::Comp { k, left, right } => {
                let a = left.fold(leaf, comp)?;
                let b = right.fold(leaf, comp)?;
                comp(*k, a, b)
            }
        }
    }

    pub fn leaves(&self) -> Vec<&L> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            match p {
                Plan::Leaf(l) => out.push(l),
                Plan::Comp { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }
}

impl<L: fmt::Display> fmt::Display for Plan<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Plan::Leaf(l) => write!(f, "⟨{l}⟩"),
            Plan::Comp { k, left, right } => write!(f, "({left} ∘{k} {right})"),
        }
    }
}

/// Recomputes a cell from a plan whose leaves are element positions.
pub fn replay(c: &ParityComplex, plan: &Plan<usize>) -> Result<FreeCell> {
    plan.fold(&mut |&x| Ok(atom(c, x)), &mut |k, a, b| compose(c, &a, &b, k))
}

/// Subset search is exhaustive up to this many elements above the split
/// dimension.
const SUBSET_LIMIT: usize = 14;

/// Excision with a per-complex plan cache.
pub struct Excisor<'a> {
    complex: &'a ParityComplex,
    ranks: Vec<usize>,
    cache: HashMap<FreeCell, Plan<usize>>,
}

impl<'a> Excisor<'a> {
    pub fn new(complex: &'a ParityComplex) -> Self {
        Excisor { complex, ranks: complex.triangle_order().ranks(), cache: HashMap::new() }
    }

    pub fn complex(&self) -> &'a ParityComplex {
        self.complex
    }

    pub fn excise(&mut self, cell: &FreeCell) -> Result<Plan<usize>> {
        if let Some(p) = self.cache.get(cell) {
            return Ok(p.clone());
        }
        let plan = match leaf_of(self.complex, cell) {
            Some(x) => Plan::Leaf(x),
            None => {
                let (k, a, b) = first_split(self.complex, &self.ranks, cell)
                    .ok_or_else(|| Error::NoExcision(cell.display(self.complex).to_string()))?;
                let left = self.excise(&a)?;
                let right = self.excise(&b)?;
                Plan::comp(k, left, right)
            }
        };
        self.cache.insert(cell.clone(), plan.clone());
        Ok(plan)
    }
}

/// One plan for `cell`. Fails with [`Error::NoExcision`] when no split is
/// found, which indicates a complex that is not loop-free.
pub fn excise(c: &ParityComplex, cell: &FreeCell) -> Result<Plan<usize>> {
    Excisor::new(c).excise(cell)
}

/// The element `x` when `cell` is the atom `⟨x⟩`.
fn leaf_of(c: &ParityComplex, cell: &FreeCell) -> Option<usize> {
    let d = cell_dim(c, cell);
    let top = c.slice(&cell.m, d);
    let mut ones = top.ones();
    let x = ones.next()?;
    if ones.next().is_some() {
        return None;
    }
    (atom(c, x) == *cell).then_some(x)
}

/// Tries `S` as the `a`-part above dimension `k`.
fn try_split(
    c: &ParityComplex,
    cell: &FreeCell,
    k: usize,
    low: &ElemSet,
    high: &[usize],
    chosen: &[bool],
) -> Option<(FreeCell, FreeCell)> {
    let mut am = low.clone();
    let mut rest = c.empty_set();
    for (&x, &inside) in high.iter().zip(chosen) {
        if inside {
            am.insert(x);
        } else {
            rest.insert(x);
        }
    }
    let a = FreeCell { p: plus_from_minus(c, &am), m: am };
    if !is_cell(c, &a) {
        return None;
    }
    let mut bm = target(c, &a, k).m;
    bm.union_with(&rest);
    let b = FreeCell { p: plus_from_minus(c, &bm), m: bm };
    if !is_cell(c, &b) || target(c, &a, k) != source(c, &b, k) {
        return None;
    }
    (compose_unchecked(c, &a, &b, k) == *cell).then_some((a, b))
}

fn high_elements(c: &ParityComplex, ranks: &[usize], cell: &FreeCell, k: usize) -> (ElemSet, Vec<usize>) {
    let low = c.upto(&cell.m, k);
    let mut high: Vec<usize> = cell.m.ones().filter(|&x| c.elem_dim(x) > k).collect();
    high.sort_by_key(|&x| ranks[x]);
    (low, high)
}

fn first_split(c: &ParityComplex, ranks: &[usize], cell: &FreeCell) -> Option<(usize, FreeCell, FreeCell)> {
    let n = cell_dim(c, cell);
    for k in (0..n).rev() {
        let (low, high) = high_elements(c, ranks, cell, k);
        let len = high.len();
        if len < 2 {
            continue;
        }
        for size in 1..len {
            let chosen: Vec<bool> = (0..len).map(|i| i < size).collect();
            if let Some((a, b)) = try_split(c, cell, k, &low, &high, &chosen) {
                return Some((k, a, b));
            }
        }
        if len <= SUBSET_LIMIT {
            for mask in 1u32..(1u32 << len) - 1 {
                let chosen: Vec<bool> = (0..len).map(|i| mask & (1 << i) != 0).collect();
                if let Some((a, b)) = try_split(c, cell, k, &low, &high, &chosen) {
                    return Some((k, a, b));
                }
            }
        }
    }
    None
}

/// Every split `cell = a ∘_k b` into two strictly smaller cells.
pub fn all_splits(c: &ParityComplex, cell: &FreeCell) -> Vec<(usize, FreeCell, FreeCell)> {
    let ranks = c.triangle_order().ranks();
    let n = cell_dim(c, cell);
    let mut out = Vec::new();
    for k in (0..n).rev() {
        let (low, high) = high_elements(c, &ranks, cell, k);
        let len = high.len();
        if !(2..=SUBSET_LIMIT).contains(&len) {
            continue;
        }
        for mask in 1u32..(1u32 << len) - 1 {
            let chosen: Vec<bool> = (0..len).map(|i| mask & (1 << i) != 0).collect();
            if let Some((a, b)) = try_split(c, cell, k, &low, &high, &chosen) {
                out.push((k, a, b));
            }
        }
    }
    out
}

/// All distinct plans for `cell`, at most `cap` of them.
pub fn excision_plans(c: &ParityComplex, cell: &FreeCell, cap: usize) -> Vec<Plan<usize>> {
    let mut memo: HashMap<FreeCell, Vec<Plan<usize>>> = HashMap::new();
    plans_rec(c, cell, cap, &mut memo)
}

fn plans_rec(
    c: &ParityComplex,
    cell: &FreeCell,
    cap: usize,
    memo: &mut HashMap<FreeCell, Vec<Plan<usize>>>,
) -> Vec<Plan<usize>> {
    if let Some(p) = memo.get(cell) {
        return p.clone();
    }
    let mut out: Vec<Plan<usize>> = Vec::new();
    let mut seen = HashSet::new();
    if let Some(x) = leaf_of(c, cell) {
        out.push(Plan::Leaf(x));
        seen.insert(Plan::Leaf(x));
    }
    'outer: for (k, a, b) in all_splits(c, cell) {
        let left = plans_rec(c, &a, cap, memo);
        let right = plans_rec(c, &b, cap, memo);
        for l in &left {
            for r in &right {
                let p = Plan::comp(k, l.clone(), r.clone());
                if seen.insert(p.clone()) {
                    out.push(p);
                    if out.len() >= cap {
                        break 'outer;
                    }
                }
            }
        }
    }
    memo.insert(cell.clone(), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, simplex};
    use crate::freecat::{atom_by_id, enumerate_cells};

    #[test]
    fn edge_path_plan() {
        let s = simplex(2);
        let e01 = atom_by_id(&s, "01").unwrap();
        let e12 = atom_by_id(&s, "12").unwrap();
        let path = compose(&s, &e01, &e12, 0).unwrap();
        let plan = excise(&s, &path).unwrap();
        let expected = Plan::comp(0, Plan::Leaf(s.lookup("01").unwrap()), Plan::Leaf(s.lookup("12").unwrap()));
        assert_eq!(plan, expected);
        assert_eq!(excision_plans(&s, &path, 10), vec![expected]);
    }

    #[test]
    fn atoms_are_leaves() {
        let s = simplex(3);
        for x in 0..s.len() {
            assert_eq!(excise(&s, &atom(&s, x)).unwrap(), Plan::Leaf(x));
        }
    }

    #[test]
    fn every_cell_replays() {
        for c in [simplex(3), cube(2)] {
            let mut ex = Excisor::new(&c);
            for cell in enumerate_cells(&c, c.dim(), 100_000).unwrap() {
                let plan = ex.excise(&cell).unwrap();
                assert_eq!(replay(&c, &plan).unwrap(), cell);
                for p in excision_plans(&c, &cell, 64) {
                    assert_eq!(replay(&c, &p).unwrap(), cell);
                }
            }
        }
    }

    #[test]
    fn display_of_plan() {
        let p: Plan<&str> = Plan::comp(0, Plan::Leaf("01"), Plan::Leaf("12"));
        assert_eq!(p.to_string(), "(⟨01⟩ ∘0 ⟨12⟩)");
    }
}
