//! The solid triangle order.
//!
//! `x ◁ y` is generated by `x ∈ y⁻` and by `y ∈ x⁺`; the order is the
//! reflexive-transitive closure of those edges. Antisymmetry of this order
//! is the loop-freeness condition the free-category machinery relies on.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::complex::{ParityComplex, Sign};

#[derive(Clone, Debug)]
pub struct TriangleOrder {
    /// Generating edges `x → y` meaning `x ◁ y`, deduplicated and sorted.
    edges: Vec<Vec<usize>>,
    /// `reach[x]` holds every `y` with `x ◁ y` (reflexive).
    reach: Vec<FixedBitSet>,
    is_antisymmetric: bool,
    is_linear: bool,
}

impl TriangleOrder {
    pub fn new(c: &ParityComplex) -> Self {
        let n = c.len();
        let mut edges = vec![Vec::new(); n];
        for y in 0..n {
            for &x in c.faces(y, Sign::Minus) {
                edges[x].push(y);
            }
            for &z in c.faces(y, Sign::Plus) {
                edges[y].push(z);
            }
        }
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        Self::from_edges(edges)
    }

    /// Closes an arbitrary relation given as adjacency lists.
    pub fn from_edges(edges: Vec<Vec<usize>>) -> Self {
        let n = edges.len();
        let mut reach = Vec::with_capacity(n);
        let mut stack = Vec::new();
        for start in 0..n {
            let mut seen = FixedBitSet::with_capacity(n);
            seen.insert(start);
            stack.push(start);
            while let Some(x) = stack.pop() {
                for &y in &edges[x] {
                    if !seen.put(y) {
                        stack.push(y);
                    }
                }
            }
            reach.push(seen);
        }
        let mut is_antisymmetric = true;
        let mut is_linear = true;
        for x in 0..n {
            for y in (x + 1)..n {
                let xy = reach[x].contains(y);
                let yx = reach[y].contains(x);
                if xy && yx {
                    is_antisymmetric = false;
                }
                if !xy && !yx {
                    is_linear = false;
                }
            }
        }
        let is_linear = is_linear && is_antisymmetric;
        TriangleOrder { edges, reach, is_antisymmetric, is_linear }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_antisymmetric
    }

    /// Total and antisymmetric.
    pub fn is_linear(&self) -> bool {
        self.is_linear
    }

    /// `x ◁ y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.reach[x].contains(y)
    }

    pub fn generating_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    /// All pairs `x ◁ y` with `x ≠ y`.
    pub fn closure_edges(&self) -> Vec<Vec<usize>> {
        self.reach
            .iter()
            .enumerate()
            .map(|(x, r)| r.ones().filter(|&y| y != x).collect())
            .collect()
    }

    /// A shortest nontrivial cycle through the first element lying on one.
    pub fn cycle(&self) -> Option<Vec<usize>> {
        if self.is_antisymmetric {
            return None;
        }
        let n = self.len();
        for x in 0..n {
            let on_cycle = self.edges[x].iter().any(|&y| y != x && self.reach[y].contains(x));
            if !on_cycle {
                continue;
            }
            // breadth-first search back to x
            let mut prev = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(x);
            while let Some(u) = queue.pop_front() {
                for &v in &self.edges[u] {
                    if v == x {
                        let mut path = vec![x];
                        let mut w = u;
                        while w != x {
                            path.push(w);
                            w = prev[w];
                        }
                        path[1..].reverse();
                        path.push(x);
                        return Some(path);
                    }
                    if prev[v] == usize::MAX && v != x {
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
        }
        None
    }

    /// A linear extension of the order; ties (and, when the order has cycles,
    /// leftover elements) are broken by element position, i.e. `(dim, id)`.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for ys in &self.edges {
            for &y in ys {
                indeg[y] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
        let mut out = Vec::with_capacity(n);
        let mut placed = FixedBitSet::with_capacity(n);
        while let Some(Reverse(x)) = heap.pop() {
            out.push(x);
            placed.insert(x);
            for &y in &self.edges[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        out.extend((0..n).filter(|&x| !placed.contains(x)));
        out
    }

    /// Rank of each element in [`TriangleOrder::linear_extension`].
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.len()];
        for (r, x) in self.linear_extension().into_iter().enumerate() {
            rank[x] = r;
        }
        rank
    }

    /// Graphviz rendering of the generating edges.
    pub fn to_dot(&self, c: &ParityComplex) -> String {
        let mut out = String::from("digraph triangle_order {\n");
        for i in 0..c.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", c.id(i).replace('"', "\\\""));
        }
        for (x, y) in self.generating_edges() {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        out.push_str("}\n");
        out
    }
}
