//! Cells of the free ω-category `O(C)` on a parity complex.
//!
//! A cell is a pair `(M, P)` of subsets of `C`. Sources, targets and
//! composites are computed with set operations alone; identities are not
//! separate data, a `k`-cell serves as its own identity in every higher
//! dimension.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::complex::{ElemSet, ParityComplex, Sign};
use crate::constructions::{pair_id, product};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeCell {
    pub m: ElemSet,
    pub p: ElemSet,
}

impl FreeCell {
    pub fn new(m: ElemSet, p: ElemSet) -> Self {
        FreeCell { m, p }
    }

    pub fn from_ids<S: AsRef<str>>(
        c: &ParityComplex,
        m: impl IntoIterator<Item = S>,
        p: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        Ok(FreeCell { m: c.set_from_ids(m)?, p: c.set_from_ids(p)? })
    }

    /// Sort key used for deterministic listings: `(dim, M, P)`.
    pub fn sort_key(&self, c: &ParityComplex) -> (usize, Vec<usize>, Vec<usize>) {
        (cell_dim(c, self), self.m.ones().collect(), self.p.ones().collect())
    }

    /// `({m ids}, {p ids})` in `(dim, id)` order.
    pub fn display<'a>(&'a self, c: &'a ParityComplex) -> CellDisplay<'a> {
        CellDisplay { cell: self, complex: c }
    }

    /// Slices keyed by dimension, ids sorted.
    pub fn to_slices(&self, c: &ParityComplex) -> (BTreeMap<usize, Vec<String>>, BTreeMap<usize, Vec<String>>) {
        let slices = |s: &ElemSet| {
            let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for i in s.ones() {
                out.entry(c.elem_dim(i)).or_default().push(c.id(i).to_string());
            }
            out
        };
        (slices(&self.m), slices(&self.p))
    }
}

pub struct CellDisplay<'a> {
    cell: &'a FreeCell,
    complex: &'a ParityComplex,
}

impl fmt::Display for CellDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.complex;
        write!(
            f,
            "({{{}}},{{{}}})",
            c.ids_of(&self.cell.m).join(","),
            c.ids_of(&self.cell.p).join(",")
        )
    }
}

/// A failed well-formedness condition of a candidate cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellViolation {
    Empty,
    SeveralVertices { side: Sign },
    Overlapping { side: Sign, x: String, y: String },
    Equation { which: usize },
    TopMismatch,
}

impl fmt::Display for CellViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Sign| if *s == Sign::Minus { "M" } else { "P" };
        match self {
            CellViolation::Empty => f.write_str("M or P is empty"),
            CellViolation::SeveralVertices { side: s } => {
                write!(f, "{} has more than one element of dimension 0", side(s))
            }
            CellViolation::Overlapping { side: s, x, y } => {
                write!(f, "{x} and {y} in {} share a face of the same sign", side(s))
            }
            CellViolation::Equation { which } => {
                let eq = [
                    "P = (M ∪ M⁺) ∩ ¬M⁻",
                    "M = (P ∪ M⁻) ∩ ¬M⁺",
                    "P = (M ∪ P⁺) ∩ ¬P⁻",
                    "M = (P ∪ P⁻) ∩ ¬P⁺",
                ];
                write!(f, "{} fails", eq[*which])
            }
            CellViolation::TopMismatch => f.write_str("top slices of M and P differ"),
        }
    }
}

fn minus_set(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = a.clone();
    out.difference_with(b);
    out
}

fn union(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = a.clone();
    out.union_with(b);
    out
}

/// `(A ∪ B) ∩ ¬D`.
fn union_minus(a: &ElemSet, b: &ElemSet, d: &ElemSet) -> ElemSet {
    let mut out = union(a, b);
    out.difference_with(d);
    out
}

/// The `P` determined by `M` through `P = (M ∪ M⁺) ∩ ¬M⁻`.
pub fn plus_from_minus(c: &ParityComplex, m: &ElemSet) -> ElemSet {
    union_minus(m, &c.face_bits(m, Sign::Plus), &c.face_bits(m, Sign::Minus))
}

fn top_dim(c: &ParityComplex, s: &ElemSet) -> Option<usize> {
    s.ones().map(|i| c.elem_dim(i)).max()
}

/// Every failed condition for `(M, P)` to be a cell.
pub fn cell_violations(c: &ParityComplex, cell: &FreeCell) -> Vec<CellViolation> {
    let mut out = Vec::new();
    let (m, p) = (&cell.m, &cell.p);
    if m.is_clear() || p.is_clear() {
        out.push(CellViolation::Empty);
        return out;
    }
    for (side, s) in [(Sign::Minus, m), (Sign::Plus, p)] {
        if s.ones().filter(|&i| c.elem_dim(i) == 0).count() > 1 {
            out.push(CellViolation::SeveralVertices { side });
        }
        let members: Vec<usize> = s.ones().collect();
        'pairs: for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                if c.elem_dim(x) != c.elem_dim(y) || c.elem_dim(x) == 0 {
                    continue;
                }
                let shares = |sign| {
                    let fy = c.faces(y, sign);
                    c.faces(x, sign).iter().any(|f| fy.binary_search(f).is_ok())
                };
                if shares(Sign::Minus) || shares(Sign::Plus) {
                    out.push(CellViolation::Overlapping {
                        side,
                        x: c.id(x).to_string(),
                        y: c.id(y).to_string(),
                    });
                    break 'pairs;
                }
            }
        }
    }
    let (mm, mp) = (c.face_bits(m, Sign::Minus), c.face_bits(m, Sign::Plus));
    let (pm, pp) = (c.face_bits(p, Sign::Minus), c.face_bits(p, Sign::Plus));
    let checks = [
        (union_minus(m, &mp, &mm), p),
        (union_minus(p, &mm, &mp), m),
        (union_minus(m, &pp, &pm), p),
        (union_minus(p, &pm, &pp), m),
    ];
    for (which, (lhs, rhs)) in checks.iter().enumerate() {
        if lhs != *rhs {
            out.push(CellViolation::Equation { which });
        }
    }
    let (tm, tp) = (top_dim(c, m), top_dim(c, p));
    if tm != tp || tm.is_some_and(|k| c.slice(m, k) != c.slice(p, k)) {
        out.push(CellViolation::TopMismatch);
    }
    out
}

pub fn is_cell(c: &ParityComplex, cell: &FreeCell) -> bool {
    cell_violations(c, cell).is_empty()
}

/// Dimension of a cell: the least `k` with `s_k(c) = c`. For a well-formed
/// cell this is the top dimension of `M`.
pub fn cell_dim(c: &ParityComplex, cell: &FreeCell) -> usize {
    top_dim(c, &cell.m).max(top_dim(c, &cell.p)).unwrap_or(0)
}

/// `s_k(M, P) = (M^(k), M_k ∪ P^(k−1))`.
pub fn source(c: &ParityComplex, cell: &FreeCell, k: usize) -> FreeCell {
    let m = c.upto(&cell.m, k);
    let mut p = c.slice(&cell.m, k);
    if k > 0 {
        p.union_with(&c.upto(&cell.p, k - 1));
    }
    FreeCell { m, p }
}

/// `t_k(M, P) = (M^(k−1) ∪ P_k, P^(k))`.
pub fn target(c: &ParityComplex, cell: &FreeCell, k: usize) -> FreeCell {
    let p = c.upto(&cell.p, k);
    let mut m = c.slice(&cell.p, k);
    if k > 0 {
        m.union_with(&c.upto(&cell.m, k - 1));
    }
    FreeCell { m, p }
}

pub fn boundary(c: &ParityComplex, cell: &FreeCell, k: usize, sign: Sign) -> FreeCell {
    match sign {
        Sign::Minus => source(c, cell, k),
        Sign::Plus => target(c, cell, k),
    }
}

pub fn is_composable(c: &ParityComplex, a: &FreeCell, b: &FreeCell, k: usize) -> bool {
    target(c, a, k) == source(c, b, k)
}

/// `(M, P) ∘_k (N, Q) = (M ∪ (N ∩ ¬N_k), (P ∩ ¬P_k) ∪ Q)`, in diagrammatic
/// order: `a` comes first.
pub fn compose(c: &ParityComplex, a: &FreeCell, b: &FreeCell, k: usize) -> Result<FreeCell> {
    let t = target(c, a, k);
    let s = source(c, b, k);
    if t != s {
        return Err(Error::NotComposable {
            k,
            left: t.display(c).to_string(),
            right: s.display(c).to_string(),
        });
    }
    Ok(compose_unchecked(c, a, b, k))
}

pub(crate) fn compose_unchecked(c: &ParityComplex, a: &FreeCell, b: &FreeCell, k: usize) -> FreeCell {
    let m = union(&a.m, &minus_set(&b.m, &c.slice(&b.m, k)));
    let p = union(&minus_set(&a.p, &c.slice(&a.p, k)), &b.p);
    FreeCell { m, p }
}

/// `μ(x)` or `π(x)`: starting from `{x}`, each lower slice is
/// `(S_r)^ε ∩ ¬(S_r)^{−ε}` of the slice above.
fn atom_side(c: &ParityComplex, x: usize, sign: Sign) -> ElemSet {
    let mut all = c.set_of([x]);
    let mut layer = all.clone();
    for _ in 0..c.elem_dim(x) {
        let next = minus_set(&c.face_bits(&layer, sign), &c.face_bits(&layer, sign.flip()));
        all.union_with(&next);
        layer = next;
    }
    all
}

/// The atom `⟨x⟩ = (μ(x), π(x))`.
pub fn atom(c: &ParityComplex, x: usize) -> FreeCell {
    FreeCell { m: atom_side(c, x, Sign::Minus), p: atom_side(c, x, Sign::Plus) }
}

pub fn atom_by_id(c: &ParityComplex, id: &str) -> Result<FreeCell> {
    Ok(atom(c, c.lookup(id)?))
}

/// A product complex together with its factors, for the `χ`-formula.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub left: ParityComplex,
    pub right: ParityComplex,
    pub complex: ParityComplex,
    pairs: Vec<usize>,
}

impl ProductComplex {
    pub fn new(left: &ParityComplex, right: &ParityComplex) -> Result<Self> {
        let complex = product(left, right)?;
        let mut pairs = Vec::with_capacity(left.len() * right.len());
        for x in 0..left.len() {
            for a in 0..right.len() {
                pairs.push(complex.lookup(&pair_id(left.id(x), right.id(a)))?);
            }
        }
        Ok(ProductComplex { left: left.clone(), right: right.clone(), complex, pairs })
    }

    /// Position of `(x|a)` in the product complex.
    pub fn pair(&self, x: usize, a: usize) -> usize {
        self.pairs[x * self.right.len() + a]
    }

    /// `χ(u, v)_n = ∪_{r+s=n} χ(u)_r × χ^r(v)_s`, where `χ` is the minus or
    /// plus side and `χ^r` swaps sides for odd `r`. With two atoms this is the
    /// atom of the pair; for general cells it is their tensor product.
    pub fn tensor_cell(&self, u: &FreeCell, v: &FreeCell) -> FreeCell {
        let side = |sign: Sign| {
            let mut out = self.complex.empty_set();
            let us = if sign == Sign::Minus { &u.m } else { &u.p };
            for x in us.ones() {
                let r = self.left.elem_dim(x);
                let vs = if sign.by_parity(r) == Sign::Minus { &v.m } else { &v.p };
                for a in vs.ones() {
                    out.insert(self.pair(x, a));
                }
            }
            out
        };
        FreeCell { m: side(Sign::Minus), p: side(Sign::Plus) }
    }

    /// `⟨(x|a)⟩` through the `χ`-formula.
    pub fn product_atom(&self, x: usize, a: usize) -> FreeCell {
        self.tensor_cell(&atom(&self.left, x), &atom(&self.right, a))
    }
}

/// All cells generated by the atoms of dimension at most `dim_bound` under
/// sources, targets and composition, sorted by `(dim, M, P)`.
///
/// Fails with [`Error::CapacityExceeded`] once more than `cap` cells exist.
pub fn enumerate_cells(c: &ParityComplex, dim_bound: usize, cap: usize) -> Result<Vec<FreeCell>> {
    let mut seen: HashSet<FreeCell> = HashSet::new();
    let mut cells: Vec<(FreeCell, usize)> = Vec::new();
    // (k, s_k b) -> cells b of dimension > k; (k, t_k a) -> cells a likewise
    let mut by_src: HashMap<(usize, FreeCell), Vec<usize>> = HashMap::new();
    let mut by_tgt: HashMap<(usize, FreeCell), Vec<usize>> = HashMap::new();
    let mut work: Vec<FreeCell> = Vec::new();

    let push = |cell: FreeCell, seen: &mut HashSet<FreeCell>, work: &mut Vec<FreeCell>| -> Result<()> {
        if seen.insert(cell.clone()) {
            if seen.len() > cap {
                return Err(Error::CapacityExceeded(cap));
            }
            work.push(cell);
        }
        Ok(())
    };
    for x in 0..c.len() {
        if c.elem_dim(x) <= dim_bound {
            push(atom(c, x), &mut seen, &mut work)?;
        }
    }
    while let Some(cell) = work.pop() {
        let d = cell_dim(c, &cell);
        let idx = cells.len();
        cells.push((cell.clone(), d));
        let mut found = Vec::new();
        for k in 0..d {
            let s = source(c, &cell, k);
            let t = target(c, &cell, k);
            by_src.entry((k, s.clone())).or_default().push(idx);
            by_tgt.entry((k, t.clone())).or_default().push(idx);
            if let Some(after) = by_src.get(&(k, t.clone())) {
                for &b in after {
                    found.push(compose_unchecked(c, &cell, &cells[b].0, k));
                }
            }
            if let Some(before) = by_tgt.get(&(k, s.clone())) {
                for &a in before {
                    found.push(compose_unchecked(c, &cells[a].0, &cell, k));
                }
            }
            found.push(s);
            found.push(t);
        }
        for f in found {
            push(f, &mut seen, &mut work)?;
        }
    }
    let mut out: Vec<(usize, Vec<usize>, Vec<usize>, FreeCell)> = cells
        .into_iter()
        .map(|(cell, d)| (d, cell.m.ones().collect(), cell.p.ones().collect(), cell))
        .collect();
    out.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
    Ok(out.into_iter().map(|t| t.3).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{glob, interval, simplex};

    fn cell(c: &ParityComplex, m: &[&str], p: &[&str]) -> FreeCell {
        FreeCell::from_ids(c, m.iter().copied(), p.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_atom() {
        let s = simplex(2);
        let a = atom_by_id(&s, "012").unwrap();
        assert_eq!(a, cell(&s, &["0", "02", "012"], &["2", "01", "12", "012"]));
        assert!(is_cell(&s, &a));
        assert_eq!(cell_dim(&s, &a), 2);
        assert_eq!(source(&s, &a, 1), cell(&s, &["0", "02"], &["2", "02"]));
        assert_eq!(source(&s, &a, 1), atom_by_id(&s, "02").unwrap());
        assert_eq!(target(&s, &a, 1), cell(&s, &["0", "01", "12"], &["2", "01", "12"]));
        assert_eq!(source(&s, &a, 2), a);
        assert_eq!(source(&s, &a, 5), a);
    }

    #[test]
    fn edge_composite_is_triangle_target() {
        let s = simplex(2);
        let e01 = atom_by_id(&s, "01").unwrap();
        let e12 = atom_by_id(&s, "12").unwrap();
        let comp = compose(&s, &e01, &e12, 0).unwrap();
        assert_eq!(comp, cell(&s, &["0", "01", "12"], &["2", "01", "12"]));
        let tri = atom_by_id(&s, "012").unwrap();
        assert_eq!(comp, target(&s, &tri, 1));
        assert_eq!(cell_dim(&s, &e01), 1);
    }

    #[test]
    fn composing_with_an_identity_changes_nothing() {
        let s = simplex(2);
        let tri = atom_by_id(&s, "012").unwrap();
        for k in 0..2 {
            let t = target(&s, &tri, k);
            assert_eq!(compose(&s, &tri, &t, k).unwrap(), tri);
            let src = source(&s, &tri, k);
            assert_eq!(compose(&s, &src, &tri, k).unwrap(), tri);
        }
    }

    #[test]
    fn incomposable_edges_are_rejected() {
        let s = simplex(3);
        let e01 = atom_by_id(&s, "01").unwrap();
        let t013 = atom_by_id(&s, "013").unwrap();
        assert!(matches!(compose(&s, &e01, &t013, 0), Err(Error::NotComposable { k: 0, .. })));
    }

    #[test]
    fn small_cells() {
        let s1 = simplex(1);
        let v = cell(&s1, &["0"], &["0"]);
        assert!(is_cell(&s1, &v));
        assert_eq!(cell_dim(&s1, &v), 0);
        let bad = cell(&s1, &["0"], &["1"]);
        assert!(cell_violations(&s1, &bad).contains(&CellViolation::Equation { which: 0 }));
    }

    #[test]
    fn glob_atom() {
        let g = glob(2);
        assert_eq!(
            atom_by_id(&g, "2").unwrap(),
            cell(&g, &["(-,0)", "(-,1)", "2"], &["(+,0)", "(+,1)", "2"])
        );
    }

    #[test]
    fn square_atom_through_chi() {
        let i = interval();
        let pc = ProductComplex::new(&i, &i).unwrap();
        let e = i.lookup("e").unwrap();
        let sq = pc.product_atom(e, e);
        let c = &pc.complex;
        assert_eq!(sq, cell(c, &["(0|0)", "(0|e)", "(e|1)", "(e|e)"], &["(1|1)", "(1|e)", "(e|0)", "(e|e)"]));
        assert_eq!(sq, atom_by_id(c, "(e|e)").unwrap());
    }

    #[test]
    fn cell_counts() {
        let cells = enumerate_cells(&simplex(2), 2, 1000).unwrap();
        assert_eq!(cells.len(), 8);
        let dims: Vec<usize> = cells.iter().map(|x| cell_dim(&simplex(2), x)).collect();
        assert_eq!(dims, [0, 0, 0, 1, 1, 1, 1, 2]);
        assert_eq!(enumerate_cells(&simplex(1), 1, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_cells(&glob(1), 1, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_cells(&glob(2), 2, 1000).unwrap().len(), 5);
        assert!(matches!(enumerate_cells(&simplex(2), 2, 5), Err(Error::CapacityExceeded(5))));
    }
}
