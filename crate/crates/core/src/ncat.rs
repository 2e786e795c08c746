//! Explicitly tabulated finite strict n-categories.
//!
//! Identities are implicit, as for free cells: a `k`-cell is its own identity
//! in every dimension above `k`, so `src(c, j) = tgt(c, j) = c` for
//! `j ≥ dim c`, and composites with an identity argument are never stored.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::complex::ParityComplex;
use crate::error::{Error, Result};
use crate::freecat::{cell_dim, compose_unchecked, enumerate_cells, source, target, FreeCell};

/// The operations the functor and descent machinery needs from a strict
/// n-category, with implicit identities.
pub trait StrictCat {
    type Cell: Clone + Eq + Hash + fmt::Debug;

    fn dim(&self) -> usize;
    fn cell_dim(&self, c: &Self::Cell) -> usize;
    /// The `k`-source; `c` itself when `k ≥ cell_dim(c)`.
    fn src(&self, c: &Self::Cell, k: usize) -> Self::Cell;
    fn tgt(&self, c: &Self::Cell, k: usize) -> Self::Cell;
    /// `a ∘_k b` in diagrammatic order, `None` unless `tgt_k a = src_k b`.
    fn compose(&self, k: usize, a: &Self::Cell, b: &Self::Cell) -> Option<Self::Cell>;
    /// Cells `c` of dimension `d` with `src_{d−1} c = s` and `tgt_{d−1} c = t`,
    /// followed by `s` itself when `s = t`; for `d = 0`, all 0-cells.
    fn parallel(&self, d: usize, s: &Self::Cell, t: &Self::Cell) -> Vec<Self::Cell>;
    fn zero_cells(&self) -> Vec<Self::Cell>;

    fn boundary(&self, c: &Self::Cell, k: usize, target: bool) -> Self::Cell {
        if target {
            self.tgt(c, k)
        } else {
            self.src(c, k)
        }
    }
}

/// Input record for one cell of a [`FiniteNCat`]; `src[k]` and `tgt[k]` are
/// the `k`-dimensional boundaries for `k < dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSpec {
    pub id: String,
    pub dim: usize,
    pub src: Vec<String>,
    pub tgt: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompSpec {
    pub k: usize,
    pub a: String,
    pub b: String,
    pub r: String,
}

#[derive(Clone, Debug)]
pub struct FiniteNCat {
    dim: usize,
    ids: Vec<String>,
    dims: Vec<usize>,
    index: HashMap<String, usize>,
    src: Vec<Vec<usize>>,
    tgt: Vec<Vec<usize>>,
    comp: HashMap<(usize, usize, usize), usize>,
    parallel: HashMap<(usize, usize, usize), Vec<usize>>,
    zero_cells: Vec<usize>,
}

impl PartialEq for FiniteNCat {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.cell_specs() == other.cell_specs() && self.comp_specs() == other.comp_specs()
    }
}

impl Eq for FiniteNCat {}

impl FiniteNCat {
    /// Builds a category from cell and composition records. Cells are sorted
    /// by `(dim, id)`. Only structural problems are rejected; the laws are
    /// checked by [`validate_cat`].
    pub fn new(dim: usize, mut cells: Vec<CellSpec>, comps: Vec<CompSpec>) -> Result<Self> {
        cells.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut index = HashMap::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(c.id.clone()));
            }
            if c.dim > dim {
                return Err(Error::Malformed(format!("cell `{}` has dimension {} > {dim}", c.id, c.dim)));
            }
            if c.src.len() != c.dim || c.tgt.len() != c.dim {
                return Err(Error::Malformed(format!(
                    "cell `{}` of dimension {} needs {} sources and targets",
                    c.id, c.dim, c.dim
                )));
            }
        }
        let look = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownCell(id.to_string()));
        let mut src = Vec::with_capacity(cells.len());
        let mut tgt = Vec::with_capacity(cells.len());
        let dims: Vec<usize> = cells.iter().map(|c| c.dim).collect();
        for c in &cells {
            let s: Vec<usize> = c.src.iter().map(|x| look(x)).collect::<Result<_>>()?;
            let t: Vec<usize> = c.tgt.iter().map(|x| look(x)).collect::<Result<_>>()?;
            for (k, (&a, &b)) in s.iter().zip(&t).enumerate() {
                if dims[a] > k || dims[b] > k {
                    return Err(Error::Malformed(format!(
                        "the {k}-boundary of `{}` has dimension above {k}",
                        c.id
                    )));
                }
            }
            src.push(s);
            tgt.push(t);
        }
        let mut comp = HashMap::with_capacity(comps.len());
        for c in &comps {
            let key = (c.k, look(&c.a)?, look(&c.b)?);
            let r = look(&c.r)?;
            if let Some(old) = comp.insert(key, r) {
                if old != r {
                    return Err(Error::Malformed(format!(
                        "two results for {} ∘{} {}",
                        c.a, c.k, c.b
                    )));
                }
            }
        }
        let ids: Vec<String> = cells.into_iter().map(|c| c.id).collect();
        let mut parallel: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
        let mut zero_cells = Vec::new();
        for i in 0..ids.len() {
            let d = dims[i];
            if d == 0 {
                zero_cells.push(i);
            } else {
                parallel.entry((d, src[i][d - 1], tgt[i][d - 1])).or_default().push(i);
            }
        }
        Ok(FiniteNCat { dim, ids, dims, index, src, tgt, comp, parallel, zero_cells })
    }

    /// The discrete category on the given objects.
    pub fn discrete<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Self {
        let cells = ids
            .into_iter()
            .map(|id| CellSpec { id: id.into(), dim: 0, src: vec![], tgt: vec![] })
            .collect();
        FiniteNCat::new(0, cells, vec![]).expect("discrete category is well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, c: usize) -> &str {
        &self.ids[c]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn cell_dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&c| self.dims[c] == k)
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.dims.iter().filter(|&&d| d == k).count()
    }

    pub fn zero_cells(&self) -> &[usize] {
        &self.zero_cells
    }

    pub fn src(&self, c: usize, k: usize) -> usize {
        if k >= self.dims[c] {
            c
        } else {
            self.src[c][k]
        }
    }

    pub fn tgt(&self, c: usize, k: usize) -> usize {
        if k >= self.dims[c] {
            c
        } else {
            self.tgt[c][k]
        }
    }

    /// The stored composite, ignoring implicit identities.
    pub fn stored(&self, k: usize, a: usize, b: usize) -> Option<usize> {
        self.comp.get(&(k, a, b)).copied()
    }

    pub fn compose(&self, k: usize, a: usize, b: usize) -> Option<usize> {
        if self.tgt(a, k) != self.src(b, k) {
            return None;
        }
        if self.dims[a] <= k {
            return Some(b);
        }
        if self.dims[b] <= k {
            return Some(a);
        }
        self.stored(k, a, b)
    }

    pub fn parallel(&self, d: usize, s: usize, t: usize) -> Vec<usize> {
        if d == 0 {
            return self.zero_cells.clone();
        }
        let mut out = self.parallel.get(&(d, s, t)).cloned().unwrap_or_default();
        if s == t {
            out.push(s);
        }
        out
    }

    /// Stored compositions `(k, a, b, r)` in sorted order.
    pub fn comp_entries(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut v: Vec<_> = self.comp.iter().map(|(&(k, a, b), &r)| (k, a, b, r)).collect();
        v.sort_unstable();
        v
    }

    pub fn cell_specs(&self) -> Vec<CellSpec> {
        (0..self.len())
            .map(|c| CellSpec {
                id: self.ids[c].clone(),
                dim: self.dims[c],
                src: self.src[c].iter().map(|&x| self.ids[x].clone()).collect(),
                tgt: self.tgt[c].iter().map(|&x| self.ids[x].clone()).collect(),
            })
            .collect()
    }

    /// Composition records sorted by `(k, a, b)` ids.
    pub fn comp_specs(&self) -> Vec<CompSpec> {
        let mut v: Vec<CompSpec> = self
            .comp
            .iter()
            .map(|(&(k, a, b), &r)| CompSpec {
                k,
                a: self.ids[a].clone(),
                b: self.ids[b].clone(),
                r: self.ids[r].clone(),
            })
            .collect();
        v.sort();
        v
    }

    /// For each `k < dim`, the cells grouped by their `k`-source, over all
    /// cells (an identity `x` with `dim x ≤ k` is grouped under itself).
    fn after_index(&self) -> Vec<HashMap<usize, Vec<usize>>> {
        let mut after = vec![HashMap::<usize, Vec<usize>>::new(); self.dim];
        for (k, map) in after.iter_mut().enumerate() {
            for c in 0..self.len() {
                map.entry(self.src(c, k)).or_default().push(c);
            }
        }
        after
    }
}

impl StrictCat for FiniteNCat {
    type Cell = usize;

    fn dim(&self) -> usize {
        self.dim
    }

    fn cell_dim(&self, c: &usize) -> usize {
        self.dims[*c]
    }

    fn src(&self, c: &usize, k: usize) -> usize {
        FiniteNCat::src(self, *c, k)
    }

    fn tgt(&self, c: &usize, k: usize) -> usize {
        FiniteNCat::tgt(self, *c, k)
    }

    fn compose(&self, k: usize, a: &usize, b: &usize) -> Option<usize> {
        FiniteNCat::compose(self, k, *a, *b)
    }

    fn parallel(&self, d: usize, s: &usize, t: &usize) -> Vec<usize> {
        FiniteNCat::parallel(self, d, *s, *t)
    }

    fn zero_cells(&self) -> Vec<usize> {
        self.zero_cells.clone()
    }
}

/// A law violation found by [`validate_cat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatViolation {
    Globularity { cell: String, j: usize, k: usize },
    MissingComposite { k: usize, a: String, b: String },
    SpuriousComposite { k: usize, a: String, b: String },
    CompositeBoundary { k: usize, a: String, b: String, r: String },
    Associativity { k: usize, a: String, b: String, c: String },
    Interchange { j: usize, k: usize, cells: [String; 4] },
}

impl fmt::Display for CatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatViolation::Globularity { cell, j, k } => {
                write!(f, "{cell}: {j}-boundaries of its {k}-boundaries disagree")
            }
            CatViolation::MissingComposite { k, a, b } => write!(f, "{a} ∘{k} {b} is not defined"),
            CatViolation::SpuriousComposite { k, a, b } => {
                write!(f, "{a} ∘{k} {b} is stored but the cells are not {k}-composable")
            }
            CatViolation::CompositeBoundary { k, a, b, r } => {
                write!(f, "{a} ∘{k} {b} = {r} has the wrong boundary")
            }
            CatViolation::Associativity { k, a, b, c } => {
                write!(f, "∘{k} is not associative on ({a}, {b}, {c})")
            }
            CatViolation::Interchange { j, k, cells: [a, b, c, d] } => {
                write!(f, "interchange of ∘{j} and ∘{k} fails on ({a}, {b}, {c}, {d})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatReport {
    pub violations: Vec<CatViolation>,
}

impl CatReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Exhaustive check of globularity, closure of composition, boundaries of
/// composites, associativity and interchange. Unit laws hold by construction
/// because identities are implicit; interchange is checked with identity
/// arguments included, which covers whiskering.
pub fn validate_cat(a: &FiniteNCat) -> CatReport {
    let mut out = Vec::new();
    let id = |c: usize| a.id(c).to_string();
    for c in 0..a.len() {
        let d = a.cell_dim(c);
        'glob: for k in 0..d {
            for j in 0..k {
                let (s, t) = (a.src(c, k), a.tgt(c, k));
                if a.src(s, j) != a.src(c, j)
                    || a.src(t, j) != a.src(c, j)
                    || a.tgt(s, j) != a.tgt(c, j)
                    || a.tgt(t, j) != a.tgt(c, j)
                {
                    out.push(CatViolation::Globularity { cell: id(c), j, k });
                    break 'glob;
                }
            }
        }
    }
    let after = a.after_index();
    for (&(k, x, y), &r) in &a.comp {
        if a.tgt(x, k) != a.src(y, k) || a.cell_dim(x) <= k || a.cell_dim(y) <= k {
            out.push(CatViolation::SpuriousComposite { k, a: id(x), b: id(y) });
            continue;
        }
        let mut ok = a.src(r, k) == a.src(x, k) && a.tgt(r, k) == a.tgt(y, k);
        ok &= a.cell_dim(r) <= a.cell_dim(x).max(a.cell_dim(y));
        for i in 0..k {
            ok &= a.src(r, i) == a.src(x, i) && a.tgt(r, i) == a.tgt(x, i);
        }
        for i in (k + 1)..a.dim() {
            ok &= a.compose(k, a.src(x, i), a.src(y, i)) == Some(a.src(r, i));
            ok &= a.compose(k, a.tgt(x, i), a.tgt(y, i)) == Some(a.tgt(r, i));
        }
        if !ok {
            out.push(CatViolation::CompositeBoundary { k, a: id(x), b: id(y), r: id(r) });
        }
    }
    for k in 0..a.dim() {
        for x in 0..a.len() {
            if a.cell_dim(x) <= k {
                continue;
            }
            let Some(next) = after[k].get(&a.tgt(x, k)) else { continue };
            for &y in next {
                if a.cell_dim(y) > k && a.stored(k, x, y).is_none() {
                    out.push(CatViolation::MissingComposite { k, a: id(x), b: id(y) });
                }
            }
        }
    }
    if out.iter().any(|v| matches!(v, CatViolation::MissingComposite { .. })) {
        // associativity and interchange are meaningless without closure
        return CatReport { violations: out };
    }
    for k in 0..a.dim() {
        for x in 0..a.len() {
            if a.cell_dim(x) <= k {
                continue;
            }
            for &y in after[k].get(&a.tgt(x, k)).into_iter().flatten() {
                if a.cell_dim(y) <= k {
                    continue;
                }
                let xy = a.compose(k, x, y).expect("closure checked");
                for &z in after[k].get(&a.tgt(y, k)).into_iter().flatten() {
                    if a.cell_dim(z) <= k {
                        continue;
                    }
                    let yz = a.compose(k, y, z).expect("closure checked");
                    if a.compose(k, xy, z) != a.compose(k, x, yz) {
                        out.push(CatViolation::Associativity { k, a: id(x), b: id(y), c: id(z) });
                    }
                }
            }
        }
    }
    for k in 1..a.dim() {
        for j in 0..k {
            for x in 0..a.len() {
                let xs = &after[j][&a.tgt(x, j)];
                let bs = &after[k][&a.tgt(x, k)];
                for &c in xs {
                    let Some(ds) = after[k].get(&a.tgt(c, k)) else { continue };
                    for &b in bs {
                        let Some(ab) = a.compose(k, x, b) else { continue };
                        for &d in ds {
                            let Some(cd) = a.compose(k, c, d) else { continue };
                            let lhs = a.compose(j, ab, cd);
                            let ac = a.compose(j, x, c);
                            let bd = a.compose(j, b, d);
                            let rhs = ac.zip(bd).and_then(|(ac, bd)| a.compose(k, ac, bd));
                            if lhs.is_none() || lhs != rhs {
                                out.push(CatViolation::Interchange {
                                    j,
                                    k,
                                    cells: [id(x), id(b), id(c), id(d)],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    CatReport { violations: out }
}

/// Id of a free cell in a snapshot: the element id for atoms, the
/// `({M},{P})` listing otherwise.
pub fn free_cell_id(c: &ParityComplex, cell: &FreeCell) -> String {
    let d = cell_dim(c, cell);
    let top = c.slice(&cell.m, d);
    if top.count_ones(..) == 1 {
        let x = top.ones().next().expect("nonempty");
        if crate::freecat::atom(c, x) == *cell {
            return c.id(x).to_string();
        }
    }
    cell.display(c).to_string()
}

/// The free n-category on `c`, truncated at `dim_bound`, as explicit tables.
pub fn free_snapshot(c: &ParityComplex, dim_bound: usize, cap: usize) -> Result<FiniteNCat> {
    let cells = enumerate_cells(c, dim_bound, cap)?;
    let index: HashMap<&FreeCell, usize> = cells.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let ids: Vec<String> = cells.iter().map(|x| free_cell_id(c, x)).collect();
    let dims: Vec<usize> = cells.iter().map(|x| cell_dim(c, x)).collect();
    let top = dims.iter().copied().max().unwrap_or(0);
    let mut specs = Vec::with_capacity(cells.len());
    for (i, x) in cells.iter().enumerate() {
        let bd = |f: fn(&ParityComplex, &FreeCell, usize) -> FreeCell| -> Vec<String> {
            (0..dims[i]).map(|k| ids[index[&f(c, x, k)]].clone()).collect()
        };
        specs.push(CellSpec { id: ids[i].clone(), dim: dims[i], src: bd(source), tgt: bd(target) });
    }
    let mut comps = Vec::new();
    for k in 0..top {
        let mut by_src: HashMap<FreeCell, Vec<usize>> = HashMap::new();
        for (i, x) in cells.iter().enumerate() {
            if dims[i] > k {
                by_src.entry(source(c, x, k)).or_default().push(i);
            }
        }
        for (i, x) in cells.iter().enumerate() {
            if dims[i] <= k {
                continue;
            }
            for &j in by_src.get(&target(c, x, k)).into_iter().flatten() {
                let r = compose_unchecked(c, x, &cells[j], k);
                let r = *index.get(&r).ok_or_else(|| Error::Malformed("composite outside enumeration".into()))?;
                comps.push(CompSpec { k, a: ids[i].clone(), b: ids[j].clone(), r: ids[r].clone() });
            }
        }
    }
    FiniteNCat::new(top, specs, comps)
}

/// Ids of the `k`-cells, sorted.
pub fn ids_of_dim(a: &FiniteNCat, k: usize) -> BTreeSet<String> {
    a.cells_of_dim(k).map(|c| a.id(c).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{glob, point, simplex};

    pub(crate) fn spec(id: &str, src: &[&str], tgt: &[&str]) -> CellSpec {
        CellSpec {
            id: id.into(),
            dim: src.len(),
            src: src.iter().map(|s| s.to_string()).collect(),
            tgt: tgt.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn comp(k: usize, a: &str, b: &str, r: &str) -> CompSpec {
        CompSpec { k, a: a.into(), b: b.into(), r: r.into() }
    }

    #[test]
    fn snapshots() {
        let s2 = free_snapshot(&simplex(2), 2, 1000).unwrap();
        assert_eq!(s2.len(), 8);
        assert!(validate_cat(&s2).is_ok());
        assert_eq!(free_snapshot(&point(), 0, 10).unwrap().len(), 1);
        let g2 = free_snapshot(&glob(2), 2, 1000).unwrap();
        assert_eq!(g2.len(), 5);
        assert!(validate_cat(&g2).is_ok());
        let s3 = free_snapshot(&simplex(3), 3, 100_000).unwrap();
        assert!(validate_cat(&s3).is_ok(), "{}", validate_cat(&s3));
    }

    #[test]
    fn discrete_is_lawful() {
        let d = FiniteNCat::discrete(["a", "b", "c"]);
        assert!(validate_cat(&d).is_ok());
        assert_eq!(d.parallel(0, 0, 0).len(), 3);
    }

    #[test]
    fn broken_associativity_is_named() {
        // one object, arrows x and y with xx = x, xy = y, yx = x, yy = x
        let cells = vec![spec("o", &[], &[]), spec("x", &["o"], &["o"]), spec("y", &["o"], &["o"])];
        let comps = vec![
            comp(0, "x", "x", "x"),
            comp(0, "x", "y", "y"),
            comp(0, "y", "x", "x"),
            comp(0, "y", "y", "x"),
        ];
        let a = FiniteNCat::new(1, cells, comps).unwrap();
        let report = validate_cat(&a);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, CatViolation::Associativity { a, b, c, .. } if a == "y" && b == "x" && c == "y")));
    }

    #[test]
    fn missing_composite_reported() {
        let cells = vec![
            spec("a", &[], &[]),
            spec("b", &[], &[]),
            spec("c", &[], &[]),
            spec("f", &["a"], &["b"]),
            spec("g", &["b"], &["c"]),
        ];
        let a = FiniteNCat::new(1, cells, vec![]).unwrap();
        assert!(matches!(validate_cat(&a).violations[0], CatViolation::MissingComposite { .. }));
    }

    #[test]
    fn implicit_identities() {
        let cells = vec![spec("a", &[], &[]), spec("b", &[], &[]), spec("f", &["a"], &["b"])];
        let a = FiniteNCat::new(1, cells, vec![]).unwrap();
        let (oa, ob, f) = (a.lookup("a").unwrap(), a.lookup("b").unwrap(), a.lookup("f").unwrap());
        assert_eq!(a.compose(0, oa, f), Some(f));
        assert_eq!(a.compose(0, f, ob), Some(f));
        assert_eq!(a.compose(0, ob, f), None);
        assert_eq!(a.parallel(1, oa, ob), vec![f]);
        assert_eq!(a.parallel(1, oa, oa), vec![oa]);
        assert_eq!(a.src(f, 3), f);
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            FiniteNCat::new(1, vec![spec("f", &["a"], &["b"])], vec![]),
            Err(Error::UnknownCell(_))
        ));
        assert!(matches!(
            FiniteNCat::new(0, vec![spec("a", &[], &[]), spec("a", &[], &[])], vec![]),
            Err(Error::DuplicateId(_))
        ));
    }
}
