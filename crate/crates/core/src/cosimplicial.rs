//! Truncated cosimplicial n-categories `E_0 ⇉ E_1 … E_top`.
//!
//! A level is either an explicit [`FiniteNCat`] or a power `X^L` of a base
//! category indexed by a finite label set. Powers are never materialized:
//! their cells are label-indexed families, structure is componentwise, and
//! the structure maps between powers are reindexings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncat::{CellSpec, CompSpec, FiniteNCat, StrictCat};
use crate::simplicial::SimplicialSet;

/// A cell of a [`Level`]: `[c]` for an explicit level, the family
/// `(c_l)_l` for a power.
pub type LCell = Vec<usize>;

#[derive(Clone, Debug)]
pub enum Level {
    Explicit(Arc<FiniteNCat>),
    Power { base: Arc<FiniteNCat>, labels: Vec<String> },
}

impl Level {
    pub fn explicit(a: FiniteNCat) -> Self {
        Level::Explicit(Arc::new(a))
    }

    pub fn base(&self) -> &FiniteNCat {
        match self {
            Level::Explicit(a) => a,
            Level::Power { base, .. } => base,
        }
    }

    pub fn is_power(&self) -> bool {
        matches!(self, Level::Power { .. })
    }

    /// Number of components of a cell.
    pub fn arity(&self) -> usize {
        match self {
            Level::Explicit(_) => 1,
            Level::Power { labels, .. } => labels.len(),
        }
    }

    /// `c` for explicit levels, `(c_1,…,c_n)` for powers.
    pub fn cell_id(&self, c: &[usize]) -> String {
        let b = self.base();
        match self {
            Level::Explicit(_) => b.id(c[0]).to_string(),
            Level::Power { .. } => {
                let parts: Vec<&str> = c.iter().map(|&x| b.id(x)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn parse_cell(&self, id: &str) -> Result<LCell> {
        let b = self.base();
        match self {
            Level::Explicit(_) => Ok(vec![b.lookup(id)?]),
            Level::Power { labels, .. } => {
                let inner = id
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::UnknownCell(id.to_string()))?;
                let parts: Vec<&str> = if labels.is_empty() { Vec::new() } else { inner.split(',').collect() };
                if parts.len() != labels.len() {
                    return Err(Error::UnknownCell(id.to_string()));
                }
                parts.into_iter().map(|p| b.lookup(p)).collect()
            }
        }
    }

    /// Number of cells; for powers this is `|X|^|L|` and may be large.
    pub fn cell_count(&self) -> u128 {
        (self.base().len() as u128).saturating_pow(self.arity() as u32)
    }

    /// The level as an explicit category, failing beyond `cap` cells.
    pub fn materialize(&self, cap: usize) -> Result<FiniteNCat> {
        if let Level::Explicit(a) = self {
            return Ok((**a).clone());
        }
        if self.cell_count() > cap as u128 {
            return Err(Error::CapacityExceeded(cap));
        }
        let b = self.base();
        let mut cells: Vec<LCell> = vec![Vec::new()];
        for _ in 0..self.arity() {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    (0..b.len()).map(move |x| {
                        let mut d = c.clone();
                        d.push(x);
                        d
                    })
                })
                .collect();
        }
        let specs = cells
            .iter()
            .map(|c| {
                let d = self.cell_dim(c);
                CellSpec {
                    id: self.cell_id(c),
                    dim: d,
                    src: (0..d).map(|k| self.cell_id(&StrictCat::src(self, c, k))).collect(),
                    tgt: (0..d).map(|k| self.cell_id(&StrictCat::tgt(self, c, k))).collect(),
                }
            })
            .collect();
        let mut comps = Vec::new();
        for k in 0..b.dim() {
            for x in cells.iter().filter(|c| self.cell_dim(c) > k) {
                for y in cells.iter().filter(|c| self.cell_dim(c) > k) {
                    if let Some(r) = StrictCat::compose(self, k, x, y) {
                        comps.push(CompSpec { k, a: self.cell_id(x), b: self.cell_id(y), r: self.cell_id(&r) });
                    }
                }
            }
        }
        FiniteNCat::new(b.dim(), specs, comps)
    }
}

fn product_of(lists: Vec<Vec<usize>>) -> Vec<LCell> {
    let mut out: Vec<LCell> = vec![Vec::new()];
    for l in lists {
        if l.is_empty() {
            return Vec::new();
        }
        out = out
            .into_iter()
            .flat_map(|c| {
                l.iter().map(move |&x| {
                    let mut d = c.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    out
}

impl StrictCat for Level {
    type Cell = LCell;

    fn dim(&self) -> usize {
        self.base().dim()
    }

    fn cell_dim(&self, c: &LCell) -> usize {
        c.iter().map(|&x| self.base().cell_dim(x)).max().unwrap_or(0)
    }

    fn src(&self, c: &LCell, k: usize) -> LCell {
        c.iter().map(|&x| self.base().src(x, k)).collect()
    }

    fn tgt(&self, c: &LCell, k: usize) -> LCell {
        c.iter().map(|&x| self.base().tgt(x, k)).collect()
    }

    fn compose(&self, k: usize, a: &LCell, b: &LCell) -> Option<LCell> {
        a.iter().zip(b).map(|(&x, &y)| self.base().compose(k, x, y)).collect()
    }

    fn parallel(&self, d: usize, s: &LCell, t: &LCell) -> Vec<LCell> {
        let b = self.base();
        if d == 0 {
            return product_of(vec![b.zero_cells().to_vec(); self.arity()]);
        }
        let lists: Vec<Vec<usize>> = s.iter().zip(t).map(|(&x, &y)| b.parallel(d, x, y)).collect();
        let mut out = product_of(lists);
        // keep the identity last, as for explicit categories
        if s == t {
            if let Some(pos) = out.iter().position(|c| c == s) {
                let id = out.remove(pos);
                out.push(id);
            }
        }
        out
    }

    fn zero_cells(&self) -> Vec<LCell> {
        self.parallel(0, &Vec::new(), &Vec::new())
    }
}

/// A structure map between levels: a cell table between explicit levels, or
/// a reindexing between powers with `(F·)_j = F_{idx[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelMap {
    Cells(Vec<usize>),
    Reindex(Vec<usize>),
}

impl LevelMap {
    pub fn apply(&self, c: &[usize]) -> LCell {
        match self {
            LevelMap::Cells(t) => vec![t[c[0]]],
            LevelMap::Reindex(idx) => idx.iter().map(|&j| c[j]).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &LevelMap) -> Option<LevelMap> {
        match (self, next) {
            (LevelMap::Cells(a), LevelMap::Cells(b)) => Some(LevelMap::Cells(a.iter().map(|&x| b[x]).collect())),
            (LevelMap::Reindex(a), LevelMap::Reindex(b)) => Some(LevelMap::Reindex(b.iter().map(|&l| a[l]).collect())),
            _ => None,
        }
    }

    fn identity_on(level: &Level) -> LevelMap {
        match level {
            Level::Explicit(a) => LevelMap::Cells((0..a.len()).collect()),
            Level::Power { labels, .. } => LevelMap::Reindex((0..labels.len()).collect()),
        }
    }
}

/// Levels `0..=top`; `cofaces[m][r]: E_m → E_{m+1}` for `r ≤ m+1` and
/// `codegens[m][r]: E_{m+1} → E_m` for `r ≤ m`, both for `m < top`.
#[derive(Clone, Debug)]
pub struct CosimplicialNCat {
    levels: Vec<Level>,
    cofaces: Vec<Vec<LevelMap>>,
    codegens: Vec<Vec<LevelMap>>,
}

impl CosimplicialNCat {
    pub fn new(levels: Vec<Level>, cofaces: Vec<Vec<LevelMap>>, codegens: Vec<Vec<LevelMap>>) -> Result<Self> {
        let top = levels.len().checked_sub(1).ok_or_else(|| Error::Malformed("no levels".into()))?;
        if cofaces.len() != top || codegens.len() != top {
            return Err(Error::Malformed(format!("expected {top} coface and codegeneracy groups")));
        }
        for m in 0..top {
            if cofaces[m].len() != m + 2 || codegens[m].len() != m + 1 {
                return Err(Error::Malformed(format!("wrong number of maps out of level {m}")));
            }
            for f in &cofaces[m] {
                check_shape(&levels[m], &levels[m + 1], f)?;
            }
            for s in &codegens[m] {
                check_shape(&levels[m + 1], &levels[m], s)?;
            }
        }
        Ok(CosimplicialNCat { levels, cofaces, codegens })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// The largest level dimension.
    pub fn dim(&self) -> usize {
        self.levels.iter().map(|l| l.dim()).max().unwrap_or(0)
    }

    pub fn level(&self, m: usize) -> &Level {
        &self.levels[m]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn coface_map(&self, m: usize, r: usize) -> &LevelMap {
        &self.cofaces[m][r]
    }

    pub fn codegen_map(&self, m: usize, r: usize) -> &LevelMap {
        &self.codegens[m][r]
    }

    /// `∂_r c` for a cell `c` of `E_m`.
    pub fn coface(&self, m: usize, r: usize, c: &[usize]) -> LCell {
        self.cofaces[m][r].apply(c)
    }

    /// `ι_r c` for a cell `c` of `E_{m+1}`.
    pub fn codegen(&self, m: usize, r: usize, c: &[usize]) -> LCell {
        self.codegens[m][r].apply(c)
    }

    /// The first `top + 1` levels.
    pub fn truncate(&self, top: usize) -> Result<CosimplicialNCat> {
        if top > self.top() {
            return Err(Error::Truncation { needed: top, have: self.top() });
        }
        CosimplicialNCat::new(
            self.levels[..=top].to_vec(),
            self.cofaces[..top].to_vec(),
            self.codegens[..top].to_vec(),
        )
    }

    /// Non-functorial maps and failed cosimplicial identities.
    pub fn violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for m in 0..self.top() {
            for (r, f) in self.cofaces[m].iter().enumerate() {
                if let Some(v) = functor_violation(&self.levels[m], &self.levels[m + 1], f) {
                    bad.push(format!("∂{r} out of level {m}: {v}"));
                }
            }
            for (r, s) in self.codegens[m].iter().enumerate() {
                if let Some(v) = functor_violation(&self.levels[m + 1], &self.levels[m], s) {
                    bad.push(format!("ι{r} into level {m}: {v}"));
                }
            }
        }
        let d = |m: usize, r: usize| &self.cofaces[m][r];
        let s = |m: usize, r: usize| &self.codegens[m][r];
        let same = |a: &LevelMap, b: &LevelMap, c: &LevelMap, e: &LevelMap| a.then(b) == c.then(e);
        let top = self.top();
        // ∂_j∂_i = ∂_i∂_{j−1} for i < j
        for m in 0..top.saturating_sub(1) {
            for j in 0..=m + 2 {
                for i in 0..j {
                    if !same(d(m, i), d(m + 1, j), d(m, j - 1), d(m + 1, i)) {
                        bad.push(format!("∂{j}∂{i} ≠ ∂{i}∂{} on level {m}", j - 1));
                    }
                }
            }
        }
        // ι_j∂_i, on level m
        for m in 0..top {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let lhs = d(m, i).then(s(m, j));
                    let rhs = if i == j || i == j + 1 {
                        Some(LevelMap::identity_on(&self.levels[m]))
                    } else if m == 0 {
                        continue;
                    } else if i < j {
                        s(m - 1, j - 1).then(d(m - 1, i))
                    } else {
                        s(m - 1, j).then(d(m - 1, i - 1))
                    };
                    if lhs != rhs {
                        bad.push(format!("ι{j}∂{i} on level {m}"));
                    }
                }
            }
        }
        // ι_jι_i = ι_iι_{j+1} for i ≤ j
        for m in 0..top.saturating_sub(1) {
            for j in 0..=m {
                for i in 0..=j {
                    if !same(s(m + 1, i), s(m, j), s(m + 1, j + 1), s(m, i)) {
                        bad.push(format!("ι{j}ι{i} ≠ ι{i}ι{} into level {m}", j + 1));
                    }
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

fn check_shape(from: &Level, to: &Level, f: &LevelMap) -> Result<()> {
    let ok = match (from, to, f) {
        (Level::Explicit(a), Level::Explicit(b), LevelMap::Cells(t)) => t.len() == a.len() && t.iter().all(|&x| x < b.len()),
        (Level::Power { base: a, labels: la }, Level::Power { base: b, labels: lb }, LevelMap::Reindex(idx)) => {
            (Arc::ptr_eq(a, b) || a == b) && idx.len() == lb.len() && idx.iter().all(|&j| j < la.len())
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Malformed("structure map does not fit its levels".into()))
    }
}

/// Reindexings are always functors; cell tables are checked exhaustively.
fn functor_violation(from: &Level, to: &Level, f: &LevelMap) -> Option<String> {
    let (Level::Explicit(a), Level::Explicit(b), LevelMap::Cells(t)) = (from, to, f) else { return None };
    for c in 0..a.len() {
        let d = a.cell_dim(c);
        if b.cell_dim(t[c]) > d {
            return Some(format!("{} raises dimension", a.id(c)));
        }
        for k in 0..d {
            if b.src(t[c], k) != t[a.src(c, k)] || b.tgt(t[c], k) != t[a.tgt(c, k)] {
                return Some(format!("{} loses its {k}-boundary", a.id(c)));
            }
        }
    }
    for (k, x, y, r) in a.comp_entries() {
        if b.compose(k, t[x], t[y]) != Some(t[r]) {
            return Some(format!("{} ∘{k} {} is not preserved", a.id(x), a.id(y)));
        }
    }
    None
}

/// `[R, X]`: level `m` is `X^{R_m}`, cofaces and codegeneracies reindex
/// along the faces and degeneracies of `R`.
pub fn cosimp_hom(r: &SimplicialSet, x: &FiniteNCat) -> Result<CosimplicialNCat> {
    let base = Arc::new(x.clone());
    let top = r.top();
    let levels = (0..=top).map(|m| Level::Power { base: base.clone(), labels: r.level(m).to_vec() }).collect();
    let cofaces = (0..top)
        .map(|m| (0..=m + 1).map(|i| LevelMap::Reindex((0..r.len(m + 1)).map(|y| r.face(m + 1, i, y)).collect())).collect())
        .collect();
    let codegens = (0..top)
        .map(|m| (0..=m).map(|i| LevelMap::Reindex((0..r.len(m)).map(|y| r.degen(m, i, y)).collect())).collect())
        .collect();
    CosimplicialNCat::new(levels, cofaces, codegens)
}

/// The constant diagram at `x` with levels `0..=top`.
pub fn constant(x: &FiniteNCat, top: usize) -> CosimplicialNCat {
    let level = Level::Explicit(Arc::new(x.clone()));
    let id = LevelMap::Cells((0..x.len()).collect());
    CosimplicialNCat::new(
        vec![level; top + 1],
        (0..top).map(|m| vec![id.clone(); m + 2]).collect(),
        (0..top).map(|m| vec![id.clone(); m + 1]).collect(),
    )
    .expect("constant diagram is well formed")
}
