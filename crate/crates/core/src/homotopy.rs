//! Equivalences, connected components and homotopy groups of finite strict
//! n-categories.
//!
//! A cell `f: s → t` of dimension `m` is an equivalence when some
//! `g: t → s` admits equivalences `f ∘ g → s` and `g ∘ f → t` one dimension
//! up. Cells above the top dimension are identities, so at the top this is
//! strict invertibility.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::ncat::{CellSpec, CompSpec, FiniteNCat};

/// Memoized equivalence test.
pub struct Equivalences<'a> {
    cat: &'a FiniteNCat,
    memo: HashMap<usize, bool>,
}

impl<'a> Equivalences<'a> {
    pub fn new(cat: &'a FiniteNCat) -> Self {
        Equivalences { cat, memo: HashMap::new() }
    }

    /// Whether `f`, seen as an `m`-cell, is an equivalence. Cells of lower
    /// dimension are identities and always are.
    pub fn is_m_equivalence(&mut self, f: usize, m: usize) -> bool {
        let d = self.cat.cell_dim(f);
        if d < m || d == 0 {
            return true;
        }
        self.is_equivalence(f)
    }

    /// [`Self::is_m_equivalence`] at the cell's own dimension.
    pub fn is_equivalence(&mut self, f: usize) -> bool {
        let a = self.cat;
        let m = a.cell_dim(f);
        if m == 0 {
            return true;
        }
        if let Some(&b) = self.memo.get(&f) {
            return b;
        }
        let (s, t) = (a.src(f, m - 1), a.tgt(f, m - 1));
        let mut found = false;
        for g in a.parallel(m, t, s) {
            let (Some(fg), Some(gf)) = (a.compose(m - 1, f, g), a.compose(m - 1, g, f)) else { continue };
            let left = a.parallel(m + 1, fg, s).into_iter().any(|x| self.is_m_equivalence(x, m + 1));
            if left && a.parallel(m + 1, gf, t).into_iter().any(|x| self.is_m_equivalence(x, m + 1)) {
                found = true;
                break;
            }
        }
        self.memo.insert(f, found);
        found
    }
}

pub fn is_m_equivalence(a: &FiniteNCat, f: usize, m: usize) -> bool {
    Equivalences::new(a).is_m_equivalence(f, m)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Classes of 0-cells joined by equivalence 1-cells, each sorted, listed by
/// smallest member.
pub fn pi0(a: &FiniteNCat) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..a.len()).collect();
    let mut eq = Equivalences::new(a);
    for f in a.cells_of_dim(1).collect::<Vec<_>>() {
        if eq.is_equivalence(f) {
            let (x, y) = (find(&mut parent, a.src(f, 0)), find(&mut parent, a.tgt(f, 0)));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in a.zero_cells() {
        let r = find(&mut parent, x);
        classes.entry(r).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

/// The `(n−1)`-category of equivalence endo-1-cells of `x` and all higher
/// cells between them, with dimensions shifted down by one. Cell ids are kept
/// and `x` itself becomes the identity object.
pub fn aut_eq(a: &FiniteNCat, x: usize) -> Result<FiniteNCat> {
    if a.cell_dim(x) != 0 {
        return Err(Error::NotZeroCell(a.id(x).to_string()));
    }
    if a.dim() == 0 {
        return Ok(FiniteNCat::discrete([a.id(x)]));
    }
    let mut eq = Equivalences::new(a);
    let mut keep = vec![false; a.len()];
    keep[x] = true;
    let mut cells = vec![CellSpec { id: a.id(x).to_string(), dim: 0, src: vec![], tgt: vec![] }];
    for c in 0..a.len() {
        let d = a.cell_dim(c);
        if d == 0 || a.src(c, 0) != x || a.tgt(c, 0) != x {
            continue;
        }
        if !(eq.is_equivalence(a.src(c, 1)) && eq.is_equivalence(a.tgt(c, 1))) {
            continue;
        }
        keep[c] = true;
        cells.push(CellSpec {
            id: a.id(c).to_string(),
            dim: d - 1,
            src: (1..d).map(|j| a.id(a.src(c, j)).to_string()).collect(),
            tgt: (1..d).map(|j| a.id(a.tgt(c, j)).to_string()).collect(),
        });
    }
    let comps = a
        .comp_entries()
        .into_iter()
        .filter(|&(k, l, r, _)| k >= 1 && keep[l] && keep[r])
        .map(|(k, l, r, res)| CompSpec { k: k - 1, a: a.id(l).into(), b: a.id(r).into(), r: a.id(res).into() })
        .collect();
    FiniteNCat::new(a.dim() - 1, cells, comps)
}

/// A finite group by its multiplication table; `elements` holds one
/// representative id per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub elements: Vec<String>,
    pub identity: usize,
    pub mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_group(&self) -> bool {
        let n = self.order();
        let e = self.identity;
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]]))
        });
        let unit = (0..n).all(|a| self.mul[e][a] == a && self.mul[a][e] == a);
        let inv = (0..n).all(|a| (0..n).any(|b| self.mul[a][b] == e && self.mul[b][a] == e));
        assoc && unit && inv
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

/// `π_k(A, x)` for `k ≥ 1`, computed as `π_0` of the iterated `AutEq`, with
/// the product induced by `∘_0` one level up.
pub fn homotopy_group(a: &FiniteNCat, x: usize, k: usize) -> Result<GroupTable> {
    if k == 0 {
        return Err(Error::Malformed("π_0 is a set; use pi0".into()));
    }
    if a.cell_dim(x) != 0 {
        return Err(Error::NotZeroCell(a.id(x).to_string()));
    }
    let mut b = a.clone();
    let mut base = x;
    for _ in 1..k {
        let next = aut_eq(&b, base)?;
        base = next.lookup(b.id(base))?;
        b = next;
    }
    let loops = aut_eq(&b, base)?;
    let classes = pi0(&loops);
    let mut class_of: HashMap<&str, usize> = HashMap::new();
    for (i, cls) in classes.iter().enumerate() {
        for &c in cls {
            class_of.insert(loops.id(c), i);
        }
    }
    let identity = class_of[b.id(base)];
    let mut mul = vec![vec![0; classes.len()]; classes.len()];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let (f, g) = (b.lookup(loops.id(ci[0]))?, b.lookup(loops.id(cj[0]))?);
            let fg = b.compose(0, f, g).ok_or_else(|| Error::InvalidCategory("loops are not composable".into()))?;
            mul[i][j] = *class_of.get(b.id(fg)).ok_or_else(|| Error::InvalidCategory("composite of equivalences is not one".into()))?;
        }
    }
    Ok(GroupTable {
        elements: classes.iter().map(|c| loops.id(c[0]).to_string()).collect(),
        identity,
        mul,
    })
}
