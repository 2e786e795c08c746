//! Descent for truncated cosimplicial n-categories: the explicit
//! constructions in dimensions one and two, the general construction through
//! `O(G^k × Δ^m)`, and comparison between them.
//!
//! Cell ids are built from components: `{c_1;…;c_r}` for the components in
//! the levels of the diagram, followed by `[s->t]` with the ids of the
//! boundary cells in positive dimension. Both constructions use the same
//! component order, so their cells can be matched by id.

mod explicit;
mod general;

use std::collections::HashMap;

pub use explicit::{desc1, desc2};
pub use general::{desc_general, glob_pasting, GeneralDescent};

use crate::error::{Error, Result};
use crate::ncat::{CellSpec, CompSpec, FiniteNCat};

/// Cells with boundaries, accumulated before the composition table is known.
#[derive(Default)]
pub(crate) struct Draft {
    ids: Vec<String>,
    dims: Vec<usize>,
    src: Vec<Vec<usize>>,
    tgt: Vec<Vec<usize>>,
}

impl Draft {
    pub(crate) fn len(&self) -> usize {
        self.ids.len()
    }

    pub(crate) fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub(crate) fn src(&self, c: usize, k: usize) -> usize {
        if k >= self.dims[c] {
            c
        } else {
            self.src[c][k]
        }
    }

    pub(crate) fn tgt(&self, c: usize, k: usize) -> usize {
        if k >= self.dims[c] {
            c
        } else {
            self.tgt[c][k]
        }
    }

    /// Adds a cell of dimension `dim` with `(dim−1)`-boundaries `s` and `t`.
    pub(crate) fn add(&mut self, own: &[String], dim: usize, s: usize, t: usize) -> usize {
        let mut id = format!("{{{}}}", own.join(";"));
        let (mut ss, mut ts) = (Vec::new(), Vec::new());
        if dim > 0 {
            id = format!("{id}[{}->{}]", self.ids[s], self.ids[t]);
            ss = (0..dim - 1).map(|k| self.src(s, k)).collect();
            ss.push(s);
            ts = (0..dim - 1).map(|k| self.tgt(t, k)).collect();
            ts.push(t);
        }
        self.ids.push(id);
        self.dims.push(dim);
        self.src.push(ss);
        self.tgt.push(ts);
        self.ids.len() - 1
    }

    /// Builds the category, asking `compose` for every composable pair of
    /// cells above the composition dimension.
    pub(crate) fn finish(
        self,
        dim: usize,
        mut compose: impl FnMut(&Draft, usize, usize, usize) -> Result<usize>,
    ) -> Result<FiniteNCat> {
        let mut comps = Vec::new();
        for k in 0..dim {
            let mut by_src: HashMap<usize, Vec<usize>> = HashMap::new();
            for c in (0..self.len()).filter(|&c| self.dims[c] > k) {
                by_src.entry(self.src(c, k)).or_default().push(c);
            }
            for a in (0..self.len()).filter(|&c| self.dims[c] > k) {
                for &b in by_src.get(&self.tgt(a, k)).into_iter().flatten() {
                    let r = compose(&self, k, a, b)?;
                    comps.push(CompSpec { k, a: self.ids[a].clone(), b: self.ids[b].clone(), r: self.ids[r].clone() });
                }
            }
        }
        self.into_cat(dim, comps)
    }

    /// The cells with boundaries only.
    pub(crate) fn into_cat(self, dim: usize, comps: Vec<CompSpec>) -> Result<FiniteNCat> {
        let specs = (0..self.len())
            .map(|c| CellSpec {
                id: self.ids[c].clone(),
                dim: self.dims[c],
                src: self.src[c].iter().map(|&x| self.ids[x].clone()).collect(),
                tgt: self.tgt[c].iter().map(|&x| self.ids[x].clone()).collect(),
            })
            .collect();
        FiniteNCat::new(dim, specs, comps)
    }
}

pub(crate) fn missing(what: &str) -> Error {
    Error::InvalidCategory(format!("descent: {what}"))
}

/// The bijection `a → b` matching cells by id, if it is an isomorphism of
/// n-categories: equal dimensions, boundaries and composition tables. With
/// `check_comps = false` only cells and boundaries are compared.
pub fn isomorphism_by_ids(a: &FiniteNCat, b: &FiniteNCat, check_comps: bool) -> std::result::Result<Vec<usize>, String> {
    if a.len() != b.len() {
        return Err(format!("{} cells against {}", a.len(), b.len()));
    }
    let mut map = Vec::with_capacity(a.len());
    for c in 0..a.len() {
        let d = b.lookup(a.id(c)).map_err(|_| format!("no counterpart for {}", a.id(c)))?;
        if a.cell_dim(c) != b.cell_dim(d) {
            return Err(format!("dimension differs at {}", a.id(c)));
        }
        map.push(d);
    }
    for c in 0..a.len() {
        for k in 0..a.cell_dim(c) {
            if map[a.src(c, k)] != b.src(map[c], k) || map[a.tgt(c, k)] != b.tgt(map[c], k) {
                return Err(format!("{k}-boundary differs at {}", a.id(c)));
            }
        }
    }
    if check_comps {
        let (ea, eb) = (a.comp_entries(), b.comp_entries());
        if ea.len() != eb.len() {
            return Err(format!("{} composites against {}", ea.len(), eb.len()));
        }
        for (k, x, y, r) in ea {
            if b.compose(k, map[x], map[y]) != Some(map[r]) {
                return Err(format!("{} ∘{k} {} differs", a.id(x), a.id(y)));
            }
        }
    }
    Ok(map)
}
