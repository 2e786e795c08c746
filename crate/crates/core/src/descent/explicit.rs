//! The descent category of a cosimplicial 1-category and the descent
//! 2-category of a cosimplicial 2-category, written out cell by cell.
//!
//! Composition is diagrammatic throughout: `f;g = f ∘_0 g`.

use std::collections::HashMap;

use super::{missing, Draft};
use crate::cosimplicial::{CosimplicialNCat, LCell};
use crate::error::{Error, Result};
use crate::ncat::{FiniteNCat, StrictCat};

pub(crate) fn require(e: &CosimplicialNCat, n: usize) -> Result<()> {
    if e.top() < n + 1 {
        return Err(Error::Truncation { needed: n + 1, have: e.top() });
    }
    if e.levels()[..=n + 1].iter().any(|l| l.dim() > n) {
        return Err(Error::InvalidCategory(format!("descent in dimension {n} needs levels of dimension ≤ {n}")));
    }
    Ok(())
}

/// Objects `(F, f)` with `f: ∂_1F → ∂_0F`, `ι_0 f = 1_F` and
/// `∂_1 f = ∂_2 f ; ∂_0 f`; morphisms `u: F → G` with `f ; ∂_0 u = ∂_1 u ; g`.
pub fn desc1(e: &CosimplicialNCat) -> Result<FiniteNCat> {
    require(e, 1)?;
    let (e0, e1, e2) = (e.level(0), e.level(1), e.level(2));
    let d = |m: usize, r: usize, c: &LCell| e.coface(m, r, c);

    let mut objs: Vec<(LCell, LCell)> = Vec::new();
    for f0 in e0.zero_cells() {
        for f in e1.parallel(1, &d(0, 1, &f0), &d(0, 0, &f0)) {
            if e.codegen(0, 0, &f) != f0 {
                continue;
            }
            if e2.compose(0, &d(1, 2, &f), &d(1, 0, &f)) != Some(d(1, 1, &f)) {
                continue;
            }
            objs.push((f0.clone(), f));
        }
    }
    let mut draft = Draft::default();
    let obj_cells: Vec<usize> =
        objs.iter().map(|(f0, f)| draft.add(&[e0.cell_id(f0), e1.cell_id(f)], 0, 0, 0)).collect();

    // (source object, target object, u), by draft cell
    let mut mors: HashMap<usize, (usize, usize, LCell)> = HashMap::new();
    let mut index: HashMap<(usize, usize, LCell), usize> = HashMap::new();
    for (i, (fi, f)) in objs.iter().enumerate() {
        for (j, (gj, g)) in objs.iter().enumerate() {
            for u in e0.parallel(1, fi, gj) {
                if e0.cell_dim(&u) == 0 {
                    continue;
                }
                let lhs = e1.compose(0, f, &d(0, 0, &u));
                if lhs.is_none() || lhs != e1.compose(0, &d(0, 1, &u), g) {
                    continue;
                }
                let c = draft.add(&[e0.cell_id(&u)], 1, obj_cells[i], obj_cells[j]);
                mors.insert(c, (i, j, u.clone()));
                index.insert((i, j, u), c);
            }
        }
    }
    draft.finish(1, |_, _, a, b| {
        let (i, _, u) = &mors[&a];
        let (_, l, w) = &mors[&b];
        let c = e0.compose(0, u, w).ok_or_else(|| missing("morphisms do not compose in E_0"))?;
        if e0.cell_dim(&c) == 0 {
            return if i == l { Ok(obj_cells[*i]) } else { Err(missing("identity between distinct objects")) };
        }
        index.get(&(*i, *l, c)).copied().ok_or_else(|| missing("composite is not a morphism"))
    })
}

/// A morphism of the descent 2-category as `(source, target, u, v)`;
/// identities are `(i, i, F_i, f_i)`.
type Mor = (usize, usize, LCell, LCell);

/// Objects `(F, f, φ)`, morphisms `(u, v)` and 2-cells `α`, with the
/// normalization, tetrahedron, triangular and circular cylinder equations.
pub fn desc2(e: &CosimplicialNCat) -> Result<FiniteNCat> {
    require(e, 2)?;
    let (e0, e1, e2, e3) = (e.level(0), e.level(1), e.level(2), e.level(3));
    let d = |m: usize, r: usize, c: &LCell| e.coface(m, r, c);
    let i_ = |m: usize, r: usize, c: &LCell| e.codegen(m, r, c);

    let mut objs: Vec<(LCell, LCell, LCell)> = Vec::new();
    for f0 in e0.zero_cells() {
        for f in e1.parallel(1, &d(0, 1, &f0), &d(0, 0, &f0)) {
            if i_(0, 0, &f) != f0 {
                continue;
            }
            let Some(path) = e2.compose(0, &d(1, 2, &f), &d(1, 0, &f)) else { continue };
            let d00f = d(2, 0, &d(1, 0, &f));
            let d32f = d(2, 3, &d(1, 2, &f));
            for phi in e2.parallel(2, &d(1, 1, &f), &path) {
                if i_(1, 0, &phi) != f || i_(1, 1, &phi) != f {
                    continue;
                }
                let lhs = e3.compose(0, &d(2, 3, &phi), &d00f).and_then(|x| e3.compose(1, &d(2, 1, &phi), &x));
                let rhs = e3.compose(0, &d32f, &d(2, 0, &phi)).and_then(|x| e3.compose(1, &d(2, 2, &phi), &x));
                if lhs.is_some() && lhs == rhs {
                    objs.push((f0.clone(), f.clone(), phi));
                }
            }
        }
    }
    let mut draft = Draft::default();
    let obj_cells: Vec<usize> = objs
        .iter()
        .map(|(f0, f, phi)| draft.add(&[e0.cell_id(f0), e1.cell_id(f), e2.cell_id(phi)], 0, 0, 0))
        .collect();

    // morphisms, identities first
    let mut mview: Vec<Mor> = objs.iter().enumerate().map(|(i, (f0, f, _))| (i, i, f0.clone(), f.clone())).collect();
    let mut mcell: Vec<usize> = obj_cells.clone();
    for (i, (fi, f, phi)) in objs.iter().enumerate() {
        for (j, (gj, g, psi)) in objs.iter().enumerate() {
            for u in e0.parallel(1, fi, gj) {
                let (Some(s), Some(t)) = (e1.compose(0, f, &d(0, 0, &u)), e1.compose(0, &d(0, 1, &u), g)) else {
                    continue;
                };
                let d00u = d(1, 0, &d(0, 0, &u));
                let d11u = d(1, 1, &d(0, 1, &u));
                let d2f = d(1, 2, f);
                let d0g = d(1, 0, g);
                for v in e1.parallel(2, &s, &t) {
                    if i == j && u == *fi && v == *f {
                        continue;
                    }
                    if i_(0, 0, &v) != u {
                        continue;
                    }
                    let lhs = (|| {
                        let a = e2.compose(0, phi, &d00u)?;
                        let b = e2.compose(0, &d2f, &d(1, 0, &v))?;
                        let c = e2.compose(0, &d(1, 2, &v), &d0g)?;
                        e2.compose(1, &e2.compose(1, &a, &b)?, &c)
                    })();
                    let rhs = e2.compose(0, &d11u, psi).and_then(|x| e2.compose(1, &d(1, 1, &v), &x));
                    if lhs.is_none() || lhs != rhs {
                        continue;
                    }
                    let c = draft.add(&[e0.cell_id(&u), e1.cell_id(&v)], 1, obj_cells[i], obj_cells[j]);
                    mview.push((i, j, u.clone(), v));
                    mcell.push(c);
                }
            }
        }
    }
    let mindex: HashMap<&Mor, usize> = mview.iter().enumerate().map(|(p, m)| (m, p)).collect();

    // 2-cells (p, q, α), identities first
    let mut tview: Vec<(usize, usize, LCell)> = mview.iter().enumerate().map(|(p, m)| (p, p, m.2.clone())).collect();
    let mut tcell: Vec<usize> = mcell.clone();
    for (p, (i, j, u, v)) in mview.iter().enumerate() {
        for (q, (i2, j2, u2, v2)) in mview.iter().enumerate() {
            if (i, j) != (i2, j2) {
                continue;
            }
            let (f, g) = (&objs[*i].1, &objs[*j].1);
            for alpha in e0.parallel(2, u, u2) {
                if p == q && alpha == *u {
                    continue;
                }
                let lhs = e1.compose(0, &d(0, 1, &alpha), g).and_then(|x| e1.compose(1, v, &x));
                let rhs = e1.compose(0, f, &d(0, 0, &alpha)).and_then(|x| e1.compose(1, &x, v2));
                if lhs.is_none() || lhs != rhs {
                    continue;
                }
                let c = draft.add(&[e0.cell_id(&alpha)], 2, mcell[p], mcell[q]);
                tview.push((p, q, alpha));
                tcell.push(c);
            }
        }
    }
    let tindex: HashMap<&(usize, usize, LCell), usize> = tview.iter().enumerate().map(|(t, x)| (x, t)).collect();
    let mut as_two: HashMap<usize, usize> = HashMap::new();
    for (t, &c) in tcell.iter().enumerate() {
        as_two.entry(c).or_insert(t);
    }
    for (t, &c) in tcell.iter().enumerate().skip(mview.len()) {
        as_two.insert(c, t);
    }

    let compose_mor = |p: usize, q: usize| -> Result<usize> {
        let (i, _, u, v) = &mview[p];
        let (_, l, u2, v2) = &mview[q];
        let uu = e0.compose(0, u, u2).ok_or_else(|| missing("u does not compose"))?;
        let vv = (|| {
            let a = e1.compose(0, v, &d(0, 0, u2))?;
            let b = e1.compose(0, &d(0, 1, u), v2)?;
            e1.compose(1, &a, &b)
        })()
        .ok_or_else(|| missing("v does not compose"))?;
        mindex.get(&(*i, *l, uu, vv)).copied().ok_or_else(|| missing("composite is not a morphism"))
    };
    let lookup_two = |p: usize, q: usize, alpha: LCell| -> Result<usize> {
        tindex.get(&(p, q, alpha)).map(|&t| tcell[t]).ok_or_else(|| missing("composite is not a 2-cell"))
    };
    draft.finish(2, |dr, k, a, b| {
        let (pa, qa, alpha) = &tview[as_two[&a]];
        let (pb, qb, beta) = &tview[as_two[&b]];
        if k == 1 {
            let ab = e0.compose(1, alpha, beta).ok_or_else(|| missing("α ∘1 β"))?;
            return lookup_two(*pa, *qb, ab);
        }
        let ps = compose_mor(*pa, *pb)?;
        if dr.dim(a) == 1 && dr.dim(b) == 1 {
            return Ok(mcell[ps]);
        }
        let qs = compose_mor(*qa, *qb)?;
        let ab = e0.compose(0, alpha, beta).ok_or_else(|| missing("α ∘0 β"))?;
        lookup_two(ps, qs, ab)
    })
}
