//! `Desc E` as natural families of ω-functors `O(G^k × Δ^m) → E_m`.
//!
//! Naturality in the cofaces pins down every generator `(g|z)` with `z` a
//! proper face of `[m]` as `∂_r` of a value one level down, so a family is
//! recorded by the values of the generators `(g|[m])` alone. Naturality in the
//! codegeneracies and functoriality of each level are checked directly.
//! Generators whose dimension exceeds that of `E_m` are forced to identities.
//!
//! Composites of two cells are computed by pasting: the two globs are glued
//! into one complex `K`, the composite of the two top atoms in `O(K)` gives a
//! cell `c_g` for every element `g` of the result glob, and the new value at
//! `(g|[m])` is the image of `c_g ⊗ ⟨[m]⟩` in `O(K × Δ^m)`.

use std::collections::HashMap;

use super::explicit::require;
use super::{missing, Draft};
use crate::complex::{ElementSpec, ParityComplex, Sign};
use crate::constructions::{glob, glob_id, simplex};
use crate::cosimplicial::{CosimplicialNCat, LCell, Level};
use crate::error::{Error, Result};
use crate::excise::{Excisor, Plan};
use crate::freecat::{atom, compose, source, target, FreeCell, ProductComplex};
use crate::functor::{evaluate_plan, FunctorSearch};
use crate::ncat::{FiniteNCat, StrictCat};
use crate::simplicial::{codegeneracy, coface, simplex_map};

/// The result of [`desc_general`]. For `n = 3` the category carries cells
/// and boundaries only and `composed` is false.
#[derive(Clone, Debug)]
pub struct GeneralDescent {
    pub cat: FiniteNCat,
    pub composed: bool,
}

/// `vals[m][g]`: the value of `(g|[m])`, with `g` by position in `glob(k)`.
type Family = Vec<Vec<LCell>>;

/// The complexes `glob(k) × simplex(m)` and the simplex maps between levels.
struct Geometry {
    n: usize,
    globs: Vec<ParityComplex>,
    prods: Vec<Vec<ProductComplex>>,
    /// `sigma[m][r][x] = σ_r x` for `x` in `simplex(m)`, `r < m`.
    sigma: Vec<Vec<Vec<usize>>>,
    /// For each proper face `z` of `[m]`, the pairs `(r, y)` with `δ_r y = z`.
    preimages: Vec<Vec<Vec<(usize, usize)>>>,
    tops: Vec<usize>,
}

impl Geometry {
    fn new(n: usize) -> Result<Self> {
        let globs: Vec<ParityComplex> = (0..=n).map(glob).collect();
        let simplices: Vec<ParityComplex> = (0..=n + 1).map(simplex).collect();
        let mut prods = Vec::new();
        for g in &globs {
            prods.push(simplices.iter().map(|s| ProductComplex::new(g, s)).collect::<Result<Vec<_>>>()?);
        }
        let mut sigma = Vec::new();
        let mut preimages = Vec::new();
        let mut tops = Vec::new();
        for m in 0..=n + 1 {
            tops.push(simplices[m].len() - 1);
            sigma.push((0..m).map(|r| simplex_map(m, m - 1, |i| codegeneracy(r, i))).collect::<Vec<_>>());
            let mut pre = vec![Vec::new(); simplices[m].len()];
            if m > 0 {
                for r in 0..=m {
                    for (y, z) in simplex_map(m - 1, m, |i| coface(r, i)).into_iter().enumerate() {
                        pre[z].push((r, y));
                    }
                }
            }
            preimages.push(pre);
        }
        Ok(Geometry { n, globs, prods, sigma, preimages, tops })
    }

    fn top(&self, k: usize) -> usize {
        self.globs[k].len() - 1
    }

    fn side(&self, k: usize, sign: Sign, i: usize) -> usize {
        self.globs[k].lookup(&glob_id(sign, i)).expect("glob element")
    }

    /// Level-`m` assignment on `glob(k) × simplex(m)` from the previous
    /// level and the new values; `None` entries stay unknown. Fails when two
    /// coface representations of a generator disagree.
    fn level(
        &self,
        e: &CosimplicialNCat,
        k: usize,
        m: usize,
        prev: Option<&[LCell]>,
        new: &[Option<LCell>],
    ) -> Option<Vec<Option<LCell>>> {
        let p = &self.prods[k][m];
        let mut out = vec![None; p.complex.len()];
        for g in 0..self.globs[k].len() {
            out[p.pair(g, self.tops[m])] = new[g].clone();
            let Some(prev) = prev else { continue };
            let prev_p = &self.prods[k][m - 1];
            for (z, reps) in self.preimages[m].iter().enumerate() {
                let mut value: Option<LCell> = None;
                for &(r, y) in reps {
                    let v = e.coface(m - 1, r, &prev[prev_p.pair(g, y)]);
                    match &value {
                        None => value = Some(v),
                        Some(w) if *w != v => return None,
                        _ => {}
                    }
                }
                if value.is_some() {
                    out[p.pair(g, z)] = value;
                }
            }
        }
        Some(out)
    }

    /// Naturality in the codegeneracies between levels `m − 1` and `m`.
    fn codegen_ok(&self, e: &CosimplicialNCat, k: usize, m: usize, prev: &[LCell], cur: &[LCell]) -> bool {
        let (p, q) = (&self.prods[k][m], &self.prods[k][m - 1]);
        for g in 0..self.globs[k].len() {
            for z in 0..self.tops[m] + 1 {
                let v = &cur[p.pair(g, z)];
                for r in 0..m {
                    if e.codegen(m - 1, r, v) != prev[q.pair(g, self.sigma[m][r][z])] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Full assignments of a complete family, level by level.
    fn full(&self, e: &CosimplicialNCat, k: usize, fam: &Family) -> Result<Vec<Vec<LCell>>> {
        let mut out: Vec<Vec<LCell>> = Vec::with_capacity(fam.len());
        for (m, vals) in fam.iter().enumerate() {
            let new: Vec<Option<LCell>> = vals.iter().cloned().map(Some).collect();
            let lvl = self
                .level(e, k, m, out.last().map(|v| v.as_slice()), &new)
                .ok_or_else(|| missing("inconsistent family"))?;
            out.push(lvl.into_iter().map(|v| v.expect("complete")).collect());
        }
        Ok(out)
    }

    fn is_identity(&self, k: usize, fam: &Family) -> bool {
        if k == 0 {
            return false;
        }
        let (t, lo, hi) = (self.top(k), self.side(k, Sign::Minus, k - 1), self.side(k, Sign::Plus, k - 1));
        fam.iter().all(|v| v[t] == v[lo] && v[t] == v[hi])
    }

    /// The `(k−1)`-source (`Minus`) or target (`Plus`) family.
    fn restrict(&self, k: usize, fam: &Family, sign: Sign) -> Family {
        let lower = &self.globs[k - 1];
        fam.iter()
            .map(|v| {
                (0..lower.len())
                    .map(|g| {
                        let id = lower.id(g);
                        let pos = if g == self.top(k - 1) {
                            self.side(k, sign, k - 1)
                        } else {
                            self.globs[k].lookup(id).expect("lower glob element")
                        };
                        v[pos].clone()
                    })
                    .collect()
            })
            .collect()
    }

    fn canonical(&self, mut k: usize, mut fam: Family) -> (usize, Family) {
        while self.is_identity(k, &fam) {
            fam = self.restrict(k, &fam, Sign::Minus);
            k -= 1;
        }
        (k, fam)
    }

    /// The same cell seen as an identity one dimension up.
    fn promote(&self, k: usize, fam: &Family) -> Family {
        let upper = &self.globs[k + 1];
        fam.iter()
            .map(|v| {
                (0..upper.len())
                    .map(|g| {
                        let id = upper.id(g);
                        let pos = if g == self.top(k + 1) || id == glob_id(Sign::Minus, k) || id == glob_id(Sign::Plus, k) {
                            self.top(k)
                        } else {
                            self.globs[k].lookup(id).expect("glob element")
                        };
                        v[pos].clone()
                    })
                    .collect()
            })
            .collect()
    }

    fn promote_to(&self, mut k: usize, fam: &Family, to: usize) -> Family {
        let mut fam = fam.clone();
        while k < to {
            fam = self.promote(k, &fam);
            k += 1;
        }
        fam
    }
}

/// One search state: a cell of dimension `k` whose non-top generators are
/// fixed by its boundary.
struct Search<'a> {
    geo: &'a Geometry,
    e: &'a CosimplicialNCat,
    searches: &'a [Vec<FunctorSearch<'a>>],
    k: usize,
    fixed: Vec<Vec<Option<LCell>>>,
    found: Vec<Family>,
    /// Cells already found, counted against `cap`.
    base: usize,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, m: usize, fam: &mut Family, fulls: &mut Vec<Vec<LCell>>) -> Result<()> {
        let geo = self.geo;
        if m > geo.n + 1 {
            if self.base + self.found.len() >= self.cap {
                return Err(Error::CapacityExceeded(self.cap));
            }
            self.found.push(fam.clone());
            return Ok(());
        }
        let k = self.k;
        let level: &Level = self.e.level(m);
        let prev = fulls.last().map(|v| v.as_slice());
        let Some(partial) = geo.level(self.e, k, m, prev, &self.fixed[m]) else { return Ok(()) };
        let x = geo.prods[k][m].pair(geo.top(k), geo.tops[m]);
        let cands = if k + m == 0 {
            level.zero_cells()
        } else {
            let leaf = |y: usize| partial[y].clone();
            match self.searches[k][m].boundary_images(level, x, &leaf) {
                Some((s, t)) => level.parallel(k + m, &s, &t),
                None => Vec::new(),
            }
        };
        for c in cands {
            let mut cur = partial.clone();
            cur[x] = Some(c.clone());
            let cur: Vec<LCell> = cur.into_iter().map(|v| v.expect("complete")).collect();
            if m > 0 && !geo.codegen_ok(self.e, k, m, &fulls[m - 1], &cur) {
                continue;
            }
            if !self.searches[k][m].is_functor(level, &cur) {
                continue;
            }
            let mut vals: Vec<LCell> = self.fixed[m].iter().map(|v| v.clone().unwrap_or_default()).collect();
            vals[geo.top(k)] = c;
            fam.push(vals);
            fulls.push(cur);
            self.run(m + 1, fam, fulls)?;
            fam.pop();
            fulls.pop();
        }
        Ok(())
    }
}

/// Two globs of dimensions `k1`, `k2` glued for `∘_j`: the elements below
/// dimension `j` are shared and the `j`-target of the left glob is the
/// `j`-source of the right one. Returns the complex, the position of each
/// left and right glob element in it, and the two top elements.
pub fn glob_pasting(k1: usize, k2: usize, j: usize) -> Result<(ParityComplex, Vec<usize>, Vec<usize>)> {
    if j >= k1 || j >= k2 {
        return Err(Error::Malformed(format!("cannot paste dimensions {k1} and {k2} along {j}")));
    }
    let rename = |side: &str, id: &str| -> String {
        for i in 0..j {
            if id == glob_id(Sign::Minus, i) || id == glob_id(Sign::Plus, i) {
                return id.to_string();
            }
        }
        let mid = (side == "L" && id == glob_id(Sign::Plus, j)) || (side == "R" && id == glob_id(Sign::Minus, j));
        if mid {
            format!("<{j}>")
        } else {
            format!("{side}:{id}")
        }
    };
    let mut specs: Vec<ElementSpec> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (side, k) in [("L", k1), ("R", k2)] {
        let g = glob(k);
        for x in 0..g.len() {
            let id = rename(side, g.id(x));
            if !seen.insert(id.clone()) {
                continue;
            }
            let faces = |s: Sign| g.faces(x, s).iter().map(|&y| rename(side, g.id(y))).collect();
            specs.push(ElementSpec { id, dim: g.elem_dim(x), minus: faces(Sign::Minus), plus: faces(Sign::Plus) });
        }
    }
    let k = ParityComplex::new(specs)?;
    let left = glob(k1);
    let right = glob(k2);
    let lpos = (0..left.len()).map(|x| k.lookup(&rename("L", left.id(x)))).collect::<Result<_>>()?;
    let rpos = (0..right.len()).map(|x| k.lookup(&rename("R", right.id(x)))).collect::<Result<_>>()?;
    Ok((k, lpos, rpos))
}

/// Precomputed pasting data for one `(k1, k2, j)`.
struct Pasting {
    prods: Vec<ProductComplex>,
    /// `origin[m][x]`: for each element of `K × Δ^m`, the side (false = left),
    /// the glob element on that side and the simplex element.
    origin: Vec<Vec<(bool, usize, usize)>>,
    /// `plans[m][g]` for the free generators of the result.
    plans: Vec<Vec<Option<Plan<usize>>>>,
}

impl Pasting {
    fn new(geo: &Geometry, k1: usize, k2: usize, j: usize) -> Result<Self> {
        let (kc, lpos, rpos) = glob_pasting(k1, k2, j)?;
        let kk = k1.max(k2);
        let mut side_of = vec![(false, 0); kc.len()];
        for (g, &x) in rpos.iter().enumerate() {
            side_of[x] = (true, g);
        }
        for (g, &x) in lpos.iter().enumerate() {
            side_of[x] = (false, g);
        }
        let lt = atom(&kc, lpos[lpos.len() - 1]);
        let rt = atom(&kc, rpos[rpos.len() - 1]);
        let c = compose(&kc, &lt, &rt, j)?;
        let result = &geo.globs[kk];
        let c_of = |g: usize| -> FreeCell {
            let id = result.id(g);
            for i in 0..kk {
                if id == glob_id(Sign::Minus, i) {
                    return source(&kc, &c, i);
                }
                if id == glob_id(Sign::Plus, i) {
                    return target(&kc, &c, i);
                }
            }
            c.clone()
        };
        let mut prods = Vec::new();
        let mut origin = Vec::new();
        let mut plans = Vec::new();
        for m in 0..=geo.n + 1 {
            let s = simplex(m);
            let p = ProductComplex::new(&kc, &s)?;
            let mut o = vec![(false, 0, 0); p.complex.len()];
            for x in 0..kc.len() {
                for z in 0..s.len() {
                    o[p.pair(x, z)] = (side_of[x].0, side_of[x].1, z);
                }
            }
            let mut ex = Excisor::new(&p.complex);
            let top = atom(&s, s.len() - 1);
            let mut row = Vec::new();
            for g in 0..result.len() {
                if result.elem_dim(g) + m <= geo.n {
                    row.push(Some(ex.excise(&p.tensor_cell(&c_of(g), &top))?));
                } else {
                    row.push(None);
                }
            }
            prods.push(p);
            origin.push(o);
            plans.push(row);
        }
        Ok(Pasting { prods, origin, plans })
    }
}

/// `Desc E` for `E` truncated at level `n + 1`, with levels of dimension at
/// most `n`. Cells are composed for `n ≤ 2`.
pub fn desc_general(e: &CosimplicialNCat, n: usize, cap: usize) -> Result<GeneralDescent> {
    require(e, n)?;
    if n > 3 {
        return Err(Error::Malformed("general descent is implemented up to n = 3".into()));
    }
    let geo = Geometry::new(n)?;
    let searches: Vec<Vec<FunctorSearch>> = geo
        .prods
        .iter()
        .map(|row| row.iter().map(|p| FunctorSearch::truncated(&p.complex, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let mut cells: Vec<(usize, Family)> = Vec::new();
    let mut index: HashMap<(usize, Family), usize> = HashMap::new();
    let mut draft = Draft::default();
    let own = |k: usize, fam: &Family| -> Vec<String> {
        (0..=n - k).map(|m| e.level(m).cell_id(&fam[m][geo.top(k)])).collect()
    };
    for k in 0..=n {
        let lower: Vec<usize> = (0..cells.len()).collect();
        let pairs: Vec<(Option<usize>, Option<usize>)> = if k == 0 {
            vec![(None, None)]
        } else {
            let mut v = Vec::new();
            for &s in &lower {
                for &t in &lower {
                    v.push((Some(s), Some(t)));
                }
            }
            v
        };
        for (s, t) in pairs {
            let mut fixed: Vec<Vec<Option<LCell>>> = vec![vec![None; geo.globs[k].len()]; n + 2];
            if let (Some(s), Some(t)) = (s, t) {
                let (ks, fs) = &cells[s];
                let (kt, ft) = &cells[t];
                let ps = geo.promote_to(*ks, fs, k - 1);
                let pt = geo.promote_to(*kt, ft, k - 1);
                let lower_glob = &geo.globs[k - 1];
                let parallel = (0..lower_glob.len())
                    .filter(|&g| g != geo.top(k - 1))
                    .all(|g| (0..=n + 1).all(|m| ps[m][g] == pt[m][g]));
                if !parallel {
                    continue;
                }
                for m in 0..=n + 1 {
                    for g in 0..lower_glob.len() {
                        if g == geo.top(k - 1) {
                            continue;
                        }
                        let pos = geo.globs[k].lookup(lower_glob.id(g))?;
                        fixed[m][pos] = Some(ps[m][g].clone());
                    }
                    fixed[m][geo.side(k, Sign::Minus, k - 1)] = Some(ps[m][geo.top(k - 1)].clone());
                    fixed[m][geo.side(k, Sign::Plus, k - 1)] = Some(pt[m][geo.top(k - 1)].clone());
                }
            }
            let mut search =
                Search { geo: &geo, e, searches: &searches, k, fixed, found: Vec::new(), base: cells.len(), cap };
            search.run(0, &mut Vec::new(), &mut Vec::new())?;
            for fam in search.found {
                if geo.is_identity(k, &fam) {
                    continue;
                }
                let c = draft.add(&own(k, &fam), k, s.map_or(0, |s| s), t.map_or(0, |t| t));
                debug_assert_eq!(c, cells.len());
                index.insert((k, fam.clone()), c);
                cells.push((k, fam));
            }
        }
    }

    if n == 3 {
        return Ok(GeneralDescent { cat: draft.into_cat(n, Vec::new())?, composed: false });
    }
    let mut pastings: HashMap<(usize, usize, usize), Pasting> = HashMap::new();
    let cat = draft.finish(n, |_, j, a, b| {
        let (ka, fa) = &cells[a];
        let (kb, fb) = &cells[b];
        let kk = (*ka).max(*kb);
        if let std::collections::hash_map::Entry::Vacant(e) = pastings.entry((*ka, *kb, j)) {
            e.insert(Pasting::new(&geo, *ka, *kb, j)?);
        }
        let pasting = &pastings[&(*ka, *kb, j)];
        let full_a = geo.full(e, *ka, fa)?;
        let full_b = geo.full(e, *kb, fb)?;
        let result = &geo.globs[kk];
        let mut fam: Family = Vec::with_capacity(n + 2);
        let mut fulls: Vec<Vec<LCell>> = Vec::new();
        for m in 0..=n + 1 {
            let level = e.level(m);
            let leaf = |x: usize| {
                let (right, g, z) = pasting.origin[m][x];
                Some(if right {
                    full_b[m][geo.prods[*kb][m].pair(g, z)].clone()
                } else {
                    full_a[m][geo.prods[*ka][m].pair(g, z)].clone()
                })
            };
            let mut new: Vec<Option<LCell>> = vec![None; result.len()];
            for g in 0..result.len() {
                if let Some(plan) = &pasting.plans[m][g] {
                    new[g] = Some(evaluate_plan(level, &pasting.prods[m].complex, plan, &leaf)?);
                }
            }
            // forced generators, in increasing dimension
            for g in 0..result.len() {
                if new[g].is_some() {
                    continue;
                }
                let partial = geo
                    .level(e, kk, m, fulls.last().map(|v| v.as_slice()), &new)
                    .ok_or_else(|| missing("inconsistent composite"))?;
                let x = geo.prods[kk][m].pair(g, geo.tops[m]);
                let lf = |y: usize| partial[y].clone();
                let (s, t) = searches[kk][m].boundary_images(level, x, &lf).ok_or_else(|| missing("composite boundary"))?;
                if s != t {
                    return Err(missing("forced generator has distinct boundaries"));
                }
                new[g] = Some(s);
            }
            let cur = geo
                .level(e, kk, m, fulls.last().map(|v| v.as_slice()), &new)
                .ok_or_else(|| missing("inconsistent composite"))?;
            fulls.push(cur.into_iter().map(|v| v.expect("complete")).collect());
            fam.push(new.into_iter().map(|v| v.expect("complete")).collect());
        }
        let key = geo.canonical(kk, fam);
        index.get(&key).copied().ok_or_else(|| missing("composite is not a cell"))
    })?;
    Ok(GeneralDescent { cat, composed: true })
}
