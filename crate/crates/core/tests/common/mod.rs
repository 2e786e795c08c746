//! Shared builders and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use paritycx::ncat::{CellSpec, CompSpec, FiniteNCat, StrictCat};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn obj(id: &str) -> CellSpec {
    CellSpec { id: id.into(), dim: 0, src: vec![], tgt: vec![] }
}

pub fn arrow(id: &str, s: &str, t: &str) -> CellSpec {
    CellSpec { id: id.into(), dim: 1, src: vec![s.into()], tgt: vec![t.into()] }
}

pub fn comp(k: usize, a: &str, b: &str, r: &str) -> CompSpec {
    CompSpec { k, a: a.into(), b: b.into(), r: r.into() }
}

/// A 1-category from objects, arrows `(id, src, tgt)` and composites
/// `(f, g, f;g)` of non-identity arrows.
pub fn cat1(objects: &[&str], arrows: &[(&str, &str, &str)], comps: &[(&str, &str, &str)]) -> FiniteNCat {
    let mut cells: Vec<CellSpec> = objects.iter().map(|o| obj(o)).collect();
    cells.extend(arrows.iter().map(|(f, s, t)| arrow(f, s, t)));
    let comps = comps.iter().map(|(f, g, r)| comp(0, f, g, r)).collect();
    FiniteNCat::new(1, cells, comps).unwrap()
}

fn from_table(objects: usize, arrows: &[(usize, usize)], mul: impl Fn(usize, usize) -> Option<usize>, name: &str) -> FiniteNCat {
    // `mul` returns an arrow index, or `None` for the identity on the source
    let ob: Vec<String> = (0..objects).map(|i| format!("{name}{i}")).collect();
    let ar: Vec<String> = (0..arrows.len()).map(|i| format!("{name}f{i}")).collect();
    let mut cells: Vec<CellSpec> = ob.iter().map(|o| obj(o)).collect();
    cells.extend(arrows.iter().enumerate().map(|(i, &(s, t))| arrow(&ar[i], &ob[s], &ob[t])));
    let mut comps = Vec::new();
    for (i, &(_, t)) in arrows.iter().enumerate() {
        for (j, &(s2, _)) in arrows.iter().enumerate() {
            if t != s2 {
                continue;
            }
            let r = match mul(i, j) {
                Some(k) => ar[k].clone(),
                None => ob[arrows[i].0].clone(),
            };
            comps.push(comp(0, &ar[i], &ar[j], &r));
        }
    }
    FiniteNCat::new(1, cells, comps).unwrap()
}

/// The preorder on `n` objects generated by `rel`.
pub fn preorder(n: usize, rel: &[(usize, usize)], name: &str) -> FiniteNCat {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in rel {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    let arrows: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && r[i][j]).collect();
    let find = |s: usize, t: usize| arrows.iter().position(|&p| p == (s, t));
    from_table(n, &arrows, |a, b| find(arrows[a].0, arrows[b].1), name)
}

/// The free category on a DAG with edges `i → j`, `i < j`, listed by paths.
pub fn free_on_dag(n: usize, edges: &[(usize, usize)], name: &str) -> FiniteNCat {
    let mut paths: Vec<Vec<usize>> = edges.iter().map(|&(i, j)| vec![i, j]).collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for &(i, j) in edges {
                if i == *p.last().unwrap() {
                    let mut q = p.clone();
                    q.push(j);
                    next.push(q);
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let arrows: Vec<(usize, usize)> = paths.iter().map(|p| (p[0], *p.last().unwrap())).collect();
    let mul = |a: usize, b: usize| {
        let mut q = paths[a].clone();
        q.extend_from_slice(&paths[b][1..]);
        paths.iter().position(|p| *p == q)
    };
    from_table(n, &arrows, mul, name)
}

/// The cyclic monoid `⟨a | a^{index + period} = a^index⟩` on one object.
pub fn cyclic_monoid(index: usize, period: usize, name: &str) -> FiniteNCat {
    // elements a^1 … a^{index+period−1}; a^0 is the identity
    let size = index + period - 1;
    let reduce = |mut e: usize| {
        while e >= index + period {
            e -= period;
        }
        e
    };
    let arrows = vec![(0, 0); size];
    from_table(1, &arrows, |a, b| {
        let e = reduce(a + 1 + b + 1);
        if e == 0 { None } else { Some(e - 1) }
    }, name)
}

/// A random 1-category with at most `max_obj` objects and `max_arrows`
/// non-identity arrows.
pub fn random_category(rng: &mut impl Rng, max_obj: usize, max_arrows: usize, name: &str) -> FiniteNCat {
    loop {
        let c = match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..=max_obj);
                let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
                pairs.shuffle(rng);
                let k = rng.gen_range(0..=pairs.len().min(4));
                preorder(n, &pairs[..k], name)
            }
            1 => {
                let n = rng.gen_range(1..=max_obj);
                let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
                pairs.shuffle(rng);
                let k = rng.gen_range(0..=pairs.len().min(4));
                free_on_dag(n, &pairs[..k], name)
            }
            _ => {
                let index = rng.gen_range(0..=2);
                let period = rng.gen_range(1..=3);
                if index + period < 2 {
                    continue;
                }
                cyclic_monoid(index, period, name)
            }
        };
        if c.count_of_dim(1) <= max_arrows && c.count_of_dim(0) <= max_obj {
            return c;
        }
    }
}

/// All functors between 1-categories, as images of every cell.
pub fn functors(a: &FiniteNCat, x: &FiniteNCat) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; a.len()];
    fn go(a: &FiniteNCat, x: &FiniteNCat, c: usize, img: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if c == a.len() {
            let ok = a.comp_entries().into_iter().all(|(k, f, g, r)| x.compose(k, img[f], img[g]) == Some(img[r]));
            if ok {
                out.push(img.clone());
            }
            return;
        }
        let cands: Vec<usize> = if a.cell_dim(c) == 0 {
            x.zero_cells().to_vec()
        } else {
            x.parallel(1, img[a.src(c, 0)], img[a.tgt(c, 0)])
        };
        for y in cands {
            img[c] = y;
            go(a, x, c + 1, img, out);
        }
    }
    go(a, x, 0, &mut img, &mut out);
    out
}

/// Natural transformations `F ⇒ G` as families indexed by the objects of `a`.
pub fn transformations(a: &FiniteNCat, x: &FiniteNCat, f: &[usize], g: &[usize]) -> Vec<Vec<usize>> {
    let objs = a.zero_cells().to_vec();
    let mut families: Vec<Vec<usize>> = vec![vec![]];
    for &o in &objs {
        let mut next = Vec::new();
        for fam in &families {
            for t in x.parallel(1, f[o], g[o]) {
                let mut v = fam.clone();
                v.push(t);
                next.push(v);
            }
        }
        families = next;
    }
    let pos: BTreeMap<usize, usize> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    families
        .into_iter()
        .filter(|tau| {
            a.cells_of_dim(1).all(|h| {
                let (s, t) = (pos[&a.src(h, 0)], pos[&a.tgt(h, 0)]);
                x.compose(0, f[h], tau[t]) == x.compose(0, tau[s], g[h])
            })
        })
        .collect()
}

/// Object and non-identity morphism counts of the functor category `[a, x]`.
pub fn functor_category_counts(a: &FiniteNCat, x: &FiniteNCat) -> (usize, usize) {
    let fs = functors(a, x);
    let mut mors = 0;
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in fs.iter().enumerate() {
            for tau in transformations(a, x, f, g) {
                let identity = i == j && a.zero_cells().iter().zip(&tau).all(|(&o, &t)| t == f[o]);
                if !identity {
                    mors += 1;
                }
            }
        }
    }
    (fs.len(), mors)
}

/// Cell counts by dimension.
pub fn shape(a: &FiniteNCat) -> Vec<usize> {
    (0..=a.dim()).map(|k| a.count_of_dim(k)).collect()
}

/// Cells with the same boundary ids, as a set of strings, for comparing
/// structure up to renaming through a given map on ids.
pub fn relabel(a: &FiniteNCat, f: impl Fn(&str) -> String) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for c in 0..a.len() {
        let d = a.cell_dim(c);
        let bd: Vec<String> = (0..d).map(|k| format!("{}>{}", f(a.id(a.src(c, k))), f(a.id(a.tgt(c, k))))).collect();
        out.insert(format!("{}:{}:{}", d, f(a.id(c)), bd.join(",")));
    }
    for (k, x, y, r) in a.comp_entries() {
        out.insert(format!("{} o{k} {} = {}", f(a.id(x)), f(a.id(y)), f(a.id(r))));
    }
    out
}

// ---------------------------------------------------------------------------
// Free cells, checked straight from the definition

use paritycx::chain::ChainComplex;
use paritycx::freecat::{self, FreeCell};
use paritycx::functor::FunctorSearch;
use paritycx::{ParityComplex, Sign};

type Set = BTreeSet<usize>;

fn faces_of(c: &ParityComplex, s: &Set, sign: Sign) -> Set {
    s.iter().flat_map(|&x| c.faces(x, sign).iter().copied()).collect()
}

fn minus(a: &Set, b: &Set) -> Set {
    a.difference(b).copied().collect()
}

fn union(a: &Set, b: &Set) -> Set {
    a.union(b).copied().collect()
}

/// Conditions (i) and (ii) on a pair of element sets.
pub fn is_mp_cell(c: &ParityComplex, m: &Set, p: &Set) -> bool {
    if m.is_empty() || p.is_empty() {
        return false;
    }
    for s in [m, p] {
        if s.iter().filter(|&&x| c.elem_dim(x) == 0).count() > 1 {
            return false;
        }
        for &x in s {
            for &y in s {
                if x < y && c.elem_dim(x) == c.elem_dim(y) && c.elem_dim(x) > 0 {
                    let share = |sign| c.faces(x, sign).iter().any(|f| c.faces(y, sign).contains(f));
                    if share(Sign::Minus) || share(Sign::Plus) {
                        return false;
                    }
                }
            }
        }
    }
    let (mm, mp) = (faces_of(c, m, Sign::Minus), faces_of(c, m, Sign::Plus));
    let (pm, pp) = (faces_of(c, p, Sign::Minus), faces_of(c, p, Sign::Plus));
    *p == minus(&union(m, &mp), &mm)
        && *m == minus(&union(p, &mm), &mp)
        && *p == minus(&union(m, &pp), &pm)
        && *m == minus(&union(p, &pm), &pp)
}

/// Every `(M, P)` pair of a small complex that is a cell, by subset search.
pub fn brute_force_cells(c: &ParityComplex) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let n = c.len();
    assert!(n <= 10, "subset search is exponential");
    let subset = |mask: usize| -> Set { (0..n).filter(|i| mask & (1 << i) != 0).collect() };
    let mut out = BTreeSet::new();
    for a in 1..1usize << n {
        let m = subset(a);
        for b in 1..1usize << n {
            let p = subset(b);
            if is_mp_cell(c, &m, &p) {
                out.insert((m.iter().copied().collect(), p.iter().copied().collect()));
            }
        }
    }
    out
}

/// A cell as sorted `(M, P)` index lists.
pub type Pair = (Vec<usize>, Vec<usize>);

pub fn as_pair(cell: &FreeCell) -> Pair {
    (cell.m.ones().collect(), cell.p.ones().collect())
}

fn describe(c: &ParityComplex, cell: &FreeCell) -> String {
    cell.display(c).to_string()
}

/// Globularity, closure under the operations, units, associativity and
/// interchange over a set of cells, by direct computation on `(M, P)`.
pub fn free_law_violations(c: &ParityComplex, cells: &[FreeCell]) -> Vec<String> {
    use freecat::{cell_dim, compose, is_cell, source, target};
    let mut out = Vec::new();
    let dim = c.dim();
    let known: std::collections::HashSet<&FreeCell> = cells.iter().collect();
    let check = |what: &str, x: &FreeCell, out: &mut Vec<String>| {
        if !is_cell(c, x) || !known.contains(x) {
            out.push(format!("{what} gives {}", describe(c, x)));
        }
    };
    for a in cells {
        let d = cell_dim(c, a);
        for k in 0..=dim {
            let (s, t) = (source(c, a, k), target(c, a, k));
            check("source", &s, &mut out);
            check("target", &t, &mut out);
            if k >= d && (s != *a || t != *a) {
                out.push(format!("{} is not its own {k}-boundary", describe(c, a)));
            }
            for j in 0..k {
                for (x, y) in [(source(c, &s, j), source(c, a, j)), (source(c, &t, j), source(c, a, j)), (target(c, &s, j), target(c, a, j)), (target(c, &t, j), target(c, a, j))] {
                    if x != y {
                        out.push(format!("globularity fails for {} at ({j}, {k})", describe(c, a)));
                    }
                }
            }
            // units: composing with the identity on either boundary
            if compose(c, &s, a, k).ok().as_ref() != Some(a) || compose(c, a, &t, k).ok().as_ref() != Some(a) {
                out.push(format!("unit law fails for {} at {k}", describe(c, a)));
            }
        }
    }
    // composable pairs indexed by k-source
    let mut by_src: BTreeMap<(usize, Pair), Vec<usize>> = BTreeMap::new();
    for (i, b) in cells.iter().enumerate() {
        for k in 0..dim {
            by_src.entry((k, as_pair(&source(c, b, k)))).or_default().push(i);
        }
    }
    let next = |k: usize, a: &FreeCell| by_src.get(&(k, as_pair(&target(c, a, k)))).cloned().unwrap_or_default();
    let mut comps: BTreeMap<(usize, usize, usize), FreeCell> = BTreeMap::new();
    for (i, a) in cells.iter().enumerate() {
        for k in 0..dim {
            for j in next(k, a) {
                match compose(c, a, &cells[j], k) {
                    Ok(r) => {
                        check("compose", &r, &mut out);
                        comps.insert((k, i, j), r);
                    }
                    Err(e) => out.push(format!("composable pair rejected: {e}")),
                }
            }
        }
    }
    let index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = cells.iter().enumerate().map(|(i, x)| (as_pair(x), i)).collect();
    let id_of = |x: &FreeCell| index.get(&as_pair(x)).copied();
    for (&(k, a, b), ab) in &comps {
        let Some(ab_i) = id_of(ab) else { continue };
        for cc in next(k, &cells[b]) {
            let lhs = comps.get(&(k, ab_i, cc));
            let bc = comps.get(&(k, b, cc)).and_then(id_of);
            let rhs = bc.and_then(|bc| comps.get(&(k, a, bc)));
            if lhs.is_none() || lhs != rhs {
                out.push(format!("associativity of ∘{k} fails"));
            }
        }
    }
    // interchange: (a ∘j b) ∘k (x ∘j y) = (a ∘k x) ∘j (b ∘k y) for j < k
    for (&(j, a, b), ab) in &comps {
        let Some(ab_i) = id_of(ab) else { continue };
        for k in j + 1..dim {
            for xy_i in next(k, ab) {
                // split xy as x ∘j y with x after a and y after b in ∘k
                for x in next(k, &cells[a]) {
                    for y in next(k, &cells[b]) {
                        if comps.get(&(j, x, y)).and_then(id_of) != Some(xy_i) {
                            continue;
                        }
                        let lhs = comps.get(&(k, ab_i, xy_i));
                        let ax = comps.get(&(k, a, x)).and_then(id_of);
                        let by = comps.get(&(k, b, y)).and_then(id_of);
                        let rhs = ax.zip(by).and_then(|(p, q)| comps.get(&(j, p, q)));
                        if lhs.is_none() || lhs != rhs {
                            out.push(format!("interchange of ∘{j} and ∘{k} fails"));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Elements of `left × right` whose χ-formula atom differs from the atom
/// computed on the product complex.
pub fn chi_disagreements(left: &ParityComplex, right: &ParityComplex) -> Vec<String> {
    let p = freecat::ProductComplex::new(left, right).unwrap();
    let mut out = Vec::new();
    for x in 0..left.len() {
        for a in 0..right.len() {
            let e = p.pair(x, a);
            if p.product_atom(x, a) != freecat::atom(&p.complex, e) {
                out.push(p.complex.id(e).to_string());
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Chain complexes with known homology

/// A random mod-`p` complex built as a sum of spheres `F[k]` and discs
/// `F[k] → F[k−1]`, then scrambled by invertible changes of basis. Returns
/// the complex and the Betti numbers of the construction.
pub fn random_chain(rng: &mut impl Rng, p: u64, top: usize, max_total: usize) -> (ChainComplex, Vec<usize>) {
    let mut ranks = vec![0usize; top + 1];
    let mut betti = vec![0usize; top + 1];
    // basis vectors: (degree, partner in degree − 1 or none)
    let mut gens: Vec<Vec<Option<usize>>> = vec![Vec::new(); top + 1];
    let total = rng.gen_range(0..=max_total);
    let mut used = 0;
    while used < total {
        let k = rng.gen_range(0..=top);
        if k > 0 && used + 2 <= total && rng.gen_bool(0.5) {
            let lower = ranks[k - 1];
            gens[k - 1].push(None);
            ranks[k - 1] += 1;
            gens[k].push(Some(lower));
            ranks[k] += 1;
            used += 2;
        } else {
            gens[k].push(None);
            ranks[k] += 1;
            betti[k] += 1;
            used += 1;
        }
    }
    let modp = |x: i64| x.rem_euclid(p as i64);
    let mut d: Vec<Vec<Vec<i64>>> = vec![Vec::new(); top + 1];
    for k in 1..=top {
        let mut m = vec![vec![0i64; ranks[k]]; ranks[k - 1]];
        for (j, g) in gens[k].iter().enumerate() {
            if let Some(i) = g {
                m[*i][j] = 1;
            }
        }
        d[k] = m;
    }
    // change of basis in each degree by random elementary operations:
    // new basis e'_j = e_j + λ e_i transforms d_k by column ops and d_{k+1} by row ops
    for k in 0..=top {
        let n = ranks[k];
        if n < 2 {
            continue;
        }
        for _ in 0..3 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let lam = rng.gen_range(1..p as i64);
            // columns of d_k: col_j += λ col_i
            if k > 0 {
                for row in d[k].iter_mut() {
                    row[j] = modp(row[j] + lam * row[i]);
                }
            }
            // rows of d_{k+1}: row_i −= λ row_j
            if k < top {
                let rj = d[k + 1][j].clone();
                for (x, y) in d[k + 1][i].iter_mut().zip(rj) {
                    *x = modp(*x - lam * y);
                }
            }
        }
    }
    let basis = (0..=top).map(|k| (0..ranks[k]).map(|i| format!("e{k}_{i}")).collect()).collect();
    (ChainComplex::new(top, p, basis, d).unwrap(), betti)
}

// ---------------------------------------------------------------------------
// Random functors

/// A random ω-functor `O(c) → a`, by depth-first search over shuffled
/// candidates.
pub fn random_functor<A: StrictCat>(rng: &mut impl Rng, c: &ParityComplex, a: &A) -> Option<Vec<A::Cell>> {
    let search = FunctorSearch::new(c).unwrap();
    fn go<A: StrictCat>(rng: &mut impl Rng, s: &FunctorSearch, a: &A, partial: &mut Vec<A::Cell>, len: usize) -> bool {
        if partial.len() == len {
            return true;
        }
        let mut cands = s.candidates(a, partial.len(), partial);
        cands.shuffle(rng);
        for x in cands {
            partial.push(x);
            if go(rng, s, a, partial, len) {
                return true;
            }
            partial.pop();
        }
        false
    }
    let mut partial = Vec::new();
    go(rng, &search, a, &mut partial, c.len()).then_some(partial)
}
