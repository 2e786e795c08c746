//! Truncated simplicial sets, the nerve of a finite strict n-category through
//! the orientals, and the classical nerve of a 1-category.

use std::collections::HashMap;

use crate::constructions::{simplex, simplex_id};
use crate::error::{Error, Result};
use crate::functor::{enumerate_functors, FunctorSearch};
use crate::ncat::FiniteNCat;

/// Levels `S_0 … S_top` with faces `d_r: S_k → S_{k−1}` (`0 ≤ r ≤ k`) and
/// degeneracies `s_r: S_k → S_{k+1}` (`0 ≤ r ≤ k`, `k < top`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    levels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    /// `faces[k][r]` and `degens[k][r]` are tables on `S_k`; `faces[0]` and
    /// `degens[top]` are empty.
    pub fn new(levels: Vec<Vec<String>>, faces: Vec<Vec<Vec<usize>>>, degens: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let top = levels.len().checked_sub(1).ok_or_else(|| Error::Malformed("no levels".into()))?;
        let shape = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Malformed(what.to_string())) };
        shape(faces.len() == top + 1 && degens.len() == top + 1, "one face and degeneracy list per level")?;
        for k in 0..=top {
            let n = levels[k].len();
            let nf = if k == 0 { 0 } else { k + 1 };
            let nd = if k == top { 0 } else { k + 1 };
            shape(faces[k].len() == nf && degens[k].len() == nd, "wrong number of operators")?;
            for t in &faces[k] {
                shape(t.len() == n && t.iter().all(|&y| y < levels[k - 1].len()), "face table out of range")?;
            }
            for t in &degens[k] {
                shape(t.len() == n && t.iter().all(|&y| y < levels[k + 1].len()), "degeneracy table out of range")?;
            }
        }
        Ok(SimplicialSet { levels, faces, degens })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[String] {
        &self.levels[k]
    }

    pub fn len(&self, k: usize) -> usize {
        self.levels[k].len()
    }

    pub fn face(&self, k: usize, r: usize, x: usize) -> usize {
        self.faces[k][r][x]
    }

    pub fn degen(&self, k: usize, r: usize, x: usize) -> usize {
        self.degens[k][r][x]
    }

    /// Violated simplicial identities, as readable strings.
    pub fn identity_violations(&self) -> Vec<String> {
        let top = self.top();
        let mut bad = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                bad.push(what);
            }
        };
        for k in 0..=top {
            for x in 0..self.len(k) {
                // d_i d_j = d_{j−1} d_i for i < j
                if k >= 2 {
                    for j in 0..=k {
                        for i in 0..j {
                            let l = self.face(k - 1, i, self.face(k, j, x));
                            let r = self.face(k - 1, j - 1, self.face(k, i, x));
                            check(l == r, format!("d{i}d{j} ≠ d{}d{i} at level {k}, {}", j - 1, self.levels[k][x]));
                        }
                    }
                }
                if k < top {
                    for j in 0..=k {
                        let y = self.degen(k, j, x);
                        for i in 0..=k + 1 {
                            let l = self.face(k + 1, i, y);
                            let r = if i == j || i == j + 1 {
                                Some(x)
                            } else if k == 0 {
                                None
                            } else if i < j {
                                Some(self.degen(k - 1, j - 1, self.face(k, i, x)))
                            } else {
                                Some(self.degen(k - 1, j, self.face(k, i - 1, x)))
                            };
                            if let Some(r) = r {
                                check(l == r, format!("d{i}s{j} at level {k}, {}", self.levels[k][x]));
                            }
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i for i ≤ j
                if k + 2 <= top {
                    for j in 0..=k {
                        for i in 0..=j {
                            let l = self.degen(k + 1, i, self.degen(k, j, x));
                            let r = self.degen(k + 1, j + 1, self.degen(k, i, x));
                            check(l == r, format!("s{i}s{j} ≠ s{}s{i} at level {k}, {}", j + 1, self.levels[k][x]));
                        }
                    }
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.identity_violations().is_empty()
    }

    /// A levelwise bijection commuting with faces and degeneracies, if the
    /// given per-level matching (`map[k][x]` in `other`) is one.
    pub fn is_isomorphism(&self, other: &SimplicialSet, map: &[Vec<usize>]) -> bool {
        if self.top() != other.top() || map.len() != self.levels.len() {
            return false;
        }
        for k in 0..=self.top() {
            if self.len(k) != other.len(k) || map[k].len() != self.len(k) {
                return false;
            }
            let mut hit = vec![false; other.len(k)];
            for &y in &map[k] {
                if y >= hit.len() || std::mem::replace(&mut hit[y], true) {
                    return false;
                }
            }
        }
        for k in 0..=self.top() {
            for x in 0..self.len(k) {
                for r in 0..self.faces[k].len() {
                    if map[k - 1][self.face(k, r, x)] != other.face(k, r, map[k][x]) {
                        return false;
                    }
                }
                for r in 0..self.degens[k].len() {
                    if map[k + 1][self.degen(k, r, x)] != other.degen(k, r, map[k][x]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Vertex lists of the elements of `simplex(n)`, by element position.
pub fn simplex_vertices(n: usize) -> Vec<Vec<usize>> {
    let s = simplex(n);
    let mut out = vec![Vec::new(); s.len()];
    for mask in 1u64..(1u64 << (n + 1)) {
        let verts: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
        let pos = s.lookup(&simplex_id(&verts, n)).expect("subset of the simplex");
        out[pos] = verts;
    }
    out
}

/// `δ_r: [m−1] → [m]`, skipping `r`.
pub fn coface(r: usize, i: usize) -> usize {
    if i < r {
        i
    } else {
        i + 1
    }
}

/// `σ_r: [m+1] → [m]`, hitting `r` twice.
pub fn codegeneracy(r: usize, i: usize) -> usize {
    if i <= r {
        i
    } else {
        i - 1
    }
}

/// Element position of the image of each element of `simplex(from)` under a
/// monotone map of vertices `[from] → [to]` (the image subset).
pub fn simplex_map(from: usize, to: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    let target = simplex(to);
    simplex_vertices(from)
        .into_iter()
        .map(|vs| {
            let mut img: Vec<usize> = vs.into_iter().map(&f).collect();
            img.dedup();
            target.lookup(&simplex_id(&img, to)).expect("monotone image")
        })
        .collect()
}

fn assignment_id(c: &crate::complex::ParityComplex, a: &FiniteNCat, f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().enumerate().map(|(x, &img)| format!("{}={}", c.id(x), a.id(img))).collect();
    parts.join(" ")
}

/// `(Ner A)_k = ω-Cat(O_k, A)` for `k ≤ m`. Faces and degeneracies act by
/// precomposition with the maps of simplices: a degenerate image of an
/// element is read as an identity.
pub fn nerve(a: &FiniteNCat, m: usize, cap: usize) -> Result<(SimplicialSet, Vec<Vec<Vec<usize>>>)> {
    let mut functors = Vec::with_capacity(m + 1);
    for k in 0..=m {
        functors.push(enumerate_functors(&simplex(k), a, None, cap)?);
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        functors.iter().map(|l| l.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    let mut faces = vec![Vec::new(); m + 1];
    let mut degens = vec![Vec::new(); m + 1];
    for k in 0..=m {
        if k > 0 {
            for r in 0..=k {
                let delta = simplex_map(k - 1, k, |i| coface(r, i));
                let mut table = Vec::with_capacity(functors[k].len());
                for f in &functors[k] {
                    let g: Vec<usize> = delta.iter().map(|&y| f[y]).collect();
                    table.push(*index[k - 1].get(&g).ok_or_else(|| Error::InvalidCategory("face is not a functor".into()))?);
                }
                faces[k].push(table);
            }
        }
        if k < m {
            let target = simplex(k + 1);
            let search = FunctorSearch::new(&target)?;
            for r in 0..=k {
                let sigma = simplex_map(k + 1, k, |i| codegeneracy(r, i));
                let mut table = Vec::with_capacity(functors[k].len());
                for f in &functors[k] {
                    let g: Vec<usize> = sigma.iter().map(|&y| f[y]).collect();
                    if !search.is_functor(a, &g) {
                        return Err(Error::InvalidCategory("degeneracy is not a functor".into()));
                    }
                    table.push(index[k + 1][&g]);
                }
                degens[k].push(table);
            }
        }
    }
    let levels = (0..=m)
        .map(|k| {
            let s = simplex(k);
            functors[k].iter().map(|f| assignment_id(&s, a, f)).collect()
        })
        .collect();
    Ok((SimplicialSet::new(levels, faces, degens)?, functors))
}

/// Composable strings of a 1-category: level 0 lists objects as `[x]`,
/// level `k ≥ 1` lists `[f_1, …, f_k]` with identities written as objects.
pub fn composable_strings(a: &FiniteNCat, k: usize) -> Vec<Vec<usize>> {
    let arrows: Vec<usize> = (0..a.len()).filter(|&c| a.cell_dim(c) <= 1).collect();
    if k == 0 {
        return a.zero_cells().iter().map(|&x| vec![x]).collect();
    }
    let mut out: Vec<Vec<usize>> = arrows.iter().map(|&f| vec![f]).collect();
    for _ in 1..k {
        out = out
            .into_iter()
            .flat_map(|s| {
                let end = a.tgt(*s.last().expect("nonempty"), 0);
                arrows.iter().filter(move |&&g| a.src(g, 0) == end).map(move |&g| {
                    let mut t = s.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

/// The classical nerve of a 1-category, truncated at level `m`.
pub fn classical_nerve(a: &FiniteNCat, m: usize) -> Result<SimplicialSet> {
    if a.dim() > 1 {
        return Err(Error::InvalidCategory("classical nerve needs a 1-category".into()));
    }
    let strings: Vec<Vec<Vec<usize>>> = (0..=m).map(|k| composable_strings(a, k)).collect();
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        strings.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let vertex = |s: &[usize], i: usize| if i < s.len() { a.src(s[i], 0) } else { a.tgt(s[s.len() - 1], 0) };
    let comp = |f: usize, g: usize| a.compose(0, f, g).ok_or_else(|| Error::InvalidCategory("missing composite".into()));
    let mut faces = vec![Vec::new(); m + 1];
    let mut degens = vec![Vec::new(); m + 1];
    for k in 0..=m {
        if k > 0 {
            for r in 0..=k {
                let mut table = Vec::new();
                for s in &strings[k] {
                    let t: Vec<usize> = if k == 1 {
                        vec![vertex(s, 1 - r)]
                    } else if r == 0 {
                        s[1..].to_vec()
                    } else if r == k {
                        s[..k - 1].to_vec()
                    } else {
                        let mut t = s[..r - 1].to_vec();
                        t.push(comp(s[r - 1], s[r])?);
                        t.extend_from_slice(&s[r + 1..]);
                        t
                    };
                    table.push(index[k - 1][&t]);
                }
                faces[k].push(table);
            }
        }
        if k < m {
            for r in 0..=k {
                let mut table = Vec::new();
                for s in &strings[k] {
                    let t: Vec<usize> = if k == 0 {
                        vec![s[0]]
                    } else {
                        let mut t = s[..r].to_vec();
                        t.push(vertex(s, r));
                        t.extend_from_slice(&s[r..]);
                        t
                    };
                    table.push(index[k + 1][&t]);
                }
                degens[k].push(table);
            }
        }
    }
    let levels = strings
        .iter()
        .map(|l| l.iter().map(|s| s.iter().map(|&c| a.id(c)).collect::<Vec<_>>().join("|")).collect())
        .collect();
    SimplicialSet::new(levels, faces, degens)
}

/// Whether the oriental nerve of a 1-category is isomorphic to its classical
/// nerve through `F ↦ [F(01), F(12), …]`.
pub fn nerve_matches_classical(a: &FiniteNCat, m: usize, cap: usize) -> Result<bool> {
    let (ner, functors) = nerve(a, m, cap)?;
    let classical = classical_nerve(a, m)?;
    let strings: Vec<Vec<Vec<usize>>> = (0..=m).map(|k| composable_strings(a, k)).collect();
    let mut map = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let s = simplex(k);
        let index: HashMap<&Vec<usize>, usize> = strings[k].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut level = Vec::with_capacity(functors[k].len());
        for f in &functors[k] {
            let key: Vec<usize> = if k == 0 {
                vec![f[0]]
            } else {
                (0..k).map(|i| f[s.lookup(&simplex_id(&[i, i + 1], k)).expect("edge")]).collect()
            };
            match index.get(&key) {
                Some(&j) => level.push(j),
                None => return Ok(false),
            }
        }
        map.push(level);
    }
    Ok(ner.is_isomorphism(&classical, &map))
}
