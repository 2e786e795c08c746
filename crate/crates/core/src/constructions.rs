//! Standard parity complexes and the product, join and cone constructions.
//!
//! Canonical ids:
//! - simplex elements are their vertex sets written in increasing order
//!   (`"013"`; vertices are comma separated once `n ≥ 10`);
//! - globs use `"(-,m)"`, `"(+,m)"` below the top and `"n"` for the top;
//! - products pair ids as `"(x|a)"`;
//! - joins name mixed elements `"(x*a)"` and keep the ids of the two summands,
//!   prefixing them with `"L:"`/`"R:"` only when the summands' ids collide.

use std::collections::HashSet;

use crate::complex::{ElementSpec, ParityComplex, Sign};
use crate::error::Result;

pub fn point() -> ParityComplex {
    ParityComplex::new(vec![ElementSpec::vertex("0")]).expect("point is well formed")
}

/// The join of two points, with ids `"0"`, `"1"` and `"e"`.
pub fn interval() -> ParityComplex {
    join(&point(), &point())
        .and_then(|j| {
            j.relabel(|id| match id {
                "L:0" => "0".to_string(),
                "R:0" => "1".to_string(),
                _ => "e".to_string(),
            })
        })
        .expect("interval is well formed")
}

/// Id of the simplex element with the given (increasing) vertices.
pub fn simplex_id(vertices: &[usize], n: usize) -> String {
    if n < 10 {
        vertices.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The parity `n`-simplex: `k`-elements are the `(k+1)`-subsets of `{0..n}`;
/// deleting the vertex at an even position gives a positive face, at an odd
/// position a negative face.
pub fn simplex(n: usize) -> ParityComplex {
    let mut specs = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        let verts: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
        let dim = verts.len() - 1;
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        if dim > 0 {
            for pos in 0..verts.len() {
                let mut face = verts.clone();
                face.remove(pos);
                let id = simplex_id(&face, n);
                if pos % 2 == 0 {
                    plus.push(id);
                } else {
                    minus.push(id);
                }
            }
        }
        specs.push(ElementSpec { id: simplex_id(&verts, n), dim, minus, plus });
    }
    ParityComplex::with_dim(n, specs).expect("simplex is well formed")
}

pub fn glob_id(sign: Sign, m: usize) -> String {
    format!("({sign},{m})")
}

/// The parity `n`-glob: two elements in each dimension below `n` and a single
/// top element.
pub fn glob(n: usize) -> ParityComplex {
    let mut specs = Vec::new();
    for m in 0..n {
        for sign in [Sign::Minus, Sign::Plus] {
            let (minus, plus) = if m == 0 {
                (vec![], vec![])
            } else {
                (vec![glob_id(Sign::Minus, m - 1)], vec![glob_id(Sign::Plus, m - 1)])
            };
            specs.push(ElementSpec { id: glob_id(sign, m), dim: m, minus, plus });
        }
    }
    let (minus, plus) = if n == 0 {
        (vec![], vec![])
    } else {
        (vec![glob_id(Sign::Minus, n - 1)], vec![glob_id(Sign::Plus, n - 1)])
    };
    specs.push(ElementSpec { id: n.to_string(), dim: n, minus, plus });
    ParityComplex::with_dim(n, specs).expect("glob is well formed")
}

/// The `n`-fold product of intervals.
pub fn cube(n: usize) -> ParityComplex {
    let mut c = point();
    if n == 0 {
        return c;
    }
    c = interval();
    for _ in 1..n {
        c = product(&c, &interval()).expect("cube is well formed");
    }
    c
}

pub fn pair_id(x: &str, a: &str) -> String {
    format!("({x}|{a})")
}

/// The product `C × D` with `(x, a)^ε = x^ε × {a} ∪ {x} × a^{ε(p)}`, where
/// `p = dim x` and `ε(p)` flips the sign when `p` is odd.
pub fn product(c: &ParityComplex, d: &ParityComplex) -> Result<ParityComplex> {
    let mut specs = Vec::with_capacity(c.len() * d.len());
    for x in 0..c.len() {
        let p = c.elem_dim(x);
        for a in 0..d.len() {
            let mut faces = [Vec::new(), Vec::new()];
            for (slot, sign) in [Sign::Minus, Sign::Plus].into_iter().enumerate() {
                for &y in c.faces(x, sign) {
                    faces[slot].push(pair_id(c.id(y), d.id(a)));
                }
                for &b in d.faces(a, sign.by_parity(p)) {
                    faces[slot].push(pair_id(c.id(x), d.id(b)));
                }
            }
            let [minus, plus] = faces;
            specs.push(ElementSpec {
                id: pair_id(c.id(x), d.id(a)),
                dim: p + d.elem_dim(a),
                minus,
                plus,
            });
        }
    }
    ParityComplex::with_dim(c.dim() + d.dim(), specs)
}

pub fn join_id(x: &str, a: &str) -> String {
    format!("({x}*{a})")
}

/// The join `C • D`.
///
/// For a mixed element `xa` with `p = dim x`, the faces are
/// `x⁻a ∪ xa⁻` / `x⁺a ∪ xa⁺` for odd `p` and `x⁻a ∪ xa⁺` / `x⁺a ∪ xa⁻` for
/// even `p`. The degenerate terms follow the point convention: when `p = 0`,
/// `x⁻a = ∅` and `x⁺a = {a}`; when `dim a = 0`, `xa⁻ = ∅` and `xa⁺ = {x}`.
pub fn join(c: &ParityComplex, d: &ParityComplex) -> Result<ParityComplex> {
    let c_ids: HashSet<&str> = c.elements().iter().map(|e| e.id.as_str()).collect();
    let mixed: HashSet<String> = c
        .elements()
        .iter()
        .flat_map(|x| d.elements().iter().map(move |a| join_id(&x.id, &a.id)))
        .collect();
    let collide = d.elements().iter().any(|e| c_ids.contains(e.id.as_str()))
        || c.elements().iter().chain(d.elements()).any(|e| mixed.contains(&e.id));
    let left = |id: &str| if collide { format!("L:{id}") } else { id.to_string() };
    let right = |id: &str| if collide { format!("R:{id}") } else { id.to_string() };

    let mut specs = Vec::new();
    for x in 0..c.len() {
        specs.push(ElementSpec {
            id: left(c.id(x)),
            dim: c.elem_dim(x),
            minus: c.faces(x, Sign::Minus).iter().map(|&y| left(c.id(y))).collect(),
            plus: c.faces(x, Sign::Plus).iter().map(|&y| left(c.id(y))).collect(),
        });
    }
    for a in 0..d.len() {
        specs.push(ElementSpec {
            id: right(d.id(a)),
            dim: d.elem_dim(a),
            minus: d.faces(a, Sign::Minus).iter().map(|&b| right(d.id(b))).collect(),
            plus: d.faces(a, Sign::Plus).iter().map(|&b| right(d.id(b))).collect(),
        });
    }
    for x in 0..c.len() {
        let p = c.elem_dim(x);
        for a in 0..d.len() {
            let q = d.elem_dim(a);
            // x^s a
            let left_part = |sign: Sign| -> Vec<String> {
                if p == 0 {
                    match sign {
                        Sign::Minus => vec![],
                        Sign::Plus => vec![right(d.id(a))],
                    }
                } else {
                    c.faces(x, sign).iter().map(|&y| join_id(c.id(y), d.id(a))).collect()
                }
            };
            // x a^s
            let right_part = |sign: Sign| -> Vec<String> {
                if q == 0 {
                    match sign {
                        Sign::Minus => vec![],
                        Sign::Plus => vec![left(c.id(x))],
                    }
                } else {
                    d.faces(a, sign).iter().map(|&b| join_id(c.id(x), d.id(b))).collect()
                }
            };
            let (rm, rp) = if p % 2 == 1 {
                (Sign::Minus, Sign::Plus)
            } else {
                (Sign::Plus, Sign::Minus)
            };
            let mut minus = left_part(Sign::Minus);
            minus.extend(right_part(rm));
            let mut plus = left_part(Sign::Plus);
            plus.extend(right_part(rp));
            specs.push(ElementSpec { id: join_id(c.id(x), d.id(a)), dim: p + q + 1, minus, plus });
        }
    }
    let dim = if c.is_empty() || d.is_empty() {
        c.dim().max(d.dim())
    } else {
        c.dim() + d.dim() + 1
    };
    ParityComplex::with_dim(dim, specs)
}

/// `C • point`.
pub fn right_cone(c: &ParityComplex) -> Result<ParityComplex> {
    join(c, &point())
}

/// `point • C`.
pub fn left_cone(c: &ParityComplex) -> Result<ParityComplex> {
    join(&point(), c)
}

/// Disjoint union; ids are prefixed `"L:"`/`"R:"` when they collide.
pub fn disjoint_union(c: &ParityComplex, d: &ParityComplex) -> Result<ParityComplex> {
    let c_ids: HashSet<&str> = c.elements().iter().map(|e| e.id.as_str()).collect();
    let collide = d.elements().iter().any(|e| c_ids.contains(e.id.as_str()));
    let tag = |p: &str, id: &str| if collide { format!("{p}{id}") } else { id.to_string() };
    let mut specs = Vec::new();
    for (cx, p) in [(c, "L:"), (d, "R:")] {
        for s in cx.specs() {
            specs.push(ElementSpec {
                id: tag(p, &s.id),
                dim: s.dim,
                minus: s.minus.iter().map(|m| tag(p, m)).collect(),
                plus: s.plus.iter().map(|m| tag(p, m)).collect(),
            });
        }
    }
    ParityComplex::with_dim(c.dim().max(d.dim()), specs)
}

/// Finds a bijection `a → b` preserving dimension and both face maps, by
/// backtracking in dimension order. Returns the image position of every
/// element of `a`.
pub fn find_isomorphism(a: &ParityComplex, b: &ParityComplex) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return None;
    }
    let signature = |c: &ParityComplex, i: usize| {
        (c.elem_dim(i), c.faces(i, Sign::Minus).len(), c.faces(i, Sign::Plus).len())
    };
    for k in 0..=a.dim() {
        let mut sa: Vec<_> = a.elements_of_dim(k).map(|i| signature(a, i)).collect();
        let mut sb: Vec<_> = b.elements_of_dim(k).map(|i| signature(b, i)).collect();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    let mut image = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    fn faces_match(
        a: &ParityComplex,
        b: &ParityComplex,
        image: &[usize],
        x: usize,
        y: usize,
    ) -> bool {
        [Sign::Minus, Sign::Plus].into_iter().all(|s| {
            let mut mapped: Vec<usize> = a.faces(x, s).iter().map(|&f| image[f]).collect();
            mapped.sort_unstable();
            mapped == b.faces(y, s)
        })
    }
    fn go(
        a: &ParityComplex,
        b: &ParityComplex,
        x: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.len() {
            return true;
        }
        let k = a.elem_dim(x);
        let sig = (k, a.faces(x, Sign::Minus).len(), a.faces(x, Sign::Plus).len());
        for y in b.elements_of_dim(k).collect::<Vec<_>>() {
            if used[y] {
                continue;
            }
            if (b.elem_dim(y), b.faces(y, Sign::Minus).len(), b.faces(y, Sign::Plus).len()) != sig {
                continue;
            }
            if !faces_match(a, b, image, x, y) {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if go(a, b, x + 1, image, used) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }
    // elements are stored in dimension order, so faces are mapped first
    go(a, b, 0, &mut image, &mut used).then_some(image)
}

pub fn is_isomorphic(a: &ParityComplex, b: &ParityComplex) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces(c: &ParityComplex, id: &str, sign: Sign) -> Vec<String> {
        let i = c.lookup(id).unwrap();
        let mut v: Vec<String> = c.faces(i, sign).iter().map(|&j| c.id(j).to_string()).collect();
        v.sort();
        v
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn simplex_faces_follow_parity_of_position() {
        let s2 = simplex(2);
        assert_eq!(faces(&s2, "012", Sign::Minus), ["02"]);
        assert_eq!(faces(&s2, "012", Sign::Plus), ["01", "12"]);
        let s1 = simplex(1);
        assert_eq!(faces(&s1, "01", Sign::Minus), ["0"]);
        assert_eq!(faces(&s1, "01", Sign::Plus), ["1"]);
    }

    #[test]
    fn element_counts() {
        for n in 0..=5 {
            let s = simplex(n);
            for k in 0..=n {
                assert_eq!(s.count_of_dim(k), binom(n + 1, k + 1));
            }
            assert_eq!(glob(n).len(), 2 * n + 1);
        }
        for n in 0..=3 {
            let c = cube(n);
            for k in 0..=n {
                assert_eq!(c.count_of_dim(k), binom(n, k) << (n - k));
            }
        }
        assert_eq!(point().len(), 1);
        assert_eq!(point().elem_dim(0), 0);
    }

    #[test]
    fn glob_top_faces() {
        let g3 = glob(3);
        assert_eq!(faces(&g3, "3", Sign::Minus), ["(-,2)"]);
        assert_eq!(faces(&g3, "3", Sign::Plus), ["(+,2)"]);
    }

    #[test]
    fn square_top_faces() {
        let sq = product(&interval(), &interval()).unwrap();
        assert_eq!(faces(&sq, "(e|e)", Sign::Minus), ["(0|e)", "(e|1)"]);
        assert_eq!(faces(&sq, "(e|e)", Sign::Plus), ["(1|e)", "(e|0)"]);
    }

    #[test]
    fn join_of_points_is_an_edge() {
        let j = join(&point(), &point()).unwrap();
        assert_eq!(faces(&j, "(0*0)", Sign::Minus), ["L:0"]);
        assert_eq!(faces(&j, "(0*0)", Sign::Plus), ["R:0"]);
        let i = interval();
        assert_eq!(faces(&i, "e", Sign::Minus), ["0"]);
        assert_eq!(faces(&i, "e", Sign::Plus), ["1"]);
    }

    #[test]
    fn cone_on_edge_is_triangle_under_relabeling() {
        let cone = join(&simplex(1), &point()).unwrap();
        let relabeled = cone
            .relabel(|id| match id {
                "L:0" => "0".into(),
                "L:1" => "1".into(),
                "L:01" => "01".into(),
                "R:0" => "2".into(),
                "(0*0)" => "02".into(),
                "(1*0)" => "12".into(),
                "(01*0)" => "012".into(),
                other => panic!("unexpected id {other}"),
            })
            .unwrap();
        assert_eq!(relabeled, simplex(2));
    }

    #[test]
    fn iterated_joins_of_points_are_simplices() {
        let mut j = point();
        for n in 1..=4 {
            j = join(&j, &point()).unwrap();
            assert!(is_isomorphic(&j, &simplex(n)), "n = {n}");
        }
        let left = join(&join(&point(), &point()).unwrap(), &point()).unwrap();
        let right = join(&point(), &join(&point(), &point()).unwrap()).unwrap();
        assert!(is_isomorphic(&left, &right));
        assert!(is_isomorphic(&left, &simplex(2)));
        assert!(is_isomorphic(&left_cone(&simplex(1)).unwrap(), &simplex(2)));
        assert!(is_isomorphic(&right_cone(&simplex(1)).unwrap(), &simplex(2)));
    }

    #[test]
    fn sizes_of_product_and_join() {
        let shapes = [point(), interval(), simplex(2), glob(2)];
        for c in &shapes {
            for d in &shapes {
                assert_eq!(product(c, d).unwrap().len(), c.len() * d.len());
                assert_eq!(join(c, d).unwrap().len(), c.len() + c.len() * d.len() + d.len());
            }
        }
    }

    #[test]
    fn product_swap_is_a_graded_bijection() {
        let shapes = [point(), interval(), simplex(2), glob(2)];
        for c in &shapes {
            for d in &shapes {
                let cd = product(c, d).unwrap();
                let dc = product(d, c).unwrap();
                for x in c.elements() {
                    for a in d.elements() {
                        let i = cd.lookup(&pair_id(&x.id, &a.id)).unwrap();
                        let j = dc.lookup(&pair_id(&a.id, &x.id)).unwrap();
                        assert_eq!(cd.elem_dim(i), dc.elem_dim(j));
                        // faces correspond as sets once both signs are pooled
                        let pool = |cx: &ParityComplex, e: usize, swap: bool| {
                            let mut v: Vec<String> = [Sign::Minus, Sign::Plus]
                                .iter()
                                .flat_map(|&s| cx.faces(e, s).iter().map(|&f| cx.id(f).to_string()))
                                .map(|id| if swap { swap_pair(&id) } else { id })
                                .collect();
                            v.sort();
                            v
                        };
                        assert_eq!(pool(&cd, i, false), pool(&dc, j, true));
                    }
                }
            }
        }
    }

    fn swap_pair(id: &str) -> String {
        // ids here are "(x|a)" with x, a free of '|'
        let inner = &id[1..id.len() - 1];
        let (x, a) = inner.split_once('|').unwrap();
        pair_id(a, x)
    }

    #[test]
    fn isomorphism_rejects_reversed_edge_orientation_mismatch() {
        let s1 = simplex(1);
        let g1 = glob(1);
        assert!(is_isomorphic(&s1, &g1));
        assert!(!is_isomorphic(&simplex(2), &glob(2)));
    }
}
