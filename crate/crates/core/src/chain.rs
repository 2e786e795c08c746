//! Based chain complexes with integer or mod-p coefficients, the chain
//! functor on parity complexes, tensor products, homology, and the strict
//! n-category `ϑR` of a mod-p chain complex.

use std::collections::HashMap;

use crate::complex::{ParityComplex, Sign};
use crate::constructions::{pair_id, product};
use crate::error::{Error, Result};
use crate::ncat::{CellSpec, CompSpec, FiniteNCat};

/// `d[k]` maps degree `k` to degree `k − 1`; rows are indexed by the
/// `(k−1)`-basis and columns by the `k`-basis. `d[0]` is empty. `p = 0` means
/// integer coefficients, otherwise entries are reduced into `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    top: usize,
    p: u64,
    basis: Vec<Vec<String>>,
    d: Vec<Vec<Vec<i64>>>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q))
}

impl ChainComplex {
    pub fn new(top: usize, p: u64, basis: Vec<Vec<String>>, mut d: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if basis.len() != top + 1 {
            return Err(Error::Malformed(format!("expected {} basis levels, got {}", top + 1, basis.len())));
        }
        d.resize(top + 1, Vec::new());
        if d.len() != top + 1 {
            return Err(Error::Malformed(format!("expected at most {} differentials", top + 1)));
        }
        d[0].clear();
        for k in 1..=top {
            let (rows, cols) = (basis[k - 1].len(), basis[k].len());
            if d[k].is_empty() && rows == 0 {
                continue;
            }
            if d[k].is_empty() {
                d[k] = vec![vec![0; cols]; rows];
            }
            if d[k].len() != rows || d[k].iter().any(|r| r.len() != cols) {
                return Err(Error::Malformed(format!("d{k} must be a {rows}×{cols} matrix")));
            }
            if p != 0 {
                for row in &mut d[k] {
                    for e in row.iter_mut() {
                        *e = e.rem_euclid(p as i64);
                    }
                }
            }
        }
        Ok(ChainComplex { top, p, basis, d })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn basis(&self, k: usize) -> &[String] {
        self.basis.get(k).map_or(&[], |b| b.as_slice())
    }

    pub fn rank_of(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// `d_k` as a `rank(k−1) × rank(k)` matrix; empty for `k = 0` or above top.
    pub fn differential(&self, k: usize) -> Vec<Vec<i64>> {
        if k == 0 || k > self.top {
            return Vec::new();
        }
        let (rows, cols) = (self.rank_of(k - 1), self.rank_of(k));
        if self.d[k].is_empty() {
            vec![vec![0; cols]; rows]
        } else {
            self.d[k].clone()
        }
    }

    fn entry(&self, k: usize, row: usize, col: usize) -> i64 {
        self.d[k].get(row).map_or(0, |r| r[col])
    }

    /// `d_k(column)` applied to a coefficient vector.
    pub fn apply(&self, k: usize, x: &[i64]) -> Vec<i64> {
        if k == 0 || k > self.top {
            return Vec::new();
        }
        let rows = self.rank_of(k - 1);
        let mut out = vec![0i64; rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (c, &xc) in x.iter().enumerate() {
                acc += self.entry(k, r, c) * xc;
            }
            *o = if self.p == 0 { acc } else { acc.rem_euclid(self.p as i64) };
        }
        out
    }

    /// Degrees `k` where `d_{k−1} ∘ d_k ≠ 0`.
    pub fn dd_defects(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for k in 2..=self.top {
            let (a, b) = (self.differential(k - 1), self.differential(k));
            let prod = mat_mul(&a, &b, self.p);
            if prod.iter().flatten().any(|&e| e != 0) {
                bad.push(k);
            }
        }
        bad
    }

    pub fn is_complex(&self) -> bool {
        self.dd_defects().is_empty()
    }

    /// The same complex with coefficients reduced mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<ChainComplex> {
        ChainComplex::new(self.top, p, self.basis.clone(), self.d.clone())
    }

    /// `dim ker d_k − rank d_{k+1}` over `F_p`, or over `Q` for integer
    /// coefficients (the rank of the rational homology).
    pub fn homology(&self, k: usize) -> usize {
        if k > self.top {
            return 0;
        }
        let rk = |j: usize| if j == 0 || j > self.top { 0 } else { rank(&self.differential(j), self.p) };
        self.rank_of(k) - rk(k) - rk(k + 1)
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], p: u64) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let s: i64 = (0..inner).map(|i| row[i] * b[i][c]).sum();
                    if p == 0 {
                        s
                    } else {
                        s.rem_euclid(p as i64)
                    }
                })
                .collect()
        })
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Matrix rank over `F_p`, or over `Q` when `p = 0` (fraction-free
/// elimination in `i128`).
pub fn rank(m: &[Vec<i64>], p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if p == 0 {
        let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&e| e as i128).collect()).collect();
        let mut r = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            for i in (r + 1)..rows {
                for j in (c + 1)..cols {
                    a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
                }
                a[i][c] = 0;
            }
            prev = a[r][c];
            r += 1;
            if r == rows {
                break;
            }
        }
        return r;
    }
    let pm = p as i64;
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|e| e.rem_euclid(pm)).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c] as u64, p - 2, p) as i64;
        for j in c..cols {
            a[r][j] = (a[r][j] * inv).rem_euclid(pm);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(pm);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// The chain complex `FC`: free on the elements, with `d(x) = Σx⁺ − Σx⁻`.
pub fn chain_complex(c: &ParityComplex) -> ChainComplex {
    let top = c.dim();
    let mut basis = vec![Vec::new(); top + 1];
    let mut pos = vec![0usize; c.len()];
    for (x, e) in c.elements().iter().enumerate() {
        pos[x] = basis[e.dim].len();
        basis[e.dim].push(e.id.clone());
    }
    let mut d = vec![Vec::new(); top + 1];
    for k in 1..=top {
        let mut m = vec![vec![0i64; basis[k].len()]; basis[k - 1].len()];
        for x in c.elements_of_dim(k) {
            for &y in c.faces(x, Sign::Plus) {
                m[pos[y]][pos[x]] += 1;
            }
            for &y in c.faces(x, Sign::Minus) {
                m[pos[y]][pos[x]] -= 1;
            }
        }
        d[k] = m;
    }
    ChainComplex::new(top, 0, basis, d).expect("chain complex of a parity complex is well formed")
}

/// `R ⊗ S` with `d(x ⊗ a) = dx ⊗ a + (−1)^p x ⊗ da`, `p = deg x`. The basis
/// of degree `n` lists pairs `(x|a)` ordered by `(deg x, x, a)`.
pub fn tensor(r: &ChainComplex, s: &ChainComplex) -> Result<ChainComplex> {
    if r.p != s.p {
        return Err(Error::Coefficients(format!("moduli {} and {} differ", r.p, s.p)));
    }
    let top = r.top + s.top;
    let mut basis = vec![Vec::new(); top + 1];
    let mut index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for n in 0..=top {
        for p in 0..=n.min(r.top) {
            let q = n - p;
            if q > s.top {
                continue;
            }
            for (i, x) in r.basis(p).iter().enumerate() {
                for (j, a) in s.basis(q).iter().enumerate() {
                    index.insert((p, i, q, j), basis[n].len());
                    basis[n].push(pair_id(x, a));
                }
            }
        }
    }
    let mut d = vec![Vec::new(); top + 1];
    for n in 1..=top {
        let mut m = vec![vec![0i64; basis[n].len()]; basis[n - 1].len()];
        for p in 0..=n.min(r.top) {
            let q = n - p;
            if q > s.top {
                continue;
            }
            let sign = if p % 2 == 0 { 1 } else { -1 };
            for i in 0..r.rank_of(p) {
                for j in 0..s.rank_of(q) {
                    let col = index[&(p, i, q, j)];
                    if p > 0 {
                        for i2 in 0..r.rank_of(p - 1) {
                            let e = r.entry(p, i2, i);
                            if e != 0 {
                                m[index[&(p - 1, i2, q, j)]][col] += e;
                            }
                        }
                    }
                    if q > 0 {
                        for j2 in 0..s.rank_of(q - 1) {
                            let e = s.entry(q, j2, j);
                            if e != 0 {
                                m[index[&(p, i, q - 1, j2)]][col] += sign * e;
                            }
                        }
                    }
                }
            }
        }
        d[n] = m;
    }
    ChainComplex::new(top, r.p, basis, d)
}

/// Whether `F(C × D)` and `FC ⊗ FD` have equal differentials under the
/// basis bijection `(x|a) ↔ x ⊗ a`.
pub fn check_product_iso(c: &ParityComplex, d: &ParityComplex) -> Result<bool> {
    let lhs = chain_complex(&product(c, d)?);
    let rhs = tensor(&chain_complex(c), &chain_complex(d))?;
    Ok(same_up_to_basis_order(&lhs, &rhs))
}

/// Equality of differentials after matching bases by id.
pub fn same_up_to_basis_order(a: &ChainComplex, b: &ChainComplex) -> bool {
    if a.top != b.top || a.p != b.p {
        return false;
    }
    let mut perm = Vec::with_capacity(a.top + 1);
    for k in 0..=a.top {
        let pos: HashMap<&str, usize> = b.basis(k).iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if pos.len() != a.rank_of(k) {
            return false;
        }
        let mut p = Vec::with_capacity(a.rank_of(k));
        for id in a.basis(k) {
            match pos.get(id.as_str()) {
                Some(&i) => p.push(i),
                None => return false,
            }
        }
        perm.push(p);
    }
    for k in 1..=a.top {
        for r in 0..a.rank_of(k - 1) {
            for c in 0..a.rank_of(k) {
                if a.entry(k, r, c) != b.entry(k, perm[k - 1][r], perm[k][c]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Renders a coefficient vector as `[c0c1…]` (comma separated when `p > 10`).
fn vec_id(v: &[i64], p: u64) -> String {
    let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    let sep = if p > 10 { "," } else { "" };
    format!("[{}]", parts.join(sep))
}

/// A cell of `ϑR`: components `x_k, …, x_0`, listed bottom-up.
type Tuple = Vec<Vec<i64>>;

fn tuple_id(t: &Tuple, p: u64) -> String {
    t.iter().rev().map(|v| vec_id(v, p)).collect()
}

fn all_vectors(len: usize, p: u64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p as i64).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// The strict n-category `ϑR` of a mod-p chain complex, `n = top`.
///
/// A `k`-cell is a tuple `(x_k, …, x_0)` with `x_i ∈ R_i` and `x_k ≠ 0` for
/// `k > 0` (a zero top component is the identity of the shorter tuple). Its
/// `j`-source is `(x_j, …, x_0)` and its `j`-target is
/// `(x_j + d x_{j+1}, x_{j−1}, …, x_0)`. Every composite adds the components
/// above the composition dimension.
pub fn theta_cat(r: &ChainComplex) -> Result<FiniteNCat> {
    let p = r.p;
    if p == 0 {
        return Err(Error::Coefficients("ϑ needs mod-p coefficients".into()));
    }
    if !r.is_complex() {
        return Err(Error::Malformed("d∘d ≠ 0".into()));
    }
    let n = r.top;
    let canon = |mut t: Tuple| -> Tuple {
        while t.len() > 1 && t.last().is_some_and(|v| v.iter().all(|&e| e == 0)) {
            t.pop();
        }
        t
    };
    // tuples of each dimension
    let mut cells: Vec<Tuple> = Vec::new();
    let mut layer: Vec<Tuple> = all_vectors(r.rank_of(0), p).into_iter().map(|v| vec![v]).collect();
    cells.extend(layer.iter().cloned());
    for k in 1..=n {
        let vs = all_vectors(r.rank_of(k), p);
        let mut next = Vec::new();
        for t in &layer {
            for v in &vs {
                let mut u = t.clone();
                u.push(v.clone());
                next.push(u);
            }
        }
        cells.extend(next.iter().filter(|u| u[k].iter().any(|&e| e != 0)).cloned());
        layer = next;
    }
    let src = |t: &Tuple, j: usize| -> Tuple { canon(t[..=j].to_vec()) };
    let tgt = |t: &Tuple, j: usize| -> Tuple {
        let mut u = t[..=j].to_vec();
        let dx = r.apply(j + 1, &t[j + 1]);
        for (a, b) in u[j].iter_mut().zip(dx) {
            *a = (*a + b).rem_euclid(p as i64);
        }
        canon(u)
    };
    let id = |t: &Tuple| tuple_id(t, p);
    let dim_of = |t: &Tuple| t.len() - 1;
    let specs: Vec<CellSpec> = cells
        .iter()
        .map(|t| {
            let d = dim_of(t);
            CellSpec {
                id: id(t),
                dim: d,
                src: (0..d).map(|j| id(&src(t, j))).collect(),
                tgt: (0..d).map(|j| id(&tgt(t, j))).collect(),
            }
        })
        .collect();
    let mut comps = Vec::new();
    for j in 0..n {
        let mut by_src: HashMap<Tuple, Vec<&Tuple>> = HashMap::new();
        for t in cells.iter().filter(|t| dim_of(t) > j) {
            by_src.entry(src(t, j)).or_default().push(t);
        }
        for a in cells.iter().filter(|t| dim_of(t) > j) {
            for b in by_src.get(&tgt(a, j)).into_iter().flatten() {
                let len = a.len().max(b.len());
                let mut res: Tuple = Vec::with_capacity(len);
                for i in 0..len {
                    if i <= j {
                        res.push(a[i].clone());
                    } else {
                        let zero = vec![0; r.rank_of(i)];
                        let (x, y) = (a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero));
                        res.push(x.iter().zip(y).map(|(u, v)| (u + v).rem_euclid(p as i64)).collect());
                    }
                }
                comps.push(CompSpec { k: j, a: id(a), b: id(b), r: id(&canon(res)) });
            }
        }
    }
    FiniteNCat::new(n, specs, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{glob, interval, point, simplex};
    use crate::ncat::validate_cat;

    fn cc(p: u64, basis: &[&[&str]], d: Vec<Vec<Vec<i64>>>) -> ChainComplex {
        let basis = basis.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect();
        ChainComplex::new(d.len().saturating_sub(1), p, basis, d).unwrap()
    }

    #[test]
    fn chains_of_an_edge() {
        let f = chain_complex(&simplex(1));
        assert_eq!(f.basis(0), ["0", "1"]);
        assert_eq!(f.differential(1), vec![vec![-1], vec![1]]);
        assert!(chain_complex(&point()).differential(1).is_empty());
        assert!(chain_complex(&simplex(3)).is_complex());
    }

    #[test]
    fn tensor_of_edges() {
        let f = chain_complex(&simplex(1));
        let t = tensor(&f, &f).unwrap();
        let col = t.basis(2).iter().position(|b| b == "(01|01)").unwrap();
        let d = t.differential(2);
        let coeff = |id: &str| d[t.basis(1).iter().position(|b| b == id).unwrap()][col];
        // (1 − 0) ⊗ 01 − 01 ⊗ (1 − 0)
        assert_eq!(coeff("(1|01)"), 1);
        assert_eq!(coeff("(0|01)"), -1);
        assert_eq!(coeff("(01|1)"), -1);
        assert_eq!(coeff("(01|0)"), 1);
        assert!(t.is_complex());
    }

    #[test]
    fn products_match_tensors() {
        assert!(check_product_iso(&interval(), &interval()).unwrap());
        assert!(check_product_iso(&point(), &glob(2)).unwrap());
        assert!(check_product_iso(&simplex(2), &simplex(1)).unwrap());
    }

    #[test]
    fn homology_examples() {
        let zero = cc(2, &[&["a", "b"], &["e"]], vec![vec![], vec![vec![0], vec![0]]]);
        assert_eq!(zero.homology(0), 2);
        assert_eq!(zero.homology(1), 1);
        let id = cc(2, &[&["a"], &["e"]], vec![vec![], vec![vec![1]]]);
        assert_eq!((id.homology(0), id.homology(1)), (0, 0));
        let tri = chain_complex(&simplex(2)).reduce_mod(2).unwrap();
        assert_eq!((tri.homology(0), tri.homology(1), tri.homology(2)), (1, 0, 0));
        // over the integers the rank is rational
        let two = cc(0, &[&["a"], &["e"]], vec![vec![], vec![vec![2]]]);
        assert_eq!(two.homology(0), 0);
        assert!(matches!(ChainComplex::new(0, 4, vec![vec![]], vec![]), Err(Error::NotPrime(4))));
    }

    #[test]
    fn theta_of_small_complexes() {
        let pt = cc(2, &[&["a"]], vec![vec![]]);
        let t = theta_cat(&pt).unwrap();
        assert_eq!(t.len(), 2);
        assert!(validate_cat(&t).is_ok());
        let id = cc(2, &[&["a"], &["e"]], vec![vec![], vec![vec![1]]]);
        let t = theta_cat(&id).unwrap();
        assert_eq!(t.len(), 4);
        assert!(validate_cat(&t).is_ok());
        let e = t.lookup("[1][0]").unwrap();
        assert_eq!(t.id(t.tgt(e, 0)), "[1]");
        let back = t.lookup("[1][1]").unwrap();
        // composites add the top components
        assert_eq!(t.id(t.compose(0, e, back).unwrap()), "[0]");
    }

    #[test]
    fn theta_is_lawful_in_three_dimensions() {
        let r = cc(
            2,
            &[&["a"], &["e", "f"], &["s"], &["v"]],
            vec![vec![], vec![vec![1, 1]], vec![vec![1], vec![1]], vec![vec![0]]],
        );
        assert!(r.is_complex());
        let t = theta_cat(&r).unwrap();
        assert!(validate_cat(&t).is_ok(), "{}", validate_cat(&t));
    }
}
