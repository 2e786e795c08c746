//! Parity complexes as data.
//!
//! A parity complex is a finite graded set where every element of positive
//! dimension carries two sets of faces one dimension down, its negative and
//! its positive faces. Elements are stored sorted by `(dim, id)`; internal
//! code refers to them by position in that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::order::TriangleOrder;

/// A set of elements of one complex, indexed by element position.
pub type ElemSet = FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// `self` when `parity` is even, the other sign when it is odd.
    pub fn by_parity(self, parity: usize) -> Sign {
        if parity.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub id: String,
    pub dim: usize,
}

/// Input record for [`ParityComplex::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSpec {
    pub id: String,
    pub dim: usize,
    pub minus: Vec<String>,
    pub plus: Vec<String>,
}

impl ElementSpec {
    pub fn vertex(id: impl Into<String>) -> Self {
        ElementSpec { id: id.into(), dim: 0, minus: Vec::new(), plus: Vec::new() }
    }

    pub fn new<S: Into<String>>(
        id: impl Into<String>,
        dim: usize,
        minus: impl IntoIterator<Item = S>,
        plus: impl IntoIterator<Item = S>,
    ) -> Self {
        ElementSpec {
            id: id.into(),
            dim,
            minus: minus.into_iter().map(Into::into).collect(),
            plus: plus.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParityComplex {
    dim: usize,
    elements: Vec<Element>,
    index: HashMap<String, usize>,
    minus: Vec<Vec<usize>>,
    plus: Vec<Vec<usize>>,
    by_dim: Vec<ElemSet>,
}

impl PartialEq for ParityComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.elements == other.elements
            && self.minus == other.minus
            && self.plus == other.plus
    }
}

impl Eq for ParityComplex {}

impl ParityComplex {
    /// Builds a complex from element records.
    ///
    /// Only structural problems are rejected here (duplicate or unresolved
    /// ids); axiom violations are reported by [`ParityComplex::validate`].
    pub fn new(specs: Vec<ElementSpec>) -> Result<Self> {
        let top = specs.iter().map(|s| s.dim).max().unwrap_or(0);
        Self::with_dim(top, specs)
    }

    /// Like [`ParityComplex::new`] but with an explicit top dimension, which
    /// may exceed the largest element dimension.
    pub fn with_dim(dim: usize, mut specs: Vec<ElementSpec>) -> Result<Self> {
        specs.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut index = HashMap::with_capacity(specs.len());
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(s.id.clone()));
            }
            if s.dim > dim {
                return Err(Error::Malformed(format!(
                    "element `{}` has dimension {} above the complex dimension {dim}",
                    s.id, s.dim
                )));
            }
        }
        let resolve = |ids: &[String]| -> Result<Vec<usize>> {
            let mut out: Vec<usize> = ids
                .iter()
                .map(|id| index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.clone())))
                .collect::<Result<_>>()?;
            out.sort_unstable();
            out.dedup();
            Ok(out)
        };
        let mut minus = Vec::with_capacity(specs.len());
        let mut plus = Vec::with_capacity(specs.len());
        for s in &specs {
            minus.push(resolve(&s.minus)?);
            plus.push(resolve(&s.plus)?);
        }
        let n = specs.len();
        let mut by_dim = vec![FixedBitSet::with_capacity(n); dim + 1];
        for (i, s) in specs.iter().enumerate() {
            by_dim[s.dim].insert(i);
        }
        let elements = specs.into_iter().map(|s| Element { id: s.id, dim: s.dim }).collect();
        Ok(ParityComplex { dim, elements, index, minus, plus, by_dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.elements[i].id
    }

    pub fn elem_dim(&self, i: usize) -> usize {
        self.elements[i].dim
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn try_lookup(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Faces of one element, as sorted element positions.
    pub fn faces(&self, i: usize, sign: Sign) -> &[usize] {
        match sign {
            Sign::Minus => &self.minus[i],
            Sign::Plus => &self.plus[i],
        }
    }

    /// Positions of the elements of dimension `k`, in `(dim, id)` order.
    pub fn elements_of_dim(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_dim.get(k).into_iter().flat_map(|s| s.ones())
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, |s| s.count_ones(..))
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn set_of(&self, items: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut s = self.empty_set();
        s.extend(items);
        s
    }

    pub fn set_from_ids<S: AsRef<str>>(&self, ids: impl IntoIterator<Item = S>) -> Result<ElemSet> {
        let mut s = self.empty_set();
        for id in ids {
            s.insert(self.lookup(id.as_ref())?);
        }
        Ok(s)
    }

    /// Ids of the members of `s` in `(dim, id)` order.
    pub fn ids_of(&self, s: &ElemSet) -> Vec<String> {
        s.ones().map(|i| self.elements[i].id.clone()).collect()
    }

    /// The slice `S_k`.
    pub fn slice(&self, s: &ElemSet, k: usize) -> ElemSet {
        match self.by_dim.get(k) {
            Some(d) => s.intersection(d).collect_set(self.len()),
            None => self.empty_set(),
        }
    }

    /// The truncation `S^(k)`: all members of dimension at most `k`.
    pub fn upto(&self, s: &ElemSet, k: usize) -> ElemSet {
        let mut out = s.clone();
        out.intersect_with(&self.upto_mask(k));
        out
    }

    /// All elements of dimension `k`.
    pub fn dim_mask(&self, k: usize) -> ElemSet {
        self.by_dim.get(k).cloned().unwrap_or_else(|| self.empty_set())
    }

    /// All elements of dimension at most `k`.
    pub fn upto_mask(&self, k: usize) -> ElemSet {
        let mut out = self.empty_set();
        for d in self.by_dim.iter().take(k + 1) {
            out.union_with(d);
        }
        out
    }

    /// Union of the `sign`-faces of all members of `s`; members of dimension
    /// zero contribute nothing.
    pub fn face_bits(&self, s: &ElemSet, sign: Sign) -> ElemSet {
        let mut out = self.empty_set();
        for i in s.ones() {
            out.extend(self.faces(i, sign).iter().copied());
        }
        out
    }

    /// `S⁻` or `S⁺` for a set of element ids.
    pub fn face_set<S: AsRef<str>>(
        &self,
        ids: impl IntoIterator<Item = S>,
        sign: Sign,
    ) -> Result<BTreeSet<String>> {
        let mut out = BTreeSet::new();
        for id in ids {
            let i = self.lookup(id.as_ref())?;
            if self.elements[i].dim == 0 {
                return Err(Error::DimZeroFaces(id.as_ref().to_string()));
            }
            out.extend(self.faces(i, sign).iter().map(|&j| self.elements[j].id.clone()));
        }
        Ok(out)
    }

    pub fn triangle_order(&self) -> TriangleOrder {
        TriangleOrder::new(self)
    }

    /// Checks the parity-complex axioms enforced by this crate: face grading,
    /// nonempty faces in positive dimension, disjointness of `x⁻` and `x⁺`,
    /// the mixed-face equation `x⁻⁻ ∪ x⁺⁺ = x⁻⁺ ∪ x⁺⁻`, and antisymmetry of
    /// the solid triangle order.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            for sign in [Sign::Minus, Sign::Plus] {
                for &f in self.faces(i, sign) {
                    if e.dim == 0 || self.elements[f].dim + 1 != e.dim {
                        violations.push(Violation::FaceGrading {
                            element: e.id.clone(),
                            face: self.elements[f].id.clone(),
                            sign,
                        });
                    }
                }
                if e.dim > 0 && self.faces(i, sign).is_empty() {
                    violations.push(Violation::EmptyFaces { element: e.id.clone(), sign });
                }
            }
            let common: Vec<String> = self.minus[i]
                .iter()
                .filter(|f| self.plus[i].binary_search(f).is_ok())
                .map(|&f| self.elements[f].id.clone())
                .collect();
            if !common.is_empty() {
                violations.push(Violation::FacesNotDisjoint { element: e.id.clone(), common });
            }
            if e.dim > 1 {
                let m = self.set_of(self.minus[i].iter().copied());
                let p = self.set_of(self.plus[i].iter().copied());
                let mut lhs = self.face_bits(&m, Sign::Minus);
                lhs.union_with(&self.face_bits(&p, Sign::Plus));
                let mut rhs = self.face_bits(&m, Sign::Plus);
                rhs.union_with(&self.face_bits(&p, Sign::Minus));
                if lhs != rhs {
                    violations.push(Violation::MixedFaces {
                        element: e.id.clone(),
                        outer: self.ids_of(&lhs),
                        inner: self.ids_of(&rhs),
                    });
                }
            }
        }
        let order = self.triangle_order();
        if let Some(cycle) = order.cycle() {
            violations.push(Violation::NotAntisymmetric {
                cycle: cycle.into_iter().map(|i| self.elements[i].id.clone()).collect(),
            });
        }
        ValidationReport { violations }
    }

    /// Returns a copy with every id rewritten by `f`.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<ParityComplex> {
        let new_ids: Vec<String> = self.elements.iter().map(|e| f(&e.id)).collect();
        let specs = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| ElementSpec {
                id: new_ids[i].clone(),
                dim: e.dim,
                minus: self.minus[i].iter().map(|&j| new_ids[j].clone()).collect(),
                plus: self.plus[i].iter().map(|&j| new_ids[j].clone()).collect(),
            })
            .collect();
        ParityComplex::with_dim(self.dim, specs)
    }

    pub fn specs(&self) -> Vec<ElementSpec> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, e)| ElementSpec {
                id: e.id.clone(),
                dim: e.dim,
                minus: self.minus[i].iter().map(|&j| self.elements[j].id.clone()).collect(),
                plus: self.plus[i].iter().map(|&j| self.elements[j].id.clone()).collect(),
            })
            .collect()
    }
}

trait CollectSet {
    fn collect_set(self, len: usize) -> ElemSet;
}

impl<I: Iterator<Item = usize>> CollectSet for I {
    fn collect_set(self, len: usize) -> ElemSet {
        let mut s = FixedBitSet::with_capacity(len);
        s.extend(self);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    FaceGrading { element: String, face: String, sign: Sign },
    EmptyFaces { element: String, sign: Sign },
    FacesNotDisjoint { element: String, common: Vec<String> },
    MixedFaces { element: String, outer: Vec<String>, inner: Vec<String> },
    NotAntisymmetric { cycle: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FaceGrading { element, face, sign } => {
                write!(f, "{element}: face {face} in x{sign} has the wrong dimension")
            }
            Violation::EmptyFaces { element, sign } => write!(f, "{element}: x{sign} is empty"),
            Violation::FacesNotDisjoint { element, common } => {
                write!(f, "{element}: x⁻ ∩ x⁺ ≠ ∅ (shares {})", common.join(", "))
            }
            Violation::MixedFaces { element, outer, inner } => write!(
                f,
                "{element}: x⁻⁻ ∪ x⁺⁺ = {{{}}} differs from x⁻⁺ ∪ x⁺⁻ = {{{}}}",
                outer.join(", "),
                inner.join(", ")
            ),
            Violation::NotAntisymmetric { cycle } => {
                write!(f, "◁ not antisymmetric: {}", cycle.join(" ◁ "))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{glob, simplex};

    #[test]
    fn unresolved_id_is_structural() {
        let err = ParityComplex::new(vec![ElementSpec::new("e", 1, ["u"], ["v"])]).unwrap_err();
        assert!(matches!(err, Error::UnknownElement(id) if id == "u"));
    }

    #[test]
    fn loop_edge_violates_disjointness() {
        let c = ParityComplex::new(vec![
            ElementSpec::vertex("v"),
            ElementSpec::new("x", 1, ["v"], ["v"]),
        ])
        .unwrap();
        let report = c.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FacesNotDisjoint { element, .. } if element == "x")));
        assert!(report.to_string().contains("x⁻ ∩ x⁺ ≠ ∅"));
    }

    #[test]
    fn two_cycle_is_not_antisymmetric() {
        let c = ParityComplex::new(vec![
            ElementSpec::vertex("u"),
            ElementSpec::vertex("v"),
            ElementSpec::new("e", 1, ["u"], ["v"]),
            ElementSpec::new("f", 1, ["v"], ["u"]),
        ])
        .unwrap();
        let report = c.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::NotAntisymmetric { .. }));
    }

    #[test]
    fn face_set_examples() {
        let s2 = simplex(2);
        let got = s2.face_set(["01", "12"], Sign::Plus).unwrap();
        assert_eq!(got, BTreeSet::from(["1".to_string(), "2".to_string()]));
        assert!(s2.face_set(Vec::<&str>::new(), Sign::Minus).unwrap().is_empty());
        assert!(matches!(s2.face_set(["0"], Sign::Minus), Err(Error::DimZeroFaces(_))));
        let g2 = glob(2);
        assert_eq!(g2.face_set(["2"], Sign::Minus).unwrap(), BTreeSet::from(["(-,1)".to_string()]));
    }

    #[test]
    fn simplex3_is_valid() {
        assert!(simplex(3).validate().is_ok());
    }

    #[test]
    fn wrong_grading_reported() {
        let c = ParityComplex::new(vec![
            ElementSpec::vertex("a"),
            ElementSpec::vertex("b"),
            ElementSpec::new("e", 1, ["a"], ["b"]),
            ElementSpec::new("t", 2, ["a"], ["e"]),
        ])
        .unwrap();
        assert!(c
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FaceGrading { face, .. } if face == "a")));
    }
}
