//! ω-functors out of free categories: evaluation of free cells under a
//! generator assignment, and enumeration of all assignments that extend to a
//! functor.
//!
//! An assignment is a vector indexed by element position. Because elements
//! are stored in `(dim, id)` order, an assignment restricted to dimensions
//! `≤ d` is a prefix.

use crate::complex::ParityComplex;
use crate::error::{Error, Result};
use crate::excise::{Excisor, Plan};
use crate::freecat::{atom, source, target, FreeCell};
use crate::ncat::{FiniteNCat, StrictCat};

pub type GenAssignment<T> = Vec<T>;

/// Folds `plan` in `a`, reading leaf `x` through `leaf`.
pub fn evaluate_plan<A: StrictCat>(
    a: &A,
    c: &ParityComplex,
    plan: &Plan<usize>,
    leaf: &impl Fn(usize) -> Option<A::Cell>,
) -> Result<A::Cell> {
    plan.fold(
        &mut |&x| {
            leaf(x).ok_or_else(|| Error::Incompatible {
                generator: c.id(x).to_string(),
                reason: "generator has no image".into(),
            })
        },
        &mut |k, l, r| {
            a.compose(k, &l, &r).ok_or_else(|| Error::Incompatible {
                generator: plan
                    .leaves()
                    .into_iter()
                    .map(|&x| c.id(x))
                    .collect::<Vec<_>>()
                    .join(","),
                reason: format!("images are not {k}-composable"),
            })
        },
    )
}

/// The image of a free cell under the functor determined by `assignment`.
pub fn evaluate<A: StrictCat>(
    c: &ParityComplex,
    assignment: &[A::Cell],
    cell: &FreeCell,
    a: &A,
) -> Result<A::Cell> {
    let plan = Excisor::new(c).excise(cell)?;
    evaluate_plan(a, c, &plan, &|x| assignment.get(x).cloned())
}

/// Precomputed boundary plans of every atom of a complex.
pub struct FunctorSearch<'c> {
    complex: &'c ParityComplex,
    /// For each element of positive dimension `d`, plans for the `(d−1)`-source
    /// and target of its atom.
    boundaries: Vec<Option<(Plan<usize>, Plan<usize>)>>,
}

impl<'c> FunctorSearch<'c> {
    pub fn new(complex: &'c ParityComplex) -> Result<Self> {
        Self::build(complex, usize::MAX)
    }

    /// A search for functors into categories of dimension at most `n`. An
    /// atom of dimension above `n + 1` must map to the image of its
    /// `n`-source, so both of its boundary plans are that plan.
    pub fn truncated(complex: &'c ParityComplex, n: usize) -> Result<Self> {
        Self::build(complex, n)
    }

    fn build(complex: &'c ParityComplex, n: usize) -> Result<Self> {
        let mut ex = Excisor::new(complex);
        let mut boundaries = Vec::with_capacity(complex.len());
        for x in 0..complex.len() {
            let d = complex.elem_dim(x);
            if d == 0 {
                boundaries.push(None);
                continue;
            }
            let at = atom(complex, x);
            if n < usize::MAX && d > n + 1 {
                let s = ex.excise(&source(complex, &at, n))?;
                boundaries.push(Some((s.clone(), s)));
                continue;
            }
            let s = ex.excise(&source(complex, &at, d - 1))?;
            let t = ex.excise(&target(complex, &at, d - 1))?;
            boundaries.push(Some((s, t)));
        }
        Ok(FunctorSearch { complex, boundaries })
    }

    pub fn complex(&self) -> &'c ParityComplex {
        self.complex
    }

    /// Evaluated `(d−1)`-boundaries of `⟨x⟩` under a partial assignment
    /// covering all elements of lower dimension.
    pub fn boundary_images<A: StrictCat>(
        &self,
        a: &A,
        x: usize,
        leaf: &impl Fn(usize) -> Option<A::Cell>,
    ) -> Option<(A::Cell, A::Cell)> {
        let (s, t) = self.boundaries[x].as_ref()?;
        let s = evaluate_plan(a, self.complex, s, leaf).ok()?;
        let t = evaluate_plan(a, self.complex, t, leaf).ok()?;
        Some((s, t))
    }

    /// Candidate images of `x` given images of all lower elements.
    pub fn candidates<A: StrictCat>(&self, a: &A, x: usize, partial: &[A::Cell]) -> Vec<A::Cell> {
        let d = self.complex.elem_dim(x);
        if d == 0 {
            return a.zero_cells();
        }
        let leaf = |y: usize| partial.get(y).cloned();
        match self.boundary_images(a, x, &leaf) {
            Some((s, t)) => a.parallel(d, &s, &t),
            None => Vec::new(),
        }
    }

    /// Whether `assignment` extends to a functor: every generator's image has
    /// dimension at most its own and the evaluated boundaries of its atom.
    pub fn is_functor<A: StrictCat>(&self, a: &A, assignment: &[A::Cell]) -> bool {
        if assignment.len() != self.complex.len() {
            return false;
        }
        let leaf = |y: usize| assignment.get(y).cloned();
        (0..self.complex.len()).all(|x| {
            let d = self.complex.elem_dim(x);
            let img = &assignment[x];
            if a.cell_dim(img) > d {
                return false;
            }
            if d == 0 {
                return true;
            }
            match self.boundary_images(a, x, &leaf) {
                Some((s, t)) => a.src(img, d - 1) == s && a.tgt(img, d - 1) == t,
                None => false,
            }
        })
    }

    /// All functors, as assignments on the elements of dimension at most
    /// `dim_bound` (all elements when `None`), in lexicographic order of the
    /// candidate lists.
    pub fn enumerate<A: StrictCat>(&self, a: &A, dim_bound: Option<usize>, cap: usize) -> Result<Vec<GenAssignment<A::Cell>>> {
        let c = self.complex;
        let len = match dim_bound {
            Some(b) => (0..c.len()).take_while(|&x| c.elem_dim(x) <= b).count(),
            None => c.len(),
        };
        let mut out = Vec::new();
        let mut partial = Vec::with_capacity(len);
        self.dfs(a, len, &mut partial, &mut out, cap)?;
        Ok(out)
    }

    fn dfs<A: StrictCat>(
        &self,
        a: &A,
        len: usize,
        partial: &mut Vec<A::Cell>,
        out: &mut Vec<GenAssignment<A::Cell>>,
        cap: usize,
    ) -> Result<()> {
        let x = partial.len();
        if x == len {
            if out.len() >= cap {
                return Err(Error::CapacityExceeded(cap));
            }
            out.push(partial.clone());
            return Ok(());
        }
        for cand in self.candidates(a, x, partial) {
            partial.push(cand);
            self.dfs(a, len, partial, out, cap)?;
            partial.pop();
        }
        Ok(())
    }
}

/// All ω-functors `O(c) → a`, as generator assignments.
pub fn enumerate_functors<A: StrictCat>(
    c: &ParityComplex,
    a: &A,
    dim_bound: Option<usize>,
    cap: usize,
) -> Result<Vec<GenAssignment<A::Cell>>> {
    FunctorSearch::new(c)?.enumerate(a, dim_bound, cap)
}

/// Renders an assignment into a [`FiniteNCat`] as `element id → cell id`.
pub fn assignment_ids(c: &ParityComplex, a: &FiniteNCat, f: &[usize]) -> Vec<(String, String)> {
    f.iter().enumerate().map(|(x, &img)| (c.id(x).to_string(), a.id(img).to_string())).collect()
}
