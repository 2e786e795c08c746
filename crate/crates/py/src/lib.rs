//! Python bindings: complexes, free cells, finite categories, chain complexes
//! and cosimplicial categories, with JSON in and out.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use paritycx::chain::{chain_complex, check_product_iso, theta_cat};
use paritycx::constructions::{self, find_isomorphism};
use paritycx::cosimplicial::{constant, cosimp_hom};
use paritycx::descent::{desc1, desc2, desc_general};
use paritycx::freecat::{self, atom_by_id, cell_dim, enumerate_cells};
use paritycx::homotopy::{homotopy_group, pi0};
use paritycx::ncat::{free_snapshot, validate_cat};
use paritycx::simplicial::{classical_nerve, nerve, nerve_matches_classical};
use paritycx::{json, ChainComplex, CosimplicialNCat, Error, FiniteNCat, FreeCell, ParityComplex};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

const DEFAULT_CAP: usize = 100_000;

create_exception!(paritycx, CapacityError, PyException, "An enumeration exceeded its capacity.");

fn err(e: Error) -> PyErr {
    match e {
        Error::CapacityExceeded(_) => CapacityError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A parity complex.
#[pyclass(frozen, module = "paritycx")]
struct Complex {
    inner: Arc<ParityComplex>,
}

impl Complex {
    fn wrap(c: ParityComplex) -> Self {
        Complex { inner: Arc::new(c) }
    }

    fn cell(&self, cell: FreeCell) -> Cell {
        Cell { complex: self.inner.clone(), cell }
    }
}

#[pymethods]
impl Complex {
    #[staticmethod]
    fn point() -> Self {
        Self::wrap(constructions::point())
    }

    #[staticmethod]
    fn interval() -> Self {
        Self::wrap(constructions::interval())
    }

    #[staticmethod]
    fn simplex(n: usize) -> Self {
        Self::wrap(constructions::simplex(n))
    }

    #[staticmethod]
    fn cube(n: usize) -> Self {
        Self::wrap(constructions::cube(n))
    }

    #[staticmethod]
    fn glob(n: usize) -> Self {
        Self::wrap(constructions::glob(n))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::complex_from_json(text).map(Self::wrap).map_err(err)
    }

    fn to_json(&self) -> String {
        json::complex_to_json(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Complex(dim={}, elements={})", self.inner.dim(), self.inner.len())
    }

    fn ids(&self) -> Vec<String> {
        (0..self.inner.len()).map(|x| self.inner.id(x).to_string()).collect()
    }

    fn product(&self, other: &Complex) -> PyResult<Self> {
        constructions::product(&self.inner, &other.inner).map(Self::wrap).map_err(err)
    }

    fn join(&self, other: &Complex) -> PyResult<Self> {
        constructions::join(&self.inner, &other.inner).map(Self::wrap).map_err(err)
    }

    fn right_cone(&self) -> PyResult<Self> {
        constructions::right_cone(&self.inner).map(Self::wrap).map_err(err)
    }

    fn left_cone(&self) -> PyResult<Self> {
        constructions::left_cone(&self.inner).map(Self::wrap).map_err(err)
    }

    /// Axiom violations, empty when the complex is valid.
    fn violations(&self) -> Vec<String> {
        self.inner.validate().violations.iter().map(|v| v.to_string()).collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_ok()
    }

    /// A linear extension of the solid triangle order.
    fn order(&self) -> Vec<String> {
        self.inner.triangle_order().linear_extension().into_iter().map(|x| self.inner.id(x).to_string()).collect()
    }

    fn order_is_linear(&self) -> bool {
        self.inner.triangle_order().is_linear()
    }

    fn isomorphic(&self, other: &Complex) -> bool {
        find_isomorphism(&self.inner, &other.inner).is_some()
    }

    fn atom(&self, id: &str) -> PyResult<Cell> {
        Ok(self.cell(atom_by_id(&self.inner, id).map_err(err)?))
    }

    #[pyo3(signature = (dim=None, cap=DEFAULT_CAP))]
    fn cells(&self, dim: Option<usize>, cap: usize) -> PyResult<Vec<Cell>> {
        let found = enumerate_cells(&self.inner, dim.unwrap_or(self.inner.dim()), cap).map_err(err)?;
        Ok(found.into_iter().map(|c| self.cell(c)).collect())
    }

    fn chain(&self) -> Chain {
        Chain { inner: chain_complex(&self.inner) }
    }

    /// The free category as an explicit finite category.
    #[pyo3(signature = (dim=None, cap=DEFAULT_CAP))]
    fn snapshot(&self, dim: Option<usize>, cap: usize) -> PyResult<Category> {
        let a = free_snapshot(&self.inner, dim.unwrap_or(self.inner.dim()), cap).map_err(err)?;
        Ok(Category { inner: a })
    }
}

/// A cell `(M, P)` of the free category on a complex.
#[pyclass(frozen, module = "paritycx")]
struct Cell {
    complex: Arc<ParityComplex>,
    cell: FreeCell,
}

impl Cell {
    fn same(&self, cell: FreeCell) -> Cell {
        Cell { complex: self.complex.clone(), cell }
    }
}

#[pymethods]
impl Cell {
    #[getter]
    fn dim(&self) -> usize {
        cell_dim(&self.complex, &self.cell)
    }

    /// `M` by dimension.
    fn minus(&self) -> BTreeMap<usize, Vec<String>> {
        self.cell.to_slices(&self.complex).0
    }

    /// `P` by dimension.
    fn plus(&self) -> BTreeMap<usize, Vec<String>> {
        self.cell.to_slices(&self.complex).1
    }

    fn source(&self, k: usize) -> Cell {
        self.same(freecat::source(&self.complex, &self.cell, k))
    }

    fn target(&self, k: usize) -> Cell {
        self.same(freecat::target(&self.complex, &self.cell, k))
    }

    fn compose(&self, other: &Cell, k: usize) -> PyResult<Cell> {
        if !Arc::ptr_eq(&self.complex, &other.complex) && self.complex.specs() != other.complex.specs() {
            return Err(PyValueError::new_err("cells of different complexes"));
        }
        Ok(self.same(freecat::compose(&self.complex, &self.cell, &other.cell, k).map_err(err)?))
    }

    fn is_cell(&self) -> bool {
        freecat::is_cell(&self.complex, &self.cell)
    }

    fn to_json(&self) -> String {
        json::cell_to_json(&self.complex, &self.cell)
    }

    fn __str__(&self) -> String {
        self.cell.display(&self.complex).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cell{}", self.cell.display(&self.complex))
    }

    fn __eq__(&self, other: &Cell) -> bool {
        self.cell == other.cell && self.complex.specs() == other.complex.specs()
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.cell.hash(&mut h);
        h.finish()
    }
}

/// A finite strict n-category.
#[pyclass(frozen, module = "paritycx")]
struct Category {
    inner: FiniteNCat,
}

#[pymethods]
impl Category {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::cat_from_json(text).map(|inner| Category { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        json::cat_to_json(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Category(dim={}, shape={:?})", self.inner.dim(), self.shape())
    }

    fn ids(&self) -> Vec<String> {
        self.inner.ids().to_vec()
    }

    /// Number of cells in each dimension.
    fn shape(&self) -> Vec<usize> {
        (0..=self.inner.dim()).map(|k| self.inner.count_of_dim(k)).collect()
    }

    fn violations(&self) -> Vec<String> {
        validate_cat(&self.inner).violations.iter().map(|v| v.to_string()).collect()
    }

    /// The nerve truncated at `levels`, as JSON.
    #[pyo3(signature = (levels=3, classical=false, cap=DEFAULT_CAP))]
    fn nerve(&self, levels: usize, classical: bool, cap: usize) -> PyResult<String> {
        let s = if classical { classical_nerve(&self.inner, levels) } else { nerve(&self.inner, levels, cap).map(|x| x.0) };
        Ok(json::simplicial_to_json(&s.map_err(err)?))
    }

    #[pyo3(signature = (levels=3, cap=DEFAULT_CAP))]
    fn nerve_matches_classical(&self, levels: usize, cap: usize) -> PyResult<bool> {
        nerve_matches_classical(&self.inner, levels, cap).map_err(err)
    }

    /// Number of equivalence classes of objects.
    fn pi0(&self) -> usize {
        pi0(&self.inner).len()
    }

    /// Order of `π_k` at the object `base`.
    fn homotopy_order(&self, base: &str, k: usize) -> PyResult<usize> {
        let x = self.inner.lookup(base).map_err(err)?;
        Ok(homotopy_group(&self.inner, x, k).map_err(err)?.order())
    }
}

/// A chain complex of free modules over `Z` or `Z/p`.
#[pyclass(frozen, module = "paritycx")]
struct Chain {
    inner: ChainComplex,
}

#[pymethods]
impl Chain {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::chain_from_json(text).map(|inner| Chain { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        json::chain_to_json(&self.inner)
    }

    #[getter]
    fn top(&self) -> usize {
        self.inner.top()
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus()
    }

    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }

    /// Rank of `H_k`; rational rank when the modulus is 0.
    fn homology(&self, k: usize) -> usize {
        self.inner.homology(k)
    }

    fn reduce_mod(&self, p: u64) -> PyResult<Chain> {
        self.inner.reduce_mod(p).map(|inner| Chain { inner }).map_err(err)
    }

    /// The category ϑ of the complex.
    fn theta(&self) -> PyResult<Category> {
        theta_cat(&self.inner).map(|inner| Category { inner }).map_err(err)
    }
}

/// A truncated cosimplicial category.
#[pyclass(frozen, module = "paritycx")]
struct Cosimplicial {
    inner: CosimplicialNCat,
}

#[pymethods]
impl Cosimplicial {
    /// `[Ner A, X]` built from the classical nerve of the 1-category `a`.
    #[staticmethod]
    #[pyo3(signature = (a, x, top=3))]
    fn hom(a: &Category, x: &Category, top: usize) -> PyResult<Self> {
        let r = classical_nerve(&a.inner, top).map_err(err)?;
        cosimp_hom(&r, &x.inner).map(|inner| Cosimplicial { inner }).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (x, top=3))]
    fn constant(x: &Category, top: usize) -> Self {
        Cosimplicial { inner: constant(&x.inner, top) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::cosimp_from_json(text).map(|inner| Cosimplicial { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        json::cosimp_to_json(&self.inner)
    }

    #[getter]
    fn top(&self) -> usize {
        self.inner.top()
    }

    fn violations(&self) -> Vec<String> {
        self.inner.violations()
    }

    /// The descent category in dimension `n`, by the explicit equations
    /// (`n` ≤ 2) or the general construction (`n` ≤ 3).
    #[pyo3(signature = (n=1, method="explicit", cap=DEFAULT_CAP))]
    fn descent(&self, n: usize, method: &str, cap: usize) -> PyResult<Category> {
        let inner = match (method, n) {
            ("explicit", 1) => desc1(&self.inner),
            ("explicit", 2) => desc2(&self.inner),
            ("explicit", _) => return Err(PyValueError::new_err(format!("no explicit descent for n = {n}"))),
            ("general", _) => desc_general(&self.inner, n, cap).map(|g| g.cat),
            _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
        };
        Ok(Category { inner: inner.map_err(err)? })
    }
}

/// Whether the chains of `c × d` are the tensor product of the chains.
#[pyfunction(name = "check_product_iso")]
fn product_iso(c: &Complex, d: &Complex) -> PyResult<bool> {
    check_product_iso(&c.inner, &d.inner).map_err(err)
}

#[pymodule(name = "paritycx")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_class::<Cell>()?;
    m.add_class::<Category>()?;
    m.add_class::<Chain>()?;
    m.add_class::<Cosimplicial>()?;
    m.add_function(wrap_pyfunction!(product_iso, m)?)?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    Ok(())
}
