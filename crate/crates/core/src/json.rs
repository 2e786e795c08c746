//! Canonical JSON for complexes, free cells, finite categories, chain
//! complexes, simplicial sets and cosimplicial categories.
//!
//! Output is pretty-printed with a trailing newline. Object keys come out in
//! a fixed order and every array is sorted, so equal values always produce
//! identical bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::ChainComplex;
use crate::complex::{ElementSpec, ParityComplex, Sign};
use crate::cosimplicial::{CosimplicialNCat, Level, LevelMap};
use crate::error::{Error, Result};
use crate::freecat::FreeCell;
use crate::ncat::{CellSpec, CompSpec, FiniteNCat};
use crate::simplicial::SimplicialSet;

/// Pretty JSON with a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    dim: usize,
    elements: Vec<ElementJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    id: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    minus: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    plus: Option<Vec<String>>,
}

pub fn complex_to_json(c: &ParityComplex) -> String {
    let elements = (0..c.len())
        .map(|x| {
            let faces = |s: Sign| {
                let mut v: Vec<String> = c.faces(x, s).iter().map(|&y| c.id(y).to_string()).collect();
                v.sort();
                v
            };
            let d = c.elem_dim(x);
            ElementJson {
                id: c.id(x).to_string(),
                dim: d,
                minus: (d > 0).then(|| faces(Sign::Minus)),
                plus: (d > 0).then(|| faces(Sign::Plus)),
            }
        })
        .collect();
    to_canonical(&ComplexJson { dim: c.dim(), elements })
}

pub fn complex_from_json(s: &str) -> Result<ParityComplex> {
    let j: ComplexJson = serde_json::from_str(s)?;
    let specs = j
        .elements
        .into_iter()
        .map(|e| {
            if e.dim == 0 && (e.minus.as_ref().is_some_and(|v| !v.is_empty()) || e.plus.as_ref().is_some_and(|v| !v.is_empty())) {
                return Err(Error::DimZeroFaces(e.id));
            }
            Ok(ElementSpec { id: e.id, dim: e.dim, minus: e.minus.unwrap_or_default(), plus: e.plus.unwrap_or_default() })
        })
        .collect::<Result<Vec<_>>>()?;
    ParityComplex::with_dim(j.dim, specs)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellJson {
    #[serde(rename = "M")]
    m: BTreeMap<usize, Vec<String>>,
    #[serde(rename = "P")]
    p: BTreeMap<usize, Vec<String>>,
}

pub fn cell_to_json(c: &ParityComplex, cell: &FreeCell) -> String {
    let (mut m, mut p) = cell.to_slices(c);
    for v in m.values_mut().chain(p.values_mut()) {
        v.sort();
    }
    to_canonical(&CellJson { m, p })
}

pub fn cell_from_json(c: &ParityComplex, s: &str) -> Result<FreeCell> {
    let j: CellJson = serde_json::from_str(s)?;
    let flat = |slices: BTreeMap<usize, Vec<String>>| -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (k, ids) in slices {
            for id in ids {
                let x = c.lookup(&id)?;
                if c.elem_dim(x) != k {
                    return Err(Error::Malformed(format!("`{id}` listed in slice {k}")));
                }
                out.push(id);
            }
        }
        Ok(out)
    };
    FreeCell::from_ids(c, flat(j.m)?, flat(j.p)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatJson {
    dim: usize,
    cells: Vec<NCellJson>,
    comp: Vec<CompJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NCellJson {
    id: String,
    dim: usize,
    src: BTreeMap<usize, String>,
    tgt: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompJson {
    k: usize,
    a: String,
    b: String,
    r: String,
}

fn cat_value(a: &FiniteNCat) -> CatJson {
    let cells = a
        .cell_specs()
        .into_iter()
        .map(|c| NCellJson {
            id: c.id,
            dim: c.dim,
            src: c.src.into_iter().enumerate().collect(),
            tgt: c.tgt.into_iter().enumerate().collect(),
        })
        .collect();
    let comp = a.comp_specs().into_iter().map(|c| CompJson { k: c.k, a: c.a, b: c.b, r: c.r }).collect();
    CatJson { dim: a.dim(), cells, comp }
}

fn cat_from_value(j: CatJson) -> Result<FiniteNCat> {
    let boundary = |id: &str, m: BTreeMap<usize, String>, dim: usize| -> Result<Vec<String>> {
        if m.len() != dim || m.keys().enumerate().any(|(i, &k)| i != k) {
            return Err(Error::Malformed(format!("cell `{id}` needs boundaries in dimensions 0..{dim}")));
        }
        Ok(m.into_values().collect())
    };
    let cells = j
        .cells
        .into_iter()
        .map(|c| {
            Ok(CellSpec { src: boundary(&c.id, c.src, c.dim)?, tgt: boundary(&c.id, c.tgt, c.dim)?, id: c.id, dim: c.dim })
        })
        .collect::<Result<Vec<_>>>()?;
    let comps = j.comp.into_iter().map(|c| CompSpec { k: c.k, a: c.a, b: c.b, r: c.r }).collect();
    FiniteNCat::new(j.dim, cells, comps)
}

pub fn cat_to_json(a: &FiniteNCat) -> String {
    to_canonical(&cat_value(a))
}

pub fn cat_from_json(s: &str) -> Result<FiniteNCat> {
    cat_from_value(serde_json::from_str(s)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainJson {
    top: usize,
    p: u64,
    basis: BTreeMap<usize, Vec<String>>,
    d: BTreeMap<usize, Vec<Vec<i64>>>,
}

pub fn chain_to_json(r: &ChainComplex) -> String {
    let basis = (0..=r.top()).map(|k| (k, r.basis(k).to_vec())).collect();
    let d = (1..=r.top()).map(|k| (k, r.differential(k))).collect();
    to_canonical(&ChainJson { top: r.top(), p: r.modulus(), basis, d })
}

pub fn chain_from_json(s: &str) -> Result<ChainComplex> {
    let j: ChainJson = serde_json::from_str(s)?;
    if j.basis.keys().any(|&k| k > j.top) || j.d.keys().any(|&k| k == 0 || k > j.top) {
        return Err(Error::Malformed("chain complex degrees out of range".into()));
    }
    let basis = (0..=j.top).map(|k| j.basis.get(&k).cloned().unwrap_or_default()).collect();
    let d = (0..=j.top).map(|k| j.d.get(&k).cloned().unwrap_or_default()).collect();
    ChainComplex::new(j.top, j.p, basis, d)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplicialJson {
    levels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
}

/// `faces[k][r][x]` and `degens[k][r][x]` are indices into levels `k − 1`
/// and `k + 1`.
pub fn simplicial_to_json(x: &SimplicialSet) -> String {
    let top = x.top();
    let levels = (0..=top).map(|k| x.level(k).to_vec()).collect();
    let faces = (0..=top)
        .map(|k| if k == 0 { Vec::new() } else { (0..=k).map(|r| (0..x.len(k)).map(|s| x.face(k, r, s)).collect()).collect() })
        .collect();
    let degens = (0..=top)
        .map(|k| if k == top { Vec::new() } else { (0..=k).map(|r| (0..x.len(k)).map(|s| x.degen(k, r, s)).collect()).collect() })
        .collect();
    to_canonical(&SimplicialJson { levels, faces, degens })
}

pub fn simplicial_from_json(s: &str) -> Result<SimplicialSet> {
    let j: SimplicialJson = serde_json::from_str(s)?;
    SimplicialSet::new(j.levels, j.faces, j.degens)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CosimpJson {
    levels: Vec<LevelJson>,
    cofaces: Vec<MapJson>,
    codegens: Vec<MapJson>,
}

/// A level is a category, or `{"power": {"base": …, "labels": […]}}`.
#[derive(Serialize)]
#[serde(untagged)]
enum LevelJson {
    Power { power: PowerJson },
    Explicit(CatJson),
}

impl<'de> Deserialize<'de> for LevelJson {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wrapped {
            power: PowerJson,
        }
        let v = serde_json::Value::deserialize(d)?;
        if v.get("power").is_some() {
            let w: Wrapped = serde_json::from_value(v).map_err(D::Error::custom)?;
            Ok(LevelJson::Power { power: w.power })
        } else {
            serde_json::from_value(v).map(LevelJson::Explicit).map_err(D::Error::custom)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerJson {
    base: CatJson,
    labels: Vec<String>,
}

/// `map` sends cell ids to cell ids between explicit levels; `reindex[j]`
/// is the argument component that becomes component `j` between powers.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    m: usize,
    r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reindex: Option<Vec<usize>>,
}

pub fn cosimp_to_json(e: &CosimplicialNCat) -> String {
    let levels = e
        .levels()
        .iter()
        .map(|l| match l {
            Level::Explicit(a) => LevelJson::Explicit(cat_value(a)),
            Level::Power { base, labels } => {
                LevelJson::Power { power: PowerJson { base: cat_value(base), labels: labels.clone() } }
            }
        })
        .collect();
    let map_json = |m: usize, r: usize, f: &LevelMap, from: &Level, to: &Level| match f {
        LevelMap::Cells(t) => MapJson {
            m,
            r,
            map: Some(t.iter().enumerate().map(|(x, &y)| (from.base().id(x).to_string(), to.base().id(y).to_string())).collect()),
            reindex: None,
        },
        LevelMap::Reindex(idx) => MapJson { m, r, map: None, reindex: Some(idx.clone()) },
    };
    let mut cofaces = Vec::new();
    let mut codegens = Vec::new();
    for m in 0..e.top() {
        let (lo, hi) = (e.level(m), e.level(m + 1));
        for r in 0..=m + 1 {
            cofaces.push(map_json(m, r, e.coface_map(m, r), lo, hi));
        }
        for r in 0..=m {
            codegens.push(map_json(m, r, e.codegen_map(m, r), hi, lo));
        }
    }
    to_canonical(&CosimpJson { levels, cofaces, codegens })
}

pub fn cosimp_from_json(s: &str) -> Result<CosimplicialNCat> {
    let j: CosimpJson = serde_json::from_str(s)?;
    // powers over equal bases share one allocation
    let mut bases: Vec<Arc<FiniteNCat>> = Vec::new();
    let mut share = |a: FiniteNCat| -> Arc<FiniteNCat> {
        if let Some(b) = bases.iter().find(|b| ***b == a) {
            return b.clone();
        }
        let b = Arc::new(a);
        bases.push(b.clone());
        b
    };
    let levels: Vec<Level> = j
        .levels
        .into_iter()
        .map(|l| {
            Ok(match l {
                LevelJson::Explicit(c) => Level::Explicit(share(cat_from_value(c)?)),
                LevelJson::Power { power } => Level::Power { base: share(cat_from_value(power.base)?), labels: power.labels },
            })
        })
        .collect::<Result<_>>()?;
    let top = levels.len().checked_sub(1).ok_or_else(|| Error::Malformed("no levels".into()))?;
    let to_map = |mj: MapJson, from: &Level, to: &Level| -> Result<LevelMap> {
        match (mj.map, mj.reindex) {
            (Some(map), None) => {
                let (a, b) = (from.base(), to.base());
                if from.is_power() || to.is_power() || map.len() != a.len() {
                    return Err(Error::Malformed(format!("map {} {} must cover an explicit level", mj.m, mj.r)));
                }
                let mut t = vec![0; a.len()];
                for (x, y) in map {
                    t[a.lookup(&x)?] = b.lookup(&y)?;
                }
                Ok(LevelMap::Cells(t))
            }
            (None, Some(idx)) => Ok(LevelMap::Reindex(idx)),
            _ => Err(Error::Malformed(format!("map {} {} needs exactly one of `map` and `reindex`", mj.m, mj.r))),
        }
    };
    let mut cofaces: Vec<Vec<Option<LevelMap>>> = (0..top).map(|m| vec![None; m + 2]).collect();
    let mut codegens: Vec<Vec<Option<LevelMap>>> = (0..top).map(|m| vec![None; m + 1]).collect();
    for (list, out, delta) in [(j.cofaces, &mut cofaces, true), (j.codegens, &mut codegens, false)] {
        for mj in list {
            let (m, r) = (mj.m, mj.r);
            let slot = out
                .get_mut(m)
                .and_then(|v| v.get_mut(r))
                .ok_or_else(|| Error::Malformed(format!("no structure map {m} {r}")))?;
            let (from, to) = if delta { (&levels[m], &levels[m + 1]) } else { (&levels[m + 1], &levels[m]) };
            if slot.replace(to_map(mj, from, to)?).is_some() {
                return Err(Error::Malformed(format!("structure map {m} {r} given twice")));
            }
        }
    }
    let complete = |v: Vec<Vec<Option<LevelMap>>>| -> Result<Vec<Vec<LevelMap>>> {
        v.into_iter()
            .map(|row| row.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Malformed("missing structure map".into())))
            .collect()
    };
    CosimplicialNCat::new(levels, complete(cofaces)?, complete(codegens)?)
}
