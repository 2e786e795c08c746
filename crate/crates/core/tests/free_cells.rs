mod common;

use common::*;
use paritycx::chain::theta_cat;
use paritycx::constructions::{cube, glob, interval, join, point, product, simplex};
use paritycx::excise::excision_plans;
use paritycx::freecat::{atom_by_id, compose, enumerate_cells, target, FreeCell};
use paritycx::functor::evaluate_plan;
use paritycx::ParityComplex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 200_000;

fn small_shapes() -> Vec<(String, ParityComplex)> {
    let mut v = vec![("point".to_string(), point()), ("interval".to_string(), interval())];
    for n in 0..=3 {
        v.push((format!("simplex{n}"), simplex(n)));
    }
    for n in 0..=2 {
        v.push((format!("glob{n}"), glob(n)));
    }
    v
}

#[test]
fn standard_shapes_satisfy_the_axioms() {
    let mut shapes = vec![point(), interval()];
    shapes.extend((0..=4).map(simplex));
    shapes.extend((0..=3).map(cube));
    shapes.extend((0..=4).map(glob));
    for c in &shapes {
        let report = c.validate();
        assert!(report.is_ok(), "{report}");
    }
    for c in (0..=4).map(simplex).chain((0..=3).map(cube)).chain((0..=4).map(glob)) {
        assert!(c.triangle_order().is_linear());
    }
}

#[test]
fn products_and_joins_satisfy_the_axioms() {
    let shapes = small_shapes();
    for (a, c) in &shapes {
        for (b, d) in &shapes {
            let p = product(c, d).unwrap();
            assert!(p.validate().is_ok(), "{a} × {b}: {}", p.validate());
            let j = join(c, d).unwrap();
            assert!(j.validate().is_ok(), "{a} ⋆ {b}: {}", j.validate());
        }
    }
}

#[test]
fn triangle_cells_match_subset_search() {
    let s = simplex(2);
    let a = atom_by_id(&s, "012").unwrap();
    assert_eq!(a, FreeCell::from_ids(&s, ["0", "02", "012"], ["2", "01", "12", "012"]).unwrap());
    let path = compose(&s, &atom_by_id(&s, "01").unwrap(), &atom_by_id(&s, "12").unwrap(), 0).unwrap();
    assert_eq!(target(&s, &a, 1), path);
    let cells = enumerate_cells(&s, 2, CAP).unwrap();
    assert_eq!(cells.len(), 8);
    let closure: std::collections::BTreeSet<_> = cells.iter().map(as_pair).collect();
    assert_eq!(closure, brute_force_cells(&s));
}

#[test]
fn edge_and_glob_cells_match_subset_search() {
    for c in [simplex(1), glob(1), glob(2), cube(1)] {
        let closure: std::collections::BTreeSet<_> = enumerate_cells(&c, c.dim(), CAP).unwrap().iter().map(as_pair).collect();
        assert_eq!(closure, brute_force_cells(&c));
    }
}

#[test]
fn free_category_laws_hold_exhaustively() {
    for c in [simplex(2), simplex(3), cube(2), product(&glob(2), &simplex(1)).unwrap()] {
        let cells = enumerate_cells(&c, c.dim(), CAP).unwrap();
        let bad = free_law_violations(&c, &cells);
        assert!(bad.is_empty(), "{}", bad[..bad.len().min(5)].join("\n"));
    }
}

#[test]
fn chi_formula_agrees_with_recursion() {
    for (c, d) in [(simplex(1), simplex(1)), (glob(1), simplex(1)), (glob(2), simplex(1)), (simplex(2), simplex(1))] {
        assert!(chi_disagreements(&c, &d).is_empty());
    }
}

#[test]
fn excision_orders_evaluate_identically() {
    let s = simplex(3);
    let cells = enumerate_cells(&s, 3, CAP).unwrap();
    let many: Vec<_> = cells.iter().map(|c| excision_plans(&s, c, 64)).filter(|p| p.len() >= 2).collect();
    assert!(!many.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut done = 0;
    while done < 5 {
        let (r, _) = random_chain(&mut rng, 2, 3, 6);
        let theta = theta_cat(&r).unwrap();
        let Some(f) = random_functor(&mut rng, &s, &theta) else { continue };
        let leaf = |x: usize| f.get(x).copied();
        for plans in &many {
            let values: Vec<usize> = plans.iter().map(|p| evaluate_plan(&theta, &s, p, &leaf).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
        done += 1;
    }
}
