mod common;

use common::*;
use paritycx::ncat::{validate_cat, FiniteNCat};
use paritycx::simplicial::{classical_nerve, nerve, nerve_matches_classical};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 100_000;

/// Strings `x_0 → x_1 → … → x_k` of arrows and identities, counted directly.
fn string_count(a: &FiniteNCat, k: usize) -> usize {
    let arrows: Vec<(usize, usize)> = (0..a.len()).map(|c| (a.src(c, 0), a.tgt(c, 0))).collect();
    let mut ends: Vec<usize> = a.zero_cells().to_vec();
    for _ in 0..k {
        ends = ends.iter().flat_map(|&e| arrows.iter().filter(move |(s, _)| *s == e).map(|&(_, t)| t)).collect();
    }
    ends.len()
}

#[test]
fn random_categories_are_lawful() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let a = random_category(&mut rng, 4, 8, "c");
        assert!(validate_cat(&a).is_ok(), "{:?}", a.comp_specs());
    }
}

#[test]
fn oriental_nerve_is_the_classical_nerve() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let a = random_category(&mut rng, 4, 8, "c");
        assert!(nerve_matches_classical(&a, 3, CAP).unwrap());
        let (ner, _) = nerve(&a, 3, CAP).unwrap();
        let classical = classical_nerve(&a, 3).unwrap();
        assert!(ner.is_valid() && classical.is_valid());
        for k in 0..=3 {
            assert_eq!(ner.len(k), string_count(&a, k));
            assert_eq!(classical.len(k), string_count(&a, k));
        }
    }
}
