//! Cross-module invariants at sizes beyond the per-module unit tests,
//! plus randomized properties.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use prographs::bijection::{prograph_to_tableau, tableau_to_prograph};
use prographs::prograph::enumerate_prographs;
use prographs::stats::a274969;
use prographs::tableaux::{count_3d_catalan, enumerate_tableaux, StandardTableau};

#[test]
fn counting_to_size_5() {
    for n in 0..=5 {
        assert_eq!(BigUint::from(enumerate_tableaux(n).len()), count_3d_catalan(n));
        assert_eq!(BigUint::from(enumerate_prographs(n).len()), count_3d_catalan(n));
    }
}

#[test]
fn bijection_image_at_size_5() {
    let image: BTreeSet<String> = enumerate_tableaux(5)
        .iter()
        .map(|t| tableau_to_prograph(t).unwrap().canonical_code().unwrap())
        .collect();
    let direct: BTreeSet<String> = enumerate_prographs(5)
        .iter()
        .map(|p| p.canonical_code().unwrap())
        .collect();
    assert_eq!(image.len(), 6006);
    assert_eq!(image, direct);
}

#[test]
fn canonical_code_injective_at_size_5() {
    let codes: BTreeSet<String> = enumerate_prographs(5)
        .iter()
        .map(|p| p.canonical_code().unwrap())
        .collect();
    assert_eq!(codes.len(), 6006);
}

#[test]
fn label_coherence_at_size_5() {
    let by_tableau = enumerate_tableaux(5)
        .iter()
        .filter(|t| t.coproducts_first())
        .count();
    let by_labels = enumerate_prographs(5)
        .iter()
        .filter(|p| p.coproducts_first().unwrap())
        .count();
    assert_eq!(BigUint::from(by_tableau), a274969(5));
    assert_eq!(by_labels, by_tableau);
}

#[test]
fn schuetzenberger_involution_on_prographs_size_4() {
    for p in enumerate_prographs(4) {
        let s = p.schuetzenberger();
        assert!(s.is_valid());
        assert_eq!(
            s.schuetzenberger().canonical_code().unwrap(),
            p.canonical_code().unwrap()
        );
    }
}

/// A uniform-ish random standard tableau via a random lattice word.
fn arbitrary_tableau(max_n: usize) -> impl Strategy<Value = StandardTableau> {
    (0..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut state = seed | 1;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut rows: [Vec<u32>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for v in 1..=(3 * n) as u32 {
            let mut open: Vec<usize> = (0..3)
                .filter(|&r| rows[r].len() < n && (r == 0 || rows[r].len() < rows[r - 1].len()))
                .collect();
            let pick = (rnd() % open.len() as u64) as usize;
            rows[open.remove(pick)].push(v);
        }
        StandardTableau::from_rows(rows)
    })
}

proptest! {
    #[test]
    fn random_tableau_roundtrips(t in arbitrary_tableau(7)) {
        prop_assert!(t.validate());
        let p = tableau_to_prograph(&t).unwrap();
        prop_assert!(p.is_valid());
        prop_assert_eq!(prograph_to_tableau(&p).unwrap(), t);
    }

    #[test]
    fn random_tableau_schuetzenberger_equivariant(t in arbitrary_tableau(6)) {
        let lhs = tableau_to_prograph(&t.schuetzenberger()).unwrap();
        let rhs = tableau_to_prograph(&t).unwrap().schuetzenberger();
        prop_assert_eq!(lhs.canonical_code().unwrap(), rhs.canonical_code().unwrap());
    }

    #[test]
    fn random_dual_roundtrips(t in arbitrary_tableau(6)) {
        let p = tableau_to_prograph(&t).unwrap();
        let tr = prographs::duality::prograph_to_triangulation(&p).unwrap();
        prop_assert!(tr.is_valid());
        prop_assert_eq!(tr.num_vertices, p.n + 3);
        prop_assert_eq!(tr.edges.len(), 3 * p.n + 3);
        prop_assert_eq!(tr.faces.len(), 2 * p.n + 2);
        let q = prographs::duality::triangulation_to_prograph(&tr).unwrap();
        prop_assert_eq!(q.canonical_code().unwrap(), p.canonical_code().unwrap());
    }

    #[test]
    fn random_prograph_successors_stay_valid(t in arbitrary_tableau(6)) {
        let p = tableau_to_prograph(&t).unwrap();
        for q in prographs::rewriting::successors(&p) {
            prop_assert!(q.is_valid());
            prop_assert_eq!(q.n, p.n);
        }
    }
}
