//! Property tests for the exact linear algebra and the basic complex
//! operations, checked against independent oracles where one exists.

use std::collections::BTreeSet;

use ccshell_core::complex::{Chain, ChainComplex, ElementId};
use ccshell_core::linalg::{
    self, SparseMatrix, determinant, kernel_basis, lattice_membership, rank,
    rational_span_membership, smith_normal_form,
};
use ccshell_core::oracle::{self, GeneratorConfig, GeneratorSource};
use ccshell_core::ring::{Integers, Ring};
use num::BigInt;
use proptest::prelude::*;

fn matrix_strategy(max_dim: usize, max_abs: i64) -> impl Strategy<Value = SparseMatrix<Integers>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(rows, cols)| {
        proptest::collection::vec(-max_abs..=max_abs, rows * cols).prop_map(move |vals| {
            let dense: Vec<Vec<BigInt>> = (0..rows)
                .map(|r| (0..cols).map(|c| BigInt::from(vals[r * cols + c])).collect())
                .collect();
            SparseMatrix::from_dense(Integers, &dense)
        })
    })
}

fn column_strategy(len: usize, max_abs: i64) -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec(-max_abs..=max_abs, len)
        .prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn snf_contract(m in matrix_strategy(6, 5)) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.multiply(&m).multiply(&snf.v), snf.d_matrix());
        prop_assert!(Integers.is_unit(&determinant(&snf.u)));
        prop_assert!(Integers.is_unit(&determinant(&snf.v)));
        let diag = snf.diagonal();
        for i in 1..diag.len() {
            if !Integers.is_zero(&diag[i]) {
                prop_assert!(Integers.div_exact(&diag[i], &diag[i - 1]).is_some());
            }
        }
    }

    #[test]
    fn rank_matches_rational_elimination(m in matrix_strategy(8, 5)) {
        prop_assert_eq!(rank(&m), oracle::rational_rank_oracle(&m));
    }

    #[test]
    fn kernel_basis_is_saturated(m in matrix_strategy(6, 4)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len(), m.cols() - rank(&m));
        for v in &k {
            prop_assert!(m.mat_vec(v).iter().all(|x| Integers.is_zero(x)));
        }
        if !k.is_empty() {
            let km = SparseMatrix::from_dense(
                Integers,
                &(0..m.cols())
                    .map(|i| k.iter().map(|v| v[i].clone()).collect())
                    .collect::<Vec<_>>(),
            );
            // a basis of a saturated lattice has unit invariant factors
            let snf = smith_normal_form(&km);
            prop_assert_eq!(snf.rank(), k.len());
            for d in snf.diagonal() {
                if !Integers.is_zero(d) {
                    prop_assert!(Integers.is_unit(d));
                }
            }
        }
    }

    #[test]
    fn membership_witnesses_are_exact((m, v) in matrix_strategy(5, 4).prop_flat_map(|m| {
        let rows = m.rows();
        (Just(m), column_strategy(rows, 4))
    })) {
        let lattice = lattice_membership(&m, &v);
        let rational = rational_span_membership(&m, &v);
        if let Some(x) = &lattice {
            prop_assert_eq!(m.mat_vec(x), v.clone());
            // critical implies precritical
            prop_assert!(rational.is_some());
        }
        if let Some((a, x)) = &rational {
            prop_assert!(!Integers.is_zero(a));
            let av: Vec<BigInt> = v.iter().map(|t| a * t).collect();
            prop_assert_eq!(m.mat_vec(x), av);
        }
    }

    #[test]
    fn support_invariant_under_scaling(coeffs in proptest::collection::vec(-9i64..=9, 1..6), lambda in 1i64..=9) {
        let ring = Integers;
        let terms: Vec<(ElementId, BigInt)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| (ElementId::new(0, i), BigInt::from(a)))
            .collect();
        let x = Chain::from_terms(&ring, 0, terms).unwrap();
        let scaled = x.scaled(&ring, &BigInt::from(lambda));
        prop_assert_eq!(x.support(), scaled.support());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_complexes_behave(seed in 0u64..500) {
        let cfg = GeneratorConfig { seed, source: GeneratorSource::RandomSimplicial, ..Default::default() };
        let c = oracle::generate(&cfg);
        // simplicial complexes are pure only when all facets share a
        // dimension, but the square condition and supports always hold
        let d = c.order();
        for i in 0..=d {
            for j in 0..=d {
                let a = c.skeleton(i).unwrap().skeleton(j.min(i)).unwrap();
                let b = c.skeleton(i.min(j)).unwrap();
                prop_assert_eq!(a, b);
            }
        }
        // closures are downward closed and pure of the generator's degree
        for e in c.elements() {
            let sub = c.generated_subcomplex(e);
            prop_assert!(c.subcomplex_basis(sub.elements().clone()).is_ok());
            prop_assert_eq!(c.pure_order_of_set(sub.elements()), Some(e.degree));
        }
        // Euler characteristic agrees with homology ranks
        let h = ccshell_core::homology::homology(&c);
        let cells: i64 = (0..=d).map(|v| {
            let k = c.degree_size(v) as i64;
            if v % 2 == 0 { k } else { -k }
        }).sum();
        let ranks: i64 = h.iter().enumerate().map(|(v, m)| {
            let r = m.free_rank as i64;
            if v % 2 == 0 { r } else { -r }
        }).sum();
        prop_assert_eq!(cells, ranks);
    }

    #[test]
    fn homology_matches_dense_oracle(seed in 0u64..400, shuffle in proptest::bool::ANY) {
        let source = if shuffle { GeneratorSource::RandomBoundary } else { GeneratorSource::RandomSimplicial };
        let cfg = GeneratorConfig { seed, source, ..Default::default() };
        let c = oracle::generate(&cfg);
        let main = ccshell_core::homology::homology(&c);
        let reference = oracle::dense_homology_oracle(&c).unwrap();
        prop_assert_eq!(main, reference);
    }

    #[test]
    fn pure_complexes_have_top_degree_maximal(seed in 0u64..200) {
        let cfg = GeneratorConfig { seed, ensure_pure: true, ..Default::default() };
        let c = oracle::generate(&cfg);
        prop_assert!(c.is_pure());
        let gamma = c.maximal_elements();
        let top: Vec<ElementId> = c.elements_of_degree(c.order()).collect();
        prop_assert_eq!(gamma, top);
    }
}

#[test]
fn certificates_round_trip_through_json() {
    let c = ChainComplex::from_simplicial(&[
        vec!["1".into(), "2".into(), "3".into()],
        vec!["2".into(), "3".into(), "4".into()],
    ])
    .unwrap();
    let cert = ccshell_core::shelling::search_shelling(&c, ccshell_core::DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    let back: ccshell_core::shelling::ShellingCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(cert, back);
    ccshell_core::shelling::verify_shelling(&c, &back).unwrap();

    let reg = ccshell_core::regularity::search_regular(&c, ccshell_core::DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .unwrap();
    let json = serde_json::to_string(&reg).unwrap();
    let back: ccshell_core::regularity::RegularOrderCertificate<Integers> =
        serde_json::from_str(&json).unwrap();
    ccshell_core::regularity::verify_regular(&c, &back).unwrap();

    let cone = ccshell_core::regularity::search_cone(&c, ccshell_core::DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .unwrap();
    let json = serde_json::to_string(&cone).unwrap();
    let back: ccshell_core::regularity::ConeAssignment<Integers> =
        serde_json::from_str(&json).unwrap();
    ccshell_core::regularity::verify_cone(&c, &back).unwrap();
}

#[test]
fn maximal_vertices_follow_boundary_sets() {
    // one edge onto a single vertex: the edge and the stray vertex are maximal
    let c = ChainComplex::from_columns(Integers, &[2, 1], vec![vec![vec![(0, 1)]]]).unwrap();
    assert_eq!(c.maximal_elements(), vec![ElementId::new(1, 0), ElementId::new(0, 1)]);
    let gamma: BTreeSet<ElementId> = c.maximal_set();
    assert_eq!(gamma.len(), 2);
}
