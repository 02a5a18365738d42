mod common;

use common::*;
use hdvf_core::explicit_basis::{hdvf_from_explicit_basis, is_elementary, is_explicit, HomologyBasis};
use hdvf_core::persistence::{check_generator_preservation, compute_persistence, persistence_oracle, Filtration};
use hdvf_core::tripartition::{canonical_cocycle_tp, hdvf_to_tripartitions, is_cotree, is_tree};
use hdvf_core::{Chain, ChainComplex, Hdvf, Label};
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 40);
        for q in 1..=k.dim() {
            let dd = k.boundary_matrix(q).matmul(&k.boundary_matrix(q + 1)).unwrap();
            prop_assert!(dd.is_zero());
        }
    }

    #[test]
    fn euler_characteristic_matches_betti(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 40);
        let alternating: i64 = k
            .betti_numbers()
            .iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(alternating, k.euler_characteristic());
    }

    #[test]
    fn random_fields_are_reductions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let steps = r.gen_range(0..=k.len());
        let x = random_hdvf(&mut r, &k, steps);
        prop_assert!(x.validate().is_ok());
        prop_assert_eq!(check_reduction_axioms(&x), Ok(()));
    }

    #[test]
    fn incremental_completion_matches_recomputation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let steps = r.gen_range(0..=k.len() / 2);
        let x = random_hdvf(&mut r, &k, steps);
        let fast = x.complete();
        let slow = naive_complete(&x);
        prop_assert_eq!(fast.labels(), slow.labels());
        prop_assert!(fast.is_perfect());
        // completion keeps existing pairs
        for c in k.ids() {
            if x.label(c) != Label::Critical {
                prop_assert_eq!(x.label(c), fast.label(c));
            }
        }
    }

    #[test]
    fn canonical_cycles_are_cycles_in_the_right_coset(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let x = random_perfect_hdvf(&mut r, &k);
        let q = r.gen_range(0..=k.dim());
        let chain = random_chain(&mut r, &k, q);
        let z = x.canonical_cycle(&chain).unwrap();
        prop_assert!(k.is_cycle(&z));
        let diff = z.add(&chain);
        prop_assert!(diff.support().iter().all(|&c| x.label(c) == Label::Secondary));
        let w = x.canonical_cocycle(&chain).unwrap();
        prop_assert!(k.coboundary_of(&w).is_zero());
        prop_assert!(w.add(&chain).support().iter().all(|&c| x.label(c) == Label::Primary));
    }

    #[test]
    fn w_and_m_keep_fields_perfect(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let x = random_perfect_hdvf(&mut r, &k);
        for q in 0..=k.dim() {
            for &gamma in &x.critical(q) {
                for &sigma in &x.cells(Label::Secondary, q) {
                    if let Ok(y) = x.op_w(&[sigma], &[gamma]) {
                        prop_assert!(y.is_perfect());
                        prop_assert_eq!(y.label(sigma), Label::Critical);
                        prop_assert_eq!(y.label(gamma), Label::Secondary);
                        prop_assert_eq!(check_reduction_axioms(&y), Ok(()));
                    }
                }
                for &pi in &x.cells(Label::Primary, q) {
                    if let Ok(y) = x.op_m(&[pi], &[gamma]) {
                        prop_assert!(y.is_perfect());
                        prop_assert_eq!(y.label(pi), Label::Critical);
                        prop_assert_eq!(y.label(gamma), Label::Primary);
                    }
                }
            }
        }
    }

    #[test]
    fn w_validity_matches_g_entry(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let x = random_perfect_hdvf(&mut r, &k);
        for q in 0..=k.dim() {
            let basis = x.homology_basis(q).unwrap();
            for (gamma, g) in x.critical(q).into_iter().zip(&basis) {
                for sigma in x.cells(Label::Secondary, q) {
                    // a single-cell swap is valid iff σ lies in g(γ)
                    prop_assert_eq!(x.op_w(&[sigma], &[gamma]).is_ok(), g.contains(sigma));
                }
            }
        }
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 40);
        let dd = k.dual().dual();
        prop_assert_eq!(dd.to_specs(), k.to_specs());
        let dual = k.dual();
        for q in 0..=k.dim() {
            prop_assert_eq!(dual.betti(k.dim() - q), k.betti(q));
        }
    }

    #[test]
    fn generators_are_elementary_and_explicit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let x = random_perfect_hdvf(&mut r, &k);
        for q in 0..=k.dim() {
            let gens = x.homology_basis(q).unwrap();
            for g in &gens {
                prop_assert!(is_elementary(&k, g).unwrap());
            }
            let b = HomologyBasis::new(&k, q, gens).unwrap();
            prop_assert!(is_explicit(&b).is_explicit());
        }
    }

    #[test]
    fn explicit_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let x = random_perfect_hdvf(&mut r, &k);
        for q in 0..=k.dim() {
            let b = HomologyBasis::new(&k, q, x.homology_basis(q).unwrap()).unwrap();
            let y = hdvf_from_explicit_basis(&b).unwrap();
            let mut back = y.homology_basis(q).unwrap();
            let mut input = b.generators().to_vec();
            back.sort();
            input.sort();
            prop_assert_eq!(back, input);
        }
    }

    #[test]
    fn layers_are_trees_and_cocycles_match(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 40);
        let x = random_perfect_hdvf(&mut r, &k);
        for t in hdvf_to_tripartitions(&x).unwrap() {
            prop_assert!(is_tree(&k, &t.tree, t.q));
            prop_assert!(is_cotree(&k, &t.cotree, t.q));
            let cobasis = x.cohomology_basis(t.q).unwrap();
            let from_tp: Vec<Chain> = t.essential.iter().map(|&e| canonical_cocycle_tp(&k, &t, e).unwrap()).collect();
            prop_assert_eq!(from_tp, cobasis);
        }
    }

    #[test]
    fn persistence_matches_column_reduction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 60);
        let order = random_filtration_order(&mut r, &k);
        let f = Filtration::from_order(&k, &order).unwrap();
        let run = compute_persistence(&f);
        prop_assert_eq!(run.diagram(), &persistence_oracle(&f));
        let final_betti = f.complex().betti_numbers();
        for (q, &b) in final_betti.iter().enumerate() {
            prop_assert_eq!(run.diagram().essential_count(q), b);
        }
        for p in run.diagram().points() {
            prop_assert!(p.death.is_none_or(|d| p.birth < d));
        }
        prop_assert!(check_generator_preservation(&run));
    }

    #[test]
    fn step_fields_are_perfect_with_explicit_bases(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_cubical(&mut r, 40);
        let order = random_filtration_order(&mut r, &k);
        let f = Filtration::from_order(&k, &order).unwrap();
        let run = compute_persistence(&f);
        for step in 0..=f.len() {
            let field = run.field_at(step).unwrap();
            let x = field.hdvf();
            prop_assert!(x.validate().is_ok());
            prop_assert!(x.is_perfect());
            if field.complex.is_empty() {
                continue;
            }
            prop_assert_eq!(x.critical_counts(), field.complex.betti_numbers());
            for q in 0..=field.complex.dim() {
                let basis = run.persistent_basis(step, q).unwrap();
                let b = HomologyBasis::new(&field.complex, q, basis).unwrap();
                prop_assert!(is_explicit(&b).is_explicit());
            }
        }
    }
}

#[test]
fn four_hole_basis_round_trip() {
    let k = four_holes();
    // lower-left hole, the two lower holes together, and likewise on top
    let a = ["h00", "v00", "v10", "h01"];
    let ab = ["h00", "h10", "v00", "v20", "h01", "h11"];
    let c = ["h01", "v01", "v11", "h02"];
    let cd = ["h01", "h11", "v01", "v21", "h02", "h12"];
    let b = HomologyBasis::from_names(&k, 1, &[&a[..], &ab[..], &c[..], &cd[..]]).unwrap();
    assert!(is_explicit(&b).is_explicit(), "{}", is_explicit(&b));
    let x = hdvf_from_explicit_basis(&b).unwrap();
    assert!(x.is_perfect());
    let mut back = x.homology_basis(1).unwrap();
    back.sort();
    let mut input = b.generators().to_vec();
    input.sort();
    assert_eq!(back, input);
}

#[test]
fn surfaces_have_expected_betti_numbers() {
    for n in 3..=5 {
        assert_eq!(surface(Surface::Torus, n).betti_numbers(), [1, 2, 1]);
        assert_eq!(surface(Surface::KleinBottle, n).betti_numbers(), [1, 2, 1]);
        assert_eq!(surface(Surface::ProjectivePlane, n).betti_numbers(), [1, 1, 1]);
    }
}

#[test]
fn appendix_completion() {
    let k = appendix_example();
    let x = Hdvf::from_names(&k, &["c", "B", "C"], &["a", "b", "Phi"]).unwrap();
    let y = x.complete();
    assert!(y.is_perfect());
    assert_eq!(y.critical_counts(), [1, 1, 0]);
    assert_eq!(y.labels(), naive_complete(&x).labels());
}

#[test]
fn torus_persistence_by_insertion_order() {
    let k: ChainComplex = surface(Surface::Torus, 3);
    let f = Filtration::new(k, None).unwrap();
    let run = compute_persistence(&f);
    assert_eq!(run.diagram(), &persistence_oracle(&f));
    let mut points: Vec<_> = run.diagram().points().iter().map(|p| (p.dim, p.birth, p.death)).collect();
    points.sort_unstable();
    assert_eq!(points, reduction_pairs(f.complex()));
    assert!(check_generator_preservation(&run));
}
