use isostrata::exact::{int, ExactVector};
use isostrata::invariants::{invariant_basis, minimal_generators, molien_dims};
use isostrata::rationality::{rationalize_with_retry, restrict_invariants, verify_expression};
use isostrata::strata::{closed_stratum_equations, isotropy_classes, monodromy_rep, satisfies_all};
use isostrata::{ExactMatrix, MultiPoly, Representation};

fn s3() -> Representation {
    Representation::permutation(&[vec![2, 1, 3], vec![2, 3, 1]], 3, 100).unwrap()
}

#[test]
fn symmetric_group_end_to_end() {
    let rep = s3();
    let strata = isotropy_classes(&rep, 100).unwrap();
    assert_eq!(strata.records.len(), 3);
    let swap = &strata.records[1];

    let gens = minimal_generators(&rep, None, 12).unwrap();
    assert_eq!(gens.degrees(), vec![1, 2, 3]);
    assert!(!gens.truncated);

    let basis: Vec<ExactVector> = swap.fixed_locus.basis().to_vec();
    let coords = vec!["s1".to_string(), "s2".to_string()];
    let named: Vec<(String, MultiPoly)> = gens.generators.iter().map(|g| (g.name.clone(), g.poly.clone())).collect();
    let j = restrict_invariants(&named, &basis, &coords).unwrap();
    let mono = monodromy_rep(&rep, &swap.representative, None).unwrap();
    assert_eq!(mono.order(), 1);
    for target in ["s1", "s2", "s1^2 - s2"] {
        let t = MultiPoly::parse(target, &coords).unwrap();
        let e = rationalize_with_retry(&t, &j, &mono.matrices, None, 16).unwrap();
        assert!(verify_expression(&t, &e, &j).unwrap(), "{target}");
    }

    let eqs = closed_stratum_equations(&rep, &swap.representative, 100).unwrap();
    let on = [int(2), int(5), int(2)];
    let off = [int(1), int(2), int(3)];
    assert!(satisfies_all(&eqs, &on).unwrap());
    assert!(!satisfies_all(&eqs, &off).unwrap());
}

#[test]
fn molien_matches_bases_for_a_cyclic_rotation() {
    let rot = ExactMatrix::from_i64(&[&[0, -1], &[1, 0]]);
    let rep = Representation::matrix(&[rot], Vec::new(), None, 10).unwrap();
    let molien = molien_dims(&rep, 8).unwrap();
    // Quarter-turn invariants of the plane: 1, 0, 1, 0, 3, 0, 3, 0, 5.
    assert_eq!(molien, vec![1, 0, 1, 0, 3, 0, 3, 0, 5]);
    for (d, &m) in molien.iter().enumerate() {
        assert_eq!(invariant_basis(&rep, d as u32).unwrap().dim(), m);
    }
}
