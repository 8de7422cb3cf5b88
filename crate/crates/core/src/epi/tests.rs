use std::collections::BTreeSet;

use super::*;
use crate::groups::{automorphisms, build_group, FiniteGroup, GroupSpec};
use crate::signatures::Signature;

fn group(s: &str) -> FiniteGroup {
    build_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

#[test]
fn hurwitz_psl2_13_has_three_kernels_with_distinct_invariants() {
    let g = group("PSL(2,13)");
    let set = enumerate_epimorphisms(&sig("0;2,3,7"), &g).unwrap();
    assert_eq!(set.num_kernels(), 3);
    assert_eq!(set.total_epimorphisms(), 3 * set.aut_order() as u128);
    let reps: Vec<_> = set.classes().iter().map(|c| c.representative.clone()).collect();
    for t in &reps {
        t.verify().unwrap();
    }
    let petrie: BTreeSet<u32> = reps.iter().map(|t| petrie_length(t).unwrap()).collect();
    assert_eq!(petrie, BTreeSet::from([12, 14, 26]));
    let cls = g.conjugacy_classes();
    let z_classes: BTreeSet<usize> = reps.iter().map(|t| cls.class_of(t.xyz().unwrap().2)).collect();
    assert_eq!(z_classes.len(), 3);

    let mut squares = 0;
    for t in &reps {
        assert!(is_reflexible(t).unwrap());
        let hall = hall_test(t).unwrap();
        assert_eq!(hall.predicted, full_automorphism_type(t).unwrap(), "Hall vs inner/outer for {:?}", hall);
        if hall.is_square {
            squares += 1;
            // t = ±5: 3 − 25 ≡ 4 (mod 13)
            assert_eq!(hall.trace_squared, 12);
            assert_eq!(hall.three_minus_t2, 4);
            assert_eq!(petrie_length(t).unwrap(), 26);
            assert_eq!(nonorientable_petrie_length(t).unwrap(), Some(13));
        } else {
            assert_eq!(nonorientable_petrie_length(t).unwrap(), None);
        }
    }
    assert_eq!(squares, 1);
}

#[test]
fn pgl2_7_maps_of_type_3_8() {
    let g = group("PGL(2,7)");
    let set = enumerate_epimorphisms(&sig("0;2,3,8"), &g).unwrap();
    assert_eq!(set.num_kernels(), 2);
    let mut petrie = BTreeSet::new();
    let mut quotient = BTreeSet::new();
    for c in set.classes() {
        let t = &c.representative;
        assert_eq!(full_automorphism_type(t).unwrap(), FullAutType::GxC2);
        petrie.insert(petrie_length(t).unwrap());
        quotient.insert(nonorientable_petrie_length(t).unwrap().unwrap());
    }
    assert_eq!(petrie, BTreeSet::from([8, 14]));
    assert_eq!(quotient, BTreeSet::from([7, 8]));
}

#[test]
fn psl2_7_hypermaps_of_type_3_3_4() {
    let g = group("PSL(2,7)");
    let set = enumerate_epimorphisms(&sig("0;3,3,4"), &g).unwrap();
    assert_eq!(set.num_kernels(), 2);
    let m = |a: [u32; 4]| g.element_from_matrix(a).unwrap();
    let t1 = GeneratingTuple::new(&g, vec![3, 3, 4], vec![], vec![m([3, 0, 0, 5]), m([1, 2, 3, 0]), m([0, 1, 6, 3])])
        .unwrap();
    let t2 = GeneratingTuple::new(&g, vec![3, 3, 4], vec![], vec![m([3, 5, 0, 5]), m([1, 2, 3, 0]), m([0, 1, 6, 4])])
        .unwrap();
    assert_ne!(set.kernel_of(&t1), set.kernel_of(&t2));
    assert_eq!(full_automorphism_type(&t1).unwrap(), FullAutType::ProperExtension("PGL(2,7)".into()));
    assert_eq!(full_automorphism_type(&t2).unwrap(), FullAutType::GxC2);
    let g2 = m([3, 1, 4, 4]);
    let (x2, y2, _) = t2.xyz().unwrap();
    assert_eq!(g.conj(g2, x2), g.inv(x2));
    assert_eq!(g.conj(g2, y2), g.inv(y2));
    assert!(nonorientable_petrie_length(&t2).unwrap().is_some());
    assert_eq!(nonorientable_petrie_length(&t1).unwrap(), None);

    // The outer inverting involution lives in PGL(2,7).
    let pgl = group("PGL(2,7)");
    let pm = |a: [u32; 4]| pgl.element_from_matrix(a).unwrap();
    let g1 = pm([0, 1, 2, 0]);
    assert_eq!(pgl.conj(g1, pm([3, 0, 0, 5])), pgl.inv(pm([3, 0, 0, 5])));
    assert_eq!(pgl.conj(g1, pm([1, 2, 3, 0])), pgl.inv(pm([1, 2, 3, 0])));
}

#[test]
fn small_kernel_counts() {
    assert_eq!(count_kernels(&sig("0;5,5,5,5"), &group("C5")).unwrap(), 13);
    assert_eq!(count_kernels(&sig("1;2,2"), &group("D5")).unwrap(), 24);
    assert_eq!(count_kernels(&sig("1;2,2"), &group("C10")).unwrap(), 24);
    assert_eq!(count_kernels(&sig("0;2,6,6"), &group("Gpr(7,6)xC2")).unwrap(), 4);
    assert_eq!(count_kernels(&sig("2;-"), &group("C3")).unwrap(), 27 + 9 + 3 + 1);
    // Klein quartic: the two classes of order 7 are swapped by PGL(2,7)
    assert_eq!(count_kernels(&sig("0;2,3,7"), &group("PSL(2,7)")).unwrap(), 1);
}

#[test]
fn kernel_classes_match_counts() {
    for (s, gs) in [("0;2,2,3,3", "Gpr(7,6)"), ("0;5,5,5", "Gpr(11,5)"), ("1;2,2", "D5")] {
        let g = group(gs);
        let set = enumerate_epimorphisms(&sig(s), &g).unwrap();
        assert_eq!(set.num_kernels() as u128, count_kernels(&sig(s), &g).unwrap(), "{s} {gs}");
        for t in set.pinned_tuples() {
            t.verify().unwrap();
        }
    }
}

#[test]
fn budget_is_enforced() {
    let opts = SearchOptions { budget: 10 };
    let err = count_kernels_with(&sig("0;2,3,7"), &group("PSL(2,13)"), opts).unwrap_err();
    assert!(matches!(err, crate::Error::BudgetExceeded(_)));
}

#[test]
fn no_epimorphism_when_orders_missing() {
    assert!(find_epimorphism(&sig("0;2,3,7"), &group("Gpr(13,6)")).unwrap().is_none());
    assert_eq!(count_kernels(&sig("0;2,3,7"), &group("C6xC2")).unwrap(), 0);
}

#[test]
fn quotient_data_for_metacyclic_action() {
    let g = group("Gpr(11,10)");
    let t = find_epimorphism(&sig("0;2,5,10"), &g).unwrap().unwrap();
    let a = g.subgroup_generated(&[10]);
    let b = g.subgroup_generated(&[1]);
    assert_eq!(a.order(), 11);
    assert_eq!(b.order(), 10);
    let qa = quotient_data(&t, &a).unwrap();
    assert_eq!((qa.genus, qa.signature.periods().len()), (2, 0));
    assert_eq!(quotient_data(&t, &b).unwrap().genus, 1);
    let whole = quotient_data(&t, &g.whole()).unwrap();
    assert_eq!(whole.signature, sig("0;2,5,10"));
    let trivial = quotient_data(&t, &g.subgroup_generated(&[])).unwrap();
    assert_eq!(trivial.signature, sig("12;-"));
}

#[test]
fn braid_orbits_of_hurwitz_kernels() {
    let g = group("PSL(2,13)");
    let aut = automorphisms(&g).unwrap();
    let orbits = topological_classes(&sig("0;2,3,7"), &g, SearchOptions::default()).unwrap();
    assert_eq!(orbits.len(), 3);
    for o in &orbits {
        assert_eq!(o.members.len(), 1);
        assert_eq!(o.ascending_kernels, 1);
    }
    let set = enumerate_epimorphisms(&sig("0;2,3,7"), &g).unwrap();
    let single = braid_orbits(&[set.classes()[0].representative.clone()], &aut).unwrap();
    assert_eq!(single.len(), 1);
}

#[test]
fn braid_move_preserves_relation() {
    let g = group("Gpr(7,6)");
    let t = find_epimorphism(&sig("0;2,2,3,3"), &g).unwrap().unwrap();
    let u = braid_move(&t, 1).unwrap();
    u.verify().unwrap();
    assert_eq!(u.periods(), &[2, 3, 2, 3]);
    let h = GeneratingTuple::new(&g, vec![], vec![(0, 0)], vec![]);
    assert!(h.is_err());
}

#[test]
fn family_maps_are_chiral() {
    // case (i) at p = 7: four kernels, one chiral pair up to duality, Petrie length 2p
    let g = group("Gpr(7,6)xC2");
    let aut = automorphisms(&g).unwrap();
    let set = enumerate_epimorphisms(&sig("0;2,6,6"), &g).unwrap();
    let an = analyse_hypermaps(&set, &aut).unwrap();
    assert_eq!(an.kernels.len(), 4);
    assert!(an.kernels.iter().all(|k| !k.reflexible && k.petrie == 14));
    assert_eq!(an.pair_orbits, 1);
    for k in &an.kernels {
        assert!(!is_reflexible(&k.representative).unwrap());
        assert!(full_automorphism_type(&k.representative).is_err());
    }
}

#[test]
fn hypermaps_555_form_two_orbits_of_six() {
    let g = group("Gpr(11,5)");
    let aut = automorphisms(&g).unwrap();
    let set = enumerate_epimorphisms(&sig("0;5,5,5"), &g).unwrap();
    let an = analyse_hypermaps(&set, &aut).unwrap();
    assert_eq!(an.kernels.len(), 12);
    assert_eq!(an.full_orbit_sizes, vec![6, 6]);
    assert_eq!(an.pair_orbits, 2);
    assert!(an.kernels.iter().all(|k| !k.reflexible));
}

#[test]
fn triality_operations() {
    let g = group("Gpr(11,10)");
    let t = find_epimorphism(&sig("0;2,5,10"), &g).unwrap().unwrap();
    assert_eq!(triality_images(&t, [0, 1, 2]).unwrap(), t);
    for perm in [[1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]] {
        let u = triality_images(&t, perm).unwrap();
        u.verify().unwrap();
        let want: Vec<u32> = perm.iter().map(|&i| t.periods()[i]).collect();
        assert_eq!(u.periods(), want.as_slice());
    }
    let m = mirror(&t).unwrap();
    m.verify().unwrap();
    assert!(triality_images(&t, [0, 0, 1]).is_err());
}

#[test]
fn tuple_json_labels() {
    let g = group("Gpr(7,6)xC2");
    let t = find_epimorphism(&sig("0;2,6,6"), &g).unwrap().unwrap();
    let j = serde_json::to_value(t.to_json()).unwrap();
    assert_eq!(j["type"], "(2,6,6)");
    assert_eq!(j["map_type"], "{6,6}");
    assert_eq!(j["elliptic"].as_array().unwrap().len(), 3);
}
