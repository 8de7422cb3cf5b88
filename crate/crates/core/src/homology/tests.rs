use super::*;
use crate::epi::count_kernels;
use crate::groups::{find_isomorphism, GroupSpec};

fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

#[test]
fn fixtures_are_genus_two_actions() {
    let all = GenusTwoAction::all().unwrap();
    assert_eq!(all.len(), 11);
    for a in &all {
        a.tuple.verify().unwrap();
        assert_eq!(genus_of_kernel(&a.signature(), a.q.order() as u64).unwrap(), 2);
    }
}

#[test]
fn macbeath_agrees_with_cyclic_shortcut() {
    for a in GenusTwoAction::all().unwrap() {
        if !matches!(a.q.spec(), Some(GroupSpec::Cyclic(_))) {
            assert!(fixed_point_count_cyclic(&a, 1).is_err());
            continue;
        }
        for x in a.q.elements().skip(1) {
            assert_eq!(fixed_point_count(&a, x).unwrap(), fixed_point_count_cyclic(&a, x).unwrap(), "case {}", a.case);
        }
    }
}

#[test]
fn homology_of_case_one() {
    let a = GenusTwoAction::case(1).unwrap();
    let d = decompose_homology(&a).unwrap();
    assert_eq!(d.terms.len(), 4);
    for idx in [[1, 1], [1, 5], [1, 2], [1, 4]] {
        assert_eq!(d.multiplicity(&idx), 1, "{idx:?}");
    }
}

#[test]
fn repeated_summands() {
    // (2,2,3,3) on C6 and (2,2,4,4) on C4: two faithful characters, each twice
    for (case, k) in [(5, 5), (7, 3)] {
        let d = decompose_homology(&GenusTwoAction::case(case).unwrap()).unwrap();
        assert_eq!(d.multiplicity(&[1]), 2);
        assert_eq!(d.multiplicity(&[k]), 2);
        assert_eq!(d.total_degree(), 4);
    }
    let d = decompose_homology(&GenusTwoAction::case(10).unwrap()).unwrap();
    assert_eq!(d.multiplicity(&[1]), 4);
    let d = decompose_homology(&GenusTwoAction::case(11).unwrap()).unwrap();
    assert_eq!((d.multiplicity(&[0]), d.multiplicity(&[1])), (2, 2));
}

#[test]
fn congruence_moduli() {
    let moduli: Vec<u32> =
        (1..=9).map(|c| decompose_homology(&GenusTwoAction::case(c).unwrap()).unwrap().modulus()).collect();
    assert_eq!(moduli, vec![3, 5, 8, 3, 3, 5, 4, 1, 3]);
}

#[test]
fn kernel_totals() {
    for p in [7u32, 13, 19] {
        let c = kernel_census(&GenusTwoAction::case(1).unwrap(), p).unwrap();
        assert_eq!((c.delta_count, c.kernel_count), (1, 4));
        assert_eq!(c.induced_groups(), vec![format!("Gpr({p},6)xC2")]);
        let c = kernel_census(&GenusTwoAction::case(9).unwrap(), p).unwrap();
        assert_eq!((c.delta_count, c.kernel_count), (3, 6 * (p as u128 + 1)));
    }
    let c = kernel_census(&GenusTwoAction::case(6).unwrap(), 11).unwrap();
    assert_eq!((c.delta_count, c.kernel_count), (3, 12));
    let c = kernel_census(&GenusTwoAction::case(7).unwrap(), 13).unwrap();
    assert_eq!(c.kernel_count, 2 * 14);
    let c = kernel_census(&GenusTwoAction::case(10).unwrap(), 7).unwrap();
    assert_eq!(c.kernel_count, 7 * 7 * 7 + 7 * 7 + 7 + 1);
    // condition fails: no one-dimensional summands over F_p
    let c = kernel_census(&GenusTwoAction::case(3).unwrap(), 13).unwrap();
    assert!(!c.condition_holds);
    assert_eq!(c.kernel_count, 0);
}

#[test]
fn lemma_failures() {
    // 3 | ρ = 12
    let e = kernel_census(&GenusTwoAction::case(1).unwrap(), 3).unwrap_err();
    assert!(matches!(e, Error::LemmaInapplicable(_)));
    // ρ = 4 has the divisor 4 ≡ 1 mod 3: the split extensions are still
    // counted, but other groups of order 12 are not excluded
    let c = kernel_census(&GenusTwoAction::case(8).unwrap(), 3).unwrap();
    assert!(!c.sylow_normal);
    assert!(c.kernel_count > 0);
    // 3 divides the period 6 in (2,6,6)
    assert!(kernel_census(&GenusTwoAction::case(4).unwrap(), 3).is_err());
    assert!(lemma_applies(10, &sig("0;2,5,10"), 5).is_err());
    assert!(lemma_applies(10, &sig("0;2,5,10"), 11).is_ok());
    assert!(lemma_applies(10, &sig("0;2,5,10"), 3).is_err());
    assert!(lemma_applies(10, &sig("0;2,5,10"), 7).is_ok());
}

/// Brute-force check: for each induced group, the census matches an
/// exhaustive count of surface kernels.
fn brute_force(case: u8, p: u32) {
    let a = GenusTwoAction::case(case).unwrap();
    let census = kernel_census(&a, p).unwrap();
    let d = decompose_homology(&a).unwrap();
    assert!(census.kernel_count > 0);
    for name in census.induced_groups() {
        let named = build_group(&name.parse().unwrap()).unwrap();
        for t in d.terms.iter().filter(|t| induced_group_name(&a.q, &t.character, p) == name) {
            let g = induced_group(&a.q, &t.character, p).unwrap();
            assert!(find_isomorphism(&g, &named).unwrap().is_some(), "{name}");
        }
        assert_eq!(census.kernels_for(&name), count_kernels(&a.signature(), &named).unwrap(), "case {case}, {name}");
    }
}

#[test]
fn census_matches_brute_force_case_one() {
    brute_force(1, 7);
}

#[test]
fn census_matches_brute_force_case_seven() {
    brute_force(7, 5);
}

#[test]
fn census_matches_brute_force_case_eight() {
    brute_force(8, 5);
}

#[test]
fn census_matches_brute_force_small_cases() {
    brute_force(9, 7);
    brute_force(11, 3);
}

#[test]
fn census_serialises() {
    let c = kernel_census(&GenusTwoAction::case(2).unwrap(), 11).unwrap();
    let j = serde_json::to_value(&c).unwrap();
    assert_eq!(j["modulus"], 5);
    assert_eq!(j["kernel_count"], c.kernel_count as u64);
}
