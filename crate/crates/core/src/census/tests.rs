use super::*;
use crate::signatures::genus_of_kernel;

fn cases(records: &[CaseRecord]) -> Vec<&str> {
    let mut v: Vec<&str> = records.iter().filter(|r| r.rho >= 3).map(|r| r.case_id.as_str()).collect();
    v.sort();
    v.dedup();
    v
}

#[test]
fn header_is_required() {
    let err = data::parse_records("x.txt", "1 | 2\n", 2).unwrap_err();
    assert!(matches!(err, Error::Parse { ref token, .. } if token == "x.txt"));
}

#[test]
fn field_count_is_checked_with_line_number() {
    let text = format!("{}\n# comment\n\na | b\na | b | c\n", data::HEADER);
    let err = data::parse_records("y.txt", &text, 2).unwrap_err();
    assert!(matches!(err, Error::Parse { ref token, .. } if token == "y.txt:5"));
    let ok = data::parse_records("y.txt", &format!("{}\na|b\n", data::HEADER), 2).unwrap();
    assert_eq!(ok[0].fields, vec!["a", "b"]);
}

#[test]
fn every_embedded_file_loads() {
    assert!(data::families().unwrap().len() >= 12);
    assert_eq!(data::sigma().unwrap().keys().copied().min(), Some(4));
    data::ladder().unwrap();
    data::hypermaps().unwrap();
    data::conder().unwrap();
    data::nonorientable().unwrap();
    data::small_p().unwrap();
    data::small_rho().unwrap();
    data::deviations().unwrap();
}

#[test]
fn conditions_parse_and_hold() {
    assert_eq!("any".parse::<Condition>().unwrap(), Condition::Any);
    assert_eq!("1 mod 4".parse::<Condition>().unwrap(), Condition::OneMod(4));
    assert_eq!("= 13".parse::<Condition>().unwrap(), Condition::Equals(13));
    assert!("2 mod 3".parse::<Condition>().is_err());
    assert!(Condition::OneMod(3).holds(13));
    assert!(!Condition::OneMod(3).holds(11));
    assert_eq!(Condition::OneMod(8).to_string(), "p ≡ 1 mod 8");
}

#[test]
fn kernel_formulas() {
    assert_eq!("6(p+1)".parse::<data::KernelFormula>().unwrap().at(7), 48);
    assert_eq!("4".parse::<data::KernelFormula>().unwrap().at(31), 4);
    assert!("p+1".parse::<data::KernelFormula>().is_err());
}

#[test]
fn group_templates() {
    assert_eq!(data::instantiate("Gpr(p,6)xC2", 13), "Gpr(13,6)xC2");
    assert_eq!(data::canonical_name("V25"), "C5xC5");
}

#[test]
fn small_primes_are_rejected() {
    assert!(matches!(classify(3, 3), Err(Error::Unsupported(_))));
    assert!(matches!(classify(9, 3), Err(Error::Invalid(_))));
    assert!(matches!(hypermap_census(2), Err(Error::Unsupported(_))));
}

#[test]
fn cases_present_by_congruence() {
    assert_eq!(cases(&classify(13, 3).unwrap()), ["i", "iv", "ix", "v", "vii", "viii", "x"]);
    assert_eq!(cases(&classify(17, 3).unwrap()), ["iii", "vii", "viii"]);
    assert_eq!(cases(&classify(11, 3).unwrap()), ["ii", "vi", "viii"]);
}

#[test]
fn records_have_consistent_orders_and_genus() {
    for p in [7, 13] {
        for r in classify(p, 1).unwrap() {
            assert_eq!(r.order, r.rho as u64 * p as u64, "{r}");
            assert_eq!(genus_of_kernel(&r.signature, r.order).unwrap(), p as u64 + 1, "{r}");
            assert!(r.kernels > 0, "{r}");
        }
    }
}

#[test]
fn extension_targets_are_classified_at_the_same_prime() {
    for p in [7, 13, 19] {
        let records = classify(p, 3).unwrap();
        for r in &records {
            for e in r.full_group.iter().flat_map(|f| &f.special) {
                let target = records.iter().find(|t| t.case_id == e.target_case).expect("target present");
                assert_eq!(target.group, e.target_group);
                assert_eq!(target.rho, r.rho * e.index, "{r}");
            }
        }
    }
}

#[test]
fn rigid_records_count_surfaces_by_braid_orbits() {
    let records = classify(13, 3).unwrap();
    let x = records.iter().find(|r| r.case_id == "x").unwrap();
    assert_eq!(x.group, "PSL(2,13)");
    assert_eq!(x.surfaces, SurfaceCount::Finite { count: 3 });
    assert_eq!(x.source, Source::Search);
    let v = records.iter().find(|r| r.case_id == "v").unwrap();
    assert!(matches!(v.surfaces, SurfaceCount::Family { .. }));
    assert_eq!(v.kernels, 2 * 14);
}

#[test]
fn family_hypermaps_are_chiral_and_sporadic_reflexible() {
    for r in hypermap_census(13).unwrap() {
        let family = case_number(&r.case_id).is_some();
        assert_eq!(r.reflexible, !family, "({}) {}", r.case_id, r.group);
        assert_eq!(r.genus, 14);
    }
}

#[test]
fn nonorientable_quotients_come_from_gxc2_covers() {
    let q13 = nonorientable_census(13).unwrap();
    let exists: Vec<_> = q13.iter().filter(|q| q.quotient_exists).collect();
    assert_eq!(exists.len(), 1);
    assert_eq!(exists[0].euler_characteristic, -13);
    assert_eq!(exists[0].base.group, "PSL(2,13)");
    for q in &q13 {
        assert!(q.base.reflexible);
    }
}

#[test]
fn records_serialize() {
    let records = classify(7, 3).unwrap();
    let json = serde_json::to_value(&records).unwrap();
    let first = &json[0];
    assert!(first["signature"].is_string());
    assert!(first["surfaces"]["kind"].is_string());
}
