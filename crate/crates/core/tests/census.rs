use genus_census::census::{self, data, ItemStatus, SurfaceCount};

fn find<'a>(records: &'a [census::CaseRecord], case: &str, group: &str) -> &'a census::CaseRecord {
    records.iter().find(|r| r.case_id == case && r.group == group).unwrap_or_else(|| panic!("({case}) {group}"))
}

#[test]
fn embedded_tables_verify_with_only_documented_deviations() {
    let report = census::verify_embedded_tables().unwrap();
    assert!(report.all_pass(), "{:#?}", report.with_status(ItemStatus::Fail).collect::<Vec<_>>());
    let documented = data::deviations().unwrap();
    let seen: Vec<_> = report.with_status(ItemStatus::Deviation).collect();
    assert_eq!(seen.len(), documented.len());
    for d in &documented {
        let item = report.get(&d.item).unwrap_or_else(|| panic!("{}", d.item));
        assert_eq!(item.status, ItemStatus::Deviation);
        assert_eq!(item.observed, d.observed);
    }
}

#[test]
fn prime_seven() {
    let r = census::classify(7, 3).unwrap();
    // Stated: two surfaces each in the two sporadic cases, shared, with A = PGL(2,7)
    let xi = find(&r, "xi", "PGL(2,7)");
    assert_eq!(xi.surfaces, SurfaceCount::Finite { count: 2 });
    let xii = find(&r, "xii", "PSL(2,7)");
    assert_eq!(xii.surfaces, SurfaceCount::Finite { count: 2 });
    assert_eq!(xii.full_group.as_ref().unwrap().generic, "PGL(2,7)");
    // Stated: in case (v) two surfaces extend to (i) and two to (xi)
    let v = find(&r, "v", "Gpr(7,6)");
    let special: Vec<_> =
        v.full_group.as_ref().unwrap().special.iter().map(|e| (e.target_case.as_str(), e.surfaces)).collect();
    assert!(special.contains(&("i", Some(2))));
    assert!(special.contains(&("xi", Some(2))));
    // Stated: both groups in (iv) act on the chiral pair of (i)
    for g in ["Gpr(7,6)", "Gpr(7,3)xC2"] {
        assert_eq!(find(&r, "iv", g).full_group.as_ref().unwrap().generic, "Gpr(7,6)xC2");
    }
    // Stated: (viii) is a family of real dimension 4
    assert_eq!(find(&r, "viii", "Gpr(7,2)xC2").surfaces, SurfaceCount::Family { real_dimension: 4 });
}

#[test]
fn prime_five_listed_actions_are_single_surfaces() {
    let r = census::classify(5, 3).unwrap();
    for (id, g) in [("a", "V25:S3"), ("b", "S5"), ("c", "C5xD3"), ("d", "C20")] {
        assert_eq!(find(&r, id, g).surfaces, SurfaceCount::Finite { count: 1 }, "({id})");
    }
    assert_eq!(find(&r, "a.1", "V25:C3").full_group.as_ref().unwrap().generic, "V25:S3");
}

#[test]
fn low_rho_records_follow_the_counting_formulas() {
    for p in [7u32, 11, 13] {
        let r = census::classify(p, 1).unwrap();
        let genus_two = r.iter().find(|x| x.rho == 1 && x.signature.to_string() == "2;-").unwrap();
        let q = p as u128;
        assert_eq!(genus_two.kernels, q.pow(3) + q.pow(2) + q + 1);
        for g in [format!("C{p}xC2"), format!("Gpr({p},2)")] {
            let x = r.iter().find(|x| x.rho == 2 && x.signature.to_string() == "1;2,2" && x.group == g).unwrap();
            assert_eq!(x.kernels, 4 * (q + 1), "{g}");
        }
    }
}
