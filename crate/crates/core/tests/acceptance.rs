//! The ten acceptance criteria, each timed against its limit. Prints one
//! PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use genus_census::census::{self, data, ScanStatus};
use genus_census::counting::{count_kernels_cyclic_p, s_bruteforce, s_formula};
use genus_census::epi::{count_kernels, enumerate_epimorphisms, find_epimorphism, FullAutType, GeneratingTuple};
use genus_census::groups::{build_group, Elem, FiniteGroup};
use genus_census::homology::{case_label, kernel_census, GenusTwoAction};
use genus_census::jacobian::decompose_jacobian;
use genus_census::signatures::{enumerate_signatures, genus_of_kernel, Rational, Signature};

const GOOD_PRIMES: [u32; 8] = [7, 11, 13, 17, 19, 23, 29, 31];

fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

fn group(s: &str) -> FiniteGroup {
    build_group(&s.parse().unwrap()).unwrap()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(cond: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed: cond, detail: detail.into() }
}

/// Runs `f`, failing the criterion on a panic, an error or a late finish.
fn criterion(n: u32, limit_s: u64, f: impl FnOnce() -> Outcome) -> (bool, String) {
    let start = Instant::now();
    let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Outcome { passed: false, detail: format!("panicked: {}", msg.unwrap_or_default()) }
    });
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_s);
    let passed = out.passed && in_time;
    let line = format!(
        "{} criterion {n}: {} ({:.2} s, limit {limit_s} s{})",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        if in_time { "" } else { ", too slow" }
    );
    // Straight to the process stdout so the line survives test output capture.
    let _ = writeln!(std::io::stdout(), "{line}");
    (passed, line)
}

/// `(missing, extra)` per ρ between the enumeration and the listed Σ.
fn sigma_diff() -> BTreeMap<u32, (Vec<String>, Vec<String>)> {
    let listed = data::sigma().unwrap();
    let mut diff = BTreeMap::new();
    for rho in 4..=84u32 {
        let found: BTreeSet<String> = enumerate_signatures(Rational::from_integer(rho as i64), None)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        let expected: BTreeSet<String> = listed.get(&rho).into_iter().flatten().map(ToString::to_string).collect();
        let missing: Vec<String> = expected.difference(&found).cloned().collect();
        let extra: Vec<String> = found.difference(&expected).cloned().collect();
        if !missing.is_empty() || !extra.is_empty() {
            diff.insert(rho, (missing, extra));
        }
    }
    diff
}

fn c1_signatures() -> Outcome {
    let diff = sigma_diff();
    let detail = if diff.is_empty() {
        "Σ for ρ = 4..84 equals the listed signatures".to_string()
    } else {
        let parts: Vec<String> =
            diff.iter().map(|(r, (m, e))| format!("ρ={r} missing {:?} extra {:?}", m, e)).collect();
        format!("Σ differs from the list: {}", parts.join("; "))
    };
    check(diff.is_empty(), detail)
}

fn c2_rho_one() -> Outcome {
    // Stated ρ = 1 signatures and their kernel counts.
    for p in GOOD_PRIMES.iter().copied().chain([2, 3, 5]) {
        let p = p as i128;
        assert_eq!(count_kernels_cyclic_p(&sig("2;-"), p as u64), p.pow(3) + p.pow(2) + p + 1);
    }
    let listed = [("1;2,2,2,2", 2, 4), ("1;3,3,3", 3, 9), ("0;2^8", 2, 1), ("0;3^6", 3, 11), ("0;5^4", 5, 13)];
    for (s, p, n) in listed {
        assert_eq!(count_kernels_cyclic_p(&sig(s), p), n, "{s}");
    }
    // Confirmed by exhaustive search in C_p for p ≤ 5.
    for (s, p, n) in listed.iter().copied().chain([("2;-", 2, 15), ("2;-", 3, 40), ("2;-", 5, 156)]) {
        assert_eq!(count_kernels(&sig(s), &group(&format!("C{p}"))).unwrap(), n as u128, "{s} by search");
    }
    for p in [2u64, 3, 5, 7] {
        for k in 1..=6 {
            assert_eq!(s_bruteforce(p, k).unwrap() as i128, s_formula(p, k), "s_{k}({p})");
        }
    }
    check(true, "ρ=1 counts p³+p²+p+1, 4, 9, 1, 11, 13 confirmed by formula and search; s_k formula matches the oracle")
}

fn c3_rho_two() -> Outcome {
    let g1 = sig("1;2,2");
    for (p, groups) in [(3u128, ["C6", "D3"]), (5, ["C10", "D5"])] {
        for name in groups {
            assert_eq!(count_kernels(&g1, &group(name)).unwrap(), 4 * (p + 1), "{name}");
        }
    }
    check(true, "(1;2,2) has 4(p+1) kernels for C_2p and D_p at p = 3, 5")
}

/// Stated congruence modulus per abelian case, `None` for every prime.
const MODULI: [Option<u32>; 9] = [Some(3), Some(5), Some(8), Some(3), Some(3), Some(5), Some(4), None, Some(3)];

fn c4_good_primes() -> Outcome {
    let rows = data::families().unwrap();
    let mut checked = 0;
    for n in 1..=9u8 {
        let action = GenusTwoAction::case(n).unwrap();
        let label = case_label(n).unwrap();
        for p in GOOD_PRIMES {
            let holds = MODULI[n as usize - 1].is_none_or(|m| p % m == 1);
            let census = kernel_census(&action, p).unwrap();
            assert_eq!(census.condition_holds, holds, "({label}) at {p}");
            if !holds {
                continue;
            }
            let stated = match label {
                "i" | "ii" | "iii" => Some(4),
                "v" => Some(2 * (p as u128 + 1)),
                "ix" => Some(6 * (p as u128 + 1)),
                _ => None,
            };
            for row in rows.iter().filter(|r| r.case == label) {
                let name = data::instantiate(&row.group, p);
                let got = census.kernels_for(&name);
                if let Some(k) = stated {
                    assert_eq!(got, k, "({label}) {name} at {p}");
                }
                if let Some(f) = row.kernels {
                    assert_eq!(got, f.at(p), "({label}) {name} at {p}");
                }
                assert!(got > 0);
                checked += 1;
            }
        }
    }
    check(true, format!("{checked} case/prime pairs match the congruence conditions and kernel counts"))
}

fn c5_sporadic() -> Outcome {
    let counts: Vec<usize> = [("0;2,3,7", "PSL(2,13)"), ("0;2,3,8", "PGL(2,7)"), ("0;3,3,4", "PSL(2,7)")]
        .iter()
        .map(|(s, g)| enumerate_epimorphisms(&sig(s), &group(g)).unwrap().num_kernels())
        .collect();
    check(counts == [3, 2, 2], format!("kernel classes {counts:?}"))
}

fn c6_petrie_and_traces() -> Outcome {
    let records = census::hypermap_census(13).unwrap();
    let hurwitz: Vec<_> = records.iter().filter(|r| r.case_id == "x").collect();
    let petrie: BTreeSet<u32> = hurwitz.iter().map(|r| r.petrie).collect();
    let traces: BTreeSet<u32> = hurwitz.iter().map(|r| r.hall.as_ref().unwrap().trace_squared).collect();
    let squares: Vec<_> = hurwitz.iter().filter(|r| r.hall.as_ref().unwrap().is_square).collect();
    assert_eq!(hurwitz.len(), 3);
    assert_eq!(petrie, BTreeSet::from([12, 14, 26]));
    assert_eq!(traces.len(), 3, "three distinct trace classes");
    assert_eq!(squares.len(), 1);
    assert_eq!(squares[0].full_group_type, FullAutType::GxC2);
    assert_eq!(squares[0].full_group, "PSL(2,13) x C2");
    for p in [7, 13] {
        let maps: Vec<_> = census::hypermap_census(p)
            .unwrap()
            .into_iter()
            .filter(|r| r.is_map && !matches!(r.case_id.as_str(), "x" | "xi" | "xii"))
            .collect();
        assert!(!maps.is_empty());
        for m in maps {
            assert_eq!(m.petrie, 2 * p, "({}) at {p}", m.case_id);
        }
    }
    check(true, "Hurwitz Petrie lengths {12, 14, 26}, distinct traces, one Hall square with A = G × C2; family maps have Petrie length 2p")
}

fn c7_chirality() -> Outcome {
    let mut records = 0;
    for p in [7, 11, 13, 17, 31] {
        for r in census::hypermap_census(p).unwrap() {
            let sporadic = matches!(r.case_id.as_str(), "x" | "xi" | "xii");
            assert_eq!(r.reflexible, sporadic, "({}) {} at {p}", r.case_id, r.group);
            records += 1;
        }
    }
    let vi: Vec<_> = census::hypermap_census(11).unwrap().into_iter().filter(|r| r.case_id == "vi").collect();
    let mut orbit_sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &vi {
        *orbit_sizes.entry(r.full_orbit).or_default() += 1;
    }
    let sizes: Vec<usize> = orbit_sizes.values().copied().collect();
    check(
        vi.len() == 12 && sizes == [6, 6],
        format!("{records} records split chiral/reflexible as expected; (5,5,5) at p=11 gives {} hypermaps in orbits {sizes:?}", vi.len()),
    )
}

fn c8_nonorientable() -> Outcome {
    let q13: Vec<_> = census::nonorientable_census(13).unwrap().into_iter().filter(|q| q.quotient_exists).collect();
    assert_eq!(q13.len(), 1);
    assert_eq!(q13[0].base.full_group_type, FullAutType::GxC2);
    assert!(q13[0].base.hall.as_ref().unwrap().is_square);
    let all7 = census::nonorientable_census(7).unwrap();
    let q7: Vec<_> = all7.iter().filter(|q| q.quotient_exists).collect();
    let maps = q7.iter().filter(|q| q.base.hypermap_type == sig("0;2,3,8")).count();
    let hyper = q7.iter().filter(|q| q.base.hypermap_type == sig("0;3,3,4")).count();
    let pgl_type = all7
        .iter()
        .filter(|q| {
            q.base.hypermap_type == sig("0;3,3,4") && matches!(q.base.full_group_type, FullAutType::ProperExtension(_))
        })
        .collect::<Vec<_>>();
    assert_eq!(pgl_type.len(), 1);
    assert!(!pgl_type[0].quotient_exists);
    check(
        maps == 2 && hyper == 1,
        format!("p=13: one quotient; p=7: {maps} of type {{3,8}} and {hyper} of type (3,3,4), none from the PGL(2,7)-type hypermap"),
    )
}

/// Fixed points of `h ≠ 1` on the surface: a branch point of type `i` is
/// fixed by `h` for each `g` with `g⁻¹hg ∈ ⟨x_i⟩`, counted `m_i` times.
fn fixed_points(t: &GeneratingTuple, h: Elem) -> u64 {
    let g = t.group();
    t.elliptic()
        .iter()
        .zip(t.periods())
        .map(|(&x, &m)| {
            let powers: BTreeSet<Elem> = (0..m as i64).map(|k| g.pow(x, k)).collect();
            let hits = g.elements().filter(|&y| powers.contains(&g.conj(g.inv(y), h))).count() as u64;
            hits / m as u64
        })
        .sum()
}

/// Genus of `S/H` from Riemann–Hurwitz for the covering `S → S/H`.
fn quotient_genus(t: &GeneratingTuple, gen: Elem) -> u64 {
    let g = t.group();
    let h = g.subgroup_generated(&[gen]);
    let gs = genus_of_kernel(&t.signature(), g.order() as u64).unwrap() as i64;
    let fixed: i64 = h.elements().iter().filter(|&&x| x != 0).map(|&x| fixed_points(t, x) as i64).sum();
    let chi = (2 * gs - 2 - fixed) / h.order() as i64;
    assert_eq!((2 * gs - 2 - fixed) % h.order() as i64, 0);
    ((chi + 2) / 2) as u64
}

fn c9_jacobians() -> Outcome {
    let rows = data::families().unwrap();
    let mut reports = 0;
    for p in GOOD_PRIMES {
        let here: Vec<_> =
            rows.iter().filter(|r| r.condition.holds(p) && !matches!(r.case.as_str(), "x" | "xi" | "xii")).collect();
        assert_eq!(census::jacobian_census(p).unwrap().len(), here.len());
        for row in here {
            let g = group(&data::instantiate(&row.group, p));
            let t = find_epimorphism(&row.sig, &g).unwrap().unwrap();
            let r = decompose_jacobian(&row.case, p, &t).unwrap();
            assert!(r.admissibility.admissible);
            assert_eq!(r.residual_dim, 0);
            assert_eq!(r.dimension_sum(), p as u64 + 1);
            for f in &r.factors {
                assert_eq!(f.genus, quotient_genus(&t, f.generator), "({}) {} at {p}", row.case, f.subgroup);
            }
            if row.case == "viii" && p == 7 {
                assert_eq!(r.factors.iter().map(|f| f.genus).collect::<Vec<_>>(), [1, 3, 4]);
            }
            reports += 1;
        }
    }
    check(true, format!("{reports} decompositions admissible with residual 0 and Σ = p+1; quotient genera confirmed by fixed-point counts"))
}

fn c10_small_prime() -> Outcome {
    let report = census::small_prime_scan(3).unwrap();
    let listed =
        [("a", "0;2,3,10", "V25:S3"), ("b", "0;2,4,6", "S5"), ("c", "0;2,10,15", "C5xD3"), ("d", "0;4,5,20", "C20")];
    for (id, s, g) in listed {
        let a = report.find(&sig(s), g).unwrap_or_else(|| panic!("({id}) not found"));
        assert_eq!(a.status, ScanStatus::Listed { id: id.into() });
        assert_eq!(a.classes, Some(1), "({id})");
    }
    let restrictions = [("a.1", "0;3,3,5", "V25:C3"), ("a.2", "0;2,5,10", "V25:C2"), ("a.3", "0;5,5,5", "C5xC5")];
    for (id, s, g) in restrictions {
        let a = report.find(&sig(s), g).unwrap_or_else(|| panic!("({id}) not found"));
        assert_eq!(a.status, ScanStatus::ListedRestriction { id: id.into(), parent: "a".into() });
        assert!(a.restricted_from.iter().any(|(p, _)| p == "a"), "({id})");
    }
    check(report.missing.is_empty(), format!("p=5 list reproduced, one action each; missing {:?}", report.missing))
}

#[test]
fn acceptance_criteria() {
    let results = [
        criterion(1, 1, c1_signatures),
        criterion(2, 10, c2_rho_one),
        criterion(3, 10, c3_rho_two),
        criterion(4, 5, c4_good_primes),
        criterion(5, 60, c5_sporadic),
        criterion(6, 10, c6_petrie_and_traces),
        criterion(7, 30, c7_chirality),
        criterion(8, 10, c8_nonorientable),
        criterion(9, 5, c9_jacobians),
        criterion(10, 120, c10_small_prime),
    ];
    // Criterion 1 cannot pass: the enumeration finds (4,4,4) at ρ = 8, a
    // genuine hyperbolic signature absent from the printed list. Hold it to
    // exactly that discrepancy so any other change still fails the test.
    let diff = sigma_diff();
    assert_eq!(diff.len(), 1, "{diff:?}");
    assert_eq!(diff.get(&8), Some(&(vec![], vec!["0;4,4,4".to_string()])));
    assert_eq!(sig("0;4,4,4").area(), Rational::new(1, 4));
    for (i, (passed, line)) in results.iter().enumerate().skip(1) {
        assert!(passed, "criterion {} failed: {line}", i + 1);
    }
}
