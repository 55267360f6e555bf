mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use matroid_foundations::bits;
use matroid_foundations::crossratio::{omega_status, GpFunction, OmegaStatus, Slot};
use matroid_foundations::foundation::{
    check_positive_orientation, classify, foundation, foundation_with_seed, hexagon_signs,
    hom_count, lift_orientation, DyadicUnit, FoundationDecomposition, RepresentationClass,
};
use matroid_foundations::matroid::{catalog, Matroid};
use matroid_foundations::oracle::{enumerate_representations, orbit_count, rescaling_classes};
use matroid_foundations::pasture::{
    admits_morphism, is_isomorphic, named_pasture, product, quotient, target_by_name, tensor,
    FactorType, FinitePasture, NAMED_PASTURES,
};

use common::{gp_from_assignment, named_suite, oracle_suite, ordered_quads, uniform_rep};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn signature(f: &FoundationDecomposition) -> String {
    let factors: Vec<String> = f
        .factor_counts()
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .map(|(t, n)| format!("{t}^{n}"))
        .collect();
    format!("({}, {{{}}})", f.head, factors.join(", "))
}

fn np(name: &str) -> FinitePasture {
    named_pasture(name).unwrap()
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for (name, m) in [
        ("U(2,4)", Matroid::uniform(2, 4).unwrap()),
        ("C5", catalog("C5").unwrap()),
        ("C5dual", catalog("C5dual").unwrap()),
    ] {
        let f = foundation(&m).map_err(|e| e.to_string())?;
        let sig = signature(&f);
        check(sig == "(F1pm, {U^1})", || format!("{name} gave {sig}"))?;
        seen.push(format!("{name}={sig}"));
    }
    Ok(seen.join(" "))
}

fn criterion_2() -> Outcome {
    let mut seen = Vec::new();
    for name in ["F7", "F7dual"] {
        let f = foundation(&catalog(name).unwrap()).map_err(|e| e.to_string())?;
        let sig = signature(&f);
        check(sig == "(F2, {})", || format!("{name} gave {sig}"))?;
        seen.push(format!("{name}={sig}"));
    }
    Ok(seen.join(" "))
}

fn criterion_3() -> Outcome {
    let mut seen = Vec::new();
    for (name, expected) in [
        ("F7minus", 3),
        ("AG23", 4),
        ("T8", 6),
        ("F7", 7),
        ("MK4", 1),
    ] {
        let c = classify(&catalog(name).unwrap()).map_err(|e| e.to_string())?;
        check(c == RepresentationClass(expected), || {
            format!("{name} classified as {c}, expected C{expected}")
        })?;
        seen.push(format!("{name}={c}"));
    }
    let sum = catalog("F7")
        .unwrap()
        .direct_sum(&catalog("F7minus").unwrap())
        .unwrap();
    let c = classify(&sum).map_err(|e| e.to_string())?;
    check(
        c == RepresentationClass(9) && !c.field_representable(),
        || format!("F7+F7minus classified as {c}"),
    )?;
    seen.push(format!(
        "F7+F7minus={c} field_representable={}",
        c.field_representable()
    ));
    Ok(seen.join(" "))
}

fn criterion_4() -> Outcome {
    let u24 = Matroid::uniform(2, 4).unwrap();
    let mut seen = Vec::new();
    for q in [3u64, 4, 5, 7, 8, 9] {
        let n = hom_count(&u24, &np(&format!("F{q}"))).map_err(|e| e.to_string())?;
        check(n == q - 2, || format!("GF({q}) gave {n}"))?;
        seen.push(format!("GF({q})={n}"));
    }
    let n = hom_count(&u24, &np("S")).map_err(|e| e.to_string())?;
    check(n == 3, || format!("S gave {n}"))?;
    seen.push(format!("S={n}"));
    Ok(seen.join(" "))
}

fn oracle_table() -> Result<Vec<(String, String, u64, u64)>, String> {
    let mut rows = Vec::new();
    for (name, m) in oracle_suite() {
        for target in ["F2", "F3", "F4", "F5", "S", "W"] {
            let p = np(target);
            let classes =
                rescaling_classes(&m, &p).map_err(|e| format!("{name} over {target}: {e}"))?;
            let homs = hom_count(&m, &p).map_err(|e| format!("{name} over {target}: {e}"))?;
            rows.push((name.to_string(), target.to_string(), classes, homs));
        }
    }
    Ok(rows)
}

fn criterion_5(table: &[(String, String, u64, u64)]) -> Outcome {
    for (m, p, classes, homs) in table {
        check(classes == homs, || {
            format!("{m} over {p}: oracle {classes}, foundation {homs}")
        })?;
    }
    Ok(format!("{} matroid/target pairs agree", table.len()))
}

fn criterion_6(table: &[(String, String, u64, u64)]) -> Outcome {
    let ternary: Vec<String> = table
        .iter()
        .filter(|r| r.1 == "F3")
        .map(|r| format!("{}={}", r.0, r.2))
        .collect();
    for (m, p, classes, _) in table {
        if p == "F3" {
            check(*classes <= 1, || {
                format!("{m} has {classes} ternary rescaling classes")
            })?;
        }
    }
    Ok(ternary.join(" "))
}

fn criterion_7() -> Outcome {
    let u24 = Matroid::uniform(2, 4).unwrap();
    let s = np("S");
    let f5 = np("F5");
    let hex = foundation(&u24).map_err(|e| e.to_string())?.hexagons[0].clone();
    let en = enumerate_representations(&u24, &s).map_err(|e| e.to_string())?;
    let classes = orbit_count(&u24, &s, &en).map_err(|e| e.to_string())?;
    check(classes == 3, || {
        format!("U(2,4) has {classes} chirotope classes")
    })?;
    let gf5 = enumerate_representations(&u24, &f5).map_err(|e| e.to_string())?;
    let gf5_pairs: Vec<[u8; 2]> = gf5
        .assignments
        .iter()
        .map(|a| {
            let gp = gp_from_assignment(&u24, &f5, a);
            [
                gp.cross_ratio(&u24, 0, hex.quad_of(Slot::X)).unwrap(),
                gp.cross_ratio(&u24, 0, hex.quad_of(Slot::Y)).unwrap(),
            ]
        })
        .collect();
    let candidates = [
        [DyadicUnit::Z, DyadicUnit::Z],
        [DyadicUnit::Z_INV, DyadicUnit::MINUS_ONE],
        [DyadicUnit::MINUS_ONE, DyadicUnit::Z_INV],
    ];
    let mut lift_of_pattern: BTreeMap<[i64; 6], [DyadicUnit; 2]> = BTreeMap::new();
    for a in &en.assignments {
        let signs: BTreeMap<u32, i64> = u24
            .bases()
            .iter()
            .zip(a)
            .map(|(&b, &v)| (b, if v == 1 { 1 } else { -1 }))
            .collect();
        let chi = GpFunction::chirotope(&u24, &signs).map_err(|e| e.to_string())?;
        let pattern = hexagon_signs(&u24, &chi, &hex).map_err(|e| e.to_string())?;
        let lift = lift_orientation(&u24, &chi).map_err(|e| e.to_string())?;
        let comp = &lift.components[0];
        let matching = candidates
            .iter()
            .filter(|c| [c[0].sign(), c[1].sign()] == [pattern[0], pattern[1]])
            .count();
        check(matching == 1, || {
            format!("{matching} dyadic pairs match signs {pattern:?}")
        })?;
        let recovered = comp.slot_values[0].map(DyadicUnit::sign);
        check(recovered == pattern, || {
            format!("sign of lift {recovered:?} differs from {pattern:?}")
        })?;
        let pushed = [
            comp.pair[0].in_prime_field(5) as u8,
            comp.pair[1].in_prime_field(5) as u8,
        ];
        check(gf5_pairs.contains(&pushed), || {
            format!("lift {:?} pushed to GF(5) is not realized", comp.pair)
        })?;
        if let Some(prev) = lift_of_pattern.insert(pattern, comp.pair) {
            check(prev == comp.pair, || {
                format!("pattern {pattern:?} lifted to two values")
            })?;
        }
    }
    check(lift_of_pattern.len() == 3, || {
        format!("{} distinct sign patterns", lift_of_pattern.len())
    })?;
    let lifts: Vec<String> = lift_of_pattern
        .values()
        .map(|p| format!("({}, {})", p[0], p[1]))
        .collect();
    Ok(format!(
        "{} chirotopes in 3 classes, lifts {}",
        en.count,
        lifts.join(" ")
    ))
}

fn criterion_8() -> Outcome {
    let u24 = Matroid::uniform(2, 4).unwrap();
    let mk4 = catalog("MK4").unwrap();
    let a = check_positive_orientation(&u24, &GpFunction::all_positive(&u24))
        .map_err(|e| e.to_string())?;
    check((a.r, a.near_regular, a.lifts_to_u) == (1, true, 2), || {
        format!("U(2,4) gave {a:?}")
    })?;
    let b = check_positive_orientation(&mk4, &GpFunction::all_positive(&mk4))
        .map_err(|e| e.to_string())?;
    check((b.r, b.near_regular, b.lifts_to_u) == (0, true, 1), || {
        format!("MK4 gave {b:?}")
    })?;
    let note = if b.pluecker_ok {
        ""
    } else {
        "; note: the all-positive sign map of MK4 violates a Pluecker relation"
    };
    Ok(format!(
        "U(2,4)=(1, near_regular, 2) MK4=(0, near_regular, 1){note}"
    ))
}

fn criterion_9() -> Outcome {
    let iso = |a: &FinitePasture, b: &FinitePasture| is_isomorphic(a, b).unwrap_or(false);
    let cases = [
        (
            "F2xF3 = F1pm",
            iso(&product(&np("F2"), &np("F3")).unwrap(), &np("F1pm")),
        ),
        (
            "F2(x)F3 = K",
            iso(&tensor(&np("F2"), &np("F3")).unwrap(), &np("K")),
        ),
        (
            "F3xF4 = H",
            iso(&product(&np("F3"), &np("F4")).unwrap(), &np("H")),
        ),
        (
            "F2xS = F1pm",
            iso(&product(&np("F2"), &np("S")).unwrap(), &np("F1pm")),
        ),
        (
            "F2(x)S = K",
            iso(&tensor(&np("F2"), &np("S")).unwrap(), &np("K")),
        ),
        (
            "F3xS = DmodZ2",
            iso(&product(&np("F3"), &np("S")).unwrap(), &np("DmodZ2")),
        ),
    ];
    for (name, ok) in &cases {
        check(*ok, || format!("{name} fails"))?;
    }
    Ok(format!("{} isomorphisms hold", cases.len()))
}

const TABLE_TARGETS: [&str; 14] = [
    "U", "D", "H", "F2", "F3", "F4", "F5", "F7", "F8", "Q", "C", "S", "P", "W",
];

const MORPHISM_TABLE: [(FactorType, &str); 5] = [
    (FactorType::U, "111011111111 11"),
    (FactorType::D, "010010110111 11"),
    (FactorType::H, "001011010010 11"),
    (FactorType::F3, "000010000000 01"),
    (FactorType::F2, "000101001000 00"),
];

fn criterion_10() -> Outcome {
    let mut cells = 0;
    for (factor, row) in MORPHISM_TABLE {
        let expected: Vec<bool> = row
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c == '1')
            .collect();
        for (target, want) in TABLE_TARGETS.iter().zip(expected) {
            let got = admits_morphism(factor, &target_by_name(target).map_err(|e| e.to_string())?);
            check(got == want, || {
                format!("({factor}, {target}): got {got}, table has {want}")
            })?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells match"))
}

fn duality_invariance() -> Result<usize, String> {
    let suite = named_suite();
    for (name, m) in &suite {
        let a = foundation(m).map_err(|e| e.to_string())?;
        let b = foundation(&m.dual()).map_err(|e| e.to_string())?;
        check(a.signature() == b.signature(), || {
            format!("{name}: {} vs dual {}", signature(&a), signature(&b))
        })?;
    }
    Ok(suite.len())
}

fn hexagon_identities() -> Result<usize, String> {
    let mut checked = 0;
    let mut reps = Vec::new();
    for q in [3, 4, 5, 7, 8, 9] {
        reps.push(uniform_rep(q, 2, 4));
    }
    for q in [4, 5, 7, 8, 9] {
        reps.push(uniform_rep(q, 2, 5));
        reps.push(uniform_rep(q, 3, 5));
    }
    for (m, gp, field) in &reps {
        let p = gp.pasture();
        let r = m.rank();
        for j in bits::subsets_of_size(m.ground(), r - 2) {
            for quad in ordered_quads(m.ground() & !j) {
                if omega_status(m, j, quad).unwrap().status != OmegaStatus::Nondegenerate {
                    continue;
                }
                let cr = |q: [usize; 4]| gp.cross_ratio(m, j, q).unwrap();
                let [a, b, c, d] = quad;
                let x = cr(quad);
                check(cr([a, b, d, c]) == p.inv(x), || {
                    format!("R1 fails at {quad:?} over GF({})", field.order())
                })?;
                for k in [[b, a, d, c], [c, d, a, b], [d, c, b, a]] {
                    check(cr(k) == x, || format!("Klein symmetry fails at {quad:?}"))?;
                }
                let triple = p.mul(p.mul(x, cr([a, c, d, b])), cr([a, d, b, c]));
                check(triple == p.eps(), || format!("R2 fails at {quad:?}"))?;
                check(p.is_null(x, cr([a, c, b, d]), p.eps()), || {
                    format!("R+ fails at {quad:?}")
                })?;
                checked += 1;
            }
        }
        for five in bits::subsets_of_size(m.ground(), 5) {
            let e = bits::elems(five);
            let [e1, e2, e3, e4, e5] = [e[0], e[1], e[2], e[3], e[4]];
            if r == 2 {
                let prod = [[e1, e2, e3, e4], [e1, e2, e4, e5], [e1, e2, e5, e3]]
                    .iter()
                    .fold(1, |acc, &q| p.mul(acc, gp.cross_ratio(m, 0, q).unwrap()));
                check(prod == 1, || {
                    format!("tip relation fails over GF({})", field.order())
                })?;
            } else {
                let b = bits::bit;
                let terms = [
                    (b(e5), [e1, e2, e3, e4]),
                    (b(e3), [e1, e2, e4, e5]),
                    (b(e4), [e1, e2, e5, e3]),
                ];
                let prod = terms.iter().fold(1, |acc, &(j, q)| {
                    p.mul(acc, gp.cross_ratio(m, j, q).unwrap())
                });
                check(prod == 1, || {
                    format!("cotip relation fails over GF({})", field.order())
                })?;
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn shuffle_invariance() -> Result<usize, String> {
    let mut runs = 0;
    for (name, m) in named_suite() {
        let orders = |f: FoundationDecomposition| {
            let mut o: Vec<usize> = f.components.iter().map(|c| c.order).collect();
            o.sort_unstable();
            o
        };
        let base = orders(foundation(&m).map_err(|e| e.to_string())?);
        for seed in 0..4 {
            let shuffled = orders(foundation_with_seed(&m, Some(seed)).map_err(|e| e.to_string())?);
            check(shuffled == base, || {
                format!("{name} with seed {seed}: {shuffled:?} vs {base:?}")
            })?;
            runs += 1;
        }
    }
    Ok(runs)
}

fn constructed_pastures_validate() -> Result<usize, String> {
    let small = ["F1pm", "F2", "F3", "F4", "F5", "K", "S", "W", "H", "DmodZ2"];
    let mut count = 0;
    for a in small {
        for b in small {
            for p in [product(&np(a), &np(b)), tensor(&np(a), &np(b))] {
                let p = p.map_err(|e| format!("{a}, {b}: {e}"))?;
                check(p.validate().is_empty(), || {
                    format!("construction on {a}, {b} fails validation")
                })?;
                count += 1;
            }
        }
    }
    for name in NAMED_PASTURES {
        let p = np(name);
        for rel in [[1, 1, 0], [1, 1, 1], [1, 1, p.eps()]] {
            let qp = quotient(&p, &[rel]).map_err(|e| format!("{name}: {e}"))?;
            check(qp.validate().is_empty(), || {
                format!("quotient of {name} by {rel:?} fails validation")
            })?;
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_11() -> Outcome {
    let dual = duality_invariance()?;
    let hex = hexagon_identities()?;
    let shuffles = shuffle_invariance()?;
    let pastures = constructed_pastures_validate()?;
    Ok(format!(
        "duality on {dual} matroids, {hex} hexagon/tip/cotip checks, {shuffles} shuffled runs, {pastures} constructed pastures"
    ))
}

fn report(id: usize, title: &str, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; exceeded {limit:?}")),
        Err(e) => (false, e),
    };
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:>2} {verdict}  {title} [{:.2?} / limit {limit:?}]: {detail}",
        elapsed
    );
    pass
}

fn main() {
    let s = Duration::from_secs;
    let mut passed = 0;
    let mut total = 0;
    let mut tally = |ok: bool| {
        total += 1;
        passed += usize::from(ok);
    };
    tally(report(
        1,
        "foundations of U(2,4), C5, C5dual",
        s(1),
        criterion_1,
    ));
    tally(report(
        2,
        "foundations of F7 and its dual",
        s(5),
        criterion_2,
    ));
    tally(report(3, "named classifications", s(30), criterion_3));
    tally(report(4, "rescaling classes of U(2,4)", s(1), criterion_4));
    let mut table: Option<Vec<(String, String, u64, u64)>> = None;
    tally(report(5, "oracle equivalence", s(180), || {
        let rows = oracle_table()?;
        let outcome = criterion_5(&rows);
        table = Some(rows);
        outcome
    }));
    tally(report(
        6,
        "at most one ternary rescaling class",
        s(180),
        || criterion_6(table.as_deref().ok_or("oracle table unavailable")?),
    ));
    tally(report(
        7,
        "dyadic lifts of U(2,4) orientations",
        s(1),
        criterion_7,
    ));
    tally(report(8, "positive orientations", s(1), criterion_8));
    tally(report(9, "pasture identities", s(1), criterion_9));
    tally(report(
        10,
        "existence of morphisms from U, D, H, F3, F2",
        s(1),
        criterion_10,
    ));
    tally(report(11, "property suite", s(300), criterion_11));
    println!("acceptance: {passed}/{total} criteria passed");
    if passed != total {
        std::process::exit(1);
    }
}
