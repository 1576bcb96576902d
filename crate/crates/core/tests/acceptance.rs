//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Library verdicts are paired with oracles written here from scratch
//! (table-level bijection checks, brute-force word counts, direct letter
//! simulation) so a bug shared by the suite and its enumerator cannot pass
//! silently.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use automaton_groups::families::{
    aleshin, bellaterra, make_aleshin, make_bellaterra, make_d, make_e, make_family,
    make_inverse_series, make_u, Kind, Scope,
};
use automaton_groups::machine::{compose, is_identity, Limits, MealyMachine};
use automaton_groups::transforms::{classify, inverse_automaton};
use automaton_groups::verify::{
    check_chi_criterion, check_duality, check_free_product, check_freeness, check_identities,
    check_level_transitivity, check_orbit_classification, check_pattern_witnesses, OrbitClass,
    Status, VerificationReport,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Bi-reversibility straight from the tables: every output map, every
/// transition map, and the joint map on `Q × X` are bijections.
fn oracle_bireversible(m: &MealyMachine) -> bool {
    let (nq, nx) = (m.num_states(), m.alphabet().len());
    let outs = (0..nq).all(|q| (0..nx).map(|x| m.out(q, x)).collect::<HashSet<_>>().len() == nx);
    let nexts = (0..nx).all(|x| (0..nq).map(|q| m.next(q, x)).collect::<HashSet<_>>().len() == nq);
    let joint = (0..nq)
        .flat_map(|q| (0..nx).map(move |x| (q, x)))
        .map(|(q, x)| (m.next(q, x), m.out(q, x)))
        .collect::<HashSet<_>>()
        .len()
        == nq * nx;
    outs && nexts && joint
}

/// Freely irreducible words of each length `1..=max` over `m` generators
/// and their inverses, counted by brute force.
fn oracle_irreducible_count(m: usize, max: usize) -> u64 {
    fn go(m: usize, left: usize, last: Option<usize>) -> u64 {
        if left == 0 {
            return 1;
        }
        (0..2 * m)
            .filter(|&l| last.is_none_or(|p| (p + m) % (2 * m) != l))
            .map(|l| go(m, left - 1, Some(l)))
            .sum()
    }
    (1..=max).map(|k| go(m, k, None)).sum()
}

fn require(report: &VerificationReport) -> Result<(), String> {
    match report.status() {
        Status::Pass => Ok(()),
        _ => Err(format!(
            "{} [{}]: {}",
            report.suite,
            report
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" "),
            report
                .failures
                .first()
                .map(|f| format!("{} ({})", f.check, f.witness))
                .or_else(|| report.incomplete.clone())
                .unwrap_or_default()
        )),
    }
}

fn subsets(of: &[u32]) -> Vec<BTreeSet<u32>> {
    (1u32..1 << of.len())
        .map(|mask| {
            of.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &n)| n)
                .collect()
        })
        .collect()
}

fn bireversibility() -> Outcome {
    let mut machines = vec![aleshin(), bellaterra(), make_bellaterra(0).unwrap()];
    for n in 1..=5 {
        let s = Scope::single(n);
        machines.extend([
            make_aleshin(n).unwrap(),
            make_bellaterra(n).unwrap(),
            make_inverse_series(&s).unwrap(),
            make_u(&s).unwrap(),
            make_d(&s).unwrap(),
            make_e(&s).unwrap(),
        ]);
    }
    for set in subsets(&[0, 1, 2, 3]) {
        let s = Scope::Union(set.clone());
        machines.push(make_family(&s, Kind::Bellaterra).unwrap());
        if !set.contains(&0) {
            machines.extend([
                make_family(&s, Kind::Aleshin).unwrap(),
                make_inverse_series(&s).unwrap(),
                make_u(&s).unwrap(),
                make_d(&s).unwrap(),
                make_e(&s).unwrap(),
            ]);
        }
    }
    for m in &machines {
        let c = classify(m);
        if !(c.bireversible && c.defects.is_empty()) {
            return Err(format!("{} classified {c:?}", m.name()));
        }
        if !oracle_bireversible(m) {
            return Err(format!(
                "{} fails the table-level bijection oracle",
                m.name()
            ));
        }
    }
    Ok(format!("{} machines bi-reversible", machines.len()))
}

fn inverses_and_involutions() -> Outcome {
    let lim = Limits::default();
    let mut checked = 0;
    let mut scopes: Vec<Scope> = vec![Scope::Classic];
    scopes.extend((1..=5).map(Scope::single));
    scopes.push(Scope::union([1, 2, 3]).unwrap());
    for s in &scopes {
        let a = Arc::new(make_family(s, Kind::Aleshin).unwrap());
        let inv = Arc::new(inverse_automaton(&a).unwrap());
        for q in 0..a.num_states() {
            let t = compose(&a.pointed(q), &inv.pointed(q), &lim).map_err(|e| e.to_string())?;
            if !is_identity(&t, &lim).map_err(|e| e.to_string())? {
                return Err(format!("{}: A_q I_q ≠ 1 at {}", a.name(), a.state_name(q)));
            }
            checked += 1;
        }
    }
    for n in 0..=3 {
        let b = Arc::new(make_bellaterra(n).unwrap());
        for q in 0..b.num_states() {
            let t = compose(&b.pointed(q), &b.pointed(q), &lim).map_err(|e| e.to_string())?;
            if !is_identity(&t, &lim).map_err(|e| e.to_string())? {
                return Err(format!("{}: B_q² ≠ 1 at {}", b.name(), b.state_name(q)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} exact identities"))
}

fn operator_identities() -> Outcome {
    let lim = Limits::default();
    let mut total = 0;
    let scopes = [
        Scope::Classic,
        Scope::single(1),
        Scope::single(2),
        Scope::single(3),
        Scope::union([1, 2]).unwrap(),
    ];
    for s in &scopes {
        let r = check_identities(s, &lim).map_err(|e| e.to_string())?;
        require(&r)?;
        total += r.checks;
    }
    Ok(format!("{total} identities over {} scopes", scopes.len()))
}

fn freeness() -> Outcome {
    let lim = Limits::default();
    let mut parts = Vec::new();
    for (scope, l, generators) in [
        (Scope::single(1), 5, 3),
        (Scope::single(2), 4, 5),
        (Scope::union([1, 2]).unwrap(), 3, 8),
    ] {
        let r = check_freeness(&scope, l, &lim).map_err(|e| e.to_string())?;
        require(&r)?;
        let expected = oracle_irreducible_count(generators, l);
        if r.checks != expected {
            return Err(format!(
                "{scope}: checked {} words, oracle counts {expected}",
                r.checks
            ));
        }
        parts.push(format!(
            "{scope} L={l}: {} words, depth ≤ {}",
            r.checks, r.stats["max_witness_depth"]
        ));
    }
    Ok(parts.join("; "))
}

fn free_product() -> Outcome {
    let lim = Limits::default();
    let mut parts = Vec::new();
    for (scope, l, m) in [
        (Scope::Classic, 8, 3u64),
        (Scope::union([0, 2]).unwrap(), 6, 6),
    ] {
        let r = check_free_product(&scope, l, &lim).map_err(|e| e.to_string())?;
        require(&r)?;
        let expected = m + (1..=l as u32).map(|k| m * (m - 1).pow(k - 1)).sum::<u64>();
        if r.checks != expected {
            return Err(format!("{scope}: {} checks, expected {expected}", r.checks));
        }
        parts.push(format!("{scope} L={l}: {} checks", r.checks));
    }
    Ok(parts.join("; "))
}

fn transitivity() -> Outcome {
    let lim = Limits::default();
    for (scope, k) in [(Scope::Classic, 6), (Scope::single(2), 4)] {
        require(&check_level_transitivity(&scope, k, &lim).map_err(|e| e.to_string())?)?;
    }
    Ok("dual of A levels 0..=6 (3^k), dual of A^(2) levels 0..=4 (5^k)".into())
}

fn orbit_classification() -> Outcome {
    let lim = Limits::default();
    for (which, scope, k) in [
        (OrbitClass::Pattern, Scope::single(1), 4),
        (OrbitClass::NoDoubleLetter, Scope::Classic, 7),
        (OrbitClass::NoDoubleLetter, Scope::single(2), 4),
    ] {
        require(&check_orbit_classification(which, &scope, k, &lim).map_err(|e| e.to_string())?)?;
    }
    Ok("patterns n=1 k ≤ 4; no-double-letter B k ≤ 7, B^(2) k ≤ 4".into())
}

fn duality() -> Outcome {
    let mut total = 0;
    for scope in [Scope::Classic, Scope::single(1)] {
        let r = check_duality(&scope, 3, 3, 3).map_err(|e| e.to_string())?;
        require(&r)?;
        // 259 words ξ, 15 words w, 15 words u
        if r.checks != 259 * 15 * 15 {
            return Err(format!("{} cases, expected {}", r.checks, 259 * 15 * 15));
        }
        total += r.checks;
    }
    Ok(format!("{total} cases over A and A^(1)"))
}

fn chi_criterion() -> Outcome {
    let r = check_chi_criterion(&Scope::Classic, 6).map_err(|e| e.to_string())?;
    require(&r)?;
    Ok(format!("{} words", r.checks))
}

fn witnesses() -> Outcome {
    let single = check_pattern_witnesses(&Scope::single(1), 6).map_err(|e| e.to_string())?;
    require(&single)?;
    let marked =
        check_pattern_witnesses(&Scope::union([1, 2]).unwrap(), 4).map_err(|e| e.to_string())?;
    require(&marked)?;
    // 2 + 4 + … + 64 patterns; 4 + 16 + 64 + 256 marked patterns
    if single.checks != 126 || marked.checks != 340 {
        return Err(format!(
            "{} patterns, {} marked patterns",
            single.checks, marked.checks
        ));
    }
    Ok(format!(
        "{} patterns, {} marked patterns",
        single.checks, marked.checks
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("bi-reversibility", bireversibility),
        ("inverses and involutions", inverses_and_involutions),
        ("operator identities", operator_identities),
        ("freeness", freeness),
        ("free product", free_product),
        ("level transitivity", transitivity),
        ("orbit classification", orbit_classification),
        ("duality", duality),
        ("chi criterion", chi_criterion),
        ("witnesses", witnesses),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}) [{secs:.2}s]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
