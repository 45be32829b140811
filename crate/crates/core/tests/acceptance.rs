//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::Instant;

use num_integer::lcm;

use reflect_branch::branching::{
    analyze_mult2_family, build_mult2_family, induction_table, verify_nonextending_components,
    verify_theorem_bound,
};
use reflect_branch::group::conjugacy_classes;
use reflect_branch::irrep::{dim, enumerate_irreps, GroupParams};
use reflect_branch::laws::{
    verify_affine_lemma, verify_coset_lemma, verify_necklace_suite, verify_twins_structure, Bounds,
    ChildRelation, LawConfig, LawReport,
};
use reflect_branch::monomial::MonomialGroup;
use reflect_branch::oracle::{compare_canonical, restriction_table_oracle, Verdict};
use reflect_branch::partition::Partition;
use reflect_branch::symbreak::{builtin_groups, check_symmetry_breaking};

type Outcome = Result<String, String>;

fn gp(d: usize, e: usize, r: usize) -> GroupParams {
    GroupParams::new(d, e, r).unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn divisor_pairs(max_m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for e in 1..=m {
            if m % e == 0 {
                out.push((m / e, e));
            }
        }
    }
    out
}

fn first_failure(reports: &[LawReport]) -> Option<String> {
    reports
        .iter()
        .find(|r| !r.holds())
        .map(|r| format!("{} {}: {:?}", r.law, r.params, r.counterexamples.first()))
}

fn theorem_sweep() -> Outcome {
    let mut n = 0;
    for (d, e) in divisor_pairs(6) {
        let reports = [
            verify_theorem_bound(d, e, 4).map_err(|x| x.to_string())?,
            verify_nonextending_components(d, e, 4).map_err(|x| x.to_string())?,
        ];
        if let Some(f) = first_failure(&reports) {
            return Err(f);
        }
        n += 1;
    }
    Ok(format!("{n} (d,e) pairs, upper rank 1..=4"))
}

/// Every `G(de,e,R)` with `de <= 12`, `R >= 1` and order at most 2000.
fn oracle_pairs() -> Vec<GroupParams> {
    let mut out = Vec::new();
    for (d, e) in divisor_pairs(12) {
        for r in 1.. {
            let p = gp(d, e, r);
            if p.order() > 2000 {
                break;
            }
            out.push(p);
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let required = [
        gp(1, 1, 4),
        gp(2, 1, 3),
        gp(2, 2, 3),
        gp(1, 3, 3),
        gp(1, 4, 3),
        gp(2, 2, 2),
    ];
    let pairs = oracle_pairs();
    for p in &required {
        if !pairs.contains(p) {
            return Err(format!("{p} missing from the sweep"));
        }
    }
    for p in &pairs {
        let table = induction_table(p).map_err(|x| format!("{p}: {x}"))?;
        let oracle = restriction_table_oracle(p).map_err(|x| format!("{p}: {x}"))?;
        match compare_canonical(&table, &oracle).map_err(|x| x.to_string())? {
            Verdict::Match => {}
            v => return Err(format!("{p}: {v:?}")),
        }
    }
    Ok(format!("{} pairs, all exact matches", pairs.len()))
}

fn multiplicity_free() -> Outcome {
    let mut cases: Vec<GroupParams> = (1..=6)
        .flat_map(|d| (1..=5).map(move |r| gp(d, 1, r)))
        .collect();
    for (d, e) in [(1, 2), (2, 2)] {
        cases.extend((1..=5).map(|r| gp(d, e, r)));
    }
    for p in &cases {
        let t = induction_table(p).map_err(|x| x.to_string())?;
        if t.max_entry() > 1 {
            return Err(format!("{p} has an entry {}", t.max_entry()));
        }
    }
    Ok(format!("{} tables, lower rank 0..=4", cases.len()))
}

fn mult2_witness() -> Outcome {
    let t = induction_table(&gp(1, 3, 2)).map_err(|x| x.to_string())?;
    let dims = t.row_dims().map_err(|x| x.to_string())?;
    let row = dims
        .iter()
        .position(|&x| x == 2)
        .ok_or("no degree-2 row in G(3,3,2)")?;
    if !t.entries[row].contains(&2) {
        return Err(format!("degree-2 row of G(3,3,2) is {:?}", t.entries[row]));
    }
    let c = build_mult2_family(5, 5, &[], &part("[1]"), &part("[]")).map_err(|x| x.to_string())?;
    let a = analyze_mult2_family(5, 5, &c).map_err(|x| x.to_string())?;
    if a.mult2_components.len() != 2 {
        return Err(format!(
            "{c}: {} multiplicity-2 components",
            a.mult2_components.len()
        ));
    }
    Ok(format!(
        "G(3,3,2) row {:?}; {c} has 2 components of multiplicity 2",
        t.entries[row]
    ))
}

fn law_suites() -> Outcome {
    let cfg = LawConfig::default();
    let mut reports = Vec::new();
    for n in 2..=8 {
        for k in 2..=3 {
            for o in 1..=2 {
                reports.extend(
                    verify_necklace_suite(Bounds::new(n, k, o), &cfg).map_err(|x| x.to_string())?,
                );
            }
        }
    }
    let necklace = reports.len();
    for n1 in 1..=60usize {
        for n2 in 1..=60usize {
            if lcm(n1, n2) <= 60 {
                reports.push(verify_coset_lemma(n1, n2).map_err(|x| x.to_string())?);
            }
        }
    }
    for n in 3..=12 {
        reports.push(verify_affine_lemma(n).map_err(|x| x.to_string())?);
    }
    let groups = builtin_groups(12).map_err(|x| x.to_string())?;
    for g in &groups {
        for pearls in 2..=3 {
            reports.push(check_symmetry_breaking(g, pearls).map_err(|x| x.to_string())?);
        }
    }
    if let Some(f) = first_failure(&reports) {
        return Err(f);
    }
    Ok(format!(
        "{} reports ({necklace} necklace, {} groups), no counterexamples",
        reports.len(),
        groups.len()
    ))
}

/// Classes are counted in the explicit group; the cap is raised to cover
/// `G(6,1,4)`.
fn structural_identities() -> Outcome {
    let mut groups: Vec<GroupParams> = divisor_pairs(6)
        .into_iter()
        .flat_map(|(d, e)| (1..=4).map(move |r| gp(d, e, r)))
        .chain(oracle_pairs())
        .collect();
    groups.sort_by_key(|p| (p.d, p.e, p.r));
    groups.dedup();
    for p in &groups {
        let t = induction_table(p).map_err(|x| x.to_string())?;
        let defects = t.dimension_defects().map_err(|x| x.to_string())?;
        if !defects.is_empty() {
            return Err(format!("{p}: dimension rule fails on rows {defects:?}"));
        }
        for q in [*p, p.with_rank(p.r - 1)] {
            let irreps = enumerate_irreps(&q);
            let sum: u128 = irreps
                .iter()
                .map(|l| dim(l).map(|x| x * x))
                .sum::<Result<u128, _>>()
                .map_err(|x| x.to_string())?;
            if sum != q.order() {
                return Err(format!(
                    "{q}: sum of squared dimensions {sum} != {}",
                    q.order()
                ));
            }
            let g = MonomialGroup::with_cap(&q, 40_000).map_err(|x| x.to_string())?;
            let classes = conjugacy_classes(&g).len();
            if classes != irreps.len() {
                return Err(format!(
                    "{q}: {classes} classes but {} irreducibles",
                    irreps.len()
                ));
            }
        }
    }
    Ok(format!("{} tables", groups.len()))
}

fn negative_controls() -> Outcome {
    let report = verify_twins_structure(
        Bounds::new(8, 3, 2),
        ChildRelation::Perp,
        &LawConfig::default(),
    )
    .map_err(|x| x.to_string())?;
    if report.holds() {
        return Err("the weakened twins verifier found nothing".into());
    }
    let p = gp(1, 3, 3);
    let table = induction_table(&p).map_err(|x| x.to_string())?;
    let mut oracle = restriction_table_oracle(&p).map_err(|x| x.to_string())?;
    oracle.entries[0][0] += 1;
    match compare_canonical(&table, &oracle).map_err(|x| x.to_string())? {
        Verdict::Mismatch(_) => {}
        v => return Err(format!("corrupted table gave {v:?}")),
    }
    let mut table = induction_table(&gp(2, 2, 3)).map_err(|x| x.to_string())?;
    let oracle = restriction_table_oracle(&gp(2, 2, 3)).map_err(|x| x.to_string())?;
    let row = table.entries.iter().position(|r| r.contains(&1)).unwrap();
    let col = table.entries[row].iter().position(|&x| x == 1).unwrap();
    table.entries[row][col] = 0;
    match compare_canonical(&table, &oracle).map_err(|x| x.to_string())? {
        Verdict::Mismatch(_) => {}
        v => return Err(format!("corrupted table gave {v:?}")),
    }
    Ok(format!(
        "{} twins counterexamples; corrupted tables rejected",
        report.counterexamples.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("theorem sweep", theorem_sweep),
        ("oracle equivalence", oracle_equivalence),
        ("multiplicity-free classical cases", multiplicity_free),
        ("multiplicity-2 witness", mult2_witness),
        ("law suites", law_suites),
        ("structural identities", structural_identities),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg}) [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
