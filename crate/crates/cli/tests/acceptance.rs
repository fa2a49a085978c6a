use cli::{run, Golden, RunOptions, Section, Status};

const CRITERIA: [&str; 12] = [
    "S-invariants of H and E",
    "volume polynomials",
    "ruled surface S(C) and exceptional curves",
    "point invariants with the flagged addend",
    "exceptional-line invariants and point table",
    "beta > 0 for every scenario",
    "determinantal identities and lambda",
    "group data and fixed loci",
    "heart cubics, u^4 = -3 and iota",
    "F3 points and tangency dimension",
    "equivariant Picard table",
    "property suites",
];

fn main() {
    let report = run(Section::All, &Golden::bundled(), &RunOptions::default()).expect("report");
    let by = report.by_criterion();
    let mut failed = Vec::new();
    for (i, label) in CRITERIA.iter().enumerate() {
        let n = (i + 1) as u8;
        let claims = by.get(&n).cloned().unwrap_or_default();
        let bad: Vec<_> = claims.iter().filter(|c| matches!(c.status, Status::Mismatch | Status::Skipped)).collect();
        let flagged = claims.iter().filter(|c| c.status == Status::Flagged).count();
        let ok = !claims.is_empty() && bad.is_empty();
        println!(
            "criterion {n:>2}: {} {label} ({} claims, {flagged} flagged)",
            if ok { "PASS" } else { "FAIL" },
            claims.len()
        );
        for c in bad {
            println!("    {} {:?}: expected {}, computed {}", c.id, c.status, c.expected, c.computed);
        }
        if !ok {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
