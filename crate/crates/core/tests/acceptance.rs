//! Runs every acceptance criterion against its time limit and prints one
//! PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use ddg_forge_core::catalog::{self, CheckRecord};

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Duration,
    /// Limit applies to each check separately rather than to the total.
    per_check: bool,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "symplectic SRGs", limit: secs(5), per_check: true },
    Criterion { id: 2, title: "involution on the extension model", limit: secs(5), per_check: false },
    Criterion { id: 3, title: "complement DDG", limit: secs(30), per_check: false },
    Criterion { id: 4, title: "Sp(4,q)* pipeline", limit: secs(30), per_check: false },
    Criterion { id: 5, title: "Mathon quotient", limit: secs(60), per_check: false },
    Criterion { id: 6, title: "thin-DDG characterisation grid", limit: secs(10), per_check: false },
    Criterion { id: 7, title: "spectrum factorization", limit: secs(30), per_check: false },
    Criterion { id: 8, title: "RSHCD recursions", limit: secs(5), per_check: false },
    Criterion { id: 9, title: "conference machinery", limit: secs(5), per_check: false },
    Criterion { id: 10, title: "two-squares feasibility filter", limit: secs(1), per_check: false },
    Criterion { id: 11, title: "L(4) anchor", limit: secs(1), per_check: false },
];

/// `q ∈ {3, 5}` covers every instance the criteria name.
const MAX_Q: u64 = 5;

fn run_criterion(c: &Criterion) -> (bool, String) {
    let grid = catalog::checks(MAX_Q).expect("valid max_q");
    let mine: Vec<_> = grid.into_iter().filter(|k| k.criterion == Some(c.id)).collect();
    assert!(!mine.is_empty(), "criterion {} has no checks", c.id);

    let mut records: Vec<(CheckRecord, Duration)> = Vec::new();
    let total_start = Instant::now();
    for check in &mine {
        let start = Instant::now();
        let record = check.run(false);
        records.push((record, start.elapsed()));
    }
    let total = total_start.elapsed();

    let mut problems = Vec::new();
    for (r, took) in &records {
        if !r.pass {
            problems.push(format!("{} {}: {}", r.name, r.params, r.observed));
        }
        if c.per_check && *took > c.limit {
            problems.push(format!("{} {} took {took:.2?}", r.name, r.params));
        }
    }
    if !c.per_check && total > c.limit {
        problems.push(format!("total {total:.2?} over the limit"));
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!("{} checks in {total:.2?} (limit {:?}{})", records.len(), c.limit, if c.per_check { " each" } else { "" })
    } else {
        problems.join("; ")
    };
    (ok, detail)
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let (ok, detail) = run_criterion(c);
        println!("{} criterion {:>2} ({}): {detail}", if ok { "PASS" } else { "FAIL" }, c.id, c.title);
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
