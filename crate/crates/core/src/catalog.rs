//! The reproduction catalog: a fixed grid of construct-then-verify checks
//! with a JSON report.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ddg::{
    self, construct_ddg_family, decompose_to_rq, spectrum_factorization_check, Classification,
    Family, Ps22Variant, RecursionInput, ThinDdg,
};
use crate::designs::{self, Sign};
use crate::field::{FieldCtx, FiniteField};
use crate::graphs;
use crate::matrix::IntMatrix;
use crate::symplectic::{self, ExtensionModel};

pub const ALLOWED_MAX_Q: [u64; 3] = [3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("max_q must be one of 3, 5, 7; got {0}")]
    BadMaxQ(u64),
}

type Runner = Box<dyn Fn() -> Result<String, String> + Send + Sync>;

/// One entry of the grid. `run` returns the observation, as `Err` on failure.
pub struct Check {
    /// Acceptance criterion this check belongs to, if any.
    pub criterion: Option<u8>,
    pub name: String,
    pub params: Value,
    pub expected: String,
    run: Runner,
}

impl Check {
    fn new(
        criterion: Option<u8>,
        name: &str,
        params: Value,
        expected: impl Into<String>,
        run: impl Fn() -> Result<String, String> + Send + Sync + 'static,
    ) -> Self {
        Check {
            criterion,
            name: name.to_string(),
            params,
            expected: expected.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self, timing: bool) -> CheckRecord {
        let start = Instant::now();
        let outcome = (self.run)();
        let elapsed_ms = timing.then(|| start.elapsed().as_millis() as u64);
        let (observed, pass) = match outcome {
            Ok(o) => (o, true),
            Err(o) => (o, false),
        };
        CheckRecord {
            name: self.name.clone(),
            params: self.params.clone(),
            expected: self.expected.clone(),
            observed,
            pass,
            elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: Value,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub max_q: u64,
    pub pass: bool,
    pub records: Vec<CheckRecord>,
}

fn same(expected: &str, observed: String) -> Result<String, String> {
    if observed == expected {
        Ok(observed)
    } else {
        Err(observed)
    }
}

fn err(e: impl ToString) -> String {
    format!("error: {}", e.to_string())
}

fn odd_qs(max_q: u64) -> Vec<u64> {
    [3, 5, 7].into_iter().filter(|&q| q <= max_q).collect()
}

fn record_text(ddg: &ThinDdg) -> String {
    format!("{} {}", ddg.params(), ddg.classification())
}

fn family_grid() -> Vec<Family> {
    let mut grid = vec![
        Family::Ps22 { t: 2, variant: Ps22Variant::A },
        Family::Ps22 { t: 2, variant: Ps22Variant::B },
    ];
    for eps in Sign::both() {
        grid.push(Family::Multipartite { t: 6, u: 1, eps });
    }
    for eps in Sign::both() {
        grid.push(Family::Bipartite { u: 1, eps });
    }
    for delta in Sign::both() {
        grid.push(Family::PairOfCliques { u: 1, delta });
    }
    grid
}

fn family_classification(f: Family) -> Classification {
    match f {
        Family::Multipartite { .. } => Classification::Proper,
        _ if f.expected_parameters().is_proper() => Classification::Proper,
        _ => Classification::AlmostProper,
    }
}

const REMARK_A: [[i64; 4]; 4] = [[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]];

fn kind_name(s: Sign) -> &'static str {
    if s == Sign::Plus {
        "+1"
    } else {
        "-1"
    }
}

/// The grid, in report order.
pub fn checks(max_q: u64) -> Result<Vec<Check>, CatalogError> {
    if !ALLOWED_MAX_Q.contains(&max_q) {
        return Err(CatalogError::BadMaxQ(max_q));
    }
    let mut out = Vec::new();

    // Symplectic strongly regular graphs.
    out.push(Check::new(Some(1), "sp_graph", json!({"t": 2, "q": 2}), "(15,6,1,3)", || {
        let g = symplectic::sp_graph(2, 2).map_err(err)?;
        same("(15,6,1,3)", g.params.to_string())
    }));
    for q in odd_qs(max_q) {
        let expected = symplectic::sp_parameters(2, q).to_string();
        let e = expected.clone();
        out.push(Check::new(Some(1), "sp_graph", json!({"t": 2, "q": q}), &*expected, move || {
            let g = symplectic::sp_graph(2, q).map_err(err)?;
            same(&e, g.params.to_string())
        }));
        let e = expected.clone();
        out.push(Check::new(Some(1), "sp4_extension_model", json!({"q": q}), &*expected, move || {
            let m = ExtensionModel::new(q).map_err(err)?;
            same(&e, m.params().to_string())
        }));
    }

    for q in odd_qs(max_q) {
        let v = (q * q * q + q * q + q + 1) as usize;
        let expected = format!("fixed-point-free involutory automorphism, {} edge orbits, 0 non-edge orbits", v / 2);
        let e = expected.clone();
        out.push(Check::new(Some(2), "sp4_involution", json!({"q": q}), expected, move || {
            let m = ExtensionModel::new(q).map_err(err)?;
            let r = graphs::involution_analyze(m.graph(), &m.involution()).map_err(err)?;
            let fpf = if r.fixed_point_free() { "fixed-point-free" } else { "fixing" };
            same(
                &e,
                format!("{fpf} involutory automorphism, {} edge orbits, {} non-edge orbits", r.edge_orbits, r.nonedge_orbits),
            )
        }));
    }

    for q in odd_qs(max_q) {
        let expected = format!(
            "{} almost-proper; Q symmetric, zero diagonal, Q² = {}I",
            symplectic::sp4_complement_parameters(q),
            q * q
        );
        let e = expected.clone();
        out.push(Check::new(Some(3), "sp4_complement_ddg", json!({"q": q}), expected, move || {
            let ddg = symplectic::sp4_complement_ddg(q).map_err(err)?;
            let pair = decompose_to_rq(&ddg).map_err(err)?;
            let qm = pair.q().matrix();
            let zero_diag = if qm.diagonal().iter().all(|&d| d == 0) { "zero" } else { "nonzero" };
            let sym = if qm.is_symmetric() { "symmetric" } else { "asymmetric" };
            let w = pair.weight();
            let exact = qm.try_mul(qm).map_err(err)? == IntMatrix::identity(pair.m()).scale(w);
            let square = if exact { format!("Q² = {w}I") } else { "Q² not scalar".into() };
            same(&e, format!("{}; Q {sym}, {zero_diag} diagonal, {square}", record_text(&ddg)))
        }));
    }

    for q in odd_qs(max_q) {
        let expected = format!(
            "spread of {} cliques of size {}; distance-regular, diameter 3, antipodal classes = spread; array {{Q,Q−s−1,1;1,s,Q}} with Q = {}",
            q * q + 1,
            q + 1,
            q * q
        );
        out.push(Check::new(Some(4), "sp4_star", json!({"q": q}), expected, move || {
            let star = symplectic::sp4_star(q).map_err(err)?;
            Ok(format!(
                "{} vertices, valency {}, spread {}x{}, array {}, s = {}",
                star.graph.n(),
                star.graph.valency().map_err(err)?,
                star.spread.len(),
                star.spread.uniform_size().unwrap_or(0),
                star.array,
                star.s
            ))
        }));
    }

    for q in odd_qs(max_q) {
        let expected = format!("B ≡ R ≡ Q (mod 2), Q² = {}I, |Q| = adjacency of M({})", q * q, q * q);
        out.push(Check::new(Some(5), "mathon_quotient_check", json!({"q": q}), expected, move || {
            let report = symplectic::mathon_quotient_check(q).map_err(err)?;
            Ok(format!("{report}; M array {}", report.mathon_array))
        }));
    }
    out.push(Check::new(
        None,
        "mathon_graph",
        json!({"Q": 9, "r": 4, "b": 1}),
        "40 vertices, array equal to that of Sp(4,3)*",
        || {
            let f = FieldCtx::with_order(9).map_err(err)?;
            let m = symplectic::mathon_graph(&f, 4, f.one()).map_err(err)?;
            let star = symplectic::sp4_star(3).map_err(err)?;
            let text = format!("{} vertices, array {}", m.graph.n(), m.array);
            if m.graph.n() == 40 && m.array == star.array {
                Ok(text)
            } else {
                Err(text)
            }
        },
    ));
    out.push(Check::new(
        None,
        "mathon_graph",
        json!({"Q": 9, "r": 2, "b": 1}),
        "20 vertices, antipodal classes of size 2, array {9,4,1;1,4,9}",
        || {
            let f = FieldCtx::with_order(9).map_err(err)?;
            let m = symplectic::mathon_graph(&f, 2, f.one()).map_err(err)?;
            same(
                "20 vertices, antipodal classes of size 2, array {9,4,1;1,4,9}",
                format!(
                    "{} vertices, antipodal classes of size {}, array {}",
                    m.graph.n(),
                    m.antipodal.uniform_size().unwrap_or(0),
                    m.array
                ),
            )
        },
    ));

    for family in family_grid() {
        let expected = format!(
            "{} {}; decompose∘assemble = id",
            family.expected_parameters(),
            family_classification(family)
        );
        let e = expected.clone();
        let params = serde_json::to_value(family).expect("families serialize");
        out.push(Check::new(Some(6), "construct_ddg_family", params, expected, move || {
            let built = construct_ddg_family(family).map_err(err)?;
            let assembled = ddg::assemble_from_rq(&built.pair).map_err(err)?;
            let back = decompose_to_rq(&assembled).map_err(err)?;
            let trip = if back == built.pair { "decompose∘assemble = id" } else { "round trip differs" };
            same(&e, format!("{}; {trip}", record_text(&assembled)))
        }));
    }

    for q in odd_qs(max_q) {
        out.push(Check::new(
            Some(7),
            "spectrum_factorization",
            json!({"source": "sp4_complement_ddg", "q": q}),
            "charpoly(A) = charpoly(R)·charpoly(Q)",
            move || {
                let ddg = symplectic::sp4_complement_ddg(q).map_err(err)?;
                spectrum_text(&ddg)
            },
        ));
    }
    for family in family_grid() {
        let params = json!({"source": family.name()});
        out.push(Check::new(Some(7), "spectrum_factorization", params, "charpoly(A) = charpoly(R)·charpoly(Q)", move || {
            let built = construct_ddg_family(family).map_err(err)?;
            spectrum_text(&built.ddg)
        }));
    }

    for eps in Sign::both() {
        let expected = format!("order 16, type {}, equals the order-4 factor ⊗ H", kind_name(eps));
        let e = expected.clone();
        out.push(Check::new(Some(8), "rshcd_recursion", json!({"variant": "A", "u": 1, "eps": eps.to_string()}), expected, move || {
            let h = designs::rshcd_base(eps, Sign::Minus);
            let out = ddg::rshcd_recursion(RecursionInput::A { h1: &h, h2: &h, h: h.matrix() }).map_err(err)?;
            let kron = IntMatrix::from_rows(&REMARK_A).kronecker(h.matrix());
            let tail = if *out.matrix() == kron { "equals the order-4 factor ⊗ H" } else { "differs from the order-4 factor ⊗ H" };
            same(&e, format!("order {}, type {}, {tail}", out.order(), kind_name(out.kind())))
        }));
    }
    for delta in Sign::both() {
        let expected = format!("order 16, type {}", kind_name(-delta));
        let e = expected.clone();
        out.push(Check::new(Some(8), "rshcd_recursion", json!({"variant": "B", "u": 1, "delta": delta.to_string()}), expected, move || {
            let cliques = designs::rshcd_base(Sign::Minus, Sign::Minus);
            let h = if delta == Sign::Plus { cliques.clone() } else { cliques.negated() };
            let out = ddg::rshcd_recursion(RecursionInput::B { h: h.matrix(), h1: cliques.matrix(), h2: cliques.matrix() })
                .map_err(err)?;
            same(&e, format!("order {}, type {}", out.order(), kind_name(out.kind())))
        }));
    }
    out.push(Check::new(
        Some(8),
        "rshcd_kronecker",
        json!({"orders": [4, 4]}),
        "(4,δ)⊗(4,ε) verifies as (16,δε) for all δ, ε and diagonals",
        || {
            let mut seen = Vec::new();
            for d in Sign::both() {
                for e in Sign::both() {
                    for (da, db) in [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)] {
                        let k = designs::rshcd_kronecker(&designs::rshcd_base(d, da), &designs::rshcd_base(e, db)).map_err(err)?;
                        if k.order() != 16 || k.kind() != d * e {
                            return Err(format!("({},{}) gave order {} type {}", d, e, k.order(), k.kind()));
                        }
                        seen.push(format!("({d})⊗({e})→{}", k.kind()));
                    }
                }
            }
            Ok(format!("{} products verified", seen.len()))
        },
    ));

    out.push(Check::new(Some(9), "conference_paley", json!({"q": 5}), "symmetric, order 6, weight 5", || {
        let c = designs::conference_paley(5).map_err(err)?;
        same("symmetric, order 6, weight 5", conference_text(&c))
    }));
    out.push(Check::new(Some(9), "conference_paley", json!({"q": 9}), "symmetric, order 10, weight 9", || {
        let c = designs::conference_paley(9).map_err(err)?;
        same("symmetric, order 10, weight 9", conference_text(&c))
    }));
    out.push(Check::new(Some(9), "conference_square", json!({"order": 6}), "symmetric, order 26, weight 25", || {
        let c = designs::conference_square(&designs::conference_paley(5).map_err(err)?).map_err(err)?;
        same("symmetric, order 26, weight 25", conference_text(&c))
    }));
    out.push(Check::new(
        Some(9),
        "conference_graph_bridge",
        json!({"graph": "C5"}),
        "graph → order-6 conference matrix → same graph",
        || {
            let c5 = graphs::cycle_graph(5);
            let c = designs::conference_from_graph(&c5).map_err(err)?;
            let back = designs::graph_from_conference(&c).map_err(err)?;
            let tail = if back == c5 { "same graph" } else { "different graph" };
            same(
                "graph → order-6 conference matrix → same graph",
                format!("graph → order-{} conference matrix → {tail}", c.order()),
            )
        },
    ));
    out.push(Check::new(
        Some(9),
        "conference_graph_bridge",
        json!({"conference": "paley(9)"}),
        "(9,4,1,2) graph → same conference matrix",
        || {
            let c = designs::conference_paley(9).map_err(err)?;
            let g = designs::graph_from_conference(&c).map_err(err)?;
            let p = graphs::verify_srg(&g).map_err(err)?;
            let back = designs::conference_from_graph(&g).map_err(err)?;
            let tail = if back == c { "same conference matrix" } else { "different conference matrix" };
            same("(9,4,1,2) graph → same conference matrix", format!("{p} graph → {tail}"))
        },
    ));

    out.push(Check::new(Some(10), "two_squares_check", json!({"v": [21, 45]}), "21 → false, 45 → true", || {
        same(
            "21 → false, 45 → true",
            format!("21 → {}, 45 → {}", designs::two_squares_check(21), designs::two_squares_check(45)),
        )
    }));
    out.push(Check::new(
        Some(10),
        "two_squares_check",
        json!({"v_max": 10000}),
        "agrees with enumeration of a² + b² for every v ≤ 10000",
        || {
            let limit = 10_000u64;
            let mut sums = vec![false; limit as usize + 1];
            for a in 0..=100u64 {
                for b in a..=100 {
                    if a * a + b * b <= limit {
                        sums[(a * a + b * b) as usize] = true;
                    }
                }
            }
            match (0..=limit).find(|&v| designs::two_squares_check(v) != sums[v as usize]) {
                None => Ok("agrees with enumeration of a² + b² for every v ≤ 10000".into()),
                Some(v) => Err(format!("disagrees at v = {v}")),
            }
        },
    ));

    out.push(Check::new(
        Some(11),
        "lattice_anchor",
        json!({"n": 4}),
        "(16,6,2)-graph; involution fixed-point free with 8 non-edge orbits; (16,6,2,2,8,2) almost-proper",
        || {
            let g = graphs::lattice_graph(4);
            let (v, k, l) = graphs::verify_vkl(&g).map_err(err)?;
            let r = graphs::involution_analyze(&g, &graphs::lattice_involution(4)).map_err(err)?;
            let fpf = if r.fixed_point_free() { "fixed-point free" } else { "with fixed points" };
            let ddg = ThinDdg::new(g, r.orbits).map_err(err)?;
            same(
                "(16,6,2)-graph; involution fixed-point free with 8 non-edge orbits; (16,6,2,2,8,2) almost-proper",
                format!(
                    "({v},{k},{l})-graph; involution {fpf} with {} non-edge orbits; {}",
                    r.nonedge_orbits,
                    record_text(&ddg)
                ),
            )
        },
    ));

    Ok(out)
}

fn spectrum_text(ddg: &ThinDdg) -> Result<String, String> {
    match spectrum_factorization_check(ddg) {
        Ok(true) => Ok(format!("charpoly(A) = charpoly(R)·charpoly(Q) on {} vertices", ddg.graph().n())),
        Ok(false) => Err("charpoly(A) ≠ charpoly(R)·charpoly(Q)".into()),
        Err(e) => Err(err(e)),
    }
}

fn conference_text(c: &designs::ConferenceMatrix) -> String {
    let sym = if c.is_symmetric() { "symmetric" } else { "skew" };
    let w = designs::verify_weighing(c.matrix()).map(|w| w.weight()).unwrap_or(-1);
    format!("{sym}, order {}, weight {w}", c.order())
}

/// Runs the checks concurrently and reports them in grid order.
pub fn run_checks(checks: &[Check], timing: bool) -> Vec<CheckRecord> {
    checks.par_iter().map(|c| c.run(timing)).collect()
}

/// The whole grid for `max_q`.
pub fn run_catalog(max_q: u64, timing: bool) -> Result<Report, CatalogError> {
    let grid = checks(max_q)?;
    let records = run_checks(&grid, timing);
    Ok(Report {
        max_q,
        pass: records.iter().all(|r| r.pass),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_max_q() {
        assert_eq!(checks(4).err(), Some(CatalogError::BadMaxQ(4)));
    }

    #[test]
    fn grid_size_and_order() {
        let grid = checks(3).unwrap();
        assert!(grid.len() >= 30, "{} checks", grid.len());
        assert_eq!(grid[0].name, "sp_graph");
        let crit: Vec<u8> = grid.iter().filter_map(|c| c.criterion).collect();
        assert!((1..=11).all(|k| crit.contains(&k)));
    }
}
