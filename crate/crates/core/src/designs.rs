//! Weighing, Hadamard and conference matrices, regular symmetric Hadamard
//! matrices with constant diagonal (RSHCDs), and their graph correspondences.
//!
//! Every constructor re-runs the matching verifier on its output before
//! returning it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldError, FiniteField, MAX_FIELD_ORDER};
use crate::graphs::{self, Graph, GraphError};
use crate::matrix::{IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row},{col}) = {value} is outside the allowed set")]
    BadEntries { row: usize, col: usize, value: i64 },
    #[error("not a weighing matrix: row {i} · row {j} = {value}, expected {expected}")]
    NotWeighing { i: usize, j: usize, value: i64, expected: i64 },
    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("not regular: row {row} sums to {sum}, row 0 sums to {expected}")]
    NotRegular { row: usize, sum: i64, expected: i64 },
    #[error("diagonal entry {index} is {value}, expected {expected}")]
    DiagonalNotConstant { index: usize, value: i64, expected: i64 },
    #[error("order 2^{0} exceeds 1024")]
    TooLarge(u32),
    #[error("q = {0} is not congruent to 1 mod 4")]
    BadResidue(u64),
    #[error("conference matrix is not normalized: entry ({0},{1}) of the border is not 1")]
    NotNormalized(usize, usize),
    #[error("not a conference matrix: {0}")]
    NotConference(String),
    #[error("not a conference graph: {0}")]
    NotConferenceGraph(String),
    #[error("not a (4u², 2u² − εu, u² − εu)-graph: {0}")]
    NotVklGraph(String),
    #[error("design check failed: (N·Nᵀ)[{i},{j}] = {value}, expected {expected}")]
    DesignCheckFailed { i: usize, j: usize, value: i64, expected: i64 },
    #[error("no symmetric conference matrix of order {0} is available")]
    NoConference(usize),
    #[error("construction failed its own verification: {0}")]
    VerifyFailed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A sign in {+1, −1}: RSHCD types, constant diagonals, Menon signs.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign of a nonzero integer.
    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::of(self.value() * rhs.value())
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::of(-self.value())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" | "+1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            _ => Err(format!("expected +1 or -1, got {s:?}")),
        }
    }
}

/// A verified weighing matrix `W(n, w)` with `W·Wᵀ = w·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeighingMatrix {
    m: IntMatrix,
    w: i64,
}

impl WeighingMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.m
    }

    pub fn order(&self) -> usize {
        self.m.rows()
    }

    pub fn weight(&self) -> i64 {
        self.w
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.is_symmetric()
    }
}

fn check_entries(m: &IntMatrix, allowed: &[i64]) -> Result<usize, DesignError> {
    let n = m.order().map_err(|_| DesignError::NotSquare {
        rows: m.rows(),
        cols: m.cols(),
    })?;
    if let Some(pos) = m.entries().iter().position(|x| !allowed.contains(x)) {
        return Err(DesignError::BadEntries {
            row: pos / n,
            col: pos % n,
            value: m.entries()[pos],
        });
    }
    Ok(n)
}

/// Checks `m·mᵀ = w·I` with `w` read from the first diagonal entry of `m·mᵀ`.
pub fn verify_weighing(m: &IntMatrix) -> Result<WeighingMatrix, DesignError> {
    let n = check_entries(m, &[-1, 0, 1])?;
    let gram = m.gram()?;
    let w = if n > 0 { gram[(0, 0)] } else { 0 };
    for i in 0..n {
        for j in i..n {
            let expected = if i == j { w } else { 0 };
            if gram[(i, j)] != expected {
                return Err(DesignError::NotWeighing {
                    i,
                    j,
                    value: gram[(i, j)],
                    expected,
                });
            }
        }
    }
    Ok(WeighingMatrix { m: m.clone(), w })
}

/// A ±1 weighing matrix of full weight.
pub fn verify_hadamard(m: &IntMatrix) -> Result<WeighingMatrix, DesignError> {
    check_entries(m, &[-1, 1])?;
    verify_weighing(m).map_err(|e| DesignError::NotHadamard(e.to_string()))
}

/// A Hadamard matrix with constant row sums; returns it with that sum.
pub fn verify_regular_hadamard(m: &IntMatrix) -> Result<(WeighingMatrix, i64), DesignError> {
    let h = verify_hadamard(m)?;
    let sums = m.row_sums();
    if let Some(row) = sums.iter().position(|&s| s != sums[0]) {
        return Err(DesignError::NotRegular {
            row,
            sum: sums[row],
            expected: sums[0],
        });
    }
    Ok((h, sums[0]))
}

/// Symmetric Sylvester–Hadamard matrix of order `2^k`.
pub fn hadamard_sylvester(k: u32) -> Result<IntMatrix, DesignError> {
    if k > 10 {
        return Err(DesignError::TooLarge(k));
    }
    let h2 = IntMatrix::from_rows(&[[1, 1], [1, -1]]);
    let h = (0..k).fold(IntMatrix::identity(1), |acc, _| acc.kronecker(&h2));
    verify_hadamard(&h).map_err(|e| DesignError::VerifyFailed(e.to_string()))?;
    Ok(h)
}

/// A verified conference matrix: zero diagonal and `C·Cᵀ = (n − 1)·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConferenceMatrix {
    c: IntMatrix,
    symmetric: bool,
    normalized: bool,
}

impl ConferenceMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.c
    }

    pub fn order(&self) -> usize {
        self.c.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// The matrix left after deleting the first row and column.
    pub fn core(&self) -> IntMatrix {
        let n = self.order();
        self.c.submatrix(1..n, 1..n)
    }

    /// The order-2 conference matrix `[[0,1],[1,0]]`.
    pub fn order_two() -> Self {
        verify_conference(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).expect("order-2 conference matrix")
    }
}

pub fn verify_conference(m: &IntMatrix) -> Result<ConferenceMatrix, DesignError> {
    let n = check_entries(m, &[-1, 0, 1])?;
    if let Some(i) = (0..n).find(|&i| m[(i, i)] != 0) {
        return Err(DesignError::NotConference(format!("diagonal entry {i} is nonzero")));
    }
    let w = verify_weighing(m).map_err(|e| DesignError::NotConference(e.to_string()))?;
    if n > 0 && w.weight() != n as i64 - 1 {
        return Err(DesignError::NotConference(format!(
            "weight {} instead of {}",
            w.weight(),
            n - 1
        )));
    }
    let normalized = (1..n).all(|j| m[(0, j)] == 1 && m[(j, 0)] == 1);
    Ok(ConferenceMatrix {
        c: m.clone(),
        symmetric: m.is_symmetric(),
        normalized,
    })
}

/// Paley conference matrix of order `q + 1` for `q ≡ 1 (mod 4)`: row/column 0
/// is the point at infinity, then GF(q) in canonical order; `C[x,y] = χ(x − y)`.
pub fn conference_paley(q: u64) -> Result<ConferenceMatrix, DesignError> {
    if q % 4 != 1 {
        return Err(DesignError::BadResidue(q));
    }
    if q > MAX_FIELD_ORDER {
        return Err(DesignError::Field(FieldError::TooLarge { p: q, k: 1 }));
    }
    let field = FieldCtx::with_order(q)?;
    let elems = field.elements();
    let n = elems.len() + 1;
    let c = IntMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => 0,
        (0, _) | (_, 0) => 1,
        _ => field.quadratic_character(field.sub(elems[i - 1], elems[j - 1])),
    });
    let conf = verify_conference(&c).map_err(|e| DesignError::VerifyFailed(e.to_string()))?;
    if !conf.symmetric || !conf.normalized {
        return Err(DesignError::VerifyFailed("Paley matrix lost symmetry".into()));
    }
    Ok(conf)
}

/// A symmetric normalized conference matrix of order `t`: the order-2 matrix,
/// or a Paley matrix when `t − 1` is a prime power congruent to 1 mod 4.
pub fn symmetric_conference(t: usize) -> Result<ConferenceMatrix, DesignError> {
    match t {
        2 => Ok(ConferenceMatrix::order_two()),
        t if t > 2 && (t as u64 - 1) % 4 == 1 && crate::field::prime_power(t as u64 - 1).is_some() => {
            conference_paley(t as u64 - 1)
        }
        _ => Err(DesignError::NoConference(t)),
    }
}

/// From a symmetric normalized conference matrix with core `S` of order `v`,
/// builds `S⊗S + I⊗J − J⊗I`, borders it with ones and returns the resulting
/// conference matrix of order `v² + 1`.
pub fn conference_square(c: &ConferenceMatrix) -> Result<ConferenceMatrix, DesignError> {
    if !c.symmetric {
        let (i, j) = c.c.first_asymmetry().unwrap_or((0, 0));
        return Err(DesignError::NotSymmetric(i, j));
    }
    if !c.normalized {
        let n = c.order();
        let j = (1..n)
            .find(|&j| c.c[(0, j)] != 1)
            .map(|j| (0, j))
            .or_else(|| (1..n).find(|&i| c.c[(i, 0)] != 1).map(|i| (i, 0)))
            .unwrap_or((0, 0));
        return Err(DesignError::NotNormalized(j.0, j.1));
    }
    let s = c.core();
    let v = s.rows();
    let (i, j) = (IntMatrix::identity(v), IntMatrix::ones(v, v));
    let core = &(&s.kronecker(&s) + &i.kronecker(&j)) - &j.kronecker(&i);
    let out = border_with_ones(&core);
    let conf = verify_conference(&out).map_err(|e| DesignError::VerifyFailed(e.to_string()))?;
    if conf.order() != v * v + 1 {
        return Err(DesignError::VerifyFailed(format!("order {}", conf.order())));
    }
    Ok(conf)
}

fn border_with_ones(core: &IntMatrix) -> IntMatrix {
    let n = core.rows() + 1;
    IntMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => 0,
        (0, _) | (_, 0) => 1,
        _ => core[(i - 1, j - 1)],
    })
}

/// A verified regular symmetric Hadamard matrix with constant diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rshcd {
    h: IntMatrix,
    a: i64,
    e: Sign,
}

impl Rshcd {
    pub fn matrix(&self) -> &IntMatrix {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.h.rows()
    }

    /// Constant row sum.
    pub fn row_sum(&self) -> i64 {
        self.a
    }

    /// Constant diagonal value.
    pub fn diagonal(&self) -> Sign {
        self.e
    }

    /// `sign(a·e)`.
    pub fn kind(&self) -> Sign {
        Sign::of(self.a) * self.e
    }

    /// `u = |a| / 2`.
    pub fn u(&self) -> i64 {
        self.a.abs() / 2
    }

    pub fn negated(&self) -> Rshcd {
        Rshcd {
            h: -&self.h,
            a: -self.a,
            e: -self.e,
        }
    }
}

impl fmt::Display for Rshcd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RSHCD(n={}, a={}, e={}, type={})",
            self.order(),
            self.a,
            self.e,
            self.kind()
        )
    }
}

pub fn verify_rshcd(m: &IntMatrix) -> Result<Rshcd, DesignError> {
    let n = check_entries(m, &[-1, 1])?;
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(DesignError::NotSymmetric(i, j));
    }
    verify_hadamard(m)?;
    let sums = m.row_sums();
    if let Some(row) = sums.iter().position(|&s| s != sums[0]) {
        return Err(DesignError::NotRegular {
            row,
            sum: sums[row],
            expected: sums[0],
        });
    }
    let e = m[(0, 0)];
    if let Some(index) = (0..n).find(|&i| m[(i, i)] != e) {
        return Err(DesignError::DiagonalNotConstant {
            index,
            value: m[(index, index)],
            expected: e,
        });
    }
    Ok(Rshcd {
        h: m.clone(),
        a: sums[0],
        e: Sign::of(e),
    })
}

/// Order-4 RSHCD of the requested type and constant diagonal.
pub fn rshcd_base(kind: Sign, diag: Sign) -> Rshcd {
    let h = match kind {
        Sign::Plus => IntMatrix::from_rows(&[[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]]),
        Sign::Minus => &IntMatrix::ones(4, 4) - &IntMatrix::identity(4).scale(2),
    };
    let base = verify_rshcd(&h).expect("order-4 base matrices are RSHCDs");
    if base.e == diag {
        base
    } else {
        base.negated()
    }
}

/// Kronecker product of two RSHCDs; the type multiplies.
pub fn rshcd_kronecker(h1: &Rshcd, h2: &Rshcd) -> Result<Rshcd, DesignError> {
    let out = verify_rshcd(&h1.h.kronecker(&h2.h)).map_err(|e| DesignError::VerifyFailed(e.to_string()))?;
    if out.kind() != h1.kind() * h2.kind() {
        return Err(DesignError::VerifyFailed(format!(
            "type {} is not {} · {}",
            out.kind(),
            h1.kind(),
            h2.kind()
        )));
    }
    Ok(out)
}

/// RSHCD of order `4u²` (u a power of two) with the given type and diagonal,
/// as a Kronecker power of the order-4 base matrices.
pub fn rshcd_of_order(u: usize, kind: Sign, diag: Sign) -> Result<Rshcd, DesignError> {
    if u == 0 || !u.is_power_of_two() {
        return Err(DesignError::VerifyFailed(format!("u = {u} is not a power of two")));
    }
    let mut h = rshcd_base(kind, diag);
    let mut size = 4;
    while size < 4 * u * u {
        h = rshcd_kronecker(&rshcd_base(Sign::Plus, Sign::Plus), &h)?;
        size *= 4;
    }
    Ok(h)
}

/// Adjacency `½(J − eH)` of the `(4u², 2u² − εu, u² − εu)`-graph of an RSHCD.
pub fn rshcd_to_graph(h: &Rshcd) -> Result<Graph, DesignError> {
    let n = h.order();
    if h.a % 2 != 0 {
        return Err(DesignError::NotVklGraph(format!("order {n} has odd row sum")));
    }
    let a = (&IntMatrix::ones(n, n) - &h.h.scale(h.e.value())).halve()?;
    let g = Graph::from_adjacency(a)?;
    check_rshcd_graph_parameters(&g)?;
    Ok(g)
}

/// `(u, ε)` for a `(4u², 2u² − εu, u² − εu)`-graph.
fn check_rshcd_graph_parameters(g: &Graph) -> Result<(i64, Sign), DesignError> {
    let (v, k, lambda) = graphs::verify_vkl(g).map_err(|e| DesignError::NotVklGraph(e.to_string()))?;
    let (v, k) = (v as i64, k as i64);
    let u = (v / 4).isqrt();
    if u == 0 || 4 * u * u != v {
        return Err(DesignError::NotVklGraph(format!("v = {v} is not 4u²")));
    }
    for eps in Sign::both() {
        let e = eps.value();
        if k == 2 * u * u - e * u && lambda == u * u - e * u {
            return Ok((u, eps));
        }
    }
    Err(DesignError::NotVklGraph(format!(
        "parameters ({v},{k},{lambda}) do not match u = {u}"
    )))
}

/// Inverse of [`rshcd_to_graph`]: `H = e(J − 2A)`.
pub fn graph_to_rshcd(g: &Graph, e: Sign) -> Result<Rshcd, DesignError> {
    check_rshcd_graph_parameters(g)?;
    let n = g.n();
    let h = (&IntMatrix::ones(n, n) - &g.adjacency().scale(2)).scale(e.value());
    verify_rshcd(&h).map_err(|err| DesignError::VerifyFailed(err.to_string()))
}

/// Seidel-matrix bridge from an SRG `(4t+1, 2t, t−1, t)` to a symmetric
/// conference matrix of order `4t + 2`.
pub fn conference_from_graph(g: &Graph) -> Result<ConferenceMatrix, DesignError> {
    let p = graphs::verify_srg(g).map_err(|e| DesignError::NotConferenceGraph(e.to_string()))?;
    let t = p.k as i64 / 2;
    if p.v as i64 != 4 * t + 1 || p.k as i64 != 2 * t || p.lambda != t - 1 || p.mu != t {
        return Err(DesignError::NotConferenceGraph(format!("parameters {p}")));
    }
    let n = g.n();
    let seidel = &(&IntMatrix::ones(n, n) - &IntMatrix::identity(n)) - &g.adjacency().scale(2);
    let c = verify_conference(&border_with_ones(&seidel)).map_err(|e| DesignError::VerifyFailed(e.to_string()))?;
    if !c.symmetric {
        return Err(DesignError::VerifyFailed("bordered Seidel matrix not symmetric".into()));
    }
    Ok(c)
}

/// Recovers the conference graph `A = ½(J − I − S)` from a symmetric
/// normalized conference matrix with core `S`.
pub fn graph_from_conference(c: &ConferenceMatrix) -> Result<Graph, DesignError> {
    if !c.symmetric {
        return Err(DesignError::NotConference("not symmetric".into()));
    }
    if !c.normalized {
        return Err(DesignError::NotConference("not normalized".into()));
    }
    let s = c.core();
    let v = s.rows();
    let a = (&(&IntMatrix::ones(v, v) - &IntMatrix::identity(v)) - &s).halve()?;
    let g = Graph::from_adjacency(a)?;
    let p = graphs::verify_srg(&g).map_err(|e| DesignError::NotConference(e.to_string()))?;
    let t = (v as i64 - 1) / 4;
    if (p.k as i64, p.lambda, p.mu) != (2 * t, t - 1, t) {
        return Err(DesignError::VerifyFailed(format!("recovered graph has parameters {p}")));
    }
    Ok(g)
}

/// True iff `v = a² + b²` for integers `a, b ≥ 0`.
pub fn two_squares_check(v: u64) -> bool {
    (0..=v.isqrt()).any(|a| {
        let rest = v - a * a;
        let b = rest.isqrt();
        b * b == rest
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MenonParameters {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
}

/// Interprets `½(J + H)` as an incidence matrix and checks the square design
/// identity `N·Nᵀ = (k − λ)I + λJ` for `(4u², 2u² + du, u² + du)`, `d = sign(a)`.
pub fn menon_check(h: &Rshcd) -> Result<MenonParameters, DesignError> {
    let n = h.order();
    if n <= 1 {
        return Err(DesignError::VerifyFailed("order must exceed 1".into()));
    }
    let (u, d) = (h.u(), Sign::of(h.a).value());
    let params = MenonParameters {
        v: 4 * u * u,
        k: 2 * u * u + d * u,
        lambda: u * u + d * u,
    };
    let incidence = (&IntMatrix::ones(n, n) + &h.h).halve()?;
    let gram = incidence.gram()?;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { params.k } else { params.lambda };
            if gram[(i, j)] != expected {
                return Err(DesignError::DesignCheckFailed {
                    i,
                    j,
                    value: gram[(i, j)],
                    expected,
                });
            }
        }
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph};

    fn remark_matrix() -> IntMatrix {
        IntMatrix::from_rows(&[[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]])
    }

    fn j_minus_2i() -> IntMatrix {
        &IntMatrix::ones(4, 4) - &IntMatrix::identity(4).scale(2)
    }

    #[test]
    fn weighing_examples() {
        let w = verify_weighing(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!((w.order(), w.weight()), (2, 1));
        let w = verify_weighing(&IntMatrix::identity(5)).unwrap();
        assert_eq!((w.order(), w.weight()), (5, 1));
        assert_eq!(
            verify_weighing(&IntMatrix::ones(2, 2)),
            Err(DesignError::NotWeighing { i: 0, j: 1, value: 2, expected: 0 })
        );
        assert!(matches!(
            verify_weighing(&IntMatrix::identity(2).scale(2)),
            Err(DesignError::BadEntries { row: 0, col: 0, value: 2 })
        ));
    }

    #[test]
    fn sylvester() {
        assert_eq!(hadamard_sylvester(0).unwrap(), IntMatrix::identity(1));
        assert_eq!(hadamard_sylvester(1).unwrap(), IntMatrix::from_rows(&[[1, 1], [1, -1]]));
        let h4 = hadamard_sylvester(2).unwrap();
        assert!(h4.is_symmetric());
        assert_eq!(verify_weighing(&h4).unwrap().weight(), 4);
        assert_eq!(hadamard_sylvester(11), Err(DesignError::TooLarge(11)));
    }

    #[test]
    fn rshcd_examples() {
        let h = verify_rshcd(&remark_matrix()).unwrap();
        assert_eq!((h.order(), h.row_sum(), h.diagonal(), h.kind()), (4, 2, Sign::Plus, Sign::Plus));
        let h = verify_rshcd(&j_minus_2i()).unwrap();
        assert_eq!((h.order(), h.row_sum(), h.diagonal(), h.kind()), (4, 2, Sign::Minus, Sign::Minus));
        assert_eq!(
            verify_rshcd(&hadamard_sylvester(2).unwrap()),
            Err(DesignError::NotRegular { row: 1, sum: 0, expected: 4 })
        );
        let mut bad = remark_matrix();
        bad[(0, 1)] = 1;
        assert_eq!(verify_rshcd(&bad), Err(DesignError::NotSymmetric(0, 1)));
    }

    #[test]
    fn base_matrices() {
        assert_eq!(rshcd_base(Sign::Plus, Sign::Plus).matrix(), &remark_matrix());
        assert_eq!(rshcd_base(Sign::Minus, Sign::Minus).matrix(), &j_minus_2i());
        let h = rshcd_base(Sign::Plus, Sign::Minus);
        assert_eq!(h.matrix(), &-&remark_matrix());
        assert_eq!((h.order(), h.row_sum(), h.diagonal(), h.kind()), (4, -2, Sign::Minus, Sign::Plus));
        for kind in Sign::both() {
            for diag in Sign::both() {
                let h = rshcd_base(kind, diag);
                assert_eq!((h.kind(), h.diagonal()), (kind, diag));
                assert_eq!(verify_rshcd(&-h.matrix()).unwrap().kind(), kind);
            }
        }
    }

    #[test]
    fn kronecker_types() {
        let p = rshcd_base(Sign::Plus, Sign::Plus);
        let m = rshcd_base(Sign::Minus, Sign::Minus);
        let pp = rshcd_kronecker(&p, &p).unwrap();
        assert_eq!((pp.order(), pp.kind()), (16, Sign::Plus));
        let pm = rshcd_kronecker(&p, &m).unwrap();
        assert_eq!((pm.order(), pm.kind()), (16, Sign::Minus));
        let big = rshcd_kronecker(&p, &pm).unwrap();
        assert_eq!((big.order(), big.row_sum().abs()), (64, 8));
        let h = rshcd_of_order(2, Sign::Plus, Sign::Minus).unwrap();
        assert_eq!((h.order(), h.kind(), h.diagonal()), (16, Sign::Plus, Sign::Minus));
    }

    #[test]
    fn rshcd_graphs() {
        let g = rshcd_to_graph(&rshcd_base(Sign::Plus, Sign::Plus)).unwrap();
        assert_eq!(g, Graph::from_edges(4, [(0, 1), (2, 3)]));
        let g = rshcd_to_graph(&rshcd_base(Sign::Minus, Sign::Minus)).unwrap();
        assert_eq!(g, complete_graph(4));
        let h = graph_to_rshcd(&complete_graph(4), Sign::Minus).unwrap();
        assert_eq!(h.matrix(), &j_minus_2i());
        assert!(matches!(graph_to_rshcd(&cycle_graph(5), Sign::Plus), Err(DesignError::NotVklGraph(_))));
        for kind in Sign::both() {
            for diag in Sign::both() {
                let h = rshcd_base(kind, diag);
                let back = graph_to_rshcd(&rshcd_to_graph(&h).unwrap(), diag).unwrap();
                assert_eq!(back, h);
            }
        }
    }

    #[test]
    fn paley_matrices() {
        let c5 = conference_paley(5).unwrap();
        assert_eq!(c5.order(), 6);
        assert_eq!(verify_weighing(c5.matrix()).unwrap().weight(), 5);
        assert!(c5.is_symmetric() && c5.is_normalized());
        // Oracle: the quadratic residues mod 5 are {1, 4}.
        for x in 0..5i64 {
            for y in 0..5i64 {
                if x != y {
                    let chi = if [1, 4].contains(&(x - y).rem_euclid(5)) { 1 } else { -1 };
                    assert_eq!(c5.matrix()[(x as usize + 1, y as usize + 1)], chi);
                }
            }
        }
        let c9 = conference_paley(9).unwrap();
        assert_eq!(c9.order(), 10);
        assert_eq!(verify_weighing(c9.matrix()).unwrap().weight(), 9);
        assert_eq!(conference_paley(3), Err(DesignError::BadResidue(3)));
        assert!(matches!(conference_paley(21), Err(DesignError::Field(FieldError::NotPrimePower(21)))));
    }

    #[test]
    fn squaring() {
        let two = ConferenceMatrix::order_two();
        assert_eq!(conference_square(&two).unwrap(), two);
        let c26 = conference_square(&conference_paley(5).unwrap()).unwrap();
        assert_eq!(c26.order(), 26);
        assert_eq!(c26.matrix().gram().unwrap(), IntMatrix::identity(26).scale(25));
        assert!(c26.is_symmetric());

        let mut m = conference_paley(5).unwrap().matrix().clone();
        for j in 0..6 {
            m[(1, j)] *= -1;
            m[(j, 1)] *= -1;
        }
        let flipped = verify_conference(&m).unwrap();
        assert!(flipped.is_symmetric() && !flipped.is_normalized());
        assert_eq!(conference_square(&flipped), Err(DesignError::NotNormalized(0, 1)));
    }

    #[test]
    fn conference_graph_bridge() {
        let c5 = cycle_graph(5);
        let conf = conference_from_graph(&c5).unwrap();
        assert_eq!(conf.order(), 6);
        assert_eq!(verify_weighing(conf.matrix()).unwrap().weight(), 5);
        assert_eq!(graph_from_conference(&conf).unwrap(), c5);

        let g9 = graph_from_conference(&conference_paley(9).unwrap()).unwrap();
        let p = graphs::verify_srg(&g9).unwrap();
        assert_eq!((p.v, p.k, p.lambda, p.mu), (9, 4, 1, 2));
        assert_eq!(conference_from_graph(&g9).unwrap(), conference_paley(9).unwrap());

        assert!(matches!(
            conference_from_graph(&complete_graph(4)),
            Err(DesignError::NotConferenceGraph(_))
        ));
    }

    #[test]
    fn sums_of_two_squares() {
        assert!(!two_squares_check(21));
        assert!(two_squares_check(45));
        assert!(two_squares_check(0));
        assert!(!two_squares_check(33));
        assert!(two_squares_check(65));
    }

    #[test]
    fn menon_examples() {
        let m = menon_check(&verify_rshcd(&j_minus_2i()).unwrap()).unwrap();
        assert_eq!((m.v, m.k, m.lambda), (4, 3, 2));
        let m = menon_check(&rshcd_base(Sign::Plus, Sign::Plus)).unwrap();
        assert_eq!((m.v, m.k, m.lambda), (4, 3, 2));
        let p = rshcd_base(Sign::Plus, Sign::Plus);
        let h16 = rshcd_kronecker(&p, &p).unwrap();
        let m = menon_check(&h16).unwrap();
        assert_eq!((m.v, m.k, m.lambda), (16, 10, 6));
        let m = menon_check(&h16.negated()).unwrap();
        assert_eq!((m.v, m.k, m.lambda), (16, 6, 2));
    }
}
