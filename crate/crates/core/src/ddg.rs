//! Thin divisible design graphs and their quotient/partner matrices.
//!
//! A thin DDG on `2m` vertices with classes `{i, i+m}` has adjacency matrix
//! `½[[R+Q, R−Q], [R−Q, R+Q]]`, where `R` is the quotient matrix of the class
//! partition and `Q` its partner, a symmetric weighing matrix with
//! `R ≡ Q (mod 2)`. This module assembles and decomposes such pairs, builds
//! the families of pairs coming from RSHCDs, Hadamard and conference
//! matrices, and checks every output against the closed-form parameters.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charpoly::{char_poly, poly_mul};
use crate::designs::{
    self, ConferenceMatrix, DesignError, Rshcd, Sign, WeighingMatrix,
};
use crate::graphs::{self, Graph, GraphError, Partition};
use crate::matrix::{IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DdgError {
    #[error("partition classes have unequal sizes")]
    UnequalClasses,
    #[error("partition must have at least two classes of size at least two")]
    TrivialPartition,
    #[error("not a thin partition: class {0} does not have size 2")]
    NotThin(usize),
    #[error(
        "not a DDG: {} pair ({x},{y}) has {common} common neighbours, expected {expected}",
        if *.same_class { "same-class" } else { "cross-class" }
    )]
    NotDdg {
        x: usize,
        y: usize,
        same_class: bool,
        common: i64,
        expected: i64,
    },
    #[error("block ({class_i},{class_j}) is {block:?}, not of the form [[a,b],[b,a]]")]
    BadBlockForm {
        class_i: usize,
        class_j: usize,
        block: [[i64; 2]; 2],
    },
    #[error("partner is not a weighing matrix of weight k − λ1 = {expected}: {detail}")]
    PartnerNotWeighing { expected: i64, detail: String },
    #[error("R and Q have shapes {0}x{1} and {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("Q is not a weighing matrix: {0}")]
    QNotWeighing(DesignError),
    #[error("Q is not symmetric at ({0},{1})")]
    QNotSymmetric(usize, usize),
    #[error("Q has diagonal entry 1 at {0}")]
    QDiagonalHasOne(usize),
    #[error("R is not symmetric at ({0},{1})")]
    RNotSymmetric(usize, usize),
    #[error("R entry ({row},{col}) = {value} is not in {{0,1,2}}")]
    REntryOutOfRange { row: usize, col: usize, value: i64 },
    #[error("R has diagonal entry 2 at {0}")]
    DiagonalHasTwo(usize),
    #[error("R and Q differ mod 2 at ({0},{1})")]
    NotCongruentMod2(usize, usize),
    #[error("R² is not of the form αI + βJ")]
    RSquareNotAlphaBeta,
    #[error("β = {0} is odd")]
    BetaOdd(i64),
    #[error("α + mβ = {0} is not a perfect square")]
    NotPerfectSquare(i64),
    #[error("RSHCD input {index} has diagonal {found}, expected -1")]
    BadDiagonal { index: usize, found: Sign },
    #[error("inputs disagree: {0}")]
    TypeMismatch(String),
    #[error("R² = {found:?}·(I, J), expected α = {alpha}, β = {beta}")]
    AlphaBetaFailed {
        alpha: i64,
        beta: i64,
        found: Option<(i64, i64)>,
    },
    #[error("conference matrix order {0} is not 2 mod 4")]
    BadConferenceOrder(usize),
    #[error("Q is not symmetric")]
    NotSymmetric,
    #[error("diagonal pattern violated at ({0},{1})")]
    DiagonalViolation(usize, usize),
    #[error("family parameters out of range: {0}")]
    BadFamilyParameters(String),
    #[error("constructed parameters {found} differ from the closed form {expected}")]
    ParameterMismatch {
        expected: DdgParameters,
        found: DdgParameters,
    },
    #[error("constructed {found:?} graph, expected {expected:?}")]
    ClassificationMismatch {
        expected: Classification,
        found: Classification,
    },
    #[error("adjacency matrix differs from the closed-form block layout at ({0},{1})")]
    LayoutMismatch(usize, usize),
    #[error("input constraint violated: {0}")]
    InputConstraintViolated(String),
    #[error("construction failed its own verification: {0}")]
    VerifyFailed(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `(v, k, λ1, λ2, m, n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DdgParameters {
    pub v: i64,
    pub k: i64,
    pub lambda1: i64,
    pub lambda2: i64,
    pub m: i64,
    pub n: i64,
}

impl DdgParameters {
    pub fn new(v: i64, k: i64, lambda1: i64, lambda2: i64, m: i64, n: i64) -> Self {
        DdgParameters { v, k, lambda1, lambda2, m, n }
    }

    pub fn is_thin(&self) -> bool {
        self.n == 2
    }

    pub fn is_proper(&self) -> bool {
        self.lambda1 != self.lambda2 && self.m > 1 && self.n > 1
    }
}

impl fmt::Display for DdgParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.v, self.k, self.lambda1, self.lambda2, self.m, self.n
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Proper,
    AlmostProper,
    ImproperNonEquitable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Proper => "proper",
            Classification::AlmostProper => "almost-proper",
            Classification::ImproperNonEquitable => "improper-non-equitable",
        })
    }
}

/// The JSON parameter record written next to a serialized DDG.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdgRecord {
    #[serde(flatten)]
    pub params: DdgParameters,
    pub classification: Classification,
}

/// Exhaustive DDG check of `g` against the class partition `p`.
pub fn verify_ddg(g: &Graph, p: &Partition) -> Result<DdgRecord, DdgError> {
    if p.vertex_count() != g.n() {
        return Err(DdgError::Graph(GraphError::BadPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.vertex_count(),
            g.n()
        ))));
    }
    let n = p.uniform_size().ok_or(DdgError::UnequalClasses)?;
    let m = p.len();
    if m < 2 || n < 2 {
        return Err(DdgError::TrivialPartition);
    }
    let k = g.valency()?;
    let sq = g.adjacency().try_mul(g.adjacency())?;
    let class_of = p.class_of();
    let (mut lambda1, mut lambda2) = (None, None);
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            let same_class = class_of[x] == class_of[y];
            let slot = if same_class { &mut lambda1 } else { &mut lambda2 };
            let common = sq[(x, y)];
            match *slot {
                None => *slot = Some(common),
                Some(expected) if expected != common => {
                    return Err(DdgError::NotDdg {
                        x,
                        y,
                        same_class,
                        common,
                        expected,
                    })
                }
                Some(_) => {}
            }
        }
    }
    let params = DdgParameters::new(
        g.n() as i64,
        k as i64,
        lambda1.expect("n >= 2"),
        lambda2.expect("m >= 2"),
        m as i64,
        n as i64,
    );
    let classification = if params.is_proper() {
        Classification::Proper
    } else if graphs::quotient_equitable(g, p).is_ok() {
        Classification::AlmostProper
    } else {
        Classification::ImproperNonEquitable
    };
    Ok(DdgRecord {
        params,
        classification,
    })
}

/// A verified thin DDG: classes of size two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinDdg {
    graph: Graph,
    partition: Partition,
    record: DdgRecord,
}

impl ThinDdg {
    pub fn new(graph: Graph, partition: Partition) -> Result<Self, DdgError> {
        if let Some(i) = partition.classes().iter().position(|c| c.len() != 2) {
            return Err(DdgError::NotThin(i));
        }
        let record = verify_ddg(&graph, &partition)?;
        Ok(ThinDdg {
            graph,
            partition,
            record,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn params(&self) -> DdgParameters {
        self.record.params
    }

    pub fn classification(&self) -> Classification {
        self.record.classification
    }

    pub fn record(&self) -> DdgRecord {
        self.record
    }

    /// Vertex order `[x₀ … x_{m−1}, y₀ … y_{m−1}]` for classes `{xᵢ, yᵢ}`,
    /// putting class `i` at positions `{i, i + m}`.
    pub fn class_layout(&self) -> Vec<usize> {
        let classes = self.partition.classes();
        classes.iter().map(|c| c[0]).chain(classes.iter().map(|c| c[1])).collect()
    }

    /// Adjacency matrix in the class layout.
    pub fn layout_adjacency(&self) -> IntMatrix {
        self.graph.adjacency().permuted(&self.class_layout())
    }
}

/// A validated pair `(R, Q)` with `R² = αI + βJ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RqPair {
    r: IntMatrix,
    q: WeighingMatrix,
    alpha: i64,
    beta: i64,
}

impl RqPair {
    pub fn r(&self) -> &IntMatrix {
        &self.r
    }

    pub fn q(&self) -> &WeighingMatrix {
        &self.q
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn weight(&self) -> i64 {
        self.q.weight()
    }

    pub fn m(&self) -> usize {
        self.r.rows()
    }

    /// `(2m, √(α+mβ), k − w, β/2, m, 2)`.
    pub fn predicted_parameters(&self) -> DdgParameters {
        let m = self.m() as i64;
        let k = (self.alpha + m * self.beta).isqrt();
        DdgParameters::new(2 * m, k, k - self.weight(), self.beta / 2, m, 2)
    }
}

/// Checks every hypothesis on `(R, Q)` in turn and reports the first failure.
pub fn validate_rq_pair(r: &IntMatrix, q: &IntMatrix) -> Result<RqPair, DdgError> {
    if r.rows() != q.rows() || r.cols() != q.cols() {
        return Err(DdgError::ShapeMismatch(r.rows(), r.cols(), q.rows(), q.cols()));
    }
    let weighing = designs::verify_weighing(q).map_err(DdgError::QNotWeighing)?;
    if let Some((i, j)) = q.first_asymmetry() {
        return Err(DdgError::QNotSymmetric(i, j));
    }
    let m = r.rows();
    if let Some(i) = (0..m).find(|&i| q[(i, i)] == 1) {
        return Err(DdgError::QDiagonalHasOne(i));
    }
    if let Some((i, j)) = r.first_asymmetry() {
        return Err(DdgError::RNotSymmetric(i, j));
    }
    if let Some(pos) = r.entries().iter().position(|x| !(0..=2).contains(x)) {
        return Err(DdgError::REntryOutOfRange {
            row: pos / m,
            col: pos % m,
            value: r.entries()[pos],
        });
    }
    if let Some(i) = (0..m).find(|&i| r[(i, i)] == 2) {
        return Err(DdgError::DiagonalHasTwo(i));
    }
    if let Some((i, j)) = r.first_mod2_difference(q)? {
        return Err(DdgError::NotCongruentMod2(i, j));
    }
    let (alpha, beta) = r
        .try_mul(r)?
        .detect_alpha_beta()?
        .ok_or(DdgError::RSquareNotAlphaBeta)?;
    if beta % 2 != 0 {
        return Err(DdgError::BetaOdd(beta));
    }
    let k2 = alpha + m as i64 * beta;
    if k2 < 0 || k2.isqrt() * k2.isqrt() != k2 {
        return Err(DdgError::NotPerfectSquare(k2));
    }
    Ok(RqPair {
        r: r.clone(),
        q: weighing,
        alpha,
        beta,
    })
}

/// Builds `½[[R+Q, R−Q], [R−Q, R+Q]]` with classes `{i, i+m}` and verifies it.
pub fn assemble_from_rq(pair: &RqPair) -> Result<ThinDdg, DdgError> {
    let m = pair.m();
    let (r, q) = (&pair.r, pair.q.matrix());
    let plus = r.try_add(q)?;
    let minus = r.try_sub(q)?;
    let a = IntMatrix::from_blocks(&[vec![&plus, &minus], vec![&minus, &plus]])?.halve()?;
    let graph = Graph::from_adjacency(a).map_err(|e| DdgError::VerifyFailed(e.to_string()))?;
    let partition = Partition::new((0..m).map(|i| vec![i, i + m]).collect(), 2 * m)?;
    let ddg = ThinDdg::new(graph, partition).map_err(|e| DdgError::VerifyFailed(e.to_string()))?;
    let expected = pair.predicted_parameters();
    if ddg.params() != expected {
        return Err(DdgError::ParameterMismatch {
            expected,
            found: ddg.params(),
        });
    }
    if ddg.classification() == Classification::ImproperNonEquitable {
        return Err(DdgError::VerifyFailed("assembled DDG is not equitable".into()));
    }
    Ok(ddg)
}

/// Reads `R = a + b` and `Q = a − b` off the `[[a,b],[b,a]]` blocks.
pub fn decompose_to_rq(d: &ThinDdg) -> Result<RqPair, DdgError> {
    let classes = d.partition().classes();
    let m = classes.len();
    let g = d.graph();
    let adj = |x: usize, y: usize| g.adjacency()[(x, y)];
    let mut r = IntMatrix::zeros(m, m);
    let mut q = IntMatrix::zeros(m, m);
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let block = [
                [adj(ci[0], cj[0]), adj(ci[0], cj[1])],
                [adj(ci[1], cj[0]), adj(ci[1], cj[1])],
            ];
            let (a, b) = (block[0][0], block[0][1]);
            if block[1][0] != b || block[1][1] != a {
                return Err(DdgError::BadBlockForm {
                    class_i: i,
                    class_j: j,
                    block,
                });
            }
            r[(i, j)] = a + b;
            q[(i, j)] = a - b;
        }
    }
    let p = d.params();
    let expected = p.k - p.lambda1;
    let q_sq = q.try_mul(&q)?;
    if q_sq != IntMatrix::identity(m).scale(expected) {
        return Err(DdgError::PartnerNotWeighing {
            expected,
            detail: "Q² ≠ (k − λ1)I".into(),
        });
    }
    validate_rq_pair(&r, &q)
}

/// `charpoly(A) = charpoly(R) · charpoly(Q)` as an exact polynomial identity.
pub fn spectrum_factorization_check(d: &ThinDdg) -> Result<bool, DdgError> {
    let pair = decompose_to_rq(d)?;
    let lhs = char_poly(&d.layout_adjacency())?;
    let rhs = poly_mul(&char_poly(pair.r())?, &char_poly(pair.q().matrix())?);
    Ok(lhs == rhs)
}

/// Inputs to the constructions of quotient matrices `R`.
#[derive(Clone, Copy, Debug)]
pub enum RInput<'a> {
    /// `t ≥ 2` RSHCDs of order `4u²`, one type, all diagonals −1: `R` is `J`
    /// off the diagonal blocks and `Hᵢ + J` on them.
    Multipartite(&'a [Rshcd]),
    /// A regular Hadamard matrix `H` of order `4u²` with row sum `2δu`:
    /// `R = [[J, J+H], [(J+H)ᵀ, J]]`.
    BipartiteMenon(&'a IntMatrix),
    /// `R = |Q| + 2·I_t ⊗ (J₄ − I₄)` for a symmetric `W(4t, 4(t−1))` with
    /// zero 4×4 diagonal blocks.
    Ps22A(&'a WeighingMatrix),
    /// `R = |Q| + 2·I_{2t} ⊗ (J₂ − I₂)` for the same `Q`.
    Ps22B(&'a WeighingMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltR {
    pub r: IntMatrix,
    pub alpha: i64,
    pub beta: i64,
}

fn check_alpha_beta(r: IntMatrix, alpha: i64, beta: i64) -> Result<BuiltR, DdgError> {
    let found = r.try_mul(&r)?.detect_alpha_beta()?;
    if found != Some((alpha, beta)) {
        return Err(DdgError::AlphaBetaFailed { alpha, beta, found });
    }
    Ok(BuiltR { r, alpha, beta })
}

/// Order of a regular Hadamard matrix as `4u²`, returning `u`.
fn four_u_squared(n: usize) -> Option<i64> {
    let u = ((n / 4) as i64).isqrt();
    (u > 0 && 4 * u * u == n as i64).then_some(u)
}

fn check_ps22_partner(q: &WeighingMatrix) -> Result<usize, DdgError> {
    let n = q.order();
    if n % 4 != 0 || n < 8 {
        return Err(DdgError::InputConstraintViolated(format!("order {n} is not 4t with t ≥ 2")));
    }
    let t = n / 4;
    if !q.is_symmetric() {
        return Err(DdgError::NotSymmetric);
    }
    if q.weight() != 4 * (t as i64 - 1) {
        return Err(DdgError::InputConstraintViolated(format!(
            "weight {} is not 4(t − 1) = {}",
            q.weight(),
            4 * (t - 1)
        )));
    }
    check_zero_diagonal_blocks(q.matrix(), 4)?;
    Ok(t)
}

fn check_zero_diagonal_blocks(m: &IntMatrix, size: usize) -> Result<(), DdgError> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i / size == j / size && m[(i, j)] != 0 {
                return Err(DdgError::DiagonalViolation(i, j));
            }
        }
    }
    Ok(())
}

pub fn build_r(input: RInput<'_>) -> Result<BuiltR, DdgError> {
    match input {
        RInput::Multipartite(hs) => {
            let t = hs.len();
            if t < 2 {
                return Err(DdgError::InputConstraintViolated(format!("t = {t} < 2")));
            }
            let n = hs[0].order();
            let u = four_u_squared(n)
                .ok_or_else(|| DdgError::InputConstraintViolated(format!("order {n} is not 4u²")))?;
            let kind = hs[0].kind();
            for (index, h) in hs.iter().enumerate() {
                if h.order() != n {
                    return Err(DdgError::TypeMismatch(format!("order {} vs {n}", h.order())));
                }
                if h.kind() != kind {
                    return Err(DdgError::TypeMismatch(format!("type {} vs {kind}", h.kind())));
                }
                if h.diagonal() != Sign::Minus {
                    return Err(DdgError::BadDiagonal {
                        index,
                        found: h.diagonal(),
                    });
                }
            }
            let j = IntMatrix::ones(n, n);
            let diag_blocks: Vec<IntMatrix> = hs.iter().map(|h| &j + h.matrix()).collect();
            let refs: Vec<&IntMatrix> = diag_blocks.iter().collect();
            let block_diag = IntMatrix::block_diagonal(&refs);
            let off = &(&IntMatrix::ones(t, t) - &IntMatrix::identity(t)).kronecker(&j);
            let r = &block_diag + off;
            let (t, eps) = (t as i64, kind.value());
            check_alpha_beta(r, 4 * u * u, 4 * t * u * u - 4 * eps * u)
        }
        RInput::BipartiteMenon(h) => {
            let (_, sum) = designs::verify_regular_hadamard(h)?;
            let n = h.rows();
            let u = four_u_squared(n)
                .ok_or_else(|| DdgError::InputConstraintViolated(format!("order {n} is not 4u²")))?;
            if sum.abs() != 2 * u {
                return Err(DdgError::InputConstraintViolated(format!("row sum {sum} is not ±2u")));
            }
            let delta = Sign::of(sum).value();
            let j = IntMatrix::ones(n, n);
            let jh = &j + h;
            let r = IntMatrix::from_blocks(&[vec![&j, &jh], vec![&jh.transpose(), &j]])?;
            check_alpha_beta(r, 4 * u * u, 8 * u * u + 4 * delta * u)
        }
        RInput::Ps22A(q) | RInput::Ps22B(q) => {
            let t = check_ps22_partner(q)?;
            let (copies, size) = match input {
                RInput::Ps22A(_) => (t, 4),
                _ => (2 * t, 2),
            };
            let clique = &IntMatrix::ones(size, size) - &IntMatrix::identity(size);
            let extra = IntMatrix::identity(copies).kronecker(&clique).scale(2);
            let r = &q.matrix().abs() + &extra;
            let (alpha, beta) = r
                .try_mul(&r)?
                .detect_alpha_beta()?
                .ok_or(DdgError::AlphaBetaFailed {
                    alpha: 0,
                    beta: 0,
                    found: None,
                })?;
            Ok(BuiltR { r, alpha, beta })
        }
    }
}

/// Inputs to the constructions of partner weighing matrices `Q`.
#[derive(Clone, Copy, Debug)]
pub enum QInput<'a> {
    /// `C ⊗ H` for a symmetric conference matrix `C` of order `t ≡ 2 (mod 4)`
    /// and a symmetric Hadamard matrix `H`.
    Kronecker {
        conference: &'a ConferenceMatrix,
        hadamard: &'a IntMatrix,
    },
    /// `[[O, H], [Hᵀ, O]]` for any Hadamard matrix `H`.
    Bipartite(&'a IntMatrix),
    /// `diag(H₁, H₂)` for symmetric Hadamard matrices with −1 diagonals.
    BlockDiagonal(&'a IntMatrix, &'a IntMatrix),
}

pub fn build_q(input: QInput<'_>) -> Result<WeighingMatrix, DdgError> {
    let (q, expected_weight, zero_blocks) = match input {
        QInput::Kronecker { conference, hadamard } => {
            let t = conference.order();
            if t % 4 != 2 {
                return Err(DdgError::BadConferenceOrder(t));
            }
            if !conference.is_symmetric() || !hadamard.is_symmetric() {
                return Err(DdgError::NotSymmetric);
            }
            designs::verify_hadamard(hadamard)?;
            let y = hadamard.rows();
            (conference.matrix().kronecker(hadamard), (y * (t - 1)) as i64, Some(y))
        }
        QInput::Bipartite(h) => {
            designs::verify_hadamard(h)?;
            let y = h.rows();
            let o = IntMatrix::zeros(y, y);
            let q = IntMatrix::from_blocks(&[vec![&o, h], vec![&h.transpose(), &o]])?;
            (q, y as i64, Some(y))
        }
        QInput::BlockDiagonal(h1, h2) => {
            for h in [h1, h2] {
                designs::verify_hadamard(h)?;
                if !h.is_symmetric() {
                    return Err(DdgError::NotSymmetric);
                }
                if let Some(i) = (0..h.rows()).find(|&i| h[(i, i)] != -1) {
                    return Err(DdgError::DiagonalViolation(i, i));
                }
            }
            if h1.rows() != h2.rows() {
                return Err(DdgError::TypeMismatch(format!("orders {} and {}", h1.rows(), h2.rows())));
            }
            (IntMatrix::block_diagonal(&[h1, h2]), h1.rows() as i64, None)
        }
    };
    let w = designs::verify_weighing(&q).map_err(|e| DdgError::VerifyFailed(e.to_string()))?;
    if !w.is_symmetric() {
        return Err(DdgError::NotSymmetric);
    }
    if w.weight() != expected_weight {
        return Err(DdgError::VerifyFailed(format!(
            "weight {} instead of {expected_weight}",
            w.weight()
        )));
    }
    if let Some(size) = zero_blocks {
        check_zero_diagonal_blocks(&q, size)?;
    }
    Ok(w)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ps22Variant {
    /// `R = |Q| + 2·I_t ⊗ (J₄ − I₄)`.
    A,
    /// `R = |Q| + 2·I_{2t} ⊗ (J₂ − I₂)`.
    B,
}

/// A family of thin DDGs with its parameters.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Orthogonal signings of complete `t`-partite graphs, `t ≥ 3`.
    Multipartite { t: usize, u: usize, eps: Sign },
    /// Orthogonal signings of complete bipartite graphs.
    Bipartite { u: usize, eps: Sign },
    /// Block-diagonal partner from two symmetric Hadamard matrices.
    PairOfCliques { u: usize, delta: Sign },
    /// `Q = C ⊗ H₄` with either choice of `R`.
    Ps22 { t: usize, variant: Ps22Variant },
}

impl Family {
    /// Closed-form parameters of the family member.
    pub fn expected_parameters(&self) -> DdgParameters {
        match *self {
            Family::Multipartite { t, u, eps } => {
                let (t, u, e) = (t as i64, u as i64, eps.value());
                DdgParameters::new(
                    8 * t * u * u,
                    4 * t * u * u - 2 * e * u,
                    4 * u * u - 2 * e * u,
                    2 * t * u * u - 2 * e * u,
                    4 * t * u * u,
                    2,
                )
            }
            Family::Bipartite { u, eps } => {
                let (u, e) = (u as i64, eps.value());
                let lambda = 4 * u * u - 2 * e * u;
                DdgParameters::new(16 * u * u, 8 * u * u - 2 * e * u, lambda, lambda, 8 * u * u, 2)
            }
            Family::PairOfCliques { u, delta } => {
                let (u, d) = (u as i64, delta.value());
                let lambda = 4 * u * u + 2 * d * u;
                DdgParameters::new(16 * u * u, 8 * u * u + 2 * d * u, lambda, lambda, 8 * u * u, 2)
            }
            Family::Ps22 { t, variant } => {
                let t = t as i64;
                match variant {
                    Ps22Variant::A => DdgParameters::new(8 * t, 4 * t + 2, 6, 2 * t + 2, 4 * t, 2),
                    Ps22Variant::B => DdgParameters::new(8 * t, 4 * t - 2, 2, 2 * t - 2, 4 * t, 2),
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Multipartite { t, u, eps } => format!("multipartite(t={t},u={u},eps={eps})"),
            Family::Bipartite { u, eps } => format!("bipartite(u={u},eps={eps})"),
            Family::PairOfCliques { u, delta } => format!("pair-of-cliques(u={u},delta={delta})"),
            Family::Ps22 { t, variant } => format!("ps22-{}(t={t})", if variant == Ps22Variant::A { "a" } else { "b" }),
        }
    }
}

/// A family member with the pair it was assembled from.
#[derive(Clone, Debug)]
pub struct FamilyDdg {
    pub family: Family,
    pub pair: RqPair,
    pub ddg: ThinDdg,
}

fn sylvester_of_order(n: usize) -> Result<IntMatrix, DdgError> {
    if !n.is_power_of_two() {
        return Err(DdgError::BadFamilyParameters(format!("no Sylvester matrix of order {n}")));
    }
    Ok(designs::hadamard_sylvester(n.trailing_zeros())?)
}

fn finish_family(
    family: Family,
    r: &IntMatrix,
    q: &WeighingMatrix,
    expected_class: Classification,
) -> Result<FamilyDdg, DdgError> {
    let pair = validate_rq_pair(r, q.matrix())?;
    let ddg = assemble_from_rq(&pair)?;
    let expected = family.expected_parameters();
    if ddg.params() != expected {
        return Err(DdgError::ParameterMismatch {
            expected,
            found: ddg.params(),
        });
    }
    if ddg.classification() != expected_class {
        return Err(DdgError::ClassificationMismatch {
            expected: expected_class,
            found: ddg.classification(),
        });
    }
    Ok(FamilyDdg { family, pair, ddg })
}

fn compare_layout(found: &IntMatrix, expected: &IntMatrix) -> Result<(), DdgError> {
    let n = found.rows();
    for i in 0..n {
        for j in 0..n {
            if found[(i, j)] != expected[(i, j)] {
                return Err(DdgError::LayoutMismatch(i, j));
            }
        }
    }
    Ok(())
}

/// Thin DDG from `t ≥ 3` RSHCDs of one type with −1 diagonals and a signing
/// `Q` of the complete `t`-partite graph with parts of size `4u²`.
pub fn multipartite_ddg(hs: &[Rshcd], q: &WeighingMatrix) -> Result<FamilyDdg, DdgError> {
    let t = hs.len();
    if t < 3 {
        return Err(DdgError::BadFamilyParameters(format!("t = {t} < 3")));
    }
    let n = hs[0].order();
    check_zero_diagonal_blocks(q.matrix(), n)?;
    let built = build_r(RInput::Multipartite(hs))?;
    let family = Family::Multipartite {
        t,
        u: hs[0].u() as usize,
        eps: hs[0].kind(),
    };
    finish_family(family, &built.r, q, Classification::Proper)
}

/// `½[[J+H₁, J−H, J+H₁, J+H], [(J−H)ᵀ, J+H₂, (J+H)ᵀ, J+H₂],
///    [J+H₁, J+H, J+H₁, J−H], [(J+H)ᵀ, J+H₂, (J−H)ᵀ, J+H₂]]`.
pub fn bipartite_layout(h1: &IntMatrix, h2: &IntMatrix, h: &IntMatrix) -> Result<IntMatrix, DdgError> {
    let n = h.rows();
    let j = IntMatrix::ones(n, n);
    let (p1, p2) = (&j + h1, &j + h2);
    let (jm, jp) = (&j - h, &j + h);
    let (jmt, jpt) = (jm.transpose(), jp.transpose());
    Ok(IntMatrix::from_blocks(&[
        vec![&p1, &jm, &p1, &jp],
        vec![&jmt, &p2, &jpt, &p2],
        vec![&p1, &jp, &p1, &jm],
        vec![&jpt, &p2, &jmt, &p2],
    ])?
    .halve()?)
}

/// Almost proper thin DDG from two RSHCDs `H₁, H₂` of one type with −1
/// diagonals and any Hadamard `H`, with partner `Q = [[O, H], [Hᵀ, O]]`.
pub fn bipartite_ddg(h1: &Rshcd, h2: &Rshcd, h: &IntMatrix) -> Result<FamilyDdg, DdgError> {
    let built = build_r(RInput::Multipartite(&[h1.clone(), h2.clone()]))?;
    let q = build_q(QInput::Bipartite(h))?;
    let family = Family::Bipartite {
        u: h1.u() as usize,
        eps: h1.kind(),
    };
    let out = finish_family(family, &built.r, &q, Classification::AlmostProper)?;
    // The closed-form block layout corresponds to the partner built from −H.
    let expected = bipartite_layout(h1.matrix(), h2.matrix(), &-h)?;
    compare_layout(out.ddg.graph().adjacency(), &expected)?;
    Ok(out)
}

/// `½[[J+H₁, J+H, J−H₁, J+H], [(J+H)ᵀ, J+H₂, (J+H)ᵀ, J−H₂],
///    [J−H₁, J+H, J+H₁, J+H], [(J+H)ᵀ, J−H₂, (J+H)ᵀ, J+H₂]]`.
pub fn pair_of_cliques_layout(h: &IntMatrix, h1: &IntMatrix, h2: &IntMatrix) -> Result<IntMatrix, DdgError> {
    let n = h.rows();
    let j = IntMatrix::ones(n, n);
    let (p1, m1, p2, m2) = (&j + h1, &j - h1, &j + h2, &j - h2);
    let jp = &j + h;
    let jpt = jp.transpose();
    Ok(IntMatrix::from_blocks(&[
        vec![&p1, &jp, &m1, &jp],
        vec![&jpt, &p2, &jpt, &m2],
        vec![&m1, &jp, &p1, &jp],
        vec![&jpt, &m2, &jpt, &p2],
    ])?
    .halve()?)
}

/// Almost proper thin DDG from a regular Hadamard `H` with row sum `2δu` and
/// symmetric Hadamard `H₁, H₂` with −1 diagonals, `Q = diag(H₁, H₂)`.
pub fn pair_of_cliques_ddg(h: &IntMatrix, h1: &IntMatrix, h2: &IntMatrix) -> Result<FamilyDdg, DdgError> {
    let built = build_r(RInput::BipartiteMenon(h))?;
    let q = build_q(QInput::BlockDiagonal(h1, h2))?;
    let (_, sum) = designs::verify_regular_hadamard(h)?;
    let family = Family::PairOfCliques {
        u: (sum.abs() / 2) as usize,
        delta: Sign::of(sum),
    };
    let out = finish_family(family, &built.r, &q, Classification::AlmostProper)?;
    compare_layout(out.ddg.graph().adjacency(), &pair_of_cliques_layout(h, h1, h2)?)?;
    Ok(out)
}

/// Thin DDG from a symmetric `W(4t, 4(t−1))` with zero 4×4 diagonal blocks.
pub fn ps22_ddg(q: &WeighingMatrix, variant: Ps22Variant) -> Result<FamilyDdg, DdgError> {
    let t = check_ps22_partner(q)?;
    let input = match variant {
        Ps22Variant::A => RInput::Ps22A(q),
        Ps22Variant::B => RInput::Ps22B(q),
    };
    let built = build_r(input)?;
    let family = Family::Ps22 { t, variant };
    let class = if family.expected_parameters().is_proper() {
        Classification::Proper
    } else {
        Classification::AlmostProper
    };
    finish_family(family, &built.r, q, class)
}

/// Builds a family member from the standard desk-scale inputs: RSHCDs and
/// Hadamard matrices as Kronecker powers of order-4 matrices (so `u` must be a
/// power of two) and the conference matrices of [`designs::symmetric_conference`].
pub fn construct_ddg_family(family: Family) -> Result<FamilyDdg, DdgError> {
    let check_u = |u: usize| {
        if u == 0 || !u.is_power_of_two() {
            Err(DdgError::BadFamilyParameters(format!("u = {u} is not a power of two")))
        } else {
            Ok(())
        }
    };
    match family {
        Family::Multipartite { t, u, eps } => {
            check_u(u)?;
            if t < 3 {
                return Err(DdgError::BadFamilyParameters(format!("t = {t} < 3")));
            }
            let h = designs::rshcd_of_order(u, eps, Sign::Minus)?;
            let hs = vec![h; t];
            let conference = designs::symmetric_conference(t)?;
            let hadamard = sylvester_of_order(4 * u * u)?;
            let q = build_q(QInput::Kronecker {
                conference: &conference,
                hadamard: &hadamard,
            })?;
            multipartite_ddg(&hs, &q)
        }
        Family::Bipartite { u, eps } => {
            check_u(u)?;
            let h1 = designs::rshcd_of_order(u, eps, Sign::Minus)?;
            let h = sylvester_of_order(4 * u * u)?;
            bipartite_ddg(&h1, &h1, &h)
        }
        Family::PairOfCliques { u, delta } => {
            check_u(u)?;
            let cliques = designs::rshcd_of_order(u, Sign::Minus, Sign::Minus)?;
            let h = if delta == Sign::Plus {
                cliques.clone()
            } else {
                cliques.negated()
            };
            pair_of_cliques_ddg(h.matrix(), cliques.matrix(), cliques.matrix())
        }
        Family::Ps22 { t, variant } => {
            let conference = designs::symmetric_conference(t)?;
            let q = build_q(QInput::Kronecker {
                conference: &conference,
                hadamard: &designs::hadamard_sylvester(2)?,
            })?;
            ps22_ddg(&q, variant)
        }
    }
}

/// Inputs to the two recursive RSHCD constructions of order `16u²`.
#[derive(Clone, Copy, Debug)]
pub enum RecursionInput<'a> {
    /// RSHCDs `H₁, H₂` of one type with −1 diagonals and any Hadamard `H`.
    A {
        h1: &'a Rshcd,
        h2: &'a Rshcd,
        h: &'a IntMatrix,
    },
    /// Regular Hadamard `H` with row sum `2δu` and symmetric Hadamard `H₁, H₂`
    /// with −1 diagonals.
    B {
        h: &'a IntMatrix,
        h1: &'a IntMatrix,
        h2: &'a IntMatrix,
    },
}

pub fn rshcd_recursion(input: RecursionInput<'_>) -> Result<Rshcd, DdgError> {
    let violated = |s: String| Err(DdgError::InputConstraintViolated(s));
    let (out, expected_kind) = match input {
        RecursionInput::A { h1, h2, h } => {
            let n = h1.order();
            if h2.order() != n || h.rows() != n || four_u_squared(n).is_none() {
                return violated(format!("orders {}, {}, {} are not one 4u²", n, h2.order(), h.rows()));
            }
            if h1.kind() != h2.kind() {
                return violated(format!("types {} and {} differ", h1.kind(), h2.kind()));
            }
            if h1.diagonal() != Sign::Minus || h2.diagonal() != Sign::Minus {
                return violated("H₁ and H₂ must have −1 diagonals".into());
            }
            designs::verify_hadamard(h).map_err(|e| DdgError::InputConstraintViolated(e.to_string()))?;
            let (a1, a2) = (h1.matrix(), h2.matrix());
            let (ht, mh) = (h.transpose(), -h);
            let mht = -&ht;
            let m = IntMatrix::from_blocks(&[
                vec![a1, &mh, a1, h],
                vec![&mht, a2, &ht, a2],
                vec![a1, h, a1, &mh],
                vec![&ht, a2, &mht, a2],
            ])?;
            (m, h1.kind())
        }
        RecursionInput::B { h, h1, h2 } => {
            let n = h.rows();
            let (_, sum) = designs::verify_regular_hadamard(h).map_err(|e| DdgError::InputConstraintViolated(e.to_string()))?;
            let u = four_u_squared(n).ok_or(DdgError::InputConstraintViolated(format!("order {n} is not 4u²")))?;
            if sum.abs() != 2 * u {
                return violated(format!("row sum {sum} is not ±2u"));
            }
            for x in [h1, h2] {
                if x.rows() != n {
                    return violated(format!("order {} differs from {n}", x.rows()));
                }
                designs::verify_hadamard(x).map_err(|e| DdgError::InputConstraintViolated(e.to_string()))?;
                if !x.is_symmetric() || x.diagonal().iter().any(|&d| d != -1) {
                    return violated("H₁ and H₂ must be symmetric with −1 diagonals".into());
                }
            }
            let ht = h.transpose();
            let (m1, m2) = (-h1, -h2);
            let m = IntMatrix::from_blocks(&[
                vec![h1, h, &m1, h],
                vec![&ht, h2, &ht, &m2],
                vec![&m1, h, h1, h],
                vec![&ht, &m2, &ht, h2],
            ])?;
            (m, -Sign::of(sum))
        }
    };
    let rshcd = designs::verify_rshcd(&out).map_err(|e| DdgError::VerifyFailed(e.to_string()))?;
    if rshcd.kind() != expected_kind {
        return Err(DdgError::VerifyFailed(format!(
            "type {} instead of {expected_kind}",
            rshcd.kind()
        )));
    }
    Ok(rshcd)
}
