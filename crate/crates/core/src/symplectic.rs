//! Symplectic graphs, the GF(q²) model of Sp(4,q), its spread and involution,
//! and Mathon's antipodal distance-regular graphs.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ddg::{decompose_to_rq, Classification, DdgError, DdgParameters, ThinDdg};
use crate::field::{FieldCtx, FieldElement, FieldError, FiniteField, QuadElement, QuadExt};
use crate::graphs::{self, Graph, GraphError, IntersectionArray, Partition, SrgParameters};
use crate::matrix::{IntMatrix, MatrixError};

/// Largest vertex count any construction here will build.
pub const MAX_VERTICES: u64 = 1500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("{vertices} vertices exceed the cap of {MAX_VERTICES}")]
    TooLarge { vertices: u64 },
    #[error("q = {0} must be odd")]
    EvenQ(u64),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("expected SRG {expected}, found {found}")]
    SrgCheckFailed { expected: String, found: String },
    #[error("expected DDG {expected}, found {found}")]
    ParameterMismatch { expected: String, found: String },
    #[error("spread check failed: {0}")]
    SpreadCheckFailed(String),
    #[error("not distance-regular: {0}")]
    NotDistanceRegular(GraphError),
    #[error("not antipodal: {0}")]
    NotAntipodal(String),
    #[error("class correspondence failed: {0}")]
    CorrespondenceFailed(String),
    #[error("mod-2 congruence fails at ({i},{j}): B = {b}, R = {r}, Q = {q}")]
    CongruenceFailed {
        i: usize,
        j: usize,
        b: i64,
        r: i64,
        q: i64,
    },
    #[error("|Q| differs from the Mathon adjacency at ({0},{1})")]
    NotOrthogonalSigning(usize, usize),
    #[error("involution check failed: {0}")]
    InvolutionFailed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ddg(#[from] DdgError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A 1-space of GF(q)^{2t}, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(pub Vec<FieldElement>);

/// Sp(2t,q) together with its vertex labels.
#[derive(Clone, Debug)]
pub struct SymplecticGraph {
    pub graph: Graph,
    pub points: Vec<ProjPoint>,
    pub params: SrgParameters,
}

/// `(v, k, λ, μ)` of Sp(2t,q).
pub fn sp_parameters(t: u32, q: u64) -> SrgParameters {
    let v = (q.pow(2 * t) - 1) / (q - 1);
    let mu = (q.pow(2 * t - 2) - 1) / (q - 1);
    SrgParameters {
        v: v as usize,
        k: (q * mu) as usize,
        lambda: mu as i64 - 2,
        mu: mu as i64,
    }
}

/// `(v, q^{2t−1}, (q−1)q^{2t−2})` of the complement of Sp(2t,q).
pub fn sp_complement_parameters(t: u32, q: u64) -> (usize, usize, i64) {
    let v = (q.pow(2 * t) - 1) / (q - 1);
    (v as usize, q.pow(2 * t - 1) as usize, ((q - 1) * q.pow(2 * t - 2)) as i64)
}

fn check_srg(g: &Graph, expected: SrgParameters) -> Result<SrgParameters, SymplecticError> {
    match graphs::verify_srg(g) {
        Ok(found) if found == expected => Ok(found),
        Ok(found) => Err(SymplecticError::SrgCheckFailed {
            expected: expected.to_string(),
            found: found.to_string(),
        }),
        Err(e) => Err(SymplecticError::SrgCheckFailed {
            expected: expected.to_string(),
            found: e.to_string(),
        }),
    }
}

fn cap(vertices: u64) -> Result<(), SymplecticError> {
    if vertices > MAX_VERTICES {
        return Err(SymplecticError::TooLarge { vertices });
    }
    Ok(())
}

/// Sp(2t,q): 1-spaces adjacent when `Σ (x_{2i−1}y_{2i} − x_{2i}y_{2i−1}) = 0`.
pub fn sp_graph(t: u32, q: u64) -> Result<SymplecticGraph, SymplecticError> {
    if t < 2 {
        return Err(SymplecticError::BadParameters(format!("t = {t} < 2")));
    }
    let f = FieldCtx::with_order(q)?;
    let dim = 2 * t as usize;
    let vertices = q
        .checked_pow(2 * t)
        .map(|x| (x - 1) / (q - 1))
        .unwrap_or(u64::MAX);
    cap(vertices)?;

    let elems = f.elements();
    let (zero, one) = (f.zero(), f.one());
    let mut points = Vec::with_capacity(vertices as usize);
    let mut digits = vec![0usize; dim];
    loop {
        let v: Vec<FieldElement> = digits.iter().map(|&d| elems[d]).collect();
        if v.iter().find(|&&x| x != zero) == Some(&one) {
            points.push(ProjPoint(v));
        }
        let Some(pos) = (0..dim).rev().find(|&i| digits[i] + 1 < elems.len()) else {
            break;
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
    }

    let form = |x: &[FieldElement], y: &[FieldElement]| {
        (0..dim / 2).fold(zero, |acc, i| {
            let term = f.sub(f.mul(x[2 * i], y[2 * i + 1]), f.mul(x[2 * i + 1], y[2 * i]));
            f.add(acc, term)
        })
    };
    let graph = Graph::from_predicate(points.len(), |a, b| form(&points[a].0, &points[b].0) == zero);
    let params = check_srg(&graph, sp_parameters(t, q))?;
    Ok(SymplecticGraph {
        graph,
        points,
        params,
    })
}

pub type ExtVertex = (QuadElement, QuadElement);

/// Sp(4,q) on the GF(q)^*-orbits of GF(q²)², adjacent when `z₁z₂' − z₂z₁' ∈ GF(q)`.
#[derive(Clone, Debug)]
pub struct ExtensionModel {
    field: QuadExt,
    labels: Vec<ExtVertex>,
    index: HashMap<ExtVertex, usize>,
    scalars: Vec<QuadElement>,
    graph: Graph,
    params: SrgParameters,
}

fn scale(f: &QuadExt, a: QuadElement, v: ExtVertex) -> ExtVertex {
    (f.mul(a, v.0), f.mul(a, v.1))
}

fn det(f: &QuadExt, x: ExtVertex, y: ExtVertex) -> QuadElement {
    f.sub(f.mul(x.0, y.1), f.mul(x.1, y.0))
}

/// Orbit representatives of nonzero vectors under multiplication by `group`,
/// in canonical order: each is the least element of its orbit.
fn orbit_representatives<F: FiniteField>(f: &F, group: &[F::Elem]) -> Vec<(F::Elem, F::Elem)> {
    let elems = f.elements();
    let zero = f.zero();
    let mut reps = Vec::new();
    for &a in &elems {
        for &b in &elems {
            if a == zero && b == zero {
                continue;
            }
            let v = (a, b);
            if group.iter().all(|&k| (f.mul(k, a), f.mul(k, b)) >= v) {
                reps.push(v);
            }
        }
    }
    reps
}

fn canonical<F: FiniteField>(f: &F, group: &[F::Elem], v: (F::Elem, F::Elem)) -> (F::Elem, F::Elem) {
    group
        .iter()
        .map(|&k| (f.mul(k, v.0), f.mul(k, v.1)))
        .min()
        .expect("group is nonempty")
}

impl ExtensionModel {
    pub fn new(q: u64) -> Result<Self, SymplecticError> {
        let base = FieldCtx::with_order(q)?;
        if q % 2 == 0 {
            return Err(SymplecticError::EvenQ(q));
        }
        cap(q * q * q + q * q + q + 1)?;
        let field = QuadExt::new(base)?;
        let scalars: Vec<QuadElement> = field
            .base()
            .elements()
            .into_iter()
            .skip(1)
            .map(|a| field.embed(a))
            .collect();
        let labels = orbit_representatives(&field, &scalars);
        let index = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let graph = Graph::from_predicate(labels.len(), |a, b| {
            field.in_base(det(&field, labels[a], labels[b]))
        });
        let params = check_srg(&graph, sp_parameters(2, q))?;
        Ok(ExtensionModel {
            field,
            labels,
            index,
            scalars,
            graph,
            params,
        })
    }

    pub fn q(&self) -> u64 {
        self.field.base().order()
    }

    pub fn field(&self) -> &QuadExt {
        &self.field
    }

    pub fn labels(&self) -> &[ExtVertex] {
        &self.labels
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn params(&self) -> SrgParameters {
        self.params
    }

    /// Index of the vertex containing the nonzero vector `v`.
    pub fn vertex_of(&self, v: ExtVertex) -> Option<usize> {
        self.index.get(&canonical(&self.field, &self.scalars, v)).copied()
    }

    /// `f(z₁, z₂) = (i z₁, i z₂)` on vertex indices.
    pub fn involution(&self) -> Vec<usize> {
        let i = self.field.i();
        self.labels
            .iter()
            .map(|&v| self.vertex_of(scale(&self.field, i, v)).expect("orbit image is a vertex"))
            .collect()
    }

    /// Exhaustive involution check: automorphism, fixed-point free, all orbits edges.
    pub fn involution_report(&self) -> Result<graphs::InvolutionReport, SymplecticError> {
        let report = graphs::involution_analyze(&self.graph, &self.involution())?;
        if !report.fixed_point_free() {
            return Err(SymplecticError::InvolutionFailed(format!(
                "fixes vertex {}",
                report.fixed_points[0]
            )));
        }
        if report.nonedge_orbits != 0 {
            return Err(SymplecticError::InvolutionFailed(format!(
                "{} orbits are non-edges",
                report.nonedge_orbits
            )));
        }
        Ok(report)
    }

    /// Complement graph with the involution orbits as classes.
    pub fn complement_ddg(&self) -> Result<ThinDdg, SymplecticError> {
        let report = self.involution_report()?;
        let ddg = ThinDdg::new(self.graph.complement(), report.orbits)?;
        let expected = sp4_complement_parameters(self.q());
        if ddg.params() != expected || ddg.classification() != Classification::AlmostProper {
            return Err(SymplecticError::ParameterMismatch {
                expected: format!("{expected} almost-proper"),
                found: format!("{} {}", ddg.params(), ddg.classification()),
            });
        }
        Ok(ddg)
    }

    /// The GF(q²)-lines: classes of the determinant-zero relation, keyed by
    /// the slope `z₂/z₁` (none when `z₁ = 0`).
    pub fn spread(&self) -> Result<Partition, SymplecticError> {
        let f = &self.field;
        let mut lines: HashMap<Option<QuadElement>, Vec<usize>> = HashMap::new();
        for (x, &(z1, z2)) in self.labels.iter().enumerate() {
            let slope = if z1 == f.zero() {
                None
            } else {
                Some(f.mul(z2, f.inverse(z1)?))
            };
            lines.entry(slope).or_default().push(x);
        }
        let mut classes: Vec<Vec<usize>> = lines.into_values().collect();
        classes.sort();
        Ok(Partition::new(classes, self.labels.len())?)
    }
}

/// Builds the extension model, checking it is an SRG with the Sp(4,q) parameters.
pub fn sp4_extension_model(q: u64) -> Result<ExtensionModel, SymplecticError> {
    ExtensionModel::new(q)
}

pub fn sp4_involution(q: u64) -> Result<Vec<usize>, SymplecticError> {
    let model = ExtensionModel::new(q)?;
    model.involution_report()?;
    Ok(model.involution())
}

/// `(q³+q²+q+1, q³, q²(q−1), q²(q−1), v/2, 2)`.
pub fn sp4_complement_parameters(q: u64) -> DdgParameters {
    let q = q as i64;
    let v = q * q * q + q * q + q + 1;
    let lambda = q * q * (q - 1);
    DdgParameters::new(v, q * q * q, lambda, lambda, v / 2, 2)
}

pub fn sp4_complement_ddg(q: u64) -> Result<ThinDdg, SymplecticError> {
    ExtensionModel::new(q)?.complement_ddg()
}

/// Sp(4,q)* with its spread and intersection array.
#[derive(Clone, Debug)]
pub struct SpreadDeleted {
    pub graph: Graph,
    pub spread: Partition,
    pub array: IntersectionArray,
    /// `c₂` of the array `{Q, Q−s−1, 1; 1, s, Q}`.
    pub s: usize,
}

impl ExtensionModel {
    /// Deletes the determinant-zero edges and checks the result.
    pub fn star(&self) -> Result<SpreadDeleted, SymplecticError> {
        let q = self.q() as usize;
        let spread = self.spread()?;
        if spread.len() != q * q + 1 || spread.uniform_size() != Some(q + 1) {
            return Err(SymplecticError::SpreadCheckFailed(format!(
                "{} classes, sizes {:?}",
                spread.len(),
                spread.classes().iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let class_of = spread.class_of();
        let n = self.labels.len();
        let f = &self.field;
        for x in 0..n {
            for y in x + 1..n {
                let zero_det = det(f, self.labels[x], self.labels[y]) == f.zero();
                if zero_det != (class_of[x] == class_of[y]) {
                    return Err(SymplecticError::SpreadCheckFailed(format!(
                        "vertices {x} and {y}: determinant zero is {zero_det}, same line is {}",
                        !zero_det
                    )));
                }
                if zero_det && !self.graph.is_adjacent(x, y) {
                    return Err(SymplecticError::SpreadCheckFailed(format!("line {} is not a clique", class_of[x])));
                }
            }
        }
        let graph = Graph::from_predicate(n, |a, b| self.graph.is_adjacent(a, b) && class_of[a] != class_of[b]);
        let expected_k = self.params.k - q;
        let k = graph.valency()?;
        if k != expected_k {
            return Err(SymplecticError::SpreadCheckFailed(format!("valency {k}, expected {expected_k}")));
        }
        let array = graphs::verify_distance_regular(&graph).map_err(SymplecticError::NotDistanceRegular)?;
        if array.diameter() != 3 {
            return Err(SymplecticError::NotDistanceRegular(GraphError::BadPartition(format!(
                "diameter {} instead of 3",
                array.diameter()
            ))));
        }
        let antipodal = graphs::antipodal_classes(&graph, &array).map_err(|e| SymplecticError::NotAntipodal(e.to_string()))?;
        if !antipodal.same_sets(&spread) {
            return Err(SymplecticError::NotAntipodal("antipodal classes differ from the spread".into()));
        }
        let s = check_mathon_shape(&array, (q * q) as u64)?;
        Ok(SpreadDeleted {
            graph,
            spread,
            array,
            s,
        })
    }
}

/// Reads `s` off an array and checks it has the shape `{Q, Q−s−1, 1; 1, s, Q}`.
fn check_mathon_shape(array: &IntersectionArray, big_q: u64) -> Result<usize, SymplecticError> {
    let qq = big_q as usize;
    let s = array.c.get(1).copied().unwrap_or(0);
    let shape = IntersectionArray {
        b: vec![qq, qq.wrapping_sub(s + 1), 1],
        c: vec![1, s, qq],
    };
    if *array != shape {
        return Err(SymplecticError::NotDistanceRegular(GraphError::BadPartition(format!(
            "array {array} does not have the shape {{Q,Q−s−1,1;1,s,Q}} with Q = {qq}"
        ))));
    }
    Ok(s)
}

pub fn sp4_star(q: u64) -> Result<SpreadDeleted, SymplecticError> {
    ExtensionModel::new(q)?.star()
}

/// Mathon graph on the `K`-orbits of GF(Q)² \ {0}.
#[derive(Clone, Debug)]
pub struct MathonGraph<E> {
    pub graph: Graph,
    pub labels: Vec<(E, E)>,
    pub array: IntersectionArray,
    pub antipodal: Partition,
    pub s: usize,
}

/// `Kx ~ Ky` iff `x₁y₂ − x₂y₁ ∈ bK`, with `K` the subgroup of index `r`.
pub fn mathon_graph<F>(field: &F, r: u64, b: F::Elem) -> Result<MathonGraph<F::Elem>, SymplecticError>
where
    F: FiniteField + Sync,
    F::Elem: Send + Sync,
{
    let big_q = field.order();
    if r < 2 || (big_q - 1) % r != 0 {
        return Err(SymplecticError::BadParameters(format!("r = {r} does not properly divide Q − 1 = {}", big_q - 1)));
    }
    let m = (big_q - 1) / r;
    if m % 2 != 0 && !big_q.is_power_of_two() {
        return Err(SymplecticError::BadParameters(format!(
            "m = {m} is odd and Q = {big_q} is not a power of two"
        )));
    }
    if b == field.zero() {
        return Err(SymplecticError::BadParameters("b must be nonzero".into()));
    }
    cap(r * (big_q + 1))?;
    let k_group = field.subgroup(m)?;
    let labels = orbit_representatives(field, &k_group);
    let b_inv = field.inverse(b)?;
    let zero = field.zero();
    let graph = Graph::from_predicate(labels.len(), |x, y| {
        let (u, v) = (labels[x], labels[y]);
        let d = field.sub(field.mul(u.0, v.1), field.mul(u.1, v.0));
        d != zero && field.subgroup_member(field.mul(d, b_inv), m).expect("m divides Q − 1")
    });
    if labels.len() as u64 != r * (big_q + 1) {
        return Err(SymplecticError::BadParameters(format!("{} orbits, expected {}", labels.len(), r * (big_q + 1))));
    }
    let k = graph.valency()?;
    if k as u64 != big_q {
        return Err(SymplecticError::BadParameters(format!("valency {k}, expected {big_q}")));
    }
    let array = graphs::verify_distance_regular(&graph).map_err(SymplecticError::NotDistanceRegular)?;
    let antipodal = graphs::antipodal_classes(&graph, &array).map_err(|e| SymplecticError::NotAntipodal(e.to_string()))?;
    let s = check_mathon_shape(&array, big_q)?;
    Ok(MathonGraph {
        graph,
        labels,
        array,
        antipodal,
        s,
    })
}

/// One verified identity of the quotient check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MathonQuotientReport {
    pub q: u64,
    pub ddg_vertices: usize,
    pub classes: usize,
    pub mathon_vertices: usize,
    pub weight: i64,
    pub mathon_array: String,
    pub checks: Vec<IdentityCheck>,
}

impl fmt::Display for MathonQuotientReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={}: {} classes ↔ M({}) on {} vertices, Q is W({},{})",
            self.q,
            self.classes,
            self.q * self.q,
            self.mathon_vertices,
            self.classes,
            self.weight
        )
    }
}

/// Checks that the partner `Q` of the complement DDG is an orthogonal signing
/// of `M(q²)` built with `K' = GF(q)^* ∪ i·GF(q)^*`.
pub fn mathon_quotient_check(q: u64) -> Result<MathonQuotientReport, SymplecticError> {
    let model = ExtensionModel::new(q)?;
    let ddg = model.complement_ddg()?;
    let pair = decompose_to_rq(&ddg)?;
    let f = model.field();

    let order = 2 * (q - 1);
    let k_prime = f.subgroup(order)?;
    let i = f.i();
    let base_ok = f.base().elements().into_iter().skip(1).all(|a| k_prime.contains(&f.embed(a)));
    if !base_ok || !k_prime.contains(&i) {
        return Err(SymplecticError::CorrespondenceFailed(
            "subgroup of order 2(q−1) does not contain GF(q)^* and i".into(),
        ));
    }
    let mathon = mathon_graph(f, (q + 1) / 2, f.one())?;
    let mathon_index: HashMap<ExtVertex, usize> =
        mathon.labels.iter().enumerate().map(|(x, &v)| (v, x)).collect();

    let m = pair.m();
    if mathon.labels.len() != m {
        return Err(SymplecticError::CorrespondenceFailed(format!(
            "{m} classes but M(q²) has {} vertices",
            mathon.labels.len()
        )));
    }
    let mut phi = Vec::with_capacity(m);
    let mut hit = vec![false; m];
    for (c, class) in ddg.partition().classes().iter().enumerate() {
        let images: Vec<usize> = class
            .iter()
            .map(|&x| mathon_index[&canonical(f, &k_prime, model.labels()[x])])
            .collect();
        if images[0] != images[1] {
            return Err(SymplecticError::CorrespondenceFailed(format!("class {c} meets two K'-orbits")));
        }
        if std::mem::replace(&mut hit[images[0]], true) {
            return Err(SymplecticError::CorrespondenceFailed(format!("K'-orbit {} hit twice", images[0])));
        }
        phi.push(images[0]);
    }
    let b = mathon.graph.adjacency().permuted(&phi);
    let (r, qm) = (pair.r(), pair.q().matrix());
    for x in 0..m {
        for y in 0..m {
            let (bv, rv, qv) = (b[(x, y)], r[(x, y)], qm[(x, y)]);
            if (bv - rv) % 2 != 0 || (rv - qv) % 2 != 0 {
                return Err(SymplecticError::CongruenceFailed { i: x, j: y, b: bv, r: rv, q: qv });
            }
        }
    }
    let q_sq = qm.try_mul(qm)?;
    let q2 = (q * q) as i64;
    let diag_zero = qm.diagonal().iter().all(|&d| d == 0);
    if !diag_zero || q_sq != IntMatrix::identity(m).scale(q2) {
        return Err(SymplecticError::Ddg(DdgError::PartnerNotWeighing {
            expected: q2,
            detail: "Q must have zero diagonal and Q² = q²I".into(),
        }));
    }
    let abs = qm.abs();
    for x in 0..m {
        for y in 0..m {
            if abs[(x, y)] != b[(x, y)] {
                return Err(SymplecticError::NotOrthogonalSigning(x, y));
            }
        }
    }
    let checks = [
        "classes {v, iv} correspond bijectively to K'-orbits",
        "B ≡ R (mod 2)",
        "R ≡ Q (mod 2)",
        "Q has zero diagonal",
        "Q² = q²I",
        "|Q| = B",
    ]
    .iter()
    .map(|s| IdentityCheck {
        identity: s.to_string(),
        pass: true,
    })
    .collect();
    Ok(MathonQuotientReport {
        q,
        ddg_vertices: ddg.graph().n(),
        classes: m,
        mathon_vertices: mathon.graph.n(),
        weight: pair.weight(),
        mathon_array: mathon.array.to_string(),
        checks,
    })
}
