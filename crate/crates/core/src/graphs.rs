//! Simple graphs and brute-force regularity checks.
//!
//! Every verifier is exhaustive and reports the first violating vertex, pair
//! or triple it meets when scanning in index order.

use std::collections::VecDeque;
use std::fmt;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("adjacency matrix is not square")]
    NotSquare,
    #[error("adjacency entry ({0},{1}) is not 0/1")]
    BadEntry(usize, usize),
    #[error("adjacency matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("vertex {0} has a loop")]
    Loop(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is complete")]
    Complete,
    #[error("graph has no edges")]
    Edgeless,
    #[error("not regular: vertex {vertex} has degree {degree}, vertex 0 has {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error(
        "not strongly regular: {} pair ({x},{y}) has {common} common neighbours, expected {expected}",
        if *.adjacent { "adjacent" } else { "non-adjacent" }
    )]
    NotStronglyRegular {
        x: usize,
        y: usize,
        adjacent: bool,
        common: i64,
        expected: i64,
    },
    #[error("strongly regular with λ = {lambda} ≠ μ = {mu}")]
    NotVkl { lambda: i64, mu: i64 },
    #[error("not connected: vertex {0} unreachable from vertex 0")]
    NotConnected(usize),
    #[error("not distance-regular: pair ({x},{y}) at distance {distance} has {what} = {found}, expected {expected}")]
    NotDistanceRegular {
        x: usize,
        y: usize,
        distance: usize,
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("not antipodal: {x}~{y} and {y}~{z} but {x} and {z} are at distance {distance}")]
    NotAntipodal {
        x: usize,
        y: usize,
        z: usize,
        distance: usize,
    },
    #[error("partition is invalid: {0}")]
    BadPartition(String),
    #[error("not equitable: vertex {vertex} of class {class} has {count} neighbours in class {target}, expected {expected}")]
    NotEquitable {
        vertex: usize,
        class: usize,
        target: usize,
        count: i64,
        expected: i64,
    },
    #[error("not a permutation of the vertex set")]
    NotPermutation,
    #[error("not an involution: vertex {0} is not fixed by the square")]
    NotInvolution(usize),
    #[error("not an automorphism: adjacency of ({0},{1}) changes")]
    NotAutomorphism(usize, usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A simple undirected graph stored as its symmetric 0/1 adjacency matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: IntMatrix,
}

impl Graph {
    pub fn from_adjacency(adj: IntMatrix) -> Result<Self, GraphError> {
        let n = adj.order().map_err(|_| GraphError::NotSquare)?;
        for i in 0..n {
            if adj[(i, i)] != 0 {
                return Err(GraphError::Loop(i));
            }
            for j in 0..n {
                if !matches!(adj[(i, j)], 0 | 1) {
                    return Err(GraphError::BadEntry(i, j));
                }
            }
        }
        if let Some((i, j)) = adj.first_asymmetry() {
            return Err(GraphError::NotSymmetric(i, j));
        }
        Ok(Graph { adj })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = IntMatrix::zeros(n, n);
        for (a, b) in edges {
            assert!(a != b, "loop at {a}");
            adj[(a, b)] = 1;
            adj[(b, a)] = 1;
        }
        Graph { adj }
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on `i < j`.
    pub fn from_predicate(n: usize, adjacent: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let upper: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| (i + 1..n).filter(|&j| adjacent(i, j)).collect())
            .collect();
        let mut adj = IntMatrix::zeros(n, n);
        for (i, row) in upper.into_iter().enumerate() {
            for j in row {
                adj[(i, j)] = 1;
                adj[(j, i)] = 1;
            }
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adj
    }

    pub fn into_adjacency(self) -> IntMatrix {
        self.adj
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.adj[(x, y)] == 1
    }

    pub fn neighbors(&self, x: usize) -> Vec<usize> {
        (0..self.n()).filter(|&y| self.is_adjacent(x, y)).collect()
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|x| self.neighbors(x)).collect()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj.row(x).iter().filter(|&&a| a == 1).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|x| self.degree(x)).sum::<usize>() / 2
    }

    /// Common valency, or the first vertex whose degree differs from vertex 0.
    pub fn valency(&self) -> Result<usize, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::Empty);
        }
        let k = self.degree(0);
        match (1..self.n()).find(|&x| self.degree(x) != k) {
            Some(x) => Err(GraphError::NotRegular {
                vertex: x,
                degree: self.degree(x),
                expected: k,
            }),
            None => Ok(k),
        }
    }

    /// Complement with adjacency `J − I − A`.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        Graph {
            adj: IntMatrix::from_fn(n, n, |i, j| (i != j && self.adj[(i, j)] == 0) as i64),
        }
    }

    /// Relabels so that new vertex `a` is old vertex `order[a]`.
    pub fn relabeled(&self, order: &[usize]) -> Graph {
        Graph {
            adj: self.adj.permuted(order),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs(&self.adjacency_lists(), 0).iter().all(|&d| d != UNREACHED)
    }
}

/// Ordered vertex partition; class order and within-class order fix block layout.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Checks that `classes` cover `0..n` exactly once.
    pub fn new(classes: Vec<Vec<usize>>, n: usize) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        for class in &classes {
            if class.is_empty() {
                return Err(GraphError::BadPartition("empty class".into()));
            }
            for &x in class {
                if x >= n {
                    return Err(GraphError::BadPartition(format!("vertex {x} out of range")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(GraphError::BadPartition(format!("vertex {x} repeated")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(GraphError::BadPartition(format!("vertex {x} missing")));
        }
        Ok(Partition { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// `class_of()[x]` is the index of the class containing `x`.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.vertex_count()];
        for (c, class) in self.classes.iter().enumerate() {
            for &x in class {
                out[x] = c;
            }
        }
        out
    }

    /// Common class size, if all classes have equal size.
    pub fn uniform_size(&self) -> Option<usize> {
        let s = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == s).then_some(s)
    }

    /// Partition equality ignoring class order and within-class order.
    pub fn same_sets(&self, other: &Partition) -> bool {
        let norm = |p: &Partition| {
            let mut cs: Vec<Vec<usize>> = p
                .classes
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.sort_unstable();
                    c
                })
                .collect();
            cs.sort();
            cs
        };
        norm(self) == norm(other)
    }

    /// One class per line, space-separated 0-based vertex indices.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        for class in &self.classes {
            let line: Vec<String> = class.iter().map(usize::to_string).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn read_text<R: BufRead>(r: R, n: usize) -> Result<Self, GraphError> {
        let mut classes = Vec::new();
        for (no, line) in r.lines().enumerate() {
            let line = line.map_err(|e| GraphError::BadPartition(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let class = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| GraphError::BadPartition(format!("line {}: {t:?}: {e}", no + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            classes.push(class);
        }
        Partition::new(classes, n)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParameters {
    pub v: usize,
    pub k: usize,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParameters {
    pub fn is_vkl(&self) -> bool {
        self.lambda == self.mu
    }

    /// Parameters of the complementary graph.
    pub fn complement(&self) -> SrgParameters {
        let (v, k) = (self.v as i64, self.k as i64);
        SrgParameters {
            v: self.v,
            k: self.v - self.k - 1,
            lambda: v - 2 - 2 * k + self.mu,
            mu: v - 2 * k + self.lambda,
        }
    }
}

impl fmt::Display for SrgParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Common-neighbour profile: `(k, λ, μ)` with `None` where no pair of that kind exists.
fn neighbour_profile(g: &Graph) -> Result<(usize, Option<i64>, Option<i64>), GraphError> {
    let k = g.valency()?;
    let sq = g.adj.try_mul(&g.adj)?;
    let n = g.n();
    let (mut lambda, mut mu) = (None, None);
    for x in 0..n {
        for y in x + 1..n {
            let adjacent = g.is_adjacent(x, y);
            let slot = if adjacent { &mut lambda } else { &mut mu };
            let common = sq[(x, y)];
            match *slot {
                None => *slot = Some(common),
                Some(expected) if expected != common => {
                    return Err(GraphError::NotStronglyRegular {
                        x,
                        y,
                        adjacent,
                        common,
                        expected,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok((k, lambda, mu))
}

/// Strongly regular parameters `(v, k, λ, μ)` by exhaustive common-neighbour counts.
pub fn verify_srg(g: &Graph) -> Result<SrgParameters, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let (k, lambda, mu) = neighbour_profile(g)?;
    match (lambda, mu) {
        (Some(lambda), Some(mu)) => Ok(SrgParameters {
            v: g.n(),
            k,
            lambda,
            mu,
        }),
        (Some(_), None) | (None, None) if k > 0 => Err(GraphError::Complete),
        (None, None) if g.n() == 1 => Err(GraphError::Complete),
        _ => Err(GraphError::Edgeless),
    }
}

/// `(v, k, λ)` for a graph in which every pair of distinct vertices has `λ`
/// common neighbours. Unlike [`verify_srg`] this accepts complete graphs.
pub fn verify_vkl(g: &Graph) -> Result<(usize, usize, i64), GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let (k, lambda, mu) = neighbour_profile(g)?;
    match (lambda, mu) {
        (Some(lambda), Some(mu)) if lambda != mu => Err(GraphError::NotVkl { lambda, mu }),
        (Some(l), _) | (None, Some(l)) => Ok((g.n(), k, l)),
        (None, None) => Ok((g.n(), k, 0)),
    }
}

/// Quotient matrix of an equitable partition.
pub fn quotient_equitable(g: &Graph, p: &Partition) -> Result<IntMatrix, GraphError> {
    if p.vertex_count() != g.n() {
        return Err(GraphError::BadPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.vertex_count(),
            g.n()
        )));
    }
    let class_of = p.class_of();
    let m = p.len();
    let mut quotient = IntMatrix::zeros(m, m);
    for (ci, class) in p.classes().iter().enumerate() {
        for (pos, &x) in class.iter().enumerate() {
            let mut counts = vec![0i64; m];
            for y in g.neighbors(x) {
                counts[class_of[y]] += 1;
            }
            for (cj, &count) in counts.iter().enumerate() {
                if pos == 0 {
                    quotient[(ci, cj)] = count;
                } else if quotient[(ci, cj)] != count {
                    return Err(GraphError::NotEquitable {
                        vertex: x,
                        class: ci,
                        target: cj,
                        count,
                        expected: quotient[(ci, cj)],
                    });
                }
            }
        }
    }
    Ok(quotient)
}

/// Intersection array `{b₀,…,b_{d−1}; c₁,…,c_d}` of a distance-regular graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    pub fn valency(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    /// `a_j = k − b_j − c_j` for `j = 0..=d` (with `c₀ = 0`, `b_d = 0`).
    pub fn a(&self) -> Vec<usize> {
        let k = self.valency();
        let d = self.diameter();
        (0..=d)
            .map(|j| {
                let bj = if j < d { self.b[j] } else { 0 };
                let cj = if j > 0 { self.c[j - 1] } else { 0 };
                k - bj - cj
            })
            .collect()
    }

    /// Sphere sizes `k_0 = 1`, `k_{j+1} = k_j b_j / c_{j+1}`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![1usize];
        for j in 0..self.diameter() {
            let next = out[j] * self.b[j] / self.c[j];
            out.push(next);
        }
        out
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

const UNREACHED: usize = usize::MAX;

fn bfs(lists: &[Vec<usize>], src: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; lists.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        for &y in &lists[x] {
            if dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// All-pairs distances by one BFS per vertex.
pub fn distance_matrix(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    let lists = g.adjacency_lists();
    let dist: Vec<Vec<usize>> = (0..g.n()).into_par_iter().map(|s| bfs(&lists, s)).collect();
    if let Some(first) = dist.first() {
        if let Some(y) = first.iter().position(|&d| d == UNREACHED) {
            return Err(GraphError::NotConnected(y));
        }
    }
    Ok(dist)
}

/// Exhaustive distance-regularity check over all ordered pairs.
pub fn verify_distance_regular(g: &Graph) -> Result<IntersectionArray, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let k = g.valency()?;
    let dist = distance_matrix(g)?;
    let lists = g.adjacency_lists();
    let d = dist.iter().flat_map(|row| row.iter().copied()).max().unwrap_or(0);

    // Per distance j: (c_j, a_j, b_j) as first observed.
    let mut seen: Vec<Option<[usize; 3]>> = vec![None; d + 1];
    for x in 0..g.n() {
        for y in 0..g.n() {
            let j = dist[x][y];
            let mut counts = [0usize; 3];
            for &z in &lists[y] {
                let dz = dist[x][z];
                if dz + 1 == j {
                    counts[0] += 1;
                } else if dz == j {
                    counts[1] += 1;
                } else {
                    counts[2] += 1;
                }
            }
            match seen[j] {
                None => seen[j] = Some(counts),
                Some(exp) => {
                    if let Some(idx) = (0..3).find(|&i| exp[i] != counts[i]) {
                        return Err(GraphError::NotDistanceRegular {
                            x,
                            y,
                            distance: j,
                            what: ["c", "a", "b"][idx],
                            found: counts[idx],
                            expected: exp[idx],
                        });
                    }
                }
            }
        }
    }
    let seen: Vec<[usize; 3]> = seen.into_iter().map(|s| s.expect("every distance occurs")).collect();
    debug_assert_eq!(seen[0][2], k);
    Ok(IntersectionArray {
        b: (0..d).map(|j| seen[j][2]).collect(),
        c: (1..=d).map(|j| seen[j][0]).collect(),
    })
}

/// Classes of the relation "equal or at distance d", checked to be an equivalence.
pub fn antipodal_classes(g: &Graph, arr: &IntersectionArray) -> Result<Partition, GraphError> {
    let dist = distance_matrix(g)?;
    let d = arr.diameter();
    let n = g.n();
    let related = |x: usize, y: usize| x == y || dist[x][y] == d;
    let mut class_id = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_id[x] != usize::MAX {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&y| related(x, y)).collect();
        for &y in &class {
            if class_id[y] != usize::MAX {
                // y was already placed in an earlier class that does not contain x.
                let z = classes[class_id[y]][0];
                return Err(GraphError::NotAntipodal {
                    x,
                    y,
                    z,
                    distance: dist[x][z],
                });
            }
            for z in 0..n {
                if related(y, z) && !related(x, z) {
                    return Err(GraphError::NotAntipodal {
                        x,
                        y,
                        z,
                        distance: dist[x][z],
                    });
                }
            }
        }
        for &y in &class {
            class_id[y] = classes.len();
        }
        classes.push(class);
    }
    Partition::new(classes, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub fixed_points: Vec<usize>,
    pub edge_orbits: usize,
    pub nonedge_orbits: usize,
    /// 2-orbits `{x, π(x)}` with `x < π(x)`, then fixed points as singletons.
    pub orbits: Partition,
}

impl InvolutionReport {
    pub fn fixed_point_free(&self) -> bool {
        self.fixed_points.is_empty()
    }
}

/// Checks that `perm` is an involutory automorphism and classifies its orbits.
pub fn involution_analyze(g: &Graph, perm: &[usize]) -> Result<InvolutionReport, GraphError> {
    let n = g.n();
    if perm.len() != n {
        return Err(GraphError::NotPermutation);
    }
    let mut hit = vec![false; n];
    for &y in perm {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(GraphError::NotPermutation);
        }
    }
    if let Some(x) = (0..n).find(|&x| perm[perm[x]] != x) {
        return Err(GraphError::NotInvolution(x));
    }
    let broken = (0..n).into_par_iter().find_first(|&x| {
        (x + 1..n).any(|y| g.is_adjacent(x, y) != g.is_adjacent(perm[x], perm[y]))
    });
    if let Some(x) = broken {
        let y = (x + 1..n)
            .find(|&y| g.is_adjacent(x, y) != g.is_adjacent(perm[x], perm[y]))
            .expect("witness exists");
        return Err(GraphError::NotAutomorphism(x, y));
    }

    let mut classes = Vec::new();
    let mut fixed_points = Vec::new();
    let (mut edge_orbits, mut nonedge_orbits) = (0, 0);
    for x in 0..n {
        let y = perm[x];
        if y == x {
            fixed_points.push(x);
        } else if x < y {
            if g.is_adjacent(x, y) {
                edge_orbits += 1;
            } else {
                nonedge_orbits += 1;
            }
            classes.push(vec![x, y]);
        }
    }
    classes.extend(fixed_points.iter().map(|&x| vec![x]));
    Ok(InvolutionReport {
        fixed_points,
        edge_orbits,
        nonedge_orbits,
        orbits: Partition::new(classes, n)?,
    })
}

/// Rook's graph on `[n]²`: `(i,j) ~ (i',j')` iff exactly one coordinate agrees.
/// Vertex `(i, j)` has index `i·n + j`.
pub fn lattice_graph(n: usize) -> Graph {
    Graph::from_predicate(n * n, |a, b| (a / n == b / n) != (a % n == b % n))
}

/// Coordinate involution `(i,j) ↦ (σ(i), σ(j))` on [`lattice_graph`], with
/// `σ = (0 1)(2 3)…` swapping consecutive coordinates. Needs `n` even.
pub fn lattice_involution(n: usize) -> Vec<usize> {
    assert!(n % 2 == 0, "coordinate pairing needs an even side");
    let sigma = |i: usize| i ^ 1;
    (0..n * n).map(|v| sigma(v / n) * n + sigma(v % n)).collect()
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_predicate(n, |_, _| true)
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Hypercube `Q_d` on bit strings.
pub fn hypercube_graph(d: u32) -> Graph {
    Graph::from_predicate(1 << d, |a, b| (a ^ b).count_ones() == 1)
}

/// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen_graph() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn srg_examples() {
        let c5 = cycle_graph(5);
        assert_eq!(
            verify_srg(&c5).unwrap(),
            SrgParameters { v: 5, k: 2, lambda: 0, mu: 1 }
        );
        let l4 = verify_srg(&lattice_graph(4)).unwrap();
        assert_eq!((l4.v, l4.k, l4.lambda, l4.mu), (16, 6, 2, 2));
        assert!(l4.is_vkl());
        assert!(matches!(
            verify_srg(&path_graph(3)),
            Err(GraphError::NotRegular { vertex: 1, degree: 2, expected: 1 })
        ));
        assert_eq!(verify_srg(&complete_graph(4)), Err(GraphError::Complete));
        assert_eq!(verify_srg(&Graph::from_edges(4, [])), Err(GraphError::Edgeless));
        assert!(matches!(
            verify_srg(&cycle_graph(6)),
            Err(GraphError::NotStronglyRegular { .. })
        ));
    }

    #[test]
    fn lattice_small_sides() {
        let l2 = lattice_graph(2);
        // 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1): the 4-cycle 0-1-3-2.
        assert_eq!(l2, Graph::from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)]));
        let l3 = verify_srg(&lattice_graph(3)).unwrap();
        assert_eq!((l3.v, l3.k, l3.lambda, l3.mu), (9, 4, 1, 2));
    }

    #[test]
    fn vkl_accepts_complete() {
        assert_eq!(verify_vkl(&complete_graph(4)).unwrap(), (4, 3, 2));
        assert_eq!(verify_vkl(&lattice_graph(4)).unwrap(), (16, 6, 2));
        assert!(verify_vkl(&cycle_graph(5)).is_err());
    }

    #[test]
    fn complement_parameters() {
        let c5 = cycle_graph(5);
        let p = verify_srg(&c5).unwrap();
        assert_eq!(verify_srg(&c5.complement()).unwrap(), p.complement());
        assert_eq!(complete_graph(4).complement(), Graph::from_edges(4, []));
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn equitable_quotients() {
        let c4 = cycle_graph(4);
        let p = Partition::new(vec![vec![0, 2], vec![1, 3]], 4).unwrap();
        assert_eq!(
            quotient_equitable(&c4, &p).unwrap(),
            IntMatrix::from_rows(&[[0, 2], [2, 0]])
        );
        // Adjacent pairs as classes: still equitable for the cycle.
        let p = Partition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        assert_eq!(
            quotient_equitable(&c4, &p).unwrap(),
            IntMatrix::from_rows(&[[1, 1], [1, 1]])
        );
        // Path 0-1-2 with classes {0},{1,2}: vertex 2 has no neighbour in class 0.
        let p = Partition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        assert_eq!(
            quotient_equitable(&path_graph(3), &p),
            Err(GraphError::NotEquitable { vertex: 2, class: 1, target: 0, count: 0, expected: 1 })
        );
    }

    #[test]
    fn partition_validation_and_text() {
        assert!(Partition::new(vec![vec![0, 1], vec![1]], 2).is_err());
        assert!(Partition::new(vec![vec![0]], 2).is_err());
        assert!(Partition::new(vec![vec![0, 2]], 2).is_err());
        let p = Partition::new(vec![vec![2, 0], vec![1, 3]], 4).unwrap();
        assert_eq!(p.to_text(), "2 0\n1 3\n");
        assert_eq!(Partition::read_text(p.to_text().as_bytes(), 4).unwrap(), p);
    }

    #[test]
    fn distance_regular_examples() {
        let arr = verify_distance_regular(&cycle_graph(6)).unwrap();
        assert_eq!(arr, IntersectionArray { b: vec![2, 1, 1], c: vec![1, 1, 2] });
        assert_eq!(arr.to_string(), "{2,1,1;1,1,2}");
        assert_eq!(arr.sphere_sizes().iter().sum::<usize>(), 6);

        let arr = verify_distance_regular(&complete_graph(4)).unwrap();
        assert_eq!(arr, IntersectionArray { b: vec![3], c: vec![1] });
        assert_eq!(arr.a(), vec![0, 2]);

        assert!(matches!(
            verify_distance_regular(&Graph::from_edges(4, [(0, 1), (2, 3)])),
            Err(GraphError::NotConnected(2))
        ));
        // The 6-vertex prism is regular and connected but not distance-regular.
        let prism = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        assert!(matches!(
            verify_distance_regular(&prism),
            Err(GraphError::NotDistanceRegular { .. })
        ));
    }

    #[test]
    fn antipodal_examples() {
        let c6 = cycle_graph(6);
        let arr = verify_distance_regular(&c6).unwrap();
        let classes = antipodal_classes(&c6, &arr).unwrap();
        assert_eq!(classes.classes(), &[vec![0, 3], vec![1, 4], vec![2, 5]]);

        let cube = hypercube_graph(3);
        let arr = verify_distance_regular(&cube).unwrap();
        assert_eq!(arr.diameter(), 3);
        let classes = antipodal_classes(&cube, &arr).unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(classes.uniform_size(), Some(2));

        let pet = petersen_graph();
        let arr = verify_distance_regular(&pet).unwrap();
        assert_eq!(arr, IntersectionArray { b: vec![3, 2], c: vec![1, 1] });
        assert!(matches!(
            antipodal_classes(&pet, &arr),
            Err(GraphError::NotAntipodal { distance: 1, .. })
        ));
    }

    #[test]
    fn involutions() {
        let c4 = cycle_graph(4);
        let rep = involution_analyze(&c4, &[2, 3, 0, 1]).unwrap();
        assert!(rep.fixed_point_free());
        assert_eq!((rep.edge_orbits, rep.nonedge_orbits), (0, 2));

        let l4 = lattice_graph(4);
        let rep = involution_analyze(&l4, &lattice_involution(4)).unwrap();
        assert!(rep.fixed_point_free());
        assert_eq!((rep.edge_orbits, rep.nonedge_orbits), (0, 8));
        assert_eq!(rep.orbits.uniform_size(), Some(2));

        assert_eq!(involution_analyze(&c4, &[1, 2, 3, 0]), Err(GraphError::NotInvolution(0)));
        assert_eq!(involution_analyze(&c4, &[0, 0, 2, 3]), Err(GraphError::NotPermutation));
        let p4 = path_graph(4);
        assert_eq!(involution_analyze(&p4, &[1, 0, 2, 3]), Err(GraphError::NotAutomorphism(0, 2)));
        let rep = involution_analyze(&p4, &[3, 2, 1, 0]).unwrap();
        assert_eq!((rep.edge_orbits, rep.nonedge_orbits), (1, 1));
        let rep = involution_analyze(&p4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(rep.fixed_points, vec![0, 1, 2, 3]);
    }

    #[test]
    fn graph_validation() {
        assert_eq!(
            Graph::from_adjacency(IntMatrix::identity(2)),
            Err(GraphError::Loop(0))
        );
        assert_eq!(
            Graph::from_adjacency(IntMatrix::from_rows(&[[0, 1], [0, 0]])),
            Err(GraphError::NotSymmetric(0, 1))
        );
        assert_eq!(
            Graph::from_adjacency(IntMatrix::from_rows(&[[0, 2], [2, 0]])),
            Err(GraphError::BadEntry(0, 1))
        );
    }
}
