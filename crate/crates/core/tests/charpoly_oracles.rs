use ddg_forge_core::charpoly::{char_poly, poly_mul, IntPoly};
use ddg_forge_core::ddg::{construct_ddg_family, Family, Ps22Variant};
use ddg_forge_core::designs::Sign;
use ddg_forge_core::graphs;
use ddg_forge_core::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

type Poly = Vec<i128>;

fn padd(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `det` of a matrix of polynomials by cofactor expansion along the first row.
fn laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![0];
    for col in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let mut term = pmul(&m[0][col], &laplace(&minor));
        if col % 2 == 1 {
            term.iter_mut().for_each(|c| *c = -*c);
        }
        acc = padd(&acc, &term);
    }
    acc
}

fn cofactor_char_poly(a: &IntMatrix) -> IntPoly {
    let n = a.rows();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { vec![-(a[(i, j)] as i128), 1] } else { vec![-(a[(i, j)] as i128)] })
                .collect()
        })
        .collect();
    let mut p = laplace(&m);
    p.resize(n + 1, 0);
    p.into_iter().map(BigInt::from).collect()
}

/// Faddeev–LeVerrier over the integers: every division by `k` is exact.
fn faddeev_leverrier(a: &IntMatrix) -> IntPoly {
    let n = a.rows();
    let am: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(a[(i, j)])).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    s += &am[i][l] * &mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                trace += &am[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

fn small_square() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-6i64..=6, n * n).prop_map(move |d| IntMatrix::from_vec(n, n, d).unwrap())
    })
}

fn medium_square() -> impl Strategy<Value = IntMatrix> {
    (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(-1000i64..=1000, n * n).prop_map(move |d| IntMatrix::from_vec(n, n, d).unwrap())
    })
}

proptest! {
    #[test]
    fn agrees_with_cofactor_expansion(m in small_square()) {
        prop_assert_eq!(char_poly(&m).unwrap(), cofactor_char_poly(&m));
    }

    #[test]
    fn agrees_with_faddeev_leverrier(m in medium_square()) {
        prop_assert_eq!(char_poly(&m).unwrap(), faddeev_leverrier(&m));
    }

    #[test]
    fn block_diagonal_multiplies(a in small_square(), b in small_square()) {
        let d = IntMatrix::block_diagonal(&[&a, &b]);
        prop_assert_eq!(char_poly(&d).unwrap(), poly_mul(&char_poly(&a).unwrap(), &char_poly(&b).unwrap()));
    }
}

#[test]
fn graph_adjacency_matrices() {
    for g in [graphs::petersen_graph(), graphs::lattice_graph(4), graphs::hypercube_graph(4)] {
        assert_eq!(char_poly(g.adjacency()).unwrap(), faddeev_leverrier(g.adjacency()));
    }
}

#[test]
fn ddg_adjacency_matrices() {
    for family in [
        Family::Ps22 { t: 2, variant: Ps22Variant::A },
        Family::Multipartite { t: 6, u: 1, eps: Sign::Minus },
        Family::PairOfCliques { u: 1, delta: Sign::Plus },
    ] {
        let built = construct_ddg_family(family).unwrap();
        let a = built.ddg.layout_adjacency();
        assert_eq!(char_poly(&a).unwrap(), faddeev_leverrier(&a), "{}", family.name());
    }
}

#[test]
fn large_entries_need_many_primes() {
    let m = IntMatrix::from_fn(8, 8, |i, j| ((i * 8 + j) as i64 * 7_919_993 % 2_000_003) - 1_000_001);
    assert_eq!(char_poly(&m).unwrap(), faddeev_leverrier(&m));
}
