//! Exact characteristic polynomials of integer matrices.
//!
//! `det(xI − M)` is computed modulo enough word-sized primes to exceed twice a
//! Hadamard-type bound on every coefficient, then lifted by Chinese
//! remaindering. Each modular image uses a Hessenberg reduction, so the whole
//! computation is `O(n³)` word operations per prime.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::matrix::{IntMatrix, MatrixError};

/// Integer polynomial, coefficients in ascending degree order.
pub type IntPoly = Vec<BigInt>;

/// Coefficients of `det(xI − m)`, constant term first; monic of degree `n`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly, MatrixError> {
    let n = m.order()?;
    if n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let bound = coefficient_bound(m);
    let target: BigUint = bound * 2u32 + 1u32;

    let mut primes = Vec::new();
    let mut modulus = BigUint::one();
    let mut candidate: u64 = (1 << 31) - 1;
    while modulus <= target {
        if is_word_prime(candidate) {
            modulus *= candidate;
            primes.push(candidate);
        }
        candidate -= 2;
    }

    let images: Vec<Vec<u64>> = primes
        .par_iter()
        .map(|&p| {
            let reduced: Vec<u64> = m
                .entries()
                .iter()
                .map(|&x| x.rem_euclid(p as i64) as u64)
                .collect();
            char_poly_mod(reduced, n, p)
        })
        .collect();

    let mut coeffs = vec![BigUint::zero(); n + 1];
    let mut acc_mod = BigUint::one();
    for (image, &p) in images.iter().zip(&primes) {
        let m_mod_p = (&acc_mod % p).to_u64().expect("below p");
        let inv = mod_inverse(m_mod_p, p);
        for (c, &a) in coeffs.iter_mut().zip(image) {
            let r = (&*c % p).to_u64().expect("below p");
            let delta = (a + p - r) % p * inv % p;
            *c += &acc_mod * delta;
        }
        acc_mod *= p;
    }

    let half = &acc_mod >> 1u32;
    let acc_mod = BigInt::from(acc_mod);
    Ok(coeffs
        .into_iter()
        .map(|c| {
            if c > half {
                BigInt::from(c) - &acc_mod
            } else {
                BigInt::from(c)
            }
        })
        .collect())
}

/// Product of two integer polynomials.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Human-readable rendering, highest degree first (`x^2 - 2x + 1`).
pub fn format_poly(p: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let var = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        let body = if d > 0 && mag.is_one() {
            var
        } else {
            format!("{mag}{var}")
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (sign, body)) in terms.iter().enumerate() {
        match (k, *sign) {
            (0, "-") => s.push('-'),
            (0, _) => {}
            (_, sgn) => {
                s.push(' ');
                s.push_str(sgn);
                s.push(' ');
            }
        }
        s.push_str(body);
    }
    s
}

/// Bound on `|coefficient of x^(n-k)|` over all `k`: the sum of `C(n,k)`
/// principal minors, each at most the product of the `k` largest row norms.
fn coefficient_bound(m: &IntMatrix) -> BigUint {
    let n = m.rows();
    let mut norms: Vec<u64> = (0..n)
        .map(|i| {
            let sq: u128 = m.row(i).iter().map(|&x| (x as i128 * x as i128) as u128).sum();
            ceil_sqrt(sq)
        })
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));

    let mut best = BigUint::one();
    let mut binom = BigUint::one();
    let mut prod = BigUint::one();
    for k in 1..=n {
        binom = binom * (n - k + 1) / k;
        prod *= norms[k - 1].max(1);
        let b = &binom * &prod;
        if b > best {
            best = b;
        }
    }
    best
}

fn ceil_sqrt(x: u128) -> u64 {
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while r * r < x {
        r += 1;
    }
    r as u64
}

fn is_word_prime(n: u64) -> bool {
    if n < 2 || n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Characteristic polynomial over GF(p), `p < 2^31`, via Hessenberg form.
fn char_poly_mod(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i * n + j] != 0) else {
            continue;
        };
        let target = j + 1;
        if piv != target {
            for c in 0..n {
                h.swap(piv * n + c, target * n + c);
            }
            for r in 0..n {
                h.swap(r * n + piv, r * n + target);
            }
        }
        let inv = mod_inverse(h[target * n + j], p);
        for r in j + 2..n {
            let u = h[r * n + j] * inv % p;
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let sub = u * h[target * n + c] % p;
                h[r * n + c] = (h[r * n + c] + p - sub) % p;
            }
            for rr in 0..n {
                h[rr * n + target] = (h[rr * n + target] + u * h[rr * n + r]) % p;
            }
        }
    }

    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        let diag = h[m * n + m];
        for (d, &c) in polys[m].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - diag * c % p) % p;
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = t * h[(i + 1) * n + i] % p;
            if t == 0 {
                break;
            }
            let coef = t * h[i * n + m] % p;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), ints(&[1, -2, 1]));
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(char_poly(&swap).unwrap(), ints(&[-1, 0, 1]));
        assert_eq!(char_poly(&IntMatrix::ones(3, 3)).unwrap(), ints(&[0, 0, -3, 1]));
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_poly(&ints(&[1, -2, 1])), "x^2 - 2x + 1");
        assert_eq!(format_poly(&ints(&[0, 0, -3, 1])), "x^3 - 3x^2");
        assert_eq!(format_poly(&ints(&[-1])), "-1");
    }

    #[test]
    fn zero_subdiagonal_needs_no_pivot() {
        // Upper triangular: eigenvalues on the diagonal.
        let m = IntMatrix::from_rows(&[[2, 5, 7], [0, -1, 3], [0, 0, 4]]);
        let expected = poly_mul(&poly_mul(&ints(&[-2, 1]), &ints(&[1, 1])), &ints(&[-4, 1]));
        assert_eq!(char_poly(&m).unwrap(), expected);
    }
}
