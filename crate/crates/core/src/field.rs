//! Exact arithmetic in GF(p^k) and in the quadratic extension GF(q)[i] with i² = c.
//!
//! Elements of [`FieldCtx`] are stored as their index `Σ c_j p^j` in the
//! polynomial basis; comparing indices is the canonical element order used
//! everywhere a deterministic choice is needed (moduli, non-squares, orbit
//! representatives).

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{k} exceeds the cap of 2^20")]
    TooLarge { p: u64, k: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("quadratic extension requires odd order, got {0}")]
    EvenCharacteristic(u64),
    #[error("subgroup order {m} does not divide {group}")]
    NotDivisor { m: u64, group: u64 },
    #[error("zero is not in the multiplicative group")]
    ZeroElement,
    #[error("coefficient vector {0:?} does not describe a field element")]
    BadCoefficients(Vec<u64>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Operations shared by the prime-power fields and the quadratic extension model.
pub trait FiniteField {
    type Elem: Copy + Eq + Ord + Hash + Debug;

    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inverse(&self, a: Self::Elem) -> Result<Self::Elem, FieldError>;
    /// All elements in canonical order, zero first.
    fn elements(&self) -> Vec<Self::Elem>;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character test; zero counts as a square.
    fn is_square(&self, a: Self::Elem) -> bool {
        if a == self.zero() || self.characteristic() == 2 {
            return true;
        }
        self.pow(a, (self.order() - 1) / 2) == self.one()
    }

    /// Membership in the unique multiplicative subgroup of order `m`.
    fn subgroup_member(&self, a: Self::Elem, m: u64) -> Result<bool, FieldError> {
        let group = self.order() - 1;
        if m == 0 || group % m != 0 {
            return Err(FieldError::NotDivisor { m, group });
        }
        if a == self.zero() {
            return Err(FieldError::ZeroElement);
        }
        Ok(self.pow(a, m) == self.one())
    }

    /// The elements of the subgroup of order `m`, in canonical order.
    fn subgroup(&self, m: u64) -> Result<Vec<Self::Elem>, FieldError> {
        let zero = self.zero();
        let mut out = Vec::new();
        for x in self.elements().into_iter().filter(|&x| x != zero) {
            if self.subgroup_member(x, m)? {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// An element of a [`FieldCtx`], identified by its index in the canonical order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// GF(p^k) as GF(p)[x] modulo a monic irreducible polynomial.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    order: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldCtx {
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::DegreeZero);
        }
        let order = (0..k)
            .try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&o| o <= MAX_FIELD_ORDER))
            .ok_or(FieldError::TooLarge { p, k })?;

        let modulus = (0..order)
            .map(|idx| {
                let mut f = digits(idx, p, k);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut ctx = FieldCtx {
            p,
            k,
            modulus,
            order,
            exp: Vec::new(),
            log: Vec::new(),
        };
        ctx.build_log_tables();
        Ok(ctx)
    }

    /// Builds GF(q) from its order.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    fn build_log_tables(&mut self) {
        let group = (self.order - 1) as usize;
        let one = 1u32;
        for g in 1..self.order as u32 {
            let mut exp = Vec::with_capacity(group);
            let mut x = one;
            loop {
                exp.push(x);
                x = self.poly_mul_index(x, g);
                if x == one || exp.len() > group {
                    break;
                }
            }
            if exp.len() == group {
                let mut log = vec![0u32; self.order as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    fn poly_mul_index(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p, self.k);
        let da = digits(a as u64, p, k);
        let db = digits(b as u64, p, k);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate() {
                let pos = deg - k + j;
                prod[pos] = (prod[pos] + (p - lead) * m) % p;
            }
        }
        undigits(&prod[..k], p) as u32
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Monic modulus, little-endian, length `k + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A fixed primitive element.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.exp.get(1).copied().unwrap_or(1))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        digits(x.0 as u64, self.p, self.k)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.k || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoefficients(coeffs.to_vec()));
        }
        Ok(FieldElement(undigits(coeffs, self.p) as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        ((index as u64) < self.order).then_some(FieldElement(index))
    }

    /// Quadratic character: 0, 1 or −1.
    pub fn quadratic_character(&self, x: FieldElement) -> i64 {
        if x.0 == 0 {
            0
        } else if self.is_square(x) {
            1
        } else {
            -1
        }
    }
}

impl FiniteField for FieldCtx {
    type Elem = FieldElement;

    fn order(&self) -> u64 {
        self.order
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out as u32)
    }

    fn neg(&self, a: FieldElement) -> FieldElement {
        let mut x = a.0 as u64;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out as u32)
    }

    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let group = self.order - 1;
        let l = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % group;
        FieldElement(self.exp[l as usize])
    }

    fn inverse(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let group = self.order - 1;
        let l = (group - self.log[a.0 as usize] as u64) % group;
        Ok(FieldElement(self.exp[l as usize]))
    }

    fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement(1);
        }
        if a.0 == 0 {
            return a;
        }
        let group = self.order - 1;
        let l = (self.log[a.0 as usize] as u128 * e as u128 % group as u128) as usize;
        FieldElement(self.exp[l])
    }

    fn elements(&self) -> Vec<FieldElement> {
        (0..self.order as u32).map(FieldElement).collect()
    }
}

/// An element `x + i·y` of a [`QuadExt`]. Ordered lexicographically by `(x, y)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadElement {
    pub x: FieldElement,
    pub y: FieldElement,
}

/// GF(q²) modelled as pairs over GF(q) with i² = c for a fixed non-square c.
#[derive(Clone, Debug)]
pub struct QuadExt {
    base: FieldCtx,
    c: FieldElement,
}

impl QuadExt {
    /// Uses the smallest non-square of the base field as `c`.
    pub fn new(base: FieldCtx) -> Result<Self, FieldError> {
        if base.order() % 2 == 0 {
            return Err(FieldError::EvenCharacteristic(base.order()));
        }
        let c = base
            .elements()
            .into_iter()
            .find(|&x| !base.is_square(x))
            .expect("odd fields have non-squares");
        Ok(QuadExt { base, c })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn nonsquare(&self) -> FieldElement {
        self.c
    }

    /// The element `i` with `i² = c`.
    pub fn i(&self) -> QuadElement {
        QuadElement {
            x: self.base.zero(),
            y: self.base.one(),
        }
    }

    /// Embeds a base-field element as `a + 0i`.
    pub fn embed(&self, a: FieldElement) -> QuadElement {
        QuadElement {
            x: a,
            y: self.base.zero(),
        }
    }

    /// True when the element lies in the base field (zero imaginary part).
    pub fn in_base(&self, z: QuadElement) -> bool {
        z.y == self.base.zero()
    }
}

impl FiniteField for QuadExt {
    type Elem = QuadElement;

    fn order(&self) -> u64 {
        self.base.order() * self.base.order()
    }

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn zero(&self) -> QuadElement {
        self.embed(self.base.zero())
    }

    fn one(&self) -> QuadElement {
        self.embed(self.base.one())
    }

    fn add(&self, a: QuadElement, b: QuadElement) -> QuadElement {
        QuadElement {
            x: self.base.add(a.x, b.x),
            y: self.base.add(a.y, b.y),
        }
    }

    fn neg(&self, a: QuadElement) -> QuadElement {
        QuadElement {
            x: self.base.neg(a.x),
            y: self.base.neg(a.y),
        }
    }

    fn mul(&self, a: QuadElement, b: QuadElement) -> QuadElement {
        let f = &self.base;
        let cyy = f.mul(self.c, f.mul(a.y, b.y));
        QuadElement {
            x: f.add(f.mul(a.x, b.x), cyy),
            y: f.add(f.mul(a.x, b.y), f.mul(b.x, a.y)),
        }
    }

    fn inverse(&self, a: QuadElement) -> Result<QuadElement, FieldError> {
        let f = &self.base;
        // (x + iy)(x − iy) = x² − c·y², nonzero because c is a non-square.
        let norm = f.sub(f.mul(a.x, a.x), f.mul(self.c, f.mul(a.y, a.y)));
        let inv = f.inverse(norm)?;
        Ok(QuadElement {
            x: f.mul(a.x, inv),
            y: f.mul(f.neg(a.y), inv),
        })
    }

    fn elements(&self) -> Vec<QuadElement> {
        let base = self.base.elements();
        base.iter()
            .flat_map(|&x| base.iter().map(move |&y| QuadElement { x, y }))
            .collect()
    }
}

fn digits(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `f` modulo the monic polynomial `g` over GF(p).
fn poly_rem_monic(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let lead = r[dr];
        for (j, &c) in g.iter().enumerate() {
            let pos = dr - dg + j;
            r[pos] = (r[pos] + (p - lead) * c % p) % p;
        }
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, d);
            g.push(1);
            if degree(&poly_rem_monic(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf9_uses_x_squared_plus_one() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // Oracle: x² + 1 has no root in GF(3).
        assert!((0..3u64).all(|r| (r * r + 1) % 3 != 0));
    }

    #[test]
    fn build_errors() {
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldCtx::new(3, 0).unwrap_err(), FieldError::DegreeZero);
        assert!(matches!(FieldCtx::new(2, 21), Err(FieldError::TooLarge { .. })));
        assert!(FieldCtx::new(2, 20).is_ok());
        assert_eq!(FieldCtx::with_order(6).unwrap_err(), FieldError::NotPrimePower(6));
    }

    #[test]
    fn inverses() {
        let f = FieldCtx::new(3, 1).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.inverse(two).unwrap(), two);
        assert_eq!(f.inverse(f.zero()).unwrap_err(), FieldError::ZeroInverse);

        let g = FieldCtx::new(3, 2).unwrap();
        let i = g.from_coeffs(&[0, 1]).unwrap();
        let two_i = g.from_coeffs(&[0, 2]).unwrap();
        assert_eq!(g.inverse(i).unwrap(), two_i);
    }

    #[test]
    fn quadratic_extension_nonsquares() {
        let q3 = QuadExt::new(FieldCtx::new(3, 1).unwrap()).unwrap();
        assert_eq!(q3.nonsquare(), q3.base().from_int(2));
        let q5 = QuadExt::new(FieldCtx::new(5, 1).unwrap()).unwrap();
        assert_eq!(q5.nonsquare(), q5.base().from_int(2));
        assert_eq!(
            QuadExt::new(FieldCtx::new(2, 2).unwrap()).unwrap_err(),
            FieldError::EvenCharacteristic(4)
        );
        let i = q5.i();
        assert_eq!(q5.mul(i, i), q5.embed(q5.nonsquare()));
    }

    #[test]
    fn subgroup_membership_gf9() {
        let f = FieldCtx::new(3, 2).unwrap();
        let nonzero: Vec<_> = f.elements().into_iter().skip(1).collect();
        let k2: Vec<_> = nonzero
            .iter()
            .copied()
            .filter(|&x| f.subgroup_member(x, 2).unwrap())
            .collect();
        assert_eq!(k2, vec![f.one(), f.from_int(2)]);

        // Index-2 subgroup equals the set of squares g^(2j).
        let g = f.generator();
        let mut squares: Vec<_> = (0..4).map(|j| f.pow(g, 2 * j)).collect();
        squares.sort();
        assert_eq!(f.subgroup(4).unwrap(), squares);
        assert!(f.subgroup_member(f.from_int(2), 4).unwrap());

        assert!(nonzero.iter().all(|&x| f.subgroup_member(x, 8).unwrap()));
        assert_eq!(
            f.subgroup_member(f.one(), 3).unwrap_err(),
            FieldError::NotDivisor { m: 3, group: 8 }
        );
        assert_eq!(f.subgroup_member(f.zero(), 2).unwrap_err(), FieldError::ZeroElement);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
