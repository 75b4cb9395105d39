//! Scalar arithmetic: the prime field F_p, integer Laurent polynomials in `q`,
//! and the cyclotomic quotient `O_p = Z[q]/(Psi_p(q^2))`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Characteristic of the ground field and order of the differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeConfig {
    p: u32,
}

impl PrimeConfig {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// Image of an integer in F_p.
    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn from_bigint(&self, x: &BigInt) -> u32 {
        let r = x % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        r.to_u32().expect("residue fits")
    }

    /// Symmetric lift to the integers, in `(-p/2, p/2]`.
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if 2 * a > p {
            a - p
        } else {
            a
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Element of `Z[q, q^-1]`, stored sparsely with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntLaurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(e, BigInt::from(c));
        out
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_term(e, BigInt::from(c));
        }
        out
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.coeffs {
            out.add_term(*e, x * c);
        }
        out
    }

    /// Evaluate at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Coefficients as `(exponent, value)` pairs; panics if a value exceeds `i64`.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.coeffs
            .iter()
            .map(|(e, c)| (*e, c.to_i64().expect("coefficient fits in i64")))
            .collect()
    }
}

impl Add for &IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        IntLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = IntLaurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $f:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(IntLaurent, Add, add);
forward_owned!(IntLaurent, Sub, sub);
forward_owned!(IntLaurent, Mul, mul);

impl fmt::Display for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{}", e)?,
            }
        }
        Ok(())
    }
}

fn serialize_pairs<S: Serializer>(x: &IntLaurent, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(x.coeffs.len()))?;
    for (e, c) in &x.coeffs {
        match c.to_i64() {
            Some(v) => seq.serialize_element(&(*e, v))?,
            None => seq.serialize_element(&(*e, c.to_string()))?,
        }
    }
    seq.end()
}

impl Serialize for IntLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_pairs(self, s)
    }
}

/// Residue class in `O_p`, kept in the canonical window of exponents `[0, 2p-3]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpScalar {
    p: u32,
    residue: IntLaurent,
}

impl OpScalar {
    pub fn zero(p: PrimeConfig) -> Self {
        Self { p: p.p(), residue: IntLaurent::zero() }
    }

    pub fn one(p: PrimeConfig) -> Self {
        reduce_cyclotomic(&IntLaurent::one(), p)
    }

    pub fn monomial(e: i64, c: i64, p: PrimeConfig) -> Self {
        reduce_cyclotomic(&IntLaurent::monomial(e, c), p)
    }

    pub fn residue(&self) -> &IntLaurent {
        &self.residue
    }

    pub fn prime(&self) -> PrimeConfig {
        PrimeConfig { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue == IntLaurent::one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        reduce_cyclotomic(&(&self.residue + &rhs.residue), self.prime())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        reduce_cyclotomic(&(&self.residue - &rhs.residue), self.prime())
    }

    pub fn neg(&self) -> Self {
        Self { p: self.p, residue: -&self.residue }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        reduce_cyclotomic(&(&self.residue * &rhs.residue), self.prime())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        reduce_cyclotomic(&self.residue.shift(k), self.prime())
    }

    /// Units of `O_p` that are signed powers of `q`: returns `(sign, exponent)`.
    pub fn as_signed_power(&self) -> Option<(i64, i64)> {
        if self.residue.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.residue.coeffs.iter().next()?;
        let c = c.to_i64()?;
        (c == 1 || c == -1).then_some((c, *e))
    }

    /// Whether `self` is invertible in `O_p`: multiplication by it on the
    /// lattice with basis `q^0, ..., q^{2p-3}` has determinant `±1`.
    pub fn is_unit(&self) -> bool {
        let rank = 2 * self.p as usize - 2;
        let mut m: Vec<Vec<BigInt>> = (0..rank)
            .map(|i| {
                let col = reduce_cyclotomic(&self.residue.shift(i as i64), self.prime());
                (0..rank).map(|e| col.residue.coeff(e as i64)).collect()
            })
            .collect();
        let det = bareiss_det(&mut m);
        det.abs().is_one()
    }
}

/// Fraction-free Gaussian elimination; destroys `m`.
fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

impl fmt::Display for OpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Serialize for OpScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_pairs(&self.residue, s)
    }
}

/// Canonical representative of `x` modulo `Psi_p(q^2)`.
///
/// Uses `q^{2p} = 1` to bring exponents into `[0, 2p-1]` and then eliminates
/// `q^{2p-2}` and `q^{2p-1}` with the monic relation.
pub fn reduce_cyclotomic(x: &IntLaurent, p: PrimeConfig) -> OpScalar {
    let period = 2 * p.p() as i64;
    let mut dense = vec![BigInt::zero(); period as usize];
    for (e, c) in &x.coeffs {
        dense[e.rem_euclid(period) as usize] += c;
    }
    for top in [period - 1, period - 2] {
        let c = std::mem::take(&mut dense[top as usize]);
        if c.is_zero() {
            continue;
        }
        // q^top = -(q^{top-2} + q^{top-4} + ... ) down to the parity floor
        let mut e = top - 2;
        while e >= 0 {
            dense[e as usize] -= &c;
            e -= 2;
        }
    }
    let mut residue = IntLaurent::zero();
    for (e, c) in dense.into_iter().enumerate() {
        residue.add_term(e as i64, c);
    }
    OpScalar { p: p.p(), residue }
}

/// `[m] = sum_{i=0}^{m-1} q^{1-m+2i}` as a Laurent polynomial, with `[-m] = -[m]`.
pub fn quantum_integer_laurent(m: i64) -> IntLaurent {
    if m < 0 {
        return -&quantum_integer_laurent(-m);
    }
    IntLaurent::from_pairs((0..m).map(|i| (1 - m + 2 * i, 1)))
}

pub fn quantum_integer(m: i64, p: PrimeConfig) -> OpScalar {
    reduce_cyclotomic(&quantum_integer_laurent(m), p)
}

/// Gaussian binomial `[a choose b]` by the q-Pascal recursion, over `Z[q, q^-1]`.
pub fn quantum_binomial_laurent(a: i64, b: i64) -> Result<IntLaurent> {
    if b < 0 || b > a {
        return Err(Error::BinomialRange { a, b });
    }
    // row[k] = [r choose k] for the current r
    let mut row = vec![IntLaurent::one()];
    for r in 1..=a {
        let mut next = vec![IntLaurent::zero(); (r + 1) as usize];
        for k in 0..=r {
            let mut v = IntLaurent::zero();
            if k < r {
                v = &v + &row[k as usize].shift(k);
            }
            if k > 0 {
                v = &v + &row[(k - 1) as usize].shift(k - r);
            }
            next[k as usize] = v;
        }
        row = next;
    }
    Ok(row[b as usize].clone())
}

pub fn quantum_binomial(a: i64, b: i64, p: PrimeConfig) -> Result<OpScalar> {
    Ok(reduce_cyclotomic(&quantum_binomial_laurent(a, b)?, p))
}

/// Binomial `[x choose j]` for arbitrary integer top entry `x`.
///
/// For `x < 0` this is `(-1)^j [j - x - 1 choose j]`; for `0 <= x < j` it vanishes.
pub fn quantum_binomial_general(x: i64, j: i64) -> IntLaurent {
    assert!(j >= 0);
    if x >= j {
        quantum_binomial_laurent(x, j).expect("range checked")
    } else if x >= 0 {
        IntLaurent::zero()
    } else {
        let v = quantum_binomial_laurent(j - x - 1, j).expect("range checked");
        if j % 2 == 0 {
            v
        } else {
            -&v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32) -> PrimeConfig {
        PrimeConfig::new(x).unwrap()
    }

    fn psi(pc: PrimeConfig) -> IntLaurent {
        IntLaurent::from_pairs((0..pc.p() as i64).map(|i| (2 * i, 1)))
    }

    /// Schoolbook division of a polynomial with nonnegative exponents by a monic divisor.
    fn long_division_remainder(x: &IntLaurent, d: &IntLaurent) -> IntLaurent {
        let dd = d.max_degree().unwrap();
        let mut r = x.clone();
        while let Some(top) = r.max_degree() {
            if top < dd {
                break;
            }
            let c = r.coeff(top);
            let mut sub = IntLaurent::zero();
            for (e, dc) in d.terms() {
                sub.add_term(e + top - dd, dc * &c);
            }
            r = &r - &sub;
        }
        r
    }

    #[test]
    fn units() {
        for pr in [3, 5, 7] {
            let pc = p(pr);
            assert!(OpScalar::monomial(3, -1, pc).is_unit());
            assert!(!OpScalar::zero(pc).is_unit());
            assert!(!OpScalar::monomial(0, 2, pc).is_unit());
            // 1 + q^2 is a cyclotomic unit when p is odd
            assert!(reduce_cyclotomic(&IntLaurent::from_pairs([(0, 1), (2, 1)]), pc).is_unit());
        }
        // [3] vanishes in O_3, and 1 - q^2 divides p
        assert!(!quantum_integer(3, p(3)).is_unit());
        assert!(!reduce_cyclotomic(&IntLaurent::from_pairs([(0, 1), (2, -1)]), p(5)).is_unit());
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeConfig::new(4).is_err());
        assert!(PrimeConfig::new(2).is_err());
        assert!(PrimeConfig::new(7).is_ok());
    }

    #[test]
    fn quantum_integer_examples() {
        let pc = p(5);
        assert_eq!(quantum_integer_laurent(2), IntLaurent::from_pairs([(-1, 1), (1, 1)]));
        assert!(quantum_integer(0, pc).is_zero());
        assert!(quantum_integer(1, pc).is_one());
        // [3] in O_3 is the normal form of q^-2 + 1 + q^2, which is zero
        let three = quantum_integer(3, p(3));
        assert!(three.is_zero());
        let oracle = long_division_remainder(
            &IntLaurent::from_pairs([(0, 1), (2, 1), (4, 1)]),
            &psi(p(3)),
        );
        assert!(oracle.is_zero());
    }

    #[test]
    fn reduction_examples() {
        let pc = p(3);
        let r = reduce_cyclotomic(&IntLaurent::monomial(4, 1), pc);
        assert_eq!(r.residue(), &IntLaurent::from_pairs([(0, -1), (2, -1)]));
        assert!(reduce_cyclotomic(&IntLaurent::one(), pc).is_one());
        assert!(reduce_cyclotomic(&psi(pc), pc).is_zero());
    }

    #[test]
    fn reduction_agrees_with_long_division() {
        for pr in [3, 5, 7] {
            let pc = p(pr);
            for e in 0..(4 * pr as i64) {
                let x = IntLaurent::from_pairs([(e, 3), (e / 2, -2), (1, 1)]);
                let ours = reduce_cyclotomic(&x, pc);
                let oracle = long_division_remainder(&x, &psi(pc));
                assert_eq!(ours.residue(), &oracle, "p={pr} e={e}");
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(quantum_binomial_laurent(2, 1).unwrap(), quantum_integer_laurent(2));
        assert_eq!(quantum_binomial_laurent(7, 0).unwrap(), IntLaurent::one());
        assert!(quantum_binomial_laurent(2, 3).is_err());
        assert!(quantum_binomial_laurent(2, -1).is_err());
        // [4 choose 2] from the product formula prod (1 - q^{2k}) in q-shifted form
        let expected = IntLaurent::from_pairs([(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]);
        assert_eq!(quantum_binomial_laurent(4, 2).unwrap(), expected);
        let pc = p(5);
        assert_eq!(quantum_binomial(4, 2, pc).unwrap(), reduce_cyclotomic(&expected, pc));
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        // [a]! / ([b]! [a-b]!) checked by multiplying back
        let fact = |m: i64| {
            (1..=m).fold(IntLaurent::one(), |acc, k| &acc * &quantum_integer_laurent(k))
        };
        for a in 0..=8 {
            for b in 0..=a {
                let lhs = &quantum_binomial_laurent(a, b).unwrap() * &(&fact(b) * &fact(a - b));
                assert_eq!(lhs, fact(a), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn general_binomial_negative_top() {
        // [-1 choose j] = (-1)^j
        for j in 0..5 {
            let v = quantum_binomial_general(-1, j);
            assert_eq!(v, IntLaurent::monomial(0, if j % 2 == 0 { 1 } else { -1 }));
        }
        assert!(quantum_binomial_general(1, 2).is_zero());
    }

    #[test]
    fn display_and_serialize() {
        let x = IntLaurent::from_pairs([(-1, 1), (0, -2), (3, 1)]);
        assert_eq!(x.to_string(), "q^-1 - 2 + q^3");
        assert_eq!(serde_json::to_string(&x).unwrap(), "[[-1,1],[0,-2],[3,1]]");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_laurent() -> impl Strategy<Value = IntLaurent> {
            proptest::collection::vec((-6i64..10, -4i64..5), 0..6).prop_map(IntLaurent::from_pairs)
        }

        proptest! {
            #[test]
            fn reduction_is_ring_hom(x in small_laurent(), y in small_laurent(), pr in prop::sample::select(vec![3u32, 5, 7])) {
                let pc = PrimeConfig::new(pr).unwrap();
                let lhs = reduce_cyclotomic(&(&x * &y), pc);
                let rhs = reduce_cyclotomic(&x, pc).mul(&reduce_cyclotomic(&y, pc));
                prop_assert_eq!(lhs, rhs);
                let lhs = reduce_cyclotomic(&(&x + &y), pc);
                let rhs = reduce_cyclotomic(&x, pc).add(&reduce_cyclotomic(&y, pc));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn reduction_window(x in small_laurent(), pr in prop::sample::select(vec![3u32, 5, 7])) {
                let pc = PrimeConfig::new(pr).unwrap();
                let r = reduce_cyclotomic(&x, pc);
                if let (Some(lo), Some(hi)) = (r.residue().min_degree(), r.residue().max_degree()) {
                    prop_assert!(lo >= 0 && hi <= 2 * pr as i64 - 3);
                }
                prop_assert!(reduce_cyclotomic(&(&x * &psi(pc)), pc).is_zero());
            }

            #[test]
            fn quantum_integer_odd(m in -20i64..20) {
                prop_assert_eq!(quantum_integer_laurent(-m), -&quantum_integer_laurent(m));
            }

            #[test]
            fn q_pascal(a in 1i64..=8, b in 0i64..=8, pr in prop::sample::select(vec![3u32, 5, 7])) {
                prop_assume!(b <= a);
                let pc = PrimeConfig::new(pr).unwrap();
                let lhs = quantum_binomial(a, b, pc).unwrap();
                let mut rhs = IntLaurent::zero();
                if b < a {
                    rhs = &rhs + &quantum_binomial_laurent(a - 1, b).unwrap().shift(b);
                }
                if b > 0 {
                    rhs = &rhs + &quantum_binomial_laurent(a - 1, b - 1).unwrap().shift(b - a);
                }
                prop_assert_eq!(lhs, reduce_cyclotomic(&rhs, pc));
            }
        }
    }
}
