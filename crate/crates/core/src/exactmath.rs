//! Exact integer and rational kernels.
//!
//! Lattice data (weights, degrees, residues) are `i64`; products that can grow
//! go through checked arithmetic. Every rational quantity is a [`Rational`]
//! backed by arbitrary precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Integer value, if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// `(numerator, denominator)` when both fit in `i64`.
    pub fn parts_i64(&self) -> Option<(i64, i64)> {
        Some((self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let floor = self.0.floor();
        Rational(&self.0 - floor)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a fraction: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |acc, &v| acc.gcd(&v))
}

pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / a.gcd(&b)).checked_mul(b).map(i64::abs).ok_or(Error::Overflow("lcm"))
}

pub fn checked_product(values: &[i64]) -> Result<i64> {
    values
        .iter()
        .try_fold(1i64, |acc, &v| acc.checked_mul(v))
        .ok_or(Error::Overflow("product"))
}

/// Least nonnegative residue.
pub fn residue(a: i64, r: i64) -> i64 {
    a.rem_euclid(r)
}

/// Inverse of `a` modulo `r`, in `[1, r-1]` (`[0]` when `r = 1`).
pub fn mod_inverse(a: i64, r: i64) -> Result<i64> {
    if r < 1 {
        return Err(Error::InvalidInput(format!("modulus {r} must be positive")));
    }
    let e = a.rem_euclid(r).extended_gcd(&r);
    if e.gcd != 1 {
        return Err(Error::NotInvertible { a, r });
    }
    Ok(e.x.rem_euclid(r))
}

/// Hirzebruch–Jung expansion `alpha/beta = b1 - 1/(b2 - 1/(...))` with all `b_i >= 2`.
pub fn hj_expansion(alpha: i64, beta: i64) -> Result<Vec<i64>> {
    if alpha < 2 || beta < 1 || beta >= alpha {
        return Err(Error::InvalidInput(format!(
            "hj_expansion needs 1 <= beta < alpha, got ({alpha}, {beta})"
        )));
    }
    if alpha.gcd(&beta) != 1 {
        return Err(Error::InvalidInput(format!("gcd({alpha}, {beta}) != 1")));
    }
    let (mut a, mut b) = (alpha, beta);
    let mut out = Vec::new();
    while b != 0 {
        let c = (a + b - 1) / b;
        out.push(c);
        (a, b) = (b, c * b - a);
    }
    Ok(out)
}

/// Evaluates `b1 - 1/(b2 - 1/(... - 1/bs))`.
pub fn eval_hj(chain: &[i64]) -> Rational {
    let mut acc: Option<Rational> = None;
    for &b in chain.iter().rev() {
        acc = Some(match acc {
            None => Rational::from_int(b),
            Some(x) => Rational::from_int(b) - x.recip(),
        });
    }
    acc.unwrap_or_else(Rational::zero)
}

// Continuant K(b1..bs) = b1 K(b2..bs) - K(b3..bs), K() = 1.
fn continuant(chain: &[i64]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for &b in chain.iter().rev() {
        let next = BigInt::from(b) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn validate_chain(chain: &[i64]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::InvalidInput("empty resolution chain".into()));
    }
    if let Some(b) = chain.iter().find(|&&b| b < 2) {
        return Err(Error::InvalidInput(format!("chain entry {b} < 2")));
    }
    Ok(())
}

/// `(1,1)` entry of the inverse of the chain's intersection matrix
/// (diagonal `-b_i`, off-diagonal `1`), computed by cofactors.
pub fn chain_inverse_corner(chain: &[i64]) -> Result<Rational> {
    validate_chain(chain)?;
    let det = continuant(chain);
    let minor = continuant(&chain[1..]);
    Ok(Rational(BigRational::new(-minor, det)))
}

/// Same as [`chain_inverse_corner`] for the last curve of the chain.
pub fn chain_inverse_last_corner(chain: &[i64]) -> Result<Rational> {
    validate_chain(chain)?;
    let det = continuant(chain);
    let minor = continuant(&chain[..chain.len() - 1]);
    Ok(Rational(BigRational::new(-minor, det)))
}

pub fn divisors(n: i64) -> Vec<i64> {
    assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: i64) -> i64 {
    assert!(n > 0);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Product `∏ (1 - t^k)^{mult}`; multiplicities may be negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorList {
    factors: BTreeMap<i64, i64>,
}

impl FactorList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies by `(1 - t^k)^mult`.
    pub fn push(&mut self, k: i64, mult: i64) {
        assert!(k > 0, "factor exponent must be positive");
        if mult == 0 {
            return;
        }
        let entry = self.factors.entry(k).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.factors.remove(&k);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.factors.iter().map(|(&k, &m)| (k, m))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Degree of the rational function as a difference of degrees.
    pub fn degree(&self) -> i64 {
        self.iter().map(|(k, m)| k * m).sum()
    }
}

impl FromIterator<(i64, i64)> for FactorList {
    fn from_iter<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut f = FactorList::new();
        for (k, m) in iter {
            f.push(k, m);
        }
        f
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_side = |items: Vec<(i64, i64)>| -> String {
            if items.is_empty() {
                return "1".to_string();
            }
            items
                .into_iter()
                .map(|(k, m)| {
                    let base = if k == 1 { "(1-t)".to_string() } else { format!("(1-t^{k})") };
                    if m == 1 {
                        base
                    } else {
                        format!("{base}^{m}")
                    }
                })
                .collect::<Vec<_>>()
                .join("")
        };
        let num: Vec<_> = self.iter().filter(|&(_, m)| m > 0).collect();
        let den: Vec<_> = self.iter().filter(|&(_, m)| m < 0).map(|(k, m)| (k, -m)).collect();
        if den.is_empty() {
            write!(f, "{}", fmt_side(num))
        } else {
            write!(f, "{} / {}", fmt_side(num), fmt_side(den))
        }
    }
}

/// Net exponents `c_e` of the cyclotomic polynomials `Φ_e`, using
/// `1 - t^k = ± ∏_{e | k} Φ_e`. Zero exponents are dropped.
pub fn cyclotomic_exponents(f: &FactorList) -> BTreeMap<i64, i64> {
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for (k, mult) in f.iter() {
        for e in divisors(k) {
            *out.entry(e).or_insert(0) += mult;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse_examples() {
        // scan oracle
        let scan = |a: i64, r: i64| (1..r).find(|x| (a * x) % r == 1).unwrap();
        assert_eq!(mod_inverse(6, 11).unwrap(), 2);
        assert_eq!(scan(6, 11), 2);
        assert_eq!(mod_inverse(5, 13).unwrap(), 8);
        assert_eq!(scan(5, 13), 8);
        for r in 2..20 {
            assert_eq!(mod_inverse(1, r).unwrap(), 1);
        }
        assert_eq!(mod_inverse(-1, 7).unwrap(), 6);
        assert!(matches!(mod_inverse(4, 6), Err(Error::NotInvertible { a: 4, r: 6 })));
    }

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expansion(7, 6).unwrap(), vec![2; 6]);
        assert_eq!(eval_hj(&[2; 6]), Rational::new(7, 6));
        assert_eq!(hj_expansion(5, 2).unwrap(), vec![3, 2]);
        assert_eq!(hj_expansion(2, 1).unwrap(), vec![2]);
        assert!(hj_expansion(6, 4).is_err());
        assert!(hj_expansion(5, 5).is_err());
        assert!(hj_expansion(5, 0).is_err());
    }

    #[test]
    fn chain_corners() {
        for k in 1..15 {
            assert_eq!(chain_inverse_corner(&vec![2; k as usize]).unwrap(), Rational::new(-k, k + 1));
        }
        assert_eq!(chain_inverse_corner(&[5]).unwrap(), Rational::new(-1, 5));
        assert_eq!(chain_inverse_corner(&[3, 2]).unwrap(), Rational::new(-2, 5));
        assert_eq!(chain_inverse_last_corner(&[3, 2]).unwrap(), Rational::new(-3, 5));
        assert!(chain_inverse_corner(&[]).is_err());
        assert!(chain_inverse_corner(&[1, 3]).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        let f: FactorList = [(1, 1)].into_iter().collect();
        assert_eq!(cyclotomic_exponents(&f), BTreeMap::from([(1, 1)]));
        let f: FactorList = [(6, 1), (1, -1)].into_iter().collect();
        assert_eq!(cyclotomic_exponents(&f), BTreeMap::from([(2, 1), (3, 1), (6, 1)]));
    }

    #[test]
    fn factor_list_merges_and_cancels() {
        let mut f = FactorList::new();
        f.push(6, 2);
        f.push(6, -2);
        f.push(3, 1);
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![(3, 1)]);
        assert_eq!(f.to_string(), "(1-t^3)");
    }

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(Rational::new(2, -84).to_string(), "-1/42");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        assert_eq!("-3/6".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        let json = serde_json::to_string(&Rational::new(1, 42)).unwrap();
        assert_eq!(json, "\"1/42\"");
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), Rational::new(1, 42));
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(42), 12);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(divisors(36).iter().map(|&e| euler_phi(e)).sum::<i64>(), 36);
    }
}
