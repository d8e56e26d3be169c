//! Normal forms, weight systems, Milnor numbers and monomial supports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{checked_product, gcd_all, Rational};

pub type Monomial = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NfClass {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl fmt::Display for NfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for NfClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => NfClass::I,
            "II" | "2" => NfClass::II,
            "III" | "3" => NfClass::III,
            "IV" | "4" => NfClass::IV,
            "V" | "5" => NfClass::V,
            "VI" | "6" => NfClass::VI,
            "VII" | "7" => NfClass::VII,
            other => return Err(Error::InvalidInput(format!("unknown class {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub class: NfClass,
    pub p: [i64; 3],
    pub extra: Option<(i64, i64)>,
}

impl NormalForm {
    pub fn new(class: NfClass, p: [i64; 3], extra: Option<(i64, i64)>) -> Result<Self> {
        if p.iter().any(|&x| x < 2) {
            return Err(Error::InvalidInput(format!("exponents {p:?} must all be >= 2")));
        }
        let [p0, p1, p2] = p;
        match (class, extra) {
            (NfClass::VI, Some((a, b))) => {
                if (p0 - 1) * (p0 * a + p2 * b) != p0 * p1 * p2 {
                    return Err(Error::InvalidInput(format!(
                        "class VI side condition fails for p={p:?}, (a,b)=({a},{b})"
                    )));
                }
            }
            (NfClass::VII, Some((a, b))) => {
                if (p0 - 1) * (p0 * a + p2 * b) != b * (p0 * p1 - 1) {
                    return Err(Error::InvalidInput(format!(
                        "class VII side condition fails for p={p:?}, (a,b)=({a},{b})"
                    )));
                }
            }
            (NfClass::VI | NfClass::VII, None) => {
                return Err(Error::InvalidInput(format!("class {class} needs (a, b)")));
            }
            (_, Some(_)) => {
                return Err(Error::InvalidInput(format!("class {class} takes no (a, b)")));
            }
            (_, None) => {}
        }
        if let Some((a, b)) = extra {
            if a < 0 || b < 0 {
                return Err(Error::InvalidInput("(a, b) must be nonnegative".into()));
            }
        }
        Ok(NormalForm { class, p, extra })
    }

    /// Exponent vectors in `(x, y, z)`, as printed for each class.
    pub fn monomials(&self) -> Vec<Monomial> {
        let [p0, p1, p2] = self.p;
        let (a, b) = self.extra.unwrap_or((0, 0));
        let m: Vec<[i64; 3]> = match self.class {
            NfClass::I => vec![[p0, 0, 0], [0, p1, 0], [0, 0, p2]],
            NfClass::II => vec![[p0, 0, 0], [0, p1, 0], [0, 1, p2]],
            NfClass::III => vec![[p0, 0, 0], [0, p1, 1], [0, 1, p2]],
            NfClass::IV => vec![[p0, 0, 0], [0, p1, 1], [1, 0, p2]],
            NfClass::V => vec![[p0, 1, 0], [0, p1, 1], [1, 0, p2]],
            NfClass::VI => vec![[p0, 0, 0], [1, p1, 0], [1, 0, p2], [0, a, b]],
            NfClass::VII => vec![[p0, 1, 0], [1, p1, 0], [1, 0, p2], [1, 0, a], [0, a, b]],
        };
        m.into_iter().map(|v| v.to_vec()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: Vec<i64>,
    pub degree: i64,
}

impl WeightSystem {
    pub fn new(weights: Vec<i64>, degree: i64) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| w < 1) {
            return Err(Error::InvalidInput(format!("weights {weights:?} must be positive")));
        }
        if degree < 1 {
            return Err(Error::InvalidInput(format!("degree {degree} must be positive")));
        }
        Ok(WeightSystem { weights, degree })
    }

    pub fn n_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weighted_degree(&self, m: &[i64]) -> i64 {
        self.weights.iter().zip(m).map(|(w, a)| w * a).sum()
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// Appends a fourth weight, keeping the degree.
    pub fn extend(&self, w: i64) -> Result<Self> {
        let mut weights = self.weights.clone();
        weights.push(w);
        WeightSystem::new(weights, self.degree)
    }

    /// `d / (w_0 w_1 ... )`.
    pub fn degree_over_product(&self) -> Result<Rational> {
        Ok(Rational::new(self.degree, checked_product(&self.weights)?))
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({}; {})", w.join(","), self.degree)
    }
}

fn cross(u: &[i64], v: &[i64]) -> Result<[i64; 3]> {
    let m = |a: i64, b: i64| a.checked_mul(b).ok_or(Error::Overflow("cross product"));
    Ok([
        m(u[1], v[2])? - m(u[2], v[1])?,
        m(u[2], v[0])? - m(u[0], v[2])?,
        m(u[0], v[1])? - m(u[1], v[0])?,
    ])
}

/// Minimal positive integer weights making every monomial of equal degree.
pub fn solve_weights_for(monomials: &[Monomial]) -> Result<WeightSystem> {
    let degenerate = |why: &str| Error::DegenerateSystem(format!("{why}; monomials {monomials:?}"));
    if monomials.len() < 3 || monomials.iter().any(|m| m.len() != 3) {
        return Err(degenerate("need at least three monomials in three variables"));
    }
    let diffs: Vec<Vec<i64>> = monomials[1..]
        .iter()
        .map(|m| m.iter().zip(&monomials[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut ray = None;
    'outer: for i in 0..diffs.len() {
        for j in i + 1..diffs.len() {
            let c = cross(&diffs[i], &diffs[j])?;
            if c != [0, 0, 0] {
                ray = Some(c);
                break 'outer;
            }
        }
    }
    let mut w = ray.ok_or_else(|| degenerate("monomials do not span a plane"))?.to_vec();
    if diffs.iter().any(|d| d.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() != 0) {
        return Err(degenerate("no common weight ray"));
    }
    let g = gcd_all(&w);
    w.iter_mut().for_each(|x| *x /= g);
    if w.iter().all(|&x| x < 0) {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    if w.iter().any(|&x| x <= 0) {
        return Err(degenerate("weight ray is not positive"));
    }
    let d: i64 = w.iter().zip(&monomials[0]).map(|(a, b)| a * b).sum();
    let ws = WeightSystem::new(w, d)?;
    debug_assert!(monomials.iter().all(|m| ws.weighted_degree(m) == d));
    Ok(ws)
}

pub fn solve_weights(nf: &NormalForm) -> Result<WeightSystem> {
    solve_weights_for(&nf.monomials())
}

/// Closed form for `x^{p0} + y^{p1} + z^{p2}`.
pub fn class_i_weights(p0: i64, p1: i64, p2: i64) -> Result<WeightSystem> {
    if p0 < 2 || p1 < 2 || p2 < 2 {
        return Err(Error::InvalidInput("class I exponents must be >= 2".into()));
    }
    let m = |a: i64, b: i64| a.checked_mul(b).ok_or(Error::Overflow("class I weights"));
    let (a, b, c) = (m(p1, p2)?, m(p0, p2)?, m(p0, p1)?);
    let g = gcd_all(&[a, b, c]);
    WeightSystem::new(vec![a / g, b / g, c / g], m(c, p2)? / g)
}

/// `∏ (d - w_i) / w_i`.
pub fn milnor_number(ws: &WeightSystem) -> Result<i64> {
    let mut mu = Rational::one();
    for &w in &ws.weights {
        if ws.degree <= w {
            return Err(Error::NonIsolated(format!(
                "weight {w} >= degree {} in {ws}",
                ws.degree
            )));
        }
        mu = mu * Rational::new(ws.degree - w, w);
    }
    mu.to_i64()
        .ok_or_else(|| Error::NonIsolated(format!("non-integral Milnor number {mu} for {ws}")))
}

/// Per-variable genericity data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableFlags {
    pub pure_power: bool,
    /// Variables `k` with a monomial `x_i^a x_k` in the support.
    pub eliminating: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSupport {
    pub weights: WeightSystem,
    pub monomials: Vec<Monomial>,
}

impl MonomialSupport {
    pub fn new(weights: WeightSystem, monomials: Vec<Monomial>) -> Result<Self> {
        let n = weights.n_vars();
        for m in &monomials {
            if m.len() != n || m.iter().any(|&a| a < 0) {
                return Err(Error::InvalidInput(format!("bad exponent vector {m:?}")));
            }
            if weights.weighted_degree(m) != weights.degree {
                return Err(Error::InvalidInput(format!(
                    "monomial {m:?} has degree {} != {}",
                    weights.weighted_degree(m),
                    weights.degree
                )));
            }
        }
        if monomials.is_empty() {
            return Err(Error::EmptySupport {
                weights: weights.weights.clone(),
                degree: weights.degree,
            });
        }
        Ok(MonomialSupport { weights, monomials })
    }

    pub fn n_vars(&self) -> usize {
        self.weights.n_vars()
    }

    /// Some monomial uses only variables whose bit is set in `mask`.
    pub fn has_monomial_in(&self, mask: u32) -> bool {
        self.monomials
            .iter()
            .any(|m| m.iter().enumerate().all(|(i, &a)| a == 0 || mask >> i & 1 == 1))
    }

    pub fn flags(&self, i: usize) -> VariableFlags {
        let n = self.n_vars();
        let pure_power = self.has_monomial_in(1 << i);
        let eliminating = (0..n)
            .filter(|&k| {
                k != i
                    && self.monomials.iter().any(|m| {
                        m[i] > 0 && m[k] == 1 && (0..n).all(|j| j == i || j == k || m[j] == 0)
                    })
            })
            .collect();
        VariableFlags { pure_power, eliminating }
    }

    /// The `t = 0` slice: monomials not involving the last variable, as
    /// vectors in one fewer variable.
    pub fn restrict_drop_last(&self) -> Result<MonomialSupport> {
        let n = self.n_vars();
        let ws = WeightSystem::new(self.weights.weights[..n - 1].to_vec(), self.weights.degree)?;
        let ms = self
            .monomials
            .iter()
            .filter(|m| m[n - 1] == 0)
            .map(|m| m[..n - 1].to_vec())
            .collect();
        MonomialSupport::new(ws, ms)
    }
}

fn knapsack(w: &[i64], rem: i64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    let i = cur.len();
    if i + 1 == w.len() {
        if rem % w[i] == 0 {
            cur.push(rem / w[i]);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for a in 0..=rem / w[i] {
        cur.push(a);
        knapsack(w, rem - a * w[i], cur, out);
        cur.pop();
    }
}

/// Every exponent vector of weighted degree exactly `d`, ordered with pure
/// powers first, then lexicographically.
pub fn generic_support(ws: &WeightSystem) -> Result<MonomialSupport> {
    let mut out = Vec::new();
    knapsack(&ws.weights, ws.degree, &mut Vec::with_capacity(ws.n_vars()), &mut out);
    out.sort_by_key(|m| (m.iter().filter(|&&a| a > 0).count(), std::cmp::Reverse(m.clone())));
    MonomialSupport::new(ws.clone(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[i64], d: i64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    #[test]
    fn solve_examples() {
        let nf = NormalForm::new(NfClass::I, [2, 3, 7], None).unwrap();
        assert_eq!(solve_weights(&nf).unwrap(), ws(&[21, 14, 6], 42));
        let nf = NormalForm::new(NfClass::II, [2, 3, 5], None).unwrap();
        assert_eq!(solve_weights(&nf).unwrap(), ws(&[15, 10, 4], 30));
        let q10 = vec![vec![2, 0, 1], vec![0, 3, 0], vec![0, 0, 4]];
        assert_eq!(solve_weights_for(&q10).unwrap(), ws(&[9, 8, 6], 24));
    }

    #[test]
    fn class_i_examples() {
        assert_eq!(class_i_weights(2, 3, 11).unwrap(), ws(&[33, 22, 6], 66));
        assert_eq!(class_i_weights(3, 4, 4).unwrap(), ws(&[4, 3, 3], 12));
        assert_eq!(class_i_weights(2, 2, 2).unwrap(), ws(&[1, 1, 1], 2));
    }

    #[test]
    fn side_conditions_rejected() {
        assert!(NormalForm::new(NfClass::VI, [2, 3, 4], Some((1, 1))).is_err());
        assert!(NormalForm::new(NfClass::I, [1, 3, 4], None).is_err());
        assert!(NormalForm::new(NfClass::VI, [2, 3, 4], None).is_err());
        assert!(NormalForm::new(NfClass::I, [2, 3, 4], Some((1, 1))).is_err());
    }

    #[test]
    fn class_vi_accepts_consistent_data() {
        // (p0-1)(p0 a + p2 b) = p0 p1 p2: p = (2,2,2), a = b = 2 gives 1*8 = 8.
        let nf = NormalForm::new(NfClass::VI, [2, 2, 2], Some((2, 2))).unwrap();
        let w = solve_weights(&nf).unwrap();
        assert!(nf.monomials().iter().all(|m| w.weighted_degree(m) == w.degree));
    }

    #[test]
    fn degenerate_systems() {
        let same = vec![vec![2, 0, 0], vec![2, 0, 0], vec![2, 0, 0]];
        assert!(matches!(solve_weights_for(&same), Err(Error::DegenerateSystem(_))));
        let neg = vec![vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, 0]];
        assert!(solve_weights_for(&neg).is_err());
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&ws(&[21, 14, 6], 42)).unwrap(), 12);
        assert_eq!(milnor_number(&ws(&[6, 3, 2], 12)).unwrap(), 15);
        assert_eq!(milnor_number(&ws(&[1, 1, 1], 2)).unwrap(), 1);
        assert!(matches!(milnor_number(&ws(&[3, 1, 1], 3)), Err(Error::NonIsolated(_))));
    }

    #[test]
    fn support_examples() {
        let s = generic_support(&ws(&[21, 14, 6, 1], 42)).unwrap();
        for m in [[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 7, 0], [0, 0, 0, 42]] {
            assert!(s.monomials.contains(&m.to_vec()));
        }
        assert!((0..4).all(|i| s.flags(i).pure_power));
        assert!(s.monomials[..4].iter().all(|m| m.iter().filter(|&&a| a > 0).count() == 1));

        let s = generic_support(&ws(&[12, 8, 3, 13], 24)).unwrap();
        let f = s.flags(3);
        assert!(!f.pure_power && f.eliminating.is_empty());

        let s = generic_support(&ws(&[6, 5, 3, 2], 15)).unwrap();
        assert!(!s.has_monomial_in(0b1001));

        assert!(matches!(generic_support(&ws(&[2, 4], 3)), Err(Error::EmptySupport { .. })));
    }
}
