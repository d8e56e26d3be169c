//! Characteristic polynomial of the monodromy and the unipotent base-change
//! exponent.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{cyclotomic_exponents, euler_phi, lcm, FactorList};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub factors: FactorList,
    /// Net exponent of `Φ_e`, zeros dropped.
    pub cyclotomic: BTreeMap<i64, i64>,
}

impl CharPoly {
    pub fn degree(&self) -> i64 {
        self.cyclotomic.iter().map(|(&e, &c)| c * euler_phi(e)).sum()
    }
}

/// `(1-t^d)^{2g-2+r} ∏_{w_j|d}(1-t^{d/w_j}) / ((1-t) ∏_{α_i|d}(1-t^{d/α_i}))`.
pub fn char_poly(d: i64, genus: i64, weights: &[i64], alphas: &[i64]) -> Result<CharPoly> {
    if d < 1 {
        return Err(Error::InvalidInput(format!("degree {d} must be positive")));
    }
    let mut factors = FactorList::new();
    factors.push(d, 2 * genus - 2 + alphas.len() as i64);
    for &w in weights.iter().filter(|&&w| d % w == 0) {
        factors.push(d / w, 1);
    }
    factors.push(1, -1);
    for &a in alphas.iter().filter(|&&a| d % a == 0) {
        factors.push(d / a, -1);
    }
    let cyclotomic = cyclotomic_exponents(&factors);
    if let Some((&index, &exponent)) = cyclotomic.iter().find(|(_, &c)| c < 0) {
        return Err(Error::NotAPolynomial { index, exponent });
    }
    Ok(CharPoly { factors, cyclotomic })
}

/// Least `m` with `ξ^m = 1` for every eigenvalue.
pub fn unipotent_exponent(cp: &CharPoly) -> Result<i64> {
    cp.cyclotomic
        .iter()
        .filter(|(_, &c)| c > 0)
        .try_fold(1, |acc, (&e, _)| lcm(acc, e))
}
