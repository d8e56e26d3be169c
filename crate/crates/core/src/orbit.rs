//! Orbit invariants of the good C*-action: the branch points on the quotient
//! curve, the exponent `R`, genus, `Ĉ²`, and the Dolgachev relations.

use serde::{Deserialize, Serialize};

use crate::cyclicq::CyclicQuotient;
use crate::error::{Error, Result};
use crate::exactmath::{gcd, mod_inverse, Rational};
use crate::quasihom::{milnor_number, MonomialSupport, WeightSystem};
use crate::wps::{singular_locus, HypersurfaceFamily};

/// `d - (w0 + w1 + w2)`.
pub fn exponent_r(ws: &WeightSystem) -> i64 {
    ws.degree - ws.weight_sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BPoint {
    /// Coordinates nonzero on the stratum of `P(w0,w1,w2)` carrying the point.
    pub stratum: Vec<usize>,
    /// `1/α(1, β)` in the orientation fixed by `R β ≡ 1 (mod α)`.
    pub quotient: CyclicQuotient,
}

impl BPoint {
    pub fn alpha(&self) -> i64 {
        self.quotient.r
    }

    pub fn beta(&self) -> i64 {
        self.quotient.acts[1]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BSet {
    pub points: Vec<BPoint>,
    /// Edges where the floor count and the exact root count disagree.
    pub count_flags: Vec<(usize, usize)>,
}

impl BSet {
    pub fn quotients(&self) -> Vec<CyclicQuotient> {
        self.points.iter().map(|p| p.quotient.clone()).collect()
    }

    pub fn alphas(&self) -> Vec<i64> {
        self.points.iter().map(BPoint::alpha).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Σ β_i / α_i`.
    pub fn beta_sum(&self) -> Rational {
        self.points.iter().map(|p| Rational::new(p.beta(), p.alpha())).sum()
    }
}

/// Branch points of the quotient curve with `β = R^{-1} mod α`.
pub fn compute_b(support: &MonomialSupport) -> Result<BSet> {
    let ws = &support.weights;
    if ws.n_vars() != 3 {
        return Err(Error::InvalidInput("compute_b needs a three-variable support".into()));
    }
    let r = exponent_r(ws);
    let report = singular_locus(&HypersurfaceFamily::new(support.clone()))?;
    if !report.failed_vertices.is_empty() {
        return Err(Error::NonIsolated(format!(
            "quotient curve is singular at vertices {:?}",
            report.failed_vertices.iter().map(|v| v.vertex).collect::<Vec<_>>()
        )));
    }
    let mut points = Vec::new();
    for p in report.points() {
        let alpha = p.order;
        if gcd(r, alpha) != 1 {
            return Err(Error::ExponentNotInvertible { exponent: r, alpha });
        }
        let beta = mod_inverse(r, alpha)?;
        points.push(BPoint { stratum: p.stratum, quotient: CyclicQuotient::surface(alpha, beta)? });
    }
    Ok(BSet { points, count_flags: report.count_flags() })
}

/// `Ĉ² = -(d/(w0 w1 w2) + Σ β/α)`.
pub fn chat_squared(ws: &WeightSystem, b: &BSet) -> Result<Rational> {
    Ok(-(ws.degree_over_product()? + b.beta_sum()))
}

/// Degree of the characteristic polynomial as a function of the genus.
pub fn theta_degree(ws: &WeightSystem, alphas: &[i64], genus: i64) -> i64 {
    let d = ws.degree;
    let r = alphas.len() as i64;
    let weights_part: i64 = ws.weights.iter().filter(|&&w| d % w == 0).map(|w| d / w).sum();
    let alpha_part: i64 = alphas.iter().filter(|&&a| d % a == 0).map(|a| d / a).sum();
    d * (2 * genus - 2 + r) + weights_part - 1 - alpha_part
}

/// The genus making the characteristic polynomial degree equal `μ`.
pub fn genus(ws: &WeightSystem, b: &BSet) -> Result<i64> {
    let mu = milnor_number(ws)?;
    let alphas = b.alphas();
    let at_zero = theta_degree(ws, &alphas, 0);
    let diff = mu - at_zero;
    let step = 2 * ws.degree;
    if diff < 0 || diff % step != 0 {
        return Err(Error::NoConsistentGenus(format!(
            "mu = {mu}, degree at g = 0 is {at_zero}, step {step}"
        )));
    }
    Ok(diff / step)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub genus: i64,
    pub branch_count: usize,
    pub pairs: Vec<CyclicQuotient>,
    pub b: i64,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DolgachevCheck {
    pub holds: bool,
    /// `b` solved from the degree relation (may be fractional when it fails).
    pub b: Rational,
    pub congruences_hold: bool,
}

/// Solves `R(-b + Σ β/α) = -(2g - 2) - r + Σ 1/α` for `b` and checks that it
/// is an integer and that `R β ≡ 1 (mod α)` for every pair.
pub fn solve_dolgachev(
    exponent: i64,
    genus: i64,
    pairs: &[CyclicQuotient],
) -> Result<DolgachevCheck> {
    if exponent == 0 {
        return Err(Error::InconsistentInvariants("exponent R = 0".into()));
    }
    let beta_sum: Rational = pairs.iter().map(|q| Rational::new(q.acts[1], q.r)).sum();
    let inv_sum: Rational = pairs.iter().map(|q| Rational::new(1, q.r)).sum();
    let rhs = Rational::from_int(-(2 * genus - 2) - pairs.len() as i64) + inv_sum;
    let b = beta_sum - rhs / Rational::from_int(exponent);
    let congruences_hold = pairs
        .iter()
        .all(|q| q.acts[0] == 1 && (exponent * q.acts[1] - 1).rem_euclid(q.r) == 0);
    Ok(DolgachevCheck { holds: b.is_integer() && congruences_hold, b, congruences_hold })
}

pub fn check_dolgachev(inv: &OrbitInvariants) -> Result<DolgachevCheck> {
    let check = solve_dolgachev(inv.exponent, inv.genus, &inv.pairs)?;
    let matches_b = check.b == Rational::from_int(inv.b);
    Ok(DolgachevCheck { holds: check.holds && matches_b, ..check })
}

/// Full invariants from a three-variable support.
pub fn orbit_invariants(support: &MonomialSupport) -> Result<OrbitInvariants> {
    let ws = &support.weights;
    let bset = compute_b(support)?;
    let g = genus(ws, &bset)?;
    let exponent = exponent_r(ws);
    let pairs = bset.quotients();
    let check = solve_dolgachev(exponent, g, &pairs)?;
    let b = check.b.to_i64().filter(|_| check.holds).ok_or_else(|| {
        Error::InconsistentInvariants(format!("b = {} for {ws}", check.b))
    })?;
    Ok(OrbitInvariants { genus: g, branch_count: pairs.len(), pairs, b, exponent })
}
