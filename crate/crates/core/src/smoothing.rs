//! Smoothings `f + t·(...)` of a quasihomogeneous germ seen through the
//! weighted blow-up with weights `(w0, w1, w2, w3)`: the exceptional surface
//! `S_T`, the threefold quotient types along `C = S_1 ∩ S_T`, matching against
//! dual sets, the smoothing search, Ishii-style minimality checks, and the
//! intersection numbers of `C`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::cyclicq::{
    is_du_val, min_age, multiset_difference, reid_tai_class, resolution_chain, CyclicQuotient,
    DualSet, ReidTai,
};
use crate::error::{Error, Result};
use crate::exactmath::{chain_inverse_corner, chain_inverse_last_corner, gcd_all, Rational};
use crate::orbit::{chat_squared, compute_b, BSet};
use crate::par::Exec;
use crate::quasihom::{generic_support, MonomialSupport, WeightSystem};
use crate::wps::{ambient_vertex_type, singular_locus, HypersurfaceFamily, SingularLocusReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingModel {
    /// Generic three-variable support of the germ.
    pub base: MonomialSupport,
    pub w3: i64,
    /// Generic four-variable support of degree `d`.
    pub support: MonomialSupport,
}

impl SmoothingModel {
    pub fn new(base: &WeightSystem, w3: i64) -> Result<Self> {
        if base.n_vars() != 3 {
            return Err(Error::InvalidInput("base weight system needs three variables".into()));
        }
        let support = generic_support(&base.extend(w3)?)?;
        Ok(SmoothingModel { base: generic_support(base)?, w3, support })
    }

    /// Uses an explicit base support (e.g. a normal form) with the generic
    /// four-variable extension.
    pub fn with_base_support(base: MonomialSupport, w3: i64) -> Result<Self> {
        let support = generic_support(&base.weights.extend(w3)?)?;
        Ok(SmoothingModel { base, w3, support })
    }

    pub fn base_weights(&self) -> &WeightSystem {
        &self.base.weights
    }

    /// `(w0, w1, w2, w3)`.
    pub fn weights(&self) -> &[i64] {
        &self.support.weights.weights
    }

    pub fn degree(&self) -> i64 {
        self.support.weights.degree
    }
}

/// `S_T ⊂ P(w0, w1, w2, w3)`.
pub fn exceptional_surface(sm: &SmoothingModel) -> HypersurfaceFamily {
    HypersurfaceFamily::new(sm.support.clone())
}

fn stratum_on_curve(stratum: &[usize]) -> bool {
    stratum.iter().all(|&i| i <= 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnCurvePoint {
    pub stratum: Vec<usize>,
    /// Type on `S_1`, from the branch data.
    pub s1_type: CyclicQuotient,
    pub threefold: CyclicQuotient,
    pub odnc: bool,
    pub reid_tai: Option<ReidTai>,
}

/// Threefold quotient types at the points of `B`.
///
/// Edge point `P_iP_j` with `S_1`-type `1/h(1,β)` and remaining weight `w_k`:
/// `1/h(w_k, w_3, β w_k)`, ODNC iff `w_k + w_3 ≡ 0 (mod h)`. Vertex `P_i` with
/// remaining base index `j`: `1/w_i(-w_j, -w_3, 1)`, ODNC iff
/// `w_j + w_3 ≡ 0 (mod w_i)`.
pub fn on_curve_threefold_types(sm: &SmoothingModel, b: &BSet) -> Result<Vec<OnCurvePoint>> {
    let w = sm.weights();
    let w3 = sm.w3;
    let mut out = Vec::with_capacity(b.len());
    for p in &b.points {
        let h = p.alpha();
        let (acts, odnc) = match p.stratum[..] {
            [i, j] => {
                let k = 3 - i - j;
                (vec![w[k], w3, p.beta() * w[k]], (w[k] + w3) % h == 0)
            }
            [i] => {
                let rest: Vec<usize> = (0..3).filter(|&j| j != i).collect();
                let flags = sm.base.flags(i);
                let k = *flags.eliminating.first().ok_or_else(|| {
                    Error::UnmatchedStratum(format!("vertex P{i} has no eliminating monomial"))
                })?;
                let j = *rest.iter().find(|&&j| j != k).expect("two remaining indices");
                (vec![-w[j], -w3, 1], (w[j] + w3) % w[i] == 0)
            }
            _ => {
                return Err(Error::UnmatchedStratum(format!("bad stratum {:?}", p.stratum)));
            }
        };
        let threefold = CyclicQuotient::new(h, &acts)?.normalize_threefold();
        let reid_tai = reid_tai_class(&threefold).ok();
        out.push(OnCurvePoint { stratum: p.stratum.clone(), s1_type: p.quotient.clone(), threefold, odnc, reid_tai });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexThreefold {
    pub vertex: usize,
    pub eliminated: usize,
    pub threefold: CyclicQuotient,
    pub ambient: CyclicQuotient,
    pub reid_tai: Option<ReidTai>,
}

/// Threefold type at a vertex `P_i` of `S_T`: `1/w_i(-w_j, -w_l, 1)` with
/// `{j, l}` the complement of `{i, k}` for an eliminating `x_i^a x_k`.
/// `Ok(None)` when `S_T` misses the vertex or `w_i = 1`.
pub fn vertex_threefold_type(sm: &SmoothingModel, i: usize) -> Result<Option<VertexThreefold>> {
    let w = sm.weights();
    if w[i] < 2 {
        return Ok(None);
    }
    let flags = sm.support.flags(i);
    if flags.pure_power {
        return Ok(None);
    }
    let ambient = ambient_vertex_type(w, i).expect("order >= 2");
    let Some(&k) = flags.eliminating.first() else {
        return Err(Error::NotQuasismoothAtVertex { vertex: i, ambient });
    };
    let rest: Vec<usize> = (0..4).filter(|&j| j != i && j != k).collect();
    let threefold =
        CyclicQuotient::new(w[i], &[-w[rest[0]], -w[rest[1]], 1])?.normalize_threefold();
    let reid_tai = reid_tai_class(&threefold).ok();
    Ok(Some(VertexThreefold { vertex: i, eliminated: k, threefold, ambient, reid_tai }))
}

/// `S_T` singularities contain `bhat` up to isomorphism and every excess
/// singularity is Du Val.
pub fn matches_dual_set(report: &SingularLocusReport, bhat: &[CyclicQuotient]) -> bool {
    if !report.quasismooth || !report.well_formed {
        return false;
    }
    multiset_difference(&report.types(), bhat).is_some_and(|rest| rest.iter().all(is_du_val))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCorrection {
    pub quotient: CyclicQuotient,
    pub chain: Vec<i64>,
    pub first_corner: Rational,
    pub last_corner: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionNumbers {
    pub n_p: usize,
    /// `C̃²` on the partial resolution of `S_1`.
    pub c_tilde_sq: Rational,
    /// `C²` on `S_T` when both chain orientations agree.
    pub c_sq: Option<Rational>,
    pub c_sq_first_end: Rational,
    pub c_sq_last_end: Rational,
    /// `(S_1|_{S_T})² = d / (w0 w1 w2)`.
    pub expected: Rational,
    pub check: bool,
    pub chat_sq: Rational,
    /// `C̃² + Ĉ² = -n_p`.
    pub triple_point: bool,
    pub corrections: Vec<ChainCorrection>,
}

impl IntersectionNumbers {
    pub fn c_sq_strict(&self) -> Result<Rational> {
        self.c_sq.clone().ok_or_else(|| Error::ChainOrientationAmbiguous {
            first: self.c_sq_first_end.to_string(),
            last: self.c_sq_last_end.to_string(),
        })
    }
}

/// `C̃² = d/(w0w1w2) + Σ β/α - n_p`, then `C² = C̃² - Σ (D^{-1})_{corner}` over
/// the `S_T` singularities on `C`.
pub fn intersection_numbers(
    sm: &SmoothingModel,
    b: &BSet,
    st: &SingularLocusReport,
) -> Result<IntersectionNumbers> {
    let base = sm.base_weights();
    let expected = base.degree_over_product()?;
    let n_p = b.len();
    let c_tilde_sq = expected.clone() + b.beta_sum() - Rational::from_int(n_p as i64);
    let mut corrections = Vec::new();
    for p in st.points().into_iter().filter(|p| stratum_on_curve(&p.stratum)) {
        let q = p.surface_type.ok_or_else(|| {
            Error::UnmatchedStratum(format!("no surface type on stratum {:?}", p.stratum))
        })?;
        let chain = resolution_chain(&q)?;
        corrections.push(ChainCorrection {
            first_corner: chain_inverse_corner(&chain)?,
            last_corner: chain_inverse_last_corner(&chain)?,
            quotient: q,
            chain,
        });
    }
    let first: Rational = corrections.iter().map(|c| c.first_corner.clone()).sum();
    let last: Rational = corrections.iter().map(|c| c.last_corner.clone()).sum();
    let c_sq_first_end = c_tilde_sq.clone() - first;
    let c_sq_last_end = c_tilde_sq.clone() - last;
    let c_sq = (c_sq_first_end == c_sq_last_end).then(|| c_sq_first_end.clone());
    let check = c_sq.as_ref() == Some(&expected);
    let chat_sq = chat_squared(base, b)?;
    let triple_point = c_tilde_sq.clone() + chat_sq.clone() == Rational::from_int(-(n_p as i64));
    Ok(IntersectionNumbers {
        n_p,
        c_tilde_sq,
        c_sq,
        c_sq_first_end,
        c_sq_last_end,
        expected,
        check,
        chat_sq,
        triple_point,
        corrections,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralFiberReport {
    pub weights: Vec<i64>,
    pub degree: i64,
    pub s1: Vec<CyclicQuotient>,
    pub st: SingularLocusReport,
    pub on_curve: Vec<OnCurvePoint>,
    pub vertex_threefolds: Vec<VertexThreefold>,
    /// Singular edges `P_iP_3` off the curve; threefold type undetermined.
    pub undetermined_edges: Vec<(usize, usize)>,
    pub matched_dual_sets: Vec<usize>,
    pub k3: bool,
    pub intersection: Option<IntersectionNumbers>,
}

/// Full analysis of one model against the given dual sets.
pub fn central_fiber(
    sm: &SmoothingModel,
    b: &BSet,
    dual_sets: &[DualSet],
) -> Result<CentralFiberReport> {
    let st = singular_locus(&exceptional_surface(sm))?;
    let on_curve = on_curve_threefold_types(sm, b)?;
    let mut vertex_threefolds = Vec::new();
    for i in 0..4 {
        if let Ok(Some(v)) = vertex_threefold_type(sm, i) {
            vertex_threefolds.push(v);
        }
    }
    let undetermined_edges = st
        .edge_points
        .iter()
        .filter(|e| e.edge.1 == 3)
        .map(|e| e.edge)
        .collect();
    let matched: Vec<&DualSet> =
        dual_sets.iter().filter(|ds| matches_dual_set(&st, &ds.members)).collect();
    let bhat = matched.first().map(|ds| ds.members.as_slice()).unwrap_or(&[]);
    let k3 = st.quasismooth
        && st.well_formed
        && sm.weights().iter().sum::<i64>() == sm.degree()
        && multiset_difference(&st.types(), bhat)
            .unwrap_or_else(|| st.types())
            .iter()
            .all(is_du_val);
    let intersection = if st.quasismooth { intersection_numbers(sm, b, &st).ok() } else { None };
    Ok(CentralFiberReport {
        weights: sm.weights().to_vec(),
        degree: sm.degree(),
        s1: b.quotients(),
        on_curve,
        vertex_threefolds,
        undetermined_edges,
        matched_dual_sets: matched.iter().map(|ds| ds.id).collect(),
        k3,
        intersection,
        st,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rejection {
    NotWellFormed { contained_edges: Vec<(usize, usize)> },
    NotQuasismooth { witness: Vec<usize> },
    VertexConflict { message: String },
    NoDualSetMatch { types: Vec<CyclicQuotient> },
    /// `Σ w > d`: the weight vector lies outside the essential cone.
    OutsideEssentialCone { discrepancy: i64 },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::NotWellFormed { contained_edges } if !contained_edges.is_empty() => {
                let e: Vec<String> =
                    contained_edges.iter().map(|(i, j)| format!("({i},{j})")).collect();
                write!(f, "edge {} contained / not well-formed", e.join(", "))
            }
            Rejection::NotWellFormed { .. } => write!(f, "not well-formed"),
            Rejection::NotQuasismooth { witness } => {
                write!(f, "not quasismooth (witness {witness:?})")
            }
            Rejection::VertexConflict { message } => write!(f, "{message}"),
            Rejection::NoDualSetMatch { types } => {
                let t: Vec<String> = types.iter().map(|q| q.to_string()).collect();
                write!(f, "no dual set matches S_T singularities [{}]", t.join(", "))
            }
            Rejection::OutsideEssentialCone { discrepancy } => {
                write!(f, "outside essential cone (a(w) = {discrepancy})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingHit {
    pub w3: i64,
    pub dual_set: usize,
    pub report: CentralFiberReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejected {
    pub w3: i64,
    pub reason: Rejection,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub hits: Vec<SmoothingHit>,
    pub rejected: Vec<Rejected>,
}

enum Candidate {
    Hits(Vec<SmoothingHit>),
    Rejected(Rejection),
}

fn evaluate(base: &MonomialSupport, b: &BSet, dual_sets: &[DualSet], w3: i64) -> Result<Candidate> {
    let sm = SmoothingModel::with_base_support(base.clone(), w3)?;
    let st_family = exceptional_surface(&sm);
    let st = match singular_locus(&st_family) {
        Ok(st) => st,
        Err(e @ Error::VertexTypeConflict { .. }) => {
            return Ok(Candidate::Rejected(Rejection::VertexConflict { message: e.to_string() }))
        }
        Err(e) => return Err(e),
    };
    if !st.well_formed {
        return Ok(Candidate::Rejected(Rejection::NotWellFormed {
            contained_edges: st.contained_edges.clone(),
        }));
    }
    if !st.quasismooth {
        return Ok(Candidate::Rejected(Rejection::NotQuasismooth {
            witness: st.quasismooth_witness.clone().unwrap_or_default(),
        }));
    }
    if !dual_sets.iter().any(|ds| matches_dual_set(&st, &ds.members)) {
        return Ok(Candidate::Rejected(Rejection::NoDualSetMatch { types: st.types() }));
    }
    let a = discrepancy(sm.weights(), &sm.support);
    if a > -1 {
        return Ok(Candidate::Rejected(Rejection::OutsideEssentialCone { discrepancy: a }));
    }
    let report = central_fiber(&sm, b, dual_sets)?;
    Ok(Candidate::Hits(
        report
            .matched_dual_sets
            .iter()
            .map(|&id| SmoothingHit { w3, dual_set: id, report: report.clone() })
            .collect(),
    ))
}

/// Scans `w3` over `range` for smoothings whose exceptional surface realizes
/// one of `dual_sets`. Results are sorted by `(w3, dual set id)`.
pub fn search_smoothings(
    base: &MonomialSupport,
    dual_sets: &[DualSet],
    range: RangeInclusive<i64>,
    exec: Exec,
) -> Result<SearchOutcome> {
    if *range.start() < 1 {
        return Err(Error::InvalidInput("w3 range must start at 1 or above".into()));
    }
    let b = compute_b(base)?;
    let candidates: Vec<i64> = range.collect();
    let results = exec.map(&candidates, |&w3| evaluate(base, &b, dual_sets, w3));
    let mut out = SearchOutcome::default();
    for (w3, res) in candidates.into_iter().zip(results) {
        match res? {
            Candidate::Hits(h) => out.hits.extend(h),
            Candidate::Rejected(reason) => out.rejected.push(Rejected { w3, reason }),
        }
    }
    out.hits.sort_by_key(|h| (h.w3, h.dual_set));
    Ok(out)
}

fn min_pairing(s: &[i64], support: &MonomialSupport) -> i64 {
    support
        .monomials
        .iter()
        .map(|m| m.iter().zip(s).map(|(a, b)| a * b).sum::<i64>())
        .min()
        .expect("nonempty support")
}

/// `a(s) = Σ s_i - min_{a ∈ supp} <s, a> - 1`.
pub fn discrepancy(s: &[i64], support: &MonomialSupport) -> i64 {
    s.iter().sum::<i64>() - min_pairing(s, support) - 1
}

pub fn in_essential_cone(s: &[i64], support: &MonomialSupport) -> bool {
    s.iter().all(|&x| x >= 0) && discrepancy(s, support) <= -1
}

// s(g) - s(1) + 1
fn shifted(s: &[i64], support: &MonomialSupport) -> i64 {
    min_pairing(s, support) - s.iter().sum::<i64>() + 1
}

fn coordinatewise_leq(w: &[i64], dw: i64, s: &[i64], ds: i64) -> bool {
    w.iter()
        .zip(s)
        .all(|(&wi, &si)| Rational::new(wi, dw) <= Rational::new(si, ds))
}

/// `w_i / (w(g) - w(1) + 1) <= s_i / (s(g) - s(1) + 1)` for every `i`.
pub fn g_order_leq(w: &[i64], s: &[i64], support: &MonomialSupport) -> Result<bool> {
    let (dw, ds) = (shifted(w, support), shifted(s, support));
    if dw == 0 {
        return Err(Error::ZeroDenominator(w.to_vec()));
    }
    if ds == 0 {
        return Err(Error::ZeroDenominator(s.to_vec()));
    }
    Ok(coordinatewise_leq(w, dw, s, ds))
}

/// `w_i / w(g) <= s_i / s(g)` for every `i`.
pub fn g_order_preceq(w: &[i64], s: &[i64], support: &MonomialSupport) -> Result<bool> {
    let (dw, ds) = (min_pairing(w, support), min_pairing(s, support));
    if dw == 0 {
        return Err(Error::ZeroDenominator(w.to_vec()));
    }
    if ds == 0 {
        return Err(Error::ZeroDenominator(s.to_vec()));
    }
    Ok(coordinatewise_leq(w, dw, s, ds))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsValue {
    /// Per coordinate with `w_i > 0`: `s_i/w_i (w(g)-w(1)+1) - (s(g)-s(1)+1)`.
    pub values: Vec<Option<Rational>>,
    /// All defined coordinates agree.
    pub consistent: bool,
}

impl MsValue {
    /// Value at the smallest coordinate where it is defined.
    pub fn first(&self) -> Option<&Rational> {
        self.values.iter().flatten().next()
    }
}

pub fn m_s(s: &[i64], w: &[i64], support: &MonomialSupport) -> MsValue {
    let dw = Rational::from_int(shifted(w, support));
    let ds = Rational::from_int(shifted(s, support));
    let values: Vec<Option<Rational>> = s
        .iter()
        .zip(w)
        .map(|(&si, &wi)| (wi != 0).then(|| Rational::new(si, wi) * dw.clone() - ds.clone()))
        .collect();
    let defined: Vec<&Rational> = values.iter().flatten().collect();
    let consistent = defined.windows(2).all(|p| p[0] == p[1]);
    MsValue { values, consistent }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestedVector {
    pub s: Vec<i64>,
    pub discrepancy: i64,
    pub leq: Option<bool>,
    pub preceq: Option<bool>,
    pub m_s: MsValue,
}

impl TestedVector {
    pub fn passes(&self) -> bool {
        self.leq == Some(true) || self.preceq == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IshiiVerdict {
    CanonicalModification { bound: i64 },
    NotMinimal { witness: Vec<i64> },
    NotInEssentialCone,
    Inconclusive { bound: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldCheck {
    pub location: String,
    pub quotient: CyclicQuotient,
    pub class: Option<ReidTai>,
    pub min_age: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IshiiReport {
    pub weights: Vec<i64>,
    pub discrepancy: i64,
    pub in_essential_cone: bool,
    pub bound: i64,
    pub tested_count: u64,
    /// First tested vectors in enumeration order (capped).
    pub tested: Vec<TestedVector>,
    pub truncated: bool,
    pub verdict: IshiiVerdict,
    pub threefold_checks: Vec<ThreefoldCheck>,
}

const TESTED_CAP: usize = 1000;

fn test_vector(w: &[i64], s: &[i64], support: &MonomialSupport) -> TestedVector {
    TestedVector {
        s: s.to_vec(),
        discrepancy: discrepancy(s, support),
        leq: g_order_leq(w, s, support).ok(),
        preceq: g_order_preceq(w, s, support).ok(),
        m_s: m_s(s, w, support),
    }
}

struct Slice {
    count: u64,
    tested: Vec<TestedVector>,
    failure: Option<Vec<i64>>,
}

// Enumerates s with s[0] = s0 and 0 <= s_i <= bound inside C_1(g).
fn scan_slice(w: &[i64], support: &MonomialSupport, bound: i64, s0: i64) -> Slice {
    let n = w.len();
    let mut slice = Slice { count: 0, tested: Vec::new(), failure: None };
    let mut s = vec![0i64; n];
    s[0] = s0;
    loop {
        let total: i64 = s.iter().sum();
        let nonzero = total > 0;
        // a(s) <= -1  <=>  <s, m> >= Σ s for every monomial m
        let in_cone = nonzero
            && support
                .monomials
                .iter()
                .all(|m| m.iter().zip(&s).map(|(a, b)| a * b).sum::<i64>() >= total);
        if in_cone && s != w && gcd_all(&s) == 1 {
            slice.count += 1;
            let t = test_vector(w, &s, support);
            if !t.passes() && slice.failure.is_none() {
                slice.failure = Some(s.clone());
            }
            if slice.tested.len() < TESTED_CAP {
                slice.tested.push(t);
            }
        }
        // odometer over s[1..]
        let mut i = n - 1;
        loop {
            if i == 0 {
                return slice;
            }
            if s[i] < bound {
                s[i] += 1;
                break;
            }
            s[i] = 0;
            i -= 1;
        }
    }
}

/// Bounded check that `w` is `g`-minimal in `C_1(g)`: every primitive
/// `s ≠ w` in the cone with entries `≤ bound` must satisfy `w ≤_g s` or
/// `w ⪯_g s`.
pub fn check_canonical_modification(sm: &SmoothingModel, bound: i64, exec: Exec) -> Result<IshiiReport> {
    if bound < 0 {
        return Err(Error::InvalidInput(format!("bound {bound} must be nonnegative")));
    }
    let w = sm.weights().to_vec();
    let support = &sm.support;
    let a = discrepancy(&w, support);
    let in_cone = in_essential_cone(&w, support);

    let mut threefold_checks = Vec::new();
    if let Ok(b) = compute_b(&sm.base) {
        for p in on_curve_threefold_types(sm, &b).unwrap_or_default() {
            threefold_checks.push(ThreefoldCheck {
                location: format!("on C, stratum {:?}", p.stratum),
                min_age: min_age(&p.threefold).1,
                class: p.reid_tai,
                quotient: p.threefold,
            });
        }
    }
    for i in 0..4 {
        if let Ok(Some(v)) = vertex_threefold_type(sm, i) {
            threefold_checks.push(ThreefoldCheck {
                location: format!("vertex P{i}"),
                min_age: min_age(&v.threefold).1,
                class: v.reid_tai,
                quotient: v.threefold,
            });
        }
    }

    let mut report = IshiiReport {
        weights: w.clone(),
        discrepancy: a,
        in_essential_cone: in_cone,
        bound,
        tested_count: 0,
        tested: Vec::new(),
        truncated: false,
        verdict: IshiiVerdict::NotInEssentialCone,
        threefold_checks,
    };
    if !in_cone {
        return Ok(report);
    }
    let starts: Vec<i64> = (0..=bound).collect();
    let slices = exec.map(&starts, |&s0| scan_slice(&w, support, bound, s0));
    let mut failure = None;
    for slice in slices {
        report.tested_count += slice.count;
        let room = TESTED_CAP - report.tested.len();
        report.truncated |= slice.tested.len() > room || (room == 0 && slice.count > 0);
        report.tested.extend(slice.tested.into_iter().take(room));
        if failure.is_none() {
            failure = slice.failure;
        }
    }
    report.truncated |= report.tested_count as usize > report.tested.len();
    let max_w = *w.iter().max().expect("four weights");
    report.verdict = match failure {
        Some(witness) => IshiiVerdict::NotMinimal { witness },
        None if bound < max_w => IshiiVerdict::Inconclusive { bound },
        None => IshiiVerdict::CanonicalModification { bound },
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclicq::{dual_sets, same_multiset};

    fn ws(w: &[i64], d: i64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    fn s(r: i64, c: i64) -> CyclicQuotient {
        CyclicQuotient::surface(r, c).unwrap()
    }

    fn t(r: i64, a: &[i64]) -> CyclicQuotient {
        CyclicQuotient::new(r, a).unwrap()
    }

    #[test]
    fn exceptional_surface_examples() {
        let sm = SmoothingModel::new(&ws(&[33, 22, 6], 66), 5).unwrap();
        let st = exceptional_surface(&sm);
        assert_eq!(st.weights(), &[33, 22, 6, 5]);
        assert!(st.support.monomials.contains(&vec![0, 0, 1, 12]));
        let sm = SmoothingModel::new(&ws(&[6, 3, 2], 12), 1).unwrap();
        assert_eq!(exceptional_surface(&sm).weights(), &[6, 3, 2, 1]);
    }

    #[test]
    fn on_curve_examples() {
        let base = ws(&[4, 4, 3], 12);
        let sm = SmoothingModel::new(&base, 3).unwrap();
        let b = compute_b(&sm.base).unwrap();
        let pts = on_curve_threefold_types(&sm, &b).unwrap();
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert_eq!(p.threefold, t(4, &[1, 1, 1]));
            assert!(!p.odnc);
            assert_eq!(p.reid_tai, Some(ReidTai::NotCanonical));
        }

        let sm = SmoothingModel::new(&ws(&[21, 14, 6], 42), 1).unwrap();
        let b = compute_b(&sm.base).unwrap();
        let pts = on_curve_threefold_types(&sm, &b).unwrap();
        let p = pts.iter().find(|p| p.stratum == vec![1, 2]).unwrap();
        assert_eq!(p.threefold, t(2, &[1, 1, 1]));
        assert!(p.odnc);

        let sm = SmoothingModel::new(&ws(&[33, 22, 6], 66), 5).unwrap();
        let b = compute_b(&sm.base).unwrap();
        let pts = on_curve_threefold_types(&sm, &b).unwrap();
        let p = pts.iter().find(|p| p.stratum == vec![0, 1]).unwrap();
        assert_eq!(p.threefold, t(11, &[1, 10, 9]));
        assert!(p.odnc);
        assert_eq!(p.reid_tai, Some(ReidTai::Terminal));
    }

    #[test]
    fn vertex_examples() {
        let sm = SmoothingModel::new(&ws(&[12, 8, 3], 24), 13).unwrap();
        match vertex_threefold_type(&sm, 3) {
            Err(Error::NotQuasismoothAtVertex { vertex: 3, ambient }) => {
                assert_eq!(ambient, t(13, &[1, 5, 10]));
            }
            other => panic!("unexpected {other:?}"),
        }
        let sm = SmoothingModel::new(&ws(&[9, 8, 6], 24), 5).unwrap();
        let v = vertex_threefold_type(&sm, 3).unwrap().unwrap();
        assert!(v.threefold.is_isomorphic(&t(5, &[2, 4, 1])));
        assert_eq!(v.reid_tai, Some(ReidTai::Terminal));
        let sm = SmoothingModel::new(&ws(&[21, 14, 6], 42), 1).unwrap();
        assert_eq!(vertex_threefold_type(&sm, 3).unwrap(), None);
    }

    #[test]
    fn matching_examples() {
        let sm = SmoothingModel::new(&ws(&[21, 14, 6], 42), 1).unwrap();
        let st = singular_locus(&exceptional_surface(&sm)).unwrap();
        assert!(matches_dual_set(&st, &[s(2, 1), s(3, 2), s(7, 6)]));
        assert!(!matches_dual_set(&st, &[s(2, 1), s(3, 1), s(7, 6)]));
        assert!(matches_dual_set(&st, &[]));

        let sm = SmoothingModel::new(&ws(&[4, 4, 3], 12), 9).unwrap();
        let st = singular_locus(&exceptional_surface(&sm)).unwrap();
        assert!(!matches_dual_set(&st, &[s(4, 3), s(4, 3), s(4, 3)]));
    }

    #[test]
    fn search_e12() {
        let base = generic_support(&ws(&[21, 14, 6], 42)).unwrap();
        let b = compute_b(&base).unwrap();
        let sets = dual_sets(&b.quotients()).unwrap();
        let out = search_smoothings(&base, &sets, 1..=42, Exec::Sequential).unwrap();
        assert_eq!(out.hits.len(), 1);
        let hit = &out.hits[0];
        assert_eq!((hit.w3, hit.dual_set), (1, 4));
        assert!(hit.report.k3);
        let inter = hit.report.intersection.as_ref().unwrap();
        assert_eq!(inter.c_tilde_sq, Rational::from_int(-2));
        assert_eq!(inter.c_sq, Some(Rational::new(1, 42)));
        assert!(inter.check && inter.triple_point);
        assert_eq!(out.hits.len() + out.rejected.len(), 42);
    }

    #[test]
    fn search_is_order_stable() {
        let base = generic_support(&ws(&[4, 3, 3], 12)).unwrap();
        let b = compute_b(&base).unwrap();
        let sets = dual_sets(&b.quotients()).unwrap();
        let seq = search_smoothings(&base, &sets, 1..=12, Exec::Sequential).unwrap();
        let par = search_smoothings(&base, &sets, 1..=12, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        let w3: Vec<i64> = seq.hits.iter().map(|h| h.w3).collect();
        assert_eq!(w3, vec![1, 2]);
        let k3 = &seq.hits[1].report;
        assert!(k3.k3);
        assert!(same_multiset(
            &k3.st.types(),
            &[s(3, 2), s(3, 2), s(3, 2), s(3, 2), s(2, 1), s(2, 1), s(2, 1)]
        ));
    }

    #[test]
    fn q12_candidate_rejected_for_contained_edge() {
        let base = generic_support(&ws(&[6, 5, 3], 15)).unwrap();
        let b = compute_b(&base).unwrap();
        let sets = dual_sets(&b.quotients()).unwrap();
        let out = search_smoothings(&base, &sets, 2..=2, Exec::Sequential).unwrap();
        assert_eq!(
            out.rejected[0].reason,
            Rejection::NotWellFormed { contained_edges: vec![(0, 3)] }
        );
        assert_eq!(out.rejected[0].reason.to_string(), "edge (0,3) contained / not well-formed");
    }

    #[test]
    fn discrepancy_examples() {
        let sm = SmoothingModel::new(&ws(&[21, 14, 6], 42), 1).unwrap();
        let sup = &sm.support;
        assert_eq!(discrepancy(&[21, 14, 6, 1], sup), -1);
        assert_eq!(discrepancy(&[1, 1, 1, 1], sup), 1);
        assert_eq!(discrepancy(&[1, 0, 0, 0], sup), 0);
        assert!(in_essential_cone(&[21, 14, 6, 1], sup));
        assert!(!in_essential_cone(&[1, 1, 1, 1], sup));
        assert!(in_essential_cone(&[42, 28, 12, 2], sup));
    }

    #[test]
    fn order_examples() {
        let sm = SmoothingModel::new(&ws(&[21, 14, 6], 42), 1).unwrap();
        let sup = &sm.support;
        let w = [21, 14, 6, 1];
        assert!(g_order_preceq(&w, &[42, 28, 12, 2], sup).unwrap());
        assert!(g_order_preceq(&w, &[11, 7, 3, 1], sup).unwrap());
        // a single coordinate below w_i / w(g) breaks the order
        let xy = MonomialSupport::new(ws(&[1, 1], 2), vec![vec![1, 1]]).unwrap();
        assert!(!g_order_preceq(&[1, 1], &[1, 2], &xy).unwrap());
        // s(g) - s(1) + 1 = 0 on the cone boundary
        assert!(matches!(
            g_order_leq(&w, &[1, 0, 0, 0], sup),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn m_s_examples() {
        let sm = SmoothingModel::new(&ws(&[21, 14, 6], 42), 1).unwrap();
        let sup = &sm.support;
        let w = [21, 14, 6, 1];
        let v = m_s(&w, &w, sup);
        assert!(v.consistent);
        assert_eq!(v.first(), Some(&Rational::zero()));
        let v = m_s(&[42, 28, 12, 2], &w, sup);
        assert!(v.consistent);
        assert_eq!(v.first(), Some(&Rational::one()));
        let v = m_s(&[11, 7, 3, 1], &w, sup);
        assert!(!v.consistent);
    }

    #[test]
    fn ishii_not_in_cone_for_quadric() {
        let sm = SmoothingModel::new(&ws(&[1, 1, 1], 2), 1).unwrap();
        let r = check_canonical_modification(&sm, 4, Exec::Sequential).unwrap();
        assert_eq!(r.discrepancy, 1);
        assert_eq!(r.verdict, IshiiVerdict::NotInEssentialCone);
    }

    #[test]
    fn ishii_small_bound_is_inconclusive() {
        let sm = SmoothingModel::new(&ws(&[6, 3, 2], 12), 1).unwrap();
        let r = check_canonical_modification(&sm, 3, Exec::Sequential).unwrap();
        assert_eq!(r.verdict, IshiiVerdict::Inconclusive { bound: 3 });
        let r = check_canonical_modification(&sm, 12, Exec::Parallel).unwrap();
        assert_eq!(r.verdict, IshiiVerdict::CanonicalModification { bound: 12 });
    }
}
