//! Weighted projective spaces and generic hypersurfaces in them.
//!
//! The same edge/vertex machinery serves curves in `P(w0,w1,w2)` (where only
//! stabilizer orders matter) and surfaces in `P(w0,w1,w2,w3)` (where each
//! point also carries a transverse surface quotient type).

use serde::{Deserialize, Serialize};

use crate::cyclicq::{is_du_val, multiset_difference, CyclicQuotient};
use crate::error::{Error, Result};
use crate::exactmath::{gcd, gcd_all};
use crate::quasihom::{generic_support, MonomialSupport, WeightSystem};

/// For each `i`, the gcd of all weights except `w_i` is 1.
pub fn is_well_formed_space(weights: &[i64]) -> bool {
    (0..weights.len()).all(|i| {
        let rest: Vec<i64> = weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &w)| w)
            .collect();
        gcd_all(&rest) == 1
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceFamily {
    pub support: MonomialSupport,
}

impl HypersurfaceFamily {
    pub fn new(support: MonomialSupport) -> Self {
        HypersurfaceFamily { support }
    }

    /// Generic member: every monomial of degree `d`.
    pub fn generic(ws: &WeightSystem) -> Result<Self> {
        Ok(HypersurfaceFamily { support: generic_support(ws)? })
    }

    pub fn weights(&self) -> &[i64] {
        &self.support.weights.weights
    }

    pub fn degree(&self) -> i64 {
        self.support.weights.degree
    }

    pub fn n_vars(&self) -> usize {
        self.support.n_vars()
    }
}

/// No monomial of the support involves only `x_i` and `x_j`.
pub fn edge_contained(h: &HypersurfaceFamily, i: usize, j: usize) -> bool {
    assert!(i != j, "edge needs two distinct vertices");
    !h.support.has_monomial_in(1 << i | 1 << j)
}

fn singular_edges(weights: &[i64]) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
    let n = weights.len();
    (0..n).flat_map(move |i| {
        (i + 1..n).filter_map(move |j| {
            let h = gcd(weights[i], weights[j]);
            (h > 1).then_some((i, j, h))
        })
    })
}

pub fn contained_singular_edges(h: &HypersurfaceFamily) -> Vec<(usize, usize)> {
    singular_edges(h.weights())
        .filter(|&(i, j, _)| edge_contained(h, i, j))
        .map(|(i, j, _)| (i, j))
        .collect()
}

/// Ambient well-formed, every weight triple coprime (surfaces only), and no
/// singular edge contained in the hypersurface.
pub fn is_well_formed_hypersurface(h: &HypersurfaceFamily) -> bool {
    let w = h.weights();
    if !is_well_formed_space(w) {
        return false;
    }
    if w.len() == 4 {
        for skip in 0..4 {
            let triple: Vec<i64> = (0..4).filter(|&k| k != skip).map(|k| w[k]).collect();
            if gcd_all(&triple) != 1 {
                return false;
            }
        }
    }
    contained_singular_edges(h).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quasismoothness {
    pub quasismooth: bool,
    /// First failing coordinate subset.
    pub witness: Option<Vec<usize>>,
    /// Subsets with `|I| >= 2` that passed only through the
    /// `(monomial in I) * x_e` clause; kept for manual review.
    pub clause_b_decisive: Vec<Vec<usize>>,
}

fn mask_members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Subset criterion: for every nonempty `I`, either some monomial lives on
/// `I`, or at least `|I|` distinct `e ∉ I` admit a monomial `x^a_I · x_e`.
pub fn quasismoothness(h: &HypersurfaceFamily) -> Quasismoothness {
    let n = h.n_vars();
    let mut clause_b_decisive = Vec::new();
    for mask in 1u32..(1 << n) {
        if h.support.has_monomial_in(mask) {
            continue;
        }
        let size = mask.count_ones() as usize;
        let mut escapes = 0u32;
        for m in &h.support.monomials {
            let outside: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 0 && m[j] > 0).collect();
            if let [e] = outside[..] {
                if m[e] == 1 {
                    escapes |= 1 << e;
                }
            }
        }
        if (escapes.count_ones() as usize) < size {
            return Quasismoothness {
                quasismooth: false,
                witness: Some(mask_members(mask, n)),
                clause_b_decisive,
            };
        }
        if size >= 2 {
            clause_b_decisive.push(mask_members(mask, n));
        }
    }
    Quasismoothness { quasismooth: true, witness: None, clause_b_decisive }
}

pub fn is_quasismooth(h: &HypersurfaceFamily) -> (bool, Option<Vec<usize>>) {
    let q = quasismoothness(h);
    (q.quasismooth, q.witness)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePoints {
    pub edge: (usize, usize),
    /// Stabilizer order `gcd(w_i, w_j)`.
    pub order: i64,
    /// `floor(h d / (w_i w_j))`.
    pub count: i64,
    /// Number of torus roots of the restriction to the edge.
    pub exact_count: i64,
    /// Transverse type (surfaces only).
    pub surface_type: Option<CyclicQuotient>,
}

impl EdgePoints {
    pub fn count_disagrees(&self) -> bool {
        self.count != self.exact_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPoint {
    pub vertex: usize,
    pub order: i64,
    /// Variables `k` with an eliminating monomial `x_i^a x_k`.
    pub eliminated: Vec<usize>,
    /// Transverse type (surfaces only).
    pub surface_type: Option<CyclicQuotient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailedVertex {
    pub vertex: usize,
    /// Type of the ambient space at the vertex, `1/w_i(others)`.
    pub ambient: Option<CyclicQuotient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocusReport {
    pub weights: Vec<i64>,
    pub degree: i64,
    pub edge_points: Vec<EdgePoints>,
    pub vertex_points: Vec<VertexPoint>,
    /// Vertices on the hypersurface with no eliminating monomial.
    pub failed_vertices: Vec<FailedVertex>,
    pub contained_edges: Vec<(usize, usize)>,
    pub quasismooth: bool,
    pub quasismooth_witness: Option<Vec<usize>>,
    pub clause_b_decisive: Vec<Vec<usize>>,
    pub well_formed: bool,
}

/// One singular point with the stratum it lies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    /// Coordinates that are nonzero on the stratum (`[i, j]` or `[i]`).
    pub stratum: Vec<usize>,
    pub order: i64,
    pub surface_type: Option<CyclicQuotient>,
}

impl SingularLocusReport {
    /// All singular points, edge points repeated by their count.
    pub fn points(&self) -> Vec<SingularPoint> {
        let mut out = Vec::new();
        for e in &self.edge_points {
            for _ in 0..e.count {
                out.push(SingularPoint {
                    stratum: vec![e.edge.0, e.edge.1],
                    order: e.order,
                    surface_type: e.surface_type.clone(),
                });
            }
        }
        for v in &self.vertex_points {
            out.push(SingularPoint {
                stratum: vec![v.vertex],
                order: v.order,
                surface_type: v.surface_type.clone(),
            });
        }
        out
    }

    /// Multiset of transverse surface types.
    pub fn types(&self) -> Vec<CyclicQuotient> {
        self.points().into_iter().filter_map(|p| p.surface_type).collect()
    }

    pub fn count_flags(&self) -> Vec<(usize, usize)> {
        self.edge_points.iter().filter(|e| e.count_disagrees()).map(|e| e.edge).collect()
    }
}

fn surface_type(r: i64, a: i64, b: i64) -> CyclicQuotient {
    let raw = CyclicQuotient { r, acts: vec![a.rem_euclid(r), b.rem_euclid(r)] };
    raw.normalize_surface().unwrap_or(raw)
}

/// Ambient quotient type at vertex `P_i`: `1/w_i(w_j, ...)`.
pub fn ambient_vertex_type(weights: &[i64], i: usize) -> Option<CyclicQuotient> {
    let r = weights[i];
    if r < 2 {
        return None;
    }
    let acts: Vec<i64> = (0..weights.len()).filter(|&j| j != i).map(|j| weights[j]).collect();
    let q = CyclicQuotient::new(r, &acts).ok()?;
    Some(if acts.len() == 3 { q.normalize_threefold() } else { q })
}

/// Transverse surface type at `P_i` when `x_i^a x_k` eliminates `x_k`.
fn vertex_surface_type(weights: &[i64], i: usize, k: usize) -> CyclicQuotient {
    let rest: Vec<usize> = (0..4).filter(|&j| j != i && j != k).collect();
    surface_type(weights[i], -weights[rest[0]], -weights[rest[1]])
}

/// Singular points of the generic member along the coordinate strata.
pub fn singular_locus(h: &HypersurfaceFamily) -> Result<SingularLocusReport> {
    let w = h.weights();
    let n = w.len();
    let d = h.degree();
    if !(3..=4).contains(&n) {
        return Err(Error::InvalidInput(format!("singular_locus needs 3 or 4 variables, got {n}")));
    }
    let qs = quasismoothness(h);
    let contained = contained_singular_edges(h);
    let mut edge_points = Vec::new();
    for (i, j, order) in singular_edges(w) {
        if contained.contains(&(i, j)) {
            continue;
        }
        let count = order * d / (w[i] * w[j]);
        let edge_monomials =
            h.support.monomials.iter().filter(|m| (0..n).all(|k| k == i || k == j || m[k] == 0));
        let exact_count = edge_monomials.count() as i64 - 1;
        let surface_type = (n == 4).then(|| {
            let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            surface_type(order, w[rest[0]], w[rest[1]])
        });
        if count > 0 {
            edge_points.push(EdgePoints { edge: (i, j), order, count, exact_count, surface_type });
        }
    }
    let mut vertex_points = Vec::new();
    let mut failed_vertices = Vec::new();
    for i in 0..n {
        if w[i] < 2 || d % w[i] == 0 {
            continue;
        }
        let eliminated = h.support.flags(i).eliminating;
        if eliminated.is_empty() {
            failed_vertices.push(FailedVertex { vertex: i, ambient: ambient_vertex_type(w, i) });
            continue;
        }
        let surface_type = if n == 4 {
            let first = vertex_surface_type(w, i, eliminated[0]);
            for &k in &eliminated[1..] {
                let other = vertex_surface_type(w, i, k);
                if !first.is_isomorphic(&other) {
                    return Err(Error::VertexTypeConflict { vertex: i, first, second: other });
                }
            }
            Some(first)
        } else {
            None
        };
        vertex_points.push(VertexPoint { vertex: i, order: w[i], eliminated, surface_type });
    }
    let well_formed = is_well_formed_hypersurface(h);
    Ok(SingularLocusReport {
        weights: w.to_vec(),
        degree: d,
        edge_points,
        vertex_points,
        failed_vertices,
        contained_edges: contained,
        quasismooth: qs.quasismooth,
        quasismooth_witness: qs.witness,
        clause_b_decisive: qs.clause_b_decisive,
        well_formed,
    })
}

/// Quasismooth, well-formed, `Σ w = d`, and every singularity Du Val except
/// possibly the declared `bhat`.
pub fn is_k3(h: &HypersurfaceFamily, bhat: &[CyclicQuotient]) -> Result<bool> {
    if h.n_vars() != 4 {
        return Err(Error::InvalidInput("is_k3 needs a surface in weighted P^3".into()));
    }
    let report = singular_locus(h)?;
    if !report.quasismooth || !report.well_formed {
        return Ok(false);
    }
    if h.weights().iter().sum::<i64>() != h.degree() {
        return Ok(false);
    }
    let types = report.types();
    let rest = multiset_difference(&types, bhat).unwrap_or(types);
    Ok(rest.iter().all(is_du_val))
}
