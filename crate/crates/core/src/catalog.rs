//! Machine-readable catalog of named singularities with the values each
//! pipeline stage is expected to produce, and an end-to-end verifier.
//!
//! The file is a JSON array of entries; see `data/SCHEMA.md` for the layout.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cyclicq::{dual_sets, is_isomorphic_surface, same_multiset, CyclicQuotient, DualSet};
use crate::error::{Error, Result};
use crate::monodromy::{char_poly, unipotent_exponent, CharPoly};
use crate::orbit::{chat_squared, compute_b, exponent_r, genus, solve_dolgachev, BSet};
use crate::par::Exec;
use crate::quasihom::{
    generic_support, milnor_number, solve_weights, solve_weights_for, Monomial, MonomialSupport,
    NfClass, NormalForm, WeightSystem,
};
use crate::exactmath::Rational;
use crate::smoothing::{discrepancy, search_smoothings, Rejection, SearchOutcome};

/// Surface quotient `1/r(1, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sing {
    pub r: i64,
    pub c: i64,
}

impl Sing {
    pub fn quotient(self) -> Result<CyclicQuotient> {
        CyclicQuotient::surface(self.r, self.c)
    }
}

impl fmt::Display for Sing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.r, self.c)
    }
}

fn quotients(s: &[Sing]) -> Result<Vec<CyclicQuotient>> {
    s.iter().map(|x| x.quotient()).collect()
}

fn fmt_multiset(qs: &[CyclicQuotient]) -> String {
    let v: Vec<String> = qs.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extra {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedHit {
    pub w3: i64,
    pub dual_set: Vec<Sing>,
    pub k3: bool,
    /// Du Val singularities of `S_T` beyond the dual set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<Vec<Sing>>,
    /// Ambient weights as printed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub weights: Vec<i64>,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub milnor: Option<i64>,
    #[serde(rename = "B")]
    pub b: Vec<Sing>,
    pub dual_sets: Vec<Vec<Sing>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_set_count: Option<usize>,
    pub hits: Vec<ExpectedHit>,
    pub exponent: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_squared: Option<Fraction>,
    /// Every on-curve threefold point of the `w3 = 1` model is ODNC and terminal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odnc_terminal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRejection {
    pub w3: i64,
    /// One of `not_well_formed`, `not_quasismooth`, `vertex_conflict`,
    /// `no_dual_set_match`, `outside_essential_cone`.
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<NfClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<Extra>,
    /// Raw support in `(x, y, z)`, used when no class template applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomials: Option<Vec<Monomial>>,
    /// The defining polynomial as originally printed, when it differs from
    /// `monomials`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_monomials: Option<Vec<Monomial>>,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yonemura_case: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// Claim id -> explanation of a known misprint in the source values.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub errata: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<ExpectedRejection>,
}

impl CatalogEntry {
    pub fn normal_form(&self) -> Result<Option<NormalForm>> {
        match (self.class, self.exponents) {
            (Some(class), Some(p)) => {
                Ok(Some(NormalForm::new(class, p, self.extra.map(|e| (e.a, e.b)))?))
            }
            (None, None) => Ok(None),
            _ => Err(Error::Consistency {
                entry: self.name.clone(),
                check: "class and exponents must be given together".into(),
            }),
        }
    }

    /// Defining monomials in `(x, y, z)`.
    pub fn defining_monomials(&self) -> Result<Vec<Monomial>> {
        if let Some(m) = &self.monomials {
            return Ok(m.clone());
        }
        match self.normal_form()? {
            Some(nf) => Ok(nf.monomials()),
            None => Err(Error::Consistency {
                entry: self.name.clone(),
                check: "entry needs class+exponents or monomials".into(),
            }),
        }
    }

    pub fn weight_system(&self) -> Result<WeightSystem> {
        match (&self.monomials, self.normal_form()?) {
            (Some(m), _) => solve_weights_for(m),
            (None, Some(nf)) => solve_weights(&nf),
            (None, None) => Err(Error::Consistency {
                entry: self.name.clone(),
                check: "entry needs class+exponents or monomials".into(),
            }),
        }
    }

    pub fn matches_name(&self, query: &str) -> bool {
        let norm = |s: &str| s.replace(['_', '{', '}', ' '], "").to_ascii_lowercase();
        let q = norm(query);
        norm(&self.name) == q || self.aliases.iter().any(|a| norm(a) == q)
    }
}

fn schema_error(line: usize, column: usize, path: String, message: String) -> Error {
    Error::Schema { line, column, path, message }
}

/// Parses and cross-validates catalog JSON. Whitespace-only input is an
/// empty catalog.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let entries: Vec<CatalogEntry> = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        schema_error(inner.line(), inner.column(), path, inner.to_string())
    })?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.name.clone()) {
            return Err(Error::Consistency { entry: e.name.clone(), check: "duplicate name".into() });
        }
        let ws = e.weight_system().map_err(|err| Error::Consistency {
            entry: e.name.clone(),
            check: format!("normal form: {err}"),
        })?;
        if ws.weights != e.expected.weights || ws.degree != e.expected.degree {
            return Err(Error::Consistency {
                entry: e.name.clone(),
                check: format!(
                    "normal form gives weights {:?}, degree {} but expected {:?}, degree {}",
                    ws.weights, ws.degree, e.expected.weights, e.expected.degree
                ),
            });
        }
    }
    Ok(entries)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

/// Canonical text form: pretty JSON with a trailing newline.
pub fn to_canonical_string(entries: &[CatalogEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("catalog serializes");
    s.push('\n');
    s
}

pub fn save_catalog(path: impl AsRef<Path>, entries: &[CatalogEntry]) -> Result<()> {
    std::fs::write(path, to_canonical_string(entries))?;
    Ok(())
}

/// The catalog shipped with the crate.
pub const BUNDLED: &str = include_str!("../data/catalog.json");

pub fn bundled_catalog() -> Result<Vec<CatalogEntry>> {
    parse_catalog(BUNDLED)
}

/// Everything computed for a germ from its weights alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermAnalysis {
    pub weights: WeightSystem,
    pub milnor: i64,
    pub exponent: i64,
    pub b: BSet,
    pub chat_sq: Rational,
    pub genus: i64,
    pub b_degree: Option<i64>,
    pub dolgachev: bool,
    pub char_poly: CharPoly,
    pub unipotent_exponent: i64,
    pub dual_sets: Vec<DualSet>,
}

impl GermAnalysis {
    pub fn support(&self) -> Result<MonomialSupport> {
        generic_support(&self.weights)
    }
}

pub fn analyze(ws: &WeightSystem) -> Result<GermAnalysis> {
    if ws.n_vars() != 3 {
        return Err(Error::InvalidInput("analysis needs three weights".into()));
    }
    let milnor = milnor_number(ws)?;
    let support = generic_support(ws)?;
    let b = compute_b(&support)?;
    let chat_sq = chat_squared(ws, &b)?;
    let g = genus(ws, &b)?;
    let exponent = exponent_r(ws);
    let dolg = solve_dolgachev(exponent, g, &b.quotients())?;
    let cp = char_poly(ws.degree, g, &ws.weights, &b.alphas())?;
    let m = unipotent_exponent(&cp)?;
    let dual_sets = dual_sets(&b.quotients())?;
    Ok(GermAnalysis {
        weights: ws.clone(),
        milnor,
        exponent,
        chat_sq,
        genus: g,
        b_degree: dolg.b.to_i64().filter(|_| dolg.holds),
        dolgachev: dolg.holds,
        char_poly: cp,
        unipotent_exponent: m,
        dual_sets,
        b,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    KnownErratum,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownErratum => "KNOWN_ERRATUM",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub claims: Vec<Claim>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

struct Recorder<'a> {
    entry: &'a CatalogEntry,
    claims: Vec<Claim>,
}

impl Recorder<'_> {
    fn check(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let id = id.into();
        let status = match (ok, self.entry.errata.contains_key(&id)) {
            (true, _) => Status::Pass,
            (false, true) => Status::KnownErratum,
            (false, false) => Status::Fail,
        };
        let mut detail = detail.into();
        if status == Status::KnownErratum {
            detail = format!("{detail}; {}", self.entry.errata[&id]);
        }
        self.claims.push(Claim { id, status, detail });
    }

    fn fail(&mut self, id: impl Into<String>, err: &Error) {
        self.check(id, false, format!("error: {err}"));
    }
}

fn rejection_kind(r: &Rejection) -> &'static str {
    match r {
        Rejection::NotWellFormed { .. } => "not_well_formed",
        Rejection::NotQuasismooth { .. } => "not_quasismooth",
        Rejection::VertexConflict { .. } => "vertex_conflict",
        Rejection::NoDualSetMatch { .. } => "no_dual_set_match",
        Rejection::OutsideEssentialCone { .. } => "outside_essential_cone",
    }
}

fn sorted_b(b: &BSet) -> Vec<Sing> {
    let mut v: Vec<Sing> = b.points.iter().map(|p| Sing { r: p.alpha(), c: p.beta() }).collect();
    v.sort();
    v
}

/// Runs the full pipeline for one entry and diffs every stage against the
/// recorded expectations.
pub fn verify_entry(entry: &CatalogEntry, exec: Exec) -> EntryReport {
    let mut rec = Recorder { entry, claims: Vec::new() };
    let exp = &entry.expected;

    let ws = match entry.weight_system() {
        Ok(ws) => ws,
        Err(e) => {
            rec.fail("weights", &e);
            return EntryReport { name: entry.name.clone(), claims: rec.claims };
        }
    };
    rec.check(
        "weights",
        ws.weights == exp.weights && ws.degree == exp.degree,
        format!("computed {ws}, expected ({:?}; {})", exp.weights, exp.degree),
    );
    if let Some(printed) = &entry.printed_monomials {
        let degrees: Vec<i64> = printed.iter().map(|m| ws.weighted_degree(m)).collect();
        let ok = degrees.iter().all(|&x| x == ws.degree);
        rec.check("normal_form", ok, format!("printed monomial degrees {degrees:?}, d = {}", ws.degree));
    }

    let an = match analyze(&ws) {
        Ok(an) => an,
        Err(e) => {
            rec.fail("analysis", &e);
            return EntryReport { name: entry.name.clone(), claims: rec.claims };
        }
    };
    if let Some(mu) = exp.milnor {
        rec.check("milnor", an.milnor == mu, format!("computed {}, expected {mu}", an.milnor));
    }
    let mut exp_b = exp.b.clone();
    exp_b.sort();
    let got_b = sorted_b(&an.b);
    let fmt_sings = |v: &[Sing]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
    rec.check("B", got_b == exp_b, format!("computed {{{}}}, expected {{{}}}", fmt_sings(&got_b), fmt_sings(&exp_b)));
    rec.check(
        "deg_theta",
        an.char_poly.degree() == an.milnor,
        format!("deg θ = {}, μ = {}", an.char_poly.degree(), an.milnor),
    );
    rec.check(
        "exponent",
        an.unipotent_exponent == exp.exponent && an.unipotent_exponent == ws.degree,
        format!("m = {}, expected {}, d = {}", an.unipotent_exponent, exp.exponent, ws.degree),
    );
    rec.check(
        "dolgachev",
        an.dolgachev,
        format!("R = {}, g = {}, b = {:?}", an.exponent, an.genus, an.b_degree),
    );

    let computed_sets: Vec<Vec<CyclicQuotient>> =
        an.dual_sets.iter().map(|d| d.members.clone()).collect();
    if let Some(count) = exp.dual_set_count {
        rec.check(
            "dual_set_count",
            computed_sets.len() == count,
            format!("computed {}, expected {count}", computed_sets.len()),
        );
    }
    for (i, ds) in exp.dual_sets.iter().enumerate() {
        let id = format!("dual_set:{}", i + 1);
        match quotients(ds) {
            Ok(q) => {
                let found = computed_sets.iter().any(|c| same_multiset(c, &q));
                rec.check(id, found, format!("{} among computed dual sets", fmt_multiset(&q)));
            }
            Err(e) => rec.fail(id, &e),
        }
    }

    let support = match an.support() {
        Ok(s) => s,
        Err(e) => {
            rec.fail("search", &e);
            return EntryReport { name: entry.name.clone(), claims: rec.claims };
        }
    };
    let outcome: SearchOutcome =
        match search_smoothings(&support, &an.dual_sets, 1..=ws.degree, exec) {
            Ok(o) => o,
            Err(e) => {
                rec.fail("search", &e);
                return EntryReport { name: entry.name.clone(), claims: rec.claims };
            }
        };
    let mut got_w3: Vec<i64> = outcome.hits.iter().map(|h| h.w3).collect();
    got_w3.dedup();
    let mut exp_w3: Vec<i64> = exp.hits.iter().map(|h| h.w3).collect();
    exp_w3.sort();
    rec.check("hits", got_w3 == exp_w3, format!("w3 = {got_w3:?}, expected {exp_w3:?}"));

    for eh in &exp.hits {
        let prefix = format!("hit:{}", eh.w3);
        let hits: Vec<_> = outcome.hits.iter().filter(|h| h.w3 == eh.w3).collect();
        let Some(first) = hits.first() else {
            rec.check(prefix, false, "no smoothing found at this w3");
            continue;
        };
        let report = &first.report;
        let realized: Vec<&Vec<CyclicQuotient>> = hits
            .iter()
            .filter_map(|h| an.dual_sets.iter().find(|d| d.id == h.dual_set).map(|d| &d.members))
            .collect();
        match quotients(&eh.dual_set) {
            Ok(q) => {
                let ok = realized.iter().any(|r| same_multiset(r, &q));
                let got: Vec<String> = realized.iter().map(|r| fmt_multiset(r)).collect();
                rec.check(
                    format!("{prefix}:dual_set"),
                    ok,
                    format!("realized {}, expected {}", got.join(" | "), fmt_multiset(&q)),
                );
            }
            Err(e) => rec.fail(format!("{prefix}:dual_set"), &e),
        }
        rec.check(format!("{prefix}:k3"), report.k3 == eh.k3, format!("k3 = {}, expected {}", report.k3, eh.k3));
        if let Some(extra) = &eh.extra {
            if let Ok(extra_q) = quotients(extra) {
                let ok = realized.iter().any(|r| {
                    crate::cyclicq::multiset_difference(&report.st.types(), r)
                        .is_some_and(|rest| same_multiset(&rest, &extra_q))
                });
                rec.check(format!("{prefix}:extra"), ok, format!("excess Du Val {}", fmt_multiset(&extra_q)));
            }
        }
        if let Some(amb) = &eh.ambient {
            rec.check(
                format!("{prefix}:ambient"),
                amb.as_slice() == report.weights.as_slice(),
                format!("computed P{:?}, printed P{amb:?}", report.weights),
            );
        }
        if eh.w3 == 1 {
            if let Some(c2) = exp.c_squared {
                match &report.intersection {
                    Some(inter) => {
                        let want = Rational::new(c2.num, c2.den);
                        let ok = inter.c_sq.as_ref() == Some(&want) && inter.check;
                        let got = inter.c_sq.as_ref().map(|c| c.to_string()).unwrap_or("ambiguous".into());
                        rec.check("c_squared", ok, format!("C² = {got}, expected {want}, C̃² = {}", inter.c_tilde_sq));
                        rec.check(
                            "triple_point",
                            inter.triple_point,
                            format!("C̃² + Ĉ² = {} , n_p = {}", inter.c_tilde_sq.clone() + inter.chat_sq.clone(), inter.n_p),
                        );
                    }
                    None => rec.check("c_squared", false, "no intersection numbers"),
                }
            }
            if exp.odnc_terminal == Some(true) {
                let ok = report.on_curve.iter().all(|p| {
                    p.odnc && p.reid_tai == Some(crate::cyclicq::ReidTai::Terminal)
                });
                let types: Vec<String> = report.on_curve.iter().map(|p| p.threefold.to_string()).collect();
                rec.check("odnc_terminal", ok, format!("on-curve threefold types [{}]", types.join(", ")));
            }
            let a = discrepancy(&report.weights, &generic_support(&ws.extend(1).expect("w3 = 1")).expect("support"));
            // a(w) = Σw - d - 1, which is -1 exactly when R = 1.
            let want = report.weights.iter().sum::<i64>() - report.degree - 1;
            let ok = a == want && a <= -1 && (an.exponent != 1 || a == -1);
            rec.check("essential_cone", ok, format!("a(w) = {a}, R = {}", an.exponent));
            if let Some(ds) = hits.first().and_then(|h| an.dual_sets.iter().find(|d| d.id == h.dual_set)) {
                let a_types = ds.members.iter().all(|q| q.normalize_surface().is_ok_and(|n| n.acts[1] == q.r - 1));
                if exp.odnc_terminal == Some(true) {
                    rec.check("dual_set_is_A", a_types, format!("realized {}", fmt_multiset(&ds.members)));
                }
            }
        }
    }

    for rj in &entry.rejected {
        let id = format!("rejected:{}", rj.w3);
        let got = outcome.rejected.iter().find(|r| r.w3 == rj.w3);
        match got {
            Some(r) => rec.check(
                id,
                rejection_kind(&r.reason) == rj.reason,
                format!("{} (expected {})", r.reason, rj.reason),
            ),
            None => rec.check(id, false, format!("w3 = {} was not rejected", rj.w3)),
        }
    }

    EntryReport { name: entry.name.clone(), claims: rec.claims }
}

/// Verifies every entry; reports come back in catalog order.
pub fn verify_all(entries: &[CatalogEntry], exec: Exec) -> Vec<EntryReport> {
    exec.map(entries, |e| verify_entry(e, Exec::Sequential))
}

/// Looks up an entry by name or alias.
pub fn find<'a>(entries: &'a [CatalogEntry], query: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.matches_name(query))
}

/// Used by tests: surface isomorphism on catalog spellings.
pub fn sing_isomorphic(a: Sing, b: Sing) -> bool {
    match (a.quotient(), b.quotient()) {
        (Ok(x), Ok(y)) => is_isomorphic_surface(&x, &y),
        _ => a == b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_empty_catalog() {
        assert!(parse_catalog("").unwrap().is_empty());
        assert!(parse_catalog("  \n").unwrap().is_empty());
        assert!(parse_catalog("[]").unwrap().is_empty());
    }

    #[test]
    fn schema_errors_carry_location() {
        let err = parse_catalog("[{\"name\": 3}]").unwrap_err();
        match err {
            Error::Schema { line, path, .. } => {
                assert_eq!(line, 1);
                assert!(path.contains("name"), "{path}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bundled_catalog_has_seventeen_entries() {
        let cat = bundled_catalog().unwrap();
        assert_eq!(cat.len(), 17);
        assert!(find(&cat, "E12").is_some());
        assert!(find(&cat, "D_{2,3,7}").is_some());
        assert!(find(&cat, "e20").is_some());
    }

    #[test]
    fn corrupted_weights_are_rejected() {
        let mut cat = bundled_catalog().unwrap();
        cat.truncate(1);
        cat[0].expected.weights[0] += 1;
        let text = to_canonical_string(&cat);
        assert!(matches!(parse_catalog(&text), Err(Error::Consistency { .. })));
    }

    #[test]
    fn duplicates_are_rejected() {
        let mut cat = bundled_catalog().unwrap();
        cat.truncate(1);
        cat.push(cat[0].clone());
        let text = to_canonical_string(&cat);
        match parse_catalog(&text) {
            Err(Error::Consistency { check, .. }) => assert_eq!(check, "duplicate name"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn analyze_e12() {
        let an = analyze(&WeightSystem::new(vec![21, 14, 6], 42).unwrap()).unwrap();
        assert_eq!(an.milnor, 12);
        assert_eq!(an.exponent, 1);
        assert_eq!(an.genus, 0);
        assert_eq!(an.b_degree, Some(1));
        assert_eq!(an.chat_sq, Rational::from_int(-1));
        assert_eq!(an.unipotent_exponent, 42);
        assert_eq!(an.dual_sets.len(), 4);
    }
}
