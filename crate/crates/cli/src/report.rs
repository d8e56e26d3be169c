use std::collections::BTreeMap;
use std::fmt::{self, Display, Formatter};
use std::ops::RangeInclusive;

use serde::Serialize;
use wps_core::catalog::{analyze, CatalogEntry, EntryReport, Status};
use wps_core::cyclicq::{dual_candidates, DualCandidate, DualSet};
use wps_core::orbit::{compute_b, BPoint};
use wps_core::quasihom::generic_support;
use wps_core::smoothing::{
    check_canonical_modification, exceptional_surface, intersection_numbers, search_smoothings,
    IntersectionNumbers, IshiiReport, IshiiVerdict, Rejected, SmoothingHit, SmoothingModel,
};
use wps_core::wps::singular_locus;
use wps_core::{CyclicQuotient, Error, Exec, Rational, Result};

use crate::Germ;

#[derive(Serialize)]
pub struct ListRow {
    pub name: String,
    pub aliases: Vec<String>,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub yonemura_case: Option<i64>,
}

#[derive(Serialize)]
pub struct AnalyzeOut {
    pub germ: String,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub milnor: i64,
    pub b: Vec<BPoint>,
    pub chat_squared: Rational,
    pub exponent: i64,
    pub genus: i64,
    /// Degree `b` from the Dolgachev relation, when it holds.
    pub dolgachev_b: Option<i64>,
}

#[derive(Serialize)]
pub struct PointDuals {
    pub base: CyclicQuotient,
    pub candidates: Vec<DualCandidate>,
}

#[derive(Serialize)]
pub struct DualsOut {
    pub germ: String,
    pub points: Vec<PointDuals>,
    pub dual_sets: Vec<DualSet>,
}

#[derive(Serialize)]
pub struct MonodromyOut {
    pub germ: String,
    pub degree: i64,
    pub milnor: i64,
    pub genus: i64,
    pub theta: String,
    pub cyclotomic: BTreeMap<i64, i64>,
    pub theta_degree: i64,
    pub unipotent_exponent: i64,
}

#[derive(Serialize)]
pub struct SearchOut {
    pub germ: String,
    pub w3_range: [i64; 2],
    pub dual_sets: Vec<DualSet>,
    pub hits: Vec<SmoothingHit>,
    pub rejected: Vec<Rejected>,
}

#[derive(Serialize)]
pub struct IntersectOut {
    pub germ: String,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub intersection: IntersectionNumbers,
}

#[derive(Serialize)]
pub struct IshiiOut {
    pub germ: String,
    #[serde(flatten)]
    pub report: IshiiReport,
}

#[derive(Serialize)]
#[serde(tag = "command", content = "result", rename_all = "snake_case")]
pub enum Report {
    List(Vec<ListRow>),
    Analyze(AnalyzeOut),
    Duals(DualsOut),
    Monodromy(MonodromyOut),
    Search(SearchOut),
    Intersect(Box<IntersectOut>),
    Ishii(IshiiOut),
    Verify(Vec<EntryReport>),
}

impl Report {
    pub fn list(cat: &[CatalogEntry]) -> Report {
        Report::List(
            cat.iter()
                .map(|e| ListRow {
                    name: e.name.clone(),
                    aliases: e.aliases.clone(),
                    weights: e.expected.weights.clone(),
                    degree: e.expected.degree,
                    yonemura_case: e.yonemura_case,
                })
                .collect(),
        )
    }

    pub fn analyze(g: &Germ) -> Result<Report> {
        let mut an = analyze(&g.ws)?;
        an.b.points.sort_by(|x, y| x.quotient.cmp(&y.quotient));
        Ok(Report::Analyze(AnalyzeOut {
            germ: g.label.clone(),
            weights: g.ws.weights.clone(),
            degree: g.ws.degree,
            milnor: an.milnor,
            b: an.b.points,
            chat_squared: an.chat_sq,
            exponent: an.exponent,
            genus: an.genus,
            dolgachev_b: an.b_degree,
        }))
    }

    pub fn duals(g: &Germ) -> Result<Report> {
        let b = compute_b(&generic_support(&g.ws)?)?;
        let points = b
            .points
            .iter()
            .map(|p| {
                let opts = dual_candidates(&p.quotient)?;
                Ok(PointDuals { base: opts.base, candidates: opts.duals })
            })
            .collect::<Result<_>>()?;
        Ok(Report::Duals(DualsOut {
            germ: g.label.clone(),
            points,
            dual_sets: wps_core::cyclicq::dual_sets(&b.quotients())?,
        }))
    }

    pub fn monodromy(g: &Germ) -> Result<Report> {
        let an = analyze(&g.ws)?;
        Ok(Report::Monodromy(MonodromyOut {
            germ: g.label.clone(),
            degree: g.ws.degree,
            milnor: an.milnor,
            genus: an.genus,
            theta: an.char_poly.factors.to_string(),
            theta_degree: an.char_poly.degree(),
            cyclotomic: an.char_poly.cyclotomic,
            unipotent_exponent: an.unipotent_exponent,
        }))
    }

    pub fn search(g: &Germ, range: RangeInclusive<i64>, exec: Exec) -> Result<Report> {
        let an = analyze(&g.ws)?;
        let w3_range = [*range.start(), *range.end()];
        let out = search_smoothings(&an.support()?, &an.dual_sets, range, exec)?;
        Ok(Report::Search(SearchOut {
            germ: g.label.clone(),
            w3_range,
            dual_sets: an.dual_sets,
            hits: out.hits,
            rejected: out.rejected,
        }))
    }

    pub fn intersect(g: &Germ, w3: i64) -> Result<Report> {
        let sm = SmoothingModel::new(&g.ws, w3)?;
        let b = compute_b(&sm.base)?;
        let st = singular_locus(&exceptional_surface(&sm))?;
        if !st.quasismooth {
            return Err(Error::InvalidInput(format!(
                "S_T in P{:?} is not quasismooth; intersection numbers are undefined",
                sm.weights()
            )));
        }
        Ok(Report::Intersect(Box::new(IntersectOut {
            germ: g.label.clone(),
            weights: sm.weights().to_vec(),
            degree: sm.degree(),
            intersection: intersection_numbers(&sm, &b, &st)?,
        })))
    }

    pub fn ishii(g: &Germ, w3: i64, bound: i64, exec: Exec) -> Result<Report> {
        let sm = SmoothingModel::new(&g.ws, w3)?;
        Ok(Report::Ishii(IshiiOut {
            germ: g.label.clone(),
            report: check_canonical_modification(&sm, bound, exec)?,
        }))
    }
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn set(items: &[CyclicQuotient]) -> String {
    format!("{{{}}}", join(items))
}

fn weights(w: &[i64], d: i64) -> String {
    format!("({}; {d})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl Display for Report {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Report::List(rows) => {
                writeln!(f, "{:<6} {:<18} {:<26} yonemura", "name", "weights", "aliases")?;
                for r in rows {
                    writeln!(
                        f,
                        "{:<6} {:<18} {:<26} {}",
                        r.name,
                        weights(&r.weights, r.degree),
                        r.aliases.join(" "),
                        r.yonemura_case.map(|c| c.to_string()).unwrap_or_else(|| "-".into())
                    )?;
                }
                Ok(())
            }
            Report::Analyze(a) => {
                writeln!(f, "{}", a.germ)?;
                writeln!(f, "  weights         {}", weights(&a.weights, a.degree))?;
                writeln!(f, "  milnor number   {}", a.milnor)?;
                let b: Vec<CyclicQuotient> = a.b.iter().map(|p| p.quotient.clone()).collect();
                writeln!(f, "  B               {}", set(&b))?;
                writeln!(f, "  Ĉ²              {}", a.chat_squared)?;
                writeln!(f, "  exponent R      {}", a.exponent)?;
                writeln!(f, "  genus           {}", a.genus)?;
                match a.dolgachev_b {
                    Some(b) => writeln!(f, "  degree b        {b}"),
                    None => writeln!(f, "  degree b        - (Dolgachev relation fails)"),
                }
            }
            Report::Duals(d) => {
                writeln!(f, "{}", d.germ)?;
                for p in &d.points {
                    writeln!(f, "  {}", p.base)?;
                    for c in &p.candidates {
                        let tags: Vec<String> = c
                            .tags
                            .iter()
                            .map(|t| serde_json::to_value(t).unwrap().as_str().unwrap_or_default().to_string())
                            .collect();
                        let q = c.surface(p.base.r);
                        writeln!(
                            f,
                            "    {:<20} {:<18} {}",
                            q.display_with_alias(),
                            c.class,
                            tags.join(",")
                        )?;
                    }
                }
                writeln!(f, "  dual sets ({})", d.dual_sets.len())?;
                for s in &d.dual_sets {
                    writeln!(f, "    {:>2}  {}", s.id, set(&s.members))?;
                }
                Ok(())
            }
            Report::Monodromy(m) => {
                writeln!(f, "{}", m.germ)?;
                writeln!(f, "  θ(t)            {}", m.theta)?;
                let phis: Vec<String> = m
                    .cyclotomic
                    .iter()
                    .map(|(e, c)| if *c == 1 { format!("Φ{e}") } else { format!("Φ{e}^{c}") })
                    .collect();
                writeln!(f, "  cyclotomic      {}", phis.join(" "))?;
                writeln!(f, "  deg θ           {} (μ = {})", m.theta_degree, m.milnor)?;
                writeln!(f, "  genus           {}", m.genus)?;
                writeln!(f, "  unipotent m     {} (d = {})", m.unipotent_exponent, m.degree)
            }
            Report::Search(s) => {
                writeln!(f, "{}  w3 in {}..{}", s.germ, s.w3_range[0], s.w3_range[1])?;
                if s.hits.is_empty() {
                    writeln!(f, "  no smoothing realizes a dual set")?;
                }
                for h in &s.hits {
                    let members = s
                        .dual_sets
                        .iter()
                        .find(|d| d.id == h.dual_set)
                        .map(|d| set(&d.members))
                        .unwrap_or_default();
                    let r = &h.report;
                    writeln!(
                        f,
                        "  w3 = {:<3} P{:?} d = {}  dual set {} {}  K3 {}",
                        h.w3, r.weights, r.degree, h.dual_set, members, if r.k3 { "yes" } else { "no" }
                    )?;
                    writeln!(f, "      S_T singularities  {}", set(&r.st.types()))?;
                    if !r.on_curve.is_empty() {
                        let oc: Vec<String> = r
                            .on_curve
                            .iter()
                            .map(|p| {
                                let class = p.reid_tai.map(|c| c.to_string()).unwrap_or_else(|| "?".into());
                                format!("{} {}{}", p.threefold, class, if p.odnc { " odnc" } else { "" })
                            })
                            .collect();
                        writeln!(f, "      threefold on C     {}", oc.join(", "))?;
                    }
                    if let Some(i) = &r.intersection {
                        let c2 = i.c_sq.as_ref().map(|c| c.to_string()).unwrap_or_else(|| {
                            format!("{} | {} (orientation)", i.c_sq_first_end, i.c_sq_last_end)
                        });
                        writeln!(f, "      C̃² = {}  C² = {}", i.c_tilde_sq, c2)?;
                    }
                }
                let shown: Vec<&Rejected> = s.rejected.iter().collect();
                if !shown.is_empty() {
                    writeln!(f, "  rejected")?;
                    for r in shown {
                        writeln!(f, "    w3 = {:<3} {}", r.w3, r.reason)?;
                    }
                }
                Ok(())
            }
            Report::Intersect(x) => {
                let i = &x.intersection;
                writeln!(f, "{}  P{:?} d = {}", x.germ, x.weights, x.degree)?;
                writeln!(f, "  n_p             {}", i.n_p)?;
                writeln!(f, "  C̃²              {}", i.c_tilde_sq)?;
                for c in &i.corrections {
                    writeln!(
                        f,
                        "    {:<14} chain {:?}  corners {} / {}",
                        c.quotient.to_string(),
                        c.chain,
                        c.first_corner,
                        c.last_corner
                    )?;
                }
                match &i.c_sq {
                    Some(c) => writeln!(f, "  C²              {c}")?,
                    None => writeln!(
                        f,
                        "  C²              {} (first end) | {} (last end)",
                        i.c_sq_first_end, i.c_sq_last_end
                    )?,
                }
                writeln!(f, "  d/(w0w1w2)      {}  check {}", i.expected, i.check)?;
                writeln!(f, "  Ĉ²              {}", i.chat_sq)?;
                writeln!(f, "  C̃² + Ĉ² = -n_p  {}", i.triple_point)
            }
            Report::Ishii(x) => {
                let r = &x.report;
                writeln!(f, "{}  w = {:?}", x.germ, r.weights)?;
                writeln!(f, "  a(w)            {}", r.discrepancy)?;
                writeln!(f, "  in C1(g)        {}", r.in_essential_cone)?;
                writeln!(f, "  tested          {} vectors (bound {})", r.tested_count, r.bound)?;
                let verdict = match &r.verdict {
                    IshiiVerdict::CanonicalModification { bound } => {
                        format!("canonical modification (up to bound {bound})")
                    }
                    IshiiVerdict::NotMinimal { witness } => format!("not g-minimal, witness {witness:?}"),
                    IshiiVerdict::NotInEssentialCone => "w is not in the essential cone".into(),
                    IshiiVerdict::Inconclusive { bound } => format!("inconclusive at bound {bound}"),
                };
                writeln!(f, "  verdict         {verdict}")?;
                for c in &r.threefold_checks {
                    let class = c.class.map(|c| c.to_string()).unwrap_or_else(|| "?".into());
                    writeln!(f, "    {:<12} {:<16} {class} (min age {})", c.location, c.quotient.to_string(), c.min_age)?;
                }
                Ok(())
            }
            Report::Verify(reports) => {
                for r in reports {
                    let fails = r.claims.iter().filter(|c| c.status == Status::Fail).count();
                    let errata = r.claims.iter().filter(|c| c.status == Status::KnownErratum).count();
                    writeln!(
                        f,
                        "{:<6} {}  {} claims, {} known errata",
                        r.name,
                        if fails == 0 { "PASS" } else { "FAIL" },
                        r.claims.len(),
                        errata
                    )?;
                    for c in r.claims.iter().filter(|c| c.status != Status::Pass) {
                        writeln!(f, "    {:<14} {:<16} {}", c.status.to_string(), c.id, c.detail)?;
                    }
                }
                Ok(())
            }
        }
    }
}
