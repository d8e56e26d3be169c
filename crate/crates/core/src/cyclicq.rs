//! Cyclic quotient singularities `1/r(a_1, ..., a_k)` for surfaces (`k = 2`)
//! and threefolds (`k = 3`).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, hj_expansion, mod_inverse, Rational};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicQuotient {
    pub r: i64,
    pub acts: Vec<i64>,
}

impl CyclicQuotient {
    /// Residues are reduced into `[0, r-1]`; no normalization is applied, so
    /// the orientation given by the caller is preserved.
    pub fn new(r: i64, acts: &[i64]) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidInput(format!("quotient order {r} must be >= 2")));
        }
        if !(2..=3).contains(&acts.len()) {
            return Err(Error::InvalidInput(format!(
                "quotient needs 2 or 3 residues, got {}",
                acts.len()
            )));
        }
        Ok(CyclicQuotient { r, acts: acts.iter().map(|a| a.rem_euclid(r)).collect() })
    }

    /// `1/r(1, c)`.
    pub fn surface(r: i64, c: i64) -> Result<Self> {
        Self::new(r, &[1, c])
    }

    pub fn dim(&self) -> usize {
        self.acts.len()
    }

    pub fn is_isolated(&self) -> bool {
        self.acts.iter().all(|&a| gcd(a, self.r) == 1)
    }

    fn require_isolated(&self) -> Result<()> {
        if self.is_isolated() {
            Ok(())
        } else {
            Err(Error::NotIsolated(self.clone()))
        }
    }

    fn require_surface(&self) -> Result<()> {
        if self.dim() == 2 {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{self} is not a surface quotient")))
        }
    }

    fn scaled(&self, u: i64) -> Vec<i64> {
        self.acts.iter().map(|&a| (a * u).rem_euclid(self.r)).collect()
    }

    /// Second residue after scaling the first one to 1 (orientation kept).
    pub fn oriented_residue(&self) -> Result<i64> {
        self.require_surface()?;
        self.require_isolated()?;
        let u = mod_inverse(self.acts[0], self.r)?;
        Ok((self.acts[1] * u).rem_euclid(self.r))
    }

    /// Canonical `1/r(1, c)` with `c = min(c, c^{-1})`.
    pub fn normalize_surface(&self) -> Result<Self> {
        let c = self.oriented_residue()?;
        let c = c.min(mod_inverse(c, self.r)?);
        Ok(CyclicQuotient { r: self.r, acts: vec![1, c] })
    }

    /// Both spellings `(c, c^{-1})` of the normalized surface type.
    pub fn aliases(&self) -> Result<(i64, i64)> {
        let c = self.normalize_surface()?.acts[1];
        Ok((c, mod_inverse(c, self.r)?))
    }

    /// Scales so the first residue is 1 when it is a unit; otherwise returns
    /// the reduced residues unchanged.
    pub fn normalize_threefold(&self) -> Self {
        match mod_inverse(self.acts[0], self.r) {
            Ok(u) => CyclicQuotient { r: self.r, acts: self.scaled(u) },
            Err(_) => self.clone(),
        }
    }

    /// Isomorphism invariant: the least sorted residue vector over all unit
    /// scalings (coordinate permutations are absorbed by sorting).
    pub fn canonical_key(&self) -> (i64, Vec<i64>) {
        let best = (1..self.r.max(2))
            .filter(|&u| gcd(u, self.r) == 1)
            .map(|u| {
                let mut v = self.scaled(u);
                v.sort_unstable();
                v
            })
            .min()
            .unwrap_or_else(|| self.acts.clone());
        (self.r, best)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.r == other.r && self.dim() == other.dim() && self.canonical_key() == other.canonical_key()
    }

    /// `1/r(1, c)` display with both aliases, e.g. `1/13(1,5)~(1,8)`.
    pub fn display_with_alias(&self) -> String {
        match self.aliases() {
            Ok((c, ci)) if c != ci => format!("1/{}(1,{c})~(1,{ci})", self.r),
            Ok((c, _)) => format!("1/{}(1,{c})", self.r),
            Err(_) => self.to_string(),
        }
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acts: Vec<String> = self.acts.iter().map(|a| a.to_string()).collect();
        write!(f, "1/{}({})", self.r, acts.join(","))
    }
}

impl fmt::Debug for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn is_isomorphic_surface(q1: &CyclicQuotient, q2: &CyclicQuotient) -> bool {
    match (q1.normalize_surface(), q2.normalize_surface()) {
        (Ok(a), Ok(b)) => a == b,
        _ => q1 == q2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReidTai {
    Terminal,
    StrictlyCanonical,
    NotCanonical,
}

impl ReidTai {
    pub fn is_canonical(self) -> bool {
        self != ReidTai::NotCanonical
    }
}

impl fmt::Display for ReidTai {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReidTai::Terminal => "terminal",
            ReidTai::StrictlyCanonical => "strictly_canonical",
            ReidTai::NotCanonical => "not_canonical",
        })
    }
}

// r * age(g^j) for j = 1..r-1.
fn scaled_ages(r: i64, acts: &[i64]) -> impl Iterator<Item = (i64, i64)> + '_ {
    (1..r).map(move |j| (j, acts.iter().map(|&a| (j * a).rem_euclid(r)).sum()))
}

fn classify(r: i64, acts: &[i64]) -> ReidTai {
    let mut class = ReidTai::Terminal;
    for (_, s) in scaled_ages(r, acts) {
        if s < r {
            return ReidTai::NotCanonical;
        }
        if s == r {
            class = ReidTai::StrictlyCanonical;
        }
    }
    class
}

/// Reid–Tai classification of an isolated threefold quotient.
pub fn reid_tai_class(q: &CyclicQuotient) -> Result<ReidTai> {
    if q.dim() != 3 {
        return Err(Error::InvalidInput(format!("{q} is not a threefold quotient")));
    }
    q.require_isolated()?;
    Ok(classify(q.r, &q.acts))
}

/// Smallest age and the first group element `j` attaining it.
pub fn min_age(q: &CyclicQuotient) -> (i64, Rational) {
    let (j, s) = scaled_ages(q.r, &q.acts)
        .min_by_key(|&(j, s)| (s, j))
        .expect("r >= 2");
    (j, Rational::new(s, q.r))
}

/// Type `A_{r-1}`, i.e. isomorphic to `1/r(1, r-1)`.
pub fn is_du_val(q: &CyclicQuotient) -> bool {
    q.dim() == 2
        && q.is_isolated()
        && q.normalize_surface().map(|n| n.acts[1] == q.r - 1).unwrap_or(false)
}

/// Why a residue was proposed as a dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualTag {
    /// `1 + b ≡ 0`
    BaseInverse,
    /// `1 + d ≡ 0`
    DualInverse,
    /// `b + d ≡ 0`
    Opposite,
    /// `b + d ≡ -1` (Gorenstein)
    Gorenstein,
    /// permuted/scaled `1/9(2,8,14)`
    Exceptional9,
    /// permuted/scaled `1/7(1,9,11)`
    Exceptional7,
    /// permuted/scaled `1/14(1,9,11)`
    Exceptional14,
}

const EXCEPTIONAL: [(i64, [i64; 3], DualTag); 3] = [
    (9, [2, 8, 14], DualTag::Exceptional9),
    (7, [1, 9, 11], DualTag::Exceptional7),
    (14, [1, 9, 11], DualTag::Exceptional14),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCandidate {
    pub residue: i64,
    pub tags: Vec<DualTag>,
    pub class: ReidTai,
}

impl DualCandidate {
    pub fn surface(&self, r: i64) -> CyclicQuotient {
        CyclicQuotient { r, acts: vec![1, self.residue] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualOptions {
    pub base: CyclicQuotient,
    pub duals: Vec<DualCandidate>,
}

fn shortcut_tags(r: i64, b: i64, d: i64) -> Vec<DualTag> {
    let m = |x: i64| x.rem_euclid(r) == 0;
    let mut tags = Vec::new();
    if m(1 + b) {
        tags.push(DualTag::BaseInverse);
    }
    if m(1 + d) {
        tags.push(DualTag::DualInverse);
    }
    if m(b + d) {
        tags.push(DualTag::Opposite);
    }
    if m(b + d + 1) {
        tags.push(DualTag::Gorenstein);
    }
    for (er, triple, tag) in EXCEPTIONAL {
        if er != r {
            continue;
        }
        let mut target = [1, b.rem_euclid(r), d.rem_euclid(r)];
        target.sort_unstable();
        let hit = (1..r).filter(|&u| gcd(u, r) == 1).any(|u| {
            let mut v = triple.map(|t| (t * u).rem_euclid(r));
            v.sort_unstable();
            v == target
        });
        if hit {
            tags.push(tag);
        }
    }
    tags
}

/// Residues `d` with `1/r(1, b, d)` canonical, generated by the congruence
/// shortcut and confirmed by Reid–Tai. The base keeps its orientation.
pub fn dual_candidates(base: &CyclicQuotient) -> Result<DualOptions> {
    let b = base.oriented_residue()?;
    let r = base.r;
    let mut duals = Vec::new();
    for d in (1..r).filter(|&d| gcd(d, r) == 1) {
        let tags = shortcut_tags(r, b, d);
        if tags.is_empty() {
            continue;
        }
        let class = classify(r, &[1, b, d]);
        if class.is_canonical() {
            duals.push(DualCandidate { residue: d, tags, class });
        }
    }
    Ok(DualOptions { base: CyclicQuotient { r, acts: vec![1, b] }, duals })
}

/// Brute-force reference: every residue whose threefold is canonical.
pub fn dual_candidates_brute(base: &CyclicQuotient) -> Result<Vec<i64>> {
    let b = base.oriented_residue()?;
    Ok((1..base.r)
        .filter(|&d| gcd(d, base.r) == 1 && classify(base.r, &[1, b, d]).is_canonical())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSet {
    /// 1-based position in the deterministic enumeration order.
    pub id: usize,
    /// Normalized surface types, sorted.
    pub members: Vec<CyclicQuotient>,
}

/// Cartesian product of the dual candidates of each element of `b`,
/// deduplicated as multisets of normalized surface types.
pub fn dual_sets(b: &[CyclicQuotient]) -> Result<Vec<DualSet>> {
    let mut options = Vec::with_capacity(b.len());
    for q in b {
        let opts = dual_candidates(q)?;
        let mut types: Vec<CyclicQuotient> = opts
            .duals
            .iter()
            .map(|c| c.surface(q.r).normalize_surface())
            .collect::<Result<_>>()?;
        types.sort();
        types.dedup();
        options.push(types);
    }
    let mut sets: BTreeSet<Vec<CyclicQuotient>> = BTreeSet::new();
    let mut current = Vec::with_capacity(b.len());
    fn product(
        options: &[Vec<CyclicQuotient>],
        current: &mut Vec<CyclicQuotient>,
        out: &mut BTreeSet<Vec<CyclicQuotient>>,
    ) {
        match options.split_first() {
            None => {
                let mut m = current.clone();
                m.sort();
                out.insert(m);
            }
            Some((first, rest)) => {
                for q in first {
                    current.push(q.clone());
                    product(rest, current, out);
                    current.pop();
                }
            }
        }
    }
    product(&options, &mut current, &mut sets);
    Ok(sets
        .into_iter()
        .enumerate()
        .map(|(i, members)| DualSet { id: i + 1, members })
        .collect())
}

/// Hirzebruch–Jung chain resolving `1/r(1, b)` in the given orientation.
pub fn resolution_chain(q: &CyclicQuotient) -> Result<Vec<i64>> {
    let b = q.oriented_residue()?;
    hj_expansion(q.r, b)
}

/// Multiset containment up to surface isomorphism; returns the leftover
/// elements of `haystack` when every element of `needles` is found.
pub fn multiset_difference(
    haystack: &[CyclicQuotient],
    needles: &[CyclicQuotient],
) -> Option<Vec<CyclicQuotient>> {
    let mut rest: Vec<CyclicQuotient> = haystack.to_vec();
    for n in needles {
        let pos = rest.iter().position(|h| is_isomorphic_surface(h, n))?;
        rest.remove(pos);
    }
    Some(rest)
}

/// Equality of multisets up to surface isomorphism.
pub fn same_multiset(a: &[CyclicQuotient], b: &[CyclicQuotient]) -> bool {
    a.len() == b.len() && multiset_difference(a, b).is_some_and(|r| r.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: i64, c: i64) -> CyclicQuotient {
        CyclicQuotient::surface(r, c).unwrap()
    }

    fn t(r: i64, a: &[i64]) -> CyclicQuotient {
        CyclicQuotient::new(r, a).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(t(13, &[12, 8]).normalize_surface().unwrap(), s(13, 5));
        assert_eq!(t(13, &[8, 4]).normalize_surface().unwrap(), s(13, 2));
        assert_eq!(t(13, &[8, 4]).aliases().unwrap(), (2, 7));
        assert_eq!(t(5, &[2, 4]).normalize_surface().unwrap(), s(5, 2));
        assert_eq!(t(5, &[2, 4]).aliases().unwrap(), (2, 3));
        assert_eq!(s(7, 1).normalize_surface().unwrap(), s(7, 1));
        assert!(matches!(t(6, &[2, 1]).normalize_surface(), Err(Error::NotIsolated(_))));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic_surface(&s(5, 2), &s(5, 3)));
        assert!(!is_isomorphic_surface(&s(11, 2), &s(11, 10)));
        assert!(is_isomorphic_surface(&s(11, 9), &s(11, 9)));
        assert!(t(13, &[12, 8, 3]).is_isomorphic(&t(13, &[1, 5, 10])));
        assert_eq!(t(13, &[12, 8, 3]).normalize_threefold(), t(13, &[1, 5, 10]));
    }

    #[test]
    fn reid_tai_examples() {
        assert_eq!(reid_tai_class(&t(4, &[1, 1, 1])).unwrap(), ReidTai::NotCanonical);
        assert_eq!(min_age(&t(4, &[1, 1, 1])), (1, Rational::new(3, 4)));
        assert_eq!(reid_tai_class(&t(7, &[1, 1, 5])).unwrap(), ReidTai::StrictlyCanonical);
        assert_eq!(reid_tai_class(&t(7, &[1, 1, 6])).unwrap(), ReidTai::Terminal);
        assert_eq!(reid_tai_class(&t(5, &[2, 4, 1])).unwrap(), ReidTai::Terminal);
        assert!(reid_tai_class(&s(7, 1)).is_err());
    }

    #[test]
    fn du_val_examples() {
        assert!(is_du_val(&s(7, 6)));
        assert!(!is_du_val(&s(3, 1)));
        assert!(is_du_val(&s(2, 1)));
    }

    #[test]
    fn dual_candidate_examples() {
        let res = |q: CyclicQuotient| -> Vec<i64> {
            dual_candidates(&q).unwrap().duals.iter().map(|c| c.residue).collect()
        };
        assert_eq!(res(s(7, 1)), vec![5, 6]);
        assert_eq!(res(s(3, 1)), vec![1, 2]);
        assert_eq!(res(s(2, 1)), vec![1]);
        assert_eq!(res(s(11, 9)), vec![1, 2, 10]);
        assert_eq!(res(s(3, 2)), vec![1, 2]);
    }

    #[test]
    fn exceptional_r14_is_recognized() {
        let opts = dual_candidates(&s(14, 9)).unwrap();
        let c = opts.duals.iter().find(|c| c.residue == 11).unwrap();
        assert_eq!(c.tags, vec![DualTag::Exceptional14]);
        let opts = dual_candidates(&s(9, 4)).unwrap();
        assert!(opts.duals.iter().any(|c| c.tags.contains(&DualTag::Exceptional9)));
    }

    #[test]
    fn dual_set_counts() {
        let e12 = [s(2, 1), s(3, 1), s(7, 1)];
        let sets = dual_sets(&e12).unwrap();
        assert_eq!(sets.len(), 4);
        assert_eq!(sets[3].members, vec![s(2, 1), s(3, 2), s(7, 6)]);
        assert_eq!(dual_sets(&[]).unwrap().len(), 1);
        let e20 = [s(2, 1), s(3, 2), s(11, 9)];
        assert_eq!(dual_sets(&e20).unwrap().len(), 6);
    }

    #[test]
    fn chains() {
        assert_eq!(resolution_chain(&s(7, 6)).unwrap(), vec![2; 6]);
        assert_eq!(resolution_chain(&s(11, 9)).unwrap(), vec![2, 2, 2, 2, 3]);
        assert_eq!(resolution_chain(&s(2, 1)).unwrap(), vec![2]);
    }

    #[test]
    fn multiset_helpers() {
        let hay = [s(5, 2), s(2, 1), s(3, 1)];
        let rest = multiset_difference(&hay, &[s(5, 3), s(3, 1)]).unwrap();
        assert_eq!(rest, vec![s(2, 1)]);
        assert!(multiset_difference(&hay, &[s(3, 2)]).is_none());
        assert!(same_multiset(&[s(5, 2), s(2, 1)], &[s(2, 1), s(5, 3)]));
    }
}
