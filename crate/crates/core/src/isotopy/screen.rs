use serde::Serialize;

use super::family_s::{qbar_isotopism, EvidenceKind};
use super::monomial::{monomial_search, SearchOutcome, SShape};
use super::Isotopism;
use crate::error::{Error, Result};
use crate::families::{Family, FamilySParams, NucleiOrders};
use crate::linmap::{Bilinear, BiprojPair, Presemifield, MAX_TENSOR_DIM};
use crate::planarity::{certified, OracleMode};
use crate::structure::{centralizer_enumerate, presemifield_nuclei};

/// `k1 = k_sign * k2'` and `l1 = l_sign * l2'` mod m, where `(k2', l2')` is
/// `(k2, l2)` or, when `swapped`, `(l2, k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRelation {
    pub swapped: bool,
    pub k_sign: i8,
    pub l_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DegreeVerdict {
    Compatible { exponents: [[u32; 2]; 2], relations: Vec<DegreeRelation> },
    NonIsotopicByDegree { exponents: [[u32; 2]; 2] },
    Unknown { reason: String },
}

/// Exponent conditions the screen needs on the pair it is anchored at:
/// `k != +-l`, neither exponent `0` or `m/2`, and `m > 2`.
fn exponent_hypotheses(pair: &BiprojPair) -> std::result::Result<(), String> {
    let m = pair.ctx().m();
    let (k, l) = (pair.k(), pair.l());
    if m <= 2 {
        return Err(format!("m = {m} is too small"));
    }
    if k == l || (k + l) % m == 0 {
        return Err(format!("k = {k} and l = {l} are congruent up to sign"));
    }
    for e in [k, l] {
        if e == 0 || (m.is_multiple_of(2) && e == m / 2) {
            return Err(format!("exponent {e} is 0 or m/2"));
        }
    }
    Ok(())
}

fn condition_c(ps: &Presemifield) -> std::result::Result<(), String> {
    if ps.label().family != Family::S || ps.label().reduced_to.is_some() {
        return Err("Condition (C) is only certified for Family S".into());
    }
    match centralizer_enumerate(ps, false) {
        Ok(r) if r.condition_c => Ok(()),
        Ok(r) => Err(format!("Condition (C) fails: index {} divisible by {}", r.index, r.zsigmondy_prime)),
        Err(e) => Err(e.to_string()),
    }
}

fn relations(m: u32, [k1, l1]: [u32; 2], [k2, l2]: [u32; 2]) -> Vec<DegreeRelation> {
    let same = |a: u32, b: u32, sign: i8| if sign > 0 { a % m == b % m } else { (a + b).is_multiple_of(m) };
    let mut out = Vec::new();
    for swapped in [false, true] {
        let (k, l) = if swapped { (l2, k2) } else { (k2, l2) };
        for k_sign in [1i8, -1] {
            for l_sign in [1i8, -1] {
                if same(k1, k, k_sign) && same(l1, l, l_sign) {
                    out.push(DegreeRelation { swapped, k_sign, l_sign });
                }
            }
        }
    }
    out
}

/// Exponent comparison of two biprojective pre-semifields over the same `M`:
/// an isotopism forces `k1 = +-k2, l1 = +-l2` or `k1 = +-l2, l1 = +-k2` mod m
/// once one side meets the exponent hypotheses and Condition (C). Either
/// side may serve as the anchor.
pub fn degree_pattern_screen(p1: &Presemifield, p2: &Presemifield) -> Result<DegreeVerdict> {
    let (a, b) = match (p1.biproj(), p2.biproj()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(DegreeVerdict::Unknown { reason: "both inputs must be biprojective pairs".into() }),
    };
    a.space().check_same(b.space())?;
    let m = a.ctx().m();
    let exponents = [[a.k(), a.l()], [b.k(), b.l()]];
    let mut reasons = Vec::new();
    let mut anchored = false;
    for (ps, pair) in [(p1, a), (p2, b)] {
        match exponent_hypotheses(pair).and_then(|_| condition_c(ps)) {
            Ok(()) => {
                anchored = true;
                break;
            }
            Err(r) => reasons.push(r),
        }
    }
    if !anchored {
        return Ok(DegreeVerdict::Unknown { reason: reasons.join("; ") });
    }
    let rel = relations(m, exponents[0], exponents[1]);
    Ok(if rel.is_empty() {
        DegreeVerdict::NonIsotopicByDegree { exponents }
    } else {
        DegreeVerdict::Compatible { exponents, relations: rel }
    })
}

/// The Family S versus Zhou–Pott check with `r = qQ` on both sides.
#[derive(Clone, Debug, Serialize)]
pub struct ZpCheck {
    /// Zero/nonzero patterns of `(a2, c2, a3, c3, b3, d3)` examined.
    pub patterns: u32,
    /// Patterns compatible with the four second-component equations and
    /// invertibility of `L` and `M`.
    pub consistent_patterns: u32,
    pub search: SearchOutcome,
    pub non_isotopic: bool,
}

/// Patterns of `(a2, c2, a3, c3, b3, d3)` that survive
/// `a2^{qQ} d3 = d1`, `c2 b3^{qQ} = d1 (a/B)`, `a2^{qQ} c3 = 0`, `c2 a3^{qQ} = 0`
/// with `d1, a/B` nonzero, `(a2, c2) != 0` and `(a3, c3) != 0`.
fn zero_patterns() -> (u32, u32) {
    let mut consistent = 0;
    for mask in 0u32..64 {
        let nz = |i: u32| mask >> i & 1 == 1;
        let (a2, c2, a3, c3, b3, d3) = (nz(0), nz(1), nz(2), nz(3), nz(4), nz(5));
        let ok = (a2 && d3) && (c2 && b3) && !(a2 && c3) && !(c2 && a3) && (a2 || c2) && (a3 || c3);
        consistent += u32::from(ok);
    }
    (64, consistent)
}

/// Family S source against a Zhou–Pott target with the same `q` and `r = qQ`.
pub fn zp_noniso_check(s: &Presemifield, zp: &Presemifield) -> Result<ZpCheck> {
    match (SShape::of_presemifield(s), SShape::of_presemifield(zp)) {
        (Some(a), Some(b)) if !a.a_over_b.is_zero() && b.a_over_b.is_zero() && a.k == b.k => {}
        _ => return Err(Error::Unsupported("expected Family S and Zhou–Pott pairs with matching exponents".into())),
    }
    let (patterns, consistent_patterns) = zero_patterns();
    let search = monomial_search(s, zp, false)?;
    let non_isotopic = consistent_patterns == 0 && search.verified == 0;
    Ok(ZpCheck { patterns, consistent_patterns, search, non_isotopic })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Isotopic { strong: bool, witness: Box<Isotopism> },
    NotIsotopic { evidence: EvidenceKind, class: char, detail: String },
    Unknown { reason: String },
}

impl Verdict {
    fn not(kind: EvidenceKind, detail: impl Into<String>) -> Verdict {
        Verdict::NotIsotopic { evidence: kind, class: kind.class(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub verdict: Verdict,
    pub nuclei: [Option<NucleiOrders>; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<DegreeVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient_check: Option<ZpCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchOutcome>,
}

fn ensure_certified(ps: &Presemifield) -> Result<Presemifield> {
    if ps.is_certified_planar() {
        Ok(ps.clone())
    } else {
        certified(ps.clone(), OracleMode::WhenNeeded)
    }
}

fn s_params(ps: &Presemifield) -> Option<FamilySParams> {
    let l = ps.label();
    if l.family != Family::S || l.reduced_to.is_some() {
        return None;
    }
    Some(FamilySParams { p: l.p, m: l.m, k: l.k?, b: l.b?, a: l.a? })
}

/// Isotopy verdict: invariants first, then the degree screen, then the
/// coefficient systems and restricted search for pairs of Family S or
/// Zhou–Pott shape.
pub fn compare(a: &Presemifield, b: &Presemifield) -> Result<CompareReport> {
    let (a, b) = (ensure_certified(a)?, ensure_certified(b)?);
    let mut report = CompareReport {
        verdict: Verdict::Unknown { reason: String::new() },
        nuclei: [None, None],
        degree: None,
        coefficient_check: None,
        search: None,
    };
    let (sa, sb) = (a.space().size(), b.space().size());
    if sa != sb {
        report.verdict = Verdict::not(EvidenceKind::Invariant, format!("orders {sa} and {sb} differ"));
        return Ok(report);
    }
    if a.space() == b.space() {
        if let Some(id) = Isotopism::identity(a.space(), "identity").verified(&a, &b)? {
            report.verdict = Verdict::Isotopic { strong: true, witness: Box::new(id) };
            return Ok(report);
        }
    }
    if a.space().dim() <= MAX_TENSOR_DIM {
        let na = presemifield_nuclei(&a)?.orders();
        let nb = presemifield_nuclei(&b)?.orders();
        report.nuclei = [Some(na), Some(nb)];
        if na != nb {
            report.verdict = Verdict::not(EvidenceKind::Invariant, format!("nuclei {na:?} and {nb:?} differ"));
            return Ok(report);
        }
    }
    if a.space() != b.space() || a.biproj().is_none() || b.biproj().is_none() {
        report.verdict = Verdict::Unknown { reason: "invariants agree and no structural test applies".into() };
        return Ok(report);
    }
    let degree = degree_pattern_screen(&a, &b)?;
    report.degree = Some(degree.clone());
    if let DegreeVerdict::NonIsotopicByDegree { exponents } = degree {
        report.verdict = Verdict::not(EvidenceKind::Degree, format!("exponents {exponents:?} incompatible"));
        return Ok(report);
    }
    let (ka, kb) = match (SShape::of_presemifield(&a), SShape::of_presemifield(&b)) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            report.verdict = Verdict::Unknown { reason: "degree screen compatible or declined; no coefficient test for these shapes".into() };
            return Ok(report);
        }
    };
    let m = a.space().ctx().m();
    match (ka.a_over_b.is_zero(), kb.a_over_b.is_zero()) {
        (false, true) | (true, false) if ka.k == kb.k => {
            let (s, zp) = if kb.a_over_b.is_zero() { (&a, &b) } else { (&b, &a) };
            if let Err(reason) = condition_c(s) {
                report.verdict = Verdict::Unknown { reason };
                return Ok(report);
            }
            let check = zp_noniso_check(s, zp)?;
            report.verdict = if check.non_isotopic {
                Verdict::not(
                    EvidenceKind::CoefficientContradiction,
                    format!(
                        "{} of {} zero patterns consistent; {} monomial candidates, none verified",
                        check.consistent_patterns, check.patterns, check.search.candidates
                    ),
                )
            } else {
                Verdict::Unknown { reason: "coefficient check inconclusive".into() }
            };
            report.coefficient_check = Some(check);
        }
        (false, false) if ka.k == kb.k || ka.k + kb.k == m => {
            // Bring b to the exponent of a with the qbar flip when needed.
            let flip = if ka.k == kb.k {
                None
            } else {
                let params = s_params(&b).ok_or_else(|| Error::Unsupported("qbar flip needs Family S labels".into()))?;
                let (iso, a_prime) = qbar_isotopism(&params)?;
                Some((iso, crate::families::family_s(&FamilySParams { k: ka.k, a: a_prime, ..params }, false)?))
            };
            let target = flip.as_ref().map_or(&b, |f| &f.1);
            let search = monomial_search(&a, target, false)?;
            report.verdict = match (&search.witness, &flip) {
                (Some(w), None) => Verdict::Isotopic { strong: w.strong, witness: Box::new(w.clone()) },
                (Some(w), Some((iso, _))) => {
                    let joined = w.then(&iso.inverse()?).expect_verified(&a, &b)?;
                    Verdict::Isotopic { strong: joined.strong, witness: Box::new(joined) }
                }
                (None, _) => Verdict::not(
                    EvidenceKind::RestrictedSearch,
                    format!("{} monomial candidates, {} solved, none verified", search.candidates, search.solved),
                ),
            };
            report.search = Some(search);
        }
        _ => report.verdict = Verdict::Unknown { reason: "no coefficient test for this exponent pairing".into() },
    }
    Ok(report)
}
