use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::monomial::{monomial_search, MonomialTriple};
use super::screen::{degree_pattern_screen, DegreeVerdict};
use super::{Isotopism, Verifier};
use crate::error::{Error, Result};
use crate::families::{family_s, family_s_exponents, FamilySParams, NucleiOrders};
use crate::gf::numtheory::{ipow, odd_part, Ratio};
use crate::gf::{Fe, Field};
use crate::linmap::{Bilinear, LinMap, LinPoly, Presemifield};
use crate::planarity::{certified, OracleMode};
use crate::structure::{centralizer_enumerate, presemifield_nuclei};

/// Largest `|L^x|` the census enumerates.
pub const CENSUS_CAP: u64 = 10_000;

fn build(params: &FamilySParams) -> Result<Presemifield> {
    family_s(params, false)
}

/// `P_{q,B,a} -> P_{qbar,B,a'}` with `a' = B^{Q+1}/a`: `N = (x, (B^Q/a) x^Q)`
/// and `L = M = (x^q, y^q)`. Verified before it is returned.
pub fn qbar_isotopism(params: &FamilySParams) -> Result<(Isotopism, Fe)> {
    let source = build(params)?;
    let ctx = source.space().ctx().clone();
    let big_q = params.big_q();
    let a_prime = ctx.div(ctx.pow(params.b, big_q + 1), params.a);
    let target = build(&FamilySParams { k: params.m - params.k, a: a_prime, ..*params })?;
    let space = source.space();
    let half = (params.m / 2) as i64;
    let n = LinMap::from_blocks(
        space,
        vec![
            LinPoly::monomial(&ctx, Fe::ONE, 0),
            LinPoly::zero(),
            LinPoly::zero(),
            LinPoly::monomial(&ctx, ctx.div(ctx.pow(params.b, big_q), params.a), half),
        ],
    );
    let l = LinMap::diagonal_monomial(space, &[Fe::ONE, Fe::ONE], params.k as i64);
    let iso = Isotopism::new(n, l.clone(), l, "qbar flip").expect_verified(&source, &target)?;
    Ok((iso, a_prime))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Diagonal,
    Antidiagonal,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub a_prime: Fe,
    pub t: u32,
    pub case: Case,
    /// The `L` ratio `a2/d2` (diagonal) or `b2/c2` (antidiagonal); the two
    /// roots of its defining equation differ by sign.
    pub ratio: Fe,
    pub isotopism: Isotopism,
}

#[derive(Clone, Debug, Serialize)]
pub struct Branch {
    pub t: u32,
    pub case: Case,
}

/// The values `a'` reached from `a` by the monomial isotopisms with `w1 = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub base: FamilySParams,
    /// Sorted by discrete log.
    pub orbit: Vec<Fe>,
    pub size: usize,
    pub entries: Vec<OrbitEntry>,
    /// Branches whose ratio equation has no root.
    pub absent: Vec<Branch>,
    /// `a'` at `t + m/2` is `-a'` at `t`, for every `t < m/2` and case.
    pub sign_pairing: bool,
}

/// Roots `rho` of `rho^{q+1} = c`, in code order.
fn roots(ctx: &Field, c: Fe, q1: u64) -> Vec<Fe> {
    ctx.nonzero().filter(|&r| ctx.pow(r, q1) == c).collect()
}

/// Isotopisms from `P_{q,B,a}` to `P_{q,B,a'}` with all subfunctions
/// monomial of degree `p^t`: for the diagonal case
/// `rho^{q+1} = B^{1-p^t}` and `a' = a^{p^t} rho^{q(Q+1)}`, for the
/// antidiagonal case `sigma^{q+1} = B^{p^t+1}` and `a' = sigma^{q(Q+1)} / a^{p^t}`.
/// Each triple is checked against the constructed target.
pub fn orbit_of_a(params: &FamilySParams) -> Result<OrbitReport> {
    let source = build(params)?;
    let ctx = source.space().ctx().clone();
    let m = params.m;
    let q = params.q();
    let qq1 = q * (params.big_q() + 1);
    let b = params.b;
    let branches: Vec<(u32, Case)> =
        (0..m).flat_map(|t| [Case::Diagonal, Case::Antidiagonal].into_iter().map(move |c| (t, c))).collect();
    let results: Vec<Result<(Vec<OrbitEntry>, Option<Fe>)>> = branches
        .par_iter()
        .map(|&(t, case)| {
            let s = t as i64;
            let a_s = ctx.frobenius(params.a, s);
            let b_s = ctx.frobenius(b, s);
            let anti = case == Case::Antidiagonal;
            let c = if anti { ctx.mul(b_s, b) } else { ctx.div(b, b_s) };
            let mut entries = Vec::new();
            let mut value = None;
            for rho in roots(&ctx, c, q + 1) {
                let a_prime =
                    if anti { ctx.div(ctx.pow(rho, qq1), a_s) } else { ctx.mul(a_s, ctx.pow(rho, qq1)) };
                value = Some(a_prime);
                let target = build(&FamilySParams { a: a_prime, ..*params })?;
                let l = if anti { [rho, Fe::ONE] } else { [Fe::ONE, ctx.inv(rho)] };
                let mut triple = MonomialTriple::new(t, anti, l, [Fe::ONE, Fe::ONE]);
                if !triple.solve_n(&source, &target) {
                    return Err(Error::Unsupported(format!("no evaluation point for N at t = {t}")));
                }
                let name = format!("orbit t={t} {}", if anti { "antidiagonal" } else { "diagonal" });
                let isotopism = triple.to_isotopism(source.space(), name).expect_verified(&source, &target)?;
                entries.push(OrbitEntry { a_prime, t, case, ratio: rho, isotopism });
            }
            Ok((entries, value))
        })
        .collect();
    let mut entries = Vec::new();
    let mut absent = Vec::new();
    let mut values = vec![None; branches.len()];
    for (i, r) in results.into_iter().enumerate() {
        let (e, v) = r?;
        if e.is_empty() {
            absent.push(Branch { t: branches[i].0, case: branches[i].1 });
        }
        values[i] = v;
        entries.extend(e);
    }
    let idx = |t: u32, case: Case| (t as usize) * 2 + usize::from(case == Case::Antidiagonal);
    let half = m / 2;
    let sign_pairing = (0..half).all(|t| {
        [Case::Diagonal, Case::Antidiagonal].into_iter().all(|c| match (values[idx(t, c)], values[idx(t + half, c)]) {
            (Some(x), Some(y)) => y == ctx.neg(x),
            (None, None) => true,
            _ => false,
        })
    });
    let orbit: BTreeSet<Fe> = entries.iter().map(|e| e.a_prime).collect();
    Ok(OrbitReport {
        base: *params,
        size: orbit.len(),
        orbit: orbit.into_iter().collect(),
        entries,
        absent,
        sign_pairing,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassMember {
    pub a: Fe,
    /// Verified isotopism from the class representative.
    pub witness: Isotopism,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotopyClass {
    /// The admissible exponents `k` and `m - k` identified by the qbar flip.
    pub k_class: [u32; 2],
    pub representative: Fe,
    pub orbit_size: usize,
    pub members: Vec<ClassMember>,
    /// Verified isotopism from the representative to its qbar partner.
    pub qbar_witness: Isotopism,
    pub qbar_partner: Fe,
    pub nuclei: NucleiOrders,
    pub centralizer_order: u64,
    pub condition_c: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    Invariant,
    Degree,
    CoefficientContradiction,
    RestrictedSearch,
}

impl EvidenceKind {
    /// `a` invariant mismatch, `b` degree constraints under Condition (C),
    /// `c` exhausted restricted search.
    pub fn class(self) -> char {
        match self {
            EvidenceKind::Invariant => 'a',
            EvidenceKind::Degree | EvidenceKind::CoefficientContradiction => 'b',
            EvidenceKind::RestrictedSearch => 'c',
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairEvidence {
    pub classes: [usize; 2],
    pub kind: EvidenceKind,
    pub class: char,
    pub detail: String,
}

/// Isotopy classes of Family S of order `p^n` for one non-square `B`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassCensus {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    #[serde(rename = "B")]
    pub b: Fe,
    pub k_classes: Vec<[u32; 2]>,
    /// Size of `L^x`.
    pub a_values: u64,
    pub count: u64,
    /// `(sigma(n) - 1)/2 * (p^{n/4} - 1)/n`.
    pub lower_bound: Ratio,
    /// `(sigma(n) - 1)/2 * (p^{n/4} - 1)`.
    pub upper_bound: u64,
    pub within_bounds: bool,
    /// Every member's own orbit equals its class.
    pub equivalence_closed: bool,
    pub classes: Vec<IsotopyClass>,
    pub pair_evidence: Vec<PairEvidence>,
}

/// Partition all admissible `(k, a)` of Family S over `M = GF(p^{n/2})` into
/// isotopy classes, with a verified witness for every member and evidence
/// separating every pair of classes.
pub fn count_classes_family_s(p: u64, n: u32, b: Fe) -> Result<ClassCensus> {
    if !n.is_multiple_of(4) {
        return Err(Error::Unsupported(format!("Family S needs n divisible by 4, got {n}")));
    }
    let m = n / 2;
    let sigma = odd_part(n as u64)?;
    let per_k = (sigma - 1) / 2;
    let l_units = ipow(p, m / 2) - 1;
    if l_units > CENSUS_CAP {
        return Err(Error::Unsupported(format!("|L^x| = {l_units} exceeds the census cap {CENSUS_CAP}")));
    }
    let mut k_classes: Vec<[u32; 2]> = Vec::new();
    for k in family_s_exponents(m) {
        if k <= m - k {
            k_classes.push([k, m - k]);
        }
    }
    let ctx = crate::gf::make_field(p, m)?;
    let half = m / 2;
    let a_values: Vec<Fe> = ctx.subfield_elements(half).into_iter().filter(|x| !x.is_zero()).collect();
    let mut classes = Vec::new();
    let mut equivalence_closed = true;
    for &[k, kbar] in &k_classes {
        let orbits: Vec<OrbitReport> = a_values
            .par_iter()
            .map(|&a| orbit_of_a(&FamilySParams { p, m, k, b, a }))
            .collect::<Result<_>>()?;
        let orbit_of = |a: Fe| &orbits[a_values.iter().position(|&x| x == a).expect("a' lies in L^x")];
        let mut seen: BTreeSet<Fe> = BTreeSet::new();
        for (i, &a) in a_values.iter().enumerate() {
            if seen.contains(&a) {
                continue;
            }
            let report = &orbits[i];
            for &x in &report.orbit {
                equivalence_closed &= orbit_of(x).orbit == report.orbit;
                seen.insert(x);
            }
            let members = report
                .orbit
                .iter()
                .map(|&x| {
                    let entry = report.entries.iter().find(|e| e.a_prime == x).expect("orbit value has an entry");
                    ClassMember { a: x, witness: entry.isotopism.clone() }
                })
                .collect();
            let params = FamilySParams { p, m, k, b, a };
            let (qbar_witness, qbar_partner) = qbar_isotopism(&params)?;
            let ps = certified(build(&params)?, OracleMode::WhenNeeded)?;
            let nuclei = presemifield_nuclei(&ps)?.orders();
            let cent = centralizer_enumerate(&ps, false)?;
            classes.push(IsotopyClass {
                k_class: [k, kbar],
                representative: a,
                orbit_size: report.size,
                members,
                qbar_witness,
                qbar_partner,
                nuclei,
                centralizer_order: cent.order,
                condition_c: cent.condition_c,
            });
        }
    }
    let pairs: Vec<[usize; 2]> =
        (0..classes.len()).flat_map(|i| (i + 1..classes.len()).map(move |j| [i, j])).collect();
    let pair_evidence: Vec<PairEvidence> = pairs
        .iter()
        .map(|&[i, j]| separate(p, m, b, &classes[i], &classes[j]).map(|(kind, detail)| PairEvidence {
            classes: [i, j],
            kind,
            class: kind.class(),
            detail,
        }))
        .collect::<Result<_>>()?;
    let count = classes.len() as u64;
    let lower_bound = Ratio::new(per_k * l_units, n as u64);
    let upper_bound = per_k * l_units;
    Ok(ClassCensus {
        p,
        n,
        m,
        b,
        k_classes,
        a_values: l_units,
        count,
        lower_bound,
        upper_bound,
        within_bounds: count * lower_bound.den >= lower_bound.num && count <= upper_bound,
        equivalence_closed,
        classes,
        pair_evidence,
    })
}

/// Evidence that two census classes are not isotopic.
fn separate(p: u64, m: u32, b: Fe, c1: &IsotopyClass, c2: &IsotopyClass) -> Result<(EvidenceKind, String)> {
    if c1.nuclei != c2.nuclei {
        return Ok((EvidenceKind::Invariant, format!("nuclei {:?} vs {:?}", c1.nuclei, c2.nuclei)));
    }
    let p1 = certified(build(&FamilySParams { p, m, k: c1.k_class[0], b, a: c1.representative })?, OracleMode::WhenNeeded)?;
    let p2 = certified(build(&FamilySParams { p, m, k: c2.k_class[0], b, a: c2.representative })?, OracleMode::WhenNeeded)?;
    if c1.k_class != c2.k_class {
        if let DegreeVerdict::NonIsotopicByDegree { .. } = degree_pattern_screen(&p1, &p2)? {
            return Ok((EvidenceKind::Degree, "exponent sets incompatible".into()));
        }
        return Err(Error::Unsupported("k-classes not separated by the degree screen".into()));
    }
    let outcome = monomial_search(&p1, &p2, false)?;
    if outcome.witness.is_some() {
        return Err(Error::Unsupported(format!(
            "restricted search joins census classes {:?} and {:?}",
            c1.representative, c2.representative
        )));
    }
    Ok((
        EvidenceKind::RestrictedSearch,
        format!("{} candidates, {} solved, none verified", outcome.candidates, outcome.solved),
    ))
}

/// Check an isotopism between two Family S members given by parameters.
pub fn verify_between(iso: &Isotopism, from: &FamilySParams, to: &FamilySParams) -> Result<bool> {
    let (a, b) = (build(from)?, build(to)?);
    Verifier::new(&a, &b)?.check(&iso.n, &iso.l, &iso.m)
}
