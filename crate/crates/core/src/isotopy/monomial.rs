use rayon::prelude::*;
use serde::Serialize;

use super::{Isotopism, Verifier};
use crate::error::{Error, Result};
use crate::gf::numtheory::{gcd, ipow};
use crate::gf::{Fe, Field};
use crate::linmap::{Bilinear, BiprojPair, LinMap, Point, Presemifield, Space};

/// A pair `[(1,0,0,B)_q, (0,1,A,0)_{qQ}]` over `GF(p^m)`, `m` even.
/// Family S has `A = a/B`; Zhou–Pott with `r = qQ` has `A = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SShape {
    pub k: u32,
    pub b: Fe,
    pub a_over_b: Fe,
}

impl SShape {
    pub fn of(pair: &BiprojPair) -> Option<SShape> {
        let m = pair.ctx().m();
        let (z, o) = (Fe::ZERO, Fe::ONE);
        let [l0, l1, l2, b] = pair.left();
        let [r0, r1, a, r3] = pair.right();
        let ok = m.is_multiple_of(2)
            && [l0, l1, l2] == [o, z, z]
            && !b.is_zero()
            && [r0, r1, r3] == [z, o, z]
            && pair.l() == (pair.k() + m / 2) % m;
        ok.then_some(SShape { k: pair.k(), b, a_over_b: a })
    }

    pub fn of_presemifield(ps: &Presemifield) -> Option<SShape> {
        ps.biproj().and_then(SShape::of)
    }
}

/// `L` diagonal `(c0 x^s, c1 y^s)` or antidiagonal `(c0 y^s, c1 x^s)` with
/// `s = p^t`; `M` has the same shape with coefficients `(w1 c0, w2 c1)`;
/// `N = (n0 x^s, n1 y^s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialTriple {
    pub t: u32,
    pub antidiagonal: bool,
    pub l: [Fe; 2],
    pub omega: [Fe; 2],
    pub n: [Fe; 2],
}

impl MonomialTriple {
    pub fn new(t: u32, antidiagonal: bool, l: [Fe; 2], omega: [Fe; 2]) -> MonomialTriple {
        MonomialTriple { t, antidiagonal, l, omega, n: [Fe::ZERO; 2] }
    }

    fn m_coeffs(&self, ctx: &Field) -> [Fe; 2] {
        [ctx.mul(self.omega[0], self.l[0]), ctx.mul(self.omega[1], self.l[1])]
    }

    fn side(&self, ctx: &Field, c: [Fe; 2], x: &Point) -> Point {
        let t = self.t as i64;
        let (u, v) = if self.antidiagonal { (x[1], x[0]) } else { (x[0], x[1]) };
        [ctx.mul(c[0], ctx.frobenius(u, t)), ctx.mul(c[1], ctx.frobenius(v, t))]
    }

    fn apply_n(&self, ctx: &Field, x: &Point) -> Point {
        let t = self.t as i64;
        [ctx.mul(self.n[0], ctx.frobenius(x[0], t)), ctx.mul(self.n[1], ctx.frobenius(x[1], t))]
    }

    /// Fill in `N` by evaluating the identity at `(e0, e0)` and `(e0, (0, c))`.
    /// Returns false if no usable evaluation point is found.
    pub fn solve_n(&mut self, source: &dyn Bilinear, target: &dyn Bilinear) -> bool {
        let ctx = source.space().ctx().clone();
        let t = self.t as i64;
        let mc = self.m_coeffs(&ctx);
        let e0: Point = [Fe::ONE, Fe::ZERO];
        let image = |x: &Point, u: &Point| target.mul(&self.side(&ctx, self.l, x), &self.side(&ctx, mc, u));
        let w = source.mul(&e0, &e0);
        if w[0].is_zero() || !w[1].is_zero() {
            return false;
        }
        let n0 = ctx.div(image(&e0, &e0)[0], ctx.frobenius(w[0], t));
        for c in ctx.nonzero().take(8) {
            let u: Point = [Fe::ZERO, c];
            let w = source.mul(&e0, &u);
            if !w[1].is_zero() {
                let n1 = ctx.div(image(&e0, &u)[1], ctx.frobenius(w[1], t));
                self.n = [n0, n1];
                return !n0.is_zero() && !n1.is_zero();
            }
        }
        false
    }

    pub fn holds(&self, v: &Verifier, ctx: &Field) -> bool {
        let mc = self.m_coeffs(ctx);
        v.holds(|x| self.apply_n(ctx, x), |x| self.side(ctx, self.l, x), |x| self.side(ctx, mc, x))
    }

    /// The triple as linear maps, unverified.
    pub fn to_isotopism(&self, space: &Space, provenance: impl Into<String>) -> Isotopism {
        let ctx = space.ctx();
        let t = self.t as i64;
        let side = |c: [Fe; 2]| {
            if self.antidiagonal {
                LinMap::antidiagonal_monomial(space, c, t)
            } else {
                LinMap::diagonal_monomial(space, &c, t)
            }
        };
        Isotopism::new(
            LinMap::diagonal_monomial(space, &self.n, t),
            side(self.l),
            side(self.m_coeffs(ctx)),
            provenance,
        )
    }
}

/// Result of scanning monomial-shape triples between two pairs.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    /// `(t, shape, ratio, w1, w2)` tuples scanned.
    pub candidates: u64,
    /// Candidates satisfying the first-component coefficient equations.
    pub solved: u64,
    /// Solved candidates whose triple passes the basis-pair check.
    pub verified: u64,
    pub strong_only: bool,
    /// First verified triple in scan order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Isotopism>,
}

/// Scan every monomial triple between two pairs of the shape
/// `[(1,0,0,B)_q, (0,1,A,0)_{qQ}]` with the same `q`.
///
/// `L` is normalized to `(x^s, y^s / rho)` or `(rho y^s, x^s)` (precomposing
/// with `gamma_a` of the source reaches every scaling) and `M = (w1, w2) L`
/// with `w1, w2` in `E = GF(p^gcd(k,m))`, or `w1 = w2 = 1` when only strong
/// isotopisms are wanted. Every candidate solving the first-component
/// equations is checked on all basis pairs.
pub fn monomial_search(source: &Presemifield, target: &Presemifield, strong_only: bool) -> Result<SearchOutcome> {
    let (s1, s2) = match (SShape::of_presemifield(source), SShape::of_presemifield(target)) {
        (Some(a), Some(b)) if a.k == b.k => (a, b),
        _ => return Err(Error::Unsupported("monomial search needs two S-shaped pairs with the same q".into())),
    };
    source.space().check_same(target.space())?;
    let ctx = source.space().ctx().clone();
    let m = ctx.m();
    let p = ctx.p() as u64;
    let q1 = ipow(p, s1.k) + 1;
    let e = gcd(s1.k as u64, m as u64) as u32;
    let omegas: Vec<[Fe; 2]> = if strong_only {
        vec![[Fe::ONE, Fe::ONE]]
    } else {
        let units: Vec<Fe> = ctx.subfield_elements(e).into_iter().filter(|x| !x.is_zero()).collect();
        units.iter().flat_map(|&a| units.iter().map(move |&b| [a, b])).collect()
    };
    let verifier = Verifier::new(source, target)?;
    let ratios: Vec<Fe> = ctx.nonzero().collect();
    let mut outer: Vec<(u32, bool, Fe)> = Vec::with_capacity(2 * m as usize * ratios.len());
    for t in 0..m {
        for anti in [false, true] {
            outer.extend(ratios.iter().map(|&r| (t, anti, r)));
        }
    }
    let per: Vec<(u64, u64, Option<MonomialTriple>)> = outer
        .par_iter()
        .map(|&(t, anti, rho)| {
            let bs = ctx.frobenius(s1.b, t as i64);
            let (mut solved, mut verified, mut first) = (0u64, 0u64, None);
            for &w in &omegas {
                // diagonal: a2 = 1, d2 = 1/rho; antidiagonal: b2 = rho, c2 = 1.
                let ok = if anti {
                    ctx.mul(ctx.mul(bs, s2.b), w[1]) == ctx.mul(ctx.pow(rho, q1), w[0])
                } else {
                    ctx.mul(w[0], bs) == ctx.mul(ctx.mul(s2.b, ctx.pow(ctx.inv(rho), q1)), w[1])
                };
                if !ok {
                    continue;
                }
                solved += 1;
                let l = if anti { [rho, Fe::ONE] } else { [Fe::ONE, ctx.inv(rho)] };
                let mut cand = MonomialTriple::new(t, anti, l, w);
                if cand.solve_n(source, target) && cand.holds(&verifier, &ctx) {
                    verified += 1;
                    first = first.or(Some(cand));
                }
            }
            (solved, verified, first)
        })
        .collect();
    let solved = per.iter().map(|x| x.0).sum();
    let verified = per.iter().map(|x| x.1).sum();
    let witness = match per.iter().find_map(|x| x.2) {
        Some(c) => Some(c.to_isotopism(source.space(), "monomial search").expect_verified(source, target)?),
        None => None,
    };
    Ok(SearchOutcome {
        candidates: outer.len() as u64 * omegas.len() as u64,
        solved,
        verified,
        strong_only,
        witness,
    })
}
