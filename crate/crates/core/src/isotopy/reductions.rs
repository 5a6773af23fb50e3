use serde::Serialize;

use super::Isotopism;
use crate::error::{condition, Result};
use crate::families::{bh, check_b4, dickson, family_s, FamilySParams};
use crate::gf::numtheory::{gcd, gcd_u128, ipow, is_prime, odd_part};
use crate::gf::Fe;
use crate::linmap::{Bilinear, BiprojPair, LinMap, LinPoly, Presemifield, Product};

/// `[f, g] -> [g, f]` with `N = (x, y) -> (y, x)` and `L = M = id`. Verified.
pub fn component_swap(pair: &BiprojPair) -> Result<(BiprojPair, Isotopism)> {
    let swapped = pair.swap_components();
    let space = pair.space();
    let id = LinMap::identity(space);
    let n = LinMap::antidiagonal_monomial(space, [Fe::ONE, Fe::ONE], 0);
    let iso = Isotopism::new(n, id.clone(), id, "component swap").expect_verified(pair, &swapped)?;
    Ok((swapped, iso))
}

#[derive(Clone, Debug, Serialize)]
pub struct DicksonReduction {
    #[serde(rename = "A")]
    pub a_over_b: Fe,
    pub d1: Fe,
    pub d1_prime: Fe,
    /// `((A^{Q+1} - 1) / (A (1 - A^{Q+1})))^{Q+1}`; `N4` is bijective iff this is not 1.
    pub n4_test: Fe,
    pub isotopism: Isotopism,
}

/// `N = (x, d1 y + d1' y^Q)` with `d1 = 1/(1 - A^{Q+1})`, `d1' = -A d1`
/// carries `[(1,0,0,B)_1, (0,1,A,0)_Q]` to `[(1,0,0,B)_1, (0,1,0,0)_Q]` with
/// `L = M = id`.
fn reduce(source: &Presemifield, target: &Presemifield, a_over_b: Fe, big_q: u64, half: u32) -> Result<DicksonReduction> {
    let space = source.space();
    let ctx = space.ctx();
    let aq1 = ctx.pow(a_over_b, big_q + 1);
    let one_minus = ctx.sub(Fe::ONE, aq1);
    assert!(!one_minus.is_zero(), "A^(Q+1) = 1 for a non-square A");
    let d1 = ctx.inv(one_minus);
    let d1_prime = ctx.neg(ctx.mul(a_over_b, d1));
    let n4_test = ctx.pow(ctx.div(ctx.sub(aq1, Fe::ONE), ctx.mul(a_over_b, one_minus)), big_q + 1);
    let n = LinMap::from_blocks(
        space,
        vec![
            LinPoly::monomial(ctx, Fe::ONE, 0),
            LinPoly::zero(),
            LinPoly::zero(),
            LinPoly::from_terms(ctx, [(0, d1), (half as i64, d1_prime)]),
        ],
    );
    let id = LinMap::identity(space);
    let isotopism = Isotopism::new(n, id.clone(), id, "q = 1 Dickson reduction").expect_verified(source, target)?;
    Ok(DicksonReduction { a_over_b, d1, d1_prime, n4_test, isotopism })
}

/// The Family S shape with `q = 1` is strongly isotopic to the Dickson pair
/// `[(1,0,0,B)_1, (0,1,0,0)_Q]`.
pub fn dickson_reduction_q1(p: u64, m: u32, b: Fe, a: Fe) -> Result<DicksonReduction> {
    let source = family_s(&FamilySParams { p, m, k: 0, b, a }, true)?;
    let target = dickson(p, m, m / 2, b, false)?;
    let ctx = source.space().ctx().clone();
    let big_q = ipow(p, m / 2);
    reduce(&source, &target, ctx.div(a, b), big_q, m / 2)
}

/// The Budaghyan–Helleseth pair at `q = Q`, `[(1,0,0,a)_1, (0,1,a^{(Q-1)/2},0)_Q]`,
/// reduced to the Dickson pair with the same `N`.
pub fn bh_reduction_q_big(p: u64, m: u32, a: Fe) -> Result<DicksonReduction> {
    let source = bh(p, m, m / 2, a, false)?;
    let target = dickson(p, m, m / 2, a, false)?;
    let coeff = match source.product() {
        Product::Biproj(pair) => pair.right()[2],
        _ => unreachable!("bh builds a pair"),
    };
    reduce(&source, &target, coeff, ipow(p, m / 2), m / 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct BierbrauerBound {
    pub p: u64,
    pub s: u32,
    pub t: u32,
    /// `gcd(Q^2 + Q + q + 1, Q^3 + Q^2 + Q + 1)` for B4, `gcd(Q + q + 1, Q^2 + Q + 1)` for B3.
    pub gcd: u64,
    /// `gcd(Q^3 - q, Q^3 + Q^2 + Q + 1)` for B4, `gcd(Q^2 - q, Q^2 + Q + 1)` for B3.
    pub gcd_alt: u64,
    pub sigma_s: u64,
    pub bound: u64,
}

fn bigcd(a: u128, b: u128) -> u64 {
    gcd_u128(a, b) as u64
}

/// Class bound for B4 of order `p^{4s}`: at most `8 sigma(s)`, from the gcd
/// that limits how far `X -> cX` can move `a`.
pub fn b4_class_bound(p: u64, s: u32, t: u32) -> Result<BierbrauerBound> {
    check_b4(p, s, t)?;
    let (big_q, q) = (ipow(p, s) as u128, ipow(p, t) as u128);
    let total = big_q.pow(3) + big_q.pow(2) + big_q + 1;
    let g = bigcd(big_q * big_q + big_q + q + 1, total);
    let alt = bigcd((big_q.pow(3) as i128 - q as i128).unsigned_abs(), total);
    if g != 4 || alt != 4 {
        return Err(condition("b4", format!("gcd values {g}, {alt} differ from 4")));
    }
    let sigma_s = odd_part(s as u64)?;
    Ok(BierbrauerBound { p, s, t, gcd: g, gcd_alt: alt, sigma_s, bound: 8 * sigma_s })
}

/// Class bound for B3 of order `p^{3s}`: at most `9 sigma(s)`.
pub fn b3_class_bound(p: u64, s: u32, t: u32) -> Result<BierbrauerBound> {
    let ok = s > 0 && t > 0 && (s as u64 / gcd(s as u64, t as u64)) % 2 == 1 && ipow(p, s) % 3 == 1 && ipow(p, t) % 3 == 1;
    if !ok {
        return Err(condition("b3", "s/gcd(s,t) odd and q = Q = 1 mod 3 required"));
    }
    let (big_q, q) = (ipow(p, s) as u128, ipow(p, t) as u128);
    let total = big_q * big_q + big_q + 1;
    let g = bigcd(big_q + q + 1, total);
    let alt = bigcd((big_q.pow(2) as i128 - q as i128).unsigned_abs(), total);
    let sigma_s = odd_part(s as u64)?;
    Ok(BierbrauerBound { p, s, t, gcd: g, gcd_alt: alt, sigma_s, bound: 9 * sigma_s })
}

/// Every `(p, s, t)` with `p^{4s} <= limit`, `1 <= t < 4s`, meeting the B4 conditions.
pub fn b4_admissible(limit: u64) -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while p.pow(4) <= limit {
        if is_prime(p) {
            let mut s = 1u32;
            while (p as u128).pow(4 * s) <= limit as u128 {
                for t in 1..4 * s {
                    if check_b4(p, s, t).is_ok() {
                        out.push((p, s, t));
                    }
                }
                s += 1;
            }
        }
        p += 2;
    }
    out
}
