use rayon::prelude::*;
use serde::Serialize;

use super::monomial::{monomial_search, SShape};
use super::screen::{degree_pattern_screen, DegreeVerdict};
use super::{fit_outer, Isotopism, Verifier};
use crate::error::{Error, Result};
use crate::linmap::{Bilinear, LinMap, LinPoly, Point, Presemifield, Product, StructureTensor};
use crate::planarity::{certified, OracleMode};
use crate::structure::{nuclei, unitalize_default, Semifield};

/// Largest field the calibration search accepts.
pub const CALIBRATION_CAP: u64 = 81;

/// Every block-monomial map: each block zero or `c x^{p^t}`.
fn monomial_blocked_maps(space: &crate::linmap::Space) -> Vec<LinMap> {
    let ctx = space.ctx();
    let b = space.blocks();
    let mut options = vec![LinPoly::zero()];
    for t in 0..ctx.m() {
        for c in ctx.nonzero() {
            options.push(LinPoly::monomial(ctx, c, t as i64));
        }
    }
    let total = options.len().pow((b * b) as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let polys: Vec<LinPoly> = (0..b * b)
                .map(|_| {
                    let o = options[idx % options.len()].clone();
                    idx /= options.len();
                    o
                })
                .collect();
            let l = LinMap::from_blocks(space, polys);
            l.is_invertible().then_some(l)
        })
        .collect()
}

/// Exhaustive strong-isotopism search `(N, L, L)` over block-monomial `L`
/// for fields of at most [`CALIBRATION_CAP`] elements; `N` is solved from the
/// products and the triple checked on all basis pairs.
pub fn calibration_search(source: &dyn Bilinear, target: &dyn Bilinear) -> Result<Option<Isotopism>> {
    let space = source.space();
    space.check_same(target.space())?;
    if space.size() > CALIBRATION_CAP {
        return Err(Error::Unsupported(format!("calibration search is capped at {CALIBRATION_CAP} elements")));
    }
    let verifier = Verifier::new(source, target)?;
    let found = monomial_blocked_maps(space).into_par_iter().find_first(|l| {
        fit_outer(source, target, l, l).is_some_and(|n| verifier.check(&n, l, l).unwrap_or(false))
    });
    match found {
        Some(l) => {
            let n = fit_outer(source, target, &l, &l).expect("fit succeeded during the search");
            Ok(Some(Isotopism::new(n, l.clone(), l, "calibration search").expect_verified(source, target)?))
        }
        None => Ok(None),
    }
}

fn s_power(s: &Semifield, x: &Point, e: u64) -> Point {
    let mut acc = s.unit();
    for _ in 0..e {
        acc = s.mul(&acc, x);
    }
    acc
}

/// A non-square of the middle nucleus, as a field, in enumeration order.
fn middle_non_square(s: &Semifield) -> Option<Point> {
    let sp = s.space();
    let report = nuclei(s);
    let basis = &report.middle.basis;
    let p = sp.p() as u64;
    let order = report.nm;
    (1..order).find_map(|mut idx| {
        let mut v = vec![0u32; sp.dim()];
        for b in basis {
            let c = (idx % p) as u32;
            idx /= p;
            for (o, &x) in v.iter_mut().zip(b) {
                *o = (*o + c * x) % sp.p();
            }
        }
        let z = sp.from_coords(&v);
        (s_power(s, &z, (order - 1) / 2) != s.unit()).then_some(z)
    })
}

/// The planar map `x -> x * (a * x)` of the unitalization of `g`, as a
/// certified pre-semifield of its polarization, with the `a` used.
pub fn twisted_square(g: &Presemifield, a: Option<Point>) -> Result<(Presemifield, Point)> {
    let s = unitalize_default(g)?;
    let a = match a {
        Some(a) => a,
        None => middle_non_square(&s).ok_or_else(|| Error::Unsupported("no non-square in the middle nucleus".into()))?,
    };
    let sp = s.space().clone();
    let n = sp.dim();
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (x, y) = (sp.basis(i), sp.basis(j));
            sp.add(&s.mul(&x, &s.mul(&a, &y)), &s.mul(&y, &s.mul(&a, &x)))
        })
        .collect();
    let product = Product::Tensor(StructureTensor::from_table(&sp, table));
    let ps = certified(Presemifield::new(product, g.label().clone()), OracleMode::WhenNeeded)?;
    Ok((ps, a))
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum StrongVerdict {
    StronglyIsotopic { witness: Isotopism },
    IsotopicNotStrong { witness: Isotopism },
    NotIsotopic { restricted_to: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongReport {
    pub verdict: StrongVerdict,
    pub method: &'static str,
    /// Coordinates of the middle-nucleus non-square used for the twisted map.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<u32>>,
}

/// Strong versus plain isotopy of two commutative pre-semifields. An isotopy
/// class of a commutative semifield splits into at most two strong classes,
/// those of `G` and of `x -> x * (a * x)` for a non-square `a` in `N_m`.
pub fn strong_vs_plain_isotopy(f: &Presemifield, g: &Presemifield, a: Option<Point>) -> Result<StrongReport> {
    if f.space().size() <= CALIBRATION_CAP {
        if let Some(w) = calibration_search(f, g)? {
            return Ok(StrongReport { verdict: StrongVerdict::StronglyIsotopic { witness: w }, method: "calibration", twist: None });
        }
        let (twisted, a) = twisted_square(g, a)?;
        let twist = Some(g.space().coords(&a));
        let verdict = match calibration_search(f, &twisted)? {
            Some(w) => StrongVerdict::IsotopicNotStrong { witness: w.then(&twisted_to_g(g, &a)?).expect_verified(f, g)? },
            None => StrongVerdict::NotIsotopic { restricted_to: "block-monomial strong isotopisms".into() },
        };
        return Ok(StrongReport { verdict, method: "calibration", twist });
    }
    if let (Some(_), Some(_)) = (SShape::of_presemifield(f), SShape::of_presemifield(g)) {
        let same_q = SShape::of_presemifield(f).map(|s| s.k) == SShape::of_presemifield(g).map(|s| s.k);
        if same_q {
            let strong = monomial_search(f, g, true)?;
            let verdict = match strong.witness {
                Some(w) => StrongVerdict::StronglyIsotopic { witness: w },
                None => match monomial_search(f, g, false)?.witness {
                    Some(w) => StrongVerdict::IsotopicNotStrong { witness: w },
                    None => StrongVerdict::NotIsotopic { restricted_to: "monomial-shape isotopisms".into() },
                },
            };
            return Ok(StrongReport { verdict, method: "monomial", twist: None });
        }
    }
    if let DegreeVerdict::NonIsotopicByDegree { .. } = degree_pattern_screen(f, g)? {
        return Ok(StrongReport {
            verdict: StrongVerdict::NotIsotopic { restricted_to: "degree screen".into() },
            method: "degree",
            twist: None,
        });
    }
    Err(Error::Unsupported("no restricted search applies to this pair".into()))
}

/// The polarization of `x -> x * (a * x)` is `2 x * (a * y)` since `a` lies in
/// the middle nucleus of a commutative semifield; undo the factor and the
/// twist, then return to `g` through `(id, R_e^-1, L_e^-1)`. Unverified.
fn twisted_to_g(g: &Presemifield, a: &Point) -> Result<Isotopism> {
    let s = unitalize_default(g)?;
    let sp = g.space();
    let half = sp.ctx().from_int((sp.p() as i64 + 1) / 2);
    let id = LinMap::identity(sp);
    let untwist = Isotopism::new(
        LinMap::from_fn(sp, |x| sp.scale(half, x)),
        id.clone(),
        LinMap::from_fn(sp, |y| s.mul(a, y)),
        "untwist",
    );
    let back = Isotopism::new(id, s.r_e().invert()?, s.l_e().invert()?, "Kaplansky inverse");
    Ok(untwist.then(&back))
}
