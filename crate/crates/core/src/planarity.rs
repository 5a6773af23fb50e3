//! Planarity certification: the projective-line criterion for biprojective
//! pairs and a brute-force rank oracle for any bilinear product.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::linmap::{rank_in_place, Bilinear, BiprojPair, FpMatrix, Point, Presemifield, Space};

/// Largest field the brute-force oracle accepts.
pub const ORACLE_CAP: u64 = 531_441;

/// A point of the projective line over `M`: `(u : 1)` or `(1 : 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Finite(Fe),
    Infinity,
}

impl Direction {
    pub fn point(self) -> Point {
        match self {
            Direction::Finite(u) => [u, Fe::ONE],
            Direction::Infinity => [Fe::ONE, Fe::ZERO],
        }
    }
}

/// A nonzero `x` with `x * a = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    pub a: Vec<Fe>,
    pub x: Vec<Fe>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckerRun {
    pub pass: bool,
    pub kernel_computations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub seconds: f64,
}

/// Timings are ignored.
impl PartialEq for CheckerRun {
    fn eq(&self, o: &CheckerRun) -> bool {
        self.pass == o.pass && self.kernel_computations == o.kernel_computations && self.witness == o.witness
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarityCertificate {
    pub planar: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biproj: Option<CheckerRun>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<CheckerRun>,
}

/// When the brute-force oracle runs alongside the projective-line criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Only when no other checker applies.
    WhenNeeded,
    /// Whenever the field is within [`ORACLE_CAP`].
    WithinCap,
    /// Always; exceeding the cap is an error.
    Required,
}

fn full_rank_columns<B: Bilinear + ?Sized>(b: &B, a: &Point, buf: &mut [u32]) -> bool {
    let sp = b.space();
    let n = sp.dim();
    let mut col = [0u32; 64];
    for i in 0..n {
        let e = sp.basis(i);
        sp.write_coords(&b.mul(&e, a), &mut col[..n]);
        for r in 0..n {
            buf[r * n + i] = col[r];
        }
    }
    rank_in_place(sp.p(), n, n, buf) == n
}

fn kernel_vector<B: Bilinear + ?Sized>(b: &B, a: &Point) -> Point {
    let sp = b.space();
    let n = sp.dim();
    let cols: Vec<Vec<u32>> = (0..n).map(|i| sp.coords(&b.mul(&sp.basis(i), a))).collect();
    let ker = FpMatrix::from_columns(sp.p(), n, &cols).kernel();
    let x = sp.from_coords(&ker[0]);
    assert!(!sp.is_zero(&x) && sp.is_zero(&b.mul(&x, a)), "kernel witness does not verify");
    x
}

fn witness(sp: &Space, direction: Option<Direction>, a: Point, x: Point) -> Witness {
    let b = sp.blocks();
    Witness { direction, a: a[..b].to_vec(), x: x[..b].to_vec() }
}

/// The projective-line criterion: the pair is planar iff `x -> x * (u, v)` is
/// injective for every `(u : v)` in `P^1(M)`. Performs `p^m + 1` rank
/// computations; on failure the first failing direction (finite `u` by code,
/// then infinity) is returned with a verified kernel vector.
pub fn is_planar_biproj(pair: &BiprojPair) -> CheckerRun {
    let start = Instant::now();
    let ctx = pair.ctx();
    let q = ctx.order() as usize;
    let n = pair.space().dim();
    let direction = |i: usize| if i < q { Direction::Finite(ctx.from_code(i as u32)) } else { Direction::Infinity };
    let failure = (0..=q)
        .into_par_iter()
        .map_init(|| vec![0u32; n * n], |buf, i| (i, full_rank_columns(pair, &direction(i).point(), buf)))
        .find_first(|&(_, ok)| !ok)
        .map(|(i, _)| {
            let d = direction(i);
            let a = d.point();
            witness(pair.space(), Some(d), a, kernel_vector(pair, &a))
        });
    CheckerRun {
        pass: failure.is_none(),
        kernel_computations: q as u64 + 1,
        witness: failure,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Rank test of `x -> x * a` for every nonzero `a`, in index order.
pub fn is_planar_bruteforce<B: Bilinear + ?Sized>(b: &B) -> Result<CheckerRun> {
    let start = Instant::now();
    let sp = b.space();
    let size = sp.size();
    if size > ORACLE_CAP {
        return Err(Error::OracleCap(size));
    }
    let n = sp.dim();
    let failure = (1..size as usize)
        .into_par_iter()
        .map_init(|| vec![0u32; n * n], |buf, i| (i, full_rank_columns(b, &sp.point_at(i as u64), buf)))
        .find_first(|&(_, ok)| !ok)
        .map(|(i, _)| {
            let a = sp.point_at(i as u64);
            witness(sp, None, a, kernel_vector(b, &a))
        });
    Ok(CheckerRun {
        pass: failure.is_none(),
        kernel_computations: size - 1,
        witness: failure,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Run the applicable checkers and require them to agree.
pub fn certify_with(ps: &Presemifield, mode: OracleMode) -> Result<PlanarityCertificate> {
    let biproj = ps.biproj().map(is_planar_biproj);
    let within = ps.space().size() <= ORACLE_CAP;
    let run_oracle = match mode {
        OracleMode::WhenNeeded => biproj.is_none(),
        OracleMode::WithinCap => biproj.is_none() || within,
        OracleMode::Required => true,
    };
    let bruteforce = if run_oracle { Some(is_planar_bruteforce(ps)?) } else { None };
    let planar = match (&biproj, &bruteforce) {
        (Some(x), Some(y)) if x.pass != y.pass => {
            return Err(Error::CheckerDisagreement(format!(
                "projective-line criterion says {}, brute force says {}",
                x.pass, y.pass
            )))
        }
        (Some(x), _) => x.pass,
        (None, Some(y)) => y.pass,
        (None, None) => unreachable!("some checker always runs"),
    };
    Ok(PlanarityCertificate { planar, biproj, bruteforce })
}

/// Both checkers when the field is within the oracle cap, otherwise whichever applies.
pub fn certify(ps: &Presemifield) -> Result<PlanarityCertificate> {
    certify_with(ps, OracleMode::WithinCap)
}

/// Certify and attach the certificate; fails with [`Error::NotPlanar`] when
/// the product has zero divisors.
pub fn certified(mut ps: Presemifield, mode: OracleMode) -> Result<Presemifield> {
    let cert = certify_with(&ps, mode)?;
    if !cert.planar {
        return Err(Error::NotPlanar);
    }
    ps.attach_certificate(cert);
    Ok(ps)
}
