//! Subfield embeddings, the degree tower attached to a Frobenius exponent,
//! and distinguished subgroups of the multiplicative group.

use serde::Serialize;

use super::field::{make_field, Fe, Field};
use super::numtheory::{gcd, ipow, is_prime, prime_part};
use crate::error::{Error, Result};

/// Field homomorphism GF(p^s) -> GF(p^m) sending the small generator to a
/// root of the small modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Field,
    big: Field,
    /// discrete log (in the big field) of the image of the small generator
    image_log: u64,
    /// inverse of the generator index modulo p^s - 1
    index_inv: u64,
    step: u64,
}

fn inverse_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {n}");
    t0.rem_euclid(n as i128) as u64
}

impl Embedding {
    pub fn new(small: &Field, big: &Field) -> Result<Embedding> {
        if small.p() != big.p() || !big.m().is_multiple_of(small.m()) {
            return Err(Error::FieldParams(format!("{small:?} does not embed in {big:?}")));
        }
        let small_units = small.units();
        let step = big.units() / small_units;
        let j = (1..=small_units)
            .filter(|&j| gcd(j, small_units) == 1)
            .find(|&j| big.eval_fp_poly(small.modulus(), big.gen_pow((j * step) as i64)).is_zero())
            .expect("a primitive root of the small modulus lies in the big field");
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            image_log: j * step,
            index_inv: inverse_mod(j, small_units),
            step,
        })
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn embed(&self, x: Fe) -> Fe {
        match x.dlog() {
            None => Fe::ZERO,
            Some(k) => self.big.gen_pow(((k as u128 * self.image_log as u128) % self.big.units() as u128) as i64),
        }
    }

    /// Preimage of a big-field element, or `None` when it is outside the subfield.
    pub fn project(&self, y: Fe) -> Option<Fe> {
        match y.dlog() {
            None => Some(Fe::ZERO),
            Some(k) if k % self.step == 0 => {
                let units = self.small.units();
                Some(self.small.gen_pow((((k / self.step) as u128 * self.index_inv as u128) % units as u128) as i64))
            }
            Some(_) => None,
        }
    }
}

/// Degrees of the subfields attached to the exponent `k`: `m/2`, `e = gcd(k, m)`,
/// `d = gcd(k + m/2, m)` and `e/2`, when they make sense.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Tower {
    pub m: u32,
    pub k: u32,
    pub half: Option<u32>,
    pub e: u32,
    pub d: Option<u32>,
    pub e_half: Option<u32>,
}

impl Tower {
    pub fn new(m: u32, k: u32) -> Tower {
        let e = gcd(k as u64, m as u64) as u32;
        let half = m.is_multiple_of(2).then_some(m / 2);
        Tower {
            m,
            k,
            half,
            e,
            d: half.map(|h| gcd((k + h) as u64, m as u64) as u32),
            e_half: e.is_multiple_of(2).then_some(e / 2),
        }
    }

    /// The distinct subfield degrees, increasing.
    pub fn degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = [Some(1), self.half, Some(self.e), self.d, self.e_half, Some(self.m)]
            .into_iter()
            .flatten()
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Embeddings of every proper subfield in the tower into `big`.
    pub fn embeddings(&self, big: &Field) -> Result<Vec<Embedding>> {
        self.degrees()
            .into_iter()
            .filter(|&s| s < big.m())
            .map(|s| Embedding::new(&make_field(big.p() as u64, s)?, big))
            .collect()
    }
}

/// The Sylow `r`-subgroup of the multiplicative group, generated by
/// `g^{(p^m-1)/|R|}`, listed by increasing power of that generator. Trivial
/// when `r` does not divide `p^m - 1`.
pub fn sylow_subgroup_r(ctx: &Field, r: u64) -> Result<Vec<Fe>> {
    let units = ctx.units();
    if !is_prime(r) {
        return Err(Error::NumberTheory(format!("{r} is not prime")));
    }
    let size = prime_part(units, r);
    let h = (units / size) as i64;
    Ok((0..size as i64).map(|i| ctx.gen_pow(i * h)).collect())
}

/// Write a nonzero square `x` of GF(p^m), m even, as `c * w` with
/// `c` in GF(p^{m/2})^x and `w^{Q+1} = 1`.
///
/// There are two such decompositions, `(c, w)` and `(-c, -w)`. The one whose
/// `c` is a square of GF(p^{m/2}) is returned; when `-1` is itself a square
/// there (Q = 1 mod 4) that does not separate them and the smaller discrete
/// log of `c` decides.
pub fn decompose_square(ctx: &Field, x: Fe) -> Result<(Fe, Fe)> {
    let m = ctx.m();
    if !m.is_multiple_of(2) {
        return Err(Error::FieldParams("decompose_square needs an even extension degree".into()));
    }
    if !ctx.is_square(x)? {
        return Err(Error::NumberTheory("decompose_square needs a square".into()));
    }
    let big_q = ipow(ctx.p() as u64, m / 2);
    let units = ctx.units();
    let lx = x.dlog().unwrap();
    // lx = (Q+1) a + (Q-1) b (mod Q^2 - 1); search a over Z/(Q-1)
    let c_logs = (0..big_q - 1).map(|a| (big_q + 1) * a % units);
    for lc in c_logs {
        let rest = (lx + units - lc) % units;
        if rest.is_multiple_of(big_q - 1) {
            let c = ctx.gen_pow(lc as i64);
            let w = ctx.gen_pow(rest as i64);
            let (c2, w2) = (ctx.neg(c), ctx.neg(w));
            // log in the subfield is the big log divided by Q + 1
            let sub_square = |y: Fe| (y.dlog().unwrap() / (big_q + 1)).is_multiple_of(2);
            let keep_first = match (sub_square(c), sub_square(c2)) {
                (true, false) => true,
                (false, true) => false,
                _ => c.dlog() <= c2.dlog(),
            };
            return Ok(if keep_first { (c, w) } else { (c2, w2) });
        }
    }
    unreachable!("every square splits as a norm-one part times a subfield part")
}
