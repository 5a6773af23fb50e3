use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::numtheory::{gcd, ipow, is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest field order for which log/Zech tables are built.
pub const MAX_ORDER: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// A field element, stored as its discrete log to the canonical generator.
///
/// The value is meaningless without the [`FieldCtx`] it came from; all
/// arithmetic goes through the context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(NONE);
    pub const ONE: Fe = Fe(0);

    pub fn is_zero(self) -> bool {
        self.0 == NONE
    }

    pub fn dlog(self) -> Option<u64> {
        (!self.is_zero()).then_some(self.0 as u64)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dlog() {
            None => write!(f, "0"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

impl Serialize for Fe {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.dlog() {
            None => s.serialize_str("zero"),
            Some(k) => s.serialize_u64(k),
        }
    }
}

impl<'de> Deserialize<'de> for Fe {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Fe, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Log(u32),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Log(k) if k != NONE => Ok(Fe(k)),
            Raw::Word(w) if w == "zero" => Ok(Fe::ZERO),
            _ => Err(serde::de::Error::custom("expected a discrete log or \"zero\"")),
        }
    }
}

pub type Field = Arc<FieldCtx>;

/// Table-driven arithmetic for GF(p^m) in the polynomial basis of a
/// primitive modulus.
pub struct FieldCtx {
    p: u32,
    m: u32,
    order: u64,
    units: u32,
    modulus: Vec<u32>,
    /// code of g^i
    exp: Vec<u32>,
    /// discrete log of a code
    log: Vec<u32>,
    /// log(1 + g^i)
    zech: Vec<u32>,
    /// p^i mod (q - 1)
    frob: Vec<u32>,
    digits: Vec<u32>,
    prime_field: Vec<Fe>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

/// Build (or fetch from the process-wide cache) the context for GF(p^m).
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    if p < 3 || !is_prime(p) {
        return Err(Error::FieldParams(format!("p = {p} is not an odd prime")));
    }
    if m == 0 {
        return Err(Error::FieldParams("extension degree must be positive".into()));
    }
    let order = p
        .checked_pow(m)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(Error::FieldTooLarge(p.saturating_pow(m)))?;
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let ctx = Arc::new(FieldCtx::build(p as u32, m, order)?);
    cache.lock().unwrap().insert((p, m), ctx.clone());
    Ok(ctx)
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let p = p as u64;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for d in (m..2 * m - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for i in 0..m {
            prod[d - m + i] = (prod[d - m + i] + (p - c) * f[i] as u64) % p;
        }
        prod[d] = 0;
    }
    prod.truncate(m);
    prod.into_iter().map(|x| x as u32).collect()
}

fn x_power_mod(e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let mut base = vec![0u32; m];
    if m == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn is_one(v: &[u32]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// The monic degree-m polynomial with the smallest lower-coefficient code
/// (c_{m-1} most significant) whose root has order p^m - 1.
fn primitive_modulus(p: u32, m: u32, order: u64) -> Vec<u32> {
    let units = order - 1;
    let factors = prime_factors(units);
    for code in 0..order {
        let mut f: Vec<u32> = (0..m).map(|i| ((code / ipow(p as u64, i)) % p as u64) as u32).collect();
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if !is_one(&x_power_mod(units, &f, p)) {
            continue;
        }
        if factors.iter().all(|&l| !is_one(&x_power_mod(units / l, &f, p))) {
            return f;
        }
    }
    unreachable!("every finite field has a primitive element")
}

impl FieldCtx {
    fn build(p: u32, m: u32, order: u64) -> Result<FieldCtx> {
        let modulus = primitive_modulus(p, m, order);
        let units = (order - 1) as u32;
        let digits: Vec<u32> = (0..m).map(|i| ipow(p as u64, i) as u32).collect();
        let encode = |v: &[u32]| v.iter().zip(&digits).map(|(c, w)| c * w).sum::<u32>();
        let mut exp = vec![0u32; units as usize];
        let mut log = vec![NONE; order as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for i in 0..units {
            let code = encode(&cur);
            if log[code as usize] != NONE {
                return Err(Error::FieldParams(format!("modulus {modulus:?} is not primitive")));
            }
            exp[i as usize] = code;
            log[code as usize] = i;
            let top = cur[m as usize - 1];
            for j in (1..m as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..m as usize {
                cur[j] = (cur[j] + (p - top) * modulus[j]) % p;
            }
        }
        let zech = exp
            .iter()
            .map(|&c| {
                let low = c % p;
                let c1 = if low == p - 1 { c - low } else { c + 1 };
                log[c1 as usize]
            })
            .collect();
        let frob = (0..m)
            .map(|i| ((p as u64).pow(i) % units as u64) as u32)
            .collect();
        let prime_field = (0..p).map(|c| Fe(log[c as usize])).collect();
        let ctx = FieldCtx { p, m, order, units, modulus, exp, log, zech, frob, digits, prime_field };
        for j in 0..m {
            debug_assert_eq!(ctx.code(ctx.basis(j)), ctx.digits[j as usize]);
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `p^m - 1`, the order of the multiplicative group.
    pub fn units(&self) -> u64 {
        self.units as u64
    }

    /// Coefficients of the modulus, lowest degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        Fe(1 % self.units)
    }

    /// The j-th polynomial basis vector, i.e. the j-th power of the root of the modulus.
    pub fn basis(&self, j: u32) -> Fe {
        assert!(j < self.m);
        if self.m == 1 {
            Fe::ONE
        } else {
            Fe(j)
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == NONE {
            return b;
        }
        if b.0 == NONE {
            return a;
        }
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + self.units - a.0 };
        let z = self.zech[d as usize];
        if z == NONE {
            return Fe::ZERO;
        }
        let s = a.0 + z;
        Fe(if s >= self.units { s - self.units } else { s })
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == NONE {
            return a;
        }
        let s = a.0 + self.units / 2;
        Fe(if s >= self.units { s - self.units } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == NONE || b.0 == NONE {
            return Fe::ZERO;
        }
        let s = a.0 + b.0;
        Fe(if s >= self.units { s - self.units } else { s })
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero");
        Fe((self.units - a.0) % self.units)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.is_zero() {
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let u = self.units as u64;
        Fe(((a.0 as u64 * (e % u)) % u) as u32)
    }

    /// Power with a signed exponent; negative exponents need a nonzero base.
    pub fn pow_signed(&self, a: Fe, e: i64) -> Fe {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a), e.unsigned_abs())
        }
    }

    /// `x^{p^i}`, with `i` taken mod m.
    #[inline]
    pub fn frobenius(&self, a: Fe, i: i64) -> Fe {
        if a.0 == NONE {
            return a;
        }
        let f = self.frob[i.rem_euclid(self.m as i64) as usize];
        Fe(((a.0 as u64 * f as u64) % self.units as u64) as u32)
    }

    /// Image of an integer under `Z -> F_p -> GF(p^m)`.
    pub fn from_int(&self, c: i64) -> Fe {
        self.prime_field[c.rem_euclid(self.p as i64) as usize]
    }

    /// `g^k` for the canonical generator `g`.
    pub fn gen_pow(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.units as i64) as u32)
    }

    /// Check that a deserialized element belongs to this context.
    pub fn validate(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() || a.0 < self.units {
            Ok(a)
        } else {
            Err(Error::Format(format!("discrete log {} out of range for {self:?}", a.0)))
        }
    }

    /// Integer code `sum c_i p^i` of the coordinate vector.
    pub fn code(&self, a: Fe) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.exp[a.0 as usize]
        }
    }

    pub fn from_code(&self, code: u32) -> Fe {
        Fe(self.log[code as usize])
    }

    pub fn write_coords(&self, a: Fe, out: &mut [u32]) {
        let mut c = self.code(a);
        for slot in out.iter_mut().take(self.m as usize) {
            *slot = c % self.p;
            c /= self.p;
        }
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        let mut v = vec![0; self.m as usize];
        self.write_coords(a, &mut v);
        v
    }

    pub fn from_coords(&self, v: &[u32]) -> Fe {
        let code: u32 = v.iter().zip(&self.digits).map(|(c, w)| (c % self.p) * w).sum();
        self.from_code(code)
    }

    /// All elements in code order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order as u32).map(|c| self.from_code(c))
    }

    /// Nonzero elements in discrete-log order.
    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (0..self.units).map(Fe)
    }

    pub fn is_square(&self, a: Fe) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(a.0.is_multiple_of(2))
    }

    /// Whether `a` lies in `(M^x)^s`.
    pub fn power_subgroup_test(&self, a: Fe, s: u64) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let g = gcd(s, self.units as u64);
        Ok((a.0 as u64).is_multiple_of(g))
    }

    /// Membership in the subfield GF(p^s); requires `s | m`.
    pub fn in_subfield(&self, a: Fe, s: u32) -> bool {
        assert!(s >= 1 && self.m.is_multiple_of(s), "GF(p^{s}) is not a subfield of {self:?}");
        if a.is_zero() {
            return true;
        }
        let step = self.units as u64 / (ipow(self.p as u64, s) - 1);
        (a.0 as u64).is_multiple_of(step)
    }

    /// Elements of the subfield GF(p^s) (zero first, then by discrete log).
    pub fn subfield_elements(&self, s: u32) -> Vec<Fe> {
        assert!(s >= 1 && self.m.is_multiple_of(s));
        let step = (self.units as u64 / (ipow(self.p as u64, s) - 1)) as u32;
        std::iter::once(Fe::ZERO).chain((0..self.units).step_by(step as usize).map(Fe)).collect()
    }

    /// Evaluate a polynomial with F_p coefficients (lowest degree first).
    pub fn eval_fp_poly(&self, coeffs: &[u32], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.code(f.generator()), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_field(4, 2).is_err());
        assert!(make_field(2, 3).is_err());
        assert!(make_field(3, 0).is_err());
        assert!(make_field(3, 30).is_err());
    }

    #[test]
    fn modulus_is_smallest_primitive() {
        let f = make_field(3, 2).unwrap();
        // x^2 + 1 is irreducible but x has order 4; x^2 + x + 2 is primitive
        assert_eq!(f.modulus(), &[2, 1, 1]);
    }

    #[test]
    fn arithmetic_matches_codes_in_gf9() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let ca = f.coords(a);
                let cb = f.coords(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), f.from_coords(&sum));
            }
            assert!(f.add(a, f.neg(a)).is_zero());
        }
    }
}
