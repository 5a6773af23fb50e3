//! Validated constructors for the commutative planar families, biprojective
//! (over `M x M`) and univariate (over a single field).

use serde::{Deserialize, Serialize};

use crate::error::{condition, Result};
use crate::gf::numtheory::{gcd, ipow};
use crate::gf::{make_field, Fe, Field};
use crate::linmap::{BiprojPair, DoComponent, DoPoly, DoTerm, Factor, LinTerm, Presemifield, Product, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "field")]
    Field,
    #[serde(rename = "albert")]
    Albert,
    #[serde(rename = "dickson")]
    Dickson,
    #[serde(rename = "zp")]
    ZhouPott,
    #[serde(rename = "bh")]
    Bh,
    #[serde(rename = "S")]
    S,
    #[serde(rename = "zkw")]
    Zkw,
    #[serde(rename = "b3")]
    B3,
    #[serde(rename = "b4")]
    B4,
    #[serde(rename = "cmdy_plus")]
    CmDyPlus,
    #[serde(rename = "cmdy_minus")]
    CmDyMinus,
    #[serde(rename = "cg")]
    Cg,
    #[serde(rename = "g")]
    Ganley,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Field => "field",
            Family::Albert => "albert",
            Family::Dickson => "dickson",
            Family::ZhouPott => "zp",
            Family::Bh => "bh",
            Family::S => "S",
            Family::Zkw => "zkw",
            Family::B3 => "b3",
            Family::B4 => "b4",
            Family::CmDyPlus => "cmdy_plus",
            Family::CmDyMinus => "cmdy_minus",
            Family::Cg => "cg",
            Family::Ganley => "g",
        }
    }

    pub fn is_biprojective(self) -> bool {
        matches!(self, Family::Field | Family::Albert | Family::Dickson | Family::ZhouPott | Family::Bh | Family::S)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Family tag and the parameters a constructor was called with.
///
/// `m` is the degree of the coefficient field: `M` for pairs, the whole
/// field for univariate maps. `reduced_to` is set when a degenerate parameter
/// choice was admitted and the map collapses to another family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub family: Family,
    pub p: u64,
    pub m: u32,
    /// Dimension of the whole semifield over F_p.
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Fe>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<Fe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_to: Option<Family>,
}

/// Expected nucleus orders `(|N_l|, |N_m|, |N_r|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleiOrders {
    #[serde(rename = "Nl")]
    pub left: u64,
    #[serde(rename = "Nm")]
    pub middle: u64,
    #[serde(rename = "Nr")]
    pub right: u64,
}

impl NucleiOrders {
    fn commutative(p: u64, l: u32, mid: u32) -> NucleiOrders {
        NucleiOrders { left: ipow(p, l), middle: ipow(p, mid), right: ipow(p, l) }
    }
}

fn gcd32(a: u32, b: u32) -> u32 {
    gcd(a as u64, b as u64) as u32
}

impl Label {
    fn new(family: Family, p: u64, m: u32, n: u32) -> Label {
        Label { family, p, m, n, k: None, j: None, s: None, t: None, a: None, b: None, reduced_to: None }
    }

    /// Nucleus orders listed for the family, or `None` for degenerate members.
    pub fn predicted_nuclei(&self) -> Option<NucleiOrders> {
        if self.reduced_to.is_some() {
            return None;
        }
        let p = self.p;
        let m = self.m;
        let n = self.n;
        let k = self.k.unwrap_or(0);
        Some(match self.family {
            Family::Field => NucleiOrders::commutative(p, n, n),
            Family::Albert => {
                let d = gcd32(k, n);
                NucleiOrders::commutative(p, d, d)
            }
            Family::Dickson => NucleiOrders::commutative(p, gcd32(k, m), m),
            Family::ZhouPott => {
                let d = gcd32(k, m);
                NucleiOrders::commutative(p, gcd32(self.j.unwrap_or(0), d), d)
            }
            Family::Bh => {
                let d = gcd32(k, m);
                NucleiOrders::commutative(p, d, 2 * d)
            }
            Family::S => {
                let e = gcd32(k, m);
                NucleiOrders::commutative(p, e / 2, e)
            }
            Family::Zkw | Family::B3 => {
                let d = gcd32(self.s?, self.t?);
                NucleiOrders::commutative(p, d, d)
            }
            Family::B4 => {
                let d = gcd32(2 * self.s?, self.t?);
                NucleiOrders::commutative(p, d / 2, d)
            }
            Family::Cg => NucleiOrders::commutative(p, 1, m),
            Family::Ganley | Family::CmDyPlus | Family::CmDyMinus => NucleiOrders::commutative(p, 1, 1),
        })
    }
}

fn ctx_for(p: u64, m: u32) -> Result<Field> {
    make_field(p, m)
}

fn require(ok: bool, family: &'static str, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(condition(family, what))
    }
}

fn nonzero(ctx: &Field, x: Fe, family: &'static str, name: &str) -> Result<Fe> {
    ctx.validate(x)?;
    require(!x.is_zero(), family, &format!("{name} must be nonzero"))?;
    Ok(x)
}

fn non_square(ctx: &Field, x: Fe, family: &'static str, name: &str) -> Result<Fe> {
    nonzero(ctx, x, family, name)?;
    require(!ctx.is_square(x)?, family, &format!("{name} must be a non-square"))?;
    Ok(x)
}

fn generates(ctx: &Field, a: Fe, family: &'static str) -> Result<Fe> {
    nonzero(ctx, a, family, "a")?;
    let log = a.dlog().unwrap_or(0);
    require(gcd(log, ctx.units()) == 1, family, "a must generate the multiplicative group")?;
    Ok(a)
}

fn pair(ctx: &Field, k: u32, left: [Fe; 4], l: u32, right: [Fe; 4], label: Label) -> Presemifield {
    Presemifield::new(Product::Biproj(BiprojPair::new(ctx, k, left, l, right)), label)
}

/// `1 <= k < m`, `m/gcd(k, m)` odd and `k != m/2`: the exponents admitted for Family S.
pub fn family_s_exponents(m: u32) -> Vec<u32> {
    if !m.is_multiple_of(2) {
        return Vec::new();
    }
    (1..m).filter(|&k| (m / gcd32(k, m)) % 2 == 1).collect()
}

/// Parameters of a Family S member, with the derived exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySParams {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    #[serde(rename = "B")]
    pub b: Fe,
    pub a: Fe,
}

impl FamilySParams {
    pub fn q(&self) -> u64 {
        ipow(self.p, self.k)
    }

    pub fn big_q(&self) -> u64 {
        ipow(self.p, self.m / 2)
    }

    /// Exponent of `r = q Q`, reduced mod m.
    pub fn l(&self) -> u32 {
        (self.k + self.m / 2) % self.m
    }

    pub fn e(&self) -> u32 {
        gcd32(self.k, self.m)
    }

    pub fn d(&self) -> u32 {
        gcd32(self.k + self.m / 2, self.m)
    }
}

/// `[(1,0,0,B)_q, (0,1,a/B,0)_{qQ}]` over `M = GF(p^m)`.
///
/// Requires `m` even, `m/gcd(k,m)` odd, `B` a non-square and `a` a nonzero
/// element of `L = GF(p^{m/2})`. With `permissive`, `a = 0` (giving Zhou–Pott)
/// and `k` in `{0, m/2}` (giving Dickson) are admitted and tagged.
pub fn family_s(params: &FamilySParams, permissive: bool) -> Result<Presemifield> {
    const F: &str = "S";
    let FamilySParams { p, m, k, b, a } = *params;
    let ctx = ctx_for(p, m)?;
    require(m % 2 == 0, F, "m must be even")?;
    require(k < m, F, "k must satisfy 0 < k < m")?;
    let half = m / 2;
    let mut reduced = None;
    if permissive && (k == 0 || k == half) {
        reduced = Some(Family::Dickson);
    } else {
        require(k != 0, F, "k must satisfy 0 < k < m")?;
        let e = params.e();
        require((m / e) % 2 == 1, F, "m/e odd violated")?;
        require(e.is_multiple_of(2), F, "e must be even")?;
        // Always true once m/e is odd; kept as an executable check.
        require(params.d() * 2 == e, F, "gcd(k + m/2, m) = e/2 violated")?;
    }
    non_square(&ctx, b, F, "B")?;
    ctx.validate(a)?;
    if a.is_zero() {
        require(permissive, F, "a must lie in L^x")?;
        reduced = reduced.or(Some(Family::ZhouPott));
    } else {
        require(ctx.in_subfield(a, half), F, "a must lie in L^x")?;
    }
    let mut label = Label::new(Family::S, p, m, 2 * m);
    label.k = Some(k);
    label.a = Some(a);
    label.b = Some(b);
    label.reduced_to = reduced;
    let z = Fe::ZERO;
    let o = Fe::ONE;
    Ok(pair(&ctx, k, [o, z, z, b], k + half, [z, o, ctx.div(a, b), z], label))
}

/// `X^2` over GF(p^n).
pub fn field(p: u64, n: u32) -> Result<Presemifield> {
    let ctx = ctx_for(p, n)?;
    Ok(Presemifield::new(Product::Do(DoPoly::univariate(&ctx, &[(Fe::ONE, 0, 0)], &[])), Label::new(Family::Field, p, n, n)))
}

/// `[(0,1,0,0)_1, (1,0,0,a)_1]` over GF(p^m): the field of order p^{2m} as a pair.
pub fn field_pair(p: u64, m: u32, a: Fe) -> Result<Presemifield> {
    let ctx = ctx_for(p, m)?;
    non_square(&ctx, a, "field", "a")?;
    let mut label = Label::new(Family::Field, p, m, 2 * m);
    label.a = Some(a);
    let (z, o) = (Fe::ZERO, Fe::ONE);
    Ok(pair(&ctx, 0, [z, o, z, z], 0, [o, z, z, a], label))
}

fn degenerate_k(k: u32, m: u32, permissive: bool, family: &'static str) -> Result<Option<Family>> {
    if k == 0 || k == m {
        require(permissive, family, "k must satisfy 0 < k < m")?;
        return Ok(Some(Family::Field));
    }
    require(k < m, family, "k must satisfy 0 < k < m")?;
    Ok(None)
}

/// `[(1,0,0,a)_1, (0,1,0,0)_q]` with `a` a non-square.
pub fn dickson(p: u64, m: u32, k: u32, a: Fe, permissive: bool) -> Result<Presemifield> {
    const F: &str = "dickson";
    let ctx = ctx_for(p, m)?;
    let reduced = degenerate_k(k, m, permissive, F)?;
    non_square(&ctx, a, F, "a")?;
    let mut label = Label::new(Family::Dickson, p, m, 2 * m);
    label.k = Some(k);
    label.a = Some(a);
    label.reduced_to = reduced;
    let (z, o) = (Fe::ZERO, Fe::ONE);
    Ok(pair(&ctx, 0, [o, z, z, a], k, [z, o, z, z], label))
}

/// The commutative twisted field `X^{q+1}` over GF(p^n), q = p^k, n/gcd(k,n) odd.
pub fn albert_univariate(p: u64, n: u32, k: u32, permissive: bool) -> Result<Presemifield> {
    const F: &str = "albert";
    let ctx = ctx_for(p, n)?;
    let reduced = degenerate_k(k, n, permissive, F)?;
    if reduced.is_none() {
        require((n / gcd32(k, n)) % 2 == 1, F, "n/gcd(k,n) must be odd")?;
    }
    let mut label = Label::new(Family::Albert, p, n, n);
    label.k = Some(k);
    label.reduced_to = reduced;
    Ok(Presemifield::new(Product::Do(DoPoly::univariate(&ctx, &[(Fe::ONE, k, 0)], &[])), label))
}

/// `[(0, a^{(q-1)/2}, 1, 0)_q, (a^{(q+1)/2}, 0, 0, 1)_q]` over `M = GF(p^{n/2})`,
/// `0 < k < n/2`, `n/gcd(k,n)` odd and `a` a non-square of `M`.
pub fn albert_pair(p: u64, n: u32, k: u32, a: Fe, permissive: bool) -> Result<Presemifield> {
    const F: &str = "albert";
    require(n.is_multiple_of(2), F, "n must be even for the pair form")?;
    let m = n / 2;
    let ctx = ctx_for(p, m)?;
    let reduced = degenerate_k(k, m, permissive, F)?;
    if reduced.is_none() {
        require((n / gcd32(k, n)) % 2 == 1, F, "n/gcd(k,n) must be odd")?;
    }
    non_square(&ctx, a, F, "a")?;
    let q = ipow(p, k);
    let mut label = Label::new(Family::Albert, p, m, n);
    label.k = Some(k);
    label.a = Some(a);
    label.reduced_to = reduced;
    let (z, o) = (Fe::ZERO, Fe::ONE);
    let left = [z, ctx.pow(a, (q - 1) / 2), o, z];
    let right = [ctx.pow(a, q.div_ceil(2)), z, z, o];
    Ok(pair(&ctx, k, left, k, right, label))
}

/// Albert's family over a field of degree `n`: the pair form when `n` is even
/// and `a` is given, otherwise `X^{q+1}`.
pub fn albert(p: u64, n: u32, k: u32, a: Option<Fe>, permissive: bool) -> Result<Presemifield> {
    match a {
        Some(a) if n.is_multiple_of(2) => albert_pair(p, n, k, a, permissive),
        _ => albert_univariate(p, n, k, permissive),
    }
}

/// `[(1,0,0,a)_q, (0,1,0,0)_r]`, `q = p^k`, `r = p^j`, `m/gcd(k,m)` odd.
pub fn zhou_pott(p: u64, m: u32, k: u32, j: u32, a: Fe, permissive: bool) -> Result<Presemifield> {
    const F: &str = "zp";
    let ctx = ctx_for(p, m)?;
    require(k < m && j < m, F, "0 < j,k < m required")?;
    let reduced = match (k, j) {
        (0, 0) => Some(Family::Field),
        (0, _) => Some(Family::Dickson),
        (_, 0) => Some(Family::Bh),
        _ => None,
    };
    require(reduced.is_none() || permissive, F, "0 < j,k < m required")?;
    if k != 0 {
        require((m / gcd32(k, m)) % 2 == 1, F, "m/gcd(k,m) must be odd")?;
    }
    non_square(&ctx, a, F, "a")?;
    let mut label = Label::new(Family::ZhouPott, p, m, 2 * m);
    label.k = Some(k);
    label.j = Some(j);
    label.a = Some(a);
    label.reduced_to = reduced;
    let (z, o) = (Fe::ZERO, Fe::ONE);
    Ok(pair(&ctx, k, [o, z, z, a], j, [z, o, z, z], label))
}

/// Budaghyan–Helleseth: `[(0,1,0,0)_1, (1,0,0,a)_q]` when `m/gcd(k,m)` is odd,
/// `[(1,0,0,a)_1, (0,1,a^{(q-1)/2},0)_q]` when it is even.
pub fn bh(p: u64, m: u32, k: u32, a: Fe, permissive: bool) -> Result<Presemifield> {
    const F: &str = "bh";
    let ctx = ctx_for(p, m)?;
    let reduced = degenerate_k(k, m, permissive, F)?;
    non_square(&ctx, a, F, "a")?;
    let mut label = Label::new(Family::Bh, p, m, 2 * m);
    label.k = Some(k);
    label.a = Some(a);
    label.reduced_to = reduced;
    let (z, o) = (Fe::ZERO, Fe::ONE);
    let odd = k == 0 || (m / gcd32(k, m)) % 2 == 1;
    Ok(if odd {
        pair(&ctx, 0, [z, o, z, z], k, [o, z, z, a], label)
    } else {
        let q = ipow(p, k);
        pair(&ctx, 0, [o, z, z, a], k, [z, o, ctx.pow(a, (q - 1) / 2), z], label)
    })
}

/// `X^{q+1} - a^{Q-1} X^{q Q + Q^e}` over GF(p^{(e+1) s}), with `Q = p^s`, `q = p^t`.
fn bierbrauer_poly(ctx: &Field, s: u32, t: u32, a: Fe, e: u32) -> DoPoly {
    let big_q = ipow(ctx.p() as u64, s);
    let c = ctx.neg(ctx.pow(a, big_q - 1));
    DoPoly::univariate(ctx, &[(Fe::ONE, t, 0), (c, t + s, e * s)], &[])
}

fn check_zkw(s: u32, t: u32) -> Result<()> {
    const F: &str = "zkw";
    require(s > 0 && t > 0, F, "s, t must be positive")?;
    let d = gcd32(s, t);
    let (s1, t1) = (s / d, t / d);
    require(s1 % 2 == 1, F, "s/gcd(s,t) must be odd")?;
    require((s1 + t1) % 3 == 0, F, "s' + t' must be divisible by 3")
}

/// Zha–Kyureghyan–Wang over GF(p^{3s}).
pub fn zkw(p: u64, s: u32, t: u32, a: Fe) -> Result<Presemifield> {
    check_zkw(s, t)?;
    let ctx = ctx_for(p, 3 * s)?;
    generates(&ctx, a, "zkw")?;
    let mut label = Label::new(Family::Zkw, p, 3 * s, 3 * s);
    label.s = Some(s);
    label.t = Some(t);
    label.a = Some(a);
    Ok(Presemifield::new(Product::Do(bierbrauer_poly(&ctx, s, t, a, 2)), label))
}

/// Bierbrauer's B3 over GF(p^{3s}).
pub fn b3(p: u64, s: u32, t: u32, a: Fe) -> Result<Presemifield> {
    const F: &str = "b3";
    require(s > 0 && t > 0, F, "s, t must be positive")?;
    require((s / gcd32(s, t)) % 2 == 1, F, "s/gcd(s,t) must be odd")?;
    let ctx = ctx_for(p, 3 * s)?;
    require(ipow(p, t) % 3 == 1 && ipow(p, s) % 3 == 1, F, "q = Q = 1 mod 3 required")?;
    generates(&ctx, a, F)?;
    let mut label = Label::new(Family::B3, p, 3 * s, 3 * s);
    label.s = Some(s);
    label.t = Some(t);
    label.a = Some(a);
    Ok(Presemifield::new(Product::Do(bierbrauer_poly(&ctx, s, t, a, 2)), label))
}

/// The B4 conditions: `2s/gcd(2s,t)` odd and `q = Q = 1 mod 4`.
pub fn check_b4(p: u64, s: u32, t: u32) -> Result<()> {
    const F: &str = "b4";
    require(s > 0 && t > 0, F, "s, t must be positive")?;
    require((2 * s / gcd32(2 * s, t)) % 2 == 1, F, "2s/d must be odd")?;
    require(ipow(p, t) % 4 == 1 && ipow(p, s) % 4 == 1, F, "q = Q = 1 mod 4 required")
}

/// Bierbrauer's B4 over GF(p^{4s}).
pub fn b4(p: u64, s: u32, t: u32, a: Fe) -> Result<Presemifield> {
    check_b4(p, s, t)?;
    let ctx = ctx_for(p, 4 * s)?;
    generates(&ctx, a, "b4")?;
    let mut label = Label::new(Family::B4, p, 4 * s, 4 * s);
    label.s = Some(s);
    label.t = Some(t);
    label.a = Some(a);
    Ok(Presemifield::new(Product::Do(bierbrauer_poly(&ctx, s, t, a, 3)), label))
}

/// Coulter–Matthews / Ding–Yuan `X^{10} +- X^6 - X^2` over GF(3^m), m >= 5 odd.
pub fn cm_dy(p: u64, m: u32, plus: bool) -> Result<Presemifield> {
    let family = if plus { Family::CmDyPlus } else { Family::CmDyMinus };
    let name = family.name();
    require(p == 3, name, "p = 3 required")?;
    require(m >= 5 && m % 2 == 1, name, "m >= 5 odd required")?;
    let ctx = ctx_for(p, m)?;
    let six = if plus { Fe::ONE } else { ctx.neg(Fe::ONE) };
    let f = DoPoly::univariate(&ctx, &[(Fe::ONE, 2, 0), (six, 1, 1), (ctx.neg(Fe::ONE), 0, 0)], &[]);
    Ok(Presemifield::new(Product::Do(f), Label::new(family, p, m, m)))
}

fn bivariate(ctx: &Field, first: &[(Fe, Factor, Factor)], second: &[(Fe, Factor, Factor)]) -> DoPoly {
    let comp = |terms: &[(Fe, Factor, Factor)]| DoComponent {
        quadratic: terms.iter().map(|&(coeff, left, right)| DoTerm { coeff, left, right }).collect(),
        linear: Vec::<LinTerm>::new(),
    };
    DoPoly::new(&Space::new(ctx.clone(), 2), vec![comp(first), comp(second)])
}

fn x(i: u32) -> Factor {
    Factor::new(0, i)
}

fn y(i: u32) -> Factor {
    Factor::new(1, i)
}

/// Cohen–Ganley `(x^2 + y^10, xy - y^6)` over GF(3^m), m >= 3 odd.
pub fn cg(p: u64, m: u32) -> Result<Presemifield> {
    const F: &str = "cg";
    require(p == 3, F, "p = 3 required")?;
    require(m >= 3 && m % 2 == 1, F, "m >= 3 odd required")?;
    let ctx = ctx_for(p, m)?;
    let one = Fe::ONE;
    let f = bivariate(
        &ctx,
        &[(one, x(0), x(0)), (one, y(2), y(0))],
        &[(one, x(0), y(0)), (ctx.neg(one), y(1), y(1))],
    );
    Ok(Presemifield::new(Product::Do(f), Label::new(Family::Cg, p, m, 2 * m)))
}

/// Ganley `(x^2 + a y^2 + a^3 y^18, xy - a y^6)` over GF(3^m), `a` a non-square.
pub fn ganley(p: u64, m: u32, a: Fe) -> Result<Presemifield> {
    const F: &str = "g";
    require(p == 3, F, "p = 3 required")?;
    require(m >= 3, F, "m >= 3 required")?;
    let ctx = ctx_for(p, m)?;
    non_square(&ctx, a, F, "a")?;
    let one = Fe::ONE;
    let f = bivariate(
        &ctx,
        &[(one, x(0), x(0)), (a, y(0), y(0)), (ctx.pow(a, 3), y(2), y(2))],
        &[(one, x(0), y(0)), (ctx.neg(a), y(1), y(1))],
    );
    let mut label = Label::new(Family::Ganley, p, m, 2 * m);
    label.a = Some(a);
    Ok(Presemifield::new(Product::Do(f), label))
}

/// The non-square used when none is given: the canonical generator.
pub fn default_non_square(p: u64, m: u32) -> Result<Fe> {
    Ok(ctx_for(p, m)?.generator())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: u32, b: Fe, a: Fe) -> Result<Presemifield> {
        family_s(&FamilySParams { p: 3, m: 6, k, b, a }, false)
    }

    #[test]
    fn family_s_smallest_instance() {
        let ctx = make_field(3, 6).unwrap();
        let ps = s(2, ctx.generator(), Fe::ONE).unwrap();
        let b = ps.biproj().unwrap();
        assert_eq!((b.q(), b.r()), (9, 243));
        assert_eq!(ps.label().predicted_nuclei().unwrap(), NucleiOrders { left: 3, middle: 9, right: 3 });
    }

    #[test]
    fn family_s_condition_names() {
        let ctx = make_field(3, 6).unwrap();
        let g = ctx.generator();
        let msg = |r: Result<Presemifield>| r.unwrap_err().to_string();
        assert!(msg(s(3, g, Fe::ONE)).contains("m/e odd violated"));
        assert!(msg(s(2, ctx.gen_pow(2), Fe::ONE)).contains("B must be a non-square"));
        assert!(msg(s(2, g, g)).contains("a must lie in L^x"));
    }

    #[test]
    fn family_s_exponent_sets() {
        assert_eq!(family_s_exponents(6), vec![2, 4]);
        assert!(family_s_exponents(4).is_empty());
        assert_eq!(family_s_exponents(10), vec![2, 4, 6, 8]);
    }

    #[test]
    fn permissive_tags_degenerations() {
        let ctx = make_field(3, 6).unwrap();
        let g = ctx.generator();
        let p = FamilySParams { p: 3, m: 6, k: 2, b: g, a: Fe::ZERO };
        assert!(family_s(&p, false).is_err());
        assert_eq!(family_s(&p, true).unwrap().label().reduced_to, Some(Family::ZhouPott));
        let p = FamilySParams { k: 3, a: Fe::ONE, ..p };
        assert_eq!(family_s(&p, true).unwrap().label().reduced_to, Some(Family::Dickson));
        let zp = zhou_pott(3, 3, 0, 1, make_field(3, 3).unwrap().generator(), true).unwrap();
        assert_eq!(zp.label().reduced_to, Some(Family::Dickson));
    }

    #[test]
    fn table_two_conditions() {
        assert!(cg(3, 2).unwrap_err().to_string().contains("m >= 3 odd"));
        assert!(check_b4(5, 1, 1).unwrap_err().to_string().contains("2s/d"));
        assert!(zhou_pott(3, 2, 1, 1, make_field(3, 2).unwrap().generator(), false).is_err());
    }

    #[test]
    fn b4_exponents() {
        let ctx = make_field(5, 4).unwrap();
        let a = ctx.generator();
        let f = b4(5, 1, 2, a).unwrap();
        let Product::Do(poly) = f.product() else { panic!() };
        let terms = poly.univariate_terms().unwrap();
        let expo = |(i, j, _): &(u32, u32, Fe)| 5u64.pow(*i) + 5u64.pow(*j);
        let mut e: Vec<u64> = terms.iter().map(expo).collect();
        e.sort_unstable();
        assert_eq!(e, vec![26, 250]);
        assert!(terms.iter().any(|t| t.2 == ctx.neg(ctx.pow(a, 4))));
    }
}
