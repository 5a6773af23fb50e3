use std::io::Read;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use semifield::families::{self, default_non_square, FamilySParams};
use semifield::gf::{make_field, zsigmondy_prime, Fe, Field, Tower};
use semifield::isotopy::{count_classes_family_s, orbit_of_a, ClassCensus};
use semifield::linmap::{Bilinear, Presemifield};
use semifield::planarity::{OracleMode, PlanarityCertificate};
use semifield::serial::{from_json, to_json};
use semifield::structure::{centralizer_enumerate, presemifield_nuclei};
use semifield::Error;

use crate::cache;
use crate::{ConstructArgs, FamilyArg, SignArg};

pub const REPORT_SCHEMA: &str = "semifield-report/1";

pub enum Failure {
    /// Bad arguments or parameters; exit 2.
    Usage(String),
    /// A check failed; the text is a JSON report; exit 1.
    Verification(String),
}

pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub type CmdResult = Result<Output, Failure>;

#[derive(Serialize)]
struct Timings {
    total_seconds: f64,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    command: &'a str,
    ok: bool,
    payload: Value,
    timings: Timings,
}

pub fn envelope(command: &str, ok: bool, payload: Value, start: Instant) -> String {
    let env = Envelope {
        schema: REPORT_SCHEMA,
        command,
        ok,
        payload,
        timings: Timings { total_seconds: start.elapsed().as_secs_f64() },
    };
    serde_json::to_string_pretty(&env).expect("report serializes") + "\n"
}

fn report(command: &str, ok: bool, payload: impl Serialize, start: Instant) -> CmdResult {
    let payload = serde_json::to_value(payload).expect("payload serializes");
    Ok(Output { text: envelope(command, ok, payload, start), ok })
}

/// Library errors: failed checks become exit-1 reports, everything else is a
/// parameter error.
fn lib_error(command: &str, start: Instant) -> impl Fn(Error) -> Failure + '_ {
    move |e| match e {
        Error::NotPlanar | Error::CheckerDisagreement(_) => {
            Failure::Verification(envelope(command, false, json!({ "error": e.to_string() }), start))
        }
        other => Failure::Usage(other.to_string()),
    }
}

pub fn parse_fe(ctx: &Field, text: &str, name: &str) -> Result<Fe, Failure> {
    if text == "zero" {
        return Ok(Fe::ZERO);
    }
    let log: u64 = text
        .parse()
        .map_err(|_| Failure::Usage(format!("--{name}: expected a discrete log or \"zero\", got {text:?}")))?;
    if log >= ctx.units() {
        return Err(Failure::Usage(format!("--{name}: discrete log {log} out of range for GF({}^{})", ctx.p(), ctx.m())));
    }
    Ok(ctx.gen_pow(log as i64))
}

fn field(p: u64, m: u32) -> Result<Field, Failure> {
    make_field(p, m).map_err(|e| Failure::Usage(e.to_string()))
}

fn need<T: Copy>(v: Option<T>, name: &str, family: FamilyArg) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for family {family:?}")))
}

pub fn load(path: &Path) -> Result<Presemifield, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

pub fn field_info(p: u64, m: u32, k: Option<u32>) -> CmdResult {
    let start = Instant::now();
    let ctx = field(p, m)?;
    let payload = json!({
        "p": p,
        "m": m,
        "order": ctx.order(),
        "units": ctx.units(),
        "modulus": ctx.modulus(),
        "generator": ctx.coords(ctx.generator()),
        "subfield_degrees": divisors(m),
        "zsigmondy_prime": zsigmondy_prime(p, m).ok(),
        "tower": k.map(|k| Tower::new(m, k)),
    });
    report("field-info", true, payload, start)
}

pub fn build(args: &ConstructArgs) -> Result<Presemifield, Failure> {
    let f = args.family;
    let p = args.p;
    let err = |e: Error| Failure::Usage(e.to_string());
    let elem = |ctx: &Field, v: &Option<String>, name: &str, default: Fe| -> Result<Fe, Failure> {
        match v {
            Some(s) => parse_fe(ctx, s, name),
            None => Ok(default),
        }
    };
    // Degree of the field the element arguments live in.
    let elem_degree = match f {
        FamilyArg::Zkw | FamilyArg::B3 => 3 * need(args.s, "s", f)?,
        FamilyArg::B4 => 4 * need(args.s, "s", f)?,
        _ => need(args.m, "m", f)?,
    };
    let ctx = field(p, elem_degree)?;
    let g = ctx.generator();
    let m = elem_degree;
    let ps = match f {
        FamilyArg::Field => match &args.a {
            Some(_) => families::field_pair(p, m, elem(&ctx, &args.a, "a", g)?),
            None => families::field(p, m),
        },
        FamilyArg::S => {
            let b = match &args.b {
                Some(s) => parse_fe(&ctx, s, "B")?,
                None => default_non_square(p, m).map_err(err)?,
            };
            let a = elem(&ctx, &args.a, "a", Fe::ONE)?;
            families::family_s(&FamilySParams { p, m, k: need(args.k, "k", f)?, b, a }, args.permissive)
        }
        FamilyArg::Dickson => {
            families::dickson(p, m, need(args.k, "k", f)?, elem(&ctx, &args.a, "a", g)?, args.permissive)
        }
        FamilyArg::Albert => {
            let k = need(args.k, "k", f)?;
            match &args.a {
                Some(s) => families::albert_pair(p, 2 * m, k, parse_fe(&ctx, s, "a")?, args.permissive),
                None => families::albert_univariate(p, m, k, args.permissive),
            }
        }
        FamilyArg::Zp => families::zhou_pott(
            p,
            m,
            need(args.k, "k", f)?,
            need(args.j, "j", f)?,
            elem(&ctx, &args.a, "a", g)?,
            args.permissive,
        ),
        FamilyArg::Bh => families::bh(p, m, need(args.k, "k", f)?, elem(&ctx, &args.a, "a", g)?, args.permissive),
        FamilyArg::Zkw => families::zkw(p, need(args.s, "s", f)?, need(args.t, "t", f)?, elem(&ctx, &args.a, "a", g)?),
        FamilyArg::B3 => families::b3(p, need(args.s, "s", f)?, need(args.t, "t", f)?, elem(&ctx, &args.a, "a", g)?),
        FamilyArg::B4 => families::b4(p, need(args.s, "s", f)?, need(args.t, "t", f)?, elem(&ctx, &args.a, "a", g)?),
        FamilyArg::Cmdy => families::cm_dy(p, m, args.sign == SignArg::Plus),
        FamilyArg::Cg => families::cg(p, m),
        FamilyArg::G => families::ganley(p, m, elem(&ctx, &args.a, "a", g)?),
    };
    ps.map_err(err)
}

pub fn construct(args: &ConstructArgs) -> CmdResult {
    let ps = build(args)?;
    let text = to_json(&ps) + "\n";
    Ok(Output { text, ok: true })
}

#[derive(Serialize)]
struct PropertySample {
    seed: u64,
    samples: u64,
    symmetric: bool,
    bilinear: bool,
    /// Coordinates `(x, x', y)` of the first failing triple.
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<[Vec<u32>; 3]>,
}

/// `x * y = y * x` and `(x + x') * y = x * y + x' * y` on seeded random triples.
fn sample_properties(ps: &Presemifield, samples: u64, seed: u64) -> PropertySample {
    let sp = ps.space();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut symmetric, mut bilinear, mut counterexample) = (true, true, None);
    for _ in 0..samples {
        let [x, x2, y] = [0; 3].map(|_| sp.point_at(rng.gen_range(0..sp.size())));
        let sym = ps.mul(&x, &y) == ps.mul(&y, &x);
        let lin = ps.mul(&sp.add(&x, &x2), &y) == sp.add(&ps.mul(&x, &y), &ps.mul(&x2, &y));
        symmetric &= sym;
        bilinear &= lin;
        if !(sym && lin) && counterexample.is_none() {
            counterexample = Some([sp.coords(&x), sp.coords(&x2), sp.coords(&y)]);
        }
    }
    PropertySample { seed, samples, symmetric, bilinear, counterexample }
}

pub fn verify(input: &Path, oracle: bool, samples: u64, seed: u64) -> CmdResult {
    let start = Instant::now();
    let ps = load(input)?;
    let mode = if oracle { OracleMode::Required } else { OracleMode::WhenNeeded };
    let cert = cache::certificate(&ps, mode).map_err(lib_error("verify", start))?;
    let properties = sample_properties(&ps, samples, seed);
    let ok = cert.planar && properties.symmetric && properties.bilinear;
    let payload = json!({
        "label": ps.label(),
        "planar": cert.planar,
        "certificate": cert,
        "properties": properties,
    });
    report("verify", ok, payload, start)
}

/// Load and certify; a non-planar input is an exit-1 report carrying the witness.
fn load_certified(path: &Path, command: &str, start: Instant) -> Result<Presemifield, Failure> {
    let mut ps = load(path)?;
    let cert: PlanarityCertificate = cache::certificate(&ps, OracleMode::WhenNeeded).map_err(lib_error(command, start))?;
    if !cert.planar {
        let payload = json!({ "error": "not planar", "input": path.display().to_string(), "certificate": cert });
        return Err(Failure::Verification(envelope(command, false, payload, start)));
    }
    ps.attach_certificate(cert);
    Ok(ps)
}

fn with_label(label: &semifield::families::Label, body: impl Serialize) -> Value {
    let mut v = serde_json::to_value(body).expect("report serializes");
    if let Value::Object(map) = &mut v {
        map.insert("label".into(), serde_json::to_value(label).expect("label serializes"));
    }
    v
}

pub fn nuclei(input: &Path) -> CmdResult {
    let start = Instant::now();
    let ps = load_certified(input, "nuclei", start)?;
    let rep = presemifield_nuclei(&ps).map_err(lib_error("nuclei", start))?;
    let ok = rep.matches != Some(false);
    report("nuclei", ok, with_label(ps.label(), rep), start)
}

pub fn centralizer(input: &Path, audit: bool) -> CmdResult {
    let start = Instant::now();
    let ps = load_certified(input, "centralizer", start)?;
    let rep = centralizer_enumerate(&ps, audit).map_err(lib_error("centralizer", start))?;
    let ok = rep.matches;
    report("centralizer", ok, with_label(ps.label(), rep), start)
}

pub fn orbit(p: u64, m: u32, k: u32, b: &str, a: &str) -> CmdResult {
    let start = Instant::now();
    let ctx = field(p, m)?;
    let params = FamilySParams { p, m, k, b: parse_fe(&ctx, b, "B")?, a: parse_fe(&ctx, a, "a")? };
    let rep = orbit_of_a(&params).map_err(lib_error("orbit", start))?;
    report("orbit", true, rep, start)
}

#[derive(Serialize)]
struct ClassRow {
    k: u32,
    kbar: u32,
    representative: Fe,
    orbit_size: usize,
    nl: u64,
    nm: u64,
    nr: u64,
    centralizer_order: u64,
    condition_c: bool,
}

fn class_csv(census: &ClassCensus) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in &census.classes {
        let row = ClassRow {
            k: c.k_class[0],
            kbar: c.k_class[1],
            representative: c.representative,
            orbit_size: c.orbit_size,
            nl: c.nuclei.left,
            nm: c.nuclei.middle,
            nr: c.nuclei.right,
            centralizer_order: c.centralizer_order,
            condition_c: c.condition_c,
        };
        w.serialize(row).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
}

pub fn classify(family: FamilyArg, p: u64, m: u32, b: Option<&str>, as_csv: bool) -> CmdResult {
    let start = Instant::now();
    if family != FamilyArg::S {
        return Err(Failure::Usage("classify supports --family S only".into()));
    }
    let ctx = field(p, m)?;
    let b = match b {
        Some(s) => parse_fe(&ctx, s, "B")?,
        None => default_non_square(p, m).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let census = count_classes_family_s(p, 2 * m, b).map_err(lib_error("classify", start))?;
    let ok = census.within_bounds && census.equivalence_closed;
    if as_csv {
        return Ok(Output { text: class_csv(&census)?, ok });
    }
    report("classify", ok, census, start)
}

pub fn compare(a: &Path, b: &Path) -> CmdResult {
    let start = Instant::now();
    let pa = load_certified(a, "compare", start)?;
    let pb = load_certified(b, "compare", start)?;
    let rep = semifield::isotopy::compare(&pa, &pb).map_err(lib_error("compare", start))?;
    let payload = json!({ "labels": [pa.label(), pb.label()], "report": rep });
    report("compare", true, payload, start)
}
