use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::NucleiOrders;
use crate::gf::numtheory::ipow;
use crate::linmap::{Bilinear, FpMatrix, LinMap, Point, Presemifield, Space, StructureTensor};

/// A unital multiplication obtained from a certified pre-semifield by
/// `x * y = R_e^{-1}(x) o L_e^{-1}(y)`, with identity `e o e`.
#[derive(Clone, Debug)]
pub struct Semifield {
    tensor: StructureTensor,
    e: Point,
    unit: Point,
    r_e: LinMap,
    l_e: LinMap,
}

impl Semifield {
    pub fn space(&self) -> &Space {
        Bilinear::space(&self.tensor)
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    /// The element used for unitalization.
    pub fn e(&self) -> Point {
        self.e
    }

    pub fn unit(&self) -> Point {
        self.unit
    }

    /// `R_e : x -> x o e` of the source pre-semifield.
    pub fn r_e(&self) -> &LinMap {
        &self.r_e
    }

    /// `L_e : y -> e o y` of the source pre-semifield.
    pub fn l_e(&self) -> &LinMap {
        &self.l_e
    }
}

impl Bilinear for Semifield {
    fn space(&self) -> &Space {
        Bilinear::space(&self.tensor)
    }

    fn mul(&self, x: &Point, y: &Point) -> Point {
        self.tensor.mul(x, y)
    }
}

/// Kaplansky's construction at a nonzero `e`.
pub fn unitalize(ps: &Presemifield, e: &Point) -> Result<Semifield> {
    if !ps.is_certified_planar() {
        return Err(Error::Uncertified);
    }
    let sp = ps.space().clone();
    if sp.is_zero(e) {
        return Err(Error::ZeroElement);
    }
    let r_e = LinMap::from_fn(&sp, |x| ps.mul(x, e));
    let l_e = LinMap::from_fn(&sp, |y| ps.mul(e, y));
    let (ri, li) = (r_e.invert()?, l_e.invert()?);
    let n = sp.dim();
    let rb: Vec<Point> = (0..n).map(|i| ri.apply(&sp.basis(i))).collect();
    let lb: Vec<Point> = (0..n).map(|j| li.apply(&sp.basis(j))).collect();
    let table = rb.iter().flat_map(|x| lb.iter().map(|y| ps.mul(x, y))).collect();
    let tensor = StructureTensor::from_table(&sp, table);
    let unit = ps.mul(e, e);
    let s = Semifield { tensor, e: *e, unit, r_e, l_e };
    for i in 0..n {
        let b = sp.basis(i);
        if s.mul(&unit, &b) != b || s.mul(&b, &unit) != b {
            return Err(Error::Unsupported("unitalized product has no identity".into()));
        }
    }
    Ok(s)
}

/// Unitalize at the first basis vector.
pub fn unitalize_default(ps: &Presemifield) -> Result<Semifield> {
    unitalize(ps, &ps.space().basis(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct NucleusData {
    pub order: u64,
    pub dim: usize,
    /// Coordinate vectors of an F_p-basis.
    pub basis: Vec<Vec<u32>>,
    /// Contains the identity and is closed under the product.
    pub closed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NucleiReport {
    #[serde(rename = "Nl")]
    pub nl: u64,
    #[serde(rename = "Nm")]
    pub nm: u64,
    #[serde(rename = "Nr")]
    pub nr: u64,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub predicted: Option<NucleiOrders>,
    /// Coordinates of the element used for unitalization.
    pub e: Vec<u32>,
    pub left: NucleusData,
    pub middle: NucleusData,
    pub right: NucleusData,
}

impl NucleiReport {
    pub fn orders(&self) -> NucleiOrders {
        NucleiOrders { left: self.nl, middle: self.nm, right: self.nr }
    }
}

/// Structure constants as `t[(i * n + j) * n + c]`.
fn coordinate_tensor(s: &Semifield) -> Vec<u32> {
    s.tensor.coordinate_table().into_iter().flatten().collect()
}

fn nucleus(s: &Semifield, t: &[u32], columns: Vec<Vec<u32>>) -> NucleusData {
    let sp = s.space();
    let n = sp.dim();
    let p = sp.p();
    let rows = columns[0].len();
    let basis = FpMatrix::from_columns(p, rows, &columns).kernel();
    let unit = sp.coords(&s.unit);
    let span_rank = |vs: &[Vec<u32>]| FpMatrix::from_columns(p, n, vs).rank();
    let dim = basis.len();
    let in_span = |v: &Vec<u32>| {
        let mut vs = basis.clone();
        vs.push(v.clone());
        span_rank(&vs) == dim
    };
    let mul = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut out = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let c = (a[i] * b[j]) as u64;
                if c != 0 {
                    for (k, o) in out.iter_mut().enumerate() {
                        *o += c * t[(i * n + j) * n + k] as u64;
                    }
                }
            }
        }
        out.into_iter().map(|x| (x % p as u64) as u32).collect()
    };
    let closed = in_span(&unit) && basis.iter().all(|a| basis.iter().all(|b| in_span(&mul(a, b))));
    NucleusData { order: ipow(p as u64, dim as u32), dim, basis, closed }
}

/// Left, middle and right nuclei as kernels of the associator, each an
/// `n^3 x n` system over F_p.
pub fn nuclei(s: &Semifield) -> NucleiReport {
    let sp = s.space();
    let n = sp.dim();
    let p = sp.p() as u64;
    let t = coordinate_tensor(s);
    let at = |i: usize, j: usize| &t[(i * n + j) * n..(i * n + j + 1) * n];
    // (e_i e_j) e_k - e_i (e_j e_k), stored at ((i n + j) n + k) n.
    let mut assoc = vec![0u32; n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let base = ((i * n + j) * n + k) * n;
                let mut acc = vec![0u64; n];
                for (c, &lc) in at(i, j).iter().enumerate() {
                    if lc != 0 {
                        for (o, &v) in acc.iter_mut().zip(at(c, k)) {
                            *o += lc as u64 * v as u64;
                        }
                    }
                }
                for (c, &rc) in at(j, k).iter().enumerate() {
                    if rc != 0 {
                        for (o, &v) in acc.iter_mut().zip(at(i, c)) {
                            *o += (p - rc as u64) * v as u64;
                        }
                    }
                }
                for (c, o) in acc.into_iter().enumerate() {
                    assoc[base + c] = (o % p) as u32;
                }
            }
        }
    }
    let column = |f: &dyn Fn(usize, usize, usize) -> usize| -> Vec<Vec<u32>> {
        (0..n)
            .map(|x| {
                let mut col = Vec::with_capacity(n * n * n);
                for a in 0..n {
                    for b in 0..n {
                        let base = f(x, a, b) * n;
                        col.extend_from_slice(&assoc[base..base + n]);
                    }
                }
                col
            })
            .collect()
    };
    let left = nucleus(s, &t, column(&|x, a, b| (x * n + a) * n + b));
    let middle = nucleus(s, &t, column(&|x, a, b| (a * n + x) * n + b));
    let right = nucleus(s, &t, column(&|x, a, b| (a * n + b) * n + x));
    NucleiReport {
        nl: left.order,
        nm: middle.order,
        nr: right.order,
        matches: None,
        predicted: None,
        e: sp.coords(&s.e),
        left,
        middle,
        right,
    }
}

/// Certified pre-semifield to nuclei report, compared with the family's listed orders.
pub fn presemifield_nuclei(ps: &Presemifield) -> Result<NucleiReport> {
    let s = unitalize_default(ps)?;
    let mut report = nuclei(&s);
    report.predicted = ps.label().predicted_nuclei();
    report.matches = report.predicted.map(|pr| pr == report.orders());
    Ok(report)
}
