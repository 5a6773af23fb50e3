use serde::Serialize;

use crate::error::{Error, Result};
use crate::linmap::{Bilinear, FpMatrix, LinMap, Point};

/// Checks `N(x o1 y) = L(x) o2 M(y)` on basis pairs, with the products
/// `e_i o1 e_j` tabulated once.
pub struct Verifier<'a> {
    target: &'a dyn Bilinear,
    table: Vec<Point>,
    basis: Vec<Point>,
}

impl<'a> Verifier<'a> {
    pub fn new(source: &dyn Bilinear, target: &'a dyn Bilinear) -> Result<Verifier<'a>> {
        source.space().check_same(target.space())?;
        let sp = source.space();
        let basis: Vec<Point> = (0..sp.dim()).map(|i| sp.basis(i)).collect();
        let table = basis.iter().flat_map(|x| basis.iter().map(|y| source.mul(x, y))).collect();
        Ok(Verifier { target, table, basis })
    }

    /// The identity on all basis pairs, for maps given as functions.
    pub fn holds(&self, n: impl Fn(&Point) -> Point, l: impl Fn(&Point) -> Point, m: impl Fn(&Point) -> Point) -> bool {
        let dim = self.basis.len();
        let ls: Vec<Point> = self.basis.iter().map(&l).collect();
        let ms: Vec<Point> = self.basis.iter().map(&m).collect();
        (0..dim).all(|i| (0..dim).all(|j| n(&self.table[i * dim + j]) == self.target.mul(&ls[i], &ms[j])))
    }

    /// The identity on all basis pairs plus invertibility of the three maps.
    pub fn check(&self, n: &LinMap, l: &LinMap, m: &LinMap) -> Result<bool> {
        let sp = self.target.space();
        for f in [n, l, m] {
            f.space().check_same(sp)?;
        }
        Ok(n.is_invertible()
            && l.is_invertible()
            && m.is_invertible()
            && self.holds(|x| n.apply(x), |x| l.apply(x), |x| m.apply(x)))
    }
}

/// A triple `(N, L, M)` with `N(x o1 y) = L(x) o2 M(y)`. The flag is set
/// only by a successful basis-pair check.
#[derive(Clone, Debug, Serialize)]
pub struct Isotopism {
    pub provenance: String,
    pub strong: bool,
    verified: bool,
    #[serde(rename = "N")]
    pub n: LinMap,
    #[serde(rename = "L")]
    pub l: LinMap,
    #[serde(rename = "M")]
    pub m: LinMap,
}

impl Isotopism {
    pub fn new(n: LinMap, l: LinMap, m: LinMap, provenance: impl Into<String>) -> Isotopism {
        let strong = l == m;
        Isotopism { provenance: provenance.into(), strong, verified: false, n, l, m }
    }

    pub fn identity(space: &crate::linmap::Space, provenance: impl Into<String>) -> Isotopism {
        let id = LinMap::identity(space);
        Isotopism::new(id.clone(), id.clone(), id, provenance)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Check against `source -> target` and return the triple flagged as
    /// verified, or `None` if the identity fails.
    pub fn verified(mut self, source: &dyn Bilinear, target: &dyn Bilinear) -> Result<Option<Isotopism>> {
        if verify_isotopism(&self, source, target)? {
            self.verified = true;
            Ok(Some(self))
        } else {
            Ok(None)
        }
    }

    /// Like [`Isotopism::verified`], failing with an error naming the provenance.
    pub fn expect_verified(self, source: &dyn Bilinear, target: &dyn Bilinear) -> Result<Isotopism> {
        let name = self.provenance.clone();
        self.verified(source, target)?
            .ok_or_else(|| Error::Unsupported(format!("constructed triple '{name}' does not verify")))
    }

    /// `(N2 N1, L2 L1, M2 M1)`: first `self`, then `next`. Unverified.
    pub fn then(&self, next: &Isotopism) -> Isotopism {
        Isotopism::new(
            next.n.compose(&self.n),
            next.l.compose(&self.l),
            next.m.compose(&self.m),
            format!("{} then {}", self.provenance, next.provenance),
        )
    }

    /// `(N^-1, L^-1, M^-1)`. Unverified.
    pub fn inverse(&self) -> Result<Isotopism> {
        Ok(Isotopism::new(
            self.n.invert()?,
            self.l.invert()?,
            self.m.invert()?,
            format!("inverse of {}", self.provenance),
        ))
    }
}

/// `N(x o1 y) = L(x) o2 M(y)` on all basis pairs, and `N, L, M` invertible.
pub fn verify_isotopism(iso: &Isotopism, source: &dyn Bilinear, target: &dyn Bilinear) -> Result<bool> {
    Verifier::new(source, target)?.check(&iso.n, &iso.l, &iso.m)
}

/// The `N` forced by `N(x o1 y) = L(x) o2 M(y)` on basis products that span
/// the source, or `None` if they do not span. Unverified.
pub fn fit_outer(source: &dyn Bilinear, target: &dyn Bilinear, l: &LinMap, m: &LinMap) -> Option<LinMap> {
    let sp = source.space();
    let n = sp.dim();
    let p = sp.p();
    let mut xs: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut ys: Vec<Vec<u32>> = Vec::with_capacity(n);
    'outer: for i in 0..n {
        for j in 0..n {
            let (a, b) = (sp.basis(i), sp.basis(j));
            let x = sp.coords(&source.mul(&a, &b));
            xs.push(x);
            if FpMatrix::from_columns(p, n, &xs).rank() < xs.len() {
                xs.pop();
                continue;
            }
            ys.push(sp.coords(&target.mul(&l.apply(&a), &m.apply(&b))));
            if xs.len() == n {
                break 'outer;
            }
        }
    }
    if xs.len() < n {
        return None;
    }
    let x_inv = FpMatrix::from_columns(p, n, &xs).inverse()?;
    let y = FpMatrix::from_columns(p, n, &ys);
    LinMap::from_matrix(sp, y.mul(&x_inv)).ok()
}
