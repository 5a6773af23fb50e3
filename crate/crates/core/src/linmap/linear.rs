use std::fmt;

use serde::Serialize;

use super::matrix::FpMatrix;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};

/// A point of `M` (one block) or `M x M` (two blocks); unused slots stay zero.
pub type Point = [Fe; 2];

/// The ambient F_p-space `M^blocks`, with coordinates ordered block by block
/// (the x-part before the y-part), each block in the polynomial basis.
#[derive(Clone)]
pub struct Space {
    ctx: Field,
    blocks: usize,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})^{}", self.ctx.p(), self.ctx.m(), self.blocks)
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Space) -> bool {
        self.ctx.p() == other.ctx.p() && self.ctx.m() == other.ctx.m() && self.blocks == other.blocks
    }
}

impl Space {
    pub fn new(ctx: Field, blocks: usize) -> Space {
        assert!(blocks == 1 || blocks == 2, "one or two blocks");
        Space { ctx, blocks }
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    /// Dimension over F_p.
    pub fn dim(&self) -> usize {
        self.blocks * self.ctx.m() as usize
    }

    pub fn size(&self) -> u64 {
        self.ctx.order().pow(self.blocks as u32)
    }

    pub fn zero(&self) -> Point {
        [Fe::ZERO; 2]
    }

    pub fn add(&self, a: &Point, b: &Point) -> Point {
        [self.ctx.add(a[0], b[0]), self.ctx.add(a[1], b[1])]
    }

    pub fn sub(&self, a: &Point, b: &Point) -> Point {
        [self.ctx.sub(a[0], b[0]), self.ctx.sub(a[1], b[1])]
    }

    pub fn scale(&self, c: Fe, a: &Point) -> Point {
        [self.ctx.mul(c, a[0]), self.ctx.mul(c, a[1])]
    }

    pub fn is_zero(&self, a: &Point) -> bool {
        a[0].is_zero() && a[1].is_zero()
    }

    pub fn basis(&self, i: usize) -> Point {
        let m = self.ctx.m() as usize;
        let mut pt = self.zero();
        pt[i / m] = self.ctx.basis((i % m) as u32);
        pt
    }

    pub fn write_coords(&self, a: &Point, out: &mut [u32]) {
        let m = self.ctx.m() as usize;
        for b in 0..self.blocks {
            self.ctx.write_coords(a[b], &mut out[b * m..(b + 1) * m]);
        }
    }

    pub fn coords(&self, a: &Point) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        self.write_coords(a, &mut v);
        v
    }

    pub fn from_coords(&self, v: &[u32]) -> Point {
        let m = self.ctx.m() as usize;
        let mut pt = self.zero();
        for b in 0..self.blocks {
            pt[b] = self.ctx.from_coords(&v[b * m..(b + 1) * m]);
        }
        pt
    }

    /// The point whose coordinate vector, read as base-p digits, is `idx`.
    pub fn point_at(&self, idx: u64) -> Point {
        let q = self.ctx.order();
        let mut pt = self.zero();
        pt[0] = self.ctx.from_code((idx % q) as u32);
        if self.blocks == 2 {
            pt[1] = self.ctx.from_code((idx / q) as u32);
        }
        pt
    }

    pub fn index_of(&self, a: &Point) -> u64 {
        let q = self.ctx.order();
        let lo = self.ctx.code(a[0]) as u64;
        if self.blocks == 2 {
            lo + q * self.ctx.code(a[1]) as u64
        } else {
            lo
        }
    }

    /// The meaningful slots of a point.
    pub fn parts<'a>(&self, a: &'a Point) -> &'a [Fe] {
        &a[..self.blocks]
    }

    pub fn check_same(&self, other: &Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{self:?} vs {other:?}")))
        }
    }
}

/// Linearized polynomial `sum b_i x^{p^i}` over `M`, exponents in `0..m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinPoly {
    terms: Vec<(u32, Fe)>,
}

impl LinPoly {
    pub fn zero() -> LinPoly {
        LinPoly::default()
    }

    pub fn monomial(ctx: &Field, coeff: Fe, exp: i64) -> LinPoly {
        LinPoly::from_terms(ctx, [(exp, coeff)])
    }

    pub fn from_terms(ctx: &Field, terms: impl IntoIterator<Item = (i64, Fe)>) -> LinPoly {
        let m = ctx.m() as usize;
        let mut acc = vec![Fe::ZERO; m];
        for (e, c) in terms {
            let e = e.rem_euclid(m as i64) as usize;
            acc[e] = ctx.add(acc[e], c);
        }
        LinPoly {
            terms: acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u32, c)).collect(),
        }
    }

    pub fn terms(&self) -> &[(u32, Fe)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some((coeff, exp))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(Fe, u32)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*c, *e)),
            _ => None,
        }
    }

    #[inline]
    pub fn eval(&self, ctx: &Field, x: Fe) -> Fe {
        if x.is_zero() {
            return x;
        }
        self.terms
            .iter()
            .fold(Fe::ZERO, |acc, &(e, c)| ctx.add(acc, ctx.mul(c, ctx.frobenius(x, e as i64))))
    }

    pub fn add(&self, ctx: &Field, other: &LinPoly) -> LinPoly {
        LinPoly::from_terms(ctx, self.terms.iter().chain(&other.terms).map(|&(e, c)| (e as i64, c)))
    }

    /// `self(other(x))`.
    pub fn compose(&self, ctx: &Field, other: &LinPoly) -> LinPoly {
        LinPoly::from_terms(
            ctx,
            self.terms.iter().flat_map(|&(i, b)| {
                other
                    .terms
                    .iter()
                    .map(move |&(j, c)| ((i + j) as i64, ctx.mul(b, ctx.frobenius(c, i as i64))))
            }),
        )
    }

    /// The unique linearized polynomial taking the polynomial basis to `values`.
    pub fn interpolate(ctx: &Field, values: &[Fe]) -> LinPoly {
        let m = ctx.m() as usize;
        assert_eq!(values.len(), m);
        // rows j: sum_i b_i beta_j^{p^i} = values[j]
        let mut a: Vec<Vec<Fe>> = (0..m)
            .map(|j| {
                let beta = ctx.basis(j as u32);
                let mut row: Vec<Fe> = (0..m).map(|i| ctx.frobenius(beta, i as i64)).collect();
                row.push(values[j]);
                row
            })
            .collect();
        for col in 0..m {
            let piv = (col..m).find(|&r| !a[r][col].is_zero()).expect("Moore matrix is invertible");
            a.swap(col, piv);
            let inv = ctx.inv(a[col][col]);
            for x in a[col].iter_mut() {
                *x = ctx.mul(*x, inv);
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col];
                    for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x = ctx.sub(*x, ctx.mul(f, y));
                    }
                }
            }
        }
        LinPoly::from_terms(ctx, (0..m).map(|i| (i as i64, a[i][m])))
    }
}

/// An F_p-linear endomorphism of a [`Space`], kept as a matrix and, when
/// known, as a block matrix of linearized polynomials (`out` block by `in` block).
#[derive(Clone)]
pub struct LinMap {
    space: Space,
    matrix: FpMatrix,
    blocks: Option<Vec<LinPoly>>,
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinMap").field("space", &self.space).field("blocks", &self.blocks).finish()
    }
}

/// Serialized as the matrix rows plus the block polynomials when known.
impl Serialize for LinMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LinMap", 2)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.serialize_field("blocks", &self.blocks)?;
        st.end()
    }
}

impl PartialEq for LinMap {
    fn eq(&self, other: &LinMap) -> bool {
        self.space == other.space && self.matrix == other.matrix
    }
}

impl LinMap {
    pub fn from_matrix(space: &Space, matrix: FpMatrix) -> Result<LinMap> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n || matrix.p() != space.p() {
            return Err(Error::Dimension(format!("{}x{} matrix on {space:?}", matrix.rows(), matrix.cols())));
        }
        Ok(LinMap { space: space.clone(), matrix, blocks: None })
    }

    /// Matrix of an arbitrary F_p-linear function, by evaluation on the basis.
    pub fn from_fn(space: &Space, f: impl Fn(&Point) -> Point) -> LinMap {
        let n = space.dim();
        let cols: Vec<Vec<u32>> = (0..n).map(|i| space.coords(&f(&space.basis(i)))).collect();
        LinMap { space: space.clone(), matrix: FpMatrix::from_columns(space.p(), n, &cols), blocks: None }
    }

    pub fn from_blocks(space: &Space, polys: Vec<LinPoly>) -> LinMap {
        let b = space.blocks();
        assert_eq!(polys.len(), b * b, "one polynomial per block");
        let ctx = space.ctx().clone();
        let mut map = LinMap::from_fn(space, |x| {
            let mut out = space.zero();
            for i in 0..b {
                for j in 0..b {
                    out[i] = ctx.add(out[i], polys[i * b + j].eval(&ctx, x[j]));
                }
            }
            out
        });
        map.blocks = Some(polys);
        map
    }

    pub fn identity(space: &Space) -> LinMap {
        let ctx = space.ctx();
        let b = space.blocks();
        let polys = (0..b * b)
            .map(|k| if k / b == k % b { LinPoly::monomial(ctx, Fe::ONE, 0) } else { LinPoly::zero() })
            .collect();
        LinMap::from_blocks(space, polys)
    }

    /// Block-diagonal map `x_i -> c_i x_i^{p^t}`.
    pub fn diagonal_monomial(space: &Space, coeffs: &[Fe], t: i64) -> LinMap {
        let ctx = space.ctx();
        let b = space.blocks();
        assert_eq!(coeffs.len(), b);
        let polys = (0..b * b)
            .map(|k| if k / b == k % b { LinPoly::monomial(ctx, coeffs[k / b], t) } else { LinPoly::zero() })
            .collect();
        LinMap::from_blocks(space, polys)
    }

    /// Two-block map `(x, y) -> (c_0 y^{p^t}, c_1 x^{p^t})`.
    pub fn antidiagonal_monomial(space: &Space, coeffs: [Fe; 2], t: i64) -> LinMap {
        assert_eq!(space.blocks(), 2);
        let ctx = space.ctx();
        let polys = vec![
            LinPoly::zero(),
            LinPoly::monomial(ctx, coeffs[0], t),
            LinPoly::monomial(ctx, coeffs[1], t),
            LinPoly::zero(),
        ];
        LinMap::from_blocks(space, polys)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn blocks(&self) -> Option<&[LinPoly]> {
        self.blocks.as_deref()
    }

    /// Block polynomial form, interpolated from the matrix when not stored.
    pub fn block_form(&self) -> Vec<LinPoly> {
        if let Some(b) = &self.blocks {
            return b.clone();
        }
        let ctx = self.space.ctx();
        let b = self.space.blocks();
        let m = ctx.m() as usize;
        let mut polys = Vec::with_capacity(b * b);
        for i in 0..b {
            for j in 0..b {
                let values: Vec<Fe> = (0..m)
                    .map(|k| {
                        let mut x = self.space.zero();
                        x[j] = ctx.basis(k as u32);
                        self.apply(&x)[i]
                    })
                    .collect();
                polys.push(LinPoly::interpolate(ctx, &values));
            }
        }
        polys
    }

    pub fn apply(&self, x: &Point) -> Point {
        match &self.blocks {
            Some(polys) => {
                let ctx = self.space.ctx();
                let b = self.space.blocks();
                let mut out = self.space.zero();
                for i in 0..b {
                    for j in 0..b {
                        let poly = &polys[i * b + j];
                        if !poly.is_zero() {
                            out[i] = ctx.add(out[i], poly.eval(ctx, x[j]));
                        }
                    }
                }
                out
            }
            None => self.space.from_coords(&self.matrix.mul_vec(&self.space.coords(x))),
        }
    }

    pub fn apply_coords(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.space, other.space, "composition across spaces");
        let matrix = self.matrix.mul(&other.matrix);
        let blocks = match (&self.blocks, &other.blocks) {
            (Some(a), Some(c)) => {
                let ctx = self.space.ctx();
                let b = self.space.blocks();
                Some(
                    (0..b * b)
                        .map(|k| {
                            let (i, j) = (k / b, k % b);
                            (0..b).fold(LinPoly::zero(), |acc, l| {
                                acc.add(ctx, &a[i * b + l].compose(ctx, &c[l * b + j]))
                            })
                        })
                        .collect(),
                )
            }
            _ => None,
        };
        LinMap { space: self.space.clone(), matrix, blocks }
    }

    pub fn invert(&self) -> Result<LinMap> {
        let inv = self.matrix.inverse().ok_or(Error::Singular)?;
        let mut map = LinMap { space: self.space.clone(), matrix: inv, blocks: None };
        if self.blocks.is_some() {
            map.blocks = Some(map.block_form());
        }
        Ok(map)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.space.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn monomial_blocks_compose_by_adding_exponents() {
        let ctx = make_field(3, 4).unwrap();
        let space = Space::new(ctx.clone(), 2);
        let g = ctx.generator();
        let a = LinMap::diagonal_monomial(&space, &[g, ctx.pow(g, 5)], 1);
        let b = LinMap::antidiagonal_monomial(&space, [ctx.pow(g, 7), Fe::ONE], 2);
        let ab = a.compose(&b);
        let blocks = ab.blocks().unwrap();
        assert_eq!(blocks[1].as_monomial().unwrap().1, 3);
        assert_eq!(blocks[2].as_monomial().unwrap().1, 3);
        assert!(blocks[0].is_zero() && blocks[3].is_zero());
        let fresh = LinMap::from_blocks(&space, blocks.to_vec());
        assert_eq!(fresh.matrix(), ab.matrix());
    }

    #[test]
    fn interpolation_recovers_blocks() {
        let ctx = make_field(3, 3).unwrap();
        let space = Space::new(ctx.clone(), 1);
        let poly = LinPoly::from_terms(&ctx, [(0, ctx.generator()), (2, ctx.gen_pow(11))]);
        let map = LinMap::from_blocks(&space, vec![poly.clone()]);
        let bare = LinMap::from_matrix(&space, map.matrix().clone()).unwrap();
        assert_eq!(bare.block_form(), vec![poly]);
    }

    #[test]
    fn inverse_of_frobenius() {
        let ctx = make_field(3, 6).unwrap();
        let space = Space::new(ctx.clone(), 2);
        let f = LinMap::diagonal_monomial(&space, &[Fe::ONE, Fe::ONE], 2);
        let inv = f.invert().unwrap();
        assert_eq!(inv.blocks().unwrap()[0].as_monomial(), Some((Fe::ONE, 4)));
        assert!(f.compose(&inv).matrix().is_identity());
    }
}
