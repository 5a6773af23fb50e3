use super::biproj::BiprojPair;
use super::dopoly::DoPoly;
use super::linear::{LinMap, Point, Space};
use super::Bilinear;
use crate::error::{Error, Result};
use crate::families::Label;
use crate::planarity::PlanarityCertificate;

/// Largest dimension for which products of basis vectors are tabulated.
pub const MAX_TENSOR_DIM: usize = 16;

/// Products `e_i * e_j` of basis vectors, stored row-major.
#[derive(Clone, Debug)]
pub struct StructureTensor {
    space: Space,
    table: Vec<Point>,
}

impl StructureTensor {
    pub fn from_bilinear<B: Bilinear + ?Sized>(b: &B) -> Result<StructureTensor> {
        let space = b.space().clone();
        let n = space.dim();
        if n > MAX_TENSOR_DIM {
            return Err(Error::Unsupported(format!("structure tensor of dimension {n}")));
        }
        let basis: Vec<Point> = (0..n).map(|i| space.basis(i)).collect();
        let table = basis.iter().flat_map(|x| basis.iter().map(|y| b.mul(x, y))).collect();
        Ok(StructureTensor { space, table })
    }

    pub fn from_table(space: &Space, table: Vec<Point>) -> StructureTensor {
        assert_eq!(table.len(), space.dim() * space.dim());
        StructureTensor { space: space.clone(), table }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Point {
        self.table[i * self.space.dim() + j]
    }

    /// Coordinate vectors of all basis products, row-major.
    pub fn coordinate_table(&self) -> Vec<Vec<u32>> {
        self.table.iter().map(|pt| self.space.coords(pt)).collect()
    }
}

impl Bilinear for StructureTensor {
    fn space(&self) -> &Space {
        &self.space
    }

    fn mul(&self, x: &Point, y: &Point) -> Point {
        let sp = &self.space;
        let ctx = sp.ctx();
        let n = sp.dim();
        let (cx, cy) = (sp.coords(x), sp.coords(y));
        let p = sp.p();
        let mut acc = sp.zero();
        for (i, &a) in cx.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in cy.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let s = ctx.from_int((a * b % p) as i64);
                acc = sp.add(&acc, &sp.scale(s, &self.table[i * n + j]));
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub enum Product {
    Biproj(BiprojPair),
    Do(DoPoly),
    Tensor(StructureTensor),
}

impl Product {
    fn as_bilinear(&self) -> &dyn Bilinear {
        match self {
            Product::Biproj(b) => b,
            Product::Do(d) => d,
            Product::Tensor(t) => t,
        }
    }
}

/// A bilinear multiplication with family metadata. Zero-divisor freeness is
/// only asserted once a planarity certificate is attached.
#[derive(Clone, Debug)]
pub struct Presemifield {
    product: Product,
    label: Label,
    certificate: Option<PlanarityCertificate>,
}

impl Presemifield {
    pub fn new(product: Product, label: Label) -> Presemifield {
        Presemifield { product, label, certificate: None }
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn biproj(&self) -> Option<&BiprojPair> {
        match &self.product {
            Product::Biproj(b) => Some(b),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&PlanarityCertificate> {
        self.certificate.as_ref()
    }

    pub fn is_certified_planar(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.planar)
    }

    /// Attach a certificate obtained elsewhere, such as a cache; it is not re-checked.
    pub fn attach_certificate(&mut self, cert: PlanarityCertificate) {
        self.certificate = Some(cert);
    }

    /// Matrix of `y -> a * y`.
    pub fn left_mult_matrix(&self, a: &Point) -> LinMap {
        LinMap::from_fn(self.space(), |y| self.mul(a, y))
    }

    /// Matrix of `x -> x * a`.
    pub fn right_mult_matrix(&self, a: &Point) -> LinMap {
        LinMap::from_fn(self.space(), |x| self.mul(x, a))
    }

    pub fn structure(&self) -> Result<StructureTensor> {
        match &self.product {
            Product::Tensor(t) => Ok(t.clone()),
            other => StructureTensor::from_bilinear(other.as_bilinear()),
        }
    }

    /// Commutativity on basis pairs.
    pub fn is_commutative(&self) -> bool {
        let sp = self.space();
        let n = sp.dim();
        (0..n).all(|i| (i..n).all(|j| self.mul(&sp.basis(i), &sp.basis(j)) == self.mul(&sp.basis(j), &sp.basis(i))))
    }
}

impl Bilinear for Presemifield {
    fn space(&self) -> &Space {
        self.product.as_bilinear().space()
    }

    #[inline]
    fn mul(&self, x: &Point, y: &Point) -> Point {
        match &self.product {
            Product::Biproj(b) => b.mult(x, y),
            Product::Do(d) => d.delta(x, y),
            Product::Tensor(t) => t.mul(x, y),
        }
    }
}
