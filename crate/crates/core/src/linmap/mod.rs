//! Linear maps, Dembowski–Ostrom polynomials, biprojective pairs and the
//! bilinear products they induce.

mod biproj;
mod dopoly;
mod linear;
mod matrix;
mod presemifield;

pub use biproj::BiprojPair;
pub use dopoly::{DoComponent, DoPoly, DoTerm, Factor, LinTerm};
pub use linear::{LinMap, LinPoly, Point, Space};
pub use matrix::{inv_mod_p, rank_in_place, row_reduce, FpMatrix};
pub use presemifield::{Presemifield, Product, StructureTensor, MAX_TENSOR_DIM};

/// An F_p-bilinear product on a [`Space`].
pub trait Bilinear: Sync {
    fn space(&self) -> &Space;
    fn mul(&self, x: &Point, y: &Point) -> Point;
}

impl<T: Bilinear + ?Sized> Bilinear for &T {
    fn space(&self) -> &Space {
        (**self).space()
    }

    fn mul(&self, x: &Point, y: &Point) -> Point {
        (**self).mul(x, y)
    }
}
