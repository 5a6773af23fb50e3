use super::dopoly::{DoComponent, DoPoly, DoTerm, Factor};
use super::linear::{Point, Space};
use super::Bilinear;
use crate::gf::{numtheory::ipow, Fe, Field};

/// A (q,r)-biprojective pair `[f, g]` on `M x M` with
/// `f = a0 x^{q+1} + b0 x^q y + c0 x y^q + d0 y^{q+1}` (q = p^k) and
/// `g` of the same shape with coefficients `right` and exponent r = p^l.
#[derive(Clone, Debug)]
pub struct BiprojPair {
    space: Space,
    k: u32,
    l: u32,
    left: [Fe; 4],
    right: [Fe; 4],
}

impl PartialEq for BiprojPair {
    fn eq(&self, o: &BiprojPair) -> bool {
        self.space == o.space && self.k == o.k && self.l == o.l && self.left == o.left && self.right == o.right
    }
}

/// `(a u + b v) x^q + (a u^q + c v^q) x + (c u + d v) y^q + (b u^q + d v^q) y`.
#[inline]
fn polar_component(ctx: &Field, c: &[Fe; 4], e: u32, x: Fe, y: Fe, u: Fe, v: Fe) -> Fe {
    let e = e as i64;
    let [a, b, cc, d] = *c;
    let (xq, yq, uq, vq) = (ctx.frobenius(x, e), ctx.frobenius(y, e), ctx.frobenius(u, e), ctx.frobenius(v, e));
    let t1 = ctx.mul(ctx.add(ctx.mul(a, u), ctx.mul(b, v)), xq);
    let t2 = ctx.mul(ctx.add(ctx.mul(a, uq), ctx.mul(cc, vq)), x);
    let t3 = ctx.mul(ctx.add(ctx.mul(cc, u), ctx.mul(d, v)), yq);
    let t4 = ctx.mul(ctx.add(ctx.mul(b, uq), ctx.mul(d, vq)), y);
    ctx.add(ctx.add(t1, t2), ctx.add(t3, t4))
}

fn eval_component(ctx: &Field, c: &[Fe; 4], e: u32, x: Fe, y: Fe) -> Fe {
    let e = e as i64;
    let (xq, yq) = (ctx.frobenius(x, e), ctx.frobenius(y, e));
    let terms = [ctx.mul(xq, x), ctx.mul(xq, y), ctx.mul(x, yq), ctx.mul(yq, y)];
    c.iter().zip(terms).fold(Fe::ZERO, |acc, (&k, t)| ctx.add(acc, ctx.mul(k, t)))
}

impl BiprojPair {
    pub fn new(ctx: &Field, k: u32, left: [Fe; 4], l: u32, right: [Fe; 4]) -> BiprojPair {
        let m = ctx.m();
        BiprojPair { space: Space::new(ctx.clone(), 2), k: k % m, l: l % m, left, right }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn ctx(&self) -> &Field {
        self.space.ctx()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn q(&self) -> u64 {
        ipow(self.ctx().p() as u64, self.k)
    }

    pub fn r(&self) -> u64 {
        ipow(self.ctx().p() as u64, self.l)
    }

    pub fn left(&self) -> [Fe; 4] {
        self.left
    }

    pub fn right(&self) -> [Fe; 4] {
        self.right
    }

    /// The polarization `(x,y) * (u,v)` in closed form.
    #[inline]
    pub fn mult(&self, a: &Point, b: &Point) -> Point {
        let ctx = self.space.ctx();
        let [x, y] = *a;
        let [u, v] = *b;
        [
            polar_component(ctx, &self.left, self.k, x, y, u, v),
            polar_component(ctx, &self.right, self.l, x, y, u, v),
        ]
    }

    /// `(f(x,y), g(x,y))`.
    pub fn eval(&self, a: &Point) -> Point {
        let ctx = self.space.ctx();
        [
            eval_component(ctx, &self.left, self.k, a[0], a[1]),
            eval_component(ctx, &self.right, self.l, a[0], a[1]),
        ]
    }

    /// The same map written as a Dembowski–Ostrom polynomial pair.
    pub fn to_dopoly(&self) -> DoPoly {
        let comp = |c: &[Fe; 4], e: u32| {
            let x = |i| Factor::new(0, i);
            let y = |i| Factor::new(1, i);
            let shapes = [(x(e), x(0)), (x(e), y(0)), (x(0), y(e)), (y(e), y(0))];
            DoComponent {
                quadratic: c
                    .iter()
                    .zip(shapes)
                    .map(|(&coeff, (left, right))| DoTerm { coeff, left, right })
                    .collect(),
                linear: Vec::new(),
            }
        };
        DoPoly::new(&self.space, vec![comp(&self.left, self.k), comp(&self.right, self.l)])
    }

    /// `[g, f]`: the same map with its output components exchanged.
    pub fn swap_components(&self) -> BiprojPair {
        BiprojPair { space: self.space.clone(), k: self.l, l: self.k, left: self.right, right: self.left }
    }

    /// The pair of `(x, y) -> F(a x, a y)`.
    pub fn scaled(&self, a: Fe) -> BiprojPair {
        let ctx = self.ctx();
        let sl = ctx.pow(a, self.q() + 1);
        let sr = ctx.pow(a, self.r() + 1);
        BiprojPair {
            space: self.space.clone(),
            k: self.k,
            l: self.l,
            left: self.left.map(|c| ctx.mul(c, sl)),
            right: self.right.map(|c| ctx.mul(c, sr)),
        }
    }
}

impl Bilinear for BiprojPair {
    fn space(&self) -> &Space {
        &self.space
    }

    fn mul(&self, x: &Point, y: &Point) -> Point {
        self.mult(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn dickson_spot_value() {
        let ctx = make_field(3, 2).unwrap();
        let g = ctx.generator();
        let pair = BiprojPair::new(&ctx, 0, [Fe::ONE, Fe::ZERO, Fe::ZERO, g], 1, [Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]);
        let e = [Fe::ONE, Fe::ZERO];
        assert_eq!(pair.mult(&e, &e), [ctx.from_int(2), Fe::ZERO]);
        assert_eq!(pair.mult(&[g, ctx.gen_pow(3)], &[Fe::ZERO; 2]), [Fe::ZERO; 2]);
    }

    #[test]
    fn closed_form_matches_polarization_exhaustively_in_gf9() {
        let ctx = make_field(3, 2).unwrap();
        let g = ctx.generator();
        let pair = BiprojPair::new(&ctx, 1, [g, Fe::ONE, ctx.gen_pow(5), Fe::ZERO], 1, [Fe::ZERO, g, Fe::ONE, ctx.gen_pow(2)]);
        let dop = pair.to_dopoly();
        let sp = pair.space().clone();
        for i in 0..sp.size() {
            let a = sp.point_at(i);
            let fa = pair.eval(&a);
            assert_eq!(dop.eval(&a), fa);
            for j in 0..sp.size() {
                let b = sp.point_at(j);
                let polar = sp.sub(&sp.sub(&pair.eval(&sp.add(&a, &b)), &fa), &pair.eval(&b));
                assert_eq!(pair.mult(&a, &b), polar);
                assert_eq!(dop.delta(&a, &b), polar);
            }
        }
    }
}
