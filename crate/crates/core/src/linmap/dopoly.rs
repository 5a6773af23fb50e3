use serde::{Deserialize, Serialize};

use super::linear::{Point, Space};
use super::Bilinear;
use crate::gf::{Fe, Field};

/// `w^{p^exp}` where `w` is input variable number `var` (0 = x, 1 = y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub var: u8,
    pub exp: u32,
}

impl Factor {
    pub fn new(var: u8, exp: u32) -> Factor {
        Factor { var, exp }
    }

    #[inline]
    fn eval(self, ctx: &Field, pt: &Point) -> Fe {
        ctx.frobenius(pt[self.var as usize], self.exp as i64)
    }
}

/// `coeff * left * right`, a Dembowski–Ostrom monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoTerm {
    pub coeff: Fe,
    pub left: Factor,
    pub right: Factor,
}

/// `coeff * factor`; vanishes under polarization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinTerm {
    pub coeff: Fe,
    pub factor: Factor,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoComponent {
    pub quadratic: Vec<DoTerm>,
    pub linear: Vec<LinTerm>,
}

/// A Dembowski–Ostrom map `M^b -> M^b` (b = 1 or 2) plus optional linear part.
///
/// Terms are kept normalized: exponents reduced mod m, `left <= right`,
/// equal monomials merged and zero coefficients dropped.
#[derive(Clone, Debug)]
pub struct DoPoly {
    space: Space,
    components: Vec<DoComponent>,
}

impl PartialEq for DoPoly {
    fn eq(&self, other: &DoPoly) -> bool {
        self.space == other.space && self.components == other.components
    }
}

impl DoPoly {
    pub fn new(space: &Space, components: Vec<DoComponent>) -> DoPoly {
        assert_eq!(components.len(), space.blocks(), "one component per block");
        let ctx = space.ctx();
        let m = ctx.m();
        let fix = |f: Factor| {
            assert!((f.var as usize) < space.blocks(), "variable out of range");
            Factor::new(f.var, f.exp % m)
        };
        let components = components
            .into_iter()
            .map(|comp| {
                let mut quad: Vec<DoTerm> = Vec::new();
                for t in comp.quadratic {
                    let (a, b) = (fix(t.left), fix(t.right));
                    let (left, right) = if a <= b { (a, b) } else { (b, a) };
                    match quad.iter_mut().find(|u| u.left == left && u.right == right) {
                        Some(u) => u.coeff = ctx.add(u.coeff, t.coeff),
                        None => quad.push(DoTerm { coeff: t.coeff, left, right }),
                    }
                }
                quad.retain(|t| !t.coeff.is_zero());
                quad.sort_by_key(|t| (t.left, t.right));
                let mut lin: Vec<LinTerm> = Vec::new();
                for t in comp.linear {
                    let factor = fix(t.factor);
                    match lin.iter_mut().find(|u| u.factor == factor) {
                        Some(u) => u.coeff = ctx.add(u.coeff, t.coeff),
                        None => lin.push(LinTerm { coeff: t.coeff, factor }),
                    }
                }
                lin.retain(|t| !t.coeff.is_zero());
                lin.sort_by_key(|t| t.factor);
                DoComponent { quadratic: quad, linear: lin }
            })
            .collect();
        DoPoly { space: space.clone(), components }
    }

    /// `sum c x^{p^i + p^j} + sum b x^{p^i}` over a single field.
    pub fn univariate(ctx: &Field, quadratic: &[(Fe, u32, u32)], linear: &[(Fe, u32)]) -> DoPoly {
        let space = Space::new(ctx.clone(), 1);
        let comp = DoComponent {
            quadratic: quadratic
                .iter()
                .map(|&(coeff, i, j)| DoTerm { coeff, left: Factor::new(0, i), right: Factor::new(0, j) })
                .collect(),
            linear: linear.iter().map(|&(coeff, i)| LinTerm { coeff, factor: Factor::new(0, i) }).collect(),
        };
        DoPoly::new(&space, vec![comp])
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn components(&self) -> &[DoComponent] {
        &self.components
    }

    pub fn has_linear_part(&self) -> bool {
        self.components.iter().any(|c| !c.linear.is_empty())
    }

    /// `(i, j, coeff)` of a univariate map, for display.
    pub fn univariate_terms(&self) -> Option<Vec<(u32, u32, Fe)>> {
        (self.space.blocks() == 1)
            .then(|| self.components[0].quadratic.iter().map(|t| (t.left.exp, t.right.exp, t.coeff)).collect())
    }

    pub fn eval(&self, x: &Point) -> Point {
        let ctx = self.space.ctx();
        let mut out = self.space.zero();
        for (slot, comp) in out.iter_mut().zip(&self.components) {
            let mut acc = Fe::ZERO;
            for t in &comp.quadratic {
                let v = ctx.mul(t.left.eval(ctx, x), t.right.eval(ctx, x));
                acc = ctx.add(acc, ctx.mul(t.coeff, v));
            }
            for t in &comp.linear {
                acc = ctx.add(acc, ctx.mul(t.coeff, t.factor.eval(ctx, x)));
            }
            *slot = acc;
        }
        out
    }

    /// The polarization `F(x + y) - F(x) - F(y)`, evaluated termwise.
    #[inline]
    pub fn delta(&self, x: &Point, y: &Point) -> Point {
        let ctx = self.space.ctx();
        let mut out = self.space.zero();
        for (slot, comp) in out.iter_mut().zip(&self.components) {
            let mut acc = Fe::ZERO;
            for t in &comp.quadratic {
                let a = ctx.mul(t.left.eval(ctx, x), t.right.eval(ctx, y));
                let b = ctx.mul(t.left.eval(ctx, y), t.right.eval(ctx, x));
                acc = ctx.add(acc, ctx.mul(t.coeff, ctx.add(a, b)));
            }
            *slot = acc;
        }
        out
    }
}

impl Bilinear for DoPoly {
    fn space(&self) -> &Space {
        &self.space
    }

    fn mul(&self, x: &Point, y: &Point) -> Point {
        self.delta(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn square_over_gf3() {
        let ctx = make_field(3, 1).unwrap();
        let f = DoPoly::univariate(&ctx, &[(Fe::ONE, 0, 0)], &[]);
        let one = [Fe::ONE, Fe::ZERO];
        assert_eq!(f.delta(&one, &one)[0], ctx.from_int(2));
    }

    #[test]
    fn x4_over_gf27() {
        let ctx = make_field(3, 3).unwrap();
        let f = DoPoly::univariate(&ctx, &[(Fe::ONE, 1, 0)], &[]);
        let g = [ctx.generator(), Fe::ZERO];
        assert_eq!(f.delta(&g, &g)[0], ctx.mul(ctx.from_int(2), ctx.pow(ctx.generator(), 4)));
        for x in ctx.elements() {
            let pt = [x, Fe::ZERO];
            assert!(f.space.is_zero(&f.delta(&pt, &f.space.zero())));
            let direct = ctx.add(ctx.mul(ctx.pow(x, 3), x), ctx.mul(x, ctx.pow(x, 3)));
            assert_eq!(f.delta(&pt, &pt)[0], direct);
        }
    }

    #[test]
    fn normalization_merges_terms() {
        let ctx = make_field(3, 2).unwrap();
        let f = DoPoly::univariate(&ctx, &[(Fe::ONE, 1, 0), (Fe::ONE, 0, 1), (Fe::ONE, 2, 2)], &[]);
        let terms = f.univariate_terms().unwrap();
        assert_eq!(terms, vec![(0, 0, Fe::ONE), (0, 1, ctx.from_int(2))]);
    }
}
