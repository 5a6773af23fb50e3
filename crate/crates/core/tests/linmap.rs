use proptest::prelude::*;
use semifield::families::{self, FamilySParams};
use semifield::gf::{make_field, Fe, Field};
use semifield::linmap::{Bilinear, BiprojPair, DoPoly, LinMap, LinPoly, Point, Space};

/// `F(x + y) - F(x) - F(y)` straight from the map's values.
fn polarize(eval: impl Fn(&Point) -> Point, sp: &Space, x: &Point, y: &Point) -> Point {
    sp.sub(&sp.sub(&eval(&sp.add(x, y)), &eval(x)), &eval(y))
}

fn all_points(sp: &Space) -> Vec<Point> {
    (0..sp.size()).map(|i| sp.point_at(i)).collect()
}

fn pair_from_codes(ctx: &Field, k: u32, l: u32, codes: [u32; 8]) -> BiprojPair {
    let c = codes.map(|c| ctx.from_code(c % ctx.order() as u32));
    BiprojPair::new(ctx, k, [c[0], c[1], c[2], c[3]], l, [c[4], c[5], c[6], c[7]])
}

#[test]
fn polarization_examples() {
    let f3 = make_field(3, 1).unwrap();
    let sq = DoPoly::univariate(&f3, &[(Fe::ONE, 0, 0)], &[]);
    assert_eq!(sq.delta(&[Fe::ONE, Fe::ZERO], &[Fe::ONE, Fe::ZERO])[0], f3.from_int(2));
    let f27 = make_field(3, 3).unwrap();
    let x4 = DoPoly::univariate(&f27, &[(Fe::ONE, 0, 1)], &[]);
    let g = f27.generator();
    assert_eq!(x4.delta(&[g, Fe::ZERO], &[g, Fe::ZERO])[0], f27.mul(f27.from_int(2), f27.pow(g, 4)));
    for x in f27.elements() {
        assert!(x4.delta(&[x, Fe::ZERO], &[Fe::ZERO; 2])[0].is_zero());
    }
    let f9 = make_field(3, 2).unwrap();
    let d = families::dickson(3, 2, 1, f9.generator(), false).unwrap();
    let e0 = [Fe::ONE, Fe::ZERO];
    assert_eq!(d.mul(&e0, &e0), [f9.from_int(2), Fe::ZERO]);
    let z = d.space().zero();
    assert_eq!(d.mul(&[g, g], &z), z);
}

/// Symmetry and bilinearity of every univariate and pair map on fields of at most 81 elements.
#[test]
fn polarization_symmetric_and_bilinear_exhaustive_small() {
    let f9 = make_field(3, 2).unwrap();
    let f81 = make_field(3, 4).unwrap();
    let f27 = make_field(3, 3).unwrap();
    let maps = vec![
        DoPoly::univariate(&f9, &[(Fe::ONE, 0, 0)], &[]),
        DoPoly::univariate(&f27, &[(Fe::ONE, 0, 1)], &[(f27.generator(), 2)]),
        DoPoly::univariate(&f81, &[(f81.generator(), 0, 2), (Fe::ONE, 1, 1)], &[(Fe::ONE, 0)]),
        families::dickson(3, 2, 1, f9.generator(), false).unwrap().biproj().unwrap().to_dopoly(),
    ];
    for d in &maps {
        let sp = d.space();
        let pts = all_points(sp);
        for x in &pts {
            for y in &pts {
                let v = d.delta(x, y);
                assert_eq!(v, d.delta(y, x));
                assert_eq!(v, polarize(|z| d.eval(z), sp, x, y));
            }
        }
        for x in pts.iter().step_by(3) {
            for x2 in pts.iter().step_by(5) {
                for y in pts.iter().step_by(7) {
                    assert_eq!(d.delta(&sp.add(x, x2), y), sp.add(&d.delta(x, y), &d.delta(x2, y)));
                }
            }
        }
    }
}

#[test]
fn biproj_mult_matches_polarization_exhaustive_at_3_2() {
    let ctx = make_field(3, 2).unwrap();
    let mut pairs = vec![
        families::dickson(3, 2, 1, ctx.generator(), false).unwrap().biproj().unwrap().clone(),
        families::field_pair(3, 2, ctx.generator()).unwrap().biproj().unwrap().clone(),
    ];
    for seed in 0..6u32 {
        let codes = [0, 1, 2, 3, 4, 5, 6, 7].map(|i| (seed * 31 + i * 7 + seed * i) % 9);
        pairs.push(pair_from_codes(&ctx, seed % 2, (seed + 1) % 2, codes));
    }
    for pair in &pairs {
        let sp = pair.space();
        let pts = all_points(sp);
        for x in &pts {
            for y in &pts {
                let w = pair.mult(x, y);
                assert_eq!(w, polarize(|z| pair.eval(z), sp, x, y));
                assert_eq!(w, pair.to_dopoly().delta(x, y));
            }
        }
    }
}

#[test]
fn gamma_identity_exhaustive_at_3_2() {
    let ctx = make_field(3, 2).unwrap();
    for seed in 0..4u32 {
        let codes = [0, 1, 2, 3, 4, 5, 6, 7].map(|i| (seed * 13 + i * 5 + 1) % 9);
        let pair = pair_from_codes(&ctx, seed % 2, 1, codes);
        let sp = pair.space();
        let pts = all_points(sp);
        for a in ctx.nonzero() {
            for x in &pts {
                for y in pts.iter().step_by(2) {
                    let w = pair.mult(x, y);
                    let lhs = pair.mult(&sp.scale(a, x), &sp.scale(a, y));
                    assert_eq!(lhs, [ctx.mul(ctx.pow(a, pair.q() + 1), w[0]), ctx.mul(ctx.pow(a, pair.r() + 1), w[1])]);
                }
            }
        }
    }
}

#[test]
fn left_multiplication_is_full_rank_for_family_s() {
    let ctx = make_field(3, 6).unwrap();
    let ps = families::family_s(&FamilySParams { p: 3, m: 6, k: 2, b: ctx.generator(), a: Fe::ONE }, false).unwrap();
    let sp = ps.space().clone();
    assert!(ps.left_mult_matrix(&sp.zero()).matrix().rank() == 0);
    for i in [1u64, 2, 100, 5000, 531_440] {
        assert!(ps.left_mult_matrix(&sp.point_at(i)).is_invertible());
    }
    let f9 = families::field(3, 2).unwrap();
    let g = f9.space().ctx().generator();
    assert!(f9.left_mult_matrix(&[g, Fe::ZERO]).is_invertible());
}

#[test]
fn linmap_identity_and_monomial_composition() {
    let ctx = make_field(3, 4).unwrap();
    let sp = Space::new(ctx.clone(), 2);
    let id = LinMap::identity(&sp);
    assert_eq!(id.invert().unwrap(), id);
    let g = ctx.generator();
    for (i, j) in [(0i64, 1i64), (1, 3), (2, 2), (3, 3)] {
        let a = LinMap::diagonal_monomial(&sp, &[g, ctx.pow(g, 5)], i);
        let b = LinMap::diagonal_monomial(&sp, &[ctx.pow(g, 7), Fe::ONE], j);
        let c = a.compose(&b);
        let blocks = c.block_form();
        let (_, e0) = blocks[0].as_monomial().expect("monomial block");
        assert_eq!(e0 as i64, (i + j) % 4);
        assert!(blocks[1].is_zero() && blocks[2].is_zero());
        let pt = sp.point_at(1234);
        assert_eq!(c.apply(&pt), a.apply(&b.apply(&pt)));
    }
    let poly = LinPoly::from_terms(&ctx, [(0, g), (1, Fe::ONE), (5, g)]);
    assert_eq!(poly.terms().len(), 2, "x^{{p^5}} folds onto x^p");
}

fn invertible_map(sp: &Space, seed: u64) -> LinMap {
    let ctx = sp.ctx();
    let g = ctx.generator();
    let a = LinMap::antidiagonal_monomial(sp, [ctx.pow(g, seed % 7 + 1), g], (seed % 3) as i64);
    let b = LinMap::from_blocks(
        sp,
        vec![
            LinPoly::monomial(ctx, Fe::ONE, 0),
            LinPoly::monomial(ctx, ctx.pow(g, seed), 1),
            LinPoly::zero(),
            LinPoly::monomial(ctx, Fe::ONE, 0),
        ],
    );
    a.compose(&b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn family_s_polarization_at_3_12(x in 0u64..531_441, x2 in 0u64..531_441, y in 0u64..531_441) {
        let ctx = make_field(3, 6).unwrap();
        let ps = families::family_s(&FamilySParams { p: 3, m: 6, k: 2, b: ctx.generator(), a: Fe::ONE }, false).unwrap();
        let pair = ps.biproj().unwrap();
        let sp = ps.space();
        let (x, x2, y) = (sp.point_at(x), sp.point_at(x2), sp.point_at(y));
        let w = ps.mul(&x, &y);
        prop_assert_eq!(w, ps.mul(&y, &x));
        prop_assert_eq!(ps.mul(&sp.add(&x, &x2), &y), sp.add(&w, &ps.mul(&x2, &y)));
        prop_assert_eq!(w, polarize(|z| pair.eval(z), sp, &x, &y));
        prop_assert_eq!(w, pair.to_dopoly().delta(&x, &y));
    }

    #[test]
    fn gamma_identity_random_at_3_6(codes in prop::array::uniform8(0u32..729), k in 0u32..6, l in 0u32..6,
                                    x in 0u64..531_441, y in 0u64..531_441, a in 1u32..729) {
        let ctx = make_field(3, 6).unwrap();
        let pair = pair_from_codes(&ctx, k, l, codes);
        let sp = pair.space();
        let a = ctx.from_code(a);
        let (x, y) = (sp.point_at(x), sp.point_at(y));
        let w = pair.mult(&x, &y);
        let lhs = pair.mult(&sp.scale(a, &x), &sp.scale(a, &y));
        prop_assert_eq!(lhs, [ctx.mul(ctx.pow(a, pair.q() + 1), w[0]), ctx.mul(ctx.pow(a, pair.r() + 1), w[1])]);
        prop_assert_eq!(pair.scaled(a).mult(&x, &y), lhs);
    }
}

proptest! {
    #[test]
    fn linmap_inverse_round_trip(seed in 0u64..500, v in 0u64..6561) {
        let sp = Space::new(make_field(3, 4).unwrap(), 2);
        let l = invertible_map(&sp, seed);
        let inv = l.invert().unwrap();
        prop_assert_eq!(l.compose(&inv), LinMap::identity(&sp));
        prop_assert_eq!(inv.compose(&l), LinMap::identity(&sp));
        let pt = sp.point_at(v);
        prop_assert_eq!(inv.apply(&l.apply(&pt)), pt);
    }
}
