use semifield::families::{self, Family, FamilySParams};
use semifield::gf::numtheory::gcd;
use semifield::gf::{make_field, Fe};
use semifield::linmap::{Bilinear, Presemifield, Product};
use semifield::planarity::{certify_with, OracleMode};

fn s_params(k: u32, b: Fe, a: Fe) -> FamilySParams {
    FamilySParams { p: 3, m: 6, k, b, a }
}

#[test]
fn family_s_smallest_instance() {
    let ctx = make_field(3, 6).unwrap();
    let ps = families::family_s(&s_params(2, ctx.generator(), Fe::ONE), false).unwrap();
    let pair = ps.biproj().unwrap();
    assert_eq!((pair.q(), pair.r()), (9, 243));
    assert_eq!(pair.left(), [Fe::ONE, Fe::ZERO, Fe::ZERO, ctx.generator()]);
    assert_eq!(pair.right()[2], ctx.inv(ctx.generator()));
    let err = families::family_s(&s_params(3, ctx.generator(), Fe::ONE), false).unwrap_err();
    assert!(err.to_string().contains("m/e odd violated"), "{err}");
    let err = families::family_s(&s_params(2, ctx.gen_pow(2), Fe::ONE), false).unwrap_err();
    assert!(err.to_string().contains("B must be a non-square"), "{err}");
}

/// The accepted set is exactly: `0 < k < m`, `m/gcd(k,m)` odd, `B` a non-square,
/// `a` a nonzero element of GF(27).
#[test]
fn family_s_accepts_exactly_the_admissible_parameters() {
    let ctx = make_field(3, 6).unwrap();
    let bs = [Fe::ZERO, Fe::ONE, ctx.gen_pow(2), ctx.generator(), ctx.gen_pow(3)];
    let mut accepted = 0;
    for k in 0..8u32 {
        for &b in &bs {
            for a in ctx.elements() {
                let expect = (1..6).contains(&k)
                    && (6 / gcd(k as u64, 6)) % 2 == 1
                    && !b.is_zero()
                    && b.dlog().unwrap() % 2 == 1
                    && !a.is_zero()
                    && ctx.pow(a, 27) == a;
                let got = families::family_s(&s_params(k, b, a), false).is_ok();
                assert_eq!(got, expect, "k={k} B={b:?} a={a:?}");
                accepted += got as u32;
            }
        }
    }
    assert_eq!(accepted, 2 * 2 * 26);
}

#[test]
fn other_constructor_examples() {
    let f9 = make_field(3, 2).unwrap();
    let g = f9.generator();
    let d = families::dickson(3, 2, 1, g, false).unwrap();
    let pair = d.biproj().unwrap();
    assert_eq!(pair.left(), [Fe::ONE, Fe::ZERO, Fe::ZERO, g]);
    assert_eq!(pair.right(), [Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]);
    assert_eq!((pair.q(), pair.r()), (1, 3));

    let x4 = families::albert(3, 3, 1, None, false).unwrap();
    let Product::Do(poly) = x4.product() else { panic!("X^4 over GF(27) is univariate") };
    assert_eq!(poly.univariate_terms().unwrap(), vec![(0, 1, Fe::ONE)]);

    assert!(families::zhou_pott(3, 2, 1, 1, g, false).is_err());
    assert!(families::cg(3, 2).is_err());

    let f625 = make_field(5, 4).unwrap();
    let b4 = families::b4(5, 1, 2, f625.generator()).unwrap();
    let Product::Do(poly) = b4.product() else { panic!("B4 is univariate") };
    // X^{26} - a^4 X^{250}: exponents 25 + 1 and 125 + 125.
    let mut exps: Vec<(u64, u64)> = poly.univariate_terms().unwrap().iter().map(|&(i, j, _)| (5u64.pow(i), 5u64.pow(j))).collect();
    exps.sort();
    assert_eq!(exps, vec![(1, 25), (125, 125)]);
    let coeff = poly.univariate_terms().unwrap().into_iter().find(|t| t.0 == 3).unwrap().2;
    assert_eq!(coeff, f625.neg(f625.pow(f625.generator(), 4)));
    assert!(families::check_b4(5, 1, 1).is_err());

    let cm = families::cm_dy(3, 5, true).unwrap();
    let Product::Do(poly) = cm.product() else { panic!() };
    // X^10 + X^6 - X^2
    let f243 = make_field(3, 5).unwrap();
    assert_eq!(poly.univariate_terms().unwrap(), vec![(0, 0, f243.neg(Fe::ONE)), (0, 2, Fe::ONE), (1, 1, Fe::ONE)]);
    assert!(!poly.has_linear_part());
}

#[test]
fn degenerate_parameters_are_tagged() {
    let ctx = make_field(3, 6).unwrap();
    let g = ctx.generator();
    let s0 = families::family_s(&s_params(2, g, Fe::ZERO), true).unwrap();
    assert_eq!(s0.label().reduced_to, Some(Family::ZhouPott));
    let sq = families::family_s(&s_params(0, g, Fe::ONE), true).unwrap();
    assert_eq!(sq.label().reduced_to, Some(Family::Dickson));
    assert!(families::family_s(&s_params(2, g, Fe::ZERO), false).is_err());
    let zp = families::zhou_pott(3, 3, 0, 1, make_field(3, 3).unwrap().generator(), true).unwrap();
    assert_eq!(zp.label().reduced_to, Some(Family::Dickson));
    assert_eq!(zp.label().predicted_nuclei(), None);
}

fn certify_all(items: Vec<(String, semifield::Result<Presemifield>)>) {
    for (name, ps) in items {
        let ps = ps.unwrap_or_else(|e| panic!("{name}: {e}"));
        let cert = certify_with(&ps, OracleMode::WithinCap).unwrap();
        assert!(cert.planar, "{name} is not planar");
        assert!(ps.is_commutative(), "{name} is not commutative");
    }
}

/// Every admissible tuple of the pair families over `M` with `|M|^2 <= 3^8`, plus
/// Family S at (3, 6) and the univariate families at small orders.
#[test]
fn constructor_outputs_are_planar() {
    let mut items: Vec<(String, semifield::Result<Presemifield>)> = Vec::new();
    for (p, m) in [(3u64, 2u32), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
        let a = families::default_non_square(p, m).unwrap();
        items.push((format!("field_pair({p},{m})"), families::field_pair(p, m, a)));
        for k in 1..m {
            if let Ok(ps) = families::dickson(p, m, k, a, false) {
                items.push((format!("dickson({p},{m},{k})"), Ok(ps)));
            }
            if let Ok(ps) = families::bh(p, m, k, a, false) {
                items.push((format!("bh({p},{m},{k})"), Ok(ps)));
            }
            if let Ok(ps) = families::albert_pair(p, 2 * m, k, a, false) {
                items.push((format!("albert_pair({p},{},{k})", 2 * m), Ok(ps)));
            }
            for j in 1..m {
                if let Ok(ps) = families::zhou_pott(p, m, k, j, a, false) {
                    items.push((format!("zp({p},{m},{k},{j})"), Ok(ps)));
                }
            }
        }
    }
    let ctx = make_field(3, 6).unwrap();
    for k in [2, 4] {
        for a in [Fe::ONE, ctx.gen_pow(28), ctx.gen_pow(28 * 13)] {
            items.push((format!("S(3,6,{k},{a:?})"), families::family_s(&s_params(k, ctx.generator(), a), false)));
        }
    }
    for n in 1..=6 {
        items.push((format!("X^2 over GF(3^{n})"), families::field(3, n)));
        for k in 1..n {
            if let Ok(ps) = families::albert_univariate(3, n, k, false) {
                items.push((format!("albert({n},{k})"), Ok(ps)));
            }
        }
    }
    items.push(("cmdy+(3,5)".into(), families::cm_dy(3, 5, true)));
    items.push(("cmdy-(3,5)".into(), families::cm_dy(3, 5, false)));
    items.push(("cg(3,3)".into(), families::cg(3, 3)));
    items.push(("cg(3,5)".into(), families::cg(3, 5)));
    items.push(("g(3,3)".into(), families::ganley(3, 3, make_field(3, 3).unwrap().generator())));
    items.push(("b4(5,1,2)".into(), families::b4(5, 1, 2, make_field(5, 4).unwrap().generator())));
    items.push(("zkw(3,1,2)".into(), families::zkw(3, 1, 2, make_field(3, 3).unwrap().generator())));
    items.push(("zkw(5,1,2)".into(), families::zkw(5, 1, 2, make_field(5, 3).unwrap().generator())));
    items.push(("b3(7,1,1)".into(), families::b3(7, 1, 1, make_field(7, 3).unwrap().generator())));
    assert!(items.len() > 40, "only {} instances", items.len());
    certify_all(items);
}

#[test]
fn zhou_pott_3_3_1_1_is_planar() {
    let ctx = make_field(3, 3).unwrap();
    let ps = families::zhou_pott(3, 3, 1, 1, ctx.generator(), false).unwrap();
    assert!(certify_with(&ps, OracleMode::Required).unwrap().planar);
    let sp = ps.space();
    assert_eq!(ps.mul(&sp.basis(0), &sp.zero()), sp.zero());
}
