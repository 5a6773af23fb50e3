use semifield::families::{self, FamilySParams, NucleiOrders};
use semifield::gf::{make_field, Fe};
use semifield::isotopy::{verify_isotopism, Isotopism};
use semifield::linmap::{Bilinear, LinMap, Presemifield};
use semifield::planarity::{certified, OracleMode};
use semifield::structure::{
    centralizer_elements, centralizer_enumerate, gamma_a, nuclei, presemifield_nuclei, unitalize, unitalize_default,
    verify_autotopism,
};
use semifield::Error;

fn orders(ps: Presemifield) -> NucleiOrders {
    let ps = certified(ps, OracleMode::WhenNeeded).unwrap();
    presemifield_nuclei(&ps).unwrap().orders()
}

fn nuc(l: u64, m: u64, r: u64) -> NucleiOrders {
    NucleiOrders { left: l, middle: m, right: r }
}

fn s(b: Fe, a: Fe) -> Presemifield {
    certified(families::family_s(&FamilySParams { p: 3, m: 6, k: 2, b, a }, false).unwrap(), OracleMode::WhenNeeded).unwrap()
}

#[test]
fn family_s_nuclei_for_every_a_and_two_non_squares() {
    let ctx = make_field(3, 6).unwrap();
    let l_units: Vec<Fe> = ctx.nonzero().filter(|&x| ctx.in_subfield(x, 3)).collect();
    for b in [ctx.generator(), ctx.gen_pow(5)] {
        for &a in &l_units {
            let rep = presemifield_nuclei(&s(b, a)).unwrap();
            assert_eq!(rep.orders(), nuc(3, 9, 3), "B={b:?} a={a:?}");
            assert_eq!(rep.matches, Some(true));
            assert!(rep.left.closed && rep.middle.closed && rep.right.closed);
        }
    }
}

#[test]
fn nuclei_of_small_known_families() {
    let f9 = make_field(3, 2).unwrap();
    assert_eq!(orders(families::dickson(3, 2, 1, f9.generator(), false).unwrap()), nuc(3, 9, 3));
    assert_eq!(orders(families::field(3, 2).unwrap()), nuc(9, 9, 9));
    assert_eq!(orders(families::albert_univariate(3, 3, 1, false).unwrap()), nuc(3, 3, 3));
    assert_eq!(orders(families::field_pair(3, 2, f9.generator()).unwrap()), nuc(81, 81, 81));
    assert_eq!(orders(families::field(5, 3).unwrap()), nuc(125, 125, 125));
}

#[test]
fn nuclei_need_a_certificate() {
    let ps = families::field(3, 2).unwrap();
    assert!(matches!(presemifield_nuclei(&ps), Err(Error::Uncertified)));
    assert!(matches!(unitalize_default(&ps), Err(Error::Uncertified)));
}

#[test]
fn unitalization_has_an_identity_and_is_isotopic() {
    let f27 = make_field(3, 3).unwrap();
    let ps = certified(families::zhou_pott(3, 3, 1, 1, f27.generator(), false).unwrap(), OracleMode::WhenNeeded).unwrap();
    let sp = ps.space().clone();
    let e1 = sp.point_at(1);
    let e2 = sp.point_at(400);
    let s1 = unitalize(&ps, &e1).unwrap();
    let s2 = unitalize(&ps, &e2).unwrap();
    assert!(matches!(unitalize(&ps, &sp.zero()), Err(Error::ZeroElement)));
    for s in [&s1, &s2] {
        for i in (0..sp.size()).step_by(37) {
            let x = sp.point_at(i);
            assert_eq!(s.mul(&s.unit(), &x), x);
            assert_eq!(s.mul(&x, &s.unit()), x);
        }
        // P(x, y) = S(R_e x, L_e y).
        let to_s = Isotopism::new(LinMap::identity(&sp), s.r_e().clone(), s.l_e().clone(), "P to S");
        assert!(verify_isotopism(&to_s, &ps, s).unwrap());
    }
    let r = s2.r_e().compose(&s1.r_e().invert().unwrap());
    let l = s2.l_e().compose(&s1.l_e().invert().unwrap());
    let change = Isotopism::new(LinMap::identity(&sp), r, l, "change of e");
    assert!(verify_isotopism(&change, &s1, &s2).unwrap());
    assert_eq!(nuclei(&s1).orders(), nuclei(&s2).orders());
}

#[test]
fn centralizer_order_and_condition_c() {
    let ctx = make_field(3, 6).unwrap();
    let cases = [
        (ctx.generator(), Fe::ONE),
        (ctx.generator(), ctx.gen_pow(28)),
        (ctx.generator(), ctx.gen_pow(280)),
        (ctx.gen_pow(5), Fe::ONE),
    ];
    for (b, a) in cases {
        let start = std::time::Instant::now();
        let rep = centralizer_enumerate(&s(b, a), true).unwrap();
        assert!(start.elapsed().as_secs() < 120);
        assert_eq!(rep.predicted, [5824, 11648]);
        assert!(rep.order == 5824 || rep.order == 11648, "B={b:?} a={a:?}: {}", rep.order);
        assert!(rep.matches);
        assert_eq!(rep.diagonal + rep.antidiagonal, rep.order);
        assert_eq!(rep.zsigmondy_prime, 7);
        assert_eq!(rep.index * 728, rep.order);
        assert!(rep.condition_c && rep.identity_present && rep.sylow_gammas_verified);
        let audit = rep.audit.unwrap();
        assert_eq!(audit.verified, rep.order);
        assert!(audit.solved >= audit.verified && audit.candidates >= audit.solved);
    }
}

#[test]
fn centralizer_elements_are_autotopisms_closed_under_composition() {
    let ps = s(make_field(3, 6).unwrap().generator(), Fe::ONE);
    let elems = centralizer_elements(&ps).unwrap();
    assert_eq!(elems.len(), 5824);
    let sp = ps.space().clone();
    for i in [0usize, 1, 999, 3000, 5823] {
        for j in [17usize, 2048, 4444] {
            let a = elems[i].to_isotopism(&sp);
            let b = elems[j].to_isotopism(&sp);
            assert!(verify_autotopism(&a, &ps).unwrap());
            assert!(verify_autotopism(&a.then(&b), &ps).unwrap());
            assert!(verify_autotopism(&a.inverse().unwrap(), &ps).unwrap());
        }
    }
}

#[test]
fn autotopism_checks() {
    let ctx = make_field(3, 6).unwrap();
    let ps = s(ctx.generator(), Fe::ONE);
    let sp = ps.space().clone();
    assert!(verify_autotopism(&Isotopism::identity(&sp, "id"), &ps).unwrap());
    for a in [ctx.generator(), ctx.gen_pow(100), ctx.gen_pow(727)] {
        assert!(verify_autotopism(&gamma_a(&sp, a, 9, 243), &ps).unwrap());
        // Wrong exponents on the second component.
        assert!(!verify_autotopism(&gamma_a(&sp, a, 9, 27), &ps).unwrap());
    }
    let mut bad = gamma_a(&sp, ctx.generator(), 9, 243);
    bad.n = LinMap::diagonal_monomial(&sp, &[ctx.gen_pow(10), ctx.gen_pow(11)], 0);
    assert!(!verify_autotopism(&bad, &ps).unwrap());
}
