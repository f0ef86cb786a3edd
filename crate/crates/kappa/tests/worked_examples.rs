//! Worked examples run end to end through the public API, from text input
//! to decisions.

use kappa::braiding::{braid_find, compose, parse_certificate, reflexive, telescope, verify, BraidVerdict};
use kappa::diophantine::{aleph0_extend_finite, decompose, universal_extend, DioMonoid};
use kappa::dsl::{parse_family, parse_monoid, parse_presentation, parse_vector, MonoidExpr};
use kappa::free_vectors::{CardVec, VectorMonoid};
use kappa::gallery::{DedekindElem, DedekindMonoid, HnpVector, LineElem, RationalLine};
use kappa::presentations::{
    corollary_checks, forms_equal, in_add, realizable_two_gen, Coef, CorollaryCase, Form, TwoGenPresentation,
};
use kappa::{card_leq, card_mul, card_sum, Budget, CardBoundMode, ExtCard, Family, KappaMonoid, Truth};

fn aleph(level: u32) -> ExtCard {
    ExtCard::aleph(level).unwrap()
}

fn vector(text: &str) -> CardVec {
    parse_vector(text).unwrap()
}

fn dio(text: &str, bound: CardBoundMode) -> DioMonoid {
    match parse_monoid(text).unwrap() {
        MonoidExpr::Dio(sys) => DioMonoid::new(sys, bound),
        other => panic!("not a Diophantine monoid: {other}"),
    }
}

fn vec_family(text: &str, dim: usize) -> Family<CardVec> {
    parse_family(text).unwrap().to_family(|e| e.to_vector(dim)).unwrap()
}

#[test]
fn cardinal_sums_follow_the_closed_form() {
    let a0 = ExtCard::aleph0();
    let one = ExtCard::one();
    assert_eq!(card_sum([(&one, &a0)]), a0);
    assert_eq!(
        card_sum([(&ExtCard::from(5u64), &one), (&ExtCard::zero(), &a0)]),
        ExtCard::from(5u64)
    );
    assert_eq!(
        card_sum([(&a0, &ExtCard::from(3u64)), (&ExtCard::from(2u64), &aleph(1))]),
        aleph(1)
    );
    assert_eq!(card_mul(&ExtCard::zero(), &aleph(1)), ExtCard::zero());
    assert_eq!(
        card_mul(&ExtCard::from(3u64), &ExtCard::from(4u64)),
        ExtCard::from(12u64)
    );
    assert!(card_leq(&ExtCard::from(7u64), &a0));
    assert!(!card_leq(&aleph(1), &a0));
}

#[test]
fn vector_sums_are_coordinatewise() {
    let m = VectorMonoid::free(2, aleph(1));
    let sum = |text: &str| m.ksum(&vec_family(text, 2)).unwrap();
    assert_eq!(sum("fam { (1,0) * aleph0 }"), vector("(aleph0, 0)"));
    assert_eq!(sum("fam { (1,2) * 2, (0,1) }"), vector("(2, 5)"));
    assert_eq!(
        sum("fam { (aleph0,1) * 3, (1,aleph1) * aleph0 }"),
        vector("(aleph0, aleph1)")
    );
    assert_eq!(sum("fam { }"), vector("(0, 0)"));
}

#[test]
fn diagonal_and_doubled_systems_differ_at_aleph0() {
    let bound = CardBoundMode::at_most_level(0);
    let diagonal = dio("dio n=2 { eq: x0 = x1; }", bound.clone());
    let doubled = dio("dio n=2 { eq: 2 x0 = x0 + x1; }", bound);
    assert!(diagonal.member(&vector("(aleph0, aleph0)")).unwrap());
    assert!(!diagonal.member(&vector("(aleph0, 3)")).unwrap());
    assert!(doubled.member(&vector("(aleph0, 3)")).unwrap());

    let wide = universal_extend(&doubled, &aleph(1)).unwrap();
    assert!(wide.member(&vector("(aleph1, 7)")).unwrap());
    let diag_wide = universal_extend(&diagonal, &aleph(2)).unwrap();
    assert!(diag_wide.member(&vector("(aleph1, aleph1)")).unwrap());

    let finite = dio("dio n=2 { eq: x0 = x1; }", CardBoundMode::finite());
    let hat = aleph0_extend_finite(&finite).unwrap();
    assert_eq!(hat.contains(&vector("(aleph0, aleph0)")), Truth::Yes);
    for k in 0..6 {
        assert_eq!(hat.contains(&vector(&format!("(aleph0, {k})"))), Truth::No);
        assert_eq!(hat.contains(&vector(&format!("({k}, {k})"))), Truth::Yes);
    }
}

#[test]
fn decompositions_recombine() {
    let m = dio("dio n=2 { eq: x0 = x1; }", CardBoundMode::AtMost(aleph(1)));
    let d = decompose(&m, &vector("(aleph1, aleph1)")).unwrap();
    assert_eq!(d.beta, vector("(aleph0, aleph0)"));
    assert_eq!(
        d.layers,
        vec![
            (aleph(0), vector("(aleph0, aleph0)")),
            (aleph(1), vector("(aleph0, aleph0)")),
        ]
    );
    assert_eq!(d.recombine(), vector("(aleph1, aleph1)"));

    let free = dio("dio n=3 { }", CardBoundMode::AtMost(aleph(1)));
    let d = decompose(&free, &vector("(aleph1, 5, aleph0)")).unwrap();
    assert_eq!(d.beta, vector("(aleph0, 5, aleph0)"));
    assert_eq!(d.layers[0].1, vector("(aleph0, 0, aleph0)"));
    assert_eq!(d.layers[1].1, vector("(aleph0, 0, 0)"));
}

#[test]
fn naturals_braid_when_both_families_are_infinite() {
    let m = VectorMonoid::free(1, ExtCard::aleph0());
    let lambda = ExtCard::aleph0();
    let ones = vec_family("fam { 1 * aleph0 }", 1);
    let twos = vec_family("fam { 2 * aleph0 }", 1);
    let fours = vec_family("fam { 4 * aleph0 }", 1);

    let cert =
        parse_certificate::<CardVec>("PREFIX; B i={} j={} u=(0) v'=(0); CYCLE; B i={(1)*2} j={(2)} u=(2) v'=(0)")
            .unwrap();
    assert!(verify(&m, &ones, &twos, &cert, &lambda).is_valid());
    let (a, b) = telescope(&m, &ones, &twos).unwrap();
    assert_eq!((a.clone(), b), (vector("(aleph0)"), vector("(aleph0)")));

    let finite = parse_certificate::<CardVec>("PREFIX; B i={(1)*2} j={(2)} u=(2) v'=(0)").unwrap();
    let (x, y) = (vec_family("fam { 1 * 2 }", 1), vec_family("fam { 2 }", 1));
    assert!(verify(&m, &x, &y, &finite, &lambda).is_valid());
    assert!(!verify(&m, &ones, &vec_family("fam { 3 }", 1), &cert, &lambda).is_valid());

    let budget = &mut Budget::default();
    let c12 = braid_find(&m, &ones, &twos, &lambda, budget).unwrap();
    let c24 = braid_find(&m, &twos, &fours, &lambda, budget).unwrap();
    let (c12, c24) = (c12.certificate().unwrap().clone(), c24.certificate().unwrap().clone());
    let (c14, _) = compose(&m, &ones, &fours, &c12, &c24, &lambda, budget).unwrap();
    assert!(verify(&m, &ones, &fours, &c14, &lambda).is_valid());
    let (same, _) = compose(&m, &ones, &twos, &reflexive(&m, &ones), &c12, &lambda, budget).unwrap();
    assert!(verify(&m, &ones, &twos, &same, &lambda).is_valid());

    let v = braid_find(
        &m,
        &vec_family("fam { 1 * 3 }", 1),
        &vec_family("fam { 3 }", 1),
        &lambda,
        budget,
    )
    .unwrap();
    assert!(matches!(v, BraidVerdict::Braided(_)));
    let v = braid_find(&m, &ones, &vec_family("fam { 3 }", 1), &lambda, budget).unwrap();
    assert_eq!(v.truth(), Truth::No);

    let plane = VectorMonoid::free(2, ExtCard::aleph0());
    let v = braid_find(
        &plane,
        &vec_family("fam { (1,0) * aleph0 }", 2),
        &vec_family("fam { (0,1) * aleph0 }", 2),
        &lambda,
        budget,
    )
    .unwrap();
    assert_eq!(v.truth(), Truth::No);
}

#[test]
fn presentations_from_text() {
    let budget = &mut Budget::default();
    let free = parse_presentation("twogen { }").unwrap();
    assert_eq!(forms_equal(&free, Form::X1, Form::X2, budget).truth(), Truth::No);
    let swap = parse_presentation("twogen { rel: 1*X1 = 1*X2; }").unwrap();
    assert_eq!(
        forms_equal(&swap, Form::finite(3, 0), Form::finite(0, 3), budget).truth(),
        Truth::Yes
    );
    let absorbed = parse_presentation("twogen { rel: 1*X1 + 1*X2 = 1*X2; }").unwrap();
    assert_eq!(
        forms_equal(&absorbed, Form::finite(5, 1), Form::X2, budget).truth(),
        Truth::Yes
    );
    let left = Form::new(Coef::Inf, Coef::Fin(1));
    assert_eq!(forms_equal(&absorbed, left, Form::X2, budget).truth(), Truth::No);

    assert_eq!(in_add(&free, Form::X1, Form::finite(1, 1), budget).truth(), Truth::Yes);
    assert_eq!(in_add(&free, Form::X2, Form::X1, budget).truth(), Truth::No);
    let doubled = parse_presentation("twogen { rel: 2*X1 = 1*X2; }").unwrap();
    assert_eq!(in_add(&doubled, Form::X2, Form::X1, budget).truth(), Truth::Yes);

    assert_eq!(realizable_two_gen(&free, budget).verdict, Truth::Yes);
    let collapsed =
        parse_presentation("twogen { rel: aleph0*X1 = aleph0*X2; rel: aleph0*X1 = aleph0*X1 + aleph0*X2; }").unwrap();
    assert_eq!(collapsed, TwoGenPresentation::plane_with_infinity());
    assert_eq!(realizable_two_gen(&collapsed, budget).verdict, Truth::No);

    let c = corollary_checks(&free, budget);
    assert_eq!((c.case, c.consistent), (CorollaryCase::Incomparable, Truth::Yes));
    let c = corollary_checks(&collapsed, budget);
    assert_eq!(c.case, CorollaryCase::Incomparable);
    assert_eq!(c.realizability.verdict, Truth::No);
}

#[test]
fn gallery_sums() {
    let q = RationalLine;
    let half = LineElem::plain(1, 2);
    let sum = |fam: Family<LineElem>| q.ksum(&fam).unwrap();
    assert_eq!(sum(Family::new().with(half.clone(), 2u64)), LineElem::plain(1, 1));
    assert_eq!(
        sum(Family::singleton(LineElem::plain(1, 3), ExtCard::aleph0())),
        LineElem::Infinity
    );
    assert_eq!(
        sum(Family::new().with(LineElem::tilde(1, 2), 1u64).with(half, 1u64)),
        LineElem::tilde(1, 1)
    );

    let d = DedekindMonoid::new(vec![2], ExtCard::aleph0()).unwrap();
    let g = d.element(&ExtCard::one(), &[1]).unwrap();
    assert_eq!(
        d.ksum(&Family::new().with(g.clone(), 2u64)).unwrap(),
        d.element(&ExtCard::from(2u64), &[0]).unwrap()
    );
    assert_eq!(
        d.ksum(&Family::singleton(g, ExtCard::aleph0())).unwrap(),
        DedekindElem::Infinite(ExtCard::aleph0())
    );
    assert_eq!(d.ksum(&Family::new()).unwrap(), DedekindElem::Zero);
    assert!(d.member_pair(&ExtCard::aleph0(), &[0]));
    assert!(!d.member_pair(&ExtCard::aleph0(), &[1]));
}

#[test]
fn hnp_membership() {
    let ones = || vec!["1".parse().unwrap(), "1".parse().unwrap()];
    let member = |x: &str| HnpVector::new(vector(x), ones()).unwrap().member(&aleph(1)).unwrap();
    assert!(member("(aleph1, aleph0)"));
    assert!(!member("(aleph0, 5)"));
    assert!(!member("(aleph0, aleph1)"));
    assert!(HnpVector::new(vector("(3, aleph0)"), ones())
        .unwrap()
        .member(&aleph(1))
        .is_err());
}
