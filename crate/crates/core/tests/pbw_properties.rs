use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use racah_core::linalg::rat;
use racah_core::pbw::{
    eliminate, evaluate, normal_form, parse, CentralValues, FreeElement, NormalElement, Symbol,
};
use racah_core::{build_r, BasisKind, ParamTriple, Rat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn word() -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(prop::sample::select(Symbol::ALL.to_vec()), 0..=4)
}

fn element() -> impl Strategy<Value = FreeElement> {
    prop::collection::vec((word(), small_rat()), 0..5).prop_map(|terms| {
        let mut x = FreeElement::zero();
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    })
}

fn triple() -> impl Strategy<Value = ParamTriple> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c)| ParamTriple::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn format_then_parse_is_identity(x in element()) {
        let text = x.to_string();
        prop_assert_eq!(parse(&text).unwrap(), x);
    }

    #[test]
    fn normal_form_text_round_trips(x in element()) {
        let nf = normal_form(&x).unwrap();
        prop_assert_eq!(normal_form(&parse(&nf.to_string()).unwrap()).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_sound(x in element(), p in triple(), d in 0u32..=3) {
        let rep = build_r(&p, d, BasisKind::V);
        let nf = normal_form(&x).unwrap().to_free();
        prop_assert_eq!(
            evaluate(&x, &rep, CentralValues::Matrices).unwrap(),
            evaluate(&nf, &rep, CentralValues::Matrices).unwrap()
        );
    }

    #[test]
    fn normal_form_is_linear(x in element(), y in element(), k in small_rat()) {
        let lhs = normal_form(&x.add(&y.scale(&k))).unwrap();
        let rhs = normal_form(&x).unwrap().add(&normal_form(&y).unwrap().scale(&k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_monomials_are_fixed(e in prop::array::uniform6(0u32..3)) {
        let m = NormalElement::monomial(e);
        prop_assert_eq!(normal_form(&m.to_free()).unwrap(), m);
    }

    #[test]
    fn elimination_preserves_value(x in element(), p in triple()) {
        let rep = build_r(&p, 2, BasisKind::W);
        prop_assert_eq!(
            evaluate(&x, &rep, CentralValues::Scalars).unwrap(),
            evaluate(&eliminate(&x), &rep, CentralValues::Scalars).unwrap()
        );
    }
}

/// `gamma = -alpha - beta` computed from the matrices, not from the scalars.
#[test]
fn gamma_is_minus_alpha_minus_beta_on_three_dimensional_modules() {
    let mut rng = StdRng::seed_from_u64(20);
    let mut r = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
    let gamma = parse("gamma").unwrap();
    let rhs = eliminate(&gamma);
    for _ in 0..20 {
        let p = ParamTriple::new(r(), r(), r());
        let rep = build_r(&p, 3, BasisKind::V);
        assert_eq!(
            evaluate(&gamma, &rep, CentralValues::Matrices).unwrap(),
            evaluate(&rhs, &rep, CentralValues::Matrices).unwrap(),
            "{p}"
        );
    }
}

#[test]
fn da_normal_form_on_modules() {
    let lhs = parse("D*A").unwrap();
    let rhs = parse("A*D + A*delta - A^2 - 2*A*B + 2*D - alpha").unwrap();
    assert_eq!(normal_form(&lhs).unwrap(), normal_form(&rhs).unwrap());
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..10 {
        let mut r = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let rep = build_r(&ParamTriple::new(r(), r(), r()), 3, BasisKind::V);
        assert_eq!(
            evaluate(&lhs, &rep, CentralValues::Matrices).unwrap(),
            evaluate(&rhs, &rep, CentralValues::Matrices).unwrap()
        );
    }
}
