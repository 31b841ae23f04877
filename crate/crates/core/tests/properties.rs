use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use twobridge::knots::{stratum_of, KnotClass};
use twobridge::{canonicalize, even_expansion, EvenSequence, Mode, Rational};

/// Random even-length sequences of nonzero even entries with `|e| <= 50`.
fn any_sequence() -> impl Strategy<Value = EvenSequence> {
    (1usize..=6)
        .prop_flat_map(|half| prop::collection::vec((1i64..=25, any::<bool>()), 2 * half))
        .prop_map(|v| {
            let e: Vec<i64> = v.iter().map(|&(m, pos)| if pos { 2 * m } else { -2 * m }).collect();
            EvenSequence::from_i64s(&e).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn value_agrees_with_matrix_product(s in any_sequence()) {
        prop_assert_eq!(s.cf_value().unwrap(), s.cf_value_by_matrices().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn expansion_inverts_evaluation(s in any_sequence()) {
        let x = s.cf_value().unwrap();
        prop_assert_eq!(even_expansion(&x).unwrap(), s);
    }

    #[test]
    fn value_is_a_knot_fraction(s in any_sequence()) {
        let x = s.cf_value().unwrap();
        prop_assert!(x.abs() < Rational::one() && !x.is_zero());
        prop_assert!(x.denom() % 2 == BigInt::from(1));
    }

    #[test]
    fn canonical_form_is_constant_on_orbits(s in any_sequence()) {
        let d = canonicalize(&s, Mode::MirrorDistinct);
        prop_assert_eq!(&canonicalize(&s.reverse_negate(), Mode::MirrorDistinct), &d);
        let c = canonicalize(&s, Mode::MirrorCollapsed);
        for t in [s.negate(), s.reverse(), s.reverse_negate()] {
            prop_assert_eq!(&canonicalize(&t, Mode::MirrorCollapsed), &c);
        }
        prop_assert!(c.canonical() <= d.canonical());
        prop_assert!(d.canonical() <= &s);
    }

    #[test]
    fn class_text_round_trips(s in any_sequence(), collapsed in any::<bool>()) {
        let mode = if collapsed { Mode::MirrorCollapsed } else { Mode::MirrorDistinct };
        let k = canonicalize(&s, mode);
        prop_assert_eq!(k.to_string().parse::<KnotClass>().unwrap(), k);
    }

    #[test]
    fn crossing_number_parity(s in any_sequence()) {
        let c = s.crossing_number();
        let ell = BigUint::from(s.sign_changes());
        prop_assert_eq!(&c % 2u32, &ell % 2u32);
        prop_assert!(c > BigUint::from(s.len()));
        prop_assert_eq!(stratum_of(&s).crossing_number(), c);
        prop_assert_eq!(s.genus() * 2, s.len());
    }

    #[test]
    fn rational_arithmetic_is_a_field(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        prop_assert_eq!(&x + &y - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&x * &y / &y, x.clone());
        }
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }
}
