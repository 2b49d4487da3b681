use proptest::prelude::*;

use domestic_ar::cyclo::{rat, Cyclo, Rational};
use domestic_ar::quiver::Quiver;

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15];

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(CONDUCTORS)
}

fn cyclo_at(n: u32) -> impl Strategy<Value = Cyclo> {
    prop::collection::vec((0..n as i64, -6i64..=6, 1i64..=4), 0..5).prop_map(move |terms| {
        Cyclo::from_exponents(n, terms.into_iter().map(|(k, a, b)| (k, rat(a, b))))
    })
}

fn triple() -> impl Strategy<Value = (Cyclo, Cyclo, Cyclo)> {
    conductor().prop_flat_map(|n| (cyclo_at(n), cyclo_at(n), cyclo_at(n)))
}

fn units(n: u32) -> Vec<i64> {
    Cyclo::galois_exponents(n)
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Cyclo::one(a.conductor()), a.clone());
    }

    #[test]
    fn galois_is_a_homomorphism((a, b, _c) in triple(), pick in any::<prop::sample::Index>()) {
        let ks = units(a.conductor());
        let k = ks[pick.index(ks.len())];
        let s = |x: &Cyclo| x.conjugate(k).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
    }

    #[test]
    fn embedding_commutes_with_arithmetic((a, b, _c) in triple(), m in 1u32..=3) {
        let target = a.conductor() * m;
        let e = |x: &Cyclo| x.embed(target).unwrap();
        prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
        prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
        // equality is representation independent
        prop_assert_eq!(e(&a), a.clone());
    }

    #[test]
    fn orbit_trace_of_norm_form_is_nonnegative_rational(a in conductor().prop_flat_map(cyclo_at)) {
        let n = a.conductor();
        let mut total = Cyclo::zero(n);
        for k in units(n) {
            let s = a.conjugate(k).unwrap();
            total = &total + &(&s * &s.conj());
        }
        let value: Rational = total.as_rational().unwrap();
        prop_assert!(value >= rat(0, 1));
        prop_assert_eq!(value == rat(0, 1), a.is_zero());
    }

    #[test]
    fn inverse_is_two_sided(a in conductor().prop_flat_map(cyclo_at)) {
        match a.inverse() {
            None => prop_assert!(a.is_zero()),
            Some(inv) => {
                prop_assert!((&a * &inv).is_one());
                prop_assert_eq!(inv.inverse().unwrap(), a.clone());
            }
        }
    }

    #[test]
    fn cyclo_serde_round_trip(a in conductor().prop_flat_map(cyclo_at)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Cyclo = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn quiver_json_round_trip(
        n in 1usize..8,
        arrows in prop::collection::vec((0usize..8, 0usize..8, 1u64..4), 0..16),
    ) {
        let mut q = Quiver::new((0..n).map(|i| format!("v{i}")).collect()).unwrap();
        for (a, b, m) in arrows {
            q.add_arrows(a % n, b % n, m);
        }
        let text = q.to_json();
        let back = Quiver::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.arrow_count(), q.arrow_count());
    }
}
