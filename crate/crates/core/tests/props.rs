//! Property-based invariants for the exact arithmetic and parameter
//! machinery.

use ahg_core::exact_math::{
    extend_to_basis, floor_eval, gcd_slice, parse_rational, primitive_part, rat,
};
use ahg_core::hypergeo::{conjugacy_class, ParamVector};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

proptest! {
    #[test]
    fn rational_print_parse_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = rat(n, d);
        let s = q.to_string();
        prop_assert_eq!(parse_rational(&s).unwrap(), q);
    }

    #[test]
    fn floor_eval_shift(
        m in prop::collection::vec(-9i64..9, 3),
        num in prop::collection::vec(-30i64..30, 3),
        den in 1i64..40,
        z in prop::collection::vec(-5i64..5, 3),
    ) {
        let beta: Vec<_> = num.iter().map(|&n| rat(n, den)).collect();
        let shifted: Vec<_> = beta
            .iter()
            .zip(&z)
            .map(|(b, &zi)| b + rat(zi, 1))
            .collect();
        let mz: i64 = m.iter().zip(&z).map(|(a, b)| a * b).sum();
        prop_assert_eq!(
            floor_eval(&m, &shifted).unwrap(),
            floor_eval(&m, &beta).unwrap() + mz
        );
    }

    #[test]
    fn primitive_part_is_primitive_and_scale_invariant(
        v in prop::collection::vec(-50i64..50, 2..4),
        scale in 1i64..6,
    ) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = primitive_part(&v, None).unwrap();
        prop_assert_eq!(gcd_slice(&p), 1);
        let scaled: Vec<i64> = v.iter().map(|x| x * scale).collect();
        prop_assert_eq!(primitive_part(&scaled, None).unwrap(), p);
    }

    #[test]
    fn basis_completion_properties(v in prop::collection::vec(-40i64..40, 2..4)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = primitive_part(&v, None).unwrap();
        let m = extend_to_basis(&p).unwrap();
        prop_assert_eq!(m.det().abs(), BigInt::one());
        let last = m.row(p.len() - 1);
        for (a, b) in last.iter().zip(&p) {
            prop_assert_eq!(a, &BigInt::from(*b));
        }
    }

    #[test]
    fn conjugacy_class_closed_and_minimal(
        num in prop::collection::vec(0i64..24, 2..4),
        den in 2i64..24,
    ) {
        let beta = ParamVector::from_scaled(&num, den);
        let class = conjugacy_class(&beta);
        let rep = beta.class_representative();
        prop_assert!(class.contains(&beta));
        prop_assert!(class.contains(&rep));
        prop_assert_eq!(class.iter().min().unwrap(), &rep);
        // conjugating any member by any coprime k stays in the class
        for member in &class {
            for k in member.coprime_residues() {
                prop_assert!(class.contains(&member.conjugate(k)));
            }
        }
    }
}
