//! Randomized property tests for the exact-arithmetic core.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qlam::angle::{chords_cross, kneading_sequence, Symbol};
use qlam::atlas::internal_address;
use qlam::solenoid::{rho, SolenoidPoint};
use qlam::Angle;

fn arb_angle() -> impl Strategy<Value = Angle> {
    (0u64..10_000, 1u64..10_000).prop_map(|(n, d)| Angle::new(n, d).unwrap())
}

/// Periodic angles have odd denominators; keep them small enough that the
/// exact period stays manageable.
fn arb_periodic_angle() -> impl Strategy<Value = Angle> {
    (0u64..10_000, 0u64..2_000).prop_map(|(n, d)| Angle::new(n, 2 * d + 1).unwrap())
}

fn arb_solenoid_point(depth: usize) -> impl Strategy<Value = SolenoidPoint> {
    (
        0u64..10_000,
        1u64..10_000,
        proptest::collection::vec(any::<bool>(), depth),
    )
        .prop_map(|(n, d, tail)| SolenoidPoint::new(Angle::new(n, d).unwrap(), tail))
}

proptest! {
    #[test]
    fn doubling_has_exactly_two_preimages(theta in arb_angle()) {
        let down = theta.halve(false);
        let up = theta.halve(true);
        prop_assert_eq!(down.double(), theta.clone());
        prop_assert_eq!(up.double(), theta.clone());
        prop_assert_ne!(down, up);
    }

    #[test]
    fn angle_string_round_trip(theta in arb_angle()) {
        let parsed: Angle = theta.to_string().parse().unwrap();
        prop_assert_eq!(parsed, theta);
    }

    #[test]
    fn chord_crossing_is_symmetric_and_rotation_invariant(
        a in arb_angle(), b in arb_angle(), c in arb_angle(), d in arb_angle(),
        offset in arb_angle(),
    ) {
        let distinct = [&a, &b, &c, &d];
        for i in 0..4 {
            for j in (i + 1)..4 {
                prop_assume!(distinct[i] != distinct[j]);
            }
        }
        let direct = chords_cross((&a, &b), (&c, &d)).unwrap();
        prop_assert_eq!(chords_cross((&c, &d), (&a, &b)).unwrap(), direct);
        prop_assert_eq!(chords_cross((&b, &a), (&c, &d)).unwrap(), direct);
        let (ar, br, cr, dr) = (
            a.add(&offset), b.add(&offset), c.add(&offset), d.add(&offset),
        );
        prop_assert_eq!(chords_cross((&ar, &br), (&cr, &dr)).unwrap(), direct);
    }

    #[test]
    fn kneading_star_exactly_at_period_multiples(theta in arb_periodic_angle()) {
        prop_assume!(!theta.is_zero());
        let period = theta.exact_period().unwrap() as usize;
        let nu = kneading_sequence(&theta).unwrap();
        for k in 1..=3 * period {
            prop_assert_eq!(nu.symbol(k) == Symbol::Star, k % period == 0);
        }
    }

    #[test]
    fn internal_address_is_increasing_and_ends_at_period(theta in arb_periodic_angle()) {
        prop_assume!(!theta.is_zero());
        let address = internal_address(&theta).unwrap();
        prop_assert_eq!(address[0], 1);
        prop_assert!(address.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(*address.last().unwrap(), theta.exact_period().unwrap());
    }

    #[test]
    fn solenoid_group_axioms(
        x in arb_solenoid_point(12),
        y in arb_solenoid_point(12),
        z in arb_solenoid_point(12),
    ) {
        let unit = SolenoidPoint::unit(12);
        prop_assert_eq!(x.group_mul(&unit).unwrap(), x.clone());
        prop_assert_eq!(x.group_mul(&x.inverse()).unwrap(), unit);
        prop_assert_eq!(x.group_mul(&y).unwrap(), y.group_mul(&x).unwrap());
        prop_assert_eq!(
            x.group_mul(&y).unwrap().group_mul(&z).unwrap(),
            x.group_mul(&y.group_mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn shift_is_an_automorphism(
        x in arb_solenoid_point(12),
        y in arb_solenoid_point(12),
    ) {
        prop_assert_eq!(
            x.group_mul(&y).unwrap().shift(),
            x.shift().group_mul(&y.shift()).unwrap()
        );
        prop_assert_eq!(x.shift().unshift().unwrap(), x.truncate(11));
        prop_assert_eq!(x.unshift().unwrap().shift(), x.truncate(11));
    }

    #[test]
    fn rho_is_a_homomorphism(
        sn in -5000i64..5000, sd in 1i64..100,
        tn in -5000i64..5000, td in 1i64..100,
    ) {
        let s = BigRational::new(BigInt::from(sn), BigInt::from(sd));
        let t = BigRational::new(BigInt::from(tn), BigInt::from(td));
        prop_assert_eq!(
            rho(&(&s + &t), 10),
            rho(&s, 10).group_mul(&rho(&t, 10)).unwrap()
        );
    }

    #[test]
    fn adding_machine_is_translation_by_rho_of_the_count(
        x in arb_solenoid_point(10),
        k in 1u32..40,
    ) {
        let mut stepped = x.clone();
        for _ in 0..k {
            stepped = stepped.adding_machine();
        }
        let translated = x
            .group_mul(&rho(&BigRational::from_integer(BigInt::from(k)), 10))
            .unwrap();
        prop_assert_eq!(stepped, translated);
    }
}
