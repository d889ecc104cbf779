//! Randomized lattice identities, driven by proptest shrinking.

use agbounds::curve::{DivClass, Point, TwoPointCurve};
use agbounds::delta;
use proptest::prelude::*;

fn curves() -> Vec<TwoPointCurve> {
    vec![
        TwoPointCurve::hermitian(3).unwrap(),
        TwoPointCurve::suzuki(2).unwrap(),
    ]
}

fn any_class(c: &TwoPointCurve, deg: i64, res: i64) -> DivClass {
    c.class(deg, res)
}

proptest! {
    #[test]
    fn riemann_roch_duality(ci in 0usize..2, deg in -80i64..80, res in 0i64..13) {
        let c = &curves()[ci];
        let a = any_class(c, deg, res);
        let k = c.canonical_class();
        prop_assert_eq!(
            c.dim_l(a) - c.dim_l(c.class_sub(k, a)),
            a.deg + 1 - c.genus()
        );
    }

    #[test]
    fn staircase_walks_invert(ci in 0usize..2, k in -200i64..200, beta in 0i64..13) {
        let c = &curves()[ci];
        prop_assert_eq!(c.tau(c.sigma(k)), k);
        prop_assert_eq!(c.sigma(c.tau(k)), k);
        let beta = beta % c.period();
        prop_assert_eq!(c.tau_from(beta, c.sigma_from(beta, k)), k);
    }

    #[test]
    fn line_counts_differ_by_the_degree(
        ci in 0usize..2,
        bdeg in -40i64..40, bres in 0i64..13,
        cdeg in -40i64..40, cres in 0i64..13,
    ) {
        let c = &curves()[ci];
        let base = any_class(c, bdeg, bres);
        let thr = any_class(c, cdeg, cres);
        let members = delta::line_count(c, Point::P, thr, base);
        let star = delta::line_indices_star(c, Point::P, thr, base).len() as i64;
        prop_assert_eq!(members - star, thr.deg);
        if thr.deg >= 2 * c.genus() {
            prop_assert_eq!(members, thr.deg);
        }
        if thr.deg <= -2 * c.genus() {
            prop_assert_eq!(members, 0);
        }
    }

    #[test]
    fn membership_is_symmetric_about_the_canonical_class(
        ci in 0usize..2,
        adeg in -40i64..40, ares in 0i64..13,
        cdeg in -30i64..30, cres in 0i64..13,
    ) {
        let c = &curves()[ci];
        let a = any_class(c, adeg, ares);
        let thr = any_class(c, cdeg, cres);
        let mirror = c.class_sub(
            c.class_shift(c.class_add(c.canonical_class(), thr), Point::P, 1),
            a,
        );
        prop_assert_eq!(
            delta::in_delta(c, Point::P, thr, a),
            delta::in_delta(c, Point::P, thr, mirror)
        );
    }
}
