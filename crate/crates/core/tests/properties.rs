//! Algebraic invariants checked on random inputs, with the element-level
//! oracle in `brute` as the reference wherever a count is involved.

use proptest::prelude::*;

use moorediag::brute;
use moorediag::enumerate::Sampler;
use moorediag::ext::ext_group;
use moorediag::int::{divides, gcd, int, to_i64};
use moorediag::snf::snf;
use moorediag::{FgGroup, HomSpace, Int, Matrix};

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (0usize..=4, 0usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-10i64..=10, r * c).prop_map(move |e| Matrix::from_i64(r, c, &e))
    })
}

/// Cyclic orders whose product stays small enough to list every element.
fn orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=12, 0..=3)
        .prop_filter("at most 400 elements", |v| v.iter().product::<i64>() <= 400)
}

fn order(g: &FgGroup) -> i64 {
    to_i64(&g.order().expect("finite")).expect("small")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn snf_diagonalizes_with_unimodular_transforms(a in small_matrix()) {
        let s = snf(&a);
        let (l, r) = (s.left.as_ref().unwrap(), s.right.as_ref().unwrap());
        prop_assert_eq!(l.mul(&a).mul(r), s.diagonal_matrix());
        prop_assert_eq!(l.mul(s.left_inv.as_ref().unwrap()), Matrix::identity(a.rows()));
        for w in s.diag.windows(2) {
            prop_assert!(divides(&w[0], &w[1]));
        }
        prop_assert!(s.diag.iter().all(|d| *d > int(0)));
    }

    #[test]
    fn normal_form_keeps_the_isomorphism_type(raw in orders()) {
        let g = FgGroup::from_orders_i64(&raw);
        let canon = brute::factors(&g);
        prop_assert!(canon.iter().all(|&d| d > 1));
        prop_assert!(canon.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(brute::order_statistics(&raw), brute::order_statistics(&canon));
        let literal = g.to_string();
        prop_assert_eq!(literal.parse::<FgGroup>().unwrap(), g);
    }

    #[test]
    fn hom_group_order_matches_count(u in orders(), v in orders()) {
        let (gu, gv) = (FgGroup::from_orders_i64(&u), FgGroup::from_orders_i64(&v));
        let expected = u
            .iter()
            .flat_map(|&d| v.iter().map(move |&e| gcd(&int(d), &int(e))))
            .fold(int(1), |acc, g| acc * g);
        let hom = HomSpace::new(&gu, &gv);
        prop_assert_eq!(hom.group().order().unwrap(), expected.clone());
        prop_assert_eq!(Int::from(brute::hom_count(&brute::factors(&gu), &brute::factors(&gv))), expected);
    }

    #[test]
    fn kernel_and_image_sizes_match_element_count(u in orders(), v in orders(), seed in any::<u64>()) {
        let (gu, gv) = (FgGroup::from_orders_i64(&u), FgGroup::from_orders_i64(&v));
        let f = Sampler::new(seed).hom(&gu, &gv);
        let (ker, img) = brute::kernel_image_sizes(&brute::factors(&gu), &brute::factors(&gv), &brute::matrix(&f));
        prop_assert_eq!(order(&f.kernel().group) as usize, ker);
        prop_assert_eq!(order(&f.image().group) as usize, img);
        prop_assert_eq!(order(&f.cokernel().group) * img as i64, order(&gv));
    }

    #[test]
    fn ext_of_cyclic_groups_is_gcd(m in 1i64..=40, n in 1i64..=40) {
        let e = ext_group(&FgGroup::cyclic(m), &FgGroup::cyclic(n));
        prop_assert_eq!(e.order().unwrap(), gcd(&int(m), &int(n)));
    }
}
