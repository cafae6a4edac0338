use num_bigint::BigInt;
use proptest::prelude::*;

use rootbox::numeric::{int, rat, IntervalQ, Rational};
use rootbox::poly::{parse_system, squarefree_part, MultiPoly, UniPoly};
use rootbox::resultant::resultant;
use rootbox::univsolve::{isolate, sign_at, sturm_count};

fn uni(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isolation_matches_sturm(c in prop::collection::vec(-20i64..=20, 2..9)) {
        let f = uni(&c);
        prop_assume!(f.degree() >= 1);
        let roots = isolate(&f, None).unwrap();
        let b = int(1_000_000);
        prop_assert_eq!(roots.len(), sturm_count(&f, &-&b, &b));
        let p = squarefree_part(&f).unwrap();
        for (k, r) in roots.iter().enumerate() {
            let iv = &r.interval;
            if iv.is_point() {
                prop_assert_eq!(sign_at(&p, &iv.lo), 0);
            } else {
                prop_assert!(sign_at(&p, &iv.lo) * sign_at(&p, &iv.hi) < 0);
            }
            if let Some(next) = roots.get(k + 1) {
                prop_assert!(iv.hi < next.interval.lo);
            }
        }
    }

    #[test]
    fn interval_ops_enclose(a in -50i64..50, w1 in 0i64..20, b in -50i64..50, w2 in 0i64..20, t in 0i64..=8, u in 0i64..=8) {
        let x = IntervalQ::new(rat(a, 4), rat(a + w1, 4));
        let y = IntervalQ::new(rat(b, 3), rat(b + w2, 3));
        let px = &x.lo + x.width() * rat(t, 8);
        let py = &y.lo + y.width() * rat(u, 8);
        prop_assert!(x.add(&y).contains(&(&px + &py)));
        prop_assert!(x.sub(&y).contains(&(&px - &py)));
        prop_assert!(x.mul(&y).contains(&(&px * &py)));
        prop_assert!(x.scale(&rat(-7, 2)).contains(&(&px * rat(-7, 2))));
    }

    #[test]
    fn resultant_vanishes_at_common_roots(a in -5i64..=5, b in -5i64..=5, c1 in -3i64..=3, c2 in -3i64..=3) {
        // both curves pass through (a, b)
        let s = parse_system(
            &[&format!("(x-({a}))*(y+{c1})+(y-({b}))*x^2"), &format!("(y-({b}))*(x+{c2})+(x-({a}))*y^2")],
            Some(&["x", "y"]),
        )
        .unwrap();
        let r = resultant(&s.polys[0], &s.polys[1], 1).unwrap();
        let v = r.eval_interval(&[IntervalQ::point(int(a)), IntervalQ::point(int(0))]);
        prop_assert!(v.contains(&Rational::from_integer(BigInt::from(0))));
        prop_assert!(!r.uses_var(1));
    }
}

#[test]
fn interval_evaluation_is_exact_on_points() {
    let f: &MultiPoly = &parse_system(&["8*x^2+8*y^2+z^2-8"], None).unwrap().polys[0];
    let p = [IntervalQ::point(rat(1, 2)), IntervalQ::point(rat(-1, 3)), IntervalQ::point(int(2))];
    let v = f.eval_interval(&p);
    assert!(v.is_point());
    assert_eq!(v.lo, rat(8, 4) + rat(8, 9) + int(4) - int(8));
}
