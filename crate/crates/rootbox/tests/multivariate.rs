use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootbox::multisolve::{solve, MultiOptions, SolveResultN};
use rootbox::numeric::{int, pow2, BoxQ, Rational};
use rootbox::poly::{parse_system, MultiPoly};
use rootbox::random::dense;
use rootbox::Error;

fn sys(v: &[&str]) -> Vec<MultiPoly> {
    parse_system(v, Some(&["x", "y", "z"])).unwrap().polys
}

/// Substitute x -> x + a y + b z and y -> y + c z.
fn unimodular(p: &MultiPoly, a: i64, b: i64, c: i64) -> MultiPoly {
    let (y, z) = (MultiPoly::var(3, 1), MultiPoly::var(3, 2));
    let k = |v: i64| MultiPoly::constant(3, BigInt::from(v));
    let nx = MultiPoly::var(3, 0).add(&y.mul(&k(a))).add(&z.mul(&k(b)));
    let ny = y.add(&z.mul(&k(c)));
    // y first, so the x replacement keeps the original y
    p.substitute(1, &ny).substitute(0, &nx)
}

fn contained(res: &SolveResultN, pts: &[Vec<Rational>]) {
    assert_eq!(res.roots.len(), pts.len(), "root count");
    for p in pts {
        let hits = res.roots.iter().filter(|r| r.boxq.contains_point(p)).count();
        assert_eq!(hits, 1, "{p:?}");
    }
    for (i, a) in res.roots.iter().enumerate() {
        for b in &res.roots[i + 1..] {
            assert!(!a.boxq.intersects(&b.boxq));
        }
    }
}

#[test]
fn sheared_triangular_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..6 {
        let k = rng.gen_range(1..=3);
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < k {
            let v = rng.gen_range(-4..=4);
            if !xs.contains(&v) {
                xs.push(v);
            }
        }
        let (l0, l1, m0, m1) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let p1 = xs.iter().map(|a| format!("(x-({a}))")).collect::<Vec<_>>().join("*");
        let tri = sys(&[&p1, &format!("y-({l1})*x-({l0})"), &format!("z-({m1})*x-({m0})")]);
        let (a, b, c) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let polys: Vec<MultiPoly> = tri.iter().map(|p| unimodular(p, a, b, c)).collect();
        let pts: Vec<Vec<Rational>> = xs
            .iter()
            .map(|&x0| {
                let (y0, z0) = (l1 * x0 + l0, m1 * x0 + m0);
                let z = z0;
                let y = y0 - c * z;
                let x = x0 - a * y - b * z;
                vec![int(x), int(y), int(z)]
            })
            .collect();
        let res = solve(&polys, &MultiOptions::default()).unwrap_or_else(|e| panic!("case {case}: {e}"));
        contained(&res, &pts);
    }
}

#[test]
fn sphere_plane_curve() {
    // x^2+y^2+z^2 = 3, x = y, z = 1: roots (1, 1, 1) and (-1, -1, 1)
    let res = solve(&sys(&["x^2+y^2+z^2-3", "x-y", "z-1"]), &MultiOptions::default()).unwrap();
    contained(&res, &[vec![int(-1), int(-1), int(1)], vec![int(1), int(1), int(1)]]);
    assert!(!res.certified);
    assert!(res.roots.iter().all(|r| r.multiplicity.is_none()));
}

#[test]
fn overdetermined_trivariate() {
    let polys = sys(&["x-1", "y-2", "z-x-y", "x*y*z-6"]);
    let res = solve(&polys, &MultiOptions::default()).unwrap();
    contained(&res, &[vec![int(1), int(2), int(3)]]);
}

#[test]
fn seeded_determinism() {
    let polys = sys(&["x^2+y^2+z^2-3", "x-y", "z-1", "x*z-y"]);
    let a = solve(&polys, &MultiOptions { seed: 9, ..Default::default() }).unwrap();
    let b = solve(&polys, &MultiOptions { seed: 9, ..Default::default() }).unwrap();
    let boxes = |r: &SolveResultN| r.roots.iter().map(|x| x.boxq.clone()).collect::<Vec<BoxQ>>();
    assert_eq!(boxes(&a), boxes(&b));
    assert_eq!(a.cascade.combinations, b.cascade.combinations);
    assert_eq!(a.cascade.shears, b.cascade.shears);
    rootbox::exec::set_sequential(true);
    let c = solve(&polys, &MultiOptions { seed: 9, ..Default::default() }).unwrap();
    rootbox::exec::set_sequential(false);
    assert_eq!(boxes(&a), boxes(&c));
}

#[test]
fn positive_dimensional_is_reported() {
    let polys = sys(&["x-y", "y-z", "x-z"]);
    assert!(matches!(solve(&polys, &MultiOptions::default()), Err(Error::NotZeroDimensional | Error::NotZeroDimensionalOrUnlucky)));
}

#[test]
fn random_quadrics_agree_under_reordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for case in 0..3 {
        let polys: Vec<MultiPoly> = (0..3).map(|_| dense(&mut rng, 3, 2, &BigInt::from(10))).collect();
        let a = solve(&polys, &MultiOptions::default()).unwrap_or_else(|e| panic!("case {case}: {e}"));
        let perm = vec![polys[2].clone(), polys[0].clone(), polys[1].clone()];
        let b = solve(&perm, &MultiOptions::default()).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_eq!(a.roots.len(), b.roots.len(), "case {case}");
        for r in &a.roots {
            let fine = r.refine(&pow2(-30));
            assert!(polys.iter().all(|p| p.eval_interval(&fine.boxq.dims).contains_zero()), "case {case}");
            assert_eq!(b.roots.iter().filter(|s| s.boxq.intersects(&r.boxq)).count(), 1, "case {case}");
        }
    }
}
