//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootbox::bisolve::{refine_root_full, solve_bivariate, BiOptions, Mode};
use rootbox::genpos::{certify_with, nongeneric_pair, parametric_resultant};
use rootbox::intervalpoly::{build, effective_real_roots, Precision};
use rootbox::multisolve::{project_system, solve, CombinationMatrix, MultiOptions};
use rootbox::numeric::{int, pow2, rat, BoxQ, ExtInterval, IntervalQ, IntervalSet, Rational};
use rootbox::poly::{is_squarefree, parse_system, MultiPoly, UniPoly};
use rootbox::random::{dense, dense_pair, dense_pair_bits};
use rootbox::univsolve::{count_roots_in, isolate, refine};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn polys(v: &[&str], vars: &[&str]) -> Vec<MultiPoly> {
    parse_system(v, Some(vars)).unwrap().polys
}

fn uni(s: &str) -> UniPoly {
    polys(&[s], &["x"])[0].to_uni(0).unwrap()
}

fn iv(lo: Rational, hi: Rational) -> IntervalQ {
    IntervalQ::new(lo, hi)
}

fn bx2(a: IntervalQ, b: IntervalQ) -> BoxQ {
    BoxQ::new(vec![a, b])
}

/// f(alpha, y) as an integer polynomial in y.
fn fiber(f: &MultiPoly, alpha: &Rational) -> UniPoly {
    let mut c = vec![Rational::zero(); f.degree_in(1).max(0) as usize + 1];
    for (e, v) in f.terms() {
        let mut t = Rational::from_integer(v.clone());
        for _ in 0..e[0] {
            t *= alpha;
        }
        c[e[1] as usize] += t;
    }
    UniPoly::from_rationals(&c)
}

fn disjoint(boxes: &[BoxQ]) -> bool {
    (0..boxes.len()).all(|i| (i + 1..boxes.len()).all(|j| !boxes[i].intersects(&boxes[j])))
}

fn golden_bivariate() -> Check {
    let s = polys(&["x^2+y^2-2", "(x-2*y^2)^2-2"], &["x", "y"]);
    let res = solve_bivariate(&s[0], &s[1], &BiOptions { precision: 10, ..Default::default() }).map_err(|e| e.to_string())?;
    let r1 = uni("(4*x^2+4*x-7)^2*(x^2-2)^2");
    ensure!(res.r1.primitive_part() == r1 && res.r1.lc().is_positive(), "R1 = {:?}", res.r1);
    let cands = vec![
        bx2(iv(rat(-1449, 1024), rat(-181, 128)), iv(rat(-72905, 8388608), rat(72905, 8388608))),
        bx2(iv(rat(117, 128), rat(937, 1024)), iv(rat(-70721, 65536), rat(-141401, 131072))),
        bx2(iv(rat(117, 128), rat(937, 1024)), iv(rat(141401, 131072), rat(70721, 65536))),
        bx2(iv(rat(181, 128), rat(1449, 1024)), iv(rat(-42621, 2097152), rat(42621, 2097152))),
    ];
    ensure!(res.candidates == cands, "candidates {:?}", res.candidates);
    let ch = res.shear.as_ref().ok_or("no shear")?;
    ensure!(ch.s == BigInt::one(), "s = {}", ch.s);
    let lur = res.lur.as_ref().ok_or("no LUR")?;
    ensure!(lur.r2 == uni("4*(4*x^4+8*x^3-8*x^2-44*x-7)*(x^2-2)^2"), "R2 = {:?}", lur.r2);
    let want = [
        (iv(rat(-1449, 1024), rat(-181, 128)), iv(int(0), int(0)), 2),
        (iv(rat(117, 128), rat(937, 1024)), iv(rat(-70721, 65536), rat(-141401, 131072)), 1),
        (iv(rat(117, 128), rat(937, 1024)), iv(rat(141401, 131072), rat(70721, 65536)), 1),
        (iv(rat(181, 128), rat(1449, 1024)), iv(int(0), int(0)), 2),
    ];
    ensure!(res.roots.len() == 4, "{} roots", res.roots.len());
    for (r, (a, b, m)) in res.roots.iter().zip(want) {
        ensure!(r.boxq.dims[0] == a && r.boxq.dims[1] == b && r.multiplicity == m, "root {:?} m={}", r.boxq, r.multiplicity);
    }
    ensure!(disjoint(&res.roots.iter().map(|r| r.boxq.clone()).collect::<Vec<_>>()), "overlapping boxes");
    let pr = parametric_resultant(&s[0], &s[1]).map_err(|e| e.to_string())?;
    let (ok, _) = certify_with(&pr, &BigInt::one());
    let rt = UniPoly::new(pr.sqfree.iter().map(|c| c.eval_int(&BigInt::one())).collect());
    let want_rt = uni("(x^2-2)*(-4*x^4-8*x^3+8*x^2+44*x+7)");
    ensure!(ok && res.certified, "certification failed");
    ensure!(rt.primitive_part().sign_normalized() == want_rt.sign_normalized(), "R~1 = {:?}", rt);
    ensure!(is_squarefree(&want_rt), "R~1 not squarefree");
    Ok(())
}

fn golden_trivariate() -> Check {
    let v = ["x", "y", "z"];
    let s = polys(&["3*x-y-5*z-4", "8*x^2+8*y^2+z^2-8", "x^2+2*y^2+4*z^2-4"], &v);
    let pq = project_system(&s, &CombinationMatrix::identity(3, 3), 2).map_err(|e| e.to_string())?;
    let want = polys(&["209*x^2+201*y^2-184-6*x*y-24*x+8*y", "61*x^2+54*y^2-36-24*x*y-96*x+32*y"], &["x", "y"]);
    ensure!(pq == want, "projection {:?}", pq);
    let res = solve(&s, &MultiOptions::default()).map_err(|e| e.to_string())?;
    let lur = res.lur.as_ref().ok_or("no LUR")?;
    ensure!(lur.shears == vec![BigInt::one(), BigInt::one()], "shears {:?}", lur.shears);
    let t = [
        [(rat(-433, 2048), rat(-865, 4096)), (rat(-15433, 16384), rat(-123453, 131072)), (rat(-96789, 131072), rat(-96779, 131072))],
        [(rat(95, 256), rat(761, 2048)), (rat(116549, 131072), rat(58287, 65536)), (rat(-49489, 65536), rat(-98955, 131072))],
    ];
    let tb: Vec<BoxQ> = t.iter().map(|b| BoxQ::new(b.iter().map(|(lo, hi)| iv(lo.clone(), hi.clone())).collect())).collect();
    ensure!(res.roots.len() == 2, "{} roots", res.roots.len());
    for (r, b) in res.roots.iter().zip(&tb) {
        let fine = r.refine(&pow2(-40));
        ensure!(b.dims.iter().zip(&fine.boxq.dims).all(|(o, i)| o.contains_interval(i)), "box {:?} vs {:?}", fine.boxq, b);
    }
    // K'[2]: second root of the sheared projection
    let kp2 = iv(rat(53871, 32768), rat(215573, 131072));
    let diff = tb[1].dims[1].sub(&tb[1].dims[2]);
    ensure!(diff.intersects(&kp2), "verification intersection empty");
    let ours = res.roots[1].refine(&pow2(-20));
    ensure!(ours.boxq.dims[1].sub(&ours.boxq.dims[2]).intersects(&kp2), "our verification interval misses K'[2]");
    Ok(())
}

fn example_nongeneric() -> Check {
    let ibx = |a, b, c, d| bx2(IntervalQ::from_ints(a, b), IntervalQ::from_ints(c, d));
    let got = nongeneric_pair(&ibx(1, 2, 3, 4), &ibx(5, 6, 10, 11));
    let want = IntervalSet::from_intervals(vec![ExtInterval::closed(rat(-5, 6), rat(-3, 8))]);
    ensure!(got == want, "got {got}");
    Ok(())
}

fn random_rat<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

fn interval_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut containment_checked = 0;
    for case in 0..50 {
        let d = rng.gen_range(2..=5);
        let f = dense(&mut rng, 2, d, &BigInt::from(100));
        let a = random_rat(&mut rng, -3, 3, 8);
        let w = pow2(-rng.gen_range(1..=8));
        let xi = iv(a.clone(), &a + &w);
        let b = bx2(xi.clone(), IntervalQ::from_ints(0, 0));
        let ip = build(&f, &b, 1).map_err(|e| e.to_string())?;
        let lc_free = !ip.coeffs.last().unwrap().contains_zero();
        let eff = if lc_free { effective_real_roots(&ip, &Precision::for_box(&b, 10)) } else { Vec::new() };
        for k in 0..10 {
            let alpha = if k == 0 {
                xi.lo.clone()
            } else if k == 1 {
                xi.hi.clone()
            } else {
                &xi.lo + &w * rat(rng.gen_range(1..64), 64)
            };
            let p = fiber(&f, &alpha);
            for (j, cj) in ip.coeffs.iter().enumerate() {
                let exact: Rational = f
                    .terms()
                    .filter(|(e, _)| e[1] as usize == j)
                    .map(|(e, v)| Rational::from_integer(v.clone()) * pow(&alpha, e[0]))
                    .fold(Rational::zero(), |s, t| s + t);
                ensure!(cj.contains(&exact), "case {case}: coefficient {j} at {alpha} outside {cj}");
            }
            for yk in 0..4 {
                let y = rat(yk * 3, 4);
                let val = eval2(&f, &alpha, &y);
                ensure!(ip.lower_at(&y) <= val && val <= ip.upper_at(&y), "case {case}: bounding polynomials at y={y}");
            }
            if lc_free && !p.is_zero() {
                for r in isolate(&p, None).map_err(|e| e.to_string())? {
                    let mut r = r;
                    let mut placed = false;
                    for step in 0..40 {
                        if eff.iter().any(|e| e.interval.contains_interval(&r.interval)) {
                            placed = true;
                            break;
                        }
                        if eff.iter().all(|e| !e.interval.intersects(&r.interval)) {
                            break;
                        }
                        r = refine(&r, &pow2(-(10 + 8 * step)));
                    }
                    ensure!(placed, "case {case}: root {} of f({alpha}, y) outside the effective roots", r.interval);
                }
                containment_checked += 1;
            }
        }
    }
    ensure!(containment_checked >= 250, "only {containment_checked} fibers had a zero-free leading coefficient");
    Ok(())
}

fn pow(a: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

fn eval2(f: &MultiPoly, x: &Rational, y: &Rational) -> Rational {
    f.terms().map(|(e, v)| Rational::from_integer(v.clone()) * pow(x, e[0]) * pow(y, e[1])).fold(Rational::zero(), |s, t| s + t)
}

fn solver_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fine = pow2(-60);
    let slack = pow2(-30);
    for case in 0..50 {
        let d = rng.gen_range(2..=6);
        let (f, g) = dense_pair(&mut rng, d);
        let opts = BiOptions::default();
        let res = solve_bivariate(&f, &g, &opts).map_err(|e| format!("case {case}: {e}"))?;
        let p1 = solve_bivariate(&f, &g, &BiOptions { mode: Mode::Probability1, ..Default::default() })
            .map_err(|e| format!("case {case} prob1: {e}"))?;
        ensure!(p1.roots.len() == res.roots.len(), "case {case}: {} vs {} roots across modes", res.roots.len(), p1.roots.len());
        let boxes: Vec<BoxQ> = res.roots.iter().map(|r| r.boxq.clone()).collect();
        ensure!(disjoint(&boxes), "case {case}: overlapping boxes");
        let s = res.shear.as_ref().map(|c| c.s.clone());
        for r in &res.roots {
            ensure!(
                f.eval_interval(&r.boxq.dims).contains_zero() && g.eval_interval(&r.boxq.dims).contains_zero(),
                "case {case}: box {:?} excludes zero",
                r.boxq
            );
            let t = refine_root_full(&f, &g, r, s.as_ref(), &fine, &opts);
            ensure!(t.boxq.dims[0].width() <= fine, "case {case}: x not refined");
            let alpha = t.boxq.dims[0].mid();
            let y = &t.boxq.dims[1];
            let window = iv(&y.lo - &slack, &y.hi + &slack);
            for (name, p) in [("f", &f), ("g", &g)] {
                let u = fiber(p, &alpha);
                let n = if u.is_zero() { 1 } else { count_roots_in(&u, &window).map_err(|e| e.to_string())? };
                ensure!(n >= 1, "case {case}: {name}(alpha, y) has no root near {:?}", t.boxq);
            }
        }
    }
    Ok(())
}

/// Fraction-free determinant over Z[x].
fn det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut neg = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return UniPoly::zero() };
            m.swap(k, i);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg {
        d.neg()
    } else {
        d
    }
}

fn y_coeffs(f: &MultiPoly) -> Vec<UniPoly> {
    f.coeffs_in(1).iter().map(|c| c.to_uni(0).unwrap()).collect()
}

/// Coefficients (in y, low to high) of the k-th subresultant of f and g.
fn subresultant(f: &[UniPoly], g: &[UniPoly], k: usize) -> Vec<UniPoly> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let cols = m + n - k;
    let mut rows: Vec<Vec<UniPoly>> = Vec::new();
    for (p, shifts) in [(f, n - k), (g, m - k)] {
        for t in (0..shifts).rev() {
            let mut row = vec![UniPoly::zero(); cols];
            for (i, c) in p.iter().enumerate() {
                // power i + t sits in column cols - 1 - (i + t)
                row[cols - 1 - (i + t)] = c.clone();
            }
            rows.push(row);
        }
    }
    let r = rows.len();
    (0..=k)
        .map(|j| {
            let col = cols - 1 - j;
            det(rows.iter().map(|row| row[..r - 1].iter().cloned().chain(std::iter::once(row[col].clone())).collect()).collect())
        })
        .collect()
}

fn vanishes_at(p: &UniPoly, root: &rootbox::univsolve::UniRoot) -> bool {
    if p.is_zero() {
        return true;
    }
    let g = rootbox::poly::gcd_uni(p, &root.defining_factor);
    g.degree() >= 1 && count_roots_in(&g, &root.interval).unwrap() > 0
}

fn multiplicity_conservation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut checked, mut skipped) = (0, 0);
    for case in 0..20 {
        let d = rng.gen_range(3..=5);
        let f = dense(&mut rng, 2, d, &BigInt::from(100));
        let g = f.derivative(1);
        let res = solve_bivariate(&f, &g, &BiOptions::default()).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(res.roots.iter().all(|r| r.multiplicity >= 1), "case {case}: zero multiplicity");
        let (fc, gc) = (y_coeffs(&f), y_coeffs(&g));
        let res0 = subresultant(&fc, &gc, 0)[0].clone();
        for alpha in isolate(&res0, None).map_err(|e| e.to_string())? {
            let mut a = alpha.clone();
            let mut above: Option<Vec<u32>> = None;
            for step in 0..30 {
                let inside = res.roots.iter().filter(|r| r.boxq.dims[0].contains_interval(&a.interval)).count();
                let touching = res.roots.iter().filter(|r| r.boxq.dims[0].intersects(&a.interval)).count();
                if inside == touching {
                    above =
                        Some(res.roots.iter().filter(|r| r.boxq.dims[0].contains_interval(&a.interval)).map(|r| r.multiplicity).collect());
                    break;
                }
                a = refine(&a, &pow2(-(12 + 6 * step)));
            }
            let Some(above) = above else {
                println!("    case {case}: fiber {} not separated, skipped", alpha.interval);
                skipped += 1;
                continue;
            };
            // gcd degree of f(alpha, y) and g(alpha, y): first non-vanishing principal coefficient
            let dmax = gc.len() - 1;
            let Some(dg) = (1..=dmax).find(|&k| !vanishes_at(&subresultant(&fc, &gc, k)[k], &alpha)) else {
                println!("    case {case}: fiber {} degenerate, skipped", alpha.interval);
                skipped += 1;
                continue;
            };
            let approx = refine(&alpha, &pow2(-100)).interval.mid();
            let sk: Vec<Rational> = subresultant(&fc, &gc, dg).iter().map(|c| c.eval(&approx)).collect();
            let sk = UniPoly::from_rationals(&sk);
            let real = isolate(&sk, None).map_err(|e| e.to_string())?;
            let simple = is_squarefree(&sk);
            if !simple || real.len() < dg {
                println!("    case {case}: fiber {} has non-real or clustered common roots, skipped", alpha.interval);
                skipped += 1;
                continue;
            }
            let sum: u32 = above.iter().sum();
            ensure!(
                sum == alpha.multiplicity,
                "case {case}: fiber {} multiplicities {:?} vs {} in R1",
                alpha.interval,
                above,
                alpha.multiplicity
            );
            checked += 1;
        }
    }
    println!("    {checked} fibers checked, {skipped} skipped");
    ensure!(checked > 0, "no conclusive fiber");
    Ok(())
}

fn univariate_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let k = rng.gen_range(2..=5);
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        while roots.len() < k {
            let q = rat(rng.gen_range(-30..=30), rng.gen_range(1..=6));
            if roots.iter().all(|(r, _)| *r != q) {
                roots.push((q, rng.gen_range(1..=3)));
            }
        }
        let p = roots.iter().fold(UniPoly::one(), |acc, (r, m)| acc.mul(&UniPoly::linear_root(r).pow(*m)));
        let got = isolate(&p, None).map_err(|e| e.to_string())?;
        roots.sort();
        ensure!(got.len() == roots.len(), "case {case}: {} roots, expected {}", got.len(), roots.len());
        for (u, (r, m)) in got.iter().zip(&roots) {
            ensure!(u.interval.contains(r) && u.multiplicity == *m, "case {case}: {} m={} vs {r} m={m}", u.interval, u.multiplicity);
        }
    }
    Ok(())
}

fn degree15_smoke() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (f, g) = dense_pair_bits(&mut rng, 15, 128);
    let t0 = Instant::now();
    let res = solve_bivariate(&f, &g, &BiOptions::default()).map_err(|e| e.to_string())?;
    let el = t0.elapsed();
    println!("    degree 15, 128-bit: {} roots in {:.2?}, certified {}", res.roots.len(), el, res.certified);
    ensure!(res.certified, "not certified");
    ensure!(el < Duration::from_secs(600), "took {el:?}");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 golden bivariate", golden_bivariate),
        ("2 golden trivariate", golden_trivariate),
        ("3 non-generic set of two boxes", example_nongeneric),
        ("4 interval polynomial enclosure", interval_properties),
        ("5 solver soundness", solver_soundness),
        ("6 multiplicity conservation", multiplicity_conservation),
        ("7 univariate oracle", univariate_oracle),
        ("8 degree 15 smoke", degree15_smoke),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let t0 = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", t0.elapsed()),
            Err(e) => {
                println!("FAIL criterion {name}: {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
