//! Real root isolation of integer univariate polynomials by Descartes bisection.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::numeric::{int, pow2, IntervalQ, Rational};
use crate::poly::bounds::root_bound_pow2;
use crate::poly::{squarefree_decompose, squarefree_part, UniPoly};

/// Isolated real root: the interval holds exactly one root of the squarefree
/// `defining_factor`, whose multiplicity in the input is `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniRoot {
    pub interval: IntervalQ,
    pub multiplicity: u32,
    pub defining_factor: UniPoly,
}

pub fn default_max_width() -> Rational {
    pow2(-10)
}

pub fn sign_at(f: &UniPoly, q: &Rational) -> i8 {
    f.sign_at(q)
}

/// Sign of `p` just to the right of `x`, for squarefree `p`.
fn sign_right_of(p: &UniPoly, x: &Rational) -> i8 {
    let s = p.sign_at(x);
    if s != 0 {
        s
    } else {
        p.derivative().sign_at(x)
    }
}

/// Roots of squarefree `p` in the open interval (lo, hi): open isolating intervals
/// given by their closures, and exact roots hit at bisection points.
pub fn isolate_open(p: &UniPoly, lo: &Rational, hi: &Rational) -> Vec<IntervalQ> {
    let mut out = Vec::new();
    if p.degree() < 1 || lo >= hi {
        return out;
    }
    let q = p.compose_affine(lo, &(hi - lo));
    descartes(&q, lo.clone(), hi.clone(), &mut out);
    out
}

fn descartes(q: &UniPoly, lo: Rational, hi: Rational, out: &mut Vec<IntervalQ>) {
    // q(x) is proportional to p(lo + (hi - lo) x) on (0, 1)
    let v = q.reverse().taylor_shift(&BigInt::one()).sign_variations();
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(IntervalQ { lo, hi });
        return;
    }
    let d = q.degree() as usize;
    let half: Vec<BigInt> = q.coeffs().iter().enumerate().map(|(i, c)| c << (d - i)).collect();
    let left = UniPoly::new(half);
    let mid = (&lo + &hi) / int(2);
    let right = left.taylor_shift(&BigInt::one());
    descartes(&left, lo, mid.clone(), out);
    if right.coeffs().first().is_some_and(|c| c.is_zero()) {
        out.push(IntervalQ::point(mid.clone()));
        // drop the root at the left end of the right half
        let r = UniPoly::new(right.coeffs()[1..].to_vec());
        descartes(&r, mid, hi, out);
    } else {
        descartes(&right, mid, hi, out);
    }
}

/// All real roots of squarefree `p` on the aligned dyadic grid starting from [-2^k, 2^k].
pub fn isolate_squarefree(p: &UniPoly) -> Vec<IntervalQ> {
    if p.degree() < 1 {
        return Vec::new();
    }
    let k = root_bound_pow2(p).unwrap();
    isolate_open(p, &-pow2(k), &pow2(k))
}

/// Roots of squarefree `p` in [0, inf) on the aligned grid [0, 2^k].
pub fn isolate_nonnegative(p: &UniPoly) -> Vec<IntervalQ> {
    if p.degree() < 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if p.coeff(0).is_zero() {
        out.push(IntervalQ::point(Rational::zero()));
    }
    let k = root_bound_pow2(p).unwrap();
    out.extend(isolate_open(p, &Rational::zero(), &pow2(k)));
    out
}

/// Bisect an isolating interval of squarefree `p` until `done` holds and neither
/// endpoint is a root. Point intervals are returned unchanged.
pub fn refine_until(p: &UniPoly, iv: &IntervalQ, mut done: impl FnMut(&IntervalQ) -> bool) -> IntervalQ {
    if iv.is_point() {
        return iv.clone();
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let mut s_lo = sign_right_of(p, &lo);
    loop {
        let cur = IntervalQ { lo: lo.clone(), hi: hi.clone() };
        if done(&cur) && p.sign_at(&lo) != 0 && p.sign_at(&hi) != 0 {
            return cur;
        }
        let mid = (&lo + &hi) / int(2);
        let sm = p.sign_at(&mid);
        if sm == 0 {
            return IntervalQ::point(mid);
        }
        if sm != s_lo {
            hi = mid;
        } else {
            lo = mid;
            s_lo = sm;
        }
    }
}

pub fn refine_interval(p: &UniPoly, iv: &IntervalQ, target: &Rational) -> IntervalQ {
    refine_until(p, iv, |c| c.width() <= *target)
}

/// Simplest rational (smallest denominator) in a closed interval, via continued fractions.
pub fn simplest_rational(iv: &IntervalQ) -> Rational {
    fn go(lo: &Rational, hi: &Rational) -> Rational {
        let fl = lo.floor();
        if fl == *lo {
            return fl;
        }
        if &(fl.clone() + Rational::one()) <= hi {
            return fl + Rational::one();
        }
        // lo and hi share the integer part
        let r = go(&(Rational::one() / (hi - &fl)), &(Rational::one() / (lo - &fl)));
        fl + Rational::one() / r
    }
    if iv.contains_zero() {
        return Rational::zero();
    }
    if iv.lo.is_negative() {
        return -go(&-&iv.hi, &-&iv.lo);
    }
    go(&iv.lo, &iv.hi)
}

/// Collapse to a point when the root is rational and easy to see.
fn snap_rational(p: &UniPoly, iv: IntervalQ) -> IntervalQ {
    if iv.is_point() {
        return iv;
    }
    if p.degree() == 1 {
        let r = Rational::new(-p.coeff(0), p.coeff(1));
        return IntervalQ::point(r);
    }
    let c = simplest_rational(&iv);
    if p.sign_at(&c) == 0 {
        IntervalQ::point(c)
    } else {
        iv
    }
}

/// One root per distinct real root, sorted, with multiplicities. Non-point intervals
/// have width at most `max_width` (default 2^-10).
pub fn isolate(f: &UniPoly, max_width: Option<&Rational>) -> Result<Vec<UniRoot>, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let w = max_width.cloned().unwrap_or_else(default_max_width);
    let dec = squarefree_decompose(f)?;
    let p = dec.squarefree_part();
    let mut out = Vec::new();
    for iv in isolate_squarefree(&p) {
        let iv = snap_rational(&p, refine_interval(&p, &iv, &w));
        let (factor, mult) = owner(&dec.factors, &iv);
        out.push(UniRoot { interval: iv, multiplicity: mult, defining_factor: factor });
    }
    Ok(out)
}

/// Factor of a squarefree decomposition with a root in `iv`, where `iv` isolates a
/// root of the product of the factors and has non-root endpoints unless a point.
fn owner(factors: &[(UniPoly, u32)], iv: &IntervalQ) -> (UniPoly, u32) {
    for (fac, k) in factors {
        let hit = if iv.is_point() { fac.sign_at(&iv.lo) == 0 } else { fac.sign_at(&iv.lo) * fac.sign_at(&iv.hi) < 0 };
        if hit {
            return (fac.clone(), *k);
        }
    }
    unreachable!("isolating interval owned by no factor")
}

pub fn refine(root: &UniRoot, target_width: &Rational) -> UniRoot {
    if root.interval.width() <= *target_width {
        return root.clone();
    }
    UniRoot {
        interval: refine_interval(&root.defining_factor, &root.interval, target_width),
        multiplicity: root.multiplicity,
        defining_factor: root.defining_factor.clone(),
    }
}

/// Number of distinct real roots in the closed interval.
pub fn count_roots_in(f: &UniPoly, iv: &IntervalQ) -> Result<usize, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = squarefree_part(f)?;
    Ok(roots_in(&p, iv).len())
}

/// Isolating intervals of the roots of squarefree `p` inside the closed interval `iv`.
pub fn roots_in(p: &UniPoly, iv: &IntervalQ) -> Vec<IntervalQ> {
    if p.degree() < 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if p.sign_at(&iv.lo) == 0 {
        out.push(IntervalQ::point(iv.lo.clone()));
    }
    if iv.is_point() {
        return out;
    }
    out.extend(isolate_open(p, &iv.lo, &iv.hi));
    if p.sign_at(&iv.hi) == 0 {
        out.push(IntervalQ::point(iv.hi.clone()));
    }
    out
}

/// Sturm sequence root count in the half-open interval (a, b]; test oracle.
pub fn sturm_count(f: &UniPoly, a: &Rational, b: &Rational) -> usize {
    let p = squarefree_part(f).unwrap();
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() || seq[n - 1].degree() == 0 {
            break;
        }
        // rem with positive scaling keeps signs
        let r = seq[n - 2].prem(&seq[n - 1]);
        let lc = seq[n - 1].lc();
        let r = if lc.is_negative() && (seq[n - 2].degree() - seq[n - 1].degree() + 1) % 2 == 1 { r } else { r.neg() };
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    let var = |x: &Rational| {
        let mut last = 0i8;
        let mut v = 0usize;
        for s in &seq {
            let sg = s.sign_at(x);
            if sg != 0 {
                if last != 0 && sg != last {
                    v += 1;
                }
                last = sg;
            }
        }
        v
    };
    var(a) - var(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn golden_r1_intervals() {
        let r1 = p(&[-7, 4, 4]).pow(2).mul(&p(&[-2, 0, 1]).pow(2));
        let roots = isolate(&r1, Some(&pow2(-10))).unwrap();
        let want = [
            IntervalQ::new(rat(-1961, 1024), rat(-245, 128)),
            IntervalQ::new(rat(-1449, 1024), rat(-181, 128)),
            IntervalQ::new(rat(117, 128), rat(937, 1024)),
            IntervalQ::new(rat(181, 128), rat(1449, 1024)),
        ];
        assert_eq!(roots.iter().map(|r| r.interval.clone()).collect::<Vec<_>>(), want);
        assert!(roots.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn basic_examples() {
        let r = isolate(&p(&[-2, 0, 1]), None).unwrap();
        assert_eq!(r.len(), 2);
        for root in &r {
            assert!(root.defining_factor.sign_at(&root.interval.lo) * root.defining_factor.sign_at(&root.interval.hi) < 0);
        }
        assert!(isolate(&p(&[7]), None).unwrap().is_empty());
        assert!(isolate(&UniPoly::zero(), None).is_err());
        let r = isolate(&p(&[0, 1]), None).unwrap();
        assert_eq!(r[0].interval, IntervalQ::point(int(0)));
        assert!(isolate(&p(&[1, 0, 1]), None).unwrap().is_empty());
    }

    #[test]
    fn rational_roots_are_points() {
        let f = p(&[-1, 3]).mul(&p(&[5, 7])).mul(&p(&[-2, 0, 1]));
        let r = isolate(&f, None).unwrap();
        let pts: Vec<_> = r.iter().filter(|x| x.interval.is_point()).map(|x| x.interval.lo.clone()).collect();
        assert_eq!(pts, vec![rat(-5, 7), rat(1, 3)]);
    }

    #[test]
    fn refine_examples() {
        let f = p(&[-2, 0, 1]);
        let root = UniRoot { interval: IntervalQ::from_ints(1, 2), multiplicity: 1, defining_factor: f.clone() };
        let r = refine(&root, &rat(1, 16));
        assert!(r.interval.width() <= rat(1, 16));
        assert!(IntervalQ::from_ints(1, 2).contains_interval(&r.interval));
        assert!(f.sign_at(&r.interval.lo) < 0 && f.sign_at(&r.interval.hi) > 0);
        assert_eq!(refine(&root, &int(4)), root);
        let pt = UniRoot { interval: IntervalQ::point(int(0)), multiplicity: 1, defining_factor: p(&[0, 1]) };
        assert_eq!(refine(&pt, &rat(1, 1000)), pt);
    }

    #[test]
    fn sign_and_counts() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(sign_at(&f, &int(1)), -1);
        assert_eq!(sign_at(&f, &rat(3, 2)), 1);
        assert_eq!(count_roots_in(&f, &IntervalQ::from_ints(0, 2)).unwrap(), 1);
        assert_eq!(count_roots_in(&f, &IntervalQ::from_ints(-2, 2)).unwrap(), 2);
        assert_eq!(count_roots_in(&p(&[-1, 1]).pow(2), &IntervalQ::from_ints(0, 2)).unwrap(), 1);
        assert_eq!(count_roots_in(&p(&[-1, 1]), &IntervalQ::from_ints(1, 1)).unwrap(), 1);
    }

    #[test]
    fn simplest_rational_cases() {
        assert_eq!(simplest_rational(&IntervalQ::new(rat(3, 10), rat(4, 10))), rat(1, 3));
        assert_eq!(simplest_rational(&IntervalQ::new(rat(-7, 4), rat(-3, 2))), rat(-3, 2));
        assert_eq!(simplest_rational(&IntervalQ::new(rat(5, 2), rat(7, 2))), int(3));
    }

    #[test]
    fn sturm_oracle_agrees() {
        let f = p(&[-7, 4, 4]).mul(&p(&[-2, 0, 1])).mul(&p(&[1, 1]));
        assert_eq!(sturm_count(&f, &int(-10), &int(10)), 5);
        assert_eq!(isolate(&f, None).unwrap().len(), 5);
    }
}
