//! Shear parameters: projected intervals, non-generic sets, selection and certification.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exec::par_map;
use crate::numeric::{BoxQ, Ext, ExtInterval, IntervalQ, IntervalSet, Rational};
use crate::poly::modular::gcd_parametric;
use crate::poly::{is_squarefree, MultiPoly, UniPoly};
use crate::resultant::{resultant, shear_symbolic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearChoice {
    pub s: BigInt,
    pub certified: bool,
    pub attempts: usize,
    pub nongeneric_set: IntervalSet,
}

/// First coordinate of the sheared box `(x + s y, y)`.
pub fn project_sheared(b: &BoxQ, s: &Rational) -> IntervalQ {
    let (j, k) = (&b.dims[0], &b.dims[1]);
    if s.is_negative() {
        IntervalQ::new(&j.lo + s * &k.hi, &j.hi + s * &k.lo)
    } else {
        IntervalQ::new(&j.lo + s * &k.lo, &j.hi + s * &k.hi)
    }
}

fn empty_ext() -> ExtInterval {
    ExtInterval::closed(Rational::one(), Rational::zero())
}

/// Solution set of `alpha * s <= beta`.
fn solve_le(alpha: &Rational, beta: &Rational) -> ExtInterval {
    if alpha.is_zero() {
        if beta.is_negative() {
            empty_ext()
        } else {
            ExtInterval::everything()
        }
    } else {
        let r = Ext::Finite(beta / alpha);
        if alpha.is_positive() {
            ExtInterval::new(Ext::NegInf, false, r, true)
        } else {
            ExtInterval::new(r, true, Ext::PosInf, false)
        }
    }
}

/// Values of s for which the projected intervals of two boxes overlap.
pub fn nongeneric_pair(l1: &BoxQ, l2: &BoxQ) -> IntervalSet {
    let (a1, b1, c1, d1) = (&l1.dims[0].lo, &l1.dims[0].hi, &l1.dims[1].lo, &l1.dims[1].hi);
    let (a2, b2, c2, d2) = (&l2.dims[0].lo, &l2.dims[0].hi, &l2.dims[1].lo, &l2.dims[1].hi);
    let zero = Ext::Finite(Rational::zero());
    // s >= 0: a1 + s c1 <= b2 + s d2 and a2 + s c2 <= b1 + s d1
    let pos = IntervalSet::from_intervals(vec![solve_le(&(c1 - d2), &(b2 - a1))])
        .intersect_interval(&solve_le(&(c2 - d1), &(b1 - a2)))
        .intersect_interval(&ExtInterval::new(zero.clone(), true, Ext::PosInf, false));
    // s < 0: a1 + s d1 <= b2 + s c2 and a2 + s d2 <= b1 + s c1
    let neg = IntervalSet::from_intervals(vec![solve_le(&(d1 - c2), &(b2 - a1))])
        .intersect_interval(&solve_le(&(d2 - c1), &(b1 - a2)))
        .intersect_interval(&ExtInterval::new(Ext::NegInf, false, zero, false));
    crate::numeric::intervalset_union(&pos, &neg)
}

/// Union of the pairwise non-generic sets of a group of boxes.
pub fn nongeneric_union(boxes: &[BoxQ]) -> IntervalSet {
    let pairs: Vec<(usize, usize)> = (0..boxes.len()).flat_map(|i| (i + 1..boxes.len()).map(move |j| (i, j))).collect();
    let sets = par_map(&pairs, |&(i, j)| nongeneric_pair(&boxes[i], &boxes[j]));
    let all: Vec<ExtInterval> = sets.into_iter().flat_map(|s| s.intervals).collect();
    IntervalSet::from_intervals(all)
}

/// Nonzero integers outside `set` in the order 1, -1, 2, -2, ...
pub fn integer_shears(set: &IntervalSet) -> impl Iterator<Item = BigInt> + '_ {
    (1u64..).flat_map(|k| [BigInt::from(k), -BigInt::from(k)]).filter(move |s| !set.contains(&Rational::from_integer(s.clone())))
}

/// Smallest nonzero integer outside `set`, searching |s| up to `2 * npairs + 2`.
pub fn choose_s(set: &IntervalSet, npairs: usize) -> Result<ShearChoice, Error> {
    let cap = BigInt::from(2 * npairs + 2);
    let s = (1u64..)
        .flat_map(|k| [BigInt::from(k), -BigInt::from(k)])
        .take_while(|s| s.abs() <= cap)
        .find(|s| !set.contains(&Rational::from_integer(s.clone())))
        .ok_or(Error::RefineAndRetry)?;
    Ok(ShearChoice { s, certified: false, attempts: 0, nongeneric_set: set.clone() })
}

/// R̄_s as a polynomial in x whose coefficients lie in Z[s], plus its squarefree part in x.
#[derive(Clone, Debug)]
pub struct ParametricResultant {
    pub rbar: Vec<UniPoly>,
    pub sqfree: Vec<UniPoly>,
}

fn dx(v: &[UniPoly]) -> Vec<UniPoly> {
    v.iter().enumerate().skip(1).map(|(i, c)| c.scale(&BigInt::from(i))).collect()
}

fn specialize(v: &[UniPoly], s0: &BigInt) -> UniPoly {
    UniPoly::new(v.iter().map(|c| c.eval_int(s0)).collect())
}

/// Symbolic resultant of `f(x + s y, y)` and `g(x + s y, y)` in y, for bivariate f, g over (x, y).
pub fn parametric_resultant(f: &MultiPoly, g: &MultiPoly) -> Result<ParametricResultant, Error> {
    let fs = shear_symbolic(f, 0);
    let gs = shear_symbolic(g, 0);
    let r = resultant(&fs, &gs, 1)?;
    if r.is_zero() {
        return Err(Error::NotZeroDimensional);
    }
    let rbar: Vec<UniPoly> = r.coeffs_in(0).iter().map(|c| c.to_uni(2).unwrap_or_else(UniPoly::zero)).collect();
    let sqfree = if rbar.len() <= 1 { rbar.clone() } else { gcd_parametric(&rbar, &dx(&rbar)).1 };
    Ok(ParametricResultant { rbar, sqfree })
}

/// Squarefree test of the specialized squarefree part at `s0`; returns the
/// specialized R̄ (sign-normalized) as the working second resultant.
pub fn certify_with(pr: &ParametricResultant, s0: &BigInt) -> (bool, UniPoly) {
    let r2 = specialize(&pr.rbar, s0);
    let rs = specialize(&pr.sqfree, s0);
    let full_degree = rs.degree() == pr.sqfree.len() as isize - 1;
    let ok = !r2.is_zero() && full_degree && (rs.degree() < 1 || is_squarefree(&rs));
    (ok, r2.sign_normalized())
}

pub fn certify_generic(f: &MultiPoly, g: &MultiPoly, s0: &BigInt) -> Result<(bool, UniPoly), Error> {
    let pr = parametric_resultant(f, g)?;
    Ok(certify_with(&pr, s0))
}

/// Attempt budget for certification: deg(f)^2 deg(g)^2 + 1.
pub fn certification_budget(f: &MultiPoly, g: &MultiPoly) -> usize {
    let (a, b) = (f.total_degree().max(1) as usize, g.total_degree().max(1) as usize);
    a * a * b * b + 1
}

/// Walk integers outside `set` until one certifies.
pub fn certify_search(pr: &ParametricResultant, set: &IntervalSet, budget: usize) -> Result<(ShearChoice, UniPoly), Error> {
    for (k, s) in integer_shears(set).take(budget).enumerate() {
        let (ok, r2) = certify_with(pr, &s);
        if ok {
            return Ok((ShearChoice { s, certified: true, attempts: k + 1, nongeneric_set: set.clone() }, r2));
        }
    }
    Err(Error::CertificationExhausted(budget))
}
