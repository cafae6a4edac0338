use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{self, GcdRing, Ring};
use crate::numeric::{lcm_denoms, sign_of, IntervalQ, Rational};

/// Dense univariate polynomial with integer coefficients, ascending.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        ring::trim(&mut coeffs);
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        UniPoly::from_i64(&[0, 1])
    }

    /// `x - r` scaled to integers for rational r.
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    /// Positive integer multiple of a polynomial with rational coefficients.
    pub fn from_rationals(c: &[Rational]) -> Self {
        let l = lcm_denoms(c.iter());
        UniPoly::new(c.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        self.pow_ref(e as u64)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// p(-x).
    pub fn mirror(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect() }
    }

    pub fn content(&self) -> BigInt {
        ring::content(&self.coeffs).unwrap_or_default()
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Same polynomial with positive leading coefficient.
    pub fn sign_normalized(&self) -> UniPoly {
        if self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn div_exact(&self, o: &UniPoly) -> Option<UniPoly> {
        ring::div_exact_poly(&self.coeffs, &o.coeffs).map(UniPoly::new)
    }

    pub fn prem(&self, o: &UniPoly) -> UniPoly {
        UniPoly::new(ring::prem(&self.coeffs, &o.coeffs))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Homogenized value q^d p(n/q), with the same sign as p(n/q).
    pub fn eval_scaled(&self, x: &Rational) -> BigInt {
        let n = x.numer();
        let q = x.denom();
        let mut acc = BigInt::zero();
        let mut qp = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &qp;
            qp *= q;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign_of(&self.eval_scaled(x))
    }

    /// Interval enclosure via Horner.
    pub fn eval_interval(&self, x: &IntervalQ) -> IntervalQ {
        let mut acc = IntervalQ::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_scalar(&Rational::from_integer(c.clone()));
        }
        acc
    }

    /// p(x + c) for integer c.
    pub fn taylor_shift(&self, c: &BigInt) -> UniPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        UniPoly::new(a)
    }

    /// x^d p(1/x).
    pub fn reverse(&self) -> UniPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        UniPoly::new(c)
    }

    /// Positive multiple of p(a + w x) with integer coefficients.
    pub fn compose_affine(&self, a: &Rational, w: &Rational) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        // D^d p(y/D) at y = A + B x, where a = A/D and w = B/D
        let d = a.denom() * w.denom();
        let big_a = a.numer() * w.denom();
        let big_b = w.numer() * a.denom();
        let n = self.coeffs.len();
        let mut dp = vec![BigInt::one(); n];
        for i in (0..n - 1).rev() {
            dp[i] = &dp[i + 1] * &d;
        }
        let q = UniPoly::new(self.coeffs.iter().zip(&dp).map(|(c, e)| c * e).collect());
        let r = q.taylor_shift(&big_a);
        let mut bp = BigInt::one();
        let mut out = Vec::with_capacity(r.coeffs.len());
        for c in r.coeffs {
            out.push(c * &bp);
            bp *= &big_b;
        }
        UniPoly::new(out)
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for c in &self.coeffs {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl Ring for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        UniPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn try_div_ref(&self, o: &Self) -> Option<Self> {
        self.div_exact(o)
    }
}

impl GcdRing for UniPoly {
    fn gcd_ref(&self, o: &Self) -> Self {
        let c = self.content().gcd(&o.content());
        gcd_uni(self, o).scale(&c)
    }
}

/// Primitive gcd with positive leading coefficient.
///
/// Panics if both inputs are zero; see [`try_gcd_uni`].
pub fn gcd_uni(f: &UniPoly, g: &UniPoly) -> UniPoly {
    try_gcd_uni(f, g).expect("gcd of two zero polynomials")
}

pub fn try_gcd_uni(f: &UniPoly, g: &UniPoly) -> Option<UniPoly> {
    if f.is_zero() && g.is_zero() {
        return None;
    }
    if f.is_zero() || g.is_zero() {
        return Some(if f.is_zero() { g.primitive_part() } else { f.primitive_part() });
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Some(UniPoly::one());
    }
    let (a, b) = (f.primitive_part(), g.primitive_part());
    Some(UniPoly::new(super::modular::gcd_modular(&a.coeffs, &b.coeffs)).primitive_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_uni(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(gcd_uni(&p(&[-2, 0, 1]), &p(&[1, 0, 1])), p(&[1]));
        assert_eq!(gcd_uni(&p(&[0, 0, -3]), &p(&[0, 6])), p(&[0, 1]));
        assert!(try_gcd_uni(&UniPoly::zero(), &UniPoly::zero()).is_none());
        assert_eq!(gcd_uni(&UniPoly::zero(), &p(&[4, -2])), p(&[-2, 1]));
    }

    #[test]
    fn eval_and_sign() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.sign_at(&rat(1, 1)), -1);
        assert_eq!(f.sign_at(&rat(3, 2)), 1);
        assert_eq!(p(&[-1, 2]).sign_at(&rat(1, 2)), 0);
        assert_eq!(f.eval(&rat(1, 2)), rat(-7, 4));
    }

    #[test]
    fn shifts_and_composition() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.taylor_shift(&BigInt::from(1)), p(&[6, 8, 3]));
        assert_eq!(f.reverse(), p(&[3, 2, 1]));
        assert_eq!(f.mirror(), p(&[1, -2, 3]));
        // (x^2-2)(1/2 + x/2) -> x^2+2x-7 up to positive content
        assert_eq!(p(&[-2, 0, 1]).compose_affine(&rat(1, 2), &rat(1, 2)).primitive_part(), p(&[-7, 2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-7, 4, 4]).to_string_var("x"), "4*x^2+4*x-7");
        assert_eq!(p(&[0, -1]).to_string_var("y"), "-y");
    }
}
