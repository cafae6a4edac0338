//! Exact rationals, closed rational intervals, boxes and interval sets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// "p/q", or "p" when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn int_bits(v: &BigInt) -> u64 {
    // ceil(log2(|v|+1)) is the bit length of |v|
    v.magnitude().bits() + 1
}

/// Bit length of numerator or denominator, whichever is larger, counting one sign bit.
pub fn bitsize(q: &Rational) -> u64 {
    if q.is_zero() {
        return 1;
    }
    int_bits(q.numer()).max(int_bits(q.denom()))
}

pub fn bitsize_int(v: &BigInt) -> u64 {
    if v.is_zero() {
        1
    } else {
        int_bits(v)
    }
}

/// Floor of log2 |q| for nonzero q.
pub fn floor_log2(q: &Rational) -> i64 {
    assert!(!q.is_zero());
    let q = q.abs();
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let mut e = nb - db;
    // 2^e <= q < 2^(e+1) after adjustment
    if pow2(e) > q {
        e -= 1;
    }
    e
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalQ {
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Debug for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl IntervalQ {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        IntervalQ { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        IntervalQ { lo: v.clone(), hi: v }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        IntervalQ::new(int(lo), int(hi))
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, o: &IntervalQ) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn intersects(&self, o: &IntervalQ) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn intersect(&self, o: &IntervalQ) -> Option<IntervalQ> {
        let lo = (&self.lo).max(&o.lo).clone();
        let hi = (&self.hi).min(&o.hi).clone();
        if lo <= hi {
            Some(IntervalQ { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, o: &IntervalQ) -> IntervalQ {
        IntervalQ { lo: (&self.lo).min(&o.lo).clone(), hi: (&self.hi).max(&o.hi).clone() }
    }

    /// Smallest absolute value over the interval.
    pub fn mig(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn add(&self, o: &IntervalQ) -> IntervalQ {
        IntervalQ { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &IntervalQ) -> IntervalQ {
        IntervalQ { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &IntervalQ) -> IntervalQ {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = p[0].clone();
        let mut hi = p[0].clone();
        for v in &p[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        IntervalQ { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> IntervalQ {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            IntervalQ { lo: b, hi: a }
        } else {
            IntervalQ { lo: a, hi: b }
        }
    }

    pub fn add_scalar(&self, c: &Rational) -> IntervalQ {
        IntervalQ { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn neg(&self) -> IntervalQ {
        IntervalQ { lo: -&self.hi, hi: -&self.lo }
    }
}

/// Operations of [`interval_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Scale,
}

pub enum Operand<'a> {
    Interval(&'a IntervalQ),
    Scalar(&'a Rational),
}

pub fn interval_arith(op: IntervalOp, a: &IntervalQ, b: Operand<'_>) -> IntervalQ {
    let b = match b {
        Operand::Interval(i) => i.clone(),
        Operand::Scalar(q) => IntervalQ::point(q.clone()),
    };
    match op {
        IntervalOp::Add => a.add(&b),
        IntervalOp::Sub => a.sub(&b),
        IntervalOp::Mul => a.mul(&b),
        IntervalOp::Scale => a.scale(&b.lo),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoxQ {
    pub dims: Vec<IntervalQ>,
}

impl fmt::Debug for BoxQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.dims.iter()).finish()
    }
}

impl BoxQ {
    pub fn new(dims: Vec<IntervalQ>) -> Self {
        BoxQ { dims }
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn intersects(&self, o: &BoxQ) -> bool {
        self.dims.len() == o.dims.len() && self.dims.iter().zip(&o.dims).all(|(a, b)| a.intersects(b))
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.dims.iter().zip(p).all(|(i, v)| i.contains(v))
    }

    pub fn max_width(&self) -> Rational {
        self.dims.iter().map(|d| d.width()).max().unwrap_or_else(Rational::zero)
    }

    pub fn push(&self, iv: IntervalQ) -> BoxQ {
        let mut dims = self.dims.clone();
        dims.push(iv);
        BoxQ { dims }
    }
}

/// Extended endpoint of an interval-set member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Ext {
    fn rank(&self) -> u8 {
        match self {
            Ext::NegInf => 0,
            Ext::Finite(_) => 1,
            Ext::PosInf => 2,
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Finite(q) => write!(f, "{}", fmt_rational(q)),
        }
    }
}

/// Member of an [`IntervalSet`]; infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtInterval {
    pub lo: Ext,
    pub lo_closed: bool,
    pub hi: Ext,
    pub hi_closed: bool,
}

impl fmt::Display for ExtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}, {}{}", if self.lo_closed { '[' } else { '(' }, self.lo, self.hi, if self.hi_closed { ']' } else { ')' })
    }
}

impl ExtInterval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        ExtInterval { lo: Ext::Finite(lo), lo_closed: true, hi: Ext::Finite(hi), hi_closed: true }
    }

    pub fn new(lo: Ext, lo_closed: bool, hi: Ext, hi_closed: bool) -> Self {
        let lo_closed = lo_closed && matches!(lo, Ext::Finite(_));
        let hi_closed = hi_closed && matches!(hi, Ext::Finite(_));
        ExtInterval { lo, lo_closed, hi, hi_closed }
    }

    pub fn everything() -> Self {
        ExtInterval::new(Ext::NegInf, false, Ext::PosInf, false)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let v = Ext::Finite(v.clone());
        let lo_ok = match self.lo.cmp(&v) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let hi_ok = match v.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    fn intersect(&self, o: &ExtInterval) -> ExtInterval {
        let (lo, lo_closed) = match self.lo.cmp(&o.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (o.lo.clone(), o.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && o.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&o.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (o.hi.clone(), o.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && o.hi_closed),
        };
        ExtInterval { lo, lo_closed, hi, hi_closed }
    }

    /// Reflection through zero.
    pub fn negate(&self) -> ExtInterval {
        let flip = |e: &Ext| match e {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Finite(q) => Ext::Finite(-q),
        };
        ExtInterval { lo: flip(&self.hi), lo_closed: self.hi_closed, hi: flip(&self.lo), hi_closed: self.lo_closed }
    }
}

/// Sorted, pairwise disjoint union of extended intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    pub intervals: Vec<ExtInterval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    pub fn from_intervals(v: Vec<ExtInterval>) -> Self {
        let mut s = IntervalSet { intervals: v };
        s.normalize();
        s
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.intervals.iter().any(|i| i.contains(v))
    }

    pub fn negate(&self) -> IntervalSet {
        let mut v: Vec<_> = self.intervals.iter().map(|i| i.negate()).collect();
        v.reverse();
        IntervalSet { intervals: v }
    }

    pub fn intersect_interval(&self, w: &ExtInterval) -> IntervalSet {
        IntervalSet::from_intervals(self.intervals.iter().map(|i| i.intersect(w)).collect())
    }

    fn normalize(&mut self) {
        let mut v: Vec<ExtInterval> = self.intervals.drain(..).filter(|i| !i.is_empty()).collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<ExtInterval> = Vec::with_capacity(v.len());
        for i in v {
            if let Some(last) = out.last_mut() {
                let touches = match last.hi.cmp(&i.lo) {
                    Ordering::Greater => true,
                    Ordering::Equal => last.hi_closed || i.lo_closed,
                    Ordering::Less => false,
                };
                if touches {
                    match last.hi.cmp(&i.hi) {
                        Ordering::Less => {
                            last.hi = i.hi;
                            last.hi_closed = i.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= i.hi_closed,
                        Ordering::Greater => {}
                    }
                    continue;
                }
            }
            out.push(i);
        }
        self.intervals = out;
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub fn intervalset_union(a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
    let mut v = a.intervals.clone();
    v.extend(b.intervals.iter().cloned());
    IntervalSet::from_intervals(v)
}

/// Exact sign of a big integer as -1, 0 or 1.
pub fn sign_of(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
