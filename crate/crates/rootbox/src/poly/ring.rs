//! Coefficient rings for recursive (dense in one variable) polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Integral domain with exact division, as needed by subresultant sequences.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / o` when the division is exact.
    fn try_div_ref(&self, o: &Self) -> Option<Self>;

    fn div_exact_ref(&self, o: &Self) -> Self {
        self.try_div_ref(o).expect("inexact division in coefficient ring")
    }

    fn pow_ref(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Ring with a gcd, allowing primitive parts.
pub trait GcdRing: Ring {
    fn gcd_ref(&self, o: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_div_ref(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        r.is_zero().then_some(q)
    }
}

impl GcdRing for BigInt {
    fn gcd_ref(&self, o: &Self) -> Self {
        self.gcd(o)
    }
}

/// Dense polynomial over `C` in a single main variable, ascending.
pub fn trim<C: Ring>(v: &mut Vec<C>) {
    while v.last().is_some_and(|c| c.is_zero_elem()) {
        v.pop();
    }
}

pub fn deg<C: Ring>(v: &[C]) -> isize {
    v.len() as isize - 1
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
pub fn prem<C: Ring>(a: &[C], b: &[C]) -> Vec<C> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<C> = a.to_vec();
    if a.len() < b.len() {
        return r;
    }
    let mut e = a.len() - b.len() + 1;
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<C> = r[..dr].iter().map(|c| c.mul_ref(lb)).collect();
        for (i, bc) in b[..db].iter().enumerate() {
            let t = lr.mul_ref(bc);
            next[i + shift] = next[i + shift].sub_ref(&t);
        }
        r = next;
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow_ref(e as u64);
        for c in r.iter_mut() {
            *c = c.mul_ref(&f);
        }
    }
    r
}

/// Resultant with respect to the main variable via the subresultant PRS.
///
/// Agrees with the Sylvester determinant of `(a, b)`.
pub fn resultant<C: Ring>(a: &[C], b: &[C], one: &C) -> C {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return one.zero_like();
    }
    let mut s = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        let r = b[0].pow_ref((a.len() - 1) as u64);
        return if s { r.neg_ref() } else { r };
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = (da - db) as u64;
        if da % 2 == 1 && db % 2 == 1 {
            s = !s;
        }
        let r = prem(&a, &b);
        a = b;
        let div = g.mul_ref(&h.pow_ref(delta));
        b = r.iter().map(|c| c.div_exact_ref(&div)).collect();
        g = a[a.len() - 1].clone();
        h = if delta == 0 { h } else { g.pow_ref(delta).div_exact_ref(&h.pow_ref(delta - 1)) };
        if b.len() <= 1 {
            break;
        }
    }
    if b.is_empty() {
        return one.zero_like();
    }
    let da = (a.len() - 1) as u64;
    let lb = &b[0];
    let r = if da == 0 { one.clone() } else { lb.pow_ref(da).div_exact_ref(&h.pow_ref(da - 1)) };
    if s {
        r.neg_ref()
    } else {
        r
    }
}

pub fn content<C: GcdRing>(v: &[C]) -> Option<C> {
    let mut it = v.iter().filter(|c| !c.is_zero_elem());
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, c| acc.gcd_ref(c)))
}

pub fn primitive<C: GcdRing>(v: &[C]) -> Vec<C> {
    match content(v) {
        Some(c) => v.iter().map(|x| x.div_exact_ref(&c)).collect(),
        None => Vec::new(),
    }
}

/// gcd over the fraction field, returned primitive (sign not normalized).
pub fn gcd_prs<C: GcdRing>(a: &[C], b: &[C]) -> Vec<C> {
    let mut a = primitive(a);
    let mut b = primitive(b);
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let one = a[0].one_like();
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = (a.len() - b.len()) as u64;
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive(&b);
        }
        if r.len() == 1 {
            return vec![one];
        }
        a = b;
        let div = g.mul_ref(&h.pow_ref(delta));
        b = r.iter().map(|c| c.div_exact_ref(&div)).collect();
        g = a[a.len() - 1].clone();
        h = if delta == 0 { h } else { g.pow_ref(delta).div_exact_ref(&h.pow_ref(delta - 1)) };
    }
}

pub fn mul_poly<C: Ring>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![a[0].zero_like(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    trim(&mut out);
    out
}

/// Exact division of dense polynomials; `None` if not exact.
pub fn div_exact_poly<C: Ring>(a: &[C], b: &[C]) -> Option<Vec<C>> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![lb.zero_like(); r.len() - db];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let t = r[dr].try_div_ref(&lb)?;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub_ref(&t.mul_ref(bc));
        }
        q[shift] = t;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}
