use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{GcdRing, Ring};
use super::uni::UniPoly;
use crate::numeric::{IntervalQ, Rational};

/// Sparse integer polynomial in `nvars` ordered variables x_0 < x_1 < ...
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent arity mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Polynomial in variable `i` only, from dense coefficients.
    pub fn from_uni(nvars: usize, i: usize, u: &UniPoly) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn degree_in(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| e[i] as i64).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().map(|&k| k as i64).sum()).max().unwrap_or(-1)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        self.pow_ref(e as u64)
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        r
    }

    /// Coefficients with respect to variable `i`, ascending; `x_i` is absent from each.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![MultiPoly::zero(self.nvars); d as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut r = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                r.add_term(e2, v.clone());
            }
        }
        r
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn lc_in(&self, i: usize) -> MultiPoly {
        self.coeffs_in(i).pop().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// Dense univariate view when only variable `i` occurs.
    pub fn to_uni(&self, i: usize) -> Option<UniPoly> {
        let d = self.degree_in(i).max(0) as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (e, v) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            c[e[i] as usize] = v.clone();
        }
        Some(UniPoly::new(c))
    }

    /// Substitute `x_i := r`.
    pub fn substitute(&self, i: usize, r: &MultiPoly) -> MultiPoly {
        let cs = self.coeffs_in(i);
        let mut acc = MultiPoly::zero(self.nvars);
        for c in cs.iter().rev() {
            acc = acc.mul(r).add(c);
        }
        acc
    }

    /// Substitute `x_i := c` for an integer `c`; variable `i` stays in the order.
    pub fn eval_var_int(&self, i: usize, c: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        let d = self.degree_in(i).max(0) as usize;
        let mut pw = Vec::with_capacity(d + 1);
        pw.push(BigInt::one());
        for k in 1..=d {
            pw.push(&pw[k - 1] * c);
        }
        for (e, v) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0) as usize;
            out.add_term(e2, v * &pw[k]);
        }
        out
    }

    /// Shear `x_i := x_i + s x_{i+1}`.
    pub fn shear(&self, s: &BigInt, i: usize) -> MultiPoly {
        assert!(i + 1 < self.nvars, "shear index out of range");
        if s.is_zero() {
            return self.clone();
        }
        let r = MultiPoly::var(self.nvars, i).add(&MultiPoly::var(self.nvars, i + 1).scale(s));
        self.substitute(i, &r)
    }

    /// Append `k` unused variables at the end of the order.
    pub fn extend_vars(&self, k: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars + k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.extend(std::iter::repeat_n(0, k));
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Drop variable `i`, which must not occur.
    pub fn remove_var(&self, i: usize) -> MultiPoly {
        assert!(!self.uses_var(i), "removing a variable that occurs");
        MultiPoly {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.remove(i);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Reorder variables: new variable `k` is old variable `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        MultiPoly { nvars: perm.len(), terms: self.terms.iter().map(|(e, c)| (perm.iter().map(|&j| e[j]).collect(), c.clone())).collect() }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    t *= num_traits::pow(point[k].clone(), p as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Fix every variable except `free` at rational values; returns a positive multiple
    /// of the resulting univariate polynomial.
    pub fn specialize(&self, point: &[Rational], free: usize) -> UniPoly {
        let cs = self.coeffs_in(free);
        let vals: Vec<Rational> = cs.iter().map(|c| c.eval(point)).collect();
        UniPoly::from_rationals(&vals)
    }

    /// Exact univariate coefficients of the specialization, as rationals.
    pub fn specialize_exact(&self, point: &[Rational], free: usize) -> Vec<Rational> {
        self.coeffs_in(free).iter().map(|c| c.eval(point)).collect()
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Leading coefficient in lexicographic order (x_0 most significant).
    pub fn lex_lc(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    /// Divide out the integer content; the lexicographic leading coefficient becomes positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lex_lc().is_negative() {
            c = -c;
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v / &c)).collect() }
    }

    pub fn div_exact(&self, o: &MultiPoly) -> Option<MultiPoly> {
        assert!(!o.is_zero(), "division by zero polynomial");
        let (le, lc) = o.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((e, c)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&le).map(|(a, b)| a - b).collect();
            let t = MultiPoly::from_terms(self.nvars, [(qe, qc)]);
            r = r.sub(&t.mul(o));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Interval enclosure at a box over the given variables, by Horner in the variable
    /// order with plain interval products.
    pub fn eval_interval(&self, boxv: &[IntervalQ]) -> IntervalQ {
        super::horner::HornerForm::new(self).eval_interval(boxv)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        // graded descending order for readability
        let mut ts: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in ts {
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mut factors: Vec<String> = Vec::new();
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[k].clone()),
                    _ => factors.push(format!("{}^{}", names[k], p)),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars)
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

impl GcdRing for MultiPoly {
    /// Integer content gcd only; enough for content stripping, not a polynomial gcd.
    fn gcd_ref(&self, o: &Self) -> Self {
        MultiPoly::constant(self.nvars, self.content().gcd(&o.content()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_system;

    #[test]
    fn shear_examples() {
        let sys = parse_system(&["x^2+y^2-2", "x^2+2*x*y+2*y^2-2"], None).unwrap();
        assert_eq!(sys.polys[0].shear(&BigInt::from(1), 0), sys.polys[1]);
        assert_eq!(sys.polys[0].shear(&BigInt::from(0), 0), sys.polys[0]);
        let t = parse_system(&["3*x-y-5*z-4", "3*x-y-6*z-4"], None).unwrap();
        assert_eq!(t.polys[0].shear(&BigInt::from(1), 1), t.polys[1]);
        let back = t.polys[0].shear(&BigInt::from(3), 1).shear(&BigInt::from(-3), 1);
        assert_eq!(back, t.polys[0]);
    }

    #[test]
    fn exact_division() {
        let s = parse_system(&["x^2-y^2", "x-y", "x+y", "x+2"], None).unwrap();
        assert_eq!(s.polys[0].div_exact(&s.polys[1]), Some(s.polys[2].clone()));
        assert_eq!(s.polys[0].div_exact(&s.polys[3]), None);
    }

    #[test]
    fn coefficient_views() {
        let s = parse_system(&["x^2*y+x*y+1"], None).unwrap();
        let f = &s.polys[0];
        let cs = f.coeffs_in(1);
        assert_eq!(cs.len(), 2);
        assert_eq!(MultiPoly::from_coeffs_in(2, 1, &cs), *f);
        assert_eq!(f.degree_in(0), 2);
        assert_eq!(f.total_degree(), 3);
    }
}
