//! Multi-modular gcd of integer polynomials.
//!
//! Images modulo word-size primes are combined by Chinese remaindering; the
//! candidate is accepted only after exact trial division, so the result is
//! always correct.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ring::{self, GcdRing};
use super::uni::{gcd_uni, UniPoly};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Odd primes below the (odd) start, decreasing.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime_u64(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    c.mod_floor(&m).to_u64().unwrap()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over Z/p.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a := a mod b
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() >= b.len() {
            let da = a.len() - 1;
            let q = mul_mod(a[da], inv, p);
            let shift = da - db;
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                a[i + shift] = if a[i + shift] >= t { a[i + shift] - t } else { a[i + shift] + p - t };
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Primitive gcd over Z of two nonzero primitive polynomials (sign not normalized).
pub fn gcd_modular(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let lc = la.gcd(lb);
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut stable = 0;
    for p in Primes((1u64 << 62) + 1) {
        if reduce(la, p) == 0 || reduce(lb, p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(ap, bp, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > best_deg {
            continue;
        }
        let scale = reduce(&lc, p);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if d < best_deg {
            best_deg = d;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            stable = 0;
            continue;
        }
        // CRT: x = acc mod modulus, x = g mod p
        let pm = BigInt::from(p);
        let inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
        let mut changed = false;
        let next: Vec<BigInt> = acc
            .iter()
            .zip(&g)
            .map(|(x, &gp)| {
                let x = symmetric(x, &modulus);
                let t = ((BigInt::from(gp) - &x) * &inv).mod_floor(&pm);
                x + &modulus * t
            })
            .collect();
        let nm = &modulus * &pm;
        for (old, new) in acc.iter().zip(&next) {
            if symmetric(old, &modulus) != symmetric(new, &nm) {
                changed = true;
                break;
            }
        }
        acc = next;
        modulus = nm;
        stable = if changed { 0 } else { stable + 1 };
        if stable >= 1 {
            let cand: Vec<BigInt> = acc.iter().map(|x| symmetric(x, &modulus)).collect();
            let cand = ring::primitive(&cand);
            if ring::div_exact_poly(a, &cand).is_some() && ring::div_exact_poly(b, &cand).is_some() {
                return cand;
            }
        }
    }
    unreachable!("prime iterator is unbounded")
}

/// Integer polynomial `p` with `p(c + k) = ys[k]`, by forward differences.
pub fn interpolate_consecutive(mut ys: Vec<BigInt>, c: &BigInt) -> UniPoly {
    let m = ys.len();
    for k in 1..m {
        for j in (k..m).rev() {
            let t = &ys[j] - &ys[j - 1];
            ys[j] = t;
        }
    }
    let mut acc = UniPoly::zero();
    let mut basis = UniPoly::one();
    let mut fact = BigInt::one();
    for (k, dk) in ys.iter().enumerate() {
        if k > 0 {
            basis = basis.mul(&UniPoly::new(vec![-BigInt::from(k - 1), BigInt::one()]));
            fact *= k;
        }
        if !dk.is_zero() {
            acc = acc.add(&basis.scale(&(dk / &fact)));
        }
    }
    acc.taylor_shift(&-c)
}

fn specialize(v: &[UniPoly], c: &BigInt) -> UniPoly {
    UniPoly::new(v.iter().map(|u| u.eval_int(c)).collect())
}

/// Gcd in Z[s][x] of polynomials given densely in x with coefficients in Z[s],
/// together with the cofactor of the primitive part of `a`.
///
/// Images at integer values of s are interpolated and the candidate is
/// confirmed by exact division.
pub fn gcd_parametric(a: &[UniPoly], b: &[UniPoly]) -> (Vec<UniPoly>, Vec<UniPoly>) {
    let a = ring::primitive(a);
    let b = ring::primitive(b);
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd_ref(lb);
    let deg_s = |v: &[UniPoly]| v.iter().map(|u| u.degree().max(0) as usize).max().unwrap_or(0);
    let need = gamma.degree().max(0) as usize + deg_s(&a).min(deg_s(&b)) + 1;
    let mut c = BigInt::zero();
    let mut p = BigInt::zero();
    let mut dmin = usize::MAX;
    let mut images: Vec<UniPoly> = Vec::new();
    while images.len() < need {
        let here = p.clone();
        p += 1;
        if la.eval_int(&here).is_zero() || lb.eval_int(&here).is_zero() {
            images.clear();
            c = p.clone();
            continue;
        }
        let g = gcd_uni(&specialize(&a, &here), &specialize(&b, &here));
        let d = g.degree() as usize;
        if d == 0 {
            return (vec![UniPoly::one()], a);
        }
        let scaled = g.scale(&gamma.eval_int(&here));
        let lg = g.lc();
        let img = match ring::div_exact_poly(scaled.coeffs(), &[lg]) {
            Some(v) if d <= dmin => UniPoly::new(v),
            _ => {
                images.clear();
                c = p.clone();
                continue;
            }
        };
        if d < dmin {
            dmin = d;
            images.clear();
            c = here;
        }
        images.push(img);
    }
    let g: Vec<UniPoly> = (0..=dmin).map(|j| interpolate_consecutive(images.iter().map(|u| u.coeff(j)).collect(), &c)).collect();
    let g = ring::primitive(&g);
    match (ring::div_exact_poly(&a, &g), ring::div_exact_poly(&b, &g)) {
        (Some(q), Some(_)) => (g, q),
        _ => {
            let g = ring::gcd_prs(&a, &b);
            let q = ring::div_exact_poly(&a, &g).expect("gcd divides");
            (g, q)
        }
    }
}
