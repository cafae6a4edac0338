//! Seeded random systems for tests and benchmarks.

use num_bigint::{BigInt, RandBigInt};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::poly::MultiPoly;

/// All exponent vectors of total degree at most `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Dense polynomial of total degree `d` with coefficients uniform in [-bound, bound];
/// the pure powers of every variable at degree `d` are forced nonzero.
pub fn dense<R: Rng>(rng: &mut R, n: usize, d: u32, bound: &BigInt) -> MultiPoly {
    let lo = -bound.clone();
    let hi = bound.clone() + 1;
    let terms = monomials(n, d).into_iter().map(|e| {
        let top = e.iter().filter(|&&k| k == d).count() == 1;
        let mut c = rng.gen_bigint_range(&lo, &hi);
        while top && c == BigInt::from(0) {
            c = rng.gen_bigint_range(&lo, &hi);
        }
        (e, c)
    });
    MultiPoly::from_terms(n, terms)
}

/// Like [`dense`] but keeping only `terms` monomials; the degree-`d` pure powers
/// always survive.
pub fn sparse<R: Rng>(rng: &mut R, n: usize, d: u32, bound: &BigInt, terms: usize) -> MultiPoly {
    let full = dense(rng, n, d, bound);
    let (tops, rest): (Vec<_>, Vec<_>) =
        full.terms().map(|(e, c)| (e.clone(), c.clone())).partition(|(e, _)| e.iter().filter(|&&k| k == d).count() == 1);
    let keep = terms.saturating_sub(tops.len());
    let picked: Vec<_> = rest.choose_multiple(rng, keep).cloned().collect();
    MultiPoly::from_terms(n, tops.into_iter().chain(picked))
}

/// Dense bivariate pair with coefficients in [-100, 100].
pub fn dense_pair<R: Rng>(rng: &mut R, d: u32) -> (MultiPoly, MultiPoly) {
    let b = BigInt::from(100);
    (dense(rng, 2, d, &b), dense(rng, 2, d, &b))
}

/// Dense bivariate pair with coefficients of at most `bits` bits.
pub fn dense_pair_bits<R: Rng>(rng: &mut R, d: u32, bits: u32) -> (MultiPoly, MultiPoly) {
    let b = (BigInt::from(1) << bits) - 1;
    (dense(rng, 2, d, &b), dense(rng, 2, d, &b))
}

/// The pair {F, dF/dy} for a dense F: every fold point of F is a double fiber root.
pub fn critical_pair<R: Rng>(rng: &mut R, d: u32) -> (MultiPoly, MultiPoly) {
    let f = dense(rng, 2, d, &BigInt::from(100));
    let g = f.derivative(1);
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dense_shapes() {
        assert_eq!(monomials(2, 6).len(), 28);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (f, g) = dense_pair(&mut rng, 6);
        assert_eq!(f.total_degree(), 6);
        assert_eq!(f.degree_in(1), 6);
        assert_eq!(g.degree_in(0), 6);
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(dense_pair_bits(&mut a, 3, 128), dense_pair_bits(&mut b, 3, 128));
        let (f, g) = critical_pair(&mut rng, 4);
        assert_eq!(g, f.derivative(1));
        let p = sparse(&mut rng, 2, 5, &BigInt::from(9), 6);
        assert!(p.terms().count() <= 6);
        assert_eq!(p.degree_in(0), 5);
        assert_eq!(p.degree_in(1), 5);
    }
}
