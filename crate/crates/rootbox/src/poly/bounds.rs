use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::uni::UniPoly;
use crate::error::Error;
use crate::numeric::{pow2, Rational};

/// Cauchy bound 1 + max |a_i| / |a_d|.
pub fn root_bound(f: &UniPoly) -> Result<Rational, Error> {
    if f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let c = f.coeffs();
    let m = c[..c.len() - 1].iter().map(|a| a.abs()).max().unwrap_or_default();
    Ok(Rational::one() + Rational::new(m, f.lc().abs()))
}

/// Smallest power of two not below the Cauchy bound.
pub fn root_bound_pow2(f: &UniPoly) -> Result<i64, Error> {
    let b = root_bound(f)?;
    let mut k = 0i64;
    while pow2(k) < b {
        k += 1;
    }
    Ok(k)
}

/// Ceiling of log2 for a positive integer.
fn ceil_log2(n: &BigInt) -> u64 {
    let k = n.bits();
    if (n - BigInt::one()).bits() < k {
        // n is a power of two
        k - 1
    } else {
        k
    }
}

/// Power of two not exceeding d^{-(d+2)/2} (d+1)^{(1-d)/2} 2^{tau(1-d)}.
pub fn separation_bound(f: &UniPoly) -> Result<Rational, Error> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let du = d as u32;
    let tau = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    // 2^(2E) >= d^(d+2) (d+1)^(d-1)
    let n = num_traits::pow(BigInt::from(du), (du + 2) as usize) * num_traits::pow(BigInt::from(du + 1), (du - 1) as usize);
    let l = ceil_log2(&n) as i64;
    let e = (l + 1) / 2 + tau * (d as i64 - 1);
    debug_assert!(!n.is_zero());
    Ok(pow2(-e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn cauchy_examples() {
        assert_eq!(root_bound(&UniPoly::from_i64(&[-2, 0, 1])).unwrap(), int(3));
        assert_eq!(root_bound(&UniPoly::from_i64(&[-1, 1])).unwrap(), int(2));
        assert_eq!(root_bound(&UniPoly::from_i64(&[0, 0, 0, 5])).unwrap(), int(1));
        assert!(root_bound(&UniPoly::from_i64(&[7])).is_err());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation_bound(&UniPoly::from_i64(&[-2, 0, 1])).unwrap(), rat(1, 32));
        assert!(separation_bound(&UniPoly::from_i64(&[2, -3, 1])).unwrap() <= int(1));
        assert!(separation_bound(&UniPoly::from_i64(&[1, 1])).is_err());
    }
}
