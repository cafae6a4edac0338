use num_bigint::BigInt;
use num_traits::Signed;

use super::uni::{gcd_uni, UniPoly};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// Signed integer content.
    pub content: BigInt,
    /// Primitive, squarefree, pairwise coprime factors with their powers, by increasing power.
    pub factors: Vec<(UniPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::constant(self.content.clone()), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }

    /// Product of the factors.
    pub fn squarefree_part(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::one(), |acc, (f, _)| acc.mul(f))
    }
}

/// Yun's algorithm on the primitive part.
pub fn squarefree_decompose(f: &UniPoly) -> Result<SquarefreeDecomposition, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let p = f.primitive_part();
    let mut factors = Vec::new();
    if p.degree() > 0 {
        let dp = p.derivative();
        let a0 = gcd_uni(&p, &dp);
        let mut b = p.div_exact(&a0).expect("gcd divides");
        let c = dp.div_exact(&a0).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.degree() > 0 {
            let a = gcd_uni(&b, &d);
            let nb = b.div_exact(&a).expect("exact");
            let nc = d.div_exact(&a).expect("exact");
            if a.degree() > 0 {
                factors.push((a, i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
    }
    Ok(SquarefreeDecomposition { content, factors })
}

/// Primitive squarefree part with positive leading coefficient.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(UniPoly::one());
    }
    let g = gcd_uni(f, &f.derivative());
    Ok(f.div_exact(&g).expect("gcd divides").primitive_part())
}

pub fn is_squarefree(f: &UniPoly) -> bool {
    f.degree() <= 0 || gcd_uni(f, &f.derivative()).degree() == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn yun_examples() {
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.factors, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(d.reconstruct(), f);

        let r2 = p(&[-7, -44, -8, 8, 4]).mul(&p(&[-2, 0, 1]).pow(2)).scale(&BigInt::from(4));
        let d = squarefree_decompose(&r2).unwrap();
        assert_eq!(d.content, BigInt::from(4));
        assert_eq!(d.factors, vec![(p(&[-7, -44, -8, 8, 4]), 1), (p(&[-2, 0, 1]), 2)]);

        let d = squarefree_decompose(&p(&[0, 0, 0, 1])).unwrap();
        assert_eq!(d.factors, vec![(p(&[0, 1]), 3)]);
        assert!(squarefree_decompose(&UniPoly::zero()).is_err());
    }

    #[test]
    fn negative_content() {
        let f = p(&[2, -2]).pow(3).neg();
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.reconstruct(), f);
    }
}
