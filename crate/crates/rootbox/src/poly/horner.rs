use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multi::MultiPoly;
use crate::error::Error;
use crate::numeric::{IntervalQ, Rational};

/// Nested Horner scheme; the outermost variable is the last one in the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HornerForm {
    Const(BigInt),
    Node { var: usize, coeffs: Vec<HornerForm> },
}

impl HornerForm {
    pub fn new(f: &MultiPoly) -> HornerForm {
        let top = (0..f.nvars()).rev().find(|&i| f.uses_var(i));
        match top {
            None => HornerForm::Const(f.terms().next().map(|(_, c)| c.clone()).unwrap_or_default()),
            Some(v) => HornerForm::Node { var: v, coeffs: f.coeffs_in(v).iter().map(HornerForm::new).collect() },
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        match self {
            HornerForm::Const(c) => Rational::from_integer(c.clone()),
            HornerForm::Node { var, coeffs } => {
                let x = &point[*var];
                coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c.eval(point))
            }
        }
    }

    /// Interval enclosure with plain interval products, so `x*x` over [-1,1] gives [-1,1].
    pub fn eval_interval(&self, boxv: &[IntervalQ]) -> IntervalQ {
        match self {
            HornerForm::Const(c) => IntervalQ::point(Rational::from_integer(c.clone())),
            HornerForm::Node { var, coeffs } => {
                let x = &boxv[*var];
                let mut it = coeffs.iter().rev();
                let mut acc = it.next().map(|c| c.eval_interval(boxv)).unwrap();
                for c in it {
                    acc = acc.mul(x).add(&c.eval_interval(boxv));
                }
                acc
            }
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        match self {
            HornerForm::Const(c) => c.to_string(),
            HornerForm::Node { var, coeffs } => {
                // a0 + (a1 + (a2) x) x
                let x = &names[*var];
                let mut it = coeffs.iter().rev();
                let mut acc = it.next().unwrap().to_string_with(names);
                for c in it {
                    let head = if acc == "1" { x.clone() } else { format!("({acc}){x}") };
                    acc = if c.is_zero() { head } else { format!("{}+{}", c.to_string_with(names), head) };
                }
                acc
            }
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, HornerForm::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, HornerForm::Const(c) if c.is_one())
    }
}

pub fn horner_rewrite(f: &MultiPoly) -> Result<HornerForm, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(HornerForm::new(f))
}

/// Coefficient intervals of `f` in `free` over the box (entries for `free` are ignored).
pub fn eval_interval(f: &MultiPoly, boxv: &[IntervalQ], free: usize) -> Result<Vec<IntervalQ>, Error> {
    if boxv.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), got: boxv.len() });
    }
    Ok(f.coeffs_in(free).iter().map(|c| HornerForm::new(c).eval_interval(boxv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::poly::parse::parse_system;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rewrite_examples() {
        let s = parse_system(&["3+5*x+7*x^2"], None).unwrap();
        assert_eq!(horner_rewrite(&s.polys[0]).unwrap().to_string_with(&names(&["x"])), "3+(5+(7)x)x");
        let s = parse_system(&["x"], None).unwrap();
        assert_eq!(horner_rewrite(&s.polys[0]).unwrap().to_string_with(&names(&["x"])), "x");
        let s = parse_system(&["x^2*y+x*y+1"], None).unwrap();
        let h = horner_rewrite(&s.polys[0]).unwrap();
        assert_eq!(h.to_string_with(&names(&["x", "y"])), "1+((1+x)x)y");
        let p = [int(3), int(-2)];
        assert_eq!(h.eval(&p), s.polys[0].eval(&p));
        assert!(horner_rewrite(&MultiPoly::zero(2)).is_err());
    }

    #[test]
    fn interval_coefficients() {
        // variables x1, x with x free
        let s = parse_system(&["x^2-x1"], Some(&["x1", "x"])).unwrap();
        let f = &s.polys[0];
        let b = [IntervalQ::from_ints(1, 4), IntervalQ::from_ints(0, 0)];
        let c = eval_interval(f, &b, 1).unwrap();
        assert_eq!(c, vec![IntervalQ::from_ints(-4, -1), IntervalQ::from_ints(0, 0), IntervalQ::from_ints(1, 1)]);
        let b = [IntervalQ::from_ints(2, 2), IntervalQ::from_ints(0, 0)];
        let c = eval_interval(f, &b, 1).unwrap();
        assert_eq!(c[0], IntervalQ::from_ints(-2, -2));

        let s = parse_system(&["x1*x+x1^2"], Some(&["x1", "x"])).unwrap();
        let b = [IntervalQ::from_ints(-1, 1), IntervalQ::from_ints(0, 0)];
        let c = eval_interval(&s.polys[0], &b, 1).unwrap();
        assert_eq!(c, vec![IntervalQ::from_ints(-1, 1), IntervalQ::from_ints(-1, 1)]);
        assert!(eval_interval(&s.polys[0], &b[..1], 1).is_err());
    }
}
