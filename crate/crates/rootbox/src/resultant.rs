//! Resultants of multivariate integer polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::exec::par_map;
use crate::poly::modular::interpolate_consecutive;
use crate::poly::ring::{self, Ring};
use crate::poly::{MultiPoly, UniPoly};

fn check(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<(), Error> {
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), got: g.nvars() });
    }
    for p in [f, g] {
        if !p.uses_var(var) {
            return Err(Error::VariableAbsent(format!("x{var}")));
        }
    }
    Ok(())
}

/// Dense view of a polynomial in `var` whose coefficients involve only `other`.
fn to_dense_uni(f: &MultiPoly, var: usize, other: usize) -> Vec<UniPoly> {
    f.coeffs_in(var).iter().map(|c| c.to_uni(other).expect("bivariate coefficient")).collect()
}

/// Resultant with respect to `var`; content is not stripped.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, Error> {
    check(f, g, var)?;
    Ok(res_interp(f, g, var))
}

/// Subresultant PRS over the coefficient ring; used for cross-checks.
pub fn resultant_prs(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, Error> {
    check(f, g, var)?;
    let n = f.nvars();
    let others = others_of(f, g, var);
    match others.len() {
        0 => Ok(MultiPoly::constant(n, int_res(f, g, var))),
        1 => {
            let o = others[0];
            let a = to_dense_uni(f, var, o);
            let b = to_dense_uni(g, var, o);
            Ok(MultiPoly::from_uni(n, o, &ring::resultant(&a, &b, &UniPoly::one())))
        }
        _ => {
            let a = f.coeffs_in(var);
            let b = g.coeffs_in(var);
            Ok(ring::resultant(&a, &b, &MultiPoly::one(n)))
        }
    }
}

fn others_of(f: &MultiPoly, g: &MultiPoly, var: usize) -> Vec<usize> {
    (0..f.nvars()).filter(|&i| i != var && (f.uses_var(i) || g.uses_var(i))).collect()
}

fn int_res(f: &MultiPoly, g: &MultiPoly, var: usize) -> BigInt {
    let a: Vec<BigInt> = f.to_uni(var).unwrap().into_coeffs();
    let b: Vec<BigInt> = g.to_uni(var).unwrap().into_coeffs();
    ring::resultant(&a, &b, &BigInt::one())
}

/// Evaluate the last remaining variable at consecutive integers where neither
/// leading coefficient vanishes, recurse, then interpolate by forward differences.
fn res_interp(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let n = f.nvars();
    let others = others_of(f, g, var);
    let v = match others.last() {
        None => return MultiPoly::constant(n, int_res(f, g, var)),
        Some(&v) => v,
    };
    let (df, dg) = (f.degree_in(var), g.degree_in(var));
    let mut bound = dg * f.degree_in(v) + df * g.degree_in(v);
    bound = bound.min(f.total_degree() * g.total_degree());
    let d = bound.max(0) as usize;
    let (lf, lg) = (f.lc_in(var), g.lc_in(var));
    let bad = |c: &BigInt| lf.eval_var_int(v, c).is_zero() || lg.eval_var_int(v, c).is_zero();
    let mut c = BigInt::zero();
    'search: loop {
        for k in 0..=d {
            let p = &c + BigInt::from(k);
            if bad(&p) {
                c = p + 1;
                continue 'search;
            }
        }
        break;
    }
    let points: Vec<BigInt> = (0..=d).map(|k| &c + BigInt::from(k)).collect();
    let vals = par_map(&points, |p| res_interp(&f.eval_var_int(v, p), &g.eval_var_int(v, p), var));
    let mut table: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
    for (k, r) in vals.iter().enumerate() {
        for (e, x) in r.terms() {
            table.entry(e.clone()).or_insert_with(|| vec![BigInt::zero(); d + 1])[k] = x.clone();
        }
    }
    let mut terms = Vec::new();
    for (e, ys) in table {
        let u = interpolate_consecutive(ys, &c);
        for (i, a) in u.coeffs().iter().enumerate() {
            if !a.is_zero() {
                let mut e2 = e.clone();
                e2[v] = i as u32;
                terms.push((e2, a.clone()));
            }
        }
    }
    MultiPoly::from_terms(n, terms)
}

/// Univariate resultant when eliminating `var` leaves only variable `other`.
pub fn resultant_uni(f: &MultiPoly, g: &MultiPoly, var: usize, other: usize) -> Result<UniPoly, Error> {
    let r = resultant(f, g, var)?;
    Ok(r.to_uni(other).expect("resultant left more than one variable"))
}

/// `f(..., x_i + p x_{i+1}, ...)` with a fresh last variable `p` standing for the shear parameter.
pub fn shear_symbolic(f: &MultiPoly, i: usize) -> MultiPoly {
    let e = f.extend_vars(1);
    let n = e.nvars();
    let p = n - 1;
    let r = MultiPoly::var(n, i).add(&MultiPoly::var(n, p).mul(&MultiPoly::var(n, i + 1)));
    e.substitute(i, &r)
}

/// Resultant of already sheared inputs where `param` is the symbolic shear parameter;
/// the result lies in Z[param, remaining variables].
pub fn resultant_with_parameter(f: &MultiPoly, g: &MultiPoly, var: usize, param: usize) -> Result<MultiPoly, Error> {
    debug_assert!(param != var);
    resultant(f, g, var)
}

/// Sylvester determinant by fraction-free elimination; slow, for cross-checks.
pub fn sylvester_bareiss(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, Error> {
    check(f, g, var)?;
    let n = f.nvars();
    let a = f.coeffs_in(var);
    let b = g.coeffs_in(var);
    let m = a.len() - 1;
    let k = b.len() - 1;
    let size = m + k;
    let zero = MultiPoly::zero(n);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..k {
        for (j, c) in a.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[k + r][r + j] = c.clone();
        }
    }
    Ok(bareiss_det(mat, MultiPoly::one(n)))
}

fn bareiss_det<C: Ring>(mut mat: Vec<Vec<C>>, one: C) -> C {
    let size = mat.len();
    let mut sign = false;
    let mut prev = one.clone();
    for kk in 0..size {
        if mat[kk][kk].is_zero_elem() {
            match (kk + 1..size).find(|&r| !mat[r][kk].is_zero_elem()) {
                Some(r) => {
                    mat.swap(kk, r);
                    sign = !sign;
                }
                None => return one.zero_like(),
            }
        }
        for i in kk + 1..size {
            for j in kk + 1..size {
                let t = mat[i][j].mul_ref(&mat[kk][kk]).sub_ref(&mat[i][kk].mul_ref(&mat[kk][j]));
                mat[i][j] = t.div_exact_ref(&prev);
            }
        }
        prev = mat[kk][kk].clone();
    }
    let d = if size == 0 { one } else { mat[size - 1][size - 1].clone() };
    if sign {
        d.neg_ref()
    } else {
        d
    }
}

/// True when the result vanishes identically.
pub fn is_zero_resultant(r: &MultiPoly) -> bool {
    r.is_zero()
}

pub fn integer_resultant(a: &UniPoly, b: &UniPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    ring::resultant(a.coeffs(), b.coeffs(), &BigInt::one())
}
