//! Interval polynomials over boxes, their effective real roots, and root candidates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::numeric::{int, pow2, BoxQ, IntervalQ, Rational};
use crate::poly::{eval_interval, squarefree_part, MultiPoly, UniPoly};
use crate::univsolve::{isolate_nonnegative, refine_until, roots_in};

/// f(I, x) = sum A_i x^i with bounding polynomials sum a_i x^i and sum b_i x^i.
#[derive(Clone, Debug)]
pub struct IntervalPoly {
    pub coeffs: Vec<IntervalQ>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
    pub source: Option<(MultiPoly, BoxQ, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// The lower bounding polynomial increases through the root.
    Increasing,
    /// The upper bounding polynomial decreases through the root.
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveRoot {
    pub interval: IntervalQ,
    pub monotonous: bool,
    pub orientation: Option<Orientation>,
}

/// Stopping rule for bounding-polynomial root intervals: width at most `abs` and at
/// most `rel` times the smallest absolute value in the interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precision {
    pub abs: Rational,
    pub rel: Rational,
}

impl Precision {
    /// Scaled from a base width: `base * 2^-7` absolute and `base * 2^-6` relative.
    pub fn from_base(base: &Rational) -> Self {
        Precision { abs: base * pow2(-7), rel: base * pow2(-6) }
    }

    /// Base is the largest box width, or 2^-L for a point box.
    pub fn for_box(b: &BoxQ, l: u32) -> Self {
        let w = b.max_width();
        let base = if w.is_zero() { pow2(-(l as i64)) } else { w };
        Precision::from_base(&base)
    }

    fn done(&self, iv: &IntervalQ) -> bool {
        let w = iv.width();
        w <= self.abs && w <= &self.rel * iv.mig()
    }
}

impl IntervalPoly {
    pub fn from_coeffs(coeffs: Vec<IntervalQ>) -> Self {
        let lower = coeffs.iter().map(|c| c.lo.clone()).collect();
        let upper = coeffs.iter().map(|c| c.hi.clone()).collect();
        IntervalPoly { coeffs, lower, upper, source: None }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lower_poly(&self) -> UniPoly {
        UniPoly::from_rationals(&self.lower)
    }

    pub fn upper_poly(&self) -> UniPoly {
        UniPoly::from_rationals(&self.upper)
    }

    /// Coefficients of f(I, -x).
    pub fn mirror(&self) -> IntervalPoly {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() }).collect();
        IntervalPoly::from_coeffs(coeffs)
    }

    pub fn lower_at(&self, x: &Rational) -> Rational {
        horner_q(&self.lower, x)
    }

    pub fn upper_at(&self, x: &Rational) -> Rational {
        horner_q(&self.upper, x)
    }

    fn prod_sign(&self, x: &Rational) -> i8 {
        let a = self.lower_at(x);
        let b = self.upper_at(x);
        sgn(&a) * sgn(&b)
    }

    /// Bound on |x| for roots of every member polynomial; requires a leading
    /// coefficient interval free of zero.
    pub fn cauchy_bound(&self) -> Rational {
        let d = self.degree();
        let lead = self.coeffs[d].mig();
        let m = self.coeffs[..d].iter().map(|c| c.mag()).max().unwrap_or_else(Rational::zero);
        Rational::one() + m / lead
    }
}

fn horner_q(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
}

fn sgn(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Interval polynomial of `f` in `free` over `b` (the entry of `b` at `free` is ignored).
pub fn build(f: &MultiPoly, b: &BoxQ, free: usize) -> Result<IntervalPoly, Error> {
    if f.degree_in(free) < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let coeffs = eval_interval(f, &b.dims, free)?;
    let mut ip = IntervalPoly::from_coeffs(coeffs);
    ip.source = Some((f.clone(), b.clone(), free));
    Ok(ip)
}

/// Root intervals of a rational polynomial on [0, inf), refined by `prec`.
fn nonnegative_root_intervals(c: &[Rational], prec: &Precision) -> Vec<IntervalQ> {
    let p = UniPoly::from_rationals(c);
    if p.degree() < 1 {
        return Vec::new();
    }
    let p = squarefree_part(&p).unwrap();
    isolate_nonnegative(&p).into_iter().map(|iv| refine_until(&p, &iv, |c| prec.done(c))).collect()
}

/// Effective roots on [0, inf) following the bounding-polynomial sign analysis.
pub fn effective_roots_nonnegative(ip: &IntervalPoly, prec: &Precision) -> Vec<IntervalQ> {
    let mut ivs = nonnegative_root_intervals(&ip.lower, prec);
    ivs.extend(nonnegative_root_intervals(&ip.upper, prec));
    ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
    // merge overlapping root intervals into [a_i, b_i]
    let mut merged: Vec<IntervalQ> = Vec::new();
    for iv in ivs {
        match merged.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => merged.push(iv),
        }
    }
    let zero = Rational::zero();
    let p0 = ip.prod_sign(&zero);
    if p0 <= 0 {
        if merged.is_empty() {
            merged.push(IntervalQ::point(zero.clone()));
        } else if !merged[0].contains(&zero) {
            let half = &merged[0].lo / int(2);
            if ip.prod_sign(&half) < 0 {
                merged[0].lo = zero.clone();
            } else {
                merged.insert(0, IntervalQ::point(zero.clone()));
            }
        }
    }
    if merged.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<IntervalQ> = Vec::new();
    let mut cur = merged[0].clone();
    for next in &merged[1..] {
        let c = (&cur.hi + &next.lo) / int(2);
        if ip.prod_sign(&c) > 0 {
            out.push(cur);
            cur = next.clone();
        } else {
            cur.hi = next.hi.clone();
        }
    }
    let cm = &cur.hi + Rational::one();
    if ip.prod_sign(&cm) <= 0 {
        let b = ip.cauchy_bound();
        if b > cur.hi {
            cur.hi = b;
        }
    }
    out.push(cur);
    out
}

/// Sound monotonicity test on a closed interval [a, b] within [0, inf).
fn monotonous_nonnegative(ip: &IntervalPoly, iv: &IntervalQ) -> Option<Orientation> {
    if iv.lo.is_negative() || iv.is_point() {
        return None;
    }
    let no_crit = |c: &[Rational], want: i8| -> bool {
        let p = UniPoly::from_rationals(c);
        let d = p.derivative();
        if d.is_zero() {
            return false;
        }
        let ds = squarefree_part(&d);
        match ds {
            Ok(ds) if ds.degree() >= 1 => roots_in(&ds, iv).is_empty() && d.sign_at(&iv.lo) == want,
            _ => d.sign_at(&iv.lo) == want,
        }
    };
    let fu_a = sgn(&ip.upper_at(&iv.lo));
    let fd_b = sgn(&ip.lower_at(&iv.hi));
    if fu_a <= 0 && fd_b >= 0 && no_crit(&ip.lower, 1) {
        return Some(Orientation::Increasing);
    }
    let fd_a = sgn(&ip.lower_at(&iv.lo));
    let fu_b = sgn(&ip.upper_at(&iv.hi));
    if fd_a >= 0 && fu_b <= 0 && no_crit(&ip.upper, -1) {
        return Some(Orientation::Decreasing);
    }
    None
}

/// Monotonicity of `ip` on `iv`. Intervals on the negative axis are tested through the
/// mirror; the orientation refers to the original variable.
pub fn is_monotonous(ip: &IntervalPoly, iv: &IntervalQ) -> Option<Orientation> {
    if !iv.lo.is_negative() {
        monotonous_nonnegative(ip, iv)
    } else if !iv.hi.is_positive() {
        monotonous_nonnegative(&ip.mirror(), &iv.neg()).map(|o| match o {
            Orientation::Increasing => Orientation::Decreasing,
            Orientation::Decreasing => Orientation::Increasing,
        })
    } else {
        None
    }
}

/// Effective roots over the whole real line: the nonnegative side plus the reflected
/// roots of f(I, -x), merged where they touch.
pub fn effective_real_roots(ip: &IntervalPoly, prec: &Precision) -> Vec<EffectiveRoot> {
    let mut all: Vec<IntervalQ> = effective_roots_nonnegative(&ip.mirror(), prec).iter().map(|i| i.neg()).collect();
    all.reverse();
    all.extend(effective_roots_nonnegative(ip, prec));
    let mut merged: Vec<IntervalQ> = Vec::new();
    for iv in all {
        match merged.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => merged.push(iv),
        }
    }
    merged
        .into_iter()
        .map(|iv| {
            let o = is_monotonous(ip, &iv);
            EffectiveRoot { interval: iv, monotonous: o.is_some(), orientation: o }
        })
        .collect()
}

/// Pairwise intersections of two sorted lists of closed intervals.
pub fn intersect_lists(a: &[IntervalQ], b: &[IntervalQ]) -> Vec<IntervalQ> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            if let Some(z) = x.intersect(y) {
                out.push(z);
            }
        }
    }
    out.sort_by(|p, q| p.lo.cmp(&q.lo));
    out
}

/// What a caller knows about the leading coefficient at the projected root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcStatus {
    Vanishes,
    NonZero,
    Unknown,
}

/// Candidate outcome for one box.
#[derive(Clone, Debug)]
pub enum CandidateOutcome {
    Boxes(Vec<BoxQ>),
    /// Some leading coefficient interval contains 0 at a point where it may not vanish.
    NeedsRefinement,
}

/// Fiber view of one polynomial after dropping leading terms that vanish at the
/// projected root.
#[derive(Clone, Debug)]
pub enum FiberPoly {
    Poly(IntervalPoly),
    /// Nonzero constant on the fiber.
    NoRoots,
    /// Identically zero on the fiber.
    Unconstrained,
}

/// `RefinementExhausted` when a leading interval straddles 0 but the leading
/// coefficient does not vanish at the projected root.
pub fn build_checked(f: &MultiPoly, b: &BoxQ, free: usize, lc_status: &dyn Fn(&MultiPoly) -> LcStatus) -> Result<FiberPoly, Error> {
    let mut f = f.clone();
    loop {
        if f.is_zero() {
            return Ok(FiberPoly::Unconstrained);
        }
        if f.degree_in(free) < 1 {
            return Ok(match lc_status(&f) {
                LcStatus::Vanishes => FiberPoly::Unconstrained,
                _ => FiberPoly::NoRoots,
            });
        }
        let ip = build(&f, b, free)?;
        let lc = &ip.coeffs[ip.degree()];
        if !lc.contains_zero() {
            return Ok(FiberPoly::Poly(ip));
        }
        let lcp = f.lc_in(free);
        match lc_status(&lcp) {
            LcStatus::Vanishes => {
                let d = f.degree_in(free) as u32;
                let mut e = vec![0u32; f.nvars()];
                e[free] = d;
                let term = lcp.mul(&MultiPoly::from_terms(f.nvars(), [(e, BigInt::one())]));
                f = f.sub(&term);
            }
            _ => return Err(Error::RefinementExhausted("leading coefficient straddles zero".into())),
        }
    }
}

/// Real root candidates of a system over a box: intersections of effective roots of
/// every member that involves `free`, extended to boxes.
pub fn candidates(
    system: &[MultiPoly],
    b: &BoxQ,
    free: usize,
    prec: &Precision,
    lc_status: &dyn Fn(&MultiPoly) -> LcStatus,
) -> Result<CandidateOutcome, Error> {
    let mut acc: Option<Vec<IntervalQ>> = None;
    for f in system {
        if !f.uses_var(free) {
            continue;
        }
        let ip = match build_checked(f, b, free, lc_status) {
            Ok(FiberPoly::Poly(ip)) => ip,
            Ok(FiberPoly::NoRoots) => return Ok(CandidateOutcome::Boxes(Vec::new())),
            Ok(FiberPoly::Unconstrained) => continue,
            Err(Error::RefinementExhausted(_)) => return Ok(CandidateOutcome::NeedsRefinement),
            Err(e) => return Err(e),
        };
        let ers: Vec<IntervalQ> = effective_real_roots(&ip, prec).into_iter().map(|e| e.interval).collect();
        acc = Some(match acc {
            None => ers,
            Some(prev) => intersect_lists(&prev, &ers),
        });
        if acc.as_ref().is_some_and(|v| v.is_empty()) {
            break;
        }
    }
    let Some(js) = acc else {
        // every member vanishes on the fiber
        return Err(Error::NotZeroDimensional);
    };
    Ok(CandidateOutcome::Boxes(
        js.into_iter()
            .map(|j| {
                let mut dims = b.dims.clone();
                dims[free] = j;
                BoxQ::new(dims)
            })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::poly::parse_system;

    fn iv(a: Rational, b: Rational) -> IntervalQ {
        IntervalQ::new(a, b)
    }

    #[test]
    fn build_examples() {
        let s = parse_system(&["x^2-x1"], Some(&["x1", "x"])).unwrap();
        let b = BoxQ::new(vec![IntervalQ::from_ints(1, 4), IntervalQ::from_ints(0, 0)]);
        let ip = build(&s.polys[0], &b, 1).unwrap();
        assert_eq!(ip.lower_poly(), UniPoly::from_i64(&[-4, 0, 1]));
        assert_eq!(ip.upper_poly(), UniPoly::from_i64(&[-1, 0, 1]));
        let c = parse_system(&["x1+1"], Some(&["x1", "x"])).unwrap();
        assert!(build(&c.polys[0], &b, 1).is_err());
    }

    #[test]
    fn monotone_root() {
        let s = parse_system(&["x^2-x1", "x1-x^2"], Some(&["x1", "x"])).unwrap();
        let b = BoxQ::new(vec![IntervalQ::from_ints(1, 4), IntervalQ::from_ints(0, 0)]);
        let prec = Precision::for_box(&b, 10);
        let ip = build(&s.polys[0], &b, 1).unwrap();
        let er = effective_real_roots(&ip, &prec);
        assert_eq!(er.len(), 2);
        assert_eq!(er[1].interval, IntervalQ::from_ints(1, 2));
        assert_eq!(er[1].orientation, Some(Orientation::Increasing));
        assert_eq!(er[0].interval, IntervalQ::from_ints(-2, -1));
        let neg = build(&s.polys[1], &b, 1).unwrap();
        assert_eq!(is_monotonous(&neg, &IntervalQ::from_ints(1, 2)), Some(Orientation::Decreasing));
    }

    #[test]
    fn critical_point_blocks_monotonicity() {
        let s = parse_system(&["x^3-3*x-x1"], Some(&["x1", "x"])).unwrap();
        let b = BoxQ::new(vec![IntervalQ::new(rat(-1, 2), rat(1, 2)), IntervalQ::from_ints(0, 0)]);
        let ip = build(&s.polys[0], &b, 1).unwrap();
        assert_eq!(is_monotonous(&ip, &iv(rat(1, 2), int(2))), None);
    }

    #[test]
    fn point_box_is_plain_isolation() {
        let s = parse_system(&["x^2-x1"], Some(&["x1", "x"])).unwrap();
        let b = BoxQ::new(vec![IntervalQ::from_ints(2, 2), IntervalQ::from_ints(0, 0)]);
        let prec = Precision::for_box(&b, 10);
        let ip = build(&s.polys[0], &b, 1).unwrap();
        let er = effective_real_roots(&ip, &prec);
        assert_eq!(er.len(), 2);
        for e in &er {
            let p = UniPoly::from_i64(&[-2, 0, 1]);
            assert!(p.sign_at(&e.interval.lo) * p.sign_at(&e.interval.hi) < 0);
            assert!(e.monotonous);
        }
    }

    #[test]
    fn zero_is_added_when_needed() {
        // x (x - 1) over a point: roots at 0 and 1
        let ip = IntervalPoly::from_coeffs(vec![IntervalQ::from_ints(0, 0), IntervalQ::from_ints(-1, -1), IntervalQ::from_ints(1, 1)]);
        let prec = Precision::from_base(&pow2(-10));
        let er = effective_real_roots(&ip, &prec);
        let pts: Vec<_> = er.iter().map(|e| e.interval.clone()).collect();
        assert_eq!(pts, vec![IntervalQ::from_ints(0, 0), IntervalQ::from_ints(1, 1)]);
        // a straddling constant term puts 0 inside the first effective root
        let ip = IntervalPoly::from_coeffs(vec![
            IntervalQ::new(rat(-1, 100), rat(1, 100)),
            IntervalQ::from_ints(0, 0),
            IntervalQ::from_ints(1, 1),
        ]);
        let er = effective_real_roots(&ip, &prec);
        assert_eq!(er.len(), 1);
        assert!(er[0].interval.contains(&int(0)));
    }

    #[test]
    fn golden_candidates() {
        let s = parse_system(&["x^2+y^2-2", "(x-2*y^2)^2-2"], None).unwrap();
        let fibers = [
            (iv(rat(-1961, 1024), rat(-245, 128)), vec![]),
            (iv(rat(-1449, 1024), rat(-181, 128)), vec![iv(rat(-72905, 8388608), rat(72905, 8388608))]),
            (
                iv(rat(117, 128), rat(937, 1024)),
                vec![iv(rat(-70721, 65536), rat(-141401, 131072)), iv(rat(141401, 131072), rat(70721, 65536))],
            ),
            (iv(rat(181, 128), rat(1449, 1024)), vec![iv(rat(-42621, 2097152), rat(42621, 2097152))]),
        ];
        for (j, want) in fibers {
            let b = BoxQ::new(vec![j.clone(), IntervalQ::from_ints(0, 0)]);
            let prec = Precision::for_box(&b, 10);
            let out = candidates(&s.polys, &b, 1, &prec, &|_| LcStatus::NonZero).unwrap();
            let CandidateOutcome::Boxes(bs) = out else { panic!("refinement requested") };
            let got: Vec<IntervalQ> = bs.iter().map(|b| b.dims[1].clone()).collect();
            assert_eq!(got, want, "fiber {j}");
        }
    }
}
