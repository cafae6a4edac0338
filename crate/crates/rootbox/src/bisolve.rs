//! Bivariate solving: projection, candidates, shear, matching, multiplicities.
//!
//! Variables are (x, y) = (x0, x1); y is eliminated.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::exec::par_map;
use crate::genpos::{
    certification_budget, certify_with, choose_s, integer_shears, nongeneric_union, parametric_resultant, project_sheared,
    ParametricResultant, ShearChoice,
};
use crate::intervalpoly::{build_checked, candidates, is_monotonous, CandidateOutcome, FiberPoly, LcStatus, Precision};
use crate::numeric::{pow2, BoxQ, IntervalQ, IntervalSet, Rational};
use crate::poly::{gcd_uni, is_squarefree, squarefree_decompose, MultiPoly, UniPoly};
use crate::resultant::resultant;
use crate::univsolve::{self, refine, refine_until, roots_in, UniRoot};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Certified,
    Probability1,
}

#[derive(Clone, Debug)]
pub struct BiOptions {
    pub mode: Mode,
    /// R1 roots are isolated to width 2^-precision.
    pub precision: u32,
    /// Monotone fiber confirmation without shearing; honored in probability-1 mode only.
    pub shortcut: bool,
    /// Rounds of candidate refinement when no shear value is available.
    pub refine_rounds: usize,
    /// Halvings of a fiber interval while a leading coefficient straddles zero.
    pub lc_refine_cap: usize,
    /// Halvings allowed when separating fiber candidates on the unsheared fast path.
    pub fast_path_cap: usize,
    /// Skip the unsheared fast path and always compute a second projection.
    pub force_shear: bool,
}

impl Default for BiOptions {
    fn default() -> Self {
        BiOptions {
            mode: Mode::Certified,
            precision: 10,
            shortcut: false,
            refine_rounds: 8,
            lc_refine_cap: 64,
            fast_path_cap: 64,
            force_shear: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot2 {
    pub boxq: BoxQ,
    pub multiplicity: u32,
    pub r1_root: UniRoot,
    pub r2_root: Option<UniRoot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lur2 {
    pub boxes: Vec<BoxQ>,
    pub s: BigInt,
    pub r1: UniPoly,
    pub r2: UniPoly,
    /// Per box: (alpha interval, beta interval).
    pub pairing: Vec<(IntervalQ, IntervalQ)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics2 {
    pub s_attempts: usize,
    pub refinement_rounds: usize,
    pub fast_path: bool,
    pub shortcut_fibers: usize,
    pub uncertified_roots: usize,
}

#[derive(Clone, Debug)]
pub struct SolveResult2 {
    pub roots: Vec<IsolatedRoot2>,
    pub lur: Option<Lur2>,
    pub certified: bool,
    pub diagnostics: Diagnostics2,
    pub r1: UniPoly,
    pub candidates: Vec<BoxQ>,
    pub shear: Option<ShearChoice>,
}

/// One real root of R1 and the candidates above it.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub root: UniRoot,
    pub cands: Vec<BoxQ>,
}

/// Output of the unsheared stage, shared by the pair solver and the many-polynomial path.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub r1: UniPoly,
    pub fibers: Vec<Fiber>,
}

fn as_x(p: &MultiPoly) -> UniPoly {
    p.to_uni(0).expect("polynomial in x only")
}

/// Content of `f` as a polynomial in y, with coefficients in Z[x].
fn content_y(f: &MultiPoly) -> UniPoly {
    f.coeffs_in(1).iter().filter(|c| !c.is_zero()).map(as_x).fold(UniPoly::zero(), |acc, c| {
        if acc.is_zero() {
            c.primitive_part()
        } else {
            gcd_uni(&acc, &c)
        }
    })
}

/// res_y(f, g) with the convention res_y(f, g) = g^deg_y(f) when g is free of y.
pub fn projection(f: &MultiPoly, g: &MultiPoly) -> Result<UniPoly, Error> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: f.nvars().min(g.nvars()) });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (fy, gy) = (f.uses_var(1), g.uses_var(1));
    let r = match (fy, gy) {
        (true, true) => as_x(&resultant(f, g, 1)?),
        (true, false) => as_x(g).pow(f.degree_in(1) as u32),
        (false, true) => as_x(f).pow(g.degree_in(1) as u32),
        (false, false) => {
            // y is free: only an empty common zero set keeps the system finite
            let h = gcd_uni(&as_x(f), &as_x(g));
            return if h.degree() >= 1 { Err(Error::NotZeroDimensional) } else { Ok(UniPoly::one()) };
        }
    };
    if r.is_zero() {
        return Err(Error::NotZeroDimensional);
    }
    if gcd_uni(&content_y(f), &content_y(g)).degree() >= 1 {
        return Err(Error::NotZeroDimensional);
    }
    Ok(r.primitive_part())
}

fn lc_status_at(root: &UniRoot) -> impl Fn(&MultiPoly) -> LcStatus + '_ {
    move |p: &MultiPoly| match p.to_uni(0) {
        None => LcStatus::Unknown,
        Some(u) if u.is_zero() => LcStatus::Vanishes,
        Some(u) => {
            let h = gcd_uni(&u, &root.defining_factor);
            if h.degree() >= 1 && !roots_in(&h, &root.interval).is_empty() {
                LcStatus::Vanishes
            } else {
                LcStatus::NonZero
            }
        }
    }
}

fn halve(r: &UniRoot) -> UniRoot {
    let w = r.interval.width();
    if w.is_zero() {
        return r.clone();
    }
    refine(r, &(w / BigInt::from(2)))
}

fn fiber_box(r: &UniRoot) -> BoxQ {
    BoxQ::new(vec![r.interval.clone(), IntervalQ::point(Rational::zero())])
}

/// Candidates over one fiber, halving the fiber interval while a leading coefficient
/// interval straddles zero.
pub fn fiber_candidates(system: &[MultiPoly], root: &UniRoot, opts: &BiOptions) -> Result<Fiber, Error> {
    let mut r = root.clone();
    for _ in 0..=opts.lc_refine_cap {
        let b = fiber_box(&r);
        let prec = Precision::for_box(&b, opts.precision);
        let out = candidates(system, &b, 1, &prec, &lc_status_at(&r))?;
        match out {
            CandidateOutcome::Boxes(cands) => return Ok(Fiber { root: r, cands }),
            CandidateOutcome::NeedsRefinement => r = halve(&r),
        }
    }
    Err(Error::RefinementExhausted("leading coefficient interval keeps containing zero".into()))
}

/// Refine neighbouring isolating intervals until no two touch.
fn separate(roots: &mut [UniRoot]) {
    for i in 1..roots.len() {
        while roots[i - 1].interval.hi >= roots[i].interval.lo {
            roots[i - 1] = halve(&roots[i - 1]);
            roots[i] = halve(&roots[i]);
        }
    }
}

/// Projection, isolation of R1 and candidates on every fiber.
pub fn prepare(f: &MultiPoly, g: &MultiPoly, opts: &BiOptions) -> Result<Prepared, Error> {
    let r1 = projection(f, g)?;
    let mut roots = univsolve::isolate(&r1, Some(&pow2(-(opts.precision as i64))))?;
    separate(&mut roots);
    let system = [f.clone(), g.clone()];
    let fibers = par_map(&roots, |r| fiber_candidates(&system, r, opts)).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Prepared { f: f.clone(), g: g.clone(), r1, fibers })
}

impl Prepared {
    pub fn all_candidates(&self) -> Vec<BoxQ> {
        self.fibers.iter().flat_map(|fb| fb.cands.iter().cloned()).collect()
    }

    fn refine_fibers(&mut self, opts: &BiOptions) -> Result<(), Error> {
        let system = [self.f.clone(), self.g.clone()];
        let next: Vec<Fiber> =
            par_map(
                &self.fibers,
                |fb| {
                    if fb.cands.is_empty() {
                        Ok(fb.clone())
                    } else {
                        fiber_candidates(&system, &halve(&fb.root), opts)
                    }
                },
            )
            .into_iter()
            .collect::<Result<_, _>>()?;
        self.fibers = next;
        Ok(())
    }

    /// Shear values s for which some pair of candidates overlaps after x - s y.
    pub fn forbidden_shears(&self) -> IntervalSet {
        nongeneric_union(&self.all_candidates()).negate()
    }

    fn npairs(&self) -> usize {
        let n = self.all_candidates().len();
        n * n.saturating_sub(1) / 2
    }
}

/// Generic position without shearing: R1 squarefree and the leading coefficients in y coprime.
pub fn unsheared_generic(f: &MultiPoly, g: &MultiPoly, r1: &UniPoly) -> bool {
    let lf = as_x(&f.lc_in(1));
    let lg = as_x(&g.lc_in(1));
    is_squarefree(r1) && gcd_uni(&lf, &lg).degree() < 1
}

/// Point y-interval when the root sits on the x-axis.
fn axis_snap_unsheared(f: &MultiPoly, g: &MultiPoly, root: &UniRoot, k: &IntervalQ) -> IntervalQ {
    if !k.contains_zero() || k.is_point() {
        return k.clone();
    }
    let zero = Rational::zero();
    let f0 = f.substitute(1, &MultiPoly::zero(2));
    let g0 = g.substitute(1, &MultiPoly::zero(2));
    let h = gcd_uni(&gcd_uni(&as_x(&f0), &as_x(&g0)), &root.defining_factor);
    if h.degree() >= 1 && !roots_in(&h, &root.interval).is_empty() {
        IntervalQ::point(zero)
    } else {
        k.clone()
    }
}

/// One root per fiber: shrink the fiber interval until a single candidate remains.
fn solve_unsheared(prep: &Prepared, opts: &BiOptions) -> Option<Vec<IsolatedRoot2>> {
    let system = [prep.f.clone(), prep.g.clone()];
    let per_fiber: Vec<Option<Option<IsolatedRoot2>>> = par_map(&prep.fibers, |fb| {
        let mut fb = fb.clone();
        let mut rounds = 0;
        while fb.cands.len() > 1 {
            if rounds == opts.fast_path_cap {
                return None;
            }
            fb = fiber_candidates(&system, &halve(&fb.root), opts).ok()?;
            rounds += 1;
        }
        Some(fb.cands.first().map(|c| {
            let k = axis_snap_unsheared(&prep.f, &prep.g, &fb.root, &c.dims[1]);
            IsolatedRoot2 {
                boxq: BoxQ::new(vec![fb.root.interval.clone(), k]),
                multiplicity: fb.root.multiplicity,
                r1_root: fb.root.clone(),
                r2_root: None,
            }
        }))
    });
    let mut out = Vec::new();
    for r in per_fiber {
        out.extend(r?);
    }
    Some(out)
}

/// `(J - I) / s`.
fn back_project(j: &IntervalQ, i: &IntervalQ, s: &BigInt) -> IntervalQ {
    let d = j.sub(i);
    let inv = Rational::new(BigInt::one(), s.clone());
    d.scale(&inv)
}

/// Real roots of gcd(R1, R2); each gives a system root on the x-axis.
pub fn axis_roots(r1: &UniPoly, r2: &UniPoly) -> Result<Vec<UniRoot>, Error> {
    let t = gcd_uni(r1, r2);
    univsolve::isolate(&t, None)
}

fn on_axis(alpha: &UniRoot, beta_iv: &IntervalQ, beta_factor: &UniPoly) -> bool {
    let h = gcd_uni(beta_factor, &alpha.defining_factor);
    if h.degree() < 1 {
        return false;
    }
    match alpha.interval.intersect(beta_iv) {
        Some(w) => !roots_in(&h, &w).is_empty(),
        None => false,
    }
}

fn confirm(alpha: &UniRoot, k: &IntervalQ, beta: IntervalQ, factor: &UniPoly, power: u32) -> IsolatedRoot2 {
    let k = if k.contains_zero() && on_axis(alpha, &beta, factor) { IntervalQ::point(Rational::zero()) } else { k.clone() };
    IsolatedRoot2 {
        boxq: BoxQ::new(vec![alpha.interval.clone(), k]),
        multiplicity: power,
        r1_root: alpha.clone(),
        r2_root: Some(UniRoot { interval: beta, multiplicity: power, defining_factor: factor.clone() }),
    }
}

const SPLIT_CAP: usize = 400;

/// Roots of R2 (given by its squarefree decomposition) in each J - sK decide the
/// candidates; candidates holding several roots are split.
pub fn match_candidates(factors: &[(UniPoly, u32)], fibers: &[Fiber], s: &BigInt) -> Result<Vec<IsolatedRoot2>, Error> {
    let neg_s = Rational::from_integer(-s);
    let work: Vec<(usize, usize)> = fibers.iter().enumerate().flat_map(|(i, fb)| (0..fb.cands.len()).map(move |j| (i, j))).collect();
    let per = par_map(&work, |&(i, j)| -> Result<Vec<IsolatedRoot2>, Error> {
        let alpha = &fibers[i].root;
        let cand = &fibers[i].cands[j];
        let l = project_sheared(cand, &neg_s);
        let mut hits: Vec<(IntervalQ, &UniPoly, u32)> = Vec::new();
        for (fac, k) in factors {
            for iv in roots_in(fac, &l) {
                hits.push((iv, fac, *k));
            }
        }
        hits.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
        let k = &cand.dims[1];
        match hits.len() {
            0 => Ok(Vec::new()),
            1 => {
                let (iv, fac, pw) = hits.pop().unwrap();
                Ok(vec![confirm(alpha, k, iv, fac, pw)])
            }
            _ => split(alpha, k, hits, s),
        }
    });
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

fn split(alpha: &UniRoot, k: &IntervalQ, mut hits: Vec<(IntervalQ, &UniPoly, u32)>, s: &BigInt) -> Result<Vec<IsolatedRoot2>, Error> {
    let mut a = alpha.clone();
    for _ in 0..SPLIT_CAP {
        let w = a.interval.width();
        hits.sort_by(|p, q| p.0.lo.cmp(&q.0.lo));
        let ok = hits.windows(2).all(|p| &p[1].0.lo - &p[0].0.hi > w);
        if ok {
            let mut out = Vec::new();
            for (iv, fac, pw) in &hits {
                let ki = back_project(&a.interval, iv, s);
                if let Some(ki) = ki.intersect(k) {
                    out.push(confirm(&a, &ki, iv.clone(), fac, *pw));
                }
            }
            return Ok(out);
        }
        let target = if w.is_zero() {
            hits.iter().map(|h| h.0.width()).max().unwrap() / BigInt::from(2)
        } else {
            a = halve(&a);
            a.interval.width()
        };
        for h in hits.iter_mut() {
            if h.0.width() > target {
                h.0 = refine_until(h.1, &h.0, |c| c.width() <= target);
            }
        }
    }
    Err(Error::RefinementExhausted("roots of the sheared projection stay too close".into()))
}

/// Fibers with a single candidate on which f or g is monotonous.
pub fn monotonic_shortcut(f: &MultiPoly, g: &MultiPoly, fibers: &[Fiber]) -> Vec<Option<IsolatedRoot2>> {
    par_map(fibers, |fb| {
        if fb.cands.len() != 1 {
            return None;
        }
        let cand = &fb.cands[0];
        let lc = lc_status_at(&fb.root);
        let mono = cand.dims[1].is_point()
            || [f, g].iter().any(|p| match build_checked(p, cand, 1, &lc) {
                Ok(FiberPoly::Poly(ip)) => is_monotonous(&ip, &cand.dims[1]).is_some(),
                _ => false,
            });
        mono.then(|| IsolatedRoot2 { boxq: cand.clone(), multiplicity: fb.root.multiplicity, r1_root: fb.root.clone(), r2_root: None })
    })
}

/// Second projection res_y(f(x + s y, y), g(x + s y, y)), sign-normalized.
pub fn sheared_projection(f: &MultiPoly, g: &MultiPoly, s: &BigInt) -> Result<UniPoly, Error> {
    let r = resultant(&f.shear(s, 0), &g.shear(s, 0), 1)?;
    if r.is_zero() {
        return Err(Error::NotZeroDimensional);
    }
    Ok(as_x(&r).sign_normalized())
}

/// Pick a shear: refine candidates until some integer keeps every J - sK apart.
fn pick_shear(prep: &mut Prepared, opts: &BiOptions, diag: &mut Diagnostics2) -> Result<ShearChoice, Error> {
    loop {
        match choose_s(&prep.forbidden_shears(), prep.npairs()) {
            Ok(c) => return Ok(c),
            Err(Error::RefineAndRetry) if diag.refinement_rounds < opts.refine_rounds => {
                diag.refinement_rounds += 1;
                prep.refine_fibers(opts)?;
            }
            Err(Error::RefineAndRetry) => {
                return Err(Error::RefinementExhausted("no admissible shear value".into()));
            }
            Err(e) => return Err(e),
        }
    }
}

/// Certified shear: the first integer outside `forbidden` passing the squarefree test.
pub fn certified_shear(prs: &[&ParametricResultant], forbidden: &IntervalSet, budget: usize) -> Result<(ShearChoice, Vec<UniPoly>), Error> {
    for (n, s) in integer_shears(forbidden).take(budget).enumerate() {
        let tests: Vec<(bool, UniPoly)> = prs.iter().map(|pr| certify_with(pr, &s)).collect();
        if tests.iter().all(|t| t.0) {
            let choice = ShearChoice { s, certified: true, attempts: n + 1, nongeneric_set: forbidden.clone() };
            return Ok((choice, tests.into_iter().map(|t| t.1).collect()));
        }
    }
    Err(Error::CertificationExhausted(budget))
}

/// Real roots of {f, g} with multiplicities.
pub fn solve_bivariate(f: &MultiPoly, g: &MultiPoly, opts: &BiOptions) -> Result<SolveResult2, Error> {
    let mut prep = prepare(f, g, opts)?;
    let candidates = prep.all_candidates();
    let mut diag = Diagnostics2::default();

    if opts.mode == Mode::Certified && !opts.force_shear && unsheared_generic(f, g, &prep.r1) {
        if let Some(roots) = solve_unsheared(&prep, opts) {
            diag.fast_path = true;
            return Ok(SolveResult2 { roots, lur: None, certified: true, diagnostics: diag, r1: prep.r1, candidates, shear: None });
        }
    }

    let mut done: Vec<Option<IsolatedRoot2>> = vec![None; prep.fibers.len()];
    if opts.mode == Mode::Probability1 && opts.shortcut {
        done = monotonic_shortcut(f, g, &prep.fibers);
        diag.shortcut_fibers = done.iter().filter(|d| d.is_some()).count();
        diag.uncertified_roots += diag.shortcut_fibers;
    }
    let rest: Vec<Fiber> = prep.fibers.iter().zip(&done).filter(|(_, d)| d.is_none()).map(|(fb, _)| fb.clone()).collect();
    let shortcut_roots: Vec<(usize, IsolatedRoot2)> = done.iter().enumerate().filter_map(|(i, d)| d.clone().map(|r| (i, r))).collect();

    if rest.iter().all(|fb| fb.cands.is_empty()) {
        let roots = shortcut_roots.into_iter().map(|(_, r)| r).collect();
        let certified = opts.mode == Mode::Certified;
        return Ok(SolveResult2 { roots, lur: None, certified, diagnostics: diag, r1: prep.r1, candidates, shear: None });
    }

    let mut sub = Prepared { f: f.clone(), g: g.clone(), r1: prep.r1.clone(), fibers: rest };
    let first = pick_shear(&mut sub, opts, &mut diag)?;
    let (choice, r2) = match opts.mode {
        Mode::Certified => {
            let pr = parametric_resultant(f, g)?;
            let (c, mut r2) = certified_shear(&[&pr], &first.nongeneric_set, certification_budget(f, g))?;
            (c, r2.pop().unwrap())
        }
        Mode::Probability1 => {
            let r2 = sheared_projection(f, g, &first.s)?;
            (ShearChoice { attempts: 1, ..first }, r2)
        }
    };
    diag.s_attempts = choice.attempts;
    let dec = squarefree_decompose(&r2)?;
    let matched = match_candidates(&dec.factors, &sub.fibers, &choice.s)?;

    // fiber order: merge shortcut roots back by alpha interval
    let mut roots: Vec<IsolatedRoot2> = shortcut_roots.into_iter().map(|(_, r)| r).collect();
    roots.extend(matched);
    roots.sort_by(|a, b| a.boxq.dims[0].lo.cmp(&b.boxq.dims[0].lo).then_with(|| a.boxq.dims[1].lo.cmp(&b.boxq.dims[1].lo)));
    prep.fibers = sub.fibers;

    let lur = Lur2 {
        boxes: roots.iter().map(|r| r.boxq.clone()).collect(),
        s: choice.s.clone(),
        r1: prep.r1.clone(),
        r2: r2.clone(),
        pairing: roots
            .iter()
            .map(|r| {
                (r.r1_root.interval.clone(), r.r2_root.as_ref().map(|b| b.interval.clone()).unwrap_or_else(|| r.r1_root.interval.clone()))
            })
            .collect(),
    };
    let certified = opts.mode == Mode::Certified && choice.certified;
    Ok(SolveResult2 { roots, lur: Some(lur), certified, diagnostics: diag, r1: prep.r1, candidates, shear: Some(choice) })
}

/// Shrink a root box to width at most `target` in x and, when a second projection
/// root is present, in y through (J - I) / s.
pub fn refine_root(root: &IsolatedRoot2, s: Option<&BigInt>, target: &Rational) -> IsolatedRoot2 {
    let a = refine(&root.r1_root, target);
    let k = &root.boxq.dims[1];
    let (k, b) = match (&root.r2_root, s) {
        (Some(b), Some(s)) if !k.is_point() => {
            let b = refine(b, target);
            let kn = back_project(&a.interval, &b.interval, s).intersect(k).unwrap_or_else(|| k.clone());
            (kn, Some(b))
        }
        _ => (k.clone(), root.r2_root.clone()),
    };
    IsolatedRoot2 { boxq: BoxQ::new(vec![a.interval.clone(), k]), multiplicity: root.multiplicity, r1_root: a, r2_root: b }
}

/// Like [`refine_root`], but when the y-interval cannot shrink through a second
/// projection the fiber candidates of {f, g} are recomputed over the refined x-interval.
pub fn refine_root_full(
    f: &MultiPoly,
    g: &MultiPoly,
    root: &IsolatedRoot2,
    s: Option<&BigInt>,
    target: &Rational,
    opts: &BiOptions,
) -> IsolatedRoot2 {
    let mut r = refine_root(root, s, target);
    let system = [f.clone(), g.clone()];
    let mut t = target.clone();
    for _ in 0..64 {
        let k = &r.boxq.dims[1];
        if k.is_point() || &k.width() <= target {
            break;
        }
        t /= BigInt::from(2);
        let a = refine(&r.r1_root, &t);
        let Ok(fb) = fiber_candidates(&system, &a, opts) else { break };
        let hits: Vec<IntervalQ> = fb.cands.iter().filter_map(|c| c.dims[1].intersect(k)).collect();
        if hits.len() == 1 {
            r.boxq = BoxQ::new(vec![fb.root.interval.clone(), hits[0].clone()]);
            r.r1_root = fb.root;
        }
    }
    r
}
