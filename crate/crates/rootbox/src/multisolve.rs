//! Solver for systems in any number of variables: random combinations, a
//! resultant projection cascade and one shear plus verification per level.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bisolve::{refine_root_full, solve_bivariate, BiOptions, IsolatedRoot2, Mode, SolveResult2};
use crate::error::Error;
use crate::exec::par_map;
use crate::genpos::{choose_s, integer_shears, nongeneric_pair};
use crate::intervalpoly::{build_checked, effective_real_roots, intersect_lists, FiberPoly, LcStatus, Precision};
use crate::numeric::{pow2, BoxQ, ExtInterval, IntervalQ, IntervalSet, Rational};
use crate::poly::{gcd_uni, MultiPoly, UniPoly};
use crate::resultant::resultant;
use crate::univsolve::{self, UniRoot};

#[derive(Clone, Debug)]
pub struct MultiOptions {
    pub mode: Mode,
    pub precision: u32,
    pub shortcut: bool,
    pub seed: u64,
    /// Combination draws before giving up.
    pub redraws: usize,
    /// Refinement rounds while looking for an admissible shear.
    pub refine_rounds: usize,
    /// Rounds a candidate may go unmatched before it is discarded.
    pub empty_rounds: usize,
    /// Cap on matching rounds per level.
    pub match_rounds: usize,
}

impl Default for MultiOptions {
    fn default() -> Self {
        MultiOptions {
            mode: Mode::Certified,
            precision: 10,
            shortcut: false,
            seed: 0,
            redraws: 16,
            refine_rounds: 8,
            empty_rounds: 4,
            match_rounds: 64,
        }
    }
}

impl MultiOptions {
    fn bi(&self) -> BiOptions {
        BiOptions { mode: self.mode, precision: self.precision, shortcut: self.shortcut, ..BiOptions::default() }
    }
}

/// Integer n x m matrix combining m input polynomials into n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl CombinationMatrix {
    /// `[I | 0]`.
    pub fn identity(n: usize, m: usize) -> Self {
        CombinationMatrix { rows: (0..n).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect() }
    }

    /// Entries uniform in {-3, ..., 3} without 0.
    pub fn random<R: Rng>(rng: &mut R, n: usize, m: usize) -> Self {
        const VALS: [i64; 6] = [-3, -2, -1, 1, 2, 3];
        CombinationMatrix { rows: (0..n).map(|_| (0..m).map(|_| VALS[rng.gen_range(0..6)]).collect()).collect() }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, |r| r.len()))
    }

    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> =
            self.rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()).collect();
        let (n, m) = self.shape();
        let mut rank = 0;
        for col in 0..m {
            let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..n {
                if r != rank && !a[r][col].is_zero() {
                    let q = &a[r][col] / &a[rank][col];
                    for c in col..m {
                        let t = &q * &a[rank][c];
                        a[r][c] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn apply(&self, polys: &[MultiPoly]) -> Vec<MultiPoly> {
        let nv = polys[0].nvars();
        self.rows
            .iter()
            .map(|row| {
                row.iter().zip(polys).fold(
                    MultiPoly::zero(nv),
                    |acc, (&t, p)| {
                        if t == 0 {
                            acc
                        } else {
                            acc.add(&p.scale(&BigInt::from(t)))
                        }
                    },
                )
            })
            .collect()
    }
}

/// Identity first, then random full-rank draws.
fn draw<R: Rng>(rng: &mut R, n: usize, m: usize, attempt: usize) -> CombinationMatrix {
    if attempt == 0 {
        return CombinationMatrix::identity(n, m);
    }
    loop {
        let t = CombinationMatrix::random(rng, n, m);
        if t.rank() == n {
            return t;
        }
    }
}

/// Eliminate `var` against the first member that involves it.
fn project_combined(fp: &[MultiPoly], var: usize) -> Result<Vec<MultiPoly>, Error> {
    let pivot = fp.iter().position(|p| p.uses_var(var)).ok_or(Error::NotZeroDimensional)?;
    let mut out = Vec::with_capacity(fp.len() - 1);
    for (i, p) in fp.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let g = if p.uses_var(var) { resultant(&fp[pivot], p, var)? } else { p.clone() };
        if g.is_zero() {
            return Err(Error::DegenerateCombination);
        }
        out.push(g.primitive_part().remove_var(var));
    }
    Ok(out)
}

/// `g_i = res_var(f'_1, f'_i)` for `f' = t sigma`, content stripped, `var` removed.
pub fn project_system(sigma: &[MultiPoly], t: &CombinationMatrix, var: usize) -> Result<Vec<MultiPoly>, Error> {
    if t.shape() != (sigma.len(), sigma.len()) || t.rank() != sigma.len() {
        return Err(Error::DegenerateCombination);
    }
    project_combined(&t.apply(sigma), var)
}

/// How a root was obtained; used to refine it.
#[derive(Clone, Debug)]
pub enum RootRep {
    Uni(UniRoot),
    Bi { root: IsolatedRoot2, s: Option<BigInt>, f: MultiPoly, g: MultiPoly, opts: BiOptions },
    Lifted { base: Box<RootN>, verify: Box<RootN>, s: BigInt },
}

#[derive(Clone, Debug)]
pub struct RootN {
    pub boxq: BoxQ,
    /// Known for one and two variables only.
    pub multiplicity: Option<u32>,
    pub rep: RootRep,
}

fn back_project(b: &IntervalQ, v: &IntervalQ, s: &BigInt) -> IntervalQ {
    b.sub(v).scale(&Rational::new(BigInt::one(), s.clone()))
}

impl RootN {
    fn from_bi(root: IsolatedRoot2, s: Option<BigInt>, f: &MultiPoly, g: &MultiPoly, opts: &BiOptions) -> RootN {
        RootN {
            boxq: root.boxq.clone(),
            multiplicity: Some(root.multiplicity),
            rep: RootRep::Bi { root, s, f: f.clone(), g: g.clone(), opts: opts.clone() },
        }
    }

    /// Same root, box width at most `target` where the representation allows it.
    pub fn refine(&self, target: &Rational) -> RootN {
        match &self.rep {
            RootRep::Uni(u) => {
                let u = univsolve::refine(u, target);
                RootN { boxq: BoxQ::new(vec![u.interval.clone()]), multiplicity: self.multiplicity, rep: RootRep::Uni(u) }
            }
            RootRep::Bi { root, s, f, g, opts } => {
                let r = refine_root_full(f, g, root, s.as_ref(), target, opts);
                RootN {
                    boxq: r.boxq.clone(),
                    multiplicity: self.multiplicity,
                    rep: RootRep::Bi { root: r, s: s.clone(), f: f.clone(), g: g.clone(), opts: opts.clone() },
                }
            }
            RootRep::Lifted { base, verify, s } => {
                let half = target / BigInt::from(2);
                let base = base.refine(&half);
                let verify = verify.refine(&half);
                let n = self.boxq.arity();
                let k = &self.boxq.dims[n - 1];
                let k = if k.is_point() {
                    k.clone()
                } else {
                    back_project(&base.boxq.dims[n - 2], &verify.boxq.dims[n - 2], s).intersect(k).unwrap_or_else(|| k.clone())
                };
                RootN {
                    boxq: base.boxq.push(k),
                    multiplicity: None,
                    rep: RootRep::Lifted { base: Box::new(base), verify: Box::new(verify), s: s.clone() },
                }
            }
        }
    }

    fn halve(&self) -> RootN {
        let w = self.boxq.max_width();
        if w.is_zero() {
            return self.clone();
        }
        self.refine(&(w / BigInt::from(2)))
    }
}

/// Nested linear univariate representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedLur {
    /// `T_t` has a root at the t-th combined coordinate of each solution.
    pub polys: Vec<UniPoly>,
    pub shears: Vec<BigInt>,
    pub boxes: Vec<BoxQ>,
    /// `I_1 - s_1 (I_2 - s_2 (... - s_{n-1} I_n))` per box.
    pub combined: Vec<IntervalQ>,
}

/// `I_1 - s_1 I_2 + s_1 s_2 I_3 - ...` over the first `upto` coordinates.
pub fn combined_interval(b: &BoxQ, shears: &[BigInt], upto: usize) -> IntervalQ {
    let mut acc = b.dims[upto - 1].clone();
    for j in (0..upto - 1).rev() {
        acc = b.dims[j].sub(&acc.scale(&Rational::from_integer(shears[j].clone())));
    }
    acc
}

impl NestedLur {
    /// Fails with `DisjointnessViolated` when two combined intervals meet.
    pub fn from_boxes(polys: Vec<UniPoly>, shears: Vec<BigInt>, boxes: Vec<BoxQ>) -> Result<NestedLur, Error> {
        let n = polys.len();
        let combined: Vec<IntervalQ> = boxes.iter().map(|b| combined_interval(b, &shears, n)).collect();
        let mut sorted: Vec<&IntervalQ> = combined.iter().collect();
        sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
        if sorted.windows(2).any(|w| w[0].hi >= w[1].lo) {
            return Err(Error::DisjointnessViolated);
        }
        Ok(NestedLur { polys, shears, boxes, combined })
    }

    /// Coordinates from the combined values `alpha_1, ..., alpha_n`.
    pub fn coordinates(&self, alphas: &[Rational]) -> Vec<Rational> {
        let mut out = vec![alphas[0].clone()];
        let mut prod = BigInt::one();
        for t in 1..alphas.len() {
            prod *= &self.shears[t - 1];
            // alpha_t = alpha_{t-1} +- prod * x_t with alternating sign
            let sign = if t % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            out.push((&alphas[t] - &alphas[t - 1]) / Rational::from_integer(sign * &prod));
        }
        out
    }
}

/// Nested LUR of `roots`, refining them until the combined intervals are disjoint.
pub fn nested_lur(polys: Vec<UniPoly>, shears: Vec<BigInt>, roots: &mut [RootN]) -> Result<NestedLur, Error> {
    for _ in 0..48 {
        match NestedLur::from_boxes(polys.clone(), shears.clone(), roots.iter().map(|r| r.boxq.clone()).collect()) {
            Ok(l) => return Ok(l),
            Err(Error::DisjointnessViolated) => {
                for r in roots.iter_mut() {
                    *r = r.halve();
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::DisjointnessViolated)
}

/// Nested LUR for the final roots. Above two variables the last shear may
/// make distinct solutions collide, so other small integers are tried.
fn top_lur(polys: Vec<UniPoly>, shears: Vec<BigInt>, fp: &[MultiPoly], roots: &mut [RootN]) -> Result<NestedLur, Error> {
    let n = shears.len();
    if n < 2 {
        return nested_lur(polys, shears, roots);
    }
    let first = shears[n - 1].clone();
    let none = IntervalSet::empty();
    let tries = std::iter::once(first.clone()).chain(integer_shears(&none).filter(|v| *v != first).take(8));
    for c in tries {
        let mut sh = shears[..n - 1].to_vec();
        sh.push(c.clone());
        let t = if c == first { polys[n].clone() } else { chain_eliminant(fp, &sh)? };
        if univsolve::isolate(&t, None)?.len() < roots.len() {
            continue;
        }
        let mut p = polys[..n].to_vec();
        p.push(t);
        let mut trial = roots.to_vec();
        if let Ok(l) = nested_lur(p, sh, &mut trial) {
            roots.clone_from_slice(&trial);
            return Ok(l);
        }
    }
    Err(Error::DisjointnessViolated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelInfo {
    pub vars: usize,
    pub combination: CombinationMatrix,
    /// System one variable down.
    pub projection: Vec<MultiPoly>,
    pub shear: BigInt,
    pub candidates: usize,
    pub discarded: usize,
    pub rounds: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagnosticsN {
    pub redraws: usize,
    pub levels: Vec<LevelInfo>,
    pub uncertified_roots: usize,
    /// Roots removed by the final containment check.
    pub filtered: usize,
}

/// Systems Σ_n, ..., Σ_1 with the combinations and shears used between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCascade {
    pub systems: Vec<Vec<MultiPoly>>,
    pub combinations: Vec<CombinationMatrix>,
    pub shears: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct SolveResultN {
    pub nvars: usize,
    pub roots: Vec<RootN>,
    pub certified: bool,
    pub lur: Option<NestedLur>,
    pub cascade: ProjectionCascade,
    pub diagnostics: DiagnosticsN,
    /// Full bivariate result when the input was a pair in two variables.
    pub bivariate: Option<SolveResult2>,
}

struct Level {
    roots: Vec<RootN>,
    lur: Option<(Vec<UniPoly>, Vec<BigInt>)>,
    certified: bool,
    infos: Vec<LevelInfo>,
    bottom: Vec<MultiPoly>,
}

fn univariate(all: &[MultiPoly], opts: &MultiOptions) -> Result<Level, Error> {
    let us: Vec<UniPoly> = all.iter().filter(|p| !p.is_zero()).map(|p| p.to_uni(0).unwrap()).collect();
    let Some(first) = us.first() else { return Err(Error::NotZeroDimensional) };
    let g = us[1..].iter().fold(first.clone(), |acc, u| gcd_uni(&acc, u));
    let roots = univsolve::isolate(&g, Some(&pow2(-(opts.precision as i64))))?;
    let roots = roots
        .into_iter()
        .map(|u| RootN { boxq: BoxQ::new(vec![u.interval.clone()]), multiplicity: Some(u.multiplicity), rep: RootRep::Uni(u) })
        .collect();
    Ok(Level { roots, lur: Some((vec![g], Vec::new())), certified: true, infos: Vec::new(), bottom: all.to_vec() })
}

fn bivariate(fp: &[MultiPoly], opts: &MultiOptions) -> Result<(Level, SolveResult2), Error> {
    let bo = BiOptions { force_shear: true, ..opts.bi() };
    let res = solve_bivariate(&fp[0], &fp[1], &bo)?;
    let s = res.shear.as_ref().map(|c| c.s.clone());
    let roots: Vec<RootN> = res.roots.iter().map(|r| RootN::from_bi(r.clone(), s.clone(), &fp[0], &fp[1], &bo)).collect();
    let lur = match &res.lur {
        Some(l) => Some((vec![l.r1.clone(), l.r2.clone()], vec![l.s.clone()])),
        None if roots.is_empty() => Some((vec![res.r1.clone()], Vec::new())),
        None => None,
    };
    let level = Level { roots, lur, certified: res.certified, infos: Vec::new(), bottom: fp.to_vec() };
    Ok((level, res))
}

/// Square system `fp` (k polynomials, k variables); `all` supplies candidate constraints.
fn solve_square(fp: &[MultiPoly], all: &[MultiPoly], opts: &MultiOptions) -> Result<Level, Error> {
    match fp.len() {
        0 => Err(Error::NotZeroDimensional),
        1 => univariate(all, opts),
        2 => bivariate(fp, opts).map(|l| l.0),
        _ => lift(fp, all, opts),
    }
}

/// Candidate last coordinates over a lower box; `None` asks for refinement.
fn level_candidates(all: &[MultiPoly], b: &BoxQ, l: u32) -> Result<Option<Vec<IntervalQ>>, Error> {
    let bx = b.push(IntervalQ::point(Rational::zero()));
    let free = b.arity();
    let prec = Precision::for_box(&bx, l);
    let status = |p: &MultiPoly| {
        if p.is_zero() {
            LcStatus::Vanishes
        } else if p.eval_interval(&bx.dims).contains_zero() {
            LcStatus::Unknown
        } else {
            LcStatus::NonZero
        }
    };
    let mut acc: Option<Vec<IntervalQ>> = None;
    let mut skipped = false;
    for f in all {
        if !f.uses_var(free) {
            if !f.eval_interval(&bx.dims).contains_zero() {
                return Ok(Some(Vec::new()));
            }
            continue;
        }
        let ip = match build_checked(f, &bx, free, &status) {
            Ok(FiberPoly::Poly(ip)) => ip,
            Ok(FiberPoly::NoRoots) => return Ok(Some(Vec::new())),
            Ok(FiberPoly::Unconstrained) => continue,
            Err(Error::RefinementExhausted(_)) => {
                skipped = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        let ers: Vec<IntervalQ> = effective_real_roots(&ip, &prec).into_iter().map(|e| e.interval).collect();
        acc = Some(match acc {
            None => ers,
            Some(prev) => intersect_lists(&prev, &ers),
        });
        if acc.as_ref().is_some_and(|v| v.is_empty()) {
            return Ok(acc);
        }
    }
    match acc {
        Some(v) => Ok(Some(v)),
        None if skipped => Ok(None),
        None => Err(Error::NotZeroDimensional),
    }
}

struct Lower {
    root: RootN,
    cands: Vec<IntervalQ>,
    strikes: usize,
}

fn refresh(lw: &mut Lower, all: &[MultiPoly], l: u32) -> Result<(), Error> {
    for _ in 0..64 {
        if let Some(c) = level_candidates(all, &lw.root.boxq, l)? {
            lw.cands = c;
            return Ok(());
        }
        lw.root = lw.root.halve();
    }
    Err(Error::RefinementExhausted("leading coefficients keep straddling zero".into()))
}

fn group_key(b: &BoxQ) -> BoxQ {
    BoxQ::new(b.dims[..b.arity() - 1].to_vec())
}

/// Shear values s for which two candidates sharing lower coordinates overlap after
/// `x_{k-1} - s x_k`, negated so it applies to `x_{k-1} + s x_k`.
fn forbidden(lows: &[Lower]) -> (IntervalSet, usize) {
    let items: Vec<(BoxQ, BoxQ)> = lows
        .iter()
        .flat_map(|lw| {
            let n = lw.root.boxq.arity();
            lw.cands.iter().map(move |k| (group_key(&lw.root.boxq), BoxQ::new(vec![lw.root.boxq.dims[n - 1].clone(), k.clone()])))
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i].0.arity() == 0 || items[i].0.intersects(&items[j].0) {
                pairs.push((i, j));
            }
        }
    }
    let sets = par_map(&pairs, |&(i, j)| nongeneric_pair(&items[i].1, &items[j].1));
    let all: Vec<ExtInterval> = sets.into_iter().flat_map(|s| s.intervals).collect();
    (IntervalSet::from_intervals(all).negate(), pairs.len())
}

fn verification_box(b: &BoxQ, k: &IntervalQ, s: &BigInt) -> BoxQ {
    let n = b.arity();
    let mut dims = b.dims[..n - 1].to_vec();
    dims.push(b.dims[n - 1].sub(&k.scale(&Rational::from_integer(s.clone()))));
    BoxQ::new(dims)
}

fn pairwise_disjoint(v: &[IntervalQ]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !v[i].intersects(&v[j])))
}

/// Univariate eliminant of `sys` after the chained shears: its roots include
/// `x_1 - s_1 (x_2 - s_2 (... - s_{k-1} x_k))` at every solution.
pub fn chain_eliminant(sys: &[MultiPoly], shears: &[BigInt]) -> Result<UniPoly, Error> {
    let mut p = sys.to_vec();
    for (i, s) in shears.iter().enumerate().rev() {
        p = p.iter().map(|f| f.shear(s, i)).collect();
    }
    while p.len() > 1 {
        p = project_combined(&p, p.len() - 1)?;
    }
    let u = p[0].to_uni(0).ok_or(Error::DegenerateCombination)?;
    if u.is_zero() {
        return Err(Error::DegenerateCombination);
    }
    Ok(u.primitive_part().sign_normalized())
}

/// One level up: solve the projection, lift with candidates, shear and verify.
fn lift(fp: &[MultiPoly], all: &[MultiPoly], opts: &MultiOptions) -> Result<Level, Error> {
    let k = fp.len();
    let last = k - 1;
    let lower_sys = project_combined(fp, last)?;
    let lower = solve_square(&lower_sys, &lower_sys, opts)?;

    let mut lows: Vec<Lower> = Vec::with_capacity(lower.roots.len());
    for r in lower.roots {
        let mut lw = Lower { root: r, cands: Vec::new(), strikes: 0 };
        refresh(&mut lw, all, opts.precision)?;
        lows.push(lw);
    }
    let ncands: usize = lows.iter().map(|l| l.cands.len()).sum();

    // shear
    let mut rounds = 0;
    let (set, first) = loop {
        let (set, npairs) = forbidden(&lows);
        match choose_s(&set, npairs) {
            Ok(c) => break (set, c.s),
            Err(Error::RefineAndRetry) if rounds < opts.refine_rounds => {
                rounds += 1;
                for lw in lows.iter_mut().filter(|l| !l.cands.is_empty()) {
                    lw.root = lw.root.halve();
                    refresh(lw, all, opts.precision)?;
                }
            }
            Err(Error::RefineAndRetry) => return Err(Error::RefinementExhausted("no admissible shear value".into())),
            Err(e) => return Err(e),
        }
    };
    let order: Vec<BigInt> = std::iter::once(first.clone()).chain(integer_shears(&set).filter(|v| *v != first).take(8)).collect();
    let mut verified = None;
    let mut last_err = Error::DegenerateCombination;
    for s in order {
        let sheared: Vec<MultiPoly> = fp.iter().map(|p| p.shear(&s, last - 1)).collect();
        let attempt = project_combined(&sheared, last).and_then(|v| solve_square(&v, &v, opts));
        match attempt {
            Ok(v) => {
                verified = Some((s, v));
                break;
            }
            Err(e @ (Error::DegenerateCombination | Error::NotZeroDimensional)) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    let (s, verify) = verified.ok_or(last_err)?;
    let mut vs = verify.roots;

    // matching
    let mut discarded = 0;
    let mut done = false;
    let mut out = Vec::new();
    for _ in 0..opts.match_rounds {
        rounds += 1;
        let hits: Vec<Vec<Vec<usize>>> = lows
            .iter()
            .map(|lw| {
                lw.cands
                    .iter()
                    .map(|kk| {
                        let p = verification_box(&lw.root.boxq, kk, &s);
                        (0..vs.len()).filter(|&v| vs[v].boxq.intersects(&p)).collect()
                    })
                    .collect()
            })
            .collect();
        let mut claims = vec![0usize; vs.len()];
        for h in hits.iter().flatten().flatten() {
            claims[*h] += 1;
        }
        let mut bad_low = vec![false; lows.len()];
        let mut bad_v = vec![false; vs.len()];
        let mut drop: Vec<(usize, usize)> = Vec::new();
        for (i, per) in hits.iter().enumerate() {
            let mut empty = false;
            for (j, h) in per.iter().enumerate() {
                if h.is_empty() {
                    if lows[i].strikes >= opts.empty_rounds {
                        drop.push((i, j));
                    } else {
                        empty = true;
                        bad_low[i] = true;
                    }
                    continue;
                }
                for &v in h {
                    if claims[v] > 1 {
                        bad_low[i] = true;
                        bad_v[v] = true;
                    }
                }
                if h.len() > 1 {
                    let b = &lows[i].root.boxq.dims[last - 1];
                    let parts: Vec<Option<IntervalQ>> =
                        h.iter().map(|&v| back_project(b, &vs[v].boxq.dims[last - 1], &s).intersect(&lows[i].cands[j])).collect();
                    let flat: Vec<IntervalQ> = parts.iter().flatten().cloned().collect();
                    if flat.len() < parts.len() || !pairwise_disjoint(&flat) {
                        bad_low[i] = true;
                        for &v in h {
                            bad_v[v] = true;
                        }
                    }
                }
            }
            if empty {
                lows[i].strikes += 1;
            }
        }
        if !bad_low.iter().any(|&b| b) && !bad_v.iter().any(|&b| b) {
            for (i, per) in hits.iter().enumerate() {
                for (j, h) in per.iter().enumerate() {
                    if drop.contains(&(i, j)) {
                        discarded += 1;
                        continue;
                    }
                    let lw = &lows[i];
                    for &v in h {
                        let kk = &lw.cands[j];
                        let kn = if kk.is_point() {
                            kk.clone()
                        } else {
                            back_project(&lw.root.boxq.dims[last - 1], &vs[v].boxq.dims[last - 1], &s)
                                .intersect(kk)
                                .expect("hit implies overlap")
                        };
                        out.push(RootN {
                            boxq: lw.root.boxq.push(kn),
                            multiplicity: None,
                            rep: RootRep::Lifted { base: Box::new(lw.root.clone()), verify: Box::new(vs[v].clone()), s: s.clone() },
                        });
                    }
                }
            }
            done = true;
            break;
        }
        for (i, lw) in lows.iter_mut().enumerate() {
            if bad_low[i] {
                lw.root = lw.root.halve();
                refresh(lw, all, opts.precision)?;
            }
        }
        for (v, r) in vs.iter_mut().enumerate() {
            if bad_v[v] {
                *r = r.halve();
            }
        }
    }
    if !done {
        return Err(Error::RefinementExhausted("candidates and verification roots stay ambiguous".into()));
    }
    out.sort_by(|a, b| {
        a.boxq.dims.iter().zip(&b.boxq.dims).map(|(x, y)| x.lo.cmp(&y.lo)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });

    let lur = lower.lur.as_ref().and_then(|(lp, ls)| {
        let mut shears = ls.clone();
        shears.push(s.clone());
        let t = chain_eliminant(fp, &shears).ok()?;
        let mut polys = lp.clone();
        polys.push(t);
        Some((polys, shears))
    });
    let mut infos = vec![LevelInfo {
        vars: k,
        combination: CombinationMatrix::identity(k, k),
        projection: lower_sys,
        shear: s,
        candidates: ncands,
        discarded,
        rounds,
    }];
    infos.extend(lower.infos);
    Ok(Level { roots: out, lur, certified: false, infos, bottom: lower.bottom })
}

/// Drop boxes over which some input polynomial provably has no zero.
fn containment_filter(roots: Vec<RootN>, all: &[MultiPoly]) -> (Vec<RootN>, usize) {
    let checked = par_map(&roots, |r| {
        let mut r = r.clone();
        for _ in 0..4 {
            if all.iter().any(|p| !p.eval_interval(&r.boxq.dims).contains_zero()) {
                return None;
            }
            let w = r.boxq.max_width();
            if w.is_zero() {
                break;
            }
            r = r.refine(&(w / BigInt::from(256)));
        }
        Some(r)
    });
    let before = checked.len();
    let kept: Vec<RootN> = checked.into_iter().flatten().collect();
    let removed = before - kept.len();
    (kept, removed)
}

/// Real roots of a zero-dimensional system given as polynomials over the same variables.
pub fn solve(polys: &[MultiPoly], opts: &MultiOptions) -> Result<SolveResultN, Error> {
    let Some(p0) = polys.first() else { return Err(Error::NotZeroDimensional) };
    let n = p0.nvars();
    if polys.iter().any(|p| p.nvars() != n) {
        return Err(Error::ArityMismatch { expected: n, got: polys.iter().map(|p| p.nvars()).find(|&v| v != n).unwrap() });
    }
    let m = polys.len();
    if m < n {
        return Err(Error::NotZeroDimensional);
    }
    if n == 2 && m == 2 {
        let bo = opts.bi();
        let res = solve_bivariate(&polys[0], &polys[1], &bo)?;
        let s = res.shear.as_ref().map(|c| c.s.clone());
        let mut roots: Vec<RootN> = res.roots.iter().map(|r| RootN::from_bi(r.clone(), s.clone(), &polys[0], &polys[1], &bo)).collect();
        let lur = match &res.lur {
            Some(l) => Some(nested_lur(vec![l.r1.clone(), l.r2.clone()], vec![l.s.clone()], &mut roots)?),
            None => None,
        };
        let diagnostics = DiagnosticsN { uncertified_roots: res.diagnostics.uncertified_roots, ..Default::default() };
        let cascade = ProjectionCascade {
            systems: vec![polys.to_vec(), vec![MultiPoly::from_uni(1, 0, &res.r1)]],
            combinations: vec![CombinationMatrix::identity(2, 2)],
            shears: s.into_iter().collect(),
        };
        return Ok(SolveResultN { nvars: 2, roots, certified: res.certified, lur, cascade, diagnostics, bivariate: Some(res) });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut diag = DiagnosticsN::default();
    for attempt in 0..opts.redraws.max(1) {
        let t = if n == 1 { CombinationMatrix::identity(1, m) } else { draw(&mut rng, n, m, attempt) };
        let fp = t.apply(polys);
        if n > 1 && fp.iter().any(|p| p.is_zero()) {
            diag.redraws += 1;
            continue;
        }
        let level = match solve_square(&fp, polys, opts) {
            Ok(l) => l,
            Err(Error::DegenerateCombination | Error::NotZeroDimensional) if n > 1 => {
                diag.redraws += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let exact = n <= 2 && m == n;
        let (mut roots, filtered) = if exact { (level.roots, 0) } else { containment_filter(level.roots, polys) };
        diag.filtered = filtered;
        let certified = level.certified && m == n && n <= 2;
        if !certified {
            diag.uncertified_roots = roots.len();
        }
        let mut infos = level.infos;
        if let Some(top) = infos.first_mut() {
            top.combination = t.clone();
        }
        let lur = match level.lur {
            Some((p, s)) => Some(top_lur(p, s, &fp, &mut roots)?),
            None => None,
        };
        let mut systems = vec![polys.to_vec()];
        systems.extend(infos.iter().map(|i| i.projection.clone()));
        if n == 2 {
            systems.push(level.bottom.clone());
        }
        let cascade = ProjectionCascade {
            systems,
            combinations: std::iter::once(t).chain(infos.iter().skip(1).map(|i| i.combination.clone())).collect(),
            shears: lur.as_ref().map(|l| l.shears.clone()).unwrap_or_default(),
        };
        diag.levels = infos;
        return Ok(SolveResultN { nvars: n, roots, certified, lur, cascade, diagnostics: diag, bivariate: None });
    }
    Err(Error::NotZeroDimensionalOrUnlucky)
}
