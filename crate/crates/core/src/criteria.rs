//! Non-smoothness certificates and the case-analysis driver.
//!
//! A certificate is a pair (Omega, H) with Omega inside the extremal orbit
//! and H its span. The verdict is decided by exact counting: the span must
//! have codimension one, the weighted excision count must beat the root
//! excision count by more than six, pairwise differences of Omega must avoid
//! the roots, and in the orthogonal case the same for pairwise sums together
//! with the two-lambda condition.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::excision::{self, Hyperplane};
use crate::linalg;
use crate::rootsys::{Family, RootSystem, Weight};
use crate::weightset::{self, WeightSystem};
use crate::weyl::dominant_form;
use crate::{Error, Result};

/// Eigenvalue multiplicities (for 0, +1, -1) of a semisimple operator on an
/// n-dimensional module, used for exterior-power rank counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankProfile {
    n: u64,
    k: u64,
    zero: u64,
    plus: u64,
    minus: u64,
}

impl RankProfile {
    pub fn new(n: u64, k: u64, eigen_mults: (u64, u64, u64)) -> Result<RankProfile> {
        let (zero, plus, minus) = eigen_mults;
        if zero + plus + minus != n {
            return Err(Error::Unsupported(
                "eigenvalue multiplicities must sum to n".to_string(),
            ));
        }
        // Keeps every binomial in the rank formula inside u128.
        if n > 120 {
            return Err(Error::Unsupported(
                "rank profiles are limited to 120 lines".to_string(),
            ));
        }
        if k > n {
            return Err(Error::ExteriorPower { n, k });
        }
        Ok(RankProfile {
            n,
            k,
            zero,
            plus,
            minus,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn eigen_mults(&self) -> (u64, u64, u64) {
        (self.zero, self.plus, self.minus)
    }
}

/// Rank of the operator induced on the k-th exterior power by a semisimple
/// operator with eigenvalues 0, +1, -1: the number of k-subsets of the
/// eigenvalue multiset with nonzero sum. The zeroth power carries the
/// identity and has rank one.
pub fn exterior_rank(p: &RankProfile) -> u64 {
    if p.k == 0 {
        return 1;
    }
    let total = linalg::binomial(p.n, p.k);
    let mut zero_sum: u128 = 0;
    // A subset sums to zero exactly when it picks as many +1 as -1.
    let mut b = 0;
    while 2 * b <= p.k {
        let from_zero = p.k - 2 * b;
        zero_sum += linalg::binomial(p.zero, from_zero)
            * linalg::binomial(p.plus, b)
            * linalg::binomial(p.minus, b);
        b += 1;
    }
    (total - zero_sum) as u64
}

/// Does `2 lambda` avoid the roots and all pairwise sums of roots?
pub fn check_two_lambda(rs: &RootSystem, lambda: &Weight) -> bool {
    let double = lambda.times(2);
    if rs.is_root(&double) {
        return false;
    }
    !rs.roots()
        .iter()
        .any(|alpha| rs.is_root(&double.minus(alpha)))
}

/// Outcome of the excision inequality: whether
/// `delta * ||support \ H|| <= |Delta \ H| + 6` holds, with both sides.
/// A certificate needs this inequality to FAIL.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmsOutcome {
    pub holds: bool,
    pub lhs: u64,
    pub rhs: u64,
}

pub fn check_bms(ws: &WeightSystem<'_>, h: &Hyperplane) -> BmsOutcome {
    let off = excision::weights_off(ws, h);
    let lhs = ws.delta() as u64 * off.multiset_count;
    let rhs = excision::roots_off(ws.root_system(), h) + 6;
    BmsOutcome {
        holds: lhs <= rhs,
        lhs,
        rhs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidReason {
    /// The span of Omega does not have codimension one.
    SpanRank { actual: usize },
    /// A pair of Omega elements differs by a root.
    OmegaDiffInRoots { first: Weight, second: Weight },
    /// A pair of Omega elements sums to a root (orthogonal case only).
    OmegaSumInRoots { first: Weight, second: Weight },
    /// `2 lambda` lies in the roots or in a sum of two roots.
    TwoLambdaClause,
    /// The strict counting inequality failed.
    Inequality { lhs: u64, rhs: u64 },
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::SpanRank { actual } => write!(f, "rank (span has rank {actual})"),
            InvalidReason::OmegaDiffInRoots { first, second } => {
                write!(f, "omega-difference-in-Delta ({first}) - ({second})")
            }
            InvalidReason::OmegaSumInRoots { first, second } => {
                write!(f, "omega-sum-in-Delta ({first}) + ({second})")
            }
            InvalidReason::TwoLambdaClause => write!(f, "two-lambda-in-Delta-or-sum"),
            InvalidReason::Inequality { lhs, rhs } => {
                write!(f, "inequality ({lhs} <= {rhs})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(InvalidReason),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Per-clause outcomes. The sum and two-lambda clauses apply only in the
/// orthogonal case and stay `None` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateFlags {
    pub codim_one: bool,
    pub inequality: bool,
    pub omega_diff: bool,
    pub omega_sum: Option<bool>,
    pub two_lambda: Option<bool>,
}

/// A fully evaluated witness (Omega, H) with every count needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lambda: Weight,
    pub delta: u32,
    pub omega: Vec<Weight>,
    /// Primitive integral normal of the span, when it is a hyperplane.
    pub normal: Option<Vec<i64>>,
    /// Distinct support weights off H.
    pub weights_off_set: u64,
    /// Support weights off H counted with multiplicity.
    pub weights_off_multiset: u64,
    /// Extremal-orbit elements off H.
    pub orbit_off: u64,
    pub roots_off: u64,
    /// `delta * weights_off_multiset`.
    pub lhs: u64,
    /// `roots_off + 6`.
    pub rhs: u64,
    pub flags: CertificateFlags,
    pub verdict: Verdict,
}

/// Evaluates every clause of the certificate for `omega` inside the extremal
/// orbit of `ws`. Subsets that leave the orbit are input errors; everything
/// else (wrong rank, failed counts) is an invalid certificate, not an error.
pub fn check_nosm(ws: &WeightSystem<'_>, omega: &[Weight]) -> Result<Certificate> {
    let rs = ws.root_system();
    let mut omega: Vec<Weight> = omega.to_vec();
    omega.sort();
    omega.dedup();
    for w in &omega {
        if ws.lambda_orbit().binary_search(w).is_err() {
            return Err(Error::NotInOrbit(w.to_string()));
        }
    }
    let delta = ws.delta();

    let mut first_failure: Option<InvalidReason> = None;
    let record = |reason: InvalidReason, slot: &mut Option<InvalidReason>| {
        if slot.is_none() {
            *slot = Some(reason);
        }
    };

    // Pairwise difference clause.
    let mut omega_diff = true;
    'diff: for (i, a) in omega.iter().enumerate() {
        for b in &omega[i + 1..] {
            if rs.is_root(&a.minus(b)) {
                omega_diff = false;
                record(
                    InvalidReason::OmegaDiffInRoots {
                        first: a.clone(),
                        second: b.clone(),
                    },
                    &mut first_failure,
                );
                break 'diff;
            }
        }
    }

    // Orthogonal-case clauses.
    let (omega_sum, two_lambda) = if delta == 1 {
        let mut sum_ok = true;
        'sum: for (i, a) in omega.iter().enumerate() {
            for b in &omega[i..] {
                if rs.is_root(&a.plus(b)) {
                    sum_ok = false;
                    record(
                        InvalidReason::OmegaSumInRoots {
                            first: a.clone(),
                            second: b.clone(),
                        },
                        &mut first_failure,
                    );
                    break 'sum;
                }
            }
        }
        let tl_ok = check_two_lambda(rs, ws.lambda());
        if !tl_ok {
            record(InvalidReason::TwoLambdaClause, &mut first_failure);
        }
        (Some(sum_ok), Some(tl_ok))
    } else {
        (None, None)
    };

    // Span clause and the counting inequality.
    let span = excision::span_hyperplane(&omega);
    let (codim_one, normal, counts) = match span {
        Ok(h) => {
            let off = excision::weights_off(ws, &h);
            let orbit_off = excision::count_off(ws.lambda_orbit(), &h);
            let roots_off = excision::roots_off(rs, &h);
            (
                true,
                Some(h.normal().to_vec()),
                Some((off, orbit_off, roots_off)),
            )
        }
        Err(Error::SpanRank { actual, .. }) => {
            record(InvalidReason::SpanRank { actual }, &mut first_failure);
            (false, None, None)
        }
        Err(Error::ZeroVector) => {
            record(InvalidReason::SpanRank { actual: 0 }, &mut first_failure);
            (false, None, None)
        }
        Err(e) => return Err(e),
    };

    let (weights_off_set, weights_off_multiset, orbit_off, roots_off, lhs, rhs, inequality) =
        match counts {
            Some((off, orbit_off, roots_off)) => {
                let lhs = delta as u64 * off.multiset_count;
                let rhs = roots_off + 6;
                let strict = lhs > rhs;
                if !strict {
                    record(InvalidReason::Inequality { lhs, rhs }, &mut first_failure);
                }
                (
                    off.set_count,
                    off.multiset_count,
                    orbit_off,
                    roots_off,
                    lhs,
                    rhs,
                    strict,
                )
            }
            None => (0, 0, 0, 0, 0, 0, false),
        };

    let flags = CertificateFlags {
        codim_one,
        inequality,
        omega_diff,
        omega_sum,
        two_lambda,
    };
    let verdict = match first_failure {
        None => Verdict::Valid,
        Some(reason) => Verdict::Invalid(reason),
    };
    Ok(Certificate {
        lambda: ws.lambda().clone(),
        delta,
        omega,
        normal,
        weights_off_set,
        weights_off_multiset,
        orbit_off,
        roots_off,
        lhs,
        rhs,
        flags,
        verdict,
    })
}

/// A rank-based obstruction: the operator rank on the module exceeds the
/// bound that smoothness would force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankContradiction {
    pub n: u64,
    pub k: u64,
    pub eigen_mults: (u64, u64, u64),
    /// Rank of the induced operator on the k-th exterior power.
    pub module_rank: u64,
    /// The smoothness bound the rank must not exceed.
    pub bound: u64,
    pub route: &'static str,
    pub contradicts: bool,
}

/// Eigenvalue multiplicities of the coroot of `alpha` acting on the
/// tautological module (dimension 2r + 1 for B, 2r for C and D).
fn tautological_profile(rs: &RootSystem, alpha: &Weight) -> Result<(u64, u64, u64, u64)> {
    let r = rs.rank();
    let mut mults = (0u64, 0u64, 0u64);
    let mut bump = |eigen: i64| -> Result<()> {
        match eigen {
            0 => mults.0 += 1,
            1 => mults.1 += 1,
            -1 => mults.2 += 1,
            _ => {
                return Err(Error::Unsupported(
                    "tautological eigenvalues must lie in {0, +1, -1}".to_string(),
                ))
            }
        }
        Ok(())
    };
    for i in 0..r {
        let eps = Weight::epsilon(r, i);
        let up = crate::rootsys::pairing(&eps, alpha)?;
        if !up.is_integer() {
            return Err(Error::Unsupported(
                "tautological eigenvalues must be integers".to_string(),
            ));
        }
        let e = up.to_integer() as i64;
        bump(e)?;
        bump(-e)?;
    }
    let n = match rs.family() {
        Family::B => {
            bump(0)?;
            2 * r as u64 + 1
        }
        Family::C | Family::D => 2 * r as u64,
    };
    Ok((n, mults.0, mults.1, mults.2))
}

/// The two rank arguments of the case analysis: the exterior cube of the
/// tautological module against the exterior square (B_3, lambda = 2 phi_3)
/// or against the halved excision bound (C_3, lambda = phi_3).
pub fn rank_contradiction(
    rs: &RootSystem,
    lambda: &Weight,
    alpha: &Weight,
) -> Result<RankContradiction> {
    if !rs.is_root(alpha) {
        return Err(Error::NotARoot);
    }
    let lambda = dominant_form(rs.family(), lambda);
    let (n, n0, np, nm) = tautological_profile(rs, alpha)?;
    let cube = exterior_rank(&RankProfile::new(n, 3, (n0, np, nm))?);
    match (rs.family(), rs.rank()) {
        (Family::B, 3) if lambda == rs.fundamental_weights()[2].times(2) => {
            let square = exterior_rank(&RankProfile::new(n, 2, (n0, np, nm))?);
            // The exterior square is the adjoint module, so its rank must
            // agree with the root-excision count.
            let h = Hyperplane::from_normal(crate::rootsys::coroot(alpha)?.coords2().to_vec())?;
            debug_assert_eq!(square, excision::roots_off(rs, &h));
            Ok(RankContradiction {
                n,
                k: 3,
                eigen_mults: (n0, np, nm),
                module_rank: cube,
                bound: square + 6,
                route: "exterior-square",
                contradicts: cube > square + 6,
            })
        }
        (Family::C, 3) if lambda == rs.fundamental_weights()[2] => {
            let h = Hyperplane::from_normal(crate::rootsys::coroot(alpha)?.coords2().to_vec())?;
            let delta = weightset::delta_indicator(rs, &lambda)? as u64;
            let bound = (excision::roots_off(rs, &h) + 6) / delta;
            Ok(RankContradiction {
                n,
                k: 3,
                eigen_mults: (n0, np, nm),
                module_rank: cube,
                bound,
                route: "excision-bound",
                contradicts: cube > bound,
            })
        }
        _ => Err(Error::Unsupported(
            "rank contradiction is tabulated only for B3 with 2 phi_3 and C3 with phi_3"
                .to_string(),
        )),
    }
}

/// Flips the sign of the last coordinate: the outer symmetry of a D-type
/// system, used to canonicalize weights before template lookup.
fn flip_last(w: &Weight) -> Weight {
    let mut c2 = w.coords2().to_vec();
    let last = c2.len() - 1;
    c2[last] = -c2[last];
    Weight::from_coords2(c2)
}

/// The explicit witness subsets from the case analysis, parametrized by
/// family, rank, and highest weight. Returns `None` when no template covers
/// the weight.
pub fn template_omega(rs: &RootSystem, lambda: &Weight) -> Option<Vec<Weight>> {
    let r = rs.rank();
    let fw = rs.fundamental_weights();
    let lambda = dominant_form(rs.family(), lambda);
    let eps = |i: usize| Weight::epsilon(r, i);
    match rs.family() {
        Family::B | Family::C => {
            let stretch: i64 = match rs.family() {
                Family::B => 2,
                _ => 3,
            };
            let last = &fw[r - 1];
            for (c, base) in [
                (0i64, fw[0].plus(last)),
                (1, fw[1].plus(last)),
                (2, fw[0].plus(&fw[1]).plus(last)),
            ] {
                if r > 2 && lambda == base {
                    let omega = (1..r)
                        .map(|j| eps(0).times(c).minus(&eps(j).times(stretch)).plus(last))
                        .collect();
                    return Some(omega);
                }
            }
            match rs.family() {
                Family::B if r == 6 && lambda == fw[5] => {
                    let phi = &fw[5];
                    Some(vec![
                        phi.negated(),
                        phi.minus(&eps(0)).minus(&eps(1)),
                        phi.minus(&eps(2)).minus(&eps(3)),
                        phi.minus(&eps(4)),
                        phi.minus(&eps(1)).minus(&eps(2)).minus(&eps(5)),
                    ])
                }
                Family::B if r == 4 && lambda == fw[2] => {
                    Some((0..3).map(|j| fw[2].minus(&eps(j).times(2))).collect())
                }
                Family::C if (r == 4 || r == 5) && lambda == fw[r - 2] => Some(
                    (0..r - 1)
                        .map(|j| fw[r - 2].minus(&eps(j).times(2)))
                        .collect(),
                ),
                _ => None,
            }
        }
        Family::D => {
            // Canonicalize across the outer symmetry.
            let flipped = dominant_form(Family::D, &flip_last(&lambda));
            if flipped < lambda {
                return template_omega_d(rs, &flipped).map(|omega| {
                    let mut mapped: Vec<Weight> = omega.iter().map(flip_last).collect();
                    mapped.sort();
                    mapped
                });
            }
            template_omega_d(rs, &lambda)
        }
    }
}

fn template_omega_d(rs: &RootSystem, lambda: &Weight) -> Option<Vec<Weight>> {
    let r = rs.rank();
    let fw = rs.fundamental_weights();
    let eps = |i: usize| Weight::epsilon(r, i);
    if lambda == &fw[0].plus(&fw[r - 2]) {
        return Some((1..r).map(|j| fw[r - 1].minus(&eps(j).times(2))).collect());
    }
    if r == 7 && lambda == &fw[5] {
        let phi = &fw[6];
        let shell = [
            eps(0).plus(&eps(1)).plus(&eps(4)),
            eps(2).plus(&eps(3)).plus(&eps(4)),
            eps(0).plus(&eps(3)).plus(&eps(5)),
            eps(1).plus(&eps(2)).plus(&eps(5)),
            eps(4).plus(&eps(5)).plus(&eps(6)),
        ];
        let mut omega = vec![phi.negated()];
        omega.extend(shell.iter().map(|s| phi.minus(s)));
        return Some(omega);
    }
    None
}

/// The tabulated polar modules at these weights, shipped as a static list
/// (no derivation): the adjoint module of every family; the vector module
/// and its traceless symmetric square for the orthogonal families; the
/// vector and second fundamental modules for the symplectic family plus its
/// fourth fundamental at rank 4; and the (half-)spin modules at D5 and D8.
/// Orbit spaces of polar modules are half-spaces, hence never manifolds.
pub fn listed_polar(rs: &RootSystem, lambda: &Weight) -> bool {
    let r = rs.rank();
    let mut lambda = dominant_form(rs.family(), lambda);
    if rs.family() == Family::D {
        // The list is symmetric under the outer flip.
        let flipped = dominant_form(Family::D, &flip_last(&lambda));
        if flipped < lambda {
            lambda = flipped;
        }
    }
    let coeffs = rs.fw_coefficients(&lambda);
    let fw: Vec<i64> = coeffs
        .iter()
        .map(|c| if c.is_integer() { c.to_integer() as i64 } else { -1 })
        .collect();
    let unit = |i: usize, scale: i64| {
        fw.iter()
            .enumerate()
            .all(|(j, &c)| if j == i { c == scale } else { c == 0 })
    };
    match rs.family() {
        Family::B => {
            let adjoint = if r == 2 { unit(1, 2) } else { unit(1, 1) };
            adjoint || unit(0, 1) || unit(0, 2) || (r == 2 && unit(1, 1))
        }
        Family::C => {
            unit(0, 2) || unit(1, 1) || unit(0, 1) || (r == 4 && unit(3, 1))
        }
        Family::D => {
            unit(1, 1)
                || unit(0, 1)
                || unit(0, 2)
                || (r == 5 && unit(3, 1))
                || (r == 8 && unit(6, 1))
        }
    }
}

const DEFAULT_SCAN_BUDGET: u64 = 2_000_000;

/// Controls for the scan driver.
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Upper bound on the fundamental-coefficient sum of scanned weights.
    pub coeff_sum_bound: u32,
    /// Cap on the witness subset size; defaults to rank + 1.
    pub omega_max: Option<usize>,
    /// Node budget for the exhaustive search; zero makes every weight
    /// inconclusive.
    pub budget: u64,
    /// Whether the explicit witness templates are tried first.
    pub use_templates: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            coeff_sum_bound: 2,
            omega_max: None,
            budget: DEFAULT_SCAN_BUDGET,
            use_templates: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    Certificate(Certificate),
    RankBound(RankContradiction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanVerdict {
    Obstructed(Obstruction),
    Survivor,
    Inconclusive,
}

impl ScanVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ScanVerdict::Obstructed(_) => "OBSTRUCTED",
            ScanVerdict::Survivor => "SURVIVOR",
            ScanVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    pub fw: Vec<i64>,
    pub lambda: Weight,
    pub verdict: ScanVerdict,
    /// How the verdict was reached.
    pub mechanism: &'static str,
    /// Whether the weight is on the static polar list (such modules have
    /// half-space orbit spaces regardless of the scan outcome).
    pub listed_polar: bool,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub family: Family,
    pub rank: usize,
    pub coeff_sum_bound: u32,
    pub entries: Vec<ScanEntry>,
}

/// All nonzero dominant weights with fundamental-coefficient sum at most
/// `bound`, ordered by (sum, coefficients).
pub fn enumerate_dominant(rs: &RootSystem, bound: u32) -> Vec<(Vec<i64>, Weight)> {
    let r = rs.rank();
    let mut out = Vec::new();
    for total in 1..=bound as i64 {
        let mut fw = vec![0i64; r];
        fn place(
            rs: &RootSystem,
            fw: &mut Vec<i64>,
            pos: usize,
            left: i64,
            out: &mut Vec<(Vec<i64>, Weight)>,
        ) {
            if pos + 1 == fw.len() {
                fw[pos] = left;
                out.push((fw.clone(), rs.weight_from_fw(fw)));
                fw[pos] = 0;
                return;
            }
            for c in (0..=left).rev() {
                fw[pos] = c;
                place(rs, fw, pos + 1, left - c, out);
                fw[pos] = 0;
            }
        }
        place(rs, &mut fw, 0, total, &mut out);
    }
    // (sum, lexicographic) order: rebuild lexicographically within each sum.
    out.sort_by(|a, b| {
        let sa: i64 = a.0.iter().sum();
        let sb: i64 = b.0.iter().sum();
        sa.cmp(&sb).then_with(|| a.0.cmp(&b.0))
    });
    out
}

/// Decides one dominant weight: explicit templates and rank bounds first,
/// then a bounded exhaustive search over witness subsets of the orbit.
pub fn scan_lambda(rs: &RootSystem, fw: &[i64], opts: &ScanOptions) -> Result<ScanEntry> {
    let lambda = rs.weight_from_fw(fw);
    let listed_polar = listed_polar(rs, &lambda);
    let entry = |verdict: ScanVerdict, mechanism: &'static str| ScanEntry {
        fw: fw.to_vec(),
        lambda: lambda.clone(),
        verdict,
        mechanism,
        listed_polar,
    };
    if opts.budget == 0 {
        return Ok(entry(ScanVerdict::Inconclusive, "zero-budget"));
    }

    let ws = weightset::weight_system(rs, &lambda)?;

    if opts.use_templates {
        // The two rank-argument weights.
        let is_rank_case = (rs.family() == Family::B
            && rs.rank() == 3
            && lambda == rs.fundamental_weights()[2].times(2))
            || (rs.family() == Family::C
                && rs.rank() == 3
                && lambda == rs.fundamental_weights()[2]);
        if is_rank_case {
            let alpha = rs.simple_roots()[0].clone();
            let rc = rank_contradiction(rs, &lambda, &alpha)?;
            if rc.contradicts {
                return Ok(entry(
                    ScanVerdict::Obstructed(Obstruction::RankBound(rc)),
                    "rank-bound",
                ));
            }
        }
        if let Some(omega) = template_omega(rs, &lambda) {
            let cert = check_nosm(&ws, &omega)?;
            if cert.verdict.is_valid() {
                return Ok(entry(
                    ScanVerdict::Obstructed(Obstruction::Certificate(cert)),
                    "template",
                ));
            }
        }
    }

    // In the orthogonal case a failed two-lambda clause rules out every
    // witness, so the weight survives outright.
    if ws.delta() == 1 && !check_two_lambda(rs, &lambda) {
        return Ok(entry(ScanVerdict::Survivor, "two-lambda-precluded"));
    }

    let orbit = ws.lambda_orbit();
    let r = rs.rank();
    if orbit.len() < r - 1 {
        return Ok(entry(ScanVerdict::Survivor, "orbit-too-small"));
    }

    let ctx = SearchContext::new(&ws);
    let cap = opts.omega_max.unwrap_or(r + 1).min(orbit.len());
    let mut budget = opts.budget;
    for size in (r - 1)..=cap {
        match ctx.search(size, &mut budget)? {
            SearchOutcome::Found(cert) => {
                return Ok(entry(
                    ScanVerdict::Obstructed(Obstruction::Certificate(cert)),
                    "search",
                ));
            }
            SearchOutcome::Exhausted => {}
            SearchOutcome::BudgetSpent => {
                return Ok(entry(ScanVerdict::Inconclusive, "budget-exhausted"));
            }
        }
    }
    Ok(entry(ScanVerdict::Survivor, "search-exhausted"))
}

enum SearchOutcome {
    Found(Certificate),
    Exhausted,
    BudgetSpent,
}

/// Precomputed admissibility for the witness search over one orbit: a bitset
/// of allowed partners per element (difference off the roots, and in the
/// orthogonal case sum off the roots too).
struct SearchContext<'w, 'a> {
    ws: &'w WeightSystem<'a>,
    words: usize,
    /// Row i: bitset of j admissible next to i.
    pair_ok: Vec<u64>,
    /// Bitset of elements admissible on their own.
    self_ok: Vec<u64>,
}

impl<'w, 'a> SearchContext<'w, 'a> {
    fn new(ws: &'w WeightSystem<'a>) -> Self {
        let rs = ws.root_system();
        let orbit = ws.lambda_orbit();
        let orthogonal = ws.delta() == 1;
        let n = orbit.len();
        let words = n.div_ceil(64);
        let mut self_ok = vec![0u64; words];
        for (i, w) in orbit.iter().enumerate() {
            if !(orthogonal && rs.is_root(&w.times(2))) {
                self_ok[i / 64] |= 1 << (i % 64);
            }
        }
        let mut pair_ok = vec![0u64; n * words];
        for i in 0..n {
            for j in i + 1..n {
                let diff_bad = rs.is_root(&orbit[i].minus(&orbit[j]));
                let sum_bad = orthogonal && rs.is_root(&orbit[i].plus(&orbit[j]));
                if !diff_bad && !sum_bad {
                    pair_ok[i * words + j / 64] |= 1 << (j % 64);
                    pair_ok[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        SearchContext {
            ws,
            words,
            pair_ok,
            self_ok,
        }
    }

    /// Depth-first search over admissible subsets of the given size whose
    /// span is a hyperplane; hits are re-validated from scratch.
    fn search(&self, size: usize, budget: &mut u64) -> Result<SearchOutcome> {
        let orbit = self.ws.lambda_orbit();
        let rank = orbit[0].rank();
        let mut masks: Vec<Vec<u64>> = vec![vec![0u64; self.words]; size + 1];
        masks[0].copy_from_slice(&self.self_ok);
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        let mut basis = SpanBasis::new(rank);
        self.dfs(size, 0, &mut chosen, &mut basis, &mut masks, budget)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        basis: &mut SpanBasis,
        masks: &mut [Vec<u64>],
        budget: &mut u64,
    ) -> Result<SearchOutcome> {
        if *budget == 0 {
            return Ok(SearchOutcome::BudgetSpent);
        }
        *budget -= 1;
        let orbit = self.ws.lambda_orbit();
        let target = orbit[0].rank() - 1;
        if chosen.len() == size {
            if basis.rank() != target {
                return Ok(SearchOutcome::Exhausted);
            }
            let omega: Vec<Weight> = chosen.iter().map(|&i| orbit[i].clone()).collect();
            let cert = check_nosm(self.ws, &omega)?;
            if cert.verdict.is_valid() {
                return Ok(SearchOutcome::Found(cert));
            }
            return Ok(SearchOutcome::Exhausted);
        }
        let depth = chosen.len();
        let remaining = size - depth;
        let mut cand = start;
        while let Some(next) = next_bit(&masks[depth], cand, orbit.len()) {
            cand = next;
            if orbit.len() - cand < remaining {
                break;
            }
            let added = basis.push(orbit[cand].coords2());
            let new_rank = basis.rank();
            // The span must end at exactly codimension one.
            let reachable = new_rank + (remaining - 1) >= target && new_rank <= target;
            if reachable {
                chosen.push(cand);
                let (head, tail) = masks.split_at_mut(depth + 1);
                tail[0].copy_from_slice(&head[depth]);
                let row = &self.pair_ok[cand * self.words..(cand + 1) * self.words];
                for (m, r) in tail[0].iter_mut().zip(row) {
                    *m &= r;
                }
                let out = self.dfs(size, cand + 1, chosen, basis, masks, budget)?;
                chosen.pop();
                match out {
                    SearchOutcome::Exhausted => {}
                    other => {
                        basis.pop(added);
                        return Ok(other);
                    }
                }
            }
            basis.pop(added);
            cand += 1;
        }
        Ok(SearchOutcome::Exhausted)
    }
}

fn next_bit(mask: &[u64], from: usize, n: usize) -> Option<usize> {
    if from >= n {
        return None;
    }
    let mut word = from / 64;
    let mut bits = mask[word] & (!0u64 << (from % 64));
    loop {
        if bits != 0 {
            let idx = word * 64 + bits.trailing_zeros() as usize;
            return (idx < n).then_some(idx);
        }
        word += 1;
        if word >= mask.len() {
            return None;
        }
        bits = mask[word];
    }
}

/// Incremental fraction-free row reduction for span-rank tracking along the
/// search path. `push` returns whether the vector enlarged the span, and
/// `pop` undoes it.
struct SpanBasis {
    dim: usize,
    rows: Vec<(usize, Vec<i128>)>,
}

impl SpanBasis {
    fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::with_capacity(dim),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn push(&mut self, coords2: &[i64]) -> bool {
        let mut row: Vec<i128> = coords2.iter().map(|&x| x as i128).collect();
        for (pivot, brow) in &self.rows {
            if row[*pivot] != 0 {
                let a = brow[*pivot];
                let b = row[*pivot];
                for k in 0..self.dim {
                    row[k] = row[k] * a - brow[k] * b;
                }
                let mut g: i128 = 0;
                for &x in &row {
                    g = num_integer::Integer::gcd(&g, &x);
                }
                if g > 1 {
                    for x in row.iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        match row.iter().position(|&x| x != 0) {
            Some(pivot) => {
                self.rows.push((pivot, row));
                true
            }
            None => false,
        }
    }

    fn pop(&mut self, added: bool) {
        if added {
            self.rows.pop();
        }
    }
}

/// Runs the scan over every nonzero dominant weight within the coefficient
/// bound, in deterministic order.
pub fn scan(rs: &RootSystem, opts: &ScanOptions) -> Result<ScanReport> {
    let mut entries = Vec::new();
    for (fw, _) in enumerate_dominant(rs, opts.coeff_sum_bound) {
        entries.push(scan_lambda(rs, &fw, opts)?);
    }
    Ok(ScanReport {
        family: rs.family(),
        rank: rs.rank(),
        coeff_sum_bound: opts.coeff_sum_bound,
        entries,
    })
}
