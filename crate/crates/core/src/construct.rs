//! Recursive constructions of irreducible and `N_k` polynomials by
//! composing with the fractional map `x -> (x^p - a x + b) / (x^p - a x + c)`.
//!
//! * [`nk_step`]: one step from an `N_k` seed `P`, producing the
//!   reciprocal of `(x^p - x + d)^n P*((x^p - x)/(x^p - x + d))`.
//! * [`nk_chain`]: the iterated chain `F_u` with its reciprocals.
//! * [`irreducible_compose`]: a single irreducibility-preserving composition and
//!   its two-condition verdict.
//! * [`irreducible_chain`]: an infinite irreducible sequence behind a
//!   two-trace gate.
//!
//! Every constructed polynomial up to the verification budget is checked by
//! the independent oracles in [`crate::knormal`] and [`crate::poly`].

use std::fmt;

use thiserror::Error;

use crate::arith;
use crate::field::{Field, Fq, FqElem};
use crate::knormal::{self, KNormalError};
use crate::par::{self, Execution};
use crate::poly::{FqPoly, PolyRing};

pub const DEFAULT_VERIFY_DEGREE: usize = 64;
pub const DEFAULT_MAX_DEGREE: usize = 1 << 12;

/// Limits for construction and oracle verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Outputs up to this degree are checked by the oracles.
    pub verify_degree: usize,
    /// Sequences stop before exceeding this degree.
    pub max_degree: usize,
    pub execution: Execution,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            verify_degree: DEFAULT_VERIFY_DEGREE,
            max_degree: DEFAULT_MAX_DEGREE,
            execution: Execution::default(),
        }
    }
}

/// A failed precondition of one of the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error(
        "degree {n} is not of the form r * {p}^e with e >= 1 and r = 1 or a prime other than {p}"
    )]
    UnsupportedDegreeShape { n: usize, p: u64 },
    #[error("q = {q} is not a primitive root modulo r = {r}")]
    NotPrimitiveModR { q: u64, r: u64 },
    #[error("seed polynomial must be monic")]
    SeedNotMonic,
    #[error("seed polynomial must be irreducible of degree at least 2")]
    SeedNotIrreducible,
    #[error("delta must be nonzero")]
    ZeroDelta,
    #[error("delta must lie in the prime field")]
    DeltaNotInPrimeField,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("numerator and denominator must be nonzero of equal degree")]
    DegreeMismatch,
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(#[from] Violation),
    #[error("trace gate failed: {0}")]
    TraceGateFailed(TraceGate),
    #[error("seed is {k}-normal but the construction needs k < p^e = {bound}")]
    KTooLarge { k: usize, bound: u64 },
    #[error("(delta0, delta1) must not both be zero")]
    ZeroDeltaPair,
    #[error("x^p - delta2 x + delta0 and x^p - delta2 x + delta1 are not coprime")]
    NonCoprimePair,
    #[error("no A in F_q* satisfies A^(p-1) = delta2")]
    NoRootA,
    #[error("invalid deltas: {0}")]
    InvalidDeltas(&'static str),
    #[error("oracle rejected step {u}: {detail}")]
    VerificationFailed { u: usize, detail: String },
    #[error(transparent)]
    KNormal(#[from] KNormalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceGate {
    /// `Tr(delta P*'(1) / P*(1)) != 0`
    SingleStep,
    /// `Tr(P*'(0)/P*(0)) * Tr(P*'(1)/P*(1)) != 0`
    Iterated,
    /// the two-trace product for the irreducible sequence
    IrreducibleSequence,
}

impl fmt::Display for TraceGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceGate::SingleStep => "Tr(delta P*'(1)/P*(1)) = 0",
            TraceGate::Iterated => "Tr(P*'(0)/P*(0)) * Tr(P*'(1)/P*(1)) = 0",
            TraceGate::IrreducibleSequence => "two-trace product for the sequence is 0",
        })
    }
}

/// `n = r p^e` decomposition with the primitivity check on `q mod r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisProfile {
    pub n: usize,
    pub r: u64,
    pub e: u32,
    pub p_to_e: u64,
    pub q_primitive_mod_r: bool,
    pub k_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    OracleVerified,
    ConstructedUnverified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceEntry {
    pub u: usize,
    pub poly: FqPoly,
    pub degree: usize,
    pub verified: Verification,
    /// Oracle value when verified, otherwise the value the construction
    /// guarantees. `None` where the construction makes no normality claim
    /// and the entry was not classified.
    pub k: Option<usize>,
}

/// A constructed chain. `truncated` is set when the degree cap stopped the
/// construction before the requested number of steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub entries: Vec<SequenceEntry>,
    /// The composed polynomials before taking reciprocals (for the
    /// irreducible sequence these are the entries themselves).
    pub raw: Vec<FqPoly>,
    pub truncated: bool,
}

/// `den^N P(num/den) = sum_i c_i num^i den^(N-i)`, `N = deg P`, by Horner
/// accumulation with an incrementally built power of `den`.
pub fn compose_frac(
    ring: &PolyRing<'_, Fq>,
    p: &FqPoly,
    num: &FqPoly,
    den: &FqPoly,
) -> Result<FqPoly, ConstructError> {
    match (num.degree(), den.degree()) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Err(ConstructError::DegreeMismatch),
    }
    let Some(top) = p.degree() else {
        return Ok(ring.zero());
    };
    let c = p.coeffs();
    let mut acc = ring.constant(c[top]);
    let mut den_pow = ring.one();
    for i in (0..top).rev() {
        den_pow = ring.mul(&den_pow, den);
        acc = ring.add(&ring.mul(&acc, num), &ring.scale(&den_pow, &c[i]));
    }
    Ok(acc)
}

/// `x^p - a x + b`.
pub fn p_polynomial(ring: &PolyRing<'_, Fq>, a: FqElem, b: FqElem) -> FqPoly {
    let field = ring.field();
    let p = field.p() as usize;
    let mut coeffs = vec![field.zero(); p + 1];
    coeffs[p] = field.one();
    coeffs[1] = field.sub(&coeffs[1], &a);
    coeffs[0] = field.add(&coeffs[0], &b);
    ring.poly(coeffs)
}

pub fn check_hypotheses(n: usize, field: &Fq) -> Result<HypothesisProfile, Violation> {
    let p = field.p();
    let shape = Violation::UnsupportedDegreeShape { n, p };
    if n < 2 {
        return Err(shape);
    }
    let (r, e) = arith::split_p_power(n as u64, p);
    if e == 0 || (r != 1 && !arith::is_prime(r)) {
        return Err(shape);
    }
    let q = field.order();
    let primitive = r == 1 || arith::multiplicative_order(q % r, r) == Some(r - 1);
    if !primitive {
        return Err(Violation::NotPrimitiveModR { q, r });
    }
    let p_to_e = p.pow(e);
    Ok(HypothesisProfile {
        n,
        r,
        e,
        p_to_e,
        q_primitive_mod_r: primitive,
        k_max: p_to_e - 1,
    })
}

/// `f'(x0) / f(x0)`, `None` when `f(x0) = 0`.
fn log_derivative_at(ring: &PolyRing<'_, Fq>, f: &FqPoly, x0: FqElem) -> Option<FqElem> {
    let field = ring.field();
    field.div(&ring.eval(&ring.derivative(f), &x0), &ring.eval(f, &x0))
}

fn monic_reciprocal(ring: &PolyRing<'_, Fq>, p: &FqPoly) -> Result<FqPoly, ConstructError> {
    ring.reciprocal(p, true)
        .map_err(|_| Violation::SeedNotIrreducible.into())
}

/// `Tr_{q|p}(delta P*'(1) / P*(1)) != 0`.
pub fn step_trace_condition(field: &Fq, p: &FqPoly, delta: FqElem) -> Result<bool, ConstructError> {
    let ring = PolyRing::new(field);
    let ps = monic_reciprocal(&ring, p)?;
    Ok(match log_derivative_at(&ring, &ps, field.one()) {
        Some(ratio) => field.trace_to_prime(field.mul(&delta, &ratio)) != 0,
        None => false,
    })
}

/// `Tr_{q|p}(P*'(0)/P*(0)) * Tr_{q|p}(P*'(1)/P*(1)) != 0`.
pub fn chain_trace_condition(field: &Fq, p: &FqPoly) -> Result<bool, ConstructError> {
    let ring = PolyRing::new(field);
    let ps = monic_reciprocal(&ring, p)?;
    let tr = |x0| log_derivative_at(&ring, &ps, x0).map(|r| field.trace_to_prime(r));
    Ok(matches!((tr(field.zero()), tr(field.one())), (Some(a), Some(b)) if a != 0 && b != 0))
}

/// Checks that `p` is monic irreducible of degree at least 2.
fn check_seed(ring: &PolyRing<'_, Fq>, p: &FqPoly) -> Result<usize, Violation> {
    if !ring.is_monic(p) {
        return Err(Violation::SeedNotMonic);
    }
    match p.degree() {
        Some(n) if n >= 2 && ring.is_irreducible(p) => Ok(n),
        _ => Err(Violation::SeedNotIrreducible),
    }
}

/// Shared gates of the single-step and iterated `N_k` constructions;
/// returns the seed's `k`.
fn nk_seed_gates(field: &Fq, p: &FqPoly) -> Result<(usize, HypothesisProfile), ConstructError> {
    let ring = PolyRing::new(field);
    let n = check_seed(&ring, p)?;
    let profile = check_hypotheses(n, field)?;
    let k = knormal::classify(field, p)?.k;
    if k as u64 >= profile.p_to_e {
        return Err(ConstructError::KTooLarge {
            k,
            bound: profile.p_to_e,
        });
    }
    Ok((k, profile))
}

/// Classifies `poly` and checks it is irreducible with the expected `k`.
fn verify_nk(field: &Fq, poly: &FqPoly, u: usize, k: usize) -> Result<(), ConstructError> {
    match knormal::classify(field, poly) {
        Ok(rep) if rep.k == k => Ok(()),
        Ok(rep) => Err(ConstructError::VerificationFailed {
            u,
            detail: format!("expected k = {k}, oracle found k = {}", rep.k),
        }),
        Err(KNormalError::ReducibleInput) => Err(ConstructError::VerificationFailed {
            u,
            detail: "constructed polynomial is reducible".into(),
        }),
        Err(e) => Err(e.into()),
    }
}

/// `(x^p - x + delta)^n P*((x^p - x)/(x^p - x + delta))`, before taking the
/// reciprocal. `P*` is the monic reciprocal of `p`.
pub fn nk_step_composition(
    field: &Fq,
    p: &FqPoly,
    delta: FqElem,
) -> Result<FqPoly, ConstructError> {
    let ring = PolyRing::new(field);
    let ps = monic_reciprocal(&ring, p)?;
    let num = p_polynomial(&ring, field.one(), field.zero());
    let den = p_polynomial(&ring, field.one(), delta);
    compose_frac(&ring, &ps, &num, &den)
}

/// One step: from an `N_k` polynomial of degree `n` to one of degree `np`.
pub fn nk_step(
    field: &Fq,
    p: &FqPoly,
    delta: FqElem,
    budget: &Budget,
) -> Result<SequenceEntry, ConstructError> {
    let (k, _) = nk_seed_gates(field, p)?;
    if field.is_zero(&delta) {
        return Err(Violation::ZeroDelta.into());
    }
    if !step_trace_condition(field, p, delta)? {
        return Err(ConstructError::TraceGateFailed(TraceGate::SingleStep));
    }
    let ring = PolyRing::new(field);
    let f = nk_step_composition(field, p, delta)?;
    let fs = ring
        .reciprocal(&f, true)
        .map_err(|_| ConstructError::VerificationFailed {
            u: 1,
            detail: "composed polynomial has zero constant term".into(),
        })?;
    let degree = fs.degree().unwrap();
    let verified = if degree <= budget.verify_degree {
        verify_nk(field, &fs, 1, k)?;
        Verification::OracleVerified
    } else {
        Verification::ConstructedUnverified
    };
    Ok(SequenceEntry {
        u: 1,
        poly: fs,
        degree,
        verified,
        k: Some(k),
    })
}

/// The chain `F_0 = P*`,
/// `F_u = (x^p - x + delta)^(n p^(u-1)) F_{u-1}((x^p - x)/(x^p - x + delta))`,
/// reported as the monic reciprocals `F_u*` for `u = 0..=u_max`.
pub fn nk_chain(
    field: &Fq,
    p: &FqPoly,
    delta: FqElem,
    u_max: usize,
    budget: &Budget,
) -> Result<Sequence, ConstructError> {
    let ring = PolyRing::new(field);
    let (k, _) = nk_seed_gates(field, p)?;
    if field.is_zero(&delta) {
        return Err(Violation::ZeroDelta.into());
    }
    if !field.in_prime_subfield(delta) {
        return Err(Violation::DeltaNotInPrimeField.into());
    }
    if !chain_trace_condition(field, p)? {
        return Err(ConstructError::TraceGateFailed(TraceGate::Iterated));
    }
    let num = p_polynomial(&ring, field.one(), field.zero());
    let den = p_polynomial(&ring, field.one(), delta);
    let pdeg = field.p() as usize;

    let mut raw = vec![monic_reciprocal(&ring, p)?];
    let mut truncated = false;
    for _ in 1..=u_max {
        let prev = raw.last().unwrap();
        if prev.degree().unwrap() * pdeg > budget.max_degree {
            truncated = true;
            break;
        }
        raw.push(compose_frac(&ring, prev, &num, &den)?);
    }

    let stars: Vec<FqPoly> = raw
        .iter()
        .map(|f| {
            ring.reciprocal(f, true)
                .expect("F_u(0) is a nonzero multiple of P*(0)")
        })
        .collect();
    // Oracle checks are independent per entry.
    let indexed: Vec<(usize, &FqPoly)> = stars.iter().enumerate().collect();
    let checks = par::map_slice(budget.execution, &indexed, |&(u, poly)| {
        let degree = poly.degree().unwrap();
        if degree <= budget.verify_degree {
            verify_nk(field, poly, u, k).map(|_| Verification::OracleVerified)
        } else {
            Ok(Verification::ConstructedUnverified)
        }
    });
    let mut entries = Vec::with_capacity(stars.len());
    for ((u, poly), check) in stars.into_iter().enumerate().zip(checks) {
        entries.push(SequenceEntry {
            u,
            degree: poly.degree().unwrap(),
            poly,
            verified: check?,
            k: Some(k),
        });
    }
    Ok(Sequence {
        entries,
        raw,
        truncated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComposeParams {
    pub delta0: FqElem,
    pub delta1: FqElem,
    pub delta2: FqElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeOutcome {
    /// `(x^p - d2 x + d1)^n P((x^p - d2 x + d0)/(x^p - d2 x + d1))`.
    pub poly: FqPoly,
    /// The solution of `A^(p-1) = delta2` that was used.
    pub a: FqElem,
    /// `delta2^((q-1)/(p-1)) = 1`.
    pub power_condition: bool,
    /// `Tr_{q|p}((1/A^p)((d1 - d0) P'(1)/P(1) - n d1)) != 0`.
    pub trace_condition: bool,
    /// Both conditions hold: `poly` is irreducible of degree `np`.
    pub predicted_irreducible: bool,
}

pub fn irreducible_compose(
    field: &Fq,
    p: &FqPoly,
    params: ComposeParams,
) -> Result<ComposeOutcome, ConstructError> {
    let ring = PolyRing::new(field);
    let ComposeParams {
        delta0,
        delta1,
        delta2,
    } = params;
    let n = match p.degree() {
        Some(n) if n >= 2 && ring.is_irreducible(p) => n,
        _ => return Err(Violation::SeedNotIrreducible.into()),
    };
    if field.is_zero(&delta0) && field.is_zero(&delta1) {
        return Err(ConstructError::ZeroDeltaPair);
    }
    if field.is_zero(&delta2) {
        return Err(Violation::ZeroDelta.into());
    }
    let num = p_polynomial(&ring, delta2, delta0);
    let den = p_polynomial(&ring, delta2, delta1);
    if ring.gcd(&num, &den).unwrap().degree() != Some(0) {
        return Err(ConstructError::NonCoprimePair);
    }
    let pp = field.p();
    let exp = (field.order() - 1) / (pp - 1);
    let power_condition = field.is_one(&field.pow(&delta2, exp as u128));
    let a = field
        .root_p_minus_1(delta2)
        .ok_or(ConstructError::NoRootA)?;
    let ratio = log_derivative_at(&ring, p, field.one())
        .expect("irreducible of degree >= 2 has no root at 1");
    let inner = field.sub(
        &field.mul(&field.sub(&delta1, &delta0), &ratio),
        &field.mul(&field.from_int(n as i64), &delta1),
    );
    let a_p = field.pow(&a, pp as u128);
    let arg = field.div(&inner, &a_p).unwrap();
    let trace_condition = field.trace_to_prime(arg) != 0;
    let poly = compose_frac(&ring, p, &num, &den)?;
    Ok(ComposeOutcome {
        poly,
        a,
        power_condition,
        trace_condition,
        predicted_irreducible: power_condition && trace_condition,
    })
}

/// Value of the two-trace gate for the irreducible sequence.
pub fn irreducible_chain_gate(
    field: &Fq,
    p: &FqPoly,
    delta0: FqElem,
    delta1: FqElem,
) -> Result<bool, ConstructError> {
    let ring = PolyRing::new(field);
    let n = p.degree().unwrap_or(0);
    let nd1 = field.mul(&field.from_int(n as i64), &delta1);
    let diff = field.sub(&delta1, &delta0);
    let dp = ring.derivative(p);
    let c = field
        .div(&delta0, &delta1)
        .ok_or(ConstructError::InvalidDeltas("delta1 must be nonzero"))?;
    let term = |x0: FqElem, sign_plus: bool| -> Option<u32> {
        let fx = ring.eval(p, &x0);
        let dfx = ring.eval(&dp, &x0);
        let scaled = field.mul(&nd1, &fx);
        let top = if sign_plus {
            field.add(&field.mul(&diff, &dfx), &scaled)
        } else {
            field.sub(&field.mul(&diff, &dfx), &scaled)
        };
        field.div(&top, &fx).map(|v| field.trace_to_prime(v))
    };
    Ok(matches!(
        (term(field.one(), false), term(c, true)),
        (Some(a), Some(b)) if a != 0 && b != 0
    ))
}

/// `F_0 = P`, `F_u = (x^p - x + d1)^(n p^(u-1)) F_{u-1}((x^p - x + d0)/(x^p - x + d1))`.
pub fn irreducible_chain(
    field: &Fq,
    p: &FqPoly,
    delta0: FqElem,
    delta1: FqElem,
    u_max: usize,
    budget: &Budget,
) -> Result<Sequence, ConstructError> {
    let ring = PolyRing::new(field);
    match p.degree() {
        Some(n) if n >= 2 && ring.is_irreducible(p) => {}
        _ => return Err(Violation::SeedNotIrreducible.into()),
    }
    if !field.in_prime_subfield(delta0) || !field.in_prime_subfield(delta1) {
        return Err(ConstructError::InvalidDeltas(
            "delta0 and delta1 must lie in the prime field",
        ));
    }
    if field.is_zero(&delta1) {
        return Err(ConstructError::InvalidDeltas("delta1 must be nonzero"));
    }
    if delta0 == delta1 {
        return Err(ConstructError::InvalidDeltas(
            "delta0 and delta1 must differ",
        ));
    }
    if !irreducible_chain_gate(field, p, delta0, delta1)? {
        return Err(ConstructError::TraceGateFailed(
            TraceGate::IrreducibleSequence,
        ));
    }
    let num = p_polynomial(&ring, field.one(), delta0);
    let den = p_polynomial(&ring, field.one(), delta1);
    let pdeg = field.p() as usize;
    let mut raw = vec![p.clone()];
    let mut truncated = false;
    for _ in 1..=u_max {
        let prev = raw.last().unwrap();
        if prev.degree().unwrap() * pdeg > budget.max_degree {
            truncated = true;
            break;
        }
        raw.push(compose_frac(&ring, prev, &num, &den)?);
    }
    let indexed: Vec<(usize, &FqPoly)> = raw.iter().enumerate().collect();
    let checks = par::map_slice(budget.execution, &indexed, |&(u, poly)| {
        if poly.degree().unwrap() > budget.verify_degree {
            return Ok((Verification::ConstructedUnverified, None));
        }
        let monic = ring.monic(poly);
        match knormal::classify(field, &monic) {
            Ok(rep) => Ok((Verification::OracleVerified, Some(rep.k))),
            Err(KNormalError::ReducibleInput) => Err(ConstructError::VerificationFailed {
                u,
                detail: "sequence member is reducible".into(),
            }),
            Err(e) => Err(e.into()),
        }
    });
    let mut entries = Vec::with_capacity(raw.len());
    for ((u, poly), check) in raw.iter().enumerate().zip(checks) {
        let (verified, k) = check?;
        entries.push(SequenceEntry {
            u,
            degree: poly.degree().unwrap(),
            poly: poly.clone(),
            verified,
            k,
        });
    }
    Ok(Sequence {
        entries,
        raw,
        truncated,
    })
}
