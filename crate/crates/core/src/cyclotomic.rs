//! The factorization `x^n - 1 = (phi_1 ... phi_r)^t` over `F_q` and the
//! table of all monic divisors of `x^n - 1` grouped by degree.

use thiserror::Error;

use crate::arith;
use crate::field::{Field, Fq};
use crate::linalg;
use crate::poly::{FqPoly, PolyRing};

/// Default cap on the number of exponent tuples a divisor table may
/// enumerate.
pub const DEFAULT_MAX_DIVISORS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("x^n - 1 needs n >= 1")]
    ZeroDegree,
    #[error("x^{n} - 1 has {count} monic divisors, above the cap {cap}")]
    TooManyDivisors { n: usize, count: u128, cap: u64 },
}

/// `x^n - 1 = (phi_1 ... phi_r)^t` with `n = n1 p^e`, `t = p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub n: usize,
    pub n1: usize,
    pub e: u32,
    pub t: usize,
    /// Distinct monic irreducible factors, sorted by degree then encoding.
    pub factors: Vec<FqPoly>,
}

pub fn factor_xn_minus_1(field: &Fq, n: usize) -> Result<CyclotomicFactorization, CyclotomicError> {
    if n == 0 {
        return Err(CyclotomicError::ZeroDegree);
    }
    let p = field.p();
    let (n1, e) = arith::split_p_power(n as u64, p);
    let (n1, t) = (n1 as usize, (n / n1 as usize));
    let ring = PolyRing::new(field);
    let base = ring.x_pow_minus_one(n1);
    let mut factors = berlekamp(&ring, &base);
    factors.sort_by(|a, b| a.canonical_cmp(b));

    let product = factors.iter().fold(ring.one(), |acc, f| ring.mul(&acc, f));
    assert_eq!(
        ring.pow(&product, t as u64),
        ring.x_pow_minus_one(n),
        "factorization of x^{n} - 1 failed its product check"
    );
    Ok(CyclotomicFactorization {
        n,
        n1,
        e,
        t,
        factors,
    })
}

/// Berlekamp splitting of a monic squarefree polynomial.
fn berlekamp(ring: &PolyRing<'_, Fq>, f: &FqPoly) -> Vec<FqPoly> {
    let field = ring.field();
    let d = f.degree().expect("nonzero input");
    if d <= 1 {
        return vec![f.clone()];
    }
    // Row i of Q holds x^(iq) mod f; kernel vectors v satisfy v^q = v mod f.
    let xq = ring.pow_mod(&ring.x(), field.order() as u128, f);
    let mut rows = Vec::with_capacity(d);
    let mut cur = ring.one();
    for _ in 0..d {
        let mut row = cur.coeffs().to_vec();
        row.resize(d, field.zero());
        rows.push(row);
        cur = ring.mul_mod(&cur, &xq, f);
    }
    // (Q - I)^T
    let matrix: Vec<Vec<_>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|i| {
                    if i == j {
                        field.sub(&rows[i][j], &field.one())
                    } else {
                        rows[i][j]
                    }
                })
                .collect()
        })
        .collect();
    let basis = linalg::nullspace(field, matrix, d);
    let target = basis.len();

    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == target {
            break;
        }
        let v = ring.poly(v.clone());
        if v.degree().unwrap_or(0) == 0 {
            continue;
        }
        for c in field.elements() {
            if factors.len() == target {
                break;
            }
            let shifted = ring.sub(&v, &ring.constant(c));
            let mut next = Vec::with_capacity(factors.len() + 1);
            for g in factors {
                if g.degree() == Some(1) {
                    next.push(g);
                    continue;
                }
                let h = ring.gcd(&g, &shifted).unwrap();
                let dh = h.degree().unwrap();
                if dh > 0 && dh < g.degree().unwrap() {
                    let other = ring.div_exact(&g, &h).unwrap();
                    next.push(h);
                    next.push(other);
                } else {
                    next.push(g);
                }
            }
            factors = next;
        }
    }
    debug_assert_eq!(factors.len(), target);
    factors
}

/// One monic divisor `R = prod phi_j^(t_j)` of `x^n - 1` and its cofactor
/// `(x^n - 1) / R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub exponents: Vec<usize>,
    pub divisor: FqPoly,
    pub cofactor: FqPoly,
}

/// All monic divisors of `x^n - 1` of degree `s < n`, grouped by `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    n: usize,
    by_degree: Vec<Vec<Divisor>>,
}

impl DivisorTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Divisors of degree `s`, in lexicographic order of exponent tuples.
    pub fn entries(&self, s: usize) -> &[Divisor] {
        self.by_degree.get(s).map_or(&[], Vec::as_slice)
    }

    /// Number of divisors of degree `s` (`u_s`).
    pub fn count(&self, s: usize) -> usize {
        self.entries(s).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }
}

pub fn divisor_table(
    field: &Fq,
    fact: &CyclotomicFactorization,
) -> Result<DivisorTable, CyclotomicError> {
    divisor_table_with_cap(field, fact, DEFAULT_MAX_DIVISORS)
}

pub fn divisor_table_with_cap(
    field: &Fq,
    fact: &CyclotomicFactorization,
    cap: u64,
) -> Result<DivisorTable, CyclotomicError> {
    let r = fact.factors.len();
    let t = fact.t;
    let count = (t as u128 + 1).checked_pow(r as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(CyclotomicError::TooManyDivisors {
            n: fact.n,
            count,
            cap,
        });
    }
    let ring = PolyRing::new(field);
    // powers[j][k] = phi_j^k
    let powers: Vec<Vec<FqPoly>> = fact
        .factors
        .iter()
        .map(|phi| {
            let mut v = vec![ring.one()];
            for k in 1..=t {
                v.push(ring.mul(&v[k - 1], phi));
            }
            v
        })
        .collect();
    let degs: Vec<usize> = fact.factors.iter().map(|f| f.degree().unwrap()).collect();

    let mut by_degree = vec![Vec::new(); fact.n];
    let mut exps = vec![0usize; r];
    loop {
        let s: usize = exps.iter().zip(&degs).map(|(e, d)| e * d).sum();
        if s < fact.n {
            let divisor = exps
                .iter()
                .enumerate()
                .fold(ring.one(), |acc, (j, &e)| ring.mul(&acc, &powers[j][e]));
            let cofactor = exps
                .iter()
                .enumerate()
                .fold(ring.one(), |acc, (j, &e)| ring.mul(&acc, &powers[j][t - e]));
            by_degree[s].push(Divisor {
                exponents: exps.clone(),
                divisor,
                cofactor,
            });
        }
        // odometer, last position fastest
        let mut j = r;
        loop {
            if j == 0 {
                return Ok(DivisorTable {
                    n: fact.n,
                    by_degree,
                });
            }
            j -= 1;
            if exps[j] < t {
                exps[j] += 1;
                exps[j + 1..].iter_mut().for_each(|e| *e = 0);
                break;
            }
        }
    }
}
