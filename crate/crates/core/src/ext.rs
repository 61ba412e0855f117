//! The extension `F_{q^n} = F_q[y]/(F(y))` for a monic irreducible `F`.
//!
//! The field is always built relative to the polynomial under study, so the
//! class of `y` is a root of `F` and no isomorphism or discrete-log work is
//! ever needed. The `q`-power Frobenius is `F_q`-linear; its matrix (the
//! reductions of `y^(iq)`) is computed once at construction.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;
use crate::field::{Field, Fq, FqElem};
use crate::poly::{FqPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("defining polynomial must have degree at least 1")]
    ConstantModulus,
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("defining polynomial is reducible")]
    ReducibleModulus,
    #[error("element has {got} coordinates, field degree is {n}")]
    WrongLength { got: usize, n: usize },
    #[error("gamma satisfies gamma^p = gamma")]
    ImproperGamma,
    #[error("theta must be nonzero")]
    ZeroTheta,
    #[error("theta must lie in the prime field")]
    ThetaNotInPrimeField,
}

/// Element of `F_{q^n}`: coordinates in the basis `1, y, ..., y^(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElem(Vec<FqElem>);

impl ExtElem {
    pub fn coords(&self) -> &[FqElem] {
        &self.0
    }
}

#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

struct ExtInner {
    base: Fq,
    modulus: FqPoly,
    n: usize,
    /// `frob[i]` = coordinates of `y^(i q) mod F`.
    frob: Vec<Vec<FqElem>>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("base", &self.inner.base)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Result of evaluating both sides of
/// `sum_{j<p} 1/(gamma + j theta) = -1/(gamma^p - gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReciprocalSumWitness {
    pub holds: bool,
    pub gamma_proper: bool,
}

impl ExtField {
    pub fn new(base: &Fq, modulus: &FqPoly) -> Result<Self, ExtError> {
        let ring = PolyRing::new(base);
        let n = match modulus.degree() {
            None | Some(0) => return Err(ExtError::ConstantModulus),
            Some(n) => n,
        };
        if !ring.is_monic(modulus) {
            return Err(ExtError::NotMonic);
        }
        if !ring.is_irreducible(modulus) {
            return Err(ExtError::ReducibleModulus);
        }
        let yq = ring.pow_mod(&ring.x(), base.order() as u128, modulus);
        let mut frob = Vec::with_capacity(n);
        let mut cur = ring.one();
        for _ in 0..n {
            let mut c = cur.coeffs().to_vec();
            c.resize(n, base.zero());
            frob.push(c);
            cur = ring.mul_mod(&cur, &yq, modulus);
        }
        Ok(Self {
            inner: Arc::new(ExtInner {
                base: base.clone(),
                modulus: modulus.clone(),
                n,
                frob,
            }),
        })
    }

    pub fn base(&self) -> &Fq {
        &self.inner.base
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.n
    }

    /// `q^n`, when it fits.
    pub fn order(&self) -> Option<u64> {
        self.inner.base.order().checked_pow(self.inner.n as u32)
    }

    /// The class of `y`, a root of the defining polynomial.
    pub fn generator(&self) -> ExtElem {
        let ring = PolyRing::new(&self.inner.base);
        self.from_poly(&ring.x())
    }

    pub fn embed(&self, c: FqElem) -> ExtElem {
        let mut v = vec![self.inner.base.zero(); self.inner.n];
        v[0] = c;
        ExtElem(v)
    }

    /// Residue class of an arbitrary polynomial in `y`.
    pub fn from_poly(&self, a: &FqPoly) -> ExtElem {
        let ring = PolyRing::new(&self.inner.base);
        let r = ring.rem(a, &self.inner.modulus).unwrap();
        let mut v = r.into_coeffs();
        v.resize(self.inner.n, self.inner.base.zero());
        ExtElem(v)
    }

    pub fn from_coords(&self, coords: Vec<FqElem>) -> Result<ExtElem, ExtError> {
        if coords.len() != self.inner.n {
            return Err(ExtError::WrongLength {
                got: coords.len(),
                n: self.inner.n,
            });
        }
        Ok(ExtElem(coords))
    }

    pub fn to_poly(&self, a: &ExtElem) -> FqPoly {
        PolyRing::new(&self.inner.base).poly(a.0.clone())
    }

    /// Element with base-`q` digit expansion `index` (coordinate 0 lowest).
    pub fn from_index(&self, mut index: u64) -> ExtElem {
        let q = self.inner.base.order();
        let v = (0..self.inner.n)
            .map(|_| {
                let c = self.inner.base.elem(index % q).unwrap();
                index /= q;
                c
            })
            .collect();
        ExtElem(v)
    }

    /// Every element, in index order. Panics if `q^n` overflows `u64`.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let order = self.order().expect("field too large to enumerate");
        (0..order).map(move |i| self.from_index(i))
    }

    /// `a^(q^j)`.
    pub fn frobenius_q(&self, a: &ExtElem, j: usize) -> ExtElem {
        let mut cur = a.clone();
        for _ in 0..j % self.inner.n {
            cur = self.frobenius_once(&cur);
        }
        cur
    }

    fn frobenius_once(&self, a: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        let mut out = vec![f.zero(); self.inner.n];
        for (ai, row) in a.0.iter().zip(&self.inner.frob) {
            if f.is_zero(ai) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = f.add(o, &f.mul(ai, r));
            }
        }
        ExtElem(out)
    }

    /// `a, a^q, ..., a^(q^(n-1))`.
    pub fn conjugates(&self, a: &ExtElem) -> Vec<ExtElem> {
        let mut out = Vec::with_capacity(self.inner.n);
        let mut cur = a.clone();
        for _ in 0..self.inner.n {
            let next = self.frobenius_once(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Relative trace `Tr_{q^n|q}(a)`.
    pub fn trace(&self, a: &ExtElem) -> FqElem {
        let sum = self
            .conjugates(a)
            .iter()
            .fold(self.zero(), |acc, c| self.add(&acc, c));
        debug_assert!(sum.0[1..].iter().all(|c| c.encoding() == 0));
        sum.0[0]
    }

    /// `c * a` for a base-field scalar `c`.
    pub fn scale(&self, a: &ExtElem, c: &FqElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().map(|x| f.mul(x, c)).collect())
    }

    /// `L_phi(a) = sum_v t_v a^(q^v)` for `phi = sum_v t_v x^v`.
    pub fn linearized_eval(&self, phi: &FqPoly, a: &ExtElem) -> ExtElem {
        self.linearized_eval_conjugates(phi, &self.conjugates(a))
    }

    /// As [`Self::linearized_eval`], reusing precomputed conjugates.
    pub fn linearized_eval_conjugates(&self, phi: &FqPoly, conjugates: &[ExtElem]) -> ExtElem {
        let f = &self.inner.base;
        let n = self.inner.n;
        let mut out = vec![f.zero(); n];
        for (v, t) in phi.coeffs().iter().enumerate() {
            if f.is_zero(t) {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&conjugates[v % n].0) {
                *o = f.add(o, &f.mul(t, c));
            }
        }
        ExtElem(out)
    }

    /// True iff `a` lies in no intermediate field `F_{q^v}`, `v | n`,
    /// `v < n`.
    pub fn is_proper(&self, a: &ExtElem) -> bool {
        let n = self.inner.n;
        let conj = self.conjugates(a);
        arith::divisors(n as u64)
            .into_iter()
            .map(|v| v as usize)
            .filter(|&v| v < n)
            .all(|v| conj[v] != *a)
    }

    /// Evaluates both sides of
    /// `sum_{j=0}^{p-1} 1/(gamma + j theta) = -1/(gamma^p - gamma)`.
    ///
    /// Requires `gamma^p != gamma` and `theta` a nonzero element of the
    /// prime field; properness of `gamma` is reported alongside.
    pub fn reciprocal_sum_check(
        &self,
        gamma: &ExtElem,
        theta: FqElem,
    ) -> Result<ReciprocalSumWitness, ExtError> {
        let f = &self.inner.base;
        if f.is_zero(&theta) {
            return Err(ExtError::ZeroTheta);
        }
        if !f.in_prime_subfield(theta) {
            return Err(ExtError::ThetaNotInPrimeField);
        }
        let p = f.p();
        let gp = self.pow(gamma, p as u128);
        let diff = self.sub(&gp, gamma);
        let Some(diff_inv) = self.inv(&diff) else {
            return Err(ExtError::ImproperGamma);
        };
        let rhs = self.neg(&diff_inv);
        let mut lhs = self.zero();
        for j in 0..p {
            let jt = f.mul(&f.from_int(j as i64), &theta);
            let term = self.add(gamma, &self.embed(jt));
            // gamma + j theta != 0 because gamma is not in F_p
            lhs = self.add(
                &lhs,
                &self.inv(&term).expect("gamma outside the prime field"),
            );
        }
        Ok(ReciprocalSumWitness {
            holds: lhs == rhs,
            gamma_proper: self.is_proper(gamma),
        })
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![self.inner.base.zero(); self.inner.n])
    }

    fn one(&self) -> ExtElem {
        self.embed(self.inner.base.one())
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|c| c.encoding() == 0)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        let n = self.inner.n;
        let modulus = self.inner.modulus.coeffs();
        let mut prod = vec![f.zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        for i in (n..prod.len()).rev() {
            let c = prod[i];
            if f.is_zero(&c) {
                continue;
            }
            for (j, mc) in modulus[..n].iter().enumerate() {
                prod[i - n + j] = f.sub(&prod[i - n + j], &f.mul(&c, mc));
            }
        }
        prod.truncate(n);
        ExtElem(prod)
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let ring = PolyRing::new(&self.inner.base);
        let (g, s, _) = ring.xgcd(&self.to_poly(a), &self.inner.modulus).ok()?;
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_poly(&s))
    }

    fn from_int(&self, n: i64) -> ExtElem {
        self.embed(self.inner.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.p()
    }
}
