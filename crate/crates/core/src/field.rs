//! Exact arithmetic in `F_p` and `F_q = F_p[z]/(g(z))`.
//!
//! Elements of `F_q` are stored as their integer encoding
//! `enc = sum coords[i] * p^i`, where `coords` are the coordinates in the
//! power basis of the modulus `g`. The encoding is canonical, so element
//! equality is plain integer equality.
//!
//! Multiplication in proper extensions goes through discrete log / antilog
//! tables built once per field; the prime-field case is direct modular
//! arithmetic.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;
use crate::poly::PolyRing;

/// Default cap on `q`. Fields beyond this are rejected unless the caller
/// raises the cap through [`FieldConfig`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is not a monic polynomial of degree {degree} with coefficients below {p}")]
    BadModulus { p: u64, degree: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("field order {order} exceeds the configured cap {cap}")]
    FieldTooLarge { order: u128, cap: u64 },
    #[error("element encoding {value} is outside [0, {order})")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Arithmetic of a commutative field whose elements are plain values.
///
/// Contexts carry all parameters; elements are interpreted relative to the
/// context that operates on them.
pub trait Field {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer in the prime subfield.
    fn from_int(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Element of `F_q`, stored as its canonical integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(u32);

impl FqElem {
    pub fn encoding(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FieldConfig {
    pub max_order: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The field `F_q`, `q = p^m`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Fq {
    inner: Arc<FqInner>,
}

struct FqInner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus over `F_p`, little-endian, length `m + 1`.
    modulus: Vec<u32>,
    /// `p^i` for `i in 0..=m`.
    pow_p: Vec<u32>,
    tables: Option<LogTables>,
}

struct LogTables {
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fq")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl Fq {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::make(p, 1, None)
    }

    /// `F_{p^m}` with either the given modulus (little-endian coefficients
    /// over `F_p`, monic, degree `m`) or the default one: the monic
    /// irreducible of degree `m` with the smallest integer encoding.
    pub fn make(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        Self::make_with(p, m, modulus, FieldConfig::default())
    }

    pub fn make_with(
        p: u64,
        m: u32,
        modulus: Option<&[u32]>,
        config: FieldConfig,
    ) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > config.max_order as u128 || order > u32::MAX as u128 {
            return Err(FieldError::FieldTooLarge {
                order,
                cap: config.max_order,
            });
        }
        let p32 = p as u32;
        let prime_field = Self::build_prime(p32);
        if m == 1 {
            // Accept "x" (or any monic linear) for the degenerate case;
            // elements are residues mod p either way.
            if let Some(g) = modulus {
                if g.len() != 2 || g[1] != 1 || g[0] >= p32 {
                    return Err(FieldError::BadModulus { p, degree: 1 });
                }
            }
            return Ok(prime_field);
        }

        let ring = PolyRing::new(&prime_field);
        let modulus = match modulus {
            Some(g) => {
                if g.len() != m as usize + 1 || g[m as usize] != 1 || g.iter().any(|&c| c >= p32) {
                    return Err(FieldError::BadModulus { p, degree: m });
                }
                let poly = ring.from_encodings(g);
                if !ring.is_irreducible(&poly) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                g.to_vec()
            }
            None => ring
                .monic_of_degree(m as usize)
                .find(|f| ring.is_irreducible(f))
                .map(|f| f.coeffs().iter().map(|c| c.encoding()).collect())
                .expect("irreducible polynomials exist in every degree"),
        };

        let q = order as u32;
        let pow_p: Vec<u32> = (0..=m).map(|i| p32.pow(i)).collect();
        let mut inner = FqInner {
            p: p32,
            m,
            q,
            modulus,
            pow_p,
            tables: None,
        };
        inner.tables = Some(inner.build_tables());
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    fn build_prime(p: u32) -> Self {
        Self {
            inner: Arc::new(FqInner {
                p,
                m: 1,
                q: p,
                modulus: vec![0, 1],
                pow_p: vec![1, p],
                tables: None,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.q as u64
    }

    /// Monic modulus over `F_p`, little-endian.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Element from its encoding, checked against `[0, q)`.
    pub fn elem(&self, enc: u64) -> Result<FqElem, FieldError> {
        if enc >= self.order() {
            return Err(FieldError::ElementOutOfRange {
                value: enc,
                order: self.order(),
            });
        }
        Ok(FqElem(enc as u32))
    }

    /// The class of `z` (root of the modulus); equals `0` when `m = 1`.
    pub fn generator(&self) -> FqElem {
        if self.inner.m == 1 {
            FqElem(0)
        } else {
            FqElem(self.inner.p)
        }
    }

    /// Every element in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.inner.q).map(FqElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.inner.q).map(FqElem)
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        self.inner.coords(a.0)
    }

    pub fn from_coords(&self, coords: &[u32]) -> FqElem {
        FqElem(self.inner.encode(coords))
    }

    /// Checked binary operation on encodings.
    pub fn arith(&self, op: FieldOp, a: FqElem, b: FqElem) -> Result<FqElem, FieldError> {
        self.elem(a.0 as u64)?;
        self.elem(b.0 as u64)?;
        Ok(match op {
            FieldOp::Add => self.add(&a, &b),
            FieldOp::Sub => self.sub(&a, &b),
            FieldOp::Mul => self.mul(&a, &b),
            FieldOp::Div => self.div(&a, &b).ok_or(FieldError::DivisionByZero)?,
        })
    }

    /// `a^(p^i)`.
    pub fn frobenius_p(&self, a: FqElem, i: u32) -> FqElem {
        let k = i % self.inner.m;
        let mut r = a;
        for _ in 0..k {
            r = self.pow(&r, self.inner.p as u128);
        }
        r
    }

    /// Absolute trace `Tr_{q|p}(a) = sum_{i<m} a^(p^i)`, as a residue mod p.
    pub fn trace_to_prime(&self, a: FqElem) -> u32 {
        let mut acc = FqElem(0);
        let mut conj = a;
        for _ in 0..self.inner.m {
            acc = self.add(&acc, &conj);
            conj = self.pow(&conj, self.inner.p as u128);
        }
        debug_assert!(acc.0 < self.inner.p);
        acc.0
    }

    /// True iff `a` lies in the prime subfield.
    pub fn in_prime_subfield(&self, a: FqElem) -> bool {
        a.0 < self.inner.p
    }

    /// Some `b` with `b^(p-1) = a`, found by exhaustive scan.
    pub fn root_p_minus_1(&self, a: FqElem) -> Option<FqElem> {
        let e = self.inner.p as u128 - 1;
        self.nonzero_elements().find(|b| self.pow(b, e) == a)
    }
}

impl FqInner {
    fn coords(&self, mut enc: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(enc % self.p);
            enc /= self.p;
        }
        out
    }

    fn encode(&self, coords: &[u32]) -> u32 {
        coords
            .iter()
            .zip(&self.pow_p)
            .map(|(&c, &w)| (c % self.p) * w)
            .sum()
    }

    fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let sub = c * self.modulus[j] as u64 % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|c| c as u32).collect()
    }

    fn pow_coords(&self, a: &[u32], mut exp: u64) -> Vec<u32> {
        let mut acc = self.coords(1);
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            base = self.mul_coords(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> LogTables {
        let q = self.q as u64;
        let group = q - 1;
        let primes: Vec<u64> = arith::factorize(group)
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        let one = self.coords(1);
        let gen = (2..self.q)
            .map(|g| self.coords(g))
            .find(|g| primes.iter().all(|&l| self.pow_coords(g, group / l) != one))
            .unwrap_or_else(|| one.clone());
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut cur = one;
        for i in 0..group {
            let enc = self.encode(&cur);
            exp.push(enc);
            log[enc as usize] = i as u32;
            cur = self.mul_coords(&cur, &gen);
        }
        exp.extend_from_within(..);
        LogTables { exp, log }
    }

    fn add_digits(&self, mut a: u32, mut b: u32, negate_b: bool) -> u32 {
        let p = self.p;
        let mut out = 0;
        for &w in &self.pow_p[..self.m as usize] {
            let (da, db) = (a % p, b % p);
            let d = if negate_b {
                (da + p - db) % p
            } else {
                (da + db) % p
            };
            out += d * w;
            a /= p;
            b /= p;
        }
        out
    }
}

impl Field for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = &*self.inner;
        if f.p == 2 {
            FqElem(a.0 ^ b.0)
        } else if f.m == 1 {
            FqElem(((a.0 as u64 + b.0 as u64) % f.p as u64) as u32)
        } else {
            FqElem(f.add_digits(a.0, b.0, false))
        }
    }

    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = &*self.inner;
        if f.p == 2 {
            FqElem(a.0 ^ b.0)
        } else if f.m == 1 {
            FqElem(((a.0 as u64 + f.p as u64 - b.0 as u64) % f.p as u64) as u32)
        } else {
            FqElem(f.add_digits(a.0, b.0, true))
        }
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&FqElem(0), a)
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = &*self.inner;
        match &f.tables {
            None => FqElem((a.0 as u64 * b.0 as u64 % f.p as u64) as u32),
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FqElem(0)
                } else {
                    FqElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
                }
            }
        }
    }

    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let f = &*self.inner;
        Some(match &f.tables {
            None => FqElem(arith::pow_mod(a.0 as u64, f.p as u64 - 2, f.p as u64) as u32),
            Some(t) => {
                let group = f.q - 1;
                FqElem(t.exp[((group - t.log[a.0 as usize]) % group) as usize])
            }
        })
    }

    fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }
}
