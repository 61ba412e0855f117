//! k-normality of elements and irreducible polynomials.
//!
//! Three independent routes decide the degree `k`:
//!
//! * the definition: `k = deg gcd(x^n - 1, sum_i a^(q^i) x^(n-1-i))`,
//!   computed in `F_{q^n}[x]`;
//! * the divisor characterization: some `L_{phi_{k,j}}(a)` vanishes while
//!   every `L_{phi_{s,i}}(a)` with `k < s < n` does not;
//! * linear algebra: the conjugates of `a` span a space of dimension `n - k`.
//!
//! [`classify`] runs all three and refuses to report if they disagree.

use thiserror::Error;

use crate::cyclotomic::{self, CyclotomicError, DivisorTable};
use crate::ext::{ExtElem, ExtError, ExtField};
use crate::field::{Field, Fq};
use crate::linalg;
use crate::poly::{FqPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KNormalError {
    #[error("input polynomial must be monic")]
    NotMonic,
    #[error("input polynomial must have degree at least 1")]
    ConstantInput,
    #[error("input polynomial is reducible")]
    ReducibleInput,
    #[error("k = {k} is outside [0, {n})")]
    KOutOfRange { k: usize, n: usize },
    #[error("the zero element has no k-normal degree")]
    ZeroElement,
    #[error(
        "methods disagree: definition k = {by_gcd}, conjugate rank gives k = {by_rank}, \
         characterization at k = {by_gcd} is {characterization}"
    )]
    MethodDisagreement {
        by_gcd: usize,
        by_rank: usize,
        characterization: bool,
    },
    #[error(transparent)]
    Table(#[from] CyclotomicError),
}

impl From<ExtError> for KNormalError {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::ConstantModulus => KNormalError::ConstantInput,
            ExtError::NotMonic => KNormalError::NotMonic,
            _ => KNormalError::ReducibleInput,
        }
    }
}

/// Which methods agreed with the reported `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodAgreement {
    pub definition: bool,
    pub characterization: bool,
    pub conjugate_rank: bool,
}

impl MethodAgreement {
    pub fn all(&self) -> bool {
        self.definition && self.characterization && self.conjugate_rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KNormalReport {
    /// Extension degree `n`.
    pub n: usize,
    pub k: usize,
    /// Monic `gcd(x^n - 1, g_a)`; its coefficients always lie in `F_q`.
    pub gcd_witness: FqPoly,
    /// Dimension of the span of the conjugates, `n - k`.
    pub rank: usize,
    pub methods_agree: MethodAgreement,
    pub proper: bool,
}

/// k-degree by the definition, with its gcd witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdDegree {
    pub k: usize,
    pub witness: FqPoly,
}

fn ext_for(field: &Fq, f: &FqPoly) -> Result<ExtField, KNormalError> {
    Ok(ExtField::new(field, f)?)
}

/// `gcd(x^n - 1, sum_i a^(q^i) x^(n-1-i))` in `F_{q^n}[x]`, pulled back to
/// `F_q[x]`. `None` for `a = 0`.
pub fn element_gcd(ext: &ExtField, a: &ExtElem) -> Option<FqPoly> {
    if ext.is_zero(a) {
        return None;
    }
    element_gcd_from_conjugates(ext, &ext.conjugates(a))
}

fn element_gcd_from_conjugates(ext: &ExtField, conj: &[ExtElem]) -> Option<FqPoly> {
    let n = ext.degree();
    let ring = PolyRing::new(ext);
    // coefficient of x^j is a^(q^(n-1-j))
    let g = ring.poly(conj.iter().rev().cloned().collect());
    if g.is_zero() {
        return None;
    }
    let d = ring.gcd(&ring.x_pow_minus_one(n), &g).ok()?;
    let base_ring = PolyRing::new(ext.base());
    let coeffs = d
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.coords()[1..].iter().all(|x| x.encoding() == 0));
            c.coords()[0]
        })
        .collect();
    Some(base_ring.poly(coeffs))
}

/// Dimension of the `F_q`-span of `a, a^q, ..., a^(q^(n-1))`.
pub fn conjugate_rank(ext: &ExtField, a: &ExtElem) -> usize {
    conjugate_rank_from(ext, &ext.conjugates(a))
}

fn conjugate_rank_from(ext: &ExtField, conj: &[ExtElem]) -> usize {
    let rows = conj.iter().map(|c| c.coords().to_vec()).collect();
    linalg::rank(ext.base(), rows)
}

/// The divisor characterization of k-normality for the element whose
/// conjugates are `conj`.
fn characterization_holds(
    ext: &ExtField,
    table: &DivisorTable,
    conj: &[ExtElem],
    k: usize,
) -> bool {
    let n = table.n();
    let vanishes = |phi: &FqPoly| ext.is_zero(&ext.linearized_eval_conjugates(phi, conj));
    table.entries(k).iter().any(|d| vanishes(&d.cofactor))
        && (k + 1..n).all(|s| table.entries(s).iter().all(|d| !vanishes(&d.cofactor)))
}

fn table_for(field: &Fq, n: usize) -> Result<DivisorTable, KNormalError> {
    let fact = cyclotomic::factor_xn_minus_1(field, n)?;
    Ok(cyclotomic::divisor_table(field, &fact)?)
}

/// k-degree of the class of `y` in `F_q[y]/(F)` by the definition.
pub fn k_degree_by_gcd(field: &Fq, f: &FqPoly) -> Result<GcdDegree, KNormalError> {
    let ext = ext_for(field, f)?;
    let witness = element_gcd(&ext, &ext.generator()).ok_or(KNormalError::ZeroElement)?;
    Ok(GcdDegree {
        k: witness.degree().unwrap(),
        witness,
    })
}

/// True iff `F` is an `N_k`-polynomial according to the divisor
/// characterization.
pub fn nk_test_by_characterization(field: &Fq, f: &FqPoly, k: usize) -> Result<bool, KNormalError> {
    let ext = ext_for(field, f)?;
    let n = ext.degree();
    if k >= n {
        return Err(KNormalError::KOutOfRange { k, n });
    }
    let table = table_for(field, n)?;
    let conj = ext.conjugates(&ext.generator());
    Ok(characterization_holds(&ext, &table, &conj, k))
}

/// Runs all three methods on an arbitrary nonzero element of `ext`.
pub fn classify_element(ext: &ExtField, a: &ExtElem) -> Result<KNormalReport, KNormalError> {
    classify_element_with(ext, a, None)
}

fn classify_element_with(
    ext: &ExtField,
    a: &ExtElem,
    table: Option<&DivisorTable>,
) -> Result<KNormalReport, KNormalError> {
    if ext.is_zero(a) {
        return Err(KNormalError::ZeroElement);
    }
    let n = ext.degree();
    let conj = ext.conjugates(a);
    let witness = element_gcd_from_conjugates(ext, &conj).expect("nonzero element");
    let k = witness.degree().unwrap();
    let rank = conjugate_rank_from(ext, &conj);
    let owned;
    let table = match table {
        Some(t) => t,
        None => {
            owned = table_for(ext.base(), n)?;
            &owned
        }
    };
    let characterization = characterization_holds(ext, table, &conj, k);
    if rank + k != n || !characterization {
        return Err(KNormalError::MethodDisagreement {
            by_gcd: k,
            by_rank: n - rank,
            characterization,
        });
    }
    Ok(KNormalReport {
        n,
        k,
        gcd_witness: witness,
        rank,
        methods_agree: MethodAgreement {
            definition: true,
            characterization: true,
            conjugate_rank: true,
        },
        proper: ext.is_proper(a),
    })
}

/// Full classification of a monic irreducible polynomial: the report for
/// its root, the class of `y` in `F_q[y]/(F)`.
pub fn classify(field: &Fq, f: &FqPoly) -> Result<KNormalReport, KNormalError> {
    let ext = ext_for(field, f)?;
    classify_element(&ext, &ext.generator())
}

/// As [`classify`], reusing a divisor table for `x^n - 1`.
pub fn classify_with_table(
    field: &Fq,
    f: &FqPoly,
    table: &DivisorTable,
) -> Result<KNormalReport, KNormalError> {
    let ext = ext_for(field, f)?;
    assert_eq!(
        table.n(),
        ext.degree(),
        "divisor table built for another degree"
    );
    classify_element_with(&ext, &ext.generator(), Some(table))
}

/// Precomputed divisor table for repeated classification at degree `n`.
pub fn divisor_table_for(field: &Fq, n: usize) -> Result<DivisorTable, KNormalError> {
    table_for(field, n)
}
