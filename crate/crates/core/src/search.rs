//! Exhaustive search for `N_k` polynomials of a given degree.

use thiserror::Error;

use crate::field::{Field, Fq};
use crate::knormal::{self, KNormalError, KNormalReport};
use crate::par::{self, Execution};
use crate::poly::{FqPoly, PolyRing};

/// Default cap on the number of monic candidates `q^n`.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("{q}^{n} candidates exceed the search budget of {cap}")]
    BudgetExceeded { q: u64, n: usize, cap: u64 },
    #[error(transparent)]
    KNormal(#[from] KNormalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// Keep only this `k`; `None` keeps every irreducible.
    pub k: Option<usize>,
    pub max_candidates: u64,
    pub execution: Execution,
}

impl SearchConfig {
    pub fn new(n: usize, k: Option<usize>) -> Self {
        Self {
            n,
            k,
            max_candidates: DEFAULT_MAX_CANDIDATES,
            execution: Execution::default(),
        }
    }
}

/// Classifies every monic irreducible of degree `n` with nonzero roots and
/// returns the matches in increasing encoding order.
pub fn search(
    field: &Fq,
    config: &SearchConfig,
) -> Result<Vec<(FqPoly, KNormalReport)>, SearchError> {
    let n = config.n;
    if n == 0 {
        return Err(SearchError::ZeroDegree);
    }
    let q = field.order();
    let over = SearchError::BudgetExceeded {
        q,
        n,
        cap: config.max_candidates,
    };
    let ring = PolyRing::new(field);
    let count = ring.monic_count(n).ok_or(over.clone())?;
    if count > config.max_candidates {
        return Err(over);
    }
    let table = knormal::divisor_table_for(field, n)?;
    let hits = par::filter_map_range(config.execution, 0..count, |idx| {
        let f = ring.monic_from_index(n, idx);
        if field.is_zero(&f.coeffs()[0]) || !ring.is_irreducible(&f) {
            return None;
        }
        match knormal::classify_with_table(field, &f, &table) {
            Ok(rep) if config.k.is_none_or(|k| k == rep.k) => Some(Ok((f, rep))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    hits.into_iter()
        .map(|r| r.map_err(SearchError::from))
        .collect()
}

/// Number of monic irreducibles of degree `n` for each `k = 0..n`.
pub fn k_histogram(field: &Fq, n: usize, execution: Execution) -> Result<Vec<usize>, SearchError> {
    let config = SearchConfig {
        execution,
        ..SearchConfig::new(n, None)
    };
    let mut counts = vec![0; n + 1];
    for (_, rep) in search(field, &config)? {
        counts[rep.k] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encs(field: &Fq, hits: &[(FqPoly, KNormalReport)]) -> Vec<Vec<u32>> {
        let r = PolyRing::new(field);
        hits.iter().map(|(f, _)| r.encodings(f)).collect()
    }

    #[test]
    fn quartics_over_f2() {
        let f = Fq::prime(2).unwrap();
        let k0 = search(&f, &SearchConfig::new(4, Some(0))).unwrap();
        assert_eq!(
            encs(&f, &k0),
            vec![vec![1, 0, 0, 1, 1], vec![1, 1, 1, 1, 1]]
        );
        let k1 = search(&f, &SearchConfig::new(4, Some(1))).unwrap();
        assert_eq!(encs(&f, &k1), vec![vec![1, 1, 0, 0, 1]]);
        assert!(search(&f, &SearchConfig::new(2, Some(1)))
            .unwrap()
            .is_empty());
        assert_eq!(
            k_histogram(&f, 4, Execution::Sequential).unwrap(),
            vec![2, 1, 0, 0, 0]
        );
    }

    #[test]
    fn execution_mode_does_not_change_output() {
        let f = Fq::prime(3).unwrap();
        let mut cfg = SearchConfig::new(4, None);
        let par = search(&f, &cfg).unwrap();
        cfg.execution = Execution::Sequential;
        assert_eq!(par, search(&f, &cfg).unwrap());
        // 18 irreducible quartics over F_3
        assert_eq!(par.len(), 18);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Fq::prime(2).unwrap();
        let cfg = SearchConfig {
            max_candidates: 8,
            ..SearchConfig::new(4, None)
        };
        assert_eq!(
            search(&f, &cfg),
            Err(SearchError::BudgetExceeded { q: 2, n: 4, cap: 8 })
        );
        assert_eq!(
            search(&f, &SearchConfig::new(0, None)),
            Err(SearchError::ZeroDegree)
        );
    }
}
