//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use knormal::construct::{self, Budget, ComposeParams, ConstructError, Verification};
use knormal::ext::ExtField;
use knormal::field::{Field, Fq};
use knormal::knormal as kn;
use knormal::poly::{FqPoly, PolyRing};
use knormal::search::{self, SearchConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn f(p: u64, m: u32) -> Fq {
    Fq::make(p, m, None).unwrap()
}

/// Monic irreducibles of degree `1..=max_deg` with nonzero constant term.
fn irreducibles(field: &Fq, max_deg: usize) -> Vec<FqPoly> {
    let ring = PolyRing::new(field);
    (1..=max_deg)
        .flat_map(|n| ring.irreducibles(n).collect::<Vec<_>>())
        .filter(|p| !field.is_zero(&p.coeffs()[0]))
        .collect()
}

fn triple_method_agreement() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (field, max_deg) in [(f(2, 1), 6), (f(3, 1), 4)] {
        for p in irreducibles(&field, max_deg) {
            let n = p.degree().unwrap();
            let by_gcd = kn::k_degree_by_gcd(&field, &p).unwrap().k;
            let ext = ExtField::new(&field, &p).unwrap();
            let rank = kn::conjugate_rank(&ext, &ext.generator());
            // characterization must accept exactly the k found by gcd
            let accepted: Vec<usize> = (0..n)
                .filter(|&k| kn::nk_test_by_characterization(&field, &p, k).unwrap())
                .collect();
            checked += 1;
            if rank != n - by_gcd || accepted != vec![by_gcd] {
                bad.push(format!(
                    "q={} {:?}",
                    field.order(),
                    PolyRing::new(&field).encodings(&p)
                ));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} polynomials, {} disagreements {bad:?}", bad.len()),
    )
}

fn worked_chain() -> Outcome {
    let field = f(2, 1);
    let ring = PolyRing::new(&field);
    let seed = ring.from_encodings(&[1, 1, 1]);
    let budget = Budget {
        verify_degree: 16,
        ..Budget::default()
    };
    let seq = match construct::nk_chain(&field, &seed, field.one(), 3, &budget) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let degrees: Vec<usize> = seq.entries.iter().map(|e| e.degree).collect();
    let first_exact = ring.encodings(&seq.entries[1].poly) == vec![1, 0, 0, 1, 1];
    let oracle_ok = seq.entries[2..].iter().all(|e| {
        e.verified == Verification::OracleVerified
            && ring.is_irreducible(&e.poly)
            && kn::classify(&field, &e.poly).map(|r| r.k) == Ok(0)
    });
    outcome(
        degrees == vec![2, 4, 8, 16] && first_exact && oracle_ok,
        format!("degrees {degrees:?}, u=1 exact {first_exact}, u=2,3 irreducible and 0-normal {oracle_ok}"),
    )
}

fn worked_step() -> Outcome {
    let field = f(2, 1);
    let ring = PolyRing::new(&field);
    let seed = ring.from_encodings(&[1, 1, 0, 0, 1]);
    let e = match construct::nk_step(&field, &seed, field.one(), &Budget::default()) {
        Ok(e) => e,
        Err(e) => return outcome(false, e.to_string()),
    };
    let exact = ring.encodings(&e.poly) == vec![1, 0, 1, 1, 0, 1, 0, 0, 1];
    let k = kn::classify(&field, &e.poly).map(|r| r.k);
    outcome(
        exact && k == Ok(1) && e.degree == 8,
        format!("x^8+x^5+x^3+x^2+1 exact {exact}, oracle k {k:?}"),
    )
}

fn composition_verdict_equivalence() -> Outcome {
    let mut total = 0;
    let mut exceptions = Vec::new();
    let mut with_root = (0, 0);
    for field in [f(2, 1), f(3, 1)] {
        let ring = PolyRing::new(&field);
        let seeds: Vec<FqPoly> = (2..=4)
            .flat_map(|n| ring.irreducibles(n).collect::<Vec<_>>())
            .collect();
        for p in &seeds {
            for d0 in field.elements() {
                for d1 in field.elements() {
                    for d2 in field.nonzero_elements() {
                        let params = ComposeParams {
                            delta0: d0,
                            delta1: d1,
                            delta2: d2,
                        };
                        let (verdict, poly) =
                            match construct::irreducible_compose(&field, p, params) {
                                Ok(o) => (o.predicted_irreducible, o.poly),
                                // no A means the power condition fails, so the verdict is "reducible"
                                Err(ConstructError::NoRootA) => {
                                    let num = construct::p_polynomial(&ring, d2, d0);
                                    let den = construct::p_polynomial(&ring, d2, d1);
                                    (
                                        false,
                                        construct::compose_frac(&ring, p, &num, &den).unwrap(),
                                    )
                                }
                                Err(
                                    ConstructError::ZeroDeltaPair | ConstructError::NonCoprimePair,
                                ) => continue,
                                Err(e) => return outcome(false, e.to_string()),
                            };
                        total += 1;
                        let has_root = field.root_p_minus_1(d2).is_some();
                        if has_root {
                            with_root.0 += 1;
                        }
                        if verdict != ring.is_irreducible(&poly) {
                            if has_root {
                                with_root.1 += 1;
                            }
                            exceptions.push(format!(
                                "q={} P={:?} d=({},{},{})",
                                field.order(),
                                ring.encodings(p),
                                d0,
                                d1,
                                d2
                            ));
                        }
                    }
                }
            }
        }
    }
    let sample: Vec<&String> = exceptions.iter().take(3).collect();
    outcome(
        exceptions.is_empty(),
        format!(
            "{} exceptions in {total} triples (e.g. {sample:?}); {} exceptions among the {} triples where A^(p-1) = delta2 is solvable",
            exceptions.len(),
            with_root.1,
            with_root.0
        ),
    )
}

/// `lhs * (gamma^p - gamma) = -1` and `prod_j (gamma + j theta) = gamma^p - gamma`.
fn reciprocal_sum_holds_directly(
    ext: &ExtField,
    gamma: &knormal::ext::ExtElem,
    theta: knormal::field::FqElem,
) -> bool {
    let base = ext.base();
    let p = base.p();
    let gp_minus = ext.sub(&ext.pow(gamma, p as u128), gamma);
    let mut sum = ext.zero();
    let mut prod = ext.one();
    for j in 0..p {
        let term = ext.add(
            gamma,
            &ext.embed(base.mul(&base.from_int(j as i64), &theta)),
        );
        prod = ext.mul(&prod, &term);
        match ext.inv(&term) {
            Some(t) => sum = ext.add(&sum, &t),
            None => return false,
        }
    }
    prod == gp_minus && ext.mul(&sum, &gp_minus) == ext.neg(&ext.one())
}

fn check_gamma(
    ext: &ExtField,
    gamma: &knormal::ext::ExtElem,
    thetas: &[knormal::field::FqElem],
) -> bool {
    thetas.iter().all(|&t| {
        let w = ext.reciprocal_sum_check(gamma, t);
        matches!(w, Ok(w) if w.holds && w.gamma_proper)
            && reciprocal_sum_holds_directly(ext, gamma, t)
    })
}

fn reciprocal_sum_identity() -> Outcome {
    let mut exhaustive = (0u64, 0u64);
    let mut random = (0u64, 0u64);
    let mut fields = 0;
    let bases = [
        (2, 1),
        (3, 1),
        (2, 2),
        (5, 1),
        (7, 1),
        (2, 3),
        (3, 2),
        (2, 4),
        (5, 2),
        (3, 3),
        (2, 8),
    ];
    for (p, m) in bases {
        let base = f(p, m);
        let q = base.order();
        let thetas: Vec<_> = (1..p).map(|t| base.elem(t).unwrap()).collect();
        let ring = PolyRing::new(&base);
        let mut n = 2;
        while q.pow(n as u32) <= 1 << 16 {
            let modulus = ring.irreducibles(n).next().unwrap();
            let ext = ExtField::new(&base, &modulus).unwrap();
            let order = ext.order().unwrap();
            fields += 1;
            if order <= 81 {
                for g in ext.elements().filter(|g| ext.is_proper(g)) {
                    exhaustive.0 += 1;
                    exhaustive.1 += check_gamma(&ext, &g, &thetas) as u64;
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(order ^ (n as u64) << 32);
                let mut drawn = 0;
                while drawn < 500 {
                    let g = ext.from_index(rng.random_range(0..order));
                    if !ext.is_proper(&g) {
                        continue;
                    }
                    drawn += 1;
                    random.0 += 1;
                    random.1 += check_gamma(&ext, &g, &thetas) as u64;
                }
            }
            n += 1;
        }
    }
    outcome(
        exhaustive.0 == exhaustive.1 && random.0 == random.1 && exhaustive.0 > 0,
        format!(
            "{fields} fields; exhaustive {}/{} proper elements, random {}/{}",
            exhaustive.1, exhaustive.0, random.1, random.0
        ),
    )
}

fn translation_invariance() -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for (field, degrees) in [(f(2, 1), vec![2, 4]), (f(3, 1), vec![3])] {
        let ring = PolyRing::new(&field);
        for n in degrees {
            for p in ring.irreducibles(n) {
                let ext = ExtField::new(&field, &p).unwrap();
                let alpha = ext.generator();
                let k = kn::element_gcd(&ext, &alpha).unwrap().degree().unwrap();
                for a in field.elements() {
                    for b in field.nonzero_elements() {
                        let beta = ext.add(&ext.embed(a), &ext.scale(&alpha, &b));
                        let kb = kn::element_gcd(&ext, &beta).unwrap().degree().unwrap();
                        let rank = kn::conjugate_rank(&ext, &beta);
                        checked += 1;
                        if kb != k || rank != n - k {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    outcome(bad == 0, format!("{checked} translates, {bad} exceptions"))
}

fn search_counts() -> Outcome {
    let field = f(2, 1);
    let all = search::search(&field, &SearchConfig::new(4, None)).unwrap();
    let count = |k| all.iter().filter(|(_, r)| r.k == k).count();
    let irreducible = PolyRing::new(&field).irreducibles(4).count();
    let k0 = search::search(&field, &SearchConfig::new(4, Some(0)))
        .unwrap()
        .len();
    let k1 = search::search(&field, &SearchConfig::new(4, Some(1)))
        .unwrap()
        .len();
    outcome(
        irreducible == 3 && all.len() == 3 && (count(0), count(1)) == (2, 1) && (k0, k1) == (2, 1),
        format!("{irreducible} quartic irreducibles: {k0} with k=0, {k1} with k=1"),
    )
}

fn sequence_identities() -> Outcome {
    let mut chains = 0;
    let mut entries = 0;
    let mut bad = Vec::new();
    let mut top = Vec::new();
    for (field, max_seed) in [(f(2, 1), 6), (f(3, 1), 4)] {
        let ring = PolyRing::new(&field);
        let budget = Budget {
            verify_degree: 0,
            max_degree: 81,
            ..Budget::default()
        };
        let (zero, one) = (field.zero(), field.one());
        let mut top_degree = 0;
        for seed in irreducibles(&field, max_seed) {
            for delta in field.nonzero_elements() {
                let Ok(seq) = construct::nk_chain(&field, &seed, delta, 16, &budget) else {
                    continue;
                };
                chains += 1;
                let n = seed.degree().unwrap();
                let ps = ring.reciprocal(&seed, true).unwrap();
                let ps0 = ps.coeffs()[0];
                let dps0 = ring.eval(&ring.derivative(&ps), &zero);
                let raw = &seq.raw;
                let d1 = |u: usize| ring.eval(&ring.derivative(&raw[u]), &zero);
                for u in 0..raw.len() {
                    entries += 1;
                    let fu = &raw[u];
                    top_degree = top_degree.max(fu.degree().unwrap());
                    let value = field.mul(&field.pow(&delta, (u * n) as u128), &ps0);
                    let mut ok = ring.eval(fu, &zero) == value;
                    if u >= 1 {
                        ok &= ring.eval(fu, &one) == value;
                        let prev = &raw[u - 1];
                        let dfu = ring.derivative(fu);
                        ok &= ring.eval(&dfu, &zero) == ring.eval(&dfu, &one);
                        ok &= fu.degree() == prev.degree().map(|d| d * field.p() as usize);
                        ok &= *fu.leading().unwrap() == ring.eval(prev, &one);
                        // F'_1(0) = -delta^(n-1) P*'(0)
                        let first =
                            field.neg(&field.mul(&field.pow(&delta, (n - 1) as u128), &dps0));
                        ok &= d1(1) == first;
                    }
                    if u >= 2 {
                        let sign = if (u - 1) % 2 == 0 {
                            one
                        } else {
                            field.neg(&one)
                        };
                        let scale =
                            field.mul(&sign, &field.pow(&delta, ((n - 1) * (u - 1)) as u128));
                        ok &= d1(u) == field.mul(&scale, &d1(1));
                    }
                    if !ok {
                        bad.push(format!(
                            "q={} seed={:?} delta={} u={u}",
                            field.order(),
                            ring.encodings(&seed),
                            delta
                        ));
                    }
                }
            }
        }
        top.push((field.order(), top_degree));
    }
    let reached = top == vec![(2, 64), (3, 81)];
    outcome(
        bad.is_empty() && chains > 0 && reached,
        format!("{chains} chains, {entries} entries, largest degree per field {top:?}, {} violations {bad:?}", bad.len()),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 8] = [
        (
            "exhaustive triple-method agreement",
            triple_method_agreement,
            Duration::from_secs(30),
        ),
        (
            "worked iterated chain",
            worked_chain,
            Duration::from_secs(10),
        ),
        ("worked single step", worked_step, Duration::from_secs(5)),
        (
            "two-condition irreducibility equivalence",
            composition_verdict_equivalence,
            Duration::from_secs(120),
        ),
        (
            "reciprocal-sum identity",
            reciprocal_sum_identity,
            Duration::from_secs(60),
        ),
        (
            "translation invariance of k",
            translation_invariance,
            Duration::from_secs(60),
        ),
        (
            "search counts for quartics over F_2",
            search_counts,
            Duration::from_secs(60),
        ),
        (
            "sequence boundary and derivative identities",
            sequence_identities,
            Duration::from_secs(60),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed < *limit;
        failed += !ok as usize;
        println!(
            "criterion {}: {} [{name}] {:.2}s (limit {}s) {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
