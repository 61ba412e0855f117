use std::fs::File;
use std::io::{self, BufWriter, Write};

use knormal::construct::{
    self, Budget, ComposeParams, ConstructError, Sequence, SequenceEntry, Verification,
};
use knormal::cyclotomic;
use knormal::field::{Fq, FqElem};
use knormal::knormal::{self as kn, KNormalReport};
use knormal::par::Execution;
use knormal::poly::{FqPoly, PolyRing};
use knormal::search::{self, SearchConfig};
use knormal::text;
use log::{info, warn};
use serde::Serialize;

use crate::args::{
    ExtendArgs, FactorArgs, FieldArgs, Format, IrreducibleMode, NkMode, OutputArgs, SearchArgs,
    VerifyArgs,
};
use crate::error::CliError;

struct Sink {
    format: Format,
    out: Box<dyn Write>,
}

impl Sink {
    fn open(args: &OutputArgs) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match &args.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self {
            format: args.format,
            out,
        })
    }

    fn json<T: Serialize>(&mut self, record: &T) -> Result<(), CliError> {
        let line = serde_json::to_string(record).map_err(|e| CliError::Io(e.into()))?;
        writeln!(self.out, "{line}")?;
        Ok(())
    }

    fn line(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.out.flush()?;
        Ok(())
    }
}

fn open_field(args: &FieldArgs) -> Result<Fq, CliError> {
    let modulus = match &args.modulus {
        Some(s) => {
            let list: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
            Some(list.map_err(|_| CliError::Invalid(format!("invalid modulus {s:?}")))?)
        }
        None => None,
    };
    let field = Fq::make(args.p, args.m, modulus.as_deref())?;
    info!(
        "working over F_{} (p = {}, m = {})",
        field.order(),
        field.p(),
        field.m()
    );
    Ok(field)
}

fn read_poly(field: &Fq, text: &str) -> Result<FqPoly, CliError> {
    let ring = PolyRing::new(field);
    let f = text::parse_poly(field, text)?;
    if f.degree().is_none_or(|d| d == 0) {
        return Err(CliError::Invalid(
            "polynomial must have degree at least 1".into(),
        ));
    }
    Ok(ring.monic(&f))
}

fn read_elem(field: &Fq, name: &str, v: u64) -> Result<FqElem, CliError> {
    field
        .elem(v)
        .map_err(|e| CliError::Invalid(format!("--{name}: {e}")))
}

fn encodings(f: &FqPoly) -> Vec<u32> {
    f.coeffs().iter().map(|c| c.encoding()).collect()
}

#[derive(Serialize)]
struct SearchRecord {
    degree: usize,
    coeffs: Vec<u32>,
    k: usize,
    rank: usize,
    proper: bool,
}

pub fn search(args: &SearchArgs) -> Result<(), CliError> {
    let field = open_field(&args.field)?;
    let config = SearchConfig {
        max_candidates: args.max_candidates,
        execution: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        ..SearchConfig::new(args.n, args.k)
    };
    let hits = search::search(&field, &config)?;
    info!("{} match(es)", hits.len());
    let mut sink = Sink::open(&args.output)?;
    for (f, rep) in &hits {
        match sink.format {
            Format::Human => sink.line(&format!(
                "{}  k={} rank={} proper={}",
                text::format_caret(f),
                rep.k,
                rep.rank,
                rep.proper
            ))?,
            Format::Jsonl => sink.json(&SearchRecord {
                degree: rep.n,
                coeffs: encodings(f),
                k: rep.k,
                rank: rep.rank,
                proper: rep.proper,
            })?,
        }
    }
    sink.finish()
}

#[derive(Serialize)]
struct Methods {
    definition: bool,
    characterization: bool,
    conjugate_rank: bool,
}

#[derive(Serialize)]
struct VerifyRecord {
    degree: usize,
    coeffs: Vec<u32>,
    k: usize,
    rank: usize,
    proper: bool,
    methods_agree: bool,
    methods: Methods,
    gcd_witness: Vec<u32>,
}

fn render_report(sink: &mut Sink, f: &FqPoly, rep: &KNormalReport) -> Result<(), CliError> {
    let m = rep.methods_agree;
    match sink.format {
        Format::Human => {
            let word = |b: bool| if b { "agree" } else { "DISAGREE" };
            sink.line(&format!("poly     {}", text::format_caret(f)))?;
            sink.line(&format!("degree   {}", rep.n))?;
            sink.line(&format!("k        {}", rep.k))?;
            sink.line(&format!("rank     {}", rep.rank))?;
            sink.line(&format!("proper   {}", rep.proper))?;
            sink.line(&format!(
                "methods  definition={} characterization={} conjugate-rank={}",
                word(m.definition),
                word(m.characterization),
                word(m.conjugate_rank)
            ))?;
            sink.line(&format!(
                "gcd      {}",
                text::format_caret(&rep.gcd_witness)
            ))
        }
        Format::Jsonl => sink.json(&VerifyRecord {
            degree: rep.n,
            coeffs: encodings(f),
            k: rep.k,
            rank: rep.rank,
            proper: rep.proper,
            methods_agree: m.all(),
            methods: Methods {
                definition: m.definition,
                characterization: m.characterization,
                conjugate_rank: m.conjugate_rank,
            },
            gcd_witness: encodings(&rep.gcd_witness),
        }),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let field = open_field(&args.field)?;
    let f = read_poly(&field, &args.poly)?;
    let rep = kn::classify(&field, &f)?;
    let mut sink = Sink::open(&args.output)?;
    render_report(&mut sink, &f, &rep)?;
    sink.finish()?;
    if !rep.methods_agree.all() {
        return Err(CliError::Disagreement(
            "verification methods disagree".into(),
        ));
    }
    match args.k {
        Some(expected) if expected != rep.k => Err(CliError::KMismatch {
            found: rep.k,
            expected,
        }),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct SequenceRecord {
    u: usize,
    degree: usize,
    coeffs: Vec<u32>,
    k: Option<usize>,
    verified: bool,
}

fn emit_entries(sink: &mut Sink, entries: &[SequenceEntry]) -> Result<(), CliError> {
    for e in entries {
        let verified = e.verified == Verification::OracleVerified;
        match sink.format {
            Format::Human => {
                let k = e.k.map_or_else(|| "?".to_string(), |k| k.to_string());
                let flag = if verified { "verified" } else { "unverified" };
                sink.line(&format!(
                    "u={} degree={} k={} {}  {}",
                    e.u,
                    e.degree,
                    k,
                    flag,
                    text::format_caret(&e.poly)
                ))?;
            }
            Format::Jsonl => sink.json(&SequenceRecord {
                u: e.u,
                degree: e.degree,
                coeffs: encodings(&e.poly),
                k: e.k,
                verified,
            })?,
        }
    }
    Ok(())
}

fn report_truncation(seq: &Sequence, steps: usize) {
    if seq.truncated {
        warn!(
            "degree cap reached: {} of {} steps emitted",
            seq.entries.len().saturating_sub(1),
            steps
        );
    }
}

fn compose_entry(
    field: &Fq,
    seed: &FqPoly,
    args: &ExtendArgs,
    budget: &Budget,
) -> Result<SequenceEntry, CliError> {
    let params = ComposeParams {
        delta0: read_elem(field, "delta0", args.delta0)?,
        delta1: read_elem(field, "delta1", args.delta1)?,
        delta2: read_elem(field, "delta2", args.delta2)?,
    };
    let outcome = construct::irreducible_compose(field, seed, params)?;
    let ring = PolyRing::new(field);
    let poly = ring.monic(&outcome.poly);
    let degree = poly.degree().unwrap_or(0);
    info!(
        "power condition {}, trace condition {}",
        outcome.power_condition, outcome.trace_condition
    );
    if degree > budget.verify_degree {
        if !outcome.predicted_irreducible {
            return Err(ConstructError::TraceGateFailed(construct::TraceGate::SingleStep).into());
        }
        return Ok(SequenceEntry {
            u: 1,
            poly,
            degree,
            verified: Verification::ConstructedUnverified,
            k: None,
        });
    }
    let irreducible = ring.is_irreducible(&poly);
    if irreducible != outcome.predicted_irreducible {
        return Err(CliError::Disagreement(format!(
            "two-condition verdict {} but the irreducibility test says {}",
            outcome.predicted_irreducible, irreducible
        )));
    }
    if !irreducible {
        return Err(CliError::Hypothesis(
            "conditions fail: the composition is reducible".into(),
        ));
    }
    let k = kn::classify(field, &poly)?.k;
    Ok(SequenceEntry {
        u: 1,
        poly,
        degree,
        verified: Verification::OracleVerified,
        k: Some(k),
    })
}

pub fn extend(args: &ExtendArgs) -> Result<(), CliError> {
    let field = open_field(&args.field)?;
    let seed = read_poly(&field, &args.poly)?;
    let budget = Budget {
        verify_degree: args.budget,
        max_degree: args.max_degree,
        ..Budget::default()
    };
    let entries = match (args.theorem, args.prop) {
        (Some(NkMode::Step), _) => {
            let delta = read_elem(&field, "delta", args.delta)?;
            vec![construct::nk_step(&field, &seed, delta, &budget)?]
        }
        (Some(NkMode::Chain), _) | (None, None) => {
            let delta = read_elem(&field, "delta", args.delta)?;
            let seq = construct::nk_chain(&field, &seed, delta, args.steps, &budget)?;
            report_truncation(&seq, args.steps);
            seq.entries
        }
        (None, Some(IrreducibleMode::Compose)) => {
            vec![compose_entry(&field, &seed, args, &budget)?]
        }
        (None, Some(IrreducibleMode::Chain)) => {
            let d0 = read_elem(&field, "delta0", args.delta0)?;
            let d1 = read_elem(&field, "delta1", args.delta1)?;
            let seq = construct::irreducible_chain(&field, &seed, d0, d1, args.steps, &budget)?;
            report_truncation(&seq, args.steps);
            seq.entries
        }
    };
    let mut sink = Sink::open(&args.output)?;
    emit_entries(&mut sink, &entries)?;
    sink.finish()
}

#[derive(Serialize)]
struct FactorRecord {
    n: usize,
    n1: usize,
    e: u32,
    t: usize,
    factors: Vec<Vec<u32>>,
    divisor_counts: Vec<usize>,
}

pub fn factor(args: &FactorArgs) -> Result<(), CliError> {
    let field = open_field(&args.field)?;
    let fact = cyclotomic::factor_xn_minus_1(&field, args.n)?;
    let table = cyclotomic::divisor_table(&field, &fact)?;
    let counts = table.counts();
    let mut sink = Sink::open(&args.output)?;
    match sink.format {
        Format::Human => {
            sink.line(&format!("n        {}", fact.n))?;
            sink.line(&format!("n1       {}", fact.n1))?;
            sink.line(&format!("e        {}", fact.e))?;
            sink.line(&format!("t        {}", fact.t))?;
            let factors: Vec<String> = fact.factors.iter().map(text::format_caret).collect();
            sink.line(&format!("factors  {}", factors.join(", ")))?;
            for (s, c) in counts.iter().enumerate() {
                sink.line(&format!("u_{s}      {c}"))?;
            }
        }
        Format::Jsonl => sink.json(&FactorRecord {
            n: fact.n,
            n1: fact.n1,
            e: fact.e,
            t: fact.t,
            factors: fact.factors.iter().map(encodings).collect(),
            divisor_counts: counts,
        })?,
    }
    sink.finish()
}
