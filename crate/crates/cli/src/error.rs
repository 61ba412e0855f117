use knormal::construct::ConstructError;
use knormal::cyclotomic::CyclotomicError;
use knormal::field::FieldError;
use knormal::knormal::KNormalError;
use knormal::search::SearchError;
use knormal::text::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("k = {found}, expected {expected}")]
    KMismatch { found: usize, expected: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Hypothesis(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::KMismatch { .. } => 1,
            CliError::Invalid(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Disagreement(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CyclotomicError> for CliError {
    fn from(e: CyclotomicError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<KNormalError> for CliError {
    fn from(e: KNormalError) -> Self {
        let msg = e.to_string();
        match e {
            KNormalError::ReducibleInput | KNormalError::ZeroElement => CliError::Hypothesis(msg),
            KNormalError::MethodDisagreement { .. } => CliError::Disagreement(msg),
            _ => CliError::Invalid(msg),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::KNormal(e) => e.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        let msg = e.to_string();
        match e {
            ConstructError::HypothesisViolation(_)
            | ConstructError::TraceGateFailed(_)
            | ConstructError::KTooLarge { .. }
            | ConstructError::NoRootA => CliError::Hypothesis(msg),
            ConstructError::ZeroDeltaPair
            | ConstructError::NonCoprimePair
            | ConstructError::InvalidDeltas(_) => CliError::Invalid(msg),
            ConstructError::DegreeMismatch | ConstructError::VerificationFailed { .. } => {
                CliError::Disagreement(msg)
            }
            ConstructError::KNormal(e) => e.into(),
        }
    }
}
