use serde_json::Value;

/// Failure classes of a run, each with a fixed process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("hypothesis failure: {message}")]
    Hypothesis { message: String, diagnostic: Option<Value> },
    #[error("{0}")]
    CapExceeded(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Malformed(_) | CliError::Io { .. } => 1,
            CliError::Hypothesis { .. } => 2,
            CliError::CapExceeded(_) => 3,
        }
    }

    pub fn class(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Malformed(_) | CliError::Io { .. } => "malformed",
            CliError::Hypothesis { .. } => "hypothesis",
            CliError::CapExceeded(_) => "cap-exceeded",
        }
    }

    pub fn hypothesis(message: impl Into<String>) -> Self {
        CliError::Hypothesis {
            message: message.into(),
            diagnostic: None,
        }
    }
}

impl From<gitfan::quiverfan::FanError> for CliError {
    fn from(e: gitfan::quiverfan::FanError) -> Self {
        use gitfan::quiverfan::FanError as F;
        use gitfan::sigma::SigmaError;
        match e {
            F::CapExceeded(_) | F::Sigma(SigmaError::CapExceeded(_)) => CliError::CapExceeded(e.to_string()),
            F::Hypothesis(message) => CliError::hypothesis(message),
            F::Invariant(_) | F::NonSimplicialRegion(_) | F::NoIntegralReflection => {
                CliError::hypothesis(e.to_string())
            }
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<gitfan::sigma::SigmaError> for CliError {
    fn from(e: gitfan::sigma::SigmaError) -> Self {
        gitfan::quiverfan::FanError::from(e).into()
    }
}

impl From<gitfan::roots::RootError> for CliError {
    fn from(e: gitfan::roots::RootError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<gitfan::toric::ToricError> for CliError {
    fn from(e: gitfan::toric::ToricError) -> Self {
        use gitfan::toric::ToricError as T;
        match e {
            T::NotEffective | T::DegenerateWall | T::Invariant(_) => CliError::hypothesis(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<gitfan::hypertoric::HypertoricError> for CliError {
    fn from(e: gitfan::hypertoric::HypertoricError) -> Self {
        use gitfan::hypertoric::HypertoricError as H;
        match e {
            H::ColumnsDoNotSpan => CliError::hypothesis(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}
