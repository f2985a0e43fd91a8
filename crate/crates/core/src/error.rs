use thiserror::Error;

/// Stage of the certificate pipeline that failed to produce a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStage {
    /// A pullback could not be extended to a polynomial on the normalisation.
    Extension,
    /// The pulled-back `g` is not in the radical of the ambient ideal.
    RadicalMembership,
}

impl std::fmt::Display for CertificateStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateStage::Extension => f.write_str("extension"),
            CertificateStage::RadicalMembership => f.write_str("radical membership"),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("input error: {0}")]
    Input(String),
    #[error("computation limit exceeded: {0}")]
    Limit(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("no certificate: {stage} failed: {detail}")]
    NoCertificate {
        stage: CertificateStage,
        detail: String,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
