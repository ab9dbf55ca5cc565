use thiserror::Error;

/// Errors raised when an input falls outside the domain of the model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("division by zero: {0}")]
    Division(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

pub(crate) fn check(ok: bool, name: &'static str, value: f64, domain: &'static str) -> Result<()> {
    if ok && !value.is_nan() {
        Ok(())
    } else {
        Err(ModelError::Domain {
            name,
            value,
            domain,
        })
    }
}
