use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Unknown connective id, family or option name.
    #[error("configuration error: {0}")]
    Config(String),

    /// A construction parameter sits on the boundary where the construction
    /// collapses into a plain t-norm or t-conorm.
    #[error("degenerate parameter {name}={value}: {hint}")]
    DegenerateParameter {
        name: &'static str,
        value: String,
        hint: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value out of range: {0} is not in [0,1]")]
    OutOfRange(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A fuzzy subset (or table) has no value for a carrier element.
    #[error("not total: no value for element {element}")]
    NotTotal { element: String },

    #[error("budget exceeded: {what} needs about {estimate} evaluations, budget is {budget}")]
    BudgetExceeded {
        what: String,
        estimate: u128,
        budget: u128,
    },

    #[error("not a lattice: elements {left} and {right} have no unique {bound}")]
    NotALattice {
        left: String,
        right: String,
        bound: &'static str,
    },

    #[error("unbounded poset: missing {0} element")]
    Unbounded(&'static str),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
