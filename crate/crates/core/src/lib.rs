pub mod capture;
pub mod classify;
pub mod cone;
pub mod config;
pub mod error;
pub mod instance;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod relation;
pub mod sparsify;
pub mod tuple;

pub use error::{Error, ParseError, Result};
