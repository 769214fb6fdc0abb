pub mod algebra;
pub mod branched;
pub mod error;
pub mod graphs;
pub mod lambda;
pub mod seifert;
pub mod theta;

pub use error::{Error, Result};
