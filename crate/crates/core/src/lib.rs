pub mod compare;
pub mod decorate;
pub mod error;
pub mod graph_build;
pub mod model;
pub mod persistence;
pub mod pipeline;
pub mod quotient;
pub mod reeb_radius;
pub mod render;
pub mod synthetic;

pub use error::{Error, Result};
pub use model::*;
