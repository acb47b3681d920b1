pub mod cli;
pub mod cuplength;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod linalg;
