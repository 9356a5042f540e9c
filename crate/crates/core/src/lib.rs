pub mod coeffring;
pub mod error;
pub mod freealg;
pub mod classical;
pub mod linalg;
pub mod qops;
pub mod eval;
pub mod report;
pub mod series;
pub mod harness;
pub mod expr;
